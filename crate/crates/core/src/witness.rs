//! Explicit commutator expressions proving lower-central-series membership,
//! each checked by the normal-form engine.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::britton::{Britton, BsParams};
use crate::classify::{canonical_form, classify, GammaOmega};
use crate::words::{CommExpr, Word};
use crate::{Error, Limits, Result};

/// `expr` evaluates to `target` and, by its shape, lies in `γ_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub expr: CommExpr,
    pub target: Word,
    pub depth: u32,
    pub verified: bool,
}

impl Serialize for MembershipWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MembershipWitness", 4)?;
        st.serialize_field("expr", &self.expr.to_string())?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

/// `[x, t]`, skipping a trivial `^1` on `x`.
fn comm_t(x: CommExpr, k: &BigInt) -> CommExpr {
    let x = if k.is_one() { x } else { x.pow(k.clone()) };
    CommExpr::comm(x, CommExpr::t())
}

fn a_pow(k: i64) -> CommExpr {
    if k == 1 {
        CommExpr::a()
    } else {
        CommExpr::a().pow(k)
    }
}

/// `W_1 = [a^m, t]`, `W_{j+1} = [W_j^inner, t]`.
fn iterated(m: i64, inner: &BigInt, depth: u32) -> CommExpr {
    let mut w = CommExpr::comm(a_pow(m), CommExpr::t());
    for _ in 1..depth {
        w = comm_t(w, inner);
    }
    w
}

fn verify(engine: &Britton, expr: &CommExpr, target: &Word) -> Result<bool> {
    let lhs = engine.eval_expr(expr)?;
    let rhs = engine.normalize(target)?;
    Ok(lhs == rhs)
}

/// `W_i` with value `a^((n-m)^i)` and commutator depth `i`, so in `γ_{i+1}`.
pub fn lemma2_witness(p: &BsParams, i: u32) -> Result<MembershipWitness> {
    lemma2_witness_with(p, i, &Limits::default())
}

pub fn lemma2_witness_with(p: &BsParams, i: u32, limits: &Limits) -> Result<MembershipWitness> {
    if i == 0 {
        return Err(Error::Precondition("iterated commutator witness needs i >= 1".into()));
    }
    let engine = Britton::with_limits(*p, *limits);
    let expr = iterated(p.m(), &BigInt::from(p.m()), i);
    let exp: BigInt = Pow::pow(BigInt::from(p.n() - p.m()), i);
    limits.check_bits(&exp)?;
    let target = Word::a(exp);
    if !verify(&engine, &expr, &target)? {
        return Err(Error::Internal(format!("{} does not evaluate to {} in {}", expr, target, p)));
    }
    Ok(MembershipWitness {
        expr,
        target,
        depth: i + 1,
        verified: true,
    })
}

/// Outcome of evaluating the recursion with a chosen inner exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantReport {
    pub params: String,
    pub i: u32,
    pub inner_exponent: i64,
    pub expr: String,
    pub value: String,
    pub expected: String,
    pub matches: bool,
}

/// Evaluates `W_{j+1} = [W_j^inner, t]` and compares against `a^((n-m)^i)`.
/// With `inner = m` this always matches; with `inner = n` it generally does not.
pub fn lemma2_variant(p: &BsParams, i: u32, inner: i64) -> Result<VariantReport> {
    let engine = Britton::new(*p);
    let expr = iterated(p.m(), &BigInt::from(inner), i.max(1));
    let value = engine.eval_expr(&expr)?;
    let expected = engine.normalize(&Word::a(Pow::pow(BigInt::from(p.n() - p.m()), i.max(1))))?;
    Ok(VariantReport {
        params: p.to_string(),
        i: i.max(1),
        inner_exponent: inner,
        expr: expr.to_string(),
        value: value.to_string(),
        expected: expected.to_string(),
        matches: value == expected,
    })
}

/// A depth-`(s-1)` expression equal to `target ∈ {a, a^d}` when `n = m + d`.
///
/// `V_1 = [a^m, t] = a^d` and `V_{j+1} = [V_j^(m/d), t] = [a^m, t] = a^d`.
pub fn gamma_membership_witness(p: &BsParams, target: &Word, s: u32) -> Result<MembershipWitness> {
    if s < 2 {
        return Err(Error::Precondition("membership witness needs s >= 2".into()));
    }
    let (m, n, d) = (p.m(), p.n(), p.d());
    if n - m != d {
        return Err(Error::Precondition(format!(
            "no witness construction for {}: needs n = m + gcd(m, n)",
            p
        )));
    }
    let engine = Britton::new(*p);
    let ad = engine.normalize(&Word::a(d))?;
    if engine.normalize(target)? != ad {
        return Err(Error::Precondition(format!(
            "target {} is not a^{} in {}",
            target, d, p
        )));
    }
    let expr = iterated(m, &BigInt::from(m / d), s - 1);
    let verified = verify(&engine, &expr, target)?;
    if !verified {
        return Err(Error::Internal(format!("{} does not evaluate to {}", expr, target)));
    }
    Ok(MembershipWitness {
        expr,
        target: target.clone(),
        depth: s,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub params: String,
    pub d: u64,
    /// `[a^(kd), t] = a^d`, printed.
    pub identity: String,
    pub verified: bool,
    pub stable_on_generators: bool,
    pub note: String,
}

/// Evidence that `γ_ω = γ_{ω+1}` on the normal generator `a^d` of `γ_ω`:
/// `a^d = [a^(kd), t]` with `a^(kd) = (a^d)^k ∈ γ_ω`.
pub fn omega_stability_check(p: &BsParams) -> Result<OmegaReport> {
    let report = classify(p.m(), p.n())?;
    let GammaOmega::EqualsNormalClosure(d) = report.gamma_omega else {
        return Err(Error::Precondition(format!(
            "γ_ω of {} is not known to equal <a^d>^G ({})",
            p, report.gamma_omega
        )));
    };
    let (cm, cn) = canonical_form(p.m(), p.n())?;
    let cp = BsParams::new(cm, cn)?;
    let engine = Britton::new(cp);
    let expr = CommExpr::comm(a_pow(cm), CommExpr::t());
    let target = Word::a(d);
    let verified = verify(&engine, &expr, &target)?;
    Ok(OmegaReport {
        params: cp.to_string(),
        d,
        identity: format!("{} = {}", expr, target),
        verified,
        stable_on_generators: verified,
        note: "evidence on generators only, not a proof of γ_ω = γ_(ω+1)".into(),
    })
}
