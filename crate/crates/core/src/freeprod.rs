//! The free product `Z * Z_d = <a, t | a^d>` and its Cartesian subgroup.
//!
//! The Cartesian subgroup (kernel of `Z * Z_d -> Z x Z_d`) is free on the
//! commutators `c(k,l) = [t^k, a^l]`, `k != 0`, `1 <= l <= d-1`. Rewriting uses
//! the Schreier transversal `{t^k a^l}`: crossing `t^K` while in coset `(k, l)`
//! with `l != 0` contributes `y(k,l) y(k+K,l)^-1`, where
//! `y(k,l) = t^k a^l t^-k a^-l = c(-k, d-l)` and `y(0,l) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::britton::{Britton, BsParams};
use crate::words::{CommExpr, Gen, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FpSyllable {
    /// Nonzero t-power.
    T(BigInt),
    /// a-power residue in `[1, d-1]`.
    A(u64),
}

/// Syllable normal form in `Z * Z_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeProdWord {
    d: u64,
    syllables: Vec<FpSyllable>,
}

impl FreeProdWord {
    pub fn identity(d: u64) -> FreeProdWord {
        FreeProdWord {
            d,
            syllables: Vec::new(),
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn syllables(&self) -> &[FpSyllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    fn push_t(&mut self, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        if let Some(FpSyllable::T(x)) = self.syllables.last_mut() {
            *x += k;
            if x.is_zero() {
                self.syllables.pop();
            }
            return;
        }
        self.syllables.push(FpSyllable::T(k.clone()));
    }

    fn push_a(&mut self, e: &BigInt) {
        let r = e
            .mod_floor(&BigInt::from(self.d))
            .to_u64()
            .expect("residue below d");
        if r == 0 {
            return;
        }
        if let Some(FpSyllable::A(x)) = self.syllables.last_mut() {
            *x = (*x + r) % self.d;
            if *x == 0 {
                self.syllables.pop();
            }
            return;
        }
        self.syllables.push(FpSyllable::A(r));
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::identity();
        for s in &self.syllables {
            match s {
                FpSyllable::T(k) => w.push(Gen::T, k.clone()),
                FpSyllable::A(r) => w.push(Gen::A, BigInt::from(*r)),
            }
        }
        w
    }
}

impl fmt::Display for FreeProdWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match s {
                FpSyllable::T(k) => write!(f, "(t^{})", k)?,
                FpSyllable::A(r) => write!(f, "(a^{})", r)?,
            }
        }
        Ok(())
    }
}

/// `[t^k, a^l]^sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLetter {
    pub k: BigInt,
    pub l: u64,
    pub sign: i8,
}

/// A freely reduced word in the basis `c(k,l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord {
    d: u64,
    letters: Vec<BasisLetter>,
}

impl BasisWord {
    pub fn identity(d: u64) -> BasisWord {
        BasisWord {
            d,
            letters: Vec::new(),
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn letters(&self) -> &[BasisLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Appends `c(k,l)^sign` with free cancellation.
    pub fn push(&mut self, k: BigInt, l: u64, sign: i8) {
        debug_assert!(!k.is_zero() && (1..self.d).contains(&l));
        if let Some(last) = self.letters.last() {
            if last.k == k && last.l == l && last.sign == -sign {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(BasisLetter { k, l, sign });
    }

    /// The literal commutator word, valid in any group generated by `a, t`.
    pub fn lift(&self) -> Word {
        let mut w = Word::identity();
        for c in &self.letters {
            let l = BigInt::from(c.l);
            let tk = Word::t(c.k.clone());
            let al = Word::a(l);
            let piece = if c.sign > 0 {
                tk.inverse() * al.inverse() * tk * al
            } else {
                al.inverse() * tk.inverse() * al * tk
            };
            w.append(&piece);
        }
        w
    }

    pub fn to_expr(&self) -> CommExpr {
        let items = self
            .letters
            .iter()
            .map(|c| {
                let e = CommExpr::comm(CommExpr::t().pow(c.k.clone()), CommExpr::a().pow(c.l));
                if c.sign > 0 {
                    e
                } else {
                    e.pow(-1)
                }
            })
            .collect();
        CommExpr::Product(items)
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "c({},{})", c.k, c.l)?;
            if c.sign < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

pub fn fp_normalize(d: u64, w: &Word) -> Result<FreeProdWord> {
    if d == 0 {
        return Err(Error::InvalidParams("Z * Z_d needs d >= 1".into()));
    }
    let mut out = FreeProdWord::identity(d);
    for s in w.syllables() {
        match s.gen {
            Gen::T => out.push_t(&s.exp),
            Gen::A => out.push_a(&s.exp),
        }
    }
    Ok(out)
}

/// Rewrites a Cartesian-subgroup element in the free basis `c(k,l)`.
pub fn fp_rewrite_basis(w: &FreeProdWord) -> Result<BasisWord> {
    let d = w.d;
    let mut out = BasisWord::identity(d);
    let mut k = BigInt::zero();
    let mut l: u64 = 0;
    // y(k,l)^sign = c(-k, d-l)^sign
    let emit = |out: &mut BasisWord, k: &BigInt, l: u64, sign: i8| {
        if !k.is_zero() {
            out.push(-k, d - l, sign);
        }
    };
    for s in &w.syllables {
        match s {
            FpSyllable::A(r) => l = (l + r) % d,
            FpSyllable::T(big_k) => {
                let next = &k + big_k;
                if l != 0 {
                    emit(&mut out, &k, l, 1);
                    emit(&mut out, &next, l, -1);
                }
                k = next;
            }
        }
    }
    if !k.is_zero() || l != 0 {
        return Err(Error::Precondition(format!(
            "{} is not in the Cartesian subgroup (t-sum {}, a-sum {} mod {})",
            w, k, l, d
        )));
    }
    Ok(out)
}

pub fn lift_basis(bw: &BasisWord) -> Word {
    bw.lift()
}

/// Decomposition `g = a^(2mc) · lift(basis)` of an element of `γ_2 BS(m, ±m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSplit {
    pub c: BigInt,
    pub basis: BasisWord,
}

/// Splits `w ∈ γ_2 BS(m, ±m)` into its central `a^(2m)`-part and its image in
/// `γ_2(Z * Z_m)`, checking the reassembly with the normal-form engine.
pub fn split_central(engine: &Britton, w: &Word) -> Result<CentralSplit> {
    let p: &BsParams = engine.params();
    let m = p.m().abs();
    if p.n().abs() != m {
        return Err(Error::InvalidParams(format!(
            "central splitting needs |n| = |m|, got {}",
            p
        )));
    }
    let same_sign = p.n() == p.m();
    let sums = w.exp_sums();
    let a_ok = if same_sign {
        sums.sigma_a.is_zero()
    } else {
        sums.sigma_a.is_multiple_of(&BigInt::from(2 * m))
    };
    if !sums.sigma_t.is_zero() || !a_ok {
        return Err(Error::Precondition(format!(
            "{} is not in the commutator subgroup of {}",
            w, p
        )));
    }
    let basis = fp_rewrite_basis(&fp_normalize(m as u64, w)?)?;
    let lifted = basis.lift();
    let rest = engine.normalize(&(w * &lifted.inverse()))?;
    let exp = rest
        .as_a_power()
        .ok_or_else(|| Error::Internal(format!("w · lift^-1 = {} is not a power of a", rest)))?;
    let c = if same_sign {
        if !exp.is_zero() {
            return Err(Error::Internal(format!(
                "nontrivial kernel element a^{} in γ_2 {}",
                exp, p
            )));
        }
        BigInt::zero()
    } else {
        let (c, r) = exp.div_rem(&BigInt::from(2 * m));
        if !r.is_zero() {
            return Err(Error::Internal(format!("a^{} is not a power of a^{}", exp, 2 * m)));
        }
        c
    };
    let check = Word::a(&c * 2 * m) * lifted;
    if !engine.equal(&check, w)? {
        return Err(Error::Internal("reassembly failed".into()));
    }
    Ok(CentralSplit { c, basis })
}

/// A random nonempty reduced basis word over `c(k,s)`, `0 < |k| <= max_k`.
pub fn random_basis_word<R: Rng>(rng: &mut R, d: u64, max_k: i64, max_len: usize) -> BasisWord {
    let mut bw = BasisWord::identity(d);
    let target = rng.gen_range(1..=max_len.max(1));
    while bw.len() < target {
        let mut k = rng.gen_range(1..=max_k.max(1));
        if rng.gen_bool(0.5) {
            k = -k;
        }
        let l = rng.gen_range(1..d);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        bw.push(BigInt::from(k), l, sign);
    }
    bw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_word, rng};
    use crate::words::parse_word;

    fn rewrite(d: u64, s: &str) -> String {
        let w = fp_normalize(d, &parse_word(s).unwrap()).unwrap();
        fp_rewrite_basis(&w).unwrap().to_string()
    }

    #[test]
    fn normal_form() {
        let w = fp_normalize(3, &parse_word("a^4 t^2 a^3 t^-1 a^-1").unwrap()).unwrap();
        assert_eq!(w.to_string(), "(a^1) (t^1) (a^2)");
        assert!(fp_normalize(2, &parse_word("a^2 t a^4 t^-1").unwrap())
            .unwrap()
            .is_identity());
        assert!(fp_normalize(0, &Word::identity()).is_err());
    }

    #[test]
    fn rewrites() {
        assert_eq!(rewrite(2, "t a t^-1 a"), "c(-1,1)");
        assert_eq!(rewrite(2, "a t a t^-1"), "c(-1,1)^-1");
        assert_eq!(rewrite(3, "t^-2 a^-1 t^2 a"), "c(2,1)");
        assert_eq!(rewrite(4, "1"), "1");
        let bad = fp_normalize(3, &parse_word("a t").unwrap()).unwrap();
        assert!(matches!(fp_rewrite_basis(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn basis_round_trip() {
        let mut r = rng(11);
        for d in 2..=5u64 {
            for _ in 0..200 {
                let bw = random_basis_word(&mut r, d, 4, 8);
                let w = fp_normalize(d, &bw.lift()).unwrap();
                assert_eq!(fp_rewrite_basis(&w).unwrap(), bw, "d={d}");
            }
        }
    }

    #[test]
    fn rewrite_then_lift_is_identity_in_free_product() {
        let mut r = rng(12);
        for d in 2..=5u64 {
            let mut done = 0;
            while done < 100 {
                let w = random_word(&mut r, 10, 4);
                let s = w.exp_sums();
                // force into the Cartesian subgroup
                let fix = Word::t(-s.sigma_t) * Word::a(-s.sigma_a);
                let g = fp_normalize(d, &(w * fix)).unwrap();
                let bw = fp_rewrite_basis(&g).unwrap();
                assert_eq!(fp_normalize(d, &bw.lift()).unwrap(), g);
                done += 1;
            }
        }
    }

    #[test]
    fn split_examples() {
        let ta = parse_word("t^-1 a^-1 t a").unwrap();
        for (m, n) in [(2, 2), (2, -2), (3, 3), (3, -3)] {
            let e = Britton::new(BsParams::new(m, n).unwrap());
            let s = split_central(&e, &ta).unwrap();
            assert_eq!(s.c, BigInt::zero());
            assert_eq!(s.basis.to_string(), "c(1,1)");
            assert!(split_central(&e, &Word::identity()).unwrap().basis.is_empty());
        }
        let e = Britton::new(BsParams::new(2, -2).unwrap());
        let s = split_central(&e, &(Word::a(4) * ta.clone())).unwrap();
        assert_eq!((s.c.clone(), s.basis.to_string()), (BigInt::from(1), "c(1,1)".to_string()));
        // a^-1 and a agree in Z * Z_2 but differ by a non-central a^2 here
        let s = split_central(&e, &parse_word("t a t^-1 a^-1").unwrap()).unwrap();
        assert_eq!(s.c, BigInt::from(-1));
        // [t, a] [t, a^-1]-style product landing on a^(2m) in BS(2,-2): t^-1 a^2 t = a^-2
        let e = Britton::new(BsParams::new(2, -2).unwrap());
        let g = parse_word("t^-1 a^2 t a^2").unwrap();
        let s = split_central(&e, &g).unwrap();
        assert_eq!(s.c, BigInt::zero());
        let g = parse_word("t^-1 a^-2 t a^2").unwrap();
        let s = split_central(&e, &g).unwrap();
        assert_eq!(s.c, BigInt::from(1));
        assert!(s.basis.is_empty());
        assert!(split_central(&Britton::new(BsParams::new(2, 3).unwrap()), &g).is_err());
    }
}
