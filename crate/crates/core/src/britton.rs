//! Britton normal forms for `BS(m,n)` viewed as an HNN extension of `<a>`.
//!
//! Every element is written uniquely as
//! `a^r0 t^e1 a^r1 ... t^ek a^rk` with `0 <= ri < |m|` after `t^-1`,
//! `0 <= ri < |n|` after `t`, and no pinch `t^-1 a^0 t` or `t a^0 t^-1`.
//! Exponent mass is pushed leftwards with
//! `t^-1 a^(m q) = a^(n q) t^-1` and `t a^(n q) = a^(m q) t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::words::{CommExpr, Gen, Word};
use crate::{Error, Limits, Result};

/// Parameters of `BS(m,n)`; `d = gcd(|m|, |n|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BsParams {
    m: i64,
    n: i64,
    d: i64,
}

impl BsParams {
    pub fn new(m: i64, n: i64) -> Result<BsParams> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "BS({}, {}): both parameters must be nonzero",
                m, n
            )));
        }
        if m == i64::MIN || n == i64::MIN {
            return Err(Error::InvalidParams("parameter out of range".into()));
        }
        Ok(BsParams {
            m,
            n,
            d: m.abs().gcd(&n.abs()),
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }
}

impl fmt::Display for BsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BS({}, {})", self.m, self.n)
    }
}

/// One `t^eps a^r` block of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailEntry {
    /// +1 or -1.
    pub eps: i8,
    pub r: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BrittonNf {
    pub r0: BigInt,
    pub tail: Vec<TailEntry>,
}

impl BrittonNf {
    pub fn identity() -> BrittonNf {
        BrittonNf::default()
    }

    pub fn is_identity(&self) -> bool {
        self.r0.is_zero() && self.tail.is_empty()
    }

    /// `Some(e)` when the element is `a^e`.
    pub fn as_a_power(&self) -> Option<&BigInt> {
        self.tail.is_empty().then_some(&self.r0)
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::a(self.r0.clone());
        for e in &self.tail {
            w.push(Gen::T, BigInt::from(e.eps));
            w.push(Gen::A, e.r.clone());
        }
        w
    }

    /// Number of t-letters.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    /// Checks the normal-form invariants for `p`.
    pub fn is_valid(&self, p: &BsParams) -> bool {
        for (i, e) in self.tail.iter().enumerate() {
            let modulus = if e.eps < 0 { p.m.abs() } else { p.n.abs() };
            if e.eps != 1 && e.eps != -1 {
                return false;
            }
            if e.r.is_negative() || e.r >= BigInt::from(modulus) {
                return false;
            }
            if let Some(next) = self.tail.get(i + 1) {
                if e.r.is_zero() && next.eps == -e.eps {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for BrittonNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        if !self.r0.is_zero() {
            crate::words::write_power(f, Gen::A, &self.r0)?;
            first = false;
        }
        for e in &self.tail {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str("(")?;
            if e.eps > 0 {
                f.write_str("t")?;
            } else {
                f.write_str("t^-1")?;
            }
            if !e.r.is_zero() {
                f.write_str(" ")?;
                crate::words::write_power(f, Gen::A, &e.r)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Image in `BS(m,n)^ab = <a, t | a^(n-m)>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbImage {
    pub t_part: BigInt,
    /// Reduced into `[0, modulus)` when `modulus > 0`.
    pub a_part: BigInt,
    /// `|n - m|`; zero means the a-factor is `Z`.
    pub modulus: BigInt,
}

impl AbImage {
    pub fn add(&self, other: &AbImage) -> AbImage {
        debug_assert_eq!(self.modulus, other.modulus);
        let mut a_part = &self.a_part + &other.a_part;
        if !self.modulus.is_zero() {
            a_part = a_part.mod_floor(&self.modulus);
        }
        AbImage {
            t_part: &self.t_part + &other.t_part,
            a_part,
            modulus: self.modulus.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t_part.is_zero() && self.a_part.is_zero()
    }
}

impl fmt::Display for AbImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "({}, {}) in Z x Z", self.t_part, self.a_part)
        } else if self.modulus.is_one() {
            write!(f, "{} in Z", self.t_part)
        } else {
            write!(f, "({}, {}) in Z x Z_{}", self.t_part, self.a_part, self.modulus)
        }
    }
}

enum Pending {
    A(BigInt),
    T(i8),
}

/// Normal-form engine for a fixed `BS(m,n)`.
#[derive(Clone, Copy, Debug)]
pub struct Britton {
    params: BsParams,
    limits: Limits,
}

impl Britton {
    pub fn new(params: BsParams) -> Britton {
        Britton {
            params,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(params: BsParams, limits: Limits) -> Britton {
        Britton { params, limits }
    }

    pub fn params(&self) -> &BsParams {
        &self.params
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn normalize(&self, w: &Word) -> Result<BrittonNf> {
        let mut nf = BrittonNf::identity();
        self.append_word(&mut nf, w)?;
        Ok(nf)
    }

    pub fn multiply(&self, x: &BrittonNf, y: &BrittonNf) -> Result<BrittonNf> {
        let mut nf = x.clone();
        self.append_word(&mut nf, &y.to_word())?;
        Ok(nf)
    }

    pub fn invert(&self, x: &BrittonNf) -> Result<BrittonNf> {
        self.normalize(&x.to_word().inverse())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }

    pub fn pow(&self, x: &BrittonNf, k: &BigInt) -> Result<BrittonNf> {
        let mut base = if k.is_negative() { self.invert(x)? } else { x.clone() };
        let mut k = k.abs();
        let mut acc = BrittonNf::identity();
        while !k.is_zero() {
            if k.is_odd() {
                acc = self.multiply(&acc, &base)?;
            }
            k >>= 1;
            if !k.is_zero() {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates an expression directly in the group, normalizing every
    /// intermediate value instead of expanding the free word.
    pub fn eval_expr(&self, e: &CommExpr) -> Result<BrittonNf> {
        match e {
            CommExpr::Gen(g) => self.normalize(&Word::gen_power(*g, 1)),
            CommExpr::Power(x, k) => self.pow(&self.eval_expr(x)?, k),
            CommExpr::Product(xs) => {
                let mut acc = BrittonNf::identity();
                for x in xs {
                    acc = self.multiply(&acc, &self.eval_expr(x)?)?;
                }
                Ok(acc)
            }
            CommExpr::Commutator(x, y) => {
                let x = self.eval_expr(x)?;
                let y = self.eval_expr(y)?;
                let xi = self.invert(&x)?;
                let yi = self.invert(&y)?;
                let l = self.multiply(&xi, &yi)?;
                let r = self.multiply(&x, &y)?;
                self.multiply(&l, &r)
            }
            CommExpr::Conjugate(x, y) => {
                let x = self.eval_expr(x)?;
                let y = self.eval_expr(y)?;
                let yi = self.invert(&y)?;
                let l = self.multiply(&yi, &x)?;
                self.multiply(&l, &y)
            }
        }
    }

    pub fn abelianize(&self, w: &Word) -> AbImage {
        abelianize(&self.params, w)
    }

    fn append_word(&self, nf: &mut BrittonNf, w: &Word) -> Result<()> {
        for s in w.syllables() {
            match s.gen {
                Gen::A => self.append(nf, Pending::A(s.exp.clone()))?,
                Gen::T => {
                    let eps: i8 = if s.exp.is_negative() { -1 } else { 1 };
                    let count = s
                        .exp
                        .abs()
                        .to_u64()
                        .filter(|c| *c <= self.limits.max_syllables as u64)
                        .ok_or_else(|| Error::TooLong(format!("t-exponent {}", s.exp)))?;
                    for _ in 0..count {
                        self.append(nf, Pending::T(eps))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Appends one letter block to a valid normal form, keeping it valid.
    /// Only the last tail entry is ever modified; an overflow is split off,
    /// carried across its t-letter and re-appended.
    fn append(&self, nf: &mut BrittonNf, first: Pending) -> Result<()> {
        let m = BigInt::from(self.params.m);
        let n = BigInt::from(self.params.n);
        let m_abs = m.abs();
        let n_abs = n.abs();
        let mut stack = vec![first];
        while let Some(item) = stack.pop() {
            match item {
                Pending::A(e) => {
                    if e.is_zero() {
                        continue;
                    }
                    let Some(last) = nf.tail.last_mut() else {
                        nf.r0 += e;
                        self.limits.check_bits(&nf.r0)?;
                        continue;
                    };
                    let modulus = if last.eps < 0 { &m_abs } else { &n_abs };
                    let total = &last.r + e;
                    let (q, rem) = total.div_mod_floor(modulus);
                    if q.is_zero() {
                        last.r = rem;
                        continue;
                    }
                    let eps = last.eps;
                    nf.tail.pop();
                    // t^-1 a^(|m| q) = a^(n q sgn m) t^-1 ; t a^(|n| q) = a^(m q sgn n) t
                    let carry = if eps < 0 {
                        &n * q * m.signum()
                    } else {
                        &m * q * n.signum()
                    };
                    self.limits.check_bits(&carry)?;
                    stack.push(Pending::A(rem));
                    stack.push(Pending::T(eps));
                    stack.push(Pending::A(carry));
                }
                Pending::T(eps) => match nf.tail.last() {
                    Some(last) if last.r.is_zero() && last.eps == -eps => {
                        nf.tail.pop();
                    }
                    _ => nf.tail.push(TailEntry {
                        eps,
                        r: BigInt::zero(),
                    }),
                },
            }
        }
        Ok(())
    }
}

pub fn normalize(p: &BsParams, w: &Word) -> Result<BrittonNf> {
    Britton::new(*p).normalize(w)
}

pub fn nf_multiply(p: &BsParams, x: &BrittonNf, y: &BrittonNf) -> Result<BrittonNf> {
    Britton::new(*p).multiply(x, y)
}

pub fn nf_invert(p: &BsParams, x: &BrittonNf) -> Result<BrittonNf> {
    Britton::new(*p).invert(x)
}

pub fn nf_equal(p: &BsParams, u: &Word, v: &Word) -> Result<bool> {
    Britton::new(*p).equal(u, v)
}

pub fn abelianize(p: &BsParams, w: &Word) -> AbImage {
    let sums = w.exp_sums();
    let modulus = BigInt::from(p.n - p.m).abs();
    let a_part = if modulus.is_zero() {
        sums.sigma_a
    } else {
        sums.sigma_a.mod_floor(&modulus)
    };
    AbImage {
        t_part: sums.sigma_t,
        a_part,
        modulus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_word, rng};
    use crate::words::parse_word;

    fn p(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn nf(m: i64, n: i64, text: &str) -> BrittonNf {
        normalize(&p(m, n), &parse_word(text).unwrap()).unwrap()
    }

    #[test]
    fn defining_relation_collapses() {
        let x = nf(2, 3, "t^-1 a^2 t");
        assert_eq!(x.r0, BigInt::from(3));
        assert!(x.tail.is_empty());
        assert!(nf(2, 3, "a t t^-1 a^-1").is_identity());
    }

    #[test]
    fn negative_remainder_example() {
        // t a^-1 t^-1 in BS(1,3): -1 = 3(-1) + 2
        let x = nf(1, 3, "t a^-1 t^-1");
        assert_eq!(x.to_word(), parse_word("a^-1 t a^2 t^-1").unwrap());
        assert_eq!(x.to_string(), "a^-1 (t a^2) (t^-1)");
    }

    #[test]
    fn multiply_examples() {
        let q = p(2, 3);
        let x = nf(2, 3, "a");
        let y = nf(2, 3, "t^-1 a^2 t");
        assert_eq!(nf_multiply(&q, &x, &y).unwrap(), nf(2, 3, "a^4"));
        assert_eq!(nf_multiply(&q, &BrittonNf::identity(), &y).unwrap(), y);
        let z = nf(2, 3, "t a t^-1 a^5 t");
        let zi = nf_invert(&q, &z).unwrap();
        assert!(nf_multiply(&q, &z, &zi).unwrap().is_identity());
    }

    #[test]
    fn equality_examples() {
        let w = |s| parse_word(s).unwrap();
        assert!(nf_equal(&p(2, 3), &w("t^-1 a^2 t"), &w("a^3")).unwrap());
        assert!(nf_equal(&p(2, 3), &w("[a^2, t]"), &w("a")).unwrap());
        for (m, n) in [(1, 2), (2, 3), (3, -3), (2, 2)] {
            assert!(!nf_equal(&p(m, n), &w("a"), &w("t")).unwrap());
        }
    }

    #[test]
    fn abelianize_examples() {
        let ab = abelianize(&p(2, 3), &Word::a(1));
        assert!(ab.is_zero());
        let ab = abelianize(&p(2, 2), &Word::a(1));
        assert_eq!((ab.t_part, ab.a_part), (BigInt::zero(), BigInt::one()));
        let ab = abelianize(&p(2, 4), &Word::a(3));
        assert_eq!((ab.a_part, ab.modulus), (BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn negative_parameters() {
        // BS(-2, 3): t^-1 a^-2 t = a^3
        let x = nf(-2, 3, "t^-1 a^-2 t");
        assert_eq!(x, nf(-2, 3, "a^3"));
        let x = nf(2, -3, "t a^-3 t^-1 a^-2");
        assert!(x.is_identity());
        let x = nf(-3, -2, "t a^5 t^-1");
        assert!(x.is_valid(&p(-3, -2)));
    }

    #[test]
    fn bit_cap_is_enforced() {
        let q = p(1, 2);
        let e = Britton::with_limits(q, Limits::with_max_bits(64));
        // t^-k a t^k = a^(2^k)
        let w = Word::t(-70) * Word::a(1) * Word::t(70);
        assert!(matches!(e.normalize(&w), Err(Error::BitCap { .. })));
        let w = Word::t(-60) * Word::a(1) * Word::t(60);
        assert_eq!(e.normalize(&w).unwrap().r0, BigInt::one() << 60);
    }

    #[test]
    fn random_words_give_valid_forms() {
        let mut r = rng(7);
        for (m, n) in [(1, 2), (2, 3), (-2, 4), (3, -3), (4, 6), (5, 2)] {
            let q = p(m, n);
            for _ in 0..200 {
                let w = random_word(&mut r, 30, 5);
                let x = normalize(&q, &w).unwrap();
                assert!(x.is_valid(&q), "{} {}", q, x);
                assert_eq!(normalize(&q, &x.to_word()).unwrap(), x);
                assert_eq!(abelianize(&q, &w), abelianize(&q, &x.to_word()));
            }
        }
    }
}
