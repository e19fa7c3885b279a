//! The solvable groups `BS(1,n)` as affine maps of `Z[1/n]`.
//!
//! `a` acts as `x -> x + 1` and `t` as `x -> x / n`, composed so that
//! `rho(uv) = rho(u) ∘ rho(v)`. Then `t^-1 a t = a^n` and
//! `t^l a^s t^-l` is the translation by `s / n^l`. An element is stored as the
//! pair `(k, b)` for the map `x -> n^k x + b`, where `k = -sigma_t`.
//!
//! Lower central series: for `n != 1`, `γ_i` (`i >= 2`) is the set of
//! translations by `(n-1)^(i-1) Z[1/n]`, and consecutive quotients are `Z_(n-1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::prime_factors;
use crate::words::{Gen, Word};
use crate::{Error, Limits, Result};

/// `num / n^l` in `Z[1/n]`, canonical: `l = 0` or `n ∤ num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZnElement {
    n: i64,
    num: BigInt,
    l: u64,
}

impl ZnElement {
    pub fn new(n: i64, num: impl Into<BigInt>, l: u64) -> ZnElement {
        let mut z = ZnElement {
            n,
            num: num.into(),
            l,
        };
        z.canonicalize();
        z
    }

    pub fn zero(n: i64) -> ZnElement {
        ZnElement::new(n, 0, 0)
    }

    pub fn base(&self) -> i64 {
        self.n
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.l = 0;
            return;
        }
        if self.n.abs() == 1 {
            if self.n == -1 && self.l % 2 == 1 {
                self.num = -&self.num;
            }
            self.l = 0;
            return;
        }
        let n = BigInt::from(self.n);
        while self.l > 0 {
            let (q, r) = self.num.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.l -= 1;
        }
    }

    fn n_pow(&self, e: u64) -> BigInt {
        num_traits::pow(BigInt::from(self.n), e as usize)
    }

    pub fn add(&self, other: &ZnElement) -> ZnElement {
        debug_assert_eq!(self.n, other.n);
        let l = self.l.max(other.l);
        let num = &self.num * self.n_pow(l - self.l) + &other.num * self.n_pow(l - other.l);
        ZnElement::new(self.n, num, l)
    }

    pub fn neg(&self) -> ZnElement {
        ZnElement {
            n: self.n,
            num: -&self.num,
            l: self.l,
        }
    }

    /// `self * n^k`.
    pub fn scale(&self, k: i64) -> ZnElement {
        if self.num.is_zero() {
            return self.clone();
        }
        if self.n.abs() == 1 {
            let flip = self.n == -1 && k.rem_euclid(2) == 1;
            return ZnElement::new(self.n, if flip { -&self.num } else { self.num.clone() }, 0);
        }
        if k >= 0 {
            let k = k as u64;
            if self.l >= k {
                ZnElement {
                    n: self.n,
                    num: self.num.clone(),
                    l: self.l - k,
                }
            } else {
                ZnElement::new(self.n, &self.num * self.n_pow(k - self.l), 0)
            }
        } else {
            ZnElement::new(self.n, self.num.clone(), self.l + k.unsigned_abs())
        }
    }
}

impl fmt::Display for ZnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 0 {
            write!(f, "{}", self.num)
        } else if self.n < 0 {
            write!(f, "{}/({})^{}", self.num, self.n, self.l)
        } else {
            write!(f, "{}/{}^{}", self.num, self.n, self.l)
        }
    }
}

/// The map `x -> n^k x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElem {
    pub k: i64,
    pub b: ZnElement,
}

impl AffineElem {
    pub fn identity(n: i64) -> AffineElem {
        AffineElem {
            k: 0,
            b: ZnElement::zero(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.b.is_zero()
    }

    pub fn compose(&self, other: &AffineElem) -> Result<AffineElem> {
        let k = self
            .k
            .checked_add(other.k)
            .ok_or_else(|| Error::TooLong("t-degree overflow".into()))?;
        Ok(AffineElem {
            k,
            b: self.b.add(&other.b.scale(self.k)),
        })
    }

    pub fn inverse(&self) -> AffineElem {
        AffineElem {
            k: -self.k,
            b: self.b.scale(-self.k).neg(),
        }
    }
}

impl fmt::Display for AffineElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, b={})", self.k, self.b)
    }
}

/// Largest `i` with `g ∈ γ_i`, or omega.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Finite(u64),
    Omega,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(i) => write!(f, "{}", i),
            Weight::Omega => f.write_str("omega"),
        }
    }
}

fn check_n(n: i64) -> Result<()> {
    if n == 0 || n == i64::MIN {
        Err(Error::InvalidParams(format!("BS(1, {}) is not defined", n)))
    } else {
        Ok(())
    }
}

pub fn to_affine(n: i64, w: &Word) -> Result<AffineElem> {
    to_affine_with(n, w, &Limits::default())
}

pub fn to_affine_with(n: i64, w: &Word, limits: &Limits) -> Result<AffineElem> {
    check_n(n)?;
    let mut g = AffineElem::identity(n);
    for s in w.syllables() {
        let step = match s.gen {
            Gen::A => AffineElem {
                k: 0,
                b: ZnElement::new(n, s.exp.clone(), 0),
            },
            Gen::T => AffineElem {
                k: (-&s.exp)
                    .to_i64()
                    .ok_or_else(|| Error::TooLong(format!("t-exponent {}", s.exp)))?,
                b: ZnElement::zero(n),
            },
        };
        g = g.compose(&step)?;
        limits.check_bits(g.b.num())?;
    }
    Ok(g)
}

/// The unique word `t^K a^l t^-r` (`K, r >= 0`, and `n ∤ l` when both `K, r > 0`)
/// representing `g`.
pub fn canonical_word(n: i64, g: &AffineElem) -> Word {
    // rho(t^K a^l t^-r) = (r - K, l / n^K)
    let big_k = g.b.l().max(g.k.min(0).unsigned_abs());
    let l_exp = g.b.scale(big_k as i64);
    debug_assert_eq!(l_exp.l(), 0);
    let r = g.k + big_k as i64;
    debug_assert!(r >= 0);
    debug_assert_eq!(n, g.b.base());
    Word::t(big_k) * Word::a(l_exp.num().clone()) * Word::t(-r)
}

fn valuation(x: &BigInt, p: u64) -> u64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Lower-central-series weight of `g` in `BS(1,n)`.
///
/// `n = 1` is the abelian group `Z x Z`: every nontrivial element has weight 1.
/// `n = 2` has `γ_2 = γ_ω`, so commutator-subgroup elements have weight omega.
pub fn lcs_weight(n: i64, g: &AffineElem) -> Result<Weight> {
    check_n(n)?;
    if g.is_identity() {
        return Ok(Weight::Omega);
    }
    if n == 1 || g.k != 0 {
        return Ok(Weight::Finite(1));
    }
    let c = (n as i128 - 1).unsigned_abs() as u64;
    if c == 1 {
        return Ok(Weight::Omega);
    }
    let num = g.b.num();
    let depth = prime_factors(c)
        .into_iter()
        .map(|(p, e)| valuation(num, p) / e as u64)
        .min()
        .expect("c > 1 has a prime factor");
    Ok(Weight::Finite(1 + depth))
}

/// Image of `g ∈ γ_i` in `γ_i / γ_(i+1) ≅ Z_|n-1|`, as a residue in `[0, |n-1|)`.
pub fn gamma_quot_image(n: i64, i: u64, g: &AffineElem) -> Result<BigInt> {
    check_n(n)?;
    let c: BigInt = BigInt::from(n) - 1;
    if c.abs() <= BigInt::one() {
        return Err(Error::Precondition(format!(
            "γ_i/γ_(i+1) is trivial for n = {}",
            n
        )));
    }
    if i < 2 {
        return Err(Error::Precondition("quotient image needs i >= 2".into()));
    }
    let w = lcs_weight(n, g)?;
    if w < Weight::Finite(i) {
        return Err(Error::Precondition(format!(
            "element {} has weight {} < {}",
            g, w, i
        )));
    }
    let div = num_traits::pow(c.clone(), (i - 1) as usize);
    let (q, r) = g.b.num().div_rem(&div);
    if !r.is_zero() {
        return Err(Error::Internal("weight and divisibility disagree".into()));
    }
    // n ≡ 1 (mod n-1), so the n^-l denominator does not change the residue
    Ok(q.mod_floor(&c.abs()))
}
