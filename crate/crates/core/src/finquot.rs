//! Finite p-group quotients of BS(m,n), their lower central series, and
//! certificates of non-membership in `γ_i`.
//!
//! Any homomorphism maps `γ_i G` into `γ_i Q`, so an image outside `γ_i Q`
//! proves the element lies outside `γ_i G`. A missing certificate proves nothing.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inverse, pow_mod, prime_factors};
use crate::britton::BsParams;
use crate::words::{parse_word, Gen, Word};
use crate::{Error, Result};

/// Orders beyond this are refused outright.
pub const HARD_ORDER_CAP: u64 = 10_000_000;

/// Element of a [`FinQuot`], encoded as an integer in `[0, order)`.
pub type Elem = u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotKind {
    /// `Z_{p^k} ⋊_u Z_{p^j}`, `t^-1 a t = a^u`.
    Semidirect { p: u64, k: u32, j: u32, u: u64 },
    /// `Z_{p^e} ≀ Z_{p^j}`.
    Wreath { p: u64, e: u32, j: u32 },
}

#[derive(Clone, Debug)]
pub struct FinQuot {
    kind: QuotKind,
    /// Modulus of the a-coordinate (p^k, or p^e per wreath slot).
    qa: u64,
    /// Modulus of the t-coordinate.
    qt: u64,
    order: u64,
    /// `uinv_pows[y] = u^-y mod qa` for the semidirect kind.
    uinv_pows: Vec<u64>,
}

fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

fn residue(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q))
        .to_u64()
        .expect("residue fits u64")
}

/// `Z_{p^k} ⋊_u Z_{p^j}` with `a = (1,0)`, `t = (0,1)`, `u = n m^-1 mod p^k`.
pub fn build_semidirect(p: u64, k: u32, j: u32, params: &BsParams) -> Result<FinQuot> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{} is not prime", p)));
    }
    if k == 0 || j == 0 {
        return Err(Error::InvalidParams("k and j must be positive".into()));
    }
    let (qa, qt) = match (checked_pow(p, k), checked_pow(p, j)) {
        (Some(a), Some(t)) => (a, t),
        _ => return Err(Error::SizeCap { order: u128::MAX, cap: HARD_ORDER_CAP as u128 }),
    };
    let order = (qa as u128) * (qt as u128);
    if order > HARD_ORDER_CAP as u128 {
        return Err(Error::SizeCap { order, cap: HARD_ORDER_CAP as u128 });
    }
    let m = params.m();
    let n = params.n();
    let m_inv = mod_inverse(m as i128, qa).ok_or_else(|| {
        Error::Precondition(format!("gcd(m, p) = gcd({}, {}) != 1, m has no inverse mod {}", m, p, qa))
    })?;
    let n_res = (n as i128).rem_euclid(qa as i128) as u64;
    let u = ((n_res as u128 * m_inv as u128) % qa as u128) as u64;
    if u % p != 1 % p {
        return Err(Error::Precondition(format!(
            "u = n·m^-1 = {} mod {} is not 1 mod {} (n ≢ m mod p)",
            u, qa, p
        )));
    }
    if pow_mod(u, qt, qa) != 1 % qa {
        return Err(Error::Precondition(format!(
            "u^(p^j) = {}^{} ≢ 1 mod {}",
            u, qt, qa
        )));
    }
    let u_inv = mod_inverse(u as i128, qa).expect("u is a unit");
    let mut uinv_pows = Vec::with_capacity(qt as usize);
    let mut x = 1 % qa;
    for _ in 0..qt {
        uinv_pows.push(x);
        x = ((x as u128 * u_inv as u128) % qa as u128) as u64;
    }
    let q = FinQuot {
        kind: QuotKind::Semidirect { p, k, j, u },
        qa,
        qt,
        order: order as u64,
        uinv_pows,
    };
    if !q.check_relation(params) {
        return Err(Error::Internal(format!("relation fails in {}", q)));
    }
    Ok(q)
}

/// `Z_{p^e} ≀ Z_{p^j}` with `a` the base generator at slot 0 and `t` the shift.
pub fn build_wreath(p: u64, e: u32, j: u32) -> Result<FinQuot> {
    build_wreath_capped(p, e, j, HARD_ORDER_CAP)
}

pub fn build_wreath_capped(p: u64, e: u32, j: u32, cap: u64) -> Result<FinQuot> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{} is not prime", p)));
    }
    if e == 0 || j == 0 {
        return Err(Error::InvalidParams("e and j must be positive".into()));
    }
    let too_big = |order: u128| Error::SizeCap { order, cap: cap as u128 };
    let qa = checked_pow(p, e).ok_or_else(|| too_big(u128::MAX))?;
    let qt = checked_pow(p, j).ok_or_else(|| too_big(u128::MAX))?;
    // order = qa^qt · qt
    let mut order: u128 = qt as u128;
    for _ in 0..qt {
        order = order.saturating_mul(qa as u128);
        if order > cap as u128 {
            return Err(too_big(order));
        }
    }
    Ok(FinQuot {
        kind: QuotKind::Wreath { p, e, j },
        qa,
        qt,
        order: order as u64,
        uinv_pows: Vec::new(),
    })
}

impl FinQuot {
    pub fn kind(&self) -> &QuotKind {
        &self.kind
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn gen_a(&self) -> Elem {
        self.encode(&self.delta0(), 0)
    }

    pub fn gen_t(&self) -> Elem {
        self.encode(&self.zero_base(), 1 % self.qt)
    }

    fn is_semidirect(&self) -> bool {
        matches!(self.kind, QuotKind::Semidirect { .. })
    }

    /// Base-group coordinates: one slot for the semidirect kind, `p^j` slots for the wreath.
    fn slots(&self) -> usize {
        if self.is_semidirect() {
            1
        } else {
            self.qt as usize
        }
    }

    fn zero_base(&self) -> Vec<u64> {
        vec![0; self.slots()]
    }

    fn delta0(&self) -> Vec<u64> {
        let mut f = self.zero_base();
        f[0] = 1 % self.qa;
        f
    }

    fn base_size(&self) -> u64 {
        self.order / self.qt
    }

    fn decode(&self, x: Elem) -> (Vec<u64>, u64) {
        let bs = self.base_size();
        let s = x / bs;
        let mut rest = x % bs;
        let mut f = Vec::with_capacity(self.slots());
        for _ in 0..self.slots() {
            f.push(rest % self.qa);
            rest /= self.qa;
        }
        (f, s)
    }

    fn encode(&self, f: &[u64], s: u64) -> Elem {
        let mut code = 0u64;
        for &c in f.iter().rev() {
            code = code * self.qa + c;
        }
        code + s * self.base_size()
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (f1, s1) = self.decode(x);
        let (f2, s2) = self.decode(y);
        let qa = self.qa as u128;
        let s = (s1 + s2) % self.qt;
        if self.is_semidirect() {
            // (x1, y1)(x2, y2) = (x1 + x2 u^-y1, y1 + y2)
            let c = (f1[0] as u128 + f2[0] as u128 * self.uinv_pows[s1 as usize] as u128) % qa;
            return self.encode(&[c as u64], s);
        }
        // (f1, s1)(f2, s2) = (f1 + shift_{s1} f2, s1 + s2), (shift_s f)(i) = f(i - s)
        let len = self.slots();
        let mut f = f1;
        for (i, v) in f2.iter().enumerate() {
            let slot = (i + s1 as usize) % len;
            f[slot] = (f[slot] + v) % self.qa;
        }
        self.encode(&f, s)
    }

    pub fn inv(&self, x: Elem) -> Elem {
        let (f, s) = self.decode(x);
        let ns = (self.qt - s) % self.qt;
        if self.is_semidirect() {
            // (x, y)^-1 = (-x u^y, -y); u^y = u^-(qt - y)
            let uy = self.uinv_pows[ns as usize] as u128;
            let c = (self.qa as u128 - (f[0] as u128 * uy) % self.qa as u128) % self.qa as u128;
            return self.encode(&[c as u64], ns);
        }
        // (f, s)^-1 = (-shift_{-s} f, -s)
        let len = self.slots();
        let mut g = vec![0; len];
        for (i, v) in f.iter().enumerate() {
            let slot = (i + ns as usize) % len;
            g[slot] = (self.qa - v) % self.qa;
        }
        self.encode(&g, ns)
    }

    pub fn pow(&self, x: Elem, e: &BigInt) -> Elem {
        let mut k = residue(e, self.order);
        let mut base = x;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `y^-1 x y`.
    pub fn conj(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `x^-1 y^-1 x y`.
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn image(&self, w: &Word) -> Elem {
        let (a, t) = (self.gen_a(), self.gen_t());
        let mut acc = self.identity();
        for s in w.syllables() {
            let g = match s.gen {
                Gen::A => a,
                Gen::T => t,
            };
            acc = self.mul(acc, self.pow(g, &s.exp));
        }
        acc
    }

    /// Whether `t^-1 a^m t = a^n` holds in the quotient.
    pub fn check_relation(&self, params: &BsParams) -> bool {
        let a = self.gen_a();
        let t = self.gen_t();
        let am = self.pow(a, &BigInt::from(params.m()));
        let an = self.pow(a, &BigInt::from(params.n()));
        self.conj(am, t) == an
    }

    pub fn format_elem(&self, x: Elem) -> String {
        let (f, s) = self.decode(x);
        if self.is_semidirect() {
            return format!("a^{} t^{}", f[0], s);
        }
        let body: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        format!("([{}], t^{})", body.join(","), s)
    }

    /// `(kind, p, k-or-e, j)` as flat fields.
    pub fn descriptor(&self) -> (&'static str, u64, u32, u32) {
        match self.kind {
            QuotKind::Semidirect { p, k, j, .. } => ("semidirect", p, k, j),
            QuotKind::Wreath { p, e, j } => ("wreath", p, e, j),
        }
    }
}

impl fmt::Display for FinQuot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QuotKind::Semidirect { u, .. } => write!(f, "Z_{} ⋊_{} Z_{}", self.qa, u, self.qt),
            QuotKind::Wreath { .. } => write!(f, "Z_{} ≀ Z_{}", self.qa, self.qt),
        }
    }
}

/// Lower central series `γ_1 ⊇ γ_2 ⊇ … ⊇ {1}`; `γ_1` is the whole group and
/// is not stored.
#[derive(Clone, Debug)]
pub struct GammaChain {
    order: u64,
    /// `terms[i]` is `γ_{i+2}`; the last entry is trivial.
    terms: Vec<HashSet<Elem>>,
}

impl GammaChain {
    pub fn sizes(&self) -> Vec<u64> {
        std::iter::once(self.order)
            .chain(self.terms.iter().map(|t| t.len() as u64))
            .collect()
    }

    /// Nilpotency class.
    pub fn class(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, i: usize, x: Elem) -> bool {
        match i {
            0 | 1 => true,
            _ => match self.terms.get(i - 2) {
                Some(t) => t.contains(&x),
                None => x == 0,
            },
        }
    }

    /// `γ_i` is the trivial group.
    pub fn is_trivial_at(&self, i: usize) -> bool {
        i >= 2 && self.terms.get(i - 2).is_none_or(|t| t.len() == 1)
    }

    pub fn term(&self, i: usize) -> Option<&HashSet<Elem>> {
        if i < 2 {
            return None;
        }
        self.terms.get(i - 2)
    }
}

/// Normal closure of `seeds` in `q`.
fn normal_closure(q: &FinQuot, seeds: &[Elem], cap: u64) -> Result<HashSet<Elem>> {
    let conj_by = [q.gen_a(), q.gen_t()];
    let mut h: HashSet<Elem> = HashSet::from([q.identity()]);
    let mut gens: Vec<Elem> = Vec::new();
    let mut pending: Vec<Elem> = seeds.to_vec();
    while let Some(g) = pending.pop() {
        if h.contains(&g) {
            continue;
        }
        gens.push(g);
        let mut queue: Vec<Elem> = h.iter().copied().collect();
        while let Some(x) = queue.pop() {
            for &y in &gens {
                let z = q.mul(x, y);
                if h.insert(z) {
                    if h.len() as u64 > cap {
                        return Err(Error::SizeCap { order: h.len() as u128, cap: cap as u128 });
                    }
                    queue.push(z);
                }
            }
        }
        // finite group: conjugation by a and t mapping H into H is enough
        for &c in &conj_by {
            pending.push(q.conj(g, c));
        }
    }
    Ok(h)
}

/// `γ_2 = <[a,t]>^G`, `γ_{i+1} = <[x, a], [x, t] : x ∈ X_i>^G` where `X_i`
/// normally generates `γ_i`.
pub fn fq_gamma_series(q: &FinQuot) -> Result<GammaChain> {
    let (a, t) = (q.gen_a(), q.gen_t());
    let cap = q.order();
    let mut gens = vec![q.comm(a, t)];
    let mut terms: Vec<HashSet<Elem>> = Vec::new();
    loop {
        let term = normal_closure(q, &gens, cap)?;
        let size = term.len();
        if let Some(prev) = terms.last() {
            if prev.len() == size && size > 1 {
                return Err(Error::Internal(format!(
                    "lower central series of {} stalls at size {}",
                    q, size
                )));
            }
        }
        terms.push(term);
        if size == 1 {
            break;
        }
        let mut next: Vec<Elem> = gens
            .iter()
            .flat_map(|&x| [q.comm(x, a), q.comm(x, t)])
            .filter(|&x| x != 0)
            .collect();
        next.sort_unstable();
        next.dedup();
        gens = next;
    }
    Ok(GammaChain { order: q.order(), terms })
}

/// Search limits for [`certify_not_in_gamma`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_k: u32,
    pub max_j: u32,
    pub max_order: u64,
    pub max_wreath_order: u64,
    /// Prime bound when `n = m` (then every prime coprime to `m` is admissible).
    pub max_prime: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_k: 12,
            max_j: 10,
            max_order: HARD_ORDER_CAP,
            max_wreath_order: 1_000_000,
            max_prime: 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: i64,
    pub n: i64,
    pub word: String,
    pub quotient: String,
    pub kind: String,
    pub p: u64,
    /// `k` for the semidirect kind, `e` for the wreath.
    pub k: u32,
    pub j: u32,
    pub image: String,
    pub image_code: Elem,
    pub i: u32,
    pub gamma_sizes: Vec<u64>,
}

impl Certificate {
    /// Rebuilds the quotient and its series from scratch and rechecks the claim.
    pub fn verify(&self) -> Result<bool> {
        let params = BsParams::new(self.m, self.n)?;
        let q = match self.kind.as_str() {
            "semidirect" => build_semidirect(self.p, self.k, self.j, &params)?,
            "wreath" => {
                let q = build_wreath(self.p, self.k, self.j)?;
                if !q.check_relation(&params) {
                    return Ok(false);
                }
                q
            }
            other => return Err(Error::InvalidParams(format!("unknown quotient kind {:?}", other))),
        };
        let w = parse_word(&self.word)?;
        let x = q.image(&w);
        let chain = fq_gamma_series(&q)?;
        Ok(x == self.image_code
            && q.format_elem(x) == self.image
            && chain.sizes() == self.gamma_sizes
            && !chain.contains(self.i as usize, x))
    }
}

struct Candidate {
    quot: FinQuot,
    chain: Option<GammaChain>,
}

/// Budgeted family of quotients of one BS(m,n), ordered by size, with
/// series computed lazily and cached across queries.
pub struct QuotientSearch {
    params: BsParams,
    candidates: Vec<Candidate>,
}

fn admissible_primes(params: &BsParams, budget: &Budget) -> Vec<u64> {
    let diff = (params.n() as i128 - params.m() as i128).unsigned_abs();
    let m = params.m().unsigned_abs();
    let ps: Vec<u64> = if diff == 0 {
        (2..=budget.max_prime).filter(|&p| is_prime(p)).collect()
    } else {
        prime_factors(u64::try_from(diff).unwrap_or(u64::MAX))
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    };
    ps.into_iter().filter(|p| !m.is_multiple_of(*p)).collect()
}

impl QuotientSearch {
    pub fn new(params: BsParams, budget: &Budget) -> QuotientSearch {
        let mut candidates = Vec::new();
        for p in admissible_primes(&params, budget) {
            for k in 1..=budget.max_k {
                for j in 1..=budget.max_j {
                    if let Ok(q) = build_semidirect(p, k, j, &params) {
                        if q.order() <= budget.max_order {
                            candidates.push(q);
                        }
                    }
                }
            }
        }
        let d = params.d().unsigned_abs();
        for (p, emax) in prime_factors(d) {
            for e in 1..=emax {
                for j in 1..=budget.max_j {
                    match build_wreath_capped(p, e, j, budget.max_wreath_order) {
                        Ok(q) => candidates.push(q),
                        Err(_) => break,
                    }
                }
            }
        }
        candidates.sort_by_key(|q| (q.order(), q.descriptor().1, q.descriptor().2));
        let candidates = candidates
            .into_iter()
            .filter(|q| q.check_relation(&params))
            .map(|quot| Candidate { quot, chain: None })
            .collect();
        QuotientSearch { params, candidates }
    }

    pub fn params(&self) -> &BsParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn quotients(&self) -> impl Iterator<Item = &FinQuot> {
        self.candidates.iter().map(|c| &c.quot)
    }

    fn chain(&mut self, idx: usize) -> Option<&GammaChain> {
        let c = &mut self.candidates[idx];
        if c.chain.is_none() {
            c.chain = fq_gamma_series(&c.quot).ok();
        }
        c.chain.as_ref()
    }

    /// Smallest quotient showing `w ∉ γ_i`. Quotients with `γ_i(Q) ≠ 1` are
    /// preferred; those where `γ_i(Q)` is trivial are tried afterwards.
    pub fn certify(&mut self, w: &Word, i: u32) -> Option<Certificate> {
        if i < 2 {
            return None;
        }
        for want_nontrivial in [true, false] {
            for idx in 0..self.candidates.len() {
                let x = self.candidates[idx].quot.image(w);
                if x == 0 {
                    continue;
                }
                let Some(chain) = self.chain(idx) else { continue };
                if chain.is_trivial_at(i as usize) == want_nontrivial {
                    continue;
                }
                if chain.contains(i as usize, x) {
                    continue;
                }
                let sizes = chain.sizes();
                let q = &self.candidates[idx].quot;
                let (kind, p, k, j) = q.descriptor();
                return Some(Certificate {
                    m: self.params.m(),
                    n: self.params.n(),
                    word: w.to_string(),
                    quotient: q.to_string(),
                    kind: kind.to_string(),
                    p,
                    k,
                    j,
                    image: q.format_elem(x),
                    image_code: x,
                    i,
                    gamma_sizes: sizes,
                });
            }
        }
        None
    }

    /// Certificate for the smallest `i ≤ max_i` with `w ∉ γ_i`, i.e. the
    /// tightest proven upper bound `weight(w) < i`.
    pub fn weight_upper_bound(&mut self, w: &Word, max_i: u32) -> Option<Certificate> {
        (2..=max_i).find_map(|i| self.certify(w, i))
    }
}

/// One-shot search; prefer [`QuotientSearch`] for repeated queries.
pub fn certify_not_in_gamma(params: &BsParams, w: &Word, i: u32, budget: &Budget) -> Option<Certificate> {
    QuotientSearch::new(*params, budget).certify(w, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `γ_{i+1}` as the subgroup generated by every `[x, g]`, `x ∈ γ_i`, `g ∈ Q`.
    fn brute_sizes(q: &FinQuot) -> Vec<u64> {
        let all: Vec<Elem> = (0..q.order()).collect();
        let mut cur: HashSet<Elem> = all.iter().copied().collect();
        let mut sizes = vec![cur.len() as u64];
        while cur.len() > 1 {
            let gens: HashSet<Elem> = cur
                .iter()
                .flat_map(|&x| all.iter().map(move |&g| q.comm(x, g)))
                .collect();
            let mut h: HashSet<Elem> = HashSet::from([0]);
            let mut queue = vec![0];
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let z = q.mul(x, g);
                    if h.insert(z) {
                        queue.push(z);
                    }
                }
            }
            assert!(h.len() < cur.len(), "not nilpotent");
            sizes.push(h.len() as u64);
            cur = h;
        }
        sizes
    }

    fn bs(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    #[test]
    fn group_axioms() {
        let qs = [
            build_semidirect(2, 3, 1, &bs(1, 3)).unwrap(),
            build_semidirect(3, 2, 1, &bs(1, 4)).unwrap(),
            build_wreath(2, 1, 2).unwrap(),
            build_wreath(3, 1, 1).unwrap(),
        ];
        for q in &qs {
            let n = q.order();
            for x in 0..n {
                assert_eq!(q.mul(x, q.inv(x)), 0, "{q}");
                assert_eq!(q.mul(q.inv(x), x), 0, "{q}");
                for y in (0..n).step_by(3) {
                    let z = (x * 7 + y) % n;
                    assert_eq!(q.mul(q.mul(x, y), z), q.mul(x, q.mul(y, z)), "{q}");
                }
            }
        }
    }

    #[test]
    fn build_examples() {
        let q = build_semidirect(2, 2, 1, &bs(1, 3)).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.to_string(), "Z_4 ⋊_3 Z_2");
        assert!(matches!(build_semidirect(2, 2, 1, &bs(1, 2)), Err(Error::Precondition(_))));
        assert!(matches!(build_semidirect(2, 2, 1, &bs(2, 4)), Err(Error::Precondition(_))));
        assert!(build_semidirect(4, 2, 1, &bs(1, 5)).is_err());
        // 3 has order 2^(k-2) mod 2^k
        assert!(build_semidirect(2, 4, 1, &bs(1, 3)).is_err());
        assert!(build_semidirect(2, 4, 2, &bs(1, 3)).is_ok());
        assert_eq!(build_wreath(2, 1, 1).unwrap().order(), 8);
        assert_eq!(build_wreath(2, 1, 2).unwrap().order(), 64);
        assert_eq!(build_wreath(3, 1, 1).unwrap().order(), 81);
        assert!(matches!(build_wreath(2, 1, 5), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn chains_match_brute_force() {
        let q = build_semidirect(2, 2, 1, &bs(1, 3)).unwrap();
        assert_eq!(fq_gamma_series(&q).unwrap().sizes(), vec![8, 2, 1]);
        let q = build_semidirect(2, 3, 1, &bs(1, 3)).unwrap();
        assert_eq!(fq_gamma_series(&q).unwrap().sizes(), vec![16, 4, 2, 1]);
        let abelian = build_semidirect(3, 1, 1, &bs(2, 2)).unwrap();
        assert_eq!(fq_gamma_series(&abelian).unwrap().sizes(), vec![9, 1]);
        let cases = [
            build_semidirect(2, 3, 2, &bs(1, 3)).unwrap(),
            build_semidirect(2, 4, 2, &bs(1, 5)).unwrap(),
            build_semidirect(3, 2, 1, &bs(1, -2)).unwrap(),
            build_semidirect(2, 3, 1, &bs(3, 5)).unwrap(),
            build_wreath(2, 1, 1).unwrap(),
            build_wreath(2, 1, 2).unwrap(),
            build_wreath(2, 2, 1).unwrap(),
            build_wreath(3, 1, 1).unwrap(),
        ];
        for q in &cases {
            assert_eq!(fq_gamma_series(q).unwrap().sizes(), brute_sizes(q), "{q}");
        }
    }

    #[test]
    fn gamma2_is_generated_by_a_to_u_minus_1() {
        for (p, k, j, m, n) in [(2, 3, 1, 1, 3), (2, 4, 2, 1, 5), (3, 2, 1, 1, 4), (5, 2, 1, 1, 6)] {
            let q = build_semidirect(p, k, j, &bs(m, n)).unwrap();
            let QuotKind::Semidirect { u, .. } = *q.kind() else { unreachable!() };
            let g = q.pow(q.gen_a(), &BigInt::from(u - 1));
            let mut cyc = HashSet::from([0]);
            let mut x = g;
            while cyc.insert(x) {
                x = q.mul(x, g);
            }
            assert_eq!(fq_gamma_series(&q).unwrap().term(2).unwrap(), &cyc, "{q}");
        }
    }

    #[test]
    fn certificates() {
        let budget = Budget::default();
        let a2 = Word::a(2);
        let c = certify_not_in_gamma(&bs(1, 3), &a2, 3, &budget).unwrap();
        assert_eq!(c.quotient, "Z_8 ⋊_3 Z_2");
        assert_eq!(c.gamma_sizes, vec![16, 4, 2, 1]);
        assert!(c.verify().unwrap());
        assert!(certify_not_in_gamma(&bs(1, 3), &a2, 2, &budget).is_none());

        let c = certify_not_in_gamma(&bs(2, 4), &Word::a(1), 4, &budget).unwrap();
        assert_eq!(c.kind, "wreath");
        assert!(c.verify().unwrap());
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);

        let mut forged = c.clone();
        forged.i = 1;
        assert!(!forged.verify().unwrap());
    }

    #[test]
    fn relation_holds_in_every_candidate() {
        for (m, n) in [(1, 3), (1, -1), (2, 4), (4, 6), (3, 5), (2, 2), (6, 12)] {
            let s = QuotientSearch::new(bs(m, n), &Budget::default());
            assert!(!s.is_empty());
            for q in s.quotients() {
                assert!(q.check_relation(&bs(m, n)), "{q} for BS({m},{n})");
            }
        }
    }
}
