//! Residual properties, lower-central-series shape, and subgroup chains of
//! BS(m,n) as decidable predicates on the parameters.
//!
//! Everything is evaluated on the canonical representative `(m, n)` with
//! `0 < m <= |n|`, reached through `BS(m,n) ≅ BS(n,m) ≅ BS(-m,-n)`.

use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use serde::{Serialize, Serializer};

use crate::arith::{prime_factors, prime_power};
use crate::britton::BsParams;
use crate::freeprod::{fp_normalize, random_basis_word};
use crate::sample::SampleRng;
use crate::words::Word;
use crate::{Error, Result};

pub fn canonical_form(m: i64, n: i64) -> Result<(i64, i64)> {
    let p = BsParams::new(m, n)?;
    let (m, n) = (p.m(), p.n());
    Ok(if m.abs() <= n.abs() {
        (m.abs(), n * m.signum())
    } else {
        (n.abs(), m * n.signum())
    })
}

/// Primes `p` for which the group is residually a finite p-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSet {
    All,
    Finite(Vec<u64>),
}

impl PrimeSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(v) if v.is_empty())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(v) => v.contains(&p),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::All => f.write_str("all"),
            PrimeSet::Finite(v) => {
                let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                f.write_str(&parts.join(";"))
            }
        }
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PrimeSet::All => s.serialize_str("all"),
            PrimeSet::Finite(v) => v.serialize(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LcsLength {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for LcsLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LcsLength::Two => "2",
            LcsLength::Omega => "omega",
            LcsLength::Unknown => "unknown",
        })
    }
}

/// `γ_ω G` relative to the normal closure of `a^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "d")]
pub enum GammaOmega {
    Trivial,
    EqualsNormalClosure(u64),
    StrictlyContainsNormalClosure(u64),
    Unknown,
}

impl fmt::Display for GammaOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaOmega::Trivial => f.write_str("trivial"),
            GammaOmega::EqualsNormalClosure(d) => write!(f, "<a^{}>^G", d),
            GammaOmega::StrictlyContainsNormalClosure(d) => write!(f, "> <a^{}>^G", d),
            GammaOmega::Unknown => f.write_str("unknown"),
        }
    }
}

/// Position in the chain `rF_p ⊂ {rF_p}_p ⊂ rN ⊂ rF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualClass {
    NotResiduallyFinite,
    /// In rF but not rN.
    FiniteNotNilpotent,
    /// In rN but residually p for no prime.
    NilpotentNotP,
    /// Residually p for at least one prime.
    ResiduallyP,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub class: ResidualClass,
    /// Why the group sits strictly inside its class and not the next one up.
    pub witness: String,
}

/// `G^ab ≅ Z × Z_{|n-m|}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abelianization {
    /// `|n - m|`; 0 means a free abelian factor.
    pub torsion: u64,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.torsion {
            0 => f.write_str("Z x Z"),
            1 => f.write_str("Z"),
            q => write!(f, "Z x Z_{}", q),
        }
    }
}

impl Serialize for Abelianization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub input: (i64, i64),
    pub canonical: (i64, i64),
    pub d: u64,
    pub ab: Abelianization,
    pub rf: bool,
    pub rp: PrimeSet,
    pub rn: bool,
    pub rtfn: bool,
    pub lcs_length: LcsLength,
    pub gamma_omega: GammaOmega,
    pub class_diffs: ClassMembership,
}

fn is_prime_power(x: u64) -> bool {
    prime_power(x).is_some()
}

fn abs_diff(m: i64, n: i64) -> u64 {
    (n as i128 - m as i128).unsigned_abs() as u64
}

pub fn classify(m: i64, n: i64) -> Result<ClassReport> {
    let (cm, cn) = canonical_form(m, n)?;
    let d = BsParams::new(cm, cn)?.d() as u64;
    let diff = abs_diff(cm, cn);
    let mu = cm as u64;

    let rf = cm == 1 || cn.unsigned_abs() == mu;
    let rn = (cm == 1 && cn != 2) || (cn.unsigned_abs() == mu && mu > 1 && is_prime_power(mu));
    let rtfn = (cm, cn) == (1, 1);
    let rp = if cm == 1 {
        if cn == 1 {
            PrimeSet::All
        } else {
            PrimeSet::Finite(prime_factors(diff).into_iter().map(|(p, _)| p).collect())
        }
    } else if cn == cm {
        PrimeSet::Finite(prime_power(mu).map(|(p, _)| vec![p]).unwrap_or_default())
    } else if cn == -cm && mu.is_power_of_two() {
        PrimeSet::Finite(vec![2])
    } else {
        PrimeSet::Finite(Vec::new())
    };

    let abelian = (cm, cn) == (1, 1);
    let lcs_length = if abelian || (cm, cn) == (1, 2) || cn == cm + 1 {
        LcsLength::Two
    } else if rn {
        LcsLength::Omega
    } else {
        LcsLength::Unknown
    };

    let gamma_omega = if rn {
        GammaOmega::Trivial
    } else if cn == cm + d as i64 {
        if d == 1 || is_prime_power(d) {
            GammaOmega::EqualsNormalClosure(d)
        } else {
            GammaOmega::StrictlyContainsNormalClosure(d)
        }
    } else {
        GammaOmega::Unknown
    };

    let class_diffs = if !rf {
        ClassMembership {
            class: ResidualClass::NotResiduallyFinite,
            witness: format!("m = {} > 1 and |n| = {} != m", cm, cn.abs()),
        }
    } else if !rn {
        let witness = if cm == 1 {
            "a = [a, t] lies in every term of the lower central series".to_string()
        } else {
            format!("|n| = m = {} is not a prime power", mu)
        };
        ClassMembership {
            class: ResidualClass::FiniteNotNilpotent,
            witness,
        }
    } else if rp.is_empty() {
        ClassMembership {
            class: ResidualClass::NilpotentNotP,
            witness: format!(
                "n = -m = {} with m not a power of 2: no prime p works",
                cn
            ),
        }
    } else {
        ClassMembership {
            class: ResidualClass::ResiduallyP,
            witness: format!("residually p for p in {}", rp),
        }
    };

    Ok(ClassReport {
        input: (m, n),
        canonical: (cm, cn),
        d,
        ab: Abelianization { torsion: diff },
        rf,
        rp,
        rn,
        rtfn,
        lcs_length,
        gamma_omega,
        class_diffs,
    })
}

/// Symbolic subgroup chain between `G` and `R`, the finite residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub canonical: (i64, i64),
    pub d: u64,
    /// `|n - m|`.
    pub diff: u64,
    /// The most specific matching case, 1–5; 0 when the group is residually
    /// finite and the chain degenerates (`R` trivial).
    pub case: u8,
    /// Every case whose hypotheses hold, including `case`.
    pub also_holds: Vec<u8>,
    pub chains: Vec<String>,
    /// `(subquotient, isomorphism type)` pairs.
    pub quotients: Vec<(String, String)>,
    pub notes: Vec<String>,
}

pub fn prop5_chain(m: i64, n: i64) -> Result<ChainReport> {
    let (cm, cn) = canonical_form(m, n)?;
    let d = BsParams::new(cm, cn)?.d() as u64;
    let diff = abs_diff(cm, cn);
    let mut report = ChainReport {
        canonical: (cm, cn),
        d,
        diff,
        case: 0,
        also_holds: Vec::new(),
        chains: vec!["G >= G'A >= A >= R".into(), "G >= G' >= γ_ω G >= R".into()],
        quotients: Vec::new(),
        notes: vec!["A/R is abelian".into()],
    };
    if cm == 1 || cn.unsigned_abs() == cm as u64 {
        report.chains.clear();
        report.notes = vec!["residually finite: R is trivial and the chain degenerates".into()];
        return Ok(report);
    }
    let pp = d == 1 || is_prime_power(d);
    let shape = cn == cm + d as i64;
    let mut holds = Vec::new();
    if diff >= d && d > 1 {
        holds.push(1);
    }
    if diff > d && d == 1 {
        holds.push(2);
    }
    if diff == 1 && d == 1 {
        holds.push(3);
    }
    if pp {
        holds.push(4);
    }
    if shape && pp && d > 1 {
        holds.push(5);
    }
    report.case = [3, 5, 1, 2]
        .into_iter()
        .find(|c| holds.contains(c))
        .expect("some case applies when m > 1 and |n| != m");
    let q = &mut report.quotients;
    for &c in &holds {
        match c {
            1 => {
                q.push(("G/G'A".into(), format!("Z x Z_{}", d)));
                q.push(("G/A".into(), format!("Z * Z_{}", d)));
                q.push(("G/G'".into(), format!("Z x Z_{}", diff)));
                q.push(("G'A/A".into(), "F_inf".into()));
            }
            2 => {
                q.push(("G/A".into(), "Z".into()));
                q.push(("A/G'".into(), format!("Z_{}", diff)));
                report.notes.push("G' < A".into());
            }
            3 => report.notes.push("G' = A = γ_ω G".into()),
            4 => report.chains.push("G >= G'A >= A >= γ_ω G >= R".into()),
            5 => report.chains.push("G >= G' >= A >= γ_ω G >= R".into()),
            _ => unreachable!(),
        }
    }
    report.also_holds = holds;
    Ok(report)
}

/// `[t^k a^d t^-k, a]` for `|k| <= K`; these normally generate `R`.
pub fn r_generators(p: &BsParams, big_k: u32) -> Vec<Word> {
    let d = BigInt::from(p.d());
    let big_k = big_k as i64;
    (-big_k..=big_k)
        .map(|k| {
            let x = Word::t(k) * Word::a(d.clone()) * Word::t(-k);
            x.inverse() * Word::a(-1) * x * Word::a(1)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub d: u64,
    pub max_k: u32,
    pub trials: usize,
    pub nontrivial: usize,
    pub trivial: usize,
    /// Up to five failing basis words, for inspection.
    pub failures: Vec<String>,
}

/// Random reduced words in `[t^k, a^s]`, `0 < |k| <= K`, `0 < s < d`, checked to
/// stay nontrivial in `Z * Z_d`.
pub fn free_subgroup_probe(p: &BsParams, big_k: u32, trials: usize, seed: u64) -> Result<ProbeReport> {
    let d = p.d() as u64;
    if d < 2 {
        return Err(Error::Precondition(format!("{} has d = 1; the probe needs d >= 2", p)));
    }
    let mut rng = SampleRng::seed_from_u64(seed);
    let mut report = ProbeReport {
        d,
        max_k: big_k,
        trials,
        nontrivial: 0,
        trivial: 0,
        failures: Vec::new(),
    };
    for _ in 0..trials {
        let bw = random_basis_word(&mut rng, d, big_k.max(1) as i64, 6);
        if fp_normalize(d, &bw.lift())?.is_identity() {
            report.trivial += 1;
            if report.failures.len() < 5 {
                report.failures.push(bw.to_string());
            }
        } else {
            report.nontrivial += 1;
        }
    }
    Ok(report)
}

/// One CSV row of a parameter sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub m: i64,
    pub n: i64,
    pub canonical_m: i64,
    pub canonical_n: i64,
    pub ab: String,
    pub rf: bool,
    pub rp_primes: String,
    pub rn: bool,
    pub rtfn: bool,
    pub lcs_length: String,
    pub gamma_omega: String,
    pub prop5_case: u8,
}

pub fn sweep_row(m: i64, n: i64) -> Result<SweepRow> {
    let r = classify(m, n)?;
    let c = prop5_chain(m, n)?;
    Ok(SweepRow {
        m,
        n,
        canonical_m: r.canonical.0,
        canonical_n: r.canonical.1,
        ab: r.ab.to_string(),
        rf: r.rf,
        rp_primes: r.rp.to_string(),
        rn: r.rn,
        rtfn: r.rtfn,
        lcs_length: r.lcs_length.to_string(),
        gamma_omega: r.gamma_omega.to_string(),
        prop5_case: c.case,
    })
}

/// Rows for `1 <= m <= m_max`, `-n_max <= n <= n_max`, `n != 0`.
pub fn sweep(m_max: i64, n_max: i64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for n in -n_max..=n_max {
            if n != 0 {
                rows.push(sweep_row(m, n)?);
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::britton::Britton;
    use crate::freeprod::{BasisWord, FreeProdWord};
    use crate::words::parse_word;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(3, 2).unwrap(), (2, 3));
        assert_eq!(canonical_form(-2, -3).unwrap(), (2, 3));
        assert_eq!(canonical_form(1, 1).unwrap(), (1, 1));
        assert_eq!(canonical_form(-3, 2).unwrap(), (2, -3));
        assert_eq!(canonical_form(4, -4).unwrap(), (4, -4));
        assert!(canonical_form(0, 2).is_err());
    }

    #[test]
    fn classify_examples() {
        let r = classify(1, 2).unwrap();
        assert!(r.rf && !r.rn);
        assert_eq!(r.lcs_length, LcsLength::Two);
        assert_eq!(r.gamma_omega, GammaOmega::EqualsNormalClosure(1));

        let r = classify(6, 6).unwrap();
        assert!(r.rf && !r.rn);
        assert_eq!(r.class_diffs.class, ResidualClass::FiniteNotNilpotent);

        let r = classify(3, -3).unwrap();
        assert!(r.rn && r.rp.is_empty());
        assert_eq!(r.class_diffs.class, ResidualClass::NilpotentNotP);

        assert_eq!(classify(2, -2).unwrap().rp, PrimeSet::Finite(vec![2]));
        assert_eq!(classify(4, 6).unwrap().gamma_omega, GammaOmega::EqualsNormalClosure(2));
        assert_eq!(
            classify(6, 12).unwrap().gamma_omega,
            GammaOmega::StrictlyContainsNormalClosure(6)
        );
        assert_eq!(classify(1, 1).unwrap().rp, PrimeSet::All);
        assert!(classify(1, 1).unwrap().rtfn);
        assert_eq!(classify(1, 7).unwrap().rp, PrimeSet::Finite(vec![2, 3]));
        assert_eq!(classify(1, -3).unwrap().lcs_length, LcsLength::Omega);
        assert_eq!(classify(2, 3).unwrap().lcs_length, LcsLength::Two);
        assert_eq!(classify(2, 5).unwrap().lcs_length, LcsLength::Unknown);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(classify(6, 6).unwrap()).unwrap();
        assert_eq!(v["rn"], false);
        assert_eq!(v["lcs_length"], "unknown");
        let v = serde_json::to_value(classify(2, 4).unwrap()).unwrap();
        assert_eq!(v["gamma_omega"]["kind"], "EqualsNormalClosure");
        assert_eq!(v["gamma_omega"]["d"], 2);
        assert_eq!(serde_json::to_value(classify(1, 1).unwrap()).unwrap()["rp"], "all");
    }

    #[test]
    fn grid_invariants() {
        for m in 1..=12 {
            for n in -12..=12i64 {
                if n == 0 {
                    continue;
                }
                let r = classify(m, n).unwrap();
                if !r.rp.is_empty() {
                    assert!(r.rn, "({m},{n})");
                }
                if r.rn {
                    assert!(r.rf, "({m},{n})");
                }
                assert_eq!(r.gamma_omega == GammaOmega::Trivial, r.rn, "({m},{n})");
                for (x, y) in [(n, m), (-m, -n), (-n, -m)] {
                    let s = classify(x, y).unwrap();
                    assert_eq!((s.canonical, s.rf, s.rn, &s.rp), (r.canonical, r.rf, r.rn, &r.rp));
                }
            }
        }
    }

    #[test]
    fn abelianization_matches_engine() {
        for (m, n) in [(2, 5), (3, -3), (1, 2), (4, 4), (2, 7)] {
            let r = classify(m, n).unwrap();
            let p = BsParams::new(r.canonical.0, r.canonical.1).unwrap();
            let img = Britton::new(p).abelianize(&Word::a(1));
            assert_eq!(img.modulus, BigInt::from(r.ab.torsion), "({m},{n})");
        }
    }

    #[test]
    fn chain_examples() {
        let c = prop5_chain(2, 6).unwrap();
        assert_eq!(c.case, 1);
        assert!(c.quotients.contains(&("G'A/A".to_string(), "F_inf".to_string())));
        let c = prop5_chain(2, 5).unwrap();
        assert_eq!(c.case, 2);
        assert!(c.quotients.contains(&("A/G'".to_string(), "Z_3".to_string())));
        let c = prop5_chain(2, 3).unwrap();
        assert_eq!(c.case, 3);
        assert!(c.notes.iter().any(|s| s == "G' = A = γ_ω G"));
        let c = prop5_chain(2, 4).unwrap();
        assert_eq!(c.case, 5);
        assert_eq!(c.also_holds, vec![1, 4, 5]);
        assert_eq!(prop5_chain(6, 12).unwrap().case, 1);
        assert_eq!(prop5_chain(1, 5).unwrap().case, 0);
        assert_eq!(prop5_chain(3, 3).unwrap().case, 0);
    }

    #[test]
    fn r_generator_examples() {
        let p = BsParams::new(2, 4).unwrap();
        let g = r_generators(&p, 0);
        assert_eq!(g.len(), 1);
        assert!(g[0].is_identity());
        let g = r_generators(&p, 1);
        assert!(g.contains(&parse_word("t a^-2 t^-1 a^-1 t a^2 t^-1 a").unwrap()));
        assert_eq!(r_generators(&p, 2).len(), 5);
    }

    #[test]
    fn probe() {
        let p = BsParams::new(3, 6).unwrap();
        let r = free_subgroup_probe(&p, 4, 100, 1).unwrap();
        assert_eq!((r.nontrivial, r.trivial), (100, 0));
        assert!(free_subgroup_probe(&BsParams::new(2, 3).unwrap(), 2, 10, 1).is_err());
        let mut bw = BasisWord::identity(2);
        bw.push(BigInt::from(1), 1, 1);
        bw.push(BigInt::from(2), 1, 1);
        let img: FreeProdWord = fp_normalize(2, &bw.lift()).unwrap();
        assert!(!img.is_identity());
    }
}
