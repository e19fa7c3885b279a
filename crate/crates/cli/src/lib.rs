//! The `bs` command line: one subcommand per computation in `bs-core`.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use bs_core::affine::{canonical_word, gamma_quot_image, lcs_weight, to_affine_with};
use bs_core::britton::{Britton, BsParams};
use bs_core::classify::{classify, free_subgroup_probe, prop5_chain, r_generators, sweep};
use bs_core::finquot::{
    build_semidirect, build_wreath, fq_gamma_series, Budget, QuotientSearch, HARD_ORDER_CAP,
};
use bs_core::witness::{gamma_membership_witness, lemma2_variant, omega_stability_check};
use bs_core::words::{parse_word_with, Word};
use bs_core::{Error, Limits, DEFAULT_MAX_BITS};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "bs",
    version,
    about = "Exact computations in Baumslag-Solitar groups BS(m,n) = <a, t | t^-1 a^m t = a^n>",
    after_help = "Words use a, t, A = a^-1, T = t^-1, powers x^k, brackets [x, y], conjugates x^y."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV (sweep only).
    #[arg(long, global = true)]
    csv: bool,
    /// Largest exponent size in bits before a computation is refused.
    #[arg(long, global = true, env = "BS_MAX_BITS")]
    max_bits: Option<u64>,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Group {
    #[arg(short, allow_negative_numbers = true)]
    m: i64,
    #[arg(short, allow_negative_numbers = true)]
    n: i64,
}

impl Group {
    fn params(&self) -> Result<BsParams, Error> {
        BsParams::new(self.m, self.n)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Britton normal form of a word.
    Normalize {
        #[command(flatten)]
        g: Group,
        word: String,
    },
    /// Decide whether two words are equal.
    Eq {
        #[command(flatten)]
        g: Group,
        u: String,
        v: String,
    },
    /// Lower-central-series weight in BS(1,n).
    Weight {
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        word: String,
    },
    /// Image in γ_i/γ_(i+1) ≅ Z_|n-1| for BS(1,n).
    QuotImage {
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        #[arg(short)]
        i: u64,
        word: String,
    },
    /// Residual properties and lower-central-series shape.
    Classify {
        #[command(flatten)]
        g: Group,
    },
    /// Subgroup chain between G and its finite residual R.
    Chain {
        #[command(flatten)]
        g: Group,
    },
    /// Commutator witnesses for γ-membership.
    Witness {
        #[command(subcommand)]
        kind: WitnessCmd,
    },
    /// Normal generators [t^k a^d t^-k, a] of R for |k| <= K.
    Rgen {
        #[command(flatten)]
        g: Group,
        #[arg(short = 'K', default_value_t = 2)]
        big_k: u32,
    },
    /// Random words in the basis [t^k, a^s] checked nontrivial in Z * Z_d.
    FsubProbe {
        #[command(flatten)]
        g: Group,
        #[arg(short = 'K', default_value_t = 4)]
        big_k: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Finite p-group quotients.
    Oracle {
        #[command(subcommand)]
        kind: OracleCmd,
    },
    /// Classification table over 1 <= m <= M, -N <= n <= N.
    Sweep {
        #[arg(short, default_value_t = 12)]
        m: i64,
        #[arg(short, default_value_t = 12)]
        n: i64,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    /// W_i = [W_(i-1)^m, t] with value a^((n-m)^i).
    Lemma2 {
        #[command(flatten)]
        g: Group,
        #[arg(short, default_value_t = 1)]
        i: u32,
        /// Also evaluate the recursion with inner exponent n.
        #[arg(long)]
        compare: bool,
    },
    /// Expression of depth s-1 equal to a^d when n = m + d.
    Member {
        #[command(flatten)]
        g: Group,
        #[arg(short, default_value_t = 2)]
        s: u32,
        /// Target word (default a^d).
        target: Option<String>,
    },
    /// a^d = [a^(kd), t] on the normal generator of γ_ω.
    Omega {
        #[command(flatten)]
        g: Group,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum QuotKindArg {
    Semidirect,
    Wreath,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Build a quotient and print its lower central series.
    Build {
        #[command(flatten)]
        g: Group,
        #[arg(short)]
        p: u64,
        /// Exponent of the a-factor (e for the wreath kind).
        #[arg(short)]
        k: u32,
        #[arg(short)]
        j: u32,
        #[arg(long, value_enum, default_value_t = QuotKindArg::Semidirect)]
        kind: QuotKindArg,
    },
    /// Search the budgeted family for a proof that WORD is not in γ_i.
    Certify {
        #[command(flatten)]
        g: Group,
        #[arg(short)]
        i: u32,
        word: String,
        #[arg(long, default_value_t = Budget::default().max_k, value_parser = clap::value_parser!(u32).range(1..))]
        max_k: u32,
        #[arg(long, default_value_t = Budget::default().max_j, value_parser = clap::value_parser!(u32).range(1..))]
        max_j: u32,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

struct Ctx {
    json: bool,
    csv: bool,
    limits: Limits,
    seed: u64,
}

impl Ctx {
    fn word(&self, text: &str) -> Result<Word, Failure> {
        Ok(parse_word_with(text, &self.limits)?)
    }

    fn engine(&self, g: &Group) -> Result<Britton, Failure> {
        Ok(Britton::with_limits(g.params()?, self.limits))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Runs with process stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let ctx = Ctx {
        json: cli.json,
        csv: cli.csv,
        limits: Limits::with_max_bits(cli.max_bits.unwrap_or(DEFAULT_MAX_BITS)),
        seed: cli.seed,
    };
    match execute(&cli.cmd, &ctx) {
        Ok(text) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write output: {e}");
                    1
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(cmd: &Cmd, ctx: &Ctx) -> Result<String, Failure> {
    match cmd {
        Cmd::Normalize { g, word } => {
            let e = ctx.engine(g)?;
            let w = ctx.word(word)?;
            let nf = e.normalize(&w)?;
            if ctx.json {
                Ok(to_json(&json!({
                    "params": e.params().to_string(),
                    "input": w.to_string(),
                    "normal_form": nf.to_string(),
                    "t_length": nf.t_length(),
                    "abelianization": e.abelianize(&w).to_string(),
                })))
            } else {
                Ok(format!("{nf}\n"))
            }
        }
        Cmd::Eq { g, u, v } => {
            let e = ctx.engine(g)?;
            let equal = e.equal(&ctx.word(u)?, &ctx.word(v)?)?;
            Ok(if ctx.json {
                to_json(&json!({ "params": e.params().to_string(), "equal": equal }))
            } else {
                format!("{equal}\n")
            })
        }
        Cmd::Weight { n, word } => {
            let w = ctx.word(word)?;
            let g = to_affine_with(*n, &w, &ctx.limits)?;
            let weight = lcs_weight(*n, &g)?;
            Ok(if ctx.json {
                to_json(&json!({
                    "n": n,
                    "word": w.to_string(),
                    "affine": g.to_string(),
                    "canonical_word": canonical_word(*n, &g).to_string(),
                    "weight": weight.to_string(),
                }))
            } else {
                format!("{weight}\n")
            })
        }
        Cmd::QuotImage { n, i, word } => {
            let w = ctx.word(word)?;
            let g = to_affine_with(*n, &w, &ctx.limits)?;
            let weight = lcs_weight(*n, &g)?;
            if weight < bs_core::affine::Weight::Finite(*i) {
                return Err(Failure::Domain(format!("{w} has weight {weight}, so it is not in γ_{i}")));
            }
            let r = gamma_quot_image(*n, *i, &g)?;
            let modulus = (*n as i128 - 1).unsigned_abs();
            Ok(if ctx.json {
                to_json(&json!({ "n": n, "i": i, "word": w.to_string(), "residue": r.to_string(), "modulus": modulus }))
            } else {
                format!("{r} (mod {modulus})\n")
            })
        }
        Cmd::Classify { g } => {
            let r = classify(g.m, g.n)?;
            if ctx.json {
                return Ok(to_json(&r));
            }
            let mut s = String::new();
            let rp = if r.rp.is_empty() { "none".to_string() } else { r.rp.to_string() };
            let _ = writeln!(s, "BS({}, {}), canonical BS({}, {})", g.m, g.n, r.canonical.0, r.canonical.1);
            let _ = writeln!(s, "abelianization:                    {}", r.ab);
            let _ = writeln!(s, "residually finite:                 {}", r.rf);
            let _ = writeln!(s, "residually p for p in:             {}", rp);
            let _ = writeln!(s, "residually nilpotent:              {}", r.rn);
            let _ = writeln!(s, "residually torsion-free nilpotent: {}", r.rtfn);
            let _ = writeln!(s, "lower central series length:       {}", r.lcs_length);
            let _ = writeln!(s, "gamma_omega:                       {}", r.gamma_omega);
            let class = serde_json::to_value(r.class_diffs.class).expect("serializable");
            let _ = writeln!(s, "class:                             {} ({})", class.as_str().unwrap_or("?"), r.class_diffs.witness);
            Ok(s)
        }
        Cmd::Chain { g } => {
            let c = prop5_chain(g.m, g.n)?;
            if ctx.json {
                return Ok(to_json(&c));
            }
            let mut s = String::new();
            let _ = writeln!(s, "BS({}, {}): d = {}, |n-m| = {}, case {} (holding: {:?})", c.canonical.0, c.canonical.1, c.d, c.diff, c.case, c.also_holds);
            for chain in &c.chains {
                let _ = writeln!(s, "  {chain}");
            }
            for (sub, iso) in &c.quotients {
                let _ = writeln!(s, "  {sub} ≅ {iso}");
            }
            for note in &c.notes {
                let _ = writeln!(s, "  {note}");
            }
            Ok(s)
        }
        Cmd::Witness { kind } => witness(kind, ctx),
        Cmd::Rgen { g, big_k } => {
            let words = r_generators(&g.params()?, *big_k);
            let texts: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            Ok(if ctx.json {
                to_json(&texts)
            } else {
                texts.join("\n") + "\n"
            })
        }
        Cmd::FsubProbe { g, big_k, trials } => {
            let r = free_subgroup_probe(&g.params()?, *big_k, *trials, ctx.seed)?;
            Ok(if ctx.json {
                to_json(&r)
            } else {
                format!("d = {}, |k| <= {}: {}/{} nontrivial in Z * Z_{}\n", r.d, r.max_k, r.nontrivial, r.trials, r.d)
            })
        }
        Cmd::Oracle { kind } => oracle(kind, ctx),
        Cmd::Sweep { m, n } => {
            let rows = sweep(*m, *n)?;
            if ctx.json && !ctx.csv {
                return Ok(to_json(&rows));
            }
            let mut wtr = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                wtr.serialize(row).map_err(|e| Failure::Domain(e.to_string()))?;
            }
            let bytes = wtr.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
    }
}

fn witness(kind: &WitnessCmd, ctx: &Ctx) -> Result<String, Failure> {
    match kind {
        WitnessCmd::Lemma2 { g, i, compare } => {
            let p = g.params()?;
            let w = bs_core::witness::lemma2_witness_with(&p, *i, &ctx.limits)?;
            let variant = if *compare { Some(lemma2_variant(&p, *i, p.n())?) } else { None };
            if ctx.json {
                return Ok(to_json(&json!({ "witness": w, "inner_n_variant": variant })));
            }
            let mut s = format!("{} = {}  (in γ_{}, verified: {})\n", w.expr, w.target, w.depth, w.verified);
            if let Some(v) = variant {
                let _ = writeln!(s, "inner exponent n: {} = {} (expected {}): {}", v.expr, v.value, v.expected, if v.matches { "matches" } else { "differs" });
            }
            Ok(s)
        }
        WitnessCmd::Member { g, s, target } => {
            let p = g.params()?;
            let target = match target {
                Some(t) => ctx.word(t)?,
                None => Word::a(p.d()),
            };
            let w = gamma_membership_witness(&p, &target, *s)?;
            Ok(if ctx.json {
                to_json(&w)
            } else {
                format!("{} = {}  (in γ_{}, verified: {})\n", w.expr, w.target, w.depth, w.verified)
            })
        }
        WitnessCmd::Omega { g } => {
            let r = omega_stability_check(&g.params()?)?;
            Ok(if ctx.json {
                to_json(&r)
            } else {
                format!("{}: {} (verified: {}); {}\n", r.params, r.identity, r.verified, r.note)
            })
        }
    }
}

fn oracle(kind: &OracleCmd, ctx: &Ctx) -> Result<String, Failure> {
    match kind {
        OracleCmd::Build { g, p, k, j, kind } => {
            let params = g.params()?;
            let q = match kind {
                QuotKindArg::Semidirect => build_semidirect(*p, *k, *j, &params)?,
                QuotKindArg::Wreath => {
                    let q = build_wreath(*p, *k, *j)?;
                    if !q.check_relation(&params) {
                        return Err(Failure::Domain(format!("{q} is not a quotient of {params}: a^m, a^n must vanish mod {p}^{k}")));
                    }
                    q
                }
            };
            let chain = fq_gamma_series(&q)?;
            Ok(if ctx.json {
                to_json(&json!({
                    "quotient": q.to_string(),
                    "order": q.order(),
                    "gamma_sizes": chain.sizes(),
                    "class": chain.class(),
                }))
            } else {
                format!("{q}: order {}, γ sizes {:?}\n", q.order(), chain.sizes())
            })
        }
        OracleCmd::Certify { g, i, word, max_k, max_j } => {
            let budget = Budget {
                max_k: *max_k,
                max_j: *max_j,
                max_order: HARD_ORDER_CAP,
                ..Budget::default()
            };
            let w = ctx.word(word)?;
            let mut search = QuotientSearch::new(g.params()?, &budget);
            let cert = search.certify(&w, *i);
            if ctx.json {
                return Ok(to_json(&json!({ "certificate": cert, "conclusive": cert.is_some() })));
            }
            Ok(match cert {
                Some(c) => format!(
                    "{} is not in γ_{}: its image {} in {} lies outside γ_{} (γ sizes {:?})\n",
                    c.word, c.i, c.image, c.quotient, c.i, c.gamma_sizes
                ),
                None => format!("inconclusive: no quotient among {} candidates separates {w} from γ_{i}\n", search.len()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
