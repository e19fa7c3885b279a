//! Free words and commutator expressions over the generators `a` and `t`.
//!
//! Conventions: `[x, y] = x^-1 y^-1 x y` and `x^y = y^-1 x y`.
//!
//! Expression grammar accepted by [`parse_expr`]:
//!
//! ```text
//! expr := term+
//! term := atom ("^" (int | atom))*
//! atom := "a" | "t" | "A" | "T" | "1" | "(" expr ")" | "[" expr "," expr "]"
//! int  := "-"? digit+
//! ```
//!
//! `A` and `T` abbreviate `a^-1` and `t^-1`; `1` is the identity. An exponent that
//! is itself an atom denotes right conjugation.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    T,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A => f.write_str("a"),
            Gen::T => f.write_str("t"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: BigInt,
}

/// A freely reduced word: nonzero exponents, no two adjacent syllables on the
/// same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Exponent sums of a word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpSums {
    pub sigma_a: BigInt,
    pub sigma_t: BigInt,
}

impl std::ops::Add for ExpSums {
    type Output = ExpSums;
    fn add(self, rhs: ExpSums) -> ExpSums {
        ExpSums {
            sigma_a: self.sigma_a + rhs.sigma_a,
            sigma_t: self.sigma_t + rhs.sigma_t,
        }
    }
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn gen_power(gen: Gen, exp: impl Into<BigInt>) -> Word {
        let mut w = Word::identity();
        w.push(gen, exp.into());
        w
    }

    pub fn a(exp: impl Into<BigInt>) -> Word {
        Word::gen_power(Gen::A, exp)
    }

    pub fn t(exp: impl Into<BigInt>) -> Word {
        Word::gen_power(Gen::T, exp)
    }

    /// Builds a word from arbitrary syllables, freely reducing on the way.
    pub fn from_syllables<I, E>(syllables: I) -> Word
    where
        I: IntoIterator<Item = (Gen, E)>,
        E: Into<BigInt>,
    {
        let mut w = Word::identity();
        for (gen, exp) in syllables {
            w.push(gen, exp.into());
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, `sum |exp|`.
    pub fn letter_len(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exp.abs()).sum()
    }

    /// Appends `gen^exp`, merging with the last syllable when possible.
    pub fn push(&mut self, gen: Gen, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { gen, exp });
    }

    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            self.push(s.gen, s.exp.clone());
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -&s.exp,
                })
                .collect(),
        }
    }

    pub fn exp_sums(&self) -> ExpSums {
        let mut sums = ExpSums::default();
        for s in &self.syllables {
            match s.gen {
                Gen::A => sums.sigma_a += &s.exp,
                Gen::T => sums.sigma_t += &s.exp,
            }
        }
        sums
    }

    /// `self^k` in the free group.
    ///
    /// The word is split as `u c u^-1` with `c` cyclically reduced; only `c` is
    /// repeated, and a one-syllable `c` is raised by scaling its exponent.
    pub fn pow(&self, k: &BigInt, limits: &Limits) -> Result<Word> {
        if k.is_zero() || self.is_identity() {
            return Ok(Word::identity());
        }
        let base = if k.is_negative() { self.inverse() } else { self.clone() };
        let k = k.abs();
        let (conj, core) = base.cyclic_split();
        let mut out = conj.clone();
        if core.len() == 1 {
            let s = &core.syllables[0];
            let exp = &s.exp * &k;
            limits.check_bits(&exp)?;
            out.push(s.gen, exp);
        } else {
            let reps = k
                .to_usize()
                .filter(|r| r.saturating_mul(core.len()) <= limits.max_syllables)
                .ok_or_else(|| {
                    Error::TooLong(format!(
                        "power {} of a {}-syllable cyclic word",
                        k,
                        core.len()
                    ))
                })?;
            for _ in 0..reps {
                out.append(&core);
            }
        }
        out.append(&conj.inverse());
        Ok(out)
    }

    /// Returns `(u, c)` with `self = u c u^-1` and `c` cyclically reduced.
    fn cyclic_split(&self) -> (Word, Word) {
        let mut s: Vec<Syllable> = self.syllables.clone();
        let mut prefix = Word::identity();
        loop {
            if s.len() < 2 {
                break;
            }
            let first = &s[0];
            let last = &s[s.len() - 1];
            if first.gen != last.gen {
                break;
            }
            let sum = &first.exp + &last.exp;
            if sum.is_zero() {
                let f = s.remove(0);
                s.pop();
                prefix.push(f.gen, f.exp);
            } else {
                // move the first syllable to the end and merge: x^p ... x^q ~ ... x^{p+q}
                let f = s.remove(0);
                let g = f.gen;
                prefix.push(g, f.exp.clone());
                let l = s.last_mut().expect("nonempty");
                l.exp += f.exp;
                break;
            }
        }
        (prefix, Word { syllables: s })
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut w = self.clone();
        w.append(rhs);
        w
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(mut self, rhs: Word) -> Word {
        self.append(&rhs);
        self
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_power(f, s.gen, &s.exp)?;
        }
        Ok(())
    }
}

pub(crate) fn write_power(f: &mut fmt::Formatter<'_>, gen: Gen, exp: &BigInt) -> fmt::Result {
    if exp.is_one() {
        write!(f, "{}", gen)
    } else {
        write!(f, "{}^{}", gen, exp)
    }
}

/// Free reduction of an arbitrary syllable sequence.
pub fn free_reduce<I, E>(syllables: I) -> Word
where
    I: IntoIterator<Item = (Gen, E)>,
    E: Into<BigInt>,
{
    Word::from_syllables(syllables)
}

pub fn exp_sums(w: &Word) -> ExpSums {
    w.exp_sums()
}

/// Commutator-expression tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommExpr {
    Gen(Gen),
    Power(Box<CommExpr>, BigInt),
    Product(Vec<CommExpr>),
    Commutator(Box<CommExpr>, Box<CommExpr>),
    /// `Conjugate(x, y) = y^-1 x y`.
    Conjugate(Box<CommExpr>, Box<CommExpr>),
}

impl CommExpr {
    pub fn a() -> CommExpr {
        CommExpr::Gen(Gen::A)
    }

    pub fn t() -> CommExpr {
        CommExpr::Gen(Gen::T)
    }

    pub fn identity() -> CommExpr {
        CommExpr::Product(Vec::new())
    }

    pub fn pow(self, k: impl Into<BigInt>) -> CommExpr {
        CommExpr::Power(Box::new(self), k.into())
    }

    pub fn comm(x: CommExpr, y: CommExpr) -> CommExpr {
        CommExpr::Commutator(Box::new(x), Box::new(y))
    }

    pub fn conj(x: CommExpr, y: CommExpr) -> CommExpr {
        CommExpr::Conjugate(Box::new(x), Box::new(y))
    }

    pub fn inverse(self) -> CommExpr {
        self.pow(-1)
    }

    /// Left-normed commutator `[x1, x2, ..., xk]`.
    pub fn left_normed(items: Vec<CommExpr>) -> CommExpr {
        let mut it = items.into_iter();
        let first = it.next().unwrap_or_else(CommExpr::identity);
        it.fold(first, CommExpr::comm)
    }

    /// Maximum nesting depth of commutator brackets.
    pub fn commutator_depth(&self) -> u32 {
        match self {
            CommExpr::Gen(_) => 0,
            CommExpr::Power(x, _) => x.commutator_depth(),
            CommExpr::Product(xs) => xs.iter().map(|x| x.commutator_depth()).max().unwrap_or(0),
            CommExpr::Commutator(x, y) => 1 + x.commutator_depth().max(y.commutator_depth()),
            CommExpr::Conjugate(x, y) => x.commutator_depth().max(y.commutator_depth()),
        }
    }

    /// A lower bound `c` such that the value provably lies in `γ_c`, read off
    /// the shape alone (`[γ_p, γ_q] ⊆ γ_{p+q}`). The identity yields `u32::MAX`.
    pub fn gamma_level(&self) -> u32 {
        match self {
            CommExpr::Gen(_) => 1,
            CommExpr::Power(x, k) => {
                if k.is_zero() {
                    u32::MAX
                } else {
                    x.gamma_level()
                }
            }
            CommExpr::Product(xs) => xs.iter().map(|x| x.gamma_level()).min().unwrap_or(u32::MAX),
            CommExpr::Commutator(x, y) => x.gamma_level().saturating_add(y.gamma_level()),
            CommExpr::Conjugate(x, _) => x.gamma_level(),
        }
    }

    /// Structural normalisation used for comparisons: nested products are
    /// spliced and one-element products unwrapped.
    pub fn flatten(&self) -> CommExpr {
        match self {
            CommExpr::Gen(g) => CommExpr::Gen(*g),
            CommExpr::Power(x, k) => CommExpr::Power(Box::new(x.flatten()), k.clone()),
            CommExpr::Commutator(x, y) => CommExpr::comm(x.flatten(), y.flatten()),
            CommExpr::Conjugate(x, y) => CommExpr::conj(x.flatten(), y.flatten()),
            CommExpr::Product(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    match x.flatten() {
                        CommExpr::Product(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                if out.len() == 1 {
                    out.pop().expect("one element")
                } else {
                    CommExpr::Product(out)
                }
            }
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommExpr::Gen(_) | CommExpr::Commutator(..) => write!(f, "{}", self),
            CommExpr::Product(xs) if xs.is_empty() => f.write_str("1"),
            _ => write!(f, "({})", self),
        }
    }
}

impl fmt::Display for CommExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommExpr::Gen(g) => write!(f, "{}", g),
            CommExpr::Power(x, k) => {
                x.fmt_atom(f)?;
                write!(f, "^{}", k)
            }
            CommExpr::Product(xs) => {
                if xs.is_empty() {
                    return f.write_str("1");
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match x {
                        CommExpr::Product(inner) if !inner.is_empty() => write!(f, "({})", x)?,
                        _ => write!(f, "{}", x)?,
                    }
                }
                Ok(())
            }
            CommExpr::Commutator(x, y) => write!(f, "[{}, {}]", x, y),
            CommExpr::Conjugate(x, y) => {
                x.fmt_atom(f)?;
                f.write_str("^")?;
                y.fmt_atom(f)
            }
        }
    }
}

/// Expands an expression into a freely reduced word.
pub fn eval_expr(e: &CommExpr, limits: &Limits) -> Result<Word> {
    let w = match e {
        CommExpr::Gen(g) => Word::gen_power(*g, 1),
        CommExpr::Power(x, k) => {
            if k.is_zero() {
                return Ok(Word::identity());
            }
            eval_expr(x, limits)?.pow(k, limits)?
        }
        CommExpr::Product(xs) => {
            let mut w = Word::identity();
            for x in xs {
                w.append(&eval_expr(x, limits)?);
                check_len(&w, limits)?;
            }
            w
        }
        CommExpr::Commutator(x, y) => {
            let x = eval_expr(x, limits)?;
            let y = eval_expr(y, limits)?;
            x.inverse() * y.inverse() * x * y
        }
        CommExpr::Conjugate(x, y) => {
            let x = eval_expr(x, limits)?;
            let y = eval_expr(y, limits)?;
            y.inverse() * x * y
        }
    };
    check_len(&w, limits)?;
    Ok(w)
}

fn check_len(w: &Word, limits: &Limits) -> Result<()> {
    if w.len() > limits.max_syllables {
        Err(Error::TooLong(format!("{} syllables", w.len())))
    } else {
        Ok(())
    }
}

pub fn parse_expr(text: &str) -> Result<CommExpr> {
    parse_expr_with(text, &Limits::default())
}

pub fn parse_expr_with(text: &str, limits: &Limits) -> Result<CommExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        limits,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected character '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

/// Parses and expands in one step.
pub fn parse_word(text: &str) -> Result<Word> {
    parse_word_with(text, &Limits::default())
}

pub fn parse_word_with(text: &str, limits: &Limits) -> Result<Word> {
    eval_expr(&parse_expr_with(text, limits)?, limits)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    limits: &'a Limits,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn starts_atom(c: u8) -> bool {
        matches!(c, b'a' | b't' | b'A' | b'T' | b'1' | b'(' | b'[')
    }

    fn expr(&mut self) -> Result<CommExpr> {
        let mut terms = Vec::new();
        while let Some(c) = self.peek() {
            if !Self::starts_atom(c) {
                break;
            }
            terms.push(self.term()?);
        }
        match terms.len() {
            0 => Err(self.err("expected a term")),
            1 => Ok(terms.pop().expect("one term")),
            _ => Ok(CommExpr::Product(terms)),
        }
    }

    fn term(&mut self) -> Result<CommExpr> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c == b'-' || c.is_ascii_digit() => {
                    let k = self.int()?;
                    base = CommExpr::Power(Box::new(base), k);
                }
                Some(c) if Self::starts_atom(c) => {
                    let y = self.atom()?;
                    base = CommExpr::conj(base, y);
                }
                _ => return Err(self.err("expected an exponent or a conjugating atom after '^'")),
            }
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: BigInt = text
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: format!("bad integer '{}'", text),
            })?;
        if value.bits() > self.limits.max_bits {
            return Err(Error::Parse {
                pos: start,
                msg: format!(
                    "exponent literal has {} bits, above the cap of {}",
                    value.bits(),
                    self.limits.max_bits
                ),
            });
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<CommExpr> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match c {
            b'a' => Ok(CommExpr::a()),
            b't' => Ok(CommExpr::t()),
            b'A' => Ok(CommExpr::a().pow(-1)),
            b'T' => Ok(CommExpr::t().pow(-1)),
            b'1' => Ok(CommExpr::identity()),
            b'(' => {
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            b'[' => {
                let x = self.expr()?;
                self.expect(b',')?;
                let y = self.expr()?;
                self.expect(b']')?;
                Ok(CommExpr::comm(x, y))
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("unexpected character '{}'", other as char)))
            }
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", want as char)))
        }
    }
}
