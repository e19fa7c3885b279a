//! Seeded random generation of words and expressions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::words::{CommExpr, Gen, Word};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random word of at most `max_len` syllables with exponents in
/// `[-max_exp, max_exp] \ {0}` (reduced afterwards, so it may be shorter).
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize, max_exp: i64) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut w = Word::identity();
    for _ in 0..len {
        let gen = *[Gen::A, Gen::T].choose(rng).expect("nonempty");
        let mut e = rng.gen_range(1..=max_exp.max(1));
        if rng.gen_bool(0.5) {
            e = -e;
        }
        w.push(gen, e.into());
    }
    w
}

/// A random expression tree of bounded depth.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> CommExpr {
    if depth == 0 {
        return if rng.gen_bool(0.5) { CommExpr::a() } else { CommExpr::t() };
    }
    match rng.gen_range(0..5) {
        0 => CommExpr::Gen(if rng.gen_bool(0.5) { Gen::A } else { Gen::T }),
        1 => random_expr(rng, depth - 1).pow(rng.gen_range(-3i64..=3)),
        2 => {
            let k = rng.gen_range(0..4);
            CommExpr::Product((0..k).map(|_| random_expr(rng, depth - 1)).collect())
        }
        3 => CommExpr::comm(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => CommExpr::conj(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
    }
}
