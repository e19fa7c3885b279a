//! Exact computation in the Baumslag–Solitar groups
//! `BS(m,n) = < a, t | t^-1 a^m t = a^n >`.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: free words and commutator expressions over `{a, t}`.
//! - [`britton`]: pinch-free HNN normal forms, the word problem and the abelianization.
//! - [`affine`]: the faithful affine model of `BS(1,n)` over `Z[1/n]` and exact
//!   lower-central-series weights.
//! - [`freeprod`]: arithmetic in `Z * Z_d` and its free commutator basis `[t^k, a^l]`.
//! - [`finquot`]: finite p-group quotients and certificates of non-membership in `γ_i`.
//! - [`classify`]: residual properties and subgroup-chain reports for every `(m, n)`.
//! - [`witness`]: explicit commutator expressions certifying `γ_i` membership.
//!
//! All values are immutable once built and every operation is deterministic.

pub mod affine;
mod arith;
pub mod britton;
pub mod classify;
mod error;
pub mod finquot;
pub mod freeprod;
pub mod sample;
pub mod witness;
pub mod words;

pub use error::{Error, Result};

/// Default cap on the bit length of any exponent produced while normalizing.
pub const DEFAULT_MAX_BITS: u64 = 1_000_000;

/// Resource limits shared by the rewriting engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible exponent, in bits.
    pub max_bits: u64,
    /// Largest admissible number of syllables in an expanded word.
    pub max_syllables: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bits: DEFAULT_MAX_BITS,
            max_syllables: 1 << 24,
        }
    }
}

impl Limits {
    pub fn with_max_bits(max_bits: u64) -> Self {
        Limits {
            max_bits,
            ..Limits::default()
        }
    }

    pub(crate) fn check_bits(&self, value: &num_bigint::BigInt) -> Result<()> {
        let bits = value.bits();
        if bits > self.max_bits {
            Err(Error::BitCap {
                bits,
                cap: self.max_bits,
            })
        } else {
            Ok(())
        }
    }
}
