//! Second-order statistics of Gaussian elliptic random matrices.
//!
//! The crate is `no_std` (it needs `alloc`) and contains everything that is
//! pure computation:
//!
//! * [`perm`] and [`annulus`]: pairings, cycle counts, disc and annular
//!   non-crossing predicates, and diagram counts.
//! * [`spoke_arc`]: the bijection between annular non-crossing pairings and
//!   spoke/arc configurations.
//! * [`poly`], [`words`], [`weights`]: exact polynomials in the ellipticity
//!   parameters, type/color words and diagram weights.
//! * [`limits`]: limiting moments and covariances, both as diagram sums and
//!   in closed form, plus the Fuss–Catalan machinery.
//! * [`wick`] and [`expansion`]: the exact finite-N Wick calculus, returned
//!   as Laurent expansions in `1/N`.
//! * [`sampler`]: Monte Carlo draws of elliptic matrices and covariance
//!   estimates.
//! * [`freeness`]: second-order freeness checks for independent colors.
//!
//! Permutations compose right to left: `(σμ)(t) = σ(μ(t))`. Positions are
//! 0-based in every API; the std companion crate converts to 1-based labels
//! at its IO boundary.

#![no_std]

extern crate alloc;

pub mod annulus;
pub mod combinatorics;
pub mod error;
pub mod expansion;
pub mod freeness;
pub mod limits;
pub mod perm;
pub mod poly;
pub mod sampler;
pub mod spoke_arc;
pub mod weights;
pub mod wick;
pub mod words;

pub use annulus::AnnularFrame;
pub use error::{Error, Result};
pub use expansion::NExpansion;
pub use perm::Pairing;
pub use poly::{Color, GammaPoly, Monomial};
pub use spoke_arc::SpokeArcConfig;
pub use words::{ColorWord, Ty, TypeWord, Word};

/// Trace-covariance channel of the underlying ensemble.
///
/// `Real` is the sum of the two leading real-ensemble contractions (all pairs
/// cross, and spokes straight with arcs cross).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Complex,
    Real,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Complex => "complex",
            Channel::Real => "real",
        }
    }
}
