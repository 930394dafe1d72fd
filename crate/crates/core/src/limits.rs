//! Limiting moments and covariances.
//!
//! Every quantity is available as a diagram sum over non-crossing pairings
//! and, for the three standard families, in closed form. The two routes are
//! computed independently so they can be compared.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::annulus::{enumerate_nc2_annular, AnnularFrame};
use crate::combinatorics::{binomial, binomial_half, compositions};
pub use crate::combinatorics::{catalan, fuss_catalan, fuss_catalan_series};
use crate::error::{invalid, Result};
use crate::poly::{GammaPoly, Monomial};
use crate::weights::{arc_weight, diagram_weight};
use crate::words::{Ty, TypeWord, Word};
use crate::Channel;

/// Limiting normalized-trace moment `lim E tr(w)`: the sum over
/// color-respecting non-crossing pairings of `Π γ_c` over same-type pairs.
/// Zero for odd length; 1 for the empty word.
pub fn moment_limit(word: &Word) -> GammaPoly {
    let n = word.len();
    if !n.is_multiple_of(2) {
        return GammaPoly::zero();
    }
    // m[i][j]: weight of the interval i..j (half-open), even length only
    let mut m: Vec<Vec<GammaPoly>> = vec![vec![GammaPoly::zero(); n + 1]; n + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = GammaPoly::one();
    }
    for len in (2..=n).step_by(2) {
        for i in 0..=n - len {
            let j = i + len;
            let (ti, ci) = word.letter(i);
            let mut acc = GammaPoly::zero();
            for k in (i + 1..j).step_by(2) {
                let (tk, ck) = word.letter(k);
                if ci != ck {
                    continue;
                }
                let inner = &m[i + 1][k];
                let outer = &m[k + 1][j];
                if inner.is_zero() || outer.is_zero() {
                    continue;
                }
                let mut t = inner * outer;
                if ti == tk {
                    t = t.mul_monomial(&Monomial::var(ci, 1));
                }
                acc += &t;
            }
            m[i][j] = acc;
        }
    }
    m[0][n].clone()
}

/// Two trace words on the inner and outer circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordPair {
    pub inner: Word,
    pub outer: Word,
}

impl WordPair {
    pub fn new(inner: Word, outer: Word) -> Result<Self> {
        if inner.is_empty() || outer.is_empty() {
            return Err(invalid("both trace words must be nonempty"));
        }
        Ok(WordPair { inner, outer })
    }

    pub fn frame(&self) -> AnnularFrame {
        AnnularFrame::new(self.inner.len(), self.outer.len()).expect("words are nonempty")
    }

    /// `inner ++ outer`, the letter labelling of the annulus.
    pub fn joined(&self) -> Word {
        self.inner.concat(&self.outer)
    }

    pub fn with_outer_transposed(&self) -> WordPair {
        WordPair {
            inner: self.inner.clone(),
            outer: self.outer.transpose(),
        }
    }

    pub fn letters(&self) -> usize {
        self.inner.len() + self.outer.len()
    }
}

/// Limiting covariance `lim Cov(Tr w₁, Tr w₂)` as a sum over
/// color-respecting diagrams of `NC₂(p, q)`.
pub fn cov_limit_semiclosed(wp: &WordPair, channel: Channel) -> GammaPoly {
    let frame = wp.frame();
    let word = wp.joined();
    let mut acc = GammaPoly::zero();
    for pi in enumerate_nc2_annular(frame) {
        acc += diagram_weight(&pi, &word, frame, channel).expect("sizes agree by construction");
    }
    acc
}

/// The three single-color families with closed-form covariances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Tr X^p` against `Tr X^q`.
    PurePure,
    /// `Tr X^p` against `Tr (X*)^q`.
    PureAdjoint,
    /// `Tr (XX*)^p` against `Tr (XX*)^q`; circles carry `2p` and `2q`
    /// letters.
    Alternating,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PurePure => "pure",
            Family::PureAdjoint => "pure-adjoint",
            Family::Alternating => "alternating",
        }
    }

    /// The word pair the family describes, single color.
    pub fn word_pair(self, p: usize, q: usize) -> Result<WordPair> {
        let (inner, outer) = match self {
            Family::PurePure => (TypeWord::pure(p), TypeWord::pure(q)),
            Family::PureAdjoint => (TypeWord::pure(p), TypeWord(vec![Ty::Star; q])),
            Family::Alternating => (TypeWord::alternating(p), TypeWord::alternating(q)),
        };
        WordPair::new(Word::single(inner), Word::single(outer))
            .map_err(|_| invalid(format!("{} family needs p, q >= 1", self.name())))
    }
}

/// Closed-form limiting covariance for a standard family.
pub fn cov_limit_closed(family: Family, p: usize, q: usize, channel: Channel) -> GammaPoly {
    let (p64, q64) = (p as u64, q as u64);
    let mut acc = GammaPoly::zero();
    for a in 1..=p.min(q) {
        let a64 = a as u64;
        let term = match family {
            Family::PurePure | Family::PureAdjoint => {
                let c = binomial_half(p64, p as i64 - a as i64)
                    * binomial_half(q64, q as i64 - a as i64);
                if c == 0 {
                    continue;
                }
                let half = ((p + q) / 2) as u32;
                let a32 = a as u32;
                let poly = match (family, channel) {
                    (Family::PurePure, Channel::Complex) => GammaPoly::gamma(half),
                    (Family::PureAdjoint, Channel::Complex) => GammaPoly::gamma(half - a32),
                    (_, Channel::Real) => {
                        GammaPoly::gamma(half - a32) * (GammaPoly::gamma(a32) + GammaPoly::one())
                    }
                    _ => unreachable!(),
                };
                poly.scale(a as i64 * c as i64)
            }
            Family::Alternating => {
                let c = binomial(2 * p64, p64 - a64) * binomial(2 * q64, q64 - a64);
                let mult = match channel {
                    Channel::Complex => 1,
                    Channel::Real => 2,
                };
                (GammaPoly::gamma(2 * a as u32) + GammaPoly::one()).scale(mult * a as i64 * c as i64)
            }
        };
        acc += &term;
    }
    acc
}

/// Arc-word shape used by [`arc_compression`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcFamily {
    Pure,
    Alternating,
}

impl ArcFamily {
    fn arc_word(self, len: usize) -> TypeWord {
        match self {
            ArcFamily::Pure => TypeWord::pure(len),
            ArcFamily::Alternating => TypeWord::alternating(len / 2),
        }
    }
}

/// Closed form of the summed arc weights over `a` arcs with `2n` letters in
/// total: `γⁿ FC(a, n)` for pure arcs, `FC(a, n)` for alternating ones.
pub fn arc_compression(a: usize, n: usize, family: ArcFamily) -> GammaPoly {
    let fc = GammaPoly::constant(fuss_catalan(a as u64, n as u64) as i64);
    match family {
        ArcFamily::Pure => fc * GammaPoly::gamma(n as u32),
        ArcFamily::Alternating => fc,
    }
}

/// The same quantity as [`arc_compression`], by summing `Π F(arc)` over
/// every composition of `2n` into `a` even arc lengths.
pub fn arc_composition_sum(a: usize, n: usize, family: ArcFamily) -> GammaPoly {
    let weights: Vec<GammaPoly> = (0..=2 * n)
        .map(|len| {
            if len % 2 == 0 {
                arc_weight(&family.arc_word(len)).expect("even length")
            } else {
                GammaPoly::zero()
            }
        })
        .collect();
    compositions(2 * n, a, 2)
        .iter()
        .map(|lens| {
            lens.iter()
                .fold(GammaPoly::one(), |acc, &l| &acc * &weights[l])
        })
        .sum()
}
