//! Exact finite-N Gaussian calculus for products of traces.
//!
//! Letter `x` of a trace word stands for the entry `M[i_x, i_{ρ(x)}]` of
//! `X/√N` (or of its adjoint), where `ρ` moves to the next letter of the same
//! trace. A pair of letters contracts in one of two ways:
//!
//! * cross: `i_x = i_{ρ(y)}` and `i_{ρ(x)} = i_y`, weight `γ_c` for equal
//!   types and 1 otherwise;
//! * straight (real ensembles only): `i_x = i_y` and `i_{ρ(x)} = i_{ρ(y)}`,
//!   weight 1 for equal types and `γ_c` otherwise.
//!
//! Each free index class contributes a factor `N` and each pair `1/N`. Both
//! covariance structures are exact including the diagonal, so the result is
//! the exact expectation at every `N`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::{factorial, set_partitions};
use crate::error::{invalid, Error, Result};
use crate::expansion::NExpansion;
use crate::perm::{enumerate_pairings_where, DisjointSets, Pairing};
use crate::poly::{GammaPoly, Monomial};
use crate::words::Word;
use crate::Channel;

pub const COMPLEX_LETTER_CAP: usize = 12;
pub const REAL_LETTER_CAP: usize = 10;
pub const MAX_CUMULANT_ORDER: usize = 4;

/// A product of traces `Tr W₁ ⋯ Tr W_m` of one ensemble type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceWordSystem {
    words: Vec<Word>,
    channel: Channel,
    cap: usize,
}

impl TraceWordSystem {
    pub fn new(words: Vec<Word>, channel: Channel) -> Result<Self> {
        if words.is_empty() {
            return Err(invalid("a trace system needs at least one word"));
        }
        let cap = match channel {
            Channel::Complex => COMPLEX_LETTER_CAP,
            Channel::Real => REAL_LETTER_CAP,
        };
        Ok(TraceWordSystem {
            words,
            channel,
            cap,
        })
    }

    pub fn pair(inner: Word, outer: Word, channel: Channel) -> Result<Self> {
        Self::new(alloc::vec![inner, outer], channel)
    }

    /// Overrides the default letter cap.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn letters(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    fn sub_system(&self, idx: &[usize]) -> TraceWordSystem {
        TraceWordSystem {
            words: idx.iter().map(|&i| self.words[i].clone()).collect(),
            channel: self.channel,
            cap: self.cap,
        }
    }

    fn check_cap(&self) -> Result<()> {
        let n = self.letters();
        if n > self.cap {
            return Err(Error::CapExceeded {
                what: "total letters",
                got: n,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Flattened letters with the trace permutation and trace membership.
struct Layout {
    word: Word,
    rho: Vec<usize>,
    trace_of: Vec<usize>,
    empty_traces: usize,
}

impl Layout {
    fn new(sys: &TraceWordSystem) -> Self {
        let mut word = Word::empty();
        let mut rho = Vec::new();
        let mut trace_of = Vec::new();
        let mut empty_traces = 0;
        for (r, w) in sys.words.iter().enumerate() {
            let start = word.len();
            let k = w.len();
            if k == 0 {
                empty_traces += 1;
            }
            for t in 0..k {
                rho.push(start + (t + 1) % k);
                trace_of.push(r);
            }
            word = word.concat(w);
        }
        Layout {
            word,
            rho,
            trace_of,
            empty_traces,
        }
    }
}

/// Sums the Wick contributions of the color-respecting pairings accepted by
/// `keep`.
fn wick_sum<K>(sys: &TraceWordSystem, keep: K) -> Result<NExpansion>
where
    K: Fn(&Pairing, &Layout) -> bool,
{
    sys.check_cap()?;
    let lay = Layout::new(sys);
    let n = lay.word.len();
    let mut acc: BTreeMap<(i32, Monomial), i64> = BTreeMap::new();
    let colors = &lay.word.colors;
    let pairings = enumerate_pairings_where(n, usize::MAX, |a, b| colors[a] == colors[b])?;
    let base = lay.empty_traces as i32 - (n / 2) as i32;
    for pi in pairings {
        if !keep(&pi, &lay) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = pi.pairs().collect();
        let assignments: u32 = match sys.channel {
            Channel::Complex => 1,
            Channel::Real => 1 << pairs.len(),
        };
        for mask in 0..assignments {
            let mut dsu = DisjointSets::new(n);
            let mut mono = Monomial::one();
            for (k, &(x, y)) in pairs.iter().enumerate() {
                let straight = mask >> k & 1 == 1;
                let (tx, c) = lay.word.letter(x);
                let ty = lay.word.types[y];
                let (rx, ry) = (lay.rho[x], lay.rho[y]);
                if straight {
                    dsu.union(x, y);
                    dsu.union(rx, ry);
                } else {
                    dsu.union(x, ry);
                    dsu.union(rx, y);
                }
                if (tx == ty) != straight {
                    mono = mono.mul(&Monomial::var(c, 1));
                }
            }
            let e = base + dsu.set_count() as i32;
            *acc.entry((e, mono)).or_insert(0) += 1;
        }
    }
    let mut out = NExpansion::zero();
    for ((e, m), c) in acc {
        out.add_term(e, &GammaPoly::term(c, m));
    }
    Ok(out)
}

/// `E[Tr W₁ ⋯ Tr W_m]` exactly. An empty word is `Tr I = N`.
pub fn exact_moment(sys: &TraceWordSystem) -> Result<NExpansion> {
    wick_sum(sys, |_, _| true)
}

/// `E[tr W₁ ⋯ tr W_m]` with `tr = Tr / N`.
pub fn exact_moment_normalized(sys: &TraceWordSystem) -> Result<NExpansion> {
    Ok(exact_moment(sys)?.shift(-(sys.words.len() as i32)))
}

/// Classical joint cumulant `κ_m(Tr W₁, …, Tr W_m)` by Möbius inversion over
/// set partitions of the traces.
pub fn exact_cumulant(sys: &TraceWordSystem) -> Result<NExpansion> {
    let m = sys.words.len();
    if m > MAX_CUMULANT_ORDER {
        return Err(Error::CapExceeded {
            what: "cumulant order",
            got: m,
            cap: MAX_CUMULANT_ORDER,
        });
    }
    sys.check_cap()?;
    let mut block_moment: BTreeMap<Vec<usize>, NExpansion> = BTreeMap::new();
    let mut out = NExpansion::zero();
    for alpha in set_partitions(m) {
        let k = alpha.len() as u64;
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        let coeff = sign * factorial(k - 1) as i64;
        let mut prod = NExpansion::term(0, GammaPoly::one());
        for block in &alpha {
            if !block_moment.contains_key(block) {
                let mom = exact_moment(&sys.sub_system(block))?;
                block_moment.insert(block.clone(), mom);
            }
            prod = &prod * &block_moment[block];
            if prod.is_zero() {
                break;
            }
        }
        out += &prod.scale(coeff);
    }
    Ok(out)
}

/// The Wick sum restricted to pairings whose pairs link all traces into one
/// connected cluster. For Gaussian entries this is the joint cumulant.
pub fn connected_sum(sys: &TraceWordSystem) -> Result<NExpansion> {
    let m = sys.words.len();
    wick_sum(sys, |pi, lay| {
        let mut dsu = DisjointSets::new(m);
        for (x, y) in pi.pairs() {
            dsu.union(lay.trace_of[x], lay.trace_of[y]);
        }
        dsu.set_count() == 1
    })
}

/// Covariance of two traces as the sum over pairings with at least one pair
/// joining the two words.
pub fn connected_only_cov(sys: &TraceWordSystem) -> Result<NExpansion> {
    if sys.words.len() != 2 {
        return Err(invalid(format!(
            "connected covariance needs exactly two words, got {}",
            sys.words.len()
        )));
    }
    connected_sum(sys)
}
