//! Second-order freeness of independent colors, checked at the level of
//! limiting covariance polynomials.
//!
//! A cluster word is a cyclic product `A₁ ⋯ A_p` where each `A_i = Y_i − α_i`
//! is a single-color monomial centered by its limiting mean. Three
//! independent computations of the limiting covariance of two such traces
//! are provided:
//!
//! * [`centered_cov_limit`] expands the centering by inclusion–exclusion and
//!   evaluates plain covariances;
//! * [`sstar_cov_limit`] sums directly over diagrams in which every cluster
//!   sends at least one pair outside itself;
//! * [`second_order_rhs`] evaluates the factorized rotation sum over
//!   first-order centered moments.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::annulus::{enumerate_nc2_annular, AnnularFrame};
use crate::error::{invalid, Result};
use crate::expansion::NExpansion;
use crate::limits::{cov_limit_semiclosed, moment_limit, WordPair};
use crate::perm::Pairing;
use crate::poly::{Color, GammaPoly};
use crate::weights::{cross_weight, reflect_outer, straight_weight};
use crate::wick::{exact_cumulant, TraceWordSystem};
use crate::words::{Ty, TypeWord, Word};
use crate::Channel;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cluster {
    pub color: Color,
    pub types: TypeWord,
}

impl Cluster {
    pub fn new(color: Color, types: TypeWord) -> Result<Self> {
        if types.is_empty() {
            return Err(invalid("clusters must be nonempty"));
        }
        Ok(Cluster { color, types })
    }

    pub fn word(&self) -> Word {
        Word::colored(self.types.clone(), self.color)
    }

    pub fn transpose(&self) -> Cluster {
        Cluster {
            color: self.color,
            types: self.types.transpose(),
        }
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.color, self.types)
    }
}

/// A cyclic product of centered single-color clusters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClusterWord {
    clusters: Vec<Cluster>,
}

impl ClusterWord {
    pub fn new(clusters: Vec<Cluster>) -> Result<Self> {
        if clusters.is_empty() {
            return Err(invalid("a cluster word needs at least one cluster"));
        }
        Ok(ClusterWord { clusters })
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Cyclically adjacent clusters have different colors. A single cluster
    /// trivially qualifies.
    pub fn is_cyclically_alternating(&self) -> bool {
        let k = self.clusters.len();
        k == 1 || (0..k).all(|i| self.clusters[i].color != self.clusters[(i + 1) % k].color)
    }

    /// Concatenation of the clusters in `keep`.
    fn word_of(&self, keep: impl Fn(usize) -> bool) -> Word {
        let mut w = Word::empty();
        for (i, c) in self.clusters.iter().enumerate() {
            if keep(i) {
                w = w.concat(&c.word());
            }
        }
        w
    }

    pub fn word(&self) -> Word {
        self.word_of(|_| true)
    }

    /// Cluster index of every letter of [`ClusterWord::word`].
    pub fn letter_clusters(&self) -> Vec<usize> {
        self.clusters
            .iter()
            .enumerate()
            .flat_map(|(i, c)| core::iter::repeat_n(i, c.types.len()))
            .collect()
    }

    pub fn letters(&self) -> usize {
        self.clusters.iter().map(|c| c.types.len()).sum()
    }
}

impl fmt::Display for ClusterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clusters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Limiting mean `α = lim E tr(Y)` of a cluster.
pub fn cluster_mean(c: &Cluster) -> GammaPoly {
    moment_limit(&c.word())
}

/// Hypotheses: both words cyclically alternating, and a pair of
/// single clusters must use different colors.
fn check_hypotheses(inner: &ClusterWord, outer: &ClusterWord) -> Result<()> {
    for (side, w) in [("inner", inner), ("outer", outer)] {
        if !w.is_cyclically_alternating() {
            return Err(invalid(format!("{side} word {w} is not cyclically alternating")));
        }
    }
    if inner.len() == 1 && outer.len() == 1 && inner.clusters[0].color == outer.clusters[0].color {
        return Err(invalid(
            "two single clusters of the same color are not covered by second-order freeness",
        ));
    }
    Ok(())
}

/// Signed centering terms: `(−1)^{|M|} Π_{t∈M} α_t` for every subset `M` of
/// the clusters, with the word left after deleting `M`.
fn centering_terms(w: &ClusterWord) -> Vec<(GammaPoly, Word)> {
    let k = w.len();
    let means: Vec<GammaPoly> = w.clusters.iter().map(cluster_mean).collect();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut coeff = GammaPoly::one();
        for (t, mean) in means.iter().enumerate() {
            if mask >> t & 1 == 1 {
                coeff = &coeff * mean;
                coeff = coeff.scale(-1);
            }
        }
        if coeff.is_zero() {
            continue;
        }
        out.push((coeff, w.word_of(|t| mask >> t & 1 == 0)));
    }
    out
}

/// Limiting covariance of the centered traces by inclusion–exclusion over
/// deleted clusters. Terms with an empty side vanish.
pub fn centered_cov_limit(inner: &ClusterWord, outer: &ClusterWord, channel: Channel) -> Result<GammaPoly> {
    check_hypotheses(inner, outer)?;
    let mut acc = GammaPoly::zero();
    let outer_terms = centering_terms(outer);
    for (ci, wi) in centering_terms(inner) {
        if wi.is_empty() {
            continue;
        }
        for (co, wo) in &outer_terms {
            if wo.is_empty() {
                continue;
            }
            let cov = cov_limit_semiclosed(&WordPair::new(wi.clone(), wo.clone())?, channel);
            if !cov.is_zero() {
                acc += &(&(&ci * co) * &cov);
            }
        }
    }
    Ok(acc)
}

/// Cluster index of every letter of `inner ++ outer`, outer clusters
/// numbered after the inner ones.
fn letter_owners(inner: &ClusterWord, outer: &ClusterWord) -> Vec<usize> {
    let mut owner = inner.letter_clusters();
    owner.extend(outer.letter_clusters().iter().map(|&c| c + inner.len()));
    owner
}

/// Every cluster has at least one pair leaving it.
fn in_sstar(pi: &Pairing, owner: &[usize], clusters: usize) -> bool {
    let mut external = vec![false; clusters];
    for (x, y) in pi.pairs() {
        if owner[x] != owner[y] {
            external[owner[x]] = true;
            external[owner[y]] = true;
        }
    }
    external.iter().all(|&e| e)
}

/// Limiting covariance as a direct sum over the diagrams in which no cluster
/// is paired entirely internally. For real ensembles the straight term is
/// carried by the outer-mirrored diagram, which is the one tested.
pub fn sstar_cov_limit(inner: &ClusterWord, outer: &ClusterWord, channel: Channel) -> Result<GammaPoly> {
    check_hypotheses(inner, outer)?;
    let frame = AnnularFrame::new(inner.letters(), outer.letters())?;
    let word = inner.word().concat(&outer.word());
    let owner = letter_owners(inner, outer);
    let total = inner.len() + outer.len();
    let mut acc = GammaPoly::zero();
    for pi in enumerate_nc2_annular(frame) {
        if in_sstar(&pi, &owner, total) {
            acc += cross_weight(&pi, &word, frame)?;
        }
        if channel == Channel::Real {
            let mirrored = reflect_outer(&pi, frame);
            if in_sstar(&mirrored, &owner, total) {
                acc += straight_weight(&mirrored, &word, frame)?;
            }
        }
    }
    Ok(acc)
}

/// `φ₁((Y − α)(Z − β)) = lim E tr(YZ) − αβ`.
fn centered_pair_moment(a: &Cluster, b: &Cluster) -> GammaPoly {
    let yz = moment_limit(&a.word().concat(&b.word()));
    &yz - &(&cluster_mean(a) * &cluster_mean(b))
}

/// The factorized rotation sum: zero unless `p = q`; otherwise
/// `Σ_k Π_i φ₁(A_i B_{k−i})`, and for real ensembles additionally
/// `Σ_k Π_i φ₁(A_i Bᵀ_{k+i})`.
pub fn second_order_rhs(inner: &ClusterWord, outer: &ClusterWord, channel: Channel) -> Result<GammaPoly> {
    check_hypotheses(inner, outer)?;
    let (p, q) = (inner.len(), outer.len());
    if p != q {
        return Ok(GammaPoly::zero());
    }
    let a = &inner.clusters;
    let b = &outer.clusters;
    let mut acc = GammaPoly::zero();
    for k in 0..p {
        let mut prod = GammaPoly::one();
        for (i, ai) in a.iter().enumerate() {
            prod = &prod * &centered_pair_moment(ai, &b[(k + p - i) % p]);
            if prod.is_zero() {
                break;
            }
        }
        acc += &prod;
    }
    if channel == Channel::Real {
        for k in 0..p {
            let mut prod = GammaPoly::one();
            for (i, ai) in a.iter().enumerate() {
                prod = &prod * &centered_pair_moment(ai, &b[(k + i) % p].transpose());
                if prod.is_zero() {
                    break;
                }
            }
            acc += &prod;
        }
    }
    Ok(acc)
}

/// For a diagram of the joined cluster words: if every inner cluster pairs
/// with exactly one outer cluster and vice versa, the matching
/// `σ(inner index) = outer index`.
pub fn cluster_matching(pi: &Pairing, inner: &ClusterWord, outer: &ClusterWord) -> Option<Vec<usize>> {
    let p = inner.len();
    let owner = letter_owners(inner, outer);
    let total = p + outer.len();
    let mut partner: Vec<Option<usize>> = vec![None; total];
    for (x, y) in pi.pairs() {
        let (cx, cy) = (owner[x], owner[y]);
        if cx == cy {
            continue;
        }
        if (cx < p) == (cy < p) {
            return None;
        }
        for (u, v) in [(cx, cy), (cy, cx)] {
            match partner[u] {
                None => partner[u] = Some(v),
                Some(w) if w == v => {}
                Some(_) => return None,
            }
        }
    }
    (0..p).map(|i| partner[i].map(|j| j - p)).collect()
}

/// True iff `σ(k+1) = σ(k) − 1` cyclically.
pub fn is_order_reversing(sigma: &[usize]) -> bool {
    let q = sigma.len();
    (0..q).all(|k| sigma[(k + 1) % q] == (sigma[k] + q - 1) % q)
}

/// S★ diagrams with nonzero complex weight whose cluster matching is missing
/// or not order reversing. Empty when the matching property holds.
pub fn matching_violations(inner: &ClusterWord, outer: &ClusterWord) -> Result<Vec<Pairing>> {
    check_hypotheses(inner, outer)?;
    let frame = AnnularFrame::new(inner.letters(), outer.letters())?;
    let word = inner.word().concat(&outer.word());
    let owner = letter_owners(inner, outer);
    let total = inner.len() + outer.len();
    let mut bad = Vec::new();
    for pi in enumerate_nc2_annular(frame) {
        if !in_sstar(&pi, &owner, total) || cross_weight(&pi, &word, frame)?.is_zero() {
            continue;
        }
        match cluster_matching(&pi, inner, outer) {
            Some(s) if is_order_reversing(&s) => {}
            _ => bad.push(pi),
        }
    }
    Ok(bad)
}

/// Exact finite-N covariance of the two centered traces, centering by the
/// limiting means (kept symbolic).
pub fn centered_cov_exact(inner: &ClusterWord, outer: &ClusterWord, channel: Channel) -> Result<NExpansion> {
    check_hypotheses(inner, outer)?;
    let mut acc = NExpansion::zero();
    let outer_terms = centering_terms(outer);
    for (ci, wi) in centering_terms(inner) {
        if wi.is_empty() {
            continue;
        }
        for (co, wo) in &outer_terms {
            if wo.is_empty() {
                continue;
            }
            let k2 = exact_cumulant(&TraceWordSystem::pair(wi.clone(), wo.clone(), channel)?)?;
            acc += &k2.mul_poly(&(&ci * co));
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCase {
    pub inner: ClusterWord,
    pub outer: ClusterWord,
    pub channel: Channel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    Checked {
        centered: GammaPoly,
        sstar: GammaPoly,
        rhs: GammaPoly,
        order_reversing: bool,
    },
    Rejected(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub case: FreenessCase,
    pub outcome: CaseOutcome,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            CaseOutcome::Checked {
                centered,
                sstar,
                rhs,
                order_reversing,
            } => centered == sstar && centered == rhs && *order_reversing,
            CaseOutcome::Rejected(_) => false,
        }
    }
}

/// Runs the three computations (and the matching check for the complex
/// channel) on one case.
pub fn check_case(case: &FreenessCase) -> CaseResult {
    let run = || -> Result<CaseOutcome> {
        let centered = centered_cov_limit(&case.inner, &case.outer, case.channel)?;
        let sstar = sstar_cov_limit(&case.inner, &case.outer, case.channel)?;
        let rhs = second_order_rhs(&case.inner, &case.outer, case.channel)?;
        let order_reversing = case.channel == Channel::Real
            || matching_violations(&case.inner, &case.outer)?.is_empty();
        Ok(CaseOutcome::Checked {
            centered,
            sstar,
            rhs,
            order_reversing,
        })
    };
    let outcome = run().unwrap_or_else(|e| CaseOutcome::Rejected(alloc::string::ToString::to_string(&e)));
    CaseResult {
        case: case.clone(),
        outcome,
    }
}

/// Checks every case; the caller decides how to treat rejected ones.
pub fn verify_second_order_freeness(grid: &[FreenessCase]) -> Vec<CaseResult> {
    grid.iter().map(check_case).collect()
}

fn cl(color: u32, types: &[Ty]) -> Cluster {
    Cluster::new(Color(color), TypeWord(types.to_vec())).expect("nonempty")
}

const X: Ty = Ty::One;
const S: Ty = Ty::Star;

/// Cluster shapes used by the default grid: `x`, `xx`, `xs`.
pub fn default_cluster_types() -> [&'static [Ty]; 3] {
    [&[X], &[X, X], &[X, S]]
}

fn words_with_colors(colors: &[u32], shapes: &[Vec<usize>]) -> Vec<ClusterWord> {
    let types = default_cluster_types();
    shapes
        .iter()
        .map(|shape| {
            let clusters = colors
                .iter()
                .zip(shape)
                .map(|(&c, &t)| cl(c, types[t]))
                .collect();
            ClusterWord::new(clusters).expect("nonempty")
        })
        .collect()
}

fn all_shapes(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..3).map(move |t| {
                    let mut s = s.clone();
                    s.push(t);
                    s
                })
            })
            .collect();
    }
    out
}

/// The default grid, both channels:
///
/// * two clusters per side in colors 1, 2 (either outer orientation), all
///   shape combinations;
/// * three clusters per side in colors 1, 2, 3 (odd cyclic alternation needs
///   a third color), a fixed spread of nine shape triples per side, two
///   outer color orders;
/// * unequal cluster counts (1 vs 2, 2 vs 3, 2 vs 4, 1 vs 1 of different
///   colors), whose covariance must vanish.
pub fn default_grid() -> Vec<FreenessCase> {
    let mut pairs: Vec<(ClusterWord, ClusterWord)> = Vec::new();
    let two = all_shapes(2);
    for inner in words_with_colors(&[1, 2], &two) {
        for colors in [[1, 2], [2, 1]] {
            for outer in words_with_colors(&colors, &two) {
                pairs.push((inner.clone(), outer));
            }
        }
    }
    let triples: Vec<Vec<usize>> = [
        [0, 0, 0],
        [1, 1, 1],
        [2, 2, 2],
        [0, 1, 2],
        [2, 0, 1],
        [1, 2, 0],
        [1, 2, 2],
        [2, 1, 0],
        [0, 2, 2],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    for inner in words_with_colors(&[1, 2, 3], &triples) {
        for colors in [[1, 2, 3], [1, 3, 2]] {
            for outer in words_with_colors(&colors, &triples) {
                pairs.push((inner.clone(), outer));
            }
        }
    }
    let one = all_shapes(1);
    for inner in words_with_colors(&[1], &one) {
        for outer in words_with_colors(&[2], &one) {
            pairs.push((inner.clone(), outer));
        }
        for outer in words_with_colors(&[1, 2], &two) {
            pairs.push((inner.clone(), outer));
        }
    }
    for inner in words_with_colors(&[1, 2], &two) {
        for outer in words_with_colors(&[1, 2, 3], &triples[..3]) {
            pairs.push((inner.clone(), outer));
        }
    }
    for inner in words_with_colors(&[1, 2], &[vec![2, 2], vec![0, 1]]) {
        for outer in words_with_colors(&[1, 2, 1, 2], &[vec![2, 2, 2, 2], vec![0, 1, 2, 0]]) {
            pairs.push((inner.clone(), outer));
        }
    }
    let mut grid = Vec::with_capacity(2 * pairs.len());
    for channel in [Channel::Complex, Channel::Real] {
        for (inner, outer) in &pairs {
            grid.push(FreenessCase {
                inner: inner.clone(),
                outer: outer.clone(),
                channel,
            });
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(color: u32) -> Cluster {
        cl(color, &[X, S])
    }

    fn cw(cs: Vec<Cluster>) -> ClusterWord {
        ClusterWord::new(cs).unwrap()
    }

    #[test]
    fn means() {
        assert_eq!(cluster_mean(&xs(1)), GammaPoly::one());
        assert_eq!(cluster_mean(&cl(2, &[X, X])), GammaPoly::gamma_pow(Color(2), 1));
        assert!(cluster_mean(&cl(1, &[X])).is_zero());
    }

    #[test]
    fn two_color_example() {
        let w = cw(vec![xs(1), xs(2)]);
        for (ch, want) in [(Channel::Complex, 1), (Channel::Real, 2)] {
            let v = GammaPoly::constant(want);
            assert_eq!(centered_cov_limit(&w, &w, ch).unwrap(), v);
            assert_eq!(sstar_cov_limit(&w, &w, ch).unwrap(), v);
            assert_eq!(second_order_rhs(&w, &w, ch).unwrap(), v);
        }
    }

    #[test]
    fn unequal_cluster_counts_vanish() {
        let a = cw(vec![xs(1), xs(2)]);
        let b = cw(vec![xs(1), xs(2), xs(3)]);
        for ch in [Channel::Complex, Channel::Real] {
            assert!(centered_cov_limit(&a, &b, ch).unwrap().is_zero());
            assert!(sstar_cov_limit(&a, &b, ch).unwrap().is_zero());
            assert!(second_order_rhs(&a, &b, ch).unwrap().is_zero());
        }
    }

    #[test]
    fn single_cluster_against_other_color() {
        let a = cw(vec![xs(1)]);
        let b = cw(vec![cl(2, &[X, X])]);
        for ch in [Channel::Complex, Channel::Real] {
            assert!(sstar_cov_limit(&a, &b, ch).unwrap().is_zero());
            assert!(centered_cov_limit(&a, &b, ch).unwrap().is_zero());
        }
        assert!(centered_cov_limit(&a, &a, Channel::Complex).is_err());
    }

    #[test]
    fn alternation_is_required() {
        let bad = cw(vec![xs(1), xs(1)]);
        let good = cw(vec![xs(1), xs(2)]);
        assert!(centered_cov_limit(&bad, &good, Channel::Complex).is_err());
        let r = check_case(&FreenessCase {
            inner: bad,
            outer: good,
            channel: Channel::Real,
        });
        assert!(matches!(r.outcome, CaseOutcome::Rejected(_)));
        assert!(!r.passed());
    }

    #[test]
    fn order_reversal_helpers() {
        assert!(is_order_reversing(&[0, 1]));
        assert!(is_order_reversing(&[0, 2, 1]));
        assert!(!is_order_reversing(&[0, 1, 2]));
    }

    #[test]
    fn grid_sample_passes() {
        let grid = default_grid();
        assert!(grid.len() > 300);
        for case in grid.iter().step_by(37) {
            let r = check_case(case);
            assert!(r.passed(), "{} | {} {:?}: {:?}", case.inner, case.outer, case.channel, r.outcome);
        }
    }
}
