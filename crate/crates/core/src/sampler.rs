//! Monte Carlo sampling of Gaussian elliptic matrices.
//!
//! Off-diagonal entries are drawn in correlated pairs `(X_ij, X_ji)` and
//! diagonal entries separately, so that
//!
//! * complex: `E X_ij X_ji = γ`, `E |X_ij|² = 1`, `E X_ij² = 0` off the
//!   diagonal, and `E X_ii² = γ`, `E |X_ii|² = 1`;
//! * real: `E X_ij X_ji = γ`, `E X_ij² = 1`, and `E X_ii² = 1 + γ`.
//!
//! Every replicate draws from its own ChaCha8 stream keyed by
//! `(seed, replicate)`, so results do not depend on scheduling.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::limits::WordPair;
use crate::poly::Color;
use crate::words::{Ty, Word};
use crate::Channel;

pub const DEFAULT_BATCHES: usize = 20;
pub const MIN_REPS: usize = 100;

/// Human-readable description of the random source, for provenance records.
pub const GENERATOR: &str = "ChaCha8 (stream = replicate index), ziggurat normals";

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    n: usize,
    gammas: BTreeMap<Color, f64>,
    channel: Channel,
    seed: u64,
}

impl EnsembleSpec {
    pub fn new(n: usize, gammas: BTreeMap<Color, f64>, channel: Channel, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("matrix dimension must be at least 2, got {n}")));
        }
        for (c, &g) in &gammas {
            if !(-1.0..=1.0).contains(&g) {
                return Err(invalid(format!("gamma for color {c} is {g}, outside [-1, 1]")));
            }
        }
        Ok(EnsembleSpec {
            n,
            gammas,
            channel,
            seed,
        })
    }

    /// One color (color 1) with parameter `gamma`.
    pub fn single(n: usize, gamma: f64, channel: Channel, seed: u64) -> Result<Self> {
        Self::new(n, BTreeMap::from([(Color::default(), gamma)]), channel, seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn gammas(&self) -> &BTreeMap<Color, f64> {
        &self.gammas
    }

    pub fn gamma(&self, c: Color) -> Result<f64> {
        self.gammas
            .get(&c)
            .copied()
            .ok_or_else(|| invalid(format!("no gamma given for color {c}")))
    }

    /// RNG for replicate `rep`.
    pub fn replicate_rng(&self, rep: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(rep);
        rng
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = self.transpose();
        for v in &mut out.data {
            *v = v.conj();
        }
        out
    }

    pub fn scaled(&self, k: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    /// `self - k·I`.
    pub fn minus_identity(&self, k: f64) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] -= k;
        }
        out
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rk = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(rk) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// `Tr(self · rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Matrix) -> Complex64 {
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * rhs.data[k * n + i];
            }
        }
        acc
    }
}

fn std_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u: f64 = rng.sample(StandardNormal);
    let v: f64 = rng.sample(StandardNormal);
    Complex64::new(u, v) * core::f64::consts::FRAC_1_SQRT_2
}

/// One correlated off-diagonal pair `(X_ij, X_ji)`.
pub fn sample_offdiag_pair<R: Rng + ?Sized>(rng: &mut R, gamma: f64, channel: Channel) -> (Complex64, Complex64) {
    let s = libm::sqrt((1.0 - gamma * gamma).max(0.0));
    match channel {
        Channel::Complex => {
            let g1 = std_complex(rng);
            let g2 = std_complex(rng);
            (g1, g1.conj() * gamma + g2 * s)
        }
        Channel::Real => {
            let g1: f64 = rng.sample(StandardNormal);
            let g2: f64 = rng.sample(StandardNormal);
            (Complex64::new(g1, 0.0), Complex64::new(gamma * g1 + s * g2, 0.0))
        }
    }
}

/// One diagonal entry `X_ii`.
pub fn sample_diag<R: Rng + ?Sized>(rng: &mut R, gamma: f64, channel: Channel) -> Complex64 {
    match channel {
        Channel::Complex => {
            let u: f64 = rng.sample(StandardNormal);
            let v: f64 = rng.sample(StandardNormal);
            Complex64::new(
                libm::sqrt((1.0 + gamma) / 2.0) * u,
                libm::sqrt((1.0 - gamma) / 2.0) * v,
            )
        }
        Channel::Real => {
            let g: f64 = rng.sample(StandardNormal);
            Complex64::new(libm::sqrt(1.0 + gamma) * g, 0.0)
        }
    }
}

/// A raw (unnormalized) elliptic matrix of the given color.
pub fn sample_elliptic<R: Rng + ?Sized>(spec: &EnsembleSpec, color: Color, rng: &mut R) -> Result<Matrix> {
    let gamma = spec.gamma(color)?;
    let n = spec.n;
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, i, sample_diag(rng, gamma, spec.channel));
        for j in i + 1..n {
            let (a, b) = sample_offdiag_pair(rng, gamma, spec.channel);
            m.set(i, j, a);
            m.set(j, i, b);
        }
    }
    Ok(m)
}

/// Draws one matrix per color, in increasing color order, from the stream
/// of replicate `rep`.
pub fn sample_replicate(spec: &EnsembleSpec, colors: &[Color], rep: u64) -> Result<BTreeMap<Color, Matrix>> {
    let mut wanted: Vec<Color> = colors.to_vec();
    wanted.sort();
    wanted.dedup();
    let mut rng = spec.replicate_rng(rep);
    let mut out = BTreeMap::new();
    for c in wanted {
        out.insert(c, sample_elliptic(spec, c, &mut rng)?);
    }
    Ok(out)
}

/// Raw matrices with `X/√N` and its adjoint precomputed.
pub struct Factors {
    n: usize,
    plain: BTreeMap<Color, Matrix>,
    star: BTreeMap<Color, Matrix>,
}

impl Factors {
    pub fn new(raw: &BTreeMap<Color, Matrix>, channel: Channel) -> Self {
        let mut plain = BTreeMap::new();
        let mut star = BTreeMap::new();
        let mut n = 0;
        for (&c, m) in raw {
            n = m.n();
            let x = m.scaled(1.0 / libm::sqrt(m.n() as f64));
            let xs = match channel {
                Channel::Complex => x.adjoint(),
                Channel::Real => x.transpose(),
            };
            plain.insert(c, x);
            star.insert(c, xs);
        }
        Factors { n, plain, star }
    }

    pub fn letter(&self, t: Ty, c: Color) -> Result<&Matrix> {
        let map = match t {
            Ty::One => &self.plain,
            Ty::Star => &self.star,
        };
        map.get(&c)
            .ok_or_else(|| invalid(format!("no matrix supplied for color {c}")))
    }

    /// Product of the word's letters, `I` for the empty word.
    pub fn product(&self, word: &Word) -> Result<Matrix> {
        if word.is_empty() {
            return Ok(Matrix::identity(self.n));
        }
        let (t, c) = word.letter(0);
        let mut acc = self.letter(t, c)?.clone();
        for i in 1..word.len() {
            let (t, c) = word.letter(i);
            acc = acc.matmul(self.letter(t, c)?);
        }
        Ok(acc)
    }

    /// `Tr w` (or `tr w` when `normalized`).
    pub fn trace_word(&self, word: &Word, normalized: bool) -> Result<Complex64> {
        let tr = match word.len() {
            0 => Complex64::new(self.n as f64, 0.0),
            1 => {
                let (t, c) = word.letter(0);
                self.letter(t, c)?.trace()
            }
            k => {
                let head = Word::new(
                    crate::words::TypeWord(word.types[..k - 1].to_vec()),
                    crate::words::ColorWord(word.colors[..k - 1].to_vec()),
                )?;
                let (t, c) = word.letter(k - 1);
                self.product(&head)?.trace_of_product(self.letter(t, c)?)
            }
        };
        Ok(if normalized { tr / self.n as f64 } else { tr })
    }

    /// `Tr Π_i (Y_i − α_i I)` where `Y_i` is the product of cluster `i`.
    pub fn centered_trace(&self, clusters: &[Word], alphas: &[f64]) -> Result<Complex64> {
        if clusters.len() != alphas.len() {
            return Err(invalid("one centering constant per cluster is required"));
        }
        let mut acc: Option<Matrix> = None;
        for (w, &a) in clusters.iter().zip(alphas) {
            let m = self.product(w)?.minus_identity(a);
            acc = Some(match acc {
                None => m,
                Some(p) => p.matmul(&m),
            });
        }
        Ok(acc.map_or(Complex64::new(self.n as f64, 0.0), |m| m.trace()))
    }
}

/// Evaluates a trace word on a set of raw matrices.
pub fn evaluate_trace_word(
    raw: &BTreeMap<Color, Matrix>,
    word: &Word,
    channel: Channel,
    normalized: bool,
) -> Result<Complex64> {
    Factors::new(raw, channel).trace_word(word, normalized)
}

/// Unnormalized traces of `words` on replicate `rep`.
pub fn replicate_traces(spec: &EnsembleSpec, words: &[Word], rep: u64) -> Result<Vec<Complex64>> {
    let colors: Vec<Color> = words.iter().flat_map(|w| w.colors.iter().copied()).collect();
    let raw = sample_replicate(spec, &colors, rep)?;
    let f = Factors::new(&raw, spec.channel);
    words.iter().map(|w| f.trace_word(w, false)).collect()
}

/// Covariance estimate with a batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovEstimate {
    pub estimate: Complex64,
    pub se: f64,
    pub reps: usize,
    pub seed: u64,
}

impl CovEstimate {
    /// `E[xy] − E[x]E[y]` (no conjugation), with the standard error taken
    /// from the spread of per-batch covariances.
    pub fn from_samples(x: &[Complex64], y: &[Complex64], batches: usize, seed: u64) -> Result<Self> {
        if x.len() != y.len() {
            return Err(invalid("sample vectors differ in length"));
        }
        let reps = x.len();
        if batches < 2 || reps < 2 * batches {
            return Err(invalid(format!("{reps} replicates cannot fill {batches} batches")));
        }
        let estimate = sample_cov(x, y);
        let size = reps / batches;
        let covs: Vec<Complex64> = (0..batches)
            .map(|b| {
                let lo = b * size;
                let hi = if b + 1 == batches { reps } else { lo + size };
                sample_cov(&x[lo..hi], &y[lo..hi])
            })
            .collect();
        let mean: Complex64 = covs.iter().sum::<Complex64>() / batches as f64;
        let var = covs.iter().map(|c| (c - mean).norm_sqr()).sum::<f64>() / (batches - 1) as f64;
        Ok(CovEstimate {
            estimate,
            se: libm::sqrt(var / batches as f64),
            reps,
            seed,
        })
    }
}

fn sample_cov(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let n = x.len() as f64;
    let mx: Complex64 = x.iter().sum::<Complex64>() / n;
    let my: Complex64 = y.iter().sum::<Complex64>() / n;
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<Complex64>()
        / (n - 1.0)
}

/// `Cov(Tr w₁, Tr w₂)` over `reps` replicates, sequentially.
pub fn estimate_cov(spec: &EnsembleSpec, wp: &WordPair, reps: usize) -> Result<CovEstimate> {
    if reps < MIN_REPS {
        return Err(invalid(format!("at least {MIN_REPS} replicates are required, got {reps}")));
    }
    let words = [wp.inner.clone(), wp.outer.clone()];
    let mut x = Vec::with_capacity(reps);
    let mut y = Vec::with_capacity(reps);
    for rep in 0..reps {
        let t = replicate_traces(spec, &words, rep as u64)?;
        x.push(t[0]);
        y.push(t[1]);
    }
    CovEstimate::from_samples(&x, &y, DEFAULT_BATCHES, spec.seed)
}

/// Mean of a complex sample with its standard error (modulus form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: Complex64,
    pub se: f64,
}

impl MeanEstimate {
    pub fn from_samples(v: &[Complex64]) -> Self {
        let n = v.len() as f64;
        let mean: Complex64 = v.iter().sum::<Complex64>() / n;
        let var = v.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / (n - 1.0);
        MeanEstimate {
            mean,
            se: libm::sqrt(var / n),
        }
    }

    /// `|mean − target| ≤ k·se`.
    pub fn within(&self, target: Complex64, k: f64) -> bool {
        (self.mean - target).norm() <= k * self.se
    }
}

/// One raw-entry second-moment statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryMoment {
    pub name: &'static str,
    pub expected: Complex64,
    pub observed: MeanEstimate,
}

/// The five raw-entry second moments, each from `samples` independent draws.
pub fn entry_moment_suite(gamma: f64, channel: Channel, samples: usize, seed: u64) -> Result<Vec<EntryMoment>> {
    if !(-1.0..=1.0).contains(&gamma) {
        return Err(invalid(format!("gamma {gamma} is outside [-1, 1]")));
    }
    if samples < 2 {
        return Err(invalid("need at least two samples"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(samples);
    let mut diags = Vec::with_capacity(samples);
    for _ in 0..samples {
        pairs.push(sample_offdiag_pair(&mut rng, gamma, channel));
        diags.push(sample_diag(&mut rng, gamma, channel));
    }
    let c = |re: f64| Complex64::new(re, 0.0);
    let (xx, diag_sq) = match channel {
        Channel::Complex => (c(0.0), c(gamma)),
        Channel::Real => (c(1.0), c(1.0 + gamma)),
    };
    let diag_abs = match channel {
        Channel::Complex => c(1.0),
        Channel::Real => c(1.0 + gamma),
    };
    let stat = |name, expected, vals: Vec<Complex64>| EntryMoment {
        name,
        expected,
        observed: MeanEstimate::from_samples(&vals),
    };
    Ok(vec![
        stat("E X_ij X_ji", c(gamma), pairs.iter().map(|(a, b)| a * b).collect()),
        stat("E X_ij^2", xx, pairs.iter().map(|(a, _)| a * a).collect()),
        stat("E |X_ij|^2", c(1.0), pairs.iter().map(|(a, _)| c(a.norm_sqr())).collect()),
        stat("E X_ii^2", diag_sq, diags.iter().map(|d| d * d).collect()),
        stat("E |X_ii|^2", diag_abs, diags.iter().map(|d| c(d.norm_sqr())).collect()),
    ])
}
