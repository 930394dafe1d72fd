//! Parallel Monte Carlo on top of the core sampler. Replicates run on the
//! rayon pool; results are gathered in replicate order, so the output is
//! identical to the sequential estimator for the same seed.

use std::collections::BTreeMap;

use ellfluct_core::freeness::{cluster_mean, ClusterWord};
use ellfluct_core::limits::WordPair;
use ellfluct_core::sampler::{
    replicate_traces, sample_replicate, CovEstimate, EnsembleSpec, Factors, DEFAULT_BATCHES, MIN_REPS,
};
use ellfluct_core::wick::{exact_cumulant, TraceWordSystem};
use ellfluct_core::{Color, Error, NExpansion, Result, Word};
use num_complex::Complex64;
use rayon::prelude::*;

fn check_reps(reps: usize) -> Result<()> {
    if reps < MIN_REPS {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_REPS} replicates are required, got {reps}"
        )));
    }
    Ok(())
}

fn unzip(pairs: Vec<(Complex64, Complex64)>) -> (Vec<Complex64>, Vec<Complex64>) {
    pairs.into_iter().unzip()
}

/// `Cov(Tr w₁, Tr w₂)`.
pub fn estimate_cov(spec: &EnsembleSpec, wp: &WordPair, reps: usize) -> Result<CovEstimate> {
    check_reps(reps)?;
    let words = [wp.inner.clone(), wp.outer.clone()];
    let pairs = (0..reps as u64)
        .into_par_iter()
        .map(|rep| replicate_traces(spec, &words, rep).map(|t| (t[0], t[1])))
        .collect::<Result<Vec<_>>>()?;
    let (x, y) = unzip(pairs);
    CovEstimate::from_samples(&x, &y, DEFAULT_BATCHES, spec.seed())
}

fn alphas(w: &ClusterWord, gammas: &BTreeMap<Color, f64>) -> Vec<f64> {
    w.clusters()
        .iter()
        .map(|c| cluster_mean(c).eval_f64(&|col| gammas.get(&col).copied().unwrap_or(0.0)))
        .collect()
}

fn cluster_words(w: &ClusterWord) -> Vec<Word> {
    w.clusters().iter().map(|c| c.word()).collect()
}

/// Covariance of `Tr Π (Y_i − α_i)` for two cluster words, each cluster
/// centered by its limiting mean.
pub fn estimate_centered_cov(
    spec: &EnsembleSpec,
    inner: &ClusterWord,
    outer: &ClusterWord,
    reps: usize,
) -> Result<CovEstimate> {
    check_reps(reps)?;
    let (ai, ao) = (alphas(inner, spec.gammas()), alphas(outer, spec.gammas()));
    let (wi, wo) = (cluster_words(inner), cluster_words(outer));
    let mut colors: Vec<Color> = inner.word().concat(&outer.word()).color_set();
    colors.sort();
    let pairs = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let raw = sample_replicate(spec, &colors, rep)?;
            let f = Factors::new(&raw, spec.channel());
            Ok((f.centered_trace(&wi, &ai)?, f.centered_trace(&wo, &ao)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (x, y) = unzip(pairs);
    CovEstimate::from_samples(&x, &y, DEFAULT_BATCHES, spec.seed())
}

/// Exact covariance at the ensemble's `N`, from the Wick expansion.
pub fn oracle_value(spec: &EnsembleSpec, wp: &WordPair) -> Result<f64> {
    let k2 = exact_cumulant(&TraceWordSystem::pair(wp.inner.clone(), wp.outer.clone(), spec.channel())?)?;
    Ok(eval_at(&k2, spec))
}

pub fn eval_at(e: &NExpansion, spec: &EnsembleSpec) -> f64 {
    e.eval_f64(spec.n() as f64, &|c| spec.gammas().get(&c).copied().unwrap_or(0.0))
}

/// `|estimate − target| ≤ k·SE`, on the complex modulus.
pub fn within(est: &CovEstimate, target: f64, k: f64) -> bool {
    (est.estimate - Complex64::new(target, 0.0)).norm() <= k * est.se
}
