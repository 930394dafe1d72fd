use ellfluct::mc;
use ellfluct_core::freeness::{centered_cov_exact, Cluster, ClusterWord};
use ellfluct_core::limits::{Family, WordPair};
use ellfluct_core::sampler::{self, replicate_traces, EnsembleSpec, MeanEstimate};
use ellfluct_core::wick::{exact_moment_normalized, TraceWordSystem};
use ellfluct_core::{Channel, Color, Word};
use num_complex::Complex64;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn pair(a: &str, b: &str) -> WordPair {
    WordPair::new(w(a), w(b)).unwrap()
}

#[test]
fn single_letter_covariances() {
    for (n, channel, gamma, target) in [(8, Channel::Complex, 0.5, 0.5), (40, Channel::Complex, 0.5, 0.5), (24, Channel::Real, 0.3, 1.3)] {
        let spec = EnsembleSpec::single(n, gamma, channel, 3).unwrap();
        let est = mc::estimate_cov(&spec, &pair("x", "x"), 4000).unwrap();
        assert!((mc::oracle_value(&spec, &pair("x", "x")).unwrap() - target).abs() < 1e-12);
        assert!(mc::within(&est, target, 4.0), "{est:?} vs {target}");
    }
}

#[test]
fn alternating_at_128() {
    let spec = EnsembleSpec::single(128, 0.0, Channel::Complex, 5).unwrap();
    let wp = Family::Alternating.word_pair(1, 1).unwrap();
    let est = mc::estimate_cov(&spec, &wp, 4000).unwrap();
    let target = mc::oracle_value(&spec, &wp).unwrap();
    assert!((target - 1.0).abs() < 1e-3);
    assert!(mc::within(&est, target, 4.0), "{est:?} vs {target}");
}

#[test]
fn normalized_square_trace_mean() {
    let spec = EnsembleSpec::single(128, 0.7, Channel::Complex, 17).unwrap();
    let vals: Vec<Complex64> = (0..10_000u64)
        .map(|rep| replicate_traces(&spec, &[w("xx")], rep).unwrap()[0] / 128.0)
        .collect();
    let exact = exact_moment_normalized(&TraceWordSystem::new(vec![w("xx")], Channel::Complex).unwrap()).unwrap();
    let target = mc::eval_at(&exact, &spec);
    assert!((target - 0.7).abs() < 1e-12);
    let m = MeanEstimate::from_samples(&vals);
    assert!(m.within(Complex64::new(target, 0.0), 4.0), "{m:?}");
}

#[test]
fn parallel_matches_sequential() {
    let spec = EnsembleSpec::single(6, -0.4, Channel::Real, 99).unwrap();
    let wp = pair("xs", "xxs");
    assert_eq!(mc::estimate_cov(&spec, &wp, 300).unwrap(), sampler::estimate_cov(&spec, &wp, 300).unwrap());
    assert!(mc::estimate_cov(&spec, &wp, 99).is_err());
}

fn cw(spec: &[(u32, &str)]) -> ClusterWord {
    ClusterWord::new(
        spec.iter()
            .map(|&(c, t)| Cluster::new(Color(c), t.parse().unwrap()).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Centered words estimated at N = 128 against the exact centered
/// covariance at the same N.
#[test]
fn centered_words_match_exact_oracle() {
    let inner = cw(&[(1, "xs"), (2, "xx")]);
    let outer = cw(&[(1, "xs"), (2, "ss")]);
    for (k, channel) in [Channel::Complex, Channel::Real].into_iter().enumerate() {
        let gammas = [(Color(1), 0.4), (Color(2), -0.3)].into_iter().collect();
        let spec = EnsembleSpec::new(128, gammas, channel, 40 + k as u64).unwrap();
        let est = mc::estimate_centered_cov(&spec, &inner, &outer, 800).unwrap();
        let exact = centered_cov_exact(&inner, &outer, channel).unwrap();
        let target = mc::eval_at(&exact, &spec);
        assert!(mc::within(&est, target, 4.0), "{channel:?}: {est:?} vs {target} ({exact})");
    }
}
