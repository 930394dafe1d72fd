use ellfluct_core::annulus::{enumerate_nc2_annular, is_noncrossing_annular};
use ellfluct_core::combinatorics::{fuss_catalan, fuss_catalan_series};
use ellfluct_core::limits::{cov_limit_semiclosed, moment_limit, WordPair};
use ellfluct_core::perm::{compose, cycle_count, inverse};
use ellfluct_core::spoke_arc::{compose as build, decompose, labeled_configs};
use ellfluct_core::weights::multicolor_arc_weight;
use ellfluct_core::wick::{exact_cumulant, TraceWordSystem};
use ellfluct_core::{AnnularFrame, Channel, Color, ColorWord, GammaPoly, Monomial, Pairing, Ty, TypeWord, Word};
use proptest::prelude::*;

fn ty() -> impl Strategy<Value = Ty> {
    prop_oneof![Just(Ty::One), Just(Ty::Star)]
}

fn word(max: usize, colors: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec((ty(), 1..=colors), 1..=max).prop_map(|v| {
        let (t, c): (Vec<Ty>, Vec<u32>) = v.into_iter().unzip();
        Word::new(TypeWord(t), ColorWord(c.into_iter().map(Color).collect())).unwrap()
    })
}

fn rotate(w: &Word, k: usize) -> Word {
    let n = w.len();
    let mut t = w.types.0.clone();
    let mut c = w.colors.0.clone();
    t.rotate_left(k % n);
    c.rotate_left(k % n);
    Word::new(TypeWord(t), ColorWord(c)).unwrap()
}

fn poly() -> impl Strategy<Value = GammaPoly> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 0..5).prop_map(|ts| {
        let mut p = GammaPoly::zero();
        for (k, a, b) in ts {
            p.add_term(k, Monomial::from_exps([(Color(1), a), (Color(2), b)]));
        }
        p
    })
}

fn annular_frame(max_n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..max_n).prop_flat_map(move |p| (Just(p), 1..=max_n - p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spoke_arc_round_trip((p, q) in annular_frame(11), pick in any::<prop::sample::Index>()) {
        let f = AnnularFrame::new(p, q).unwrap();
        let all = enumerate_nc2_annular(f);
        prop_assume!(!all.is_empty());
        let pi = &all[pick.index(all.len())];
        let cfg = decompose(pi, f).unwrap();
        cfg.validate(f).unwrap();
        prop_assert_eq!(&build(&cfg, f).unwrap(), pi);
    }

    #[test]
    fn labeled_configs_cover_each_diagram_a_times((p, q) in annular_frame(9), a in 1usize..5) {
        let f = AnnularFrame::new(p, q).unwrap();
        let labeled = labeled_configs(f, a);
        let with_a: Vec<Pairing> = enumerate_nc2_annular(f)
            .into_iter()
            .filter(|pi| ellfluct_core::spoke_arc::spoke_count(pi, f).unwrap() == a)
            .collect();
        prop_assert_eq!(labeled.len(), a * with_a.len());
        for cfg in &labeled {
            prop_assert!(with_a.contains(&build(cfg, f).unwrap()));
        }
    }

    /// Genus bound `#(π) + #(π⁻¹ρ) ≤ p + q` over all connected pairings.
    #[test]
    fn annular_genus_bound((p, q) in annular_frame(9), seed in any::<u64>()) {
        let f = AnnularFrame::new(p, q).unwrap();
        let n = p + q;
        prop_assume!(n % 2 == 0);
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let pairs: Vec<(usize, usize)> = order.chunks(2).map(|c| (c[0], c[1])).collect();
        let pi = Pairing::from_pairs(n, &pairs).unwrap();
        let both = cycle_count(pi.as_slice()).unwrap()
            + cycle_count(&compose(&inverse(pi.as_slice()), &f.rho())).unwrap();
        let connected = pi.pairs().any(|(x, y)| f.is_inner(x) != f.is_inner(y));
        prop_assert!(both <= n || !connected);
        let nc = is_noncrossing_annular(&pi, f).unwrap();
        prop_assert_eq!(nc, enumerate_nc2_annular(f).contains(&pi));
    }

    #[test]
    fn covariance_is_symmetric(a in word(5, 2), b in word(5, 2)) {
        for ch in [Channel::Complex, Channel::Real] {
            let ab = cov_limit_semiclosed(&WordPair::new(a.clone(), b.clone()).unwrap(), ch);
            let ba = cov_limit_semiclosed(&WordPair::new(b.clone(), a.clone()).unwrap(), ch);
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn covariance_is_cyclic(a in word(5, 2), b in word(5, 2), k in 0usize..5, m in 0usize..5) {
        for ch in [Channel::Complex, Channel::Real] {
            let base = cov_limit_semiclosed(&WordPair::new(a.clone(), b.clone()).unwrap(), ch);
            let turned = cov_limit_semiclosed(&WordPair::new(rotate(&a, k), rotate(&b, m)).unwrap(), ch);
            prop_assert_eq!(base, turned);
        }
    }

    /// `Tr(w^T) = Tr(w)` for real matrices, so transposing a word is free
    /// in the real channel.
    #[test]
    fn real_covariance_transpose_invariant(a in word(5, 2), b in word(5, 2)) {
        let wp = WordPair::new(a.clone(), b.clone()).unwrap();
        let base = cov_limit_semiclosed(&wp, Channel::Real);
        prop_assert_eq!(&base, &cov_limit_semiclosed(&wp.with_outer_transposed(), Channel::Real));
        let both = WordPair::new(a.transpose(), b.transpose()).unwrap();
        prop_assert_eq!(&base, &cov_limit_semiclosed(&both, Channel::Real));
    }

    #[test]
    fn oracle_leading_term(a in word(5, 2), b in word(5, 2)) {
        prop_assume!(a.len() + b.len() <= 8);
        for ch in [Channel::Complex, Channel::Real] {
            let k2 = exact_cumulant(&TraceWordSystem::pair(a.clone(), b.clone(), ch).unwrap()).unwrap();
            prop_assert!(k2.max_exponent().is_none_or(|e| e <= 0));
            prop_assert_eq!(k2.coeff(0), cov_limit_semiclosed(&WordPair::new(a.clone(), b.clone()).unwrap(), ch));
        }
    }

    #[test]
    fn moment_limit_is_arc_weight(a in word(8, 2)) {
        prop_assume!(a.len() % 2 == 0);
        prop_assert_eq!(moment_limit(&a), multicolor_arc_weight(&a.types, &a.colors).unwrap());
    }

    #[test]
    fn word_display_round_trip(a in word(8, 3)) {
        let back: Word = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly(), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let at = |col: Color| if col == Color(1) { x } else { y };
        let lhs = (&a * &b).eval_f64(&at);
        let rhs = a.eval_f64(&at) * b.eval_f64(&at);
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn fuss_catalan_agrees(a in 1u64..8, n in 0usize..12) {
        prop_assert_eq!(fuss_catalan_series(a, n)[n], fuss_catalan(a, n as u64));
    }
}
