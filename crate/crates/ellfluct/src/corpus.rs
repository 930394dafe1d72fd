//! Fixed word pairs used by the oracle suites.

use ellfluct_core::limits::WordPair;
use ellfluct_core::wick::TraceWordSystem;
use ellfluct_core::{Channel, Word};

/// Mixed types, one or two colors, at most ten letters per pair. Odd totals
/// and unbalanced colors are included on purpose; their covariances vanish.
pub const WORD_PAIRS: &[(&str, &str)] = &[
    ("ssx", "s"),
    ("xss", "s"),
    ("sx", "xx"),
    ("x", "xs"),
    ("s", "xsxsxxx"),
    ("xsxxsx", "sx"),
    ("s", "xssxssxxs"),
    ("x", "x"),
    ("xssx", "xxxxsx"),
    ("sx", "xxsssx"),
    ("sx", "x"),
    ("ssxsx", "sxs"),
    ("sxsxs", "s"),
    ("s", "s"),
    ("xxssx", "s"),
    ("xx", "s"),
    ("xsx", "xxs"),
    ("sssxsx", "sx"),
    ("xxxxsxsx", "sx"),
    ("sxsx", "xs"),
    ("x2 s2", "s1 x2 x1 s2"),
    ("x1 s2 x2 x1 x2 s2", "x1 s2"),
    ("s1 s1 s2 x2 x1 x1 x2", "x1 s2 s1"),
    ("x1", "s1 x2 x1 x1 x2"),
    ("x2 x1 s2 x2", "s2"),
    ("s1 s1 x1", "s1 s1 x1"),
    ("x1 x2 s2 s1 x1 s1", "s2 x2"),
    ("x2 s1 s1 s1 s1", "x1 x1 x2"),
    ("x2", "x2 x2"),
    ("s1 x2 s1", "s2"),
    ("x2 s2 s2", "s2 x1"),
    ("s2", "s1"),
    ("s2 x2 s2", "s2 s2 x2"),
    ("s1 x1 s1", "s2"),
    ("s2 x1", "x1 s1 x1 s2 s2 s1"),
    ("x1", "x2 x2 s1 x1 x1 x2 x1 x1 x2"),
    ("s1 x2", "x1 x2 x1 x1"),
    ("x2 x1 x1 s2 x2 s1 x2 s1 s2", "s1"),
    ("s2 x2", "s1 s1"),
    ("x2", "x2 x1 s1 x1 s1 s2 s2"),
    ("s2 s2 s1 x1 s1 x2 s2 s2", "s1 x1"),
    ("x1 s1 s1", "s2 x2"),
    ("s2", "s1 x1 s1"),
    ("x1 s1", "s1 x2 s1 x1 x1 x1"),
    ("s1 x1", "x1 x1"),
    ("x2 s2", "s2 x2 x1 x1 x1 x1"),
    ("x1 x2 x1", "s2 s2 x2"),
    ("x1 x1 x1 x1 x1", "s1"),
    ("x1", "s2"),
    ("s1", "x2 s1 s1 s1"),
    ("s2 x2 s1 x2 x2 s1", "x1 s2 s2 x1"),
    ("x2 s2 x2 x1", "s1 x2 s2 s1 x2 x1"),
    ("x1 s1", "s1 x1 x2 x2"),
    ("s1 s2 x1 s2", "x2 s1"),
    ("s2 s2 x1 s1", "x2"),
    ("x2", "s1"),
    ("x1 x2 s1", "s2 x2 x2"),
    ("s1 s1", "s2 x2 s1"),
    ("x1", "x1"),
    ("x1 s2", "x2 s2 x2 s1"),
    ("x1 s1 x2 s2", "x1 s1 x2 s2"),
    ("x1 s2 x2 s1", "x1 s1"),
    ("x1 x2 s2 s1", "s1 x1 x2 s2"),
    ("x1 x1 x2 x2", "s1 s1 s2 s2"),
    ("xsxs", "xsxs"),
    ("xxxx", "ssss"),
];

pub fn word_pairs() -> Vec<WordPair> {
    WORD_PAIRS
        .iter()
        .map(|(a, b)| {
            let inner: Word = a.parse().expect("corpus words parse");
            let outer: Word = b.parse().expect("corpus words parse");
            WordPair::new(inner, outer).expect("corpus words are nonempty")
        })
        .collect()
}

/// Complex three-word systems with at most twelve letters.
pub const TRIPLES: &[(&str, &str, &str)] = &[
    ("x", "x", "xx"),
    ("xs", "xs", "xs"),
    ("xx", "xx", "ss"),
    ("xsx", "sxs", "xs"),
    ("xxx", "x", "ss"),
    ("xs", "xxss", "sx"),
    ("x1 s2", "x2 s1", "x1 s1"),
    ("x1 x2", "s2 s1", "x1 s1 x2 s2"),
    ("xxxx", "ss", "ss"),
    ("xsxs", "xs", "sxsx"),
    ("x1 x1", "x2 x2", "s1 s2 s1 s2"),
    ("xx", "xxxx", "ssssss"),
];

pub fn triples() -> Vec<TraceWordSystem> {
    TRIPLES
        .iter()
        .map(|(a, b, c)| {
            let words = [a, b, c].iter().map(|w| w.parse().expect("corpus words parse")).collect();
            TraceWordSystem::new(words, Channel::Complex).expect("within the complex cap")
        })
        .collect()
}
