//! Property suites behind `verify`. Each check carries a JSON detail so a
//! failing case can be reproduced from the report alone.

use ellfluct_core::annulus::{
    enumerate_nc2_annular, enumerate_nc2_annular_exhaustive, nc2_count_by_spokes, nc2_count_closed,
};
use ellfluct_core::freeness::{default_grid, verify_second_order_freeness, CaseOutcome, FreenessCase};
use ellfluct_core::limits::{
    arc_composition_sum, arc_compression, cov_limit_closed, cov_limit_semiclosed, fuss_catalan, fuss_catalan_series,
    ArcFamily, Family, WordPair,
};
use ellfluct_core::wick::{connected_only_cov, exact_cumulant, exact_moment, TraceWordSystem};
use ellfluct_core::{AnnularFrame, Channel, NExpansion, Word};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus;
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Counts,
    ClosedVsSemiclosed,
    Oracle,
    FussCatalan,
    RealTranspose,
    Freeness,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::ClosedVsSemiclosed => "closed-vs-semiclosed",
            Suite::Oracle => "oracle",
            Suite::FussCatalan => "fuss-catalan",
            Suite::RealTranspose => "real-transpose",
            Suite::Freeness => "freeness",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Rejected inputs are neither passes nor failures.
    pub rejected: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            rejected: false,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.rejected)
    }

    pub fn rejected(&self) -> usize {
        self.checks.iter().filter(|c| c.rejected).count()
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none() && self.rejected() == 0
    }

    /// Passing checks are listed by name only.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                if c.passed {
                    json!({ "name": c.name, "passed": true })
                } else {
                    json!({ "name": c.name, "passed": false, "rejected": c.rejected, "detail": c.detail })
                }
            })
            .collect();
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "total": self.checks.len(),
            "failed": self.failures().count(),
            "rejected": self.rejected(),
            "checks": checks,
        })
    }
}

pub struct SuiteOptions {
    pub max_letters: usize,
    pub grid: Option<Vec<FreenessCase>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_letters: 10,
            grid: None,
        }
    }
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Vec<SuiteReport> {
    match suite {
        Suite::Counts => vec![counts(14)],
        Suite::ClosedVsSemiclosed => vec![closed_vs_semiclosed()],
        Suite::Oracle => vec![oracle(opts.max_letters)],
        Suite::FussCatalan => vec![fuss_catalan_suite()],
        Suite::RealTranspose => vec![real_transpose()],
        Suite::Freeness => vec![freeness(opts.grid.clone().unwrap_or_else(default_grid))],
        Suite::All => [
            Suite::Counts,
            Suite::ClosedVsSemiclosed,
            Suite::Oracle,
            Suite::FussCatalan,
            Suite::RealTranspose,
            Suite::Freeness,
        ]
        .into_iter()
        .flat_map(|s| run(s, opts))
        .collect(),
    }
}

/// Enumerated `|NC₂(p, q)|` against the product formula and the sum over
/// spoke counts, for `p + q ≤ max_total`. Small frames are also compared
/// with the exhaustive filter, list for list.
pub fn counts(max_total: usize) -> SuiteReport {
    let frames: Vec<(usize, usize)> = (1..max_total)
        .flat_map(|p| (1..=max_total - p).map(move |q| (p, q)))
        .collect();
    let checks = frames
        .par_iter()
        .map(|&(p, q)| {
            let frame = AnnularFrame::new(p, q).expect("p, q >= 1");
            let listed = enumerate_nc2_annular(frame);
            let closed = nc2_count_closed(p as u64, q as u64);
            let by_spokes = nc2_count_by_spokes(p as u64, q as u64);
            let mut passed = listed.len() as u128 == closed && closed == by_spokes;
            if p + q <= 8 {
                passed &= enumerate_nc2_annular_exhaustive(frame).is_ok_and(|ex| ex == listed);
            }
            Check::new(
                format!("NC2({p},{q})"),
                passed,
                json!({ "enumerated": listed.len(), "closed": closed.to_string(), "by_spokes": by_spokes.to_string() }),
            )
        })
        .collect();
    SuiteReport { suite: "counts", checks }
}

pub fn closed_vs_semiclosed() -> SuiteReport {
    let mut cases = Vec::new();
    for channel in [Channel::Complex, Channel::Real] {
        for family in [Family::PurePure, Family::PureAdjoint] {
            for p in 1..=6 {
                for q in (1..=6).filter(|q| (p + q) % 2 == 0) {
                    cases.push((family, p, q, channel));
                }
            }
        }
        for p in 1..=3 {
            for q in 1..=3 {
                cases.push((Family::Alternating, p, q, channel));
            }
        }
    }
    let checks = cases
        .par_iter()
        .map(|&(family, p, q, channel)| {
            let closed = cov_limit_closed(family, p, q, channel);
            let semi = cov_limit_semiclosed(&family.word_pair(p, q).expect("p, q >= 1"), channel);
            Check::new(
                format!("{} p={p} q={q} {}", family.name(), channel.name()),
                closed == semi,
                json!({ "closed": closed.to_string(), "semiclosed": semi.to_string() }),
            )
        })
        .collect();
    SuiteReport {
        suite: "closed-vs-semiclosed",
        checks,
    }
}

fn system(words: Vec<Word>, channel: Channel) -> TraceWordSystem {
    TraceWordSystem::new(words, channel).expect("corpus respects the letter caps")
}

/// Exponent gaps between consecutive nonzero orders are all even.
pub fn even_gaps(e: &NExpansion) -> bool {
    let exps: Vec<i32> = e.exponents().collect();
    exps.windows(2).all(|w| (w[1] - w[0]) % 2 == 0)
}

/// Per corpus pair and channel: the `N⁰` coefficient of the exact cumulant
/// against the diagram sum, the even-gap property (complex), and the
/// connectedness identity. Three-word systems check that `κ₃` has no
/// order `N⁰` or higher.
pub fn oracle(max_letters: usize) -> SuiteReport {
    let mut cases = Vec::new();
    for wp in corpus::word_pairs().into_iter().filter(|wp| wp.letters() <= max_letters) {
        for channel in [Channel::Complex, Channel::Real] {
            cases.push((wp.clone(), channel));
        }
    }
    let mut checks: Vec<Check> = cases
        .par_iter()
        .flat_map_iter(|(wp, channel)| pair_checks(wp, *channel))
        .collect();
    let triples: Vec<Check> = corpus::triples()
        .into_par_iter()
        .filter(|sys| sys.letters() <= max_letters.max(12))
        .map(|sys| {
            let k3 = exact_cumulant(&sys).expect("within caps");
            let passed = k3.max_exponent().is_none_or(|e| e < 0);
            let names: Vec<String> = sys.words().iter().map(|w| w.to_string()).collect();
            Check::new(
                format!("kappa3 [{}]", names.join(" | ")),
                passed,
                json!({ "kappa3": k3.to_string() }),
            )
        })
        .collect();
    checks.extend(triples);
    SuiteReport { suite: "oracle", checks }
}

fn pair_checks(wp: &WordPair, channel: Channel) -> Vec<Check> {
    let label = format!("[{}] vs [{}] {}", wp.inner, wp.outer, channel.name());
    let pair = system(vec![wp.inner.clone(), wp.outer.clone()], channel);
    let k2 = exact_cumulant(&pair).expect("within caps");
    let semi = cov_limit_semiclosed(wp, channel);
    let leading_ok = k2.coeff(0) == semi && k2.max_exponent().is_none_or(|e| e <= 0);
    let mut out = vec![Check::new(
        format!("leading {label}"),
        leading_ok,
        json!({ "oracle": json::expansion(&k2), "semiclosed": semi.to_string() }),
    )];
    if channel == Channel::Complex {
        out.push(Check::new(
            format!("even gaps {label}"),
            even_gaps(&k2),
            json!({ "oracle": k2.to_string() }),
        ));
    }
    let joint = exact_moment(&pair).expect("within caps");
    let m1 = exact_moment(&system(vec![wp.inner.clone()], channel)).expect("within caps");
    let m2 = exact_moment(&system(vec![wp.outer.clone()], channel)).expect("within caps");
    let lhs = &joint - &(&m1 * &m2);
    let connected = connected_only_cov(&pair).expect("two words");
    out.push(Check::new(
        format!("connected {label}"),
        lhs == connected && connected == k2,
        json!({ "moment_difference": lhs.to_string(), "connected": connected.to_string() }),
    ));
    out
}

pub fn fuss_catalan_suite() -> SuiteReport {
    let mut checks = Vec::new();
    for a in 1..=6u64 {
        let series = fuss_catalan_series(a, 10);
        for (n, &s) in series.iter().enumerate() {
            let direct = fuss_catalan(a, n as u64);
            checks.push(Check::new(
                format!("FC({a},{n})"),
                s == direct,
                json!({ "series": s.to_string(), "closed": direct.to_string() }),
            ));
        }
    }
    for a in 1..=5 {
        for n in 0..=5 {
            for fam in [ArcFamily::Pure, ArcFamily::Alternating] {
                let closed = arc_compression(a, n, fam);
                let sum = arc_composition_sum(a, n, fam);
                checks.push(Check::new(
                    format!("arcs a={a} n={n} {fam:?}"),
                    closed == sum,
                    json!({ "closed": closed.to_string(), "composition_sum": sum.to_string() }),
                ));
            }
        }
    }
    SuiteReport {
        suite: "fuss-catalan",
        checks,
    }
}

/// Real covariance equals the complex one plus the complex one against the
/// transposed outer word.
pub fn real_transpose() -> SuiteReport {
    let checks = corpus::word_pairs()
        .par_iter()
        .map(|wp| {
            let real = cov_limit_semiclosed(wp, Channel::Real);
            let direct = cov_limit_semiclosed(wp, Channel::Complex);
            let flipped = cov_limit_semiclosed(&wp.with_outer_transposed(), Channel::Complex);
            let sum = &direct + &flipped;
            Check::new(
                format!("[{}] vs [{}]", wp.inner, wp.outer),
                real == sum,
                json!({ "real": real.to_string(), "complex": direct.to_string(), "transposed": flipped.to_string() }),
            )
        })
        .collect();
    SuiteReport {
        suite: "real-transpose",
        checks,
    }
}

pub fn freeness(grid: Vec<FreenessCase>) -> SuiteReport {
    let results = grid
        .par_iter()
        .map(|case| verify_second_order_freeness(std::slice::from_ref(case)).remove(0))
        .collect::<Vec<_>>();
    let checks = results
        .iter()
        .map(|r| {
            let mut c = Check::new(
                format!("[{}] vs [{}] {}", r.case.inner, r.case.outer, r.case.channel.name()),
                r.passed(),
                json::freeness_result(r),
            );
            c.rejected = matches!(r.outcome, CaseOutcome::Rejected(_));
            c
        })
        .collect();
    SuiteReport { suite: "freeness", checks }
}
