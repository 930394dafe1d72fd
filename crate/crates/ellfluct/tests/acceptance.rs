//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are never captured.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ellfluct::corpus;
use ellfluct::mc;
use ellfluct::suites::{self, SuiteReport};
use ellfluct_core::freeness::default_grid;
use ellfluct_core::limits::Family;
use ellfluct_core::sampler::{entry_moment_suite, EnsembleSpec};
use ellfluct_core::Channel;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(r: &SuiteReport) -> Outcome {
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).take(5).collect();
    Outcome {
        passed: r.passed(),
        detail: if failed.is_empty() {
            format!("{} checks", r.checks.len())
        } else {
            format!("{} of {} checks failed, e.g. {}", r.failures().count(), r.checks.len(), failed.join("; "))
        },
    }
}

/// Runs `f` and fails it if it exceeds `budget`.
fn criterion(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > budget {
        out.passed = false;
        out.detail = format!("{}; over the {:?} budget", out.detail, budget);
    }
    let tag = if out.passed { "PASS" } else { "FAIL" };
    println!("{tag} criterion {id:>2}: {title} ({}; {:.2?})", out.detail, took);
    out.passed
}

fn c1() -> Outcome {
    from_report(&suites::counts(14))
}

fn c2() -> Outcome {
    from_report(&suites::closed_vs_semiclosed())
}

/// Leading coefficient and even gaps only; the connectedness checks in the
/// same suite belong to criterion 4.
fn c3() -> Outcome {
    let r = suites::oracle(10);
    let relevant: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("leading") || c.name.starts_with("even gaps"))
        .collect();
    let pairs = corpus::word_pairs().len();
    let bad: Vec<&str> = relevant.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Outcome {
        passed: pairs >= 50 && bad.is_empty() && relevant.len() == 3 * pairs,
        detail: format!("{pairs} word pairs, {} checks, {} failed {:?}", relevant.len(), bad.len(), bad),
    }
}

fn c4() -> Outcome {
    let r = suites::oracle(10);
    let relevant: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("connected")).collect();
    let bad: Vec<&str> = relevant.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Outcome {
        passed: bad.is_empty() && relevant.len() == 2 * corpus::word_pairs().len(),
        detail: format!("{} checks, {} failed {:?}", relevant.len(), bad.len(), bad),
    }
}

fn c5() -> Outcome {
    let r = suites::oracle(10);
    let relevant: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("kappa3")).collect();
    let bad: Vec<&str> = relevant.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Outcome {
        passed: bad.is_empty() && relevant.len() >= 10,
        detail: format!("{} three-word systems, {} failed {:?}", relevant.len(), bad.len(), bad),
    }
}

fn c6() -> Outcome {
    from_report(&suites::fuss_catalan_suite())
}

fn c7() -> Outcome {
    from_report(&suites::real_transpose())
}

fn c8() -> Outcome {
    from_report(&suites::freeness(default_grid()))
}

fn c9() -> Outcome {
    let cases = [
        (Family::PurePure, 1, Channel::Complex, 0.5),
        (Family::PurePure, 1, Channel::Real, 0.0),
        (Family::PurePure, 2, Channel::Complex, 0.5),
        (Family::PureAdjoint, 2, Channel::Real, 0.5),
        (Family::Alternating, 1, Channel::Complex, 0.0),
        (Family::Alternating, 1, Channel::Real, 0.5),
    ];
    let mut passed = true;
    let mut lines = Vec::new();
    for (i, &(fam, p, channel, gamma)) in cases.iter().enumerate() {
        let start = Instant::now();
        let spec = EnsembleSpec::single(128, gamma, channel, 9000 + i as u64).expect("valid spec");
        let wp = fam.word_pair(p, p).expect("p >= 1");
        let est = mc::estimate_cov(&spec, &wp, 20_000).expect("enough replicates");
        let target = mc::oracle_value(&spec, &wp).expect("within caps");
        let ok = mc::within(&est, target, 4.0) && est.se <= 0.05 && start.elapsed() < Duration::from_secs(300);
        passed &= ok;
        lines.push(format!(
            "{} p={p} {} g={gamma}: {:.4} vs {:.4}, se {:.4}{}",
            fam.name(),
            channel.name(),
            est.estimate.re,
            target,
            est.se,
            if ok { "" } else { " MISS" }
        ));
    }
    Outcome {
        passed,
        detail: lines.join(" | "),
    }
}

fn c10() -> Outcome {
    let mut passed = true;
    let mut misses = Vec::new();
    let mut n = 0;
    for (k, channel) in [Channel::Complex, Channel::Real].into_iter().enumerate() {
        for (j, gamma) in [-0.9, 0.0, 0.6].into_iter().enumerate() {
            let suite = entry_moment_suite(gamma, channel, 100_000, (10 * k + j) as u64 + 1).expect("valid gamma");
            for m in suite {
                n += 1;
                if !m.observed.within(m.expected, 4.0) {
                    passed = false;
                    misses.push(format!("{} {} g={gamma}", m.name, channel.name()));
                }
            }
        }
    }
    Outcome {
        passed,
        detail: format!("{n} statistics, misses {misses:?}"),
    }
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored.
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "diagram counts, p+q <= 14", secs(10), c1),
        criterion(2, "closed form equals diagram sum", secs(30), c2),
        criterion(3, "Wick oracle leading term and even gaps", secs(300), c3),
        criterion(4, "connectedness identity", secs(300), c4),
        criterion(5, "third cumulants vanish to order N^0", secs(300), c5),
        criterion(6, "Fuss-Catalan series and arc compression", secs(60), c6),
        criterion(7, "real = complex + transposed complex", secs(60), c7),
        criterion(8, "second-order freeness default grid", secs(120), c8),
        criterion(9, "Monte Carlo within 4 SE of the same-N oracle", secs(1800), c9),
        criterion(10, "raw entry second moments", secs(60), c10),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
