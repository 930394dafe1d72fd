//! Argument parsing and command dispatch. `run` returns the JSON (or CSV)
//! text to print; the binary maps errors to exit codes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellfluct_core::annulus::{enumerate_nc2_annular, enumerate_nc2_annular_exhaustive, EXHAUSTIVE_CAP};
use ellfluct_core::limits::{cov_limit_closed, cov_limit_semiclosed, Family, WordPair};
use ellfluct_core::sampler::EnsembleSpec;
use ellfluct_core::spoke_arc::{decompose, spoke_count};
use ellfluct_core::wick::{exact_cumulant, TraceWordSystem};
use ellfluct_core::{AnnularFrame, Channel, Color, ColorWord, Error, GammaPoly, Word};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::gamma::{rational_json, GammaSpec};
use crate::manifest::RunManifest;
use crate::suites::{self, Suite, SuiteOptions};
use crate::{json, mc};

/// Largest `p + q` accepted by `enumerate`.
pub const ENUMERATE_CAP: usize = 14;

#[derive(Debug, Parser)]
#[command(name = "ellfluct", version, about = "Trace fluctuations of Gaussian elliptic random matrices")]
pub struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true, env = "ELLFLUCT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the annular non-crossing pairings of a (p, q) annulus.
    Enumerate(EnumerateArgs),
    /// Covariance of two traces: closed form, diagram sum, exact oracle or
    /// Monte Carlo.
    Cov(CovArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    /// Keep only diagrams with this many spokes.
    #[arg(long)]
    pub spokes: Option<usize>,
    /// Attach the spoke/arc decomposition of each diagram.
    #[arg(long)]
    pub decompose: bool,
    /// Use the brute-force filter over all pairings instead of the
    /// spoke/arc generator.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Pure,
    PureAdjoint,
    Alternating,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Complex,
    Real,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Channel {
        match c {
            ChannelArg::Complex => Channel::Complex,
            ChannelArg::Real => Channel::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Semiclosed,
    Oracle,
    Mc,
}

#[derive(Debug, Args)]
pub struct CovArgs {
    /// For `alternating`, p and q count `XX*` pairs, not letters.
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Inner word for `custom`, e.g. `xsxs` or `x1 s2 x2 s1`.
    #[arg(long)]
    pub tau_inner: Option<String>,
    #[arg(long)]
    pub tau_outer: Option<String>,
    /// Comma-separated letter colors for the inner word.
    #[arg(long)]
    pub colors_inner: Option<String>,
    #[arg(long)]
    pub colors_outer: Option<String>,
    #[arg(long, value_enum, default_value = "complex")]
    pub channel: ChannelArg,
    #[arg(long, value_enum, default_value = "semiclosed")]
    pub method: Method,
    /// `0.5`, `-1/3`, or per color `1=0.5,2=0`.
    #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Report the polynomial in the γ's (the default without --gamma).
    #[arg(long)]
    pub symbolic: bool,
    /// Matrix size for `oracle` (numeric value) and `mc`.
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-check against a second method; a mismatch exits with 1.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Largest word pair (total letters) for the oracle suite.
    #[arg(long, default_value_t = 10)]
    pub max_letters: usize,
    /// Freeness grid file replacing the default grid.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

/// Output text plus a verification failure or rejected input, if any.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failed: Option<String>,
    pub rejected: Option<String>,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            text: pretty(&v),
            failed: None,
            rejected: None,
        }
    }

    /// 0 success, 1 failed verification, 2 rejected input.
    pub fn exit_code(&self) -> i32 {
        if self.failed.is_some() {
            1
        } else if self.rejected.is_some() {
            2
        } else {
            0
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Cov(a) => cov(a),
        Command::Verify(a) => verify(a),
    }
}

fn enumerate(a: &EnumerateArgs) -> CliResult<Outcome> {
    if a.p + a.q > ENUMERATE_CAP {
        return Err(Error::CapExceeded {
            what: "p + q",
            got: a.p + a.q,
            cap: ENUMERATE_CAP,
        }
        .into());
    }
    let frame = AnnularFrame::new(a.p, a.q)?;
    let all = if a.exhaustive {
        if frame.n() > EXHAUSTIVE_CAP {
            return Err(Error::CapExceeded {
                what: "p + q",
                got: frame.n(),
                cap: EXHAUSTIVE_CAP,
            }
            .into());
        }
        enumerate_nc2_annular_exhaustive(frame)?
    } else {
        enumerate_nc2_annular(frame)
    };
    let mut rows = Vec::new();
    for pi in all {
        let s = spoke_count(&pi, frame)?;
        if a.spokes.is_some_and(|k| k != s) {
            continue;
        }
        rows.push((pi, s));
    }
    if a.format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "pairs", "spokes"]).map_err(csv_err)?;
        for (i, (pi, s)) in rows.iter().enumerate() {
            let pairs: Vec<String> = pi.to_one_based().iter().map(|(x, y)| format!("{x}-{y}")).collect();
            w.write_record([(i + 1).to_string(), pairs.join(" "), s.to_string()])
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| input(e.to_string()))?;
        return Ok(Outcome {
            text: String::from_utf8(bytes).expect("ascii"),
            failed: None,
            rejected: None,
        });
    }
    let mut diagrams = Vec::with_capacity(rows.len());
    for (i, (pi, s)) in rows.iter().enumerate() {
        let mut d = json!({ "index": i + 1, "pairs": json::pairing(pi), "spokes": s });
        if a.decompose {
            d["decomposition"] = json::spoke_arc(&decompose(pi, frame)?);
        }
        diagrams.push(d);
    }
    let mut params = Map::new();
    params.insert("p".into(), json!(a.p));
    params.insert("q".into(), json!(a.q));
    params.insert("spokes".into(), json!(a.spokes));
    params.insert("decompose".into(), json!(a.decompose));
    params.insert("exhaustive".into(), json!(a.exhaustive));
    let m = RunManifest::new("enumerate", params, None);
    Ok(Outcome::ok(m.wrap(json!({ "count": diagrams.len(), "diagrams": diagrams }))))
}

fn csv_err(e: csv::Error) -> CliError {
    input(e.to_string())
}

fn family_of(f: FamilyArg) -> Option<Family> {
    match f {
        FamilyArg::Pure => Some(Family::PurePure),
        FamilyArg::PureAdjoint => Some(Family::PureAdjoint),
        FamilyArg::Alternating => Some(Family::Alternating),
        FamilyArg::Custom => None,
    }
}

fn custom_word(tau: &Option<String>, colors: &Option<String>, side: &str) -> CliResult<Word> {
    let tau = tau
        .as_deref()
        .ok_or_else(|| input(format!("--family custom needs --tau-{side}")))?;
    let mut w: Word = tau.parse()?;
    if let Some(cs) = colors {
        let parsed = cs
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map(Color)
                    .map_err(|_| input(format!("bad color '{c}' in --colors-{side}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        if w.colors.iter().any(|&c| c != Color::default()) {
            return Err(input(format!("--tau-{side} already carries colors; drop --colors-{side}")));
        }
        w = Word::new(w.types, ColorWord(parsed))?;
    }
    if w.is_empty() {
        return Err(input(format!("--tau-{side} is empty")));
    }
    Ok(w)
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

type FamilyShape = (Family, usize, usize);

fn word_pair(a: &CovArgs) -> CliResult<(WordPair, Option<FamilyShape>)> {
    match family_of(a.family) {
        Some(fam) => {
            if a.tau_inner.is_some() || a.tau_outer.is_some() || a.colors_inner.is_some() || a.colors_outer.is_some() {
                return Err(input("word flags are only valid with --family custom"));
            }
            let (p, q) = match (a.p, a.q) {
                (Some(p), Some(q)) => (p, q),
                _ => return Err(input(format!("--family {} needs --p and --q", fam.name()))),
            };
            Ok((fam.word_pair(p, q)?, Some((fam, p, q))))
        }
        None => {
            if a.p.is_some() || a.q.is_some() {
                return Err(input("--p/--q are not used with --family custom"));
            }
            let inner = custom_word(&a.tau_inner, &a.colors_inner, "inner")?;
            let outer = custom_word(&a.tau_outer, &a.colors_outer, "outer")?;
            Ok((WordPair::new(inner, outer)?, None))
        }
    }
}

fn poly_value(p: &GammaPoly, gamma: &Option<GammaSpec>) -> CliResult<Value> {
    let mut v = json!({ "poly": json::poly(p), "text": p.to_string() });
    if let Some(g) = gamma {
        v["value"] = rational_json(&g.eval(p)?);
    }
    Ok(v)
}

fn cov(a: &CovArgs) -> CliResult<Outcome> {
    let (wp, family) = word_pair(a)?;
    let channel: Channel = a.channel.into();
    let gamma: Option<GammaSpec> = a.gamma.as_deref().map(str::parse).transpose()?;
    let colors = wp.joined().color_set();
    if let Some(g) = &gamma {
        g.floats(&colors)?;
    }
    if a.method != Method::Mc && (a.reps.is_some() || a.seed.is_some()) {
        return Err(input("--reps and --seed only apply to --method mc"));
    }
    if !matches!(a.method, Method::Mc | Method::Oracle) && a.n.is_some() {
        return Err(input("--N only applies to --method oracle or mc"));
    }

    let mut params = Map::new();
    params.insert("family".into(), json!(value_name(a.family)));
    params.insert("inner".into(), json!(wp.inner.to_string()));
    params.insert("outer".into(), json!(wp.outer.to_string()));
    params.insert("channel".into(), json!(channel.name()));
    params.insert("method".into(), json!(value_name(a.method)));
    params.insert("gamma".into(), json!(a.gamma));
    params.insert("check".into(), json!(a.check));
    if let Some((_, p, q)) = family {
        params.insert("p".into(), json!(p));
        params.insert("q".into(), json!(q));
    }

    let mut failed = None;
    let (result, seed) = match a.method {
        Method::Closed => {
            let (fam, p, q) = family.ok_or_else(|| input("--method closed needs a named family"))?;
            let closed = cov_limit_closed(fam, p, q, channel);
            let mut v = poly_value(&closed, &gamma)?;
            if a.check {
                let semi = cov_limit_semiclosed(&wp, channel);
                v["check"] = json!({ "against": "semiclosed", "other": semi.to_string(), "agree": semi == closed });
                if semi != closed {
                    failed = Some(format!("closed {closed} differs from semiclosed {semi}"));
                }
            }
            (v, None)
        }
        Method::Semiclosed => {
            let semi = cov_limit_semiclosed(&wp, channel);
            let mut v = poly_value(&semi, &gamma)?;
            if a.check {
                let (against, other) = match family {
                    Some((fam, p, q)) => ("closed", cov_limit_closed(fam, p, q, channel)),
                    None => ("oracle", oracle(&wp, channel)?.coeff(0)),
                };
                v["check"] = json!({ "against": against, "other": other.to_string(), "agree": other == semi });
                if other != semi {
                    failed = Some(format!("semiclosed {semi} differs from {against} {other}"));
                }
            }
            (v, None)
        }
        Method::Oracle => {
            let k2 = oracle(&wp, channel)?;
            let mut v = json!({ "expansion": json::expansion(&k2) });
            if let (Some(g), Some(n)) = (&gamma, a.n) {
                v["N"] = json!(n);
                v["value"] = rational_json(&g.eval_expansion(&k2, n as u64)?);
            }
            if a.check {
                let semi = cov_limit_semiclosed(&wp, channel);
                let agree = k2.coeff(0) == semi;
                v["check"] = json!({ "against": "semiclosed", "other": semi.to_string(), "agree": agree });
                if !agree {
                    failed = Some(format!("oracle leading term {} differs from semiclosed {semi}", k2.coeff(0)));
                }
            }
            (v, None)
        }
        Method::Mc => {
            if a.symbolic {
                return Err(input("--method mc needs a numeric --gamma"));
            }
            let g = gamma.as_ref().ok_or_else(|| input("--method mc needs --gamma"))?;
            let n = a.n.unwrap_or(128);
            let reps = a.reps.unwrap_or(20_000);
            let seed = a.seed.unwrap_or(0);
            let spec = EnsembleSpec::new(n, g.floats(&colors)?, channel, seed)?;
            let est = mc::estimate_cov(&spec, &wp, reps)?;
            let mut v = json::cov_estimate(&est, n, spec.gammas());
            if a.check {
                let target = mc::oracle_value(&spec, &wp)?;
                let agree = mc::within(&est, target, 4.0);
                v["check"] = json!({ "against": "oracle", "other": target, "tolerance_se": 4.0, "agree": agree });
                if !agree {
                    failed = Some(format!(
                        "estimate {} is more than 4 SE ({}) from the oracle value {target}",
                        est.estimate, est.se
                    ));
                }
            }
            params.insert("N".into(), json!(n));
            params.insert("reps".into(), json!(reps));
            (v, Some(seed))
        }
    };
    if a.method == Method::Oracle {
        params.insert("N".into(), json!(a.n));
    }
    let m = RunManifest::new("cov", params, seed);
    Ok(Outcome {
        text: pretty(&m.wrap(result)),
        failed,
        rejected: None,
    })
}

fn oracle(wp: &WordPair, channel: Channel) -> CliResult<ellfluct_core::NExpansion> {
    Ok(exact_cumulant(&TraceWordSystem::pair(
        wp.inner.clone(),
        wp.outer.clone(),
        channel,
    )?)?)
}

fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let grid = match &a.grid {
        Some(path) => Some(json::grid_from(&std::fs::read_to_string(path)?)?),
        None => None,
    };
    let opts = SuiteOptions {
        max_letters: a.max_letters,
        grid,
    };
    let reports = suites::run(a.suite, &opts);
    let mut params = Map::new();
    params.insert("suite".into(), json!(a.suite.name()));
    params.insert("max_letters".into(), json!(a.max_letters));
    params.insert("grid".into(), json!(a.grid.as_ref().map(|p| p.display().to_string())));
    let m = RunManifest::new("verify", params, None);
    let failed_checks: usize = reports.iter().map(|r| r.failures().count()).sum();
    let rejected: usize = reports.iter().map(|r| r.rejected()).sum();
    let body = json!({
        "passed": failed_checks == 0 && rejected == 0,
        "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text: pretty(&m.wrap(body)),
        failed: (failed_checks > 0).then(|| format!("{failed_checks} check(s) failed")),
        rejected: (rejected > 0).then(|| format!("{rejected} grid case(s) rejected as invalid input")),
    })
}
