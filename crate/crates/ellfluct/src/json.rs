//! JSON forms of the core types. Positions are 1-based here.

use std::collections::BTreeMap;

use ellfluct_core::freeness::{CaseOutcome, CaseResult, Cluster, ClusterWord, FreenessCase};
use ellfluct_core::sampler::{CovEstimate, GENERATOR};
use ellfluct_core::{AnnularFrame, Channel, Color, GammaPoly, NExpansion, Pairing, SpokeArcConfig, TypeWord};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

pub fn pairing(pi: &Pairing) -> Value {
    json!(pi.to_one_based().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
}

/// Arc pairings are local to their arc, so they are relabelled `1..=len`.
pub fn spoke_arc(cfg: &SpokeArcConfig) -> Value {
    json!({
        "a": cfg.a,
        "U": cfg.u.iter().map(|u| u + 1).collect::<Vec<_>>(),
        "V": cfg.v.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "iota": cfg.iota,
        "o": cfg.o,
        "inner_pairings": cfg.inner_pairings.iter().map(pairing).collect::<Vec<_>>(),
        "outer_pairings": cfg.outer_pairings.iter().map(pairing).collect::<Vec<_>>(),
    })
}

pub fn spoke_arc_from(v: &Value, frame: AnnularFrame) -> CliResult<SpokeArcConfig> {
    #[derive(Deserialize)]
    struct Raw {
        a: usize,
        #[serde(rename = "U")]
        u: Vec<usize>,
        #[serde(rename = "V")]
        v: Vec<usize>,
        iota: Vec<usize>,
        o: Vec<usize>,
        inner_pairings: Vec<Vec<(usize, usize)>>,
        outer_pairings: Vec<Vec<(usize, usize)>>,
    }
    let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let zero_based = |xs: &[usize]| -> CliResult<Vec<usize>> {
        xs.iter()
            .map(|&x| x.checked_sub(1).ok_or_else(|| CliError::Input("positions are 1-based".into())))
            .collect()
    };
    let arcs = |lens: &[usize], ps: &[Vec<(usize, usize)>]| -> CliResult<Vec<Pairing>> {
        if lens.len() != ps.len() {
            return Err(CliError::Input("one pairing per arc is required".into()));
        }
        lens.iter()
            .zip(ps)
            .map(|(&n, p)| Ok(Pairing::from_one_based(n, p)?))
            .collect()
    };
    let cfg = SpokeArcConfig {
        a: raw.a,
        u: zero_based(&raw.u)?,
        v: zero_based(&raw.v)?,
        inner_pairings: arcs(&raw.iota, &raw.inner_pairings)?,
        outer_pairings: arcs(&raw.o, &raw.outer_pairings)?,
        iota: raw.iota,
        o: raw.o,
    };
    cfg.validate(frame)?;
    Ok(cfg)
}

/// `[{coeff, exps: {"1": e1, ...}}, ...]`, highest monomial first.
pub fn poly(p: &GammaPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(m, c)| {
            let exps: BTreeMap<String, u32> = m.exps().iter().map(|(col, e)| (col.0.to_string(), *e)).collect();
            json!({ "coeff": c, "exps": exps })
        })
        .collect();
    Value::Array(terms)
}

pub fn poly_from(v: &Value) -> CliResult<GammaPoly> {
    #[derive(Deserialize)]
    struct Term {
        coeff: i64,
        exps: BTreeMap<u32, u32>,
    }
    let terms: Vec<Term> = serde_json::from_value(v.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let mut out = GammaPoly::zero();
    for t in terms {
        out.add_term(t.coeff, ellfluct_core::Monomial::from_exps(t.exps.into_iter().map(|(c, e)| (Color(c), e))));
    }
    Ok(out)
}

pub fn expansion(e: &NExpansion) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(k, p)| json!({ "n_exp": k, "poly": poly(p), "text": p.to_string() }))
        .collect();
    json!({ "terms": terms, "text": e.to_string() })
}

pub fn gammas(g: &BTreeMap<Color, f64>) -> Value {
    let m: BTreeMap<String, f64> = g.iter().map(|(c, v)| (c.0.to_string(), *v)).collect();
    json!(m)
}

pub fn cov_estimate(est: &CovEstimate, n: usize, gamma: &BTreeMap<Color, f64>) -> Value {
    json!({
        "estimate": [est.estimate.re, est.estimate.im],
        "se": est.se,
        "reps": est.reps,
        "N": n,
        "gamma": gammas(gamma),
        "seed": est.seed,
        "generator": GENERATOR,
    })
}

pub fn channel_from(s: &str) -> CliResult<Channel> {
    match s {
        "complex" => Ok(Channel::Complex),
        "real" => Ok(Channel::Real),
        _ => Err(CliError::Input(format!("unknown channel '{s}'"))),
    }
}

fn cluster_word(v: &[(u32, String)]) -> CliResult<ClusterWord> {
    let clusters = v
        .iter()
        .map(|(c, w)| {
            let types: TypeWord = w.parse()?;
            Ok(Cluster::new(Color(*c), types)?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ClusterWord::new(clusters)?)
}

fn cluster_word_json(w: &ClusterWord) -> Value {
    json!(w.clusters().iter().map(|c| json!([c.color.0, c.types.to_string()])).collect::<Vec<_>>())
}

/// Grid file: `[{inner: [[color, "xs"], ...], outer: [...], channel}, ...]`.
pub fn grid_from(text: &str) -> CliResult<Vec<FreenessCase>> {
    #[derive(Deserialize)]
    struct Raw {
        inner: Vec<(u32, String)>,
        outer: Vec<(u32, String)>,
        channel: String,
    }
    let raw: Vec<Raw> = serde_json::from_str(text).map_err(|e| CliError::Input(format!("grid file: {e}")))?;
    raw.iter()
        .map(|r| {
            Ok(FreenessCase {
                inner: cluster_word(&r.inner)?,
                outer: cluster_word(&r.outer)?,
                channel: channel_from(&r.channel)?,
            })
        })
        .collect()
}

pub fn grid(cases: &[FreenessCase]) -> Value {
    json!(cases
        .iter()
        .map(|c| json!({
            "inner": cluster_word_json(&c.inner),
            "outer": cluster_word_json(&c.outer),
            "channel": c.channel.name(),
        }))
        .collect::<Vec<_>>())
}

pub fn freeness_result(r: &CaseResult) -> Value {
    let mut v = json!({
        "inner": cluster_word_json(&r.case.inner),
        "outer": cluster_word_json(&r.case.outer),
        "channel": r.case.channel.name(),
        "passed": r.passed(),
    });
    match &r.outcome {
        CaseOutcome::Checked {
            centered,
            sstar,
            rhs,
            order_reversing,
        } => {
            v["centered"] = json!(centered.to_string());
            v["sstar"] = json!(sstar.to_string());
            v["rhs"] = json!(rhs.to_string());
            v["order_reversing"] = json!(order_reversing);
            v["centered_poly"] = poly(centered);
        }
        CaseOutcome::Rejected(msg) => v["rejected"] = json!(msg),
    }
    v
}
