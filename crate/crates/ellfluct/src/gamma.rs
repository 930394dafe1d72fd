//! Ellipticity parameters given on the command line, kept exact where the
//! input allows.

use std::collections::BTreeMap;
use std::str::FromStr;

use ellfluct_core::{Color, GammaPoly, NExpansion};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{CliError, CliResult};

/// Per-color `γ`, exact. A bare value applies to every color.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSpec {
    default: Option<BigRational>,
    by_color: BTreeMap<Color, BigRational>,
}

/// Exact value of a decimal (`-0.25`, `1e-3` is not accepted) or a fraction
/// (`1/3`).
pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let s = s.trim();
    let bad = || CliError::Input(format!("cannot read '{s}' as a number"));
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|_| bad());
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(digits, den);
    Ok(if neg { -r } else { r })
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl GammaSpec {
    pub fn value(&self, c: Color) -> CliResult<&BigRational> {
        self.by_color
            .get(&c)
            .or(self.default.as_ref())
            .ok_or_else(|| CliError::Input(format!("no gamma given for color {c}")))
    }

    pub fn value_f64(&self, c: Color) -> CliResult<f64> {
        self.value(c).map(to_f64)
    }

    /// Float values for `colors`, checked to lie in `[-1, 1]`.
    pub fn floats(&self, colors: &[Color]) -> CliResult<BTreeMap<Color, f64>> {
        let mut out = BTreeMap::new();
        for &c in colors {
            let g = self.value_f64(c)?;
            if !(-1.0..=1.0).contains(&g) {
                return Err(CliError::Input(format!("gamma {g} for color {c} is outside [-1, 1]")));
            }
            out.insert(c, g);
        }
        Ok(out)
    }

    /// Exact value of `p` at these parameters.
    pub fn eval(&self, p: &GammaPoly) -> CliResult<BigRational> {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for (m, c) in p.terms() {
            let mut t = BigRational::from_integer(BigInt::from(c));
            for &(col, e) in m.exps() {
                t *= self.value(col)?.pow(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact value of an expansion at integer `n`.
    pub fn eval_expansion(&self, e: &NExpansion, n: u64) -> CliResult<BigRational> {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for (k, p) in e.terms() {
            acc += self.eval(p)? * nn.pow(k);
        }
        Ok(acc)
    }
}

/// `0.5` or `1=0.5,2=-1/3`.
impl FromStr for GammaSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let mut spec = GammaSpec {
            default: None,
            by_color: BTreeMap::new(),
        };
        for part in s.split(',') {
            match part.split_once('=') {
                Some((c, v)) => {
                    let c: u32 = c
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad color '{c}' in gamma list")))?;
                    spec.by_color.insert(Color(c), parse_rational(v)?);
                }
                None if spec.default.is_none() => spec.default = Some(parse_rational(part)?),
                None => return Err(CliError::Input(format!("gamma list '{s}' has two bare values"))),
            }
        }
        Ok(spec)
    }
}

pub fn rational_json(r: &BigRational) -> serde_json::Value {
    serde_json::json!({ "exact": r.to_string(), "float": to_f64(r) })
}
