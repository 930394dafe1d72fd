//! Finite Laurent expansions in `N` with polynomial coefficients.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::poly::GammaPoly;

/// `Σ_e c_e · N^e`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NExpansion {
    terms: BTreeMap<i32, GammaPoly>,
}

impl NExpansion {
    pub fn zero() -> Self {
        NExpansion::default()
    }

    pub fn term(exp: i32, coeff: GammaPoly) -> Self {
        let mut e = NExpansion::zero();
        e.add_term(exp, &coeff);
        e
    }

    pub fn add_term(&mut self, exp: i32, coeff: &GammaPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `N^exp` (zero if absent).
    pub fn coeff(&self, exp: i32) -> GammaPoly {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GammaPoly)> {
        self.terms.iter().map(|(&e, p)| (e, p))
    }

    pub fn exponents(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `N^k`.
    pub fn shift(&self, k: i32) -> Self {
        NExpansion {
            terms: self.terms.iter().map(|(&e, p)| (e + k, p.clone())).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = NExpansion::zero();
        for (&e, p) in &self.terms {
            out.add_term(e, &p.scale(k));
        }
        out
    }

    pub fn mul_poly(&self, p: &GammaPoly) -> Self {
        let mut out = NExpansion::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, &(c * p));
        }
        out
    }

    /// Numeric value at a given `N`, with `gamma` substituted per color.
    pub fn eval_f64(&self, n: f64, gamma: &dyn Fn(crate::Color) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, p)| p.eval_f64(gamma) * libm::pow(n, e as f64))
            .sum()
    }
}

impl fmt::Debug for NExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Highest power first, e.g. `(g1^2 + 1) + (3)*N^-2`.
impl fmt::Display for NExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, p)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            if *e != 0 {
                write!(f, "*N^{e}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&NExpansion> for NExpansion {
    fn add_assign(&mut self, rhs: &NExpansion) {
        for (&e, p) in &rhs.terms {
            self.add_term(e, p);
        }
    }
}

impl Add<&NExpansion> for &NExpansion {
    type Output = NExpansion;
    fn add(self, rhs: &NExpansion) -> NExpansion {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&NExpansion> for &NExpansion {
    type Output = NExpansion;
    fn sub(self, rhs: &NExpansion) -> NExpansion {
        let mut out = self.clone();
        out += &rhs.scale(-1);
        out
    }
}

impl Neg for NExpansion {
    type Output = NExpansion;
    fn neg(self) -> NExpansion {
        self.scale(-1)
    }
}

impl Mul<&NExpansion> for &NExpansion {
    type Output = NExpansion;
    fn mul(self, rhs: &NExpansion) -> NExpansion {
        let mut out = NExpansion::zero();
        for (&e1, p1) in &self.terms {
            for (&e2, p2) in &rhs.terms {
                out.add_term(e1 + e2, &(p1 * p2));
            }
        }
        out
    }
}

impl From<GammaPoly> for NExpansion {
    fn from(p: GammaPoly) -> Self {
        NExpansion::term(0, p)
    }
}

impl Add<NExpansion> for NExpansion {
    type Output = NExpansion;
    fn add(mut self, rhs: NExpansion) -> NExpansion {
        self += &rhs;
        self
    }
}

impl Add<&NExpansion> for NExpansion {
    type Output = NExpansion;
    fn add(mut self, rhs: &NExpansion) -> NExpansion {
        self += rhs;
        self
    }
}
