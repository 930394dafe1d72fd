//! Sparse polynomials with integer coefficients in the per-color
//! ellipticity parameters `γ_c`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Identifies an independent ensemble. Color 1 is the default for
/// single-color words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u32);

impl Default for Color {
    fn default() -> Self {
        Color(1)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Product `Π γ_c^{e_c}`, stored as `(color, exponent)` sorted by color with
/// no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Color, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(c: Color, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(c, e)])
        }
    }

    /// Builds from arbitrary `(color, exponent)` pairs, merging repeats.
    pub fn from_exps<I: IntoIterator<Item = (Color, u32)>>(exps: I) -> Self {
        let mut map: BTreeMap<Color, u32> = BTreeMap::new();
        for (c, e) in exps {
            *map.entry(c).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exps(&self) -> &[(Color, u32)] {
        &self.0
    }

    pub fn exp(&self, c: Color) -> u32 {
        self.0
            .iter()
            .find(|(d, _)| *d == c)
            .map_or(0, |&(_, e)| e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn eval_f64(&self, gamma: &dyn Fn(Color) -> f64) -> f64 {
        self.0
            .iter()
            .map(|&(c, e)| powi(gamma(c), e))
            .product()
    }
}

fn powi(x: f64, e: u32) -> f64 {
    (0..e).fold(1.0, |acc, _| acc * x)
}

/// Exact polynomial in the `γ_c`. Zero coefficients are never stored, so
/// structural equality is coefficientwise equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        GammaPoly::default()
    }

    pub fn one() -> Self {
        GammaPoly::constant(1)
    }

    pub fn constant(k: i64) -> Self {
        GammaPoly::term(k, Monomial::one())
    }

    /// `γ_c^e`.
    pub fn gamma_pow(c: Color, e: u32) -> Self {
        GammaPoly::term(1, Monomial::var(c, e))
    }

    /// `γ^e` for the default color.
    pub fn gamma(e: u32) -> Self {
        GammaPoly::gamma_pow(Color::default(), e)
    }

    pub fn term(coeff: i64, m: Monomial) -> Self {
        let mut p = GammaPoly::zero();
        p.add_term(coeff, m);
        p
    }

    pub fn add_term(&mut self, coeff: i64, m: Monomial) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return GammaPoly::zero();
        }
        GammaPoly {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        GammaPoly {
            terms: self.terms.iter().map(|(n, &c)| (n.mul(m), c)).collect(),
        }
    }

    pub fn eval_f64(&self, gamma: &dyn Fn(Color) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, &c)| c as f64 * m.eval_f64(gamma))
            .sum()
    }

    /// Evaluates with the same value substituted for every color.
    pub fn eval_uniform(&self, gamma: f64) -> f64 {
        self.eval_f64(&|_| gamma)
    }

    /// Colors that occur with a positive exponent.
    pub fn colors(&self) -> Vec<Color> {
        let mut cs: Vec<Color> = self
            .terms
            .keys()
            .flat_map(|m| m.exps().iter().map(|&(c, _)| c))
            .collect();
        cs.sort();
        cs.dedup();
        cs
    }
}

impl fmt::Debug for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Highest degree first, e.g. `9*g1^2 + 3`.
impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            for (j, &(col, e)) in m.exps().iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "g{col}")?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl AddAssign<&GammaPoly> for GammaPoly {
    fn add_assign(&mut self, rhs: &GammaPoly) {
        for (m, &c) in &rhs.terms {
            self.add_term(c, m.clone());
        }
    }
}

impl AddAssign for GammaPoly {
    fn add_assign(&mut self, rhs: GammaPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&GammaPoly> for GammaPoly {
    fn sub_assign(&mut self, rhs: &GammaPoly) {
        for (m, &c) in &rhs.terms {
            self.add_term(-c, m.clone());
        }
    }
}

impl Add for GammaPoly {
    type Output = GammaPoly;
    fn add(mut self, rhs: GammaPoly) -> GammaPoly {
        self += &rhs;
        self
    }
}

impl Add<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;
    fn add(self, rhs: &GammaPoly) -> GammaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for GammaPoly {
    type Output = GammaPoly;
    fn sub(mut self, rhs: GammaPoly) -> GammaPoly {
        self -= &rhs;
        self
    }
}

impl Sub<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;
    fn sub(self, rhs: &GammaPoly) -> GammaPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        self.scale(-1)
    }
}

impl Mul<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;
    fn mul(self, rhs: &GammaPoly) -> GammaPoly {
        let mut out = GammaPoly::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl Mul for GammaPoly {
    type Output = GammaPoly;
    fn mul(self, rhs: GammaPoly) -> GammaPoly {
        &self * &rhs
    }
}

impl Sum for GammaPoly {
    fn sum<I: Iterator<Item = GammaPoly>>(iter: I) -> GammaPoly {
        let mut acc = GammaPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<'a> Sum<&'a GammaPoly> for GammaPoly {
    fn sum<I: Iterator<Item = &'a GammaPoly>>(iter: I) -> GammaPoly {
        let mut acc = GammaPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl From<i64> for GammaPoly {
    fn from(k: i64) -> Self {
        GammaPoly::constant(k)
    }
}
