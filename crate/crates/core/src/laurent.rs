//! Finite Laurent polynomials in one variable with exact rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::Rational;

/// A finite Laurent polynomial `Σ cₙ zⁿ`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentSection {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentSection {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(coeff: Rational, exponent: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(exponent, coeff);
        out
    }

    /// `zⁿ` with coefficient one.
    pub fn z_pow(exponent: i64) -> Self {
        Self::monomial(Rational::one(), exponent)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exponent: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True if every exponent is non-negative, i.e. the section extends over
    /// the origin of its chart.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by `zᵏ`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// `f(z) ↦ f(1/z)`: rewrites a section in the opposite chart coordinate.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (-e, v.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, v)| (e - 1, v * Rational::from_integer((*e).into()))),
        )
    }

    /// Keep only the terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(i64) -> bool) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| keep(**e))
                .map(|(e, v)| (*e, v.clone()))
                .collect(),
        }
    }

    /// If the section is `c·zᵉ`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }
}

impl fmt::Debug for LaurentSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let unit = c.is_one();
            match *e {
                0 => write!(f, "{c}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if unit => write!(f, "z^{e}")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentSection> for &LaurentSection {
    type Output = LaurentSection;
    fn add(self, rhs: &LaurentSection) -> LaurentSection {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentSection {
    type Output = LaurentSection;
    fn add(mut self, rhs: LaurentSection) -> LaurentSection {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentSection> for LaurentSection {
    fn add_assign(&mut self, rhs: &LaurentSection) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&LaurentSection> for &LaurentSection {
    type Output = LaurentSection;
    fn sub(self, rhs: &LaurentSection) -> LaurentSection {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentSection {
    type Output = LaurentSection;
    fn sub(mut self, rhs: LaurentSection) -> LaurentSection {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentSection> for LaurentSection {
    fn sub_assign(&mut self, rhs: &LaurentSection) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Neg for &LaurentSection {
    type Output = LaurentSection;
    fn neg(self) -> LaurentSection {
        LaurentSection {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentSection {
    type Output = LaurentSection;
    fn neg(self) -> LaurentSection {
        -&self
    }
}

impl Mul<&LaurentSection> for &LaurentSection {
    type Output = LaurentSection;
    fn mul(self, rhs: &LaurentSection) -> LaurentSection {
        let mut out = LaurentSection::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentSection {
    type Output = LaurentSection;
    fn mul(self, rhs: LaurentSection) -> LaurentSection {
        &self * &rhs
    }
}
