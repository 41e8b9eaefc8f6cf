//! Two-chart Čech cohomology of `O(d)` on the projective line.
//!
//! Conventions, used by every module in the crate:
//!
//! * `U₀` has coordinate `z`, `U₁` has coordinate `w = 1/z`.
//! * `O(d)` has frames `e⁰` on `U₀` and `e¹` on `U₁` with `e⁰ = z^{−d}·e¹`
//!   on the overlap. A chart-0 section `p(z)·e⁰` is global iff `p` is a
//!   polynomial of degree at most `d`.
//! * Overlap sections are written in the chart-0 frame as Laurent
//!   polynomials in `z`. The coboundary of `(s₀, s₁) = (p(z)e⁰, q(w)e¹)` is
//!   `s₀ − s₁ = p(z) − z^d·q(1/z)`.
//! * The canonical basis of `H¹(O(d))` is the monomials `z^{−1}, …, z^{d+1}`
//!   (empty for `d ≥ −1`).
//!
//! [`cech_dims`] computes `h⁰` and `h¹` as kernel and cokernel of the
//! coboundary over a truncated exponent window, by exact rank computation.
//! [`reduce_class`] reads classes off the canonical basis directly; the two
//! are cross-checked against each other in the tests.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentSection;
use crate::linalg::SparseMatrix;
use crate::{Error, Rational, Result};

/// Exponent window `[−n, n]` used to truncate Laurent data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window(pub u32);

impl Window {
    pub const DEFAULT: Window = Window(64);

    pub fn bound(self) -> i64 {
        i64::from(self.0)
    }

    pub fn contains(self, exponent: i64) -> bool {
        exponent.abs() <= self.bound()
    }

    /// Smallest window for which truncation cannot change the answer for
    /// `O(d)`.
    pub fn required_for(degree: i64) -> u32 {
        (degree.unsigned_abs() + 2) as u32
    }

    pub fn check_degree(self, degree: i64) -> Result<()> {
        let needed = Self::required_for(degree);
        if self.0 < needed {
            return Err(Error::WindowTooSmall {
                window: self.0,
                degree,
                needed,
            });
        }
        Ok(())
    }

    pub fn check_section(self, section: &LaurentSection) -> Result<()> {
        for (e, _) in section.terms() {
            if !self.contains(e) {
                return Err(Error::WindowViolation {
                    exponent: e,
                    window: self.0,
                });
            }
        }
        Ok(())
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::DEFAULT
    }
}

/// The truncated Čech coboundary `C⁰ → C¹` for `O(d)`.
///
/// `C⁰` has basis `z^j e⁰` (`0 ≤ j ≤ n`) followed by `w^j e¹`
/// (`0 ≤ j ≤ n + d`); `C¹` has basis `z^e e⁰` for `−n ≤ e ≤ n`.
struct Coboundary {
    window: i64,
    matrix: SparseMatrix,
}

impl Coboundary {
    fn new(degree: i64, window: Window) -> Result<Self> {
        window.check_degree(degree)?;
        let n = window.bound();
        let chart0 = n + 1;
        let chart1 = n + degree + 1;
        let c1_dim = (2 * n + 1) as usize;
        let row_of = |e: i64| (e + n) as usize;
        // one row per C⁰ basis vector: its image in C¹
        let mut images = SparseMatrix::new(c1_dim);
        for j in 0..chart0 {
            images.push_row([(row_of(j), Rational::from_integer(1.into()))]);
        }
        for j in 0..chart1 {
            images.push_row([(row_of(degree - j), Rational::from_integer((-1).into()))]);
        }
        Ok(Self {
            window: n,
            matrix: images.transpose(),
        })
    }

    fn c0_dim(&self) -> usize {
        self.matrix.cols()
    }

    fn c1_dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn image_rows(&self) -> SparseMatrix {
        self.matrix.transpose()
    }
}

/// `(h⁰, h¹)` of `O(d)` on the projective line, as kernel and cokernel
/// dimensions of the truncated Čech coboundary.
pub fn cech_dims(degree: i64, window: Window) -> Result<(u64, u64)> {
    let cob = Coboundary::new(degree, window)?;
    let rank = cob.matrix.rank();
    Ok(((cob.c0_dim() - rank) as u64, (cob.c1_dim() - rank) as u64))
}

/// A basis of `H⁰(O(d))` as chart-0 polynomials, from the kernel of the
/// coboundary.
pub fn cech_h0_basis(degree: i64, window: Window) -> Result<Vec<LaurentSection>> {
    let cob = Coboundary::new(degree, window)?;
    let chart0 = (cob.window + 1) as usize;
    let mut basis: Vec<LaurentSection> = cob
        .matrix
        .kernel()
        .into_iter()
        .map(|v| {
            LaurentSection::from_terms(
                v.into_iter()
                    .take(chart0)
                    .enumerate()
                    .map(|(j, c)| (j as i64, c)),
            )
        })
        .collect();
    basis.sort_by_key(|p| p.max_exponent());
    Ok(basis)
}

/// Exponents of overlap monomials that are independent modulo coboundaries,
/// found greedily against the image of the coboundary.
pub fn cech_h1_monomials(degree: i64, window: Window) -> Result<Vec<i64>> {
    let cob = Coboundary::new(degree, window)?;
    let mut span = cob.image_rows();
    let mut picked = Vec::new();
    for e in (-cob.window..=cob.window).rev() {
        let mut unit = vec![Rational::zero(); cob.c1_dim()];
        unit[(e + cob.window) as usize] = Rational::from_integer(1.into());
        if !span.row_span_contains(&unit) {
            span.push_row(unit.into_iter().enumerate());
            picked.push(e);
        }
    }
    Ok(picked)
}

/// Exponents of the canonical `H¹(O(d))` basis, in coordinate order
/// `z^{−1}, z^{−2}, …, z^{d+1}`.
pub fn h1_basis_exponents(degree: i64) -> Vec<i64> {
    ((degree + 1)..=-1).rev().collect()
}

/// A class in `H¹(P¹, O(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CechClass {
    pub bundle_degree: i64,
    /// Canonical representative: only exponents in `[d + 1, −1]`.
    pub representative: LaurentSection,
    /// Coefficients on `z^{−1}, …, z^{d+1}`.
    pub coordinates: Vec<Rational>,
}

impl CechClass {
    pub fn zero(degree: i64) -> Self {
        Self::from_coordinates(degree, vec![Rational::zero(); h1_basis_exponents(degree).len()])
    }

    pub fn from_coordinates(degree: i64, coordinates: Vec<Rational>) -> Self {
        let exps = h1_basis_exponents(degree);
        assert_eq!(exps.len(), coordinates.len(), "coordinate count for O({degree})");
        let representative =
            LaurentSection::from_terms(exps.into_iter().zip(coordinates.iter().cloned()));
        Self {
            bundle_degree: degree,
            representative,
            coordinates,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coordinates(
            self.bundle_degree,
            self.coordinates.iter().map(|x| x * c).collect(),
        )
    }
}

impl fmt::Display for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H1(O({}))[", self.bundle_degree)?;
        for (i, c) in self.coordinates.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A cocycle split as `cocycle = chart0(z) − z^d·chart1(1/z) + canonical`,
/// with `chart0` holomorphic on `U₀` and `chart1` holomorphic on `U₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub chart0: LaurentSection,
    /// In the chart-1 coordinate `w`.
    pub chart1: LaurentSection,
    pub class: CechClass,
}

pub fn decompose(degree: i64, cocycle: &LaurentSection, window: Window) -> Result<Decomposition> {
    window.check_section(cocycle)?;
    let mut chart0 = LaurentSection::zero();
    let mut chart1 = LaurentSection::zero();
    let mut canonical = LaurentSection::zero();
    for (e, c) in cocycle.terms() {
        if e >= 0 {
            chart0.add_term(e, c.clone());
        } else if e <= degree {
            // z^e = −z^d·(−w^{d−e})
            chart1.add_term(degree - e, -c.clone());
        } else {
            canonical.add_term(e, c.clone());
        }
    }
    let coordinates = h1_basis_exponents(degree)
        .into_iter()
        .map(|e| canonical.coeff(e))
        .collect();
    Ok(Decomposition {
        chart0,
        chart1,
        class: CechClass {
            bundle_degree: degree,
            representative: canonical,
            coordinates,
        },
    })
}

/// Reduce an overlap 1-cocycle of `O(d)` to its canonical class.
pub fn reduce_class(degree: i64, cocycle: &LaurentSection, window: Window) -> Result<CechClass> {
    decompose(degree, cocycle, window).map(|d| d.class)
}

/// The Čech coboundary `p(z) − z^d·q(1/z)` of a pair of chart sections.
pub fn coboundary(degree: i64, chart0: &LaurentSection, chart1: &LaurentSection) -> LaurentSection {
    chart0 - &chart1.reflect().shift(degree)
}

/// The transition conventions, fixed for the whole crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionConvention {
    pub degree: i64,
    pub charts: &'static str,
    pub frames: String,
    pub coboundary: String,
    pub global_sections: String,
    pub h1_basis: String,
    pub tangent: &'static str,
    pub odd_generators: &'static str,
}

pub fn transition_convention(degree: i64) -> TransitionConvention {
    let h0 = if degree >= 0 {
        format!("chart-0 polynomials spanned by z^0..z^{degree}")
    } else {
        "none".to_string()
    };
    let h1 = if degree <= -2 {
        format!("z^-1..z^{}", degree + 1)
    } else {
        "empty".to_string()
    };
    TransitionConvention {
        degree,
        charts: "U0 coordinate z, U1 coordinate w = 1/z",
        frames: format!("e0 = z^{} * e1", -degree),
        coboundary: format!("(p(z) e0, q(w) e1) -> p(z) - z^{degree} q(1/z)"),
        global_sections: h0,
        h1_basis: h1,
        tangent: "d/dz = -w^2 d/dw",
        odd_generators: "theta_a(0) = z^(-d_a) theta_a(1)",
    }
}
