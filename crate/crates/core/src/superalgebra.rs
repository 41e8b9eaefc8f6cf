//! The exterior algebra `O(U)[θ₁, …, θₙ]` over a chart of a curve, with
//! coefficients Laurent polynomials in the chart coordinate.
//!
//! This is the local model of a supermanifold modelled on a split bundle.
//! [`SuperMap`] represents an even algebra automorphism covering the identity
//! of the base, given by the images of the generators `x, θ₁, …, θₙ`.
//! Such a map acts on a coefficient function by the finite Taylor expansion
//! `f(x + X) = Σ f⁽ᵐ⁾(x)·Xᵐ/m!`, which is exact because `X` is nilpotent.
//!
//! [`change_chart`] rewrites a map given in one chart of the projective line
//! in the generators of the other, using `y = 1/x` and `η_a = x^{d_a}·θ_a`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::laurent::LaurentSection;
use crate::{Error, Rational, Result};

/// Monomial `θ_S` as a bitmask over generator indices `0..n`.
pub type Mask = u32;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

fn indices(mask: Mask) -> impl Iterator<Item = usize> {
    (0..Mask::BITS as usize).filter(move |i| mask & (1 << i) != 0)
}

/// Sign of `θ_S·θ_T` relative to `θ_{S∪T}` (with generators in increasing
/// order), or `None` when `S ∩ T ≠ ∅`.
fn wedge_sign(s: Mask, t: Mask) -> Option<i32> {
    if s & t != 0 {
        return None;
    }
    // count pairs (a ∈ S, b ∈ T) with a > b
    let inversions: u32 = indices(t).map(|b| (s >> (b + 1)).count_ones()).sum();
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// An element `Σ_S f_S(x)·θ_S`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperFn {
    n: usize,
    terms: BTreeMap<Mask, LaurentSection>,
}

impl SuperFn {
    pub fn zero(n: usize) -> Self {
        assert!(n < Mask::BITS as usize);
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, f: LaurentSection) -> Self {
        Self::term(n, 0, f)
    }

    /// The chart coordinate `x` itself.
    pub fn coordinate(n: usize) -> Self {
        Self::scalar(n, LaurentSection::z_pow(1))
    }

    /// The generator `θ_a` (zero-based index).
    pub fn theta(n: usize, a: usize) -> Self {
        assert!(a < n);
        Self::term(n, 1 << a, LaurentSection::one())
    }

    /// `f·θ_S`.
    pub fn term(n: usize, mask: Mask, f: LaurentSection) -> Self {
        let mut out = Self::zero(n);
        out.add_term(mask, &f);
        out
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    fn add_term(&mut self, mask: Mask, f: &LaurentSection) {
        assert!(mask >> self.n == 0, "mask outside generator range");
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot += f;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> LaurentSection {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &LaurentSection)> + '_ {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    pub fn body(&self) -> LaurentSection {
        self.coeff(0)
    }

    /// Part of exterior degree exactly `k`.
    pub fn degree_part(&self, k: u32) -> SuperFn {
        self.filter(|m| m.count_ones() == k)
    }

    /// Part of exterior degree at least `k`.
    pub fn degree_at_least(&self, k: u32) -> SuperFn {
        self.filter(|m| m.count_ones() >= k)
    }

    fn filter(&self, keep: impl Fn(Mask) -> bool) -> SuperFn {
        SuperFn {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, f)| (*m, f.clone()))
                .collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    pub fn scale(&self, c: &Rational) -> SuperFn {
        self.map_coeffs(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, f: &LaurentSection) -> SuperFn {
        self.map_coeffs(|g| g * f)
    }

    pub fn map_coeffs(&self, op: impl Fn(&LaurentSection) -> LaurentSection) -> SuperFn {
        let mut out = SuperFn::zero(self.n);
        for (m, f) in &self.terms {
            out.add_term(*m, &op(f));
        }
        out
    }

    /// Derivative of every coefficient in the chart coordinate.
    pub fn coeff_derivative(&self) -> SuperFn {
        self.map_coeffs(LaurentSection::derivative)
    }

    /// Integer power of an even element whose body is a nonzero monomial
    /// `c·xᵉ`, via the terminating binomial series in the nilpotent part.
    pub fn even_pow(&self, m: i64) -> SuperFn {
        assert!(self.is_even(), "even_pow of a non-even element");
        let body = self.body();
        let (c, e) = body
            .as_monomial()
            .expect("even_pow needs a monomial body");
        let inv_body = LaurentSection::monomial(c.clone().recip(), -e);
        let body_pow = LaurentSection::monomial(pow_rational(c, m), e * m);
        // self = body·(1 + t)
        let t = (self - &SuperFn::scalar(self.n, body)).mul_scalar(&inv_body);
        let mut acc = SuperFn::scalar(self.n, LaurentSection::one());
        let mut t_pow = SuperFn::scalar(self.n, LaurentSection::one());
        let mut binom = Rational::one();
        for j in 1i64.. {
            t_pow = &t_pow * &t;
            if t_pow.is_zero() {
                break;
            }
            binom = binom * Rational::from_integer((m - j + 1).into())
                / Rational::from_integer(j.into());
            acc = &acc + &t_pow.scale(&binom);
        }
        acc.mul_scalar(&body_pow)
    }
}

fn pow_rational(c: &Rational, m: i64) -> Rational {
    let base = if m < 0 { c.clone().recip() } else { c.clone() };
    (0..m.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

impl fmt::Debug for SuperFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SuperFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for a in indices(*m) {
                write!(f, "·θ{}", a + 1)?;
            }
        }
        Ok(())
    }
}

impl Add<&SuperFn> for &SuperFn {
    type Output = SuperFn;
    fn add(self, rhs: &SuperFn) -> SuperFn {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(*m, f);
        }
        out
    }
}

impl Sub<&SuperFn> for &SuperFn {
    type Output = SuperFn;
    fn sub(self, rhs: &SuperFn) -> SuperFn {
        self + &(-rhs)
    }
}

impl Neg for &SuperFn {
    type Output = SuperFn;
    fn neg(self) -> SuperFn {
        self.map_coeffs(|f| -f)
    }
}

impl Mul<&SuperFn> for &SuperFn {
    type Output = SuperFn;
    fn mul(self, rhs: &SuperFn) -> SuperFn {
        assert_eq!(self.n, rhs.n);
        let mut out = SuperFn::zero(self.n);
        for (ma, fa) in &self.terms {
            for (mb, fb) in &rhs.terms {
                if let Some(sign) = wedge_sign(*ma, *mb) {
                    let prod = fa * fb;
                    let prod = if sign < 0 { -prod } else { prod };
                    out.add_term(ma | mb, &prod);
                }
            }
        }
        out
    }
}

/// `f(x + X)` for nilpotent even `X`, by the terminating Taylor series.
fn taylor(n: usize, f: &LaurentSection, shift: &SuperFn) -> SuperFn {
    let mut acc = SuperFn::scalar(n, f.clone());
    let mut deriv = f.clone();
    let mut shift_pow = SuperFn::scalar(n, LaurentSection::one());
    let mut factorial = Rational::one();
    for m in 1i64.. {
        shift_pow = &shift_pow * shift;
        deriv = deriv.derivative();
        if shift_pow.is_zero() || deriv.is_zero() {
            break;
        }
        factorial *= Rational::from_integer(m.into());
        acc = &acc + &shift_pow.mul_scalar(&deriv).scale(&factorial.clone().recip());
    }
    acc
}

/// An even automorphism of `O(U)[θ]` covering the identity on the base.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMap {
    n: usize,
    coordinate: SuperFn,
    thetas: Vec<SuperFn>,
}

impl SuperMap {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            coordinate: SuperFn::coordinate(n),
            thetas: (0..n).map(|a| SuperFn::theta(n, a)).collect(),
        }
    }

    /// Build from generator images. The coordinate image must be `x` plus a
    /// nilpotent even element; theta images must be odd.
    pub fn from_images(coordinate: SuperFn, thetas: Vec<SuperFn>) -> Result<Self> {
        let n = coordinate.generators();
        if thetas.len() != n || thetas.iter().any(|t| t.generators() != n) {
            return Err(Error::NotInGreenGroup("generator count mismatch".into()));
        }
        if !coordinate.is_even() || coordinate.body() != LaurentSection::z_pow(1) {
            return Err(Error::NotInGreenGroup(format!(
                "coordinate image {coordinate} is not x + nilpotent even"
            )));
        }
        if let Some(a) = thetas.iter().position(|t| !t.is_odd()) {
            return Err(Error::NotInGreenGroup(format!("image of θ{} is not odd", a + 1)));
        }
        Ok(Self {
            n,
            coordinate,
            thetas,
        })
    }

    /// `θ_a ↦ c_a·θ_a`, coordinate fixed.
    pub fn diagonal(scalars: &[Rational]) -> Result<Self> {
        let n = scalars.len();
        if let Some(index) = scalars.iter().position(Zero::is_zero) {
            return Err(Error::SingularAutomorphism { index });
        }
        Ok(Self {
            n,
            coordinate: SuperFn::coordinate(n),
            thetas: scalars
                .iter()
                .enumerate()
                .map(|(a, c)| SuperFn::theta(n, a).scale(c))
                .collect(),
        })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn coordinate_image(&self) -> &SuperFn {
        &self.coordinate
    }

    pub fn theta_image(&self, a: usize) -> &SuperFn {
        &self.thetas[a]
    }

    pub fn apply(&self, f: &SuperFn) -> SuperFn {
        assert_eq!(f.generators(), self.n);
        let shift = &self.coordinate - &SuperFn::coordinate(self.n);
        let mut out = SuperFn::zero(self.n);
        for (mask, coeff) in f.terms() {
            let mut image = taylor(self.n, coeff, &shift);
            for a in indices(mask) {
                image = &image * &self.thetas[a];
            }
            out = &out + &image;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SuperMap) -> SuperMap {
        assert_eq!(self.n, other.n);
        SuperMap {
            n: self.n,
            coordinate: self.apply(&other.coordinate),
            thetas: other.thetas.iter().map(|t| self.apply(t)).collect(),
        }
    }

    /// Diagonal constants `c_a` if the linear part of every theta image is
    /// `c_a·θ_a`.
    fn diagonal_linear_part(&self) -> Option<Vec<Rational>> {
        self.thetas
            .iter()
            .enumerate()
            .map(|(a, t)| {
                let linear = t.degree_part(1);
                let c = linear.coeff(1 << a);
                let (value, e) = c.as_monomial()?;
                (e == 0 && linear == SuperFn::term(self.n, 1 << a, c.clone()))
                    .then(|| value.clone())
            })
            .collect()
    }

    /// Inverse, for maps whose linear part is diagonal with constant entries.
    pub fn inverse(&self) -> Result<SuperMap> {
        let diag = self.diagonal_linear_part().ok_or_else(|| {
            Error::NotInGreenGroup("linear part is not a constant diagonal".into())
        })?;
        let scale_inv =
            SuperMap::diagonal(&diag.iter().map(|c| c.clone().recip()).collect::<Vec<_>>())?;
        let unipotent = scale_inv.compose(self);
        // Fixed-point iteration; each step pushes the error one level deeper
        // in the θ-filtration.
        let mut h = SuperMap::identity(self.n);
        for _ in 0..=self.n + 2 {
            let err = unipotent.compose(&h).minus_identity();
            if err.iter().all(SuperFn::is_zero) {
                return Ok(h.compose(&scale_inv));
            }
            h.coordinate = &h.coordinate - &err[0];
            for (t, e) in h.thetas.iter_mut().zip(&err[1..]) {
                *t = &*t - e;
            }
        }
        Err(Error::NotInGreenGroup("inverse iteration did not terminate".into()))
    }

    /// `[φ(x) − x, φ(θ₁) − θ₁, …]`.
    pub fn minus_identity(&self) -> Vec<SuperFn> {
        let mut out = vec![&self.coordinate - &SuperFn::coordinate(self.n)];
        out.extend(
            self.thetas
                .iter()
                .enumerate()
                .map(|(a, t)| t - &SuperFn::theta(self.n, a)),
        );
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == SuperMap::identity(self.n)
    }

    /// Whether `φ(u) − u ∈ J^k` on generators, i.e. `φ` lies in the Green
    /// group `G^(k)`.
    pub fn in_green_group(&self, k: u32) -> bool {
        self.minus_identity()
            .iter()
            .all(|d| d.degree_at_least(k) == *d)
    }
}

impl fmt::Debug for SuperMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x  ↦ {}", self.coordinate)?;
        for (a, t) in self.thetas.iter().enumerate() {
            writeln!(f, "θ{} ↦ {}", a + 1, t)?;
        }
        Ok(())
    }
}

/// An even derivation `D = X·∂_x + Σ V_a·∂/∂θ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub coordinate: SuperFn,
    pub thetas: Vec<SuperFn>,
}

impl Derivation {
    pub fn apply(&self, f: &SuperFn) -> SuperFn {
        let n = f.generators();
        let mut out = SuperFn::zero(n);
        for (mask, coeff) in f.terms() {
            let monomial = SuperFn::term(n, mask, LaurentSection::one());
            // D(f)·θ_S
            let d_coeff = SuperFn::scalar(n, coeff.derivative());
            out = &out + &(&(&d_coeff * &self.coordinate) * &monomial);
            // f·D(θ_S): an even derivation needs no signs
            let factors: Vec<usize> = indices(mask).collect();
            for (i, &a) in factors.iter().enumerate() {
                let mut piece = SuperFn::scalar(n, coeff.clone());
                for (j, &b) in factors.iter().enumerate() {
                    let next = if i == j {
                        self.thetas[a].clone()
                    } else {
                        SuperFn::theta(n, b)
                    };
                    piece = &piece * &next;
                }
                out = &out + &piece;
            }
        }
        out
    }

    /// `exp(D)` on generators, summing the terminating series.
    pub fn exp(&self) -> Result<SuperMap> {
        let n = self.coordinate.generators();
        let series = |start: SuperFn| {
            let mut acc = start.clone();
            let mut term = start;
            let mut factorial = Rational::one();
            for m in 1i64..=(2 * n as i64 + 2) {
                term = self.apply(&term);
                if term.is_zero() {
                    break;
                }
                factorial *= Rational::from_integer(m.into());
                acc = &acc + &term.scale(&factorial.clone().recip());
            }
            acc
        };
        SuperMap::from_images(
            series(SuperFn::coordinate(n)),
            (0..n).map(|a| series(SuperFn::theta(n, a))).collect(),
        )
    }
}

/// Rewrite an element given in source-chart generators `(x, θ)` in the
/// target-chart generators `(y, η)`, where `y = 1/x` and `η_a = x^{d_a}θ_a`.
pub fn transfer(f: &SuperFn, degrees: &[i64]) -> SuperFn {
    let n = f.generators();
    assert_eq!(n, degrees.len());
    let mut out = SuperFn::zero(n);
    for (mask, coeff) in f.terms() {
        let weight: i64 = indices(mask).map(|a| degrees[a]).sum();
        out.add_term(mask, &coeff.reflect().shift(weight));
    }
    out
}

/// Rewrite an automorphism given in source-chart generators in the
/// target-chart generators: `φ(y) = φ(x)⁻¹` and `φ(η_a) = φ(x)^{d_a}·φ(θ_a)`.
pub fn change_chart(map: &SuperMap, degrees: &[i64]) -> SuperMap {
    let x_image = transfer(map.coordinate_image(), degrees);
    let coordinate = x_image.even_pow(-1);
    let thetas = (0..map.generators())
        .map(|a| &x_image.even_pow(degrees[a]) * &transfer(map.theta_image(a), degrees))
        .collect();
    SuperMap {
        n: map.generators(),
        coordinate,
        thetas,
    }
}
