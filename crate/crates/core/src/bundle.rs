//! Split holomorphic vector bundles on a compact Riemann surface, up to
//! isomorphism.
//!
//! A line bundle is recorded by its degree together with a tri-state
//! triviality marker. On positive-genus curves a degree-zero bundle may or
//! may not be trivial, and the marker tracks what is actually known, with
//! [`Triviality::Unknown`] meaning "degree zero, isomorphism class not
//! determined".

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A compact Riemann surface, known only through its genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Curve {
    pub genus: u32,
}

impl Curve {
    pub const PROJECTIVE_LINE: Curve = Curve { genus: 0 };

    pub fn new(genus: u32) -> Self {
        Self { genus }
    }

    pub fn is_projective_line(&self) -> bool {
        self.genus == 0
    }

    /// A line bundle on this curve, with triviality normalized against the
    /// degree and the Picard group of genus zero.
    pub fn line_bundle(&self, degree: i64, triviality: Triviality) -> LineBundleClass {
        let mut l = LineBundleClass::new(degree, triviality);
        if self.genus == 0 && degree == 0 {
            l.triviality = Triviality::Trivial;
        }
        l
    }

    /// Holomorphic tangent bundle, of degree `2 − 2g`.
    pub fn tangent_bundle(&self) -> LineBundleClass {
        let degree = 2 - 2 * i64::from(self.genus);
        // Genus one: the tangent bundle is holomorphically trivial.
        self.line_bundle(degree, Triviality::Trivial)
    }

    /// Canonical bundle, of degree `2g − 2`.
    pub fn canonical_bundle(&self) -> LineBundleClass {
        let degree = 2 * i64::from(self.genus) - 2;
        self.line_bundle(degree, Triviality::Trivial)
    }

    pub fn split_bundle<I>(&self, components: I) -> Result<SplitBundle>
    where
        I: IntoIterator<Item = LineBundleClass>,
    {
        SplitBundle::new(*self, components)
    }

    /// `⊕ O(dᵢ)`, with every degree-zero summand taken to be trivial.
    pub fn split_bundle_from_degrees(&self, degrees: &[i64]) -> Result<SplitBundle> {
        self.split_bundle(
            degrees
                .iter()
                .map(|&d| self.line_bundle(d, Triviality::Trivial)),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Triviality {
    Trivial,
    NonTrivial,
    Unknown,
}

impl Triviality {
    pub fn tag(self) -> &'static str {
        match self {
            Triviality::Trivial => "trivial",
            Triviality::NonTrivial => "nontrivial",
            Triviality::Unknown => "unknown",
        }
    }
}

/// Isomorphism-class data of a line bundle: degree plus triviality marker.
///
/// Any nonzero degree forces [`Triviality::NonTrivial`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineBundleClass {
    pub degree: i64,
    pub triviality: Triviality,
}

impl LineBundleClass {
    pub fn new(degree: i64, triviality: Triviality) -> Self {
        let triviality = if degree != 0 {
            Triviality::NonTrivial
        } else {
            triviality
        };
        Self { degree, triviality }
    }

    pub fn is_trivial(&self) -> bool {
        self.triviality == Triviality::Trivial
    }

    pub fn dual(&self) -> Self {
        Self::new(-self.degree, self.triviality)
    }

    /// Tensor product of several line bundles.
    ///
    /// Trivial factors act as the unit. If exactly one nontrivial factor is
    /// left, the product is isomorphic to it; with two or more, a degree-zero
    /// product has an undetermined class.
    pub fn product<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a LineBundleClass>,
    {
        let mut degree = 0;
        let mut nontrivial = Vec::new();
        for f in factors {
            degree += f.degree;
            if !f.is_trivial() {
                nontrivial.push(*f);
            }
        }
        let triviality = match nontrivial.as_slice() {
            [] => Triviality::Trivial,
            [only] => only.triviality,
            _ => Triviality::Unknown,
        };
        Self::new(degree, triviality)
    }
}

impl fmt::Debug for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.degree, self.triviality) {
            (0, Triviality::Trivial) => write!(f, "O"),
            (0, t) => write!(f, "L0[{}]", t.tag()),
            (d, _) => write!(f, "L({d})"),
        }
    }
}

/// A direct sum of line bundles on a fixed curve, as a multiset.
///
/// Components are kept sorted, so equality is equality of multisets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitBundle {
    curve: Curve,
    components: Vec<LineBundleClass>,
}

impl SplitBundle {
    pub fn new<I>(curve: Curve, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = LineBundleClass>,
    {
        let mut components: Vec<_> = components
            .into_iter()
            .map(|l| curve.line_bundle(l.degree, l.triviality))
            .collect();
        if components.is_empty() {
            return Err(Error::EmptyBundle);
        }
        components.sort();
        Ok(Self { curve, components })
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn components(&self) -> &[LineBundleClass] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> i64 {
        self.components.iter().map(|l| l.degree).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.components.iter().map(|l| l.degree).collect()
    }

    /// `∧ᵏE`: one summand per `k`-element subset of the components.
    pub fn exterior_power(&self, k: i64) -> Result<SplitBundle> {
        if k < 0 || k as usize > self.rank() {
            return Err(Error::ExteriorPowerRange {
                k,
                rank: self.rank(),
            });
        }
        if k == 0 {
            return SplitBundle::new(self.curve, [LineBundleClass::new(0, Triviality::Trivial)]);
        }
        SplitBundle::new(
            self.curve,
            self.components
                .iter()
                .combinations(k as usize)
                .map(LineBundleClass::product),
        )
    }

    pub fn tensor(&self, other: &SplitBundle) -> Result<SplitBundle> {
        if self.curve != other.curve {
            return Err(Error::CurveMismatch {
                left: self.curve.genus,
                right: other.curve.genus,
            });
        }
        SplitBundle::new(
            self.curve,
            self.components
                .iter()
                .cartesian_product(other.components.iter())
                .map(|(a, b)| LineBundleClass::product([a, b])),
        )
    }

    pub fn tensor_line(&self, line: &LineBundleClass) -> SplitBundle {
        let line = SplitBundle {
            curve: self.curve,
            components: vec![self.curve.line_bundle(line.degree, line.triviality)],
        };
        self.tensor(&line).expect("same curve")
    }

    pub fn dual(&self) -> SplitBundle {
        SplitBundle::new(self.curve, self.components.iter().map(LineBundleClass::dual))
            .expect("dual of a nonempty bundle is nonempty")
    }

    /// `E = ⊕^q L_d` for a single line bundle class.
    pub fn balanced_degree(&self) -> Option<i64> {
        let first = self.components[0];
        self.components
            .iter()
            .all(|l| *l == first)
            .then_some(first.degree)
    }
}

impl fmt::Debug for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components.iter().join(" + "))?;
        write!(f, " on genus {}", self.curve.genus)
    }
}

/// A model `(X, E)`: the base curve is carried by the bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Model {
    pub bundle: SplitBundle,
}

impl Model {
    pub fn new(bundle: SplitBundle) -> Self {
        Self { bundle }
    }

    /// `(P¹, ⊕ O(dᵢ))`.
    pub fn projective_line(degrees: &[i64]) -> Result<Self> {
        Curve::PROJECTIVE_LINE
            .split_bundle_from_degrees(degrees)
            .map(Self::new)
    }

    pub fn with_degrees(genus: u32, degrees: &[i64]) -> Result<Self> {
        Curve::new(genus).split_bundle_from_degrees(degrees).map(Self::new)
    }

    /// `(P¹, ⊕^q O(d))`.
    pub fn balanced_projective_line(rank: usize, degree: i64) -> Result<Self> {
        Self::projective_line(&vec![degree; rank])
    }

    pub fn curve(&self) -> Curve {
        self.bundle.curve()
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;
    use proptest::prelude::*;

    fn p1(degrees: &[i64]) -> SplitBundle {
        Curve::PROJECTIVE_LINE.split_bundle_from_degrees(degrees).unwrap()
    }

    fn degrees_of(e: &SplitBundle) -> Vec<i64> {
        e.degrees()
    }

    #[test]
    fn second_exterior_power_of_minus_one_cubed() {
        assert_eq!(degrees_of(&p1(&[-1, -1, -1]).exterior_power(2).unwrap()), vec![-2; 3]);
    }

    #[test]
    fn first_exterior_power_is_identity() {
        let e = p1(&[-3, 0, 4, 4]);
        assert_eq!(e.exterior_power(1).unwrap(), e);
    }

    #[test]
    fn balanced_third_power() {
        let wedge = p1(&[-2; 5]).exterior_power(3).unwrap();
        assert_eq!(degrees_of(&wedge), vec![-6; 10]);
    }

    #[test]
    fn exterior_power_out_of_range() {
        let e = p1(&[1, 2]);
        assert_eq!(e.exterior_power(3), Err(Error::ExteriorPowerRange { k: 3, rank: 2 }));
        assert!(e.exterior_power(-1).is_err());
        assert_eq!(degrees_of(&e.exterior_power(0).unwrap()), vec![0]);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(degrees_of(&p1(&[-2, -2, -2]).tensor(&p1(&[2])).unwrap()), vec![0; 3]);
        let f = p1(&[-1, 3]);
        assert_eq!(p1(&[0]).tensor(&f).unwrap(), f);

        let g1 = Curve::new(1);
        let one = g1.split_bundle_from_degrees(&[1]).unwrap();
        let mixed = g1.split_bundle_from_degrees(&[1, -1]).unwrap();
        let t = one.tensor(&mixed).unwrap();
        assert_eq!(
            t.components(),
            &[
                LineBundleClass::new(0, Triviality::Unknown),
                LineBundleClass::new(2, Triviality::NonTrivial)
            ]
        );
    }

    #[test]
    fn trivial_unit_on_positive_genus() {
        let g1 = Curve::new(1);
        let unit = g1.split_bundle_from_degrees(&[0]).unwrap();
        let f = g1
            .split_bundle([
                LineBundleClass::new(0, Triviality::NonTrivial),
                LineBundleClass::new(0, Triviality::Unknown),
                LineBundleClass::new(5, Triviality::NonTrivial),
            ])
            .unwrap();
        assert_eq!(unit.tensor(&f).unwrap(), f);
    }

    #[test]
    fn tensor_across_curves_is_rejected() {
        let a = Curve::new(0).split_bundle_from_degrees(&[1]).unwrap();
        let b = Curve::new(2).split_bundle_from_degrees(&[1]).unwrap();
        assert!(matches!(a.tensor(&b), Err(Error::CurveMismatch { .. })));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(degrees_of(&p1(&[-1, -1, -1]).dual()), vec![1, 1, 1]);
        assert_eq!(p1(&[0]).dual(), p1(&[0]));
        let e = p1(&[-4, 2, 7]);
        assert_eq!(e.dual().dual(), e);
    }

    #[test]
    fn tangent_and_canonical() {
        assert_eq!(Curve::new(0).tangent_bundle().degree, 2);
        let t1 = Curve::new(1).tangent_bundle();
        assert_eq!((t1.degree, t1.triviality), (0, Triviality::Trivial));
        assert_eq!(Curve::new(1).canonical_bundle().triviality, Triviality::Trivial);
        assert_eq!(Curve::new(3).canonical_bundle().degree, 4);
        assert_eq!(Curve::new(3).tangent_bundle().triviality, Triviality::NonTrivial);
    }

    #[test]
    fn genus_zero_degree_zero_is_trivial() {
        let l = Curve::PROJECTIVE_LINE.line_bundle(0, Triviality::Unknown);
        assert!(l.is_trivial());
        let l = Curve::new(1).line_bundle(0, Triviality::Unknown);
        assert_eq!(l.triviality, Triviality::Unknown);
        assert_eq!(LineBundleClass::new(3, Triviality::Trivial).triviality, Triviality::NonTrivial);
    }

    #[test]
    fn empty_bundle_rejected() {
        assert_eq!(Curve::new(0).split_bundle_from_degrees(&[]), Err(Error::EmptyBundle));
    }

    fn degrees_strategy() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 1..=6)
    }

    proptest! {
        #[test]
        fn exterior_power_rank_and_degree(degrees in degrees_strategy(), genus in 0u32..3) {
            let e = Curve::new(genus).split_bundle_from_degrees(&degrees).unwrap();
            let q = e.rank() as u64;
            for k in 0..=q {
                let w = e.exterior_power(k as i64).unwrap();
                prop_assert_eq!(w.rank() as u64, binomial(q, k));
                if k >= 1 {
                    prop_assert_eq!(w.degree(), binomial(q - 1, k - 1) as i64 * e.degree());
                }
            }
            let top = e.exterior_power(q as i64).unwrap();
            prop_assert_eq!(top.rank(), 1);
            prop_assert_eq!(top.degree(), e.degree());
        }

        #[test]
        fn tensor_commutes_and_dual_is_involution(a in degrees_strategy(), b in degrees_strategy(), genus in 0u32..3) {
            let c = Curve::new(genus);
            let ea = c.split_bundle_from_degrees(&a).unwrap();
            let eb = c.split_bundle_from_degrees(&b).unwrap();
            prop_assert_eq!(ea.tensor(&eb).unwrap(), eb.tensor(&ea).unwrap());
            prop_assert_eq!(ea.dual().dual(), ea);
        }
    }
}
