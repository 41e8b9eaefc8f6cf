//! Rank-3 split bundles on the projective line: Green groups, the connecting
//! map `α: H⁰(Q⁽²⁾) → Ȟ¹(G⁽³⁾) ≅ H¹(Q⁽³⁾)`, and the scalar action of
//! `ℂ^×·1_E`.
//!
//! Everything is computed by composing honest automorphisms of the local
//! superalgebra `O[θ₁, θ₂, θ₃]` with [`crate::superalgebra`] and reading the
//! result off in Čech coordinates. Chart conventions are those of
//! [`crate::cech`], together with `θ_a⁽⁰⁾ = z^{−d_a}·θ_a⁽¹⁾` and
//! `∂_z = −w²∂_w`.
//!
//! At rank 3 an element of `G⁽²⁾` on a chart is `exp(D)` for
//!
//! ```text
//! D = Σ_{a<b} X_ab·θ_aθ_b·∂_x  +  Σ_a Y_a·θ₁θ₂θ₃·∂/∂θ_a
//! ```
//!
//! and `exp(D) = 1 + D` because `D²` lands in `∧⁴ = 0`. The `X` part is the
//! `∧²E ⊗ T` symbol and the `Y` part is the `E* ⊗ ∧³E` symbol.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bundle::Model;
use crate::cech::{self, CechClass, Window};
use crate::laurent::LaurentSection;
use crate::linalg::SparseMatrix;
use crate::superalgebra::{change_chart, mask_of, SuperFn, SuperMap};
use crate::{Error, Rational, Result};

/// Unordered pairs `a < b` of summand indices, in storage order.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

const RANK: usize = 3;
const TOP: u32 = 0b111;

/// A rank-3 split bundle `O(d₁) ⊕ O(d₂) ⊕ O(d₃)` on the projective line,
/// with a fixed ordering of the summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankThreeModel {
    pub degrees: [i64; 3],
}

impl RankThreeModel {
    pub fn new(degrees: [i64; 3]) -> Self {
        Self { degrees }
    }

    pub fn from_model(model: &Model) -> Result<Self> {
        if model.curve().genus != 0 || model.rank() != RANK {
            return Err(Error::UnsupportedModel {
                genus: model.curve().genus,
                rank: model.rank(),
            });
        }
        let d = model.bundle.degrees();
        Ok(Self::new([d[0], d[1], d[2]]))
    }

    /// Degree of the `∧²E ⊗ T` summand for a pair: `d_a + d_b + 2`.
    pub fn q2_degree(&self, pair: usize) -> i64 {
        let (a, b) = PAIRS[pair];
        self.degrees[a] + self.degrees[b] + 2
    }

    /// Degree of the `E* ⊗ ∧³E` summand for an index: `Σd − d_a`.
    pub fn q3_degree(&self, a: usize) -> i64 {
        self.degrees.iter().sum::<i64>() - self.degrees[a]
    }

    pub fn h0_q2(&self) -> usize {
        (0..3).map(|p| (self.q2_degree(p) + 1).max(0) as usize).sum()
    }

    pub fn h1_q3(&self) -> usize {
        (0..3).map(|a| (-self.q3_degree(a) - 1).max(0) as usize).sum()
    }

    /// Smallest Laurent window that covers every sheaf in play.
    pub fn required_window(&self) -> Window {
        let widest = (0..3)
            .flat_map(|i| [self.q2_degree(i), self.q3_degree(i)])
            .map(Window::required_for)
            .max()
            .unwrap_or(2);
        Window(widest + 1)
    }
}

impl fmt::Display for RankThreeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.degrees;
        write!(f, "O({a}) + O({b}) + O({c}) on P1")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Chart {
    Zero,
    One,
}

impl Chart {
    fn index(self) -> u8 {
        match self {
            Chart::Zero => 0,
            Chart::One => 1,
        }
    }
}

/// A chart-local element of `G⁽²⁾` for a rank-3 bundle, stored by the graded
/// components of its logarithm.
///
/// `deg2[p]` multiplies `θ_aθ_b·∂_x` for `PAIRS[p] = (a, b)`; `deg3[a]`
/// multiplies `θ₁θ₂θ₃·∂/∂θ_a`. Coefficients are Laurent polynomials in the
/// chart coordinate; on the overlap they are written in chart-0 generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedAutomorphism {
    pub chart: Chart,
    pub deg2: [LaurentSection; 3],
    pub deg3: [LaurentSection; 3],
}

impl TruncatedAutomorphism {
    pub fn identity(chart: Chart) -> Self {
        Self {
            chart,
            deg2: Default::default(),
            deg3: Default::default(),
        }
    }

    pub fn pure_deg2(chart: Chart, deg2: [LaurentSection; 3]) -> Self {
        Self {
            chart,
            deg2,
            deg3: Default::default(),
        }
    }

    pub fn pure_deg3(chart: Chart, deg3: [LaurentSection; 3]) -> Self {
        Self {
            chart,
            deg2: Default::default(),
            deg3,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.deg2.iter().chain(&self.deg3).all(LaurentSection::is_zero)
    }

    /// Membership in `G⁽ᵏ⁾`; at rank 3 the groups are trivial above `k = 3`.
    pub fn in_green_group(&self, k: u32) -> bool {
        match k {
            0..=2 => true,
            3 => self.deg2.iter().all(LaurentSection::is_zero),
            _ => self.is_identity(),
        }
    }

    /// `exp(D) = 1 + D` on generators.
    pub fn to_map(&self) -> SuperMap {
        let mut coordinate = SuperFn::coordinate(RANK);
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            coordinate = &coordinate + &SuperFn::term(RANK, mask_of(&[a, b]), self.deg2[p].clone());
        }
        let thetas = (0..RANK)
            .map(|a| &SuperFn::theta(RANK, a) + &SuperFn::term(RANK, TOP, self.deg3[a].clone()))
            .collect();
        SuperMap::from_images(coordinate, thetas).expect("graded components give a G(2) element")
    }

    /// Read graded components back off an automorphism in `G⁽²⁾`.
    pub fn from_map(chart: Chart, map: &SuperMap) -> Result<Self> {
        if map.generators() != RANK {
            return Err(Error::NotInGreenGroup("rank must be 3".into()));
        }
        let delta = map.minus_identity();
        let deg2: [LaurentSection; 3] =
            std::array::from_fn(|p| delta[0].coeff(mask_of(&[PAIRS[p].0, PAIRS[p].1])));
        let rebuilt_x = PAIRS
            .iter()
            .enumerate()
            .fold(SuperFn::zero(RANK), |acc, (p, &(a, b))| {
                &acc + &SuperFn::term(RANK, mask_of(&[a, b]), deg2[p].clone())
            });
        if rebuilt_x != delta[0] {
            return Err(Error::NotInGreenGroup(format!(
                "coordinate moves by {} outside ∧²",
                delta[0]
            )));
        }
        let deg3: [LaurentSection; 3] = std::array::from_fn(|a| delta[a + 1].coeff(TOP));
        for a in 0..RANK {
            if delta[a + 1] != SuperFn::term(RANK, TOP, deg3[a].clone()) {
                return Err(Error::NotInGreenGroup(format!(
                    "θ{} moves by {} outside ∧³",
                    a + 1,
                    delta[a + 1]
                )));
            }
        }
        Ok(Self { chart, deg2, deg3 })
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                left: self.chart.index(),
                right: other.chart.index(),
            });
        }
        Self::from_map(self.chart, &self.to_map().compose(&other.to_map()))
    }

    pub fn invert(&self) -> Self {
        let inv = self.to_map().inverse().expect("unipotent maps are invertible");
        Self::from_map(self.chart, &inv).expect("inverse stays in G(2)")
    }
}

/// The overlap cocycle `ρ₀ ∘ ρ₁⁻¹` in chart-0 generators, for chart-local
/// elements `ρ₀` (chart 0) and `ρ₁` (chart 1).
pub fn atlas_cocycle(
    model: &RankThreeModel,
    rho0: &TruncatedAutomorphism,
    rho1: &TruncatedAutomorphism,
) -> Result<TruncatedAutomorphism> {
    if rho0.chart != Chart::Zero || rho1.chart != Chart::One {
        return Err(Error::ChartMismatch {
            left: rho0.chart.index(),
            right: rho1.chart.index(),
        });
    }
    let rho1_inv = change_chart(&rho1.to_map().inverse()?, &model.degrees);
    TruncatedAutomorphism::from_map(Chart::Zero, &rho0.to_map().compose(&rho1_inv))
}

/// Transition law of the `∧²E ⊗ T` summand for a pair:
/// `p(z)·θ_aθ_b∂_z = −w^{d_a+d_b+2}·p(1/w)·θ_aθ_b∂_w`.
fn q2_to_chart1(model: &RankThreeModel, pair: usize, chart0: &LaurentSection) -> LaurentSection {
    -chart0.reflect().shift(model.q2_degree(pair))
}

/// Transition law of the `E* ⊗ ∧³E` summand for an index:
/// `p(z)·θ₁θ₂θ₃∂/∂θ_a = w^{Σd−d_a}·p(1/w)·θ₁θ₂θ₃∂/∂θ_a`.
fn q3_to_chart1(model: &RankThreeModel, a: usize, chart0: &LaurentSection) -> LaurentSection {
    chart0.reflect().shift(model.q3_degree(a))
}

/// A section of `Q⁽²⁾ = ∧²E ⊗ T`, by chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionQ2 {
    #[serde(serialize_with = "serialize_triple")]
    pub chart0: [LaurentSection; 3],
    #[serde(serialize_with = "serialize_triple")]
    pub chart1: [LaurentSection; 3],
}

/// A section of `Q⁽³⁾ = E* ⊗ ∧³E`, by chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionQ3 {
    #[serde(serialize_with = "serialize_triple")]
    pub chart0: [LaurentSection; 3],
    #[serde(serialize_with = "serialize_triple")]
    pub chart1: [LaurentSection; 3],
}

fn serialize_triple<S: serde::Serializer>(
    v: &[LaurentSection; 3],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn check_transition(
    label: String,
    max_degree: i64,
    chart0: &LaurentSection,
    chart1: &LaurentSection,
    expected_chart1: LaurentSection,
) -> Result<()> {
    let residual = chart1 - &expected_chart1;
    if !residual.is_zero() {
        return Err(Error::NotGlobal {
            component: label,
            residual: residual.to_string(),
        });
    }
    if !chart0.is_polynomial() || !chart1.is_polynomial() {
        return Err(Error::NotGlobal {
            component: label,
            residual: format!("pole in a chart (degree bound {max_degree})"),
        });
    }
    Ok(())
}

impl SectionQ2 {
    /// Extend chart-0 data by the transition law. Only global if every
    /// component is a polynomial of degree at most `d_a + d_b + 2`.
    pub fn from_chart0(model: &RankThreeModel, chart0: [LaurentSection; 3]) -> Self {
        let chart1 = std::array::from_fn(|p| q2_to_chart1(model, p, &chart0[p]));
        Self { chart0, chart1 }
    }

    pub fn check_global(&self, model: &RankThreeModel) -> Result<()> {
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            check_transition(
                format!("pair ({}, {})", a + 1, b + 1),
                model.q2_degree(p),
                &self.chart0[p],
                &self.chart1[p],
                q2_to_chart1(model, p, &self.chart0[p]),
            )?;
        }
        Ok(())
    }

    /// Monomial basis of `H⁰(Q⁽²⁾)`: `z^j·θ_aθ_b∂_z` for `0 ≤ j ≤ d_a+d_b+2`,
    /// pair-major.
    pub fn basis(model: &RankThreeModel) -> Vec<SectionQ2> {
        let mut out = Vec::new();
        for p in 0..3 {
            for j in 0..=model.q2_degree(p) {
                let mut chart0: [LaurentSection; 3] = Default::default();
                chart0[p] = LaurentSection::z_pow(j);
                out.push(Self::from_chart0(model, chart0));
            }
        }
        out
    }

    /// Lift to the chart-`i` automorphism that moves the chart coordinate by
    /// the vector field and fixes the chart frame.
    pub fn lift(&self, chart: Chart) -> TruncatedAutomorphism {
        let deg2 = match chart {
            Chart::Zero => self.chart0.clone(),
            Chart::One => self.chart1.clone(),
        };
        TruncatedAutomorphism::pure_deg2(chart, deg2)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            chart0: std::array::from_fn(|p| self.chart0[p].scale(c)),
            chart1: std::array::from_fn(|p| self.chart1[p].scale(c)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            chart0: std::array::from_fn(|p| &self.chart0[p] + &other.chart0[p]),
            chart1: std::array::from_fn(|p| &self.chart1[p] + &other.chart1[p]),
        }
    }
}

impl SectionQ3 {
    pub fn from_chart0(model: &RankThreeModel, chart0: [LaurentSection; 3]) -> Self {
        let chart1 = std::array::from_fn(|a| q3_to_chart1(model, a, &chart0[a]));
        Self { chart0, chart1 }
    }

    pub fn check_global(&self, model: &RankThreeModel) -> Result<()> {
        for a in 0..3 {
            check_transition(
                format!("index {}", a + 1),
                model.q3_degree(a),
                &self.chart0[a],
                &self.chart1[a],
                q3_to_chart1(model, a, &self.chart0[a]),
            )?;
        }
        Ok(())
    }

    pub fn basis(model: &RankThreeModel) -> Vec<SectionQ3> {
        let mut out = Vec::new();
        for a in 0..3 {
            for j in 0..=model.q3_degree(a) {
                let mut chart0: [LaurentSection; 3] = Default::default();
                chart0[a] = LaurentSection::z_pow(j);
                out.push(Self::from_chart0(model, chart0));
            }
        }
        out
    }

    pub fn lift(&self, chart: Chart) -> TruncatedAutomorphism {
        let deg3 = match chart {
            Chart::Zero => self.chart0.clone(),
            Chart::One => self.chart1.clone(),
        };
        TruncatedAutomorphism::pure_deg3(chart, deg3)
    }
}

/// `ω_*(α(φ))`: the overlap cocycle and its class in `H¹(Q⁽³⁾)`, one
/// [`CechClass`] per summand `E* ⊗ ∧³E ⊃ O(Σd − d_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryImage {
    pub cocycle: TruncatedAutomorphism,
    pub classes: [CechClass; 3],
}

impl BoundaryImage {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(CechClass::is_zero)
    }

    /// All coordinates, summand-major.
    pub fn coordinates(&self) -> Vec<Rational> {
        self.classes
            .iter()
            .flat_map(|c| c.coordinates.iter().cloned())
            .collect()
    }
}

/// Reduce the degree-3 part of an overlap cocycle in `G⁽³⁾` to `H¹(Q⁽³⁾)`.
pub fn q3_classes(
    model: &RankThreeModel,
    cocycle: &TruncatedAutomorphism,
    window: Window,
) -> Result<[CechClass; 3]> {
    if !cocycle.in_green_group(3) {
        return Err(Error::NotInGreenGroup(format!(
            "cocycle has a nonzero ∧²E⊗T part {:?}",
            cocycle.deg2
        )));
    }
    let classes: Vec<CechClass> = (0..3)
        .map(|a| cech::reduce_class(model.q3_degree(a), &cocycle.deg3[a], window))
        .collect::<Result<_>>()?;
    Ok(classes.try_into().expect("three summands"))
}

/// Reduce the `∧²E ⊗ T` part of an overlap cocycle to `H¹(Q⁽²⁾)`.
pub fn q2_classes(
    model: &RankThreeModel,
    cocycle: &TruncatedAutomorphism,
    window: Window,
) -> Result<[CechClass; 3]> {
    let classes: Vec<CechClass> = (0..3)
        .map(|p| cech::reduce_class(model.q2_degree(p), &cocycle.deg2[p], window))
        .collect::<Result<_>>()?;
    Ok(classes.try_into().expect("three summands"))
}

/// The connecting map on a global section of `Q⁽²⁾`.
///
/// Lifts `φ` on each chart, forms `ν = ρ₀ ∘ ρ₁⁻¹` on the overlap, checks that
/// its `∧²E ⊗ T` part cancels (so `ν ∈ G⁽³⁾`) and reduces the rest.
pub fn boundary_alpha(
    model: &RankThreeModel,
    phi: &SectionQ2,
    window: Window,
) -> Result<BoundaryImage> {
    phi.check_global(model)?;
    let cocycle = atlas_cocycle(model, &phi.lift(Chart::Zero), &phi.lift(Chart::One))?;
    let classes = q3_classes(model, &cocycle, window)?;
    Ok(BoundaryImage { cocycle, classes })
}

/// `α` on the monomial basis of `H⁰(Q⁽²⁾)`.
pub fn alpha_on_basis(
    model: &RankThreeModel,
    window: Window,
) -> Result<Vec<(SectionQ2, BoundaryImage)>> {
    SectionQ2::basis(model)
        .into_iter()
        .map(|phi| boundary_alpha(model, &phi, window).map(|img| (phi, img)))
        .collect()
}

/// Rank of `α` as a rational matrix (basis sections × `H¹(Q⁽³⁾)` coordinates).
pub fn alpha_rank(model: &RankThreeModel, window: Window) -> Result<usize> {
    let images = alpha_on_basis(model, window)?;
    let mut m = SparseMatrix::new(model.h1_q3());
    for (_, img) in &images {
        m.push_row(img.coordinates().into_iter().enumerate());
    }
    Ok(m.rank())
}

/// A basis section whose boundary class is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoticWitness {
    pub model: RankThreeModel,
    pub section: SectionQ2,
    pub image: BoundaryImage,
}

impl ExoticWitness {
    /// Recompute the boundary class from scratch and compare.
    pub fn verify(&self, window: Window) -> Result<bool> {
        let again = boundary_alpha(&self.model, &self.section, window)?;
        Ok(again == self.image && !again.is_zero())
    }
}

pub fn find_witness(model: &RankThreeModel, window: Window) -> Result<Option<ExoticWitness>> {
    for phi in SectionQ2::basis(model) {
        let image = boundary_alpha(model, &phi, window)?;
        if !image.is_zero() {
            return Ok(Some(ExoticWitness {
                model: *model,
                section: phi,
                image,
            }));
        }
    }
    Ok(None)
}

/// Classes in one obstruction space, one per line-bundle summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerClass {
    /// 2 for `H¹(∧²E ⊗ T)` (summands by pair), 3 for `H¹(E* ⊗ ∧³E)`
    /// (summands by index).
    pub k: u32,
    pub components: [CechClass; 3],
}

impl LayerClass {
    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            k: self.k,
            components: std::array::from_fn(|i| self.components[i].scale(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(CechClass::is_zero)
    }
}

/// Input to [`scale_star`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalable {
    Cocycle(TruncatedAutomorphism),
    Class(LayerClass),
}

/// Conjugate an overlap cocycle by `θ_a ↦ λ·θ_a` (coordinate fixed).
pub fn conjugate_by_scalar(
    lambda: &Rational,
    cocycle: &TruncatedAutomorphism,
) -> Result<TruncatedAutomorphism> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    let s = SuperMap::diagonal(&[lambda.clone(), lambda.clone(), lambda.clone()])?;
    let conj = s.compose(&cocycle.to_map()).compose(&s.inverse()?);
    TruncatedAutomorphism::from_map(cocycle.chart, &conj)
}

/// The action of `λ·1_E` on `G⁽²⁾`-cocycles and on obstruction classes, by
/// conjugation. A class is represented by the cocycle carrying its
/// canonical representatives in layer `k`, conjugated and reduced again.
pub fn scale_star(
    model: &RankThreeModel,
    lambda: &Rational,
    x: &Scalable,
    k: u32,
    window: Window,
) -> Result<Scalable> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    if !(2..=3).contains(&k) {
        return Err(Error::ObstructionIndex {
            k: i64::from(k),
            rank: RANK,
        });
    }
    match x {
        Scalable::Cocycle(c) => {
            if k == 3 && !c.in_green_group(3) {
                return Err(Error::NotInGreenGroup(
                    "layer-3 scaling of a cocycle outside G(3)".into(),
                ));
            }
            conjugate_by_scalar(lambda, c).map(Scalable::Cocycle)
        }
        Scalable::Class(class) => {
            if class.k != k {
                return Err(Error::ObstructionIndex {
                    k: i64::from(class.k),
                    rank: RANK,
                });
            }
            let reps: [LaurentSection; 3] =
                std::array::from_fn(|i| class.components[i].representative.clone());
            let cocycle = if k == 2 {
                TruncatedAutomorphism::pure_deg2(Chart::Zero, reps)
            } else {
                TruncatedAutomorphism::pure_deg3(Chart::Zero, reps)
            };
            let scaled = conjugate_by_scalar(lambda, &cocycle)?;
            let components = if k == 2 {
                q2_classes(model, &scaled, window)?
            } else {
                q3_classes(model, &scaled, window)?
            };
            Ok(Scalable::Class(LayerClass { k, components }))
        }
    }
}

/// A layer class with the given canonical coordinates per summand.
pub fn layer_class(model: &RankThreeModel, k: u32, coordinates: [Vec<Rational>; 3]) -> LayerClass {
    let components = std::array::from_fn(|i| {
        let degree = if k == 2 {
            model.q2_degree(i)
        } else {
            model.q3_degree(i)
        };
        CechClass::from_coordinates(degree, coordinates[i].clone())
    });
    LayerClass { k, components }
}

/// The primary obstruction of `δ(ψ)` for a diagonal `ψ ∈ Aut(E)` with
/// constant entries, using the canonical lifts `θ_a ↦ c_a·θ_a` on both
/// charts.
pub fn split_image_obstruction(
    model: &RankThreeModel,
    scalars: &[Rational; 3],
    window: Window,
) -> Result<[CechClass; 3]> {
    split_image_obstruction_with_lifts(
        model,
        scalars,
        &TruncatedAutomorphism::identity(Chart::Zero),
        &TruncatedAutomorphism::identity(Chart::One),
        window,
    )
}

/// As [`split_image_obstruction`], with the chart lifts `ψ̃ᵢ = ψ ∘ gᵢ` for
/// chart-holomorphic `gᵢ ∈ G⁽²⁾(Uᵢ)`.
pub fn split_image_obstruction_with_lifts(
    model: &RankThreeModel,
    scalars: &[Rational; 3],
    g0: &TruncatedAutomorphism,
    g1: &TruncatedAutomorphism,
    window: Window,
) -> Result<[CechClass; 3]> {
    if let Some(index) = scalars.iter().position(Zero::is_zero) {
        return Err(Error::SingularAutomorphism { index });
    }
    if g0.chart != Chart::Zero || g1.chart != Chart::One {
        return Err(Error::ChartMismatch {
            left: g0.chart.index(),
            right: g1.chart.index(),
        });
    }
    let psi = SuperMap::diagonal(scalars)?;
    let lift0 = psi.compose(&g0.to_map());
    let lift1 = psi.compose(&g1.to_map());
    let delta = lift0.compose(&change_chart(&lift1.inverse()?, &model.degrees));
    if !delta.in_green_group(2) {
        return Err(Error::NotInGreenGroup(format!("δ(ψ) = {delta:?}")));
    }
    let cocycle = TruncatedAutomorphism::from_map(Chart::Zero, &delta)?;
    q2_classes(model, &cocycle, window)
}

/// `λ^m` for a rational `λ` and integer `m ≥ 0`.
pub fn rational_pow(lambda: &Rational, m: u32) -> Rational {
    (0..m).fold(Rational::one(), |acc, _| acc * lambda)
}
