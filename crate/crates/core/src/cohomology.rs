//! Dimensions of sheaf cohomology of line bundles and split bundles on a
//! compact Riemann surface.
//!
//! Genus zero and genus one are determined exactly by degree and triviality.
//! In genus `g ≥ 2` the range `0 < d ≤ 2g − 2` depends on the point of the
//! Picard variety, and there we return the interval
//! `max(0, d − g + 1) ≤ h⁰ ≤ ⌊d/2⌋ + 1` (Riemann–Roch below, Clifford above).

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::bundle::{Curve, LineBundleClass, SplitBundle, Triviality};

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: u64,
    pub hi: u64,
}

impl Bounds {
    pub fn exact(v: u64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// `(h⁰, h¹)` together with the Euler characteristic `χ = h⁰ − h¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CohomologyDims {
    Exact { h0: u64, h1: u64, chi: i64 },
    Interval { h0: Bounds, h1: Bounds, chi: i64 },
}

impl CohomologyDims {
    pub fn exact(h0: u64, h1: u64) -> Self {
        CohomologyDims::Exact {
            h0,
            h1,
            chi: h0 as i64 - h1 as i64,
        }
    }

    /// The interval of `(h⁰, h¹)` pairs with `h⁰ ∈ h0` and `h⁰ − h¹ = chi`.
    /// Collapses to [`CohomologyDims::Exact`] when the interval is a point.
    pub fn from_h0_bounds(h0: Bounds, chi: i64) -> Self {
        assert!(h0.lo <= h0.hi);
        assert!(h0.lo as i64 - chi >= 0, "h1 would be negative");
        if h0.lo == h0.hi {
            return Self::exact(h0.lo, (h0.lo as i64 - chi) as u64);
        }
        let h1 = Bounds {
            lo: (h0.lo as i64 - chi) as u64,
            hi: (h0.hi as i64 - chi) as u64,
        };
        CohomologyDims::Interval { h0, h1, chi }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CohomologyDims::Exact { .. })
    }

    pub fn chi(&self) -> i64 {
        match self {
            CohomologyDims::Exact { chi, .. } | CohomologyDims::Interval { chi, .. } => *chi,
        }
    }

    pub fn h0_bounds(&self) -> Bounds {
        match self {
            CohomologyDims::Exact { h0, .. } => Bounds::exact(*h0),
            CohomologyDims::Interval { h0, .. } => *h0,
        }
    }

    pub fn h1_bounds(&self) -> Bounds {
        match self {
            CohomologyDims::Exact { h1, .. } => Bounds::exact(*h1),
            CohomologyDims::Interval { h1, .. } => *h1,
        }
    }

    pub fn h0(&self) -> Option<u64> {
        match self {
            CohomologyDims::Exact { h0, .. } => Some(*h0),
            CohomologyDims::Interval { .. } => None,
        }
    }

    pub fn h1(&self) -> Option<u64> {
        match self {
            CohomologyDims::Exact { h1, .. } => Some(*h1),
            CohomologyDims::Interval { .. } => None,
        }
    }
}

impl Add for CohomologyDims {
    type Output = CohomologyDims;

    fn add(self, rhs: CohomologyDims) -> CohomologyDims {
        match (self, rhs) {
            (
                CohomologyDims::Exact { h0: a0, h1: a1, .. },
                CohomologyDims::Exact { h0: b0, h1: b1, .. },
            ) => CohomologyDims::exact(a0 + b0, a1 + b1),
            (a, b) => {
                let (a0, b0) = (a.h0_bounds(), b.h0_bounds());
                let (a1, b1) = (a.h1_bounds(), b.h1_bounds());
                CohomologyDims::Interval {
                    h0: Bounds {
                        lo: a0.lo + b0.lo,
                        hi: a0.hi + b0.hi,
                    },
                    h1: Bounds {
                        lo: a1.lo + b1.lo,
                        hi: a1.hi + b1.hi,
                    },
                    chi: a.chi() + b.chi(),
                }
            }
        }
    }
}

impl fmt::Display for CohomologyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h0={} h1={}", self.h0_bounds(), self.h1_bounds())
    }
}

pub fn line_cohomology(line: &LineBundleClass, curve: Curve) -> CohomologyDims {
    let d = line.degree;
    let g = i64::from(curve.genus);
    let chi = d - g + 1;
    match curve.genus {
        0 => CohomologyDims::exact((d + 1).max(0) as u64, (-d - 1).max(0) as u64),
        1 => match (d, line.triviality) {
            (d, _) if d > 0 => CohomologyDims::exact(d as u64, 0),
            (d, _) if d < 0 => CohomologyDims::exact(0, (-d) as u64),
            (_, Triviality::Trivial) => CohomologyDims::exact(1, 1),
            (_, Triviality::NonTrivial) => CohomologyDims::exact(0, 0),
            (_, Triviality::Unknown) => CohomologyDims::from_h0_bounds(Bounds { lo: 0, hi: 1 }, 0),
        },
        _ => {
            if d < 0 {
                CohomologyDims::exact(0, (g - 1 - d) as u64)
            } else if d > 2 * g - 2 {
                CohomologyDims::exact(chi as u64, 0)
            } else if d == 0 && line.triviality == Triviality::Trivial {
                CohomologyDims::exact(1, g as u64)
            } else if d == 0 && line.triviality == Triviality::NonTrivial {
                // a degree-zero bundle with a nonzero section is trivial
                CohomologyDims::exact(0, (g - 1) as u64)
            } else {
                let lo = chi.max(0) as u64;
                let hi = (d / 2 + 1) as u64;
                CohomologyDims::from_h0_bounds(Bounds { lo, hi }, chi)
            }
        }
    }
}

pub fn bundle_cohomology(bundle: &SplitBundle) -> CohomologyDims {
    bundle
        .components()
        .iter()
        .map(|l| line_cohomology(l, bundle.curve()))
        .reduce(|a, b| a + b)
        .expect("split bundles are nonempty")
}

/// `K ⊗ L⁻¹`.
pub fn serre_dual(line: &LineBundleClass, curve: Curve) -> LineBundleClass {
    let k = curve.canonical_bundle();
    let p = LineBundleClass::product([&k, &line.dual()]);
    curve.line_bundle(p.degree, p.triviality)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lb(c: Curve, d: i64, t: Triviality) -> LineBundleClass {
        c.line_bundle(d, t)
    }

    const G0: Curve = Curve { genus: 0 };
    const G1: Curve = Curve { genus: 1 };

    #[test]
    fn genus_zero_examples() {
        assert_eq!(line_cohomology(&lb(G0, -2, Triviality::NonTrivial), G0), CohomologyDims::exact(0, 1));
        assert_eq!(line_cohomology(&lb(G0, -1, Triviality::NonTrivial), G0), CohomologyDims::exact(0, 0));
        assert_eq!(line_cohomology(&lb(G0, 0, Triviality::Trivial), G0), CohomologyDims::exact(1, 0));
    }

    #[test]
    fn genus_one_rules() {
        assert_eq!(line_cohomology(&lb(G1, 0, Triviality::Trivial), G1), CohomologyDims::exact(1, 1));
        assert_eq!(line_cohomology(&lb(G1, 0, Triviality::NonTrivial), G1), CohomologyDims::exact(0, 0));
        assert_eq!(line_cohomology(&lb(G1, 3, Triviality::NonTrivial), G1), CohomologyDims::exact(3, 0));
        assert_eq!(line_cohomology(&lb(G1, -2, Triviality::NonTrivial), G1), CohomologyDims::exact(0, 2));
        let u = line_cohomology(&lb(G1, 0, Triviality::Unknown), G1);
        assert_eq!(u.h0_bounds(), Bounds { lo: 0, hi: 1 });
        assert_eq!(u.h1_bounds(), Bounds { lo: 0, hi: 1 });
        assert!(!u.is_exact());
    }

    #[test]
    fn higher_genus_rules() {
        let g3 = Curve::new(3);
        assert_eq!(line_cohomology(&lb(g3, -1, Triviality::NonTrivial), g3), CohomologyDims::exact(0, 3));
        assert_eq!(line_cohomology(&lb(g3, 5, Triviality::NonTrivial), g3), CohomologyDims::exact(3, 0));
        assert_eq!(line_cohomology(&lb(g3, 0, Triviality::Trivial), g3), CohomologyDims::exact(1, 3));
        assert_eq!(line_cohomology(&lb(g3, 0, Triviality::NonTrivial), g3), CohomologyDims::exact(0, 2));
        // d = 4 = 2g − 2: χ = 2, Clifford gives h⁰ ≤ 3.
        let special = line_cohomology(&lb(g3, 4, Triviality::NonTrivial), g3);
        assert_eq!(special.h0_bounds(), Bounds { lo: 2, hi: 3 });
        assert_eq!(special.h1_bounds(), Bounds { lo: 0, hi: 1 });
        // d = 1: χ = −1, h⁰ ∈ [0, 1].
        let low = line_cohomology(&lb(g3, 1, Triviality::NonTrivial), g3);
        assert_eq!(low.h0_bounds(), Bounds { lo: 0, hi: 1 });
        assert_eq!(low.h1_bounds(), Bounds { lo: 1, hi: 2 });
    }

    #[test]
    fn bundle_sums() {
        let e = G0.split_bundle_from_degrees(&[1, 1, 0]).unwrap();
        assert_eq!(bundle_cohomology(&e), CohomologyDims::exact(5, 0));
        let e = G0.split_bundle_from_degrees(&[0, 0, 0]).unwrap();
        assert_eq!(bundle_cohomology(&e), CohomologyDims::exact(3, 0));
        let e = G0.split_bundle_from_degrees(&[-2, -2, -2]).unwrap();
        assert_eq!(bundle_cohomology(&e), CohomologyDims::exact(0, 3));

        let mixed = G1
            .split_bundle([lb(G1, 0, Triviality::Unknown), lb(G1, 2, Triviality::NonTrivial)])
            .unwrap();
        let dims = bundle_cohomology(&mixed);
        assert_eq!(dims.h0_bounds(), Bounds { lo: 2, hi: 3 });
        assert_eq!(dims.chi(), 2);
    }

    #[test]
    fn serre_dual_examples() {
        assert_eq!(serre_dual(&lb(G0, -2, Triviality::NonTrivial), G0), lb(G0, 0, Triviality::Trivial));
        assert_eq!(serre_dual(&lb(G1, 0, Triviality::Trivial), G1), lb(G1, 0, Triviality::Trivial));
        let g2 = Curve::new(2);
        assert_eq!(serre_dual(&lb(g2, 3, Triviality::NonTrivial), g2).degree, -1);
    }

    fn rr_consistent(dims: &CohomologyDims, d: i64, g: i64) -> bool {
        let chi = d - g + 1;
        match dims {
            CohomologyDims::Exact { h0, h1, chi: c } => {
                *h0 as i64 - *h1 as i64 == chi && *c == chi
            }
            CohomologyDims::Interval { h0, h1, chi: c } => {
                *c == chi
                    && h0.lo <= h0.hi
                    && h0.lo as i64 - h1.lo as i64 == chi
                    && h0.hi as i64 - h1.hi as i64 == chi
            }
        }
    }

    #[test]
    fn riemann_roch_and_serre_duality_sweep() {
        for genus in 0..=4u32 {
            let c = Curve::new(genus);
            for d in -10..=10 {
                for t in [Triviality::Trivial, Triviality::NonTrivial, Triviality::Unknown] {
                    let l = c.line_bundle(d, t);
                    let dims = line_cohomology(&l, c);
                    assert!(rr_consistent(&dims, d, genus as i64), "g={genus} d={d} {dims}");
                    let dual = line_cohomology(&serre_dual(&l, c), c);
                    if let (Some(a0), Some(a1), Some(b0), Some(b1)) =
                        (dims.h0(), dims.h1(), dual.h0(), dual.h1())
                    {
                        assert_eq!((a0, a1), (b1, b0), "g={genus} d={d} {t:?}");
                    }
                    if genus <= 1 && t != Triviality::Unknown {
                        assert!(dims.is_exact() && dual.is_exact());
                    }
                }
            }
        }
    }
}
