//! Obstruction sheaves `Q⁽ᵏ⁾`, their cohomology, and a goodness classifier.

use std::fmt;

use num_integer::binomial;
use serde::Serialize;

use crate::bundle::{Model, SplitBundle};
use crate::cohomology::{bundle_cohomology, CohomologyDims};
use crate::exotic::{find_witness, ExoticWitness, RankThreeModel};
use crate::{Error, Result};

/// `∧ᵏE ⊗ T` for even `k`, `E* ⊗ ∧ᵏE` for odd `k`.
pub fn obstruction_sheaf(m: &Model, k: i64) -> Result<SplitBundle> {
    let q = m.rank();
    if k < 2 || k > q as i64 {
        return Err(Error::ObstructionIndex { k, rank: q });
    }
    let wedge = m.bundle.exterior_power(k)?;
    if k % 2 == 0 {
        Ok(wedge.tensor_line(&m.curve().tangent_bundle()))
    } else {
        m.bundle.dual().tensor(&wedge)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionLayer {
    pub k: usize,
    pub sheaf: SplitBundle,
    /// `H⁰(Q⁽ᵏ⁾)`; only the `h⁰` row is meaningful here.
    pub sections: CohomologyDims,
    /// `H¹(Q⁽ᵏ⁾)`, the k-th obstruction space.
    pub space: CohomologyDims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub layers: Vec<ObstructionLayer>,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn layer(&self, k: usize) -> Option<&ObstructionLayer> {
        self.layers.iter().find(|l| l.k == k)
    }
}

pub fn obstruction_report(m: &Model) -> Result<ObstructionReport> {
    let q = m.rank();
    if q < 2 {
        return Err(Error::RankTooSmall { rank: q });
    }
    let mut layers = Vec::with_capacity(q - 1);
    let mut notes = Vec::new();
    for k in 2..=q {
        let sheaf = obstruction_sheaf(m, k as i64)?;
        let dims = bundle_cohomology(&sheaf);
        if k % 2 == 1 && m.bundle.balanced_degree().is_some() && k != q {
            let closed_form = k as u64 * binomial(q as u64, k as u64);
            notes.push(format!(
                "k={k}: E*⊗∧^kE has {} summands of degree {}; a k·C(q,k) count gives {closed_form}",
                sheaf.rank(),
                sheaf.components()[0].degree
            ));
        }
        layers.push(ObstructionLayer {
            k,
            sheaf,
            sections: dims,
            space: dims,
        });
    }
    Ok(ObstructionReport { layers, notes })
}

/// `k`-range on which rule [`Rule::H0Vanishing`] asks for `h⁰(Q⁽ᵏ⁾) = 0`.
pub fn sufficient_vanishing_range(m: &Model) -> Vec<usize> {
    (2..m.rank()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Good,
    SupportsExotic,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Good => 0,
            Status::SupportsExotic => 10,
            Status::Inconclusive => 20,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Decision rules, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// Rank 3 on the projective line: exotic exactly at `O(−1)³`.
    #[serde(rename = "rank3-p1")]
    RankThreeP1,
    /// `⊕^q O(d)` on the projective line, `q ≥ 3`: exotic at `d = −1`,
    /// good for `d < −1`.
    #[serde(rename = "balanced-p1")]
    BalancedP1,
    /// Rank 3, nonnegative summands, `deg E < 3g − 3`.
    #[serde(rename = "nonneg-low-degree")]
    NonnegLowDegree,
    /// `h⁰(Q⁽ᵏ⁾) = 0` for `2 ≤ k ≤ q − 1`.
    #[serde(rename = "h0-vanishing")]
    H0Vanishing,
    /// Genus one, rank 3, `deg Q⁽²⁾ = h⁰` or `deg Q⁽²⁾ = −h¹`.
    #[serde(rename = "genus1-extremal")]
    Genus1Extremal,
}

impl Rule {
    pub const ORDER: [Rule; 5] = [
        Rule::RankThreeP1,
        Rule::BalancedP1,
        Rule::NonnegLowDegree,
        Rule::H0Vanishing,
        Rule::Genus1Extremal,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::RankThreeP1 => "rank3-p1",
            Rule::BalancedP1 => "balanced-p1",
            Rule::NonnegLowDegree => "nonneg-low-degree",
            Rule::H0Vanishing => "h0-vanishing",
            Rule::Genus1Extremal => "genus1-extremal",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Hypotheses hold; the rule decides the model.
    Decides(Status),
    NotApplicable,
    /// Applicable, but a hypothesis fails.
    Failed,
    /// A hypothesis depends on interval cohomology; the rule is skipped.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleOutcome {
    pub rule: Rule,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessVerdict {
    pub status: Status,
    /// The deciding rule; `None` when inconclusive.
    pub rule: Option<Rule>,
    /// Every rule tried, in order, up to and including the deciding one.
    pub trail: Vec<RuleOutcome>,
    pub witness: Option<ExoticWitness>,
}

impl GoodnessVerdict {
    pub fn failed_rules(&self) -> impl Iterator<Item = &RuleOutcome> {
        self.trail
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Failed | Outcome::Indeterminate))
    }
}

fn outcome(rule: Rule, outcome: Outcome, detail: impl Into<String>) -> RuleOutcome {
    RuleOutcome {
        rule,
        outcome,
        detail: detail.into(),
    }
}

pub fn rule_rank_three_p1(m: &Model) -> RuleOutcome {
    let r = Rule::RankThreeP1;
    if m.curve().genus != 0 || m.rank() != 3 {
        return outcome(r, Outcome::NotApplicable, "needs genus 0, rank 3");
    }
    let degrees = m.bundle.degrees();
    if degrees == [-1, -1, -1] {
        outcome(r, Outcome::Decides(Status::SupportsExotic), "all d_i = -1")
    } else {
        outcome(r, Outcome::Decides(Status::Good), format!("degrees {degrees:?} include some d_i != -1"))
    }
}

pub fn rule_balanced_p1(m: &Model) -> RuleOutcome {
    let r = Rule::BalancedP1;
    let Some(d) = m.bundle.balanced_degree() else {
        return outcome(r, Outcome::NotApplicable, "not balanced");
    };
    if m.curve().genus != 0 || m.rank() < 3 {
        return outcome(r, Outcome::NotApplicable, "needs genus 0, rank >= 3");
    }
    match d {
        -1 => outcome(r, Outcome::Decides(Status::SupportsExotic), "d = -1"),
        d if d < -1 => outcome(r, Outcome::Decides(Status::Good), format!("d = {d} < -1")),
        d => outcome(r, Outcome::Failed, format!("d = {d} > -1")),
    }
}

pub fn rule_nonneg_low_degree(m: &Model) -> RuleOutcome {
    let r = Rule::NonnegLowDegree;
    if m.rank() != 3 {
        return outcome(r, Outcome::NotApplicable, "needs rank 3");
    }
    let bound = 3 * i64::from(m.curve().genus) - 3;
    let degrees = m.bundle.degrees();
    if degrees.iter().any(|&d| d < 0) {
        return outcome(r, Outcome::Failed, "a summand has negative degree");
    }
    let deg = m.bundle.degree();
    if deg < bound {
        outcome(r, Outcome::Decides(Status::Good), format!("deg E = {deg} < {bound} = 3g-3"))
    } else {
        outcome(r, Outcome::Failed, format!("deg E = {deg} >= {bound} = 3g-3"))
    }
}

pub fn rule_h0_vanishing(m: &Model, report: &ObstructionReport) -> RuleOutcome {
    let r = Rule::H0Vanishing;
    let range = sufficient_vanishing_range(m);
    let mut indeterminate = Vec::new();
    for &k in &range {
        let layer = report.layer(k).expect("report covers the vanishing range");
        match layer.sections.h0() {
            Some(0) => {}
            Some(h) => return outcome(r, Outcome::Failed, format!("h0(Q^({k})) = {h}")),
            None => indeterminate.push(k),
        }
    }
    if !indeterminate.is_empty() {
        return outcome(
            r,
            Outcome::Indeterminate,
            format!("h0(Q^(k)) is an interval for k in {indeterminate:?}"),
        );
    }
    outcome(
        r,
        Outcome::Decides(Status::Good),
        format!("h0(Q^(k)) = 0 for k in {range:?}"),
    )
}

pub fn rule_genus1_extremal(m: &Model, report: &ObstructionReport) -> RuleOutcome {
    let r = Rule::Genus1Extremal;
    if m.curve().genus != 1 || m.rank() != 3 {
        return outcome(r, Outcome::NotApplicable, "needs genus 1, rank 3");
    }
    let layer = report.layer(2).expect("rank 3 has a k = 2 layer");
    let deg = layer.sheaf.degree();
    match (layer.sections.h0(), layer.sections.h1()) {
        (Some(h0), Some(h1)) => {
            if deg == h0 as i64 {
                outcome(r, Outcome::Decides(Status::Good), format!("deg Q^(2) = {deg} = h0"))
            } else if deg == -(h1 as i64) {
                outcome(r, Outcome::Decides(Status::Good), format!("deg Q^(2) = {deg} = -h1"))
            } else {
                outcome(r, Outcome::Failed, format!("deg Q^(2) = {deg}, h0 = {h0}, h1 = {h1}"))
            }
        }
        _ => outcome(r, Outcome::Indeterminate, "h0(Q^(2)) is an interval"),
    }
}

/// First deciding rule wins; see [`Rule::ORDER`].
pub fn classify(m: &Model) -> GoodnessVerdict {
    let report = if m.rank() >= 2 {
        obstruction_report(m).ok()
    } else {
        None
    };
    let mut trail = Vec::new();
    for rule in Rule::ORDER {
        let result = match (rule, &report) {
            (Rule::RankThreeP1, _) => rule_rank_three_p1(m),
            (Rule::BalancedP1, _) => rule_balanced_p1(m),
            (Rule::NonnegLowDegree, _) => rule_nonneg_low_degree(m),
            (Rule::H0Vanishing, Some(rep)) => rule_h0_vanishing(m, rep),
            (Rule::H0Vanishing, None) => outcome(
                rule,
                Outcome::Decides(Status::Good),
                "rank 1: no obstruction sheaves",
            ),
            (Rule::Genus1Extremal, Some(rep)) => rule_genus1_extremal(m, rep),
            (Rule::Genus1Extremal, None) => outcome(rule, Outcome::NotApplicable, "rank 1"),
        };
        let decided = match result.outcome {
            Outcome::Decides(s) => Some(s),
            _ => None,
        };
        trail.push(result);
        if let Some(status) = decided {
            let witness = if status == Status::SupportsExotic && rule == Rule::RankThreeP1 {
                RankThreeModel::from_model(m)
                    .ok()
                    .and_then(|r3| find_witness(&r3, r3.required_window()).ok().flatten())
            } else {
                None
            };
            return GoodnessVerdict {
                status,
                rule: Some(rule),
                trail,
                witness,
            };
        }
    }
    GoodnessVerdict {
        status: Status::Inconclusive,
        rule: None,
        trail,
        witness: None,
    }
}
