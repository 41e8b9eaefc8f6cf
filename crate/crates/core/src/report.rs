//! Model specs, analysis documents, sweeps and oracle listings.
//!
//! Documents are plain `Serialize` structs, so JSON keys come out in field
//! order and repeated runs are byte-identical.

use std::fmt::{self, Write as _};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bundle::{Curve, LineBundleClass, Model, Triviality};
use crate::cech::{self, CechClass, Window};
use crate::cohomology::CohomologyDims;
use crate::exotic::{self, BoundaryImage, RankThreeModel, SectionQ2, PAIRS};
use crate::laurent::LaurentSection;
use crate::obstruction::{classify, obstruction_report, GoodnessVerdict, Outcome, Status};
use crate::{rat, Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sweeps larger than this are refused.
pub const MAX_SWEEP_ROWS: u128 = 1_000_000;

/// Exit code for malformed input.
pub const EXIT_INPUT_ERROR: i32 = 2;

/// User-facing model description.
///
/// Degree-zero summands on a positive-genus curve default to
/// [`Triviality::Unknown`] unless a flag says otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub genus: u32,
    pub degrees: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triviality_flags: Option<Vec<Triviality>>,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::InvalidSpec {
        path: path.into(),
        message: message.into(),
    }
}

impl ModelSpec {
    pub fn new(genus: u32, degrees: Vec<i64>) -> Self {
        Self {
            genus,
            degrees,
            triviality_flags: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: ModelSpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(path, e.into_inner().to_string())
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() {
            return Err(invalid("degrees", "must be nonempty"));
        }
        if let Some(flags) = &self.triviality_flags {
            if flags.len() != self.degrees.len() {
                return Err(invalid(
                    "triviality_flags",
                    format!("has {} entries for {} degrees", flags.len(), self.degrees.len()),
                ));
            }
            for (i, (&d, &t)) in self.degrees.iter().zip(flags).enumerate() {
                let contradiction = match t {
                    Triviality::Trivial => d != 0,
                    Triviality::NonTrivial => d == 0 && self.genus == 0,
                    Triviality::Unknown => d != 0 || self.genus == 0,
                };
                if contradiction {
                    return Err(invalid(
                        format!("triviality_flags[{i}]"),
                        format!("`{}` is impossible for degree {d} in genus {}", t.tag(), self.genus),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> Result<Model> {
        self.validate()?;
        let curve = Curve::new(self.genus);
        let lines = self.degrees.iter().enumerate().map(|(i, &d)| {
            let flag = self
                .triviality_flags
                .as_ref()
                .map(|f| f[i])
                .unwrap_or(if self.genus == 0 { Triviality::Trivial } else { Triviality::Unknown });
            curve.line_bundle(d, flag)
        });
        curve.split_bundle(lines).map(Model::new)
    }
}

/// Hex SHA-256 of the transition conventions for `O(−1)`, `O(0)`, `O(1)`.
pub fn convention_fingerprint() -> String {
    let conventions: Vec<_> = [-1, 0, 1].into_iter().map(cech::transition_convention).collect();
    let canonical = serde_json::to_string(&conventions).expect("conventions serialize");
    Sha256::digest(canonical.as_bytes())
        .iter()
        .fold(String::new(), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryLine {
    pub degree: i64,
    pub triviality: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelView {
    pub genus: u32,
    pub rank: usize,
    pub degree: i64,
    pub summands: Vec<SummaryLine>,
}

impl ModelView {
    fn new(m: &Model) -> Self {
        Self {
            genus: m.curve().genus,
            rank: m.rank(),
            degree: m.bundle.degree(),
            summands: m
                .bundle
                .components()
                .iter()
                .map(|l: &LineBundleClass| SummaryLine {
                    degree: l.degree,
                    triviality: l.triviality.tag(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub k: usize,
    pub sheaf_degrees: Vec<i64>,
    pub h0: String,
    pub h1: String,
    pub exact: bool,
}

impl ObstructionRow {
    fn new(k: usize, degrees: Vec<i64>, sections: &CohomologyDims, space: &CohomologyDims) -> Self {
        Self {
            k,
            sheaf_degrees: degrees,
            h0: sections.h0_bounds().to_string(),
            h1: space.h1_bounds().to_string(),
            exact: sections.is_exact() && space.is_exact(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub rule: &'static str,
    pub outcome: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictView {
    pub status: Status,
    pub rule: Option<&'static str>,
    pub trail: Vec<TrailEntry>,
}

impl VerdictView {
    fn new(v: &GoodnessVerdict) -> Self {
        Self {
            status: v.status,
            rule: v.rule.map(|r| r.tag()),
            trail: v
                .trail
                .iter()
                .map(|r| TrailEntry {
                    rule: r.rule.tag(),
                    outcome: match &r.outcome {
                        Outcome::Decides(s) => format!("decides {s}"),
                        Outcome::NotApplicable => "not applicable".into(),
                        Outcome::Failed => "failed".into(),
                        Outcome::Indeterminate => "indeterminate".into(),
                    },
                    detail: r.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassView {
    pub bundle_degree: i64,
    pub coordinates: Vec<String>,
}

impl From<&CechClass> for ClassView {
    fn from(c: &CechClass) -> Self {
        Self {
            bundle_degree: c.bundle_degree,
            coordinates: c.coordinates.iter().map(ToString::to_string).collect(),
        }
    }
}

/// A section of `Q⁽²⁾` as chart-0 coefficients of `θ_aθ_b∂_z`, pair by pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionView {
    pub pairs: Vec<String>,
    pub chart0: Vec<String>,
    pub chart1: Vec<String>,
}

impl From<&SectionQ2> for SectionView {
    fn from(s: &SectionQ2) -> Self {
        Self {
            pairs: PAIRS.iter().map(|(a, b)| format!("{}{}", a + 1, b + 1)).collect(),
            chart0: s.chart0.iter().map(LaurentSection::to_string).collect(),
            chart1: s.chart1.iter().map(LaurentSection::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessView {
    pub section: SectionView,
    pub classes: Vec<ClassView>,
    pub verified: bool,
}

/// Measured rank of the connecting map for a rank-3 model on the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSummary {
    pub h0_q2: usize,
    pub h1_q3: usize,
    pub rank: usize,
    /// `true` when "α ≠ 0" agrees with "verdict is SupportsExotic".
    pub agrees_with_verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub convention_fingerprint: String,
    pub spec: ModelSpec,
    pub model: ModelView,
    pub obstruction: Vec<ObstructionRow>,
    pub notes: Vec<String>,
    pub verdict: VerdictView,
    pub witness: Option<WitnessView>,
    pub alpha: Option<AlphaSummary>,
}

impl AnalysisDocument {
    pub fn exit_code(&self) -> i32 {
        self.verdict.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn classes_view(classes: &[CechClass]) -> Vec<ClassView> {
    classes.iter().map(ClassView::from).collect()
}

pub fn analyze(spec: &ModelSpec, window: Window) -> Result<AnalysisDocument> {
    let model = spec.model()?;
    let verdict = classify(&model);
    let (obstruction, notes) = if model.rank() >= 2 {
        let rep = obstruction_report(&model)?;
        let rows = rep
            .layers
            .iter()
            .map(|l| ObstructionRow::new(l.k, l.sheaf.degrees(), &l.sections, &l.space))
            .collect();
        (rows, rep.notes)
    } else {
        (Vec::new(), Vec::new())
    };
    let witness = match &verdict.witness {
        Some(w) => Some(WitnessView {
            section: SectionView::from(&w.section),
            classes: classes_view(&w.image.classes),
            verified: w.verify(window)?,
        }),
        None => None,
    };
    let alpha = match RankThreeModel::from_model(&model) {
        Ok(r3) => {
            let rank = exotic::alpha_rank(&r3, window)?;
            Some(AlphaSummary {
                h0_q2: r3.h0_q2(),
                h1_q3: r3.h1_q3(),
                rank,
                agrees_with_verdict: (rank > 0) == (verdict.status == Status::SupportsExotic),
            })
        }
        Err(_) => None,
    };
    Ok(AnalysisDocument {
        tool: "obstructor",
        version: VERSION,
        convention_fingerprint: convention_fingerprint(),
        spec: spec.clone(),
        model: ModelView::new(&model),
        obstruction,
        notes,
        verdict: VerdictView::new(&verdict),
        witness,
        alpha,
    })
}

/// `O(a)^m + O(b)^n` for a sorted degree list.
fn multiset(degrees: &[i64]) -> String {
    degrees
        .iter()
        .chunk_by(|&&d| d)
        .into_iter()
        .map(|(d, run)| match run.count() {
            1 => format!("O({d})"),
            n => format!("O({d})^{n}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for AnalysisDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: Vec<String> = self
            .model
            .summands
            .iter()
            .map(|s| match (s.degree, s.triviality) {
                (0, "trivial") => "O".to_string(),
                (0, t) => format!("L0[{t}]"),
                (d, _) => format!("L({d})"),
            })
            .collect();
        writeln!(f, "obstructor {}  conventions {}", self.version, &self.convention_fingerprint[..16])?;
        writeln!(
            f,
            "model: genus {}, E = {}  (rank {}, degree {})",
            self.model.genus,
            degrees.join(" + "),
            self.model.rank,
            self.model.degree
        )?;
        if !self.obstruction.is_empty() {
            writeln!(f, "{:>3}  {:<28} {:>10} {:>10}  exact", "k", "Q^(k)", "h0", "h1")?;
            for row in &self.obstruction {
                writeln!(
                    f,
                    "{:>3}  {:<28} {:>10} {:>10}  {}",
                    row.k,
                    multiset(&row.sheaf_degrees),
                    row.h0,
                    row.h1,
                    if row.exact { "yes" } else { "no" }
                )?;
            }
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        match self.verdict.rule {
            Some(rule) => writeln!(f, "verdict: {} [{rule}]", self.verdict.status)?,
            None => writeln!(f, "verdict: {}", self.verdict.status)?,
        }
        for t in &self.verdict.trail {
            writeln!(f, "  {:<18} {:<20} {}", t.rule, t.outcome, t.detail)?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness section (chart 0, pairs {}): {}", w.section.pairs.join(" "), w.section.chart0.join(", "))?;
            for (a, c) in w.classes.iter().enumerate() {
                writeln!(f, "  H1(O({})) component {}: [{}]", c.bundle_degree, a + 1, c.coordinates.join(", "))?;
            }
            writeln!(f, "  re-verified: {}", w.verified)?;
        }
        if let Some(a) = &self.alpha {
            writeln!(
                f,
                "alpha: H0(Q^(2)) dim {} -> H1(Q^(3)) dim {}, rank {}{}",
                a.h0_q2,
                a.h1_q3,
                a.rank,
                if a.agrees_with_verdict { "" } else { "  (disagrees with verdict)" }
            )?;
        }
        Ok(())
    }
}

/// The degree tuples to sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepBox {
    /// Every ordered tuple in the product of inclusive ranges.
    Product { genus: u32, ranges: Vec<(i64, i64)> },
    /// `⊕^rank O(d)` for `d` in an inclusive range.
    Balanced { genus: u32, rank: usize, range: (i64, i64) },
}

impl SweepBox {
    pub fn cube(genus: u32, rank: usize, lo: i64, hi: i64) -> Self {
        SweepBox::Product {
            genus,
            ranges: vec![(lo, hi); rank],
        }
    }

    fn genus(&self) -> u32 {
        match self {
            SweepBox::Product { genus, .. } | SweepBox::Balanced { genus, .. } => *genus,
        }
    }

    fn width((lo, hi): (i64, i64)) -> u128 {
        if hi < lo {
            0
        } else {
            (i128::from(hi) - i128::from(lo) + 1) as u128
        }
    }

    pub fn row_count(&self) -> u128 {
        match self {
            SweepBox::Product { ranges, .. } => {
                if ranges.is_empty() {
                    return 0;
                }
                ranges
                    .iter()
                    .map(|&r| Self::width(r))
                    .try_fold(1u128, |acc, w| acc.checked_mul(w))
                    .unwrap_or(u128::MAX)
            }
            SweepBox::Balanced { rank, range, .. } => {
                if *rank == 0 {
                    0
                } else {
                    Self::width(*range)
                }
            }
        }
    }

    /// The `i`-th tuple in lexicographic order.
    fn tuple(&self, mut i: u128) -> Vec<i64> {
        match self {
            SweepBox::Product { ranges, .. } => {
                let mut out = vec![0; ranges.len()];
                for (slot, &(lo, hi)) in out.iter_mut().zip(ranges).rev() {
                    let w = Self::width((lo, hi));
                    *slot = lo + (i % w) as i64;
                    i /= w;
                }
                out
            }
            SweepBox::Balanced { rank, range, .. } => vec![range.0 + i as i64; *rank],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub degrees: Vec<i64>,
    pub status: Status,
    pub rule: Option<&'static str>,
    /// Present in check mode for genus-0 rank-3 rows.
    pub alpha_nonzero: Option<bool>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub good: usize,
    pub supports_exotic: usize,
    pub inconclusive: usize,
    pub checked: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub tool: &'static str,
    pub version: &'static str,
    pub genus: u32,
    pub check_alpha: bool,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

fn sweep_row(genus: u32, degrees: Vec<i64>, check_alpha: bool, window: Window) -> Result<SweepRow> {
    let model = ModelSpec::new(genus, degrees.clone()).model()?;
    let verdict = classify(&model);
    let alpha_nonzero = match (check_alpha, RankThreeModel::from_model(&model)) {
        (true, Ok(r3)) => Some(exotic::alpha_rank(&r3, window)? > 0),
        _ => None,
    };
    Ok(SweepRow {
        agrees: alpha_nonzero.map(|nz| nz == (verdict.status == Status::SupportsExotic)),
        degrees,
        status: verdict.status,
        rule: verdict.rule.map(|r| r.tag()),
        alpha_nonzero,
    })
}

/// Classify every tuple in the box. Rows are evaluated in parallel and
/// returned in lexicographic order.
pub fn sweep(b: &SweepBox, check_alpha: bool, window: Window) -> Result<SweepTable> {
    let n = b.row_count();
    if n > MAX_SWEEP_ROWS {
        return Err(Error::UnboundedBox {
            rows: n,
            limit: MAX_SWEEP_ROWS,
        });
    }
    let genus = b.genus();
    let rows: Vec<SweepRow> = (0..n as u64)
        .into_par_iter()
        .map(|i| sweep_row(genus, b.tuple(u128::from(i)), check_alpha, window))
        .collect::<Result<_>>()?;
    let mut summary = SweepSummary {
        rows: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.status {
            Status::Good => summary.good += 1,
            Status::SupportsExotic => summary.supports_exotic += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
        if let Some(agrees) = r.agrees {
            summary.checked += 1;
            summary.disagreements += usize::from(!agrees);
        }
    }
    Ok(SweepTable {
        tool: "obstructor",
        version: VERSION,
        genus,
        check_alpha,
        rows,
        summary,
    })
}

impl fmt::Display for SweepTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            write!(f, "{:<20} {:<15} {}", format!("{:?}", r.degrees), r.status.to_string(), r.rule.unwrap_or("-"))?;
            if let (Some(nz), Some(ok)) = (r.alpha_nonzero, r.agrees) {
                write!(f, "  alpha {}{}", if nz { "nonzero" } else { "zero" }, if ok { "" } else { "  MISMATCH" })?;
            }
            writeln!(f)?;
        }
        let s = &self.summary;
        write!(
            f,
            "rows {}  good {}  exotic {}  inconclusive {}",
            s.rows, s.good, s.supports_exotic, s.inconclusive
        )?;
        if self.check_alpha {
            write!(f, "  checked {}  disagreements {}", s.checked, s.disagreements)?;
        }
        writeln!(f)
    }
}

/// `α` on each basis section of `H⁰(Q⁽²⁾)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaImageView {
    pub pair: String,
    pub exponent: i64,
    pub classes: Vec<ClassView>,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExoticDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub convention_fingerprint: String,
    pub degrees: [i64; 3],
    pub q2_degrees: [i64; 3],
    pub q3_degrees: [i64; 3],
    pub h0_q2: usize,
    pub h1_q3: usize,
    pub alpha_rank: usize,
    pub images: Vec<AlphaImageView>,
    /// `ω_*δ(ψ)` for `ψ = diag(2, 3, 5)`; expected to vanish.
    pub split_image_zero: bool,
}

impl ExoticDocument {
    pub fn exit_code(&self) -> i32 {
        if self.alpha_rank > 0 {
            Status::SupportsExotic.exit_code()
        } else {
            Status::Good.exit_code()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn image_view(phi: &SectionQ2, img: &BoundaryImage) -> AlphaImageView {
    let (p, exponent) = phi
        .chart0
        .iter()
        .enumerate()
        .find_map(|(p, c)| c.as_monomial().map(|(_, e)| (p, e)))
        .expect("basis sections are monomials");
    let (a, b) = PAIRS[p];
    AlphaImageView {
        pair: format!("{}{}", a + 1, b + 1),
        exponent,
        classes: classes_view(&img.classes),
        zero: img.is_zero(),
    }
}

pub fn exotic_report(spec: &ModelSpec, window: Window) -> Result<ExoticDocument> {
    let r3 = RankThreeModel::from_model(&spec.model()?)?;
    let images = exotic::alpha_on_basis(&r3, window)?;
    let split = exotic::split_image_obstruction(&r3, &[rat(2), rat(3), rat(5)], window)?;
    Ok(ExoticDocument {
        tool: "obstructor",
        version: VERSION,
        convention_fingerprint: convention_fingerprint(),
        degrees: r3.degrees,
        q2_degrees: std::array::from_fn(|p| r3.q2_degree(p)),
        q3_degrees: std::array::from_fn(|a| r3.q3_degree(a)),
        h0_q2: r3.h0_q2(),
        h1_q3: r3.h1_q3(),
        alpha_rank: exotic::alpha_rank(&r3, window)?,
        images: images.iter().map(|(phi, img)| image_view(phi, img)).collect(),
        split_image_zero: split.iter().all(CechClass::is_zero),
    })
}

impl fmt::Display for ExoticDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.degrees;
        writeln!(f, "E = O({a}) + O({b}) + O({c}) on P1")?;
        writeln!(f, "Q^(2) degrees {:?}, Q^(3) degrees {:?}", self.q2_degrees, self.q3_degrees)?;
        for img in &self.images {
            let coords: Vec<String> = img
                .classes
                .iter()
                .map(|c| format!("[{}]", c.coordinates.join(", ")))
                .collect();
            writeln!(f, "  alpha(z^{} t{} dz) = {}", img.exponent, img.pair, coords.join(" "))?;
        }
        writeln!(f, "alpha: dim {} -> dim {}, rank {}", self.h0_q2, self.h1_q3, self.alpha_rank)?;
        writeln!(f, "split image of diag(2,3,5) vanishes: {}", self.split_image_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleListing {
    pub degree: i64,
    pub window: u32,
    pub h0: u64,
    pub h1: u64,
    pub h0_basis: Vec<String>,
    pub h1_basis: Vec<String>,
    pub convention: cech::TransitionConvention,
}

impl OracleListing {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("listing serializes")
    }
}

pub fn oracle(degree: i64, window: Window) -> Result<OracleListing> {
    let (h0, h1) = cech::cech_dims(degree, window)?;
    let h0_basis = cech::cech_h0_basis(degree, window)?
        .iter()
        .map(ToString::to_string)
        .collect();
    let h1_basis = cech::cech_h1_monomials(degree, window)?
        .into_iter()
        .map(|e| LaurentSection::z_pow(e).to_string())
        .collect();
    Ok(OracleListing {
        degree,
        window: window.0,
        h0,
        h1,
        h0_basis,
        h1_basis,
        convention: cech::transition_convention(degree),
    })
}

impl fmt::Display for OracleListing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "O({}) on P1, window {}", self.degree, self.window)?;
        writeln!(f, "h0 = {}  basis [{}]", self.h0, self.h0_basis.join(", "))?;
        writeln!(f, "h1 = {}  basis [{}]", self.h1, self.h1_basis.join(", "))
    }
}
