//! Sparse exact linear algebra over the rationals.
//!
//! Matrices here are small and very sparse (Čech coboundary maps have one or
//! two nonzeros per column), so rows are stored as ordered maps and
//! elimination only touches nonzero entries.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::Rational;

type SparseRow = BTreeMap<usize, Rational>;

/// A sparse rational matrix with a fixed column count.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            m.push_row(row.iter().cloned().enumerate());
        }
        m
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Append a row given as `(column, value)` pairs; repeated columns add up.
    pub fn push_row<I>(&mut self, entries: I)
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut row = SparseRow::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            let slot = row.entry(c).or_insert_with(Rational::zero);
            *slot += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push(row);
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseRow> = vec![SparseRow::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].insert(r, v.clone());
            }
        }
        SparseMatrix {
            cols: self.rows.len(),
            rows: cols,
        }
    }

    /// Row echelon form by Gaussian elimination. Returns the pivot rows with
    /// their pivot columns, in the order found.
    fn echelon(&self) -> Vec<(usize, SparseRow)> {
        let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
        // pivot column -> index into `pivots`
        let mut by_col: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &self.rows {
            let mut row = row.clone();
            while let Some((&lead, _)) = row.iter().next() {
                match by_col.get(&lead) {
                    Some(&p) => {
                        let factor = row[&lead].clone() / pivots[p].1[&lead].clone();
                        for (c, v) in &pivots[p].1 {
                            let slot = row.entry(*c).or_insert_with(Rational::zero);
                            *slot -= &factor * v;
                            if slot.is_zero() {
                                row.remove(c);
                            }
                        }
                    }
                    None => {
                        by_col.insert(lead, pivots.len());
                        pivots.push((lead, row));
                        break;
                    }
                }
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut pivots = self.echelon();
        // Reduce to RREF: normalize and back-substitute, highest pivot first.
        pivots.sort_by_key(|(c, _)| *c);
        for (lead, row) in pivots.iter_mut() {
            let inv = row[lead].clone().recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        for i in (0..pivots.len()).rev() {
            let (lead_i, row_i) = pivots[i].clone();
            for (_, row_j) in pivots.iter_mut().take(i) {
                if let Some(f) = row_j.get(&lead_i).cloned() {
                    for (c, v) in &row_i {
                        let slot = row_j.entry(*c).or_insert_with(Rational::zero);
                        *slot -= &f * v;
                        if slot.is_zero() {
                            row_j.remove(c);
                        }
                    }
                }
            }
        }
        let pivot_cols: BTreeMap<usize, &SparseRow> =
            pivots.iter().map(|(c, r)| (*c, r)).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains_key(c)) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::from_integer(1.into());
            for (pc, row) in &pivot_cols {
                if let Some(v) = row.get(&free) {
                    x[*pc] = -v.clone();
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Whether `v` (dense, length = column count) is in the span of the rows.
    pub fn row_span_contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut extended = self.clone();
        extended.push_row(v.iter().cloned().enumerate());
        extended.rank() == self.rank()
    }
}
