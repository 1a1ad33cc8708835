//! Linear algebra over GF(2) on 14-column activation matrices.
//!
//! Rows are packed into one word each, so a row operation is a single XOR.
//! Elimination always runs on a copy; inputs are never modified.

use std::collections::BTreeSet;
use std::fmt;

use crate::dimension::{ActivationVector, Dimension, DIMENSION_COUNT};

/// Identifies one matrix row: the corpus it came from and its endpoint id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowLabel {
    pub corpus: String,
    pub endpoint: String,
}

impl RowLabel {
    pub fn new(corpus: &str, endpoint: &str) -> Self {
        RowLabel {
            corpus: corpus.to_string(),
            endpoint: endpoint.to_string(),
        }
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.corpus, self.endpoint)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("{rows} rows but {labels} row labels")]
    LabelCount { rows: usize, labels: usize },
    #[error("duplicate row label {0}")]
    DuplicateLabel(RowLabel),
    #[error("witness is incomplete: no pure signal for {}", join(.0))]
    IncompleteWitness(Vec<Dimension>),
}

fn join(dims: &[Dimension]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Rows are activation vectors; columns are the 14 dimensions in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActivationMatrix {
    rows: Vec<ActivationVector>,
    labels: Vec<RowLabel>,
}

impl ActivationMatrix {
    /// Builds a matrix, checking that every row has a unique label.
    pub fn new(rows: Vec<ActivationVector>, labels: Vec<RowLabel>) -> Result<Self, MatrixError> {
        if rows.len() != labels.len() {
            return Err(MatrixError::LabelCount {
                rows: rows.len(),
                labels: labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l) {
                return Err(MatrixError::DuplicateLabel(l.clone()));
            }
        }
        Ok(ActivationMatrix { rows, labels })
    }

    /// Labels are trusted to be unique (they come from an endpoint list
    /// whose ids were already checked at load time).
    pub(crate) fn from_parts(rows: Vec<ActivationVector>, labels: Vec<RowLabel>) -> Self {
        debug_assert_eq!(rows.len(), labels.len());
        ActivationMatrix { rows, labels }
    }

    /// An anonymous matrix with generated labels `row0`, `row1`, ...
    pub fn from_rows(rows: Vec<ActivationVector>) -> Self {
        let labels = (0..rows.len())
            .map(|i| RowLabel::new("", &format!("row{i}")))
            .collect();
        ActivationMatrix { rows, labels }
    }

    pub fn rows(&self) -> &[ActivationVector] {
        &self.rows
    }

    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_labels(&self) -> [Dimension; DIMENSION_COUNT] {
        Dimension::ALL
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RowLabel, ActivationVector)> {
        self.labels.iter().zip(self.rows.iter().copied())
    }

    /// Keeps the rows for which `keep` returns true.
    pub fn filter(&self, mut keep: impl FnMut(&RowLabel, ActivationVector) -> bool) -> Self {
        let (rows, labels) = self
            .iter()
            .filter(|(l, r)| keep(l, *r))
            .map(|(l, r)| (r, l.clone()))
            .unzip();
        ActivationMatrix { rows, labels }
    }

    /// Rows whose corpus is in `corpora` (all rows when `corpora` is empty).
    pub fn restrict_to(&self, corpora: &BTreeSet<String>) -> Self {
        if corpora.is_empty() {
            return self.clone();
        }
        self.filter(|l, _| corpora.contains(&l.corpus))
    }

    /// Columns with at least one set bit.
    pub fn activated(&self) -> ActivationVector {
        self.rows
            .iter()
            .fold(ActivationVector::ZERO, |acc, r| acc | *r)
    }

    /// Per-dimension count of rows with the bit set, canonical order.
    pub fn column_counts(&self) -> [usize; DIMENSION_COUNT] {
        let mut counts = [0; DIMENSION_COUNT];
        for r in &self.rows {
            for d in r.dims() {
                counts[d.index()] += 1;
            }
        }
        counts
    }

    pub fn dark_rows(&self) -> impl Iterator<Item = &RowLabel> {
        self.iter().filter(|(_, r)| r.is_zero()).map(|(l, _)| l)
    }

    pub fn without_zero_rows(&self) -> Self {
        self.filter(|_, r| !r.is_zero())
    }

    /// Appends the rows of `other`.
    pub fn extend(&mut self, other: &ActivationMatrix) {
        self.rows.extend_from_slice(&other.rows);
        self.labels.extend_from_slice(&other.labels);
    }
}

/// Outcome of Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    /// Pivot columns in increasing canonical order.
    pub pivot_columns: Vec<Dimension>,
    /// Nonzero rows of the reduced row echelon form; row `k` has its
    /// leading bit in `pivot_columns[k]`.
    pub reduced_rows: Vec<ActivationVector>,
}

/// Column-by-column pivot search, row swap, and XOR to clear every other
/// nonzero entry in the pivot column. Produces the reduced row echelon
/// form, which is unique for a given row space.
pub fn rank(matrix: &ActivationMatrix) -> RankResult {
    rank_of_rows(matrix.rows())
}

pub fn rank_of_rows(rows: &[ActivationVector]) -> RankResult {
    let mut work: Vec<ActivationVector> = rows.iter().copied().filter(|r| !r.is_zero()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for dim in Dimension::ALL {
        let Some(found) = (next..work.len()).find(|&i| work[i].get(dim)) else {
            continue;
        };
        work.swap(next, found);
        let pivot = work[next];
        for (i, row) in work.iter_mut().enumerate() {
            if i != next && row.get(dim) {
                *row ^= pivot;
            }
        }
        pivots.push(dim);
        next += 1;
        if next == work.len() {
            break;
        }
    }
    work.truncate(next);
    RankResult {
        rank: next,
        pivot_columns: pivots,
        reduced_rows: work,
    }
}

/// A nonzero column combination that every row in scope annihilates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyCertificate {
    /// Columns with coefficient 1.
    pub columns: ActivationVector,
    /// Description of the row filter it was computed over.
    pub scope: String,
    /// Rows touching at least one of the columns.
    pub witness_rows: Vec<RowLabel>,
}

impl DependencyCertificate {
    pub fn new(columns: ActivationVector, scope: impl Into<String>) -> Self {
        DependencyCertificate {
            columns,
            scope: scope.into(),
            witness_rows: Vec::new(),
        }
    }

    pub fn dims(&self) -> Vec<Dimension> {
        self.columns.dims().collect()
    }

    /// Re-multiplies: true iff `columns` is nonzero and every row has even
    /// parity over it.
    pub fn holds_on(&self, matrix: &ActivationMatrix) -> bool {
        !self.columns.is_zero() && first_violation(matrix, self.columns).is_none()
    }

    /// `Y = A ⊕ C ⊕ B`: the alphabetically last symbol on the left, the
    /// rest in canonical order on the right.
    pub fn render(&self) -> String {
        let dims = self.dims();
        let Some(lhs) = dims.iter().copied().max_by_key(|d| d.symbol()) else {
            return "0 = 0".to_string();
        };
        let rhs: Vec<String> = dims
            .iter()
            .filter(|d| **d != lhs)
            .map(|d| d.to_string())
            .collect();
        if rhs.is_empty() {
            format!("{lhs} = 0")
        } else {
            format!("{lhs} = {}", rhs.join(" ⊕ "))
        }
    }
}

impl fmt::Display for DependencyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Index of the first row with odd parity over `columns`.
pub fn first_violation(matrix: &ActivationMatrix, columns: ActivationVector) -> Option<usize> {
    matrix.rows().iter().position(|r| r.dot(columns))
}

/// Canonical basis of the column nullspace `{c : M·c = 0}`, restricted to
/// activated columns.
///
/// One vector per free (non-pivot) activated column `f`, with `c_f = 1` and
/// each pivot coefficient read from the reduced rows. Vectors come out in
/// canonical order of their free column. Never-activated columns are not
/// reported: an absent dimension is not a dependency.
pub fn nullspace(matrix: &ActivationMatrix) -> Vec<DependencyCertificate> {
    nullspace_in_scope(matrix, "all")
}

pub fn nullspace_in_scope(matrix: &ActivationMatrix, scope: &str) -> Vec<DependencyCertificate> {
    let reduced = rank(matrix);
    let activated = matrix.activated();
    let pivot_set = ActivationVector::from_dims(reduced.pivot_columns.iter().copied());
    activated
        .dims()
        .filter(|d| !pivot_set.get(*d))
        .map(|free| {
            let mut columns = ActivationVector::unit(free);
            for (row, pivot) in reduced.reduced_rows.iter().zip(&reduced.pivot_columns) {
                if row.get(free) {
                    columns.set(*pivot);
                }
            }
            let mut cert = DependencyCertificate::new(columns, scope);
            cert.witness_rows = matrix
                .iter()
                .filter(|(_, r)| !(*r & columns).is_zero())
                .map(|(l, _)| l.clone())
                .collect();
            cert
        })
        .collect()
}

/// One pure-signal endpoint per dimension, where available.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SectionWitness {
    /// Indexed by canonical dimension position: `(row index, label)`.
    slots: [Option<(usize, RowLabel)>; DIMENSION_COUNT],
}

impl SectionWitness {
    pub fn get(&self, dim: Dimension) -> Option<&RowLabel> {
        self.slots[dim.index()].as_ref().map(|(_, l)| l)
    }

    pub fn row_index(&self, dim: Dimension) -> Option<usize> {
        self.slots[dim.index()].as_ref().map(|(i, _)| *i)
    }

    /// Assigned dimensions in canonical order.
    pub fn assignments(&self) -> impl Iterator<Item = (Dimension, &RowLabel)> {
        Dimension::ALL
            .into_iter()
            .filter_map(|d| self.get(d).map(|l| (d, l)))
    }

    pub fn len(&self) -> usize {
        self.slots.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn missing(&self) -> Vec<Dimension> {
        Dimension::ALL
            .into_iter()
            .filter(|d| self.slots[d.index()].is_none())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }
}

/// For each dimension, the first row equal to its standard basis vector.
pub fn pure_signals(matrix: &ActivationMatrix) -> SectionWitness {
    let mut witness = SectionWitness::default();
    for (i, (label, row)) in matrix.iter().enumerate() {
        if let Some(dim) = row.as_unit() {
            let slot = &mut witness.slots[dim.index()];
            if slot.is_none() {
                *slot = Some((i, label.clone()));
            }
        }
    }
    witness
}

/// The witness rows with columns permuted so the leading block is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityView {
    /// Column order of the view.
    pub column_order: Vec<Dimension>,
    pub row_labels: Vec<RowLabel>,
    /// `cells[r][c]` is the bit of row `r` in column `column_order[c]`.
    pub cells: Vec<Vec<bool>>,
}

impl IdentityView {
    pub fn is_identity(&self) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, &b)| b == (r == c)))
    }
}

/// Orders the witness rows as they appear in the matrix and permutes the
/// columns to follow, so the source grouping of the rows determines the
/// column order. An input whose witnesses already sit in canonical order
/// yields the identity permutation.
pub fn expose_identity(
    matrix: &ActivationMatrix,
    witness: &SectionWitness,
) -> Result<IdentityView, MatrixError> {
    if !witness.is_complete() {
        return Err(MatrixError::IncompleteWitness(witness.missing()));
    }
    let mut picks: Vec<(usize, Dimension)> = Dimension::ALL
        .into_iter()
        .map(|d| (witness.row_index(d).expect("complete witness"), d))
        .collect();
    picks.sort();
    let column_order: Vec<Dimension> = picks.iter().map(|(_, d)| *d).collect();
    let row_labels = picks
        .iter()
        .map(|(i, _)| matrix.labels()[*i].clone())
        .collect();
    let cells = picks
        .iter()
        .map(|(i, _)| {
            let row = matrix.rows()[*i];
            column_order.iter().map(|d| row.get(*d)).collect()
        })
        .collect();
    Ok(IdentityView {
        column_order,
        row_labels,
        cells,
    })
}
