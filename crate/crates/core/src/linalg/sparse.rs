use std::collections::BTreeMap;

use super::field::Field;

/// A sparse vector as `(index, value)` pairs with strictly increasing
/// indices and no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

fn normalize(entries: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
    for (row, value) in entries {
        *merged.entry(row).or_default() += value;
    }
    merged.into_iter().filter(|&(_, v)| v != 0).collect()
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        Self { rows, cols: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let mut m = Self::new(rows);
        for c in cols {
            m.push_column(c);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).map(|i| (i, rows[i][j])).collect())
            .collect();
        Self::from_columns(nrows, cols)
    }

    /// Appends a column; repeated rows are summed and zeros dropped.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) {
        let col = normalize(entries);
        assert!(col.iter().all(|&(r, _)| r < self.rows), "row index out of range");
        self.cols.push(col);
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, i64)]> {
        self.cols.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.ncols()]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v;
        }
        d
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let cols = other
            .cols
            .iter()
            .map(|c| c.iter().flat_map(|&(k, b)| self.cols[k].iter().map(move |&(i, a)| (i, a * b))))
            .map(normalize)
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// Column `j` with entries mapped into `field`.
    pub fn column_in<F: Field>(&self, field: &F, j: usize) -> SparseVec<F::Elem> {
        self.cols[j].iter().map(|&(i, v)| (i, field.from_i64(v))).collect()
    }

    /// Applies the matrix to a sparse vector over `field`.
    pub fn apply<F: Field>(&self, field: &F, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (k, x) in v {
            for &(i, a) in &self.cols[*k] {
                let term = field.mul(&field.from_i64(a), x);
                let slot = acc.entry(i).or_insert_with(|| field.zero());
                *slot = field.add(slot, &term);
            }
        }
        acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
    }
}
