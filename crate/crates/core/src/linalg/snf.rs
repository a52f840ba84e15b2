use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::sparse::SparseMatrix;

type Dense = Vec<Vec<BigInt>>;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | …`, all entries nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub u: Dense,
    pub d: Dense,
    pub v: Dense,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_dense(m: &SparseMatrix) -> Dense {
    let mut d = vec![vec![BigInt::zero(); m.ncols()]; m.nrows()];
    for (i, j, v) in m.triplets() {
        d[i][j] = BigInt::from(v);
    }
    d
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

struct Elimination {
    a: Dense,
    u: Option<Dense>,
    v: Option<Dense>,
}

impl Elimination {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(j, k);
            }
        }
    }

    /// row_i -= q · row_k
    fn row_op(&mut self, i: usize, k: usize, q: &BigInt) {
        fn apply(m: &mut Dense, i: usize, k: usize, q: &BigInt) {
            let src = m[k].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= q * s;
                }
            }
        }
        apply(&mut self.a, i, k, q);
        if let Some(u) = &mut self.u {
            apply(u, i, k, q);
        }
    }

    /// col_j -= q · col_k
    fn col_op(&mut self, j: usize, k: usize, q: &BigInt) {
        fn apply(m: &mut Dense, j: usize, k: usize, q: &BigInt) {
            for row in m {
                if !row[k].is_zero() {
                    let delta = q * &row[k];
                    row[j] -= delta;
                }
            }
        }
        apply(&mut self.a, j, k, q);
        if let Some(v) = &mut self.v {
            apply(v, j, k, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let steps = self.rows().min(self.cols());
        for t in 0..steps {
            loop {
                let Some((i, j)) = self.smallest_from(t) else { return };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                let pivot = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let q = &self.a[i][t] / &pivot;
                        self.row_op(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let q = &self.a[t][j] / &pivot;
                        self.col_op(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..self.rows()).find(|&i| {
                    (t + 1..self.cols()).any(|j| !(&self.a[i][j] % &pivot).is_zero())
                });
                match offender {
                    // row_t += row_i brings a non-multiple into the pivot row
                    Some(i) => self.row_op(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transforms, arbitrary precision throughout.
/// Pivots are chosen by smallest magnitude.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let mut e = Elimination {
        a: to_dense(m),
        u: Some(identity(m.nrows())),
        v: Some(identity(m.ncols())),
    };
    e.run();
    SmithForm { u: e.u.unwrap(), d: e.a, v: e.v.unwrap() }
}

/// The nonzero invariant factors of `m`, in divisibility order.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let (rows, cols) = unit_pivot_elimination(m);
    let mut e = Elimination { a: dense_block(&rows, &cols), u: None, v: None };
    e.run();
    let k = e.rows().min(e.cols());
    let units = m.ncols() - cols.len();
    std::iter::repeat_n(BigInt::one(), units)
        .chain((0..k).map(|i| e.a[i][i].clone()).filter(|x| !x.is_zero()))
        .collect()
}

/// Eliminates `±1` pivots sparsely. Each elimination contributes an
/// invariant factor 1 and removes its row and column; the remaining
/// columns are returned together with the surviving row set.
fn unit_pivot_elimination(m: &SparseMatrix) -> (Vec<usize>, Vec<Vec<(usize, BigInt)>>) {
    use std::collections::BTreeMap;
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m
        .columns()
        .map(|c| c.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
        .collect();
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m.nrows()];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_cols[i].push(j);
        }
    }
    let mut alive_col = vec![true; cols.len()];
    let mut alive_row = vec![true; m.nrows()];
    loop {
        let found = (0..cols.len()).filter(|&j| alive_col[j]).find_map(|j| {
            cols[j].iter().find(|(_, v)| v.abs().is_one()).map(|(&i, v)| (i, j, v.clone()))
        });
        let Some((pr, pc, pv)) = found else { break };
        let pivot_col = std::mem::take(&mut cols[pc]);
        alive_col[pc] = false;
        alive_row[pr] = false;
        let touched: Vec<usize> = row_cols[pr].clone();
        for j in touched {
            if !alive_col[j] {
                continue;
            }
            let Some(a) = cols[j].remove(&pr) else { continue };
            // col_j -= (a / pv) · pivot_col, exact since pv = ±1
            let q = &a * &pv;
            for (&i, v) in &pivot_col {
                if i == pr {
                    continue;
                }
                let entry = cols[j].entry(i).or_insert_with(BigInt::zero);
                *entry -= &q * v;
                if entry.is_zero() {
                    cols[j].remove(&i);
                } else if !row_cols[i].contains(&j) {
                    row_cols[i].push(j);
                }
            }
        }
    }
    let rows: Vec<usize> = (0..m.nrows()).filter(|&i| alive_row[i]).collect();
    let remaining = cols
        .into_iter()
        .enumerate()
        .filter(|&(j, _)| alive_col[j])
        .map(|(_, c)| c.into_iter().collect())
        .collect();
    (rows, remaining)
}

fn dense_block(rows: &[usize], cols: &[Vec<(usize, BigInt)>]) -> Dense {
    let index: std::collections::HashMap<usize, usize> =
        rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut d = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c {
            d[index[i]][j] = v.clone();
        }
    }
    d
}
