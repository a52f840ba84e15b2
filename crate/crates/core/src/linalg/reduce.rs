use std::collections::HashMap;

use super::field::Field;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// `a - c·b` for sorted sparse vectors.
pub(crate) fn axpy<F: Field>(
    field: &F,
    a: &SparseVec<F::Elem>,
    c: &F::Elem,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn scale<F: Field>(field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

struct Stored<E> {
    vec: SparseVec<E>,
    tag: SparseVec<E>,
}

/// Outcome of adding a generator to a [`ReducedSpan`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<E> {
    /// The vector enlarged the span.
    Independent,
    /// The vector already lay in the span; the relation expresses
    /// `Σ c_g·gen_g` (over generator ids) as a combination of ambient vectors.
    Dependent(SparseVec<E>),
}

/// A subspace kept in column echelon form, pivot = largest row index.
///
/// Vectors come in two kinds. Ambient vectors only enlarge the span.
/// Generator vectors are numbered in insertion order and every stored
/// column remembers which combination of generators it contains, so that
/// dependencies and coordinates can be read off modulo the ambient part.
pub struct ReducedSpan<F: Field> {
    field: F,
    pivots: HashMap<usize, usize>,
    stored: Vec<Stored<F::Elem>>,
    generators: usize,
}

impl<F: Field> ReducedSpan<F> {
    pub fn new(field: F) -> Self {
        Self { field, pivots: HashMap::new(), stored: Vec::new(), generators: 0 }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Reduces `v` until its pivot is new or it vanishes. Returns the
    /// remainder and the accumulated generator combination `acc` with
    /// `v = remainder + ambient + Σ acc_g·gen_g`.
    fn reduce_tagged(&self, mut v: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let mut acc = Vec::new();
        while let Some((p, x)) = v.last() {
            let Some(&k) = self.pivots.get(p) else { break };
            let s = &self.stored[k];
            let c = self.field.div(x, &s.vec.last().unwrap().1);
            v = axpy(&self.field, &v, &c, &s.vec);
            if !s.tag.is_empty() {
                acc = axpy(&self.field, &acc, &self.field.neg(&c), &s.tag);
            }
        }
        (v, acc)
    }

    fn store(&mut self, vec: SparseVec<F::Elem>, tag: SparseVec<F::Elem>) {
        let pivot = vec.last().unwrap().0;
        self.pivots.insert(pivot, self.stored.len());
        self.stored.push(Stored { vec, tag });
    }

    /// Adds an ambient vector; returns whether the span grew.
    pub fn insert_ambient(&mut self, v: SparseVec<F::Elem>) -> bool {
        let (rem, acc) = self.reduce_tagged(v);
        if rem.is_empty() {
            return false;
        }
        let tag = scale(&self.field, &self.field.from_i64(-1), &acc);
        self.store(rem, tag);
        true
    }

    /// Adds the next generator (its id is the current generator count).
    pub fn insert_generator(&mut self, v: SparseVec<F::Elem>) -> Insertion<F::Elem> {
        let id = self.generators;
        self.generators += 1;
        let (rem, acc) = self.reduce_tagged(v);
        let unit = vec![(id, self.field.one())];
        let tag = axpy(&self.field, &unit, &self.field.one(), &acc);
        if rem.is_empty() {
            Insertion::Dependent(tag)
        } else {
            self.store(rem, tag);
            Insertion::Independent
        }
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce_tagged(v).0.is_empty()
    }

    /// Coefficients over generator ids expressing `v` modulo the ambient
    /// vectors.
    pub fn coordinates(&self, v: SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let (rem, acc) = self.reduce_tagged(v);
        if rem.is_empty() {
            Ok(acc)
        } else {
            Err(Error::NotInSubspace)
        }
    }
}

/// Rank of an integer matrix over `field`.
pub fn rank<F: Field>(field: &F, m: &SparseMatrix) -> usize {
    let mut span = ReducedSpan::new(field.clone());
    for j in 0..m.ncols() {
        span.insert_ambient(m.column_in(field, j));
    }
    span.rank()
}

/// A basis of the null space of `m`, as sparse vectors over column indices.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix) -> Vec<SparseVec<F::Elem>> {
    let mut span = ReducedSpan::new(field.clone());
    (0..m.ncols())
        .filter_map(|j| match span.insert_generator(m.column_in(field, j)) {
            Insertion::Independent => None,
            Insertion::Dependent(rel) => Some(rel),
        })
        .collect()
}
