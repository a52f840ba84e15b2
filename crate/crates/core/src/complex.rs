//! The reachability complex of a quasimetric space and its interval
//! truncations.
//!
//! In degree `n` the complex is spanned by tuples `(x_0, …, x_n)` with
//! `x_i != x_{i+1}` and every `d(x_i, x_{i+1})` finite; the level of a tuple
//! is the sum of its consecutive distances. For an interval `I = R \ L` the
//! truncation `C_I` keeps the tuples whose level lies in `I`, and the
//! boundary drops faces that are degenerate or whose level falls into `L`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::SparseMatrix;
use crate::scalar::{ExtDist, Scalar};
use crate::space::{same_space, QMetSpace, ShortMap};

/// A basis tuple with its level.
#[derive(Clone, Debug, PartialEq)]
pub struct Tuple<T> {
    pub points: Vec<usize>,
    pub level: T,
}

/// Sum of consecutive distances, accumulated left to right; `None` when a
/// step is infinite.
pub fn level_of<T: Scalar>(space: &QMetSpace<T>, points: &[usize]) -> Option<T> {
    let mut acc = T::zero();
    for w in points.windows(2) {
        match space.d(w[0], w[1]) {
            ExtDist::Finite(v) => acc = acc + v.clone(),
            ExtDist::Infinite => return None,
        }
    }
    Some(acc)
}

fn is_degenerate(points: &[usize]) -> bool {
    points.windows(2).any(|w| w[0] == w[1])
}

/// The degree-`n` tuples of one truncation, stored flat and sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleBasis<T> {
    degree: usize,
    flat: Vec<usize>,
    levels: Vec<T>,
}

impl<T: Scalar> TupleBasis<T> {
    fn enumerate(space: &QMetSpace<T>, degree: usize, interval: &Interval<T>) -> Self {
        let stride = degree + 1;
        let mut flat = Vec::new();
        let mut levels = Vec::new();
        let mut stack = Vec::with_capacity(stride);
        for x in 0..space.len() {
            stack.push(x);
            extend(space, degree, interval, &mut stack, T::zero(), &mut flat, &mut levels);
            stack.pop();
        }
        let count = levels.len();
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_unstable_by(|&a, &b| {
            flat[a * stride..(a + 1) * stride].cmp(&flat[b * stride..(b + 1) * stride])
        });
        let sorted_flat = order.iter().flat_map(|&k| flat[k * stride..(k + 1) * stride].iter().copied()).collect();
        let sorted_levels = order.iter().map(|&k| levels[k].clone()).collect();
        Self { degree, flat: sorted_flat, levels: sorted_levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn points(&self, i: usize) -> &[usize] {
        let stride = self.degree + 1;
        &self.flat[i * stride..(i + 1) * stride]
    }

    pub fn level(&self, i: usize) -> &T {
        &self.levels[i]
    }

    pub fn position(&self, points: &[usize]) -> Option<usize> {
        if points.len() != self.degree + 1 {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.points(mid).cmp(points) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn tuples(&self) -> impl Iterator<Item = Tuple<T>> + '_ {
        (0..self.len()).map(|i| Tuple { points: self.points(i).to_vec(), level: self.level(i).clone() })
    }
}

fn extend<T: Scalar>(
    space: &QMetSpace<T>,
    degree: usize,
    interval: &Interval<T>,
    stack: &mut Vec<usize>,
    level: T,
    flat: &mut Vec<usize>,
    levels: &mut Vec<T>,
) {
    if stack.len() == degree + 1 {
        if interval.contains(&level) {
            flat.extend_from_slice(stack);
            levels.push(level);
        }
        return;
    }
    let last = *stack.last().unwrap();
    for &y in space.successors(last) {
        let next = level.clone() + space.d(last, y).finite().unwrap().clone();
        // successors are sorted by distance, so later ones overshoot too
        if !interval.right().contains(&next) {
            break;
        }
        stack.push(y);
        extend(space, degree, interval, stack, next, flat, levels);
        stack.pop();
    }
}

/// Degree-`n` tuples of `X` whose level lies in `I`, in lexicographic order.
pub fn enumerate_tuples<T: Scalar>(
    space: &QMetSpace<T>,
    degree: usize,
    interval: &Interval<T>,
) -> Vec<Tuple<T>> {
    TupleBasis::enumerate(space, degree, interval).tuples().collect()
}

/// `C_I` materialized in degrees `0..=degree_bound`.
#[derive(Clone, Debug)]
pub struct TruncatedComplex<T> {
    space: Arc<QMetSpace<T>>,
    interval: Interval<T>,
    bases: Vec<TupleBasis<T>>,
    // boundaries[n] maps degree n to degree n - 1; boundaries[0] has no rows
    boundaries: Vec<SparseMatrix>,
}

impl<T: Scalar> TruncatedComplex<T> {
    pub fn new(space: &Arc<QMetSpace<T>>, interval: Interval<T>, degree_bound: usize) -> Self {
        let bases: Vec<TupleBasis<T>> = (0..=degree_bound)
            .map(|n| TupleBasis::enumerate(space, n, &interval))
            .collect();
        let mut boundaries = vec![SparseMatrix::zeros(0, bases[0].len())];
        for n in 1..=degree_bound {
            boundaries.push(boundary_matrix(&bases[n], &bases[n - 1]));
        }
        Self { space: space.clone(), interval, bases, boundaries }
    }

    pub fn space(&self) -> &Arc<QMetSpace<T>> {
        &self.space
    }

    pub fn interval(&self) -> &Interval<T> {
        &self.interval
    }

    pub fn degree_bound(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> Result<&TupleBasis<T>> {
        self.bases
            .get(n)
            .ok_or(Error::DegreeNotMaterialized { degree: n, max: self.degree_bound() })
    }

    /// Dimension in degree `n`; zero for degrees above the bound is *not*
    /// assumed, so those are errors.
    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.basis(n)?.len())
    }

    /// `∂_n : C_n → C_{n-1}`.
    pub fn boundary(&self, n: usize) -> Result<&SparseMatrix> {
        self.boundaries
            .get(n)
            .ok_or(Error::DegreeNotMaterialized { degree: n, max: self.degree_bound() })
    }

    /// Text dump: per degree the basis as `level : x0,x1,...`, then the
    /// boundary as `row col sign` triplets.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "interval {}", self.interval).unwrap();
        for (n, basis) in self.bases.iter().enumerate() {
            writeln!(out, "degree {n} dim {}", basis.len()).unwrap();
            for i in 0..basis.len() {
                let pts: Vec<String> = basis.points(i).iter().map(usize::to_string).collect();
                writeln!(out, "{} : {}", basis.level(i), pts.join(",")).unwrap();
            }
            if n > 0 {
                writeln!(out, "boundary {n}").unwrap();
                for (row, col, sign) in self.boundaries[n].triplets() {
                    writeln!(out, "{row} {col} {sign}").unwrap();
                }
            }
        }
        out
    }
}

fn boundary_matrix<T: Scalar>(upper: &TupleBasis<T>, lower: &TupleBasis<T>) -> SparseMatrix {
    let n = upper.degree();
    let mut m = SparseMatrix::new(lower.len());
    let mut face = Vec::with_capacity(n);
    for j in 0..upper.len() {
        let t = upper.points(j);
        let mut entries = Vec::with_capacity(n + 1);
        for i in 0..=n {
            if i > 0 && i < n && t[i - 1] == t[i + 1] {
                continue;
            }
            face.clear();
            face.extend_from_slice(&t[..i]);
            face.extend_from_slice(&t[i + 1..]);
            if let Some(row) = lower.position(&face) {
                entries.push((row, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m.push_column(entries);
    }
    m
}

fn transfer<T: Scalar>(
    source: &TupleBasis<T>,
    target: &TupleBasis<T>,
    image: impl Fn(&[usize]) -> Vec<usize>,
) -> SparseMatrix {
    let mut m = SparseMatrix::new(target.len());
    for j in 0..source.len() {
        let t = image(source.points(j));
        let entry = if is_degenerate(&t) { None } else { target.position(&t) };
        m.push_column(entry.map(|row| (row, 1)));
    }
    m
}

/// The chain map `C_I → C_J` induced by inclusion in degree `n`.
pub fn inclusion_matrix<T: Scalar>(
    from: &TruncatedComplex<T>,
    to: &TruncatedComplex<T>,
    n: usize,
) -> Result<SparseMatrix> {
    if !same_space(&from.space, &to.space) {
        return Err(Error::MismatchedSpaces);
    }
    if !from.interval.precedes(&to.interval) {
        return Err(Error::NotComparable);
    }
    Ok(transfer(from.basis(n)?, to.basis(n)?, <[usize]>::to_vec))
}

/// The chain map `C_I(X) → C_J(Y)` induced by a short map in degree `n`.
pub fn induced_chain_matrix<T: Scalar>(
    map: &ShortMap<T>,
    from: &TruncatedComplex<T>,
    to: &TruncatedComplex<T>,
    n: usize,
) -> Result<SparseMatrix> {
    if !same_space(map.source(), &from.space) || !same_space(map.target(), &to.space) {
        return Err(Error::MismatchedSpaces);
    }
    if !from.interval.precedes(&to.interval) {
        return Err(Error::NotComparable);
    }
    Ok(transfer(from.basis(n)?, to.basis(n)?, |t| t.iter().map(|&x| map.apply(x)).collect()))
}

/// A chain of the untruncated complex with integer coefficients.
pub type Chain = BTreeMap<Vec<usize>, i64>;

fn add_term(chain: &mut Chain, points: Vec<usize>, coeff: i64) {
    match chain.entry(points) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if coeff != 0 {
                e.insert(coeff);
            }
        }
    }
}

fn is_basis_tuple<T: Scalar>(space: &QMetSpace<T>, points: &[usize]) -> bool {
    !is_degenerate(points) && level_of(space, points).is_some()
}

/// Boundary in the untruncated complex.
pub fn chain_boundary<T: Scalar>(space: &QMetSpace<T>, chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (t, &c) in chain {
        for i in 0..t.len() {
            if t.len() == 1 {
                break;
            }
            let mut face = t.clone();
            face.remove(i);
            if is_basis_tuple(space, &face) {
                add_term(&mut out, face, if i % 2 == 0 { c } else { -c });
            }
        }
    }
    out
}

/// The image of a chain under `RC(φ)`.
pub fn chain_image<T: Scalar>(map: &ShortMap<T>, chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (t, &c) in chain {
        let image: Vec<usize> = t.iter().map(|&x| map.apply(x)).collect();
        if !is_degenerate(&image) {
            add_term(&mut out, image, c);
        }
    }
    out
}

/// The prism operator `h = Σ_j (-1)^j h_{n,j}` with
/// `h_{n,j}(x_0..x_n) = (φx_0, …, φx_j, ψx_j, …, ψx_n)`. Degenerate and
/// unreachable tuples are zero. When `d(φx, ψx)` is finite for every `x`
/// it satisfies `∂h + h∂ = RC(ψ) - RC(φ)`.
pub fn prism_homotopy<T: Scalar>(phi: &ShortMap<T>, psi: &ShortMap<T>, chain: &Chain) -> Result<Chain> {
    if !same_space(phi.source(), psi.source()) || !same_space(phi.target(), psi.target()) {
        return Err(Error::MismatchedSpaces);
    }
    let target = phi.target();
    let mut out = Chain::new();
    for (t, &c) in chain {
        for j in 0..t.len() {
            let mut image: Vec<usize> = t[..=j].iter().map(|&x| phi.apply(x)).collect();
            image.extend(t[j..].iter().map(|&x| psi.apply(x)));
            if is_basis_tuple(target, &image) {
                add_term(&mut out, image, if j % 2 == 0 { c } else { -c });
            }
        }
    }
    Ok(out)
}
