//! Finite quasimetric spaces, short maps between them and the r-homotopy
//! relation on points and maps.

use std::cmp::Ordering;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::scalar::{group_values, Backend, ExtDist, Scalar, ValueGroup, DEFAULT_TAU};

/// A finite set of points with a validated, possibly asymmetric and possibly
/// infinite distance. Points are identified by index; labels and coordinates
/// are metadata.
#[derive(Clone, Debug)]
pub struct QMetSpace<T> {
    n: usize,
    dist: Vec<ExtDist<T>>,
    // finite-distance successors of each point, nearest first
    successors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    coords: Option<Vec<Vec<f64>>>,
}

impl<T: Scalar> PartialEq for QMetSpace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.dist == other.dist
    }
}

impl<T: Scalar> QMetSpace<T> {
    /// Validates a square matrix against the quasimetric axioms. Float
    /// matrices get a relative slack of [`DEFAULT_TAU`] on the triangle
    /// inequality.
    pub fn new(matrix: Vec<Vec<ExtDist<T>>>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TAU)
    }

    /// Like [`QMetSpace::new`] with an explicit triangle slack for floats.
    /// Exact backends ignore `tau`.
    pub fn with_tolerance(matrix: Vec<Vec<ExtDist<T>>>, tau: f64) -> Result<Self> {
        let n = matrix.len();
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { row, len: entries.len(), expected: n });
            }
        }
        let dist: Vec<ExtDist<T>> = matrix.into_iter().flatten().collect();
        validate(n, &dist, tau)?;
        Ok(Self::from_validated(n, dist))
    }

    fn from_validated(n: usize, dist: Vec<ExtDist<T>>) -> Self {
        let successors = (0..n)
            .map(|x| {
                let mut succ: Vec<usize> =
                    (0..n).filter(|&y| y != x && dist[x * n + y].is_finite()).collect();
                succ.sort_by(|&a, &b| dist[x * n + a].cmp(&dist[x * n + b]).then(a.cmp(&b)));
                succ
            })
            .collect();
        Self { n, dist, successors, labels: None, coords: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per point");
        self.labels = Some(labels);
        self
    }

    pub(crate) fn with_coords(mut self, coords: Vec<Vec<f64>>) -> Self {
        assert_eq!(coords.len(), self.n, "one coordinate vector per point");
        self.coords = Some(coords);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn backend(&self) -> Backend {
        T::BACKEND
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> &ExtDist<T> {
        &self.dist[x * self.n + y]
    }

    /// Points reachable from `x` at finite distance, nearest first.
    pub fn successors(&self, x: usize) -> &[usize] {
        &self.successors[x]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtDist<T>]> {
        self.dist.chunks(self.n.max(1)).take(self.n)
    }

    /// The subset with the induced distance, in the order given.
    pub fn subspace(&self, points: &[usize]) -> Self {
        let k = points.len();
        let mut dist = Vec::with_capacity(k * k);
        for &x in points {
            for &y in points {
                dist.push(self.d(x, y).clone());
            }
        }
        let mut sub = Self::from_validated(k, dist);
        if let Some(labels) = &self.labels {
            sub.labels = Some(points.iter().map(|&p| labels[p].clone()).collect());
        }
        if let Some(coords) = &self.coords {
            sub.coords = Some(points.iter().map(|&p| coords[p].clone()).collect());
        }
        sub
    }

    /// Distinct finite positive distances, grouped within `tau`.
    pub fn distance_values(&self, tau: f64) -> Vec<ValueGroup<T>> {
        let values = (0..self.n)
            .flat_map(|x| (0..self.n).filter(move |&y| y != x).map(move |y| (x, y)))
            .filter_map(|(x, y)| self.d(x, y).finite().cloned())
            .collect();
        group_values(values, tau)
    }

    /// Largest finite distance, if any pair is at finite positive distance.
    pub fn max_finite_distance(&self) -> Option<T> {
        self.dist
            .iter()
            .filter_map(|d| d.finite())
            .max_by(|a, b| a.cmp_value(b))
            .cloned()
    }
}

fn validate<T: Scalar>(n: usize, dist: &[ExtDist<T>], tau: f64) -> Result<()> {
    for x in 0..n {
        for y in 0..n {
            if let ExtDist::Finite(v) = &dist[x * n + y] {
                if !v.is_valid() {
                    return Err(Error::InvalidValue { x, y });
                }
                if v.is_negative() {
                    return Err(Error::NegativeEntry { x, y });
                }
            }
        }
    }
    for x in 0..n {
        if dist[x * n + x] != ExtDist::zero() {
            return Err(Error::NonzeroDiagonal { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && dist[x * n + y] == ExtDist::zero() {
                return Err(Error::ZeroOffDiagonal { x, y });
            }
        }
    }
    let float = T::BACKEND == Backend::Float;
    for x in 0..n {
        for y in 0..n {
            let ExtDist::Finite(dxy) = &dist[x * n + y] else { continue };
            for z in 0..n {
                let ExtDist::Finite(dyz) = &dist[y * n + z] else { continue };
                let through = dxy.clone() + dyz.clone();
                let violated = match &dist[x * n + z] {
                    ExtDist::Infinite => true,
                    ExtDist::Finite(dxz) if float => {
                        let slack = tau * through.to_f64().max(1.0);
                        dxz.to_f64() > through.to_f64() + slack
                    }
                    ExtDist::Finite(dxz) => dxz.cmp_value(&through) == Ordering::Greater,
                };
                if violated {
                    return Err(Error::TriangleViolation { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// Spaces are the same if they are the same allocation or equal matrices.
pub(crate) fn same_space<T: Scalar>(a: &Arc<QMetSpace<T>>, b: &Arc<QMetSpace<T>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A distance-nonincreasing assignment of points.
#[derive(Clone, Debug)]
pub struct ShortMap<T> {
    source: Arc<QMetSpace<T>>,
    target: Arc<QMetSpace<T>>,
    images: Vec<usize>,
}

impl<T: Scalar> PartialEq for ShortMap<T> {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && same_space(&self.source, &other.source)
            && same_space(&self.target, &other.target)
    }
}

impl<T: Scalar> ShortMap<T> {
    pub fn new(
        source: Arc<QMetSpace<T>>,
        target: Arc<QMetSpace<T>>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::WrongArity { got: images.len(), expected: source.len() });
        }
        if let Some(&point) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::PointOutOfRange { point, len: target.len() });
        }
        if let Some((x, y)) = first_non_short(&source, &target, &images) {
            return Err(Error::NotShort { x, y });
        }
        Ok(Self { source, target, images })
    }

    /// Skips the shortness check; callers guarantee it.
    pub(crate) fn new_unchecked(
        source: Arc<QMetSpace<T>>,
        target: Arc<QMetSpace<T>>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert!(first_non_short(&source, &target, &images).is_none());
        Self { source, target, images }
    }

    pub fn identity(space: &Arc<QMetSpace<T>>) -> Self {
        Self { source: space.clone(), target: space.clone(), images: (0..space.len()).collect() }
    }

    pub fn source(&self) -> &Arc<QMetSpace<T>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QMetSpace<T>> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &ShortMap<T>) -> Result<ShortMap<T>> {
        compose(next, self)
    }

    pub fn is_idempotent(&self) -> bool {
        same_space(&self.source, &self.target)
            && self.images.iter().all(|&y| self.images[y] == y)
    }
}

fn first_non_short<T: Scalar>(
    source: &QMetSpace<T>,
    target: &QMetSpace<T>,
    images: &[usize],
) -> Option<(usize, usize)> {
    let n = source.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| target.d(images[x], images[y]) > source.d(x, y))
}

/// `outer ∘ inner`.
pub fn compose<T: Scalar>(outer: &ShortMap<T>, inner: &ShortMap<T>) -> Result<ShortMap<T>> {
    if !same_space(&inner.target, &outer.source) {
        return Err(Error::MismatchedSpaces);
    }
    let images = inner.images.iter().map(|&x| outer.images[x]).collect();
    Ok(ShortMap::new_unchecked(inner.source.clone(), outer.target.clone(), images))
}

/// `sup_x d(φ(x), ψ(x))`.
pub fn map_distance<T: Scalar>(phi: &ShortMap<T>, psi: &ShortMap<T>) -> Result<ExtDist<T>> {
    if !same_space(&phi.source, &psi.source) || !same_space(&phi.target, &psi.target) {
        return Err(Error::MismatchedSpaces);
    }
    Ok(phi
        .images
        .iter()
        .zip(&psi.images)
        .map(|(&a, &b)| phi.target.d(a, b).clone())
        .fold(ExtDist::zero(), ExtDist::max))
}

fn within<T: Scalar>(d: &ExtDist<T>, r: &ExtDist<T>) -> bool {
    d <= r
}

/// Class labels of the r-homotopy relation on points: connected components
/// of the graph joining `x, y` when `d(x,y) <= r` or `d(y,x) <= r`.
pub fn homotopy_classes<T: Scalar>(space: &QMetSpace<T>, r: &ExtDist<T>) -> Vec<usize> {
    classes_by(space, |d| within(d, r))
}

/// Components under an arbitrary symmetric threshold predicate on distances.
pub(crate) fn classes_by<T: Scalar>(
    space: &QMetSpace<T>,
    joins: impl Fn(&ExtDist<T>) -> bool,
) -> Vec<usize> {
    let n = space.len();
    let mut uf = UnionFind::<usize>::new(n);
    for x in 0..n {
        for y in x + 1..n {
            if joins(space.d(x, y)) || joins(space.d(y, x)) {
                uf.union(x, y);
            }
        }
    }
    uf.into_labeling()
}

pub(crate) fn count_classes(labels: &[usize]) -> usize {
    labels.iter().enumerate().filter(|&(i, &l)| i == l).count()
}

pub fn points_r_homotopic<T: Scalar>(
    space: &QMetSpace<T>,
    x: usize,
    y: usize,
    r: &ExtDist<T>,
) -> bool {
    let labels = homotopy_classes(space, r);
    labels[x] == labels[y]
}

/// A sequence of maps `X -> Y` in which consecutive maps are within
/// `radius` of each other in at least one direction.
#[derive(Clone, Debug)]
pub struct HomotopyChain<T> {
    maps: Vec<ShortMap<T>>,
    radius: ExtDist<T>,
}

impl<T: Scalar> HomotopyChain<T> {
    pub fn new(maps: Vec<ShortMap<T>>, radius: ExtDist<T>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::PreconditionViolated("a homotopy chain needs at least one map".into()));
        }
        Ok(Self { maps, radius })
    }

    pub fn maps(&self) -> &[ShortMap<T>] {
        &self.maps
    }

    pub fn radius(&self) -> &ExtDist<T> {
        &self.radius
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn first(&self) -> &ShortMap<T> {
        &self.maps[0]
    }

    pub fn last(&self) -> &ShortMap<T> {
        self.maps.last().expect("chains are nonempty")
    }

    pub(crate) fn push(&mut self, map: ShortMap<T>) {
        self.maps.push(map);
    }

    pub(crate) fn set_radius(&mut self, radius: ExtDist<T>) {
        self.radius = radius;
    }
}

/// Checks every consecutive pair of the chain against its radius.
pub fn verify_homotopy_chain<T: Scalar>(chain: &HomotopyChain<T>) -> Result<bool> {
    for pair in chain.maps.windows(2) {
        let forward = map_distance(&pair[0], &pair[1])?;
        let backward = map_distance(&pair[1], &pair[0])?;
        if !(within(&forward, &chain.radius) || within(&backward, &chain.radius)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lev_phi_images, lev_space};

    fn fin(v: i64) -> ExtDist<i64> {
        ExtDist::Finite(v)
    }

    fn two_point(d: i64) -> Arc<QMetSpace<i64>> {
        Arc::new(QMetSpace::new(vec![vec![fin(0), fin(d)], vec![fin(d), fin(0)]]).unwrap())
    }

    #[test]
    fn validates_small_spaces() {
        assert!(QMetSpace::new(vec![vec![fin(0), fin(1)], vec![fin(1), fin(0)]]).is_ok());
        assert!(QMetSpace::new(vec![vec![fin(0), fin(1)], vec![ExtDist::Infinite, fin(0)]]).is_ok());
        let bad = vec![
            vec![fin(0), fin(3), fin(1)],
            vec![fin(1), fin(0), fin(1)],
            vec![fin(1), fin(1), fin(0)],
        ];
        assert_eq!(QMetSpace::new(bad), Err(Error::TriangleViolation { x: 0, y: 2, z: 1 }));
    }

    #[test]
    fn reports_axiom_errors() {
        assert_eq!(
            QMetSpace::new(vec![vec![fin(0), fin(0)], vec![fin(1), fin(0)]]),
            Err(Error::ZeroOffDiagonal { x: 0, y: 1 })
        );
        assert_eq!(
            QMetSpace::new(vec![vec![fin(1), fin(1)], vec![fin(1), fin(0)]]),
            Err(Error::NonzeroDiagonal { x: 0 })
        );
        assert_eq!(
            QMetSpace::new(vec![vec![fin(0), fin(-1)], vec![fin(1), fin(0)]]),
            Err(Error::NegativeEntry { x: 0, y: 1 })
        );
        assert!(matches!(
            QMetSpace::new(vec![vec![fin(0), fin(1)], vec![fin(1)]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        assert_eq!(
            QMetSpace::<f64>::new(vec![vec![ExtDist::zero(), ExtDist::Finite(f64::NAN)], vec![ExtDist::Finite(1.0), ExtDist::zero()]]),
            Err(Error::InvalidValue { x: 0, y: 1 })
        );
    }

    #[test]
    fn map_distance_examples() {
        let x = two_point(5);
        let id = ShortMap::identity(&x);
        let constant = ShortMap::new(x.clone(), x.clone(), vec![0, 0]).unwrap();
        assert_eq!(map_distance(&id, &id).unwrap(), fin(0));
        assert_eq!(map_distance(&id, &constant).unwrap(), fin(5));

        let lev = Arc::new(lev_space());
        let phi = ShortMap::new(lev.clone(), lev.clone(), lev_phi_images()).unwrap();
        let id = ShortMap::identity(&lev);
        // every point moves one step forward along an arrow
        assert_eq!(map_distance(&phi, &id).unwrap(), fin(1));
        assert_eq!(map_distance(&id, &phi).unwrap(), fin(2));
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = two_point(5);
        let b = two_point(3);
        let f = ShortMap::identity(&a);
        let g = ShortMap::identity(&b);
        assert_eq!(map_distance(&f, &g), Err(Error::MismatchedSpaces));
        assert!(compose(&f, &g).is_err());
    }

    #[test]
    fn point_homotopy_examples() {
        let x = two_point(5);
        assert!(points_r_homotopic(&x, 0, 0, &fin(0)));
        assert!(!points_r_homotopic(&x, 0, 1, &fin(4)));
        assert!(points_r_homotopic(&x, 0, 1, &fin(5)));
        let lev = lev_space();
        assert!(points_r_homotopic(&lev, 1, 3, &fin(1)));
        assert!(points_r_homotopic(&lev, 1, 3, &ExtDist::Infinite));
    }

    #[test]
    fn composition_examples() {
        let lev = Arc::new(lev_space());
        let phi = ShortMap::new(lev.clone(), lev.clone(), lev_phi_images()).unwrap();
        let id = ShortMap::identity(&lev);
        assert_eq!(compose(&id, &phi).unwrap(), phi);
        assert_eq!(compose(&phi, &phi).unwrap().apply(0), 1);
        let x = two_point(5);
        let c0 = ShortMap::new(x.clone(), x.clone(), vec![0, 0]).unwrap();
        let c1 = ShortMap::new(x.clone(), x.clone(), vec![1, 1]).unwrap();
        let both = compose(&c0, &c1).unwrap();
        assert_eq!(both.images(), &[0, 0]);
    }

    #[test]
    fn chain_verification() {
        let lev = Arc::new(lev_space());
        let phi = ShortMap::new(lev.clone(), lev.clone(), lev_phi_images()).unwrap();
        let phi2 = compose(&phi, &phi).unwrap();
        let phi3 = compose(&phi, &phi2).unwrap();
        let id = ShortMap::identity(&lev);
        let chain = HomotopyChain::new(vec![id.clone(), phi, phi2, phi3], fin(1)).unwrap();
        assert!(verify_homotopy_chain(&chain).unwrap());
        assert!(verify_homotopy_chain(&HomotopyChain::new(vec![id], fin(0)).unwrap()).unwrap());

        let x = two_point(5);
        let chain = HomotopyChain::new(
            vec![ShortMap::identity(&x), ShortMap::new(x.clone(), x.clone(), vec![0, 0]).unwrap()],
            fin(4),
        )
        .unwrap();
        assert!(!verify_homotopy_chain(&chain).unwrap());
    }

    #[test]
    fn non_short_assignment_is_rejected() {
        let x = two_point(5);
        let y = two_point(3);
        assert!(ShortMap::new(y.clone(), x.clone(), vec![0, 1]).is_err());
        assert!(ShortMap::new(x, y, vec![0, 1]).is_ok());
    }
}
