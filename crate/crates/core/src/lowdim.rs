//! Spectral homology in degrees 0 and 1 from point and pair combinatorics.
//!
//! Degree 0 counts classes of the threshold relation read off `I^r`.
//! Degree 1 at a single level counts classes of adjacent pairs under the
//! two moves that shift one endpoint by at most `r`.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::geometry::Metric;
use crate::interval::{Interval, LeftRay};
use crate::scalar::{ExtDist, Scalar};
use crate::space::{classes_by, count_classes, QMetSpace};

/// Rank of `SH^r_{0,I}`: zero unless `0 ∈ I`, otherwise the number of
/// classes of points joined by chains of steps whose distance (in either
/// direction) lies in the right ray of `I^r`.
pub fn sh0_classes<T: Scalar>(space: &QMetSpace<T>, r: &T, interval: &Interval<T>) -> usize {
    if !interval.contains(&T::zero()) {
        return 0;
    }
    let ray = interval.upper_expand(r).right().clone();
    let labels = classes_by(space, |d| match (d, &ray) {
        (ExtDist::Infinite, _) => false,
        (ExtDist::Finite(v), ray) => ray.contains(v),
    });
    count_classes(&labels)
}

/// A level given as the closed band `[lo, hi]` of nearly equal achieved
/// values. Exact backends use `lo = hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Level<T> {
    pub fn exact(l: T) -> Self {
        Self { lo: l.clone(), hi: l }
    }

    pub fn band(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    fn hits(&self, v: &T) -> bool {
        self.lo.cmp_value(v).is_le() && v.cmp_value(&self.hi).is_le()
    }

    /// The matching query interval.
    pub fn interval(&self) -> Interval<T> {
        Interval::closed(self.lo.clone(), self.hi.clone()).expect("band bounds are ordered")
    }
}

fn finite<T: Scalar>(d: &ExtDist<T>) -> Option<&T> {
    d.finite()
}

/// Pairs at distance `ℓ` with no intermediate point `a ≠ x, y` such that
/// `d(x,a) + d(a,y) = ℓ`.
pub fn adjacent_pairs<T: Scalar>(space: &QMetSpace<T>, level: &Level<T>) -> Vec<(usize, usize)> {
    let n = space.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !finite(space.d(x, y)).is_some_and(|d| level.hits(d)) {
                continue;
            }
            let between = (0..n).any(|a| {
                a != x
                    && a != y
                    && match (finite(space.d(x, a)), finite(space.d(a, y))) {
                        (Some(p), Some(q)) => level.hits(&(p.clone() + q.clone())),
                        _ => false,
                    }
            });
            if !between {
                out.push((x, y));
            }
        }
    }
    out
}

/// Off-diagonal pairs in `P_{≤ℓ+r}` with a witness `a` such that `d(x,a) + d(a,y) <= ℓ + r`,
/// `d(x,a) < ℓ` and `d(a,y) < ℓ`.
pub fn trivial_pairs<T: Scalar>(space: &QMetSpace<T>, level: &Level<T>, r: &T) -> Vec<(usize, usize)> {
    let ceiling = level.hi.clone() + r.clone();
    let n = space.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !space.d(x, y).le_value(&ceiling) {
                continue;
            }
            if (0..n).any(|a| is_witness(space, x, a, y, &level.lo, &ceiling)) {
                out.push((x, y));
            }
        }
    }
    out
}

fn is_witness<T: Scalar>(space: &QMetSpace<T>, x: usize, a: usize, y: usize, below: &T, ceiling: &T) -> bool {
    match (finite(space.d(x, a)), finite(space.d(a, y))) {
        (Some(p), Some(q)) => {
            p.cmp_value(below).is_lt() && q.cmp_value(below).is_lt() && (p.clone() + q.clone()).cmp_value(ceiling).is_le()
        }
        _ => false,
    }
}

/// The pair universe `P_{≤ℓ+r}` partitioned by the two moves, with each
/// class flagged when it contains a trivial pair.
#[derive(Clone, Debug)]
pub struct PairPartition {
    pub universe: Vec<(usize, usize)>,
    /// Class label per universe entry.
    pub classes: Vec<usize>,
    /// Indexed by class label.
    pub trivial: Vec<bool>,
}

impl PairPartition {
    /// Diagonal pairs `(x, x)` belong to the universe; they are trivial and
    /// the moves can reach them.
    pub fn build<T: Scalar>(space: &QMetSpace<T>, level: &Level<T>, r: &T) -> Self {
        let n = space.len();
        let ceiling = level.hi.clone() + r.clone();
        let mut index = vec![usize::MAX; n * n];
        let mut universe = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if space.d(x, y).le_value(&ceiling) {
                    index[x * n + y] = universe.len();
                    universe.push((x, y));
                }
            }
        }
        // a short leg of length <= r followed or preceded by the rest
        let step = |short: &ExtDist<T>, rest: &ExtDist<T>| match (finite(short), finite(rest)) {
            (Some(p), Some(q)) => p.cmp_value(r).is_le() && (p.clone() + q.clone()).cmp_value(&ceiling).is_le(),
            _ => false,
        };
        let mut uf = UnionFind::<usize>::new(universe.len());
        for (k, &(x, y)) in universe.iter().enumerate() {
            for z in 0..n {
                // (x,y) ~ (z,y) when d(x,z) <= r and d(x,z) + d(z,y) <= ℓ + r
                if step(space.d(x, z), space.d(z, y)) {
                    uf.union(k, index[z * n + y]);
                }
                // (x,y) ~ (x,z) when d(z,y) <= r and d(x,z) + d(z,y) <= ℓ + r
                if step(space.d(z, y), space.d(x, z)) {
                    uf.union(k, index[x * n + z]);
                }
            }
        }
        let classes = uf.into_labeling();
        let mut trivial = vec![false; universe.len()];
        for (k, &(x, y)) in universe.iter().enumerate() {
            if (0..n).any(|a| is_witness(space, x, a, y, &level.lo, &ceiling)) {
                trivial[classes[k]] = true;
            }
        }
        Self { universe, classes, trivial }
    }

    pub fn class_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.universe.iter().position(|&p| p == pair).map(|k| self.classes[k])
    }
}

/// Rank of `SH^r_{1,{ℓ}}` for `ℓ > r`: the number of classes that contain
/// an `ℓ`-adjacent pair and no trivial pair.
pub fn sh1_adjacency<T: Scalar>(space: &QMetSpace<T>, level: &Level<T>, r: &T) -> Result<usize> {
    if level.lo.cmp_value(r).is_le() || r.is_negative() {
        return Err(Error::PreconditionViolated(format!("need ℓ > r >= 0, got ℓ = {}, r = {r}", level.lo)));
    }
    let partition = PairPartition::build(space, level, r);
    let mut seen = vec![false; partition.universe.len()];
    let mut count = 0;
    for pair in adjacent_pairs(space, level) {
        let Some(class) = partition.class_of(pair) else { continue };
        if !partition.trivial[class] && !seen[class] {
            seen[class] = true;
            count += 1;
        }
    }
    Ok(count)
}

/// Points of the space inside the `r`-thick open interval between `x` and
/// `y`: strictly closer than `d(x,y)` to both ends and inside the filled
/// ellipsoid `d(x,a) + d(a,y) <= d(x,y) + r`. Distances are Euclidean in the
/// stored coordinates.
pub fn thick_interval_hits<T: Scalar>(space: &QMetSpace<T>, x: usize, y: usize, r: f64) -> Result<Vec<usize>> {
    let coords = space.coords().ok_or(Error::NotEuclidean)?;
    for p in [x, y] {
        if p >= coords.len() {
            return Err(Error::PointOutOfRange { point: p, len: coords.len() });
        }
    }
    let d = |a: usize, b: usize| Metric::Euclidean.distance(&coords[a], &coords[b]);
    let span = d(x, y);
    Ok((0..coords.len())
        .filter(|&a| d(x, a) < span && d(a, y) < span && d(x, a) + d(a, y) <= span + r)
        .collect())
}

/// `true` when the right ray of `I^r` uses the strict comparator.
pub fn strict_upper<T: Scalar>(interval: &Interval<T>, r: &T) -> bool {
    matches!(interval.upper_expand(r).right(), LeftRay::Below(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::digraph::Digraph;
    use crate::geometry::euclidean_space;

    fn two_point(d: i64) -> QMetSpace<i64> {
        let f = ExtDist::Finite;
        QMetSpace::new(vec![vec![f(0), f(d)], vec![f(d), f(0)]]).unwrap()
    }

    #[test]
    fn degree_zero_examples() {
        let lev = catalog::lev_space();
        assert_eq!(sh0_classes(&lev, &0, &Interval::singleton(0)), 4);
        assert_eq!(sh0_classes(&lev, &1, &Interval::singleton(0)), 1);
        assert_eq!(sh0_classes(&lev, &1, &Interval::closed(1, 2).unwrap()), 0);
        let x = two_point(5);
        let open = Interval::parse("[0,5)").unwrap();
        assert_eq!(sh0_classes(&x, &0, &open), 2);
        assert!(strict_upper(&open, &0));
        assert_eq!(sh0_classes(&x, &0, &Interval::closed(0, 5).unwrap()), 1);
    }

    #[test]
    fn adjacency_examples() {
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap().shortest_path_space();
        assert_eq!(adjacent_pairs(&path, &Level::exact(1)), vec![(0, 1), (1, 2)]);
        assert!(adjacent_pairs(&path, &Level::exact(2)).is_empty());
        assert_eq!(adjacent_pairs(&two_point(5), &Level::exact(5)), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn trivial_pair_examples() {
        assert!(trivial_pairs(&two_point(5), &Level::exact(5), &1).is_empty());
        let line = euclidean_space(vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let t = trivial_pairs(&line, &Level::exact(2.0), &0.0);
        assert!(t.contains(&(0, 2)));
        assert!(t.contains(&(0, 1)));
    }

    #[test]
    fn radius_zero_counts_adjacent_pairs() {
        let pentagon = catalog::cycle(5).shortest_path_space();
        assert_eq!(sh1_adjacency(&pentagon, &Level::exact(1), &0).unwrap(), 10);
        assert!(matches!(sh1_adjacency(&pentagon, &Level::exact(1), &1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn diagonal_pairs_take_part_in_the_moves() {
        // (1,0) is joined to the trivial pair (1,1) through d(0,1) = 1 <= r
        let f = ExtDist::Finite;
        let x = QMetSpace::new(vec![vec![f(0), f(1)], vec![f(2), f(0)]]).unwrap();
        assert_eq!(adjacent_pairs(&x, &Level::exact(2)), vec![(1, 0)]);
        assert_eq!(sh1_adjacency(&x, &Level::exact(2), &1).unwrap(), 0);
        assert_eq!(sh1_adjacency(&x, &Level::exact(2), &0).unwrap(), 1);
    }

    #[test]
    fn thick_interval() {
        let segment = euclidean_space((0..11).map(|i| vec![i as f64 / 10.0]).collect()).unwrap();
        assert!(!thick_interval_hits(&segment, 0, 10, 0.0).unwrap().is_empty());
        assert!(thick_interval_hits(&segment, 0, 1, 0.0).unwrap().is_empty());
        let pair = euclidean_space(vec![vec![0.0], vec![1.0]]).unwrap();
        assert!(thick_interval_hits(&pair, 0, 1, 0.5).unwrap().is_empty());
        assert_eq!(thick_interval_hits(&two_point(1), 0, 1, 0.0), Err(Error::NotEuclidean));
    }
}
