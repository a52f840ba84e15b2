//! Reference implementations used to cross-check the library. They share
//! no code with it beyond the input types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rhomotopy::{Digraph, ExtDist, QMetSpace};

/// Rank over ℚ by plain Gaussian elimination. `rows` is a dense matrix.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                for j in col..ncols {
                    let delta = &f * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null space basis over ℚ of a dense matrix with `ncols` columns.
pub fn dense_kernel(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = BigRational::one() / &rows[rank][col];
        for j in 0..ncols {
            rows[rank][j] = &rows[rank][j] * &inv;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][f].clone();
            }
            v
        })
        .collect()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// GLMY path homology of a digraph over ℚ from the regular path complex:
/// `Ω_n = {u ∈ A_n : ∂u ∈ A_{n-1}}`.
pub fn glmy_path_homology(g: &Digraph, n: usize) -> usize {
    let allowed = |m: usize| -> Vec<Vec<usize>> {
        let mut paths: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
        for _ in 0..m {
            paths = paths
                .into_iter()
                .flat_map(|p| {
                    let last = *p.last().unwrap();
                    g.arrows()
                        .iter()
                        .filter(move |&&(a, _)| a == last)
                        .map(move |&(_, b)| {
                            let mut q = p.clone();
                            q.push(b);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        paths
    };
    // ∂ of a path as a map from regular faces to coefficients
    let boundary = |p: &[usize]| -> BTreeMap<Vec<usize>, i64> {
        let mut out = BTreeMap::new();
        if p.len() < 2 {
            return out;
        }
        for i in 0..p.len() {
            let face: Vec<usize> = p.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            if face.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            *out.entry(face).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
        }
        out.retain(|_, c| *c != 0);
        out
    };
    // Ω_m as explicit vectors over A_m
    let omega = |m: usize| -> (Vec<Vec<usize>>, Vec<Vec<BigRational>>) {
        let a = allowed(m);
        if m == 0 {
            let basis = (0..a.len())
                .map(|i| (0..a.len()).map(|j| q((i == j) as i64)).collect())
                .collect();
            return (a, basis);
        }
        let allowed_faces: BTreeSet<Vec<usize>> = allowed(m - 1).into_iter().collect();
        let mut bad: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let boundaries: Vec<_> = a.iter().map(|p| boundary(p)).collect();
        for b in &boundaries {
            for face in b.keys() {
                if !allowed_faces.contains(face) {
                    let next = bad.len();
                    bad.entry(face.clone()).or_insert(next);
                }
            }
        }
        let mut rows = vec![vec![q(0); a.len()]; bad.len()];
        for (j, b) in boundaries.iter().enumerate() {
            for (face, &c) in b {
                if let Some(&i) = bad.get(face) {
                    rows[i][j] = q(c);
                }
            }
        }
        let kernel = dense_kernel(rows, a.len());
        (a, kernel)
    };
    // rank of ∂ restricted to Ω_m
    let boundary_rank = |m: usize| -> usize {
        if m == 0 {
            return 0;
        }
        let (a, basis) = omega(m);
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let boundaries: Vec<_> = a.iter().map(|p| boundary(p)).collect();
        for b in &boundaries {
            for face in b.keys() {
                let next = index.len();
                index.entry(face.clone()).or_insert(next);
            }
        }
        let mut rows = vec![vec![q(0); basis.len()]; index.len()];
        for (k, v) in basis.iter().enumerate() {
            for (j, coeff) in v.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (face, &c) in &boundaries[j] {
                    rows[index[face]][k] += coeff * q(c);
                }
            }
        }
        dense_rank(rows)
    };
    let dim = omega(n).1.len();
    dim - boundary_rank(n) - boundary_rank(n + 1)
}

fn reachability(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(a, b) in g.arrows() {
                    if a == u && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Homology over ℚ of the order complex of the poset obtained by collapsing
/// mutually reachable vertices.
pub fn order_complex_homology(g: &Digraph, n: usize) -> usize {
    let reach = reachability(g);
    let count = g.vertex_count();
    let mut class = vec![usize::MAX; count];
    let mut classes = 0;
    for v in 0..count {
        if class[v] == usize::MAX {
            for w in v..count {
                if reach[v][w] && reach[w][v] {
                    class[w] = classes;
                }
            }
            classes += 1;
        }
    }
    let rep: Vec<usize> = (0..classes).map(|c| class.iter().position(|&k| k == c).unwrap()).collect();
    let below = |a: usize, b: usize| a != b && reach[rep[a]][rep[b]];
    let chains = |m: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..classes).map(|c| vec![c]).collect();
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap();
                    (0..classes)
                        .filter(move |&d| below(last, d))
                        .map(move |d| {
                            let mut e = c.clone();
                            e.push(d);
                            e
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out
    };
    let boundary_rank = |m: usize| -> usize {
        if m == 0 {
            return 0;
        }
        let faces: BTreeMap<Vec<usize>, usize> = chains(m - 1).into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        let cells = chains(m);
        let mut rows = vec![vec![q(0); cells.len()]; faces.len()];
        for (j, c) in cells.iter().enumerate() {
            for i in 0..c.len() {
                let face: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
                rows[faces[&face]][j] += q(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        dense_rank(rows)
    };
    chains(n).len() - boundary_rank(n) - boundary_rank(n + 1)
}

/// A random digraph on `n` vertices with arrow probability `p`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let arrows: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b).filter(|_| rng.gen_bool(p)).collect();
    Digraph::new(n, arrows).unwrap()
}

/// A random integer quasimetric: random asymmetric weights, some missing,
/// closed under shortest paths.
pub fn random_quasimetric(rng: &mut impl Rng, n: usize, max_weight: i64, missing: f64) -> QMetSpace<i64> {
    let raw = (0..n)
        .map(|_| (0..n).map(|_| (!rng.gen_bool(missing)).then(|| rng.gen_range(1..=max_weight))).collect())
        .collect();
    close_quasimetric(raw)
}

/// Shortest-path closure of positive weights; `None` means no direct edge.
/// Diagonal entries are ignored.
pub fn close_quasimetric(raw: Vec<Vec<Option<i64>>>) -> QMetSpace<i64> {
    let n = raw.len();
    let mut d: Vec<Vec<Option<i64>>> =
        raw.into_iter().enumerate().map(|(i, row)| row.into_iter().enumerate().map(|(j, v)| if i == j { Some(0) } else { v }).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    let matrix = d
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.map_or(ExtDist::Infinite, ExtDist::Finite)).collect())
        .collect();
    QMetSpace::new(matrix).unwrap()
}

/// Finite distances of a float space as plain numbers.
pub fn f64_matrix(space: &QMetSpace<f64>) -> Vec<Vec<f64>> {
    (0..space.len()).map(|x| (0..space.len()).map(|y| space.d(x, y).to_f64()).collect()).collect()
}

/// Every self-map of an `n`-point set, as image vectors.
pub fn all_self_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = code % n;
                code /= n;
                v
            })
            .collect()
    })
}

/// Is `images` short for the (finite) distance matrix `d`?
pub fn is_short(d: &[Vec<f64>], images: &[usize]) -> bool {
    (0..d.len()).all(|x| (0..d.len()).all(|y| d[images[x]][images[y]] <= d[x][y]))
}
