//! Small named spaces and digraphs that show up in examples and regression
//! tests.

use crate::digraph::Digraph;
use crate::geometry::euclidean_space;
use crate::space::QMetSpace;

/// Four vertices, arrows `0→1, 0→3, 1→2, 3→2, 2→0`.
pub fn lev_digraph() -> Digraph {
    Digraph::new(4, [(0, 1), (0, 3), (1, 2), (3, 2), (2, 0)]).unwrap()
}

pub fn lev_space() -> QMetSpace<i64> {
    lev_digraph().shortest_path_space()
}

/// The endomorphism `0↦2, 1↦0, 2↦1, 3↦0` of [`lev_digraph`].
pub fn lev_phi_images() -> Vec<usize> {
    vec![2, 0, 1, 0]
}

/// Undirected pentagon on `1..=5` plus an apex `0` joined to `1` and `2`.
pub fn pentagon_with_apex() -> Digraph {
    Digraph::undirected(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (0, 1), (0, 2)]).unwrap()
}

/// Undirected cycle on `n` vertices.
pub fn cycle(n: usize) -> Digraph {
    Digraph::undirected(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Directed cycle `0→1→…→n-1→0`.
pub fn directed_cycle(n: usize) -> Digraph {
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Directed path `0→1→…→n-1`.
pub fn directed_path(n: usize) -> Digraph {
    Digraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Two sources over two sinks: `a→b, a→d, c→b, c→d`.
pub fn diamond() -> Digraph {
    Digraph::new(4, [(0, 1), (0, 3), (2, 1), (2, 3)]).unwrap()
}

/// Two sources `0`, `5` feeding two bidirected pairs `1↔2` and `3↔4`:
/// `0→1, 0→3, 5→2, 5→4`.
pub fn bidirected_hexagon() -> Digraph {
    Digraph::new(
        6,
        [(0, 1), (0, 3), (1, 2), (2, 1), (3, 4), (4, 3), (5, 2), (5, 4)],
    )
    .unwrap()
}

/// Six plane points `({-2,2}×{0,1}) ∪ {(-ε,0), (ε,1)}`.
pub fn discontinuity_points(eps: f64) -> Vec<Vec<f64>> {
    vec![
        vec![-2.0, 0.0],
        vec![-2.0, 1.0],
        vec![-eps, 0.0],
        vec![eps, 1.0],
        vec![2.0, 0.0],
        vec![2.0, 1.0],
    ]
}

pub fn discontinuity_space(eps: f64) -> QMetSpace<f64> {
    euclidean_space(discontinuity_points(eps)).unwrap()
}
