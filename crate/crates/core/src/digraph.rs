//! Digraphs and their shortest-path quasimetric.
//!
//! Loops `(g, g)` are implicit and never stored.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::ExtDist;
use crate::space::{QMetSpace, ShortMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

impl Digraph {
    /// Builds a digraph on `0..n`. Loops are dropped; duplicates merged.
    pub fn new(n: usize, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in arrows {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::PointOutOfRange { point: w, len: n });
                }
            }
            if u != v {
                list.push((u, v));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self { n, arrows: list })
    }

    /// Symmetric arrows for every undirected edge.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        u == v || self.arrows.binary_search(&(u, v)).is_ok()
    }

    fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.arrows {
            out[u].push(v);
        }
        out
    }

    /// Hop distances from every vertex; `None` when unreachable.
    pub fn hop_distances(&self) -> Vec<Vec<Option<u64>>> {
        let out = self.out_lists();
        (0..self.n)
            .map(|s| {
                let mut dist = vec![None; self.n];
                dist[s] = Some(0);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u].unwrap();
                    for &v in &out[u] {
                        if dist[v].is_none() {
                            dist[v] = Some(du + 1);
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// The shortest-path quasimetric, integer backend.
    pub fn shortest_path_space(&self) -> QMetSpace<i64> {
        let matrix = self
            .hop_distances()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|d| d.map_or(ExtDist::Infinite, |d| ExtDist::Finite(d as i64)))
                    .collect()
            })
            .collect();
        QMetSpace::new(matrix).expect("shortest-path distances satisfy the quasimetric axioms")
    }

    /// Is `map` (a vertex assignment into `target`) a digraph morphism?
    pub fn is_morphism(&self, target: &Digraph, map: &[usize]) -> bool {
        self.arrows.iter().all(|&(u, v)| target.has_arrow(map[u], map[v]))
    }

    /// The induced subdigraph on `vertices` with arrows at distance at most
    /// one, relabelled to `0..vertices.len()`.
    pub fn relabel(sub: &Subdigraph) -> Digraph {
        let index = |v: usize| sub.vertices.iter().position(|&w| w == v).unwrap();
        Digraph::new(
            sub.vertices.len(),
            sub.arrows.iter().map(|&(u, v)| (index(u), index(v))),
        )
        .expect("subdigraph arrows stay inside its vertex set")
    }
}

/// A subdigraph given in the ambient vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdigraph {
    pub vertices: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

impl Subdigraph {
    pub fn to_digraph(&self) -> Digraph {
        Digraph::relabel(self)
    }
}

/// A digraph retract: the subdigraph on `A` whose arrows are the pairs at
/// distance at most one in `G`. Checks that `rho` fixes `A`, is short, and
/// is a digraph morphism onto the result.
pub fn digraph_retract_from_points(
    graph: &Digraph,
    subset: &[usize],
    rho: &[usize],
) -> Result<Subdigraph> {
    let n = graph.vertex_count();
    if rho.len() != n {
        return Err(Error::WrongArity { got: rho.len(), expected: n });
    }
    let mut in_subset = vec![false; n];
    for &a in subset {
        if a >= n {
            return Err(Error::PointOutOfRange { point: a, len: n });
        }
        in_subset[a] = true;
    }
    for (x, &y) in rho.iter().enumerate() {
        if y >= n || !in_subset[y] {
            return Err(Error::NotARetraction { point: x });
        }
    }
    if let Some(&a) = subset.iter().find(|&&a| rho[a] != a) {
        return Err(Error::NotARetraction { point: a });
    }
    let space = Arc::new(graph.shortest_path_space());
    ShortMap::new(space.clone(), space.clone(), rho.to_vec())?;

    let mut vertices = subset.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let arrows = vertices
        .iter()
        .flat_map(|&u| vertices.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| u != v && space.d(u, v) == &ExtDist::Finite(1))
        .collect();
    let sub = Subdigraph { vertices, arrows };
    let full = Digraph { n, arrows: sub.arrows.clone() };
    assert!(graph.is_morphism(&full, rho), "a short retraction is a digraph morphism");
    Ok(sub)
}

/// Shortest-path distances of `sub` agree with those of `graph` on its
/// vertices.
pub fn is_convex_subdigraph(graph: &Digraph, sub: &Subdigraph) -> Result<bool> {
    let n = graph.vertex_count();
    if sub.vertices.iter().any(|&v| v >= n)
        || sub.arrows.iter().any(|&(u, v)| {
            !graph.has_arrow(u, v) || !sub.vertices.contains(&u) || !sub.vertices.contains(&v)
        })
    {
        return Err(Error::NotASubdigraph);
    }
    let ambient = graph.hop_distances();
    let local = sub.to_digraph().hop_distances();
    Ok(sub.vertices.iter().enumerate().all(|(i, &u)| {
        sub.vertices.iter().enumerate().all(|(j, &v)| local[i][j] == ambient[u][v])
    }))
}
