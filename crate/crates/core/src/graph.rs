//! Simple undirected graphs on vertices `1..=n`.
//!
//! Vertices are 1-based in every public signature. The Cartesian product
//! flattens the pair `(u, v)` to `(u - 1) * n_h + v`, i.e. row-major by the
//! first factor, and the generators number vertices in the order they are
//! met walking clockwise around their circular drawing.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// A simple undirected graph stored as a dense symmetric adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(param("a graph needs at least one vertex"));
        }
        Ok(Graph {
            n,
            adj: vec![false; n * n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Adds `{i, j}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(param(format!("self-loop at vertex {i}")));
        }
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(param(format!("vertex {v} outside 1..={}", self.n)));
            }
        }
        self.set0(i - 1, j - 1, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        if i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n {
            self.set0(i - 1, j - 1, false);
        }
    }

    fn set0(&mut self, a: usize, b: usize, on: bool) {
        self.adj[a * self.n + b] = on;
        self.adj[b * self.n + a] = on;
    }

    #[inline]
    pub(crate) fn adj0(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    /// Vertex count `|G|`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj0(i - 1, j - 1)
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            ((a + 1)..self.n)
                .filter(move |&b| self.adj0(a, b))
                .map(move |b| (a + 1, b + 1))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        let a = v - 1;
        (0..self.n).filter(|&b| self.adj0(a, b)).count()
    }

    /// Neighbourhood `N(v)`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let a = v - 1;
        (0..self.n)
            .filter(|&b| self.adj0(a, b))
            .map(|b| b + 1)
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                adj[a * n + b] = a != b && !self.adj0(a, b);
            }
        }
        Graph { n, adj }
    }

    /// The subgraph induced by `vs`, relabelled to `1..=|vs|` keeping the
    /// ascending order of `vs`.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Graph> {
        if vs.is_empty() {
            return Err(param("induced subgraph of an empty vertex set"));
        }
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(param(format!("vertex {bad} outside 1..={}", self.n)));
        }
        let k = sorted.len();
        let mut h = Graph::empty(k)?;
        for x in 0..k {
            for y in (x + 1)..k {
                if self.adj0(sorted[x] - 1, sorted[y] - 1) {
                    h.set0(x, y, true);
                }
            }
        }
        Ok(h)
    }

    /// `G - v`, with the remaining vertices relabelled in ascending order.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        let keep: Vec<usize> = (1..=self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Cartesian product `G □ H`; vertex `(u, v)` becomes `(u - 1) * |H| + v`.
    pub fn cartesian_product(&self, h: &Graph) -> Graph {
        let (ng, nh) = (self.n, h.n);
        let n = ng * nh;
        let idx = |u: usize, v: usize| u * nh + v;
        let mut p = Graph {
            n,
            adj: vec![false; n * n],
        };
        for u in 0..ng {
            for v in 0..nh {
                for v2 in (v + 1)..nh {
                    if h.adj0(v, v2) {
                        p.set0(idx(u, v), idx(u, v2), true);
                    }
                }
                for u2 in (u + 1)..ng {
                    if self.adj0(u, u2) {
                        p.set0(idx(u, v), idx(u2, v), true);
                    }
                }
            }
        }
        p
    }

    /// Connected components as ascending vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(a) = queue.pop_front() {
                comp.push(a + 1);
                for (b, s) in seen.iter_mut().enumerate() {
                    if !*s && self.adj0(a, b) {
                        *s = true;
                        queue.push_back(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// True for a connected 2-regular graph on at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.degrees().iter().all(|&d| d == 2)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn stats(&self) -> GraphStats {
        let degree_sequence = self.degrees();
        GraphStats {
            min_degree: degree_sequence.iter().copied().min().unwrap_or(0),
            max_degree: degree_sequence.iter().copied().max().unwrap_or(0),
            connected: self.is_connected(),
            complement_connected: self.complement().is_connected(),
            degree_sequence,
        }
    }

    pub fn pendant_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices whose deletion increases the number of components.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let base = self.components().len();
        if self.n == 1 {
            return Vec::new();
        }
        (1..=self.n)
            .filter(|&v| {
                let rest = self.remove_vertex(v).expect("n > 1");
                rest.components().len() > base
            })
            .collect()
    }

    pub fn pendant_and_cut_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        (self.pendant_vertices(), self.cut_vertices())
    }

    /// Perfect elimination ordering when the graph is chordal.
    ///
    /// Runs maximum cardinality search; the reverse visit order is a perfect
    /// elimination ordering iff the graph is chordal.
    pub fn perfect_elimination_ordering(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut weight = vec![0usize; n];
        let mut visited = vec![false; n];
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            // ties broken by the smallest index
            let next = (0..n)
                .filter(|&a| !visited[a])
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex");
            visited[next] = true;
            visit.push(next);
            for b in 0..n {
                if !visited[b] && self.adj0(next, b) {
                    weight[b] += 1;
                }
            }
        }
        visit.reverse();
        let mut pos = vec![0usize; n];
        for (i, &a) in visit.iter().enumerate() {
            pos[a] = i;
        }
        for &a in &visit {
            let mut later: Vec<usize> = (0..n)
                .filter(|&b| self.adj0(a, b) && pos[b] > pos[a])
                .collect();
            later.sort_by_key(|&b| pos[b]);
            if let Some((&parent, rest)) = later.split_first() {
                if rest.iter().any(|&b| !self.adj0(parent, b)) {
                    return None;
                }
            }
        }
        Some(visit.into_iter().map(|a| a + 1).collect())
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_ordering().is_some()
    }

    /// Applies `perm`, where `perm[k - 1]` is the old label of new vertex `k`.
    pub fn relabel(&self, perm: &VertexOrdering) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(param("relabelling must be a permutation of the vertex set"));
        }
        let p = perm.as_slice();
        let mut h = Graph::empty(self.n)?;
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                if self.adj0(p[x] - 1, p[y] - 1) {
                    h.set0(x, y, true);
                }
            }
        }
        Ok(h)
    }
}

/// Degree and connectivity summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub complement_connected: bool,
    pub degree_sequence: Vec<usize>,
}

/// A labelling `v_1, ..., v_n` of the vertex set: `order[k]` is the vertex
/// placed at rank `k` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexOrdering(Vec<usize>);

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &v in &order {
            if v == 0 || v > n || seen[v] {
                return Err(param(format!("{order:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(VertexOrdering(order))
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_at(&self, rank: usize) -> usize {
        self.0[rank]
    }

    /// `rank_of()[v - 1]` is the 0-based rank of vertex `v`.
    pub fn rank_of(&self) -> Vec<usize> {
        let mut rank = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            rank[v - 1] = k;
        }
        rank
    }

    pub fn reversed(&self) -> Self {
        VertexOrdering(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<usize>> for VertexOrdering {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexOrdering::new(v)
    }
}

impl From<VertexOrdering> for Vec<usize> {
    fn from(o: VertexOrdering) -> Self {
        o.0
    }
}

/// Named graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    MobiusLadder,
    Prism,
    Star,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "mobius_ladder" | "mobius" => Ok(Family::MobiusLadder),
            "prism" => Ok(Family::Prism),
            "star" => Ok(Family::Star),
            other => Err(param(format!("unknown graph family `{other}`"))),
        }
    }
}

impl Family {
    fn min_size(self) -> usize {
        match self {
            Family::Path | Family::Complete => 1,
            Family::Star => 2,
            Family::Cycle | Family::MobiusLadder | Family::Prism => 3,
        }
    }
}

/// Builds a member of a named family.
///
/// * `Path`, `Cycle`, `Complete`: `k` vertices.
/// * `Star`: `k` vertices, centre `1`.
/// * `MobiusLadder`: `2k` vertices around a cycle plus the `k` antipodal rungs `{i, i + k}`.
/// * `Prism`: `2k` vertices, outer cycle `1..=k`, inner cycle `k+1..=2k`, rungs `{i, i + k}`.
pub fn generate(family: Family, k: usize) -> Result<Graph> {
    if k < family.min_size() {
        return Err(param(format!(
            "{family:?} needs size parameter >= {}, got {k}",
            family.min_size()
        )));
    }
    let cycle_edges =
        |len: usize, offset: usize| (1..=len).map(move |i| (offset + i, offset + i % len + 1));
    match family {
        Family::Path => Graph::from_edges(k, (1..k).map(|i| (i, i + 1))),
        Family::Cycle => Graph::from_edges(k, cycle_edges(k, 0)),
        Family::Complete => {
            Graph::from_edges(k, (1..=k).flat_map(|i| ((i + 1)..=k).map(move |j| (i, j))))
        }
        Family::Star => Graph::from_edges(k, (2..=k).map(|j| (1, j))),
        Family::MobiusLadder => Graph::from_edges(
            2 * k,
            cycle_edges(2 * k, 0).chain((1..=k).map(|i| (i, i + k))),
        ),
        Family::Prism => Graph::from_edges(
            2 * k,
            cycle_edges(k, 0)
                .chain(cycle_edges(k, k))
                .chain((1..=k).map(|i| (i, i + k))),
        ),
    }
}
