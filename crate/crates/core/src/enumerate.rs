//! Small-graph canonical forms and exhaustive enumeration up to isomorphism.
//!
//! The canonical form is the largest graph6 bit string over all relabelings
//! that respect the stable colour-refinement partition.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order with a canonical code that fits in a `u64`.
pub const CANON_MAX_N: usize = 11;
/// Largest order accepted by [`graphs_of_order`].
pub const ENUM_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
}

fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour: Vec<usize> = g.degrees();
    let mut classes = colour.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| g.adj0(u, v))
                    .map(|u| colour[u])
                    .collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> =
            sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        colour = next;
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    slot_colour: Vec<usize>,
    colour: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn prefix_bits(p: usize) -> usize {
        p * (p.saturating_sub(1)) / 2
    }

    fn dfs(&mut self, p: usize, code: u64) {
        if p == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, self.perm.clone()));
            }
            return;
        }
        let total = Self::prefix_bits(self.n);
        for v in 0..self.n {
            if self.used[v] || self.colour[v] != self.slot_colour[p] {
                continue;
            }
            let mut next = code;
            for &u in &self.perm {
                next = next << 1 | self.g.adj0(u, v) as u64;
            }
            if let Some((b, _)) = &self.best {
                let len = Self::prefix_bits(p + 1);
                if next < b >> (total - len) {
                    continue;
                }
            }
            self.used[v] = true;
            self.perm.push(v);
            self.dfs(p + 1, next);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical code and the relabeling achieving it (`perm[k]` is the 0-based
/// original vertex placed at position `k`).
fn canonical(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > CANON_MAX_N {
        return Err(Error::Capacity {
            what: "canonical form order",
            got: n,
            limit: CANON_MAX_N,
        });
    }
    let colour = refine(g);
    let mut slot_colour = colour.clone();
    slot_colour.sort_unstable();
    let mut s = Search {
        g,
        n,
        slot_colour,
        colour,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    s.dfs(0, 0);
    let (code, perm) = s.best.expect("at least one labeling");
    Ok((CanonicalForm { n, code }, perm))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical(g).map(|(c, _)| c)
}

/// `g` relabeled into canonical position.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, perm) = canonical(g)?;
    let n = g.order();
    let mut out = Graph::empty(n)?;
    for a in 0..n {
        for b in (a + 1)..n {
            if g.adj0(perm[a], perm[b]) {
                out.add_edge(a + 1, b + 1)?;
            }
        }
    }
    Ok(out)
}

/// Isomorphism test for graphs within [`CANON_MAX_N`].
///
/// # Panics
/// If either graph exceeds [`CANON_MAX_N`] vertices.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_form(g).expect("order within cap")
            == canonical_form(h).expect("order within cap")
}

/// One canonical representative per isomorphism class on `n` vertices,
/// sorted by canonical code.
pub fn graphs_of_order(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > ENUM_MAX_N {
        return Err(Error::Capacity {
            what: "enumeration order",
            got: n,
            limit: ENUM_MAX_N,
        });
    }
    let mut layer = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for base in &layer {
            for mask in 0u32..(1 << (m - 1)) {
                let mut g = Graph::empty(m)?;
                for (i, j) in base.edges() {
                    g.add_edge(i, j)?;
                }
                for u in 0..(m - 1) {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u + 1, m)?;
                    }
                }
                let (form, _) = canonical(&g)?;
                if seen.insert(form) {
                    next.push((form, canonical_graph(&g)?));
                }
            }
        }
        next.sort_by_key(|(f, _)| *f);
        layer = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(layer)
}

/// Classes on `n` vertices where the graph and its complement are connected.
pub fn connected_coconnected(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs_of_order(n)?
        .into_iter()
        .filter(|g| g.is_connected() && g.complement().is_connected())
        .collect())
}
