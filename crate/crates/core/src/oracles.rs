//! Exact minimum semidefinite rank for the families where it is known, and
//! the reductions that combine them.
//!
//! * trees: `n - 1`
//! * cycles: `n - 2`
//! * complete graphs: `1`
//! * chordal graphs: the edge clique cover number
//! * a pendant vertex adds exactly 1
//! * at a cut vertex the values of the parts add

use serde::Serialize;

use crate::delta::{check_preconditions, delta_bound, find_delta_ordering};
use crate::error::{param, Error, Result};
use crate::graph::Graph;
use crate::solver::{build_representation, verify_representation, SolverConfig};

pub const CLIQUE_COVER_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    pub size: usize,
    /// Cliques as sorted 1-based vertex lists.
    pub cliques: Vec<Vec<usize>>,
}

/// Maximal cliques by Bron–Kerbosch with pivoting, as 0-based bitmasks.
fn maximal_cliques(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let nbr: Vec<u64> = (0..n)
        .map(|a| (0..n).filter(|&b| g.adj0(a, b)).fold(0, |m, b| m | 1 << b))
        .collect();
    fn bk(r: u64, mut p: u64, mut x: u64, nbr: &[u64], out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !nbr[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(r | 1 << v, p & nbr[v], x & nbr[v], nbr, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        bk(0, (1u64 << n) - 1, 0, &nbr, &mut out);
    }
    out.sort_unstable();
    out
}

pub fn edge_clique_cover(g: &Graph) -> Result<CliqueCover> {
    edge_clique_cover_with_cap(g, CLIQUE_COVER_CAP)
}

/// Minimum edge clique cover by branch and bound over maximal cliques.
pub fn edge_clique_cover_with_cap(g: &Graph, cap: usize) -> Result<CliqueCover> {
    let n = g.order();
    if n > cap || n > 11 {
        return Err(Error::Capacity {
            what: "clique cover order",
            got: n,
            limit: cap.min(11),
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(i, j)| (i - 1, j - 1)).collect();
    if edges.is_empty() {
        return Ok(CliqueCover {
            size: 0,
            cliques: Vec::new(),
        });
    }
    let cliques = maximal_cliques(g);
    let covers: Vec<u64> = cliques
        .iter()
        .map(|&c| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| c >> a & 1 == 1 && c >> b & 1 == 1)
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .collect();
    let all: u64 = if edges.len() == 64 {
        u64::MAX
    } else {
        (1u64 << edges.len()) - 1
    };
    let widest = covers.iter().map(|c| c.count_ones()).max().unwrap_or(1);

    // greedy upper bound
    let mut best: Vec<usize> = Vec::new();
    let mut covered = 0u64;
    while covered != all {
        let k = (0..covers.len())
            .max_by_key(|&k| ((covers[k] & !covered).count_ones(), std::cmp::Reverse(k)))
            .expect("nonempty");
        best.push(k);
        covered |= covers[k];
    }

    struct Bb<'a> {
        covers: &'a [u64],
        all: u64,
        widest: u32,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }
    impl Bb<'_> {
        fn run(&mut self, covered: u64) {
            if covered == self.all {
                if self.chosen.len() < self.best.len() {
                    self.best = self.chosen.clone();
                }
                return;
            }
            let left = (self.all & !covered).count_ones();
            let lower = self.chosen.len() + left.div_ceil(self.widest) as usize;
            if lower >= self.best.len() {
                return;
            }
            // branch on the uncovered edge with fewest covering cliques
            let mut rest = self.all & !covered;
            let mut pick: Option<(u32, u64)> = None;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let count = self.covers.iter().filter(|&&c| c & e != 0).count() as u32;
                if pick.is_none_or(|(best, _)| count < best) {
                    pick = Some((count, e));
                }
            }
            let (_, e) = pick.expect("uncovered edge");
            for k in 0..self.covers.len() {
                if self.covers[k] & e == 0 {
                    continue;
                }
                self.chosen.push(k);
                self.run(covered | self.covers[k]);
                self.chosen.pop();
            }
        }
    }
    let mut bb = Bb {
        covers: &covers,
        all,
        widest,
        chosen: Vec::new(),
        best,
    };
    bb.run(0);
    let mut chosen: Vec<Vec<usize>> = bb
        .best
        .iter()
        .map(|&k| {
            (0..n)
                .filter(|&v| cliques[k] >> v & 1 == 1)
                .map(|v| v + 1)
                .collect()
        })
        .collect();
    chosen.sort();
    Ok(CliqueCover {
        size: chosen.len(),
        cliques: chosen,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MsrMethod {
    Tree,
    Cycle,
    Complete,
    ChordalCc,
    PendantReduction,
    CutVertexSum,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsrVerdict {
    pub value: Option<usize>,
    pub method: MsrMethod,
    pub trace: Vec<String>,
}

impl MsrVerdict {
    fn known(value: usize, method: MsrMethod, trace: Vec<String>) -> Self {
        MsrVerdict {
            value: Some(value),
            method,
            trace,
        }
    }

    fn unknown(trace: Vec<String>) -> Self {
        MsrVerdict {
            value: None,
            method: MsrMethod::Unknown,
            trace,
        }
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(param("graph must be connected"))
    }
}

/// Direct lookup for trees, cycles, complete and chordal graphs.
pub fn msr_base(g: &Graph) -> Result<MsrVerdict> {
    require_connected(g)?;
    let n = g.order();
    if g.is_tree() {
        return Ok(MsrVerdict::known(
            n - 1,
            MsrMethod::Tree,
            vec![format!("tree on {n} vertices")],
        ));
    }
    if g.is_cycle() {
        return Ok(MsrVerdict::known(
            n - 2,
            MsrMethod::Cycle,
            vec![format!("cycle on {n} vertices")],
        ));
    }
    if g.is_complete() {
        return Ok(MsrVerdict::known(
            1,
            MsrMethod::Complete,
            vec![format!("complete on {n} vertices")],
        ));
    }
    if g.is_chordal() {
        if n > CLIQUE_COVER_CAP {
            return Ok(MsrVerdict::unknown(vec![format!(
                "chordal on {n} vertices, above the clique cover cap"
            )]));
        }
        let cc = edge_clique_cover(g)?;
        return Ok(MsrVerdict::known(
            cc.size,
            MsrMethod::ChordalCc,
            vec![format!("chordal on {n} vertices, clique cover {}", cc.size)],
        ));
    }
    Ok(MsrVerdict::unknown(vec![format!(
        "no direct result for {n} vertices"
    )]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantReduction {
    pub core: Graph,
    pub count: usize,
    /// Original labels of the stripped vertices, in stripping order.
    pub removed: Vec<usize>,
    /// `core_labels[k]` is the original label of core vertex `k + 1`.
    pub core_labels: Vec<usize>,
}

/// Strips degree-1 vertices until none is left.
pub fn reduce_pendant(g: &Graph) -> Result<PendantReduction> {
    require_connected(g)?;
    let mut core = g.clone();
    let mut labels: Vec<usize> = (1..=g.order()).collect();
    let mut removed = Vec::new();
    while let Some(&v) = core.pendant_vertices().first() {
        removed.push(labels.remove(v - 1));
        core = core.remove_vertex(v)?;
    }
    Ok(PendantReduction {
        count: removed.len(),
        core,
        removed,
        core_labels: labels,
    })
}

/// Splits at the smallest cut vertex: one part per component of `g - v`,
/// each with `v` added back.
pub fn decompose_cut_vertex(g: &Graph) -> Result<Option<(usize, Vec<Graph>)>> {
    require_connected(g)?;
    let Some(&v) = g.cut_vertices().first() else {
        return Ok(None);
    };
    let rest: Vec<usize> = (1..=g.order()).filter(|&u| u != v).collect();
    let without = g.remove_vertex(v)?;
    let parts = without
        .components()
        .into_iter()
        .map(|comp| {
            let mut vs: Vec<usize> = comp.iter().map(|&c| rest[c - 1]).collect();
            vs.push(v);
            g.induced_subgraph(&vs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((v, parts)))
}

fn known_rec(
    g: &Graph,
    depth: usize,
    trace: &mut Vec<String>,
) -> Result<(Option<usize>, MsrMethod)> {
    let pad = "  ".repeat(depth);
    let base = msr_base(g)?;
    if let Some(v) = base.value {
        trace.extend(base.trace.iter().map(|t| format!("{pad}{t} -> {v}")));
        return Ok((Some(v), base.method));
    }
    let red = reduce_pendant(g)?;
    if red.count > 0 {
        trace.push(format!(
            "{pad}strip {} pendant vertices {:?}",
            red.count, red.removed
        ));
        let (core, _) = known_rec(&red.core, depth + 1, trace)?;
        return Ok((core.map(|c| c + red.count), MsrMethod::PendantReduction));
    }
    if let Some((v, parts)) = decompose_cut_vertex(g)? {
        trace.push(format!(
            "{pad}split at cut vertex {v} into {} parts",
            parts.len()
        ));
        let mut total = Some(0);
        for part in &parts {
            let (value, _) = known_rec(part, depth + 1, trace)?;
            total = total.zip(value).map(|(a, b)| a + b);
        }
        return Ok((total, MsrMethod::CutVertexSum));
    }
    trace.extend(base.trace.iter().map(|t| format!("{pad}{t}")));
    Ok((None, MsrMethod::Unknown))
}

/// Combines the direct results with pendant stripping and cut-vertex
/// splitting. Reports unknown rather than guessing.
pub fn msr_known(g: &Graph) -> Result<MsrVerdict> {
    require_connected(g)?;
    let mut trace = Vec::new();
    let (value, method) = known_rec(g, 0, &mut trace)?;
    Ok(match value {
        Some(v) => MsrVerdict::known(v, method, trace),
        None => MsrVerdict::unknown(trace),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    /// The exact value is known and within the bound.
    VerifiedExact,
    /// A verified representation within the bound was built.
    VerifiedConstructive,
    Inconclusive,
    /// The exact value exceeds the bound. Never produced by solver failure.
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRecord {
    /// `|G| - δ(G)`.
    pub bound: usize,
    pub msr_known: Option<usize>,
    pub rep_dimension: Option<usize>,
    pub status: ConjectureStatus,
}

pub fn check_delta_conjecture(g: &Graph, config: &SolverConfig) -> Result<ConjectureRecord> {
    require_connected(g)?;
    let bound = g.order() - g.min_degree();
    let known = msr_known(g)?.value;
    if let Some(v) = known {
        return Ok(ConjectureRecord {
            bound,
            msr_known: known,
            rep_dimension: None,
            status: if v <= bound {
                ConjectureStatus::VerifiedExact
            } else {
                ConjectureStatus::Refuted
            },
        });
    }
    let mut record = ConjectureRecord {
        bound,
        msr_known: None,
        rep_dimension: None,
        status: ConjectureStatus::Inconclusive,
    };
    if check_preconditions(g).is_err() {
        return Ok(record);
    }
    let Some(cert) = find_delta_ordering(g)? else {
        return Ok(record);
    };
    let d = delta_bound(g, &cert)?;
    let outcome = build_representation(g, &cert.order, d, config)?;
    if let Some(rep) = outcome.representation() {
        if verify_representation(g, rep)?.certifies() {
            record.rep_dimension = Some(d);
            record.status = ConjectureStatus::VerifiedConstructive;
        }
    }
    Ok(record)
}
