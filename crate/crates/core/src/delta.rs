//! Recognition of δ-graphs and C-δ-graphs.
//!
//! A graph `G` with `|G| >= 4`, where both `G` and its complement are
//! connected, is a δ-graph when its vertices can be ordered `v_1, ..., v_n`
//! so that
//!
//! 1. `v_1, v_2, v_3` induce `3K_1` or `K_2 ⊔ K_1`, and
//! 2. every `v_m` with `m >= 4` is non-adjacent to at most `⌊m/2⌋ - 1` of
//!    its predecessors.
//!
//! A C-δ-graph is a graph whose complement is a δ-graph.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::{Graph, VertexOrdering};

/// Largest vertex count accepted by the ordering search.
pub const SEARCH_LIMIT: usize = 64;

/// Number of predecessors `v_m` (1-based `m >= 4`) may miss.
pub fn budget(m: usize) -> usize {
    (m / 2).saturating_sub(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeedPattern {
    /// `3K_1`: no edges among the first three vertices.
    ThreeK1,
    /// `K_2 ⊔ K_1`: exactly one edge among them.
    K2PlusK1,
}

/// A vertex ordering witnessing the δ-graph conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaCertificate {
    pub order: VertexOrdering,
    pub first_three: SeedPattern,
    /// Non-adjacent predecessors of `v_m` for `m = 4..=n`.
    pub missed: Vec<usize>,
    /// `⌊m/2⌋ - 1` for `m = 4..=n`.
    pub budget: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// The first three vertices span this many edges (needs 0 or 1).
    Seed {
        edges: usize,
    },
    Budget {
        missed: usize,
        budget: usize,
    },
}

/// First place where an ordering breaks the δ-graph conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaViolation {
    /// 1-based position in the ordering.
    pub position: usize,
    pub vertex: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaCheck {
    Valid(DeltaCertificate),
    Violated(DeltaViolation),
}

impl DeltaCheck {
    pub fn certificate(self) -> Option<DeltaCertificate> {
        match self {
            DeltaCheck::Valid(c) => Some(c),
            DeltaCheck::Violated(_) => None,
        }
    }
}

/// The definition's preconditions: `|G| >= 4`, `G` and `Ḡ` connected.
pub fn check_preconditions(g: &Graph) -> Result<()> {
    if g.order() < 4 {
        return Err(Error::Precondition(format!(
            "δ-graph tests need at least 4 vertices, got {}",
            g.order()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    if !g.complement().is_connected() {
        return Err(Error::Precondition("complement is disconnected".into()));
    }
    Ok(())
}

pub fn check_delta_ordering(g: &Graph, order: &VertexOrdering) -> Result<DeltaCheck> {
    check_preconditions(g)?;
    if order.len() != g.order() {
        return Err(param(format!(
            "ordering has {} vertices, graph has {}",
            order.len(),
            g.order()
        )));
    }
    let o = order.as_slice();
    let seed_edges = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(a, b)| g.has_edge(o[a], o[b]))
        .count();
    let first_three = match seed_edges {
        0 => SeedPattern::ThreeK1,
        1 => SeedPattern::K2PlusK1,
        edges => {
            return Ok(DeltaCheck::Violated(DeltaViolation {
                position: 3,
                vertex: o[2],
                kind: ViolationKind::Seed { edges },
            }))
        }
    };
    let mut missed = Vec::new();
    let mut budgets = Vec::new();
    for idx in 3..o.len() {
        let m = idx + 1;
        let miss = o[..idx].iter().filter(|&&u| !g.has_edge(u, o[idx])).count();
        if miss > budget(m) {
            return Ok(DeltaCheck::Violated(DeltaViolation {
                position: m,
                vertex: o[idx],
                kind: ViolationKind::Budget {
                    missed: miss,
                    budget: budget(m),
                },
            }));
        }
        missed.push(miss);
        budgets.push(budget(m));
    }
    Ok(DeltaCheck::Valid(DeltaCertificate {
        order: order.clone(),
        first_three,
        missed,
        budget: budgets,
    }))
}

/// Exhaustive search for a δ-ordering.
///
/// Seed triples are tried in lexicographic order, then each later position
/// takes the smallest-index vertex that fits its budget. Whether a partial
/// ordering can be completed depends only on the set of vertices already
/// placed, so dead sets are memoised.
pub fn find_delta_ordering(g: &Graph) -> Result<Option<DeltaCertificate>> {
    check_preconditions(g)?;
    let n = g.order();
    if n > SEARCH_LIMIT {
        return Err(Error::Capacity {
            what: "δ-ordering search vertex count",
            got: n,
            limit: SEARCH_LIMIT,
        });
    }
    // non-neighbour masks, 0-based
    let non_adj: Vec<u64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a && !g.adj0(a, b))
                .fold(0u64, |m, b| m | 1 << b)
        })
        .collect();

    struct Search<'a> {
        n: usize,
        non_adj: &'a [u64],
        dead: HashSet<u64>,
        path: Vec<usize>,
    }

    impl Search<'_> {
        fn extend(&mut self, placed: u64) -> bool {
            let len = self.path.len();
            if len == self.n {
                return true;
            }
            if self.dead.contains(&placed) {
                return false;
            }
            let allowance = budget(len + 1);
            for v in 0..self.n {
                if placed >> v & 1 == 1 {
                    continue;
                }
                if (self.non_adj[v] & placed).count_ones() as usize > allowance {
                    continue;
                }
                self.path.push(v);
                if self.extend(placed | 1 << v) {
                    return true;
                }
                self.path.pop();
            }
            self.dead.insert(placed);
            false
        }
    }

    let mut search = Search {
        n,
        non_adj: &non_adj,
        dead: HashSet::new(),
        path: Vec::with_capacity(n),
    };
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let edges = [(a, b), (a, c), (b, c)]
                    .iter()
                    .filter(|&&(x, y)| g.adj0(x, y))
                    .count();
                if edges > 1 {
                    continue;
                }
                search.path.clear();
                search.path.extend([a, b, c]);
                if search.extend(1 << a | 1 << b | 1 << c) {
                    let order = VertexOrdering::new(search.path.iter().map(|v| v + 1).collect())?;
                    return Ok(check_delta_ordering(g, &order)?.certificate());
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaKind {
    Delta,
    CDelta,
    Both,
    Neither,
}

/// Classification of a graph together with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaClass {
    pub kind: DeltaKind,
    /// Certificate on the graph itself.
    pub delta: Option<DeltaCertificate>,
    /// Certificate on the complement.
    pub c_delta: Option<DeltaCertificate>,
}

pub fn classify(g: &Graph) -> Result<DeltaClass> {
    let delta = find_delta_ordering(g)?;
    let c_delta = find_delta_ordering(&g.complement())?;
    let kind = match (&delta, &c_delta) {
        (Some(_), Some(_)) => DeltaKind::Both,
        (Some(_), None) => DeltaKind::Delta,
        (None, Some(_)) => DeltaKind::CDelta,
        (None, None) => DeltaKind::Neither,
    };
    Ok(DeltaClass {
        kind,
        delta,
        c_delta,
    })
}

/// `Δ(Ḡ) + 1`, checked against `|G| - δ(G)`, for a graph carrying a valid
/// certificate.
pub fn delta_bound(g: &Graph, cert: &DeltaCertificate) -> Result<usize> {
    match check_delta_ordering(g, &cert.order)? {
        DeltaCheck::Valid(_) => {}
        DeltaCheck::Violated(v) => {
            return Err(param(format!(
                "certificate does not validate: vertex {} at position {} ({:?})",
                v.vertex, v.position, v.kind
            )))
        }
    }
    let via_complement = g.complement().max_degree() + 1;
    let via_degree = g.order() - g.min_degree();
    assert_eq!(via_complement, via_degree, "degree identity");
    Ok(via_complement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn k3_p4_complement() -> Graph {
        generate(Family::Complete, 3)
            .unwrap()
            .cartesian_product(&generate(Family::Path, 4).unwrap())
            .complement()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v + 1);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn brute_force_has_ordering(g: &Graph) -> bool {
        permutations(g.order()).into_iter().any(|p| {
            matches!(
                check_delta_ordering(g, &VertexOrdering::new(p).unwrap()).unwrap(),
                DeltaCheck::Valid(_)
            )
        })
    }

    #[test]
    fn budgets() {
        assert_eq!(
            (4..=12).map(budget).collect::<Vec<_>>(),
            vec![1, 1, 2, 2, 3, 3, 4, 4, 5]
        );
    }

    #[test]
    fn row_major_order_on_product_complement() {
        let h = k3_p4_complement();
        let check = check_delta_ordering(&h, &VertexOrdering::identity(12)).unwrap();
        let DeltaCheck::Valid(cert) = check else {
            panic!("expected a valid ordering");
        };
        assert_eq!(cert.first_three, SeedPattern::K2PlusK1);
        assert_eq!(cert.missed, vec![1, 1, 2, 2, 2, 2, 3, 3, 3]);
        assert_eq!(delta_bound(&h, &cert).unwrap(), 5);
    }

    #[test]
    fn cycle_six_fails_at_six() {
        let c6 = generate(Family::Cycle, 6).unwrap();
        let check = check_delta_ordering(&c6, &VertexOrdering::identity(6)).unwrap();
        assert_eq!(
            check,
            DeltaCheck::Violated(DeltaViolation {
                position: 3,
                vertex: 3,
                kind: ViolationKind::Seed { edges: 2 }
            })
        );
        // the clockwise labelling fails the budget at m = 6 once the seed is ignored
        let misses_at_6 = (1..6).filter(|&u| !c6.has_edge(u, 6)).count();
        assert_eq!(misses_at_6, 3);
        assert!(misses_at_6 > budget(6));
        assert_eq!(find_delta_ordering(&c6).unwrap(), None);
    }

    #[test]
    fn preconditions() {
        let k4 = generate(Family::Complete, 4).unwrap();
        assert!(matches!(
            check_delta_ordering(&k4, &VertexOrdering::identity(4)),
            Err(Error::Precondition(_))
        ));
        let k3 = generate(Family::Complete, 3).unwrap();
        assert!(matches!(
            find_delta_ordering(&k3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn small_examples() {
        let prism = generate(Family::Prism, 3).unwrap();
        let cert = find_delta_ordering(&prism)
            .unwrap()
            .expect("prism is a δ-graph");
        assert_eq!(delta_bound(&prism, &cert).unwrap(), 3);

        let p4 = generate(Family::Path, 4).unwrap();
        assert!(brute_force_has_ordering(&p4));
        let cert = find_delta_ordering(&p4)
            .unwrap()
            .expect("P4 has an ordering");
        assert_eq!(cert.missed, vec![1]);
        assert_eq!(delta_bound(&p4, &cert).unwrap(), 3);

        let c5 = generate(Family::Cycle, 5).unwrap();
        assert!(!brute_force_has_ordering(&c5));
        assert_eq!(classify(&c5).unwrap().kind, DeltaKind::Neither);
    }

    #[test]
    fn classification_of_cycles() {
        assert_eq!(
            classify(&generate(Family::Cycle, 6).unwrap()).unwrap().kind,
            DeltaKind::CDelta
        );
        assert_eq!(
            classify(&generate(Family::Prism, 3).unwrap()).unwrap().kind,
            DeltaKind::Delta
        );
    }

    #[test]
    fn search_agrees_with_brute_force() {
        // all labelled graphs on 5 vertices meeting the preconditions
        for mask in 0u64..(1 << 10) {
            let g = crate::graph::tests::from_mask(5, mask);
            if check_preconditions(&g).is_err() {
                continue;
            }
            let found = find_delta_ordering(&g).unwrap();
            assert_eq!(found.is_some(), brute_force_has_ordering(&g), "{g:?}");
        }
    }

    #[test]
    fn invalid_certificate_rejected_by_bound() {
        let h = k3_p4_complement();
        let mut cert = find_delta_ordering(&h).unwrap().unwrap();
        cert.order = VertexOrdering::new(vec![1, 3, 6, 2, 4, 5, 7, 8, 9, 10, 11, 12]).unwrap();
        assert!(delta_bound(&h, &cert).is_err());
    }
}
