//! Incremental construction of orthogonal representations.
//!
//! Vertices are placed one at a time along an ordering. For the vertex at
//! rank `m` the unknowns are its `d` coordinates plus one auxiliary unknown
//! per earlier neighbour, standing for the (nonzero) inner product with that
//! neighbour. Each earlier vertex contributes one homogeneous row:
//!
//! * non-neighbour `j`: `<v_j, x> = 0`
//! * neighbour `j`:     `<v_j, x> - g_j = 0`
//!
//! The nullspace of that system is sampled at small integer points until the
//! new vector has every `g_j != 0`, is nonzero, and is not parallel to an
//! earlier vector. When no sample works the earliest vertex that still had
//! freedom is re-chosen and everything after it is rebuilt. If that runs out
//! too, the whole build can be repeated under a fallback sampling policy.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::{Graph, VertexOrdering};
use crate::linalg::{
    dot, gram_matrix, pairwise_independent, parallel, primitive_integer, psd_pivots, rank,
    solve_parametric, Dependence, Rational, RationalMatrix, RationalVector,
};

/// How free variables are filled when sampling the nullspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedVectorPolicy {
    /// Fewest nonzero free variables first, so the first vertex is `e_1`.
    Sparse,
    /// Every free variable nonzero.
    Dense,
    /// Every free variable drawn from the pool by a seeded generator, salted
    /// with the vertex rank so that consecutive vertices do not repeat one
    /// pattern.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Values tried for free variables, in order.
    pub value_pool: Vec<i64>,
    /// Revisions allowed per attempt.
    pub max_backtracks: usize,
    /// Nullspace samples tried per vertex.
    pub max_candidates: usize,
    pub seed_vector_policy: SeedVectorPolicy,
    /// Policy for a second attempt when the first one gives up.
    pub fallback_policy: Option<SeedVectorPolicy>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            value_pool: vec![1, -1, 2, -2, 3, -3],
            max_backtracks: 64,
            max_candidates: 256,
            seed_vector_policy: SeedVectorPolicy::Sparse,
            fallback_policy: Some(SeedVectorPolicy::Generic),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.value_pool.is_empty() {
            return Err(param("value pool is empty"));
        }
        if self.value_pool.contains(&0) {
            return Err(param("value pool must not contain 0"));
        }
        if self.max_candidates == 0 {
            return Err(param("max_candidates must be positive"));
        }
        Ok(())
    }
}

/// Homogenised linear system for one new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub dimension: usize,
    pub aux_count: usize,
    /// `(m - 1) x (d + p)`: one row per earlier vertex.
    pub matrix: RationalMatrix,
    /// `(rank of earlier neighbour, its auxiliary column)`.
    pub aux_map: Vec<(usize, usize)>,
    previous: Vec<RationalVector>,
}

impl ConstraintSystem {
    pub fn previous(&self) -> &[RationalVector] {
        &self.previous
    }
}

pub fn build_constraint_system(
    previous: &[RationalVector],
    adjacency_row: &[bool],
    d: usize,
) -> Result<ConstraintSystem> {
    if previous.len() != adjacency_row.len() {
        return Err(param(format!(
            "{} earlier vectors but {} adjacency flags",
            previous.len(),
            adjacency_row.len()
        )));
    }
    if let Some(v) = previous.iter().find(|v| v.len() != d) {
        return Err(param(format!(
            "earlier vector of dimension {} in a dimension-{d} build",
            v.len()
        )));
    }
    let aux_count = adjacency_row.iter().filter(|&&a| a).count();
    let cols = d + aux_count;
    let mut matrix = RationalMatrix::zeros(previous.len(), cols);
    let mut aux_map = Vec::with_capacity(aux_count);
    for (j, (v, &adjacent)) in previous.iter().zip(adjacency_row).enumerate() {
        for (c, x) in v.iter().enumerate() {
            matrix[(j, c)] = x.clone();
        }
        if adjacent {
            let col = d + aux_map.len();
            matrix[(j, col)] = -Rational::one();
            aux_map.push((j, col));
        }
    }
    Ok(ConstraintSystem {
        dimension: d,
        aux_count,
        matrix,
        aux_map,
        previous: previous.to_vec(),
    })
}

/// Coefficient tuples for the nullspace generators, in the order they are
/// tried.
///
/// Tuples are grouped by the largest pool index they use; within a group by
/// support size, then support (lexicographic), then values. The first
/// nonzero coefficient is always 1, since the system is homogeneous and
/// rescaling a solution changes nothing.
pub fn candidate_coefficients(
    free: usize,
    pool: &[i64],
    policy: SeedVectorPolicy,
    limit: usize,
    salt: u64,
) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if free == 0 {
        return out;
    }
    let sizes: Vec<usize> = match policy {
        SeedVectorPolicy::Sparse => (1..=free).collect(),
        SeedVectorPolicy::Dense => vec![free],
        SeedVectorPolicy::Generic => return generic_coefficients(free, pool, limit, salt),
    };
    for level in 0..pool.len() {
        for &s in &sizes {
            if s == 1 && level > 0 {
                continue;
            }
            for support in combinations(free, s) {
                // tail indices into the pool, max index == level
                let tail_len = s - 1;
                let mut idx = vec![0usize; tail_len];
                loop {
                    if idx.iter().copied().max().unwrap_or(0) == level {
                        let mut coeffs = vec![0i64; free];
                        coeffs[support[0]] = 1;
                        for (k, &pos) in support[1..].iter().enumerate() {
                            coeffs[pos] = pool[idx[k]];
                        }
                        out.push(coeffs);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                    // odometer over [0, level]^tail_len, last digit fastest
                    let mut k = tail_len;
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        if idx[k] < level {
                            idx[k] += 1;
                            idx[k + 1..].iter_mut().for_each(|x| *x = 0);
                            break;
                        }
                        if k == 0 {
                            k = usize::MAX;
                            break;
                        }
                    }
                    if tail_len == 0 || k == usize::MAX {
                        break;
                    }
                }
            }
        }
    }
    out
}

fn generic_coefficients(free: usize, pool: &[i64], limit: usize, salt: u64) -> Vec<Vec<i64>> {
    let distinct = pool.len().saturating_pow(free as u32 - 1).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(salt);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // a miss budget stops the loop once the tuple space is nearly exhausted
    let mut misses = 0;
    while out.len() < limit.min(distinct) && misses < 64 * limit {
        let mut c = vec![1i64; free];
        for x in &mut c[1..] {
            *x = pool[rng.gen_range(0..pool.len())];
        }
        if seen.insert(c.clone()) {
            out.push(c);
        } else {
            misses += 1;
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// An accepted vector for the new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    /// Primitive integer vector.
    pub vector: Vec<BigInt>,
    /// Inner products with the earlier neighbours, in `aux_map` order.
    pub aux_values: Vec<BigInt>,
    /// Index of the accepted sample in [`candidate_coefficients`] order.
    pub candidate: usize,
    /// Dimension of the nullspace the sample was drawn from.
    pub freedom: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Found(ExtensionStep),
    Infeasible,
}

/// Samples the system's nullspace, starting at candidate index `start`.
pub fn extend_vertex(system: &ConstraintSystem, config: &SolverConfig, start: usize) -> Extension {
    let d = system.dimension;
    let ns = solve_parametric(&system.matrix);
    let cols = system.matrix.cols();
    if structurally_infeasible(system, &ns.basis) {
        return Extension::Infeasible;
    }
    let candidates = candidate_coefficients(
        ns.dimension(),
        &config.value_pool,
        config.seed_vector_policy,
        config.max_candidates,
        system.matrix.rows() as u64,
    );
    for (index, coeffs) in candidates.iter().enumerate().skip(start) {
        let coeffs: Vec<Rational> = coeffs
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let w = ns.combine(&coeffs, cols);
        let x = &w[..d];
        if system.aux_map.iter().any(|&(_, col)| w[col].is_zero()) {
            continue;
        }
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        if system.previous.iter().any(|p| parallel(p, x)) {
            continue;
        }
        let vector = primitive_integer(x);
        let as_rat: RationalVector = vector.iter().cloned().map(Rational::from_integer).collect();
        let aux_values = system
            .aux_map
            .iter()
            .map(|&(j, _)| dot(&system.previous[j], &as_rat).to_integer())
            .collect();
        return Extension::Found(ExtensionStep {
            vector,
            aux_values,
            candidate: index,
            freedom: ns.dimension(),
        });
    }
    Extension::Infeasible
}

/// True when no point of the nullspace can be accepted: an auxiliary value
/// vanishes on all of it, or every new vector it yields is zero or parallel
/// to one fixed earlier vector.
fn structurally_infeasible(system: &ConstraintSystem, basis: &[RationalVector]) -> bool {
    let d = system.dimension;
    if system
        .aux_map
        .iter()
        .any(|&(_, col)| basis.iter().all(|b| b[col].is_zero()))
    {
        return true;
    }
    let parts: Vec<RationalVector> = basis
        .iter()
        .map(|b| b[..d].to_vec())
        .filter(|x| !x.iter().all(Zero::is_zero))
        .collect();
    let Some(first) = parts.first() else {
        return true;
    };
    parts.iter().all(|x| parallel(first, x)) && system.previous.iter().any(|p| parallel(p, first))
}

/// Vectors for every vertex of `graph`; `vectors[v - 1]` belongs to vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalRepresentation {
    pub graph: Graph,
    pub order: VertexOrdering,
    pub dimension: usize,
    pub vectors: Vec<Vec<BigInt>>,
}

impl OrthogonalRepresentation {
    pub fn rational_vectors(&self) -> Vec<RationalVector> {
        self.vectors
            .iter()
            .map(|v| v.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    /// `rank` is 1-based.
    Placed {
        rank: usize,
        vertex: usize,
        candidate: usize,
        #[serde(serialize_with = "ser_ints")]
        vector: Vec<BigInt>,
    },
    Infeasible {
        rank: usize,
        vertex: usize,
    },
    /// The vertex at `rank` is re-solved from candidate `next_candidate`.
    Revised {
        rank: usize,
        vertex: usize,
        next_candidate: usize,
    },
    Aborted {
        reason: String,
    },
    /// The build restarts from scratch under another policy.
    PolicySwitched {
        from: SeedVectorPolicy,
        to: SeedVectorPolicy,
    },
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BuildTrace {
    pub events: Vec<TraceEvent>,
    pub backtracks: usize,
}

impl BuildTrace {
    pub fn first_infeasible(&self) -> Option<usize> {
        self.events.iter().find_map(|e| match e {
            TraceEvent::Infeasible { rank, .. } => Some(*rank),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Built {
        representation: OrthogonalRepresentation,
        trace: BuildTrace,
    },
    /// Not a proof that no representation exists.
    Failed { trace: BuildTrace },
}

impl BuildOutcome {
    pub fn representation(&self) -> Option<&OrthogonalRepresentation> {
        match self {
            BuildOutcome::Built { representation, .. } => Some(representation),
            BuildOutcome::Failed { .. } => None,
        }
    }

    pub fn trace(&self) -> &BuildTrace {
        match self {
            BuildOutcome::Built { trace, .. } | BuildOutcome::Failed { trace } => trace,
        }
    }
}

struct Placement {
    vector: RationalVector,
    int_vector: Vec<BigInt>,
    candidate: usize,
    freedom: usize,
}

/// Builds a representation of `h` in dimension `d` along `order`.
pub fn build_representation(
    h: &Graph,
    order: &VertexOrdering,
    d: usize,
    config: &SolverConfig,
) -> Result<BuildOutcome> {
    config.validate()?;
    let n = h.order();
    if order.len() != n {
        return Err(param(format!(
            "ordering has {} vertices, graph has {n}",
            order.len()
        )));
    }
    if d == 0 {
        return Err(param("dimension must be at least 1"));
    }
    let mut trace = BuildTrace::default();
    let mut policies = vec![config.seed_vector_policy];
    policies.extend(
        config
            .fallback_policy
            .filter(|&p| p != config.seed_vector_policy),
    );
    for (k, &policy) in policies.iter().enumerate() {
        if k > 0 {
            trace.events.push(TraceEvent::PolicySwitched {
                from: policies[k - 1],
                to: policy,
            });
        }
        let attempt_config = SolverConfig {
            seed_vector_policy: policy,
            ..config.clone()
        };
        if let Some(vectors) = attempt(h, order, d, &attempt_config, &mut trace)? {
            return Ok(BuildOutcome::Built {
                representation: OrthogonalRepresentation {
                    graph: h.clone(),
                    order: order.clone(),
                    dimension: d,
                    vectors,
                },
                trace,
            });
        }
    }
    Ok(BuildOutcome::Failed { trace })
}

/// One build under `config.seed_vector_policy`; `None` when it gives up.
fn attempt(
    h: &Graph,
    order: &VertexOrdering,
    d: usize,
    config: &SolverConfig,
    trace: &mut BuildTrace,
) -> Result<Option<Vec<Vec<BigInt>>>> {
    let n = h.order();
    let mut backtracks = 0;
    let mut placed: Vec<Placement> = Vec::with_capacity(n);
    let mut cursor = 0;
    while placed.len() < n {
        let k = placed.len();
        let vertex = order.vertex_at(k);
        let previous: Vec<RationalVector> = placed.iter().map(|p| p.vector.clone()).collect();
        let adjacency: Vec<bool> = (0..k)
            .map(|j| h.has_edge(order.vertex_at(j), vertex))
            .collect();
        let system = build_constraint_system(&previous, &adjacency, d)?;
        match extend_vertex(&system, config, cursor) {
            Extension::Found(step) => {
                trace.events.push(TraceEvent::Placed {
                    rank: k + 1,
                    vertex,
                    candidate: step.candidate,
                    vector: step.vector.clone(),
                });
                placed.push(Placement {
                    vector: step
                        .vector
                        .iter()
                        .cloned()
                        .map(Rational::from_integer)
                        .collect(),
                    int_vector: step.vector,
                    candidate: step.candidate,
                    freedom: step.freedom,
                });
                cursor = 0;
            }
            Extension::Infeasible => {
                trace.events.push(TraceEvent::Infeasible {
                    rank: k + 1,
                    vertex,
                });
                if backtracks >= config.max_backtracks {
                    trace.events.push(TraceEvent::Aborted {
                        reason: format!("backtrack limit {} reached", config.max_backtracks),
                    });
                    return Ok(None);
                }
                let Some(target) = placed.iter().position(|p| p.freedom > 1) else {
                    trace.events.push(TraceEvent::Aborted {
                        reason: "no earlier vertex has freedom left".into(),
                    });
                    return Ok(None);
                };
                backtracks += 1;
                trace.backtracks += 1;
                cursor = placed[target].candidate + 1;
                trace.events.push(TraceEvent::Revised {
                    rank: target + 1,
                    vertex: order.vertex_at(target),
                    next_candidate: cursor,
                });
                placed.truncate(target);
            }
        }
    }
    let rank_of = order.rank_of();
    Ok(Some(
        (1..=n)
            .map(|v| placed[rank_of[v - 1]].int_vector.clone())
            .collect(),
    ))
}

/// Mismatch between the Gram pattern and the graph (1-based vertices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternFailure {
    pub i: usize,
    pub j: usize,
    pub expected_adjacent: bool,
    #[serde(serialize_with = "ser_int")]
    pub inner_product: BigInt,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pattern_ok: bool,
    pub pairwise_ok: bool,
    /// 1-based vertices of the first dependence: `(i, i)` for a zero vector.
    pub dependent_pair: Option<(usize, usize)>,
    pub rank: usize,
    pub psd_ok: bool,
    pub positive_pivots: usize,
    pub bound: usize,
    pub failures: Vec<PatternFailure>,
}

impl VerificationReport {
    /// True when the vectors certify `msr(h) <= bound`.
    pub fn certifies(&self) -> bool {
        self.pattern_ok && self.pairwise_ok && self.psd_ok && self.rank <= self.bound
    }
}

/// Recomputes the Gram matrix exactly and checks it against `h`.
pub fn verify_representation(
    h: &Graph,
    rep: &OrthogonalRepresentation,
) -> Result<VerificationReport> {
    let n = h.order();
    if rep.vectors.len() != n {
        return Err(param(format!(
            "{} vectors for a graph on {n} vertices",
            rep.vectors.len()
        )));
    }
    if let Some(v) = rep.vectors.iter().find(|v| v.len() != rep.dimension) {
        return Err(param(format!(
            "vector of length {} in a dimension-{} representation",
            v.len(),
            rep.dimension
        )));
    }
    let vectors = rep.rational_vectors();
    let gram = gram_matrix(&vectors)?;
    let mut failures = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let expected_adjacent = h.has_edge(i + 1, j + 1);
            let x = &gram[(i, j)];
            if expected_adjacent == x.is_zero() {
                failures.push(PatternFailure {
                    i: i + 1,
                    j: j + 1,
                    expected_adjacent,
                    inner_product: x.to_integer(),
                });
            }
        }
    }
    let dependent_pair = match pairwise_independent(&vectors) {
        Ok(()) => None,
        Err(Dependence::Zero(i)) => Some((i + 1, i + 1)),
        Err(Dependence::Parallel(i, j)) => Some((i + 1, j + 1)),
    };
    let psd = psd_pivots(&gram)?;
    let vector_matrix = RationalMatrix::from_rows(vectors, rep.dimension)?;
    Ok(VerificationReport {
        pattern_ok: failures.is_empty(),
        pairwise_ok: dependent_pair.is_none(),
        dependent_pair,
        rank: rank(&vector_matrix),
        psd_ok: psd.is_psd(),
        positive_pivots: psd.positive_pivots(),
        bound: rep.dimension,
        failures,
    })
}

/// Convenience: the certificate-carrying dimension for `h` along `order`.
pub fn solve_and_verify(
    h: &Graph,
    order: &VertexOrdering,
    d: usize,
    config: &SolverConfig,
) -> Result<(BuildOutcome, Option<VerificationReport>)> {
    let outcome = build_representation(h, order, d, config)?;
    let report = match outcome.representation() {
        Some(rep) => Some(verify_representation(h, rep)?),
        None => None,
    };
    if let Some(r) = &report {
        if !r.certifies() {
            return Err(Error::Parameter(format!(
                "internal error: solver output failed verification: {r:?}"
            )));
        }
    }
    Ok((outcome, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{generate, Family};
    use crate::linalg::{int_vector, rat_frac, rref};

    fn prefix(k: usize) -> Vec<RationalVector> {
        fixtures::reference_vectors()[..k]
            .iter()
            .map(|v| int_vector(v))
            .collect()
    }

    fn adjacency_row(h: &Graph, vertex: usize) -> Vec<bool> {
        (1..vertex).map(|j| h.has_edge(j, vertex)).collect()
    }

    #[test]
    fn first_vertex_system_is_empty() {
        let sys = build_constraint_system(&[], &[], 5).unwrap();
        assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (0, 5));
        let Extension::Found(step) = extend_vertex(&sys, &SolverConfig::default(), 0) else {
            panic!("an empty system is feasible");
        };
        assert_eq!(step.vector, [1, 0, 0, 0, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn second_vertex_single_equation() {
        let h = fixtures::k3_p4_complement();
        let sys =
            build_constraint_system(&[int_vector(&[1, 0, 0, 0, 0])], &adjacency_row(&h, 2), 5)
                .unwrap();
        assert_eq!(
            sys.matrix,
            RationalMatrix::from_i64_rows(&[&[1, 0, 0, 0, 0]])
        );
        assert_eq!(solve_parametric(&sys.matrix).dimension(), 4);
    }

    #[test]
    fn fifth_vertex_matrix() {
        let h = fixtures::k3_p4_complement();
        let sys = build_constraint_system(&prefix(4), &adjacency_row(&h, 5), 5).unwrap();
        let expected = RationalMatrix::from_i64_rows(&[
            &[1, 0, 0, 1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, -1, 0, 0],
            &[1, 0, 1, 0, 0, 0, -1, 0],
            &[1, 1, -1, 1, 0, 0, 0, -1],
        ]);
        assert_eq!(sys.matrix, expected);
        assert_eq!(sys.aux_map, vec![(1, 5), (2, 6), (3, 7)]);
    }

    #[test]
    fn sixth_vertex_reduction() {
        let h = fixtures::k3_p4_complement();
        let sys = build_constraint_system(&prefix(5), &adjacency_row(&h, 6), 5).unwrap();
        let r = rref(&sys.matrix);
        assert_eq!(r.pivot_cols, vec![0, 1, 2, 3, 5]);
        let col = |c: usize| (0..5).map(|i| r.rref[(i, c)].clone()).collect::<Vec<_>>();
        assert_eq!(
            col(6),
            vec![
                rat_frac(-3, 7),
                rat_frac(0, 1),
                rat_frac(-4, 7),
                rat_frac(-1, 7),
                rat_frac(-4, 7)
            ]
        );
        assert_eq!(
            col(7),
            vec![
                rat_frac(-2, 7),
                rat_frac(0, 1),
                rat_frac(2, 7),
                rat_frac(-3, 7),
                rat_frac(-5, 7)
            ]
        );
    }

    #[test]
    fn third_vertex_takes_e1_plus_e3() {
        let h = fixtures::k3_p4_complement();
        let prev = vec![int_vector(&[1, 0, 0, 0, 0]), int_vector(&[0, 1, 0, 0, 0])];
        let sys = build_constraint_system(&prev, &adjacency_row(&h, 3), 5).unwrap();
        assert_eq!(
            sys.matrix,
            RationalMatrix::from_i64_rows(&[&[1, 0, 0, 0, 0, -1], &[0, 1, 0, 0, 0, 0]])
        );
        let Extension::Found(step) = extend_vertex(&sys, &SolverConfig::default(), 0) else {
            panic!("feasible");
        };
        assert_eq!(step.vector, [1, 0, 1, 0, 0].map(BigInt::from).to_vec());
        assert_eq!(step.aux_values, vec![BigInt::from(1)]);
    }

    #[test]
    fn fourth_vertex_with_unit_first_vector() {
        // v1 = e1, v2 = e2, v3 = e1 + e3: the fourth system is solvable,
        // e.g. by e1 + e2 - e3
        let h = fixtures::k3_p4_complement();
        let prev = vec![
            int_vector(&[1, 0, 0, 0, 0]),
            int_vector(&[0, 1, 0, 0, 0]),
            int_vector(&[1, 0, 1, 0, 0]),
        ];
        let sys = build_constraint_system(&prev, &adjacency_row(&h, 4), 5).unwrap();
        let Extension::Found(step) = extend_vertex(&sys, &SolverConfig::default(), 0) else {
            panic!("feasible");
        };
        let x: RationalVector = step
            .vector
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        assert!(!dot(&prev[0], &x).is_zero());
        assert!(!dot(&prev[1], &x).is_zero());
        assert!(dot(&prev[2], &x).is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(build_constraint_system(&[int_vector(&[1, 0])], &[true], 3).is_err());
        assert!(build_constraint_system(&[int_vector(&[1, 0])], &[], 2).is_err());
    }

    #[test]
    fn candidate_order() {
        let c = candidate_coefficients(3, &[1, -1], SeedVectorPolicy::Sparse, 100, 0);
        assert_eq!(
            &c[..4],
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(c[6], vec![1, 1, 1]);
        assert!(c.contains(&vec![1, -1, 1]));
        let mut dedup = c.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), c.len());
        let d = candidate_coefficients(2, &[1, -1, 2], SeedVectorPolicy::Dense, 100, 0);
        assert_eq!(d, vec![vec![1, 1], vec![1, -1], vec![1, 2]]);
    }

    #[test]
    fn tiny_builds() {
        let config = SolverConfig::default();
        // P3 complement: vertices 1 and 3 adjacent, 2 isolated
        let h = generate(Family::Path, 3).unwrap().complement();
        let out = build_representation(&h, &VertexOrdering::identity(3), 1, &config).unwrap();
        assert!(out.representation().is_none());

        let k2 = generate(Family::Complete, 2).unwrap();
        let out = build_representation(&k2, &VertexOrdering::identity(2), 1, &config).unwrap();
        assert!(out.representation().is_none());
        let out = build_representation(&k2, &VertexOrdering::identity(2), 2, &config).unwrap();
        let rep = out.representation().expect("K2 in dimension 2");
        assert_eq!(rep.vectors[0], [1, 0].map(BigInt::from).to_vec());
        assert_eq!(rep.vectors[1], [1, 1].map(BigInt::from).to_vec());
        assert!(verify_representation(&k2, rep).unwrap().certifies());
    }

    #[test]
    fn reference_vectors_verify() {
        let h = fixtures::k3_p4_complement();
        let rep = fixtures::reference_representation();
        let report = verify_representation(&h, &rep).unwrap();
        assert!(report.pattern_ok && report.pairwise_ok && report.psd_ok);
        assert_eq!(report.rank, 4);
        assert!(report.certifies());

        let product = h.complement();
        let report = verify_representation(&product, &rep).unwrap();
        assert!(!report.pattern_ok);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn injected_zero_vector() {
        let h = fixtures::k3_p4_complement();
        let mut rep = fixtures::reference_representation();
        rep.vectors[6] = vec![BigInt::zero(); 5];
        let report = verify_representation(&h, &rep).unwrap();
        assert!(!report.pattern_ok && !report.pairwise_ok);
        assert_eq!(report.dependent_pair, Some((7, 7)));
        assert!(report.failures.iter().all(|f| f.i == 7 || f.j == 7));
        assert!(report.failures.iter().all(|f| f.expected_adjacent));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let h = generate(Family::Cycle, 5).unwrap();
        let rep = fixtures::reference_representation();
        assert!(verify_representation(&h, &rep).is_err());
    }

    #[test]
    fn generic_candidates() {
        let a = candidate_coefficients(4, &[1, -1, 2], SeedVectorPolicy::Generic, 20, 3);
        let b = candidate_coefficients(4, &[1, -1, 2], SeedVectorPolicy::Generic, 20, 3);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a.iter().all(|c| c[0] == 1 && c.iter().all(|&x| x != 0)));
        let mut dedup = a.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), a.len());
        assert_ne!(
            a,
            candidate_coefficients(4, &[1, -1, 2], SeedVectorPolicy::Generic, 20, 4)
        );
        // only 3^1 distinct tuples exist for two free variables
        assert_eq!(
            candidate_coefficients(2, &[1, -1, 2], SeedVectorPolicy::Generic, 20, 0).len(),
            3
        );
    }

    #[test]
    fn structural_infeasibility() {
        let e = |v: &[i64]| int_vector(v);
        let config = SolverConfig::default();
        let sys = build_constraint_system(&[e(&[1, 0]), e(&[0, 1])], &[false, false], 2).unwrap();
        assert_eq!(extend_vertex(&sys, &config, 0), Extension::Infeasible);
        let sys = build_constraint_system(&[e(&[1, 0]), e(&[0, 1])], &[false, true], 2).unwrap();
        assert_eq!(extend_vertex(&sys, &config, 0), Extension::Infeasible);
        let sys = build_constraint_system(&[e(&[1, 0])], &[false], 2).unwrap();
        assert!(matches!(
            extend_vertex(&sys, &config, 0),
            Extension::Found(_)
        ));
    }

    #[test]
    fn fallback_policy_rescues_sparse_failures() {
        let g = crate::graph6::decode(r"EC\w").unwrap();
        let cert = crate::delta::find_delta_ordering(&g).unwrap().unwrap();
        let d = g.order() - g.min_degree();
        let sparse_only = SolverConfig {
            fallback_policy: None,
            ..SolverConfig::default()
        };
        let out = build_representation(&g, &cert.order, d, &sparse_only).unwrap();
        assert!(out.representation().is_none());
        assert!(matches!(
            out.trace().events.last(),
            Some(TraceEvent::Aborted { .. })
        ));

        let out = build_representation(&g, &cert.order, d, &SolverConfig::default()).unwrap();
        let rep = out.representation().expect("fallback succeeds");
        assert!(verify_representation(&g, rep).unwrap().certifies());
        assert!(out.trace().events.iter().any(|e| matches!(
            e,
            TraceEvent::PolicySwitched {
                from: SeedVectorPolicy::Sparse,
                to: SeedVectorPolicy::Generic
            }
        )));
    }

    #[test]
    fn worked_example_is_deterministic() {
        let h = fixtures::k3_p4_complement();
        let order = fixtures::paper_rowmajor();
        let config = SolverConfig::default();
        let a = build_representation(&h, &order, 5, &config).unwrap();
        let b = build_representation(&h, &order, 5, &config).unwrap();
        assert_eq!(a, b);
        let rep = a.representation().unwrap();
        let report = verify_representation(&h, rep).unwrap();
        assert!(report.certifies());
        for v in &rep.vectors {
            let g = v
                .iter()
                .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
            assert!(g.is_one());
        }
    }

    #[test]
    fn config_validation() {
        let bad = |f: fn(&mut SolverConfig)| {
            let mut c = SolverConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.value_pool.clear()));
        assert!(bad(|c| c.value_pool.push(0)));
        assert!(bad(|c| c.max_candidates = 0));
        let h = generate(Family::Cycle, 4).unwrap();
        assert!(build_representation(
            &h,
            &VertexOrdering::identity(4),
            0,
            &SolverConfig::default()
        )
        .is_err());
        assert!(build_representation(
            &h,
            &VertexOrdering::identity(3),
            2,
            &SolverConfig::default()
        )
        .is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn accepted_extensions_resubstitute(
                d in 2usize..5,
                prev in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..5),
                adj_bits in proptest::collection::vec(any::<bool>(), 5),
                dense in any::<bool>(),
            ) {
                let previous: Vec<RationalVector> = prev.iter().map(|v| int_vector(&v[..d])).collect();
                let adjacency = &adj_bits[..previous.len()];
                let sys = build_constraint_system(&previous, adjacency, d).unwrap();
                let config = SolverConfig {
                    seed_vector_policy: if dense { SeedVectorPolicy::Generic } else { SeedVectorPolicy::Sparse },
                    ..SolverConfig::default()
                };
                if let Extension::Found(step) = extend_vertex(&sys, &config, 0) {
                    let x: RationalVector = step.vector.iter().cloned().map(Rational::from_integer).collect();
                    prop_assert!(!x.iter().all(Zero::is_zero));
                    let mut aux = step.aux_values.iter();
                    for (p, &a) in previous.iter().zip(adjacency) {
                        let ip = dot(p, &x);
                        if a {
                            prop_assert!(!ip.is_zero());
                            prop_assert_eq!(ip.to_integer(), aux.next().unwrap().clone());
                        } else {
                            prop_assert!(ip.is_zero());
                        }
                        prop_assert!(!parallel(p, &x));
                    }
                    // the system itself is satisfied by (x, aux)
                    let mut w = x.clone();
                    w.extend(step.aux_values.iter().cloned().map(Rational::from_integer));
                    prop_assert!(sys.matrix.mul_vec(&w).unwrap().iter().all(Zero::is_zero));
                }
            }

            #[test]
            fn verification_is_scale_invariant(idx in 0usize..12, k in prop_oneof![-50i64..=-1, 1i64..=50]) {
                let h = fixtures::k3_p4_complement();
                let rep = fixtures::reference_representation();
                let base = verify_representation(&h, &rep).unwrap();
                let mut scaled = rep.clone();
                scaled.vectors[idx] = scaled.vectors[idx].iter().map(|x| x * k).collect();
                let r = verify_representation(&h, &scaled).unwrap();
                prop_assert_eq!(
                    (r.pattern_ok, r.pairwise_ok, r.rank, r.psd_ok),
                    (base.pattern_ok, base.pairwise_ok, base.rank, base.psd_ok)
                );
            }
        }
    }
}
