//! Exhaustive check of the bound on all small graphs where the graph and its
//! complement are both connected.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::delta::{classify, delta_bound, DeltaKind};
use crate::enumerate::connected_coconnected;
use crate::error::{param, Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::oracles::{msr_known, ConjectureStatus};
use crate::repjson;
use crate::solver::{build_representation, verify_representation, SolverConfig};

pub const SWEEP_MIN_N: usize = 4;
pub const SWEEP_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Success,
    /// The build gave up. Says nothing about existence.
    Failed,
    /// Built, but the vectors or their JSON round trip did not certify.
    VerificationFailed,
    /// No δ-ordering on the graph itself.
    NotAttempted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub graph6: String,
    pub n: usize,
    pub min_degree: usize,
    /// `n - δ`.
    pub bound: usize,
    pub delta_class: DeltaKind,
    pub solver_status: SolverStatus,
    pub dimension_used: Option<usize>,
    pub backtracks: Option<usize>,
    pub msr_known: Option<usize>,
    pub status: ConjectureStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub verified_exact: usize,
    pub verified_constructive: usize,
    pub inconclusive: usize,
    pub refuted: usize,
    /// Graphs with a δ-ordering whose build did not certify.
    pub solver_failures: usize,
}

impl SweepSummary {
    pub fn from_records(records: &[SweepRecord]) -> Self {
        let mut s = SweepSummary {
            graphs: records.len(),
            ..Default::default()
        };
        for r in records {
            match r.status {
                ConjectureStatus::VerifiedExact => s.verified_exact += 1,
                ConjectureStatus::VerifiedConstructive => s.verified_constructive += 1,
                ConjectureStatus::Inconclusive => s.inconclusive += 1,
                ConjectureStatus::Refuted => s.refuted += 1,
            }
            if matches!(
                r.solver_status,
                SolverStatus::Failed | SolverStatus::VerificationFailed
            ) {
                s.solver_failures += 1;
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepOptions {
    pub max_n: usize,
    pub min_n: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub timing: bool,
}

impl SweepOptions {
    pub fn new(max_n: usize) -> Self {
        SweepOptions {
            max_n,
            min_n: SWEEP_MIN_N,
            jobs: 1,
            timing: false,
        }
    }
}

/// Classifies `g`, builds in dimension `n - δ` when it has a δ-ordering,
/// and re-verifies the result after a JSON round trip.
pub fn sweep_graph(g: &Graph, config: &SolverConfig, timing: bool) -> Result<SweepRecord> {
    let start = Instant::now();
    let n = g.order();
    let bound = n - g.min_degree();
    let class = classify(g)?;
    let known = msr_known(g)?.value;
    let mut solver_status = SolverStatus::NotAttempted;
    let mut dimension_used = None;
    let mut backtracks = None;
    if let Some(cert) = &class.delta {
        let d = delta_bound(g, cert)?;
        let outcome = build_representation(g, &cert.order, d, config)?;
        backtracks = Some(outcome.trace().backtracks);
        solver_status = match outcome.representation() {
            None => SolverStatus::Failed,
            Some(rep) => {
                let direct = verify_representation(g, rep)?.certifies();
                let parsed = repjson::from_json(&repjson::to_json(rep)?)?;
                let again = verify_representation(&parsed.graph, &parsed)?.certifies()
                    && parsed.graph == *g;
                if direct && again {
                    dimension_used = Some(d);
                    SolverStatus::Success
                } else {
                    SolverStatus::VerificationFailed
                }
            }
        };
    }
    let status = match (known, dimension_used) {
        (Some(v), _) if v <= bound => ConjectureStatus::VerifiedExact,
        (Some(_), _) => ConjectureStatus::Refuted,
        (None, Some(_)) => ConjectureStatus::VerifiedConstructive,
        (None, None) => ConjectureStatus::Inconclusive,
    };
    Ok(SweepRecord {
        graph6: graph6::encode(g)?,
        n,
        min_degree: g.min_degree(),
        bound,
        delta_class: class.kind,
        solver_status,
        dimension_used,
        backtracks,
        msr_known: known,
        status,
        runtime_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Records in a fixed order: by `n`, then by canonical form.
pub fn sweep(options: &SweepOptions, config: &SolverConfig) -> Result<Vec<SweepRecord>> {
    if options.max_n > SWEEP_MAX_N {
        return Err(Error::Capacity {
            what: "sweep order",
            got: options.max_n,
            limit: SWEEP_MAX_N,
        });
    }
    if options.min_n < SWEEP_MIN_N || options.min_n > options.max_n {
        return Err(param(format!(
            "sweep range {}..={} must lie within {SWEEP_MIN_N}..={SWEEP_MAX_N}",
            options.min_n, options.max_n
        )));
    }
    let mut graphs = Vec::new();
    for n in options.min_n..=options.max_n {
        graphs.extend(connected_coconnected(n)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| param(format!("worker pool: {e}")))?;
    pool.install(|| {
        graphs
            .par_iter()
            .map(|g| sweep_graph(g, config, options.timing))
            .collect()
    })
}
