//! Orthogonal representations of graphs, built vertex by vertex over exact
//! rationals and certified by an exact Gram matrix check.
//!
//! A representation of `G` in `R^d` assigns each vertex a nonzero vector so
//! that two distinct vertices are adjacent exactly when their vectors are
//! not orthogonal. Its existence shows `msr(G) <= d`. For δ-graphs the
//! construction targets `d = |G| - δ(G)`.
//!
//! ```
//! use orthorep::{fixtures, build_representation, verify_representation, SolverConfig};
//!
//! let h = fixtures::k3_p4_complement();
//! let out = build_representation(&h, &fixtures::paper_rowmajor(), 5, &SolverConfig::default())
//!     .unwrap();
//! let rep = out.representation().expect("built");
//! assert!(verify_representation(&h, rep).unwrap().certifies());
//! ```

pub mod delta;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod graph6;
pub mod layout;
pub mod linalg;
pub mod oracles;
pub mod repjson;
pub mod solver;
pub mod sweep;

pub use delta::{
    check_delta_ordering, classify, delta_bound, find_delta_ordering, DeltaCertificate, DeltaCheck,
    DeltaClass, DeltaKind,
};
pub use error::{Error, Result};
pub use graph::{generate, Family, Graph, GraphStats, VertexOrdering};
pub use layout::{circular_layout, emit_dot, emit_svg, CircularLayout};
pub use linalg::{Rational, RationalMatrix, RationalVector};
pub use oracles::{
    check_delta_conjecture, msr_known, ConjectureRecord, ConjectureStatus, MsrVerdict,
};
pub use solver::{
    build_representation, verify_representation, BuildOutcome, BuildTrace,
    OrthogonalRepresentation, SeedVectorPolicy, SolverConfig, TraceEvent, VerificationReport,
};
pub use sweep::{SweepOptions, SweepRecord, SweepSummary};
