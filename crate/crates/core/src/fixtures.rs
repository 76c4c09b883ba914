//! The worked example: the complement of K3 x P4 in dimension 5, with the
//! published vectors and Gram matrix.

use num_bigint::BigInt;

use crate::graph::{generate, Family, Graph, VertexOrdering};
use crate::linalg::RationalMatrix;
use crate::solver::OrthogonalRepresentation;

pub const REFERENCE_DIMENSION: usize = 5;

const VECTORS: [[i64; 5]; 12] = [
    [1, 0, 0, 1, 0],
    [0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0],
    [1, 1, -1, 1, 0],
    [-2, 2, 1, 2, 0],
    [5, 0, 2, 4, 0],
    [8, 4, -8, -6, 0],
    [13, 56, 53, -16, 0],
    [60, 250, -260, -60, 0],
    [46, 0, 27, -71, 0],
    [-142, 511, 142, -38, 0],
    [4275, 2288, -7803, -14366, 0],
];

const GRAM: [[i64; 12]; 12] = [
    [2, 0, 1, 2, 0, 9, 2, -3, 0, -25, -180, -10091],
    [0, 1, 0, 1, 2, 0, 4, 56, 250, 0, 511, 2288],
    [1, 0, 2, 0, -1, 7, 0, 66, -200, 73, 0, -3528],
    [2, 1, 0, 4, 1, 7, 14, 0, 510, -52, 189, 0],
    [0, 2, -1, 1, 13, 0, -28, 107, 0, -207, 1372, -40509],
    [9, 0, 7, 7, 0, 45, 0, 107, -460, 0, -578, -51695],
    [2, 4, 0, 14, -28, 0, 180, 0, 3920, 578, 0, 191972],
    [-3, 56, 66, 0, 107, 107, 0, 6370, 1960, 3165, 34904, 0],
    [
        0, 250, -200, 510, 0, -460, 3920, 1960, 137300, 0, 84590, 3719240,
    ],
    [-25, 0, 73, -52, -207, 0, 578, 3165, 0, 7886, 0, 1005955],
    [-180, 511, 0, 189, 1372, -578, 0, 34904, 84590, 0, 302893, 0],
    [
        -10091, 2288, -3528, 0, -40509, -51695, 191972, 0, 3719240, 1005955, 0, 290779334,
    ],
];

/// Positive eigenvalues as published, rounded to five significant digits.
pub const REFERENCE_EIGENVALUES: [f64; 4] = [2.9083e8, 3.3586e5, 6.4461e4, 3.1671e3];

pub fn k3_p4() -> Graph {
    let k3 = generate(Family::Complete, 3).expect("K3");
    let p4 = generate(Family::Path, 4).expect("P4");
    k3.cartesian_product(&p4)
}

/// The graph the worked example actually represents.
pub fn k3_p4_complement() -> Graph {
    k3_p4().complement()
}

/// Row-major order of the product: (1,1), (1,2), ..., (3,4).
pub fn paper_rowmajor() -> VertexOrdering {
    VertexOrdering::identity(12)
}

pub fn reference_vectors() -> Vec<Vec<i64>> {
    VECTORS.iter().map(|v| v.to_vec()).collect()
}

pub fn reference_representation() -> OrthogonalRepresentation {
    OrthogonalRepresentation {
        graph: k3_p4_complement(),
        order: paper_rowmajor(),
        dimension: REFERENCE_DIMENSION,
        vectors: VECTORS
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    }
}

pub fn reference_gram() -> RationalMatrix {
    let rows: Vec<&[i64]> = GRAM.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_i64_rows(&rows)
}
