//! Dense exact linear algebra over arbitrary-precision rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{param, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_vector(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales `v` to the primitive integer vector on the same ray: denominators
/// cleared, then divided by the gcd of the entries. The zero vector maps to
/// itself.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` fixes the width
    /// when there are no rows.
    pub fn from_rows(rows: Vec<RationalVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(param(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let r = rows.len();
        Ok(RationalMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| int_vector(r)).collect(), cols)
            .expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<RationalVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(param(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * &other[(k, c)];
                    out[(r, c)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(param(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Reduced row echelon form with its pivot structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: RationalMatrix,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination. Columns are scanned left to right and the
/// pivot row is the topmost remaining row with a nonzero entry, so the
/// output is fully determined by the input.
pub fn rref(m: &RationalMatrix) -> RrefResult {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut free_cols = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            free_cols.push(c);
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for k in c..a.cols {
            a[(r, k)] *= &inv;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for k in c..a.cols {
                let delta = &f * &a[(r, k)];
                a[(i, k)] -= delta;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    RrefResult {
        rank: pivot_cols.len(),
        rref: a,
        pivot_cols,
        free_cols,
    }
}

/// Basis of `{w : M w = 0}`, one generator per free column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullspace {
    pub free_cols: Vec<usize>,
    /// `basis[k]` has a 1 in `free_cols[k]` and 0 in every other free column.
    pub basis: Vec<RationalVector>,
}

impl Nullspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `sum_k coeffs[k] * basis[k]`.
    pub fn combine(&self, coeffs: &[Rational], len: usize) -> RationalVector {
        let mut w = vec![Rational::zero(); len];
        for (b, t) in self.basis.iter().zip(coeffs) {
            if t.is_zero() {
                continue;
            }
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += t * bi;
            }
        }
        w
    }
}

pub fn solve_parametric(m: &RationalMatrix) -> Nullspace {
    let red = rref(m);
    let basis = red
        .free_cols
        .iter()
        .map(|&f| {
            let mut w = vec![Rational::zero(); m.cols()];
            w[f] = Rational::one();
            for (row, &pc) in red.pivot_cols.iter().enumerate() {
                w[pc] = -red.rref[(row, f)].clone();
            }
            w
        })
        .collect();
    Nullspace {
        free_cols: red.free_cols,
        basis,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).rank
}

/// Pairwise inner products `G[i][j] = <v_i, v_j>`.
pub fn gram_matrix(vectors: &[RationalVector]) -> Result<RationalMatrix> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(param("gram matrix of vectors with mixed dimensions"));
    }
    let n = vectors.len();
    let mut g = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = dot(&vectors[i], &vectors[j]);
            g[(j, i)] = x.clone();
            g[(i, j)] = x;
        }
    }
    Ok(g)
}

/// Outcome of the exact semidefiniteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    /// `M = T^{-T} D T^{-1}` with `D = diag(pivots)`, all pivots `>= 0`.
    /// `order[k]` is the row eliminated at step `k`; zero pivots come last.
    Psd {
        pivots: Vec<Rational>,
        order: Vec<usize>,
    },
    /// `witness^T M witness = value < 0`.
    NotPsd {
        witness: RationalVector,
        value: Rational,
    },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd { .. })
    }

    pub fn positive_pivots(&self) -> usize {
        match self {
            PsdOutcome::Psd { pivots, .. } => pivots.iter().filter(|p| p.is_positive()).count(),
            PsdOutcome::NotPsd { .. } => 0,
        }
    }
}

fn quadratic_form(m: &RationalMatrix, x: &[Rational]) -> Rational {
    dot(x, &m.mul_vec(x).expect("square matrix"))
}

/// Smallest witness among `e_i` and `e_i - sign(m_ij) e_j`, if any is negative.
fn short_witness(m: &RationalMatrix) -> Option<(RationalVector, Rational)> {
    let n = m.rows();
    let unit = |i: usize| {
        let mut x = vec![Rational::zero(); n];
        x[i] = Rational::one();
        x
    };
    for i in 0..n {
        if m[(i, i)].is_negative() {
            return Some((unit(i), m[(i, i)].clone()));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)].is_zero() {
                continue;
            }
            let mut x = unit(i);
            x[j] = if m[(i, j)].is_positive() {
                -Rational::one()
            } else {
                Rational::one()
            };
            let value = quadratic_form(m, &x);
            if value.is_negative() {
                return Some((x, value));
            }
        }
    }
    None
}

/// Exact symmetric elimination (LDL^T with diagonal pivoting).
///
/// Each step eliminates the first remaining index with a positive diagonal
/// entry by a congruence, tracking the accumulated transform `T` so that the
/// working matrix always equals `T^T M T`. A negative diagonal or a nonzero
/// entry in an all-zero-diagonal remainder yields a refuting vector in the
/// original coordinates.
pub fn psd_pivots(m: &RationalMatrix) -> Result<PsdOutcome> {
    if !m.is_symmetric() {
        return Err(param("psd_pivots needs a symmetric matrix"));
    }
    let n = m.rows();
    let mut w = m.clone();
    let mut t = RationalMatrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    let refute = |x: RationalVector| -> PsdOutcome {
        if let Some((witness, value)) = short_witness(m) {
            return PsdOutcome::NotPsd { witness, value };
        }
        let value = quadratic_form(m, &x);
        debug_assert!(value.is_negative());
        PsdOutcome::NotPsd { witness: x, value }
    };
    let column = |t: &RationalMatrix, c: usize| -> RationalVector {
        (0..n).map(|r| t[(r, c)].clone()).collect()
    };

    loop {
        if let Some(&q) = remaining.iter().find(|&&q| w[(q, q)].is_negative()) {
            return Ok(refute(column(&t, q)));
        }
        let Some(pos) = remaining.iter().position(|&q| w[(q, q)].is_positive()) else {
            break;
        };
        let p = remaining.remove(pos);
        let d = w[(p, p)].clone();
        for &j in &remaining {
            if w[(p, j)].is_zero() {
                continue;
            }
            let f = &w[(p, j)] / &d;
            // column j -= f * column p, then row j -= f * row p
            for r in 0..n {
                let delta = &f * &w[(r, p)];
                w[(r, j)] -= delta;
            }
            for c in 0..n {
                let delta = &f * &w[(p, c)];
                w[(j, c)] -= delta;
            }
            for r in 0..n {
                let delta = &f * &t[(r, p)];
                t[(r, j)] -= delta;
            }
        }
        pivots.push(d);
        order.push(p);
    }

    // every remaining diagonal entry is zero; any off-diagonal entry refutes
    for (a, &q) in remaining.iter().enumerate() {
        for &r in &remaining[a + 1..] {
            if !w[(q, r)].is_zero() {
                let sign = if w[(q, r)].is_positive() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let x: RationalVector = column(&t, q)
                    .into_iter()
                    .zip(column(&t, r))
                    .map(|(a, b)| a + &sign * b)
                    .collect();
                return Ok(refute(x));
            }
        }
    }
    for q in remaining {
        pivots.push(Rational::zero());
        order.push(q);
    }
    Ok(PsdOutcome::Psd { pivots, order })
}

/// Why a vector family fails pairwise independence (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dependence {
    Zero(usize),
    Parallel(usize, usize),
}

/// True iff `a` and `b` are proportional (cross-multiplication test).
pub fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| ((i + 1)..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// `Ok` iff no vector is zero and no two are rational multiples of each other.
pub fn pairwise_independent(vectors: &[RationalVector]) -> std::result::Result<(), Dependence> {
    if let Some(i) = vectors.iter().position(|v| v.iter().all(Zero::is_zero)) {
        return Err(Dependence::Zero(i));
    }
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            if parallel(&vectors[i], &vectors[j]) {
                return Err(Dependence::Parallel(i, j));
            }
        }
    }
    Ok(())
}

/// Converts to `f64` for diagnostics only.
pub fn to_f64_matrix(m: &RationalMatrix) -> nalgebra::DMatrix<f64> {
    use num_traits::ToPrimitive;
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        m[(r, c)].to_f64().unwrap_or(f64::NAN)
    })
}

/// Floating-point eigenvalues of a symmetric matrix, descending.
pub fn float_eigenvalues(m: &RationalMatrix) -> Result<Vec<f64>> {
    if !m.is_symmetric() {
        return Err(param("eigenvalues requested for a non-symmetric matrix"));
    }
    let eig = nalgebra::SymmetricEigen::new(to_f64_matrix(m));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_its_own_rref() {
        let id = RationalMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.rref, id);
        assert_eq!(r.rank, 3);
        assert!(r.free_cols.is_empty());
    }

    #[test]
    fn zero_matrix() {
        let z = RationalMatrix::zeros(2, 3);
        assert_eq!(rank(&z), 0);
        assert_eq!(solve_parametric(&z).dimension(), 3);
    }

    #[test]
    fn single_equation_nullspace() {
        // k_1 = 0 over five unknowns
        let m = RationalMatrix::from_i64_rows(&[&[1, 0, 0, 0, 0]]);
        let ns = solve_parametric(&m);
        assert_eq!(ns.dimension(), 4);
        assert_eq!(ns.free_cols, vec![1, 2, 3, 4]);
    }

    #[test]
    fn rref_with_fractions() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 4, 1], &[1, 3, 0]]);
        let r = rref(&m);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.rref[(0, 2)], rat_frac(3, 2));
        assert_eq!(r.rref[(1, 2)], rat_frac(-1, 2));
    }

    #[test]
    fn gram_examples() {
        let basis: Vec<_> = (0..4)
            .map(|i| {
                let mut v = vec![0i64; 4];
                v[i] = 1;
                int_vector(&v)
            })
            .collect();
        assert_eq!(gram_matrix(&basis).unwrap(), RationalMatrix::identity(4));
        let g = gram_matrix(&[int_vector(&[3, 4])]).unwrap();
        assert_eq!(g, RationalMatrix::from_i64_rows(&[&[25]]));
        assert!(gram_matrix(&[int_vector(&[1]), int_vector(&[1, 2])]).is_err());
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]]);
        match psd_pivots(&m).unwrap() {
            PsdOutcome::NotPsd { witness, value } => {
                assert_eq!(witness, int_vector(&[1, -1]));
                assert_eq!(value, rat(-2));
            }
            other => panic!("expected a refutation, got {other:?}"),
        }
    }

    #[test]
    fn psd_edge_cases() {
        assert!(psd_pivots(&RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 1]])).is_err());
        let zero = RationalMatrix::zeros(3, 3);
        let out = psd_pivots(&zero).unwrap();
        assert!(out.is_psd());
        assert_eq!(out.positive_pivots(), 0);
        // zero diagonal with a nonzero off-diagonal entry
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(!psd_pivots(&m).unwrap().is_psd());
        // refutation only visible after elimination
        let m = RationalMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 2, 0], &[1, 0, 1]]);
        match psd_pivots(&m).unwrap() {
            PsdOutcome::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(quadratic_form(&m, &witness), value);
            }
            other => panic!("expected a refutation, got {other:?}"),
        }
    }

    #[test]
    fn pairwise() {
        assert_eq!(
            pairwise_independent(&[int_vector(&[1, 0]), int_vector(&[2, 0])]),
            Err(Dependence::Parallel(0, 1))
        );
        assert_eq!(pairwise_independent(&[int_vector(&[1, 1])]), Ok(()));
        assert_eq!(
            pairwise_independent(&[int_vector(&[1, 1]), int_vector(&[0, 0])]),
            Err(Dependence::Zero(1))
        );
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat_frac(3, 7), rat_frac(-6, 7), rat(0)];
        let p = primitive_integer(&v);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
    }
}
