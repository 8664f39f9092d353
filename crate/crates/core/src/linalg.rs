//! Small dense complex matrices and an exact Hermitian eigensolver.
//!
//! Sizes here never exceed 8×8, so everything is row-major `Vec<C64>` with
//! straightforward loops. The eigensolver uses the closed form for 2×2 and
//! cyclic complex Jacobi for anything larger.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul};

use crate::{Error, Result, C64};

/// Tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by `max(1, ‖A‖_F)`).
pub const JACOBI_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 64;
const MAX_EIGH_DIM: usize = 8;

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged or not square.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix rows must form a square");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix rows must form a square");
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim, rhs.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                if s == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `v† M v`.
    pub fn quadratic_form(&self, v: &[C64]) -> C64 {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Principal submatrix on the given basis indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let mut out = Self::zeros(n);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A [`CMatrix`] known to equal its conjugate transpose within
/// [`HERMITIAN_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let deviation = m.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self(m))
    }

    /// For matrices that are Hermitian by construction.
    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        debug_assert!(m.is_hermitian(HERMITIAN_TOL));
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn eigh(&self) -> Result<Eigen> {
        eigh(&self.0)
    }

    pub fn spectrum(&self) -> Result<Vec<f64>> {
        exact_spectrum(&self.0)
    }
}

impl core::ops::Deref for HermitianMatrix {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

/// Eigen-decomposition `M = V Λ V†` with ascending eigenvalues; column `k` of
/// `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `‖M − V Λ V†‖_max`.
    pub fn reconstruction_residual(&self, m: &CMatrix) -> f64 {
        let n = m.dim;
        let mut lambda = CMatrix::zeros(n);
        for (k, &v) in self.values.iter().enumerate() {
            lambda[(k, k)] = C64::new(v, 0.0);
        }
        let rebuilt = &(&self.vectors * &lambda) * &self.vectors.adjoint();
        rebuilt.max_abs_diff(m)
    }

    /// `max_k ‖M v_k − λ_k v_k‖_∞`.
    pub fn pair_residual(&self, m: &CMatrix) -> f64 {
        (0..self.values.len())
            .map(|k| {
                let v = self.vector(k);
                m.mul_vec(&v)
                    .iter()
                    .zip(&v)
                    .map(|(mv, x)| (mv - x * self.values[k]).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// Ascending eigenvalues of a Hermitian matrix of dimension 1..=8.
pub fn exact_spectrum(m: &CMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|e| e.values)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix of dimension 1..=8.
pub fn eigh(m: &CMatrix) -> Result<Eigen> {
    let n = m.dim;
    if n == 0 || n > MAX_EIGH_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(match n {
        1 => Eigen {
            values: vec![m[(0, 0)].re],
            vectors: CMatrix::identity(1),
        },
        2 => eigh_2x2(m),
        _ => jacobi(m),
    })
}

/// Closed-form eigenvalues of `[[d1, c], [c̄, d2]]`, ascending:
/// `(d1+d2)/2 ∓ sqrt(((d1−d2)/2)² + |c|²)`.
pub fn eigenvalues_2x2(d1: f64, d2: f64, c: C64) -> [f64; 2] {
    let mean = 0.5 * (d1 + d2);
    let radius = libm::hypot(0.5 * (d1 - d2), c.norm());
    [mean - radius, mean + radius]
}

fn eigh_2x2(m: &CMatrix) -> Eigen {
    let (d1, d2, c) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    let values = eigenvalues_2x2(d1, d2, c);
    let mut vectors = CMatrix::zeros(2);
    if c.norm() == 0.0 {
        // Already diagonal; order basis vectors by their diagonal entry.
        let (lo, hi) = if d1 <= d2 { (0, 1) } else { (1, 0) };
        vectors[(lo, 0)] = C64::new(1.0, 0.0);
        vectors[(hi, 1)] = C64::new(1.0, 0.0);
    } else {
        for (k, &lambda) in values.iter().enumerate() {
            // Both (c, λ−d1) and (λ−d2, c̄) solve the eigen-equation; take the
            // better conditioned one.
            let u = [c, C64::new(lambda - d1, 0.0)];
            let w = [C64::new(lambda - d2, 0.0), c.conj()];
            let norm = |v: &[C64; 2]| libm::sqrt(v[0].norm_sqr() + v[1].norm_sqr());
            let v = if norm(&u) >= norm(&w) { u } else { w };
            let len = norm(&v);
            vectors[(0, k)] = v[0] / len;
            vectors[(1, k)] = v[1] / len;
        }
    }
    Eigen {
        values: values.to_vec(),
        vectors,
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(sum)
}

/// Cyclic complex Jacobi. Each pivot first rotates the phase of `a_pq` away,
/// then applies the real symmetric Jacobi rotation that zeroes it.
fn jacobi(m: &CMatrix) -> Eigen {
    let n = m.dim;
    let mut a = m.clone();
    // Symmetrize so the diagonal is exactly real.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let threshold = JACOBI_TOL * m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s·φ̄, c·φ̄]] with φ = phase.
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // A ← A U
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                // V ← V U
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, k)] = v[(row, i)];
        }
    }
    Eigen { values, vectors }
}
