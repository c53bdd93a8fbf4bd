//! Dense complex-matrix kernel.
//!
//! Everything here targets desk-scale dimensions (d ≤ ~32): a row-major
//! [`ComplexMatrix`], Hermitian eigendecomposition by cyclic complex Jacobi
//! rotations, projection of near-density inputs onto the density-matrix body,
//! and column-orthonormal [`Isometry`] values with a QR-style retraction used
//! by the ensemble optimizer.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Hermitian-symmetry tolerance used by [`eigh`] and [`DensityMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues below this are treated as zero rank.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |H - H^dag| = {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("bad shape: {context} (got {rows}x{cols})")]
    BadShape {
        context: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("clipped matrix trace {trace:.3e} is below 1e-12, cannot normalize")]
    ZeroTrace { trace: f64 },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("eigenvalue {value:.3e} below -1e-10: not positive semi-definite")]
    NotPsd { value: f64 },
    #[error("trace deviates from one by {deviation:.3e}")]
    NotTraceOne { deviation: f64 },
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, LinalgError> {
        if rows * cols != data.len() {
            return Err(LinalgError::BadShape {
                context: "entry count does not match rows*cols",
                rows,
                cols,
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<C64>()
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// In-place `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs deviation from Hermitian symmetry, `max |H - H^dag|`.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Hermitian part `(H + H^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// Rank-one projector `v v^dag` of a (unit) vector.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }
}

/// Result of [`eigh`]: ascending eigenvalues with orthonormal eigenvectors
/// as columns (`V diag(l) V^dag` reconstructs the input).
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(l) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.eigenvalues.len();
        ComplexMatrix::from_fn(d, d, |i, j| {
            (0..d)
                .map(|k| {
                    self.eigenvectors.get(i, k)
                        * self.eigenvectors.get(j, k).conj()
                        * self.eigenvalues[k]
                })
                .sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Rotations zero one off-diagonal pair at a time; sweeps repeat until the
/// off-diagonal Frobenius norm falls below `1e-12 * (1 + |H|_F)`, with a hard
/// cap of `100 * d^2` sweeps. Eigenvalues come back ascending; each
/// eigenvector is normalized so its first component of modulus above 1e-6 is
/// real and positive.
pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::BadShape {
            context: "eigh needs a square matrix",
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian {
            deviation: dev,
            tol: HERMITIAN_TOL,
        });
    }
    let d = h.rows();
    if d == 0 {
        return Err(LinalgError::BadShape {
            context: "eigh needs a nonempty matrix",
            rows: 0,
            cols: 0,
        });
    }

    // Symmetrize roundoff so the iteration sees an exactly Hermitian matrix.
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(d);
    let target = 1e-12 * (1.0 + a.frobenius_norm());
    // Rotating every entry above target/d guarantees the off-diagonal norm
    // ends below target once a sweep makes no rotation.
    let rot_threshold = target / d as f64;
    let max_sweeps = 100 * d * d;

    let mut converged = d == 1;
    let mut sweeps = 0;
    while !converged && sweeps < max_sweeps {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= rot_threshold {
                    continue;
                }
                rotated = true;
                let phase = apq / r; // e^{i phi}
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = C64::new(c, 0.0);
                let s_phase = phase * s; // s e^{i phi}
                let s_phase_conj = phase.conj() * s; // s e^{-i phi}

                // A <- A U with U the plane rotation:
                // col_p' = c col_p + s e^{-i phi} col_q
                // col_q' = -s e^{i phi} col_p + c col_q
                for k in 0..d {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, cs * akp + s_phase_conj * akq);
                    a.set(k, q, cs * akq - s_phase * akp);
                }
                // A <- U^dag A:
                // row_p' = c row_p + s e^{i phi} row_q
                // row_q' = -s e^{-i phi} row_p + c row_q
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, cs * apk + s_phase * aqk);
                    a.set(q, k, cs * aqk - s_phase_conj * apk);
                }
                // Pin symmetry on the pivot pair.
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
                let app_new = a.get(p, p).re;
                let aqq_new = a.get(q, q).re;
                a.set(p, p, C64::new(app_new, 0.0));
                a.set(q, q, C64::new(aqq_new, 0.0));

                // V <- V U (same column update).
                for k in 0..d {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, cs * vkp + s_phase_conj * vkq);
                    v.set(k, q, cs * vkq - s_phase * vkp);
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps });
    }

    // Ascending eigenvalue order.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a.get(k, k).re).collect();
    let mut vectors = ComplexMatrix::zeros(d, d);
    for (new_col, &old_col) in order.iter().enumerate() {
        // Global-phase convention: first component with modulus above 1e-6
        // made real-positive (every unit vector has one since d <= ~32).
        let col = v.column(old_col);
        let pivot = col.iter().find(|z| z.norm() > 1e-6);
        let phase = match pivot {
            Some(z) => z.conj() / z.norm(),
            None => C64::new(1.0, 0.0),
        };
        for i in 0..d {
            vectors.set(i, new_col, col[i] * phase);
        }
    }

    Ok(HermitianEig {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Hermitian, positive semi-definite, trace-one matrix: the quantum state body.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermitian symmetry (1e-10), eigenvalue floor (-1e-10) and
    /// unit trace (1e-10).
    pub fn new(mat: ComplexMatrix) -> Result<Self, LinalgError> {
        if !mat.is_square() {
            return Err(LinalgError::BadShape {
                context: "density matrix must be square",
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(LinalgError::NotHermitian {
                deviation: dev,
                tol: HERMITIAN_TOL,
            });
        }
        let tr = mat.trace();
        let tr_dev = (tr - C64::new(1.0, 0.0)).norm();
        if tr_dev > 1e-10 {
            return Err(LinalgError::NotTraceOne { deviation: tr_dev });
        }
        let eig = eigh(&mat)?;
        if let Some(&lo) = eig
            .eigenvalues
            .first()
            .filter(|&&lo| lo < -HERMITIAN_TOL)
        {
            return Err(LinalgError::NotPsd { value: lo });
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        let mat = ComplexMatrix::identity(d).scale(C64::new(1.0 / d as f64, 0.0));
        Self { mat }
    }

    /// `|rho - sigma|_F`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.mat.sub(&other.mat).frobenius_norm()
    }
}

/// Projects a square matrix onto the density-matrix body: take the Hermitian
/// part, clip negative eigenvalues, renormalize the trace. Idempotent on valid
/// density matrices to within 1e-12.
pub fn project_to_density(a: &ComplexMatrix) -> Result<DensityMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::BadShape {
            context: "project_to_density needs a square matrix",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let b = a.hermitian_part();
    let eig = eigh(&b)?;
    let clipped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let trace: f64 = clipped.iter().sum();
    if trace < 1e-12 {
        return Err(LinalgError::ZeroTrace { trace });
    }
    let d = b.rows();
    let mut mat = ComplexMatrix::zeros(d, d);
    for (k, &l) in clipped.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let col = eig.eigenvectors.column(k);
        mat.axpy(C64::new(l / trace, 0.0), &ComplexMatrix::outer(&col));
    }
    // Exact Hermitian symmetry and trace by construction up to roundoff;
    // re-pin the trace so downstream 1e-10 checks never see drift.
    let tr = mat.trace().re;
    let mat = mat.scale(C64::new(1.0 / tr, 0.0));
    Ok(DensityMatrix {
        mat: mat.hermitian_part(),
    })
}

/// Column-orthonormal `m x r` complex matrix, `m >= r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    mat: ComplexMatrix,
}

impl Isometry {
    /// Wraps a matrix after checking `U^dag U = I` to 1e-10 (Frobenius).
    pub fn new(mat: ComplexMatrix) -> Result<Self, LinalgError> {
        if mat.rows() < mat.cols() {
            return Err(LinalgError::BadShape {
                context: "isometry needs rows >= cols",
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let gram = mat.adjoint().mul(&mat);
        let dev = gram.sub(&ComplexMatrix::identity(mat.cols())).frobenius_norm();
        if dev > 1e-10 {
            return Err(LinalgError::NotHermitian {
                deviation: dev,
                tol: 1e-10,
            });
        }
        Ok(Self { mat })
    }

    /// First `cols` columns of the identity, embedded in `rows` rows.
    pub fn identity_embedding(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if rows < cols || cols == 0 {
            return Err(LinalgError::BadShape {
                context: "identity embedding needs rows >= cols >= 1",
                rows,
                cols,
            });
        }
        let mat = ComplexMatrix::from_fn(rows, cols, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    /// `max |U^dag U - I|` style deviation, as a Frobenius norm.
    pub fn orthonormality_deviation(&self) -> f64 {
        self.mat
            .adjoint()
            .mul(&self.mat)
            .sub(&ComplexMatrix::identity(self.mat.cols()))
            .frobenius_norm()
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub(crate) fn random_gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re = standard_normal(rng);
        let im = standard_normal(rng);
        data.push(C64::new(re, im));
    }
    ComplexMatrix {
        rows,
        cols,
        data,
    }
}

/// Modified Gram-Schmidt orthonormalization of the columns; columns that
/// collapse below 1e-13 are replaced by a deterministic fresh direction.
fn orthonormalize_columns(mut m: ComplexMatrix, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let rows = m.rows();
    let cols = m.cols();
    for j in 0..cols {
        loop {
            // Project out previous columns (twice for numerical safety).
            for _pass in 0..2 {
                for k in 0..j {
                    let mut dot = C64::new(0.0, 0.0);
                    for i in 0..rows {
                        dot += m.get(i, k).conj() * m.get(i, j);
                    }
                    for i in 0..rows {
                        let v = m.get(i, j) - dot * m.get(i, k);
                        m.set(i, j, v);
                    }
                }
            }
            let norm: f64 = (0..rows).map(|i| m.get(i, j).norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-13 {
                let inv = C64::new(1.0 / norm, 0.0);
                for i in 0..rows {
                    let v = m.get(i, j) * inv;
                    m.set(i, j, v);
                }
                break;
            }
            for i in 0..rows {
                m.set(i, j, C64::new(standard_normal(rng), standard_normal(rng)));
            }
        }
    }
    m
}

/// Seeded random isometry: orthonormalization of a complex Gaussian matrix.
/// Deterministic for a fixed `(m, r, seed)` triple.
pub fn random_isometry(m: usize, r: usize, seed: u64) -> Result<Isometry, LinalgError> {
    if m < r || r == 0 {
        return Err(LinalgError::BadShape {
            context: "random_isometry needs m >= r >= 1",
            rows: m,
            cols: r,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_gaussian_matrix(m, r, &mut rng);
    let q = orthonormalize_columns(g, &mut rng);
    Ok(Isometry { mat: q })
}

/// QR-style retraction: orthonormalize `U + step * tangent`. The tangent is
/// projected onto the Stiefel tangent space at `U` first, so a zero step
/// returns `U` up to roundoff.
pub fn isometry_retract(
    u: &Isometry,
    tangent: &ComplexMatrix,
    step: f64,
) -> Result<Isometry, LinalgError> {
    if tangent.rows() != u.rows() || tangent.cols() != u.cols() {
        return Err(LinalgError::BadShape {
            context: "tangent shape must match the isometry",
            rows: tangent.rows(),
            cols: tangent.cols(),
        });
    }
    // T <- T - U herm(U^dag T)
    let utt = u.mat.adjoint().mul(tangent);
    let sym = utt.hermitian_part();
    let mut t = tangent.clone();
    let correction = u.mat.mul(&sym);
    t.axpy(C64::new(-1.0, 0.0), &correction);

    let mut y = u.mat.clone();
    y.axpy(C64::new(step, 0.0), &t);
    // A fresh rng only feeds the degenerate-column fallback, which cannot
    // trigger here: Y has full column rank for any step (Y^dag Y >= I).
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let q = orthonormalize_columns(y, &mut rng);
    Ok(Isometry { mat: q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: usize, cols: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
        let data = entries.iter().map(|&(re, im)| C64::new(re, im)).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    }

    fn random_hermitian(d: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gaussian_matrix(d, d, &mut rng);
        g.hermitian_part()
    }

    #[test]
    fn eigh_identity() {
        let eig = eigh(&ComplexMatrix::identity(2)).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_diagonal() {
        let h = cm(2, 2, &[(0.25, 0.0), (0.0, 0.0), (0.0, 0.0), (0.75, 0.0)]);
        let eig = eigh(&h).unwrap();
        assert!((eig.eigenvalues[0] - 0.25).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 0.75).abs() < 1e-14);
        // Standard basis eigenvectors, up to the phase convention.
        assert!((eig.eigenvectors.get(0, 0).re - 1.0).abs() < 1e-12);
        assert!((eig.eigenvectors.get(1, 1).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_symmetric_half() {
        let h = cm(2, 2, &[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (0.5, 0.0)]);
        let eig = eigh(&h).unwrap();
        assert!(eig.eigenvalues[0].abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
        let v = eig.eigenvectors.column(1);
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        let overlap = (v[0].conj() * inv_sqrt2 + v[1].conj() * inv_sqrt2).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let h = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(eigh(&h), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn eigh_reconstruction_random() {
        for d in 1..=8 {
            for seed in 0..6 {
                let h = random_hermitian(d, 1000 * d as u64 + seed);
                let eig = eigh(&h).unwrap();
                let err = eig.reconstruct().sub(&h).frobenius_norm();
                assert!(
                    err <= 1e-10 * (1.0 + h.frobenius_norm()),
                    "reconstruction error {err} at d={d} seed={seed}"
                );
                let gram_dev = eig
                    .eigenvectors
                    .adjoint()
                    .mul(&eig.eigenvectors)
                    .sub(&ComplexMatrix::identity(d))
                    .frobenius_norm();
                assert!(gram_dev <= 1e-10, "orthonormality {gram_dev}");
                let sum: f64 = eig.eigenvalues.iter().sum();
                assert!((sum - h.trace().re).abs() <= 1e-10 * (1.0 + h.frobenius_norm()));
                assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn project_is_idempotent_on_density() {
        let rho = DensityMatrix::maximally_mixed(3);
        let again = project_to_density(rho.matrix()).unwrap();
        let err = again.matrix().sub(rho.matrix()).frobenius_norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn project_clips_and_normalizes() {
        let a = cm(2, 2, &[(1.1, 0.0), (0.0, 0.0), (0.0, 0.0), (-0.1, 0.0)]);
        let rho = project_to_density(&a).unwrap();
        assert!((rho.matrix().get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(rho.matrix().get(1, 1).norm() < 1e-12);
    }

    #[test]
    fn project_pauli_x() {
        // Eigen-clip of X keeps the +1 eigenvector (1,1)/sqrt(2); the expected
        // output is the projector onto it, written out by hand.
        let x = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let rho = project_to_density(&x).unwrap();
        let expected = cm(2, 2, &[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (0.5, 0.0)]);
        assert!(rho.matrix().sub(&expected).frobenius_norm() < 1e-12);
    }

    #[test]
    fn project_zero_trace_fails() {
        let a = cm(2, 2, &[(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-2.0, 0.0)]);
        assert!(matches!(
            project_to_density(&a),
            Err(LinalgError::ZeroTrace { .. })
        ));
    }

    #[test]
    fn random_isometry_contract() {
        let u = random_isometry(3, 2, 7).unwrap();
        assert!(u.orthonormality_deviation() < 1e-10);
        let u1 = random_isometry(1, 1, 3).unwrap();
        assert!((u1.matrix().get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_isometry_deterministic() {
        let a = random_isometry(5, 3, 42).unwrap();
        let b = random_isometry(5, 3, 42).unwrap();
        assert_eq!(a.matrix().data(), b.matrix().data());
    }

    #[test]
    fn random_isometry_bad_shape() {
        assert!(matches!(
            random_isometry(2, 3, 0),
            Err(LinalgError::BadShape { .. })
        ));
    }

    #[test]
    fn retract_zero_step() {
        let u = random_isometry(4, 2, 9).unwrap();
        let t = random_gaussian_matrix(4, 2, &mut ChaCha8Rng::seed_from_u64(1));
        let r = isometry_retract(&u, &t, 0.0).unwrap();
        let err = r.matrix().sub(u.matrix()).frobenius_norm();
        assert!(err < 1e-12, "zero-step drift {err}");
    }

    #[test]
    fn retract_antisymmetric_tangent() {
        let u = Isometry::identity_embedding(2, 2).unwrap();
        let t = cm(2, 2, &[(0.0, 0.0), (0.0, 0.1), (0.0, 0.1), (0.0, 0.0)]);
        let r = isometry_retract(&u, &t, 0.1).unwrap();
        assert!(r.orthonormality_deviation() < 1e-10);
    }

    #[test]
    fn retract_drift_over_1000_steps() {
        let mut u = random_isometry(4, 3, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let t = random_gaussian_matrix(4, 3, &mut rng);
            u = isometry_retract(&u, &t, 1e-3).unwrap();
        }
        assert!(u.orthonormality_deviation() < 1e-9);
    }

    #[test]
    fn retract_shape_mismatch() {
        let u = random_isometry(3, 2, 1).unwrap();
        let t = ComplexMatrix::zeros(2, 2);
        assert!(matches!(
            isometry_retract(&u, &t, 0.5),
            Err(LinalgError::BadShape { .. })
        ));
    }
}
