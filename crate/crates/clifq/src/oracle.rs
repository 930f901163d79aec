//! Complex-matrix oracle.
//!
//! Everything the geometric-algebra engine computes has a conventional
//! matrix counterpart under the product-operator representation. This
//! module provides that counterpart from scratch (dense complex matrices,
//! a Jacobi eigensolver, a matrix exponential) so results can be checked
//! against arithmetic that shares no code with the algebra path. Keep it
//! that way: nothing here may call into the quotient or raw GA product
//! routines; the only coupling is reading coefficients in [`represent`].

use crate::multiqubit::CorrelatedElement;
use crate::{Error, Result};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct ComplexMatrix {
    dim: usize,
    a: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            a: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, c(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = ComplexMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, z) in row.iter().enumerate() {
                m.set(i, j, *z);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.a[i * self.dim + j] = z;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        ComplexMatrix {
            dim: self.dim,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        ComplexMatrix {
            dim: self.dim,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            a: self.a.iter().map(|x| x * z).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.a[i * d + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        let mut out = ComplexMatrix::zeros(d1 * d2);
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                let z1 = self.get(i1, j1);
                if z1.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        out.set(i1 * d2 + i2, j1 * d2 + j2, z1 * other.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_entry_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_entry_distance(other) <= tol
    }

    /// Max deviation from the conjugate transpose.
    pub fn hermitian_residual(&self) -> f64 {
        self.max_entry_distance(&self.dagger())
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    /// Apply to a column vector.
    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

pub fn pauli_i() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c(0.0, 0.0), c(1.0, 0.0)],
        &[c(1.0, 0.0), c(0.0, 0.0)],
    ])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c(0.0, 0.0), c(0.0, -1.0)],
        &[c(0.0, 1.0), c(0.0, 0.0)],
    ])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c(1.0, 0.0), c(0.0, 0.0)],
        &[c(0.0, 0.0), c(-1.0, 0.0)],
    ])
}

/// Kronecker product of Pauli factors for basis index `idx` (base-4 digits,
/// qubit 0 most significant, so qubit 0 is the leftmost factor).
pub fn basis_matrix(n: usize, idx: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(1);
    for q in 0..n {
        let d = (idx >> (2 * (n - 1 - q))) & 3;
        let f = match d {
            0 => pauli_i(),
            1 => pauli_x(),
            2 => pauli_y(),
            _ => pauli_z(),
        };
        m = m.kron(&f);
    }
    m
}

/// Matrix representation of a correlated element: sum of coefficients times
/// Pauli kron products, with iota realised as the imaginary unit.
pub fn represent(elem: &CorrelatedElement) -> ComplexMatrix {
    let n = elem.n_qubits();
    let mut m = ComplexMatrix::zeros(1 << n);
    for (idx, z) in elem.coeffs().iter().enumerate() {
        if z.norm_sqr() == 0.0 {
            continue;
        }
        m = m.add(&basis_matrix(n, idx).scale(*z));
    }
    m
}

/// Inverse of [`represent`]: coefficient idx is tr(B_idx M) / 2^N.
pub fn unrepresent(m: &ComplexMatrix, n: usize) -> CorrelatedElement {
    assert_eq!(m.dim(), 1 << n);
    let mut elem = CorrelatedElement::zero(n);
    let norm = 1.0 / (1 << n) as f64;
    for idx in 0..1usize << (2 * n) {
        let b = basis_matrix(n, idx);
        elem.set_coeff(idx, b.mul(m).trace() * norm);
    }
    elem
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues ascending and the unitary whose columns
/// are the matching eigenvectors (A = V diag V^dagger).
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let res = m.hermitian_residual();
    let scale = m.frobenius().max(1.0);
    if res > 1e-9 * scale {
        return Err(Error::NotHermitian(res));
    }
    let d = m.dim();
    let mut a = m.clone();
    // symmetrise away roundoff so the invariants below are exact
    a = a.add(&a.dagger()).scale(c(0.5, 0.0));
    let mut v = ComplexMatrix::identity(d);
    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += a.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let tol = 1e-13 * scale;
    let mut sweeps = 0usize;
    while off(&a) > tol {
        sweeps += 1;
        if sweeps > 60 {
            return Err(Error::EigenDiverged(sweeps));
        }
        for p in 0..d {
            for q in p + 1..d {
                let g = a.get(p, q);
                let gn = g.norm();
                if gn <= 1e-300 {
                    continue;
                }
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let phase = g / gn;
                // zero the pivot: |g|(1 - t^2) + t (alpha - beta) = 0,
                // take the small root for stability
                let tau = (alpha - beta) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cc = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * t * cc;
                // columns: p' = c p - conj(s) q ; q' = s p + c q
                for k in 0..d {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * cc - akq * s.conj());
                    a.set(k, q, akp * s + akq * cc);
                }
                // rows: p' = c p - s q ; q' = conj(s) p + c q
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * cc - aqk * s);
                    a.set(q, k, apk * s.conj() + aqk * cc);
                }
                for k in 0..d {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * cc - vkq * s.conj());
                    v.set(k, q, vkp * s + vkq * cc);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    let evals_raw: Vec<f64> = (0..d).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| evals_raw[i].partial_cmp(&evals_raw[j]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| evals_raw[i]).collect();
    let mut vs = ComplexMatrix::zeros(d);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..d {
            vs.set(i, new_j, v.get(i, old_j));
        }
    }
    // residual check: || M v - lambda v || per eigenpair
    for (j, &lam) in evals.iter().enumerate() {
        let col = vs.column(j);
        let mv = m.apply_vec(&col);
        let r: f64 = mv
            .iter()
            .zip(&col)
            .map(|(x, y)| (x - y * lam).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if r > 1e-10 * scale {
            return Err(Error::EigenDiverged(sweeps));
        }
    }
    Ok((evals, vs))
}

/// Matrix exponential by scaling and squaring a Taylor series.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = m.dim();
    // 1-norm (max column sum) bounds the spectral radius
    let mut bound: f64 = (0..d)
        .map(|j| (0..d).map(|i| m.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut halvings = 0u32;
    while bound >= 0.5 {
        bound /= 2.0;
        halvings += 1;
    }
    let arg = m.scale(c(0.5f64.powi(halvings as i32), 0.0));
    let mut sum = ComplexMatrix::identity(d);
    let mut term = sum.clone();
    let mut converged = false;
    for k in 1..=64usize {
        term = term.mul(&arg).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.frobenius() <= 1e-18 * sum.frobenius().max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ExpSeriesDiverged(64));
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

/// Choi matrix of a one-qubit map given its action on 2x2 matrices:
/// sum_ij Omega(|i><j|) (x) |i><j| (unnormalised). The map is completely
/// positive iff this is positive semidefinite.
pub fn choi_from_action(
    action: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> ComplexMatrix {
    let mut choi = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = ComplexMatrix::zeros(2);
            unit.set(i, j, c(1.0, 0.0));
            choi = choi.add(&action(&unit).kron(&unit));
        }
    }
    choi
}

/// Smallest eigenvalue of a Hermitian matrix, for PSD tests.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    let (evals, _) = hermitian_eigen(m)?;
    Ok(evals[0])
}
