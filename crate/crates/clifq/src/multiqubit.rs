//! The N-qubit correlated algebra.
//!
//! The N-particle algebra G(N,3N) contains one Pauli algebra per particle,
//! but with N independent pseudoscalars. Multiplying by the correlator
//! C = prod_q (1 - iota^1 iota^q)/2 identifies them all, and on that ideal
//! the algebra collapses to the familiar tensor product: every element is a
//! complex combination of product operators sigma_mu^1 ... sigma_mu^N with
//! the shared iota acting as the imaginary unit. [`CorrelatedElement`] works
//! directly in that quotient as a dense vector of 4^N complex coefficients.
//! The [`raw`] submodule builds the same objects in the full G(N,3N)
//! algebra, which is how the quotient arithmetic gets cross-validated.
//!
//! Spinors carry a further reduction by the directional correlator D, which
//! absorbs sigma_z^p sigma_z^q pairs; that is what makes the projective
//! action U o Psi = 2 <U Psi E+>_+ well defined.

use crate::ga::Signature;
use crate::oracle;
use crate::{Error, Result};
use num_complex::Complex64;

/// One of the three Pauli axes. Digit values 1..3 index the product-operator
/// basis; digit 0 is the identity factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn digit(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    pub fn from_digit(d: usize) -> Option<Axis> {
        match d {
            1 => Some(Axis::X),
            2 => Some(Axis::Y),
            3 => Some(Axis::Z),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// Single-qubit Pauli product table: sigma_a sigma_b = phase * sigma_out.
fn axis_mul(a: usize, b: usize) -> (usize, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        (0, d) => (d, one),
        (d, 0) => (d, one),
        (d, e) if d == e => (0, one),
        (1, 2) => (3, i),
        (2, 3) => (1, i),
        (3, 1) => (2, i),
        (2, 1) => (3, -i),
        (3, 2) => (1, -i),
        (1, 3) => (2, -i),
        _ => unreachable!("digits out of range"),
    }
}

/// Element of the correlated N-qubit algebra: complex coefficients over the
/// product-operator basis. The basis index is read as N base-4 digits with
/// qubit 0 most significant, digit values 0 = identity, 1..3 = x, y, z.
#[derive(Clone, Debug)]
pub struct CorrelatedElement {
    n: usize,
    coeffs: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl CorrelatedElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "need at least one qubit");
        CorrelatedElement {
            n,
            coeffs: vec![c(0.0, 0.0); 1 << (2 * n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = CorrelatedElement::zero(n);
        e.coeffs[0] = c(1.0, 0.0);
        e
    }

    pub fn scalar(n: usize, z: Complex64) -> Self {
        let mut e = CorrelatedElement::zero(n);
        e.coeffs[0] = z;
        e
    }

    /// The identified pseudoscalar iota, i.e. the imaginary scalar.
    pub fn iota(n: usize) -> Self {
        CorrelatedElement::scalar(n, c(0.0, 1.0))
    }

    /// sigma_axis acting on qubit `q` (0-based).
    pub fn sigma(n: usize, axis: Axis, q: usize) -> Self {
        assert!(q < n, "qubit index out of range");
        let mut e = CorrelatedElement::zero(n);
        let idx = axis.digit() << (2 * (n - 1 - q));
        e.coeffs[idx] = c(1.0, 0.0);
        e
    }

    /// Idempotent (1 + sign sigma_z^q)/2.
    pub fn e_projector(n: usize, q: usize, sign: f64) -> Self {
        CorrelatedElement::identity(n)
            .add(&CorrelatedElement::sigma(n, Axis::Z, q).scale_re(sign))
            .scale_re(0.5)
    }

    /// E+ = prod_q (1 + sigma_z^q)/2, the projector onto |0...0>.
    pub fn e_plus_all(n: usize) -> Self {
        let mut e = CorrelatedElement::identity(n);
        for q in 0..n {
            e = e.mul(&CorrelatedElement::e_projector(n, q, 1.0));
        }
        e
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), 1 << (2 * n));
        CorrelatedElement { n, coeffs }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, idx: usize) -> Complex64 {
        self.coeffs[idx]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, idx: usize, z: Complex64) {
        self.coeffs[idx] = z;
    }

    /// Base-4 digit of `idx` for qubit `q`.
    pub fn digit(&self, idx: usize, q: usize) -> usize {
        (idx >> (2 * (self.n - 1 - q))) & 3
    }

    /// Number of non-identity factors in basis element `idx`.
    pub fn weight(&self, idx: usize) -> usize {
        let mut w = 0;
        let mut rest = idx;
        while rest != 0 {
            if rest & 3 != 0 {
                w += 1;
            }
            rest >>= 2;
        }
        w
    }

    fn assert_same_n(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "operands have different qubit counts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_n(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CorrelatedElement { n: self.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_re(-1.0))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * z).collect();
        CorrelatedElement { n: self.n, coeffs }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(c(k, 0.0))
    }

    /// Geometric product in the quotient: basis elements multiply factor by
    /// factor through the Pauli table, phases collect on the shared iota.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_n(other);
        let n = self.n;
        let mut out = CorrelatedElement::zero(n);
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for (ib, cb) in other.coeffs.iter().enumerate() {
                if cb.norm_sqr() == 0.0 {
                    continue;
                }
                let mut phase = c(1.0, 0.0);
                let mut idx = 0usize;
                for q in 0..n {
                    let shift = 2 * (n - 1 - q);
                    let (d, ph) = axis_mul((ia >> shift) & 3, (ib >> shift) & 3);
                    idx |= d << shift;
                    phase *= ph;
                }
                out.coeffs[idx] += ca * cb * phase;
            }
        }
        out
    }

    /// Reversion. Product operators are reversion-symmetric and iota is odd,
    /// so this is plain complex conjugation of the coefficients; it matches
    /// the conjugate transpose of the matrix representation.
    pub fn reverse(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.conj()).collect();
        CorrelatedElement { n: self.n, coeffs }
    }

    /// Even-grade part. A weight-w term is even when its coefficient is real
    /// (w even) or imaginary (w odd), since both the sigmas and iota are odd.
    pub fn even_part(&self) -> Self {
        let mut out = CorrelatedElement::zero(self.n);
        for (idx, z) in self.coeffs.iter().enumerate() {
            out.coeffs[idx] = if self.weight(idx) % 2 == 0 {
                c(z.re, 0.0)
            } else {
                c(0.0, z.im)
            };
        }
        out
    }

    /// Coefficient 2-norm.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        self.assert_same_n(other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_coeff_distance(other) <= tol
    }

    /// Deviation from 1, used for unitarity and normality checks.
    pub fn distance_from_identity(&self) -> f64 {
        self.max_coeff_distance(&CorrelatedElement::identity(self.n))
    }

    /// Exponential by scaled power series. The operator norm is bounded by
    /// the coefficient 1-norm, which drives the range reduction.
    pub fn exp(&self) -> Result<Self> {
        let mut bound: f64 = self.coeffs.iter().map(|z| z.norm()).sum();
        let mut halvings = 0u32;
        while bound >= 0.5 {
            bound /= 2.0;
            halvings += 1;
        }
        let arg = self.scale_re(0.5f64.powi(halvings as i32));
        let mut sum = CorrelatedElement::identity(self.n);
        let mut term = sum.clone();
        let mut converged = false;
        for k in 1..=64usize {
            term = term.mul(&arg).scale_re(1.0 / k as f64);
            sum = sum.add(&term);
            if term.norm() <= 1e-18 * sum.norm().max(1.0) {
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

    /// Human-readable label of basis element `idx`, 1-based qubit numbering:
    /// "sx^1 sz^2", or "1" for the identity.
    pub fn term_label(n: usize, idx: usize) -> String {
        let mut parts = Vec::new();
        for q in 0..n {
            let d = (idx >> (2 * (n - 1 - q))) & 3;
            if let Some(axis) = Axis::from_digit(d) {
                parts.push(format!("s{}^{}", axis.letter(), q + 1));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Image of the correlator C in the quotient it defines: the identity.
/// The nontrivial content of C lives in [`raw::correlator`]; this exists so
/// quotient-side code can name the same object.
pub fn correlator(n: usize) -> CorrelatedElement {
    CorrelatedElement::identity(n)
}

/// Image of the directional correlator D = prod_q (1 + sigma_z^1 sigma_z^q)/2.
/// Right multiplication by D cuts the even subalgebra down to the spinor
/// space of real dimension 2^(N+1).
pub fn directional_correlator(n: usize) -> CorrelatedElement {
    let mut d = CorrelatedElement::identity(n);
    for q in 1..n {
        let zz = CorrelatedElement::sigma(n, Axis::Z, 0)
            .mul(&CorrelatedElement::sigma(n, Axis::Z, q));
        d = d.mul(&CorrelatedElement::identity(n).add(&zz).scale_re(0.5));
    }
    d
}

/// State vector over the computational basis, qubit 0 most significant.
#[derive(Clone, Debug)]
pub struct Ket {
    n: usize,
    amps: Vec<Complex64>,
}

impl Ket {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::KetLength {
                got: amps.len(),
                want: 1 << n,
            });
        }
        Ok(Ket { n, amps })
    }

    /// Computational basis state |bits>.
    pub fn basis(n: usize, bits: usize) -> Self {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[bits] = c(1.0, 0.0);
        Ket { n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == 0.0 {
            return Err(Error::ZeroKet);
        }
        Ok(Ket {
            n: self.n,
            amps: self.amps.iter().map(|z| z / nrm).collect(),
        })
    }

    /// Rotate the global phase so the first nonzero amplitude is real and
    /// positive; this is the convention used when printing kets.
    pub fn phase_normalized(&self) -> Self {
        let lead = self.amps.iter().find(|z| z.norm() > 1e-12);
        let phase = match lead {
            Some(z) => z.conj() / z.norm(),
            None => c(1.0, 0.0),
        };
        Ket {
            n: self.n,
            amps: self.amps.iter().map(|z| z * phase).collect(),
        }
    }

    pub fn max_distance(&self, other: &Ket) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance ignoring global phase: compares the outer products.
    pub fn density_distance(&self, other: &Ket) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.amps.len() {
            for j in 0..self.amps.len() {
                let a = self.amps[i] * self.amps[j].conj();
                let b = other.amps[i] * other.amps[j].conj();
                d = d.max((a - b).norm());
            }
        }
        d
    }
}

/// Basis spinor for |bits>: the product of (-iota sigma_y^q) over the set
/// bits. Each factor flips one qubit, so the whole thing is a single basis
/// term with phase (-i)^w.
fn basis_spinor_term(n: usize, bits: usize) -> (usize, Complex64) {
    let mut idx = 0usize;
    let mut w = 0u32;
    for q in 0..n {
        if bits >> (n - 1 - q) & 1 == 1 {
            idx |= Axis::Y.digit() << (2 * (n - 1 - q));
            w += 1;
        }
    }
    let minus_i = c(0.0, -1.0);
    (idx, minus_i.powu(w))
}

/// Spinor: an element of the reduced even subalgebra (even part, invariant
/// under right multiplication by D). Kets map onto these one-to-one.
#[derive(Clone, Debug)]
pub struct Spinor {
    elem: CorrelatedElement,
}

impl Spinor {
    /// Wrap an element, checking it lies in the reduced even subalgebra.
    pub fn new(elem: CorrelatedElement) -> Result<Self> {
        let n = elem.n_qubits();
        let scale = elem.norm().max(1.0);
        let even_res = elem.max_coeff_distance(&elem.even_part());
        if even_res > 1e-9 * scale {
            return Err(Error::NotReduced(even_res));
        }
        let reduced = elem.mul(&directional_correlator(n));
        let res = elem.max_coeff_distance(&reduced);
        if res > 1e-9 * scale {
            return Err(Error::NotReduced(res));
        }
        Ok(Spinor { elem })
    }

    pub fn element(&self) -> &CorrelatedElement {
        &self.elem
    }

    pub fn n_qubits(&self) -> usize {
        self.elem.n_qubits()
    }

    /// Lift a ket into the reduced even subalgebra. The map sends |0...0>
    /// to D, flips bits with -iota sigma_y^q factors, and realises the
    /// ket's imaginary unit as right multiplication by K = iota sigma_z^1 D.
    pub fn from_ket(ket: &Ket) -> Result<Self> {
        let n = ket.n_qubits();
        if ket.norm() == 0.0 {
            return Err(Error::ZeroKet);
        }
        let mut acc = CorrelatedElement::zero(n);
        for (bits, amp) in ket.amps().iter().enumerate() {
            if amp.norm() == 0.0 {
                continue;
            }
            let (idx, phase) = basis_spinor_term(n, bits);
            // B_j * (x + y K) with K = iota sigma_z^1 (D applied at the end)
            let mut real_term = CorrelatedElement::zero(n);
            real_term.set_coeff(idx, phase * c(amp.re, 0.0));
            let k = CorrelatedElement::sigma(n, Axis::Z, 0).scale(c(0.0, 1.0));
            let mut imag_base = CorrelatedElement::zero(n);
            imag_base.set_coeff(idx, phase * c(amp.im, 0.0));
            acc = acc.add(&real_term).add(&imag_base.mul(&k));
        }
        let elem = acc.mul(&directional_correlator(n));
        Spinor::new(elem)
    }

    /// Recover the ket: amplitude j is 2^N times the complex scalar part of
    /// Psi E+ B_j~, which reads off column zero of the matrix of Psi E+.
    pub fn to_ket(&self) -> Ket {
        let n = self.n_qubits();
        let x = self.elem.mul(&CorrelatedElement::e_plus_all(n));
        let mut amps = Vec::with_capacity(1 << n);
        for bits in 0..1usize << n {
            let (idx, phase) = basis_spinor_term(n, bits);
            let mut rev = CorrelatedElement::zero(n);
            rev.set_coeff(idx, phase.conj());
            let scalar = x.mul(&rev).coeff(0);
            amps.push(scalar * (1 << n) as f64);
        }
        Ket { n, amps }
    }

    /// Projective unitary action U o Psi = 2 <U Psi E+>_+. Nothing is lost:
    /// for reduced Psi the projection undoes the E+ factor exactly.
    pub fn apply_unitary(&self, u: &CorrelatedElement) -> Result<Spinor> {
        let dev = u.mul(&u.reverse()).distance_from_identity();
        if dev > 1e-9 {
            return Err(Error::NotUnitary(dev));
        }
        let n = self.n_qubits();
        let x = u.mul(&self.elem).mul(&CorrelatedElement::e_plus_all(n));
        Spinor::new(x.even_part().scale_re(2.0))
    }

    /// Basis action sigma_mu^q o Psi = sigma_mu^q Psi sigma_z^q, the spinor
    /// form of applying the Pauli matrix.
    pub fn apply_basis(&self, axis: Axis, q: usize) -> Result<Spinor> {
        let n = self.n_qubits();
        if q >= n {
            return Err(Error::QubitIndex(q, n));
        }
        let s = CorrelatedElement::sigma(n, axis, q);
        let z = CorrelatedElement::sigma(n, Axis::Z, q);
        Spinor::new(s.mul(&self.elem).mul(&z))
    }

    /// iota o Psi = iota Psi sigma_z^q: multiplication of the ket by i.
    /// Any q gives the same reduced spinor.
    pub fn apply_iota(&self) -> Result<Spinor> {
        let n = self.n_qubits();
        let z = CorrelatedElement::sigma(n, Axis::Z, 0);
        Spinor::new(
            self.elem
                .mul(&z)
                .scale(c(0.0, 1.0)),
        )
    }
}

/// Mixed state: rho = sum_i w_i Psi_i E+ Psi_i~, reversion-symmetric with
/// scalar part 2^-N.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    elem: CorrelatedElement,
}

impl DensityOperator {
    pub fn from_ensemble(weights: &[f64], spinors: &[Spinor]) -> Result<Self> {
        if weights.len() != spinors.len() || weights.is_empty() {
            return Err(Error::BadWeights);
        }
        if weights.iter().any(|&w| w < 0.0)
            || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-9
        {
            return Err(Error::BadWeights);
        }
        let n = spinors[0].n_qubits();
        let eplus = CorrelatedElement::e_plus_all(n);
        let mut rho = CorrelatedElement::zero(n);
        for (w, psi) in weights.iter().zip(spinors) {
            // normalise each pure component so weights mean probabilities
            let ket = psi.to_ket();
            let nrm2 = ket.norm().powi(2);
            let term = psi
                .element()
                .mul(&eplus)
                .mul(&psi.element().reverse())
                .scale_re(w / nrm2);
            rho = rho.add(&term);
        }
        DensityOperator::from_element(rho)
    }

    pub fn pure(psi: &Spinor) -> Result<Self> {
        DensityOperator::from_ensemble(&[1.0], std::slice::from_ref(psi))
    }

    /// Validate reversion symmetry and the scalar part, then wrap.
    pub fn from_element(elem: CorrelatedElement) -> Result<Self> {
        let res = elem.max_coeff_distance(&elem.reverse());
        if res > 1e-9 * elem.norm().max(1.0) {
            return Err(Error::NotReversionSymmetric(res));
        }
        let n = elem.n_qubits();
        let want = 0.5f64.powi(n as i32);
        let s = elem.coeff(0);
        if (s.re - want).abs() > 1e-9 || s.im.abs() > 1e-9 {
            return Err(Error::BadScalarPart(s.re));
        }
        Ok(DensityOperator { elem })
    }

    pub fn element(&self) -> &CorrelatedElement {
        &self.elem
    }

    pub fn n_qubits(&self) -> usize {
        self.elem.n_qubits()
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityOperator {
            elem: CorrelatedElement::identity(n).scale_re(0.5f64.powi(n as i32)),
        }
    }

    /// <O> = 2^N <O rho>_0 for a reversion-symmetric observable.
    pub fn expectation(&self, obs: &CorrelatedElement) -> Result<f64> {
        let res = obs.max_coeff_distance(&obs.reverse());
        if res > 1e-9 * obs.norm().max(1.0) {
            return Err(Error::NotReversionSymmetric(res));
        }
        let s = obs.mul(&self.elem).coeff(0);
        Ok(s.re * (1 << self.n_qubits()) as f64)
    }

    /// Real coefficients over the product-operator basis (the imaginary
    /// parts vanish by reversion symmetry).
    pub fn product_operator_expand(&self) -> Vec<f64> {
        self.elem.coeffs().iter().map(|z| z.re).collect()
    }

    /// Trace out qubit `q`: drop every term touching q and double the rest.
    /// Matches the partial trace of the matrix representation.
    pub fn contract(&self, q: usize) -> Result<DensityOperator> {
        let n = self.n_qubits();
        if q >= n {
            return Err(Error::QubitIndex(q, n));
        }
        if n == 1 {
            return Err(Error::ContractLastQubit);
        }
        let mut out = CorrelatedElement::zero(n - 1);
        for (idx, z) in self.elem.coeffs().iter().enumerate() {
            if self.elem.digit(idx, q) != 0 {
                continue;
            }
            let mut new_idx = 0usize;
            for qq in 0..n {
                if qq == q {
                    continue;
                }
                let pos = if qq < q { qq } else { qq - 1 };
                new_idx |= self.elem.digit(idx, qq) << (2 * (n - 2 - pos));
            }
            out.set_coeff(new_idx, out.coeff(new_idx) + z * 2.0);
        }
        DensityOperator::from_element(out)
    }

    /// Spectral form rho = R (sum_k rho_k E(k)) R~ via the matrix oracle's
    /// Jacobi eigensolver. Eigenvalues come back descending, so a pure state
    /// reads (1, 0, ..., 0). Works for any reversion-symmetric element; use
    /// [`diagonalize_symmetric`] directly when the input is not a density.
    pub fn diagonalize(&self) -> Result<(Vec<f64>, CorrelatedElement)> {
        diagonalize_symmetric(&self.elem)
    }
}

/// Projector E(k) = prod_q (1 + eps_k^q sigma_z^q)/2 onto basis state |k>.
pub fn projector_ket(n: usize, k: usize) -> CorrelatedElement {
    let mut e = CorrelatedElement::identity(n);
    for q in 0..n {
        let bit = k >> (n - 1 - q) & 1;
        let sign = 1.0 - 2.0 * bit as f64;
        e = e.mul(&CorrelatedElement::e_projector(n, q, sign));
    }
    e
}

/// Diagonalize a reversion-symmetric element: eigenvalues descending plus
/// the unitary R with elem = R (sum_k lambda_k E(k)) R~.
pub fn diagonalize_symmetric(
    elem: &CorrelatedElement,
) -> Result<(Vec<f64>, CorrelatedElement)> {
    let res = elem.max_coeff_distance(&elem.reverse());
    if res > 1e-9 * elem.norm().max(1.0) {
        return Err(Error::NotReversionSymmetric(res));
    }
    let n = elem.n_qubits();
    let m = oracle::represent(elem);
    let (mut evals, mut evecs) = oracle::hermitian_eigen(&m)?;
    // ascending from Jacobi; flip to descending
    evals.reverse();
    let dim = 1 << n;
    let mut flipped = oracle::ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for col in 0..dim {
            flipped.set(r, col, evecs.get(r, dim - 1 - col));
        }
    }
    evecs = flipped;
    let rot = oracle::unrepresent(&evecs, n);
    Ok((evals, rot))
}

pub mod raw {
    //! The same objects in the uncorrelated G(N,3N) algebra, for
    //! cross-validating the quotient arithmetic.

    use super::CorrelatedElement;
    use crate::ga::{Multivector, Signature};

    /// Generator gamma_mu of particle `q` (mu: 0 = t, 1..3 = x, y, z).
    pub fn gamma(sig: &Signature, q: usize, mu: usize) -> Multivector {
        Multivector::basis_vector(sig, 4 * q + mu)
    }

    /// Relative vector sigma_mu^q = gamma_mu^q gamma_t^q.
    pub fn sigma(sig: &Signature, q: usize, mu: usize) -> Multivector {
        assert!((1..=3).contains(&mu));
        gamma(sig, q, mu).geometric_product(&gamma(sig, q, 0))
    }

    /// Particle pseudoscalar iota^q = gamma_t gamma_x gamma_y gamma_z.
    pub fn iota(sig: &Signature, q: usize) -> Multivector {
        let mut p = gamma(sig, q, 0);
        for mu in 1..4 {
            p = p.geometric_product(&gamma(sig, q, mu));
        }
        p
    }

    /// Correlator C = prod_{q>=2} (1 - iota^1 iota^q)/2.
    pub fn correlator(sig: &Signature, n: usize) -> Multivector {
        let one = Multivector::scalar(sig, 1.0);
        let i1 = iota(sig, 0);
        let mut c = one.clone();
        for q in 1..n {
            let f = one
                .sub(&i1.geometric_product(&iota(sig, q)))
                .scale(0.5);
            c = c.geometric_product(&f);
        }
        c
    }

    /// Directional correlator D = prod_{q>=2} (1 - iota^1 sigma_z^1 iota^q sigma_z^q)/2.
    pub fn directional_correlator(sig: &Signature, n: usize) -> Multivector {
        let one = Multivector::scalar(sig, 1.0);
        let k1 = iota(sig, 0).geometric_product(&sigma(sig, 0, 3));
        let mut d = one.clone();
        for q in 1..n {
            let kq = iota(sig, q).geometric_product(&sigma(sig, q, 3));
            let f = one.sub(&k1.geometric_product(&kq)).scale(0.5);
            d = d.geometric_product(&f);
        }
        d
    }

    /// Lift a quotient element to a representative in G(N,3N), mapping the
    /// identified iota to iota^1. Equality of products holds after
    /// multiplying by C.
    pub fn lift(elem: &CorrelatedElement) -> Multivector {
        let n = elem.n_qubits();
        let sig = Signature::multiparticle(n);
        let i1 = iota(&sig, 0);
        let mut out = Multivector::zero(&sig);
        for (idx, z) in elem.coeffs().iter().enumerate() {
            if z.norm() == 0.0 {
                continue;
            }
            let mut basis = Multivector::scalar(&sig, 1.0);
            for q in 0..n {
                let d = elem.digit(idx, q);
                if d != 0 {
                    basis = basis.geometric_product(&sigma(&sig, q, d));
                }
            }
            out = out.add(&basis.scale(z.re));
            out = out.add(&i1.geometric_product(&basis).scale(z.im));
        }
        out
    }
}

/// Check the lift is a homomorphism onto the correlated ideal: lifting two
/// elements, multiplying raw, and projecting with C agrees with lifting the
/// quotient product. Returns the max raw coefficient deviation.
pub fn quotient_soundness_residual(
    a: &CorrelatedElement,
    b: &CorrelatedElement,
) -> f64 {
    let n = a.n_qubits();
    let sig = Signature::multiparticle(n);
    let c = raw::correlator(&sig, n);
    let lhs = raw::lift(a)
        .geometric_product(&raw::lift(b))
        .geometric_product(&c);
    let rhs = raw::lift(&a.mul(b)).geometric_product(&c);
    lhs.max_coeff_distance(&rhs)
}
