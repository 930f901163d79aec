//! One-qubit quantum channels in Kraus form.
//!
//! A Kraus operator on one qubit splits as Q = A + iota B with A and B real
//! quaternions (even elements). All the structural questions about the
//! channel rho -> sum Q rho Q~ reduce to closed-form conditions on those
//! quaternion components: trace preservation, unitality, the affine action
//! on the polarization vector, and (for Pauli-diagonal channels) the
//! eigenvalue tetrahedron. Everything here is cross-checkable against the
//! direct operator products and against the matrix oracle's Choi test.

use crate::multiqubit::{Axis, CorrelatedElement, DensityOperator};
use crate::oracle::{self, ComplexMatrix};
use crate::{Error, Result};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn dot(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn cross(u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn axpy(acc: &mut [f64; 3], k: f64, v: &[f64; 3]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += k * x;
    }
}

/// Quaternion split of a one-qubit Kraus operator Q = A + iota B with
/// A = alpha + iota sigma . a and B = beta + iota sigma . b.
#[derive(Clone, Copy, Debug)]
pub struct QuaternionPair {
    pub alpha: f64,
    pub a: [f64; 3],
    pub beta: f64,
    pub b: [f64; 3],
}

impl QuaternionPair {
    /// Quaternion sandwich A r A~ on a vector:
    /// (alpha^2 - |a|^2) r + 2 (r . a) a + 2 alpha (r x a).
    fn sandwich(alpha: f64, a: &[f64; 3], r: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        axpy(&mut out, alpha * alpha - dot(a, a), r);
        axpy(&mut out, 2.0 * dot(r, a), a);
        axpy(&mut out, 2.0 * alpha, &cross(r, a));
        out
    }

    /// Vector part of Q r Q~: only the A and B sandwiches contribute.
    pub fn act(&self, r: &[f64; 3]) -> [f64; 3] {
        let mut out = Self::sandwich(self.alpha, &self.a, r);
        let other = Self::sandwich(self.beta, &self.b, r);
        axpy(&mut out, 1.0, &other);
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha * self.alpha + dot(&self.a, &self.a) + self.beta * self.beta
            + dot(&self.b, &self.b)
    }

    /// alpha b - beta a, the vector entering both structure conditions.
    pub fn mixed(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        axpy(&mut out, self.alpha, &self.b);
        axpy(&mut out, -self.beta, &self.a);
        out
    }
}

/// Affine action of a normal channel on polarization vectors:
/// p -> M p + t.
#[derive(Clone, Copy, Debug)]
pub struct AffineForm {
    pub m: [[f64; 3]; 3],
    pub t: [f64; 3],
}

impl AffineForm {
    pub fn apply(&self, p: &[f64; 3]) -> [f64; 3] {
        let mut out = self.t;
        for k in 0..3 {
            for mu in 0..3 {
                out[k] += self.m[k][mu] * p[mu];
            }
        }
        out
    }

    pub fn max_distance(&self, other: &AffineForm) -> f64 {
        let mut d = 0.0f64;
        for k in 0..3 {
            d = d.max((self.t[k] - other.t[k]).abs());
            for mu in 0..3 {
                d = d.max((self.m[k][mu] - other.m[k][mu]).abs());
            }
        }
        d
    }
}

/// A channel described by its Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    n: usize,
    ops: Vec<CorrelatedElement>,
}

impl KrausChannel {
    pub fn new(ops: Vec<CorrelatedElement>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::Invalid("channel needs at least one Kraus operator".into()));
        }
        let n = ops[0].n_qubits();
        if ops.iter().any(|q| q.n_qubits() != n) {
            return Err(Error::Invalid(
                "Kraus operators act on different qubit counts".into(),
            ));
        }
        Ok(KrausChannel { n, ops })
    }

    /// The channel of a single unitary.
    pub fn unitary(u: CorrelatedElement) -> Result<Self> {
        let dev = u.mul(&u.reverse()).distance_from_identity();
        if dev > 1e-9 {
            return Err(Error::NotUnitary(dev));
        }
        KrausChannel::new(vec![u])
    }

    /// Phase damping: {sqrt(1-p) 1, sqrt(p) E+, sqrt(p) E-}. Shrinks the
    /// equatorial polarization components by 1 - p and fixes sigma_z.
    pub fn phase_damping(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability(p));
        }
        KrausChannel::new(vec![
            CorrelatedElement::scalar(1, c((1.0 - p).sqrt(), 0.0)),
            CorrelatedElement::e_projector(1, 0, 1.0).scale_re(p.sqrt()),
            CorrelatedElement::e_projector(1, 0, -1.0).scale_re(p.sqrt()),
        ])
    }

    /// Depolarizing channel: identity with probability 1 - p, otherwise a
    /// uniformly random Pauli kick. All three eigenvalues are 1 - p.
    pub fn depolarizing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability(p));
        }
        let mut ops = vec![CorrelatedElement::scalar(1, c((1.0 - 0.75 * p).sqrt(), 0.0))];
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            ops.push(CorrelatedElement::sigma(1, axis, 0).scale_re((p / 4.0).sqrt()));
        }
        KrausChannel::new(ops)
    }

    /// Amplitude damping toward |0>: K0 = E+ + sqrt(1-p) E-,
    /// K1 = sqrt(p) (sigma_x + iota sigma_y)/2. Normal but not unital.
    pub fn amplitude_damping(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability(p));
        }
        let k0 = CorrelatedElement::e_projector(1, 0, 1.0)
            .add(&CorrelatedElement::e_projector(1, 0, -1.0).scale_re((1.0 - p).sqrt()));
        let k1 = CorrelatedElement::sigma(1, Axis::X, 0)
            .add(&CorrelatedElement::sigma(1, Axis::Y, 0).scale(c(0.0, 1.0)))
            .scale_re(p.sqrt() / 2.0);
        KrausChannel::new(vec![k0, k1])
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[CorrelatedElement] {
        &self.ops
    }

    /// sum Q e Q~ without any validity checks, for probing the linear map.
    pub fn apply_element(&self, e: &CorrelatedElement) -> CorrelatedElement {
        let mut out = CorrelatedElement::zero(self.n);
        for q in &self.ops {
            out = out.add(&q.mul(e).mul(&q.reverse()));
        }
        out
    }

    /// Apply to a density. The channel must be normal (trace preserving),
    /// otherwise the output is not a density.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        let dev = self.normal_residual();
        if dev > 1e-9 {
            return Err(Error::NotNormal(dev));
        }
        DensityOperator::from_element(self.apply_element(rho.element()))
    }

    /// Deviation of sum Q~ Q from 1 (zero for trace-preserving channels).
    pub fn normal_residual(&self) -> f64 {
        let mut s = CorrelatedElement::zero(self.n);
        for q in &self.ops {
            s = s.add(&q.reverse().mul(q));
        }
        s.distance_from_identity()
    }

    /// Deviation of sum Q Q~ from 1 (zero for unital channels).
    pub fn unital_residual(&self) -> f64 {
        let mut s = CorrelatedElement::zero(self.n);
        for q in &self.ops {
            s = s.add(&q.mul(&q.reverse()));
        }
        s.distance_from_identity()
    }

    /// Split every Kraus operator into its quaternion pair. One qubit only.
    pub fn quaternion_decompose(&self) -> Result<Vec<QuaternionPair>> {
        if self.n != 1 {
            return Err(Error::Invalid(
                "quaternion analysis applies to one-qubit channels".into(),
            ));
        }
        Ok(self
            .ops
            .iter()
            .map(|q| {
                let c0 = q.coeff(0);
                let cv = [q.coeff(1), q.coeff(2), q.coeff(3)];
                QuaternionPair {
                    alpha: c0.re,
                    beta: c0.im,
                    a: [cv[0].im, cv[1].im, cv[2].im],
                    b: [-cv[0].re, -cv[1].re, -cv[2].re],
                }
            })
            .collect())
    }

    fn structure_sums(&self) -> Result<(f64, [f64; 3], [f64; 3], [f64; 3])> {
        let pairs = self.quaternion_decompose()?;
        let mut norm = 0.0;
        let mut mixed = [0.0; 3];
        let mut ba = [0.0; 3];
        let mut ab = [0.0; 3];
        for p in &pairs {
            norm += p.norm_sqr();
            axpy(&mut mixed, 1.0, &p.mixed());
            axpy(&mut ba, 1.0, &cross(&p.b, &p.a));
            axpy(&mut ab, 1.0, &cross(&p.a, &p.b));
        }
        Ok((norm, mixed, ba, ab))
    }

    /// Normality residual from the quaternion conditions alone:
    /// sum |Q|^2 = 1 and sum (alpha b - beta a) = sum b x a.
    pub fn normal_residual_quaternion(&self) -> Result<f64> {
        let (norm, mixed, ba, _) = self.structure_sums()?;
        let mut dev: f64 = (norm - 1.0).abs();
        for k in 0..3 {
            dev = dev.max((mixed[k] - ba[k]).abs());
        }
        Ok(dev)
    }

    /// Unitality residual from the quaternion conditions alone:
    /// sum |Q|^2 = 1 and sum (alpha b - beta a) = sum a x b.
    pub fn unital_residual_quaternion(&self) -> Result<f64> {
        let (norm, mixed, _, ab) = self.structure_sums()?;
        let mut dev: f64 = (norm - 1.0).abs();
        for k in 0..3 {
            dev = dev.max((mixed[k] - ab[k]).abs());
        }
        Ok(dev)
    }

    /// Affine action p -> M p + t of a normal channel, in closed form from
    /// the quaternion pairs: the columns of M are the sandwich sums on the
    /// basis directions and t = 2 sum (a x b) - 2 sum (alpha b - beta a).
    pub fn affine_form(&self) -> Result<AffineForm> {
        let dev = self.normal_residual();
        if dev > 1e-9 {
            return Err(Error::NotNormal(dev));
        }
        let pairs = self.quaternion_decompose()?;
        let mut m = [[0.0f64; 3]; 3];
        for mu in 0..3 {
            let mut e = [0.0; 3];
            e[mu] = 1.0;
            let mut col = [0.0; 3];
            for p in &pairs {
                axpy(&mut col, 1.0, &p.act(&e));
            }
            for k in 0..3 {
                m[k][mu] = col[k];
            }
        }
        let mut t = [0.0; 3];
        for p in &pairs {
            axpy(&mut t, 2.0, &cross(&p.a, &p.b));
            axpy(&mut t, -2.0, &p.mixed());
        }
        Ok(AffineForm { m, t })
    }

    /// The same affine data measured through the matrix representation:
    /// probe the map with 1 and the Pauli matrices.
    pub fn affine_form_matrix(&self) -> Result<AffineForm> {
        let dev = self.normal_residual();
        if dev > 1e-9 {
            return Err(Error::NotNormal(dev));
        }
        if self.n != 1 {
            return Err(Error::Invalid(
                "affine analysis applies to one-qubit channels".into(),
            ));
        }
        let kraus: Vec<ComplexMatrix> =
            self.ops.iter().map(oracle::represent).collect();
        let act = |x: &ComplexMatrix| -> ComplexMatrix {
            let mut out = ComplexMatrix::zeros(2);
            for k in &kraus {
                out = out.add(&k.mul(x).mul(&k.dagger()));
            }
            out
        };
        let read_vec = |m: &ComplexMatrix| -> [f64; 3] {
            let e = oracle::unrepresent(m, 1);
            [e.coeff(1).re, e.coeff(2).re, e.coeff(3).re]
        };
        let t = read_vec(&act(&ComplexMatrix::identity(2)));
        let probes = [oracle::pauli_x(), oracle::pauli_y(), oracle::pauli_z()];
        let mut m = [[0.0f64; 3]; 3];
        for (mu, probe) in probes.iter().enumerate() {
            let col = read_vec(&act(probe));
            for k in 0..3 {
                m[k][mu] = col[k];
            }
        }
        Ok(AffineForm { m, t })
    }

    /// Eigenvalues of a Pauli-diagonal channel, read off the affine form.
    /// Errors if M has off-diagonal structure.
    pub fn diagonal_eigenvalues(&self) -> Result<[f64; 3]> {
        let aff = self.affine_form()?;
        let mut off = 0.0f64;
        for k in 0..3 {
            for mu in 0..3 {
                if k != mu {
                    off = off.max(aff.m[k][mu].abs());
                }
            }
        }
        if off > 1e-9 {
            return Err(Error::NotDiagonal(off));
        }
        Ok([aff.m[0][0], aff.m[1][1], aff.m[2][2]])
    }

    /// Closed form for the diagonal eigenvalues of a normal channel:
    /// lambda_mu = 1 - 2 sum (|a|^2 - a_mu^2 + |b|^2 - b_mu^2).
    pub fn diagonal_eigenvalues_closed_form(&self) -> Result<[f64; 3]> {
        let dev = self.normal_residual();
        if dev > 1e-9 {
            return Err(Error::NotNormal(dev));
        }
        let pairs = self.quaternion_decompose()?;
        let mut l = [1.0f64; 3];
        for p in &pairs {
            for mu in 0..3 {
                l[mu] -= 2.0
                    * (dot(&p.a, &p.a) - p.a[mu] * p.a[mu] + dot(&p.b, &p.b)
                        - p.b[mu] * p.b[mu]);
            }
        }
        Ok(l)
    }

    /// Choi matrix of the channel through the matrix oracle.
    pub fn choi_matrix(&self) -> Result<ComplexMatrix> {
        if self.n != 1 {
            return Err(Error::Invalid(
                "Choi analysis applies to one-qubit channels".into(),
            ));
        }
        let kraus: Vec<ComplexMatrix> =
            self.ops.iter().map(oracle::represent).collect();
        Ok(oracle::choi_from_action(|x| {
            let mut out = ComplexMatrix::zeros(2);
            for k in &kraus {
                out = out.add(&k.mul(x).mul(&k.dagger()));
            }
            out
        }))
    }

    /// Smallest Choi eigenvalue; nonnegative (within tolerance) exactly for
    /// completely positive maps. Kraus channels are CP by construction, so
    /// this is mainly a consistency probe.
    pub fn cp_residual_choi(&self) -> Result<f64> {
        oracle::min_eigenvalue(&self.choi_matrix()?)
    }
}

/// Barycentric coordinates of a diagonal eigenvalue triple with respect to
/// the tetrahedron spanned by the four Pauli unitaries at
/// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
pub fn tetrahedron_barycentric(l: &[f64; 3]) -> [f64; 4] {
    [
        (1.0 + l[0] + l[1] + l[2]) / 4.0,
        (1.0 + l[0] - l[1] - l[2]) / 4.0,
        (1.0 - l[0] + l[1] - l[2]) / 4.0,
        (1.0 - l[0] - l[1] + l[2]) / 4.0,
    ]
}

/// A diagonal unital channel is completely positive exactly when its
/// eigenvalue triple lies in that tetrahedron: all barycentric coordinates
/// nonnegative.
pub fn tetrahedron_check(l: &[f64; 3], tol: f64) -> bool {
    tetrahedron_barycentric(l).iter().all(|&w| w >= -tol)
}

/// Rotate a (possibly non-diagonal) affine matrix to diagonal form and
/// return the signed eigenvalue triple: M = R1 diag(l) R2 with R1, R2
/// proper rotations, magnitudes descending, and the sign of det M carried
/// by the smallest entry. Any other valid choice differs by a permutation
/// plus an even number of sign flips, and the tetrahedron is invariant
/// under exactly those moves, so the membership verdict is well defined.
pub fn signed_singular_triple(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut gram = ComplexMatrix::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for row in m {
                s += row[i] * row[j];
            }
            gram.set(i, j, c(s, 0.0));
        }
    }
    let (vals, _) = oracle::hermitian_eigen(&gram).expect("Gram matrix is symmetric");
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let sign = if det < 0.0 { -1.0 } else { 1.0 };
    [
        vals[2].max(0.0).sqrt(),
        vals[1].max(0.0).sqrt(),
        sign * vals[0].max(0.0).sqrt(),
    ]
}

/// Smallest Choi eigenvalue of an affine map given directly by (M, t),
/// without Kraus operators. Used to test complete positivity of maps that
/// may not be channels at all.
pub fn affine_choi_min_eigenvalue(aff: &AffineForm) -> Result<f64> {
    let sig = [oracle::pauli_x(), oracle::pauli_y(), oracle::pauli_z()];
    let action = |x: &ComplexMatrix| -> ComplexMatrix {
        let e = oracle::unrepresent(x, 1);
        let c0 = e.coeff(0);
        let cv = [e.coeff(1), e.coeff(2), e.coeff(3)];
        let mut out = ComplexMatrix::identity(2).scale(c0);
        for k in 0..3 {
            let mut w = c0 * aff.t[k];
            for mu in 0..3 {
                w += cv[mu] * aff.m[k][mu];
            }
            out = out.add(&sig[k].scale(w));
        }
        out
    };
    oracle::min_eigenvalue(&oracle::choi_from_action(action))
}

/// Transpose one qubit of a two-qubit density in the computational basis:
/// flip the sign of every sigma_y factor on that qubit. The result stays
/// reversion-symmetric but can fail to be positive, which witnesses
/// entanglement.
pub fn partial_transpose(rho: &DensityOperator, q: usize) -> Result<CorrelatedElement> {
    if rho.n_qubits() != 2 {
        return Err(Error::TwoQubitsOnly);
    }
    if q >= 2 {
        return Err(Error::QubitIndex(q, 2));
    }
    let mut out = CorrelatedElement::zero(2);
    for (idx, z) in rho.element().coeffs().iter().enumerate() {
        let sign = if rho.element().digit(idx, q) == Axis::Y.digit() {
            -1.0
        } else {
            1.0
        };
        out.set_coeff(idx, z * sign);
    }
    Ok(out)
}

/// Smallest eigenvalue of the partial transpose; negative values witness
/// entanglement.
pub fn partial_transpose_min_eigenvalue(rho: &DensityOperator, q: usize) -> Result<f64> {
    let pt = partial_transpose(rho, q)?;
    oracle::min_eigenvalue(&oracle::represent(&pt))
}

/// Parse a channel file: Kraus operators separated by `op` lines, each a
/// list of product-operator terms with a complex coefficient:
///
/// ```text
/// # phase flip with p = 1/2
/// op
/// term 1 : 0.7071067811865476 0
/// op
/// term sz^1 : 0.7071067811865476 0
/// ```
///
/// Factors may be written `sx^1` or with the Greek letter, `σx^1`.
pub fn parse_channel(text: &str, n: usize, path: &str) -> Result<KrausChannel> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut ops: Vec<CorrelatedElement> = Vec::new();
    let mut current: Option<CorrelatedElement> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.eq_ignore_ascii_case("op") {
            if let Some(done) = current.take() {
                ops.push(done);
            }
            current = Some(CorrelatedElement::zero(n));
            continue;
        }
        let rest = match line.strip_prefix("term") {
            Some(r) => r,
            None => {
                return Err(err(
                    line_no,
                    format!("expected 'op' or 'term ... : re im', got '{line}'"),
                ));
            }
        };
        let target = current.as_mut().ok_or_else(|| {
            err(line_no, "term before the first 'op' line".into())
        })?;
        let (factors, value) = rest.split_once(':').ok_or_else(|| {
            err(line_no, "term needs a ':' before the coefficient".into())
        })?;
        let nums: Vec<&str> = value.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(err(
                line_no,
                "coefficient must be two numbers (re im)".into(),
            ));
        }
        let re: f64 = nums[0]
            .parse()
            .map_err(|_| err(line_no, format!("bad number '{}'", nums[0])))?;
        let im: f64 = nums[1]
            .parse()
            .map_err(|_| err(line_no, format!("bad number '{}'", nums[1])))?;
        let mut idx = 0usize;
        let mut seen = vec![false; n];
        for tok in factors.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let tok_ascii = tok.strip_prefix('σ').map(|r| format!("s{r}"));
            let tok = tok_ascii.as_deref().unwrap_or(tok);
            let (axis, qubit) = tok
                .strip_prefix('s')
                .and_then(|r| r.split_once('^'))
                .and_then(|(ax, qs)| {
                    let axis = match ax {
                        "x" => Axis::X,
                        "y" => Axis::Y,
                        "z" => Axis::Z,
                        _ => return None,
                    };
                    qs.parse::<usize>().ok().map(|q| (axis, q))
                })
                .ok_or_else(|| {
                    err(line_no, format!("bad factor '{tok}'"))
                })?;
            if qubit == 0 || qubit > n {
                return Err(err(
                    line_no,
                    format!("qubit {qubit} out of range 1..={n}"),
                ));
            }
            if seen[qubit - 1] {
                return Err(err(
                    line_no,
                    format!("qubit {qubit} used twice in one term"),
                ));
            }
            seen[qubit - 1] = true;
            idx |= axis.digit() << (2 * (n - qubit));
        }
        let prev = target.coeff(idx);
        target.set_coeff(idx, prev + c(re, im));
    }
    if let Some(done) = current.take() {
        ops.push(done);
    }
    if ops.is_empty() {
        return Err(Error::Parse {
            path: path.to_string(),
            line: 0,
            msg: "channel file defines no Kraus operators".into(),
        });
    }
    KrausChannel::new(ops)
}
