//! Real Clifford (geometric) algebras of arbitrary signature, specialised to
//! the algebras that show up in quantum information: the Pauli algebra G(3),
//! the spacetime algebra G(1,3), and the N-particle algebra G(N,3N) whose
//! correlated ideal models N qubits.
//!
//! Everything the quotient representation computes (spinors, densities,
//! gates, channels, Schmidt factors) can be cross-checked against the
//! independent complex-matrix representation in [`oracle`], which is built
//! from nothing but the 2x2 Pauli matrices and Kronecker products.

pub mod channels;
pub mod ga;
pub mod gates;
pub mod multiqubit;
pub mod nmr;
pub mod oracle;
pub mod pauli;
pub mod schmidt;
pub mod spacetime;

/// Errors reported by fallible operations across the crate.
///
/// Dimension and signature mismatches between operands are treated as
/// programming errors and panic (as in `ndarray`); the variants here are
/// conditions a caller can plausibly hit with runtime data.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("operand is not a pure vector (grade 1)")]
    NotAVector,
    #[error("signature has no designated time generator")]
    NoTimeGenerator,
    #[error("exponential series did not converge within {0} terms")]
    ExpSeriesDiverged(usize),
    #[error("bivector argument must satisfy B^2 = -1 (got B^2 = {0})")]
    NotUnitBivector(f64),
    #[error("axis must be a unit vector (norm {0})")]
    NotUnitAxis(f64),
    #[error("element is not an even unit rotor (R~R = {0})")]
    NotARotor(f64),
    #[error("stereographic ratio undefined at p = -sigma_z")]
    SouthPole,
    #[error("polarization vector must satisfy |p| <= 1 (got {0})")]
    PolarizationTooLong(f64),
    #[error("ensemble weights must be nonnegative and sum to 1")]
    BadWeights,
    #[error("event is not timelike-compatible: e . gamma_t = {0}")]
    NotTimelike(f64),
    #[error("element is not Pauli-even (has components outside the embedded algebra)")]
    NotPauliEven,
    #[error("ket has {got} amplitudes, expected {want}")]
    KetLength { got: usize, want: usize },
    #[error("ket norm is zero")]
    ZeroKet,
    #[error("qubit index {0} out of range for {1} qubits")]
    QubitIndex(usize, usize),
    #[error("element is not unitary (U U~ differs from 1 by {0})")]
    NotUnitary(f64),
    #[error("spinor lies outside the reduced even subalgebra (residual {0})")]
    NotReduced(f64),
    #[error("element is not reversion-symmetric (residual {0})")]
    NotReversionSymmetric(f64),
    #[error("density scalar part is {0}, expected 2^-N")]
    BadScalarPart(f64),
    #[error("cannot contract a single-qubit density")]
    ContractLastQubit,
    #[error("operation is limited to two-qubit states")]
    TwoQubitsOnly,
    #[error("channel is not normal (sum Q~Q differs from 1 by {0})")]
    NotNormal(f64),
    #[error("channel is not diagonal in the Pauli basis (off-diagonal {0})")]
    NotDiagonal(f64),
    #[error("probability must lie in [0,1] (got {0})")]
    BadProbability(f64),
    #[error("matrix is not Hermitian (residual {0})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge in {0} sweeps")]
    EigenDiverged(usize),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
