//! Two-qubit entanglement analysis.
//!
//! Every unit two-qubit spinor factors, up to a global phase, as
//! R1 S2 P T D: local rotors on each qubit, a phase factor
//! P = exp(-tau K/2), and the tangler
//! T = cos(tangle/2) - sin(tangle/2) sy^1 sy^2 K, with K = iota sz^1.
//! At the ket level this is the Schmidt decomposition, which is the
//! singular value decomposition of the 2x2 amplitude matrix in disguise.
//! The tangle angle alone measures entanglement, and it can be read off
//! the invariant product Psi~ Psi without any matrix work.

use crate::gates;
use crate::multiqubit::{directional_correlator, Axis, CorrelatedElement, Spinor};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Map an angle into (-pi, pi].
fn wrap_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// The factors of a two-qubit spinor. The angles describe the ket-level
/// Schmidt expansion directly:
///
/// ```text
/// cos(tangle/2) e^{i phase/2} [cos(polar1/2) e^{ i azimuth1/2}]   [ .. qubit 2 .. ]
///                             [sin(polar1/2) e^{-i azimuth1/2}] x [    likewise   ]
/// + sin(tangle/2) e^{-i phase/2} (orthogonal pair)
/// ```
///
/// with the orthogonal partner of [cos e^{ia/2}; sin e^{-ia/2}] taken as
/// [sin e^{ia/2}; -cos e^{-ia/2}].
#[derive(Clone, Copy, Debug)]
pub struct SchmidtFactors {
    /// Polar angle of the first Schmidt vector on qubit 0, in [0, pi].
    pub polar1: f64,
    /// Azimuthal angle on qubit 0, in (-pi, pi].
    pub azimuth1: f64,
    /// Polar angle on qubit 1.
    pub polar2: f64,
    /// Azimuthal angle on qubit 1.
    pub azimuth2: f64,
    /// Tangle angle in [0, pi/2]; 0 is a product state, pi/2 maximal
    /// entanglement. The singular values are cos(tangle/2) >= sin(tangle/2).
    pub tangle: f64,
    /// Relative phase between the two Schmidt terms, in (-pi, pi].
    pub phase: f64,
}

impl SchmidtFactors {
    /// Singular values (v11, v22) of the amplitude matrix.
    pub fn singular_values(&self) -> (f64, f64) {
        ((self.tangle / 2.0).cos(), (self.tangle / 2.0).sin())
    }
}

/// K = iota sz^1: right multiplication by it turns a ket by i.
fn k_element() -> CorrelatedElement {
    CorrelatedElement::sigma(2, Axis::Z, 0).scale(c(0.0, 1.0))
}

/// The phase factor P = exp(-tau K / 2) = cos(tau/2) - sin(tau/2) K.
pub fn phase_element(tau: f64) -> CorrelatedElement {
    CorrelatedElement::scalar(2, c((tau / 2.0).cos(), 0.0))
        .sub(&k_element().scale_re((tau / 2.0).sin()))
}

/// The tangler T = cos(tangle/2) - sin(tangle/2) sy^1 sy^2 K.
pub fn tangler_element(tangle: f64) -> CorrelatedElement {
    let y = CorrelatedElement::sigma(2, Axis::Y, 0)
        .mul(&CorrelatedElement::sigma(2, Axis::Y, 1));
    CorrelatedElement::scalar(2, c((tangle / 2.0).cos(), 0.0))
        .sub(&y.mul(&k_element()).scale_re((tangle / 2.0).sin()))
}

/// Assemble the spinor R1 S2 P T D from its factors. The rotor azimuths
/// and the phase enter with compensating signs so that the resulting ket
/// equals the Schmidt expansion of the factors exactly, with no leftover
/// global phase.
pub fn reconstruct(f: &SchmidtFactors) -> Result<Spinor> {
    let r1 = gates::rotation_gate(2, 0, Axis::Z, -f.azimuth1)?
        .mul(&gates::rotation_gate(2, 0, Axis::Y, f.polar1)?);
    let s2 = gates::rotation_gate(2, 1, Axis::Z, -f.azimuth2)?
        .mul(&gates::rotation_gate(2, 1, Axis::Y, f.polar2)?);
    let p = phase_element(-f.phase - FRAC_PI_2);
    let t = tangler_element(f.tangle);
    let elem = r1
        .mul(&s2)
        .mul(&p)
        .mul(&t)
        .mul(&directional_correlator(2))
        .mul(&phase_element(FRAC_PI_2));
    Spinor::new(elem)
}

/// Split a unit 2-vector into polar form
/// e^{i base} [cos(theta/2) e^{i phi/2}; sin(theta/2) e^{-i phi/2}].
fn polar_split(z: &[Complex64; 2]) -> (f64, f64, f64) {
    let (a0, a1) = (z[0].norm(), z[1].norm());
    let theta = 2.0 * a1.atan2(a0);
    if a1 < 1e-14 {
        return (theta, 0.0, z[0].arg());
    }
    if a0 < 1e-14 {
        return (theta, 0.0, z[1].arg());
    }
    let phi = wrap_angle((z[0] * z[1].conj()).arg());
    let base = z[0].arg() - phi / 2.0;
    (theta, phi, base)
}


/// Factor a two-qubit spinor. The amplitude matrix (rows indexed by qubit
/// 0, columns by qubit 1) is diagonalized by a closed-form 2x2 singular
/// value decomposition; the ordering cos(tangle/2) >= sin(tangle/2) is
/// always enforced. In the degenerate case the basis is fixed
/// deterministically by the eigenvector branch rules below.
pub fn schmidt_decompose(psi: &Spinor) -> Result<SchmidtFactors> {
    if psi.n_qubits() != 2 {
        return Err(Error::TwoQubitsOnly);
    }
    let ket = psi.to_ket();
    let nrm = ket.norm();
    if nrm < 1e-12 {
        return Err(Error::ZeroKet);
    }
    let a = ket.amps();
    let m = [
        [a[0] / nrm, a[1] / nrm],
        [a[2] / nrm, a[3] / nrm],
    ];

    // H = M^dag M, a 2x2 Hermitian matrix with a closed-form eigensystem
    let h00 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let h11 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let h01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let mean = (h00 + h11) / 2.0;
    let disc = ((h00 - h11) / 2.0).hypot(h01.norm());
    let v1 = (mean + disc).max(0.0).sqrt();
    // the small singular value through lambda_min of H loses half the
    // digits to cancellation; |det M| = v1 v2 recovers it at full precision
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let v2 = (det.norm() / v1).min(v1);

    // eigenvector of H for the larger eigenvalue: take whichever of the
    // two row formulas is better conditioned
    let lp = mean + disc;
    let cand_a = [h01, c(lp - h00, 0.0)];
    let cand_b = [c(lp - h11, 0.0), h01.conj()];
    let na = cand_a[0].norm_sqr() + cand_a[1].norm_sqr();
    let nb = cand_b[0].norm_sqr() + cand_b[1].norm_sqr();
    let (raw, nn) = if na >= nb { (cand_a, na) } else { (cand_b, nb) };
    let w1 = if nn.sqrt() > 1e-14 * (h00 + h11).max(1.0) {
        let s = 1.0 / nn.sqrt();
        [raw[0] * s, raw[1] * s]
    } else if h00 >= h11 {
        // H is (nearly) a multiple of the identity: any basis works;
        // pick the computational one for determinism
        [c(1.0, 0.0), c(0.0, 0.0)]
    } else {
        [c(0.0, 0.0), c(1.0, 0.0)]
    };
    // left vectors: M w_i = v_i u_i (v1 >= 1/sqrt(2) for a unit ket)
    let mv = |w: &[Complex64; 2]| {
        [
            m[0][0] * w[0] + m[0][1] * w[1],
            m[1][0] * w[0] + m[1][1] * w[1],
        ]
    };
    let mw1 = mv(&w1);
    let u1 = [mw1[0] / v1, mw1[1] / v1];

    let (polar1, azimuth1, base_a) = polar_split(&u1);
    let w1bar = [w1[0].conj(), w1[1].conj()];
    let (polar2, azimuth2, base_b) = polar_split(&w1bar);

    // Relative phase of the second Schmidt term, read from the overlap
    // of psi with the orthogonal pair. The overlap has magnitude v2, so
    // its phase error and its weight in the state cancel: no conditioning
    // problem near product states.
    let half1 = Complex64::from_polar(1.0, azimuth1 / 2.0);
    let half2 = Complex64::from_polar(1.0, azimuth2 / 2.0);
    let rp = [
        half1 * (polar1 / 2.0).sin(),
        -(polar1 / 2.0).cos() / half1,
    ];
    let sp = [
        half2 * (polar2 / 2.0).sin(),
        -(polar2 / 2.0).cos() / half2,
    ];
    let mut overlap = c(0.0, 0.0);
    for j in 0..2 {
        for k in 0..2 {
            overlap += (rp[j] * sp[k]).conj() * m[j][k];
        }
    }
    let phase = if overlap.norm() > 1e-13 {
        wrap_angle(base_a + base_b - overlap.arg())
    } else {
        0.0
    };

    Ok(SchmidtFactors {
        polar1,
        azimuth1,
        polar2,
        azimuth2,
        tangle: 2.0 * v2.atan2(v1),
        phase,
    })
}

/// Entanglement measured without any matrix algebra: Psi~ Psi equals
/// (1 - sin(tangle) e^{-2gK} sy^1 sy^2 K) D, where g is the global ket
/// phase, so the tangle angle falls out of two coefficients. The phase
/// reported alongside is not invariant (a global phase shifts it); it is
/// taken from the factorization for convenience.
pub fn tangle_invariant(psi: &Spinor) -> Result<(f64, f64)> {
    if psi.n_qubits() != 2 {
        return Err(Error::TwoQubitsOnly);
    }
    let x = psi.element().reverse().mul(psi.element());
    let s0 = x.coeff(0).re;
    if s0 < 1e-24 {
        return Err(Error::ZeroKet);
    }
    // coefficients of sx^1 sy^2 and sy^1 sy^2
    let u = x.coeff(6).re;
    let v = x.coeff(10).re;
    let sin_tangle = (u.hypot(v) / s0).min(1.0);
    let tau = schmidt_decompose(psi)?.phase;
    Ok((sin_tangle.asin(), tau))
}

/// A spinor is a product of one-qubit states exactly when its smaller
/// singular value sin(tangle/2) vanishes.
pub fn is_product_state(psi: &Spinor, tol: f64) -> Result<bool> {
    let f = schmidt_decompose(psi)?;
    Ok((f.tangle / 2.0).sin() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{self, GateOp};
    use crate::multiqubit::Ket;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_ket(rng: &mut ChaCha8Rng) -> Ket {
        loop {
            let amps: Vec<Complex64> = (0..4)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let k = Ket::new(2, amps).unwrap();
            if k.norm() > 0.3 {
                return k.normalized().unwrap();
            }
        }
    }

    /// The ket-level Schmidt expansion, written out literally.
    fn expansion_ket(f: &SchmidtFactors) -> Ket {
        let e = |x: f64| Complex64::from_polar(1.0, x);
        let r = [
            e(f.azimuth1 / 2.0) * (f.polar1 / 2.0).cos(),
            e(-f.azimuth1 / 2.0) * (f.polar1 / 2.0).sin(),
        ];
        let rp = [
            e(f.azimuth1 / 2.0) * (f.polar1 / 2.0).sin(),
            -e(-f.azimuth1 / 2.0) * (f.polar1 / 2.0).cos(),
        ];
        let s = [
            e(f.azimuth2 / 2.0) * (f.polar2 / 2.0).cos(),
            e(-f.azimuth2 / 2.0) * (f.polar2 / 2.0).sin(),
        ];
        let sp = [
            e(f.azimuth2 / 2.0) * (f.polar2 / 2.0).sin(),
            -e(-f.azimuth2 / 2.0) * (f.polar2 / 2.0).cos(),
        ];
        let (v1, v2) = f.singular_values();
        let c1 = v1 * e(f.phase / 2.0);
        let c2 = v2 * e(-f.phase / 2.0);
        let mut amps = vec![c(0.0, 0.0); 4];
        for j in 0..2 {
            for k in 0..2 {
                amps[2 * j + k] = c1 * r[j] * s[k] + c2 * rp[j] * sp[k];
            }
        }
        Ket::new(2, amps).unwrap()
    }

    fn random_factors(rng: &mut ChaCha8Rng) -> SchmidtFactors {
        SchmidtFactors {
            polar1: rng.gen_range(0.3..2.8),
            azimuth1: rng.gen_range(-3.0..3.0),
            polar2: rng.gen_range(0.3..2.8),
            azimuth2: rng.gen_range(-3.0..3.0),
            tangle: rng.gen_range(0.1..FRAC_PI_2 - 0.1),
            phase: rng.gen_range(-3.0..3.0),
        }
    }

    #[test]
    fn basis_kets_are_products() {
        for bits in 0..4 {
            let psi = Spinor::from_ket(&Ket::basis(2, bits)).unwrap();
            let f = schmidt_decompose(&psi).unwrap();
            assert!(f.tangle.abs() < 1e-12);
            assert!(is_product_state(&psi, 1e-8).unwrap());
        }
        // all-zero factors reproduce the |00> spinor, which is D itself
        let f = SchmidtFactors {
            polar1: 0.0,
            azimuth1: 0.0,
            polar2: 0.0,
            azimuth2: 0.0,
            tangle: 0.0,
            phase: 0.0,
        };
        let psi = reconstruct(&f).unwrap();
        assert!(
            psi.element()
                .max_coeff_distance(&directional_correlator(2))
                < 1e-12
        );
    }

    #[test]
    fn singlet_is_maximally_tangled() {
        let ops = [
            GateOp::Hadamard { q: 0 },
            GateOp::Cnot {
                control: 0,
                target: 1,
            },
        ];
        let ket = gates::run_circuit(&ops, &Ket::basis(2, 0b11)).unwrap();
        let psi = Spinor::from_ket(&ket).unwrap();
        let f = schmidt_decompose(&psi).unwrap();
        assert!((f.tangle - FRAC_PI_2).abs() < 1e-12);
        let (v1, v2) = f.singular_values();
        assert!((v1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((v2 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(!is_product_state(&psi, 1e-8).unwrap());
        let back = reconstruct(&f).unwrap();
        assert!(back.to_ket().density_distance(&ket) < 1e-12);
        let (tangle, _) = tangle_invariant(&psi).unwrap();
        assert!((tangle - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn reconstruct_matches_the_written_out_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(211);
        for _ in 0..60 {
            let f = random_factors(&mut rng);
            let direct = expansion_ket(&f);
            let via_ga = reconstruct(&f).unwrap().to_ket();
            // exact agreement, not merely up to phase
            assert!(via_ga.max_distance(&direct) < 1e-12);
        }
    }

    #[test]
    fn factors_are_recovered_from_generic_spinors() {
        let mut rng = ChaCha8Rng::seed_from_u64(223);
        for _ in 0..40 {
            let f = random_factors(&mut rng);
            let psi = reconstruct(&f).unwrap();
            let g = schmidt_decompose(&psi).unwrap();
            assert!((f.polar1 - g.polar1).abs() < 1e-9);
            assert!(wrap_angle(f.azimuth1 - g.azimuth1).abs() < 1e-9);
            assert!((f.polar2 - g.polar2).abs() < 1e-9);
            assert!(wrap_angle(f.azimuth2 - g.azimuth2).abs() < 1e-9);
            assert!((f.tangle - g.tangle).abs() < 1e-9);
            assert!(wrap_angle(f.phase - g.phase).abs() < 1e-8);
        }
    }

    #[test]
    fn roundtrip_preserves_the_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(227);
        for _ in 0..150 {
            let ket = random_ket(&mut rng);
            let psi = Spinor::from_ket(&ket).unwrap();
            let f = schmidt_decompose(&psi).unwrap();
            let back = reconstruct(&f).unwrap();
            assert!(back.to_ket().density_distance(&ket) < 1e-10);
        }
    }

    #[test]
    fn tangle_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(229);
        for _ in 0..100 {
            let ket = random_ket(&mut rng);
            let psi = Spinor::from_ket(&ket).unwrap();
            let f = schmidt_decompose(&psi).unwrap();
            let (tangle, _) = tangle_invariant(&psi).unwrap();
            assert!((f.tangle - tangle).abs() < 1e-10);
        }
    }

    #[test]
    fn invariant_product_has_the_predicted_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(233);
        for _ in 0..40 {
            let ket = random_ket(&mut rng);
            let psi = Spinor::from_ket(&ket).unwrap();
            let x = psi.element().reverse().mul(psi.element());
            // support {1, zz, xx, xy, yx, yy} with pairwise ties
            assert!((x.coeff(0).re - 0.5).abs() < 1e-12);
            assert!((x.coeff(15) - x.coeff(0)).norm() < 1e-12);
            assert!((x.coeff(9) - x.coeff(6)).norm() < 1e-12);
            assert!((x.coeff(5) + x.coeff(10)).norm() < 1e-12);
            for idx in 0..16 {
                assert!(x.coeff(idx).im.abs() < 1e-12);
                if ![0, 5, 6, 9, 10, 15].contains(&idx) {
                    assert!(x.coeff(idx).norm() < 1e-12);
                }
            }
            // stripping the global phase leaves the tangler squared
            let two_g = x.coeff(10).re.atan2(x.coeff(6).re);
            let strip = phase_element(-two_g);
            let stripped = strip.mul(&x).mul(&strip.reverse());
            let (tangle, _) = tangle_invariant(&psi).unwrap();
            let t = tangler_element(tangle);
            let want = t.mul(&t).mul(&directional_correlator(2));
            assert!(stripped.max_coeff_distance(&want) < 1e-10);
        }
    }

    #[test]
    fn tangle_is_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(239);
        for _ in 0..40 {
            let ket = random_ket(&mut rng);
            let psi = Spinor::from_ket(&ket).unwrap();
            let mut u = CorrelatedElement::identity(2);
            for q in 0..2 {
                for axis in [Axis::Z, Axis::Y, Axis::X] {
                    u = u.mul(
                        &gates::rotation_gate(2, q, axis, rng.gen_range(-3.0..3.0))
                            .unwrap(),
                    );
                }
            }
            let moved = psi.apply_unitary(&u).unwrap();
            let f0 = schmidt_decompose(&psi).unwrap();
            let f1 = schmidt_decompose(&moved).unwrap();
            assert!((f0.tangle - f1.tangle).abs() < 1e-10);
            let (t0, _) = tangle_invariant(&psi).unwrap();
            let (t1, _) = tangle_invariant(&moved).unwrap();
            assert!((t0 - t1).abs() < 1e-10);
        }
    }

    #[test]
    fn product_states_are_classified_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(241);
        for _ in 0..50 {
            // product of two random one-qubit states
            let a = [
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ];
            let b = [
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ];
            if (a[0].norm_sqr() + a[1].norm_sqr()) < 0.1
                || (b[0].norm_sqr() + b[1].norm_sqr()) < 0.1
            {
                continue;
            }
            let amps = vec![a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
            let ket = Ket::new(2, amps).unwrap().normalized().unwrap();
            let psi = Spinor::from_ket(&ket).unwrap();
            assert!(is_product_state(&psi, 1e-8).unwrap());
        }
        // a slightly entangled state is already not a product
        let eps = 0.1;
        let ket = Ket::new(
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(eps, 0.0)],
        )
        .unwrap()
        .normalized()
        .unwrap();
        let psi = Spinor::from_ket(&ket).unwrap();
        assert!(!is_product_state(&psi, 1e-6).unwrap());
        let f = schmidt_decompose(&psi).unwrap();
        let expect = eps / (1.0 + eps * eps).sqrt();
        assert!(((f.tangle / 2.0).sin() - expect).abs() < 1e-10);
    }

    #[test]
    fn maximal_tangler_is_a_product_of_quarter_turns() {
        // at tangle pi the tangler collapses to a pair of y-rotations
        // times K
        let t = tangler_element(PI);
        let alt = gates::rotation_gate(2, 0, Axis::Y, PI)
            .unwrap()
            .mul(&gates::rotation_gate(2, 1, Axis::Y, PI).unwrap())
            .mul(&k_element());
        assert!(t.max_coeff_distance(&alt) < 1e-15);
    }

    #[test]
    fn equal_superposition_of_00_and_11() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket = Ket::new(
            2,
            vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
        )
        .unwrap();
        let psi = Spinor::from_ket(&ket).unwrap();
        let f = schmidt_decompose(&psi).unwrap();
        assert!((f.tangle - FRAC_PI_2).abs() < 1e-12);
        assert!(f.polar1.abs() < 1e-12 && f.polar2.abs() < 1e-12);
        assert!(f.phase.abs() < 1e-12);
        let back = reconstruct(&f).unwrap().to_ket();
        assert!(back.max_distance(&ket) < 1e-12);
    }

    #[test]
    fn wrong_sizes_are_rejected() {
        let one = Spinor::from_ket(&Ket::basis(1, 0)).unwrap();
        assert!(matches!(
            schmidt_decompose(&one),
            Err(Error::TwoQubitsOnly)
        ));
        assert!(matches!(
            tangle_invariant(&one),
            Err(Error::TwoQubitsOnly)
        ));
        let zero = Spinor::new(CorrelatedElement::zero(2)).unwrap();
        assert!(matches!(schmidt_decompose(&zero), Err(Error::ZeroKet)));
    }

    proptest! {
        #[test]
        fn decomposition_always_roundtrips(
            re in proptest::collection::vec(-1.0f64..1.0, 4),
            im in proptest::collection::vec(-1.0f64..1.0, 4),
        ) {
            let amps: Vec<Complex64> =
                re.iter().zip(&im).map(|(&x, &y)| c(x, y)).collect();
            let ket = Ket::new(2, amps).unwrap();
            prop_assume!(ket.norm() > 0.2);
            let ket = ket.normalized().unwrap();
            let psi = Spinor::from_ket(&ket).unwrap();
            let f = schmidt_decompose(&psi).unwrap();
            prop_assert!((f.tangle / 2.0).cos() >= (f.tangle / 2.0).sin() - 1e-12);
            let back = reconstruct(&f).unwrap();
            prop_assert!(back.to_ket().density_distance(&ket) < 1e-9);
        }
    }
}
