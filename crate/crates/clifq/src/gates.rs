//! Quantum gates as elements of the correlated algebra, plus a small text
//! format for gate sequences.
//!
//! Because states are projective, gates carry whatever global phase makes
//! their algebraic form simplest: NOT is iota sigma_x (a half turn), the
//! Hadamard element squares to -1, and the CNOT element represents as
//! exp(i pi/4) times the usual permutation matrix. Every constructor
//! returns an exactly unitary element, so circuits can be checked against
//! the matrix representation phase for phase.

use crate::multiqubit::{Axis, CorrelatedElement, Ket, Spinor};
use crate::{Error, Result};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_qubit(n: usize, q: usize) -> Result<()> {
    if q >= n {
        return Err(Error::QubitIndex(q, n));
    }
    Ok(())
}

/// NOT (bit flip): iota sigma_x^q, a half turn about x.
pub fn not_gate(n: usize, q: usize) -> Result<CorrelatedElement> {
    check_qubit(n, q)?;
    Ok(CorrelatedElement::sigma(n, Axis::X, q).scale(c(0.0, 1.0)))
}

/// Hadamard: iota (sigma_x + sigma_z)/sqrt(2). Squares to -1, so it is an
/// involution projectively; it represents as i times the usual matrix.
pub fn hadamard(n: usize, q: usize) -> Result<CorrelatedElement> {
    check_qubit(n, q)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(CorrelatedElement::sigma(n, Axis::X, q)
        .add(&CorrelatedElement::sigma(n, Axis::Z, q))
        .scale(c(0.0, s)))
}

/// Rotation by `angle` about a Pauli axis of one qubit:
/// exp(-iota angle sigma^q / 2) = cos(angle/2) - iota sin(angle/2) sigma^q.
pub fn rotation_gate(n: usize, q: usize, axis: Axis, angle: f64) -> Result<CorrelatedElement> {
    check_qubit(n, q)?;
    let half = angle / 2.0;
    Ok(CorrelatedElement::scalar(n, c(half.cos(), 0.0))
        .add(&CorrelatedElement::sigma(n, axis, q).scale(c(0.0, -half.sin()))))
}

/// Relative phase gate: E+^q + e^(i angle) E-^q, which represents as
/// diag(1, e^(i angle)) on the target qubit.
pub fn phase_gate(n: usize, q: usize, angle: f64) -> Result<CorrelatedElement> {
    check_qubit(n, q)?;
    let eplus = CorrelatedElement::e_projector(n, q, 1.0);
    let eminus = CorrelatedElement::e_projector(n, q, -1.0);
    Ok(eplus.add(&eminus.scale(Complex64::from_polar(1.0, angle))))
}

/// Controlled NOT: (1 + iota sigma_z^c)/sqrt(2) (E+^c + E-^c iota sigma_x^t).
/// Represents as exp(i pi/4) times the permutation matrix.
pub fn cnot(n: usize, control: usize, target: usize) -> Result<CorrelatedElement> {
    check_qubit(n, control)?;
    check_qubit(n, target)?;
    if control == target {
        return Err(Error::Invalid(
            "cnot control and target must differ".into(),
        ));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phase = CorrelatedElement::identity(n)
        .add(&CorrelatedElement::sigma(n, Axis::Z, control).scale(c(0.0, 1.0)))
        .scale_re(s);
    let flip = CorrelatedElement::e_projector(n, control, 1.0).add(
        &CorrelatedElement::e_projector(n, control, -1.0)
            .mul(&CorrelatedElement::sigma(n, Axis::X, target).scale(c(0.0, 1.0))),
    );
    Ok(phase.mul(&flip))
}

/// The same gate as a single exponential, exp(-iota pi (P - 1/4)) with
/// P = E-^c (1 - sigma_x^t)/2. P is idempotent, so the series telescopes to
/// exp(i pi/4)(1 - 2P).
pub fn cnot_exponential(n: usize, control: usize, target: usize) -> Result<CorrelatedElement> {
    check_qubit(n, control)?;
    check_qubit(n, target)?;
    if control == target {
        return Err(Error::Invalid(
            "cnot control and target must differ".into(),
        ));
    }
    let p = CorrelatedElement::e_projector(n, control, -1.0).mul(
        &CorrelatedElement::identity(n)
            .sub(&CorrelatedElement::sigma(n, Axis::X, target))
            .scale_re(0.5),
    );
    let pi = std::f64::consts::PI;
    let arg = p
        .scale(c(0.0, -pi))
        .add(&CorrelatedElement::scalar(n, c(0.0, pi / 4.0)));
    arg.exp()
}

/// Conjugate a gate by the Hadamard of one qubit: H^q U H^q (H is its own
/// inverse up to sign, and the sandwich with H~ = -H cancels that sign).
pub fn conjugate_by_hadamard(u: &CorrelatedElement, q: usize) -> Result<CorrelatedElement> {
    let n = u.n_qubits();
    let h = hadamard(n, q)?;
    Ok(h.mul(u).mul(&h.reverse()))
}

/// One instruction of a gate sequence. Qubits are stored 0-based; the text
/// format is 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    Hadamard { q: usize },
    Not { q: usize },
    Cnot { control: usize, target: usize },
    Rot { q: usize, axis: Axis, angle: f64 },
    Phase { q: usize, angle: f64 },
}

/// Element of a single instruction.
pub fn gate_element(op: &GateOp, n: usize) -> Result<CorrelatedElement> {
    match *op {
        GateOp::Hadamard { q } => hadamard(n, q),
        GateOp::Not { q } => not_gate(n, q),
        GateOp::Cnot { control, target } => cnot(n, control, target),
        GateOp::Rot { q, axis, angle } => rotation_gate(n, q, axis, angle),
        GateOp::Phase { q, angle } => phase_gate(n, q, angle),
    }
}

/// Element of a whole sequence, first instruction applied first.
pub fn circuit_element(ops: &[GateOp], n: usize) -> Result<CorrelatedElement> {
    let mut u = CorrelatedElement::identity(n);
    for op in ops {
        u = gate_element(op, n)?.mul(&u);
    }
    Ok(u)
}

/// Run a gate sequence on a ket through the spinor representation.
pub fn run_circuit(ops: &[GateOp], ket: &Ket) -> Result<Ket> {
    let n = ket.n_qubits();
    let mut psi = Spinor::from_ket(ket)?;
    for op in ops {
        psi = psi.apply_unitary(&gate_element(op, n)?)?;
    }
    Ok(psi.to_ket())
}

/// Parse a gate-sequence file. One instruction per line, qubits 1-based:
///
/// ```text
/// # comments and blank lines are skipped
/// H 1
/// NOT 2
/// CNOT 1 2
/// ROT 2 axis=y angle=0.7853981633974483
/// PHASE 1 angle=1.5707963267948966
/// ```
pub fn parse_circuit(text: &str, n: usize, path: &str) -> Result<Vec<GateOp>> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let parse_qubit = |tok: &str, line: usize| -> Result<usize> {
        let q: usize = tok
            .parse()
            .map_err(|_| err(line, format!("bad qubit index '{tok}'")))?;
        if q == 0 || q > n {
            return Err(err(
                line,
                format!("qubit {q} out of range 1..={n}"),
            ));
        }
        Ok(q - 1)
    };
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let mnemonic = toks[0].to_ascii_uppercase();
        // key=value arguments after the positional ones
        let kv = |key: &str| -> Option<&str> {
            toks.iter()
                .filter_map(|t| t.split_once('='))
                .find(|(k, _)| *k == key)
                .map(|(_, v)| v)
        };
        let angle = |line_no: usize| -> Result<f64> {
            let v = kv("angle")
                .ok_or_else(|| err(line_no, "missing angle=".into()))?;
            v.parse()
                .map_err(|_| err(line_no, format!("bad angle '{v}'")))
        };
        let op = match mnemonic.as_str() {
            "H" | "NOT" => {
                if toks.len() != 2 {
                    return Err(err(line_no, format!("{mnemonic} takes one qubit")));
                }
                let q = parse_qubit(toks[1], line_no)?;
                if mnemonic == "H" {
                    GateOp::Hadamard { q }
                } else {
                    GateOp::Not { q }
                }
            }
            "CNOT" => {
                if toks.len() != 3 {
                    return Err(err(line_no, "CNOT takes control and target".into()));
                }
                let control = parse_qubit(toks[1], line_no)?;
                let target = parse_qubit(toks[2], line_no)?;
                if control == target {
                    return Err(err(line_no, "control and target must differ".into()));
                }
                GateOp::Cnot { control, target }
            }
            "ROT" => {
                if toks.len() < 2 {
                    return Err(err(line_no, "ROT takes a qubit".into()));
                }
                let q = parse_qubit(toks[1], line_no)?;
                let axis_tok = kv("axis")
                    .ok_or_else(|| err(line_no, "missing axis=".into()))?;
                let axis = match axis_tok {
                    "x" => Axis::X,
                    "y" => Axis::Y,
                    "z" => Axis::Z,
                    other => {
                        return Err(err(line_no, format!("bad axis '{other}'")))
                    }
                };
                GateOp::Rot {
                    q,
                    axis,
                    angle: angle(line_no)?,
                }
            }
            "PHASE" => {
                if toks.len() < 2 {
                    return Err(err(line_no, "PHASE takes a qubit".into()));
                }
                GateOp::Phase {
                    q: parse_qubit(toks[1], line_no)?,
                    angle: angle(line_no)?,
                }
            }
            other => {
                return Err(err(line_no, format!("unknown gate '{other}'")));
            }
        };
        ops.push(op);
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, ComplexMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gate_elements_are_unitary() {
        for u in [
            not_gate(2, 0).unwrap(),
            hadamard(2, 1).unwrap(),
            cnot(2, 0, 1).unwrap(),
            rotation_gate(2, 1, Axis::Y, 0.37).unwrap(),
            phase_gate(2, 0, 1.1).unwrap(),
        ] {
            let dev = u.mul(&u.reverse()).distance_from_identity();
            assert!(dev < 1e-14);
        }
    }

    #[test]
    fn not_sends_zero_to_i_one() {
        let psi = Spinor::from_ket(&Ket::basis(1, 0)).unwrap();
        let out = psi.apply_unitary(&not_gate(1, 0).unwrap()).unwrap();
        let amps = out.to_ket();
        assert!((amps.amps()[0]).norm() < 1e-14);
        assert!((amps.amps()[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn hadamard_represents_as_i_times_standard_matrix() {
        let h = hadamard(1, 0).unwrap();
        let m = oracle::represent(&h);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = ComplexMatrix::from_rows(&[
            &[c(0.0, s), c(0.0, s)],
            &[c(0.0, s), c(0.0, -s)],
        ]);
        assert!(m.approx_eq(&want, 1e-15));
        // squares to -1
        let sq = h.mul(&h);
        assert!(sq.approx_eq(&CorrelatedElement::scalar(1, c(-1.0, 0.0)), 1e-15));
    }

    #[test]
    fn cnot_represents_as_root_i_times_permutation() {
        let u = cnot(2, 0, 1).unwrap();
        let m = oracle::represent(&u);
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let z = c(0.0, 0.0);
        let want = ComplexMatrix::from_rows(&[
            &[w, z, z, z],
            &[z, w, z, z],
            &[z, z, z, w],
            &[z, z, w, z],
        ]);
        assert!(m.approx_eq(&want, 1e-14));
    }

    #[test]
    fn cnot_exponential_form_agrees() {
        for (control, target) in [(0usize, 1usize), (1, 0)] {
            let direct = cnot(2, control, target).unwrap();
            let viaexp = cnot_exponential(2, control, target).unwrap();
            assert!(direct.approx_eq(&viaexp, 1e-13));
        }
    }

    #[test]
    fn hadamard_conjugation_turns_cnot_into_controlled_z() {
        let u = cnot(2, 0, 1).unwrap();
        let cz = conjugate_by_hadamard(&u, 1).unwrap();
        let m = oracle::represent(&cz);
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let z = c(0.0, 0.0);
        let want = ComplexMatrix::from_rows(&[
            &[w, z, z, z],
            &[z, w, z, z],
            &[z, z, w, z],
            &[z, z, z, -w],
        ]);
        assert!(m.approx_eq(&want, 1e-14));
    }

    #[test]
    fn singlet_circuit_reproduces_the_worked_spinor() {
        // H on qubit 1 then CNOT 1->2, starting from |11>
        let ops = [
            GateOp::Hadamard { q: 0 },
            GateOp::Cnot {
                control: 0,
                target: 1,
            },
        ];
        let out = run_circuit(&ops, &Ket::basis(2, 0b11)).unwrap();
        // the singlet, with the exact phase the algebra produces:
        // (1 - i)/2 (|10> - |01>)
        let w = c(0.5, -0.5);
        let want = Ket::new(2, vec![c(0.0, 0.0), -w, w, c(0.0, 0.0)]).unwrap();
        assert!(out.max_distance(&want) < 1e-13);
        // and the spinor is iota/2 (sy^2 + sx^2 - sy^1 - sx^1), stored in its
        // canonical form with the directional correlator multiplied through
        let psi = Spinor::from_ket(&out).unwrap();
        let mut frozen = CorrelatedElement::zero(2);
        frozen.set_coeff(0b0001, c(0.0, 0.5)); // sx^2
        frozen.set_coeff(0b0010, c(0.0, 0.5)); // sy^2
        frozen.set_coeff(0b0100, c(0.0, -0.5)); // sx^1
        frozen.set_coeff(0b1000, c(0.0, -0.5)); // sy^1
        let reduced = frozen.mul(&crate::multiqubit::directional_correlator(2));
        assert!(psi.element().approx_eq(&reduced, 1e-13));
    }

    #[test]
    fn random_circuits_match_the_matrix_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in 1..=3usize {
            for _ in 0..8 {
                let mut ops = Vec::new();
                for _ in 0..6 {
                    let q = rng.gen_range(0..n);
                    ops.push(match rng.gen_range(0..5) {
                        0 => GateOp::Hadamard { q },
                        1 => GateOp::Not { q },
                        2 if n > 1 => {
                            let mut t = rng.gen_range(0..n);
                            while t == q {
                                t = rng.gen_range(0..n);
                            }
                            GateOp::Cnot {
                                control: q,
                                target: t,
                            }
                        }
                        3 => GateOp::Rot {
                            q,
                            axis: match rng.gen_range(0..3) {
                                0 => Axis::X,
                                1 => Axis::Y,
                                _ => Axis::Z,
                            },
                            angle: rng.gen_range(-3.0..3.0),
                        },
                        _ => GateOp::Phase {
                            q,
                            angle: rng.gen_range(-3.0..3.0),
                        },
                    });
                }
                let amps: Vec<Complex64> = (0..1 << n)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let ket = Ket::new(n, amps).unwrap().normalized().unwrap();
                let spinor_route = run_circuit(&ops, &ket).unwrap();
                let u = circuit_element(&ops, n).unwrap();
                let matrix_route = oracle::represent(&u).apply_vec(ket.amps());
                for (a, b) in spinor_route.amps().iter().zip(&matrix_route) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn parses_a_program() {
        let text = "\
# prepare a Bell pair, then fiddle with phases
H 1

CNOT 1 2
ROT 2 axis=y angle=0.25
PHASE 1 angle=-1.5
";
        let ops = parse_circuit(text, 2, "prog").unwrap();
        assert_eq!(
            ops,
            vec![
                GateOp::Hadamard { q: 0 },
                GateOp::Cnot {
                    control: 0,
                    target: 1
                },
                GateOp::Rot {
                    q: 1,
                    axis: Axis::Y,
                    angle: 0.25
                },
                GateOp::Phase {
                    q: 0,
                    angle: -1.5
                },
            ]
        );
    }

    #[test]
    fn parser_reports_line_numbers() {
        let text = "H 1\nBOGUS 2\n";
        match parse_circuit(text, 2, "prog") {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("BOGUS"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        // out-of-range qubit
        match parse_circuit("H 3\n", 2, "prog") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        // missing angle
        assert!(parse_circuit("ROT 1 axis=x\n", 2, "prog").is_err());
        // same control and target
        assert!(parse_circuit("CNOT 2 2\n", 2, "prog").is_err());
    }
}
