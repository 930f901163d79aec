//! Single-qubit states and rotations in the Pauli algebra G(3).
//!
//! A qubit lives in the even subalgebra: spinors are real combinations of
//! {1, iota sigma_x, iota sigma_y, iota sigma_z}, which is the quaternions
//! in disguise. The usual complex amplitudes sit inside via right
//! multiplication by iota sigma_z, and densities are 1/2 (1 + p . sigma)
//! with a real polarization vector p on or inside the unit sphere.

use crate::ga::{exp_bivector, Blade, Multivector, Signature};
use crate::{Error, Result};
use num_complex::Complex64;

fn sig() -> Signature {
    Signature::pauli()
}

/// sigma_k for k in 0..3 (x, y, z).
pub fn sigma(k: usize) -> Multivector {
    Multivector::basis_vector(&sig(), k)
}

/// The pseudoscalar iota = sigma_x sigma_y sigma_z.
pub fn iota() -> Multivector {
    Multivector::pseudoscalar(&sig())
}

/// Vector p . sigma from real components.
pub fn vector(p: &[f64; 3]) -> Multivector {
    let mut v = Multivector::zero(&sig());
    for (k, &pk) in p.iter().enumerate() {
        v = v.add(&sigma(k).scale(pk));
    }
    v
}

fn check_unit_vector(v: &Multivector) -> Result<()> {
    if !v.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    let n2 = v.geometric_product(v).scalar_part();
    if (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitAxis(n2.sqrt()));
    }
    Ok(())
}

/// Rotor for a right-handed rotation by `theta` about the unit axis:
/// R = exp(-iota n theta / 2).
pub fn rotor_from_axis_angle(axis: &Multivector, theta: f64) -> Result<Multivector> {
    check_unit_vector(axis)?;
    let b = iota().geometric_product(axis).scale(-theta / 2.0);
    exp_bivector(&b)
}

fn check_rotor(r: &Multivector) -> Result<()> {
    let even_dev = r.max_coeff_distance(&r.even_part());
    if even_dev > 1e-9 {
        return Err(Error::NotARotor(even_dev));
    }
    let one = Multivector::scalar(r.signature(), 1.0);
    let dev = r.geometric_product(&r.reverse()).max_coeff_distance(&one);
    if dev > 1e-9 {
        return Err(Error::NotARotor(dev));
    }
    Ok(())
}

/// Two-sided rotor action R x R~.
pub fn rotate(rotor: &Multivector, x: &Multivector) -> Result<Multivector> {
    check_rotor(rotor)?;
    Ok(rotor
        .geometric_product(x)
        .geometric_product(&rotor.reverse())
        .prune())
}

/// Reflection through the axis n: x -> n x n keeps the component along n
/// and flips the perpendicular plane (same as a half turn about n). The
/// mirror reflection in the plane normal to n is the negative of this.
pub fn reflect(normal: &Multivector, x: &Multivector) -> Result<Multivector> {
    check_unit_vector(normal)?;
    Ok(normal.geometric_product(x).geometric_product(normal).prune())
}

/// Even element w + c_I iota sigma_x + c_J iota sigma_y + c_K iota sigma_z
/// carrying the complex amplitudes (psi1, psi2) = (w + i c_K, -c_J + i c_I).
pub fn cayley_klein_element(psi1: Complex64, psi2: Complex64) -> Multivector {
    let w = psi1.re;
    let ck = psi1.im;
    let cj = -psi2.re;
    let ci = psi2.im;
    let i = iota();
    Multivector::scalar(&sig(), w)
        .add(&i.geometric_product(&sigma(0)).scale(ci))
        .add(&i.geometric_product(&sigma(1)).scale(cj))
        .add(&i.geometric_product(&sigma(2)).scale(ck))
}

/// Read the complex amplitudes back out of an even element.
pub fn cayley_klein_amplitudes(psi: &Multivector) -> Result<(Complex64, Complex64)> {
    let dev = psi.max_coeff_distance(&psi.even_part());
    if dev > 1e-12 {
        return Err(Error::NotPauliEven);
    }
    let w = psi.scalar_part();
    // iota sigma_x = sigma_y sigma_z, iota sigma_y = -sigma_x sigma_z,
    // iota sigma_z = sigma_x sigma_y
    let ci = psi.get(Blade(0b110));
    let cj = -psi.get(Blade(0b101));
    let ck = psi.get(Blade(0b011));
    Ok((
        Complex64::new(w, ck),
        Complex64::new(-cj, ci),
    ))
}

/// Density 1/2 (1 + p . sigma). The polarization must not leave the Bloch
/// ball.
pub fn qubit_density(p: &[f64; 3]) -> Result<Multivector> {
    let len = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if len > 1.0 + 1e-9 {
        return Err(Error::PolarizationTooLong(len));
    }
    Ok(Multivector::scalar(&sig(), 1.0)
        .add(&vector(p))
        .scale(0.5))
}

/// Pure density psi E+ psi~ from a unit even spinor, E+ = (1 + sigma_z)/2.
pub fn density_from_spinor(psi: &Multivector) -> Result<Multivector> {
    let dev = psi.max_coeff_distance(&psi.even_part());
    if dev > 1e-12 {
        return Err(Error::NotPauliEven);
    }
    let n2 = psi.geometric_product(&psi.reverse()).scalar_part();
    if (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::NotARotor((n2 - 1.0).abs()));
    }
    let eplus = Multivector::scalar(&sig(), 1.0)
        .add(&sigma(2))
        .scale(0.5);
    Ok(psi
        .geometric_product(&eplus)
        .geometric_product(&psi.reverse())
        .prune())
}

/// Polarization components p_k = 2 <rho sigma_k>_0. Errors if rho is not of
/// the form 1/2 (1 + p . sigma).
pub fn polarization(rho: &Multivector) -> Result<[f64; 3]> {
    let mut p = [0.0f64; 3];
    for (k, pk) in p.iter_mut().enumerate() {
        *pk = 2.0 * rho.geometric_product(&sigma(k)).scalar_part();
    }
    let back = qubit_density(&p).map_err(|_| {
        Error::Invalid("density polarization leaves the Bloch ball".into())
    })?;
    if rho.max_coeff_distance(&back) > 1e-9 {
        return Err(Error::Invalid(
            "element is not a one-qubit density".into(),
        ));
    }
    Ok(p)
}

/// <n . sigma> = 2 <rho (n . sigma)>_0 for a unit direction n.
pub fn expectation(rho: &Multivector, axis: &Multivector) -> Result<f64> {
    check_unit_vector(axis)?;
    polarization(rho)?;
    Ok(2.0 * rho.geometric_product(axis).scalar_part())
}

/// Stereographic coordinate zeta = (p_x + i p_y) / (1 + p_z), projecting
/// the Bloch sphere from the south pole onto the equatorial plane. For a
/// pure ket (alpha, beta) this is beta / alpha.
pub fn stereographic_ratio(p: &[f64; 3]) -> Result<Complex64> {
    let denom = 1.0 + p[2];
    if denom.abs() < 1e-12 {
        return Err(Error::SouthPole);
    }
    Ok(Complex64::new(p[0] / denom, p[1] / denom))
}
