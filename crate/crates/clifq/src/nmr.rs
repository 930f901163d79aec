//! Liquid-state NMR as a product-operator demonstration.
//!
//! An ensemble of N chemically distinct nuclear spins in a magnetic field
//! along z evolves under the Zeeman observable
//! Z = (w1 sz^1 + ... + wN sz^N)/2. Starting from the transverse
//! equilibrium state 2^-N (1 + alpha sum sx^q), each spin's magnetization
//! precesses at its own frequency, so the total x-magnetization is a sum
//! of cosines and its Fourier transform shows one line per spin.

use crate::gates;
use crate::multiqubit::{Axis, CorrelatedElement, DensityOperator};
use crate::{Error, Result};
use num_complex::Complex64;

/// Z = sum_q omega_q sz^q / 2.
pub fn zeeman_hamiltonian(omegas: &[f64]) -> CorrelatedElement {
    let n = omegas.len();
    let mut z = CorrelatedElement::zero(n);
    for (q, &w) in omegas.iter().enumerate() {
        z = z.add(&CorrelatedElement::sigma(n, Axis::Z, q).scale_re(w / 2.0));
    }
    z
}

/// The propagator exp(-iota Z t). The one-spin terms commute, so it is an
/// exact product of z-rotations.
pub fn zeeman_propagator(omegas: &[f64], t: f64) -> CorrelatedElement {
    let n = omegas.len();
    let mut u = CorrelatedElement::identity(n);
    for (q, &w) in omegas.iter().enumerate() {
        u = u.mul(&gates::rotation_gate(n, q, Axis::Z, w * t).expect("qubit in range"));
    }
    u
}

/// The rotated equilibrium state 2^-N (1 + alpha sum_q sx^q), the usual
/// starting point after a radio-frequency pulse. alpha is the thermal
/// polarization (about 1e-6 in practice, but any value works linearly).
pub fn transverse_equilibrium(n: usize, alpha: f64) -> Result<DensityOperator> {
    if n == 0 {
        return Err(Error::Invalid("need at least one spin".into()));
    }
    let mut e = CorrelatedElement::identity(n);
    for q in 0..n {
        e = e.add(&CorrelatedElement::sigma(n, Axis::X, q).scale_re(alpha));
    }
    DensityOperator::from_element(e.scale_re((2.0f64).powi(-(n as i32))))
}

/// Evolve a state to time t: exp(-iota Z t) rho exp(+iota Z t).
pub fn evolve(rho: &DensityOperator, omegas: &[f64], t: f64) -> Result<DensityOperator> {
    let u = zeeman_propagator(omegas, t);
    DensityOperator::from_element(
        u.mul(rho.element()).mul(&u.reverse()),
    )
}

/// Total x-magnetization: expectation of gamma (sx^1 + ... + sx^N).
pub fn transverse_magnetization(rho: &DensityOperator, gamma: f64) -> f64 {
    let n = rho.n_qubits();
    let mut obs = CorrelatedElement::zero(n);
    for q in 0..n {
        obs = obs.add(&CorrelatedElement::sigma(n, Axis::X, q));
    }
    // a real combination of basis vectors is always a valid observable
    gamma * rho.expectation(&obs).expect("symmetric observable")
}

/// The closed form the evolution must reproduce:
/// Mx(t) = alpha gamma (cos(w1 t) + ... + cos(wN t)).
pub fn magnetization_closed_form(omegas: &[f64], alpha: f64, gamma: f64, t: f64) -> f64 {
    alpha * gamma * omegas.iter().map(|&w| (w * t).cos()).sum::<f64>()
}

/// Sample Mx(t) on `samples` points t_i = i * duration / samples, through
/// the full product-operator evolution.
pub fn sample_magnetization(
    omegas: &[f64],
    alpha: f64,
    gamma: f64,
    duration: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(Error::Invalid(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    if !(duration > 0.0) {
        return Err(Error::Invalid(format!("duration must be positive, got {duration}")));
    }
    let rho0 = transverse_equilibrium(omegas.len(), alpha)?;
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = duration * i as f64 / samples as f64;
        let rho = evolve(&rho0, omegas, t)?;
        out.push((t, transverse_magnetization(&rho, gamma)));
    }
    Ok(out)
}

/// Magnitudes of the discrete Fourier transform, bins 0 ..= len/2.
/// A cosine at frequency w shows up in bin w * duration / (2 pi).
pub fn dft_magnitudes(signal: &[f64]) -> Vec<f64> {
    let s = signal.len();
    let mut mags = Vec::with_capacity(s / 2 + 1);
    for k in 0..=s / 2 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &x) in signal.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (k * i) as f64 / s as f64;
            acc += Complex64::from_polar(x, ang);
        }
        mags.push(acc.norm());
    }
    mags
}

/// Indices of the `count` largest magnitudes, reported in ascending order.
pub fn spectral_peaks(mags: &[f64], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..mags.len()).collect();
    order.sort_by(|&a, &b| mags[b].partial_cmp(&mags[a]).expect("finite magnitudes"));
    let mut top: Vec<usize> = order.into_iter().take(count).collect();
    top.sort_unstable();
    top
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_spin_magnetization_precesses() {
        let omegas = [2.0 * PI];
        let rho0 = transverse_equilibrium(1, 1.0).unwrap();
        for i in 0..8 {
            let t = i as f64 * 0.13;
            let rho = evolve(&rho0, &omegas, t).unwrap();
            let mx = transverse_magnetization(&rho, 1.0);
            assert!((mx - (2.0 * PI * t).cos()).abs() < 1e-12);
            // the magnetization vector rotates; with our rotor orientation
            // (x toward y for positive angles) the y-component is +sin
            let sy = rho
                .expectation(&CorrelatedElement::sigma(1, Axis::Y, 0))
                .unwrap();
            assert!((sy - (2.0 * PI * t).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn magnetization_matches_the_closed_form() {
        let omegas = [2.0 * PI, 4.0 * PI, 7.0 * PI];
        let (alpha, gamma) = (0.37, 1.2);
        let series = sample_magnetization(&omegas, alpha, gamma, 2.0, 64).unwrap();
        for &(t, mx) in &series {
            let want = magnetization_closed_form(&omegas, alpha, gamma, t);
            assert!((mx - want).abs() < 1e-12);
        }
        // t = 0 gives the full magnetization alpha gamma N
        assert!((series[0].1 - alpha * gamma * 3.0).abs() < 1e-12);
    }

    #[test]
    fn propagator_agrees_with_the_series_exponential() {
        let omegas = [1.3, -0.4, 2.2];
        let t = 0.71;
        let direct = zeeman_propagator(&omegas, t);
        let via_series = zeeman_hamiltonian(&omegas)
            .scale(Complex64::new(0.0, -t))
            .exp()
            .unwrap();
        assert!(direct.max_coeff_distance(&via_series) < 1e-12);
        // and it is unitary
        assert!(direct.mul(&direct.reverse()).distance_from_identity() < 1e-12);
    }

    #[test]
    fn spectrum_has_one_line_per_spin() {
        let omegas = [2.0 * PI, 4.0 * PI, 7.0 * PI];
        let (alpha, gamma) = (1.0, 1.0);
        let series = sample_magnetization(&omegas, alpha, gamma, 2.0, 128).unwrap();
        let signal: Vec<f64> = series.iter().map(|&(_, x)| x).collect();
        let mags = dft_magnitudes(&signal);
        assert_eq!(spectral_peaks(&mags, 3), vec![2, 4, 7]);
        // whole numbers of periods: each line carries exactly half the
        // sample count, and every other bin is empty
        for (k, &m) in mags.iter().enumerate() {
            if [2, 4, 7].contains(&k) {
                assert!((m - 64.0).abs() < 1e-9);
            } else {
                assert!(m < 1e-9);
            }
        }
    }

    #[test]
    fn bad_sampling_is_rejected() {
        assert!(matches!(
            sample_magnetization(&[1.0], 1.0, 1.0, 2.0, 1),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            sample_magnetization(&[1.0], 1.0, 1.0, 0.0, 16),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            transverse_equilibrium(0, 1.0),
            Err(Error::Invalid(_))
        ));
    }
}
