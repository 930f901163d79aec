//! Spacetime algebra G(1,3) and its Pauli-algebra shadow.
//!
//! The even subalgebra of G(1,3) is a copy of G(3): sigma_k = gamma_k
//! gamma_t. [`embed`] and [`extract`] move between the two pictures, and
//! the boost routines use them to treat a qubit's polarization as the
//! spatial part of a four-vector current. Boosting that current with a
//! spacetime rotor and re-splitting reproduces the relativistic velocity
//! addition law on the polarization component along the boost axis.

use crate::ga::{exp_bivector, Blade, Multivector, Signature};
use crate::pauli;
use crate::{Error, Result};

fn sig4() -> Signature {
    Signature::spacetime()
}

fn sig3() -> Signature {
    Signature::pauli()
}

/// Generator gamma_mu, mu in 0..4 (t, x, y, z).
pub fn gamma(mu: usize) -> Multivector {
    Multivector::basis_vector(&sig4(), mu)
}

/// Spacetime pseudoscalar I = gamma_t gamma_x gamma_y gamma_z.
pub fn pseudoscalar() -> Multivector {
    Multivector::pseudoscalar(&sig4())
}

/// Map a Pauli-algebra element into the even subalgebra of G(1,3) by
/// sending sigma_k to gamma_k gamma_t. This is an algebra isomorphism.
pub fn embed(x: &Multivector) -> Multivector {
    assert!(
        x.signature() == &sig3(),
        "embed expects a Pauli-algebra element"
    );
    let s4 = sig4();
    let mut out = Multivector::zero(&s4);
    for (blade, coeff) in x.terms() {
        let mut img = Multivector::scalar(&s4, 1.0);
        for k in 0..3u64 {
            if blade.0 >> k & 1 == 1 {
                let rel = gamma(k as usize + 1).geometric_product(&gamma(0));
                img = img.geometric_product(&rel);
            }
        }
        out = out.add(&img.scale(coeff));
    }
    out.prune()
}

/// Images of the eight Pauli basis blades under [`embed`]; each is a single
/// signed spacetime blade, so the map inverts term by term.
fn embed_table() -> Vec<(u64, u64, f64)> {
    let mut table = Vec::new();
    for mask3 in 0..8u64 {
        let mut b3 = Multivector::zero(&sig3());
        b3.set(Blade(mask3), 1.0);
        let img = embed(&b3);
        let terms: Vec<_> = img.terms().collect();
        assert_eq!(terms.len(), 1);
        table.push((terms[0].0 .0, mask3, terms[0].1));
    }
    table
}

/// Inverse of [`embed`]. Errors when the element has an odd part, which has
/// no Pauli-algebra counterpart.
pub fn extract(x: &Multivector) -> Result<Multivector> {
    assert!(
        x.signature() == &sig4(),
        "extract expects a spacetime element"
    );
    let table = embed_table();
    let mut out = Multivector::zero(&sig3());
    for (blade, coeff) in x.terms() {
        let hit = table.iter().find(|(m4, _, _)| *m4 == blade.0);
        match hit {
            Some((_, m3, sign)) => {
                let mut t = Multivector::zero(&sig3());
                t.set(Blade(*m3), coeff * sign);
                out = out.add(&t);
            }
            None => {
                if coeff.abs() > 1e-14 {
                    return Err(Error::NotPauliEven);
                }
            }
        }
    }
    Ok(out.prune())
}

/// Split an event or four-vector against the gamma_t frame:
/// x gamma_t = t + (spatial vector). Returns (t, spatial part in G(3)).
pub fn spacetime_split(x: &Multivector) -> Result<(f64, Multivector)> {
    if !x.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    let p = x.geometric_product(&gamma(0));
    let t = p.scalar_part();
    let rel = extract(&p.grade_project(2))?;
    Ok((t, rel))
}

/// Three-velocity of a timelike four-vector: the spatial split divided by
/// the time component.
pub fn relative_velocity(u: &Multivector) -> Result<Multivector> {
    if !u.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    let u2 = u.geometric_product(u).scalar_part();
    if u2 <= 1e-12 {
        return Err(Error::NotTimelike(u2));
    }
    let (t, x3) = spacetime_split(u)?;
    Ok(x3.scale(1.0 / t))
}

/// Assemble a Faraday bivector F = E + I B from electric and magnetic
/// three-vectors given in the Pauli algebra.
pub fn faraday(e: &Multivector, b: &Multivector) -> Result<Multivector> {
    if !e.is_grade(1, 1e-12) || !b.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    let f = embed(e).add(&pseudoscalar().geometric_product(&embed(b)));
    Ok(f.prune())
}

/// Split a Faraday bivector into (E, B) three-vectors. Inverse of
/// [`faraday`].
pub fn faraday_split(f: &Multivector) -> Result<(Multivector, Multivector)> {
    if !f.is_grade(2, 1e-12) {
        return Err(Error::Invalid(
            "field strength must be a bivector".into(),
        ));
    }
    let f3 = extract(f)?;
    let e = f3.grade_project(1);
    let iota_b = f3.grade_project(2);
    let b = Multivector::pseudoscalar(&sig3())
        .scale(-1.0)
        .geometric_product(&iota_b);
    Ok((e.prune(), b.prune()))
}

/// Proper force on a charge: q <F u>_1.
pub fn lorentz_force(f: &Multivector, u: &Multivector, charge: f64) -> Result<Multivector> {
    if !f.is_grade(2, 1e-12) {
        return Err(Error::Invalid(
            "field strength must be a bivector".into(),
        ));
    }
    if !u.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    Ok(f.geometric_product(u).grade_project(1).scale(charge))
}

fn check_unit_axis(axis: &Multivector) -> Result<()> {
    if !axis.is_grade(1, 1e-12) {
        return Err(Error::NotAVector);
    }
    let n2 = axis.geometric_product(axis).scalar_part();
    if (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitAxis(n2.sqrt()));
    }
    Ok(())
}

/// Spacetime rotor for a boost with the given rapidity along a unit spatial
/// axis (a Pauli-algebra vector): exp(embed(axis) rapidity / 2).
pub fn boost_rotor(axis: &Multivector, rapidity: f64) -> Result<Multivector> {
    check_unit_axis(axis)?;
    exp_bivector(&embed(axis).scale(rapidity / 2.0))
}

/// Boost a qubit density by sandwiching in the Pauli algebra with
/// L = exp(axis rapidity / 2). Returns the renormalised density together
/// with the weight 2 <L rho L~>_0 that was divided out.
pub fn boost_density(
    rho: &Multivector,
    axis: &Multivector,
    rapidity: f64,
) -> Result<(Multivector, f64)> {
    pauli::polarization(rho)?;
    check_unit_axis(axis)?;
    let l = Multivector::scalar(&sig3(), (rapidity / 2.0).cosh())
        .add(&axis.scale((rapidity / 2.0).sinh()));
    let out = l.geometric_product(rho).geometric_product(&l);
    let weight = 2.0 * out.scalar_part();
    Ok((out.scale(1.0 / weight), weight))
}

/// The same boost computed upstairs in G(1,3): treat (1, p) as a
/// four-vector current, boost it with the spacetime rotor, split it again.
pub fn boost_density_spacetime(
    rho: &Multivector,
    axis: &Multivector,
    rapidity: f64,
) -> Result<(Multivector, f64)> {
    let p = pauli::polarization(rho)?;
    let r = boost_rotor(axis, rapidity)?;
    let mut u = gamma(0);
    for (k, &pk) in p.iter().enumerate() {
        u = u.add(&gamma(k + 1).scale(pk));
    }
    let boosted = r
        .geometric_product(&u)
        .geometric_product(&r.reverse())
        .prune();
    let (t, x3) = spacetime_split(&boosted)?;
    let mut p2 = [0.0f64; 3];
    for (k, pk) in p2.iter_mut().enumerate() {
        *pk = x3.get(Blade(1 << k)) / t;
    }
    Ok((pauli::qubit_density(&p2)?, t))
}

/// Polarization along the boost axis after a boost, computed through the
/// geometric product: rho' = L rho L with rho = (1 + lambda sigma_z)/2, and
/// the returned value is the ratio of the sigma_z and scalar coefficients.
/// At lambda = +-1 the two coefficients are bitwise negations or copies of
/// each other, so the fixed points come out exact.
pub fn boost_polarization(lambda: f64, rapidity: f64) -> Result<f64> {
    let rho = pauli::qubit_density(&[0.0, 0.0, lambda])?;
    let axis = pauli::sigma(2);
    let l = Multivector::scalar(&sig3(), (rapidity / 2.0).cosh())
        .add(&axis.scale((rapidity / 2.0).sinh()));
    let out = l.geometric_product(&rho).geometric_product(&l);
    Ok(out.get(Blade(0b100)) / out.scalar_part())
}

/// Velocity-addition form: (lambda + w) / (1 + lambda w) with w = tanh of
/// the rapidity.
pub fn boost_polarization_rational(lambda: f64, w: f64) -> f64 {
    (lambda + w) / (1.0 + lambda * w)
}

/// Rapidity form: tanh(atanh(lambda) + rapidity). Agrees with the rational
/// form because tanh turns addition into that Moebius expression; the poles
/// atanh(+-1) = +-infinity make the fixed points exact here too.
pub fn boost_polarization_tanh(lambda: f64, rapidity: f64) -> f64 {
    (lambda.atanh() + rapidity).tanh()
}
