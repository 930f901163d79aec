//! Real Clifford algebra over an orthogonal basis of arbitrary signature.
//!
//! Basis blades are bitmasks over the generators, so a multivector is a
//! sparse map from blade to coefficient. The geometric product of two blades
//! is another blade up to a sign, which is what makes this representation
//! exact: no floating-point error enters until the coefficients themselves
//! combine.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Largest dimension for which a dense blade-pair sign table is precomputed.
/// Above this the sign is recomputed per pair (the N-particle algebras used
/// for cross-validation are too big to table).
const TABLE_DIM_MAX: usize = 8;

/// Terms in the exponential series after range reduction. The argument is
/// scaled below norm 1/2 first, so hitting this cap means the input was
/// pathological.
const EXP_SERIES_MAX: usize = 64;

#[derive(Debug)]
struct SigInner {
    /// +1 or -1 per generator, in generator order.
    metric: Vec<i8>,
    labels: Vec<String>,
    /// Generator singled out as the time axis, if the signature has one.
    time: Option<usize>,
    /// Lazily built sign table for dim <= TABLE_DIM_MAX: entry [a << dim | b]
    /// holds the sign of e_a e_b (the result mask is always a ^ b).
    table: OnceLock<Vec<i8>>,
}

/// Shared, immutable description of the generating vector space.
#[derive(Clone, Debug)]
pub struct Signature(Arc<SigInner>);

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.metric == other.0.metric && self.0.time == other.0.time)
    }
}
impl Eq for Signature {}

impl Signature {
    /// Signature with explicit per-generator squares and labels.
    pub fn new(metric: Vec<i8>, labels: Vec<String>, time: Option<usize>) -> Self {
        assert!(metric.len() <= 63, "at most 63 generators supported");
        assert_eq!(metric.len(), labels.len());
        assert!(metric.iter().all(|&s| s == 1 || s == -1));
        if let Some(t) = time {
            assert!(t < metric.len());
        }
        Signature(Arc::new(SigInner {
            metric,
            labels,
            time,
            table: OnceLock::new(),
        }))
    }

    /// G(p,q): the first `p` generators square to +1, the rest to -1.
    pub fn pq(p: usize, q: usize) -> Self {
        let metric: Vec<i8> = (0..p + q).map(|i| if i < p { 1 } else { -1 }).collect();
        let labels = (0..p + q).map(|i| format!("e{i}")).collect();
        Signature::new(metric, labels, None)
    }

    /// The Pauli algebra G(3) with generators x, y, z.
    pub fn pauli() -> Self {
        Signature::new(
            vec![1, 1, 1],
            vec!["x".into(), "y".into(), "z".into()],
            None,
        )
    }

    /// The spacetime algebra G(1,3) with generators t, x, y, z and the
    /// time generator designated.
    pub fn spacetime() -> Self {
        Signature::new(
            vec![1, -1, -1, -1],
            vec!["t".into(), "x".into(), "y".into(), "z".into()],
            Some(0),
        )
    }

    /// N-particle spacetime algebra G(N,3N): one copy of G(1,3) per
    /// particle, generators ordered t1 x1 y1 z1 t2 x2 ...
    pub fn multiparticle(n: usize) -> Self {
        assert!(n >= 1 && 4 * n <= 63);
        let mut metric = Vec::with_capacity(4 * n);
        let mut labels = Vec::with_capacity(4 * n);
        for p in 1..=n {
            for (axis, sq) in [("t", 1i8), ("x", -1), ("y", -1), ("z", -1)] {
                metric.push(sq);
                labels.push(format!("{axis}{p}"));
            }
        }
        Signature::new(metric, labels, None)
    }

    pub fn dim(&self) -> usize {
        self.0.metric.len()
    }

    /// Number of generators squaring to +1.
    pub fn p(&self) -> usize {
        self.0.metric.iter().filter(|&&s| s == 1).count()
    }

    /// Number of generators squaring to -1.
    pub fn q(&self) -> usize {
        self.0.metric.iter().filter(|&&s| s == -1).count()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn time_generator(&self) -> Option<usize> {
        self.0.time
    }

    fn metric_sign(&self, i: usize) -> f64 {
        self.0.metric[i] as f64
    }

    /// Sign of the geometric product of basis blades `a` and `b`.
    fn blade_sign(&self, a: u64, b: u64) -> f64 {
        if self.dim() <= TABLE_DIM_MAX {
            let dim = self.dim();
            let table = self.0.table.get_or_init(|| {
                let n = 1usize << dim;
                let mut t = vec![0i8; n * n];
                for x in 0..n as u64 {
                    for y in 0..n as u64 {
                        t[(x as usize) << dim | y as usize] =
                            self.blade_sign_direct(x, y) as i8;
                    }
                }
                t
            });
            table[(a as usize) << dim | b as usize] as f64
        } else {
            self.blade_sign_direct(a, b)
        }
    }

    fn blade_sign_direct(&self, a: u64, b: u64) -> f64 {
        // Transpositions needed to sort the concatenation of a and b into
        // canonical order: each generator of b skips past the generators of
        // a that lie above it.
        let mut swaps = 0u32;
        let mut rest = a >> 1;
        while rest != 0 {
            swaps += (rest & b).count_ones();
            rest >>= 1;
        }
        let mut sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
        // Repeated generators contract through the metric.
        let mut common = a & b;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            sign *= self.metric_sign(i);
            common &= common - 1;
        }
        sign
    }
}

/// Basis blade as a generator bitmask; bit i set means generator i is a
/// factor, always in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Blade(pub u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Reversion sign (-1)^(k(k-1)/2) for grade k.
    pub fn reverse_sign(self) -> f64 {
        match self.grade() % 4 {
            0 | 1 => 1.0,
            _ => -1.0,
        }
    }

    /// Grade involution sign (-1)^k.
    pub fn involution_sign(self) -> f64 {
        if self.grade() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Sparse multivector: blade -> real coefficient, tied to a signature.
#[derive(Clone, Debug)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<u64, f64>,
}

/// Coefficients smaller than this (relative to the largest) are dropped when
/// pruning after arithmetic.
pub const PRUNE_EPS: f64 = 1e-14;

impl Multivector {
    pub fn zero(sig: &Signature) -> Self {
        Multivector {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: &Signature, value: f64) -> Self {
        let mut mv = Multivector::zero(sig);
        mv.set(Blade::SCALAR, value);
        mv
    }

    pub fn basis_vector(sig: &Signature, i: usize) -> Self {
        assert!(i < sig.dim(), "generator index out of range");
        let mut mv = Multivector::zero(sig);
        mv.set(Blade(1 << i), 1.0);
        mv
    }

    pub fn basis_blade(sig: &Signature, blade: Blade, coeff: f64) -> Self {
        assert!(blade.0 < (1u64 << sig.dim()), "blade out of range");
        let mut mv = Multivector::zero(sig);
        mv.set(blade, coeff);
        mv
    }

    /// Pseudoscalar e_0 e_1 ... e_{n-1}.
    pub fn pseudoscalar(sig: &Signature) -> Self {
        Multivector::basis_blade(sig, Blade((1u64 << sig.dim()) - 1), 1.0)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn get(&self, blade: Blade) -> f64 {
        self.terms.get(&blade.0).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, blade: Blade, value: f64) {
        if value == 0.0 {
            self.terms.remove(&blade.0);
        } else {
            self.terms.insert(blade.0, value);
        }
    }

    pub fn add_term(&mut self, blade: Blade, value: f64) {
        let v = self.terms.entry(blade.0).or_insert(0.0);
        *v += value;
        if *v == 0.0 {
            self.terms.remove(&blade.0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (Blade(b), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient 2-norm.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(Blade::SCALAR)
    }

    /// True when every non-scalar coefficient is below `tol`.
    pub fn is_scalar(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(&b, &c)| b == 0 || c.abs() <= tol)
    }

    /// True when every coefficient outside grade `k` is below `tol`.
    pub fn is_grade(&self, k: usize, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(&b, &c)| Blade(b).grade() == k || c.abs() <= tol)
    }

    /// Drop coefficients below PRUNE_EPS relative to the largest one.
    pub fn prune(mut self) -> Self {
        let max = self
            .terms
            .values()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        if max > 0.0 {
            let cut = max * PRUNE_EPS;
            self.terms.retain(|_, c| c.abs() > cut);
        }
        self
    }

    fn assert_same_sig(&self, other: &Multivector) {
        assert!(
            self.sig == other.sig,
            "operands belong to different signatures"
        );
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        self.assert_same_sig(other);
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c);
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> Multivector {
        if k == 0.0 {
            return Multivector::zero(&self.sig);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= k;
        }
        out
    }

    /// Geometric product. Panics if the operands live in different
    /// signatures.
    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        self.assert_same_sig(other);
        let mut out = Multivector::zero(&self.sig);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                let sign = self.sig.blade_sign(a, b);
                out.add_term(Blade(a ^ b), sign * ca * cb);
            }
        }
        out.prune()
    }

    /// Outer (wedge) product: the grade-(r+s) part of each blade pair, which
    /// over an orthogonal basis is the geometric product of disjoint blades.
    pub fn outer_product(&self, other: &Multivector) -> Multivector {
        self.assert_same_sig(other);
        let mut out = Multivector::zero(&self.sig);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if a & b == 0 {
                    let sign = self.sig.blade_sign(a, b);
                    out.add_term(Blade(a ^ b), sign * ca * cb);
                }
            }
        }
        out.prune()
    }

    /// Inner product of two grade-1 vectors: the scalar part of their
    /// geometric product.
    pub fn inner_product_vectors(&self, other: &Multivector) -> Result<f64> {
        self.assert_same_sig(other);
        if !self.is_grade(1, 0.0) || !other.is_grade(1, 0.0) {
            return Err(Error::NotAVector);
        }
        Ok(self.geometric_product(other).scalar_part())
    }

    pub fn grade_project(&self, k: usize) -> Multivector {
        let mut out = Multivector::zero(&self.sig);
        for (b, c) in self.terms() {
            if b.grade() == k {
                out.set(b, c);
            }
        }
        out
    }

    /// Even part: sum of the even-grade projections.
    pub fn even_part(&self) -> Multivector {
        let mut out = Multivector::zero(&self.sig);
        for (b, c) in self.terms() {
            if b.grade() % 2 == 0 {
                out.set(b, c);
            }
        }
        out
    }

    pub fn reverse(&self) -> Multivector {
        let mut out = Multivector::zero(&self.sig);
        for (b, c) in self.terms() {
            out.set(b, c * b.reverse_sign());
        }
        out
    }

    pub fn grade_involution(&self) -> Multivector {
        let mut out = Multivector::zero(&self.sig);
        for (b, c) in self.terms() {
            out.set(b, c * b.involution_sign());
        }
        out
    }

    /// Spatial reverse gamma_t a~ gamma_t, defined relative to the
    /// signature's designated time generator.
    pub fn spatial_reverse(&self) -> Result<Multivector> {
        let t = self.sig.time_generator().ok_or(Error::NoTimeGenerator)?;
        let gt = Multivector::basis_vector(&self.sig, t);
        Ok(gt.geometric_product(&self.reverse()).geometric_product(&gt))
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_coeff_distance(&self, other: &Multivector) -> f64 {
        self.assert_same_sig(other);
        let mut d = 0.0f64;
        for (&b, &c) in &self.terms {
            d = d.max((c - other.get(Blade(b))).abs());
        }
        for (&b, &c) in &other.terms {
            d = d.max((c - self.get(Blade(b))).abs());
        }
        d
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.max_coeff_distance(other) <= tol
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in self.terms() {
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if b == Blade::SCALAR {
                write!(f, "{mag}")?;
            } else {
                if (mag - 1.0).abs() > 1e-12 {
                    write!(f, "{mag}*")?;
                }
                let mut mask = b.0;
                while mask != 0 {
                    let i = mask.trailing_zeros() as usize;
                    write!(f, "{}", self.sig.label(i))?;
                    mask &= mask - 1;
                }
            }
        }
        Ok(())
    }
}

/// Exponential of a bivector. Pure bivectors with a scalar square get the
/// closed trigonometric/hyperbolic form; anything else falls back to a
/// scale-and-square power series.
pub fn exp_bivector(b: &Multivector) -> Result<Multivector> {
    let one = Multivector::scalar(b.signature(), 1.0);
    if b.is_zero() {
        return Ok(one);
    }
    if b.is_grade(2, 0.0) {
        let sq = b.geometric_product(b);
        let tol = 1e-12 * sq.norm().max(1.0);
        if sq.is_scalar(tol) {
            let s = sq.scalar_part();
            if s < -tol {
                let theta = (-s).sqrt();
                return Ok(one
                    .scale(theta.cos())
                    .add(&b.scale(theta.sin() / theta)));
            } else if s > tol {
                let lam = s.sqrt();
                return Ok(one
                    .scale(lam.cosh())
                    .add(&b.scale(lam.sinh() / lam)));
            } else {
                return Ok(one.add(b));
            }
        }
    }
    exp_series(b)
}

/// Series exponential with range reduction: halve until the norm is below
/// 1/2, sum, then square back up.
fn exp_series(x: &Multivector) -> Result<Multivector> {
    let mut halvings = 0u32;
    let mut norm = x.norm();
    while norm >= 0.5 {
        halvings += 1;
        norm /= 2.0;
    }
    let arg = x.scale(0.5f64.powi(halvings as i32));
    let mut sum = Multivector::scalar(x.signature(), 1.0);
    let mut term = sum.clone();
    let mut converged = false;
    for k in 1..=EXP_SERIES_MAX {
        term = term.geometric_product(&arg).scale(1.0 / k as f64);
        sum = sum.add(&term);
        if term.norm() <= 1e-18 * sum.norm().max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ExpSeriesDiverged(EXP_SERIES_MAX));
    }
    for _ in 0..halvings {
        sum = sum.geometric_product(&sum);
    }
    Ok(sum.prune())
}

/// Outer exponential of a unit bivector: wedge^(-B tau) = 1 - B tau, the
/// unnormalised half-angle form of a rotor with tan(theta/2) = tau.
pub fn outer_exponential(b: &Multivector, tau: f64) -> Result<Multivector> {
    if !b.is_grade(2, 0.0) {
        return Err(Error::NotUnitBivector(f64::NAN));
    }
    let sq = b.geometric_product(b);
    let s = sq.scalar_part();
    if !sq.is_scalar(1e-9) || (s + 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitBivector(s));
    }
    Ok(Multivector::scalar(b.signature(), 1.0).sub(&b.scale(tau)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sx() -> Multivector {
        Multivector::basis_vector(&Signature::pauli(), 0)
    }
    fn sy() -> Multivector {
        Multivector::basis_vector(&Signature::pauli(), 1)
    }
    fn sz() -> Multivector {
        Multivector::basis_vector(&Signature::pauli(), 2)
    }

    #[test]
    fn pauli_generator_relations() {
        let sig = Signature::pauli();
        let one = Multivector::scalar(&sig, 1.0);
        for v in [sx(), sy(), sz()] {
            assert!(v.geometric_product(&v).approx_eq(&one, 0.0));
        }
        // sigma_x sigma_y = -sigma_y sigma_x = the xy blade
        let xy = sx().geometric_product(&sy());
        assert_eq!(xy.get(Blade(0b011)), 1.0);
        let yx = sy().geometric_product(&sx());
        assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn pauli_pseudoscalar_squares_to_minus_one() {
        let sig = Signature::pauli();
        let iota = Multivector::pseudoscalar(&sig);
        let sq = iota.geometric_product(&iota);
        assert!(sq.approx_eq(&Multivector::scalar(&sig, -1.0), 0.0));
        // iota commutes with each generator
        for v in [sx(), sy(), sz()] {
            let a = iota.geometric_product(&v);
            let b = v.geometric_product(&iota);
            assert!(a.approx_eq(&b, 0.0));
        }
    }

    #[test]
    fn spacetime_metric() {
        let sig = Signature::spacetime();
        let one = Multivector::scalar(&sig, 1.0);
        let gt = Multivector::basis_vector(&sig, 0);
        assert!(gt.geometric_product(&gt).approx_eq(&one, 0.0));
        for i in 1..4 {
            let g = Multivector::basis_vector(&sig, i);
            assert!(g
                .geometric_product(&g)
                .approx_eq(&one.scale(-1.0), 0.0));
        }
        let iota = Multivector::pseudoscalar(&sig);
        assert!(iota
            .geometric_product(&iota)
            .approx_eq(&one.scale(-1.0), 0.0));
    }

    #[test]
    fn reverse_and_involution_signs() {
        assert_eq!(Blade(0b0).reverse_sign(), 1.0);
        assert_eq!(Blade(0b1).reverse_sign(), 1.0);
        assert_eq!(Blade(0b11).reverse_sign(), -1.0);
        assert_eq!(Blade(0b111).reverse_sign(), -1.0);
        assert_eq!(Blade(0b1111).reverse_sign(), 1.0);
        assert_eq!(Blade(0b11).involution_sign(), 1.0);
        assert_eq!(Blade(0b111).involution_sign(), -1.0);
    }

    #[test]
    fn inner_product_rejects_non_vectors() {
        let _sig = Signature::pauli();
        let v = sx();
        let b = sx().geometric_product(&sy());
        assert!(matches!(
            v.inner_product_vectors(&b),
            Err(Error::NotAVector)
        ));
    }

    #[test]
    #[should_panic(expected = "different signatures")]
    fn mixed_signature_product_panics() {
        let a = Multivector::scalar(&Signature::pauli(), 1.0);
        let b = Multivector::scalar(&Signature::spacetime(), 1.0);
        let _ = a.geometric_product(&b);
    }

    #[test]
    fn spatial_reverse_requires_time_generator() {
        let mv = sx();
        assert!(matches!(
            mv.spatial_reverse(),
            Err(Error::NoTimeGenerator)
        ));
        let st = Signature::spacetime();
        let gt = Multivector::basis_vector(&st, 0);
        // gamma_t reverses to itself under the spatial reverse
        assert!(gt.spatial_reverse().unwrap().approx_eq(&gt, 0.0));
    }

    #[test]
    fn exp_closed_form_rotation() {
        // exp(-iota sigma_z theta/2) = cos - iota sigma_z sin
        let sig = Signature::pauli();
        let iota = Multivector::pseudoscalar(&sig);
        let theta: f64 = 0.731;
        let b = iota.geometric_product(&sz()).scale(-theta / 2.0);
        let r = exp_bivector(&b).unwrap();
        assert!((r.scalar_part() - (theta / 2.0).cos()).abs() < 1e-15);
        assert!((r.get(Blade(0b011)) + (theta / 2.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn exp_closed_form_boost() {
        // In G(1,3), (gamma_z gamma_t)^2 = +1, so exp is hyperbolic.
        let st = Signature::spacetime();
        let gz = Multivector::basis_vector(&st, 3);
        let gt = Multivector::basis_vector(&st, 0);
        let sz = gz.geometric_product(&gt);
        let lam: f64 = 1.3;
        let l = exp_bivector(&sz.scale(-lam / 2.0)).unwrap();
        assert!((l.scalar_part() - (lam / 2.0).cosh()).abs() < 1e-12);
    }

    #[test]
    fn exp_series_matches_closed_form() {
        // Feed the series a bivector it would otherwise special-case by
        // adding a commuting scalar-free second blade pair.
        let sig = Signature::pauli();
        let iota = Multivector::pseudoscalar(&sig);
        let b = iota.geometric_product(&sz()).scale(-0.9);
        let closed = exp_bivector(&b).unwrap();
        let series = super::exp_series(&b).unwrap();
        assert!(closed.approx_eq(&series, 1e-14));
    }

    #[test]
    fn outer_exponential_form() {
        let sig = Signature::pauli();
        let iota = Multivector::pseudoscalar(&sig);
        let b = iota.geometric_product(&sz());
        let tau: f64 = 0.37;
        let w = outer_exponential(&b, tau).unwrap();
        // 1 - iota r tau, squared norm 1 + tau^2
        let sq = w.geometric_product(&w.reverse()).scalar_part();
        assert!((sq - (1.0 + tau * tau)).abs() < 1e-14);
        // normalised, it is the rotor exp(-B theta/2) with tan(theta/2) = tau
        let theta = 2.0 * tau.atan();
        let r = exp_bivector(&b.scale(-theta / 2.0)).unwrap();
        let wn = w.scale(1.0 / (1.0 + tau * tau).sqrt());
        assert!(wn.approx_eq(&r, 1e-14));
    }

    #[test]
    fn outer_exponential_rejects_non_unit() {
        let sig = Signature::pauli();
        let iota = Multivector::pseudoscalar(&sig);
        let b = iota.geometric_product(&sz()).scale(2.0);
        assert!(matches!(
            outer_exponential(&b, 0.5),
            Err(Error::NotUnitBivector(_))
        ));
    }

    fn arb_mv(sig: Signature, max_terms: usize) -> impl Strategy<Value = Multivector> {
        let dim = sig.dim();
        prop::collection::vec(
            (0u64..(1 << dim), -2.0f64..2.0),
            1..=max_terms,
        )
        .prop_map(move |terms| {
            let mut mv = Multivector::zero(&sig);
            for (b, c) in terms {
                mv.add_term(Blade(b), c);
            }
            mv
        })
    }

    proptest! {
        #[test]
        fn geometric_product_associative(
            a in arb_mv(Signature::spacetime(), 6),
            b in arb_mv(Signature::spacetime(), 6),
            c in arb_mv(Signature::spacetime(), 6),
        ) {
            let ab_c = a.geometric_product(&b).geometric_product(&c);
            let a_bc = a.geometric_product(&b.geometric_product(&c));
            let scale = a.norm() * b.norm() * c.norm();
            prop_assert!(ab_c.max_coeff_distance(&a_bc) <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn reversion_is_an_antiautomorphism(
            a in arb_mv(Signature::spacetime(), 6),
            b in arb_mv(Signature::spacetime(), 6),
        ) {
            let lhs = a.geometric_product(&b).reverse();
            let rhs = b.reverse().geometric_product(&a.reverse());
            let scale = (a.norm() * b.norm()).max(1.0);
            prop_assert!(lhs.max_coeff_distance(&rhs) <= 1e-12 * scale);
        }

        #[test]
        fn wedge_of_vectors_antisymmetric(
            ax in -2.0f64..2.0, ay in -2.0f64..2.0, az in -2.0f64..2.0,
            bx in -2.0f64..2.0, by in -2.0f64..2.0, bz in -2.0f64..2.0,
        ) {
            let v = sx().scale(ax).add(&sy().scale(ay)).add(&sz().scale(az));
            let w = sx().scale(bx).add(&sy().scale(by)).add(&sz().scale(bz));
            let vw = v.outer_product(&w);
            let wv = w.outer_product(&v);
            prop_assert!(vw.add(&wv).norm() <= 1e-12);
            // v w = v.w + v^w for vectors
            let gp = v.geometric_product(&w);
            let dot = v.inner_product_vectors(&w).unwrap();
            let recon = Multivector::scalar(v.signature(), dot).add(&vw);
            prop_assert!(gp.max_coeff_distance(&recon) <= 1e-12);
        }
    }
}
