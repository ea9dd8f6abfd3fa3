//! Geometry of the cover `t : X -> P^1` given by a plane model
//! `F(T, U) = 0`: fiber polynomials, singular points, the resultant `R(T)`
//! and critical polynomial `Delta(T)` with ramification profiles, Puiseux
//! expansions and their integrality and convergence properties.

pub mod profile;
pub mod puiseux;

use num_traits::Zero;
use thiserror::Error;

use crate::field::{FieldElement, NumberField};
use crate::poly::bipoly::BiPoly;
use crate::poly::kfactor::{factor_over_k, is_irreducible_k};
use crate::poly::Poly;

pub use profile::ValueAnalysis;
pub use puiseux::{eisenstein_check, puiseux_expand, verify_norm_relation, PuiseuxSeries};

pub type KPoly = Poly<FieldElement>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error("plane model is not certified irreducible over K: {0}")]
    NotIrreducible(String),
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("base point is (t,u)-singular")]
    NotRegular,
    #[error("t ramifies at the base point (v_A(t - t(A)) > 1)")]
    RamifiedBasePoint,
}

/// The plane cover `F(T, U) = 0` with `t` the `T`-coordinate.
#[derive(Clone, Debug)]
pub struct PlaneCover {
    field: NumberField,
    f: BiPoly,
    n: usize,
    genus: Option<u32>,
}

impl PlaneCover {
    /// Builds a cover after scaling the model integral and certifying
    /// irreducibility over `K`.
    pub fn new(field: NumberField, f: BiPoly, genus: Option<u32>) -> Result<Self, CoverError> {
        let f = f.integral_model(&field);
        let n = f.deg_u();
        if n < 2 {
            return Err(CoverError::DegenerateModel(format!(
                "deg_U(F) = {} but the cover needs degree >= 2",
                n
            )));
        }
        if f.deg_t() == 0 {
            return Err(CoverError::DegenerateModel("F does not involve T".into()));
        }
        certify_irreducible(&f, &field)?;
        Ok(PlaneCover { field, f, n, genus })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn model(&self) -> &BiPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }

    /// `F(tau, U)`.
    pub fn fiber_poly(&self, tau: &FieldElement) -> KPoly {
        self.f.fiber(tau)
    }

    /// The fiber polynomial over `t = infinity`: substitute `T -> 1/T`,
    /// clear denominators, evaluate at 0.
    pub fn fiber_poly_at_infinity(&self) -> KPoly {
        self.reciprocal_model().fiber(&FieldElement::zero())
    }

    /// `S^(deg_T) F(1/S, U)`: the plane model of the cover by `s = 1/t`.
    pub fn reciprocal_model(&self) -> BiPoly {
        let dt = self.f.deg_t();
        let mons: Vec<(usize, usize, FieldElement)> =
            self.f.monomials().into_iter().map(|(i, j, c)| (dt - i, j, c)).collect();
        BiPoly::from_monomials(&mons)
    }
}

/// Irreducibility certificate: content-free in U plus an irreducible fiber
/// of full degree at some small tau (then any factorization would
/// specialize); falls back to the same test with T and U swapped.
fn certify_irreducible(f: &BiPoly, field: &NumberField) -> Result<(), CoverError> {
    let content = f.content_u();
    if content.deg() > 0 {
        return Err(CoverError::NotIrreducible(format!(
            "content in U has degree {}",
            content.deg()
        )));
    }
    let taus: Vec<i64> = (0..=20).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).collect();
    for dir in 0..2 {
        let g = if dir == 0 { f.clone() } else { f.swap_vars() };
        if dir == 1 {
            let content = g.content_u();
            if content.deg() > 0 {
                continue;
            }
        }
        let n = g.deg_u();
        if n < 1 {
            continue;
        }
        for &t0 in &taus {
            let fib = g.fiber(&FieldElement::from_int(t0));
            if fib.degree() == Some(n) && is_irreducible_k(&fib, field) {
                return Ok(());
            }
        }
    }
    Err(CoverError::NotIrreducible(
        "no specialization in [-20, 20] certified irreducibility in either variable".into(),
    ))
}

/// A singular point of the plane model (`F = F_T = F_U = 0`).
#[derive(Clone, Debug, PartialEq)]
pub enum SingularLocus {
    /// explicit K-rational singular point
    Rational { tau: FieldElement, omega: FieldElement },
    /// solutions over an extension, reported by count
    Counted { tau_min_poly: KPoly, count: usize },
}

/// All solutions of `F = F'_T = F'_U = 0`, via resultants.
pub fn singular_points(cover: &PlaneCover) -> Vec<SingularLocus> {
    let f = cover.model();
    let ft = f.partial_t();
    let fu = f.partial_u();
    if ft.is_zero() {
        return vec![];
    }
    let r1 = f.resultant_u(&fu);
    let r2 = f.resultant_u(&ft);
    if r1.is_zero() || r2.is_zero() {
        // common factor in U: cannot happen for an irreducible model
        return vec![];
    }
    let g = r1.gcd(&r2);
    if g.is_constant() {
        return vec![];
    }
    let mut out = Vec::new();
    let (_, factors) = factor_over_k(&g, &cover.field);
    for (q, _) in factors {
        if q.deg() == 1 {
            let tau = -(q.coeff(0) / q.coeff(1));
            // common roots of F, F_T, F_U at this tau
            let a = f.fiber(&tau);
            let b = ft.fiber(&tau);
            let c = fu.fiber(&tau);
            let w = a.gcd(&b).gcd(&c);
            if w.is_constant() {
                continue;
            }
            let (_, wf) = factor_over_k(&w, &cover.field);
            let mut counted = 0usize;
            for (h, _) in wf {
                if h.deg() == 1 {
                    let omega = -(h.coeff(0) / h.coeff(1));
                    debug_assert!(f.eval(&tau, &omega).is_zero());
                    out.push(SingularLocus::Rational { tau: tau.clone(), omega });
                } else {
                    counted += h.deg();
                }
            }
            if counted > 0 {
                out.push(SingularLocus::Counted { tau_min_poly: q.clone(), count: counted });
            }
        } else {
            // count solutions over the extension
            use crate::poly::ext::{lift_poly, ExtElt};
            use std::rc::Rc;
            let modulus = Rc::new(q.monic());
            let theta = ExtElt::generator(modulus.clone());
            let fib = |bp: &BiPoly| -> Poly<ExtElt> {
                Poly::new(
                    bp.u_coeffs()
                        .iter()
                        .map(|p| lift_poly(p, &modulus).eval(&theta))
                        .collect(),
                )
            };
            let w = fib(f).gcd(&fib(&ft)).gcd(&fib(&fu));
            if w.deg() >= 1 {
                out.push(SingularLocus::Counted { tau_min_poly: q.clone(), count: w.deg() });
            }
        }
    }
    out
}

/// One irreducible factor of the critical polynomial with its analysis.
#[derive(Clone, Debug)]
pub struct CriticalFactor {
    /// monic irreducible over K
    pub poly: KPoly,
    /// ramification indices over this value, when every point is certified
    pub profile: Option<Vec<u32>>,
    /// true when some point is certified with e >= 2; false means the
    /// factor is kept conservatively without a criticality certificate
    pub certified: bool,
    pub analysis: ValueAnalysis,
}

/// Critical data of the cover: resultant, critical polynomial, profiles.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub resultant: KPoly,
    pub delta: KPoly,
    pub factors: Vec<CriticalFactor>,
    pub infinity_critical: bool,
    pub infinity_certified: bool,
    pub infinity_profile: Option<Vec<u32>>,
    pub infinity_analysis: ValueAnalysis,
}

impl CriticalData {
    /// Number of finite critical values, `m = deg Delta`.
    pub fn m(&self) -> usize {
        self.delta.deg()
    }
}

/// Computes `R`, `Delta`, and per-value ramification data.
///
/// `R = Res_U(F, F'_U)`; auxiliary models from `u + c*t` shrink its
/// squarefree part by a gcd; each surviving irreducible factor is then
/// analyzed: factors whose fibers are certified everywhere-unramified are
/// removed, criticality of the rest is certified where possible, and
/// profiles recorded when complete.
pub fn critical_polynomial(cover: &PlaneCover) -> Result<CriticalData, CoverError> {
    let f = cover.model();
    let fu = f.partial_u();
    let r = f.resultant_u(&fu);
    if r.is_zero() {
        return Err(CoverError::DegenerateModel(
            "Res_U(F, F_U) vanishes identically".into(),
        ));
    }
    let mut d = if r.is_constant() { KPoly::one() } else { r.squarefree_monic() };
    // gcd across auxiliary models; stop once stable twice in a row
    let mut stable = 0;
    for c in 1..=12i64 {
        if d.is_constant() || stable >= 2 {
            break;
        }
        let sheared = f.shear_u(&FieldElement::from_int(c));
        let rc = sheared.resultant_u(&sheared.partial_u());
        if rc.is_zero() {
            return Err(CoverError::DegenerateModel(format!(
                "auxiliary model u + {}t is inseparable",
                c
            )));
        }
        let next = if rc.is_constant() { KPoly::one() } else { d.gcd(&rc.squarefree_monic()) };
        if next == d {
            stable += 1;
        } else {
            stable = 0;
        }
        d = next;
    }
    // analyze each irreducible factor
    let mut factors = Vec::new();
    let mut delta = KPoly::one();
    if !d.is_constant() {
        let (_, parts) = factor_over_k(&d, &cover.field);
        for (q, _) in parts {
            let analysis = if q.deg() == 1 {
                let alpha = -(q.coeff(0) / q.coeff(1));
                profile::analyze_value(&f.shift_t(&alpha), cover.n, &cover.field)
            } else {
                profile::analyze_value_over_extension(f, &q, cover.n, &cover.field)
            };
            if analysis.certified_unramified() {
                // spurious resultant root (separated node or a clean
                // degree-drop value): not a critical value
                continue;
            }
            let certified = analysis.certified_ramified();
            let profile = analysis.profile().filter(|_| certified);
            delta = delta * q.clone();
            factors.push(CriticalFactor { poly: q, profile, certified, analysis });
        }
    }
    // value at infinity via the reciprocal model
    let infinity_analysis = profile::analyze_value(&cover.reciprocal_model(), cover.n, &cover.field);
    let (infinity_critical, infinity_certified) = if infinity_analysis.certified_ramified() {
        (true, true)
    } else if infinity_analysis.certified_unramified() {
        (false, true)
    } else {
        // conservative: treat as critical but uncertified
        (true, false)
    };
    let infinity_profile =
        infinity_analysis.profile().filter(|_| infinity_critical && infinity_certified);
    Ok(CriticalData {
        resultant: r,
        delta,
        factors,
        infinity_critical,
        infinity_certified,
        infinity_profile,
        infinity_analysis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn c(v: i64) -> FieldElement {
        FieldElement::from_rat(rat(v))
    }

    fn tpoly(coeffs: &[i64]) -> KPoly {
        KPoly::new(coeffs.iter().map(|&v| c(v)).collect())
    }

    fn q() -> NumberField {
        NumberField::rational()
    }

    pub(crate) fn u2_minus_t() -> PlaneCover {
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(0)).unwrap()
    }

    pub(crate) fn legendre(lambda: i64) -> PlaneCover {
        // U^2 - T(T-1)(T-lambda)
        let g = tpoly(&[0, 1]) * tpoly(&[-1, 1]) * tpoly(&[-lambda, 1]);
        let f = BiPoly::new(vec![g.scale(&c(-1)), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(1)).unwrap()
    }

    pub(crate) fn cubic_cover() -> PlaneCover {
        // U^3 - 3U - T
        let f = BiPoly::new(vec![tpoly(&[0, -1]), tpoly(&[-3]), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(0)).unwrap()
    }

    #[test]
    fn construction_and_fibers() {
        let cov = u2_minus_t();
        assert_eq!(cov.degree(), 2);
        assert_eq!(cov.fiber_poly(&c(4)), tpoly(&[-4, 0, 1]));
        let leg = legendre(3);
        // F(5, U) = U^2 - 5*4*2 = U^2 - 40
        assert_eq!(leg.fiber_poly(&c(5)), tpoly(&[-40, 0, 1]));
        // infinity fiber of U^2 - T: constant (all mass at u = infinity)
        assert_eq!(cov.fiber_poly_at_infinity(), tpoly(&[-1]));
    }

    #[test]
    fn rejects_reducible_models() {
        // (U - T)(U + T) = U^2 - T^2
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1]), KPoly::zero(), KPoly::one()]);
        assert!(matches!(
            PlaneCover::new(q(), f, None),
            Err(CoverError::NotIrreducible(_))
        ));
        // content in U: T*(U^2 - T)
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1]), KPoly::zero(), tpoly(&[0, 1])]);
        assert!(PlaneCover::new(q(), f, None).is_err());
    }

    #[test]
    fn singular_point_examples() {
        // U^2 - T^3: cusp at (0,0)
        let f = BiPoly::new(vec![tpoly(&[0, 0, 0, -1]), KPoly::zero(), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let sp = singular_points(&cov);
        assert_eq!(
            sp,
            vec![SingularLocus::Rational { tau: c(0), omega: c(0) }]
        );
        // U^2 - T: smooth
        assert!(singular_points(&u2_minus_t()).is_empty());
        // U^2 - T^2(T+1): node at (0,0)
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1, -1]), KPoly::zero(), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let sp = singular_points(&cov);
        assert_eq!(
            sp,
            vec![SingularLocus::Rational { tau: c(0), omega: c(0) }]
        );
    }

    #[test]
    fn critical_data_u2_minus_t() {
        let cov = u2_minus_t();
        let cd = critical_polynomial(&cov).unwrap();
        assert_eq!(cd.delta, tpoly(&[0, 1]));
        assert!(cd.infinity_critical);
        assert!(cd.infinity_certified);
        assert_eq!(cd.infinity_profile, Some(vec![2]));
        assert_eq!(cd.factors.len(), 1);
        assert_eq!(cd.factors[0].profile, Some(vec![2]));
        assert_eq!(cd.m(), 1);
    }

    #[test]
    fn critical_data_legendre() {
        let cov = legendre(3);
        let cd = critical_polynomial(&cov).unwrap();
        // Delta = T(T-1)(T-3)
        let expected = tpoly(&[0, 1]) * tpoly(&[-1, 1]) * tpoly(&[-3, 1]);
        assert_eq!(cd.delta, expected);
        assert_eq!(cd.m(), 3);
        assert!(cd.infinity_critical);
        assert_eq!(cd.infinity_profile, Some(vec![2]));
        for f in &cd.factors {
            assert_eq!(f.profile, Some(vec![2]), "factor {:?}", f.poly);
            assert!(f.certified);
        }
    }

    #[test]
    fn critical_data_cubic() {
        let cov = cubic_cover();
        let cd = critical_polynomial(&cov).unwrap();
        // Delta = T^2 - 4, profiles [2,1] at both values
        assert_eq!(cd.delta, tpoly(&[-4, 0, 1]));
        assert!(cd.infinity_critical);
        assert_eq!(cd.infinity_profile, Some(vec![3]));
        for f in &cd.factors {
            assert_eq!(f.profile, Some(vec![2, 1]));
        }
        // fiber check: f_2 = (U+1)^2 (U-2)
        let f2 = cov.fiber_poly(&c(2));
        let expect = tpoly(&[1, 1]) * tpoly(&[1, 1]) * tpoly(&[-2, 1]);
        assert_eq!(f2, expect);
    }

    #[test]
    fn node_value_removed_from_delta() {
        // U^2 - T^2(T+1): R has the root 0 but the fiber there carries two
        // unramified branches; Delta keeps only the genuine critical value
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1, -1]), KPoly::zero(), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let cd = critical_polynomial(&cov).unwrap();
        // critical values: U^2 = T^2(T+1) ramifies where the cubic has a
        // simple zero: T = -1; the node at T = 0 is not critical
        assert_eq!(cd.delta, tpoly(&[1, 1]));
    }

    #[test]
    fn delta_divides_squarefree_resultant() {
        for cov in [u2_minus_t(), legendre(3), legendre(5), cubic_cover()] {
            let cd = critical_polynomial(&cov).unwrap();
            let rad = cd.resultant.squarefree_monic();
            let (_, rem) = rad.divrem(&cd.delta);
            assert!(rem.is_zero(), "Delta must divide the squarefree resultant");
            // every profile sums to n and has an entry >= 2
            for f in &cd.factors {
                if let Some(p) = &f.profile {
                    assert_eq!(p.iter().map(|&e| e as usize).sum::<usize>(), cov.degree());
                    assert!(p.iter().any(|&e| e >= 2));
                }
            }
            // at least 2 distinct critical values counting infinity
            let count = cd.m() + if cd.infinity_critical { 1 } else { 0 };
            assert!(count >= 2 || cd.m() >= 2);
        }
    }

    #[test]
    fn genus_bound_on_m() {
        // m <= 2g + 2n - 2 for the examples with known genus
        for (cov, g, n) in [(u2_minus_t(), 0u32, 2usize), (legendre(3), 1, 2), (cubic_cover(), 0, 3)] {
            let cd = critical_polynomial(&cov).unwrap();
            assert!(cd.m() <= (2 * g as usize + 2 * n).saturating_sub(2));
        }
    }
}
