//! Power-series expansion of `u` in `t` at an unramified base point of the
//! cover, the integrality check for its coefficients, and the sampled
//! verification of the valuation identity between `t - t(A)` and
//! `u - u(A)`.

use num_traits::{One, Zero};

use crate::cover::{CoverError, PlaneCover};
use crate::field::{FieldElement, NumberField};
use crate::ideal::{places_up_to, PrimePlace};
use crate::padic::{hensel_lift, PAdicContext};
use crate::poly::bipoly::BiPoly;
use crate::poly::Poly;

pub type KPoly = Poly<FieldElement>;

/// The expansion `u - u0 = sum_{k >= nu} a_k (t - tau0)^k` at a base point
/// `A = (tau0, u0)` with `v_A(t - tau0) = 1`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    pub base: (FieldElement, FieldElement),
    /// `nu = v_A(u - u0)`, the index of the first nonzero coefficient
    pub nu: u32,
    /// `a_1 .. a_N` (so `coeffs[k-1]` is `a_k`)
    coeffs: Vec<FieldElement>,
}

impl PuiseuxSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_k` for `1 <= k <= N`.
    pub fn coeff(&self, k: usize) -> &FieldElement {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Truncated evaluation: `u0 + sum a_k (tau - tau0)^k`.
    pub fn eval_u(&self, tau: &FieldElement) -> FieldElement {
        let s = tau.clone() - self.base.0.clone();
        let mut acc = FieldElement::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * s.clone() + a.clone();
        }
        self.base.1.clone() + acc * s
    }
}

// truncated power-series helpers over K: index = power of s, fixed length
fn ts_mul(a: &[FieldElement], b: &[FieldElement], len: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn ts_add(a: &[FieldElement], b: &[FieldElement], len: usize) -> Vec<FieldElement> {
    (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(FieldElement::zero);
            let y = b.get(k).cloned().unwrap_or_else(FieldElement::zero);
            x + y
        })
        .collect()
}

/// Evaluates `G(s, W(s))` truncated to `len` terms, where `G` is bivariate
/// in `(S, U)` and `W` a truncated series.
fn eval_bi_series(g: &BiPoly, w: &[FieldElement], len: usize) -> Vec<FieldElement> {
    let mut acc = vec![FieldElement::zero(); len];
    for j in (0..=g.deg_u()).rev() {
        acc = ts_mul(&acc, w, len);
        let cj = g.coeff_u(j);
        let cj_series: Vec<FieldElement> =
            (0..len.min(cj.deg() + 1)).map(|k| cj.coeff(k)).collect();
        acc = ts_add(&acc, &cj_series, len);
    }
    acc
}

/// Coefficients `a_1 .. a_N` of the expansion of `u` at the point
/// `A = (tau0, u0)` of the cover, solved by undetermined coefficients.
pub fn puiseux_expand(
    cover: &PlaneCover,
    base: (FieldElement, FieldElement),
    order: usize,
) -> Result<PuiseuxSeries, CoverError> {
    expand_on_model(cover.model(), base, order)
}

/// Series expansion on a raw plane model (the swapped model used for
/// u-side sampling may have U-degree 1, which a full cover rejects).
fn expand_on_model(
    f: &BiPoly,
    base: (FieldElement, FieldElement),
    order: usize,
) -> Result<PuiseuxSeries, CoverError> {
    let (tau0, u0) = &base;
    if !f.eval(tau0, u0).is_zero() {
        return Err(CoverError::NotOnCurve);
    }
    let fu = f.partial_u().eval(tau0, u0);
    if fu.is_zero() {
        if f.partial_t().eval(tau0, u0).is_zero() {
            return Err(CoverError::NotRegular);
        }
        return Err(CoverError::RamifiedBasePoint);
    }
    // local model G(s, w) = F(tau0 + s, u0 + w); G(0,0) = 0, G_w(0,0) = fu
    let g = f.shift_t(tau0).shift_u(u0);
    let n = order.max(1);
    let len = n + 1;
    let c01_inv = FieldElement::one() / fu;
    let mut w = vec![FieldElement::zero(); len];
    for k in 1..=n {
        let r = eval_bi_series(&g, &w, k + 1);
        let ak = -(r[k].clone() * c01_inv.clone());
        w[k] = ak;
    }
    // defining property: G(s, W) = 0 mod s^{N+1}
    debug_assert!(eval_bi_series(&g, &w, len).iter().all(|c| c.is_zero()));
    let nu = match w.iter().position(|c| !c.is_zero()) {
        Some(k) => k as u32,
        None => {
            return Err(CoverError::DegenerateModel(
                "u is constant along the branch to the requested order".into(),
            ))
        }
    };
    Ok(PuiseuxSeries { base, nu, coeffs: w[1..].to_vec() })
}

/// Integrality report for the series coefficients at every finite place of
/// norm at most `bound`.
#[derive(Clone, Debug)]
pub struct EisensteinReport {
    pub checked_places: usize,
    /// places where some coefficient is not a v-adic integer
    pub failures: Vec<String>,
}

impl EisensteinReport {
    pub fn all_integral(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn eisenstein_check(
    series: &PuiseuxSeries,
    field: &NumberField,
    bound: u64,
) -> EisensteinReport {
    let places = places_up_to(field, bound);
    let mut failures = Vec::new();
    let checked = places.len();
    for place in places {
        let bad = series
            .coeffs
            .iter()
            .any(|a| !a.is_zero() && place.valuation(a) < 0);
        if bad {
            failures.push(place.label());
        }
    }
    EisensteinReport { checked_places: checked, failures }
}

/// One sampled check of the valuation identity
/// `v(t(P) - t(A)) / v_A(t) = v(u(P) - u(A)) / v_A(u)`.
#[derive(Clone, Debug)]
pub struct NormRelationSample {
    pub vt: i64,
    pub vu: i64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct NormRelationReport {
    /// v_A(t - t(A))
    pub va_t: u32,
    /// v_A(u - u(A))
    pub va_u: u32,
    pub samples: Vec<NormRelationSample>,
    pub skipped: usize,
}

impl NormRelationReport {
    pub fn all_ok(&self) -> bool {
        self.samples.iter().all(|s| s.ok)
    }
}

/// Samples points `P` in the v-adic neighborhood of `A` by Hensel lifting
/// fiber roots, and compares the exact valuations of `t(P) - t(A)` and
/// `u(P) - u(A)` scaled by the geometric orders at `A`.
pub fn verify_norm_relation(
    cover: &PlaneCover,
    base: (FieldElement, FieldElement),
    place: &PrimePlace,
    samples: usize,
) -> Result<NormRelationReport, CoverError> {
    let f = cover.model();
    let (tau0, u0) = &base;
    if !f.eval(tau0, u0).is_zero() {
        return Err(CoverError::NotOnCurve);
    }
    let fu0 = f.partial_u().eval(tau0, u0);
    let ft0 = f.partial_t().eval(tau0, u0);
    if fu0.is_zero() && ft0.is_zero() {
        return Err(CoverError::NotRegular);
    }
    // Choose the coordinate with v_A = 1 as the sampling parameter.
    let t_side = !fu0.is_zero();
    let (va_t, va_u) = if t_side {
        let s = expand_on_model(f, base.clone(), 8)?;
        (1u32, s.nu)
    } else {
        // expand t in u on the swapped model
        let s = expand_on_model(&f.swap_vars(), (u0.clone(), tau0.clone()), 8)?;
        (s.nu, 1u32)
    };
    let pi = crate::ideal::primitive_element(place);
    let mut report =
        NormRelationReport { va_t, va_u, samples: Vec::new(), skipped: 0 };
    let mut made = 0usize;
    'outer: for j in 1u32..=6 {
        for c in 1i64..=4 {
            if made >= samples {
                break 'outer;
            }
            let offset = FieldElement::from_int(c) * pi.pow(j);
            let prec = 24 * place.e + 8 * j;
            let ctx = PAdicContext::new(place.clone(), prec);
            let (vt, vu) = if t_side {
                let tau = tau0.clone() + offset;
                let fiber = cover.fiber_poly(&tau);
                if fiber.coeffs().iter().any(|c| !c.is_zero() && ctx.valuation(c) < 0) {
                    report.skipped += 1;
                    continue;
                }
                let Ok(u_p) = hensel_lift(&fiber, u0, &ctx) else {
                    report.skipped += 1;
                    continue;
                };
                let du = u_p - u0.clone();
                if du.is_zero() {
                    report.skipped += 1;
                    continue;
                }
                (ctx.valuation(&(tau.clone() - tau0.clone())), ctx.valuation(&du))
            } else {
                let w = u0.clone() + offset;
                let tfiber = f.swap_vars().fiber(&w);
                if tfiber.coeffs().iter().any(|c| !c.is_zero() && ctx.valuation(c) < 0) {
                    report.skipped += 1;
                    continue;
                }
                let Ok(t_p) = hensel_lift(&tfiber, tau0, &ctx) else {
                    report.skipped += 1;
                    continue;
                };
                let dt = t_p - tau0.clone();
                if dt.is_zero() {
                    report.skipped += 1;
                    continue;
                }
                (ctx.valuation(&dt), ctx.valuation(&(w.clone() - u0.clone())))
            };
            // v(t - tau0) / va_t = v(u - u0) / va_u, cross-multiplied
            let ok = vt as i128 * va_u as i128 == vu as i128 * va_t as i128;
            report.samples.push(NormRelationSample { vt, vu, ok });
            made += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::prime_splitting;
    use crate::poly::bipoly::BiPoly;
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

    fn catalan_cover() -> PlaneCover {
        // U^2 - U + T
        let f = BiPoly::new(vec![tpoly(&[0, 1]), tpoly(&[-1]), KPoly::one()]);
        PlaneCover::new(q(), f, Some(0)).unwrap()
    }

    #[test]
    fn catalan_series() {
        let cov = catalan_cover();
        let s = puiseux_expand(&cov, (c(0), c(0)), 5).unwrap();
        assert_eq!(s.nu, 1);
        let expect = [1i64, 1, 2, 5, 14];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(k + 1), &c(*e), "a_{}", k + 1);
        }
    }

    #[test]
    fn other_branch_series() {
        // branch at (0, 1): first coefficients -1, then the two branches
        // sum to 1 identically
        let cov = catalan_cover();
        let s0 = puiseux_expand(&cov, (c(0), c(0)), 6).unwrap();
        let s1 = puiseux_expand(&cov, (c(0), c(1)), 6).unwrap();
        for k in 1..=6 {
            let sum = s0.coeff(k).clone() + s1.coeff(k).clone();
            assert!(sum.is_zero(), "a_{} of the two branches must cancel", k);
        }
        assert_eq!(s1.coeff(1), &c(-1));
    }

    #[test]
    fn monomial_series() {
        // F = U - T^2 at (0,0): u = t^2 exactly
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1]), KPoly::one()]);
        // deg_U = 1 < 2 is rejected by PlaneCover; expand via a direct
        // companion: U^2 - 2U + ... simplest: use (U - T^2)(U - 5) made
        // irreducible is not; instead test nu on U^2 - U + T^2:
        // u = t^2 + t^4 + ...
        let _ = f;
        let g = BiPoly::new(vec![tpoly(&[0, 0, 1]), tpoly(&[-1]), KPoly::one()]);
        let cov = PlaneCover::new(q(), g, Some(0)).unwrap();
        let s = puiseux_expand(&cov, (c(0), c(0)), 6).unwrap();
        assert_eq!(s.nu, 2);
        assert_eq!(s.coeff(2), &c(1));
        assert_eq!(s.coeff(4), &c(1));
        assert_eq!(s.coeff(3), &c(0));
    }

    #[test]
    fn series_errors() {
        let cov = catalan_cover();
        assert!(matches!(
            puiseux_expand(&cov, (c(0), c(5)), 4),
            Err(CoverError::NotOnCurve)
        ));
        // U^2 - T at (0,0): t ramifies
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        let cov2 = PlaneCover::new(q(), f, Some(0)).unwrap();
        assert!(matches!(
            puiseux_expand(&cov2, (c(0), c(0)), 4),
            Err(CoverError::RamifiedBasePoint)
        ));
        // singular point of U^2 - T^3
        let f = BiPoly::new(vec![tpoly(&[0, 0, 0, -1]), KPoly::zero(), KPoly::one()]);
        let cov3 = PlaneCover::new(q(), f, Some(0)).unwrap();
        assert!(matches!(
            puiseux_expand(&cov3, (c(0), c(0)), 4),
            Err(CoverError::NotRegular)
        ));
    }

    #[test]
    fn eisenstein_catalan() {
        let cov = catalan_cover();
        let s = puiseux_expand(&cov, (c(0), c(0)), 12).unwrap();
        let rep = eisenstein_check(&s, &q(), 50);
        assert!(rep.all_integral());
        assert!(rep.checked_places >= 15);
    }

    #[test]
    fn eisenstein_with_denominators() {
        // U^2 - 2U + T at (0,0): u = (1 - sqrt(1-t)) so the coefficients
        // have denominators that are powers of 2 and nothing else
        let f = BiPoly::new(vec![tpoly(&[0, 1]), tpoly(&[-2]), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let s = puiseux_expand(&cov, (c(0), c(0)), 10).unwrap();
        let rep = eisenstein_check(&s, &q(), 10);
        assert_eq!(rep.failures, vec!["2".to_string()]);
        // a_1 = 1/2
        assert_eq!(s.coeff(1), &FieldElement::from_rat(crate::rat::ratio(1, 2)));
    }

    #[test]
    fn zero_series_is_integral() {
        // the trivial series of u at a point where u - u0 = t^2-like:
        // monomial case checked above; a literally zero tail: use constant
        // branch impossible, so emulate by checking the report on an
        // all-integer series
        let cov = catalan_cover();
        let s = puiseux_expand(&cov, (c(0), c(0)), 3).unwrap();
        let rep = eisenstein_check(&s, &q(), 20);
        assert!(rep.all_integral());
    }

    #[test]
    fn norm_relation_u3_minus_t() {
        // F = U^3 - T (t = u^3), A = (0,0): v_A(t) = 3, v_A(u) = 1;
        // u-side sampling
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::zero(), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let v7 = prime_splitting(7, &q()).pop().unwrap();
        let rep = verify_norm_relation(&cov, (c(0), c(0)), &v7, 6).unwrap();
        assert_eq!((rep.va_t, rep.va_u), (3, 1));
        assert!(rep.all_ok());
        assert!(!rep.samples.is_empty());
    }

    #[test]
    fn norm_relation_catalan() {
        let cov = catalan_cover();
        let v5 = prime_splitting(5, &q()).pop().unwrap();
        let rep = verify_norm_relation(&cov, (c(0), c(0)), &v5, 8).unwrap();
        assert_eq!((rep.va_t, rep.va_u), (1, 1));
        assert!(rep.all_ok());
    }

    #[test]
    fn norm_relation_u2_minus_t() {
        // A = (0,0) on U^2 - T: regular (min(v_A(t), v_A(u)) = 1) though t
        // ramifies; sampling goes through the u side
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        let cov = PlaneCover::new(q(), f, Some(0)).unwrap();
        let v5 = prime_splitting(5, &q()).pop().unwrap();
        let rep = verify_norm_relation(&cov, (c(0), c(0)), &v5, 6).unwrap();
        assert_eq!((rep.va_t, rep.va_u), (2, 1));
        assert!(rep.all_ok());
    }

    #[test]
    fn series_converges_to_hensel_root() {
        // evaluating the truncated series at tau agrees with the Hensel
        // root to the guaranteed precision
        let cov = catalan_cover();
        let s = puiseux_expand(&cov, (c(0), c(0)), 8).unwrap();
        for (p, j) in [(5u64, 1u32), (7, 1), (11, 2), (13, 1)] {
            let place = prime_splitting(p, &q()).pop().unwrap();
            let tau = FieldElement::from_rat(rat((p as i64).pow(j))); // v(tau) = j
            let guarantee = (s.order() as i64 + 1) * j as i64;
            let ctx = PAdicContext::new(place, guarantee as u32 + 6);
            let fiber = cov.fiber_poly(&tau);
            let u_p = hensel_lift(&fiber, &c(0), &ctx).unwrap();
            let diff = s.eval_u(&tau) - u_p;
            assert!(
                diff.is_zero() || ctx.valuation(&diff) >= guarantee,
                "series vs Hensel at p={} j={}",
                p,
                j
            );
        }
    }
}
