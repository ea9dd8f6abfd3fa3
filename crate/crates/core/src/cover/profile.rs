//! Ramification-index extraction at a fiber of a plane model.
//!
//! Given a bivariate model `G(S, U)` whose interesting fiber sits over
//! `S = 0`, every point of the smooth curve above that fiber contributes its
//! ramification index `e_P = v_P(S)`. A point shows up as a root of the
//! fiber polynomial in some shear chart `u * s^j` (for poles of `u`) or
//! `s^j / u` (for deep zeros); at a root where the chart curve is smooth in
//! the plane, the root multiplicity is exactly `e_P`. Points that only ever
//! appear at singular chart points are reported as uncertified mass rather
//! than guessed.

use num_traits::Zero;

use crate::field::{FieldElement, NumberField};
use crate::poly::bipoly::BiPoly;
use crate::poly::Poly;

pub type KPoly = Poly<FieldElement>;

/// Outcome of analyzing one fiber: certified ramification indices with
/// point counts, plus the mass (sum of e_P) that could not be attributed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueAnalysis {
    /// (ramification index e, number of points with that index)
    pub entries: Vec<(u32, usize)>,
    pub uncertified_mass: usize,
}

impl ValueAnalysis {
    pub fn complete(&self) -> bool {
        self.uncertified_mass == 0
    }

    /// The multiset of ramification indices, sorted descending, when every
    /// point is accounted for.
    pub fn profile(&self) -> Option<Vec<u32>> {
        if !self.complete() {
            return None;
        }
        let mut out = Vec::new();
        for (e, count) in &self.entries {
            for _ in 0..*count {
                out.push(*e);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Some(out)
    }

    /// Some point certainly has e >= 2.
    pub fn certified_ramified(&self) -> bool {
        self.entries.iter().any(|(e, c)| *e >= 2 && *c > 0)
    }

    /// Every point is certified with e = 1.
    pub fn certified_unramified(&self) -> bool {
        self.complete() && self.entries.iter().all(|(e, _)| *e == 1)
    }

    pub fn total_mass(&self) -> usize {
        self.entries.iter().map(|(e, c)| *e as usize * c).sum::<usize>() + self.uncertified_mass
    }

    fn push(&mut self, e: u32, count: usize) {
        if count == 0 {
            return;
        }
        match self.entries.iter_mut().find(|(e0, _)| *e0 == e) {
            Some((_, c)) => *c += count,
            None => self.entries.push((e, count)),
        }
    }
}

enum Family {
    /// charts `u * s^j`: poles of u descend into view as j grows
    Shear,
    /// charts `s^j / u`: deep zeros of u come into view as j grows
    Inverse,
}

/// Remove the `S`-content (power of S dividing every monomial).
fn primitive_s(g: &BiPoly) -> BiPoly {
    let mons = g.monomials();
    let min_i = mons.iter().map(|&(i, _, _)| i).min().unwrap_or(0);
    if min_i == 0 {
        return g.clone();
    }
    BiPoly::from_monomials(
        &mons.into_iter().map(|(i, j, c)| (i - min_i, j, c)).collect::<Vec<_>>(),
    )
}

fn build_chart(g: &BiPoly, family: &Family, j: usize) -> BiPoly {
    let n = g.deg_u();
    let mons = g.monomials();
    let mapped: Vec<(i64, usize, FieldElement)> = mons
        .into_iter()
        .map(|(i, b, c)| match family {
            // U = Utilde * S^{-j}: S^i U^b -> S^{i - j b} Utilde^b
            Family::Shear => (i as i64 - (j * b) as i64, b, c),
            // U = S^j / W: S^i U^b -> S^{i + j b} W^{n - b}
            Family::Inverse => ((i + j * b) as i64, n - b, c),
        })
        .collect();
    let min_i = mapped.iter().map(|&(i, _, _)| i).min().unwrap();
    let shifted: Vec<(usize, usize, FieldElement)> =
        mapped.into_iter().map(|(i, b, c)| ((i - min_i) as usize, b, c)).collect();
    BiPoly::from_monomials(&shifted)
}

/// Certify points at the nonzero roots of the chart's fiber at `S = 0`.
/// Returns the mass (with multiplicity) seen at nonzero roots.
fn certify_nonzero_roots(chart: &BiPoly, out: &mut ValueAnalysis) -> usize {
    let zero = FieldElement::zero();
    let phi = chart.fiber(&zero);
    if phi.is_zero() {
        return 0;
    }
    let zero_mult = (0..=phi.deg()).take_while(|&k| phi.coeff(k).is_zero()).count();
    let psi = KPoly::new(phi.coeffs()[zero_mult..].to_vec());
    if psi.is_constant() {
        return 0;
    }
    let ds_fiber = chart.partial_t().fiber(&zero);
    let mut seen = 0usize;
    for (h, mu) in psi.yun() {
        seen += mu as usize * h.deg();
        if mu == 1 {
            // simple fiber root: the plane point is smooth there
            out.push(1, h.deg());
            continue;
        }
        let bad = if ds_fiber.is_zero() { h.clone() } else { h.gcd(&ds_fiber) };
        let good_deg = h.deg() - bad.deg();
        out.push(mu, good_deg);
        out.uncertified_mass += mu as usize * bad.deg();
    }
    seen
}

/// Fiber mass sitting at `U = 0` of the chart (root multiplicity of 0).
fn origin_mass(chart: &BiPoly) -> usize {
    let phi = chart.fiber(&FieldElement::zero());
    if phi.is_zero() {
        return 0;
    }
    (0..=phi.deg()).take_while(|&k| phi.coeff(k).is_zero()).count()
}

/// Is the chart curve smooth in the plane at `(0, 0)`?
fn origin_smooth(chart: &BiPoly) -> bool {
    let zero = FieldElement::zero();
    let ds = chart.partial_t().eval(&zero, &zero);
    let du = chart.partial_u().eval(&zero, &zero);
    !ds.is_zero() || !du.is_zero()
}

/// Analyze the fiber of `g` over `S = 0`. `g` must have `deg_U = n`, the
/// degree of the cover.
pub fn analyze_value(g: &BiPoly, n: usize, _field: &NumberField) -> ValueAnalysis {
    assert_eq!(g.deg_u(), n, "model degree drop before analysis");
    let g = primitive_s(g);
    let mut out = ValueAnalysis { entries: vec![], uncertified_mass: 0 };
    let zero = FieldElement::zero();
    let phi = g.fiber(&zero);
    debug_assert!(!phi.is_zero(), "primitive model has a nonzero fiber");
    certify_nonzero_roots(&g, &mut out);
    let mass_zero = origin_mass(&g);
    let mass_pole = n - phi.deg();
    // deep zeros of u: first try the origin of the base chart, which hosts
    // exactly this group, then the inverse-shear ladder
    chase_group(&g, n, mass_zero, Family::Inverse, &mut out);
    // poles of u: the origin of the plain inverse chart hosts exactly this
    // group, then the shear ladder
    chase_group(&g, n, mass_pole, Family::Shear, &mut out);
    debug_assert_eq!(out.total_mass(), n, "mass accounting");
    out
}

fn chase_group(g: &BiPoly, n: usize, mass: usize, family: Family, out: &mut ValueAnalysis) {
    if mass == 0 {
        return;
    }
    let mut pending = mass;
    // Exclusive first chart: for deep zeros the base origin, for poles the
    // origin of the plain inverse chart. Both host exactly this group.
    let first = match family {
        Family::Inverse => g.clone(),
        Family::Shear => build_chart(g, &Family::Inverse, 0),
    };
    if origin_mass(&first) == pending && origin_smooth(&first) {
        out.push(pending as u32, 1);
        return;
    }
    // Shear ladder: charts j = 1, 2, ... bring group points to nonzero
    // roots one slope class at a time.
    let ladder = match family {
        Family::Inverse => Family::Inverse,
        Family::Shear => Family::Shear,
    };
    let cap = n * (g.deg_t() + 2) + 4;
    for j in 1..=cap {
        if pending == 0 {
            return;
        }
        let chart = build_chart(g, &ladder, j);
        let before = out.clone();
        let seen = certify_nonzero_roots(&chart, out);
        let newly_accounted = out.total_mass() - before.total_mass();
        debug_assert_eq!(newly_accounted, seen);
        pending = pending.saturating_sub(seen);
        if pending == 0 {
            return;
        }
        // A crowded origin can still be certified when this group is the
        // only mass in the whole fiber and nothing was split off yet.
        if before.entries.is_empty()
            && before.uncertified_mass == 0
            && out.entries.is_empty()
            && out.uncertified_mass == 0
        {
            let z = origin_mass(&chart);
            if z == pending && origin_smooth(&chart) {
                out.push(pending as u32, 1);
                return;
            }
        }
    }
    out.uncertified_mass += pending;
}

/// Analysis of a fiber over a critical value living in the extension
/// `L = K[theta]/(q)`: Yun decomposition over `L` with smoothness checked
/// through gcds against the T-partial, plus a one-step inverse chart for a
/// degree drop. No shear ladder (only needed at rational values at desk
/// scale).
pub fn analyze_value_over_extension(
    f: &BiPoly,
    q: &KPoly,
    n: usize,
    _field: &NumberField,
) -> ValueAnalysis {
    use crate::poly::ext::{lift_poly, ExtElt};
    use std::rc::Rc;

    let modulus = Rc::new(q.monic());
    let theta = ExtElt::generator(modulus.clone());
    // fiber over theta: sum_j a_j(theta) U^j in L[U]
    let eval_at_theta = |p: &KPoly| -> ExtElt {
        let lifted = lift_poly(p, &modulus);
        lifted.eval(&theta)
    };
    let fiber: Poly<ExtElt> =
        Poly::new(f.u_coeffs().iter().map(eval_at_theta).collect());
    let ft_fiber: Poly<ExtElt> =
        Poly::new(f.partial_t().u_coeffs().iter().map(eval_at_theta).collect());
    let mut out = ValueAnalysis { entries: vec![], uncertified_mass: 0 };
    assert!(!fiber.is_zero(), "content-free model cannot vanish on a whole fiber");
    for (h, mu) in fiber.yun() {
        if mu == 1 {
            out.push(1, h.deg());
            continue;
        }
        let bad = if ft_fiber.is_zero() { h.clone() } else { h.gcd(&ft_fiber) };
        let good = h.deg() - bad.deg();
        out.push(mu, good);
        out.uncertified_mass += mu as usize * bad.deg();
    }
    let drop = n - fiber.deg();
    if drop > 0 {
        // points at u = infinity over this value: the reversed model's
        // 0-root; smooth iff the T-partial of the reversed model is nonzero
        // there, i.e. a_n'(theta) != 0 (or drop = 1)
        if drop == 1 {
            out.push(1, 1);
        } else {
            let an = f.lc_u();
            let dan = eval_at_theta(&an.derivative());
            if !dan.is_zero() {
                out.push(drop as u32, 1);
            } else {
                out.uncertified_mass += drop;
            }
        }
    }
    debug_assert_eq!(out.total_mass(), n);
    out
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

    #[test]
    fn simple_double_root_value() {
        // F = U^2 - T at its critical value 0: fiber U^2, smooth point,
        // profile [2]
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        let a = analyze_value(&f, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
    }

    #[test]
    fn legendre_critical_values() {
        // F = U^2 - T(T-1)(T-3) at T = 0 (shift is identity): profile [2]
        let g3 = tpoly(&[0, 3, -4, 1]); // T(T-1)(T-3)
        let f = BiPoly::new(vec![g3.scale(&c(-1)), KPoly::zero(), KPoly::one()]);
        let a = analyze_value(&f, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
        assert!(a.certified_ramified());
    }

    #[test]
    fn cubic_profile_two_one() {
        // F = U^3 - 3U - T at T = 2: fiber (U+1)^2 (U-2): profile [2,1]
        let f = BiPoly::new(vec![tpoly(&[0, -1]), tpoly(&[-3]), KPoly::zero(), KPoly::one()]);
        let shifted = f.shift_t(&c(2));
        let a = analyze_value(&shifted, 3, &q());
        assert_eq!(a.profile(), Some(vec![2, 1]));
    }

    #[test]
    fn non_critical_value_all_ones() {
        // F = U^2 - T at T = 4: two simple points
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        let shifted = f.shift_t(&c(4));
        let a = analyze_value(&shifted, 2, &q());
        assert_eq!(a.profile(), Some(vec![1, 1]));
        assert!(a.certified_unramified());
    }

    #[test]
    fn infinity_of_u2_minus_t() {
        // reciprocal model S U^2 - 1 at S = 0: single point with e = 2 at
        // u = infinity, found by the shear ladder
        let recip = BiPoly::from_monomials(&[(1, 2, c(1)), (0, 0, c(-1))]);
        let a = analyze_value(&recip, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
    }

    #[test]
    fn infinity_of_cubic() {
        // U^3 - 3U - T reciprocal: S U^3 - 3 S U - 1: e = 3 via the inverse
        // chart
        let recip =
            BiPoly::from_monomials(&[(1, 3, c(1)), (1, 1, c(-3)), (0, 0, c(-1))]);
        let a = analyze_value(&recip, 3, &q());
        assert_eq!(a.profile(), Some(vec![3]));
    }

    #[test]
    fn infinity_of_legendre() {
        // F = U^2 - T(T-1)(T-3), reciprocal model S^3 U^2 - (1-S)(1-3S):
        // cusp in the inverse chart, resolved by the shear ladder at j = 2
        let recip = BiPoly::from_monomials(&[
            (3, 2, c(1)),
            (0, 0, c(-1)),
            (1, 0, c(4)),
            (2, 0, c(-3)),
        ]);
        let a = analyze_value(&recip, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
    }

    #[test]
    fn node_branches_are_separated() {
        // F = U^2 - T^2(T+1) has a node at (0,0): the inverse chart
        // separates the two branches, both unramified, so 0 is certified
        // non-critical
        let f = BiPoly::new(vec![tpoly(&[0, 0, -1, -1]), KPoly::zero(), KPoly::one()]);
        let a = analyze_value(&f, 2, &q());
        assert_eq!(a.profile(), Some(vec![1, 1]));
        assert!(a.certified_unramified());
    }

    #[test]
    fn cusp_value_analysis() {
        // F = U^2 - T^3: the cusp (t = z^2, u = z^3) is a single point with
        // e = 2, resolved by the inverse-shear ladder at j = 2
        let f = BiPoly::new(vec![tpoly(&[0, 0, 0, -1]), KPoly::zero(), KPoly::one()]);
        let a = analyze_value(&f, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
    }

    #[test]
    fn extension_value_profile() {
        // U^3 - 3U - T at the critical values, via the quadratic factor
        // route: q = T - 2 treated as an extension of degree 1 still works
        let f = BiPoly::new(vec![tpoly(&[0, -1]), tpoly(&[-3]), KPoly::zero(), KPoly::one()]);
        let q1 = tpoly(&[-2, 1]);
        let a = analyze_value_over_extension(&f, &q1, 3, &q());
        assert_eq!(a.profile(), Some(vec![2, 1]));
        // and over a genuine quadratic extension: F = U^2 - (T^2 - 2):
        // critical values are the roots of T^2 - 2
        let g = BiPoly::new(vec![tpoly(&[2, 0, -1]), KPoly::zero(), KPoly::one()]);
        let q2 = tpoly(&[-2, 0, 1]);
        let a = analyze_value_over_extension(&g, &q2, 2, &q());
        assert_eq!(a.profile(), Some(vec![2]));
    }
}
