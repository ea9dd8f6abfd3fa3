//! Bivariate polynomials `F(T, U)` over the base field, stored as
//! U-coefficient vectors of T-polynomials, with fraction-free resultants.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldElement, NumberField};
use crate::poly::Poly;
use crate::rat::{Int, Rat};

pub type KPoly = Poly<FieldElement>;

/// `F = sum_j cu[j](T) * U^j`; `cu` ends with a nonzero polynomial.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly {
    cu: Vec<KPoly>,
}

impl BiPoly {
    pub fn new(mut cu: Vec<KPoly>) -> Self {
        while cu.last().map(|p| p.is_zero()).unwrap_or(false) {
            cu.pop();
        }
        BiPoly { cu }
    }

    pub fn zero() -> Self {
        BiPoly { cu: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.cu.is_empty()
    }

    pub fn deg_u(&self) -> usize {
        if self.cu.is_empty() {
            0
        } else {
            self.cu.len() - 1
        }
    }

    pub fn deg_t(&self) -> usize {
        self.cu.iter().map(|p| p.deg()).max().unwrap_or(0)
    }

    pub fn coeff_u(&self, j: usize) -> KPoly {
        self.cu.get(j).cloned().unwrap_or_else(KPoly::zero)
    }

    pub fn u_coeffs(&self) -> &[KPoly] {
        &self.cu
    }

    /// Leading U-coefficient `a_n(T)`.
    pub fn lc_u(&self) -> KPoly {
        self.cu.last().cloned().expect("lc of zero bivariate")
    }

    pub fn monomials(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (j, p) in self.cu.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn from_monomials(mons: &[(usize, usize, FieldElement)]) -> Self {
        let ju = mons.iter().map(|&(_, j, _)| j).max().unwrap_or(0);
        let mut cu = vec![KPoly::zero(); ju + 1];
        for (i, j, c) in mons {
            cu[*j] = cu[*j].clone() + KPoly::monomial(c.clone(), *i);
        }
        BiPoly::new(cu)
    }

    /// Fiber polynomial `F(tau, U)`.
    pub fn fiber(&self, tau: &FieldElement) -> KPoly {
        KPoly::new(self.cu.iter().map(|p| p.eval(tau)).collect())
    }

    /// Evaluation at a point.
    pub fn eval(&self, t: &FieldElement, u: &FieldElement) -> FieldElement {
        self.fiber(t).eval(u)
    }

    pub fn partial_u(&self) -> BiPoly {
        if self.cu.len() <= 1 {
            return BiPoly::zero();
        }
        let mut out = Vec::with_capacity(self.cu.len() - 1);
        for (j, p) in self.cu.iter().enumerate().skip(1) {
            out.push(p.scale(&FieldElement::from_int(j as i64)));
        }
        BiPoly::new(out)
    }

    pub fn partial_t(&self) -> BiPoly {
        BiPoly::new(self.cu.iter().map(|p| p.derivative()).collect())
    }

    /// `F(T, U - c*T)`: the plane model of the auxiliary generator
    /// `u + c*t`.
    pub fn shear_u(&self, c: &FieldElement) -> BiPoly {
        // (U - cT)^j expanded as a polynomial in U with KPoly coefficients.
        let minus_ct = KPoly::new(vec![FieldElement::zero(), -c.clone()]);
        let mut out = BiPoly::zero();
        // power[i] = coefficient vector of (U - cT)^j built iteratively
        let mut pw: Vec<KPoly> = vec![KPoly::one()]; // (U - cT)^0
        for (j, aj) in self.cu.iter().enumerate() {
            if j > 0 {
                // multiply pw by (U - cT)
                let mut next = vec![KPoly::zero(); pw.len() + 1];
                for (i, q) in pw.iter().enumerate() {
                    next[i + 1] = next[i + 1].clone() + q.clone();
                    next[i] = next[i].clone() + q.clone() * minus_ct.clone();
                }
                pw = next;
            }
            if aj.is_zero() {
                continue;
            }
            let term = BiPoly::new(pw.iter().map(|q| q.clone() * aj.clone()).collect());
            out = out.add(&term);
        }
        out
    }

    /// Substitute `T -> alpha + S`.
    pub fn shift_t(&self, alpha: &FieldElement) -> BiPoly {
        BiPoly::new(self.cu.iter().map(|p| p.shift(alpha)).collect())
    }

    /// Substitute `U -> u0 + U`.
    pub fn shift_u(&self, u0: &FieldElement) -> BiPoly {
        let mut out = BiPoly::zero();
        // Horner in U: F = sum a_j U^j evaluated at (U + u0)
        let shift = BiPoly::new(vec![KPoly::constant(u0.clone()), KPoly::one()]);
        for j in (0..self.cu.len()).rev() {
            out = out.mul(&shift);
            out = out.add(&BiPoly::new(vec![self.cu[j].clone()]));
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut cu = vec![KPoly::zero(); self.cu.len() + other.cu.len() - 1];
        for (i, a) in self.cu.iter().enumerate() {
            for (j, b) in other.cu.iter().enumerate() {
                cu[i + j] = cu[i + j].clone() + a.clone() * b.clone();
            }
        }
        BiPoly::new(cu)
    }

    /// `U^(deg_u) * F(T, 1/U)`.
    pub fn reverse_u(&self) -> BiPoly {
        let mut cu = self.cu.clone();
        cu.reverse();
        BiPoly::new(cu)
    }

    /// Swap the roles of T and U.
    pub fn swap_vars(&self) -> BiPoly {
        let mons: Vec<(usize, usize, FieldElement)> =
            self.monomials().into_iter().map(|(i, j, c)| (j, i, c)).collect();
        BiPoly::from_monomials(&mons)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.cu.len().max(other.cu.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(self.coeff_u(j) + other.coeff_u(j));
        }
        BiPoly::new(out)
    }

    /// Content as a polynomial in T: monic gcd of the U-coefficients.
    pub fn content_u(&self) -> KPoly {
        let mut g = KPoly::zero();
        for p in &self.cu {
            g = g.gcd(p);
        }
        g
    }

    /// Scale by a rational so every coefficient is integral in `O_K` with
    /// integer content 1; returns the scaled polynomial.
    pub fn integral_model(&self, field: &NumberField) -> BiPoly {
        let mut den = Int::one();
        for (_, _, c) in self.monomials() {
            let (u, v) = crate::ideal::omega_coords(&c, field);
            den = den.lcm(u.denom()).lcm(v.denom());
        }
        let scaled = self.scale(&FieldElement::from_rat(Rat::from_integer(den)));
        // divide by the integer content of all coordinates
        let mut g = Int::zero();
        for (_, _, c) in scaled.monomials() {
            let (u, v) = crate::ideal::omega_coords(&c, field);
            g = g.gcd(&u.to_integer()).gcd(&v.to_integer());
        }
        if g.is_zero() || g.is_one() {
            return scaled;
        }
        scaled.scale(&FieldElement::from_rat(Rat::new(Int::one(), g.abs())))
    }

    pub fn scale(&self, c: &FieldElement) -> BiPoly {
        BiPoly::new(self.cu.iter().map(|p| p.scale(c)).collect())
    }

    /// Resultant with respect to `U`: Sylvester determinant over `K[T]`,
    /// computed fraction-free (Bareiss).
    pub fn resultant_u(&self, other: &BiPoly) -> KPoly {
        assert!(!self.is_zero() && !other.is_zero());
        let m = self.deg_u();
        let n = other.deg_u();
        assert!(m >= 1 || n >= 1, "resultant needs a nonconstant input");
        if m == 0 {
            return pow_poly(&self.coeff_u(0), n as u32);
        }
        if n == 0 {
            return pow_poly(&other.coeff_u(0), m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![KPoly::zero(); size]; size];
        for row in 0..n {
            for k in 0..=m {
                mat[row][row + k] = self.coeff_u(m - k);
            }
        }
        for row in 0..m {
            for k in 0..=n {
                mat[n + row][row + k] = other.coeff_u(n - k);
            }
        }
        bareiss_det(mat)
    }
}

fn pow_poly(p: &KPoly, e: u32) -> KPoly {
    let mut out = KPoly::one();
    for _ in 0..e {
        out = out * p.clone();
    }
    out
}

/// Fraction-free determinant over `K[T]`.
fn bareiss_det(mut m: Vec<Vec<KPoly>>) -> KPoly {
    let n = m.len();
    if n == 0 {
        return KPoly::one();
    }
    let mut sign = 1i32;
    let mut prev = KPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return KPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = KPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
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

    // U^2 - T
    fn u2_minus_t() -> BiPoly {
        BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()])
    }

    #[test]
    fn fiber_and_partials() {
        let f = u2_minus_t();
        assert_eq!(f.deg_u(), 2);
        assert_eq!(f.deg_t(), 1);
        let fib = f.fiber(&c(4));
        assert_eq!(fib, KPoly::new(vec![c(-4), c(0), c(1)]));
        let fu = f.partial_u();
        assert_eq!(fu.fiber(&c(0)), KPoly::new(vec![c(0), c(2)]));
        let ft = f.partial_t();
        assert_eq!(ft.fiber(&c(9)), KPoly::constant(c(-1)));
    }

    #[test]
    fn resultant_examples() {
        // Res_U(U^2 - T, 2U) = -4T
        let f = u2_minus_t();
        let g = BiPoly::new(vec![KPoly::zero(), tpoly(&[2])]);
        let r = f.resultant_u(&g);
        assert_eq!(r, tpoly(&[0, -4]));
        // Res_U(U - T, U + T) = 2T
        let a = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::one()]);
        let b = BiPoly::new(vec![tpoly(&[0, 1]), KPoly::one()]);
        assert_eq!(a.resultant_u(&b), tpoly(&[0, 2]));
        // Res_U(U^2 - T(T-1)(T-2), 2U) = -4 T(T-1)(T-2)
        let g3 = tpoly(&[0, 2, -3, 1]); // T(T-1)(T-2) = T^3 - 3T^2 + 2T
        let f3 = BiPoly::new(vec![g3.scale(&c(-1)), KPoly::zero(), KPoly::one()]);
        let du = BiPoly::new(vec![KPoly::zero(), tpoly(&[2])]);
        assert_eq!(f3.resultant_u(&du), g3.scale(&c(-4)));
    }

    #[test]
    fn resultant_specializes() {
        // Res_U(F, G)(tau) = Res(F(tau,.), G(tau,.)) away from lc vanishing
        let f = BiPoly::new(vec![tpoly(&[1, 2]), tpoly(&[0, 1]), tpoly(&[3])]);
        let g = BiPoly::new(vec![tpoly(&[-1, 0, 1]), tpoly(&[2, 1])]);
        let r = f.resultant_u(&g);
        for tau in [-3i64, -1, 0, 1, 2, 5, 7] {
            let tau = c(tau);
            let lhs = r.eval(&tau);
            let rhs = f.fiber(&tau).resultant(&g.fiber(&tau));
            assert_eq!(lhs, rhs, "tau = {:?}", tau);
        }
    }

    #[test]
    fn shear_matches_substitution() {
        let f = u2_minus_t();
        let sheared = f.shear_u(&c(3));
        // F(T, U - 3T) evaluated must match
        for (t, u) in [(1i64, 2i64), (0, 5), (-2, 3), (4, -1)] {
            let (t, u) = (c(t), c(u));
            let direct = f.eval(&t, &(u.clone() - c(3) * t.clone()));
            assert_eq!(sheared.eval(&t, &u), direct);
        }
        // leading U-coefficient is unchanged by the shear
        assert_eq!(sheared.lc_u(), f.lc_u());
    }

    #[test]
    fn integral_scaling() {
        let q = NumberField::rational();
        // (1/3) U^2 - (5/6) T -> 2 U^2 - 5 T
        let f = BiPoly::new(vec![
            KPoly::new(vec![FieldElement::zero(), FieldElement::from_rat(crate::rat::ratio(-5, 6))]),
            KPoly::zero(),
            KPoly::constant(FieldElement::from_rat(crate::rat::ratio(1, 3))),
        ]);
        let m = f.integral_model(&q);
        assert_eq!(m.coeff_u(2), tpoly(&[2]));
        assert_eq!(m.coeff_u(0), tpoly(&[0, -5]));
    }

    #[test]
    fn swap_and_reverse() {
        let f = u2_minus_t();
        let s = f.swap_vars(); // T^2... no: U^2 - T becomes T^2*... swap: (i,j) monomials
        assert_eq!(s.deg_u(), 1);
        assert_eq!(s.deg_t(), 2);
        let r = f.reverse_u(); // 1 - T U^2
        assert_eq!(r.coeff_u(0), KPoly::one());
        assert_eq!(r.coeff_u(2), tpoly(&[0, -1]));
    }
}
