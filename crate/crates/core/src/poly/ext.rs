//! Elements of a finite extension `L = K[x]/(q)` of the base field, just
//! enough field arithmetic to run gcds, Yun decompositions, and evaluations
//! of polynomials over `L`.
//!
//! Constants (degree-0 elements) carry no modulus so that `zero()` and
//! `one()` exist without context; the modulus is merged from whichever
//! operand has one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::field::FieldElement;
use crate::poly::Poly;

pub type KPoly = Poly<FieldElement>;

#[derive(Clone)]
pub struct ExtElt {
    rep: KPoly,
    modulus: Option<Rc<KPoly>>,
}

impl ExtElt {
    pub fn new(rep: KPoly, modulus: Rc<KPoly>) -> Self {
        assert!(modulus.deg() >= 1);
        let rep = rep.rem(&modulus);
        ExtElt { rep, modulus: Some(modulus) }
    }

    pub fn constant(c: FieldElement) -> Self {
        ExtElt { rep: KPoly::constant(c), modulus: None }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(modulus: Rc<KPoly>) -> Self {
        ExtElt::new(KPoly::x(), modulus)
    }

    pub fn rep(&self) -> &KPoly {
        &self.rep
    }

    pub fn as_base(&self) -> Option<FieldElement> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }

    fn merged_modulus(&self, other: &Self) -> Option<Rc<KPoly>> {
        match (&self.modulus, &other.modulus) {
            (None, m) => m.clone(),
            (m, None) => m.clone(),
            (Some(a), Some(b)) => {
                assert!(a.coeffs() == b.coeffs(), "mixed extension moduli");
                Some(a.clone())
            }
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero extension element");
        if let Some(c) = self.as_base() {
            return ExtElt { rep: KPoly::constant(FieldElement::one() / c), modulus: self.modulus.clone() };
        }
        let q = self.modulus.clone().expect("non-constant element has a modulus");
        let (g, s, _t) = ext_gcd(&self.rep, &q);
        assert!(g.is_constant(), "modulus not irreducible: zero divisor found");
        let ginv = FieldElement::one() / g.coeff(0);
        ExtElt::new(s.scale(&ginv), q)
    }
}

/// Extended Euclid over a coefficient field: returns `(g, s, t)` with
/// `s*a + t*b = g` (g not normalized).
pub fn ext_gcd<T: crate::poly::Scalar>(a: &Poly<T>, b: &Poly<T>) -> (Poly<T>, Poly<T>, Poly<T>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1.clone(), s0 - q.clone() * s1);
        (t0, t1) = (t1.clone(), t0 - q * t1);
    }
    (r0, s0, t0)
}

impl PartialEq for ExtElt {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Zero for ExtElt {
    fn zero() -> Self {
        ExtElt { rep: KPoly::zero(), modulus: None }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl One for ExtElt {
    fn one() -> Self {
        ExtElt::constant(FieldElement::one())
    }
}

impl Add for ExtElt {
    type Output = ExtElt;
    fn add(self, rhs: ExtElt) -> ExtElt {
        let m = self.merged_modulus(&rhs);
        ExtElt { rep: self.rep + rhs.rep, modulus: m }
    }
}

impl Sub for ExtElt {
    type Output = ExtElt;
    fn sub(self, rhs: ExtElt) -> ExtElt {
        self + (-rhs)
    }
}

impl Neg for ExtElt {
    type Output = ExtElt;
    fn neg(self) -> ExtElt {
        ExtElt { rep: -self.rep, modulus: self.modulus }
    }
}

impl Mul for ExtElt {
    type Output = ExtElt;
    fn mul(self, rhs: ExtElt) -> ExtElt {
        let m = self.merged_modulus(&rhs);
        let prod = self.rep * rhs.rep;
        match &m {
            Some(q) => ExtElt { rep: prod.rem(q), modulus: m },
            None => ExtElt { rep: prod, modulus: None },
        }
    }
}

impl Div for ExtElt {
    type Output = ExtElt;
    fn div(self, rhs: ExtElt) -> ExtElt {
        let m = self.merged_modulus(&rhs);
        let mut r = rhs;
        if r.modulus.is_none() {
            r.modulus = m.clone();
        }
        let inv = r.recip();
        self * inv
    }
}

impl fmt::Debug for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.rep)
    }
}

impl fmt::Display for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Lifts a polynomial over `K` to a polynomial over `L = K[x]/(q)`.
pub fn lift_poly(f: &KPoly, modulus: &Rc<KPoly>) -> Poly<ExtElt> {
    let _ = modulus;
    f.map(|c| ExtElt::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn qe(c: i64) -> FieldElement {
        FieldElement::from_rat(rat(c))
    }

    #[test]
    fn arithmetic_in_quadratic_extension() {
        // L = Q[x]/(x^2 - 2)
        let q = Rc::new(KPoly::new(vec![qe(-2), qe(0), qe(1)]));
        let r = ExtElt::generator(q.clone());
        let two = ExtElt::constant(qe(2));
        assert_eq!(r.clone() * r.clone(), two);
        // (1 + r)^{-1} = r - 1 ... (1+r)(r-1) = r^2 - 1 = 1
        let x = ExtElt::one() + r.clone();
        let inv = x.clone().recip();
        assert_eq!(x * inv, ExtElt::one());
    }

    #[test]
    fn poly_gcd_over_extension() {
        // Over L = Q[t]/(t^2+1): gcd(x^2+1, x - t) = x - t
        let q = Rc::new(KPoly::new(vec![qe(1), qe(0), qe(1)]));
        let i = ExtElt::generator(q.clone());
        let f = Poly::new(vec![ExtElt::one(), ExtElt::zero(), ExtElt::one()]);
        let g = Poly::new(vec![-i.clone(), ExtElt::one()]);
        let h = f.gcd(&g);
        assert_eq!(h, g);
    }
}
