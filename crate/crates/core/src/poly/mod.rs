//! Exact univariate and bivariate polynomial algebra over the base field
//! and its finite extensions: gcd, resultants, squarefree decomposition,
//! and factorization over `Q` and quadratic fields.

pub mod bipoly;
pub mod ext;
pub mod kfactor;
pub mod modp;
pub mod zfactor;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use bipoly::BiPoly;
pub use ext::ExtElt;

/// Coefficient fields for `Poly`: exact arithmetic with context-free zero
/// and one (rationals, field elements, extension elements).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
{
}

/// Dense univariate polynomial, coefficients ascending; the vector is empty
/// for zero and otherwise ends in a nonzero coefficient.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(t: T) -> Self {
        Poly::new(vec![t])
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(t: T, k: usize) -> Self {
        let mut c = vec![T::zero(); k];
        c.push(t);
        Poly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree treating zero as 0 (handy in loops that already excluded 0).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn lc(&self) -> T {
        self.c.last().cloned().expect("leading coefficient of zero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.c.len() - 1);
        for (k, c) in self.c.iter().enumerate().skip(1) {
            let mut kk = T::zero();
            for _ in 0..k {
                kk = kk + T::one();
            }
            out.push(kk * c.clone());
        }
        Poly::new(out)
    }

    pub fn scale(&self, t: &T) -> Self {
        Poly::new(self.c.iter().map(|c| c.clone() * t.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero());
        let l = self.lc();
        self.scale(&(T::one() / l))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly::new(c)
    }

    /// Quotient and remainder; divisor nonzero.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.deg();
        let lc = div.lc();
        let mut rem = self.c.clone();
        if rem.len() < div.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![T::zero(); rem.len() - dd];
        while rem.len() >= div.c.len() && !rem.is_empty() {
            let k = rem.len() - 1;
            let q = rem[k].clone() / lc.clone();
            if !q.is_zero() {
                quo[k - dd] = q.clone();
                for (i, dc) in div.c.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = rem[idx].clone() - q.clone() * dc.clone();
                }
            }
            rem.pop();
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero for two zero inputs).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Monic radical `f / gcd(f, f')`.
    pub fn squarefree_monic(&self) -> Self {
        assert!(!self.is_zero());
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun squarefree decomposition: pairs `(g_i, i)` with `f = lc * prod
    /// g_i^i`, the `g_i` monic squarefree and pairwise coprime.
    pub fn yun(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero());
        if self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        if a.is_constant() {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut b = f.div_exact(&a);
        let mut c = df.div_exact(&a);
        let mut i = 1u32;
        loop {
            let d = c - b.derivative();
            if d.is_zero() {
                if b.deg() > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            i += 1;
            if b.is_constant() {
                break;
            }
        }
        out
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> T {
        fn go<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> T {
            if f.is_zero() || g.is_zero() {
                return T::zero();
            }
            let (df, dg) = (f.deg(), g.deg());
            if dg == 0 {
                return pow_t(&g.lc(), df as u32);
            }
            let r = f.rem(g);
            if r.is_zero() {
                return T::zero();
            }
            let dr = r.deg();
            // Res(f,g) = (-1)^{df dg} lc(g)^{df - dr} Res(g, r)
            let sign = if (df * dg) % 2 == 1 { -T::one() } else { T::one() };
            sign * pow_t(&g.lc(), (df - dr) as u32) * go(g, &r)
        }
        if self.is_zero() || other.is_zero() {
            return T::zero();
        }
        if self.deg() == 0 {
            return pow_t(&self.lc(), other.deg() as u32);
        }
        go(self, other)
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> T {
        let n = self.deg();
        assert!(n >= 1);
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -T::one() } else { T::one() };
        sign * res / self.lc()
    }

    /// Taylor shift: `f(x + a)`.
    pub fn shift(&self, a: &T) -> Self {
        // Horner on f viewed at (x + a)
        let mut out = Poly::zero();
        let xa = Poly::new(vec![a.clone(), T::one()]);
        for c in self.c.iter().rev() {
            out = out * xa.clone() + Poly::constant(c.clone());
        }
        out
    }

    /// Coefficient reversal: `x^deg * f(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Composition `f(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut out = Poly::zero();
        for c in self.c.iter().rev() {
            out = out * g.clone() + Poly::constant(c.clone());
        }
        out
    }
}

fn pow_t<T: Scalar>(t: &T, e: u32) -> T {
    let mut out = T::one();
    for _ in 0..e {
        out = out * t.clone();
    }
    out
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.c.get(k).cloned().unwrap_or_else(T::zero);
            let b = rhs.c.get(k).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.c.into_iter().map(|x| -x).collect())
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*x", c)?,
                _ => write!(f, "({})*x^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
