//! Exact real numbers of the form `sum c_m * sqrt(m)` with rational `c_m`
//! and squarefree `m >= 1`.
//!
//! Every size, lower size, and norm-root the crate manipulates lives in this
//! ring (heights are square roots of its elements and are compared via their
//! squares). Equality is structural: `sqrt(m)` over distinct squarefree `m`
//! are linearly independent over `Q`, so two expressions are equal iff their
//! canonical coefficient maps coincide. Strict comparison of distinct values
//! uses rational interval refinement, which terminates because the interval
//! width halves each round while the gap is a fixed positive real.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{int, Int, Rat};

static ONE_INT: std::sync::LazyLock<Int> = std::sync::LazyLock::new(Int::one);


/// Canonical representation: map from squarefree radicand to coefficient,
/// zero coefficients absent. The radicand `1` holds the rational part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<Int, Rat>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: BTreeMap::new() }
    }

    pub fn from_rat(x: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(Int::one(), x);
        }
        Surd { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(int(n)))
    }

    /// `c * sqrt(m)` for any nonzero integer `m >= 1` (not necessarily
    /// squarefree; the square part is pulled into the coefficient).
    pub fn sqrt_term(c: Rat, m: &Int) -> Self {
        assert!(m.is_positive(), "sqrt of a non-positive radicand");
        let fs = crate::intfact::factor(m);
        let mut sf = Int::one();
        let mut sq = Int::one();
        for (p, e) in fs {
            if e % 2 == 1 {
                sf *= &p;
            }
            sq *= p.pow(e / 2);
        }
        let coeff = c * Rat::from_integer(sq);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(sf, coeff);
        }
        Surd { terms }
    }

    /// `sqrt(q)` of a nonnegative rational, exactly.
    pub fn sqrt_rat(q: &Rat) -> Self {
        assert!(!q.is_negative(), "sqrt of a negative rational");
        if q.is_zero() {
            return Surd::zero();
        }
        // sqrt(a/b) = sqrt(a*b)/b
        let ab = q.numer() * q.denom();
        Self::sqrt_term(Rat::new(Int::one(), q.denom().clone()), &ab)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact rational value, if the expression is rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Int::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Int, &Rat)> {
        self.terms.iter()
    }

    pub fn sign(&self) -> Ordering {
        match self.terms.len() {
            0 => Ordering::Equal,
            1 => self.terms.values().next().unwrap().cmp(&Rat::zero()),
            2 => {
                // c1 sqrt(m1) + c2 sqrt(m2): exact, since the magnitudes
                // c^2 m can never tie for distinct squarefree radicands
                let mut it = self.terms.iter();
                let (m1, c1) = it.next().unwrap();
                let (m2, c2) = it.next().unwrap();
                let s1 = c1.cmp(&Rat::zero());
                let s2 = c2.cmp(&Rat::zero());
                if s1 == s2 {
                    return s1;
                }
                let q1 = c1 * c1 * Rat::from_integer(m1.clone());
                let q2 = c2 * c2 * Rat::from_integer(m2.clone());
                debug_assert_ne!(q1, q2, "independent radicals cannot tie");
                if q1 > q2 {
                    s1
                } else {
                    s2
                }
            }
            _ => {
                // Interval refinement; the value is a nonzero real.
                let mut bits = 16u32;
                loop {
                    let (lo, hi) = self.approx(bits);
                    if lo.is_positive() {
                        return Ordering::Greater;
                    }
                    if hi.is_negative() {
                        return Ordering::Less;
                    }
                    bits *= 2;
                    assert!(bits <= 1 << 20, "interval refinement ran away");
                }
            }
        }
    }

    pub fn abs(&self) -> Surd {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Rational enclosure `[lo, hi]` with `hi - lo <= len(terms) * 2^-bits`.
    pub fn approx(&self, bits: u32) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (m, c) in &self.terms {
            let (slo, shi) = sqrt_bounds(m, bits);
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        (lo, hi)
    }

    /// Decimal approximation, round-to-nearest on the midpoint of a tight
    /// enclosure; used only for human-facing report fields.
    pub fn to_decimal(&self, digits: u32) -> String {
        let (lo, hi) = self.approx(16 + 4 * digits);
        let mid = (lo + hi) / Rat::from_integer(int(2));
        let scale = Rat::from_integer(int(10).pow(digits));
        let scaled = (&mid * &scale).round().to_integer();
        let neg = scaled.is_negative();
        let digits_str = scaled.abs().to_string();
        let digits_str = if digits_str.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - digits_str.len()), digits_str)
        } else {
            digits_str
        };
        let (ip, fp) = digits_str.split_at(digits_str.len() - digits as usize);
        format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
    }

    /// Multiplicative inverse of a nonzero expression, via the product of
    /// Galois conjugates (sign flips of each sqrt).
    pub fn recip(&self) -> Surd {
        assert!(!self.is_zero(), "inverse of zero surd");
        if let Some(q) = self.as_rat() {
            return Surd::from_rat(Rat::one() / q);
        }
        // Primes appearing in any radicand.
        let mut primes: Vec<Int> = Vec::new();
        for m in self.terms.keys() {
            for (p, _) in crate::intfact::factor(m) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        // Product over all nontrivial sign patterns.
        let mut prod = Surd::from_int(1);
        let n = primes.len();
        for mask in 1..(1u32 << n) {
            let mut conj = Surd::zero();
            for (m, c) in &self.terms {
                let mut sgn = Rat::one();
                for (i, p) in primes.iter().enumerate() {
                    if mask & (1 << i) != 0 && (m % p).is_zero() {
                        sgn = -sgn;
                    }
                }
                conj = conj + Surd { terms: BTreeMap::from([(m.clone(), c * sgn)]) };
            }
            prod = prod * conj;
        }
        let norm = (self.clone() * prod.clone())
            .as_rat()
            .expect("conjugate product is rational");
        assert!(!norm.is_zero());
        prod * Surd::from_rat(Rat::one() / norm)
    }

    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        // fast path: both are single terms c*sqrt(m)
        if self.terms.len() <= 1 && other.terms.len() <= 1 {
            let zero = Rat::zero();
            let (m1, c1) = self.terms.iter().next().map(|(m, c)| (m, c)).unwrap_or((&ONE_INT, &zero));
            let (m2, c2) = other.terms.iter().next().map(|(m, c)| (m, c)).unwrap_or((&ONE_INT, &zero));
            let s1 = c1.cmp(&Rat::zero());
            let s2 = c2.cmp(&Rat::zero());
            if s1 != s2 {
                return s1.cmp(&s2);
            }
            if m1 == m2 {
                return c1.cmp(c2);
            }
            // same sign, different radicands: compare squares
            let q1 = c1 * c1 * Rat::from_integer(m1.clone());
            let q2 = c2 * c2 * Rat::from_integer(m2.clone());
            return if s1 == Ordering::Less { q2.cmp(&q1) } else { q1.cmp(&q2) };
        }
        (self.clone() - other.clone()).sign()
    }

    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        self.cmp_surd(&Surd::from_rat(q.clone()))
    }

    /// Smallest integer `>= self` (for turning exact bounds into scan
    /// windows).
    pub fn ceil_int(&self) -> Int {
        if let Some(q) = self.as_rat() {
            return q.ceil().to_integer();
        }
        let mut bits = 16u32;
        loop {
            let (lo, hi) = self.approx(bits);
            let c = lo.ceil().to_integer();
            if Rat::from_integer(c.clone()) >= hi || self.cmp_rat(&Rat::from_integer(c.clone())) != Ordering::Greater {
                // c >= self; check that c - 1 < self.
                let c1 = &c - 1;
                if self.cmp_rat(&Rat::from_integer(c1)) == Ordering::Greater {
                    return c;
                }
            }
            bits *= 2;
        }
    }
}

/// `[lo, hi]` enclosing `sqrt(m)` with width `2^-bits`.
fn sqrt_bounds(m: &Int, bits: u32) -> (Rat, Rat) {
    if m.is_one() {
        return (Rat::one(), Rat::one());
    }
    let scale = Int::one() << (2 * bits);
    let lo_num = (m * &scale).sqrt();
    let denom = Int::one() << bits;
    let lo = Rat::new(lo_num.clone(), denom.clone());
    let hi = Rat::new(lo_num + 1, denom);
    (lo, hi)
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            let e = terms.entry(m).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                // removed below
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Surd { terms }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let mut out = Surd::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                // sqrt(m1)*sqrt(m2) = g*sqrt(m1*m2/g^2), g = gcd(m1,m2)
                let g = num_integer::Integer::gcd(m1, m2);
                let rad = (m1 / &g) * (m2 / &g);
                let coeff = c1 * c2 * Rat::from_integer(g);
                if !coeff.is_zero() {
                    out = out + Surd { terms: BTreeMap::from([(rad, coeff)]) };
                }
            }
        }
        out
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        let r = rhs.recip();
        self * r
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_surd(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_surd(other)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", crate::rat::rat_string(c))?;
            } else {
                write!(f, "{}*sqrt({})", crate::rat::rat_string(c), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn s(n: i64) -> Surd {
        Surd::from_int(n)
    }

    fn sq(n: i64) -> Surd {
        Surd::sqrt_term(Rat::one(), &int(n))
    }

    #[test]
    fn canonicalization() {
        // sqrt(12) = 2 sqrt(3)
        assert_eq!(sq(12), Surd::sqrt_term(rat(2), &int(3)));
        // sqrt(4/9) = 2/3
        assert_eq!(Surd::sqrt_rat(&ratio(4, 9)).as_rat(), Some(ratio(2, 3)));
        // sqrt(25) = 5
        assert_eq!(sq(25).as_rat(), Some(rat(5)));
    }

    #[test]
    fn arithmetic() {
        // (1 + sqrt2)(1 - sqrt2) = -1
        let x = s(1) + sq(2);
        let y = s(1) - sq(2);
        assert_eq!((x * y).as_rat(), Some(rat(-1)));
        // sqrt2 * sqrt3 = sqrt6
        assert_eq!(sq(2) * sq(3), sq(6));
        // sqrt6 * sqrt10 = 2 sqrt15
        assert_eq!(sq(6) * sq(10), Surd::sqrt_term(rat(2), &int(15)));
    }

    #[test]
    fn comparison() {
        // 1 + sqrt2 > 2.41 and < 2.42
        let x = s(1) + sq(2);
        assert_eq!(x.cmp_rat(&ratio(241, 100)), Ordering::Greater);
        assert_eq!(x.cmp_rat(&ratio(242, 100)), Ordering::Less);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 = 9.898..., so < sqrt(9.9)
        let a = sq(2) + sq(3);
        let b = Surd::sqrt_rat(&ratio(99, 10));
        assert_eq!(a.cmp_surd(&b), Ordering::Less);
        assert_eq!(a.cmp_surd(&Surd::sqrt_rat(&ratio(98, 10))), Ordering::Greater);
        // equality is structural
        assert_eq!(sq(8).cmp_surd(&(Surd::sqrt_term(rat(2), &int(2)))), Ordering::Equal);
    }

    #[test]
    fn inverse() {
        let x = s(1) + sq(2);
        assert_eq!((x.clone() * x.recip()).as_rat(), Some(rat(1)));
        let y = sq(2) + sq(3) + s(1);
        assert_eq!((y.clone() * y.recip()).as_rat(), Some(rat(1)));
        let z = Surd::sqrt_term(ratio(3, 7), &int(5));
        assert_eq!((z.clone() * z.recip()).as_rat(), Some(rat(1)));
    }

    #[test]
    fn ceil() {
        assert_eq!(sq(2).ceil_int(), int(2));
        assert_eq!((s(1) + sq(2)).ceil_int(), int(3));
        assert_eq!(s(4).ceil_int(), int(4));
        assert_eq!((-(sq(2))).ceil_int(), int(-1));
    }

    #[test]
    fn decimal() {
        assert_eq!(sq(2).to_decimal(4), "1.4142");
        assert_eq!(s(-3).to_decimal(2), "-3.00");
    }
}
