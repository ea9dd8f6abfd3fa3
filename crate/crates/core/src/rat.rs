//! Arbitrary-precision integers and rationals, plus small parsing and
//! formatting helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Formats a rational as `p` or `p/q`, the exact form used in all reports.
pub fn rat_string(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (with optional sign) into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().ok()?;
        let d: Int = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: Int = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Exact floor of a rational as an integer.
pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(p: &Int, n: &Int) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(p: &Int, x: &Rat) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    val_int(p, x.numer()) as i64 - val_int(p, x.denom()) as i64
}

/// Squarefree part of a nonzero integer: the unique squarefree `s` with
/// `n = s * m^2` for some integer `m`. The sign of `n` is kept on `s`.
pub fn squarefree_part(n: &Int) -> Int {
    assert!(!n.is_zero());
    let fs = crate::intfact::factor(&n.abs());
    let mut s = if n.is_negative() { -Int::one() } else { Int::one() };
    for (p, e) in fs {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}

/// True if `n` is squarefree (sign ignored).
pub fn is_squarefree(n: &Int) -> bool {
    squarefree_part(n).abs() == n.abs()
}
