//! The base field `K`: the rationals or a quadratic field `Q(sqrt(d))`,
//! with exact elements `a + b*sqrt(d)`, embeddings, sizes, heights, and
//! enumeration of the ring of integers by size.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, int, Int, Rat};
use crate::surd::Surd;

/// `K = Q` (kind rational) or `K = Q(sqrt(d))` with `d` squarefree, not 0
/// or 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct NumberField {
    d: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldKind {
    Rational,
    Quadratic,
}

impl NumberField {
    pub fn rational() -> Self {
        NumberField { d: 0 }
    }

    pub fn quadratic(d: i64) -> Self {
        assert!(d != 0 && d != 1, "d must not be 0 or 1");
        assert!(
            rat::is_squarefree(&int(d)),
            "d = {} is not squarefree",
            d
        );
        NumberField { d }
    }

    pub fn kind(&self) -> FieldKind {
        if self.d == 0 {
            FieldKind::Rational
        } else {
            FieldKind::Quadratic
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        if self.d == 0 {
            1
        } else {
            2
        }
    }

    /// Field discriminant: `d` if `d = 1 mod 4`, else `4d`; `1` for `Q`.
    pub fn discriminant(&self) -> i64 {
        if self.d == 0 {
            1
        } else if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// True when the quadratic field is real (`d > 0`); false for `Q` too.
    pub fn is_real_quadratic(&self) -> bool {
        self.d > 0
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// The generator of the maximal order over `Z`: `(1+sqrt(d))/2` when
    /// `d = 1 mod 4`, else `sqrt(d)`. The zero element for `Q`.
    pub fn omega(&self) -> FieldElement {
        if self.d == 0 {
            return FieldElement::zero();
        }
        if self.d.rem_euclid(4) == 1 {
            FieldElement::new(self, Rat::new(int(1), int(2)), Rat::new(int(1), int(2)))
        } else {
            FieldElement::new(self, Rat::zero(), Rat::one())
        }
    }

    pub fn from_rat(&self, a: Rat) -> FieldElement {
        FieldElement::new(self, a, Rat::zero())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rat(Rat::from_integer(int(n)))
    }

    pub fn sqrt_d(&self) -> FieldElement {
        assert!(self.d != 0);
        FieldElement::new(self, Rat::zero(), Rat::one())
    }

    /// The element with coordinates `x + y*omega` in the maximal order.
    pub fn from_coords(&self, x: &Int, y: &Int) -> FieldElement {
        let xe = self.from_rat(Rat::from_integer(x.clone()));
        let ye = self.from_rat(Rat::from_integer(y.clone()));
        xe + ye * self.omega()
    }
}

/// An element `a + b*sqrt(d)` of the base field, exact rational `a`, `b`.
///
/// Elements with `b = 0` are rational and belong to every field; they carry
/// `d = 0` so that zero and one need no field context. Mixing elements of
/// two genuinely different quadratic fields panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: Rat,
    b: Rat,
    d: i64,
}

impl FieldElement {
    pub fn new(field: &NumberField, a: Rat, b: Rat) -> Self {
        if field.d == 0 {
            assert!(b.is_zero(), "rational field has no sqrt part");
        }
        let d = if b.is_zero() { 0 } else { field.d };
        FieldElement { a, b, d }
    }

    pub fn from_rat(a: Rat) -> Self {
        FieldElement { a, b: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(int(n)))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// The `d` of the smallest field containing this element (0 when
    /// rational).
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn merged_d(&self, other: &Self) -> i64 {
        match (self.d, other.d) {
            (0, d) => d,
            (d, 0) => d,
            (d1, d2) => {
                assert_eq!(d1, d2, "elements of different fields");
                d1
            }
        }
    }

    pub fn conj(&self) -> Self {
        FieldElement { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `N(x) = a^2 - d b^2`, a rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(int(self.d)) * &self.b * &self.b
    }

    /// `Tr(x) = 2a` (or `a` over `Q`).
    pub fn trace(&self) -> Rat {
        if self.d == 0 {
            self.a.clone()
        } else {
            &self.a + &self.a
        }
    }

    /// Integrality in the maximal order of the ambient field. For a
    /// rational element this is plain integrality; the ambient field only
    /// matters through `d mod 4`.
    pub fn is_integral_in(&self, field: &NumberField) -> bool {
        if self.b.is_zero() {
            return rat::is_integer(&self.a);
        }
        assert_eq!(self.d, field.d, "element not in the given field");
        if field.d.rem_euclid(4) == 1 {
            // x + y*omega with omega = (1+sqrt d)/2: y = 2b, x = a - b.
            let y = &self.b + &self.b;
            let x = &self.a - &self.b;
            rat::is_integer(&y) && rat::is_integer(&x)
        } else {
            rat::is_integer(&self.a) && rat::is_integer(&self.b)
        }
    }

    /// Coordinates `(x, y)` with `self = x + y*omega`, if integral.
    pub fn coords_in(&self, field: &NumberField) -> Option<(Int, Int)> {
        if !self.is_integral_in(field) {
            return None;
        }
        if field.d == 0 {
            return Some((self.a.to_integer(), Int::zero()));
        }
        if field.d.rem_euclid(4) == 1 {
            let y = (&self.b + &self.b).to_integer();
            let x = (&self.a - &self.b).to_integer();
            Some((x, y))
        } else {
            Some((self.a.to_integer(), self.b.to_integer()))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero field element");
        let n = self.norm();
        let c = self.conj();
        FieldElement { a: &c.a / &n, b: &c.b / &n, d: c.d }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = FieldElement::from_int(1);
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    /// Embedding images as exact surds: one entry per infinite place.
    /// Real quadratic: the two conjugates. Imaginary or complex place: the
    /// modulus (a single entry). Rational: the value itself.
    pub fn embedding_abs(&self) -> Vec<Surd> {
        self.embedding_abs_in_d(self.d)
    }

    /// Embeddings of this element viewed inside the field with the given
    /// `d`; a rational element of a real quadratic field has two (equal)
    /// real embeddings, which matters for heights.
    pub fn embedding_abs_in(&self, field: &NumberField) -> Vec<Surd> {
        if self.d != 0 {
            assert_eq!(self.d, field.d, "element not in the given field");
        }
        self.embedding_abs_in_d(field.d)
    }

    fn embedding_abs_in_d(&self, d: i64) -> Vec<Surd> {
        if d == 0 {
            return vec![Surd::from_rat(self.a.abs())];
        }
        if d > 0 {
            let e1 = Surd::from_rat(self.a.clone()) + Surd::sqrt_term(self.b.clone(), &int(d));
            let e2 = Surd::from_rat(self.a.clone()) + Surd::sqrt_term(-self.b.clone(), &int(d));
            vec![e1.abs(), e2.abs()]
        } else {
            let sq = &self.a * &self.a + Rat::from_integer(int(-d)) * &self.b * &self.b;
            vec![Surd::sqrt_rat(&sq)]
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let d = self.merged_d(&rhs);
        let mut out = FieldElement { a: self.a + rhs.a, b: self.b + rhs.b, d };
        if out.b.is_zero() {
            out.d = 0;
        }
        out
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let d = self.merged_d(&rhs);
        let a = &self.a * &rhs.a
            + Rat::from_integer(int(d)) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        let mut out = FieldElement { a, b, d };
        if out.b.is_zero() {
            out.d = 0;
        }
        out
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        let r = rhs.recip();
        self * r
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::from_rat(Rat::one())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", rat::rat_string(&self.a))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                rat::rat_string(&self.a),
                rat::rat_string(&self.b),
                self.d
            )
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonnegative real size, exactly: either an element of the surd ring, or
/// the square root of one (heights of quadratic-field elements need the
/// latter). Comparison goes through squares, which always land in the ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SizeValue {
    Exact(Surd),
    SqrtOf(Surd),
}

impl SizeValue {
    pub fn from_rat(q: Rat) -> Self {
        assert!(!q.is_negative());
        SizeValue::Exact(Surd::from_rat(q))
    }

    pub fn from_surd(s: Surd) -> Self {
        assert!(s.sign() != Ordering::Less, "sizes are nonnegative");
        SizeValue::Exact(s)
    }

    /// `sqrt(s)` for a nonnegative surd; collapses to `Exact` when the
    /// radicand is rational.
    pub fn sqrt_of(s: Surd) -> Self {
        assert!(s.sign() != Ordering::Less);
        match s.as_rat() {
            Some(q) => SizeValue::Exact(Surd::sqrt_rat(&q)),
            None => SizeValue::SqrtOf(s),
        }
    }

    /// The square, always an exact surd.
    pub fn square(&self) -> Surd {
        match self {
            SizeValue::Exact(s) => s.clone() * s.clone(),
            SizeValue::SqrtOf(s) => s.clone(),
        }
    }

    pub fn as_surd(&self) -> Option<&Surd> {
        match self {
            SizeValue::Exact(s) => Some(s),
            SizeValue::SqrtOf(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.square().is_zero()
    }

    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        if q.is_negative() {
            return Ordering::Greater;
        }
        self.square().cmp_rat(&(q * q))
    }

    pub fn mul(&self, other: &SizeValue) -> SizeValue {
        match (self, other) {
            (SizeValue::Exact(a), SizeValue::Exact(b)) => {
                SizeValue::Exact(a.clone() * b.clone())
            }
            _ => SizeValue::sqrt_of(self.square() * other.square()),
        }
    }

    pub fn div(&self, other: &SizeValue) -> SizeValue {
        match (self, other) {
            (SizeValue::Exact(a), SizeValue::Exact(b)) => {
                SizeValue::Exact(a.clone() / b.clone())
            }
            _ => SizeValue::sqrt_of(self.square() / other.square()),
        }
    }

    pub fn add(&self, other: &SizeValue) -> SizeValue {
        match (self, other) {
            (SizeValue::Exact(a), SizeValue::Exact(b)) => {
                SizeValue::Exact(a.clone() + b.clone())
            }
            _ => panic!("sum of sqrt-form sizes is not representable"),
        }
    }

    pub fn scale(&self, q: &Rat) -> SizeValue {
        assert!(!q.is_negative());
        self.mul(&SizeValue::from_rat(q.clone()))
    }

    /// Smallest integer `>= value`.
    pub fn ceil_int(&self) -> Int {
        match self {
            SizeValue::Exact(s) => s.ceil_int(),
            SizeValue::SqrtOf(s) => {
                // smallest n with n^2 >= s
                let mut n = Int::zero();
                let mut step = s.ceil_int().max(Int::one());
                // binary-search style descent
                while step.is_positive() {
                    while {
                        let cand = &n + &step;
                        let sq = Rat::from_integer(&cand * &cand);
                        s.cmp_rat(&sq) == Ordering::Greater
                    } {
                        n += &step;
                    }
                    step /= 2;
                }
                &n + 1
            }
        }
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        match self {
            SizeValue::Exact(s) => s.to_decimal(digits),
            SizeValue::SqrtOf(s) => {
                // Newton refinement on rational intervals is overkill; use
                // the square's enclosure and take rational sqrt bounds.
                let (lo, hi) = s.approx(16 + 8 * digits);
                let lo = if lo.is_negative() { Rat::zero() } else { lo };
                let slo = Surd::sqrt_rat(&lo);
                let shi = Surd::sqrt_rat(&hi);
                let mid = (slo + shi) * Surd::from_rat(Rat::new(int(1), int(2)));
                mid.to_decimal(digits)
            }
        }
    }
}

impl PartialOrd for SizeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SizeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp_surd(&other.square())
    }
}

/// `size(x) = max |x|_v` over the infinite places.
pub fn size(x: &FieldElement) -> SizeValue {
    let abs = x.embedding_abs();
    let m = abs.into_iter().max().expect("at least one embedding");
    SizeValue::Exact(m)
}

/// `lsize(x) = min |x|_v` over the infinite places.
pub fn lsize(x: &FieldElement) -> SizeValue {
    let abs = x.embedding_abs();
    let m = abs.into_iter().min().expect("at least one embedding");
    SizeValue::Exact(m)
}

/// Multiplicative absolute height `H(x)`, via the product formula: the
/// finite part is the norm of the denominator ideal.
pub fn height(x: &FieldElement, field: &NumberField) -> SizeValue {
    if x.is_zero() {
        return SizeValue::from_rat(Rat::zero());
    }
    if field.d == 0 {
        let a = x.as_rat().expect("rational field");
        let h = a.numer().abs().max(a.denom().abs());
        return SizeValue::from_rat(Rat::from_integer(h));
    }
    // H^2 = N(denominator ideal) * prod_v max(1, |x|_v)^{d_v}
    let fin = Rat::from_integer(denominator_ideal_norm(x, field));
    let arch = if field.d > 0 {
        let abs = x.embedding_abs_in(field);
        let one = Surd::from_int(1);
        let mut prod = Surd::from_int(1);
        for a in abs {
            if a.cmp_surd(&one) == Ordering::Greater {
                prod = prod * a;
            }
        }
        prod
    } else {
        let sq = &x.a * &x.a + Rat::from_integer(int(-field.d)) * &x.b * &x.b;
        Surd::from_rat(if sq > Rat::one() { sq } else { Rat::one() })
    };
    SizeValue::sqrt_of(arch * Surd::from_rat(fin))
}

/// Norm of the denominator ideal of `x`: the smallest-norm ideal `D` with
/// `x*D` integral.
fn denominator_ideal_norm(x: &FieldElement, field: &NumberField) -> Int {
    // x = y/n with y integral, n a positive integer.
    let omega = field.omega();
    // omega-coordinates of x (rational): x = u + v*omega.
    let (u, v) = if field.d.rem_euclid(4) == 1 {
        let v = &x.b + &x.b;
        let u = &x.a - &x.b;
        (u, v)
    } else {
        (x.a.clone(), x.b.clone())
    };
    let n = u.denom().lcm(v.denom());
    if n.is_one() {
        return Int::one();
    }
    let y = x.clone() * FieldElement::from_rat(Rat::from_integer(n.clone()));
    // gcd ideal (y, n) as a Z-module generated by n, n*omega, y, y*omega.
    let yo = y.clone() * omega.clone();
    let no = FieldElement::from_rat(Rat::from_integer(n.clone())) * omega;
    let rows: Vec<(Int, Int)> = [
        FieldElement::from_rat(Rat::from_integer(n.clone())),
        no,
        y,
        yo,
    ]
    .iter()
    .map(|e| e.coords_in(field).expect("integral by construction"))
    .collect();
    let g_norm = zmodule_norm(&rows);
    (&n * &n) / g_norm
}

/// Index in `Z^2` of the module generated by the rows (must be full rank).
pub(crate) fn zmodule_norm(rows: &[(Int, Int)]) -> Int {
    let h = zmodule_hnf(rows).expect("full-rank module");
    (&h.0 * &h.2).abs()
}

/// Hermite form of a rank-2 submodule of `Z^2`: returns `(a, b, c)` with
/// basis `(a, 0), (b, c)`, `a, c > 0`, `0 <= b < a`. None if rank < 2.
pub(crate) fn zmodule_hnf(rows: &[(Int, Int)]) -> Option<(Int, Int, Int)> {
    // Triangularize by gcd steps on the second coordinate.
    let mut rows: Vec<(Int, Int)> = rows
        .iter()
        .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
        .cloned()
        .collect();
    // Reduce to a single row with nonzero second coordinate.
    let mut c_row: Option<(Int, Int)> = None;
    let mut firsts: Vec<Int> = Vec::new();
    while let Some(row) = rows.pop() {
        if row.1.is_zero() {
            firsts.push(row.0);
            continue;
        }
        match c_row.take() {
            None => c_row = Some(row),
            Some(cur) => {
                // gcd-combine cur and row on second coordinate
                let (mut r1, mut r2) = (cur, row);
                loop {
                    if r2.1.is_zero() {
                        firsts.push(r2.0.clone());
                        c_row = Some(r1);
                        break;
                    }
                    let q = num_integer::Integer::div_floor(&r1.1, &r2.1);
                    let new = (&r1.0 - &q * &r2.0, &r1.1 - &q * &r2.1);
                    r1 = r2;
                    r2 = new;
                }
            }
        }
    }
    let (b0, c0) = c_row?;
    // gcd of the first coordinates
    let mut a = Int::zero();
    for f in firsts {
        a = a.gcd(&f);
    }
    if a.is_zero() {
        return None;
    }
    let c = c0.abs();
    let b0 = if c0.is_negative() { -b0 } else { b0 };
    let b = b0.mod_floor(&a);
    Some((a, b, c))
}

/// The single ordering used everywhere: size first (exact comparison),
/// ties broken by `(|a|, a, |b|, b)` on the coordinates.
pub fn n_ordering_cmp(x: &FieldElement, y: &FieldElement) -> Ordering {
    size(x).cmp(&size(y)).then_with(|| coordinate_tie_break(x, y))
}

fn coordinate_tie_break(x: &FieldElement, y: &FieldElement) -> Ordering {
    x.a.abs()
        .cmp(&y.a.abs())
        .then_with(|| x.a.cmp(&y.a))
        .then_with(|| x.b.abs().cmp(&y.b.abs()))
        .then_with(|| x.b.cmp(&y.b))
}

/// All algebraic integers of `K` with `size <= B`, in the N-ordering.
pub fn enumerate_integers(field: &NumberField, bound: &Rat) -> Vec<FieldElement> {
    let mut out = Vec::new();
    if bound.is_negative() {
        return out;
    }
    let bound_sv = SizeValue::from_rat(bound.clone());
    if field.d == 0 {
        let n = rat::floor_rat(bound);
        let mut k = -n.clone();
        while k <= n {
            out.push(FieldElement::from_rat(Rat::from_integer(k.clone())));
            k += 1;
        }
    } else {
        // x + y*omega; |b| <= B/sqrt(|d|) gives the y range.
        let d = field.d;
        let omega_b = if d.rem_euclid(4) == 1 {
            Rat::new(int(1), int(2))
        } else {
            Rat::one()
        };
        // |b| = |y| * omega_b <= B / sqrt(|d|)
        let y_bound = (Surd::from_rat(bound / &omega_b)
            * Surd::sqrt_rat(&Rat::new(int(1), int(d.abs()))))
        .ceil_int();
        let mut y = -y_bound.clone();
        while y <= y_bound {
            // a = x + y/2 (d=1 mod 4) or x; |a| <= B always.
            let shift = if d.rem_euclid(4) == 1 {
                Rat::new(y.clone(), int(2))
            } else {
                Rat::zero()
            };
            let x_lo = rat::floor_rat(&(-bound - &shift)) - 1;
            let x_hi = rat::floor_rat(&(bound - &shift)) + 1;
            let mut x = x_lo;
            while x <= x_hi {
                let e = field.from_coords(&x, &y);
                if size(&e) <= bound_sv {
                    out.push(e);
                }
                x += 1;
            }
            y += 1;
        }
    }
    // decorate with the size square so the sort never recomputes sizes
    let mut keyed: Vec<(Surd, FieldElement)> =
        out.into_iter().map(|e| (size(&e).square(), e)).collect();
    keyed.sort_by(|(sa, ea), (sb, eb)| {
        sa.cmp_surd(sb).then_with(|| coordinate_tie_break(ea, eb))
    });
    keyed.into_iter().map(|(_, e)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn qf(d: i64) -> NumberField {
        NumberField::quadratic(d)
    }

    fn elt(f: &NumberField, a: i64, b: i64) -> FieldElement {
        FieldElement::new(f, rat(a), rat(b))
    }

    #[test]
    fn field_construction() {
        assert_eq!(NumberField::rational().degree(), 1);
        assert_eq!(qf(-1).discriminant(), -4);
        assert_eq!(qf(5).discriminant(), 5);
        assert_eq!(qf(-3).discriminant(), -3);
        assert_eq!(qf(2).discriminant(), 8);
    }

    #[test]
    #[should_panic]
    fn rejects_non_squarefree() {
        qf(12);
    }

    #[test]
    fn sizes() {
        // size(7) = 7 over Q
        let s = size(&FieldElement::from_int(7));
        assert_eq!(s.cmp_rat(&rat(7)), Ordering::Equal);
        // size(1 + sqrt2) = 1 + sqrt2, lsize = sqrt2 - 1
        let f = qf(2);
        let x = elt(&f, 1, 1);
        assert_eq!(size(&x).as_surd().unwrap().cmp_rat(&ratio(24, 10)), Ordering::Greater);
        let ls = lsize(&x);
        let expect = Surd::sqrt_term(Rat::one(), &int(2)) - Surd::from_int(1);
        assert_eq!(ls.as_surd().unwrap(), &expect);
        // size(3 + 4i) = 5
        let g = qf(-1);
        let z = elt(&g, 3, 4);
        assert_eq!(size(&z).cmp_rat(&rat(5)), Ordering::Equal);
        assert_eq!(lsize(&z).cmp_rat(&rat(5)), Ordering::Equal);
    }

    #[test]
    fn lsize_is_inverse_size_of_inverse() {
        let f = qf(2);
        for (a, b) in [(1, 1), (3, -2), (0, 5), (7, 1)] {
            let x = elt(&f, a, b);
            let ls = lsize(&x);
            let inv_size = size(&x.recip());
            // lsize(x) * size(1/x) = 1
            let prod = ls.mul(&inv_size);
            assert_eq!(prod.cmp_rat(&rat(1)), Ordering::Equal, "x = {}", x);
        }
    }

    #[test]
    fn heights() {
        let q = NumberField::rational();
        // H(p/q) = max(|p|, |q|)
        assert_eq!(height(&FieldElement::from_rat(ratio(3, 2)), &q).cmp_rat(&rat(3)), Ordering::Equal);
        assert_eq!(height(&FieldElement::from_int(5), &q).cmp_rat(&rat(5)), Ordering::Equal);
        // H(1 + sqrt2) = (1+sqrt2)^{1/2}
        let f = qf(2);
        let x = elt(&f, 1, 1);
        let h = height(&x, &f);
        let expect_sq = Surd::from_int(1) + Surd::sqrt_term(Rat::one(), &int(2));
        assert_eq!(h.square(), expect_sq);
    }

    #[test]
    fn height_between_lsize_and_size() {
        // lsize <= H <= size for nonzero algebraic integers
        for d in [2i64, 3, -1, -5, 5, 13] {
            let f = qf(d);
            for x in enumerate_integers(&f, &rat(6)) {
                if x.is_zero() {
                    continue;
                }
                let h = height(&x, &f);
                assert!(lsize(&x) <= h, "lsize > H at {} (d={})", x, d);
                assert!(h <= size(&x), "H > size at {} (d={})", x, d);
            }
        }
    }

    #[test]
    fn norm_trace_integrality() {
        let g = qf(-1);
        assert_eq!(elt(&g, 2, 1).norm(), rat(5));
        let f5 = qf(5);
        let golden = FieldElement::new(&f5, ratio(1, 2), ratio(1, 2));
        assert!(golden.is_integral_in(&f5));
        assert_eq!(golden.norm(), rat(-1));
        let f2 = qf(2);
        assert_eq!(elt(&f2, 1, 1).trace(), rat(2));
        assert!(!FieldElement::new(&f2, ratio(1, 2), Rat::zero()).is_integral_in(&f2));
        assert!(elt(&f2, 3, -4).is_integral_in(&f2));
    }

    #[test]
    fn enumerate_counts() {
        let q = NumberField::rational();
        assert_eq!(enumerate_integers(&q, &rat(3)).len(), 7);
        assert_eq!(enumerate_integers(&qf(-1), &rat(2)).len(), 13);
        assert_eq!(enumerate_integers(&qf(2), &rat(3)).len(), 15);
    }

    #[test]
    fn enumerate_is_sorted_and_unique() {
        for d in [0i64, -1, 2, 5, -3] {
            let f = if d == 0 { NumberField::rational() } else { qf(d) };
            let list = enumerate_integers(&f, &rat(8));
            for w in list.windows(2) {
                assert_eq!(n_ordering_cmp(&w[0], &w[1]), Ordering::Less);
                assert!(size(&w[0]) <= size(&w[1]));
            }
        }
    }

    #[test]
    fn size_subadditive_submultiplicative() {
        let f = qf(3);
        let xs = enumerate_integers(&f, &rat(4));
        for x in xs.iter().take(20) {
            for y in xs.iter().rev().take(20) {
                let sx = size(x);
                let sy = size(y);
                let sum = size(&(x.clone() + y.clone()));
                let prod = size(&(x.clone() * y.clone()));
                assert!(sum <= sx.add(&sy));
                assert!(prod <= sx.mul(&sy));
            }
        }
    }

    #[test]
    fn norm_is_product_of_embeddings() {
        let f = qf(2);
        for x in enumerate_integers(&f, &rat(5)) {
            if x.is_zero() {
                continue;
            }
            let prod = size(&x).mul(&lsize(&x));
            assert_eq!(prod.cmp_rat(&x.norm().abs()), Ordering::Equal);
        }
    }
}
