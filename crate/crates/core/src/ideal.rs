//! Ideals of the maximal order of `K` (trivial over `Q`): Hermite-form
//! bases, norms, prime splitting, units, and the reduced generator / basis
//! / primitive element / residue constructions.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{
    n_ordering_cmp, size, zmodule_hnf, FieldElement, FieldKind, NumberField, SizeValue,
};
use crate::rat::{int, Int, Rat};
use crate::surd::Surd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideal is not principal")]
    NotPrincipal,
}

/// An integral ideal in Hermite form. Over a quadratic field the Z-basis is
/// `(a, b + c*omega)` with `c | a`, `c | b`, `0 <= b < a`; over `Q` the
/// ideal is `(a)`. The zero ideal is not representable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealRep {
    field: NumberField,
    a: Int,
    b: Int,
    c: Int,
}

impl IdealRep {
    /// Ideal generated by the given integral elements (not all zero).
    pub fn from_generators(field: &NumberField, gens: &[FieldElement]) -> Self {
        assert!(gens.iter().any(|g| !g.is_zero()), "zero ideal");
        if field.kind() == FieldKind::Rational {
            let mut a = Int::zero();
            for g in gens {
                let q = g.as_rat().expect("rational element");
                assert!(crate::rat::is_integer(q), "non-integral generator");
                a = a.gcd(&q.to_integer());
            }
            return IdealRep { field: *field, a, b: Int::zero(), c: Int::zero() };
        }
        let omega = field.omega();
        let mut rows = Vec::new();
        for g in gens {
            let go = g.clone() * omega.clone();
            rows.push(g.coords_in(field).expect("non-integral generator"));
            rows.push(go.coords_in(field).expect("integral by closure"));
        }
        let (a, b, c) = zmodule_hnf(&rows).expect("nonzero ideal has rank 2");
        IdealRep { field: *field, a, b, c }
    }

    /// Principal ideal `(x)` for integral nonzero `x`.
    pub fn principal(field: &NumberField, x: &FieldElement) -> Self {
        Self::from_generators(field, &[x.clone()])
    }

    pub fn unit_ideal(field: &NumberField) -> Self {
        Self::principal(field, &FieldElement::from_int(1))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn hnf(&self) -> (Int, Int, Int) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn norm(&self) -> Int {
        if self.field.kind() == FieldKind::Rational {
            self.a.abs()
        } else {
            (&self.a * &self.c).abs()
        }
    }

    /// The Z-basis `(a, b + c*omega)` as field elements (a single element
    /// over `Q`).
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        if self.field.kind() == FieldKind::Rational {
            vec![FieldElement::from_rat(Rat::from_integer(self.a.clone()))]
        } else {
            vec![
                self.field.from_coords(&self.a, &Int::zero()),
                self.field.from_coords(&self.b, &self.c),
            ]
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        if self.field.kind() == FieldKind::Rational {
            match x.as_rat() {
                Some(q) => crate::rat::is_integer(q) && (q.to_integer() % &self.a).is_zero(),
                None => false,
            }
        } else {
            let Some((u, v)) = x.coords_in(&self.field) else {
                return false;
            };
            if !(&v % &self.c).is_zero() {
                return false;
            }
            let t = &v / &self.c;
            let r = u - &t * &self.b;
            (&r % &self.a).is_zero()
        }
    }

    pub fn mul(&self, other: &IdealRep) -> IdealRep {
        assert_eq!(self.field, other.field);
        if self.field.kind() == FieldKind::Rational {
            return IdealRep {
                field: self.field,
                a: &self.a * &other.a,
                b: Int::zero(),
                c: Int::zero(),
            };
        }
        let mut gens = Vec::new();
        for x in self.basis_elements() {
            for y in other.basis_elements() {
                gens.push(x.clone() * y);
            }
        }
        IdealRep::from_generators(&self.field, &gens)
    }

    pub fn pow(&self, e: u32) -> IdealRep {
        let mut out = IdealRep::unit_ideal(&self.field);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Largest `k` with `x` in the k-th power of this ideal (`x` nonzero
    /// integral, the ideal proper).
    pub fn valuation_of(&self, x: &FieldElement) -> u32 {
        assert!(!x.is_zero());
        assert!(self.norm() > Int::one(), "valuation needs a proper ideal");
        let mut k = 0u32;
        let mut pw = self.clone();
        while pw.contains(x) {
            k += 1;
            pw = pw.mul(self);
        }
        k
    }
}

/// A fractional ideal: an integral ideal with a positive integer
/// denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionalIdeal {
    pub num: IdealRep,
    pub den: Int,
}

impl FractionalIdeal {
    pub fn from_integral(i: IdealRep) -> Self {
        FractionalIdeal { num: i, den: Int::one() }
    }

    /// Norm as a positive rational.
    pub fn norm(&self) -> Rat {
        let d = self.num.field().degree();
        Rat::new(self.num.norm(), self.den.pow(d))
    }
}

/// How a rational prime sits in `K`. Over `Q` every prime is its own place
/// with kind `Rational`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum PlaceKind {
    Rational,
    Split,
    Inert,
    Ramified,
}

impl PlaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PlaceKind::Rational => "rational",
            PlaceKind::Split => "split",
            PlaceKind::Inert => "inert",
            PlaceKind::Ramified => "ramified",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimePlace {
    pub p: u64,
    pub kind: PlaceKind,
    pub ideal: IdealRep,
    pub residue_degree: u32,
    /// Ramification index e(v|p): 1 or 2.
    pub e: u32,
    /// For split/ramified places: the residue root `r` of the minimal
    /// polynomial of omega mod p (the place is `(p, omega - r)`).
    pub root: Option<Int>,
}

impl PrimePlace {
    /// Absolute norm `Nv = p^residue_degree`.
    pub fn norm(&self) -> Int {
        int(self.p as i64).pow(self.residue_degree)
    }

    /// A short label distinguishing the places above the same prime.
    pub fn label(&self) -> String {
        match (&self.kind, &self.root) {
            (PlaceKind::Split, Some(r)) => format!("{}r{}", self.p, r),
            _ => format!("{}", self.p),
        }
    }

    /// Normalized additive valuation with `v(K^x) = Z`.
    pub fn valuation(&self, x: &FieldElement) -> i64 {
        assert!(!x.is_zero(), "valuation of zero");
        let p = int(self.p as i64);
        match self.kind {
            PlaceKind::Rational => crate::rat::val_rat(&p, x.as_rat().expect("rational")),
            PlaceKind::Inert => {
                let v = crate::rat::val_rat(&p, &x.norm());
                debug_assert!(v % 2 == 0, "inert norm valuation must be even");
                v / 2
            }
            PlaceKind::Ramified => crate::rat::val_rat(&p, &x.norm()),
            PlaceKind::Split => self.split_valuation(x),
        }
    }

    fn split_valuation(&self, x: &FieldElement) -> i64 {
        let p = int(self.p as i64);
        let field = self.ideal.field();
        let (u, v) = omega_coords(x, field);
        let den = u.denom().lcm(v.denom());
        let scale = crate::rat::val_int(&p, &den) as i64;
        let ui = (&u * Rat::from_integer(den.clone())).to_integer();
        let vi = (&v * Rat::from_integer(den)).to_integer();
        // v(x) + v_conj(x) = v_p(N(x)); the image under omega -> r decides
        // how the total splits.
        let total = crate::rat::val_rat(&p, &x.norm()) + 2 * scale;
        let prec = (total.max(0) + 2) as u32;
        let pk = p.pow(prec);
        let r = self.lifted_root(prec);
        let img = (&ui + &vi * r).mod_floor(&pk);
        let v_here = if img.is_zero() {
            prec as i64
        } else {
            (crate::rat::val_int(&p, &img) as i64).min(prec as i64)
        };
        (v_here.min(total) - scale).min(total - scale)
    }

    /// Root of the minimal polynomial of omega modulo `p^prec`, lifting the
    /// residue root of this place by Newton steps.
    pub fn lifted_root(&self, prec: u32) -> Int {
        let field = self.ideal.field();
        let p = int(self.p as i64);
        let (tr, nm) = omega_min_poly(field);
        let mut r = self.root.clone().expect("place with residue root");
        let mut cur = 1u32;
        while cur < prec {
            cur = (cur * 2).min(prec);
            let m = p.pow(cur);
            let fr = (&r * &r - &tr * &r + &nm).mod_floor(&m);
            let dfr = (int(2) * &r - &tr).mod_floor(&m);
            let inv = mod_inverse(&dfr, &m).expect("simple residue root");
            r = (&r - fr * inv).mod_floor(&m);
        }
        r.mod_floor(&p.pow(prec))
    }
}

/// Trace and norm of omega: minimal polynomial `x^2 - tr*x + nm`.
pub fn omega_min_poly(field: &NumberField) -> (Int, Int) {
    let d = field.d();
    assert!(d != 0);
    if d.rem_euclid(4) == 1 {
        (Int::one(), Rat::new(int(1 - d), int(4)).to_integer())
    } else {
        (Int::zero(), int(-d))
    }
}

/// Rational coordinates `(u, v)` with `x = u + v*omega`.
pub fn omega_coords(x: &FieldElement, field: &NumberField) -> (Rat, Rat) {
    if field.d() == 0 {
        return (x.as_rat().expect("rational").clone(), Rat::zero());
    }
    if field.d().rem_euclid(4) == 1 {
        let v = x.b() + x.b();
        let u = x.a() - x.b();
        (u, v)
    } else {
        (x.a().clone(), x.b().clone())
    }
}

pub fn mod_inverse(x: &Int, m: &Int) -> Option<Int> {
    let g = x.extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// Splits the rational prime `p` in `K`, returning every place above it.
pub fn prime_splitting(p: u64, field: &NumberField) -> Vec<PrimePlace> {
    let pi = int(p as i64);
    assert!(crate::intfact::is_prime(&pi), "{} is not prime", p);
    if field.kind() == FieldKind::Rational {
        return vec![PrimePlace {
            p,
            kind: PlaceKind::Rational,
            ideal: IdealRep { field: *field, a: pi, b: Int::zero(), c: Int::zero() },
            residue_degree: 1,
            e: 1,
            root: None,
        }];
    }
    let (tr, nm) = omega_min_poly(field);
    // roots of x^2 - tr x + nm mod p via the discriminant square root
    let mut roots: Vec<Int> = Vec::new();
    if p == 2 {
        for r in 0..2i64 {
            let r = int(r);
            if (&r * &r - &tr * &r + &nm).mod_floor(&pi).is_zero() {
                roots.push(r);
            }
        }
    } else {
        let disc = (&tr * &tr - int(4) * &nm).mod_floor(&pi);
        let dm = disc.to_u64().expect("reduced mod p");
        if let Some(s) = crate::poly::modp::sqrt_mod(dm, p) {
            let two_inv = crate::poly::modp::inv_mod(2, p);
            let trm = tr.mod_floor(&pi).to_u64().unwrap();
            let r1 = ((trm as u128 + s as u128) % p as u128 * two_inv as u128 % p as u128) as u64;
            let r2 =
                ((trm as u128 + (p - s) as u128) % p as u128 * two_inv as u128 % p as u128) as u64;
            roots.push(int(r1 as i64));
            if r2 != r1 {
                roots.push(int(r2 as i64));
            }
            roots.sort();
        }
    }
    let ramified = Int::from(field.discriminant()).mod_floor(&pi).is_zero();
    match (ramified, roots.len()) {
        (true, 1) => {
            let r = roots.pop().unwrap();
            let gen = field.from_coords(&-r.clone(), &Int::one());
            let ideal =
                IdealRep::from_generators(field, &[field.from_rat(Rat::from_integer(pi)), gen]);
            vec![PrimePlace {
                p,
                kind: PlaceKind::Ramified,
                ideal,
                residue_degree: 1,
                e: 2,
                root: Some(r),
            }]
        }
        (false, 2) => roots
            .into_iter()
            .map(|r| {
                let gen = field.from_coords(&-r.clone(), &Int::one());
                let ideal = IdealRep::from_generators(
                    field,
                    &[field.from_rat(Rat::from_integer(pi.clone())), gen],
                );
                PrimePlace {
                    p,
                    kind: PlaceKind::Split,
                    ideal,
                    residue_degree: 1,
                    e: 1,
                    root: Some(r),
                }
            })
            .collect(),
        (false, 0) => {
            let ideal = IdealRep::principal(field, &field.from_int(p as i64));
            vec![PrimePlace { p, kind: PlaceKind::Inert, ideal, residue_degree: 2, e: 1, root: None }]
        }
        other => panic!("impossible splitting state {:?} for p={} d={}", other, p, field.d()),
    }
}

/// Every place of norm at most `max_norm`, ordered by (norm, p, root).
pub fn places_up_to(field: &NumberField, max_norm: u64) -> Vec<PrimePlace> {
    let mut out = Vec::new();
    for p in crate::intfact::primes_up_to(max_norm) {
        for place in prime_splitting(p, field) {
            if place.norm().to_u64().map(|n| n <= max_norm).unwrap_or(false) {
                out.push(place);
            }
        }
    }
    out.sort_by(|a, b| {
        a.norm()
            .cmp(&b.norm())
            .then_with(|| a.p.cmp(&b.p))
            .then_with(|| a.root.cmp(&b.root))
    });
    out
}

/// Unit group data: the fundamental unit for real quadratic fields, torsion
/// order otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitData {
    pub fundamental_unit: Option<FieldElement>,
    pub torsion_order: u32,
}

/// Fundamental unit by the continued-fraction expansion of the reduced
/// quadratic irrational attached to the maximal order.
pub fn fundamental_unit(field: &NumberField) -> UnitData {
    let d = field.d();
    if d <= 0 {
        let torsion = match d {
            -1 => 4,
            -3 => 6,
            _ => 2,
        };
        return UnitData { fundamental_unit: None, torsion_order: torsion };
    }
    // alpha = (P + sqrt d)/Q, reduced: alpha > 1, conjugate in (-1, 0).
    let sqrt_d_floor = int(d).sqrt();
    let (mut pp, mut qq) = if d.rem_euclid(4) == 1 {
        // shift omega = (1 + sqrt d)/2 to be reduced: P odd, closest below
        // sqrt(d)
        let mut p0 = sqrt_d_floor.clone();
        if p0.is_even() {
            p0 -= 1;
        }
        (p0, int(2))
    } else {
        (sqrt_d_floor.clone(), Int::one())
    };
    let start = (pp.clone(), qq.clone());
    let alpha0 = FieldElement::new(
        field,
        Rat::new(pp.clone(), qq.clone()),
        Rat::new(Int::one(), qq.clone()),
    );
    let (mut pm1, mut pm2) = (Int::one(), Int::zero());
    let (mut qm1, mut qm2) = (Int::zero(), Int::one());
    loop {
        let a = (&pp + &sqrt_d_floor).div_floor(&qq);
        let (pk, qk) = (&a * &pm1 + &pm2, &a * &qm1 + &qm2);
        pm2 = pm1;
        pm1 = pk;
        qm2 = qm1;
        qm1 = qk;
        pp = &a * &qq - &pp;
        qq = (int(d) - &pp * &pp) / &qq;
        if (pp.clone(), qq.clone()) == start {
            break;
        }
    }
    let unit = FieldElement::from_rat(Rat::from_integer(qm1)) * alpha0
        + FieldElement::from_rat(Rat::from_integer(qm2));
    debug_assert_eq!(unit.norm().abs(), Rat::one(), "fundamental unit norm");
    debug_assert!(unit.is_integral_in(field));
    UnitData { fundamental_unit: Some(unit), torsion_order: 2 }
}

/// Positive definite rational quadratic form for lattice reduction: the sum
/// of squared embedding absolute values.
fn t2_form(x: &FieldElement, field: &NumberField) -> Rat {
    let d = field.d();
    if d == 0 {
        let a = x.as_rat().expect("rational");
        return a * a;
    }
    if d > 0 {
        let two = Rat::from_integer(int(2));
        &two * x.a() * x.a() + two * Rat::from_integer(int(d)) * x.b() * x.b()
    } else {
        x.a() * x.a() + Rat::from_integer(int(-d)) * x.b() * x.b()
    }
}

fn t2_pairing(x: &FieldElement, y: &FieldElement, field: &NumberField) -> Rat {
    let sum = t2_form(&(x.clone() + y.clone()), field);
    let half = Rat::new(Int::one(), int(2));
    (sum - t2_form(x, field) - t2_form(y, field)) * half
}

fn round_rat(x: &Rat) -> Int {
    (x + Rat::new(Int::one(), int(2))).floor().to_integer()
}

/// Lagrange-Gauss reduced Z-basis of the ideal.
pub fn reduced_basis(a: &IdealRep) -> Vec<FieldElement> {
    let field = *a.field();
    if field.kind() == FieldKind::Rational {
        let mut g = a.basis_elements();
        if g[0].as_rat().unwrap().is_negative() {
            g[0] = -g[0].clone();
        }
        return g;
    }
    let basis = a.basis_elements();
    let (mut v1, mut v2) = (basis[0].clone(), basis[1].clone());
    loop {
        if t2_form(&v2, &field) < t2_form(&v1, &field) {
            std::mem::swap(&mut v1, &mut v2);
        }
        let mu = round_rat(&(t2_pairing(&v1, &v2, &field) / t2_form(&v1, &field)));
        if mu.is_zero() {
            break;
        }
        v2 = v2 - FieldElement::from_rat(Rat::from_integer(mu)) * v1.clone();
    }
    vec![v1, v2]
}

/// A generator of the principal ideal `a` of minimal size among unit
/// multiples. `NotPrincipal` when no generator exists.
pub fn reduced_generator(a: &IdealRep) -> Result<FieldElement, IdealError> {
    let field = *a.field();
    if field.kind() == FieldKind::Rational {
        return Ok(FieldElement::from_rat(Rat::from_integer(a.norm())));
    }
    let n = a.norm();
    let nr = Rat::from_integer(n.clone());
    // Any generator can be unit-scaled into the search ellipse
    // t2(x) <= 2 N eps (real) or t2(x) = N (imaginary).
    let bound: Rat = if field.is_imaginary() {
        nr.clone()
    } else {
        let unit = fundamental_unit(&field).fundamental_unit.expect("real quadratic");
        let eps = Surd::from_rat(unit.a().clone())
            + Surd::sqrt_term(unit.b().clone(), &int(field.d()));
        let two_n_eps = eps * Surd::from_rat(&nr * Rat::from_integer(int(2)));
        Rat::from_integer(two_n_eps.ceil_int())
    };
    let basis = reduced_basis(a);
    let (v1, v2) = (&basis[0], &basis[1]);
    let f1 = t2_form(v1, &field);
    let f2 = t2_form(v2, &field);
    let imax = bound_index(&bound, &f1);
    let jmax = bound_index(&bound, &f2);
    // N(i v1 + j v2) = i^2 N(v1) + ij Tr(v1 conj(v2)) + j^2 N(v2)
    let n1 = v1.norm();
    let n2 = v2.norm();
    let tr12 = (v1.clone() * v2.conj()).trace();
    let mut candidates = Vec::new();
    for i in -imax..=imax {
        let ir = Rat::from_integer(int(i));
        for j in -jmax..=jmax {
            if i == 0 && j == 0 {
                continue;
            }
            let jr = Rat::from_integer(int(j));
            let norm = &ir * &ir * &n1 + &ir * &jr * &tr12 + &jr * &jr * &n2;
            if norm.abs() == nr {
                let x = FieldElement::from_int(i) * v1.clone()
                    + FieldElement::from_int(j) * v2.clone();
                candidates.push(x);
            }
        }
    }
    if candidates.is_empty() {
        return Err(IdealError::NotPrincipal);
    }
    // The search ellipse already contains every unit multiple that could be
    // size-minimal (t2 <= 2 size^2 <= bound), so the minimum over the
    // candidates is the exact optimum.
    let mut best: Option<FieldElement> = None;
    for cand in candidates {
        best = Some(match best.take() {
            None => cand,
            Some(b) => match size(&cand).cmp(&size(&b)) {
                Ordering::Less => cand,
                Ordering::Greater => b,
                Ordering::Equal => {
                    if n_ordering_cmp(&cand, &b) == Ordering::Less {
                        cand
                    } else {
                        b
                    }
                }
            },
        });
    }
    Ok(best.expect("nonempty"))
}

fn bound_index(bound: &Rat, f: &Rat) -> i64 {
    // For a Gauss-reduced basis, t2(i v1 + j v2) >= (3/4) i^2 t2(v1).
    let lim = Rat::from_integer(int(4)) * bound / (Rat::from_integer(int(3)) * f);
    Surd::sqrt_rat(&lim).ceil_int().to_i64().expect("small index bound")
}

/// A `p`-primitive element (valuation exactly 1) from the reduced basis of
/// the prime ideal.
pub fn primitive_element(place: &PrimePlace) -> FieldElement {
    let field = place.ideal.field();
    if field.kind() == FieldKind::Rational {
        return FieldElement::from_int(place.p as i64);
    }
    let basis = reduced_basis(&place.ideal);
    let mut prims: Vec<FieldElement> =
        basis.into_iter().filter(|x| place.valuation(x) == 1).collect();
    assert!(!prims.is_empty(), "a Z-basis of a prime has a primitive element");
    prims.sort_by(n_ordering_cmp);
    prims.into_iter().next().unwrap()
}

/// The representative of `x` mod `a` inside the fundamental parallelepiped
/// of the reduced basis.
pub fn reduced_residue(x: &FieldElement, a: &IdealRep) -> FieldElement {
    let field = *a.field();
    assert!(x.is_integral_in(&field), "reduced_residue needs an integral element");
    if field.kind() == FieldKind::Rational {
        let n = a.norm();
        let q = x.as_rat().unwrap().to_integer().mod_floor(&n);
        return FieldElement::from_rat(Rat::from_integer(q));
    }
    let basis = reduced_basis(a);
    let (v1, v2) = (&basis[0], &basis[1]);
    let (x1, x2) = omega_coords(x, &field);
    let (a11, a21) = omega_coords(v1, &field);
    let (a12, a22) = omega_coords(v2, &field);
    let det = &a11 * &a22 - &a12 * &a21;
    assert!(!det.is_zero());
    let s = (&x1 * &a22 - &x2 * &a12) / &det;
    let t = (&x2 * &a11 - &x1 * &a21) / &det;
    let sf = crate::rat::floor_rat(&s);
    let tf = crate::rat::floor_rat(&t);
    let base = x.clone()
        - FieldElement::from_rat(Rat::from_integer(sf)) * v1.clone()
        - FieldElement::from_rat(Rat::from_integer(tf)) * v2.clone();
    // The parallelepiped representative already meets the size bound; the
    // minimal-size representative is among its lattice neighbors. For an
    // imaginary field size^2 is the norm, so the comparison stays rational.
    let mut best = base.clone();
    let mut best_key: Option<Rat> = None;
    for i in -1i64..=1 {
        for j in -1i64..=1 {
            let cand = base.clone()
                - FieldElement::from_int(i) * v1.clone()
                - FieldElement::from_int(j) * v2.clone();
            if field.is_imaginary() {
                let key = cand.norm();
                let cur = best_key.get_or_insert_with(|| best.norm());
                let ord =
                    key.cmp(cur).then_with(|| coordinate_cmp(&cand, &best));
                if ord == Ordering::Less {
                    best_key = Some(key);
                    best = cand;
                }
            } else {
                let ord =
                    size(&cand).cmp(&size(&best)).then_with(|| n_ordering_cmp(&cand, &best));
                if ord == Ordering::Less {
                    best = cand;
                }
            }
        }
    }
    debug_assert!(a.contains(&(best.clone() - x.clone())));
    best
}

fn coordinate_cmp(x: &FieldElement, y: &FieldElement) -> Ordering {
    use num_traits::Signed;
    x.a()
        .abs()
        .cmp(&y.a().abs())
        .then_with(|| x.a().cmp(y.a()))
        .then_with(|| x.b().abs().cmp(&y.b().abs()))
        .then_with(|| x.b().cmp(y.b()))
}

/// All integral ideals of norm at most `max_norm`, built as products of
/// prime-ideal powers. Sorted by (norm, hnf).
pub fn enumerate_ideals(field: &NumberField, max_norm: u64) -> Vec<IdealRep> {
    let mut places: Vec<PrimePlace> = Vec::new();
    for p in crate::intfact::primes_up_to(max_norm) {
        for place in prime_splitting(p, field) {
            if place.norm().to_u64().map(|n| n <= max_norm).unwrap_or(false) {
                places.push(place);
            }
        }
    }
    let mut out = vec![IdealRep::unit_ideal(field)];
    for place in &places {
        let pn = place.norm();
        let mut next = Vec::new();
        for ide in &out {
            let mut cur = ide.clone();
            loop {
                let fits = (&cur.norm() * &pn).to_u64().map(|n| n <= max_norm).unwrap_or(false);
                next.push(cur.clone());
                if !fits {
                    break;
                }
                cur = cur.mul(&place.ideal);
            }
        }
        out = next;
    }
    out.sort_by(|x, y| {
        x.norm().cmp(&y.norm()).then_with(|| x.a.cmp(&y.a)).then_with(|| x.b.cmp(&y.b))
    });
    out
}

/// Survey of the reduced-element lemmas over all ideals of norm up to
/// `max_norm`: per-field empirical constants and bookkeeping.
#[derive(Clone, Debug)]
pub struct KappaReport {
    /// max over principal ideals of size(reduced generator) / N^(1/d)
    pub kappa_gen: SizeValue,
    /// max over all ideals and both basis vectors of size / N^(1/d)
    pub kappa_basis: SizeValue,
    /// max over prime ideals of size(primitive) / N^(1/d)
    pub kappa_prim: SizeValue,
    /// max over sampled residues of size / (d * N^(1/d))
    pub kappa_res: SizeValue,
    pub ideals_checked: usize,
    pub principal_checked: usize,
}

impl KappaReport {
    /// The single per-field constant: the max of the four ratios.
    pub fn kappa_emp(&self) -> SizeValue {
        [
            self.kappa_gen.clone(),
            self.kappa_basis.clone(),
            self.kappa_prim.clone(),
            self.kappa_res.clone(),
        ]
        .into_iter()
        .max()
        .unwrap()
    }
}

pub fn kappa_survey(field: &NumberField, max_norm: u64) -> KappaReport {
    let d = field.degree();
    let ideals = enumerate_ideals(field, max_norm);
    let mut kappa_gen = SizeValue::from_rat(Rat::zero());
    let mut kappa_basis = SizeValue::from_rat(Rat::zero());
    let mut kappa_prim = SizeValue::from_rat(Rat::zero());
    let mut kappa_res = SizeValue::from_rat(Rat::zero());
    let mut principal = 0usize;
    let dd = Rat::from_integer(int(d as i64));
    for ide in &ideals {
        if ide.norm().is_one() {
            continue;
        }
        let root_norm = nth_root_size(&ide.norm(), d);
        for v in reduced_basis(ide) {
            kappa_basis = kappa_basis.max(size(&v).div(&root_norm));
        }
        if let Ok(g) = reduced_generator(ide) {
            principal += 1;
            kappa_gen = kappa_gen.max(size(&g).div(&root_norm));
        }
        let x = field.from_coords(&(ide.norm() + int(7)), &int(3));
        let r = reduced_residue(&x, ide);
        kappa_res =
            kappa_res.max(size(&r).div(&root_norm).div(&SizeValue::from_rat(dd.clone())));
    }
    for place in places_up_to(field, max_norm) {
        let pi = primitive_element(&place);
        let root_norm = nth_root_size(&place.norm(), d);
        kappa_prim = kappa_prim.max(size(&pi).div(&root_norm));
    }
    KappaReport {
        kappa_gen,
        kappa_basis,
        kappa_prim,
        kappa_res,
        ideals_checked: ideals.len(),
        principal_checked: principal,
    }
}

/// `N^(1/d)` as an exact size value (d = 1 or 2).
pub fn nth_root_size(n: &Int, d: u32) -> SizeValue {
    match d {
        1 => SizeValue::from_rat(Rat::from_integer(n.clone())),
        2 => SizeValue::sqrt_of(Surd::from_rat(Rat::from_integer(n.clone()))),
        _ => unreachable!("degree is 1 or 2"),
    }
}
