//! The field-growth experiment: the size ordering on `O_K`, primitive
//! places and their certificates, the window sets and the degree lower
//! bound, distinct-field counting by ramification signatures, reducible
//! fiber counts, and the constants report.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cover::{CriticalData, PlaneCover};
use crate::field::{enumerate_integers, n_ordering_cmp, size, FieldElement, FieldKind, SizeValue};
use crate::ideal::{places_up_to, primitive_element, reduced_residue, PrimePlace};
use crate::padic::{residue_roots, RamStatus};
use crate::poly::kfactor;
use crate::ram::{self, BadSet, PredictVerdict};
use crate::rat::{int, Int, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DzError {
    #[error("place {0} lies in the bad set S")]
    BadPlace(u64),
    #[error("no Delta factor has a degree-one place above p = {0}")]
    NoDegreeOnePlace(u64),
    #[error("indeterminate ramification for tau = {tau} at p = {p} poisons the prefix scan")]
    Indeterminate { tau: String, p: u64 },
    #[error("no primitive element found below the certificate window for p = {0}")]
    NoPrimitiveFound(u64),
    #[error(transparent)]
    Ram(#[from] ram::RamError),
}

/// The single N-ordering of `O_K`: size first, ties broken by
/// `(|a|, a, |b|, b)` on the coordinates.
pub struct SizeOrdering;

impl SizeOrdering {
    pub fn cmp(x: &FieldElement, y: &FieldElement) -> Ordering {
        n_ordering_cmp(x, y)
    }
}

/// Certificate that `v` is primitive for `tau`: the prefix-scan length plus
/// the observed size ratio.
#[derive(Clone, Debug)]
pub struct PrimitiveCertificate {
    pub tau: FieldElement,
    /// number of strictly earlier elements, all determinately unramified
    pub prefix_len: usize,
    /// size(tau) / Nv^(1/d), rounded up to a 1/64 grid
    pub lambda_ratio: Rat,
}

/// Shared, growable prefix of the N-ordering, so a whole experiment
/// enumerates `O_K` once instead of once per place.
pub struct ScanPool {
    field: crate::field::NumberField,
    bound: Rat,
    taus: Vec<FieldElement>,
}

impl ScanPool {
    pub fn new(field: &crate::field::NumberField) -> Self {
        ScanPool { field: *field, bound: Rat::zero() - Rat::one(), taus: vec![] }
    }

    /// The N-ordered elements of size at most `bound`.
    pub fn upto(&mut self, bound: &Rat) -> &[FieldElement] {
        if *bound > self.bound {
            // grow geometrically so repeated small increases stay cheap
            let grown = (bound * Rat::from_integer(int(2))).max(Rat::from_integer(int(8)));
            self.taus = enumerate_integers(&self.field, &grown);
            self.bound = grown;
        }
        let bound_sv = SizeValue::from_rat(bound.clone().max(Rat::zero()));
        // sizes are non-decreasing along the pool: binary search the cutoff
        let cut = self.taus.partition_point(|t| size(t) <= bound_sv);
        &self.taus[..cut]
    }
}

/// Determinate fiber-ramification test used by the scan: the Delta
/// prediction with oracle fallback.
fn fiber_ramified(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    tau: &FieldElement,
    place: &PrimePlace,
) -> Result<bool, DzError> {
    let pred = ram::predict(cover, crit, bad, tau, place)?;
    match pred.verdict {
        PredictVerdict::Ramified => Ok(true),
        PredictVerdict::Unramified => Ok(false),
        PredictVerdict::NeedsOracle => match ram::fiber_ramified_at(cover, tau, place) {
            RamStatus::Ramified => Ok(true),
            RamStatus::Unramified => Ok(false),
            RamStatus::Undetermined => {
                Err(DzError::Indeterminate { tau: format!("{}", tau), p: place.p })
            }
        },
    }
}

/// Finds the first `tau` in the N-ordering whose fiber field ramifies at
/// `v`, the whole prefix verified unramified.
pub fn find_primitive(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    place: &PrimePlace,
) -> Result<PrimitiveCertificate, DzError> {
    let mut pool = ScanPool::new(cover.field());
    find_primitive_pooled(cover, crit, bad, place, &mut pool)
}

/// `find_primitive` against a shared enumeration pool.
pub fn find_primitive_pooled(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    place: &PrimePlace,
    pool: &mut ScanPool,
) -> Result<PrimitiveCertificate, DzError> {
    if bad.contains(place.p) {
        return Err(DzError::BadPlace(place.p));
    }
    let field = cover.field();
    let d = field.degree();
    // Degree-one hypothesis: some Delta factor has a residue root at v.
    let mut witness_root: Option<(usize, FieldElement)> = None;
    for (i, f) in crit.factors.iter().enumerate() {
        let integral = (0..=f.poly.deg()).all(|k| {
            let c = f.poly.coeff(k);
            c.is_zero() || place.valuation(&c) >= 0
        });
        if !integral {
            continue;
        }
        if let Some((r, _)) = residue_roots(&f.poly, place).into_iter().next() {
            witness_root = Some((i, r));
            break;
        }
    }
    let Some((qi, alpha_res)) = witness_root else {
        return Err(DzError::NoDegreeOnePlace(place.p));
    };
    // Constructive certificate: gamma with v(q(gamma)) = 1 and size
    // O(Nv^(1/d)), from the reduced residue plus a primitive bump.
    let q = &crit.factors[qi].poly;
    let gamma_prime = reduced_residue(&alpha_res, &place.ideal);
    let k0 = {
        let qg = q.eval(&gamma_prime);
        if qg.is_zero() {
            i64::MAX
        } else {
            place.valuation(&qg)
        }
    };
    debug_assert!(k0 >= 1, "reduced residue of a residue root meets the factor");
    let gamma =
        if k0 == 1 { gamma_prime } else { gamma_prime + primitive_element(place) };
    debug_assert_eq!(place.valuation(&q.eval(&gamma)), 1);
    let gamma_size = size(&gamma);
    // Scan in N-order with a doubling window; once the window covers the
    // certificate element a candidate must appear (unless every verdict on
    // it stays indeterminate, which is an error).
    let nv_root = crate::ideal::nth_root_size(&place.norm(), d);
    let mut window = nv_root.clone();
    let mut final_round = false;
    let mut verified = 0usize;
    loop {
        let bound = Rat::from_integer(window.ceil_int());
        let taus = pool.upto(&bound);
        for (idx, tau) in taus.iter().enumerate().skip(verified) {
            if fiber_ramified(cover, crit, bad, tau, place)? {
                let ratio = ratio_up(&size(tau), &nv_root);
                return Ok(PrimitiveCertificate {
                    tau: tau.clone(),
                    prefix_len: idx,
                    lambda_ratio: ratio,
                });
            }
        }
        verified = taus.len();
        if final_round {
            return Err(DzError::NoPrimitiveFound(place.p));
        }
        window = window.scale(&Rat::from_integer(int(2)));
        if window >= gamma_size {
            final_round = true;
            window = window.max(gamma_size.clone());
        }
    }
}

/// Smallest rational on the 1/64 grid at or above `num / den`.
fn ratio_up(num: &SizeValue, den: &SizeValue) -> Rat {
    let ratio = num.div(den);
    let grid = Rat::new(Int::one(), int(64));
    let mut lo = Int::zero();
    let mut hi = Int::one();
    while ratio.cmp_rat(&(Rat::from_integer(hi.clone()) * &grid)) == Ordering::Greater {
        hi = &hi * 2 + 1;
    }
    while &hi - &lo > Int::one() {
        let mid: Int = (&hi + &lo) / 2;
        if ratio.cmp_rat(&(Rat::from_integer(mid.clone()) * &grid)) == Ordering::Greater {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Rat::from_integer(hi) * grid
}

#[derive(Clone, Debug)]
pub struct ConstantsReport {
    /// number of finite critical values, deg Delta
    pub m: usize,
    pub infinity_critical: bool,
    /// 2g + 2n - 2 when the genus is supplied
    pub riemann_hurwitz_bound: Option<usize>,
    pub bound_satisfied: Option<bool>,
    /// c = 1 / (16 (g+n)^2 d lambda^d)
    pub c: Option<Rat>,
    pub lambda: Rat,
    pub genus_missing: bool,
}

pub fn constants_report(cover: &PlaneCover, crit: &CriticalData, lambda: &Rat) -> ConstantsReport {
    let m = crit.m();
    let n = cover.degree();
    let d = cover.field().degree();
    match cover.genus() {
        None => ConstantsReport {
            m,
            infinity_critical: crit.infinity_critical,
            riemann_hurwitz_bound: None,
            bound_satisfied: None,
            c: None,
            lambda: lambda.clone(),
            genus_missing: true,
        },
        Some(g) => {
            let bound = (2 * g as usize + 2 * n).saturating_sub(2);
            let gn = int((g as usize + n) as i64);
            let lam_pow = (0..d).fold(Rat::one(), |acc, _| acc * lambda);
            let denom = Rat::from_integer(int(16) * &gn * &gn * int(d as i64)) * lam_pow;
            ConstantsReport {
                m,
                infinity_critical: crit.infinity_critical,
                riemann_hurwitz_bound: Some(bound),
                bound_satisfied: Some(m <= bound),
                c: Some(Rat::one() / denom),
                lambda: lambda.clone(),
                genus_missing: false,
            }
        }
    }
}

/// Count of `tau` with `size <= B` whose fiber is reducible over `K` (or
/// degenerate through a degree drop).
pub fn reducible_fiber_count(cover: &PlaneCover, bound: &Rat) -> usize {
    let field = cover.field();
    enumerate_integers(field, bound)
        .iter()
        .filter(|tau| {
            let f = cover.fiber_poly(tau);
            f.degree() != Some(cover.degree()) || !kfactor::is_irreducible_k(&f, field)
        })
        .count()
}

/// Ramification signature entry: (norm, p, place label).
pub type SignaturePlace = (Int, u64, String);

/// Ramification signature of the fiber field: factor degrees plus the
/// sorted determinate-ramified places of norm at most `norm_bound`. `None`
/// when some candidate place stays undetermined (the signature would not
/// be a function of the field alone).
pub fn fiber_signature(
    cover: &PlaneCover,
    tau: &FieldElement,
    norm_bound: &Int,
) -> Option<(Vec<usize>, Vec<SignaturePlace>)> {
    let field = cover.field();
    let factors = ram::fiber_factors(cover, tau);
    let mut degs: Vec<usize> = factors.iter().map(|g| g.deg()).collect();
    degs.sort_unstable();
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for g in &factors {
        collect_primes_of(&g.discriminant(), &mut candidates);
        collect_primes_of(&g.lc(), &mut candidates);
        for k in 0..=g.deg() {
            let c = g.coeff(k);
            if !c.is_zero() {
                collect_primes_of_int(c.norm().denom(), &mut candidates);
            }
        }
    }
    let mut ramified: Vec<SignaturePlace> = Vec::new();
    for p in candidates {
        for place in crate::ideal::prime_splitting(p, field) {
            if &place.norm() > norm_bound {
                continue;
            }
            match ram::fiber_ramified_at(cover, tau, &place) {
                RamStatus::Ramified => ramified.push((place.norm(), place.p, place.label())),
                RamStatus::Unramified => {}
                RamStatus::Undetermined => return None,
            }
        }
    }
    ramified.sort();
    Some((degs, ramified))
}

fn collect_primes_of(x: &FieldElement, out: &mut BTreeSet<u64>) {
    if x.is_zero() {
        return;
    }
    let n = x.norm();
    collect_primes_of_int(n.numer(), out);
    collect_primes_of_int(n.denom(), out);
}

fn collect_primes_of_int(n: &Int, out: &mut BTreeSet<u64>) {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return;
    }
    for (p, _) in crate::intfact::factor(&n) {
        out.insert(p.to_u64().expect("prime fits"));
    }
}

/// Certified lower bound for the number of distinct fiber fields over the
/// enumeration up to `B`: distinct ramification signatures of irreducible
/// fibers (places up to norm `B^2`).
#[derive(Clone, Debug)]
pub struct DistinctFieldReport {
    pub count: usize,
    pub signatures: Vec<(FieldElement, (Vec<usize>, Vec<SignaturePlace>))>,
    pub unsignable: usize,
}

pub fn distinct_field_count(cover: &PlaneCover, bound: &Rat) -> DistinctFieldReport {
    let field = cover.field();
    let norm_bound = crate::rat::floor_rat(&(bound * bound)).max(Int::one());
    let mut seen: Vec<(Vec<usize>, Vec<SignaturePlace>)> = Vec::new();
    let mut signatures = Vec::new();
    let mut unsignable = 0usize;
    for tau in enumerate_integers(field, bound) {
        let f = cover.fiber_poly(&tau);
        if f.degree() != Some(cover.degree()) || !kfactor::is_irreducible_k(&f, field) {
            continue;
        }
        match fiber_signature(cover, &tau, &norm_bound) {
            Some(sig) => {
                if !seen.contains(&sig) {
                    seen.push(sig.clone());
                }
                signatures.push((tau, sig));
            }
            None => unsignable += 1,
        }
    }
    DistinctFieldReport { count: seen.len(), signatures, unsignable }
}

/// Exact log2 of the compositum degree for quadratic covers over `Q`: the
/// F2-rank of the subgroup of Q*/squares generated by the fiber
/// discriminants. `None` when the cover is not quadratic over `Q`.
pub fn compositum_log2_degree(cover: &PlaneCover, taus: &[FieldElement]) -> Option<usize> {
    if cover.field().kind() != FieldKind::Rational || cover.degree() != 2 {
        return None;
    }
    // xor basis over indicator sets on {-1} u primes
    let mut basis: Vec<BTreeSet<i64>> = Vec::new();
    for tau in taus {
        let f = cover.fiber_poly(tau);
        if f.degree() != Some(2) {
            continue;
        }
        let disc = f.discriminant();
        let dq = disc.as_rat().expect("rational cover");
        if dq.is_zero() {
            continue;
        }
        let mut v: BTreeSet<i64> = BTreeSet::new();
        if dq.is_negative() {
            v.insert(-1);
        }
        let n = (dq.numer() * dq.denom()).abs();
        for (p, e) in crate::intfact::factor(&n) {
            if e % 2 == 1 {
                v.insert(p.to_i64().expect("prime fits"));
            }
        }
        let mut changed = true;
        while changed && !v.is_empty() {
            changed = false;
            for b in &basis {
                if v.iter().next_back() == b.iter().next_back() {
                    v = v.symmetric_difference(b).cloned().collect();
                    changed = true;
                    break;
                }
            }
        }
        if !v.is_empty() {
            basis.push(v);
            basis.sort_by(|a, b| b.iter().next_back().cmp(&a.iter().next_back()));
        }
    }
    Some(basis.len())
}

/// Full experiment at height `B`.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub b: Rat,
    pub lambda: Rat,
    /// inclusive norm window [lo, hi] for the places of M(B)
    pub window: (Int, Int),
    pub m_b_count: usize,
    pub skipped_no_degree_one: Vec<u64>,
    pub assignments: Vec<(PrimePlace, PrimitiveCertificate)>,
    pub omega: Vec<FieldElement>,
    pub omega_prime: Vec<FieldElement>,
    pub degree_log2_lower_bound: usize,
    pub distinct_field_lower_bound: usize,
    pub reducible_count: usize,
    pub constants: ConstantsReport,
}

pub fn run_experiment(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    b: &Rat,
    lambda: &Rat,
) -> Result<ExperimentReport, DzError> {
    let field = cover.field();
    let d = field.degree();
    let lo = pow_rat(&(b / (Rat::from_integer(int(2)) * lambda)), d);
    let hi = pow_rat(&(b / lambda), d);
    let lo_int = lo.ceil().to_integer();
    let hi_int = crate::rat::floor_rat(&hi);
    let mut m_b: Vec<PrimePlace> = Vec::new();
    let mut skipped = Vec::new();
    let mut assignments = Vec::new();
    let mut pool = ScanPool::new(field);
    if hi_int >= Int::one() {
        for place in places_up_to(field, hi_int.to_u64().unwrap_or(0)) {
            if place.norm() < lo_int || bad.contains(place.p) {
                continue;
            }
            match find_primitive_pooled(cover, crit, bad, &place, &mut pool) {
                Ok(cert) => {
                    m_b.push(place.clone());
                    assignments.push((place, cert));
                }
                Err(DzError::NoDegreeOnePlace(p)) => skipped.push(p),
                Err(e) => return Err(e),
            }
        }
    }
    let mut omega: Vec<FieldElement> = Vec::new();
    for (_, cert) in &assignments {
        if !omega.contains(&cert.tau) {
            omega.push(cert.tau.clone());
        }
    }
    omega.sort_by(n_ordering_cmp);
    let omega_prime: Vec<FieldElement> = omega
        .iter()
        .filter(|tau| {
            let f = cover.fiber_poly(tau);
            f.degree() == Some(cover.degree()) && kfactor::is_irreducible_k(&f, field)
        })
        .cloned()
        .collect();
    let distinct = distinct_field_count(cover, b);
    let reducible = reducible_fiber_count(cover, b);
    let constants = constants_report(cover, crit, lambda);
    Ok(ExperimentReport {
        b: b.clone(),
        lambda: lambda.clone(),
        window: (lo_int, hi_int),
        m_b_count: m_b.len(),
        skipped_no_degree_one: skipped,
        degree_log2_lower_bound: omega_prime.len(),
        distinct_field_lower_bound: distinct.count,
        reducible_count: reducible,
        assignments,
        omega,
        omega_prime,
        constants,
    })
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// Calibration: the max primitive ratio over usable places of norm at most
/// `max_norm`, on the 1/64 grid; at least 1.
pub fn calibrate_lambda(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    max_norm: u64,
) -> Rat {
    let mut lam = Rat::one();
    let mut pool = ScanPool::new(cover.field());
    for place in places_up_to(cover.field(), max_norm) {
        if bad.contains(place.p) {
            continue;
        }
        if let Ok(cert) = find_primitive_pooled(cover, crit, bad, &place, &mut pool) {
            if cert.lambda_ratio > lam {
                lam = cert.lambda_ratio;
            }
        }
    }
    lam
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::poly::bipoly::BiPoly;
    use crate::poly::Poly;
    use crate::rat::rat;

    type KPoly = Poly<FieldElement>;

    fn c(v: i64) -> FieldElement {
        FieldElement::from_rat(rat(v))
    }

    fn tpoly(coeffs: &[i64]) -> KPoly {
        KPoly::new(coeffs.iter().map(|&v| c(v)).collect())
    }

    fn q() -> NumberField {
        NumberField::rational()
    }

    fn u2_minus_t() -> PlaneCover {
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(0)).unwrap()
    }

    fn legendre3() -> PlaneCover {
        let g = tpoly(&[0, 1]) * tpoly(&[-1, 1]) * tpoly(&[-3, 1]);
        let f = BiPoly::new(vec![g.scale(&c(-1)), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(1)).unwrap()
    }

    #[test]
    fn find_primitive_u2_at_5() {
        let cov = u2_minus_t();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let v5 = crate::ideal::prime_splitting(5, &q()).pop().unwrap();
        let cert = find_primitive(&cov, &crit, &bad, &v5).unwrap();
        assert_eq!(cert.tau, c(-5));
        for t in -4i64..=4 {
            assert_eq!(
                ram::fiber_ramified_at(&cov, &c(t), &v5),
                RamStatus::Unramified,
                "t={}",
                t
            );
        }
    }

    #[test]
    fn find_primitive_legendre_at_7() {
        let cov = legendre3();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let v7 = crate::ideal::prime_splitting(7, &q()).pop().unwrap();
        let cert = find_primitive(&cov, &crit, &bad, &v7).unwrap();
        // Delta(-4) = (-4)(-5)(-7) = -140 has v_7 = 1 (witness T - 3), so
        // -4 precedes +-7; the fiber field Q(sqrt(-140)) = Q(sqrt(-35)) is
        // indeed 7-ramified
        assert_eq!(cert.tau, c(-4));
        let p = ram::predict(&cov, &crit, &bad, &cert.tau, &v7).unwrap();
        assert_eq!(p.verdict, PredictVerdict::Ramified);
        assert_eq!(p.witness.unwrap().k, Some(1));
        // ground truth: no earlier tau has a 7-ramified fiber
        for t in [0i64, 1, -1, 2, -2, 3, -3] {
            assert_eq!(ram::fiber_ramified_at(&cov, &c(t), &v7), RamStatus::Unramified);
        }
    }

    #[test]
    fn bad_place_rejected() {
        let cov = u2_minus_t();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let v2 = crate::ideal::prime_splitting(2, &q()).pop().unwrap();
        assert!(matches!(find_primitive(&cov, &crit, &bad, &v2), Err(DzError::BadPlace(2))));
    }

    #[test]
    fn experiment_u2_b30() {
        let cov = u2_minus_t();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let rep = run_experiment(&cov, &crit, &bad, &rat(30), &Rat::one()).unwrap();
        let ps: Vec<u64> = rep.assignments.iter().map(|(v, _)| v.p).collect();
        assert_eq!(ps, vec![17, 19, 23, 29]);
        assert_eq!(rep.m_b_count, 4);
        assert_eq!(rep.degree_log2_lower_bound, 4);
        for (v, cert) in &rep.assignments {
            assert_eq!(cert.tau, c(-(v.p as i64)));
        }
        for tau in &rep.omega {
            assert!(size(tau).cmp_rat(&rat(30)) != Ordering::Greater);
        }
    }

    #[test]
    fn experiment_empty_window() {
        let cov = u2_minus_t();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let rep = run_experiment(&cov, &crit, &bad, &rat(2), &Rat::one()).unwrap();
        assert_eq!(rep.m_b_count, 0);
        assert!(rep.omega.is_empty());
        assert_eq!(rep.degree_log2_lower_bound, 0);
    }

    #[test]
    fn reducible_counts() {
        let cov = u2_minus_t();
        assert_eq!(reducible_fiber_count(&cov, &rat(100)), 11);
        assert_eq!(reducible_fiber_count(&cov, &rat(0)), 1);
        let f = BiPoly::new(vec![tpoly(&[0, -1]), tpoly(&[-3]), KPoly::zero(), KPoly::one()]);
        let cov3 = PlaneCover::new(q(), f, Some(0)).unwrap();
        let count = reducible_fiber_count(&cov3, &rat(50));
        let mut expect = 0;
        for t in -50i64..=50 {
            let fib = cov3.fiber_poly(&c(t));
            if !kfactor::is_irreducible_k(&fib, &q()) {
                expect += 1;
            }
        }
        assert_eq!(count, expect);
    }

    #[test]
    fn distinct_fields_u2_b20() {
        let cov = u2_minus_t();
        let rep = distinct_field_count(&cov, &rat(20));
        assert!(rep.count >= 12, "count = {}", rep.count);
        assert_eq!(rep.unsignable, 0);
        // upper sanity: at most the number of distinct signed kernels
        let mut kernels = BTreeSet::new();
        for t in -20i64..=20 {
            if t == 0 {
                continue;
            }
            let s = crate::rat::squarefree_part(&int(t));
            if s != int(1) {
                kernels.insert(s);
            }
        }
        assert!(rep.count <= kernels.len());
    }

    #[test]
    fn distinct_fields_monotone() {
        let cov = u2_minus_t();
        let a = distinct_field_count(&cov, &rat(8)).count;
        let b = distinct_field_count(&cov, &rat(12)).count;
        let c = distinct_field_count(&cov, &rat(16)).count;
        assert!(a <= b && b <= c);
    }

    #[test]
    fn compositum_rank() {
        let cov = u2_minus_t();
        let taus: Vec<FieldElement> = (1..=30).map(c).collect();
        assert_eq!(compositum_log2_degree(&cov, &taus), Some(10)); // pi(30)
        let taus: Vec<FieldElement> = (-30..=30).filter(|&t| t != 0).map(c).collect();
        assert_eq!(compositum_log2_degree(&cov, &taus), Some(11)); // sign too
    }

    #[test]
    fn constants_reports() {
        let leg = legendre3();
        let (crit, _) = ram::analyze(&leg).unwrap();
        let r = constants_report(&leg, &crit, &Rat::one());
        assert_eq!(r.m, 3);
        assert_eq!(r.riemann_hurwitz_bound, Some(4));
        assert_eq!(r.bound_satisfied, Some(true));
        assert_eq!(r.c, Some(crate::rat::ratio(1, 144)));
        let cov = u2_minus_t();
        let (crit, _) = ram::analyze(&cov).unwrap();
        let r = constants_report(&cov, &crit, &Rat::one());
        assert_eq!(r.m, 1);
        assert_eq!(r.riemann_hurwitz_bound, Some(2));
        let f = BiPoly::new(vec![tpoly(&[0, -1]), tpoly(&[-3]), KPoly::zero(), KPoly::one()]);
        let cov3 = PlaneCover::new(q(), f, Some(0)).unwrap();
        let (crit3, _) = ram::analyze(&cov3).unwrap();
        let r = constants_report(&cov3, &crit3, &Rat::one());
        assert_eq!(r.m, 2);
        assert_eq!(r.riemann_hurwitz_bound, Some(4));
    }

    #[test]
    fn assignment_multiplicity_bounded_by_m() {
        let cov = legendre3();
        let (crit, bad) = ram::analyze(&cov).unwrap();
        let rep = run_experiment(&cov, &crit, &bad, &rat(30), &Rat::one()).unwrap();
        let m = crit.m();
        for tau in &rep.omega {
            let uses = rep.assignments.iter().filter(|(_, c)| &c.tau == tau).count();
            assert!(uses <= m, "tau {} used by {} > m places", tau, uses);
        }
    }
}
