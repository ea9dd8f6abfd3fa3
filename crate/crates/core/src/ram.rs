//! The arithmetic-ramification core: the finite bad set `S`, the
//! Delta-criterion prediction of fiber-field ramification at places outside
//! `S`, the independent p-adic oracle over whole fibers, and the
//! cross-validation harness comparing the two.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cover::{critical_polynomial, CoverError, CriticalData, PlaneCover};
use crate::field::{size, FieldElement, SizeValue};
use crate::ideal::{omega_coords, places_up_to, prime_splitting, PrimePlace};
use crate::intfact;
use crate::padic::{local_ramified_oracle, OracleVerdict, RamStatus};
use crate::poly::Poly;
use crate::rat::{int, Int, Rat};
use crate::surd::Surd;

pub type KPoly = Poly<FieldElement>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RamError {
    #[error("place {0} lies in the bad set S")]
    BadPlace(u64),
    #[error("tau is a critical value (Delta(tau) = 0)")]
    CriticalFiber,
    #[error("tau must be an algebraic integer")]
    NonIntegralTau,
    #[error("witness uniqueness failed at p = {0}; the place belongs in S")]
    WitnessNotUnique(u64),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// The finite set of rational primes outside which the Delta-criterion is
/// exact. A deliberate over-approximation of the paper-level bad set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadSet {
    pub vertical: BTreeSet<u64>,
    pub collision: BTreeSet<u64>,
    pub definition_field: BTreeSet<u64>,
    pub all: BTreeSet<u64>,
}

impl BadSet {
    pub fn contains(&self, p: u64) -> bool {
        self.all.contains(&p)
    }
}

fn primes_of_int(n: &Int, out: &mut BTreeSet<u64>) {
    use num_traits::ToPrimitive;
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return;
    }
    for (p, _) in intfact::factor(&n) {
        out.insert(p.to_u64().expect("prime fits in u64"));
    }
}

/// Primes dividing the numerator or denominator of `N(x)`.
fn primes_of_element(x: &FieldElement, out: &mut BTreeSet<u64>) {
    if x.is_zero() {
        return;
    }
    let n = x.norm();
    primes_of_int(n.numer(), out);
    primes_of_int(n.denom(), out);
}

/// Integer content of the coordinates of a K-polynomial with integral
/// coefficients.
fn coordinate_content(f: &KPoly, field: &crate::field::NumberField) -> Int {
    let mut g = Int::zero();
    for k in 0..=f.deg() {
        let c = f.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (u, v) = omega_coords(&c, field);
        debug_assert!(crate::rat::is_integer(&u) && crate::rat::is_integer(&v));
        g = g.gcd(&u.to_integer()).gcd(&v.to_integer());
    }
    g
}

/// Computes the bad set from the critical data.
///
/// vertical: primes where the model degenerates mod p (U-degree drop, or a
/// common factor of F and F'_U over F_p(T), detected through the content of
/// the resultant). collision: primes where two branch points meet (pairwise
/// resultants and per-factor discriminants), or where a finite branch point
/// meets infinity (coefficient denominators). definition_field: poly-disc
/// primes of the factor fields. `all` adds the primes ramified in K.
pub fn compute_bad_set(cover: &PlaneCover, crit: &CriticalData) -> BadSet {
    let field = cover.field();
    let mut vertical = BTreeSet::new();
    primes_of_int(&coordinate_content(&cover.model().lc_u(), field), &mut vertical);
    primes_of_int(&coordinate_content(&crit.resultant, field), &mut vertical);
    let mut collision = BTreeSet::new();
    let factors: Vec<&KPoly> = crit.factors.iter().map(|f| &f.poly).collect();
    for (i, qi) in factors.iter().enumerate() {
        for qj in factors.iter().skip(i + 1) {
            let r = qi.resultant(qj);
            primes_of_element(&r, &mut collision);
        }
        if qi.deg() >= 2 {
            primes_of_element(&qi.discriminant(), &mut collision);
        }
        if crit.infinity_critical {
            // a finite branch point meets infinity at primes dividing its
            // denominators (the factors are monic)
            for k in 0..=qi.deg() {
                let c = qi.coeff(k);
                if !c.is_zero() {
                    let (u, v) = omega_coords(&c, field);
                    primes_of_int(u.denom(), &mut collision);
                    primes_of_int(v.denom(), &mut collision);
                }
            }
        }
    }
    let mut definition_field = BTreeSet::new();
    for qi in &factors {
        if qi.deg() >= 2 {
            primes_of_element(&qi.discriminant(), &mut definition_field);
        }
    }
    let mut all: BTreeSet<u64> = BTreeSet::new();
    all.extend(&vertical);
    all.extend(&collision);
    all.extend(&definition_field);
    primes_of_int(&int(field.discriminant()), &mut all);
    BadSet { vertical, collision, definition_field, all }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredictVerdict {
    Ramified,
    Unramified,
    NeedsOracle,
}

impl PredictVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PredictVerdict::Ramified => "ramified",
            PredictVerdict::Unramified => "unramified",
            PredictVerdict::NeedsOracle => "needs_oracle",
        }
    }
}

/// The witness critical value of a prediction: an index into the Delta
/// factors or infinity, with `k = v(tau - alpha)` (`None` when `tau` hits
/// the critical value exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `None` encodes the critical value at infinity
    pub factor_index: Option<usize>,
    pub k: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub verdict: PredictVerdict,
    pub witness: Option<Witness>,
    /// `v(Delta(tau))`; `None` when `Delta(tau) = 0`
    pub val_delta: Option<i64>,
    pub val_tau: i64,
}

/// Predicts whether `v` ramifies in the fiber field of `tau` from the
/// geometric data alone (valid for `v` outside the bad set).
pub fn predict(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    tau: &FieldElement,
    place: &PrimePlace,
) -> Result<Prediction, RamError> {
    if !tau.is_integral_in(cover.field()) {
        return Err(RamError::NonIntegralTau);
    }
    if bad.contains(place.p) {
        return Err(RamError::BadPlace(place.p));
    }
    let val_tau = if tau.is_zero() { 0 } else { place.valuation(tau) };
    let delta_at = crit.delta.eval(tau);
    let val_delta = if delta_at.is_zero() { None } else { Some(place.valuation(&delta_at)) };
    let mut witness: Option<(usize, Option<i64>)> = None;
    for (i, f) in crit.factors.iter().enumerate() {
        let qt = f.poly.eval(tau);
        let k = if qt.is_zero() {
            None // tau is this critical value
        } else {
            let v = place.valuation(&qt);
            if v <= 0 {
                continue;
            }
            Some(v)
        };
        if witness.is_some() {
            return Err(RamError::WitnessNotUnique(place.p));
        }
        witness = Some((i, k));
    }
    let inf_witness = crit.infinity_critical && val_tau < 0;
    match (witness, inf_witness) {
        (None, false) => Ok(Prediction {
            verdict: PredictVerdict::Unramified,
            witness: None,
            val_delta,
            val_tau,
        }),
        (Some(_), true) => Err(RamError::WitnessNotUnique(place.p)),
        (Some((i, k)), false) => {
            let f = &crit.factors[i];
            let verdict = match (k, &f.profile) {
                (None, _) => PredictVerdict::NeedsOracle,
                (Some(k), Some(profile)) => {
                    if profile.iter().any(|&e| k % e as i64 != 0) {
                        PredictVerdict::Ramified
                    } else {
                        PredictVerdict::Unramified
                    }
                }
                (Some(1), None) if f.certified => PredictVerdict::Ramified,
                (Some(_), None) => PredictVerdict::NeedsOracle,
            };
            Ok(Prediction {
                verdict,
                witness: Some(Witness { factor_index: Some(i), k }),
                val_delta,
                val_tau,
            })
        }
        (None, true) => {
            let k = -val_tau;
            let verdict = match &crit.infinity_profile {
                Some(profile) => {
                    if profile.iter().any(|&e| k % e as i64 != 0) {
                        PredictVerdict::Ramified
                    } else {
                        PredictVerdict::Unramified
                    }
                }
                None if k == 1 && crit.infinity_certified => PredictVerdict::Ramified,
                None => PredictVerdict::NeedsOracle,
            };
            Ok(Prediction {
                verdict,
                witness: Some(Witness { factor_index: None, k: Some(k) }),
                val_delta,
                val_tau,
            })
        }
    }
}

/// Oracle verdicts (with flags) for every candidate place of norm at most
/// `max_norm` on the fiber over a non-critical `tau`.
#[derive(Clone, Debug)]
pub struct FiberRamification {
    pub ramified: Vec<PrimePlace>,
    pub undetermined: Vec<PrimePlace>,
    pub verdicts: Vec<(PrimePlace, OracleVerdict)>,
}

pub fn ramified_places_of_fiber(
    cover: &PlaneCover,
    crit: &CriticalData,
    tau: &FieldElement,
    max_norm: u64,
) -> Result<FiberRamification, RamError> {
    if crit.delta.eval(tau).is_zero() {
        return Err(RamError::CriticalFiber);
    }
    let factors = fiber_factors(cover, tau);
    let places = places_up_to(cover.field(), max_norm);
    let mut out = FiberRamification { ramified: vec![], undetermined: vec![], verdicts: vec![] };
    for place in places {
        let status = fiber_status_at(&factors, &place, &mut out.verdicts);
        match status {
            RamStatus::Ramified => out.ramified.push(place),
            RamStatus::Undetermined => out.undetermined.push(place),
            RamStatus::Unramified => {}
        }
    }
    Ok(out)
}

/// Irreducible factors (degree >= 2) of the fiber over `tau`, with the
/// reversed-fiber factors included when the fiber degree drops (points at
/// u = infinity).
pub fn fiber_factors(cover: &PlaneCover, tau: &FieldElement) -> Vec<KPoly> {
    let f = cover.fiber_poly(tau);
    assert!(!f.is_zero(), "content-free model has nonzero fibers");
    let mut polys = vec![f.clone()];
    if f.degree() != Some(cover.degree()) {
        let rev = cover.model().reverse_u().fiber(tau);
        if !rev.is_zero() && !rev.is_constant() {
            polys.push(rev);
        }
    }
    let mut out: Vec<KPoly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let (_, fs) = crate::poly::kfactor::factor_over_k(&p, cover.field());
        for (g, _) in fs {
            if g.deg() >= 2 && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

/// Combined oracle status of a place over the fiber factors: ramified if
/// some factor is ramified; undetermined verdicts are never dropped.
fn fiber_status_at(
    factors: &[KPoly],
    place: &PrimePlace,
    log: &mut Vec<(PrimePlace, OracleVerdict)>,
) -> RamStatus {
    let mut saw_undetermined = false;
    for g in factors {
        if oracle_can_skip(g, place) {
            continue;
        }
        let verdict = local_ramified_oracle(g, place);
        log.push((place.clone(), verdict.clone()));
        match verdict.status {
            RamStatus::Ramified => return RamStatus::Ramified,
            RamStatus::Undetermined => saw_undetermined = true,
            RamStatus::Unramified => {}
        }
    }
    if saw_undetermined {
        RamStatus::Undetermined
    } else {
        RamStatus::Unramified
    }
}

/// Cheap sufficient test for "unramified at v": v-integral coefficients,
/// unit leading coefficient, unit discriminant.
fn oracle_can_skip(g: &KPoly, place: &PrimePlace) -> bool {
    for k in 0..=g.deg() {
        let c = g.coeff(k);
        if !c.is_zero() && place.valuation(&c) < 0 {
            return false;
        }
    }
    if place.valuation(&g.lc()) != 0 {
        return false;
    }
    let disc = g.discriminant();
    !disc.is_zero() && place.valuation(&disc) == 0
}

/// Ramification status of the fiber field of `tau` at one place, defined
/// for every integral `tau` (critical values included).
pub fn fiber_ramified_at(cover: &PlaneCover, tau: &FieldElement, place: &PrimePlace) -> RamStatus {
    let factors = fiber_factors(cover, tau);
    let mut log = Vec::new();
    fiber_status_at(&factors, place, &mut log)
}

/// One row of the prediction-vs-oracle comparison.
#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub tau: FieldElement,
    pub place: PrimePlace,
    pub prediction: PredictVerdict,
    pub witness: Option<Witness>,
    pub oracle: RamStatus,
    /// false only for determinate disagreement
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub mismatches: usize,
    pub skipped_critical: usize,
    pub needs_oracle: usize,
    pub undetermined: usize,
}

/// Compares the prediction against the oracle over every pair `(tau, v)`
/// with `v` outside `S` of norm at most `max_norm`. The contract is a
/// mismatch count of zero.
pub fn cross_validate(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    taus: &[FieldElement],
    max_norm: u64,
) -> VerifyReport {
    let places: Vec<PrimePlace> = places_up_to(cover.field(), max_norm)
        .into_iter()
        .filter(|v| !bad.contains(v.p))
        .collect();
    let mut report = VerifyReport {
        rows: vec![],
        mismatches: 0,
        skipped_critical: 0,
        needs_oracle: 0,
        undetermined: 0,
    };
    for tau in taus {
        if crit.delta.eval(tau).is_zero() {
            report.skipped_critical += 1;
            continue;
        }
        let factors = fiber_factors(cover, tau);
        for place in &places {
            let pred = predict(cover, crit, bad, tau, place)
                .expect("places outside S admit predictions");
            let mut log = Vec::new();
            let oracle = fiber_status_at(&factors, place, &mut log);
            if pred.verdict == PredictVerdict::NeedsOracle {
                report.needs_oracle += 1;
            }
            if oracle == RamStatus::Undetermined {
                report.undetermined += 1;
            }
            let agree = !matches!(
                (pred.verdict, oracle),
                (PredictVerdict::Ramified, RamStatus::Unramified)
                    | (PredictVerdict::Unramified, RamStatus::Ramified)
            );
            if !agree {
                report.mismatches += 1;
            }
            report.rows.push(VerifyRow {
                tau: tau.clone(),
                place: place.clone(),
                prediction: pred.verdict,
                witness: pred.witness,
                oracle,
                agree,
            });
        }
    }
    report
}

/// The pinned constant for the few-large-ramified-places property: with
/// `Delta = T^m + c_{m-1} T^{m-1} + ... + c_0`, take
/// `kappa = (1 + sum size(c_i)) * den` where `den` clears the coefficient
/// denominators; then `|N(den * Delta(tau))| <= (kappa * max(1, size tau)^m)^d`
/// and the counting argument pins the threshold `kappa * eps^-(m+1)`.
pub fn prop83_kappa(cover: &PlaneCover, crit: &CriticalData) -> SizeValue {
    let field = cover.field();
    let mut s = SizeValue::from_rat(Rat::one());
    let mut den = Int::one();
    for k in 0..crit.delta.deg() {
        let c = crit.delta.coeff(k);
        if c.is_zero() {
            continue;
        }
        s = s.add(&size(&c));
        let (u, v) = omega_coords(&c, field);
        den = den.lcm(u.denom()).lcm(v.denom());
    }
    s.scale(&Rat::from_integer(den))
}

#[derive(Clone, Debug)]
pub struct Prop83Violation {
    pub tau: FieldElement,
    pub count: usize,
    pub places: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct Prop83Report {
    pub eps: Rat,
    pub threshold: SizeValue,
    pub m: usize,
    pub taus_tested: usize,
    pub violations: Vec<Prop83Violation>,
}

/// Exhaustively checks over all integral `tau` of size at most `bound`
/// past the threshold: no more than `m` determinate-ramified places
/// outside `S` with `Nv >= (eps * size tau)^d`.
pub fn prop83_check(
    cover: &PlaneCover,
    crit: &CriticalData,
    bad: &BadSet,
    bound: &Rat,
    eps: &Rat,
) -> Prop83Report {
    let m = crit.delta.deg();
    let d = cover.field().degree();
    let kappa = prop83_kappa(cover, crit);
    let eps_pow = (0..m + 1).fold(Rat::one(), |acc, _| acc * eps);
    let threshold = kappa.scale(&(Rat::one() / eps_pow));
    let mut report = Prop83Report {
        eps: eps.clone(),
        threshold: threshold.clone(),
        m,
        taus_tested: 0,
        violations: vec![],
    };
    for tau in crate::field::enumerate_integers(cover.field(), bound) {
        if size(&tau) < threshold {
            continue;
        }
        if crit.delta.eval(&tau).is_zero() {
            continue;
        }
        report.taus_tested += 1;
        let cut_sq = size(&tau).scale(eps).square();
        let big_places = large_ramified_places(cover, &tau, bad, &cut_sq, d);
        if big_places.len() > m {
            report.violations.push(Prop83Violation {
                tau: tau.clone(),
                count: big_places.len(),
                places: big_places,
            });
        }
    }
    report
}

/// Determinate-ramified rational primes on the fiber with a place of norm
/// `Nv` satisfying `Nv^2 >= cut_sq^d`, outside the bad set, found by
/// factoring fiber discriminants.
fn large_ramified_places(
    cover: &PlaneCover,
    tau: &FieldElement,
    bad: &BadSet,
    cut_sq: &Surd,
    d: u32,
) -> Vec<u64> {
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for g in fiber_factors(cover, tau) {
        primes_of_element(&g.discriminant(), &mut candidates);
        primes_of_element(&g.lc(), &mut candidates);
    }
    let mut out = Vec::new();
    for p in candidates {
        if bad.contains(p) {
            continue;
        }
        for place in prime_splitting(p, cover.field()) {
            let nv = Rat::from_integer(place.norm());
            let lhs = Surd::from_rat(&nv * &nv);
            let rhs = (0..d).fold(Surd::from_int(1), |acc, _| acc * cut_sq.clone());
            if lhs.cmp_surd(&rhs) == std::cmp::Ordering::Less {
                continue;
            }
            if fiber_ramified_at(cover, tau, &place) == RamStatus::Ramified && !out.contains(&p)
            {
                out.push(p);
            }
        }
    }
    out
}

/// Convenience wrapper: critical data plus bad set.
pub fn analyze(cover: &PlaneCover) -> Result<(CriticalData, BadSet), RamError> {
    let crit = critical_polynomial(cover)?;
    let bad = compute_bad_set(cover, &crit);
    Ok((crit, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
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

    fn u2_minus_t() -> PlaneCover {
        let f = BiPoly::new(vec![tpoly(&[0, -1]), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(0)).unwrap()
    }

    fn legendre(num: i64, den: i64) -> PlaneCover {
        use crate::rat::ratio;
        let lam = KPoly::constant(FieldElement::from_rat(ratio(num, den)));
        let g = tpoly(&[0, 1]) * tpoly(&[-1, 1]) * (tpoly(&[0, 1]) - lam);
        let f = BiPoly::new(vec![g.scale(&c(-1)), KPoly::zero(), KPoly::one()]);
        PlaneCover::new(q(), f, Some(1)).unwrap()
    }

    fn qplace(p: u64) -> PrimePlace {
        prime_splitting(p, &q()).pop().unwrap()
    }

    #[test]
    fn bad_sets() {
        let (_, bad) = analyze(&legendre(3, 1)).unwrap();
        let expect: BTreeSet<u64> = [2, 3].into_iter().collect();
        assert_eq!(bad.all, expect);
        let (_, bad) = analyze(&legendre(5, 3)).unwrap();
        let expect: BTreeSet<u64> = [2, 3, 5].into_iter().collect();
        assert_eq!(bad.all, expect);
        let (_, bad) = analyze(&u2_minus_t()).unwrap();
        let expect: BTreeSet<u64> = [2].into_iter().collect();
        assert_eq!(bad.all, expect);
    }

    #[test]
    fn predict_legendre_examples() {
        let cov = legendre(3, 1);
        let (crit, bad) = analyze(&cov).unwrap();
        let v5 = qplace(5);
        let p = predict(&cov, &crit, &bad, &c(5), &v5).unwrap();
        assert_eq!(p.verdict, PredictVerdict::Ramified);
        let w = p.witness.unwrap();
        assert_eq!(w.k, Some(1));
        assert_eq!(crit.factors[w.factor_index.unwrap()].poly, tpoly(&[0, 1]));
        let p = predict(&cov, &crit, &bad, &c(25), &v5).unwrap();
        assert_eq!(p.verdict, PredictVerdict::Unramified);
        assert_eq!(p.witness.unwrap().k, Some(2));
        let p = predict(&cov, &crit, &bad, &c(7), &v5).unwrap();
        assert_eq!(p.verdict, PredictVerdict::Unramified);
        assert!(p.witness.is_none());
        assert_eq!(p.val_delta, Some(0));
        assert!(matches!(
            predict(&cov, &crit, &bad, &c(5), &qplace(2)),
            Err(RamError::BadPlace(2))
        ));
    }

    #[test]
    fn fiber_oracle_examples() {
        let cov = u2_minus_t();
        let (crit, _) = analyze(&cov).unwrap();
        // tau = 12: Q(sqrt 12) = Q(sqrt 3): disc 12
        let fr = ramified_places_of_fiber(&cov, &crit, &c(12), 100).unwrap();
        let ps: Vec<u64> = fr.ramified.iter().map(|v| v.p).collect();
        assert_eq!(ps, vec![2, 3]);
        assert!(fr.undetermined.is_empty());
        let fr = ramified_places_of_fiber(&cov, &crit, &c(1), 100).unwrap();
        assert!(fr.ramified.is_empty());
        assert!(matches!(
            ramified_places_of_fiber(&cov, &crit, &c(0), 100),
            Err(RamError::CriticalFiber)
        ));
        let leg = legendre(3, 1);
        let (crit, _) = analyze(&leg).unwrap();
        // tau = 5: fiber field Q(sqrt 40) = Q(sqrt 10), disc 40
        let fr = ramified_places_of_fiber(&leg, &crit, &c(5), 100).unwrap();
        let ps: Vec<u64> = fr.ramified.iter().map(|v| v.p).collect();
        assert_eq!(ps, vec![2, 5]);
    }

    #[test]
    fn cross_validate_u2_small() {
        let cov = u2_minus_t();
        let (crit, bad) = analyze(&cov).unwrap();
        let taus: Vec<FieldElement> = (-30..=30).map(c).collect();
        let rep = cross_validate(&cov, &crit, &bad, &taus, 50);
        assert_eq!(rep.mismatches, 0, "determinate mismatch found");
        assert_eq!(rep.skipped_critical, 1); // tau = 0
        for row in &rep.rows {
            if row.prediction == PredictVerdict::Ramified {
                let tau = row.tau.as_rat().unwrap().to_integer();
                let v = crate::rat::val_int(&int(row.place.p as i64), &tau.abs());
                assert_eq!(v % 2, 1, "tau={} p={}", tau, row.place.p);
            }
        }
    }

    #[test]
    fn cross_validate_legendre_sample() {
        let cov = legendre(3, 1);
        let (crit, bad) = analyze(&cov).unwrap();
        let taus: Vec<FieldElement> = (-12..=12).map(c).collect();
        let rep = cross_validate(&cov, &crit, &bad, &taus, 30);
        assert_eq!(rep.mismatches, 0);
    }

    #[test]
    fn witness_uniqueness_outside_s() {
        let cov = legendre(3, 1);
        let (crit, bad) = analyze(&cov).unwrap();
        for t in -40i64..=40 {
            for p in [5u64, 7, 11, 13, 17, 19, 23] {
                let place = qplace(p);
                assert!(predict(&cov, &crit, &bad, &c(t), &place).is_ok(), "tau={} p={}", t, p);
            }
        }
    }

    #[test]
    fn prediction_monotone_in_s() {
        // enlarging S never flips a verdict rendered outside it
        let cov = u2_minus_t();
        let (crit, bad) = analyze(&cov).unwrap();
        let mut bigger = bad.clone();
        bigger.all.insert(7);
        let v11 = qplace(11);
        let a = predict(&cov, &crit, &bad, &c(22), &v11).unwrap();
        let b = predict(&cov, &crit, &bigger, &c(22), &v11).unwrap();
        assert_eq!(a, b);
        assert!(predict(&cov, &crit, &bigger, &c(22), &qplace(7)).is_err());
    }

    #[test]
    fn prop83_small_run() {
        let cov = u2_minus_t();
        let (crit, bad) = analyze(&cov).unwrap();
        let rep = prop83_check(&cov, &crit, &bad, &rat(60), &crate::rat::ratio(1, 2));
        assert!(rep.violations.is_empty());
        assert!(rep.taus_tested > 0);
        assert_eq!(rep.m, 1);
    }

    #[test]
    fn oracle_agrees_when_all_e_divide_k() {
        // Remark A.3 direction: a witness with all e | k means unramified,
        // and the oracle concurs
        let cov = u2_minus_t();
        let (crit, bad) = analyze(&cov).unwrap();
        for (t, p) in [(25i64, 5u64), (49, 7), (9, 3), (121, 11)] {
            let place = qplace(p);
            let pred = predict(&cov, &crit, &bad, &c(t), &place).unwrap();
            assert_eq!(pred.verdict, PredictVerdict::Unramified);
            assert_eq!(pred.witness.unwrap().k, Some(2));
            assert_eq!(fiber_ramified_at(&cov, &c(t), &place), RamStatus::Unramified);
        }
    }
}
