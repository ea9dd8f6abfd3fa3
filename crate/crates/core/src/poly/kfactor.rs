//! Factorization over the base field `K`: over `Q` directly, over a
//! quadratic field by Trager's norm method (shift by `s*sqrt(d)`, factor
//! the norm over `Q`, pull factors back with gcds over `K`).


use crate::field::{FieldElement, FieldKind, NumberField};
use crate::poly::zfactor::{self, QPoly};
use crate::poly::Poly;
use crate::rat::{int, Rat};

pub type KPoly = Poly<FieldElement>;

pub fn kpoly_from_q(f: &QPoly) -> KPoly {
    f.map(|c| FieldElement::from_rat(c.clone()))
}

pub fn qpoly_from_k(f: &KPoly) -> QPoly {
    f.map(|c| c.as_rat().expect("rational coefficients").clone())
}

/// The conjugate polynomial (sqrt(d) -> -sqrt(d) on coefficients).
pub fn conj_poly(f: &KPoly) -> KPoly {
    f.map(|c| c.conj())
}

/// Splits `f` into `A + B*sqrt(d)` with rational `A`, `B`.
fn split_parts(f: &KPoly) -> (QPoly, QPoly) {
    let a = f.map(|c| c.a().clone());
    let b = f.map(|c| c.b().clone());
    (a, b)
}

/// Full factorization over `K`: `(content, [(monic irreducible, mult)])`
/// with `content * prod f_i^(m_i) = f`.
pub fn factor_over_k(f: &KPoly, field: &NumberField) -> (FieldElement, Vec<(KPoly, u32)>) {
    assert!(!f.is_zero());
    if field.kind() == FieldKind::Rational {
        let (c, fs) = zfactor::factor_over_q(&qpoly_from_k(f));
        return (
            FieldElement::from_rat(c),
            fs.into_iter().map(|(g, m)| (kpoly_from_q(&g), m)).collect(),
        );
    }
    let content = f.lc();
    if f.is_constant() {
        return (content, vec![]);
    }
    let mut out: Vec<(KPoly, u32)> = Vec::new();
    for (part, mult) in f.yun() {
        for g in trager_squarefree(&part, field) {
            out.push((g, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| cmp_kcoeffs(a, b))
            .then_with(|| ma.cmp(mb))
    });
    (content, out)
}

fn cmp_kcoeffs(a: &KPoly, b: &KPoly) -> std::cmp::Ordering {
    for k in 0..=a.deg().max(b.deg()) {
        let (ca, cb) = (a.coeff(k), b.coeff(k));
        let o = ca.a().cmp(cb.a()).then_with(|| ca.b().cmp(cb.b()));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Trager: factor a monic squarefree polynomial over a quadratic field.
fn trager_squarefree(f: &KPoly, field: &NumberField) -> Vec<KPoly> {
    assert!(field.kind() == FieldKind::Quadratic);
    let n = f.deg();
    if n == 1 {
        return vec![f.monic()];
    }
    let sqrt_d = field.sqrt_d();
    for s in 0i64..40 {
        let shift = FieldElement::from_int(s) * sqrt_d.clone();
        let fs = f.shift(&shift);
        let (a, b) = split_parts(&fs);
        // Norm(fs) = A^2 - d B^2
        let norm = a.clone() * a.clone()
            - QPoly::constant(Rat::from_integer(int(field.d()))) * b.clone() * b.clone();
        if !norm.gcd(&norm.derivative()).is_constant() {
            continue;
        }
        let (_, factors) = zfactor::factor_over_q(&norm);
        let mut out = Vec::new();
        for (h, m) in factors {
            debug_assert_eq!(m, 1);
            let hk = kpoly_from_q(&h);
            let g = fs.gcd(&hk);
            if g.deg() >= 1 {
                out.push(g.shift(&-shift.clone()).monic());
            }
        }
        let total: usize = out.iter().map(|g| g.deg()).sum();
        assert_eq!(total, n, "Trager factors must cover the degree");
        return out;
    }
    unreachable!("no Trager shift with squarefree norm found");
}

/// True iff `f` is irreducible over `K` (degree >= 1).
pub fn is_irreducible_k(f: &KPoly, field: &NumberField) -> bool {
    if f.degree().unwrap_or(0) < 1 {
        return false;
    }
    let (_, factors) = factor_over_k(f, field);
    factors.len() == 1 && factors[0].1 == 1
}

/// Roots of `f` in `K`, via linear factors.
pub fn roots_in_k(f: &KPoly, field: &NumberField) -> Vec<FieldElement> {
    let (_, factors) = factor_over_k(f, field);
    let mut out = Vec::new();
    for (g, _) in factors {
        if g.deg() == 1 {
            out.push(-(g.coeff(0) / g.coeff(1)));
        }
    }
    out.sort_by(crate::field::n_ordering_cmp);
    out
}
