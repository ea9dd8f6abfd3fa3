//! Factorization over `Q`: Yun squarefree split, then Zassenhaus per part
//! (good prime, Berlekamp mod p, Hensel lifting, subset recombination).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::modp::ModPoly;
use crate::poly::Poly;
use crate::rat::{int, Int, Rat};

pub type QPoly = Poly<Rat>;
type ZP = Vec<Int>;

fn zp_deg(f: &ZP) -> usize {
    f.len() - 1
}

fn zp_normalize(mut f: ZP) -> ZP {
    while f.last().map(|x| x.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

fn zp_mul(a: &ZP, b: &ZP) -> ZP {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic divisor over Z; returns None if not exact.
fn zp_div_exact_monic(f: &ZP, d: &ZP) -> Option<ZP> {
    assert!(d.last().map(|x| x.is_one()).unwrap_or(false), "divisor must be monic");
    if f.len() < d.len() {
        return None;
    }
    let mut rem = f.clone();
    let dd = zp_deg(d);
    let mut quo = vec![Int::zero(); rem.len() - dd];
    while rem.len() >= d.len() {
        let k = rem.len() - 1;
        let q = rem[k].clone();
        quo[k - dd] = q.clone();
        for (i, dc) in d.iter().enumerate() {
            let idx = k - dd + i;
            rem[idx] -= &q * dc;
        }
        rem.pop();
        while rem.last().map(|x| x.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() < d.len() {
            break;
        }
    }
    if rem.is_empty() {
        Some(quo)
    } else {
        None
    }
}

fn zp_content(f: &ZP) -> Int {
    let mut g = Int::zero();
    for c in f {
        g = g.gcd(c);
    }
    g
}

fn zp_primitive(f: &ZP) -> ZP {
    let mut g = zp_content(f);
    if g.is_zero() {
        return f.clone();
    }
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

/// Symmetric representative in (-m/2, m/2].
fn sym_mod(x: &Int, m: &Int) -> Int {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Linear Hensel lift of a coprime monic pair `f = g*h mod p` to mod
/// `p^steps`.
fn hensel_pair(f: &ZP, g0: &ModPoly, h0: &ModPoly, p: u64, steps: u32) -> (ZP, ZP) {
    let pi = int(p as i64);
    // Bezout: s g0 + t h0 = 1 over F_p.
    let (gg, s, t) = modpoly_ext_gcd(g0, h0);
    assert_eq!(gg.deg(), 0, "lift factors must be coprime");
    let ginv = crate::poly::modp::inv_mod(gg.lc(), p);
    let s = s.scale(ginv);
    let t = t.scale(ginv);
    let mut g: ZP = g0.coeffs().iter().map(|&c| int(c as i64)).collect();
    let mut h: ZP = h0.coeffs().iter().map(|&c| int(c as i64)).collect();
    let mut modulus = pi.clone();
    for _ in 1..steps {
        // e = (f - g h) / modulus mod p
        let mut diff = f.clone();
        let gh = zp_mul(&g, &h);
        for (i, c) in gh.iter().enumerate() {
            while diff.len() <= i {
                diff.push(Int::zero());
            }
            diff[i] -= c;
        }
        let e_int: ZP = diff.iter().map(|c| c / &modulus).collect();
        let e = ModPoly::from_int_coeffs(p, &e_int);
        // dg = (t e) rem g0 ; dh = s e + ((t e) div g0) h0
        let (q, dg) = e.mul(&t).divrem(g0);
        let dh = e.mul(&s).add(&q.mul(h0));
        for (i, &c) in dg.coeffs().iter().enumerate() {
            g[i] += &modulus * int(c as i64);
        }
        for (i, &c) in dh.coeffs().iter().enumerate() {
            h[i] += &modulus * int(c as i64);
        }
        modulus *= &pi;
        debug_assert!({
            let gh = zp_mul(&g, &h);
            f.iter()
                .zip(gh.iter().chain(std::iter::repeat(&Int::zero())))
                .all(|(a, b)| ((a - b) % &modulus).is_zero())
        });
    }
    (zp_normalize(g), zp_normalize(h))
}

fn modpoly_ext_gcd(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
    let p = a.p;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::constant(p, 1), ModPoly::zero(p));
    let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::constant(p, 1));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
        (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
    }
    (r0, s0, t0)
}

/// Lifts the complete factorization `f = prod factors mod p` (f monic) to
/// mod `p^steps` by a balanced tree of pair lifts.
fn hensel_tree(f: &ZP, factors: &[ModPoly], p: u64, steps: u32) -> Vec<ZP> {
    if factors.len() == 1 {
        let pk = int(p as i64).pow(steps);
        return vec![zp_normalize(f.iter().map(|c| c.mod_floor(&pk)).collect())];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let gl = left.iter().fold(ModPoly::constant(p, 1), |a, b| a.mul(b));
    let gr = right.iter().fold(ModPoly::constant(p, 1), |a, b| a.mul(b));
    let (fl, fr) = hensel_pair(f, &gl, &gr, p, steps);
    let mut out = hensel_tree(&fl, left, p, steps);
    out.extend(hensel_tree(&fr, right, p, steps));
    out
}

/// Zassenhaus on a primitive squarefree polynomial over Z with positive
/// leading coefficient; returns primitive irreducible factors.
fn factor_squarefree_z(f: &ZP) -> Vec<ZP> {
    let n = zp_deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let l = f.last().unwrap().clone();
    assert!(l.is_positive(), "factor_squarefree_z wants a positive leading coefficient");
    // Monic transform fm(y) = l^(n-1) f(y/l): coefficient of y^i is
    // f_i * l^(n-1-i), and the leading one is f_n / l = 1.
    let fm: ZP = f
        .iter()
        .enumerate()
        .map(|(i, c)| if i == n { Int::one() } else { c * l.pow((n - 1 - i) as u32) })
        .collect();
    debug_assert!(fm.last().unwrap().is_one() || n == 0);
    // Good prime: smallest p not dividing l with fm squarefree mod p.
    let mut p = 2u64;
    let fp = loop {
        let pi = int(p as i64);
        if !(&l % &pi).is_zero() {
            let fp = ModPoly::from_int_coeffs(p, &fm);
            if fp.degree() == Some(n) && fp.is_squarefree() {
                break fp;
            }
        }
        p = next_prime(p);
    };
    let factors_p = fp.factor_squarefree();
    if factors_p.len() == 1 {
        return vec![zp_primitive(f)];
    }
    // Mignotte-style bound for monic factors of fm.
    let height = fm.iter().map(|c| c.abs()).max().unwrap();
    let bound = int(2).pow(n as u32) * int(n as i64 + 1) * height;
    let mut steps = 1u32;
    let mut pk = int(p as i64);
    let two_bound = int(2) * &bound + 1;
    while pk < two_bound {
        pk *= int(p as i64);
        steps += 1;
    }
    let lifted = hensel_tree(&fm, &factors_p, p, steps);
    // Subset recombination in the monic world.
    let mut pool: Vec<ZP> = lifted;
    let mut fm_rem = fm;
    let mut monic_factors: Vec<ZP> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = true;
        while found && 2 * size <= pool.len() {
            found = false;
            let idxs = subsets(pool.len(), size);
            for subset in idxs {
                let mut prod = vec![Int::one()];
                for &i in &subset {
                    prod = zp_mul(&prod, &pool[i]);
                    for c in &mut prod {
                        *c = c.mod_floor(&pk);
                    }
                }
                let cand: ZP = zp_normalize(prod.iter().map(|c| sym_mod(c, &pk)).collect());
                if let Some(q) = zp_div_exact_monic(&fm_rem, &cand) {
                    monic_factors.push(cand);
                    fm_rem = q;
                    let mut keep = Vec::new();
                    for (i, g) in pool.drain(..).enumerate() {
                        if !subset.contains(&i) {
                            keep.push(g);
                        }
                    }
                    pool = keep;
                    found = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if zp_deg(&fm_rem) > 0 {
        monic_factors.push(fm_rem);
    }
    // Map back: g(x) = primitive part of g_monic(l x).
    monic_factors
        .into_iter()
        .map(|g| {
            let mapped: ZP = g.iter().enumerate().map(|(i, c)| c * l.pow(i as u32)).collect();
            zp_primitive(&mapped)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if crate::intfact::is_prime(&int(q as i64)) {
            return q;
        }
        q += 1;
    }
}

/// Full factorization over `Q`: content and monic irreducible factors with
/// multiplicities. The product `content * prod f_i^{m_i}` equals the input.
pub fn factor_over_q(f: &QPoly) -> (Rat, Vec<(QPoly, u32)>) {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let content = f.lc();
    if f.is_constant() {
        return (content, vec![]);
    }
    let mut out: Vec<(QPoly, u32)> = Vec::new();
    for (part, mult) in f.yun() {
        // clear denominators -> primitive integer polynomial
        let den = part.coeffs().iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let zp: ZP = part
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let zp = zp_primitive(&zp);
        for g in factor_squarefree_z(&zp) {
            let qp = QPoly::new(g.iter().map(|c| Rat::from_integer(c.clone())).collect());
            out.push((qp.monic(), mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| cmp_coeffs(a, b))
            .then_with(|| ma.cmp(mb))
    });
    (content, out)
}

fn cmp_coeffs(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    for k in 0..=a.deg().max(b.deg()) {
        let o = a.coeff(k).cmp(&b.coeff(k));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Convenience: the rational roots of `f`, from its linear factors.
pub fn rational_roots(f: &QPoly) -> Vec<Rat> {
    let (_, factors) = factor_over_q(f);
    let mut out = Vec::new();
    for (g, _) in factors {
        if g.deg() == 1 {
            out.push(-g.coeff(0) / g.coeff(1));
        }
    }
    out.sort();
    out
}

/// True iff `f` is irreducible over `Q` (degree >= 1).
pub fn is_irreducible_q(f: &QPoly) -> bool {
    if f.degree().unwrap_or(0) < 1 {
        return false;
    }
    let (_, factors) = factor_over_q(f);
    factors.len() == 1 && factors[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn check_product(f: &QPoly) {
        let (c, fs) = factor_over_q(f);
        let mut prod = QPoly::constant(c);
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = prod * g.clone();
            }
        }
        assert_eq!(&prod, f, "factor product mismatch for {:?}", f);
    }

    #[test]
    fn simple_factorizations() {
        // x^2 - 1 = (x-1)(x+1)
        let (_, fs) = factor_over_q(&p(&[-1, 0, 1]));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, p(&[-1, 1]));
        assert_eq!(fs[1].0, p(&[1, 1]));
        check_product(&p(&[-1, 0, 1]));
    }

    #[test]
    fn x4_plus_1_irreducible() {
        let f = p(&[1, 0, 0, 0, 1]);
        assert!(is_irreducible_q(&f));
        check_product(&f);
    }

    #[test]
    fn cubic_with_multiplicity() {
        // x^3 - 3x - 2 = (x-2)(x+1)^2
        let f = p(&[-2, -3, 0, 1]);
        let (_, fs) = factor_over_q(&f);
        assert_eq!(fs, vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 2)]);
        check_product(&f);
    }

    #[test]
    fn non_monic_and_rational() {
        // 6x^2 + x - 1 = (2x + 1)(3x - 1), monic: (x + 1/2)(x - 1/3) * 6
        let f = p(&[-1, 1, 6]);
        check_product(&f);
        let (c, fs) = factor_over_q(&f);
        assert_eq!(c, rat(6));
        assert_eq!(fs.len(), 2);
        assert_eq!(rational_roots(&f), vec![crate::rat::ratio(-1, 2), crate::rat::ratio(1, 3)]);
    }

    #[test]
    fn larger_products() {
        // (x^2+x+1)(x^2-2)(x+3)^2 x
        let f = p(&[1, 1, 1]) * p(&[-2, 0, 1]) * p(&[3, 1]) * p(&[3, 1]) * p(&[0, 1]);
        check_product(&f);
        let (_, fs) = factor_over_q(&f);
        let degs: Vec<(usize, u32)> = fs.iter().map(|(g, m)| (g.deg(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (2, 1), (2, 1)]);
    }

    #[test]
    fn cyclotomic_like() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let (_, fs) = factor_over_q(&f);
        assert_eq!(fs.len(), 4);
        check_product(&f);
        // swinnerton-dyer style: minpoly of sqrt2 + sqrt3
        let g = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible_q(&g));
    }
}
