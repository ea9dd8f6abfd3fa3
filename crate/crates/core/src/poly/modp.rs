//! Dense polynomials over `F_p` for word-sized `p`, with deterministic
//! Berlekamp factorization (small-prime variant: the splitting loop runs
//! over kernel basis vectors and all shifts `c` in `F_p`).

use num_traits::{Signed, ToPrimitive};

use crate::rat::{int, Int};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_int_coeffs(p: u64, coeffs: &[Int]) -> Self {
        let pi = int(p as i64);
        let c = coeffs
            .iter()
            .map(|x| {
                let mut r = x % &pi;
                if r.is_negative() {
                    r += &pi;
                }
                r.to_u64().unwrap()
            })
            .collect();
        ModPoly::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: vec![] }
    }

    pub fn constant(p: u64, v: u64) -> Self {
        ModPoly::new(p, vec![v])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        if self.c.is_empty() {
            0
        } else {
            self.c.len() - 1
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().expect("lc of zero")
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push((self.coeff(k) + o.coeff(k)) % self.p);
        }
        ModPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push((self.p + self.coeff(k) - o.coeff(k)) % self.p);
        }
        ModPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        ModPoly::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> ModPoly {
        ModPoly::new(self.p, self.c.iter().map(|&a| self.mulmod(a, s)).collect())
    }

    pub fn monic(&self) -> ModPoly {
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero());
        if self.c.len() < d.c.len() {
            return (ModPoly::zero(self.p), self.clone());
        }
        let lcinv = inv_mod(d.lc(), self.p);
        let mut rem = self.c.clone();
        let dd = d.deg();
        let mut quo = vec![0u64; rem.len() - dd];
        while rem.len() >= d.c.len() && !rem.is_empty() {
            let k = rem.len() - 1;
            let q = self.mulmod(rem[k], lcinv);
            if q != 0 {
                quo[k - dd] = q;
                for (i, &dc) in d.c.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = (rem[idx] + self.p - self.mulmod(q, dc)) % self.p;
                }
            }
            rem.pop();
        }
        (ModPoly::new(self.p, quo), ModPoly::new(self.p, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
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

    pub fn derivative(&self) -> ModPoly {
        if self.c.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| self.mulmod(a, (k as u64) % self.p))
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (self.mulmod(acc, x) + c) % self.p;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// `x^(p*k) mod f` rows used by the Berlekamp matrix.
    fn pow_x_mod(&self, e: u64) -> ModPoly {
        // x^e mod self by square and multiply on exponent bits
        let mut result = ModPoly::constant(self.p, 1);
        let mut base = ModPoly::x(self.p).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        result
    }

    /// Roots in `F_p` by direct scan (p is small here).
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&r| self.eval(r) == 0).collect()
    }

    /// Berlekamp factorization of a squarefree monic polynomial into monic
    /// irreducibles, deterministic and sorted.
    pub fn factor_squarefree(&self) -> Vec<ModPoly> {
        let f = self.monic();
        let n = f.deg();
        if n <= 1 {
            return vec![f];
        }
        assert!(f.is_squarefree(), "Berlekamp input must be squarefree");
        // Berlekamp matrix Q: row k = coefficients of x^{pk} mod f.
        let p = self.p;
        let mut q_rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let xp = f.pow_x_mod(p);
        let mut cur = ModPoly::constant(p, 1);
        for k in 0..n {
            if k > 0 {
                cur = cur.mul(&xp).rem(&f);
            }
            let mut row = vec![0u64; n];
            for (i, &c) in cur.coeffs().iter().enumerate() {
                row[i] = c;
            }
            q_rows.push(row);
        }
        // Kernel of (Q - I)^T applied to coefficient vectors: we want v with
        // v(x)^p = v(x) mod f, i.e. v * (Q - I) = 0 with rows as above.
        let mut m = vec![vec![0u64; n]; n];
        for (k, row) in q_rows.iter().enumerate() {
            for (i, &val) in row.iter().enumerate() {
                m[i][k] = val; // transpose
            }
        }
        for i in 0..n {
            m[i][i] = (m[i][i] + p - 1) % p;
        }
        let kernel = kernel_basis(m, p);
        let r = kernel.len();
        let mut factors = vec![f.clone()];
        if r == 1 {
            return factors;
        }
        'outer: for basis_vec in kernel.iter() {
            let v = ModPoly::new(p, basis_vec.clone());
            if v.deg() == 0 {
                continue;
            }
            let mut next = Vec::new();
            for g in factors.drain(..) {
                if g.deg() <= 1 {
                    next.push(g);
                    continue;
                }
                let mut rest = g.clone();
                for c in 0..p {
                    if rest.deg() <= 1 {
                        break;
                    }
                    let h = rest.gcd(&v.sub(&ModPoly::constant(p, c)));
                    if h.deg() >= 1 && h.deg() < rest.deg() {
                        rest = rest.divrem(&h).0.monic();
                        next.push(h);
                    }
                }
                next.push(rest);
            }
            factors = next;
            if factors.len() == r {
                break 'outer;
            }
        }
        factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
        debug_assert_eq!(factors.len(), r, "Berlekamp split count");
        factors
    }
}

/// Square root mod an odd prime by Tonelli-Shanks (deterministic: the
/// non-residue search scans upward). `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * b as u128) % p as u128) as u64;
            }
            b = ((b as u128 * b as u128) % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow(a, (p + 1) / 4));
    }
    // Tonelli-Shanks
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow(z, (p - 1) / 2) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow(z, q);
    let mut t = pow(a, q);
    let mut r = pow(a, (q + 1) / 2);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
            i += 1;
        }
        let mut b = c;
        for _ in 0..m - i - 1 {
            b = ((b as u128 * b as u128) % p as u128) as u64;
        }
        m = i;
        c = ((b as u128 * b as u128) % p as u128) as u64;
        t = ((t as u128 * c as u128) % p as u128) as u64;
        r = ((r as u128 * b as u128) % p as u128) as u64;
    }
    Some(r)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on i128
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

/// Basis of the null space of the matrix over `F_p` (row-major, square).
fn kernel_basis(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mulp = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        let mut pivot = None;
        for r in row..n {
            if m[r][col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for c in 0..n {
            m[row][c] = mulp(m[row][c], inv);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + p - mulp(factor, m[row][c])) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let f = mp(5, &[4, 0, 1]); // x^2 + 4 = x^2 - 1
        let g = mp(5, &[1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, mp(5, &[4, 1]));
        assert_eq!(f.eval(2), 3);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn factor_simple() {
        // x^2 - 1 mod 5 = (x-1)(x+1)
        let f = mp(5, &[4, 0, 1]);
        let fs = f.factor_squarefree();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
        // x^2 + 1 mod 3 irreducible
        let g = mp(3, &[1, 0, 1]);
        assert_eq!(g.factor_squarefree(), vec![g.clone()]);
    }

    #[test]
    fn factor_multi() {
        // (x-1)(x-2)(x^2+1)(x^2+x+2) mod 5; x^2+1 = (x-2)(x-3) mod 5!
        let f = mp(5, &[4, 1])
            .mul(&mp(5, &[3, 1]))
            .mul(&mp(5, &[1, 0, 1]))
            .mul(&mp(5, &[2, 1, 1]));
        if f.is_squarefree() {
            let fs = f.factor_squarefree();
            let prod = fs.iter().fold(ModPoly::constant(5, 1), |a, b| a.mul(b));
            assert_eq!(prod, f.monic());
            for g in &fs {
                assert!(g.deg() >= 1);
            }
        }
        // x^8 + x^4 + 1 mod 7: check product reconstructs
        let h = mp(7, &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
        if h.is_squarefree() {
            let hs = h.factor_squarefree();
            let prod = hs.iter().fold(ModPoly::constant(7, 1), |a, b| a.mul(b));
            assert_eq!(prod, h.monic());
        }
    }

    #[test]
    fn roots_scan() {
        let f = mp(7, &[6, 0, 1]); // x^2 - 1
        assert_eq!(f.roots(), vec![1, 6]);
    }
}
