//! Integer factorization at desk scale: trial division, deterministic
//! Miller-Rabin, and Pollard rho for the occasional large cofactor.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{int, Int};

static SMALL_PRIMES: std::sync::LazyLock<Vec<u64>> =
    std::sync::LazyLock::new(|| primes_up_to(100_000));

/// Factors `n > 0` into sorted `(prime, exponent)` pairs.
pub fn factor(n: &Int) -> Vec<(Int, u32)> {
    use num_traits::ToPrimitive;
    assert!(n.is_positive(), "factor() wants a positive integer");
    if let Some(m) = n.to_u64() {
        return factor_u64(m).into_iter().map(|(p, e)| (int(p as i64), e)).collect();
    }
    let mut out: Vec<(Int, u32)> = Vec::new();
    let mut rest = n.clone();
    for &p in SMALL_PRIMES.iter() {
        let pp = int(p as i64);
        if (&pp * &pp) > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pp);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            out.push((pp, e));
        }
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_prime(&m) {
                match out.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, e)) => *e += 1,
                    None => out.push((m, 1)),
                }
            } else {
                let d = pollard_rho(&m);
                stack.push(m / &d);
                stack.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Word-sized factorization: trial division over the sieved prime table,
/// then a Miller-Rabin/rho finish for the rare large cofactor.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for &p in SMALL_PRIMES.iter() {
        if p.saturating_mul(p) > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        if rest == 1 {
            break;
        }
    }
    if rest > 1 {
        // rest has no factor below 1e5, so it is prime or a product of two
        // primes above 1e5; defer the split to the BigInt path
        if is_prime(&int(rest as i64)) {
            out.push((rest, 1));
        } else {
            use num_traits::ToPrimitive;
            for (p, e) in factor_big_cofactor(&int(rest as i64)) {
                out.push((p.to_u64().expect("fits"), e));
            }
        }
    }
    out.sort();
    out
}

fn factor_big_cofactor(n: &Int) -> Vec<(Int, u32)> {
    let mut out: Vec<(Int, u32)> = Vec::new();
    let mut stack = vec![n.clone()];
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out.sort();
    out
}

/// Deterministic Miller-Rabin; the base set is exact for everything this
/// crate ever feeds it (well below 3.3e24).
pub fn is_prime(n: &Int) -> bool {
    if *n < int(2) {
        return false;
    }
    for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = int(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1: Int = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'base: for a in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = int(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&int(2), n);
            if x == n1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &Int) -> Int {
    // n is odd, composite, and has no factor below 1e5 here.
    let mut c = int(1);
    loop {
        let mut x = int(2);
        let mut y = int(2);
        let mut d = Int::one();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d.is_one() || d == *n {
            c += 1;
            continue;
        }
        return d;
    }
}

/// Primes up to and including `bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(&int(1)), vec![]);
        assert_eq!(factor(&int(40)), vec![(int(2), 3), (int(5), 1)]);
        assert_eq!(factor(&int(97)), vec![(int(97), 1)]);
    }

    #[test]
    fn large_cofactor() {
        // 1000003 * 1000033 has no factor below the trial bound.
        let n = int(1_000_003) * int(1_000_033);
        let fs = factor(&n);
        assert_eq!(fs, vec![(int(1_000_003), 1), (int(1_000_033), 1)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&int(2)));
        assert!(is_prime(&int(101)));
        assert!(!is_prime(&int(1)));
        assert!(!is_prime(&int(561))); // Carmichael
        assert!(is_prime(&(int(2).pow(61) - 1)));
    }

    #[test]
    fn sieve() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
    }
}
