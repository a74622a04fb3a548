//! Integer utilities: primality, factorization and p-adic valuations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_PRIME_LIMIT: u32 = 10_000;

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on big integers. Deterministic below 3.3e24, probabilistic
/// (fixed bases) above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += lim;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization, sorted by prime.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut p = 2u32;
    while p < SMALL_PRIME_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some(entry) => entry.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

pub fn prime_factors(n: &BigInt) -> Vec<BigUint> {
    factorize(n.magnitude()).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// Removes every factor of `p` from `n`.
pub fn strip_prime(n: &BigInt, p: &BigUint) -> BigInt {
    if n.is_zero() {
        return n.clone();
    }
    let pb = BigInt::from(p.clone());
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return m;
        }
        m = q;
    }
}

/// Largest `e` with `base^e <= bound`, for an integer base >= 2 and a
/// rational bound >= 1 given as numerator/denominator.
pub fn max_power_below(base: &BigUint, bound_num: &BigInt, bound_den: &BigInt) -> u32 {
    let base = BigInt::from(base.clone());
    let mut e = 0u32;
    let mut power = BigInt::one();
    loop {
        let next = &power * &base;
        if &next * bound_den > *bound_num {
            return e;
        }
        power = next;
        e += 1;
    }
}

/// Largest d such that d^2 divides n.
pub fn square_part_root(n: &BigInt) -> BigInt {
    let mut d = BigInt::one();
    for (p, e) in factorize(n.magnitude()) {
        d *= BigInt::from(p).pow(e / 2);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
    }

    #[test]
    fn factor_composites() {
        let n = BigUint::from(2u32).pow(5) * BigUint::from(3u32).pow(2) * BigUint::from(10007u32);
        let f = factorize(&n);
        assert_eq!(
            f,
            vec![
                (BigUint::from(2u32), 5),
                (BigUint::from(3u32), 2),
                (BigUint::from(10007u32), 1)
            ]
        );
        // two primes beyond the trial-division range
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let f = factorize(&(&p * &q * &q));
        assert_eq!(f, vec![(q.clone(), 2), (p.clone(), 1)]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-48), &BigUint::from(2u32)), 4);
        assert_eq!(strip_prime(&BigInt::from(-48), &BigUint::from(2u32)), BigInt::from(-3));
        assert_eq!(square_part_root(&BigInt::from(-72)), BigInt::from(6));
    }

    #[test]
    fn power_bound() {
        let two = BigUint::from(2u32);
        assert_eq!(max_power_below(&two, &BigInt::from(6), &BigInt::one()), 2);
        assert_eq!(max_power_below(&two, &BigInt::from(8), &BigInt::one()), 3);
        assert_eq!(max_power_below(&two, &BigInt::from(3), &BigInt::from(2)), 0);
    }
}
