//! Integer polynomials modulo prime powers: Hensel lifting and
//! Zassenhaus factorization of monic integer polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;
use super::qpoly::QPoly;
use crate::arith::integer::is_prime_u64;

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn modp(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

pub fn reduce(p: &[BigInt], m: &BigInt) -> ZPoly {
    trim(p.iter().map(|c| modp(c, m)).collect())
}

pub fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

pub fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

pub fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division with remainder by a monic polynomial, coefficients mod m.
pub fn div_rem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let a = reduce(a, m);
    let dd = d.len() - 1;
    debug_assert!(d[dd].is_one());
    if a.len() <= dd {
        return (vec![], a);
    }
    let mut rem = a;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = modp(&rem[i], m);
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i - dd + j] -= &c * dc;
        }
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    (reduce(&quot, m), reduce(&rem, m))
}

fn to_fp(p: &[BigInt], q: u64) -> FpPoly {
    let qb = BigInt::from(q);
    FpPoly::new(q, p.iter().map(|c| modp(c, &qb).to_u64().unwrap()).collect())
}

fn from_fp(p: &FpPoly) -> ZPoly {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts f = g*h mod p (g, h monic and coprime mod p, f monic) to a
/// factorization mod p^k.
fn hensel_two(f: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = g.ext_gcd(h);
    let pb = BigInt::from(p);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut modulus = pb.clone();
    for _ in 1..k {
        let next = &modulus * &pb;
        // e = (f - g h) / p^j  mod p
        let prod = mul_mod(&gz, &hz, &next);
        let diff = sub_mod(f, &prod, &next);
        let e: ZPoly = diff.iter().map(|c| c / &modulus).collect();
        let e = to_fp(&e, p);
        // dg = t e mod g, dh = s e + q h
        let (q, dg) = t.mul(&e).div_rem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        let scale = |x: &FpPoly| -> ZPoly { from_fp(x).iter().map(|c| c * &modulus).collect() };
        gz = add_mod(&gz, &scale(&dg), &next);
        hz = add_mod(&hz, &scale(&dh), &next);
        modulus = next;
    }
    (gz, hz)
}

/// Lifts the monic factorization `factors` of monic `f` mod p to mod p^k.
pub fn hensel_lift(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        return vec![reduce(f, &modulus)];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let (gz, hz) = hensel_two(f, g, &h, p, k);
    let mut out = vec![gz];
    out.extend(hensel_lift(&hz, &factors[1..], p, k));
    out
}

/// Squarefreeness of f mod p.
pub fn squarefree_mod(f: &[BigInt], p: u64) -> bool {
    let fp = to_fp(f, p);
    fp.degree() == Some(f.len() - 1) && fp.is_squarefree()
}

/// Monic irreducible factors of f mod p (f monic and squarefree mod p).
pub fn factor_mod(f: &[BigInt], p: u64) -> Vec<FpPoly> {
    to_fp(f, p).factor().into_iter().map(|(g, _)| g).collect()
}

fn symmetric(p: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        p.iter()
            .map(|c| {
                let r = modp(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact division of integer polynomials; `None` unless `d` divides `a` over Z.
fn exact_div(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = QPoly::from_ints(a).div_rem(&QPoly::from_ints(d));
    if !r.is_zero() || !q.is_integral() {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Irreducible factorization of a monic integer polynomial over Q.
pub fn factor_monic_z(f: &[BigInt]) -> Vec<ZPoly> {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    assert!(f[n].is_one(), "factor_monic_z needs a monic polynomial");
    if n <= 1 {
        return vec![f];
    }
    let fq = QPoly::from_ints(&f);
    let g = fq.gcd(&fq.derivative());
    if g.degree().unwrap_or(0) > 0 {
        // repeated factor: split off the squarefree kernel and recurse
        let g_int = primitive_monic_integer(&g);
        let mut out = factor_monic_z(&g_int);
        let rest = exact_div(&f, &g_int).expect("gcd of monic integer polynomial divides it");
        out.extend(factor_monic_z(&rest));
        return out;
    }
    let p = (3u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| squarefree_mod(&f, p))
        .expect("some prime leaves a squarefree reduction");
    let modp_factors = factor_mod(&f, p);
    if modp_factors.len() == 1 {
        return vec![f];
    }
    // Landau-Mignotte style bound on factor coefficients
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << (n + 1)) * norm2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modp_factors, p, k);
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in subsets(remaining.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| mul_mod(&acc, &remaining[i], &pk));
            let cand = symmetric(&cand, &pk);
            if let Some(q) = exact_div(&current, &cand) {
                out.push(cand);
                current = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(current);
    out
}

fn primitive_monic_integer(g: &QPoly) -> ZPoly {
    // g is monic with rational coefficients dividing a monic integer
    // polynomial, hence (Gauss) integral
    g.monic()
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Discriminant-free check used by place discovery: all primes below
/// `limit` at which f fails to be squarefree.
pub fn bad_primes_of(f: &[BigInt], primes: &[BigUint]) -> Vec<BigUint> {
    primes
        .iter()
        .filter(|p| match p.to_u64() {
            Some(q) => !squarefree_mod(f, q),
            None => false,
        })
        .cloned()
        .collect()
}

pub fn poly_abs_max(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hensel_reconstructs_mod_pk() {
        // x^2 - x - 1 mod 11 splits: roots 4 and 8
        let f = z(&[-1, -1, 1]);
        let facs = factor_mod(&f, 11);
        assert_eq!(facs.len(), 2);
        let lifted = hensel_lift(&f, &facs, 11, 6);
        let m = BigInt::from(11).pow(6);
        let prod = mul_mod(&lifted[0], &lifted[1], &m);
        assert_eq!(prod, reduce(&f, &m));
    }

    #[test]
    fn zassenhaus_irreducible_and_reducible() {
        // x^4 + 1 is irreducible over Q but splits mod every prime
        assert_eq!(factor_monic_z(&z(&[1, 0, 0, 0, 1])).len(), 1);
        // (x^2 + 1)(x^2 - 2)
        let f = factor_monic_z(&z(&[-2, 0, -1, 0, 1]));
        assert_eq!(f.len(), 2);
        // x^2 - 1
        assert_eq!(factor_monic_z(&z(&[-1, 0, 1])).len(), 2);
        // repeated factor (x-1)^2 (x+2)
        assert_eq!(factor_monic_z(&z(&[2, -3, 0, 1])).len(), 3);
        assert_eq!(factor_monic_z(&z(&[-1, -1, 1])).len(), 1);
    }

    #[test]
    fn squarefree_reductions() {
        let f = z(&[-1, -1, 1]); // disc 5
        assert!(!squarefree_mod(&f, 5));
        assert!(squarefree_mod(&f, 2));
        assert!(squarefree_mod(&f, 3));
    }
}
