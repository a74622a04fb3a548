//! Polynomials over a prime field F_p, with factorization
//! (squarefree split, distinct-degree, Cantor-Zassenhaus equal-degree).

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn invmod_u64(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod_u64(a, p - 2, p)
}

/// Polynomial over F_p, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({})", self.p, self.format("t"))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then(self.p.cmp(&other.p))
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// From signed integer coefficients.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0` convention used for valuations; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect(),
        )
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        let inv_lead = invmod_u64(d.lead(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulmod(rem[i], inv_lead, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - mulmod(c, dc, p)) % p;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod_u64(self.lead(), self.p))
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = invmod_u64(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut r = FpPoly::one(self.p);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &FpPoly) -> FpPoly {
        let mut r = FpPoly::one(self.p).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul(&r).rem(m);
            if e.bit(i) {
                r = r.mul(&b).rem(m);
            }
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == Some(0)
    }

    /// Multiplicity of the monic irreducible `q` in `self` (nonzero).
    pub fn multiplicity(&self, q: &FpPoly) -> u32 {
        let mut m = self.clone();
        let mut e = 0;
        loop {
            let (quot, r) = m.div_rem(q);
            if !r.is_zero() {
                return e;
            }
            m = quot;
            e += 1;
        }
    }

    /// Irreducible factorization into monic factors with multiplicities,
    /// sorted. The leading coefficient is dropped.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero());
        let mut out: Vec<(FpPoly, u32)> = Vec::new();
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (deg, part) in sqf.distinct_degree() {
                for f in part.equal_degree(deg) {
                    out.push((f, mult));
                }
            }
        }
        out.sort();
        // merge duplicates (can occur across squarefree layers only in theory)
        let mut merged: Vec<(FpPoly, u32)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, e)) if *g == f => *e += m,
                _ => merged.push((f, m)),
            }
        }
        merged
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    /// Monic squarefree parts with multiplicities (Yun/Musser with p-th roots).
    fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            // f = g^p
            let root = self.pth_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1u32;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            let root = c.pth_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    /// Splits a monic squarefree polynomial into products of equal-degree
    /// irreducibles.
    fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0;
        let pb = num_bigint::BigUint::from(p);
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pb, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree().unwrap_or(0) > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let deg = f.deg();
            out.push((deg, f.monic()));
        }
        out
    }

    fn equal_degree(&self, d: usize) -> Vec<FpPoly> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        // deterministic stream so factorizations are reproducible
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) ^ (p << 8));
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut s = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    s = s.add(&t);
                }
                s
            } else {
                let e = (num_bigint::BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&FpPoly::one(p))
            };
            let g = b.gcd(self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d);
                out.extend(h.monic().equal_degree(d));
                return out;
            }
        }
    }

    pub fn format(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (c == 1 && i > 0, mono.is_empty()) {
                (true, _) => mono,
                (false, true) => c.to_string(),
                (false, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(c: &[u64]) -> FpPoly {
        FpPoly::new(2, c.to_vec())
    }

    #[test]
    fn factor_over_f2() {
        // (t^2+t+1)(t+1)^2 t
        let g = f2(&[1, 1, 1]).mul(&f2(&[1, 1])).mul(&f2(&[1, 1])).mul(&f2(&[0, 1]));
        let fac = g.factor();
        assert_eq!(fac, vec![(f2(&[0, 1]), 1), (f2(&[1, 1]), 2), (f2(&[1, 1, 1]), 1)]);
        assert!(f2(&[1, 1, 1]).is_irreducible());
        assert!(!f2(&[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn factor_pth_powers() {
        // (t+1)^4 over F_2 has zero derivative
        let g = f2(&[1, 1]).pow(4);
        assert_eq!(g.factor(), vec![(f2(&[1, 1]), 4)]);
        // t^3 - t over F_3 = t(t-1)(t+1)
        let h = FpPoly::from_i64(3, &[0, -1, 0, 1]);
        assert_eq!(h.factor().len(), 3);
    }

    #[test]
    fn factor_degree_split() {
        // x^4 + 1 over F_5 = (x^2+2)(x^2+3)
        let f = FpPoly::new(5, vec![1, 0, 0, 0, 1]);
        let fac = f.factor();
        assert_eq!(fac, vec![(FpPoly::new(5, vec![2, 0, 1]), 1), (FpPoly::new(5, vec![3, 0, 1]), 1)]);
        let prod = fac.iter().fold(FpPoly::one(5), |acc, (g, _)| acc.mul(g));
        assert_eq!(prod, f);
    }

    #[test]
    fn factor_reconstructs() {
        for p in [2u64, 3, 7, 13] {
            let f = FpPoly::from_i64(p, &[3, -1, 4, 1, -5, 9, 2, 6, 1]);
            let fac = f.factor();
            let prod = fac.iter().fold(FpPoly::one(p), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
            assert_eq!(prod, f.monic(), "p = {p}");
            assert!(fac.iter().all(|(g, _)| g.is_monic()));
        }
    }

    #[test]
    fn ordering_is_by_degree() {
        assert!(f2(&[1, 1]) < f2(&[0, 0, 1]));
        assert!(f2(&[0, 1]) < f2(&[1, 1]));
    }
}
