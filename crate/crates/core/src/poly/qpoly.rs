//! Dense univariate polynomials over the rationals and integers,
//! coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ball::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        QPoly::new(coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, q: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::constant(Q::one()), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::constant(Q::one()));
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
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients of `self * denominator_lcm()`.
    pub fn integer_numerator(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.denominator_lcm();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        (coeffs, den)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn pow_mod(&self, e: u64, m: &QPoly) -> QPoly {
        let mut result = QPoly::constant(Q::one()).rem(m);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }
}

/// Render a polynomial with variable name `var`, highest degree first.
pub fn format_poly(coeffs: &[Q], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let mag = c.abs();
        let coeff_str = if mag.is_one() && i > 0 {
            String::new()
        } else if mag.is_integer() || i == 0 {
            format!("{mag}")
        } else {
            format!("({mag})")
        };
        let body = match (coeff_str.is_empty(), mono.is_empty()) {
            (true, _) => mono,
            (false, true) => coeff_str,
            (false, false) => format!("{coeff_str}*{mono}"),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Determinant of a square rational matrix by Gaussian elimination over Q.
pub fn det_q(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Rank of a rational matrix.
pub fn rank_q(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let p = m[rank][col].clone();
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..cols {
                let t = &f * &m[rank][c];
                m[r][c] -= t;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Characteristic polynomial (monic, low-to-high) of a square rational matrix
/// by the Faddeev-LeVerrier recurrence.
pub fn charpoly_q(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let identity = |s: &Q| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { s.clone() } else { Q::zero() }).collect())
            .collect()
    };
    let matmul = |x: &Vec<Vec<Q>>, y: &[Vec<Q>]| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut m = identity(&Q::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let am = matmul(&m, a);
        m = am;
        for i in 0..n {
            m[i][i] += &coeffs[n - k + 1];
        }
        let am = matmul(&m, a);
        let trace = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / Q::from_integer(BigInt::from(k));
    }
    coeffs
}
