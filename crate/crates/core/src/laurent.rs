//! Exponent vectors, Laurent polynomials in u_1..u_d and their evaluation
//! under a presentation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::presentation::{FieldElement, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("exponent vectors need d >= 1".into()));
        }
        Ok(ExponentVector(entries))
    }

    pub fn zero(d: usize) -> Self {
        ExponentVector(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn norm_sq(&self) -> i128 {
        self.0.iter().map(|&x| x as i128 * x as i128).sum()
    }

    pub fn norm(&self) -> Norm {
        exp_norm(self)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The Euclidean norm, kept exactly as its square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Norm {
    pub squared: i128,
}

impl Norm {
    /// The integer root when the square is a perfect square.
    pub fn exact_root(&self) -> Option<i128> {
        let r = (self.squared as f64).sqrt().round() as i128;
        (r - 1..=r + 1).find(|&c| c >= 0 && c * c == self.squared)
    }

    pub fn value(&self) -> f64 {
        (self.squared as f64).sqrt()
    }

    /// Compares the norm with a real bound; exact when the bound is an
    /// integer-valued float.
    pub fn cmp_bound(&self, bound: f64) -> Ordering {
        if bound < 0.0 {
            return Ordering::Greater;
        }
        if bound.fract() == 0.0 && bound < 1e15 {
            let b = bound as i128;
            return self.squared.cmp(&(b * b));
        }
        self.value().partial_cmp(&bound).unwrap_or(Ordering::Greater)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_root() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "sqrt({})", self.squared),
        }
    }
}

pub fn exp_norm(n: &ExponentVector) -> Norm {
    Norm { squared: n.norm_sq() }
}

pub fn monomial_mul(n: &ExponentVector, m: &ExponentVector) -> Result<ExponentVector> {
    if n.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: n.dim(),
            got: m.dim(),
        });
    }
    Ok(ExponentVector(n.0.iter().zip(&m.0).map(|(a, b)| a + b).collect()))
}

/// A Laurent polynomial with integer coefficients (modulus 0) or residues
/// mod a prime q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    d: usize,
    modulus: u64,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(d: usize, modulus: u64) -> Self {
        LaurentPoly {
            d,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: ExponentVector, c: BigInt, modulus: u64) -> Self {
        let mut p = LaurentPoly::zero(n.dim(), modulus);
        p.add_term(n, c);
        p
    }

    pub fn constant(d: usize, c: BigInt, modulus: u64) -> Self {
        Self::monomial(ExponentVector::zero(d), c, modulus)
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        if self.modulus == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.modulus))
        }
    }

    pub fn add_term(&mut self, n: ExponentVector, c: BigInt) {
        assert_eq!(n.dim(), self.d, "exponent dimension");
        let sum = self.terms.get(&n).cloned().unwrap_or_default() + c;
        let v = self.normalize(sum);
        if v.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (n, c) in &o.terms {
            out.add_term(n.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.d, self.modulus);
        for (n, c) in &self.terms {
            out.add_term(n.clone(), -c);
        }
        out
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.d, self.modulus);
        for (n, a) in &self.terms {
            for (m, b) in &o.terms {
                out.add_term(monomial_mul(n, m).expect("same dimension"), a * b);
            }
        }
        out
    }
}

/// Substitutes the generator images for u_1..u_d.
pub fn evaluate(p: &LaurentPoly, pres: &Presentation) -> Result<FieldElement> {
    if p.dim() != pres.dim() {
        return Err(Error::DimensionMismatch {
            expected: pres.dim(),
            got: p.dim(),
        });
    }
    let mut acc = pres.zero();
    for (n, c) in p.terms() {
        let term = pres.mul(&pres.from_int(c), &pres.monomial(n.entries()));
        acc = pres.add(&acc, &term);
    }
    Ok(acc)
}

/// All nonzero n with ||n|| <= radius, ordered by squared norm and then
/// lexicographically.
pub fn shell_order(d: usize, radius: f64) -> Vec<ExponentVector> {
    let r = radius.floor().max(0.0) as i64;
    let mut out = Vec::new();
    let mut cur = vec![-r; d];
    loop {
        let n = ExponentVector(cur.clone());
        if !n.is_zero() && n.norm().cmp_bound(radius) != Ordering::Greater {
            out.push(n);
        }
        let mut i = d;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.norm_sq().cmp(&b.norm_sq()).then_with(|| a.cmp(b)));
                return out;
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                break;
            }
            cur[i] = -r;
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in &self.terms {
            let mono: Vec<String> = n
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("u{}", i + 1) } else { format!("u{}^{e}", i + 1) })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join(" "))?,
                (false, false) => write!(f, "{mag} {}", mono.join(" "))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::q_int;
    use crate::config::SystemConfig;
    use crate::field::presentation::parse_presentation;
    use proptest::prelude::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn norms() {
        assert_eq!(exp_norm(&ev(&[0, 0])).squared, 0);
        assert_eq!(exp_norm(&ev(&[3, 4])).exact_root(), Some(5));
        let n = exp_norm(&ev(&[1, 1]));
        assert_eq!(n.squared, 2);
        assert_eq!(n.exact_root(), None);
        assert_eq!(n.to_string(), "sqrt(2)");
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_mul(&ev(&[1, 0]), &ev(&[0, 1])).unwrap(), ev(&[1, 1]));
        assert!(monomial_mul(&ev(&[2, -1]), &ev(&[-2, 1])).unwrap().is_zero());
        assert_eq!(monomial_mul(&ev(&[3, 0]), &ev(&[3, 0])).unwrap(), ev(&[6, 0]));
        assert!(monomial_mul(&ev(&[1]), &ev(&[1, 2])).is_err());
    }

    fn x2x3() -> Presentation {
        parse_presentation(
            &SystemConfig::from_str_toml(
                "[system]\nname='x2x3'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3']\n",
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let p = x2x3();
        let u1 = LaurentPoly::monomial(ev(&[1, 0]), 1.into(), 0);
        assert_eq!(evaluate(&u1, &p).unwrap().as_rational(), Some(q_int(2)));
        let f = LaurentPoly::monomial(ev(&[1, 1]), 1.into(), 0).sub(&LaurentPoly::constant(2, 1.into(), 0));
        assert_eq!(f.to_string(), "-1 + u1 u2");
        assert_eq!(evaluate(&f, &p).unwrap().as_rational(), Some(q_int(5)));
        assert_eq!(evaluate(&LaurentPoly::constant(2, 1.into(), 0), &p).unwrap(), p.one());
    }

    #[test]
    fn shells() {
        let s = shell_order(2, 1.5);
        let got: Vec<String> = s.iter().map(|n| n.to_string()).collect();
        assert_eq!(got, ["(-1,0)", "(0,-1)", "(0,1)", "(1,0)", "(-1,-1)", "(-1,1)", "(1,-1)", "(1,1)"]);
        assert_eq!(shell_order(1, 10.0).len(), 20);
        assert_eq!(shell_order(2, 5.0).iter().filter(|n| n.norm_sq() == 25).count(), 12);
    }

    #[test]
    fn residues_mod_q() {
        let p = LaurentPoly::monomial(ev(&[1]), 3.into(), 2);
        assert_eq!(p.terms().values().next(), Some(&BigInt::one()));
        assert!(p.add(&p).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 0..4).prop_map(|ts| {
            let mut p = LaurentPoly::zero(2, 0);
            for ((a, b), c) in ts {
                p.add_term(ev(&[a, b]), c.into());
            }
            p
        })
    }

    proptest! {
        #[test]
        fn evaluate_is_a_ring_homomorphism(a in small_poly(), b in small_poly()) {
            let p = x2x3();
            let ea = evaluate(&a, &p).unwrap();
            let eb = evaluate(&b, &p).unwrap();
            prop_assert_eq!(evaluate(&a.mul(&b), &p).unwrap(), p.mul(&ea, &eb));
            prop_assert_eq!(evaluate(&a.add(&b), &p).unwrap(), p.add(&ea, &eb));
        }

        #[test]
        fn monomial_mul_laws(a in prop::collection::vec(-5i64..5, 3), b in prop::collection::vec(-5i64..5, 3), c in prop::collection::vec(-5i64..5, 3)) {
            let (a, b, c) = (ev(&a), ev(&b), ev(&c));
            prop_assert_eq!(monomial_mul(&a, &b).unwrap(), monomial_mul(&b, &a).unwrap());
            prop_assert_eq!(
                monomial_mul(&monomial_mul(&a, &b).unwrap(), &c).unwrap(),
                monomial_mul(&a, &monomial_mul(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(monomial_mul(&a, &ExponentVector::zero(3)).unwrap(), a);
        }
    }
}
