//! Exact Gaussian rationals and trigonometric polynomials, i.e. finitely
//! supported Fourier coefficient maps on the dual module.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::ball::Q;
use crate::config::TermConfig;
use crate::error::{Error, Result};
use crate::field::places::in_ring;
use crate::field::presentation::{parse_rational, FieldElement};
use crate::system::System;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn mul(&self, o: &GaussQ) -> GaussQ {
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, c: &Q) -> GaussQ {
        GaussQ::new(&self.re * c, &self.im * c)
    }

    pub fn conj(&self) -> GaussQ {
        GaussQ::new(self.re.clone(), -&self.im)
    }

    /// (numerator, denominator) pairs of the real and imaginary parts.
    pub fn parts(&self) -> [(String, String); 2] {
        [
            (self.re.numer().to_string(), self.re.denom().to_string()),
            (self.im.numer().to_string(), self.im.denom().to_string()),
        ]
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}i", self.re, sign, self.im.abs())
    }
}

impl Serialize for GaussQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GaussQ", 2)?;
        let [re, im] = self.parts();
        st.serialize_field("re", &[re.0, re.1])?;
        st.serialize_field("im", &[im.0, im.1])?;
        st.end()
    }
}

/// f = sum_a c_a chi_a, stored as a -> c_a with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<FieldElement, GaussQ>,
}

impl TrigPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: FieldElement, c: GaussQ) {
        let slot = self.coeffs.entry(a.clone()).or_default();
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn coeff(&self, a: &FieldElement) -> Option<&GaussQ> {
        self.coeffs.get(a)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FieldElement, &GaussQ)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, o: &TrigPolynomial) -> TrigPolynomial {
        let mut out = self.clone();
        for (a, c) in &o.coeffs {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussQ) -> TrigPolynomial {
        let mut out = TrigPolynomial::new();
        for (a, x) in &self.coeffs {
            out.add_term(a.clone(), x.mul(c));
        }
        out
    }

    /// f is real-valued iff c_{-a} = conj(c_a) for every a.
    pub fn is_real(&self, sys: &System) -> bool {
        self.coeffs.iter().all(|(a, c)| {
            let neg = sys.pres.neg(a);
            self.coeffs.get(&neg).map_or(c.is_zero(), |d| *d == c.conj())
        })
    }

    /// Builds f from functions-file terms; every support element must lie
    /// in the module.
    pub fn from_terms(sys: &System, terms: &[TermConfig], label: &str) -> Result<TrigPolynomial> {
        let mut f = TrigPolynomial::new();
        for (i, t) in terms.iter().enumerate() {
            let at = |what: &str| format!("{label}[{i}].{what}");
            let a = sys
                .pres
                .parse_element(&t.support)
                .map_err(|e| Error::malformed(at("support"), e.to_string()))?;
            if !in_ring(&sys.pres, &sys.places, &a)? {
                return Err(Error::malformed(at("support"), format!("{} is not in the module", t.support)));
            }
            let re = parse_rational(&t.re).map_err(|e| Error::malformed(at("re"), e.to_string()))?;
            let im = parse_rational(&t.im).map_err(|e| Error::malformed(at("im"), e.to_string()))?;
            f.add_term(a, GaussQ::new(re, im));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussQ::new(q_int(1), q_int(2));
        let b = GaussQ::new(q_frac(1, 2), q_int(-1));
        assert_eq!(a.mul(&b), GaussQ::new(q_frac(5, 2), q_int(0)));
        assert_eq!(b.to_string(), "1/2 - 1i");
        assert_eq!(a.conj().add(&a), GaussQ::real(q_int(2)));
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"re":["1","2"],"im":["-1","1"]}"#);
    }

    #[test]
    fn terms_cancel() {
        let mut f = TrigPolynomial::new();
        let x = FieldElement::Number(crate::poly::qpoly::QPoly::constant(q_int(3)));
        f.add_term(x.clone(), GaussQ::real(q_int(1)));
        f.add_term(x, GaussQ::real(q_int(-1)));
        assert_eq!(f.support_len(), 0);
    }
}
