//! Exact rational combinations of logarithms of primes, sum c_p log p.
//!
//! Logarithms of distinct primes are linearly independent over Q, so two
//! combinations are equal as real numbers iff their coefficients agree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::arith::ball::{ln_int, Ball, Q};
use crate::arith::integer::factorize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogCombination {
    terms: BTreeMap<BigUint, Q>,
}

impl LogCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c * log p.
    pub fn term(p: BigUint, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(p, c);
        out
    }

    /// log |r| for a nonzero rational r.
    pub fn log_abs(r: &Q) -> Self {
        assert!(!r.is_zero());
        let mut out = Self::zero();
        for (p, e) in factorize(r.numer().magnitude()) {
            out.add_term(p, Q::from_integer(BigInt::from(e)));
        }
        for (p, e) in factorize(r.denom().magnitude()) {
            out.add_term(p, -Q::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn add_term(&mut self, p: BigUint, c: Q) {
        let entry = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BigUint, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LogCombination) -> LogCombination {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> LogCombination {
        if c.is_zero() {
            return Self::zero();
        }
        LogCombination {
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> LogCombination {
        self.scale(&-Q::from_integer(BigInt::from(1)))
    }

    /// Sign of the real value. Exact for a single prime; otherwise decided
    /// by enclosures, which always terminates for a nonzero combination.
    pub fn signum(&self) -> i32 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.terms.len() == 1 {
            let c = self.terms.values().next().unwrap();
            return if c.is_positive() { 1 } else { -1 };
        }
        let mut prec = 64;
        loop {
            let b = self.to_ball(prec);
            if b.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            prec *= 2;
        }
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let mut acc = Ball::zero();
        for (p, c) in &self.terms {
            acc = acc.add(&ln_int(&BigInt::from(p.clone()), prec + 8).scale(c));
        }
        acc.round(prec + 4)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| crate::arith::ball::q_to_f64(c) * crate::arith::ball::q_to_f64(&Q::from_integer(BigInt::from(p.clone()))).ln())
            .sum()
    }
}

impl fmt::Display for LogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if mag == Q::from_integer(BigInt::from(1)) {
                write!(f, "log({p})")?;
            } else {
                write!(f, "{mag}*log({p})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};

    #[test]
    fn log_of_rational() {
        let l = LogCombination::log_abs(&q_frac(-12, 5));
        assert_eq!(l.to_string(), "2*log(2) + log(3) - log(5)");
        assert!((l.to_f64() - (12.0f64 / 5.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn cancellation_and_sign() {
        let a = LogCombination::log_abs(&q_int(6));
        let b = LogCombination::log_abs(&q_frac(1, 6));
        assert!(a.add(&b).is_zero());
        // log 8 - log 7 > 0, log 3 - 2 log 2 < 0
        let c = LogCombination::log_abs(&q_frac(8, 7));
        assert_eq!(c.signum(), 1);
        let d = LogCombination::log_abs(&q_frac(3, 4));
        assert_eq!(d.signum(), -1);
    }
}
