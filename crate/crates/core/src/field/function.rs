//! The rational function field F_q(t), q prime.

use std::cmp::Ordering;

use crate::poly::fp::FpPoly;

/// A reduced fraction num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let q = num.modulus();
        if num.is_zero() {
            return RatFunc {
                num,
                den: FpPoly::one(q),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead_inv = crate::poly::fp::invmod_u64(den.lead(), q);
        RatFunc {
            num: num.scale(lead_inv),
            den: den.scale(lead_inv),
        }
    }

    pub fn from_poly(p: FpPoly) -> Self {
        let q = p.modulus();
        RatFunc::new(p, FpPoly::one(q))
    }

    pub fn constant(q: u64, c: u64) -> Self {
        RatFunc::from_poly(FpPoly::constant(q, c))
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Order at the place of the monic irreducible `p`.
    pub fn ord_at(&self, p: &FpPoly) -> i64 {
        assert!(!self.is_zero());
        self.num.multiplicity(p) as i64 - self.den.multiplicity(p) as i64
    }

    /// Order at infinity: deg den - deg num.
    pub fn ord_inf(&self) -> i64 {
        assert!(!self.is_zero());
        self.den.deg() as i64 - self.num.deg() as i64
    }

    /// A constant (element of F_q) value, if any.
    pub fn as_constant(&self) -> Option<u64> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn format(&self, var: &str) -> String {
        let n = self.num.format(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String, p: &FpPoly| {
            if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(self.den.format(var), &self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(c: &[u64]) -> FpPoly {
        FpPoly::new(2, c.to_vec())
    }

    #[test]
    fn arithmetic_and_orders() {
        let t = RatFunc::from_poly(f2(&[0, 1]));
        let t1 = RatFunc::from_poly(f2(&[1, 1]));
        let x = t.mul(&t1).add(&RatFunc::constant(2, 1)); // t^2 + t + 1
        assert_eq!(x.num(), &f2(&[1, 1, 1]));
        assert_eq!(x.ord_inf(), -2);
        let y = x.mul(&t.inv().unwrap());
        assert_eq!(y.ord_at(&f2(&[0, 1])), -1);
        assert_eq!(y.ord_at(&f2(&[1, 1])), 0);
        assert_eq!(y.format("t"), "(t^2 + t + 1)/t");
    }

    #[test]
    fn canonical_form() {
        let a = RatFunc::new(f2(&[0, 1, 1]), f2(&[0, 1]));
        assert_eq!(a, RatFunc::from_poly(f2(&[1, 1])));
        let zero = RatFunc::new(FpPoly::zero(2), f2(&[1, 1]));
        assert_eq!(zero.den(), &FpPoly::one(2));
        let b = RatFunc::new(FpPoly::new(3, vec![1]), FpPoly::new(3, vec![0, 2]));
        assert!(b.den().is_monic());
    }
}
