//! |Fix(alpha^n)| = |M / (u^n - 1) M|, by the product formula over S and by
//! an independent quotient computation.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::ball::{Ball, Q};
use crate::arith::integer::factorize;
use crate::error::{Error, Result};
use crate::field::places::{abs_value, AbsValue, PRECISION_CEILING};
use crate::field::presentation::{Backend, FieldElement};
use crate::harmonic::snf::smith_diagonal;
use crate::laurent::ExponentVector;
use crate::system::System;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixCount {
    pub n: ExponentVector,
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn gamma(sys: &System, n: &ExponentVector) -> Result<FieldElement> {
    if n.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: n.dim(),
        });
    }
    if n.is_zero() {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    let g = sys.pres.sub(&sys.pres.monomial(n.entries()), &sys.pres.one());
    if g.is_zero() {
        return Err(Error::NotMixing);
    }
    Ok(g)
}

/// prod_{v in S} |beta_n - 1|_v, rounded from an enclosure of width < 1/2.
pub fn fix_count_product(sys: &System, n: &ExponentVector) -> Result<FixCount> {
    sys.require_mixing()?;
    let g = gamma(sys, n)?;
    let mut exact = Q::one();
    let mut arch = Vec::new();
    for v in sys.places.iter() {
        if v.is_archimedean() && g.as_rational().is_none() {
            arch.push(v);
        } else {
            match abs_value(&sys.pres, v, &g, 64)? {
                AbsValue::Exact(q) => exact *= q,
                AbsValue::Enclosure(_) => unreachable!(),
            }
        }
    }
    let count = if arch.is_empty() {
        if !exact.is_integer() {
            return Err(Error::EnclosureNotIntegral {
                enclosure: exact.to_string(),
            });
        }
        exact.to_integer()
    } else {
        let mut prec = 64;
        loop {
            let mut b = Ball::exact(exact.clone());
            for v in &arch {
                let a = crate::field::places::archimedean_abs(&sys.pres, v, &g, prec)?;
                b = b.mul(&a).round(prec + 16);
            }
            if let Some(m) = unique_integer(&b) {
                break m;
            }
            if prec >= PRECISION_CEILING {
                return Err(Error::EnclosureNotIntegral { enclosure: b.to_string() });
            }
            prec *= 2;
        }
    };
    Ok(FixCount {
        n: n.clone(),
        count: count.magnitude().clone(),
    })
}

fn unique_integer(b: &Ball) -> Option<BigInt> {
    if b.width() >= Q::new(BigInt::one(), BigInt::from(2)) {
        return None;
    }
    let m = b.mid().round().to_integer();
    b.contains(&Q::from_integer(m.clone())).then_some(m)
}

/// The count by a method that never looks at archimedean places: integer
/// stripping (degree 1), Smith normal form on Z[x]/(f) (higher degree), or
/// divisor degrees (function fields).
pub fn fix_count_oracle(sys: &System, n: &ExponentVector) -> Result<FixCount> {
    let g = gamma(sys, n)?;
    let count = match (sys.pres.backend(), &g) {
        (Backend::Number(k), _) if k.degree() == 1 => {
            let r = g.as_rational().unwrap();
            s_free_part(sys, r.numer())? / s_free_part(sys, r.denom())?
        }
        (Backend::Number(k), FieldElement::Number(a)) => {
            let (b, den) = a.integer_numerator();
            let m: Vec<Vec<BigInt>> = k
                .mult_matrix(&crate::poly::qpoly::QPoly::from_ints(&b))
                .into_iter()
                .map(|row| row.into_iter().map(|q| q.to_integer()).collect())
                .collect();
            let index: BigInt = smith_diagonal(m).into_iter().product();
            let num = s_free_part(sys, &index)?;
            let den = s_free_part(sys, &den.pow(k.degree() as u32))?;
            if !(&num % &den).is_zero() {
                return Err(Error::UnsupportedBackendShape(format!(
                    "quotient {num}/{den} is not integral"
                )));
            }
            num / den
        }
        (Backend::Function { q }, FieldElement::Function(f)) => {
            let s_polys = sys.places.s_polys();
            let mut e: i64 = 0;
            for (p, m) in f.num().factor() {
                if p.deg() > 0 && !s_polys.contains(&p) {
                    e += (p.deg() as u32 * m) as i64;
                }
            }
            for (p, m) in f.den().factor() {
                if p.deg() > 0 && !s_polys.contains(&p) {
                    e -= (p.deg() as u32 * m) as i64;
                }
            }
            if !sys.places.infinity_in_s() {
                e += f.ord_inf();
            }
            if e < 0 {
                return Err(Error::UnsupportedBackendShape("beta_n - 1 is not in the module".into()));
            }
            BigInt::from(*q).pow(e as u32)
        }
        _ => unreachable!(),
    };
    Ok(FixCount {
        n: n.clone(),
        count: count.magnitude().clone(),
    })
}

/// The part of |x| supported on primes without S-places. Primes that are
/// only partly in S cannot be split off without local data.
fn s_free_part(sys: &System, x: &BigInt) -> Result<BigInt> {
    let mut out = BigInt::one();
    for (p, e) in factorize(x.magnitude()) {
        if sys.places.is_fully_s(&sys.pres, &p) {
            continue;
        }
        if sys.places.primes().contains_key(&p) {
            return Err(Error::UnsupportedBackendShape(format!(
                "prime {p} has places both inside and outside S"
            )));
        }
        out *= BigInt::from(p).pow(e);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixRow {
    pub n: ExponentVector,
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
    pub method: &'static str,
    /// None when the oracle does not support this shape.
    pub agreement: Option<bool>,
}

impl FixRow {
    pub fn csv_header(d: usize) -> String {
        let mut h: Vec<String> = (1..=d).map(|i| format!("n{i}")).collect();
        h.extend(["count", "method", "agreement"].map(String::from));
        h.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut r: Vec<String> = self.n.entries().iter().map(|x| x.to_string()).collect();
        r.push(self.count.to_string());
        r.push(self.method.into());
        r.push(match self.agreement {
            Some(true) => "agree".into(),
            Some(false) => "DISAGREE".into(),
            None => "unchecked".into(),
        });
        r.join(",")
    }
}

/// Product-formula count with the oracle cross-check.
pub fn fix_row(sys: &System, n: &ExponentVector) -> Result<FixRow> {
    let p = fix_count_product(sys, n)?;
    let agreement = match fix_count_oracle(sys, n) {
        Ok(o) => Some(o.count == p.count),
        Err(Error::UnsupportedBackendShape(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(FixRow {
        n: n.clone(),
        count: p.count,
        method: "product",
        agreement,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;

    fn sys(text: &str) -> System {
        System::from_config(&SystemConfig::from_str_toml(text).unwrap(), 128).unwrap()
    }

    const X2: &str = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\nmaximality_attested=true\n";
    const X2X3: &str = "[system]\nname='x2x3'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3']\nmaximality_attested=true\n";
    const FIB: &str = "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\nmaximality_attested=true\n";
    const LED: &str = "[system]\nname='led'\nd=2\ncharacteristic=2\n[field]\nbase_q=2\ngenerator_images=['t','1+t']\nmaximality_attested=true\n";

    fn both(s: &System, n: &[i64]) -> (u64, u64) {
        let n = ExponentVector(n.to_vec());
        let a = fix_count_product(s, &n).unwrap().count.try_into().unwrap();
        let b = fix_count_oracle(s, &n).unwrap().count.try_into().unwrap();
        (a, b)
    }

    #[test]
    fn documented_counts() {
        let x2 = sys(X2);
        for (n, c) in [(1, 1), (2, 3), (3, 7), (4, 15), (-4, 15)] {
            assert_eq!(both(&x2, &[n]), (c, c));
        }
        let x2x3 = sys(X2X3);
        assert_eq!(both(&x2x3, &[1, -1]), (1, 1));
        assert_eq!(both(&x2x3, &[5, -3]), (5, 5));
        let fib = sys(FIB);
        for (n, c) in [(1, 1), (2, 1), (3, 4), (4, 5), (5, 11)] {
            assert_eq!(both(&fib, &[n]), (c, c));
        }
        let led = sys(LED);
        assert_eq!(both(&led, &[1, 1]), (4, 4));
    }

    #[test]
    fn zero_n_rejected() {
        let x2 = sys(X2);
        assert!(fix_count_product(&x2, &ExponentVector(vec![0])).is_err());
    }

    #[test]
    fn csv_row() {
        let x2 = sys(X2);
        let r = fix_row(&x2, &ExponentVector(vec![3])).unwrap();
        assert_eq!(FixRow::csv_header(1), "n1,count,method,agreement");
        assert_eq!(r.csv_row(), "3,7,product,agree");
    }
}
