//! Exact character-sum forms of the correlation of two trigonometric
//! polynomials under alpha^n and of the periodic-point pairing.

use crate::error::{Error, Result};
use crate::field::places::in_ring;
use crate::harmonic::trig::{GaussQ, TrigPolynomial};
use crate::laurent::ExponentVector;
use crate::system::System;

/// int f(x) g(alpha^n x) dmu - int f dmu int g dmu
///   = sum over b != 0 in supp g of f^(-beta_n b) g^(b).
pub fn correlation(sys: &System, f: &TrigPolynomial, g: &TrigPolynomial, n: &ExponentVector) -> Result<GaussQ> {
    if n.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: n.dim(),
        });
    }
    let beta = sys.pres.monomial(n.entries());
    let mut acc = GaussQ::zero();
    for (b, gb) in g.terms() {
        if b.is_zero() {
            continue;
        }
        let a = sys.pres.neg(&sys.pres.mul(&beta, b));
        if let Some(fa) = f.coeff(&a) {
            acc = acc.add(&fa.mul(gb));
        }
    }
    Ok(acc)
}

/// int f dmu_n - int f dmu = sum over a != 0 in supp f with a in (beta_n - 1) M.
pub fn periodic_pairing(sys: &System, f: &TrigPolynomial, n: &ExponentVector) -> Result<GaussQ> {
    sys.require_mixing()?;
    if n.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: n.dim(),
        });
    }
    if n.is_zero() {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    let gamma = sys.pres.sub(&sys.pres.monomial(n.entries()), &sys.pres.one());
    let inv = sys.pres.inv(&gamma).ok_or(Error::NotMixing)?;
    let mut acc = GaussQ::zero();
    for (a, c) in f.terms() {
        if a.is_zero() {
            continue;
        }
        if in_ring(&sys.pres, &sys.places, &sys.pres.mul(a, &inv))? {
            acc = acc.add(c);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};
    use crate::config::{SystemConfig, TermConfig};

    fn x2() -> System {
        let t = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\nmaximality_attested=true\n";
        System::from_config(&SystemConfig::from_str_toml(t).unwrap(), 128).unwrap()
    }

    fn poly(s: &System, terms: &[(&str, &str)]) -> TrigPolynomial {
        let t: Vec<TermConfig> = terms
            .iter()
            .map(|(a, c)| TermConfig {
                support: a.to_string(),
                re: c.to_string(),
                im: "0".into(),
            })
            .collect();
        TrigPolynomial::from_terms(s, &t, "f").unwrap()
    }

    fn ev(n: i64) -> ExponentVector {
        ExponentVector(vec![n])
    }

    #[test]
    fn correlation_examples() {
        let s = x2();
        let f = poly(&s, &[("1", "1"), ("-1", "1")]);
        assert!(correlation(&s, &f, &f, &ev(3)).unwrap().is_zero());
        let f = poly(&s, &[("1", "1"), ("-2", "1")]);
        let g = poly(&s, &[("1", "1")]);
        assert_eq!(correlation(&s, &f, &g, &ev(1)).unwrap(), GaussQ::real(q_int(1)));
    }

    #[test]
    fn pairing_examples() {
        let s = x2();
        let f = poly(&s, &[("0", "2/3"), ("3", "5/7")]);
        assert_eq!(periodic_pairing(&s, &f, &ev(2)).unwrap(), GaussQ::real(q_frac(5, 7)));
        assert!(periodic_pairing(&s, &f, &ev(3)).unwrap().is_zero());
        let c = poly(&s, &[("0", "1")]);
        assert!(periodic_pairing(&s, &c, &ev(1)).unwrap().is_zero());
    }

    #[test]
    fn support_outside_module_rejected() {
        let s = x2();
        let t = vec![TermConfig {
            support: "1/3".into(),
            re: "1".into(),
            im: "0".into(),
        }];
        assert!(matches!(TrigPolynomial::from_terms(&s, &t, "f"), Err(Error::Malformed { .. })));
    }
}
