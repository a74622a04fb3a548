//! Brute-force checks of the trivial-intersection properties on one
//! exhaustive set:
//!
//! * I: no nonzero a in H with beta_n a in H;
//! * II literal: no nonzero a in H with (beta_n - 1) a in H;
//! * II strong: no nonzero a in M with (beta_n - 1) a in H.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::places::in_ring;
use crate::field::presentation::FieldElement;
use crate::laurent::ExponentVector;
use crate::system::{Profile, System};
use crate::uniformity::enumerate::ExhaustiveSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    I,
    IiLiteral,
    IiStrong,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::I => "I",
            Property::IiLiteral | Property::IiStrong => "II",
        }
    }

    pub fn variant(&self) -> &'static str {
        match self {
            Property::I => "",
            Property::IiLiteral => "literal",
            Property::IiStrong => "strong",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::I => "I",
            Property::IiLiteral => "II",
            Property::IiStrong => "II-strong",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(Property::I),
            "II" | "ii" | "II-literal" => Ok(Property::IiLiteral),
            "II-strong" | "ii-strong" => Ok(Property::IiStrong),
            _ => Err(Error::InvalidArgument(format!("unknown property `{s}` (expected I, II or II-strong)"))),
        }
    }
}

fn add_profiles(a: &Profile, b: &Profile) -> Profile {
    Profile {
        ords: a.ords.iter().zip(&b.ords).map(|(x, y)| x + y).collect(),
        logs: a.logs.iter().zip(&b.logs).map(|(x, y)| x + y).collect(),
    }
}

/// First a in H (in set order) with m a in H, where m is an S-integer with
/// profile `pm`. Products of S-integers stay in M, so only the band matters.
fn multiplier_witness(sys: &System, h: &ExhaustiveSet, m: &FieldElement, pm: &Profile) -> Result<Option<FieldElement>> {
    for (a, pa) in h.elements.iter().zip(&h.profiles) {
        let hit = match h.band.classify(&add_profiles(pa, pm)) {
            Some(v) => v,
            None => h.band.contains(sys, &sys.pres.mul(m, a))?,
        };
        if hit {
            return Ok(Some(a.clone()));
        }
    }
    Ok(None)
}

fn check_n(sys: &System, n: &ExponentVector) -> Result<()> {
    if n.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: n.dim(),
        });
    }
    if n.is_zero() {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    Ok(())
}

/// A witness a in H with beta_n a in H, if any.
pub fn property_i_witness(sys: &System, h: &ExhaustiveSet, n: &ExponentVector) -> Result<Option<FieldElement>> {
    check_n(sys, n)?;
    let beta = sys.pres.monomial(n.entries());
    multiplier_witness(sys, h, &beta, &sys.monomial_profile(n.entries()))
}

/// True when H and u^n H meet only in 0.
pub fn check_property_i(sys: &System, h: &ExhaustiveSet, n: &ExponentVector) -> Result<bool> {
    Ok(property_i_witness(sys, h, n)?.is_none())
}

/// A witness for the failure of Property II at n: an element a (of H for
/// the literal variant, of M for the strong one) with (beta_n - 1) a in H.
pub fn property_ii_witness(
    sys: &System,
    h: &ExhaustiveSet,
    n: &ExponentVector,
    strong: bool,
) -> Result<Option<FieldElement>> {
    check_n(sys, n)?;
    let gamma = sys.pres.sub(&sys.pres.monomial(n.entries()), &sys.pres.one());
    if gamma.is_zero() {
        // (u^n - 1) kills everything, so the intersection is {0}
        return Ok(None);
    }
    if !strong {
        let pg = sys.profile(&gamma)?;
        return multiplier_witness(sys, h, &gamma, &pg);
    }
    let gamma_inv = sys.pres.inv(&gamma).unwrap();
    if let Some(g) = gamma.as_rational() {
        // a = h / gamma lies in Z[1/S] iff the S-free part of num(gamma) divides num(h)
        let mut free = g.numer().clone();
        for p in sys.places.primes().keys() {
            free = crate::arith::integer::strip_prime(&free, p);
        }
        let free = num_traits::Signed::abs(&free);
        for x in &h.elements {
            let r = x.as_rational().unwrap();
            if free.is_one() || r.numer().is_multiple_of(&free) {
                return Ok(Some(sys.pres.mul(x, &gamma_inv)));
            }
        }
        return Ok(None);
    }
    for x in &h.elements {
        let a = sys.pres.mul(x, &gamma_inv);
        if in_ring(&sys.pres, &sys.places, &a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn check_property_ii(sys: &System, h: &ExhaustiveSet, n: &ExponentVector, strong: bool) -> Result<bool> {
    Ok(property_ii_witness(sys, h, n, strong)?.is_none())
}

pub fn witness(sys: &System, h: &ExhaustiveSet, n: &ExponentVector, p: Property) -> Result<Option<FieldElement>> {
    match p {
        Property::I => property_i_witness(sys, h, n),
        Property::IiLiteral => property_ii_witness(sys, h, n, false),
        Property::IiStrong => property_ii_witness(sys, h, n, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::arith::ball::{q_frac, q_int};
    use crate::config::SystemConfig;
    use crate::uniformity::enumerate::{enumerate_hk, DEFAULT_CAP};

    fn sys(text: &str) -> System {
        System::from_config(&SystemConfig::from_str_toml(text).unwrap(), 128).unwrap()
    }

    const X2: &str = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\nmaximality_attested=true\n";
    const FIB: &str = "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\nmaximality_attested=true\n";

    fn ev(n: &[i64]) -> ExponentVector {
        ExponentVector(n.to_vec())
    }

    #[test]
    fn x2_property_i() {
        let s = sys(X2);
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        let w = property_i_witness(&s, &h, &ev(&[1])).unwrap().unwrap();
        assert!(h.contains(&s.pres.mul(&s.pres.monomial(&[1]), &w)));
        assert!(check_property_i(&s, &h, &ev(&[3])).unwrap());
        let w = property_i_witness(&s, &h, &ev(&[-2])).unwrap().unwrap();
        assert_eq!(w.as_rational().unwrap().abs(), q_int(2));
        assert!(check_property_i(&s, &h, &ev(&[0])).is_err());
    }

    #[test]
    fn x2_property_ii() {
        let s = sys(X2);
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        assert!(!check_property_ii(&s, &h, &ev(&[1]), false).unwrap());
        assert!(check_property_ii(&s, &h, &ev(&[3]), false).unwrap());
        let w = property_ii_witness(&s, &h, &ev(&[2]), true).unwrap().unwrap();
        assert!(h.contains(&s.pres.mul(&s.pres.from_q(&q_int(3)).unwrap(), &w)));
        // 1/2 is such a witness: 3 * 1/2 = 3/2
        let a = s.pres.from_q(&q_frac(1, 2)).unwrap();
        assert!(h.contains(&s.pres.mul(&s.pres.from_q(&q_int(3)).unwrap(), &a)));
    }

    #[test]
    fn strong_implies_literal_on_fibonacci() {
        let s = sys(FIB);
        let h = enumerate_hk(&s, 2, &q_int(4), DEFAULT_CAP).unwrap();
        for n in 1..8 {
            let strong = check_property_ii(&s, &h, &ev(&[n]), true).unwrap();
            let literal = check_property_ii(&s, &h, &ev(&[n]), false).unwrap();
            assert!(!strong || literal, "n = {n}");
        }
    }

    #[test]
    fn symmetry_of_property_i() {
        let s = sys(FIB);
        let h = enumerate_hk(&s, 2, &q_int(4), DEFAULT_CAP).unwrap();
        for n in 1..6 {
            assert_eq!(
                check_property_i(&s, &h, &ev(&[n])).unwrap(),
                check_property_i(&s, &h, &ev(&[-n])).unwrap()
            );
        }
    }

    #[test]
    fn property_names_roundtrip() {
        for p in [Property::I, Property::IiLiteral, Property::IiStrong] {
            assert_eq!(p.to_string().parse::<Property>().unwrap(), p);
        }
    }
}
