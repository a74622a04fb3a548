//! Windowed radius scans: check a property at every nonzero n with
//! ||n|| <= R and report the largest violating norm.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ball::Q;
use crate::error::{Error, Result};
use crate::laurent::{shell_order, ExponentVector, Norm};
use crate::system::System;
use crate::uniformity::enumerate::ExhaustiveSet;
use crate::uniformity::property::{witness, Property};

/// Anything that can be asked for a violation of a property at n.
pub trait PropertyCheck: Sync {
    fn dim(&self) -> usize;

    /// A rendered witness when the property fails at n.
    fn violation(&self, n: &ExponentVector, property: Property) -> Result<Option<String>>;
}

/// A cyclic system together with one of its exhaustive sets.
pub struct LeafCheck<'a> {
    pub sys: &'a System,
    pub set: &'a ExhaustiveSet,
}

impl PropertyCheck for LeafCheck<'_> {
    fn dim(&self) -> usize {
        self.sys.dim()
    }

    fn violation(&self, n: &ExponentVector, property: Property) -> Result<Option<String>> {
        Ok(witness(self.sys, self.set, n, property)?.map(|a| self.sys.pres.format(&a)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub element: String,
    pub n: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusReport {
    pub k: u32,
    #[serde(serialize_with = "crate::uniformity::scan::ser_q")]
    pub theta: Q,
    pub property: Property,
    pub scan_radius: f64,
    /// Largest ||n|| at which the property failed, the empirical r(k).
    pub last_violation: Option<Norm>,
    pub boundary_hit: bool,
    pub witness: Option<Witness>,
    pub violations: usize,
    pub checked: usize,
}

pub(crate) fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl RadiusReport {
    /// r(k) as a float, 0 when no violation was seen.
    pub fn radius(&self) -> f64 {
        self.last_violation.map(|n| n.value()).unwrap_or(0.0)
    }

    pub const CSV_HEADER: &'static str = "k,theta,property,variant,r,r_decimal,r_width,boundary_hit,witness";

    pub fn csv_row(&self) -> String {
        let (r, dec, width) = match &self.last_violation {
            None => ("none".to_string(), "0".to_string(), "0".to_string()),
            Some(n) => {
                let (d, w) = norm_decimal(n);
                (n.to_string(), d, w)
            }
        };
        let w = match &self.witness {
            Some(w) => format!("\"a={} n={}\"", w.element, w.n),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.k,
            self.theta,
            self.property.name(),
            self.property.variant(),
            r,
            dec,
            width,
            self.boundary_hit,
            w
        )
    }
}

/// Lower decimal bound of sqrt(N) to 12 places and the width of the
/// enclosing interval (0 when the root is exact).
fn norm_decimal(n: &Norm) -> (String, String) {
    let scale = BigInt::from(10u64).pow(12);
    let big = BigInt::from(n.squared) * &scale * &scale;
    let root = big.sqrt();
    let exact = &root * &root == big;
    let int = &root / &scale;
    let frac = (&root % &scale).to_u64().unwrap();
    let dec = format!("{int}.{frac:012}");
    (dec, if exact { "0".into() } else { "1e-12".into() })
}

/// Scans every nonzero n with ||n|| <= window in shell order.
pub fn scan_radius<C: PropertyCheck>(
    check: &C,
    k: u32,
    theta: &Q,
    property: Property,
    window: f64,
) -> Result<RadiusReport> {
    if !(window >= 1.0) {
        return Err(Error::InvalidArgument(format!("window radius {window} must be at least 1")));
    }
    if *theta <= Q::one() {
        return Err(Error::InvalidArgument(format!("scans need theta > 1, got {theta}")));
    }
    let ns = shell_order(check.dim(), window);
    let results: Vec<Option<String>> = ns
        .par_iter()
        .map(|n| check.violation(n, property))
        .collect::<Result<_>>()?;
    let mut report = RadiusReport {
        k,
        theta: theta.clone(),
        property,
        scan_radius: window,
        last_violation: None,
        boundary_hit: false,
        witness: None,
        violations: 0,
        checked: ns.len(),
    };
    for (n, w) in ns.iter().zip(results) {
        if let Some(a) = w {
            report.violations += 1;
            let norm = n.norm();
            if norm.value() > window - 1.0 {
                report.boundary_hit = true;
            }
            // shell order is nondecreasing in the norm
            report.last_violation = Some(norm);
            report.witness = Some(Witness { element: a, n: n.clone() });
        }
    }
    Ok(report)
}

/// Property check at every n of a window, in shell order; true = holds.
pub fn property_map<C: PropertyCheck>(check: &C, property: Property, window: f64) -> Result<Vec<(ExponentVector, bool)>> {
    let ns = shell_order(check.dim(), window);
    let v: Vec<bool> = ns
        .par_iter()
        .map(|n| check.violation(n, property).map(|w| w.is_none()))
        .collect::<Result<_>>()?;
    Ok(ns.into_iter().zip(v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::q_int;
    use crate::config::SystemConfig;
    use crate::uniformity::enumerate::{enumerate_hk, DEFAULT_CAP};

    fn x2() -> System {
        let t = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\nmaximality_attested=true\n";
        System::from_config(&SystemConfig::from_str_toml(t).unwrap(), 128).unwrap()
    }

    #[test]
    fn x2_radii_at_theta_two() {
        let s = x2();
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        let c = LeafCheck { sys: &s, set: &h };
        for p in [Property::I, Property::IiLiteral] {
            let r = scan_radius(&c, 1, &q_int(2), p, 10.0).unwrap();
            assert_eq!(r.last_violation, Some(Norm { squared: 4 }), "{p}");
            assert!(!r.boundary_hit);
            assert_eq!(r.violations, 4);
        }
    }

    #[test]
    fn boundary_flag_and_rejections() {
        let s = x2();
        let h = enumerate_hk(&s, 3, &q_int(8), DEFAULT_CAP).unwrap();
        let c = LeafCheck { sys: &s, set: &h };
        let r = scan_radius(&c, 3, &q_int(8), Property::I, 5.0).unwrap();
        assert!(r.boundary_hit);
        assert!(scan_radius(&c, 3, &q_int(8), Property::I, 0.5).is_err());
        assert!(scan_radius(&c, 3, &q_int(1), Property::I, 5.0).is_err());
    }

    #[test]
    fn csv_rendering() {
        let (d, w) = norm_decimal(&Norm { squared: 2 });
        assert_eq!(d, "1.414213562373");
        assert_eq!(w, "1e-12");
        assert_eq!(norm_decimal(&Norm { squared: 9 }), ("3.000000000000".into(), "0".into()));
    }
}
