#![allow(dead_code)]

use std::path::PathBuf;

use algdyn::{FieldElement, Q, System, SystemConfig};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const STOCK: [&str; 6] = ["x2", "x3", "x2x3", "fibonacci", "ledrappier", "nonmix"];

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"))
}

pub fn stock(name: &str) -> System {
    let cfg = SystemConfig::from_path(&config_path(name)).unwrap();
    System::from_config(&cfg, 128).unwrap()
}

pub fn q(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn ord_p(mut x: BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut e = 0;
    while !x.is_zero() && x.is_multiple_of(&p) {
        x /= &p;
        e += 1;
    }
    e
}

fn pow(p: u32, e: u32) -> Q {
    Q::from_integer(BigInt::from(p).pow(e))
}

/// Nonzero rationals a in Z[1/primes] with 1/theta <= |a|_v <= theta at the
/// real place and at each listed prime, found by scanning every m / D with
/// |m| <= D theta.
pub fn naive_rational_set(primes: &[u32], theta: &Q) -> Vec<Q> {
    let mut den = BigInt::one();
    for &p in primes {
        let mut e = 0u32;
        while pow(p, e + 1) <= *theta {
            e += 1;
        }
        den *= BigInt::from(p).pow(e);
    }
    let dq = Q::from_integer(den.clone());
    let bound = (theta * &dq).floor().to_integer();
    let mut out = Vec::new();
    let mut m = -bound.clone();
    while m <= bound {
        if !m.is_zero() {
            let a = Q::new(m.clone(), den.clone());
            let inv = theta.recip();
            let ok = a.abs() <= *theta
                && a.abs() >= inv
                && primes.iter().all(|&p| {
                    let v = ord_p(a.numer().clone(), p) - ord_p(a.denom().clone(), p);
                    // |a|_p = p^(-v)
                    let abs = if v >= 0 { pow(p, v as u32).recip() } else { pow(p, (-v) as u32) };
                    abs <= *theta && abs >= inv
                })
                && {
                    // no primes outside S in the denominator
                    let mut d = a.denom().clone();
                    for &p in primes {
                        while d.is_multiple_of(&BigInt::from(p)) {
                            d /= BigInt::from(p);
                        }
                    }
                    d.is_one()
                };
            if ok {
                out.push(a);
            }
        }
        m += 1;
    }
    out.sort();
    out
}

pub fn rationals(xs: &[FieldElement]) -> Vec<Q> {
    let mut v: Vec<Q> = xs.iter().map(|x| x.as_rational().unwrap()).collect();
    v.sort();
    v
}
