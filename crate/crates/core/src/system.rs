//! An analyzed cyclic system: presentation, the place set S, Lyapunov data
//! and the mixing verdict, computed once and shared by the downstream
//! algorithms.

use crate::arith::ball::{Ball, Q};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::field::places::{archimedean_abs, discover_places, ord, PlaceSet};
use crate::field::presentation::{parse_presentation, FieldElement, Presentation};
use crate::lyapunov::{is_mixing, lyapunov_vectors, separation_constant, vectors_f64, Constant, LyapunovData};

#[derive(Clone, Debug)]
pub struct System {
    pub pres: Presentation,
    pub places: PlaceSet,
    pub lyapunov: LyapunovData,
    pub mixing: bool,
    /// log|g_i|_v as f64, rows indexed like `places`.
    log_rows: Vec<Vec<f64>>,
}

/// A nonzero element seen through its S-absolute values: exact orders at
/// the non-archimedean places of S and f64 logarithms at the archimedean
/// ones (both in S order).
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub ords: Vec<i64>,
    pub logs: Vec<f64>,
}

impl System {
    pub fn new(pres: Presentation, precision: u32) -> Result<Self> {
        let places = discover_places(&pres)?;
        let mut lyapunov = lyapunov_vectors(&pres, &places, precision)?;
        let mixing = is_mixing(&pres, &mut lyapunov)?;
        let log_rows = vectors_f64(&lyapunov);
        Ok(System {
            pres,
            places,
            lyapunov,
            mixing,
            log_rows,
        })
    }

    pub fn from_config(cfg: &SystemConfig, precision: u32) -> Result<Self> {
        System::new(parse_presentation(cfg)?, precision)
    }

    pub fn dim(&self) -> usize {
        self.pres.dim()
    }

    pub fn require_mixing(&self) -> Result<()> {
        if self.mixing {
            Ok(())
        } else {
            Err(Error::NotMixing)
        }
    }

    pub fn separation_constant(&self) -> Result<Constant> {
        separation_constant(&self.lyapunov)
    }

    /// Profile of beta_n, read off the Lyapunov data.
    pub fn monomial_profile(&self, n: &[i64]) -> Profile {
        let mut p = Profile {
            ords: Vec::new(),
            logs: Vec::new(),
        };
        for (v, row) in self.places.iter().zip(&self.log_rows) {
            if v.is_archimedean() {
                p.logs.push(row.iter().zip(n).map(|(l, &k)| l * k as f64).sum());
            } else {
                p.ords.push(v.ord_monomial(n));
            }
        }
        p
    }

    /// Profile of an arbitrary nonzero element.
    pub fn profile(&self, x: &FieldElement) -> Result<Profile> {
        let mut p = Profile {
            ords: Vec::new(),
            logs: Vec::new(),
        };
        for v in self.places.iter() {
            if v.is_archimedean() {
                p.logs.push(log_abs_f64(&self.pres, v, x)?);
            } else {
                p.ords.push(ord(&self.pres, v, x)?);
            }
        }
        Ok(p)
    }
}

fn log_abs_f64(pres: &Presentation, v: &crate::field::places::Place, x: &FieldElement) -> Result<f64> {
    if let Some(r) = x.as_rational() {
        let b = Ball::exact(num_traits::Signed::abs(&r));
        return Ok(ln_f64(&b));
    }
    let b = archimedean_abs(pres, v, x, 60)?;
    Ok(ln_f64(&b))
}

fn ln_f64(b: &Ball) -> f64 {
    let q: &Q = b.mid();
    crate::arith::ball::ln_q(q, 64).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_are_additive() {
        let cfg = SystemConfig::from_str_toml(
            "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\nmaximality_attested=true\n",
        )
        .unwrap();
        let sys = System::from_config(&cfg, 128).unwrap();
        assert!(sys.mixing);
        let beta = sys.pres.monomial(&[3]);
        let direct = sys.profile(&beta).unwrap();
        let read = sys.monomial_profile(&[3]);
        assert_eq!(direct.ords, read.ords);
        for (a, b) in direct.logs.iter().zip(&read.logs) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
