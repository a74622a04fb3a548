//! Rate functions phi(k) = B log theta(k) and the Property II rate psi, plus
//! an ordinary least-squares fit of measured radii against log theta.

use serde::Serialize;

use crate::arith::ball::{ln_q, Q};
use crate::error::{Error, Result};

pub fn log_theta(theta: &Q) -> Result<f64> {
    if *theta <= Q::from_integer(0.into()) {
        return Err(Error::InvalidArgument(format!("theta = {theta} must be positive")));
    }
    Ok(ln_q(theta, 64).to_f64())
}

/// Default Property I constant B = 2 / C.
pub fn default_b(c: f64) -> f64 {
    2.0 / c
}

pub fn phi_rate(b: f64, theta: &Q) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::InvalidArgument(format!("B = {b} must be positive")));
    }
    Ok(b * log_theta(theta)?)
}

/// max{C1, ((sigma+1)/C2) log(theta / (A^sigma / 2)^(1/(sigma+1)))}.
pub fn psi_rate(sigma: u32, a: f64, c1: f64, c2: f64, theta: &Q) -> Result<f64> {
    if sigma < 1 {
        return Err(Error::InvalidArgument("sigma must be at least 1".into()));
    }
    for (name, v) in [("A", a), ("C1", c1), ("C2", c2)] {
        if !(v > 0.0) {
            return Err(Error::InvalidArgument(format!("{name} = {v} must be positive")));
        }
    }
    let s = sigma as f64;
    let shift = (s * a.ln() - 2f64.ln()) / (s + 1.0);
    let t = (s + 1.0) / c2 * (log_theta(theta)? - shift);
    Ok(c1.max(t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
}

/// Least-squares line through (x, y); None with fewer than two distinct x.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len() as f64;
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    Some(LinearFit {
        slope,
        intercept,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::q_int;

    #[test]
    fn phi_examples() {
        let b = 2.0 / 2f64.ln();
        assert!((phi_rate(b, &q_int(2)).unwrap() - 2.0).abs() < 1e-12);
        for k in 1..8 {
            assert!((phi_rate(b, &q_int(1 << k)).unwrap() - 2.0 * k as f64).abs() < 1e-9);
        }
        assert_eq!(phi_rate(3.0, &q_int(1)).unwrap(), 0.0);
        assert!(phi_rate(0.0, &q_int(2)).is_err());
    }

    #[test]
    fn psi_examples() {
        // theta = e is not rational; log theta = 1 is reached through a ratio close to e
        let e = Q::from_float(std::f64::consts::E).unwrap();
        assert!((psi_rate(1, 2.0, 0.1, 1.0, &e).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(psi_rate(1, 4.0, 0.5, 1.0, &q_int(1)).unwrap(), 0.5);
        let l2 = 2f64.ln();
        for k in 1..6 {
            let v = psi_rate(1, 1.0, 1.0, l2, &q_int(1 << k)).unwrap();
            assert!((v - (2.0 * k as f64 + 1.0)).abs() < 1e-9);
        }
        assert!(psi_rate(0, 1.0, 1.0, 1.0, &q_int(2)).is_err());
        assert!(psi_rate(1, -1.0, 1.0, 1.0, &q_int(2)).is_err());
    }

    #[test]
    fn fit_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let f = fit_line(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-12));
        assert!(fit_line(&[1.0], &[1.0]).is_none());
    }
}
