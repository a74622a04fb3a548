//! The exhaustive sets H_k: nonzero module elements whose absolute values
//! at every place of S lie in [1/theta, theta].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arith::ball::{ln_q, q_to_f64, Q};
use crate::arith::integer::max_power_below;
use crate::error::{Error, Result};
use crate::field::function::RatFunc;
use crate::field::places::{archimedean_abs, is_s_integral, ord, Place, PlaceKind, PRECISION_CEILING};
use crate::field::presentation::{Backend, FieldElement};
use crate::poly::fp::FpPoly;
use crate::poly::qpoly::QPoly;
use crate::system::{Profile, System};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Candidate boxes larger than this multiple of the cap are refused up front.
const BOX_FACTOR: usize = 64;

/// The band [1/theta, theta] in the coordinates used by profiles.
#[derive(Clone, Debug)]
pub struct Band {
    pub theta: Q,
    pub log_theta: f64,
    /// E_v = max{e : N_v^e <= theta}, one per non-archimedean place of S.
    pub exps: Vec<i64>,
    tol: f64,
}

impl Band {
    pub fn new(sys: &System, theta: &Q) -> Result<Self> {
        if *theta < Q::one() {
            return Err(Error::InvalidArgument(format!("theta = {theta} is below 1")));
        }
        let exps = sys
            .places
            .iter()
            .filter(|v| !v.is_archimedean())
            .map(|v| {
                let n = v.residue_size(&sys.pres).unwrap();
                max_power_below(&n, theta.numer(), theta.denom()) as i64
            })
            .collect();
        let log_theta = ln_q(theta, 64).to_f64();
        Ok(Band {
            theta: theta.clone(),
            log_theta,
            exps,
            tol: 1e-9 * (1.0 + log_theta),
        })
    }

    /// Some(verdict) when the profile decides membership in the band,
    /// None when an archimedean coordinate is too close to the boundary.
    pub fn classify(&self, p: &Profile) -> Option<bool> {
        for (o, e) in p.ords.iter().zip(&self.exps) {
            if o.abs() > *e {
                return Some(false);
            }
        }
        let mut sure = true;
        for &l in &p.logs {
            let m = l.abs();
            if m > self.log_theta + self.tol {
                return Some(false);
            }
            if m > self.log_theta - self.tol {
                sure = false;
            }
        }
        if sure {
            Some(true)
        } else {
            None
        }
    }

    /// Exact decision for a nonzero element.
    pub fn contains(&self, sys: &System, x: &FieldElement) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        let mut e = self.exps.iter();
        for v in sys.places.iter() {
            if v.is_archimedean() {
                if !arch_in_band(sys, v, x, &self.theta)? {
                    return Ok(false);
                }
            } else {
                let bound = *e.next().unwrap();
                if ord(&sys.pres, v, x)?.abs() > bound {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn arch_in_band(sys: &System, v: &Place, x: &FieldElement, theta: &Q) -> Result<bool> {
    let inv = theta.recip();
    if let Some(r) = x.as_rational() {
        let a = r.abs();
        let a = if matches!(v.kind, PlaceKind::Complex { .. }) { &a * &a } else { a };
        return Ok(a <= *theta && a >= inv);
    }
    let mut prec = 64;
    loop {
        let b = archimedean_abs(&sys.pres, v, x, prec)?;
        if b.lower() > *theta || b.upper() < inv {
            return Ok(false);
        }
        if b.upper() <= *theta && b.lower() >= inv {
            return Ok(true);
        }
        if prec >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                context: format!("comparing |{}| at {} with theta = {theta}", sys.pres.format(x), v.label),
            });
        }
        prec *= 2;
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveSet {
    pub k: u32,
    pub theta: Q,
    /// Nonzero members in ascending order; zero is implicit.
    pub elements: Vec<FieldElement>,
    pub(crate) profiles: Vec<Profile>,
    pub(crate) band: Band,
}

impl ExhaustiveSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership of a nonzero element (zero is reported as absent).
    pub fn contains(&self, x: &FieldElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn band(&self) -> &Band {
        &self.band
    }
}

/// Enumerates H for the bound theta. Candidates come from a box that
/// provably contains the set; each is then filtered exactly.
pub fn enumerate_hk(sys: &System, k: u32, theta: &Q, cap: usize) -> Result<ExhaustiveSet> {
    if !sys.pres.maximality_attested() {
        return Err(Error::MaximalityNotAttested);
    }
    let band = Band::new(sys, theta)?;
    let mut elements = match sys.pres.backend() {
        Backend::Number(k) if k.degree() == 1 => enumerate_rational(sys, &band, cap)?,
        Backend::Number(_) => enumerate_number(sys, &band, cap)?,
        Backend::Function { q } => enumerate_function(sys, &band, *q, cap)?,
    };
    if elements.len() > cap {
        return Err(Error::SetTooLarge { cap });
    }
    elements.sort();
    let profiles = elements
        .par_iter()
        .map(|a| sys.profile(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExhaustiveSet {
        k,
        theta: theta.clone(),
        elements,
        profiles,
        band,
    })
}

fn box_limit(cap: usize) -> u128 {
    (cap.max(1 << 14) as u128) * BOX_FACTOR as u128
}

/// D = prod p^E_p with E_p = max over S-places v above p of ceil(E_v / e_v),
/// so that D a is integral at every finite place.
fn denominator_bound(sys: &System, band: &Band) -> BigInt {
    let mut need: std::collections::BTreeMap<BigUint, i64> = Default::default();
    let fin = sys.places.iter().filter(|v| !v.is_archimedean());
    for (v, &e) in fin.zip(&band.exps) {
        if let PlaceKind::Finite { prime, ramification, .. } = &v.kind {
            let t = Integer::div_ceil(&e, &(*ramification as i64));
            let slot = need.entry(prime.clone()).or_insert(0);
            *slot = (*slot).max(t);
        }
    }
    need.into_iter()
        .fold(BigInt::one(), |acc, (p, t)| acc * BigInt::from(p).pow(t as u32))
}

fn enumerate_rational(sys: &System, band: &Band, cap: usize) -> Result<Vec<FieldElement>> {
    let d = denominator_bound(sys, band);
    let m_max = (&d * band.theta.numer()).div_floor(band.theta.denom());
    let m = m_max.to_i64().filter(|&m| (2 * m as u128 + 1) <= box_limit(cap));
    let Some(m) = m else {
        return Err(Error::SetTooLarge { cap });
    };
    (1..=m)
        .into_par_iter()
        .flat_map_iter(|i| [i, -i])
        .filter_map(|i| {
            let a = Q::new(BigInt::from(i), d.clone());
            let x = FieldElement::Number(QPoly::constant(a));
            match band.contains(sys, &x) {
                Ok(true) => Some(Ok(x)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect()
}

fn enumerate_number(sys: &System, band: &Band, cap: usize) -> Result<Vec<FieldElement>> {
    let k = sys.pres.number_field().unwrap();
    let n = k.degree();
    let scale = k.index_bound() * denominator_bound(sys, band);
    let scale_f = scale.to_f64().unwrap_or(f64::INFINITY);
    let theta_f = q_to_f64(&band.theta);
    let roots: Vec<(f64, f64)> = k.roots().iter().map(|r| r.approx()).collect();
    // |sigma(c)| <= hi_k and >= lo_k for c = scale * a
    let (hi, lo): (Vec<f64>, Vec<f64>) = k
        .roots()
        .iter()
        .map(|r| {
            let t = if r.real { theta_f } else { theta_f.sqrt() };
            (scale_f * t, scale_f / t)
        })
        .unzip();
    let w = inverse_vandermonde(&roots);
    let mut bounds = Vec::with_capacity(n);
    for row in &w {
        let b: f64 = row.iter().zip(&hi).map(|(z, h)| (z.0 * z.0 + z.1 * z.1).sqrt() * h).sum();
        let b = (b * (1.0 + 1e-9) + 1e-6).floor();
        if !b.is_finite() || b > 1e15 {
            return Err(Error::SetTooLarge { cap });
        }
        bounds.push(b as i64);
    }
    let total: u128 = bounds.iter().map(|&b| 2 * b as u128 + 1).product();
    if total > box_limit(cap) {
        return Err(Error::SetTooLarge { cap });
    }
    let scale_q = Q::from_integer(scale.clone());
    (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rest = idx;
            let mut c = Vec::with_capacity(n);
            for &b in &bounds {
                let m = 2 * b as u64 + 1;
                c.push((rest % m) as i64 - b);
                rest /= m;
            }
            if c.iter().all(|&x| x == 0) {
                return None;
            }
            for (i, r) in roots.iter().enumerate() {
                let z = horner(&c, *r);
                let m = (z.0 * z.0 + z.1 * z.1).sqrt();
                if m > hi[i] * (1.0 + 1e-7) || m < lo[i] * (1.0 - 1e-7) {
                    return None;
                }
            }
            let a = QPoly::new(c.iter().map(|&x| Q::from_integer(x.into()) / &scale_q).collect());
            let x = FieldElement::Number(a);
            let keep = is_s_integral(&sys.pres, &sys.places, &x).and_then(|ok| {
                if ok {
                    band.contains(sys, &x)
                } else {
                    Ok(false)
                }
            });
            match keep {
                Ok(true) => Some(Ok(x)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect()
}

fn horner(c: &[i64], r: (f64, f64)) -> (f64, f64) {
    let (mut pr, mut pi) = (0.0f64, 0.0f64);
    for &x in c.iter().rev() {
        let nr = pr * r.0 - pi * r.1 + x as f64;
        let ni = pr * r.1 + pi * r.0;
        pr = nr;
        pi = ni;
    }
    (pr, pi)
}

/// W = V^-1 for V[k][j] = r_k^j, by Gauss-Jordan in complex f64.
/// Row j of W gives c_j = sum_k W[j][k] sigma_k(c).
fn inverse_vandermonde(roots: &[(f64, f64)]) -> Vec<Vec<(f64, f64)>> {
    let n = roots.len();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let inv = |a: (f64, f64)| {
        let d = a.0 * a.0 + a.1 * a.1;
        (a.0 / d, -a.1 / d)
    };
    let mut a: Vec<Vec<(f64, f64)>> = roots
        .iter()
        .map(|&r| {
            let mut row = Vec::with_capacity(2 * n);
            let mut p = (1.0, 0.0);
            for _ in 0..n {
                row.push(p);
                p = mul(p, r);
            }
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i == j { (1.0, 0.0) } else { (0.0, 0.0) });
        }
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| {
                let mx = a[x][col].0.hypot(a[x][col].1);
                let my = a[y][col].0.hypot(a[y][col].1);
                mx.partial_cmp(&my).unwrap()
            })
            .unwrap();
        a.swap(col, piv);
        let f = inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = mul(*x, f);
        }
        for r in 0..n {
            if r != col {
                let g = a[r][col];
                for j in 0..2 * n {
                    let t = mul(g, a[col][j]);
                    a[r][j] = (a[r][j].0 - t.0, a[r][j].1 - t.1);
                }
            }
        }
    }
    // a = [I | V^-1], where V^-1 has rows indexed by j (coefficients)
    (0..n).map(|j| a[j][n..].to_vec()).collect()
}

fn enumerate_function(sys: &System, band: &Band, q: u64, cap: usize) -> Result<Vec<FieldElement>> {
    let mut den = FpPoly::one(q);
    let mut inf_exp = None;
    let fin = sys.places.iter().filter(|v| !v.is_archimedean());
    for (v, &e) in fin.zip(&band.exps) {
        match &v.kind {
            PlaceKind::FunctionFinite { poly } => den = den.mul(&poly.pow(e as u64)),
            PlaceKind::FunctionInfinity => inf_exp = Some(e),
            _ => unreachable!(),
        }
    }
    let deg_bound = den.deg() as i64 + inf_exp.unwrap_or(0);
    let total = (q as u128).checked_pow(deg_bound as u32 + 1);
    let total = match total {
        Some(t) if t <= box_limit(cap) => t as u64,
        _ => return Err(Error::SetTooLarge { cap }),
    };
    (1..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rest = idx;
            let mut coeffs = Vec::with_capacity(deg_bound as usize + 1);
            while rest > 0 {
                coeffs.push(rest % q);
                rest /= q;
            }
            let x = FieldElement::Function(RatFunc::new(FpPoly::new(q, coeffs), den.clone()));
            match band.contains(sys, &x) {
                Ok(true) => Some(Ok(x)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};
    use crate::config::SystemConfig;

    fn sys(text: &str) -> System {
        System::from_config(&SystemConfig::from_str_toml(text).unwrap(), 128).unwrap()
    }

    const X2: &str = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\nmaximality_attested=true\n";
    const FIB: &str = "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\nmaximality_attested=true\n";
    const LED: &str = "[system]\nname='led'\nd=2\ncharacteristic=2\n[field]\nbase_q=2\ngenerator_images=['t','1+t']\nmaximality_attested=true\n";

    fn rationals(h: &ExhaustiveSet) -> Vec<Q> {
        h.elements.iter().map(|x| x.as_rational().unwrap()).collect()
    }

    #[test]
    fn x2_theta_two() {
        let s = sys(X2);
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        let want = [q_int(-2), q_frac(-3, 2), q_int(-1), q_frac(-1, 2), q_frac(1, 2), q_int(1), q_frac(3, 2), q_int(2)];
        assert_eq!(rationals(&h), want);
    }

    #[test]
    fn theta_one_gives_signs() {
        let s = sys(X2);
        let h = enumerate_hk(&s, 0, &q_int(1), DEFAULT_CAP).unwrap();
        assert_eq!(rationals(&h), vec![q_int(-1), q_int(1)]);
        assert!(enumerate_hk(&s, 0, &q_frac(1, 2), DEFAULT_CAP).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let s = sys(X2);
        assert_eq!(
            enumerate_hk(&s, 1, &q_int(64), 10).unwrap_err(),
            Error::SetTooLarge { cap: 10 }
        );
    }

    #[test]
    fn fibonacci_units_and_band() {
        let s = sys(FIB);
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        let phi = s.pres.parse_element("x").unwrap();
        let phi_inv = s.pres.parse_element("x - 1").unwrap();
        assert!(h.contains(&phi) && h.contains(&phi_inv));
        assert!(h.contains(&s.pres.one()));
        // 1 + phi = phi^2 has |.| = 2.618 at one embedding
        assert!(!h.contains(&s.pres.parse_element("x + 1").unwrap()));
        for x in &h.elements {
            assert!(h.band.contains(&s, x).unwrap());
        }
        let h2 = enumerate_hk(&s, 2, &q_int(4), DEFAULT_CAP).unwrap();
        assert!(h.elements.iter().all(|x| h2.contains(x)));
        assert!(h2.len() > h.len());
    }

    #[test]
    fn ledrappier_band() {
        let s = sys(LED);
        let h = enumerate_hk(&s, 1, &q_int(2), DEFAULT_CAP).unwrap();
        let t = s.pres.parse_element("t").unwrap();
        let u = s.pres.parse_element("1/(t*(1+t))").unwrap();
        assert!(h.contains(&t));
        assert!(h.contains(&s.pres.one()));
        // |t^2|_t = 1/4 < 1/2
        assert!(!h.contains(&s.pres.parse_element("t^2").unwrap()));
        // 1/(t(1+t)) has |.|_inf = 1/4
        assert!(!h.contains(&u));
        for x in &h.elements {
            assert!(is_s_integral(&s.pres, &s.places, x).unwrap());
        }
    }

    #[test]
    fn vandermonde_inverse_roundtrip() {
        let roots = [(1.5, 0.0), (-0.5, 2.0), (-0.5, -2.0)];
        let w = inverse_vandermonde(&roots);
        let c = [3i64, -1, 2];
        let sig: Vec<(f64, f64)> = roots.iter().map(|&r| horner(&c, r)).collect();
        for (j, row) in w.iter().enumerate() {
            let mut s = (0.0, 0.0);
            for (z, v) in row.iter().zip(&sig) {
                s.0 += z.0 * v.0 - z.1 * v.1;
                s.1 += z.0 * v.1 + z.1 * v.0;
            }
            assert!((s.0 - c[j] as f64).abs() < 1e-9 && s.1.abs() < 1e-9);
        }
    }
}
