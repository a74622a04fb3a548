//! Lyapunov vectors, mixing, directional entropy and the separation
//! constants C and C/sigma.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::ball::{q_int, Ball, Q};
use crate::arith::logcomb::LogCombination;
use crate::error::{Error, Result};
use crate::field::places::{archimedean_abs, PlaceKind, PlaceSet, PRECISION_CEILING};
use crate::field::presentation::Presentation;
use crate::poly::qpoly::rank_q;

/// One coordinate log|g_i|_v: an exact combination of prime logarithms
/// when available, always with an enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogValue {
    pub exact: Option<LogCombination>,
    pub ball: Ball,
}

impl LogValue {
    fn exact(c: LogCombination, prec: u32) -> Self {
        LogValue {
            ball: c.to_ball(prec),
            exact: Some(c),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.ball),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LyapunovData {
    pub d: usize,
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<LogValue>>,
    /// Integer orders of the generators at the non-archimedean places.
    pub ords: Vec<Vec<i64>>,
    pub archimedean_count: usize,
    pub sigma: usize,
    pub precision: u32,
    pub mixing: Option<bool>,
}

/// The separation constant (or C/sigma) as an enclosure, exact when d = 1
/// and the Lyapunov data are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub exact: Option<LogCombination>,
    pub ball: Ball,
}

impl Constant {
    pub fn to_f64(&self) -> f64 {
        self.ball.to_f64()
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.ball),
        }
    }
}

pub fn lyapunov_vectors(pres: &Presentation, s: &PlaceSet, prec: u32) -> Result<LyapunovData> {
    let d = pres.dim();
    let mut vectors = Vec::with_capacity(s.len());
    let mut ords = Vec::new();
    let mut arch = 0;
    for v in s.iter() {
        let mut row = Vec::with_capacity(d);
        if let Some((p, f)) = v.log_base(pres) {
            for &o in &v.generator_ords {
                let c = LogCombination::term(p.clone(), -Q::from_integer(BigInt::from(o * f as i64)));
                row.push(LogValue::exact(c, prec));
            }
            ords.push(v.generator_ords.clone());
        } else {
            arch += 1;
            let complex = matches!(v.kind, PlaceKind::Complex { .. });
            for g in pres.generators() {
                if let Some(r) = g.as_rational() {
                    let mut c = LogCombination::log_abs(&r);
                    if complex {
                        c = c.scale(&q_int(2));
                    }
                    row.push(LogValue::exact(c, prec));
                } else {
                    let b = archimedean_abs(pres, v, g, prec + 16)?;
                    let l = b.ln(prec + 16).expect("units are nonzero");
                    row.push(LogValue {
                        exact: None,
                        ball: l.round(prec + 8),
                    });
                }
            }
        }
        vectors.push(row);
    }
    let data = LyapunovData {
        d,
        labels: s.iter().map(|v| v.label.clone()).collect(),
        vectors,
        ords,
        archimedean_count: arch,
        sigma: s.len().saturating_sub(1),
        precision: prec,
        mixing: None,
    };
    for i in 0..d {
        let sum = coordinate_sum(&data, i);
        let ok = match &sum.exact {
            Some(c) => c.is_zero(),
            None => sum.ball.contains_zero(),
        };
        if !ok {
            return Err(Error::ProductFormulaViolation {
                coordinate: i + 1,
                sum: sum.to_string(),
            });
        }
    }
    Ok(data)
}

/// Sum over places of the i-th Lyapunov coordinate.
pub fn coordinate_sum(l: &LyapunovData, i: usize) -> LogValue {
    let mut exact = Some(LogCombination::zero());
    let mut ball = Ball::zero();
    for row in &l.vectors {
        ball = ball.add(&row[i].ball);
        exact = match (exact, &row[i].exact) {
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => None,
        };
    }
    LogValue { exact, ball }
}

fn rational_matrix(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| q_int(x)).collect())
        .collect()
}

/// Decides whether the Lyapunov vectors span R^d and records the answer.
pub fn is_mixing(pres: &Presentation, l: &mut LyapunovData) -> Result<bool> {
    let m = decide_mixing(pres, l)?;
    l.mixing = Some(m);
    Ok(m)
}

fn decide_mixing(pres: &Presentation, l: &LyapunovData) -> Result<bool> {
    let d = l.d;
    if l.vectors.len() < 2 {
        return Ok(false);
    }
    // With at most one archimedean place its row is minus the sum of the
    // others, and every other row is log(N_v) times an integer vector.
    if l.archimedean_count <= 1 {
        let rank = if l.ords.is_empty() { 0 } else { rank_q(rational_matrix(&l.ords)) };
        return Ok(rank == d);
    }
    let mut prec = l.precision.max(64);
    loop {
        if certified_full_rank(l, prec)? {
            return Ok(true);
        }
        if prec >= PRECISION_CEILING {
            break;
        }
        prec *= 2;
    }
    if let Some(_n) = torsion_relation(pres, l, 6) {
        return Ok(false);
    }
    Err(Error::RankUndecidable)
}

fn certified_full_rank(l: &LyapunovData, prec: u32) -> Result<bool> {
    let d = l.d;
    let rows = l.vectors.len();
    if rows < d {
        return Ok(false);
    }
    let balls: Vec<Vec<Ball>> = if prec <= l.precision {
        l.vectors.iter().map(|r| r.iter().map(|v| v.ball.clone()).collect()).collect()
    } else {
        // recompute only the enclosures that came from exact data
        l.vectors
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| match &v.exact {
                        Some(c) => c.to_ball(prec),
                        None => v.ball.clone(),
                    })
                    .collect()
            })
            .collect()
    };
    for subset in choose(rows, d) {
        let m: Vec<Vec<Ball>> = subset.iter().map(|&i| balls[i].clone()).collect();
        if !ball_det(m, prec).contains_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of a small ball matrix by cofactor expansion.
fn ball_det(m: Vec<Vec<Ball>>, prec: u32) -> Ball {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Ball::zero();
    for j in 0..n {
        let minor: Vec<Vec<Ball>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].mul(&ball_det(minor, prec));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc.round(prec + 16)
}

/// Searches for n != 0 with beta_n a root of unity (all Lyapunov vectors
/// orthogonal to n), which proves the vectors do not span.
fn torsion_relation(pres: &Presentation, l: &LyapunovData, bound: i64) -> Option<Vec<i64>> {
    let d = l.d;
    let mut n = vec![-bound; d];
    let max_order = 2 * (pres.degree() * pres.degree()) as u64 + 2;
    loop {
        if n.iter().any(|&x| x != 0)
            && l.ords.iter().all(|r| r.iter().zip(&n).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            let beta = pres.monomial(&n);
            let one = pres.one();
            let mut p = beta.clone();
            for _ in 0..max_order.max(pres.characteristic()) {
                if p == one {
                    return Some(n);
                }
                p = pres.mul(&p, &beta);
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            if n[i] < bound {
                n[i] += 1;
                break;
            }
            n[i] = -bound;
            i += 1;
        }
    }
}

fn dot(row: &[LogValue], w: &[Q]) -> Ball {
    row.iter()
        .zip(w)
        .fold(Ball::zero(), |acc, (l, x)| acc.add(&l.ball.scale(x)))
}

/// h(w) = sum_v max(l_v . w, 0), summing over all places of S.
pub fn directional_entropy(l: &LyapunovData, w: &[Q]) -> Result<Ball> {
    if w.len() != l.d {
        return Err(Error::DimensionMismatch {
            expected: l.d,
            got: w.len(),
        });
    }
    if w.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    Ok(l.vectors
        .iter()
        .fold(Ball::zero(), |acc, row| acc.add(&dot(row, w).positive_part()))
        .round(l.precision + 8))
}

fn require_mixing(l: &LyapunovData) -> Result<()> {
    match l.mixing {
        Some(true) => Ok(()),
        Some(false) => Err(Error::NotMixing),
        None => Err(Error::InvalidArgument("mixing status not computed".into())),
    }
}

/// C = min over unit z of max_v |l_v . z|.
pub fn separation_constant(l: &LyapunovData) -> Result<Constant> {
    require_mixing(l)?;
    let prec = l.precision;
    match l.d {
        1 => Ok(separation_d1(l)),
        2 => separation_d2(l, prec),
        _ => Ok(separation_grid(l)),
    }
}

fn separation_d1(l: &LyapunovData) -> Constant {
    let all_exact = l.vectors.iter().all(|r| r[0].exact.is_some());
    if all_exact {
        let mut best: Option<LogCombination> = None;
        for r in &l.vectors {
            let c = r[0].exact.clone().unwrap();
            let c = if c.signum() < 0 { c.neg() } else { c };
            best = match best {
                Some(b) if b.add(&c.neg()).signum() >= 0 => Some(b),
                _ => Some(c),
            };
        }
        let c = best.unwrap();
        return Constant {
            ball: c.to_ball(l.precision),
            exact: Some(c),
        };
    }
    let ball = l
        .vectors
        .iter()
        .map(|r| r[0].ball.abs())
        .reduce(|a, b| a.max(&b))
        .unwrap();
    Constant { exact: None, ball }
}

/// d = 2: the minimum of a maximum of |linear forms| on the circle sits at
/// a direction where two forms tie, i.e. z is perpendicular to l_i - l_j or
/// to l_i + l_j.
fn separation_d2(l: &LyapunovData, prec: u32) -> Result<Constant> {
    let vs: Vec<[Ball; 2]> = l.vectors.iter().map(|r| [r[0].ball.clone(), r[1].ball.clone()]).collect();
    let mut best: Option<Ball> = None;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for sign in [1i64, -1] {
                let s = q_int(sign);
                let u0 = vs[i][0].sub(&vs[j][0].scale(&s));
                let u1 = vs[i][1].sub(&vs[j][1].scale(&s));
                // z = (-u1, u0)
                let z = [u1.neg(), u0];
                let len2 = z[0].mul(&z[0]).add(&z[1].mul(&z[1]));
                if len2.contains_zero() {
                    continue;
                }
                let len = len2.sqrt(prec + 16);
                let inv = match len.inv() {
                    Some(x) => x,
                    None => continue,
                };
                let val = vs
                    .iter()
                    .map(|v| v[0].mul(&z[0]).add(&v[1].mul(&z[1])).abs())
                    .reduce(|a, b| a.max(&b))
                    .unwrap()
                    .mul(&inv)
                    .round(prec + 16);
                best = Some(match best {
                    None => val,
                    Some(b) => b.min(&val),
                });
            }
        }
    }
    let ball = best.ok_or(Error::NotMixing)?.round(prec + 4);
    if !ball.is_positive() {
        return Err(Error::PrecisionExhausted {
            bits: prec,
            context: "certifying C > 0".into(),
        });
    }
    Ok(Constant { exact: None, ball })
}

/// d >= 3: branch and bound over the faces of the cube [-1,1]^d. Radial
/// projection onto the sphere is 1-Lipschitz away from the origin and
/// z -> max_v |l_v . z| is Lipschitz with constant max_v |l_v|.
fn separation_grid(l: &LyapunovData) -> Constant {
    let d = l.d;
    let vs: Vec<Vec<f64>> = l.vectors.iter().map(|r| r.iter().map(|x| x.ball.to_f64()).collect()).collect();
    let lip = vs.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).fold(0.0, f64::max);
    let f = |y: &[f64]| -> f64 {
        let norm = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        vs.iter()
            .map(|v| v.iter().zip(y).map(|(a, b)| a * b).sum::<f64>().abs())
            .fold(0.0, f64::max)
            / norm
    };
    // patches: (fixed axis, sign, lower corner of the other coords, side)
    let mut stack: Vec<(usize, f64, Vec<f64>, f64)> = Vec::new();
    for axis in 0..d {
        // antipodal symmetry: only the + faces are needed
        stack.push((axis, 1.0, vec![-1.0; d - 1], 2.0));
    }
    let mut upper = f64::INFINITY;
    let mut lower = f64::INFINITY;
    let tol = 1e-9;
    let point = |axis: usize, sign: f64, corner: &[f64], side: f64| -> Vec<f64> {
        let mut y = Vec::with_capacity(d);
        let mut k = 0;
        for i in 0..d {
            if i == axis {
                y.push(sign);
            } else {
                y.push(corner[k] + side / 2.0);
                k += 1;
            }
        }
        y
    };
    while let Some((axis, sign, corner, side)) = stack.pop() {
        let c = point(axis, sign, &corner, side);
        let val = f(&c);
        upper = upper.min(val);
        let radius = side / 2.0 * ((d - 1) as f64).sqrt();
        let lb = val - lip * radius;
        if lb >= upper - tol || side < 1e-7 {
            lower = lower.min(lb.max(0.0).min(val));
            continue;
        }
        let half = side / 2.0;
        for mask in 0..(1usize << (d - 1)) {
            let sub: Vec<f64> = corner
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { x + half } else { x })
                .collect();
            stack.push((axis, sign, sub, half));
        }
    }
    let lo = lower.min(upper) - 1e-12;
    let hi = upper + 1e-12;
    Constant {
        exact: None,
        ball: Ball::from_bounds(Q::from_float(lo.max(0.0)).unwrap(), Q::from_float(hi).unwrap()),
    }
}

/// C / sigma.
pub fn one_sided_constant(l: &LyapunovData) -> Result<Constant> {
    let c = separation_constant(l)?;
    let inv = Q::new(BigInt::one(), BigInt::from(l.sigma.max(1)));
    Ok(Constant {
        exact: c.exact.map(|e| e.scale(&inv)),
        ball: c.ball.scale(&inv),
    })
}

/// Every rational prime appearing in an exact entry (for reporting).
pub fn primes_in(l: &LyapunovData) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = l
        .vectors
        .iter()
        .flatten()
        .filter_map(|v| v.exact.as_ref())
        .flat_map(|c| c.terms().keys().cloned().collect::<Vec<_>>())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// f64 view of the vectors.
pub fn vectors_f64(l: &LyapunovData) -> Vec<Vec<f64>> {
    l.vectors.iter().map(|r| r.iter().map(|x| x.ball.to_f64()).collect()).collect()
}

pub fn abs_max_entry(l: &LyapunovData) -> f64 {
    vectors_f64(l)
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;
    use crate::field::places::discover_places;
    use crate::field::presentation::parse_presentation;

    fn pres(text: &str) -> Presentation {
        parse_presentation(&SystemConfig::from_str_toml(text).unwrap()).unwrap()
    }

    fn data(text: &str) -> (Presentation, LyapunovData) {
        let p = pres(text);
        let s = discover_places(&p).unwrap();
        let mut l = lyapunov_vectors(&p, &s, 128).unwrap();
        is_mixing(&p, &mut l).unwrap();
        (p, l)
    }

    const X2X3: &str = "[system]\nname='x2x3'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3']\n";
    const X2: &str = "[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\n";
    const FIB: &str = "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\n";
    const LED: &str = "[system]\nname='led'\nd=2\ncharacteristic=2\n[field]\ngenerator_images=['t','1+t']\n";
    const NONMIX: &str = "[system]\nname='nm'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','2']\n";

    fn render(l: &LyapunovData) -> Vec<Vec<String>> {
        l.vectors.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn vectors_of_stock_systems() {
        let (_, l) = data(X2X3);
        assert_eq!(
            render(&l),
            vec![vec!["log(2)", "log(3)"], vec!["-log(2)", "0"], vec!["0", "-log(3)"]]
        );
        let (_, l) = data(LED);
        assert_eq!(
            render(&l),
            vec![vec!["-log(2)", "0"], vec!["0", "-log(2)"], vec!["log(2)", "log(2)"]]
        );
        let (_, l) = data(FIB);
        let v = vectors_f64(&l);
        let lphi = 1.618033988749895f64.ln();
        assert!((v[0][0] + lphi).abs() < 1e-15 && (v[1][0] - lphi).abs() < 1e-15);
        let s = coordinate_sum(&l, 0);
        assert!(s.ball.contains_zero() && s.ball.width() < crate::arith::ball::pow2(-66));
    }

    #[test]
    fn mixing_classification() {
        assert_eq!(data(X2X3).1.mixing, Some(true));
        assert_eq!(data(LED).1.mixing, Some(true));
        assert_eq!(data(FIB).1.mixing, Some(true));
        assert_eq!(data(NONMIX).1.mixing, Some(false));
        assert_eq!(separation_constant(&data(NONMIX).1), Err(Error::NotMixing));
    }

    #[test]
    fn real_quadratic_rank_two_by_minors() {
        // two independent units of Q(sqrt 2)... only rank one: 1+sqrt2 and its square
        let (_, l) = data("[system]\nname='q'\nd=2\n[field]\nmin_poly='x^2 - 2'\ngenerator_images=['1 + x', '3 + 2x']\n");
        assert_eq!(l.mixing, Some(false));
        // 1+sqrt2 and 3 span (3 contributes a finite place)
        let (_, l) = data("[system]\nname='q'\nd=2\n[field]\nmin_poly='x^2 - 2'\ngenerator_images=['1 + x', '3']\n");
        assert_eq!(l.mixing, Some(true));
    }

    #[test]
    fn separation_constants() {
        let (_, l) = data(X2);
        let c = separation_constant(&l).unwrap();
        assert_eq!(c.exact.unwrap().to_string(), "log(2)");
        let (_, l) = data(FIB);
        let c = separation_constant(&l).unwrap();
        assert!((c.to_f64() - 0.48121182505960347).abs() < 1e-15);
        let (_, l) = data(X2X3);
        let c = separation_constant(&l).unwrap();
        let (a, b) = (2f64.ln(), 3f64.ln());
        assert!((c.to_f64() - a * b / (a * a + b * b).sqrt()).abs() < 1e-15);
        let h = one_sided_constant(&l).unwrap();
        assert!((h.to_f64() - c.to_f64() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn grid_path_matches_crossings_in_d2_embedding() {
        // a d=3 system whose third generator repeats the first direction
        let (_, l) = data("[system]\nname='t'\nd=3\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3','5']\n");
        assert_eq!(l.mixing, Some(true));
        let c = separation_constant(&l).unwrap();
        // brute-force sphere sample upper bound
        let v = vectors_f64(&l);
        let mut best = f64::INFINITY;
        let steps = 120;
        for i in 0..=steps {
            let th = std::f64::consts::PI * i as f64 / steps as f64;
            for j in 0..(2 * steps) {
                let ph = std::f64::consts::PI * j as f64 / steps as f64;
                let z = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                let m = v.iter().map(|r| (r[0] * z[0] + r[1] * z[1] + r[2] * z[2]).abs()).fold(0.0, f64::max);
                best = best.min(m);
            }
        }
        assert!(c.ball.lower() <= Q::from_float(best).unwrap());
        assert!(c.to_f64() > 0.0 && best - c.to_f64() < 1e-2);
    }

    #[test]
    fn entropy() {
        let (_, l) = data(X2X3);
        let h = directional_entropy(&l, &[q_int(1), q_int(0)]).unwrap();
        assert!((h.to_f64() - 2f64.ln()).abs() < 1e-15);
        let h = directional_entropy(&l, &[q_int(0), q_int(1)]).unwrap();
        assert!((h.to_f64() - 3f64.ln()).abs() < 1e-15);
        assert!(directional_entropy(&l, &[q_int(0), q_int(0)]).is_err());
    }

    #[test]
    fn separation_property_on_integer_window() {
        for text in [X2X3, LED, X2, FIB] {
            let (_, l) = data(text);
            let c = separation_constant(&l).unwrap().to_f64();
            let v = vectors_f64(&l);
            for n in crate::laurent::shell_order(l.d, 10.0) {
                let norm = n.norm().value();
                let best = v
                    .iter()
                    .map(|r| r.iter().zip(n.entries()).map(|(a, &b)| a * b as f64).sum::<f64>().abs())
                    .fold(0.0, f64::max);
                assert!(best >= c * norm - 1e-9, "{n}");
            }
        }
    }

    fn x2x3_cached() -> &'static LyapunovData {
        static CELL: std::sync::OnceLock<LyapunovData> = std::sync::OnceLock::new();
        CELL.get_or_init(|| data(X2X3).1)
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn entropy_homogeneous_and_symmetric(a in -20i64..20, b in -20i64..20, lam in 1i64..9) {
            proptest::prop_assume!(a != 0 || b != 0);
            let l = x2x3_cached();
            let w = [q_int(a), q_int(b)];
            let h = directional_entropy(l, &w).unwrap();
            let hs = directional_entropy(l, &[q_int(a * lam), q_int(b * lam)]).unwrap();
            proptest::prop_assert!((hs.to_f64() - lam as f64 * h.to_f64()).abs() < 1e-9);
            let hn = directional_entropy(l, &[q_int(-a), q_int(-b)]).unwrap();
            let abs_sum: f64 = vectors_f64(l).iter().map(|r| (r[0] * a as f64 + r[1] * b as f64).abs()).sum();
            proptest::prop_assert!((h.to_f64() + hn.to_f64() - abs_sum).abs() < 1e-9);
            proptest::prop_assert!(!h.is_negative());
        }
    }
}
