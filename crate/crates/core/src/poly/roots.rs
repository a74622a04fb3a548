//! Certified isolation of the complex roots of a squarefree rational
//! polynomial.
//!
//! Approximations come from an f64 Aberth iteration, are polished by Newton
//! steps in exact dyadic arithmetic, and are then certified: the disk of
//! radius `n |f(z)| / |f'(z)|` around `z` contains a root, and pairwise
//! disjoint disks contain exactly one root each. A disk whose mirror image
//! meets no other disk holds a real root.

use num_traits::{Signed, Zero};

use crate::arith::ball::{log2_estimate, pow2, q_int, q_to_f64, Ball, CBall, Q};
use crate::error::{Error, Result};
use crate::poly::qpoly::QPoly;

#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub disk: CBall,
    pub real: bool,
}

impl IsolatedRoot {
    pub fn approx(&self) -> (f64, f64) {
        self.disk.to_f64()
    }
}

fn aberth_f64(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (0.5 * radius * ang.cos(), 0.5 * radius * ang.sin())
        })
        .collect();
    let eval = |x: (f64, f64)| -> ((f64, f64), (f64, f64)) {
        let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
        for a in c.iter().rev() {
            dp = (dp.0 * x.0 - dp.1 * x.1 + p.0, dp.0 * x.1 + dp.1 * x.0 + p.1);
            p = (p.0 * x.0 - p.1 * x.1 + a, p.0 * x.1 + p.1 * x.0);
        }
        (p, dp)
    };
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = div(p, dp);
            let mut s = (0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let inv = div((1.0, 0.0), (z[i].0 - zj.0, z[i].1 - zj.1));
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let denom = (1.0 - (ratio.0 * s.0 - ratio.1 * s.1), -(ratio.0 * s.1 + ratio.1 * s.0));
            let w = div(ratio, denom);
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            moved = moved.max((w.0 * w.0 + w.1 * w.1).sqrt());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

fn complex_div(a: &CBall, b: &CBall) -> CBall {
    // midpoint-only division (used for Newton steps, not for enclosures)
    let d = &b.re * &b.re + &b.im * &b.im;
    CBall::new(
        (&a.re * &b.re + &a.im * &b.im) / &d,
        (&a.im * &b.re - &a.re * &b.im) / &d,
        Q::zero(),
    )
}

fn eval_mid(f: &QPoly, z: &CBall) -> CBall {
    let mut acc = CBall::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add_q(c);
    }
    acc
}

fn newton_polish(f: &QPoly, df: &QPoly, z: CBall, bits: u32) -> CBall {
    let mut z = z;
    let mut work = 60u32;
    loop {
        work = (work * 2).min(bits + 16);
        for _ in 0..3 {
            let fz = eval_mid(f, &z);
            let dfz = eval_mid(df, &z);
            if dfz.re.is_zero() && dfz.im.is_zero() {
                break;
            }
            let step = complex_div(&fz, &dfz);
            z = z.sub(&step);
            z = CBall::new(z.re, z.im, Q::zero()).round(work);
            z.rad = Q::zero();
        }
        if work >= bits + 16 {
            return z;
        }
    }
}

fn certify_radius(f: &QPoly, df: &QPoly, z: &CBall, prec: u32) -> Option<Q> {
    let n = q_int(f.degree().unwrap_or(0) as i64);
    let fz = eval_mid(f, z);
    let dfz = eval_mid(df, z);
    let num = fz.abs(prec + 8).upper();
    let den = dfz.abs(prec + 8).lower();
    if !den.is_positive() {
        return None;
    }
    Some(n * num / den)
}

/// All complex roots of a squarefree polynomial of degree >= 1, certified to
/// radius about `2^-bits` relative to their magnitude. Real roots come first
/// in increasing order, then complex roots in the upper half plane (one per
/// conjugate pair) ordered by real part; the lower conjugates are omitted.
pub fn isolate_roots(f: &QPoly, bits: u32) -> Result<Vec<IsolatedRoot>> {
    let n = f.degree().expect("nonzero polynomial");
    assert!(n >= 1);
    if n == 1 {
        let r = -f.coeff(0) / f.coeff(1);
        return Ok(vec![IsolatedRoot {
            disk: CBall::real(r),
            real: true,
        }]);
    }
    let df = f.derivative();
    let approx = aberth_f64(&f.coeffs().iter().map(q_to_f64).collect::<Vec<_>>());
    let mut attempt_bits = bits.max(64);
    for _ in 0..4 {
        let disks: Vec<CBall> = approx
            .iter()
            .map(|&(re, im)| {
                let z = CBall::new(
                    Q::from_float(re).unwrap_or_else(Q::zero),
                    Q::from_float(im).unwrap_or_else(Q::zero),
                    Q::zero(),
                );
                newton_polish(f, &df, z, attempt_bits)
            })
            .collect();
        let mut certified = Vec::with_capacity(n);
        let mut ok = true;
        for z in &disks {
            match certify_radius(f, &df, z, attempt_bits) {
                Some(r) => certified.push(CBall::new(z.re.clone(), z.im.clone(), r)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && pairwise_disjoint(&certified) {
            return Ok(classify(certified));
        }
        attempt_bits *= 2;
    }
    Err(Error::PrecisionExhausted {
        bits: attempt_bits,
        context: "isolating the roots of the minimal polynomial".into(),
    })
}

fn dist2_lower(a: &CBall, b: &CBall) -> Q {
    let dr = &a.re - &b.re;
    let di = &a.im - &b.im;
    &dr * &dr + &di * &di
}

fn pairwise_disjoint(d: &[CBall]) -> bool {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let s = &d[i].rad + &d[j].rad;
            if dist2_lower(&d[i], &d[j]) <= &s * &s {
                return false;
            }
        }
    }
    true
}

fn classify(disks: Vec<CBall>) -> Vec<IsolatedRoot> {
    let mut real = Vec::new();
    let mut upper = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        let mirror = CBall::new(d.re.clone(), -&d.im, d.rad.clone());
        let meets_other = disks.iter().enumerate().any(|(j, e)| {
            if j == i {
                return false;
            }
            let s = &mirror.rad + &e.rad;
            dist2_lower(&mirror, e) <= &s * &s
        });
        if !meets_other {
            // conjugation fixes the unique root of this disk
            let rad = &d.rad + d.im.abs();
            real.push(IsolatedRoot {
                disk: CBall::new(d.re.clone(), Q::zero(), rad),
                real: true,
            });
        } else if d.im.is_positive() {
            upper.push(IsolatedRoot {
                disk: d.clone(),
                real: false,
            });
        }
    }
    real.sort_by(|a, b| a.disk.re.cmp(&b.disk.re));
    upper.sort_by(|a, b| a.disk.re.cmp(&b.disk.re).then(a.disk.im.cmp(&b.disk.im)));
    real.extend(upper);
    real
}

/// Refines one isolated root to a disk of radius below `2^-bits` times its
/// magnitude (or absolute `2^-bits` near zero).
pub fn refine_root(f: &QPoly, root: &IsolatedRoot, bits: u32) -> IsolatedRoot {
    let df = f.derivative();
    if root.disk.rad.is_zero() {
        return root.clone();
    }
    let start = CBall::new(root.disk.re.clone(), root.disk.im.clone(), Q::zero());
    let mut z = newton_polish(f, &df, start, bits + 8);
    if root.real {
        z.im = Q::zero();
    }
    let r = certify_radius(f, &df, &z, bits + 8).expect("refined root stays simple");
    // the new disk must stay inside the old one to keep the identification
    let shift = dist2_lower(&z, &root.disk);
    let inner = if &r + &r < root.disk.rad && shift <= (&root.disk.rad - &r) * (&root.disk.rad - &r) {
        CBall::new(z.re, z.im, r)
    } else {
        root.disk.clone()
    };
    IsolatedRoot {
        disk: inner,
        real: root.real,
    }
}

/// Magnitude scale of a root, for precision planning.
pub fn root_log2(root: &IsolatedRoot) -> i64 {
    let m = root.disk.re.abs() + root.disk.im.abs();
    if m.is_zero() {
        0
    } else {
        log2_estimate(&m)
    }
}

pub fn target_radius(root: &IsolatedRoot, bits: u32) -> Q {
    pow2(root_log2(root) - bits as i64)
}

/// Real ball for a real root.
pub fn real_root_ball(root: &IsolatedRoot) -> Ball {
    debug_assert!(root.real);
    root.disk.real_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::q_frac;

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| q_int(x)).collect())
    }

    #[test]
    fn golden_ratio_roots() {
        let roots = isolate_roots(&p(&[-1, -1, 1]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.real));
        let (a, _) = roots[0].approx();
        let (b, _) = roots[1].approx();
        assert!((a + 0.6180339887498949).abs() < 1e-15);
        assert!((b - 1.618033988749895).abs() < 1e-15);
        assert!(roots[1].disk.rad < pow2(-100));
    }

    #[test]
    fn complex_pair() {
        // x^3 - 2: one real root, one conjugate pair
        let roots = isolate_roots(&p(&[-2, 0, 0, 1]), 96).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].real);
        assert!(!roots[1].real);
        let (re, im) = roots[1].approx();
        let m = 2f64.powf(1.0 / 3.0);
        assert!((re + m / 2.0).abs() < 1e-14);
        assert!((im - m * 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn linear_root_is_exact() {
        let roots = isolate_roots(&QPoly::new(vec![q_frac(-3, 2), q_int(1)]), 64).unwrap();
        assert_eq!(roots[0].disk, CBall::real(q_frac(3, 2)));
    }

    #[test]
    fn refinement_shrinks() {
        let f = p(&[-1, -1, 1]);
        let roots = isolate_roots(&f, 64).unwrap();
        let fine = refine_root(&f, &roots[1], 300);
        assert!(fine.disk.rad < pow2(-290));
    }
}
