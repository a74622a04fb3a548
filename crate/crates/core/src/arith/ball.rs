//! Real and complex midpoint-radius enclosures with exact rational data.
//!
//! Midpoints and radii are `BigRational`. Arithmetic is exact; callers bound
//! the size of the numbers by calling [`Ball::round`] after composite steps,
//! which moves the midpoint to a dyadic grid and widens the radius by the
//! rounding error. Transcendental functions (`ln`, `sqrt`) are evaluated in
//! fixed point with an explicit error budget, so every result is a rigorous
//! enclosure.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(BigInt::one() << (e as usize))
    } else {
        Q::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Approximate floor(log2 |q|) for nonzero q; off by at most one.
pub fn log2_estimate(q: &Q) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

fn floor_q(q: &Q) -> BigInt {
    q.floor().to_integer()
}

fn ceil_q(q: &Q) -> BigInt {
    q.ceil().to_integer()
}

pub fn q_to_f64(q: &Q) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back through a shifted representation for huge/small values
    let e = log2_estimate(q);
    let scaled = q / pow2(e);
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(e as i32)
}

/// A real interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Q,
    rad: Q,
}

impl Ball {
    pub fn new(mid: Q, rad: Q) -> Self {
        debug_assert!(!rad.is_negative());
        Ball { mid, rad }
    }

    pub fn exact(q: Q) -> Self {
        Ball {
            mid: q,
            rad: Q::zero(),
        }
    }

    pub fn zero() -> Self {
        Ball::exact(Q::zero())
    }

    pub fn from_bounds(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        let two = q_int(2);
        Ball {
            mid: (&lo + &hi) / &two,
            rad: (&hi - &lo) / two,
        }
    }

    pub fn mid(&self) -> &Q {
        &self.mid
    }

    pub fn rad(&self) -> &Q {
        &self.rad
    }

    pub fn lower(&self) -> Q {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> Q {
        &self.mid + &self.rad
    }

    pub fn width(&self) -> Q {
        &self.rad * q_int(2)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains(&self, q: &Q) -> bool {
        (&self.mid - q).abs() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Certified comparison against a rational; `None` when the enclosure
    /// straddles (or touches, for inexact balls) the value.
    pub fn cmp_q(&self, q: &Q) -> Option<Ordering> {
        if self.rad.is_zero() {
            return Some(self.mid.cmp(q));
        }
        if self.upper() < *q {
            Some(Ordering::Less)
        } else if self.lower() > *q {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn neg(&self) -> Ball {
        Ball::new(-&self.mid, self.rad.clone())
    }

    pub fn add(&self, other: &Ball) -> Ball {
        Ball::new(&self.mid + &other.mid, &self.rad + &other.rad)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        Ball::new(&self.mid - &other.mid, &self.rad + &other.rad)
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let rad = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        Ball::new(&self.mid * &other.mid, rad)
    }

    pub fn scale(&self, q: &Q) -> Ball {
        Ball::new(&self.mid * q, &self.rad * q.abs())
    }

    pub fn add_q(&self, q: &Q) -> Ball {
        Ball::new(&self.mid + q, self.rad.clone())
    }

    /// Reciprocal, or `None` if the ball contains zero.
    pub fn inv(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        if self.rad.is_zero() {
            return Some(Ball::exact(self.mid.recip()));
        }
        let (lo, hi) = (self.lower(), self.upper());
        // 1/x is monotone decreasing on an interval that excludes 0
        Some(Ball::from_bounds(hi.recip(), lo.recip()))
    }

    pub fn abs(&self) -> Ball {
        if !self.contains_zero() {
            return if self.mid.is_negative() { self.neg() } else { self.clone() };
        }
        let hi = self.mid.abs() + &self.rad;
        Ball::from_bounds(Q::zero(), hi)
    }

    /// Enclosure of `max(self, other)`.
    pub fn max(&self, other: &Ball) -> Ball {
        let lo = self.lower().max(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_bounds(lo, hi)
    }

    pub fn min(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().min(other.upper());
        Ball::from_bounds(lo, hi)
    }

    /// Enclosure of `max(self, 0)`.
    pub fn positive_part(&self) -> Ball {
        self.max(&Ball::zero())
    }

    /// Moves the midpoint onto a dyadic grid with about `prec` significant
    /// bits, absorbing the rounding error into the radius.
    pub fn round(&self, prec: u32) -> Ball {
        let scale_exp = if self.mid.is_zero() {
            if self.rad.is_zero() {
                return self.clone();
            }
            prec as i64 - log2_estimate(&self.rad)
        } else {
            prec as i64 - log2_estimate(&self.mid)
        };
        let scale = pow2(scale_exp);
        let scaled = &self.mid * &scale;
        let rounded = scaled.round();
        let new_mid = &rounded / &scale;
        let err = (&self.mid - &new_mid).abs();
        let rad = &self.rad + err;
        let new_rad = if rad.is_zero() {
            rad
        } else {
            Q::from_integer(ceil_q(&(&rad * &scale))) / &scale
        };
        Ball::new(new_mid, new_rad)
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.mid)
    }

    /// Relative width `width / |mid|`; infinite for a ball around zero.
    pub fn relative_width(&self) -> Option<Q> {
        if self.rad.is_zero() {
            return Some(Q::zero());
        }
        if self.mid.is_zero() {
            return None;
        }
        Some(self.width() / self.mid.abs())
    }

    pub fn relative_width_ok(&self, prec: u32) -> bool {
        match self.relative_width() {
            Some(w) => w <= pow2(1 - prec as i64),
            None => false,
        }
    }

    /// Certified square root of the nonnegative part of the ball.
    pub fn sqrt(&self, prec: u32) -> Ball {
        let lo = self.lower().max(Q::zero());
        let hi = self.upper().max(Q::zero());
        if self.rad.is_zero() {
            if let Some(r) = exact_sqrt(&lo) {
                return Ball::exact(r);
            }
        }
        let w = prec as i64 + 8 + (log2_estimate(&hi.clone().max(Q::one())) / 2).max(0);
        let scale = pow2(2 * w);
        let lo_int = floor_q(&(&lo * &scale));
        let hi_int = ceil_q(&(&hi * &scale));
        let lo_root = lo_int.sqrt();
        let mut hi_root = hi_int.sqrt();
        if &hi_root * &hi_root < hi_int {
            hi_root += 1;
        }
        let unit = pow2(w);
        Ball::from_bounds(Q::from_integer(lo_root) / &unit, Q::from_integer(hi_root) / &unit)
    }

    /// Certified natural logarithm of a strictly positive ball.
    pub fn ln(&self, prec: u32) -> Option<Ball> {
        if !self.is_positive() {
            return None;
        }
        if self.rad.is_zero() {
            return Some(ln_q(&self.mid, prec));
        }
        let lo = ln_q(&self.lower(), prec);
        let hi = ln_q(&self.upper(), prec);
        Some(Ball::from_bounds(lo.lower(), hi.upper()))
    }
}

fn exact_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Fixed-point `atanh(a/b) * 2^w` for |a/b| <= 1/3, with an error bound in
/// units of `2^-w`.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    let a2 = a * a;
    let b2 = b * b;
    let mut power = (BigInt::one() << (w as usize)) * a / b;
    let mut sum = power.clone();
    // (1/9)^K < 2^-w once K > w / log2(9)
    let terms = w as u64 * 100 / 317 + 2;
    for k in 1..=terms {
        power = &power * &a2 / &b2;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
    }
    (sum, BigInt::from(2 * terms + 6))
}

/// Rigorous enclosure of `ln(q)` for a positive rational.
pub fn ln_q(q: &Q, prec: u32) -> Ball {
    assert!(q.is_positive(), "ln of nonpositive rational");
    if q.is_one() {
        return Ball::zero();
    }
    let w = prec + 40;
    let mut e = log2_estimate(q);
    let mut m = q / pow2(e);
    let four_thirds = q_frac(4, 3);
    let two_thirds = q_frac(2, 3);
    while m > four_thirds {
        m /= q_int(2);
        e += 1;
    }
    while m < two_thirds {
        m *= q_int(2);
        e -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1)), ln 2 = 2 atanh(1/3)
    let y = (&m - Q::one()) / (&m + Q::one());
    let (ay, ey) = atanh_fixed(y.numer(), y.denom(), w);
    let (a3, e3) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    let eb = BigInt::from(e);
    let value = (&eb * &a3 + &ay) * 2;
    let err = (eb.abs() * &e3 + &ey) * 2;
    let unit = pow2(w as i64);
    Ball::from_bounds(
        Q::from_integer(&value - &err) / &unit,
        Q::from_integer(&value + &err) / &unit,
    )
    .round(prec + 8)
}

/// `ln(q)` enclosures for nonzero rationals given as integers (prime logs).
pub fn ln_int(n: &BigInt, prec: u32) -> Ball {
    ln_q(&Q::from_integer(n.clone()), prec)
}

impl fmt::Display for Ball {
    /// Decimal rendering `[lo, hi]` with 20 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            write!(f, "{}", decimal(&self.mid, 20))
        } else {
            write!(f, "[{}, {}]", decimal_dir(&self.lower(), 20, false), decimal_dir(&self.upper(), 20, true))
        }
    }
}

/// Decimal string with `digits` digits after the point (rounded to nearest).
pub fn decimal(q: &Q, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (q * Q::from_integer(scale.clone())).round().to_integer();
    format_scaled(&scaled, digits)
}

/// Decimal string rounded toward -inf (`up = false`) or +inf (`up = true`).
pub fn decimal_dir(q: &Q, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled_q = q * Q::from_integer(scale);
    let scaled = if up { ceil_q(&scaled_q) } else { floor_q(&scaled_q) };
    format_scaled(&scaled, digits)
}

fn format_scaled(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.sign() == Sign::Minus;
    let mag = scaled.abs().to_string();
    let digits = digits as usize;
    let padded = if mag.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// A complex disk `{ z : |z - (re + i im)| <= rad }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: Q,
    pub im: Q,
    pub rad: Q,
}

impl CBall {
    pub fn new(re: Q, im: Q, rad: Q) -> Self {
        CBall { re, im, rad }
    }

    pub fn real(q: Q) -> Self {
        CBall::new(q, Q::zero(), Q::zero())
    }

    pub fn zero() -> Self {
        CBall::real(Q::zero())
    }

    /// Upper bound on |mid| via |re| + |im|.
    fn mid_abs_upper(&self) -> Q {
        self.re.abs() + self.im.abs()
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall::new(&self.re + &o.re, &self.im + &o.im, &self.rad + &o.rad)
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall::new(&self.re - &o.re, &self.im - &o.im, &self.rad + &o.rad)
    }

    pub fn add_q(&self, q: &Q) -> CBall {
        CBall::new(&self.re + q, self.im.clone(), self.rad.clone())
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let rad = self.mid_abs_upper() * &o.rad + o.mid_abs_upper() * &self.rad + &self.rad * &o.rad;
        CBall::new(re, im, rad)
    }

    pub fn scale(&self, q: &Q) -> CBall {
        CBall::new(&self.re * q, &self.im * q, &self.rad * q.abs())
    }

    pub fn round(&self, prec: u32) -> CBall {
        let mag = self.mid_abs_upper().max(self.rad.clone());
        if mag.is_zero() {
            return self.clone();
        }
        let scale = pow2(prec as i64 - log2_estimate(&mag));
        let rre = (&self.re * &scale).round() / &scale;
        let rim = (&self.im * &scale).round() / &scale;
        let err = (&self.re - &rre).abs() + (&self.im - &rim).abs() + &self.rad;
        let rad = if err.is_zero() {
            err
        } else {
            Q::from_integer(ceil_q(&(&err * &scale))) / &scale
        };
        CBall::new(rre, rim, rad)
    }

    /// Enclosure of |z| over the disk.
    pub fn abs(&self, prec: u32) -> Ball {
        let mid2 = &self.re * &self.re + &self.im * &self.im;
        let m = Ball::exact(mid2).sqrt(prec + 4);
        let lo = (m.lower() - &self.rad).max(Q::zero());
        let hi = m.upper() + &self.rad;
        Ball::from_bounds(lo, hi)
    }

    /// Enclosure of |z|^2 over the disk.
    pub fn abs2(&self, prec: u32) -> Ball {
        if self.rad.is_zero() {
            return Ball::exact(&self.re * &self.re + &self.im * &self.im);
        }
        let a = self.abs(prec + 4);
        let lo = a.lower();
        let hi = a.upper();
        Ball::from_bounds(&lo * &lo, &hi * &hi)
    }

    /// Real part as a real ball (the disk's projection).
    pub fn real_part(&self) -> Ball {
        Ball::new(self.re.clone(), self.rad.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

/// Horner evaluation of a rational polynomial (low-to-high coefficients).
pub fn eval_poly_cball(coeffs: &[Q], z: &CBall, prec: u32) -> CBall {
    let mut acc = CBall::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add_q(c).round(prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_digits() {
        let b = ln_q(&q_int(2), 128);
        let s = decimal(b.mid(), 30);
        assert!(s.starts_with("0.693147180559945309417232121458"), "{s}");
        assert!(b.width() < pow2(-120));
    }

    #[test]
    fn ln_matches_f64() {
        for (n, d) in [(3, 1), (1, 7), (1000, 3), (5, 4), (123456789, 1000)] {
            let b = ln_q(&q_frac(n, d), 96);
            let f = (n as f64 / d as f64).ln();
            assert!((b.to_f64() - f).abs() < 1e-14, "{n}/{d}");
            assert!(b.width() < pow2(-90));
        }
    }

    #[test]
    fn ln_sum_rule() {
        // ln 6 - ln 2 - ln 3 encloses zero
        let s = ln_q(&q_int(6), 128).sub(&ln_q(&q_int(2), 128)).sub(&ln_q(&q_int(3), 128));
        assert!(s.contains_zero());
        assert!(s.width() < pow2(-110));
    }

    #[test]
    fn sqrt_enclosure() {
        let r = Ball::exact(q_int(2)).sqrt(100);
        let sq = r.mul(&r);
        assert!(sq.contains(&q_int(2)));
        assert!(r.width() < pow2(-95));
        assert_eq!(Ball::exact(q_frac(9, 4)).sqrt(64), Ball::exact(q_frac(3, 2)));
    }

    #[test]
    fn round_keeps_value() {
        let b = Ball::exact(q_frac(1, 3)).round(64);
        assert!(b.contains(&q_frac(1, 3)));
        assert!(b.rad() < &pow2(-60));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&q_frac(-1, 8), 3), "-0.125");
        assert_eq!(decimal(&q_int(5), 2), "5.00");
        assert_eq!(decimal_dir(&q_frac(2, 3), 2, false), "0.66");
        assert_eq!(decimal_dir(&q_frac(2, 3), 2, true), "0.67");
    }

    #[test]
    fn complex_abs() {
        let z = CBall::new(q_int(3), q_int(4), Q::zero());
        assert_eq!(z.abs2(64), Ball::exact(q_int(25)));
        assert!(z.abs(64).contains(&q_int(5)));
    }
}
