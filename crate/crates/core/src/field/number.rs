//! Monogenic number fields K = Q[x]/(f) with f monic, integral and
//! irreducible. Elements are reduced rational polynomials of degree < deg f.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::ball::{CBall, Q};
use crate::arith::integer::{square_part_root, valuation};
use crate::error::{Error, Result};
use crate::poly::fp::FpPoly;
use crate::poly::qpoly::{charpoly_q, det_q, format_poly, QPoly};
use crate::poly::roots::{isolate_roots, refine_root, IsolatedRoot};
use crate::poly::zfactor::{div_rem_monic, factor_monic_z, hensel_lift, reduce, ZPoly};

#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: QPoly,
    min_poly_z: ZPoly,
    roots: Vec<IsolatedRoot>,
    discriminant: BigInt,
    /// Largest d with d^2 | disc(f); the ring of integers lies in (1/d) Z[x].
    index_bound: BigInt,
}

impl NumberField {
    /// Validates `f` (monic, integral, irreducible) and isolates its roots.
    pub fn new(f: QPoly) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::malformed("field.min_poly", "minimal polynomial must have degree >= 1"));
        }
        if !f.lead().is_one() {
            return Err(Error::malformed("field.min_poly", "minimal polynomial must be monic"));
        }
        if !f.is_integral() {
            return Err(Error::malformed("field.min_poly", "minimal polynomial must have integer coefficients"));
        }
        let fz: ZPoly = f.coeffs().iter().map(|c| c.to_integer()).collect();
        let factors = factor_monic_z(&fz);
        if factors.len() > 1 {
            let g = QPoly::from_ints(&factors[0]);
            return Err(Error::Reducible {
                factor: format_poly(g.coeffs(), "x"),
            });
        }
        let roots = isolate_roots(&f, 256)?;
        let discriminant = discriminant(&f);
        let index_bound = square_part_root(&discriminant);
        Ok(NumberField {
            min_poly: f,
            min_poly_z: fz,
            roots,
            discriminant,
            index_bound,
        })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn min_poly_z(&self) -> &ZPoly {
        &self.min_poly_z
    }

    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn index_bound(&self) -> &BigInt {
        &self.index_bound
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        p.rem(&self.min_poly)
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &QPoly) -> Option<QPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.min_poly);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.reduce(&s))
    }

    /// The rational value of `a`, if `a` lies in Q.
    pub fn as_rational(a: &QPoly) -> Option<Q> {
        match a.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(a.coeff(0)),
            _ => None,
        }
    }

    /// Matrix of multiplication by `a` on the power basis (columns are
    /// images of basis vectors).
    pub fn mult_matrix(&self, a: &QPoly) -> Vec<Vec<Q>> {
        let n = self.degree();
        let mut m = vec![vec![Q::zero(); n]; n];
        let mut basis = QPoly::constant(Q::one());
        for j in 0..n {
            let img = self.mul(a, &basis);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = img.coeff(i);
            }
            basis = self.mul(&basis, &QPoly::x());
        }
        m
    }

    pub fn norm(&self, a: &QPoly) -> Q {
        if let Some(q) = Self::as_rational(a) {
            return q.pow(self.degree() as i32);
        }
        det_q(self.mult_matrix(a))
    }

    pub fn charpoly(&self, a: &QPoly) -> Vec<Q> {
        charpoly_q(&self.mult_matrix(a))
    }

    /// Complex ball enclosing sigma(a) for the embedding at root `index`,
    /// with the root refined to `bits` bits.
    pub fn embed(&self, a: &QPoly, index: usize, bits: u32) -> CBall {
        let root = if bits <= 240 {
            self.roots[index].clone()
        } else {
            refine_root(&self.min_poly, &self.roots[index], bits)
        };
        crate::arith::ball::eval_poly_cball(a.coeffs(), &root.disk, bits + 8)
    }

    /// f64 approximation of sigma(a).
    pub fn embed_f64(&self, a: &QPoly, index: usize) -> (f64, f64) {
        let (re, im) = self.roots[index].approx();
        let (mut pr, mut pi) = (0.0f64, 0.0f64);
        for c in a.coeffs().iter().rev() {
            let cf = crate::arith::ball::q_to_f64(c);
            let nr = pr * re - pi * im + cf;
            let ni = pr * im + pi * re;
            pr = nr;
            pi = ni;
        }
        (pr, pi)
    }

    /// Valuation of `a` (nonzero) at the unramified prime above `p`
    /// corresponding to the monic factor `factors[j]` of f mod p.
    pub fn ord_unramified(&self, a: &QPoly, p: &BigUint, factors: &[FpPoly], j: usize) -> i64 {
        debug_assert!(!a.is_zero());
        let (b, den) = a.integer_numerator();
        let pi = BigInt::from(p.clone());
        let den_val = valuation(&den, p) as i64;
        let deg_factor = factors[j].deg() as i64;
        let nb = self.norm(&QPoly::from_ints(&b));
        let nb_int = nb.to_integer();
        let bound = valuation(&nb_int, p) as i64 / deg_factor;
        let k = (bound + 2) as u32;
        let modulus = pi.pow(k);
        let pu = p.to_u64().expect("valuation primes fit in u64");
        let lifted = hensel_lift(&self.min_poly_z, factors, pu, k);
        let (_, r) = div_rem_monic(&reduce(&b, &modulus), &lifted[j], &modulus);
        let ord_b = r
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| valuation(c, p) as i64)
            .min()
            .unwrap_or(k as i64);
        ord_b - den_val
    }

    pub fn format(&self, a: &QPoly) -> String {
        format_poly(a.coeffs(), "x")
    }
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f.
fn discriminant(f: &QPoly) -> BigInt {
    let n = f.degree().unwrap();
    if n == 1 {
        return BigInt::one();
    }
    // Res(f, f') = prod f'(alpha_i) = det(mult by f' in Q[x]/(f))
    let df = f.derivative().rem(f);
    let mut m = vec![vec![Q::zero(); n]; n];
    let mut basis = QPoly::constant(Q::one());
    for j in 0..n {
        let img = df.mul(&basis).rem(f);
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = img.coeff(i);
        }
        basis = basis.mul(&QPoly::x()).rem(f);
    }
    let res = det_q(m).to_integer();
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}
