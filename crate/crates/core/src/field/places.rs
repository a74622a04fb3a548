//! Places of a presented global field, the finite set S of places where the
//! module is unbounded, normalized absolute values and S-integrality.
//!
//! Normalizations: |x|_v = |sigma(x)| at a real place, |sigma(x)|^2 at a
//! complex place, N_v^(-ord_v x) at a finite place with residue field of
//! size N_v. With these choices the product formula holds exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ball::{Ball, Q};
use crate::arith::integer::{factorize, valuation};
use crate::error::{Error, Result};
use crate::field::presentation::{Backend, FieldElement, Presentation};
use crate::poly::fp::FpPoly;
use crate::poly::zfactor::{factor_mod, squarefree_mod};

/// Precision ceiling (bits) for adaptive archimedean evaluation.
pub const PRECISION_CEILING: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    Real {
        root: usize,
    },
    Complex {
        root: usize,
    },
    /// A finite place of a number field. `factor` is the irreducible factor
    /// of f mod p for unramified primes, `None` for user-supplied data.
    Finite {
        prime: BigUint,
        ramification: u32,
        residue_degree: u32,
        factor: Option<(usize, FpPoly)>,
    },
    FunctionFinite {
        poly: FpPoly,
    },
    FunctionInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub kind: PlaceKind,
    pub label: String,
    /// ord_v(g_i) for non-archimedean places, empty otherwise.
    pub generator_ords: Vec<i64>,
}

impl Place {
    pub fn is_archimedean(&self) -> bool {
        matches!(self.kind, PlaceKind::Real { .. } | PlaceKind::Complex { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            PlaceKind::Real { .. } => "real",
            PlaceKind::Complex { .. } => "complex",
            PlaceKind::Finite { .. } => "finite",
            PlaceKind::FunctionFinite { .. } => "ff_finite",
            PlaceKind::FunctionInfinity => "ff_infinity",
        }
    }

    /// Size of the residue field at a non-archimedean place.
    pub fn residue_size(&self, pres: &Presentation) -> Option<BigUint> {
        let q = pres.characteristic();
        match &self.kind {
            PlaceKind::Finite {
                prime, residue_degree, ..
            } => Some(prime.pow(*residue_degree)),
            PlaceKind::FunctionFinite { poly } => Some(BigUint::from(q).pow(poly.deg() as u32)),
            PlaceKind::FunctionInfinity => Some(BigUint::from(q)),
            _ => None,
        }
    }

    /// The rational prime used in exact logarithms (p, or q in the function
    /// field case) and the exponent of log(prime) per unit of -ord.
    pub fn log_base(&self, pres: &Presentation) -> Option<(BigUint, u32)> {
        match &self.kind {
            PlaceKind::Finite {
                prime, residue_degree, ..
            } => Some((prime.clone(), *residue_degree)),
            PlaceKind::FunctionFinite { poly } => Some((BigUint::from(pres.characteristic()), poly.deg() as u32)),
            PlaceKind::FunctionInfinity => Some((BigUint::from(pres.characteristic()), 1)),
            _ => None,
        }
    }

    /// ord_v(beta_n) = sum n_i ord_v(g_i).
    pub fn ord_monomial(&self, n: &[i64]) -> i64 {
        self.generator_ords.iter().zip(n).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// What is known about a rational prime below some place of S.
#[derive(Clone, Debug)]
pub struct PrimeInfo {
    /// Sum of e_v f_v over the S-places above p.
    pub s_degree: u32,
    /// Irreducible factors of f mod p, when f is squarefree mod p.
    pub factors: Option<Vec<FpPoly>>,
    /// Indices (into `factors`) of the factors whose places lie in S.
    pub s_factors: Vec<usize>,
}

/// The set S together with the data needed to test S-integrality.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    pub places: Vec<Place>,
    primes: BTreeMap<BigUint, PrimeInfo>,
    s_polys: Vec<FpPoly>,
    infinity_in_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsValue {
    Exact(Q),
    Enclosure(Ball),
}

impl AbsValue {
    pub fn to_ball(&self) -> Ball {
        match self {
            AbsValue::Exact(q) => Ball::exact(q.clone()),
            AbsValue::Enclosure(b) => b.clone(),
        }
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            AbsValue::Exact(q) => Some(q),
            AbsValue::Enclosure(_) => None,
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Exact(q) => write!(f, "{q}"),
            AbsValue::Enclosure(b) => write!(f, "{b}"),
        }
    }
}

impl PlaceSet {
    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Place> {
        self.places.iter()
    }

    pub fn archimedean(&self) -> impl Iterator<Item = (usize, &Place)> {
        self.places.iter().enumerate().filter(|(_, p)| p.is_archimedean())
    }

    pub fn non_archimedean(&self) -> impl Iterator<Item = (usize, &Place)> {
        self.places.iter().enumerate().filter(|(_, p)| !p.is_archimedean())
    }

    pub fn primes(&self) -> &BTreeMap<BigUint, PrimeInfo> {
        &self.primes
    }

    /// Rational primes all of whose places lie in S (so p is a unit in O_S).
    pub fn fully_s_primes(&self, pres: &Presentation) -> Vec<BigUint> {
        let n = pres.degree() as u32;
        self.primes
            .iter()
            .filter(|(_, info)| info.s_degree == n)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn is_fully_s(&self, pres: &Presentation, p: &BigUint) -> bool {
        self.primes
            .get(p)
            .is_some_and(|info| info.s_degree == pres.degree() as u32)
    }

    pub fn s_polys(&self) -> &[FpPoly] {
        &self.s_polys
    }

    pub fn infinity_in_s(&self) -> bool {
        self.infinity_in_s
    }
}

/// Discovers S: all archimedean places (number fields) and every
/// non-archimedean place where some generator is not a unit.
pub fn discover_places(pres: &Presentation) -> Result<PlaceSet> {
    match pres.backend() {
        Backend::Number(_) => discover_number(pres),
        Backend::Function { .. } => Ok(discover_function(pres)),
    }
}

fn discover_number(pres: &Presentation) -> Result<PlaceSet> {
    let k = pres.number_field().unwrap();
    let n = k.degree();
    let mut places = Vec::new();
    let nreal = k.roots().iter().filter(|r| r.real).count();
    for (i, r) in k.roots().iter().enumerate() {
        let (kind, label) = if r.real {
            (PlaceKind::Real { root: i }, if n == 1 { "inf".to_string() } else { format!("real{i}") })
        } else {
            (PlaceKind::Complex { root: i }, format!("complex{}", i - nreal))
        };
        places.push(Place {
            kind,
            label,
            generator_ords: vec![],
        });
    }

    let mut candidates: BTreeMap<BigUint, ()> = BTreeMap::new();
    for g in pres.generators() {
        let (b, den) = g.as_number().integer_numerator();
        for (p, _) in factorize(den.magnitude()) {
            candidates.insert(p, ());
        }
        let nb = k.norm(&crate::poly::qpoly::QPoly::from_ints(&b)).to_integer();
        for (p, _) in factorize(nb.magnitude()) {
            candidates.insert(p, ());
        }
    }
    for e in pres.explicit_places() {
        candidates.insert(BigUint::from(e.prime), ());
    }

    let mut primes = BTreeMap::new();
    for p in candidates.keys() {
        let explicit: Vec<_> = pres
            .explicit_places()
            .iter()
            .filter(|e| BigUint::from(e.prime) == *p)
            .collect();
        let mut info = PrimeInfo {
            s_degree: 0,
            factors: None,
            s_factors: vec![],
        };
        let pu = p.to_u64();
        let squarefree = pu.is_some_and(|q| squarefree_mod(k.min_poly_z(), q));
        if squarefree {
            info.factors = Some(factor_mod(k.min_poly_z(), pu.unwrap()));
        }
        if !explicit.is_empty() {
            for e in explicit {
                if e.ords.iter().all(|&o| o == 0) {
                    continue;
                }
                info.s_degree += e.ramification * e.residue_degree;
                places.push(Place {
                    kind: PlaceKind::Finite {
                        prime: p.clone(),
                        ramification: e.ramification,
                        residue_degree: e.residue_degree,
                        factor: None,
                    },
                    label: format!("p{p}[e={},f={}]", e.ramification, e.residue_degree),
                    generator_ords: e.ords.clone(),
                });
            }
            if info.s_degree > n as u32 {
                return Err(Error::malformed(
                    "field.explicit_places",
                    format!("local degrees above {p} sum to more than {n}"),
                ));
            }
        } else if n == 1 {
            let ords: Vec<i64> = pres
                .generators()
                .iter()
                .map(|g| rational_ord(&g.as_rational().unwrap(), p))
                .collect();
            if ords.iter().any(|&o| o != 0) {
                info.s_degree = 1;
                places.push(Place {
                    kind: PlaceKind::Finite {
                        prime: p.clone(),
                        ramification: 1,
                        residue_degree: 1,
                        factor: None,
                    },
                    label: format!("p{p}"),
                    generator_ords: ords,
                });
            }
        } else if let Some(factors) = info.factors.clone() {
            for (j, fac) in factors.iter().enumerate() {
                let ords: Vec<i64> = pres
                    .generators()
                    .iter()
                    .map(|g| k.ord_unramified(g.as_number(), p, &factors, j))
                    .collect();
                if ords.iter().all(|&o| o == 0) {
                    continue;
                }
                info.s_degree += fac.deg() as u32;
                info.s_factors.push(j);
                places.push(Place {
                    kind: PlaceKind::Finite {
                        prime: p.clone(),
                        ramification: 1,
                        residue_degree: fac.deg() as u32,
                        factor: Some((j, fac.clone())),
                    },
                    label: format!("p{p}:{}", fac.format("x")),
                    generator_ords: ords,
                });
            }
        } else {
            return Err(Error::RamifiedUnsupported { prime: p.to_string() });
        }
        if info.s_degree > 0 {
            primes.insert(p.clone(), info);
        }
    }
    Ok(PlaceSet {
        places,
        primes,
        s_polys: vec![],
        infinity_in_s: false,
    })
}

fn discover_function(pres: &Presentation) -> PlaceSet {
    let mut polys: Vec<FpPoly> = Vec::new();
    for g in pres.generators() {
        let f = g.as_function();
        for part in [f.num(), f.den()] {
            if part.degree().unwrap_or(0) > 0 {
                polys.extend(part.factor().into_iter().map(|(p, _)| p));
            }
        }
    }
    polys.sort();
    polys.dedup();
    let mut places = Vec::new();
    let mut s_polys = Vec::new();
    for p in polys {
        let ords: Vec<i64> = pres.generators().iter().map(|g| g.as_function().ord_at(&p)).collect();
        if ords.iter().all(|&o| o == 0) {
            continue;
        }
        s_polys.push(p.clone());
        places.push(Place {
            label: p.format("t"),
            kind: PlaceKind::FunctionFinite { poly: p },
            generator_ords: ords,
        });
    }
    let inf: Vec<i64> = pres.generators().iter().map(|g| g.as_function().ord_inf()).collect();
    let infinity_in_s = inf.iter().any(|&o| o != 0);
    if infinity_in_s {
        places.push(Place {
            kind: PlaceKind::FunctionInfinity,
            label: "inf".into(),
            generator_ords: inf,
        });
    }
    PlaceSet {
        places,
        primes: BTreeMap::new(),
        s_polys,
        infinity_in_s,
    }
}

fn rational_ord(r: &Q, p: &BigUint) -> i64 {
    if r.is_zero() {
        return i64::MAX;
    }
    valuation(r.numer(), p) as i64 - valuation(r.denom(), p) as i64
}

/// ord_v(x) for x nonzero at a non-archimedean place.
pub fn ord(pres: &Presentation, v: &Place, x: &FieldElement) -> Result<i64> {
    debug_assert!(!x.is_zero());
    match (&v.kind, x) {
        (PlaceKind::Finite { prime, ramification, factor, .. }, FieldElement::Number(a)) => {
            if let Some(r) = x.as_rational() {
                return Ok(*ramification as i64 * rational_ord(&r, prime));
            }
            match factor {
                Some((j, _)) => {
                    let k = pres.number_field().unwrap();
                    let factors = factor_mod(k.min_poly_z(), prime.to_u64().unwrap());
                    Ok(k.ord_unramified(a, prime, &factors, *j))
                }
                None => Err(Error::RamifiedUnsupported { prime: prime.to_string() }),
            }
        }
        (PlaceKind::FunctionFinite { poly }, FieldElement::Function(f)) => Ok(f.ord_at(poly)),
        (PlaceKind::FunctionInfinity, FieldElement::Function(f)) => Ok(f.ord_inf()),
        _ => Err(Error::InvalidArgument(format!("no valuation at archimedean place {}", v.label))),
    }
}

/// Enclosure of |sigma(x)| (real place) or |sigma(x)|^2 (complex place)
/// with relative width at most 2^(1 - prec).
pub fn archimedean_abs(pres: &Presentation, v: &Place, x: &FieldElement, prec: u32) -> Result<Ball> {
    let k = pres.number_field().expect("archimedean places live in number fields");
    let (root, complex) = match v.kind {
        PlaceKind::Real { root } => (root, false),
        PlaceKind::Complex { root } => (root, true),
        _ => unreachable!(),
    };
    if let Some(r) = x.as_rational() {
        let a = r.abs();
        return Ok(Ball::exact(if complex { &a * &a } else { a }));
    }
    let a = x.as_number();
    let mut bits = prec + 32;
    loop {
        let z = k.embed(a, root, bits);
        let b = if complex { z.abs2(bits) } else { z.real_part().abs() };
        if b.is_positive() && b.relative_width_ok(prec - 1) {
            return Ok(b.round(prec + 4));
        }
        if bits >= PRECISION_CEILING + prec {
            return Err(Error::PrecisionExhausted {
                bits,
                context: format!("evaluating |{}| at {}", pres.format(x), v.label),
            });
        }
        bits *= 2;
    }
}

/// The normalized absolute value |x|_v.
pub fn abs_value(pres: &Presentation, v: &Place, x: &FieldElement, prec: u32) -> Result<AbsValue> {
    if x.is_zero() {
        return Ok(AbsValue::Exact(Q::zero()));
    }
    if v.is_archimedean() {
        let b = archimedean_abs(pres, v, x, prec)?;
        return Ok(if b.is_exact() {
            AbsValue::Exact(b.mid().clone())
        } else {
            AbsValue::Enclosure(b)
        });
    }
    let o = ord(pres, v, x)?;
    let n = Q::from_integer(BigInt::from(v.residue_size(pres).unwrap()));
    Ok(AbsValue::Exact(if o >= 0 {
        n.pow(-(o as i32))
    } else {
        n.pow((-o) as i32)
    }))
}

/// Membership in O_S, the ring of S-integers; requires the attestation
/// that the module equals O_S.
pub fn in_ring(pres: &Presentation, s: &PlaceSet, x: &FieldElement) -> Result<bool> {
    if !pres.maximality_attested() {
        return Err(Error::MaximalityNotAttested);
    }
    is_s_integral(pres, s, x)
}

/// ord_v(x) >= 0 at every place v outside S.
pub fn is_s_integral(pres: &Presentation, s: &PlaceSet, x: &FieldElement) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    match x {
        FieldElement::Function(f) => {
            for (p, _) in f.den().factor() {
                if p.degree().unwrap_or(0) > 0 && !s.s_polys.contains(&p) {
                    return Ok(false);
                }
            }
            if !s.infinity_in_s && f.ord_inf() < 0 {
                return Ok(false);
            }
            Ok(true)
        }
        FieldElement::Number(a) => {
            let k = pres.number_field().unwrap();
            let (_, den) = a.integer_numerator();
            if den.is_one() {
                return Ok(true);
            }
            if k.degree() == 1 {
                // x = b/den in lowest terms
                return Ok(factorize(den.magnitude())
                    .into_iter()
                    .all(|(p, _)| s.is_fully_s(pres, &p)));
            }
            for (p, _) in factorize(den.magnitude()) {
                if s.is_fully_s(pres, &p) {
                    continue;
                }
                let info = s.primes.get(&p);
                let pu = p.to_u64();
                let factors = match info {
                    Some(i) => i.factors.clone(),
                    None => pu
                        .filter(|&q| squarefree_mod(k.min_poly_z(), q))
                        .map(|q| factor_mod(k.min_poly_z(), q)),
                };
                match factors {
                    Some(factors) => {
                        let in_s: &[usize] = info.map(|i| i.s_factors.as_slice()).unwrap_or(&[]);
                        for j in 0..factors.len() {
                            if in_s.contains(&j) {
                                continue;
                            }
                            if k.ord_unramified(a, &p, &factors, j) < 0 {
                                return Ok(false);
                            }
                        }
                    }
                    None if info.is_none() => {
                        // no S-place above p: p-integrality of the characteristic polynomial
                        if k.charpoly(a).iter().any(|c| valuation_q(c, &p) < 0) {
                            return Ok(false);
                        }
                    }
                    None => return Err(Error::RamifiedUnsupported { prime: p.to_string() }),
                }
            }
            Ok(true)
        }
    }
}

fn valuation_q(c: &Q, p: &BigUint) -> i64 {
    rational_ord(c, p)
}

/// Checks prod_{v in S} |x|_v = 1 for an S-unit x (exactly in the function
/// field case, by enclosure otherwise).
pub fn product_formula_check(pres: &Presentation, s: &PlaceSet, x: &FieldElement, prec: u32) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::NotAnSUnit);
    }
    let inv = pres.inv(x).unwrap();
    if !is_s_integral(pres, s, x)? || !is_s_integral(pres, s, &inv)? {
        return Err(Error::NotAnSUnit);
    }
    let mut exact = Q::one();
    let mut ball = Ball::exact(Q::one());
    for v in s.iter() {
        match abs_value(pres, v, x, prec)? {
            AbsValue::Exact(q) => exact *= q,
            AbsValue::Enclosure(b) => ball = ball.mul(&b).round(prec + 16),
        }
    }
    let total = ball.scale(&exact);
    Ok(total.contains(&Q::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};
    use crate::config::SystemConfig;
    use crate::field::presentation::parse_presentation;

    fn pres(text: &str) -> Presentation {
        parse_presentation(&SystemConfig::from_str_toml(text).unwrap()).unwrap()
    }

    fn x2x3() -> Presentation {
        pres("[system]\nname='x2x3'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3']\nmaximality_attested=true\n")
    }

    fn fib() -> Presentation {
        pres("[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\nmaximality_attested=true\n")
    }

    fn led() -> Presentation {
        pres("[system]\nname='led'\nd=2\ncharacteristic=2\n[field]\nbase_q=2\ngenerator_images=['t','1+t']\nmaximality_attested=true\n")
    }

    fn labels(s: &PlaceSet) -> Vec<String> {
        s.iter().map(|p| p.label.clone()).collect()
    }

    #[test]
    fn discovery() {
        assert_eq!(labels(&discover_places(&x2x3()).unwrap()), ["inf", "p2", "p3"]);
        assert_eq!(labels(&discover_places(&fib()).unwrap()), ["real0", "real1"]);
        assert_eq!(labels(&discover_places(&led()).unwrap()), ["t", "t + 1", "inf"]);
    }

    #[test]
    fn absolute_values() {
        let p = x2x3();
        let s = discover_places(&p).unwrap();
        let two = p.from_int(&2.into());
        assert_eq!(abs_value(&p, &s.places[1], &two, 64).unwrap(), AbsValue::Exact(q_frac(1, 2)));
        let f = fib();
        let sf = discover_places(&f).unwrap();
        let phi = abs_value(&f, &sf.places[1], &f.variable(), 128).unwrap().to_ball();
        assert!((phi.to_f64() - 1.618033988749895).abs() < 1e-15);
        assert!(phi.width() < crate::arith::ball::pow2(-120));
        let l = led();
        let sl = discover_places(&l).unwrap();
        let x = l.parse_element("t^2 + t + 1").unwrap();
        assert_eq!(abs_value(&l, &sl.places[2], &x, 64).unwrap(), AbsValue::Exact(q_int(4)));
    }

    #[test]
    fn ring_membership() {
        let p = x2x3();
        let s = discover_places(&p).unwrap();
        assert!(!in_ring(&p, &s, &p.parse_element("3/7").unwrap()).unwrap());
        assert!(in_ring(&p, &s, &p.parse_element("5/12").unwrap()).unwrap());
        let l = led();
        let sl = discover_places(&l).unwrap();
        assert!(in_ring(&l, &sl, &l.parse_element("(t^2+t+1)/t").unwrap()).unwrap());
        assert!(!in_ring(&l, &sl, &l.parse_element("1/(t^2+t+1)").unwrap()).unwrap());
        let f = fib();
        let sf = discover_places(&f).unwrap();
        assert!(in_ring(&f, &sf, &f.parse_element("x^5 - 3").unwrap()).unwrap());
        assert!(!in_ring(&f, &sf, &f.parse_element("x/2").unwrap()).unwrap());
        // (1 + sqrt 5)/2 style denominators: x is integral, (2x - 1)/5 is not
        assert!(!in_ring(&f, &sf, &f.parse_element("(2x - 1)/5").unwrap()).unwrap());
    }

    #[test]
    fn maximality_required() {
        let p = pres("[system]\nname='x2'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\n");
        let s = discover_places(&p).unwrap();
        assert_eq!(in_ring(&p, &s, &p.one()), Err(Error::MaximalityNotAttested));
    }

    #[test]
    fn product_formula() {
        let p = x2x3();
        let s = discover_places(&p).unwrap();
        assert!(product_formula_check(&p, &s, &p.from_int(&6.into()), 128).unwrap());
        assert_eq!(
            product_formula_check(&p, &s, &p.from_int(&5.into()), 128),
            Err(Error::NotAnSUnit)
        );
        let f = fib();
        let sf = discover_places(&f).unwrap();
        assert!(product_formula_check(&f, &sf, &f.variable(), 128).unwrap());
    }

    #[test]
    fn split_prime_places() {
        // Gaussian integers with generator 2 + i: one place above 5 in S
        let p = pres("[system]\nname='g'\nd=1\n[field]\nmin_poly='x^2 + 1'\ngenerator_images=['2 + x']\nmaximality_attested=true\n");
        let s = discover_places(&p).unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(s.places[0].kind, PlaceKind::Complex { .. }));
        assert_eq!(s.places[1].generator_ords, vec![1]);
        assert!(!s.is_fully_s(&p, &BigUint::from(5u32)));
        // 1/(2+x) is in O_S, 1/(2-x) is not, 1/5 is not
        assert!(in_ring(&p, &s, &p.parse_element("1/(2+x)").unwrap()).unwrap());
        assert!(!in_ring(&p, &s, &p.parse_element("1/(2-x)").unwrap()).unwrap());
        assert!(!in_ring(&p, &s, &p.parse_element("1/5").unwrap()).unwrap());
        assert!(product_formula_check(&p, &s, &p.generators()[0], 128).unwrap());
    }

    #[test]
    fn ramified_prime_needs_data() {
        // x^2 - 2 is not squarefree mod 2
        let cfg = "[system]\nname='r'\nd=1\n[field]\nmin_poly='x^2 - 2'\ngenerator_images=['1 + x']\n";
        // 1 + sqrt2 is a unit: no finite places at all
        let p = pres(cfg);
        assert_eq!(discover_places(&p).unwrap().len(), 2);
        let p = pres("[system]\nname='r'\nd=1\n[field]\nmin_poly='x^2 - 2'\ngenerator_images=['x']\n");
        assert_eq!(
            discover_places(&p).unwrap_err(),
            Error::RamifiedUnsupported { prime: "2".into() }
        );
        let p = pres("[system]\nname='r'\nd=1\n[field]\nmin_poly='x^2 - 2'\ngenerator_images=['x']\n[[field.explicit_places]]\nprime=2\nramification=2\nresidue_degree=1\nords=[1]\n");
        let s = discover_places(&p).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.is_fully_s(&p, &BigUint::from(2u32)));
    }
}
