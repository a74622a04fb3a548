//! Explicit presentations of cyclic modules inside a global field: the field
//! itself plus the images g_1, ..., g_d of the variables u_1, ..., u_d.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::ball::Q;
use crate::arith::integer::is_prime_u64;
use crate::config::{ExplicitPlaceConfig, SystemConfig};
use crate::error::{Error, Result};
use crate::field::expr::{self, ExprTarget};
use crate::field::function::RatFunc;
use crate::field::number::NumberField;
use crate::poly::fp::{invmod_u64, FpPoly};
use crate::poly::qpoly::QPoly;

/// An element of K: a reduced polynomial in x over Q, or a rational
/// function over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Number(QPoly),
    Function(RatFunc),
}

impl FieldElement {
    pub fn as_number(&self) -> &QPoly {
        match self {
            FieldElement::Number(p) => p,
            FieldElement::Function(_) => panic!("expected a number field element"),
        }
    }

    pub fn as_function(&self) -> &RatFunc {
        match self {
            FieldElement::Function(f) => f,
            FieldElement::Number(_) => panic!("expected a function field element"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Number(p) => p.is_zero(),
            FieldElement::Function(f) => f.is_zero(),
        }
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        match self {
            FieldElement::Number(p) => NumberField::as_rational(p),
            FieldElement::Function(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Number(NumberField),
    Function { q: u64 },
}

/// Place data supplied by the user for a prime where f is not squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitPlace {
    pub prime: u64,
    pub ramification: u32,
    pub residue_degree: u32,
    pub ords: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    d: usize,
    backend: Backend,
    generators: Vec<FieldElement>,
    inverses: Vec<FieldElement>,
    maximality_attested: bool,
    explicit_places: Vec<ExplicitPlace>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        backend: Backend,
        generators: Vec<FieldElement>,
        maximality_attested: bool,
        explicit_places: Vec<ExplicitPlace>,
    ) -> Result<Self> {
        let d = generators.len();
        if d == 0 {
            return Err(Error::malformed("field.generator_images", "need at least one generator"));
        }
        let mut pres = Presentation {
            name: name.into(),
            d,
            backend,
            generators: Vec::new(),
            inverses: Vec::new(),
            maximality_attested,
            explicit_places,
        };
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index: i + 1 });
            }
        }
        pres.inverses = generators.iter().map(|g| pres.inv(g).expect("nonzero")).collect();
        pres.generators = generators;
        for p in &pres.explicit_places {
            if p.ords.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.ords.len(),
                });
            }
        }
        Ok(pres)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn characteristic(&self) -> u64 {
        match &self.backend {
            Backend::Number(_) => 0,
            Backend::Function { q } => *q,
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn number_field(&self) -> Option<&NumberField> {
        match &self.backend {
            Backend::Number(k) => Some(k),
            Backend::Function { .. } => None,
        }
    }

    /// Degree of K over its prime field's rational (function) field.
    pub fn degree(&self) -> usize {
        match &self.backend {
            Backend::Number(k) => k.degree(),
            Backend::Function { .. } => 1,
        }
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn inverses(&self) -> &[FieldElement] {
        &self.inverses
    }

    pub fn maximality_attested(&self) -> bool {
        self.maximality_attested
    }

    pub fn explicit_places(&self) -> &[ExplicitPlace] {
        &self.explicit_places
    }

    /// Whether two presentations share the same field (so their elements
    /// can be combined).
    pub fn same_field(&self, other: &Presentation) -> bool {
        match (&self.backend, &other.backend) {
            (Backend::Number(a), Backend::Number(b)) => a.min_poly() == b.min_poly(),
            (Backend::Function { q: a }, Backend::Function { q: b }) => a == b,
            _ => false,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, n: &BigInt) -> FieldElement {
        match &self.backend {
            Backend::Number(_) => FieldElement::Number(QPoly::constant(Q::from_integer(n.clone()))),
            Backend::Function { q } => {
                let r = n.mod_floor(&BigInt::from(*q)).to_u64().unwrap();
                FieldElement::Function(RatFunc::constant(*q, r))
            }
        }
    }

    /// Image of a rational; in characteristic q the denominator must be a unit.
    pub fn from_q(&self, x: &Q) -> Result<FieldElement> {
        match &self.backend {
            Backend::Number(_) => Ok(FieldElement::Number(QPoly::constant(x.clone()))),
            Backend::Function { q } => {
                let qb = BigInt::from(*q);
                let den = x.denom().mod_floor(&qb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::InvalidArgument(format!("{x} has no image in characteristic {q}")));
                }
                let num = x.numer().mod_floor(&qb).to_u64().unwrap();
                let c = num * invmod_u64(den, *q) % q;
                Ok(FieldElement::Function(RatFunc::constant(*q, c)))
            }
        }
    }

    /// The generator of K over the prime field's rational field: x or t.
    pub fn variable(&self) -> FieldElement {
        match &self.backend {
            Backend::Number(k) => FieldElement::Number(k.reduce(&QPoly::x())),
            Backend::Function { q } => FieldElement::Function(RatFunc::from_poly(FpPoly::x(*q))),
        }
    }

    pub fn variable_name(&self) -> &'static str {
        match &self.backend {
            Backend::Number(_) => "x",
            Backend::Function { .. } => "t",
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Number(x), FieldElement::Number(y)) => FieldElement::Number(x.add(y)),
            (FieldElement::Function(x), FieldElement::Function(y)) => FieldElement::Function(x.add(y)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Number(x), FieldElement::Number(y)) => FieldElement::Number(x.sub(y)),
            (FieldElement::Function(x), FieldElement::Function(y)) => FieldElement::Function(x.sub(y)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Number(x) => FieldElement::Number(x.neg()),
            FieldElement::Function(x) => FieldElement::Function(x.neg()),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.backend, a, b) {
            (Backend::Number(k), FieldElement::Number(x), FieldElement::Number(y)) => {
                // rational scalars skip the reduction
                if x.degree().unwrap_or(0) == 0 {
                    return FieldElement::Number(y.scale(&x.coeff(0)));
                }
                if y.degree().unwrap_or(0) == 0 {
                    return FieldElement::Number(x.scale(&y.coeff(0)));
                }
                FieldElement::Number(k.mul(x, y))
            }
            (Backend::Function { .. }, FieldElement::Function(x), FieldElement::Function(y)) => {
                FieldElement::Function(x.mul(y))
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        match (&self.backend, a) {
            (Backend::Number(k), FieldElement::Number(x)) => {
                if let Some(r) = NumberField::as_rational(x) {
                    if r.is_zero() {
                        return None;
                    }
                    return Some(FieldElement::Number(QPoly::constant(r.recip())));
                }
                k.inv(x).map(FieldElement::Number)
            }
            (Backend::Function { .. }, FieldElement::Function(x)) => x.inv().map(FieldElement::Function),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Option<FieldElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Some(acc)
    }

    /// beta_n = g_1^{n_1} ... g_d^{n_d}.
    pub fn monomial(&self, n: &[i64]) -> FieldElement {
        assert_eq!(n.len(), self.d, "exponent dimension");
        let mut acc = self.one();
        for (i, &e) in n.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if e > 0 { &self.generators[i] } else { &self.inverses[i] };
            let p = self.pow(base, e.abs()).expect("generators are units");
            acc = self.mul(&acc, &p);
        }
        acc
    }

    /// Parses an element written in x (or t) and, optionally, the
    /// generator symbols u1..ud.
    pub fn parse_element(&self, src: &str) -> Result<FieldElement> {
        let e = expr::parse(src)?;
        expr::eval(&e, &ElementCtx { pres: self, generators: true })
    }

    pub fn format(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Number(p) => crate::poly::qpoly::format_poly(p.coeffs(), "x"),
            FieldElement::Function(f) => f.format("t"),
        }
    }

    pub fn display<'a>(&'a self, a: &'a FieldElement) -> Displayed<'a> {
        Displayed { pres: self, elem: a }
    }
}

pub struct Displayed<'a> {
    pres: &'a Presentation,
    elem: &'a FieldElement,
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pres.format(self.elem))
    }
}

struct ElementCtx<'a> {
    pres: &'a Presentation,
    generators: bool,
}

impl ExprTarget for ElementCtx<'_> {
    type Value = FieldElement;

    fn from_int(&self, n: &BigInt) -> Result<FieldElement> {
        Ok(self.pres.from_int(n))
    }

    fn var(&self, name: &str) -> Result<FieldElement> {
        if name == self.pres.variable_name() {
            return Ok(self.pres.variable());
        }
        if self.generators {
            if let Some(i) = name.strip_prefix('u').and_then(|s| s.parse::<usize>().ok()) {
                if (1..=self.pres.d).contains(&i) {
                    return Ok(self.pres.generators[i - 1].clone());
                }
            }
        }
        Err(Error::malformed("expression", format!("unknown variable `{name}`")))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.pres.add(a, b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.pres.sub(a, b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.pres.mul(a, b)
    }

    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.pres
            .div(a, b)
            .ok_or_else(|| Error::malformed("expression", "division by zero"))
    }

    fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        self.pres
            .pow(a, e)
            .ok_or_else(|| Error::malformed("expression", "negative power of zero"))
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.pres.neg(a)
    }
}

/// Polynomials over Q in one variable, for minimal polynomials.
struct QPolyCtx;

impl ExprTarget for QPolyCtx {
    type Value = QPoly;

    fn from_int(&self, n: &BigInt) -> Result<QPoly> {
        Ok(QPoly::constant(Q::from_integer(n.clone())))
    }

    fn var(&self, name: &str) -> Result<QPoly> {
        if name == "x" {
            Ok(QPoly::x())
        } else {
            Err(Error::malformed("field.min_poly", format!("unknown variable `{name}` (use x)")))
        }
    }

    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }

    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b)
    }

    fn div(&self, a: &QPoly, b: &QPoly) -> Result<QPoly> {
        match b.degree() {
            Some(0) => Ok(a.scale(&b.coeff(0).recip())),
            _ => Err(Error::malformed("field.min_poly", "division by a non-constant")),
        }
    }

    fn pow(&self, a: &QPoly, e: i64) -> Result<QPoly> {
        if e < 0 {
            return Err(Error::malformed("field.min_poly", "negative exponent"));
        }
        Ok((0..e).fold(QPoly::constant(Q::one()), |acc, _| acc.mul(a)))
    }

    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
}

pub fn parse_qpoly(src: &str) -> Result<QPoly> {
    expr::eval(&expr::parse(src)?, &QPolyCtx)
}

/// Parses an exact rational such as `-3/2` (any constant expression).
pub fn parse_rational(src: &str) -> Result<Q> {
    let p = parse_qpoly(src)?;
    match p.degree() {
        None => Ok(Q::zero()),
        Some(0) => Ok(p.coeff(0)),
        _ => Err(Error::malformed("rational", format!("`{src}` is not a constant"))),
    }
}

/// Builds and validates a presentation from a configuration document.
pub fn parse_presentation(cfg: &SystemConfig) -> Result<Presentation> {
    let d = cfg.system.d;
    if d == 0 {
        return Err(Error::malformed("system.d", "d must be at least 1"));
    }
    let field = cfg
        .field
        .as_ref()
        .ok_or_else(|| Error::malformed("field", "missing [field] section"))?;
    if field.generator_images.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: field.generator_images.len(),
        });
    }
    let char = cfg.system.characteristic;
    let backend = if char == 0 {
        if field.base_q.is_some() {
            return Err(Error::malformed("field.base_q", "base_q requires a positive characteristic"));
        }
        let src = field
            .min_poly
            .as_deref()
            .ok_or_else(|| Error::malformed("field.min_poly", "required in characteristic 0"))?;
        Backend::Number(NumberField::new(parse_qpoly(src)?)?)
    } else {
        if !is_prime_u64(char) {
            return Err(Error::CompositeCharacteristic(char));
        }
        if char >= 1 << 31 {
            return Err(Error::malformed("system.characteristic", "characteristic must be below 2^31"));
        }
        if let Some(q) = field.base_q {
            if q != char {
                return Err(Error::malformed(
                    "field.base_q",
                    format!("base field F_{q} does not match characteristic {char}"),
                ));
            }
        }
        if field.min_poly.is_some() {
            return Err(Error::malformed("field.min_poly", "only the rational function field is supported in positive characteristic"));
        }
        if !field.explicit_places.is_empty() {
            return Err(Error::malformed("field.explicit_places", "explicit places apply to number fields only"));
        }
        Backend::Function { q: char }
    };
    // a scratch presentation (with dummy generators) for parsing the images
    let scratch = Presentation {
        name: String::new(),
        d: 0,
        backend: backend.clone(),
        generators: vec![],
        inverses: vec![],
        maximality_attested: false,
        explicit_places: vec![],
    };
    let ctx = ElementCtx {
        pres: &scratch,
        generators: false,
    };
    let mut gens = Vec::with_capacity(d);
    for (i, src) in field.generator_images.iter().enumerate() {
        let e = expr::parse(src).map_err(|err| relabel(err, &format!("field.generator_images[{i}]")))?;
        let g = expr::eval(&e, &ctx).map_err(|err| relabel(err, &format!("field.generator_images[{i}]")))?;
        gens.push(g);
    }
    let explicit = field.explicit_places.iter().map(explicit_place).collect::<Result<Vec<_>>>()?;
    Presentation::new(cfg.system.name.clone(), backend, gens, field.maximality_attested, explicit)
}

fn explicit_place(c: &ExplicitPlaceConfig) -> Result<ExplicitPlace> {
    if !is_prime_u64(c.prime) {
        return Err(Error::malformed("field.explicit_places.prime", format!("{} is not prime", c.prime)));
    }
    if c.ramification == 0 || c.residue_degree == 0 {
        return Err(Error::malformed("field.explicit_places", "ramification and residue degree must be positive"));
    }
    Ok(ExplicitPlace {
        prime: c.prime,
        ramification: c.ramification,
        residue_degree: c.residue_degree,
        ords: c.ords.clone(),
    })
}

fn relabel(err: Error, field: &str) -> Error {
    match err {
        Error::Malformed { message, .. } => Error::malformed(field, message),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};

    fn cfg(text: &str) -> SystemConfig {
        SystemConfig::from_str_toml(text).unwrap()
    }

    fn x2x3() -> Presentation {
        parse_presentation(&cfg(
            "[system]\nname='x2x3'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2','3']\nmaximality_attested=true\n",
        ))
        .unwrap()
    }

    #[test]
    fn rational_presentation() {
        let p = x2x3();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.monomial(&[1, -1]).as_rational(), Some(q_frac(2, 3)));
        assert_eq!(p.parse_element("u1 u2 - 1").unwrap().as_rational(), Some(q_int(5)));
        assert_eq!(p.parse_element("5/12").unwrap().as_rational(), Some(q_frac(5, 12)));
    }

    #[test]
    fn fibonacci_presentation() {
        let p = parse_presentation(&cfg(
            "[system]\nname='fib'\nd=1\n[field]\nmin_poly='x^2 - x - 1'\ngenerator_images=['x']\n",
        ))
        .unwrap();
        // phi^2 = phi + 1
        let phi2 = p.monomial(&[2]);
        assert_eq!(p.format(&phi2), "x + 1");
        assert_eq!(p.format(&p.monomial(&[-1])), "x - 1");
    }

    #[test]
    fn ledrappier_presentation() {
        let p = parse_presentation(&cfg(
            "[system]\nname='led'\nd=2\ncharacteristic=2\n[field]\nbase_q=2\ngenerator_images=['t','1+t']\n",
        ))
        .unwrap();
        let b = p.monomial(&[1, 1]);
        assert_eq!(p.format(&b), "t^2 + t");
        assert_eq!(p.format(&p.parse_element("(t^2+t+1)/t").unwrap()), "(t^2 + t + 1)/t");
    }

    #[test]
    fn validation_errors() {
        let e = parse_presentation(&cfg(
            "[system]\nname='r'\nd=1\n[field]\nmin_poly='x^2 - 1'\ngenerator_images=['x']\n",
        ))
        .unwrap_err();
        assert!(matches!(e, Error::Reducible { .. }));
        let e = parse_presentation(&cfg(
            "[system]\nname='z'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['0']\n",
        ))
        .unwrap_err();
        assert_eq!(e, Error::ZeroGenerator { index: 1 });
        let e = parse_presentation(&cfg(
            "[system]\nname='c'\nd=1\ncharacteristic=4\n[field]\ngenerator_images=['t']\n",
        ))
        .unwrap_err();
        assert_eq!(e, Error::CompositeCharacteristic(4));
        let e = parse_presentation(&cfg(
            "[system]\nname='m'\nd=2\n[field]\nmin_poly='x - 1'\ngenerator_images=['2']\n",
        ))
        .unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch { .. }));
        let e = parse_presentation(&cfg(
            "[system]\nname='m'\nd=1\n[field]\nmin_poly='x - 1'\ngenerator_images=['2 +']\n",
        ))
        .unwrap_err();
        assert!(e.to_string().contains("generator_images[0]"), "{e}");
    }

    #[test]
    fn zero_in_char_q_rejected() {
        let e = parse_presentation(&cfg(
            "[system]\nname='z'\nd=1\ncharacteristic=3\n[field]\ngenerator_images=['3t']\n",
        ))
        .unwrap_err();
        assert_eq!(e, Error::ZeroGenerator { index: 1 });
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), q_frac(-3, 2));
        assert!(parse_rational("x").is_err());
    }
}
