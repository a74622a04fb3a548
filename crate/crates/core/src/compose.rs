//! Non-cyclic systems assembled from cyclic leaves by sums and extensions,
//! optionally cut down to an invariant coordinate submodule.
//!
//! Elements are tuples with one field element per leaf. Each generator acts
//! by an upper-triangular matrix whose diagonal entries are the leaf
//! generators and whose off-diagonal blocks come from extension couplings.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::ball::Q;
use crate::config::{resolve, CompositionNode, SystemConfig};
use crate::error::{Error, Result};
use crate::field::places::in_ring;
use crate::field::presentation::FieldElement;
use crate::laurent::ExponentVector;
use crate::system::System;
use crate::uniformity::enumerate::{enumerate_hk, ExhaustiveSet};
use crate::uniformity::property::Property;
use crate::uniformity::rates::default_b;
use crate::uniformity::scan::PropertyCheck;

pub type Tuple = Vec<FieldElement>;
type Entry = Option<FieldElement>;
type Mat = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    All,
    Zero,
    /// Leaf indices (global) that vanish on the submodule.
    Vanish(Vec<usize>),
}

#[derive(Clone, Debug)]
enum Kind {
    Leaf,
    Sum(Vec<Shape>),
    Extension {
        sub: Box<Shape>,
        quotient: Box<Shape>,
        /// quotient tuple -> sub tuple, both over the full leaf range
        reps: BTreeMap<Tuple, Tuple>,
    },
    Restrict {
        inner: Box<Shape>,
        pred: Predicate,
    },
}

#[derive(Clone, Debug)]
struct Shape {
    kind: Kind,
    lo: usize,
    hi: usize,
}

impl Shape {
    fn shifted(&self, by: usize, zero: &[FieldElement]) -> Shape {
        let kind = match &self.kind {
            Kind::Leaf => Kind::Leaf,
            Kind::Sum(parts) => Kind::Sum(parts.iter().map(|p| p.shifted(by, zero)).collect()),
            Kind::Extension { sub, quotient, reps } => Kind::Extension {
                sub: Box::new(sub.shifted(by, zero)),
                quotient: Box::new(quotient.shifted(by, zero)),
                reps: reps
                    .iter()
                    .map(|(q, s)| (widen(q, by, zero), widen(s, by, zero)))
                    .collect(),
            },
            Kind::Restrict { inner, pred } => Kind::Restrict {
                inner: Box::new(inner.shifted(by, zero)),
                pred: match pred {
                    Predicate::Vanish(v) => Predicate::Vanish(v.iter().map(|i| i + by).collect()),
                    p => p.clone(),
                },
            },
        };
        Shape {
            kind,
            lo: self.lo + by,
            hi: self.hi + by,
        }
    }
}

/// Places `t` at offset `by` inside a copy of `zero`.
fn widen(t: &[FieldElement], by: usize, zero: &[FieldElement]) -> Tuple {
    let mut out = zero.to_vec();
    out[by..by + t.len()].clone_from_slice(t);
    out
}

#[derive(Clone, Debug)]
pub struct ComposedModule {
    d: usize,
    leaves: Vec<Arc<System>>,
    names: Vec<String>,
    shape: Shape,
    actions: Vec<Mat>,
    inverses: Vec<Mat>,
}

/// Summary of the Property I constant combined over leaves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComposedRate {
    pub b: f64,
    pub leaves: Vec<(String, f64)>,
}

impl ComposedModule {
    pub fn leaf(sys: System) -> Result<Self> {
        sys.require_mixing()?;
        let d = sys.dim();
        let actions = (0..d).map(|i| vec![vec![Some(sys.pres.generators()[i].clone())]]).collect();
        let inverses = (0..d).map(|i| vec![vec![Some(sys.pres.inverses()[i].clone())]]).collect();
        Ok(ComposedModule {
            d,
            names: vec![sys.pres.name().to_string()],
            leaves: vec![Arc::new(sys)],
            shape: Shape {
                kind: Kind::Leaf,
                lo: 0,
                hi: 1,
            },
            actions,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn width(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaves(&self) -> &[Arc<System>] {
        &self.leaves
    }

    pub fn leaf_names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> Tuple {
        self.leaves.iter().map(|l| l.pres.zero()).collect()
    }

    /// Parses one expression per leaf.
    pub fn parse_tuple(&self, parts: &[String]) -> Result<Tuple> {
        if parts.len() != self.width() {
            return Err(Error::DimensionMismatch {
                expected: self.width(),
                got: parts.len(),
            });
        }
        self.leaves.iter().zip(parts).map(|(l, s)| l.pres.parse_element(s)).collect()
    }

    pub fn format(&self, t: &[FieldElement]) -> String {
        let parts: Vec<String> = self.leaves.iter().zip(t).map(|(l, x)| l.pres.format(x)).collect();
        format!("({})", parts.join(", "))
    }

    /// Max over leaves of B = 2/C.
    pub fn composed_rate(&self) -> Result<ComposedRate> {
        let mut leaves = Vec::new();
        let mut b = 0.0f64;
        for (l, name) in self.leaves.iter().zip(&self.names) {
            let c = l.separation_constant()?.to_f64();
            let bl = default_b(c);
            b = b.max(bl);
            leaves.push((name.clone(), bl));
        }
        Ok(ComposedRate { b, leaves })
    }

    fn is_zero(t: &[FieldElement]) -> bool {
        t.iter().all(|x| x.is_zero())
    }

    fn add(&self, a: &[FieldElement], b: &[FieldElement]) -> Tuple {
        self.leaves.iter().zip(a.iter().zip(b)).map(|(l, (x, y))| l.pres.add(x, y)).collect()
    }

    fn sub(&self, a: &[FieldElement], b: &[FieldElement]) -> Tuple {
        self.leaves.iter().zip(a.iter().zip(b)).map(|(l, (x, y))| l.pres.sub(x, y)).collect()
    }

    fn pad_zeros(&self, t: &mut Tuple) {
        for (x, l) in t.iter_mut().zip(&self.leaves) {
            if x.is_zero() {
                *x = l.pres.zero();
            }
        }
    }

    fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let w = self.width();
        let mut out = vec![vec![None; w]; w];
        for r in 0..w {
            let pres = &self.leaves[r].pres;
            for c in r..w {
                let mut acc: Option<FieldElement> = None;
                for k in r..=c {
                    if let (Some(x), Some(y)) = (&a[r][k], &b[k][c]) {
                        let p = pres.mul(x, y);
                        acc = Some(match acc {
                            Some(s) => pres.add(&s, &p),
                            None => p,
                        });
                    }
                }
                out[r][c] = acc.filter(|x| !x.is_zero());
            }
        }
        out
    }

    fn identity(&self) -> Mat {
        let w = self.width();
        (0..w)
            .map(|r| (0..w).map(|c| (r == c).then(|| self.leaves[r].pres.one())).collect())
            .collect()
    }

    fn apply(&self, m: &Mat, t: &[FieldElement]) -> Tuple {
        let w = self.width();
        (0..w)
            .map(|r| {
                let pres = &self.leaves[r].pres;
                let mut acc = pres.zero();
                for c in r..w {
                    if let Some(x) = &m[r][c] {
                        if !t[c].is_zero() {
                            acc = pres.add(&acc, &pres.mul(x, &t[c]));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// The matrix of u^n.
    pub fn action(&self, n: &ExponentVector) -> Result<Vec<Vec<Option<FieldElement>>>> {
        if n.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: n.dim(),
            });
        }
        let mut m = self.identity();
        for (i, &e) in n.entries().iter().enumerate() {
            let base = if e >= 0 { &self.actions[i] } else { &self.inverses[i] };
            let mut p = base.clone();
            let mut e = e.unsigned_abs();
            while e > 0 {
                if e & 1 == 1 {
                    m = self.mat_mul(&m, &p);
                }
                e >>= 1;
                if e > 0 {
                    p = self.mat_mul(&p, &p);
                }
            }
        }
        Ok(m)
    }

    fn finish(mut self) -> Result<Self> {
        self.inverses = self.actions.iter().map(|a| self.triangular_inverse(a)).collect();
        for i in 0..self.d {
            for j in i + 1..self.d {
                let ab = self.mat_mul(&self.actions[i], &self.actions[j]);
                let ba = self.mat_mul(&self.actions[j], &self.actions[i]);
                if ab != ba {
                    return Err(Error::InvalidArgument(format!(
                        "the actions of u{} and u{} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(self)
    }

    fn triangular_inverse(&self, a: &Mat) -> Mat {
        let w = self.width();
        let mut inv: Mat = vec![vec![None; w]; w];
        for c in 0..w {
            for r in (0..=c).rev() {
                let pres = &self.leaves[r].pres;
                let d = pres.inv(a[r][r].as_ref().unwrap()).unwrap();
                let v = if r == c {
                    d
                } else {
                    let mut acc = pres.zero();
                    for k in r + 1..=c {
                        if let (Some(x), Some(y)) = (&a[r][k], &inv[k][c]) {
                            acc = pres.add(&acc, &pres.mul(x, y));
                        }
                    }
                    pres.neg(&pres.mul(&d, &acc))
                };
                inv[r][c] = Some(v).filter(|x| !x.is_zero());
            }
        }
        inv
    }

    fn block_diag(parts: &[&ComposedModule], gen: usize, inverse: bool) -> Mat {
        let w: usize = parts.iter().map(|p| p.width()).sum();
        let mut m = vec![vec![None; w]; w];
        let mut off = 0;
        for p in parts {
            let src = if inverse { &p.inverses[gen] } else { &p.actions[gen] };
            for r in 0..p.width() {
                for c in 0..p.width() {
                    m[off + r][off + c] = src[r][c].clone();
                }
            }
            off += p.width();
        }
        m
    }

    fn concat(parts: &[&ComposedModule]) -> Result<(usize, Vec<Arc<System>>, Vec<String>, Vec<Shape>)> {
        let d = parts.first().ok_or_else(|| Error::InvalidArgument("empty composition".into()))?.d;
        let zero: Tuple = parts.iter().flat_map(|p| p.zero()).collect();
        let mut leaves = Vec::new();
        let mut names = Vec::new();
        let mut shapes = Vec::new();
        for p in parts {
            if p.d != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.d });
            }
            shapes.push(p.shape.shifted(leaves.len(), &zero));
            leaves.extend(p.leaves.iter().cloned());
            names.extend(p.names.iter().cloned());
        }
        Ok((d, leaves, names, shapes))
    }

    /// Membership of a full tuple in the module (not the exhaustive set).
    fn module_contains(&self, shape: &Shape, t: &[FieldElement]) -> Result<bool> {
        match &shape.kind {
            Kind::Leaf => {
                let l = &self.leaves[shape.lo];
                in_ring(&l.pres, &l.places, &t[shape.lo])
            }
            Kind::Sum(parts) => {
                for p in parts {
                    if !self.module_contains(p, t)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Kind::Extension { sub, quotient, .. } => {
                Ok(self.module_contains(sub, t)? && self.module_contains(quotient, t)?)
            }
            Kind::Restrict { inner, pred } => Ok(satisfies(pred, shape, t) && self.module_contains(inner, t)?),
        }
    }

    /// Exhaustive set of the composed module for one theta.
    pub fn exhaustive_set(&self, k: u32, theta: &Q, cap: usize) -> Result<ComposedSet> {
        let leaf_sets = self
            .leaves
            .iter()
            .map(|l| enumerate_hk(l, k, theta, cap))
            .collect::<Result<Vec<_>>>()?;
        let mut all = self.build(&self.shape, &leaf_sets, cap)?;
        all.retain(|t| !Self::is_zero(t));
        all.sort();
        all.dedup();
        Ok(ComposedSet {
            k,
            theta: theta.clone(),
            elements: all,
            leaf_sets,
        })
    }

    /// The set of `shape` including zero, as full tuples.
    fn build(&self, shape: &Shape, sets: &[ExhaustiveSet], cap: usize) -> Result<Vec<Tuple>> {
        let zero = self.zero();
        let out = match &shape.kind {
            Kind::Leaf => {
                let mut v = vec![zero.clone()];
                for h in &sets[shape.lo].elements {
                    let mut t = zero.clone();
                    t[shape.lo] = h.clone();
                    v.push(t);
                }
                v
            }
            Kind::Sum(parts) => {
                let mut acc = vec![zero.clone()];
                for p in parts {
                    let ps = self.build(p, sets, cap)?;
                    if acc.len().saturating_mul(ps.len()) > cap {
                        return Err(Error::SetTooLarge { cap });
                    }
                    acc = acc.iter().flat_map(|a| ps.iter().map(|b| self.add(a, b))).collect();
                }
                acc
            }
            Kind::Extension { sub, quotient, reps } => {
                let qs = self.build(quotient, sets, cap)?;
                let ss = self.build(sub, sets, cap)?;
                if qs.len().saturating_mul(ss.len()) > cap {
                    return Err(Error::SetTooLarge { cap });
                }
                let mut v = Vec::with_capacity(qs.len() * ss.len());
                for q in &qs {
                    let x = self.add(q, reps.get(q).unwrap_or(&zero));
                    for h in &ss {
                        v.push(self.add(&x, h));
                    }
                }
                v
            }
            Kind::Restrict { inner, pred } => {
                let mut v = self.build(inner, sets, cap)?;
                v.retain(|t| satisfies(pred, shape, t));
                v
            }
        };
        Ok(out)
    }

    /// Membership in the set of `shape` with zero included.
    fn set_contains(&self, shape: &Shape, sets: &[ExhaustiveSet], t: &[FieldElement]) -> bool {
        match &shape.kind {
            Kind::Leaf => t[shape.lo].is_zero() || sets[shape.lo].contains(&t[shape.lo]),
            Kind::Sum(parts) => parts.iter().all(|p| self.set_contains(p, sets, t)),
            Kind::Extension { sub, quotient, reps } => {
                if !self.set_contains(quotient, sets, t) {
                    return false;
                }
                let mut q = self.zero();
                q[quotient.lo..quotient.hi].clone_from_slice(&t[quotient.lo..quotient.hi]);
                let mut rest = t.to_vec();
                for i in quotient.lo..quotient.hi {
                    rest[i] = self.leaves[i].pres.zero();
                }
                if let Some(s) = reps.get(&q) {
                    rest = self.sub(&rest, s);
                }
                self.set_contains(sub, sets, &rest)
            }
            Kind::Restrict { inner, pred } => satisfies(pred, shape, t) && self.set_contains(inner, sets, t),
        }
    }
}

fn satisfies(pred: &Predicate, shape: &Shape, t: &[FieldElement]) -> bool {
    match pred {
        Predicate::All => true,
        Predicate::Zero => t[shape.lo..shape.hi].iter().all(|x| x.is_zero()),
        Predicate::Vanish(v) => v.iter().all(|&i| t[i].is_zero()),
    }
}

/// M' = M(1) + ... + M(r).
pub fn direct_sum(parts: Vec<ComposedModule>) -> Result<ComposedModule> {
    let refs: Vec<&ComposedModule> = parts.iter().collect();
    let (d, leaves, names, shapes) = ComposedModule::concat(&refs)?;
    if shapes.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let w = leaves.len();
    let m = ComposedModule {
        d,
        actions: (0..d).map(|i| ComposedModule::block_diag(&refs, i, false)).collect(),
        inverses: vec![],
        leaves,
        names,
        shape: Shape {
            kind: Kind::Sum(shapes),
            lo: 0,
            hi: w,
        },
    };
    m.finish()
}

/// M with L = `sub` and M/L = `quotient`; u_i acts by
/// [[A_i(sub), coupling_i], [0, A_i(quotient)]]. `reps` maps quotient tuples
/// to sub tuples; unlisted quotient elements use the zero section.
pub fn extension(
    sub: ComposedModule,
    quotient: ComposedModule,
    coupling: Vec<Vec<Vec<Option<FieldElement>>>>,
    reps: Vec<(Tuple, Tuple)>,
) -> Result<ComposedModule> {
    let refs = [&sub, &quotient];
    let (d, leaves, names, shapes) = ComposedModule::concat(&refs)?;
    let (ws, wq) = (sub.width(), quotient.width());
    let w = ws + wq;
    if coupling.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: coupling.len(),
        });
    }
    let mut actions = Vec::with_capacity(d);
    for (i, c) in coupling.into_iter().enumerate() {
        let mut m = ComposedModule::block_diag(&refs, i, false);
        if c.len() != ws || c.iter().any(|row| row.len() != wq) {
            return Err(Error::InvalidArgument(format!(
                "coupling matrix {} must be {ws} x {wq}",
                i + 1
            )));
        }
        for (r, row) in c.into_iter().enumerate() {
            for (k, e) in row.into_iter().enumerate() {
                let e = e.filter(|x| !x.is_zero());
                if e.is_some() && !leaves[r].pres.same_field(&leaves[ws + k].pres) {
                    return Err(Error::InvalidArgument(format!(
                        "coupling entry ({}, {}) of generator {} joins leaves over different fields",
                        r + 1,
                        k + 1,
                        i + 1
                    )));
                }
                m[r][ws + k] = e;
            }
        }
        actions.push(m);
    }
    let mut shapes = shapes.into_iter();
    let sub_shape = shapes.next().unwrap();
    let quot_shape = shapes.next().unwrap();
    let mut m = ComposedModule {
        d,
        leaves,
        names,
        shape: Shape {
            kind: Kind::Leaf,
            lo: 0,
            hi: w,
        },
        actions,
        inverses: vec![],
    };
    let zero = m.zero();
    let mut table = BTreeMap::new();
    if !reps.is_empty() {
        let mut saw_zero = false;
        for (q, s) in reps {
            let mut q = widen(&q, ws, &zero);
            let mut s = widen(&s, 0, &zero);
            m.pad_zeros(&mut q);
            m.pad_zeros(&mut s);
            if ComposedModule::is_zero(&q) {
                if !ComposedModule::is_zero(&s) {
                    return Err(Error::RepsMissingZero);
                }
                saw_zero = true;
            }
            if !m.module_contains(&quot_shape, &q)? {
                return Err(Error::RepsNotSection(format!("{} is not in the quotient", m.format(&q))));
            }
            if !m.module_contains(&sub_shape, &s)? {
                return Err(Error::RepsNotSection(format!("{} is not in the submodule", m.format(&s))));
            }
            if table.insert(q.clone(), s).is_some() {
                return Err(Error::RepsNotSection(format!(
                    "quotient element {} has two representatives",
                    m.format(&q)
                )));
            }
        }
        if !saw_zero {
            return Err(Error::RepsMissingZero);
        }
    }
    m.shape.kind = Kind::Extension {
        sub: Box::new(sub_shape),
        quotient: Box::new(quot_shape),
        reps: table,
    };
    m.finish()
}

/// H_L = H_M intersected with L for an invariant coordinate submodule L.
pub fn submodule_restrict(m: ComposedModule, pred: Predicate) -> Result<ComposedModule> {
    if let Predicate::Vanish(v) = &pred {
        let w = m.width();
        if let Some(&bad) = v.iter().find(|&&i| i >= w) {
            return Err(Error::InvalidArgument(format!("coordinate {} out of range", bad + 1)));
        }
        for mats in [&m.actions, &m.inverses] {
            for a in mats.iter() {
                for &r in v {
                    for c in 0..w {
                        if !v.contains(&c) && a[r][c].is_some() {
                            let mut e = m.zero();
                            e[c] = m.leaves[c].pres.one();
                            return Err(Error::PredicateNotInvariant { witness: m.format(&e) });
                        }
                    }
                }
            }
        }
    }
    let w = m.width();
    let inner = m.shape.clone();
    Ok(ComposedModule {
        shape: Shape {
            kind: Kind::Restrict {
                inner: Box::new(inner),
                pred,
            },
            lo: 0,
            hi: w,
        },
        ..m
    })
}

/// Loads a composition tree; leaf paths are resolved against `origin`.
pub fn load_composition(node: &CompositionNode, origin: &Path, precision: u32) -> Result<ComposedModule> {
    match node {
        CompositionNode::Leaf { config } => {
            let path = resolve(origin, config);
            let cfg = SystemConfig::from_path(&path)?;
            ComposedModule::leaf(System::from_config(&cfg, precision)?)
        }
        CompositionNode::Sum { parts } => {
            let ms = parts
                .iter()
                .map(|p| load_composition(p, origin, precision))
                .collect::<Result<Vec<_>>>()?;
            direct_sum(ms)
        }
        CompositionNode::Extension {
            sub,
            quotient,
            coupling,
            reps,
        } => {
            let s = load_composition(sub, origin, precision)?;
            let q = load_composition(quotient, origin, precision)?;
            let mut cm = Vec::with_capacity(coupling.len());
            for (i, mat) in coupling.iter().enumerate() {
                let mut rows = Vec::with_capacity(mat.len());
                for (r, row) in mat.iter().enumerate() {
                    let pres = &s.leaves.get(r).ok_or_else(|| {
                        Error::malformed(format!("composition.coupling[{i}]"), "too many rows")
                    })?.pres;
                    let parsed = row
                        .iter()
                        .map(|e| {
                            pres.parse_element(e)
                                .map(Some)
                                .map_err(|err| Error::malformed(format!("composition.coupling[{i}][{r}]"), err.to_string()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(parsed);
                }
                cm.push(rows);
            }
            let mut table = Vec::with_capacity(reps.len());
            for (i, e) in reps.iter().enumerate() {
                let qt = parse_in(&q, &e.quotient).map_err(|err| Error::malformed(format!("composition.reps[{i}].quotient"), err.to_string()))?;
                let st = parse_in(&s, &e.sub).map_err(|err| Error::malformed(format!("composition.reps[{i}].sub"), err.to_string()))?;
                table.push((qt, st));
            }
            extension(s, q, cm, table)
        }
        CompositionNode::Restrict { inner, vanish, zero } => {
            let m = load_composition(inner, origin, precision)?;
            let pred = if *zero {
                Predicate::Zero
            } else if vanish.is_empty() {
                Predicate::All
            } else {
                if vanish.contains(&0) {
                    return Err(Error::malformed("composition.vanish", "coordinates are 1-based"));
                }
                Predicate::Vanish(vanish.iter().map(|i| i - 1).collect())
            };
            submodule_restrict(m, pred)
        }
    }
}

fn parse_in(m: &ComposedModule, parts: &[String]) -> Result<Tuple> {
    m.parse_tuple(parts)
}

#[derive(Clone, Debug)]
pub struct ComposedSet {
    pub k: u32,
    pub theta: Q,
    pub elements: Vec<Tuple>,
    pub leaf_sets: Vec<ExhaustiveSet>,
}

impl ComposedSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A composed module with one of its exhaustive sets, ready for scans.
pub struct ComposedCheck<'a> {
    pub module: &'a ComposedModule,
    pub set: &'a ComposedSet,
}

impl ComposedCheck<'_> {
    fn in_set(&self, t: &[FieldElement]) -> bool {
        !ComposedModule::is_zero(t) && self.module.set_contains(&self.module.shape, &self.set.leaf_sets, t)
    }

    pub fn witness(&self, n: &ExponentVector, property: Property) -> Result<Option<Tuple>> {
        let m = self.module;
        if n.is_zero() {
            return Err(Error::InvalidArgument("n must be nonzero".into()));
        }
        let a = m.action(n)?;
        let t = match property {
            Property::I => a,
            _ => {
                let mut t = a;
                for (r, row) in t.iter_mut().enumerate() {
                    let pres = &m.leaves[r].pres;
                    let d = row[r].take().unwrap_or_else(|| pres.zero());
                    row[r] = Some(pres.sub(&d, &pres.one())).filter(|x| !x.is_zero());
                }
                t
            }
        };
        if property != Property::IiStrong {
            for x in &self.set.elements {
                if self.in_set(&m.apply(&t, x)) {
                    return Ok(Some(x.clone()));
                }
            }
            return Ok(None);
        }
        // (A^n - 1) y = h, solved bottom-up
        let w = m.width();
        if (0..w).any(|r| t[r][r].is_none()) {
            return Err(Error::NotMixing);
        }
        'next: for h in &self.set.elements {
            let mut y = m.zero();
            for r in (0..w).rev() {
                let pres = &m.leaves[r].pres;
                let mut acc = h[r].clone();
                for c in r + 1..w {
                    if let Some(e) = &t[r][c] {
                        acc = pres.sub(&acc, &pres.mul(e, &y[c]));
                    }
                }
                y[r] = pres.div(&acc, t[r][r].as_ref().unwrap()).unwrap();
                let l = &m.leaves[r];
                if !in_ring(&l.pres, &l.places, &y[r])? {
                    continue 'next;
                }
            }
            if m.module_contains(&m.shape, &y)? {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }
}

impl PropertyCheck for ComposedCheck<'_> {
    fn dim(&self) -> usize {
        self.module.d
    }

    fn violation(&self, n: &ExponentVector, property: Property) -> Result<Option<String>> {
        Ok(self.witness(n, property)?.map(|t| self.module.format(&t)))
    }
}
