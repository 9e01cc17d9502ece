//! Parametric realizations and the restricted deformation fiber over them:
//! per-facet vectors `w_i` solved as rational functions of the realization
//! parameters and of fresh free parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::geometry::Realization;
use crate::linalg::{det, solve_cramer, Covector, Field, Vector};
use crate::order::OrderingCertificate;
use crate::poly::{Poly, Var};
use crate::polytope::LabeledPolytope;
use crate::ratfunc::RatFunc;
use crate::rational::{int, Rational};
use crate::vinberg::{exact_product, ReflectionSystem};

pub type ParamCovector = [RatFunc; 4];
pub type ParamVector = [RatFunc; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("{got} covectors for a polytope with {expected} facets")]
    FacetCount { expected: usize, got: usize },
    #[error("ordering certificate is not valid for this labeled polytope")]
    InvalidCertificate,
    #[error("label {m} on ridge {{{i}, {j}}} has no rational 4cos^2(pi/m)")]
    IrrationalLabel { i: usize, j: usize, m: u32 },
    #[error("constraint covectors for facet {0} are dependent")]
    DependentConstraints(usize),
    #[error("beta_{i}(w_{j}) vanishes identically")]
    DegenerateDivision { i: usize, j: usize },
    #[error("expected {expected} parameter values, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error("denominator of {0} vanishes at the point")]
    VanishingDenominator(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
}

/// A strict sign condition `expr < 0` with a readable tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub expr: RatFunc,
    pub label: String,
}

impl Inequality {
    /// `Some(true)` if strictly negative, `None` if the denominator vanishes.
    pub fn holds_at(&self, point: &[Rational]) -> Option<bool> {
        self.expr.eval(point).map(|v| v < int(0))
    }
}

/// Covectors depending rationally on named parameters, with the open region
/// of parameters where they realize the polytope.
#[derive(Clone, Debug)]
pub struct ParametricRealization {
    covectors: Vec<ParamCovector>,
    names: Vec<String>,
    validity: Vec<Inequality>,
    polytope: LabeledPolytope,
}

fn pair(beta: &ParamCovector, w: &ParamVector) -> RatFunc {
    let mut acc = RatFunc::int(0);
    for k in 0..4 {
        acc = acc.add(&beta[k].mul(&w[k]));
    }
    acc
}

fn eval_all(entries: &[RatFunc; 4], point: &[Rational]) -> Option<[Rational; 4]> {
    let v: Vec<Rational> = entries.iter().map(|e| e.eval(point)).collect::<Option<_>>()?;
    v.try_into().ok()
}

pub fn constant_covector(c: &Covector) -> ParamCovector {
    core::array::from_fn(|k| RatFunc::constant(c[k].clone()))
}

impl ParametricRealization {
    pub fn new(
        covectors: Vec<ParamCovector>,
        names: Vec<String>,
        validity: Vec<Inequality>,
        polytope: LabeledPolytope,
    ) -> Result<Self, FiberError> {
        if covectors.len() != polytope.facet_count() {
            return Err(FiberError::FacetCount { expected: polytope.facet_count(), got: covectors.len() });
        }
        Ok(ParametricRealization { covectors, names, validity, polytope })
    }

    pub fn covectors(&self) -> &[ParamCovector] {
        &self.covectors
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn validity(&self) -> &[Inequality] {
        &self.validity
    }

    pub fn polytope(&self) -> &LabeledPolytope {
        &self.polytope
    }

    pub fn var(&self, name: &str) -> Result<Var, FiberError> {
        self.names.iter().position(|n| n == name).map(|v| v as Var).ok_or_else(|| FiberError::UnknownParameter(name.into()))
    }

    /// Whether `point` lies in the validity region; `None` on a vanishing
    /// denominator.
    pub fn is_valid_at(&self, point: &[Rational]) -> Option<bool> {
        for q in &self.validity {
            if !q.holds_at(point)? {
                return Some(false);
            }
        }
        Some(true)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Realization, FiberError> {
        if point.len() < self.names.len() {
            return Err(FiberError::PointLength { expected: self.names.len(), got: point.len() });
        }
        let mut out = Vec::with_capacity(self.covectors.len());
        for (i, b) in self.covectors.iter().enumerate() {
            let c = eval_all(b, point).ok_or_else(|| FiberError::VanishingDenominator(format!("beta_{}", i + 1)))?;
            out.push(Covector::new(c));
        }
        Ok(Realization::new(out))
    }

    /// Fixes one parameter to a value. Variable indices are kept, the
    /// parameter simply stops occurring.
    pub fn specialize(&self, var: Var, value: &Rational) -> Result<Self, FiberError> {
        let name = || self.names.get(var as usize).cloned().unwrap_or_default();
        let sub = |e: &RatFunc| e.substitute(var, value).ok_or_else(|| FiberError::VanishingDenominator(name()));
        let mut covectors = Vec::with_capacity(self.covectors.len());
        for b in &self.covectors {
            let v: Vec<RatFunc> = b.iter().map(sub).collect::<Result<_, _>>()?;
            covectors.push(v.try_into().expect("four entries"));
        }
        let validity = self
            .validity
            .iter()
            .map(|q| Ok(Inequality { expr: sub(&q.expr)?, label: q.label.clone() }))
            .collect::<Result<_, FiberError>>()?;
        Ok(ParametricRealization { covectors, names: self.names.clone(), validity, polytope: self.polytope.clone() })
    }
}

/// Solution of the fiber equations over a parametric realization.
#[derive(Clone, Debug)]
pub struct ParametricFiber {
    pub realization: ParametricRealization,
    /// `w_i`, indexed by facet.
    pub vectors: Vec<ParamVector>,
    /// Realization parameters first, then the free parameters.
    pub names: Vec<String>,
    pub free: Vec<Var>,
    /// Each expression is required to be strictly negative.
    pub inequalities: Vec<Inequality>,
    /// Denominators required to be nonzero.
    pub side_conditions: Vec<Poly>,
}

impl ParametricFiber {
    pub fn free_parameter_count(&self) -> usize {
        self.free.len()
    }

    pub fn var(&self, name: &str) -> Result<Var, FiberError> {
        self.names.iter().position(|n| n == name).map(|v| v as Var).ok_or_else(|| FiberError::UnknownParameter(name.into()))
    }

    /// `Some(true)` iff every inequality holds strictly; `None` if some
    /// denominator vanishes at the point.
    pub fn is_feasible_at(&self, point: &[Rational]) -> Option<bool> {
        for c in &self.side_conditions {
            if num_traits::Zero::is_zero(&c.eval(point)) {
                return None;
            }
        }
        for q in &self.inequalities {
            if !q.holds_at(point)? {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Fixes one parameter; variable indices are kept.
    pub fn specialize(&self, var: Var, value: &Rational) -> Result<Self, FiberError> {
        let name = || self.names.get(var as usize).cloned().unwrap_or_default();
        let sub = |e: &RatFunc| e.substitute(var, value).ok_or_else(|| FiberError::VanishingDenominator(name()));
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for w in &self.vectors {
            let v: Vec<RatFunc> = w.iter().map(sub).collect::<Result<_, _>>()?;
            vectors.push(v.try_into().expect("four entries"));
        }
        let inequalities = self
            .inequalities
            .iter()
            .map(|q| Ok(Inequality { expr: sub(&q.expr)?, label: q.label.clone() }))
            .collect::<Result<_, FiberError>>()?;
        let side_conditions = self.side_conditions.iter().map(|p| p.substitute(var, value)).collect();
        Ok(ParametricFiber {
            realization: self.realization.specialize(var, value)?,
            vectors,
            names: self.names.clone(),
            free: self.free.clone(),
            inequalities,
            side_conditions,
        })
    }
}

impl fmt::Display for ParametricFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<&str> = self.free.iter().map(|&v| self.names[v as usize].as_str()).collect();
        writeln!(f, "parameters: {}", self.names.join(", "))?;
        writeln!(f, "free: {}", free.join(", "))?;
        for (i, w) in self.vectors.iter().enumerate() {
            let e: Vec<String> = w.iter().map(|x| x.display(&self.names)).collect();
            writeln!(f, "w_{} = ({})", i + 1, e.join(", "))?;
        }
        write!(f, "inequalities (each < 0):")?;
        for q in &self.inequalities {
            write!(f, "\n  {}: {}", q.label, q.expr.display(&self.names))?;
        }
        Ok(())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Solves the fiber equations facet by facet in certificate order.
///
/// For facet `i`: `β_i(w_i) = 2`, `β_j(w_i) = 0` for order-2 neighbours, and
/// `β_j(w_i) = 4cos²(π/m)/β_i(w_j)` for earlier neighbours with `m ≥ 3`. The
/// remaining equations set `β_j(w_i)` to a fresh parameter `t<i>_<k>` for later
/// neighbours `j` with `m ≥ 3`, taken in certificate order, first independent
/// choice.
pub fn solve_fiber(r: &ParametricRealization, cert: &OrderingCertificate) -> Result<ParametricFiber, FiberError> {
    let p = r.polytope();
    let f = p.facet_count();
    if !cert.verify(p) {
        return Err(FiberError::InvalidCertificate);
    }
    for (i, j, m) in p.labeled_ridges() {
        if exact_product(m).is_none() {
            return Err(FiberError::IrrationalLabel { i: i + 1, j: j + 1, m });
        }
    }
    let beta = r.covectors();
    let mut names = r.names().to_vec();
    let mut free = Vec::new();
    let mut w: Vec<Option<ParamVector>> = vec![None; f];

    for &i in cert.order() {
        let mut rows: Vec<ParamCovector> = vec![beta[i].clone()];
        let mut rhs: Vec<RatFunc> = vec![RatFunc::int(2)];
        let mut later: Vec<usize> = Vec::new();
        for j in p.polytope().neighbors(i) {
            let m = p.label(i, j).expect("neighbour");
            if m == 2 {
                rows.push(beta[j].clone());
                rhs.push(RatFunc::int(0));
            } else if cert.is_earlier(j, i) {
                let wj = w[j].as_ref().expect("earlier facet solved");
                let d = pair(&beta[i], wj);
                let c = RatFunc::constant(exact_product(m).expect("checked"));
                let v = c.div(&d).ok_or(FiberError::DegenerateDivision { i: i + 1, j: j + 1 })?;
                rows.push(beta[j].clone());
                rhs.push(v);
            } else {
                later.push(j);
            }
        }
        later.sort_by_key(|&j| (cert.position(j), j));
        if rows.len() > 4 {
            return Err(FiberError::InvalidCertificate);
        }
        let need = 4 - rows.len();
        let chosen = combinations(later.len(), need)
            .into_iter()
            .find(|c| {
                let m: Vec<Vec<RatFunc>> =
                    rows.iter().chain(c.iter().map(|&k| &beta[later[k]])).map(|b| b.to_vec()).collect();
                !Field::is_zero(&det(&m))
            })
            .ok_or(FiberError::DependentConstraints(i + 1))?;
        for (k, &c) in chosen.iter().enumerate() {
            let v = names.len() as Var;
            names.push(format!("t{}_{}", i + 1, k + 1));
            free.push(v);
            rows.push(beta[later[c]].clone());
            rhs.push(RatFunc::var(v));
        }
        let m: Vec<Vec<RatFunc>> = rows.iter().map(|b| b.to_vec()).collect();
        let sol = solve_cramer(&m, &rhs).ok_or(FiberError::DependentConstraints(i + 1))?;
        w[i] = Some(sol.try_into().expect("four entries"));
    }
    let vectors: Vec<ParamVector> = w.into_iter().map(|x| x.expect("every facet solved")).collect();

    let mut inequalities = Vec::new();
    for (a, b, m) in p.labeled_ridges() {
        if m < 3 {
            continue;
        }
        for (i, j) in [(a, b), (b, a)] {
            inequalities.push(Inequality { expr: pair(&beta[j], &vectors[i]), label: format!("beta_{}(w_{})", j + 1, i + 1) });
        }
    }
    inequalities.extend(r.validity().iter().cloned());

    let mut side_conditions: Vec<Poly> = Vec::new();
    let dens = vectors.iter().flatten().chain(beta.iter().flatten()).map(RatFunc::denominator);
    for d in dens.chain(inequalities.iter().map(|q| q.expr.denominator())) {
        if d.as_constant().is_none() && !side_conditions.contains(d) {
            side_conditions.push(d.clone());
        }
    }

    // Side conditions come from the unreduced forms, so points where a
    // cancelled factor vanishes stay excluded.
    let vectors = vectors.iter().map(|w| core::array::from_fn(|k| w[k].reduced())).collect();
    for q in &mut inequalities {
        q.expr = q.expr.reduced();
    }

    Ok(ParametricFiber { realization: r.clone(), vectors, names, free, inequalities, side_conditions })
}

/// The numeric reflection system at a full parameter assignment.
pub fn evaluate_fiber(fiber: &ParametricFiber, point: &[Rational]) -> Result<ReflectionSystem, FiberError> {
    if point.len() != fiber.names.len() {
        return Err(FiberError::PointLength { expected: fiber.names.len(), got: point.len() });
    }
    let alphas = fiber.realization.evaluate(point)?.covectors;
    let mut vectors = Vec::with_capacity(alphas.len());
    for (i, w) in fiber.vectors.iter().enumerate() {
        let v = eval_all(w, point).ok_or_else(|| FiberError::VanishingDenominator(format!("w_{}", i + 1)))?;
        vectors.push(Vector::new(v));
    }
    Ok(ReflectionSystem::new(alphas, vectors).expect("same length"))
}

/// `(3f − e₂ − 9, e − 9, 3f − e − e₂ − k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub deformation: i64,
    pub realization: i64,
    pub restricted: i64,
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.deformation, self.realization, self.restricted)
    }
}

pub fn dims(p: &LabeledPolytope) -> Dims {
    let f = p.facet_count() as i64;
    let s = p.edge_stats();
    let (e, e2) = (s.e as i64, s.e2 as i64);
    Dims { deformation: 3 * f - e2 - 9, realization: e - 9, restricted: 3 * f - e - e2 - p.polytope().k_of() }
}
