//! Exploring the feasible region of a fiber: exact feasible intervals along
//! one parameter, bisection for transition values, and sampled grids with
//! connected-component counts.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::fiber::{FiberError, ParametricFiber};
use crate::poly::Var;
use crate::rational::{int, midpoint, to_f64, Rational};
use crate::upoly::{coprime_basis, UPoly};

/// Points whose side-condition denominators are this close to zero count as
/// infeasible in grid scans.
pub const GUARD_BAND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error("after fixing parameters, {0} still depends on another parameter")]
    NotUnivariate(alloc::string::String),
    #[error("bracket is empty")]
    EmptyBracket,
    #[error("bracket contains no sample with all denominators nonzero")]
    NoSample,
    #[error("predicate has the same value at both ends of the bracket")]
    NoTransition,
    #[error("parameter {0} is neither fixed nor scanned")]
    Unassigned(alloc::string::String),
    #[error("resolution must be at least 2 per axis")]
    Resolution,
}

/// An endpoint known to lie in `[lo, hi]`; `lo == hi` for exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub lo: Rational,
    pub hi: Rational,
}

impl Endpoint {
    fn exact(x: Rational) -> Self {
        Endpoint { lo: x.clone(), hi: x }
    }

    pub fn approx(&self) -> f64 {
        to_f64(&midpoint(&self.lo, &self.hi))
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// A maximal open feasible interval with a rational sample inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleInterval {
    pub left: Endpoint,
    pub right: Endpoint,
    pub sample: Rational,
}

impl fmt::Display for FeasibleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12})", self.left.approx(), self.right.approx())
    }
}

/// Substitutes every fixed value in turn.
pub fn fix_parameters(fiber: &ParametricFiber, fixed: &[(Var, Rational)]) -> Result<ParametricFiber, FiberError> {
    let mut out = fiber.clone();
    for (v, x) in fixed {
        out = out.specialize(*v, x)?;
    }
    Ok(out)
}

struct Univariate {
    /// `(numerator, denominator)` per inequality.
    constraints: Vec<(UPoly, UPoly)>,
    side: Vec<UPoly>,
}

impl Univariate {
    fn from_fiber(f: &ParametricFiber, var: Var) -> Result<Self, RegionError> {
        let uni = |p: &crate::poly::Poly, what: &str| {
            p.to_univariate(var).ok_or_else(|| RegionError::NotUnivariate(what.into()))
        };
        let mut constraints = Vec::new();
        for q in &f.inequalities {
            constraints.push((uni(q.expr.numerator(), &q.label)?, uni(q.expr.denominator(), &q.label)?));
        }
        let mut side = Vec::new();
        for p in &f.side_conditions {
            side.push(uni(p, "a denominator")?);
        }
        Ok(Univariate { constraints, side })
    }

    fn critical_polys(&self) -> Vec<UPoly> {
        let mut v: Vec<UPoly> = self.constraints.iter().flat_map(|(n, d)| [n.clone(), d.clone()]).collect();
        v.extend(self.side.iter().cloned());
        v
    }

    /// `None` if a denominator vanishes.
    fn feasible(&self, x: &Rational) -> Option<bool> {
        let zero = int(0);
        for s in &self.side {
            if s.eval(x) == zero {
                return None;
            }
        }
        let mut ok = true;
        for (n, d) in &self.constraints {
            let dv = d.eval(x);
            if dv == zero {
                return None;
            }
            let nv = n.eval(x);
            // n/d < 0 iff n and d have opposite strict signs.
            if !((nv < zero && dv > zero) || (nv > zero && dv < zero)) {
                ok = false;
            }
        }
        Some(ok)
    }
}

/// Isolating intervals for all roots of a coprime family inside `(lo, hi)`,
/// refined until pairwise disjoint.
fn disjoint_roots(polys: &[UPoly], lo: &Rational, hi: &Rational, tol: &Rational) -> Vec<(Rational, Rational)> {
    let basis = coprime_basis(polys);
    let mut tol = tol.clone();
    loop {
        let mut roots: Vec<(Rational, Rational)> =
            basis.iter().flat_map(|p| p.isolate_roots(lo, hi, &tol)).collect();
        roots.sort();
        if roots.windows(2).all(|w| w[0].1 < w[1].0) {
            return roots;
        }
        tol /= int(16);
    }
}

/// Maximal feasible intervals of the fiber along `var` within the open
/// `bracket`, all other parameters fixed. Endpoints are enclosed to width
/// below `tol`; the set of intervals itself is exact.
pub fn interval_endpoints_1d(
    fiber: &ParametricFiber,
    fixed: &[(Var, Rational)],
    var: Var,
    bracket: (&Rational, &Rational),
    tol: &Rational,
) -> Result<Vec<FeasibleInterval>, RegionError> {
    let (lo, hi) = bracket;
    if lo >= hi {
        return Err(RegionError::EmptyBracket);
    }
    let f = fix_parameters(fiber, fixed)?;
    let u = Univariate::from_fiber(&f, var)?;
    let roots = disjoint_roots(&u.critical_polys(), lo, hi, tol);

    // Cells between consecutive root enclosures; every root point itself is
    // infeasible (an inequality or a denominator vanishes there).
    let mut cuts: Vec<Endpoint> = vec![Endpoint::exact(lo.clone())];
    cuts.extend(roots.into_iter().map(|(l, h)| Endpoint { lo: l, hi: h }));
    cuts.push(Endpoint::exact(hi.clone()));
    let mut out = Vec::new();
    let mut sampled = false;
    for w in cuts.windows(2) {
        let sample = midpoint(&w[0].hi, &w[1].lo);
        match u.feasible(&sample) {
            Some(true) => {
                sampled = true;
                out.push(FeasibleInterval { left: w[0].clone(), right: w[1].clone(), sample });
            }
            Some(false) => sampled = true,
            None => {}
        }
    }
    if !sampled {
        return Err(RegionError::NoSample);
    }
    Ok(out)
}

/// Number of feasible intervals along `var`.
pub fn component_count_1d(
    fiber: &ParametricFiber,
    fixed: &[(Var, Rational)],
    var: Var,
    bracket: (&Rational, &Rational),
) -> Result<usize, RegionError> {
    let tol = (bracket.1 - bracket.0) / int(1 << 20);
    Ok(interval_endpoints_1d(fiber, fixed, var, bracket, &tol)?.len())
}

/// Bisects `[lo, hi]` for the point where `pred` changes value, to width
/// below `tol`. Returns the final bracket.
pub fn bisect_transition<E>(
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    mut pred: impl FnMut(&Rational) -> Result<bool, E>,
) -> Result<Result<(Rational, Rational), RegionError>, E> {
    let (mut l, mut h) = (lo.clone(), hi.clone());
    let pl = pred(&l)?;
    if pl == pred(&h)? {
        return Ok(Err(RegionError::NoTransition));
    }
    while &h - &l >= *tol {
        let m = midpoint(&l, &h);
        if pred(&m)? == pl {
            l = m;
        } else {
            h = m;
        }
    }
    Ok(Ok((l, h)))
}

/// Transition values of the component count of `inner` along `outer`, found
/// by scanning `steps` equal subintervals of `outer_range` and bisecting each
/// change to width below `tol`. Returns `(bracket, count before, count after)`.
#[allow(clippy::type_complexity, clippy::too_many_arguments)]
pub fn locate_count_transitions(
    fiber: &ParametricFiber,
    fixed: &[(Var, Rational)],
    outer: Var,
    outer_range: (&Rational, &Rational),
    steps: usize,
    inner: Var,
    inner_bracket: (&Rational, &Rational),
    tol: &Rational,
) -> Result<Vec<((Rational, Rational), usize, usize)>, RegionError> {
    let count = |s: &Rational| {
        let mut fx = fixed.to_vec();
        fx.push((outer, s.clone()));
        component_count_1d(fiber, &fx, inner, inner_bracket)
    };
    let (a, b) = outer_range;
    let step = (b - a) / int(steps as i64);
    let mut out = Vec::new();
    let mut prev_s = a.clone();
    let mut prev = count(&prev_s)?;
    for k in 1..=steps {
        let s = a + &step * int(k as i64);
        let c = count(&s)?;
        if c != prev {
            let target = prev;
            let br = bisect_transition(&prev_s, &s, tol, |x| count(x).map(|n| n == target))?
                .expect("ends differ");
            out.push((br, prev, c));
        }
        prev = c;
        prev_s = s;
    }
    Ok(out)
}

/// One scanned axis: `steps` cell centres evenly spaced in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub var: Var,
    pub lo: Rational,
    pub hi: Rational,
    pub steps: usize,
}

impl Axis {
    pub fn point(&self, k: usize) -> Rational {
        let w = (&self.hi - &self.lo) / int(self.steps as i64);
        &self.lo + w * (int(2 * k as i64 + 1) / int(2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    /// Row-major, first axis slowest.
    pub grid: Vec<bool>,
    pub shape: Vec<usize>,
    pub components: usize,
}

impl ScanResult {
    pub fn feasible_count(&self) -> usize {
        self.grid.iter().filter(|&&b| b).count()
    }
}

/// A fiber with some parameters fixed and the rest placed on grid axes, ready
/// for evaluation at flat grid indices.
pub struct GridEvaluator {
    fiber: ParametricFiber,
    axes: Vec<Axis>,
    coords: Vec<Vec<Rational>>,
}

impl GridEvaluator {
    pub fn new(fiber: &ParametricFiber, fixed: &[(Var, Rational)], axes: &[Axis]) -> Result<Self, RegionError> {
        if axes.iter().any(|a| a.steps < 2) {
            return Err(RegionError::Resolution);
        }
        for v in 0..fiber.names.len() as Var {
            if !fixed.iter().any(|(w, _)| *w == v) && !axes.iter().any(|a| a.var == v) {
                return Err(RegionError::Unassigned(fiber.names[v as usize].clone()));
            }
        }
        let fiber = fix_parameters(fiber, fixed)?;
        let coords = axes.iter().map(|a| (0..a.steps).map(|k| a.point(k)).collect()).collect();
        Ok(GridEvaluator { fiber, axes: axes.to_vec(), coords })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.steps).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Exact feasibility at a flat index; infeasible inside the guard band.
    pub fn feasible_at(&self, index: usize) -> bool {
        let mut point = vec![int(0); self.fiber.names.len()];
        let mut rest = index;
        for (a, c) in self.axes.iter().zip(&self.coords).rev() {
            point[a.var as usize] = c[rest % a.steps].clone();
            rest /= a.steps;
        }
        for s in &self.fiber.side_conditions {
            if libm::fabs(to_f64(&s.eval(&point))) < GUARD_BAND {
                return false;
            }
        }
        self.fiber.is_feasible_at(&point).unwrap_or(false)
    }
}

/// Components of `true` cells under axis adjacency.
pub fn count_components(grid: &[bool], shape: &[usize]) -> usize {
    let mut seen = vec![false; grid.len()];
    let mut strides = vec![1usize; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..grid.len() {
        if !grid[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for (k, &st) in strides.iter().enumerate() {
                let c = (x / st) % shape[k];
                let mut nbrs = [None, None];
                if c > 0 {
                    nbrs[0] = Some(x - st);
                }
                if c + 1 < shape[k] {
                    nbrs[1] = Some(x + st);
                }
                for y in nbrs.into_iter().flatten() {
                    if grid[y] && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    count
}

/// Sequential grid scan.
pub fn scan_region(fiber: &ParametricFiber, fixed: &[(Var, Rational)], axes: &[Axis]) -> Result<ScanResult, RegionError> {
    let ev = GridEvaluator::new(fiber, fixed, axes)?;
    let grid: Vec<bool> = (0..ev.len()).map(|i| ev.feasible_at(i)).collect();
    let shape = ev.shape();
    let components = count_components(&grid, &shape);
    Ok(ScanResult { grid, shape, components })
}
