//! Coxeter graphs of labeled polytopes, the spherical / affine / large
//! trichotomy for connected graphs, and the normal-type verdict.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use thiserror::Error;

use crate::polytope::{CombinatorialPolytope, LabeledPolytope};
use crate::quadratic::{principal_minor, Quad};

const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("Coxeter graph is disconnected")]
    Disconnected,
    #[error("Coxeter graph has no nodes")]
    Empty,
}

/// Edge weight of a Coxeter graph. Pairs with `m = 2` carry no edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(m) => write!(f, "{m}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    weights: Vec<Option<Weight>>,
}

impl CoxeterGraph {
    pub fn new(n: usize) -> Self {
        CoxeterGraph { n, weights: vec![None; n * n] }
    }

    /// Builds from `(i, j, weight)` triples; a finite weight of 2 means no edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Weight)]) -> Self {
        let mut g = CoxeterGraph::new(n);
        for &(i, j, w) in edges {
            g.set(i, j, w);
        }
        g
    }

    pub fn set(&mut self, i: usize, j: usize, w: Weight) {
        let w = match w {
            Weight::Finite(m) if m <= 2 => None,
            w => Some(w),
        };
        self.weights[i * self.n + j] = w;
        self.weights[j * self.n + i] = w;
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<Weight> {
        self.weights[i * self.n + j]
    }

    /// Weighted edges `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Weight)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(w) = self.weight(i, j) {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.weight(v, u).is_some())
    }

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Connected components, each sorted, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Induced subgraph on `nodes`, renumbered `0..nodes.len()` in the given order.
    pub fn subgraph(&self, nodes: &[usize]) -> CoxeterGraph {
        let mut g = CoxeterGraph::new(nodes.len());
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate() {
                g.weights[a * g.n + b] = self.weight(i, j);
            }
        }
        g
    }

    /// Node `v` becomes node `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterGraph {
        let mut g = CoxeterGraph::new(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                g.weights[perm[i] * self.n + perm[j]] = self.weight(i, j);
            }
        }
        g
    }

    /// Whether every weight lies in {3, 4, 6, ∞}, so that twice the Gram
    /// matrix has entries in Z[√2, √3].
    pub fn has_exact_gram(&self) -> bool {
        self.weights.iter().flatten().all(|w| matches!(w, Weight::Infinite | Weight::Finite(3 | 4 | 6)))
    }
}

/// Edge present iff `m ≥ 3`; non-adjacent facets are joined with weight ∞.
pub fn coxeter_graph(p: &LabeledPolytope) -> CoxeterGraph {
    let f = p.facet_count();
    let mut g = CoxeterGraph::new(f);
    for i in 0..f {
        for j in i + 1..f {
            match p.label(i, j) {
                Some(m) => g.set(i, j, Weight::Finite(m)),
                None => g.set(i, j, Weight::Infinite),
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentType {
    Spherical,
    Affine,
    Large,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentType::Spherical => "spherical",
            ComponentType::Affine => "affine",
            ComponentType::Large => "large",
        })
    }
}

/// Classifies a connected Coxeter graph through its Gram matrix, exactly when
/// all weights lie in {3, 4, 6, ∞} and in floating point otherwise.
pub fn classify_component(g: &CoxeterGraph) -> Result<ComponentType, CoxeterError> {
    check_connected(g)?;
    if g.has_exact_gram() {
        Ok(classify_gram_exact(g))
    } else {
        Ok(classify_gram_float(g))
    }
}

fn check_connected(g: &CoxeterGraph) -> Result<(), CoxeterError> {
    if g.node_count() == 0 {
        return Err(CoxeterError::Empty);
    }
    if !g.is_connected() {
        return Err(CoxeterError::Disconnected);
    }
    Ok(())
}

fn quad_entry(w: Option<Weight>) -> Quad {
    match w {
        None => Quad::int(0),
        Some(Weight::Finite(3)) => Quad::int(-1),
        Some(Weight::Finite(4)) => Quad::sqrt2(-1),
        Some(Weight::Finite(6)) => Quad::sqrt3(-1),
        Some(Weight::Infinite) => Quad::int(-2),
        Some(Weight::Finite(m)) => panic!("weight {m} has no exact Gram entry"),
    }
}

/// Exact route. Panics if a weight lies outside {3, 4, 6, ∞}; callers check
/// [`CoxeterGraph::has_exact_gram`] first.
pub fn classify_gram_exact(g: &CoxeterGraph) -> ComponentType {
    let n = g.node_count();
    let m: Vec<Vec<Quad>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Quad::int(2) } else { quad_entry(g.weight(i, j)) }).collect())
        .collect();
    let positive_definite = |idx: &[usize]| (1..=idx.len()).all(|k| principal_minor(&m, &idx[..k]).sign() == Ordering::Greater);
    let all: Vec<usize> = (0..n).collect();
    if positive_definite(&all) {
        return ComponentType::Spherical;
    }
    if principal_minor(&m, &all).sign() == Ordering::Equal {
        let proper_ok = (0..n).all(|skip| {
            let idx: Vec<usize> = all.iter().copied().filter(|&x| x != skip).collect();
            positive_definite(&idx)
        });
        if proper_ok {
            return ComponentType::Affine;
        }
    }
    ComponentType::Large
}

fn float_entry(w: Option<Weight>) -> f64 {
    match w {
        None => 0.0,
        Some(Weight::Infinite) => -2.0,
        Some(Weight::Finite(m)) => -2.0 * libm::cos(core::f64::consts::PI / m as f64),
    }
}

fn float_det(m: &[Vec<f64>], idx: &[usize]) -> f64 {
    let k = idx.len();
    let mut a: Vec<Vec<f64>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect();
    let mut det = 1.0;
    for c in 0..k {
        let pivot = (c..k).max_by(|&x, &y| libm::fabs(a[x][c]).total_cmp(&libm::fabs(a[y][c]))).unwrap();
        if a[pivot][c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..k {
            let factor = a[r][c] / a[c][c];
            for s in c..k {
                a[r][s] -= factor * a[c][s];
            }
        }
    }
    det
}

/// Floating-point route with tolerance 1e-9 on principal minors.
pub fn classify_gram_float(g: &CoxeterGraph) -> ComponentType {
    let n = g.node_count();
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2.0 } else { float_entry(g.weight(i, j)) }).collect())
        .collect();
    let positive_definite = |idx: &[usize]| (1..=idx.len()).all(|k| float_det(&m, &idx[..k]) > FLOAT_TOL);
    let all: Vec<usize> = (0..n).collect();
    if positive_definite(&all) {
        return ComponentType::Spherical;
    }
    if libm::fabs(float_det(&m, &all)) <= FLOAT_TOL {
        let proper_ok = (0..n).all(|skip| {
            let idx: Vec<usize> = all.iter().copied().filter(|&x| x != skip).collect();
            positive_definite(&idx)
        });
        if proper_ok {
            return ComponentType::Affine;
        }
    }
    ComponentType::Large
}

/// Classification by matching the standard lists of connected spherical and
/// affine Coxeter diagrams.
pub fn classify_by_table(g: &CoxeterGraph) -> Result<ComponentType, CoxeterError> {
    check_connected(g)?;
    let n = g.node_count();
    let edges = g.edges();
    if n == 1 {
        return Ok(ComponentType::Spherical);
    }
    if edges.iter().any(|e| e.2 == Weight::Infinite) {
        // Only Ã1 carries an ∞ edge.
        return Ok(if n == 2 { ComponentType::Affine } else { ComponentType::Large });
    }
    let finite = |w: Weight| match w {
        Weight::Finite(m) => m,
        Weight::Infinite => unreachable!(),
    };
    if edges.len() >= n {
        // Contains a cycle: only Ã_{n-1}, a simple cycle of 3s.
        let cycle = edges.len() == n && (0..n).all(|v| g.degree(v) == 2);
        let all3 = edges.iter().all(|e| finite(e.2) == 3);
        return Ok(if cycle && all3 { ComponentType::Affine } else { ComponentType::Large });
    }
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let big: Vec<u32> = edges.iter().map(|e| finite(e.2)).filter(|&m| m > 3).collect();
    match branch.len() {
        0 => Ok(classify_path(&path_weights(g))),
        1 => {
            let center = branch[0];
            let arms = arms_from(g, center);
            let degree = arms.len();
            if degree == 4 {
                let star = arms.iter().all(|a| a.len() == 1) && big.is_empty();
                return Ok(if star { ComponentType::Affine } else { ComponentType::Large });
            }
            if degree > 4 {
                return Ok(ComponentType::Large);
            }
            let mut lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            lens.sort_unstable();
            if big.is_empty() {
                return Ok(match (lens[0], lens[1], lens[2]) {
                    (1, 1, _) | (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => ComponentType::Spherical,
                    (2, 2, 2) | (1, 3, 3) | (1, 2, 5) => ComponentType::Affine,
                    _ => ComponentType::Large,
                });
            }
            // B̃: arms (1, 1, k), the far edge of one arm weighted 4, all else 3.
            if big.len() == 1 && big[0] == 4 && lens[0] == 1 && lens[1] == 1 {
                let ok = arms.iter().any(|arm| {
                    let last = arm.len() - 1;
                    let prev = if last == 0 { center } else { arm[last - 1] };
                    arm.len() == lens[2] && g.weight(prev, arm[last]) == Some(Weight::Finite(4))
                });
                return Ok(if ok { ComponentType::Affine } else { ComponentType::Large });
            }
            Ok(ComponentType::Large)
        }
        2 => {
            // D̃: two degree-3 nodes, each with two leaves, all weights 3.
            let ok = big.is_empty()
                && branch.iter().all(|&b| {
                    g.degree(b) == 3 && g.neighbors(b).filter(|&u| g.degree(u) == 1).count() == 2
                });
            Ok(if ok { ComponentType::Affine } else { ComponentType::Large })
        }
        _ => Ok(ComponentType::Large),
    }
}

/// Arms of a tree hanging off `center`, each listed outward from it.
fn arms_from(g: &CoxeterGraph, center: usize) -> Vec<Vec<usize>> {
    g.neighbors(center)
        .map(|start| {
            let mut arm = vec![start];
            let mut prev = center;
            let mut cur = start;
            loop {
                let next: Vec<usize> = g.neighbors(cur).filter(|&u| u != prev).collect();
                if next.len() != 1 {
                    break;
                }
                prev = cur;
                cur = next[0];
                arm.push(cur);
            }
            arm
        })
        .collect()
}

/// Edge weights along a path graph, from one end to the other.
fn path_weights(g: &CoxeterGraph) -> Vec<u32> {
    let n = g.node_count();
    let start = (0..n).find(|&v| g.degree(v) == 1).expect("path has an end");
    let mut out = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).find(|&u| u != prev);
        let Some(next) = next else { break };
        match g.weight(cur, next) {
            Some(Weight::Finite(m)) => out.push(m),
            _ => unreachable!(),
        }
        prev = cur;
        cur = next;
    }
    out
}

fn classify_path(w: &[u32]) -> ComponentType {
    let rev: Vec<u32> = w.iter().rev().copied().collect();
    let w = if rev.as_slice() < w { rev } else { w.to_vec() };
    let k = w.len();
    if w.iter().all(|&m| m == 3) || k == 1 {
        return ComponentType::Spherical;
    }
    let big: Vec<usize> = (0..k).filter(|&i| w[i] != 3).collect();
    let rest_three = |skip: &[usize]| (0..k).filter(|i| !skip.contains(i)).all(|i| w[i] == 3);
    if big.len() == 1 {
        let i = big[0];
        let at_end = i == 0 || i == k - 1;
        return match (w[i], at_end, k) {
            (4, true, _) => ComponentType::Spherical,
            (5, true, 2 | 3) => ComponentType::Spherical,
            (6, true, 2) => ComponentType::Affine,
            (4, false, 3) => ComponentType::Spherical,
            (4, false, 4) => ComponentType::Affine,
            _ => ComponentType::Large,
        };
    }
    if big.len() == 2 && big == [0, k - 1] && w[0] == 4 && w[k - 1] == 4 && rest_three(&big) {
        return ComponentType::Affine;
    }
    ComponentType::Large
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotNormalReason {
    ConeAllTwo,
    PrismAllTwo,
    FiniteGroup,
    /// Reserved for labeled polytopes with an affine Coxeter representation;
    /// never produced, since no decision procedure is available.
    AffineRepresentation,
}

impl fmt::Display for NotNormalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotNormalReason::ConeAllTwo => "cone-all-2",
            NotNormalReason::PrismAllTwo => "prism-all-2",
            NotNormalReason::FiniteGroup => "finite-group",
            NotNormalReason::AffineRepresentation => "affine-representation",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalTypeVerdict {
    Normal,
    NotNormal(NotNormalReason),
    Unknown,
}

impl fmt::Display for NormalTypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalTypeVerdict::Normal => f.write_str("normal"),
            NormalTypeVerdict::NotNormal(r) => write!(f, "not-normal {r}"),
            NormalTypeVerdict::Unknown => f.write_str("unknown"),
        }
    }
}

fn facet_all_two(p: &LabeledPolytope, facet: usize) -> bool {
    p.polytope().neighbors(facet).into_iter().all(|j| p.label(facet, j) == Some(2))
}

fn cone_bases(p: &CombinatorialPolytope) -> Vec<usize> {
    let f = p.facet_count();
    p.vertices()
        .iter()
        .filter(|vx| vx.len() == f - 1)
        .filter_map(|vx| (0..f).find(|x| !vx.contains(x)))
        .collect()
}

/// Verdict on the normal-type conditions. When several exclusions hold, the
/// finite-group reason is reported first, then cone, then prism.
pub fn normal_type(p: &LabeledPolytope) -> NormalTypeVerdict {
    let poly = p.polytope();
    let g = coxeter_graph(p);
    let types: Vec<ComponentType> = g
        .components()
        .iter()
        .map(|c| classify_component(&g.subgraph(c)).expect("components are connected"))
        .collect();
    if types.iter().all(|&t| t == ComponentType::Spherical) {
        return NormalTypeVerdict::NotNormal(NotNormalReason::FiniteGroup);
    }
    if cone_bases(poly).into_iter().any(|base| facet_all_two(p, base)) {
        return NormalTypeVerdict::NotNormal(NotNormalReason::ConeAllTwo);
    }
    if poly.prism_bases().into_iter().any(|(a, b)| facet_all_two(p, a) && facet_all_two(p, b)) {
        return NormalTypeVerdict::NotNormal(NotNormalReason::PrismAllTwo);
    }
    if types.len() == 1 && types[0] == ComponentType::Large {
        return NormalTypeVerdict::Normal;
    }
    NormalTypeVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes::*;
    use Weight::*;

    fn path(ws: &[Weight]) -> CoxeterGraph {
        let edges: Vec<_> = ws.iter().enumerate().map(|(i, &w)| (i, i + 1, w)).collect();
        CoxeterGraph::from_edges(ws.len() + 1, &edges)
    }

    fn all_routes(g: &CoxeterGraph) -> ComponentType {
        let t = classify_by_table(g).unwrap();
        assert_eq!(classify_gram_float(g), t, "float vs table on {g:?}");
        if g.has_exact_gram() {
            assert_eq!(classify_gram_exact(g), t, "exact vs table on {g:?}");
        }
        t
    }

    #[test]
    fn small_cases() {
        assert_eq!(all_routes(&CoxeterGraph::new(1)), ComponentType::Spherical);
        for m in [3, 4, 5, 6, 7, 12] {
            assert_eq!(all_routes(&path(&[Finite(m)])), ComponentType::Spherical);
        }
        assert_eq!(all_routes(&path(&[Infinite])), ComponentType::Affine);
        let tri = CoxeterGraph::from_edges(3, &[(0, 1, Finite(3)), (1, 2, Finite(3)), (0, 2, Finite(3))]);
        assert_eq!(all_routes(&tri), ComponentType::Affine);
    }

    #[test]
    fn named_diagrams() {
        assert_eq!(all_routes(&path(&[Finite(3), Finite(4), Finite(3)])), ComponentType::Spherical); // F4
        assert_eq!(all_routes(&path(&[Finite(5), Finite(3), Finite(3)])), ComponentType::Spherical); // H4
        assert_eq!(all_routes(&path(&[Finite(5), Finite(3), Finite(3), Finite(3)])), ComponentType::Large);
        assert_eq!(all_routes(&path(&[Finite(6), Finite(3)])), ComponentType::Affine); // G̃2
        assert_eq!(all_routes(&path(&[Finite(4), Finite(4)])), ComponentType::Affine); // C̃2
        assert_eq!(all_routes(&path(&[Finite(3), Finite(3), Finite(4), Finite(3)])), ComponentType::Affine);
        assert_eq!(all_routes(&path(&[Finite(4), Finite(3), Finite(4)])), ComponentType::Affine);
        assert_eq!(all_routes(&path(&[Finite(5), Finite(5)])), ComponentType::Large);
        let star = CoxeterGraph::from_edges(5, &[(0, 1, Finite(3)), (0, 2, Finite(3)), (0, 3, Finite(3)), (0, 4, Finite(3))]);
        assert_eq!(all_routes(&star), ComponentType::Affine);
        let b3 = CoxeterGraph::from_edges(4, &[(0, 1, Finite(3)), (0, 2, Finite(3)), (0, 3, Finite(4))]);
        assert_eq!(all_routes(&b3), ComponentType::Affine);
    }

    #[test]
    fn graph_of_labeled_polytope() {
        let t = LabeledPolytope::uniform(tetrahedron(), 2).unwrap();
        assert!(coxeter_graph(&t).edges().is_empty());
        let p = LabeledPolytope::uniform(prism(3), 2).unwrap();
        let g = coxeter_graph(&p);
        assert_eq!(g.edges(), vec![(3, 4, Infinite)]);
    }

    #[test]
    fn verdicts() {
        let prism2 = LabeledPolytope::uniform(prism(3), 2).unwrap();
        assert_eq!(normal_type(&prism2), NormalTypeVerdict::NotNormal(NotNormalReason::PrismAllTwo));
        let tet2 = LabeledPolytope::uniform(tetrahedron(), 2).unwrap();
        assert_eq!(normal_type(&tet2), NormalTypeVerdict::NotNormal(NotNormalReason::FiniteGroup));
        let mut labels = vec![2; 8];
        let pyr = pyramid(4);
        for (k, &(i, j)) in pyr.ridges().iter().enumerate() {
            if i != 4 && j != 4 {
                labels[k] = 5;
            }
        }
        let cone = LabeledPolytope::new(pyr, labels).unwrap();
        assert_eq!(normal_type(&cone), NormalTypeVerdict::NotNormal(NotNormalReason::ConeAllTwo));
        let tet3 = LabeledPolytope::uniform(tetrahedron(), 3).unwrap();
        // K4 with all weights 3 is large.
        assert_eq!(normal_type(&tet3), NormalTypeVerdict::Normal);
    }
}
