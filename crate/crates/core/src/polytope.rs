//! Combinatorial 3-polytopes given by facets, ridges and vertices, and their
//! edge labelings.
//!
//! Facets are indexed `0..f`. A ridge is an unordered facet pair `(i, j)` with
//! `i < j`; a vertex is the sorted set of facets containing it.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::graph::{SmallGraph, MAX_NODES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("a 3-polytope needs at least 4 facets, got {0}")]
    TooFewFacets(usize),
    #[error("at most {MAX_NODES} facets are supported, got {0}")]
    TooManyFacets(usize),
    #[error("facet index {index} out of range 1..={facets}")]
    FacetOutOfRange { index: usize, facets: usize },
    #[error("ridge {{{0}, {1}}} joins a facet to itself")]
    SelfRidge(usize, usize),
    #[error("ridge {{{0}, {1}}} listed twice")]
    DuplicateRidge(usize, usize),
    #[error("vertex {0:?} has fewer than 3 facets")]
    VertexTooSmall(Vec<usize>),
    #[error("vertex {0:?} listed twice")]
    DuplicateVertex(Vec<usize>),
    #[error("Euler relation fails: v - e + f = {vertices} - {ridges} + {facets} != 2")]
    Euler { vertices: usize, ridges: usize, facets: usize },
    #[error("ridge {{{i}, {j}}} lies in {count} vertices, expected 2")]
    RidgeIncidence { i: usize, j: usize, count: usize },
    #[error("facet {facet} has {degree} ridges, expected at least 3")]
    FacetDegree { facet: usize, degree: usize },
    #[error("facets of vertex {0:?} do not form a cycle of ridges")]
    VertexLink(Vec<usize>),
    #[error("boundary of facet {0} is not a single cycle")]
    FacetBoundary(usize),
    #[error("facet-adjacency graph is not 3-connected")]
    NotThreeConnected,
    #[error("ridge {{{i}, {j}}} has label {label}, labels must be integers >= 2")]
    InvalidLabel { i: usize, j: usize, label: u32 },
    #[error("{labels} labels given for {ridges} ridges")]
    LabelCount { labels: usize, ridges: usize },
    #[error("facets {{{i}, {j}}} are not adjacent")]
    NotARidge { i: usize, j: usize },
}

/// Face lattice of a 3-polytope, stored through its facet-vertex incidences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialPolytope {
    facets: usize,
    ridges: Vec<(usize, usize)>,
    vertices: Vec<Vec<usize>>,
}

impl CombinatorialPolytope {
    /// Builds and validates a polytope. Ridges and vertices may come in any
    /// order; they are stored sorted.
    pub fn new(
        facets: usize,
        ridges: Vec<(usize, usize)>,
        vertices: Vec<Vec<usize>>,
    ) -> Result<Self, PolytopeError> {
        if facets < 4 {
            return Err(PolytopeError::TooFewFacets(facets));
        }
        if facets > MAX_NODES {
            return Err(PolytopeError::TooManyFacets(facets));
        }
        let mut norm_ridges = Vec::with_capacity(ridges.len());
        for (a, b) in ridges {
            for x in [a, b] {
                if x >= facets {
                    return Err(PolytopeError::FacetOutOfRange { index: x + 1, facets });
                }
            }
            if a == b {
                return Err(PolytopeError::SelfRidge(a + 1, b + 1));
            }
            norm_ridges.push(if a < b { (a, b) } else { (b, a) });
        }
        norm_ridges.sort_unstable();
        for w in norm_ridges.windows(2) {
            if w[0] == w[1] {
                return Err(PolytopeError::DuplicateRidge(w[0].0 + 1, w[0].1 + 1));
            }
        }
        let mut norm_vertices = Vec::with_capacity(vertices.len());
        for mut v in vertices {
            v.sort_unstable();
            v.dedup();
            if let Some(&x) = v.iter().find(|&&x| x >= facets) {
                return Err(PolytopeError::FacetOutOfRange { index: x + 1, facets });
            }
            if v.len() < 3 {
                return Err(PolytopeError::VertexTooSmall(one_based(&v)));
            }
            norm_vertices.push(v);
        }
        norm_vertices.sort();
        for w in norm_vertices.windows(2) {
            if w[0] == w[1] {
                return Err(PolytopeError::DuplicateVertex(one_based(&w[0])));
            }
        }
        let p = CombinatorialPolytope { facets, ridges: norm_ridges, vertices: norm_vertices };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), PolytopeError> {
        let (v, e, f) = (self.vertices.len(), self.ridges.len(), self.facets);
        if v as i64 - e as i64 + f as i64 != 2 {
            return Err(PolytopeError::Euler { vertices: v, ridges: e, facets: f });
        }
        for &(i, j) in &self.ridges {
            let count = self.vertices.iter().filter(|vx| vx.contains(&i) && vx.contains(&j)).count();
            if count != 2 {
                return Err(PolytopeError::RidgeIncidence { i: i + 1, j: j + 1, count });
            }
        }
        let dual = self.dual_graph();
        for facet in 0..f {
            let degree = dual.degree(facet);
            if degree < 3 {
                return Err(PolytopeError::FacetDegree { facet: facet + 1, degree });
            }
        }
        // Facets around each vertex must be a chordless cycle of ridges.
        for vx in &self.vertices {
            if !induces_single_cycle(&dual, vx) {
                return Err(PolytopeError::VertexLink(one_based(vx)));
            }
        }
        for facet in 0..f {
            if self.facet_cycle(facet).is_none() {
                return Err(PolytopeError::FacetBoundary(facet + 1));
            }
        }
        if !dual.is_three_connected() {
            return Err(PolytopeError::NotThreeConnected);
        }
        Ok(())
    }

    pub fn facet_count(&self) -> usize {
        self.facets
    }

    pub fn ridge_count(&self) -> usize {
        self.ridges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn ridges(&self) -> &[(usize, usize)] {
        &self.ridges
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    /// Position of ridge `{i, j}` in [`Self::ridges`].
    pub fn ridge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.ridges.binary_search(&key).ok()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.ridge_index(i, j).is_some()
    }

    /// Neighbouring facets of `facet`, ascending.
    pub fn neighbors(&self, facet: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .ridges
            .iter()
            .filter_map(|&(a, b)| {
                if a == facet {
                    Some(b)
                } else if b == facet {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn facet_degree(&self, facet: usize) -> usize {
        self.ridges.iter().filter(|&&(a, b)| a == facet || b == facet).count()
    }

    pub fn dual_graph(&self) -> SmallGraph {
        SmallGraph::from_edges(self.facets, &self.ridges)
    }

    /// Neighbouring facets of `facet` in cyclic order around its boundary,
    /// starting from the smallest and continuing towards the smaller of its two
    /// cyclic neighbours. `None` if the boundary is not a single cycle.
    ///
    /// Two facets are consecutive on the boundary of `facet` when some vertex
    /// lies in all three.
    pub fn facet_cycle(&self, facet: usize) -> Option<Vec<usize>> {
        let nbrs = self.neighbors(facet);
        if nbrs.len() < 3 {
            return None;
        }
        let mut link: BTreeMap<usize, Vec<usize>> = nbrs.iter().map(|&n| (n, Vec::new())).collect();
        for vx in self.vertices.iter().filter(|vx| vx.contains(&facet)) {
            let around: Vec<usize> = vx.iter().copied().filter(|x| *x != facet && nbrs.contains(x)).collect();
            if around.len() != 2 {
                return None;
            }
            link.get_mut(&around[0])?.push(around[1]);
            link.get_mut(&around[1])?.push(around[0]);
        }
        if link.values().any(|adj| adj.len() != 2) {
            return None;
        }
        let first = nbrs[0];
        let mut cycle = vec![first];
        let mut prev = first;
        let mut cur = *link[&first].iter().min()?;
        while cur != first {
            if cycle.len() > nbrs.len() {
                return None;
            }
            cycle.push(cur);
            let next = link[&cur].iter().copied().find(|&x| x != prev)?;
            prev = cur;
            cur = next;
        }
        (cycle.len() == nbrs.len()).then_some(cycle)
    }

    /// Some vertex lies on every facet but one.
    pub fn is_cone_over_polygon(&self) -> bool {
        self.cone_apex_base().is_some()
    }

    /// Base facet of a cone, if the polytope is one (the lowest such index).
    pub fn cone_apex_base(&self) -> Option<usize> {
        let f = self.facets;
        self.vertices.iter().filter(|vx| vx.len() == f - 1).find_map(|vx| (0..f).find(|x| !vx.contains(x)))
    }

    /// Pairs of disjoint k-gonal facets joined by k quadrilaterals, with
    /// `f = k + 2`.
    pub fn prism_bases(&self) -> Vec<(usize, usize)> {
        let f = self.facets;
        let k = f - 2;
        let mut out = Vec::new();
        for a in 0..f {
            for b in a + 1..f {
                if self.is_adjacent(a, b) || self.facet_degree(a) != k || self.facet_degree(b) != k {
                    continue;
                }
                if self.vertices.iter().any(|vx| vx.contains(&a) && vx.contains(&b)) {
                    continue;
                }
                let sides_ok = (0..f).filter(|&x| x != a && x != b).all(|x| {
                    self.facet_degree(x) == 4 && self.is_adjacent(x, a) && self.is_adjacent(x, b)
                });
                if sides_ok {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_polygon_prism(&self) -> bool {
        !self.prism_bases().is_empty()
    }

    pub fn is_tetrahedron(&self) -> bool {
        self.facets == 4
    }

    /// Dimension of the projective stabilizer of a realization: 3 for the
    /// tetrahedron, 1 for other cones over polygons, 0 otherwise.
    pub fn k_of(&self) -> i64 {
        if self.is_tetrahedron() {
            3
        } else if self.is_cone_over_polygon() {
            1
        } else {
            0
        }
    }

    /// Relabels facets: facet `x` becomes `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> CombinatorialPolytope {
        let ridges = self.ridges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let vertices = self.vertices.iter().map(|vx| vx.iter().map(|&x| perm[x]).collect()).collect();
        CombinatorialPolytope::new(self.facets, ridges, vertices)
            .expect("relabeling preserves validity")
    }

    /// Isomorphism-invariant key. The dual graph of a 3-polytope determines its
    /// face lattice, so the canonical form of that graph is used.
    pub fn canonical_code(&self) -> String {
        self.dual_graph().canonical_code()
    }

    /// Canonical facet relabeling matching [`Self::canonical_code`].
    pub fn canonical_permutation(&self) -> Vec<usize> {
        self.dual_graph().canonical_permutation()
    }

    /// Whether `facet_map` (facet `x` of `self` to facet `facet_map[x]` of
    /// `other`) extends to a face-lattice isomorphism, or, without a map, whether
    /// any isomorphism exists.
    pub fn face_lattice_isomorphic(
        &self,
        other: &CombinatorialPolytope,
        facet_map: Option<&[usize]>,
    ) -> Result<bool, FacetMapError> {
        match facet_map {
            Some(map) => {
                check_bijection(map, self.facets)?;
                if self.facets != other.facets {
                    return Ok(false);
                }
                let mut mapped: Vec<Vec<usize>> = self
                    .vertices
                    .iter()
                    .map(|vx| {
                        let mut m: Vec<usize> = vx.iter().map(|&x| map[x]).collect();
                        m.sort_unstable();
                        m
                    })
                    .collect();
                mapped.sort();
                Ok(mapped == other.vertices)
            }
            None => Ok(self.facets == other.facets
                && self.ridges.len() == other.ridges.len()
                && self.vertices.len() == other.vertices.len()
                && self.canonical_code() == other.canonical_code()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("facet map is not a bijection on {facets} facets")]
pub struct FacetMapError {
    pub facets: usize,
}

fn check_bijection(map: &[usize], n: usize) -> Result<(), FacetMapError> {
    let mut seen = vec![false; n];
    if map.len() != n {
        return Err(FacetMapError { facets: n });
    }
    for &x in map {
        if x >= n || seen[x] {
            return Err(FacetMapError { facets: n });
        }
        seen[x] = true;
    }
    Ok(())
}

fn induces_single_cycle(g: &SmallGraph, nodes: &[usize]) -> bool {
    let mask = nodes.iter().fold(0u64, |m, &v| m | (1u64 << v));
    nodes.iter().all(|&v| (g.neighbor_mask(v) & mask).count_ones() == 2) && g.is_connected_on(mask)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Edge counts that drive the dimension formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeStats {
    /// Number of ridges.
    pub e: usize,
    /// Number of ridges labeled 2.
    pub e2: usize,
}

/// A combinatorial polytope with an integer label `m ≥ 2` on every ridge.
/// Non-adjacent facet pairs implicitly carry `m = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledPolytope {
    polytope: CombinatorialPolytope,
    labels: Vec<u32>,
}

impl LabeledPolytope {
    /// `labels[k]` is the label of `polytope.ridges()[k]`.
    pub fn new(polytope: CombinatorialPolytope, labels: Vec<u32>) -> Result<Self, PolytopeError> {
        if labels.len() != polytope.ridge_count() {
            return Err(PolytopeError::LabelCount { labels: labels.len(), ridges: polytope.ridge_count() });
        }
        for (k, &m) in labels.iter().enumerate() {
            if m < 2 {
                let (i, j) = polytope.ridges[k];
                return Err(PolytopeError::InvalidLabel { i: i + 1, j: j + 1, label: m });
            }
        }
        Ok(LabeledPolytope { polytope, labels })
    }

    /// Builds from labeled ridges `(i, j, m)` (0-based) and vertices.
    pub fn from_labeled_ridges(
        facets: usize,
        ridges: &[(usize, usize, u32)],
        vertices: Vec<Vec<usize>>,
    ) -> Result<Self, PolytopeError> {
        let polytope = CombinatorialPolytope::new(facets, ridges.iter().map(|&(i, j, _)| (i, j)).collect(), vertices)?;
        let mut labels = vec![0; polytope.ridge_count()];
        for &(i, j, m) in ridges {
            let k = polytope.ridge_index(i, j).ok_or(PolytopeError::NotARidge { i: i + 1, j: j + 1 })?;
            labels[k] = m;
        }
        LabeledPolytope::new(polytope, labels)
    }

    /// Every ridge labeled `m`.
    pub fn uniform(polytope: CombinatorialPolytope, m: u32) -> Result<Self, PolytopeError> {
        let labels = vec![m; polytope.ridge_count()];
        LabeledPolytope::new(polytope, labels)
    }

    pub fn polytope(&self) -> &CombinatorialPolytope {
        &self.polytope
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn facet_count(&self) -> usize {
        self.polytope.facets
    }

    /// Label of ridge `{i, j}`; `None` for non-adjacent facets (m = ∞).
    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        self.polytope.ridge_index(i, j).map(|k| self.labels[k])
    }

    /// Ridges with labels, `(i, j, m)` with `i < j`.
    pub fn labeled_ridges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.polytope.ridges.iter().zip(&self.labels).map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_stats(&self) -> EdgeStats {
        EdgeStats { e: self.labels.len(), e2: self.labels.iter().filter(|&&m| m == 2).count() }
    }

    /// Relabels facets: facet `x` becomes `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> LabeledPolytope {
        let polytope = self.polytope.relabeled(perm);
        let mut labels = vec![0; self.labels.len()];
        for (i, j, m) in self.labeled_ridges() {
            labels[polytope.ridge_index(perm[i], perm[j]).expect("ridge survives relabeling")] = m;
        }
        LabeledPolytope { polytope, labels }
    }
}

/// Standard small polytopes, mostly for tests and documentation.
pub mod shapes {
    use super::*;

    pub fn tetrahedron() -> CombinatorialPolytope {
        let ridges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let vertices = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        CombinatorialPolytope::new(4, ridges, vertices).expect("tetrahedron")
    }

    /// Prism over a `k`-gon: facets `0..k` are the sides, `k` and `k + 1` the bases.
    pub fn prism(k: usize) -> CombinatorialPolytope {
        let (bottom, top) = (k, k + 1);
        let mut ridges = Vec::new();
        let mut vertices = Vec::new();
        for s in 0..k {
            let next = (s + 1) % k;
            ridges.push((s, next));
            ridges.push((s, bottom));
            ridges.push((s, top));
            vertices.push(vec![s, next, bottom]);
            vertices.push(vec![s, next, top]);
        }
        CombinatorialPolytope::new(k + 2, ridges, vertices).expect("prism")
    }

    /// Pyramid over a `k`-gon: facets `0..k` are the sides, `k` the base.
    pub fn pyramid(k: usize) -> CombinatorialPolytope {
        let base = k;
        let mut ridges = Vec::new();
        let mut vertices = vec![(0..k).collect::<Vec<_>>()];
        for s in 0..k {
            let next = (s + 1) % k;
            ridges.push((s, next));
            ridges.push((s, base));
            vertices.push(vec![s, next, base]);
        }
        CombinatorialPolytope::new(k + 1, ridges, vertices).expect("pyramid")
    }

    pub fn cube() -> CombinatorialPolytope {
        prism(4)
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    #[test]
    fn shapes_are_valid() {
        let t = tetrahedron();
        assert_eq!((t.facet_count(), t.ridge_count(), t.vertex_count()), (4, 6, 4));
        let p = prism(3);
        assert_eq!((p.facet_count(), p.ridge_count(), p.vertex_count()), (5, 9, 6));
        let q = pyramid(4);
        assert_eq!((q.facet_count(), q.ridge_count(), q.vertex_count()), (5, 8, 5));
        assert_eq!(cube().ridge_count(), 12);
    }

    #[test]
    fn euler_violation_is_reported() {
        // Tetrahedron with one vertex missing.
        let ridges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let vertices = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]];
        let err = CombinatorialPolytope::new(4, ridges, vertices).unwrap_err();
        assert!(matches!(err, PolytopeError::Euler { vertices: 3, ridges: 6, facets: 4 }));
    }

    #[test]
    fn ridge_incidence_is_checked() {
        // Euler holds (6 - 9 + 5 = 2) but the vertex sets do not match the ridges.
        let p = prism(3);
        let mut vertices = p.vertices().to_vec();
        vertices[0] = vec![0, 3, 4];
        let err = CombinatorialPolytope::new(5, p.ridges().to_vec(), vertices).unwrap_err();
        assert!(matches!(err, PolytopeError::RidgeIncidence { .. } | PolytopeError::DuplicateVertex(_)), "{err:?}");
    }

    #[test]
    fn facet_cycles_cover_each_ridge_twice() {
        for p in [tetrahedron(), prism(3), pyramid(4), cube(), prism(5), pyramid(6)] {
            let total: usize = (0..p.facet_count()).map(|x| p.facet_cycle(x).unwrap().len()).sum();
            assert_eq!(total, 2 * p.ridge_count());
        }
    }

    #[test]
    fn cones_and_prisms() {
        assert!(tetrahedron().is_cone_over_polygon());
        assert!(!tetrahedron().is_polygon_prism());
        assert!(prism(3).is_polygon_prism());
        assert!(!prism(3).is_cone_over_polygon());
        assert!(pyramid(5).is_cone_over_polygon());
        assert_eq!(cube().prism_bases().len(), 3);
    }

    #[test]
    fn k_values() {
        assert_eq!(tetrahedron().k_of(), 3);
        assert_eq!(pyramid(4).k_of(), 1);
        assert_eq!(prism(3).k_of(), 0);
        assert_eq!(cube().k_of(), 0);
    }

    #[test]
    fn canonical_codes() {
        let t = tetrahedron();
        assert_eq!(t.canonical_code(), t.relabeled(&[2, 0, 3, 1]).canonical_code());
        assert_ne!(prism(3).canonical_code(), pyramid(4).canonical_code());
        let c = cube();
        assert_eq!(c.canonical_code(), c.relabeled(&[5, 4, 0, 2, 1, 3]).canonical_code());
    }

    #[test]
    fn face_lattice_isomorphism_with_and_without_map() {
        let p = prism(3);
        let id: Vec<usize> = (0..5).collect();
        assert!(p.face_lattice_isomorphic(&p, Some(&id)).unwrap());
        assert!(!p.face_lattice_isomorphic(&pyramid(4), None).unwrap());
        assert!(!p.face_lattice_isomorphic(&pyramid(4), Some(&id)).unwrap());
        // Rotating the four side facets of the cube is a symmetry.
        let c = cube();
        let rot = [1, 2, 3, 0, 4, 5];
        assert!(c.face_lattice_isomorphic(&c, Some(&rot)).unwrap());
        // Swapping a side facet with the bottom while fixing the rest is not.
        let bad = [4, 1, 2, 3, 0, 5];
        assert!(!c.face_lattice_isomorphic(&c, Some(&bad)).unwrap());
        assert!(c.face_lattice_isomorphic(&c, Some(&[0, 0, 1, 2, 3, 4])).is_err());
    }

    #[test]
    fn labeled_edge_stats() {
        let t = LabeledPolytope::uniform(tetrahedron(), 2).unwrap();
        assert_eq!(t.edge_stats(), EdgeStats { e: 6, e2: 6 });
        assert!(LabeledPolytope::uniform(tetrahedron(), 1).is_err());
        assert_eq!(t.label(0, 3), Some(2));
    }
}
