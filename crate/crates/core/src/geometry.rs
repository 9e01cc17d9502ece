//! Exact halfspace geometry in R⁴ (projectively, in S³): recovering the face
//! lattice cut out by covectors, the realization test, the group action on
//! covector tuples, and normalization to a canonical orbit representative.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{kernel_of_three, primitive_ray, rank, Covector, Mat4, Vector};
use crate::polytope::{CombinatorialPolytope, PolytopeError};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("need at least 4 covectors, got {0}")]
    TooFewCovectors(usize),
    #[error("covectors do not span the dual space")]
    Degenerate,
    #[error("halfspace intersection has no interior")]
    NoInterior,
    #[error("inequality {0} is redundant")]
    Redundant(usize),
    #[error("halfspace intersection is not properly convex")]
    NotProperlyConvex,
    #[error("face lattice is not a 3-polytope: {0}")]
    NotAPolytope(PolytopeError),
    #[error("{got} covectors given for a polytope with {expected} facets")]
    FacetCount { expected: usize, got: usize },
    #[error("face lattice differs from the reference under the index-preserving map")]
    NotEquivalent,
    #[error("matrix determinant is {0}, expected ±1")]
    NotUnimodular(Rational),
    #[error("scale constants must be positive")]
    NonPositiveScale,
    #[error("{got} scale constants given for {expected} facets")]
    ScaleCount { expected: usize, got: usize },
    #[error("polytope is a cone over a polygon; the group action is not free")]
    Cone,
    #[error("facet 1 and its neighbours do not span the dual space")]
    DependentBasis,
}

/// A tuple of supporting covectors, facet `i` cut out by `covectors[i] ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Realization {
    pub covectors: Vec<Covector>,
}

impl Realization {
    pub fn new(covectors: Vec<Covector>) -> Self {
        Realization { covectors }
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }
}

fn rows<T: AsRef<[Rational; 4]>>(items: &[T]) -> Vec<Vec<Rational>> {
    items.iter().map(|x| x.as_ref().to_vec()).collect()
}

impl AsRef<[Rational; 4]> for Covector {
    fn as_ref(&self) -> &[Rational; 4] {
        &self.0
    }
}

impl AsRef<[Rational; 4]> for Vector {
    fn as_ref(&self) -> &[Rational; 4] {
        &self.0
    }
}

/// Extreme rays of the cone `{x : α_i(x) ≥ 0 ∀i}` with the facets vanishing on
/// each, keyed by primitive ray.
fn extreme_rays(covectors: &[Covector]) -> BTreeMap<Vec<Rational>, Vec<usize>> {
    let f = covectors.len();
    let mut rays = BTreeMap::new();
    for i in 0..f {
        for j in i + 1..f {
            for k in j + 1..f {
                let v = kernel_of_three(&covectors[i], &covectors[j], &covectors[k]);
                if v.is_zero() {
                    continue;
                }
                for sign in [int(1), int(-1)] {
                    let ray = v.scaled(&sign);
                    let values: Vec<Rational> = covectors.iter().map(|a| a.apply(&ray)).collect();
                    if values.iter().any(Signed::is_negative) {
                        continue;
                    }
                    let zeros: Vec<usize> = (0..f).filter(|&x| values[x].is_zero()).collect();
                    rays.entry(primitive_ray(&ray).0.to_vec()).or_insert(zeros);
                }
            }
        }
    }
    rays
}

/// Face lattice of `{x : α_i(x) ≥ 0}` as a combinatorial polytope, facet `i`
/// supported by `covectors[i]`.
pub fn halfspaces_to_face_lattice(covectors: &[Covector]) -> Result<CombinatorialPolytope, GeometryError> {
    let f = covectors.len();
    if f < 4 {
        return Err(GeometryError::TooFewCovectors(f));
    }
    if rank(&rows(covectors)) < 4 {
        return Err(GeometryError::Degenerate);
    }
    let rays = extreme_rays(covectors);
    let ray_rows: Vec<Vec<Rational>> = rays.keys().cloned().collect();
    if rank(&ray_rows) < 4 {
        return Err(GeometryError::NoInterior);
    }
    // With the covectors spanning, their sum is positive on every nonzero point
    // of the cone; positivity on all rays certifies proper convexity.
    let witness = Covector(core::array::from_fn(|c| covectors.iter().map(|a| &a.0[c]).sum()));
    for r in &ray_rows {
        let v = Vector(core::array::from_fn(|c| r[c].clone()));
        if !witness.apply(&v).is_positive() {
            return Err(GeometryError::NotProperlyConvex);
        }
    }
    let mut facet_rays: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); f];
    for (r, zeros) in &rays {
        for &x in zeros {
            facet_rays[x].push(r.clone());
        }
    }
    for (x, rs) in facet_rays.iter().enumerate() {
        if rank(rs) < 3 {
            return Err(GeometryError::Redundant(x + 1));
        }
    }
    for x in 0..f {
        for y in x + 1..f {
            if facet_rays[x] == facet_rays[y] {
                return Err(GeometryError::Redundant(y + 1));
            }
        }
    }
    let mut ridges = Vec::new();
    for x in 0..f {
        for y in x + 1..f {
            let common: Vec<Vec<Rational>> =
                rays.iter().filter(|(_, z)| z.contains(&x) && z.contains(&y)).map(|(r, _)| r.clone()).collect();
            if rank(&common) == 2 {
                ridges.push((x, y));
            }
        }
    }
    let vertices: Vec<Vec<usize>> = rays.into_values().collect();
    CombinatorialPolytope::new(f, ridges, vertices).map_err(GeometryError::NotAPolytope)
}

/// Checks that `r` cuts out a polytope combinatorially equivalent to `p` with
/// facet `i` supported by `r.covectors[i]`.
pub fn check_realization(r: &Realization, p: &CombinatorialPolytope) -> Result<(), GeometryError> {
    if r.len() != p.facet_count() {
        return Err(GeometryError::FacetCount { expected: p.facet_count(), got: r.len() });
    }
    let q = halfspaces_to_face_lattice(&r.covectors)?;
    let identity: Vec<usize> = (0..p.facet_count()).collect();
    match q.face_lattice_isomorphic(p, Some(&identity)) {
        Ok(true) => Ok(()),
        _ => Err(GeometryError::NotEquivalent),
    }
}

pub fn is_realization(r: &Realization, p: &CombinatorialPolytope) -> bool {
    check_realization(r, p).is_ok()
}

/// An element `(A, c)` of SL±(4, R) × (R₊)^f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    a: Mat4,
    a_inv: Mat4,
    c: Vec<Rational>,
}

impl GroupElement {
    pub fn new(a: Mat4, c: Vec<Rational>) -> Result<Self, GeometryError> {
        let d = a.det();
        if d.abs() != Rational::one() {
            return Err(GeometryError::NotUnimodular(d));
        }
        if c.iter().any(|x| !x.is_positive()) {
            return Err(GeometryError::NonPositiveScale);
        }
        let a_inv = a.inverse().expect("unimodular matrices are invertible");
        Ok(GroupElement { a, a_inv, c })
    }

    pub fn identity(f: usize) -> Self {
        GroupElement::new(Mat4::identity(), vec![int(1); f]).expect("identity")
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.a
    }

    pub fn scales(&self) -> &[Rational] {
        &self.c
    }

    fn check_len(&self, f: usize) -> Result<(), GeometryError> {
        if self.c.len() != f {
            return Err(GeometryError::ScaleCount { expected: f, got: self.c.len() });
        }
        Ok(())
    }

    /// `c_i⁻¹ α_i ∘ A⁻¹`.
    pub fn act_on_covector(&self, i: usize, alpha: &Covector) -> Covector {
        alpha.compose(&self.a_inv).scaled(&(Rational::one() / &self.c[i]))
    }

    /// `c_i A v_i`.
    pub fn act_on_vector(&self, i: usize, v: &Vector) -> Vector {
        self.a.apply(v).scaled(&self.c[i])
    }
}

pub fn apply_group_to_realization(r: &Realization, g: &GroupElement) -> Result<Realization, GeometryError> {
    g.check_len(r.len())?;
    Ok(Realization::new(r.covectors.iter().enumerate().map(|(i, a)| g.act_on_covector(i, a)).collect()))
}

/// Canonical representative of the orbit of `r` under the group action.
///
/// Facet 1 together with the first triple of its neighbours (ascending, in
/// lexicographic order) whose covectors are independent is sent to the dual
/// basis e₁*, …, e₄*. Positive scalings then fix signs-only coefficients for the
/// first remaining facet; every later facet is scaled so that its
/// highest-index nonzero coefficient on an already fixed basis covector has
/// absolute value 1, and any still-free basis scale it touches is fixed the same
/// way. Facets keep their indices.
pub fn normalize_realization(r: &Realization, p: &CombinatorialPolytope) -> Result<Realization, GeometryError> {
    let f = p.facet_count();
    if r.len() != f {
        return Err(GeometryError::FacetCount { expected: f, got: r.len() });
    }
    if p.is_cone_over_polygon() {
        return Err(GeometryError::Cone);
    }
    let nbrs = p.neighbors(0);
    let mut basis = None;
    'search: for a in 0..nbrs.len() {
        for b in a + 1..nbrs.len() {
            for c in b + 1..nbrs.len() {
                let cand = [0, nbrs[a], nbrs[b], nbrs[c]];
                let m = Mat4(cand.map(|x| r.covectors[x].0.clone()));
                if let Some(inv) = m.inverse() {
                    basis = Some((cand, inv));
                    break 'search;
                }
            }
        }
    }
    let (basis, m_inv) = basis.ok_or(GeometryError::DependentBasis)?;
    // Coefficients of each covector in the chosen basis.
    let coeffs: Vec<[Rational; 4]> = r.covectors.iter().map(|a| a.compose(&m_inv).0).collect();
    let mut basis_scale: [Option<Rational>; 4] = Default::default();
    let mut out = vec![Covector::default(); f];
    for (slot, &b) in basis.iter().enumerate() {
        out[b] = Covector::basis(slot);
    }
    let others: Vec<usize> = (0..f).filter(|x| !basis.contains(x)).collect();
    for (n, &i) in others.iter().enumerate() {
        let t = &coeffs[i];
        let nonzero: Vec<usize> = (0..4).filter(|&s| !t[s].is_zero()).collect();
        let anchor = if n == 0 { None } else { nonzero.iter().rev().copied().find(|&s| basis_scale[s].is_some()) };
        // c_i, with the new coefficient at slot s equal to t[s]·c_s / c_i.
        let c_i = match anchor {
            Some(s) => t[s].abs() * basis_scale[s].as_ref().unwrap(),
            None => int(1),
        };
        for &s in &nonzero {
            if basis_scale[s].is_none() {
                basis_scale[s] = Some(&c_i / t[s].abs());
            }
        }
        out[i] = Covector(core::array::from_fn(|s| match &basis_scale[s] {
            Some(cs) => &t[s] * cs / &c_i,
            None => int(0),
        }));
    }
    Ok(Realization::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes::prism;
    use crate::rational::rat;

    fn prism_covectors() -> Vec<Covector> {
        vec![
            Covector::from_ints([1, 0, 0, 0]),
            Covector::from_ints([0, 1, 0, 0]),
            Covector::from_ints([0, 0, 1, 0]),
            Covector::from_ints([0, 0, 0, 1]),
            Covector::from_ints([-1, 1, 1, 1]),
        ]
    }

    #[test]
    fn triangular_prism_from_halfspaces() {
        let p = halfspaces_to_face_lattice(&prism_covectors()).unwrap();
        assert_eq!((p.facet_count(), p.ridge_count(), p.vertex_count()), (5, 9, 6));
        assert!(p.is_polygon_prism());
        // The vertex on facets 1, 2, 4 is the ray through (0, 0, 1, 0).
        assert!(p.vertices().contains(&vec![0, 1, 3]));
        assert!(p.vertices().contains(&vec![1, 2, 4]));
        assert!(p.face_lattice_isomorphic(&prism(3), None).unwrap());
    }

    #[test]
    fn rejects_degenerate_and_redundant() {
        let mut cs = prism_covectors();
        cs.truncate(3);
        assert_eq!(halfspaces_to_face_lattice(&cs), Err(GeometryError::TooFewCovectors(3)));
        let mut cs = prism_covectors();
        cs.push(Covector::from_ints([1, 1, 0, 0]));
        assert!(matches!(halfspaces_to_face_lattice(&cs), Err(GeometryError::Redundant(6))));
        let flat = vec![
            Covector::from_ints([1, 0, 0, 0]),
            Covector::from_ints([0, 1, 0, 0]),
            Covector::from_ints([0, 0, 1, 0]),
            Covector::from_ints([-1, 0, 0, 0]),
        ];
        assert!(halfspaces_to_face_lattice(&flat).is_err());
    }

    #[test]
    fn group_action_round_trip() {
        let r = Realization::new(prism_covectors());
        let a = Mat4::from_ints([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        let g = GroupElement::new(a, vec![int(2), rat(1, 3), int(1), int(5), rat(7, 2)]).unwrap();
        let moved = apply_group_to_realization(&r, &g).unwrap();
        let p = halfspaces_to_face_lattice(&r.covectors).unwrap();
        assert!(is_realization(&moved, &p));
        assert!(GroupElement::new(Mat4::from_ints([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), vec![]).is_err());
    }

    #[test]
    fn permuted_covectors_break_the_correspondence() {
        let p = halfspaces_to_face_lattice(&prism_covectors()).unwrap();
        // Swap a triangle with a quadrilateral.
        let tri = (0..5).find(|&x| p.facet_degree(x) == 3).unwrap();
        let quad = (0..5).find(|&x| p.facet_degree(x) == 4).unwrap();
        let mut cs = prism_covectors();
        cs.swap(tri, quad);
        assert!(!is_realization(&Realization::new(cs), &p));
    }
}
