//! Reflection systems `(α_i, v_i)`, their Cartan matrices, Vinberg's
//! conditions, and finite checks on the generated matrix group.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{check_realization, GeometryError, GroupElement, Realization};
use crate::linalg::{Covector, Mat4, Vector};
use crate::polytope::LabeledPolytope;
use crate::rational::{int, to_f64, Rational};

const NUMERIC_TOL: f64 = 1e-9;

/// Hard cap on the number of group elements [`enumerate_group`] will hold.
pub const MAX_GROUP_ELEMENTS: usize = 100_000;
pub const MAX_WORD_LENGTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VinbergError {
    #[error("{alphas} covectors but {vectors} vectors")]
    LengthMismatch { alphas: usize, vectors: usize },
    #[error("rotation order must be at least 1, got {0}")]
    BadOrder(u32),
    #[error("facet index {0} out of range")]
    FacetOutOfRange(usize),
    #[error("word length bound {0} exceeds {MAX_WORD_LENGTH}")]
    WordLengthTooLarge(usize),
    #[error("more than {MAX_GROUP_ELEMENTS} group elements")]
    TooManyElements,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Covector/vector pairs defining the reflections `r_i = Id − α_i ⊗ v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionSystem {
    alphas: Vec<Covector>,
    vectors: Vec<Vector>,
}

impl ReflectionSystem {
    pub fn new(alphas: Vec<Covector>, vectors: Vec<Vector>) -> Result<Self, VinbergError> {
        if alphas.len() != vectors.len() {
            return Err(VinbergError::LengthMismatch { alphas: alphas.len(), vectors: vectors.len() });
        }
        Ok(ReflectionSystem { alphas, vectors })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[Covector] {
        &self.alphas
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vectors_mut(&mut self) -> &mut [Vector] {
        &mut self.vectors
    }

    pub fn realization(&self) -> Realization {
        Realization::new(self.alphas.clone())
    }

    pub fn reflection(&self, i: usize) -> Mat4 {
        Mat4::reflection(&self.alphas[i], &self.vectors[i])
    }

    /// `A_ij = α_i(v_j)`.
    pub fn cartan(&self) -> Vec<Vec<Rational>> {
        self.alphas.iter().map(|a| self.vectors.iter().map(|v| a.apply(v)).collect()).collect()
    }

    /// `(c_i⁻¹ α_i ∘ A⁻¹, c_i A v_i)`.
    pub fn apply_group(&self, g: &GroupElement) -> Result<Self, VinbergError> {
        if g.scales().len() != self.len() {
            return Err(GeometryError::ScaleCount { expected: self.len(), got: g.scales().len() }.into());
        }
        Ok(ReflectionSystem {
            alphas: self.alphas.iter().enumerate().map(|(i, a)| g.act_on_covector(i, a)).collect(),
            vectors: self.vectors.iter().enumerate().map(|(i, v)| g.act_on_vector(i, v)).collect(),
        })
    }
}

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub passed: bool,
    /// Some entries were compared in floating point (labels outside
    /// {2, 3, 4, 6}).
    pub numeric: bool,
    /// First failure, if any.
    pub detail: Option<String>,
}

impl ConditionResult {
    fn pass() -> Self {
        ConditionResult { passed: true, numeric: false, detail: None }
    }

    fn fail(&mut self, detail: String) {
        if self.passed {
            self.passed = false;
            self.detail = Some(detail);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// (V1) … (V6) in order.
    pub conditions: [ConditionResult; 6],
}

pub const CONDITION_NAMES: [&str; 6] = [
    "V1 diagonal entries equal 2",
    "V2 off-diagonal entries nonpositive",
    "V3 zero pattern symmetric",
    "V4 ridge products match labels",
    "V5 non-adjacent products at least 4",
    "V6 covectors realize the polytope",
];

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn passed(&self, k: usize) -> bool {
        self.conditions[k - 1].passed
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, name)) in self.conditions.iter().zip(CONDITION_NAMES).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {name}", if c.passed { "PASS" } else { "FAIL" })?;
            if c.numeric {
                write!(f, " (numeric)")?;
            }
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
        }
        Ok(())
    }
}

/// `4cos²(π/m)` when rational, i.e. for m ∈ {2, 3, 4, 6}.
pub fn exact_product(m: u32) -> Option<Rational> {
    match m {
        2 => Some(int(0)),
        3 => Some(int(1)),
        4 => Some(int(2)),
        6 => Some(int(3)),
        _ => None,
    }
}

fn numeric_product(m: u32) -> f64 {
    let c = libm::cos(core::f64::consts::PI / m as f64);
    4.0 * c * c
}

/// Checks Vinberg's conditions for `s` against the labeled polytope `p`.
pub fn check_vinberg(s: &ReflectionSystem, p: &LabeledPolytope) -> ConditionReport {
    let f = s.len();
    let a = s.cartan();
    let mut c: [ConditionResult; 6] = core::array::from_fn(|_| ConditionResult::pass());
    if f != p.facet_count() {
        let msg = format!("system has {f} facets, polytope has {}", p.facet_count());
        for r in c.iter_mut() {
            r.fail(msg.clone());
        }
        return ConditionReport { conditions: c };
    }
    let two = int(2);
    for i in 0..f {
        if a[i][i] != two {
            c[0].fail(format!("alpha_{0}(v_{0}) = {1}", i + 1, a[i][i]));
        }
    }
    for i in 0..f {
        for j in 0..f {
            if i == j {
                continue;
            }
            if a[i][j].is_positive() {
                c[1].fail(format!("alpha_{}(v_{}) = {} > 0", i + 1, j + 1, a[i][j]));
            }
            if a[i][j].is_zero() != a[j][i].is_zero() {
                c[2].fail(format!("alpha_{}(v_{}) = {}, alpha_{}(v_{}) = {}", i + 1, j + 1, a[i][j], j + 1, i + 1, a[j][i]));
            }
        }
    }
    for i in 0..f {
        for j in i + 1..f {
            let prod = &a[i][j] * &a[j][i];
            match p.label(i, j) {
                Some(m) => match exact_product(m) {
                    Some(target) => {
                        if prod != target {
                            c[3].fail(format!("ridge {{{}, {}}} label {m}: product {prod}, expected {target}", i + 1, j + 1));
                        }
                    }
                    None => {
                        c[3].numeric = true;
                        let target = numeric_product(m);
                        if libm::fabs(to_f64(&prod) - target) > NUMERIC_TOL {
                            c[3].fail(format!("ridge {{{}, {}}} label {m}: product {prod}, expected {target:.12}", i + 1, j + 1));
                        }
                    }
                },
                None => {
                    if prod < int(4) {
                        c[4].fail(format!("facets {} and {}: product {prod} < 4", i + 1, j + 1));
                    }
                }
            }
        }
    }
    if let Err(e) = check_realization(&s.realization(), p.polytope()) {
        c[5].fail(format!("{e}"));
    }
    ConditionReport { conditions: c }
}

/// Whether `r_i r_j` has order exactly `m`.
pub fn rotation_order_check(s: &ReflectionSystem, i: usize, j: usize, m: u32) -> Result<bool, VinbergError> {
    if m < 1 {
        return Err(VinbergError::BadOrder(m));
    }
    for x in [i, j] {
        if x >= s.len() {
            return Err(VinbergError::FacetOutOfRange(x + 1));
        }
    }
    let rot = s.reflection(i).mul(&s.reflection(j));
    let mut power = Mat4::identity();
    for k in 1..=m {
        power = power.mul(&rot);
        if power.is_identity() {
            return Ok(k == m);
        }
    }
    Ok(false)
}

/// Distinct group elements of word length at most the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEnumeration {
    pub elements: Vec<Mat4>,
    /// No new elements appeared at the last length examined, so `elements` is
    /// the whole group.
    pub closed: bool,
    /// Longest word length examined.
    pub length: usize,
}

impl GroupEnumeration {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Breadth-first enumeration of products of the reflections `r_i`, with
/// exact deduplication.
pub fn enumerate_group(s: &ReflectionSystem, max_word_length: usize) -> Result<GroupEnumeration, VinbergError> {
    if max_word_length > MAX_WORD_LENGTH {
        return Err(VinbergError::WordLengthTooLarge(max_word_length));
    }
    let gens: Vec<Mat4> = (0..s.len()).map(|i| s.reflection(i)).collect();
    let mut seen: BTreeSet<Mat4> = BTreeSet::new();
    seen.insert(Mat4::identity());
    let mut frontier = vec![Mat4::identity()];
    let mut length = 0;
    while length < max_word_length && !frontier.is_empty() {
        length += 1;
        let mut next = Vec::new();
        for g in &frontier {
            for r in &gens {
                let h = g.mul(r);
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    next.push(h);
                    if seen.len() > MAX_GROUP_ELEMENTS {
                        return Err(VinbergError::TooManyElements);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(GroupEnumeration { closed: frontier.is_empty(), elements: seen.into_iter().collect(), length })
}

/// `f` reflections `α_i = e_i*`, `v_i` spanning a rank-2 dihedral
/// configuration of order `2m` in the first two coordinates (for `f = 2`).
/// Used for finite-group sanity checks.
pub fn dihedral_system(m: u32) -> Option<ReflectionSystem> {
    let p = exact_product(m)?;
    // A_12 = −1, A_21 = −p: product p.
    let alphas = vec![Covector::basis(0), Covector::basis(1)];
    let vectors = vec![
        Vector::new([int(2), -p.clone(), int(0), int(0)]),
        Vector::new([int(-1), int(2), int(0), int(0)]),
    ];
    if m == 2 {
        let vectors = vec![Vector::from_ints([2, 0, 0, 0]), Vector::from_ints([0, 2, 0, 0])];
        return ReflectionSystem::new(alphas, vectors).ok();
    }
    ReflectionSystem::new(alphas, vectors).ok()
}

/// The standard all-orthogonal system `α_i = e_i*`, `v_i = 2e_i`.
pub fn orthogonal_system() -> ReflectionSystem {
    let alphas = (0..4).map(Covector::basis).collect();
    let vectors = (0..4).map(|k| Vector::basis(k).scaled(&int(2))).collect();
    ReflectionSystem { alphas, vectors }
}
