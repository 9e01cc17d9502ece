//! Labeled combinatorial 3-polytopes, their orderability, and the projective
//! Coxeter structures they carry.
//!
//! The crate is `no_std` with `alloc`. Everything here is pure computation on
//! immutable values: face lattices, the polytope catalog for up to seven facets,
//! Coxeter graph classification, exact Vinberg condition checks, and the
//! symbolic solver for restricted deformation fibers together with the region
//! analysis used to describe their feasible parameters.
//!
//! File formats, the bundled catalog, threaded census runs and the command line
//! live in the `coxdeform` companion crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod catalog;
pub mod coxeter;
pub mod families;
pub mod fiber;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod polytope;
pub mod ratfunc;
pub mod rational;
pub mod region;
pub mod upoly;
pub mod vinberg;

mod quadratic;

pub use catalog::{enumerate_polytopes, CatalogError};
pub use coxeter::{coxeter_graph, normal_type, ComponentType, CoxeterGraph, NormalTypeVerdict, NotNormalReason, Weight};
pub use families::{example_family, ExampleId};
pub use fiber::{dims, evaluate_fiber, solve_fiber, Dims, FiberError, ParametricFiber, ParametricRealization};
pub use geometry::{
    apply_group_to_realization, halfspaces_to_face_lattice, is_realization, normalize_realization, GeometryError,
    GroupElement, Realization,
};
pub use linalg::{Covector, Mat4, Vector};
pub use order::{census, is_orderable, is_orderable_oracle, OrderingCertificate};
pub use polytope::{CombinatorialPolytope, EdgeStats, LabeledPolytope, PolytopeError};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use region::{interval_endpoints_1d, scan_region, Axis, FeasibleInterval, RegionError, ScanResult};
pub use vinberg::{check_vinberg, enumerate_group, rotation_order_check, ConditionReport, ReflectionSystem, VinbergError};
