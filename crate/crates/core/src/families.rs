//! The two worked one- and three-parameter families of hexahedral
//! realizations.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use thiserror::Error;

use crate::fiber::{Inequality, ParamCovector, ParametricRealization};
use crate::geometry::halfspaces_to_face_lattice;
use crate::linalg::{Covector, Field};
use crate::polytope::LabeledPolytope;
use crate::ratfunc::RatFunc;
use crate::rational::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleId {
    /// Covectors `e_1*..e_4*`, `(−1,1,1,1)`, `(−1,d,0,1)`; `d > 1`.
    Ex71,
    /// Covectors `e_1*..e_4*`, `(1,1,1,−1)`, `(d1,d2,d3,−1)`.
    Ex72,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown example {0:?}; expected 7.1 or 7.2")]
pub struct UnknownExample(pub String);

impl FromStr for ExampleId {
    type Err = UnknownExample;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "7.1" | "ex71" => Ok(ExampleId::Ex71),
            "7.2" | "ex72" => Ok(ExampleId::Ex72),
            _ => Err(UnknownExample(s.to_string())),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleId::Ex71 => "7.1",
            ExampleId::Ex72 => "7.2",
        })
    }
}

fn c(n: i64) -> RatFunc {
    RatFunc::int(n)
}

fn v(k: u16) -> RatFunc {
    RatFunc::var(k)
}

fn basis(k: usize) -> ParamCovector {
    core::array::from_fn(|i| c((i == k) as i64))
}

/// `lower < var`, written as `lower − var < 0`.
fn above(var: u16, lower: i64, name: &str) -> Inequality {
    Inequality { expr: c(lower).sub(&v(var)), label: alloc::format!("{name} > {lower}") }
}

fn below(var: u16, upper: i64, name: &str) -> Inequality {
    Inequality { expr: v(var).sub(&c(upper)), label: alloc::format!("{name} < {upper}") }
}

/// Labels of the 7.1 polytope as 0-based `(i, j, m)`.
pub const EX71_LABELS: [(usize, usize, u32); 10] = [
    (0, 1, 2),
    (0, 2, 2),
    (0, 3, 2),
    (1, 2, 2),
    (1, 5, 2),
    (3, 5, 2),
    (4, 5, 2),
    (2, 3, 3),
    (2, 4, 3),
    (3, 4, 3),
];

pub const EX72_LABELS: [(usize, usize, u32); 12] = [
    (0, 1, 3),
    (0, 2, 3),
    (0, 3, 2),
    (0, 4, 3),
    (0, 5, 2),
    (1, 2, 4),
    (1, 3, 2),
    (1, 4, 3),
    (1, 5, 2),
    (2, 3, 3),
    (2, 4, 2),
    (4, 5, 3),
];

/// Evaluates constant covectors at a sample point to read off the face
/// lattice, then attaches labels.
fn labeled(covs: &[ParamCovector], sample: &[Rational], labels: &[(usize, usize, u32)]) -> LabeledPolytope {
    let numeric: Vec<Covector> = covs
        .iter()
        .map(|b| Covector::new(core::array::from_fn(|k| b[k].eval(sample).expect("sample avoids poles"))))
        .collect();
    let poly = halfspaces_to_face_lattice(&numeric).expect("sample point realizes the family");
    let mut l = vec![0; poly.ridge_count()];
    for &(i, j, m) in labels {
        l[poly.ridge_index(i, j).expect("listed ridge exists")] = m;
    }
    LabeledPolytope::new(poly, l).expect("all ridges labeled")
}

pub fn example_family(id: ExampleId) -> ParametricRealization {
    match id {
        ExampleId::Ex71 => {
            let mut covs: Vec<ParamCovector> = (0..4).map(basis).collect();
            covs.push([c(-1), c(1), c(1), c(1)]);
            covs.push([c(-1), v(0), c(0), c(1)]);
            let p = labeled(&covs, &[int(2)], &EX71_LABELS);
            ParametricRealization::new(covs, vec!["d".into()], vec![above(0, 1, "d")], p).expect("six facets")
        }
        ExampleId::Ex72 => {
            let mut covs: Vec<ParamCovector> = (0..4).map(basis).collect();
            covs.push([c(1), c(1), c(1), c(-1)]);
            covs.push([v(0), v(1), v(2), c(-1)]);
            let p = labeled(&covs, &[int(2), int(2), rat(1, 2)], &EX72_LABELS);
            let validity = vec![above(0, 1, "d1"), above(1, 1, "d2"), above(2, 0, "d3"), below(2, 1, "d3")];
            ParametricRealization::new(covs, vec!["d1".into(), "d2".into(), "d3".into()], validity, p)
                .expect("six facets")
        }
    }
}
