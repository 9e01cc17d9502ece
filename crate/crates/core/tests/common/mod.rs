#![allow(dead_code)]

use coxdeform_core::fiber::{evaluate_fiber, solve_fiber, ParametricFiber};
use coxdeform_core::families::{example_family, ExampleId};
use coxdeform_core::geometry::GroupElement;
use coxdeform_core::linalg::Mat4;
use coxdeform_core::order::OrderingCertificate;
use coxdeform_core::rational::{int, midpoint, rat, Rational};
use coxdeform_core::region::interval_endpoints_1d;
use coxdeform_core::vinberg::ReflectionSystem;
use rand::Rng;

pub fn example_fiber(id: ExampleId) -> ParametricFiber {
    let r = example_family(id);
    let cert = OrderingCertificate::from_order(r.polytope(), (0..6).collect()).unwrap();
    solve_fiber(&r, &cert).unwrap()
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

/// Product of random shears and sign flips: determinant ±1, rational entries.
pub fn random_group_element(rng: &mut impl Rng, f: usize) -> GroupElement {
    let mut a = Mat4::identity();
    for _ in 0..8 {
        let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
        if i == j {
            continue;
        }
        let q = small_rational(rng);
        let mut e = Mat4::identity();
        e.0[i][j] = q;
        a = a.mul(&e);
    }
    if rng.gen_bool(0.5) {
        let mut e = Mat4::identity();
        e.0[0][0] = int(-1);
        a = a.mul(&e);
    }
    let c = (0..f).map(|_| rat(rng.gen_range(1..=12), rng.gen_range(1..=7))).collect();
    GroupElement::new(a, c).unwrap()
}

/// A uniformly random rational strictly inside `(lo, hi)`.
pub fn inside(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let k = rng.gen_range(1..1000);
    lo + (hi - lo) * rat(k, 1000)
}

/// Random feasible points of an example fiber: realization parameters drawn
/// from the given boxes, the free parameter drawn from an exact feasible
/// interval in `bracket`.
pub fn feasible_systems(
    rng: &mut impl Rng,
    fib: &ParametricFiber,
    boxes: &[(Rational, Rational)],
    bracket: (Rational, Rational),
    count: usize,
) -> Vec<(Vec<Rational>, ReflectionSystem)> {
    let free = fib.free[0];
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100 * count, "too few feasible samples");
        let fixed: Vec<(u16, Rational)> =
            boxes.iter().enumerate().map(|(v, (lo, hi))| (v as u16, inside(rng, lo, hi))).collect();
        let iv = interval_endpoints_1d(fib, &fixed, free, (&bracket.0, &bracket.1), &rat(1, 1_000_000)).unwrap();
        if iv.is_empty() {
            continue;
        }
        let pick = &iv[rng.gen_range(0..iv.len())];
        let t = if rng.gen_bool(0.2) { pick.sample.clone() } else { inside(rng, &pick.left.hi, &pick.right.lo) };
        let mut point: Vec<Rational> = fixed.into_iter().map(|(_, x)| x).collect();
        point.push(t);
        assert_eq!(fib.is_feasible_at(&point), Some(true));
        let sys = evaluate_fiber(fib, &point).unwrap();
        out.push((point, sys));
    }
    out
}

pub fn ex71_boxes() -> Vec<(Rational, Rational)> {
    vec![(int(1), rat(4, 3))]
}

pub fn ex72_boxes() -> Vec<(Rational, Rational)> {
    vec![(int(1), int(4)), (int(1), int(4)), (int(0), int(1))]
}

pub fn free_bracket() -> (Rational, Rational) {
    (int(-100), int(0))
}

pub fn mid(a: &Rational, b: &Rational) -> Rational {
    midpoint(a, b)
}
