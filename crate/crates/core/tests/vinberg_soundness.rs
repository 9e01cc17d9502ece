mod common;

use common::*;
use coxdeform_core::families::ExampleId;
use coxdeform_core::linalg::Mat4;
use coxdeform_core::vinberg::{check_vinberg, rotation_order_check};
use rand::{rngs::StdRng, SeedableRng};

fn soundness(id: ExampleId, boxes: Vec<(coxdeform_core::Rational, coxdeform_core::Rational)>, seed: u64) {
    let fib = example_fiber(id);
    let p = fib.realization.polytope().clone();
    let mut rng = StdRng::seed_from_u64(seed);
    let samples = feasible_systems(&mut rng, &fib, &boxes, free_bracket(), 100);
    for (point, sys) in &samples {
        let report = check_vinberg(sys, &p);
        assert!(report.all_passed(), "at {point:?}:\n{report}");
        for i in 0..sys.len() {
            let r = sys.reflection(i);
            assert_eq!(r.mul(&r), Mat4::identity());
        }
        for (i, j, m) in p.labeled_ridges() {
            assert!(rotation_order_check(sys, i, j, m).unwrap(), "ridge {{{i}, {j}}} at {point:?}");
        }
    }
}

#[test]
fn ex71_feasible_points_pass_every_condition() {
    soundness(ExampleId::Ex71, ex71_boxes(), 1);
}

#[test]
fn ex72_feasible_points_pass_every_condition() {
    soundness(ExampleId::Ex72, ex72_boxes(), 2);
}

#[test]
fn verdict_is_invariant_under_the_group() {
    for (id, boxes) in [(ExampleId::Ex71, ex71_boxes()), (ExampleId::Ex72, ex72_boxes())] {
        let fib = example_fiber(id);
        let p = fib.realization.polytope().clone();
        let mut rng = StdRng::seed_from_u64(3);
        let mut samples = feasible_systems(&mut rng, &fib, &boxes, free_bracket(), 3);
        // Include failing systems too: perturb one vector.
        let (pt, mut bad) = samples[0].clone();
        bad.vectors_mut()[2] = bad.vectors()[2].scaled(&coxdeform_core::rational::rat(3, 2));
        samples.push((pt, bad));
        for (_, sys) in &samples {
            let base = check_vinberg(sys, &p);
            for _ in 0..20 {
                let g = random_group_element(&mut rng, sys.len());
                let moved = sys.apply_group(&g).unwrap();
                let report = check_vinberg(&moved, &p);
                let flags = |r: &coxdeform_core::vinberg::ConditionReport| r.conditions.iter().map(|c| c.passed).collect::<Vec<_>>();
                assert_eq!(flags(&report), flags(&base));
            }
        }
    }
}
