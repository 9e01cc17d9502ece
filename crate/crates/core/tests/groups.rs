use coxdeform_core::coxeter::{classify_component, ComponentType, CoxeterGraph, Weight};
use coxdeform_core::linalg::{Covector, Vector};
use coxdeform_core::rational::int;
use coxdeform_core::vinberg::{dihedral_system, enumerate_group, orthogonal_system, ReflectionSystem};

/// Rank-n system with α_i = e_i* and a rational Cartan matrix realizing the
/// weights: A_ij = -1, A_ji = -4cos²(π/m) for i < j.
fn standard_system(n: usize, weights: &[(usize, usize, u32)]) -> ReflectionSystem {
    let mut a = vec![vec![int(0); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = int(2);
    }
    for &(i, j, m) in weights {
        let c = match m {
            3 => 1,
            4 => 2,
            6 => 3,
            _ => panic!("irrational"),
        };
        a[i][j] = int(-1);
        a[j][i] = int(-c);
    }
    let alphas = (0..n).map(Covector::basis).collect();
    // v_j has coordinates A_ij in slot i.
    let vectors = (0..n)
        .map(|j| Vector::new(core::array::from_fn(|i| if i < n { a[i][j].clone() } else { int(0) })))
        .collect();
    ReflectionSystem::new(alphas, vectors).unwrap()
}

#[test]
fn spherical_rank_three_groups_are_finite() {
    for (weights, order) in [
        (vec![], 8),
        (vec![(0, 1, 3)], 12),
        (vec![(0, 1, 4)], 16),
        (vec![(0, 1, 6)], 24),
        (vec![(0, 1, 3), (1, 2, 3)], 24),
        (vec![(0, 1, 4), (1, 2, 3)], 48),
    ] {
        let g = CoxeterGraph::from_edges(3, &weights.iter().map(|&(i, j, m)| (i, j, Weight::Finite(m))).collect::<Vec<_>>());
        for comp in g.components() {
            assert_eq!(classify_component(&g.subgraph(&comp)).unwrap(), ComponentType::Spherical);
        }
        let e = enumerate_group(&standard_system(3, &weights), 12).unwrap();
        assert!(e.closed, "{weights:?}");
        assert_eq!(e.order(), order, "{weights:?}");
    }
}

#[test]
fn affine_rank_three_group_does_not_close() {
    // Ã2: a triangle of 3s.
    let s = standard_system(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]);
    let e = enumerate_group(&s, 10).unwrap();
    assert!(!e.closed);
}

#[test]
fn reference_orders() {
    let e = enumerate_group(&orthogonal_system(), 12).unwrap();
    assert!(e.closed && e.order() == 16);
    for m in [2, 3, 4, 6] {
        let e = enumerate_group(&dihedral_system(m).unwrap(), 12).unwrap();
        assert!(e.closed && e.order() == 2 * m as usize);
    }
}
