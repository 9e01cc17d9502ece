use coxdeform_core::catalog::{candidate_count, enumerate_polytopes, labeling_total, polytopes_in_range};
use coxdeform_core::order::census;
use rand::{rngs::StdRng, seq::SliceRandom, SeedableRng};
use std::collections::BTreeSet;

#[test]
fn counts_and_labeling_totals() {
    let expected = [(4, 1, 64), (5, 2, 768), (6, 7, 14848), (7, 34, 421888)];
    for (f, n, total) in expected {
        let ps = enumerate_polytopes(f).unwrap();
        assert_eq!(ps.len(), n, "f = {f}");
        assert_eq!(labeling_total(&ps), total, "f = {f}");
    }
    let mut e5: Vec<usize> = enumerate_polytopes(5).unwrap().iter().map(|p| p.ridge_count()).collect();
    e5.sort();
    assert_eq!(e5, [8, 9]);
}

#[test]
fn census_through_six_facets() {
    assert_eq!(census(4).unwrap(), (64, 64));
    assert_eq!(census(5).unwrap(), (654, 768));
    assert_eq!(census(6).unwrap(), (7130, 14848));
}

/// Pairwise isomorphism by trying every facet permutation.
fn isomorphic_brute(a: &coxdeform_core::CombinatorialPolytope, b: &coxdeform_core::CombinatorialPolytope) -> bool {
    let f = a.facet_count();
    if f != b.facet_count() || a.ridge_count() != b.ridge_count() {
        return false;
    }
    let target: BTreeSet<(usize, usize)> = b.ridges().iter().copied().collect();
    let mut perm: Vec<usize> = (0..f).collect();
    loop {
        let mapped: BTreeSet<(usize, usize)> =
            a.ridges().iter().map(|&(i, j)| (perm[i].min(perm[j]), perm[i].max(perm[j]))).collect();
        if mapped == target {
            return true;
        }
        let Some(k) = (0..f - 1).rev().find(|&k| perm[k] < perm[k + 1]) else { return false };
        let l = (k + 1..f).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
}

#[test]
fn entries_are_pairwise_non_isomorphic() {
    for f in 4..=7 {
        let ps = enumerate_polytopes(f).unwrap();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                assert!(!isomorphic_brute(&ps[i], &ps[j]), "f = {f}: entries {i} and {j}");
            }
        }
    }
}

#[test]
fn face_structure_of_every_entry() {
    for f in 4..=7 {
        for p in enumerate_polytopes(f).unwrap() {
            assert!(p.dual_graph().is_three_connected());
            assert!((0..f).all(|x| p.facet_degree(x) >= 3));
            let total: usize = (0..f).map(|x| p.facet_cycle(x).unwrap().len()).sum();
            assert_eq!(total, 2 * p.ridge_count());
            assert_eq!(p.vertex_count() + f, p.ridge_count() + 2);
        }
    }
}

#[test]
fn canonical_code_survives_random_relabelings() {
    let mut rng = StdRng::seed_from_u64(7);
    for f in 4..=7 {
        for p in enumerate_polytopes(f).unwrap() {
            let code = p.canonical_code();
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..f).collect();
                perm.shuffle(&mut rng);
                assert_eq!(p.relabeled(&perm).canonical_code(), code);
            }
        }
    }
}

#[test]
fn enumeration_is_independent_of_candidate_order() {
    let f = 6;
    let total = candidate_count(f).unwrap();
    let chunk = total / 13 + 1;
    let mut ranges: Vec<(u64, u64)> = (0..total).step_by(chunk as usize).map(|a| (a, (a + chunk).min(total))).collect();
    ranges.shuffle(&mut StdRng::seed_from_u64(6));
    let mut codes = BTreeSet::new();
    for (a, b) in ranges {
        codes.extend(polytopes_in_range(f, a..b).unwrap().into_keys());
    }
    let direct: BTreeSet<String> = enumerate_polytopes(f).unwrap().iter().map(|p| p.canonical_code()).collect();
    assert_eq!(codes, direct);
}
