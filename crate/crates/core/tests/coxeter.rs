use coxdeform_core::coxeter::{
    classify_by_table, classify_component, classify_gram_exact, classify_gram_float, normal_type, CoxeterGraph,
    NormalTypeVerdict, NotNormalReason, Weight,
};
use coxdeform_core::catalog::enumerate_polytopes;
use coxdeform_core::polytope::{shapes, LabeledPolytope};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

const WEIGHTS: [Weight; 5] =
    [Weight::Finite(3), Weight::Finite(4), Weight::Finite(5), Weight::Finite(6), Weight::Infinite];

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn build(n: usize, edges: &[(usize, usize)], code: u64) -> CoxeterGraph {
    let mut c = code;
    let weighted: Vec<(usize, usize, Weight)> = edges
        .iter()
        .map(|&(i, j)| {
            let w = WEIGHTS[(c % 5) as usize];
            c /= 5;
            (i, j, w)
        })
        .collect();
    CoxeterGraph::from_edges(n, &weighted)
}

fn check_routes(g: &CoxeterGraph) {
    let table = classify_by_table(g).unwrap();
    assert_eq!(classify_gram_float(g), table, "{:?}", g.edges());
    if g.has_exact_gram() {
        assert_eq!(classify_gram_exact(g), table, "{:?}", g.edges());
    }
}

/// Every connected weighted graph on `n` nodes whose edge set passes `keep`.
fn for_each_graph(n: usize, keep: impl Fn(usize) -> bool, mut f: impl FnMut(&CoxeterGraph)) {
    let ps = pairs(n);
    for mask in 0u32..1 << ps.len() {
        let edges: Vec<(usize, usize)> = ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        if !keep(edges.len()) {
            continue;
        }
        if !CoxeterGraph::from_edges(n, &edges.iter().map(|&(i, j)| (i, j, Weight::Finite(3))).collect::<Vec<_>>()).is_connected() {
            continue;
        }
        for code in 0..5u64.pow(edges.len() as u32) {
            f(&build(n, &edges, code));
        }
    }
}

#[test]
fn routes_agree_on_all_graphs_up_to_four_nodes() {
    let mut count = 0;
    for n in 1..=4 {
        for_each_graph(n, |_| true, |g| {
            check_routes(g);
            count += 1;
        });
    }
    assert!(count > 40_000);
}

#[test]
fn routes_agree_on_sparse_five_node_graphs() {
    // Trees and unicyclic graphs: every connected spherical or affine diagram
    // on five nodes is among them.
    for_each_graph(5, |e| e <= 5, check_routes);
}

#[test]
fn routes_agree_on_sampled_dense_five_node_graphs() {
    let mut rng = StdRng::seed_from_u64(5);
    let ps = pairs(5);
    let mut done = 0;
    while done < 20_000 {
        let mask: u32 = rng.gen_range(0..1 << ps.len());
        let edges: Vec<(usize, usize)> = ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        if edges.len() < 6 {
            continue;
        }
        let g = build(5, &edges, rng.gen_range(0..5u64.pow(edges.len() as u32)));
        if !g.is_connected() {
            continue;
        }
        check_routes(&g);
        done += 1;
    }
}

#[test]
fn named_diagrams() {
    let path = |ws: &[Weight]| {
        let e: Vec<(usize, usize, Weight)> = ws.iter().enumerate().map(|(k, &w)| (k, k + 1, w)).collect();
        CoxeterGraph::from_edges(ws.len() + 1, &e)
    };
    use coxdeform_core::coxeter::ComponentType::*;
    let f = Weight::Finite;
    for (g, t) in [
        (path(&[f(3), f(3), f(3)]), Spherical),     // A4
        (path(&[f(4), f(3), f(3)]), Spherical),     // B4
        (path(&[f(3), f(4), f(3)]), Spherical),     // F4
        (path(&[f(5), f(3), f(3)]), Spherical),     // H4
        (path(&[f(4), f(3), f(4)]), Affine),        // C̃3
        (path(&[f(6), f(3)]), Affine),              // G̃2
        (path(&[f(4), f(4)]), Affine),              // C̃2
        (path(&[f(3), f(3)]), Spherical),           // A3
        (path(&[Weight::Infinite]), Affine),        // Ã1
        (path(&[f(7), f(3)]), Large),
        (path(&[f(3), f(3), f(3), f(4), f(3)]), Large),
    ] {
        assert_eq!(classify_component(&g).unwrap(), t, "{:?}", g.edges());
        assert_eq!(classify_by_table(&g).unwrap(), t, "{:?}", g.edges());
    }
}

#[test]
fn normal_type_examples() {
    let tet2 = LabeledPolytope::uniform(shapes::tetrahedron(), 2).unwrap();
    assert_eq!(normal_type(&tet2), NormalTypeVerdict::NotNormal(NotNormalReason::FiniteGroup));
    let pyr = LabeledPolytope::uniform(shapes::pyramid(4), 2).unwrap();
    assert_eq!(normal_type(&pyr), NormalTypeVerdict::NotNormal(NotNormalReason::ConeAllTwo));
    let prism = LabeledPolytope::uniform(shapes::prism(5), 2).unwrap();
    assert_eq!(normal_type(&prism), NormalTypeVerdict::NotNormal(NotNormalReason::PrismAllTwo));
    let cube3 = LabeledPolytope::uniform(shapes::cube(), 3).unwrap();
    assert_eq!(normal_type(&cube3), NormalTypeVerdict::Normal);
}

fn catalog(f: usize) -> &'static [coxdeform_core::CombinatorialPolytope] {
    static CACHE: std::sync::OnceLock<Vec<Vec<coxdeform_core::CombinatorialPolytope>>> = std::sync::OnceLock::new();
    &CACHE.get_or_init(|| (0..=7).map(|f| if f < 4 { Vec::new() } else { enumerate_polytopes(f).unwrap() }).collect())[f]
}

fn labeled_catalog_entry() -> impl Strategy<Value = (LabeledPolytope, Vec<usize>)> {
    (4usize..=7, any::<prop::sample::Index>(), prop::collection::vec(prop::sample::select(vec![2u32, 3, 4, 5, 6]), 15), Just(()))
        .prop_flat_map(|(f, idx, labels, _)| {
            let ps = catalog(f);
            let p = ps[idx.index(ps.len())].clone();
            let l: Vec<u32> = labels[..p.ridge_count()].to_vec();
            let lp = LabeledPolytope::new(p, l).unwrap();
            (Just(lp), Just((0..f).collect::<Vec<usize>>()).prop_shuffle())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn classification_ignores_node_order((lp, perm) in labeled_catalog_entry()) {
        let g = coxdeform_core::coxeter::coxeter_graph(&lp);
        let h = g.permuted(&perm);
        for comp in g.components() {
            let sub = g.subgraph(&comp);
            let moved: Vec<usize> = comp.iter().map(|&x| perm[x]).collect();
            let mut sorted = moved.clone();
            sorted.sort();
            let other = h.subgraph(&sorted);
            prop_assert_eq!(classify_component(&sub).unwrap(), classify_component(&other).unwrap());
        }
        prop_assert_eq!(normal_type(&lp), normal_type(&lp.relabeled(&perm)));
    }
}
