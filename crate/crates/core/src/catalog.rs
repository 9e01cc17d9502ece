//! Enumeration of combinatorial 3-polytopes with few facets, through their
//! dual graphs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;
use thiserror::Error;

use crate::graph::SmallGraph;
use crate::polytope::CombinatorialPolytope;

pub const MIN_FACETS: usize = 4;
pub const MAX_FACETS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("facet count {0} outside the supported range {MIN_FACETS}..={MAX_FACETS}")]
    FacetsOutOfRange(usize),
}

fn check_range(f: usize) -> Result<(), CatalogError> {
    if (MIN_FACETS..=MAX_FACETS).contains(&f) {
        Ok(())
    } else {
        Err(CatalogError::FacetsOutOfRange(f))
    }
}

fn pairs(f: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..f {
        for j in i + 1..f {
            out.push((i, j));
        }
    }
    out
}

/// Number of candidate graphs on `f` nodes: one per subset of node pairs.
pub fn candidate_count(f: usize) -> Result<u64, CatalogError> {
    check_range(f)?;
    Ok(1u64 << pairs(f).len())
}

/// Candidates in `range` (as edge-subset bitmasks over the node pairs in
/// lexicographic order) that are dual graphs of 3-polytopes, keyed by
/// canonical code. Disjoint ranges can be processed independently and merged.
pub fn polytopes_in_range(
    f: usize,
    range: Range<u64>,
) -> Result<BTreeMap<String, CombinatorialPolytope>, CatalogError> {
    check_range(f)?;
    let pairs = pairs(f);
    let max_edges = 3 * f - 6;
    let mut seen: BTreeMap<String, Option<CombinatorialPolytope>> = BTreeMap::new();
    for mask in range {
        let e = mask.count_ones() as usize;
        if e > max_edges || 2 * e < 3 * f {
            continue;
        }
        let mut degree = [0u8; MAX_FACETS];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
        if degree[..f].iter().any(|&d| d < 3) {
            continue;
        }
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let g = SmallGraph::from_edges(f, &edges);
        if !g.is_three_connected() {
            continue;
        }
        let code = g.canonical_code();
        if seen.contains_key(&code) {
            continue;
        }
        let polytope = g.planar_faces().map(|faces| {
            let p = CombinatorialPolytope::new(f, edges.clone(), faces).expect("faces of a polyhedral graph");
            p.relabeled(&g.canonical_permutation())
        });
        seen.insert(code, polytope);
    }
    Ok(seen.into_iter().filter_map(|(code, p)| p.map(|p| (code, p))).collect())
}

/// One representative per isomorphism class of 3-polytopes with `f` facets,
/// facets numbered canonically, sorted by canonical code.
pub fn enumerate_polytopes(f: usize) -> Result<Vec<CombinatorialPolytope>, CatalogError> {
    let total = candidate_count(f)?;
    Ok(polytopes_in_range(f, 0..total)?.into_values().collect())
}

/// Σ 2^e over a list of polytopes: the number of binary edge labelings.
pub fn labeling_total(polytopes: &[CombinatorialPolytope]) -> u64 {
    polytopes.iter().map(|p| 1u64 << p.ridge_count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let four = enumerate_polytopes(4).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].ridge_count(), 6);
        let five = enumerate_polytopes(5).unwrap();
        let mut edges: Vec<usize> = five.iter().map(|p| p.ridge_count()).collect();
        edges.sort_unstable();
        assert_eq!(edges, [8, 9]);
        assert_eq!(labeling_total(&five), 768);
    }

    #[test]
    fn range_is_checked() {
        assert_eq!(enumerate_polytopes(3), Err(CatalogError::FacetsOutOfRange(3)));
        assert!(enumerate_polytopes(8).is_err());
    }

    #[test]
    fn entries_are_canonical() {
        for p in enumerate_polytopes(6).unwrap() {
            assert_eq!(p.canonical_permutation(), (0..6).collect::<Vec<_>>());
        }
    }
}
