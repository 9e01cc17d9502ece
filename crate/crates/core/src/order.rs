//! Orderability of labeled polytopes: certificates, the greedy decision
//! procedure, an exhaustive oracle, and census counting over binary labelings.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use thiserror::Error;

use crate::catalog::{enumerate_polytopes, labeling_total, CatalogError};
use crate::polytope::{CombinatorialPolytope, LabeledPolytope};

/// Largest qualifying count a facet may have.
pub const MAX_COUNT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("order is not a permutation of the {0} facets")]
    NotAPermutation(usize),
    #[error("facet {facet} has a_i + b_i = {a} + {b} > 3")]
    CountExceeded { facet: usize, a: usize, b: usize },
}

/// A facet order in which every facet has at most three edges that are of
/// order 2 or shared with an earlier facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderingCertificate {
    order: Vec<usize>,
    position: Vec<usize>,
    counts: Vec<(usize, usize)>,
}

impl OrderingCertificate {
    /// Validates `order` (facet indices, first to last) against `p`.
    pub fn from_order(p: &LabeledPolytope, order: Vec<usize>) -> Result<Self, CertificateError> {
        let f = p.facet_count();
        let mut position = vec![usize::MAX; f];
        if order.len() != f {
            return Err(CertificateError::NotAPermutation(f));
        }
        for (k, &x) in order.iter().enumerate() {
            if x >= f || position[x] != usize::MAX {
                return Err(CertificateError::NotAPermutation(f));
            }
            position[x] = k;
        }
        let counts = facet_counts(p, &position);
        for (facet, &(a, b)) in counts.iter().enumerate() {
            if a + b > MAX_COUNT {
                return Err(CertificateError::CountExceeded { facet: facet + 1, a, b });
            }
        }
        Ok(OrderingCertificate { order, position, counts })
    }

    /// Facets from first to last.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, facet: usize) -> usize {
        self.position[facet]
    }

    /// `(a_i, b_i)`: order-2 edges of `facet`, and edges of order ≥ 3 shared
    /// with earlier facets.
    pub fn counts(&self, facet: usize) -> (usize, usize) {
        self.counts[facet]
    }

    pub fn is_earlier(&self, i: usize, j: usize) -> bool {
        self.position[i] < self.position[j]
    }

    /// Re-checks the certificate against a (possibly different) labeling.
    pub fn verify(&self, p: &LabeledPolytope) -> bool {
        p.facet_count() == self.order.len()
            && facet_counts(p, &self.position).iter().all(|&(a, b)| a + b <= MAX_COUNT)
    }
}

fn facet_counts(p: &LabeledPolytope, position: &[usize]) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); p.facet_count()];
    for (i, j, m) in p.labeled_ridges() {
        if m == 2 {
            counts[i].0 += 1;
            counts[j].0 += 1;
        } else if position[i] < position[j] {
            counts[j].1 += 1;
        } else {
            counts[i].1 += 1;
        }
    }
    counts
}

/// Per-facet bitmasks describing a labeling: order-2 edge counts and the
/// neighbours across edges of order ≥ 3.
#[derive(Clone, Debug)]
struct Masks {
    twos: Vec<usize>,
    big: Vec<u64>,
}

impl Masks {
    fn of(p: &LabeledPolytope) -> Self {
        let f = p.facet_count();
        let mut twos = vec![0; f];
        let mut big = vec![0u64; f];
        for (i, j, m) in p.labeled_ridges() {
            if m == 2 {
                twos[i] += 1;
                twos[j] += 1;
            } else {
                big[i] |= 1 << j;
                big[j] |= 1 << i;
            }
        }
        Masks { twos, big }
    }

    /// Count of `x` if it came last among the facets in `placed`.
    fn count(&self, x: usize, placed: u64) -> usize {
        self.twos[x] + (self.big[x] & placed).count_ones() as usize
    }

    /// Reverse greedy elimination; the removal sequence, last facet first.
    fn eliminate(&self) -> Option<Vec<usize>> {
        let f = self.twos.len();
        let mut remaining: u64 = if f == 64 { u64::MAX } else { (1u64 << f) - 1 };
        let mut removed = Vec::with_capacity(f);
        while remaining != 0 {
            let x = (0..f).find(|&x| remaining >> x & 1 == 1 && self.count(x, remaining) <= MAX_COUNT)?;
            remaining &= !(1u64 << x);
            removed.push(x);
        }
        Some(removed)
    }
}

/// Decides orderability by reverse greedy elimination: repeatedly remove the
/// lowest-indexed facet whose count against the remaining facets is at most
/// three. The removal sequence, reversed, is the certificate order.
pub fn is_orderable(p: &LabeledPolytope) -> Option<OrderingCertificate> {
    let mut order = Masks::of(p).eliminate()?;
    order.reverse();
    Some(OrderingCertificate::from_order(p, order).expect("greedy order is valid"))
}

/// Exhaustive search over facet orders, memoized on the set of facets already
/// placed. Intended for testing; `f ≤ 20`.
pub fn is_orderable_oracle(p: &LabeledPolytope) -> bool {
    let f = p.facet_count();
    assert!(f <= 20, "oracle limited to 20 facets");
    let masks = Masks::of(p);
    let full = (1usize << f) - 1;
    // dead[s]: no valid completion from placed set `s`.
    let mut dead = vec![false; 1 << f];
    fn search(s: usize, full: usize, masks: &Masks, dead: &mut [bool]) -> bool {
        if s == full {
            return true;
        }
        if dead[s] {
            return false;
        }
        for x in 0..masks.twos.len() {
            if s >> x & 1 == 0 && masks.count(x, s as u64) <= MAX_COUNT && search(s | 1 << x, full, masks, dead) {
                return true;
            }
        }
        dead[s] = true;
        false
    }
    search(0, full, &masks, &mut dead)
}

/// The labeled polytope whose ridge `k` has label 2 when bit `k` of `bits` is
/// set and label 3 otherwise.
pub fn binary_labeling(p: &CombinatorialPolytope, bits: u64) -> LabeledPolytope {
    let labels = (0..p.ridge_count()).map(|k| if bits >> k & 1 == 1 { 2 } else { 3 }).collect();
    LabeledPolytope::new(p.clone(), labels).expect("labels are at least 2")
}

/// Number of orderable binary labelings with bit patterns in `range`.
pub fn count_orderable_in(p: &CombinatorialPolytope, range: Range<u64>) -> u64 {
    let f = p.facet_count();
    let ridges = p.ridges();
    let mut count = 0;
    for bits in range {
        let mut masks = Masks { twos: vec![0; f], big: vec![0; f] };
        for (k, &(i, j)) in ridges.iter().enumerate() {
            if bits >> k & 1 == 1 {
                masks.twos[i] += 1;
                masks.twos[j] += 1;
            } else {
                masks.big[i] |= 1 << j;
                masks.big[j] |= 1 << i;
            }
        }
        if masks.eliminate().is_some() {
            count += 1;
        }
    }
    count
}

/// `(orderable, total)` binary labelings over all polytopes with `f` facets.
pub fn census(f: usize) -> Result<(u64, u64), CatalogError> {
    let polytopes = enumerate_polytopes(f)?;
    Ok(census_of(&polytopes))
}

pub fn census_of(polytopes: &[CombinatorialPolytope]) -> (u64, u64) {
    let orderable = polytopes.iter().map(|p| count_orderable_in(p, 0..1u64 << p.ridge_count())).sum();
    (orderable, labeling_total(polytopes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes::*;

    #[test]
    fn tetrahedron_always_orderable() {
        let t = tetrahedron();
        for bits in 0..64 {
            let p = binary_labeling(&t, bits);
            let cert = is_orderable(&p).expect("orderable");
            assert!(cert.verify(&p));
            assert!(is_orderable_oracle(&p));
        }
    }

    #[test]
    fn cube_all_three_is_not_orderable() {
        let p = LabeledPolytope::uniform(cube(), 3).unwrap();
        assert!(is_orderable(&p).is_none());
        assert!(!is_orderable_oracle(&p));
    }

    #[test]
    fn five_facet_census() {
        assert_eq!(census(5).unwrap(), (654, 768));
    }

    #[test]
    fn certificate_rejects_bad_orders() {
        let p = LabeledPolytope::uniform(cube(), 3).unwrap();
        assert!(matches!(
            OrderingCertificate::from_order(&p, (0..6).collect()),
            Err(CertificateError::CountExceeded { .. })
        ));
        assert_eq!(
            OrderingCertificate::from_order(&p, vec![0, 0, 1, 2, 3, 4]),
            Err(CertificateError::NotAPermutation(6))
        );
    }

    #[test]
    fn counts_match_definition() {
        let p = LabeledPolytope::uniform(prism(3), 3).unwrap();
        let cert = is_orderable(&p).unwrap();
        for x in 0..5 {
            let (a, b) = cert.counts(x);
            assert_eq!(a, 0);
            let earlier = p.polytope().neighbors(x).into_iter().filter(|&y| cert.is_earlier(y, x)).count();
            assert_eq!(b, earlier);
        }
    }
}
