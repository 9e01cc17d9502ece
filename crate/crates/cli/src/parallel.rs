//! Worker pools for the census and for scans. Results are merged in job
//! order, so output does not depend on the worker count.

use coxdeform_core::catalog::{candidate_count, labeling_total, polytopes_in_range, CatalogError};
use coxdeform_core::order::count_orderable_in;
use coxdeform_core::polytope::CombinatorialPolytope;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

/// Applies `f` to every job on `workers` threads; results come back in job
/// order.
pub fn par_map<T, R, F>(jobs: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1).min(jobs.len().max(1));
    if workers == 1 {
        return jobs.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let r = f(&jobs[k]);
                slots.lock().expect("no worker panicked")[k] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every job ran")).collect()
}

fn chunks(total: u64, pieces: u64) -> Vec<std::ops::Range<u64>> {
    let pieces = pieces.clamp(1, total.max(1));
    let size = total.div_ceil(pieces);
    (0..pieces).map(|k| k * size..((k + 1) * size).min(total)).filter(|r| !r.is_empty()).collect()
}

/// Catalog enumeration with the candidate space split into disjoint ranges.
pub fn enumerate_parallel(f: usize, workers: usize) -> Result<Vec<CombinatorialPolytope>, CatalogError> {
    let total = candidate_count(f)?;
    let ranges = chunks(total, 16 * workers.max(1) as u64);
    let parts = par_map(&ranges, workers, |r| polytopes_in_range(f, r.clone()));
    let mut merged = BTreeMap::new();
    for part in parts {
        for (code, p) in part? {
            merged.entry(code).or_insert(p);
        }
    }
    Ok(merged.into_values().collect())
}

/// `(orderable, total)` over all binary labelings, with each polytope's
/// labeling range split across workers.
pub fn census_parallel(polytopes: &[CombinatorialPolytope], workers: usize) -> (u64, u64) {
    let mut jobs = Vec::new();
    for (k, p) in polytopes.iter().enumerate() {
        for r in chunks(1u64 << p.ridge_count(), 4 * workers.max(1) as u64) {
            jobs.push((k, r));
        }
    }
    let counts = par_map(&jobs, workers, |(k, r)| count_orderable_in(&polytopes[*k], r.clone()));
    (counts.iter().sum(), labeling_total(polytopes))
}
