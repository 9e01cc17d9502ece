//! Small undirected graphs on at most 64 nodes, stored as adjacency bitmasks.
//!
//! Used for facet-adjacency (dual) graphs: connectivity, face reading for
//! 3-connected planar graphs, and canonical labeling.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

pub const MAX_NODES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    adj: Vec<u64>,
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

impl SmallGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_NODES, "graph too large: {n} nodes");
        SmallGraph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SmallGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self loop at {a}");
        self.adj[a] |= bit(b);
        self.adj[b] |= bit(a);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.node_count() {
            for b in iter_bits(self.adj[a] & !low_mask(a + 1)) {
                out.push((a, b));
            }
        }
        out
    }

    fn all_mask(&self) -> u64 {
        low_mask(self.node_count())
    }

    /// Whether the subgraph induced on `nodes` is connected (the empty set counts
    /// as connected).
    pub fn is_connected_on(&self, nodes: u64) -> bool {
        if nodes == 0 {
            return true;
        }
        let start = nodes.trailing_zeros() as usize;
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.adj[v] & nodes;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == nodes
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.all_mask())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut left = self.all_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut seen = bit(start);
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                for v in iter_bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            out.push(iter_bits(seen).collect());
            left &= !seen;
        }
        out
    }

    /// 3-connectivity by exhaustive search for separating sets of size ≤ 2.
    pub fn is_three_connected(&self) -> bool {
        let n = self.node_count();
        if n < 4 {
            return false;
        }
        let all = self.all_mask();
        if !self.is_connected_on(all) {
            return false;
        }
        for a in 0..n {
            if !self.is_connected_on(all & !bit(a)) {
                return false;
            }
            for b in a + 1..n {
                if !self.is_connected_on(all & !bit(a) & !bit(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Induced cycles whose removal leaves the graph connected, each given as a
    /// node sequence starting at its smallest node, in the direction whose
    /// second node is smaller.
    pub fn peripheral_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let all = self.all_mask();
        let mut out = Vec::new();
        let mut path = Vec::new();
        for start in 0..n {
            path.clear();
            path.push(start);
            // Only nodes larger than `start` may appear after it.
            let allowed = all & !low_mask(start + 1);
            self.extend_cycles(start, allowed, bit(start), &mut path, &mut out);
        }
        out.retain(|cycle| {
            let mask = cycle.iter().fold(0u64, |m, &v| m | bit(v));
            self.is_connected_on(all & !mask)
        });
        out
    }

    fn extend_cycles(
        &self,
        start: usize,
        allowed: u64,
        on_path: u64,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for next in iter_bits(self.adj[last] & allowed & !on_path) {
            // Induced: `next` may touch the path only at `last` and (to close) `start`.
            let interior = on_path & !bit(last) & !bit(start);
            if self.adj[next] & interior != 0 {
                continue;
            }
            path.push(next);
            if path.len() >= 3 && self.has_edge(next, start) {
                if path[1] < next {
                    out.push(path.clone());
                }
            } else {
                self.extend_cycles(start, allowed, on_path | bit(next), path, out);
            }
            path.pop();
        }
    }

    /// Faces of a 3-connected planar graph, read as its peripheral cycles.
    ///
    /// Returns `None` when the graph is not 3-connected or not planar: a
    /// 3-connected graph is planar iff every edge lies on at most two peripheral
    /// cycles, and then the peripheral cycles are exactly the faces of its unique
    /// embedding (each edge on exactly two, Euler characteristic 2).
    pub fn planar_faces(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_three_connected() {
            return None;
        }
        let faces = self.peripheral_cycles();
        let n = self.node_count();
        let mut uses = vec![0u32; n * n];
        for face in &faces {
            for k in 0..face.len() {
                let (a, b) = (face[k], face[(k + 1) % face.len()]);
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                uses[a * n + b] += 1;
            }
        }
        for (a, b) in self.edges() {
            if uses[a * n + b] != 2 {
                return None;
            }
        }
        let euler = n as i64 - self.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return None;
        }
        Some(faces)
    }

    /// Relabels nodes: node `v` of `self` becomes node `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SmallGraph {
        let mut g = SmallGraph::new(self.node_count());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    /// Canonical labeling: returns `perm` such that `self.permuted(&perm)` is the
    /// same graph for every graph isomorphic to `self`.
    ///
    /// Equitable partition refinement, individualization of each member of the
    /// first non-singleton cell, and the lexicographically smallest upper-triangle
    /// adjacency string over all leaves.
    pub fn canonical_permutation(&self) -> Vec<usize> {
        let n = self.node_count();
        if n == 0 {
            return Vec::new();
        }
        let initial = vec![(0..n).collect::<Vec<_>>()];
        let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
        self.search_canonical(initial, &mut best);
        best.map(|(_, perm)| perm).unwrap_or_default()
    }

    fn search_canonical(&self, partition: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
        let partition = self.refine(partition);
        match partition.iter().position(|cell| cell.len() > 1) {
            None => {
                let mut perm = vec![0; self.node_count()];
                for (pos, cell) in partition.iter().enumerate() {
                    perm[cell[0]] = pos;
                }
                let code = self.permuted(&perm).adjacency_words();
                let better = match best {
                    None => true,
                    Some((b, _)) => code < *b,
                };
                if better {
                    *best = Some((code, perm));
                }
            }
            Some(target) => {
                for &v in &partition[target] {
                    let mut next = Vec::with_capacity(partition.len() + 1);
                    next.extend(partition[..target].iter().cloned());
                    next.push(vec![v]);
                    next.push(partition[target].iter().copied().filter(|&u| u != v).collect());
                    next.extend(partition[target + 1..].iter().cloned());
                    self.search_canonical(next, best);
                }
            }
        }
    }

    /// Splits cells by neighbour counts into every cell until stable. Sub-cells
    /// are ordered by their count signature, which keeps the result
    /// label-independent.
    fn refine(&self, mut partition: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let masks: Vec<u64> = partition
                .iter()
                .map(|cell| cell.iter().fold(0u64, |m, &v| m | bit(v)))
                .collect();
            let mut next = Vec::with_capacity(partition.len());
            for cell in &partition {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.adj[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        let mut sub: Vec<usize> = keyed[start..k].iter().map(|x| x.1).collect();
                        sub.sort_unstable();
                        next.push(sub);
                        start = k;
                    }
                }
            }
            let changed = next.len() != partition.len();
            partition = next;
            if !changed {
                return partition;
            }
        }
    }

    /// Upper-triangle adjacency bits, row-major, packed into words.
    fn adjacency_words(&self) -> Vec<u64> {
        let n = self.node_count();
        let mut words = Vec::new();
        let mut cur = 0u64;
        let mut used = 0;
        for a in 0..n {
            for b in a + 1..n {
                cur = (cur << 1) | self.has_edge(a, b) as u64;
                used += 1;
                if used == 64 {
                    words.push(cur);
                    cur = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            words.push(cur << (64 - used));
        }
        words
    }

    /// Canonical string key: `n<nodes>e<edges>-<hex adjacency>`.
    pub fn canonical_code(&self) -> String {
        let perm = self.canonical_permutation();
        let canon = self.permuted(&perm);
        let mut out = String::new();
        let _ = write!(out, "n{}e{}-", self.node_count(), self.edge_count());
        let n = self.node_count();
        let bits = n * n.saturating_sub(1) / 2;
        let words = canon.adjacency_words();
        let hex_digits = bits.div_ceil(4);
        let mut written = 0;
        for w in words {
            for shift in (0..16).rev() {
                if written == hex_digits {
                    break;
                }
                let _ = write!(out, "{:x}", (w >> (shift * 4)) & 0xf);
                written += 1;
            }
        }
        out
    }

    /// Isomorphism test through canonical codes.
    pub fn is_isomorphic(&self, other: &SmallGraph) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_code() == other.canonical_code()
    }
}

pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Distinct sorted sets, for comparing face collections.
pub fn sorted_sets(sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    sets.iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect()
}
