//! Search support shared by the exact solvers (never by the oracles): a dense
//! distance table over a fixed position list and a lower bound on how many
//! extra relays a partial placement still needs.

use crate::disk_graph::UnionFind;
use crate::geometry::{distance, Point, EPS};

/// Pairwise distances and adjacency over a fixed list of positions.
pub(crate) struct DistTable {
    n: usize,
    range: f64,
    dist: Vec<f64>,
    linked: Vec<bool>,
    /// Highest index linked to each position, other than itself.
    last_neighbor: Vec<Option<usize>>,
}

impl DistTable {
    pub(crate) fn new(points: &[Point], range: f64) -> Self {
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        let mut linked = vec![true; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = distance(&points[i], &points[j]);
                let l = d <= range + EPS;
                dist[i * n + j] = d;
                dist[j * n + i] = d;
                linked[i * n + j] = l;
                linked[j * n + i] = l;
            }
        }
        let last_neighbor = (0..n)
            .map(|i| (0..n).rev().find(|&j| j != i && linked[i * n + j]))
            .collect();
        DistTable {
            n,
            range,
            dist,
            linked,
            last_neighbor,
        }
    }

    #[inline]
    pub(crate) fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    #[inline]
    pub(crate) fn linked(&self, i: usize, j: usize) -> bool {
        self.linked[i * self.n + j]
    }

    /// Smallest number of additional relays that could possibly connect the
    /// disk graph on `members`, when every further relay sits at a position
    /// index of at least `future_from`. Returns `usize::MAX` when some
    /// component has no such position within range.
    ///
    /// Components are joined by a minimum spanning tree on inter-component
    /// distance; its longest edge D is the minimum crossing distance of some
    /// cut, and crossing a gap of D takes at least ceil(D / r) - 1 relays.
    pub(crate) fn relays_needed(&self, members: &[usize], future_from: usize) -> usize {
        let s = members.len();
        if s <= 1 {
            return 0;
        }
        let mut uf = UnionFind::new(s);
        for a in 0..s {
            for b in a + 1..s {
                if self.linked(members[a], members[b]) {
                    uf.union(a, b);
                }
            }
        }
        if uf.sets() == 1 {
            return 0;
        }
        let mut comp = vec![0usize; s];
        let mut root_to_comp = vec![usize::MAX; s];
        let mut count = 0;
        for (a, slot) in comp.iter_mut().enumerate() {
            let root = uf.find(a);
            if root_to_comp[root] == usize::MAX {
                root_to_comp[root] = count;
                count += 1;
            }
            *slot = root_to_comp[root];
        }
        let mut reachable = vec![false; count];
        for a in 0..s {
            if self.last_neighbor[members[a]].is_some_and(|q| q >= future_from) {
                reachable[comp[a]] = true;
            }
        }
        if reachable.contains(&false) {
            return usize::MAX;
        }
        let mut gap = vec![f64::INFINITY; count * count];
        for a in 0..s {
            for b in a + 1..s {
                let (ca, cb) = (comp[a], comp[b]);
                if ca != cb {
                    let d = self.dist(members[a], members[b]);
                    if d < gap[ca * count + cb] {
                        gap[ca * count + cb] = d;
                        gap[cb * count + ca] = d;
                    }
                }
            }
        }
        // Prim over components, tracking the bottleneck edge.
        let mut in_tree = vec![false; count];
        let mut best = vec![f64::INFINITY; count];
        in_tree[0] = true;
        best[1..count].copy_from_slice(&gap[1..count]);
        let mut bottleneck: f64 = 0.0;
        for _ in 1..count {
            let mut next = usize::MAX;
            for c in 0..count {
                if !in_tree[c] && (next == usize::MAX || best[c] < best[next]) {
                    next = c;
                }
            }
            bottleneck = bottleneck.max(best[next]);
            in_tree[next] = true;
            for c in 0..count {
                if !in_tree[c] {
                    best[c] = best[c].min(gap[next * count + c]);
                }
            }
        }
        let hops = (bottleneck / self.range - 1e-6).ceil();
        (hops as usize).saturating_sub(1)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
