//! Unit-disk communication graphs: two nodes are linked iff their distance is
//! at most the common range (with [`EPS`] slack on the boundary).

use crate::error::{Error, Result};
use crate::geometry::{distance, BoundingBox, Point, EPS};

/// Node positions plus the common communication range.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    nodes: Vec<Point>,
    range: f64,
}

impl Instance {
    pub fn new(nodes: Vec<Point>, range: f64) -> Result<Self> {
        if !(range.is_finite() && range > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "range must be positive and finite, got {range}"
            )));
        }
        if let Some((id, p)) = nodes.iter().enumerate().find(|(_, p)| !p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "node {id} has a non-finite position {p}"
            )));
        }
        Ok(Instance { nodes, range })
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn position(&self, id: usize) -> Point {
        self.nodes[id]
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bounding_box(&self) -> Option<BoundingBox> {
        BoundingBox::of_points(&self.nodes)
    }

    /// Same range, different positions (ids preserved).
    pub fn with_nodes(&self, nodes: Vec<Point>) -> Result<Self> {
        Instance::new(nodes, self.range)
    }
}

#[inline]
pub fn within_range(p: &Point, q: &Point, range: f64) -> bool {
    distance(p, q) <= range + EPS
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub(crate) fn sets(&self) -> usize {
        self.sets
    }
}

/// Graph induced on an instance by the range threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGraph {
    instance: Instance,
    edges: Vec<(usize, usize)>,
}

impl DiskGraph {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn node_count(&self) -> usize {
        self.instance.len()
    }
}

pub fn induce(instance: &Instance) -> DiskGraph {
    let nodes = instance.nodes();
    let mut edges = Vec::new();
    for u in 0..nodes.len() {
        for v in u + 1..nodes.len() {
            if within_range(&nodes[u], &nodes[v], instance.range()) {
                edges.push((u, v));
            }
        }
    }
    DiskGraph {
        instance: instance.clone(),
        edges,
    }
}

/// Empty and single-node graphs count as connected.
pub fn is_connected(graph: &DiskGraph) -> bool {
    let mut uf = UnionFind::new(graph.node_count());
    for &(u, v) in graph.edges() {
        uf.union(u, v);
    }
    uf.sets() <= 1
}

/// Connected components, each sorted ascending, ordered by smallest member.
pub fn components(graph: &DiskGraph) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in graph.edges() {
        uf.union(u, v);
    }
    let mut block_of_root = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for id in 0..n {
        let root = uf.find(id);
        if block_of_root[root] == usize::MAX {
            block_of_root[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[root]].push(id);
    }
    blocks
}

/// Connectivity of the disk graph on `points` without materializing edges.
pub fn points_connected(points: &[Point], range: f64) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(points.len());
    for u in 0..points.len() {
        for v in u + 1..points.len() {
            if within_range(&points[u], &points[v], range) && uf.union(u, v) && uf.sets() == 1 {
                return true;
            }
        }
    }
    uf.sets() <= 1
}

/// Minimum spanning tree of the complete Euclidean graph (Kruskal).
///
/// Ties between equal lengths go to the lexicographically smaller id pair,
/// so the output is deterministic. Edges come back as `(u, v)` with `u < v`
/// in the order Kruskal accepted them.
pub fn euclidean_mst(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((distance(&points[u], &points[v]), u, v));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (_, u, v) in pairs {
        if uf.union(u, v) {
            tree.push((u, v));
            if tree.len() + 1 == n {
                break;
            }
        }
    }
    tree
}

pub fn tree_length(points: &[Point], edges: &[(usize, usize)]) -> f64 {
    edges
        .iter()
        .map(|&(u, v)| distance(&points[u], &points[v]))
        .sum()
}
