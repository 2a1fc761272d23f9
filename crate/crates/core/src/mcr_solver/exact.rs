use crate::bridge::DistTable;
use crate::disk_graph::Instance;
use crate::error::{Error, Result};
use crate::geometry::{Grid, Point, EPS};

use super::{CostModel, Mapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactMcrOptions {
    /// Cap on the number of partial assignments the search may visit.
    pub max_nodes: u64,
}

impl Default for ExactMcrOptions {
    fn default() -> Self {
        ExactMcrOptions {
            max_nodes: 10_000_000,
        }
    }
}

/// Target positions available to the exact solver: the grid in enumeration
/// order, then the current position of every charged node (by id) that is not
/// already a grid point.
pub fn candidate_positions(instance: &Instance, cost: &CostModel, grid: &Grid) -> Vec<Point> {
    let mut out = grid.points();
    for id in 0..instance.len() {
        if !cost.is_charged(id) {
            continue;
        }
        let p = instance.position(id);
        if grid.index_of(&p).is_none() && !out[grid.len()..].iter().any(|q| q.approx_eq(&p)) {
            out.push(p);
        }
    }
    out
}

/// Exact minimum-cost relocation with targets restricted to the grid (plus
/// the charged nodes' current positions).
///
/// Depth-first branch and bound over nodes in id order. Each node tries its
/// own position first (when charged) and then the candidates in order, so the
/// search walks assignments in lexicographic order and keeps the first
/// optimum it meets. Branches are cut when the cost lower bound cannot beat
/// the incumbent, or when the placed nodes leave gaps wider than the
/// remaining nodes could bridge. Interchangeable nodes are forced into
/// nondecreasing order.
pub fn solve_exact_grid(
    instance: &Instance,
    cost: &CostModel,
    candidates: &Grid,
    options: &ExactMcrOptions,
) -> Result<Mapping> {
    let n = instance.len();
    if n == 0 {
        return Ok(Mapping::identity(instance));
    }
    let positions = candidate_positions(instance, cost, candidates);
    let m = positions.len();
    let table = DistTable::new(&positions, instance.range());

    let costs: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            positions
                .iter()
                .map(|p| cost.cost(instance, v, p))
                .collect()
        })
        .collect();

    let domains: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if !cost.is_charged(v) {
                return (0..m).collect();
            }
            let home = positions
                .iter()
                .position(|p| p.approx_eq(&instance.position(v)))
                .expect("charged positions are always candidates");
            std::iter::once(home)
                .chain((0..m).filter(|&c| c != home))
                .collect()
        })
        .collect();

    let twin_of: Vec<Option<usize>> = (0..n)
        .map(|v| {
            (0..v)
                .rev()
                .find(|&u| domains[u] == domains[v] && costs[u] == costs[v])
        })
        .collect();

    let in_order: Vec<bool> = domains
        .iter()
        .map(|d| d.iter().enumerate().all(|(rank, &c)| rank == c))
        .collect();

    let mut floor_after = vec![0.0; n + 1];
    for v in (0..n).rev() {
        let cheapest = costs[v].iter().copied().fold(f64::INFINITY, f64::min);
        floor_after[v] = floor_after[v + 1] + cheapest;
    }

    // Stacking every node on one candidate is always connected.
    let upper = (0..m)
        .map(|c| (0..n).map(|v| costs[v][c]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);

    let mut search = Search {
        table: &table,
        costs: &costs,
        domains: &domains,
        twin_of: &twin_of,
        in_order: &in_order,
        floor_after: &floor_after,
        max_nodes: options.max_nodes,
        visited: 0,
        best_cost: upper,
        best: None,
        ranks: Vec::with_capacity(n),
        members: Vec::with_capacity(n),
    };
    search.descend(0.0)?;
    let ranks = search
        .best
        .expect("the stacked assignment is always reachable");
    let targets = ranks
        .iter()
        .enumerate()
        .map(|(v, &rank)| positions[domains[v][rank]])
        .collect();
    Mapping::priced(instance, cost, targets)
}

struct Search<'a> {
    table: &'a DistTable,
    costs: &'a [Vec<f64>],
    domains: &'a [Vec<usize>],
    twin_of: &'a [Option<usize>],
    /// Domain is the candidates in index order.
    in_order: &'a [bool],
    floor_after: &'a [f64],
    max_nodes: u64,
    visited: u64,
    best_cost: f64,
    best: Option<Vec<usize>>,
    /// Chosen rank within each assigned node's domain.
    ranks: Vec<usize>,
    /// Candidate index of each assigned node.
    members: Vec<usize>,
}

impl Search<'_> {
    /// Whether a subtree whose completions all cost at least `bound` can be
    /// skipped. Once an incumbent exists, later subtrees are lexicographically
    /// larger and can only replace it by being strictly cheaper.
    fn hopeless(&self, bound: f64) -> bool {
        if self.best.is_some() {
            bound >= self.best_cost - EPS
        } else {
            bound > self.best_cost + EPS
        }
    }

    /// Lowest candidate index any unassigned node may still take. Only nodes
    /// whose domain is plain candidate order are bounded by their assigned
    /// twin; any other unassigned node can go anywhere.
    fn future_from(&self, depth: usize) -> usize {
        let mut from = usize::MAX;
        for v in depth..self.costs.len() {
            if !self.in_order[v] {
                return 0;
            }
            let mut twin = self.twin_of[v];
            while let Some(u) = twin {
                if u < depth {
                    break;
                }
                twin = self.twin_of[u];
            }
            let start = twin.map_or(0, |u| self.domains[u][self.ranks[u]]);
            from = from.min(start);
            if from == 0 {
                break;
            }
        }
        from
    }

    fn descend(&mut self, spent: f64) -> Result<()> {
        self.visited += 1;
        if self.visited > self.max_nodes {
            return Err(Error::BudgetExceeded {
                what: "movement assignments",
                needed: self.visited as u128,
                cap: self.max_nodes,
            });
        }
        let depth = self.ranks.len();
        let total = self.costs.len();
        let gaps = self
            .table
            .relays_needed(&self.members, self.future_from(depth));
        if depth == total {
            if gaps == 0 && !self.hopeless(spent) {
                self.best_cost = spent;
                self.best = Some(self.ranks.clone());
            }
            return Ok(());
        }
        if gaps > total - depth {
            return Ok(());
        }
        let v = depth;
        let first_rank = self.twin_of[v].map_or(0, |u| self.ranks[u]);
        for rank in first_rank..self.domains[v].len() {
            let c = self.domains[v][rank];
            let after = spent + self.costs[v][c];
            if self.hopeless(after + self.floor_after[v + 1]) {
                continue;
            }
            self.ranks.push(rank);
            self.members.push(c);
            let outcome = self.descend(after);
            self.members.pop();
            self.ranks.pop();
            outcome?;
        }
        Ok(())
    }
}
