//! Minimum Steiner-point placement with bounded edge length: add as few
//! relays as possible so the unit-disk graph on terminals plus relays is
//! connected.

use rayon::prelude::*;

use crate::bridge::{binomial, DistTable};
use crate::disk_graph::{euclidean_mst, points_connected, Instance, UnionFind};
use crate::error::{Error, Result};
use crate::geometry::{distance, Grid, Point, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SteinerMethod {
    ExactGrid,
    SteinerizedMst,
    /// Placements read back from a reduction run or a solution file.
    External,
}

impl SteinerMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SteinerMethod::ExactGrid => "exact-grid",
            SteinerMethod::SteinerizedMst => "steinerized-mst",
            SteinerMethod::External => "external",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinerSolution {
    pub steiner_points: Vec<Point>,
    pub method: SteinerMethod,
}

impl SteinerSolution {
    pub fn new(steiner_points: Vec<Point>, method: SteinerMethod) -> Self {
        SteinerSolution {
            steiner_points,
            method,
        }
    }

    /// Number of added points.
    pub fn count(&self) -> usize {
        self.steiner_points.len()
    }

    /// Terminals followed by the added points.
    pub fn all_points(&self, instance: &Instance) -> Vec<Point> {
        let mut pts = instance.nodes().to_vec();
        pts.extend_from_slice(&self.steiner_points);
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactStOptions {
    /// Largest number of candidate subsets a single cardinality level may span.
    pub max_subsets: u64,
    /// Worker threads for the per-level subset scan.
    pub jobs: usize,
}

impl Default for ExactStOptions {
    fn default() -> Self {
        ExactStOptions {
            max_subsets: 10_000_000,
            jobs: 1,
        }
    }
}

pub fn verify_solution(instance: &Instance, solution: &SteinerSolution) -> bool {
    points_connected(&solution.all_points(instance), instance.range())
}

/// Subdivides every Euclidean MST edge longer than the range into equal
/// segments of length at most the range.
pub fn steinerized_mst(instance: &Instance) -> SteinerSolution {
    let nodes = instance.nodes();
    let r = instance.range();
    let mut added = Vec::new();
    for (u, v) in euclidean_mst(nodes) {
        let len = distance(&nodes[u], &nodes[v]);
        let segments = relay_segments(len, r);
        for i in 1..segments {
            added.push(nodes[u].lerp(&nodes[v], i as f64 / segments as f64));
        }
    }
    SteinerSolution::new(added, SteinerMethod::SteinerizedMst)
}

/// Number of equal hops needed to span `len` with hops of at most `range`.
pub(crate) fn relay_segments(len: f64, range: f64) -> usize {
    if len <= range + EPS {
        1
    } else {
        ((len - EPS) / range).ceil() as usize
    }
}

/// Exact minimum-cardinality Steiner set restricted to the points of
/// `candidates`.
///
/// Cardinalities are tried in increasing order; at each level only grid
/// points within `k` hops' reach of some terminal are eligible, and partial
/// subsets whose components cannot be bridged by the remaining picks are cut.
/// The first feasible subset in lexicographic grid order is returned.
pub fn solve_exact_grid(
    instance: &Instance,
    candidates: &Grid,
    options: &ExactStOptions,
) -> Result<SteinerSolution> {
    let terminals = instance.nodes();
    let r = instance.range();
    if points_connected(terminals, r) {
        return Ok(SteinerSolution::new(Vec::new(), SteinerMethod::ExactGrid));
    }

    // A relay on top of a terminal never helps a minimal solution.
    let pool: Vec<Point> = candidates
        .points()
        .into_iter()
        .filter(|c| !terminals.iter().any(|t| t.approx_eq(c)))
        .collect();
    let n = terminals.len();
    let mut all = terminals.to_vec();
    all.extend_from_slice(&pool);
    let table = DistTable::new(&all, r);

    if !terminals_joined(&table, n, all.len()) {
        return Err(Error::Infeasible(format!(
            "grid of step {} cannot connect the terminals at range {}",
            candidates.step(),
            r
        )));
    }

    let pool_of: Vec<usize> = (n..all.len()).collect();
    for k in 1..=pool.len() {
        let reach = k as f64 * (r + EPS);
        let eligible: Vec<usize> = pool_of
            .iter()
            .copied()
            .filter(|&c| (0..n).any(|t| table.dist(t, c) <= reach))
            .collect();
        let subsets = binomial(eligible.len(), k);
        if subsets > options.max_subsets as u128 {
            return Err(Error::BudgetExceeded {
                what: "steiner subsets",
                needed: subsets,
                cap: options.max_subsets,
            });
        }
        let search = LevelSearch {
            table: &table,
            terminals: n,
            eligible: &eligible,
            k,
        };
        if let Some(chosen) = search.run(options.jobs) {
            let pts = chosen.into_iter().map(|i| all[i]).collect();
            return Ok(SteinerSolution::new(pts, SteinerMethod::ExactGrid));
        }
    }
    unreachable!("the full candidate pool connects the terminals")
}

fn terminals_joined(table: &DistTable, terminals: usize, total: usize) -> bool {
    let mut uf = UnionFind::new(total);
    for i in 0..total {
        for j in i + 1..total {
            if table.linked(i, j) {
                uf.union(i, j);
            }
        }
    }
    let root = uf.find(0);
    (1..terminals).all(|t| uf.find(t) == root)
}

struct LevelSearch<'a> {
    table: &'a DistTable,
    terminals: usize,
    eligible: &'a [usize],
    k: usize,
}

impl LevelSearch<'_> {
    fn run(&self, jobs: usize) -> Option<Vec<usize>> {
        let firsts = self.eligible.len().saturating_sub(self.k - 1);
        if jobs <= 1 {
            return (0..firsts).find_map(|first| self.starting_with(first));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        // find_map_first keeps the lowest-indexed hit, so the answer does not
        // depend on scheduling.
        pool.install(|| {
            (0..firsts)
                .into_par_iter()
                .find_map_first(|first| self.starting_with(first))
        })
    }

    fn starting_with(&self, first: usize) -> Option<Vec<usize>> {
        let mut members: Vec<usize> = (0..self.terminals).collect();
        members.push(self.eligible[first]);
        if self.dfs(&mut members, first + 1) {
            Some(members.split_off(self.terminals))
        } else {
            None
        }
    }

    fn dfs(&self, members: &mut Vec<usize>, next: usize) -> bool {
        let placed = members.len() - self.terminals;
        let left = self.k - placed;
        let future_from = self.eligible.get(next).copied().unwrap_or(usize::MAX);
        let needed = self.table.relays_needed(members, future_from);
        if left == 0 {
            return needed == 0;
        }
        if needed > left {
            return false;
        }
        let last_start = self.eligible.len() - left;
        for pos in next..=last_start {
            members.push(self.eligible[pos]);
            if self.dfs(members, pos + 1) {
                return true;
            }
            members.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(pts: &[(f64, f64)], r: f64) -> Instance {
        Instance::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), r).unwrap()
    }

    fn covering(instance: &Instance, step: f64) -> Grid {
        Grid::covering(&instance.bounding_box().unwrap(), step).unwrap()
    }

    #[test]
    fn two_terminals_at_twice_range() {
        let i = inst(&[(0.0, 0.0), (2.0, 0.0)], 1.0);
        let s = solve_exact_grid(&i, &covering(&i, 1.0), &ExactStOptions::default()).unwrap();
        assert_eq!(s.steiner_points, vec![Point::new(1.0, 0.0)]);
        assert!(verify_solution(&i, &s));
    }

    #[test]
    fn single_terminal_needs_nothing() {
        let i = inst(&[(0.0, 0.0)], 1.0);
        let s = solve_exact_grid(&i, &covering(&i, 0.5), &ExactStOptions::default()).unwrap();
        assert_eq!(s.count(), 0);
    }

    #[test]
    fn three_and_a_half_ranges_need_three() {
        let i = inst(&[(0.0, 0.0), (3.5, 0.0)], 1.0);
        let s = solve_exact_grid(&i, &covering(&i, 0.5), &ExactStOptions::default()).unwrap();
        assert_eq!(s.count(), 3);
        assert!(verify_solution(&i, &s));
    }

    #[test]
    fn equilateral_triangle_uses_circumcenter() {
        let i = inst(&[(0.0, 0.0), (1.7320508, 0.0), (0.8660254, 1.5)], 1.0);
        let g = Grid::new(Point::new(0.0, 0.5 - 0.8660254), 0.8660254, 3, 3).unwrap();
        assert!(g.index_of(&Point::new(0.8660254, 0.5)).is_some());
        let s = solve_exact_grid(&i, &g, &ExactStOptions::default()).unwrap();
        assert_eq!(s.steiner_points, vec![Point::new(0.8660254, 0.5)]);
    }

    #[test]
    fn coarse_grid_is_infeasible() {
        let i = inst(&[(0.0, 0.0), (5.0, 0.0)], 1.0);
        let g = Grid::new(Point::new(0.0, 0.0), 2.5, 3, 1).unwrap();
        assert!(matches!(
            solve_exact_grid(&i, &g, &ExactStOptions::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let i = inst(&[(0.0, 0.0), (6.0, 0.0), (0.0, 6.0), (6.0, 6.0)], 1.0);
        let opts = ExactStOptions {
            max_subsets: 1000,
            jobs: 1,
        };
        let err = solve_exact_grid(&i, &covering(&i, 0.5), &opts).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 1000, .. }));
        assert!(err.is_budget());
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let i = inst(&[(0.0, 0.0), (2.6, 0.4), (1.1, 2.9)], 1.0);
        let g = covering(&i, 0.5);
        let seq = solve_exact_grid(&i, &g, &ExactStOptions::default()).unwrap();
        let par = solve_exact_grid(
            &i,
            &g,
            &ExactStOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn steinerized_examples() {
        let two = inst(&[(0.0, 0.0), (2.0, 0.0)], 1.0);
        assert_eq!(
            steinerized_mst(&two).steiner_points,
            vec![Point::new(1.0, 0.0)]
        );

        let joined = inst(&[(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)], 1.0);
        assert_eq!(steinerized_mst(&joined).count(), 0);

        let legs = inst(&[(0.0, 0.0), (0.0, 2.2), (2.2, 0.0)], 1.0);
        let s = steinerized_mst(&legs);
        assert_eq!(s.count(), 4);
        assert!(verify_solution(&legs, &s));
    }

    #[test]
    fn verify_examples() {
        let i = inst(&[(0.0, 0.0), (3.0, 0.0)], 1.0);
        let partial = SteinerSolution::new(vec![Point::new(1.0, 0.0)], SteinerMethod::External);
        assert!(!verify_solution(&i, &partial));
        let connected = inst(&[(0.0, 0.0), (1.0, 0.0)], 1.0);
        let empty = SteinerSolution::new(vec![], SteinerMethod::External);
        assert!(verify_solution(&connected, &empty));
    }

    #[test]
    fn two_terminal_closed_form_on_aligned_grids() {
        for &d in &[0.5, 1.0, 1.5, 2.0, 2.5, 3.7, 4.2] {
            let i = inst(&[(0.0, 0.0), (d, 0.0)], 1.0);
            let hops = relay_segments(d, 1.0);
            let g = Grid::new(
                Point::new(0.0, -d / hops as f64),
                d / hops as f64,
                hops + 1,
                3,
            )
            .unwrap();
            let s = solve_exact_grid(&i, &g, &ExactStOptions::default()).unwrap();
            let expected = ((d / 1.0f64).ceil() as usize).saturating_sub(1);
            assert_eq!(s.count(), expected, "d = {d}");
        }
    }
}
