//! Minimum Steiner placement computed through an exact movement solver.
//!
//! Free (zero-cost) auxiliary nodes are added one at a time and the movement
//! problem is re-solved under the indicator cost, until the optimum leaves
//! every original node in place. The auxiliary nodes' targets are then a
//! Steiner set, and their count is minimum whenever the movement solver is
//! exact over the same candidate space.

use std::fmt;

use crate::disk_graph::Instance;
use crate::error::{Error, Result};
use crate::geometry::{centroid, Grid, Point, EPS};
use crate::mcr_solver::{self, moved_originals, total_cost, CostModel, ExactMcrOptions, Mapping};
use crate::oracle::brute_force_min_steiner;
use crate::st_solver::{verify_solution, SteinerMethod, SteinerSolution};

/// An exact movement solver the reduction can call.
pub trait McrOracle {
    fn solve(&self, instance: &Instance, cost: &CostModel, candidates: &Grid) -> Result<Mapping>;
}

impl<F> McrOracle for F
where
    F: Fn(&Instance, &CostModel, &Grid) -> Result<Mapping>,
{
    fn solve(&self, instance: &Instance, cost: &CostModel, candidates: &Grid) -> Result<Mapping> {
        self(instance, cost, candidates)
    }
}

/// The branch-and-bound solver from [`mcr_solver`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactMcr(pub ExactMcrOptions);

impl McrOracle for ExactMcr {
    fn solve(&self, instance: &Instance, cost: &CostModel, candidates: &Grid) -> Result<Mapping> {
        mcr_solver::solve_exact_grid(instance, cost, candidates, &self.0)
    }
}

/// Covering bound `(floor(L / r) + 1)^2` on the loop count, where `L` is the
/// side of the instance's bounding square.
pub fn iteration_bound(instance: &Instance) -> u64 {
    let side = instance.bounding_box().map_or(0.0, |bb| bb.square_side());
    let per_axis = (side / instance.range() + EPS).floor() as u64 + 1;
    per_axis * per_axis
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub iteration: usize,
    pub auxiliary: usize,
    pub cost: f64,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "iteration={} aux={} cost={}",
            self.iteration, self.auxiliary, self.cost
        )
    }
}

/// Loop state after each oracle call.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionState {
    /// Starting positions of the auxiliary nodes added so far.
    pub auxiliary: Vec<Point>,
    pub iterations: usize,
    pub last_mapping: Mapping,
    /// Indicator cost of `last_mapping` over the original nodes.
    pub last_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub steiner_count: usize,
    /// Where the final mapping puts each auxiliary node.
    pub placements: Vec<Point>,
    pub trace: Vec<TraceEntry>,
    pub final_mapping: Mapping,
    pub final_cost: f64,
}

impl ReductionResult {
    pub fn as_solution(&self) -> SteinerSolution {
        SteinerSolution::new(self.placements.clone(), SteinerMethod::External)
    }
}

/// Runs the add-a-free-node-and-re-solve loop on `instance`.
///
/// Auxiliary nodes start at the centroid of the originals; under the
/// indicator cost they move for free, so the start position never affects
/// the optimum.
pub fn st_via_mcr(
    instance: &Instance,
    oracle: &dyn McrOracle,
    candidates: &Grid,
) -> Result<ReductionResult> {
    let originals = instance.len();
    let bound = iteration_bound(instance);
    let cost = CostModel::indicator(0..originals);
    let start = centroid(instance.nodes()).unwrap_or_default();

    let mut state = {
        let mapping = oracle.solve(instance, &cost, candidates)?;
        let charged = total_cost(instance, &cost, &mapping);
        ReductionState {
            auxiliary: Vec::new(),
            iterations: 0,
            last_mapping: mapping,
            last_cost: charged,
        }
    };
    let mut trace = vec![TraceEntry {
        iteration: 0,
        auxiliary: 0,
        cost: state.last_cost,
    }];
    let mut current = instance.clone();

    // Indicator costs are sums of 0s and 1s, so the comparison is exact.
    while state.last_cost > 0.0 {
        if state.iterations as u64 >= bound {
            return Err(Error::IterationCapExceeded { bound });
        }
        state.auxiliary.push(start);
        state.iterations += 1;
        let mut nodes = instance.nodes().to_vec();
        nodes.extend_from_slice(&state.auxiliary);
        current = instance.with_nodes(nodes)?;
        state.last_mapping = oracle.solve(&current, &cost, candidates)?;
        state.last_cost = total_cost(&current, &cost, &state.last_mapping);
        trace.push(TraceEntry {
            iteration: state.iterations,
            auxiliary: state.auxiliary.len(),
            cost: state.last_cost,
        });
    }
    debug_assert_eq!(moved_originals(&current, &cost, &state.last_mapping), 0);

    Ok(ReductionResult {
        steiner_count: state.auxiliary.len(),
        placements: state.last_mapping.targets[originals..].to_vec(),
        trace,
        final_cost: state.last_cost,
        final_mapping: state.last_mapping,
    })
}

/// Side-by-side comparison of the reduction and the brute-force Steiner
/// oracle on one instance and grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    pub reduction_count: usize,
    pub oracle_count: usize,
    pub equal: bool,
    /// The loop ended with indicator cost exactly zero.
    pub final_cost_zero: bool,
    /// No original node's final target differs from its position.
    pub originals_unmoved: bool,
    pub placements_feasible: bool,
    pub iterations_within_bound: bool,
    pub result: ReductionResult,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.equal
            && self.final_cost_zero
            && self.originals_unmoved
            && self.placements_feasible
            && self.iterations_within_bound
    }
}

pub fn verify_theorem1(
    instance: &Instance,
    candidates: &Grid,
    options: &ExactMcrOptions,
) -> Result<Theorem1Report> {
    let result = st_via_mcr(instance, &ExactMcr(*options), candidates)?;
    let bound = iteration_bound(instance);
    let oracle_count = brute_force_min_steiner(instance, candidates, bound as usize)?;
    let originals_unmoved = instance
        .nodes()
        .iter()
        .zip(&result.final_mapping.targets)
        .all(|(p, q)| p.approx_eq(q));
    Ok(Theorem1Report {
        reduction_count: result.steiner_count,
        oracle_count,
        equal: result.steiner_count == oracle_count,
        final_cost_zero: result.final_cost == 0.0,
        originals_unmoved,
        placements_feasible: verify_solution(instance, &result.as_solution()),
        iterations_within_bound: result.steiner_count as u64 <= bound,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_mcr;

    fn inst(pts: &[(f64, f64)], r: f64) -> Instance {
        Instance::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), r).unwrap()
    }

    fn grid_of(i: &Instance, step: f64) -> Grid {
        Grid::covering(&i.bounding_box().unwrap(), step).unwrap()
    }

    #[test]
    fn bound_examples() {
        let ten = inst(&[(0.0, 0.0), (10.0, 4.0)], 1.0);
        assert_eq!(iteration_bound(&ten), 121);
        assert_eq!(iteration_bound(&inst(&[(3.0, 3.0)], 1.0)), 1);
        assert_eq!(iteration_bound(&inst(&[(0.0, 0.0), (1.0, 3.0)], 1.5)), 9);
    }

    #[test]
    fn connected_input_never_enters_the_loop() {
        let i = inst(&[(0.0, 0.0)], 1.0);
        let r = st_via_mcr(&i, &ExactMcr::default(), &grid_of(&i, 0.5)).unwrap();
        assert_eq!(r.steiner_count, 0);
        assert_eq!(r.trace.len(), 1);
    }

    #[test]
    fn two_terminals_at_twice_range() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0)], 1.0);
        let r = st_via_mcr(&i, &ExactMcr::default(), &grid_of(&i, 1.0)).unwrap();
        assert_eq!(r.steiner_count, 1);
        assert_eq!(r.placements, vec![Point::new(0.0, 1.0)]);
        assert_eq!(r.final_cost, 0.0);
        assert_eq!(
            r.trace.iter().map(|t| t.cost).collect::<Vec<_>>(),
            vec![1.0, 0.0]
        );
    }

    #[test]
    fn matches_exact_steiner_on_the_same_grid() {
        let i = inst(&[(0.0, 0.0), (3.5, 0.0)], 1.0);
        let g = grid_of(&i, 0.5);
        let r = st_via_mcr(&i, &ExactMcr::default(), &g).unwrap();
        assert_eq!(r.steiner_count, 3);
        assert!(verify_solution(&i, &r.as_solution()));
    }

    #[test]
    fn works_with_the_brute_force_oracle_too() {
        let i = inst(&[(0.0, 0.0), (2.0, 0.0)], 1.0);
        let oracle = |i: &Instance, c: &CostModel, g: &Grid| brute_force_mcr(i, c, g);
        let r = st_via_mcr(&i, &oracle, &grid_of(&i, 1.0)).unwrap();
        assert_eq!(r.steiner_count, 1);
    }

    #[test]
    fn broken_oracle_hits_the_cap() {
        let i = inst(&[(0.0, 0.0), (2.0, 0.0)], 1.0);
        // Always claims an original had to move.
        let stubborn = |i: &Instance, c: &CostModel, _: &Grid| {
            let mut targets = i.nodes().to_vec();
            targets[0] = Point::new(-50.0, 0.0);
            Mapping::priced(i, c, targets)
        };
        let err = st_via_mcr(&i, &stubborn, &grid_of(&i, 1.0)).unwrap_err();
        assert_eq!(err, Error::IterationCapExceeded { bound: 9 });
    }

    #[test]
    fn equivalence_report_on_small_cases() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0)], 1.0);
        let rep = verify_theorem1(&i, &grid_of(&i, 1.0), &Default::default()).unwrap();
        assert_eq!((rep.reduction_count, rep.oracle_count), (1, 1));
        assert!(rep.holds());

        let joined = inst(&[(0.0, 0.0), (0.3, 0.9)], 1.0);
        let rep = verify_theorem1(&joined, &grid_of(&joined, 0.5), &Default::default()).unwrap();
        assert_eq!((rep.reduction_count, rep.oracle_count), (0, 0));
        assert!(rep.holds());
    }

    #[test]
    fn trace_display() {
        let t = TraceEntry {
            iteration: 2,
            auxiliary: 2,
            cost: 1.0,
        };
        assert_eq!(t.to_string(), "iteration=2 aux=2 cost=1");
    }
}
