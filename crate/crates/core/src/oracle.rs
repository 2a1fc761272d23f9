//! Deliberately naive reference solvers used to check the real ones.
//!
//! Nothing here touches solver search code: only geometry and disk-graph
//! primitives. Keep it that way, or the cross-checks stop meaning anything.

use crate::disk_graph::{points_connected, Instance};
use crate::error::{Error, Result};
use crate::geometry::{Grid, Point, EPS};
use crate::mcr_solver::{CostModel, Mapping};

/// Largest assignment space `brute_force_mcr` agrees to enumerate.
pub const MAX_MCR_ASSIGNMENTS: u64 = 1_000_000;

/// Smallest number of grid points whose union with the terminals induces a
/// connected disk graph, trying every subset of size 0, 1, ..., `max_h`.
pub fn brute_force_min_steiner(
    instance: &Instance,
    candidates: &Grid,
    max_h: usize,
) -> Result<usize> {
    let pool = candidates.points();
    let mut points = instance.nodes().to_vec();
    let n = points.len();
    for k in 0..=max_h.min(pool.len()) {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            points.truncate(n);
            points.extend(pick.iter().map(|&i| pool[i]));
            if points_connected(&points, instance.range()) {
                return Ok(k);
            }
            if !next_combination(&mut pick, pool.len()) {
                break;
            }
        }
    }
    Err(Error::CapExceeded { max_h })
}

/// Advances `pick` to the next k-subset of `0..m` in lexicographic order.
fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < m - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Cheapest connected relocation found by enumerating every assignment of
/// nodes to candidate points. Candidates are the grid points followed by the
/// current positions of charged nodes that are off the grid. Ties keep the
/// first assignment in lexicographic (node id, candidate) order.
pub fn brute_force_mcr(
    instance: &Instance,
    cost: &CostModel,
    candidates: &Grid,
) -> Result<Mapping> {
    let mut pool = candidates.points();
    for id in 0..instance.len() {
        let p = instance.position(id);
        if cost.is_charged(id) && !pool.iter().any(|q| q.approx_eq(&p)) {
            pool.push(p);
        }
    }
    let n = instance.len();
    let m = pool.len();
    let space = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > MAX_MCR_ASSIGNMENTS as u128 {
        return Err(Error::BudgetExceeded {
            what: "brute-force assignments",
            needed: space,
            cap: MAX_MCR_ASSIGNMENTS,
        });
    }
    if n == 0 {
        return Ok(Mapping::identity(instance));
    }

    let mut digits = vec![0usize; n];
    let mut targets = vec![Point::default(); n];
    let mut best: Option<(f64, Vec<Point>)> = None;
    loop {
        for (v, &d) in digits.iter().enumerate() {
            targets[v] = pool[d];
        }
        if points_connected(&targets, instance.range()) {
            let total: f64 = (0..n).map(|v| cost.cost(instance, v, &targets[v])).sum();
            if best.as_ref().is_none_or(|(c, _)| total < c - EPS) {
                best = Some((total, targets.clone()));
            }
        }
        // Odometer with node 0 as the most significant digit.
        let mut v = n;
        loop {
            if v == 0 {
                let (_, targets) = best.expect("stacking all nodes is connected");
                return Mapping::priced(instance, cost, targets);
            }
            v -= 1;
            digits[v] += 1;
            if digits[v] < m {
                break;
            }
            digits[v] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(pts: &[(f64, f64)], r: f64) -> Instance {
        Instance::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), r).unwrap()
    }

    fn grid_of(i: &Instance, step: f64) -> Grid {
        Grid::covering(&i.bounding_box().unwrap(), step).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut pick = vec![0, 1];
        let mut seen = vec![pick.clone()];
        while next_combination(&mut pick, 4) {
            seen.push(pick.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn min_steiner_examples() {
        let two = inst(&[(0.0, 0.0), (2.0, 0.0)], 1.0);
        assert_eq!(brute_force_min_steiner(&two, &grid_of(&two, 1.0), 5), Ok(1));
        let joined = inst(&[(0.0, 0.0), (0.6, 0.6)], 1.0);
        assert_eq!(
            brute_force_min_steiner(&joined, &grid_of(&joined, 0.5), 5),
            Ok(0)
        );
        let far = inst(&[(0.0, 0.0), (3.5, 0.0)], 1.0);
        assert_eq!(brute_force_min_steiner(&far, &grid_of(&far, 0.5), 5), Ok(3));
        assert_eq!(
            brute_force_min_steiner(&far, &grid_of(&far, 0.5), 2),
            Err(Error::CapExceeded { max_h: 2 })
        );
    }

    #[test]
    fn mcr_examples() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0)], 1.0);
        let m = brute_force_mcr(&i, &CostModel::euclidean(0..2), &grid_of(&i, 1.0)).unwrap();
        assert!((m.total_cost - 1.0).abs() < 1e-12);

        let joined = inst(&[(0.0, 0.0), (0.5, 0.2)], 1.0);
        let m =
            brute_force_mcr(&joined, &CostModel::euclidean(0..2), &grid_of(&joined, 0.5)).unwrap();
        assert_eq!(m.total_cost, 0.0);
        assert_eq!(m.targets, joined.nodes());

        // One free node is enough to bridge the gap at zero cost.
        let with_free = inst(&[(0.0, 0.0), (0.0, 2.0), (0.0, 0.0)], 1.0);
        let g = grid_of(&with_free, 1.0);
        let m = brute_force_mcr(&with_free, &CostModel::indicator([0, 1]), &g).unwrap();
        assert_eq!(m.total_cost, 0.0);
        assert_eq!(m.targets[2], Point::new(0.0, 1.0));
    }

    #[test]
    fn mcr_refuses_huge_spaces() {
        let i = inst(&[(0.0, 0.0), (5.0, 0.0), (0.0, 5.0), (5.0, 5.0)], 1.0);
        let err = brute_force_mcr(&i, &CostModel::euclidean(0..4), &grid_of(&i, 0.5)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
