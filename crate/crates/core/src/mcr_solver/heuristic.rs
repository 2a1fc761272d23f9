use std::collections::BTreeSet;

use crate::disk_graph::{euclidean_mst, points_connected, Instance};
use crate::geometry::{centroid, distance, Point};
use crate::st_solver::relay_segments;

use super::{CostModel, Mapping};

/// Fraction of the remaining distance to the centroid covered per round.
const CONTRACTION_STEP: f64 = 0.1;
const MAX_CONTRACTION_ROUNDS: usize = 10_000;

/// Practical relocation for instances too large for the exact search.
///
/// Lays out the Steinerized MST of the current positions as a tree of slots
/// (terminals plus subdivision points, adjacent slots within range). For each
/// terminal as root it grows a subtree of exactly `|V|` slots, preferring
/// slots close to some node, and fills it by greedy cheapest (node, slot)
/// pairing. Any connected subtree yields a connected placement, so every
/// candidate is feasible; the cheapest one wins. Centroid contraction is kept
/// as a fallback.
pub fn solve_heuristic(instance: &Instance, cost: &CostModel) -> Mapping {
    let n = instance.len();
    if points_connected(instance.nodes(), instance.range()) {
        return Mapping::identity(instance);
    }
    let (slots, adjacency) = steinerized_tree(instance);
    let pull: Vec<f64> = slots
        .iter()
        .map(|s| {
            instance
                .nodes()
                .iter()
                .map(|p| distance(p, s))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let mut best: Option<Mapping> = None;
    for root in 0..n {
        let chosen = grow_subtree(root, n, &adjacency, &pull);
        let targets = assign_greedy(
            instance,
            cost,
            &chosen.iter().map(|&s| slots[s]).collect::<Vec<_>>(),
        );
        let Ok(mapping) = Mapping::priced(instance, cost, targets) else {
            continue;
        };
        if !points_connected(&mapping.targets, instance.range()) {
            continue;
        }
        if best
            .as_ref()
            .is_none_or(|b| mapping.total_cost < b.total_cost - crate::geometry::EPS)
        {
            best = Some(mapping);
        }
    }
    best.unwrap_or_else(|| contract_to_centroid(instance, cost))
}

/// Slots are the terminals (ids `0..n`) followed by subdivision points;
/// adjacency follows the subdivided MST edges.
fn steinerized_tree(instance: &Instance) -> (Vec<Point>, Vec<Vec<usize>>) {
    let nodes = instance.nodes();
    let mut slots = nodes.to_vec();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (u, v) in euclidean_mst(nodes) {
        let segments = relay_segments(distance(&nodes[u], &nodes[v]), instance.range());
        let mut prev = u;
        for i in 1..segments {
            let id = slots.len();
            slots.push(nodes[u].lerp(&nodes[v], i as f64 / segments as f64));
            adjacency.push(Vec::new());
            adjacency[prev].push(id);
            adjacency[id].push(prev);
            prev = id;
        }
        adjacency[prev].push(v);
        adjacency[v].push(prev);
    }
    (slots, adjacency)
}

fn grow_subtree(root: usize, size: usize, adjacency: &[Vec<usize>], pull: &[f64]) -> Vec<usize> {
    let mut chosen = vec![root];
    let mut inside = vec![false; adjacency.len()];
    inside[root] = true;
    let mut frontier: BTreeSet<usize> = adjacency[root].iter().copied().collect();
    while chosen.len() < size {
        let next = frontier
            .iter()
            .copied()
            .min_by(|&a, &b| pull[a].total_cmp(&pull[b]).then(a.cmp(&b)))
            .expect("a tree with at least `size` slots keeps a frontier");
        frontier.remove(&next);
        inside[next] = true;
        chosen.push(next);
        frontier.extend(adjacency[next].iter().copied().filter(|&s| !inside[s]));
    }
    chosen
}

/// Pairs nodes with slots cheapest-first (ties: shorter move, then ids).
fn assign_greedy(instance: &Instance, cost: &CostModel, slots: &[Point]) -> Vec<Point> {
    let n = instance.len();
    let mut pairs: Vec<(f64, f64, usize, usize)> = Vec::with_capacity(n * slots.len());
    for v in 0..n {
        for (s, p) in slots.iter().enumerate() {
            pairs.push((
                cost.cost(instance, v, p),
                distance(&instance.position(v), p),
                v,
                s,
            ));
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then((a.2, a.3).cmp(&(b.2, b.3)))
    });
    let mut targets: Vec<Option<Point>> = vec![None; n];
    let mut taken = vec![false; slots.len()];
    for (_, _, v, s) in pairs {
        if targets[v].is_none() && !taken[s] {
            targets[v] = Some(slots[s]);
            taken[s] = true;
        }
    }
    targets
        .into_iter()
        .map(|t| t.expect("as many slots as nodes"))
        .collect()
}

/// Moves every node a fixed fraction of the way to the centroid, round after
/// round, until the disk graph is connected.
pub fn contract_to_centroid(instance: &Instance, cost: &CostModel) -> Mapping {
    let Some(center) = centroid(instance.nodes()) else {
        return Mapping::identity(instance);
    };
    let mut targets = instance.nodes().to_vec();
    let mut rounds = 0;
    while !points_connected(&targets, instance.range()) {
        if rounds == MAX_CONTRACTION_ROUNDS {
            targets.iter_mut().for_each(|p| *p = center);
            break;
        }
        for p in targets.iter_mut() {
            *p = p.lerp(&center, CONTRACTION_STEP);
        }
        rounds += 1;
    }
    Mapping::priced(instance, cost, targets).expect("one target per node")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcr_solver::{total_cost, verify_mapping};

    fn inst(pts: &[(f64, f64)], r: f64) -> Instance {
        Instance::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), r).unwrap()
    }

    #[test]
    fn connected_input_is_left_alone() {
        let i = inst(&[(0.0, 0.0), (0.5, 0.5)], 1.0);
        let m = solve_heuristic(&i, &CostModel::euclidean(0..2));
        assert_eq!(m, Mapping::identity(&i));
    }

    #[test]
    fn two_nodes_meet_the_bound() {
        let i = inst(&[(0.0, 0.0), (0.0, 3.0)], 1.0);
        let c = CostModel::euclidean(0..2);
        let m = solve_heuristic(&i, &c);
        assert!(verify_mapping(&i, &m));
        assert!(m.total_cost >= 2.0 - 1e-9);
        assert!((m.total_cost - total_cost(&i, &c, &m)).abs() < 1e-9);
    }

    #[test]
    fn scattered_singletons_get_connected() {
        let i = inst(&[(0.0, 0.0), (10.0, 0.0), (5.0, 9.0)], 1.0);
        for c in [CostModel::euclidean(0..3), CostModel::indicator(0..3)] {
            let m = solve_heuristic(&i, &c);
            assert!(verify_mapping(&i, &m));
        }
    }

    #[test]
    fn contraction_terminates_connected() {
        let i = inst(&[(0.0, 0.0), (40.0, 0.0), (0.0, 40.0), (40.0, 40.0)], 1.0);
        let m = contract_to_centroid(&i, &CostModel::euclidean(0..4));
        assert!(verify_mapping(&i, &m));
        assert!(m.total_cost > 0.0);
    }
}
