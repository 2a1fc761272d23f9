//! Movement-based connectivity restoration: relocate nodes so that the
//! unit-disk graph re-induced at the new positions is connected, at minimum
//! total movement cost.

mod exact;
mod heuristic;

use std::collections::BTreeSet;

use crate::disk_graph::{points_connected, Instance};
use crate::error::{Error, Result};
use crate::geometry::{distance, Point};

pub use exact::{solve_exact_grid, ExactMcrOptions};
pub use heuristic::{contract_to_centroid, solve_heuristic};

#[derive(Debug, Clone, PartialEq)]
pub enum CostKind {
    /// 1 for moving a charged node anywhere else, 0 for staying put.
    Indicator,
    /// Distance travelled.
    Euclidean,
    /// Distance travelled, scaled by a per-node factor indexed by id.
    PerNode(Vec<f64>),
}

/// Movement cost function over (node, target) pairs.
///
/// Only ids in the original set are charged; every other node is free to
/// move anywhere at zero cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    kind: CostKind,
    original_set: BTreeSet<usize>,
}

impl CostModel {
    pub fn new(kind: CostKind, original_set: impl IntoIterator<Item = usize>) -> Result<Self> {
        if let CostKind::PerNode(weights) = &kind {
            if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
                return Err(Error::InvalidParameter(format!(
                    "per-node cost factors must be finite and nonnegative, got {w}"
                )));
            }
        }
        Ok(CostModel {
            kind,
            original_set: original_set.into_iter().collect(),
        })
    }

    pub fn indicator(original_set: impl IntoIterator<Item = usize>) -> Self {
        CostModel {
            kind: CostKind::Indicator,
            original_set: original_set.into_iter().collect(),
        }
    }

    pub fn euclidean(original_set: impl IntoIterator<Item = usize>) -> Self {
        CostModel {
            kind: CostKind::Euclidean,
            original_set: original_set.into_iter().collect(),
        }
    }

    pub fn kind(&self) -> &CostKind {
        &self.kind
    }

    pub fn original_set(&self) -> &BTreeSet<usize> {
        &self.original_set
    }

    pub fn is_charged(&self, id: usize) -> bool {
        self.original_set.contains(&id)
    }

    /// Cost of moving node `id` of `instance` to `target`.
    pub fn cost(&self, instance: &Instance, id: usize, target: &Point) -> f64 {
        if !self.is_charged(id) {
            return 0.0;
        }
        let from = instance.position(id);
        match &self.kind {
            CostKind::Indicator => {
                if from.approx_eq(target) {
                    0.0
                } else {
                    1.0
                }
            }
            CostKind::Euclidean => distance(&from, target),
            CostKind::PerNode(weights) => {
                weights.get(id).copied().unwrap_or(1.0) * distance(&from, target)
            }
        }
    }
}

/// Relocation of every node, with its total cost under some cost model.
#[derive(Debug, Clone, PartialEq)]
pub struct Mapping {
    pub targets: Vec<Point>,
    pub total_cost: f64,
}

impl Mapping {
    /// Builds a mapping and prices it under `cost`.
    pub fn priced(instance: &Instance, cost: &CostModel, targets: Vec<Point>) -> Result<Self> {
        if targets.len() != instance.len() {
            return Err(Error::InvalidParameter(format!(
                "mapping has {} targets for {} nodes",
                targets.len(),
                instance.len()
            )));
        }
        if let Some(p) = targets.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite target {p}")));
        }
        let total_cost = sum_costs(instance, cost, &targets);
        Ok(Mapping {
            targets,
            total_cost,
        })
    }

    pub fn identity(instance: &Instance) -> Self {
        Mapping {
            targets: instance.nodes().to_vec(),
            total_cost: 0.0,
        }
    }

    /// Ids whose target differs from their current position.
    pub fn moved(&self, instance: &Instance) -> Vec<usize> {
        (0..instance.len())
            .filter(|&id| !instance.position(id).approx_eq(&self.targets[id]))
            .collect()
    }
}

fn sum_costs(instance: &Instance, cost: &CostModel, targets: &[Point]) -> f64 {
    targets
        .iter()
        .enumerate()
        .map(|(id, p)| cost.cost(instance, id, p))
        .sum()
}

/// Recomputes the objective of `mapping` from scratch.
pub fn total_cost(instance: &Instance, cost: &CostModel, mapping: &Mapping) -> f64 {
    sum_costs(instance, cost, &mapping.targets)
}

/// True iff the disk graph re-induced at the mapped positions is connected.
pub fn verify_mapping(instance: &Instance, mapping: &Mapping) -> bool {
    mapping.targets.len() == instance.len() && points_connected(&mapping.targets, instance.range())
}

/// Charged nodes that the mapping relocates. Under the indicator model this
/// is exactly the total cost.
pub fn moved_originals(instance: &Instance, cost: &CostModel, mapping: &Mapping) -> usize {
    mapping
        .moved(instance)
        .into_iter()
        .filter(|&id| cost.is_charged(id))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(pts: &[(f64, f64)], r: f64) -> Instance {
        Instance::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), r).unwrap()
    }

    #[test]
    fn total_cost_examples() {
        let i = inst(&[(0.0, 0.0), (0.0, 3.0)], 1.0);
        let id = Mapping::identity(&i);
        assert_eq!(total_cost(&i, &CostModel::euclidean(0..2), &id), 0.0);
        assert_eq!(total_cost(&i, &CostModel::indicator(0..2), &id), 0.0);
        let m = Mapping::priced(
            &i,
            &CostModel::euclidean(0..2),
            vec![Point::new(0.0, 1.0), Point::new(0.0, 2.0)],
        )
        .unwrap();
        assert_eq!(m.total_cost, 2.0);
        assert_eq!(total_cost(&i, &CostModel::indicator(0..2), &m), 2.0);
    }

    #[test]
    fn verify_examples() {
        let i = inst(&[(0.0, 0.0), (0.0, 3.0)], 1.0);
        let m = Mapping::priced(
            &i,
            &CostModel::euclidean(0..2),
            vec![Point::new(0.0, 1.0), Point::new(0.0, 2.0)],
        )
        .unwrap();
        assert!(verify_mapping(&i, &m));
        assert!(!verify_mapping(&i, &Mapping::identity(&i)));
        let stacked = Mapping {
            targets: vec![Point::new(7.0, 7.0); 2],
            total_cost: 0.0,
        };
        assert!(verify_mapping(&i, &stacked));
    }

    #[test]
    fn free_nodes_cost_nothing() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0), (5.0, 5.0)], 1.0);
        let c = CostModel::indicator([0, 1]);
        assert_eq!(c.cost(&i, 2, &Point::new(-9.0, 4.0)), 0.0);
        assert_eq!(c.cost(&i, 1, &Point::new(0.0, 2.0)), 0.0);
        assert_eq!(c.cost(&i, 1, &Point::new(0.0, 2.5)), 1.0);
        let e = CostModel::euclidean([0]);
        assert_eq!(e.cost(&i, 1, &Point::new(0.0, 9.0)), 0.0);
    }

    #[test]
    fn per_node_factors() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0)], 1.0);
        let c = CostModel::new(CostKind::PerNode(vec![2.0, 0.5]), 0..2).unwrap();
        assert_eq!(c.cost(&i, 0, &Point::new(3.0, 4.0)), 10.0);
        assert_eq!(c.cost(&i, 1, &Point::new(0.0, 0.0)), 1.0);
        assert!(CostModel::new(CostKind::PerNode(vec![-1.0]), [0]).is_err());
        assert!(CostModel::new(CostKind::PerNode(vec![f64::NAN]), [0]).is_err());
    }

    #[test]
    fn indicator_cost_counts_moved_originals() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0), (9.0, 9.0)], 1.0);
        let c = CostModel::indicator([0, 1]);
        let m = Mapping::priced(
            &i,
            &c,
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(0.0, 0.5),
            ],
        )
        .unwrap();
        assert_eq!(m.total_cost, 1.0);
        assert_eq!(moved_originals(&i, &c, &m), 1);
        assert_eq!(m.moved(&i), vec![1, 2]);
    }

    #[test]
    fn priced_rejects_short_mappings() {
        let i = inst(&[(0.0, 0.0), (0.0, 2.0)], 1.0);
        assert!(Mapping::priced(&i, &CostModel::euclidean(0..2), vec![Point::default()]).is_err());
    }
}
