//! Connectivity restoration for unit-disk networks.
//!
//! Two ways to reconnect a partitioned network whose nodes share a common
//! communication range:
//!
//! - add relays: [`st_solver`] places the fewest extra points so that the
//!   disk graph on nodes plus relays is connected;
//! - move nodes: [`mcr_solver`] relocates existing nodes at minimum total
//!   movement cost so that the re-induced disk graph is connected.
//!
//! [`reduction`] solves the first problem by repeatedly calling an exact
//! solver for the second, and [`oracle`] holds brute-force references that
//! the exact solvers and the reduction are checked against.

mod bridge;
pub mod disk_graph;
pub mod error;
pub mod geometry;
pub mod instance_io;
pub mod mcr_solver;
pub mod oracle;
pub mod reduction;
pub mod st_solver;

pub use disk_graph::{DiskGraph, Instance};
pub use error::{Error, Result};
pub use geometry::{distance, BoundingBox, Grid, Point, EPS};
pub use mcr_solver::{CostKind, CostModel, Mapping};
pub use st_solver::{SteinerMethod, SteinerSolution};
