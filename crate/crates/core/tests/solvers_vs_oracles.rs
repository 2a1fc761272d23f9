use conrest_core::disk_graph::points_connected;
use conrest_core::mcr_solver::{self, verify_mapping, CostModel};
use conrest_core::oracle::{brute_force_mcr, brute_force_min_steiner};
use conrest_core::st_solver::{self, steinerized_mst, verify_solution};
use conrest_core::{Grid, Instance, Point};
use proptest::prelude::*;

fn points(max: usize, side: f64) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0..side, 0.0..side), 1..=max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_steiner_matches_exhaustive_minimum(
        (cols, rows, nodes) in (2usize..=7, 2usize..=7).prop_flat_map(|(c, r)| {
            // Nodes inside the grid's extent, so a step-0.5 grid can always connect them.
            let (w, h) = ((c - 1) as f64 * 0.5, (r - 1) as f64 * 0.5);
            (Just(c), Just(r), prop::collection::vec((0.0..=w, 0.0..=h), 1..=5))
        }),
    ) {
        let nodes = nodes.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        let instance = Instance::new(nodes, 1.0).unwrap();
        let grid = Grid::new(Point::new(0.0, 0.0), 0.5, cols, rows).unwrap();
        let s = st_solver::solve_exact_grid(&instance, &grid, &Default::default()).unwrap();
        let h = brute_force_min_steiner(&instance, &grid, s.count()).unwrap();
        prop_assert_eq!(s.count(), h);
        prop_assert!(verify_solution(&instance, &s));
        prop_assert!(s.steiner_points.iter().all(|p| grid.index_of(p).is_some()));
    }

    #[test]
    fn exact_movement_matches_exhaustive_minimum(nodes in points(4, 2.0), cols in 1usize..=5, rows in 1usize..=5, indicator in any::<bool>()) {
        let instance = Instance::new(nodes, 1.0).unwrap();
        let grid = Grid::new(Point::new(0.0, 0.0), 0.5, cols, rows).unwrap();
        let ids = 0..instance.len();
        let cost = if indicator { CostModel::indicator(ids) } else { CostModel::euclidean(ids) };
        let exact = mcr_solver::solve_exact_grid(&instance, &cost, &grid, &Default::default());
        let oracle = brute_force_mcr(&instance, &cost, &grid);
        match (exact, oracle) {
            (Ok(m), Ok(b)) => {
                prop_assert!((m.total_cost - b.total_cost).abs() <= 1e-9, "{} vs {}", m.total_cost, b.total_cost);
                prop_assert!(verify_mapping(&instance, &m));
                prop_assert!(verify_mapping(&instance, &b));
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "solver {:?} vs oracle {:?}", a, b),
        }
    }

    #[test]
    fn indicator_optimum_is_zero_exactly_when_connected(nodes in points(4, 2.0)) {
        let instance = Instance::new(nodes, 1.0).unwrap();
        let grid = Grid::new(Point::new(0.0, 0.0), 0.5, 5, 5).unwrap();
        let cost = CostModel::indicator(0..instance.len());
        let m = mcr_solver::solve_exact_grid(&instance, &cost, &grid, &Default::default()).unwrap();
        let connected = points_connected(instance.nodes(), 1.0);
        prop_assert_eq!(m.total_cost == 0.0, connected);
        if connected {
            prop_assert!(m.moved(&instance).is_empty());
        } else {
            prop_assert!(m.total_cost >= 1.0);
        }
    }

    #[test]
    fn exact_never_needs_more_than_an_on_grid_mst_placement(
        coords in prop::collection::vec((0i32..4, 0i32..4), 1..=4),
    ) {
        let nodes: Vec<Point> = coords.iter().map(|&(x, y)| Point::new(x as f64, y as f64)).collect();
        let instance = Instance::new(nodes, 1.0).unwrap();
        let grid = Grid::new(Point::new(0.0, 0.0), 0.5, 7, 7).unwrap();
        let mst = steinerized_mst(&instance);
        prop_assume!(mst.steiner_points.iter().all(|p| grid.index_of(p).is_some()));
        let exact = st_solver::solve_exact_grid(&instance, &grid, &Default::default()).unwrap();
        prop_assert!(exact.count() <= mst.count());
        prop_assert!(verify_solution(&instance, &mst));
    }
}
