//! `conrest`: generate, solve, reduce, verify and render connectivity
//! restoration instances.
//!
//! Exit codes: 0 success, 1 a feasibility check came out false, 2 usage or
//! parse error, 3 a search budget was exceeded.

use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use conrest_core::disk_graph::{components, induce};
use conrest_core::instance_io::{
    format_decimal, generate_random, read_instance, read_solution, render_svg, write_instance,
    write_mapping, write_steiner, Overlay, SolutionFile,
};
use conrest_core::mcr_solver::{self, verify_mapping, CostModel, ExactMcrOptions};
use conrest_core::reduction::{st_via_mcr, ExactMcr};
use conrest_core::st_solver::{self, steinerized_mst, verify_solution, ExactStOptions};
use conrest_core::{
    distance, Error, Grid, Instance, Mapping, Point, SteinerMethod, SteinerSolution,
};

#[derive(Parser)]
#[command(
    name = "conrest",
    version,
    about = "Relay placement and node relocation for unit-disk networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Place the fewest relays that connect an instance.
    SolveSt(SolveStArgs),
    /// Relocate nodes to connect an instance at least total cost.
    SolveMcr(SolveMcrArgs),
    /// Count relays by repeatedly solving the relocation problem with free extra nodes.
    Reduce(ReduceArgs),
    /// Check that a Steiner or mapping file connects an instance.
    Verify(VerifyArgs),
    /// Draw an instance, optionally with a solution, as SVG.
    Render(RenderArgs),
    /// Compare exact, MST-based and reduction relay counts over many seeds (CSV).
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of nodes.
    #[arg(short = 'n', long = "nodes")]
    nodes: usize,
    /// Side of the square the nodes are drawn from.
    #[arg(short = 'L', long = "side")]
    side: f64,
    /// Communication range.
    #[arg(short = 'r', long = "range")]
    range: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

/// Candidate grid over the instance's bounding box.
#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// Grid spacing [default: r/2].
    #[arg(long)]
    grid_step: Option<f64>,
    /// Grow the bounding box by this much on every side before laying the grid.
    #[arg(long, default_value_t = 0.0)]
    margin: f64,
}

impl GridArgs {
    fn step(&self, range: f64) -> f64 {
        self.grid_step.unwrap_or(range / 2.0)
    }

    fn build(&self, instance: &Instance) -> Result<Grid> {
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "margin must be nonnegative, got {}",
                self.margin
            ))
            .into());
        }
        let bbox = instance
            .bounding_box()
            .ok_or_else(|| Error::InvalidParameter("instance has no nodes".into()))?
            .inflate(self.margin);
        Ok(Grid::covering(&bbox, self.step(instance.range()))?)
    }

    fn echo(&self, range: f64) {
        config("grid_step", format_decimal(self.step(range)));
        config("margin", format_decimal(self.margin));
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StMode {
    Exact,
    Mst,
}

#[derive(Args)]
struct SolveStArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = StMode::Exact)]
    mode: StMode,
    #[command(flatten)]
    grid: GridArgs,
    /// Most candidate subsets one cardinality level may span.
    #[arg(long, default_value_t = ExactStOptions::default().max_subsets)]
    max_subsets: u64,
    /// Worker threads for the exact search; the answer does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CostArg {
    Indicator,
    Euclidean,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum McrMode {
    Exact,
    Heuristic,
}

#[derive(Args)]
struct SolveMcrArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = CostArg::Euclidean)]
    cost: CostArg,
    #[arg(long, value_enum, default_value_t = McrMode::Exact)]
    mode: McrMode,
    #[command(flatten)]
    grid: GridArgs,
    /// Most search-tree nodes the exact solver may visit.
    #[arg(long, default_value_t = ExactMcrOptions::default().max_nodes)]
    max_nodes: u64,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    instance: PathBuf,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = ExactMcrOptions::default().max_nodes)]
    max_nodes: u64,
    /// Print one trace line per iteration.
    #[arg(short, long)]
    verbose: bool,
    /// Write the relay placement as a Steiner file.
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    /// Steiner (`s` lines) or mapping (`cost` + `m` lines) file.
    solution: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    instance: PathBuf,
    /// Steiner or mapping file to overlay.
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Seeds 0..N are run.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(short = 'n', long = "nodes", default_value_t = 3)]
    nodes: usize,
    #[arg(short = 'L', long = "side", default_value_t = 4.0)]
    side: f64,
    #[arg(short = 'r', long = "range", default_value_t = 1.0)]
    range: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = ExactStOptions::default().max_subsets)]
    max_subsets: u64,
    #[arg(long, default_value_t = ExactMcrOptions::default().max_nodes)]
    max_nodes: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Verification outcome that maps to exit code 1.
#[derive(Debug)]
struct NotFeasible(String);

impl Display for NotFeasible {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NotFeasible {}

fn config(key: &str, value: impl Display) {
    eprintln!("# {key}={value}");
}

fn summary(key: &str, value: impl Display) {
    println!("{key}={value}");
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_solution(path: &Path) -> Result<SolutionFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_solution(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, document: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, document).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            io::stdout().write_all(document.as_bytes())?;
            Ok(())
        }
    }
}

fn write_if(out: Option<&Path>, document: impl FnOnce() -> String) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, document()).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(()),
    }
}

fn cost_model(arg: CostArg, instance: &Instance) -> CostModel {
    match arg {
        CostArg::Indicator => CostModel::indicator(0..instance.len()),
        CostArg::Euclidean => CostModel::euclidean(0..instance.len()),
    }
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    config("command", "gen");
    config("nodes", a.nodes);
    config("side", format_decimal(a.side));
    config("range", format_decimal(a.range));
    config("seed", a.seed);
    let instance = generate_random(a.nodes, a.side, a.range, a.seed)?;
    emit(a.out.as_deref(), &write_instance(&instance))
}

fn cmd_solve_st(a: &SolveStArgs) -> Result<()> {
    let instance = load_instance(&a.instance)?;
    config("command", "solve-st");
    config("instance", a.instance.display());
    let solution = match a.mode {
        StMode::Mst => {
            config("mode", "mst");
            steinerized_mst(&instance)
        }
        StMode::Exact => {
            config("mode", "exact");
            a.grid.echo(instance.range());
            config("max_subsets", a.max_subsets);
            config("jobs", a.jobs);
            let grid = a.grid.build(&instance)?;
            let options = ExactStOptions {
                max_subsets: a.max_subsets,
                jobs: a.jobs,
            };
            st_solver::solve_exact_grid(&instance, &grid, &options)?
        }
    };
    write_if(a.out.as_deref(), || write_steiner(&solution))?;
    summary("h", solution.count());
    Ok(())
}

fn cmd_solve_mcr(a: &SolveMcrArgs) -> Result<()> {
    let instance = load_instance(&a.instance)?;
    let cost = cost_model(a.cost, &instance);
    config("command", "solve-mcr");
    config("instance", a.instance.display());
    config(
        "cost",
        match a.cost {
            CostArg::Indicator => "indicator",
            CostArg::Euclidean => "euclidean",
        },
    );
    let mapping = match a.mode {
        McrMode::Heuristic => {
            config("mode", "heuristic");
            mcr_solver::solve_heuristic(&instance, &cost)
        }
        McrMode::Exact => {
            config("mode", "exact");
            a.grid.echo(instance.range());
            config("max_nodes", a.max_nodes);
            let grid = a.grid.build(&instance)?;
            let options = ExactMcrOptions {
                max_nodes: a.max_nodes,
            };
            mcr_solver::solve_exact_grid(&instance, &cost, &grid, &options)?
        }
    };
    write_if(a.out.as_deref(), || write_mapping(&mapping))?;
    summary("cost", format_decimal(mapping.total_cost));
    Ok(())
}

fn cmd_reduce(a: &ReduceArgs) -> Result<()> {
    let instance = load_instance(&a.instance)?;
    config("command", "reduce");
    config("instance", a.instance.display());
    a.grid.echo(instance.range());
    config("max_nodes", a.max_nodes);
    let grid = a.grid.build(&instance)?;
    let oracle = ExactMcr(ExactMcrOptions {
        max_nodes: a.max_nodes,
    });
    let result = st_via_mcr(&instance, &oracle, &grid)?;
    if a.verbose {
        for entry in &result.trace {
            println!("{entry}");
        }
    }
    write_if(a.out.as_deref(), || write_steiner(&result.as_solution()))?;
    summary("steiner_count", result.steiner_count);
    Ok(())
}

/// Shortest distance between two components of the disk graph on `points`,
/// with the pair that realises it.
fn closest_gap(points: &[Point], range: f64) -> Result<Option<(f64, Point, Point)>> {
    let instance = Instance::new(points.to_vec(), range)?;
    let blocks = components(&induce(&instance));
    if blocks.len() <= 1 {
        return Ok(None);
    }
    let mut best: Option<(f64, Point, Point)> = None;
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            for &u in &blocks[a] {
                for &v in &blocks[b] {
                    let d = distance(&points[u], &points[v]);
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, points[u], points[v]));
                    }
                }
            }
        }
    }
    Ok(best)
}

fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let instance = load_instance(&a.instance)?;
    let file = load_solution(&a.solution)?;
    config("command", "verify");
    config("instance", a.instance.display());
    config("solution", a.solution.display());
    let (feasible, points) = match file.mapping_targets(&instance)? {
        Some(targets) => {
            let SolutionFile::Mapping { cost, .. } = &file else {
                unreachable!("mapping targets come from a mapping file")
            };
            let mapping = Mapping {
                targets,
                total_cost: *cost,
            };
            config("kind", "mapping");
            (verify_mapping(&instance, &mapping), mapping.targets)
        }
        None => {
            let SolutionFile::Steiner(relays) = file else {
                unreachable!("non-mapping files are Steiner files")
            };
            config("kind", "steiner");
            let solution = SteinerSolution::new(relays, SteinerMethod::External);
            (
                verify_solution(&instance, &solution),
                solution.all_points(&instance),
            )
        }
    };
    summary("feasible", feasible);
    if feasible {
        return Ok(());
    }
    let detail = match closest_gap(&points, instance.range())? {
        Some((d, p, q)) => format!(
            "disconnected: closest components are {} apart ({p} to {q}), range is {}",
            format_decimal(d),
            format_decimal(instance.range())
        ),
        None => "disconnected".to_string(),
    };
    Err(NotFeasible(detail).into())
}

fn cmd_render(a: &RenderArgs) -> Result<()> {
    let instance = load_instance(&a.instance)?;
    config("command", "render");
    config("instance", a.instance.display());
    let svg = match &a.solution {
        None => render_svg(&instance, None),
        Some(path) => {
            config("solution", path.display());
            let file = load_solution(path)?;
            match file.mapping_targets(&instance)? {
                Some(targets) => {
                    let SolutionFile::Mapping { cost, .. } = file else {
                        unreachable!("mapping targets come from a mapping file")
                    };
                    let mapping = Mapping {
                        targets,
                        total_cost: cost,
                    };
                    render_svg(&instance, Some(Overlay::Mapping(&mapping)))
                }
                None => {
                    let SolutionFile::Steiner(relays) = file else {
                        unreachable!("non-mapping files are Steiner files")
                    };
                    render_svg(&instance, Some(Overlay::Steiner(&relays)))
                }
            }
        }
    };
    emit(a.out.as_deref(), &svg)
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    config("command", "bench");
    config("seeds", a.seeds);
    config("nodes", a.nodes);
    config("side", format_decimal(a.side));
    config("range", format_decimal(a.range));
    a.grid.echo(a.range);
    config("max_subsets", a.max_subsets);
    config("max_nodes", a.max_nodes);
    config("jobs", a.jobs);
    let st_options = ExactStOptions {
        max_subsets: a.max_subsets,
        jobs: a.jobs,
    };
    let oracle = ExactMcr(ExactMcrOptions {
        max_nodes: a.max_nodes,
    });
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "seed,exact_h,mst_h,reduce_h,agree")?;
    for seed in 0..a.seeds {
        let instance = generate_random(a.nodes, a.side, a.range, seed)?;
        let grid = a.grid.build(&instance)?;
        let exact = st_solver::solve_exact_grid(&instance, &grid, &st_options)?.count();
        let mst = steinerized_mst(&instance).count();
        let reduced = st_via_mcr(&instance, &oracle, &grid)?.steiner_count;
        writeln!(
            stdout,
            "{seed},{exact},{mst},{reduced},{}",
            exact == reduced
        )?;
        stdout.flush()?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<NotFeasible>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_budget() => 3,
        Some(Error::Infeasible(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::SolveSt(a) => cmd_solve_st(a),
        Command::SolveMcr(a) => cmd_solve_mcr(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
