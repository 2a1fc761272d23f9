//! Persistence, seeded generation, and SVG rendering of instances and
//! solutions.

mod format;
mod generate;
mod svg;

pub use format::{
    format_decimal, read_instance, read_solution, write_instance, write_mapping, write_steiner,
    SolutionFile,
};
pub use generate::{generate_random, SplitMix64};
pub use svg::{render_svg, Overlay};
