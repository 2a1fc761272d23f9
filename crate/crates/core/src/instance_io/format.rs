//! Line-oriented text formats.
//!
//! Instance files:
//!
//! ```text
//! # optional comments anywhere
//! r 1
//! v 0 0 0
//! v 1 0 2
//! ```
//!
//! Solution files hold either Steiner points (`s <x> <y>`) or a mapping
//! (`cost <c>` header followed by one `m <id> <x> <y>` line per node).
//! Numbers are written with at most 12 significant digits.

use crate::disk_graph::Instance;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::mcr_solver::Mapping;
use crate::st_solver::SteinerSolution;

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back to that value. Negative zero prints as `0`.
pub fn format_decimal(x: f64) -> String {
    format!("{}", round_significant(x))
}

pub(crate) fn round_significant(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(document: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    document.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} `{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(
            line,
            format!("{what} `{field}` is not finite"),
        ));
    }
    Ok(v)
}

fn node_id(line: usize, field: &str) -> Result<usize> {
    field.parse().map_err(|_| {
        Error::parse(
            line,
            format!("node id `{field}` is not a nonnegative integer"),
        )
    })
}

fn expect_fields(line: usize, fields: &[&str], count: usize, shape: &str) -> Result<()> {
    if fields.len() != count {
        return Err(Error::parse(line, format!("expected `{shape}`")));
    }
    Ok(())
}

pub fn read_instance(document: &str) -> Result<Instance> {
    let mut lines = content_lines(document);
    let (first_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `r <range>` line"))?;
    if header[0] != "r" {
        return Err(Error::parse(
            first_line,
            "missing `r <range>` line; it must come first",
        ));
    }
    expect_fields(first_line, &header, 2, "r <range>")?;
    let range = number(first_line, header[1], "range")?;
    if range <= 0.0 {
        return Err(Error::parse(
            first_line,
            format!("range must be positive, got {range}"),
        ));
    }

    let mut nodes = Vec::new();
    for (line, fields) in lines {
        match fields[0] {
            "v" => {
                expect_fields(line, &fields, 4, "v <id> <x> <y>")?;
                let id = node_id(line, fields[1])?;
                if id != nodes.len() {
                    return Err(Error::parse(
                        line,
                        format!(
                            "node ids must be consecutive from 0: expected {}, got {id}",
                            nodes.len()
                        ),
                    ));
                }
                nodes.push(Point::new(
                    number(line, fields[2], "x")?,
                    number(line, fields[3], "y")?,
                ));
            }
            "r" => return Err(Error::parse(line, "duplicate `r` line")),
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    Instance::new(nodes, range).map_err(|e| Error::parse(first_line, e.to_string()))
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = format!("r {}\n", format_decimal(instance.range()));
    for (id, p) in instance.nodes().iter().enumerate() {
        out.push_str(&format!(
            "v {id} {} {}\n",
            format_decimal(p.x),
            format_decimal(p.y)
        ));
    }
    out
}

pub fn write_steiner(solution: &SteinerSolution) -> String {
    let mut out = format!(
        "# method {}\n# h {}\n",
        solution.method.as_str(),
        solution.count()
    );
    for p in &solution.steiner_points {
        out.push_str(&format!(
            "s {} {}\n",
            format_decimal(p.x),
            format_decimal(p.y)
        ));
    }
    out
}

pub fn write_mapping(mapping: &Mapping) -> String {
    let mut out = format!("cost {}\n", format_decimal(mapping.total_cost));
    for (id, p) in mapping.targets.iter().enumerate() {
        out.push_str(&format!(
            "m {id} {} {}\n",
            format_decimal(p.x),
            format_decimal(p.y)
        ));
    }
    out
}

/// Parsed contents of a solution file.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionFile {
    Steiner(Vec<Point>),
    Mapping {
        cost: f64,
        /// `(id, target)` in file order.
        entries: Vec<(usize, Point)>,
        /// Last line of the document, for coverage errors.
        last_line: usize,
    },
}

impl SolutionFile {
    /// Targets indexed by id; every instance id must appear exactly once.
    pub fn mapping_targets(&self, instance: &Instance) -> Result<Option<Vec<Point>>> {
        let SolutionFile::Mapping {
            entries, last_line, ..
        } = self
        else {
            return Ok(None);
        };
        let mut targets: Vec<Option<Point>> = vec![None; instance.len()];
        for &(id, p) in entries {
            match targets.get_mut(id) {
                None => {
                    return Err(Error::parse(
                        *last_line,
                        format!(
                            "mapping names node {id} but the instance has {} nodes",
                            instance.len()
                        ),
                    ))
                }
                Some(Some(_)) => {
                    return Err(Error::parse(
                        *last_line,
                        format!("node {id} is mapped twice"),
                    ))
                }
                Some(slot) => *slot = Some(p),
            }
        }
        let covered = targets.iter().filter(|t| t.is_some()).count();
        if covered != instance.len() {
            return Err(Error::parse(
                *last_line,
                format!("mapping covers {covered} of {} node ids", instance.len()),
            ));
        }
        Ok(Some(targets.into_iter().map(Option::unwrap).collect()))
    }
}

pub fn read_solution(document: &str) -> Result<SolutionFile> {
    let last_line = document.lines().count().max(1);
    let mut steiner = Vec::new();
    let mut entries = Vec::new();
    let mut cost: Option<f64> = None;
    for (line, fields) in content_lines(document) {
        match fields[0] {
            "s" => {
                expect_fields(line, &fields, 3, "s <x> <y>")?;
                if cost.is_some() {
                    return Err(Error::parse(line, "`s` record inside a mapping file"));
                }
                steiner.push(Point::new(
                    number(line, fields[1], "x")?,
                    number(line, fields[2], "y")?,
                ));
            }
            "cost" => {
                expect_fields(line, &fields, 2, "cost <value>")?;
                if cost.is_some() || !steiner.is_empty() || !entries.is_empty() {
                    return Err(Error::parse(
                        line,
                        "`cost` must be the first record of a mapping file",
                    ));
                }
                let c = number(line, fields[1], "cost")?;
                if c < 0.0 {
                    return Err(Error::parse(
                        line,
                        format!("cost must be nonnegative, got {c}"),
                    ));
                }
                cost = Some(c);
            }
            "m" => {
                expect_fields(line, &fields, 4, "m <id> <x> <y>")?;
                if cost.is_none() {
                    return Err(Error::parse(line, "mapping file lacks its `cost` header"));
                }
                entries.push((
                    node_id(line, fields[1])?,
                    Point::new(number(line, fields[2], "x")?, number(line, fields[3], "y")?),
                ));
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(match cost {
        Some(cost) => SolutionFile::Mapping {
            cost,
            entries,
            last_line,
        },
        None => SolutionFile::Steiner(steiner),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::st_solver::SteinerMethod;

    #[test]
    fn reads_the_basic_example() {
        let i = read_instance("r 1.0\nv 0 0 0\nv 1 0 2\n").unwrap();
        assert_eq!(i.range(), 1.0);
        assert_eq!(i.nodes(), &[Point::new(0.0, 0.0), Point::new(0.0, 2.0)]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let doc = "# header\n\nr 2\n# mid\nv 0 1 1\n";
        assert_eq!(read_instance(doc).unwrap().len(), 1);
    }

    #[test]
    fn missing_range_names_line_one() {
        let err = read_instance("v 0 0 0\nv 1 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(matches!(
            read_instance(""),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn malformed_instances() {
        let cases = [
            ("r 1\nv 1 0 0\n", 2),
            ("r 1\nv 0 0 0\nv 0 1 1\n", 3),
            ("r 1\nv 0 nan 0\n", 2),
            ("r 1\nv 0 inf 0\n", 2),
            ("r 0\n", 1),
            ("r -2\n", 1),
            ("r 1\nr 2\n", 2),
            ("r 1\nv 0 0\n", 2),
            ("r 1\nq 0 0 0\n", 2),
            ("r 1\nv x 0 0\n", 2),
        ];
        for (doc, line) in cases {
            match read_instance(doc) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{doc:?}"),
                other => panic!("{doc:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn decimals_keep_twelve_significant_digits() {
        assert_eq!(format_decimal(1.0), "1");
        assert_eq!(format_decimal(0.1), "0.1");
        assert_eq!(format_decimal(-0.0), "0");
        assert_eq!(format_decimal(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_decimal(2.0f64.sqrt() * 1000.0), "1414.21356237");
        assert_eq!(format_decimal(-3.25), "-3.25");
    }

    #[test]
    fn writes_instances() {
        let i = Instance::new(vec![Point::new(0.5, -1.0), Point::new(2.0, 3.0)], 1.5).unwrap();
        assert_eq!(write_instance(&i), "r 1.5\nv 0 0.5 -1\nv 1 2 3\n");
    }

    #[test]
    fn steiner_files() {
        let s = SteinerSolution::new(vec![Point::new(1.0, 0.0)], SteinerMethod::ExactGrid);
        let doc = write_steiner(&s);
        assert_eq!(doc, "# method exact-grid\n# h 1\ns 1 0\n");
        assert_eq!(
            read_solution(&doc).unwrap(),
            SolutionFile::Steiner(vec![Point::new(1.0, 0.0)])
        );
        let empty = SteinerSolution::new(vec![], SteinerMethod::ExactGrid);
        assert_eq!(
            read_solution(&write_steiner(&empty)).unwrap(),
            SolutionFile::Steiner(vec![])
        );
    }

    #[test]
    fn mapping_files_must_cover_every_id() {
        let i = Instance::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 2.0)], 1.0).unwrap();
        let m = Mapping {
            targets: vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0)],
            total_cost: 1.0,
        };
        let doc = write_mapping(&m);
        assert_eq!(doc, "cost 1\nm 0 0 0\nm 1 0 1\n");
        let parsed = read_solution(&doc).unwrap();
        assert_eq!(parsed.mapping_targets(&i).unwrap(), Some(m.targets.clone()));

        let truncated = read_solution("cost 1\nm 0 0 0\n").unwrap();
        assert!(matches!(
            truncated.mapping_targets(&i),
            Err(Error::Parse { .. })
        ));
        let doubled = read_solution("cost 1\nm 0 0 0\nm 0 0 1\n").unwrap();
        assert!(doubled.mapping_targets(&i).is_err());
        let stray = read_solution("cost 1\nm 0 0 0\nm 1 0 1\nm 5 0 1\n").unwrap();
        assert!(stray.mapping_targets(&i).is_err());
    }

    #[test]
    fn malformed_solutions() {
        assert!(matches!(
            read_solution("m 0 0 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_solution("cost 1\nm 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_solution("s 1 1\ncost 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_solution("cost 2\ns 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_solution("cost -1\n").is_err());
    }
}
