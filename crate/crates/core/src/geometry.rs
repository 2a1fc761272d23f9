//! Planar primitives shared by every solver: points, distances, bounding
//! boxes and the candidate lattice that discretizes the plane.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for every coordinate and distance comparison.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        let p = Point { x, y };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::InvalidParameter(format!(
                "non-finite coordinate ({x}, {y})"
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Coordinate-wise equality within [`EPS`].
    pub fn approx_eq(&self, other: &Point) -> bool {
        (self.x - other.x).abs() <= EPS && (self.y - other.y).abs() <= EPS
    }

    /// Point at parameter `t` on the segment from `self` to `other`.
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Euclidean distance.
#[inline]
pub fn distance(p: &Point, q: &Point) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Arithmetic mean of a non-empty point list.
pub fn centroid(points: &[Point]) -> Option<Point> {
    if points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    Some(Point::new(sx / n, sy / n))
}

/// Axis-aligned box, `min` inclusive through `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn new(min: Point, max: Point) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidParameter("non-finite box corner".into()));
        }
        if max.x < min.x || max.y < min.y {
            return Err(Error::InvalidParameter(format!(
                "box corners out of order: {min} to {max}"
            )));
        }
        Ok(BoundingBox { min, max })
    }

    /// Tightest box around a non-empty point list.
    pub fn of_points(points: &[Point]) -> Option<Self> {
        let first = points.first()?;
        let mut bb = BoundingBox {
            min: *first,
            max: *first,
        };
        for p in &points[1..] {
            bb.min.x = bb.min.x.min(p.x);
            bb.min.y = bb.min.y.min(p.y);
            bb.max.x = bb.max.x.max(p.x);
            bb.max.y = bb.max.y.max(p.y);
        }
        Some(bb)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Side of the smallest square containing the box.
    pub fn square_side(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn inflate(&self, margin: f64) -> BoundingBox {
        BoundingBox {
            min: Point::new(self.min.x - margin, self.min.y - margin),
            max: Point::new(self.max.x + margin, self.max.y + margin),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.min.x - EPS
            && p.x <= self.max.x + EPS
            && p.y >= self.min.y - EPS
            && p.y <= self.max.y + EPS
    }
}

/// Number of lattice steps of size `step` that fit in `extent`, tolerant to
/// rounding just below an integer.
fn lattice_steps(extent: f64, step: f64) -> usize {
    (extent / step + EPS).floor().max(0.0) as usize
}

/// Finite square lattice of candidate positions, enumerated row-major from
/// `origin` (x varies fastest).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    origin: Point,
    step: f64,
    columns: usize,
    rows: usize,
}

impl Grid {
    pub fn new(origin: Point, step: f64, columns: usize, rows: usize) -> Result<Self> {
        if !origin.is_finite() {
            return Err(Error::InvalidParameter("non-finite grid origin".into()));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if columns == 0 || rows == 0 {
            return Err(Error::InvalidParameter(
                "grid needs at least one column and one row".into(),
            ));
        }
        Ok(Grid {
            origin,
            step,
            columns,
            rows,
        })
    }

    /// Lattice anchored at the box's lower-left corner that covers it
    /// inclusively.
    pub fn covering(bbox: &BoundingBox, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid step must be positive, got {step}"
            )));
        }
        Grid::new(
            bbox.min,
            step,
            lattice_steps(bbox.width(), step) + 1,
            lattice_steps(bbox.height(), step) + 1,
        )
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.columns * self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `index`-th point in row-major order.
    pub fn point(&self, index: usize) -> Point {
        let (row, col) = (index / self.columns, index % self.columns);
        Point::new(
            self.origin.x + col as f64 * self.step,
            self.origin.y + row as f64 * self.step,
        )
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Row-major index of the lattice point coinciding with `p`, if any.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        let col = ((p.x - self.origin.x) / self.step).round();
        let row = ((p.y - self.origin.y) / self.step).round();
        if col < 0.0 || row < 0.0 || col >= self.columns as f64 || row >= self.rows as f64 {
            return None;
        }
        let index = row as usize * self.columns + col as usize;
        self.point(index).approx_eq(p).then_some(index)
    }

    /// Lattice point nearest to `p`; ties go to the earlier point in
    /// enumeration order.
    pub fn nearest(&self, p: &Point) -> Point {
        let mut best = self.point(0);
        let mut best_d = distance(&best, p);
        for i in 1..self.len() {
            let q = self.point(i);
            let d = distance(&q, p);
            if d < best_d - EPS {
                best = q;
                best_d = d;
            }
        }
        best
    }

    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox {
            min: self.origin,
            max: self.point(self.len() - 1),
        }
    }
}

/// All lattice points of spacing `step` covering `bbox`, row-major.
pub fn grid_points(bbox: &BoundingBox, step: f64) -> Result<Vec<Point>> {
    Ok(Grid::covering(bbox, step)?.points())
}
