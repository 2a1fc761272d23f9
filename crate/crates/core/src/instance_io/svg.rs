//! Standalone SVG 1.1 drawings of an instance, optionally with a Steiner
//! solution or a relocation overlaid.
//!
//! Original nodes are red dots with dashed coverage circles; added relays
//! are green dots with dotted coverage circles; relocated nodes get a grey
//! ghost at their old position and an arrow to the new one. Links are drawn
//! between every pair of displayed nodes within range.

use std::fmt::Write as _;

use crate::disk_graph::{within_range, Instance};
use crate::geometry::{BoundingBox, Point};
use crate::mcr_solver::Mapping;

const CANVAS: f64 = 600.0;

#[derive(Debug, Clone, Copy)]
pub enum Overlay<'a> {
    Steiner(&'a [Point]),
    Mapping(&'a Mapping),
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn x(&self, p: &Point) -> f64 {
        (p.x - self.min_x) * self.scale
    }

    fn y(&self, p: &Point) -> f64 {
        (self.max_y - p.y) * self.scale
    }
}

pub fn render_svg(instance: &Instance, overlay: Option<Overlay<'_>>) -> String {
    let r = instance.range();
    let (nodes, relays, moved): (Vec<Point>, Vec<Point>, Vec<(Point, Point)>) = match overlay {
        None => (instance.nodes().to_vec(), Vec::new(), Vec::new()),
        Some(Overlay::Steiner(points)) => (instance.nodes().to_vec(), points.to_vec(), Vec::new()),
        Some(Overlay::Mapping(mapping)) => {
            let moved = instance
                .nodes()
                .iter()
                .zip(&mapping.targets)
                .filter(|(a, b)| !a.approx_eq(b))
                .map(|(a, b)| (*a, *b))
                .collect();
            (mapping.targets.clone(), Vec::new(), moved)
        }
    };

    let mut everything: Vec<Point> = nodes.iter().chain(&relays).copied().collect();
    everything.extend(moved.iter().map(|(from, _)| *from));
    let bb = BoundingBox::of_points(&everything)
        .unwrap_or(BoundingBox {
            min: Point::default(),
            max: Point::default(),
        })
        .inflate(r * 1.1);
    let scale = CANVAS / bb.width().max(bb.height());
    let frame = Frame {
        min_x: bb.min.x,
        max_y: bb.max.y,
        scale,
    };
    let (width, height) = (bb.width() * scale, bb.height() * scale);
    let radius = r * scale;
    let dot = (radius * 0.06).clamp(2.0, 8.0);
    let stroke = (dot * 0.4).max(1.0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(
        out,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#555555"/></marker></defs>"##
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let displayed: Vec<Point> = nodes.iter().chain(&relays).copied().collect();
    let _ = writeln!(
        out,
        r#"<g class="links" stroke="black" stroke-width="{stroke:.2}">"#
    );
    for a in 0..displayed.len() {
        for b in a + 1..displayed.len() {
            if within_range(&displayed[a], &displayed[b], r) {
                let (p, q) = (&displayed[a], &displayed[b]);
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    frame.x(p),
                    frame.y(p),
                    frame.x(q),
                    frame.y(q)
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g class="coverage" fill="none" stroke="#c0392b" stroke-width="{stroke:.2}" stroke-dasharray="8,5">"##
    );
    for p in &nodes {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{radius:.2}"/>"#,
            frame.x(p),
            frame.y(p)
        );
    }
    let _ = writeln!(out, "</g>");

    if !relays.is_empty() {
        let _ = writeln!(
            out,
            r##"<g class="relay-coverage" fill="none" stroke="#27ae60" stroke-width="{stroke:.2}" stroke-dasharray="2,4">"##
        );
        for p in &relays {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{radius:.2}"/>"#,
                frame.x(p),
                frame.y(p)
            );
        }
        let _ = writeln!(out, "</g>");
    }

    if !moved.is_empty() {
        let _ = writeln!(
            out,
            r##"<g class="moves" stroke="#555555" stroke-width="{stroke:.2}" fill="none">"##
        );
        for (from, to) in &moved {
            let _ = writeln!(
                out,
                r#"<circle class="ghost" cx="{:.2}" cy="{:.2}" r="{dot:.2}" stroke-dasharray="2,2"/>"#,
                frame.x(from),
                frame.y(from)
            );
            let _ = writeln!(
                out,
                r#"<line class="arrow" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" marker-end="url(#arrow)"/>"#,
                frame.x(from),
                frame.y(from),
                frame.x(to),
                frame.y(to)
            );
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r##"<g class="nodes" fill="#c0392b">"##);
    for (id, p) in nodes.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle id="node-{id}" cx="{:.2}" cy="{:.2}" r="{dot:.2}"/>"#,
            frame.x(p),
            frame.y(p)
        );
    }
    let _ = writeln!(out, "</g>");

    if !relays.is_empty() {
        let _ = writeln!(
            out,
            r##"<g class="relays" fill="#27ae60" stroke="#1e8449" stroke-width="{stroke:.2}" stroke-dasharray="1,1">"##
        );
        for (k, p) in relays.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<circle id="relay-{k}" cx="{:.2}" cy="{:.2}" r="{dot:.2}"/>"#,
                frame.x(p),
                frame.y(p)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
