//! Deterministic SVG for path diagrams and lozenge tilings.
//!
//! Every coordinate is written with exactly two decimals and elements are
//! emitted in a fixed order, so equal inputs give identical bytes.

use std::fmt::Write as _;

use crate::lattice::{Config, GridPoint, PathSystem};
use crate::regions::{Orient, Tiling};

pub const LIGHT_GREEN: &str = "#9bd770";
pub const DARK_GREEN: &str = "#2e7d32";
pub const YELLOW: &str = "#f6d743";

/// Fill colours for the three lozenge classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub right: String,
    pub up: String,
    pub empty: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette { right: LIGHT_GREEN.into(), up: DARK_GREEN.into(), empty: YELLOW.into() }
    }
}

impl Palette {
    pub fn fill(&self, o: Orient) -> &str {
        match o {
            Orient::R => &self.right,
            Orient::U => &self.up,
            Orient::Y => &self.empty,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    /// A grid vertex.
    Node {
        x: f64,
        y: f64,
    },
    /// An endpoint marker with its label.
    Marker {
        x: f64,
        y: f64,
        label: String,
        start: bool,
    },
    Polyline {
        points: Vec<(f64, f64)>,
        stroke: String,
    },
    Polygon {
        points: Vec<(f64, f64)>,
        fill: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgDoc {
    pub width: f64,
    pub height: f64,
    pub elements: Vec<Element>,
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn points(ps: &[(f64, f64)]) -> String {
    ps.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect::<Vec<_>>().join(" ")
}

impl SvgDoc {
    pub fn count(&self, pred: impl Fn(&Element) -> bool) -> usize {
        self.elements.iter().filter(|e| pred(e)).count()
    }

    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        let (w, h) = (num(self.width), num(self.height));
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#)
            .unwrap();
        for e in &self.elements {
            match e {
                Element::Node { x, y } => {
                    writeln!(s, r##"<circle cx="{}" cy="{}" r="2.00" fill="#999999"/>"##, num(*x), num(*y)).unwrap()
                }
                Element::Marker { x, y, label, start } => {
                    let fill = if *start { "#1f4e9c" } else { "#b22222" };
                    let dx = if *start { -20.0 } else { 8.0 };
                    writeln!(
                        s,
                        r#"<g><circle cx="{}" cy="{}" r="5.00" fill="{fill}"/><text x="{}" y="{}" font-size="11" font-family="sans-serif">{label}</text></g>"#,
                        num(*x),
                        num(*y),
                        num(x + dx),
                        num(y - 6.0)
                    )
                    .unwrap()
                }
                Element::Polyline { points: ps, stroke } => writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="3.00"/>"#,
                    points(ps)
                )
                .unwrap(),
                Element::Polygon { points: ps, fill } => writeln!(
                    s,
                    r##"<polygon points="{}" fill="{fill}" stroke="#333333" stroke-width="0.80"/>"##,
                    points(ps)
                )
                .unwrap(),
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 30.0;

const PATH_STROKES: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn grid_xy(p: GridPoint) -> (f64, f64) {
    (MARGIN + (p.col - 1) as f64 * CELL, MARGIN + (p.row - 1) as f64 * CELL)
}

/// Grid vertices, labelled endpoints and, if given, one polyline per path.
pub fn render_paths(c: &Config, system: Option<&PathSystem>) -> SvgDoc {
    let mut elements = Vec::new();
    for i in 1..=c.m {
        for j in 1..=c.n {
            let (x, y) = grid_xy(GridPoint::new(i, j));
            elements.push(Element::Node { x, y });
        }
    }
    if let Some(sys) = system {
        for (idx, path) in sys.paths.iter().enumerate() {
            elements.push(Element::Polyline {
                points: path.vertices().iter().map(|&v| grid_xy(v)).collect(),
                stroke: PATH_STROKES[idx % PATH_STROKES.len()].into(),
            });
        }
    }
    for (idx, &a) in c.a.iter().enumerate() {
        let (x, y) = grid_xy(a);
        elements.push(Element::Marker { x, y, label: format!("A{}", idx + 1), start: true });
    }
    for (idx, &b) in c.b.iter().enumerate() {
        let (x, y) = grid_xy(b);
        elements.push(Element::Marker { x, y, label: format!("B{}", idx + 1), start: false });
    }
    SvgDoc {
        width: 2.0 * MARGIN + (c.n.max(1) - 1) as f64 * CELL,
        height: 2.0 * MARGIN + (c.m.max(1) - 1) as f64 * CELL,
        elements,
    }
}

const SIDE: f64 = 30.0;

/// One filled rhombus per lozenge.
pub fn render_tiling(t: &Tiling, palette: &Palette) -> SvgDoc {
    let half_root3 = 3f64.sqrt() / 2.0;
    let to_xy = |(u, v): (i64, i64)| (u as f64 * half_root3 * SIDE, -(v as f64 - u as f64 / 2.0) * SIDE);
    let shapes: Vec<(Orient, Vec<(f64, f64)>)> =
        t.lozenges.iter().map(|l| (l.orient, l.corners().iter().map(|&p| to_xy(p)).collect())).collect();
    let all = shapes.iter().flat_map(|(_, ps)| ps.iter().copied());
    let (mut x0, mut y0, mut x1, mut y1) = (0f64, 0f64, 0f64, 0f64);
    for (i, (x, y)) in all.enumerate() {
        if i == 0 {
            (x0, y0, x1, y1) = (x, y, x, y);
        }
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    let pad = 10.0;
    let elements = shapes
        .into_iter()
        .map(|(o, ps)| Element::Polygon {
            points: ps.into_iter().map(|(x, y)| (x - x0 + pad, y - y0 + pad)).collect(),
            fill: palette.fill(o).into(),
        })
        .collect();
    SvgDoc { width: x1 - x0 + 2.0 * pad, height: y1 - y0 + 2.0 * pad, elements }
}
