use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::hochschild::TableEntry;
use crate::specseq::Check;

/// The outcome of one command on one input. Rendering is a pure function
/// of this value, so identical inputs give identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: String,
    /// `sha256:` digest of the input file bytes.
    pub input: String,
    pub field: String,
    pub window: i64,
    pub passed: bool,
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Facts { facts: Vec<(String, String)> },
    Dims { dims: BTreeMap<i64, usize> },
    Classes { classes: Vec<(i64, String)> },
    Products { entries: Vec<TableEntry> },
    Checks { checks: Vec<Check> },
    Pages { pages: Vec<PageGrid>, note: String },
    Lines { lines: Vec<String> },
}

/// One page as a grid over `(p, q)`.
#[derive(Clone, Debug, Serialize)]
pub struct PageGrid {
    pub r: usize,
    pub cells: Vec<GridCell>,
    pub arrows: Vec<Arrow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub p: i64,
    pub q: i64,
    pub n: i64,
    pub dim: usize,
}

/// A nonzero `d^r` between two cells.
#[derive(Clone, Debug, Serialize)]
pub struct Arrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rank: usize,
}

impl Report {
    pub fn new(command: &str, input: &[u8], field: String, window: i64) -> Self {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(input);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Report {
            tool: format!("hss {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            input: format!("sha256:{hex}"),
            field,
            window,
            passed: true,
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, title: impl Into<String>, body: Body) {
        if let Body::Checks { checks } = &body {
            self.passed &= checks.iter().all(|c| c.passed);
        }
        self.sections.push(Section { title: title.into(), body });
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.sections.iter().flat_map(|s| match &s.body {
            Body::Checks { checks } => checks.as_slice(),
            _ => &[],
        })
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| !c.passed).collect()
    }

    pub fn to_data(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.tool, self.command);
        let _ = writeln!(s, "input  {}", self.input);
        let _ = writeln!(s, "field  {}", self.field);
        let _ = writeln!(s, "window {}", self.window);
        for sec in &self.sections {
            let _ = writeln!(s, "\n== {} ==", sec.title);
            match &sec.body {
                Body::Facts { facts } => {
                    let width = facts.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                    for (k, v) in facts {
                        let _ = writeln!(s, "  {k:width$}  {v}");
                    }
                }
                Body::Dims { dims } => {
                    if dims.is_empty() {
                        let _ = writeln!(s, "  (zero)");
                    }
                    for (n, d) in dims {
                        let _ = writeln!(s, "  {n:>4}: {d}");
                    }
                }
                Body::Classes { classes } => {
                    for (n, l) in classes {
                        let _ = writeln!(s, "  {n:>4}: {l}");
                    }
                }
                Body::Products { entries } => {
                    if entries.is_empty() {
                        let _ = writeln!(s, "  (no nonzero products)");
                    }
                    for e in entries {
                        let _ = writeln!(s, "  {} * {} = {}", e.left, e.right, e.product);
                    }
                }
                Body::Checks { checks } => {
                    for c in checks {
                        let _ = writeln!(s, "  {:4}  {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
                    }
                }
                Body::Pages { pages, note } => {
                    for pg in pages {
                        s.push_str(&text_grid(pg));
                    }
                    let _ = writeln!(s, "  {note}");
                }
                Body::Lines { lines } => {
                    for l in lines {
                        let _ = writeln!(s, "  {l}");
                    }
                }
            }
        }
        let failed = self.failures().len();
        let _ = writeln!(s, "\n{}", if failed == 0 { "PASS".to_string() } else { format!("FAIL ({failed} checks)") });
        s
    }

    /// SVG charts of every page grid in the report, or `None` without pages.
    pub fn to_svg(&self) -> Option<String> {
        let pages: Vec<&PageGrid> = self
            .sections
            .iter()
            .flat_map(|s| match &s.body {
                Body::Pages { pages, .. } => pages.iter().collect::<Vec<_>>(),
                _ => Vec::new(),
            })
            .collect();
        if pages.is_empty() {
            return None;
        }
        Some(svg_pages(&format!("{} {} ({}, window {})", self.tool, self.command, self.field, self.window), &pages))
    }
}

fn bounds(pages: &[&PageGrid]) -> (i64, i64, i64, i64) {
    let cells = pages.iter().flat_map(|pg| &pg.cells);
    let (mut p0, mut p1, mut q0, mut q1) = (0, 0, 0, 0);
    for c in cells {
        p0 = p0.min(c.p);
        p1 = p1.max(c.p);
        q0 = q0.min(c.q);
        q1 = q1.max(c.q);
    }
    (p0, p1, q0, q1)
}

fn text_grid(pg: &PageGrid) -> String {
    let mut s = String::new();
    let (p0, p1, q0, q1) = bounds(&[pg]);
    let dims: BTreeMap<(i64, i64), usize> = pg.cells.iter().map(|c| ((c.p, c.q), c.dim)).collect();
    let _ = writeln!(s, "  E^{}  (rows q, columns p)", pg.r);
    let _ = write!(s, "  {:>5} |", "q\\p");
    for p in p0..=p1 {
        let _ = write!(s, "{p:>5}");
    }
    s.push('\n');
    for q in (q0..=q1).rev() {
        let _ = write!(s, "  {q:>5} |");
        for p in p0..=p1 {
            match dims.get(&(p, q)) {
                Some(d) => {
                    let _ = write!(s, "{d:>5}");
                }
                None => s.push_str("    ."),
            }
        }
        s.push('\n');
    }
    for a in &pg.arrows {
        let _ = writeln!(s, "  d^{}: ({},{}) -> ({},{}) rank {}", pg.r, a.from.0, a.from.1, a.to.0, a.to.1, a.rank);
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const CELL: i64 = 34;
const MARGIN: i64 = 40;

fn svg_pages(title: &str, pages: &[&PageGrid]) -> String {
    let (p0, p1, q0, q1) = bounds(pages);
    let cols = p1 - p0 + 1;
    let rows = q1 - q0 + 1;
    let panel_w = cols * CELL + 2 * MARGIN;
    let panel_h = rows * CELL + 2 * MARGIN;
    let per_row = (pages.len() as i64).min(3);
    let grid_rows = (pages.len() as i64 + per_row - 1) / per_row;
    let width = per_row * panel_w;
    let height = grid_rows * panel_h + 30;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#b03030"/></marker></defs>"##
    );
    let _ = writeln!(s, r#"<text x="8" y="18" font-size="13">{}</text>"#, escape(title));
    for (k, pg) in pages.iter().enumerate() {
        let ox = (k as i64 % per_row) * panel_w + MARGIN;
        let oy = (k as i64 / per_row) * panel_h + MARGIN + 30;
        let cx = |p: i64| ox + (p - p0) * CELL + CELL / 2;
        let cy = |q: i64| oy + (q1 - q) * CELL + CELL / 2;
        let _ = writeln!(s, r#"<g id="page-{}">"#, pg.r);
        let _ = writeln!(s, r#"<text x="{ox}" y="{}" font-size="12">E^{}</text>"#, oy - 8, pg.r);
        for i in 0..=cols {
            let x = ox + i * CELL;
            let _ = writeln!(s, r##"<line x1="{x}" y1="{oy}" x2="{x}" y2="{}" stroke="#ddd"/>"##, oy + rows * CELL);
        }
        for j in 0..=rows {
            let y = oy + j * CELL;
            let _ = writeln!(s, r##"<line x1="{ox}" y1="{y}" x2="{}" y2="{y}" stroke="#ddd"/>"##, ox + cols * CELL);
        }
        for p in p0..=p1 {
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{p}</text>"#, cx(p), oy + rows * CELL + 14);
        }
        for q in q0..=q1 {
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{q}</text>"#, ox - 4, cy(q) + 4);
        }
        for c in &pg.cells {
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#dde8f5"/><text x="{}" y="{}" text-anchor="middle">{}</text>"##,
                cx(c.p) - CELL / 2 + 1,
                cy(c.q) - CELL / 2 + 1,
                CELL - 2,
                CELL - 2,
                cx(c.p),
                cy(c.q) + 4,
                c.dim
            );
        }
        for a in &pg.arrows {
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#b03030" stroke-width="1.5" marker-end="url(#head)"><title>d^{} rank {}</title></line>"##,
                cx(a.from.0),
                cy(a.from.1),
                cx(a.to.0),
                cy(a.to.1),
                pg.r,
                a.rank
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
