//! Text renderings of cup diagrams, Alperin graphs and algebra elements.

use std::fmt::Write;

use serde::Serialize;

use isogrus::cells::{AlperinGraph, EdgeKind};
use isogrus::{CupDiagram, Element, Scalar, Weight};

/// Output target for `render_*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Text,
    Ascii,
    Tikz,
    Dot,
    Json,
}

/// Render options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub target: Target,
    /// Print the weight labels above the diagram.
    pub labels: bool,
}

impl RenderSpec {
    pub fn new(target: Target) -> RenderSpec {
        RenderSpec { target, labels: false }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot render {0} as {1:?}")]
pub struct Unsupported(pub &'static str, pub Target);

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

/// Cups hang below the vertices; `*` marks a decoration.
pub fn cup_diagram_ascii(d: &CupDiagram, label: Option<&Weight>) -> String {
    let n = d.n;
    let width = (2 * n).saturating_sub(1);
    let levels = d.levels();
    let rows = levels.values().copied().max().unwrap_or(0).max(1);
    let mut grid = vec![vec![' '; width]; rows];
    for (c, h) in &levels {
        let (a, b) = (2 * (c.l - 1), 2 * (c.r - 1));
        for row in grid.iter_mut().take(h - 1) {
            row[a] = '|';
            row[b] = '|';
        }
        let row = &mut grid[h - 1];
        row[a] = '\\';
        row[b] = '/';
        for x in row.iter_mut().take(b).skip(a + 1) {
            *x = '_';
        }
        if c.dec {
            row[(a + b) / 2] = '*';
        }
    }
    for r in &d.rays {
        let x = 2 * (r.v - 1);
        for row in grid.iter_mut() {
            row[x] = '|';
        }
        if r.dec {
            grid[rows - 1][x] = '*';
        }
    }
    let mut out = String::new();
    if let Some(w) = label {
        let line: Vec<String> = w.to_ascii().chars().map(|c| c.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    for row in grid {
        let line: String = row.into_iter().collect();
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}

pub fn cup_diagram_tikz(d: &CupDiagram) -> String {
    let mut out = String::from("\\begin{tikzpicture}\n");
    let levels = d.levels();
    let depth = levels.values().copied().max().unwrap_or(0).max(1);
    for (c, h) in &levels {
        let (l, r) = (c.l - 1, c.r - 1);
        writeln!(out, "  \\draw ({},0) to[out=-90,in=-90,looseness=1.{}] ({},0);", l, h, r).unwrap();
        if c.dec {
            let y = -0.4 * (*h as f64) - 0.2 * ((r - l) as f64 - 1.0).clamp(0.0, 1.0);
            writeln!(out, "  \\fill ({:.1},{:.2}) circle (2pt);", (l + r) as f64 / 2.0, y).unwrap();
        }
    }
    for ray in &d.rays {
        let x = ray.v - 1;
        writeln!(out, "  \\draw ({},0) --++(0,-{});", x, depth).unwrap();
        if ray.dec {
            writeln!(out, "  \\fill ({},-{:.1}) circle (2pt);", x, depth as f64 / 2.0).unwrap();
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn render_cup_diagram(d: &CupDiagram, w: &Weight, spec: RenderSpec) -> Result<String, Unsupported> {
    match spec.target {
        Target::Text | Target::Ascii => Ok(cup_diagram_ascii(d, spec.labels.then_some(w))),
        Target::Tikz => Ok(cup_diagram_tikz(d)),
        Target::Json => Ok(json(d)),
        Target::Dot => Err(Unsupported("a cup diagram", Target::Dot)),
    }
}

fn edge_label(kind: EdgeKind, l: usize, r: usize) -> String {
    match kind {
        EdgeKind::Add => format!("add {}-{}", l, r),
        EdgeKind::Remove => format!("remove {}-{}", l, r),
    }
}

pub fn alperin_dot(g: &AlperinGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph alperin {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    for (k, layer) in g.layers().iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|w| format!("\"{}\"", w)).collect();
        writeln!(out, "  {{ rank=same; {}; }} // degree {}", names.join("; "), k).unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, edge_label(e.kind, e.cup.l, e.cup.r)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn alperin_tikz(g: &AlperinGraph) -> String {
    let mut out = String::from("\\begin{tikzpicture}[xscale=2.5,yscale=-1.5]\n");
    for (k, layer) in g.layers().iter().enumerate() {
        let off = (layer.len() as f64 - 1.0) / 2.0;
        for (i, w) in layer.iter().enumerate() {
            writeln!(out, "  \\node ({}) at ({:.1},{}) {{{}}};", w, i as f64 - off, k, w.to_symbols()).unwrap();
        }
    }
    for e in &g.edges {
        writeln!(out, "  \\draw[->] ({}) -- ({});", e.from, e.to).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn alperin_text(g: &AlperinGraph) -> String {
    let mut out = String::new();
    for (k, layer) in g.layers().iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|w| w.to_string()).collect();
        writeln!(out, "degree {}: {}", k, names.join(" ")).unwrap();
    }
    for e in &g.edges {
        write!(out, "{} -> {} {}", e.from, e.to, edge_label(e.kind, e.cup.l, e.cup.r)).unwrap();
        if let Some(c) = e.coefficient {
            write!(out, " coeff {}", gauss(c)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn render_alperin(g: &AlperinGraph, spec: RenderSpec) -> Result<String, Unsupported> {
    match spec.target {
        Target::Text | Target::Ascii => Ok(alperin_text(g)),
        Target::Dot => Ok(alperin_dot(g)),
        Target::Tikz => Ok(alperin_tikz(g)),
        Target::Json => Ok(json(g)),
    }
}

/// `a+bi` with the usual abbreviations.
pub fn gauss((re, im): (i64, i64)) -> String {
    match (re, im) {
        (re, 0) => re.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (0, im) => format!("{}i", im),
        (re, im) if im < 0 => format!("{}-{}i", re, -im),
        (re, im) => format!("{}+{}i", re, im),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TermRecord {
    pub lambda: String,
    pub mu: String,
    pub nu: String,
    pub coeff: [i64; 2],
}

/// Terms of an element with exact Gaussian-integer coefficients.
pub fn term_records<R: Scalar>(x: &Element<R>) -> Vec<TermRecord> {
    x.iter()
        .map(|(t, c)| {
            let (re, im) = c.to_gauss().expect("exact coefficient");
            TermRecord { lambda: t.lambda.to_string(), mu: t.mu.to_string(), nu: t.nu.to_string(), coeff: [re, im] }
        })
        .collect()
}

pub fn render_terms(terms: &[TermRecord], target: Target) -> Result<String, Unsupported> {
    match target {
        Target::Json => Ok(json(&terms)),
        Target::Text | Target::Ascii => {
            if terms.is_empty() {
                return Ok("0\n".into());
            }
            let mut out = String::new();
            for t in terms {
                writeln!(out, "{} * D[{} <- {} <- {}]", gauss((t.coeff[0], t.coeff[1])), t.mu, t.lambda, t.nu).unwrap();
            }
            Ok(out)
        }
        other => Err(Unsupported("an algebra element", other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isogrus::cells::alperin_diagram;
    use isogrus::cup_diagram;

    #[test]
    fn all_down_is_bare_strokes() {
        let w: Weight = "dddd".parse().unwrap();
        assert_eq!(cup_diagram_ascii(&cup_diagram(&w), None), "| | | |\n");
    }

    #[test]
    fn construction_tikz() {
        let w: Weight = "uuudduuud".parse().unwrap();
        let t = cup_diagram_tikz(&cup_diagram(&w));
        assert_eq!(t.matches("to[out=-90").count(), 4);
        assert_eq!(t.matches("--++(0,").count(), 1);
        assert_eq!(t.matches("circle").count(), 2);
    }

    #[test]
    fn small_ascii() {
        let w: Weight = "uuuu".parse().unwrap();
        assert_eq!(cup_diagram_ascii(&cup_diagram(&w), Some(&w)), "u u u u\n\\*/ \\*/\n");
        let w: Weight = "duud".parse().unwrap();
        assert_eq!(cup_diagram_ascii(&cup_diagram(&w), None), "\\_/ * |\n");
    }

    #[test]
    fn rank_two_dot() {
        let g = alperin_diagram(&"dd".parse().unwrap());
        let dot = alperin_dot(&g);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert_eq!(dot.matches("rank=same").count(), 2);
    }

    #[test]
    fn gauss_format() {
        assert_eq!(gauss((0, -1)), "-i");
        assert_eq!(gauss((2, -3)), "2-3i");
        assert_eq!(gauss((-1, 0)), "-1");
    }
}
