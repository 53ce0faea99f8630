//! Renderings of structure tables, graphs and matrices: CSV, JSON, LaTeX, DOT, text.

use crate::alia::{coords_text, Alia, RootGraph, GLYPHS};
use crate::bipoly::RfMatrix;
use crate::error::{AliaError, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// One entry `ε 𝕀^{ω²}` of a root-indexed table; `coeff == 0` is an empty bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub coeff: i64,
    pub monomial: String,
}

impl Cell {
    fn zero() -> Cell {
        Cell { coeff: 0, monomial: "1".into() }
    }
}

/// Structure constants indexed by roots: `[ā_α, ā_β] = ε(α, β) 𝕀^{ω²(α, β)} ā_{α+β}`,
/// and `𝕀^{ω²(α, −α)}` with coefficient `±1` for opposite roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTable {
    pub group: String,
    pub lie_type: String,
    pub grading: String,
    /// Pole orbit, 1-based; the monomials still show its glyph.
    pub pole: Option<usize>,
    pub positive_only: bool,
    pub roots: Vec<Vec<i64>>,
    /// `𝕀^{ω²(α, −α)}` per listed root, shown as a header row when only positive roots are listed.
    pub opposite: Vec<String>,
    pub cells: Vec<Vec<Cell>>,
    /// Roots of odd degree, left out.
    pub omitted: Vec<Vec<i64>>,
}

pub fn root_table(alg: &Alia, positive_only: bool) -> RootTable {
    let sys = &alg.sys;
    let odd = alg.odd_roots();
    let listed: Vec<usize> = (0..sys.num_roots())
        .filter(|a| !odd.contains(a) && (!positive_only || sys.is_positive(*a)))
        .collect();
    let mono = |w: &[crate::rootsystem::Q]| crate::alia::MonoCoeff { scalar: 1.into(), exponents: w.to_vec() }.monomial_text(None);
    let cell = |a: usize, b: usize| -> Cell {
        if b == sys.neg(a) {
            let w = alg.omega.get(a, b).expect("opposite roots carry a cocycle value");
            return Cell { coeff: if sys.is_positive(a) { 1 } else { -1 }, monomial: mono(w) };
        }
        match (sys.sum(a, b), alg.omega.get(a, b)) {
            (Some(c), Some(w)) if !odd.contains(&c) => Cell { coeff: alg.eps.value(a, b), monomial: mono(w) },
            _ => Cell::zero(),
        }
    };
    let cells = listed.iter().map(|&a| listed.iter().map(|&b| cell(a, b)).collect()).collect();
    let opposite = listed.iter().map(|&a| mono(alg.omega.get(a, sys.neg(a)).expect("cocycle on opposite roots"))).collect();
    RootTable {
        group: alg.spec.group.to_string(),
        lie_type: alg.spec.lie_type.to_string(),
        grading: alg.spec.grading.to_string(),
        pole: match alg.spec.pole {
            crate::alia::PoleChoice::Orbit(j) => Some(j + 1),
            crate::alia::PoleChoice::Generic => None,
        },
        positive_only,
        roots: listed.iter().map(|&a| sys.root(a).to_vec()).collect(),
        opposite,
        cells,
        omitted: odd.iter().map(|&a| sys.root(a).to_vec()).collect(),
    }
}

fn csv_error(e: impl std::fmt::Display) -> AliaError {
    AliaError::Internal(format!("csv: {e}"))
}

impl RootTable {
    /// Nonzero entries, columns `row_root, col_root, coeff, monomial`. Opposite
    /// roots are listed under their negative even when only positive roots are shown.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["row_root", "col_root", "coeff", "monomial"]).map_err(csv_error)?;
        for (i, row) in self.roots.iter().enumerate() {
            if self.positive_only {
                let neg: Vec<i64> = row.iter().map(|c| -c).collect();
                w.write_record([coords_text(row), coords_text(&neg), "1".into(), self.opposite[i].clone()]).map_err(csv_error)?;
            }
            for (j, col) in self.roots.iter().enumerate() {
                let c = &self.cells[i][j];
                if c.coeff != 0 {
                    w.write_record([coords_text(row), coords_text(col), c.coeff.to_string(), c.monomial.clone()]).map_err(csv_error)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(csv_error)?;
        String::from_utf8(bytes).map_err(csv_error)
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn from_json(s: &str) -> Result<RootTable> {
        serde_json::from_str(s).map_err(|e| AliaError::Parse(format!("table json: {e}")))
    }

    /// An `array` in the layout of the printed tables; glyphs use the `\mb` macro
    /// (`\newcommand{\mb}{\mathbb}`).
    pub fn to_latex(&self) -> String {
        let rank = self.roots.first().map_or(0, Vec::len);
        let mut s = String::new();
        let _ = writeln!(s, "\\begin{{array}}{{{}|{}}}", "r".repeat(rank), "r".repeat(self.roots.len()));
        let pad = vec![""; rank].join(" & ");
        for k in 0..rank {
            let heads: Vec<String> = self.roots.iter().map(|r| r[k].to_string()).collect();
            let _ = writeln!(s, "{pad} & {} \\\\", heads.join(" & "));
        }
        s.push_str("\\hline\n");
        if self.positive_only {
            let heads: Vec<String> = self.opposite.iter().map(|m| latex_cell(1, m)).collect();
            let _ = writeln!(s, "{pad} & {} \\\\", heads.join(" & "));
            s.push_str("\\hline\n");
        }
        for (i, row) in self.roots.iter().enumerate() {
            let lead: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            let body: Vec<String> = self.cells[i].iter().map(|c| latex_cell(c.coeff, &c.monomial)).collect();
            let end = if i + 1 < self.roots.len() { " \\\\" } else { "" };
            let _ = writeln!(s, "{} & {}{end}", lead.join(" & "), body.join(" & "));
        }
        s.push_str("\\end{array}\n");
        s
    }

    /// Aligned grid with the roots as headers.
    pub fn to_text(&self) -> String {
        let head: Vec<String> = self.roots.iter().map(|r| format!("({})", coords_text(r))).collect();
        let mut rows: Vec<Vec<String>> = vec![std::iter::once(String::new()).chain(head.iter().cloned()).collect()];
        if self.positive_only {
            rows.push(std::iter::once("opp".to_string()).chain(self.opposite.iter().cloned()).collect());
        }
        for (i, h) in head.iter().enumerate() {
            let body = self.cells[i].iter().map(|c| text_cell(c.coeff, &c.monomial));
            rows.push(std::iter::once(h.clone()).chain(body).collect());
        }
        grid(&rows)
    }
}

fn text_cell(coeff: i64, monomial: &str) -> String {
    match (coeff, monomial) {
        (0, _) => "0".into(),
        (c, "1") => c.to_string(),
        (1, m) => m.to_string(),
        (-1, m) => format!("-{m}"),
        (c, m) => format!("{c}{m}"),
    }
}

fn grid(rows: &[Vec<String>]) -> String {
    let ncol = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncol).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = widths[j])).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

/// `IJ^1/2`-style monomial text to `\mb I \mb J^{1/2}`.
pub fn latex_monomial(m: &str) -> String {
    if m == "1" {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut chars = m.chars().peekable();
    while let Some(g) = chars.next() {
        let mut part = format!("\\mb {g}");
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut e = String::new();
            while let Some(&c) = chars.peek() {
                if GLYPHS.contains(&c) {
                    break;
                }
                e.push(c);
                chars.next();
            }
            let _ = write!(part, "^{{{e}}}");
        }
        parts.push(part);
    }
    parts.join(" ")
}

fn latex_cell(coeff: i64, monomial: &str) -> String {
    let m = latex_monomial(monomial);
    match (coeff, monomial) {
        (0, _) => "0".into(),
        (c, "1") => c.to_string(),
        (1, _) => m,
        (-1, _) => format!("-{m}"),
        (c, _) => format!("{c} \\, {m}"),
    }
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| AliaError::Internal(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Re-serialises a JSON document through `T`.
pub fn json_round_trip<T: Serialize + for<'de> Deserialize<'de>>(s: &str) -> Result<String> {
    let v: T = serde_json::from_str(s).map_err(|e| AliaError::Parse(format!("json: {e}")))?;
    to_json(&v)
}

pub fn graph_dot(g: &RootGraph) -> String {
    let glyph = GLYPHS.get(g.component).copied().unwrap_or('?');
    let mut s = format!("graph omega_{glyph} {{\n");
    if g.too_large {
        s.push_str("  // rank above two: too large to be practical\n");
    }
    for v in &g.vertices {
        let _ = writeln!(s, "  \"{}\";", coords_text(v));
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(s, "  \"{}\" -- \"{}\";", coords_text(&g.vertices[a]), coords_text(&g.vertices[b]));
    }
    s.push_str("}\n");
    s
}

/// Entries of a matrix of rational functions, as text.
pub fn matrix_strings(m: &RfMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).pretty()).collect()).collect()
}

pub fn matrix_text(m: &RfMatrix) -> String {
    let rows = matrix_strings(m);
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "[ {} ]", r.join(" ; "));
    }
    s
}

/// Grid of strings with a `*` diagonal, as used for normal forms.
pub fn string_grid(rows: &[Vec<String>]) -> String {
    grid(rows)
}
