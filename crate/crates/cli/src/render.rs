//! Human-readable output: exact fractions, with six-place decimals marked `≈`.

use finmarkov::semiring::rational_to_decimal;
use finmarkov::{Dilation, Kernel, MetaDist, Point, Rational, Semiring};

pub const PLACES: usize = 6;

pub fn approx(r: &Rational) -> String {
    rational_to_decimal(r, PLACES)
}

/// `(8/13,5/13)` in the label order of `Θ`.
pub fn point(p: &Point) -> String {
    let parts: Vec<String> = p.weights().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn point_approx(p: &Point) -> String {
    let parts: Vec<String> = p.weights().iter().map(approx).collect();
    format!("({})", parts.join(","))
}

/// `117/200 @ (8/13,5/13); 83/200 @ (28/83,55/83)`.
pub fn meta(md: &MetaDist) -> String {
    md.entries()
        .iter()
        .map(|(p, w)| format!("{w} @ {}", point(p)))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn meta_approx(md: &MetaDist) -> String {
    md.entries()
        .iter()
        .map(|(p, w)| format!("{} @ {}", approx(w), point_approx(p)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// One block per entry, each followed by its approximation.
pub fn meta_block(md: &MetaDist, indent: &str) -> String {
    let mut out = String::new();
    for (p, w) in md.entries() {
        out.push_str(&format!("{indent}{w} @ {}\n", point(p)));
        out.push_str(&format!("{indent}  ≈ {} @ {}\n", approx(w), point_approx(p)));
    }
    out
}

/// A table with one row per domain element.
pub fn kernel<S: Semiring>(name: &str, k: &Kernel<S>) -> String {
    let header: Vec<String> = k.cod().labels();
    let rows: Vec<(String, Vec<String>)> = k
        .columns()
        .iter()
        .enumerate()
        .map(|(a, col)| (k.dom().label(a), col.weights().iter().map(Semiring::render).collect()))
        .collect();
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..header.len())
        .map(|j| {
            rows.iter()
                .map(|(_, r)| r[j].chars().count())
                .chain([header[j].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
    let mut out = format!("{name} : {} → {}\n", k.dom(), k.cod());
    let mut line = format!("  {}", pad("", label_width));
    for (h, w) in header.iter().zip(&widths) {
        line.push_str(&format!("  {}", pad(h, *w)));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (label, row) in &rows {
        let mut line = format!("  {}", pad(label, label_width));
        for (v, w) in row.iter().zip(&widths) {
            line.push_str(&format!("  {}", pad(v, *w)));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn dilation(t: &Dilation, indent: &str) -> String {
    t.rows()
        .iter()
        .map(|(p, row)| format!("{indent}{} ↦ {}\n", point(p), meta(row)))
        .collect()
}
