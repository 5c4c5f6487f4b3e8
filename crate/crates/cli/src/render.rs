//! Static pictures of permutations and permutominoes.

use std::fmt::Write;

use sqperm::perm::{classify_records, ColoredPermutation, Corner};
use sqperm::permutomino::Permutomino;

const CELL: i64 = 24;
const MARGIN: i64 = 16;

/// Path colors for the four record kinds, in [`Corner::ALL`] order.
const PATH_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// One character per cell, top row first: `o` for a point, `*` for a colored
/// point, `.` elsewhere.
pub fn perm_ascii(cp: &ColoredPermutation) -> String {
    let perm = cp.perm();
    let n = perm.len();
    let mut out = String::new();
    for row in (1..=n).rev() {
        let line: String = (1..=n)
            .map(|col| match perm.value_at(col) == row {
                true if cp.is_colored(col) => '*',
                true => 'o',
                false => '.',
            })
            .collect();
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn inside(p: &Permutomino, cx2: i64, cy2: i64) -> bool {
    // even-odd rule on doubled coordinates, ray towards +x
    let t = p.turnpoints();
    let mut crossings = 0;
    for k in 0..t.len() {
        let (a, b) = (t[k], t[(k + 1) % t.len()]);
        if a.0 == b.0 {
            let (lo, hi) = (2 * a.1.min(b.1), 2 * a.1.max(b.1));
            if 2 * a.0 > cx2 && lo < cy2 && cy2 < hi {
                crossings += 1;
            }
        }
    }
    crossings % 2 == 1
}

/// `#` for cells inside the boundary, `.` outside, top row first.
pub fn permutomino_ascii(p: &Permutomino) -> String {
    let w = p.turnpoints().iter().map(|q| q.0).max().unwrap_or(0);
    let h = p.turnpoints().iter().map(|q| q.1).max().unwrap_or(0);
    let mut out = String::new();
    for y in (0..h).rev() {
        for x in 0..w {
            out.push(if inside(p, 2 * x + 1, 2 * y + 1) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

fn svg_open(out: &mut String, w: i64, h: i64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

/// Points on an `n x n` grid with the four record paths drawn through the
/// records of each kind, left to right.
pub fn perm_svg(cp: &ColoredPermutation) -> String {
    let perm = cp.perm();
    let n = perm.len() as i64;
    let size = 2 * MARGIN + CELL * (n - 1).max(0);
    let at = |i: usize, v: usize| (MARGIN + CELL * (i as i64 - 1), size - MARGIN - CELL * (v as i64 - 1));
    let mut out = String::new();
    svg_open(&mut out, size, size);
    for k in 0..n {
        let c = MARGIN + CELL * k;
        let _ = writeln!(
            out,
            r##"<line x1="{c}" y1="{MARGIN}" x2="{c}" y2="{e}" stroke="#dddddd"/><line x1="{MARGIN}" y1="{c}" x2="{e}" y2="{c}" stroke="#dddddd"/>"##,
            e = size - MARGIN
        );
    }
    let masks = classify_records(perm);
    for (corner, color) in Corner::ALL.iter().zip(PATH_COLORS) {
        let pts: Vec<String> = (1..=perm.len())
            .filter(|&i| masks[i - 1].has(*corner))
            .map(|i| {
                let (x, y) = at(i, perm.value_at(i));
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
    }
    for i in 1..=perm.len() {
        let (x, y) = at(i, perm.value_at(i));
        let fill = if cp.is_colored(i) { "#ff7f0e" } else { "black" };
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="5" fill="{fill}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// The boundary with black turnpoints filled and white ones hollow.
pub fn permutomino_svg(p: &Permutomino) -> String {
    let t = p.turnpoints();
    let w = t.iter().map(|q| q.0).max().unwrap_or(0);
    let h = t.iter().map(|q| q.1).max().unwrap_or(0);
    let (sw, sh) = (2 * MARGIN + CELL * w, 2 * MARGIN + CELL * h);
    let at = |q: (i64, i64)| (MARGIN + CELL * q.0, sh - MARGIN - CELL * q.1);
    let mut out = String::new();
    svg_open(&mut out, sw, sh);
    let pts: Vec<String> = t
        .iter()
        .map(|&q| {
            let (x, y) = at(q);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#c6dbef" stroke="black" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for (k, &q) in t.iter().enumerate() {
        let (x, y) = at(q);
        let fill = if k % 2 == 1 { "black" } else { "white" };
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="black"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_pictures() {
        let cp: ColoredPermutation = "1,2*,3".parse().unwrap();
        assert_eq!(perm_ascii(&cp), "..o\n.*.\no..\n");
        let p: Permutomino = "0,2;1,2;1,1;2,1;2,0;0,0".parse().unwrap();
        assert_eq!(permutomino_ascii(&p), "#.\n##\n");
    }

    #[test]
    fn svg_is_deterministic() {
        let cp: ColoredPermutation = "3,5,4,1,2".parse().unwrap();
        let a = perm_svg(&cp);
        assert_eq!(a, perm_svg(&cp));
        assert_eq!(a.matches("<circle").count(), 5);
        assert_eq!(a.matches("<polyline").count(), 4);
        let p: Permutomino = "0,1;1,1;1,0;0,0".parse().unwrap();
        assert_eq!(permutomino_svg(&p).matches("<circle").count(), 4);
    }
}
