//! Lozenge-tiling renderer.
//!
//! A path determines horizontal-lozenge positions `u(n, i) = lambda(n)_i + n
//! - i - 1` on each level line; consecutive levels strictly interlace, which
//! forces the filling of the strips between lines by the two slanted lozenge
//! types. The renderer reconstructs that forced filling per strip by a
//! greedy left-to-right matching of the unoccupied upward and downward
//! triangles, then emits the three rhombus classes on the standard
//! triangular-lattice embedding (level lines horizontal, rows sheared by
//! half a unit per line).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::gt::Path;

const UNIT: f64 = 26.0;
const ROW: f64 = 22.0;
const MARGIN: f64 = 30.0;

/// Fill classes for the three lozenge orientations.
const FILL_HORIZONTAL: &str = "#f2c14e";
const FILL_RIGHT: &str = "#4e79a7";
const FILL_LEFT: &str = "#a7c7e7";

#[derive(Clone, Copy)]
enum Cell {
    /// Diamond centered on a level line: the horizontal lozenge.
    Horizontal { x: i64, line: usize },
    /// Upward and downward triangles aligned at the same x.
    Right { x: i64, row: usize },
    /// Downward triangle one step left of the upward one.
    Left { x: i64, row: usize },
}

/// Lattice vertex (x, y) -> screen, shearing by half a unit per row.
fn vertex(x: f64, y: f64, x_offset: f64) -> (f64, f64) {
    (
        MARGIN + (x - x_offset + y / 2.0) * UNIT,
        MARGIN + y * ROW,
    )
}

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: &str) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="{}" stroke="#333" stroke-width="0.8"/>"##,
        coords.join(" "),
        fill
    );
}

/// Horizontal-lozenge positions per level, level 0 empty.
fn particle_lines(p: &Path) -> Vec<BTreeSet<i64>> {
    let n = p.length();
    let mut lines = vec![BTreeSet::new()];
    for level in 1..=n {
        let lam = p.level(level);
        let set: BTreeSet<i64> = lam
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &c)| c + level as i64 - (i as i64 + 1) - 1)
            .collect();
        lines.push(set);
    }
    lines
}

/// Render a path prefix as an SVG lozenge tiling.
///
/// Levels increase upward: screen line `l` carries the horizontal lozenges
/// of level `N - l`, and each strip between consecutive lines is filled by
/// matching its free upward triangles (top edge on the denser line above)
/// with free downward triangles left to right. Strict interlacing makes the
/// matching offsets 0 or 1, which is asserted.
pub fn tiling_svg(p: &Path) -> String {
    let n = p.length();
    let lines = particle_lines(p);
    let all_x: Vec<i64> = lines.iter().flatten().copied().collect();
    let xmin = all_x.iter().min().copied().unwrap_or(0) - 2;
    let xmax = all_x.iter().max().copied().unwrap_or(0) + 2;

    let mut cells: Vec<Cell> = Vec::new();
    // strip row y sits between screen lines y (level n-y) and y+1 (level
    // n-y-1); level 0 is the empty set
    for row in 0..n {
        let top = &lines[n - row];
        let bottom = &lines[n - row - 1];
        let ups: Vec<i64> = (xmin..=xmax).filter(|x| !top.contains(x)).collect();
        let downs: Vec<i64> = (xmin..=xmax).filter(|x| !bottom.contains(x)).collect();
        for (&a, &b) in ups.iter().zip(downs.iter()) {
            match a - b {
                0 => cells.push(Cell::Right { x: a, row }),
                1 => cells.push(Cell::Left { x: a, row }),
                d => panic!("triangle matching out of sync (offset {d}); window too narrow"),
            }
        }
    }
    for (level, set) in lines.iter().enumerate().skip(1) {
        for &x in set {
            cells.push(Cell::Horizontal { x, line: n - level });
        }
    }

    let width = MARGIN * 2.0 + ((xmax - xmin) as f64 + (n as f64) / 2.0 + 2.0) * UNIT;
    let height = MARGIN * 2.0 + (n as f64 + 0.5) * ROW;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let xo = xmin as f64;
    for cell in &cells {
        match *cell {
            Cell::Right { x, row } => {
                let (x, y) = (x as f64, row as f64);
                polygon(
                    &mut out,
                    &[
                        vertex(x, y, xo),
                        vertex(x + 1.0, y, xo),
                        vertex(x + 1.0, y + 1.0, xo),
                        vertex(x, y + 1.0, xo),
                    ],
                    FILL_RIGHT,
                );
            }
            Cell::Left { x, row } => {
                let (x, y) = (x as f64, row as f64);
                polygon(
                    &mut out,
                    &[
                        vertex(x + 1.0, y, xo),
                        vertex(x, y, xo),
                        vertex(x - 1.0, y + 1.0, xo),
                        vertex(x, y + 1.0, xo),
                    ],
                    FILL_LEFT,
                );
            }
            Cell::Horizontal { x, line } => {
                let (x, y) = (x as f64, line as f64);
                polygon(
                    &mut out,
                    &[
                        vertex(x, y, xo),
                        vertex(x + 1.0, y - 1.0, xo),
                        vertex(x + 1.0, y, xo),
                        vertex(x, y + 1.0, xo),
                    ],
                    FILL_HORIZONTAL,
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
