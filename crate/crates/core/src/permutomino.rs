//! Convex permutominoes as clockwise cycles of lattice turnpoints, and the
//! bijection with colored co-indecomposable square permutations.
//!
//! Size convention: the size of a permutomino is the number of vertical
//! lattice lines it meets, which is half its number of turnpoints. The unit
//! square has size 2 and maps to the permutation `1,2`; the four L-trominoes
//! have size 3.
//!
//! Canonical form: translated so the bounding box starts at `(0, 0)`,
//! oriented clockwise, starting at the highest turnpoint of the leftmost
//! vertical line.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{classify_records, free_fixed_points, ColoredPermutation, Permutation, RecordMask};

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    Vertical(i64),
    Horizontal(i64),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Vertical(x) => write!(f, "x={x}"),
            Line::Horizontal(y) => write!(f, "y={y}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutominoError {
    #[error("boundary does not close into a cycle of at least four turnpoints")]
    NotClosed,
    #[error("consecutive sides do not alternate between horizontal and vertical")]
    NotAlternating,
    #[error("boundary is not self-avoiding")]
    SelfIntersecting,
    #[error("more than one side on line {0}")]
    DuplicateSideOnLine(Line),
    #[error("no side on line {0}")]
    MissingSideOnLine(Line),
    #[error("turnpoint ({}, {}) is not a record", .0.0, .0.1)]
    NotConvex(Point),
    #[error("permutation is not square")]
    NotSquare,
    #[error("permutation is co-decomposable")]
    NotCoIndecomposable,
    #[error("permutations of size 1 have no permutomino")]
    TooSmall,
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// What validation learns about a boundary besides its validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub size: usize,
    /// Every turnpoint is an upper-left, upper-right or bottom-right record.
    pub directed: bool,
    /// Every turnpoint is an upper-left or bottom-right record.
    pub parallelogram: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutomino {
    turnpoints: Vec<Point>,
}

impl Permutomino {
    /// Validates and canonicalizes a cyclic list of turnpoints given in
    /// either orientation.
    pub fn new(points: Vec<Point>) -> Result<Self, Vec<PermutominoError>> {
        let points = strip_closing_repeat(points);
        validate_cycle(&points)?;
        Ok(Self {
            turnpoints: canonicalize(points),
        })
    }

    pub fn turnpoints(&self) -> &[Point] {
        &self.turnpoints
    }

    pub fn size(&self) -> usize {
        self.turnpoints.len() / 2
    }

    pub fn report(&self) -> ValidationReport {
        report_for(&self.turnpoints)
    }

    /// Index of the highest turnpoint on the rightmost line, where the upper
    /// walk ends.
    fn upper_walk_end(&self) -> usize {
        let max_x = self.turnpoints.iter().map(|p| p.0).max().unwrap_or(0);
        (0..self.turnpoints.len())
            .filter(|&k| self.turnpoints[k].0 == max_x)
            .max_by_key(|&k| self.turnpoints[k].1)
            .unwrap_or(0)
    }
}

impl fmt::Display for Permutomino {
    /// `x,y;x,y;...` in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (x, y)) in self.turnpoints.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{x},{y}")?;
        }
        Ok(())
    }
}

/// Parses `x,y;x,y;...` into raw points, without validation.
pub fn parse_points(s: &str) -> Result<Vec<Point>, PermutominoError> {
    s.trim()
        .split(';')
        .map(|tok| {
            let (x, y) = tok
                .split_once(',')
                .ok_or_else(|| PermutominoError::Syntax(format!("bad point {tok:?}")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<i64>()
                    .map_err(|_| PermutominoError::Syntax(format!("bad coordinate {v:?}")))
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

impl FromStr for Permutomino {
    type Err = Vec<PermutominoError>;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutomino::new(parse_points(s).map_err(|e| vec![e])?)
    }
}

fn strip_closing_repeat(mut points: Vec<Point>) -> Vec<Point> {
    if points.len() > 1 && points.first() == points.last() {
        points.pop();
    }
    points
}

/// Checks the permutomino invariants on a cyclic list of points.
pub fn validate_permutomino(points: &[Point]) -> Result<ValidationReport, Vec<PermutominoError>> {
    let points = strip_closing_repeat(points.to_vec());
    validate_cycle(&points)?;
    Ok(report_for(&points))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    H,
    V,
}

fn validate_cycle(points: &[Point]) -> Result<(), Vec<PermutominoError>> {
    use PermutominoError::*;
    let len = points.len();
    if len < 4 {
        return Err(vec![NotClosed]);
    }
    let dir = |k: usize| {
        let (a, b) = (points[k], points[(k + 1) % len]);
        match (a.0 == b.0, a.1 == b.1) {
            (false, true) => Some(Dir::H),
            (true, false) => Some(Dir::V),
            _ => None,
        }
    };
    let dirs: Vec<Option<Dir>> = (0..len).map(dir).collect();
    if dirs[len - 1].is_none() && points[len - 1] != points[0] {
        return Err(vec![NotClosed]);
    }
    if len % 2 == 1 || (0..len).any(|k| dirs[k].is_none() || dirs[k] == dirs[(k + 1) % len]) {
        return Err(vec![NotAlternating]);
    }
    let mut seen = HashSet::with_capacity(len);
    if !points.iter().all(|p| seen.insert(*p)) {
        return Err(vec![SelfIntersecting]);
    }

    let mut verticals = Vec::with_capacity(len / 2);
    let mut horizontals = Vec::with_capacity(len / 2);
    for k in 0..len {
        let (a, b) = (points[k], points[(k + 1) % len]);
        match dirs[k] {
            Some(Dir::V) => verticals.push((a.0, a.1.min(b.1), a.1.max(b.1))),
            _ => horizontals.push((a.1, a.0.min(b.0), a.0.max(b.0))),
        }
    }
    let mut errors = line_errors(verticals.iter().map(|s| s.0), Line::Vertical);
    errors.extend(line_errors(horizontals.iter().map(|s| s.0), Line::Horizontal));
    if !errors.is_empty() {
        return Err(errors);
    }
    if sides_cross(&verticals, &horizontals) {
        return Err(vec![SelfIntersecting]);
    }
    let masks = point_records(points);
    let bad: Vec<_> = points
        .iter()
        .zip(&masks)
        .filter(|(_, m)| !m.exterior())
        .map(|(&p, _)| NotConvex(p))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Every line between the extreme ones must carry exactly one side. Only the
/// first missing line of each gap is reported.
fn line_errors(
    coords: impl Iterator<Item = i64>,
    line: fn(i64) -> Line,
) -> Vec<PermutominoError> {
    let mut sorted: Vec<i64> = coords.collect();
    sorted.sort_unstable();
    let mut errors = Vec::new();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            if errors.last() != Some(&PermutominoError::DuplicateSideOnLine(line(w[0]))) {
                errors.push(PermutominoError::DuplicateSideOnLine(line(w[0])));
            }
        } else if w[1] - 1 > w[0] {
            errors.push(PermutominoError::MissingSideOnLine(line(w[0] + 1)));
        }
    }
    errors
}

/// Sweep over x: does some vertical side meet a horizontal side lying
/// strictly between its endpoints? Assumes one side per line.
fn sides_cross(verticals: &[(i64, i64, i64)], horizontals: &[(i64, i64, i64)]) -> bool {
    // (x, phase, y or ylo, yhi): insert, then query, then remove at equal x
    let mut events: Vec<(i64, u8, i64, i64)> = Vec::with_capacity(verticals.len() + 2 * horizontals.len());
    for &(y, xlo, xhi) in horizontals {
        events.push((xlo, 0, y, 0));
        events.push((xhi, 2, y, 0));
    }
    for &(x, ylo, yhi) in verticals {
        events.push((x, 1, ylo, yhi));
    }
    events.sort_unstable();
    let mut active = BTreeSet::new();
    for (_, phase, a, b) in events {
        match phase {
            0 => {
                active.insert(a);
            }
            2 => {
                active.remove(&a);
            }
            _ => {
                if b.saturating_sub(a) > 1 && active.range(a + 1..b).next().is_some() {
                    return true;
                }
            }
        }
    }
    false
}

/// Record masks of an arbitrary point set, with strict inequalities.
pub fn point_records(points: &[Point]) -> Vec<RecordMask> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by_key(|&k| points[k].0);
    let mut masks = vec![RecordMask::default(); points.len()];
    // left-to-right, extrema over strictly smaller x
    let (mut max, mut min) = (i64::MIN, i64::MAX);
    for group in order.chunk_by(|&a, &b| points[a].0 == points[b].0) {
        for &k in group {
            masks[k].ul = points[k].1 >= max;
            masks[k].bl = points[k].1 <= min;
        }
        for &k in group {
            max = max.max(points[k].1);
            min = min.min(points[k].1);
        }
    }
    let (mut max, mut min) = (i64::MIN, i64::MAX);
    for group in order.rchunk_by(|&a, &b| points[a].0 == points[b].0) {
        for &k in group {
            masks[k].ur = points[k].1 >= max;
            masks[k].br = points[k].1 <= min;
        }
        for &k in group {
            max = max.max(points[k].1);
            min = min.min(points[k].1);
        }
    }
    masks
}

trait RChunkBy<T> {
    fn rchunk_by<F>(&self, pred: F) -> std::iter::Rev<std::slice::ChunkBy<'_, T, F>>
    where
        F: FnMut(&T, &T) -> bool;
}

impl<T> RChunkBy<T> for [T] {
    fn rchunk_by<F>(&self, pred: F) -> std::iter::Rev<std::slice::ChunkBy<'_, T, F>>
    where
        F: FnMut(&T, &T) -> bool,
    {
        self.chunk_by(pred).rev()
    }
}

fn report_for(points: &[Point]) -> ValidationReport {
    let masks = point_records(points);
    ValidationReport {
        size: points.len() / 2,
        directed: masks.iter().all(|m| m.ul || m.ur || m.br),
        parallelogram: masks.iter().all(|m| m.ul || m.br),
    }
}

fn canonicalize(mut points: Vec<Point>) -> Vec<Point> {
    let min_x = points.iter().map(|p| p.0).min().unwrap_or(0);
    let min_y = points.iter().map(|p| p.1).min().unwrap_or(0);
    for p in &mut points {
        *p = (p.0 - min_x, p.1 - min_y);
    }
    let len = points.len();
    let twice_area: i128 = (0..len)
        .map(|k| {
            let (a, b) = (points[k], points[(k + 1) % len]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum();
    if twice_area > 0 {
        points.reverse();
    }
    let start = (0..len)
        .filter(|&k| points[k].0 == 0)
        .max_by_key(|&k| points[k].1)
        .unwrap_or(0);
    points.rotate_left(start);
    points
}

/// Colors turnpoints black and white alternately, starting with black at the
/// bottom of the leftmost side, and reads the black points as a permutation.
/// Free fixed points whose black turnpoint lies on the upper walk become
/// colored; fixed points that are records sit there anyway.
pub fn phi(p: &Permutomino) -> Result<ColoredPermutation, PermutominoError> {
    let n = p.size();
    let t = p.turnpoints();
    let end = p.upper_walk_end();
    let mut values = vec![0usize; n];
    let mut colored = BTreeSet::new();
    // canonical order ends with the bottom of the leftmost side, so black
    // turnpoints sit at odd indices
    for k in (1..t.len()).step_by(2) {
        let (x, y) = t[k];
        let (col, row) = (x as usize, y as usize);
        if col >= n || row >= n || values[col] != 0 {
            return Err(PermutominoError::ReconstructionFailed(format!(
                "black turnpoint ({x}, {y}) does not fit an {n}x{n} permutation"
            )));
        }
        values[col] = row + 1;
        if col == row && k < end {
            colored.insert(col + 1);
        }
    }
    let perm = Permutation::new(values)
        .map_err(|e| PermutominoError::ReconstructionFailed(e.to_string()))?;
    let free = free_fixed_points(&perm);
    colored.retain(|i| free.contains(i));
    ColoredPermutation::new(perm, colored)
        .map_err(|e| PermutominoError::ReconstructionFailed(e.to_string()))
}

/// Rebuilds the permutomino whose image under [`phi`] is `cp`.
///
/// Black points on the upper walk (uncolored upper points that are not free
/// fixed points, and colored points) are visited left to right, the others
/// right to left; between consecutive black points `a`, `b` the white corner
/// is `(a.x, b.y)`. The result is validated and checked against `phi`.
pub fn phi_inverse(cp: &ColoredPermutation) -> Result<Permutomino, PermutominoError> {
    let perm = cp.perm();
    let n = perm.len();
    if n < 2 {
        return Err(PermutominoError::TooSmall);
    }
    let masks = classify_records(perm);
    if !masks.iter().all(RecordMask::exterior) {
        return Err(PermutominoError::NotSquare);
    }
    if perm.is_co_decomposable() {
        return Err(PermutominoError::NotCoIndecomposable);
    }
    let on_upper = |i: usize| {
        let m = masks[i - 1];
        let free_fixed = perm.value_at(i) == i && !m.bl && !m.ur;
        if free_fixed {
            cp.is_colored(i)
        } else {
            m.upper()
        }
    };
    let mut cycle: Vec<usize> = (2..n).filter(|&i| on_upper(i)).collect();
    cycle.push(n);
    cycle.extend((2..n).rev().filter(|&i| !on_upper(i)));
    cycle.push(1);

    let black = |i: usize| ((i - 1) as i64, (perm.value_at(i) - 1) as i64);
    let mut points = Vec::with_capacity(2 * n);
    for k in 0..n {
        let a = black(cycle[k]);
        let b = black(cycle[(k + 1) % n]);
        points.push(a);
        points.push((a.0, b.1));
    }
    let p = Permutomino::new(points).map_err(|errs| {
        PermutominoError::ReconstructionFailed(format!("invalid boundary: {errs:?}"))
    })?;
    if phi(&p).as_ref() != Ok(cp) {
        return Err(PermutominoError::ReconstructionFailed(format!(
            "phi does not invert on {cp}"
        )));
    }
    Ok(p)
}

/// `(upper sides, left sides)`: horizontal sides on the upper walk, which
/// runs clockwise from the highest point of the leftmost line to the highest
/// point of the rightmost line, and vertical sides on the left walk, which
/// runs clockwise from the leftmost point of the lowest line to the leftmost
/// point of the highest line.
pub fn side_profile(p: &Permutomino) -> (usize, usize) {
    let t = p.turnpoints();
    let len = t.len();
    let horizontal = |k: usize| t[k].1 == t[(k + 1) % len].1;
    let upper = (0..p.upper_walk_end()).filter(|&k| horizontal(k)).count();

    let min_y = t.iter().map(|q| q.1).min().unwrap_or(0);
    let max_y = t.iter().map(|q| q.1).max().unwrap_or(0);
    let leftmost_on = |y: i64| {
        (0..len)
            .filter(|&k| t[k].1 == y)
            .min_by_key(|&k| t[k].0)
            .unwrap_or(0)
    };
    let (from, to) = (leftmost_on(min_y), leftmost_on(max_y));
    let steps = (to + len - from) % len;
    let left = (0..steps)
        .map(|s| (from + s) % len)
        .filter(|&k| !horizontal(k))
        .count();
    (upper, left)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Point> {
        vec![(0, 1), (1, 1), (1, 0), (0, 0)]
    }

    // cells (0,0), (0,1), (1,0)
    fn l_tromino() -> Vec<Point> {
        vec![(0, 2), (1, 2), (1, 1), (2, 1), (2, 0), (0, 0)]
    }

    #[test]
    fn unit_square_validates() {
        let r = validate_permutomino(&unit_square()).unwrap();
        assert_eq!(
            r,
            ValidationReport {
                size: 2,
                directed: true,
                parallelogram: true
            }
        );
    }

    #[test]
    fn big_square_misses_an_inner_line() {
        let pts = vec![(0, 2), (2, 2), (2, 0), (0, 0)];
        let errs = validate_permutomino(&pts).unwrap_err();
        assert!(errs.contains(&PermutominoError::MissingSideOnLine(Line::Vertical(1))));
        assert!(errs.contains(&PermutominoError::MissingSideOnLine(Line::Horizontal(1))));
    }

    #[test]
    fn l_tromino_validates() {
        let r = validate_permutomino(&l_tromino()).unwrap();
        assert_eq!(r.size, 3);
        assert!(r.directed);
    }

    #[test]
    fn structural_errors() {
        use PermutominoError::*;
        assert_eq!(validate_permutomino(&[(0, 0), (1, 0), (1, 1)]), Err(vec![NotClosed]));
        assert_eq!(
            validate_permutomino(&[(0, 0), (2, 0), (1, 1), (0, 1)]),
            Err(vec![NotAlternating])
        );
        assert_eq!(
            validate_permutomino(&[(0, 1), (1, 1), (1, 0), (3, 0)]),
            Err(vec![NotClosed])
        );
        // two vertical sides on x = 1
        let errs =
            validate_permutomino(&[(0, 0), (0, 3), (1, 3), (1, 2), (2, 2), (2, 1), (1, 1), (1, 0)])
                .unwrap_err();
        assert!(errs.contains(&DuplicateSideOnLine(Line::Vertical(1))));
    }

    #[test]
    fn crossing_boundary_is_rejected() {
        // a figure-eight made of two unit-ish loops crossing at one point
        let pts = vec![(0, 0), (0, 2), (3, 2), (3, 1), (1, 1), (1, 3), (2, 3), (2, 0)];
        assert_eq!(
            validate_permutomino(&pts),
            Err(vec![PermutominoError::SelfIntersecting])
        );
    }

    #[test]
    fn non_convex_permutomino() {
        // notch in the top: both bottom corners of the notch are dominated
        let pts = vec![(0, 0), (0, 2), (1, 2), (1, 1), (2, 1), (2, 3), (3, 3), (3, 0)];
        let errs = validate_permutomino(&pts).unwrap_err();
        assert!(errs
            .iter()
            .all(|e| matches!(e, PermutominoError::NotConvex(_))));
        assert_eq!(
            errs,
            vec![
                PermutominoError::NotConvex((1, 1)),
                PermutominoError::NotConvex((2, 1))
            ]
        );
    }

    #[test]
    fn canonical_form_is_orientation_independent() {
        let mut ccw = l_tromino();
        ccw.reverse();
        ccw.rotate_left(2);
        let a = Permutomino::new(l_tromino()).unwrap();
        let b = Permutomino::new(ccw).unwrap();
        assert_eq!(a, b);
        let shifted: Vec<Point> = l_tromino().iter().map(|&(x, y)| (x + 5, y - 7)).collect();
        assert_eq!(Permutomino::new(shifted).unwrap(), a);
        assert_eq!(a.to_string(), "0,2;1,2;1,1;2,1;2,0;0,0");
        assert_eq!(a.to_string().parse::<Permutomino>().unwrap(), a);
    }

    #[test]
    fn phi_examples() {
        let sq = Permutomino::new(unit_square()).unwrap();
        assert_eq!(phi(&sq).unwrap().to_string(), "1,2");
        let tro = Permutomino::new(l_tromino()).unwrap();
        assert_eq!(phi(&tro).unwrap().to_string(), "1,3,2");
        let staircase = phi_inverse(&"1,2*,3".parse().unwrap()).unwrap();
        assert_eq!(phi(&staircase).unwrap().to_string(), "1,2*,3");
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(
            phi_inverse(&"1,2".parse().unwrap()).unwrap(),
            Permutomino::new(unit_square()).unwrap()
        );
        assert_eq!(
            phi_inverse(&"1,3,2".parse().unwrap()).unwrap(),
            Permutomino::new(l_tromino()).unwrap()
        );
        assert_eq!(
            phi_inverse(&"2,1".parse().unwrap()),
            Err(PermutominoError::NotCoIndecomposable)
        );
        assert_eq!(
            phi_inverse(&"2,5,3,1,4".parse().unwrap()),
            Err(PermutominoError::NotSquare)
        );
        assert_eq!(
            phi_inverse(&"1".parse().unwrap()),
            Err(PermutominoError::TooSmall)
        );
    }

    #[test]
    fn side_profiles() {
        assert_eq!(side_profile(&Permutomino::new(unit_square()).unwrap()), (1, 1));
        // the left side of this tromino is one straight side
        assert_eq!(side_profile(&Permutomino::new(l_tromino()).unwrap()), (2, 1));
    }
}
