//! Permutations viewed as point sets in the plane.
//!
//! A permutation `σ` of `{1..n}` is identified with the points
//! `(i, σ(i))`. Positions and values are 1-based throughout the public API,
//! matching one-line notation.
//!
//! A point is an *upper-right record* when no other point lies strictly above
//! and strictly to its right; the other three record directions are defined the
//! same way. Points that are a record in some direction are *exterior*, and a
//! permutation with no interior point is *square*.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("value {value} out of range 1..={len}")]
    OutOfRange { value: usize, len: usize },
    #[error("value {0} appears more than once")]
    Repeated(usize),
    #[error("position {0} cannot be colored: not a free fixed point")]
    InvalidColoring(usize),
    #[error("pattern is longer than the permutation")]
    PatternTooLong,
    #[error("syntax error in permutation text: {0}")]
    Syntax(String),
}

/// A bijection on `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, len: n });
            }
            if seen[v] {
                return Err(PermError::Repeated(v));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `σ(i)` for a 1-based position `i`.
    pub fn value_at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    pub fn records(&self) -> Vec<RecordMask> {
        classify_records(self)
    }

    /// Whether some proper prefix occupies the lowest values (a direct sum).
    pub fn is_decomposable(&self) -> bool {
        let mut max = 0;
        for (k, &v) in self.values[..self.len() - 1].iter().enumerate() {
            max = max.max(v);
            if max == k + 1 {
                return true;
            }
        }
        false
    }

    /// Whether some proper prefix occupies the highest values (a skew sum).
    pub fn is_co_decomposable(&self) -> bool {
        let n = self.len();
        let mut min = usize::MAX;
        for (k, &v) in self.values[..n - 1].iter().enumerate() {
            min = min.min(v);
            if min == n - k {
                return true;
            }
        }
        false
    }

    pub fn is_square(&self) -> bool {
        classify_records(self).iter().all(RecordMask::exterior)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cp: ColoredPermutation = s.parse()?;
        if !cp.colored().is_empty() {
            return Err(PermError::Syntax(
                "colored entries are not allowed here".into(),
            ));
        }
        Ok(cp.into_permutation())
    }
}

/// A permutation together with a subset of its free fixed points that are
/// colored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    perm: Permutation,
    colored: BTreeSet<usize>,
}

impl ColoredPermutation {
    pub fn new(perm: Permutation, colored: BTreeSet<usize>) -> Result<Self, PermError> {
        if !colored.is_empty() {
            let free = free_fixed_points(&perm);
            if let Some(&bad) = colored.iter().find(|&&i| !free.contains(&i)) {
                return Err(PermError::InvalidColoring(bad));
            }
        }
        Ok(Self { perm, colored })
    }

    pub fn uncolored(perm: Permutation) -> Self {
        Self {
            perm,
            colored: BTreeSet::new(),
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_permutation(self) -> Permutation {
        self.perm
    }

    pub fn colored(&self) -> &BTreeSet<usize> {
        &self.colored
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_colored(&self, i: usize) -> bool {
        self.colored.contains(&i)
    }
}

impl From<Permutation> for ColoredPermutation {
    fn from(perm: Permutation) -> Self {
        Self::uncolored(perm)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.perm.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            if self.colored.contains(&(i + 1)) {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ColoredPermutation {
    type Err = PermError;

    /// Parses `3,5,4,1,2`; a `*` suffix marks a colored entry, as in `1,2*,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Empty);
        }
        let mut values = Vec::new();
        let mut colored = BTreeSet::new();
        for (i, tok) in s.split(',').enumerate() {
            let tok = tok.trim();
            let (digits, star) = match tok.strip_suffix('*') {
                Some(d) => (d.trim_end(), true),
                None => (tok, false),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(PermError::Syntax(format!("bad entry {tok:?}")));
            }
            let v: usize = digits
                .parse()
                .map_err(|_| PermError::Syntax(format!("bad entry {tok:?}")))?;
            values.push(v);
            if star {
                colored.insert(i + 1);
            }
        }
        ColoredPermutation::new(Permutation::new(values)?, colored)
    }
}

/// Which of the four record predicates hold at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RecordMask {
    pub ul: bool,
    pub ur: bool,
    pub bl: bool,
    pub br: bool,
}

impl RecordMask {
    pub fn upper(&self) -> bool {
        self.ul || self.ur
    }

    pub fn left(&self) -> bool {
        self.ul || self.bl
    }

    pub fn exterior(&self) -> bool {
        self.ul || self.ur || self.bl || self.br
    }

    pub fn has(&self, corner: Corner) -> bool {
        match corner {
            Corner::UpperLeft => self.ul,
            Corner::UpperRight => self.ur,
            Corner::BottomLeft => self.bl,
            Corner::BottomRight => self.br,
        }
    }
}

/// One of the four record directions, also used to name the corner a
/// triangular permutation leaves empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    UpperLeft,
    UpperRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::UpperLeft,
        Corner::UpperRight,
        Corner::BottomLeft,
        Corner::BottomRight,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

/// Orientation of a parallel permutation: which two opposite record paths
/// carry all the points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diagonal {
    /// Every point is an upper-left or a bottom-right record.
    Main,
    /// Every point is an upper-right or a bottom-left record.
    Anti,
}

/// Classifies every point in one O(n) pass using running extrema from both
/// ends.
pub fn classify_records(perm: &Permutation) -> Vec<RecordMask> {
    let vals = perm.values();
    let n = vals.len();
    let mut masks = vec![RecordMask::default(); n];
    let (mut max, mut min) = (0usize, usize::MAX);
    for (m, &v) in masks.iter_mut().zip(vals) {
        m.ul = v > max;
        m.bl = v < min;
        max = max.max(v);
        min = min.min(v);
    }
    let (mut max, mut min) = (0usize, usize::MAX);
    for (m, &v) in masks.iter_mut().zip(vals).rev() {
        m.ur = v > max;
        m.br = v < min;
        max = max.max(v);
        min = min.min(v);
    }
    masks
}

/// Fixed points that are neither bottom-left nor upper-right records.
pub fn free_fixed_points(perm: &Permutation) -> BTreeSet<usize> {
    classify_records(perm)
        .iter()
        .enumerate()
        .filter(|&(i, m)| perm.values[i] == i + 1 && !m.bl && !m.ur)
        .map(|(i, _)| i + 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubclassReport {
    pub square: bool,
    /// Indexed by the excluded corner, in [`Corner::ALL`] order.
    pub triangular: [bool; 4],
    /// `[Main, Anti]`.
    pub parallel: [bool; 2],
    pub decomposable: bool,
    pub co_decomposable: bool,
    pub upper_count: usize,
    pub left_count: usize,
}

impl SubclassReport {
    /// Triangular with every point a record in one of the three directions
    /// other than `corner`. `BottomLeft` is the unrotated class.
    pub fn triangular_without(&self, corner: Corner) -> bool {
        self.triangular[corner.index()]
    }

    pub fn parallel_along(&self, diagonal: Diagonal) -> bool {
        match diagonal {
            Diagonal::Main => self.parallel[0],
            Diagonal::Anti => self.parallel[1],
        }
    }

    pub fn fully_indecomposable(&self) -> bool {
        !self.decomposable && !self.co_decomposable
    }
}

pub fn subclass_report(perm: &Permutation) -> SubclassReport {
    report_with_colors(perm, &BTreeSet::new())
}

/// Like [`subclass_report`], but colored points are left out of the upper and
/// left counts.
pub fn colored_subclass_report(cp: &ColoredPermutation) -> SubclassReport {
    report_with_colors(cp.perm(), cp.colored())
}

fn report_with_colors(perm: &Permutation, colored: &BTreeSet<usize>) -> SubclassReport {
    let masks = classify_records(perm);
    let square = masks.iter().all(RecordMask::exterior);
    let mut triangular = [false; 4];
    for corner in Corner::ALL {
        triangular[corner.index()] = masks.iter().all(|m| {
            Corner::ALL
                .iter()
                .any(|&c| c != corner && m.has(c))
        });
    }
    let parallel = [
        masks.iter().all(|m| m.ul || m.br),
        masks.iter().all(|m| m.ur || m.bl),
    ];
    let counted = |pred: fn(&RecordMask) -> bool| {
        masks
            .iter()
            .enumerate()
            .filter(|&(i, m)| pred(m) && !colored.contains(&(i + 1)))
            .count()
    };
    SubclassReport {
        square,
        triangular,
        parallel,
        decomposable: perm.is_decomposable(),
        co_decomposable: perm.is_co_decomposable(),
        upper_count: counted(RecordMask::upper),
        left_count: counted(RecordMask::left),
    }
}

/// The order-isomorphic permutation of `{1..k}`. Values must be distinct.
pub fn standardize(values: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&i| values[i]);
    let mut out = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank + 1;
    }
    Permutation { values: out }
}

/// Exhaustive containment test; exponential in the pattern length.
pub fn contains_pattern(perm: &Permutation, pattern: &Permutation) -> Result<bool, PermError> {
    contains_any_pattern(perm, std::slice::from_ref(pattern))
}

/// Whether `perm` contains at least one of `patterns`, which must share a
/// length.
pub fn contains_any_pattern(
    perm: &Permutation,
    patterns: &[Permutation],
) -> Result<bool, PermError> {
    let Some(k) = patterns.first().map(Permutation::len) else {
        return Ok(false);
    };
    if k > perm.len() {
        return Err(PermError::PatternTooLong);
    }
    let wanted: BTreeSet<&[usize]> = patterns.iter().map(|p| p.values()).collect();
    let n = perm.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = perm.values[i];
        }
        if wanted.contains(standardize(&buf).values()) {
            return Ok(true);
        }
        // next k-combination in lexicographic order
        let mut j = k;
        while j > 0 && idx[j - 1] == j - 1 + n - k {
            j -= 1;
        }
        if j == 0 {
            return Ok(false);
        }
        idx[j - 1] += 1;
        for l in j..k {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

/// The sixteen length-5 patterns whose avoidance characterizes square
/// permutations.
pub fn square_basis() -> Vec<Permutation> {
    [
        "14325", "14352", "15324", "15342", "24315", "24351", "25314", "25341", "41325", "41352",
        "42315", "42351", "51324", "51342", "52314", "52341",
    ]
    .iter()
    .map(|s| digits(s))
    .collect()
}

/// Basis of the triangular class that leaves the bottom-left corner empty.
pub fn triangular_basis() -> Vec<Permutation> {
    ["3214", "3241", "4213", "4231"]
        .iter()
        .map(|s| digits(s))
        .collect()
}

fn digits(s: &str) -> Permutation {
    Permutation {
        values: s.bytes().map(|b| (b - b'0') as usize).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Inverse,
    Reverse,
    Complement,
    /// Counterclockwise quarter turn.
    Rot90,
    Rot180,
    Rot270,
    /// Reflection through the anti-diagonal, `(x, y) -> (n+1-y, n+1-x)`.
    Antidiagonal,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Inverse,
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::Antidiagonal,
    ];

    fn map(self, n: usize, x: usize, y: usize) -> (usize, usize) {
        let r = |a: usize| n + 1 - a;
        match self {
            Symmetry::Identity => (x, y),
            Symmetry::Inverse => (y, x),
            Symmetry::Reverse => (r(x), y),
            Symmetry::Complement => (x, r(y)),
            Symmetry::Rot90 => (r(y), x),
            Symmetry::Rot180 => (r(x), r(y)),
            Symmetry::Rot270 => (y, r(x)),
            Symmetry::Antidiagonal => (r(y), r(x)),
        }
    }
}

pub fn transform(perm: &Permutation, symmetry: Symmetry) -> Permutation {
    let n = perm.len();
    let mut out = vec![0; n];
    for (i, &v) in perm.values.iter().enumerate() {
        let (x, y) = symmetry.map(n, i + 1, v);
        out[x - 1] = y;
    }
    Permutation { values: out }
}
