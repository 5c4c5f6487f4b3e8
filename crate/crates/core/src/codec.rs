//! Horizontal/vertical encoding of colored square permutations into marked
//! words, and the left-to-right decoder.
//!
//! A marked word of length `n` is a biword `(u_1,v_1)..(u_n,v_n)` whose first
//! and last letters are `(X,Y)` and whose interior letters are drawn from
//! `{U,D} x {L,R}`, together with a mark `m` such that `v_m` is `L` or `Y`.
//! The `u` word labels columns left to right, the `v` word labels rows bottom
//! to top, and the mark is the row of the leftmost point.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{classify_records, ColoredPermutation, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid mark: {0}")]
    InvalidMark(String),
    #[error("word must start and end with XY and have length at least 2")]
    BadFrame,
    #[error("letter {0} is not an interior letter")]
    BadLetter(usize),
    #[error("permutation is not square")]
    NotSquare,
    #[error("permutations of size 1 have no marked word")]
    TooShort,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Horizontal {
    X,
    U,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertical {
    Y,
    L,
    R,
}

impl Vertical {
    fn left_or_end(self) -> bool {
        matches!(self, Vertical::L | Vertical::Y)
    }

    fn right_or_end(self) -> bool {
        matches!(self, Vertical::R | Vertical::Y)
    }
}

/// One letter of the biword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub h: Horizontal,
    pub v: Vertical,
}

impl Pair {
    pub const FRAME: Pair = Pair {
        h: Horizontal::X,
        v: Vertical::Y,
    };

    pub const fn new(h: Horizontal, v: Vertical) -> Self {
        Self { h, v }
    }

    pub fn is_interior(&self) -> bool {
        self.h != Horizontal::X && self.v != Vertical::Y
    }

    /// The four interior letters.
    pub const INTERIOR: [Pair; 4] = [
        Pair::new(Horizontal::U, Vertical::L),
        Pair::new(Horizontal::U, Vertical::R),
        Pair::new(Horizontal::D, Vertical::L),
        Pair::new(Horizontal::D, Vertical::R),
    ];
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.h, self.v)
    }
}

impl FromStr for Pair {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = s.as_bytes();
        if b.len() != 2 {
            return Err(CodecError::Syntax(format!("bad letter {s:?}")));
        }
        let pair = match (b[0], b[1]) {
            (b'X', b'Y') => return Ok(Pair::FRAME),
            (b'U', v) => (Horizontal::U, v),
            (b'D', v) => (Horizontal::D, v),
            _ => return Err(CodecError::Syntax(format!("bad letter {s:?}"))),
        };
        let v = match pair.1 {
            b'L' => Vertical::L,
            b'R' => Vertical::R,
            _ => return Err(CodecError::Syntax(format!("bad letter {s:?}"))),
        };
        Ok(Pair::new(pair.0, v))
    }
}

/// An element of the marked-word family. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MarkedWordJson", into = "MarkedWordJson")]
pub struct MarkedWord {
    letters: Vec<Pair>,
    mark: usize,
}

impl MarkedWord {
    pub fn new(letters: Vec<Pair>, mark: usize) -> Result<Self, CodecError> {
        let n = letters.len();
        if n < 2 || letters[0] != Pair::FRAME || letters[n - 1] != Pair::FRAME {
            return Err(CodecError::BadFrame);
        }
        if let Some(i) = (1..n - 1).find(|&i| !letters[i].is_interior()) {
            return Err(CodecError::BadLetter(i + 1));
        }
        if mark == 0 || mark > n {
            return Err(CodecError::InvalidMark(format!(
                "mark {mark} out of range 1..={n}"
            )));
        }
        if !letters[mark - 1].v.left_or_end() {
            return Err(CodecError::InvalidMark(format!(
                "v_{mark} = {:?}, expected L or Y",
                letters[mark - 1].v
            )));
        }
        Ok(Self { letters, mark })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Pair] {
        &self.letters
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn u(&self, i: usize) -> Horizontal {
        self.letters[i - 1].h
    }

    pub fn v(&self, j: usize) -> Vertical {
        self.letters[j - 1].v
    }

    /// Number of `U` and `X` letters, and number of `L` and `Y` letters.
    pub fn weight(&self) -> (usize, usize) {
        let x = self
            .letters
            .iter()
            .filter(|p| p.h != Horizontal::D)
            .count();
        let y = self
            .letters
            .iter()
            .filter(|p| p.v.left_or_end())
            .count();
        (x, y)
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "@{}", self.mark)
    }
}

impl FromStr for MarkedWord {
    type Err = CodecError;

    /// Grammar: `word := pair (',' pair)* '@' INT`, `pair := 'XY' | [UD][LR]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (body, mark) = s
            .rsplit_once('@')
            .ok_or_else(|| CodecError::Syntax("missing '@mark'".into()))?;
        if mark.is_empty() || !mark.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CodecError::Syntax(format!("bad mark {mark:?}")));
        }
        let mark: usize = mark
            .parse()
            .map_err(|_| CodecError::InvalidMark(format!("mark {mark} out of range")))?;
        let letters = body
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Pair>, _>>()?;
        MarkedWord::new(letters, mark)
    }
}

#[derive(Serialize, Deserialize)]
struct MarkedWordJson {
    letters: Vec<String>,
    mark: usize,
}

impl From<MarkedWord> for MarkedWordJson {
    fn from(w: MarkedWord) -> Self {
        Self {
            letters: w.letters.iter().map(Pair::to_string).collect(),
            mark: w.mark,
        }
    }
}

impl TryFrom<MarkedWordJson> for MarkedWord {
    type Error = CodecError;

    fn try_from(j: MarkedWordJson) -> Result<Self, Self::Error> {
        let letters = j
            .letters
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Pair>, _>>()?;
        MarkedWord::new(letters, j.mark)
    }
}

/// Code of a colored square permutation.
///
/// `u_i = U` iff point `i` is an uncolored upper point, `v_j = L` iff the
/// point in row `j` is an uncolored left point, and the mark is `σ(1)`.
pub fn encode(cp: &ColoredPermutation) -> Result<MarkedWord, CodecError> {
    let perm = cp.perm();
    let n = perm.len();
    if n < 2 {
        return Err(CodecError::TooShort);
    }
    let masks = classify_records(perm);
    if !masks.iter().all(|m| m.exterior()) {
        return Err(CodecError::NotSquare);
    }
    let mut colored = vec![false; n + 1];
    for &i in cp.colored() {
        colored[i] = true;
    }
    let vals = perm.values();
    let mut letters = vec![Pair::FRAME; n];
    for i in 2..n {
        letters[i - 1].h = if masks[i - 1].upper() && !colored[i] {
            Horizontal::U
        } else {
            Horizontal::D
        };
    }
    for (i, &row) in vals.iter().enumerate() {
        if row == 1 || row == n {
            continue;
        }
        letters[row - 1].v = if masks[i].left() && !colored[i + 1] {
            Vertical::L
        } else {
            Vertical::R
        };
    }
    MarkedWord::new(letters, vals[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DecodeMode {
    /// Square permutations.
    Square,
    /// Square permutations that are neither decomposable nor co-decomposable.
    FullyIndec,
    /// Colored co-indecomposable square permutations (convex permutominoes).
    Permutomino,
}

impl DecodeMode {
    pub const ALL: [DecodeMode; 3] = [
        DecodeMode::Square,
        DecodeMode::FullyIndec,
        DecodeMode::Permutomino,
    ];
}

/// Which corner the partial permutation was confined to when decoding stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FailureKind {
    /// Prefix occupies the bottom-left `(i-1) x (i-1)` block.
    SouthWest,
    /// Prefix occupies the top-left `(i-1) x (i-1)` block.
    NorthWest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeFailure {
    /// Column whose insertion was rejected.
    pub stop_index: usize,
    pub kind: FailureKind,
    /// The partial permutation of length `stop_index - 1`, standardized for
    /// north-west failures.
    pub prefix: Permutation,
    /// `(u_i, v_i)` for south-west failures, `(u_i, v_{n-i+1})` for north-west
    /// ones.
    pub pair: Pair,
    pub suffix_u: Vec<Horizontal>,
    pub suffix_v: Vec<Vertical>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Success(ColoredPermutation),
    Failure(DecodeFailure),
    InternalContradiction(String),
}

impl DecodeOutcome {
    pub fn success(&self) -> Option<&ColoredPermutation> {
        match self {
            DecodeOutcome::Success(cp) => Some(cp),
            _ => None,
        }
    }

    pub fn into_success(self) -> Option<ColoredPermutation> {
        match self {
            DecodeOutcome::Success(cp) => Some(cp),
            _ => None,
        }
    }
}

/// Work counters collected during one decode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    /// Rows examined by the four cursor searches.
    pub row_advances: usize,
}

pub fn decode(word: &MarkedWord, mode: DecodeMode) -> DecodeOutcome {
    decode_with_stats(word, mode).0
}

pub fn decode_with_stats(word: &MarkedWord, mode: DecodeMode) -> (DecodeOutcome, DecodeStats) {
    let mut d = Decoder::new(word, mode);
    let outcome = d.run();
    (
        outcome,
        DecodeStats {
            row_advances: d.advances,
        },
    )
}

/// Decoder state. Rows are 1-based, bottom to top; `0` means "unset" for the
/// right-hand cursors.
struct Decoder<'a> {
    word: &'a MarkedWord,
    mode: DecodeMode,
    n: usize,
    used: Vec<bool>,
    sigma: Vec<usize>,
    colored: BTreeSet<usize>,
    // cursors of the left-upper, left-lower, right-upper and right-lower paths
    lu: usize,
    ll: usize,
    ru: usize,
    rl: usize,
    prefix_min: usize,
    prefix_max: usize,
    row_sum: usize,
    advances: usize,
}

impl<'a> Decoder<'a> {
    fn new(word: &'a MarkedWord, mode: DecodeMode) -> Self {
        let n = word.len();
        Self {
            word,
            mode,
            n,
            used: vec![false; n + 1],
            sigma: Vec::with_capacity(n),
            colored: BTreeSet::new(),
            lu: 0,
            ll: 0,
            ru: 0,
            rl: 0,
            prefix_min: usize::MAX,
            prefix_max: 0,
            row_sum: 0,
            advances: 0,
        }
    }

    fn insert(&mut self, row: usize) {
        self.used[row] = true;
        self.sigma.push(row);
        self.prefix_min = self.prefix_min.min(row);
        self.prefix_max = self.prefix_max.max(row);
        self.row_sum += row;
        if row == self.n && self.ru == 0 {
            self.ru = row;
        }
        if row == 1 && self.rl == 0 {
            self.rl = row;
        }
    }

    fn max_inserted(&self) -> bool {
        self.used[self.n]
    }

    fn min_inserted(&self) -> bool {
        self.used[1]
    }

    /// Prefix of length `i-1` fills rows `n-i+2..=n`.
    fn top_left_confined(&self, i: usize) -> bool {
        self.prefix_min == self.n + 2 - i
    }

    /// Prefix of length `i-1` fills rows `1..=i-1`.
    fn bottom_left_confined(&self, i: usize) -> bool {
        self.prefix_max == i - 1
    }

    fn search_up(&mut self, from: usize, accept: fn(Vertical) -> bool) -> Option<usize> {
        let mut r = from + 1;
        while r <= self.n {
            self.advances += 1;
            if !self.used[r] && accept(self.word.v(r)) {
                return Some(r);
            }
            r += 1;
        }
        None
    }

    fn search_down(&mut self, from: usize, accept: fn(Vertical) -> bool) -> Option<usize> {
        let mut r = from;
        while r > 1 {
            r -= 1;
            self.advances += 1;
            if !self.used[r] && accept(self.word.v(r)) {
                return Some(r);
            }
        }
        None
    }

    fn north_west(&self, i: usize, h: Horizontal) -> DecodeOutcome {
        let n = self.n;
        let shift = n + 1 - i;
        let prefix = Permutation::new(self.sigma.iter().map(|&r| r - shift).collect())
            .expect("confined prefix standardizes to a permutation");
        DecodeOutcome::Failure(DecodeFailure {
            stop_index: i,
            kind: FailureKind::NorthWest,
            prefix,
            pair: Pair::new(h, self.word.v(n + 1 - i)),
            suffix_u: (i + 1..=n).map(|k| self.word.u(k)).collect(),
            suffix_v: (1..=n - i).map(|k| self.word.v(k)).collect(),
        })
    }

    fn south_west(&self, i: usize, h: Horizontal) -> DecodeOutcome {
        let n = self.n;
        let prefix =
            Permutation::new(self.sigma.clone()).expect("confined prefix is a permutation");
        DecodeOutcome::Failure(DecodeFailure {
            stop_index: i,
            kind: FailureKind::SouthWest,
            prefix,
            pair: Pair::new(h, self.word.v(i)),
            suffix_u: (i + 1..=n).map(|k| self.word.u(k)).collect(),
            suffix_v: (i + 1..=n).map(|k| self.word.v(k)).collect(),
        })
    }

    fn contradiction(&self, i: usize, rule: &str) -> DecodeOutcome {
        DecodeOutcome::InternalContradiction(format!(
            "no admissible row for column {i} under rule {rule} (word {})",
            self.word
        ))
    }

    fn run(&mut self) -> DecodeOutcome {
        let n = self.n;
        let m = self.word.mark();
        self.lu = m;
        self.ll = m;
        self.insert(m);

        for i in 2..=n {
            if i == n {
                let row = n * (n + 1) / 2 - self.row_sum;
                match self.mode {
                    DecodeMode::FullyIndec if row == n => {
                        return self.south_west(i, Horizontal::X)
                    }
                    DecodeMode::FullyIndec | DecodeMode::Permutomino if row == 1 => {
                        return self.north_west(i, Horizontal::X)
                    }
                    _ => {}
                }
                self.insert(row);
                break;
            }

            let h = self.word.u(i);
            match h {
                Horizontal::U if !self.max_inserted() => {
                    if self.mode == DecodeMode::FullyIndec && self.bottom_left_confined(i) {
                        return self.south_west(i, h);
                    }
                    // row n is unused and labeled Y, so the search succeeds on valid words
                    let Some(j) = self.search_up(self.lu, Vertical::left_or_end) else {
                        return self.contradiction(i, "2");
                    };
                    self.insert(j);
                    self.lu = j;
                }
                Horizontal::U => {
                    if self.top_left_confined(i) {
                        if self.mode != DecodeMode::Square {
                            return self.north_west(i, h);
                        }
                        let r = n + 1 - i;
                        if !self.word.v(r).left_or_end() {
                            return self.north_west(i, h);
                        }
                        self.insert(r);
                        self.ru = r;
                        self.ll = r;
                    } else {
                        let Some(j) = self.search_down(self.ru, Vertical::right_or_end) else {
                            return self.contradiction(i, "3");
                        };
                        self.insert(j);
                        self.ru = j;
                    }
                }
                Horizontal::D if !self.min_inserted() => {
                    let confined = self.top_left_confined(i);
                    if confined && self.mode != DecodeMode::Square {
                        return self.north_west(i, h);
                    }
                    let Some(j) = self.search_down(self.ll, Vertical::left_or_end) else {
                        return self.contradiction(i, "4");
                    };
                    if confined && j == n + 1 - i {
                        return self.north_west(i, h);
                    }
                    self.insert(j);
                    self.ll = j;
                }
                Horizontal::D => {
                    let confined = self.bottom_left_confined(i);
                    if confined && self.mode != DecodeMode::Permutomino {
                        return self.south_west(i, h);
                    }
                    let Some(j) = self.search_up(self.rl, Vertical::right_or_end) else {
                        return self.contradiction(i, "5");
                    };
                    if confined {
                        if j != i {
                            return self.south_west(i, h);
                        }
                        self.colored.insert(i);
                    }
                    self.insert(j);
                    self.rl = j;
                }
                Horizontal::X => return self.contradiction(i, "frame"),
            }
        }

        let perm = match Permutation::new(std::mem::take(&mut self.sigma)) {
            Ok(p) => p,
            Err(e) => return DecodeOutcome::InternalContradiction(e.to_string()),
        };
        match ColoredPermutation::new(perm, std::mem::take(&mut self.colored)) {
            Ok(cp) => DecodeOutcome::Success(cp),
            Err(e) => DecodeOutcome::InternalContradiction(e.to_string()),
        }
    }
}
