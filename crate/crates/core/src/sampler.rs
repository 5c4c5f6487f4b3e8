//! Seeded exact-uniform generation: marked words, then square permutations,
//! fully indecomposable ones and convex permutominoes by decoding until
//! success, then generic grid configurations built on top of those.
//!
//! # Random stream
//!
//! [`RngStream`] is SplitMix64 written in counter form. With
//! `G = 0x9E3779B97F4A7C15`, the `k`-th output (`k = 1, 2, ...`) of the stream
//! with seed `s` is `mix64(s + k*G)` (wrapping), where
//!
//! ```text
//! mix64(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!           return z ^ (z >> 31)
//! ```
//!
//! Integers below `k` are drawn by rejection: outputs `r < 2^64 mod k` are
//! discarded and `r mod k` is returned. Item `i` of a batch uses the seed
//! `mix64(seed ^ mix64(i + G))`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{decode_with_stats, DecodeMode, Horizontal, MarkedWord, Pair, Vertical};
use crate::perm::{classify_records, ColoredPermutation, Permutation, RecordMask};
use crate::permutomino::{phi_inverse, validate_permutomino, Permutomino, Point};
use crate::series::{binomial, count, CountFamily, SeriesError};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    counter: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(mix64(seed ^ mix64(index.wrapping_add(GOLDEN))))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform integer in `0..k`. Panics if `k == 0`.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "empty range");
        let threshold = k.wrapping_neg() % k;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % k;
            }
        }
    }

    fn below_usize(&mut self, k: usize) -> usize {
        self.below(k as u64) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("{0}")]
    Domain(String),
    #[error("{family} has no objects of size {n}")]
    EmptyFamily { family: SampleFamily, n: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleFamily {
    MarkedWords,
    Square,
    FullyIndec,
    ConvexPermutomino,
}

impl SampleFamily {
    pub const ALL: [SampleFamily; 4] = [
        SampleFamily::MarkedWords,
        SampleFamily::Square,
        SampleFamily::FullyIndec,
        SampleFamily::ConvexPermutomino,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SampleFamily::MarkedWords => "marked-words",
            SampleFamily::Square => "square",
            SampleFamily::FullyIndec => "fully-indec",
            SampleFamily::ConvexPermutomino => "convex-permutomino",
        }
    }

    pub fn count_family(self) -> CountFamily {
        match self {
            SampleFamily::MarkedWords => CountFamily::MarkedWords,
            SampleFamily::Square => CountFamily::Square,
            SampleFamily::FullyIndec => CountFamily::FullyIndec,
            SampleFamily::ConvexPermutomino => CountFamily::ConvexPermutomino,
        }
    }

    fn mode(self) -> DecodeMode {
        match self {
            SampleFamily::FullyIndec => DecodeMode::FullyIndec,
            SampleFamily::ConvexPermutomino => DecodeMode::Permutomino,
            _ => DecodeMode::Square,
        }
    }
}

impl std::fmt::Display for SampleFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SampleFamily {
    type Err = SamplerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SampleFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SamplerError::Domain(format!("unknown family {s:?}")))
    }
}

const U_LETTERS: [Horizontal; 2] = [Horizontal::U, Horizontal::D];

/// Uniform marked word of length `n >= 2`.
///
/// The index in `0..M_n` is drawn as mixed-radix digits: first a digit in
/// `0..n+2` splits the words by where the mark sits (digits `0..4`: an
/// endpoint, two words per interior choice; digit `4 + q`: interior position
/// `q + 2`, whose vertical letter is then `L`), then one base-4 or base-2 digit
/// per remaining letter. Each branch has exactly its share of `M_n`.
pub fn sample_marked_word(n: usize, rng: &mut RngStream) -> Result<MarkedWord, SamplerError> {
    if n < 2 {
        return Err(SamplerError::Domain(format!(
            "marked words need length at least 2, got {n}"
        )));
    }
    let head = rng.below_usize(n + 2);
    let mut letters = vec![Pair::FRAME; n];
    let mark = if head < 4 {
        if head.is_multiple_of(2) {
            1
        } else {
            n
        }
    } else {
        head - 2
    };
    for (k, slot) in letters.iter_mut().enumerate().take(n - 1).skip(1) {
        *slot = if k + 1 == mark {
            Pair::new(U_LETTERS[rng.below_usize(2)], Vertical::L)
        } else {
            Pair::INTERIOR[rng.below_usize(4)]
        };
    }
    Ok(MarkedWord::new(letters, mark).expect("sampled words are well formed"))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SampledObject {
    Word(MarkedWord),
    Perm(ColoredPermutation),
    Permutomino(Permutomino),
}

impl std::fmt::Display for SampledObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampledObject::Word(w) => w.fmt(f),
            SampledObject::Perm(p) => p.fmt(f),
            SampledObject::Permutomino(p) => p.fmt(f),
        }
    }
}

/// Work spent on one accepted sample.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SampleStats {
    /// Marked words drawn, including the accepted one.
    pub attempts: u64,
    /// Decoder row advances summed over all attempts.
    pub row_advances: u64,
}

pub fn sample_object(
    family: SampleFamily,
    n: usize,
    rng: &mut RngStream,
) -> Result<SampledObject, SamplerError> {
    sample_object_with_stats(family, n, rng).map(|(obj, _)| obj)
}

/// Draws uniform marked words until one decodes in the family's mode.
pub fn sample_object_with_stats(
    family: SampleFamily,
    n: usize,
    rng: &mut RngStream,
) -> Result<(SampledObject, SampleStats), SamplerError> {
    let mut stats = SampleStats::default();
    if family == SampleFamily::MarkedWords {
        stats.attempts = 1;
        return Ok((SampledObject::Word(sample_marked_word(n, rng)?), stats));
    }
    if n == 0 {
        return Err(SamplerError::Domain("size must be positive".into()));
    }
    if n == 1 && family != SampleFamily::ConvexPermutomino {
        let single = ColoredPermutation::uncolored(Permutation::identity(1));
        return Ok((SampledObject::Perm(single), stats));
    }
    // every other family is non-empty from size 2 on
    if family == SampleFamily::FullyIndec && n <= 3 {
        return Err(SamplerError::EmptyFamily { family, n });
    }
    loop {
        let word = sample_marked_word(n, rng)?;
        let (outcome, work) = decode_with_stats(&word, family.mode());
        stats.attempts += 1;
        stats.row_advances += work.row_advances as u64;
        if let Some(cp) = outcome.into_success() {
            let obj = match family {
                SampleFamily::ConvexPermutomino => SampledObject::Permutomino(
                    phi_inverse(&cp).expect("decoded permutomino codes invert"),
                ),
                _ => SampledObject::Perm(cp),
            };
            return Ok((obj, stats));
        }
    }
}

/// `count` samples, item `i` drawn from `RngStream::substream(seed, i)`.
pub fn sample_batch(
    family: SampleFamily,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<SampledObject>, SamplerError> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample_object(family, n, &mut RngStream::substream(seed, i)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchJson {
    pub family: SampleFamily,
    pub n: usize,
    pub seed: u64,
    pub items: Vec<String>,
}

pub fn batch_json(
    family: SampleFamily,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<BatchJson, SamplerError> {
    let items = sample_batch(family, n, count, seed)?
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok(BatchJson {
        family,
        n,
        seed,
        items,
    })
}

/// Uniform `k`-subset of `0..m`, sorted (Floyd's algorithm).
pub fn sample_subset(m: usize, k: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut chosen = BTreeSet::new();
    for j in m - k..m {
        let t = rng.below_usize(j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

/// `n` points in a grid of `cols x rows` lattice lines, on distinct columns
/// and rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub cols: usize,
    pub rows: usize,
    /// Sorted by column.
    pub points: Vec<Point>,
}

impl GridConfig {
    /// In bounds, generic, and every point a record.
    pub fn is_valid(&self) -> bool {
        let in_bounds = self
            .points
            .iter()
            .all(|&(x, y)| (0..self.cols as i64).contains(&x) && (0..self.rows as i64).contains(&y));
        in_bounds && pattern_of(&self.points).is_some_and(|p| classify_records(&p).iter().all(RecordMask::exterior))
    }
}

/// The permutation formed by points on distinct columns and rows.
fn pattern_of(points: &[Point]) -> Option<Permutation> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let mut ys: Vec<i64> = pts.iter().map(|p| p.1).collect();
    ys.sort_unstable();
    ys.dedup();
    if ys.len() != pts.len() || pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    let values = pts
        .iter()
        .map(|p| ys.binary_search(&p.1).unwrap() + 1)
        .collect();
    Permutation::new(values).ok()
}

/// A convex polygon whose `2n` turnpoints lie on `n` columns and `n` rows of
/// a `cols x rows` grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPolygon {
    pub cols: usize,
    pub rows: usize,
    /// Clockwise.
    pub turnpoints: Vec<Point>,
}

impl GridPolygon {
    pub fn is_valid(&self) -> bool {
        let in_bounds = self
            .turnpoints
            .iter()
            .all(|&(x, y)| (0..self.cols as i64).contains(&x) && (0..self.rows as i64).contains(&y));
        in_bounds && validate_permutomino(&compress(&self.turnpoints)).is_ok()
    }
}

fn compress(points: &[Point]) -> Vec<Point> {
    let ranks = |coord: fn(&Point) -> i64| {
        let mut v: Vec<i64> = points.iter().map(coord).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (xs, ys) = (ranks(|p| p.0), ranks(|p| p.1));
    points
        .iter()
        .map(|p| {
            (
                xs.binary_search(&p.0).unwrap() as i64,
                ys.binary_search(&p.1).unwrap() as i64,
            )
        })
        .collect()
}

fn check_grid(cols: usize, rows: usize, n: usize, min_n: usize) -> Result<(), SamplerError> {
    if n < min_n || n > cols.min(rows) {
        return Err(SamplerError::Domain(format!(
            "need {min_n} <= n <= min(cols, rows), got n = {n} in a {cols}x{rows} grid"
        )));
    }
    Ok(())
}

/// Uniform generic configuration of `n` exterior points.
pub fn sample_exterior_config(
    cols: usize,
    rows: usize,
    n: usize,
    rng: &mut RngStream,
) -> Result<GridConfig, SamplerError> {
    check_grid(cols, rows, n, 1)?;
    let SampledObject::Perm(cp) = sample_object(SampleFamily::Square, n, rng)? else {
        unreachable!("square sampling yields permutations")
    };
    let xs = sample_subset(cols, n, rng);
    let ys = sample_subset(rows, n, rng);
    let points = (0..n)
        .map(|i| (xs[i] as i64, ys[cp.perm().value_at(i + 1) - 1] as i64))
        .collect();
    Ok(GridConfig { cols, rows, points })
}

pub fn exact_generic_count(cols: usize, rows: usize, n: usize) -> Result<BigUint, SamplerError> {
    check_grid(cols, rows, n, 1)?;
    Ok(count(CountFamily::Square, n)? * binomial(cols as u64, n as u64) * binomial(rows as u64, n as u64))
}

/// Uniform generic convex polygon with `2n` turnpoints.
pub fn sample_convex_polygon(
    cols: usize,
    rows: usize,
    n: usize,
    rng: &mut RngStream,
) -> Result<GridPolygon, SamplerError> {
    check_grid(cols, rows, n, 2)?;
    let SampledObject::Permutomino(p) = sample_object(SampleFamily::ConvexPermutomino, n, rng)? else {
        unreachable!("permutomino sampling yields permutominoes")
    };
    let xs = sample_subset(cols, n, rng);
    let ys = sample_subset(rows, n, rng);
    let turnpoints = p
        .turnpoints()
        .iter()
        .map(|&(x, y)| (xs[x as usize] as i64, ys[y as usize] as i64))
        .collect();
    Ok(GridPolygon {
        cols,
        rows,
        turnpoints,
    })
}

pub fn exact_generic_polygon_count(cols: usize, rows: usize, n: usize) -> Result<BigUint, SamplerError> {
    check_grid(cols, rows, n, 2)?;
    Ok(count(CountFamily::ConvexPermutomino, n)?
        * binomial(cols as u64, n as u64)
        * binomial(rows as u64, n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn stream_matches_splitmix64() {
        // reference values of SplitMix64 seeded with 0
        let mut r = RngStream::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = RngStream::new(7);
        for k in [1u64, 2, 3, 10, 1 << 40, u64::MAX] {
            for _ in 0..100 {
                assert!(r.below(k) < k);
            }
        }
    }

    #[test]
    fn length_two_words() {
        let mut r = RngStream::new(1);
        let mut seen: HashMap<String, u32> = HashMap::new();
        for _ in 0..1000 {
            *seen.entry(sample_marked_word(2, &mut r).unwrap().to_string()).or_default() += 1;
        }
        assert_eq!(seen.len(), 2);
        assert!(seen.contains_key("XY,XY@1") && seen.contains_key("XY,XY@2"));
        assert!(sample_marked_word(1, &mut r).is_err());
    }

    #[test]
    fn samples_lie_in_their_family() {
        let mut r = RngStream::new(3);
        for n in 1..12 {
            let SampledObject::Perm(cp) = sample_object(SampleFamily::Square, n, &mut r).unwrap() else {
                panic!()
            };
            assert!(cp.perm().is_square());
        }
        assert!(matches!(
            sample_object(SampleFamily::FullyIndec, 3, &mut r),
            Err(SamplerError::EmptyFamily { .. })
        ));
        let SampledObject::Permutomino(p) =
            sample_object(SampleFamily::ConvexPermutomino, 6, &mut r).unwrap()
        else {
            panic!()
        };
        assert_eq!(p.size(), 6);
    }

    #[test]
    fn batches_are_deterministic() {
        let a = batch_json(SampleFamily::Square, 9, 20, 42).unwrap();
        let b = batch_json(SampleFamily::Square, 9, 20, 42).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = batch_json(SampleFamily::Square, 9, 20, 43).unwrap();
        assert_ne!(a.items, c.items);
    }

    #[test]
    fn grid_samples_validate() {
        let mut r = RngStream::new(11);
        for _ in 0..50 {
            assert!(sample_exterior_config(10, 8, 5, &mut r).unwrap().is_valid());
            assert!(sample_convex_polygon(10, 8, 5, &mut r).unwrap().is_valid());
        }
        assert_eq!(exact_generic_count(5, 5, 3).unwrap(), BigUint::from(600u32));
        assert_eq!(exact_generic_polygon_count(4, 4, 2).unwrap(), BigUint::from(36u32));
        assert!(exact_generic_count(2, 5, 3).is_err());
        assert!(sample_convex_polygon(5, 5, 1, &mut r).is_err());
    }

    #[test]
    fn subsets_are_sorted_and_distinct() {
        let mut r = RngStream::new(5);
        let s = sample_subset(10, 10, &mut r);
        assert_eq!(s, (0..10).collect::<Vec<_>>());
        let s = sample_subset(1000, 50, &mut r);
        assert!(s.windows(2).all(|w| w[0] < w[1]) && s.len() == 50);
    }
}
