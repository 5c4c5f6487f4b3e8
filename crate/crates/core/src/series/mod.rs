//! Exact counting: closed-form counts with big integers and truncated
//! generating series in `t` whose coefficients are polynomials in `x`, `y`.
//!
//! In every refined series `x` marks upper points (or `U`/`X` letters, or
//! upper sides) and `y` marks left points (or `L`/`Y` letters, or left
//! sides). No floating point is used anywhere in this module.

mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{family:?} is not defined for n = {n} (needs n >= {min})")]
    Domain {
        family: CountFamily,
        n: usize,
        min: usize,
    },
    #[error("series order must be at least {0}")]
    OrderTooSmall(usize),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CountFamily {
    Square,
    Triangular,
    Parallel,
    FullyIndec,
    MarkedWords,
    ConvexPermutomino,
    DirectedPermutomino,
    ParallelogramPermutomino,
}

impl CountFamily {
    pub const ALL: [CountFamily; 8] = [
        CountFamily::Square,
        CountFamily::Triangular,
        CountFamily::Parallel,
        CountFamily::FullyIndec,
        CountFamily::MarkedWords,
        CountFamily::ConvexPermutomino,
        CountFamily::DirectedPermutomino,
        CountFamily::ParallelogramPermutomino,
    ];

    /// Smallest size for which the family is defined.
    pub fn min_size(self) -> usize {
        match self {
            CountFamily::Square
            | CountFamily::Triangular
            | CountFamily::Parallel
            | CountFamily::FullyIndec => 1,
            _ => 2,
        }
    }

    pub fn is_permutomino(self) -> bool {
        matches!(
            self,
            CountFamily::ConvexPermutomino
                | CountFamily::DirectedPermutomino
                | CountFamily::ParallelogramPermutomino
        )
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// `k * 2^(2n-5)`, exact for every `n >= 2` that occurs here.
fn times_pow2(k: u64, n: u64) -> BigInt {
    BigInt::from(k) * (BigInt::one() << (2 * n)) / 32
}

/// Number of objects of size `n` in `family`.
pub fn count(family: CountFamily, n: usize) -> Result<BigUint, SeriesError> {
    if n < family.min_size() {
        return Err(SeriesError::Domain {
            family,
            n,
            min: family.min_size(),
        });
    }
    let m = n as u64;
    let big = |b: BigUint| BigInt::from(b);
    let value: BigInt = match family {
        CountFamily::Square => match n {
            1 => BigInt::one(),
            2 => BigInt::from(2),
            _ => times_pow2(m + 2, m) - BigInt::from(4 * (2 * m - 5)) * big(binomial(2 * m - 6, m - 3)),
        },
        CountFamily::ConvexPermutomino => {
            times_pow2(m + 2, m) - BigInt::from(2 * m - 3) * big(binomial(2 * m - 4, m - 2))
        }
        CountFamily::FullyIndec => match n {
            1 => BigInt::one(),
            _ => times_pow2(m, m) - BigInt::from(2 * m - 3) * big(binomial(2 * m - 4, m - 2)),
        },
        CountFamily::MarkedWords => times_pow2(m + 2, m),
        CountFamily::Triangular => big(binomial(2 * m - 2, m - 1)),
        CountFamily::Parallel => big(catalan(m)),
        CountFamily::DirectedPermutomino => big(binomial(2 * m - 2, m - 1) / 2u32),
        CountFamily::ParallelogramPermutomino => big(catalan(m - 1)),
    };
    Ok(value
        .to_biguint()
        .expect("closed-form counts are non-negative"))
}

/// Power series in `t` truncated after `t^order`, with polynomial
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Poly>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::term(order, 0, Poly::one())
    }

    /// `p * t^k`.
    pub fn term(order: usize, k: usize, p: Poly) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = p;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Poly>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Poly::zero());
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[t^n]`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Poly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<Poly> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Poly::zero());
        Self { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, p: &Poly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| c.abs().is_one())
            .ok_or(SeriesError::NotInvertible)?;
        let order = self.order();
        let mut inv = vec![Poly::zero(); order + 1];
        inv[0] = Poly::constant(a0.clone());
        for n in 1..=order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv[n - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &inv[n - k]);
                }
            }
            // b_n = -a0^{-1} * acc, and a0^{-1} = a0
            inv[n] = acc.scale(&-a0.clone());
        }
        Ok(Self { coeffs: inv })
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficients at `x = y = 1`.
    pub fn at_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(Poly::at_one).collect()
    }

    /// JSON form: `{"order": N, "coeffs": {"n": {"a": {"b": "c"}}}}` mapping
    /// `t` power, `x` exponent and `y` exponent to a decimal coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let mut outer = BTreeMap::new();
        for (n, p) in self.coeffs.iter().enumerate() {
            let mut by_x: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
            for ((a, b), c) in p.terms() {
                by_x.entry(a.to_string())
                    .or_default()
                    .insert(b.to_string(), c.to_string());
            }
            outer.insert(n.to_string(), by_x);
        }
        serde_json::json!({ "order": self.order(), "coeffs": outer })
    }
}

impl fmt::Display for BivariateSeries {
    /// One line per power of `t`: `t^3: 3*x^3*y^3 + x^3*y^2 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, p) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{n}: {p}")?;
        }
        Ok(())
    }
}

fn t_times(order: usize, p: Poly) -> BivariateSeries {
    BivariateSeries::term(order, 1, p)
}

fn xy() -> Poly {
    Poly::monomial(1, 1, 1)
}

/// `1 + c` for a series `c` without constant term.
fn one_plus(c: &BivariateSeries) -> BivariateSeries {
    BivariateSeries::one(c.order()).add(c)
}

fn one_minus(c: &BivariateSeries) -> BivariateSeries {
    BivariateSeries::one(c.order()).sub(c)
}

/// The Narayana series, the unique solution of `N = t (1 + xN)(1 + yN)`,
/// computed by fixed-point iteration; `order` iterations fix every
/// coefficient up to `t^order`.
pub fn narayana_series(order: usize) -> BivariateSeries {
    let mut n = BivariateSeries::zero(order);
    let t = t_times(order, Poly::one());
    for _ in 0..order {
        let a = one_plus(&n.scale(&Poly::x()));
        let b = one_plus(&n.scale(&Poly::y()));
        n = t.mul(&a).mul(&b);
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSeries {
    /// Words over the four interior letters.
    W,
    /// Marked words.
    M,
}

pub fn w_series(order: usize) -> BivariateSeries {
    let step = t_times(order, &(&Poly::one() + &Poly::x()) * &(&Poly::one() + &Poly::y()));
    one_minus(&step)
        .inverse()
        .expect("constant term is 1")
}

/// `M = 2 (txy) W (txy) + (txy) W (t(1+x)y) W (txy)`: the mark sits either on
/// an end letter `Y` or on an interior `L`.
pub fn m_series(order: usize) -> BivariateSeries {
    let w = w_series(order);
    let txy = t_times(order, xy());
    let marked = t_times(order, (&Poly::one() + &Poly::x()).shift(0, 1));
    let ends = txy.mul(&w).mul(&txy).scale(&Poly::constant(2));
    let interior = txy.mul(&w).mul(&marked).mul(&w).mul(&txy);
    ends.add(&interior)
}

pub fn base_series(which: BaseSeries, order: usize) -> Result<BivariateSeries, SeriesError> {
    if order < 2 {
        return Err(SeriesError::OrderTooSmall(2));
    }
    Ok(match which {
        BaseSeries::W => w_series(order),
        BaseSeries::M => m_series(order),
    })
}

/// Sign of the `xy` term in the denominator factor `1 + (x + y ∓ xy) N` of
/// the north-west triangular series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NwDenominator {
    /// `1 + (x + y - xy) N`, the correct form.
    MinusXy,
    /// `1 + (x + y + xy) N`; kept only as a negative control.
    PlusXy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxSeries {
    /// Triangular permutations missing the bottom-right path, by upper and
    /// left points.
    TNw,
    /// Modified south-west triangular series used in the square refinement.
    TSwTilde,
}

pub fn aux_series(which: AuxSeries, order: usize) -> Result<BivariateSeries, SeriesError> {
    if order < 1 {
        return Err(SeriesError::OrderTooSmall(1));
    }
    Ok(match which {
        AuxSeries::TNw => t_nw_series(order, NwDenominator::MinusXy),
        AuxSeries::TSwTilde => t_sw_tilde_series(order),
    })
}

/// `xy N / ((1 - xy N)(1 + (x + y - xy) N))` with `N = N(t; x, y)`.
pub fn t_nw_series(order: usize, denominator: NwDenominator) -> BivariateSeries {
    let n = narayana_series(order);
    let xy_n = n.scale(&xy());
    let lin = match denominator {
        NwDenominator::MinusXy => &(&Poly::x() + &Poly::y()) - &xy(),
        NwDenominator::PlusXy => &(&Poly::x() + &Poly::y()) + &xy(),
    };
    let den = one_minus(&xy_n).mul(&one_plus(&n.scale(&lin)));
    xy_n.mul(&den.inverse().expect("constant term is 1"))
}

/// `xy N' / ((1 - y N')(1 + N'))` with `N' = N(t; xy, 1)`.
pub fn t_sw_tilde_series(order: usize) -> BivariateSeries {
    let n = narayana_series(order).map_coeffs(Poly::substitute_xy_one);
    let den = one_minus(&n.scale(&Poly::y())).mul(&one_plus(&n));
    n.scale(&xy()).mul(&den.inverse().expect("constant term is 1"))
}

/// Square permutations by size, upper points and left points:
/// `Sq = M - T̃sw · t(1+y) · W · txy - Tnw · t(x+y) · W · txy`.
pub fn sq_refined_series(order: usize) -> Result<BivariateSeries, SeriesError> {
    if order < 2 {
        return Err(SeriesError::OrderTooSmall(2));
    }
    let w = w_series(order);
    let txy = t_times(order, xy());
    let tail = w.mul(&txy);
    let sw = t_sw_tilde_series(order)
        .mul(&t_times(order, &Poly::one() + &Poly::y()))
        .mul(&tail);
    let nw = t_nw_series(order, NwDenominator::MinusXy)
        .mul(&t_times(order, &Poly::x() + &Poly::y()))
        .mul(&tail);
    let mut sq = m_series(order).sub(&sw).sub(&nw);
    // the single-point permutation is outside the marked-word picture
    sq.coeffs[1] = xy();
    Ok(sq)
}

/// Checks `S(txy; 1/y, 1/x) = xy S(t; x, y)` coefficientwise up to the
/// truncation order. The substitution maps `t^n x^a y^b` to
/// `t^n x^(n-b) y^(n-a)`, which is polynomial as long as `a, b <= n`.
pub fn reciprocity_holds(series: &BivariateSeries) -> bool {
    series.coeffs().iter().enumerate().all(|(n, p)| {
        let n = n as u32;
        let mut image = Poly::zero();
        for ((a, b), c) in p.terms() {
            if a > n || b > n {
                return false;
            }
            image.add_term(n - b, n - a, c.clone());
        }
        image == p.shift(1, 1)
    })
}

pub fn narayana_reciprocity_check(order: usize) -> bool {
    reciprocity_holds(&narayana_series(order))
}

/// Refined series for families whose refined closed forms are not
/// assembled here; coefficients come from exhaustive enumeration.
pub fn refined_series_oracle(
    family: CountFamily,
    order: usize,
) -> Result<BivariateSeries, SeriesError> {
    let mut coeffs = vec![Poly::zero()];
    for n in 1..=order {
        if n < family.min_size() {
            coeffs.push(Poly::zero());
            continue;
        }
        coeffs.push(crate::oracle::refined_histogram_via_codes(family, n)?);
    }
    Ok(BivariateSeries::from_coeffs(coeffs))
}

/// `[t^n]` of a series at `x = y = 1`, as an unsigned count.
pub fn specialized_count(series: &BivariateSeries, n: usize) -> Option<BigUint> {
    series.coeff(n).at_one().to_biguint()
}

/// Convenience for tests and tables: counts as `u64` where they fit.
pub fn count_u64(family: CountFamily, n: usize) -> Option<u64> {
    count(family, n).ok().and_then(|c| c.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> Poly {
        let mut out = Poly::zero();
        for &(c, a, b) in terms {
            out.add_term(a, b, c.into());
        }
        out
    }

    #[test]
    fn closed_forms() {
        let sq: Vec<u64> = (1..=9).map(|n| count_u64(CountFamily::Square, n).unwrap()).collect();
        assert_eq!(sq, vec![1, 2, 6, 24, 104, 464, 2088, 9392, 42064]);
        let cp: Vec<u64> = (2..=6)
            .map(|n| count_u64(CountFamily::ConvexPermutomino, n).unwrap())
            .collect();
        assert_eq!(cp, vec![1, 4, 18, 84, 394]);
        assert_eq!(count_u64(CountFamily::MarkedWords, 3), Some(10));
        assert_eq!(count_u64(CountFamily::MarkedWords, 2), Some(2));
        assert_eq!(count_u64(CountFamily::Triangular, 4), Some(20));
        let f: Vec<u64> = (1..=4)
            .map(|n| count_u64(CountFamily::FullyIndec, n).unwrap())
            .collect();
        assert_eq!(f, vec![1, 0, 0, 2]);
        let d: Vec<u64> = (2..=4)
            .map(|n| count_u64(CountFamily::DirectedPermutomino, n).unwrap())
            .collect();
        assert_eq!(d, vec![1, 3, 10]);
        let pp: Vec<u64> = (2..=4)
            .map(|n| count_u64(CountFamily::ParallelogramPermutomino, n).unwrap())
            .collect();
        assert_eq!(pp, vec![1, 2, 5]);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            count(CountFamily::ConvexPermutomino, 1),
            Err(SeriesError::Domain { min: 2, .. })
        ));
        assert!(count(CountFamily::Square, 0).is_err());
        assert!(count(CountFamily::MarkedWords, 1).is_err());
    }

    #[test]
    fn narayana_coefficients() {
        let n = narayana_series(6);
        assert_eq!(n.coeff(0), Poly::zero());
        assert_eq!(n.coeff(1), Poly::one());
        assert_eq!(n.coeff(3), p(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)]));
        let at1: Vec<i64> = n.at_one().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(at1, vec![0, 1, 2, 5, 14, 42, 132]);
        for c in n.coeffs() {
            assert_eq!(c.swap_xy(), *c);
        }
    }

    #[test]
    fn base_series_coefficients() {
        let w = w_series(4);
        let one_x = &Poly::one() + &Poly::x();
        let one_y = &Poly::one() + &Poly::y();
        let step = &one_x * &one_y;
        assert_eq!(w.coeff(2), &step * &step);
        let m = m_series(12);
        assert_eq!(m.coeff(2), p(&[(2, 2, 2)]));
        for n in 2..=12 {
            assert_eq!(
                specialized_count(&m, n).unwrap(),
                count(CountFamily::MarkedWords, n).unwrap()
            );
        }
        assert!(base_series(BaseSeries::M, 1).is_err());
    }

    #[test]
    fn aux_series_coefficients() {
        let t = aux_series(AuxSeries::TNw, 12).unwrap();
        assert_eq!(t.coeff(1), p(&[(1, 1, 1)]));
        assert_eq!(t.coeff(2), p(&[(2, 2, 2)]));
        for n in 1..=12 {
            assert_eq!(
                specialized_count(&t, n).unwrap(),
                binomial(2 * n as u64 - 2, n as u64 - 1)
            );
        }
        let wrong = t_nw_series(4, NwDenominator::PlusXy);
        assert_eq!(wrong.coeff(3).at_one(), BigInt::from(4));
        let sw = aux_series(AuxSeries::TSwTilde, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(
                specialized_count(&sw, n).unwrap(),
                binomial(2 * n as u64 - 2, n as u64 - 1)
            );
        }
    }

    #[test]
    fn sq_refined_low_orders() {
        let sq = sq_refined_series(12).unwrap();
        assert_eq!(sq.coeff(2), p(&[(2, 2, 2)]));
        assert_eq!(
            sq.coeff(3),
            p(&[(3, 3, 3), (1, 3, 2), (1, 2, 3), (1, 2, 2)])
        );
        for n in 1..=12 {
            assert_eq!(
                specialized_count(&sq, n).unwrap(),
                count(CountFamily::Square, n).unwrap()
            );
            assert_eq!(sq.coeff(n).swap_xy(), sq.coeff(n));
        }
    }

    #[test]
    fn reciprocity() {
        assert!(narayana_reciprocity_check(1));
        assert!(narayana_reciprocity_check(10));
    }

    #[test]
    fn truncation_is_stable() {
        let lo = sq_refined_series(6).unwrap();
        let hi = sq_refined_series(9).unwrap();
        assert_eq!(hi.truncate(6), lo);
        assert_eq!(narayana_series(9).truncate(5), narayana_series(5));
    }

    #[test]
    fn inverse_round_trip() {
        let w = w_series(6);
        let step = one_minus(&t_times(6, &(&Poly::one() + &Poly::x()) * &(&Poly::one() + &Poly::y())));
        assert_eq!(w.mul(&step), BivariateSeries::one(6));
        let bad = BivariateSeries::term(3, 0, Poly::constant(2));
        assert_eq!(bad.inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn display_and_json() {
        let sq = sq_refined_series(3).unwrap();
        let text = sq.to_string();
        assert!(text.contains("t^3: 3*x^3*y^3 + x^3*y^2 + x^2*y^3 + x^2*y^2\n"));
        let json = sq.to_json();
        assert_eq!(json["coeffs"]["3"]["3"]["3"], "3");
        assert_eq!(json["order"], 3);
    }
}
