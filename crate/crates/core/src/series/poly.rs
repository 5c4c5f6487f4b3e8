use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial in `x` and `y` with arbitrary-precision integer coefficients.
///
/// Terms are keyed by `(x exponent, y exponent)`; zero coefficients are never
/// stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, xe: u32, ye: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(xe, ye, c.into());
        p
    }

    pub fn add_term(&mut self, xe: u32, ye: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((xe, ye)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(xe, ye));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> BigInt {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Value at `x = y = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn swap_xy(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// `p(x, y) -> p(xy, 1)`.
    pub fn substitute_xy_one(&self) -> Poly {
        let mut out = Poly::zero();
        for (&(a, _), c) in &self.terms {
            out.add_term(a, a, c.clone());
        }
        out
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(&(xa, yb), c)| ((xa + a, yb + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// The constant value, when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn max_exponents(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(ma, mb), &(a, b)| (ma.max(a), mb.max(b)))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

/// Graded order, highest total degree first, ties broken by the `x` exponent.
fn display_order(p: &Poly) -> Vec<((u32, u32), &BigInt)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
    terms
}

impl fmt::Display for Poly {
    /// Formats as `2*x^3*y^3 + x^3*y^2 - 4*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in display_order(self).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
