use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exponent of a monomial `X^a`: a `d`-tuple of non-negative rationals.
///
/// Also used for weight vectors (`c`, `omega`) and for the polytope points
/// of `Y`-polynomials, where an extra trailing coordinate carries the
/// `Y`-degree. Ordering via `Ord` is lexicographic and only serves as a
/// canonical total order; the mathematical partial order is [`ExpVec::leq`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(Vec<Rational64>);

impl ExpVec {
    pub fn new(coords: Vec<Rational64>) -> Self {
        ExpVec(coords)
    }

    pub fn zero(d: usize) -> Self {
        ExpVec(vec![Rational64::zero(); d])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ExpVec(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        ExpVec(v.iter().map(|&(n, d)| Rational64::new(n, d)).collect())
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = ExpVec::zero(d);
        v.0[i] = Rational64::from_integer(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Rational64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| x.is_positive())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `self <= other` in the componentwise partial order.
    pub fn leq(&self, other: &ExpVec) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strict partial order: `self <= other` and `self != other`.
    pub fn lt(&self, other: &ExpVec) -> bool {
        self.leq(other) && self != other
    }

    pub fn comparable(&self, other: &ExpVec) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Sum of coordinates.
    pub fn total(&self) -> Rational64 {
        self.0.iter().copied().sum()
    }

    pub fn dot(&self, other: &ExpVec) -> Rational64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: Rational64) -> ExpVec {
        ExpVec(self.0.iter().map(|x| x * s).collect())
    }

    pub fn scale_int(&self, s: i64) -> ExpVec {
        self.scale(Rational64::from_integer(s))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> i64 {
        self.0.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }

    /// Append a coordinate (used for `(X, Y)` polytope points).
    pub fn with_last(&self, y: Rational64) -> ExpVec {
        let mut v = self.0.clone();
        v.push(y);
        ExpVec(v)
    }

    pub fn split_last(&self) -> (ExpVec, Rational64) {
        let (last, head) = self.0.split_last().expect("non-empty exponent");
        (ExpVec(head.to_vec()), *last)
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim(), d))
        }
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::NonPositiveWeight(self.clone()))
        }
    }

    pub fn require_nonneg(&self) -> Result<()> {
        if self.is_nonneg() {
            Ok(())
        } else {
            Err(Error::NegativeWeight(self.clone()))
        }
    }

    /// Coordinates rendered as `"p/q"` strings (integers without `/1`).
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rat).collect()
    }
}

pub fn fmt_rat(x: &Rational64) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {:?}", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_order() {
        let a = ExpVec::from_fracs(&[(3, 2), (1, 1)]);
        let b = ExpVec::from_fracs(&[(7, 4), (3, 2)]);
        assert!(a.leq(&b));
        assert!(a.lt(&b));
        assert!(!b.leq(&a));
        let c = ExpVec::from_ints(&[2, 0]);
        assert!(!a.comparable(&c));
        assert!(a.leq(&a) && !a.lt(&a));
    }

    #[test]
    fn rationals_print_and_parse() {
        let a = ExpVec::from_fracs(&[(13, 2), (5, 1)]);
        assert_eq!(a.to_string(), "(13/2,5)");
        assert_eq!(parse_rat("13/2").unwrap(), Rational64::new(13, 2));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(a.denominator(), 2);
    }
}
