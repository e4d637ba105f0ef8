//! Fractional power series in `d` variables with tower coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expvec::{fmt_rat, ExpVec};
use crate::field::{AlgNum, Tower};

/// How much of a series is known.
///
/// `Truncated(n)`: every term of total order `< n` is present and correct;
/// nothing is asserted about terms of total order `>= n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Precision {
    Exact,
    Truncated(Rational64),
}

impl Precision {
    pub fn bound(&self) -> Option<Rational64> {
        match self {
            Precision::Exact => None,
            Precision::Truncated(n) => Some(*n),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Precision::Exact)
    }

    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Truncated(a), Precision::Truncated(b)) => Precision::Truncated(a.min(b)),
        }
    }

    pub fn shift(self, by: Rational64) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Truncated(n) => Precision::Truncated(n + by),
        }
    }

    /// Does this precision cover total order `t` (i.e. `t < n`)?
    pub fn covers(&self, t: Rational64) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Truncated(n) => t < *n,
        }
    }
}

impl PartialOrd for Precision {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Precision {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Precision::Exact, Precision::Exact) => Ordering::Equal,
            (Precision::Exact, _) => Ordering::Greater,
            (_, Precision::Exact) => Ordering::Less,
            (Precision::Truncated(a), Precision::Truncated(b)) => a.cmp(b),
        }
    }
}

/// Order of a univariate series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(Rational64),
    /// Exact zero series.
    Infinite,
    /// Truncated series with no known term: the order is at least the bound.
    AtLeast(Rational64),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(x) => write!(f, "{}", fmt_rat(x)),
            Order::Infinite => write!(f, "inf"),
            Order::AtLeast(x) => write!(f, ">={}", fmt_rat(x)),
        }
    }
}

/// A finitely supported (or truncated) fractional power series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracSeries {
    dim: usize,
    terms: BTreeMap<ExpVec, AlgNum>,
    prec: Precision,
}

impl FracSeries {
    pub fn zero(dim: usize) -> Self {
        FracSeries {
            dim,
            terms: BTreeMap::new(),
            prec: Precision::Exact,
        }
    }

    pub fn constant(dim: usize, c: AlgNum) -> Self {
        FracSeries::monomial(ExpVec::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        FracSeries::constant(dim, AlgNum::one())
    }

    pub fn monomial(exp: ExpVec, c: AlgNum) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        FracSeries {
            dim,
            terms,
            prec: Precision::Exact,
        }
    }

    /// Build from terms; zero coefficients are dropped, repeated exponents
    /// summed, and terms at or beyond the precision bound discarded.
    pub fn from_terms<I>(dim: usize, terms: I, prec: Precision) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, AlgNum)>,
    {
        let mut map: BTreeMap<ExpVec, AlgNum> = BTreeMap::new();
        for (e, c) in terms {
            e.check_dim(dim)?;
            if !e.is_nonneg() {
                return Err(Error::Parse(format!("negative exponent {}", e)));
            }
            add_term(&mut map, e, &c);
        }
        let mut s = FracSeries {
            dim,
            terms: map,
            prec,
        };
        s.enforce_precision();
        Ok(s)
    }

    fn enforce_precision(&mut self) {
        if let Precision::Truncated(n) = self.prec {
            self.terms.retain(|e, _| e.total() < n);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_exact()
    }

    /// No known nonzero term (for a truncated series: zero up to precision).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_exact()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &AlgNum)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExpVec> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &ExpVec) -> AlgNum {
        self.terms.get(e).cloned().unwrap_or_else(AlgNum::zero)
    }

    pub fn constant_term(&self) -> AlgNum {
        self.coeff(&ExpVec::zero(self.dim))
    }

    /// Lex-largest term (the leading term for exact division).
    pub fn lex_leading(&self) -> Option<(&ExpVec, &AlgNum)> {
        self.terms.iter().next_back()
    }

    /// Minimal total order over the known terms.
    pub fn min_total(&self) -> Option<Rational64> {
        self.terms.keys().map(|e| e.total()).min()
    }

    /// Lower bound on the total order of the true series.
    pub fn order_lower_bound(&self) -> Option<Rational64> {
        match (self.min_total(), self.prec.bound()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    /// Coarsen the precision to `n` (no-op if already coarser).
    pub fn truncate(&self, n: Precision) -> FracSeries {
        let mut s = self.clone();
        s.prec = s.prec.min(n);
        s.enforce_precision();
        s
    }

    pub fn with_precision(mut self, p: Precision) -> FracSeries {
        self.prec = p;
        self.enforce_precision();
        self
    }

    /// Mark a series as exact (caller knows it is finitely supported).
    pub fn into_exact(mut self) -> FracSeries {
        self.prec = Precision::Exact;
        self
    }

    /// Keep only the terms satisfying `keep`. The precision is unchanged.
    pub fn filter_terms(&self, mut keep: impl FnMut(&ExpVec) -> bool) -> FracSeries {
        FracSeries {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            prec: self.prec,
        }
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&ExpVec, &AlgNum) -> AlgNum) -> FracSeries {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = f(e, c);
            if !v.is_zero() {
                out.insert(e.clone(), v);
            }
        }
        FracSeries {
            dim: self.dim,
            terms: out,
            prec: self.prec,
        }
    }

    fn check_same_dim(&self, other: &FracSeries) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn add(&self, other: &FracSeries) -> Result<FracSeries> {
        self.check_same_dim(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c);
        }
        let mut s = FracSeries {
            dim: self.dim,
            terms,
            prec: self.prec.min(other.prec),
        };
        s.enforce_precision();
        Ok(s)
    }

    pub fn neg(&self) -> FracSeries {
        FracSeries {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &FracSeries) -> Result<FracSeries> {
        self.add(&other.neg())
    }

    /// Product. The result precision is the tightest bound implied by the
    /// inputs: `min(Pa + ord b, Pb + ord a)`.
    pub fn mul(&self, other: &FracSeries, t: &Tower) -> Result<FracSeries> {
        self.mul_trunc(other, t, Precision::Exact)
    }

    /// Product, additionally truncated at `limit`.
    pub fn mul_trunc(&self, other: &FracSeries, t: &Tower, limit: Precision) -> Result<FracSeries> {
        self.check_same_dim(other)?;
        let pa = match (self.prec.bound(), other.order_lower_bound()) {
            (Some(p), Some(o)) => Precision::Truncated(p + o),
            _ => Precision::Exact,
        };
        let pb = match (other.prec.bound(), self.order_lower_bound()) {
            (Some(p), Some(o)) => Precision::Truncated(p + o),
            _ => Precision::Exact,
        };
        let prec = pa.min(pb).min(limit);
        let bound = prec.bound();
        if let Some(terms) = crate::fastmul::mul_terms(&self.terms, &other.terms, self.dim, bound, t) {
            return Ok(FracSeries {
                dim: self.dim,
                terms,
                prec,
            });
        }
        let mut terms: BTreeMap<ExpVec, AlgNum> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ta = ea.total();
            for (eb, cb) in &other.terms {
                if let Some(n) = bound {
                    if ta + eb.total() >= n {
                        continue;
                    }
                }
                let c = t.mul(ca, cb);
                add_term(&mut terms, ea + eb, &c);
            }
        }
        Ok(FracSeries {
            dim: self.dim,
            terms,
            prec,
        })
    }

    pub fn scale(&self, c: &AlgNum, t: &Tower) -> FracSeries {
        if c.is_zero() {
            return FracSeries::zero(self.dim).with_precision(self.prec);
        }
        self.map_coeffs(|_, x| t.mul(x, c))
    }

    /// Multiply by `X^e` (precision shifts up by the total of `e`).
    pub fn mul_monomial(&self, e: &ExpVec) -> FracSeries {
        FracSeries {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| (a + e, c.clone())).collect(),
            prec: self.prec.shift(e.total()),
        }
    }

    /// Divide by `X^e`; fails if some known term is not divisible.
    pub fn div_monomial(&self, e: &ExpVec) -> Result<FracSeries> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let q = a - e;
            if !q.is_nonneg() {
                return Err(Error::Internal(format!("X^{} does not divide term X^{}", e, a)));
            }
            terms.insert(q, c.clone());
        }
        Ok(FracSeries {
            dim: self.dim,
            terms,
            prec: self.prec.shift(-e.total()),
        })
    }

    /// Multiply by `X^e` where `e` may have negative coordinates; fails if a
    /// known term would get a negative exponent.
    pub fn shift_exponents(&self, e: &ExpVec) -> Result<FracSeries> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let q = a + e;
            if !q.is_nonneg() {
                return Err(Error::Internal(format!("negative exponent {} after shift", q)));
            }
            terms.insert(q, c.clone());
        }
        Ok(FracSeries {
            dim: self.dim,
            terms,
            prec: self.prec.shift(e.total()),
        })
    }

    pub fn pow(&self, n: u32, t: &Tower) -> Result<FracSeries> {
        let mut acc = FracSeries::one(self.dim);
        for _ in 0..n {
            acc = acc.mul(self, t)?;
        }
        Ok(acc)
    }

    /// Terms of total order exactly `order`.
    pub fn slice(&self, order: Rational64) -> FracSeries {
        FracSeries {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() == order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            prec: Precision::Exact,
        }
    }

    /// Monomial substitution `X_i = T^{c_i}`: a univariate series in `T`.
    pub fn substitute(&self, c: &ExpVec) -> Result<FracSeries> {
        c.check_dim(self.dim)?;
        c.require_positive()?;
        let mut terms: BTreeMap<ExpVec, AlgNum> = BTreeMap::new();
        for (e, coef) in &self.terms {
            add_term(&mut terms, ExpVec::new(vec![e.dot(c)]), coef);
        }
        let prec = match self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Truncated(n) => {
                let cmin = c.coords().iter().copied().min().unwrap();
                Precision::Truncated(cmin * n)
            }
        };
        let mut s = FracSeries {
            dim: 1,
            terms,
            prec,
        };
        s.enforce_precision();
        Ok(s)
    }

    /// Order of a univariate series.
    pub fn ord(&self) -> Result<Order> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch(self.dim, 1));
        }
        Ok(match self.terms.keys().next() {
            Some(e) => Order::Finite(e.get(0)),
            None => match self.prec {
                Precision::Exact => Order::Infinite,
                Precision::Truncated(n) => Order::AtLeast(n),
            },
        })
    }

    /// Weighted order `min <omega, a>` over the support.
    pub fn weighted_order(&self, omega: &ExpVec) -> Result<Rational64> {
        omega.check_dim(self.dim)?;
        omega.require_nonneg()?;
        self.terms
            .keys()
            .map(|e| e.dot(omega))
            .min()
            .ok_or(Error::ZeroInput("weighted order of the zero series"))
    }

    /// Exact division in the polynomial ring (both operands exact, divisor
    /// nonzero, quotient assumed to exist).
    pub fn exact_div(&self, divisor: &FracSeries, t: &Tower) -> Result<FracSeries> {
        self.check_same_dim(divisor)?;
        if !self.is_exact() || !divisor.is_exact() {
            return Err(Error::TruncatedInput("exact division"));
        }
        let (le, lc) = divisor
            .lex_leading()
            .ok_or(Error::ZeroInput("exact division by zero"))?;
        let lc_inv = t.inv(lc).unwrap();
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<ExpVec, AlgNum> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back() {
            let qe = re - le;
            if !qe.is_nonneg() {
                return Err(Error::Internal("inexact series division".into()));
            }
            let qc = t.mul(rc, &lc_inv);
            for (de, dc) in &divisor.terms {
                let p = t.mul(&qc, dc);
                add_term(&mut rem, &qe + de, &(-&p));
            }
            quot.insert(qe, qc);
        }
        Ok(FracSeries {
            dim: self.dim,
            terms: quot,
            prec: Precision::Exact,
        })
    }

    /// Least common multiple of all exponent denominators.
    pub fn ramification(&self) -> i64 {
        self.terms
            .keys()
            .fold(1, |acc, e| num_integer::lcm(acc, e.denominator()))
    }

    pub fn has_integral_support(&self) -> bool {
        self.terms.keys().all(|e| e.is_integral())
    }

    pub fn max_level(&self) -> usize {
        self.terms.values().map(|c| c.level()).max().unwrap_or(0)
    }

    /// Canonical text form, e.g. `X1^(3/2)*X2 - 2*X1^3`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term_text(e, &mag));
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Precision::Truncated(n) = self.prec {
            out.push_str(&format!(" + O({})", fmt_rat(&n)));
        }
        out
    }
}

fn add_term(map: &mut BTreeMap<ExpVec, AlgNum>, e: ExpVec, c: &AlgNum) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn split_sign(c: &AlgNum) -> (bool, AlgNum) {
    if Tower::is_negative_rational(c) {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

pub(crate) fn monomial_text(e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, x) in e.coords().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if *x == Rational64::from_integer(1) {
            parts.push(format!("X{}", i + 1));
        } else if x.is_integer() {
            parts.push(format!("X{}^{}", i + 1, x.numer()));
        } else {
            parts.push(format!("X{}^({})", i + 1, fmt_rat(x)));
        }
    }
    parts.join("*")
}

/// `c*X^e` with `c` already sign-stripped.
pub(crate) fn term_text(e: &ExpVec, c: &AlgNum) -> String {
    let mono = monomial_text(e);
    match (mono.is_empty(), c.is_one()) {
        (true, _) => c.to_string(),
        (false, true) => mono,
        (false, false) => format!("{}*{}", c, mono),
    }
}

impl fmt::Display for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[(i64, i64)], c: i64) -> FracSeries {
        FracSeries::monomial(ExpVec::from_fracs(e), AlgNum::from_int(c))
    }

    #[test]
    fn monomial_product() {
        let t = Tower::new();
        let a = mono(&[(3, 2), (1, 1)], 1);
        let p = a.mul(&a, &t).unwrap();
        assert_eq!(p, mono(&[(3, 1), (2, 1)], 1));
    }

    #[test]
    fn difference_of_squares() {
        let t = Tower::new();
        let one = FracSeries::one(1);
        let x = mono(&[(1, 1)], 1);
        let p = one.add(&x).unwrap().mul(&one.sub(&x).unwrap(), &t).unwrap();
        assert_eq!(p, one.sub(&mono(&[(2, 1)], 1)).unwrap());
    }

    #[test]
    fn square_of_example_root() {
        let t = Tower::new();
        let a = mono(&[(3, 2), (1, 1)], 1)
            .add(&mono(&[(7, 4), (3, 2)], 1))
            .unwrap();
        let expected = mono(&[(3, 1), (2, 1)], 1)
            .add(&mono(&[(13, 4), (5, 2)], 2))
            .unwrap()
            .add(&mono(&[(7, 2), (3, 1)], 1))
            .unwrap();
        assert_eq!(a.mul(&a, &t).unwrap(), expected);
    }

    #[test]
    fn truncated_product_precision() {
        let t = Tower::new();
        let a = FracSeries::one(1)
            .add(&mono(&[(1, 1)], 1))
            .unwrap()
            .with_precision(Precision::Truncated(Rational64::from_integer(3)));
        let b = mono(&[(1, 2)], 1);
        let p = a.mul(&b, &t).unwrap();
        assert_eq!(p.precision(), Precision::Truncated(Rational64::new(7, 2)));
        let one = FracSeries::one(1);
        assert_eq!(a.mul(&one, &t).unwrap().precision(), a.precision());
    }

    #[test]
    fn substitution_and_order() {
        let a = mono(&[(3, 2), (1, 1)], 1);
        let c = ExpVec::from_ints(&[1, 1]);
        let s = a.substitute(&c).unwrap();
        assert_eq!(s.ord().unwrap(), Order::Finite(Rational64::new(5, 2)));
        let diff = mono(&[(1, 1), (0, 1)], 1).sub(&mono(&[(0, 1), (1, 1)], 1)).unwrap();
        assert_eq!(diff.substitute(&c).unwrap().ord().unwrap(), Order::Infinite);
        assert!(a.substitute(&ExpVec::from_ints(&[1, 0])).is_err());
        let res = mono(&[(28, 1), (24, 1)], 1);
        let s = res.substitute(&ExpVec::from_ints(&[1, 2])).unwrap();
        assert_eq!(s, mono(&[(76, 1)], 1));
    }

    #[test]
    fn truncated_zero_has_lower_bound_order() {
        let z = FracSeries::zero(1).with_precision(Precision::Truncated(Rational64::from_integer(4)));
        assert_eq!(z.ord().unwrap(), Order::AtLeast(Rational64::from_integer(4)));
    }

    #[test]
    fn exact_division() {
        let t = Tower::new();
        let a = FracSeries::one(2).add(&mono(&[(1, 1), (0, 1)], 1)).unwrap();
        let b = mono(&[(0, 1), (1, 2)], 3).sub(&mono(&[(2, 1), (0, 1)], 1)).unwrap();
        let p = a.mul(&b, &t).unwrap();
        assert_eq!(p.exact_div(&a, &t).unwrap(), b);
        assert_eq!(p.exact_div(&b, &t).unwrap(), a);
    }

    #[test]
    fn text_form() {
        let s = mono(&[(3, 2), (1, 1)], 1).sub(&mono(&[(3, 1), (0, 1)], 2)).unwrap();
        assert_eq!(s.to_text(), "X1^(3/2)*X2 - 2*X1^3");
    }
}
