//! Contacts between fractional power series.

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::polytope::polytope_of_series;
use crate::series::{FracSeries, Order};

/// The exponent `lam` with `alpha - beta = u X^lam`, `u(0) != 0`.
pub fn contact(alpha: &FracSeries, beta: &FracSeries) -> Result<ExpVec> {
    let diff = alpha.sub(beta)?;
    if diff.is_zero() {
        return Err(Error::Indistinguishable(match diff.precision().bound() {
            Some(n) => crate::expvec::fmt_rat(&n),
            None => "exact (series are equal)".into(),
        }));
    }
    let poly = polytope_of_series(&diff)?;
    if !poly.is_vertex() {
        return Err(Error::NotComonomial(poly.vertices().to_vec()));
    }
    Ok(poly.vertices()[0].clone())
}

/// `max_{gamma in A} ord(alpha^[c] - gamma^[c])`.
pub fn contact_with_set(set: &[FracSeries], alpha: &FracSeries, c: &ExpVec) -> Result<Order> {
    if set.is_empty() {
        return Err(Error::ZeroInput("contact with the empty set"));
    }
    let a = alpha.substitute(c)?;
    let mut best: Option<Order> = None;
    for g in set {
        let o = a.sub(&g.substitute(c)?)?.ord()?;
        best = Some(match best {
            None => o,
            Some(b) => max_order(b, o),
        });
    }
    Ok(best.unwrap())
}

/// Maximum of two orders; a lower bound absorbs anything it might exceed.
pub fn max_order(a: Order, b: Order) -> Order {
    use Order::*;
    match (a, b) {
        (Infinite, _) | (_, Infinite) => Infinite,
        (Finite(x), Finite(y)) => Finite(x.max(y)),
        (AtLeast(x), Finite(y)) | (Finite(y), AtLeast(x)) | (AtLeast(x), AtLeast(y)) => {
            AtLeast(x.max(y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AlgNum;
    use num_rational::Rational64;

    fn mono(e: &[(i64, i64)], c: i64) -> FracSeries {
        FracSeries::monomial(ExpVec::from_fracs(e), AlgNum::from_int(c))
    }

    #[test]
    fn contacts() {
        let a = mono(&[(1, 2)], 1);
        let b = a.add(&mono(&[(1, 1)], 1)).unwrap();
        assert_eq!(contact(&a, &b).unwrap(), ExpVec::from_ints(&[1]));
        assert!(matches!(contact(&a, &a), Err(Error::Indistinguishable(_))));
        let x = mono(&[(1, 1), (0, 1)], 1);
        let y = mono(&[(0, 1), (1, 1)], 1);
        assert!(matches!(contact(&x, &y), Err(Error::NotComonomial(_))));
    }

    #[test]
    fn contact_with_zero() {
        let c = ExpVec::from_ints(&[2, 3]);
        let o = contact_with_set(&[FracSeries::zero(2)], &mono(&[(1, 1), (0, 1)], 1), &c).unwrap();
        assert_eq!(o, Order::Finite(Rational64::from_integer(2)));
    }
}
