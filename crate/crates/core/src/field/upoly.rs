//! Dense univariate polynomials with tower coefficients.

use num_rational::BigRational;
use num_traits::Zero;

use super::{AlgNum, Tower};

/// Ascending coefficients, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<AlgNum>);

impl UPoly {
    pub fn from_coeffs(mut cs: Vec<AlgNum>) -> Self {
        while cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
        UPoly(cs)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        UPoly::from_coeffs(cs.iter().map(|&c| AlgNum::from_int(c)).collect())
    }

    pub fn constant(c: AlgNum) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// `z - a`
    pub fn linear(a: &AlgNum) -> Self {
        UPoly::from_coeffs(vec![-a, AlgNum::one()])
    }

    pub fn coeffs(&self) -> &[AlgNum] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<AlgNum> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&AlgNum> {
        self.0.last()
    }

    pub fn max_level(&self) -> usize {
        self.0.iter().map(|c| c.level()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let z = AlgNum::zero();
        UPoly::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, t: &Tower, s: &AlgNum) -> UPoly {
        UPoly::from_coeffs(self.0.iter().map(|c| t.mul(c, s)).collect())
    }

    pub fn mul(&self, t: &Tower, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![AlgNum::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = t.mul(a, b);
                out[i + j] = &out[i + j] + &p;
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn monic(&self, t: &Tower) -> UPoly {
        match self.lc() {
            None => UPoly::default(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(t, &t.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, t: &Tower, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = t.inv(d.lc().unwrap()).unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::default(), self.clone());
        }
        let mut q = vec![AlgNum::zero(); r.len() - dd];
        while r.len() > dd {
            let c = r.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let k = r.len() - dd;
            let f = t.mul(&c, &lc_inv);
            for (j, dj) in d.0[..dd].iter().enumerate() {
                if !dj.is_zero() {
                    let p = t.mul(&f, dj);
                    r[k + j] = &r[k + j] - &p;
                }
            }
            q[k] = f;
        }
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, t: &Tower, d: &UPoly) -> UPoly {
        self.divrem(t, d).1
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_rat(&BigRational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Tower, x: &AlgNum) -> AlgNum {
        let mut acc = AlgNum::zero();
        for c in self.0.iter().rev() {
            acc = &t.mul(&acc, x) + c;
        }
        acc
    }

    /// `p(z + a)`
    pub fn shift(&self, t: &Tower, a: &AlgNum) -> UPoly {
        let lin = UPoly::from_coeffs(vec![a.clone(), AlgNum::one()]);
        let mut acc = UPoly::default();
        for c in self.0.iter().rev() {
            acc = acc.mul(t, &lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    pub fn gcd(&self, t: &Tower, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(t, &b);
            a = b;
            b = r;
        }
        a.monic(t)
    }

    pub fn squarefree_part(&self, t: &Tower) -> UPoly {
        let g = self.gcd(t, &self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic(t);
        }
        self.divrem(t, &g).0.monic(t)
    }

    pub fn is_squarefree(&self, t: &Tower) -> bool {
        self.gcd(t, &self.derivative()).degree().unwrap_or(0) == 0
    }

    /// The root of a linear polynomial.
    pub fn linear_root(&self, t: &Tower) -> AlgNum {
        assert_eq!(self.degree(), Some(1));
        -t.div(&self.0[0], &self.0[1]).unwrap()
    }

    pub fn root_multiplicity(&self, t: &Tower, r: &AlgNum) -> usize {
        let lin = UPoly::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(t, &lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    pub fn pow(&self, t: &Tower, e: usize) -> UPoly {
        let mut acc = UPoly::constant(AlgNum::one());
        for _ in 0..e {
            acc = acc.mul(t, self);
        }
        acc
    }
}

/// Extended Euclid: returns `(g, s, u)` with `s*a + u*b = g`, `g` not
/// normalized.
pub fn ext_gcd(t: &Tower, a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
    let one = UPoly::constant(AlgNum::one());
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), UPoly::default());
    let (mut u0, mut u1) = (UPoly::default(), one);
    while !r1.is_zero() {
        let (q, r) = r0.divrem(t, &r1);
        let s2 = s0.sub(&q.mul(t, &s1));
        let u2 = u0.sub(&q.mul(t, &u1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    (r0, s0, u0)
}

/// Resultant over a field by the Euclidean remainder sequence.
pub fn resultant(t: &Tower, a: &UPoly, b: &UPoly) -> AlgNum {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return AlgNum::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = AlgNum::one();
    loop {
        if db == 0 {
            return t.mul(&acc, &t.pow(b.lc().unwrap(), da as u64));
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut da, &mut db);
            continue;
        }
        let r = a.rem(t, &b);
        let Some(dr) = r.degree() else {
            return AlgNum::zero();
        };
        // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc = t.mul(&acc, &t.pow(b.lc().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}

/// Newton interpolation through `(x_i, y_i)` with distinct rational nodes.
pub fn interpolate(t: &Tower, xs: &[BigRational], ys: &[AlgNum]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<AlgNum> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num.scale_rat(&den.recip());
        }
    }
    let mut acc = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UPoly::linear(&AlgNum::from_rational(xs[i].clone()));
        acc = acc.mul(t, &lin).add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

/// The `n`-th cyclotomic polynomial over `Q`.
pub fn cyclotomic(n: u64) -> UPoly {
    let t = Tower::new();
    // Phi_n = (z^n - 1) / prod_{d | n, d < n} Phi_d
    let mut p = monomial_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            p = p.divrem(&t, &cyclotomic(d)).0;
        }
    }
    p
}

fn monomial_minus_one(n: u64) -> UPoly {
    let mut cs = vec![AlgNum::zero(); n as usize + 1];
    cs[0] = AlgNum::from_int(-1);
    cs[n as usize] = AlgNum::one();
    UPoly::from_coeffs(cs)
}

pub(crate) fn rat_coeffs(p: &UPoly) -> Option<Vec<BigRational>> {
    p.0.iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|mut v| {
            while v.last().is_some_and(|c: &BigRational| c.is_zero()) {
                v.pop();
            }
            v
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), UPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        let t = Tower::new();
        // res(z^2 - 2, z - 3) = (3^2 - 2) * (-1)^(2*1) ... = prod_{a^2=2} (a - 3) = 9 - 2 = 7
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[-3, 1]);
        assert_eq!(resultant(&t, &a, &b), AlgNum::from_int(7));
        assert_eq!(resultant(&t, &b, &a), AlgNum::from_int(7));
        // Common root gives zero.
        let c = UPoly::from_ints(&[-1, 0, 1]);
        let e = UPoly::from_ints(&[-1, 1]);
        assert!(resultant(&t, &c, &e).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let t = Tower::new();
        let p = UPoly::from_ints(&[5, -1, 0, 2]);
        let xs: Vec<BigRational> = (0..4).map(|i| BigRational::from_integer(i.into())).collect();
        let ys: Vec<AlgNum> = xs
            .iter()
            .map(|x| p.eval(&t, &AlgNum::from_rational(x.clone())))
            .collect();
        assert_eq!(interpolate(&t, &xs, &ys), p);
    }

    #[test]
    fn shift_and_gcd() {
        let t = Tower::new();
        let p = UPoly::from_ints(&[0, 0, 1]);
        let s = p.shift(&t, &AlgNum::from_int(1));
        assert_eq!(s, UPoly::from_ints(&[1, 2, 1]));
        let g = s.gcd(&t, &UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(g, UPoly::from_ints(&[1, 1]));
    }
}
