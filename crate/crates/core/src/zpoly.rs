//! Sparse integer polynomials with packed exponents: the fast path for
//! resultants of polynomials with rational coefficients and integral
//! exponents.

use std::collections::hash_map::Entry;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::expvec::ExpVec;
use crate::field::AlgNum;
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

/// Exponent packing: variable `i` occupies bits `[(d-1-i) b, (d-i) b)`, so
/// key order is lexicographic order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packing {
    d: usize,
    bits: u32,
}

impl Packing {
    fn new(d: usize) -> Packing {
        let bits = if d == 0 { 63 } else { (63 / d as u32).min(32) };
        Packing { d, bits }
    }

    fn max(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    fn pack(&self, e: &ExpVec) -> Option<u64> {
        let mut k = 0u64;
        for x in e.coords() {
            if !x.is_integer() || x.is_negative() {
                return None;
            }
            let v = x.to_integer() as u64;
            // Headroom so that sums of exponents in a determinant cannot
            // overflow a field.
            if v > self.max() >> 8 {
                return None;
            }
            k = (k << self.bits) | v;
        }
        Some(k)
    }

    fn unpack(&self, k: u64) -> ExpVec {
        let mut v = vec![Rational64::zero(); self.d];
        let mut k = k;
        for i in (0..self.d).rev() {
            v[i] = Rational64::from_integer((k & self.max()) as i64);
            k >>= self.bits;
        }
        ExpVec::new(v)
    }

    /// `a - b` when `b <= a` componentwise.
    fn sub(&self, a: u64, b: u64) -> Option<u64> {
        let m = self.max();
        for i in 0..self.d {
            let s = i as u32 * self.bits;
            if (a >> s) & m < (b >> s) & m {
                return None;
            }
        }
        Some(a - b)
    }
}

/// Terms sorted by key, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct ZPoly(Vec<(u64, BigInt)>);

impl ZPoly {
    fn zero() -> ZPoly {
        ZPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn from_map(m: impl IntoIterator<Item = (u64, BigInt)>) -> ZPoly {
        let mut v: Vec<(u64, BigInt)> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|(k, _)| *k);
        ZPoly(v)
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut m: FxHashMap<u64, BigInt> = FxHashMap::default();
        m.reserve(self.0.len() * o.0.len() / 2 + 1);
        for (ka, ca) in &self.0 {
            for (kb, cb) in &o.0 {
                let p = ca * cb;
                m.entry(ka + kb)
                    .and_modify(|c| *c += &p)
                    .or_insert(p);
            }
        }
        ZPoly::from_map(m)
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let ki = self.0.get(i).map(|x| x.0);
            let kj = o.0.get(j).map(|x| x.0);
            match (ki, kj) {
                (Some(a), Some(b)) if a == b => {
                    let c = &self.0[i].1 - &o.0[j].1;
                    if !c.is_zero() {
                        out.push((a, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                _ => {
                    let (k, c) = &o.0[j];
                    out.push((*k, -c));
                    j += 1;
                }
            }
        }
        ZPoly(out)
    }

    fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|(k, x)| (*k, x * c)).collect())
    }


    /// Exact quotient by `d`; `None` if the division leaves a remainder.
    fn exact_div(&self, d: &ZPoly, p: &Packing) -> Option<ZPoly> {
        let (dk, dc) = d.0.last()?;
        let lower = &d.0[..d.0.len() - 1];
        // Remainder as a map plus a lazy max-heap of its keys.
        let mut rem: FxHashMap<u64, BigInt> = self.0.iter().cloned().collect();
        let mut keys: BinaryHeap<u64> = self.0.iter().map(|(k, _)| *k).collect();
        let mut quot: Vec<(u64, BigInt)> = Vec::new();
        while let Some(rk) = keys.pop() {
            let Some(rc) = rem.remove(&rk) else {
                continue;
            };
            let qk = p.sub(rk, *dk)?;
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            for (k, c) in lower {
                let key = qk + k;
                let prod = &qc * c;
                match rem.entry(key) {
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(-prod);
                        keys.push(key);
                    }
                }
            }
            quot.push((qk, qc));
        }
        quot.reverse();
        Some(ZPoly(quot))
    }

    fn content_div(&self, c: &BigInt) -> Option<ZPoly> {
        let mut out = Vec::with_capacity(self.0.len());
        for (k, x) in &self.0 {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push((*k, q));
        }
        Some(ZPoly(out))
    }
}

/// Integer polynomial `N` and denominator `D` with `N / D` the series.
fn from_series(s: &FracSeries, p: &Packing) -> Option<(ZPoly, BigInt)> {
    if !s.is_exact() {
        return None;
    }
    let mut den = BigInt::one();
    let mut rats: Vec<(u64, &BigRational)> = Vec::with_capacity(s.num_terms());
    for (e, c) in s.terms() {
        let q = c.as_rational()?;
        rats.push((p.pack(e)?, q));
        den = den.lcm(q.denom());
    }
    let mut v: Vec<(u64, BigInt)> = rats
        .into_iter()
        .map(|(k, q)| (k, q.numer() * (&den / q.denom())))
        .collect();
    v.sort_unstable_by_key(|(k, _)| *k);
    Some((ZPoly(v), den))
}

fn to_series(z: &ZPoly, den: &BigInt, p: &Packing) -> FracSeries {
    let terms = z.0.iter().map(|(k, c)| {
        (
            p.unpack(*k),
            AlgNum::from_rational(BigRational::new(c.clone(), den.clone())),
        )
    });
    FracSeries::from_terms(p.d, terms, Precision::Exact).expect("well-formed terms")
}

/// `Y`-polynomial as integer coefficient polynomials over one common
/// denominator.
struct ZY {
    coeffs: Vec<ZPoly>,
    den: BigInt,
}

fn to_zy(f: &YPoly, p: &Packing) -> Option<ZY> {
    let parts: Vec<(ZPoly, BigInt)> = f.coeffs().iter().map(|c| from_series(c, p)).collect::<Option<_>>()?;
    let den = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let coeffs = parts
        .into_iter()
        .map(|(z, d)| z.scale(&(&den / d)))
        .collect();
    Some(ZY { coeffs, den })
}

/// Fraction-free elimination; `None` only if a division is not exact.
fn det(mut a: Vec<Vec<ZPoly>>, p: &Packing) -> Option<ZPoly> {
    let n = a.len();
    let mut negate = false;
    let mut prev = ZPoly(vec![(0, BigInt::one())]);
    for k in 0..n {
        // Sparsest usable pivot keeps the minors small.
        let Some(r) = (k..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].0.len()) else {
            return Some(ZPoly::zero());
        };
        if r != k {
            a.swap(k, r);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut num = a[i][j].mul(&a[k][k]);
                if !a[i][k].is_zero() && !a[k][j].is_zero() {
                    num = num.sub(&a[i][k].mul(&a[k][j]));
                }
                a[i][j] = if k == 0 { num } else { num.exact_div(&prev, p)? };
            }
            a[i][k] = ZPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Some(if negate { ZPoly::zero().sub(&det) } else { det })
}

/// Multiplication by `g` on `Z[X][Y]/(f)`, `f` monic: rows are
/// `Y^j g mod f` as integer polynomials with per-row denominators.
fn mult_matrix(f: &ZY, g: &ZY) -> (Vec<Vec<ZPoly>>, BigInt) {
    let n = f.coeffs.len() - 1;
    let dd = f.den.clone();
    let lead = &f.coeffs[n];
    debug_assert!(lead.0.len() == 1 && lead.0[0].0 == 0);
    // f = F / D with F[n] = D.
    let reduce = |mut r: Vec<ZPoly>, mut den: BigInt| -> (Vec<ZPoly>, BigInt) {
        while r.len() > n {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - n;
            // r = D r - top Y^shift F, dropping the cancelled top.
            for c in r.iter_mut() {
                *c = c.scale(&dd);
            }
            for i in 0..n {
                let t = top.mul(&f.coeffs[i]);
                r[shift + i] = r[shift + i].sub(&t);
            }
            den *= &dd;
        }
        r.resize(n, ZPoly::zero());
        (r, den)
    };
    let mut rows = Vec::with_capacity(n);
    let mut total_den = BigInt::one();
    let (mut cur, mut den) = reduce(g.coeffs.clone(), g.den.clone());
    for j in 0..n {
        total_den *= &den;
        rows.push(cur.clone());
        if j + 1 < n {
            let mut next = vec![ZPoly::zero()];
            next.extend(cur);
            let (c, d) = reduce(next, den);
            cur = c;
            den = d;
        }
    }
    (rows, total_den)
}

fn sylvester(f: &ZY, g: &ZY) -> (Vec<Vec<ZPoly>>, BigInt) {
    let n = f.coeffs.len() - 1;
    let m = g.coeffs.len() - 1;
    let size = n + m;
    let mut mat = vec![vec![ZPoly::zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            mat[m + i][i + j] = c.clone();
        }
    }
    let den = num_traits::pow(f.den.clone(), m) * num_traits::pow(g.den.clone(), n);
    (mat, den)
}

fn is_one(z: &ZPoly, den: &BigInt) -> bool {
    z.0.len() == 1 && z.0[0].0 == 0 && &z.0[0].1 == den
}

/// `Res_Y(f, g)` for exact nonzero polynomials with rational coefficients
/// and integral exponents; `None` when the fast path does not apply.
pub(crate) fn resultant_fast(f: &YPoly, g: &YPoly) -> Option<FracSeries> {
    let d = f.dim();
    let p = Packing::new(d);
    let (n, m) = (f.degree()?, g.degree()?);
    let zf = to_zy(f, &p)?;
    let zg = to_zy(g, &p)?;
    let (mat, den, negate) = if n >= 1 && is_one(&zf.coeffs[n], &zf.den) {
        let (mat, den) = mult_matrix(&zf, &zg);
        (mat, den, false)
    } else if m >= 1 && is_one(&zg.coeffs[m], &zg.den) {
        let (mat, den) = mult_matrix(&zg, &zf);
        (mat, den, (n * m) % 2 == 1)
    } else {
        let (mat, den) = sylvester(&zf, &zg);
        (mat, den, false)
    };
    if mat.is_empty() {
        // Degree zero monic side: the resultant is a power of the other
        // constant, handled by the generic path.
        return None;
    }
    let num = det(mat, &p)?;
    let num = if negate { ZPoly::zero().sub(&num) } else { num };
    // Reduce before building rationals.
    let g0 = num.0.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    let (num, den) = if g0.is_zero() {
        (num, den)
    } else {
        let g1 = g0.gcd(&den);
        (num.content_div(&g1)?, den / g1)
    };
    Some(to_series(&num, &den, &p))
}
