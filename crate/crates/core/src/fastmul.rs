//! Integer kernel for series products: exponents scaled to integers and
//! packed into a `u64`, coefficients flattened to rational coordinates over
//! one common denominator. Reduction in the field happens once per output
//! term instead of once per pair.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::expvec::ExpVec;
use crate::field::{AlgNum, Tower};

/// Pairs below this count go through the generic loop.
const MIN_PAIRS: usize = 64;
/// Largest flattened degree handled here.
const MAX_DEGREE: usize = 8;

struct Packed {
    terms: Vec<Term>,
    den: BigInt,
}

struct Term {
    key: u64,
    total: i64,
    coords: Vec<(usize, BigInt)>,
}

fn scaled(e: &ExpVec, m: i64) -> Option<Vec<i64>> {
    e.coords()
        .iter()
        .map(|x| {
            let y = *x * Rational64::from_integer(m);
            (y.is_integer() && !y.is_negative()).then(|| y.to_integer())
        })
        .collect()
}

fn pack(
    map: &BTreeMap<ExpVec, AlgNum>,
    m: i64,
    bits: u32,
    level: usize,
    t: &Tower,
) -> Option<Packed> {
    let mut den = BigInt::one();
    let mut raw = Vec::with_capacity(map.len());
    for (e, c) in map {
        let v = scaled(e, m)?;
        let key = v.iter().fold(0u64, |k, &x| (k << bits) | x as u64);
        let cs = t.coords(c, level);
        for q in &cs {
            den = den.lcm(q.denom());
        }
        raw.push((key, v.iter().sum::<i64>(), cs));
    }
    let terms = raw
        .into_iter()
        .map(|(key, total, cs)| Term {
            key,
            total,
            coords: cs
                .into_iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(i, q)| (i, q.numer() * (&den / q.denom())))
                .collect(),
        })
        .collect();
    Some(Packed { terms, den })
}

/// Terms of `a * b` of total order below `bound`, or `None` when the inputs
/// do not fit the kernel.
pub(crate) fn mul_terms(
    a: &BTreeMap<ExpVec, AlgNum>,
    b: &BTreeMap<ExpVec, AlgNum>,
    d: usize,
    bound: Option<Rational64>,
    t: &Tower,
) -> Option<BTreeMap<ExpVec, AlgNum>> {
    if d == 0 || a.len() * b.len() < MIN_PAIRS {
        return None;
    }
    let m = a
        .keys()
        .chain(b.keys())
        .fold(1i64, |acc, e| acc.lcm(&e.denominator()));
    let level = a.values().chain(b.values()).map(|c| c.level()).max().unwrap_or(0);
    let n = t.absolute_degree(level);
    if n > MAX_DEGREE {
        return None;
    }
    let bits = (63 / d as u32).min(32);
    let max = (1i64 << bits) - 1;
    // Per-variable maxima must leave room for the sum.
    let mut hi = vec![0i64; d];
    for e in a.keys().chain(b.keys()) {
        for (h, v) in hi.iter_mut().zip(scaled(e, m)?) {
            *h = (*h).max(v);
        }
    }
    if hi.iter().any(|&h| 2 * h > max) {
        return None;
    }
    let pa = pack(a, m, bits, level, t)?;
    let mut pb = pack(b, m, bits, level, t)?;
    pb.terms.sort_by_key(|x| x.total);
    // total(a) + total(b) < cap  <=>  the product term is below the bound.
    let cap = match bound {
        None => i64::MAX,
        Some(nb) => {
            let s = nb * Rational64::from_integer(m);
            if s.is_integer() {
                s.to_integer()
            } else {
                s.ceil().to_integer()
            }
        }
    };
    let width = n * n;
    let mut acc: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for x in &pa.terms {
        for y in &pb.terms {
            if x.total + y.total >= cap {
                break;
            }
            let slot = acc
                .entry(x.key + y.key)
                .or_insert_with(|| vec![BigInt::zero(); width]);
            for (i, u) in &x.coords {
                for (j, v) in &y.coords {
                    slot[i * n + j] += u * v;
                }
            }
        }
    }
    let table = (n > 1).then(|| t.mul_table(level));
    let den = &pa.den * &pb.den * table.as_ref().map_or_else(BigInt::one, |tb| tb.den.clone());
    let mut out = BTreeMap::new();
    for (key, slot) in acc {
        let mut coords = vec![BigInt::zero(); n];
        match &table {
            None => coords[0] = slot.into_iter().next().unwrap(),
            Some(tb) => {
                for (ij, s) in slot.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    for (k, c) in &tb.entries[ij] {
                        coords[*k] += s * c;
                    }
                }
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        let qs: Vec<BigRational> = coords
            .into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect();
        let c = t.from_coords(&qs, level).ok()?;
        let mut v = vec![Rational64::zero(); d];
        let mut k = key;
        for i in (0..d).rev() {
            v[i] = Rational64::new((k & max as u64) as i64, m);
            k >>= bits;
        }
        out.insert(ExpVec::new(v), c);
    }
    Some(out)
}
