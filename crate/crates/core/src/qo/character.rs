//! Characteristic exponents and the invariants derived from them.

use std::cmp::Ordering;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::Tower;
use crate::qo::contact::contact;
use crate::qo::factor::{factor_qo, Factorization};
use crate::qo::lattice::lattice_index;
use crate::qo::roots::RootSet;
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharData {
    pub h: Vec<ExpVec>,
    /// `n_1, ..., n_s`.
    pub n: Vec<i64>,
    /// `e_0, ..., e_s`.
    pub e: Vec<i64>,
    /// `q_1, ..., q_s`.
    pub q: Vec<ExpVec>,
    pub degree: usize,
    pub irreducible: bool,
    pub ramification: i64,
}

impl CharData {
    pub fn s(&self) -> usize {
        self.h.len()
    }

    /// `n_1 ... n_k`.
    pub fn n_product(&self, k: usize) -> i64 {
        self.n[..k].iter().product()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct J<'a> {
            h: Vec<Vec<String>>,
            n: &'a [i64],
            e: &'a [i64],
            q: Vec<Vec<String>>,
            degree: usize,
            irreducible: bool,
            ramification: i64,
        }
        serde_json::to_value(J {
            h: self.h.iter().map(|x| x.to_strings()).collect(),
            n: &self.n,
            e: &self.e,
            q: self.q.iter().map(|x| x.to_strings()).collect(),
            degree: self.degree,
            irreducible: self.irreducible,
            ramification: self.ramification,
        })
        .expect("serializable")
    }
}

/// Sort by total order, then lexicographically.
fn graded(a: &ExpVec, b: &ExpVec) -> Ordering {
    a.total().cmp(&b.total()).then_with(|| a.cmp(b))
}

fn sorted_contacts(roots: &[FracSeries], i: usize) -> Result<Vec<ExpVec>> {
    let mut cs = Vec::with_capacity(roots.len().saturating_sub(1));
    for (j, r) in roots.iter().enumerate() {
        if j != i {
            cs.push(contact(&roots[i], r)?);
        }
    }
    cs.sort_by(graded);
    Ok(cs)
}

/// Characteristic data of a quasi-ordinary Weierstrass polynomial.
pub fn characteristic(f: &YPoly, t: &Tower) -> Result<CharData> {
    let fac = factor_qo(f, t)?;
    characteristic_with(f, &fac)
}

pub fn characteristic_with(f: &YPoly, fac: &Factorization) -> Result<CharData> {
    let roots = &fac.roots.roots;
    let degree = f.degree().unwrap_or(0);
    let irreducible = fac.is_irreducible();
    let mut h: Vec<ExpVec> = sorted_contacts(roots, 0)?;
    h.dedup();
    for w in h.windows(2) {
        if !w[0].lt(&w[1]) {
            return Err(Error::ContactsNotTotallyOrdered(w[0].clone(), w[1].clone()));
        }
    }
    if irreducible {
        let base = sorted_contacts(roots, 0)?;
        for i in 1..roots.len() {
            if sorted_contacts(roots, i)? != base {
                return Err(Error::Assertion(format!(
                    "contacts of root {} differ from those of root 0",
                    i
                )));
            }
        }
    }
    let d = f.dim();
    let mut n = Vec::with_capacity(h.len());
    for i in 1..=h.len() {
        n.push(lattice_index(&h[..i - 1], &h[..i], d)?);
    }
    let s = h.len();
    let e: Vec<i64> = (0..=s).map(|i| n[i..].iter().product()).collect();
    let q = q_invariants(&h, &e)?;
    if irreducible && e[0] != degree as i64 {
        return Err(Error::Assertion(format!(
            "irreducible of degree {} but n_1...n_s = {}",
            degree, e[0]
        )));
    }
    Ok(CharData {
        h,
        n,
        e,
        q,
        degree,
        irreducible,
        ramification: fac.roots.ramification,
    })
}

/// `q_i = sum_{j<=i} (e_{j-1} - e_j) h_j + e_i h_i`, cross-checked against
/// `q_{i+1} = q_i + e_i (h_{i+1} - h_i)`.
pub fn q_invariants(h: &[ExpVec], e: &[i64]) -> Result<Vec<ExpVec>> {
    if e.len() != h.len() + 1 {
        return Err(Error::InvalidSpec("need e_0..e_s for h_1..h_s".into()));
    }
    let mut q = Vec::with_capacity(h.len());
    for i in 1..=h.len() {
        let mut acc = h[i - 1].scale_int(e[i]);
        for j in 1..=i {
            acc = &acc + &h[j - 1].scale_int(e[j - 1] - e[j]);
        }
        q.push(acc);
    }
    for i in 1..h.len() {
        let step = &q[i - 1] + &(&h[i] - &h[i - 1]).scale_int(e[i]);
        if step != q[i] {
            return Err(Error::Assertion(format!("q recurrence fails at i = {}", i + 1)));
        }
    }
    Ok(q)
}

/// `phi_c(h)`: piecewise linear through `(<c,h_i>, <c,q_i>)`, slope `e_i`
/// after `<c,h_i>`.
pub fn phi_c(ch: &CharData, c: &ExpVec, h: Rational64) -> Result<Rational64> {
    c.require_positive()?;
    if h < Rational64::from_integer(0) {
        return Err(Error::NegativeArgument(crate::expvec::fmt_rat(&h)));
    }
    let hb: Vec<Rational64> = ch.h.iter().map(|x| x.dot(c)).collect();
    let qb: Vec<Rational64> = ch.q.iter().map(|x| x.dot(c)).collect();
    // Find r with h in (hb_r, hb_{r+1}], hb_0 = 0.
    let mut r = 0;
    while r < hb.len() && h > hb[r] {
        r += 1;
    }
    let (h0, q0) = if r == 0 {
        (Rational64::from_integer(0), Rational64::from_integer(0))
    } else {
        (hb[r - 1], qb[r - 1])
    };
    Ok(q0 + Rational64::from_integer(ch.e[r]) * (h - h0))
}

/// Keep the terms whose exponent is not `>= bound`.
pub fn truncate_below(alpha: &FracSeries, bound: &ExpVec) -> FracSeries {
    alpha.filter_terms(|e| !bound.leq(e))
}

/// `f_r`: the minimal polynomial of `trunc_r(alpha)`, for `1 <= r <= s+1`
/// (`f_{s+1} = f`).
pub fn truncation_poly(
    f: &YPoly,
    ch: &CharData,
    roots: &RootSet,
    r: usize,
    t: &Tower,
) -> Result<YPoly> {
    let s = ch.s();
    if r < 1 || r > s + 1 {
        return Err(Error::OutOfRange {
            index: r,
            lo: 1,
            hi: s + 1,
        });
    }
    if r == s + 1 {
        return Ok(f.clone());
    }
    let bound = &ch.h[r - 1];
    let mut truncs: Vec<FracSeries> = Vec::new();
    for a in &roots.roots {
        let tr = truncate_below(a, bound);
        if !truncs.contains(&tr) {
            truncs.push(tr);
        }
    }
    let want = ch.n_product(r - 1);
    if truncs.len() as i64 != want {
        return Err(Error::Assertion(format!(
            "f_{} has {} distinct roots, expected n_1...n_{} = {}",
            r,
            truncs.len(),
            r - 1,
            want
        )));
    }
    let mut hs: Vec<ExpVec> = sorted_contacts(&truncs, 0)?;
    hs.dedup();
    if hs.as_slice() != &ch.h[..r - 1] {
        return Err(Error::Assertion(format!("characteristic of f_{} is not h_1..h_{}", r, r - 1)));
    }
    let limit = Precision::Truncated(roots.precision);
    let mut p = YPoly::constant(FracSeries::one(f.dim()));
    for tr in &truncs {
        p = p.mul_trunc(&YPoly::linear(tr), t, limit)?;
    }
    Ok(p)
}

/// For each root and each `i`: `(#{d > h_i}, #{d = h_i})`, self-contact
/// counted as `+inf`. Checked against `(e_i, e_{i-1} - e_i)`.
pub fn contact_counts(ch: &CharData, roots: &RootSet) -> Result<Vec<Vec<(usize, usize)>>> {
    let rs = &roots.roots;
    let mut out = Vec::with_capacity(rs.len());
    for i in 0..rs.len() {
        let cs = sorted_contacts(rs, i)?;
        let mut row = Vec::with_capacity(ch.s());
        for (lvl, h) in ch.h.iter().enumerate() {
            let gt = 1 + cs.iter().filter(|c| h.lt(c)).count();
            let eq = cs.iter().filter(|c| *c == h).count();
            let want = (ch.e[lvl + 1] as usize, (ch.e[lvl] - ch.e[lvl + 1]) as usize);
            if (gt, eq) != want {
                return Err(Error::Assertion(format!(
                    "root {}: counts at h_{} are {:?}, expected {:?}",
                    i,
                    lvl + 1,
                    (gt, eq),
                    want
                )));
            }
            row.push((gt, eq));
        }
        out.push(row);
    }
    Ok(out)
}
