//! Irreducible factors of a quasi-ordinary polynomial from the Galois orbits
//! of its roots.
//!
//! The Galois group of `K((X^{1/m}))` over `K((X))` acts on a root by
//! `X^a -> eps^{m a} X^a` with `eps` ranging over `m`-th roots of unity in
//! each variable. Two roots are conjugate iff the coefficient ratios on their
//! common support form a character of the subgroup of `(Z/m)^d` generated by
//! the exponents `m a mod m`; the check never adjoins roots of unity.

use std::collections::HashMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::field::{AlgNum, Tower};
use crate::qo::roots::{qo_roots, roots_given_q, RootSet};
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

#[derive(Clone, Debug)]
pub struct Factorization {
    /// Monic irreducible factors with multiplicities, in the order of their
    /// first root.
    pub factors: Vec<(YPoly, usize)>,
    /// Indices into `roots.roots`, one list per factor.
    pub orbits: Vec<Vec<usize>>,
    pub roots: RootSet,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

fn residue(a: &crate::expvec::ExpVec, m: i64) -> Vec<i64> {
    a.coords()
        .iter()
        .map(|x| {
            let v = *x * Rational64::from_integer(m);
            debug_assert!(v.is_integer());
            v.to_integer().rem_euclid(m)
        })
        .collect()
}

fn add_mod(a: &[i64], b: &[i64], m: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(m)).collect()
}

/// Is `beta = sigma(alpha)` for some Galois automorphism (within the common
/// precision)?
pub fn conjugate(alpha: &FracSeries, beta: &FracSeries, t: &Tower) -> bool {
    let prec = alpha.precision().min(beta.precision());
    let a = alpha.truncate(prec);
    let b = beta.truncate(prec);
    if a.num_terms() != b.num_terms() || !a.support().eq(b.support()) {
        return false;
    }
    let m = num_integer::lcm(a.ramification(), b.ramification());
    let d = a.dim();
    let mut table: HashMap<Vec<i64>, AlgNum> = HashMap::new();
    table.insert(vec![0; d], AlgNum::one());
    for ((e, ca), (_, cb)) in a.terms().zip(b.terms()) {
        let r = t.div(cb, ca).expect("stored coefficients are nonzero");
        let g = residue(e, m);
        if let Some(v) = table.get(&g) {
            if *v != r {
                return false;
            }
            continue;
        }
        // Order of g modulo the current subgroup.
        let mut n = 1u64;
        let mut ng = g.clone();
        while !table.contains_key(&ng) {
            ng = add_mod(&ng, &g, m);
            n += 1;
        }
        if t.pow(&r, n) != table[&ng] {
            return false;
        }
        let old: Vec<(Vec<i64>, AlgNum)> = table.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut rj = AlgNum::one();
        let mut jg = vec![0; d];
        for _ in 1..n {
            rj = t.mul(&rj, &r);
            jg = add_mod(&jg, &g, m);
            for (h, v) in &old {
                table.insert(add_mod(h, &jg, m), t.mul(v, &rj));
            }
        }
    }
    true
}

/// `sigma(alpha)` for `sigma: X_l^{1/m} -> zeta^{k_l} X_l^{1/m}`, `zeta` a
/// primitive `m`-th root of unity.
pub fn galois_action(
    alpha: &FracSeries,
    zeta: &AlgNum,
    m: i64,
    ks: &[i64],
    t: &Tower,
) -> Result<FracSeries> {
    if ks.len() != alpha.dim() {
        return Err(Error::DimensionMismatch(ks.len(), alpha.dim()));
    }
    Ok(alpha.map_coeffs(|e, c| {
        let mut power = 0i64;
        for (x, k) in e.coords().iter().zip(ks) {
            let v = *x * Rational64::from_integer(m);
            power += v.to_integer() * k;
        }
        t.mul(c, &t.pow(zeta, power.rem_euclid(m) as u64))
    }))
}

/// Galois orbits of `roots`: lists of indices in increasing order.
pub fn orbits(roots: &[FracSeries], t: &Tower) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            if conjugate(&roots[i], &roots[j], t) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[b.max(a)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let slot = *index.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(i);
    }
    groups
}

/// Factor a quasi-ordinary Weierstrass polynomial into irreducible factors.
pub fn factor_qo(f: &YPoly, t: &Tower) -> Result<Factorization> {
    factor_at(f, Rational64::from_integer(0), t)
}

/// Factorization from roots at `<1,q> + 1 + extra`, retried once at double
/// the precision if the orbits cannot be separated.
pub(crate) fn factor_at(f: &YPoly, extra: Rational64, t: &Tower) -> Result<Factorization> {
    let roots = qo_roots(f, extra, t)?;
    let q = roots.q.clone();
    let base = roots.precision;
    match factor_with_roots(f, roots, t) {
        Err(Error::PrecisionExhausted(_)) => factor_with_roots(f, roots_given_q(f, q, extra + base, t)?, t),
        other => other,
    }
}

pub fn factor_with_roots(f: &YPoly, roots: RootSet, t: &Tower) -> Result<Factorization> {
    let d = f.dim();
    let limit = Precision::Truncated(roots.precision);
    let orbs = orbits(&roots.roots, t);
    let mut factors = Vec::with_capacity(orbs.len());
    for orb in &orbs {
        let mut p = YPoly::constant(FracSeries::one(d));
        for &i in orb {
            p = p.mul_trunc(&YPoly::linear(&roots.roots[i]), t, limit)?;
        }
        if !p.coeffs().iter().all(|c| c.has_integral_support()) {
            return Err(Error::PrecisionExhausted(
                "orbit product has fractional exponents".into(),
            ));
        }
        factors.push(p);
    }
    // Promote to exact factors when their product is exactly f.
    if f.is_exact() {
        let exact: Vec<YPoly> = factors
            .iter()
            .map(|p| p.map_coeffs(|c| Ok(c.clone().into_exact())))
            .collect::<Result<_>>()?;
        let mut prod = YPoly::constant(FracSeries::one(d));
        for p in &exact {
            prod = prod.mul(p, t)?;
        }
        if prod == *f {
            factors = exact;
        }
    }
    Ok(Factorization {
        factors: factors.into_iter().map(|p| (p, 1)).collect(),
        orbits: orbs,
        roots,
    })
}
