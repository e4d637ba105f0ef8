//! Resultant-based irreducibility criteria for quasi-ordinary polynomials,
//! Weierstrass preparation and plane intersection multiplicities.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expvec::{fmt_rat, ExpVec};
use crate::field::{AlgNum, Tower};
use crate::json;
use crate::logdist::{log_distance, log_distance_from, LogDistance};
use crate::polytope::polytope_of_series;
use crate::qo::roots::roots_given_q;
use crate::qo::{characteristic_with, factor_qo, truncation_poly, CharData, Factorization, RootSet};
use crate::resultant::{resultant, resultant_to_precision};
use crate::series::{FracSeries, Order, Precision};
use crate::ypoly::YPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// Exponent test on `Res(f, g)`.
    Resultant,
    /// Logarithmic distance test.
    LogDistance,
    /// Plane curves, through intersection multiplicities.
    AbhyankarMoh,
}

impl Theorem {
    fn name(self) -> &'static str {
        match self {
            Theorem::Resultant => "resultant",
            Theorem::LogDistance => "log-distance",
            Theorem::AbhyankarMoh => "abhyankar-moh",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub deg_ok: bool,
    pub resultant_exponents_ok: bool,
    /// `None` when `k = s` (no `q_{k+1}`).
    pub moreover_divisibility_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusions {
    pub irreducible: bool,
    pub quasi_ordinary: bool,
    pub degree: usize,
    pub characteristic: Vec<ExpVec>,
    /// Each root of `g` differs from some root of `f` only in exponents
    /// strictly above this one.
    pub root_proximity: ExpVec,
    /// `(deg g) q_{k+1}` and the unit's constant term.
    pub resultant_exact_form: Option<(ExpVec, AlgNum)>,
    /// Each root of `g` differs from some root of `f` only in exponents
    /// `>= h_{k+1}`.
    pub next_proximity: Option<ExpVec>,
    /// Log distance test only: `cont_A(f,g) = cont_A(f,f_{k+1})`.
    pub log_distance_equal: Option<bool>,
}

/// Root of `g`, matching root of `f`, and the graded-smallest exponent of
/// their difference (`None` when equal to working precision).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatch {
    pub g_root: usize,
    pub f_root: usize,
    pub lowest: Option<ExpVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified {
    pub quasi_ordinary: bool,
    pub irreducible: Option<bool>,
    pub degree: usize,
    pub characteristic: Option<Vec<ExpVec>>,
    pub root_matches: Vec<RootMatch>,
    pub next_matches: Option<Vec<RootMatch>>,
    /// No root of `g` has a term `X^{h_{k+1}}`.
    pub next_absent: Option<bool>,
    pub precision: Option<Rational64>,
}

#[derive(Clone, Debug)]
pub struct LogDistances {
    pub fg: LogDistance,
    pub f_fk: LogDistance,
    pub f_fk1: Option<LogDistance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersections {
    /// `i_0(F, X)`.
    pub n: u64,
    /// `i_0(G, X)`.
    pub g_axis: Multiplicity,
    /// `i_0(F, G)`.
    pub fg: Multiplicity,
    /// `n q_s`, absent when `s = 0`.
    pub bound: Option<Rational64>,
    pub precision: Rational64,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub theorem: Theorem,
    pub k: usize,
    pub f_char: CharData,
    pub deg_g: usize,
    pub resultant: FracSeries,
    /// `(deg g) q_k`.
    pub threshold: ExpVec,
    pub hypotheses: Hypotheses,
    pub verdict: Verdict,
    pub conclusions: Option<Conclusions>,
    pub verified: Option<Verified>,
    pub warnings: Vec<String>,
    pub log_distances: Option<LogDistances>,
    pub intersections: Option<Intersections>,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn to_json(&self, t: &Tower) -> Value {
        let h = &self.hypotheses;
        let conclusions = self.conclusions.as_ref().map(|c| {
            json!({
                "irreducible": c.irreducible,
                "quasi_ordinary": c.quasi_ordinary,
                "degree": c.degree,
                "characteristic": json::exps(&c.characteristic),
                "root_proximity": json::exp(&c.root_proximity),
                "resultant_exact_form": c.resultant_exact_form.as_ref().map(|(e, u)| {
                    json!({ "exponent": json::exp(e), "unit_constant": json::algnum(u, t) })
                }),
                "next_proximity": c.next_proximity.as_ref().map(json::exp),
                "log_distance_equal": c.log_distance_equal,
            })
        });
        let matches = |ms: &[RootMatch]| -> Value {
            Value::Array(
                ms.iter()
                    .map(|m| {
                        json!({
                            "g_root": m.g_root,
                            "f_root": m.f_root,
                            "lowest": m.lowest.as_ref().map(json::exp),
                        })
                    })
                    .collect(),
            )
        };
        let verified = self.verified.as_ref().map(|v| {
            json!({
                "quasi_ordinary": v.quasi_ordinary,
                "irreducible": v.irreducible,
                "degree": v.degree,
                "characteristic": v.characteristic.as_deref().map(json::exps),
                "root_matches": matches(&v.root_matches),
                "next_matches": v.next_matches.as_deref().map(matches),
                "next_absent": v.next_absent,
                "precision": v.precision.as_ref().map(fmt_rat),
            })
        });
        let dists = self.log_distances.as_ref().map(|d| {
            json!({
                "f_g": json::polytope(&d.fg.polytope),
                "f_fk": json::polytope(&d.f_fk.polytope),
                "f_fk1": d.f_fk1.as_ref().map(|x| json::polytope(&x.polytope)),
            })
        });
        let inter = self.intersections.as_ref().map(|i| {
            json!({
                "i0_f_x": i.n,
                "i0_g_x": i.g_axis.to_string(),
                "i0_f_g": i.fg.to_string(),
                "bound": i.bound.as_ref().map(fmt_rat),
                "precision": fmt_rat(&i.precision),
            })
        });
        json!({
            "theorem": self.theorem.name(),
            "k": self.k,
            "verdict": match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Inconclusive => "inconclusive",
            },
            "f": self.f_char.to_json(),
            "deg_g": self.deg_g,
            "resultant": json::series(&self.resultant, t),
            "threshold": json::exp(&self.threshold),
            "hypotheses": {
                "deg_ok": h.deg_ok,
                "resultant_exponents_ok": h.resultant_exponents_ok,
                "moreover_divisibility_ok": match h.moreover_divisibility_ok {
                    Some(b) => json!(b),
                    None => json!("not applicable"),
                },
            },
            "conclusions": conclusions,
            "verified": verified,
            "warnings": self.warnings,
            "log_distances": dists,
            "intersections": inter,
        })
    }
}

/// `f` monic Weierstrass, quasi-ordinary and irreducible.
fn analyze_f(f: &YPoly, t: &Tower) -> Result<(Factorization, CharData)> {
    f.require_weierstrass()?;
    let fac = factor_qo(f, t)?;
    if !fac.is_irreducible() {
        return Err(Error::Reducible);
    }
    let ch = characteristic_with(f, &fac)?;
    Ok((fac, ch))
}

fn check_k(ch: &CharData, k: usize) -> Result<()> {
    if k < 1 || k > ch.s() {
        return Err(Error::OutOfRange {
            index: k,
            lo: 1,
            hi: ch.s(),
        });
    }
    Ok(())
}

fn strictly_above(a: &ExpVec, b: &ExpVec) -> bool {
    b.leq(a) && a != b
}

struct Oracle {
    quasi_ordinary: bool,
    factorization: Option<Factorization>,
    characteristic: Option<Vec<ExpVec>>,
}

fn oracle(g: &YPoly, t: &Tower) -> Result<Oracle> {
    if g.degree() == Some(1) {
        let fac = factor_qo(g, t)?;
        return Ok(Oracle {
            quasi_ordinary: true,
            factorization: Some(fac),
            characteristic: Some(Vec::new()),
        });
    }
    let fac = match factor_qo(g, t) {
        Err(Error::NotQuasiOrdinary) => {
            return Ok(Oracle {
                quasi_ordinary: false,
                factorization: None,
                characteristic: None,
            })
        }
        other => other?,
    };
    let characteristic = if fac.is_irreducible() {
        Some(characteristic_with(g, &fac)?.h)
    } else {
        None
    };
    Ok(Oracle {
        quasi_ordinary: true,
        factorization: Some(fac),
        characteristic,
    })
}

/// For each root of `g`, the first root of `f` whose difference has every
/// known exponent satisfying `ok`.
fn match_roots(
    zg: &[FracSeries],
    zf: &[FracSeries],
    ok: impl Fn(&ExpVec) -> bool,
) -> Result<Option<Vec<RootMatch>>> {
    let mut out = Vec::with_capacity(zg.len());
    for (j, gamma) in zg.iter().enumerate() {
        let mut found = None;
        for (i, alpha) in zf.iter().enumerate() {
            let diff = gamma.sub(alpha)?;
            if diff.support().all(&ok) {
                let lowest = diff
                    .support()
                    .min_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)))
                    .cloned();
                found = Some(RootMatch {
                    g_root: j,
                    f_root: i,
                    lowest,
                });
                break;
            }
        }
        match found {
            Some(m) => out.push(m),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Roots of `p` to at least total order `n`.
fn roots_at_least(p: &YPoly, have: &RootSet, n: Rational64, t: &Tower) -> Result<RootSet> {
    if have.precision >= n {
        return Ok(have.clone());
    }
    roots_given_q(p, have.q.clone(), n - have.q.total() - Rational64::one(), t)
}

struct VerifyInput<'a> {
    f_roots: &'a RootSet,
    f: &'a YPoly,
    g: &'a YPoly,
    k: usize,
    ch: &'a CharData,
    holds: bool,
    /// `h_{k+1}` when the divisibility branch applies.
    next: Option<ExpVec>,
}

/// Independent confirmation of the conclusions. A disagreement is an error.
fn verify(v: VerifyInput<'_>, t: &Tower) -> Result<Verified> {
    let o = oracle(v.g, t)?;
    let degree = v.g.degree().unwrap_or(0);
    let irreducible = o.factorization.as_ref().map(|f| f.is_irreducible());
    let mut out = Verified {
        quasi_ordinary: o.quasi_ordinary,
        irreducible,
        degree,
        characteristic: o.characteristic.clone(),
        root_matches: Vec::new(),
        next_matches: None,
        next_absent: None,
        precision: None,
    };
    if !v.holds {
        return Ok(out);
    }
    let hk = &v.ch.h[..v.k];
    let want_deg = v.ch.n_product(v.k) as usize;
    if !o.quasi_ordinary || irreducible != Some(true) {
        return Err(Error::Assertion(
            "oracle: g is not irreducible quasi-ordinary".into(),
        ));
    }
    if o.characteristic.as_deref() != Some(hk) || degree != want_deg {
        return Err(Error::Assertion(format!(
            "oracle: g has degree {} and characteristic {:?}, expected {} and {:?}",
            degree, o.characteristic, want_deg, hk
        )));
    }
    let g_roots = &o.factorization.as_ref().unwrap().roots;
    let mut need = v.f_roots.precision.max(g_roots.precision);
    if let Some(nx) = &v.next {
        need = need.max(nx.total() + Rational64::from_integer(1));
    }
    let zf = roots_at_least(v.f, v.f_roots, need, t)?;
    let zg = roots_at_least(v.g, g_roots, need, t)?;
    out.precision = Some(need);
    let h = v.ch.h[v.k - 1].clone();
    out.root_matches = match_roots(&zg.roots, &zf.roots, |e| strictly_above(e, &h))?
        .ok_or_else(|| Error::Assertion("oracle: some root of g is far from every root of f".into()))?;
    if let Some(nx) = &v.next {
        out.next_matches = Some(
            match_roots(&zg.roots, &zf.roots, |e| nx.leq(e))?.ok_or_else(|| {
                Error::Assertion("oracle: some root of g is not close to order h_{k+1}".into())
            })?,
        );
        if zg.roots.iter().any(|g| !g.coeff(nx).is_zero()) {
            return Err(Error::Assertion("oracle: a root of g has a term X^h_{k+1}".into()));
        }
        out.next_absent = Some(true);
    }
    Ok(out)
}

fn degree_warning(deg_g: usize, want: i64) -> String {
    format!(
        "deg g = {} < n_1...n_k = {} although both hypotheses hold; the degree \
         conclusion cannot be met, so no conclusion is drawn",
        deg_g, want
    )
}

/// Exponent test on `Res(f, g)` for `f` irreducible quasi-ordinary and `g`
/// Weierstrass.
pub fn check_theorem1(f: &YPoly, g: &YPoly, k: usize, verify_mode: bool, t: &Tower) -> Result<CriterionReport> {
    let (fac, ch) = analyze_f(f, t)?;
    check_k(&ch, k)?;
    g.require_weierstrass()?;
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch(g.dim(), f.dim()));
    }
    let deg_g = g.degree().unwrap();
    let res = resultant(f, g, t)?;
    if res.is_zero() {
        return Err(Error::ResultantVanishes);
    }
    let want = ch.n_product(k);
    let threshold = ch.q[k - 1].scale_int(deg_g as i64);
    let deg_ok = deg_g as i64 <= want;
    let exps_ok = res.support().all(|a| strictly_above(a, &threshold));
    let next_threshold = (k < ch.s()).then(|| ch.q[k].scale_int(deg_g as i64));
    let div_ok = next_threshold
        .as_ref()
        .map(|q1| res.support().all(|a| q1.leq(a)));
    let mut warnings = Vec::new();
    let mut holds = deg_ok && exps_ok;
    if holds && (deg_g as i64) < want {
        warnings.push(degree_warning(deg_g, want));
        holds = false;
    }
    let conclusions = if holds {
        let exact_form = match (&next_threshold, div_ok) {
            (Some(q1), Some(true)) => {
                let u0 = res.coeff(q1);
                if u0.is_zero() {
                    return Err(Error::Assertion(format!(
                        "Res(f,g) is divisible by X^{} but its coefficient there vanishes",
                        q1
                    )));
                }
                Some((q1.clone(), u0))
            }
            _ => None,
        };
        let next = exact_form.as_ref().map(|_| ch.h[k].clone());
        Some(Conclusions {
            irreducible: true,
            quasi_ordinary: true,
            degree: want as usize,
            characteristic: ch.h[..k].to_vec(),
            root_proximity: ch.h[k - 1].clone(),
            resultant_exact_form: exact_form,
            next_proximity: next,
            log_distance_equal: None,
        })
    } else {
        None
    };
    let verified = if verify_mode {
        Some(verify(
            VerifyInput {
                f_roots: &fac.roots,
                f,
                g,
                k,
                ch: &ch,
                holds,
                next: conclusions.as_ref().and_then(|c| c.next_proximity.clone()),
            },
            t,
        )?)
    } else {
        None
    };
    Ok(CriterionReport {
        theorem: Theorem::Resultant,
        k,
        f_char: ch,
        deg_g,
        resultant: res,
        threshold,
        hypotheses: Hypotheses {
            deg_ok,
            resultant_exponents_ok: exps_ok,
            moreover_divisibility_ok: div_ok,
        },
        verdict: if holds { Verdict::Holds } else { Verdict::Inconclusive },
        conclusions,
        verified,
        warnings,
        log_distances: None,
        intersections: None,
    })
}

const MAX_PRECISION_ROUNDS: usize = 6;

/// `cont_A(f, f_r)`. `Res(f, f_r)` is a monomial times a unit (each root
/// difference is), so a single known vertex below the precision is the
/// true exponent.
fn distance_to_truncation(
    f: &YPoly,
    ch: &CharData,
    roots: &RootSet,
    r: usize,
    t: &Tower,
) -> Result<LogDistance> {
    let mut roots = roots.clone();
    for _ in 0..MAX_PRECISION_ROUNDS {
        let fr = truncation_poly(f, ch, &roots, r, t)?;
        let res = resultant_to_precision(f, &fr, t)?;
        if !res.is_zero() {
            let poly = polytope_of_series(&res)?;
            let v = &poly.vertices()[0];
            if poly.is_vertex() && res.precision().covers(v.total()) {
                let exact = FracSeries::monomial(v.clone(), res.coeff(v));
                return log_distance_from(exact, f.degree().unwrap(), fr.degree().unwrap());
            }
        }
        roots = roots_given_q(f, roots.q.clone(), roots.precision, t)?;
    }
    Err(Error::PrecisionExhausted(format!("Res(f, f_{}) not certified", r)))
}

/// Logarithmic distance test: `cont_A(f,g) > cont_A(f,f_k)`.
pub fn check_theorem3(f: &YPoly, g: &YPoly, k: usize, verify_mode: bool, t: &Tower) -> Result<CriterionReport> {
    let (fac, ch) = analyze_f(f, t)?;
    check_k(&ch, k)?;
    g.require_weierstrass()?;
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch(g.dim(), f.dim()));
    }
    let deg_g = g.degree().unwrap();
    let fg = log_distance(f, g, t)?;
    let f_fk = distance_to_truncation(f, &ch, &fac.roots, k, t)?;
    let f_fk1 = if k < ch.s() {
        Some(distance_to_truncation(f, &ch, &fac.roots, k + 1, t)?)
    } else {
        None
    };
    let want = ch.n_product(k);
    let deg_ok = deg_g as i64 <= want;
    let gt_ok = fg.gt(&f_fk)?;
    let moreover = f_fk1.as_ref().map(|d| fg.geq(d)).transpose()?;
    let mut warnings = Vec::new();
    let mut holds = deg_ok && gt_ok;
    if holds && (deg_g as i64) < want {
        warnings.push(degree_warning(deg_g, want));
        holds = false;
    }
    let conclusions = if holds {
        let equal = match (&f_fk1, moreover) {
            (Some(d), Some(true)) => {
                if fg.polytope != d.polytope {
                    return Err(Error::Assertion(
                        "cont_A(f,g) >= cont_A(f,f_{k+1}) without equality".into(),
                    ));
                }
                Some(true)
            }
            _ => None,
        };
        Some(Conclusions {
            irreducible: true,
            quasi_ordinary: true,
            degree: want as usize,
            characteristic: ch.h[..k].to_vec(),
            root_proximity: ch.h[k - 1].clone(),
            resultant_exact_form: None,
            next_proximity: None,
            log_distance_equal: equal,
        })
    } else {
        None
    };
    let verified = if verify_mode {
        Some(verify(
            VerifyInput {
                f_roots: &fac.roots,
                f,
                g,
                k,
                ch: &ch,
                holds,
                next: None,
            },
            t,
        )?)
    } else {
        None
    };
    let threshold = ch.q[k - 1].scale_int(deg_g as i64);
    Ok(CriterionReport {
        theorem: Theorem::LogDistance,
        k,
        f_char: ch,
        deg_g,
        resultant: fg.resultant.clone(),
        threshold,
        hypotheses: Hypotheses {
            deg_ok,
            resultant_exponents_ok: gt_ok,
            moreover_divisibility_ok: moreover,
        },
        verdict: if holds { Verdict::Holds } else { Verdict::Inconclusive },
        conclusions,
        verified,
        warnings,
        log_distances: Some(LogDistances { fg, f_fk, f_fk1 }),
        intersections: None,
    })
}

/// `F = unit * f1` with `f1` a monic Weierstrass polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub unit: YPoly,
    pub f1: YPoly,
}

/// Smallest `m` with `a_m(0) != 0`, i.e. the order of `F(0, Y)`.
pub fn axis_order(f: &YPoly) -> Option<usize> {
    f.coeffs().iter().position(|c| !c.constant_term().is_zero())
}

/// Weierstrass preparation to total order `n` by linear iteration:
/// `A <- A + (R S mod A)` where `F = Q A + R` and `S = V^{-1} mod Y^m`,
/// `F(0,Y) = Y^m V(Y)`. Exact when the iteration closes exactly.
pub fn weierstrass_prepare(f: &YPoly, n: Rational64, t: &Tower) -> Result<Prepared> {
    let d = f.dim();
    let m = axis_order(f).ok_or_else(|| Error::PreparationFails("F(0, Y) vanishes".into()))?;
    let one = YPoly::constant(FracSeries::one(d));
    if f.is_monic() && f.degree() == Some(m) && f.is_weierstrass() {
        return Ok(Prepared {
            unit: one,
            f1: f.clone(),
        });
    }
    if m == 0 {
        return Ok(Prepared {
            unit: f.clone(),
            f1: one,
        });
    }
    let v: Vec<AlgNum> = f.coeffs()[m..].iter().map(|c| c.constant_term()).collect();
    let v0_inv = t.inv(&v[0]).expect("nonzero");
    let mut s: Vec<AlgNum> = vec![v0_inv.clone()];
    for j in 1..m {
        let mut acc = AlgNum::zero();
        for i in 1..=j.min(v.len() - 1) {
            acc = &acc + &t.mul(&v[i], &s[j - i]);
        }
        s.push(t.mul(&(-acc), &v0_inv));
    }
    let s_poly = YPoly::new(
        d,
        s.into_iter().map(|c| FracSeries::constant(d, c)).collect(),
    )?;
    let limit = Precision::Truncated(n);
    let mut a = YPoly::y(d);
    for _ in 1..m {
        a = a.mul(&YPoly::y(d), t)?;
    }
    let ram = f
        .coeffs()
        .iter()
        .fold(1i64, |acc, c| num_integer::lcm(acc, c.ramification()));
    let cap = (n * Rational64::from_integer(ram)).ceil().to_integer().max(1) as usize * 2 + 4;
    let mut q;
    let mut converged = false;
    let mut iter = 0;
    loop {
        let (qq, r) = f.divrem_monic(&a, t, limit)?;
        q = qq;
        if r.coeffs().iter().all(|c| c.is_zero()) {
            converged = true;
            break;
        }
        iter += 1;
        if iter > cap {
            break;
        }
        let rs = r.mul_trunc(&s_poly, t, limit)?;
        let (_, delta) = rs.divrem_monic(&a, t, limit)?;
        a = a.add(&delta)?;
    }
    if !converged {
        return Err(Error::PrecisionExhausted(
            "Weierstrass preparation did not converge".into(),
        ));
    }
    let exact = |p: &YPoly| p.map_coeffs(|c| Ok(c.clone().into_exact()));
    let (ae, qe) = (exact(&a)?, exact(&q)?);
    if f.is_exact() && qe.mul(&ae, t)? == *f {
        return Ok(Prepared { unit: qe, f1: ae });
    }
    Ok(Prepared { unit: q, f1: a })
}

/// Intersection multiplicity at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{}", n),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

fn require_plane(p: &YPoly) -> Result<()> {
    if p.dim() != 1 {
        return Err(Error::DimensionMismatch(p.dim(), 1));
    }
    if !p.is_exact() {
        return Err(Error::TruncatedInput("intersection multiplicity"));
    }
    if p.is_zero() {
        return Err(Error::ZeroInput("intersection multiplicity"));
    }
    if !p.coeffs().iter().all(|c| c.has_integral_support()) {
        return Err(Error::Parse("plane curve with fractional exponents".into()));
    }
    Ok(())
}

/// `F = X^a F'` with `F'(0, Y) != 0`.
fn split_axis(p: &YPoly) -> Result<(u64, YPoly)> {
    let a = p
        .coeffs()
        .iter()
        .filter_map(|c| c.min_total())
        .min()
        .unwrap_or_else(|| Rational64::from_integer(0));
    if a.is_zero() {
        return Ok((0, p.clone()));
    }
    let xa = ExpVec::new(vec![a]);
    Ok((a.to_integer() as u64, p.map_coeffs(|c| c.div_monomial(&xa))?))
}

const START_PRECISION: i64 = 8;
const MAX_PRECISION: i64 = 1024;

/// `ord Res(f1, g1)` for prepared parts, raising the precision until the
/// order is certified. Returns the order and the precision used.
fn prepared_resultant_order(f: &YPoly, g: &YPoly, floor: Rational64, t: &Tower) -> Result<(Multiplicity, Rational64)> {
    let mut n = Rational64::from_integer(START_PRECISION).max(floor.ceil());
    loop {
        let f1 = weierstrass_prepare(f, n, t)?.f1;
        let g1 = weierstrass_prepare(g, n, t)?.f1;
        if f1.degree() == Some(0) || g1.degree() == Some(0) {
            return Ok((Multiplicity::Finite(0), n));
        }
        let res = resultant_to_precision(&f1, &g1, t)?;
        match res.ord()? {
            Order::Finite(x) => return Ok((Multiplicity::Finite(x.to_integer() as u64), n)),
            Order::Infinite => return Ok((Multiplicity::Infinite, n)),
            Order::AtLeast(_) => {}
        }
        n *= Rational64::from_integer(2);
        if n > Rational64::from_integer(MAX_PRECISION) {
            return Err(Error::PrecisionExhausted(format!(
                "resultant of prepared parts vanishes to order {}",
                MAX_PRECISION
            )));
        }
    }
}

fn axis_multiplicity(p: &YPoly) -> Multiplicity {
    match axis_order(p) {
        Some(m) => Multiplicity::Finite(m as u64),
        None => Multiplicity::Infinite,
    }
}

fn add_mult(a: Multiplicity, b: Multiplicity) -> Multiplicity {
    match (a, b) {
        (Multiplicity::Finite(x), Multiplicity::Finite(y)) => Multiplicity::Finite(x + y),
        _ => Multiplicity::Infinite,
    }
}

/// `i_0(F, G) = a i_0(X, G) + b i_0(F', X) + ord Res(f1', g1')` for
/// `F = X^a F'`, `G = X^b G'`.
pub fn intersection_multiplicity(f: &YPoly, g: &YPoly, t: &Tower) -> Result<Multiplicity> {
    Ok(intersection_with_precision(f, g, t)?.0)
}

fn intersection_with_precision(f: &YPoly, g: &YPoly, t: &Tower) -> Result<(Multiplicity, Rational64)> {
    require_plane(f)?;
    require_plane(g)?;
    let (a, f2) = split_axis(f)?;
    let (b, g2) = split_axis(g)?;
    if a > 0 && b > 0 {
        return Ok((Multiplicity::Infinite, Rational64::from_integer(0)));
    }
    let mut total = Multiplicity::Finite(0);
    if a > 0 {
        total = scale_mult(axis_multiplicity(&g2), a);
    }
    if b > 0 {
        total = add_mult(total, scale_mult(axis_multiplicity(&f2), b));
    }
    let (rest, n) = prepared_resultant_order(&f2, &g2, Rational64::from_integer(0), t)?;
    Ok((add_mult(total, rest), n))
}

fn scale_mult(m: Multiplicity, k: u64) -> Multiplicity {
    match m {
        Multiplicity::Finite(x) => Multiplicity::Finite(x * k),
        Multiplicity::Infinite => Multiplicity::Infinite,
    }
}

fn exact_part(p: &YPoly) -> Result<YPoly> {
    p.map_coeffs(|c| Ok(c.clone().into_exact()))
}

/// Plane-curve criterion: if `i_0(G,X) = n = i_0(F,X)` and
/// `i_0(F,G) > n q_s`, then `G` is irreducible with the characteristic of
/// `F`. Runs the exponent test on the prepared parts.
///
/// When preparation is not exact the polynomial parts `f1', g1'` stand in
/// for `f1, g1`. They differ by terms of order `>= N`, so
/// `ord Res(f1', f1) >= n N`; with `N > q_s` the exponent test itself shows
/// that both have the same characteristic.
pub fn abhyankar_moh_check(f: &YPoly, g: &YPoly, verify_mode: bool, t: &Tower) -> Result<CriterionReport> {
    require_plane(f)?;
    require_plane(g)?;
    let n = match axis_order(f) {
        Some(m) if m > 0 => m as u64,
        Some(_) => return Err(Error::PreparationFails("F is a unit".into())),
        None => return Err(Error::PreparationFails("i_0(F, X) is infinite".into())),
    };
    let g_axis = axis_multiplicity(g);
    // Characteristic of F from a polynomial part of high enough precision.
    let mut prec = Rational64::from_integer(START_PRECISION);
    let (f1, ch) = loop {
        let p = weierstrass_prepare(f, prec, t)?;
        let f1 = exact_part(&p.f1)?;
        let (_, ch) = analyze_f(&f1, t)?;
        let qs = ch.q.last().map(|q| q.get(0)).unwrap_or_else(Rational64::zero);
        if p.f1.is_exact() || prec > qs {
            break (f1, ch);
        }
        prec = (qs + Rational64::one()).ceil();
    };
    let bound = ch.q.last().map(|q| q.get(0) * Rational64::from_integer(n as i64));
    let floor = ch
        .q
        .last()
        .map(|q| q.get(0) + Rational64::one())
        .unwrap_or_else(Rational64::zero)
        .max(prec);
    let (fg, used) = prepared_resultant_order(f, g, floor, t)?;
    let deg_ok = g_axis == Multiplicity::Finite(n);
    let exps_ok = match (bound, fg) {
        (None, _) => true,
        (Some(_), Multiplicity::Infinite) => true,
        (Some(b), Multiplicity::Finite(i)) => Rational64::from_integer(i as i64) > b,
    };
    if fg == Multiplicity::Infinite {
        return Err(Error::ResultantVanishes);
    }
    let inter = Intersections {
        n,
        g_axis,
        fg,
        bound,
        precision: used,
    };
    if !deg_ok {
        // G does not meet the axis like F: nothing to delegate.
        let res = FracSeries::zero(1);
        return Ok(CriterionReport {
            theorem: Theorem::AbhyankarMoh,
            k: ch.s(),
            deg_g: 0,
            resultant: res,
            threshold: ExpVec::new(vec![bound.unwrap_or_else(Rational64::zero)]),
            f_char: ch,
            hypotheses: Hypotheses {
                deg_ok,
                resultant_exponents_ok: exps_ok,
                moreover_divisibility_ok: None,
            },
            verdict: Verdict::Inconclusive,
            conclusions: None,
            verified: None,
            warnings: Vec::new(),
            log_distances: None,
            intersections: Some(inter),
        });
    }
    let g1 = exact_part(&weierstrass_prepare(g, used, t)?.f1)?;
    let mut report = if ch.s() == 0 {
        degree_one_report(&f1, &g1, verify_mode, ch, t)?
    } else {
        check_theorem1(&f1, &g1, ch.s(), verify_mode, t)?
    };
    if report.hypotheses.resultant_exponents_ok != exps_ok {
        return Err(Error::Assertion(
            "prepared resultant disagrees with the intersection multiplicity".into(),
        ));
    }
    report.theorem = Theorem::AbhyankarMoh;
    report.intersections = Some(inter);
    Ok(report)
}

/// `s = 0`: `F` is smooth and transversal to the axis, `G` has degree one.
fn degree_one_report(f1: &YPoly, g1: &YPoly, verify_mode: bool, ch: CharData, t: &Tower) -> Result<CriterionReport> {
    let res = resultant(f1, g1, t)?;
    let verified = if verify_mode {
        Some(Verified {
            quasi_ordinary: true,
            irreducible: Some(true),
            degree: 1,
            characteristic: Some(Vec::new()),
            root_matches: Vec::new(),
            next_matches: None,
            next_absent: None,
            precision: None,
        })
    } else {
        None
    };
    Ok(CriterionReport {
        theorem: Theorem::AbhyankarMoh,
        k: 0,
        f_char: ch,
        deg_g: 1,
        resultant: res,
        threshold: ExpVec::zero(1),
        hypotheses: Hypotheses {
            deg_ok: true,
            resultant_exponents_ok: true,
            moreover_divisibility_ok: None,
        },
        verdict: Verdict::Holds,
        conclusions: Some(Conclusions {
            irreducible: true,
            quasi_ordinary: true,
            degree: 1,
            characteristic: Vec::new(),
            root_proximity: ExpVec::zero(1),
            resultant_exact_form: None,
            next_proximity: None,
            log_distance_equal: None,
        }),
        verified,
        warnings: Vec::new(),
        log_distances: None,
        intersections: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ypoly;

    fn p(s: &str, d: usize) -> YPoly {
        parse_ypoly(s, Some(d)).unwrap()
    }

    #[test]
    fn cusp_pair_holds() {
        let t = Tower::new();
        let f = p("Y^2 - X^3", 1);
        let g = p("Y^2 - X^3 - X^4", 1);
        let r = check_theorem1(&f, &g, 1, true, &t).unwrap();
        assert_eq!(r.resultant, crate::parse::parse_series("X^8", Some(1)).unwrap());
        assert!(r.holds());
        let c = r.conclusions.unwrap();
        assert_eq!(c.characteristic, vec![ExpVec::from_fracs(&[(3, 2)])]);
        assert_eq!(r.hypotheses.moreover_divisibility_ok, None);
        assert_eq!(r.verified.unwrap().irreducible, Some(true));
    }

    #[test]
    fn cusp_against_reducible() {
        let t = Tower::new();
        let f = p("Y^2 - X^3", 1);
        let g = p("Y^2 - X^4", 1);
        let r = check_theorem1(&f, &g, 1, true, &t).unwrap();
        assert!(!r.holds());
        assert!(!r.hypotheses.resultant_exponents_ok);
        assert_eq!(r.verified.unwrap().irreducible, Some(false));
    }

    #[test]
    fn example_one() {
        let t = Tower::new();
        let f = p("Y^4 - 2*X1^3*X2^2*Y^2 - 4*X1^5*X2^4*Y - X1^7*X2^6 + X1^6*X2^4", 2);
        let g = p("(Y^2 - X1^3*X2^2)^2 - 4*X1^5*X2^4*Y", 2);
        let r = check_theorem1(&f, &g, 2, true, &t).unwrap();
        assert_eq!(r.resultant, crate::parse::parse_series("X1^28*X2^24", None).unwrap());
        assert_eq!(r.threshold, ExpVec::from_ints(&[26, 20]));
        assert!(r.holds());
        assert_eq!(r.hypotheses.moreover_divisibility_ok, None);
        let c = r.conclusions.as_ref().unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(c.characteristic, vec![ExpVec::from_fracs(&[(3, 2), (1, 1)]), ExpVec::from_fracs(&[(7, 4), (3, 2)])]);
        let r3 = check_theorem3(&f, &g, 2, false, &t).unwrap();
        assert!(r3.holds());
        let d = r3.log_distances.unwrap();
        assert_eq!(d.fg.polytope.vertices(), &[ExpVec::from_fracs(&[(7, 4), (3, 2)])]);
        assert_eq!(d.f_fk.polytope.vertices(), &[ExpVec::from_fracs(&[(13, 8), (5, 4)])]);
        let r1 = check_theorem1(&f, &p("Y^2 - X1^3*X2^2 - X1^4*X2^3", 2), 1, true, &t).unwrap();
        assert!(r1.holds());
        assert_eq!(r1.hypotheses.moreover_divisibility_ok, Some(true));
        let (e, _) = r1.conclusions.unwrap().resultant_exact_form.unwrap();
        assert_eq!(e, ExpVec::from_ints(&[13, 10]));
        assert_eq!(r1.verified.unwrap().next_absent, Some(true));
    }

    #[test]
    fn preparation() {
        let t = Tower::new();
        let f = p("(1 + X)*Y - X", 1);
        let pr = weierstrass_prepare(&f, 5.into(), &t).unwrap();
        let n5 = Precision::Truncated(5.into());
        let series = |s: &str| crate::parse::parse_series(s, Some(1)).unwrap();
        assert!(pr.f1.is_monic() && pr.f1.degree() == Some(1));
        assert_eq!(pr.f1.coeff(0), series("-X + X^2 - X^3 + X^4").truncate(n5));
        assert_eq!(pr.unit.coeff(0), series("1 + X").truncate(n5));
        let w = p("Y^2 + X*Y + X", 1);
        let pr = weierstrass_prepare(&w, 4.into(), &t).unwrap();
        assert_eq!(pr.f1, w);
        // Non-trivial unit, closes exactly.
        let u = p("(1 + Y)*(Y^2 - X^3)", 1);
        let pr = weierstrass_prepare(&u, 6.into(), &t).unwrap();
        assert_eq!(pr.f1, p("Y^2 - X^3", 1));
        assert_eq!(pr.unit, p("1 + Y", 1));
    }

    #[test]
    fn intersections() {
        let t = Tower::new();
        let cusp = p("Y^2 - X^3", 1);
        assert_eq!(intersection_multiplicity(&cusp, &p("X", 1), &t).unwrap(), Multiplicity::Finite(2));
        assert_eq!(intersection_multiplicity(&p("Y", 1), &p("X", 1), &t).unwrap(), Multiplicity::Finite(1));
        assert_eq!(
            intersection_multiplicity(&cusp, &p("Y^2 - X^3 - X^4", 1), &t).unwrap(),
            Multiplicity::Finite(8)
        );
        assert_eq!(
            intersection_multiplicity(&p("X*Y", 1), &p("X", 1), &t).unwrap(),
            Multiplicity::Infinite
        );
        assert_eq!(
            intersection_multiplicity(&p("(1 + Y)*(Y - X)", 1), &p("Y + X", 1), &t).unwrap(),
            Multiplicity::Finite(1)
        );
    }

    #[test]
    fn abhyankar_moh() {
        let t = Tower::new();
        let f = p("Y^2 - X^3", 1);
        let r = abhyankar_moh_check(&f, &p("Y^2 - X^3 - X^4", 1), true, &t).unwrap();
        assert!(r.holds());
        assert_eq!(r.intersections.as_ref().unwrap().fg, Multiplicity::Finite(8));
        let r = abhyankar_moh_check(&f, &p("Y^2 - X^4", 1), true, &t).unwrap();
        assert!(!r.holds());
        assert_eq!(r.intersections.as_ref().unwrap().fg, Multiplicity::Finite(6));
        assert_eq!(r.verified.unwrap().irreducible, Some(false));
        let r = abhyankar_moh_check(&p("Y - X", 1), &p("Y - X + X^5", 1), false, &t).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn log_distance_cusp() {
        let t = Tower::new();
        let f = p("Y^2 - X^3", 1);
        let r = check_theorem3(&f, &p("Y^2 - X^3 - X^4", 1), 1, false, &t).unwrap();
        assert!(r.holds());
        let r = check_theorem3(&f, &p("Y^2 - X^4", 1), 1, false, &t).unwrap();
        assert!(!r.holds());
        assert!(matches!(check_theorem3(&f, &f, 1, false, &t), Err(Error::ResultantVanishes)));
    }
}
