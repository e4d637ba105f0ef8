//! One-shot analysis of a Weierstrass polynomial: quasi-ordinariness,
//! roots, factorization and characteristic data.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expvec::{fmt_rat, ExpVec};
use crate::field::{AlgNum, Tower};
use crate::json;
use crate::qo::{characteristic_with, factor::factor_at, CharData, Factorization};
use crate::resultant::quasi_ordinary_test;
use crate::ypoly::YPoly;

#[derive(Clone, Debug)]
pub struct Analysis {
    pub poly: YPoly,
    pub degree: usize,
    pub quasi_ordinary: bool,
    /// Exponent of the monomial factor of the discriminant.
    pub q: Option<ExpVec>,
    pub unit_constant: Option<AlgNum>,
    /// `None` when `f` is not quasi-ordinary.
    pub factorization: Option<Factorization>,
    /// Present for irreducible quasi-ordinary `f`.
    pub characteristic: Option<CharData>,
}

impl Analysis {
    pub fn irreducible(&self) -> Option<bool> {
        self.factorization.as_ref().map(|f| f.is_irreducible())
    }

    pub fn to_json(&self, t: &Tower) -> Value {
        let factors: Vec<Value> = self
            .factorization
            .iter()
            .flat_map(|fac| &fac.factors)
            .map(|(p, mult)| {
                json!({
                    "text": p.to_text(),
                    "degree": p.degree(),
                    "multiplicity": mult,
                    "precision": json::precision(p.precision()),
                })
            })
            .collect();
        let roots = self.factorization.as_ref().map(|fac| {
            json!({
                "precision": fmt_rat(&fac.roots.precision),
                "ramification": fac.roots.ramification,
                "series": fac.roots.roots.iter().map(|r| r.to_text()).collect::<Vec<_>>(),
            })
        });
        json!({
            "polynomial": self.poly.to_text(),
            "degree": self.degree,
            "quasi_ordinary": self.quasi_ordinary,
            "discriminant_exponent": self.q.as_ref().map(json::exp),
            "discriminant_unit_constant": self.unit_constant.as_ref().map(|c| json::algnum(c, t)),
            "irreducible": self.irreducible(),
            "factors": factors,
            "characteristic": self.characteristic.as_ref().map(|c| c.to_json()),
            "roots": roots,
            "tower": json::tower(t),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "polynomial      {}", self.poly.to_text());
        let _ = writeln!(s, "degree          {}", self.degree);
        let _ = writeln!(s, "quasi-ordinary  {}", yn(self.quasi_ordinary));
        if let Some(q) = &self.q {
            let _ = writeln!(s, "disc exponent   {}", q);
        }
        if let Some(irr) = self.irreducible() {
            let _ = writeln!(s, "irreducible     {}", yn(irr));
        }
        if let Some(fac) = &self.factorization {
            if !fac.is_irreducible() {
                for (p, _) in &fac.factors {
                    let _ = writeln!(s, "factor          {}", p.to_text());
                }
            }
        }
        if let Some(ch) = &self.characteristic {
            let list = |v: &[ExpVec]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let ints = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(s, "s               {}", ch.s());
            let _ = writeln!(s, "h               {}", list(&ch.h));
            let _ = writeln!(s, "n               {}", ints(&ch.n));
            let _ = writeln!(s, "e               {}", ints(&ch.e));
            let _ = writeln!(s, "q               {}", list(&ch.q));
        }
        if let Some(fac) = &self.factorization {
            let _ = writeln!(s, "roots to order  {}", fmt_rat(&fac.roots.precision));
            for r in &fac.roots.roots {
                let _ = writeln!(s, "  {}", r.to_text());
            }
        }
        s
    }
}

/// Analyze a monic Weierstrass polynomial. `extra` raises the root
/// precision above the default `<1,q> + 1`.
pub fn analyze(f: &YPoly, extra: Rational64, t: &Tower) -> Result<Analysis> {
    f.require_weierstrass()?;
    if extra < Rational64::from_integer(0) {
        return Err(Error::NegativeArgument(fmt_rat(&extra)));
    }
    let degree = f.degree().unwrap_or(0);
    let cert = quasi_ordinary_test(f, t)?;
    if !cert.is_qo {
        return Ok(Analysis {
            poly: f.clone(),
            degree,
            quasi_ordinary: false,
            q: None,
            unit_constant: None,
            factorization: None,
            characteristic: None,
        });
    }
    let fac = factor_at(f, extra, t)?;
    let characteristic = if fac.is_irreducible() {
        Some(characteristic_with(f, &fac)?)
    } else {
        None
    };
    Ok(Analysis {
        poly: f.clone(),
        degree,
        quasi_ordinary: true,
        q: cert.q,
        unit_constant: cert.unit_constant,
        factorization: Some(fac),
        characteristic,
    })
}
