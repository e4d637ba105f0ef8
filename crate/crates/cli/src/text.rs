//! Human-readable renderings for `--format text`.

use std::fmt::Write as _;

use quasiord::criterion::{CriterionReport, RootMatch, Verdict};
use quasiord::expvec::fmt_rat;
use quasiord::logdist::{LogDistance, TriangleReport};
use quasiord::qo::CharData;
use quasiord::{ExpVec, FracSeries, YPoly};

fn list(v: &[ExpVec]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matches(ms: &[RootMatch]) -> String {
    ms.iter()
        .map(|m| {
            let low = m.lowest.as_ref().map_or("-".to_string(), |e| e.to_string());
            format!("{}->{} {}", m.g_root, m.f_root, low)
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn row(s: &mut String, key: &str, val: impl std::fmt::Display) {
    let _ = writeln!(s, "{:<24}{}", key, val);
}

pub fn report(r: &CriterionReport) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        Verdict::Holds => "holds",
        Verdict::Inconclusive => "inconclusive",
    };
    row(&mut s, "verdict", verdict);
    row(&mut s, "k", r.k);
    row(&mut s, "f: h", list(&r.f_char.h));
    row(&mut s, "f: n", ints(&r.f_char.n));
    row(&mut s, "f: q", list(&r.f_char.q));
    row(&mut s, "deg g", r.deg_g);
    row(&mut s, "resultant", r.resultant.to_text());
    row(&mut s, "threshold", &r.threshold);
    let h = &r.hypotheses;
    row(&mut s, "degree bound", yn(h.deg_ok));
    row(&mut s, "exponents above", yn(h.resultant_exponents_ok));
    if let Some(b) = h.moreover_divisibility_ok {
        row(&mut s, "next exponent test", yn(b));
    }
    if let Some(i) = &r.intersections {
        row(&mut s, "i0(F,X)", i.n);
        row(&mut s, "i0(G,X)", &i.g_axis);
        row(&mut s, "i0(F,G)", &i.fg);
        if let Some(b) = &i.bound {
            row(&mut s, "bound", fmt_rat(b));
        }
    }
    if let Some(d) = &r.log_distances {
        row(&mut s, "cont(f,g)", list(d.fg.polytope.vertices()));
        row(&mut s, "cont(f,f_k)", list(d.f_fk.polytope.vertices()));
        if let Some(x) = &d.f_fk1 {
            row(&mut s, "cont(f,f_k+1)", list(x.polytope.vertices()));
        }
    }
    if let Some(c) = &r.conclusions {
        row(&mut s, "g irreducible", yn(c.irreducible));
        row(&mut s, "g quasi-ordinary", yn(c.quasi_ordinary));
        row(&mut s, "g degree", c.degree);
        row(&mut s, "g characteristic", list(&c.characteristic));
        row(&mut s, "roots agree below", &c.root_proximity);
        if let Some((e, _)) = &c.resultant_exact_form {
            row(&mut s, "resultant exponent", e);
        }
        if let Some(e) = &c.next_proximity {
            row(&mut s, "roots agree below (next)", e);
        }
    }
    if let Some(v) = &r.verified {
        row(&mut s, "checked: quasi-ordinary", yn(v.quasi_ordinary));
        if let Some(b) = v.irreducible {
            row(&mut s, "checked: irreducible", yn(b));
        }
        row(&mut s, "checked: degree", v.degree);
        if let Some(c) = &v.characteristic {
            row(&mut s, "checked: characteristic", list(c));
        }
        if !v.root_matches.is_empty() {
            row(&mut s, "checked: root matches", matches(&v.root_matches));
        }
    }
    for w in &r.warnings {
        row(&mut s, "warning", w);
    }
    s
}

pub fn distances(ds: &[(&str, &LogDistance)]) -> String {
    let mut s = String::new();
    for (name, d) in ds {
        row(&mut s, &format!("cont({})", name), list(d.polytope.vertices()));
        row(&mut s, &format!("res({})", name), d.resultant.to_text());
    }
    s
}

pub fn triangle(r: &TriangleReport, regime: &str) -> String {
    let mut s = String::new();
    row(&mut s, "inf", list(r.inf.vertices()));
    row(&mut s, "holds", yn(r.holds));
    if let Some(w) = &r.witness {
        row(&mut s, "witness", w);
    }
    row(&mut s, "regime", regime);
    s
}

/// A valid input document: the data as comments, then `f`.
pub fn generated(f: &YPoly, ch: &CharData, root: &FracSeries, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# seed {}", seed);
    let _ = writeln!(s, "# h {}", list(&ch.h));
    let _ = writeln!(s, "# n {}", ints(&ch.n));
    let _ = writeln!(s, "# q {}", list(&ch.q));
    let _ = writeln!(s, "# root {}", root.to_text());
    let _ = writeln!(s, "f = {}", f.to_text());
    s
}
