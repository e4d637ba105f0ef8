//! Newton polytopes: upward-closed convex hulls `conv(V) + R_{>=0}^D`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::lp;
use crate::series::FracSeries;
use crate::ypoly::YPoly;

/// Vertex representation, vertices sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<ExpVec>,
}

/// A facet inequality `<normal, x> >= offset`, `normal` a primitive
/// non-negative integer vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Facet {
    pub normal: ExpVec,
    pub offset: Rational64,
}

fn big(x: &Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn small(x: &BigRational) -> Rational64 {
    Rational64::new(
        x.numer().to_i64().expect("rational overflow"),
        x.denom().to_i64().expect("rational overflow"),
    )
}

impl Polytope {
    /// Newton polytope generated by `points`.
    pub fn from_points(dim: usize, points: impl IntoIterator<Item = ExpVec>) -> Result<Polytope> {
        let mut pts: Vec<ExpVec> = Vec::new();
        for p in points {
            p.check_dim(dim)?;
            pts.push(p);
        }
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::ZeroInput("Newton polytope of an empty support"));
        }
        // Drop dominated points.
        let mut kept: Vec<ExpVec> = pts
            .iter()
            .filter(|p| !pts.iter().any(|q| q.lt(p)))
            .cloned()
            .collect();
        // Drop points in conv(others) + orthant, one at a time.
        let mut i = 0;
        while i < kept.len() && kept.len() > 1 {
            let others: Vec<&ExpVec> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v)
                .collect();
            if in_hull(dim, &others, &kept[i]) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Polytope {
            dim,
            vertices: kept,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExpVec] {
        &self.vertices
    }

    pub fn is_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `min <omega, v>` over the vertices.
    pub fn support_function(&self, omega: &ExpVec) -> Result<Rational64> {
        omega.check_dim(self.dim)?;
        omega.require_nonneg()?;
        Ok(self.vertices.iter().map(|v| v.dot(omega)).min().unwrap())
    }

    /// Vertices of the face in direction `c`.
    pub fn face(&self, c: &ExpVec) -> Result<Vec<ExpVec>> {
        c.check_dim(self.dim)?;
        c.require_positive()?;
        let m = self.vertices.iter().map(|v| v.dot(c)).min().unwrap();
        Ok(self
            .vertices
            .iter()
            .filter(|v| v.dot(c) == m)
            .cloned()
            .collect())
    }

    pub fn scale(&self, s: Rational64) -> Result<Polytope> {
        if s <= Rational64::zero() {
            return Err(Error::NonPositiveScale);
        }
        Ok(Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        })
    }

    /// Newton polytope of the union of the two vertex sets.
    pub fn inf(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Polytope::from_points(
            self.dim,
            self.vertices.iter().chain(&other.vertices).cloned(),
        )
    }

    /// Image under `(x, y) -> (<c, x>, y)`; `self` lives in `(X, Y)`-space.
    pub fn linear_image(&self, c: &ExpVec) -> Result<Polytope> {
        if self.dim < 2 {
            return Err(Error::DimensionMismatch(self.dim, c.dim() + 1));
        }
        c.check_dim(self.dim - 1)?;
        c.require_positive()?;
        Polytope::from_points(
            2,
            self.vertices.iter().map(|v| {
                let (x, y) = v.split_last();
                ExpVec::new(vec![x.dot(c), y])
            }),
        )
    }

    /// Image under `x -> <c, x>` of a polytope in `X`-space.
    pub fn project(&self, c: &ExpVec) -> Result<Polytope> {
        c.check_dim(self.dim)?;
        c.require_positive()?;
        Polytope::from_points(1, self.vertices.iter().map(|v| ExpVec::new(vec![v.dot(c)])))
    }

    pub fn contains(&self, p: &ExpVec) -> Result<bool> {
        p.check_dim(self.dim)?;
        if self.vertices.iter().any(|v| v.leq(p)) {
            return Ok(true);
        }
        if self.dim == 1 {
            return Ok(false);
        }
        Ok(self
            .facets()
            .iter()
            .all(|f| p.dot(&f.normal) >= f.offset))
    }

    /// `self ⊂ other`.
    pub fn is_subset(&self, other: &Polytope) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        for v in &self.vertices {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All facet inequalities, sorted.
    pub fn facets(&self) -> Vec<Facet> {
        let d = self.dim;
        let mut out: BTreeSet<Facet> = BTreeSet::new();
        if d == 1 {
            out.insert(Facet {
                normal: ExpVec::from_ints(&[1]),
                offset: self.vertices[0].get(0),
            });
            return out.into_iter().collect();
        }
        for v0 in &self.vertices {
            let mut dirs: Vec<Vec<BigRational>> = self
                .vertices
                .iter()
                .filter(|v| *v != v0)
                .map(|v| (v - v0).coords().iter().map(big).collect())
                .collect();
            for i in 0..d {
                dirs.push(ExpVec::unit(d, i).coords().iter().map(big).collect());
            }
            for combo in combinations(dirs.len(), d - 1) {
                let rows: Vec<&Vec<BigRational>> = combo.iter().map(|&i| &dirs[i]).collect();
                let Some(normal) = primitive_normal(&rows, d) else {
                    continue;
                };
                let offset = v0.dot(&normal);
                if self.vertices.iter().all(|v| v.dot(&normal) >= offset) {
                    out.insert(Facet { normal, offset });
                }
            }
        }
        out.into_iter().collect()
    }

    /// Deterministic SVG drawing of a planar polytope.
    pub fn render_svg(&self) -> Result<String> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch(self.dim, 2));
        }
        const S: f64 = 40.0;
        let f = |x: &Rational64| x.to_f64().unwrap();
        let max_x = self.vertices.iter().map(|v| v.get(0)).max().unwrap();
        let max_y = self.vertices.iter().map(|v| v.get(1)).max().unwrap();
        let ext_x = (f(&max_x).ceil() as i64).max(1) + 1;
        let ext_y = (f(&max_y).ceil() as i64).max(1) + 1;
        let w = (ext_x + 2) as f64 * S;
        let h = (ext_y + 2) as f64 * S;
        // Math (x, y) to SVG coordinates; one unit of margin on each side.
        let px = |x: f64| (x + 1.0) * S;
        let py = |y: f64| (ext_y as f64 + 1.0 - y) * S;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.0} {h:.0}" width="{w:.0}" height="{h:.0}">"#
        );
        // Region: from the top of the first vertex's column down the
        // boundary and out to the right edge.
        let first = &self.vertices[0];
        let last = &self.vertices[self.vertices.len() - 1];
        let mut region = Vec::new();
        region.push((f(&first.get(0)), ext_y as f64));
        for v in &self.vertices {
            region.push((f(&v.get(0)), f(&v.get(1))));
        }
        region.push((ext_x as f64, f(&last.get(1))));
        region.push((ext_x as f64, ext_y as f64));
        let pts = |ps: &[(f64, f64)]| {
            ps.iter()
                .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(
            svg,
            r##"  <polygon points="{}" fill="#c8c8c8" stroke="none"/>"##,
            pts(&region)
        );
        // Axes with integer ticks.
        let _ = writeln!(
            svg,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            px(0.0),
            py(0.0),
            px(ext_x as f64),
            py(0.0)
        );
        let _ = writeln!(
            svg,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            px(0.0),
            py(0.0),
            px(0.0),
            py(ext_y as f64)
        );
        for i in 1..=ext_x {
            let x = px(i as f64);
            let _ = writeln!(
                svg,
                r#"  <line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
                py(0.0) - 4.0,
                py(0.0) + 4.0
            );
        }
        for j in 1..=ext_y {
            let y = py(j as f64);
            let _ = writeln!(
                svg,
                r#"  <line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#,
                px(0.0) - 4.0,
                px(0.0) + 4.0
            );
        }
        let _ = writeln!(
            svg,
            r#"  <polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            pts(&region[..region.len() - 1])
        );
        svg.push_str("</svg>\n");
        Ok(svg)
    }

    pub fn write_svg(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.render_svg()?)?;
        Ok(())
    }
}

/// `p in conv(others) + R_{>=0}^D`.
fn in_hull(dim: usize, others: &[&ExpVec], p: &ExpVec) -> bool {
    // Variables: lambda_j (one per point), slack s_i (one per coordinate).
    let k = others.len();
    let mut a = Vec::with_capacity(dim + 1);
    let mut b = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        let mut row: Vec<BigRational> = others.iter().map(|v| big(&v.get(i))).collect();
        for j in 0..dim {
            row.push(if i == j { BigRational::one() } else { BigRational::zero() });
        }
        a.push(row);
        b.push(big(&p.get(i)));
    }
    let mut row = vec![BigRational::one(); k];
    row.extend(std::iter::repeat_n(BigRational::zero(), dim));
    a.push(row);
    b.push(BigRational::one());
    lp::feasible(&a, &b)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut sign = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let v = &f * &m[c][j];
                m[r][j] -= v;
            }
        }
    }
    (0..n).fold(sign, |acc, i| acc * &m[i][i])
}

/// Normal of the hyperplane spanned by `rows` (`dim - 1` vectors), as a
/// primitive non-negative integer vector; `None` if the rows are dependent or
/// no non-negative normal exists.
fn primitive_normal(rows: &[&Vec<BigRational>], dim: usize) -> Option<ExpVec> {
    let mut n: Vec<BigRational> = (0..dim)
        .map(|i| {
            let minor: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det(minor);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    if n.iter().all(|x| x.is_zero()) {
        return None;
    }
    if n.iter().any(|x| x.is_negative()) {
        if n.iter().any(|x| x.is_positive()) {
            return None;
        }
        n = n.into_iter().map(|x| -x).collect();
    }
    let den = n.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = n
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ExpVec::new(
        ints.iter()
            .map(|x| small(&BigRational::from_integer(x / &g)))
            .collect(),
    ))
}

/// Newton polytope of a nonzero series.
pub fn polytope_of_series(p: &FracSeries) -> Result<Polytope> {
    if p.is_zero() {
        return Err(Error::ZeroInput("Newton polytope of the zero series"));
    }
    Polytope::from_points(p.dim(), p.support().cloned())
}

/// Newton polytope in `(X, Y)`-space of a nonzero `Y`-polynomial.
pub fn polytope_of_ypoly(f: &YPoly) -> Result<Polytope> {
    let pts = f.support_points();
    if pts.is_empty() {
        return Err(Error::ZeroInput("Newton polytope of the zero polynomial"));
    }
    Polytope::from_points(f.dim() + 1, pts)
}

/// `self ⊂ other`, the order in which smaller polytopes are "greater".
pub fn polytope_leq(a: &Polytope, b: &Polytope) -> Result<bool> {
    a.is_subset(b)
}

/// Strictly positive `c` separating every pair of distinct vertices of the
/// listed polytopes.
pub fn is_generic(c: &ExpVec, polytopes: &[Polytope]) -> bool {
    if !c.is_positive() {
        return false;
    }
    let verts: BTreeSet<&ExpVec> = polytopes.iter().flat_map(|p| p.vertices()).collect();
    let values: BTreeSet<Rational64> = verts.iter().map(|v| v.dot(c)).collect();
    values.len() == verts.len()
}

/// First `c = (1, K, K^2, ...)`, `K` prime, accepted by [`is_generic`].
pub fn generic_direction(polytopes: &[Polytope]) -> Result<ExpVec> {
    let dim = polytopes
        .first()
        .ok_or(Error::ZeroInput("generic direction for no polytopes"))?
        .dim();
    for p in polytopes {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch(p.dim(), dim));
        }
    }
    let mut k: i64 = 2;
    loop {
        if (2..k).all(|q| k % q != 0) {
            let c = ExpVec::from_ints(&(0..dim as u32).map(|i| k.pow(i)).collect::<Vec<_>>());
            if is_generic(&c, polytopes) {
                return Ok(c);
            }
        }
        k += 1;
    }
}
