//! Exact coefficient arithmetic.
//!
//! Coefficients live in a tower of simple algebraic extensions over the
//! rationals. Level 0 is `Q`; level `i` is level `i - 1` adjoined with a root
//! of a monic polynomial that is irreducible over level `i - 1`. Since every
//! defining polynomial is irreducible, each level is a field and the zero
//! test is structural.
//!
//! The tower is append-only. Elements never hold a pointer to it; operations
//! that need the defining polynomials (multiplication, inversion) go through
//! a [`Tower`] reference, in the style of a ring context object.

mod factor;
pub mod upoly;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use upoly::UPoly;

/// Hard cap on the number of extension levels a single tower may grow to.
pub const MAX_LEVELS: usize = 48;

/// An element of the extension tower.
///
/// Normal form: an element of level `L > 0` is a polynomial in the level-`L`
/// generator of degree at least one and below the level degree, whose
/// coefficients are elements of levels `< L`. Anything that collapses to a
/// constant is stored at the lower level, so derived equality and hashing
/// are mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgNum(Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rat(BigRational),
    Ext { level: usize, coeffs: Vec<AlgNum> },
}

impl AlgNum {
    pub fn zero() -> Self {
        AlgNum(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Self {
        AlgNum(Repr::Rat(BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        AlgNum(Repr::Rat(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn from_rational(q: BigRational) -> Self {
        AlgNum(Repr::Rat(q))
    }

    pub fn level(&self) -> usize {
        match &self.0 {
            Repr::Rat(_) => 0,
            Repr::Ext { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Ext { .. } => None,
        }
    }

    /// Coefficients of `self` as a polynomial in the generator of `level`.
    /// Elements of lower levels are constants.
    fn coeffs_at(&self, level: usize) -> Vec<AlgNum> {
        match &self.0 {
            Repr::Ext { level: l, coeffs } if *l == level => coeffs.clone(),
            _ if self.is_zero() => Vec::new(),
            _ => vec![self.clone()],
        }
    }

    fn from_coeffs(level: usize, mut coeffs: Vec<AlgNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => AlgNum::zero(),
            1 => coeffs.pop().unwrap(),
            _ => AlgNum(Repr::Ext { level, coeffs }),
        }
    }

    pub fn scale_rat(&self, q: &BigRational) -> AlgNum {
        if q.is_zero() {
            return AlgNum::zero();
        }
        match &self.0 {
            Repr::Rat(a) => AlgNum(Repr::Rat(a * q)),
            Repr::Ext { level, coeffs } => AlgNum(Repr::Ext {
                level: *level,
                coeffs: coeffs.iter().map(|c| c.scale_rat(q)).collect(),
            }),
        }
    }
}

impl From<i64> for AlgNum {
    fn from(n: i64) -> Self {
        AlgNum::from_int(n)
    }
}

impl From<BigRational> for AlgNum {
    fn from(q: BigRational) -> Self {
        AlgNum::from_rational(q)
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => AlgNum(Repr::Rat(a + b)),
            _ => {
                let level = self.level().max(rhs.level());
                let mut a = self.coeffs_at(level);
                let b = rhs.coeffs_at(level);
                if a.len() < b.len() {
                    a.resize(b.len(), AlgNum::zero());
                }
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x = &*x + y;
                }
                AlgNum::from_coeffs(level, a)
            }
        }
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        match &self.0 {
            Repr::Rat(a) => AlgNum(Repr::Rat(-a)),
            Repr::Ext { level, coeffs } => AlgNum(Repr::Ext {
                level: *level,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        self + &(-rhs)
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{}", q),
            Repr::Ext { level, coeffs } => {
                write!(f, "(")?;
                let mut first = true;
                for (j, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match j {
                        0 => write!(f, "{}", c)?,
                        1 if c.is_one() => write!(f, "t{}", level)?,
                        1 => write!(f, "{}*t{}", c, level)?,
                        _ if c.is_one() => write!(f, "t{}^{}", level, j)?,
                        _ => write!(f, "{}*t{}^{}", c, level, j)?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

/// One extension level: `K_i = K_{i-1}[t_i] / (minpoly)`.
#[derive(Debug)]
pub struct Level {
    /// Monic, coefficients in lower levels, ascending powers.
    minpoly: Vec<AlgNum>,
    /// Degree over `Q` of the field generated by levels `1..=i`.
    absolute_degree: usize,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[AlgNum] {
        &self.minpoly
    }

    pub fn absolute_degree(&self) -> usize {
        self.absolute_degree
    }
}

/// Append-only tower of algebraic extensions.
///
/// Reads are lock-free; extensions are serialized by an internal mutex, so a
/// tower may be shared between threads.
pub struct Tower {
    levels: Box<[OnceLock<Level>]>,
    len: AtomicUsize,
    extend: Mutex<()>,
    tables: Mutex<Vec<Option<Arc<MulTable>>>>,
}

/// Structure constants of the flattened basis at one level:
/// `b_i b_j = sum_k (entries[i D + j][k].1 / den) b_k`.
pub(crate) struct MulTable {
    pub den: BigInt,
    pub entries: Vec<Vec<(usize, BigInt)>>,
}

impl Default for Tower {
    fn default() -> Self {
        Tower::new()
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_list();
        for i in 1..=self.top() {
            d.entry(&self.level(i).minpoly);
        }
        d.finish()
    }
}

impl Tower {
    pub fn new() -> Self {
        Tower {
            levels: (0..=MAX_LEVELS).map(|_| OnceLock::new()).collect(),
            len: AtomicUsize::new(0),
            extend: Mutex::new(()),
            tables: Mutex::new(Vec::new()),
        }
    }

    /// Index of the highest level (0 when the tower is just `Q`).
    pub fn top(&self) -> usize {
        self.len.load(Ordering::Acquire)
    }

    pub fn level(&self, i: usize) -> &Level {
        assert!(i >= 1 && i <= self.top(), "level {} not in tower", i);
        self.levels[i].get().expect("published level")
    }

    /// Degree over `Q` of the field generated by levels `1..=i`.
    pub fn absolute_degree(&self, i: usize) -> usize {
        if i == 0 {
            1
        } else {
            self.level(i).absolute_degree
        }
    }

    /// The generator `t_i` of level `i`.
    pub fn generator(&self, i: usize) -> AlgNum {
        assert!(i >= 1 && i <= self.top());
        AlgNum(Repr::Ext {
            level: i,
            coeffs: vec![AlgNum::zero(), AlgNum::one()],
        })
    }

    /// Append a level defined by `minpoly`, which the caller guarantees to be
    /// monic and irreducible over the current top field. Returns the new
    /// generator.
    fn push_level(&self, minpoly: Vec<AlgNum>) -> Result<AlgNum> {
        let top = self.top();
        if top >= MAX_LEVELS {
            return Err(Error::TowerExhausted(MAX_LEVELS));
        }
        debug_assert!(minpoly.last().is_some_and(|c| c.is_one()));
        let absolute_degree = self.absolute_degree(top) * (minpoly.len() - 1);
        let level = Level {
            minpoly,
            absolute_degree,
        };
        self.levels[top + 1]
            .set(level)
            .map_err(|_| Error::Internal("tower level published twice".into()))?;
        self.len.store(top + 1, Ordering::Release);
        Ok(self.generator(top + 1))
    }

    pub fn mul(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        if a.is_zero() || b.is_zero() {
            return AlgNum::zero();
        }
        match (&a.0, &b.0) {
            (Repr::Rat(x), Repr::Rat(y)) => AlgNum(Repr::Rat(x * y)),
            (Repr::Rat(x), _) => b.scale_rat(x),
            (_, Repr::Rat(y)) => a.scale_rat(y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la != lb {
                    // Scalar multiplication by a lower-level element.
                    let (hi, lo) = if la > lb { (a, b) } else { (b, a) };
                    let level = hi.level();
                    let coeffs = hi.coeffs_at(level).iter().map(|c| self.mul(c, lo)).collect();
                    return AlgNum::from_coeffs(level, coeffs);
                }
                let level = la;
                let x = a.coeffs_at(level);
                let y = b.coeffs_at(level);
                let mut prod = vec![AlgNum::zero(); x.len() + y.len() - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        let t = self.mul(xi, yj);
                        prod[i + j] = &prod[i + j] + &t;
                    }
                }
                AlgNum::from_coeffs(level, self.reduce(level, prod))
            }
        }
    }

    /// Reduce a polynomial in `t_level` modulo the level's minimal polynomial.
    fn reduce(&self, level: usize, mut p: Vec<AlgNum>) -> Vec<AlgNum> {
        let m = &self.level(level).minpoly;
        let deg = m.len() - 1;
        while p.len() > deg {
            let c = p.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = p.len() - deg;
            for (j, mj) in m[..deg].iter().enumerate() {
                if mj.is_zero() {
                    continue;
                }
                let t = self.mul(&c, mj);
                p[shift + j] = &p[shift + j] - &t;
            }
        }
        p
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &AlgNum) -> Option<AlgNum> {
        match &a.0 {
            Repr::Rat(q) if q.is_zero() => None,
            Repr::Rat(q) => Some(AlgNum(Repr::Rat(q.recip()))),
            Repr::Ext { level, coeffs } => {
                let m = UPoly::from_coeffs(self.level(*level).minpoly.clone());
                let x = UPoly::from_coeffs(coeffs.clone());
                // s*x + t*m = g, with g a nonzero constant since m is irreducible.
                let (g, s, _) = upoly::ext_gcd(self, &x, &m);
                debug_assert_eq!(g.degree(), Some(0));
                let ginv = self.inv(&g.coeffs()[0])?;
                let s = s.scale(self, &ginv);
                Some(AlgNum::from_coeffs(*level, s.into_coeffs()))
            }
        }
    }

    pub fn div(&self, a: &AlgNum, b: &AlgNum) -> Option<AlgNum> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &AlgNum, mut e: u64) -> AlgNum {
        let mut base = a.clone();
        let mut acc = AlgNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Signed integer power; `None` when inverting zero.
    pub fn powi(&self, a: &AlgNum, e: i64) -> Option<AlgNum> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            Some(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Flatten an element into rational coordinates in the product power
    /// basis of levels `1..=level`.
    pub fn coords(&self, a: &AlgNum, level: usize) -> Vec<BigRational> {
        assert!(a.level() <= level);
        if level == 0 {
            return vec![a.as_rational().cloned().unwrap_or_else(BigRational::zero)];
        }
        let deg = self.level(level).degree();
        let mut cs = a.coeffs_at(level);
        cs.resize(deg, AlgNum::zero());
        cs.iter().flat_map(|c| self.coords(c, level - 1)).collect()
    }

    pub(crate) fn mul_table(&self, level: usize) -> Arc<MulTable> {
        if let Some(Some(m)) = self.tables.lock().unwrap_or_else(|e| e.into_inner()).get(level) {
            return m.clone();
        }
        let n = self.absolute_degree(level);
        let basis: Vec<AlgNum> = (0..n)
            .map(|i| {
                let mut v = vec![BigRational::zero(); n];
                v[i] = BigRational::one();
                self.from_coords(&v, level).expect("unit coordinates")
            })
            .collect();
        let mut prods = Vec::with_capacity(n * n);
        let mut den = BigInt::one();
        for x in &basis {
            for y in &basis {
                let c = self.coords(&self.mul(x, y), level);
                for q in &c {
                    den = num_integer::Integer::lcm(&den, q.denom());
                }
                prods.push(c);
            }
        }
        let entries = prods
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_zero())
                    .map(|(k, q)| (k, q.numer() * (&den / q.denom())))
                    .collect()
            })
            .collect();
        let m = Arc::new(MulTable { den, entries });
        let mut tables = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if tables.len() <= level {
            tables.resize(level + 1, None);
        }
        tables[level] = Some(m.clone());
        m
    }

    /// Inverse of [`Tower::coords`].
    pub fn from_coords(&self, coords: &[BigRational], level: usize) -> Result<AlgNum> {
        if level == 0 {
            return match coords {
                [q] => Ok(AlgNum::from_rational(q.clone())),
                _ => Err(Error::Parse("expected one rational coordinate".into())),
            };
        }
        if level > self.top() {
            return Err(Error::Parse(format!("tower has no level {}", level)));
        }
        let block = self.absolute_degree(level - 1);
        if coords.len() != self.absolute_degree(level) {
            return Err(Error::Parse(format!(
                "expected {} coordinates at level {}",
                self.absolute_degree(level),
                level
            )));
        }
        let cs = coords
            .chunks(block)
            .map(|ch| self.from_coords(ch, level - 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgNum::from_coeffs(level, cs))
    }

    /// All roots of `p` (nonzero, degree >= 1) with multiplicities, extending
    /// the tower as required. Deterministic given the tower state.
    pub fn roots(&self, p: &UPoly) -> Result<Vec<(AlgNum, usize)>> {
        let _guard = self.extend.lock().unwrap_or_else(|e| e.into_inner());
        let p = p.monic(self);
        if p.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let sqfree = p.squarefree_part(self);
        let mut found = Vec::new();
        let mut pending = vec![sqfree];
        while let Some(q) = pending.pop() {
            match q.degree() {
                None | Some(0) => {}
                Some(1) => found.push(q.linear_root(self)),
                Some(_) => {
                    let factors = factor::factor_squarefree(self, &q, self.top())?;
                    if factors.len() == 1 {
                        let t = self.push_level(q.monic(self).into_coeffs())?;
                        let lin = UPoly::from_coeffs(vec![-&t, AlgNum::one()]);
                        let (rest, rem) = q.divrem(self, &lin);
                        debug_assert!(rem.is_zero());
                        found.push(t);
                        pending.push(rest);
                    } else {
                        // Keep the factor order stable: the last pushed is popped first.
                        pending.extend(factors.into_iter().rev());
                    }
                }
            }
        }
        Ok(found
            .into_iter()
            .map(|r| {
                let mult = p.root_multiplicity(self, &r);
                (r, mult)
            })
            .collect())
    }

    /// One root of `p`, preferring roots already in the tower. Adjoins at most
    /// one level.
    pub fn some_root(&self, p: &UPoly) -> Result<AlgNum> {
        let _guard = self.extend.lock().unwrap_or_else(|e| e.into_inner());
        let q = p.monic(self).squarefree_part(self);
        if q.degree().unwrap_or(0) == 0 {
            return Err(Error::Internal("constant polynomial has no roots".into()));
        }
        let factors = factor::factor_squarefree(self, &q, self.top())?;
        if let Some(lin) = factors.iter().find(|f| f.degree() == Some(1)) {
            return Ok(lin.linear_root(self));
        }
        let smallest = factors
            .into_iter()
            .min_by_key(|f| f.degree())
            .expect("nonconstant polynomial has a factor");
        self.push_level(smallest.into_coeffs())
    }

    /// A primitive `n`-th root of unity.
    pub fn root_of_unity(&self, n: u64) -> Result<AlgNum> {
        if n <= 2 {
            return Ok(if n == 2 { AlgNum::from_int(-1) } else { AlgNum::one() });
        }
        self.some_root(&upoly::cyclotomic(n))
    }

    /// Numerator test for rational elements; used by printers.
    pub fn is_negative_rational(a: &AlgNum) -> bool {
        a.as_rational().is_some_and(|q| q.is_negative())
    }

    /// Irreducible monic factors of a squarefree polynomial over the top field.
    pub fn factor_squarefree(&self, p: &UPoly) -> Result<Vec<UPoly>> {
        factor::factor_squarefree(self, &p.monic(self), self.top())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> AlgNum {
        AlgNum::from_rational(BigRational::new(n.into(), d.into()))
    }

    fn up(cs: &[i64]) -> UPoly {
        UPoly::from_coeffs(cs.iter().map(|&c| AlgNum::from_int(c)).collect())
    }

    #[test]
    fn rational_arithmetic_stays_at_level_zero() {
        let t = Tower::new();
        let a = q(1, 2);
        let b = q(2, 3);
        assert_eq!(&a + &b, q(7, 6));
        assert_eq!(t.mul(&a, &b), q(1, 3));
        assert_eq!(t.inv(&b).unwrap(), q(3, 2));
        assert!(t.inv(&AlgNum::zero()).is_none());
    }

    #[test]
    fn imaginary_unit() {
        let t = Tower::new();
        let i = t.some_root(&up(&[1, 0, 1])).unwrap();
        assert_eq!(i.level(), 1);
        assert_eq!(t.mul(&i, &i), AlgNum::from_int(-1));
        let inv = t.inv(&i).unwrap();
        assert_eq!(inv, -&i);
        // A second request for a root of Y^2 + 1 reuses the level.
        let j = t.some_root(&up(&[1, 0, 1])).unwrap();
        assert_eq!(t.top(), 1);
        assert_eq!(t.mul(&j, &j), AlgNum::from_int(-1));
    }

    #[test]
    fn roots_of_unity_split_after_adjoining() {
        let t = Tower::new();
        let roots = t.roots(&up(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(t.pow(r, 3).is_one());
        }
        // Q(zeta_3) has degree 2.
        assert_eq!(t.absolute_degree(t.top()), 2);
    }

    #[test]
    fn roots_with_multiplicity() {
        let t = Tower::new();
        // (z - 1)^2 (z + 2)
        let p = up(&[2, -3, 0, 1]);
        let mut roots = t.roots(&p).unwrap();
        roots.sort();
        assert_eq!(roots, vec![(AlgNum::from_int(-2), 1), (AlgNum::one(), 2)]);
        assert_eq!(t.top(), 0);
    }

    #[test]
    fn nested_radicals() {
        let t = Tower::new();
        let roots = t.roots(&up(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, _) in &roots {
            assert_eq!(t.pow(r, 3), AlgNum::from_int(2));
        }
        assert_eq!(t.absolute_degree(t.top()), 6);
        // sqrt(2) is not in Q(cbrt 2, zeta_3) ... but sqrt(-3) is.
        let s = t.some_root(&up(&[3, 0, 1])).unwrap();
        assert_eq!(t.mul(&s, &s), AlgNum::from_int(-3));
        assert_eq!(t.absolute_degree(t.top()), 6);
    }

    #[test]
    fn coords_round_trip() {
        let t = Tower::new();
        let i = t.some_root(&up(&[1, 0, 1])).unwrap();
        let s = t.some_root(&up(&[-2, 0, 1])).unwrap();
        let x = &t.mul(&i, &s) + &q(3, 4);
        let cs = t.coords(&x, 2);
        assert_eq!(cs.len(), 4);
        assert_eq!(t.from_coords(&cs, 2).unwrap(), x);
    }
}
