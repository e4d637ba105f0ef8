//! Irreducible quasi-ordinary polynomials with prescribed characteristic.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::{AlgNum, Tower};
use crate::qo::factor::galois_action;
use crate::qo::lattice::in_lattice;
use crate::qo::{characteristic, lattice_index, q_invariants, CharData};
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSpec {
    pub d: usize,
    pub h: Vec<ExpVec>,
    /// Coefficient of `X^{h_i}`.
    pub coeffs: Vec<AlgNum>,
    /// Extra terms strictly above `h_s`, with exponents in `M_s`.
    pub tail: Vec<(ExpVec, AlgNum)>,
}

impl CharSpec {
    /// Unit coefficients, no tail.
    pub fn new(d: usize, h: Vec<ExpVec>) -> Result<CharSpec> {
        let coeffs = vec![AlgNum::one(); h.len()];
        let spec = CharSpec {
            d,
            h,
            coeffs,
            tail: Vec::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if self.coeffs.len() != self.h.len() {
            return Err(Error::InvalidSpec("one coefficient per exponent".into()));
        }
        if self.coeffs.iter().chain(self.tail.iter().map(|(_, c)| c)).any(|c| c.is_zero()) {
            return Err(Error::InvalidSpec("zero coefficient".into()));
        }
        for (i, h) in self.h.iter().enumerate() {
            h.check_dim(self.d)?;
            if !h.is_nonneg() || h.is_zero() {
                return Err(Error::InvalidSpec(format!("h_{} = {} must be nonzero and non-negative", i + 1, h)));
            }
            if i > 0 && !(self.h[i - 1].leq(h) && self.h[i - 1] != *h) {
                return Err(Error::InvalidSpec(format!("h_{} is not above h_{}", i + 1, i)));
            }
            if in_lattice(&self.h[..i], h) {
                return Err(Error::InvalidSpec(format!("h_{} lies in M_{}", i + 1, i)));
            }
        }
        for (a, _) in &self.tail {
            a.check_dim(self.d)?;
            if !in_lattice(&self.h, a) {
                return Err(Error::InvalidSpec(format!("tail exponent {} is not in M_s", a)));
            }
            let above = match self.h.last() {
                Some(hs) => hs.leq(a) && hs != a,
                None => a.is_nonneg() && !a.is_zero(),
            };
            if !above {
                return Err(Error::InvalidSpec(format!("tail exponent {} is not above h_s", a)));
            }
        }
        Ok(())
    }

    /// `n_i`, `e_i` and `q_i` of the prescribed characteristic.
    pub fn char_data(&self) -> Result<CharData> {
        let s = self.h.len();
        let mut n = Vec::with_capacity(s);
        for i in 1..=s {
            n.push(lattice_index(&self.h[..i - 1], &self.h[..i], self.d)?);
        }
        let e: Vec<i64> = (0..=s).map(|i| n[i..].iter().product()).collect();
        let q = q_invariants(&self.h, &e)?;
        let ram = self
            .h
            .iter()
            .fold(1i64, |acc, x| num_integer::lcm(acc, x.denominator()));
        Ok(CharData {
            h: self.h.clone(),
            degree: e[0] as usize,
            n,
            e,
            q,
            irreducible: true,
            ramification: ram,
        })
    }

    pub fn degree(&self) -> Result<usize> {
        Ok(self.char_data()?.degree)
    }
}

/// `sum c_i X^{h_i} + tail`.
pub fn synthesize_root(spec: &CharSpec) -> Result<FracSeries> {
    spec.validate()?;
    let terms = spec
        .h
        .iter()
        .cloned()
        .zip(spec.coeffs.iter().cloned())
        .chain(spec.tail.iter().cloned());
    FracSeries::from_terms(spec.d, terms, Precision::Exact)
}

/// Product of `Y - beta` over the Galois orbit of `alpha`, found by closing
/// `{alpha}` under the generators `X_l^{1/m} -> zeta X_l^{1/m}`.
pub fn minimal_polynomial(alpha: &FracSeries, t: &Tower) -> Result<YPoly> {
    if !alpha.is_exact() {
        return Err(Error::TruncatedInput("minimal polynomial"));
    }
    let d = alpha.dim();
    let m = alpha.ramification();
    let zeta = t.root_of_unity(m as u64)?;
    let mut orbit = vec![alpha.clone()];
    let mut seen: HashSet<FracSeries> = orbit.iter().cloned().collect();
    let mut i = 0;
    while i < orbit.len() {
        for l in 0..d {
            let mut ks = vec![0i64; d];
            ks[l] = 1;
            let b = galois_action(&orbit[i], &zeta, m, &ks, t)?;
            if seen.insert(b.clone()) {
                orbit.push(b);
            }
        }
        i += 1;
    }
    let p = YPoly::from_roots(d, &orbit, t)?;
    if !p.coeffs().iter().all(|c| c.has_integral_support()) {
        return Err(Error::InvalidSpec("orbit product has fractional exponents".into()));
    }
    let rational_input = alpha.terms().all(|(_, c)| c.as_rational().is_some());
    if rational_input
        && !p
            .coeffs()
            .iter()
            .all(|c| c.terms().all(|(_, x)| x.as_rational().is_some()))
    {
        return Err(Error::InvalidSpec("orbit product leaves the rationals".into()));
    }
    Ok(p)
}

/// Sampling bounds for [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest exponent denominator.
    pub max_den: i64,
    /// Largest numerator of an exponent step.
    pub max_num: i64,
    /// Largest degree `n_1 ... n_s`.
    pub max_degree: i64,
    /// Draw small nonzero rational coefficients instead of ones.
    pub random_coeffs: bool,
    /// Largest number of tail terms.
    pub max_tail: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_den: 6,
            max_num: 3,
            max_degree: 8,
            random_coeffs: false,
            max_tail: 1,
        }
    }
}

const MAX_RETRIES: usize = 10_000;

fn small_rational<R: Rng>(rng: &mut R) -> AlgNum {
    let num = loop {
        let x: i64 = rng.gen_range(-3..=3);
        if x != 0 {
            break x;
        }
    };
    let den: i64 = rng.gen_range(1..=2);
    AlgNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn random_step<R: Rng>(rng: &mut R, d: usize, b: &Bounds) -> ExpVec {
    loop {
        let v: Vec<Rational64> = (0..d)
            .map(|_| {
                let den = rng.gen_range(1..=b.max_den);
                let num = rng.gen_range(0..=b.max_num * den / 2);
                Rational64::new(num, den)
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return ExpVec::new(v);
        }
    }
}

/// A random valid spec with `s` characteristic exponents.
pub fn random_spec<R: Rng>(rng: &mut R, d: usize, s: usize, b: &Bounds) -> Result<CharSpec> {
    if d == 0 {
        return Err(Error::InvalidSpec("dimension must be positive".into()));
    }
    if s > 0 && (1i64 << s) > b.max_degree {
        return Err(Error::InvalidSpec(format!("s = {} needs degree at least 2^{}", s, s)));
    }
    'outer: for _ in 0..MAX_RETRIES {
        let mut h: Vec<ExpVec> = Vec::with_capacity(s);
        let mut degree = 1i64;
        for i in 0..s {
            let base = h.last().cloned().unwrap_or_else(|| ExpVec::zero(d));
            let next = &base + &random_step(rng, d, b);
            if next.denominator() > b.max_den || in_lattice(&h, &next) {
                continue 'outer;
            }
            let mut with = h.clone();
            with.push(next.clone());
            let ni = lattice_index(&h, &with, d)?;
            degree *= ni;
            // Leave room for the remaining exponents, each at least doubling.
            if degree << (s - i - 1) > b.max_degree {
                continue 'outer;
            }
            h = with;
        }
        let coeffs: Vec<AlgNum> = (0..s)
            .map(|_| if b.random_coeffs { small_rational(rng) } else { AlgNum::one() })
            .collect();
        let n_tail = rng.gen_range(0..=b.max_tail);
        let mut tail = Vec::with_capacity(n_tail);
        for _ in 0..n_tail {
            let base = h.last().cloned().unwrap_or_else(|| ExpVec::zero(d));
            let shift: Vec<Rational64> = (0..d)
                .map(|_| Rational64::from_integer(rng.gen_range(0..=1)))
                .collect();
            let a = &base + &ExpVec::new(shift);
            if a == base || tail.iter().any(|(x, _)| *x == a) {
                continue;
            }
            let c = if b.random_coeffs { small_rational(rng) } else { AlgNum::one() };
            tail.push((a, c));
        }
        let spec = CharSpec {
            d,
            h,
            coeffs,
            tail,
        };
        if spec.validate().is_ok() {
            return Ok(spec);
        }
    }
    Err(Error::InvalidSpec("no valid spec within the retry budget".into()))
}

/// Deterministic instance: `f = minimal_polynomial(synthesize_root(spec))`,
/// checked against the spec's characteristic.
pub fn random_instance(d: usize, s: usize, bounds: &Bounds, seed: u64, t: &Tower) -> Result<(YPoly, CharSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_spec(&mut rng, d, s, bounds)?;
    let f = minimal_polynomial(&synthesize_root(&spec)?, t)?;
    let want = spec.char_data()?;
    let got = characteristic(&f, t)?;
    if got.h != want.h || got.n != want.n || got.degree != want.degree || !got.irreducible {
        return Err(Error::Assertion(format!(
            "generated polynomial has characteristic {:?}, spec {:?}",
            got.h, want.h
        )));
    }
    Ok((f, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ypoly;

    #[test]
    fn example_one_round_trip() {
        let t = Tower::new();
        let spec = CharSpec::new(
            2,
            vec![ExpVec::from_fracs(&[(3, 2), (1, 1)]), ExpVec::from_fracs(&[(7, 4), (3, 2)])],
        )
        .unwrap();
        let alpha = synthesize_root(&spec).unwrap();
        assert_eq!(alpha.to_text(), "X1^(3/2)*X2 + X1^(7/4)*X2^(3/2)");
        let f = minimal_polynomial(&alpha, &t).unwrap();
        let want = parse_ypoly("Y^4 - 2*X1^3*X2^2*Y^2 - 4*X1^5*X2^4*Y - X1^7*X2^6 + X1^6*X2^4", None).unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn small_cases() {
        let t = Tower::new();
        let cusp = synthesize_root(&CharSpec::new(1, vec![ExpVec::from_fracs(&[(3, 2)])]).unwrap()).unwrap();
        assert_eq!(minimal_polynomial(&cusp, &t).unwrap(), parse_ypoly("Y^2 - X^3", None).unwrap());
        let line = FracSeries::monomial(ExpVec::from_ints(&[1, 1]), AlgNum::one());
        assert_eq!(minimal_polynomial(&line, &t).unwrap(), parse_ypoly("Y - X1*X2", None).unwrap());
        let spec = CharSpec::new(2, vec![ExpVec::from_fracs(&[(1, 2), (0, 1)]), ExpVec::from_fracs(&[(1, 2), (1, 2)])]).unwrap();
        assert_eq!(spec.char_data().unwrap().n, vec![2, 2]);
    }

    #[test]
    fn invalid_specs() {
        assert!(CharSpec::new(1, vec![ExpVec::from_ints(&[2])]).is_err());
        assert!(CharSpec::new(1, vec![ExpVec::from_fracs(&[(3, 2)]), ExpVec::from_fracs(&[(5, 2)])]).is_err());
        assert!(CharSpec::new(2, vec![ExpVec::from_fracs(&[(1, 2), (1, 1)]), ExpVec::from_fracs(&[(1, 1), (1, 2)])]).is_err());
    }

    #[test]
    fn seeded_instances() {
        let t = Tower::new();
        let b = Bounds::default();
        let (f, spec) = random_instance(1, 1, &b, 0, &t).unwrap();
        assert_eq!(f.degree(), Some(spec.degree().unwrap()));
        let (f2, spec2) = random_instance(1, 1, &b, 0, &t).unwrap();
        assert_eq!((f, spec), (f2, spec2));
        random_instance(2, 2, &b, 1, &t).unwrap();
        let (f0, _) = random_instance(2, 0, &b, 3, &t).unwrap();
        assert_eq!(f0.degree(), Some(1));
    }
}
