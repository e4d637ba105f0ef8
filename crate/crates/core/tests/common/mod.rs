#![allow(dead_code)]

use num_rational::Rational64;
use quasiord::*;
use rand::Rng;

pub fn poly(src: &str, d: usize) -> YPoly {
    parse_ypoly(src, Some(d)).unwrap()
}

pub fn series(src: &str, d: usize) -> FracSeries {
    parse_series(src, Some(d)).unwrap()
}

pub fn ints(v: &[i64]) -> ExpVec {
    ExpVec::from_ints(v)
}

pub fn fracs(v: &[(i64, i64)]) -> ExpVec {
    ExpVec::from_fracs(v)
}

/// Random exponent with coordinates in `{0, 1/den, ..., max}`.
pub fn random_exp<R: Rng>(rng: &mut R, d: usize, max: i64, den: i64) -> ExpVec {
    ExpVec::new(
        (0..d)
            .map(|_| Rational64::new(rng.gen_range(0..=max * den), den))
            .collect(),
    )
}

pub fn random_polytope<R: Rng>(rng: &mut R, d: usize) -> Polytope {
    let n = rng.gen_range(1..=4);
    let den = rng.gen_range(1..=2);
    Polytope::from_points(d, (0..n).map(|_| random_exp(rng, d, 4, den))).unwrap()
}

/// Membership in a planar Newton polytope: `x` dominates a point of some
/// segment between two vertices.
pub fn contains_2d(p: &Polytope, x: &ExpVec) -> bool {
    let vs = p.vertices();
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    for u in vs {
        for v in vs {
            // t u + (1-t) v <= x for some t in [0,1].
            let (mut lo, mut hi) = (zero, one);
            for i in 0..2 {
                // t (u_i - v_i) <= x_i - v_i
                let a = u.get(i) - v.get(i);
                let b = x.get(i) - v.get(i);
                if a > zero {
                    hi = hi.min(b / a);
                } else if a < zero {
                    lo = lo.max(b / a);
                } else if b < zero {
                    lo = one + one;
                }
            }
            if lo <= hi {
                return true;
            }
        }
    }
    false
}

pub fn subset_2d(a: &Polytope, b: &Polytope) -> bool {
    a.vertices().iter().all(|v| contains_2d(b, v))
}

/// `v` in `Z^d + Z h_1 + ... + Z h_k`, by enumerating residues.
pub fn in_lattice(h: &[ExpVec], v: &ExpVec) -> bool {
    fn go(h: &[ExpVec], v: &ExpVec) -> bool {
        match h.split_first() {
            None => v.is_integral(),
            Some((g, rest)) => {
                let den = g.denominator();
                (0..den).any(|c| go(rest, &(v - &g.scale_int(c))))
            }
        }
    }
    go(h, v)
}

/// `n_i = [M_i : M_{i-1}]`, the order of `h_i` modulo `M_{i-1}`.
pub fn indices(h: &[ExpVec]) -> Vec<i64> {
    (0..h.len())
        .map(|i| (1..).find(|&k| in_lattice(&h[..i], &h[i].scale_int(k))).unwrap())
        .collect()
}

pub fn example_one_f() -> YPoly {
    poly("Y^4 - 2*X1^3*X2^2*Y^2 - 4*X1^5*X2^4*Y - X1^7*X2^6 + X1^6*X2^4", 2)
}

pub fn example_one_g() -> YPoly {
    poly("(Y^2 - X1^3*X2^2)^2 - 4*X1^5*X2^4*Y", 2)
}
