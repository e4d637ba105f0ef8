//! Fixtures shared by the benchmarks.

use quasiord::generator::{random_instance, Bounds};
use quasiord::{parse_series, parse_ypoly, FracSeries, Tower, YPoly};

pub fn example_one() -> (YPoly, YPoly) {
    let f = parse_ypoly("Y^4 - 2*X1^3*X2^2*Y^2 - 4*X1^5*X2^4*Y - X1^7*X2^6 + X1^6*X2^4", Some(2)).unwrap();
    let g = parse_ypoly("(Y^2 - X1^3*X2^2)^2 - 4*X1^5*X2^4*Y", Some(2)).unwrap();
    (f, g)
}

pub fn triangle() -> [YPoly; 3] {
    ["Y", "Y - X1 - X2^2", "Y^2 - (X1 + X2)*Y + 2*X1^3 + X2^3"].map(|s| parse_ypoly(s, Some(2)).unwrap())
}

/// Generated irreducible quasi-ordinary polynomial, deterministic in `seed`.
pub fn generated(d: usize, s: usize, seed: u64, t: &Tower) -> YPoly {
    random_instance(d, s, &Bounds::default(), seed, t).unwrap().0
}

/// Dense series `(1 + X1^(1/2) + X2^(1/3) + X3)^n`.
pub fn dense_series(n: u32) -> FracSeries {
    let t = Tower::new();
    let base = parse_series("1 + X1^(1/2) + X2^(1/3) + X3", Some(3)).unwrap();
    let mut out = FracSeries::one(3);
    for _ in 0..n {
        out = out.mul(&base, &t).unwrap();
    }
    out
}
