//! Lattices `Z^d + Z h_1 + ... + Z h_i` and their indices.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;

/// Upper-triangular basis (Hermite form up to reduction above the
/// diagonal) of the lattice spanned by `Z^d` and `gens`, scaled by `den`.
fn basis(gens: &[ExpVec], d: usize, den: i64) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            let mut r = vec![0i128; d];
            r[i] = den as i128;
            r
        })
        .collect();
    for g in gens {
        rows.push(
            g.coords()
                .iter()
                .map(|x| (*x.numer() as i128) * (den / *x.denom()) as i128)
                .collect(),
        );
    }
    let mut out = Vec::with_capacity(d);
    for col in 0..d {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            let pivot = rows[p].clone();
            for &r in &nz {
                if r != p {
                    let q = num_integer::Integer::div_floor(&rows[r][col], &pivot[col]);
                    for (x, y) in rows[r].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
        }
        let p = (0..rows.len())
            .find(|&r| rows[r][col] != 0)
            .expect("lattice contains Z^d, so it has full rank");
        let mut row = rows.swap_remove(p);
        if row[col] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        out.push(row);
    }
    out
}

fn contains(basis: &[Vec<i128>], v: &[i128]) -> bool {
    let mut v = v.to_vec();
    for (col, b) in basis.iter().enumerate() {
        if v[col] % b[col] != 0 {
            return false;
        }
        let q = v[col] / b[col];
        for (x, y) in v.iter_mut().zip(b) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// `[M_fine : M_coarse]` for `M = Z^d + sum Z g`.
pub fn lattice_index(coarse: &[ExpVec], fine: &[ExpVec], d: usize) -> Result<i64> {
    for g in coarse.iter().chain(fine) {
        g.check_dim(d)?;
    }
    let den = coarse
        .iter()
        .chain(fine)
        .fold(1i64, |acc, g| acc.lcm(&g.denominator()));
    let bc = basis(coarse, d, den);
    let bf = basis(fine, d, den);
    for row in &bc {
        if !contains(&bf, row) {
            return Err(Error::NotSublattice);
        }
    }
    let det = |b: &[Vec<i128>]| b.iter().enumerate().map(|(i, r)| r[i]).product::<i128>();
    let (dc, df) = (det(&bc), det(&bf));
    Ok((dc / df) as i64)
}

/// Is `v` in `Z^d + sum Z g`?
pub fn in_lattice(gens: &[ExpVec], v: &ExpVec) -> bool {
    let d = v.dim();
    let den = gens
        .iter()
        .fold(v.denominator(), |acc, g| acc.lcm(&g.denominator()));
    let b = basis(gens, d, den);
    let scaled: Vec<i128> = v
        .coords()
        .iter()
        .map(|x| (*x.numer() as i128) * (den / *x.denom()) as i128)
        .collect();
    contains(&b, &scaled)
}
