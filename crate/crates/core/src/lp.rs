//! Exact feasibility test for `A x = b, x >= 0` (phase-one simplex, Bland's
//! rule, rational arithmetic).

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Is there `x >= 0` with `A x = b`? Rows of `a` must all have the same
/// length; `b` may have any sign.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (row, rhs) in a.iter().zip(b) {
        let flip = rhs.is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v } else { v.clone() });
        }
        r.extend(std::iter::repeat_n(BigRational::zero(), m + 1));
        r[width - 1] = if flip { -rhs } else { rhs.clone() };
        tab.push(r);
    }
    for (i, r) in tab.iter_mut().enumerate() {
        r[n + i] = BigRational::from_integer(1.into());
    }
    let mut cost = vec![BigRational::zero(); width];
    for r in &tab {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }
    tab.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let obj = &tab[m];
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            let coef = &tab[i][enter];
            if coef.is_positive() {
                let ratio = &tab[i][width - 1] / coef;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            // Unbounded direction cannot occur in phase one (objective >= 0).
            break;
        };
        pivot(&mut tab, row, enter);
        basis[row] = enter;
    }
    tab[m][width - 1].is_zero()
}

fn pivot(tab: &mut [Vec<BigRational>], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
