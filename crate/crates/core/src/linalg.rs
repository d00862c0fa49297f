//! Fraction-free (Bareiss) elimination for rational matrices.
//!
//! Rows are first scaled to integers by their common denominators; every
//! elimination step then divides exactly by the previous pivot.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{common_denominator, Int, Rat};
use crate::{Error, Result};

fn integer_rows(rows: &[Vec<Rat>]) -> (Vec<Vec<Int>>, Int) {
    let mut scale = Int::one();
    let ints = rows
        .iter()
        .map(|row| {
            let l = common_denominator(row);
            let out = row
                .iter()
                .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
                .collect();
            scale *= &l;
            out
        })
        .collect();
    (ints, scale)
}

fn exact_div(a: Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "Bareiss step produced an inexact division");
    q
}

/// Fraction-free forward elimination on the first `cols` columns. Returns the
/// rank reached and whether an odd number of row swaps occurred. On return
/// `m[r][r]` for r < rank are the Bareiss pivots.
fn bareiss_forward(m: &mut [Vec<Int>], cols: usize) -> (usize, bool) {
    let n = m.len();
    let mut prev = Int::one();
    let mut odd_swaps = false;
    for k in 0..cols.min(n) {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return (k, odd_swaps);
        };
        if p != k {
            m.swap(p, k);
            odd_swaps = !odd_swaps;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..pivot_row.len() {
                let v = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = exact_div(v, &prev);
            }
            row[k] = Int::zero();
        }
        prev = pivot_row[k].clone();
    }
    (cols.min(n), odd_swaps)
}

/// Exact determinant of a square rational matrix.
pub fn bareiss_det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    if n == 0 {
        return Rat::one();
    }
    assert!(
        rows.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let (mut m, scale) = integer_rows(rows);
    let (rank, odd) = bareiss_forward(&mut m, n);
    if rank < n {
        return Rat::zero();
    }
    let det = m[n - 1][n - 1].clone();
    let det = if odd { -det } else { det };
    Rat::new(det, scale)
}

/// Solves the square system `rows · x = rhs` exactly.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = rows.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    assert!(
        rows.iter().all(|r| r.len() == n),
        "solve needs a square matrix"
    );
    let augmented: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (mut m, _) = integer_rows(&augmented);
    let (rank, _) = bareiss_forward(&mut m, n);
    if rank < n {
        return Err(Error::SingularSystem { rank, size: n });
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= Rat::from_integer(m[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / Rat::from_integer(m[i][i].clone());
    }
    Ok(x)
}
