use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{det_and_adjugate_big, identity, IntMatrix};
use crate::error::{Error, Result};

/// `U * J * V = diag(s_1, ..., s_n)` with `U`, `V` unimodular and
/// `s_1 | s_2 | ... | s_n`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn s(&self) -> IntMatrix {
        let n = self.diagonal.len();
        let mut m = identity(n);
        for (i, d) in self.diagonal.iter().enumerate() {
            m[i][i] = d.clone();
        }
        m
    }

    /// `U^{-1}`, integral because `det U = ±1`.
    pub fn u_inverse(&self) -> IntMatrix {
        let (det, adj) = det_and_adjugate_big(&self.u).expect("U is unimodular");
        adj.into_iter()
            .map(|row| row.into_iter().map(|x| x * &det).collect())
            .collect()
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[src] * q;
        row[dst] -= v;
    }
}

pub fn smith_normal_form(j: &[Vec<i64>]) -> Result<SmithForm> {
    let n = j.len();
    if n == 0 || j.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    let mut a: IntMatrix = j
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut u = identity(n);
    let mut v = identity(n);

    for t in 0..n {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..n {
                for k in t..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pk)| a[i][k].abs() < a[pi][pk].abs()) {
                        pivot = Some((i, k));
                    }
                }
            }
            let (pi, pk) = pivot.ok_or(Error::DetZero)?;
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pk);
            swap_cols(&mut v, t, pk);

            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for k in t + 1..n {
                let q = a[t][k].div_floor(&a[t][t]);
                col_axpy(&mut a, k, t, &q);
                col_axpy(&mut v, k, t, &q);
                clean &= a[t][k].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..n).find(|&i| (t + 1..n).any(|k| !a[i][k].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }

    let diagonal = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(SmithForm { u, diagonal, v })
}
