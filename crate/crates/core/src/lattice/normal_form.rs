use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{content, IntMatrix};
use crate::error::Error;

/// Row Hermite normal form together with the unimodular transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    /// Same shape as the input; nonzero rows first, zero rows at the bottom.
    pub h: IntMatrix,
    /// Square unimodular with `u * m == h`.
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
}

/// Row-style Hermite normal form: pivots strictly positive and moving right,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for col in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // Euclid on the column below row r; ties go to the lowest row index.
        loop {
            let best = (r..h.rows())
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            h.swap_rows(best, r);
            u.swap_rows(best, r);
            let mut done = true;
            for i in r + 1..h.rows() {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(r, col)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, col)].div_floor(&h[(r, col)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    HnfResult { h, u, rank: r }
}

/// Smith normal form `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(u, d, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> SnfResult {
    let mut u = u;
    for t in 0..d.rows().min(d.cols()) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

/// Square matrix with determinant `+1` (or `±1` in dimension one) whose
/// first row is the given primitive vector.
///
/// Remaining rows are reduced against the first row so that their entry in
/// the first nonzero column of `row` lies in `[0, |row_j|)`.
pub fn complete_unimodular(row: &[BigInt]) -> Result<IntMatrix, Error> {
    let n = row.len();
    if n == 0 || !content(row).is_one() {
        return Err(Error::NonPrimitive);
    }
    // Column operations taking `row` to e_1: hnf of the column vector.
    let col = IntMatrix::from_rows(1, row.iter().map(|x| alloc::vec![x.clone()]).collect());
    let res = hnf(&col);
    // res.u * col == e_1, so row * u^T == e_1 and row is the first row of
    // (u^T)^-1.
    let mut a = res.u.transpose().unimodular_inverse().ok_or(Error::NonPrimitive)?;
    if n >= 2 && a.determinant().is_negative() {
        a.negate_row(n - 1);
    }
    let j = row.iter().position(|x| !x.is_zero()).expect("primitive row is nonzero");
    let modulus = row[j].abs();
    let sign = if row[j].is_negative() { -BigInt::one() } else { BigInt::one() };
    for i in 1..n {
        let q = a[(i, j)].div_floor(&modulus) * &sign;
        a.add_row_multiple(i, 0, &-q);
    }
    debug_assert_eq!(a.row(0), row);
    Ok(a)
}

/// Saturation of the row lattice: a Hermite basis of all integer vectors
/// with a nonzero multiple in the lattice, and the index of the lattice in
/// its saturation (product of the elementary divisors).
pub fn saturate(rows: &IntMatrix) -> (IntMatrix, BigInt) {
    let s = snf(rows);
    let divisors = s.divisors();
    let index = divisors.iter().fold(BigInt::one(), |acc, x| acc * x);
    // Row lattice = rows of D * V^-1; saturation = first r rows of V^-1.
    let vinv = s.v.unimodular_inverse().expect("snf column transform is unimodular");
    let basis = vinv.select_rows(0..divisors.len());
    (hnf(&basis).h.nonzero_rows(), index)
}

/// Hermite basis of the integer left kernel `{z : z * m == 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let res = hnf(m);
    let kernel = res.u.select_rows(res.rank..m.rows());
    hnf(&kernel).h.nonzero_rows()
}

/// Hermite basis of the row lattice (zero rows dropped).
pub fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    hnf(m).h.nonzero_rows()
}
