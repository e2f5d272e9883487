//! Column Hermite and Smith normal forms with unimodular transforms.

use super::matrix::{Int, IntMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let t = m.get(i, src) * f;
        *m.get_mut(i, dst) += t;
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let t = m.get(src, j) * f;
        *m.get_mut(dst, j) += t;
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

/// Replaces columns `(k, j)` of `m` by `(x*ck + y*cj, p*ck + q*cj)`.
fn col_combine(m: &mut IntMatrix, k: usize, j: usize, x: &Int, y: &Int, p: &Int, q: &Int) {
    for i in 0..m.rows() {
        let a = m.get(i, k).clone();
        let b = m.get(i, j).clone();
        m.set(i, k, x * &a + y * &b);
        m.set(i, j, p * &a + q * &b);
    }
}

/// Column Hermite normal form: returns `(h, u)` with `h = m * u` and `u` unimodular.
///
/// The nonzero columns of `h` come first; their leading entries sit in strictly
/// increasing rows, are positive, and every entry to the left of a leading entry
/// in the same row lies in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h.get(r, j).is_zero() {
                continue;
            }
            let a = h.get(r, k).clone();
            let b = h.get(r, j).clone();
            let e = a.extended_gcd(&b);
            let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
            if g.is_negative() {
                g = -g;
                x = -x;
                y = -y;
            }
            let p = -(&b / &g);
            let q = &a / &g;
            col_combine(&mut h, k, j, &x, &y, &p, &q);
            col_combine(&mut u, k, j, &x, &y, &p, &q);
        }
        if h.get(r, k).is_zero() {
            continue;
        }
        if h.get(r, k).is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut u, k);
        }
        let piv = h.get(r, k).clone();
        for j in 0..k {
            let f = -h.get(r, j).div_floor(&piv);
            col_axpy(&mut h, j, k, &f);
            col_axpy(&mut u, j, k, &f);
        }
        k += 1;
    }
    (h, u)
}

/// Checks the shape conditions of [`hermite_normal_form`].
pub fn is_column_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for j in 0..h.cols() {
        let col = h.column(j);
        match col.iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !col[p].is_positive() {
                    return false;
                }
                for jj in 0..j {
                    let e = h.get(p, jj);
                    if e.is_negative() || e >= &col[p] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Smith normal form result including the inverse of the left transform.
pub(crate) struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

pub(crate) fn smith_full(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s, u, v, u_inv);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            u_inv.swap_columns(t, bi);
            s.swap_columns(t, bj);
            v.swap_columns(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = s.get(i, t).div_floor(s.get(t, t));
                let f = -q.clone();
                row_axpy(&mut s, i, t, &f);
                row_axpy(&mut u, i, t, &f);
                col_axpy(&mut u_inv, t, i, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = s.get(t, j).div_floor(s.get(t, t));
                let f = -q;
                col_axpy(&mut s, j, t, &f);
                col_axpy(&mut v, j, t, &f);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = s.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    row_axpy(&mut s, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                    col_axpy(&mut u_inv, i, t, &-one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
            negate_col(&mut u_inv, t);
        }
    }
    finish(s, u, v, u_inv)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix, u_inv: IntMatrix) -> Smith {
    Smith { s, u, v, u_inv }
}

/// Smith normal form: returns `(s, u, v)` with `s = u * m * v` diagonal,
/// nonnegative, and each diagonal entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let r = smith_full(m);
    (r.s, r.u, r.v)
}

/// Diagonal of a Smith form, including trailing zeros up to `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    let s = smith_full(m).s;
    (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect()
}

/// Basis of the integer kernel `{x in Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let (h, u) = hermite_normal_form(m);
    (0..h.cols())
        .filter(|&j| h.column(j).iter().all(|x| x.is_zero()))
        .map(|j| u.column(j))
        .collect()
}

/// Some integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length");
    let (h, u) = hermite_normal_form(m);
    let mut z = vec![Int::zero(); h.cols()];
    let mut residual = b.to_vec();
    for j in 0..h.cols() {
        let col = h.column(j);
        let Some(p) = col.iter().position(|x| !x.is_zero()) else {
            break;
        };
        let (q, r) = residual[p].div_rem(&col[p]);
        if !r.is_zero() {
            return None;
        }
        for i in 0..residual.len() {
            residual[i] -= &q * &col[i];
        }
        z[j] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(u.mul_vec(&z))
}
