//! Nonnegative integer solutions of `m x = b` by bounded depth-first search.

use super::matrix::{dot_rat, Int, IntMatrix, Rat};
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashSet;

/// Finds some `x >= 0` with `m x = b`.
///
/// `bound_functional` must be strictly positive on every column; it bounds
/// each variable by `c·b / c·col_j`, which makes the search exhaustive.
pub fn solve_nonneg_integer(
    m: &IntMatrix,
    b: &[Int],
    bound_functional: &[Rat],
) -> Result<Option<Vec<Int>>> {
    if b.len() != m.rows() || bound_functional.len() != m.rows() {
        return Err(Error::DimensionMismatch("solve_nonneg_integer".into()));
    }
    let cols = m.columns();
    let weights: Vec<Rat> = cols.iter().map(|c| dot_rat(bound_functional, c)).collect();
    if let Some(j) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::InvalidBoundFunctional(j));
    }
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by(|&i, &j| weights[j].cmp(&weights[i]).then(i.cmp(&j)));
    let mut search = Search { cols: &cols, weights: &weights, order: &order, c: bound_functional, failed: HashSet::new() };
    let mut x = vec![Int::zero(); cols.len()];
    Ok(search.run(0, b.to_vec(), &mut x).then_some(x))
}

struct Search<'a> {
    cols: &'a [Vec<Int>],
    weights: &'a [Rat],
    order: &'a [usize],
    c: &'a [Rat],
    failed: HashSet<(usize, Vec<Int>)>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, rest: Vec<Int>, x: &mut [Int]) -> bool {
        if rest.iter().all(|v| v.is_zero()) {
            return true;
        }
        if k == self.order.len() {
            return false;
        }
        let total = dot_rat(self.c, &rest);
        if total.is_negative() {
            return false;
        }
        if self.failed.contains(&(k, rest.clone())) {
            return false;
        }
        let j = self.order[k];
        let max = (total / &self.weights[j]).floor().to_integer().to_u64().unwrap_or(u64::MAX);
        for t in (0..=max).rev() {
            let tt = Int::from(t);
            let next: Vec<Int> = rest.iter().zip(&self.cols[j]).map(|(r, a)| r - &tt * a).collect();
            x[j] = tt;
            if self.run(k + 1, next, x) {
                return true;
            }
        }
        x[j] = Int::zero();
        self.failed.insert((k, rest));
        false
    }
}
