//! Degree sets `M = ⋃ (b_i + NA)` and membership tests against them.

use crate::cone_geometry::{enumerate_faces, ConeFace, FaceLattice};
use crate::exact_lattice::{dot_rat, solve_nonneg_integer, sub_vec, Int, IntMatrix, Rat};
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashSet;

/// A finitely generated `NA`-monoid together with the face lattice of `A`.
#[derive(Clone, Debug)]
pub struct MonoidModule {
    faces: FaceLattice,
    generators: Vec<Vec<Int>>,
}

impl MonoidModule {
    /// `NA` itself.
    pub fn semigroup(a: &IntMatrix) -> Result<Self> {
        Self::new(a, vec![vec![Int::zero(); a.rows()]])
    }

    /// `⋃ (b_i + NA)`; fails unless every sum `b_i + b_j` lies in the set.
    pub fn new(a: &IntMatrix, generators: Vec<Vec<Int>>) -> Result<Self> {
        let faces = enumerate_faces(a)?;
        Self::with_faces(faces, generators)
    }

    /// Same as [`MonoidModule::new`] with a precomputed face lattice.
    pub fn with_faces(faces: FaceLattice, mut generators: Vec<Vec<Int>>) -> Result<Self> {
        let d = faces.dim();
        if generators.is_empty() {
            return Err(Error::NotAMonoid("no generators".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch(format!("generator of length {}", g.len())));
        }
        generators.sort();
        generators.dedup();
        let m = MonoidModule { faces, generators };
        for (i, x) in m.generators.iter().enumerate() {
            for y in &m.generators[i..] {
                let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                if !m.contains(&s) {
                    return Err(Error::NotAMonoid(format!("{:?} + {:?}", x, y)));
                }
            }
        }
        Ok(m)
    }

    /// The matrix `A`.
    pub fn matrix(&self) -> &IntMatrix {
        self.faces.matrix()
    }

    /// Face lattice of `A`.
    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    /// Sorted generators.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Whether the module is `NA` itself.
    pub fn is_semigroup(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].iter().all(|x| x.is_zero())
    }

    /// `v ∈ M`.
    pub fn contains(&self, v: &[Int]) -> bool {
        let a = self.matrix();
        self.generators.iter().any(|b| {
            solve_nonneg_integer(a, &sub_vec(v, b), self.faces.certificate())
                .expect("pointedness certificate is positive on columns")
                .is_some()
        })
    }

    /// `v ∈ M + ZF`.
    pub fn contains_mod_face(&self, f: &ConeFace, v: &[Int]) -> bool {
        let a = self.matrix();
        let outside: Vec<(Vec<Int>, Rat)> = (0..a.cols())
            .filter(|j| !f.columns.contains(j))
            .map(|j| {
                let c = a.column(j);
                let w = dot_rat(&f.interior_functional, &c);
                (c, w)
            })
            .collect();
        self.generators.iter().any(|b| {
            let t = f.span_lattice.reduce(&sub_vec(v, b));
            let mut failed = HashSet::new();
            lift_search(f, &outside, 0, t, &mut failed)
        })
    }
}

fn lift_search(
    f: &ConeFace,
    cols: &[(Vec<Int>, Rat)],
    k: usize,
    rest: Vec<Int>,
    failed: &mut HashSet<(usize, Vec<Int>)>,
) -> bool {
    let total = dot_rat(&f.interior_functional, &rest);
    if total.is_zero() && f.span_lattice.contains(&rest) {
        return true;
    }
    if k == cols.len() || total.is_negative() || failed.contains(&(k, rest.clone())) {
        return false;
    }
    let (col, w) = &cols[k];
    let max = (&total / w).floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let mut cur = rest.clone();
    for _ in 0..=max {
        if lift_search(f, cols, k + 1, f.span_lattice.reduce(&cur), failed) {
            return true;
        }
        cur = sub_vec(&cur, col);
    }
    failed.insert((k, rest));
    false
}

/// `v ∈ M`.
pub fn semigroup_membership(m: &MonoidModule, v: &[Int]) -> bool {
    m.contains(v)
}

/// `v ∈ M + ZF`.
pub fn mod_face_membership(m: &MonoidModule, f: &ConeFace, v: &[Int]) -> bool {
    m.contains_mod_face(f, v)
}

/// `v ∈ R≥0 F ∩ ZF`.
pub fn saturation_membership(lattice: &FaceLattice, f: &ConeFace, v: &[Int]) -> bool {
    f.span_lattice.contains(v) && lattice.facets().iter().all(|s| !s.eval(v).is_negative())
}

/// Points of the box lying in the saturation of `A` but not in `M`.
pub fn enumerate_gaps(m: &MonoidModule, bounds: &[(i64, i64)]) -> Vec<Vec<Int>> {
    let full = m.faces().full_face();
    box_points(bounds)
        .into_iter()
        .filter(|v| saturation_membership(m.faces(), full, v) && !m.contains(v))
        .collect()
}

/// All integer points of a box, in lexicographic order.
pub fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|p| p.into_iter().map(Int::from).collect()).collect()
}
