//! Matrices and helpers shared by the integration tests.
#![allow(dead_code)]

use rankjump::cone_geometry::{enumerate_faces, ConeFace};
use rankjump::exact_lattice::{int_vec, rank_of_vectors, Int, IntMatrix, LatticeBasis, Rat};
use rankjump::semigroup_modules::{box_points, enumerate_gaps, MonoidModule};
use std::collections::HashSet;

pub fn twisted_quartic() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[1, 1, 1, 1], [0, 1, 3, 4]])
}

pub fn unit_square() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
}

pub fn hidden_line() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[2, 3, 0, 0, 1, 0, 1], [0, 1, 2, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]])
}

pub fn hidden_plane() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        [2, 3, 0, 0, 1, 0, 1, 0, 1, 0, 1],
        [0, 1, 2, 0, 0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    ])
}

pub fn two_lines() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        [2, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 1, 1, 1, 0, 0, 1],
        [0, 0, 1, 3, 4, 0, 1, 2],
        [0, 0, 0, 0, 0, 1, 1, 1],
    ])
}

pub fn nonconstant_slab() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        [2, 3, 2, 2, 0, 0, 0, 0, 2, 5, 3],
        [0, 0, 0, 0, 2, 3, 2, 2, 2, 3, 5],
        [0, 0, 1, 2, 0, 0, 1, 2, 5, 7, 7],
    ])
}

pub fn plane_and_line() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        [2, 3, 0, 0, 0, 0, 0, 1, 0, 1],
        [0, 0, 2, 3, 0, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    ])
}

pub fn four_lines() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[2, 3, 0, 0, 1, 0, 1], [0, 0, 2, 3, 0, 1, 1], [0, 0, 0, 0, 1, 1, 1]])
}

pub fn iv(v: &[i64]) -> Vec<Int> {
    int_vec(v)
}

pub fn rv(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// A random pointed matrix with `ZA = Z^d`, nonnegative entries below `max`.
pub fn random_matrix(rng: &mut impl rand::Rng, d: usize, n: usize, max: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..max)).collect()).collect();
        let a = IntMatrix::from_i64_rows(&rows);
        if a.columns().iter().any(|c| c.iter().all(|x| x == &Int::from(0))) {
            continue;
        }
        if enumerate_faces(&a).is_ok() {
            return a;
        }
    }
}

/// A random integer parameter: a gap of the semigroup when one exists in the
/// box, otherwise a point of the box, shifted by at most one unit.
pub fn random_parameter(rng: &mut impl rand::Rng, m: &MonoidModule, lo: i64, hi: i64) -> Vec<Rat> {
    let d = m.faces().dim();
    let gaps = enumerate_gaps(m, &vec![(0, hi); d]);
    let base: Vec<Int> = if !gaps.is_empty() && rng.gen_bool(0.7) {
        gaps[rng.gen_range(0..gaps.len())].clone()
    } else {
        (0..d).map(|_| Int::from(rng.gen_range(lo..=hi))).collect()
    };
    base.iter().map(|x| Rat::from_integer(x + Int::from(rng.gen_range(-1..=0)))).collect()
}

/// `v ∈ NA + ZF` by exhaustive search: some combination of the columns
/// outside `F` has the level of `v` under the sum of the facet functionals
/// vanishing on `F`, and differs from `v` by an element of `ZF`.
pub fn in_semigroup_mod_face(
    m: &MonoidModule,
    f: &ConeFace,
    v: &[Int],
) -> bool {
    let a = m.matrix();
    let containing: Vec<_> =
        m.faces().facets().iter().filter(|s| f.columns.iter().all(|c| s.facet.columns.contains(c))).collect();
    let level = |v: &[Int]| containing.iter().map(|s| s.eval(v)).sum::<Int>();
    let zf = LatticeBasis::from_generators(a.rows(), &f.generators);
    let outside: Vec<Vec<Int>> = (0..a.cols()).filter(|j| !f.columns.contains(j)).map(|j| a.column(j)).collect();
    fn search(
        level: &dyn Fn(&[Int]) -> Int,
        zf: &LatticeBasis,
        outside: &[Vec<Int>],
        rest: Vec<Int>,
    ) -> bool {
        let l = level(&rest);
        if l == Int::from(0) && zf.contains(&rest) {
            return true;
        }
        if l <= Int::from(0) {
            return false;
        }
        outside.iter().enumerate().any(|(k, c)| {
            let next: Vec<Int> = rest.iter().zip(c).map(|(x, y)| x - y).collect();
            search(level, zf, &outside[k..], next)
        })
    }
    search(&level, &zf, &outside, v.to_vec())
}

pub fn coord_sum(v: &[Int]) -> Int {
    v.iter().sum()
}

/// All points of `NA` with coordinate sum at most `bound`, by breadth-first
/// addition of columns (every column has positive coordinate sum).
pub fn semigroup_ball(a: &IntMatrix, bound: i64) -> HashSet<Vec<Int>> {
    let bound = Int::from(bound);
    let mut seen: HashSet<Vec<Int>> = HashSet::new();
    let mut frontier = vec![vec![Int::from(0); a.rows()]];
    seen.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        for c in a.columns() {
            let w: Vec<Int> = v.iter().zip(&c).map(|(x, y)| x + y).collect();
            if coord_sum(&w) <= bound && seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

pub fn small_points(d: usize, bound: i64) -> Vec<Vec<Int>> {
    box_points(&vec![(-1, bound); d]).into_iter().filter(|v| coord_sum(v) <= Int::from(bound)).collect()
}

/// `E_τ(β)` for integral `β` by scanning integer `λ ∈ Qτ` in a box.
pub fn e_tau_by_search(m: &MonoidModule, beta: &[Int], tau: usize, radius: i64) -> Vec<Vec<Rat>> {
    let f = &m.faces().faces()[tau];
    let d = beta.len();
    let mut out: Vec<Vec<Rat>> = box_points(&vec![(-radius, radius); d])
        .into_iter()
        .filter(|l| {
            let mut gens = f.generators.clone();
            gens.push(l.clone());
            rank_of_vectors(&gens, d) == f.dim
        })
        .filter(|l| in_semigroup_mod_face(m, f, &beta.iter().zip(l).map(|(b, x)| b - x).collect::<Vec<_>>()))
        .map(|l| f.span_lattice.reduce(&l).into_iter().map(Rat::from_integer).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}
