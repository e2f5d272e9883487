//! Faces, support functions and normalized volumes of the cone over the columns of `A`.

use crate::exact_lattice::{
    dot, dot_rat, integer_kernel, rank_of_vectors, rational_kernel, rref, saturate, smith_diagonal,
    to_rat_vec, Int, IntMatrix, LatticeBasis, Rat,
};
use crate::{Error, Result};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// A face of `A`, given by the columns it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFace {
    /// Sorted column indices.
    pub columns: Vec<usize>,
    /// The column vectors, in the order of `columns`.
    pub generators: Vec<Vec<Int>>,
    /// `ZF`.
    pub span_lattice: LatticeBasis,
    /// `Z^d ∩ QF`.
    pub saturated_lattice: LatticeBasis,
    /// Rank of `F`.
    pub dim: usize,
    /// `d - dim`.
    pub codim: usize,
    /// Sum of the support functions of the facets containing `F`.
    pub interior_functional: Vec<Rat>,
    /// Normalized volume in `ZF`; zero for the empty face.
    pub volume: Int,
    mask: u64,
}

impl ConeFace {
    /// Columns as a bit set.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Whether `self ⊆ other` as column sets.
    pub fn is_subface_of(&self, other: &ConeFace) -> bool {
        self.mask & !other.mask == 0
    }
}

/// The primitive integral support function of a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    /// The facet.
    pub facet: ConeFace,
    /// Coefficients of `p_F`.
    pub coefficients: Vec<Int>,
}

impl SupportFunction {
    /// `p_F(v)`.
    pub fn eval(&self, v: &[Int]) -> Int {
        dot(&self.coefficients, v)
    }

    /// `p_F(v)` for rational `v`.
    pub fn eval_rational(&self, v: &[Rat]) -> Rat {
        dot_rat(v, &self.coefficients)
    }
}

/// All faces of `A`, with facet support functions.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    matrix: IntMatrix,
    faces: Vec<ConeFace>,
    facets: Vec<SupportFunction>,
    certificate: Vec<Rat>,
    by_mask: HashMap<u64, usize>,
}

impl FaceLattice {
    /// The matrix `A`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Faces sorted by dimension, then by column list.
    pub fn faces(&self) -> &[ConeFace] {
        &self.faces
    }

    /// Support functions of the facets, in face order.
    pub fn facets(&self) -> &[SupportFunction] {
        &self.facets
    }

    /// A functional strictly positive on every column.
    pub fn certificate(&self) -> &[Rat] {
        &self.certificate
    }

    /// Index of the face with the given column mask.
    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.by_mask.get(&mask).copied()
    }

    /// The face with exactly these columns.
    pub fn face_by_columns(&self, columns: &[usize]) -> Option<&ConeFace> {
        let mask = columns.iter().fold(0u64, |m, &c| m | (1 << c));
        self.index_of_mask(mask).map(|i| &self.faces[i])
    }

    /// Index of `faces[i] ∩ faces[j]`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.by_mask[&(self.faces[i].mask & self.faces[j].mask)]
    }

    /// The face `A`.
    pub fn full_face(&self) -> &ConeFace {
        self.faces.last().expect("face lattice is never empty")
    }

    /// Support function of a facet.
    pub fn support_function(&self, facet: &ConeFace) -> Result<SupportFunction> {
        if facet.codim != 1 {
            return Err(Error::NotAFacet(facet.columns.clone()));
        }
        self.facets
            .iter()
            .find(|s| s.facet.mask == facet.mask)
            .cloned()
            .ok_or_else(|| Error::NotAFacet(facet.columns.clone()))
    }
}

/// Support function of a facet of `lattice`.
pub fn support_function(facet: &ConeFace, lattice: &FaceLattice) -> Result<SupportFunction> {
    lattice.support_function(facet)
}

/// `h_F`: zero on `F`, positive on every other column.
pub fn interior_functional(f: &ConeFace, lattice: &FaceLattice) -> Vec<Rat> {
    let d = lattice.dim();
    let mut h = vec![Rat::zero(); d];
    for s in lattice.facets.iter().filter(|s| f.is_subface_of(&s.facet)) {
        for (x, c) in h.iter_mut().zip(&s.coefficients) {
            *x += Rat::from_integer(c.clone());
        }
    }
    h
}

/// Whether `v` lies in `β + R≥0 A`, measured facet by facet.
pub fn cone_shift_membership(beta: &[Rat], v: &[Int], lattice: &FaceLattice) -> bool {
    lattice.facets.iter().all(|s| Rat::from_integer(s.eval(v)) >= s.eval_rational(beta))
}

/// Primitive normals of the facets of the cone spanned by `cols` in `Q^r`,
/// assuming the columns span `Q^r`.
fn facet_normals(cols: &[Vec<Int>], r: usize) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    for subset in (0..cols.len()).combinations(r - 1) {
        let sub: Vec<Vec<Int>> = subset.iter().map(|&i| cols[i].clone()).collect();
        if rank_of_vectors(&sub, r) != r - 1 {
            continue;
        }
        let kt = IntMatrix::from_columns(r, &sub).transpose();
        let mut normal = integer_kernel(&kt).pop().expect("corank one");
        let values: Vec<Int> = cols.iter().map(|c| dot(&normal, c)).collect();
        if values.iter().all(|v| !v.is_positive()) {
            normal.iter_mut().for_each(|x| *x = -x.clone());
        } else if !values.iter().all(|v| !v.is_negative()) {
            continue;
        }
        if !out.contains(&normal) {
            out.push(normal);
        }
    }
    out
}

/// Returns a functional positive on every column of `a`.
///
/// Fails with [`Error::NotPointed`] when the cone contains a line or a zero
/// column, and with [`Error::NotFullLattice`] when `ZA != Z^d`.
pub fn check_pointed(a: &IntMatrix) -> Result<Vec<Rat>> {
    let d = a.rows();
    let cols = a.columns();
    if cols.iter().any(|c| c.iter().all(|x| x.is_zero())) {
        return Err(Error::NotPointed);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for i in 0..d {
        rows.push(a.row(i));
        if rank_of_vectors(&rows, a.cols()) > chosen.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    let r = chosen.len();
    if r == 0 {
        return Err(Error::NotFullLattice);
    }
    let projected: Vec<Vec<Int>> =
        cols.iter().map(|c| chosen.iter().map(|&i| c[i].clone()).collect()).collect();
    let normals = facet_normals(&projected, r);
    if rank_of_vectors(&normals, r) < r {
        return Err(Error::NotPointed);
    }
    if r < d || smith_diagonal(a).iter().any(|x| !x.is_one()) {
        return Err(Error::NotFullLattice);
    }
    let mut c = vec![Rat::zero(); d];
    for n in &normals {
        for (k, &i) in chosen.iter().enumerate() {
            c[i] += Rat::from_integer(n[k].clone());
        }
    }
    Ok(c)
}

/// Builds the full face lattice of `a`.
pub fn enumerate_faces(a: &IntMatrix) -> Result<FaceLattice> {
    let n = a.cols();
    if n > 64 {
        return Err(Error::DimensionMismatch("at most 64 columns are supported".into()));
    }
    let certificate = check_pointed(a)?;
    let d = a.rows();
    let cols = a.columns();
    let normals = facet_normals(&cols, d);
    let facet_masks: Vec<u64> = normals
        .iter()
        .map(|p| (0..n).filter(|&i| dot(p, &cols[i]).is_zero()).fold(0u64, |m, i| m | (1 << i)))
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks: BTreeSet<u64> = BTreeSet::from([full]);
    let mut frontier = vec![full];
    while let Some(m) = frontier.pop() {
        for f in &facet_masks {
            let x = m & f;
            if masks.insert(x) {
                frontier.push(x);
            }
        }
    }
    let mut faces: Vec<ConeFace> = masks
        .into_iter()
        .map(|mask| {
            let columns: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let generators: Vec<Vec<Int>> = columns.iter().map(|&i| cols[i].clone()).collect();
            let span_lattice = LatticeBasis::from_generators(d, &generators);
            let saturated_lattice = saturate(&span_lattice);
            let dim = span_lattice.rank();
            let mut h = vec![Rat::zero(); d];
            for (p, fm) in normals.iter().zip(&facet_masks) {
                if mask & !fm == 0 {
                    for (x, c) in h.iter_mut().zip(p) {
                        *x += Rat::from_integer(c.clone());
                    }
                }
            }
            let volume = volume_in_span(&generators, &span_lattice);
            ConeFace {
                columns,
                generators,
                span_lattice,
                saturated_lattice,
                dim,
                codim: d - dim,
                interior_functional: h,
                volume,
                mask,
            }
        })
        .collect();
    faces.sort_by(|x, y| x.dim.cmp(&y.dim).then_with(|| x.columns.cmp(&y.columns)));
    let by_mask: HashMap<u64, usize> = faces.iter().enumerate().map(|(i, f)| (f.mask, i)).collect();
    let mut facets: Vec<SupportFunction> = normals
        .into_iter()
        .zip(&facet_masks)
        .map(|(p, m)| SupportFunction { facet: faces[by_mask[m]].clone(), coefficients: p })
        .collect();
    facets.sort_by_key(|s| by_mask[&s.facet.mask]);
    Ok(FaceLattice { matrix: a.clone(), faces, facets, certificate, by_mask })
}

/// Normalized volume of `conv(0 ∪ F)` relative to `ZF`.
pub fn normalized_volume(f: &ConeFace) -> Int {
    volume_in_span(&f.generators, &f.span_lattice)
}

fn volume_in_span(generators: &[Vec<Int>], span: &LatticeBasis) -> Int {
    let k = span.rank();
    if k == 0 {
        return Int::zero();
    }
    let mut points: Vec<Vec<Int>> = vec![vec![Int::zero(); k]];
    for g in generators {
        let c = span.coordinates(g).expect("generator lies in its span");
        if !points.contains(&c) {
            points.push(c);
        }
    }
    let mut rest: Vec<usize> = (1..points.len()).collect();
    rest.sort_by(|&i, &j| points[i].cmp(&points[j]));
    let mut order = vec![0];
    order.extend(rest);
    simplices_volume(&points, &pulling_triangulation(&points, &order))
}

/// Sum of `|det|` over full-dimensional simplices given by vertex indices.
pub fn simplices_volume(points: &[Vec<Int>], simplices: &[Vec<usize>]) -> Int {
    let mut total = Int::zero();
    for s in simplices {
        let base = &points[s[0]];
        let edges: Vec<Vec<Int>> =
            s[1..].iter().map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        total += IntMatrix::from_columns(base.len(), &edges).determinant().abs();
    }
    total
}

/// Pulling triangulation of the convex hull of full-dimensional `points`,
/// pulling vertices in the given order. Returns simplices as point indices.
pub fn pulling_triangulation(points: &[Vec<Int>], order: &[usize]) -> Vec<Vec<usize>> {
    let k = points.first().map_or(0, |p| p.len());
    let pts: Vec<(usize, Vec<Rat>)> = order.iter().map(|&i| (i, to_rat_vec(&points[i]))).collect();
    pull(&pts, k)
}

fn pull(pts: &[(usize, Vec<Rat>)], m: usize) -> Vec<Vec<usize>> {
    if pts.len() == m + 1 || m == 0 {
        return vec![pts.iter().take(m + 1).map(|p| p.0).collect()];
    }
    let apex = pts[0].0;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for subset in (0..pts.len()).combinations(m) {
        let base = &pts[subset[0]].1;
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| pts[i].1.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let kernel = rational_kernel(&diffs, m);
        if kernel.len() != 1 {
            continue;
        }
        let normal = &kernel[0];
        let level: Rat = normal.iter().zip(base).map(|(a, b)| a * b).sum();
        let values: Vec<Rat> =
            pts.iter().map(|p| normal.iter().zip(&p.1).map(|(a, b)| a * b).sum::<Rat>() - &level).collect();
        let below = values.iter().all(|v| !v.is_positive());
        let above = values.iter().all(|v| !v.is_negative());
        if !(below || above) {
            continue;
        }
        let on: Vec<usize> = (0..pts.len()).filter(|&i| values[i].is_zero()).collect();
        if on.contains(&0) || !seen.insert(on.clone()) {
            continue;
        }
        let mut rows: Vec<Vec<Rat>> = on[1..]
            .iter()
            .map(|&i| pts[i].1.iter().zip(&pts[on[0]].1).map(|(a, b)| a - b).collect())
            .collect();
        let keep = rref(&mut rows);
        let projected: Vec<(usize, Vec<Rat>)> = on
            .iter()
            .map(|&i| (pts[i].0, keep.iter().map(|&c| pts[i].1[c].clone()).collect()))
            .collect();
        for mut s in pull(&projected, m - 1) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}
