//! Rank jumps from the cellular complex on the maximal faces of each class
//! of ranking pairs.

use crate::cone_geometry::{ConeFace, FaceLattice};
use crate::exact_lattice::{
    primitive_integer_vector, rank_of_vectors, rational_kernel, sparse_rank, to_rat_vec, Int, IntMatrix, Rat,
};
use crate::ranking::{int_json, ints_json, max_indices, rat_string, ranking_lattices, RankingLattices};
use crate::semigroup_modules::MonoidModule;
use crate::{Error, Result};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::HashMap;

/// A cell of the simplex on the vertex faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Sorted positions into [`CellularPage::vertex_faces`].
    pub vertices: Vec<usize>,
    /// Index of the intersection face `F_s`.
    pub face: usize,
    /// Pairs of the page on `F_s` lying below a pair of the page on every
    /// vertex face of the cell.
    pub pairs: Vec<usize>,
    /// `pairs.len()`.
    pub count: usize,
}

/// The labelled simplex attached to a set of ranking pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularPage {
    /// Class this page belongs to, if it was built from a whole class.
    pub class_id: Option<usize>,
    /// Sorted indices of the pairs.
    pub pairs: Vec<usize>,
    /// Distinct faces of the maximal pairs, sorted by face index.
    pub vertex_faces: Vec<usize>,
    /// `cells[p]` lists the `p`-cells in lexicographic order of vertex sets.
    pub cells: Vec<Vec<Cell>>,
}

impl CellularPage {
    /// Number of `p`-cells.
    pub fn cell_count(&self, p: usize) -> usize {
        self.cells.get(p).map_or(0, |c| c.len())
    }
}

/// Per-class tables of a rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    /// Index of the class in [`RankingLattices::classes`].
    pub class_id: usize,
    /// Face columns and basepoint of each pair in the class.
    pub pairs: Vec<(Vec<usize>, Vec<Int>)>,
    /// Columns of the vertex faces.
    pub vertex_faces: Vec<Vec<usize>>,
    /// `first_page[p][q]`.
    pub first_page: Vec<Vec<Int>>,
    /// `images[p][t]`: rank of the image of the first-page differential at `(p, p + t)`.
    pub images: Vec<Vec<Int>>,
    /// `chi[t]` for `t = 0..=max(d, 2)`.
    pub chi: Vec<Int>,
    /// The class contribution `chi[2]`.
    pub j_class: Int,
}

/// Result of [`rank_jump`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankJumpReport {
    /// The parameter.
    pub beta: Vec<Rat>,
    /// `vol(A)`.
    pub vol_a: Int,
    /// One entry per class.
    pub classes: Vec<ClassReport>,
    /// Total jump.
    pub j: Int,
    /// `vol(A) + j`.
    pub rank: Int,
}

impl RankJumpReport {
    /// JSON form with rationals as `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        json!({
            "beta": self.beta.iter().map(rat_string).collect::<Vec<_>>(),
            "vol_A": int_json(&self.vol_a),
            "classes": self.classes.iter().map(|c| json!({
                "reps": c.pairs.iter().map(|(_, b)| ints_json(b)).collect::<Vec<_>>(),
                "faces": c.vertex_faces,
                "pairs": c.pairs.iter().map(|(f, b)| json!({"face": f, "basepoint": ints_json(b)})).collect::<Vec<_>>(),
                "j_class": int_json(&c.j_class),
                "chi_table": {
                    "first_page": c.first_page.iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
                    "image": c.images.iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
                    "chi": ints_json(&c.chi),
                },
            })).collect::<Vec<_>>(),
            "j": int_json(&self.j),
            "rank": int_json(&self.rank),
        })
    }
}

/// Rank of `H_0` of `S_F` itself: the normalized volume, or 1 for the
/// empty face, whose module is one-dimensional.
pub fn weight(f: &ConeFace) -> Int {
    if f.columns.is_empty() {
        Int::one()
    } else {
        f.volume.clone()
    }
}

fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Evaluates pages of one ranking-lattice computation.
///
/// `H_0` of the module of a pair `e` is modelled as the span of the points
/// of every pair below `e`; `fresh[e]` counts the points first appearing at
/// `e`, so that `weight(e)` is the sum of `fresh` over the pairs below `e`.
/// Each point spans a subcomplex of the first page on which the restriction
/// maps are inclusions `Λ^q F_s^⊥ ⊆ Λ^q F_t^⊥`.
pub struct RankEngine<'a> {
    faces: &'a FaceLattice,
    lattices: &'a RankingLattices,
    below: Vec<Vec<bool>>,
    fresh: Vec<Int>,
    wedge_memo: RefCell<HashMap<(usize, usize), Vec<Vec<Int>>>>,
}

impl<'a> RankEngine<'a> {
    /// Prepares containment tables and point counts for all pairs.
    pub fn new(faces: &'a FaceLattice, lattices: &'a RankingLattices) -> Self {
        let pairs = &lattices.pairs;
        let n = pairs.len();
        let below: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| pairs[a].is_below(&pairs[b])).collect()).collect();
        let mut fresh = vec![Int::zero(); n];
        for k in (0..n).sorted_by_key(|&k| faces.faces()[pairs[k].face].dim) {
            let lower: Int = (0..n).filter(|&i| i != k && below[i][k]).map(|i| fresh[i].clone()).sum();
            fresh[k] = weight(&faces.faces()[pairs[k].face]) - lower;
        }
        RankEngine { faces, lattices, below, fresh, wedge_memo: RefCell::new(HashMap::new()) }
    }

    fn d(&self) -> usize {
        self.faces.dim()
    }

    fn face_of(&self, pair: usize) -> usize {
        self.lattices.pairs[pair].face
    }

    /// Points first appearing at each pair, indexed like [`RankingLattices::pairs`].
    pub fn fresh_points(&self) -> &[Int] {
        &self.fresh
    }

    /// Page of one class.
    pub fn class_page(&self, class: usize) -> CellularPage {
        let mut page = self.build_page(&self.lattices.classes[class]);
        page.class_id = Some(class);
        page
    }

    /// Page of an arbitrary nonempty set of pair indices.
    pub fn build_page(&self, pairs: &[usize]) -> CellularPage {
        let mut set = pairs.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut vertex_faces: Vec<usize> =
            max_indices(&self.lattices.pairs, &set).into_iter().map(|i| self.face_of(i)).collect();
        vertex_faces.sort_unstable();
        vertex_faces.dedup();
        let cells = (1..=vertex_faces.len())
            .map(|k| {
                (0..vertex_faces.len())
                    .combinations(k)
                    .map(|vertices| {
                        let face = vertices[1..]
                            .iter()
                            .fold(vertex_faces[vertices[0]], |f, &v| self.faces.meet(f, vertex_faces[v]));
                        let pairs: Vec<usize> = set
                            .iter()
                            .copied()
                            .filter(|&i| {
                                self.face_of(i) == face
                                    && vertices.iter().all(|&v| {
                                        set.iter().any(|&k| self.face_of(k) == vertex_faces[v] && self.below[i][k])
                                    })
                            })
                            .collect();
                        Cell { vertices, face, count: pairs.len(), pairs }
                    })
                    .collect()
            })
            .collect();
        CellularPage { class_id: None, pairs: set, vertex_faces, cells }
    }

    /// `Σ_s count(s) · C(codim F_s, q) · vol F_s` over the `p`-cells.
    pub fn first_page_rank(&self, page: &CellularPage, p: usize, q: usize) -> Int {
        let Some(cells) = page.cells.get(p) else {
            return Int::zero();
        };
        cells
            .iter()
            .map(|c| {
                let f = &self.faces.faces()[c.face];
                Int::from(c.count) * binomial(f.codim, q) * weight(f)
            })
            .sum()
    }

    /// Circuits for the cell at position `j` of `order` (a permutation of the
    /// `p`-cells), as sorted sets of positions in `order` that contain `j`.
    pub fn circuits_in_order(&self, page: &CellularPage, p: usize, order: &[usize], j: usize) -> Vec<Vec<usize>> {
        let cells = &page.cells[p];
        let mut out = Vec::new();
        for size in 1..=j {
            for rest in (0..j).combinations(size) {
                let mut lambda = rest.clone();
                lambda.push(j);
                let verts: Vec<&Vec<usize>> = lambda.iter().map(|&i| &cells[order[i]].vertices).collect();
                if p == 0 || is_circuit(&verts, p) {
                    out.push(lambda);
                }
            }
        }
        out
    }

    /// Circuits for cell `j` (0-based) in the lexicographic cell order.
    pub fn circuits(&self, page: &CellularPage, p: usize, j: usize) -> Vec<Vec<usize>> {
        let order: Vec<usize> = (0..page.cell_count(p)).collect();
        self.circuits_in_order(page, p, &order, j)
    }

    /// Coordinates in `Λ^q Q^d` of a basis of `Λ^q F^⊥`.
    fn wedge_basis(&self, face: usize, q: usize) -> Vec<Vec<Int>> {
        if let Some(v) = self.wedge_memo.borrow().get(&(face, q)) {
            return v.clone();
        }
        let d = self.d();
        let a = self.faces.matrix();
        let rows: Vec<Vec<Rat>> =
            self.faces.faces()[face].columns.iter().map(|&i| to_rat_vec(&a.column(i))).collect();
        let perp: Vec<Vec<Int>> = rational_kernel(&rows, d).iter().map(|v| primitive_integer_vector(v)).collect();
        let out: Vec<Vec<Int>> = (0..perp.len())
            .combinations(q)
            .map(|chosen| {
                (0..d)
                    .combinations(q)
                    .map(|coords| {
                        let m = IntMatrix::from_rows(
                            chosen.iter().map(|&i| coords.iter().map(|&c| perp[i][c].clone()).collect()).collect(),
                        )
                        .expect("square minor");
                        m.determinant()
                    })
                    .collect()
            })
            .collect();
        self.wedge_memo.borrow_mut().insert((face, q), out.clone());
        out
    }

    /// Rank of the first-page differential from row `p` to row `p + 1` in
    /// homological degree `q`.
    pub fn image_rank(&self, page: &CellularPage, p: usize, q: usize) -> Result<Int> {
        let (Some(src), Some(dst)) = (page.cells.get(p), page.cells.get(p + 1)) else {
            return Ok(Int::zero());
        };
        let width = (0..self.d()).combinations(q).count();
        let mut memo: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
        let mut total = Int::zero();
        for &e in &page.pairs {
            let fresh = &self.fresh[e];
            if fresh.is_negative() {
                return Err(Error::InvariantViolated(format!("pair {e} has {fresh} new points")));
            }
            if fresh.is_zero() {
                continue;
            }
            let holds = |c: &Cell| c.pairs.iter().any(|&k| self.below[e][k]);
            let sources: Vec<usize> = (0..src.len()).filter(|&s| holds(&src[s])).collect();
            let targets: Vec<usize> = (0..dst.len()).filter(|&t| holds(&dst[t])).collect();
            if sources.is_empty() || targets.is_empty() {
                continue;
            }
            let rank = *memo.entry((sources.clone(), targets.clone())).or_insert_with(|| {
                let mut rows = Vec::new();
                for &s in &sources {
                    let cofaces: Vec<(usize, bool)> = targets
                        .iter()
                        .enumerate()
                        .filter_map(|(ti, &t)| incidence(&src[s].vertices, &dst[t].vertices).map(|sign| (ti, sign)))
                        .collect();
                    for w in self.wedge_basis(src[s].face, q) {
                        let mut row = Vec::new();
                        for &(ti, sign) in &cofaces {
                            for (j, x) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                row.push((ti * width + j, if sign { x.clone() } else { -x }));
                            }
                        }
                        rows.push(row);
                    }
                }
                sparse_rank(&rows)
            });
            total += fresh * Int::from(rank);
        }
        Ok(total)
    }

    /// `χ_t` of the page.
    pub fn partial_characteristic(&self, page: &CellularPage, t: usize) -> Result<Int> {
        let d = self.d();
        let mut chi = Int::zero();
        for p in 0..page.cells.len() {
            for q in 0..=d {
                if p + t > q {
                    let r = self.first_page_rank(page, p, q);
                    if (p + q + t + 1) % 2 == 0 {
                        chi += r;
                    } else {
                        chi -= r;
                    }
                }
            }
            if p + t <= d {
                chi -= self.image_rank(page, p, p + t)?;
            }
        }
        Ok(chi)
    }

    /// `rank H_0` of the ranking toric module on a nonempty set of pairs,
    /// closed downward within the lattices: `χ_1` of its page.
    pub fn rank_h0(&self, set: &[usize]) -> Result<Int> {
        let closed: Vec<usize> =
            (0..self.lattices.pairs.len()).filter(|&e| set.iter().any(|&k| self.below[e][k])).collect();
        self.partial_characteristic(&self.build_page(&closed), 1)
    }

    /// Full tables and `χ_t` values for one class.
    pub fn class_report(&self, class: usize) -> Result<ClassReport> {
        let d = self.d();
        let page = self.class_page(class);
        let first_page: Vec<Vec<Int>> =
            (0..page.cells.len()).map(|p| (0..=d).map(|q| self.first_page_rank(&page, p, q)).collect()).collect();
        let images = (0..page.cells.len().min(d + 1))
            .map(|p| (p..=d).map(|q| self.image_rank(&page, p, q)).collect())
            .collect::<Result<Vec<Vec<Int>>>>()?;
        let chi = (0..=d.max(2)).map(|t| self.partial_characteristic(&page, t)).collect::<Result<Vec<Int>>>()?;
        if !chi[0].is_zero() {
            return Err(Error::InvariantViolated(format!("chi_0 = {} on class {}", chi[0], class)));
        }
        let alternating: Int = first_page
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().map(move |(q, r)| if (p + q) % 2 == 0 { r.clone() } else { -r }))
            .sum();
        if !alternating.is_zero() {
            return Err(Error::InvariantViolated(format!("alternating first-page sum {alternating} on class {class}")));
        }
        let faces = self.faces.faces();
        Ok(ClassReport {
            class_id: class,
            pairs: page
                .pairs
                .iter()
                .map(|&i| {
                    let p = &self.lattices.pairs[i];
                    (faces[p.face].columns.clone(), p.coset.basepoint().to_vec())
                })
                .collect(),
            vertex_faces: page.vertex_faces.iter().map(|&f| faces[f].columns.clone()).collect(),
            first_page,
            images,
            j_class: chi[2].clone(),
            chi,
        })
    }
}

/// Orientation sign of `source` as a facet of `target`, or `None` when it is not one.
fn incidence(source: &[usize], target: &[usize]) -> Option<bool> {
    if target.len() != source.len() + 1 || !source.iter().all(|v| target.contains(v)) {
        return None;
    }
    let pos = target.iter().position(|v| !source.contains(v)).expect("one extra vertex");
    Some(pos % 2 == 0)
}

/// Whether the `p`-cells with the given vertex sets form a minimal dependent
/// family of coboundaries in the simplex on their vertices.
fn is_circuit(cells: &[&Vec<usize>], p: usize) -> bool {
    let verts: Vec<usize> = cells.iter().flat_map(|c| c.iter().copied()).sorted().dedup().collect();
    let rows: Vec<Vec<Rat>> = verts
        .iter()
        .copied()
        .combinations(p + 2)
        .map(|t| {
            cells
                .iter()
                .map(|s| {
                    if !s.iter().all(|v| t.contains(v)) {
                        return Rat::zero();
                    }
                    let pos = t.iter().position(|v| !s.contains(v)).expect("one extra vertex");
                    if pos % 2 == 0 {
                        Rat::one()
                    } else {
                        -Rat::one()
                    }
                })
                .collect()
        })
        .collect();
    let kernel = rational_kernel(&rows, cells.len());
    kernel.len() == 1 && kernel[0].iter().all(|x| !x.is_zero())
}

/// Rank jump and per-class tables of `m` at `beta`.
pub fn rank_jump(m: &MonoidModule, beta: &[Rat]) -> Result<RankJumpReport> {
    let lattices = ranking_lattices(m, beta);
    rank_jump_from_lattices(m.faces(), &lattices)
}

/// [`rank_jump`] from precomputed ranking lattices.
pub fn rank_jump_from_lattices(faces: &FaceLattice, lattices: &RankingLattices) -> Result<RankJumpReport> {
    let engine = RankEngine::new(faces, lattices);
    let classes = (0..lattices.classes.len()).map(|c| engine.class_report(c)).collect::<Result<Vec<_>>>()?;
    let j: Int = classes.iter().map(|c| &c.j_class).sum();
    if j.is_negative() {
        return Err(Error::InvariantViolated(format!("negative rank jump {j}")));
    }
    let vol_a = faces.full_face().volume.clone();
    Ok(RankJumpReport { beta: lattices.beta.clone(), rank: &vol_a + &j, vol_a, classes, j })
}

/// Faces of the maximal pairs of one class, sorted and deduplicated.
fn class_vertex_faces(lattices: &RankingLattices, class: usize) -> Vec<usize> {
    max_indices(&lattices.pairs, &lattices.classes[class])
        .into_iter()
        .map(|i| lattices.pairs[i].face)
        .sorted()
        .dedup()
        .collect()
}

/// Pairs of `class` on `face` lying below a pair of the class on each face in `over`.
fn class_count(lattices: &RankingLattices, class: usize, face: usize, over: &[usize]) -> usize {
    let members = &lattices.classes[class];
    let pairs = &lattices.pairs;
    members
        .iter()
        .filter(|&&i| {
            pairs[i].face == face
                && over.iter().all(|&g| members.iter().any(|&k| pairs[k].face == g && pairs[i].is_below(&pairs[k])))
        })
        .count()
}

/// `Σ |B_F| · (codim F − 1) · vol F` over classes, provided every class has
/// a single vertex face; `None` otherwise.
pub fn simple_jump_closed_form(faces: &FaceLattice, lattices: &RankingLattices) -> Option<Int> {
    let mut total = Int::zero();
    for c in 0..lattices.classes.len() {
        let [v] = class_vertex_faces(lattices, c)[..] else {
            return None;
        };
        total += simple_term(faces, lattices, c, v);
    }
    Some(total)
}

fn simple_term(faces: &FaceLattice, lattices: &RankingLattices, class: usize, v: usize) -> Int {
    let f = &faces.faces()[v];
    Int::from(class_count(lattices, class, v, &[])) * (Int::from(f.codim) - 1) * weight(f)
}

/// The two-vertex formula on classes with two vertex faces and the simple
/// formula on classes with one; `None` if some class has more.
pub fn two_component_closed_form(faces: &FaceLattice, lattices: &RankingLattices) -> Option<Int> {
    let mut total = Int::zero();
    for c in 0..lattices.classes.len() {
        total += match class_vertex_faces(lattices, c)[..] {
            [v] => simple_term(faces, lattices, c, v),
            [v1, v2] => two_vertex_term(faces, lattices, c, v1, v2),
            _ => return None,
        };
    }
    Some(total)
}

fn two_vertex_term(faces: &FaceLattice, lattices: &RankingLattices, class: usize, v1: usize, v2: usize) -> Int {
    let fs = faces.faces();
    let d = faces.dim();
    let (f1, f2) = (&fs[v1], &fs[v2]);
    let g_index = faces.meet(v1, v2);
    let g = &fs[g_index];
    let a = faces.matrix();
    let union: Vec<Vec<Int>> =
        (0..a.cols()).filter(|&i| (f1.mask() | f2.mask()) >> i & 1 == 1).map(|i| a.column(i)).collect();
    let c12 = d - rank_of_vectors(&union, d);
    let b2 = |n: usize| binomial(n, 2);
    let c_beta = b2(g.codim) - Int::from(g.codim) + 1 - b2(f1.codim) - b2(f2.codim) + b2(c12);
    simple_term(faces, lattices, class, v1)
        + simple_term(faces, lattices, class, v2)
        + Int::from(class_count(lattices, class, g_index, &[v1, v2])) * c_beta * weight(g)
}
