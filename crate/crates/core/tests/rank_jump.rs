mod common;

use common::*;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankjump::exact_lattice::{lattice_index, Int, IntMatrix, LatticeIndex, Rat};
use rankjump::rank_jump::{rank_jump, simple_jump_closed_form, two_component_closed_form, RankEngine};
use rankjump::ranking::ranking_lattices;
use rankjump::semigroup_modules::MonoidModule;

fn jump(a: &IntMatrix, beta: &[Rat]) -> Int {
    rank_jump(&MonoidModule::semigroup(a).unwrap(), beta).unwrap().j
}

fn check_jumps(a: &IntMatrix, cases: &[(&[i64], i64)]) {
    for (beta, j) in cases {
        assert_eq!(jump(a, &rv(beta)), Int::from(*j), "beta = {beta:?}");
    }
}

#[test]
fn quartic_isolated_hole() {
    check_jumps(&twisted_quartic(), &[(&[1, 2], 1), (&[0, 0], 0), (&[2, 2], 0), (&[1, 3], 0)]);
}

#[test]
fn hidden_line_jumps() {
    let a = hidden_line();
    check_jumps(&a, &[(&[1, 0, 0], 1), (&[1, 1, 0], 1), (&[1, 7, 0], 1), (&[1, -2, 0], 1), (&[2, 0, 0], 0), (&[0, 0, 0], 0)]);
    assert_eq!(jump(&a, &[rat(1, 1), rat(1, 2), rat(0, 1)]), Int::from(1));
    assert_eq!(jump(&a, &[rat(1, 1), rat(-3, 2), rat(0, 1)]), Int::from(1));
    let report = rank_jump(&MonoidModule::semigroup(&a).unwrap(), &rv(&[1, 0, 0])).unwrap();
    assert_eq!(report.vol_a, Int::from(15));
    assert_eq!(report.rank, Int::from(16));
    let mut per_class: Vec<(Vec<Vec<usize>>, Int)> =
        report.classes.iter().map(|c| (c.vertex_faces.clone(), c.j_class.clone())).collect();
    per_class.sort();
    assert_eq!(per_class, vec![(vec![vec![0, 1, 2]], Int::zero()), (vec![vec![2]], Int::from(1))]);
}

#[test]
fn four_lines_table() {
    let a = four_lines();
    check_jumps(
        &a,
        &[
            (&[3, 1, 0], 3),
            (&[2, 0, 1], 1),
            (&[1, 3, 0], 3),
            (&[0, 2, 1], 1),
            (&[2, 2, 1], 2),
            (&[1, 0, 0], 3),
            (&[0, 1, 0], 3),
            (&[1, 1, 0], 5),
            (&[0, 0, -1], 2),
        ],
    );
    let report = rank_jump(&MonoidModule::semigroup(&a).unwrap(), &rv(&[0, 0, -1])).unwrap();
    assert_eq!((report.vol_a, report.rank), (Int::from(16), Int::from(18)));
}

#[test]
fn plane_and_line_jumps() {
    check_jumps(&plane_and_line(), &[(&[1, 1, 0, 0], 9), (&[3, 1, 0, 0], 6), (&[1, 3, 0, 0], 4), (&[1, 1, 2, 0], 4)]);
}

#[test]
fn nonconstant_slab_jumps() {
    check_jumps(
        &nonconstant_slab(),
        &[(&[1, 1, 0], 2), (&[3, 5, 3], 2), (&[5, 3, 3], 2), (&[5, 5, 6], 2), (&[3, 3, 5], 1), (&[5, 5, 10], 1)],
    );
}

/// `(2,3,3)` lies in the coset of `Z[a4 a9]` at level 7 of the facet's support
/// function that `NA` misses entirely, so its class has that facet as only vertex.
#[test]
fn gap_on_missing_facet_coset_has_no_jump() {
    let a = nonconstant_slab();
    let m = MonoidModule::semigroup(&a).unwrap();
    let facet = m.faces().face_by_columns(&[3, 8]).unwrap();
    let p = m.faces().support_function(facet).unwrap();
    assert_eq!(p.eval(&iv(&[2, 3, 3])), Int::from(7));
    let level_seven: Vec<Vec<i64>> = vec![vec![3, 5, 7], vec![7, 3, 8], vec![5, 5, 9]];
    for v in &level_seven {
        assert!(m.contains(&iv(v)));
        assert!(!facet.span_lattice.contains(&rankjump::exact_lattice::sub_vec(&iv(v), &iv(&[2, 3, 3]))));
    }
    let report = rank_jump(&m, &rv(&[2, 3, 3])).unwrap();
    assert_eq!(report.classes.len(), 1);
    assert_eq!(report.classes[0].vertex_faces, vec![vec![3, 8]]);
    assert_eq!(report.j, Int::zero());
}

#[test]
fn two_lines_jumps() {
    let a = two_lines();
    check_jumps(&a, &[(&[2, 2, 4, 1], 2), (&[3, 3, 6, 2], 2)]);
    let m = MonoidModule::semigroup(&a).unwrap();
    let report = rank_jump(&m, &rv(&[1, 1, 2, 0])).unwrap();
    let class_of = |v: &[i64]| {
        report.classes.iter().find(|c| c.pairs.iter().any(|(cols, b)| cols.is_empty() && b == &iv(v)))
    };
    // Two codim-3 lines of volume 1 meeting in the empty face:
    // 2 + 2 + (3 - 4 + 1 - 3 - 3 + 1) = 2.
    let line_class = class_of(&[1, 1, 2, 0]).unwrap();
    assert_eq!(line_class.vertex_faces, vec![vec![0], vec![7]]);
    assert_eq!(line_class.j_class, Int::from(2));
    // The other coset of Z[a1] lies in the coset x - y odd of the facet w = 0.
    let facet_class = report.classes.iter().find(|c| c.class_id != line_class.class_id).unwrap();
    assert!(facet_class.vertex_faces.contains(&vec![0, 1, 2, 3, 4]));
    assert_eq!(facet_class.j_class, Int::zero());
}

/// `F = [a1 a2 a3]` has codim 2 and volume 4 against `ZF = {x ≡ y mod 2}`,
/// `G = [a3]` has codim 3 and volume 1.
#[test]
fn hidden_plane_jumps() {
    let a = hidden_plane();
    let m = MonoidModule::semigroup(&a).unwrap();
    let f = m.faces().face_by_columns(&[0, 1, 2]).unwrap();
    assert_eq!((f.codim, f.volume.clone()), (2, Int::from(4)));
    check_jumps(&a, &[(&[1, 1, 0, 0], 6), (&[1, 3, 0, 0], 6), (&[2, 1, 0, 0], 4), (&[3, 1, 0, 0], 4)]);
}

#[test]
fn closed_forms_on_named_examples() {
    let cases: Vec<(IntMatrix, Vec<i64>)> = vec![
        (hidden_line(), vec![1, 0, 0]),
        (hidden_line(), vec![1, -2, 0]),
        (hidden_plane(), vec![1, 1, 0, 0]),
        (two_lines(), vec![1, 1, 2, 0]),
        (two_lines(), vec![3, 3, 6, 2]),
        (plane_and_line(), vec![1, 1, 0, 0]),
        (plane_and_line(), vec![3, 1, 0, 0]),
        (four_lines(), vec![1, 1, 0]),
        (four_lines(), vec![2, 2, 1]),
        (twisted_quartic(), vec![1, 2]),
    ];
    for (a, beta) in cases {
        let m = MonoidModule::semigroup(&a).unwrap();
        let l = ranking_lattices(&m, &rv(&beta));
        let engine = rank_jump(&m, &rv(&beta)).unwrap().j;
        let two = two_component_closed_form(m.faces(), &l).expect("at most two vertices per class");
        assert_eq!(engine, two, "beta = {beta:?}");
        if let Some(simple) = simple_jump_closed_form(m.faces(), &l) {
            assert_eq!(engine, simple, "beta = {beta:?}");
        }
    }
}

#[test]
fn closed_forms_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut applicable, mut two_vertex) = (0, 0);
    let mut tries = 0;
    while applicable < 120 {
        tries += 1;
        assert!(tries < 20_000, "too few applicable instances");
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=8);
        let a = random_matrix(&mut rng, d, n, 4);
        let m = MonoidModule::semigroup(&a).unwrap();
        let beta = random_parameter(&mut rng, &m, -1, 3);
        let l = ranking_lattices(&m, &beta);
        if l.is_empty() {
            continue;
        }
        let Some(closed) = two_component_closed_form(m.faces(), &l) else {
            continue;
        };
        let engine = rank_jump(&m, &beta).unwrap_or_else(|e| panic!("A = {a:?}, beta = {beta:?}: {e}")).j;
        assert_eq!(engine, closed, "A = {a:?}, beta = {beta:?}");
        if let Some(simple) = simple_jump_closed_form(m.faces(), &l) {
            assert_eq!(engine, simple);
        } else {
            two_vertex += 1;
        }
        applicable += 1;
    }
    assert!(two_vertex >= 10, "only {two_vertex} instances exercised two vertices");
}

use rand::Rng;

#[test]
fn hypersurfaces_have_no_jumps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nonempty = 0;
    for _ in 0..60 {
        let d = rng.gen_range(2..=3);
        let a = random_matrix(&mut rng, d, d + 1, 5);
        let m = MonoidModule::semigroup(&a).unwrap();
        for _ in 0..3 {
            let beta = random_parameter(&mut rng, &m, -2, 4);
            if !ranking_lattices(&m, &beta).is_empty() {
                nonempty += 1;
            }
            assert_eq!(rank_jump(&m, &beta).unwrap_or_else(|e| panic!("A = {a:?}, beta = {beta:?}: {e}")).j, Int::zero(), "A = {a:?}, beta = {beta:?}");
        }
    }
    assert!(nonempty > 20);
}

#[test]
fn structural_properties_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut pages = 0;
    for _ in 0..150 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=8);
        let a = random_matrix(&mut rng, d, n, 4);
        let m = MonoidModule::semigroup(&a).unwrap();
        let beta = random_parameter(&mut rng, &m, -1, 3);
        let l = ranking_lattices(&m, &beta);
        for f in l.face_complex.iter().map(|&i| &m.faces().faces()[i]) {
            let count = l.pairs.iter().filter(|p| m.faces().faces()[p.face].columns == f.columns).count();
            let LatticeIndex::Finite(idx) = lattice_index(&f.saturated_lattice, &f.span_lattice).unwrap() else {
                panic!("infinite index");
            };
            assert!(Int::from(count) <= idx);
        }
        let report = rank_jump(&m, &beta).unwrap_or_else(|e| panic!("A = {a:?}, beta = {beta:?}: {e}"));
        assert!(!report.j.is_negative());
        let engine = RankEngine::new(m.faces(), &l);
        for (c, class) in report.classes.iter().enumerate() {
            pages += 1;
            assert!(class.chi[0].is_zero());
            let alternating: Int = class
                .first_page
                .iter()
                .enumerate()
                .flat_map(|(p, row)| row.iter().enumerate().map(move |(q, r)| if (p + q) % 2 == 0 { r.clone() } else { -r }))
                .sum();
            assert!(alternating.is_zero());
            let rank_h0 = engine.rank_h0(&l.classes[c]).unwrap();
            assert_eq!(rank_h0, class.chi[1]);
        }
    }
    assert!(pages > 50);
}

/// Parameters with equal nonempty signatures, reached by moving along faces.
#[test]
fn jump_constant_on_slabs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut compared = 0;
    let mut tries = 0;
    while compared < 40 {
        tries += 1;
        assert!(tries < 2000, "only {compared} signature-equal pairs");
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=7);
        let a = random_matrix(&mut rng, d, n, 4);
        let m = MonoidModule::semigroup(&a).unwrap();
        let beta = random_parameter(&mut rng, &m, -1, 3);
        let l = ranking_lattices(&m, &beta);
        if l.is_empty() {
            continue;
        }
        let sig = l.signature(m.faces());
        let j = rank_jump(&m, &beta).unwrap_or_else(|e| panic!("A = {a:?}, beta = {beta:?}: {e}")).j;
        for f in m.faces().faces().iter().filter(|f| !f.generators.is_empty()) {
            let g = &f.generators[rng.gen_range(0..f.generators.len())];
            let t = Rat::new(Int::from(rng.gen_range(1..=4)), Int::from(rng.gen_range(1..=2)));
            let beta2: Vec<Rat> = beta.iter().zip(g).map(|(b, x)| b + &t * Rat::from_integer(x.clone())).collect();
            if ranking_lattices(&m, &beta2).signature(m.faces()) == sig {
                compared += 1;
                let j2 = rank_jump(&m, &beta2).unwrap_or_else(|e| panic!("A = {a:?}, beta = {beta2:?}: {e}")).j;
                assert_eq!(j2, j, "A = {a:?}, {beta:?} vs {beta2:?}");
            }
        }
    }
}

/// Coordinates of `Λ^q` of the annihilator of the given columns, from
/// a brute-force rational null space.
fn wedge_rows(a: &IntMatrix, cols: &[usize], q: usize) -> Vec<Vec<Rat>> {
    let d = a.rows();
    let mut rows: Vec<Vec<Rat>> = cols.iter().map(|&i| a.column(i).into_iter().map(Rat::from_integer).collect()).collect();
    let mut perp = Vec::new();
    let mut pivots = Vec::new();
    rref(&mut rows, &mut pivots);
    for free in (0..d).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); d];
        v[free] = Rat::from_integer(Int::from(1));
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        perp.push(v);
    }
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0..1u32 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    };
    subsets(perp.len(), q)
        .into_iter()
        .map(|chosen| {
            subsets(d, q)
                .into_iter()
                .map(|coords| {
                    let mut m: Vec<Vec<Rat>> = chosen.iter().map(|&i| coords.iter().map(|&c| perp[i][c].clone()).collect()).collect();
                    det(&mut m)
                })
                .collect()
        })
        .collect()
}

fn rref(m: &mut [Vec<Rat>], pivots: &mut Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
}

fn det(m: &mut [Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut acc = Rat::from_integer(Int::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            let row = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(&row) {
                *x -= y * &f;
            }
        }
    }
    acc
}

fn rat_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut pivots = Vec::new();
    rref(&mut rows, &mut pivots);
    pivots.len()
}

/// When every face carrying a pair has volume one, each `H_0` is a line and
/// every restriction map is an isomorphism onto its target, so the first-page
/// differential is one matrix with unit scalars.
#[test]
fn image_ranks_match_unit_volume_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    let mut tries = 0;
    while checked < 60 {
        tries += 1;
        assert!(tries < 5000);
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(d + 1..=6);
        let a = random_matrix(&mut rng, d, n, 4);
        let m = MonoidModule::semigroup(&a).unwrap();
        let beta = random_parameter(&mut rng, &m, -1, 3);
        let l = ranking_lattices(&m, &beta);
        let fs = m.faces().faces();
        if l.is_empty() || l.pairs.iter().any(|p| !fs[p.face].columns.is_empty() && fs[p.face].volume != Int::from(1)) {
            continue;
        }
        let engine = RankEngine::new(m.faces(), &l);
        for c in 0..l.classes.len() {
            let page = engine.class_page(c);
            for p in 0..page.cells.len().saturating_sub(1) {
                for q in 0..=d {
                    let width = (0..1u32 << d).filter(|x| x.count_ones() as usize == q).count();
                    let targets: Vec<(usize, usize)> = page.cells[p + 1]
                        .iter()
                        .enumerate()
                        .flat_map(|(t, cell)| cell.pairs.iter().map(move |&k| (t, k)))
                        .collect();
                    let mut rows = Vec::new();
                    for cell in &page.cells[p] {
                        for &k in &cell.pairs {
                            for w in wedge_rows(&a, &fs[cell.face].columns, q) {
                                let mut row = vec![Rat::zero(); targets.len() * width];
                                for (ti, &(t, k2)) in targets.iter().enumerate() {
                                    let target = &page.cells[p + 1][t].vertices;
                                    if !cell.vertices.iter().all(|v| target.contains(v)) || !l.pairs[k2].is_below(&l.pairs[k]) {
                                        continue;
                                    }
                                    let extra = target.iter().position(|v| !cell.vertices.contains(v)).unwrap();
                                    for (j, x) in w.iter().enumerate() {
                                        row[ti * width + j] = if extra % 2 == 0 { x.clone() } else { -x.clone() };
                                    }
                                }
                                rows.push(row);
                            }
                        }
                    }
                    assert_eq!(
                        engine.image_rank(&page, p, q).unwrap(),
                        Int::from(rat_rank(rows)),
                        "A = {a:?}, beta = {beta:?}, p = {p}, q = {q}"
                    );
                }
            }
        }
        checked += 1;
    }
}
