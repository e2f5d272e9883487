//! Ranking lattices: the cosets `b + ZF` of degrees missing from `M + ZF`
//! along the translates `β + CF`.

use crate::cone_geometry::{ConeFace, FaceLattice};
use crate::exact_lattice::{
    coset_intersection, quotient_representatives, smith_full, AffineCoset, Int, IntMatrix, Rat,
};
use crate::semigroup_modules::MonoidModule;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// A face index together with one `ZF`-orbit `b + ZF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankingPair {
    /// Index into [`FaceLattice::faces`].
    pub face: usize,
    /// The orbit, over `ZF`.
    pub coset: AffineCoset,
}

impl RankingPair {
    /// `self ⊴ other`: coset containment.
    pub fn is_below(&self, other: &RankingPair) -> bool {
        self.coset.is_subset_of(&other.coset)
    }

    /// Whether the two orbits meet.
    pub fn meets(&self, other: &RankingPair) -> bool {
        coset_intersection(&self.coset, &other.coset).is_some()
    }
}

/// All ranking pairs at a parameter, with their equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingLattices {
    /// The parameter.
    pub beta: Vec<Rat>,
    /// Pairs sorted by face index, then coset.
    pub pairs: Vec<RankingPair>,
    /// Classes of pairs under the equivalence generated by meeting orbits;
    /// each class is a sorted list of pair indices, classes ordered by first element.
    pub classes: Vec<Vec<usize>>,
    /// Indices of the faces carrying at least one pair.
    pub face_complex: Vec<usize>,
}

/// `Z^d ∩ (β + QF)` as a coset of the saturation `L_F`, or `None` when empty.
pub fn integral_slice(beta: &[Rat], f: &ConeFace) -> Option<AffineCoset> {
    let d = beta.len();
    let m = IntMatrix::from_columns(d, &f.generators);
    let smith = smith_full(&m);
    let r = (0..d.min(m.cols())).filter(|&i| !smith.s.get(i, i).is_zero()).count();
    let mut tail = vec![Int::zero(); d];
    for (i, t) in tail.iter_mut().enumerate().skip(r) {
        let x: Rat = smith.u.row(i).iter().zip(beta).map(|(u, b)| b * Rat::from_integer(u.clone())).sum();
        if !x.is_integer() {
            return None;
        }
        *t = x.to_integer();
    }
    let b0 = smith.u_inv.mul_vec(&tail);
    Some(AffineCoset::new(&b0, f.saturated_lattice.clone()))
}

/// The orbits `b + ZF` making up `Z^d ∩ (β + CF) \ (M + ZF)`, in the
/// mixed-radix order of the quotient `L_F / ZF`.
pub fn orbit_representatives(m: &MonoidModule, beta: &[Rat], f: &ConeFace) -> Vec<AffineCoset> {
    let Some(slice) = integral_slice(beta, f) else {
        return Vec::new();
    };
    let reps = quotient_representatives(&f.saturated_lattice, &f.span_lattice)
        .expect("ZF has finite index in its saturation");
    reps.iter()
        .map(|c| slice.basepoint().iter().zip(c).map(|(a, b)| a + b).collect::<Vec<Int>>())
        .filter(|v| !m.contains_mod_face(f, v))
        .map(|v| AffineCoset::new(&v, f.span_lattice.clone()))
        .collect()
}

/// Maximal elements of `pairs` under coset containment, in input order.
pub fn max_pairs(pairs: &[RankingPair]) -> Vec<RankingPair> {
    max_indices(pairs, &(0..pairs.len()).collect::<Vec<_>>()).into_iter().map(|i| pairs[i].clone()).collect()
}

/// Maximal elements of `subset` (indices into `pairs`), preserving order.
pub(crate) fn max_indices(pairs: &[RankingPair], subset: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &i in subset {
        let dominated = subset.iter().any(|&j| {
            j != i && pairs[i].is_below(&pairs[j]) && (!pairs[j].is_below(&pairs[i]) || j < i)
        });
        if !dominated {
            out.push(i);
        }
    }
    out
}

/// Connected components of `subset` under the relation "orbits meet".
pub(crate) fn components(subset: &[usize], meets: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let n = subset.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if meets(subset[a], subset[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let r = find(&mut parent, a);
        match root_slot[r] {
            Some(k) => groups[k].push(subset[a]),
            None => {
                root_slot[r] = Some(groups.len());
                groups.push(vec![subset[a]]);
            }
        }
    }
    groups
}

/// Builds the ranking lattices of `m` at `beta`.
pub fn ranking_lattices(m: &MonoidModule, beta: &[Rat]) -> RankingLattices {
    let faces = m.faces();
    let mut pairs: Vec<RankingPair> = Vec::new();
    let mut face_complex = Vec::new();
    for (i, f) in faces.faces().iter().enumerate() {
        let reps = orbit_representatives(m, beta, f);
        if !reps.is_empty() {
            face_complex.push(i);
        }
        pairs.extend(reps.into_iter().map(|coset| RankingPair { face: i, coset }));
    }
    pairs.sort();
    let all: Vec<usize> = (0..pairs.len()).collect();
    let classes = components(&all, |a, b| pairs[a].meets(&pairs[b]));
    RankingLattices { beta: beta.to_vec(), pairs, classes, face_complex }
}

impl RankingLattices {
    /// Whether there are no pairs at all.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs of one class.
    pub fn class_pairs(&self, class: usize) -> Vec<RankingPair> {
        self.classes[class].iter().map(|&i| self.pairs[i].clone()).collect()
    }

    /// Whether every subface of a face in the complex is also in it.
    pub fn is_subface_closed(&self, faces: &FaceLattice) -> bool {
        self.face_complex.iter().all(|&i| {
            faces.faces().iter().enumerate().all(|(j, g)| {
                !g.is_subface_of(&faces.faces()[i]) || self.face_complex.contains(&j)
            })
        })
    }

    /// Canonical description of the union of all orbits: sorted
    /// `(face columns, basepoint, lattice basis)` triples of the orbits that
    /// are maximal under inclusion.
    pub fn signature(&self, faces: &FaceLattice) -> Value {
        let all: Vec<usize> = (0..self.pairs.len()).collect();
        let mut triples: Vec<(Vec<usize>, Vec<Int>, Vec<Vec<Int>>)> = max_indices(&self.pairs, &all)
            .into_iter()
            .map(|i| &self.pairs[i])
            .map(|p| {
                (
                    faces.faces()[p.face].columns.clone(),
                    p.coset.basepoint().to_vec(),
                    p.coset.lattice().basis().to_vec(),
                )
            })
            .collect();
        triples.sort();
        Value::Array(
            triples
                .into_iter()
                .map(|(c, b, l)| {
                    json!([c, ints_json(&b), l.iter().map(|v| ints_json(v)).collect::<Vec<_>>()])
                })
                .collect(),
        )
    }

    /// Hex SHA-256 of the compact signature.
    pub fn signature_hash(&self, faces: &FaceLattice) -> String {
        let digest = Sha256::digest(self.signature(faces).to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Integers as JSON numbers when they fit in `i64`, else as strings.
pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

/// One integer as JSON.
pub fn int_json(x: &Int) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

/// A rational as `"p/q"`, or `"p"` when integral.
pub fn rat_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Whether `β` and `β'` have identical ranking lattices.
pub fn same_ranking_slab(m: &MonoidModule, beta: &[Rat], beta2: &[Rat]) -> bool {
    ranking_lattices(m, beta).signature(m.faces()) == ranking_lattices(m, beta2).signature(m.faces())
}
