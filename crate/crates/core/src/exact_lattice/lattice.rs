//! Sublattices of `Z^d` in canonical Hermite form, and their affine cosets.

use super::matrix::{Int, IntMatrix, Rat};
use super::normal_form::{hermite_normal_form, integer_kernel, smith_full, solve_integer};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// A sublattice of `Z^ambient_dim`, stored as the nonzero columns of its column HNF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeBasis {
    ambient_dim: usize,
    basis: Vec<Vec<Int>>,
}

/// Group index of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    /// Finite index.
    Finite(Int),
    /// The ranks differ.
    Infinite,
}

impl LatticeBasis {
    /// The integer span of `vectors`.
    pub fn from_generators(ambient_dim: usize, vectors: &[Vec<Int>]) -> Self {
        let m = IntMatrix::from_columns(ambient_dim, vectors);
        let (h, _) = hermite_normal_form(&m);
        let basis = h.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        LatticeBasis { ambient_dim, basis }
    }

    /// The zero lattice.
    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, basis: Vec::new() }
    }

    /// The full lattice `Z^d`.
    pub fn full(ambient_dim: usize) -> Self {
        Self::from_generators(ambient_dim, &IntMatrix::identity(ambient_dim).columns())
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis as the columns of a matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_dim, &self.basis)
    }

    fn pivot(col: &[Int]) -> usize {
        col.iter().position(|x| !x.is_zero()).expect("nonzero basis vector")
    }

    /// Canonical representative of `v + L`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut out = v.to_vec();
        for col in &self.basis {
            let p = Self::pivot(col);
            let q = out[p].div_floor(&col[p]);
            if !q.is_zero() {
                for (o, c) in out.iter_mut().zip(col) {
                    *o -= &q * c;
                }
            }
        }
        out
    }

    /// Canonical representative of `v + L` for a rational vector.
    pub fn reduce_rational(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for col in &self.basis {
            let p = Self::pivot(col);
            let q = (&out[p] / Rat::from_integer(col[p].clone())).floor();
            if !q.is_zero() {
                for (o, c) in out.iter_mut().zip(col) {
                    *o -= &q * Rat::from_integer(c.clone());
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for col in &self.basis {
            let p = Self::pivot(col);
            let (q, r) = rest[p].div_rem(&col[p]);
            if !r.is_zero() {
                return None;
            }
            for (o, c) in rest.iter_mut().zip(col) {
                *o -= &q * c;
            }
            coords.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    /// Whether `v` lies in the lattice.
    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `self` is contained in `other`.
    pub fn is_sublattice_of(&self, other: &LatticeBasis) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// The lattice `self ∩ other`.
    pub fn intersection(&self, other: &LatticeBasis) -> LatticeBasis {
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
        let m = IntMatrix::from_columns(self.ambient_dim, &cols);
        let a = self.matrix();
        let r = self.rank();
        let gens: Vec<Vec<Int>> =
            integer_kernel(&m).into_iter().map(|k| a.mul_vec(&k[..r])).collect();
        LatticeBasis::from_generators(self.ambient_dim, &gens)
    }

    /// The lattice `self + other`.
    pub fn sum(&self, other: &LatticeBasis) -> LatticeBasis {
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        LatticeBasis::from_generators(self.ambient_dim, &cols)
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .basis
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "Z<{}>", cols.join(","))
    }
}

/// The integer span of `vectors` in canonical form.
pub fn lattice_from_generators(ambient_dim: usize, vectors: &[Vec<Int>]) -> LatticeBasis {
    LatticeBasis::from_generators(ambient_dim, vectors)
}

/// `Z^d ∩ Q·L`.
pub fn saturate(l: &LatticeBasis) -> LatticeBasis {
    let d = l.ambient_dim();
    let bt = l.matrix().transpose();
    let k = integer_kernel(&bt);
    let kt = IntMatrix::from_columns(d, &k).transpose();
    LatticeBasis::from_generators(d, &integer_kernel(&kt))
}

/// Coordinates of each basis vector of `sub` in the basis of `sup`, as columns.
fn relative_matrix(sup: &LatticeBasis, sub: &LatticeBasis) -> Result<IntMatrix> {
    if sup.ambient_dim() != sub.ambient_dim() {
        return Err(Error::DimensionMismatch("lattices in different ambient spaces".into()));
    }
    let coords = sub
        .basis()
        .iter()
        .map(|b| sup.coordinates(b).ok_or(Error::NotASublattice))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(sup.rank(), &coords))
}

/// Group index `[sup : sub]`.
pub fn lattice_index(sup: &LatticeBasis, sub: &LatticeBasis) -> Result<LatticeIndex> {
    let m = relative_matrix(sup, sub)?;
    if sup.rank() != sub.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite(m.determinant().abs()))
}

/// One representative of each coset of `sub` in `sup`, in mixed-radix order of
/// the Smith invariants, each reduced canonically modulo `sub`.
pub fn quotient_representatives(sup: &LatticeBasis, sub: &LatticeBasis) -> Result<Vec<Vec<Int>>> {
    let m = relative_matrix(sup, sub)?;
    if sup.rank() != sub.rank() {
        return Err(Error::DimensionMismatch("quotient is infinite".into()));
    }
    let r = sup.rank();
    let smith = smith_full(&m);
    let radices: Vec<Int> = (0..r).map(|i| smith.s.get(i, i).clone()).collect();
    let sup_m = sup.matrix();
    let mut reps = Vec::new();
    let mut digits = vec![Int::zero(); r];
    loop {
        let coords = smith.u_inv.mul_vec(&digits);
        reps.push(sub.reduce(&sup_m.mul_vec(&coords)));
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(reps);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = Int::zero();
        }
    }
}

/// The affine set `basepoint + lattice`, with canonical basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineCoset {
    basepoint: Vec<Int>,
    lattice: LatticeBasis,
}

impl AffineCoset {
    /// Builds the coset and reduces its basepoint.
    pub fn new(basepoint: &[Int], lattice: LatticeBasis) -> Self {
        assert_eq!(basepoint.len(), lattice.ambient_dim(), "basepoint length");
        AffineCoset { basepoint: lattice.reduce(basepoint), lattice }
    }

    /// Canonical basepoint.
    pub fn basepoint(&self) -> &[Int] {
        &self.basepoint
    }

    /// Underlying lattice.
    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    /// Whether `v` lies in the coset.
    pub fn contains(&self, v: &[Int]) -> bool {
        let diff: Vec<Int> = v.iter().zip(&self.basepoint).map(|(a, b)| a - b).collect();
        self.lattice.contains(&diff)
    }

    /// Whether `self ⊆ other` as sets.
    pub fn is_subset_of(&self, other: &AffineCoset) -> bool {
        self.lattice.is_sublattice_of(&other.lattice) && other.contains(&self.basepoint)
    }
}

impl fmt::Display for AffineCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basepoint.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) + {}", b.join(","), self.lattice)
    }
}

/// `c1 ∩ c2`, or `None` when the cosets are disjoint.
pub fn coset_intersection(c1: &AffineCoset, c2: &AffineCoset) -> Option<AffineCoset> {
    let d = c1.lattice.ambient_dim();
    assert_eq!(d, c2.lattice.ambient_dim(), "ambient dimensions differ");
    let mut cols = c1.lattice.basis().to_vec();
    cols.extend(c2.lattice.basis().iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    let m = IntMatrix::from_columns(d, &cols);
    let rhs: Vec<Int> = c2.basepoint.iter().zip(&c1.basepoint).map(|(a, b)| a - b).collect();
    let x = solve_integer(&m, &rhs)?;
    let r = c1.lattice.rank();
    let shift = c1.lattice.matrix().mul_vec(&x[..r]);
    let point: Vec<Int> = c1.basepoint.iter().zip(&shift).map(|(a, b)| a + b).collect();
    Some(AffineCoset::new(&point, c1.lattice.intersection(&c2.lattice)))
}
