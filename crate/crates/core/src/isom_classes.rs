//! The sets `E_τ(β)` and the isomorphism test for systems `M_A(β) ≅ M_A(β')`.

use crate::cone_geometry::ConeFace;
use crate::exact_lattice::{quotient_representatives, Rat};
use crate::ranking::{integral_slice, rat_string};
use crate::semigroup_modules::MonoidModule;
use crate::{Error, Result};
use serde_json::{json, Value};

/// `E_τ(β)` for every face `τ`, each element a canonical rational
/// representative of a coset `λ + Zτ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomSignature {
    /// The parameter.
    pub beta: Vec<Rat>,
    /// `(columns of τ, sorted representatives of E_τ(β))`, in face order.
    pub per_face: Vec<(Vec<usize>, Vec<Vec<Rat>>)>,
}

impl IsomSignature {
    /// JSON keyed by face columns joined with commas (`""` for the empty face).
    pub fn to_json(&self) -> Value {
        let faces: serde_json::Map<String, Value> = self
            .per_face
            .iter()
            .map(|(cols, set)| {
                let key = cols.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                let reps: Vec<Vec<String>> = set.iter().map(|v| v.iter().map(rat_string).collect()).collect();
                (key, json!(reps))
            })
            .collect();
        json!({
            "beta": self.beta.iter().map(rat_string).collect::<Vec<_>>(),
            "faces": faces,
        })
    }
}

/// Outcome of [`systems_isomorphic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomVerdict {
    /// Whether `E_τ(β) = E_τ(β')` for every face.
    pub isomorphic: bool,
    /// Columns of the first face where the sets differ.
    pub witness_face: Option<Vec<usize>>,
}

fn require_semigroup(m: &MonoidModule) -> Result<()> {
    if m.is_semigroup() {
        Ok(())
    } else {
        Err(Error::NotAMonoid("isomorphism classes are defined for NA only".into()))
    }
}

/// `{λ ∈ Qτ : β − λ ∈ NA + Zτ} / Zτ`, as sorted canonical representatives.
pub fn e_tau(m: &MonoidModule, beta: &[Rat], tau: &ConeFace) -> Result<Vec<Vec<Rat>>> {
    require_semigroup(m)?;
    let Some(slice) = integral_slice(beta, tau) else {
        return Ok(Vec::new());
    };
    let reps = quotient_representatives(&tau.saturated_lattice, &tau.span_lattice)?;
    let mut out: Vec<Vec<Rat>> = reps
        .iter()
        .map(|c| slice.basepoint().iter().zip(c).map(|(a, b)| a + b).collect::<Vec<_>>())
        .filter(|b| m.contains_mod_face(tau, b))
        .map(|b| {
            let lambda: Vec<Rat> = beta.iter().zip(&b).map(|(x, y)| x - Rat::from_integer(y.clone())).collect();
            tau.span_lattice.reduce_rational(&lambda)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `E_τ(β)` for all faces of `A`.
pub fn isom_signature(m: &MonoidModule, beta: &[Rat]) -> Result<IsomSignature> {
    let per_face = m
        .faces()
        .faces()
        .iter()
        .map(|f| Ok((f.columns.clone(), e_tau(m, beta, f)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IsomSignature { beta: beta.to_vec(), per_face })
}

/// Whether `E_τ(β) = E_τ(β')` for every face, with a distinguishing face when not.
pub fn systems_isomorphic(m: &MonoidModule, beta: &[Rat], beta2: &[Rat]) -> Result<IsomVerdict> {
    require_semigroup(m)?;
    if beta.len() != beta2.len() || beta.len() != m.faces().dim() {
        return Err(Error::DimensionMismatch("parameters of different lengths".into()));
    }
    if beta.iter().zip(beta2).any(|(x, y)| !(x - y).is_integer()) {
        let full = m.faces().full_face().columns.clone();
        return Ok(IsomVerdict { isomorphic: false, witness_face: Some(full) });
    }
    for f in m.faces().faces() {
        if e_tau(m, beta, f)? != e_tau(m, beta2, f)? {
            return Ok(IsomVerdict { isomorphic: false, witness_face: Some(f.columns.clone()) });
        }
    }
    Ok(IsomVerdict { isomorphic: true, witness_face: None })
}
