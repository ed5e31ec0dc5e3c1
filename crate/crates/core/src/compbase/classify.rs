use crate::algebra::{EffectAlgebra, FiniteAlgebra};
use crate::error::{Error, Result};

/// Classification of an endomorphism given as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapClass {
    /// Carries the witness pair.
    NotAdditive(usize, usize),
    /// Additive, but some `a ≤ J(1)` is moved; carries the focus.
    NotRetraction(usize),
    Retraction(usize),
    Compression(usize),
}

impl MapClass {
    pub fn focus(&self) -> Option<usize> {
        match *self {
            MapClass::NotAdditive(..) => None,
            MapClass::NotRetraction(p) | MapClass::Retraction(p) | MapClass::Compression(p) => Some(p),
        }
    }
}

pub fn classify_map(alg: &FiniteAlgebra, j: &[usize]) -> Result<MapClass> {
    if j.len() != alg.size() {
        return Err(Error::DomainMismatch(format!(
            "map has {} entries, carrier has {}",
            j.len(),
            alg.size()
        )));
    }
    if let Some(&x) = j.iter().find(|&&x| x >= alg.size()) {
        return Err(Error::DomainMismatch(format!("map sends into #{x}")));
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if let Some(s) = alg.raw_sum(a, b) {
                if alg.raw_sum(j[a], j[b]) != Some(j[s]) {
                    return Ok(MapClass::NotAdditive(a, b));
                }
            }
        }
    }
    let p = j[alg.one()];
    if alg.elements().any(|a| alg.leq(&a, &p) && j[a] != a) {
        return Ok(MapClass::NotRetraction(p));
    }
    let po = alg.ortho(&p);
    let compression = alg
        .elements()
        .all(|a| (j[a] == alg.zero()) == alg.leq(&a, &po));
    Ok(if compression {
        MapClass::Compression(p)
    } else {
        MapClass::Retraction(p)
    })
}
