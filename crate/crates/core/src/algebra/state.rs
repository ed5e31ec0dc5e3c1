//! States with exact rational values.

use super::{EffectAlgebra, FiniteAlgebra};
use crate::budget::Budget;
use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::HashMap;

pub type Q = Ratio<i64>;

/// A state stored by its value on every element.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    values: Vec<Q>,
}

impl State {
    /// Extends values given on the atoms (in [`FiniteAlgebra::atoms`] order)
    /// additively, then validates the result.
    pub fn from_atom_values(alg: &FiniteAlgebra, atom_values: &[Q]) -> Result<Self> {
        let atoms = alg.atoms();
        if atoms.len() != atom_values.len() {
            return Err(Error::InvalidState(format!(
                "{} values for {} atoms",
                atom_values.len(),
                atoms.len()
            )));
        }
        let values = match alg.group_unit() {
            Some(_) => alg
                .elements()
                .map(|x| {
                    let coords = alg.embed(x).expect("embeddable carrier");
                    coords
                        .iter()
                        .zip(atom_values)
                        .map(|(&c, v)| v * c)
                        .fold(Q::zero(), |s, v| s + v)
                })
                .collect(),
            None => {
                let mut memo: HashMap<usize, Q> = HashMap::new();
                memo.insert(alg.zero(), Q::zero());
                for (&a, v) in atoms.iter().zip(atom_values) {
                    memo.insert(a, *v);
                }
                alg.elements()
                    .map(|x| decompose(alg, x, &atoms, &mut memo))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Self::from_values(alg, values)
    }

    /// Takes a full value table and validates it.
    pub fn from_values(alg: &FiniteAlgebra, values: Vec<Q>) -> Result<Self> {
        if values.len() != alg.size() {
            return Err(Error::InvalidState(format!(
                "{} values for {} elements",
                values.len(),
                alg.size()
            )));
        }
        let s = State { values };
        s.validate(alg, &Budget::from_env())?;
        Ok(s)
    }

    /// Equal weight on every coordinate of a product of chains or Boolean algebras.
    pub fn coordinate_average(alg: &FiniteAlgebra) -> Result<Self> {
        let unit = alg
            .group_unit()
            .ok_or_else(|| Error::InvalidState(format!("no coordinates on {}", alg.kind())))?;
        let d = unit.len() as i64;
        let vals: Vec<Q> = unit.iter().map(|&u| Q::new(1, u * d)).collect();
        Self::from_atom_values(alg, &vals)
    }

    pub fn value(&self, a: usize) -> Q {
        self.values[a]
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// `s(a) = 0` only for `a = 0`.
    pub fn is_faithful(&self, alg: &FiniteAlgebra) -> bool {
        alg.elements()
            .all(|a| a == alg.zero() || !self.values[a].is_zero())
    }

    fn validate(&self, alg: &FiniteAlgebra, budget: &Budget) -> Result<()> {
        if !self.values[alg.one()].is_one() {
            return Err(Error::InvalidState(format!("s(1) = {}", self.values[alg.one()])));
        }
        if let Some(a) = alg
            .elements()
            .find(|&a| self.values[a] < Q::zero() || self.values[a] > Q::one())
        {
            return Err(Error::InvalidState(format!(
                "s({}) = {} outside [0, 1]",
                alg.label(a),
                self.values[a]
            )));
        }
        let additive = |a: usize, b: usize| -> Result<()> {
            if let Some(c) = alg.raw_sum(a, b) {
                if self.values[c] != self.values[a] + self.values[b] {
                    return Err(Error::InvalidState(format!(
                        "s({}) ≠ s({}) + s({})",
                        alg.label(c),
                        alg.label(a),
                        alg.label(b)
                    )));
                }
            }
            Ok(())
        };
        let n = alg.size() as u64;
        if budget.allows(n * n, alg.size()) {
            for a in alg.elements() {
                for b in alg.elements() {
                    additive(a, b)?;
                }
            }
        } else {
            let mut rng = budget.rng(0x57);
            for _ in 0..budget.samples {
                let a = rng.random_range(0..alg.size());
                let x = rng.random_range(0..alg.size());
                let b = alg.try_ortho(a).and_then(|o| alg.meet(x, o)).unwrap_or(x);
                additive(a, b)?;
            }
        }
        Ok(())
    }
}

fn decompose(
    alg: &FiniteAlgebra,
    x: usize,
    atoms: &[usize],
    memo: &mut HashMap<usize, Q>,
) -> Result<Q> {
    if let Some(v) = memo.get(&x) {
        return Ok(*v);
    }
    let (atom, rest) = atoms
        .iter()
        .find_map(|&t| alg.ominus(&x, &t).map(|r| (t, r)))
        .ok_or_else(|| Error::InvalidState(format!("{} has no atom below it", alg.label(x))))?;
    let v = decompose(alg, rest, atoms, memo)? + memo[&atom];
    memo.insert(x, v);
    Ok(v)
}
