use super::CompressionBase;
use crate::algebra::{is_principal, sharp_elements, EffectAlgebra, FiniteAlgebra};
use crate::comparability;
use crate::error::{Error, Result};
use std::sync::Arc;

const NONE: u32 = u32::MAX;
const COMPAT_MATRIX_LIMIT: usize = 512;
const BRUTE_CENTER_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
enum Maps {
    /// `J_p(a) = p ∧ a`.
    Central,
    /// One table per projection slot.
    Tables(Vec<Vec<u32>>),
    Product(Arc<FiniteBase>, Arc<FiniteBase>),
    /// The interval `[0, q]` of a parent base.
    Restricted(Arc<FiniteBase>),
}

/// A compression base on a finite carrier.
#[derive(Debug, Clone)]
pub struct FiniteBase {
    alg: Arc<FiniteAlgebra>,
    projections: Vec<usize>,
    slot: Vec<u32>,
    maps: Maps,
    compat: Option<Vec<bool>>,
    all_compatible: bool,
    name: String,
}

impl FiniteBase {
    fn assemble(
        alg: Arc<FiniteAlgebra>,
        projections: Vec<usize>,
        maps: Maps,
        all_compatible: bool,
        name: impl Into<String>,
    ) -> Self {
        let mut slot = vec![NONE; alg.size()];
        for (i, &p) in projections.iter().enumerate() {
            slot[p] = i as u32;
        }
        let mut base = FiniteBase {
            alg,
            projections,
            slot,
            maps,
            compat: None,
            all_compatible,
            name: name.into(),
        };
        let k = base.projections.len();
        if k <= COMPAT_MATRIX_LIMIT {
            let mut m = vec![false; k * k];
            for i in 0..k {
                for j in 0..k {
                    m[i * k + j] = base.in_c(base.projections[j], base.projections[i]);
                }
            }
            base.all_compatible = m.iter().all(|&x| x);
            base.compat = Some(m);
        }
        base
    }

    /// A base given by explicit map tables, one per projection.
    pub fn from_tables(
        alg: Arc<FiniteAlgebra>,
        projections: Vec<usize>,
        tables: Vec<Vec<usize>>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if projections.len() != tables.len() {
            return Err(Error::DomainMismatch(format!(
                "{} projections but {} maps",
                projections.len(),
                tables.len()
            )));
        }
        for (&p, t) in projections.iter().zip(&tables) {
            alg.check(p)?;
            if t.len() != alg.size() {
                return Err(Error::DomainMismatch(format!(
                    "map for {} has {} entries, carrier has {}",
                    alg.label(p),
                    t.len(),
                    alg.size()
                )));
            }
            if let Some(&x) = t.iter().find(|&&x| x >= alg.size()) {
                return Err(Error::DomainMismatch(format!(
                    "map for {} sends into #{x}",
                    alg.label(p)
                )));
            }
        }
        let mut seen = vec![false; alg.size()];
        for &p in &projections {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::DomainMismatch(format!("projection {} listed twice", alg.label(p))));
            }
        }
        let tables = tables
            .into_iter()
            .map(|t| t.into_iter().map(|x| x as u32).collect())
            .collect();
        Ok(Self::assemble(alg, projections, Maps::Tables(tables), false, name))
    }

    /// `P = {0, 1}` with `J_0 = 0` and `J_1 = id`.
    pub fn trivial(alg: Arc<FiniteAlgebra>) -> Self {
        let n = alg.size();
        let zero = vec![alg.zero() as u32; n];
        let id = (0..n as u32).collect();
        let projections = if alg.zero() == alg.one() {
            vec![alg.zero()]
        } else {
            vec![alg.zero(), alg.one()]
        };
        let tables = if projections.len() == 1 { vec![zero] } else { vec![zero, id] };
        Self::assemble(alg, projections, Maps::Tables(tables), true, "trivial")
    }

    /// The central base `(U_p)_{p∈Γ(E)}` with `U_p(a) = p ∧ a`.
    pub fn central(alg: Arc<FiniteAlgebra>) -> Self {
        let center = center(&alg);
        Self::assemble(alg, center, Maps::Central, true, "central")
    }

    /// Componentwise base on a product algebra.
    pub fn product(left: Arc<FiniteBase>, right: Arc<FiniteBase>) -> Result<Self> {
        let alg = Arc::new(FiniteAlgebra::product(left.alg.clone(), right.alg.clone())?);
        let rs = right.alg.size();
        let projections = left
            .projections
            .iter()
            .flat_map(|&p| right.projections.iter().map(move |&q| p * rs + q))
            .collect();
        let all = left.all_compatible && right.all_compatible;
        let name = format!("{} × {}", left.name, right.name);
        Ok(Self::assemble(alg, projections, Maps::Product(left, right), all, name))
    }

    /// The inherited base on `[0, q]`.
    pub fn restrict(parent: Arc<FiniteBase>, q: usize) -> Result<Self> {
        if !parent.is_proj(q) {
            return Err(Error::InvalidParameter(format!(
                "{} is not a projection",
                parent.alg.label(q)
            )));
        }
        let alg = Arc::new(FiniteAlgebra::interval(parent.alg.clone(), q)?);
        let projections = parent
            .projections
            .iter()
            .filter_map(|&p| alg.local_index(p))
            .collect();
        let all = parent.all_compatible;
        let name = format!("{} on [0, {}]", parent.name, parent.alg.label(q));
        Ok(Self::assemble(alg, projections, Maps::Restricted(parent), all, name))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn projections(&self) -> &[usize] {
        &self.projections
    }

    pub fn slot_of(&self, p: usize) -> Option<usize> {
        let s = *self.slot.get(p)?;
        (s != NONE).then_some(s as usize)
    }

    pub fn is_proj(&self, p: usize) -> bool {
        self.slot_of(p).is_some()
    }

    /// Factor bases of a product base.
    pub fn factors(&self) -> Option<(&Arc<FiniteBase>, &Arc<FiniteBase>)> {
        match &self.maps {
            Maps::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// `J_p(a)` by carrier labels.
    pub fn apply(&self, p: usize, a: usize) -> usize {
        let s = self
            .slot_of(p)
            .unwrap_or_else(|| panic!("{} is not a projection", self.alg.label(p)));
        match &self.maps {
            Maps::Central => self
                .alg
                .meet(p, a)
                .expect("central projections have meets with every element"),
            Maps::Tables(t) => t[s][a] as usize,
            Maps::Product(l, r) => {
                let (p1, p2) = self.alg.unpair(p);
                let (a1, a2) = self.alg.unpair(a);
                self.alg.pair(l.apply(p1, a1), r.apply(p2, a2))
            }
            Maps::Restricted(parent) => {
                let x = parent.apply(self.alg.parent_index(p), self.alg.parent_index(a));
                self.alg
                    .local_index(x)
                    .expect("compression stays below its focus")
            }
        }
    }

    /// Every map as an explicit table.
    pub fn tables(&self) -> Vec<Vec<usize>> {
        self.projections
            .iter()
            .map(|&p| self.alg.elements().map(|a| self.apply(p, a)).collect())
            .collect()
    }

    /// `a ∈ C(p)`.
    pub fn in_c(&self, a: usize, p: usize) -> bool {
        let po = self.alg.ortho(&p);
        self.alg.raw_sum(self.apply(p, a), self.apply(po, a)) == Some(a)
    }

    /// `q ∈ C(p)` for projections, from the cached matrix when available.
    pub fn projections_compatible(&self, p: usize, q: usize) -> bool {
        let k = self.projections.len();
        match (&self.compat, self.slot_of(p), self.slot_of(q)) {
            (Some(m), Some(i), Some(j)) => m[i * k + j],
            _ if self.all_compatible => true,
            _ => self.in_c(q, p),
        }
    }

    pub fn all_compatible(&self) -> bool {
        self.all_compatible
    }

    /// `C(p)`.
    pub fn commutant(&self, p: usize) -> Vec<usize> {
        self.alg.elements().filter(|&a| self.in_c(a, p)).collect()
    }

    /// `PC(a) = {p ∈ P : a ∈ C(p)}`.
    pub fn pc(&self, a: usize) -> Vec<usize> {
        self.projections
            .iter()
            .copied()
            .filter(|&p| self.in_c(a, p))
            .collect()
    }

    /// `PC(S)` for a set of elements.
    pub fn pc_set(&self, s: &[usize]) -> Vec<usize> {
        self.projections
            .iter()
            .copied()
            .filter(|&p| s.iter().all(|&a| self.in_c(a, p)))
            .collect()
    }

    /// `PC(PC(S) ∪ S)`.
    pub fn bicommutant_set(&self, s: &[usize]) -> Vec<usize> {
        let first = self.pc_set(s);
        if self.all_compatible {
            return first;
        }
        first
            .iter()
            .copied()
            .filter(|&p| first.iter().all(|&q| self.projections_compatible(p, q)))
            .collect()
    }

    /// Running-minimum search for `a°`, verified against every candidate.
    pub fn cover(&self, a: usize) -> Result<usize> {
        let above: Vec<usize> = self
            .projections
            .iter()
            .copied()
            .filter(|q| self.alg.leq(&a, q))
            .collect();
        let mut best = *above
            .first()
            .ok_or_else(|| Error::NoCover(self.alg.label(a)))?;
        for &q in &above[1..] {
            if self.alg.leq(&q, &best) {
                best = q;
            }
        }
        if above.iter().all(|q| self.alg.leq(&best, q)) {
            Ok(best)
        } else {
            Err(Error::NoCover(self.alg.label(a)))
        }
    }
}

/// The center `Γ(E)`: sharp principal `p` with `p'` principal and
/// `a = (a ∧ p) ⊕ (a ∧ p')` for every `a`.
pub fn center(alg: &FiniteAlgebra) -> Vec<usize> {
    if alg.size() > BRUTE_CENTER_LIMIT {
        if let Some(c) = structural_center(alg) {
            return c;
        }
    }
    sharp_elements(alg)
        .into_iter()
        .filter(|&p| {
            let po = alg.ortho(&p);
            is_principal(alg, p)
                && is_principal(alg, po)
                && alg.elements().all(|a| {
                    match (alg.meet(a, p), alg.meet(a, po)) {
                        (Some(x), Some(y)) => alg.raw_sum(x, y) == Some(a),
                        _ => false,
                    }
                })
        })
        .collect()
}

fn structural_center(alg: &FiniteAlgebra) -> Option<Vec<usize>> {
    if alg.boolean_atoms().is_some() {
        return Some(alg.elements().collect());
    }
    if let Some((k, d)) = alg.mv_params() {
        let out = (0..1usize << d)
            .map(|mask| {
                let digits: Vec<u32> = (0..d as usize)
                    .map(|i| if mask >> (d as usize - 1 - i) & 1 == 1 { k } else { 0 })
                    .collect();
                alg.mv_index(&digits)
            })
            .collect();
        return Some(out);
    }
    if alg.is_product() {
        let (l, r) = alg.parts()?;
        let (cl, cr) = (center(l), center(r));
        return Some(
            cl.iter()
                .flat_map(|&x| cr.iter().map(move |&y| x * r.size() + y))
                .collect(),
        );
    }
    None
}

impl EffectAlgebra for FiniteBase {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.alg.zero()
    }
    fn one(&self) -> usize {
        self.alg.one()
    }
    fn sum(&self, a: &usize, b: &usize) -> Option<usize> {
        self.alg.sum(a, b)
    }
    fn ortho(&self, a: &usize) -> usize {
        self.alg.ortho(a)
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.alg.leq(a, b)
    }
    fn ominus(&self, b: &usize, a: &usize) -> Option<usize> {
        self.alg.ominus(b, a)
    }
    fn same(&self, a: &usize, b: &usize) -> bool {
        a == b
    }
    fn is_archimedean(&self) -> bool {
        self.alg.is_archimedean()
    }
    fn describe(&self, a: &usize) -> String {
        self.alg.label(*a)
    }
}

impl CompressionBase for FiniteBase {
    fn is_projection(&self, p: &usize) -> bool {
        self.is_proj(*p)
    }

    fn compress(&self, p: &usize, a: &usize) -> usize {
        self.apply(*p, *a)
    }

    fn in_commutant(&self, a: &usize, p: &usize) -> bool {
        self.in_c(*a, *p)
    }

    fn projection_cover(&self, a: &usize) -> Result<usize> {
        self.cover(*a)
    }

    fn positive_part(&self, b: &usize, a: &usize) -> Result<usize> {
        comparability::positive_part(self, *b, *a)
    }

    fn commute(&self, e: &usize, f: &usize) -> Result<bool> {
        comparability::commute(self, *e, *f)
    }

    fn bicommutant(&self, a: &usize) -> Result<Vec<usize>> {
        Ok(self.bicommutant_set(&[*a]))
    }

    fn has_b_property(&self, a: &usize) -> Result<bool> {
        Ok(comparability::has_b_property(self, *a))
    }

    fn p_le_set(&self, e: &usize, f: &usize) -> Result<Vec<usize>> {
        comparability::p_le_set(self, *e, *f)
    }
}
