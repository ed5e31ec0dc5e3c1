//! Finite effect algebras with dense integer labels.
//!
//! Every carrier is `0..size`. The structured variants compute sums
//! arithmetically, so even large MV products never materialize an `n × n`
//! table.

use super::EffectAlgebra;
use crate::error::{Error, Result};
use num_rational::Ratio;
use serde_json::{json, Value};
use std::sync::Arc;

pub(crate) const NONE: u32 = u32::MAX;

/// Which summand of a horizontal sum an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Zero,
    One,
    Part(Side, usize),
}

#[derive(Debug, Clone)]
enum Repr {
    Table {
        sums: Vec<u32>,
        labels: Option<Vec<String>>,
    },
    Boolean {
        atoms: u32,
    },
    Mv {
        denominator: u32,
        arity: u32,
    },
    Product {
        left: Arc<FiniteAlgebra>,
        right: Arc<FiniteAlgebra>,
    },
    HorizontalSum {
        left: Arc<FiniteAlgebra>,
        right: Arc<FiniteAlgebra>,
        origin: Vec<Origin>,
        left_pos: Vec<u32>,
        right_pos: Vec<u32>,
    },
    Interval {
        parent: Arc<FiniteAlgebra>,
        members: Vec<u32>,
        position: Vec<u32>,
    },
}

#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    repr: Repr,
    size: usize,
    zero: usize,
    one: usize,
    orthos: Vec<u32>,
}

impl FiniteAlgebra {
    /// The Boolean algebra of subsets of `atoms` points; labels are bitmasks.
    pub fn boolean(atoms: u32) -> Result<Self> {
        if atoms == 0 || atoms > 20 {
            return Err(Error::SizeLimit(format!("boolean algebra with {atoms} atoms")));
        }
        let size = 1usize << atoms;
        let mask = (size - 1) as u32;
        Ok(FiniteAlgebra {
            repr: Repr::Boolean { atoms },
            size,
            zero: 0,
            one: size - 1,
            orthos: (0..size as u32).map(|a| !a & mask).collect(),
        })
    }

    /// `arity`-fold product of the chain `{0, 1/k, …, 1}` with `k = denominator`.
    /// Labels are mixed-radix numerals, first coordinate most significant.
    pub fn mv_product(denominator: u32, arity: u32) -> Result<Self> {
        if denominator == 0 || arity == 0 {
            return Err(Error::InvalidParameter(
                "denominator and arity must be positive".into(),
            ));
        }
        let size = (denominator as u64 + 1)
            .checked_pow(arity)
            .filter(|&s| s <= u32::MAX as u64 / 2)
            .ok_or_else(|| Error::SizeLimit(format!("L_{denominator}^{arity}")))? as usize;
        let mut alg = FiniteAlgebra {
            repr: Repr::Mv { denominator, arity },
            size,
            zero: 0,
            one: size - 1,
            orthos: Vec::new(),
        };
        alg.orthos = (0..size)
            .map(|a| {
                let digits: Vec<u32> = alg.mv_digits(a).iter().map(|&d| denominator - d).collect();
                alg.mv_index(&digits) as u32
            })
            .collect();
        Ok(alg)
    }

    pub fn product(left: Arc<FiniteAlgebra>, right: Arc<FiniteAlgebra>) -> Result<Self> {
        let size = left
            .size
            .checked_mul(right.size)
            .filter(|&s| s < NONE as usize)
            .ok_or_else(|| Error::SizeLimit("product carrier".into()))?;
        let rs = right.size;
        let orthos = (0..size)
            .map(|i| (left.orthos[i / rs] as usize * rs + right.orthos[i % rs] as usize) as u32)
            .collect();
        Ok(FiniteAlgebra {
            zero: left.zero * rs + right.zero,
            one: left.one * rs + right.one,
            repr: Repr::Product { left, right },
            size,
            orthos,
        })
    }

    /// 0-1 pasting: the carriers share only their zero and unit.
    pub fn horizontal_sum(left: Arc<FiniteAlgebra>, right: Arc<FiniteAlgebra>) -> Result<Self> {
        let mut origin = vec![Origin::Zero, Origin::One];
        let mut left_pos = vec![NONE; left.size];
        let mut right_pos = vec![NONE; right.size];
        left_pos[left.zero] = 0;
        left_pos[left.one] = 1;
        right_pos[right.zero] = 0;
        right_pos[right.one] = 1;
        for (side, part, pos) in [
            (Side::Left, &left, &mut left_pos),
            (Side::Right, &right, &mut right_pos),
        ] {
            for x in 0..part.size {
                if x != part.zero && x != part.one {
                    pos[x] = origin.len() as u32;
                    origin.push(Origin::Part(side, x));
                }
            }
        }
        let size = origin.len();
        let mut alg = FiniteAlgebra {
            repr: Repr::HorizontalSum {
                left,
                right,
                origin,
                left_pos,
                right_pos,
            },
            size,
            zero: 0,
            one: 1,
            orthos: Vec::new(),
        };
        alg.orthos = (0..size).map(|a| alg.compute_ortho_structural(a)).collect();
        Ok(alg)
    }

    /// The interval `[0, q]` with unit `q` and the inherited partial sum.
    pub fn interval(parent: Arc<FiniteAlgebra>, q: usize) -> Result<Self> {
        parent.check(q)?;
        let members: Vec<u32> = (0..parent.size)
            .filter(|&x| parent.leq(&x, &q))
            .map(|x| x as u32)
            .collect();
        let mut position = vec![NONE; parent.size];
        for (i, &m) in members.iter().enumerate() {
            position[m as usize] = i as u32;
        }
        let zero = position[parent.zero] as usize;
        let one = position[q] as usize;
        let mut alg = FiniteAlgebra {
            size: members.len(),
            repr: Repr::Interval {
                parent: parent.clone(),
                members,
                position,
            },
            zero,
            one,
            orthos: Vec::new(),
        };
        alg.orthos = (0..alg.size).map(|a| alg.compute_ortho_structural(a)).collect();
        Ok(alg)
    }

    /// An explicit partial-sum table. `sums` holds `(a, b, a ⊕ b)` triples,
    /// taken literally; no symmetric closure is added here.
    pub fn table(
        size: usize,
        zero: usize,
        one: usize,
        sums: &[(usize, usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 || size >= 1 << 16 {
            return Err(Error::SizeLimit(format!("table with {size} elements")));
        }
        if zero >= size || one >= size {
            return Err(Error::ElementNotInCarrier(format!("zero {zero} / one {one}")));
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return Err(Error::Document(format!(
                    "{} labels for {size} elements",
                    l.len()
                )));
            }
        }
        let mut table = vec![NONE; size * size];
        for &(a, b, c) in sums {
            if a >= size || b >= size || c >= size {
                return Err(Error::ElementNotInCarrier(format!("triple ({a}, {b}, {c})")));
            }
            let slot = &mut table[a * size + b];
            if *slot != NONE && *slot as usize != c {
                return Err(Error::Document(format!(
                    "conflicting sums for ({a}, {b}): {} and {c}",
                    *slot
                )));
            }
            *slot = c as u32;
        }
        let orthos = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| table[a * size + b] == one as u32)
                    .map_or(NONE, |b| b as u32)
            })
            .collect();
        Ok(FiniteAlgebra {
            repr: Repr::Table { sums: table, labels },
            size,
            zero,
            one,
            orthos,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn check(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::ElementNotInCarrier(format!("#{a} (carrier has {} elements)", self.size)))
        }
    }

    /// `a ⊕ b` with carrier checks.
    pub fn partial_sum(&self, a: usize, b: usize) -> Result<Option<usize>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.raw_sum(a, b))
    }

    pub fn kind(&self) -> &'static str {
        match self.repr {
            Repr::Table { .. } => "table",
            Repr::Boolean { .. } => "boolean",
            Repr::Mv { .. } => "mv_product",
            Repr::Product { .. } => "product",
            Repr::HorizontalSum { .. } => "horizontal_sum",
            Repr::Interval { .. } => "interval",
        }
    }

    /// Summands of a product or horizontal sum.
    pub fn parts(&self) -> Option<(&Arc<FiniteAlgebra>, &Arc<FiniteAlgebra>)> {
        match &self.repr {
            Repr::Product { left, right } | Repr::HorizontalSum { left, right, .. } => {
                Some((left, right))
            }
            _ => None,
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self.repr, Repr::Product { .. })
    }

    pub fn is_horizontal_sum(&self) -> bool {
        matches!(self.repr, Repr::HorizontalSum { .. })
    }

    /// Parameters `(k, d)` of an MV product.
    pub fn mv_params(&self) -> Option<(u32, u32)> {
        match self.repr {
            Repr::Mv { denominator, arity } => Some((denominator, arity)),
            _ => None,
        }
    }

    pub fn boolean_atoms(&self) -> Option<u32> {
        match self.repr {
            Repr::Boolean { atoms } => Some(atoms),
            _ => None,
        }
    }

    pub fn raw_sum(&self, a: usize, b: usize) -> Option<usize> {
        match &self.repr {
            Repr::Table { sums, .. } => {
                let c = sums[a * self.size + b];
                (c != NONE).then_some(c as usize)
            }
            Repr::Boolean { .. } => (a & b == 0).then_some(a | b),
            Repr::Mv { denominator, arity } => {
                let radix = *denominator as usize + 1;
                let (mut x, mut y) = (a, b);
                for _ in 0..*arity {
                    if x % radix + y % radix > *denominator as usize {
                        return None;
                    }
                    x /= radix;
                    y /= radix;
                }
                Some(a + b)
            }
            Repr::Product { left, right } => {
                let rs = right.size;
                let l = left.raw_sum(a / rs, b / rs)?;
                let r = right.raw_sum(a % rs, b % rs)?;
                Some(l * rs + r)
            }
            Repr::HorizontalSum {
                left,
                right,
                origin,
                left_pos,
                right_pos,
            } => match (origin[a], origin[b]) {
                (Origin::Zero, _) => Some(b),
                (_, Origin::Zero) => Some(a),
                (Origin::One, _) | (_, Origin::One) => None,
                (Origin::Part(s, x), Origin::Part(t, y)) if s == t => {
                    let (part, pos) = match s {
                        Side::Left => (left, left_pos),
                        Side::Right => (right, right_pos),
                    };
                    part.raw_sum(x, y).map(|z| pos[z] as usize)
                }
                _ => None,
            },
            Repr::Interval {
                parent,
                members,
                position,
            } => {
                let s = parent.raw_sum(members[a] as usize, members[b] as usize)?;
                let p = position[s];
                (p != NONE).then_some(p as usize)
            }
        }
    }

    /// The orthosupplement, if the table provides a unique one.
    pub fn try_ortho(&self, a: usize) -> Option<usize> {
        let o = self.orthos[a];
        (o != NONE).then_some(o as usize)
    }

    fn compute_ortho_structural(&self, a: usize) -> u32 {
        match &self.repr {
            Repr::HorizontalSum {
                left,
                right,
                origin,
                left_pos,
                right_pos,
            } => match origin[a] {
                Origin::Zero => 1,
                Origin::One => 0,
                Origin::Part(Side::Left, x) => left_pos[left.orthos[x] as usize],
                Origin::Part(Side::Right, x) => right_pos[right.orthos[x] as usize],
            },
            Repr::Interval {
                parent,
                members,
                position,
            } => {
                let q = members[self.one] as usize;
                parent
                    .ominus(&q, &(members[a] as usize))
                    .map_or(NONE, |x| position[x])
            }
            _ => unreachable!("structural orthosupplement for {}", self.kind()),
        }
    }

    // ---- MV coordinates ----

    pub fn mv_digits(&self, a: usize) -> Vec<u32> {
        let Repr::Mv { denominator, arity } = self.repr else {
            panic!("mv_digits on {}", self.kind());
        };
        let radix = denominator as usize + 1;
        let mut out = vec![0u32; arity as usize];
        let mut x = a;
        for slot in out.iter_mut().rev() {
            *slot = (x % radix) as u32;
            x /= radix;
        }
        out
    }

    pub fn mv_index(&self, digits: &[u32]) -> usize {
        let Repr::Mv { denominator, .. } = self.repr else {
            panic!("mv_index on {}", self.kind());
        };
        let radix = denominator as usize + 1;
        digits.iter().fold(0, |acc, &d| acc * radix + d as usize)
    }

    /// Label of the MV element with the given numerators, if in range.
    pub fn mv_element(&self, digits: &[u32]) -> Result<usize> {
        let (k, d) = self
            .mv_params()
            .ok_or_else(|| Error::DomainMismatch(format!("{} is not an MV product", self.kind())))?;
        if digits.len() != d as usize || digits.iter().any(|&x| x > k) {
            return Err(Error::ElementNotInCarrier(format!("{digits:?} in L_{k}^{d}")));
        }
        Ok(self.mv_index(digits))
    }

    pub fn pair(&self, left: usize, right: usize) -> usize {
        let Repr::Product { right: r, .. } = &self.repr else {
            panic!("pair on {}", self.kind());
        };
        left * r.size + right
    }

    pub fn unpair(&self, a: usize) -> (usize, usize) {
        let Repr::Product { right: r, .. } = &self.repr else {
            panic!("unpair on {}", self.kind());
        };
        (a / r.size, a % r.size)
    }

    /// Label of a part element inside a horizontal sum.
    pub fn inject(&self, side: Side, x: usize) -> usize {
        let Repr::HorizontalSum {
            left_pos, right_pos, ..
        } = &self.repr
        else {
            panic!("inject on {}", self.kind());
        };
        match side {
            Side::Left => left_pos[x] as usize,
            Side::Right => right_pos[x] as usize,
        }
    }

    /// Inverse of [`FiniteAlgebra::inject`]; `None` for the shared 0 and 1.
    pub fn origin(&self, a: usize) -> Option<(Side, usize)> {
        let Repr::HorizontalSum { origin, .. } = &self.repr else {
            panic!("origin on {}", self.kind());
        };
        match origin[a] {
            Origin::Part(s, x) => Some((s, x)),
            _ => None,
        }
    }

    /// Parent label of an interval element.
    pub fn parent_index(&self, a: usize) -> usize {
        let Repr::Interval { members, .. } = &self.repr else {
            panic!("parent_index on {}", self.kind());
        };
        members[a] as usize
    }

    pub fn local_index(&self, parent_label: usize) -> Option<usize> {
        let Repr::Interval { position, .. } = &self.repr else {
            panic!("local_index on {}", self.kind());
        };
        let p = position[parent_label];
        (p != NONE).then_some(p as usize)
    }

    pub fn interval_parent(&self) -> Option<&Arc<FiniteAlgebra>> {
        match &self.repr {
            Repr::Interval { parent, .. } => Some(parent),
            _ => None,
        }
    }

    // ---- order structure ----

    /// All `x ≤ a`, in ascending label order for the structured variants.
    pub fn below(&self, a: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Boolean { .. } => {
                let mut out = Vec::new();
                let mut s = a;
                loop {
                    out.push(s);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & a;
                }
                out.reverse();
                out
            }
            Repr::Mv { denominator, .. } => {
                let radix = *denominator as usize + 1;
                let digits = self.mv_digits(a);
                let mut out = vec![0usize];
                for &d in &digits {
                    out = out
                        .iter()
                        .flat_map(|&base| (0..=d as usize).map(move |x| base * radix + x))
                        .collect();
                }
                out
            }
            Repr::Product { left, right } => {
                let (l, r) = (a / right.size, a % right.size);
                let rb = right.below(r);
                left.below(l)
                    .into_iter()
                    .flat_map(|x| rb.iter().map(move |&y| x * right.size + y))
                    .collect()
            }
            _ => (0..self.size).filter(|&x| self.leq(&x, &a)).collect(),
        }
    }

    /// Greatest lower bound, when it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        match &self.repr {
            Repr::Boolean { .. } => Some(a & b),
            Repr::Mv { .. } => {
                let (x, y) = (self.mv_digits(a), self.mv_digits(b));
                let m: Vec<u32> = x.iter().zip(&y).map(|(p, q)| *p.min(q)).collect();
                Some(self.mv_index(&m))
            }
            Repr::Product { left, right } => {
                let rs = right.size;
                Some(left.meet(a / rs, b / rs)? * rs + right.meet(a % rs, b % rs)?)
            }
            Repr::HorizontalSum {
                left,
                right,
                origin,
                left_pos,
                right_pos,
            } => match (origin[a], origin[b]) {
                (Origin::Zero, _) | (_, Origin::Zero) => Some(0),
                (Origin::One, _) => Some(b),
                (_, Origin::One) => Some(a),
                (Origin::Part(s, x), Origin::Part(t, y)) if s == t => {
                    let (part, pos) = match s {
                        Side::Left => (left, left_pos),
                        Side::Right => (right, right_pos),
                    };
                    part.meet(x, y).map(|z| pos[z] as usize)
                }
                _ => Some(0),
            },
            _ => super::relations::meet_brute_force(self, a, b),
        }
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let m = self.meet(self.ortho(&a), self.ortho(&b))?;
        Some(self.ortho(&m))
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<usize> {
        match &self.repr {
            Repr::Boolean { atoms } => (0..*atoms).map(|i| 1usize << i).collect(),
            Repr::Mv { arity, .. } => (0..*arity as usize)
                .map(|i| {
                    let mut d = vec![0u32; *arity as usize];
                    d[i] = 1;
                    self.mv_index(&d)
                })
                .collect(),
            Repr::Product { left, right } => {
                let rs = right.size;
                left.atoms()
                    .into_iter()
                    .map(|x| x * rs + right.zero)
                    .chain(right.atoms().into_iter().map(|y| left.zero * rs + y))
                    .collect()
            }
            Repr::HorizontalSum {
                left,
                right,
                left_pos,
                right_pos,
                ..
            } => left
                .atoms()
                .into_iter()
                .map(|x| left_pos[x] as usize)
                .chain(right.atoms().into_iter().map(|y| right_pos[y] as usize))
                .collect(),
            _ => (0..self.size)
                .filter(|&x| {
                    x != self.zero
                        && (0..self.size).all(|y| y == self.zero || y == x || !self.leq(&y, &x))
                })
                .collect(),
        }
    }

    /// `r·p`: the unique `x` with `n·x = m·p` for `r = m/n`.
    pub fn scale(&self, p: usize, r: Ratio<i64>) -> Option<usize> {
        if *r.numer() < 0 || r > Ratio::from_integer(1) {
            return None;
        }
        let (m, n) = (*r.numer() as u64, *r.denom() as u64);
        match &self.repr {
            Repr::Mv { denominator, .. } => {
                let k = *denominator as u64;
                let digits = self.mv_digits(p);
                let mut out = Vec::with_capacity(digits.len());
                for d in digits {
                    let num = d as u64 * m;
                    if num % n != 0 {
                        return None;
                    }
                    out.push((num / n).min(k) as u32);
                }
                Some(self.mv_index(&out))
            }
            Repr::Product { left, right } => {
                let rs = right.size;
                Some(left.scale(p / rs, r)? * rs + right.scale(p % rs, r)?)
            }
            _ => {
                let target = self.multiple(&p, m)?;
                let hits: Vec<usize> = (0..self.size)
                    .filter(|x| self.multiple(x, n) == Some(target))
                    .collect();
                (hits.len() == 1).then(|| hits[0])
            }
        }
    }

    // ---- universal group embedding (lattice groups Z^X) ----

    /// Order unit of the universal group `Z^X`, for carriers built from
    /// Boolean algebras and MV chains by products.
    pub fn group_unit(&self) -> Option<Vec<i64>> {
        match &self.repr {
            Repr::Boolean { atoms } => Some(vec![1; *atoms as usize]),
            Repr::Mv { denominator, arity } => Some(vec![*denominator as i64; *arity as usize]),
            Repr::Product { left, right } => {
                let mut u = left.group_unit()?;
                u.extend(right.group_unit()?);
                Some(u)
            }
            _ => None,
        }
    }

    pub fn embed(&self, a: usize) -> Option<Vec<i64>> {
        match &self.repr {
            Repr::Boolean { atoms } => Some((0..*atoms).map(|i| ((a >> i) & 1) as i64).collect()),
            Repr::Mv { .. } => Some(self.mv_digits(a).into_iter().map(i64::from).collect()),
            Repr::Product { left, right } => {
                let mut g = left.embed(a / right.size)?;
                g.extend(right.embed(a % right.size)?);
                Some(g)
            }
            _ => None,
        }
    }

    /// Inverse of [`FiniteAlgebra::embed`] on the unit interval.
    pub fn from_coordinates(&self, g: &[i64]) -> Option<usize> {
        match &self.repr {
            Repr::Boolean { atoms } => {
                if g.len() != *atoms as usize || g.iter().any(|&x| !(0..=1).contains(&x)) {
                    return None;
                }
                Some(g.iter().enumerate().map(|(i, &x)| (x as usize) << i).sum())
            }
            Repr::Mv { denominator, arity } => {
                if g.len() != *arity as usize || g.iter().any(|&x| x < 0 || x > *denominator as i64) {
                    return None;
                }
                let digits: Vec<u32> = g.iter().map(|&x| x as u32).collect();
                Some(self.mv_index(&digits))
            }
            Repr::Product { left, right } => {
                let split = left.group_unit()?.len();
                if g.len() < split {
                    return None;
                }
                Some(left.from_coordinates(&g[..split])? * right.size + right.from_coordinates(&g[split..])?)
            }
            _ => None,
        }
    }

    // ---- addresses ----

    /// Human-readable label. Sharp MV vectors print as zero-one vectors.
    pub fn label(&self, a: usize) -> String {
        match &self.repr {
            Repr::Table { labels, .. } => labels
                .as_ref()
                .map_or_else(|| format!("#{a}"), |l| l[a].clone()),
            Repr::Boolean { atoms } => {
                let bits: Vec<String> = (0..*atoms).map(|i| ((a >> i) & 1).to_string()).collect();
                format!("({})", bits.join(","))
            }
            Repr::Mv { denominator, .. } => {
                let digits = self.mv_digits(a);
                let k = *denominator;
                let parts: Vec<String> = if digits.iter().all(|&d| d == 0 || d == k) {
                    digits.iter().map(|&d| (d / k).to_string()).collect()
                } else {
                    digits
                        .iter()
                        .map(|&d| match d {
                            0 => "0".to_string(),
                            d if d == k => "1".to_string(),
                            d => format!("{d}/{k}"),
                        })
                        .collect()
                };
                format!("({})", parts.join(","))
            }
            Repr::Product { left, right } => {
                format!("<{}; {}>", left.label(a / right.size), right.label(a % right.size))
            }
            Repr::HorizontalSum {
                left, right, origin, ..
            } => match origin[a] {
                Origin::Zero => "0".into(),
                Origin::One => "1".into(),
                Origin::Part(Side::Left, x) => format!("L{}", left.label(x)),
                Origin::Part(Side::Right, x) => format!("R{}", right.label(x)),
            },
            Repr::Interval {
                parent, members, ..
            } => parent.label(members[a] as usize),
        }
    }

    /// Parses an element address: bitmask or 0/1 list (boolean), numerator
    /// list (mv_product), `[left, right]` (product), `{"left": …}` /
    /// `{"right": …}` / `"0"` / `"1"` (horizontal sum), index (table).
    pub fn parse_address(&self, v: &Value) -> Result<usize> {
        let bad = || Error::ElementNotFound(format!("{v} in {} carrier", self.kind()));
        let a = match &self.repr {
            Repr::Table { .. } => v.as_u64().ok_or_else(bad)? as usize,
            Repr::Boolean { atoms } => match v {
                Value::Number(n) => n.as_u64().ok_or_else(bad)? as usize,
                Value::Array(xs) if xs.len() == *atoms as usize => {
                    let mut m = 0usize;
                    for (i, x) in xs.iter().enumerate() {
                        match x.as_u64() {
                            Some(0) => {}
                            Some(1) => m |= 1 << i,
                            _ => return Err(bad()),
                        }
                    }
                    m
                }
                _ => return Err(bad()),
            },
            Repr::Mv { .. } => {
                let xs = v.as_array().ok_or_else(bad)?;
                let digits = xs
                    .iter()
                    .map(|x| x.as_u64().map(|d| d as u32).ok_or_else(bad))
                    .collect::<Result<Vec<_>>>()?;
                self.mv_element(&digits).map_err(|_| bad())?
            }
            Repr::Product { left, right } => {
                let xs = v.as_array().filter(|xs| xs.len() == 2).ok_or_else(bad)?;
                left.parse_address(&xs[0])? * right.size + right.parse_address(&xs[1])?
            }
            Repr::HorizontalSum {
                left,
                right,
                left_pos,
                right_pos,
                ..
            } => match v {
                Value::String(s) if s == "0" || s == "zero" => 0,
                Value::String(s) if s == "1" || s == "one" => 1,
                Value::Number(n) if n.as_u64() == Some(0) => 0,
                Value::Number(n) if n.as_u64() == Some(1) => 1,
                Value::Object(map) if map.len() == 1 => {
                    if let Some(x) = map.get("left") {
                        left_pos[left.parse_address(x)?] as usize
                    } else if let Some(x) = map.get("right") {
                        right_pos[right.parse_address(x)?] as usize
                    } else {
                        return Err(bad());
                    }
                }
                _ => return Err(bad()),
            },
            Repr::Interval {
                parent, position, ..
            } => {
                let p = parent.parse_address(v)?;
                let l = position[p];
                if l == NONE {
                    return Err(bad());
                }
                l as usize
            }
        };
        self.check(a).map_err(|_| bad())?;
        Ok(a)
    }

    pub fn address(&self, a: usize) -> Value {
        match &self.repr {
            Repr::Table { .. } | Repr::Boolean { .. } => json!(a),
            Repr::Mv { .. } => json!(self.mv_digits(a)),
            Repr::Product { left, right } => {
                json!([left.address(a / right.size), right.address(a % right.size)])
            }
            Repr::HorizontalSum {
                left, right, origin, ..
            } => match origin[a] {
                Origin::Zero => json!("0"),
                Origin::One => json!("1"),
                Origin::Part(Side::Left, x) => json!({ "left": left.address(x) }),
                Origin::Part(Side::Right, x) => json!({ "right": right.address(x) }),
            },
            Repr::Interval {
                parent, members, ..
            } => parent.address(members[a] as usize),
        }
    }

    /// Every defined sum as `(a, b, a ⊕ b)`.
    pub fn sum_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if let Some(c) = self.raw_sum(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }
}

impl EffectAlgebra for FiniteAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn sum(&self, a: &usize, b: &usize) -> Option<usize> {
        self.raw_sum(*a, *b)
    }

    fn ortho(&self, a: &usize) -> usize {
        self.try_ortho(*a)
            .unwrap_or_else(|| panic!("element {} has no orthosupplement", self.label(*a)))
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        match self.try_ortho(*b) {
            Some(bo) => self.raw_sum(*a, bo).is_some(),
            None => (0..self.size).any(|c| self.raw_sum(*a, c) == Some(*b)),
        }
    }

    fn ominus(&self, b: &usize, a: &usize) -> Option<usize> {
        match self.try_ortho(*b) {
            Some(bo) => self.raw_sum(*a, bo).and_then(|s| self.try_ortho(s)),
            None => (0..self.size).find(|&c| self.raw_sum(*a, c) == Some(*b)),
        }
    }

    fn same(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn is_archimedean(&self) -> bool {
        super::relations::is_archimedean(self)
    }

    fn describe(&self, a: &usize) -> String {
        self.label(*a)
    }
}
