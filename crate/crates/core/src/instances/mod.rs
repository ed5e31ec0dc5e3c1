//! Constructors for the concrete algebras, each with its canonical base.

mod document;

pub use document::{
    format_rational, parse_document, parse_rational, parse_spec, to_document, value_to_f64, InstanceSpec,
};

use crate::algebra::state::Q;
use crate::algebra::{validate_axioms_with, EffectAlgebra, FiniteAlgebra, Side, State};
use crate::budget::Budget;
use crate::compbase::{validate_base_with, CompressionBase, FiniteBase};
use crate::error::{Error, Result};
use crate::matrix::{Mat, MatrixAlgebra};
use crate::report::{Report, ScanMode};
use crate::spectral::{Node, SplittingTree};
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const MO2: &str = "mo2";

#[derive(Debug, Clone)]
pub enum Instance {
    Finite(Arc<FiniteBase>),
    Matrix(MatrixAlgebra),
}

/// An instance together with the spec it was built from.
#[derive(Debug, Clone)]
pub struct Built {
    pub spec: InstanceSpec,
    pub instance: Instance,
}

impl Built {
    pub fn finite(&self) -> Option<&Arc<FiniteBase>> {
        match &self.instance {
            Instance::Finite(b) => Some(b),
            Instance::Matrix(_) => None,
        }
    }

    pub fn matrix(&self) -> Option<&MatrixAlgebra> {
        match &self.instance {
            Instance::Matrix(m) => Some(m),
            Instance::Finite(_) => None,
        }
    }
}

/// Axioms and base checks for a finite instance.
pub fn validate_instance(cb: &FiniteBase, budget: &Budget) -> Report {
    let mut report = Report::new(format!("validation: {}", cb.name()));
    report.absorb("", validate_axioms_with(cb.algebra(), budget));
    report.absorb("", validate_base_with(cb, budget));
    report
}

fn ensure_valid(cb: FiniteBase) -> Result<Arc<FiniteBase>> {
    let report = validate_instance(&cb, &Budget::from_env());
    match report.first_failure() {
        None => Ok(Arc::new(cb)),
        Some(c) => Err(Error::Inconsistent(format!(
            "{} fails {}: {}",
            cb.name(),
            c.name,
            c.witness.as_deref().unwrap_or("")
        ))),
    }
}

fn boolean_base(n: u32) -> Result<FiniteBase> {
    if !(1..=16).contains(&n) {
        return Err(Error::SizeLimit(format!("boolean algebra with {n} atoms (1..=16)")));
    }
    let alg = Arc::new(FiniteAlgebra::boolean(n)?);
    Ok(FiniteBase::central(alg).named(format!("boolean({n})")))
}

fn mv_base(k: u32, d: u32) -> Result<FiniteBase> {
    if ![2, 4, 8, 16].contains(&k) {
        return Err(Error::InvalidParameter(format!("denominator {k} must be 2, 4, 8 or 16")));
    }
    if !(1..=4).contains(&d) || (k as u64 + 1).pow(d) > 100_000 {
        return Err(Error::SizeLimit(format!("mv_product({k}, {d})")));
    }
    let alg = Arc::new(FiniteAlgebra::mv_product(k, d)?);
    Ok(FiniteBase::central(alg).named(format!("mv_product({k},{d})")))
}

/// The Boolean algebra `2^n` with its central base.
pub fn make_boolean(n: u32) -> Result<Arc<FiniteBase>> {
    ensure_valid(boolean_base(n)?)
}

/// `L_k^d` with the central base over zero-one vectors.
pub fn make_mv_product(k: u32, d: u32) -> Result<Arc<FiniteBase>> {
    ensure_valid(mv_base(k, d)?)
}

pub fn make_product(left: Arc<FiniteBase>, right: Arc<FiniteBase>) -> Result<Arc<FiniteBase>> {
    ensure_valid(FiniteBase::product(left, right)?)
}

/// `E(H)` for real `H` of dimension `dim`, after spot checks.
pub fn make_matrix(dim: usize) -> Result<MatrixAlgebra> {
    let m = MatrixAlgebra::new(dim)?;
    let report = matrix_spot_checks(&m, &Budget::from_env());
    match report.first_failure() {
        None => Ok(m),
        Some(c) => Err(Error::Inconsistent(format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))),
    }
}

/// A random effect `V diag(λ) Vᵀ`.
pub fn random_effect(m: &MatrixAlgebra, rng: &mut impl Rng) -> Mat {
    let d = m.dim();
    let v = random_orthogonal(d, rng);
    let diag = Mat::from_diagonal(&nalgebra::DVector::from_fn(d, |_, _| rng.random_range(0.0..=1.0)));
    let a = &v * diag * v.transpose();
    (&a + a.transpose()) * 0.5
}

/// A random orthogonal matrix from the QR factor of a Gaussian-like matrix.
pub fn random_orthogonal(d: usize, rng: &mut impl Rng) -> Mat {
    let g = Mat::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
    g.qr().q()
}

/// A random projection of random rank.
pub fn random_projection(m: &MatrixAlgebra, rng: &mut impl Rng) -> Mat {
    let d = m.dim();
    let v = random_orthogonal(d, rng);
    let rank = rng.random_range(0..=d);
    let mut p = Mat::zeros(d, d);
    for i in 0..rank {
        let c = v.column(i);
        p += &c * c.transpose();
    }
    p
}

/// Idempotence, focus, kernel and additivity of `J_p` on random effects.
pub fn matrix_spot_checks(m: &MatrixAlgebra, budget: &Budget) -> Report {
    let mut rng = budget.rng(0x3a7);
    let trials = 200;
    let mode = ScanMode::Sampled(trials);
    let mut report = Report::new(format!("matrix({}) spot checks", m.dim()));
    let (mut idem, mut focus, mut kernel, mut additive) = (None, None, None, None);
    for _ in 0..trials {
        let p = random_projection(m, &mut rng);
        let a = random_effect(m, &mut rng) * 0.5;
        let b = random_effect(m, &mut rng) * 0.5;
        let ja = m.compress(&p, &a);
        if !m.same(&m.compress(&p, &ja), &ja) {
            idem.get_or_insert_with(|| format!("J_p not idempotent for p = {}", m.describe(&p)));
        }
        if !m.same(&m.compress(&p, &m.one()), &p) {
            focus.get_or_insert_with(|| format!("J_p(1) ≠ p for p = {}", m.describe(&p)));
        }
        let po = m.ortho(&p);
        let below = m.compress(&po, &a);
        if !m.is_zero(&m.compress(&p, &below)) {
            kernel.get_or_insert_with(|| format!("J_p(J_p'(a)) ≠ 0 for p = {}", m.describe(&p)));
        }
        let s = m.sum(&a, &b).expect("halves sum");
        let lhs = m.compress(&p, &s);
        let rhs = m.compress(&p, &a) + m.compress(&p, &b);
        if !m.same(&lhs, &rhs) {
            additive.get_or_insert_with(|| "J_p not additive".to_string());
        }
    }
    report.push("J_p idempotent", mode, idem);
    report.push("J_p(1) = p", mode, focus);
    report.push("J_p vanishes on [0, p']", mode, kernel);
    report.push("J_p additive", mode, additive);
    report
}

fn state_for(alg: &FiniteAlgebra, values: &[Q], side: &str) -> Result<State> {
    let s = State::from_atom_values(alg, values)?;
    if !s.is_faithful(alg) {
        let z = alg
            .elements()
            .find(|&a| a != alg.zero() && s.value(a) == Q::from_integer(0))
            .expect("unfaithful state has a null element");
        return Err(Error::NotFaithful(format!("{side} state vanishes at {}", alg.label(z))));
    }
    Ok(s)
}

fn horizontal_sum_base(left: &FiniteBase, right: &FiniteBase, sl: &State, sr: &State) -> Result<FiniteBase> {
    let (la, ra) = (left.algebra(), right.algebra());
    let alg = Arc::new(FiniteAlgebra::horizontal_sum(la.clone(), ra.clone())?);
    let n = alg.size();
    let mut projections = vec![alg.zero(), alg.one()];
    let mut tables = vec![vec![alg.zero(); n], alg.elements().collect::<Vec<_>>()];
    for (side, own, other_state) in [(Side::Left, left, sr), (Side::Right, right, sl)] {
        let own_alg = own.algebra();
        for &p in own.projections() {
            if p == own_alg.zero() || p == own_alg.one() {
                continue;
            }
            let ph = alg.inject(side, p);
            let mut t = Vec::with_capacity(n);
            for x in alg.elements() {
                let y = match alg.origin(x) {
                    None if x == alg.zero() => alg.zero(),
                    None => ph,
                    Some((s, y)) if s == side => alg.inject(side, own.apply(p, y)),
                    Some((_, y)) => {
                        let r = other_state.value(y);
                        let scaled = own_alg.scale(p, r).ok_or_else(|| {
                            Error::ScaleMismatch(format!("{r} · {} is not in the carrier", own_alg.label(p)))
                        })?;
                        alg.inject(side, scaled)
                    }
                };
                t.push(y);
            }
            projections.push(ph);
            tables.push(t);
        }
    }
    let name = format!("{} ⊔ {}", left.name(), right.name());
    FiniteBase::from_tables(alg, projections, tables, name)
}

/// The horizontal sum of two finite instances, with cross compressions
/// `J_p(x) = s(x)·p` through the faithful state `s` of the other part.
pub fn make_horizontal_sum(
    left: &FiniteBase,
    right: &FiniteBase,
    left_state: &[Q],
    right_state: &[Q],
) -> Result<Arc<FiniteBase>> {
    let sl = state_for(left.algebra(), left_state, "left")?;
    let sr = state_for(right.algebra(), right_state, "right")?;
    ensure_valid(horizontal_sum_base(left, right, &sl, &sr)?)
}

/// `2² ⊔ 2²`. No faithful state makes the cross compressions land in the
/// carrier, so the constructor falls back to the central base `{0, 1}`.
pub fn make_mo2() -> Arc<FiniteBase> {
    let b = Arc::new(boolean_base(2).expect("small"));
    let half = [Q::new(1, 2), Q::new(1, 2)];
    if let Ok(cb) = make_horizontal_sum(&b, &b, &half, &half) {
        return cb;
    }
    let alg = Arc::new(
        FiniteAlgebra::horizontal_sum(b.algebra().clone(), b.algebra().clone()).expect("small"),
    );
    Arc::new(FiniteBase::central(alg).named(MO2))
}

fn finite_from_spec(spec: &InstanceSpec) -> Result<FiniteBase> {
    Ok(match spec {
        InstanceSpec::Boolean { atoms } => boolean_base(*atoms)?,
        InstanceSpec::MvProduct { denominator, arity } => mv_base(*denominator, *arity)?,
        InstanceSpec::Matrix { .. } => {
            return Err(Error::InvalidParameter("matrix instances cannot be combined".into()))
        }
        InstanceSpec::Product { left, right } => FiniteBase::product(
            Arc::new(finite_from_spec(left)?),
            Arc::new(finite_from_spec(right)?),
        )?,
        InstanceSpec::HorizontalSum {
            left,
            right,
            left_state,
            right_state,
        } => {
            let (l, r) = (finite_from_spec(left)?, finite_from_spec(right)?);
            let ls: Vec<Q> = left_state.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            let rs: Vec<Q> = right_state.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            let sl = state_for(l.algebra(), &ls, "left")?;
            let sr = state_for(r.algebra(), &rs, "right")?;
            horizontal_sum_base(&l, &r, &sl, &sr)?
        }
        InstanceSpec::Table {
            size,
            zero,
            one,
            sums,
            labels,
            projections,
            maps,
        } => {
            let triples: Vec<(usize, usize, usize)> = sums.iter().map(|t| (t[0], t[1], t[2])).collect();
            let alg = Arc::new(FiniteAlgebra::table(*size, *zero, *one, &triples, labels.clone())?);
            match (projections, maps) {
                (Some(p), Some(m)) => FiniteBase::from_tables(alg, p.clone(), m.clone(), format!("table({size})"))?,
                (None, None) => FiniteBase::central(alg).named(format!("table({size})")),
                _ => {
                    return Err(Error::Document(
                        "`projections` and `maps` must be given together".into(),
                    ))
                }
            }
        }
        InstanceSpec::Fixture { name } if name == MO2 => (*make_mo2()).clone(),
        InstanceSpec::Fixture { name } => {
            return Err(Error::Document(format!("unknown fixture {name:?}")))
        }
    })
}

/// Constructs an instance without running the validators.
pub fn build_unchecked(spec: &InstanceSpec) -> Result<Built> {
    let instance = match spec {
        InstanceSpec::Matrix { dim } => Instance::Matrix(MatrixAlgebra::new(*dim)?),
        _ => Instance::Finite(Arc::new(finite_from_spec(spec)?)),
    };
    Ok(Built {
        spec: spec.clone(),
        instance,
    })
}

/// Constructs and validates an instance.
pub fn build(spec: &InstanceSpec) -> Result<Built> {
    let instance = match spec {
        InstanceSpec::Matrix { dim } => Instance::Matrix(make_matrix(*dim)?),
        _ => Instance::Finite(ensure_valid(finite_from_spec(spec)?)?),
    };
    Ok(Built {
        spec: spec.clone(),
        instance,
    })
}

/// The instance as an explicit table, preserving element indices.
pub fn to_table_spec(cb: &FiniteBase) -> InstanceSpec {
    let alg = cb.algebra();
    InstanceSpec::Table {
        size: alg.size(),
        zero: alg.zero(),
        one: alg.one(),
        sums: alg.sum_triples().into_iter().map(|(a, b, c)| [a, b, c]).collect(),
        labels: Some(alg.elements().map(|a| alg.label(a)).collect()),
        projections: Some(cb.projections().to_vec()),
        maps: Some(cb.tables()),
    }
}

/// The splitting tree of `a ∈ L_k^d` from the closed form
/// `U_w = {i : k(w)/2^n < a_i ≤ (k(w)+1)/2^n}`, `c_w(i) = 2^n a_i - k(w)`.
pub fn closed_form_mv_resolution(alg: &FiniteAlgebra, a: usize, n: u32) -> Result<SplittingTree<usize>> {
    let (k, d) = alg
        .mv_params()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not an MV product", alg.kind())))?;
    alg.check(a)?;
    if n > 40 {
        return Err(Error::InvalidParameter(format!("depth {n} is too large")));
    }
    let digits = alg.mv_digits(a);
    let k = k as u64;
    let mut levels = Vec::with_capacity(n as usize + 1);
    for l in 0..=n {
        let scale = 1u64 << l;
        let mut groups: BTreeMap<u64, (Vec<u32>, Vec<u32>)> = BTreeMap::new();
        for (i, &x) in digits.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let w = (scale * x as u64).div_ceil(k) - 1;
            let entry = groups
                .entry(w)
                .or_insert_with(|| (vec![0; d as usize], vec![0; d as usize]));
            entry.0[i] = k as u32;
            entry.1[i] = (scale * x as u64 - w * k) as u32;
        }
        levels.push(
            groups
                .into_iter()
                .map(|(w, (u, c))| Node {
                    k: w,
                    u: alg.mv_index(&u),
                    c: alg.mv_index(&c),
                })
                .collect(),
        );
    }
    Ok(SplittingTree::from_levels(levels, alg.zero()))
}
