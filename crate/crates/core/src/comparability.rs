//! b-property, b-comparability, positive parts and splitting.

use crate::algebra::{sharp_elements, EffectAlgebra};
use crate::budget::Budget;
use crate::compbase::{blocks, c_block, has_pcp, CompressionBase, FiniteBase};
use crate::error::{Error, Result};
use crate::report::{Report, ScanMode};
use rand::Rng;

/// `a ∈ C(p) ⟺ P(a) ⊆ C(p)` for every projection `p`.
pub fn has_b_property(cb: &FiniteBase, a: usize) -> bool {
    b_property_witness(cb, a, &cb.bicommutant_set(&[a])).is_none()
}

fn b_property_witness(cb: &FiniteBase, a: usize, pa: &[usize]) -> Option<usize> {
    cb.projections().iter().copied().find(|&p| {
        let lhs = cb.in_c(a, p);
        let rhs = pa.iter().all(|&q| cb.projections_compatible(p, q));
        lhs != rhs
    })
}

/// Every element has the b-property; the witness is the first failure.
pub fn all_b(cb: &FiniteBase) -> std::result::Result<(), usize> {
    match cb.algebra().elements().find(|&a| !has_b_property(cb, a)) {
        Some(a) => Err(a),
        None => Ok(()),
    }
}

fn require_b(cb: &FiniteBase, a: usize) -> Result<Vec<usize>> {
    let pa = cb.bicommutant_set(&[a]);
    match b_property_witness(cb, a, &pa) {
        None => Ok(pa),
        Some(_) => Err(Error::BPropertyMissing(cb.algebra().label(a))),
    }
}

/// `eCf`: every pair in `P(e) × P(f)` is compatible.
pub fn commute(cb: &FiniteBase, e: usize, f: usize) -> Result<bool> {
    let pe = require_b(cb, e)?;
    let pf = require_b(cb, f)?;
    Ok(commute_sets(cb, &pe, &pf))
}

fn commute_sets(cb: &FiniteBase, pe: &[usize], pf: &[usize]) -> bool {
    cb.all_compatible()
        || pe
            .iter()
            .all(|&p| pf.iter().all(|&q| cb.projections_compatible(p, q)))
}

/// `P(e, f) = PC(PC({e, f}) ∪ {e, f})`.
pub fn p_pair(cb: &FiniteBase, e: usize, f: usize) -> Vec<usize> {
    cb.bicommutant_set(&[e, f])
}

/// `{p ∈ P(e, f) : J_p(e) ≤ J_p(f), J_{p'}(f) ≤ J_{p'}(e)}`.
pub fn p_le_set(cb: &FiniteBase, e: usize, f: usize) -> Result<Vec<usize>> {
    require_b(cb, e)?;
    require_b(cb, f)?;
    Ok(p_le_raw(cb, e, f))
}

fn p_le_raw(cb: &FiniteBase, e: usize, f: usize) -> Vec<usize> {
    let alg = cb.algebra();
    p_pair(cb, e, f)
        .into_iter()
        .filter(|&p| {
            let po = alg.ortho(&p);
            alg.leq(&cb.apply(p, e), &cb.apply(p, f)) && alg.leq(&cb.apply(po, f), &cb.apply(po, e))
        })
        .collect()
}

/// `(b - a)_+ = J_p(b) ⊖ J_p(a)` for `p ∈ P_≤(a, b)`, evaluated for every
/// such `p`; disagreement is an internal error.
pub fn positive_part(cb: &FiniteBase, b: usize, a: usize) -> Result<usize> {
    let alg = cb.algebra();
    let set = p_le_raw(cb, a, b);
    let mut value = None;
    for p in set {
        let v = alg.ominus(&cb.apply(p, b), &cb.apply(p, a)).ok_or_else(|| {
            Error::Inconsistent(format!(
                "J_p(a) ≰ J_p(b) for p = {} in P_≤",
                alg.label(p)
            ))
        })?;
        match value {
            None => value = Some(v),
            Some(w) if w != v => {
                return Err(Error::Inconsistent(format!(
                    "positive part depends on p: {} vs {}",
                    alg.label(w),
                    alg.label(v)
                )))
            }
            _ => {}
        }
    }
    value.ok_or_else(|| Error::ComparabilityMissing(alg.label(a), alg.label(b)))
}

/// b-property of every element and nonempty `P_≤(e, f)` for every
/// commuting pair.
pub fn check_b_comparability(cb: &FiniteBase, budget: &Budget) -> Report {
    let alg = cb.algebra();
    let n = alg.size();
    let mut report = Report::new(format!("b-comparability: {}", cb.name()));
    let work = (n as u64) * (n as u64) * (cb.projections().len() as u64 + 1);
    let exhaustive = budget.allows(work, n);

    let pas: Vec<Option<Vec<usize>>> = if exhaustive {
        alg.elements().map(|a| require_b(cb, a).ok()).collect()
    } else {
        Vec::new()
    };
    let get_pa = |a: usize| -> Option<Vec<usize>> {
        if exhaustive {
            pas[a].clone()
        } else {
            require_b(cb, a).ok()
        }
    };

    if exhaustive {
        let w = pas
            .iter()
            .position(Option::is_none)
            .map(|a| format!("{} fails the b-property", alg.label(a)));
        report.push("b-property", ScanMode::Exhaustive, w);
        let mut witness = None;
        'outer: for e in alg.elements() {
            let Some(pe) = &pas[e] else { continue };
            for f in e..n {
                let Some(pf) = &pas[f] else { continue };
                if commute_sets(cb, pe, pf) && p_le_raw(cb, e, f).is_empty() {
                    witness = Some(format!(
                        "P_≤({}, {}) is empty for a commuting pair",
                        alg.label(e),
                        alg.label(f)
                    ));
                    break 'outer;
                }
            }
        }
        report.push("comparability of commuting pairs", ScanMode::Exhaustive, witness);
    } else {
        let mode = ScanMode::Sampled(budget.samples);
        let mut rng = budget.rng(0xbc);
        let (mut wb, mut wc) = (None, None);
        for _ in 0..budget.samples {
            let e = rng.random_range(0..n);
            let f = rng.random_range(0..n);
            let (pe, pf) = (get_pa(e), get_pa(f));
            if pe.is_none() && wb.is_none() {
                wb = Some(format!("{} fails the b-property", alg.label(e)));
            }
            if let (Some(pe), Some(pf)) = (pe, pf) {
                if wc.is_none() && commute_sets(cb, &pe, &pf) && p_le_raw(cb, e, f).is_empty() {
                    wc = Some(format!(
                        "P_≤({}, {}) is empty for a commuting pair",
                        alg.label(e),
                        alg.label(f)
                    ));
                }
            }
        }
        report.push("b-property", mode, wb);
        report.push("comparability of commuting pairs", mode, wc);
    }
    report
}

/// b-comparability plus the projection cover property, with the side
/// assertions `P = E_S` and MV C-blocks on success.
pub fn spectral_report(cb: &FiniteBase, budget: &Budget) -> Report {
    let alg = cb.algebra();
    let mut report = check_b_comparability(cb, budget);
    report.title = format!("spectrality: {}", cb.name());
    let pcp = has_pcp(cb, budget);
    report.push("projection cover property", pcp.1, pcp.0.map(|a| format!("{} has no cover", alg.label(a))));

    if alg.size() <= budget.max_carrier && alg.size() <= 4096 {
        let sharp = sharp_elements(alg);
        let mut proj = cb.projections().to_vec();
        proj.sort_unstable();
        let w = (sharp != proj).then(|| {
            let extra: Vec<String> = sharp
                .iter()
                .filter(|s| !cb.is_proj(**s))
                .take(3)
                .map(|&s| alg.label(s))
                .collect();
            format!("P ≠ E_S; sharp non-projections include {}", extra.join(", "))
        });
        report.push("P = E_S", ScanMode::Exhaustive, w);
        if report.passed() {
            report.push("C-blocks are MV-effect algebras", ScanMode::Exhaustive, mv_blocks_witness(cb));
        }
    }
    report
}

pub fn is_spectral(cb: &FiniteBase) -> bool {
    spectral_report(cb, &Budget::from_env()).passed()
}

fn mv_blocks_witness(cb: &FiniteBase) -> Option<String> {
    let alg = cb.algebra();
    let bl = match blocks(cb) {
        Ok(b) => b,
        Err(e) => return Some(e.to_string()),
    };
    for b in bl {
        let c = c_block(cb, &b);
        let mut member = vec![false; alg.size()];
        for &x in &c {
            member[x] = true;
        }
        for &x in &c {
            for &y in &c {
                let (Some(m), Some(j)) = (alg.meet(x, y), alg.join(x, y)) else {
                    return Some(format!("{} and {} have no meet or join", alg.label(x), alg.label(y)));
                };
                if !member[m] || !member[j] {
                    return Some(format!("C-block not closed under ∧, ∨ at {}, {}", alg.label(x), alg.label(y)));
                }
                if alg.ominus(&j, &x) != alg.ominus(&y, &m) {
                    return Some(format!(
                        "(a ∨ b) ⊖ a ≠ b ⊖ (a ∧ b) for a = {}, b = {}",
                        alg.label(x),
                        alg.label(y)
                    ));
                }
            }
        }
    }
    None
}

/// Output of one splitting step inside `[0, q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult<T> {
    pub u0: T,
    pub u1: T,
    pub c0: T,
    pub c1: T,
    pub ambient_unit: T,
}

/// Splits `c ≤ q` in `[0, q]`.
pub fn split<B: CompressionBase>(cb: &B, c: &B::Elem, q: &B::Elem) -> Result<SplitResult<B::Elem>> {
    let cq = cb
        .ominus(q, c)
        .ok_or_else(|| Error::InvalidParameter(format!("{} ≰ {}", cb.describe(c), cb.describe(q))))?;
    let pos = cb.positive_part(c, &cq)?;
    let cover = cb.projection_cover(&pos)?;
    let u0 = cb.meet_projections(&cb.ortho(&cover), q);
    let u1 = cb
        .ominus(q, &u0)
        .ok_or_else(|| Error::Inconsistent("u0 ≰ q".into()))?;
    let c0 = cb
        .multiple(&cb.compress(&u0, c), 2)
        .ok_or_else(|| Error::Inconsistent(format!("2 J_u0(c) undefined for c = {}", cb.describe(c))))?;
    let doubled = cb
        .multiple(&cb.compress(&u1, &cq), 2)
        .ok_or_else(|| Error::Inconsistent(format!("2 J_u1(q ⊖ c) undefined for c = {}", cb.describe(c))))?;
    let c1 = cb
        .ominus(&u1, &doubled)
        .ok_or_else(|| Error::Inconsistent("2 J_u1(q ⊖ c) ≰ u1".into()))?;
    Ok(SplitResult {
        u0,
        u1,
        c0,
        c1,
        ambient_unit: q.clone(),
    })
}

/// The inherited base on `[0, q]`.
pub fn restrict(cb: std::sync::Arc<FiniteBase>, q: usize) -> Result<FiniteBase> {
    FiniteBase::restrict(cb, q)
}
