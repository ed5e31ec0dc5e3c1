use super::FiniteBase;
use crate::algebra::EffectAlgebra;
use crate::budget::Budget;
use crate::error::Result;
use crate::report::{Report, ScanMode};
use rand::Rng;

/// Every element has a projection cover; returns the first element without one.
pub fn has_pcp(cb: &FiniteBase, budget: &Budget) -> (Option<usize>, ScanMode) {
    let n = cb.algebra().size();
    let work = n as u64 * cb.projections().len() as u64;
    if budget.allows(work, n) {
        (cb.algebra().elements().find(|&a| cb.cover(a).is_err()), ScanMode::Exhaustive)
    } else {
        let mut rng = budget.rng(0xc0);
        let w = (0..budget.samples.min(2000))
            .map(|_| rng.random_range(0..n))
            .find(|&a| cb.cover(a).is_err());
        (w, ScanMode::Sampled(budget.samples.min(2000)))
    }
}

fn extremum(cb: &FiniteBase, p: usize, q: usize, lower: bool) -> Option<usize> {
    let alg = cb.algebra();
    let le = |x: &usize, y: &usize| if lower { alg.leq(x, y) } else { alg.leq(y, x) };
    let bounds: Vec<usize> = cb
        .projections()
        .iter()
        .copied()
        .filter(|r| le(r, &p) && le(r, &q))
        .collect();
    let mut best = *bounds.first()?;
    for &r in &bounds[1..] {
        if le(&best, &r) {
            best = r;
        }
    }
    bounds.iter().all(|r| le(r, &best)).then_some(best)
}

/// `P` is an orthomodular lattice whose finite meets and joins (up to three
/// elements) agree with those of `E`.
pub fn check_oml(cb: &FiniteBase, budget: &Budget) -> Result<Report> {
    if let (Some(a), _) = has_pcp(cb, budget) {
        cb.cover(a)?;
    }
    let alg = cb.algebra();
    let proj = cb.projections();
    let k = proj.len() as u64;
    let mode = if budget.allows(k * k * k * k, alg.size()) {
        ScanMode::Exhaustive
    } else {
        ScanMode::Sampled(budget.samples)
    };
    let mut rng = budget.rng(0x0e1);
    let pairs: Vec<(usize, usize)> = match mode {
        ScanMode::Exhaustive => proj
            .iter()
            .flat_map(|&p| proj.iter().map(move |&q| (p, q)))
            .collect(),
        _ => (0..budget.samples)
            .map(|_| {
                (
                    proj[rng.random_range(0..proj.len())],
                    proj[rng.random_range(0..proj.len())],
                )
            })
            .collect(),
    };
    let lbl = |x: usize| alg.label(x);
    let mut report = Report::new(format!("orthomodular lattice: {}", cb.name()));

    let w = proj
        .iter()
        .find(|&&p| !cb.is_proj(alg.ortho(&p)))
        .map(|&p| format!("{}′ is not a projection", lbl(p)));
    report.push("P closed under ′", mode, w);

    let mut lattice = None;
    let mut om = None;
    let mut agree = None;
    for &(p, q) in &pairs {
        let (m, j) = (extremum(cb, p, q, true), extremum(cb, p, q, false));
        let (Some(m), Some(j)) = (m, j) else {
            lattice.get_or_insert_with(|| format!("{} and {} lack a meet or join in P", lbl(p), lbl(q)));
            continue;
        };
        if alg.meet(p, q) != Some(m) || alg.join(p, q) != Some(j) {
            agree.get_or_insert_with(|| format!("P and E disagree on {} ∧ {} or {} ∨ {}", lbl(p), lbl(q), lbl(p), lbl(q)));
        }
        if alg.leq(&p, &q) {
            let qp = extremum(cb, q, alg.ortho(&p), true);
            let back = qp.and_then(|x| extremum(cb, p, x, false));
            if back != Some(q) {
                om.get_or_insert_with(|| format!("orthomodular law fails for {} ≤ {}", lbl(p), lbl(q)));
            }
        }
    }
    if mode == ScanMode::Exhaustive && agree.is_none() && lattice.is_none() {
        'outer: for &p in proj {
            for &q in proj {
                let m = extremum(cb, p, q, true).expect("checked above");
                for &r in proj {
                    let pm = extremum(cb, m, r, true).expect("checked above");
                    let em = alg.meet(p, q).and_then(|x| alg.meet(x, r));
                    if em != Some(pm) {
                        agree = Some(format!("triple meet of {}, {}, {} differs from E", lbl(p), lbl(q), lbl(r)));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push("pairwise meets and joins in P", mode, lattice);
    report.push("orthomodular law", mode, om);
    report.push("meets and joins agree with E", mode, agree);
    Ok(report)
}
