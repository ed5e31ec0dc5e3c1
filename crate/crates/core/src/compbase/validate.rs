use super::FiniteBase;
use crate::algebra::{mackey_compatible, EffectAlgebra, FiniteAlgebra};
use crate::budget::Budget;
use crate::report::{Report, ScanMode};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 6] = [
    "P is a sub-effect algebra",
    "(C1) compressions with focus p",
    "supplement J_p′ of J_p",
    "normality of P",
    "(C2) compatible projections compose",
    "triple law J_(p⊕r) J_(q⊕r) = J_r",
];

pub fn validate_base(cb: &FiniteBase) -> Report {
    validate_base_with(cb, &Budget::from_env())
}

/// (C1), (C2), normality, supplements and the triple law.
pub fn validate_base_with(cb: &FiniteBase, budget: &Budget) -> Report {
    let alg = cb.algebra();
    let n = alg.size() as u64;
    let k = cb.projections().len() as u64;
    let mut report = Report::new(format!("compression base: {}", cb.name()));
    if budget.allows(n * n * k.max(1), alg.size()) && k * k <= budget.max_work {
        exhaustive(cb, &mut report);
    } else if let Some((l, r)) = cb.factors() {
        let lr = validate_base_with(l, budget);
        let rr = validate_base_with(r, budget);
        let mut sampled = Report::new("");
        sampled_checks(cb, budget, &mut sampled);
        for name in NAMES {
            let witness = [("left", &lr), ("right", &rr), ("product", &sampled)]
                .iter()
                .find_map(|(side, rep)| {
                    rep.check(name)
                        .and_then(|c| c.witness.as_ref())
                        .map(|w| format!("{side}: {w}"))
                });
            report.push(name, ScanMode::Compositional, witness);
        }
        report.absorb("left/", lr);
        report.absorb("right/", rr);
    } else {
        sampled_checks(cb, budget, &mut report);
    }
    report
}

fn lbl(alg: &FiniteAlgebra, a: usize) -> String {
    alg.label(a)
}

fn subalgebra_witness(cb: &FiniteBase, pairs: impl Iterator<Item = (usize, usize)>) -> Option<String> {
    let alg = cb.algebra();
    if !cb.is_proj(alg.zero()) || !cb.is_proj(alg.one()) {
        return Some("0 or 1 is not a projection".into());
    }
    if let Some(&p) = cb.projections().iter().find(|&&p| !cb.is_proj(alg.ortho(&p))) {
        return Some(format!("{}′ is not a projection", lbl(alg, p)));
    }
    let mut pairs = pairs;
    pairs.find_map(|(p, q)| {
        alg.raw_sum(p, q)
            .filter(|&s| !cb.is_proj(s))
            .map(|s| format!("{} ⊕ {} = {} is not a projection", lbl(alg, p), lbl(alg, q), lbl(alg, s)))
    })
}

/// Compression law checks for one projection over the given elements and pairs.
fn c1_witness(
    cb: &FiniteBase,
    p: usize,
    elems: impl Iterator<Item = usize>,
    pairs: impl Iterator<Item = (usize, usize)>,
) -> Option<String> {
    let alg = cb.algebra();
    let j = |a: usize| cb.apply(p, a);
    if j(alg.one()) != p {
        return Some(format!("J_{}(1) = {}", lbl(alg, p), lbl(alg, j(alg.one()))));
    }
    let po = alg.ortho(&p);
    for a in elems {
        if alg.leq(&a, &p) && j(a) != a {
            return Some(format!("J_{} moves {} ≤ p", lbl(alg, p), lbl(alg, a)));
        }
        if (j(a) == alg.zero()) != alg.leq(&a, &po) {
            return Some(format!("J_{}({}) = 0 disagrees with {} ≤ p′", lbl(alg, p), lbl(alg, a), lbl(alg, a)));
        }
    }
    for (a, b) in pairs {
        if let Some(s) = alg.raw_sum(a, b) {
            if alg.raw_sum(j(a), j(b)) != Some(j(s)) {
                return Some(format!("J_{} not additive on {}, {}", lbl(alg, p), lbl(alg, a), lbl(alg, b)));
            }
        }
    }
    None
}

fn supplement_witness(cb: &FiniteBase, p: usize) -> Option<String> {
    let alg = cb.algebra();
    let po = alg.ortho(&p);
    let mut ker_p = vec![false; alg.size()];
    let mut img_po = vec![false; alg.size()];
    let mut ker_po = vec![false; alg.size()];
    let mut img_p = vec![false; alg.size()];
    for a in alg.elements() {
        ker_p[a] = cb.apply(p, a) == alg.zero();
        ker_po[a] = cb.apply(po, a) == alg.zero();
        img_p[cb.apply(p, a)] = true;
        img_po[cb.apply(po, a)] = true;
    }
    (ker_p != img_po || ker_po != img_p)
        .then(|| format!("ker/image mismatch for J_{} and J_{}", lbl(alg, p), lbl(alg, po)))
}

fn normality_witness(cb: &FiniteBase, p: usize, q: usize) -> Option<String> {
    let alg = cb.algebra();
    alg.below(p).into_iter().find_map(|d| {
        if !alg.leq(&d, &q) {
            return None;
        }
        let e = alg.ominus(&p, &d)?;
        let f = alg.ominus(&q, &d)?;
        let ef = alg.raw_sum(e, f)?;
        alg.raw_sum(ef, d)?;
        (!cb.is_proj(d)).then(|| {
            format!(
                "{} ⊕ {} and {} ⊕ {} are projections but {} is not",
                lbl(alg, e),
                lbl(alg, d),
                lbl(alg, f),
                lbl(alg, d),
                lbl(alg, d)
            )
        })
    })
}

fn c2_witness(cb: &FiniteBase, p: usize, q: usize, elems: impl Iterator<Item = usize>) -> Option<String> {
    let alg = cb.algebra();
    let r = cb.apply(p, q);
    if !cb.is_proj(r) {
        return Some(format!(
            "J_{} ∘ J_{} has focus {} outside P",
            lbl(alg, p),
            lbl(alg, q),
            lbl(alg, r)
        ));
    }
    let mut elems = elems;
    elems
        .find(|&a| cb.apply(p, cb.apply(q, a)) != cb.apply(r, a))
        .map(|a| format!("J_{} ∘ J_{} ≠ J_{} at {}", lbl(alg, p), lbl(alg, q), lbl(alg, r), lbl(alg, a)))
}

fn triple_witness(
    cb: &FiniteBase,
    p: usize,
    q: usize,
    r: usize,
    elems: impl Iterator<Item = usize>,
) -> Option<String> {
    let alg = cb.algebra();
    let pq = alg.raw_sum(p, q)?;
    alg.raw_sum(pq, r)?;
    let pr = alg.raw_sum(p, r)?;
    let qr = alg.raw_sum(q, r)?;
    if !cb.is_proj(pr) || !cb.is_proj(qr) {
        return Some(format!("{} or {} is not a projection", lbl(alg, pr), lbl(alg, qr)));
    }
    let mut elems = elems;
    elems
        .find(|&a| cb.apply(pr, cb.apply(qr, a)) != cb.apply(r, a))
        .map(|a| {
            format!(
                "J_{} ∘ J_{} ≠ J_{} at {}",
                lbl(alg, pr),
                lbl(alg, qr),
                lbl(alg, r),
                lbl(alg, a)
            )
        })
}

fn summable_pairs(alg: &FiniteAlgebra) -> Vec<(usize, usize)> {
    alg.elements()
        .flat_map(|a| {
            let partners = match alg.try_ortho(a) {
                Some(o) if alg.kind() != "table" => alg.below(o),
                _ => alg.elements().filter(|&b| alg.raw_sum(a, b).is_some()).collect(),
            };
            partners.into_iter().map(move |b| (a, b))
        })
        .collect()
}

fn exhaustive(cb: &FiniteBase, report: &mut Report) {
    let alg = cb.algebra();
    let mode = ScanMode::Exhaustive;
    let proj = cb.projections();
    let pp: Vec<(usize, usize)> = proj.iter().flat_map(|&p| proj.iter().map(move |&q| (p, q))).collect();

    report.push(NAMES[0], mode, subalgebra_witness(cb, &mut pp.iter().copied()));

    let pairs = summable_pairs(alg);
    let c1 = proj
        .iter()
        .find_map(|&p| c1_witness(cb, p, &mut alg.elements(), &mut pairs.iter().copied()));
    report.push(NAMES[1], mode, c1.clone());
    if c1.is_some() {
        for name in &NAMES[2..] {
            report.fail(*name, mode, "skipped: (C1) failed");
        }
        return;
    }

    report.push(NAMES[2], mode, proj.iter().find_map(|&p| supplement_witness(cb, p)));
    report.push(NAMES[3], mode, pp.iter().find_map(|&(p, q)| normality_witness(cb, p, q)));
    let c2 = pp.iter().find_map(|&(p, q)| {
        mackey_compatible(alg, p, q)?;
        c2_witness(cb, p, q, &mut alg.elements())
    });
    report.push(NAMES[4], mode, c2);
    let triple = pp.iter().find_map(|&(p, q)| {
        proj.iter()
            .find_map(|&r| triple_witness(cb, p, q, r, &mut alg.elements()))
    });
    report.push(NAMES[5], mode, triple);
}

fn sampled_checks(cb: &FiniteBase, budget: &Budget, report: &mut Report) {
    let alg = cb.algebra();
    let s = budget.samples;
    let mode = ScanMode::Sampled(s);
    let proj = cb.projections();
    let mut rng = budget.rng(0xba5e);
    let rp = |rng: &mut ChaCha8Rng| proj[rng.random_range(0..proj.len())];
    let re = |rng: &mut ChaCha8Rng| rng.random_range(0..alg.size());
    let partner = |rng: &mut ChaCha8Rng, a: usize| {
        let x = rng.random_range(0..alg.size());
        alg.try_ortho(a).and_then(|o| alg.meet(x, o)).unwrap_or(x)
    };

    let mut pp: Vec<(usize, usize)> = Vec::new();
    for _ in 0..s {
        let p = rp(&mut rng);
        let q = partner(&mut rng, p);
        let q = if cb.is_proj(q) { q } else { rp(&mut rng) };
        pp.push((p, q));
    }
    report.push(NAMES[0], mode, subalgebra_witness(cb, &mut pp.iter().copied()));

    let per = (s / proj.len().max(1)).clamp(8, 200);
    let c1 = (0..proj.len().min(s)).find_map(|i| {
        let p = if proj.len() <= s { proj[i] } else { rp(&mut rng) };
        let elems: Vec<usize> = (0..per).map(|_| re(&mut rng)).collect();
        let pairs: Vec<(usize, usize)> = elems.iter().map(|&a| (a, partner(&mut rng, a))).collect();
        c1_witness(cb, p, &mut elems.into_iter(), &mut pairs.into_iter())
    });
    report.push(NAMES[1], mode, c1);

    let few = s.min(500);
    let sup = (0..few).find_map(|_| {
        let p = rp(&mut rng);
        let po = alg.ortho(&p);
        let a = re(&mut rng);
        let x = cb.apply(po, a);
        let y = cb.apply(p, a);
        if cb.apply(p, x) != alg.zero() || cb.apply(po, y) != alg.zero() {
            Some(format!("J_{} does not vanish on the image of J_{}", lbl(alg, p), lbl(alg, po)))
        } else {
            None
        }
    });
    report.push(NAMES[2], mode, sup);

    let normal = (0..few).find_map(|_| {
        let p = rp(&mut rng);
        let q = rp(&mut rng);
        let d = alg.meet(p, q)?;
        normality_witness(cb, p, q).or_else(|| (!cb.is_proj(d)).then(|| format!("{} ∧ {} is not a projection", lbl(alg, p), lbl(alg, q))))
    });
    report.push(NAMES[3], mode, normal);

    let c2 = (0..few).find_map(|_| {
        let (p, q) = pp[rng.random_range(0..pp.len())];
        if !cb.projections_compatible(p, q) {
            return None;
        }
        let elems: Vec<usize> = (0..16).map(|_| re(&mut rng)).collect();
        c2_witness(cb, p, q, &mut elems.into_iter())
    });
    report.push(NAMES[4], mode, c2);

    let triple = (0..few).find_map(|_| {
        let p = rp(&mut rng);
        let q = partner(&mut rng, p);
        let pq = alg.raw_sum(p, q)?;
        let r = partner(&mut rng, pq);
        if !cb.is_proj(q) || !cb.is_proj(r) {
            return None;
        }
        let elems: Vec<usize> = (0..16).map(|_| re(&mut rng)).collect();
        triple_witness(cb, p, q, r, &mut elems.into_iter())
    });
    report.push(NAMES[5], mode, triple);
}
