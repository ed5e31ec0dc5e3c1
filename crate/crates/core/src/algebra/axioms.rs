//! Axiom checks E1–E4, orthosupplement uniqueness and cancellation.

use super::{EffectAlgebra, FiniteAlgebra};
use crate::budget::Budget;
use crate::report::{Report, ScanMode};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn validate_axioms(alg: &FiniteAlgebra) -> Report {
    validate_axioms_with(alg, &Budget::from_env())
}

pub fn validate_axioms_with(alg: &FiniteAlgebra, budget: &Budget) -> Report {
    let n = alg.size() as u64;
    let mut report = Report::new(format!("axioms: {} with {} elements", alg.kind(), alg.size()));
    if budget.allows(n * n, alg.size()) {
        exhaustive(alg, budget, &mut report);
    } else if let (true, Some((left, right))) = (alg.is_product(), alg.parts()) {
        let l = validate_axioms_with(left, budget);
        let r = validate_axioms_with(right, budget);
        let mut sampled = Report::new("");
        sampled_checks(alg, budget, &mut sampled);
        for name in NAMES {
            let witness = [("left", &l), ("right", &r), ("product", &sampled)]
                .iter()
                .find_map(|(side, rep)| {
                    rep.check(name)
                        .and_then(|c| c.witness.as_ref())
                        .map(|w| format!("{side}: {w}"))
                });
            report.push(name, ScanMode::Compositional, witness);
        }
        report.absorb("left/", l);
        report.absorb("right/", r);
    } else {
        sampled_checks(alg, budget, &mut report);
    }
    report
}

const NAMES: [&str; 6] = [
    "E1 commutativity",
    "E2 associativity",
    "E3 orthosupplement",
    "E4 zero-one law",
    "orthosupplement uniqueness",
    "cancellation",
];

fn lbl(alg: &FiniteAlgebra, a: usize) -> String {
    alg.label(a)
}

/// Dense copy of the partial sum, built once per exhaustive scan.
struct Dense {
    n: usize,
    sums: Vec<u16>,
    partners: Vec<Vec<u16>>,
}

const UNDEFINED: u16 = u16::MAX;

impl Dense {
    fn new(alg: &FiniteAlgebra) -> Option<Self> {
        let n = alg.size();
        if n >= UNDEFINED as usize {
            return None;
        }
        let mut sums = vec![UNDEFINED; n * n];
        let mut partners = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = alg.raw_sum(a, b) {
                    sums[a * n + b] = c as u16;
                    partners[a].push(b as u16);
                }
            }
        }
        Some(Dense { n, sums, partners })
    }

    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.sums[a * self.n + b];
        (c != UNDEFINED).then_some(c as usize)
    }
}

fn exhaustive(alg: &FiniteAlgebra, budget: &Budget, report: &mut Report) {
    let Some(d) = Dense::new(alg) else {
        return sampled_checks(alg, budget, report);
    };
    let mode = ScanMode::Exhaustive;
    let one = alg.one();
    let zero = alg.zero();

    let mut e1 = None;
    'outer: for a in alg.elements() {
        if d.sum(zero, a) != Some(a) {
            e1 = Some(format!("0 ⊕ {} ≠ {}", lbl(alg, a), lbl(alg, a)));
            break;
        }
        for b in a + 1..alg.size() {
            if d.sum(a, b) != d.sum(b, a) {
                e1 = Some(format!("{} ⊕ {} differs from reversed sum", lbl(alg, a), lbl(alg, b)));
                break 'outer;
            }
        }
    }
    report.push(NAMES[0], mode, e1);

    report.push(NAMES[1], mode, associativity(alg, &d));

    let mut e3 = None;
    let mut unique = None;
    for a in alg.elements() {
        let sups: Vec<usize> = d.partners[a]
            .iter()
            .map(|&b| b as usize)
            .filter(|&b| d.sum(a, b) == Some(one))
            .collect();
        if sups.is_empty() && e3.is_none() {
            e3 = Some(format!("{} has no orthosupplement", lbl(alg, a)));
        }
        if sups.len() > 1 && unique.is_none() {
            unique = Some(format!(
                "{} has orthosupplements {} and {}",
                lbl(alg, a),
                lbl(alg, sups[0]),
                lbl(alg, sups[1])
            ));
        }
    }
    report.push(NAMES[2], mode, e3);

    let e4 = alg
        .elements()
        .find(|&a| a != zero && d.sum(a, one).is_some())
        .map(|a| format!("{} ⊕ 1 is defined", lbl(alg, a)));
    report.push(NAMES[3], mode, e4);
    report.push(NAMES[4], mode, unique);

    let canc = cancellation(&d);
    report.push(
        NAMES[5],
        mode,
        canc.map(|(a, b, c)| {
            format!("{} ⊕ {} = {} ⊕ {}", lbl(alg, a), lbl(alg, c), lbl(alg, b), lbl(alg, c))
        }),
    );
}

fn cancellation(d: &Dense) -> Option<(usize, usize, usize)> {
    let mut seen = vec![UNDEFINED; d.n];
    for c in 0..d.n {
        seen.fill(UNDEFINED);
        for &a in &d.partners[c] {
            let s = d.sum(c, a as usize).unwrap();
            if seen[s] != UNDEFINED {
                return Some((seen[s] as usize, a as usize, c));
            }
            seen[s] = a;
        }
    }
    None
}

fn assoc_witness(alg: &FiniteAlgebra, a: usize, b: usize, c: usize) -> String {
    format!(
        "({} ⊕ {}) ⊕ {} defined but {} ⊕ ({} ⊕ {}) is not equal",
        lbl(alg, a),
        lbl(alg, b),
        lbl(alg, c),
        lbl(alg, a),
        lbl(alg, b),
        lbl(alg, c)
    )
}

fn assoc_triple(alg: &FiniteAlgebra, a: usize, b: usize, c: usize) -> Option<String> {
    let ab = alg.raw_sum(a, b)?;
    let abc = alg.raw_sum(ab, c)?;
    match alg.raw_sum(b, c).and_then(|bc| alg.raw_sum(a, bc)) {
        Some(x) if x == abc => None,
        _ => Some(assoc_witness(alg, a, b, c)),
    }
}

fn associativity(alg: &FiniteAlgebra, d: &Dense) -> Option<String> {
    for a in 0..d.n {
        for &b in &d.partners[a] {
            let b = b as usize;
            let ab = d.sum(a, b).unwrap();
            for &c in &d.partners[ab] {
                let c = c as usize;
                let abc = d.sum(ab, c);
                if d.sum(b, c).and_then(|bc| d.sum(a, bc)) != abc {
                    return Some(assoc_witness(alg, a, b, c));
                }
            }
        }
    }
    None
}

fn random_partner(alg: &FiniteAlgebra, rng: &mut ChaCha8Rng, a: usize) -> usize {
    let x = rng.random_range(0..alg.size());
    alg.try_ortho(a)
        .and_then(|o| alg.meet(x, o))
        .unwrap_or(x)
}

fn sampled_checks(alg: &FiniteAlgebra, budget: &Budget, report: &mut Report) {
    let mode = ScanMode::Sampled(budget.samples);
    let mut rng = budget.rng(0xa1);
    let one = alg.one();
    let (mut e1, mut e2, mut e3, mut e4, mut uniq, mut canc) = (None, None, None, None, None, None);
    for _ in 0..budget.samples {
        let a = rng.random_range(0..alg.size());
        let b = random_partner(alg, &mut rng, a);
        if e1.is_none() && alg.raw_sum(a, b) != alg.raw_sum(b, a) {
            e1 = Some(format!("{} ⊕ {} differs from reversed sum", lbl(alg, a), lbl(alg, b)));
        }
        if let Some(ab) = alg.raw_sum(a, b) {
            let c = random_partner(alg, &mut rng, ab);
            if e2.is_none() {
                e2 = assoc_triple(alg, a, b, c);
            }
        }
        match alg.try_ortho(a) {
            Some(o) if alg.raw_sum(a, o) == Some(one) => {
                if uniq.is_none() && alg.try_ortho(o) != Some(a) {
                    uniq = Some(format!("orthosupplement of {} is not involutive", lbl(alg, a)));
                }
            }
            _ => {
                if e3.is_none() {
                    e3 = Some(format!("{} has no orthosupplement", lbl(alg, a)));
                }
            }
        }
        if e4.is_none() && a != alg.zero() && alg.raw_sum(a, one).is_some() {
            e4 = Some(format!("{} ⊕ 1 is defined", lbl(alg, a)));
        }
        let c = rng.random_range(0..alg.size());
        let x = random_partner(alg, &mut rng, c);
        let y = random_partner(alg, &mut rng, c);
        if canc.is_none() && x != y {
            if let (Some(s), Some(t)) = (alg.raw_sum(x, c), alg.raw_sum(y, c)) {
                if s == t {
                    canc = Some(format!(
                        "{} ⊕ {} = {} ⊕ {}",
                        lbl(alg, x),
                        lbl(alg, c),
                        lbl(alg, y),
                        lbl(alg, c)
                    ));
                }
            }
        }
    }
    for (name, w) in NAMES.iter().zip([e1, e2, e3, e4, uniq, canc]) {
        report.push(*name, mode, w);
    }
}
