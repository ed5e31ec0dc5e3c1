//! Relations derived from the partial sum on finite carriers.

use super::{EffectAlgebra, FiniteAlgebra};

/// Greatest lower bound by scanning all common lower bounds.
pub fn meet_brute_force(alg: &FiniteAlgebra, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = alg
        .elements()
        .filter(|x| alg.leq(x, &a) && alg.leq(x, &b))
        .collect();
    let mut top = *lower.first()?;
    for &x in &lower[1..] {
        if alg.leq(&top, &x) {
            top = x;
        }
    }
    lower.iter().all(|x| alg.leq(x, &top)).then_some(top)
}

/// `{a : a ∧ a' = 0}`.
pub fn sharp_elements(alg: &FiniteAlgebra) -> Vec<usize> {
    alg.elements()
        .filter(|&a| alg.try_ortho(a).and_then(|o| alg.meet(a, o)) == Some(alg.zero()))
        .collect()
}

/// `x, y ≤ a` and `x ⊥ y` imply `x ⊕ y ≤ a`.
pub fn is_principal(alg: &FiniteAlgebra, a: usize) -> bool {
    let below = alg.below(a);
    below.iter().all(|x| {
        below
            .iter()
            .all(|y| alg.sum(x, y).is_none_or(|s| alg.leq(&s, &a)))
    })
}

/// A witness `(a₁, b₁, c)` with `a = a₁ ⊕ c`, `b = b₁ ⊕ c` and `a₁ ⊕ b₁ ⊕ c` defined.
pub fn mackey_compatible(alg: &FiniteAlgebra, a: usize, b: usize) -> Option<(usize, usize, usize)> {
    alg.below(a)
        .into_iter()
        .filter(|c| alg.leq(c, &b))
        .find_map(|c| {
            let a1 = alg.ominus(&a, &c)?;
            let b1 = alg.ominus(&b, &c)?;
            let ab = alg.sum(&a1, &b1)?;
            alg.sum(&ab, &c)?;
            Some((a1, b1, c))
        })
}

/// Two distinct elements `e ≠ f` with `2e = 2f = 1`.
pub fn torsion_witness(alg: &FiniteAlgebra) -> Option<(usize, usize)> {
    let halves: Vec<usize> = alg
        .elements()
        .filter(|&e| alg.sum(&e, &e) == Some(alg.one()))
        .collect();
    (halves.len() >= 2).then(|| (halves[0], halves[1]))
}

/// `na ≤ 1` for every `n` forces `a = 0`. On a finite carrier a nonzero
/// element whose multiples never run out would repeat, so `size` steps suffice.
pub fn is_archimedean(alg: &FiniteAlgebra) -> bool {
    alg.elements().filter(|&a| a != alg.zero()).all(|a| {
        let mut acc = a;
        for _ in 0..alg.size() {
            match alg.raw_sum(acc, a) {
                Some(next) => acc = next,
                None => return true,
            }
        }
        false
    })
}
