use super::dyadic::{BinaryString, Dyadic};
use super::resolution::{binary_resolution, DyadicFamily};
use crate::compbase::CompressionBase;
use crate::error::Result;
use crate::report::{Report, ScanMode};

/// `f_w(b)` inside `[0, q]`, or `None` once a step is undefined.
pub fn apply_fw<B: CompressionBase>(cb: &B, w: &BinaryString, b: &B::Elem, q: &B::Elem) -> Option<B::Elem> {
    let mut b = b.clone();
    for bit in w.bits() {
        let rest = cb.ominus(q, &b)?;
        b = if bit == 0 {
            if !cb.leq(&b, &rest) {
                return None;
            }
            cb.sum(&b, &b)?
        } else {
            if !cb.leq(&rest, &b) {
                return None;
            }
            cb.ominus(q, &cb.sum(&rest, &rest)?)?
        };
    }
    Some(b)
}

/// Checks a candidate family against the characterization of the binary
/// resolution of `a`.
pub fn verify_resolution<B: CompressionBase>(cb: &B, a: &B::Elem, family: &DyadicFamily<B::Elem>) -> Report {
    let mut report = Report::new(format!("resolution of {}", cb.describe(a)));
    let n = family.depth;
    let mode = ScanMode::Exhaustive;
    let expected = (1usize << n) + 1;
    if family.values.len() != expected {
        let msg = format!("family has {} entries, expected {expected}", family.values.len());
        for name in CLAUSES {
            report.fail(name, mode, msg.clone());
        }
        return report;
    }
    let p = |l: Dyadic| family.get(l).expect("level within depth");

    let w1 = Dyadic::all_up_to(n).find_map(|l| {
        let x = p(l);
        if !cb.is_projection(x) {
            Some(format!("p_{l} = {} is not a projection", cb.describe(x)))
        } else if !cb.in_commutant(a, x) {
            Some(format!("a ∉ C(p_{l})"))
        } else {
            None
        }
    });
    report.push(CLAUSES[0], mode, w1);

    let mut w2 = None;
    if !cb.leq(p(Dyadic::zero()), &cb.ortho(a)) {
        w2 = Some("p_0 ≰ a'".to_string());
    } else if !cb.same(p(Dyadic::one()), &cb.one()) {
        w2 = Some("p_1 ≠ 1".to_string());
    } else {
        let mut prev: Option<Dyadic> = None;
        for l in Dyadic::all_up_to(n) {
            if let Some(m) = prev {
                if !cb.leq(p(m), p(l)) {
                    w2 = Some(format!("p_{m} ≰ p_{l}"));
                    break;
                }
            }
            prev = Some(l);
        }
    }
    report.push(CLAUSES[1], mode, w2);

    let mut w3 = None;
    let mut w4 = None;
    'outer: for len in 0..=n {
        for w in BinaryString::all_of_length(len) {
            let hi = p(w.lambda_succ());
            let lo = cb.ortho(p(w.lambda()));
            if !cb.is_projection(hi) || !cb.is_projection(&lo) {
                w4.get_or_insert_with(|| format!("u_{w} undefined: endpoints are not projections"));
                break 'outer;
            }
            let u = cb.meet_projections(hi, &lo);
            if cb.is_zero(&u) {
                continue;
            }
            if !cb.is_projection(&u) {
                w4.get_or_insert_with(|| format!("u_{w} = {} is not a projection", cb.describe(&u)));
                break 'outer;
            }
            match apply_fw(cb, &w, &cb.compress(&u, a), &u) {
                None => {
                    w4.get_or_insert_with(|| format!("f_{w}(J_u(a)) does not exist for u = {}", cb.describe(&u)));
                }
                Some(f) => match cb.projection_cover(&f) {
                    Ok(c) if cb.same(&c, &u) => {}
                    Ok(c) => {
                        w3.get_or_insert_with(|| {
                            format!("cover of f_{w}(J_u(a)) is {}, not u = {}", cb.describe(&c), cb.describe(&u))
                        });
                    }
                    Err(e) => {
                        w3.get_or_insert_with(|| e.to_string());
                    }
                },
            }
            if w3.is_some() && w4.is_some() {
                break 'outer;
            }
        }
    }
    report.push(CLAUSES[2], mode, w3);
    report.push(CLAUSES[3], mode, w4);
    report
}

pub const CLAUSES: [&str; 4] = [
    "(i) p_λ ∈ PC(a)",
    "(ii) p_0 ≤ a', p_1 = 1, monotone",
    "(iii) right-continuity at depth n",
    "(iv) f_w(J_u_w(a)) exists",
];

/// `a ∈ C(q)` against `p_{a,λ} ∈ C(q)` for every dyadic `λ` of level at most
/// `n`, plus `s(a) = s(J_q(a)) + s(J_q'(a))` for the given states when the
/// spectral side holds.
pub fn commutes_iff_spectrum<B, S>(cb: &B, a: &B::Elem, q: &B::Elem, n: u32, states: &[S]) -> Result<Report>
where
    B: CompressionBase,
    S: Fn(&B::Elem) -> f64,
{
    let res = binary_resolution(cb, a, n)?;
    let lhs = cb.in_commutant(a, q);
    let rhs = res.entries().all(|(_, p)| cb.in_commutant(&p, q));
    let mut report = Report::new(format!("{} commutes with {}", cb.describe(a), cb.describe(q)));
    report.push(
        "a ∈ C(q) iff every p_λ ∈ C(q)",
        ScanMode::Exhaustive,
        (lhs != rhs).then(|| format!("a ∈ C(q) is {lhs}, spectral side is {rhs}")),
    );
    if rhs {
        let qo = cb.ortho(q);
        let (x, y) = (cb.compress(q, a), cb.compress(&qo, a));
        let tol = 1e-9_f64.max(cb.tolerance() * 10.0);
        let w = states.iter().enumerate().find_map(|(i, s)| {
            let (l, r) = (s(a), s(&x) + s(&y));
            ((l - r).abs() > tol).then(|| format!("state #{i}: s(a) = {l}, s(J_q a) + s(J_q' a) = {r}"))
        });
        report.push("s(a) = s(J_q(a)) + s(J_q'(a))", ScanMode::Sampled(states.len()), w);
    }
    Ok(report)
}
