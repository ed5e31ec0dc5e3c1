use ea_core::algebra::state::Q;
use ea_core::instances::{closed_form_mv_resolution, make_boolean, make_matrix, make_mv_product};
use ea_core::spectral::*;
use ea_core::{CompressionBase, EffectAlgebra, FiniteBase, State};

fn mv(cb: &FiniteBase, digits: &[u32]) -> usize {
    cb.algebra().mv_element(digits).unwrap()
}

fn d(m: u64, l: u32) -> Dyadic {
    Dyadic::new(m, l).unwrap()
}

#[test]
fn string_calc_examples() {
    let w = BinaryString::parse("101").unwrap();
    let c = string_calc(&w);
    assert_eq!(c.lambda, d(5, 3));
    assert_eq!((c.k, c.l), (5, 3));
    assert_eq!(c.succ.unwrap().to_string(), "110");
    assert_eq!(c.pred.unwrap().to_string(), "100");

    let e = string_calc(&BinaryString::empty());
    assert_eq!((e.lambda, e.k, e.l), (Dyadic::zero(), 0, 0));

    let top = string_calc(&BinaryString::parse("11").unwrap());
    assert!(top.succ.is_none());
    assert_eq!(top.lambda_succ, Dyadic::one());
    let bottom = string_calc(&BinaryString::parse("00").unwrap());
    assert!(bottom.pred.is_none());
    assert_eq!(bottom.lambda_pred, Dyadic::zero());
}

#[test]
fn dyadics_are_canonical() {
    assert_eq!(d(4, 3), d(1, 1));
    assert_eq!(d(0, 5).level(), 0);
    assert_eq!(d(8, 3), Dyadic::one());
    assert!(Dyadic::new(9, 3).is_err());
    assert!(d(3, 3) < d(1, 1));
    assert_eq!(d(3, 2).parent_string().unwrap().to_string(), "1");
    assert_eq!(Dyadic::from_ratio(Q::new(6, 16)), Some(d(3, 3)));
    assert_eq!(Dyadic::from_ratio(Q::new(1, 3)), None);
}

#[test]
fn splitting_tree_example() {
    let cb = make_mv_product(8, 3).unwrap();
    let a = mv(&cb, &[2, 4, 7]);
    let t = splitting_tree(&*cb, &a, 2).unwrap();
    let u = |s: &str| t.u(&BinaryString::parse(s).unwrap());
    assert_eq!(u("00"), mv(&cb, &[8, 0, 0]));
    assert_eq!(u("01"), mv(&cb, &[0, 8, 0]));
    assert_eq!(u("10"), mv(&cb, &[0, 0, 0]));
    assert_eq!(u("11"), mv(&cb, &[0, 0, 8]));
    // 4·(4/8) - 1 = 1 on the second coordinate
    assert_eq!(t.c(&BinaryString::parse("01").unwrap()), mv(&cb, &[0, 8, 0]));
    // 4·(2/8) - 0 = 1 and 4·(7/8) - 3 = 1/2
    assert_eq!(t.c(&BinaryString::parse("00").unwrap()), mv(&cb, &[8, 0, 0]));
    assert_eq!(t.c(&BinaryString::parse("11").unwrap()), mv(&cb, &[0, 0, 4]));

    let z = splitting_tree(&*cb, &0, 3).unwrap();
    for n in 0..=3 {
        assert!(z.layer(n).is_empty());
    }
}

#[test]
fn closed_form_example() {
    let cb = make_mv_product(8, 3).unwrap();
    let alg = cb.algebra();
    let a = mv(&cb, &[2, 4, 7]);
    let t1 = closed_form_mv_resolution(alg, a, 1).unwrap();
    assert_eq!(t1.u(&BinaryString::parse("0").unwrap()), mv(&cb, &[8, 8, 0]));
    assert_eq!(t1.u(&BinaryString::parse("1").unwrap()), mv(&cb, &[0, 0, 8]));
    let t2 = closed_form_mv_resolution(alg, a, 2).unwrap();
    assert_eq!(t2.u(&BinaryString::parse("10").unwrap()), alg.zero());
    assert_eq!(t2.u(&BinaryString::parse("01").unwrap()), mv(&cb, &[0, 8, 0]));
    let z = closed_form_mv_resolution(alg, alg.zero(), 3).unwrap();
    assert!((0..=3).all(|n| z.layer(n).is_empty()));
}

#[test]
fn binary_resolution_mv_example() {
    let cb = make_mv_product(8, 3).unwrap();
    let a = mv(&cb, &[2, 4, 7]);
    let r = binary_resolution(&*cb, &a, 16).unwrap();
    assert_eq!(r.get(d(1, 2)).unwrap(), mv(&cb, &[8, 0, 0]));
    assert_eq!(r.get(d(1, 1)).unwrap(), mv(&cb, &[8, 8, 0]));
    assert_eq!(r.get(d(3, 2)).unwrap(), mv(&cb, &[8, 8, 0]));
    assert_eq!(r.get(Dyadic::zero()).unwrap(), cb.algebra().zero());
    assert_eq!(r.get(Dyadic::one()).unwrap(), cb.algebra().one());
    // χ_{a ≤ λ} coordinatewise
    for (l, p) in r.entries().step_by(97) {
        let want: Vec<u32> = [2u32, 4, 7]
            .iter()
            .map(|&x| if Q::new(x as i64, 8) <= l.to_ratio() { 8 } else { 0 })
            .collect();
        assert_eq!(p, mv(&cb, &want), "λ = {l}");
    }
}

#[test]
fn binary_resolution_boolean_example() {
    let cb = make_boolean(3).unwrap();
    let a = 0b101;
    let r = binary_resolution(&*cb, &a, 6).unwrap();
    for (l, p) in r.entries() {
        if l.is_one() {
            assert_eq!(p, 0b111);
        } else {
            assert_eq!(p, 0b010, "λ = {l}");
        }
    }
}

#[test]
fn binary_resolution_matrix_example() {
    let m = make_matrix(2).unwrap();
    let a = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    let r = binary_resolution(&m, &a, 8).unwrap();
    let anti = m.element(&[0.5, -0.5, -0.5, 0.5]).unwrap();
    assert!(m.same(&r.get(d(1, 2)).unwrap(), &anti));
    assert!(m.same(&r.get(d(1, 1)).unwrap(), &anti));
    assert!(m.same(&r.get(d(3, 2)).unwrap(), &m.one()));
    assert!(m.same(&r.get(d(1, 3)).unwrap(), &m.zero()));
}

#[test]
fn rational_resolution_examples() {
    let cb = make_mv_product(8, 3).unwrap();
    let a = mv(&cb, &[2, 4, 7]);
    let third = rational_resolution(&*cb, &a, Q::new(1, 3), 16).unwrap();
    assert_eq!(third.projection, mv(&cb, &[8, 0, 0]));
    assert!(third.stable);
    let one = rational_resolution(&*cb, &a, Q::from_integer(1), 16).unwrap();
    assert_eq!(one.projection, cb.algebra().one());
    let r = binary_resolution(&*cb, &a, 12).unwrap();
    for l in [d(1, 2), d(3, 8), d(7, 8), Dyadic::zero()] {
        let v = rational_resolution(&*cb, &a, l.to_ratio(), 12).unwrap();
        assert_eq!(v.projection, r.get(l).unwrap(), "λ = {l}");
    }
    assert!(rational_resolution(&*cb, &a, Q::new(3, 2), 8).is_err());
}

#[test]
fn rational_resolution_reports_instability() {
    // at depth 3 the first dyadic above 1/3 is 3/8, which still contains 3/8
    let cb = make_mv_product(8, 1).unwrap();
    let a = mv(&cb, &[3]);
    assert_eq!(
        rational_resolution(&*cb, &a, Q::new(1, 3), 5).unwrap_err(),
        ea_core::Error::Unstable(5)
    );
}

#[test]
fn apply_fw_examples() {
    let cb = make_mv_product(8, 1).unwrap();
    let x = |n: u32| mv(&cb, &[n]);
    let one = cb.algebra().one();
    let f0 = BinaryString::parse("0").unwrap();
    let f1 = BinaryString::parse("1").unwrap();
    let f01 = BinaryString::parse("01").unwrap();
    assert_eq!(apply_fw(&*cb, &f0, &x(3), &one), Some(x(6)));
    assert_eq!(apply_fw(&*cb, &f1, &x(3), &one), None);
    assert_eq!(apply_fw(&*cb, &f01, &x(2), &one), Some(x(0)));
    assert_eq!(apply_fw(&*cb, &BinaryString::empty(), &x(5), &one), Some(x(5)));
}

#[test]
fn verify_accepts_the_resolution_and_rejects_others() {
    let cb = make_mv_product(8, 3).unwrap();
    let a = mv(&cb, &[2, 4, 7]);
    let fam = binary_resolution(&*cb, &a, 4).unwrap().to_family();
    let ok = verify_resolution(&*cb, &a, &fam);
    assert!(ok.passed(), "{ok}");

    // p_{3/4} set to 1 early
    let mut early = fam.clone();
    early.values[12] = cb.algebra().one();
    let rep = verify_resolution(&*cb, &a, &early);
    assert!(!rep.check(CLAUSES[3]).unwrap().passed, "{rep}");

    let b = mv(&cb, &[2, 5, 7]);
    assert!(!verify_resolution(&*cb, &b, &fam).passed());
}

#[test]
fn cover_clause_separates_boundary_values() {
    // a = 2/8: moving the jump from 1/4 to 1/2 keeps every f_w defined
    let cb = make_mv_product(8, 1).unwrap();
    let a = mv(&cb, &[2]);
    let fam = binary_resolution(&*cb, &a, 2).unwrap().to_family();
    assert_eq!(fam.values, vec![0, 8, 8, 8, 8]);
    let shifted = DyadicFamily { depth: 2, values: vec![0, 0, 8, 8, 8] };
    let rep = verify_resolution(&*cb, &a, &shifted);
    assert!(rep.check(CLAUSES[3]).unwrap().passed);
    assert!(!rep.check(CLAUSES[2]).unwrap().passed);
}

#[test]
fn expectation_examples() {
    let cb = make_mv_product(8, 3).unwrap();
    let alg = cb.algebra();
    let s = State::coordinate_average(alg).unwrap();
    let a = mv(&cb, &[2, 4, 7]);
    assert_eq!(s.value(a), Q::new(13, 24));
    let (lo, hi) = expectation_bounds(&cb, a, &s, 2).unwrap();
    assert_eq!((lo, hi), (Q::new(1, 3), Q::new(1, 3) + Q::new(1, 4)));
    assert_eq!(expectation_bounds(&cb, 0, &s, 3).unwrap(), (Q::from_integer(0), Q::new(1, 8)));
    assert_eq!(
        expectation_bounds(&cb, alg.one(), &s, 3).unwrap(),
        (Q::new(7, 8), Q::from_integer(1))
    );
    let other = make_mv_product(4, 1).unwrap();
    let wrong = State::coordinate_average(other.algebra()).unwrap();
    assert!(matches!(
        expectation_bounds(&cb, a, &wrong, 2),
        Err(ea_core::Error::InvalidState(_))
    ));
}

#[test]
fn commutes_iff_spectrum_examples() {
    let cb = make_mv_product(8, 3).unwrap();
    let alg = cb.algebra();
    let s = State::coordinate_average(alg).unwrap();
    let states = [|x: &usize| {
        let v = s.value(*x);
        *v.numer() as f64 / *v.denom() as f64
    }];
    for &a in &[mv(&cb, &[2, 4, 7]), mv(&cb, &[1, 0, 8])] {
        for &q in cb.projections() {
            let rep = commutes_iff_spectrum(&*cb, &a, &q, 6, &states).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(cb.in_commutant(&a, &q));
        }
    }

    let m = make_matrix(2).unwrap();
    let a = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    let rho = m.element(&[0.7, 0.1, 0.1, 0.3]).unwrap();
    let tr = |x: &ea_core::matrix::Mat| ea_core::matrix::MatrixAlgebra::trace_state(&rho, x);
    let q = m.element(&[1.0, 0.0, 0.0, 0.0]).unwrap();
    let rep = commutes_iff_spectrum(&m, &a, &q, 6, &[tr]).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(!m.in_commutant(&a, &q));
    let q = m.element(&[0.5, 0.5, 0.5, 0.5]).unwrap();
    let rep = commutes_iff_spectrum(&m, &a, &q, 6, &[tr]).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(m.in_commutant(&a, &q));
    assert!(rep.check("s(a) = s(J_q(a)) + s(J_q'(a))").is_some());
}
