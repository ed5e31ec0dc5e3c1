use ea_core::algebra::*;
use ea_core::instances::{make_boolean, make_matrix, make_mo2, make_mv_product};
use ea_core::EffectAlgebra;
use std::sync::Arc;

/// The three-element chain `{0, h, 1}` with `h ⊕ h = 1`, plus extra triples.
fn chain3(extra: &[(usize, usize, usize)]) -> FiniteAlgebra {
    let mut t = vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)];
    t.extend_from_slice(extra);
    FiniteAlgebra::table(3, 0, 2, &t, Some(vec!["0".into(), "h".into(), "1".into()])).unwrap()
}

#[test]
fn partial_sum_examples() {
    let b = FiniteAlgebra::boolean(2).unwrap();
    assert_eq!(b.partial_sum(0b01, 0b10).unwrap(), Some(0b11));
    assert_eq!(b.partial_sum(0b01, 0b01).unwrap(), None);

    let l8 = FiniteAlgebra::mv_product(8, 1).unwrap();
    let x = |n| l8.mv_element(&[n]).unwrap();
    assert_eq!(l8.partial_sum(x(3), x(6)).unwrap(), None);

    let l = FiniteAlgebra::mv_product(8, 3).unwrap();
    let a = l.mv_element(&[2, 4, 7]).unwrap();
    let ao = l.mv_element(&[6, 4, 1]).unwrap();
    assert_eq!(l.ortho(&a), ao);
    assert_eq!(l.partial_sum(a, ao).unwrap(), Some(l.one()));
    assert!(matches!(l.partial_sum(a, 10_000), Err(ea_core::Error::ElementNotInCarrier(_))));
}

#[test]
fn order_examples() {
    let l8 = FiniteAlgebra::mv_product(8, 1).unwrap();
    let x = |n| l8.mv_element(&[n]).unwrap();
    assert!(l8.leq(&x(2), &x(5)));
    assert_eq!(l8.ominus(&x(5), &x(2)), Some(x(3)));
    assert_eq!(l8.ominus(&x(2), &x(5)), None);

    let m = make_matrix(2).unwrap();
    let a = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    assert!(m.leq(&a, &a));
    assert!(m.leq(&m.zero(), &a) && m.leq(&a, &m.one()));
}

#[test]
fn validate_axioms_examples() {
    assert!(validate_axioms(&FiniteAlgebra::boolean(3).unwrap()).passed());
    assert!(validate_axioms(&FiniteAlgebra::mv_product(8, 3).unwrap()).passed());
    assert!(validate_axioms(&chain3(&[])).passed());

    let bad = chain3(&[(1, 2, 2), (2, 1, 2)]);
    let r = validate_axioms(&bad);
    let e4 = r.check("E4 zero-one law").unwrap();
    assert!(!e4.passed);
    assert!(e4.witness.as_ref().unwrap().contains('h'), "{r}");
}

#[test]
fn broken_sum_tables_are_reported() {
    // L_4 with 1/4 ⊕ 3/4 removed: (1 ⊕ 1) ⊕ 2 = 4 but 1 ⊕ (1 ⊕ 2) is undefined
    let l4 = FiniteAlgebra::mv_product(4, 1).unwrap();
    let triples: Vec<_> = l4
        .sum_triples()
        .into_iter()
        .filter(|&(a, b, _)| (a, b) != (1, 3) && (a, b) != (3, 1))
        .collect();
    let t = FiniteAlgebra::table(5, 0, 4, &triples, None).unwrap();
    let r = validate_axioms(&t);
    assert!(!r.check("E2 associativity").unwrap().passed, "{r}");
    assert!(r.check("E1 commutativity").unwrap().passed);

    // one-sided sum
    let one_sided: Vec<_> = l4.sum_triples().into_iter().filter(|&t| t != (2, 1, 3)).collect();
    let t = FiniteAlgebra::table(5, 0, 4, &one_sided, None).unwrap();
    assert!(!validate_axioms(&t).check("E1 commutativity").unwrap().passed);
}

#[test]
fn sharp_and_principal_examples() {
    let l = FiniteAlgebra::mv_product(8, 3).unwrap();
    let sharp = sharp_elements(&l);
    assert_eq!(sharp.len(), 8);
    assert!(sharp.iter().all(|&s| l.mv_digits(s).iter().all(|&d| d == 0 || d == 8)));

    let b = FiniteAlgebra::boolean(3).unwrap();
    assert_eq!(sharp_elements(&b).len(), 8);

    let mo2 = make_mo2();
    assert_eq!(mo2.algebra().size(), 6);
    assert_eq!(sharp_elements(mo2.algebra()).len(), 6);

    // principal elements are sharp
    for alg in [&l, &b, &**mo2.algebra()] {
        let sharp = sharp_elements(alg);
        for a in alg.elements() {
            if is_principal(alg, a) {
                assert!(sharp.contains(&a));
            }
        }
    }
    let half = l.mv_element(&[4, 0, 0]).unwrap();
    assert!(!is_principal(&l, half));
}

#[test]
fn mackey_examples() {
    let l = FiniteAlgebra::mv_product(4, 2).unwrap();
    for a in l.elements() {
        for b in l.elements() {
            let (a1, b1, c) = mackey_compatible(&l, a, b).expect("MV algebras are compatible");
            assert_eq!(l.sum(&a1, &c), Some(a));
            assert_eq!(l.sum(&b1, &c), Some(b));
            assert!(l.sum(&a1, &b1).and_then(|s| l.sum(&s, &c)).is_some());
        }
        assert!(mackey_compatible(&l, a, l.ortho(&a)).is_some());
    }

    let mo2 = make_mo2();
    let alg = mo2.algebra();
    let x = alg.inject(Side::Left, 1);
    let y = alg.inject(Side::Right, 1);
    assert!(mackey_compatible(alg, x, y).is_none());
    assert!(mackey_compatible(alg, x, alg.ortho(&x)).is_some());
}

#[test]
fn archimedean_examples() {
    assert!(is_archimedean(&FiniteAlgebra::mv_product(8, 3).unwrap()));
    assert!(is_archimedean(&FiniteAlgebra::boolean(3).unwrap()));
    assert!(is_archimedean(&chain3(&[])));
    assert!(make_matrix(3).unwrap().is_archimedean());
}

#[test]
fn derived_relation_scans() {
    let algs: Vec<Arc<FiniteAlgebra>> = vec![
        make_mv_product(4, 2).unwrap().algebra().clone(),
        make_boolean(3).unwrap().algebra().clone(),
        make_mo2().algebra().clone(),
    ];
    for alg in algs {
        for a in alg.elements() {
            assert_eq!(alg.ortho(&alg.ortho(&a)), a);
            for b in alg.elements() {
                assert_eq!(alg.leq(&a, &b), alg.leq(&alg.ortho(&b), &alg.ortho(&a)));
                assert_eq!(alg.orthogonal(&a, &b), alg.leq(&a, &alg.ortho(&b)));
            }
        }
    }
}

#[test]
fn states() {
    let l = FiniteAlgebra::mv_product(8, 3).unwrap();
    let s = State::coordinate_average(&l).unwrap();
    assert!(s.is_faithful(&l));
    let a = l.mv_element(&[2, 4, 7]).unwrap();
    assert_eq!(s.value(a), state::Q::new(13, 24));
    let bad = State::from_atom_values(&l, &[state::Q::new(1, 2); 3]);
    assert!(matches!(bad, Err(ea_core::Error::InvalidState(_))));
}

#[test]
fn torsion_in_a_horizontal_sum_only() {
    assert!(torsion_witness(&FiniteAlgebra::mv_product(8, 3).unwrap()).is_none());
    let l8 = Arc::new(FiniteAlgebra::mv_product(8, 1).unwrap());
    let h = FiniteAlgebra::horizontal_sum(l8.clone(), l8).unwrap();
    let (e, f) = torsion_witness(&h).unwrap();
    assert_ne!(e, f);
    assert_eq!(h.sum(&e, &e), Some(h.one()));
    assert_eq!(h.sum(&f, &f), Some(h.one()));
}
