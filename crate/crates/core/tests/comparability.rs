use ea_core::comparability::*;
use ea_core::compbase::validate_base;
use ea_core::instances::{make_boolean, make_matrix, make_mo2, make_mv_product};
use ea_core::{Budget, CompressionBase, EffectAlgebra};

#[test]
fn b_property_examples() {
    let l = make_mv_product(8, 3).unwrap();
    assert!(all_b(&l).is_ok());
    let b = make_boolean(3).unwrap();
    for &q in b.projections() {
        assert!(has_b_property(&b, q));
        let mut pq = b.bicommutant_set(&[q]);
        pq.sort_unstable();
        let mut want = vec![0, q, 7 ^ q, 7];
        want.sort_unstable();
        want.dedup();
        // P(q) contains the Boolean certificate {0, q, q', 1}
        assert!(want.iter().all(|x| pq.contains(x)));
    }
    let m = make_matrix(2).unwrap();
    let a = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    assert!(m.has_b_property(&a).unwrap());
}

#[test]
fn commute_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let alg = l.algebra();
    for (x, y) in [(0, 728), (100, 300), (5, 5)] {
        assert!(commute(&l, x, y).unwrap());
    }
    for a in [13, 400] {
        assert!(commute(&l, a, alg.ortho(&a)).unwrap());
    }

    let m = make_matrix(2).unwrap();
    let d1 = m.element(&[0.25, 0.0, 0.0, 0.75]).unwrap();
    let d2 = m.element(&[0.5, 0.0, 0.0, 0.1]).unwrap();
    let off = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    assert!(m.commute(&d1, &d2).unwrap());
    assert!(!m.commute(&d1, &off).unwrap());
    assert!(m.commute(&off, &m.ortho(&off)).unwrap());
}

#[test]
fn p_le_set_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let alg = l.algebra();
    let e = alg.mv_element(&[2, 4, 7]).unwrap();
    let f = alg.mv_element(&[4, 4, 4]).unwrap();
    let set = p_le_set(&l, e, f).unwrap();
    assert!(set.contains(&alg.mv_element(&[8, 8, 0]).unwrap()));
    assert!(set.contains(&alg.mv_element(&[8, 0, 0]).unwrap()));
    assert!(!set.contains(&alg.one()));

    let b = make_boolean(3).unwrap();
    let (p, q) = (0b011, 0b110);
    assert!(p_le_set(&b, p, q).unwrap().contains(&q));

    for e in [p, q, 0b101] {
        let mut s = p_le_set(&b, e, e).unwrap();
        s.sort_unstable();
        let mut pe = b.bicommutant_set(&[e]);
        pe.sort_unstable();
        assert_eq!(s, pe);
    }
}

#[test]
fn check_b_comparability_examples() {
    let budget = Budget::from_env();
    assert!(check_b_comparability(&make_boolean(3).unwrap(), &budget).passed());
    assert!(is_spectral(&make_boolean(3).unwrap()));
    assert!(is_spectral(&make_mv_product(8, 3).unwrap()));
    let r = spectral_report(&make_mo2(), &budget);
    assert!(!r.passed());
    assert!(!r.check("P = E_S").unwrap().passed, "{r}");
}

#[test]
fn positive_part_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let alg = l.algebra();
    let b = alg.mv_element(&[4, 4, 4]).unwrap();
    let a = alg.mv_element(&[2, 4, 7]).unwrap();
    assert_eq!(positive_part(&l, b, a).unwrap(), alg.mv_element(&[2, 0, 0]).unwrap());
    assert_eq!(positive_part(&l, a, a).unwrap(), alg.zero());

    // coordinatewise max(b - a, 0) on the whole of L_4^2
    let l4 = make_mv_product(4, 2).unwrap();
    let alg = l4.algebra();
    for a in alg.elements() {
        for b in alg.elements() {
            let (da, db) = (alg.mv_digits(a), alg.mv_digits(b));
            let want: Vec<u32> = da.iter().zip(&db).map(|(x, y)| y.saturating_sub(*x)).collect();
            assert_eq!(positive_part(&l4, b, a).unwrap(), alg.mv_element(&want).unwrap());
        }
    }

    let bb = make_boolean(3).unwrap();
    for p in 0..8 {
        for q in 0..8 {
            assert_eq!(positive_part(&bb, q, p).unwrap(), q & !p & 7);
        }
    }
}

#[test]
fn matrix_positive_part() {
    let m = make_matrix(2).unwrap();
    let b = m.element(&[0.75, 0.0, 0.0, 0.25]).unwrap();
    let a = m.element(&[0.25, 0.0, 0.0, 0.5]).unwrap();
    let want = m.element(&[0.5, 0.0, 0.0, 0.0]).unwrap();
    assert!(m.same(&m.positive_part(&b, &a).unwrap(), &want));
}

#[test]
fn split_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let alg = l.algebra();
    let v = |d: &[u32]| alg.mv_element(d).unwrap();
    let s = split(&*l, &v(&[2, 4, 7]), &alg.one()).unwrap();
    assert_eq!(s.u0, v(&[8, 8, 0]));
    assert_eq!(s.u1, v(&[0, 0, 8]));
    assert_eq!(s.c0, v(&[4, 8, 0]));
    assert_eq!(s.c1, v(&[0, 0, 6]));
    assert_eq!(s.ambient_unit, alg.one());

    for &q in l.projections() {
        let s = split(&*l, &alg.zero(), &q).unwrap();
        assert_eq!((s.u0, s.u1, s.c0, s.c1), (q, 0, 0, 0));
        let s = split(&*l, &q, &q).unwrap();
        assert_eq!((s.u0, s.u1, s.c0, s.c1), (0, q, 0, q));
    }
    assert!(split(&*l, &alg.one(), &v(&[8, 0, 0])).is_err());
}

#[test]
fn restrict_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let q = l.algebra().mv_element(&[8, 8, 0]).unwrap();
    let r = restrict(l.clone(), q).unwrap();
    assert_eq!(r.algebra().size(), 81);
    assert_eq!(r.projections().len(), 4);
    assert!(validate_base(&r).passed());

    let full = restrict(l.clone(), l.algebra().one()).unwrap();
    assert_eq!(full.algebra().size(), 729);
    assert_eq!(full.projections().len(), 8);

    let b = make_boolean(3).unwrap();
    let r = restrict(b, 0b011).unwrap();
    assert_eq!(r.algebra().size(), 4);
    assert_eq!(r.projections().len(), 4);
    assert!(validate_base(&r).passed());
}

#[test]
fn comparability_invariants_scan() {
    let cb = make_mv_product(4, 2).unwrap();
    let alg = cb.algebra();
    for a in alg.elements() {
        let ao = alg.ortho(&a);
        let le_a = p_le_set(&cb, a, ao).unwrap();
        let le_ao = p_le_set(&cb, ao, a).unwrap();
        for &q in &le_a {
            assert!(le_ao.contains(&alg.ortho(&q)));
        }
        // ((a - a')_+°)' is the largest splitting projection
        let top = alg.ortho(&cb.cover(positive_part(&cb, a, ao).unwrap()).unwrap());
        assert!(le_a.contains(&top));
        for &q in &le_a {
            assert!(alg.leq(&q, &top));
        }
        for b in alg.elements() {
            assert_eq!(positive_part(&cb, b, a).unwrap() == 0, alg.leq(&b, &a));
        }
    }
}
