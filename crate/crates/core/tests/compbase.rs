use ea_core::algebra::state::Q;
use ea_core::algebra::{FiniteAlgebra, Side};
use ea_core::compbase::*;
use ea_core::instances::{make_boolean, make_horizontal_sum, make_matrix, make_mo2, make_mv_product};
use ea_core::{Budget, CompressionBase, EffectAlgebra};
use std::sync::Arc;

fn budget() -> Budget {
    Budget::from_env()
}

#[test]
fn classify_examples() {
    let b = FiniteAlgebra::boolean(3).unwrap();
    let p = 0b011;
    let u: Vec<usize> = b.elements().map(|a| a & p).collect();
    assert_eq!(classify_map(&b, &u).unwrap(), MapClass::Compression(p));
    assert_eq!(classify_map(&b, &vec![0; 8]).unwrap(), MapClass::Compression(0));
    assert!(matches!(classify_map(&b, &[0, 1]), Err(ea_core::Error::DomainMismatch(_))));

    // J_(p,0)(x) = φ(x)·p on MO2 with φ the {0,1}-valued, non-faithful state
    let mo2 = make_mo2();
    let alg = mo2.algebra();
    let p = alg.inject(Side::Left, 0b01);
    let j: Vec<usize> = alg
        .elements()
        .map(|x| match alg.origin(x) {
            None if x == alg.zero() => alg.zero(),
            None => p,
            Some((Side::Left, y)) => alg.inject(Side::Left, y & 0b01),
            Some((Side::Right, y)) => if y & 0b01 == 1 { p } else { alg.zero() },
        })
        .collect();
    assert_eq!(classify_map(alg, &j).unwrap(), MapClass::Retraction(p));

    let not_additive: Vec<usize> = b.elements().map(|a| if a == 0 { 0 } else { 7 }).collect();
    assert!(matches!(classify_map(&b, &not_additive).unwrap(), MapClass::NotAdditive(..)));
}

#[test]
fn validate_base_examples() {
    assert!(validate_base(&make_mv_product(8, 3).unwrap()).passed());

    let l82 = make_mv_product(8, 2).unwrap();
    let l22 = Arc::new(FiniteBase::trivial(make_mv_product(2, 2).unwrap().algebra().clone()));
    let avg = [Q::new(1, 16), Q::new(1, 16)];
    let hs = make_horizontal_sum(&l82, &l22, &avg, &[Q::new(1, 8), Q::new(3, 8)]).unwrap();
    assert!(validate_base(&hs).passed());

    // swap J_p and J_p' for p = (1,0,0)
    let cb = make_mv_product(4, 2).unwrap();
    let alg = cb.algebra().clone();
    let p = alg.mv_element(&[4, 0]).unwrap();
    let po = alg.ortho(&p);
    let mut tables = cb.tables();
    let (i, j) = (cb.slot_of(p).unwrap(), cb.slot_of(po).unwrap());
    tables.swap(i, j);
    let broken = FiniteBase::from_tables(alg, cb.projections().to_vec(), tables, "swapped").unwrap();
    let r = validate_base(&broken);
    assert!(!r.check("(C1) compressions with focus p").unwrap().passed, "{r}");
}

#[test]
fn central_base_examples() {
    let b = make_boolean(3).unwrap();
    assert_eq!(b.projections().len(), 8);
    for &p in b.projections() {
        for a in b.algebra().elements() {
            assert_eq!(b.apply(p, a), p & a);
        }
    }
    let l = make_mv_product(8, 3).unwrap();
    let mut proj = l.projections().to_vec();
    proj.sort_unstable();
    let mut zero_one: Vec<usize> = (0..8u32)
        .map(|m| l.algebra().mv_element(&[(m >> 2 & 1) * 8, (m >> 1 & 1) * 8, (m & 1) * 8]).unwrap())
        .collect();
    zero_one.sort_unstable();
    assert_eq!(proj, zero_one);
    let mo2 = make_mo2();
    let mut p = mo2.projections().to_vec();
    p.sort_unstable();
    assert_eq!(p, vec![mo2.algebra().zero(), mo2.algebra().one()]);
}

#[test]
fn commutant_examples() {
    let b = make_boolean(3).unwrap();
    for &p in b.projections() {
        assert_eq!(b.commutant(p).len(), 8);
    }
    for a in b.algebra().elements() {
        assert_eq!(b.bicommutant_set(&[a]).len(), 8);
    }

    let m = make_matrix(2).unwrap();
    let a = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    let pa = m.bicommutant(&a).unwrap();
    assert_eq!(pa.len(), 4);
    let e1 = m.element(&[0.5, 0.5, 0.5, 0.5]).unwrap();
    let e2 = m.element(&[0.5, -0.5, -0.5, 0.5]).unwrap();
    for want in [m.zero(), m.one(), e1, e2] {
        assert!(pa.iter().any(|p| m.same(p, &want)));
    }

    let mo2 = make_mo2();
    let atom = mo2.algebra().inject(Side::Left, 1);
    let mut pc = mo2.pc(atom);
    pc.sort_unstable();
    assert_eq!(pc, vec![0, 1]);
}

#[test]
fn five_way_lemma_scan() {
    for cb in [make_mv_product(4, 2).unwrap(), make_boolean(3).unwrap()] {
        let alg = cb.algebra();
        for &p in cb.projections() {
            for a in alg.elements() {
                let j = cb.apply(p, a);
                let in_c = cb.in_c(a, p);
                assert_eq!(in_c, alg.leq(&j, &a));
                assert_eq!(in_c, alg.meet(p, a) == Some(j));
            }
        }
    }
}

#[test]
fn compressions_commute_iff_compatible() {
    let cb = make_mv_product(4, 2).unwrap();
    let alg = cb.algebra();
    for &p in cb.projections() {
        for &q in cb.projections() {
            let pq = cb.apply(p, q);
            let commute = alg
                .elements()
                .all(|a| cb.apply(p, cb.apply(q, a)) == cb.apply(q, cb.apply(p, a)) && cb.apply(p, cb.apply(q, a)) == cb.apply(pq, a));
            assert_eq!(commute, cb.projections_compatible(p, q));
        }
    }
}

#[test]
fn block_examples() {
    let b = make_boolean(3).unwrap();
    let bl = blocks(&b).unwrap();
    assert_eq!(bl.len(), 1);
    assert_eq!(c_block(&b, &bl[0]).len(), 8);

    let l = make_mv_product(8, 3).unwrap();
    let bl = blocks(&l).unwrap();
    assert_eq!(bl.len(), 1);
    assert_eq!(bl[0].len(), 8);
    assert_eq!(c_block(&l, &bl[0]).len(), 729);
}

#[test]
fn projection_cover_examples() {
    let l = make_mv_product(8, 3).unwrap();
    let a = l.algebra().mv_element(&[2, 4, 7]).unwrap();
    assert_eq!(l.cover(a).unwrap(), l.algebra().one());
    let b = make_boolean(3).unwrap();
    for a in b.algebra().elements() {
        assert_eq!(b.cover(a).unwrap(), a);
    }
    let m = make_matrix(2).unwrap();
    let d = m.element(&[0.5, 0.0, 0.0, 0.0]).unwrap();
    let want = m.element(&[1.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(m.same(&m.projection_cover(&d).unwrap(), &want));
    let full = m.element(&[0.5, 0.25, 0.25, 0.5]).unwrap();
    assert!(m.same(&m.projection_cover(&full).unwrap(), &m.one()));

    // central base on 2^2 built by hand
    let alg = Arc::new(FiniteAlgebra::boolean(2).unwrap());
    let id: Vec<usize> = (0..4).collect();
    let tables = vec![vec![0; 4], id, (0..4).map(|a| a & 1).collect(), (0..4).map(|a| a & 2).collect()];
    let cb = FiniteBase::from_tables(alg, vec![0, 3, 1, 2], tables, "full").unwrap();
    assert_eq!(cb.cover(1).unwrap(), 1);

    // cover lies in P(a) and is least
    for a in l.algebra().elements() {
        let c = l.cover(a).unwrap();
        assert!(l.algebra().leq(&a, &c));
        assert!(l.bicommutant_set(&[a]).contains(&c));
        for &q in l.projections() {
            if l.algebra().leq(&a, &q) {
                assert!(l.algebra().leq(&c, &q));
            }
        }
    }
}

#[test]
fn trivial_base_cover_is_one() {
    let alg = Arc::new(FiniteAlgebra::mv_product(2, 2).unwrap());
    let a = alg.mv_element(&[1, 0]).unwrap();
    let p = alg.mv_element(&[2, 0]).unwrap();
    let one = alg.one();
    let zero = alg.zero();
    let cb = FiniteBase::trivial(alg.clone());
    assert_eq!(cb.cover(a).unwrap(), one);
    assert!(cb.is_proj(zero) && !cb.is_proj(p));
}

#[test]
fn oml_examples() {
    let b = budget();
    for cb in [make_boolean(3).unwrap(), make_mv_product(8, 3).unwrap(), make_mo2()] {
        let r = check_oml(&cb, &b).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn cover_of_compressions_in_commutant() {
    // (b ∧ q)° = b° ∧ q for b ∈ C(q)
    let cb = make_mv_product(4, 2).unwrap();
    let alg = cb.algebra();
    for &q in cb.projections() {
        for b in alg.elements() {
            if cb.in_c(b, q) {
                let lhs = cb.cover(alg.meet(b, q).unwrap()).unwrap();
                let rhs = alg.meet(cb.cover(b).unwrap(), q).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
