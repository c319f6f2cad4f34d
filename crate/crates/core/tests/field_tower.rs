use mincodes::{Elem, FieldSpec, FieldTower, Level};
use proptest::prelude::*;

fn tower(p: u32, e: u32, m: u32) -> FieldTower {
    FieldTower::new(&FieldSpec::new(p, e, m)).unwrap()
}

#[test]
fn example_towers() {
    let t = tower(2, 2, 4);
    assert_eq!(t.size(), 256);
    assert_eq!(t.subfield(Level::Sub).len(), 4);
    let f3 = tower(3, 1, 1);
    for x in f3.elements() {
        assert_eq!(f3.trace_sub(x), x);
    }
    let t = tower(3, 1, 5);
    assert_eq!(t.elements().filter(|&x| t.trace_abs(x) == 0).count(), 81);
}

#[test]
fn hyperplanes_in_f243_have_81_elements() {
    let t = tower(3, 1, 5);
    for i in 0..t.order() {
        assert_eq!(t.hyperplane(t.pow_gamma(i)).unwrap().size(&t), 81);
    }
    assert!(t.hyperplane(Elem::ZERO).is_err());
}

#[test]
fn annihilator_edges() {
    let t = tower(2, 2, 3);
    assert_eq!(t.annihilator(&[Elem::ZERO]).dim(), 3);
    let all: Vec<Elem> = t.elements().collect();
    assert_eq!(t.annihilator(&all).dim(), 0);
}

#[test]
fn exp_log_round_trip() {
    for (p, e, m) in [(2, 2, 4), (3, 1, 5), (5, 1, 3), (3, 2, 3)] {
        let t = tower(p, e, m);
        for x in t.elements().skip(1) {
            assert_eq!(t.pow_gamma(t.log(x).unwrap() as u64), x);
        }
        assert_eq!(t.log(Elem::ZERO), None);
    }
}

#[test]
fn trace_linearity_and_surjectivity() {
    for (p, e, m) in [(3, 1, 5), (2, 2, 4), (3, 2, 2), (5, 1, 3)] {
        let t = tower(p, e, m);
        let fq = t.subfield(Level::Sub);
        let elems: Vec<Elem> = t.elements().collect();
        for &x in &elems {
            for &y in elems.iter().step_by(7) {
                assert_eq!(
                    t.trace_sub(t.add(x, y)),
                    t.add(t.trace_sub(x), t.trace_sub(y))
                );
            }
            for &l in &fq {
                assert_eq!(t.trace_sub(t.mul(l, x)), t.mul(l, t.trace_sub(x)));
            }
        }
        let per = t.size() / t.q();
        for &c in &fq {
            assert_eq!(
                elems.iter().filter(|&&x| t.trace_sub(x) == c).count() as u64,
                per
            );
        }
        let per_abs = t.size() / p as u64;
        for c in 0..p {
            assert_eq!(
                elems.iter().filter(|&&x| t.trace_abs(x) == c).count() as u64,
                per_abs
            );
        }
    }
}

#[test]
fn subfield_image_criterion() {
    for (p, e, m) in [(2, 2, 4), (3, 2, 2), (3, 1, 5)] {
        let t = tower(p, e, m);
        let r = t.class_count();
        for x in t.elements() {
            let by_log = x.is_zero() || (t.log(x).unwrap() as u64).is_multiple_of(r);
            let by_power = x.is_zero() || t.pow(x, r * (t.q() - 1)) == Elem::ONE;
            assert!(by_power);
            assert_eq!(t.in_subfield(x, Level::Sub), by_log);
        }
    }
}

#[test]
fn complement_of_cyclotomic_class_spans() {
    let t = tower(2, 2, 4);
    let c0: Vec<Elem> = (0..51).map(|i| t.pow_gamma(5 * i)).collect();
    assert_eq!(t.span(&c0).dim(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_annihilator_is_span(codes in prop::collection::vec(0u32..81, 0..6)) {
        let t = tower(3, 1, 4);
        let s: Vec<Elem> = codes.iter().map(|&c| t.elem(c).unwrap()).collect();
        let span = t.span(&s);
        let ll = t.annihilator_of(&t.annihilator(&s));
        prop_assert!(ll.same_as(&span, &t));
    }

    #[test]
    fn double_annihilator_over_f16(codes in prop::collection::vec(0u32..256, 0..5)) {
        let t = tower(2, 2, 4);
        let s: Vec<Elem> = codes.iter().map(|&c| t.elem(c).unwrap()).collect();
        prop_assert!(t.annihilator_of(&t.annihilator(&s)).same_as(&t.span(&s), &t));
    }
}
