use mincodes::charsum::{
    full_spectrum, full_spectrum_with, orthogonality_sum, psi_sum, scaled_sum_invariance_check,
    SpectrumMethod,
};
use mincodes::pds::build_dj;
use mincodes::{CyclotomicInt, Elem, Exec, FieldSpec, FieldTower, Origin, SubsetD};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tower(p: u32, e: u32, m: u32) -> FieldTower {
    FieldTower::new(&FieldSpec::new(p, e, m)).unwrap()
}

fn random_subset(t: &FieldTower, seed: u64) -> SubsetD {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.random_range(0.0..1.0);
    let elems: Vec<Elem> = t
        .elements()
        .skip(1)
        .filter(|_| rng.random_bool(density))
        .collect();
    SubsetD::from_elems(t, &elems, Origin::Explicit).unwrap()
}

#[test]
fn example_3_1_values() {
    let t = tower(2, 2, 4);
    let d = build_dj(&t, 5, &[1, 2, 3, 4]).unwrap();
    assert_eq!(psi_sum(&t, Elem::ZERO, &d).rational(), Some(204));
    for a in t.elements().skip(1) {
        let v = psi_sum(&t, a, &d).rational();
        assert!(matches!(v, Some(12) | Some(-4)), "{v:?}");
    }
}

#[test]
fn full_group_and_empty_set() {
    let t = tower(3, 1, 4);
    let all = SubsetD::empty(&t).complement();
    for a in t.elements().skip(1) {
        assert_eq!(psi_sum(&t, a, &all), CyclotomicInt::from_int(3, -1));
    }
    let sp = full_spectrum(&t, &SubsetD::empty(&t));
    assert!(t.elements().all(|a| sp.rational(a) == Some(0)));
}

#[test]
fn scaled_invariance_on_example_3_1() {
    let t = tower(2, 2, 4);
    let d = build_dj(&t, 5, &[1, 2, 3, 4]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let a = t.elem(rng.random_range(0..256)).unwrap();
        for l in t.sub_units() {
            assert!(scaled_sum_invariance_check(&t, a, l, &d).unwrap());
        }
    }
    assert!(scaled_sum_invariance_check(&t, Elem::ZERO, Elem::ONE, &d).unwrap());
}

#[test]
fn orthogonality_examples() {
    let t = tower(2, 2, 4);
    assert_eq!(orthogonality_sum(&t, Elem::ZERO), 4);
    for x in t.elements() {
        if !t.trace_sub(x).is_zero() {
            assert_eq!(orthogonality_sum(&t, x), 0);
        }
    }
}

#[test]
fn transform_is_bit_exact_on_row_1() {
    let t = tower(3, 1, 5);
    let d = build_dj(&t, 11, &[0]).unwrap();
    let a = full_spectrum_with(&t, &d, SpectrumMethod::Pointwise, Exec::Sequential);
    let b = full_spectrum_with(&t, &d, SpectrumMethod::Transform, Exec::Parallel);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval(seed in any::<u64>(), field in 0usize..4) {
        let (p, e, m) = [(3, 1, 4), (2, 2, 3), (5, 1, 3), (3, 2, 2)][field];
        let t = tower(p, e, m);
        let s = random_subset(&t, seed);
        let sp = full_spectrum(&t, &s);
        let mut total = CyclotomicInt::zero(p);
        for a in t.elements() {
            total = &total + &sp.value(a).norm_sq();
        }
        prop_assert_eq!(total.rational(), Some((t.size() * s.len() as u64) as i64));
        prop_assert_eq!(sp.rational(Elem::ZERO), Some(s.len() as i64));
    }

    #[test]
    fn complement_relation(seed in any::<u64>()) {
        let t = tower(3, 1, 4);
        let s = random_subset(&t, seed);
        let c = s.complement();
        let minus_one = CyclotomicInt::from_int(3, -1);
        for a in t.elements().skip(1) {
            prop_assert_eq!(psi_sum(&t, a, &c), &minus_one - &psi_sum(&t, a, &s));
        }
    }

    #[test]
    fn transform_matches_pointwise(seed in any::<u64>(), field in 0usize..3) {
        let (p, e, m) = [(3, 1, 4), (2, 2, 3), (5, 1, 2)][field];
        let t = tower(p, e, m);
        let s = random_subset(&t, seed);
        let a = full_spectrum_with(&t, &s, SpectrumMethod::Pointwise, Exec::default());
        let b = full_spectrum_with(&t, &s, SpectrumMethod::Transform, Exec::default());
        prop_assert_eq!(a, b);
    }
}
