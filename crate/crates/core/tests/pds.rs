use mincodes::charsum::full_spectrum;
use mincodes::pds::{
    build_dj, cyclotomic_classes, is_fq_invariant, is_rho_invariant, latin_params,
    predicted_cyclotomic_eigenvalues, quadric_pds, standard_gram, verify_pds_direct,
    verify_pds_spectral, DirectVerdict, LatinType,
};
use mincodes::{Elem, FieldSpec, FieldTower, Origin, QuadricKind, SubsetD};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tower(p: u32, e: u32, m: u32) -> FieldTower {
    FieldTower::new(&FieldSpec::new(p, e, m)).unwrap()
}

#[test]
fn class_structure() {
    let t = tower(2, 2, 4);
    let one = cyclotomic_classes(&t, 1).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].len(), 255);
    let five = cyclotomic_classes(&t, 5).unwrap();
    assert_eq!(five.len(), 5);
    assert!(five.iter().all(|c| c.len() == 51));
}

#[test]
fn dj_sizes_and_invariance() {
    let t = tower(2, 2, 4);
    let d = build_dj(&t, 5, &[1, 2, 3, 4]).unwrap();
    assert_eq!(d.len(), 204);
    assert!(is_fq_invariant(&t, &d));
    assert!(is_rho_invariant(&t, 5, &[1, 2, 3, 4]));
    let t = tower(3, 1, 5);
    assert_eq!(build_dj(&t, 11, &[0]).unwrap().len(), 22);
    let t9 = tower(3, 1, 2);
    let pair = SubsetD::from_logs(&t9, &[0, 1]).unwrap();
    assert!(!is_fq_invariant(&t9, &pair));
}

#[test]
fn example_3_1_certificate() {
    let t = tower(2, 2, 4);
    let d = build_dj(&t, 5, &[1, 2, 3, 4]).unwrap();
    let c = verify_pds_spectral(&t, &d).unwrap();
    assert_eq!((c.v, c.k, c.lambda, c.mu), (256, 204, 164, 156));
    assert_eq!((c.theta1, c.theta2), (12, -4));
    assert_eq!(c.type_flag, LatinType::NegativeLatin);
    assert!(c.srg_closed_forms_agree());
    let pred = predicted_cyclotomic_eigenvalues(&t, 5, &[1, 2, 3, 4]).unwrap();
    assert_eq!((pred.t, pred.u), (2, 4));
    assert_eq!(pred.certificate(&t), c);
}

#[test]
fn table_2_row_1_certificate() {
    let t = tower(3, 1, 5);
    let d = build_dj(&t, 11, &[0]).unwrap();
    let c = verify_pds_spectral(&t, &d).unwrap();
    assert_eq!((c.v, c.k, c.lambda, c.mu), (243, 22, 1, 2));
    assert_eq!((c.theta1, c.theta2, c.m1, c.m2), (4, -5, 132, 110));
    assert!(c.srg_closed_forms_agree());
    let comp = verify_pds_spectral(&t, &d.complement()).unwrap();
    assert_eq!((comp.k, comp.theta1, comp.theta2), (220, 4, -5));
}

#[test]
fn complete_and_improper_sets_rejected() {
    let t = tower(3, 1, 4);
    let all = SubsetD::empty(&t).complement();
    assert!(verify_pds_spectral(&t, &all).is_err());
    assert!(verify_pds_direct(&t, &all).is_err());
    assert!(verify_pds_spectral(&t, &SubsetD::empty(&t)).is_err());
}

#[test]
fn prediction_matches_spectrum_with_coset_assignment() {
    for (p, e, m, n, j) in [
        (2u32, 2u32, 4u32, 5u64, vec![1u64, 2, 3, 4]),
        (2, 2, 4, 5, vec![0]),
        (3, 1, 4, 5, vec![0, 2]),
        (3, 1, 4, 10, vec![0, 5]),
        (2, 1, 6, 3, vec![0]),
        (2, 1, 6, 9, vec![0]),
        (5, 1, 2, 3, vec![0]),
    ] {
        let t = tower(p, e, m);
        let d = build_dj(&t, n, &j).unwrap();
        let pred = predicted_cyclotomic_eigenvalues(&t, n, &j).unwrap();
        let sp = full_spectrum(&t, &d);
        for i in 0..t.order() {
            let expect = pred.coset_values[(i % n) as usize];
            assert_eq!(
                sp.rational(t.pow_gamma(i)),
                Some(expect),
                "({p},{e},{m}) N={n} J={j:?} i={i}"
            );
        }
        assert_eq!(pred.certificate(&t), verify_pds_spectral(&t, &d).unwrap());
    }
}

#[test]
fn quadric_certificates_and_direct_agreement() {
    let t = tower(3, 1, 4);
    for (kind, eps, r) in [
        (QuadricKind::Hyperbolic, 1, 4),
        (QuadricKind::Elliptic, -1, 2),
    ] {
        let q = quadric_pds(&t, &standard_gram(&t, kind).unwrap(), Some(kind)).unwrap();
        let c = verify_pds_spectral(&t, &q.set).unwrap();
        assert_eq!((c.epsilon, c.r), (Some(eps), Some(r)));
        assert_eq!(latin_params(c.v, c.k, c.lambda, c.mu), Some(q.predicted));
        match verify_pds_direct(&t, &q.set).unwrap() {
            DirectVerdict::Pds { lambda, mu } => {
                assert_eq!((lambda as i64, mu as i64), (c.lambda, c.mu))
            }
            v => panic!("{v:?}"),
        }
    }
}

#[test]
fn random_set_fails_directly_with_witness() {
    let t = tower(3, 1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = invariant_set(&t, 16, &mut rng);
    assert!(verify_pds_spectral(&t, &s).is_err());
    assert!(matches!(
        verify_pds_direct(&t, &s).unwrap(),
        DirectVerdict::NotPds { .. }
    ));
}

fn invariant_set(t: &FieldTower, classes: usize, rng: &mut ChaCha8Rng) -> SubsetD {
    let mut reps: Vec<u64> = (0..t.class_count()).collect();
    reps.shuffle(rng);
    let elems: Vec<Elem> = reps[..classes]
        .iter()
        .flat_map(|&i| t.sub_units().into_iter().map(move |l| (l, i)))
        .map(|(l, i)| t.mul(l, t.pow_gamma(i)))
        .collect();
    SubsetD::from_elems(t, &elems, Origin::Explicit).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_and_direct_agree(seed in any::<u64>(), classes in 1usize..40, field in 0usize..3) {
        let (p, e, m) = [(3, 1, 4), (5, 1, 2), (3, 2, 2)][field];
        let t = tower(p, e, m);
        let classes = classes.min(t.class_count() as usize - 1);
        let s = invariant_set(&t, classes, &mut ChaCha8Rng::seed_from_u64(seed));
        let spectral = verify_pds_spectral(&t, &s);
        match (spectral, verify_pds_direct(&t, &s)) {
            (Ok(c), Ok(DirectVerdict::Pds { lambda, mu })) => {
                prop_assert_eq!((c.lambda, c.mu), (lambda as i64, mu as i64));
                prop_assert!(c.srg_closed_forms_agree());
            }
            (Err(_), Ok(DirectVerdict::NotPds { .. })) | (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn rho_invariance_matches_scaling(n_idx in 0usize..4, mask in 1u32..1024) {
        let t = tower(3, 1, 4);
        let n = [4u64, 5, 10, 16][n_idx];
        let j: Vec<u64> = (0..n).filter(|&i| mask >> (i % 10) & 1 == 1).collect();
        if j.is_empty() || j.len() as u64 == n {
            return Ok(());
        }
        // Only sets that construct at all are comparable.
        let Ok(d) = build_dj(&t, n, &j) else { return Ok(()) };
        prop_assert_eq!(is_rho_invariant(&t, n, &j), is_fq_invariant(&t, &d));
    }
}
