use lorenzkit::kneading::{cutting_data_symbolic, cutting_set, hofbauer_levels};
use lorenzkit::maps::tent_symmetric;
use lorenzkit::rotation::{
    check_difference_closure, kneading_from_cf_denjoy, kneading_from_cutting_times,
    ostrowski_cutting_times, rotation_number_counting, rotation_number_cutting, stunted_tent,
    Alpha, ContinuedFraction, RotationStatus,
};
use lorenzkit::symbolic::kneading_sequence;
use lorenzkit::ExactScalar;
use proptest::prelude::*;

fn slope() -> impl Strategy<Value = ExactScalar> {
    (41i64..=80).prop_map(|p| ExactScalar::ratio(p, 40))
}

fn stunted_slope() -> impl Strategy<Value = ExactScalar> {
    (57i64..=80).prop_map(|p| ExactScalar::ratio(p, 40))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tower_matches_rho(l in slope()) {
        let f = tent_symmetric(l).unwrap();
        let numeric = cutting_set(&hofbauer_levels(&f, 150).unwrap());
        let nu = kneading_sequence(&f, 150).unwrap();
        prop_assert_eq!(numeric, cutting_data_symbolic(&nu, 150).unwrap().s);
    }

    #[test]
    fn cutting_data_structure(l in slope()) {
        let nu = kneading_sequence(&tent_symmetric(l).unwrap(), 200).unwrap();
        let d = cutting_data_symbolic(&nu, 200).unwrap();
        prop_assert!(check_difference_closure(&d.s).is_ok());
        prop_assert!(d.s.iter().all(|t| !d.shat.contains(t)));
    }

    #[test]
    fn counting_is_start_independent(l in stunted_slope(), a in 0i64..50, b in 50i64..100) {
        let map = stunted_tent(&l).unwrap();
        let n = 3000;
        let x = rotation_number_counting(&map, &ExactScalar::ratio(a, 100), n).unwrap().estimate;
        let y = rotation_number_counting(&map, &ExactScalar::ratio(b, 100), n).unwrap().estimate;
        prop_assert!((&x - &y).abs().unwrap().le(&ExactScalar::ratio(2, n as i64)).unwrap());
    }

    #[test]
    fn cutting_route_invariants(l in slope()) {
        let nu = kneading_sequence(&tent_symmetric(l.clone()).unwrap(), 300).unwrap();
        let r = rotation_number_cutting(&nu, 300).unwrap();
        let half = ExactScalar::ratio(1, 2);
        prop_assert!(r.alpha.lo().ge(&half).unwrap() && r.alpha.hi().le(&ExactScalar::one()).unwrap());
        prop_assert_eq!(r.prime_end.clone(), match &r.exact_limit {
            Some(x) => Alpha::Exact(&ExactScalar::one() - x),
            None => r.alpha.complement(),
        });
        if r.status == RotationStatus::ExactHit && l.ge(&ExactScalar::ratio(57, 40)).unwrap() {
            let Alpha::Exact(alpha) = &r.alpha else { unreachable!() };
            let n = 4000;
            let counted = rotation_number_counting(&stunted_tent(&l).unwrap(), &ExactScalar::zero(), n).unwrap().estimate;
            prop_assert!((&counted - alpha).abs().unwrap().le(&ExactScalar::ratio(2, n as i64)).unwrap());
        }
    }

    #[test]
    fn ostrowski_closure(head in proptest::collection::vec(1u64..=4, 1..4), per in proptest::collection::vec(1u64..=4, 1..3)) {
        let cf = ContinuedFraction::new(0, head, per).unwrap();
        let s = ostrowski_cutting_times(&cf, 2000);
        prop_assert!(check_difference_closure(&s).is_ok());
        let nu = kneading_from_cutting_times(&s, 2000).unwrap();
        let d = cutting_data_symbolic(&nu, 2000).unwrap();
        prop_assert_eq!(&d.s, &s);
        // Q tends to infinity: its maxima over consecutive windows increase
        let win = 8;
        let maxima: Vec<usize> = d.q.chunks(win).filter(|c| c.len() == win).map(|c| *c.iter().max().unwrap()).collect();
        prop_assert!(maxima.windows(2).all(|m| m[0] < m[1]), "window maxima {:?}", maxima);
        let tail_min: Vec<usize> = (0..d.qhat.len()).map(|k| *d.qhat[k..].iter().min().unwrap()).collect();
        prop_assert!(tail_min.windows(2).all(|m| m[0] <= m[1]));
    }
}

#[test]
fn denjoy_words_have_bounded_kneading_map() {
    for c in [
        "[0;(2)]",
        "[0;(3)]",
        "[0;(2,1)]",
        "[0;(4)]",
        "[0;2,(1)]",
        "[0;3,(1,2)]",
    ] {
        let cf: ContinuedFraction = c.parse().unwrap();
        let w = kneading_from_cf_denjoy(&cf, 400, None).unwrap();
        let d = cutting_data_symbolic(&w.nu, 400).unwrap();
        assert!(d.q.iter().all(|&q| q <= 1), "{c}: {:?}", d.q);
    }
}

#[test]
fn fibonacci_cutting_times() {
    let s = ostrowski_cutting_times(&"[0;(1)]".parse().unwrap(), 13);
    assert_eq!(s, vec![1, 2, 3, 5, 8, 13]);
    assert_eq!(
        kneading_from_cutting_times(&[1, 2, 3, 5, 8], 8)
            .unwrap()
            .to_string(),
        "10011101"
    );
}
