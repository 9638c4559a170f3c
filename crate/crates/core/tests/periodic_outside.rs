use lorenzkit::maps::Lift;
use lorenzkit::maps::{
    derive_decreasing_lorenz, derive_increasing_lorenz, tent_core, tent_symmetric,
};
use lorenzkit::outside::{
    accessibility_certificate, accessibility_certificate_with_budget, outside_map,
    stunted_circle_map, verify_certificate, BackwardOrbit, LiftStatus, NODE_BUDGET,
};
use lorenzkit::periodic::{
    count_admissible_periodic_words, enumerate_periods, sharkovsky_compare, PeriodReport,
    SharkovskyOrd,
};
use lorenzkit::sturmian::{is_balanced, rotational_sequence};
use lorenzkit::symbolic::{ones, SymbolSeq};
use lorenzkit::ExactScalar;
use proptest::prelude::*;

fn flip(o: SharkovskyOrd) -> SharkovskyOrd {
    match o {
        SharkovskyOrd::Precedes => SharkovskyOrd::Succeeds,
        SharkovskyOrd::Succeeds => SharkovskyOrd::Precedes,
        SharkovskyOrd::Equal => SharkovskyOrd::Equal,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn sharkovsky_antisymmetric(m in 1u64..=1000, n in 1u64..=1000) {
        let a = sharkovsky_compare(m, n);
        prop_assert_eq!(a, flip(sharkovsky_compare(n, m)));
        prop_assert_eq!(a == SharkovskyOrd::Equal, m == n);
    }

    #[test]
    fn sharkovsky_transitive(a in 1u64..=1000, b in 1u64..=1000, c in 1u64..=1000) {
        if sharkovsky_compare(a, b) == SharkovskyOrd::Precedes && sharkovsky_compare(b, c) == SharkovskyOrd::Precedes {
            prop_assert_eq!(sharkovsky_compare(a, c), SharkovskyOrd::Precedes);
        }
    }
}

#[test]
fn full_tent_solver_matches_word_count() {
    let f = tent_symmetric(ExactScalar::from(2)).unwrap();
    let rep = enumerate_periods(&f, 8).unwrap();
    let nu: SymbolSeq = "1(0)".parse().unwrap();
    for m in 1..=8 {
        assert_eq!(
            rep.periods[&m].len(),
            count_admissible_periodic_words(&nu, m, 64),
            "m = {m}"
        );
    }
}

fn sweep() -> Vec<ExactScalar> {
    (1..=15)
        .map(|k| ExactScalar::ratio(105 + 6 * k, 100))
        .collect()
}

fn reports(l: &ExactScalar, n: usize) -> (PeriodReport, PeriodReport, PeriodReport) {
    let f = tent_symmetric(l.clone()).unwrap();
    let phi = derive_increasing_lorenz(&f).unwrap();
    let psi = derive_decreasing_lorenz(&f).unwrap();
    (
        enumerate_periods(&f, n).unwrap(),
        enumerate_periods(&phi, n).unwrap(),
        enumerate_periods(&psi, n).unwrap(),
    )
}

#[test]
fn lorenz_periods_follow_unimodal_periods() {
    for l in sweep() {
        let (f, phi, _) = reports(&l, 8);
        for n in phi.period_set() {
            let ok = f.has(n) || (n.is_power_of_two() && f.has(n / 2));
            assert!(
                ok,
                "lambda {l}: phi has period {n}, f does not have {n} or {}",
                n / 2
            );
        }
        for m in f.period_set().into_iter().filter(|&m| m > 1) {
            assert!(phi.has(m), "lambda {l}: f has period {m}, phi does not");
        }
    }
}

#[test]
fn psi_odd_periods_reverse_orientation() {
    for l in sweep() {
        let f = tent_symmetric(l.clone()).unwrap();
        let (_, _, psi) = reports(&l, 7);
        for (m, pts) in &psi.periods {
            if m % 2 == 1 {
                for p in pts {
                    // f^m reverses orientation at exactly one of x, 1 - x, and fixes that one
                    let mirror = &ExactScalar::one() - &p.x;
                    let (sx, sm) = (
                        f.orbit_slope_sign(&p.x, *m).unwrap(),
                        f.orbit_slope_sign(&mirror, *m).unwrap(),
                    );
                    assert_eq!(sx * sm, -1, "lambda {l}, x = {}", p.x);
                    let y = if sx == -1 { p.x.clone() } else { mirror };
                    assert_eq!(f.iterate(&y, *m).unwrap(), y, "lambda {l}, x = {}", p.x);
                }
            }
        }
    }
}

#[test]
fn lifts_are_degree_one() {
    for k in 29..=40 {
        let l = ExactScalar::ratio(k, 20);
        for (map, period) in [
            (stunted_circle_map(&l).unwrap(), 1),
            (outside_map(&l).unwrap(), 2),
        ] {
            let lift = Lift::of_circle_map(&map).unwrap();
            let p = ExactScalar::from(period);
            for j in 0..40 {
                let x = ExactScalar::ratio(j, 20);
                assert_eq!(lift.eval(&(&x + &p)).unwrap(), &lift.eval(&x).unwrap() + &p);
            }
        }
    }
}

/// Backward orbit of the core tent from x0, taking the left preimage when the bit is 0.
fn backward(l: &ExactScalar, x0: &ExactScalar, bits: &[u8]) -> Option<BackwardOrbit> {
    let t = tent_core(l.clone()).unwrap();
    let c = t.critical_point().unwrap().clone();
    let two = ExactScalar::from(2);
    let mut pts = vec![x0.clone()];
    for &b in bits {
        let x = pts.last().unwrap();
        let left = &(&(x - &two) + l) / l;
        let right = &ExactScalar::one() - &(x / l);
        let y = if b == 0 { left } else { right };
        let inside = if b == 0 {
            y.ge(&ExactScalar::zero()).unwrap() && y.le(&c).unwrap()
        } else {
            y.gt(&c).unwrap() && y.le(&ExactScalar::one()).unwrap()
        };
        if !inside {
            return None;
        }
        pts.push(y);
    }
    BackwardOrbit::new(l.clone(), pts).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_are_sound(k in 29i64..=40, x in 0i64..=60, bits in proptest::collection::vec(0u8..=1, 1..8), grace in 0usize..3) {
        let l = ExactScalar::ratio(k, 20);
        let Some(orbit) = backward(&l, &ExactScalar::ratio(x, 60), &bits) else { return Ok(()) };
        let grace = grace.min(orbit.depth());
        let cert = accessibility_certificate(&orbit, grace).unwrap();
        match cert.status {
            LiftStatus::CertifiedLift => prop_assert!(verify_certificate(&orbit, &cert).unwrap()),
            LiftStatus::NoLift => {
                let again = accessibility_certificate_with_budget(&orbit, grace, 2 * NODE_BUDGET).unwrap();
                prop_assert_eq!(again.status, LiftStatus::NoLift);
            }
            LiftStatus::Inconclusive => prop_assert!(false, "exact data cannot be inconclusive"),
        }
    }

    #[test]
    fn rotational_words_are_balanced(d in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 11]), b in 1i64..4) {
        // α = frac(√d / b) is irrational
        let r = &ExactScalar::sqrt_int(d) / &ExactScalar::from(b);
        let alpha = r.rem_int(1).unwrap();
        let n = 1000;
        let w = rotational_sequence(&alpha, &ExactScalar::zero(), n).unwrap();
        prop_assert!(is_balanced(&w, 20));
        let freq = ExactScalar::ratio(ones(&w.prefix) as i64, n as i64);
        prop_assert!((&freq - &alpha).abs().unwrap().le(&ExactScalar::ratio(2, n as i64)).unwrap());
    }
}
