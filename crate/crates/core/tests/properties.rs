use num_rational::BigRational;
use proptest::prelude::*;
use torus_asep::dynamics::GeneratorMode;
use torus_asep::mcmc::{simulate, CrossingLedger, Horizon, SimConfig, Simulator};
use torus_asep::model::{enumerate_full, rotate, vertical_shift, ColoredWord};
use torus_asep::observables::{observables, ClosedForms};
use torus_asep::stationary::config_weight;
use torus_asep::symbolic::{newton_residual, p_vars, Monomial};
use torus_asep::{Polynomial, RatePoint};

const N: usize = 2;

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, prop::array::uniform4(0u16..3)), 0..5).prop_map(|terms| {
        let mut p = Polynomial::zero(N);
        for (c, e) in terms {
            let m = Polynomial::from_monomial(Monomial::from_exponents(&e[..N], &e[N..]));
            p += &m.scale(&BigRational::from_integer(c.into()));
        }
        p
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (1i64..20, 1i64..9).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn rate_point(n: usize) -> impl Strategy<Value = RatePoint> {
    (prop::collection::vec(rational(), n), prop::collection::vec(rational(), n))
        .prop_map(|(p, q)| RatePoint::new(p, q).expect("lengths match"))
}

/// A uniformly chosen configuration of a small torus.
fn word() -> impl Strategy<Value = ColoredWord> {
    (2usize..=6).prop_flat_map(|l| (Just(l), 1..=l)).prop_flat_map(|(l, n)| {
        let states = enumerate_full(l, n, u64::MAX).expect("small size");
        (0..states.len()).prop_map(move |i| states[i].clone())
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in polynomial(), b in polynomial(), r in rate_point(N)) {
        prop_assert_eq!((&a * &b).evaluate(&r), a.evaluate(&r) * b.evaluate(&r));
        prop_assert_eq!((&a + &b).evaluate(&r), a.evaluate(&r) + b.evaluate(&r));
    }

    #[test]
    fn newton_relation(n in 1usize..=4, k in 1usize..=5) {
        prop_assert!(newton_residual(k, &p_vars(n)).unwrap().is_zero());
    }

    #[test]
    fn weight_is_rotation_invariant(w in word(), s in 0usize..8) {
        prop_assert_eq!(config_weight(&rotate(&w, s)), config_weight(&w));
    }

    #[test]
    fn weight_follows_relabelling(w in word()) {
        let n = w.n();
        let shifted = Polynomial::from_monomial(config_weight(&vertical_shift(&w)));
        prop_assert_eq!(shifted, Polynomial::from_monomial(config_weight(&w)).shift(n - 1));
    }

    #[test]
    fn word_round_trips(w in word()) {
        prop_assert_eq!(w.to_string().parse::<ColoredWord>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn crossings_conserved_each_event(seed in any::<u64>(), (l, n) in (2usize..=6).prop_flat_map(|l| (Just(l), 1..l))) {
        let rates = RatePoint::new(vec![BigRational::from_integer(1.into()); n], vec![BigRational::new(1.into(), 2.into()); n]).unwrap();
        let mut sim = Simulator::new(SimConfig::new(l, n, rates, Horizon::Events(300), seed)).unwrap();
        let mut prev = CrossingLedger::new(l, n);
        while sim.step().is_some() {
            let now = sim.ledger().clone();
            for b in 0..l {
                let bullets: i64 = (0..n).map(|i| now.bullet(i, b) - prev.bullet(i, b)).sum();
                prop_assert_eq!(bullets + now.box_column[b] - prev.box_column[b], 0);
            }
            prev = now;
        }
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>(), r in rate_point(2)) {
        let cfg = SimConfig::new(4, 2, r, Horizon::Events(2_000), seed);
        let a = simulate(cfg.clone()).unwrap();
        let b = simulate(cfg).unwrap();
        prop_assert_eq!(a.ledger, b.ledger);
        prop_assert_eq!(a.state.elapsed, b.state.elapsed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn observables_shift_with_rows((l, n) in (2usize..=5).prop_flat_map(|l| (Just(l), 1..=l))) {
        let r = observables(l, n, &GeneratorMode::Symbolic, u64::MAX).unwrap();
        let c = ClosedForms::new(l, n).unwrap();
        for i in 0..n {
            prop_assert!(c.density_box(i).eq_exact(&c.density_box(0).shift(i)));
            for j in 0..l {
                let row0 = r.densities.boxes[0][j].oracle.as_function().unwrap();
                let rowi = r.densities.boxes[i][j].oracle.as_function().unwrap();
                prop_assert!(rowi.eq_exact(&row0.shift(i)));
                let e0 = r.currents.bullet_edge[0][j].oracle.as_function().unwrap();
                let ei = r.currents.bullet_edge[i][j].oracle.as_function().unwrap();
                prop_assert!(ei.eq_exact(&e0.shift(i)));
            }
        }
    }
}
