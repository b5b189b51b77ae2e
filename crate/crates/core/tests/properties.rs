use disto::annulus::{build_orbit, compute_schedule, make_admissible, schedule_from_reach, verify_final};
use disto::distortion::{avila_bound, avila_enumerate, build_sigma, criterion_nlogn, criterion_sublinear, psi_index, psi_inverse, GrowthModel, Profile, Sequence, Verdict};
use disto::exact::{int, log2_scaled_le, ratio, Q};
use disto::torus_grid::{grid_distance, reduction_plan, PlanStep};
use disto::{Error, Letter, Presentation, Rewriter, Word};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..8, 0..=max_len).prop_map(|codes| Word::from_letters(codes.into_iter().map(Letter::from_code).collect()))
}

fn square() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..20, -20i64..20)
}

proptest! {
    #[test]
    fn free_reduction_is_idempotent(w in word(24)) {
        let r = w.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.len() <= w.len() && (w.len() - r.len()) % 2 == 0);
    }

    #[test]
    fn word_times_inverse_is_empty(w in word(24)) {
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn dehn_reduction_preserves_the_element(w in word(16), u in word(6)) {
        let p = Presentation::closed_surface(2).unwrap();
        let rw = Rewriter::new(&p).unwrap();
        let r = rw.dehn_reduce(&w);
        prop_assert!(r.len() <= w.free_reduce().len());
        prop_assert!(rw.equal_elements(&w, &r));
        // Conjugates of the relator are trivial.
        let c = u.concat(&p.relator().unwrap()).concat(&u.inverse());
        prop_assert!(rw.is_trivial(&c));
    }

    #[test]
    fn grid_metric(u in square(), v in square(), w in square(), t in square()) {
        prop_assert_eq!(grid_distance(u, v), grid_distance(v, u));
        prop_assert_eq!(grid_distance(u, v) == 0, u == v);
        prop_assert!(grid_distance(u, w) <= grid_distance(u, v) + grid_distance(v, w));
        let shift = |s: (i64, i64)| (s.0 + t.0, s.1 + t.1);
        prop_assert_eq!(grid_distance(shift(u), shift(v)), grid_distance(u, v));
    }

    #[test]
    fn plan_is_monotone(length in 0usize..40, height in 0usize..40, diam in 0u64..40) {
        let p = reduction_plan(length, height, diam);
        let q = reduction_plan(length + 1, height, diam);
        prop_assert!(q.reduction_steps >= p.reduction_steps);
        prop_assert_eq!(p.reduction_steps, length.saturating_sub(3) + height.saturating_sub(3));
        prop_assert_eq!(p.steps.last(), Some(&PlanStep::FinishSmall));
        prop_assert_eq!(p.steps.len(), p.reduction_steps + 1);
    }

    #[test]
    fn nlogn_implies_sublinear(an in 0i64..64, ad in 1i64..16, b in -40i64..40, bd in 1i64..8) {
        let d = GrowthModel::monomial(ratio(an, ad), ratio(b, bd));
        if criterion_nlogn(&d).verdict == Verdict::True {
            prop_assert_eq!(criterion_sublinear(&d).verdict, Verdict::True);
        }
    }

    #[test]
    fn avila_words_are_distinct_and_sized(n in 1u64..(1 << 40), m in 1u64..(1 << 40)) {
        let (wn, wm) = (avila_enumerate(n).unwrap(), avila_enumerate(m).unwrap());
        prop_assert_eq!(wn.len() as u32, n.ilog2());
        prop_assert_eq!(wn == wm, n == m);
        prop_assert_eq!(avila_bound(n).unwrap(), 14 * u64::from(n.ilog2()) + 14);
    }

    #[test]
    fn scaled_log_comparison(a in 0u64..300, x in 1u64..5000, slack in -40i64..40) {
        let b = (a as f64 * (x as f64).log2()).round() as i64 + slack;
        let exact = b >= 0 && num_traits::pow(BigUint::from(x), a as usize) <= BigUint::from(1u8) << b as usize;
        prop_assert_eq!(log2_scaled_le(a, &BigUint::from(x), &BigInt::from(b)), exact);
    }

    #[test]
    fn psi_round_trip(blocks in prop::collection::vec(1u64..10, 1..12), pick in any::<prop::sample::Index>()) {
        let total: u64 = blocks.iter().sum();
        let index = pick.index(total as usize) as u64 + 1;
        let (i, j) = psi_inverse(index, &blocks).unwrap();
        prop_assert_eq!(psi_index(i, j, &blocks).unwrap(), index);
        prop_assert!(psi_inverse(total + 1, &blocks).is_err());
    }

    #[test]
    fn reach_schedules(drops in prop::collection::vec(any::<bool>(), 0..12)) {
        // Built from i(N) = N downwards: each step keeps i(j) or lowers it by
        // one, staying above j.
        let n = drops.len();
        let mut reach = vec![n as u64; n + 1];
        for j in (0..n).rev() {
            reach[j] = if drops[j] && reach[j + 1] > j as u64 + 1 { reach[j + 1] - 1 } else { reach[j + 1] };
        }
        let s = schedule_from_reach(&reach, None).unwrap();
        prop_assert!(s.invariant_violations().is_empty(), "{:?}", s.invariant_violations());
        prop_assert!(verify_final(&s).ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_witnesses_verify(l in 1u64..4, k in 1u64..4, terms in 2usize..6) {
        let s = build_sigma(&Profile::constant(l, k), 10_000_000, Some(terms)).unwrap();
        prop_assert!(s.verify());
        prop_assert_eq!(s.sigma.len(), terms);
        let table = Profile { l: Sequence::Table { values: vec![l; 1 << 16] }, k: Sequence::Const { value: k } };
        let t = build_sigma(&table, 1 << 16, None).unwrap();
        prop_assert!(t.verify());
        prop_assert_eq!(&t.sigma[..terms.min(t.sigma.len())], &s.sigma[..terms.min(t.sigma.len())]);
    }

    #[test]
    fn orbit_and_schedules(steps in prop::collection::vec(1i64..64, 24..48), l in 1u64..8) {
        // Concave by construction: sorted decreasing steps on the 1/16 grid.
        let mut steps = steps;
        steps.sort_unstable_by(|a, b| b.cmp(a));
        let raw: Vec<Q> = steps.iter().scan(int(0), |acc, &d| { *acc += ratio(d, 16); Some(acc.clone()) }).collect();
        let v = make_admissible(&raw).unwrap();
        prop_assert!(v.is_admissible());
        let model = build_orbit(&v, v.len()).unwrap();
        prop_assert!(model.property_violations().is_empty());
        for n in 0..v.len() {
            prop_assert_eq!(&model.iterate(&int(0), n as u64).unwrap(), model.t(n));
            if n >= 1 {
                let excess = model.t(n) - v.v(n);
                prop_assert!(excess >= int(0) && excess <= ratio(1, 1 << n.min(62)));
            }
        }
        match compute_schedule(&model, l) {
            Ok(s) => {
                prop_assert!(s.invariant_violations().is_empty());
                prop_assert!(verify_final(&s).ok);
            }
            Err(Error::Horizon(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
