//! Property tests for the algebraic and metric invariants.

mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urnkit::draws::{
    hypergeometric, kl_divergence, multinomial, mzip, mzip_naive_distance, polya,
};
use urnkit::laws::{isometry_check, Urn};
use urnkit::draws::DrawKind;
use urnkit::metric::{
    alignment_distance, couplings_enumerate, kantorovich, mset_kantorovich, tvd, tvd_coupling,
    tvd_down, tvd_up, GroundMetric, Metric, MsetMetric,
};
use urnkit::multiset::enumerate;
use urnkit::rational::{int, parse, ratio, to_fraction_string};
use urnkit::{Dist, Elem, Multiset, Rational};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip(num in -10_000i64..10_000, den in 1i64..500) {
        let r = ratio(num, den);
        prop_assert_eq!(parse(&to_fraction_string(&r)).unwrap(), r);
    }

    #[test]
    fn dist_weights_sum_to_one(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=6));
        let w = common::dist(&mut g, &s, 30);
        let total: Rational = w.iter().map(|(_, p)| p.clone()).sum();
        prop_assert!(total.is_one());
        prop_assert!(w.iter().all(|(_, p)| *p > Rational::zero()));
    }

    #[test]
    fn multiset_add_sub_inverse(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=4));
        let (na, nb) = (g.random_range(0..=6), g.random_range(0..=6));
        let a = common::urn(&mut g, &s, na);
        let b = common::urn(&mut g, &s, nb);
        let sum = a.add(&b);
        prop_assert_eq!(sum.size(), a.size() + b.size());
        prop_assert!(a.leq(&sum));
        prop_assert_eq!(sum.sub(&b).unwrap(), a);
    }

    #[test]
    fn enumeration_is_sorted_and_complete(n in 1usize..4, k in 0u64..5) {
        let s = common::space(n);
        let elems: Vec<Elem> = s.elems().collect();
        let all = enumerate(&elems, k);
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(all.iter().all(|m| m.size() == k));
        let expected = urnkit::rational::multichoose(n as u64, k);
        prop_assert_eq!(num_bigint::BigUint::from(all.len()), expected);
    }

    #[test]
    fn kantorovich_is_a_metric(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=4);
        let (s, d) = common::any_metric(&mut g, n);
        let a = common::dist(&mut g, &s, 10);
        let b = common::dist(&mut g, &s, 10);
        let c = common::dist(&mut g, &s, 10);
        let ab = kantorovich(&a, &b, &d).unwrap().cost;
        prop_assert!(kantorovich(&a, &a, &d).unwrap().cost.is_zero());
        prop_assert_eq!(&ab, &kantorovich(&b, &a, &d).unwrap().cost);
        prop_assert_eq!(ab.is_zero(), a == b);
        let bc = kantorovich(&b, &c, &d).unwrap().cost;
        let ac = kantorovich(&a, &c, &d).unwrap().cost;
        prop_assert!(ac <= ab + bc);
    }

    #[test]
    fn certificates_close(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=5);
        let (s, d) = common::any_metric(&mut g, n);
        let a = common::dist(&mut g, &s, 12);
        let b = common::dist(&mut g, &s, 12);
        let r = kantorovich(&a, &b, &d).unwrap();
        prop_assert!(r.verify(&a, &b, &d).is_ok(), "{:?}", r.verify(&a, &b, &d));
        prop_assert_eq!(r.coupling.first_marginal(), a);
        prop_assert_eq!(r.coupling.second_marginal(), b);
    }

    #[test]
    fn tvd_matches_discrete_transport(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=5));
        let d = GroundMetric::discrete(&s);
        let a = common::dist(&mut g, &s, 12);
        let b = common::dist(&mut g, &s, 12);
        let t = tvd(&a, &b);
        prop_assert_eq!(&t, &tvd_up(&a, &b));
        prop_assert_eq!(&t, &tvd_down(&a, &b));
        prop_assert_eq!(&t, &kantorovich(&a, &b, &d).unwrap().cost);
        let c = tvd_coupling(&a, &b).coupling;
        prop_assert_eq!(c.validity(|(x, y)| d.distance(x, y)), t);
        prop_assert_eq!(c.first_marginal(), a);
        prop_assert_eq!(c.second_marginal(), b);
    }

    #[test]
    fn kantorovich_is_jointly_convex(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=3);
        let (s, d) = common::any_metric(&mut g, n);
        let (a1, a2) = (common::dist(&mut g, &s, 6), common::dist(&mut g, &s, 6));
        let (b1, b2) = (common::dist(&mut g, &s, 6), common::dist(&mut g, &s, 6));
        let l = ratio(g.random_range(1..=4), 5);
        let m = int(1) - &l;
        let a = Dist::convex(&[(l.clone(), a1.clone()), (m.clone(), a2.clone())]).unwrap();
        let b = Dist::convex(&[(l.clone(), b1.clone()), (m.clone(), b2.clone())]).unwrap();
        let lhs = kantorovich(&a, &b, &d).unwrap().cost;
        let rhs = l * kantorovich(&a1, &b1, &d).unwrap().cost
            + m * kantorovich(&a2, &b2, &d).unwrap().cost;
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn flatten_of_units_is_identity(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=4));
        let w = common::dist(&mut g, &s, 12);
        prop_assert_eq!(w.map(|x| Dist::unit(*x)).flatten(), w.clone());
        prop_assert_eq!(Dist::unit(w.clone()).flatten(), w);
    }

    #[test]
    fn multiset_distance_matches_alignment(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=3);
        let (s, d) = common::any_metric(&mut g, n);
        let k = g.random_range(1..=4);
        let a = common::urn(&mut g, &s, k);
        let b = common::urn(&mut g, &s, k);
        let r = mset_kantorovich(&a, &b, &d).unwrap();
        prop_assert_eq!(&r.cost, &alignment_distance(&a, &b, &d).unwrap());
        prop_assert_eq!(r.coupling.dcpl(), (a.clone(), b.clone()));
        prop_assert_eq!(r.total, r.cost * int(k as i64));
    }

    #[test]
    fn multiset_metric_axioms(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=3);
        let (s, d) = common::any_metric(&mut g, n);
        let k = g.random_range(1..=4);
        let mm = MsetMetric::new(d);
        let a = common::urn(&mut g, &s, k);
        let b = common::urn(&mut g, &s, k);
        let c = common::urn(&mut g, &s, k);
        let ab = mm.distance(&a, &b);
        prop_assert_eq!(&ab, &mm.distance(&b, &a));
        prop_assert_eq!(ab.is_zero(), a == b);
        prop_assert!(mm.distance(&a, &c) <= ab + mm.distance(&b, &c));
    }

    #[test]
    fn flrn_pushforwards(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=3));
        let k = g.random_range(1..=4);
        let w = common::dist(&mut g, &s, 8);
        let flrn = |phi: &Multiset<Elem>| phi.flrn().unwrap();
        prop_assert_eq!(multinomial(&w, k).dist.bind(flrn), w);
        let size = g.random_range(1..=6);
        let u = common::urn(&mut g, &s, size);
        let target = u.flrn().unwrap();
        prop_assert_eq!(hypergeometric(&u, k.min(size)).unwrap().dist.bind(flrn), target.clone());
        prop_assert_eq!(polya(&u, k).unwrap().dist.bind(flrn), target);
    }

    #[test]
    fn mzip_couplings_have_the_right_marginals(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=3);
        let (s, d) = common::any_metric(&mut g, n);
        let k = g.random_range(1..=4);
        let a = common::urn(&mut g, &s, k);
        let b = common::urn(&mut g, &s, k);
        let z = mzip(&a, &b).unwrap();
        let all = couplings_enumerate(&a, &b).unwrap();
        for (tau, _) in z.iter() {
            prop_assert_eq!(tau.dcpl(), (a.clone(), b.clone()));
            prop_assert!(all.contains(tau));
        }
        let naive = mzip_naive_distance(&a, &b, &d).unwrap();
        prop_assert!(naive.normalized >= mset_kantorovich(&a, &b, &d).unwrap().cost);
    }

    #[test]
    fn small_isometries(seed: u64) {
        let mut g = rng(seed);
        let n = g.random_range(1..=3);
        let (s, d) = common::any_metric(&mut g, n);
        let mm = MsetMetric::new(d);
        let k = g.random_range(1..=2);
        let w = Urn::Dist(common::dist(&mut g, &s, 6));
        let w2 = Urn::Dist(common::dist(&mut g, &s, 6));
        prop_assert!(isometry_check(DrawKind::Multinomial, &w, &w2, k, &mm).unwrap().equal());
        let size = g.random_range(2..=4);
        let u = Urn::Multiset(common::urn(&mut g, &s, size));
        let u2 = Urn::Multiset(common::urn(&mut g, &s, size));
        prop_assert!(isometry_check(DrawKind::Hypergeometric, &u, &u2, k, &mm).unwrap().equal());
        prop_assert!(isometry_check(DrawKind::Polya, &u, &u2, k, &mm).unwrap().equal());
    }

    #[test]
    fn kl_is_nonnegative(seed: u64) {
        let mut g = rng(seed);
        let s = common::space(g.random_range(1..=4));
        let a = common::dist(&mut g, &s, 12);
        let b = common::dist(&mut g, &s, 12);
        let kl = kl_divergence(&a, &b);
        prop_assert!(kl >= -1e-12);
        prop_assert!(kl_divergence(&a, &a).abs() < 1e-12);
    }
}
