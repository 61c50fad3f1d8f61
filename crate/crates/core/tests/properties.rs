// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use toes_core::exact::{
    derangement_number, factorial, falling_factorial, poisson_partial_sum, BigInt,
};
use toes_core::laws::{
    component_pmf, core_size_law, expected_num_components_toes, lemma1_both_sides,
    mean_components_via_cycles, mean_components_via_lambdas, mean_cycle_count,
    q_by_alternating_sum, scream_pmf, scream_pmf_by_conditioning, CycleModel, Model,
};
use toes_core::samplers::{
    decompose, sample_esf_crp, sample_esf_feller, sample_mapping, sample_toes_components,
    sample_toes_core, Mapping,
};
use toes_core::{BigRat, Float, RngStream, Spectrum};

fn rational() -> impl Strategy<Value = BigRat> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| BigRat::new(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = BigRat> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

/// Arbitrary mapping on `n` points with no fixed point.
fn toes_mapping() -> impl Strategy<Value = Mapping> {
    (2usize..=60).prop_flat_map(|n| {
        proptest::collection::vec(0..(n as u32 - 1), n).prop_map(|v| {
            let image = v
                .into_iter()
                .enumerate()
                .map(|(i, u)| if u < i as u32 { u } else { u + 1 })
                .collect();
            Mapping::new(image).unwrap()
        })
    })
}

fn check_structure(n: usize, comps: &Spectrum, cycles: &Spectrum, core: usize) {
    assert_eq!(comps.total(), n);
    assert_eq!(cycles.total(), core);
    assert_eq!(comps.num_parts(), cycles.num_parts());
    assert_eq!(comps.count(1), 0);
    assert_eq!(cycles.count(1), 0);
}

proptest! {
    #[test]
    fn add_then_subtract(a in rational(), c in rational()) {
        prop_assert_eq!((a.clone() + &c) - &c, a);
    }

    #[test]
    fn multiply_then_divide(a in rational(), c in nonzero_rational()) {
        prop_assert_eq!((a.clone() * &c) / &c, a);
    }

    #[test]
    fn lowest_terms(p in any::<i64>(), q in 1i64..=i64::MAX, k in 1i64..1000) {
        let a = BigRat::new(BigInt::from(p) * k, BigInt::from(q) * k);
        prop_assert_eq!(&a, &BigRat::new(p, q));
        prop_assert!(a.denom() > &BigInt::from(0));
        prop_assert_eq!(num_integer::Integer::gcd(a.numer(), a.denom()), if a.is_zero() { a.denom().clone() } else { BigInt::from(1) });
    }

    #[test]
    fn text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<BigRat>().unwrap(), a);
    }

    #[test]
    fn float_rounding_is_within_half_ulp(a in rational()) {
        let f = Float::from_rat(&a, 100);
        let err = (f.to_rat() - &a).abs();
        let scale = a.abs() * BigRat::new(1, BigInt::from(2u32).pow(100));
        prop_assert!(err <= scale);
    }

    #[test]
    fn falling_factorials_compose(
        (n, r, s) in (0u64..=50)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_flat_map(|(n, r)| (Just(n), Just(r), 0..=n - r))
    ) {
        prop_assert_eq!(
            falling_factorial(n, r) * falling_factorial(n - r, s),
            falling_factorial(n, r + s)
        );
    }

    #[test]
    fn poisson_partial_sums_increase(j in 1u64..=100) {
        for k in 0..3 * j as i64 {
            prop_assert!(poisson_partial_sum(j, k + 1) > poisson_partial_sum(j, k));
        }
    }

    #[test]
    fn lemma_one_holds((n, m) in (2usize..=50).prop_flat_map(|n| (Just(n), 1..=n))) {
        let (l, r) = lemma1_both_sides(n, m).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn decomposition_invariants(m in toes_mapping()) {
        let n = m.n();
        for i in 0..n {
            prop_assert_ne!(m.apply(i), i);
        }
        let d = decompose(&m);
        check_structure(n, &d.component_sizes, &d.cycle_lengths, d.core_size);
        prop_assert_eq!(d.cyclic.iter().filter(|&&c| c).count(), d.core_size);
        // a cyclic point returns to itself within its cycle length
        for i in (0..n).filter(|&i| d.cyclic[i]) {
            let mut j = m.apply(i);
            let mut steps = 1;
            while j != i {
                j = m.apply(j);
                steps += 1;
            }
            prop_assert!(steps >= 2 && d.cycle_lengths.count(steps) > 0);
        }
    }

    #[test]
    fn sampled_mappings_have_no_fixed_points(n in 2usize..=200, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed);
        let m = sample_mapping(n, &mut rng).unwrap();
        for i in 0..n {
            prop_assert_ne!(m.apply(i), i);
        }
        let d = decompose(&m);
        check_structure(n, &d.component_sizes, &d.cycle_lengths, d.core_size);
    }

    #[test]
    fn ewens_spectra_are_complete(n in 1usize..=300, seed in any::<u64>(), theta in 0.05f64..5.0) {
        let mut rng = RngStream::new(seed);
        prop_assert!(sample_esf_feller(n, theta, &mut rng).unwrap().is_complete());
        prop_assert!(sample_esf_crp(n, theta, &mut rng).unwrap().is_complete());
    }

    #[test]
    fn sampler_outputs_are_toes_spectra(n in 2usize..=200, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed);
        let (c, _) = sample_toes_components(n, &mut rng).unwrap();
        prop_assert!(c.is_complete());
        prop_assert_eq!(c.count(1), 0);
        let cycles = sample_toes_core(n, &mut rng).unwrap();
        prop_assert!((2..=n).contains(&cycles.total()));
        prop_assert_eq!(cycles.count(1), 0);
    }

    #[test]
    fn same_seed_same_draws(n in 2usize..=100, seed in any::<u64>()) {
        let mut a = RngStream::new(seed);
        let mut b = RngStream::new(seed);
        for _ in 0..5 {
            prop_assert_eq!(sample_mapping(n, &mut a).unwrap(), sample_mapping(n, &mut b).unwrap());
            prop_assert_eq!(sample_toes_components(n, &mut a).unwrap(), sample_toes_components(n, &mut b).unwrap());
            prop_assert_eq!(sample_toes_core(n, &mut a).unwrap(), sample_toes_core(n, &mut b).unwrap());
        }
    }
}

#[test]
fn derangements_by_alternating_sum() {
    for n in 0..=30u64 {
        let alt: BigRat = (0..=n)
            .map(|j| {
                let t = BigRat::new(1, factorial(j));
                if j % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .sum();
        assert_eq!(
            BigRat::new(derangement_number(n), factorial(n)),
            alt,
            "n={n}"
        );
    }
}

#[test]
fn laws_are_normalized() {
    for n in 2..=12 {
        let total: BigRat = Spectrum::partitions(n, 2)
            .iter()
            .map(|s| component_pmf(n, s, Model::Toes).unwrap())
            .sum();
        assert!(total.is_one(), "components n={n}");
        for model in [Model::Toes, Model::Standard] {
            let total: BigRat = core_size_law(n, model).unwrap().into_iter().sum();
            assert!(total.is_one(), "core n={n} {model:?}");
        }
        let total: BigRat = (0..=n / 2).map(|k| scream_pmf(n, k).unwrap()).sum();
        assert!(total.is_one(), "screams n={n}");
    }
}

#[test]
fn scream_moments_and_complement() {
    for n in 2..=40 {
        let mean: BigRat = (0..=n / 2)
            .map(|k| scream_pmf(n, k).unwrap() * BigRat::from(k))
            .sum();
        let two_cycles = mean_cycle_count(n, 2, CycleModel::Toes).unwrap();
        let direct = BigRat::new(falling_factorial(n as u64, 2), 2 * (n as u64 - 1).pow(2));
        assert_eq!(mean, two_cycles, "n={n}");
        assert_eq!(mean, direct, "n={n}");
        assert_eq!(
            q_by_alternating_sum(n).unwrap(),
            BigRat::one() - scream_pmf(n, 0).unwrap()
        );
    }
    for n in 2..=16 {
        for k in 0..=n / 2 {
            assert_eq!(
                scream_pmf(n, k).unwrap(),
                scream_pmf_by_conditioning(n, k).unwrap()
            );
        }
    }
}

#[test]
fn components_count_cycles() {
    for n in 2..=50 {
        assert_eq!(
            mean_components_via_lambdas(n).unwrap(),
            mean_components_via_cycles(n).unwrap(),
            "n={n}"
        );
        expected_num_components_toes(n).unwrap();
    }
}
