// SPDX-License-Identifier: Apache-2.0

//! Statistical checks of the samplers against exact laws. Tolerances are
//! 4 standard errors, or a chi-square p-value above 1e-4.

use std::collections::HashMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use toes_core::exact::{derangement_number, factorial, falling_factorial, BigInt};
use toes_core::harness::{simulate, Method, RunSpec, Tally};
use toes_core::laws::{
    core_size_law, derangement_two_cycle_pmf, mean_component_count, mean_cycle_count, CycleModel,
    Model,
};
use toes_core::samplers::{
    decompose, sample_derangement_cycles, sample_esf_crp, sample_esf_feller, sample_mapping,
    ComponentSampler, EsfMethod, Mapping, ToesCoreSampler,
};
use toes_core::{BigRat, RngStream, Spectrum};

const REPS: u64 = 1_000_000;

fn within(mean: f64, se: f64, exact: f64, what: &str) {
    let tol = 4.0 * se.max(1e-12);
    assert!(
        (mean - exact).abs() <= tol,
        "{what}: {mean} vs {exact} (se {se})"
    );
}

/// Binomial check of an observed count.
fn freq_within(count: u64, total: u64, p: f64, what: &str) {
    let m = count as f64 / total as f64;
    within(m, (p * (1.0 - p) / total as f64).sqrt(), p, what);
}

/// Upper-tail chi-square p-value, pooling cells with expected count below 5.
fn chi_square_p(
    observed: &HashMap<String, u64>,
    expected: &HashMap<String, f64>,
    total: u64,
) -> f64 {
    let mut stat = 0.0;
    let mut cells = 0;
    let (mut po, mut pe) = (0.0, 0.0);
    for (k, &p) in expected {
        let e = p * total as f64;
        let o = *observed.get(k).unwrap_or(&0) as f64;
        if e < 5.0 {
            po += o;
            pe += e;
            continue;
        }
        stat += (o - e) * (o - e) / e;
        cells += 1;
    }
    if pe > 0.0 {
        stat += (po - pe) * (po - pe) / pe;
        cells += 1;
    }
    for k in observed.keys() {
        assert!(expected.contains_key(k), "impossible outcome {k}");
    }
    ChiSquared::new((cells - 1) as f64).unwrap().sf(stat)
}

#[test]
fn mapping_coordinates_are_uniform() {
    let mut rng = RngStream::new(101);
    let mut counts = [0u64; 10];
    for _ in 0..REPS {
        let m = sample_mapping(10, &mut rng).unwrap();
        counts[m.apply(0)] += 1;
    }
    assert_eq!(counts[0], 0);
    for (j, &c) in counts.iter().enumerate().skip(1) {
        freq_within(c, REPS, 1.0 / 9.0, &format!("image of 1 = {}", j + 1));
    }
}

/// Joint law of (component spectrum, cycle spectrum) by listing mappings.
fn enumerate_joint(n: usize) -> HashMap<String, f64> {
    let total = (n - 1).pow(n as u32);
    let mut out: HashMap<String, f64> = HashMap::new();
    for code in 0..total {
        let mut c = code;
        let image: Vec<u32> = (0..n)
            .map(|i| {
                let u = (c % (n - 1)) as u32;
                c /= n - 1;
                if u < i as u32 {
                    u
                } else {
                    u + 1
                }
            })
            .collect();
        let d = decompose(&Mapping::new(image).unwrap());
        *out.entry(format!("{} {}", d.component_sizes, d.cycle_lengths))
            .or_default() += 1.0 / total as f64;
    }
    out
}

#[test]
fn direct_simulation_matches_enumeration() {
    for n in [3, 4, 5] {
        let expected = enumerate_joint(n);
        let mut rng = RngStream::new(200 + n as u64);
        let mut observed: HashMap<String, u64> = HashMap::new();
        for _ in 0..REPS {
            let d = decompose(&sample_mapping(n, &mut rng).unwrap());
            *observed
                .entry(format!("{} {}", d.component_sizes, d.cycle_lengths))
                .or_default() += 1;
        }
        let p = chi_square_p(&observed, &expected, REPS);
        assert!(p > 1e-4, "n={n}: p={p}");
    }
}

/// `prod_j 1/(j^a_j a_j!)`, the cycle-type law of a uniform permutation.
fn cycle_type_prob(s: &Spectrum) -> f64 {
    let mut p = BigRat::one();
    for (j, a) in s.parts() {
        p /= BigRat::from_integer(BigInt::from(j).pow(a) * factorial(a as u64));
    }
    p.to_f64()
}

#[test]
fn feller_uniform_permutations() {
    let n = 6;
    let expected: HashMap<String, f64> = Spectrum::partitions(n, 1)
        .iter()
        .map(|s| (s.to_string(), cycle_type_prob(s)))
        .collect();
    let total: f64 = expected.values().sum();
    assert!((total - 1.0).abs() < 1e-12);
    for (seed, crp) in [(300, false), (301, true)] {
        let mut rng = RngStream::new(seed);
        let mut observed: HashMap<String, u64> = HashMap::new();
        for _ in 0..REPS {
            let s = if crp {
                sample_esf_crp(n, 1.0, &mut rng).unwrap()
            } else {
                sample_esf_feller(n, 1.0, &mut rng).unwrap()
            };
            *observed.entry(s.to_string()).or_default() += 1;
        }
        let p = chi_square_p(&observed, &expected, REPS);
        assert!(p > 1e-4, "crp={crp}: p={p}");
    }
}

/// `E C_j` under ESF(theta): `(theta/j) n_[j] / (theta+n-j)^(j)` with the
/// rising factorial, exact for rational theta.
fn esf_mean(n: usize, j: usize, theta: &BigRat) -> f64 {
    let mut rising = BigRat::one();
    for i in 0..j {
        rising *= theta.clone() + BigRat::from(n - j + i);
    }
    (theta.clone() / BigRat::from(j) * BigRat::from_integer(falling_factorial(n as u64, j as u64))
        / rising)
        .to_f64()
}

#[test]
fn ewens_half_first_moments() {
    let (n, theta) = (10, BigRat::new(1, 2));
    for (seed, crp) in [(400, false), (401, true)] {
        let mut rng = RngStream::new(seed);
        let mut t = Tally::new(n);
        let mut obs = vec![0u64; n];
        for _ in 0..REPS {
            let s = if crp {
                sample_esf_crp(n, 0.5, &mut rng).unwrap()
            } else {
                sample_esf_feller(n, 0.5, &mut rng).unwrap()
            };
            for j in 1..=n {
                obs[j - 1] = s.count(j) as u64;
            }
            t.record(&obs);
        }
        for j in 1..=n {
            let e = t.estimate(j - 1);
            within(
                e.mean,
                e.std_error,
                esf_mean(n, j, &theta),
                &format!("crp={crp} E C_{j}"),
            );
        }
    }
}

#[test]
fn rejection_component_means() {
    let n = 10;
    for (seed, method) in [(500, EsfMethod::Feller), (501, EsfMethod::Crp)] {
        let mut s = ComponentSampler::with_method(n, method).unwrap();
        let mut rng = RngStream::new(seed);
        let mut t = Tally::new(n + 1);
        let mut obs = vec![0u64; n + 1];
        for _ in 0..REPS / 2 {
            let (spec, _) = s.sample(&mut rng);
            for j in 1..=n {
                obs[j - 1] = spec.count(j) as u64;
            }
            t.record(&obs);
        }
        assert_eq!(t.sum[0], 0);
        for j in 2..=n {
            let e = t.estimate(j - 1);
            let exact = mean_component_count(n, j, Model::Toes).unwrap().to_f64();
            within(e.mean, e.std_error, exact, &format!("{method} E C_{j}"));
        }
    }
}

#[test]
fn derangement_two_cycles() {
    let r = 6;
    let cond = derangement_two_cycle_pmf(r, 1).unwrap()
        / BigRat::new(derangement_number(r as u64), factorial(r as u64));
    let mut rng = RngStream::new(600);
    let mut hits = 0;
    for _ in 0..REPS {
        let s = sample_derangement_cycles(r, &mut rng).unwrap();
        assert_eq!(s.count(1), 0);
        hits += (s.count(2) == 1) as u64;
    }
    freq_within(
        hits,
        REPS,
        cond.to_f64(),
        "one 2-cycle in a derangement of 6",
    );
}

#[test]
fn core_size_law_by_inverse_cdf() {
    let n = 10;
    let law = core_size_law(n, Model::Toes).unwrap();
    let mut s = ToesCoreSampler::new(n).unwrap();
    let mut rng = RngStream::new(700);
    let mut counts = vec![0u64; n + 1];
    let mut out = Spectrum::empty(n);
    for _ in 0..REPS {
        counts[s.sample_into(&mut rng, &mut out)] += 1;
    }
    for r in 2..=n {
        freq_within(counts[r], REPS, law[r].to_f64(), &format!("P(N = {r})"));
    }
    assert_eq!(counts[0] + counts[1], 0);
}

fn run(
    method: Method,
    seed: u64,
    width: usize,
    f: impl Fn(&toes_core::harness::Draw<'_>, &mut [u64]) + Sync,
) -> Tally {
    let spec = RunSpec {
        n: 10,
        replicates: REPS,
        seed,
        method,
        esf: EsfMethod::Feller,
        workers: None,
    };
    simulate(&spec, width, f).unwrap()
}

/// The three routes agree pairwise within 4 combined standard errors.
#[test]
fn three_routes_agree() {
    let n = 10;
    let comps = |d: &toes_core::harness::Draw<'_>, o: &mut [u64]| {
        for j in 2..=n {
            o[j - 2] = d.components.count(j) as u64;
        }
    };
    let cycles = |d: &toes_core::harness::Draw<'_>, o: &mut [u64]| {
        for j in 2..=n {
            o[j - 2] = d.cycles.count(j) as u64;
        }
    };
    let direct_c = run(Method::Direct, 800, n - 1, comps);
    let reject_c = run(Method::Rejection, 801, n - 1, comps);
    let direct_y = run(Method::Direct, 802, n - 1, cycles);
    let joint_y = run(Method::CoreJoint, 803, n - 1, cycles);
    for i in 0..n - 1 {
        let (a, b) = (direct_c.estimate(i), reject_c.estimate(i));
        let se = a.std_error.hypot(b.std_error);
        within(a.mean, se, b.mean, &format!("components {}", i + 2));
        let (a, b) = (direct_y.estimate(i), joint_y.estimate(i));
        let se = a.std_error.hypot(b.std_error);
        within(a.mean, se, b.mean, &format!("cycles {}", i + 2));
        let exact = mean_cycle_count(n, i + 2, CycleModel::Toes)
            .unwrap()
            .to_f64();
        within(
            b.mean,
            b.std_error,
            exact,
            &format!("core-joint E C_{}*", i + 2),
        );
    }
}
