use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rolle_core::algebra::rational::{int, pi_upper, ratio, to_f64};
use rolle_core::algebra::{ComplexQ, Rational, UniPoly};
use rolle_core::corpus::dlvp_instance;
use rolle_core::ode::{
    complex_variation_bound, default_margin, dlvp_admissible_length, dlvp_sum, dlvp_zero_bound, kim_zero_bound,
    symplex_inequality_check, AdmissibleLength, ComplexDomain,
};
use rolle_core::oracle::{count_disk_zeros, count_real_zeros, sample_stream, AnalyticSampler, NumericFn};

/// Accumulated `|d arg|` of a sampled complex path.
fn sampled_variation(f: impl Fn(f64) -> Complex64, a: f64, b: f64, cells: usize) -> f64 {
    let mut total = 0.0;
    let mut prev = f(a).arg();
    for i in 1..=cells {
        let arg = f(a + (b - a) * i as f64 / cells as f64).arg();
        let mut d = arg - prev;
        while d > std::f64::consts::PI {
            d -= std::f64::consts::TAU;
        }
        while d < -std::f64::consts::PI {
            d += std::f64::consts::TAU;
        }
        total += d.abs();
        prev = arg;
    }
    total
}

#[test]
fn oscillator_against_sine_zeros() {
    let c = dlvp_zero_bound(&[int(0), int(1)], &(int(10) * pi_upper())).unwrap();
    let sin = AnalyticSampler::Numeric(NumericFn::sin());
    let oracle = count_real_zeros(&sin, 0.0, 10.0 * std::f64::consts::PI, 20_000).unwrap().count;
    assert_eq!((c.bound.finite(), oracle), (Some(23), 11));
    assert!(c.revalidate());
}

#[test]
fn kim_covering_against_cosine() {
    let disk = ComplexDomain::Disk {
        center: ComplexQ::zero(),
        radius: int(5),
    };
    let c = kim_zero_bound(&[int(0), int(1)], &disk).unwrap();
    let cos = AnalyticSampler::Numeric(NumericFn::cos());
    let w = count_disk_zeros(&cos, Complex64::new(0.0, 0.0), 5.0).unwrap();
    assert_eq!(w.winding, 4);
    assert!(c.bound.finite().unwrap() >= 4);
}

#[test]
fn argument_variation_against_paths() {
    // y' = i y on [0, 1]: e^{it} turns by exactly 1 radian
    let c = complex_variation_bound(&[int(1)], &int(1)).unwrap();
    let turns = c.bound.finite().unwrap() as f64 * std::f64::consts::PI;
    let v = sampled_variation(|t| Complex64::new(0.0, t).exp(), 0.0, 1.0, 1000);
    assert!((v - 1.0).abs() < 1e-9 && v <= turns);
    // y'' + y = 0 on [0, 1/2]
    let c = complex_variation_bound(&[int(0), int(1)], &ratio(1, 2)).unwrap();
    assert_eq!(c.bound.finite(), Some(3));
    let v = sampled_variation(|t| Complex64::new(t.cos(), t.sin()), 0.0, 0.5, 1000);
    assert!(v <= 3.0 * std::f64::consts::PI);
}

#[test]
fn random_odes_respect_the_bound() {
    for i in 0..100 {
        let out = dlvp_instance(7, i).unwrap();
        assert!(out.passed(), "instance {i}: {out:?}");
    }
}

fn bounds_strategy() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..=12, 1i64..=4), 1..=4).prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn admissible_length_substitutes(bounds in bounds_strategy(), t in 1i64..=16) {
        let theta = ratio(t, 16);
        match dlvp_admissible_length(&bounds, &theta).unwrap() {
            AdmissibleLength::Unbounded => prop_assert!(bounds.iter().all(|a| *a == int(0))),
            AdmissibleLength::Finite(l) => {
                prop_assert!(dlvp_sum(&bounds, &l) <= theta);
                prop_assert!(l > int(0));
            }
        }
    }

    #[test]
    fn monotone_in_coefficients(bounds in bounds_strategy(), k in 0usize..4, bump in 1i64..=8, len in 1i64..=40) {
        let k = k % bounds.len();
        let mut bigger = bounds.clone();
        bigger[k] += ratio(bump, 4);
        let theta = default_margin();
        let l0 = dlvp_admissible_length(&bounds, &theta).unwrap();
        let l1 = dlvp_admissible_length(&bigger, &theta).unwrap();
        if let (Some(a), Some(b)) = (l0.finite(), l1.finite()) {
            prop_assert!(b <= a);
        }
        let length = ratio(len, 2);
        let b0 = dlvp_zero_bound(&bounds, &length).unwrap().bound.finite().unwrap();
        let b1 = dlvp_zero_bound(&bigger, &length).unwrap().bound.finite().unwrap();
        prop_assert!(b0 <= b1);
    }

    #[test]
    fn symplex_on_rooted_polynomials(
        roots in prop::collection::vec(0i64..=12, 2..=5),
        extra in prop::collection::vec(-5i64..=5, 0..=3),
    ) {
        // n + 1 rational roots in [0, 1], times a random factor
        let rs: Vec<Rational> = roots.iter().map(|&r| ratio(r, 12)).collect();
        let n = rs.len() as u32 - 1;
        let mut f = UniPoly::from_roots(&rs);
        if extra.iter().any(|&c| c != 0) {
            f = &f * &UniPoly::from_ints(&extra);
        }
        let v = symplex_inequality_check(&f, n, &int(1)).unwrap();
        prop_assert!(v.holds, "{:?} vs {:?}", v.lhs, v.rhs);
        prop_assert!(v.roots_with_multiplicity > n as usize);
    }
}

#[test]
fn symplex_sweep_of_two_hundred() {
    for i in 0..200 {
        let mut rng = sample_stream(12345, i);
        let n = rng.random_range(1..=3usize);
        let rs: Vec<Rational> = (0..=n).map(|_| ratio(rng.random_range(0..=20), 20)).collect();
        let tail = UniPoly::from_ints(&[rng.random_range(1..=5), rng.random_range(-3..=3)]);
        let f = &UniPoly::from_roots(&rs) * &tail;
        let v = symplex_inequality_check(&f, n as u32, &int(1)).unwrap();
        assert!(v.holds, "roots {rs:?}");
        assert!(to_f64(&v.lhs.hi) <= to_f64(&v.rhs.lo));
    }
}
