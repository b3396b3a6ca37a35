use proptest::prelude::*;
use rolle_core::algebra::rational::{int, ratio};
use rolle_core::algebra::sturm::{count_distinct_closed, count_with_multiplicity_closed};
use rolle_core::algebra::UniPoly;
use rolle_core::oracle::{count_real_zeros, AnalyticSampler};
use rolle_core::rolle::{
    endpoint_signs, fewnomial_positive_bound, multiplicative_triangle, positive_root_count,
    positive_root_count_with_multiplicity, refined_rolle_bound, rolle_chain_check, Fewnomial,
};

fn few(terms: &[(i64, i64)]) -> Fewnomial {
    Fewnomial::new(terms.iter().map(|&(e, c)| (e, int(c))))
}

#[test]
fn chain_examples() {
    let f = UniPoly::from_roots(&[int(0), int(1), int(2)]);
    let r = rolle_chain_check(&f, &int(-1), &int(3)).unwrap();
    let z: Vec<usize> = r.rows.iter().map(|row| row.distinct).collect();
    assert_eq!(z, vec![3, 2, 1, 0]);
    assert!(r.all_ok());
    let cube = UniPoly::from_roots(&[int(1)]).pow(3);
    let r = rolle_chain_check(&cube, &int(0), &int(2)).unwrap();
    assert_eq!((r.rows[0].with_multiplicity, r.rows[1].with_multiplicity), (3, 2));
    assert!(rolle_chain_check(&UniPoly::zero(), &int(0), &int(1)).is_err());
}

#[test]
fn fewnomial_examples() {
    let p = few(&[(3, 1), (1, -1)]);
    assert_eq!(fewnomial_positive_bound(&p).unwrap().bound.finite(), Some(1));
    assert_eq!(positive_root_count(&p).unwrap(), 1);
    assert_eq!(fewnomial_positive_bound(&few(&[(5, 7)])).unwrap().bound.finite(), Some(0));
    let q = few(&[(5, 1), (2, -3), (0, 2)]);
    assert_eq!(fewnomial_positive_bound(&q).unwrap().bound.finite(), Some(2));
    assert!(positive_root_count(&q).unwrap() <= 2);
    // Laurent support: t - 1/t has the single positive root 1
    let l = few(&[(1, 1), (-1, -1)]);
    assert_eq!(positive_root_count(&l).unwrap(), 1);
    // (t - 1)(t - 2)(t - 3) attains the bound
    let sharp = few(&[(3, 1), (2, -6), (1, 11), (0, -6)]);
    assert_eq!(fewnomial_positive_bound(&sharp).unwrap().bound.finite(), Some(3));
    assert_eq!(positive_root_count(&sharp).unwrap(), 3);
}

#[test]
fn refined_rolle_examples() {
    // all signs positive: the endpoint terms cancel
    assert_eq!(refined_rolle_bound(4, 1, 1, 1, 1).unwrap().bound.finite(), Some(4));
    // f, f' of opposite signs at 0 and equal signs at 1: one extra zero allowed
    assert_eq!(refined_rolle_bound(0, 1, -1, 1, 1).unwrap().bound.finite(), Some(1));
    assert!(refined_rolle_bound(0, 0, 1, 1, 1).is_err());
}

/// `Z(f)` on `[0, 1]` against the endpoint-refined bound, when no endpoint sign vanishes.
fn refined_holds(f: &UniPoly) -> Option<bool> {
    let (f0, d0) = endpoint_signs(f, &int(0))?;
    let (f1, d1) = endpoint_signs(f, &int(1))?;
    let df = f.derivative();
    if df.is_zero() {
        return None;
    }
    let zdf = count_distinct_closed(&df, &int(0), &int(1)).ok()? as u64;
    let bound = refined_rolle_bound(zdf, f0, d0, f1, d1).ok()?.bound.finite()?;
    let oracle = count_real_zeros(&AnalyticSampler::Poly(f.clone()), 0.0, 1.0, 1000).ok()?;
    Some(oracle.count as u64 <= bound)
}

#[test]
fn refined_rolle_on_perturbed_squares() {
    let mut checked = 0;
    for s in -10..=10 {
        for e in -10..=10 {
            // (t - 1/2)^2 + s/20 (t - 1/2) - e/400
            let f = UniPoly::new(vec![
                ratio(1, 4) - ratio(s, 40) - ratio(e, 400),
                ratio(s, 20) - int(1),
                int(1),
            ]);
            if let Some(ok) = refined_holds(&f) {
                assert!(ok, "s = {s}, e = {e}");
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

fn poly_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-10i64..=10, 1i64..=3), 1..=9)
        .prop_map(|c| UniPoly::new(c.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rolle_chain_holds(f in poly_strategy()) {
        prop_assume!(!f.is_zero());
        let m = f.cauchy_bound();
        let r = rolle_chain_check(&f, &-m.clone(), &m).unwrap();
        prop_assert!(r.all_ok());
    }

    #[test]
    fn multiplicative_triangle_holds(f in poly_strategy(), g in poly_strategy(), a in -6i64..=0, w in 1i64..=8) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (lo, hi) = (ratio(a, 2), ratio(a + w, 2));
        prop_assert!(multiplicative_triangle(&f, &g, &lo, &hi).unwrap());
        let fg = &f * &g;
        let n = |p: &UniPoly| count_with_multiplicity_closed(p, &lo, &hi).unwrap();
        prop_assert_eq!(n(&fg), n(&f) + n(&g));
    }

    #[test]
    fn fewnomial_bound_dominates(
        terms in prop::collection::btree_map(-15i64..=30, prop_oneof![-10i64..=-1, 1i64..=10], 1..=5),
    ) {
        let p = Fewnomial::new(terms.iter().map(|(&e, &c)| (e, int(c))));
        let bound = fewnomial_positive_bound(&p).unwrap().bound.finite().unwrap();
        prop_assert!(bound <= (p.len() as u64 - 1).min(p.sign_changes() as u64));
        prop_assert!(positive_root_count(&p).unwrap() as u64 <= bound);
        prop_assert!(positive_root_count_with_multiplicity(&p).unwrap() as u64 <= bound);
    }

    #[test]
    fn refined_rolle_dominates(f in poly_strategy()) {
        if let Some(ok) = refined_holds(&f) {
            prop_assert!(ok);
        }
    }
}

#[test]
fn refined_rolle_with_rational_values() {
    let f: UniPoly = UniPoly::new(vec![ratio(-1, 10), int(3), int(-9), int(7)]);
    assert_eq!(refined_holds(&f), Some(true));
}
