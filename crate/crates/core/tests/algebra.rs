use num_traits::{One, Zero};
use proptest::prelude::*;
use rolle_core::algebra::rational::{int, ratio, sign};
use rolle_core::algebra::{certified_sup, differentiate, sturm_root_count, Interval, IntervalBox, MultiPoly, Rational, UniPoly};

/// Descartes sign variations of the coefficient list.
fn variations(p: &UniPoly) -> usize {
    let signs: Vec<i8> = p.coeffs().iter().map(sign).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(1 + x)^d p((a + b x) / (1 + x))`: roots in `(a, b)` become positive roots.
fn mobius(p: &UniPoly, a: &Rational, b: &Rational) -> UniPoly {
    let d = p.degree().unwrap_or(0);
    let num = UniPoly::new(vec![a.clone(), b.clone()]);
    let den = UniPoly::new(vec![Rational::one(), Rational::one()]);
    let mut out = UniPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out = &out + &(&num.pow(k as u32) * &den.pow((d - k) as u32)).scale(c);
    }
    out
}

/// Roots of a squarefree `p` in the open interval `(a, b)` by Descartes bisection.
fn open_count(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    match variations(&mobius(p, a, b)) {
        0 => 0,
        1 => 1,
        _ => {
            let m = (a + b) / int(2);
            let at_mid = usize::from(p.eval(&m).is_zero());
            open_count(p, a, &m) + at_mid + open_count(p, &m, b)
        }
    }
}

/// Independent isolator: distinct roots in `(a, b]`.
fn bisection_count(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    let sf = p.squarefree_part();
    open_count(&sf, a, b) + usize::from(sf.eval(b).is_zero())
}

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-10i64..=10, 1..=max_degree + 1).prop_map(|c| UniPoly::from_ints(&c))
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

#[test]
fn sturm_examples() {
    let p = UniPoly::from_roots(&[int(1), int(2), int(3)]);
    assert_eq!(sturm_root_count(&p, &int(0), &int(10)).unwrap(), 3);
    assert_eq!(sturm_root_count(&UniPoly::from_ints(&[1, 0, 1]), &int(-5), &int(5)).unwrap(), 0);
    assert!(sturm_root_count(&UniPoly::zero(), &int(0), &int(1)).is_err());
    // t^5 - 3t^2 + 2 on (0, M] with M past the Cauchy bound
    let q = UniPoly::from_ints(&[2, 0, -3, 0, 0, 1]);
    let m = q.cauchy_bound();
    let oracle = bisection_count(&q, &int(0), &m);
    assert_eq!(oracle, 2);
    assert_eq!(sturm_root_count(&q, &int(0), &m).unwrap(), oracle);
}

#[test]
fn certified_sup_examples() {
    let s = certified_sup(&UniPoly::x(), &int(0), &int(1), 32).unwrap();
    assert_eq!((s.lo, s.hi), (int(1), int(1)));
    let s = certified_sup(&UniPoly::from_ints(&[0, -1, 1]), &int(0), &int(1), 32).unwrap();
    assert_eq!((s.lo, s.hi), (ratio(1, 4), ratio(1, 4)));
    let s = certified_sup(&UniPoly::from_ints(&[0, -3, 0, 1]), &int(-2), &int(2), 32).unwrap();
    assert_eq!((s.lo, s.hi), (int(2), int(2)));
}

#[test]
fn interval_eval_examples() {
    let unit = IntervalBox::new(vec![Interval::new(int(0), int(1)).unwrap(); 2]);
    let sum = MultiPoly::parse("x + y", &["x", "y"]).unwrap().interval_eval(&unit).unwrap();
    assert_eq!((sum.lo().clone(), sum.hi().clone()), (int(0), int(2)));
    let sym = IntervalBox::new(vec![Interval::new(int(-1), int(1)).unwrap()]);
    let sq = MultiPoly::parse("x^2", &["x"]).unwrap().interval_eval(&sym).unwrap();
    assert!(sq.contains(&int(0)) && sq.contains(&int(1)));
    let p = MultiPoly::parse("x*y - x", &["x", "y"]).unwrap();
    let e = p.interval_eval(&unit).unwrap();
    assert!(e.contains(&int(-1)) && e.contains(&int(0)));
    assert!(p.interval_eval(&sym).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_matches_bisection(p in poly_strategy(9), a in rational_strategy(), w in 1i64..=40) {
        prop_assume!(!p.is_zero());
        let b = &a + ratio(w, 2);
        prop_assert_eq!(sturm_root_count(&p, &a, &b).unwrap(), bisection_count(&p, &a, &b));
    }

    #[test]
    fn sturm_counts_planted_roots(
        roots in prop::collection::btree_set(-20i64..=20, 0..6),
        mult in 1u32..=3,
        shift in 1i64..=5,
    ) {
        // planted rational roots times a factor with no real roots
        let rs: Vec<Rational> = roots.iter().map(|&r| ratio(r, 2)).collect();
        let p = &UniPoly::from_roots(&rs).pow(mult) * &UniPoly::from_ints(&[shift, 0, 1]);
        let (a, b) = (int(-3), int(4));
        let expected = rs.iter().filter(|r| **r > a && **r <= b).count();
        prop_assert_eq!(sturm_root_count(&p, &a, &b).unwrap(), expected);
    }

    #[test]
    fn sup_encloses_grid(p in poly_strategy(7), a in rational_strategy(), w in 1i64..=8) {
        let b = &a + int(w);
        let s = certified_sup(&p, &a, &b, 32).unwrap();
        prop_assert!(s.lo <= s.hi);
        for i in 0..=64 {
            let t = &a + (&b - &a) * ratio(i, 64);
            let v = p.eval(&t);
            let abs = if v < Rational::zero() { -v } else { v };
            prop_assert!(abs <= s.hi);
        }
    }

    #[test]
    fn derivative_is_linear(p in poly_strategy(8), q in poly_strategy(8), c in rational_strategy()) {
        let lhs = differentiate(&(&p + &q.scale(&c)), 0);
        let rhs = &differentiate(&p, 0) + &differentiate(&q, 0).scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multivariate_derivative_is_linear(
        a in prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 1..6),
        b in prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 1..6),
        var in 0usize..2,
    ) {
        let build = |ts: &[((u32, u32), i64)]| {
            MultiPoly::from_terms(2, ts.iter().map(|((i, j), c)| (vec![*i, *j], int(*c))))
        };
        let (p, q) = (build(&a), build(&b));
        prop_assert_eq!(differentiate(&(&p + &q), var), &differentiate(&p, var) + &differentiate(&q, var));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn interval_eval_contains_grid(
        terms in prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 1..6),
        x0 in -4i64..=4, y0 in -4i64..=4, wx in 1i64..=4, wy in 1i64..=4,
    ) {
        let p = MultiPoly::from_terms(2, terms.iter().map(|((i, j), c)| (vec![*i, *j], int(*c))));
        let (xl, yl) = (ratio(x0, 2), ratio(y0, 2));
        let (xh, yh) = (&xl + ratio(wx, 2), &yl + ratio(wy, 2));
        let bx = IntervalBox::new(vec![
            Interval::new(xl.clone(), xh.clone()).unwrap(),
            Interval::new(yl.clone(), yh.clone()).unwrap(),
        ]);
        let e = p.interval_eval(&bx).unwrap();
        // 100 x 100 = 10^4 grid samples
        for i in 0..100 {
            let x = &xl + (&xh - &xl) * ratio(i, 99);
            for j in 0..100 {
                let y = &yl + (&yh - &yl) * ratio(j, 99);
                prop_assert!(e.contains(&p.eval(&[x.clone(), y])));
            }
        }
    }
}
