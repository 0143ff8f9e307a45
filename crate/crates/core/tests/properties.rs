use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use sturmlab::analysis::star_discrepancy;
use sturmlab::constructions::{realize, sturmian_representative, OrderConstraintSet};
use sturmlab::permutations::{pattern_of, perm_complexity_profile, underlying_word};
use sturmlab::sturmian::{enumerate_factors_exact, generate, weight_class, Weight};
use sturmlab::words::{complexity_profile, conjugates, detect_period, factors};
use sturmlab::{Convention, ExactReal, Representative, SturmianSpec, Word};

const RADICANDS: [u64; 6] = [2, 3, 5, 6, 7, 13];

fn quadratic(d: u64) -> impl Strategy<Value = ExactReal> {
    (-60i64..60, -40i64..40, 1i64..30).prop_map(move |(a, b, c)| ExactReal::new(a, b, c, d).expect("c > 0"))
}

fn same_field_pair() -> impl Strategy<Value = (ExactReal, ExactReal)> {
    proptest::sample::select(&RADICANDS[..]).prop_flat_map(|d| (quadratic(d), quadratic(d)))
}

fn irrational_slope() -> impl Strategy<Value = ExactReal> {
    (proptest::sample::select(&RADICANDS[..]), -60i64..60, 1i64..40, 1i64..30)
        .prop_map(|(d, a, b, c)| ExactReal::new(a, b, c, d).expect("c > 0").frac())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..2, 1..max_len).prop_map(Word::from_letters)
}

fn distinct_rationals(max_len: usize) -> impl Strategy<Value = Vec<ExactReal>> {
    proptest::collection::btree_set(1i64..100_000, 1..max_len)
        .prop_flat_map(|set| Just(set.into_iter().collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| v.into_iter().map(|n| ExactReal::from_ratio(n, 100_000).expect("nonzero")).collect())
}

/// `floor(x * 10^50)` up to an error of `|b|/c + 1`, from integer arithmetic only.
fn scaled_50(x: &ExactReal) -> (BigInt, BigInt) {
    let scale = BigInt::from(10u32).pow(50);
    let root = if x.radicand() == 0 { BigInt::from(0) } else { (BigInt::from(x.radicand()) * &scale * &scale).sqrt() };
    let num = x.rational_part() * &scale + x.surd_coefficient() * root;
    let err = x.surd_coefficient().magnitude().clone() / x.denominator().magnitude() + 2u32;
    (num / x.denominator(), BigInt::from(err))
}

fn decimal_cmp(x: &ExactReal, y: &ExactReal) -> Option<Ordering> {
    let ((px, ex), (py, ey)) = (scaled_50(x), scaled_50(y));
    let diff = &px - &py;
    (diff.magnitude() > (ex + ey).magnitude()).then(|| diff.sign().cmp(&num_bigint::Sign::NoSign))
}

fn brute_period(w: &Word, t_max: usize) -> Option<(usize, usize)> {
    let l = w.letters();
    for t in 1..=t_max.min(l.len().saturating_sub(1)) {
        for pre in 0..=t_max {
            if (pre..l.len().saturating_sub(t)).all(|i| l[i] == l[i + t]) {
                return Some((pre, t));
            }
        }
    }
    None
}

fn brute_patterns(values: &[f64], n: usize) -> usize {
    values
        .windows(n)
        .map(|w| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| w[a].partial_cmp(&w[b]).expect("finite"));
            idx
        })
        .collect::<HashSet<_>>()
        .len()
}

/// Supremum over anchored intervals `[0, t)` and `[0, t]` with `t` a sample
/// point or 1.
fn anchored_discrepancy(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mut worst: f64 = 0.0;
    for &t in values.iter().chain(std::iter::once(&1.0)) {
        let below = values.iter().filter(|&&v| v < t).count() as f64;
        let upto = values.iter().filter(|&&v| v <= t).count() as f64;
        worst = worst.max((below / n - t).abs()).max((upto / n - t).abs());
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn comparison_agrees_with_50_digit_evaluation((x, y) in same_field_pair()) {
        let exact = x.try_cmp(&y).unwrap();
        if let Some(decimal) = decimal_cmp(&x, &y) {
            prop_assert_eq!(exact, decimal);
        }
        prop_assert_eq!(exact == Ordering::Equal, x == y);
    }

    #[test]
    fn frac_is_idempotent_and_in_unit_interval((x, _) in same_field_pair()) {
        let f = x.frac();
        prop_assert_eq!(f.frac(), f.clone());
        prop_assert!(f.signum() >= 0);
        prop_assert!(f.try_cmp(&ExactReal::one()).unwrap().is_lt());
        let shifted = x.try_sub(&ExactReal::from_integer(x.floor())).unwrap();
        prop_assert_eq!(shifted, f);
    }

    #[test]
    fn addition_and_multiplication_are_consistent((x, y) in same_field_pair()) {
        let sum = x.try_add(&y).unwrap();
        prop_assert_eq!(sum.try_sub(&y).unwrap(), x.clone());
        if !y.is_zero() {
            let q = x.try_mul(&y.recip().unwrap()).unwrap();
            prop_assert_eq!(q.try_mul(&y).unwrap(), x);
        }
    }

    #[test]
    fn parse_inverts_display((x, _) in same_field_pair()) {
        prop_assert_eq!(x.to_string().parse::<ExactReal>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn detect_period_matches_brute_force(w in word(40), t_max in 1usize..12) {
        let got = detect_period(&w, t_max).map(|p| (p.preperiod, p.period));
        prop_assert_eq!(got, brute_period(&w, t_max));
    }

    #[test]
    fn complexity_profile_matches_window_scan(w in word(200)) {
        let n_max = w.len().min(20);
        let profile = complexity_profile(&w, n_max).unwrap();
        for n in 1..=n_max {
            let oracle = w.letters().windows(n).collect::<HashSet<_>>().len();
            prop_assert_eq!(profile.get(n), Some(oracle));
            prop_assert_eq!(factors(&w, n).unwrap().len(), oracle);
        }
    }

    #[test]
    fn conjugate_count_divides_length(w in word(30)) {
        let c = conjugates(&w);
        prop_assert_eq!(w.len() % c.len(), 0);
        prop_assert!(c.iter().all(|v| v.ones() == w.ones()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_complexity_matches_brute_force(values in distinct_rationals(300)) {
        let rep = Representative::new(values.clone()).unwrap();
        let floats: Vec<f64> = values.iter().map(ExactReal::to_f64).collect();
        let n_max = rep.len().min(12);
        let profile = perm_complexity_profile(&rep, n_max).unwrap();
        for n in 1..=n_max {
            prop_assert_eq!(profile.get(n), Some(brute_patterns(&floats, n)));
        }
    }

    #[test]
    fn star_discrepancy_matches_anchored_intervals(values in distinct_rationals(200)) {
        let exact = star_discrepancy(&values).unwrap().to_f64();
        let floats: Vec<f64> = values.iter().map(ExactReal::to_f64).collect();
        prop_assert!((exact - anchored_discrepancy(&floats)).abs() < 1e-12);
    }

    #[test]
    fn pattern_is_invariant_under_increasing_maps(values in distinct_rationals(60)) {
        let moved: Vec<ExactReal> = values
            .iter()
            .map(|v| v.scale(1, 3).unwrap().try_add(&ExactReal::from_integer(1000)).unwrap())
            .collect();
        prop_assert_eq!(pattern_of(&values).unwrap(), pattern_of(&moved).unwrap());
    }

    #[test]
    fn realize_satisfies_every_constraint(
        order in Just((0..25usize).collect::<Vec<_>>()).prop_shuffle(),
        picks in proptest::collection::vec((0usize..25, 0usize..25), 0..60),
    ) {
        // Orient each pick along a hidden total order so the set is acyclic.
        let pos = |i: usize| order.iter().position(|&v| v == i).unwrap();
        let pairs: BTreeSet<(usize, usize)> = picks
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| if pos(i) < pos(j) { (i, j) } else { (j, i) })
            .collect();
        let set = OrderConstraintSet::new(25, pairs.clone()).unwrap();
        let rep = realize(&set);
        for (i, j) in pairs {
            prop_assert!(rep.ranks()[i] < rep.ranks()[j]);
        }
    }

    #[test]
    fn factor_weights_are_floor_or_ceil(sigma in irrational_slope(), n in 1usize..40) {
        let exact = enumerate_factors_exact(&sigma, n).unwrap();
        prop_assert_eq!(exact.len(), n + 1);
        let lo = sigma.scale(n as i64, 1).unwrap().floor();
        let light = exact.iter().filter(|v| BigInt::from(v.ones()) == lo).count();
        prop_assert!(light >= 1 && light <= n);
        for v in exact.iter() {
            let expected = if BigInt::from(v.ones()) == lo { Weight::Light } else { Weight::Heavy };
            prop_assert_eq!(weight_class(v, &sigma).unwrap(), expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn underlying_word_of_sturmian_representative_is_its_coding(
        d in proptest::sample::select(vec![2u64, 5]),
        (a, b, c) in (-40i64..40, 1i64..20, 1i64..20),
        (ra, rb, rc) in (-40i64..40, -20i64..20, 1i64..20),
        upper in any::<bool>(),
    ) {
        let sigma = ExactReal::new(a, b, c, d).unwrap().frac();
        let rho = ExactReal::new(ra, rb, rc, d).unwrap().frac();
        let convention = if upper { Convention::Upper } else { Convention::Lower };
        let spec = SturmianSpec::new(sigma, rho, convention).unwrap();
        let rep = sturmian_representative(&spec, 2000).unwrap();
        prop_assert_eq!(underlying_word(&rep), generate(&spec, 1999));
    }

    #[test]
    fn prefix_factors_equal_exact_enumeration(sigma in irrational_slope(), n in 1usize..12) {
        let spec = SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Lower).unwrap();
        let prefix = generate(&spec, 5000);
        let exact = enumerate_factors_exact(&sigma, n).unwrap();
        let observed = factors(&prefix, n).unwrap();
        prop_assert_eq!(exact.len(), n + 1);
        prop_assert!(observed.is_subset(&exact));
    }
}
