use proptest::prelude::*;

use mindenom::minden::{min_denominator, q_j, q_j_with, q_t_delta};
use mindenom::{Algorithm, Fraction, Interval, Variant};

/// Smallest q such that some p/q lies in the interval, by scanning numerators.
fn scan(lo: (i64, i64), hi: (i64, i64), lo_closed: bool, hi_closed: bool) -> u64 {
    let inside = |p: i64, q: i64| {
        let above = if lo_closed { p * lo.1 >= lo.0 * q } else { p * lo.1 > lo.0 * q };
        let below = if hi_closed { p * hi.1 <= hi.0 * q } else { p * hi.1 < hi.0 * q };
        above && below
    };
    (1..)
        .find(|&q| {
            let start = (lo.0 * q).div_euclid(lo.1);
            (start..=start + q + 1).any(|p| inside(p, q))
        })
        .unwrap() as u64
}

fn fraction() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=300).prop_flat_map(|d| (-d..=2 * d, Just(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn both_algorithms_match_a_numerator_scan(
        a in fraction(), b in fraction(), lo_closed: bool, hi_closed: bool,
    ) {
        let (x, y) = (Fraction::new(a.0, a.1).unwrap(), Fraction::new(b.0, b.1).unwrap());
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        if let Ok(iv) = Interval::new(lo, hi, lo_closed, hi_closed) {
            let expected = scan((lo.num(), lo.den()), (hi.num(), hi.den()), lo_closed, hi_closed);
            prop_assert_eq!(min_denominator(&iv, Algorithm::Fast), expected);
            prop_assert_eq!(min_denominator(&iv, Algorithm::Oracle), expected);
        }
    }

    #[test]
    fn translation_by_integers_is_invariant(a in fraction(), w in 1i64..50, shift in -5i64..5) {
        let lo = Fraction::new(a.0, a.1).unwrap();
        let hi = Fraction::new(a.0 * w + a.1, a.1 * w).unwrap();
        let moved = |f: Fraction| Fraction::new(f.num() + shift * f.den(), f.den()).unwrap();
        for v in Variant::ALL {
            let base = Interval::with_variant(lo, hi, v).unwrap();
            let shifted = Interval::with_variant(moved(lo), moved(hi), v).unwrap();
            prop_assert_eq!(
                min_denominator(&base, Algorithm::Fast),
                min_denominator(&shifted, Algorithm::Fast)
            );
        }
    }

    #[test]
    fn closed_le_half_open_le_open(a in fraction(), b in fraction()) {
        let (x, y) = (Fraction::new(a.0, a.1).unwrap(), Fraction::new(b.0, b.1).unwrap());
        prop_assume!(x != y);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let q = |v| min_denominator(&Interval::with_variant(lo, hi, v).unwrap(), Algorithm::Fast);
        prop_assert!(q(Variant::Closed) <= q(Variant::HalfOpenRight));
        prop_assert!(q(Variant::Closed) <= q(Variant::HalfOpenLeft));
        prop_assert!(q(Variant::HalfOpenRight) <= q(Variant::Open));
        prop_assert!(q(Variant::HalfOpenLeft) <= q(Variant::Open));
    }
}

#[test]
fn q_j_against_scan() {
    for n in 1..=60i64 {
        for j in 1..=n {
            let expected = scan((j - 1, n), (j, n), false, true);
            assert_eq!(q_j(n as u64, j as u64, Variant::HalfOpenRight).unwrap(), expected);
            assert_eq!(q_j_with(n as u64, j as u64, Variant::HalfOpenRight, Algorithm::Oracle).unwrap(), expected);
        }
    }
}

#[test]
fn q_t_delta_small_cases() {
    let f = |p, q| Fraction::new(p, q).unwrap();
    assert_eq!(q_t_delta(f(1, 3), f(1, 4)).unwrap(), 3);
    assert_eq!(q_t_delta(f(1, 1), f(1, 10)).unwrap(), 1);
    assert!(q_t_delta(f(1, 2), f(0, 1)).is_err());
}
