//! Minimal denominator `q(E) = min{q ≥ 1 : ∃ p, p/q ∈ E}` of an interval.
//!
//! Two algorithms are provided. [`Algorithm::Oracle`] scans `q = 1, 2, …`
//! and is the reference. [`Algorithm::Fast`] descends the continued fraction
//! of the interval: if the interval contains an integer the answer is 1,
//! otherwise it is translated into `[0, 1]` and inverted (`x ↦ 1/x` swaps
//! the endpoints and their open/closed flags). The denominator of the
//! original interval is the least numerator of the inverted one, and the
//! descent returns the simplest fraction of every positive interval, which
//! minimises numerator and denominator at once. Each level is one step of
//! the Euclidean algorithm on the endpoints, so the depth is
//! `O(log max(den))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::farey::{ceil_count, Fraction};

/// Interval with rational endpoints and independent boundary flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Fraction,
    hi: Fraction,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// Rejects `lo > hi`, and `lo = hi` unless both ends are closed.
    pub fn new(lo: Fraction, hi: Fraction, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Greater => Err(Error::EmptyInterval),
            Ordering::Equal if !(lo_closed && hi_closed) => Err(Error::EmptyInterval),
            _ => Ok(Self { lo, hi, lo_closed, hi_closed }),
        }
    }

    pub fn with_variant(lo: Fraction, hi: Fraction, variant: Variant) -> Result<Self> {
        let (lo_closed, hi_closed) = variant.flags();
        Self::new(lo, hi, lo_closed, hi_closed)
    }

    pub fn point(x: Fraction) -> Self {
        Self { lo: x, hi: x, lo_closed: true, hi_closed: true }
    }

    pub fn lo(&self) -> Fraction {
        self.lo
    }

    pub fn hi(&self) -> Fraction {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, x: Fraction) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    /// Whether `self ⊆ other` as real sets.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Greater => true,
            Ordering::Equal => other.lo_closed || !self.lo_closed,
            Ordering::Less => false,
        };
        let hi_ok = match self.hi.cmp(&other.hi) {
            Ordering::Less => true,
            Ordering::Equal => other.hi_closed || !self.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { ']' };
        let close = if self.hi_closed { ']' } else { '[' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// Boundary convention for the subintervals `((j−1)/N, j/N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `](j−1)/N, j/N]`, the default.
    #[default]
    HalfOpenRight,
    /// `[(j−1)/N, j/N[`
    HalfOpenLeft,
    Closed,
    Open,
}

impl Variant {
    pub const ALL: [Variant; 4] =
        [Variant::HalfOpenRight, Variant::HalfOpenLeft, Variant::Closed, Variant::Open];

    /// `(lo_closed, hi_closed)`
    pub fn flags(self) -> (bool, bool) {
        match self {
            Variant::HalfOpenRight => (false, true),
            Variant::HalfOpenLeft => (true, false),
            Variant::Closed => (true, true),
            Variant::Open => (false, false),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::HalfOpenRight => "half-open-right",
            Variant::HalfOpenLeft => "half-open-left",
            Variant::Closed => "closed",
            Variant::Open => "open",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    Oracle,
    #[default]
    Fast,
}

pub fn min_denominator(interval: &Interval, algo: Algorithm) -> u64 {
    if interval.lo == interval.hi {
        return interval.lo.den() as u64;
    }
    match algo {
        Algorithm::Oracle => scan(interval),
        Algorithm::Fast => descend(interval),
    }
}

/// Integers `p` with `p/q ∈ interval`, as an inclusive range.
fn numerators(interval: &Interval, q: i64) -> (i64, i64) {
    let scaled = |x: Fraction| Fraction::new(x.num() * q, x.den()).expect("positive denominator");
    let (lo, hi) = (scaled(interval.lo), scaled(interval.hi));
    let first = if interval.lo_closed { lo.ceil() } else { lo.floor() + 1 };
    let last = if interval.hi_closed { hi.floor() } else { hi.ceil() - 1 };
    (first, last)
}

fn scan(interval: &Interval) -> u64 {
    for q in 1i64.. {
        let (first, last) = numerators(interval, q);
        // [first, last + 1[ holds the candidate numerators
        if ceil_count(Fraction::from_integer(first), Fraction::from_integer(last + 1)) == 0 {
            continue;
        }
        if (first..=last).any(|p| gcd(p.unsigned_abs(), q as u64) == 1) {
            return q as u64;
        }
    }
    unreachable!("a non-degenerate interval contains a rational")
}

#[derive(Debug, Clone, Copy)]
struct Ratio {
    n: i128,
    d: i128,
}

impl Ratio {
    fn floor(self) -> i128 {
        Integer::div_floor(&self.n, &self.d)
    }

    fn cmp_int(self, c: i128) -> Ordering {
        self.n.cmp(&(c * self.d))
    }

    fn minus_int(self, c: i128) -> Ratio {
        Ratio { n: self.n - c * self.d, d: self.d }
    }

    /// `1/self` for `self > 0`.
    fn recip(self) -> Ratio {
        Ratio { n: self.d, d: self.n }
    }
}

fn descend(interval: &Interval) -> u64 {
    let lo = Ratio { n: interval.lo.num() as i128, d: interval.lo.den() as i128 };
    let hi = Ratio { n: interval.hi.num() as i128, d: interval.hi.den() as i128 };
    let (_, q) = simplest(lo, interval.lo_closed, Some(hi), interval.hi_closed);
    q as u64
}

/// Simplest fraction `(p, q)` in the interval from `lo` to `hi`
/// (`None` for `+∞`). The interval must be non-degenerate.
fn simplest(lo: Ratio, lo_closed: bool, hi: Option<Ratio>, hi_closed: bool) -> (i128, i128) {
    let floor = lo.floor();
    let smallest = if lo_closed && lo.cmp_int(floor) == Ordering::Equal { floor } else { floor + 1 };
    let fits = match hi {
        None => true,
        Some(h) => match h.cmp_int(smallest) {
            Ordering::Greater => true,
            Ordering::Equal => hi_closed,
            Ordering::Less => false,
        },
    };
    if fits {
        return (smallest, 1);
    }
    // No integer inside, so the interval lies in [floor, floor + 1] and
    // hi is finite and strictly above floor.
    let hi = hi.expect("bounded").minus_int(floor);
    let lo = lo.minus_int(floor);
    let inv_hi = if lo.n == 0 { None } else { Some(lo.recip()) };
    let (a, b) = simplest(hi.recip(), hi_closed, inv_hi, lo_closed);
    (floor * a + b, a)
}

/// `q(]t − δ, t])`.
pub fn q_t_delta(t: Fraction, delta: Fraction) -> Result<u64> {
    if delta <= Fraction::zero() {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let lo = Fraction::new(
        t.num() * delta.den() - delta.num() * t.den(),
        t.den() * delta.den(),
    )?;
    let interval = Interval::new(lo, t, false, true)?;
    Ok(min_denominator(&interval, Algorithm::Fast))
}

/// `q` of the `j`-th subinterval `((j−1)/N, j/N)` with the given boundary flags.
pub fn q_j(n: u64, j: u64, variant: Variant) -> Result<u64> {
    q_j_with(n, j, variant, Algorithm::Fast)
}

pub fn q_j_with(n: u64, j: u64, variant: Variant, algo: Algorithm) -> Result<u64> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::OutOfRange { index: j, lo: 1, hi: n });
    }
    let (n, j) = (n as i64, j as i64);
    let interval = Interval::with_variant(Fraction::new(j - 1, n)?, Fraction::new(j, n)?, variant)?;
    Ok(min_denominator(&interval, algo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn both(i: &Interval) -> u64 {
        let oracle = min_denominator(i, Algorithm::Oracle);
        assert_eq!(oracle, min_denominator(i, Algorithm::Fast), "{i}");
        oracle
    }

    #[test]
    fn examples() {
        assert_eq!(both(&Interval::new(frac(1, 2), frac(1, 1), false, true).unwrap()), 1);
        assert_eq!(both(&Interval::new(frac(0, 1), frac(1, 2), false, true).unwrap()), 2);
        assert_eq!(both(&Interval::new(frac(1, 3), frac(1, 2), false, false).unwrap()), 5);
    }

    #[test]
    fn q_t_delta_examples() {
        assert_eq!(q_t_delta(frac(1, 1), frac(1, 1)), Ok(1));
        assert_eq!(q_t_delta(frac(1, 2), frac(1, 2)), Ok(2));
        assert_eq!(q_t_delta(frac(1, 7), frac(1, 7)), Ok(7));
        assert!(q_t_delta(frac(1, 2), frac(0, 1)).is_err());
        assert!(q_t_delta(frac(1, 2), frac(-1, 3)).is_err());
    }

    #[test]
    fn q_j_examples() {
        assert_eq!(q_j(9, 1, Variant::HalfOpenRight), Ok(9));
        assert_eq!(q_j(9, 9, Variant::HalfOpenRight), Ok(1));
        assert_eq!(q_j(4, 3, Variant::HalfOpenRight), Ok(3));
        assert_eq!(q_j(2, 1, Variant::Open), Ok(3));
        assert!(q_j(4, 0, Variant::Open).is_err());
        assert!(q_j(4, 5, Variant::Open).is_err());
    }

    #[test]
    fn degenerate_and_empty() {
        assert_eq!(min_denominator(&Interval::point(frac(6, 4)), Algorithm::Fast), 2);
        assert_eq!(min_denominator(&Interval::point(frac(3, 1)), Algorithm::Oracle), 1);
        assert_eq!(Interval::new(frac(1, 2), frac(1, 2), true, false), Err(Error::EmptyInterval));
        assert_eq!(Interval::new(frac(1, 2), frac(1, 3), true, true), Err(Error::EmptyInterval));
    }

    #[test]
    fn negative_and_long_intervals() {
        assert_eq!(both(&Interval::new(frac(-1, 3), frac(-1, 4), true, true).unwrap()), 3);
        assert_eq!(both(&Interval::new(frac(-5, 2), frac(7, 3), false, false).unwrap()), 1);
        assert_eq!(both(&Interval::new(frac(-1, 1), frac(0, 1), false, false).unwrap()), 2);
        assert_eq!(both(&Interval::new(frac(2, 1), frac(3, 1), false, false).unwrap()), 2);
    }

    #[test]
    fn excluded_endpoint_is_only_witness() {
        // [1/3, 1/2] has q = 2 via 1/2; excluding 1/2 leaves 1/3.
        let closed = Interval::new(frac(1, 3), frac(1, 2), true, true).unwrap();
        let right_open = Interval::new(frac(1, 3), frac(1, 2), true, false).unwrap();
        assert_eq!(both(&closed), 2);
        assert_eq!(both(&right_open), 3);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("half-open".parse::<Variant>().is_err());
    }

    fn interval_strategy() -> impl Strategy<Value = Interval> {
        (-3000i64..3000, 1i64..=1000, 1i64..=2000, 1i64..=1000, any::<bool>(), any::<bool>())
            .prop_map(|(p, q, dp, dq, lc, hc)| {
                let lo = Fraction::new(p, q).unwrap();
                let hi = Fraction::new(p * dq + dp * q, q * dq).unwrap();
                Interval::new(lo, hi, lc, hc).unwrap()
            })
    }

    proptest! {
        #[test]
        fn fast_agrees_with_oracle(i in interval_strategy()) {
            prop_assert_eq!(
                min_denominator(&i, Algorithm::Fast),
                min_denominator(&i, Algorithm::Oracle)
            );
        }

        #[test]
        fn result_is_attained(i in interval_strategy()) {
            let q = min_denominator(&i, Algorithm::Fast) as i64;
            let (first, last) = numerators(&i, q);
            prop_assert!(first <= last);
            prop_assert!(i.contains(Fraction::new(first, q).unwrap()));
        }
    }
}
