//! Farey-sequence machinery.
//!
//! Consecutive members `a/r < b/s` of the Farey sequence `F_k` satisfy
//! `b·r − a·s = 1` and `r + s > k`, so the right member is `inv(r, s)/s` and
//! the whole of `F_k ∩ [0, 1]` is determined by its sequence of
//! denominators. Walking `F_k` therefore only needs the next-denominator
//! recurrence `t = s·⌊(k + r)/s⌋ − r`; numerators are recovered with
//! [`inv_mod`] when they are actually needed.
//!
//! Orders are machine integers: `k + r ≤ 2k` must fit in a `u64`, which holds
//! for every order this crate is used with (`k ≤ 2·10⁹` keeps everything
//! comfortably inside 64 bits).

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::arith::{gcd, phi_sieve};
use crate::error::{Error, Result};
use crate::ExactScalar;

/// A reduced fraction `num/den` with `den ≥ 1`; zero is `0/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub const fn from_integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub const fn zero() -> Self {
        Self::from_integer(0)
    }

    pub const fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn ceil(&self) -> i64 {
        -Integer::div_floor(&-self.num, &self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_exact(&self) -> ExactScalar {
        ExactScalar::new(self.num.into(), self.den.into())
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a fraction: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => Fraction::new(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Fraction::from_integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

/// Denominators `(r, s)` of two consecutive members of `F_k ∩ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjacentPair {
    pub r: u64,
    pub s: u64,
    pub k: u64,
}

impl AdjacentPair {
    pub fn new(k: u64, r: u64, s: u64) -> Result<Self> {
        if is_adjacent(k, r, s) {
            Ok(Self { r, s, k })
        } else {
            Err(Error::NotAdjacent { k, r, s })
        }
    }

    /// Numerator of the right member, `inv(r, s)`.
    pub fn right_numerator(&self) -> u64 {
        inv_mod_u64(self.r, self.s)
    }

    pub fn right(&self) -> Fraction {
        Fraction { num: self.right_numerator() as i64, den: self.s as i64 }
    }

    pub fn left(&self) -> Fraction {
        // b·r − a·s = 1
        let b = self.right_numerator() as i128;
        let a = (b * self.r as i128 - 1) / self.s as i128;
        Fraction { num: a as i64, den: self.r as i64 }
    }

    /// The gap between the two members is `1/(r·s)`; this is `r·s`.
    pub fn gap_denominator(&self) -> u64 {
        self.r * self.s
    }

    pub fn gap(&self) -> ExactScalar {
        ExactScalar::new(1.into(), self.gap_denominator().into())
    }

    /// Denominator of the member following the right one.
    pub fn next_denominator(&self) -> u64 {
        step(self.k, self.r, self.s)
    }
}

fn is_adjacent(k: u64, r: u64, s: u64) -> bool {
    r >= 1 && s >= 1 && r.max(s) <= k && k < r + s && gcd(r, s) == 1
}

#[inline(always)]
pub(crate) fn step(k: u64, r: u64, s: u64) -> u64 {
    s * ((k + r) / s) - r
}

/// The unique `b` with `0 < b ≤ q` and `a·b ≡ 1 (mod q)`.
pub fn inv_mod(a: i64, q: i64) -> Result<i64> {
    if q <= 0 {
        return Err(Error::NonPositiveModulus(q));
    }
    let ext = (a as i128).extended_gcd(&(q as i128));
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { a, q });
    }
    let b = ext.x.rem_euclid(q as i128);
    Ok(if b == 0 { q } else { b as i64 })
}

/// [`inv_mod`] for arguments already known to be coprime.
#[inline]
pub(crate) fn inv_mod_u64(a: u64, q: u64) -> u64 {
    debug_assert!(q >= 1 && gcd(a, q) == 1);
    // Extended Euclid on (a mod q, q), tracking only the coefficient of a.
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (t0, t1) = (t1, t0 - quo * t1);
    }
    let b = t0.rem_euclid(q as i128) as u64;
    if b == 0 {
        q
    } else {
        b
    }
}

/// Number of integers in `[a, b[`.
pub fn ceil_count(a: Fraction, b: Fraction) -> u64 {
    if a > b {
        0
    } else {
        (b.ceil() - a.ceil()) as u64
    }
}

/// Denominator of the Farey fraction of order `k` that follows two
/// consecutive members with denominators `r` and `s`.
pub fn next_denominator(k: u64, r: u64, s: u64) -> Result<u64> {
    if !is_adjacent(k, r, s) {
        return Err(Error::NotAdjacent { k, r, s });
    }
    Ok(step(k, r, s))
}

/// Iterator over the adjacent denominator pairs of `F_k ∩ [0, 1]`, from
/// `(0/1, 1/k)` to `((k−1)/k, 1/1)`.
#[derive(Debug, Clone)]
pub struct PairWalk {
    k: u64,
    r: u64,
    s: u64,
    done: bool,
}

impl PairWalk {
    pub fn new(k: u64) -> Self {
        assert!(k >= 1, "Farey order must be positive");
        Self { k, r: 1, s: k, done: false }
    }
}

impl Iterator for PairWalk {
    type Item = AdjacentPair;

    #[inline]
    fn next(&mut self) -> Option<AdjacentPair> {
        if self.done {
            return None;
        }
        let pair = AdjacentPair { r: self.r, s: self.s, k: self.k };
        if self.s == 1 {
            self.done = true;
        } else {
            let t = step(self.k, self.r, self.s);
            self.r = self.s;
            self.s = t;
        }
        Some(pair)
    }
}

/// `F_k ∩ [0, 1]` in increasing order.
pub fn farey_sequence(k: u64) -> Vec<Fraction> {
    std::iter::once(Fraction::zero())
        .chain(PairWalk::new(k).map(|p| p.right()))
        .collect()
}

/// The `A(k)` adjacent pairs of `F_k`, in sequence order.
pub fn adjacent_pairs(k: u64) -> Vec<AdjacentPair> {
    PairWalk::new(k).collect()
}

/// `A(x) = Σ_{n ≤ x} φ(n)`.
pub fn totient_summatory(x: u64) -> u64 {
    phi_sieve(x as usize).iter().skip(1).sum()
}
