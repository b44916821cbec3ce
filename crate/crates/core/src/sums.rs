//! Exact evaluation of `S(N)` and the quantities of its remainder identity.
//!
//! Notation, for `N ≥ 1` and `1 ≤ k ≤ N`, with `F_k ∩ [0,1] = {ρ_0 < … < ρ_M}`:
//!
//! * `θ_N(k) = #{j : q_j(N) > k}` and `S(N) = Σ_{k=0}^{N} θ_N(k)`;
//! * `ν_N(k)` is the measure of `{t ∈ [0,1[ : q(t, 1/N) > k}`, equal to the
//!   total of `gap − 1/N` over the gaps of `F_k` that are at least `1/N`;
//! * `∫₀¹ q(t, 1/N) dt = Σ_k ν_N(k)` and `R(N) = S(N) − N·∫`;
//! * `ξ_N(k) = θ_N(k) − N·ν_N(k)` is the telescoping sum of fractional parts
//!   `{−Nρ_i} − {−Nρ_{i−1}}` over the long gaps, and `ξ_N(k) = −2σ_N(k)`,
//!   where `σ_N(k)` sums `B1(Nρ_i)` over the members whose left gap is long
//!   and right gap is short;
//! * `T(N) = Σ_k σ_N(k) = −R(N)/2`, which regroups over coprime pairs
//!   `(r, s)` with `rs ≤ N` into `T1 + T2` (by `r < s` or `s < r`), and
//!   `T1 = T11 + T12` by the value of `⌊(k + r)/s⌋`.
//!
//! Everything here is exact. A gap `1/(rs)` is long iff `rs ≤ N`, and
//! `B1(N·inv(r,s)/s)` has denominator dividing `2s`, so the sums are
//! accumulated as integer numerators bucketed by denominator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::accum::RationalAccumulator;
use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::farey::{inv_mod_u64, step, PairWalk};
use crate::minden::{q_j, Variant};
use crate::ExactScalar;

fn check_level(n: u64, k: u64, lo: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if k < lo || k > n {
        return Err(Error::OutOfRange { index: k, lo, hi: n });
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("N must be positive".into()))
    } else {
        Ok(())
    }
}

/// Numerator of `B1(m/s)` over the denominator `2s`.
#[inline]
pub(crate) fn b1_numerator(m: u128, s: u64) -> i128 {
    let rem = (m % s as u128) as i128;
    if rem == 0 {
        0
    } else {
        2 * rem - s as i128
    }
}

/// `{−m/d}` as a numerator over `d`.
#[inline]
fn frac_neg(m: u128, d: u64) -> i128 {
    let rem = (m % d as u128) as i128;
    if rem == 0 {
        0
    } else {
        d as i128 - rem
    }
}

/// `B1(N·inv(r, s)/s)` added to `acc` with weight `weight`.
#[inline]
fn add_b1_term(acc: &mut RationalAccumulator, n: u64, r: u64, s: u64, weight: i128) {
    if s == 1 || weight == 0 {
        return;
    }
    let rbar = inv_mod_u64(r, s);
    let num = b1_numerator(n as u128 * rbar as u128, s);
    acc.add(weight * num, 2 * s);
}

/// Sums collected in one walk over `F_k`.
#[derive(Debug, Clone, Default)]
pub struct LevelSums {
    /// `mes X(1/N) = ν_N(k)`
    pub measure: RationalAccumulator,
    /// `ξ_N(k)`
    pub xi: RationalAccumulator,
    /// `σ_N(k)`
    pub sigma: RationalAccumulator,
}

/// Walks `F_k` once and collects `ν_N(k)`, `ξ_N(k)` and `σ_N(k)`.
pub fn level_sums(n: u64, k: u64) -> Result<LevelSums> {
    check_level(n, k, 1)?;
    let mut out = LevelSums::default();
    for pair in PairWalk::new(k) {
        let (r, s) = (pair.r, pair.s);
        let rs = r * s;
        if rs > n {
            continue;
        }
        out.measure.add((n - rs) as i128, rs * n);

        let b = inv_mod_u64(r, s) as u128;
        let a = (b * r as u128 - 1) / s as u128;
        out.xi.add(frac_neg(n as u128 * b, s), s);
        out.xi.add(-frac_neg(n as u128 * a, r), r);

        // Members ρ_1 … ρ_{M−1}; the last pair ends at 1/1.
        if s != 1 {
            let t = step(k, r, s);
            if s * t > n {
                out.sigma.add(b1_numerator(n as u128 * b, s), 2 * s);
            }
        }
    }
    Ok(out)
}

/// Sum over `k = 1..=N` of the per-level sums, computed in parallel.
pub fn all_levels(n: u64) -> Result<LevelSums> {
    check_n(n)?;
    (1..=n)
        .into_par_iter()
        .map(|k| level_sums(n, k))
        .try_reduce(LevelSums::default, |mut a, b| {
            a.measure.merge(b.measure);
            a.xi.merge(b.xi);
            a.sigma.merge(b.sigma);
            Ok(a)
        })
}

/// `q_j(N)` for `j = 1..=N`.
pub fn q_values(n: u64, variant: Variant) -> Result<Vec<u64>> {
    check_n(n)?;
    (1..=n).into_par_iter().map(|j| q_j(n, j, variant)).collect()
}

/// `Σ_j q_j(N)` for the given boundary variant, by direct queries.
pub fn s_variant(n: u64, variant: Variant) -> Result<u64> {
    check_n(n)?;
    (1..=n)
        .into_par_iter()
        .map(|j| q_j(n, j, variant))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `S(N) = Σ_{k=0}^{N} θ_N(k)` with each `θ_N(k)` taken from the
/// gap formula ([`theta_formula`]).
pub fn s_by_theta(n: u64) -> Result<u64> {
    check_n(n)?;
    (0..=n).into_par_iter().map(|k| theta_formula(n, k)).try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `#{j : q > k}` for `k = 0..=max(q)`, the last entry being 0.
pub fn theta_table(q_values: &[u64]) -> Vec<u64> {
    let max = q_values.iter().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max + 1];
    for &q in q_values {
        hist[q as usize] += 1;
    }
    let mut table = vec![0u64; max + 1];
    let mut above = 0;
    for k in (0..=max).rev() {
        table[k] = above;
        above += hist[k];
    }
    table
}

/// `θ_N(k)` by counting the `q_j(N)` above `k`.
pub fn theta_direct(n: u64, k: u64) -> Result<u64> {
    check_level(n, k, 0)?;
    let values = q_values(n, Variant::HalfOpenRight)?;
    Ok(values.iter().filter(|&&q| q > k).count() as u64)
}

/// `θ_N(k) = N·mes X(1/N) + Σ ({−Nρ_i} − {−Nρ_{i−1}})` over the gaps of
/// `F_k` of length at least `1/N`. `θ_N(0) = N`.
pub fn theta_formula(n: u64, k: u64) -> Result<u64> {
    check_level(n, k, 0)?;
    if k == 0 {
        return Ok(n);
    }
    let level = level_sums(n, k)?;
    let value = level.measure.to_exact() * BigInt::from(n) + level.xi.to_exact();
    if !value.is_integer() {
        return Err(Error::IdentityFailed(format!("θ_{n}({k}) = {value} is not an integer")));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::IdentityFailed(format!("θ_{n}({k}) = {value} is negative")))
}

/// `ν_N(k)`, the measure of `{t ∈ [0,1[ : q(t, 1/N) > k}`.
pub fn nu(n: u64, k: u64) -> Result<ExactScalar> {
    check_level(n, k, 0)?;
    if k == 0 {
        return Ok(ExactScalar::from_integer(1.into()));
    }
    Ok(level_sums(n, k)?.measure.to_exact())
}

/// `∫₀¹ q(t, 1/N) dt = Σ_{k=0}^{N} ν_N(k)`, walking every `F_k`.
pub fn integral_q(n: u64) -> Result<ExactScalar> {
    Ok(all_levels(n)?.measure.to_exact() + ExactScalar::from_integer(1.into()))
}

/// Per-denominator buckets of `N·∫ − N = Σ_{rs ≤ N, (r,s)=1} min(r,s)(N − rs)/(rs)`.
///
/// A pair `(r, s)` with `rs ≤ N` is adjacent in `F_k` exactly for the
/// `min(r, s)` orders `max(r, s) ≤ k < r + s`, all of them `≤ N`.
fn integral_buckets(n: u64) -> Vec<i128> {
    let mut buckets = vec![0i128; n as usize + 1];
    for s in 1..=n {
        for r in 1..=n / s {
            if gcd(r, s) == 1 {
                let d = r * s;
                buckets[d as usize] += (r.min(s) * (n - d)) as i128;
            }
        }
    }
    buckets
}

/// `∫₀¹ q(t, 1/N) dt` from the coprime-pair closed form, in `O(N log N)`.
pub fn integral_q_pairs(n: u64) -> Result<ExactScalar> {
    check_n(n)?;
    let mut acc = RationalAccumulator::new();
    for (d, num) in integral_buckets(n).into_iter().enumerate().skip(1) {
        acc.add(num, d as u64 * n);
    }
    Ok(acc.to_exact() + ExactScalar::from_integer(1.into()))
}

/// Floating-point value of the closed form, for sweeps beyond exact budgets.
pub fn integral_q_f64(n: u64) -> Result<f64> {
    check_n(n)?;
    let tail: f64 = integral_buckets(n)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(d, num)| num as f64 / d as f64)
        .sum();
    Ok(1.0 + tail / n as f64)
}

/// `R(N) = S(N) − N·∫₀¹ q(t, 1/N) dt`.
pub fn r_n(n: u64) -> Result<ExactScalar> {
    let s = s_variant(n, Variant::HalfOpenRight)?;
    Ok(ExactScalar::from_integer(s.into()) - integral_q_pairs(n)? * BigInt::from(n))
}

/// `R(N) = Σ_{k=1}^{N} (θ_N(k) − N·ν_N(k))`, with `θ` counted directly.
pub fn r_n_by_levels(n: u64) -> Result<ExactScalar> {
    let theta = theta_table(&q_values(n, Variant::HalfOpenRight)?);
    let theta_sum: u64 = theta.iter().skip(1).sum();
    let nu_sum = all_levels(n)?.measure.to_exact();
    Ok(ExactScalar::from_integer(theta_sum.into()) - nu_sum * BigInt::from(n))
}

/// `σ_N(k) = Σ B1(Nρ_i(k))` over `1 ≤ i ≤ A(k) − 1` with
/// `ρ_i − ρ_{i−1} ≥ 1/N > ρ_{i+1} − ρ_i`.
pub fn sigma(n: u64, k: u64) -> Result<ExactScalar> {
    Ok(level_sums(n, k)?.sigma.to_exact())
}

/// `ξ_N(k) = Σ ({−Nρ_i} − {−Nρ_{i−1}})` over the gaps `≥ 1/N` of `F_k`.
pub fn xi(n: u64, k: u64) -> Result<ExactScalar> {
    Ok(level_sums(n, k)?.xi.to_exact())
}

/// `T(N)` and its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TParts {
    /// `Σ_k σ_N(k)`
    pub t: ExactScalar,
    pub t1: ExactScalar,
    pub t11: ExactScalar,
    pub t12: ExactScalar,
    pub t2: ExactScalar,
}

/// Coprime pairs `(r, s)` with `rs ≤ N`, `r ≠ s`.
fn off_diagonal_pairs(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=n).flat_map(move |s| {
        (1..=n / s).filter(move |&r| r != s && gcd(r, s) == 1).map(move |r| (r, s))
    })
}

/// `#{k ∈ [from, to[ : s·ϑ(k, r, s) > N}`
fn count_long_successor(n: u64, r: u64, s: u64, from: u64, to: u64) -> i128 {
    (from..to).filter(|&k| s * step(k, r, s) > n).count() as i128
}

/// Evaluates `T`, `T1`, `T11`, `T12` and `T2` by direct summation.
pub fn t_parts(n: u64) -> Result<TParts> {
    check_n(n)?;
    let mut t1 = RationalAccumulator::new();
    let mut t2 = RationalAccumulator::new();
    let mut t11 = RationalAccumulator::new();
    let mut t12 = RationalAccumulator::new();
    for (r, s) in off_diagonal_pairs(n) {
        if r < s {
            add_b1_term(&mut t1, n, r, s, count_long_successor(n, r, s, s, r + s));
            if s * (s - r) > n {
                let hi = (r + s).min(2 * s - r);
                add_b1_term(&mut t11, n, r, s, hi.saturating_sub(s) as i128);
            }
            if s * (2 * s - r) > n {
                let hi = (r + s).min(3 * s - r);
                add_b1_term(&mut t12, n, r, s, hi.saturating_sub(2 * s - r) as i128);
            }
        } else {
            add_b1_term(&mut t2, n, r, s, count_long_successor(n, r, s, r, r + s));
        }
    }
    Ok(TParts {
        t: all_levels(n)?.sigma.to_exact(),
        t1: t1.to_exact(),
        t11: t11.to_exact(),
        t12: t12.to_exact(),
        t2: t2.to_exact(),
    })
}

/// `T11 = Σ_{s > √N} Σ_{r ≤ min(N/s, s − (N+1)/s), (r,s)=1} r·B1(N·inv(r,s)/s)`.
pub fn t11_weighted(n: u64) -> Result<ExactScalar> {
    check_n(n)?;
    let mut acc = RationalAccumulator::new();
    for s in 1..=n {
        if s * s <= n {
            continue;
        }
        // r ≤ s − (N+1)/s  ⇔  r·s ≤ s² − N − 1
        for r in 1..=n / s {
            if r * s + n < s * s && gcd(r, s) == 1 {
                add_b1_term(&mut acc, n, r, s, r as i128);
            }
        }
    }
    Ok(acc.to_exact())
}

/// The part of `T11` with `s/2 < r < s`. Its index set is empty.
pub fn t11_upper_half(n: u64) -> Result<(usize, ExactScalar)> {
    check_n(n)?;
    let mut acc = RationalAccumulator::new();
    let mut terms = 0;
    for (r, s) in off_diagonal_pairs(n) {
        if 2 * r > s && r < s && s * (s - r) > n {
            terms += 1;
            add_b1_term(&mut acc, n, r, s, (s - r) as i128);
        }
    }
    Ok((terms, acc.to_exact()))
}

/// `T12 = Σ_{s/2 < r ≤ s, rs ≤ N, s(2s−r) > N, (r,s)=1} (2r − s)·B1(N·inv(r,s)/s)`.
pub fn t12_weighted(n: u64) -> Result<ExactScalar> {
    check_n(n)?;
    let mut acc = RationalAccumulator::new();
    for s in 1..=n {
        for r in 1..=(n / s).min(s) {
            if 2 * r > s && s * (2 * s - r) > n && gcd(r, s) == 1 {
                add_b1_term(&mut acc, n, r, s, (2 * r - s) as i128);
            }
        }
    }
    Ok(acc.to_exact())
}

/// `T2` grouped by `j = ⌊(k + r)/s⌋`: group `j` is
/// `Σ (2r − (j−1)s)·B1(N·inv(r,s)/s)` over `s < r`, `rs ≤ N`,
/// `(j−1)s/2 < r ≤ js/2`, `s(js − r) > N`. Only non-empty groups appear.
pub fn t2_grouped(n: u64) -> Result<BTreeMap<u64, ExactScalar>> {
    check_n(n)?;
    let mut groups: BTreeMap<u64, RationalAccumulator> = BTreeMap::new();
    for (r, s) in off_diagonal_pairs(n) {
        if s >= r {
            continue;
        }
        // (j−1)s < 2r ≤ js
        let j = (2 * r).div_ceil(s);
        if s * (j * s - r) > n {
            let weight = 2 * r as i128 - ((j - 1) * s) as i128;
            add_b1_term(groups.entry(j).or_default(), n, r, s, weight);
        }
    }
    Ok(groups.into_iter().map(|(j, acc)| (j, acc.to_exact())).collect())
}

/// Which side of `S(N)` a variant gap measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapSide {
    /// `S̃(N) − S(N)` (open subintervals)
    Upper,
    /// `S(N) − S̄(N)` (closed subintervals)
    Lower,
}

/// `Σ_{rs ≤ N, (r,s)=1, s | N} min(r, s)`
pub fn upper_gap_formula(n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(divisors(n)
        .into_iter()
        .map(|s| (1..=n / s).filter(|&r| gcd(r, s) == 1).map(|r| r.min(s)).sum::<u64>())
        .sum())
}

/// `S̃(N) − S(N)` or `S(N) − S̄(N)`. The upper gap is computed by
/// subtraction and by the divisor-sum formula, which must agree.
pub fn variant_gap(n: u64, side: GapSide) -> Result<u64> {
    let s = s_variant(n, Variant::HalfOpenRight)?;
    match side {
        GapSide::Upper => {
            let direct = s_variant(n, Variant::Open)? - s;
            let formula = upper_gap_formula(n)?;
            if direct != formula {
                return Err(Error::IdentityFailed(format!(
                    "S̃({n}) − S({n}) = {direct} but the divisor sum gives {formula}"
                )));
            }
            Ok(direct)
        }
        GapSide::Lower => Ok(s - s_variant(n, Variant::Closed)?),
    }
}

/// Every exact quantity attached to one `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumReport {
    pub n: u64,
    pub s: u64,
    pub s_bar: u64,
    pub s_star: u64,
    pub s_tilde: u64,
    pub integral: ExactScalar,
    pub r: ExactScalar,
    pub t: ExactScalar,
    pub t1: ExactScalar,
    pub t11: ExactScalar,
    pub t12: ExactScalar,
    pub t2: ExactScalar,
}

impl SumReport {
    /// Computes the report and checks `R = S − N∫`, `T = −R/2`,
    /// `T = T1 + T2` and `T1 = T11 + T12`.
    pub fn compute(n: u64) -> Result<Self> {
        check_n(n)?;
        let s = s_variant(n, Variant::HalfOpenRight)?;
        let integral = integral_q_pairs(n)?;
        let r = ExactScalar::from_integer(s.into()) - &integral * BigInt::from(n);
        let parts = t_parts(n)?;
        let report = SumReport {
            n,
            s,
            s_bar: s_variant(n, Variant::Closed)?,
            s_star: s_variant(n, Variant::HalfOpenLeft)?,
            s_tilde: s_variant(n, Variant::Open)?,
            integral,
            r,
            t: parts.t,
            t1: parts.t1,
            t11: parts.t11,
            t12: parts.t12,
            t2: parts.t2,
        };
        report.check()?;
        Ok(report)
    }

    pub fn check(&self) -> Result<()> {
        let two = BigInt::from(2);
        let fail = |what: &str| Err(Error::IdentityFailed(format!("{what} at N = {}", self.n)));
        if self.r != ExactScalar::from_integer(self.s.into()) - &self.integral * BigInt::from(self.n) {
            return fail("R = S − N∫");
        }
        if -(&self.t * &two) != self.r {
            return fail("R = −2T");
        }
        if &self.t1 + &self.t2 != self.t {
            return fail("T = T1 + T2");
        }
        if &self.t11 + &self.t12 != self.t1 {
            return fail("T1 = T11 + T12");
        }
        Ok(())
    }

    /// `S(N)/N^{3/2}`
    pub fn ratio(&self) -> f64 {
        self.s as f64 / (self.n as f64).powf(1.5)
    }
}

/// `|R(N)| / (N^{4/3} ln² N)`; `None` for `N = 1`.
pub fn r_over_bound(n: u64, r: &ExactScalar) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let ln = nf.ln();
    Some(r.to_f64()?.abs() / (nf.powf(4.0 / 3.0) * ln * ln))
}
