//! Discrete Fourier analysis modulo `q`.
//!
//! Transforms are computed by direct `O(q²)` summation with a table of
//! roots of unity indexed by the exact residue of the phase, so every
//! exponential is one of `q` precomputed values. Bounds involving `√`, `ln`
//! and `sin` are floating point; exact rational left-hand sides are rounded
//! away from zero before being compared with them.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::accum::RationalAccumulator;
use crate::arith::{divisors, gcd, phi_sieve, tau, tau_sieve};
use crate::error::{Error, Result};
use crate::farey::{inv_mod_u64, Fraction};
use crate::sums::b1_numerator;
use crate::ExactScalar;

/// Tolerance for comparing floating-point transforms.
pub const TRANSFORM_TOL: f64 = 1e-9;
/// Slack added to the right-hand side of analytic inequalities.
pub const INEQUALITY_SLACK: f64 = 1e-12;

/// `e(x) = exp(2πix)`
#[inline]
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// `e(m/q)` for `m = 0..q`.
fn roots(q: u64) -> Vec<Complex64> {
    (0..q).map(|m| e(m as f64 / q as f64)).collect()
}

#[inline]
fn residue(m: i128, q: u64) -> usize {
    m.rem_euclid(q as i128) as usize
}

/// A function `Z → C` of period `q`, stored as `f(0), …, f(q−1)`
/// (`f(q) = f(0)`).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    values: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

impl PeriodicFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        Ok(Self { values })
    }

    pub fn from_fn(q: u64, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        Self::new((0..q as i64).map(f).collect())
    }

    pub fn period(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn at(&self, n: i64) -> Complex64 {
        self.values[residue(n as i128, self.period())]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Even, odd (zero counts as both; reported as even) or neither, up to `tol`.
    pub fn parity(&self, tol: f64) -> Parity {
        let q = self.period() as i64;
        let even = (0..q).all(|n| (self.at(n) - self.at(-n)).norm() <= tol);
        let odd = (0..q).all(|n| (self.at(n) + self.at(-n)).norm() <= tol);
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Neither,
        }
    }

    pub fn max_abs_diff(&self, other: &PeriodicFunction) -> f64 {
        assert_eq!(self.period(), other.period());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `f̂(x) = Σ_{n=1}^{q} f(n) e(−nx/q)`.
pub fn dft(f: &PeriodicFunction) -> PeriodicFunction {
    let q = f.period();
    let w = roots(q);
    let values = (0..q)
        .map(|x| {
            (0..q)
                .map(|n| f.values[n as usize] * w[residue(-((n * x) as i128), q)])
                .sum()
        })
        .collect();
    PeriodicFunction { values }
}

/// `f(n) = (1/q) Σ_{x=1}^{q} f̂(x) e(nx/q)`.
pub fn idft(f_hat: &PeriodicFunction) -> PeriodicFunction {
    let q = f_hat.period();
    let w = roots(q);
    let values = (0..q)
        .map(|n| {
            (0..q).map(|x| f_hat.values[x as usize] * w[residue((n * x) as i128, q)]).sum::<Complex64>()
                / q as f64
        })
        .collect();
    PeriodicFunction { values }
}

fn check_modulus(q: u64) -> Result<()> {
    if q == 0 {
        Err(Error::NonPositiveModulus(0))
    } else {
        Ok(())
    }
}

/// Kloosterman sum `Σ_{(n,q)=1} e((an + b·n̄)/q)`, as computed in `C`.
pub fn kloosterman_complex(a: i64, b: i64, q: u64) -> Result<Complex64> {
    check_modulus(q)?;
    let w = roots(q);
    Ok(kloosterman_with(&w, a, b, q))
}

fn kloosterman_with(w: &[Complex64], a: i64, b: i64, q: u64) -> Complex64 {
    (1..=q)
        .filter(|&n| gcd(n, q) == 1)
        .map(|n| {
            let nbar = inv_mod_u64(n, q) as i128;
            w[residue(a as i128 * n as i128 + b as i128 * nbar, q)]
        })
        .sum()
}

/// Real value of `K(a, b; q)`. Fails if the computed imaginary part is not
/// below [`TRANSFORM_TOL`].
pub fn kloosterman(a: i64, b: i64, q: u64) -> Result<f64> {
    let k = kloosterman_complex(a, b, q)?;
    if k.im.abs() >= TRANSFORM_TOL {
        return Err(Error::IdentityFailed(format!("Im K({a},{b};{q}) = {}", k.im)));
    }
    Ok(k.re)
}

/// Ramanujan sum `c_q(a) = K(a, 0; q)`.
pub fn ramanujan(a: i64, q: u64) -> Result<f64> {
    kloosterman(a, 0, q)
}

/// `gcd(a, b, q)^{1/2} τ(q) √q`
pub fn weil_bound(a: i64, b: i64, q: u64) -> Result<f64> {
    check_modulus(q)?;
    let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), q);
    Ok((g as f64).sqrt() * tau(q) as f64 * (q as f64).sqrt())
}

/// Kloosterman values `K(a, b; q)` for all residues, with the Weil check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KloostermanCheck {
    pub value: Complex64,
    pub bound: f64,
}

impl KloostermanCheck {
    pub fn holds(&self) -> bool {
        self.value.im.abs() < TRANSFORM_TOL && self.value.norm() <= self.bound + INEQUALITY_SLACK
    }
}

/// Every `K(a, b; q)` with `0 ≤ a, b < q`, in row-major order.
pub fn kloosterman_table(q: u64) -> Result<Vec<KloostermanCheck>> {
    check_modulus(q)?;
    let w = roots(q);
    let tau_q = tau(q) as f64;
    let sqrt_q = (q as f64).sqrt();
    let mut out = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            let g = gcd(gcd(a, b), q) as f64;
            out.push(KloostermanCheck {
                value: kloosterman_with(&w, a as i64, b as i64, q),
                bound: g.sqrt() * tau_q * sqrt_q,
            });
        }
    }
    Ok(out)
}

/// First Bernoulli function: `0` on integers, `{x} − 1/2` elsewhere.
pub fn b1(x: &ExactScalar) -> ExactScalar {
    if x.is_integer() {
        return ExactScalar::zero();
    }
    let frac = x - x.floor();
    frac - ExactScalar::new(1.into(), 2.into())
}

pub fn b1_fraction(x: Fraction) -> ExactScalar {
    b1(&x.to_exact())
}

/// `B1(n/q)` for `n = 0..q`.
pub fn b1_table(q: u64) -> Result<PeriodicFunction> {
    check_modulus(q)?;
    PeriodicFunction::from_fn(q, |n| {
        let m = n.rem_euclid(q as i64);
        if m == 0 {
            Complex64::zero()
        } else {
            Complex64::new(m as f64 / q as f64 - 0.5, 0.0)
        }
    })
}

/// Closed form of the transform of `n ↦ B1(n/q)`:
/// `0` if `q | x`, else `(1 + e(x/q)) / (2(1 − e(x/q)))`.
pub fn b1_hat_closed(x: i64, q: u64) -> Result<Complex64> {
    check_modulus(q)?;
    let m = x.rem_euclid(q as i64);
    if m == 0 {
        return Ok(Complex64::zero());
    }
    let z = e(m as f64 / q as f64);
    Ok((1.0 + z) / (2.0 * (1.0 - z)))
}

/// `Σ |f̂(y)|` over `1 ≤ y ≤ q − 1`.
pub fn transform_l1(f_hat: &PeriodicFunction) -> f64 {
    f_hat.values.iter().skip(1).map(|z| z.norm()).sum()
}

/// Precomputed `τ`, `φ` and `β` up to a limit.
#[derive(Debug, Clone)]
pub struct ArithmeticTables {
    pub limit: usize,
    pub tau: Vec<u64>,
    pub phi: Vec<u64>,
    /// `β(n) = Σ_{d | n} ln(n/d)/√d`
    pub beta: Vec<f64>,
}

impl ArithmeticTables {
    pub fn new(limit: usize) -> Self {
        let mut beta = vec![0.0; limit + 1];
        for d in 1..=limit {
            let inv_sqrt = 1.0 / (d as f64).sqrt();
            for (m, slot) in beta.iter_mut().enumerate().skip(d).step_by(d) {
                *slot += ((m / d) as f64).ln() * inv_sqrt;
            }
        }
        Self { limit, tau: tau_sieve(limit), phi: phi_sieve(limit), beta }
    }
}

/// `β(q) = Σ_{d | q} ln(q/d)/√d`
pub fn beta(q: u64) -> f64 {
    divisors(q).into_iter().map(|d| ((q / d) as f64).ln() / (d as f64).sqrt()).sum()
}

/// `Σ_{n ≤ x} τ(n) β(n)`
pub fn tau_beta_summatory(x: u64) -> f64 {
    let t = ArithmeticTables::new(x as usize);
    (1..=x as usize).map(|n| t.tau[n] as f64 * t.beta[n]).sum()
}

/// `|x|` as an `f64` that is not below the exact value.
pub fn abs_upper(x: &ExactScalar) -> f64 {
    let v = x.abs().to_f64().unwrap_or(f64::INFINITY);
    if v == 0.0 {
        0.0
    } else {
        v * (1.0 + 4.0 * f64::EPSILON)
    }
}

/// `Σ_{n ∈ [lo, hi], (n,q)=1} B1(N·n̄/q)`, exactly.
pub fn twisted_b1_sum(lo: i64, hi: i64, q: u64, n: u64) -> Result<ExactScalar> {
    check_modulus(q)?;
    let mut acc = RationalAccumulator::new();
    if q > 1 {
        for m in lo..=hi {
            let m = m.rem_euclid(q as i64) as u64;
            if gcd(m, q) == 1 {
                let mbar = inv_mod_u64(m, q);
                acc.add(b1_numerator(n as u128 * mbar as u128, q), 2 * q);
            }
        }
    }
    Ok(acc.to_exact())
}

/// `½ √q τ(q) β(q) ln q`
pub fn twisted_b1_bound(q: u64) -> f64 {
    let qf = q as f64;
    0.5 * qf.sqrt() * tau(q) as f64 * beta(q) * qf.ln()
}

/// `Σ_{a < r ≤ b, (r,s)=1} (r − a)·B1(r̄N/s)`, exactly.
pub fn weighted_b1_sum(s: u64, a: &ExactScalar, b: &ExactScalar, n: u64) -> Result<ExactScalar> {
    check_modulus(s)?;
    if a >= b {
        return Err(Error::InvalidArgument(format!("need a < b, got a = {a}, b = {b}")));
    }
    if s == 1 {
        return Ok(ExactScalar::zero());
    }
    let first: BigInt = a.floor().to_integer() + 1;
    let last: BigInt = b.floor().to_integer();
    let mut total = ExactScalar::zero();
    let mut r = first;
    while r <= last {
        let res = r.mod_floor(&BigInt::from(s)).to_u64().expect("residue fits");
        if gcd(res, s) == 1 {
            let rbar = inv_mod_u64(res, s);
            let b1 = ExactScalar::new(b1_numerator(n as u128 * rbar as u128, s).into(), (2 * s).into());
            total += (ExactScalar::from_integer(r.clone()) - a) * b1;
        }
        r += 1;
    }
    Ok(total)
}

/// `(b − a) √s τ(s) β(s) ln s`
pub fn weighted_b1_bound(s: u64, width: f64) -> f64 {
    let sf = s as f64;
    width * sf.sqrt() * tau(s) as f64 * beta(s) * sf.ln()
}

/// Whether `|Σ_{n ∈ [lo, hi]} e(nα)| ≤ 1/sin(πα)` (with slack).
pub fn geometric_sum_bound_check(lo: i64, hi: i64, alpha: Fraction) -> Result<bool> {
    if alpha <= Fraction::zero() || alpha >= Fraction::one() {
        return Err(Error::InvalidArgument(format!("α must lie in (0, 1), got {alpha}")));
    }
    let q = alpha.den() as u64;
    let w = roots(q);
    let sum: Complex64 = (lo..=hi).map(|n| w[residue(n as i128 * alpha.num() as i128, q)]).sum();
    Ok(sum.norm() <= 1.0 / (PI * alpha.to_f64()).sin() + INEQUALITY_SLACK)
}

/// `Σ_{m=1}^{q−1} 1/sin(πm/q)`
pub fn inverse_sine_sum(q: u64) -> f64 {
    (1..q).map(|m| 1.0 / (PI * m as f64 / q as f64).sin()).sum()
}

/// `Σ_{x=1}^{q−1} gcd(x,q)^{1/2} / sin(πx/q)`, bounded by `q β(q)`.
pub fn gcd_weighted_sine_sum(q: u64) -> f64 {
    (1..q)
        .map(|x| (gcd(x, q) as f64).sqrt() / (PI * x as f64 / q as f64).sin())
        .sum()
}

/// `Σ_{n ∈ [lo, hi], (n,q)=1} f(N·n̄)` for a function of period `q`.
pub fn twisted_sum(f: &PeriodicFunction, lo: i64, hi: i64, n: u64) -> Complex64 {
    let q = f.period();
    (lo..=hi)
        .filter_map(|m| {
            let m = m.rem_euclid(q as i64) as u64;
            (gcd(m, q) == 1).then(|| f.at((n as u128 * inv_mod_u64(m, q) as u128 % q as u128) as i64))
        })
        .sum()
}

/// `τ(q) β(q) / √q · Σ_{y=1}^{q−1} |f̂(y)|`, the bound on [`twisted_sum`] for odd `f`.
pub fn odd_twisted_bound(f: &PeriodicFunction) -> f64 {
    let q = f.period();
    tau(q) as f64 * beta(q) / (q as f64).sqrt() * transform_l1(&dft(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactScalar {
        ExactScalar::new(p.into(), d.into())
    }

    #[test]
    fn dft_of_constant() {
        let f = PeriodicFunction::from_fn(6, |_| Complex64::new(1.0, 0.0)).unwrap();
        let f_hat = dft(&f);
        for x in 0..6 {
            let expected = if x % 6 == 0 { 6.0 } else { 0.0 };
            assert!((f_hat.at(x) - Complex64::new(expected, 0.0)).norm() < TRANSFORM_TOL);
        }
    }

    #[test]
    fn coprime_indicator_transforms_to_ramanujan() {
        let f = PeriodicFunction::from_fn(6, |n| {
            Complex64::new(if gcd(n.unsigned_abs(), 6) == 1 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let f_hat = dft(&f);
        for x in 0..6 {
            assert!((f_hat.at(x).re - ramanujan(x, 6).unwrap()).abs() < TRANSFORM_TOL);
        }
    }

    #[test]
    fn idft_examples() {
        let zero = PeriodicFunction::new(vec![Complex64::zero(); 5]).unwrap();
        assert!(idft(&zero).max_abs_diff(&zero) < TRANSFORM_TOL);
        let delta = PeriodicFunction::from_fn(7, |n| Complex64::new((n == 1) as u8 as f64, 0.0)).unwrap();
        assert!(idft(&dft(&delta)).max_abs_diff(&delta) < TRANSFORM_TOL);
        let table = b1_table(100).unwrap();
        assert!(idft(&dft(&table)).max_abs_diff(&table) < TRANSFORM_TOL);
    }

    #[test]
    fn kloosterman_examples() {
        assert!((kloosterman(0, 0, 12).unwrap() - 4.0).abs() < TRANSFORM_TOL);
        let expected = 2.0 + 2.0 * (4.0 * PI / 5.0).cos();
        assert!((kloosterman(1, 1, 5).unwrap() - expected).abs() < TRANSFORM_TOL);
        assert!((expected - 0.381966).abs() < 1e-6);
        assert!(kloosterman(1, 1, 0).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        assert!((ramanujan(0, 10).unwrap() - 4.0).abs() < TRANSFORM_TOL);
        assert!((ramanujan(1, 6).unwrap() - 1.0).abs() < TRANSFORM_TOL);
        assert!((ramanujan(2, 4).unwrap() + 2.0).abs() < TRANSFORM_TOL);
    }

    #[test]
    fn weil_examples() {
        assert!((weil_bound(1, 1, 5).unwrap() - 2.0 * 5f64.sqrt()).abs() < 1e-12);
        assert!(weil_bound(0, 0, 12).unwrap() >= 4.0);
    }

    #[test]
    fn b1_examples() {
        assert_eq!(b1(&q(0, 1)), q(0, 1));
        assert_eq!(b1(&q(1, 4)), q(-1, 4));
        assert_eq!(b1(&q(7, 3)), q(-1, 6));
        assert_eq!(b1(&q(-1, 4)), q(1, 4));
        assert_eq!(b1(&q(-3, 1)), q(0, 1));
    }

    #[test]
    fn b1_hat_examples() {
        assert!(b1_hat_closed(7, 7).unwrap().norm() < TRANSFORM_TOL);
        assert!(b1_hat_closed(1, 2).unwrap().norm() < TRANSFORM_TOL);
        assert!((b1_hat_closed(1, 4).unwrap() - Complex64::new(0.0, 0.5)).norm() < TRANSFORM_TOL);
    }

    #[test]
    fn twisted_examples() {
        for n in 1..=7 {
            assert_eq!(twisted_b1_sum(1, 5, 5, n).unwrap(), q(0, 1));
        }
        assert_eq!(twisted_b1_sum(1, 2, 5, 1).unwrap(), q(-1, 5));
        assert_eq!(twisted_b1_sum(3, 9, 1, 4).unwrap(), q(0, 1));
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_b1_sum(1, &q(0, 1), &q(5, 1), 3).unwrap(), q(0, 1));
        assert_eq!(weighted_b1_sum(5, &q(0, 1), &q(2, 1), 1).unwrap(), q(-1, 10));
        assert!(weighted_b1_sum(5, &q(2, 1), &q(2, 1), 1).is_err());
    }

    #[test]
    fn geometric_examples() {
        let half = Fraction::new(1, 2).unwrap();
        assert_eq!(geometric_sum_bound_check(0, 1, half), Ok(true));
        assert_eq!(geometric_sum_bound_check(0, 9, Fraction::new(1, 3).unwrap()), Ok(true));
        assert!(geometric_sum_bound_check(0, 9, Fraction::one()).is_err());
    }

    #[test]
    fn tau_beta_examples() {
        assert_eq!(tau_beta_summatory(1), 0.0);
        assert!((tau_beta_summatory(2) - 2.0 * 2f64.ln()).abs() < 1e-12);
        let t = ArithmeticTables::new(50);
        for n in 1..=50u64 {
            assert!((t.beta[n as usize] - beta(n)).abs() < 1e-12);
        }
        assert_eq!((t.tau[1], t.phi[1], t.beta[1]), (1, 1, 0.0));
    }

    #[test]
    fn abs_upper_rounds_outward() {
        let third = q(-1, 3);
        assert!(abs_upper(&third) >= 1.0 / 3.0);
        assert_eq!(abs_upper(&q(0, 1)), 0.0);
    }
}
