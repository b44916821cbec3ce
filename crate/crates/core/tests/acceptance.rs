//! Acceptance criteria at full size. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use mindenom::checks::{expsums_suite, fast_vs_oracle, variants_suite, Budgets, CheckReport};
use mindenom::minden::q_j;
use mindenom::sums::{integral_q, integral_q_f64, s_variant, t_parts, theta_direct, theta_formula};
use mindenom::{Variant, KM_CONSTANT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from_checks(checks: &[CheckReport]) -> Self {
        let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
        let total: u64 = checks.iter().map(|c| c.checked).sum();
        if failed.is_empty() {
            Outcome { ok: true, detail: format!("{total} instances") }
        } else {
            Outcome { ok: false, detail: failed.join("; ") }
        }
    }

    fn first_failure(total: usize, failure: Option<String>) -> Self {
        match failure {
            None => Outcome { ok: true, detail: format!("{total} instances") },
            Some(f) => Outcome { ok: false, detail: f },
        }
    }
}

/// `R(N) = S(N) − N∫q` next to `T(N)` and its parts, for every `N ≤ max_n`.
fn exact_parts(max_n: u64) -> Vec<(u64, BigRational, mindenom::sums::TParts)> {
    (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let s = BigRational::from_integer(s_variant(n, Variant::HalfOpenRight).unwrap().into());
            let r = s - integral_q(n).unwrap() * BigInt::from(n);
            (n, r, t_parts(n).unwrap())
        })
        .collect()
}

fn criterion_1_2(rows: &[(u64, BigRational, mindenom::sums::TParts)]) -> (Outcome, Outcome) {
    let c1 = rows
        .iter()
        .find(|(_, r, p)| *r != -(&p.t * BigInt::from(2)))
        .map(|(n, r, p)| format!("N = {n}: R = {r}, T = {}", p.t));
    let c2 = rows
        .iter()
        .find(|(_, _, p)| &p.t1 + &p.t2 != p.t || &p.t11 + &p.t12 != p.t1)
        .map(|(n, _, p)| format!("N = {n}: T = {}, T1 = {}, T2 = {}, T11 = {}, T12 = {}", p.t, p.t1, p.t2, p.t11, p.t12));
    (Outcome::first_failure(rows.len(), c1), Outcome::first_failure(rows.len(), c2))
}

fn criterion_3() -> Outcome {
    let cases: Vec<(u64, u64)> = (1..=100u64).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    let failure = cases
        .par_iter()
        .find_first(|&&(n, k)| theta_direct(n, k).ok() != theta_formula(n, k).ok())
        .map(|&(n, k)| format!("N = {n}, k = {k}: {:?} vs {:?}", theta_direct(n, k), theta_formula(n, k)));
    Outcome::first_failure(cases.len(), failure)
}

fn criterion_4() -> Outcome {
    Outcome::from_checks(&variants_suite(&Budgets::default()))
}

fn criterion_5() -> Outcome {
    let b = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    Outcome::from_checks(&[fast_vs_oracle(b.minden_random, b.minden_max_den, &mut rng)])
}

fn criterion_6_7() -> (Outcome, Outcome) {
    let checks = expsums_suite(&Budgets::default());
    let pick = |prefixes: &[&str]| -> Vec<CheckReport> {
        let chosen: Vec<CheckReport> =
            checks.iter().filter(|c| prefixes.iter().any(|p| c.name.starts_with(p))).cloned().collect();
        assert_eq!(chosen.len(), prefixes.len(), "missing check among {prefixes:?}");
        chosen
    };
    let weil = pick(&["|K(a,b;q)|", "Im K(a,b;q)"]);
    let b1 = pick(&["closed-form B1 transform", "|Σ B1(N n̄/q)|", "|Σ_{a<r≤b} (r−a) B1"]);
    (Outcome::from_checks(&weil), Outcome::from_checks(&b1))
}

fn criterion_8() -> Outcome {
    let rows: Vec<(u64, f64)> = (7..=20u32)
        .into_par_iter()
        .map(|k| {
            let n = 1u64 << k;
            (n, s_variant(n, Variant::HalfOpenRight).unwrap() as f64 / (n as f64).powf(1.5))
        })
        .collect();
    let window = rows.iter().find(|&&(n, x)| n >= 1024 && !(1.35 < x && x < 2.04));
    let first = (rows[0].1 - KM_CONSTANT).abs();
    let last = (rows[rows.len() - 1].1 - KM_CONSTANT).abs();
    let ok = window.is_none() && last * 4.0 <= first;
    let detail = match window {
        Some((n, x)) => format!("N = {n}: ratio {x} outside (1.35, 2.04)"),
        None => format!("distance to 16/π²: {first:.3e} at 2^7, {last:.3e} at 2^20"),
    };
    Outcome { ok, detail }
}

fn criterion_9() -> Outcome {
    let residual = |n: u64| {
        let ln = (n as f64).ln();
        (integral_q_f64(n).unwrap() - KM_CONSTANT * (n as f64).sqrt()).abs() / (ln * ln)
    };
    let emitted: Vec<f64> = (2..=2000u64).into_par_iter().map(residual).collect();
    let finite = emitted.iter().all(|x| x.is_finite());
    let orders: Vec<(u64, i32)> =
        [10u64, 100, 1000, 2000].iter().map(|&n| (n, residual(n).log10().floor() as i32)).collect();
    let ok = finite && orders.windows(2).all(|w| w[1].1 <= w[0].1);
    let detail = orders.iter().map(|(n, o)| format!("N = {n}: 10^{o}")).collect::<Vec<_>>().join(", ");
    Outcome { ok, detail }
}

fn criterion_10() -> Outcome {
    let ns: Vec<u64> = (1..=1000).collect();
    let failure = ns
        .par_iter()
        .find_first(|&&n| {
            q_j(n, 1, Variant::HalfOpenRight).unwrap() != n
                || q_j(n, n, Variant::HalfOpenRight).unwrap() != 1
                || theta_direct(n, 0).unwrap() != n
                || theta_direct(n, n).unwrap() != 0
        })
        .map(|n| format!("N = {n}"));
    Outcome::first_failure(ns.len(), failure)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let rows = exact_parts(300);
    let (c1, c2) = criterion_1_2(&rows);
    let (c6, c7) = criterion_6_7();
    let outcomes = [
        ("R(N) = −2T(N) exactly, N ≤ 300", c1),
        ("T = T1 + T2 and T1 = T11 + T12 exactly, N ≤ 300", c2),
        ("θ_N(k) direct = gap formula, N ≤ 100, 0 ≤ k ≤ N", criterion_3()),
        ("S* = S, S̄ ≤ S ≤ S̃, S̃ − S closed form ≤ Nτ(N), N ≤ 500", criterion_4()),
        ("fast minimal denominator = oracle on 10⁴ random intervals", criterion_5()),
        ("Weil bound and Im K < 1e−9, q ≤ 100", c6),
        ("B1 transform, twisted and weighted B1 bounds", c7),
        ("S(N)/N^{3/2} window and trend on 2^7..2^20", criterion_8()),
        ("integral residual non-increasing by decade, N ≤ 2000", criterion_9()),
        ("q_1(N) = N, q_N(N) = 1, θ_N(0) = N, θ_N(N) = 0, N ≤ 1000", criterion_10()),
    ];
    let mut all = true;
    for (i, (name, outcome)) in outcomes.iter().enumerate() {
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status} {name} ({})", i + 1, outcome.detail);
        all &= outcome.ok;
    }
    println!("elapsed: {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
