//! Sweep rows, number formatting and report rendering for the `mindenom` binary.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;

use mindenom::sums::{integral_q_f64, r_over_bound, s_variant};
use mindenom::{Result, SumReport, Variant, KM_CONSTANT};

/// Formats a float with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string().to_lowercase();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

/// Sweep grid: arithmetic with a fixed step or geometric with a factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    Linear(u64),
    Geometric(f64),
}

impl Grid {
    pub fn points(self, from: u64, to: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n = from;
        while n <= to {
            out.push(n);
            n = match self {
                Grid::Linear(step) => n + step.max(1),
                Grid::Geometric(f) => ((n as f64 * f).round() as u64).max(n + 1),
            };
        }
        out
    }
}

/// One line of the sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub s: u64,
    /// `S/N^{3/2}`
    pub ratio: f64,
    pub integral: f64,
    /// `|∫ − (16/π²)√N| / ln² N`
    pub chen_haynes_residual: f64,
}

pub const CSV_HEADER: &str = "N,S,ratio,integral,chen_haynes_residual";

impl SweepRow {
    pub fn compute(n: u64, variant: Variant) -> Result<Self> {
        let s = s_variant(n, variant)?;
        let integral = integral_q_f64(n)?;
        let nf = n as f64;
        let ln = nf.ln();
        Ok(SweepRow {
            n,
            s,
            ratio: s as f64 / nf.powf(1.5),
            integral,
            chen_haynes_residual: (integral - KM_CONSTANT * nf.sqrt()).abs() / (ln * ln),
        })
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.s,
            fmt_sig(self.ratio),
            fmt_sig(self.integral),
            fmt_sig(self.chen_haynes_residual)
        )
    }
}

/// Rows for every grid point, in ascending `N` whatever the scheduling.
pub fn sweep(points: &[u64], variant: Variant) -> Result<Vec<SweepRow>> {
    points.par_iter().map(|&n| SweepRow::compute(n, variant)).collect()
}

pub fn write_csv(rows: &[SweepRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv())?;
    }
    out.flush()
}

/// `key=value` lines for a full report.
pub fn render_report(report: &SumReport, variant: Variant) -> String {
    let s_variant = match variant {
        Variant::HalfOpenRight => report.s,
        Variant::HalfOpenLeft => report.s_star,
        Variant::Closed => report.s_bar,
        Variant::Open => report.s_tilde,
    };
    let n = report.n;
    let mut out = String::new();
    let mut line = |k: &str, v: String| writeln!(out, "{k}={v}").expect("string write");
    line("N", n.to_string());
    line("variant", variant.to_string());
    line("S", report.s.to_string());
    line("S_bar", report.s_bar.to_string());
    line("S_star", report.s_star.to_string());
    line("S_tilde", report.s_tilde.to_string());
    line("S_variant", s_variant.to_string());
    line("ratio", fmt_sig(s_variant as f64 / (n as f64).powf(1.5)));
    line("integral", report.integral.to_string());
    line("R", report.r.to_string());
    line("T", report.t.to_string());
    line("T1", report.t1.to_string());
    line("T11", report.t11.to_string());
    line("T12", report.t12.to_string());
    line("T2", report.t2.to_string());
    if let Some(x) = r_over_bound(n, &report.r) {
        line("R_over_bound", fmt_sig(x));
    }
    out
}

/// `key=value` lines when only `S` is computed.
pub fn render_s_only(n: u64, variant: Variant) -> Result<String> {
    let s = s_variant(n, variant)?;
    Ok(format!(
        "N={n}\nvariant={variant}\nS_variant={s}\nratio={}\n",
        fmt_sig(s as f64 / (n as f64).powf(1.5))
    ))
}
