//! The sin(pi/6 + 2 pi m) workload run under a set of rounding policies.

use std::time::Instant;

use cfrat::{mean_iterations_estimate, BigInt, BigRational, Context, Overflow, RoundingPolicy, Stats, Tolerance};
use rayon::prelude::*;

use crate::taylor::taylor_sin;

#[derive(Clone, Debug)]
pub struct Variant {
    pub label: String,
    pub policy: RoundingPolicy<BigInt>,
}

impl Variant {
    pub fn new(label: impl Into<String>, policy: RoundingPolicy<BigInt>) -> Self {
        Self { label: label.into(), policy }
    }
}

/// The eleven arithmetics compared in the benchmark, labelled I..XI.
pub fn standard_variants() -> Vec<Variant> {
    let d8 = || Tolerance::decimal(8);
    let slash = |r: cfrat::Result<RoundingPolicy<BigInt>>| r.expect("valid constant policy");
    vec![
        Variant::new("I", RoundingPolicy::Exact),
        Variant::new("II", RoundingPolicy::tolerance(d8(), Tolerance::Infinite, 9)),
        Variant::new("III", RoundingPolicy::tolerance(d8(), d8(), 9)),
        Variant::new("IV", RoundingPolicy::tolerance(Tolerance::Infinite, d8(), 9)),
        Variant::new("V", slash(RoundingPolicy::fixed_slash(6))),
        Variant::new("VI", slash(RoundingPolicy::fixed_slash(9))),
        Variant::new("VII", slash(RoundingPolicy::fixed_slash(12))),
        Variant::new("VIII", slash(RoundingPolicy::floating_slash(12))),
        Variant::new("IX", slash(RoundingPolicy::floating_slash(15))),
        Variant::new("X", slash(RoundingPolicy::floating_slash(18))),
        Variant::new("XI", slash(RoundingPolicy::reductive(9))),
    ]
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub pi_approx: BigRational,
    pub m_values: Vec<u32>,
    pub term_threshold: BigRational,
    pub variants: Vec<Variant>,
    /// How slash policies treat values too large for any convergent to fit.
    pub overflow: Overflow,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            pi_approx: BigRational::ratio(355, 113),
            m_values: (0..=6).collect(),
            term_threshold: BigRational::new(BigInt::from(1), BigInt::from(10_000_000)).expect("non-zero"),
            variants: standard_variants(),
            overflow: Overflow::Saturate,
        }
    }
}

impl ExperimentConfig {
    /// `pi/6 + 2 pi m`, exactly.
    pub fn argument(&self, m: u32) -> BigRational {
        let six = BigRational::from_integer(BigInt::from(6));
        let turns = BigRational::from_integer(BigInt::from(2 * u64::from(m)));
        &self.pi_approx / six + &self.pi_approx * turns
    }
}

/// Result of one (variant, m) cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub value: BigRational,
    /// `|value - 1/2|`.
    pub epsilon: BigRational,
    /// Total digit length of `value`.
    pub s: usize,
    pub t_seconds: f64,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub variant: String,
    pub m: u32,
    /// `Err` carries the diagnostic of a cell that could not be computed.
    pub outcome: Result<Cell, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub n: u32,
    pub mean_k: Option<f64>,
    pub predicted: f64,
    pub max_k: usize,
}

fn run_cell(cfg: &ExperimentConfig, policy: &RoundingPolicy<BigInt>, m: u32) -> Result<Cell, String> {
    let x = cfg.argument(m);
    let mut ctx = Context::new(policy.clone()).with_overflow(cfg.overflow);
    let start = Instant::now();
    let value = taylor_sin(&x, &cfg.term_threshold, &mut ctx).map_err(|e| e.to_string())?;
    let t_seconds = start.elapsed().as_secs_f64();
    let epsilon = (&value - BigRational::ratio(1, 2)).abs();
    let s = value.slash_lengths().total;
    Ok(Cell { value, epsilon, s, t_seconds, stats: ctx.stats().clone() })
}

/// Every (variant, m) cell, variant-major. Cells run in parallel, each in a
/// fresh context.
pub fn run_table1(cfg: &ExperimentConfig) -> Vec<Table1Row> {
    let cells: Vec<(&Variant, u32)> =
        cfg.variants.iter().flat_map(|v| cfg.m_values.iter().map(move |&m| (v, m))).collect();
    cells
        .into_par_iter()
        .map(|(variant, m)| Table1Row { variant: variant.label.clone(), m, outcome: run_cell(cfg, &variant.policy, m) })
        .collect()
}

/// Mean convergent index over the whole workload for each `delta = 10^-N`,
/// absolute-only tolerance rounding with trigger `trigger`.
pub fn run_table2(cfg: &ExperimentConfig, n_values: &[u32], trigger: usize) -> cfrat::Result<Vec<Table2Row>> {
    n_values
        .par_iter()
        .map(|&n| {
            let policy = RoundingPolicy::tolerance(Tolerance::decimal(n as usize), Tolerance::Infinite, trigger);
            let mut total = Stats::default();
            for &m in &cfg.m_values {
                let mut ctx = Context::new(policy.clone());
                taylor_sin(&cfg.argument(m), &cfg.term_threshold, &mut ctx)?;
                total.merge(ctx.stats());
            }
            Ok(Table2Row { n, mean_k: total.mean_k(), predicted: mean_iterations_estimate(n), max_k: total.max_k })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arguments_are_exact() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.argument(0), BigRational::ratio(355, 678));
        for m in 0..7 {
            let shift = &cfg.pi_approx * BigRational::from_integer(BigInt::from(2 * m));
            assert_eq!(cfg.argument(m as u32) - cfg.argument(0), shift);
        }
    }

    #[test]
    fn variants_have_expected_policies() {
        let labels: Vec<String> =
            standard_variants().iter().map(|v| format!("{}={}", v.label, v.policy)).collect();
        assert_eq!(
            labels,
            [
                "I=exact",
                "II=tol:D=1/100000000,d=inf,M=9",
                "III=tol:D=1/100000000,d=1/100000000,M=9",
                "IV=tol:D=inf,d=1/100000000,M=9",
                "V=fslash:L=6",
                "VI=fslash:L=9",
                "VII=fslash:L=12",
                "VIII=flslash:S=12",
                "IX=flslash:S=15",
                "X=flslash:S=18",
                "XI=reduct:D=9",
            ]
        );
    }

    #[test]
    fn rows_are_variant_major() {
        let cfg = ExperimentConfig {
            m_values: vec![0, 1],
            variants: standard_variants().into_iter().skip(1).take(2).collect(),
            ..Default::default()
        };
        let order: Vec<(String, u32)> = run_table1(&cfg).into_iter().map(|r| (r.variant, r.m)).collect();
        assert_eq!(order, [("II".into(), 0), ("II".into(), 1), ("III".into(), 0), ("III".into(), 1)]);
    }

    #[test]
    fn overflow_error_mode_marks_the_row() {
        let cfg = ExperimentConfig {
            m_values: vec![3],
            variants: vec![Variant::new("V", RoundingPolicy::fixed_slash(6).unwrap())],
            overflow: Overflow::Error,
            ..Default::default()
        };
        let rows = run_table1(&cfg);
        assert!(rows[0].outcome.is_err());
    }
}
