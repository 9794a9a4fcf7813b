//! Policy-wrapped arithmetic with rounding statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rounding::{RoundingOutcome, RoundingPolicy};
use crate::scalar::Int;

/// What a slash policy does with a value none of whose convergents fit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Overflow {
    /// Propagate [`Error::Unrepresentable`].
    #[default]
    Error,
    /// Clamp to the largest representable magnitude.
    Saturate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub op_count: u64,
    pub round_triggered_count: u64,
    /// Convergent index `k` of each triggered rounding.
    pub iteration_histogram: BTreeMap<usize, u64>,
    pub max_k: usize,
    /// Roundings that clamped instead of failing.
    pub saturated_count: u64,
}

impl Stats {
    pub fn mean_k(&self) -> Option<f64> {
        let total: u64 = self.iteration_histogram.values().sum();
        if total == 0 {
            return None;
        }
        let weighted: u64 = self.iteration_histogram.iter().map(|(k, c)| *k as u64 * c).sum();
        Some(weighted as f64 / total as f64)
    }

    fn record(&mut self, outcome: &RoundingOutcome<impl Int>) {
        if outcome.triggered {
            self.round_triggered_count += 1;
            *self.iteration_histogram.entry(outcome.iterations).or_default() += 1;
            self.max_k = self.max_k.max(outcome.iterations);
        }
    }

    /// Adds another run's counts into this one.
    pub fn merge(&mut self, other: &Stats) {
        self.op_count += other.op_count;
        self.round_triggered_count += other.round_triggered_count;
        for (k, c) in &other.iteration_histogram {
            *self.iteration_histogram.entry(*k).or_default() += c;
        }
        self.max_k = self.max_k.max(other.max_k);
        self.saturated_count += other.saturated_count;
    }

    pub fn summary(&self) -> StatsSummary {
        StatsSummary {
            op_count: self.op_count,
            round_triggered_count: self.round_triggered_count,
            max_k: self.max_k,
            mean_k: self.mean_k(),
        }
    }
}

/// Flat record of a [`Stats`] snapshot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsSummary {
    pub op_count: u64,
    pub round_triggered_count: u64,
    pub max_k: usize,
    pub mean_k: Option<f64>,
}

impl StatsSummary {
    pub const CSV_HEADER: &'static str = "op_count,round_triggered_count,max_k,mean_k";

    /// `mean_k` is left empty when nothing was rounded.
    pub fn csv_row(&self) -> String {
        let mean = self.mean_k.map(|m| m.to_string()).unwrap_or_default();
        format!("{},{},{},{}", self.op_count, self.round_triggered_count, self.max_k, mean)
    }
}

/// Exact arithmetic followed by the context's rounding policy.
///
/// Operands are used as given; only results are rounded.
#[derive(Clone, Debug)]
pub struct Context<T> {
    policy: RoundingPolicy<T>,
    overflow: Overflow,
    stats: Stats,
}

impl<T: Int> Context<T> {
    pub fn new(policy: RoundingPolicy<T>) -> Self {
        Self { policy, overflow: Overflow::Error, stats: Stats::default() }
    }

    pub fn with_overflow(mut self, overflow: Overflow) -> Self {
        self.overflow = overflow;
        self
    }

    pub fn policy(&self) -> &RoundingPolicy<T> {
        &self.policy
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn stats_summary(&self) -> StatsSummary {
        self.stats.summary()
    }

    /// Rounds an exact result under the policy and records the outcome.
    pub fn round(&mut self, exact: Rational<T>) -> Result<Rational<T>> {
        self.stats.op_count += 1;
        let outcome = match self.policy.apply(&exact) {
            Err(Error::Unrepresentable { .. }) if self.overflow == Overflow::Saturate => {
                self.stats.saturated_count += 1;
                let value = self.policy.saturate(&exact).expect("only slash policies overflow");
                RoundingOutcome { value, triggered: true, iterations: 0 }
            }
            other => other?,
        };
        self.stats.record(&outcome);
        Ok(outcome.value)
    }

    pub fn add(&mut self, a: &Rational<T>, b: &Rational<T>) -> Result<Rational<T>> {
        self.round(a + b)
    }

    pub fn sub(&mut self, a: &Rational<T>, b: &Rational<T>) -> Result<Rational<T>> {
        self.round(a - b)
    }

    pub fn mul(&mut self, a: &Rational<T>, b: &Rational<T>) -> Result<Rational<T>> {
        self.round(a * b)
    }

    pub fn div(&mut self, a: &Rational<T>, b: &Rational<T>) -> Result<Rational<T>> {
        self.round(a.checked_div(b)?)
    }
}
