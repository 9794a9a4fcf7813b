use std::fs;
use std::path::PathBuf;

use anyhow::{Context as _, Result};
use cfrat::{BigRational, Overflow, RoundingPolicy};
use cfrat_bench::emit::{self, EpsilonStyle, Format};
use cfrat_bench::{run_table1, run_table2, standard_variants, ExperimentConfig, Variant};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bench", about = "Rounded rational arithmetic benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverflowArg {
    Saturate,
    Error,
}

#[derive(Clone, Copy, ValueEnum)]
enum EpsilonArg {
    Scientific,
    Exact,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Workload {
    /// Rational approximation of pi.
    #[arg(long, default_value = "355/113")]
    pi: BigRational,
    /// Largest m in x = pi/6 + 2 pi m.
    #[arg(long, default_value_t = 6)]
    mmax: u32,
    /// Series terms smaller than this end the sum.
    #[arg(long, default_value = "1e-7")]
    threshold: BigRational,
}

#[derive(Subcommand)]
enum Command {
    /// Error and size of sin(pi/6 + 2 pi m) for each policy and m.
    Table1 {
        #[command(flatten)]
        workload: Workload,
        /// `LABEL=POLICY` or `POLICY`; repeatable. Defaults to the eleven standard variants.
        #[arg(long = "variant", allow_hyphen_values = true)]
        variants: Vec<String>,
        #[arg(long, value_enum, default_value = "saturate")]
        overflow: OverflowArg,
        #[arg(long, value_enum, default_value = "scientific")]
        epsilon: EpsilonArg,
        #[command(flatten)]
        output: Output,
    },
    /// Mean convergent index under absolute tolerance 10^-N.
    Table2 {
        #[command(flatten)]
        workload: Workload,
        #[arg(long = "N", value_delimiter = ',', default_values_t = [16u32, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36])]
        n: Vec<u32>,
        /// Digit-length trigger.
        #[arg(long = "M", default_value_t = 9)]
        m: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Round one value under a policy and print the result.
    Round {
        #[arg(allow_hyphen_values = true)]
        value: BigRational,
        #[arg(long)]
        policy: RoundingPolicy<cfrat::BigInt>,
    },
}

fn parse_variant(spec: &str, index: usize) -> Result<Variant> {
    let (label, policy) = match spec.split_once('=') {
        Some((label, policy)) if !label.contains(':') => (label.to_string(), policy),
        _ => (format!("P{}", index + 1), spec),
    };
    let policy = policy.parse().with_context(|| format!("invalid policy {spec:?}"))?;
    Ok(Variant::new(label, policy))
}

fn config(workload: Workload) -> ExperimentConfig {
    ExperimentConfig {
        pi_approx: workload.pi,
        m_values: (0..=workload.mmax).collect(),
        term_threshold: workload.threshold,
        ..Default::default()
    }
}

fn write(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_of(arg: FormatArg) -> Format {
    match arg {
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Table1 { workload, variants, overflow, epsilon, output } => {
            let mut cfg = config(workload);
            if !variants.is_empty() {
                cfg.variants =
                    variants.iter().enumerate().map(|(i, s)| parse_variant(s, i)).collect::<Result<_>>()?;
            } else {
                cfg.variants = standard_variants();
            }
            cfg.overflow = match overflow {
                OverflowArg::Saturate => Overflow::Saturate,
                OverflowArg::Error => Overflow::Error,
            };
            let style = match epsilon {
                EpsilonArg::Scientific => EpsilonStyle::Scientific,
                EpsilonArg::Exact => EpsilonStyle::Exact,
            };
            let rows = run_table1(&cfg);
            let text = match format_of(output.format) {
                Format::Csv => emit::table1_csv(&rows, style),
                Format::Markdown => emit::table1_markdown(&rows, style),
            };
            write(&output, &text)
        }
        Command::Table2 { workload, n, m, output } => {
            let rows = run_table2(&config(workload), &n, m)?;
            let text = match format_of(output.format) {
                Format::Csv => emit::table2_csv(&rows),
                Format::Markdown => emit::table2_markdown(&rows),
            };
            write(&output, &text)
        }
        Command::Round { value, policy } => {
            let outcome = policy.apply(&value)?;
            println!("{}", outcome.value);
            Ok(())
        }
    }
}
