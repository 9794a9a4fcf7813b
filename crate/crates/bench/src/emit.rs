//! CSV and Markdown renderings of benchmark tables.

use std::fmt::Write as _;

use cfrat::{BigInt, BigRational, Int};
use num_traits::One;

use crate::experiment::{Table1Row, Table2Row};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

/// How the error column is written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EpsilonStyle {
    /// One significant digit, e.g. `4e-8`.
    #[default]
    Scientific,
    /// The exact reduced fraction.
    Exact,
}

pub const TABLE1_CSV_HEADER: &str = "variant,m,epsilon,s,t_seconds,mean_k,max_k";
pub const TABLE2_CSV_HEADER: &str = "N,mean_k,predicted_k";

fn pow10(e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::pow10(e.unsigned_abs() as usize));
    if e >= 0 { p } else { p.recip().expect("non-zero") }
}

/// Rounds `|x|` half-up to one significant digit: `0`, `3`, `2e-8`, `1e3`.
pub fn one_significant_digit(x: &BigRational) -> String {
    let x = x.abs();
    if x.is_zero() {
        return "0".into();
    }
    let lens = x.slash_lengths();
    let mut e = lens.len_num as i64 - lens.len_den as i64;
    while x < pow10(e) {
        e -= 1;
    }
    while x >= pow10(e + 1) {
        e += 1;
    }
    // 1 <= x / 10^e < 10; round half-up.
    let scaled = &x / pow10(e) + BigRational::ratio(1, 2);
    let mut digit = scaled.floor();
    if digit == BigInt::from(10) {
        digit = BigInt::one();
        e += 1;
    }
    if e == 0 { digit.to_string() } else { format!("{digit}e{e}") }
}

pub fn format_epsilon(eps: &BigRational, style: EpsilonStyle) -> String {
    match style {
        EpsilonStyle::Scientific => one_significant_digit(eps),
        EpsilonStyle::Exact => eps.to_string(),
    }
}

fn opt_mean(m: Option<f64>, digits: usize) -> String {
    m.map(|v| format!("{v:.digits$}")).unwrap_or_default()
}

pub fn table1_csv(rows: &[Table1Row], style: EpsilonStyle) -> String {
    let mut out = String::from(TABLE1_CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.outcome {
            Ok(c) => writeln!(
                out,
                "{},{},{},{},{:.6},{},{}",
                row.variant,
                row.m,
                format_epsilon(&c.epsilon, style),
                c.s,
                c.t_seconds,
                opt_mean(c.stats.mean_k(), 3),
                c.stats.max_k
            ),
            Err(_) => writeln!(out, "{},{},error,,,,", row.variant, row.m),
        }
        .expect("write to String");
    }
    out
}

/// One `epsilon (s)` grid per variant order, rows by `m`, plus a list of
/// failed cells.
pub fn table1_markdown(rows: &[Table1Row], style: EpsilonStyle) -> String {
    let mut variants: Vec<&str> = Vec::new();
    let mut ms: Vec<u32> = Vec::new();
    for r in rows {
        if !variants.contains(&r.variant.as_str()) {
            variants.push(&r.variant);
        }
        if !ms.contains(&r.m) {
            ms.push(r.m);
        }
    }
    let mut out = String::from("| m |");
    for v in &variants {
        write!(out, " {v} |").expect("write to String");
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(variants.len()));
    out.push('\n');
    for m in &ms {
        write!(out, "| {m} |").expect("write to String");
        for v in &variants {
            let cell = rows.iter().find(|r| r.m == *m && r.variant == *v).map(|r| match &r.outcome {
                Ok(c) => format!("{} ({})", format_epsilon(&c.epsilon, style), c.s),
                Err(_) => "error".into(),
            });
            write!(out, " {} |", cell.unwrap_or_default()).expect("write to String");
        }
        out.push('\n');
    }
    for r in rows {
        if let Err(e) = &r.outcome {
            writeln!(out, "\n{} m={}: {e}", r.variant, r.m).expect("write to String");
        }
    }
    out
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = String::from(TABLE2_CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{:.1}", r.n, opt_mean(r.mean_k, 1), r.predicted).expect("write to String");
    }
    out
}

pub fn table2_markdown(rows: &[Table2Row]) -> String {
    let mut out = String::from("| N | mean k | predicted k |\n|---|---|---|\n");
    for r in rows {
        writeln!(out, "| {} | {} | {:.1} |", r.n, opt_mean(r.mean_k, 1), r.predicted).expect("write to String");
    }
    out
}
