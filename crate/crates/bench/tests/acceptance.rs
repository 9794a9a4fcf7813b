//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use cfrat::{
    convergent_stream, error_bounds, iteration_bound, round_tolerance, BigInt, BigRational, Rational, Rational128,
    RoundingPolicy, Tolerance,
};
use cfrat_bench::emit::one_significant_digit;
use cfrat_bench::{run_table1, run_table2, ExperimentConfig, Table1Row};
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 10_000;

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn check(&mut self, id: &str, title: &str, problems: Vec<String>, summary: String) {
        if problems.is_empty() {
            println!("PASS {id} {title}: {summary}");
        } else {
            println!("FAIL {id} {title}: {summary}");
            for p in &problems {
                println!("     - {p}");
            }
            self.failures.push(id.to_string());
        }
    }
}

fn q(s: &str) -> BigRational {
    s.parse().unwrap()
}

/// Uniform integer in `[1, 10^digits]`.
fn uniform_positive(rng: &mut ChaCha8Rng, digits: usize) -> BigInt {
    let s: String = (0..digits).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect();
    s.parse::<BigInt>().unwrap() + 1
}

/// Non-negative fraction whose parts have a uniformly chosen length of
/// 1..=max_digits digits.
fn random_fraction(rng: &mut ChaCha8Rng, max_digits: usize) -> BigRational {
    let n_len = rng.gen_range(1..=max_digits);
    let d_len = rng.gen_range(1..=max_digits);
    let num = uniform_positive(rng, n_len) - 1;
    let den = uniform_positive(rng, d_len);
    Rational::new(num, den).unwrap()
}

fn corpus(seed: u64, max_digits: usize) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLES).map(|_| random_fraction(&mut rng, max_digits)).collect()
}

fn cell<'a>(rows: &'a [Table1Row], variant: &str, m: u32) -> &'a cfrat_bench::experiment::Cell {
    let row = rows.iter().find(|r| r.variant == variant && r.m == m).expect("cell present");
    row.outcome.as_ref().unwrap_or_else(|e| panic!("{variant} m={m}: {e}"))
}

fn criterion_1(report: &mut Report, rows: &[Table1Row]) {
    let expected = [62usize, 214, 372, 504, 650, 810, 980];
    let mut problems = Vec::new();
    let mut got = Vec::new();
    for (m, &want) in expected.iter().enumerate() {
        let s = cell(rows, "I", m as u32).s;
        got.push(s);
        let rel = (s as f64 - want as f64).abs() / want as f64;
        if rel > 0.02 {
            problems.push(format!("m={m}: s={s}, expected {want} +-2% (off by {:.1}%)", rel * 100.0));
        }
    }
    let eps0 = one_significant_digit(&cell(rows, "I", 0).epsilon);
    if eps0 != "4e-8" {
        problems.push(format!("m=0: epsilon rounds to {eps0}, expected 4e-8"));
    }
    report.check("1", "exact arithmetic sizes", problems, format!("s={got:?}, epsilon(m=0)={eps0}"));
}

fn criterion_2(report: &mut Report, rows: &[Table1Row]) {
    let mut problems = Vec::new();
    let mut worst_eps = BigRational::zero();
    let mut worst_s = 0;
    for variant in ["II", "III"] {
        for m in 0..=6 {
            let c = cell(rows, variant, m);
            if c.epsilon > q("5e-6") || c.s > 20 {
                problems.push(format!("{variant} m={m}: epsilon={}, s={}", one_significant_digit(&c.epsilon), c.s));
            }
            worst_eps = worst_eps.max(c.epsilon.clone());
            worst_s = worst_s.max(c.s);
        }
    }
    report.check(
        "2",
        "tolerance rounding accuracy",
        problems,
        format!("max epsilon={}, max s={worst_s}", one_significant_digit(&worst_eps)),
    );
}

fn criterion_3(report: &mut Report, rows: &[Table1Row]) {
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    let mut expect = |variant: &str, m: u32, ok: bool, what: &str| {
        let c = cell(rows, variant, m);
        seen.push(format!("{variant}@{m}={}({})", one_significant_digit(&c.epsilon), c.s));
        if !ok {
            problems.push(format!(
                "{variant} m={m}: epsilon={}, s={}; expected {what}",
                one_significant_digit(&c.epsilon),
                c.s
            ));
        }
    };
    for m in 0..=6 {
        let c = cell(rows, "V", m);
        if m < 2 {
            expect("V", m, c.epsilon.is_zero() && c.s == 2, "epsilon=0, s=2");
        } else {
            expect("V", m, c.epsilon >= q("1e-3"), "epsilon >= 1e-3");
        }
    }
    for m in 3..=6 {
        expect("IV", m, cell(rows, "IV", m).epsilon >= q("0.1"), "epsilon >= 0.1");
    }
    for m in 2..=6 {
        expect("XI", m, cell(rows, "XI", m).epsilon >= q("1e-2"), "epsilon >= 1e-2");
    }
    report.check("3", "failure modes", problems, seen.join(" "));
}

fn criterion_4(report: &mut Report) {
    let cfg = ExperimentConfig::default();
    let n_values: Vec<u32> = (16..=36).step_by(2).collect();
    let published = [13.9, 16.4, 18.9, 20.9, 22.7, 24.7, 26.5, 28.4, 30.9, 33.0, 34.9];
    let rows = run_table2(&cfg, &n_values, 9).expect("workload runs");
    let mut problems = Vec::new();
    let mut means = Vec::new();
    for (row, want) in rows.iter().zip(published) {
        let Some(k) = row.mean_k else {
            problems.push(format!("N={}: no rounding happened", row.n));
            continue;
        };
        means.push((row.n as f64, k));
        let rel = (k - want).abs() / want;
        if rel > 0.10 {
            problems.push(format!("N={}: mean k={k:.2}, expected {want} +-10%", row.n));
        }
    }
    let count = means.len() as f64;
    let (mx, my) = (means.iter().map(|p| p.0).sum::<f64>() / count, means.iter().map(|p| p.1).sum::<f64>() / count);
    let slope = means.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / means.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    if (slope - 0.97).abs() / 0.97 > 0.10 {
        problems.push(format!("slope {slope:.3}, expected 0.97 +-10%"));
    }
    let listed: Vec<String> = means.iter().map(|(n, k)| format!("{n}:{k:.2}")).collect();
    report.check("4", "mean iterations", problems, format!("{}; slope={slope:.3}", listed.join(" ")));
}

fn criterion_5(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    let ns = [1u32, 8, 9, 16, 32];
    let bounds: BTreeMap<u32, usize> = ns.iter().map(|&n| (n, iteration_bound(n))).collect();
    let mut max_seen = BTreeMap::new();
    for _ in 0..SAMPLES {
        let x = Rational::new(uniform_positive(&mut rng, 200), uniform_positive(&mut rng, 200)).unwrap();
        for &n in &ns {
            let k = round_tolerance(&x, &Tolerance::decimal(n as usize), &Tolerance::Infinite, 0).iterations;
            let entry = max_seen.entry(n).or_insert(0);
            *entry = k.max(*entry);
            if k > bounds[&n] && problems.len() < 10 {
                problems.push(format!("N={n}: k={k} > bound {} for {x}", bounds[&n]));
            }
        }
    }
    for (n, want) in [(8, 20), (9, 22)] {
        if iteration_bound(n) != want {
            problems.push(format!("iteration_bound({n}) = {}, expected {want}", iteration_bound(n)));
        }
    }
    let listed: Vec<String> =
        max_seen.iter().map(|(n, k)| format!("N={n}: max k {k} <= {}", bounds[n])).collect();
    report.check("5", "iteration bound", problems, listed.join(", "));
}

/// |x - a/b| compared as |p b - a q| / (q b).
fn error_numerator(p: i128, q: i128, a: i128, b: i128) -> i128 {
    (p * b - a * q).abs()
}

fn criterion_6(report: &mut Report) {
    let mut half_ties = 0usize;
    let mut by_family: BTreeMap<&str, usize> = BTreeMap::new();
    let mut examples = Vec::new();
    let mut checked = 0usize;
    for den in 1..=200i128 {
        for num in 0..=2 * den {
            if num.gcd(&den) != 1 {
                continue;
            }
            let x = Rational128::new(num, den).unwrap();
            let steps: Vec<_> = convergent_stream(&x).unwrap().collect();
            for step in &steps {
                checked += 1;
                let (pk, qk) = (step.p, step.q);
                let err_k = error_numerator(num, den, pk, qk);
                for s in 1..=qk {
                    let r0 = Integer::div_floor(&(num * s), &den);
                    for r in [r0, r0 + 1] {
                        if r * qk == pk * s {
                            continue;
                        }
                        // Candidate at least as close: e_r / (den s) <= e_k / (den qk).
                        let err_r = error_numerator(num, den, r, s);
                        if err_r * qk > err_k * s {
                            continue;
                        }
                        if den == 2 && err_r * qk == err_k * s {
                            half_ties += 1;
                            continue;
                        }
                        let family = if step.index == 0 && steps.len() > 1 && steps[1].a == 1 {
                            "k=0 with a1=1"
                        } else {
                            "other"
                        };
                        *by_family.entry(family).or_default() += 1;
                        if examples.len() < 3 {
                            examples.push(format!("x={num}/{den}, k={}: {r}/{s} beats {pk}/{qk}", step.index));
                        }
                    }
                }
            }
        }
    }
    let total: usize = by_family.values().sum();
    let mut problems = Vec::new();
    if total > 0 {
        problems.push(format!("{total} violations outside the half-integer ties: {by_family:?}"));
        problems.extend(examples);
    }
    report.check(
        "6",
        "convergents are best approximations",
        problems,
        format!("{checked} convergents checked, {half_ties} half-integer ties excluded, {total} violations"),
    );
}

fn criterion_7(report: &mut Report, xs: &[BigRational]) {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for x in xs {
        let convs: Vec<BigRational> = convergent_stream(x).unwrap().map(|s| s.convergent()).collect();
        for k in 1..convs.len().saturating_sub(1) {
            checked += 1;
            let bounds = error_bounds(x, k).unwrap();
            let err = (x - &convs[k]).abs();
            if !(bounds.lower < err && err <= bounds.upper) && problems.len() < 10 {
                problems.push(format!("x={x}, k={k}: err={err}, bounds=({}, {})", bounds.lower, bounds.upper));
            }
        }
    }
    report.check("7", "error sandwich", problems, format!("{} inputs, {checked} interior convergents", xs.len()));
}

fn fib(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn criterion_8(report: &mut Report, xs: &[BigRational]) {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for x in xs {
        for step in convergent_stream(x).unwrap() {
            checked += 1;
            if step.q < fib(step.index + 1) && problems.len() < 10 {
                problems.push(format!("x={x}, k={}: q={} < F", step.index, step.q));
            }
        }
    }
    let mut witnessed = 0usize;
    for n in 3..60 {
        let x = Rational::new(fib(n + 1), fib(n)).unwrap();
        for step in convergent_stream(&x).unwrap().filter(|s| !s.is_last()) {
            if step.q == fib(step.index + 1) {
                witnessed += 1;
            } else {
                problems.push(format!("F{}/F{n}, k={}: q={} != F{}", n + 1, step.index, step.q, step.index + 1));
            }
        }
    }
    if witnessed == 0 {
        problems.push("equality never attained".into());
    }
    report.check(
        "8",
        "Fibonacci denominator bound",
        problems,
        format!("{checked} convergents checked, equality witnessed {witnessed} times"),
    );
}

fn criterion_9(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let policies: Vec<RoundingPolicy<BigInt>> = [
        "tol:D=1e-8,d=inf,M=9",
        "tol:D=1e-8,d=1e-8,M=9",
        "tol:D=inf,d=1e-8,M=9",
        "tol:D=1e-3,d=1e-12,M=0",
        "fslash:L=6",
        "fslash:L=12",
        "flslash:S=12",
        "flslash:S=18",
        "reduct:D=9",
        "reduct:D=3",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    let mut problems = Vec::new();
    let mut counts = BTreeMap::from([("irreducible", 0usize), ("antisymmetric", 0), ("idempotent", 0), ("zero-tol", 0)]);
    let mut fail = |what: &str, detail: String| {
        if problems.len() < 10 {
            problems.push(format!("{what}: {detail}"));
        }
    };
    for _ in 0..SAMPLES {
        let mut x = random_fraction(&mut rng, 40);
        if rng.gen_bool(0.5) {
            x = -x;
        }
        for policy in &policies {
            let Ok(out) = policy.apply(&x) else { continue };
            let (n, d) = (out.value.numer(), out.value.denom());
            *counts.get_mut("irreducible").unwrap() += 1;
            if !(d > &BigInt::from(0) && n.gcd(d).is_one()) {
                fail("irreducible", format!("{policy} on {x} gave {n}/{d}"));
            }
            *counts.get_mut("antisymmetric").unwrap() += 1;
            match policy.apply(&-x.clone()) {
                Ok(neg) if neg.value == -out.value.clone() => {}
                other => fail("antisymmetric", format!("{policy} on {x}: {} vs {other:?}", out.value)),
            }
            if !matches!(policy, RoundingPolicy::Reductive { .. }) {
                *counts.get_mut("idempotent").unwrap() += 1;
                match policy.apply(&out.value) {
                    Ok(again) if again.value == out.value => {}
                    other => fail("idempotent", format!("{policy} on {}: {other:?}", out.value)),
                }
            }
        }
        *counts.get_mut("zero-tol").unwrap() += 1;
        let m = rng.gen_range(0..12);
        let zero = round_tolerance(&x, &Tolerance::zero(), &Tolerance::zero(), m);
        if zero.value != x {
            fail("zero-tol", format!("{x} with M={m} gave {}", zero.value));
        }
    }
    let listed: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    report.check("9", "rounding contracts", problems, listed.join(", "));
}

fn main() -> ExitCode {
    let mut report = Report { failures: Vec::new() };
    let rows = run_table1(&ExperimentConfig::default());
    criterion_1(&mut report, &rows);
    criterion_2(&mut report, &rows);
    criterion_3(&mut report, &rows);
    criterion_4(&mut report);
    criterion_5(&mut report);
    criterion_6(&mut report);
    let xs = corpus(7, 60);
    criterion_7(&mut report, &xs);
    criterion_8(&mut report, &xs);
    criterion_9(&mut report);
    if report.failures.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {}", report.failures.join(", "));
        ExitCode::FAILURE
    }
}
