//! Command-line surface: counting, tables, enumeration, pattern counting
//! and the full cross-verification sweep.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 guard refusal.

mod verify;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use excedance::counting::{
    count, expansion_terms, signed_sum, CountMethod, Guards, DEFAULT_MAX_ENUMERATION,
    DEFAULT_MAX_FREE_STEPS,
};
use excedance::group::{enumerate_group, Signature};
use excedance::matrix::ExcedanceWord;
use excedance::pattern::PatternWord;
use excedance::sequence::b_run_table;
use excedance::Error;

use verify::Suite;

#[derive(Parser)]
#[command(
    name = "excedance",
    version,
    about = "Excedance statistics on colored permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Refuse exhaustive enumeration above this many group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ENUMERATION, value_name = "ELEMENTS")]
    max_enumeration: u64,

    /// Refuse inclusion-exclusion sums with more than 2^STEPS terms.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FREE_STEPS, value_name = "STEPS")]
    max_expansion: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Count the elements whose excedance word is WORD.
    Count {
        /// Number of colors.
        #[arg(long)]
        r: u32,
        /// Number of digits.
        #[arg(long)]
        n: u32,
        /// Word over a/b of length r*n - 1; '|' and spaces are ignored.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Count the permutations of 1..=n matching PATTERN.
    PatternCount {
        /// Size of the permutations; the pattern has n - 1 letters.
        #[arg(long)]
        n: u32,
        /// Pattern over a/b/* of length n - 1; '|' and spaces are ignored.
        #[arg(long)]
        pattern: String,
        /// Print the signed expansion terms to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Print the counts of b^k a^(rn-1-k) for k = 0..rn-1 with shape verdicts.
    Table {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// List the elements whose excedance word is WORD, in enumeration order.
    Enumerate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
        /// Stop after this many matches.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Cross-verify every formula against the exhaustive oracle on one group.
    Verify {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = WhatArg::All)]
        what: WhatArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Omit the generated-at line so output is byte-reproducible.
        #[arg(long)]
        no_timestamp: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Oracle,
    Ie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhatArg {
    All,
    ClosedForm,
    Ie,
    Partition,
    Symmetry,
    Observations,
    Sequence,
}

impl From<MethodArg> for CountMethod {
    fn from(arg: MethodArg) -> Self {
        match arg {
            MethodArg::Auto => CountMethod::Auto,
            MethodArg::Oracle => CountMethod::Oracle,
            MethodArg::Ie => CountMethod::InclusionExclusion,
        }
    }
}

impl From<WhatArg> for Suite {
    fn from(arg: WhatArg) -> Self {
        match arg {
            WhatArg::All => Suite::All,
            WhatArg::ClosedForm => Suite::ClosedForm,
            WhatArg::Ie => Suite::Ie,
            WhatArg::Partition => Suite::Partition,
            WhatArg::Symmetry => Suite::Symmetry,
            WhatArg::Observations => Suite::Observations,
            WhatArg::Sequence => Suite::Sequence,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guards = Guards {
        max_enumeration: cli.max_enumeration,
        max_free_steps: cli.max_expansion,
    };
    match run(cli.command, &guards) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}

fn classify(err: &Error) -> u8 {
    match err {
        Error::EnumerationGuard { .. } | Error::ExpansionGuard { .. } => 3,
        _ => 2,
    }
}

fn run(command: Command, guards: &Guards) -> Result<ExitCode, Error> {
    match command {
        Command::Count {
            r,
            n,
            word,
            method,
            format,
        } => run_count(r, n, &word, method, format, guards),
        Command::PatternCount { n, pattern, trace } => {
            run_pattern_count(n, &pattern, trace, guards)
        }
        Command::Table { r, n, format } => run_table(r, n, format, guards),
        Command::Enumerate { r, n, word, limit } => run_enumerate(r, n, &word, limit, guards),
        Command::Verify {
            r,
            n,
            what,
            format,
            no_timestamp,
        } => run_verify(r, n, what, format, no_timestamp, guards),
    }
}

fn run_count(
    r: u32,
    n: u32,
    word: &str,
    method: MethodArg,
    format: FormatArg,
    guards: &Guards,
) -> Result<ExitCode, Error> {
    let sig = Signature::new(r, n)?;
    let word = ExcedanceWord::parse(word, sig)?;
    let report = count(&word, method.into(), guards)?;
    match format {
        FormatArg::Text => {
            println!("word: {}", report.word);
            println!("realizable: {}", report.realizable);
            println!("method: {}", report.method);
            println!("count: {}", report.count);
        }
        FormatArg::Json => {
            let value = json!({
                "r": r,
                "n": n,
                "word": report.word.to_string(),
                "realizable": report.realizable,
                "count": report.count.to_string(),
                "method": report.method.to_string(),
            });
            println!("{value}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_pattern_count(
    n: u32,
    pattern: &str,
    trace: bool,
    guards: &Guards,
) -> Result<ExitCode, Error> {
    let pattern = PatternWord::parse(pattern, n)?;
    if trace {
        for (idx, (walk, term)) in expansion_terms(&pattern, guards)?.iter().enumerate() {
            let sign = if term >= &BigInt::zero() { "+" } else { "" };
            eprintln!("term {}: {walk} -> {sign}{term}", idx + 1);
        }
    }
    println!("{}", signed_sum(&pattern, guards)?);
    Ok(ExitCode::SUCCESS)
}

fn run_table(r: u32, n: u32, format: FormatArg, guards: &Guards) -> Result<ExitCode, Error> {
    let sig = Signature::new(r, n)?;
    let table = b_run_table(sig, guards)?;
    match format {
        FormatArg::Text => {
            for (k, value) in table.values().iter().enumerate() {
                println!("{k} {value}");
            }
            println!("log-concave: {}", table.is_log_concave());
            println!("unimodal: {}", table.is_unimodal());
            println!("palindromic: {}", table.is_palindromic());
        }
        FormatArg::Json => {
            let counts: Vec<String> = table.values().iter().map(|v| v.to_string()).collect();
            let value = json!({
                "r": r,
                "n": n,
                "counts": counts,
                "log_concave": table.is_log_concave(),
                "unimodal": table.is_unimodal(),
                "palindromic": table.is_palindromic(),
            });
            println!("{value}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_enumerate(
    r: u32,
    n: u32,
    word: &str,
    limit: Option<u64>,
    guards: &Guards,
) -> Result<ExitCode, Error> {
    let sig = Signature::new(r, n)?;
    let word = ExcedanceWord::parse(word, sig)?;
    let mut printed = 0u64;
    for pi in enumerate_group(sig, guards.max_enumeration)? {
        if ExcedanceWord::of_permutation(&pi) != word {
            continue;
        }
        if limit.is_some_and(|cap| printed >= cap) {
            eprintln!("output truncated after {printed} matches (--limit)");
            return Ok(ExitCode::SUCCESS);
        }
        println!("{pi}");
        printed += 1;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    r: u32,
    n: u32,
    what: WhatArg,
    format: FormatArg,
    no_timestamp: bool,
    guards: &Guards,
) -> Result<ExitCode, Error> {
    let sig = Signature::new(r, n)?;
    let report = verify::run(sig, what.into(), guards)?;
    let (r, n) = (report.sig.r(), report.sig.n());
    match format {
        FormatArg::Text => {
            println!("verify: r={r} n={n}");
            if !no_timestamp {
                let now = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                println!("generated-at: {now}");
            }
            for check in &report.checks {
                match (&check.passed, &check.detail) {
                    (true, _) => println!("{}: pass", check.name),
                    (false, Some(detail)) => println!("{}: fail ({detail})", check.name),
                    (false, None) => println!("{}: fail", check.name),
                }
            }
            println!("overall: {}", if report.passed() { "pass" } else { "fail" });
        }
        FormatArg::Json => {
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|check| {
                    json!({
                        "name": check.name,
                        "status": if check.passed { "pass" } else { "fail" },
                        "detail": check.detail,
                    })
                })
                .collect();
            let value = json!({
                "r": r,
                "n": n,
                "checks": checks,
                "overall": if report.passed() { "pass" } else { "fail" },
            });
            println!("{value}");
        }
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
