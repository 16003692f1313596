//! The cross-verification sweeps behind `excedance verify`: every formula
//! in the library checked against the exhaustive oracle on one group.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use excedance::counting::{
    count, oracle_histogram, realizable_census, realizable_columns, CountMethod, Guards,
};
use excedance::group::{enumerate_group, Signature};
use excedance::matrix::{Cell, ExcedanceMatrix, ExcedanceWord};
use excedance::sequence::b_run_table;
use excedance::Result;

/// Sweep every word exhaustively up to this length; longer words are
/// checked through the histogram support instead.
const FULL_SWEEP_MAX_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    ClosedForm,
    Ie,
    Partition,
    Symmetry,
    Observations,
    Sequence,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: &'static str) -> Self {
        Check {
            name,
            passed: true,
            detail: None,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Check {
            name,
            passed: false,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub sig: Signature,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Histogram = BTreeMap<ExcedanceWord, BigUint>;

pub fn run(sig: Signature, suite: Suite, guards: &Guards) -> Result<VerificationReport> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let needs_histogram = wants(Suite::ClosedForm)
        || wants(Suite::Ie)
        || wants(Suite::Partition)
        || wants(Suite::Symmetry);
    let histogram = if needs_histogram {
        Some(oracle_histogram(sig, guards)?)
    } else {
        None
    };
    let histogram = histogram.as_ref();

    let mut checks = Vec::new();
    if wants(Suite::ClosedForm) {
        checks.push(closed_form_check(sig, histogram.unwrap(), guards)?);
    }
    if wants(Suite::Ie) {
        checks.push(ie_check(sig, histogram.unwrap(), guards)?);
    }
    if wants(Suite::Partition) {
        checks.push(partition_check(sig, histogram.unwrap(), guards)?);
    }
    if wants(Suite::Symmetry) {
        checks.push(symmetry_check(sig, histogram.unwrap()));
    }
    if wants(Suite::Observations) {
        checks.push(observations_check(sig, guards)?);
    }
    if wants(Suite::Sequence) {
        checks.push(sequence_check(sig, guards)?);
    }
    Ok(VerificationReport { sig, checks })
}

fn lookup(histogram: &Histogram, word: &ExcedanceWord) -> BigUint {
    histogram.get(word).cloned().unwrap_or_else(BigUint::zero)
}

fn all_words(sig: Signature) -> Vec<ExcedanceWord> {
    let len = sig.word_len();
    (0u64..(1 << len))
        .map(|bits| {
            let letters = (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        Cell::B
                    } else {
                        Cell::A
                    }
                })
                .collect();
            ExcedanceWord::new(sig, letters).expect("length matches")
        })
        .collect()
}

fn reverse_complement(word: &ExcedanceWord) -> ExcedanceWord {
    let letters = word
        .letters()
        .iter()
        .rev()
        .map(|&c| if c == Cell::B { Cell::A } else { Cell::B })
        .collect();
    ExcedanceWord::new(word.signature(), letters).expect("length preserved")
}

/// The b-run table from the formula path against the oracle, for every k.
fn closed_form_check(sig: Signature, histogram: &Histogram, guards: &Guards) -> Result<Check> {
    let table = b_run_table(sig, guards)?;
    for (k, expected) in table.values().iter().enumerate() {
        let word = ExcedanceWord::b_run(sig, k).expect("k is in range");
        let observed = lookup(histogram, &word);
        if observed != *expected {
            return Ok(Check::fail(
                "closed-form",
                format!("k={k}: formula {expected}, oracle {observed}"),
            ));
        }
    }
    Ok(Check::pass("closed-form"))
}

/// Formula count against the oracle, word by word.
fn ie_check(sig: Signature, histogram: &Histogram, guards: &Guards) -> Result<Check> {
    if sig.word_len() <= FULL_SWEEP_MAX_LEN {
        for word in all_words(sig) {
            let report = count(&word, CountMethod::Auto, guards)?;
            let observed = lookup(histogram, &word);
            if report.count != observed {
                return Ok(Check::fail(
                    "ie",
                    format!("word {word}: formula {}, oracle {observed}", report.count),
                ));
            }
        }
    } else {
        for (word, observed) in histogram {
            let report = count(word, CountMethod::Auto, guards)?;
            if report.count != *observed {
                return Ok(Check::fail(
                    "ie",
                    format!("word {word}: formula {}, oracle {observed}", report.count),
                ));
            }
        }
    }
    Ok(Check::pass("ie"))
}

/// Counts partition the group and the realizable words are exactly the
/// histogram support, `r * (r+1)^(n-1)` of them.
fn partition_check(sig: Signature, histogram: &Histogram, guards: &Guards) -> Result<Check> {
    let total: BigUint = histogram.values().sum();
    if total != sig.group_order() {
        return Ok(Check::fail(
            "partition",
            format!("histogram sums to {total}, group order is {}", sig.group_order()),
        ));
    }
    let census = realizable_census(sig);
    if BigUint::from(histogram.len() as u64) != census {
        return Ok(Check::fail(
            "partition",
            format!("{} words realized, census says {census}", histogram.len()),
        ));
    }
    if let Some(key) = histogram
        .keys()
        .find(|key| realizable_columns(&key.inflate()).is_none())
    {
        return Ok(Check::fail(
            "partition",
            format!("word {key} is realized but fails the column test"),
        ));
    }
    if sig.word_len() <= FULL_SWEEP_MAX_LEN {
        let mut formula_total = BigUint::zero();
        let mut realizable = 0u64;
        for word in all_words(sig) {
            let report = count(&word, CountMethod::Auto, guards)?;
            if report.realizable {
                realizable += 1;
            }
            formula_total += report.count;
        }
        if formula_total != sig.group_order() {
            return Ok(Check::fail(
                "partition",
                format!(
                    "formula counts sum to {formula_total}, group order is {}",
                    sig.group_order()
                ),
            ));
        }
        if BigUint::from(realizable) != census {
            return Ok(Check::fail(
                "partition",
                format!("{realizable} words pass the column test, census says {census}"),
            ));
        }
    }
    Ok(Check::pass("partition"))
}

/// Counting is invariant under reverse-complement, so the b-run counts
/// read the same from both ends.
fn symmetry_check(sig: Signature, histogram: &Histogram) -> Check {
    for (word, value) in histogram {
        let mirrored = lookup(histogram, &reverse_complement(word));
        if mirrored != *value {
            return Check::fail(
                "symmetry",
                format!("word {word}: {value} vs mirrored {mirrored}"),
            );
        }
    }
    let len = sig.word_len();
    for k in 0..=len {
        let front = ExcedanceWord::b_run(sig, k).expect("in range");
        let back = ExcedanceWord::b_run(sig, len - k).expect("in range");
        let front_count = lookup(histogram, &front);
        let back_count = lookup(histogram, &back);
        if front_count != back_count {
            return Check::fail(
                "symmetry",
                format!("k={k}: {front_count} vs {back_count}"),
            );
        }
    }
    Check::pass("symmetry")
}

/// Column structure per element: constant columns exactly where the window
/// color is 0 (with the top cell set by whether the digit exceeds), and a
/// b-prefix of height equal to the window color otherwise.
fn observations_check(sig: Signature, guards: &Guards) -> Result<Check> {
    for pi in enumerate_group(sig, guards.max_enumeration)? {
        let matrix = ExcedanceMatrix::from_permutation(&pi);
        let colors = pi.image_colors();
        for i in 1..=sig.n() {
            let column: Vec<Cell> = matrix.column(i).collect();
            let c = colors[(i - 1) as usize];
            let ok = if c == 0 {
                column.iter().all(|&x| x == column[0])
                    && (column[0] == Cell::A) == (pi.digit(i) <= i)
            } else {
                column
                    .iter()
                    .enumerate()
                    .all(|(row, &cell)| (cell == Cell::B) == ((row as u32) < c))
            };
            if !ok {
                return Ok(Check::fail(
                    "observations",
                    format!("element {pi}, column {i}"),
                ));
            }
        }
    }
    Ok(Check::pass("observations"))
}

/// Shape of the b-run table: positive, log-concave, unimodal, palindromic.
fn sequence_check(sig: Signature, guards: &Guards) -> Result<Check> {
    let table = b_run_table(sig, guards)?;
    let verdicts = [
        ("positive", table.all_positive()),
        ("log-concave", table.is_log_concave()),
        ("unimodal", table.is_unimodal()),
        ("palindromic", table.is_palindromic()),
    ];
    for (name, ok) in verdicts {
        if !ok {
            return Ok(Check::fail("sequence", format!("table is not {name}")));
        }
    }
    Ok(Check::pass("sequence"))
}
