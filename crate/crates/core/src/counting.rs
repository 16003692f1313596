//! Counting group elements with a prescribed excedance word, three ways:
//! exhaustive enumeration, the closed form for `b^k a^...` words, and an
//! inclusion-exclusion sum over lattice walks.
//!
//! The formula path works by collapsing each matrix column to one letter
//! (`a` for all-a, `b` for all-b, a wildcard otherwise), which turns the
//! colored count into a pattern count over ordinary permutations; writing
//! every remaining `b` as "wildcard minus a" expands the pattern into
//! signed wildcard-only terms, one per 0/1-step walk.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{enumerate_group, Signature};
use crate::matrix::{Cell, ExcedanceMatrix, ExcedanceWord};
use crate::pattern::{PatternLetter, PatternWord};

pub const DEFAULT_MAX_ENUMERATION: u64 = 100_000_000;
pub const DEFAULT_MAX_FREE_STEPS: u32 = 30;

/// Resource caps for the exhaustive and inclusion-exclusion paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest group order the enumeration paths accept.
    pub max_enumeration: u64,
    /// Largest number of free walk steps (the sum then has up to 2^free terms).
    pub max_free_steps: u32,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_enumeration: DEFAULT_MAX_ENUMERATION,
            max_free_steps: DEFAULT_MAX_FREE_STEPS,
        }
    }
}

/// One inclusion-exclusion index: a walk `(r_1, ..., r_{k+1})` with
/// `r_1 = 1` and steps 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalkVector {
    entries: Vec<u32>,
}

impl WalkVector {
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of flat (step-0) positions; its parity is the sign of the term.
    pub fn flat_steps(&self) -> u32 {
        self.entries.windows(2).filter(|w| w[0] == w[1]).count() as u32
    }
}

impl fmt::Display for WalkVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn free_positions(k: u32, forced: &BTreeSet<u32>) -> Vec<u32> {
    (1..=k).filter(|i| !forced.contains(i)).collect()
}

fn check_expansion(free: usize, cap: u32) -> Result<()> {
    // 63 keeps the term index inside u64 regardless of the configured cap
    let effective = cap.min(63);
    if free as u64 > u64::from(effective) {
        return Err(Error::ExpansionGuard {
            free_steps: free as u32,
            cap: effective,
        });
    }
    Ok(())
}

/// Walk for one assignment of the free steps. The mask reads the leftmost
/// free step from its most significant used bit, so ascending masks list
/// walks in the documented order.
fn walk_for_mask(k: u32, forced: &BTreeSet<u32>, free: &[u32], mask: u64) -> WalkVector {
    let mut entries = Vec::with_capacity(k as usize + 1);
    entries.push(1u32);
    let mut free_idx = 0;
    for i in 1..=k {
        let step = if forced.contains(&i) {
            1
        } else {
            let bit = free.len() - 1 - free_idx;
            free_idx += 1;
            (mask >> bit & 1) as u32
        };
        entries.push(entries[entries.len() - 1] + step);
    }
    WalkVector { entries }
}

/// All walks of length `k` whose steps at `forced` indices are 1, in
/// deterministic order: free steps count up lexicographically with step 0
/// before step 1 and the leftmost free step most significant.
pub fn walks(k: u32, forced: &BTreeSet<u32>, max_free_steps: u32) -> Result<Vec<WalkVector>> {
    let free = free_positions(k, forced);
    check_expansion(free.len(), max_free_steps)?;
    let count = 1u64 << free.len();
    Ok((0..count)
        .map(|mask| walk_for_mask(k, forced, &free, mask))
        .collect())
}

/// `1^(g_1+1) * 2^(g_2+1) * ... * (k+1)^(g_{k+1}+1)`: the exact number of
/// permutations matching a pattern whose non-`a` letters are all wildcards.
pub fn wildcard_product(gaps: &[u32]) -> BigUint {
    gaps.iter()
        .enumerate()
        .map(|(idx, &gap)| BigUint::from(idx as u64 + 1).pow(gap + 1))
        .product()
}

fn walk_term(walk: &WalkVector, gaps: &[u32]) -> BigInt {
    let magnitude: BigUint = walk
        .entries
        .iter()
        .zip(gaps)
        .map(|(&height, &gap)| BigUint::from(height).pow(gap + 1))
        .product();
    if walk.flat_steps().is_multiple_of(2) {
        BigInt::from(magnitude)
    } else {
        -BigInt::from(magnitude)
    }
}

/// The exact number of permutations of `1..=n` matching the pattern, as an
/// alternating sum over walks. Nonnegative by construction.
pub fn signed_sum(pattern: &PatternWord, guards: &Guards) -> Result<BigUint> {
    let decomp = pattern.decompose();
    let free = free_positions(decomp.k(), decomp.forced());
    check_expansion(free.len(), guards.max_free_steps)?;
    let mut sum = BigInt::zero();
    for mask in 0..(1u64 << free.len()) {
        let walk = walk_for_mask(decomp.k(), decomp.forced(), &free, mask);
        sum += walk_term(&walk, decomp.gaps());
    }
    Ok(sum
        .to_biguint()
        .expect("the alternating sum is a cardinality"))
}

/// The individual signed terms behind [`signed_sum`], in walk order. Meant
/// for traces and debugging; the sum itself never materializes this list.
pub fn expansion_terms(
    pattern: &PatternWord,
    guards: &Guards,
) -> Result<Vec<(WalkVector, BigInt)>> {
    let decomp = pattern.decompose();
    let listed = walks(decomp.k(), decomp.forced(), guards.max_free_steps)?;
    Ok(listed
        .into_iter()
        .map(|walk| {
            let term = walk_term(&walk, decomp.gaps());
            (walk, term)
        })
        .collect())
}

fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, x| acc * x)
}

/// Closed form for the count of the word `b^k a^(rn-1-k)`, valid for
/// `r >= 2`:
///
/// * `(k+1)^(n-k) * k!` for `0 <= k <= n`,
/// * `n!` for `n+1 <= k <= n(r-1)`,
/// * `(rn-k)^(k-rn+n) * (rn-k)!` for `n(r-1)+1 <= k <= rn-1`.
///
/// For `r = 1` the first and third ranges overlap and disagree, so that case
/// is rejected; route it through [`signed_sum`] instead.
pub fn closed_form_bk(k: u32, sig: Signature) -> Result<BigUint> {
    if sig.r() < 2 {
        return Err(Error::ClosedFormNeedsColors { sig });
    }
    let rn = sig.alphabet_size();
    let max = rn - 1;
    let k = u64::from(k);
    if k > max {
        return Err(Error::IndexOutOfRange { k: k as u32, max });
    }
    let n = u64::from(sig.n());
    let value = if k <= n {
        let exp = u32::try_from(n - k).expect("exponent fits u32");
        BigUint::from(k + 1).pow(exp) * factorial(k)
    } else if k <= n * (u64::from(sig.r()) - 1) {
        factorial(n)
    } else {
        let base = rn - k;
        let exp = u32::try_from(k + n - rn).expect("exponent fits u32");
        BigUint::from(base).pow(exp) * factorial(base)
    };
    Ok(value)
}

/// Exact count of group elements with the given excedance word, by full
/// enumeration. The independent reference for every formula here.
pub fn oracle_count(word: &ExcedanceWord, guards: &Guards) -> Result<BigUint> {
    let mut count = 0u64;
    for pi in enumerate_group(word.signature(), guards.max_enumeration)? {
        if ExcedanceWord::of_permutation(&pi) == *word {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// The full word distribution in one enumeration pass. Values sum to the
/// group order; absent keys mean count zero.
pub fn oracle_histogram(
    sig: Signature,
    guards: &Guards,
) -> Result<BTreeMap<ExcedanceWord, BigUint>> {
    let mut histogram = BTreeMap::new();
    for pi in enumerate_group(sig, guards.max_enumeration)? {
        *histogram
            .entry(ExcedanceWord::of_permutation(&pi))
            .or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(histogram)
}

/// The column b-heights `(u_1, ..., u_n)` when the matrix is realizable:
/// every column must read `b^u a^(r-u)` top-down and the last column must
/// keep its bottom cell `a`. `None` means no permutation has this matrix.
pub fn realizable_columns(matrix: &ExcedanceMatrix) -> Option<Vec<u32>> {
    let sig = matrix.signature();
    let mut heights = Vec::with_capacity(sig.n() as usize);
    for digit in 1..=sig.n() {
        let mut height = 0u32;
        let mut seen_a = false;
        for cell in matrix.column(digit) {
            match cell {
                Cell::B if seen_a => return None,
                Cell::B => height += 1,
                Cell::A => seen_a = true,
            }
        }
        heights.push(height);
    }
    if *heights.last().expect("n >= 1") == sig.r() {
        return None;
    }
    Some(heights)
}

/// Collapses the first `n-1` columns to a pattern: all-a to `a`, all-b to
/// `b`, mixed to a wildcard. Counting is preserved: restricting an element
/// to its underlying permutation is a bijection onto the pattern matches.
pub fn collapse_columns(matrix: &ExcedanceMatrix) -> Result<PatternWord> {
    let heights = realizable_columns(matrix).ok_or(Error::NotRealizable)?;
    let sig = matrix.signature();
    let letters = heights[..(sig.n() - 1) as usize]
        .iter()
        .map(|&u| {
            if u == 0 {
                PatternLetter::A
            } else if u == sig.r() {
                PatternLetter::B
            } else {
                PatternLetter::Wildcard
            }
        })
        .collect();
    PatternWord::new(sig.n(), letters)
}

/// Number of words a permutation can realize: `r * (r+1)^(n-1)` choices of
/// top-justified column heights.
pub fn realizable_census(sig: Signature) -> BigUint {
    BigUint::from(sig.r()) * BigUint::from(sig.r() + 1).pow(sig.n() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Auto,
    Oracle,
    InclusionExclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsedMethod {
    Oracle,
    ClosedForm,
    InclusionExclusion,
}

impl fmt::Display for UsedMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UsedMethod::Oracle => "oracle",
            UsedMethod::ClosedForm => "closed-form",
            UsedMethod::InclusionExclusion => "inclusion-exclusion",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CountReport {
    pub word: ExcedanceWord,
    pub realizable: bool,
    pub count: BigUint,
    pub method: UsedMethod,
    pub cross_checked: Option<bool>,
}

/// Counts the group elements whose excedance word is `word`.
///
/// `Auto` and `InclusionExclusion` go through the formula path: a
/// non-realizable word reports count 0 rather than an error, so sweeps over
/// all words stay uniform. `Oracle` enumerates the group.
pub fn count(word: &ExcedanceWord, method: CountMethod, guards: &Guards) -> Result<CountReport> {
    match method {
        CountMethod::Oracle => {
            let realizable = realizable_columns(&word.inflate()).is_some();
            Ok(CountReport {
                word: word.clone(),
                realizable,
                count: oracle_count(word, guards)?,
                method: UsedMethod::Oracle,
                cross_checked: None,
            })
        }
        CountMethod::Auto | CountMethod::InclusionExclusion => {
            let matrix = word.inflate();
            match realizable_columns(&matrix) {
                None => Ok(CountReport {
                    word: word.clone(),
                    realizable: false,
                    count: BigUint::zero(),
                    method: UsedMethod::InclusionExclusion,
                    cross_checked: None,
                }),
                Some(_) => {
                    let pattern = collapse_columns(&matrix)?;
                    Ok(CountReport {
                        word: word.clone(),
                        realizable: true,
                        count: signed_sum(&pattern, guards)?,
                        method: UsedMethod::InclusionExclusion,
                        cross_checked: None,
                    })
                }
            }
        }
    }
}

/// Runs the formula path and the oracle and insists they agree.
pub fn count_cross_checked(word: &ExcedanceWord, guards: &Guards) -> Result<CountReport> {
    let mut report = count(word, CountMethod::Auto, guards)?;
    let oracle = oracle_count(word, guards)?;
    if oracle != report.count {
        return Err(Error::CrossCheckMismatch {
            word: word.to_string(),
            oracle,
            formula: report.count,
        });
    }
    report.cross_checked = Some(true);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ColoredPermutation;

    fn sig(r: u32, n: u32) -> Signature {
        Signature::new(r, n).unwrap()
    }

    fn word(text: &str, r: u32, n: u32) -> ExcedanceWord {
        ExcedanceWord::parse(text, sig(r, n)).unwrap()
    }

    fn pattern(text: &str, n: u32) -> PatternWord {
        PatternWord::parse(text, n).unwrap()
    }

    fn forced(indices: &[u32]) -> BTreeSet<u32> {
        indices.iter().copied().collect()
    }

    #[test]
    fn walks_worked_example() {
        let listed = walks(4, &forced(&[2, 3]), 30).unwrap();
        let entries: Vec<&[u32]> = listed.iter().map(|w| w.entries()).collect();
        assert_eq!(
            entries,
            vec![
                &[1, 1, 2, 3, 3][..],
                &[1, 1, 2, 3, 4][..],
                &[1, 2, 3, 4, 4][..],
                &[1, 2, 3, 4, 5][..],
            ]
        );
    }

    #[test]
    fn walks_degenerate_cases() {
        let listed = walks(0, &BTreeSet::new(), 30).unwrap();
        assert_eq!(listed.len(), 1);
        assert_eq!(listed[0].entries(), &[1]);

        let listed = walks(2, &forced(&[1, 2]), 30).unwrap();
        assert_eq!(listed.len(), 1);
        assert_eq!(listed[0].entries(), &[1, 2, 3]);
    }

    #[test]
    fn walks_guard_refuses() {
        let err = walks(5, &BTreeSet::new(), 4).unwrap_err();
        assert!(matches!(
            err,
            Error::ExpansionGuard {
                free_steps: 5,
                cap: 4
            }
        ));
    }

    #[test]
    fn flat_steps_counts_plateaus() {
        let listed = walks(4, &forced(&[2, 3]), 30).unwrap();
        let flats: Vec<u32> = listed.iter().map(|w| w.flat_steps()).collect();
        assert_eq!(flats, vec![2, 1, 1, 0]);
    }

    #[test]
    fn wildcard_product_examples() {
        assert_eq!(
            wildcard_product(&[1, 0, 2, 0, 1]),
            BigUint::from(5400u32)
        );
        assert_eq!(wildcard_product(&[7]), BigUint::one());
        assert_eq!(wildcard_product(&[0, 0, 0]), BigUint::from(6u32));
    }

    #[test]
    fn signed_sum_worked_example() {
        let p = pattern("ab*aa*ba", 9);
        assert_eq!(signed_sum(&p, &Guards::default()).unwrap(), BigUint::from(1776u32));

        let terms = expansion_terms(&p, &Guards::default()).unwrap();
        let values: Vec<BigInt> = terms.iter().map(|(_, t)| t.clone()).collect();
        assert_eq!(
            values,
            vec![
                BigInt::from(216),
                BigInt::from(-384),
                BigInt::from(-3456),
                BigInt::from(5400),
            ]
        );
    }

    #[test]
    fn signed_sum_small_patterns() {
        let guards = Guards::default();
        // S_4 with excedance set exactly {1}: brute force gives 7
        assert_eq!(signed_sum(&pattern("baa", 4), &guards).unwrap(), BigUint::from(7u32));
        // all-a: only the identity
        assert_eq!(signed_sum(&pattern("aaaa", 5), &guards).unwrap(), BigUint::one());
        // position 1 forced, position 2 free
        assert_eq!(signed_sum(&pattern("b*", 3), &guards).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn signed_sum_guard_refuses() {
        let letters = vec![PatternLetter::B; 8];
        let p = PatternWord::new(9, letters).unwrap();
        let guards = Guards {
            max_free_steps: 3,
            ..Guards::default()
        };
        assert!(matches!(
            signed_sum(&p, &guards),
            Err(Error::ExpansionGuard {
                free_steps: 8,
                cap: 3
            })
        ));
    }

    #[test]
    fn closed_form_table_r2_n3() {
        let s = sig(2, 3);
        let values: Vec<BigUint> = (0..6).map(|k| closed_form_bk(k, s).unwrap()).collect();
        let expected: Vec<BigUint> = [1u32, 4, 6, 6, 4, 1].iter().map(|&v| v.into()).collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn closed_form_middle_case() {
        assert_eq!(closed_form_bk(5, sig(3, 3)).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn closed_form_k0_is_one() {
        for (r, n) in [(2, 3), (3, 4), (5, 2)] {
            assert_eq!(closed_form_bk(0, sig(r, n)).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn closed_form_boundary_seam() {
        // the first case at k = n equals the middle constant n!
        for (r, n) in [(3, 3), (4, 2), (3, 4)] {
            let s = sig(r, n);
            let at_n = closed_form_bk(n, s).unwrap();
            assert_eq!(at_n, factorial(u64::from(n)));
        }
    }

    #[test]
    fn closed_form_rejects_r1_and_bad_k() {
        assert!(matches!(
            closed_form_bk(0, sig(1, 4)),
            Err(Error::ClosedFormNeedsColors { .. })
        ));
        assert!(matches!(
            closed_form_bk(6, sig(2, 3)),
            Err(Error::IndexOutOfRange { k: 6, max: 5 })
        ));
    }

    #[test]
    fn oracle_count_examples() {
        let guards = Guards::default();
        assert_eq!(
            oracle_count(&word("aaaaa", 2, 3), &guards).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            oracle_count(&word("bbb|bab|ba", 3, 3), &guards).unwrap(),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn oracle_counts_partition_the_group() {
        let s = sig(2, 3);
        let guards = Guards::default();
        let mut total = BigUint::zero();
        for bits in 0u32..(1 << 5) {
            let letters: Vec<Cell> = (0..5)
                .map(|i| if bits >> i & 1 == 1 { Cell::B } else { Cell::A })
                .collect();
            let w = ExcedanceWord::new(s, letters).unwrap();
            total += oracle_count(&w, &guards).unwrap();
        }
        assert_eq!(total, BigUint::from(48u32));
    }

    #[test]
    fn oracle_histogram_examples() {
        let guards = Guards::default();
        let hist = oracle_histogram(sig(1, 2), &guards).unwrap();
        assert_eq!(hist.len(), 2);
        assert_eq!(hist[&word("a", 1, 2)], BigUint::one());
        assert_eq!(hist[&word("b", 1, 2)], BigUint::one());

        let hist = oracle_histogram(sig(2, 2), &guards).unwrap();
        let total: BigUint = hist.values().sum();
        assert_eq!(total, BigUint::from(8u32));
    }

    #[test]
    fn histogram_keys_are_realizable() {
        let guards = Guards::default();
        for (key, value) in oracle_histogram(sig(3, 3), &guards).unwrap() {
            assert!(realizable_columns(&key.inflate()).is_some(), "{key}");
            assert!(value >= BigUint::one());
        }
    }

    #[test]
    fn realizable_columns_examples() {
        let pi = ColoredPermutation::parse("3^0 1^1 2^2", sig(3, 3)).unwrap();
        let m = ExcedanceMatrix::from_permutation(&pi);
        assert_eq!(realizable_columns(&m), Some(vec![3, 1, 2]));

        let id = ColoredPermutation::identity(sig(2, 3));
        let m = ExcedanceMatrix::from_permutation(&id);
        assert_eq!(realizable_columns(&m), Some(vec![0, 0, 0]));

        // column (a, b) top-down is not top-justified
        let m = ExcedanceMatrix::from_cells(
            sig(2, 2),
            vec![Cell::A, Cell::A, Cell::B, Cell::A],
        )
        .unwrap();
        assert_eq!(realizable_columns(&m), None);

        // all-b in the last column drops below the trailing a
        let m = word("bbb", 2, 2).inflate();
        assert_eq!(realizable_columns(&m), Some(vec![2, 1]));
        let m = ExcedanceMatrix::from_cells(
            sig(2, 2),
            vec![Cell::A, Cell::B, Cell::A, Cell::B],
        )
        .unwrap();
        assert_eq!(realizable_columns(&m), None);
    }

    #[test]
    fn psi_examples() {
        use PatternLetter::{Wildcard, A, B};
        let m = word("abbb|abab|aba", 3, 4).inflate();
        assert_eq!(collapse_columns(&m).unwrap().letters(), &[A, B, Wildcard]);

        let m = word("bbb|bab|ba", 3, 3).inflate();
        assert_eq!(collapse_columns(&m).unwrap().letters(), &[B, Wildcard]);

        let m = word("aaa|aa", 2, 3).inflate();
        assert_eq!(collapse_columns(&m).unwrap().letters(), &[A, A]);

        let m = ExcedanceMatrix::from_cells(
            sig(2, 2),
            vec![Cell::A, Cell::A, Cell::B, Cell::A],
        )
        .unwrap();
        assert!(matches!(collapse_columns(&m), Err(Error::NotRealizable)));
    }

    #[test]
    fn count_dispatcher() {
        let guards = Guards::default();

        let report = count(&word("bbb|bab|ba", 3, 3), CountMethod::Auto, &guards).unwrap();
        assert!(report.realizable);
        assert_eq!(report.count, BigUint::from(4u32));
        assert_eq!(report.method, UsedMethod::InclusionExclusion);

        // not top-justified: counts zero without erroring
        let report = count(&word("ababa", 2, 3), CountMethod::Auto, &guards).unwrap();
        assert!(!report.realizable);
        assert!(report.count.is_zero());

        let report = count(&word("bbbbb", 2, 3), CountMethod::Auto, &guards).unwrap();
        assert_eq!(report.count, BigUint::one());

        let report = count(&word("bbb|bab|ba", 3, 3), CountMethod::Oracle, &guards).unwrap();
        assert_eq!(report.count, BigUint::from(4u32));
        assert_eq!(report.method, UsedMethod::Oracle);
    }

    #[test]
    fn cross_check_sets_flag() {
        let guards = Guards::default();
        let report = count_cross_checked(&word("bbb|bab|ba", 3, 3), &guards).unwrap();
        assert_eq!(report.cross_checked, Some(true));
    }

    #[test]
    fn realizable_census_value() {
        assert_eq!(realizable_census(sig(2, 3)), BigUint::from(18u32));
        assert_eq!(realizable_census(sig(3, 3)), BigUint::from(48u32));
        assert_eq!(realizable_census(sig(1, 1)), BigUint::one());
    }
}
