//! Excedance statistics on colored permutation groups.
//!
//! A colored permutation acts on an alphabet of `n` digits carrying `r`
//! colors. Under the color order, each element has an excedance set, an
//! `r x n` a/b matrix recording it, and a flattened excedance word of
//! length `rn - 1`. This crate computes those statistics and counts the
//! elements with a prescribed word by three independent routes:
//!
//! * an exhaustive enumeration oracle ([`counting::oracle_count`]),
//! * a closed form for the words `b^k a^(rn-1-k)` ([`counting::closed_form_bk`]),
//! * an inclusion-exclusion sum over lattice walks ([`counting::signed_sum`]),
//!   reached by collapsing matrix columns to a pattern over `{a, b, *}`
//!   ([`counting::collapse_columns`]).
//!
//! [`sequence::b_run_table`] assembles the `b^k a^...` count sequence and
//! checks it for log-concavity, unimodality and palindromic symmetry.

pub mod counting;
pub mod error;
pub mod group;
pub mod matrix;
pub mod pattern;
pub mod sequence;

pub use error::{Error, Result};
pub use group::{enumerate_group, ColoredLetter, ColoredPermutation, Signature};
pub use matrix::{excedance_set, Cell, ExcedanceMatrix, ExcedanceWord};
pub use pattern::{PatternLetter, PatternWord};

pub use counting::{
    closed_form_bk, count, count_cross_checked, oracle_count, oracle_histogram, collapse_columns,
    realizable_census, realizable_columns, signed_sum, wildcard_product, CountMethod,
    CountReport, Guards,
};
pub use sequence::{b_run_table, CountSequence};
