//! The table of counts for the words `b^k a^(rn-1-k)` and shape tests
//! (log-concavity, unimodality, palindromicity) on count sequences.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counting::{closed_form_bk, signed_sum, Guards};
use crate::error::Result;
use crate::group::Signature;
use crate::pattern::{PatternLetter, PatternWord};

/// The counts of `b^k a^(rn-1-k)` for `k = 0 .. rn-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    sig: Signature,
    values: Vec<BigUint>,
}

impl CountSequence {
    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn is_log_concave(&self) -> bool {
        is_log_concave(&self.values)
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.values)
    }

    pub fn is_palindromic(&self) -> bool {
        is_palindromic(&self.values)
    }

    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }
}

/// Builds the table: the closed form for `r >= 2`, the inclusion-exclusion
/// sum for `r = 1` (where the closed form does not apply).
pub fn b_run_table(sig: Signature, guards: &Guards) -> Result<CountSequence> {
    let len = sig.alphabet_size() as usize;
    let mut values = Vec::with_capacity(len);
    if sig.r() >= 2 {
        for k in 0..len {
            values.push(closed_form_bk(k as u32, sig)?);
        }
    } else {
        for k in 0..len {
            let letters = (0..len - 1)
                .map(|i| {
                    if i < k {
                        PatternLetter::B
                    } else {
                        PatternLetter::A
                    }
                })
                .collect();
            let pattern = PatternWord::new(sig.n(), letters)?;
            values.push(signed_sum(&pattern, guards)?);
        }
    }
    Ok(CountSequence { sig, values })
}

/// Smallest interior index `k` with `a_{k-1} * a_{k+1} > a_k^2`, if any.
pub fn first_log_concavity_violation(values: &[BigUint]) -> Option<usize> {
    (1..values.len().saturating_sub(1))
        .find(|&k| &values[k - 1] * &values[k + 1] > &values[k] * &values[k])
}

pub fn is_log_concave(values: &[BigUint]) -> bool {
    first_log_concavity_violation(values).is_none()
}

/// Weakly rises, then weakly falls.
pub fn is_unimodal(values: &[BigUint]) -> bool {
    let mut i = 0;
    while i + 1 < values.len() && values[i] <= values[i + 1] {
        i += 1;
    }
    while i + 1 < values.len() && values[i] >= values[i + 1] {
        i += 1;
    }
    i + 1 >= values.len()
}

pub fn is_palindromic(values: &[BigUint]) -> bool {
    values.iter().eq(values.iter().rev())
}
