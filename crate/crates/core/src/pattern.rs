//! Patterns over `{a, b, *}` prescribing the excedance positions of an
//! ordinary permutation, and their gap/forced-step decomposition.
//!
//! A permutation of `1..=n` matches a pattern of length `n-1` when every
//! `b` position is an excedance, every `a` position is not, and wildcard
//! positions are unconstrained.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternLetter {
    A,
    B,
    Wildcard,
}

impl PatternLetter {
    pub fn as_char(self) -> char {
        match self {
            PatternLetter::A => 'a',
            PatternLetter::B => 'b',
            PatternLetter::Wildcard => '*',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternWord {
    n: u32,
    letters: Vec<PatternLetter>,
}

impl PatternWord {
    pub fn new(n: u32, letters: Vec<PatternLetter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSignature { r: 1, n });
        }
        if letters.len() != (n - 1) as usize {
            return Err(Error::PatternLength {
                expected: (n - 1) as usize,
                got: letters.len(),
            });
        }
        Ok(PatternWord { n, letters })
    }

    /// Parses `a`, `b` and `*`; `|` and whitespace are ignored. Positions in
    /// errors are 1-based over the raw input.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        let mut letters = Vec::new();
        for (idx, ch) in text.chars().enumerate() {
            match ch {
                'a' => letters.push(PatternLetter::A),
                'b' => letters.push(PatternLetter::B),
                '*' => letters.push(PatternLetter::Wildcard),
                '|' => {}
                ch if ch.is_whitespace() => {}
                ch => {
                    return Err(Error::IllegalCharacter {
                        position: idx + 1,
                        found: ch,
                    })
                }
            }
        }
        Self::new(n, letters)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[PatternLetter] {
        &self.letters
    }

    /// Splits the pattern into `a`-runs around its `k` non-`a` letters.
    pub fn decompose(&self) -> PatternDecomposition {
        let mut gaps = Vec::new();
        let mut forced = BTreeSet::new();
        let mut run = 0u32;
        let mut k = 0u32;
        for &letter in &self.letters {
            match letter {
                PatternLetter::A => run += 1,
                other => {
                    gaps.push(run);
                    run = 0;
                    k += 1;
                    if other == PatternLetter::Wildcard {
                        forced.insert(k);
                    }
                }
            }
        }
        gaps.push(run);
        PatternDecomposition { k, gaps, forced }
    }
}

impl fmt::Display for PatternWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            write!(f, "{}", letter.as_char())?;
        }
        Ok(())
    }
}

/// Gap view of a pattern: the `k` non-`a` letters split it into `k+1` runs
/// of `a`s of lengths `gaps`, and `forced` holds the 1-based indices (among
/// the non-`a` letters, not word positions) of the wildcards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDecomposition {
    k: u32,
    gaps: Vec<u32>,
    forced: BTreeSet<u32>,
}

impl PatternDecomposition {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn forced(&self) -> &BTreeSet<u32> {
        &self.forced
    }
}
