//! The colored permutation group: colored letters, window-form elements,
//! group arithmetic, and deterministic enumeration.
//!
//! An element is a bijection of the colored alphabet that commutes with the
//! color shift, so the images of the `n` color-0 letters (the *window*)
//! determine it completely. Everything here stores that window.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Group parameters: `r` colors and `n` digits. Both are at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    r: u32,
    n: u32,
}

impl Signature {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::InvalidSignature { r, n });
        }
        Ok(Signature { r, n })
    }

    pub fn r(self) -> u32 {
        self.r
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// Number of letters in the colored alphabet, `r * n`.
    pub fn alphabet_size(self) -> u64 {
        self.r as u64 * self.n as u64
    }

    /// Length of an excedance word over this signature, `r * n - 1`.
    pub fn word_len(self) -> usize {
        (self.alphabet_size() - 1) as usize
    }

    /// Group order `r^n * n!`.
    pub fn group_order(self) -> BigUint {
        let colors = BigUint::from(self.r).pow(self.n);
        (1..=u64::from(self.n)).fold(colors, |acc, k| acc * k)
    }

    /// Group order saturated to u128, exact whenever it fits. Cheap even
    /// for absurd signatures, so guards can refuse without big allocations.
    fn order_saturating(self) -> u128 {
        let mut acc: u128 = 1;
        for i in 1..=u128::from(self.n) {
            acc = acc
                .saturating_mul(i)
                .saturating_mul(u128::from(self.r));
            if acc == u128::MAX {
                break;
            }
        }
        acc
    }

    /// Checked letter constructor for this alphabet.
    pub fn letter(self, digit: u32, color: u32) -> Result<ColoredLetter> {
        if digit == 0 || digit > self.n || color >= self.r {
            return Err(Error::LetterOutOfRange {
                digit,
                color,
                sig: self,
            });
        }
        Ok(ColoredLetter { digit, color })
    }

    pub fn contains(self, x: ColoredLetter) -> bool {
        x.digit >= 1 && x.digit <= self.n && x.color < self.r
    }

    /// All letters of the alphabet in ascending order.
    pub fn alphabet(self) -> impl Iterator<Item = ColoredLetter> {
        let n = self.n;
        (0..self.r)
            .rev()
            .flat_map(move |color| (1..=n).map(move |digit| ColoredLetter { digit, color }))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.r, self.n)
    }
}

/// A digit `1..=n` carrying a color `0..r`.
///
/// Letters compare in the color order: letters of a *higher* color come
/// first, ties are broken by digit. The plain (color-0) letters are the
/// largest block:
///
/// ```
/// use excedance::group::Signature;
///
/// let sig = Signature::new(3, 3).unwrap();
/// let low = sig.letter(3, 1).unwrap();
/// let high = sig.letter(1, 0).unwrap();
/// assert!(low < high);
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredLetter {
    digit: u32,
    color: u32,
}

impl ColoredLetter {
    /// Unchecked constructor; use [`Signature::letter`] to validate ranges.
    pub fn new(digit: u32, color: u32) -> Self {
        assert!(digit >= 1, "digits are 1-based");
        ColoredLetter { digit, color }
    }

    pub fn digit(self) -> u32 {
        self.digit
    }

    pub fn color(self) -> u32 {
        self.color
    }
}

impl Ord for ColoredLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .color
            .cmp(&self.color)
            .then_with(|| self.digit.cmp(&other.digit))
    }
}

impl PartialOrd for ColoredLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.digit, self.color)
    }
}

/// An element of the colored permutation group, stored as its window: entry
/// `i` is the image of the plain letter `i`. Writing that image as
/// `sigma_i^[gamma_i]`, the whole map is `i^[j] -> sigma_i^[(gamma_i + j) mod r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    sig: Signature,
    targets: Vec<ColoredLetter>,
}

impl ColoredPermutation {
    pub fn identity(sig: Signature) -> Self {
        let targets = (1..=sig.n)
            .map(|digit| ColoredLetter { digit, color: 0 })
            .collect();
        ColoredPermutation { sig, targets }
    }

    /// Builds an element from its window, validating that the digits form a
    /// permutation and every color is in range.
    pub fn new(sig: Signature, targets: Vec<ColoredLetter>) -> Result<Self> {
        if targets.len() != sig.n as usize {
            return Err(Error::WindowLength {
                expected: sig.n as usize,
                got: targets.len(),
            });
        }
        let mut seen = vec![false; sig.n as usize];
        for &t in &targets {
            if !sig.contains(t) {
                return Err(Error::LetterOutOfRange {
                    digit: t.digit,
                    color: t.color,
                    sig,
                });
            }
            let slot = &mut seen[(t.digit - 1) as usize];
            if *slot {
                return Err(Error::RepeatedDigit { digit: t.digit });
            }
            *slot = true;
        }
        Ok(ColoredPermutation { sig, targets })
    }

    /// Builds an element from separate digit and color sequences.
    pub fn from_parts(sig: Signature, digits: &[u32], colors: &[u32]) -> Result<Self> {
        if digits.len() != colors.len() {
            return Err(Error::WindowLength {
                expected: digits.len(),
                got: colors.len(),
            });
        }
        let targets = digits
            .iter()
            .zip(colors)
            .map(|(&digit, &color)| ColoredLetter { digit, color })
            .collect();
        Self::new(sig, targets)
    }

    fn from_parts_unchecked(sig: Signature, digits: &[u32], colors: &[u32]) -> Self {
        let targets = digits
            .iter()
            .zip(colors)
            .map(|(&digit, &color)| ColoredLetter { digit, color })
            .collect();
        ColoredPermutation { sig, targets }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Image of the plain letter `i` (the window entry), `i` in `1..=n`.
    pub fn target(&self, i: u32) -> ColoredLetter {
        self.targets[(i - 1) as usize]
    }

    /// `sigma_i`: the digit of the window entry at position `i`.
    pub fn digit(&self, i: u32) -> u32 {
        self.target(i).digit
    }

    /// `gamma_i`: the color of the window entry at position `i`.
    pub fn color(&self, i: u32) -> u32 {
        self.target(i).color
    }

    pub fn is_identity(&self) -> bool {
        self.targets
            .iter()
            .enumerate()
            .all(|(idx, t)| t.digit == idx as u32 + 1 && t.color == 0)
    }

    /// Evaluates the permutation on one letter of the alphabet.
    pub fn apply(&self, x: ColoredLetter) -> Result<ColoredLetter> {
        if !self.sig.contains(x) {
            return Err(Error::LetterOutOfRange {
                digit: x.digit,
                color: x.color,
                sig: self.sig,
            });
        }
        let t = self.targets[(x.digit - 1) as usize];
        Ok(ColoredLetter {
            digit: t.digit,
            color: (t.color + x.color) % self.sig.r,
        })
    }

    /// Function composition: `(self . inner)(x) = self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.sig != inner.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: inner.sig,
            });
        }
        let r = self.sig.r;
        let targets = inner
            .targets
            .iter()
            .map(|t| {
                let outer = self.targets[(t.digit - 1) as usize];
                ColoredLetter {
                    digit: outer.digit,
                    color: (outer.color + t.color) % r,
                }
            })
            .collect();
        Ok(ColoredPermutation {
            sig: self.sig,
            targets,
        })
    }

    pub fn inverse(&self) -> Self {
        let r = self.sig.r;
        let mut targets = vec![ColoredLetter { digit: 1, color: 0 }; self.targets.len()];
        for (idx, t) in self.targets.iter().enumerate() {
            targets[(t.digit - 1) as usize] = ColoredLetter {
                digit: idx as u32 + 1,
                color: (r - t.color) % r,
            };
        }
        ColoredPermutation {
            sig: self.sig,
            targets,
        }
    }

    /// The window colors `(gamma_1, ..., gamma_n)`. Entry `i` is also the
    /// number of `b` cells in a mixed column `i` of the excedance matrix.
    pub fn image_colors(&self) -> Vec<u32> {
        self.targets.iter().map(|t| t.color).collect()
    }

    /// Parses window notation: `n` whitespace-separated `digit^color` tokens.
    pub fn parse(text: &str, sig: Signature) -> Result<Self> {
        let mut targets = Vec::new();
        for token in text.split_whitespace() {
            let (digit, color) = token
                .split_once('^')
                .ok_or_else(|| Error::MalformedToken {
                    token: token.to_string(),
                })?;
            let digit: u32 = digit.parse().map_err(|_| Error::MalformedToken {
                token: token.to_string(),
            })?;
            let color: u32 = color.parse().map_err(|_| Error::MalformedToken {
                token: token.to_string(),
            })?;
            targets.push(sig.letter(digit, color)?);
        }
        Self::new(sig, targets)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.targets.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Lexicographic successor in place; `false` once the slice was the last
/// permutation (it is then left reversed, i.e. sorted again).
fn next_permutation(s: &mut [u32]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let mut i = s.len() - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        s.reverse();
        return false;
    }
    let mut j = s.len() - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// Deterministic stream over the whole group.
///
/// Underlying permutations ascend lexicographically; within one permutation
/// the colors tick as a big-endian base-`r` counter (`gamma_1` most
/// significant), so the identity comes first. Refuses groups with more than
/// `max_elements` elements.
pub fn enumerate_group(sig: Signature, max_elements: u64) -> Result<GroupIter> {
    let order = sig.order_saturating();
    if order > u128::from(max_elements) {
        let order = if order < u128::MAX {
            order.to_string()
        } else {
            "more than 2^127".to_string()
        };
        return Err(Error::EnumerationGuard {
            sig,
            order,
            cap: max_elements,
        });
    }
    Ok(GroupIter {
        sig,
        sigma: (1..=sig.n).collect(),
        gamma: vec![0; sig.n as usize],
        exhausted: false,
    })
}

#[derive(Debug, Clone)]
pub struct GroupIter {
    sig: Signature,
    sigma: Vec<u32>,
    gamma: Vec<u32>,
    exhausted: bool,
}

impl Iterator for GroupIter {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.exhausted {
            return None;
        }
        let item = ColoredPermutation::from_parts_unchecked(self.sig, &self.sigma, &self.gamma);
        let r = self.sig.r;
        let mut i = self.gamma.len();
        loop {
            if i == 0 {
                if !next_permutation(&mut self.sigma) {
                    self.exhausted = true;
                }
                break;
            }
            i -= 1;
            self.gamma[i] += 1;
            if self.gamma[i] < r {
                break;
            }
            self.gamma[i] = 0;
        }
        Some(item)
    }
}
