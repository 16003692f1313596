//! Excedance sets, the a/b matrix of a colored permutation, and its
//! flattened word form.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{ColoredLetter, ColoredPermutation, Signature};

/// One matrix entry / word letter: `a` marks a non-excedance, `b` an excedance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    A,
    B,
}

impl Cell {
    pub fn as_char(self) -> char {
        match self {
            Cell::A => 'a',
            Cell::B => 'b',
        }
    }
}

/// The letters the permutation pushes up in the color order.
pub fn excedance_set(pi: &ColoredPermutation) -> BTreeSet<ColoredLetter> {
    pi.signature()
        .alphabet()
        .filter(|&x| pi.apply(x).expect("alphabet letter") > x)
        .collect()
}

/// The `r x n` grid of a/b cells. Rows run top-down from color `r-1` to
/// color `0`; columns follow the digits `1..=n`. Arbitrary grids are
/// representable, not only those realized by a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExcedanceMatrix {
    sig: Signature,
    cells: Vec<Cell>, // row-major, top row first
}

impl ExcedanceMatrix {
    pub fn from_permutation(pi: &ColoredPermutation) -> Self {
        let sig = pi.signature();
        let cells = sig
            .alphabet()
            .map(|x| {
                if pi.apply(x).expect("alphabet letter") > x {
                    Cell::B
                } else {
                    Cell::A
                }
            })
            .collect();
        ExcedanceMatrix { sig, cells }
    }

    pub fn from_cells(sig: Signature, cells: Vec<Cell>) -> Result<Self> {
        if cells.len() as u64 != sig.alphabet_size() {
            return Err(Error::MatrixSize {
                sig,
                expected: sig.alphabet_size() as usize,
                got: cells.len(),
            });
        }
        Ok(ExcedanceMatrix { sig, cells })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Cell of column `digit` (1-based) and row `color`.
    pub fn cell(&self, digit: u32, color: u32) -> Cell {
        assert!(digit >= 1 && digit <= self.sig.n() && color < self.sig.r());
        let row = (self.sig.r() - 1 - color) as usize;
        self.cells[row * self.sig.n() as usize + (digit - 1) as usize]
    }

    /// Rows top-down, i.e. color `r-1` first.
    pub fn rows(&self) -> impl Iterator<Item = &[Cell]> {
        self.cells.chunks(self.sig.n() as usize)
    }

    /// Column of `digit`, read top-down.
    pub fn column(&self, digit: u32) -> impl Iterator<Item = Cell> + '_ {
        let n = self.sig.n() as usize;
        let idx = (digit - 1) as usize;
        self.cells[idx..].iter().step_by(n).copied()
    }

    /// Row-major reading with the final cell dropped. That cell is `a` for
    /// every permutation-sourced matrix; a `b` there is rejected because no
    /// permutation realizes it.
    pub fn flatten(&self) -> Result<ExcedanceWord> {
        let (last, rest) = self.cells.split_last().expect("matrix is never empty");
        if *last != Cell::A {
            return Err(Error::TrailingCellNotA);
        }
        Ok(ExcedanceWord {
            sig: self.sig,
            letters: rest.to_vec(),
        })
    }
}

impl fmt::Display for ExcedanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.rows().enumerate() {
            if idx > 0 {
                write!(f, "|")?;
            }
            for cell in row {
                write!(f, "{}", cell.as_char())?;
            }
        }
        Ok(())
    }
}

/// The flattening of an excedance matrix: `r*n - 1` letters, the trailing
/// (always-`a`) cell dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExcedanceWord {
    sig: Signature,
    letters: Vec<Cell>,
}

impl ExcedanceWord {
    pub fn new(sig: Signature, letters: Vec<Cell>) -> Result<Self> {
        if letters.len() != sig.word_len() {
            return Err(Error::WordLength {
                expected: sig.word_len(),
                got: letters.len(),
            });
        }
        Ok(ExcedanceWord { sig, letters })
    }

    pub fn of_permutation(pi: &ColoredPermutation) -> Self {
        ExcedanceMatrix::from_permutation(pi)
            .flatten()
            .expect("the dropped cell is a for every permutation")
    }

    /// Parses the letters `a`/`b`; `|` and whitespace are cosmetic and
    /// ignored. Positions in errors are 1-based over the raw input.
    pub fn parse(text: &str, sig: Signature) -> Result<Self> {
        let mut letters = Vec::new();
        for (idx, ch) in text.chars().enumerate() {
            match ch {
                'a' => letters.push(Cell::A),
                'b' => letters.push(Cell::B),
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
        Self::new(sig, letters)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn letters(&self) -> &[Cell] {
        &self.letters
    }

    pub fn b_count(&self) -> usize {
        self.letters.iter().filter(|&&c| c == Cell::B).count()
    }

    /// Rebuilds the matrix, re-inserting the dropped trailing `a`.
    pub fn inflate(&self) -> ExcedanceMatrix {
        let mut cells = self.letters.clone();
        cells.push(Cell::A);
        ExcedanceMatrix {
            sig: self.sig,
            cells,
        }
    }

    /// The word `b^k a^(rn-1-k)`.
    pub fn b_run(sig: Signature, k: usize) -> Result<Self> {
        let len = sig.word_len();
        if k > len {
            return Err(Error::WordLength {
                expected: len,
                got: k,
            });
        }
        let mut letters = vec![Cell::B; k];
        letters.resize(len, Cell::A);
        Ok(ExcedanceWord { sig, letters })
    }
}

impl fmt::Display for ExcedanceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.sig.n() as usize;
        for (idx, cell) in self.letters.iter().enumerate() {
            if idx > 0 && idx % n == 0 {
                write!(f, "|")?;
            }
            write!(f, "{}", cell.as_char())?;
        }
        Ok(())
    }
}
