//! Palindromic and periodic structure of words, the one-dimensional
//! closed form and its extremal grids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::Rational;

/// Proportion of cells holding each letter.
pub type LetterDistribution = BTreeMap<u8, Rational>;

/// A word over uppercase ASCII letters with at least two distinct letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(text: &str) -> Result<Word> {
        Word::from_symbols(text.as_bytes().to_vec())
    }

    pub fn from_symbols(symbols: Vec<u8>) -> Result<Word> {
        if let Some(&b) = symbols.iter().find(|b| !b.is_ascii_uppercase()) {
            return Err(Error::InvalidSymbol(b as char));
        }
        let distinct: BTreeSet<u8> = symbols.iter().copied().collect();
        if distinct.len() < 2 {
            return Err(Error::TrivialWord(String::from_utf8_lossy(&symbols).into_owned()));
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ASCII")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct letters in increasing order.
    pub fn alphabet(&self) -> Vec<u8> {
        let set: BTreeSet<u8> = self.0.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.as_str())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::new(s)
    }
}

fn is_palindrome(s: &[u8]) -> bool {
    s.iter().eq(s.iter().rev())
}

fn reversed(s: &[u8]) -> Vec<u8> {
    s.iter().rev().copied().collect()
}

/// Lengths describing how a word overlaps itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordProfile {
    pub length: usize,
    /// Longest palindromic prefix.
    pub palindrome_prefix: usize,
    /// Longest palindromic suffix.
    pub palindrome_suffix: usize,
    /// Longest proper prefix that is also a suffix.
    pub border: usize,
}

pub fn profile(word: &Word) -> WordProfile {
    let s = word.symbols();
    let l = s.len();
    let palindrome_prefix = (1..=l).rev().find(|&k| is_palindrome(&s[..k])).unwrap_or(0);
    let palindrome_suffix = (1..=l).rev().find(|&k| is_palindrome(&s[l - k..])).unwrap_or(0);
    let border = (0..l).rev().find(|&k| s[..k] == s[l - k..]).unwrap_or(0);
    WordProfile { length: l, palindrome_prefix, palindrome_suffix, border }
}

fn frac(numer: usize, denom: usize) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Maximum concentration of `word` over one-dimensional grids.
pub fn c1(word: &Word) -> Rational {
    let p = profile(word);
    let period = p.length - p.border;
    if word.is_palindrome() {
        return frac(2, period);
    }
    let rep = frac(1, period);
    let pal = frac(2, 2 * p.length - p.palindrome_prefix - p.palindrome_suffix);
    rep.max(pal)
}

/// One-dimensional grid spelling the shortest period of `word`.
pub fn construct_rep(word: &Word) -> Grid {
    let p = profile(word);
    grid_of(&word.symbols()[..p.length - p.border])
}

fn pal_block(word: &Word, p: &WordProfile) -> Vec<u8> {
    let s = word.symbols();
    let mut block = s[..p.length - p.palindrome_suffix].to_vec();
    block.extend(s[p.palindrome_prefix..].iter().rev());
    block
}

/// One-dimensional grid on which `word` is read forwards then backwards,
/// overlapping in its palindromic prefix and suffix. Palindromes have no
/// such grid.
pub fn construct_pal(word: &Word) -> Result<Grid> {
    if word.is_palindrome() {
        return Err(Error::Degenerate(format!(
            "`{word}` is a palindrome, so the overlap construction is empty"
        )));
    }
    Ok(grid_of(&pal_block(word, &profile(word))))
}

fn grid_of(symbols: &[u8]) -> Grid {
    Grid::line(std::str::from_utf8(symbols).expect("ASCII")).expect("nonempty block of letters")
}

/// The two interchangeable blocks of the tied case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedFamily {
    /// Decomposition `head . middle . tail . rev(middle) . head . middle`
    /// of the analyzed word.
    pub head: Vec<u8>,
    pub middle: Vec<u8>,
    pub tail: Vec<u8>,
    /// Whether the decomposition is of the reversed word.
    pub reversed: bool,
    pub block: Vec<u8>,
    pub alt_block: Vec<u8>,
}

impl MixedFamily {
    /// Grid built by concatenating `block` (false) or `alt_block` (true).
    pub fn grid(&self, choice: &[bool]) -> Grid {
        let mut cells = Vec::new();
        for &alt in choice {
            cells.extend(if alt { &self.alt_block } else { &self.block });
        }
        grid_of(&cells)
    }

    /// All `2^m` grids with `m` blocks.
    pub fn grids(&self, blocks: usize) -> impl Iterator<Item = Grid> + '_ {
        (0..1u64 << blocks).map(move |mask| {
            let choice: Vec<bool> = (0..blocks).map(|i| mask >> (blocks - 1 - i) & 1 == 1).collect();
            self.grid(&choice)
        })
    }
}

/// Which constructions reach the one-dimensional maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremalClass {
    /// Only the periodic grid spelling `block`.
    RepOnly {
        block: Vec<u8>,
    },
    /// Only the forwards-backwards grid spelling `block`.
    PalOnly {
        block: Vec<u8>,
    },
    Mixed(MixedFamily),
}

impl ExtremalClass {
    /// A representative extremal grid.
    pub fn representative(&self) -> Grid {
        match self {
            ExtremalClass::RepOnly { block } | ExtremalClass::PalOnly { block } => grid_of(block),
            ExtremalClass::Mixed(family) => grid_of(&family.block),
        }
    }
}

pub fn classify_extremal(word: &Word) -> ExtremalClass {
    let p = profile(word);
    if word.is_palindrome() {
        return ExtremalClass::RepOnly { block: word.symbols()[..p.length - p.border].to_vec() };
    }
    let tie = p.palindrome_prefix + p.palindrome_suffix;
    if tie < 2 * p.border {
        ExtremalClass::RepOnly { block: word.symbols()[..p.length - p.border].to_vec() }
    } else if tie > 2 * p.border {
        ExtremalClass::PalOnly { block: pal_block(word, &p) }
    } else if p.palindrome_prefix <= p.palindrome_suffix {
        ExtremalClass::Mixed(mixed_family(word.symbols(), &p, false))
    } else {
        let rev = word.reversed();
        ExtremalClass::Mixed(mixed_family(rev.symbols(), &profile(&rev), true))
    }
}

fn mixed_family(s: &[u8], p: &WordProfile, reversed_word: bool) -> MixedFamily {
    let x = s[..p.palindrome_prefix].to_vec();
    let y = s[p.palindrome_prefix..p.border].to_vec();
    let tail_len = p.length - 2 * x.len() - 3 * y.len();
    let z = s[p.border..p.border + tail_len].to_vec();
    let mut block = x.clone();
    block.extend(&y);
    let mut alt = block.clone();
    block.extend(&z);
    block.extend(y.iter().rev());
    alt.extend(z.iter().rev());
    alt.extend(y.iter().rev());
    if reversed_word {
        block = reversed(&block);
        alt = reversed(&alt);
    }
    MixedFamily { head: x, middle: y, tail: z, reversed: reversed_word, block, alt_block: alt }
}

/// Letter distribution of the extremal grids. In the tied case both blocks
/// are rearrangements of each other, so the distribution is well defined.
pub fn canonical_distribution(word: &Word) -> LetterDistribution {
    classify_extremal(word).representative().letter_distribution()
}

/// `(1/2) * sum |a(x) - b(x)|` over the union of supports.
pub fn total_variation(a: &LetterDistribution, b: &LetterDistribution) -> Rational {
    let keys: BTreeSet<u8> = a.keys().chain(b.keys()).copied().collect();
    let zero = Rational::zero();
    let sum = keys.into_iter().fold(Rational::zero(), |acc, k| {
        acc + (a.get(&k).unwrap_or(&zero) - b.get(&k).unwrap_or(&zero)).abs()
    });
    sum / Rational::from_integer(BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// Relative gap `1 - c(w, g) / c1(w)`.
    pub delta: Rational,
    /// Distance between the grid's letters and the extremal letters.
    pub tv: Rational,
    pub holds: bool,
}

/// Compares a one-dimensional grid against the extremal letter distribution.
pub fn stability_gap(word: &Word, grid: &Grid) -> Result<StabilityReport> {
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    let delta = Rational::one() - grid.concentration(word) / c1(word);
    let tv = total_variation(&grid.letter_distribution(), &canonical_distribution(word));
    let holds = tv <= delta;
    Ok(StabilityReport { delta, tv, holds })
}
