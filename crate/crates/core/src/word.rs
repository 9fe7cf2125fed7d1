use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

/// A word over the standard generators.
///
/// Letters are stored 0-based; `Display` and [`Word::parse`] use the 1-based
/// names `1..=n`. Ordering is shortlex (length first, then lexicographic by
/// generator index), so `min` over a set of words picks the shortlex-least.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Wraps 0-based letters without validation.
    pub fn from_letters(letters: Vec<u8>) -> Word {
        Word(letters)
    }

    /// Builds a word from 1-based generator indices, checking them against
    /// `rank`.
    pub fn from_one_based(indices: &[usize], rank: usize) -> Result<Word> {
        indices
            .iter()
            .map(|&i| {
                if i == 0 || i > rank {
                    Err(Error::GeneratorOutOfRange { index: i, rank })
                } else {
                    Ok((i - 1) as u8)
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    /// Parses whitespace-separated generator tokens, either bare decimal
    /// indices (`1 2 3`) or `s`-prefixed ones (`s1 s2 s3`). Empty input is the
    /// empty word.
    pub fn parse(text: &str, sys: &CoxeterSystem) -> Result<Word> {
        let mut indices = Vec::new();
        for token in text.split_whitespace() {
            let digits = token
                .strip_prefix('s')
                .or_else(|| token.strip_prefix('S'))
                .unwrap_or(token);
            let index: usize = digits
                .parse()
                .map_err(|_| Error::Malformed(format!("bad generator token {token:?}")))?;
            indices.push(index);
        }
        Word::from_one_based(&indices, sys.rank())
    }

    /// `(s_1 ⋯ s_n)^λ s_1 ⋯ s_r`.
    pub fn coxeter_power(sys: &CoxeterSystem, lambda: usize, r: usize) -> Result<Word> {
        Word::coxeter_power_rank(sys.rank(), lambda, r)
    }

    /// [`Word::coxeter_power`] for a bare rank.
    pub fn coxeter_power_rank(rank: usize, lambda: usize, r: usize) -> Result<Word> {
        if r > rank {
            return Err(Error::Parameter(format!("suffix length {r} exceeds rank {rank}")));
        }
        let letters = (0..lambda)
            .flat_map(|_| 0..rank)
            .chain(0..r)
            .map(|i| i as u8)
            .collect();
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    /// Checks every letter against `sys`.
    pub fn validate(&self, sys: &CoxeterSystem) -> Result<()> {
        match self.0.iter().find(|&&a| a as usize >= sys.rank()) {
            Some(&a) => Err(Error::GeneratorOutOfRange {
                index: a as usize + 1,
                rank: sys.rank(),
            }),
            None => Ok(()),
        }
    }

    /// The word read backwards, which represents the inverse element.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The word with the letters at `positions` removed. Positions outside
    /// the word are ignored.
    pub fn without_positions(&self, positions: &[usize]) -> Word {
        let mut drop = alloc::vec![false; self.0.len()];
        for &p in positions {
            if p < drop.len() {
                drop[p] = true;
            }
        }
        Word(
            self.0
                .iter()
                .zip(&drop)
                .filter(|(_, &d)| !d)
                .map(|(&a, _)| a)
                .collect(),
        )
    }

    /// Occurrences of each generator, indexed 0-based.
    pub fn letter_counts(&self, rank: usize) -> Vec<usize> {
        let mut counts = alloc::vec![0; rank];
        for &a in &self.0 {
            counts[a as usize] += 1;
        }
        counts
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Word {
        Word(letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", a as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sys(n: usize) -> CoxeterSystem {
        CoxeterSystem::universal(n).unwrap()
    }

    #[test]
    fn parses_plain_and_prefixed_tokens() {
        let w = Word::parse("1 2 3 1 2 3", &sys(3)).unwrap();
        assert_eq!(w.letters(), &[0, 1, 2, 0, 1, 2]);
        let w = Word::parse("s1 s2 s1", &sys(2)).unwrap();
        assert_eq!(w.letters(), &[0, 1, 0]);
        assert!(Word::parse("   ", &sys(2)).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_tokens() {
        assert_eq!(
            Word::parse("4", &sys(3)),
            Err(Error::GeneratorOutOfRange { index: 4, rank: 3 })
        );
        assert!(matches!(Word::parse("0", &sys(3)), Err(Error::GeneratorOutOfRange { .. })));
        assert!(matches!(Word::parse("x1", &sys(3)), Err(Error::Malformed(_))));
    }

    #[test]
    fn coxeter_powers() {
        let w = Word::coxeter_power(&sys(3), 2, 0).unwrap();
        assert_eq!(w.to_string(), "1 2 3 1 2 3");
        let w = Word::coxeter_power(&sys(3), 0, 2).unwrap();
        assert_eq!(w.to_string(), "1 2");
        let w = Word::coxeter_power(&sys(4), 1, 4).unwrap();
        assert_eq!(w.to_string(), "1 2 3 4 1 2 3 4");
        assert!(Word::coxeter_power(&sys(3), 1, 4).is_err());
    }

    #[test]
    fn shortlex_order() {
        let a = Word::from_letters(alloc::vec![1, 0]);
        let b = Word::from_letters(alloc::vec![0, 1, 0]);
        let c = Word::from_letters(alloc::vec![0, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn deletion_and_inverse() {
        let w = Word::from_letters(alloc::vec![0, 1, 2, 3]);
        assert_eq!(w.without_positions(&[1, 3]).letters(), &[0, 2]);
        assert_eq!(w.inverse().letters(), &[3, 2, 1, 0]);
    }
}
