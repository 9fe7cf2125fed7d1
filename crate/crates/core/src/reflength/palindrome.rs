use alloc::vec::Vec;

use super::universal::universal_reflection_length;
use crate::error::{Error, Result};
use crate::rng::Lcg64;
use crate::word::Word;

/// Which of the two pair conditions a flanking pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// The right word is the reversal of the (reduced) left word.
    Reversal,
    /// The left word alternates two letters and has length at least 2; the
    /// right word is the letter swap of it for odd length, and the word
    /// itself for even length.
    Alternating,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PalindromePair {
    pub left: Word,
    pub right: Word,
    pub kind: PairKind,
}

fn has_adjacent_repeat(w: &[u8]) -> bool {
    w.windows(2).any(|p| p[0] == p[1])
}

/// The two letters of an alternating word `abab…` with `a ≠ b`.
fn alternating_letters(w: &[u8]) -> Option<(u8, u8)> {
    if w.len() < 2 || w[0] == w[1] {
        return None;
    }
    let (a, b) = (w[0], w[1]);
    w.iter()
        .enumerate()
        .all(|(k, &c)| c == if k % 2 == 0 { a } else { b })
        .then_some((a, b))
}

impl PalindromePair {
    /// The condition `(left, right)` satisfies, if any. The two are
    /// exclusive.
    pub fn classify(left: &[u8], right: &[u8]) -> Option<PairKind> {
        if left.is_empty() || left.len() != right.len() {
            return None;
        }
        if !has_adjacent_repeat(left) && left.iter().rev().eq(right.iter()) {
            return Some(PairKind::Reversal);
        }
        let (a, b) = alternating_letters(left)?;
        let expected_matches = if left.len() % 2 == 1 {
            left.iter()
                .map(|&c| if c == a { b } else { a })
                .eq(right.iter().copied())
        } else {
            left == right
        };
        expected_matches.then_some(PairKind::Alternating)
    }

    pub fn new(left: Word, right: Word) -> Option<Self> {
        let kind = Self::classify(&left, &right)?;
        Some(PalindromePair { left, right, kind })
    }
}

/// `s_1⋯s_k · s · s_{−k}⋯s_{−1}`, with `pairs[0] = (s_1, s_{−1})` outermost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedPalindrome {
    pub center: u8,
    pub pairs: Vec<PalindromePair>,
}

impl TwistedPalindrome {
    pub fn word(&self) -> Word {
        let mut letters = Vec::new();
        for p in &self.pairs {
            letters.extend_from_slice(&p.left);
        }
        letters.push(self.center);
        for p in self.pairs.iter().rev() {
            letters.extend_from_slice(&p.right);
        }
        Word::from_letters(letters)
    }

    /// Position of the center letter in [`TwistedPalindrome::word`].
    pub fn center_position(&self) -> usize {
        self.pairs.iter().map(|p| p.left.len()).sum()
    }
}

/// A decomposition of `w` as a twisted palindrome.
///
/// Pairs are peeled from the outside in, trying the longest reversal pair
/// first, then the longest alternating pair, and backtracking when the
/// remainder cannot be completed. Since both words of a pair have equal
/// length, the state is just the number of letters peeled from each end, so
/// failed states are memoized and the search is polynomial.
pub fn is_twisted_palindrome(w: &Word) -> Option<TwistedPalindrome> {
    if w.len() % 2 == 0 {
        return None;
    }
    let mut dead = alloc::vec![false; w.len() / 2 + 1];
    let mut pairs = Vec::new();
    if peel(w, 0, &mut dead, &mut pairs) {
        Some(TwistedPalindrome { center: w[w.len() / 2], pairs })
    } else {
        None
    }
}

fn peel(w: &[u8], lo: usize, dead: &mut [bool], pairs: &mut Vec<PalindromePair>) -> bool {
    let hi = w.len() - 1 - lo;
    if lo == hi {
        return true;
    }
    if dead[lo] {
        return false;
    }
    let max_len = (hi - lo) / 2;
    for wanted in [PairKind::Reversal, PairKind::Alternating] {
        for len in (1..=max_len).rev() {
            let left = &w[lo..lo + len];
            let right = &w[hi + 1 - len..=hi];
            if PalindromePair::classify(left, right) != Some(wanted) {
                continue;
            }
            pairs.push(PalindromePair {
                left: Word::from_letters(left.to_vec()),
                right: Word::from_letters(right.to_vec()),
                kind: wanted,
            });
            if peel(w, lo + len, dead, pairs) {
                return true;
            }
            pairs.pop();
        }
    }
    dead[lo] = true;
    false
}

/// Whether deleting the center letter lowers the universal reflection length
/// by exactly one.
pub fn verify_middle_deletion(tp: &TwistedPalindrome) -> bool {
    let w = tp.word();
    let full = universal_reflection_length(&w);
    let without = universal_reflection_length(&w.without_positions(&[tp.center_position()]));
    without + 1 == full
}

/// Seeded random twisted palindromes with `depth` pairs over `rank` letters,
/// built from the center outwards.
///
/// Each pair is a reversal pair (left word: random reduced word of length 1 to
/// 3) or an alternating pair (length 2 to 4) with equal probability. A draw
/// that would put two equal letters next to each other is redrawn, so every
/// assembled word is reduced in the universal group.
pub fn generate_twisted_palindrome_decompositions(
    rank: usize,
    depth: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<TwistedPalindrome>> {
    if !(2..=crate::system::MAX_RANK).contains(&rank) {
        return Err(Error::Parameter(alloc::format!("rank {rank} must be at least 2")));
    }
    let mut rng = Lcg64::new(seed);
    let n = rank as u32;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let center = rng.below(n) as u8;
        let mut first = center;
        let mut last = center;
        let mut inner: Vec<PalindromePair> = Vec::with_capacity(depth);
        for _ in 0..depth {
            let pair = loop {
                let pair = draw_pair(&mut rng, n);
                if *pair.left.last().unwrap() != first && pair.right[0] != last {
                    break pair;
                }
            };
            first = pair.left[0];
            last = *pair.right.last().unwrap();
            inner.push(pair);
        }
        inner.reverse();
        out.push(TwistedPalindrome { center, pairs: inner });
    }
    Ok(out)
}

/// [`generate_twisted_palindrome_decompositions`], assembled into words.
pub fn generate_twisted_palindromes(rank: usize, depth: usize, seed: u64, count: usize) -> Result<Vec<Word>> {
    Ok(generate_twisted_palindrome_decompositions(rank, depth, seed, count)?
        .iter()
        .map(TwistedPalindrome::word)
        .collect())
}

fn draw_pair(rng: &mut Lcg64, n: u32) -> PalindromePair {
    if rng.coin() {
        let len = rng.range_inclusive(1, 3) as usize;
        let mut left = Vec::with_capacity(len);
        for _ in 0..len {
            let next = loop {
                let c = rng.below(n) as u8;
                if left.last() != Some(&c) {
                    break c;
                }
            };
            left.push(next);
        }
        let right = left.iter().rev().copied().collect();
        PalindromePair {
            left: Word::from_letters(left),
            right: Word::from_letters(right),
            kind: PairKind::Reversal,
        }
    } else {
        let len = rng.range_inclusive(2, 4) as usize;
        let a = rng.below(n) as u8;
        let b = ((a as u32 + 1 + rng.below(n - 1)) % n) as u8;
        let left: Vec<u8> = (0..len).map(|k| if k % 2 == 0 { a } else { b }).collect();
        let right = if len % 2 == 1 {
            left.iter().map(|&c| if c == a { b } else { a }).collect()
        } else {
            left.clone()
        };
        PalindromePair {
            left: Word::from_letters(left),
            right: Word::from_letters(right),
            kind: PairKind::Alternating,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(letters: &[usize]) -> Word {
        Word::from_one_based(letters, 9).unwrap()
    }

    #[test]
    fn recognizes_examples() {
        let tp = is_twisted_palindrome(&w(&[1])).unwrap();
        assert_eq!((tp.center, tp.pairs.len()), (0, 0));

        let tp = is_twisted_palindrome(&w(&[2, 1, 2])).unwrap();
        assert_eq!(tp.center, 0);
        assert_eq!(tp.pairs, vec![PalindromePair { left: w(&[2]), right: w(&[2]), kind: PairKind::Reversal }]);

        let tp = is_twisted_palindrome(&w(&[1, 2, 1, 2, 3, 1, 2, 1, 2])).unwrap();
        assert_eq!(tp.center, 2);
        assert_eq!(tp.pairs.len(), 1);
        assert_eq!(tp.pairs[0].kind, PairKind::Alternating);
        assert!(verify_middle_deletion(&tp));

        assert!(is_twisted_palindrome(&w(&[1, 2, 3])).is_none());
        assert!(is_twisted_palindrome(&w(&[1, 2])).is_none());
    }

    #[test]
    fn pair_conditions_are_exclusive() {
        assert_eq!(PalindromePair::classify(&[0, 1, 0], &[0, 1, 0]), Some(PairKind::Reversal));
        assert_eq!(PalindromePair::classify(&[0, 1, 0], &[1, 0, 1]), Some(PairKind::Alternating));
        assert_eq!(PalindromePair::classify(&[0, 1], &[1, 0]), Some(PairKind::Reversal));
        assert_eq!(PalindromePair::classify(&[0, 1], &[0, 1]), Some(PairKind::Alternating));
        assert_eq!(PalindromePair::classify(&[0, 0], &[0, 0]), None);
    }

    #[test]
    fn reversal_pairs_of_any_length() {
        let word = w(&[1, 2, 1, 2, 3, 2, 1, 2, 1]);
        let tp = is_twisted_palindrome(&word).unwrap();
        assert_eq!(tp.word(), word);
        assert_eq!(tp.pairs.len(), 1);
        assert_eq!(tp.pairs[0].left.len(), 4);
    }

    #[test]
    fn middle_deletion_counterexample() {
        // (1 2, 1 2) alternating-even around (3 4 3, 4 3 4) alternating-odd,
        // center 1: deleting the center raises the universal length.
        let tp = TwistedPalindrome {
            center: 0,
            pairs: vec![
                PalindromePair::new(w(&[1, 2]), w(&[1, 2])).unwrap(),
                PalindromePair::new(w(&[3, 4, 3]), w(&[4, 3, 4])).unwrap(),
            ],
        };
        let word = tp.word();
        assert_eq!(word, w(&[1, 2, 3, 4, 3, 1, 4, 3, 4, 1, 2]));
        assert_eq!(universal_reflection_length(&word), 3);
        assert_eq!(universal_reflection_length(&word.without_positions(&[5])), 4);
        assert!(!verify_middle_deletion(&tp));
    }

    #[test]
    fn generator_is_deterministic_and_well_formed() {
        let a = generate_twisted_palindromes(3, 3, 42, 50).unwrap();
        let b = generate_twisted_palindromes(3, 3, 42, 50).unwrap();
        assert_eq!(a, b);
        for tp in generate_twisted_palindrome_decompositions(4, 4, 7, 200).unwrap() {
            let word = tp.word();
            assert_eq!(word.len() % 2, 1);
            assert!(!has_adjacent_repeat(&word));
            for p in &tp.pairs {
                assert_eq!(PalindromePair::classify(&p.left, &p.right), Some(p.kind));
            }
            assert!(is_twisted_palindrome(&word).is_some());
        }
        for word in generate_twisted_palindromes(3, 0, 1, 10).unwrap() {
            assert_eq!(word.len(), 1);
        }
    }
}
