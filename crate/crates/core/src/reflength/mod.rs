//! Reflection length by Dyer's deletion characterization: for a reduced word
//! `u_1⋯u_p`, `l_R` is the least number of letters whose deletion leaves a
//! word representing the identity.

mod palindrome;
mod search;
mod universal;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use palindrome::{
    generate_twisted_palindrome_decompositions, generate_twisted_palindromes, is_twisted_palindrome,
    verify_middle_deletion, PairKind, PalindromePair, TwistedPalindrome,
};
pub use search::{DeletionSearch, ScanMode};
pub use universal::universal_reflection_length;

use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::rewriting;
use crate::rng::Lcg64;
use crate::system::CoxeterSystem;
use crate::word::Word;

/// Ascending positions into a specific word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeletionSet(Vec<usize>);

impl DeletionSet {
    /// Sorts and deduplicates `positions`.
    pub fn from_unsorted(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        DeletionSet(positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Colex comparison key: positions from the largest down.
    pub fn colex_key(&self) -> impl Ord + '_ {
        (self.0.len(), self.0.iter().rev().collect::<Vec<_>>())
    }
}

impl fmt::Display for DeletionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// How identity is decided inside the deletion search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Oracle {
    /// Rewriting on every candidate deletion.
    Tits,
    /// Geometric representation, with rewriting where floats are ambiguous.
    #[default]
    Matrix,
    /// Both searches independently; they must agree.
    Both,
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tits" => Ok(Oracle::Tits),
            "matrix" => Ok(Oracle::Matrix),
            "both" => Ok(Oracle::Both),
            _ => Err(Error::Malformed(alloc::format!("unknown oracle {s:?}"))),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::Tits => "tits",
            Oracle::Matrix => "matrix",
            Oracle::Both => "both",
        })
    }
}

/// Result of [`reflection_length`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionLength {
    pub length: usize,
    /// The reduced word the witness indexes.
    pub reduced: Word,
    /// Colex-least deletion set of minimal size.
    pub witness: DeletionSet,
    pub subsets_tested: u64,
    pub orbit_states: usize,
}

/// A reduced word for `w` and the number of orbit states visited finding it.
pub fn reduce_for_search(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<(Word, usize)> {
    w.validate(sys)?;
    if sys.is_universal() {
        return Ok((rewriting::free_reduce(w), 0));
    }
    let red = rewriting::reduce(w, sys, limits)?;
    Ok((red.word, red.orbit_states))
}

/// Smallest `q` (stepping by two from the parity floor) with a deletion set,
/// and the colex-least such set.
pub fn minimal_deletion_set(search: &DeletionSearch) -> Result<DeletionSet> {
    let p = search.len();
    for q in (p % 2..=p).step_by(2) {
        if let Some(hit) = search.search(q, ScanMode::First)?.into_iter().next() {
            return Ok(hit);
        }
    }
    // Deleting every letter always works, so the loop returns for q = p.
    unreachable!("the full deletion set was rejected")
}

/// Reflection length of the element represented by `w`, using the matrix
/// oracle.
pub fn reflection_length(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<ReflectionLength> {
    reflection_length_with(w, sys, limits, Oracle::Matrix)
}

/// [`reflection_length`] with an explicit oracle.
pub fn reflection_length_with(
    w: &Word,
    sys: &CoxeterSystem,
    limits: &SearchLimits,
    oracle: Oracle,
) -> Result<ReflectionLength> {
    if oracle == Oracle::Both {
        let by_matrix = reflection_length_with(w, sys, limits, Oracle::Matrix)?;
        let by_rewriting = reflection_length_with(w, sys, limits, Oracle::Tits)?;
        if by_matrix.length != by_rewriting.length || by_matrix.witness != by_rewriting.witness {
            return Err(Error::OracleDisagreement);
        }
        return Ok(ReflectionLength {
            subsets_tested: by_matrix.subsets_tested + by_rewriting.subsets_tested,
            orbit_states: by_matrix.orbit_states + by_rewriting.orbit_states,
            ..by_matrix
        });
    }
    let (reduced, orbit_states) = reduce_for_search(w, sys, limits)?;
    let search = DeletionSearch::new(reduced, sys, oracle, limits)?;
    let witness = minimal_deletion_set(&search)?;
    Ok(ReflectionLength {
        length: witness.len(),
        subsets_tested: search.subsets_tested(),
        reduced: search.word().clone(),
        witness,
        orbit_states,
    })
}

/// Every deletion set of size `q` for the reduced form of `w`, in colex
/// order.
pub fn all_deletion_sets(
    w: &Word,
    sys: &CoxeterSystem,
    q: usize,
    limits: &SearchLimits,
) -> Result<(Word, Vec<DeletionSet>)> {
    let (reduced, _) = reduce_for_search(w, sys, limits)?;
    let search = DeletionSearch::new(reduced, sys, Oracle::Matrix, limits)?;
    let sets = search.search(q, ScanMode::All)?;
    Ok((search.word().clone(), sets))
}

/// Whether deleting `d` from `w` leaves a word representing the identity.
pub fn is_deletion_set(w: &Word, d: &DeletionSet, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<bool> {
    if d.positions().last().is_some_and(|&p| p >= w.len()) {
        return Ok(false);
    }
    let rest = w.without_positions(d.positions());
    if sys.is_universal() {
        return Ok(rewriting::free_reduce(&rest).is_empty());
    }
    rewriting::is_identity(&rest, sys, limits)
}

/// The reflection `u_1⋯u_{i−1} u_i u_{i−1}⋯u_1` for 0-based position `i`.
pub fn position_reflection(w: &Word, i: usize) -> Word {
    let mut letters = w[..=i].to_vec();
    letters.extend(w[..i].iter().rev());
    Word::from_letters(letters)
}

/// The reflections `r_i` for `i ∈ d`, listed by ascending position. Their
/// product in descending order, `r_{i_q}⋯r_{i_1}`, equals `w`.
pub fn reflection_factorization(
    w: &Word,
    d: &DeletionSet,
    sys: &CoxeterSystem,
    limits: &SearchLimits,
) -> Result<Vec<Word>> {
    w.validate(sys)?;
    if !is_deletion_set(w, d, sys, limits)? {
        return Err(Error::NotADeletionSet);
    }
    Ok(d.positions().iter().map(|&i| position_reflection(w, i)).collect())
}

/// Concatenation `r_{i_q}⋯r_{i_1}` of a factorization listed by ascending
/// position.
pub fn factorization_product(reflections: &[Word]) -> Word {
    Word::from_letters(reflections.iter().rev().flat_map(|r| r.iter().copied()).collect())
}

/// Whether `factors` are reflections whose product, left to right, is the
/// element of `w`.
pub fn verify_factorization(
    w: &Word,
    factors: &[Word],
    sys: &CoxeterSystem,
    limits: &SearchLimits,
) -> Result<bool> {
    if !factors.iter().all(|r| r.len() % 2 == 1 && r.is_palindrome()) {
        return Ok(false);
    }
    let product = Word::from_letters(factors.iter().flat_map(|r| r.iter().copied()).collect());
    rewriting::is_identity(&product.concat(&w.inverse()), sys, limits)
}

/// Checks that every proper subset `N` of the deletion set `d` leaves a word
/// of reflection length `|d| − |N|`.
///
/// All subsets are checked when `|d| ≤ limits.after_dyer_max`; otherwise
/// `2^after_dyer_max` subsets are sampled with a fixed seed.
pub fn verify_after_dyer(w: &Word, d: &DeletionSet, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<bool> {
    if !is_deletion_set(w, d, sys, limits)? {
        return Err(Error::NotADeletionSet);
    }
    let q = d.len();
    let check = |mask: u64| -> Result<bool> {
        let removed: Vec<usize> = (0..q).filter(|b| mask >> b & 1 == 1).map(|b| d.positions()[b]).collect();
        let rest = w.without_positions(&removed);
        Ok(reflection_length(&rest, sys, limits)?.length == q - removed.len())
    };
    if q <= limits.after_dyer_max && q < 64 {
        for mask in 0..(1u64 << q) - 1 {
            if !check(mask)? {
                return Ok(false);
            }
        }
    } else {
        let mut rng = Lcg64::new(q as u64);
        let samples = 1u64 << limits.after_dyer_max.min(20);
        for _ in 0..samples {
            let mut mask = 0u64;
            for b in 0..q.min(64) {
                if rng.coin() {
                    mask |= 1 << b;
                }
            }
            let full = if q >= 64 { u64::MAX } else { (1u64 << q) - 1 };
            if mask == full {
                continue;
            }
            if !check(mask)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ingredients and value of the lower bound `l_Rn(s) − 2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    /// Reflection length of `s` read in the universal group.
    pub universal_length: usize,
    /// Fewest braid-moves taking `s` with `d` deleted to the empty word.
    pub braid_moves: usize,
    pub bound: i64,
}

/// The lower bound for the word `s` (taken as given) and its deletion set
/// `d`.
pub fn lower_bound_theorem2(
    s: &Word,
    sys: &CoxeterSystem,
    d: &DeletionSet,
    limits: &SearchLimits,
) -> Result<LowerBound> {
    s.validate(sys)?;
    if !is_deletion_set(s, d, sys, limits)? {
        return Err(Error::NotADeletionSet);
    }
    let universal_length = universal_reflection_length(s);
    let braid_moves = rewriting::minimal_braid_moves_to_identity(&s.without_positions(d.positions()), sys, limits)?;
    Ok(LowerBound {
        universal_length,
        braid_moves,
        bound: universal_length as i64 - 2 * braid_moves as i64,
    })
}

/// Outcome of [`equality_criterion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityReport {
    /// No reduced expression of the element contains a relation subword.
    pub criterion: bool,
    /// `(l_R, l_Rn)` of the reduced word, computed when the criterion holds.
    pub lengths: Option<(usize, usize)>,
}

impl EqualityReport {
    /// False only if the criterion holds and the two lengths differ.
    pub fn consistent(&self) -> bool {
        self.lengths.map_or(true, |(a, b)| a == b)
    }
}

/// Tests the relation-subword criterion on the reduced form of `w`; when it
/// holds, also computes both lengths, which must agree.
pub fn equality_criterion(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<EqualityReport> {
    let (reduced, _) = reduce_for_search(w, sys, limits)?;
    let criterion = !rewriting::orbit_has_relation_subword(&reduced, sys, limits)?;
    let lengths = if criterion {
        let l_r = reflection_length(&reduced, sys, limits)?.length;
        Some((l_r, universal_reflection_length(&reduced)))
    } else {
        None
    };
    Ok(EqualityReport { criterion, lengths })
}

/// Outcome of [`conjecture_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub verdict: bool,
    /// Positions whose deletion lowers both lengths by exactly one.
    pub witnesses: Vec<usize>,
    pub reflection_length: usize,
    pub universal_length: usize,
    /// Whether the scanned word is reduced in `sys`.
    pub reduced: bool,
}

/// Scans every single-letter deletion of `w` (taken as given) for one that
/// lowers both `l_R` in `sys` and the universal length by exactly one.
pub fn conjecture_scan(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<ConjectureReport> {
    w.validate(sys)?;
    let reduced = rewriting::is_reduced(w, sys, limits)?;
    let l_r = reflection_length(w, sys, limits)?.length;
    let l_u = universal_reflection_length(w);
    let mut witnesses = Vec::new();
    for i in 0..w.len() {
        let rest = w.without_positions(&[i]);
        if universal_reflection_length(&rest) + 1 != l_u {
            continue;
        }
        if reflection_length(&rest, sys, limits)?.length + 1 == l_r {
            witnesses.push(i);
        }
    }
    Ok(ConjectureReport {
        verdict: !witnesses.is_empty(),
        witnesses,
        reflection_length: l_r,
        universal_length: l_u,
        reduced,
    })
}
