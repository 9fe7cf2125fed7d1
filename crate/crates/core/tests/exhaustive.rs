//! Checks over every word up to a fixed length.

use coxlen_core::reflength::{self, Oracle};
use coxlen_core::rewriting;
use coxlen_core::{geom, CoxeterSystem, Error, SearchLimits, Word};

fn limits() -> SearchLimits {
    SearchLimits::default()
}

/// Every word of length `0..=max_len` over `rank` letters.
fn all_words(rank: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let total = rank.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut letters = vec![0u8; len];
            for slot in letters.iter_mut() {
                *slot = (code % rank) as u8;
                code /= rank;
            }
            Word::from_letters(letters)
        })
    })
}

/// Only adjacent-distinct words; the others reduce to shorter ones.
fn free_words(rank: usize, max_len: usize) -> impl Iterator<Item = Word> {
    all_words(rank, max_len).filter(|w| w.windows(2).all(|p| p[0] != p[1]))
}

#[test]
fn matrix_and_rewriting_agree_up_to_length_ten() {
    for spec in ["triangle:3:3:4", "single:3:3", "universal:3", "triangle:4:2:4", "single:2:6", "single:3:5", "single:2:7"] {
        let sys: CoxeterSystem = spec.parse().unwrap();
        let rep = geom::build_representation(&sys);
        let (mut checked, mut inconclusive) = (0usize, 0usize);
        for w in all_words(sys.rank(), 10) {
            let by_rewriting = rewriting::is_identity(&w, &sys, &limits()).unwrap();
            match rep.is_identity(w.letters()) {
                Ok(by_matrix) => assert_eq!(by_matrix, by_rewriting, "{spec}: {w}"),
                Err(Error::PrecisionInconclusive) => {
                    assert!(!rep.is_exact(), "{spec}: exact arithmetic was inconclusive on {w}");
                    inconclusive += 1;
                }
                Err(e) => panic!("{spec}: {w}: {e}"),
            }
            checked += 1;
        }
        assert!(inconclusive * 100 <= checked, "{spec}: {inconclusive} of {checked} inconclusive");
    }
}

#[test]
fn identity_words_with_braid_moves_contain_a_relation() {
    for spec in ["single:2:2", "single:2:3", "single:2:4", "single:2:5", "single:2:6", "triangle:3:3:4", "triangle:2:3:3", "single:3:3"] {
        let sys: CoxeterSystem = spec.parse().unwrap();
        let m12 = sys.finite_label(0, 1).unwrap() as usize;
        let max_len = (2 * m12 + 4).min(if sys.rank() == 3 { 10 } else { 14 });
        let mut identities = 0;
        for w in all_words(sys.rank(), max_len) {
            if !rewriting::is_identity(&w, &sys, &limits()).unwrap() {
                continue;
            }
            identities += 1;
            let braids = rewriting::minimal_braid_moves_to_identity(&w, &sys, &limits()).unwrap();
            if braids >= 1 {
                assert!(rewriting::contains_braid_power_subword(&w, &sys).is_some(), "{spec}: {w}");
            }
        }
        assert!(identities > 1, "{spec}");
    }
}

#[test]
fn tits_and_matrix_searches_agree() {
    for spec in ["triangle:3:3:4", "single:3:4", "single:3:5", "triangle:4:2:4", "universal:3"] {
        let sys: CoxeterSystem = spec.parse().unwrap();
        for w in free_words(sys.rank(), 8) {
            let res = reflength::reflection_length_with(&w, &sys, &limits(), Oracle::Both).unwrap();
            assert!(reflength::is_deletion_set(&res.reduced, &res.witness, &sys, &limits()).unwrap(), "{spec}: {w}");
        }
    }
}

#[test]
fn every_witness_passes_after_dyer() {
    for spec in ["triangle:3:3:4", "single:3:3", "single:4:3"] {
        let sys: CoxeterSystem = spec.parse().unwrap();
        let max_len = if sys.rank() == 3 { 8 } else { 6 };
        for w in free_words(sys.rank(), max_len) {
            let res = reflength::reflection_length(&w, &sys, &limits()).unwrap();
            assert!(reflength::verify_after_dyer(&res.reduced, &res.witness, &sys, &limits()).unwrap(), "{spec}: {w}");
        }
    }
}
