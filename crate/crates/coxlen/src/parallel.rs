//! Multi-threaded deletion-set search.
//!
//! Each worker scans the candidates with one fixed largest position. Taking
//! the hit with the least such position gives the same colex-least witness as
//! the sequential search, whatever the schedule.

use coxlen_core::reflength::{self, DeletionSearch, DeletionSet, Oracle, ReflectionLength, ScanMode};
use coxlen_core::{CoxeterSystem, Error, Result, SearchLimits, Word};
use rayon::prelude::*;

/// Search limits plus the worker pool they run on.
#[derive(Debug)]
pub struct Engine {
    pool: rayon::ThreadPool,
    limits: SearchLimits,
}

impl Engine {
    pub fn new(limits: SearchLimits, threads: usize) -> std::result::Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build()?;
        Ok(Engine { pool, limits })
    }

    pub fn limits(&self) -> &SearchLimits {
        &self.limits
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Same contract as [`reflength::reflection_length_with`].
    pub fn reflection_length(&self, w: &Word, sys: &CoxeterSystem, oracle: Oracle) -> Result<ReflectionLength> {
        if oracle == Oracle::Both {
            let by_matrix = self.reflection_length(w, sys, Oracle::Matrix)?;
            let by_rewriting = self.reflection_length(w, sys, Oracle::Tits)?;
            if by_matrix.length != by_rewriting.length || by_matrix.witness != by_rewriting.witness {
                return Err(Error::OracleDisagreement);
            }
            return Ok(ReflectionLength {
                subsets_tested: by_matrix.subsets_tested + by_rewriting.subsets_tested,
                orbit_states: by_matrix.orbit_states + by_rewriting.orbit_states,
                ..by_matrix
            });
        }
        let (reduced, orbit_states) = reflength::reduce_for_search(w, sys, &self.limits)?;
        let search = DeletionSearch::new(reduced, sys, oracle, &self.limits)?;
        let p = search.len();
        for q in (p % 2..=p).step_by(2) {
            if let Some(witness) = self.first(&search, q)? {
                return Ok(ReflectionLength {
                    length: witness.len(),
                    subsets_tested: search.subsets_tested(),
                    reduced: search.word().clone(),
                    witness,
                    orbit_states,
                });
            }
        }
        unreachable!("the full deletion set was rejected")
    }

    /// Every deletion set of size `q` for the reduced form of `w`, in colex
    /// order, with the number of candidates tested.
    pub fn deletion_sets(&self, w: &Word, sys: &CoxeterSystem, q: usize) -> Result<(Word, Vec<DeletionSet>, u64)> {
        let (reduced, _) = reflength::reduce_for_search(w, sys, &self.limits)?;
        let search = DeletionSearch::new(reduced, sys, Oracle::Matrix, &self.limits)?;
        let sets = if q == 0 || q > search.len() || self.threads() == 1 {
            search.search(q, ScanMode::All)?
        } else {
            let per_top: Vec<Result<Vec<DeletionSet>>> = self.pool.install(|| {
                (q - 1..search.len()).into_par_iter().map(|top| search.scan_top(q, top, ScanMode::All)).collect()
            });
            let mut sets = Vec::new();
            for hits in per_top {
                sets.extend(hits?);
            }
            sets
        };
        Ok((search.word().clone(), sets, search.subsets_tested()))
    }

    fn first(&self, search: &DeletionSearch, q: usize) -> Result<Option<DeletionSet>> {
        if q == 0 || self.threads() == 1 {
            return Ok(search.search(q, ScanMode::First)?.into_iter().next());
        }
        let found = self.pool.install(|| {
            (q - 1..search.len()).into_par_iter().find_map_first(|top| match search.scan_top(q, top, ScanMode::First) {
                Ok(hits) => hits.into_iter().next().map(Ok),
                Err(e) => Some(Err(e)),
            })
        });
        found.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let limits = SearchLimits::default();
        let sys: CoxeterSystem = "triangle:3:3:4".parse().unwrap();
        let engine = Engine::new(limits, 4).unwrap();
        for lambda in 1..=6 {
            let w = Word::coxeter_power(&sys, lambda, 1).unwrap();
            let seq = reflength::reflection_length(&w, &sys, &limits).unwrap();
            let par = engine.reflection_length(&w, &sys, Oracle::Matrix).unwrap();
            assert_eq!((seq.length, &seq.witness), (par.length, &par.witness));
        }
        let s34 = CoxeterSystem::single(3, 4).unwrap();
        let w = Word::coxeter_power(&s34, 5, 2).unwrap();
        let (_, seq) = reflength::all_deletion_sets(&w, &s34, 5, &limits).unwrap();
        let (_, par, _) = engine.deletion_sets(&w, &s34, 5).unwrap();
        assert_eq!(seq, par);
        assert!(par.len() >= 2);
    }

    #[test]
    fn budget_is_enforced_in_parallel() {
        let limits = SearchLimits { max_subsets: 10, ..SearchLimits::default() };
        let sys: CoxeterSystem = "triangle:3:3:4".parse().unwrap();
        let engine = Engine::new(limits, 4).unwrap();
        let w = Word::coxeter_power(&sys, 6, 0).unwrap();
        let err = engine.reflection_length(&w, &sys, Oracle::Matrix).unwrap_err();
        assert!(err.is_budget());
    }
}
