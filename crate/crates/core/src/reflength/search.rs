//! Colex enumeration of deletion sets.
//!
//! For a word `u_1⋯u_p` with prefixes `P_i = u_1⋯u_i`, put
//! `r_i = P_{i−1} u_i P_{i−1}^{-1}`. Deleting positions `i_1 < ⋯ < i_q` leaves
//! the element `r_{i_1}⋯r_{i_q}·w`, so the deletion yields the identity iff
//! `r_{i_1}⋯r_{i_q} = w^{-1}`.
//!
//! The search fixes `i_q` first and descends, carrying
//! `Z = w^{-1}·r_{i_q}⋯r_{i_k}`; one matrix product per internal node. At the
//! last level `Z` must equal a single `r_{i_1}` with `i_1 < i_2`, which the
//! exact kernel answers with one hash lookup. Iterating every level in
//! ascending order visits subsets in colex order, so the first hit is the
//! colex-least.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use hashbrown::HashMap;
use num_bigint::BigInt;

use super::{DeletionSet, Oracle};
use crate::error::{Error, Result};
use crate::geom::{self, Approx, Closeness, ExactRing, FloatRep, GeneratorRows, Matrix, Quad, Representation, Ring};
use crate::limits::SearchLimits;
use crate::rewriting;
use crate::system::CoxeterSystem;
use crate::word::Word;

/// Whether a scan stops at its first hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    First,
    All,
}

enum Abort {
    Overflow,
    Fail(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Fail(e)
    }
}

type Step<T> = core::result::Result<T, Abort>;

struct ExactKernel<S> {
    reflections: Vec<Matrix<S>>,
    target: Matrix<S>,
    index: HashMap<Matrix<S>, Vec<usize>>,
}

impl<S: ExactRing> ExactKernel<S> {
    fn build(rows: &GeneratorRows<S>, letters: &[u8]) -> Option<Self> {
        let (reflections, target) = reflections_and_target(rows, letters)?;
        let mut index: HashMap<Matrix<S>, Vec<usize>> = HashMap::new();
        for (i, r) in reflections.iter().enumerate() {
            index.entry(r.clone()).or_default().push(i);
        }
        Some(ExactKernel { reflections, target, index })
    }
}

struct FloatKernel {
    reflections: Vec<Approx>,
    target: Approx,
}

impl FloatKernel {
    fn build(rep: &FloatRep, letters: &[u8]) -> Self {
        let n = rep.rows.rank();
        let mut prefix = Approx::identity(n);
        let mut prefix_inv = Approx::identity(n);
        let mut reflections = Vec::with_capacity(letters.len());
        for &a in letters {
            let a = a as usize;
            prefix.right_mul_generator(a, rep.rows.row(a), rep.row_error);
            reflections.push(prefix.mul(&prefix_inv));
            prefix_inv.left_mul_generator(a, rep.rows.row(a), rep.row_error);
        }
        FloatKernel { reflections, target: prefix_inv }
    }
}

/// `r_i` for every position, and `w^{-1}`.
fn reflections_and_target<S: Ring>(
    rows: &GeneratorRows<S>,
    letters: &[u8],
) -> Option<(Vec<Matrix<S>>, Matrix<S>)> {
    let n = rows.rank();
    let mut prefix = Matrix::identity(n);
    let mut prefix_inv = Matrix::identity(n);
    let mut reflections = Vec::with_capacity(letters.len());
    for &a in letters {
        let a = a as usize;
        prefix.right_mul_generator(a, rows.row(a))?;
        // r_i = P_i · P_{i−1}^{-1}
        reflections.push(prefix.checked_mul(&prefix_inv)?);
        prefix_inv.left_mul_generator(a, rows.row(a))?;
    }
    Some((reflections, prefix_inv))
}

enum Kernel {
    Exact {
        small: Option<ExactKernel<Quad<i128>>>,
        big: ExactKernel<Quad<BigInt>>,
    },
    Float(FloatKernel),
    Tits,
}

/// Budget shared by every scan of one query.
#[derive(Debug)]
struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn charge(&self, n: u64) -> Result<()> {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.limit {
            Err(Error::SubsetBudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Deletion-set search over one fixed word.
///
/// Shareable across threads: [`DeletionSearch::scan_top`] calls for distinct
/// top positions are independent and may run concurrently. Combining their
/// results by least top position reproduces the sequential colex order.
pub struct DeletionSearch {
    word: Word,
    sys: CoxeterSystem,
    limits: SearchLimits,
    kernel: Kernel,
    budget: Budget,
}

impl core::fmt::Debug for DeletionSearch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let kernel = match self.kernel {
            Kernel::Exact { .. } => "exact",
            Kernel::Float(_) => "float",
            Kernel::Tits => "rewriting",
        };
        f.debug_struct("DeletionSearch")
            .field("word", &self.word)
            .field("kernel", &kernel)
            .field("subsets_tested", &self.subsets_tested())
            .finish()
    }
}

impl DeletionSearch {
    /// Prepares the search. `Oracle::Both` is treated as `Oracle::Matrix`
    /// here; the cross-check happens one level up.
    pub fn new(word: Word, sys: &CoxeterSystem, oracle: Oracle, limits: &SearchLimits) -> Result<Self> {
        word.validate(sys)?;
        let kernel = match oracle {
            Oracle::Tits => Kernel::Tits,
            Oracle::Matrix | Oracle::Both => match geom::build_representation(sys) {
                Representation::Exact(rep) => Kernel::Exact {
                    small: ExactKernel::build(&rep.small, &word),
                    big: ExactKernel::build(&rep.big, &word).expect("bigint arithmetic"),
                },
                Representation::Float(rep) => Kernel::Float(FloatKernel::build(&rep, &word)),
            },
        };
        Ok(DeletionSearch {
            word,
            sys: sys.clone(),
            limits: *limits,
            kernel,
            budget: Budget { used: AtomicU64::new(0), limit: limits.max_subsets },
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Candidate subsets examined so far, across all scans.
    pub fn subsets_tested(&self) -> u64 {
        self.budget.used.load(Ordering::Relaxed)
    }

    /// Deletion sets of size `q` whose largest position is `top`, in colex
    /// order (just the first one in [`ScanMode::First`]).
    pub fn scan_top(&self, q: usize, top: usize, mode: ScanMode) -> Result<Vec<DeletionSet>> {
        assert!(q >= 1 && top < self.len() && top + 1 >= q, "top position out of range");
        let mut hits = Vec::new();
        let outcome = match &self.kernel {
            Kernel::Exact { small: Some(small), big } => {
                match self.run(ExactNode { kernel: small, z: small.target.clone() }, q, top, mode, &mut hits) {
                    Err(Abort::Overflow) => {
                        hits.clear();
                        self.run(ExactNode { kernel: big, z: big.target.clone() }, q, top, mode, &mut hits)
                    }
                    other => other,
                }
            }
            Kernel::Exact { small: None, big } => {
                self.run(ExactNode { kernel: big, z: big.target.clone() }, q, top, mode, &mut hits)
            }
            Kernel::Float(k) => self.run(FloatNode { search: self, kernel: k, z: k.target.clone() }, q, top, mode, &mut hits),
            Kernel::Tits => self.run(TitsNode { search: self }, q, top, mode, &mut hits),
        };
        match outcome {
            Ok(_) => Ok(hits),
            Err(Abort::Fail(e)) => Err(e),
            Err(Abort::Overflow) => unreachable!("bigint kernel cannot overflow"),
        }
    }

    /// All deletion sets of size `q` in colex order, or only the first.
    pub fn search(&self, q: usize, mode: ScanMode) -> Result<Vec<DeletionSet>> {
        if q > self.len() {
            return Ok(Vec::new());
        }
        if q == 0 {
            self.budget.charge(1)?;
            return Ok(if self.deletion_is_identity(&[])? {
                alloc::vec![DeletionSet::default()]
            } else {
                Vec::new()
            });
        }
        let mut out = Vec::new();
        for top in q - 1..self.len() {
            let hits = self.scan_top(q, top, mode)?;
            if mode == ScanMode::First && !hits.is_empty() {
                return Ok(hits);
            }
            out.extend(hits);
        }
        Ok(out)
    }

    /// Whether deleting `positions` leaves a word representing the identity,
    /// decided by rewriting.
    pub fn deletion_is_identity(&self, positions: &[usize]) -> Result<bool> {
        let rest = self.word.without_positions(positions);
        if self.sys.is_universal() {
            return Ok(rewriting::free_reduce(&rest).is_empty());
        }
        rewriting::is_identity(&rest, &self.sys, &self.limits)
    }

    fn run<N: Node>(&self, root: N, q: usize, top: usize, mode: ScanMode, hits: &mut Vec<DeletionSet>) -> Step<bool> {
        let mut chosen = alloc::vec![top];
        if q == 1 {
            self.budget.charge(1)?;
            if root.matches(top, &[])? {
                hits.push(DeletionSet::from_unsorted(alloc::vec![top]));
                return Ok(true);
            }
            return Ok(false);
        }
        let child = root.extend(top)?;
        self.descend(&child, q - 1, top, &mut chosen, mode, hits)
    }

    /// `remaining` positions are still to be chosen, all below `upper`.
    fn descend<N: Node>(
        &self,
        node: &N,
        remaining: usize,
        upper: usize,
        chosen: &mut Vec<usize>,
        mode: ScanMode,
        hits: &mut Vec<DeletionSet>,
    ) -> Step<bool> {
        if remaining == 1 {
            self.budget.charge(upper as u64)?;
            let chosen_ref: &[usize] = chosen;
            return node.finals(upper, chosen_ref, &mut |pos| {
                let mut set = chosen_ref.to_vec();
                set.push(pos);
                hits.push(DeletionSet::from_unsorted(set));
                mode == ScanMode::First
            });
        }
        for i in remaining - 1..upper {
            let child = node.extend(i)?;
            chosen.push(i);
            let stop = self.descend(&child, remaining - 1, i, chosen, mode, hits)?;
            chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// One node of the descent: the partial product `Z` (or nothing, for
/// rewriting).
trait Node: Sized {
    /// The node after also choosing `pos`.
    fn extend(&self, pos: usize) -> Step<Self>;

    /// Whether choosing `pos` as the last (smallest) position completes a
    /// deletion set, given the positions `chosen` so far.
    fn matches(&self, pos: usize, chosen: &[usize]) -> Step<bool>;

    /// Calls `hit` for each completing position below `below`, ascending,
    /// until it returns true. Returns whether it was stopped.
    fn finals(&self, below: usize, chosen: &[usize], hit: &mut dyn FnMut(usize) -> bool) -> Step<bool> {
        for pos in 0..below {
            if self.matches(pos, chosen)? && hit(pos) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

struct ExactNode<'k, S> {
    kernel: &'k ExactKernel<S>,
    z: Matrix<S>,
}

impl<S: ExactRing> Node for ExactNode<'_, S> {
    fn extend(&self, pos: usize) -> Step<Self> {
        let z = self
            .z
            .checked_mul(&self.kernel.reflections[pos])
            .ok_or(Abort::Overflow)?;
        Ok(ExactNode { kernel: self.kernel, z })
    }

    fn matches(&self, pos: usize, _chosen: &[usize]) -> Step<bool> {
        Ok(self.z == self.kernel.reflections[pos])
    }

    fn finals(&self, below: usize, _chosen: &[usize], hit: &mut dyn FnMut(usize) -> bool) -> Step<bool> {
        if let Some(positions) = self.kernel.index.get(&self.z) {
            for &pos in positions.iter().take_while(|&&p| p < below) {
                if hit(pos) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

struct FloatNode<'k> {
    search: &'k DeletionSearch,
    kernel: &'k FloatKernel,
    z: Approx,
}

impl Node for FloatNode<'_> {
    fn extend(&self, pos: usize) -> Step<Self> {
        let z = self.z.mul(&self.kernel.reflections[pos]);
        Ok(FloatNode { search: self.search, kernel: self.kernel, z })
    }

    fn matches(&self, pos: usize, chosen: &[usize]) -> Step<bool> {
        match self.z.compare(&self.kernel.reflections[pos], self.search.len()) {
            Closeness::Equal => Ok(true),
            Closeness::Distinct => Ok(false),
            Closeness::Inconclusive => {
                let mut set = chosen.to_vec();
                set.push(pos);
                Ok(self.search.deletion_is_identity(&set)?)
            }
        }
    }
}

struct TitsNode<'k> {
    search: &'k DeletionSearch,
}

impl Node for TitsNode<'_> {
    fn extend(&self, _pos: usize) -> Step<Self> {
        Ok(TitsNode { search: self.search })
    }

    fn matches(&self, pos: usize, chosen: &[usize]) -> Step<bool> {
        let mut set = chosen.to_vec();
        set.push(pos);
        Ok(self.search.deletion_is_identity(&set)?)
    }
}
