//! Tits' solution to the word problem: nil-moves (`s s ↦ e`) and braid-moves
//! (`b_ij ↦ b_ji` on a consecutive alternating block of length `m_ij`).
//!
//! Every search here only visits words no longer than its input. Nil-moves are
//! taken as soon as one is available and braid-moves only otherwise, so the
//! move sequences recorded by [`reduce`] are braid-minimalistic.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;
use core::hash::BuildHasher;

use hashbrown::DefaultHashBuilder;
use hashbrown::HashTable;

use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::system::CoxeterSystem;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Nil,
    Braid,
}

/// One rewriting step. Positions are 0-based and refer to the word as it is
/// when the move is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Delete the equal pair at `position`, `position + 1`.
    Nil { position: usize },
    /// Replace the block `first second first …` of length `m(first, second)`
    /// starting at `position` by `second first second …`.
    Braid { position: usize, first: u8, second: u8 },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Nil { .. } => MoveKind::Nil,
            Move::Braid { .. } => MoveKind::Braid,
        }
    }

    pub fn position(&self) -> usize {
        match *self {
            Move::Nil { position } | Move::Braid { position, .. } => position,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Nil { position } => write!(f, "nil@{position}"),
            Move::Braid { position, first, second } => {
                write!(f, "braid@{position}({},{})", first as usize + 1, second as usize + 1)
            }
        }
    }
}

/// Moves applied during a reduction, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveTrace {
    moves: Vec<Move>,
    braid_count: usize,
}

impl MoveTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, mv: Move) {
        if mv.kind() == MoveKind::Braid {
            self.braid_count += 1;
        }
        self.moves.push(mv);
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn braid_count(&self) -> usize {
        self.braid_count
    }

    pub fn nil_count(&self) -> usize {
        self.moves.len() - self.braid_count
    }

    /// Applies the recorded moves to `source`.
    pub fn replay(&self, source: &Word, sys: &CoxeterSystem) -> Result<Word> {
        let mut letters = source.letters().to_vec();
        for mv in &self.moves {
            apply_in_place(&mut letters, mv, sys)?;
        }
        Ok(Word::from_letters(letters))
    }
}

/// Result of [`reduce`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub word: Word,
    pub trace: MoveTrace,
    /// Words visited by the orbit searches.
    pub orbit_states: usize,
}

// ---------------------------------------------------------------------------
// Move primitives

/// Length of the braid block starting at `i`, if one starts there.
#[inline]
fn braid_at(w: &[u8], i: usize, sys: &CoxeterSystem) -> Option<(u8, u8, usize)> {
    let a = *w.get(i)?;
    let b = *w.get(i + 1)?;
    if a == b {
        return None;
    }
    let m = sys.finite_label(a as usize, b as usize)? as usize;
    if i + m > w.len() {
        return None;
    }
    let alternating = w[i..i + m]
        .iter()
        .enumerate()
        .all(|(k, &c)| c == if k % 2 == 0 { a } else { b });
    alternating.then_some((a, b, m))
}

#[inline]
fn flip_block(w: &mut [u8], i: usize, a: u8, b: u8, m: usize) {
    for (k, c) in w[i..i + m].iter_mut().enumerate() {
        *c = if k % 2 == 0 { b } else { a };
    }
}

#[inline]
pub(crate) fn has_nil(w: &[u8]) -> bool {
    w.windows(2).any(|p| p[0] == p[1])
}

/// Every move applicable to `w`, ordered by position and then kind (nil before
/// braid). At most one braid-move starts at a given position because the block
/// is determined by its first two letters.
pub fn applicable_moves(w: &Word, sys: &CoxeterSystem) -> Vec<Move> {
    let mut out = Vec::new();
    let w = w.letters();
    for i in 0..w.len() {
        if i + 1 < w.len() && w[i] == w[i + 1] {
            out.push(Move::Nil { position: i });
        }
        if let Some((first, second, _)) = braid_at(w, i, sys) {
            out.push(Move::Braid { position: i, first, second });
        }
    }
    out
}

fn apply_in_place(w: &mut Vec<u8>, mv: &Move, sys: &CoxeterSystem) -> Result<()> {
    match *mv {
        Move::Nil { position } => {
            if position + 1 >= w.len() || w[position] != w[position + 1] {
                return Err(Error::MoveNotApplicable { position });
            }
            w.drain(position..position + 2);
        }
        Move::Braid { position, first, second } => match braid_at(w, position, sys) {
            Some((a, b, m)) if a == first && b == second => flip_block(w, position, a, b, m),
            _ => return Err(Error::MoveNotApplicable { position }),
        },
    }
    Ok(())
}

/// Applies one move.
pub fn apply_move(w: &Word, mv: &Move, sys: &CoxeterSystem) -> Result<Word> {
    let mut letters = w.letters().to_vec();
    apply_in_place(&mut letters, mv, sys)?;
    Ok(Word::from_letters(letters))
}

/// Leftmost-first nil-moves until none is left.
fn nil_reduce(w: &mut Vec<u8>, trace: &mut MoveTrace) {
    let mut i = 0;
    while i + 1 < w.len() {
        if w[i] == w[i + 1] {
            trace.push(Move::Nil { position: i });
            w.drain(i..i + 2);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
}

/// Normal form in the universal group: cancel equal neighbours with a stack.
pub fn free_reduce(w: &[u8]) -> Word {
    let mut stack: Vec<u8> = Vec::with_capacity(w.len());
    for &a in w {
        if stack.last() == Some(&a) {
            stack.pop();
        } else {
            stack.push(a);
        }
    }
    Word::from_letters(stack)
}

// ---------------------------------------------------------------------------
// Word storage for the searches

/// Insertion-ordered set of words stored back to back in one buffer.
struct WordArena {
    data: Vec<u8>,
    starts: Vec<u32>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl WordArena {
    fn new() -> Self {
        WordArena {
            data: Vec::new(),
            starts: alloc::vec![0],
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    fn len(&self) -> usize {
        self.starts.len() - 1
    }

    fn get(&self, idx: usize) -> &[u8] {
        &self.data[self.starts[idx] as usize..self.starts[idx + 1] as usize]
    }

    /// Returns the index of `w` and whether it was newly inserted.
    fn insert(&mut self, w: &[u8]) -> (usize, bool) {
        let hash = self.hasher.hash_one(w);
        let WordArena { data, starts, table, hasher } = self;
        let found = table.find(hash, |&idx| {
            let idx = idx as usize;
            &data[starts[idx] as usize..starts[idx + 1] as usize] == w
        });
        if let Some(&idx) = found {
            return (idx as usize, false);
        }
        let idx = starts.len() - 1;
        data.extend_from_slice(w);
        starts.push(data.len() as u32);
        table.insert_unique(hash, idx as u32, |&k| {
            let k = k as usize;
            hasher.hash_one(&data[starts[k] as usize..starts[k + 1] as usize])
        });
        (idx, true)
    }
}

struct Orbit {
    words: WordArena,
    parents: Vec<Option<(u32, Move)>>,
    hit: Option<usize>,
}

impl Orbit {
    fn path_to(&self, mut idx: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((parent, mv)) = self.parents[idx] {
            moves.push(mv);
            idx = parent as usize;
        }
        moves.reverse();
        moves
    }
}

/// Breadth-first closure of `start` under braid-moves. Stops at the first
/// word (in BFS order) for which `stop` returns true.
fn explore_orbit(
    start: &[u8],
    sys: &CoxeterSystem,
    limits: &SearchLimits,
    mut stop: impl FnMut(&[u8]) -> bool,
) -> Result<Orbit> {
    let mut orbit = Orbit {
        words: WordArena::new(),
        parents: alloc::vec![None],
        hit: None,
    };
    orbit.words.insert(start);
    let mut buf = start.to_vec();
    let mut head = 0;
    while head < orbit.words.len() {
        buf.clear();
        buf.extend_from_slice(orbit.words.get(head));
        if stop(&buf) {
            orbit.hit = Some(head);
            return Ok(orbit);
        }
        for i in 0..buf.len() {
            if let Some((a, b, m)) = braid_at(&buf, i, sys) {
                flip_block(&mut buf, i, a, b, m);
                let (_, fresh) = orbit.words.insert(&buf);
                if fresh {
                    orbit.parents.push(Some((
                        head as u32,
                        Move::Braid { position: i, first: a, second: b },
                    )));
                    if orbit.words.len() > limits.max_orbit {
                        return Err(Error::OrbitLimitExceeded { limit: limits.max_orbit });
                    }
                }
                flip_block(&mut buf, i, b, a, m);
            }
        }
        head += 1;
    }
    Ok(orbit)
}

// ---------------------------------------------------------------------------
// Public operations

/// Reduces `w` to an S-reduced expression of the same element.
///
/// Nil-moves are applied leftmost-first until none remains; then the braid
/// orbit is searched breadth-first for a word admitting a nil-move, the braid
/// path to it is recorded, and the loop repeats. When the orbit is exhausted
/// the current word is reduced (Tits). Reduced inputs come back unchanged.
pub fn reduce(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<Reduction> {
    w.validate(sys)?;
    let mut current = w.letters().to_vec();
    let mut trace = MoveTrace::new();
    let mut orbit_states = 0;
    loop {
        nil_reduce(&mut current, &mut trace);
        if current.len() < 3 {
            break;
        }
        let orbit = explore_orbit(&current, sys, limits, has_nil)?;
        orbit_states += orbit.words.len();
        match orbit.hit {
            Some(idx) => {
                for mv in orbit.path_to(idx) {
                    trace.push(mv);
                }
                current.clear();
                current.extend_from_slice(orbit.words.get(idx));
            }
            None => break,
        }
    }
    Ok(Reduction {
        word: Word::from_letters(current),
        trace,
        orbit_states,
    })
}

/// Whether `w` represents the identity.
pub fn is_identity(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<bool> {
    w.validate(sys)?;
    if w.len() % 2 == 1 {
        return Ok(false);
    }
    Ok(reduce(w, sys, limits)?.word.is_empty())
}

/// Whether `w` is S-reduced, i.e. no word in its braid orbit admits a
/// nil-move.
pub fn is_reduced(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<bool> {
    w.validate(sys)?;
    if has_nil(w) {
        return Ok(false);
    }
    let orbit = explore_orbit(w, sys, limits, has_nil)?;
    Ok(orbit.hit.is_none())
}

/// All S-reduced expressions of the element represented by the reduced word
/// `w`.
pub fn braid_orbit(
    w: &Word,
    sys: &CoxeterSystem,
    limits: &SearchLimits,
) -> Result<BTreeSet<Word>> {
    w.validate(sys)?;
    let orbit = explore_orbit(w, sys, limits, has_nil)?;
    if orbit.hit.is_some() {
        return Err(Error::NotReduced);
    }
    Ok((0..orbit.words.len())
        .map(|k| Word::from_letters(orbit.words.get(k).to_vec()))
        .collect())
}

/// Shortlex-least reduced expression of the element represented by `w`.
/// Two words have the same canonical form exactly when they represent the
/// same element.
pub fn canonical_form(w: &Word, sys: &CoxeterSystem, limits: &SearchLimits) -> Result<Word> {
    let reduced = reduce(w, sys, limits)?.word;
    let orbit = explore_orbit(&reduced, sys, limits, |_| false)?;
    let best = (0..orbit.words.len())
        .map(|k| orbit.words.get(k))
        .min()
        .unwrap_or(&[]);
    Ok(Word::from_letters(best.to_vec()))
}

/// Fewest braid-moves in any nil/braid-move sequence taking `w` to the empty
/// word.
///
/// 0-1 breadth-first search over the words reachable from `w`: nil-moves cost
/// nothing, braid-moves cost one.
pub fn minimal_braid_moves_to_identity(
    w: &Word,
    sys: &CoxeterSystem,
    limits: &SearchLimits,
) -> Result<usize> {
    w.validate(sys)?;
    if w.len() % 2 == 1 {
        return Err(Error::NotIdentity);
    }
    let mut words = WordArena::new();
    let mut dist: Vec<usize> = alloc::vec![0];
    let mut settled: Vec<bool> = alloc::vec![false];
    words.insert(w);
    let mut queue = VecDeque::from([0usize]);
    let mut buf = Vec::with_capacity(w.len());
    while let Some(idx) = queue.pop_front() {
        if settled[idx] {
            continue;
        }
        settled[idx] = true;
        let d = dist[idx];
        buf.clear();
        buf.extend_from_slice(words.get(idx));
        if buf.is_empty() {
            return Ok(d);
        }
        for mv in applicable_moves(&Word::from_letters(buf.clone()), sys) {
            let mut next = buf.clone();
            apply_in_place(&mut next, &mv, sys)?;
            let cost = usize::from(mv.kind() == MoveKind::Braid);
            let (j, fresh) = words.insert(&next);
            if fresh {
                dist.push(usize::MAX);
                settled.push(false);
                if words.len() > limits.max_orbit {
                    return Err(Error::OrbitLimitExceeded { limit: limits.max_orbit });
                }
            }
            if d + cost < dist[j] {
                dist[j] = d + cost;
                if cost == 0 {
                    queue.push_front(j);
                } else {
                    queue.push_back(j);
                }
            }
        }
    }
    Err(Error::NotIdentity)
}

/// Some ordered pair `(i, j)` with finite `m_ij` such that `(s_i s_j)^{m_ij}`
/// occurs in `w` as a (not necessarily consecutive) subsequence. Pairs are
/// tried in lexicographic order, each by a greedy left-to-right scan.
/// Letters in the returned pair are 0-based.
pub fn contains_braid_power_subword(w: &Word, sys: &CoxeterSystem) -> Option<(u8, u8)> {
    let n = sys.rank();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let Some(m) = sys.finite_label(i, j) else { continue };
            let need = 2 * m as usize;
            if need > w.len() {
                continue;
            }
            let mut matched = 0;
            for &c in w.iter() {
                let want = if matched % 2 == 0 { i } else { j };
                if c as usize == want {
                    matched += 1;
                    if matched == need {
                        return Some((i as u8, j as u8));
                    }
                }
            }
        }
    }
    None
}

/// Whether some reduced expression in the braid orbit of the reduced word `w`
/// contains a relation subword `(s_i s_j)^{m_ij}`.
pub fn orbit_has_relation_subword(
    w: &Word,
    sys: &CoxeterSystem,
    limits: &SearchLimits,
) -> Result<bool> {
    w.validate(sys)?;
    let mut not_reduced = false;
    let orbit = explore_orbit(w, sys, limits, |u| {
        if has_nil(u) {
            not_reduced = true;
            return true;
        }
        contains_braid_power_subword(&Word::from_letters(u.to_vec()), sys).is_some()
    })?;
    if not_reduced {
        return Err(Error::NotReduced);
    }
    Ok(orbit.hit.is_some())
}
