use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported rank. Letters are stored as `u8`.
pub const MAX_RANK: usize = 255;

/// An entry `m_ij` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    /// Integer encoding used by the JSON matrix form: `0` stands for ∞.
    pub fn from_encoded(value: u32) -> Label {
        if value == 0 {
            Label::Infinity
        } else {
            Label::Finite(value)
        }
    }

    pub fn encoded(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinity => 0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Label::Infinity),
            t => t
                .parse::<u32>()
                .map(Label::Finite)
                .map_err(|_| Error::Malformed(format!("bad label {t:?}"))),
        }
    }
}

/// A Coxeter system: rank `n` and a symmetric Coxeter matrix.
///
/// The matrix has `1` on the diagonal and labels `≥ 2` or `∞` elsewhere.
/// Construction validates this, so every `CoxeterSystem` is well formed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    rank: usize,
    labels: Vec<Label>,
}

impl CoxeterSystem {
    /// Builds a system from a row-major `rank × rank` matrix.
    pub fn new(rank: usize, labels: Vec<Label>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Parameter(format!("rank must be in 1..={MAX_RANK}, got {rank}")));
        }
        if labels.len() != rank * rank {
            return Err(Error::Malformed(format!(
                "expected {} matrix entries for rank {rank}, got {}",
                rank * rank,
                labels.len()
            )));
        }
        for i in 0..rank {
            if labels[i * rank + i] != Label::Finite(1) {
                return Err(Error::BadDiagonal { index: i + 1 });
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let m = labels[i * rank + j];
                if m != labels[j * rank + i] {
                    return Err(Error::Asymmetric { row: i + 1, col: j + 1 });
                }
                if let Label::Finite(v) = m {
                    if v < 2 {
                        return Err(Error::BadLabel { row: i + 1, col: j + 1 });
                    }
                }
            }
        }
        Ok(CoxeterSystem { rank, labels })
    }

    /// Builds a system from square rows.
    pub fn from_rows<R: AsRef<[Label]>>(rows: &[R]) -> Result<Self> {
        let rank = rows.len();
        let mut labels = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != rank {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            labels.extend_from_slice(row);
        }
        Self::new(rank, labels)
    }

    /// Rank-`n` system with every off-diagonal label equal to `label`.
    pub fn constant(rank: usize, label: Label) -> Result<Self> {
        let labels = (0..rank * rank)
            .map(|k| if k / rank == k % rank { Label::Finite(1) } else { label })
            .collect();
        Self::new(rank, labels)
    }

    /// The universal Coxeter group `W_n`.
    pub fn universal(rank: usize) -> Result<Self> {
        Self::constant(rank, Label::Infinity)
    }

    /// The single braided group `W^n_k`.
    pub fn single(rank: usize, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parameter(format!("single braided label must be >= 2, got {k}")));
        }
        Self::constant(rank, Label::Finite(k))
    }

    /// Rank 3 with `m_12 = p`, `m_13 = q`, `m_23 = r`.
    pub fn triangle(p: Label, q: Label, r: Label) -> Result<Self> {
        let one = Label::Finite(1);
        Self::from_rows(&[[one, p, q], [p, one, r], [q, r, one]])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m_ij` for 0-based generator indices.
    #[inline]
    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    /// `m_ij` when it is finite.
    #[inline]
    pub fn finite_label(&self, i: usize, j: usize) -> Option<u32> {
        self.label(i, j).finite()
    }

    /// Row-major matrix entries.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Off-diagonal labels, each unordered pair once.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        (0..self.rank).flat_map(move |i| (i + 1..self.rank).map(move |j| (i, j, self.label(i, j))))
    }

    pub fn is_universal(&self) -> bool {
        self.off_diagonal().all(|(_, _, m)| m == Label::Infinity)
    }

    /// The common off-diagonal label when the system is single braided.
    pub fn single_label(&self) -> Option<Label> {
        let mut labels = self.off_diagonal().map(|(_, _, m)| m);
        let first = labels.next()?;
        labels.all(|m| m == first).then_some(first)
    }

    /// Smallest off-diagonal label (`None` for rank 1).
    pub fn min_label(&self) -> Option<Label> {
        self.off_diagonal().map(|(_, _, m)| m).min()
    }

    /// The system obtained by renaming generator `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank;
        if perm.len() != n {
            return Err(Error::Parameter("permutation has the wrong length".to_string()));
        }
        let mut seen = alloc::vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Parameter("not a permutation".to_string()));
            }
            seen[p] = true;
        }
        let mut labels = alloc::vec![Label::Finite(1); n * n];
        for i in 0..n {
            for j in 0..n {
                labels[perm[i] * n + perm[j]] = self.label(i, j);
            }
        }
        Self::new(n, labels)
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rank {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.rank {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.label(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Input grammar for groups.
///
/// Textual shorthands are `universal:<n>`, `single:<n>:<k>` and
/// `triangle:<p>:<q>:<r>` (triangle labels accept `inf`). The explicit matrix
/// form is carried by [`GroupSpec::Explicit`]; its JSON spelling is parsed by
/// the CLI crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Explicit(CoxeterSystem),
    Universal(usize),
    Single(usize, u32),
    Triangle(Label, Label, Label),
}

impl GroupSpec {
    pub fn expand(&self) -> Result<CoxeterSystem> {
        match self {
            GroupSpec::Explicit(sys) => Ok(sys.clone()),
            GroupSpec::Universal(n) => CoxeterSystem::universal(*n),
            GroupSpec::Single(n, k) => CoxeterSystem::single(*n, *k),
            GroupSpec::Triangle(p, q, r) => CoxeterSystem::triangle(*p, *q, *r),
        }
    }
}

fn parse_count(field: &str, what: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("bad {what} {field:?}")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<GroupSpec> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["universal", n] => GroupSpec::Universal(parse_count(n, "rank")?),
            ["single", n, k] => {
                let k = parse_count(k, "label")?;
                GroupSpec::Single(
                    parse_count(n, "rank")?,
                    u32::try_from(k).map_err(|_| Error::Malformed(format!("label {k} too large")))?,
                )
            }
            ["triangle", p, q, r] => GroupSpec::Triangle(p.parse()?, q.parse()?, r.parse()?),
            _ => {
                return Err(Error::Malformed(format!(
                    "unrecognized group spec {text:?}; expected universal:<n>, single:<n>:<k> or triangle:<p>:<q>:<r>"
                )))
            }
        };
        // Surface invalid shorthands (k < 2, rank 0, ...) at parse time.
        spec.expand()?;
        Ok(spec)
    }
}

impl FromStr for CoxeterSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<CoxeterSystem> {
        text.parse::<GroupSpec>()?.expand()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Explicit(sys) => write!(f, "{sys}"),
            GroupSpec::Universal(n) => write!(f, "universal:{n}"),
            GroupSpec::Single(n, k) => write!(f, "single:{n}:{k}"),
            GroupSpec::Triangle(p, q, r) => write!(f, "triangle:{p}:{q}:{r}"),
        }
    }
}
