//! The standard geometric representation as an identity oracle independent
//! of rewriting.
//!
//! The generator `s_i` acts on `V = ⊕ ℝe_j` by `e_j ↦ e_j − 2B(e_i, e_j)·e_i`,
//! where `B(e_i, e_j) = −cos(π/m_ij)` (and `−1` for `m_ij = ∞`). The
//! representation is faithful, so a word is the identity exactly when its
//! matrix product is.
//!
//! When every finite label lies in {2, 3, 4, 6}, `2B` has entries in
//! ℤ[√2, √3] and all arithmetic is exact: fixed-width `i128` coefficients
//! first, [`BigInt`] on overflow. Other labels use `f64` with an ambiguity band;
//! comparisons landing in the band are reported as
//! [`Error::PrecisionInconclusive`] so the caller can fall back to rewriting.

pub mod matrix;
pub mod scalar;

use alloc::vec::Vec;

use num_bigint::BigInt;

pub use matrix::Matrix;
pub use scalar::{ExactRing, Quad, Ring};

use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Label};

/// Matrix of one generator.
pub type GenMatrix<S> = Matrix<S>;

/// Float comparisons below `FLOAT_EPSILON · (1 + |w|)` count as equal.
pub const FLOAT_EPSILON: f64 = 1e-9;
/// Float comparisons at or above `FLOAT_AMBIGUITY · (1 + |w|)` count as
/// different; anything between is inconclusive.
pub const FLOAT_AMBIGUITY: f64 = 1e-6;

/// Verdict of an approximate matrix comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closeness {
    Equal,
    Distinct,
    Inconclusive,
}

/// Classifies the entrywise distance `distance` between two float matrices
/// whose combined rounding error is at most `slack`, for a word of length
/// `word_len`.
///
/// Distinct needs the distance to clear the error bound by the ambiguity
/// margin; equal needs both distance and error bound under the epsilon
/// margin. Long products of large matrices can carry error bounds too big for
/// either, which is reported as inconclusive rather than guessed.
pub fn classify(distance: f64, slack: f64, word_len: usize) -> Closeness {
    let scale = 1.0 + word_len as f64;
    if distance > slack + FLOAT_AMBIGUITY * scale {
        Closeness::Distinct
    } else if distance < FLOAT_EPSILON * scale && slack < FLOAT_EPSILON * scale {
        Closeness::Equal
    } else {
        Closeness::Inconclusive
    }
}

/// A float matrix with a bound on the ∞-norm of its accumulated rounding
/// error (which also bounds every entry's error).
#[derive(Debug, Clone, PartialEq)]
pub struct Approx {
    pub value: Matrix<f64>,
    pub error: f64,
}

/// Unit roundoff of `f64`.
const UNIT: f64 = f64::EPSILON / 2.0;

/// ∞-norm of a generator matrix given its non-trivial row.
fn generator_norm(row: &[f64]) -> f64 {
    row.iter().map(|x| x.abs()).sum::<f64>().max(1.0)
}

impl Approx {
    pub fn new(value: Matrix<f64>, error: f64) -> Self {
        Approx { value, error }
    }

    pub fn identity(n: usize) -> Self {
        Approx::new(Matrix::identity(n), 0.0)
    }

    /// Error bound of `self · B` where `‖B‖∞ = other_norm` and `B` carries
    /// error `other_error`:
    /// `e_A‖B‖ + ‖A‖e_B + e_A e_B + γ_n (‖A‖ + e_A)(‖B‖ + e_B)`.
    fn product_error(&self, other_norm: f64, other_error: f64) -> f64 {
        let n = self.value.dim() as f64;
        let a = self.value.norm_inf();
        let propagated = self.error * other_norm + a * other_error + self.error * other_error;
        let gamma = 1.01 * n * UNIT;
        propagated + gamma * (a + self.error) * (other_norm + other_error)
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        let error = self.product_error(other.value.norm_inf(), other.error);
        Approx::new(self.value.checked_mul(&other.value).expect("float arithmetic"), error)
    }

    /// `self · s_i` for a generator row with error `row_error`.
    pub fn right_mul_generator(&mut self, i: usize, row: &[f64], row_error: f64) {
        self.error = self.product_error(generator_norm(row), row_error);
        self.value.right_mul_generator(i, row).expect("float arithmetic");
    }

    /// `s_i · self` for a generator row with error `row_error`.
    pub fn left_mul_generator(&mut self, i: usize, row: &[f64], row_error: f64) {
        self.error = self.product_error(generator_norm(row), row_error);
        self.value.left_mul_generator(i, row).expect("float arithmetic");
    }

    /// Classifies `self` against `other` (see [`classify`]).
    ///
    /// Entry errors are bounded by the norm errors, so the sum of the two
    /// bounds covers the entrywise distance.
    pub fn compare(&self, other: &Approx, word_len: usize) -> Closeness {
        classify(self.value.distance(&other.value), self.error + other.error, word_len)
    }
}

/// The bilinear form, stored doubled (`2B`) when exact.
#[derive(Debug, Clone, PartialEq)]
pub enum BilinearForm {
    Exact { rank: usize, doubled: Vec<Quad<i128>> },
    Approx { rank: usize, entries: Vec<f64>, error_bound: f64 },
}

fn exact_doubled(label: Label) -> Option<Quad<i128>> {
    match label {
        Label::Infinity => Some(Quad::integer(-2)),
        Label::Finite(1) => Some(Quad::integer(2)),
        Label::Finite(2) => Some(Quad::integer(0)),
        Label::Finite(3) => Some(Quad::integer(-1)),
        Label::Finite(4) => Some(Quad::sqrt2(-1)),
        Label::Finite(6) => Some(Quad::sqrt3(-1)),
        Label::Finite(_) => None,
    }
}

fn approx_entry(label: Label) -> f64 {
    match label {
        Label::Infinity => -1.0,
        Label::Finite(1) => 1.0,
        Label::Finite(m) => -libm::cos(core::f64::consts::PI / m as f64),
    }
}

impl BilinearForm {
    pub fn of(sys: &CoxeterSystem) -> Self {
        let rank = sys.rank();
        let exact: Option<Vec<Quad<i128>>> = sys.labels().iter().map(|&l| exact_doubled(l)).collect();
        match exact {
            Some(doubled) => BilinearForm::Exact { rank, doubled },
            None => BilinearForm::Approx {
                rank,
                entries: sys.labels().iter().map(|&l| approx_entry(l)).collect(),
                error_bound: f64::EPSILON,
            },
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            BilinearForm::Exact { rank, .. } | BilinearForm::Approx { rank, .. } => *rank,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BilinearForm::Exact { .. })
    }

    /// `B(e_i, e_j)` as a float.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        match self {
            BilinearForm::Exact { rank, doubled } => doubled[i * rank + j].to_f64() / 2.0,
            BilinearForm::Approx { rank, entries, .. } => entries[i * rank + j],
        }
    }
}

/// Non-trivial rows of the generator matrices: row `i` of `s_i` is
/// `δ_ij − 2B_ij`; every other row is a row of the identity.
#[derive(Debug, Clone)]
pub struct GeneratorRows<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Ring> GeneratorRows<S> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.rows[i]
    }

    pub fn matrix(&self, i: usize) -> GenMatrix<S> {
        let n = self.rank();
        let rows = (0..n)
            .map(|r| {
                if r == i {
                    self.rows[i].clone()
                } else {
                    (0..n).map(|c| if c == r { S::one() } else { S::zero() }).collect()
                }
            })
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn matrices(&self) -> Vec<GenMatrix<S>> {
        (0..self.rank()).map(|i| self.matrix(i)).collect()
    }

    /// Product of the generator matrices along `letters`, or `None` on
    /// overflow.
    pub fn word_product(&self, letters: &[u8]) -> Option<Matrix<S>> {
        let mut m = Matrix::identity(self.rank());
        for &a in letters {
            m.right_mul_generator(a as usize, &self.rows[a as usize])?;
        }
        Some(m)
    }
}

fn rows_from_doubled<S: Ring>(rank: usize, doubled: impl Fn(usize, usize) -> S) -> GeneratorRows<S> {
    let rows = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let two_b = doubled(i, j);
                    let neg = two_b.checked_neg().expect("negation of a form entry");
                    if i == j {
                        S::one().checked_add(&neg).expect("diagonal entry")
                    } else {
                        neg
                    }
                })
                .collect()
        })
        .collect();
    GeneratorRows { rows }
}

/// Exact generator data, in both coefficient widths.
#[derive(Debug, Clone)]
pub struct ExactRep {
    pub small: GeneratorRows<Quad<i128>>,
    pub big: GeneratorRows<Quad<BigInt>>,
}

#[derive(Debug, Clone)]
pub struct FloatRep {
    pub rows: GeneratorRows<f64>,
    /// Entrywise error of the generator rows (from the cosines).
    pub row_error: f64,
}

impl FloatRep {
    /// Product along `letters` with its error bound.
    pub fn word_product(&self, letters: &[u8]) -> Approx {
        let mut m = Approx::identity(self.rows.rank());
        for &a in letters {
            m.right_mul_generator(a as usize, self.rows.row(a as usize), self.row_error);
        }
        m
    }
}

/// Generator matrices of the geometric representation.
#[derive(Debug, Clone)]
pub enum Representation {
    Exact(ExactRep),
    Float(FloatRep),
}

/// Builds the generator matrices for `sys`.
pub fn build_representation(sys: &CoxeterSystem) -> Representation {
    let n = sys.rank();
    match BilinearForm::of(sys) {
        BilinearForm::Exact { doubled, .. } => {
            let small = rows_from_doubled(n, |i, j| doubled[i * n + j].clone());
            let big = rows_from_doubled(n, |i, j| doubled[i * n + j].to_big());
            Representation::Exact(ExactRep { small, big })
        }
        BilinearForm::Approx { entries, .. } => {
            let rows = rows_from_doubled(n, |i, j| 2.0 * entries[i * n + j]);
            Representation::Float(FloatRep { rows, row_error: 8.0 * UNIT })
        }
    }
}

impl Representation {
    pub fn rank(&self) -> usize {
        match self {
            Representation::Exact(e) => e.small.rank(),
            Representation::Float(f) => f.rows.rank(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Representation::Exact(_))
    }

    /// Generator matrices as floats (exact entries are converted).
    pub fn float_generators(&self) -> Vec<GenMatrix<f64>> {
        match self {
            Representation::Exact(e) => e.small.matrices().iter().map(|m| m.map(Quad::to_f64)).collect(),
            Representation::Float(f) => f.rows.matrices(),
        }
    }

    /// Exact generator matrices, if the labels allow them.
    pub fn exact_generators(&self) -> Option<Vec<GenMatrix<Quad<BigInt>>>> {
        match self {
            Representation::Exact(e) => Some(e.big.matrices()),
            Representation::Float(_) => None,
        }
    }

    /// Whether the product along `letters` is the identity matrix.
    pub fn is_identity(&self, letters: &[u8]) -> Result<bool> {
        let n = self.rank();
        match self {
            Representation::Exact(e) => Ok(match e.small.word_product(letters) {
                Some(m) => m == Matrix::identity(n),
                None => {
                    let m = e.big.word_product(letters).expect("bigint arithmetic");
                    m == Matrix::identity(n)
                }
            }),
            Representation::Float(f) => {
                let m = f.word_product(letters);
                match m.compare(&Approx::identity(n), letters.len()) {
                    Closeness::Equal => Ok(true),
                    Closeness::Distinct => Ok(false),
                    Closeness::Inconclusive => Err(Error::PrecisionInconclusive),
                }
            }
        }
    }
}

/// Whether `w` represents the identity, decided by its matrix.
pub fn matrix_is_identity(w: &crate::Word, sys: &CoxeterSystem) -> Result<bool> {
    w.validate(sys)?;
    build_representation(sys).is_identity(w.letters())
}
