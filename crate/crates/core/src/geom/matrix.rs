use alloc::vec::Vec;

use super::scalar::Ring;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        let mut data = alloc::vec![S::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = S::one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    let x = &self.data[i * n + k];
                    let y = &other.data[k * n + j];
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&x.checked_mul(y)?)?;
                }
                data.push(acc);
            }
        }
        Some(Matrix { n, data })
    }

    /// `self ← self · G` where `G` is the identity except for row `i`, which
    /// is `gen_row`. This is the shape of every generator matrix, so appending
    /// a letter costs O(n²).
    pub fn right_mul_generator(&mut self, i: usize, gen_row: &[S]) -> Option<()> {
        let n = self.n;
        for r in 0..n {
            let x = self.data[r * n + i].clone();
            if x.is_zero() {
                continue;
            }
            for (j, g) in gen_row.iter().enumerate().take(n) {
                if j == i || g.is_zero() {
                    continue;
                }
                let t = x.checked_mul(g)?;
                self.data[r * n + j] = self.data[r * n + j].checked_add(&t)?;
            }
            self.data[r * n + i] = x.checked_mul(&gen_row[i])?;
        }
        Some(())
    }

    /// `self ← G · self` for a generator-shaped `G` (see
    /// [`Matrix::right_mul_generator`]); only row `i` changes.
    pub fn left_mul_generator(&mut self, i: usize, gen_row: &[S]) -> Option<()> {
        let n = self.n;
        let mut new_row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = S::zero();
            for (k, g) in gen_row.iter().enumerate() {
                let x = &self.data[k * n + j];
                if g.is_zero() || x.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&g.checked_mul(x)?)?;
            }
            new_row.push(acc);
        }
        for (j, v) in new_row.into_iter().enumerate() {
            self.data[i * n + j] = v;
        }
        Some(())
    }
}

impl Matrix<f64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }

    /// [`Matrix::distance`] relative to the larger of the two magnitudes
    /// (and at least 1).
    pub fn relative_distance(&self, other: &Self) -> f64 {
        self.distance(other) / self.max_abs().max(other.max_abs()).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn generator_shortcuts_match_full_products() {
        let m = Matrix::from_rows(vec![vec![1i128, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        let row = vec![3i128, -1, 2];
        let mut g = Matrix::<i128>::identity(3);
        g.data[3..6].clone_from_slice(&row);
        let mut right = m.clone();
        right.right_mul_generator(1, &row).unwrap();
        assert_eq!(right, m.checked_mul(&g).unwrap());
        let mut left = m.clone();
        left.left_mul_generator(1, &row).unwrap();
        assert_eq!(left, g.checked_mul(&m).unwrap());
    }
}
