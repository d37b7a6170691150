use std::fmt;

use num_traits::{One, Zero};

use super::{kernel_of_columns, rank_of, Matrix, Scalar, SparseVec};

/// Linear map stored column by column as sparse vectors. Used for the
/// larger differentials, where a dense grid would be mostly zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Self { rows, cols }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, vec![SparseVec::new(); cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(SparseVec::unit).collect())
    }

    pub fn from_dense(m: &Matrix) -> Self {
        Self::new(m.rows(), m.columns())
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_columns(self.rows, &self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.entries() {
            out = out.add_scaled(c, &self.cols[*j]);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in composition");
        SparseMatrix::new(self.rows, other.cols.iter().map(|c| self.apply(c)).collect())
    }

    pub fn add_scaled(&self, c: &Scalar, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix::new(
            self.rows,
            self.cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        )
    }

    pub fn plus(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn minus(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(&-Scalar::one(), other)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return Self::zero(self.rows, self.cols());
        }
        SparseMatrix::new(self.rows, self.cols.iter().map(|v| v.scaled(c)).collect())
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.cols)
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        kernel_of_columns(&self.cols)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} ", self.rows, self.cols())?;
        self.to_dense().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_dense_product() {
        let a = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, -1]]);
        let b = Matrix::from_i64(&[&[1, 0], &[3, 1], &[0, 2]]);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.compose(&sb).to_dense(), &a * &b);
        assert_eq!(sa.rank(), 2);
        assert_eq!(sa.kernel().len(), 1);
        assert!(sa.minus(&sa).is_zero());
    }
}
