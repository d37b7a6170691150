use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::sparse::{kernel_of_columns, Insertion, Reducer, SparseVec};
use super::{format_scalar, int, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|x| int(*x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.entries() {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_pairs(
            (0..self.rows)
                .filter(|&i| !self.get(i, j).is_zero())
                .map(|i| (i, self.get(i, j).clone())),
        )
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs((0..self.rows).filter_map(|i| {
            let s = v
                .entries()
                .iter()
                .fold(Scalar::zero(), |acc, (j, c)| acc + self.get(i, *j) * c);
            (!s.is_zero()).then_some((i, s))
        }))
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut red = Reducer::new();
        for i in 0..self.rows {
            red.insert(&SparseVec::from_dense(self.row(i)));
        }
        red.rank()
    }

    /// Basis of `{x : self * x = 0}`, each vector scaled so its first
    /// nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_of_columns(&self.columns())
            .into_iter()
            .map(|mut v| {
                v.normalize_leading();
                v.to_dense(self.cols)
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut red = Reducer::tracking();
        for col in self.columns() {
            red.insert(&col);
        }
        red.solve(&SparseVec::from_dense(b))
            .map(|x| x.to_dense(self.cols))
    }

    /// Rank by fraction-free (Bareiss) elimination on the integer matrix
    /// obtained by clearing denominators row by row. Independent of the
    /// rational echelon code path used everywhere else.
    pub fn rank_bareiss(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn is_involution(&self) -> bool {
        self.is_square() && (self * self).is_identity()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scaled(&-Scalar::one())
    }
}

/// Quotient of `Q^ambient_dim` by the span of `sub`.
///
/// Returns `(projection, lift)` where `projection` is `q x n`, `lift` is
/// `n x q`, `projection * lift = 1` and `ker(projection) = span(sub)`.
/// The quotient is modelled on the non-pivot coordinates of an echelon form
/// of `sub`.
pub fn quotient_and_section(ambient_dim: usize, sub: &[Vec<Scalar>]) -> (Matrix, Matrix) {
    let mut red = Reducer::new();
    for v in sub {
        assert_eq!(v.len(), ambient_dim, "sub vector length");
        red.insert(&SparseVec::from_dense(v));
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !red.is_pivot(*c)).collect();
    let q = free.len();
    let mut slot = vec![usize::MAX; ambient_dim];
    for (k, c) in free.iter().enumerate() {
        slot[*c] = k;
    }
    let mut projection = Matrix::zeros(q, ambient_dim);
    for e in 0..ambient_dim {
        let (residual, _) = red.reduce(&SparseVec::unit(e));
        for (i, c) in residual.entries() {
            projection.set(slot[*i], e, c.clone());
        }
    }
    let mut lift = Matrix::zeros(ambient_dim, q);
    for (k, c) in free.iter().enumerate() {
        lift.set(*c, k, Scalar::one());
    }
    (projection, lift)
}

/// Bases of the `+1` and `-1` eigenspaces of an involution.
pub fn eigenspace_split(inv: &Matrix) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
    if !inv.is_involution() {
        return Err(Error::NotInvolution);
    }
    let id = Matrix::identity(inv.rows());
    let plus = (inv - &id).kernel_basis();
    let minus = (inv + &id).kernel_basis();
    Ok((plus, minus))
}

/// Rank of a list of dense vectors.
pub fn rank_of_dense(vectors: &[Vec<Scalar>]) -> usize {
    let mut red = Reducer::new();
    let mut rank = 0;
    for v in vectors {
        if let Insertion::Pivot(_) = red.insert(&SparseVec::from_dense(v)) {
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::from_i64(&[&[0]]).kernel_basis(), vec![v(&[1])]);
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::from_i64(&[&[1, 1]]).kernel_basis(), vec![v(&[1, -1])]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), frac(1, 2)];
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::from_i64(&[&[1], &[0]]).solve(&v(&[0, 1])), None);
        assert_eq!(Matrix::from_i64(&[&[2]]).solve(&v(&[1])), Some(vec![frac(1, 2)]));
    }

    #[test]
    fn quotient_examples() {
        let (p, l) = quotient_and_section(2, &[v(&[1, 0])]);
        assert_eq!(p.rows(), 1);
        assert!((&p * &l).is_identity());

        let (p, _) = quotient_and_section(3, &[]);
        assert!(p.is_identity());

        let (p, l) = quotient_and_section(2, &[v(&[1, 1]), v(&[2, 2])]);
        assert_eq!(p.rows(), 1);
        assert!((&p * &l).is_identity());
        assert!(p.mul_vec(&v(&[1, 1])).iter().all(Zero::is_zero));
    }

    #[test]
    fn eigenspace_examples() {
        let (p, m) = eigenspace_split(&Matrix::identity(3)).unwrap();
        assert_eq!((p.len(), m.len()), (3, 0));
        let (p, m) = eigenspace_split(&-&Matrix::identity(2)).unwrap();
        assert_eq!((p.len(), m.len()), (0, 2));
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let (p, m) = eigenspace_split(&swap).unwrap();
        assert_eq!((p, m), (vec![v(&[1, 1])], vec![v(&[1, -1])]));
        assert!(matches!(
            eigenspace_split(&Matrix::from_i64(&[&[1, 1], &[0, 1]])),
            Err(Error::NotInvolution)
        ));
    }

    #[test]
    fn bareiss_agrees_on_small_case() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_bareiss(), 2);
    }
}
