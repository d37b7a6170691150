use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseVec};

/// Finite-dimensional Lie algebra over the rationals given by structure
/// constants `[X_i, X_j] = Σ_k c_{ij}^k X_k`, optionally carrying an
/// involutive automorphism, a declared rank and an invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    brackets: Vec<Vec<SparseVec>>,
    ad: Vec<Matrix>,
    rank: Option<usize>,
    form: Option<Matrix>,
    theta: Option<Matrix>,
}

impl LieAlgebra {
    /// Builds an algebra from bracket triples `(i, j, [X_i, X_j])`. Missing
    /// `[X_j, X_i]` entries are filled in by antisymmetry; given ones must agree.
    pub fn from_brackets(
        name: impl Into<String>,
        basis: Vec<String>,
        triples: &[(usize, usize, SparseVec)],
    ) -> Result<Self> {
        let g = Self::from_brackets_unchecked(name, basis, triples)?;
        if let Some((i, j, k)) = g.check_jacobi() {
            return Err(Error::Jacobi(i, j, k));
        }
        Ok(g)
    }

    /// As [`LieAlgebra::from_brackets`] without the Jacobi check.
    pub fn from_brackets_unchecked(
        name: impl Into<String>,
        basis: Vec<String>,
        triples: &[(usize, usize, SparseVec)],
    ) -> Result<Self> {
        let n = basis.len();
        let mut given: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, v) in triples {
            if *i >= n || *j >= n || v.max_index().is_some_and(|k| k >= n) {
                return Err(Error::Validation(format!(
                    "bracket [{i}, {j}] refers to a basis index outside 0..{n}"
                )));
            }
            if i == j && !v.is_zero() {
                return Err(Error::Validation(format!("[X_{i}, X_{i}] must vanish")));
            }
            if given.insert((*i, *j), v.clone()).is_some() {
                return Err(Error::Validation(format!("bracket [{i}, {j}] given twice")));
            }
        }
        let mut brackets = vec![vec![SparseVec::new(); n]; n];
        for (&(i, j), v) in &given {
            let neg = v.scaled(&-Scalar::one());
            if let Some(w) = given.get(&(j, i)) {
                if *w != neg {
                    return Err(Error::Validation(format!(
                        "brackets [{i}, {j}] and [{j}, {i}] are not antisymmetric"
                    )));
                }
            }
            brackets[i][j] = v.clone();
            brackets[j][i] = neg;
        }
        let ad = (0..n)
            .map(|i| Matrix::from_columns(n, &brackets[i]))
            .collect();
        Ok(Self {
            name: name.into(),
            basis,
            brackets,
            ad,
            rank: None,
            form: None,
            theta: None,
        })
    }

    /// Abelian algebra of dimension `n` with basis `prefix0, prefix1, ...`.
    pub fn abelian(name: impl Into<String>, n: usize, prefix: &str) -> Self {
        let basis = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Self::from_brackets(name, basis, &[]).expect("abelian algebra")
    }

    /// First failing basis triple `i < j < k` of the Jacobi identity.
    pub fn check_jacobi(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_vec(&SparseVec::unit(i), &self.brackets[j][k]);
                    let b = self.bracket_vec(&SparseVec::unit(j), &self.brackets[k][i]);
                    let c = self.bracket_vec(&SparseVec::unit(k), &self.brackets[i][j]);
                    let one = Scalar::one();
                    if !a.add_scaled(&one, &b).add_scaled(&one, &c).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// `[X_i, X_j]` in basis coordinates.
    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                out = out.add_scaled(&(a * b), &self.brackets[*i][*j]);
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket_vec(&SparseVec::from_dense(x), &SparseVec::from_dense(y))
            .to_dense(self.dim())
    }

    /// Matrix of `ad(X_i)`.
    pub fn ad(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    /// Matrix of `ad(x)` for an arbitrary element.
    pub fn ad_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.ad[i].scaled(c);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().all(SparseVec::is_zero)
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let p = &self.ad[i] * &self.ad[j];
                let tr: Scalar = (0..n).map(|t| p.get(t, t).clone()).sum();
                k.set(i, j, tr.clone());
                k.set(j, i, tr);
            }
        }
        k
    }

    pub fn declared_rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn theta(&self) -> Option<&Matrix> {
        self.theta.as_ref()
    }

    /// Explicit invariant form if one was supplied.
    pub fn explicit_form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    /// The supplied invariant form, or the Killing form.
    pub fn invariant_form(&self) -> Matrix {
        self.form.clone().unwrap_or_else(|| self.killing_form())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }

    /// Attaches `theta`, which must be an involutive automorphism. Column `j`
    /// holds `θ(X_j)`.
    pub fn with_theta(mut self, theta: Matrix) -> Result<Self> {
        let n = self.dim();
        if theta.rows() != n || theta.cols() != n {
            return Err(Error::Validation(format!(
                "involution must be {n}x{n}, got {}x{}",
                theta.rows(),
                theta.cols()
            )));
        }
        if !theta.is_involution() {
            return Err(Error::NotInvolution);
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = theta.mul_sparse(&self.brackets[i][j]);
                let rhs = self.bracket_vec(&theta.column(i), &theta.column(j));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "involution is not an automorphism on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        self.theta = Some(theta);
        Ok(self)
    }

    /// Attaches a symmetric ad-invariant bilinear form.
    pub fn with_form(mut self, form: Matrix) -> Result<Self> {
        let n = self.dim();
        if form.rows() != n || form.cols() != n || form != form.transpose() {
            return Err(Error::Validation("invariant form must be symmetric n x n".into()));
        }
        // B([X_i, y], z) + B(y, [X_i, z]) = 0  <=>  ad_i^T B + B ad_i = 0
        for i in 0..n {
            let a = &self.ad[i];
            if !(&(&a.transpose() * &form) + &(&form * a)).is_zero() {
                return Err(Error::Validation(format!(
                    "form is not invariant under ad of basis element {i}"
                )));
            }
        }
        self.form = Some(form);
        Ok(self)
    }

    /// Direct sum; basis names get `_1` / `_2` suffixes when they collide.
    pub fn direct_sum(&self, other: &LieAlgebra, name: impl Into<String>) -> Result<Self> {
        let (n, m) = (self.dim(), other.dim());
        let clash = self.basis.iter().any(|b| other.basis.contains(b));
        let rename = |b: &String, s: &str| if clash { format!("{b}_{s}") } else { b.clone() };
        let basis: Vec<String> = self
            .basis
            .iter()
            .map(|b| rename(b, "1"))
            .chain(other.basis.iter().map(|b| rename(b, "2")))
            .collect();
        let shift = |v: &SparseVec| {
            SparseVec::from_pairs(v.entries().iter().map(|(k, c)| (k + n, c.clone())))
        };
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                triples.push((i, j, self.brackets[i][j].clone()));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                triples.push((i + n, j + n, shift(&other.brackets[i][j])));
            }
        }
        let mut g = Self::from_brackets(name, basis, &triples)?;
        if let (Some(a), Some(b)) = (self.rank, other.rank) {
            g.rank = Some(a + b);
        }
        let block = |a: &Matrix, b: &Matrix| {
            let mut out = Matrix::zeros(n + m, n + m);
            for i in 0..n {
                for j in 0..n {
                    out.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out.set(i + n, j + n, b.get(i, j).clone());
                }
            }
            out
        };
        if self.form.is_some() || other.form.is_some() {
            g = g.with_form(block(&self.invariant_form(), &other.invariant_form()))?;
        }
        if self.theta.is_some() || other.theta.is_some() {
            let ta = self.theta.clone().unwrap_or_else(|| Matrix::identity(n));
            let tb = other.theta.clone().unwrap_or_else(|| Matrix::identity(m));
            g = g.with_theta(block(&ta, &tb))?;
        }
        Ok(g)
    }

    /// Bracket triples `(i, j, [X_i, X_j])` for `i < j` with nonzero bracket.
    pub fn bracket_triples(&self) -> Vec<(usize, usize, SparseVec)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.brackets[i][j].is_zero() {
                    out.push((i, j, self.brackets[i][j].clone()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn sl2_triples(c_he: i64) -> Vec<(usize, usize, SparseVec)> {
        vec![
            (0, 1, SparseVec::from_pairs([(1, int(c_he))])),
            (0, 2, SparseVec::from_pairs([(2, int(-2))])),
            (1, 2, SparseVec::from_pairs([(0, int(1))])),
        ]
    }

    fn names() -> Vec<String> {
        vec!["h".into(), "e".into(), "f".into()]
    }

    #[test]
    fn jacobi_pass_and_fail() {
        assert!(LieAlgebra::from_brackets("sl2", names(), &sl2_triples(2)).is_ok());
        assert!(LieAlgebra::abelian("a", 4, "a").check_jacobi().is_none());
        let bad = LieAlgebra::from_brackets_unchecked("bad", names(), &sl2_triples(3)).unwrap();
        assert_eq!(bad.check_jacobi(), Some((0, 1, 2)));
        assert!(matches!(
            LieAlgebra::from_brackets("bad", names(), &sl2_triples(3)),
            Err(Error::Jacobi(0, 1, 2))
        ));
    }

    #[test]
    fn antisymmetry_is_enforced() {
        let mut t = sl2_triples(2);
        t.push((1, 0, SparseVec::from_pairs([(1, int(2))])));
        assert!(LieAlgebra::from_brackets("x", names(), &t).is_err());
        let mut t = sl2_triples(2);
        t.push((1, 0, SparseVec::from_pairs([(1, int(-2))])));
        assert!(LieAlgebra::from_brackets("x", names(), &t).is_ok());
    }

    #[test]
    fn killing_form_of_sl2() {
        let g = LieAlgebra::from_brackets("sl2", names(), &sl2_triples(2)).unwrap();
        let k = g.killing_form();
        assert_eq!(k, Matrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]));
        assert!(g.clone().with_form(k).is_ok());
        assert!(g.with_form(Matrix::identity(3)).is_err());
    }

    #[test]
    fn theta_must_be_automorphism() {
        let g = LieAlgebra::from_brackets("sl2", names(), &sl2_triples(2)).unwrap();
        let cartan = Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]]);
        assert!(g.clone().with_theta(cartan).is_ok());
        let swap = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(matches!(g.clone().with_theta(swap), Err(Error::Validation(_))));
        let not_inv = Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        assert!(matches!(g.with_theta(not_inv), Err(Error::NotInvolution)));
    }
}
