use num_traits::Zero;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Reducer, Scalar, SparseVec};

/// A subalgebra `h ⊂ g` given by basis vectors in `g`, together with its
/// induced structure constants (and induced involution when `g` carries one
/// that preserves `h`).
#[derive(Clone, Debug)]
pub struct Subalgebra {
    basis: Vec<SparseVec>,
    algebra: LieAlgebra,
}

impl Subalgebra {
    pub fn new(g: &LieAlgebra, name: impl Into<String>, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let n = g.dim();
        let basis: Vec<SparseVec> = vectors
            .iter()
            .map(|v| {
                if v.len() != n {
                    return Err(Error::Validation(format!(
                        "subalgebra vector has length {}, expected {n}",
                        v.len()
                    )));
                }
                Ok(SparseVec::from_dense(v))
            })
            .collect::<Result<_>>()?;
        let mut red = Reducer::tracking();
        for v in &basis {
            if red.insert(v).is_dependent() {
                return Err(Error::Validation(
                    "subalgebra basis vectors are linearly dependent".into(),
                ));
            }
        }
        let solve = |v: &SparseVec, what: &str| {
            red.solve(v)
                .ok_or_else(|| Error::Validation(format!("span is not {what}")))
        };
        let mut triples = Vec::new();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let b = g.bracket_vec(&basis[i], &basis[j]);
                let c = solve(&b, "closed under the bracket")?;
                if !c.is_zero() {
                    triples.push((i, j, c));
                }
            }
        }
        let names = (0..basis.len()).map(|i| format!("F{i}")).collect();
        let mut algebra = LieAlgebra::from_brackets(name, names, &triples)?;
        if let Some(theta) = g.theta() {
            let cols = basis
                .iter()
                .map(|v| solve(&theta.mul_sparse(v), "stable under the involution"))
                .collect::<Result<Vec<_>>>()?;
            algebra = algebra.with_theta(Matrix::from_columns(basis.len(), &cols))?;
        }
        Ok(Self { basis, algebra })
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        Self::new(g, "0", &[]).expect("zero subalgebra")
    }

    /// `h = g` with the standard basis.
    pub fn whole(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .map(|i| SparseVec::unit(i).to_dense(n))
            .collect();
        let mut s = Self::new(g, g.name(), &vectors).expect("g is a subalgebra of itself");
        s.algebra = g.clone();
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_dense(&self, ambient_dim: usize) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|v| v.to_dense(ambient_dim)).collect()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The fixed part `h^θ` as a subalgebra of `g`.
    pub fn fixed_part(&self, g: &LieAlgebra, name: impl Into<String>) -> Result<Subalgebra> {
        let theta = self
            .algebra
            .theta()
            .ok_or_else(|| Error::Validation("no involution attached".into()))?;
        let k = self.dim();
        let id = Matrix::identity(k);
        let n = g.dim();
        let vectors: Vec<Vec<Scalar>> = (theta - &id)
            .kernel_basis()
            .into_iter()
            .map(|c| {
                let mut v = SparseVec::new();
                for (i, x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        v = v.add_scaled(x, &self.basis[i]);
                    }
                }
                v.to_dense(n)
            })
            .collect();
        Subalgebra::new(g, name, &vectors)
    }

    /// Matrix `dim g × dim h` whose columns are the basis vectors.
    pub fn inclusion(&self, ambient_dim: usize) -> Matrix {
        Matrix::from_columns(ambient_dim, &self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::linalg::int;

    #[test]
    fn so2_in_sl2() {
        let g = catalog::sl(2).unwrap();
        let h = Subalgebra::new(&g, "so2", &[vec![int(0), int(1), int(-1)]]).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.algebra().is_abelian());
        assert_eq!(h.algebra().theta().unwrap(), &Matrix::identity(1));
        assert_eq!(h.fixed_part(&g, "k").unwrap().dim(), 1);
    }

    #[test]
    fn split_torus_has_trivial_fixed_part() {
        let g = catalog::sl(2).unwrap();
        let h = Subalgebra::new(&g, "so11", &[vec![int(1), int(0), int(0)]]).unwrap();
        assert_eq!(h.algebra().theta().unwrap(), &Matrix::from_i64(&[&[-1]]));
        assert_eq!(h.fixed_part(&g, "k").unwrap().dim(), 0);
    }

    #[test]
    fn rejects_non_subalgebras() {
        let g = catalog::sl(2).unwrap();
        assert!(Subalgebra::new(&g, "x", &[vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]).is_err());
        // span(e) is a subalgebra but not θ-stable
        assert!(Subalgebra::new(&g, "x", &[vec![int(0), int(1), int(0)]]).is_err());
        assert!(Subalgebra::new(&g, "x", &[vec![int(1), int(0), int(0)], vec![int(2), int(0), int(0)]]).is_err());
    }
}
