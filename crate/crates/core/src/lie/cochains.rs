use std::sync::Arc;

use num_traits::Zero;

use super::{LieAlgebra, Subalgebra};
use crate::complex::CochainComplex;
use crate::error::Result;
use crate::graded::{AlgebraMap, Derivation, GeneratorSet, GradedElement, Monomial};
use crate::invariant::joint_kernel;
use crate::linalg::{Matrix, Scalar, SparseVec};

/// `Λ g*`: one odd degree-1 generator `b*` per basis element `b`.
pub fn dual_generators(g: &LieAlgebra) -> Arc<GeneratorSet> {
    GeneratorSet::new(
        g.basis_names().iter().map(|b| (format!("{b}*"), 1)).collect(),
        vec![],
    )
    .expect("distinct basis names")
}

/// Degree-0 derivation acting on the generator block starting at `start`
/// by `m` (column `j` is the image of generator `start + j`) and by zero
/// elsewhere.
pub fn linear_derivation(ambient: &Arc<GeneratorSet>, blocks: &[(usize, &Matrix)]) -> Derivation {
    let mut images = vec![GradedElement::zero(ambient); ambient.len()];
    for (start, m) in blocks {
        for j in 0..m.cols() {
            images[start + j] = block_image(ambient, *start, &m.column(j));
        }
    }
    Derivation::new(ambient, 0, images)
}

/// Algebra endomorphism acting on generator blocks by matrices and as the
/// identity elsewhere.
pub fn linear_algebra_map(ambient: &Arc<GeneratorSet>, blocks: &[(usize, &Matrix)]) -> AlgebraMap {
    let mut images: Vec<GradedElement> = (0..ambient.len())
        .map(|i| GradedElement::generator(ambient, i))
        .collect();
    for (start, m) in blocks {
        for j in 0..m.cols() {
            images[start + j] = block_image(ambient, *start, &m.column(j));
        }
    }
    AlgebraMap::new(ambient, ambient, images)
}

fn block_image(ambient: &Arc<GeneratorSet>, start: usize, col: &SparseVec) -> GradedElement {
    GradedElement::from_terms(
        ambient,
        col.entries()
            .iter()
            .map(|(i, c)| (Monomial::generator(ambient, start + i), c.clone())),
    )
}

/// Restriction of linear functionals along `h ⊂ g`, extended to an algebra
/// map: generator `k` of `src` (dual to the `k`-th basis vector of `g`) goes to
/// `Σ_j (F_j)_k y^j`, where `F_j` are the given vectors and `y^j` the
/// generators of `dst`. Works for forms and for shifted polynomials alike.
pub fn dual_restriction(
    src: &Arc<GeneratorSet>,
    dst: &Arc<GeneratorSet>,
    vectors: &[SparseVec],
) -> AlgebraMap {
    let mut images = vec![GradedElement::zero(dst); src.len()];
    for (j, f) in vectors.iter().enumerate() {
        for (k, c) in f.entries() {
            images[*k].add_term(Monomial::generator(dst, j), c.clone());
        }
    }
    AlgebraMap::new(src, dst, images)
}

/// The Chevalley–Eilenberg differential on the `g*` block (generators
/// `0..dim g`): `d x^k = Σ_{i<j} c_{ij}^k x^i ∧ x^j`, i.e.
/// `(dα)(X, Y) = α([X, Y])` on 1-forms. Other generators map to zero.
pub fn ce_derivation(g: &LieAlgebra, ambient: &Arc<GeneratorSet>) -> Derivation {
    let n = g.dim();
    let mut images = vec![GradedElement::zero(ambient); ambient.len()];
    for (i, j, v) in g.bracket_triples() {
        let (m, neg) = Monomial::generator(ambient, i)
            .mul(&Monomial::generator(ambient, j))
            .expect("distinct generators");
        debug_assert!(!neg);
        for (k, c) in v.entries() {
            images[*k].add_term(m.clone(), c.clone());
        }
    }
    debug_assert!(n <= ambient.n_odd());
    Derivation::new(ambient, 1, images)
}

/// Matrix of the Lie derivative `L(x) = ι(x) d + d ι(x)` on `g*`
/// coordinates: `L(X_a) x^k = Σ_j c_{aj}^k x^j`.
pub fn coadjoint_matrix(g: &LieAlgebra, x: &[Scalar]) -> Matrix {
    g.ad_of(x).transpose()
}

/// `L(x)` on the `g*` block at the start of `ambient`.
pub fn lie_derivative(g: &LieAlgebra, ambient: &Arc<GeneratorSet>, x: &[Scalar]) -> Derivation {
    linear_derivation(ambient, &[(0, &coadjoint_matrix(g, x))])
}

/// `ι(x)` on the `g*` block at the start of `ambient`.
pub fn interior(ambient: &Arc<GeneratorSet>, x: &[Scalar]) -> Derivation {
    let mut alpha = vec![Scalar::zero(); ambient.n_odd()];
    alpha[..x.len()].clone_from_slice(x);
    Derivation::interior(ambient, &alpha).expect("degree-1 block")
}

/// `θ` acting on `Λ g*` by `(θα)(X) = α(θX)`.
pub fn theta_on_forms(theta: &Matrix, ambient: &Arc<GeneratorSet>) -> AlgebraMap {
    linear_algebra_map(ambient, &[(0, &theta.transpose())])
}

/// The full Chevalley–Eilenberg complex `Λ g*` in degrees `0..=dim g`.
pub fn ce_complex(g: &LieAlgebra) -> Result<CochainComplex> {
    let a = dual_generators(g);
    let d = ce_derivation(g, &a);
    CochainComplex::full(&a, &d, g.dim() as u32)
}

/// Horizontal `h`-invariant forms of degree `n`: the joint kernel of `ι(F)`
/// and `L(F)` for `F` in a basis of `h`.
pub fn relative_cochains(
    g: &LieAlgebra,
    h: &Subalgebra,
    ambient: &Arc<GeneratorSet>,
    n: u32,
) -> Vec<GradedElement> {
    let mut constraints = Vec::new();
    for f in h.basis_dense(g.dim()) {
        constraints.push(lie_derivative(g, ambient, &f));
        constraints.push(interior(ambient, &f));
    }
    joint_kernel(ambient, n, &constraints)
}

/// The relative complex `(Λ(g/h)*)^h` in degrees `0..=top+1`.
pub fn relative_complex(g: &LieAlgebra, h: &Subalgebra, top: u32) -> Result<CochainComplex> {
    let a = dual_generators(g);
    let d = ce_derivation(g, &a);
    let bases = (0..=top + 1)
        .map(|n| relative_cochains(g, h, &a, n))
        .collect();
    CochainComplex::span(&a, bases, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedElement as E;
    use crate::lie::catalog;
    use crate::linalg::int;

    #[test]
    fn sl2_differential_examples() {
        let g = catalog::sl(2).unwrap();
        let a = dual_generators(&g);
        let d = ce_derivation(&g, &a);
        let x = |i| E::generator(&a, i);
        assert_eq!(d.apply(&x(0)), x(1).mul(&x(2)));
        assert_eq!(d.apply(&x(1)), x(0).mul(&x(1)).scaled(&int(2)));
        assert_eq!(d.apply(&x(2)), x(0).mul(&x(2)).scaled(&int(-2)));
        assert!(d.apply(&x(1).mul(&x(2))).is_zero());
    }

    #[test]
    fn cartan_identity_for_lie_derivative() {
        let g = catalog::sl(3).unwrap();
        let a = dual_generators(&g);
        let d = ce_derivation(&g, &a);
        let x: Vec<Scalar> = (0..8).map(|i| int(i as i64 - 3)).collect();
        let l = lie_derivative(&g, &a, &x);
        let i = interior(&a, &x);
        for k in 0..8 {
            let v = E::generator(&a, k);
            let cartan = i.apply(&d.apply(&v)).plus(&d.apply(&i.apply(&v)));
            assert_eq!(l.apply(&v), cartan);
        }
    }

    #[test]
    fn ce_cohomology_examples() {
        let g = catalog::sl(2).unwrap();
        let c = ce_complex(&g).unwrap();
        assert!(c.d_squared_vanishes());
        assert_eq!(c.cohomology().dims, vec![1, 0, 0, 1]);
        let ab = LieAlgebra::abelian("a", 4, "a");
        assert_eq!(ce_complex(&ab).unwrap().cohomology().dims, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn relative_examples() {
        let g = catalog::sl(2).unwrap();
        let so2 = Subalgebra::new(&g, "so2", &[vec![int(0), int(1), int(-1)]]).unwrap();
        let c = relative_complex(&g, &so2, 2).unwrap();
        assert_eq!((0..3).map(|n| c.dim(n)).collect::<Vec<_>>(), vec![1, 0, 1]);
        assert_eq!(c.cohomology().dims, vec![1, 0, 1]);
        let so11 = Subalgebra::new(&g, "so11", &[vec![int(1), int(0), int(0)]]).unwrap();
        let c = relative_complex(&g, &so11, 2).unwrap();
        let a = c.ambient().clone();
        assert_eq!(c.basis(2), vec![E::generator(&a, 1).mul(&E::generator(&a, 2))]);
        let zero = Subalgebra::zero(&g);
        assert_eq!(relative_complex(&g, &zero, 3).unwrap().cohomology().dims, vec![1, 0, 0, 1]);
    }
}
