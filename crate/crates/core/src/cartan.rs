//! The Cartan model `(Λ g* ⊗ S sh*)^h` with differential
//! `d_{g,h} = d ⊗ 1 − Σ_j ι(F_j) ⊗ μ(sF^j)`, the inclusion `ε`, the
//! retraction `ψ_V` and the Chern–Weil map.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::graded::{AlgebraMap, Derivation, GeneratorSet, GradedElement, Monomial};
use crate::invariant::joint_kernel;
use crate::lie::cochains::{ce_derivation, coadjoint_matrix, dual_generators, linear_derivation};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{null_space, Matrix, Scalar, SparseVec};

/// Generators `sF^0, sF^1, …` of degree 2 for the dual of an algebra.
pub fn shifted_dual_generators(h: &LieAlgebra) -> Arc<GeneratorSet> {
    GeneratorSet::new(vec![], shifted_names(h)).expect("distinct names")
}

fn shifted_names(h: &LieAlgebra) -> Vec<(String, u32)> {
    h.basis_names().iter().map(|b| (format!("s{b}*"), 2)).collect()
}

/// Algebra map sending generator `i` of `src` to generator `positions[i]` of `dst`.
pub fn generator_inclusion(
    src: &Arc<GeneratorSet>,
    dst: &Arc<GeneratorSet>,
    positions: &[usize],
) -> AlgebraMap {
    AlgebraMap::new(
        src,
        dst,
        positions
            .iter()
            .map(|p| GradedElement::generator(dst, *p))
            .collect(),
    )
}

/// `h`-equivariant Cartan model of `Λ g*`.
#[derive(Clone, Debug)]
pub struct CartanModel {
    g: LieAlgebra,
    h: Subalgebra,
    ambient: Arc<GeneratorSet>,
    forms: Arc<GeneratorSet>,
    polynomials: Arc<GeneratorSet>,
    d: Derivation,
    actions: Vec<Derivation>,
}

impl CartanModel {
    pub fn new(g: &LieAlgebra, h: &Subalgebra) -> Self {
        let forms = dual_generators(g);
        let polynomials = shifted_dual_generators(h.algebra());
        let (odd, _) = forms.parts();
        let ambient = GeneratorSet::new(odd, shifted_names(h.algebra())).expect("distinct names");
        let n = g.dim();
        let hb = h.basis_dense(n);
        let mut images = ce_derivation(g, &ambient).images().to_vec();
        for (k, img) in images.iter_mut().enumerate().take(n) {
            for (j, f) in hb.iter().enumerate() {
                if !f[k].is_zero() {
                    img.add_term(Monomial::generator(&ambient, n + j), -f[k].clone());
                }
            }
        }
        let d = Derivation::new(&ambient, 1, images);
        let actions = (0..h.dim())
            .map(|j| {
                let on_forms = coadjoint_matrix(g, &hb[j]);
                let mut e = vec![Scalar::zero(); h.dim()];
                e[j] = Scalar::one();
                let on_poly = coadjoint_matrix(h.algebra(), &e);
                linear_derivation(&ambient, &[(0, &on_forms), (n, &on_poly)])
            })
            .collect();
        Self {
            g: g.clone(),
            h: h.clone(),
            ambient,
            forms,
            polynomials,
            d,
            actions,
        }
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn h(&self) -> &Subalgebra {
        &self.h
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    /// The ambient `Λ g*` of plain forms.
    pub fn forms(&self) -> &Arc<GeneratorSet> {
        &self.forms
    }

    /// The ambient `S sh*` of polynomials on `h`.
    pub fn polynomials(&self) -> &Arc<GeneratorSet> {
        &self.polynomials
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    /// The action of the `h` basis on the model.
    pub fn actions(&self) -> &[Derivation] {
        &self.actions
    }

    pub fn invariant_basis(&self, n: u32) -> Vec<GradedElement> {
        joint_kernel(&self.ambient, n, &self.actions)
    }

    pub fn complex(&self, top: u32) -> Result<CochainComplex> {
        let bases = (0..=top + 1).map(|n| self.invariant_basis(n)).collect();
        CochainComplex::span(&self.ambient, bases, &self.d)
    }

    /// `ε(α) = α ⊗ 1`.
    pub fn epsilon(&self) -> AlgebraMap {
        let positions: Vec<usize> = (0..self.g.dim()).collect();
        generator_inclusion(&self.forms, &self.ambient, &positions)
    }

    /// `Q ↦ 1 ⊗ Q` from `S sh*` into the model.
    pub fn weil(&self) -> AlgebraMap {
        let n = self.g.dim();
        let positions: Vec<usize> = (0..self.h.dim()).map(|j| n + j).collect();
        generator_inclusion(&self.polynomials, &self.ambient, &positions)
    }

    pub fn is_invariant(&self, x: &GradedElement) -> bool {
        self.actions.iter().all(|a| a.apply(x).is_zero())
    }
}

/// An `h`-invariant complement `V` of `h` in `g`, with the projections of
/// `g = h ⊕ V`.
#[derive(Clone, Debug)]
pub struct Complement {
    vectors: Vec<Vec<Scalar>>,
    onto_v: Matrix,
    h_coords: Matrix,
}

impl Complement {
    /// The orthogonal complement of `h` under `B_θ(x, y) = −B(x, θy)`, with
    /// `B` the invariant form of `g` (and `θ = 1` if none is attached).
    pub fn orthogonal(g: &LieAlgebra, h: &Subalgebra) -> Result<Self> {
        let n = g.dim();
        let b = g.invariant_form();
        let theta = g.theta().cloned().unwrap_or_else(|| Matrix::identity(n));
        let rows: Vec<SparseVec> = h
            .basis()
            .iter()
            .map(|f| {
                let tf = theta.mul_sparse(f).to_dense(n);
                SparseVec::from_dense(&b.mul_vec(&tf))
            })
            .collect();
        let vectors: Vec<Vec<Scalar>> = null_space(&rows, n)
            .iter()
            .map(|v| v.to_dense(n))
            .collect();
        Self::from_vectors(g, h, vectors).map_err(|_| {
            Error::Validation(
                "the form B_θ degenerates on h; supply an invariant complement explicitly".into(),
            )
        })
    }

    /// A user-supplied complement; must be transversal to `h` and `h`-stable.
    pub fn from_vectors(g: &LieAlgebra, h: &Subalgebra, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = g.dim();
        let k = h.dim();
        if vectors.len() + k != n {
            return Err(Error::Validation(format!(
                "complement has dimension {}, expected {}",
                vectors.len(),
                n - k
            )));
        }
        let mut cols: Vec<SparseVec> = h.basis().to_vec();
        cols.extend(vectors.iter().map(|v| SparseVec::from_dense(v)));
        let m = Matrix::from_columns(n, &cols);
        if m.rank() != n {
            return Err(Error::Validation("complement is not transversal to h".into()));
        }
        let mut inv_cols = Vec::with_capacity(n);
        for i in 0..n {
            let e = SparseVec::unit(i).to_dense(n);
            inv_cols.push(SparseVec::from_dense(&m.solve(&e).expect("invertible")));
        }
        let inv = Matrix::from_columns(n, &inv_cols);
        let mut h_coords = Matrix::zeros(k, n);
        let mut v_coords = Matrix::zeros(n - k, n);
        for j in 0..n {
            for i in 0..k {
                h_coords.set(i, j, inv.get(i, j).clone());
            }
            for i in k..n {
                v_coords.set(i - k, j, inv.get(i, j).clone());
            }
        }
        let vmat = Matrix::from_columns(n, &cols[k..]);
        let onto_v = &vmat * &v_coords;
        // h-stability: [F, v] has no h-component.
        for f in h.basis() {
            for v in &vectors {
                let br = g.bracket_vec(f, &SparseVec::from_dense(v)).to_dense(n);
                if h_coords.mul_vec(&br).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Validation("complement is not h-stable".into()));
                }
            }
        }
        Ok(Self {
            vectors,
            onto_v,
            h_coords,
        })
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// Projection `P_V : g → V ⊂ g` along `h`.
    pub fn projection(&self) -> &Matrix {
        &self.onto_v
    }

    /// Coordinates in the `h` basis of the `h`-component.
    pub fn h_coordinates(&self) -> &Matrix {
        &self.h_coords
    }
}

/// `ψ_V : Λ g* ⊗ S sh* → Λ g*`, `α ⊗ sQ ↦ π_V(α) ∧ χ(sQ)` with
/// `χ(sF) = F([·, ·])` on `V`. The sign matches the differential of
/// [`crate::lie::cochains::ce_derivation`]: on an invariant 1-form `α` with
/// `α(F) = 1`, `ψ_V(d_{g,h} α) = π_V(dα) − χ(sF)` must vanish.
pub fn psi_v(model: &CartanModel, v: &Complement) -> AlgebraMap {
    let g = model.g();
    let n = g.dim();
    let forms = model.forms();
    let p = v.projection();
    let mut images = Vec::with_capacity(model.ambient().len());
    for k in 0..n {
        // π_V(x^k) = x^k ∘ P_V
        let coeffs: Vec<(usize, Scalar)> = (0..n)
            .filter(|i| !p.get(k, *i).is_zero())
            .map(|i| (i, p.get(k, i).clone()))
            .collect();
        images.push(GradedElement::linear(forms, &coeffs));
    }
    let pv_cols: Vec<SparseVec> = (0..n).map(|i| p.column(i)).collect();
    for j in 0..model.h().dim() {
        let mut chi = GradedElement::zero(forms);
        for a in 0..n {
            for b in a + 1..n {
                let br = g.bracket_vec(&pv_cols[a], &pv_cols[b]).to_dense(n);
                let c = v.h_coordinates().mul_vec(&br)[j].clone();
                if !c.is_zero() {
                    let (m, _) = Monomial::generator(forms, a)
                        .mul(&Monomial::generator(forms, b))
                        .expect("distinct");
                    chi.add_term(m, c);
                }
            }
        }
        images.push(chi);
    }
    AlgebraMap::new(model.ambient(), forms, images)
}

/// Representative of the Chern–Weil class of `Q ∈ (S sh*)^h`: `ψ_V(1 ⊗ Q)`.
pub fn chern_weil(model: &CartanModel, v: &Complement, q: &GradedElement) -> GradedElement {
    psi_v(model, v).apply(&model.weil().apply(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::lie::cochains::relative_complex;
    use crate::linalg::int;

    fn sl2_so2() -> (LieAlgebra, Subalgebra) {
        let g = catalog::sl(2).unwrap();
        let h = Subalgebra::new(&g, "so2", &[vec![int(0), int(1), int(-1)]]).unwrap();
        (g, h)
    }

    #[test]
    fn trivial_h_gives_ce_complex() {
        let g = catalog::sl(2).unwrap();
        let m = CartanModel::new(&g, &Subalgebra::zero(&g));
        assert_eq!(m.complex(3).unwrap().cohomology().dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn sl2_so2_model() {
        let (g, h) = sl2_so2();
        let m = CartanModel::new(&g, &h);
        let c = m.complex(3).unwrap();
        assert!(c.d_squared_vanishes());
        let sf = GradedElement::generator(m.ambient(), 3);
        assert!(c.coords(2, &sf).is_some());
        assert!(m.differential().apply(&sf).is_zero());
        assert_eq!(c.cohomology().dims, vec![1, 0, 1, 0]);
    }

    #[test]
    fn psi_is_a_retraction_and_chain_map() {
        let (g, h) = sl2_so2();
        let m = CartanModel::new(&g, &h);
        let v = Complement::orthogonal(&g, &h).unwrap();
        let psi = psi_v(&m, &v);
        let eps = m.epsilon();
        let rel = relative_complex(&g, &h, 3).unwrap();
        let d = ce_derivation(&g, m.forms());
        for n in 0..=3 {
            for a in rel.basis(n) {
                assert_eq!(psi.apply(&eps.apply(&a)), a);
            }
        }
        let cart = m.complex(4).unwrap();
        for n in 0..=4 {
            for x in cart.basis(n) {
                assert_eq!(psi.apply(&m.differential().apply(&x)), d.apply(&psi.apply(&x)));
            }
        }
        let sf = GradedElement::generator(m.polynomials(), 0);
        let cw = chern_weil(&m, &v, &sf);
        assert!(!cw.is_zero());
        assert!(rel.coords(2, &cw).is_some());
    }

    #[test]
    fn degenerate_form_is_reported() {
        // h = span(e) is not θ-stable, so test with a form-free, θ-free algebra instead:
        // the abelian algebra with the zero-form fallback degenerates.
        let g = LieAlgebra::abelian("a", 2, "a");
        let h = Subalgebra::new(&g, "h", &[vec![int(1), int(0)]]).unwrap();
        assert!(matches!(Complement::orthogonal(&g, &h), Err(Error::Validation(_))));
        let v = Complement::from_vectors(&g, &h, vec![vec![int(0), int(1)]]).unwrap();
        assert_eq!(v.projection(), &Matrix::from_i64(&[&[0, 0], &[0, 1]]));
    }
}
