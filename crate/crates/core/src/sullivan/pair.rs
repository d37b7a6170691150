use std::sync::Arc;

use num_traits::Zero;

use super::{induced_ranks, PureSullivan, RelativeModel};
use crate::cartan::CartanModel;
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::graded::{basis_of_degree, AlgebraMap, ElementSpan, GradedElement, Monomial};
use crate::lie::cochains::{dual_restriction, relative_complex};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{kernel_of_columns, Reducer, Scalar, SparseVec};
use crate::transgression::{build_transgression, Transgression};

/// Coordinates of the basis of `k` in the basis of `h` (both inside `g`).
pub fn coordinates_in(h: &Subalgebra, k: &Subalgebra) -> Result<Vec<SparseVec>> {
    let mut red = Reducer::tracking();
    for v in h.basis() {
        red.insert(v);
    }
    k.basis()
        .iter()
        .map(|v| {
            red.solve(v)
                .ok_or_else(|| Error::Validation("subalgebra is not contained in h".into()))
        })
        .collect()
}

/// `k ⊂ h` re-expressed as a subalgebra of the abstract algebra of `h`.
pub fn nested_subalgebra(h: &Subalgebra, k: &Subalgebra, name: &str) -> Result<Subalgebra> {
    let coords = coordinates_in(h, k)?;
    let vectors: Vec<Vec<Scalar>> = coords.iter().map(|c| c.to_dense(h.dim())).collect();
    Subalgebra::new(h.algebra(), name, &vectors)
}

/// The pure Sullivan model `(Λ P_{g*} ⊗ S sP_{h*}, −δ)` of a reductive
/// pair, with `S sP_{h*}` identified with `(S sh*)^h` through `sτ_h` and
/// `δ(α) = (sτ_h)^{-1}(τ_g(α)|_h)`.
#[derive(Clone, Debug)]
pub struct PairModel {
    g: LieAlgebra,
    h: Subalgebra,
    tg: Arc<Transgression>,
    th: Arc<Transgression>,
    restriction: AlgebraMap,
    model: PureSullivan,
}

impl PairModel {
    /// `u_prefix` and `v_prefix` name the generators for `P_{g*}` and `P_{h*}`.
    pub fn new(
        g: &LieAlgebra,
        h: &Subalgebra,
        tg: Arc<Transgression>,
        th: Arc<Transgression>,
        u_prefix: &str,
        v_prefix: &str,
    ) -> Result<Self> {
        let restriction = dual_restriction(
            tg.polynomials().ambient(),
            th.polynomials().ambient(),
            h.basis(),
        );
        let u = tg.primitives().generators(u_prefix);
        let v = th.primitives().generators(v_prefix);
        let sv = v.suspension()?;
        let f = tg
            .tau()
            .iter()
            .map(|t| th.sym_tau_inverse(&sv, &restriction.apply(t)))
            .collect::<Result<Vec<_>>>()?;
        let model = PureSullivan::new(&u, &v, f)?;
        Ok(Self {
            g: g.clone(),
            h: h.clone(),
            tg,
            th,
            restriction,
            model,
        })
    }

    /// Builds both transgressions, with polynomials on `h` up to the shifted
    /// degree of the top transgression of `g`.
    pub fn build(g: &LieAlgebra, h: &Subalgebra) -> Result<Self> {
        let tg = Arc::new(build_transgression(g, None)?);
        let th = Arc::new(build_transgression(h.algebra(), Some(tg.cap()))?);
        Self::new(g, h, tg, th, "a", "b")
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn h(&self) -> &Subalgebra {
        &self.h
    }

    pub fn tg(&self) -> &Arc<Transgression> {
        &self.tg
    }

    pub fn th(&self) -> &Arc<Transgression> {
        &self.th
    }

    pub fn model(&self) -> &PureSullivan {
        &self.model
    }

    /// `dim g − dim h + 1`.
    pub fn default_cap(&self) -> u32 {
        (self.g.dim() - self.h.dim() + 1) as u32
    }

    /// `(S sg*) → (S sh*)`.
    pub fn restriction(&self) -> &AlgebraMap {
        &self.restriction
    }

    pub fn cohomology_dims(&self, cap: u32) -> Result<Vec<usize>> {
        self.model.cohomology_dims(cap)
    }

    /// `dim H^n(g, h)` from the relative Chevalley–Eilenberg complex.
    pub fn relative_dims(&self, cap: u32) -> Result<Vec<usize>> {
        Ok(relative_complex(&self.g, &self.h, cap)?.cohomology().dims)
    }

    /// `sτ_h : S sP_{h*} → (S sh*)^h` on an element of the model's `S sV`.
    pub fn sym_tau_h(&self, q: &GradedElement) -> GradedElement {
        let sv = self.model.sv();
        let polys = self.th.polynomials().ambient();
        let mut out = GradedElement::zero(polys);
        for (m, c) in q.rebase(sv).terms() {
            let mut img = GradedElement::one(polys);
            for (j, e) in m.even.iter().enumerate() {
                if *e > 0 {
                    img = img.mul(&self.th.tau()[j].pow(*e as u32));
                }
            }
            out.add_scaled(c, &img);
        }
        out
    }

    /// The Chevalley map `ϑ_Ω` into the Cartan model of `(g, h)`:
    /// `α ↦ α ⊗ 1 + (1 ⊗ res)(Ω(α))` and `sβ ↦ 1 ⊗ τ_h(β)`.
    pub fn chevalley(&self, cartan: &CartanModel) -> AlgebraMap {
        let n = self.g.dim();
        let full = self.tg.cartan().model().ambient();
        let target = cartan.ambient();
        let mut images: Vec<GradedElement> =
            (0..n).map(|k| GradedElement::generator(target, k)).collect();
        for k in 0..n {
            let mut img = GradedElement::zero(target);
            for (j, f) in self.h.basis().iter().enumerate() {
                let c = f.get(k);
                if !c.is_zero() {
                    img.add_term(Monomial::generator(target, n + j), c);
                }
            }
            images.push(img);
        }
        let restrict = AlgebraMap::new(full, target, images);
        let eps = cartan.epsilon();
        let weil = cartan.weil();
        let mut out: Vec<GradedElement> = self
            .tg
            .primitives()
            .basis()
            .iter()
            .zip(self.tg.omega())
            .map(|(alpha, omega)| eps.apply(alpha).plus(&restrict.apply(omega)))
            .collect();
        out.extend(
            self.th
                .tau()
                .iter()
                .map(|t| weil.apply(&t.rebase(cartan.polynomials()))),
        );
        AlgebraMap::new(self.model.ambient(), target, out)
    }

    /// `ϑ_Ω` commutes with the differentials. Both sides are derivations
    /// composed with an algebra map, so generators suffice.
    pub fn chevalley_is_chain_map(&self, cartan: &CartanModel, theta: &AlgebraMap) -> bool {
        let d = cartan.differential();
        let dm = self.model.differential();
        (0..self.model.ambient().len()).all(|i| {
            let x = GradedElement::generator(self.model.ambient(), i);
            d.apply(&theta.apply(&x)) == theta.apply(&dm.apply(&x))
        })
    }

    /// Ranks of `ϑ_Ω` on cohomology against the dimensions on both sides.
    pub fn chevalley_is_quasi_isomorphism(&self, cap: u32) -> Result<bool> {
        let cartan = CartanModel::new(&self.g, &self.h);
        let theta = self.chevalley(&cartan);
        if !self.chevalley_is_chain_map(&cartan, &theta) {
            return Ok(false);
        }
        let src = self.model.complex(cap)?;
        let tgt: CochainComplex = cartan.complex(cap)?;
        let ranks = induced_ranks(&src, &tgt, |x| theta.apply(x), cap)?;
        let a = src.cohomology().dims;
        let b = tgt.cohomology().dims;
        Ok(ranks == a && a == b)
    }

    /// `ker w′` in degree `n`, inside `(S sh*)^h`: invariant polynomials `Q`
    /// with `1 ⊗ Q` a coboundary of the model.
    pub fn chern_weil_kernel(&self, complex: &CochainComplex, n: u32) -> Result<Vec<GradedElement>> {
        let sv = self.model.sv();
        let monomials = basis_of_degree(sv, n);
        if monomials.is_empty() {
            return Ok(Vec::new());
        }
        let mut red = Reducer::new();
        if n > 0 {
            for c in complex.differential(n as usize - 1).columns() {
                red.insert(c);
            }
        }
        let residuals = monomials
            .iter()
            .map(|m| {
                let q = GradedElement::monomial(sv, m.clone(), Scalar::from_integer(1.into()));
                let coords = complex
                    .coords(n as usize, &self.model.embed_polynomial(&q))
                    .ok_or_else(|| Error::Invariant("1 ⊗ Q outside the model".into()))?;
                Ok(red.reduce(&coords).0)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(kernel_of_columns(&residuals)
            .iter()
            .map(|c| {
                let q = GradedElement::from_terms(
                    sv,
                    c.entries().iter().map(|(i, x)| (monomials[*i].clone(), x.clone())),
                );
                self.sym_tau_h(&q)
            })
            .collect())
    }

    /// The ideal `(S⁺ sg*)^g|_h · (S sh*)^h` in degree `n`.
    pub fn restricted_ideal(&self, n: u32) -> Vec<GradedElement> {
        let gp = self.tg.polynomials();
        let hp = self.th.polynomials();
        let mut out = Vec::new();
        for k in (2..=n).step_by(2) {
            if k > gp.cap() || n - k > hp.cap() {
                continue;
            }
            for p in gp.basis(k) {
                let rp = self.restriction.apply(p);
                if rp.is_zero() {
                    continue;
                }
                for q in hp.basis(n - k) {
                    out.push(rp.mul(q));
                }
            }
        }
        out
    }

    /// `ker w′ = (S⁺ sg*)^g|_h · (S sh*)^h` in every even degree `≤ cap`,
    /// both containments checked.
    pub fn chern_weil_kernel_is_ideal(&self, cap: u32) -> Result<bool> {
        let hp = self.th.polynomials();
        if cap > hp.cap() || cap > self.tg.polynomials().cap() {
            return Err(Error::Invariant(format!(
                "invariant polynomials are only known up to degree {}",
                hp.cap().min(self.tg.polynomials().cap())
            )));
        }
        let complex = self.model.complex(cap)?;
        for n in (0..=cap).step_by(2) {
            let kernel = self.chern_weil_kernel(&complex, n)?;
            let ideal = self.restricted_ideal(n);
            let ks = ElementSpan::from_elements(&kernel);
            let is = ElementSpan::from_elements(&ideal);
            if ks.rank() != kernel.len()
                || !ideal.iter().all(|x| ks.contains(x))
                || !kernel.iter().all(|x| is.contains(x))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The relative model of `1 ⊗ res : model(g, h) → model(g, l)` for
/// `l ⊂ h`, built from the models of `(g, h)` and `(h, l)` that share the
/// generators `P_{h*}`.
pub fn pair_relative_model(gh: &PairModel, hl: &PairModel) -> Result<RelativeModel> {
    let (a, b) = (gh.model(), hl.model());
    if a.v().as_ref() != b.u().as_ref() {
        return Err(Error::Invariant("models do not share the middle generators".into()));
    }
    RelativeModel::new(
        a.u(),
        a.v(),
        b.v(),
        a.f().images().to_vec(),
        b.f().images().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    fn pair(name: &str) -> catalog::Pair {
        catalog::pairs()
            .unwrap()
            .into_iter()
            .find(|p| p.name == name)
            .unwrap()
    }

    #[test]
    fn sl2_so2_model_matches_relative_cohomology() {
        let p = pair("sl2/so2");
        let pm = PairModel::build(&p.g, &p.h).unwrap();
        let cap = pm.default_cap();
        assert_eq!(pm.cohomology_dims(cap).unwrap(), vec![1, 0, 1, 0]);
        assert_eq!(pm.relative_dims(cap).unwrap(), vec![1, 0, 1, 0]);
        let f = pm.model().f().image(0);
        assert!(!f.is_zero());
        assert!(pm.chevalley_is_quasi_isomorphism(cap).unwrap());
        assert!(pm.chern_weil_kernel_is_ideal(cap).unwrap());
    }

    #[test]
    fn whole_algebra_has_trivial_cohomology() {
        let g = catalog::sl(2).unwrap();
        let h = Subalgebra::whole(&g);
        let pm = PairModel::build(&g, &h).unwrap();
        assert_eq!(pm.cohomology_dims(4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn catalog_models_agree_with_relative_complex() {
        for p in catalog::pairs().unwrap() {
            let pm = PairModel::build(&p.g, &p.h).unwrap();
            let cap = pm.default_cap();
            assert_eq!(
                pm.cohomology_dims(cap).unwrap(),
                pm.relative_dims(cap).unwrap(),
                "{}",
                p.name
            );
        }
    }
}
