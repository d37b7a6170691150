use std::sync::Arc;

use rayon::prelude::*;

use super::PureSullivan;
use crate::cartan::generator_inclusion;
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::graded::{basis_of_degree, AlgebraMap, Derivation, GeneratorSet, GradedElement, Monomial};
use crate::linalg::{int, Reducer, Scalar};

/// The model `(ΛU ⊗ S sV ⊗ ΛV ⊗ S sW, −δ_f − δ_g + δ_V)` of
/// `1 ⊗ g : (ΛU ⊗ S sV, −δ_f) → (ΛU ⊗ S sW, −δ_gf)`.
///
/// Generators are laid out as odd `U, V` followed by even `sV, sW`.
#[derive(Clone, Debug)]
pub struct RelativeModel {
    source: PureSullivan,
    fiber: PureSullivan,
    target: PureSullivan,
    ambient: Arc<GeneratorSet>,
    delta_f: Derivation,
    delta_g: Derivation,
    delta_v: Derivation,
    delta_gf: Derivation,
    differential: Derivation,
    untwisted: Derivation,
    inclusion: AlgebraMap,
    one_tensor_g: AlgebraMap,
    m: AlgebraMap,
    phi: AlgebraMap,
}

/// Safety bound on the length of the nilpotence chains of `1 − φ` and `δ_g κ`.
const CHAIN_LIMIT: usize = 1024;

impl RelativeModel {
    /// `f_images[i] = f(su_i) ∈ S sV` and `g_images[j] = g(sv_j) ∈ S sW`.
    pub fn new(
        u: &Arc<GeneratorSet>,
        v: &Arc<GeneratorSet>,
        w: &Arc<GeneratorSet>,
        f_images: Vec<GradedElement>,
        g_images: Vec<GradedElement>,
    ) -> Result<Self> {
        let source = PureSullivan::new(u, v, f_images)?;
        let fiber = PureSullivan::new(v, w, g_images)?;
        let gf_images = source.f().images().iter().map(|x| fiber.f().apply(x)).collect();
        let target = PureSullivan::new(u, w, gf_images)?;
        let (nu, nv, nw) = (u.len(), v.len(), w.len());

        let mut odd = u.parts().0;
        odd.extend(v.parts().0);
        let mut even = source.sv().parts().1;
        even.extend(fiber.sv().parts().1);
        let ambient = GeneratorSet::new(odd, even)?;

        let sv_at: Vec<usize> = (0..nv).map(|j| nu + nv + j).collect();
        let sw_at: Vec<usize> = (0..nw).map(|k| nu + 2 * nv + k).collect();
        let emb_sv = generator_inclusion(source.sv(), &ambient, &sv_at);
        let emb_sw = generator_inclusion(fiber.sv(), &ambient, &sw_at);

        let zero = GradedElement::zero(&ambient);
        let derivation = |fill: &dyn Fn(usize) -> Option<GradedElement>| {
            let images = (0..ambient.len())
                .map(|i| fill(i).unwrap_or_else(|| zero.clone()))
                .collect();
            Derivation::new(&ambient, 1, images)
        };
        let delta_f = derivation(&|i| (i < nu).then(|| emb_sv.apply(source.f().image(i))));
        let delta_g = derivation(&|i| {
            (nu..nu + nv)
                .contains(&i)
                .then(|| emb_sw.apply(fiber.f().image(i - nu)))
        });
        let delta_v = derivation(&|i| {
            (nu..nu + nv)
                .contains(&i)
                .then(|| GradedElement::generator(&ambient, sv_at[i - nu]))
        });
        let delta_gf = derivation(&|i| (i < nu).then(|| emb_sw.apply(target.f().image(i))));
        let differential = Derivation::combine(&[
            (int(-1), &delta_f),
            (int(-1), &delta_g),
            (int(1), &delta_v),
        ]);
        let untwisted = Derivation::combine(&[(int(-1), &delta_gf), (int(1), &delta_v)]);

        let src_amb = source.ambient();
        let positions: Vec<usize> = (0..nu).chain(sv_at.iter().copied()).collect();
        let inclusion = generator_inclusion(src_amb, &ambient, &positions);

        let tgt = target.ambient();
        let g_in_target: Vec<GradedElement> = (0..nv)
            .map(|j| target.embed_polynomial(fiber.f().image(j)))
            .collect();
        let mut images: Vec<GradedElement> = (0..nu).map(|i| GradedElement::generator(tgt, i)).collect();
        images.extend(g_in_target.iter().cloned());
        let one_tensor_g = AlgebraMap::new(src_amb, tgt, images);

        let mut images: Vec<GradedElement> = (0..nu).map(|i| GradedElement::generator(tgt, i)).collect();
        images.extend((0..nv).map(|_| GradedElement::zero(tgt)));
        images.extend(g_in_target);
        images.extend((0..nw).map(|k| GradedElement::generator(tgt, nu + k)));
        let m = AlgebraMap::new(&ambient, tgt, images);

        let mut model = Self {
            source,
            fiber,
            target,
            ambient: ambient.clone(),
            delta_f,
            delta_g,
            delta_v,
            delta_gf,
            differential,
            untwisted,
            inclusion,
            one_tensor_g,
            m,
            phi: AlgebraMap::new(&ambient, &ambient, vec![zero.clone(); ambient.len()]),
        };

        let mut images = Vec::with_capacity(ambient.len());
        for i in 0..nu {
            let mut y = emb_sv.apply(model.source.f().image(i));
            let mut sum = y.clone();
            let mut steps = 0;
            while !y.is_zero() {
                y = model.delta_g.apply(&model.kappa(&y));
                sum = sum.plus(&y);
                steps += 1;
                if steps > CHAIN_LIMIT {
                    return Err(Error::Invariant("δ_g κ is not nilpotent".into()));
                }
            }
            images.push(GradedElement::generator(&ambient, i).plus(&model.kappa(&sum)));
        }
        for j in 0..nv {
            images.push(GradedElement::generator(&ambient, nu + j));
        }
        for j in 0..nv {
            let sv = GradedElement::generator(&ambient, sv_at[j]);
            images.push(sv.minus(&emb_sw.apply(model.fiber.f().image(j))));
        }
        for k in 0..nw {
            images.push(GradedElement::generator(&ambient, sw_at[k]));
        }
        model.phi = AlgebraMap::new(&ambient, &ambient, images);
        Ok(model)
    }

    /// `(ΛU ⊗ S sV, −δ_f)`.
    pub fn source(&self) -> &PureSullivan {
        &self.source
    }

    /// `(ΛV ⊗ S sW, −δ_g)`.
    pub fn fiber(&self) -> &PureSullivan {
        &self.fiber
    }

    /// `(ΛU ⊗ S sW, −δ_gf)`.
    pub fn target(&self) -> &PureSullivan {
        &self.target
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    /// `−δ_f − δ_g + δ_V`.
    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    /// `−δ_gf + δ_V`.
    pub fn untwisted(&self) -> &Derivation {
        &self.untwisted
    }

    pub fn delta_f(&self) -> &Derivation {
        &self.delta_f
    }

    pub fn delta_g(&self) -> &Derivation {
        &self.delta_g
    }

    pub fn delta_v(&self) -> &Derivation {
        &self.delta_v
    }

    pub fn delta_gf(&self) -> &Derivation {
        &self.delta_gf
    }

    pub fn m(&self) -> &AlgebraMap {
        &self.m
    }

    pub fn phi(&self) -> &AlgebraMap {
        &self.phi
    }

    pub fn inclusion(&self) -> &AlgebraMap {
        &self.inclusion
    }

    /// `1 ⊗ g` from the source model to the target model.
    pub fn one_tensor_g(&self) -> &AlgebraMap {
        &self.one_tensor_g
    }

    fn nu(&self) -> usize {
        self.source.u().len()
    }

    fn nv(&self) -> usize {
        self.source.v().len()
    }

    /// `(p, q)`: total exponent in `sV` and number of `V` factors.
    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        let (nu, nv) = (self.nu(), self.nv());
        let p = m.even[..nv].iter().map(|e| *e as u32).sum();
        let q = (m.odd >> nu).count_ones();
        (p, q)
    }

    /// Degree in `ΛU ⊗ S sV`, the filtration index.
    pub fn filtration_degree(&self, m: &Monomial) -> u32 {
        let nu = self.nu();
        let u: u32 = m.odd_slots().filter(|i| *i < nu).map(|i| self.ambient.odd_degree(i)).sum();
        let sv: u32 = (0..self.nv())
            .map(|j| m.even[j] as u32 * self.ambient.even_degree(j))
            .sum();
        u + sv
    }

    /// `κ = (p + q)^{-1} Σ_j v_j · ∂/∂(sv_j)` on the `(p, q)` component, and 0
    /// when `p = q = 0`.
    pub fn kappa(&self, x: &GradedElement) -> GradedElement {
        let nu = self.nu();
        let mut out = GradedElement::zero(&self.ambient);
        for (mono, c) in x.terms() {
            let (p, q) = self.bidegree(mono);
            if p + q == 0 {
                continue;
            }
            for j in 0..self.nv() {
                let e = mono.even[j];
                if e == 0 {
                    continue;
                }
                let mut lower = mono.clone();
                lower.even[j] -= 1;
                let coeff = c * Scalar::from_integer(e.into()) / Scalar::from_integer((p + q).into());
                let term = GradedElement::monomial(&self.ambient, lower, coeff);
                let vj = Monomial::generator(&self.ambient, nu + j);
                out = out.plus(&term.left_mul_monomial(&vj, &Scalar::from_integer(1.into())));
            }
        }
        out
    }

    /// `π_{0,0}`: the part with no `sV` and no `V`.
    pub fn pi00(&self, x: &GradedElement) -> GradedElement {
        x.filter(|m| self.bidegree(m) == (0, 0))
    }

    /// `π`: `π_{0,0}` read in `ΛU ⊗ S sW`.
    pub fn pi(&self, x: &GradedElement) -> GradedElement {
        let nv = self.nv();
        let tgt = self.target.ambient();
        GradedElement::from_terms(
            tgt,
            self.pi00(x).terms().iter().map(|(m, c)| {
                (
                    Monomial {
                        odd: m.odd,
                        even: m.even[nv..].iter().copied().collect(),
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// `φ^{-1} = Σ_k (1 − φ)^k`.
    pub fn phi_inverse(&self, x: &GradedElement) -> Result<GradedElement> {
        let mut y = x.clone();
        let mut sum = x.clone();
        for _ in 0..CHAIN_LIMIT {
            y = y.minus(&self.phi.apply(&y));
            if y.is_zero() {
                return Ok(sum);
            }
            sum = sum.plus(&y);
        }
        Err(Error::Invariant("1 − φ is not nilpotent".into()))
    }

    /// Smallest `n` with `(1 − φ)^n x = 0`.
    pub fn nilpotence_order(&self, x: &GradedElement) -> Option<usize> {
        let mut y = x.clone();
        for n in 0..CHAIN_LIMIT {
            if y.is_zero() {
                return Some(n);
            }
            y = y.minus(&self.phi.apply(&y));
        }
        None
    }

    fn all_monomials(&self, gens: &Arc<GeneratorSet>, cap: u32) -> Vec<GradedElement> {
        (0..=cap)
            .flat_map(|n| basis_of_degree(gens, n))
            .map(|m| GradedElement::monomial(gens, m, Scalar::from_integer(1.into())))
            .collect()
    }

    fn holds_on_basis(
        &self,
        gens: &Arc<GeneratorSet>,
        cap: u32,
        check: impl Fn(&GradedElement) -> bool + Sync,
    ) -> bool {
        self.all_monomials(gens, cap).par_iter().all(&check)
    }

    /// `D² = 0` on the model and on the three pure algebras.
    pub fn differentials_square_to_zero(&self, cap: u32) -> bool {
        let sq = |d: &Derivation, gens: &Arc<GeneratorSet>| {
            self.holds_on_basis(gens, cap, |x| d.apply(&d.apply(x)).is_zero())
        };
        sq(&self.differential, &self.ambient)
            && sq(&self.untwisted, &self.ambient)
            && sq(self.source.differential(), self.source.ambient())
            && sq(self.fiber.differential(), self.fiber.ambient())
            && sq(self.target.differential(), self.target.ambient())
    }

    /// `D` preserves every filtration step.
    pub fn filtration_is_preserved(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| {
            let p = x.terms().keys().map(|m| self.filtration_degree(m)).min().unwrap_or(0);
            self.differential
                .apply(x)
                .terms()
                .keys()
                .all(|m| self.filtration_degree(m) >= p)
        })
    }

    /// `δ_V κ + κ δ_V = 1 − π_{0,0}`.
    pub fn homotopy_identity(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| {
            let lhs = self
                .delta_v
                .apply(&self.kappa(x))
                .plus(&self.kappa(&self.delta_v.apply(x)));
            lhs == x.minus(&self.pi00(x))
        })
    }

    /// `κ` vanishes on `ΛU ⊗ 1 ⊗ 1 ⊗ S sW`.
    pub fn kappa_vanishes_on_base(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| {
            x.terms().keys().any(|m| self.bidegree(m) != (0, 0)) || self.kappa(x).is_zero()
        })
    }

    /// `φ (−δ_gf + δ_V) = (−δ_f − δ_g + δ_V) φ`.
    pub fn phi_intertwines(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| {
            self.phi.apply(&self.untwisted.apply(x)) == self.differential.apply(&self.phi.apply(x))
        })
    }

    /// Every element is killed by a power of `1 − φ`.
    pub fn one_minus_phi_is_nilpotent(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| self.nilpotence_order(x).is_some())
    }

    /// `m φ = π`.
    pub fn m_phi_is_pi(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| self.m.apply(&self.phi.apply(x)) == self.pi(x))
    }

    /// `φ ∘ φ^{-1} = 1`.
    pub fn phi_inverse_is_inverse(&self, cap: u32) -> bool {
        self.holds_on_basis(&self.ambient, cap, |x| {
            self.phi_inverse(x).map(|y| self.phi.apply(&y) == *x).unwrap_or(false)
        })
    }

    /// `m` commutes with the differentials.
    pub fn m_is_chain_map(&self, cap: u32) -> bool {
        let dt = self.target.differential();
        self.holds_on_basis(&self.ambient, cap, |x| {
            self.m.apply(&self.differential.apply(x)) == dt.apply(&self.m.apply(x))
        })
    }

    /// `m ∘ i = 1 ⊗ g`.
    pub fn m_extends_one_tensor_g(&self, cap: u32) -> bool {
        self.holds_on_basis(self.source.ambient(), cap, |x| {
            self.m.apply(&self.inclusion.apply(x)) == self.one_tensor_g.apply(x)
        })
    }

    pub fn complex(&self, cap: u32) -> Result<CochainComplex> {
        CochainComplex::full(&self.ambient, &self.differential, cap)
    }

    /// Whether `m` induces isomorphisms `H^n → H^n(target)` for `n ≤ cap`.
    pub fn m_is_quasi_isomorphism(&self, cap: u32) -> Result<bool> {
        let src = self.complex(cap)?;
        let tgt = self.target.complex(cap)?;
        Ok(induced_ranks(&src, &tgt, |x| self.m.apply(x), cap)?
            .iter()
            .zip(src.cohomology().dims.iter().zip(&tgt.cohomology().dims))
            .all(|(r, (a, b))| r == a && a == b))
    }
}

/// Rank of the map induced on `H^n` by a chain map, for `n ≤ cap`.
pub fn induced_ranks(
    src: &CochainComplex,
    tgt: &CochainComplex,
    map: impl Fn(&GradedElement) -> GradedElement,
    cap: u32,
) -> Result<Vec<usize>> {
    let h = src.cohomology();
    let mut ranks = Vec::with_capacity(cap as usize + 1);
    for n in 0..=cap as usize {
        let mut red = Reducer::new();
        if n > 0 {
            for col in tgt.differential(n - 1).columns() {
                red.insert(col);
            }
        }
        let base = red.rank();
        for rep in &h.representatives[n] {
            let image = map(&src.element(n, rep));
            let coords = tgt
                .coords(n, &image)
                .ok_or_else(|| Error::Invariant(format!("image leaves degree {n} of the target")))?;
            red.insert(&coords);
        }
        ranks.push(red.rank() - base);
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn odd(names: &[(&str, u32)]) -> Arc<GeneratorSet> {
        GeneratorSet::new(names.iter().map(|(n, d)| (n.to_string(), *d)).collect(), vec![]).unwrap()
    }

    fn scaled_generator(gens: &Arc<GeneratorSet>, c: Scalar) -> GradedElement {
        GradedElement::generator(gens, 0).scaled(&c)
    }

    fn small() -> RelativeModel {
        let u = odd(&[("u", 3)]);
        let v = odd(&[("v", 3)]);
        let w = odd(&[("w", 1)]);
        let sv = v.suspension().unwrap();
        let sw = w.suspension().unwrap();
        let f = scaled_generator(&sv, int(2));
        let g = scaled_generator(&sw, frac(-1, 3)).pow(2);
        RelativeModel::new(&u, &v, &w, vec![f], vec![g]).unwrap()
    }

    #[test]
    fn lemma_identities_hold() {
        let model = small();
        let cap = 8;
        assert!(model.differentials_square_to_zero(cap));
        assert!(model.filtration_is_preserved(cap));
        assert!(model.homotopy_identity(cap));
        assert!(model.kappa_vanishes_on_base(cap));
        assert!(model.phi_intertwines(cap));
        assert!(model.one_minus_phi_is_nilpotent(cap));
        assert!(model.m_phi_is_pi(cap));
        assert!(model.phi_inverse_is_inverse(cap));
        assert!(model.m_is_chain_map(cap));
        assert!(model.m_extends_one_tensor_g(cap));
        assert!(model.m_is_quasi_isomorphism(cap).unwrap());
    }

    #[test]
    fn identity_fiber_recovers_source() {
        let u = odd(&[("u", 3)]);
        let v = odd(&[("v", 1)]);
        let w = odd(&[("w", 1)]);
        let sv = v.suspension().unwrap();
        let sw = w.suspension().unwrap();
        let f = GradedElement::generator(&sv, 0).pow(2);
        let g = GradedElement::generator(&sw, 0);
        let model = RelativeModel::new(&u, &v, &w, vec![f], vec![g]).unwrap();
        let cap = 7;
        let big = model.complex(cap).unwrap().cohomology().dims;
        assert_eq!(big, model.source().cohomology_dims(cap).unwrap());
    }

    #[test]
    fn empty_u_gives_polynomials_on_w() {
        let u = odd(&[]);
        let v = odd(&[("v", 3)]);
        let w = odd(&[("w", 1)]);
        let sw = w.suspension().unwrap();
        let g = GradedElement::generator(&sw, 0).pow(2);
        let model = RelativeModel::new(&u, &v, &w, vec![], vec![g]).unwrap();
        let cap = 8;
        let big = model.complex(cap).unwrap().cohomology().dims;
        assert_eq!(big, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(big, model.target().cohomology_dims(cap).unwrap());
    }
}
