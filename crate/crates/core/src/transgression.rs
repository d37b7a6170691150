//! Primitive invariant forms, invariant polynomials, the Cartan map `ρ_g`,
//! θ-compatible transgressions with certificates, and indecomposables of
//! invariant polynomial algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cartan::{shifted_dual_generators, CartanModel};
use crate::error::{Error, Result};
use crate::graded::{
    basis_of_degree, AlgebraMap, DegreeBasis, Derivation, ElementSpan, GeneratorSet,
    GradedElement, Monomial,
};
use crate::invariant::joint_kernel;
use crate::lie::cochains::{
    coadjoint_matrix, dual_generators, lie_derivative, linear_derivation, theta_on_forms,
};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{
    canonical_basis, eigenspace_split, frac, null_space, Matrix, Scalar, SparseVec,
};

fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    SparseVec::unit(i).to_dense(n)
}

fn combine(ambient: &Arc<GeneratorSet>, basis: &[GradedElement], c: &SparseVec) -> GradedElement {
    let mut out = GradedElement::zero(ambient);
    for (i, x) in c.entries() {
        out.add_scaled(x, &basis[*i]);
    }
    out
}

fn combine_dense(ambient: &Arc<GeneratorSet>, basis: &[GradedElement], c: &[Scalar]) -> GradedElement {
    let mut out = GradedElement::zero(ambient);
    for (x, b) in c.iter().zip(basis) {
        if !x.is_zero() {
            out.add_scaled(x, b);
        }
    }
    out
}

/// Reduced echelon basis of the span of `elements` over the sorted monomials
/// of one degree; every basis vector has leading coefficient 1.
pub fn canonical_elements(
    ambient: &Arc<GeneratorSet>,
    degree: u32,
    elements: &[GradedElement],
) -> Vec<GradedElement> {
    if elements.is_empty() {
        return Vec::new();
    }
    let basis = DegreeBasis::new(ambient, degree);
    let coords: Vec<SparseVec> = elements
        .iter()
        .map(|x| basis.coords(x).expect("homogeneous element"))
        .collect();
    canonical_basis(&coords)
        .iter()
        .map(|v| basis.element(ambient, v))
        .collect()
}

/// All nonzero products `x · y` with `x` of degree `p` and `y` of degree
/// `degree − p`, `lo ≤ p ≤ degree / 2`.
fn products(by_degree: &[Vec<GradedElement>], degree: usize, lo: usize) -> Vec<GradedElement> {
    let mut out = Vec::new();
    for p in lo..=degree / 2 {
        if degree - p >= by_degree.len() {
            continue;
        }
        for x in &by_degree[p] {
            for y in &by_degree[degree - p] {
                let z = x.mul(y);
                if !z.is_zero() {
                    out.push(z);
                }
            }
        }
    }
    out
}

/// Determinant pairing of a multivector with a form: monomials pair to 1
/// with themselves and to 0 otherwise.
fn pairing(x: &GradedElement, alpha: &GradedElement) -> Scalar {
    let mut total = Scalar::zero();
    for (m, c) in x.terms() {
        let a = alpha.coefficient(m);
        if !a.is_zero() {
            total += c * a;
        }
    }
    total
}

/// Dimensions of `Λ P` in degrees `0..=top` for odd generators of the given degrees.
pub fn exterior_dims(degrees: &[u32], top: usize) -> Vec<usize> {
    let mut dims = vec![0usize; top + 1];
    dims[0] = 1;
    for d in degrees {
        let d = *d as usize;
        for n in (d..=top).rev() {
            dims[n] += dims[n - d];
        }
    }
    dims
}

/// Dimensions of `S sP` in degrees `0..=top` for generators of the given
/// (shifted, even) degrees.
pub fn symmetric_dims(degrees: &[u32], top: usize) -> Vec<usize> {
    let mut dims = vec![0usize; top + 1];
    dims[0] = 1;
    for d in degrees {
        let d = *d as usize;
        for n in d..=top {
            dims[n] += dims[n - d];
        }
    }
    dims
}

/// `P_{g*}`: invariant forms killing every product of positive-degree
/// invariant multivectors.
#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    forms: Arc<GeneratorSet>,
    invariants: Vec<Vec<GradedElement>>,
    decomposables: Vec<Vec<GradedElement>>,
    basis: Vec<GradedElement>,
    degrees: Vec<u32>,
    span: ElementSpan,
    theta: Option<Matrix>,
    split: Option<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)>,
}

pub fn primitives(g: &LieAlgebra) -> Result<PrimitiveSpace> {
    let n = g.dim();
    let forms = dual_generators(g);
    let vectors = GeneratorSet::new(
        g.basis_names().iter().map(|b| (b.clone(), 1)).collect(),
        vec![],
    )?;
    let on_forms: Vec<Derivation> = (0..n)
        .map(|a| lie_derivative(g, &forms, &unit_vector(n, a)))
        .collect();
    let on_vectors: Vec<Derivation> = (0..n)
        .map(|a| linear_derivation(&vectors, &[(0, g.ad(a))]))
        .collect();
    let invariants: Vec<Vec<GradedElement>> = (0..=n as u32)
        .into_par_iter()
        .map(|d| joint_kernel(&forms, d, &on_forms))
        .collect();
    let inv_vectors: Vec<Vec<GradedElement>> = (0..=n as u32)
        .into_par_iter()
        .map(|d| joint_kernel(&vectors, d, &on_vectors))
        .collect();

    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut decomposables = vec![Vec::new(); n + 1];
    for d in 1..=n {
        let dec_vectors = products(&inv_vectors, d, 1);
        let rows: Vec<SparseVec> = dec_vectors
            .iter()
            .map(|z| {
                SparseVec::from_pairs(
                    invariants[d]
                        .iter()
                        .enumerate()
                        .map(|(j, a)| (j, pairing(z, a))),
                )
            })
            .collect();
        let kernel = null_space(&rows, invariants[d].len());
        let found: Vec<GradedElement> = kernel
            .iter()
            .map(|c| combine(&forms, &invariants[d], c))
            .collect();
        for p in canonical_elements(&forms, d as u32, &found) {
            basis.push(p);
            degrees.push(d as u32);
        }
        decomposables[d] = canonical_elements(&forms, d as u32, &products(&invariants, d, 1));
    }

    if let Some(d) = degrees.iter().find(|d| *d % 2 == 0) {
        return Err(Error::Invariant(format!(
            "{}: found a primitive of even degree {d}",
            g.name()
        )));
    }
    if let Some(r) = g.declared_rank() {
        if r != basis.len() {
            return Err(Error::Validation(format!(
                "{}: declared rank {r} but the primitive space has dimension {}",
                g.name(),
                basis.len()
            )));
        }
    }
    let expected = exterior_dims(&degrees, n);
    let actual: Vec<usize> = invariants.iter().map(Vec::len).collect();
    if expected != actual {
        return Err(Error::Invariant(format!(
            "{}: Λ P has dimensions {expected:?} but the invariant forms have {actual:?}",
            g.name()
        )));
    }

    let span = ElementSpan::from_elements(&basis);
    let mut space = PrimitiveSpace {
        forms: forms.clone(),
        invariants,
        decomposables,
        basis,
        degrees,
        span,
        theta: None,
        split: None,
    };
    if let Some(t) = g.theta() {
        let act = theta_on_forms(t, &forms);
        let k = space.basis.len();
        let cols = space
            .basis
            .iter()
            .map(|a| {
                space.coords(&act.apply(a)).ok_or_else(|| {
                    Error::Invariant(format!("{}: θ does not preserve the primitives", g.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(k, &cols);
        space.split = Some(eigenspace_split(&m)?);
        space.theta = Some(m);
    }
    Ok(space)
}

impl PrimitiveSpace {
    pub fn forms(&self) -> &Arc<GeneratorSet> {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradedElement] {
        &self.basis
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis of `(Λ^n g*)^g`.
    pub fn invariants(&self, n: usize) -> &[GradedElement] {
        self.invariants.get(n).map_or(&[], Vec::as_slice)
    }

    /// Basis of the products of positive-degree invariant forms in degree `n`.
    pub fn decomposables(&self, n: usize) -> &[GradedElement] {
        self.decomposables.get(n).map_or(&[], Vec::as_slice)
    }

    /// Coordinates over the primitive basis, or `None` outside `P`.
    pub fn coords(&self, x: &GradedElement) -> Option<SparseVec> {
        self.span.solve(x)
    }

    /// Matrix of `θ` on the primitive basis, when the algebra carries one.
    pub fn theta(&self) -> Option<&Matrix> {
        self.theta.as_ref()
    }

    /// Coordinate bases of the `+1` and `−1` eigenspaces of `θ`.
    pub fn theta_split(&self) -> Option<&(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
        self.split.as_ref()
    }

    pub fn element(&self, coords: &[Scalar]) -> GradedElement {
        combine_dense(&self.forms, &self.basis, coords)
    }

    /// Elements spanning `(P_{g*})^{−θ}`; empty without an involution.
    pub fn minus_basis(&self) -> Vec<GradedElement> {
        self.split
            .as_ref()
            .map(|(_, minus)| minus.iter().map(|c| self.element(c)).collect())
            .unwrap_or_default()
    }

    /// The primitives as odd generators named `{prefix}{i}` (from 1).
    pub fn generators(&self, prefix: &str) -> Arc<GeneratorSet> {
        GeneratorSet::new(
            self.degrees
                .iter()
                .enumerate()
                .map(|(i, d)| (format!("{prefix}{}", i + 1), *d))
                .collect(),
            vec![],
        )
        .expect("distinct names")
    }
}

/// Bases of `(S^k sg*)^g` (shifted degree `2k`) up to a cap.
#[derive(Clone, Debug)]
pub struct InvariantPolynomials {
    ambient: Arc<GeneratorSet>,
    bases: Vec<Vec<GradedElement>>,
}

pub fn invariant_polynomials(g: &LieAlgebra, max_sdeg: u32) -> InvariantPolynomials {
    let n = g.dim();
    let ambient = shifted_dual_generators(g);
    let actions: Vec<Derivation> = (0..n)
        .map(|a| linear_derivation(&ambient, &[(0, &coadjoint_matrix(g, &unit_vector(n, a)))]))
        .collect();
    let bases = (0..=max_sdeg)
        .into_par_iter()
        .map(|d| {
            if d % 2 == 1 {
                Vec::new()
            } else {
                joint_kernel(&ambient, d, &actions)
            }
        })
        .collect();
    InvariantPolynomials { ambient, bases }
}

impl InvariantPolynomials {
    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn cap(&self) -> u32 {
        self.bases.len() as u32 - 1
    }

    pub fn basis(&self, sdeg: u32) -> &[GradedElement] {
        assert!(sdeg <= self.cap(), "invariant polynomials computed up to {}", self.cap());
        &self.bases[sdeg as usize]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Canonical basis of `(S⁺ sg*)^g · (S⁺ sg*)^g` in shifted degree `sdeg`.
    pub fn decomposables(&self, sdeg: u32) -> Vec<GradedElement> {
        let prods = products(&self.bases[..=sdeg as usize], sdeg as usize, 2);
        canonical_elements(&self.ambient, sdeg, &prods)
    }
}

/// `((S⁺ sg*)^g / (S⁺ sg*)^g · (S⁺ sg*)^g)` in one degree: representatives
/// of the quotient, projection, and the θ-split of the quotient.
#[derive(Clone, Debug)]
pub struct Indecomposables {
    degree: u32,
    ambient: Arc<GeneratorSet>,
    decomposables: Vec<GradedElement>,
    representatives: Vec<GradedElement>,
    span: ElementSpan,
    theta: Option<Matrix>,
    minus: Vec<Vec<Scalar>>,
}

pub fn indecomposables(
    polys: &InvariantPolynomials,
    sdeg: u32,
    theta: Option<&AlgebraMap>,
) -> Result<Indecomposables> {
    let decomposables = polys.decomposables(sdeg);
    let mut probe = ElementSpan::from_elements(&decomposables);
    let representatives: Vec<GradedElement> = polys
        .basis(sdeg)
        .iter()
        .filter(|x| !probe.insert(x).is_dependent())
        .cloned()
        .collect();
    let span = ElementSpan::from_elements(decomposables.iter().chain(&representatives));
    let mut out = Indecomposables {
        degree: sdeg,
        ambient: polys.ambient().clone(),
        decomposables,
        representatives,
        span,
        theta: None,
        minus: Vec::new(),
    };
    if let Some(t) = theta {
        let k = out.representatives.len();
        let cols = out
            .representatives
            .iter()
            .map(|r| {
                out.project(&t.apply(r))
                    .map(|v| SparseVec::from_dense(&v))
                    .ok_or_else(|| Error::Invariant("θ does not preserve invariants".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(k, &cols);
        out.minus = eigenspace_split(&m)?.1;
        out.theta = Some(m);
    }
    Ok(out)
}

impl Indecomposables {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn decomposables(&self) -> &[GradedElement] {
        &self.decomposables
    }

    pub fn representatives(&self) -> &[GradedElement] {
        &self.representatives
    }

    /// Quotient coordinates of an invariant polynomial of this degree.
    pub fn project(&self, x: &GradedElement) -> Option<Vec<Scalar>> {
        let c = self.span.solve(x)?;
        let skip = self.decomposables.len();
        Some(
            (0..self.representatives.len())
                .map(|i| c.get(skip + i))
                .collect(),
        )
    }

    pub fn lift(&self, coords: &[Scalar]) -> GradedElement {
        combine_dense(&self.ambient, &self.representatives, coords)
    }

    pub fn theta(&self) -> Option<&Matrix> {
        self.theta.as_ref()
    }

    /// Quotient-coordinate basis of the `−1` eigenspace of `θ`.
    pub fn minus(&self) -> &[Vec<Scalar>] {
        &self.minus
    }
}

/// `ρ_g` via the acyclic Cartan model of `(g, g)`.
#[derive(Clone, Debug)]
pub struct CartanMap {
    model: CartanModel,
    polynomials: Arc<GeneratorSet>,
    into_model: AlgebraMap,
}

/// Invariants of one odd degree of the `(g, g)` Cartan model with their
/// differentials, ready for solving `d x = y`.
#[derive(Clone, Debug)]
pub struct CartanSolver {
    basis: Vec<GradedElement>,
    images: ElementSpan,
}

impl CartanMap {
    pub fn new(g: &LieAlgebra) -> Self {
        let model = CartanModel::new(g, &Subalgebra::whole(g));
        let polynomials = shifted_dual_generators(g);
        let n = g.dim();
        let into_model = AlgebraMap::new(
            &polynomials,
            model.ambient(),
            (0..n)
                .map(|j| GradedElement::generator(model.ambient(), n + j))
                .collect(),
        );
        Self {
            model,
            polynomials,
            into_model,
        }
    }

    pub fn model(&self) -> &CartanModel {
        &self.model
    }

    /// `1 ⊗ sP` inside the model.
    pub fn embed_polynomial(&self, sp: &GradedElement) -> GradedElement {
        self.into_model.apply(&sp.rebase(&self.polynomials))
    }

    /// `α ⊗ 1` inside the model.
    pub fn embed_form(&self, alpha: &GradedElement) -> GradedElement {
        self.model.epsilon().apply(alpha)
    }

    /// The `Λ g* ⊗ 1` component of a model element, as a form.
    pub fn forms_part(&self, x: &GradedElement) -> GradedElement {
        let forms = self.model.forms();
        let mut out = GradedElement::zero(forms);
        for (m, c) in x.terms() {
            if m.even.iter().all(|e| *e == 0) {
                let mut f = Monomial::unit(forms);
                f.odd = m.odd;
                out.add_term(f, c.clone());
            }
        }
        out
    }

    /// Solver for polynomials of shifted degree `sdeg`.
    pub fn solver(&self, sdeg: u32) -> CartanSolver {
        assert!(sdeg >= 2 && sdeg % 2 == 0, "shifted degree must be even and positive");
        let basis = self.model.invariant_basis(sdeg - 1);
        let d = self.model.differential();
        let imgs: Vec<GradedElement> = basis.par_iter().map(|b| d.apply(b)).collect();
        let images = ElementSpan::from_elements(&imgs);
        CartanSolver { basis, images }
    }

    /// Solves `d_{g,g}(x) = −1 ⊗ sP` and returns `(ρ_g(sP), x)`; `x` is
    /// `ρ_g(sP) ⊗ 1 + Ω`.
    pub fn apply(&self, solver: &CartanSolver, sp: &GradedElement) -> Result<(GradedElement, GradedElement)> {
        let target = self.embed_polynomial(sp).scaled(&-Scalar::one());
        let c = solver.images.solve(&target).ok_or_else(|| {
            Error::Invariant(
                "−1 ⊗ sP is not a coboundary in the Cartan model of (g, g)".into(),
            )
        })?;
        let x = combine(self.model.ambient(), &solver.basis, &c);
        Ok((self.forms_part(&x), x))
    }
}

/// A transgression `τ_g : P_{g*} → (S⁺ sg*)^g` with certificates `Ω`.
#[derive(Clone, Debug)]
pub struct Transgression {
    algebra: LieAlgebra,
    primitives: PrimitiveSpace,
    polynomials: InvariantPolynomials,
    indecomposables: BTreeMap<u32, Indecomposables>,
    cartan: CartanMap,
    theta_poly: Option<AlgebraMap>,
    tau: Vec<GradedElement>,
    omega: Vec<GradedElement>,
    theta_compatible: bool,
}

/// Builds `τ_g` by solving for `ρ`-preimages on indecomposable
/// representatives, then averaging with `θ` when `g` carries one. Invariant
/// polynomials are computed up to twice (max primitive degree + 1), or up to
/// `cap` when that is larger.
pub fn build_transgression(g: &LieAlgebra, cap: Option<u32>) -> Result<Transgression> {
    let primitives = primitives(g)?;
    let top = primitives.max_degree() + 1;
    let cap = cap.unwrap_or(0).max(2 * top).max(2);
    let polynomials = invariant_polynomials(g, cap);
    let theta_poly = g.theta().map(|t| theta_on_forms(t, polynomials.ambient()));
    let indecomposables = (1..=cap / 2)
        .map(|k| Ok((2 * k, indecomposables(&polynomials, 2 * k, theta_poly.as_ref())?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let cartan = CartanMap::new(g);
    let k = primitives.dim();
    let mut solvers: BTreeMap<u32, CartanSolver> = BTreeMap::new();
    for d in primitives.degrees() {
        solvers
            .entry(d + 1)
            .or_insert_with(|| cartan.solver(d + 1));
    }

    let mut raw = vec![GradedElement::zero(polynomials.ambient()); k];
    for (sdeg, solver) in &solvers {
        let ind = &indecomposables[sdeg];
        let idx: Vec<usize> = (0..k)
            .filter(|i| primitives.degrees()[*i] + 1 == *sdeg)
            .collect();
        if ind.dim() != idx.len() {
            return Err(Error::Invariant(format!(
                "{}: {} indecomposables in shifted degree {sdeg} but {} primitives",
                g.name(),
                ind.dim(),
                idx.len()
            )));
        }
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (c, r) in ind.representatives().iter().enumerate() {
            let (rho, _) = cartan.apply(solver, r)?;
            let coords = primitives.coords(&rho).ok_or_else(|| {
                Error::Invariant(format!("{}: ρ_g lands outside P_g*", g.name()))
            })?;
            for (row, i) in idx.iter().enumerate() {
                m.set(row, c, coords.get(*i));
            }
        }
        for (row, i) in idx.iter().enumerate() {
            let rhs = unit_vector(idx.len(), row);
            let c = m.solve(&rhs).ok_or_else(|| {
                Error::Invariant(format!("{}: ρ_g is not onto P_g* in degree {}", g.name(), sdeg - 1))
            })?;
            raw[*i] = ind.lift(&c);
        }
    }

    let tau = match (&theta_poly, primitives.theta()) {
        (Some(tp), Some(t)) => (0..k)
            .map(|j| {
                let mut tau_theta = GradedElement::zero(polynomials.ambient());
                for i in 0..k {
                    let c = t.get(i, j);
                    if !c.is_zero() {
                        tau_theta.add_scaled(c, &raw[i]);
                    }
                }
                raw[j].plus(&tp.apply(&tau_theta)).scaled(&frac(1, 2))
            })
            .collect(),
        _ => raw,
    };

    let mut omega = Vec::with_capacity(k);
    for (j, alpha) in primitives.basis().iter().enumerate() {
        let solver = &solvers[&(primitives.degrees()[j] + 1)];
        let (rho, x) = cartan.apply(solver, &tau[j])?;
        if &rho != alpha {
            return Err(Error::Invariant(format!(
                "{}: ρ_g(τ_g(α)) ≠ α for primitive {}",
                g.name(),
                j + 1
            )));
        }
        omega.push(x.minus(&cartan.embed_form(alpha)));
    }

    let mut out = Transgression {
        algebra: g.clone(),
        primitives,
        polynomials,
        indecomposables,
        cartan,
        theta_poly,
        tau,
        omega,
        theta_compatible: true,
    };
    out.theta_compatible = out.commutes_with_theta();
    Ok(out)
}

impl Transgression {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn primitives(&self) -> &PrimitiveSpace {
        &self.primitives
    }

    pub fn polynomials(&self) -> &InvariantPolynomials {
        &self.polynomials
    }

    pub fn cap(&self) -> u32 {
        self.polynomials.cap()
    }

    pub fn cartan(&self) -> &CartanMap {
        &self.cartan
    }

    /// Indecomposables in shifted degree `sdeg` (even, within the cap).
    pub fn indecomposables(&self, sdeg: u32) -> Option<&Indecomposables> {
        self.indecomposables.get(&sdeg)
    }

    /// `θ` acting on `S sg*`.
    pub fn theta_on_polynomials(&self) -> Option<&AlgebraMap> {
        self.theta_poly.as_ref()
    }

    /// `τ_g` on the primitive basis.
    pub fn tau(&self) -> &[GradedElement] {
        &self.tau
    }

    /// Certificates `Ω(α)` on the primitive basis.
    pub fn omega(&self) -> &[GradedElement] {
        &self.omega
    }

    pub fn theta_compatible(&self) -> bool {
        self.theta_compatible
    }

    /// `τθ = θτ` on the primitive basis (true without an involution).
    pub fn commutes_with_theta(&self) -> bool {
        let (Some(tp), Some(t)) = (&self.theta_poly, self.primitives.theta()) else {
            return true;
        };
        let k = self.primitives.dim();
        (0..k).all(|j| {
            let mut rhs = GradedElement::zero(self.polynomials.ambient());
            for i in 0..k {
                let c = t.get(i, j);
                if !c.is_zero() {
                    rhs.add_scaled(c, &self.tau[i]);
                }
            }
            tp.apply(&self.tau[j]) == rhs
        })
    }

    /// Re-expands every certificate: `d_{g,g}(α ⊗ 1 + Ω(α)) = −1 ⊗ τ(α)`,
    /// with `Ω(α)` invariant and of positive polynomial degree.
    pub fn verify_certificates(&self) -> Result<()> {
        let model = self.cartan.model();
        for (j, alpha) in self.primitives.basis().iter().enumerate() {
            let omega = &self.omega[j];
            let x = self.cartan.embed_form(alpha).plus(omega);
            let lhs = model.differential().apply(&x);
            let rhs = self.cartan.embed_polynomial(&self.tau[j]).scaled(&-Scalar::one());
            if lhs != rhs {
                return Err(Error::Invariant(format!(
                    "{}: certificate for primitive {} does not satisfy d(α⊗1 + Ω) = −1⊗τ(α)",
                    self.algebra.name(),
                    j + 1
                )));
            }
            if !self.cartan.forms_part(omega).is_zero() || !model.is_invariant(omega) {
                return Err(Error::Invariant(format!(
                    "{}: certificate for primitive {} is not an invariant of positive polynomial degree",
                    self.algebra.name(),
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// `ρ_g ∘ τ_g = 1`, recomputed with fresh solves.
    pub fn rho_tau_is_identity(&self) -> Result<bool> {
        let mut solvers: BTreeMap<u32, CartanSolver> = BTreeMap::new();
        for (j, alpha) in self.primitives.basis().iter().enumerate() {
            let sdeg = self.primitives.degrees()[j] + 1;
            let solver = solvers
                .entry(sdeg)
                .or_insert_with(|| self.cartan.solver(sdeg));
            let (rho, _) = self.cartan.apply(solver, &self.tau[j])?;
            if &rho != alpha {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `S sP_{g*}` with one even generator `s{prefix}{i}` per primitive.
    pub fn symmetric_generators(&self, prefix: &str) -> Arc<GeneratorSet> {
        self.primitives
            .generators(prefix)
            .suspension()
            .expect("distinct names")
    }

    fn check_symmetric_ambient(&self, sp: &GeneratorSet) {
        assert_eq!(sp.n_odd(), 0);
        assert_eq!(sp.n_even(), self.primitives.dim());
        for (j, d) in self.primitives.degrees().iter().enumerate() {
            assert_eq!(sp.even_degree(j), d + 1, "generator degrees of S sP");
        }
    }

    /// `sτ_g` on the monomial basis of `(S sP)^n`.
    pub fn sym_tau_images(&self, sp: &Arc<GeneratorSet>, n: u32) -> Vec<(Monomial, GradedElement)> {
        self.check_symmetric_ambient(sp);
        basis_of_degree(sp, n)
            .into_iter()
            .map(|m| {
                let mut img = GradedElement::one(self.polynomials.ambient());
                for (j, e) in m.even.iter().enumerate() {
                    if *e > 0 {
                        img = img.mul(&self.tau[j].pow(*e as u32));
                    }
                }
                (m, img)
            })
            .collect()
    }

    /// `sτ_g : (S sP)^n → ((S sg*)^g)^n` is bijective.
    pub fn sym_tau_is_bijective(&self, n: u32) -> bool {
        let sp = self.symmetric_generators("p");
        let images = self.sym_tau_images(&sp, n);
        let target = ElementSpan::from_elements(self.polynomials.basis(n));
        let mut span = ElementSpan::new();
        images.len() == self.polynomials.basis(n).len()
            && images
                .iter()
                .all(|(_, x)| target.contains(x) && !span.insert(x).is_dependent())
    }

    /// `(sτ_g)^{-1}(q)` for a homogeneous invariant `q`, expressed in `sp`.
    pub fn sym_tau_inverse(&self, sp: &Arc<GeneratorSet>, q: &GradedElement) -> Result<GradedElement> {
        if q.is_zero() {
            return Ok(GradedElement::zero(sp));
        }
        let n = q.homogeneous_degree().ok_or_else(|| {
            Error::Invariant("sτ⁻¹ needs a homogeneous polynomial".into())
        })?;
        let images = self.sym_tau_images(sp, n);
        let span = ElementSpan::from_elements(images.iter().map(|(_, x)| x));
        let c = span.solve(&q.rebase(self.polynomials.ambient())).ok_or_else(|| {
            Error::Invariant(format!(
                "{}: polynomial is not in the image of sτ",
                self.algebra.name()
            ))
        })?;
        Ok(GradedElement::from_terms(
            sp,
            c.entries()
                .iter()
                .map(|(i, x)| (images[*i].0.clone(), x.clone())),
        ))
    }

    /// In shifted degree `sdeg`: `ρ_g` kills the decomposables and its
    /// kernel has exactly their dimension.
    pub fn kernel_is_decomposable(&self, sdeg: u32) -> Result<bool> {
        let basis = self.polynomials.basis(sdeg);
        if basis.is_empty() {
            return Ok(true);
        }
        let solver = self.cartan.solver(sdeg);
        let mut span = ElementSpan::new();
        for q in basis {
            let (rho, _) = self.cartan.apply(&solver, q)?;
            if !rho.is_zero() {
                span.insert(&rho);
            }
        }
        let kernel_dim = basis.len() - span.rank();
        let dec = self.polynomials.decomposables(sdeg);
        for q in &dec {
            if !self.cartan.apply(&solver, q)?.0.is_zero() {
                return Ok(false);
            }
        }
        Ok(kernel_dim == dec.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    #[test]
    fn sl2_primitive_is_the_volume_form() {
        let g = catalog::sl(2).unwrap();
        let p = primitives(&g).unwrap();
        assert_eq!(p.degrees(), &[3]);
        let a = p.forms().clone();
        let vol = GradedElement::generator(&a, 0)
            .mul(&GradedElement::generator(&a, 1))
            .mul(&GradedElement::generator(&a, 2));
        assert_eq!(p.basis()[0], vol);
        let (plus, minus) = p.theta_split().unwrap();
        assert_eq!((plus.len(), minus.len()), (1, 0));
    }

    #[test]
    fn abelian_primitives_are_linear() {
        let g = LieAlgebra::abelian("a", 3, "a");
        let p = primitives(&g).unwrap();
        assert_eq!(p.degrees(), &[1, 1, 1]);
    }

    #[test]
    fn declared_rank_is_checked() {
        let g = catalog::sl(2).unwrap().with_rank(2);
        assert!(matches!(primitives(&g), Err(Error::Validation(_))));
    }

    #[test]
    fn sl2_invariant_polynomials() {
        let g = catalog::sl(2).unwrap();
        let polys = invariant_polynomials(&g, 8);
        assert_eq!(polys.dims(), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let ind4 = indecomposables(&polys, 4, None).unwrap();
        let ind8 = indecomposables(&polys, 8, None).unwrap();
        assert_eq!((ind4.dim(), ind8.dim()), (1, 0));
    }

    #[test]
    fn sl2_transgression() {
        let g = catalog::sl(2).unwrap();
        let t = build_transgression(&g, None).unwrap();
        assert_eq!(t.cap(), 8);
        t.verify_certificates().unwrap();
        assert!(t.rho_tau_is_identity().unwrap());
        assert!(t.theta_compatible());
        for n in [4, 8] {
            assert!(t.kernel_is_decomposable(n).unwrap());
        }
        for n in 0..=8 {
            assert!(t.sym_tau_is_bijective(n), "degree {n}");
        }
        let sp = t.symmetric_generators("p");
        let back = t.sym_tau_inverse(&sp, &t.tau()[0].pow(2)).unwrap();
        assert_eq!(back, GradedElement::generator(&sp, 0).pow(2));
    }

    #[test]
    fn abelian_rho_is_desuspension() {
        let g = LieAlgebra::abelian("a", 1, "a");
        let t = build_transgression(&g, None).unwrap();
        let polys = t.polynomials().ambient().clone();
        assert_eq!(t.tau()[0], GradedElement::generator(&polys, 0));
        let (rho, _) = t
            .cartan()
            .apply(&t.cartan().solver(2), &GradedElement::generator(&polys, 0))
            .unwrap();
        assert_eq!(rho, GradedElement::generator(t.primitives().forms(), 0));
    }

    #[test]
    fn split_torus_is_anti_invariant() {
        let g = catalog::split_torus().unwrap();
        let t = build_transgression(&g, None).unwrap();
        assert_eq!(t.primitives().theta_split().unwrap().1.len(), 1);
        assert_eq!(t.indecomposables(2).unwrap().minus().len(), 1);
        assert!(t.theta_compatible());
    }
}
