//! The condition battery for a reductive pair `(g, h)` with involution `θ`,
//! and the verdict on the cohomological obstruction to compact
//! Clifford-Klein forms.
//!
//! With `k_h = h^θ`, the following are equivalent, and each is computed
//! independently:
//!
//! * (i) `H(g, h) → H(g, k_h)` is injective;
//! * (v) `((S⁺ sh*)^h)^{−θ}` lies in the ideal `(S⁺ sg*)^g|_h · (S sh*)^h`;
//! * (vi) restriction is onto the `−θ` part of the indecomposables of `h`;
//! * (vii) restriction `(P_{g*})^{−θ} → (P_{h*})^{−θ}` is onto;
//! * (viii) the spectral sequence of `model(g, h) → model(g, k_h)` collapses
//!   at `E_2`.
//!
//! (vii) decides the verdict. When `rank g − rank g^θ < rank h − rank k_h`
//! it fails for dimension reasons.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{chern_weil, CartanModel, Complement};
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::graded::{AlgebraMap, ElementSpan, GeneratorSet, GradedElement};
use crate::lie::catalog::Pair;
use crate::lie::cochains::{ce_derivation, dual_generators, dual_restriction, relative_complex, theta_on_forms};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{format_scalar, frac, parse_scalar, rank_of, Insertion, Reducer, Scalar, SparseVec};
use crate::sullivan::{nested_subalgebra, pair_relative_model, PairModel, SpectralSequence};
use crate::transgression::{build_transgression, canonical_elements, exterior_dims, primitives, Transgression};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionId {
    I,
    V,
    Vi,
    Vii,
    Viii,
}

impl ConditionId {
    pub const ALL: [ConditionId; 5] = [Self::I, Self::V, Self::Vi, Self::Vii, Self::Viii];

    pub fn name(self) -> &'static str {
        match self {
            Self::I => "i",
            Self::V => "v",
            Self::Vi => "vi",
            Self::Vii => "vii",
            Self::Viii => "viii",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::schema("conditions", format!("unknown condition {s:?}")))
    }
}

/// Parses a comma-separated condition list such as `"i,vii"`.
pub fn parse_conditions(list: &str) -> Result<BTreeSet<ConditionId>> {
    let set = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<BTreeSet<_>>>()?;
    if set.is_empty() {
        return Err(Error::schema("conditions", "no condition requested"));
    }
    Ok(set)
}

#[derive(Clone, Debug)]
pub struct Options {
    pub conditions: BTreeSet<ConditionId>,
    /// Replaces `dim g − dim k_h + 1` as the degree cap of (i) and (viii).
    pub cap: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            conditions: ConditionId::ALL.into_iter().collect(),
            cap: None,
        }
    }
}

/// One monomial with its coefficient; factors are `(generator name, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub factors: Vec<(String, u32)>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialElement {
    pub terms: Vec<Term>,
    pub text: String,
}

impl SerialElement {
    pub fn new(x: &GradedElement) -> Self {
        let gens = x.ambient();
        let terms = x
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut factors: Vec<(String, u32)> = m
                    .odd_slots()
                    .map(|i| (gens.generator(i).name.clone(), 1))
                    .collect();
                for (j, e) in m.even.iter().enumerate() {
                    if *e > 0 {
                        factors.push((gens.generator(gens.n_odd() + j).name.clone(), *e as u32));
                    }
                }
                Term {
                    factors,
                    coefficient: format_scalar(c),
                }
            })
            .collect();
        Self {
            terms,
            text: x.to_string(),
        }
    }

    /// Rebuilds the element over `ambient`; factors multiply left to right.
    pub fn element(&self, ambient: &Arc<GeneratorSet>) -> Result<GradedElement> {
        let mut out = GradedElement::zero(ambient);
        for (t, term) in self.terms.iter().enumerate() {
            let loc = format!("terms[{t}]");
            let c = parse_scalar(&term.coefficient)
                .ok_or_else(|| Error::schema(format!("{loc}.coefficient"), "not a rational"))?;
            let mut x = GradedElement::one(ambient);
            for (name, e) in &term.factors {
                let i = ambient
                    .index_of(name)
                    .ok_or_else(|| Error::schema(&loc, format!("unknown generator {name:?}")))?;
                x = x.mul(&GradedElement::generator(ambient, i).pow(*e));
            }
            out.add_scaled(&c, &x);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub rank_g: usize,
    pub rank_g_theta: usize,
    pub rank_h: usize,
    pub rank_k_h: usize,
}

impl Ranks {
    pub fn lhs(&self) -> usize {
        self.rank_g - self.rank_g_theta
    }

    pub fn rhs(&self) -> usize {
        self.rank_h - self.rank_k_h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Outcome<W> {
    fn from_witness(witness: Option<W>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// A class of `H^n(g, h)` that dies in `H^n(g, k_h)`: `cocycle = d primitive`
/// with `primitive` a `k_h`-relative cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonInjectiveClass {
    pub degree: usize,
    pub cocycle: SerialElement,
    pub primitive: SerialElement,
    /// Whether the class lies in the Chern-Weil image; `None` when no
    /// invariant complement was available to compute it.
    pub in_chern_weil_image: Option<bool>,
}

/// An element of `((S⁺ sh*)^h)^{−θ}` outside the restricted ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingPolynomial {
    pub degree: u32,
    pub polynomial: SerialElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingIndecomposables {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// An element of `(P_{h*})^{−θ}` outside the image of restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnreachedPrimitive {
    pub degree: u32,
    pub primitive: SerialElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonCollapse {
    pub degree: usize,
    pub e2_total: usize,
    pub target_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRestriction {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Top cohomological degree for (i) and (viii).
    pub degree: u32,
    /// Top shifted polynomial degree for (v) and (vi).
    pub polynomial: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub i: Option<Outcome<NonInjectiveClass>>,
    pub v: Option<Outcome<MissingPolynomial>>,
    pub vi: Option<Outcome<MissingIndecomposables>>,
    pub vii: Outcome<UnreachedPrimitive>,
    pub viii: Option<Outcome<NonCollapse>>,
    pub restriction: PrimitiveRestriction,
    pub caps: Caps,
}

impl ConditionReport {
    /// The computed booleans in condition order.
    pub fn booleans(&self) -> Vec<(ConditionId, bool)> {
        let mut out = Vec::new();
        if let Some(o) = &self.i {
            out.push((ConditionId::I, o.holds));
        }
        if let Some(o) = &self.v {
            out.push((ConditionId::V, o.holds));
        }
        if let Some(o) = &self.vi {
            out.push((ConditionId::Vi, o.holds));
        }
        out.push((ConditionId::Vii, self.vii.holds));
        if let Some(o) = &self.viii {
            out.push((ConditionId::Viii, o.holds));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    RankCriterion,
    NonInjectiveI,
    NoneFound,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::RankCriterion => "RANK_CRITERION",
            Reason::NonInjectiveI => "NON_INJECTIVE_I",
            Reason::NoneFound => "NONE_FOUND",
        })
    }
}

/// `NONE_FOUND` only means that no obstruction was detected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub rank_lhs: usize,
    pub rank_rhs: usize,
    pub obstructed: bool,
    pub reason: Reason,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        if self.obstructed {
            "OBSTRUCTED"
        } else {
            "NOT_OBSTRUCTED"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTables {
    /// `dim H^n(g, h)`.
    pub relative: Vec<usize>,
    /// `dim H^n(g, k_h)`.
    pub relative_fixed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub ranks: Ranks,
    pub cohomology: CohomologyTables,
    pub conditions: ConditionReport,
    pub verdict: Verdict,
}

/// Everything the conditions share: `k_h`, both transgressions and the
/// pure model of `(g, h)`.
pub struct PairContext<'a> {
    pair: &'a Pair,
    k: Subalgebra,
    model: PairModel,
}

impl<'a> PairContext<'a> {
    pub fn new(pair: &'a Pair) -> Result<Self> {
        if pair.g.theta().is_none() {
            return Err(Error::Validation(format!(
                "{}: the algebra carries no involution",
                pair.name
            )));
        }
        let k = pair.h.fixed_part(&pair.g, "k_h")?;
        let model = PairModel::build(&pair.g, &pair.h)?;
        Ok(Self { pair, k, model })
    }

    pub fn pair(&self) -> &Pair {
        self.pair
    }

    /// `k_h = h^θ` inside `g`.
    pub fn k(&self) -> &Subalgebra {
        &self.k
    }

    pub fn model(&self) -> &PairModel {
        &self.model
    }

    fn g(&self) -> &LieAlgebra {
        &self.pair.g
    }

    fn h(&self) -> &Subalgebra {
        &self.pair.h
    }

    fn tg(&self) -> &Transgression {
        self.model.tg()
    }

    fn th(&self) -> &Transgression {
        self.model.th()
    }

    /// `dim g − dim k_h + 1`.
    pub fn default_cap(&self) -> u32 {
        (self.g().dim() - self.k.dim() + 1) as u32
    }

    /// Largest primitive degree of `h` plus one, within the computed
    /// polynomials.
    pub fn polynomial_cap(&self) -> u32 {
        let top = self.th().primitives().max_degree() + 1;
        top.min(self.th().polynomials().cap())
            .min(self.tg().polynomials().cap())
    }

    pub fn ranks(&self) -> Result<Ranks> {
        let g = self.g();
        let g_theta = Subalgebra::whole(g).fixed_part(g, "g_theta")?;
        let ranks = Ranks {
            rank_g: self.tg().primitives().dim(),
            rank_g_theta: primitives(g_theta.algebra())?.dim(),
            rank_h: self.th().primitives().dim(),
            rank_k_h: primitives(self.k.algebra())?.dim(),
        };
        let minus_g = self.tg().primitives().minus_basis().len();
        let minus_h = self.th().primitives().minus_basis().len();
        if minus_g != ranks.lhs() || minus_h != ranks.rhs() {
            return Err(Error::Invariant(format!(
                "{}: dim P^(−θ) is {minus_g} for g and {minus_h} for h, but the ranks give {} and {}",
                self.pair.name,
                ranks.lhs(),
                ranks.rhs()
            )));
        }
        Ok(ranks)
    }

    /// The relative complexes of `(g, h)` and `(g, k_h)` up to `cap`.
    pub fn relative_complexes(&self, cap: u32) -> Result<(CochainComplex, CochainComplex)> {
        let (gh, gk) = rayon::join(
            || relative_complex(self.g(), self.h(), cap),
            || relative_complex(self.g(), &self.k, cap),
        );
        Ok((gh?, gk?))
    }

    /// (i): the first class of `H(g, h)` that becomes a coboundary in the
    /// `(g, k_h)` complex.
    pub fn non_injective_class(
        &self,
        gh: &CochainComplex,
        gk: &CochainComplex,
    ) -> Result<Option<NonInjectiveClass>> {
        let reps = gh.cohomology().representatives;
        for (n, reps) in reps.iter().enumerate() {
            if reps.is_empty() {
                continue;
            }
            let mut red = Reducer::tracking();
            let boundaries = if n > 0 {
                gk.differential(n - 1).columns().to_vec()
            } else {
                Vec::new()
            };
            for b in &boundaries {
                red.insert(b);
            }
            let nb = boundaries.len();
            for rep in reps {
                let z = gh.element(n, rep);
                let c = gk.coords(n, &z).ok_or_else(|| {
                    Error::Invariant(format!("an (g, h) cochain of degree {n} is not (g, k_h)-relative"))
                })?;
                let Insertion::Dependent(rel) = red.insert(&c) else {
                    continue;
                };
                let mut cocycle = GradedElement::zero(gh.ambient());
                let mut y = SparseVec::new();
                for (id, coef) in rel.entries() {
                    if *id >= nb {
                        cocycle.add_scaled(coef, &gh.element(n, &reps[*id - nb]));
                    } else {
                        y = y.add_scaled(&-coef.clone(), &SparseVec::unit(*id));
                    }
                }
                let primitive = gk.element(n - 1, &y);
                let in_image = self.in_chern_weil_image(gh, n, &cocycle)?;
                return Ok(Some(NonInjectiveClass {
                    degree: n,
                    cocycle: SerialElement::new(&cocycle),
                    primitive: SerialElement::new(&primitive),
                    in_chern_weil_image: in_image,
                }));
            }
        }
        Ok(None)
    }

    /// Whether the class of `z` lies in `w((S sh*)^h)`; `None` without an
    /// orthogonal complement.
    fn in_chern_weil_image(&self, gh: &CochainComplex, n: usize, z: &GradedElement) -> Result<Option<bool>> {
        let hp = self.th().polynomials();
        if n % 2 == 1 {
            return Ok(Some(false));
        }
        if n as u32 > hp.cap() {
            return Ok(None);
        }
        let Ok(v) = Complement::orthogonal(self.g(), self.h()) else {
            return Ok(None);
        };
        let cartan = CartanModel::new(self.g(), self.h());
        let mut red = Reducer::new();
        if n > 0 {
            for c in gh.differential(n - 1).columns() {
                red.insert(c);
            }
        }
        for q in hp.basis(n as u32) {
            let w = chern_weil(&cartan, &v, &q.rebase(cartan.polynomials()));
            let c = gh
                .coords(n, &w.rebase(gh.ambient()))
                .ok_or_else(|| Error::Invariant("Chern-Weil form is not (g, h)-relative".into()))?;
            red.insert(&c);
        }
        let c = gh
            .coords(n, z)
            .ok_or_else(|| Error::Invariant("witness cocycle is not (g, h)-relative".into()))?;
        Ok(Some(red.contains(&c)))
    }

    fn theta_on_h_polynomials(&self) -> Result<&AlgebraMap> {
        self.th()
            .theta_on_polynomials()
            .ok_or_else(|| Error::Invariant("h carries no induced involution".into()))
    }

    /// Canonical basis of `((S sh*)^h)^{−θ}` in shifted degree `n`.
    pub fn minus_polynomials(&self, n: u32) -> Result<Vec<GradedElement>> {
        let hp = self.th().polynomials();
        let theta = self.theta_on_h_polynomials()?;
        let half = frac(1, 2);
        let odd: Vec<GradedElement> = hp
            .basis(n)
            .iter()
            .map(|x| x.minus(&theta.apply(x)).scaled(&half))
            .filter(|x| !x.is_zero())
            .collect();
        Ok(canonical_elements(hp.ambient(), n, &odd))
    }

    /// (v): the first `−θ` invariant polynomial outside the restricted ideal.
    pub fn missing_polynomial(&self, cap: u32) -> Result<Option<MissingPolynomial>> {
        for n in (2..=cap).step_by(2) {
            let ideal = ElementSpan::from_elements(&self.model.restricted_ideal(n));
            for x in self.minus_polynomials(n)? {
                if !ideal.contains(&x) {
                    return Ok(Some(MissingPolynomial {
                        degree: n,
                        polynomial: SerialElement::new(&x),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Rank data of restriction on `−θ` indecomposables in shifted degree `n`.
    pub fn indecomposable_restriction(&self, n: u32) -> Result<MissingIndecomposables> {
        let Some(target) = self.th().indecomposables(n) else {
            return Ok(MissingIndecomposables {
                degree: n,
                source_dim: 0,
                target_dim: 0,
                rank: 0,
            });
        };
        let sources: Vec<Vec<Scalar>> = self
            .tg()
            .indecomposables(n)
            .map(|s| s.minus().iter().map(|c| c.to_vec()).collect())
            .unwrap_or_default();
        let lifts = self.tg().indecomposables(n);
        let images = sources
            .iter()
            .map(|c| {
                let x = lifts.expect("source present").lift(c);
                let r = self.model.restriction().apply(&x);
                target
                    .project(&r)
                    .map(|v| SparseVec::from_dense(&v))
                    .ok_or_else(|| Error::Invariant(format!("restriction leaves (S sh*)^h in degree {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let minus: Vec<SparseVec> = target.minus().iter().map(|c| SparseVec::from_dense(c)).collect();
        let rank = rank_of(&images);
        let joint: Vec<SparseVec> = images.iter().chain(&minus).cloned().collect();
        if rank_of(&joint) != minus.len() {
            return Err(Error::Invariant(format!(
                "restriction does not commute with θ on indecomposables of degree {n}"
            )));
        }
        Ok(MissingIndecomposables {
            degree: n,
            source_dim: sources.len(),
            target_dim: minus.len(),
            rank,
        })
    }

    /// (vi): the first degree where restriction misses part of the `−θ`
    /// indecomposables of `h`.
    pub fn missing_indecomposables(&self, cap: u32) -> Result<Option<MissingIndecomposables>> {
        for n in (2..=cap).step_by(2) {
            let r = self.indecomposable_restriction(n)?;
            if r.rank < r.target_dim {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    fn restrict_forms(&self) -> AlgebraMap {
        dual_restriction(
            self.tg().primitives().forms(),
            self.th().primitives().forms(),
            self.h().basis(),
        )
    }

    /// Coordinates over `P_{h*}` of an invariant form on `h`, dropping the
    /// decomposable part.
    fn primitive_part(&self, x: &GradedElement) -> Result<SparseVec> {
        let ph = self.th().primitives();
        let Some(d) = x.homogeneous_degree() else {
            return Ok(SparseVec::new());
        };
        let dec = ph.decomposables(d as usize);
        let idx: Vec<usize> = (0..ph.dim()).filter(|i| ph.degrees()[*i] == d).collect();
        let span = ElementSpan::from_elements(dec.iter().chain(idx.iter().map(|i| &ph.basis()[*i])));
        let c = span
            .solve(x)
            .ok_or_else(|| Error::Invariant(format!("restricted form of degree {d} is not h-invariant")))?;
        Ok(SparseVec::from_pairs(
            idx.iter()
                .enumerate()
                .map(|(k, i)| (*i, c.get(dec.len() + k)))
                .filter(|(_, c)| !c.is_zero()),
        ))
    }

    /// (vii): restriction on `−θ` primitives, and the first `−θ` primitive
    /// of `h` it misses.
    pub fn primitive_restriction(&self) -> Result<(PrimitiveRestriction, Option<UnreachedPrimitive>)> {
        let res = self.restrict_forms();
        let ph = self.th().primitives();
        let images = self
            .tg()
            .primitives()
            .minus_basis()
            .iter()
            .map(|a| self.primitive_part(&res.apply(a)))
            .collect::<Result<Vec<_>>>()?;
        let minus: Vec<Vec<Scalar>> = ph
            .theta_split()
            .map(|(_, m)| m.clone())
            .unwrap_or_default();
        let mut red = Reducer::new();
        for v in &images {
            red.insert(v);
        }
        let rank = red.rank();
        let mut witness = None;
        for c in &minus {
            if !red.contains(&SparseVec::from_dense(c)) {
                let x = ph.element(c);
                witness = Some(UnreachedPrimitive {
                    degree: x.homogeneous_degree().unwrap_or(0),
                    primitive: SerialElement::new(&x),
                });
                break;
            }
        }
        let joint: Vec<SparseVec> = images
            .iter()
            .cloned()
            .chain(minus.iter().map(|c| SparseVec::from_dense(c)))
            .collect();
        if rank_of(&joint) != minus.len() {
            return Err(Error::Invariant("restriction does not commute with θ on primitives".into()));
        }
        let info = PrimitiveRestriction {
            source_dim: images.len(),
            target_dim: minus.len(),
            rank,
        };
        Ok((info, witness))
    }

    /// The spectral sequence of `model(g, h) → model(g, k_h)`.
    pub fn spectral_sequence(&self, cap: u32) -> Result<SpectralSequence> {
        if !self.th().theta_compatible() {
            return Err(Error::Invariant(format!(
                "{}: the transgression of h is not compatible with θ",
                self.pair.name
            )));
        }
        let k_in_h = nested_subalgebra(self.h(), &self.k, "k_h")?;
        let tk = Arc::new(build_transgression(k_in_h.algebra(), Some(self.th().cap()))?);
        let hk = PairModel::new(
            self.h().algebra(),
            &k_in_h,
            self.model.th().clone(),
            tk,
            "b",
            "c",
        )?;
        let rel = pair_relative_model(&self.model, &hk)?;
        SpectralSequence::new(&rel, cap)
    }

    /// (viii): the first total degree where `E_2` is larger than the limit.
    pub fn non_collapse(&self, cap: u32) -> Result<Option<NonCollapse>> {
        let ss = self.spectral_sequence(cap)?;
        Ok(first_non_collapse(&ss))
    }

    /// `dim H^n(g, h) = Σ_j dim Λ(P^{−θ})^j · dim (im w′)^{n−j}` for
    /// `h = g^θ`; `None` when `h ≠ g^θ`.
    pub fn symmetric_structure_holds(&self, relative: &[usize]) -> Result<Option<bool>> {
        let g = self.g();
        let g_theta = Subalgebra::whole(g).fixed_part(g, "g_theta")?;
        let mut red = Reducer::new();
        for v in self.h().basis() {
            red.insert(v);
        }
        if g_theta.dim() != self.h().dim() || !g_theta.basis().iter().all(|v| red.contains(v)) {
            return Ok(None);
        }
        let hp = self.th().polynomials();
        let top = (relative.len() - 1).min(hp.cap() as usize);
        let degrees: Vec<u32> = self
            .tg()
            .primitives()
            .minus_basis()
            .iter()
            .filter_map(GradedElement::homogeneous_degree)
            .collect();
        let ext = exterior_dims(&degrees, top);
        let image: Vec<usize> = (0..=top as u32)
            .map(|n| {
                let ideal = ElementSpan::from_elements(&self.model.restricted_ideal(n));
                hp.basis(n).len() - ideal.rank()
            })
            .collect();
        Ok(Some((0..=top).all(|n| {
            let expected: usize = (0..=n).map(|j| ext[j] * image[n - j]).sum();
            expected == relative[n]
        })))
    }

    pub fn analyze(&self, opts: &Options) -> Result<Analysis> {
        let want = |c| opts.conditions.contains(&c);
        let ranks = self.ranks()?;
        let cap = opts.cap.unwrap_or_else(|| self.default_cap());
        let pcap = self.polynomial_cap();
        let (gh, gk) = self.relative_complexes(cap)?;
        let cohomology = CohomologyTables {
            relative: gh.cohomology().dims,
            relative_fixed: gk.cohomology().dims,
        };

        let i = if want(ConditionId::I) {
            Some(Outcome::from_witness(self.non_injective_class(&gh, &gk)?))
        } else {
            None
        };
        let v = if want(ConditionId::V) {
            Some(Outcome::from_witness(self.missing_polynomial(pcap)?))
        } else {
            None
        };
        let vi = if want(ConditionId::Vi) {
            Some(Outcome::from_witness(self.missing_indecomposables(pcap)?))
        } else {
            None
        };
        let (restriction, unreached) = self.primitive_restriction()?;
        let vii = Outcome::from_witness(unreached);
        let viii = if want(ConditionId::Viii) {
            Some(Outcome::from_witness(self.non_collapse(cap)?))
        } else {
            None
        };
        let conditions = ConditionReport {
            i,
            v,
            vi,
            vii,
            viii,
            restriction,
            caps: Caps {
                degree: cap,
                polynomial: pcap,
            },
        };
        let verdict = verdict(&ranks, &conditions);
        let analysis = Analysis {
            ranks,
            cohomology,
            conditions,
            verdict,
        };
        self.check_consistency(&analysis)?;
        Ok(analysis)
    }

    fn check_consistency(&self, a: &Analysis) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Invariant(format!(
                "{}: {what}\n{}",
                self.pair.name,
                serde_json::to_string_pretty(a).unwrap_or_default()
            )))
        };
        let c = &a.conditions;
        let bools = c.booleans();
        if bools.iter().any(|(_, b)| *b != c.vii.holds) {
            return fail("the conditions disagree");
        }
        if a.verdict.rank_lhs < a.verdict.rank_rhs && c.vii.holds {
            return fail("restriction is onto a space of larger dimension");
        }
        if a.verdict.reason == Reason::NonInjectiveI && c.i.as_ref().is_some_and(|o| o.holds) {
            return fail("NON_INJECTIVE_I reported with (i) true");
        }
        if let (Some(i), Some(v)) = (&c.i, &c.v) {
            let in_image = i.witness.as_ref().and_then(|w| w.in_chern_weil_image);
            if in_image == Some(true) && v.holds {
                return fail("a Chern-Weil class dies in H(g, k_h) while (v) holds");
            }
        }
        if self.symmetric_structure_holds(&a.cohomology.relative)? == Some(false) {
            return fail("H(g, g^θ) does not split as Λ P^(−θ) ⊗ im w′");
        }
        Ok(())
    }

    /// Re-checks every witness in a report against this pair.
    pub fn verify_witnesses(&self, report: &ConditionReport) -> Result<Vec<(ConditionId, bool)>> {
        let mut out = Vec::new();
        if let Some(w) = report.i.as_ref().and_then(|o| o.witness.as_ref()) {
            out.push((ConditionId::I, self.verify_non_injective(w, report.caps.degree)?));
        }
        if let Some(w) = report.v.as_ref().and_then(|o| o.witness.as_ref()) {
            out.push((ConditionId::V, self.verify_missing_polynomial(w)?));
        }
        if let Some(w) = report.vi.as_ref().and_then(|o| o.witness.as_ref()) {
            out.push((ConditionId::Vi, self.indecomposable_restriction(w.degree)? == *w && w.rank < w.target_dim));
        }
        if let Some(w) = &report.vii.witness {
            out.push((ConditionId::Vii, self.verify_unreached(w)?));
        }
        if let Some(w) = report.viii.as_ref().and_then(|o| o.witness.as_ref()) {
            let ss = self.spectral_sequence(report.caps.degree)?;
            let ok = w.e2_total != w.target_dim
                && ss.totals(2).get(w.degree) == Some(&w.e2_total)
                && ss.target_dims().get(w.degree) == Some(&w.target_dim);
            out.push((ConditionId::Viii, ok));
        }
        Ok(out)
    }

    fn verify_non_injective(&self, w: &NonInjectiveClass, cap: u32) -> Result<bool> {
        let a = dual_generators(self.g());
        let z = w.cocycle.element(&a)?;
        let y = w.primitive.element(&a)?;
        let n = w.degree;
        if z.is_zero() || n == 0 || n > cap as usize {
            return Ok(false);
        }
        if ce_derivation(self.g(), &a).apply(&y) != z {
            return Ok(false);
        }
        let (gh, gk) = self.relative_complexes(cap)?;
        let (Some(zc), Some(_)) = (gh.coords(n, &z), gk.coords(n - 1, &y)) else {
            return Ok(false);
        };
        Ok(gh.is_cocycle(n, &zc) && gh.coboundary_preimage(n, &zc).is_none())
    }

    fn verify_missing_polynomial(&self, w: &MissingPolynomial) -> Result<bool> {
        let hp = self.th().polynomials();
        if w.degree > hp.cap() {
            return Ok(false);
        }
        let x = w.polynomial.element(hp.ambient())?;
        let theta = self.theta_on_h_polynomials()?;
        let invariant = ElementSpan::from_elements(hp.basis(w.degree)).contains(&x);
        let odd = theta.apply(&x) == x.scaled(&-Scalar::one());
        let ideal = ElementSpan::from_elements(&self.model.restricted_ideal(w.degree));
        Ok(!x.is_zero() && invariant && odd && !ideal.contains(&x))
    }

    fn verify_unreached(&self, w: &UnreachedPrimitive) -> Result<bool> {
        let ph = self.th().primitives();
        let x = w.primitive.element(ph.forms())?;
        let Some(theta) = self.h().algebra().theta() else {
            return Ok(false);
        };
        let odd = theta_on_forms(theta, ph.forms()).apply(&x) == x.scaled(&-Scalar::one());
        if x.is_zero() || !odd || ph.coords(&x).is_none() {
            return Ok(false);
        }
        let res = self.restrict_forms();
        let mut red = Reducer::new();
        for a in self.tg().primitives().minus_basis() {
            red.insert(&self.primitive_part(&res.apply(&a))?);
        }
        Ok(!red.contains(&self.primitive_part(&x)?))
    }
}

fn first_non_collapse(ss: &SpectralSequence) -> Option<NonCollapse> {
    ss.totals(2)
        .iter()
        .zip(ss.target_dims())
        .enumerate()
        .find(|(_, (e, t))| e != t)
        .map(|(n, (e, t))| NonCollapse {
            degree: n,
            e2_total: *e,
            target_dim: *t,
        })
}

pub fn verdict(ranks: &Ranks, conditions: &ConditionReport) -> Verdict {
    let (lhs, rhs) = (ranks.lhs(), ranks.rhs());
    let reason = if lhs < rhs {
        Reason::RankCriterion
    } else if conditions.i.as_ref().is_some_and(|o| !o.holds) {
        Reason::NonInjectiveI
    } else {
        Reason::NoneFound
    };
    Verdict {
        rank_lhs: lhs,
        rank_rhs: rhs,
        obstructed: !conditions.vii.holds,
        reason,
    }
}

/// Runs the battery on one pair.
pub fn analyze(pair: &Pair, opts: &Options) -> Result<Analysis> {
    PairContext::new(pair)?.analyze(opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    fn pair(name: &str) -> Pair {
        catalog::pairs()
            .unwrap()
            .into_iter()
            .find(|p| p.name == name)
            .unwrap()
    }

    #[test]
    fn split_torus_is_obstructed_by_rank() {
        let p = pair("sl2/so11");
        let a = analyze(&p, &Options::default()).unwrap();
        assert_eq!((a.verdict.rank_lhs, a.verdict.rank_rhs), (0, 1));
        assert!(a.verdict.obstructed);
        assert_eq!(a.verdict.reason, Reason::RankCriterion);
        let w = a.conditions.i.as_ref().unwrap().witness.as_ref().unwrap();
        assert_eq!(w.degree, 2);
        assert_eq!(w.cocycle.text, "e*∧f*");
        assert_eq!(w.primitive.text, "h*");
        let v = a.conditions.v.as_ref().unwrap().witness.as_ref().unwrap();
        assert_eq!(v.degree, 2);
        assert_eq!(a.conditions.restriction.target_dim, 1);
        assert_eq!(a.conditions.restriction.source_dim, 0);
    }

    #[test]
    fn compact_subgroup_and_diagonal_are_not_obstructed() {
        for name in ["sl2/so2", "sl2xsl2/diag"] {
            let a = analyze(&pair(name), &Options::default()).unwrap();
            assert!(!a.verdict.obstructed, "{name}");
            assert_eq!(a.verdict.reason, Reason::NoneFound);
            assert!(a.conditions.booleans().iter().all(|(_, b)| *b));
            assert_eq!(a.conditions.booleans().len(), 5);
        }
    }

    #[test]
    fn witnesses_verify() {
        let p = pair("sl2/so11");
        let ctx = PairContext::new(&p).unwrap();
        let a = ctx.analyze(&Options::default()).unwrap();
        let checks = ctx.verify_witnesses(&a.conditions).unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|(_, ok)| *ok), "{checks:?}");
    }

    #[test]
    fn serial_elements_round_trip() {
        let g = catalog::sl(3).unwrap();
        let a = dual_generators(&g);
        let x = GradedElement::generator(&a, 1)
            .mul(&GradedElement::generator(&a, 4))
            .scaled(&frac(-3, 2))
            .plus(&GradedElement::generator(&a, 0));
        let s = SerialElement::new(&x);
        assert_eq!(s.element(&a).unwrap(), x);
        let json = serde_json::to_string(&s).unwrap();
        let back: SerialElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn condition_lists_parse() {
        let set = parse_conditions("vii, i").unwrap();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![ConditionId::I, ConditionId::Vii]);
        assert!(parse_conditions("ix").is_err());
        assert!(parse_conditions("").is_err());
    }
}
