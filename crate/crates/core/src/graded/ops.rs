use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{GeneratorSet, GradedElement, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Scalar, SparseVec};

/// A derivation of `Λ(odd) ⊗ S(even)` of fixed degree, determined by its
/// values on generators. Odd-degree derivations obey
/// `D(ab) = D(a)b + (-1)^{|a|} a D(b)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    ambient: Arc<GeneratorSet>,
    degree: i32,
    images: Vec<GradedElement>,
}

impl Derivation {
    pub fn new(ambient: &Arc<GeneratorSet>, degree: i32, images: Vec<GradedElement>) -> Self {
        assert_eq!(images.len(), ambient.len(), "one image per generator");
        Self {
            ambient: ambient.clone(),
            degree,
            images,
        }
    }

    pub fn zero(ambient: &Arc<GeneratorSet>, degree: i32) -> Self {
        Self::new(
            ambient,
            degree,
            vec![GradedElement::zero(ambient); ambient.len()],
        )
    }

    /// `ι(α)` for a functional `alpha` on the span of the odd generators of
    /// one common degree: the odd derivation with `ι(α)x = α(x)`.
    pub fn interior(ambient: &Arc<GeneratorSet>, alpha: &[Scalar]) -> Result<Self> {
        let deg = Self::functional_degree(ambient, alpha, 0..ambient.n_odd())?;
        let images = (0..ambient.len())
            .map(|i| match alpha.get(i) {
                Some(c) if i < ambient.n_odd() => {
                    GradedElement::monomial(ambient, Monomial::unit(ambient), c.clone())
                }
                _ => GradedElement::zero(ambient),
            })
            .collect();
        Ok(Self::new(ambient, -(deg as i32), images))
    }

    /// `∂(α)` for a functional `alpha` on the span of the even generators
    /// (indexed by even slot): the even derivation with `∂(α)y = α(y)`.
    pub fn polynomial(ambient: &Arc<GeneratorSet>, alpha: &[Scalar]) -> Result<Self> {
        let n_odd = ambient.n_odd();
        let mut full = vec![Scalar::zero(); ambient.len()];
        for (j, c) in alpha.iter().enumerate() {
            full[n_odd + j] = c.clone();
        }
        let deg = Self::functional_degree(ambient, &full, n_odd..ambient.len())?;
        let images = (0..ambient.len())
            .map(|i| {
                if i >= n_odd && !full[i].is_zero() {
                    GradedElement::monomial(ambient, Monomial::unit(ambient), full[i].clone())
                } else {
                    GradedElement::zero(ambient)
                }
            })
            .collect();
        Ok(Self::new(ambient, -(deg as i32), images))
    }

    fn functional_degree(
        ambient: &GeneratorSet,
        alpha: &[Scalar],
        range: std::ops::Range<usize>,
    ) -> Result<u32> {
        let mut deg = None;
        for i in range {
            if alpha.get(i).is_some_and(|c| !c.is_zero()) {
                let d = ambient.generator(i).degree;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::Validation(
                            "functional is not homogeneous".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(deg.unwrap_or(0))
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn image(&self, i: usize) -> &GradedElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[GradedElement] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> GradedElement {
        let amb = &self.ambient;
        let mut out = GradedElement::zero(amb);
        let odd = self.is_odd();
        // Odd part: x_{p1} ... x_{pk}; D hits the t-th factor with sign (-1)^{|D| t}.
        let slots: Vec<usize> = m.odd_slots().collect();
        let mut even_part = Monomial::unit(amb);
        even_part.even = m.even.clone();
        for (t, &p) in slots.iter().enumerate() {
            let img = &self.images[p];
            if img.is_zero() {
                continue;
            }
            let mut left = Monomial::unit(amb);
            let mut right = Monomial::unit(amb);
            for (s, &q) in slots.iter().enumerate() {
                if s < t {
                    left.odd |= 1 << q;
                } else if s > t {
                    right.odd |= 1 << q;
                }
            }
            right.even = m.even.clone();
            let sign = if odd && t % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            let term = img.left_mul_monomial(&left, &sign).right_mul_monomial(&right);
            out.add_scaled(&Scalar::one(), &term);
        }
        // Even part: odd_part * (a y^{a-1} D(y)) * rest, sign (-1)^{|D| |odd part|}.
        let mut odd_part = Monomial::unit(amb);
        odd_part.odd = m.odd;
        let odd_deg_parity = slots.len() % 2 == 1;
        let n_odd = amb.n_odd();
        for (j, &a) in m.even.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let img = &self.images[n_odd + j];
            if img.is_zero() {
                continue;
            }
            let mut rest = Monomial::unit(amb);
            rest.even = m.even.clone();
            rest.even[j] -= 1;
            let mut c = int(a as i64);
            if odd && odd_deg_parity {
                c = -c;
            }
            let term = img.left_mul_monomial(&odd_part, &c).right_mul_monomial(&rest);
            out.add_scaled(&Scalar::one(), &term);
        }
        out
    }

    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(&self.ambient);
        for (m, c) in x.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// Linear combination `sum c_i D_i` of derivations of one degree.
    pub fn combine(parts: &[(Scalar, &Derivation)]) -> Derivation {
        let first = parts[0].1;
        let mut images = vec![GradedElement::zero(&first.ambient); first.ambient.len()];
        for (c, d) in parts {
            assert_eq!(d.degree, first.degree, "derivations of different degrees");
            for (img, di) in images.iter_mut().zip(&d.images) {
                img.add_scaled(c, di);
            }
        }
        Derivation::new(&first.ambient, first.degree, images)
    }

    pub fn commutator_is_zero_on(&self, other: &Derivation, x: &GradedElement) -> bool {
        let sign = if self.is_odd() && other.is_odd() {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let mut v = self.apply(&other.apply(x));
        v.add_scaled(&sign, &other.apply(&self.apply(x)));
        v.is_zero()
    }
}

/// Graded algebra homomorphism determined by generator images in a target ambient.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<GeneratorSet>,
    target: Arc<GeneratorSet>,
    images: Vec<GradedElement>,
}

impl AlgebraMap {
    pub fn new(
        source: &Arc<GeneratorSet>,
        target: &Arc<GeneratorSet>,
        images: Vec<GradedElement>,
    ) -> Self {
        assert_eq!(images.len(), source.len(), "one image per generator");
        Self {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Arc<GeneratorSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorSet> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &GradedElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[GradedElement] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> GradedElement {
        let mut out = GradedElement::one(&self.target);
        for p in m.odd_slots() {
            out = out.mul(&self.images[p]);
            if out.is_zero() {
                return out;
            }
        }
        let n_odd = self.source.n_odd();
        for (j, &a) in m.even.iter().enumerate() {
            for _ in 0..a {
                out = out.mul(&self.images[n_odd + j]);
            }
        }
        out
    }

    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(&self.target);
        for (m, c) in x.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap::new(
            &first.source,
            &self.target,
            first.images.iter().map(|x| self.apply(x)).collect(),
        )
    }
}

/// Canonically ordered monomial basis of the degree-`n` part.
pub fn basis_of_degree(gens: &GeneratorSet, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut odd_parts: Vec<(u64, u32)> = Vec::new();
    fn odd_rec(gens: &GeneratorSet, i: usize, mask: u64, deg: u32, cap: u32, out: &mut Vec<(u64, u32)>) {
        if i == gens.n_odd() {
            out.push((mask, deg));
            return;
        }
        odd_rec(gens, i + 1, mask, deg, cap, out);
        let d = deg + gens.odd_degree(i);
        if d <= cap {
            odd_rec(gens, i + 1, mask | 1 << i, d, cap, out);
        }
    }
    odd_rec(gens, 0, 0, 0, n, &mut odd_parts);
    fn even_rec(gens: &GeneratorSet, j: usize, rem: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if j == gens.n_even() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = gens.even_degree(j);
        let mut e = 0u32;
        while e * d <= rem {
            cur.push(e as u8);
            even_rec(gens, j + 1, rem - e * d, cur, out);
            cur.pop();
            e += 1;
        }
    }
    for (mask, deg) in odd_parts {
        let mut evens = Vec::new();
        even_rec(gens, 0, n - deg, &mut Vec::new(), &mut evens);
        for e in evens {
            out.push(Monomial {
                odd: mask,
                even: e.into_iter().collect(),
            });
        }
    }
    out.sort();
    out
}

/// Indexed monomial basis of one degree, converting between elements and
/// coordinate vectors.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(gens: &GeneratorSet, degree: u32) -> Self {
        Self::from_monomials(degree, basis_of_degree(gens, degree))
    }

    pub fn from_monomials(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous element; errors if a term lies outside this basis.
    pub fn coords(&self, x: &GradedElement) -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(x.terms().len());
        for (m, c) in x.terms() {
            let i = self.index_of(m).ok_or_else(|| {
                Error::Invariant(format!(
                    "term {} is not of degree {}",
                    m.render(x.ambient()),
                    self.degree
                ))
            })?;
            pairs.push((i, c.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn element(&self, ambient: &Arc<GeneratorSet>, v: &SparseVec) -> GradedElement {
        GradedElement::from_terms(
            ambient,
            v.entries()
                .iter()
                .map(|(i, c)| (self.monomials[*i].clone(), c.clone())),
        )
    }
}

/// Matrix of a linear operator between two degree bases.
pub fn operator_matrix(
    src: &DegreeBasis,
    dst: &DegreeBasis,
    ambient: &Arc<GeneratorSet>,
    op: impl Fn(&GradedElement) -> GradedElement,
) -> Result<Matrix> {
    let mut cols = Vec::with_capacity(src.len());
    for m in src.monomials() {
        let x = GradedElement::monomial(ambient, m.clone(), Scalar::one());
        cols.push(dst.coords(&op(&x))?);
    }
    Ok(Matrix::from_columns(dst.len(), &cols))
}
