use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Scalar};

pub type Exponents = SmallVec<[u8; 16]>;

/// Monomial `x_{i1} ∧ … ∧ x_{ik} · y_1^{a_1} ⋯ y_m^{a_m}` with the odd part in
/// increasing generator order. Ordering is total and fixed, so term maps sort
/// deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub odd: u64,
    pub even: Exponents,
}

impl Monomial {
    pub fn unit(gens: &GeneratorSet) -> Self {
        Monomial {
            odd: 0,
            even: SmallVec::from_elem(0, gens.n_even()),
        }
    }

    /// The monomial consisting of the single generator with global index `i`.
    pub fn generator(gens: &GeneratorSet, i: usize) -> Self {
        let mut m = Self::unit(gens);
        if i < gens.n_odd() {
            m.odd = 1 << i;
        } else {
            m.even[i - gens.n_odd()] = 1;
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|e| *e == 0)
    }

    pub fn degree(&self, gens: &GeneratorSet) -> u32 {
        let odd: u32 = self.odd_slots().map(|i| gens.odd_degree(i)).sum();
        let even: u32 = self
            .even
            .iter()
            .enumerate()
            .map(|(j, e)| *e as u32 * gens.even_degree(j))
            .sum();
        odd + even
    }

    pub fn odd_slots(&self) -> impl Iterator<Item = usize> {
        let mask = self.odd;
        (0..64).filter(move |i| mask >> i & 1 == 1)
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    /// Total exponent of the symmetric part.
    pub fn even_length(&self) -> u32 {
        self.even.iter().map(|e| *e as u32).sum()
    }

    /// Product of monomials with its Koszul sign; `None` when an odd
    /// generator repeats. The sign counts transpositions needed to merge the
    /// odd parts into increasing order.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut b = other.odd;
        while b != 0 {
            let j = b.trailing_zeros();
            let above = if j >= 63 { 0 } else { self.odd >> (j + 1) };
            swaps += above.count_ones();
            b &= b - 1;
        }
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
            .collect();
        Some((
            Monomial {
                odd: self.odd | other.odd,
                even,
            },
            swaps % 2 == 1,
        ))
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        let mut parts: Vec<String> = self
            .odd_slots()
            .map(|i| gens.generator(i).name.clone())
            .collect();
        let odd = parts.join("∧");
        parts.clear();
        for (j, e) in self.even.iter().enumerate() {
            let name = &gens.generator(gens.n_odd() + j).name;
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        let even = parts.join("·");
        match (odd.is_empty(), even.is_empty()) {
            (true, true) => "1".into(),
            (false, true) => odd,
            (true, false) => even,
            (false, false) => format!("{odd}⊗{even}"),
        }
    }
}

/// Element of `Λ(odd) ⊗ S(even)`: a sparse map from monomials to nonzero
/// rational coefficients, tied to its ambient generator set.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    ambient: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedElement {
    pub fn zero(ambient: &Arc<GeneratorSet>) -> Self {
        Self {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Arc<GeneratorSet>) -> Self {
        Self::monomial(ambient, Monomial::unit(ambient), Scalar::one())
    }

    pub fn generator(ambient: &Arc<GeneratorSet>, i: usize) -> Self {
        Self::monomial(ambient, Monomial::generator(ambient, i), Scalar::one())
    }

    pub fn monomial(ambient: &Arc<GeneratorSet>, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ambient: ambient.clone(),
            terms,
        }
    }

    pub fn from_terms(
        ambient: &Arc<GeneratorSet>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut out = Self::zero(ambient);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// Linear combination of generators, `coeffs[i]` on global index `i`.
    pub fn linear(ambient: &Arc<GeneratorSet>, coeffs: &[(usize, Scalar)]) -> Self {
        Self::from_terms(
            ambient,
            coeffs
                .iter()
                .map(|(i, c)| (Monomial::generator(ambient, *i), c.clone())),
        )
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &GradedElement) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || *self.ambient == *other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &GradedElement) {
        debug_assert!(self.check_ambient(other).is_ok());
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> GradedElement {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Self {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn plus(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn minus(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }

    /// Graded-commutative product with Koszul signs.
    pub fn multiply(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_ambient(other)?;
        Ok(self.mul(other))
    }

    /// Product; panics in debug builds on ambient mismatch.
    pub fn mul(&self, other: &GradedElement) -> GradedElement {
        debug_assert!(self.check_ambient(other).is_ok());
        let mut out = Self::zero(&self.ambient);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, neg)) = a.mul(b) {
                    let c = x * y;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// `m * self` for a single monomial on the left.
    pub fn left_mul_monomial(&self, m: &Monomial, c: &Scalar) -> GradedElement {
        let mut out = Self::zero(&self.ambient);
        for (b, y) in &self.terms {
            if let Some((p, neg)) = m.mul(b) {
                let v = c * y;
                out.add_term(p, if neg { -v } else { v });
            }
        }
        out
    }

    /// `self * m` for a single monomial on the right.
    pub fn right_mul_monomial(&self, m: &Monomial) -> GradedElement {
        let mut out = Self::zero(&self.ambient);
        for (a, x) in &self.terms {
            if let Some((p, neg)) = a.mul(m) {
                out.add_term(p, if neg { -x.clone() } else { x.clone() });
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> GradedElement {
        let mut out = Self::one(&self.ambient);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Drops every term of degree greater than `cap`.
    pub fn truncate(&self, cap: u32) -> GradedElement {
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.ambient) <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common degree of all terms, `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree(&self.ambient));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(&self.ambient)).max()
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> GradedElement {
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms, reinterpreted in another ambient with identical layout.
    pub fn rebase(&self, ambient: &Arc<GeneratorSet>) -> GradedElement {
        Self {
            ambient: ambient.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = m.render(&self.ambient);
                if c.is_one() {
                    mono
                } else if mono == "1" {
                    format_scalar(c)
                } else {
                    format!("({}) {}", format_scalar(c), mono)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self})")
    }
}
