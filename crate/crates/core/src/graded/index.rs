use std::collections::HashMap;
use std::sync::Arc;

use super::{GeneratorSet, GradedElement, Monomial};
use crate::linalg::{Insertion, Reducer, SparseVec};

/// Assigns coordinates to monomials in order of first appearance.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    index: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index over a fixed list, in that order.
    pub fn from_monomials(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self { index, monomials }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinates of `x`, registering unseen monomials.
    pub fn coords_extend(&mut self, x: &GradedElement) -> SparseVec {
        let mut pairs = Vec::with_capacity(x.terms().len());
        for (m, c) in x.terms() {
            let next = self.monomials.len();
            let i = *self.index.entry(m.clone()).or_insert_with(|| {
                self.monomials.push(m.clone());
                next
            });
            pairs.push((i, c.clone()));
        }
        SparseVec::from_pairs(pairs)
    }

    /// Coordinates of `x`, or `None` if it involves an unseen monomial.
    pub fn coords(&self, x: &GradedElement) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(x.terms().len());
        for (m, c) in x.terms() {
            pairs.push((*self.index.get(m)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
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

/// Growing span of elements with membership and coordinate solving over
/// the inserted elements (in insertion order).
#[derive(Clone, Debug, Default)]
pub struct ElementSpan {
    index: MonomialIndex,
    reducer: Reducer,
}

impl ElementSpan {
    pub fn new() -> Self {
        Self {
            index: MonomialIndex::new(),
            reducer: Reducer::tracking(),
        }
    }

    pub fn from_elements<'a>(xs: impl IntoIterator<Item = &'a GradedElement>) -> Self {
        let mut s = Self::new();
        for x in xs {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: &GradedElement) -> Insertion {
        let v = self.index.coords_extend(x);
        self.reducer.insert(&v)
    }

    pub fn rank(&self) -> usize {
        self.reducer.rank()
    }

    pub fn inserted(&self) -> usize {
        self.reducer.inserted()
    }

    pub fn contains(&self, x: &GradedElement) -> bool {
        self.solve(x).is_some()
    }

    /// Coefficients over the inserted elements reproducing `x`.
    pub fn solve(&self, x: &GradedElement) -> Option<SparseVec> {
        if x.is_zero() {
            return Some(SparseVec::new());
        }
        let v = self.index.coords(x)?;
        self.reducer.solve(&v)
    }
}
