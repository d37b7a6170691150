//! Degreewise cochain complexes inside a free graded-commutative algebra.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{DegreeBasis, Derivation, GeneratorSet, GradedElement, Monomial};
use crate::linalg::{Insertion, Reducer, Scalar, SparseMatrix, SparseVec};

/// One degree of a complex: either every monomial of that degree, or the
/// span of explicitly given elements.
#[derive(Clone, Debug)]
pub enum Piece {
    Full(DegreeBasis),
    Span(SpanBasis),
}

/// Independent elements with a solver for coordinates in their span.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    elements: Vec<GradedElement>,
    index: HashMap<Monomial, usize>,
    reducer: Reducer,
}

impl SpanBasis {
    pub fn new(elements: Vec<GradedElement>) -> Result<Self> {
        let mut index = HashMap::new();
        for e in &elements {
            for m in e.terms().keys() {
                let next = index.len();
                index.entry(m.clone()).or_insert(next);
            }
        }
        let mut reducer = Reducer::tracking();
        for e in &elements {
            let v = Self::monomial_coords(&index, e).expect("indexed");
            if reducer.insert(&v).is_dependent() {
                return Err(Error::Invariant("span basis is linearly dependent".into()));
            }
        }
        Ok(Self {
            elements,
            index,
            reducer,
        })
    }

    fn monomial_coords(index: &HashMap<Monomial, usize>, x: &GradedElement) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(x.terms().len());
        for (m, c) in x.terms() {
            pairs.push((*index.get(m)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }

    pub fn elements(&self) -> &[GradedElement] {
        &self.elements
    }

    pub fn coords(&self, x: &GradedElement) -> Option<SparseVec> {
        let v = Self::monomial_coords(&self.index, x)?;
        self.reducer.solve(&v)
    }
}

impl Piece {
    pub fn dim(&self) -> usize {
        match self {
            Piece::Full(b) => b.len(),
            Piece::Span(s) => s.elements.len(),
        }
    }

    pub fn coords(&self, x: &GradedElement) -> Option<SparseVec> {
        match self {
            Piece::Full(b) => b.coords(x).ok(),
            Piece::Span(s) => s.coords(x),
        }
    }

    pub fn basis_element(&self, ambient: &Arc<GeneratorSet>, i: usize) -> GradedElement {
        match self {
            Piece::Full(b) => {
                GradedElement::monomial(ambient, b.monomials()[i].clone(), Scalar::one())
            }
            Piece::Span(s) => s.elements[i].clone(),
        }
    }

    pub fn element(&self, ambient: &Arc<GeneratorSet>, v: &SparseVec) -> GradedElement {
        match self {
            Piece::Full(b) => b.element(ambient, v),
            Piece::Span(s) => {
                let mut out = GradedElement::zero(ambient);
                for (i, c) in v.entries() {
                    out.add_scaled(c, &s.elements[*i]);
                }
                out
            }
        }
    }
}

/// Cochain complex `C^0 → C^1 → … → C^{top+1}` with differentials
/// `d_n : C^n → C^{n+1}` for `n ≤ top`. Cohomology is available for `n ≤ top`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    ambient: Arc<GeneratorSet>,
    pieces: Vec<Piece>,
    differentials: Vec<SparseMatrix>,
}

/// Dimensions and representative cocycles (coordinates) per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<SparseVec>>,
}

impl CochainComplex {
    /// The whole algebra in degrees `0..=top+1` with differential `d`.
    pub fn full(ambient: &Arc<GeneratorSet>, d: &Derivation, top: u32) -> Result<Self> {
        let pieces = (0..=top + 1)
            .map(|n| Piece::Full(DegreeBasis::new(ambient, n)))
            .collect();
        Self::assemble(ambient, pieces, d)
    }

    /// The subcomplex spanned by the given bases; `bases[n]` spans degree `n`
    /// for `n = 0..=top+1`. Fails if `d` leaves the span.
    pub fn span(
        ambient: &Arc<GeneratorSet>,
        bases: Vec<Vec<GradedElement>>,
        d: &Derivation,
    ) -> Result<Self> {
        let pieces = bases
            .into_iter()
            .map(|b| SpanBasis::new(b).map(Piece::Span))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(ambient, pieces, d)
    }

    /// Builds from explicit pieces and a map computing `d` on elements.
    pub fn from_pieces(
        ambient: &Arc<GeneratorSet>,
        pieces: Vec<Piece>,
        d: impl Fn(&GradedElement) -> GradedElement + Sync,
    ) -> Result<Self> {
        assert!(!pieces.is_empty(), "complex needs at least one degree");
        let mut differentials = Vec::with_capacity(pieces.len() - 1);
        for n in 0..pieces.len() - 1 {
            let src = &pieces[n];
            let dst = &pieces[n + 1];
            let cols = (0..src.dim())
                .into_par_iter()
                .map(|j| {
                    let img = d(&src.basis_element(ambient, j));
                    dst.coords(&img).ok_or_else(|| {
                        Error::Invariant(format!(
                            "differential leaves the complex in degree {}",
                            n + 1
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            differentials.push(SparseMatrix::new(dst.dim(), cols));
        }
        Ok(Self {
            ambient: ambient.clone(),
            pieces,
            differentials,
        })
    }

    fn assemble(ambient: &Arc<GeneratorSet>, pieces: Vec<Piece>, d: &Derivation) -> Result<Self> {
        Self::from_pieces(ambient, pieces, |x| d.apply(x))
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    /// Highest degree with a computed outgoing differential.
    pub fn top(&self) -> usize {
        self.differentials.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.pieces.get(n).map_or(0, Piece::dim)
    }

    pub fn piece(&self, n: usize) -> &Piece {
        &self.pieces[n]
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n]
    }

    pub fn coords(&self, n: usize, x: &GradedElement) -> Option<SparseVec> {
        if x.is_zero() {
            return Some(SparseVec::new());
        }
        self.pieces.get(n)?.coords(x)
    }

    pub fn element(&self, n: usize, v: &SparseVec) -> GradedElement {
        self.pieces[n].element(&self.ambient, v)
    }

    pub fn basis(&self, n: usize) -> Vec<GradedElement> {
        (0..self.dim(n))
            .map(|i| self.pieces[n].basis_element(&self.ambient, i))
            .collect()
    }

    /// `d ∘ d = 0` on every computed pair of degrees.
    pub fn d_squared_vanishes(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].compose(&w[0]).is_zero())
    }

    pub fn cohomology(&self) -> Cohomology {
        let per_degree: Vec<Vec<SparseVec>> = (0..=self.top())
            .into_par_iter()
            .map(|n| {
                let mut red = Reducer::new();
                if n > 0 {
                    for c in self.differentials[n - 1].columns() {
                        red.insert(c);
                    }
                }
                self.differentials[n]
                    .kernel()
                    .into_iter()
                    .filter(|z| matches!(red.insert(z), Insertion::Pivot(_)))
                    .collect()
            })
            .collect();
        Cohomology {
            dims: per_degree.iter().map(Vec::len).collect(),
            representatives: per_degree,
        }
    }

    /// Some `y` with `d y = v` for `v` in degree `n`, if `v` is a coboundary.
    pub fn coboundary_preimage(&self, n: usize, v: &SparseVec) -> Option<SparseVec> {
        if n == 0 {
            return v.is_zero().then(SparseVec::new);
        }
        let mut red = Reducer::tracking();
        for c in self.differentials[n - 1].columns() {
            red.insert(c);
        }
        red.solve(v)
    }

    pub fn is_cocycle(&self, n: usize, v: &SparseVec) -> bool {
        n > self.top() || self.differentials[n].apply(v).is_zero()
    }
}

/// Betti-style dimension list as a comma-separated string.
pub fn format_dims(dims: &[usize]) -> String {
    dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn koszul_complex_is_acyclic() {
        // Λ(u) ⊗ S(p), d u = p: cohomology is Q in degree 0.
        let a = GeneratorSet::new(vec![("u".into(), 1)], vec![("p".into(), 2)]).unwrap();
        let d = Derivation::new(
            &a,
            1,
            vec![GradedElement::generator(&a, 1), GradedElement::zero(&a)],
        );
        let c = CochainComplex::full(&a, &d, 6).unwrap();
        assert!(c.d_squared_vanishes());
        assert_eq!(c.cohomology().dims, vec![1, 0, 0, 0, 0, 0, 0]);
        let p3 = GradedElement::generator(&a, 1).pow(3).scaled(&int(5));
        let v = c.coords(6, &p3).unwrap();
        let y = c.coboundary_preimage(6, &v).unwrap();
        assert_eq!(d.apply(&c.element(5, &y)), p3);
    }

    #[test]
    fn span_rejects_unstable_subspace() {
        let a = GeneratorSet::new(vec![("u".into(), 1)], vec![("p".into(), 2)]).unwrap();
        let d = Derivation::new(
            &a,
            1,
            vec![GradedElement::generator(&a, 1), GradedElement::zero(&a)],
        );
        let bases = vec![
            vec![GradedElement::one(&a)],
            vec![GradedElement::generator(&a, 0)],
            vec![],
        ];
        assert!(matches!(
            CochainComplex::span(&a, bases, &d),
            Err(Error::Invariant(_))
        ));
    }
}
