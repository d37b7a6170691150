//! Joint kernels of families of derivations, degree by degree.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::graded::{basis_of_degree, Derivation, GeneratorSet, GradedElement, Monomial};
use crate::linalg::{null_space, transpose_columns, Scalar, SparseVec};

/// Generator weights of a degree-0 derivation that scales every generator,
/// or `None` if it mixes generators.
fn diagonal_weights(d: &Derivation) -> Option<Vec<Scalar>> {
    if d.degree() != 0 {
        return None;
    }
    let amb = d.ambient();
    (0..amb.len())
        .map(|i| {
            let img = d.image(i);
            match img.terms().len() {
                0 => Some(Scalar::zero()),
                1 => {
                    let (m, c) = img.terms().iter().next().unwrap();
                    (*m == Monomial::generator(amb, i)).then(|| c.clone())
                }
                _ => None,
            }
        })
        .collect()
}

fn weight(m: &Monomial, w: &[Scalar], n_odd: usize) -> Scalar {
    let mut total = Scalar::zero();
    for i in m.odd_slots() {
        total += &w[i];
    }
    for (j, e) in m.even.iter().enumerate() {
        if *e > 0 {
            total += &w[n_odd + j] * Scalar::from_integer((*e as i64).into());
        }
    }
    total
}

/// Basis of `{x of degree n : D x = 0 for every D in constraints}`, in
/// reduced echelon form over the canonical monomial order.
pub fn joint_kernel(
    ambient: &Arc<GeneratorSet>,
    degree: u32,
    constraints: &[Derivation],
) -> Vec<GradedElement> {
    joint_kernel_on(ambient, basis_of_degree(ambient, degree), constraints)
}

/// As [`joint_kernel`], restricted to the span of `domain`.
pub fn joint_kernel_on(
    ambient: &Arc<GeneratorSet>,
    mut domain: Vec<Monomial>,
    constraints: &[Derivation],
) -> Vec<GradedElement> {
    let mut rest = Vec::new();
    for d in constraints {
        match diagonal_weights(d) {
            Some(w) => domain.retain(|m| weight(m, &w, ambient.n_odd()).is_zero()),
            None => rest.push(d),
        }
    }
    if rest.is_empty() || domain.is_empty() {
        return domain
            .into_iter()
            .map(|m| GradedElement::monomial(ambient, m, Scalar::one()))
            .collect();
    }
    let images: Vec<Vec<GradedElement>> = domain
        .par_iter()
        .map(|m| {
            let x = GradedElement::monomial(ambient, m.clone(), Scalar::one());
            rest.iter().map(|d| d.apply(&x)).collect()
        })
        .collect();
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut cols = Vec::with_capacity(domain.len());
    for imgs in &images {
        let mut pairs = Vec::new();
        for (t, img) in imgs.iter().enumerate() {
            for (m, c) in img.terms() {
                let next = rows.len();
                let r = *rows.entry((t, m.clone())).or_insert(next);
                pairs.push((r, c.clone()));
            }
        }
        cols.push(SparseVec::from_pairs(pairs));
    }
    let matrix_rows = transpose_columns(&cols, rows.len());
    null_space(&matrix_rows, domain.len())
        .into_iter()
        .map(|v| {
            GradedElement::from_terms(
                ambient,
                v.entries()
                    .iter()
                    .map(|(i, c)| (domain[*i].clone(), c.clone())),
            )
        })
        .collect()
}
