use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RelativeModel;
use crate::error::Result;
use crate::graded::{basis_of_degree, GeneratorSet, GradedElement};
use crate::linalg::int;

/// Largest total number of monomials over all degrees `≤ cap` a desk
/// instance may have before its cap is lowered.
const MONOMIAL_BUDGET: usize = 1200;

/// A small randomized relative model with its degree cap.
#[derive(Clone, Debug)]
pub struct DeskInstance {
    pub seed: u64,
    pub model: RelativeModel,
    pub cap: u32,
}

fn odd_generators(rng: &mut ChaCha8Rng, prefix: &str, min: usize) -> Result<Arc<GeneratorSet>> {
    let count = rng.gen_range(min..=3);
    let gens = (0..count)
        .map(|i| (format!("{prefix}{}", i + 1), *[1, 3, 5, 7].choose(rng).unwrap()))
        .collect();
    GeneratorSet::new(gens, vec![])
}

/// Random element of `S sX` of the given degree with coefficients in `[−2, 2]`.
fn random_polynomial(rng: &mut ChaCha8Rng, sx: &Arc<GeneratorSet>, degree: u32) -> GradedElement {
    let mut out = GradedElement::zero(sx);
    for m in basis_of_degree(sx, degree) {
        let c: i64 = rng.gen_range(-2..=2);
        out.add_term(m, int(c));
    }
    out
}

fn images(rng: &mut ChaCha8Rng, x: &GeneratorSet, sy: &Arc<GeneratorSet>) -> Vec<GradedElement> {
    (0..x.len())
        .map(|i| random_polynomial(rng, sy, x.odd_degree(i) + 1))
        .collect()
}

fn monomial_count(gens: &GeneratorSet, cap: u32) -> usize {
    (0..=cap + 1).map(|n| basis_of_degree(gens, n).len()).sum()
}

/// The desk instance for `seed`: `1 ≤ |U|, |V| ≤ 3`, `0 ≤ |W| ≤ 3`, odd
/// degrees in `{1, 3, 5, 7}`, integer coefficients in `[−2, 2]` and
/// `cap ≤ 12`, lowered until the model has at most a few thousand monomials.
pub fn desk_instance(seed: u64) -> Result<DeskInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = odd_generators(&mut rng, "u", 1)?;
    let v = odd_generators(&mut rng, "v", 1)?;
    let w = odd_generators(&mut rng, "w", 0)?;
    let f = images(&mut rng, &u, &v.suspension()?);
    let g = images(&mut rng, &v, &w.suspension()?);
    let model = RelativeModel::new(&u, &v, &w, f, g)?;
    let mut cap = 12;
    while cap > 4 && monomial_count(model.ambient(), cap) > MONOMIAL_BUDGET {
        cap -= 1;
    }
    Ok(DeskInstance { seed, model, cap })
}

/// Desk instances for seeds `first .. first + count`.
pub fn desk_instances(first: u64, count: u64) -> Result<Vec<DeskInstance>> {
    (first..first + count).map(desk_instance).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        let a = desk_instance(7).unwrap();
        let b = desk_instance(7).unwrap();
        assert_eq!(a.cap, b.cap);
        assert_eq!(a.model.ambient(), b.model.ambient());
        assert_eq!(a.model.source().f().images(), b.model.source().f().images());
    }

    #[test]
    fn instances_respect_bounds() {
        for inst in desk_instances(0, 20).unwrap() {
            let m = &inst.model;
            for gens in [m.source().u(), m.source().v(), m.fiber().sv()] {
                assert!(gens.len() <= 3);
            }
            assert!(m.ambient().generators().iter().all(|g| g.degree <= 8));
            assert!(inst.cap <= 12);
        }
    }
}
