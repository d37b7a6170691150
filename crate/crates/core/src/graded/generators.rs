use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_degree(d: u32) -> Parity {
        if d % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
}

/// Maximum number of exterior generators; the exterior part of a monomial is a `u64` mask.
pub const MAX_ODD: usize = 64;

/// Generators of a free graded-commutative algebra `Λ(odd) ⊗ S(even)`.
///
/// Odd generators come first (indices `0..n_odd`) and own the bits of the
/// exterior mask in that order; even generators follow and own the exponent
/// slots. This order is the canonical order for all sign computations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
    n_odd: usize,
}

impl GeneratorSet {
    pub fn new(odd: Vec<(String, u32)>, even: Vec<(String, u32)>) -> Result<Arc<Self>> {
        if odd.len() > MAX_ODD {
            return Err(Error::Validation(format!(
                "at most {MAX_ODD} odd generators supported, got {}",
                odd.len()
            )));
        }
        let mut generators = Vec::with_capacity(odd.len() + even.len());
        for (name, degree) in odd {
            if degree % 2 != 1 {
                return Err(Error::Validation(format!(
                    "odd generator {name} has even degree {degree}"
                )));
            }
            generators.push(Generator {
                name,
                degree,
                parity: Parity::Odd,
            });
        }
        let n_odd = generators.len();
        for (name, degree) in even {
            if degree == 0 || degree % 2 != 0 {
                return Err(Error::Validation(format!(
                    "even generator {name} must have positive even degree, got {degree}"
                )));
            }
            generators.push(Generator {
                name,
                degree,
                parity: Parity::Even,
            });
        }
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if let Some(j) = seen.insert(g.name.clone(), i) {
                return Err(Error::Validation(format!(
                    "duplicate generator name {} (indices {j} and {i})",
                    g.name
                )));
            }
        }
        Ok(Arc::new(Self { generators, n_odd }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(Self {
            generators: Vec::new(),
            n_odd: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    pub fn n_even(&self) -> usize {
        self.generators.len() - self.n_odd
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn odd(&self) -> &[Generator] {
        &self.generators[..self.n_odd]
    }

    pub fn even(&self) -> &[Generator] {
        &self.generators[self.n_odd..]
    }

    pub fn odd_degree(&self, slot: usize) -> u32 {
        self.generators[slot].degree
    }

    pub fn even_degree(&self, slot: usize) -> u32 {
        self.generators[self.n_odd + slot].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// The shifted copy: every degree goes up by one and parity flips.
    /// Names get an `s` prefix.
    pub fn suspension(&self) -> Result<Arc<Self>> {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for g in &self.generators {
            let entry = (format!("s{}", g.name), g.degree + 1);
            match g.parity.flip() {
                Parity::Odd => odd.push(entry),
                Parity::Even => even.push(entry),
            }
        }
        Self::new(odd, even)
    }

    /// Generator list as `(name, degree)` pairs split by parity.
    pub fn parts(&self) -> (Vec<(String, u32)>, Vec<(String, u32)>) {
        let f = |g: &Generator| (g.name.clone(), g.degree);
        (
            self.odd().iter().map(f).collect(),
            self.even().iter().map(f).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspension_shifts_and_flips() {
        let u = GeneratorSet::new(vec![("a".into(), 3), ("b".into(), 5)], vec![]).unwrap();
        let su = u.suspension().unwrap();
        assert_eq!(su.n_odd(), 0);
        assert_eq!(su.n_even(), 2);
        assert_eq!(su.even_degree(0), 4);
        assert_eq!(su.even_degree(1), 6);
        assert_eq!(su.generator(1).name, "sb");
    }

    #[test]
    fn rejects_wrong_parity() {
        assert!(GeneratorSet::new(vec![("a".into(), 2)], vec![]).is_err());
        assert!(GeneratorSet::new(vec![], vec![("p".into(), 3)]).is_err());
        assert!(GeneratorSet::new(vec![("a".into(), 1)], vec![("a".into(), 2)]).is_err());
    }
}
