use std::sync::Arc;

use crate::cartan::generator_inclusion;
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::graded::{AlgebraMap, Derivation, GeneratorSet, GradedElement};
use crate::linalg::int;

/// A pure Sullivan algebra `(Λ U ⊗ S sV, −δ_f)` where `δ_f(u) = f(su)` and
/// `δ_f(sv) = 0`.
#[derive(Clone, Debug)]
pub struct PureSullivan {
    u: Arc<GeneratorSet>,
    v: Arc<GeneratorSet>,
    su: Arc<GeneratorSet>,
    sv: Arc<GeneratorSet>,
    ambient: Arc<GeneratorSet>,
    f: AlgebraMap,
    embed: AlgebraMap,
    koszul: Derivation,
    differential: Derivation,
}

fn check_odd(gens: &GeneratorSet, what: &str) -> Result<()> {
    if gens.n_even() > 0 || gens.generators().iter().any(|g| g.degree % 2 == 0) {
        return Err(Error::Validation(format!(
            "{what} must consist of odd, positive-degree generators"
        )));
    }
    Ok(())
}

impl PureSullivan {
    /// `f_images[i]` is `f(su_i)`, an element of `S sV` of degree `|u_i| + 1`
    /// over `v.suspension()`.
    pub fn new(
        u: &Arc<GeneratorSet>,
        v: &Arc<GeneratorSet>,
        f_images: Vec<GradedElement>,
    ) -> Result<Self> {
        check_odd(u, "U")?;
        check_odd(v, "V")?;
        let su = u.suspension()?;
        let sv = v.suspension()?;
        if f_images.len() != u.len() {
            return Err(Error::Validation("one image of f per generator of U".into()));
        }
        let f_images: Vec<GradedElement> = f_images.iter().map(|x| x.rebase(&sv)).collect();
        for (i, x) in f_images.iter().enumerate() {
            let want = u.odd_degree(i) + 1;
            if x.terms().keys().any(|m| m.degree(&sv) != want) {
                return Err(Error::Validation(format!(
                    "f(s{}) must be homogeneous of degree {want}",
                    u.generator(i).name
                )));
            }
        }
        let f = AlgebraMap::new(&su, &sv, f_images);
        let ambient = GeneratorSet::new(u.parts().0, sv.parts().1)?;
        let positions: Vec<usize> = (0..v.len()).map(|j| u.len() + j).collect();
        let embed = generator_inclusion(&sv, &ambient, &positions);
        let mut images = vec![GradedElement::zero(&ambient); ambient.len()];
        for (i, img) in images.iter_mut().enumerate().take(u.len()) {
            *img = embed.apply(f.image(i));
        }
        let koszul = Derivation::new(&ambient, 1, images);
        let differential = Derivation::combine(&[(int(-1), &koszul)]);
        Ok(Self {
            u: u.clone(),
            v: v.clone(),
            su,
            sv,
            ambient,
            f,
            embed,
            koszul,
            differential,
        })
    }

    pub fn u(&self) -> &Arc<GeneratorSet> {
        &self.u
    }

    pub fn v(&self) -> &Arc<GeneratorSet> {
        &self.v
    }

    pub fn su(&self) -> &Arc<GeneratorSet> {
        &self.su
    }

    pub fn sv(&self) -> &Arc<GeneratorSet> {
        &self.sv
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    /// `f : S sU → S sV`.
    pub fn f(&self) -> &AlgebraMap {
        &self.f
    }

    /// `δ_f`.
    pub fn koszul(&self) -> &Derivation {
        &self.koszul
    }

    /// `−δ_f`.
    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    /// `Q ↦ 1 ⊗ Q` from `S sV`.
    pub fn embed_polynomial(&self, q: &GradedElement) -> GradedElement {
        self.embed.apply(&q.rebase(&self.sv))
    }

    pub fn embedding(&self) -> &AlgebraMap {
        &self.embed
    }

    pub fn complex(&self, cap: u32) -> Result<CochainComplex> {
        CochainComplex::full(&self.ambient, &self.differential, cap)
    }

    pub fn cohomology_dims(&self, cap: u32) -> Result<Vec<usize>> {
        Ok(self.complex(cap)?.cohomology().dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(names: &[(&str, u32)]) -> Arc<GeneratorSet> {
        GeneratorSet::new(names.iter().map(|(n, d)| (n.to_string(), *d)).collect(), vec![]).unwrap()
    }

    #[test]
    fn zero_map_gives_exterior_algebra() {
        let u = odd(&[("u", 3)]);
        let v = odd(&[]);
        let psa = PureSullivan::new(&u, &v, vec![GradedElement::zero(&v.suspension().unwrap())]).unwrap();
        assert_eq!(psa.cohomology_dims(4).unwrap(), vec![1, 0, 0, 1, 0]);
    }

    #[test]
    fn identity_map_is_acyclic() {
        let u = odd(&[("u", 3)]);
        let v = odd(&[("v", 3)]);
        let sv = v.suspension().unwrap();
        let psa = PureSullivan::new(&u, &v, vec![GradedElement::generator(&sv, 0)]).unwrap();
        let c = psa.complex(12).unwrap();
        assert!(c.d_squared_vanishes());
        let dims = c.cohomology().dims;
        assert_eq!(dims[0], 1);
        assert!(dims[1..].iter().all(|d| *d == 0));
    }

    #[test]
    fn decomposable_image_truncates() {
        // d u = −(sv)², so H = Q[sv]/(sv²).
        let u = odd(&[("u", 3)]);
        let v = odd(&[("v", 1)]);
        let sv = v.suspension().unwrap();
        let f = GradedElement::generator(&sv, 0).pow(2);
        let psa = PureSullivan::new(&u, &v, vec![f]).unwrap();
        assert_eq!(psa.cohomology_dims(6).unwrap(), vec![1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let u = odd(&[("u", 3)]);
        let v = odd(&[("v", 1)]);
        let sv = v.suspension().unwrap();
        let bad = GradedElement::generator(&sv, 0).scaled(&int(2));
        assert!(PureSullivan::new(&u, &v, vec![bad]).is_err());
    }
}
