use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::relative::induced_ranks;
use super::RelativeModel;
use crate::complex::{CochainComplex, Piece};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_columns, Reducer, SparseVec};

/// Dimensions of the pages of the spectral sequence of the filtration of a
/// relative model by degree in `ΛU ⊗ S sV`, computed as subquotients
/// `E_r^p = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1})` in each total degree.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    cap: u32,
    /// `pages[r − 2][n][p] = dim E_r^{p, n−p}`.
    pages: Vec<Vec<Vec<usize>>>,
    /// `kernels[r − 2][n][p]`: dimension of the kernel of `d_r` on `E_r^{p, n−p}`.
    kernels: Vec<Vec<Vec<usize>>>,
    /// `images[r − 2][n][p]`: dimension of the image of `d_r` in `E_r^{p, n−p}`.
    images: Vec<Vec<Vec<usize>>>,
    source: Vec<usize>,
    fiber: Vec<usize>,
    target: Vec<usize>,
    edge: Vec<usize>,
}

struct Filtered<'a> {
    complex: &'a CochainComplex,
    levels: Vec<Vec<u32>>,
}

type Memo = HashMap<(usize, u32, u32), Arc<Vec<SparseVec>>>;

impl Filtered<'_> {
    /// `Z(n, p, r) = {x ∈ F^p C^n : d x ∈ F^{p+r}}`, `F^{p ≤ 0} = C`.
    fn z(&self, memo: &mut Memo, n: usize, p: i64, r: i64) -> Arc<Vec<SparseVec>> {
        let lo = p.max(0) as u32;
        let hi = (p + r).clamp(0, n as i64 + 2) as u32;
        if let Some(z) = memo.get(&(n, lo, hi)) {
            return z.clone();
        }
        let cols: Vec<usize> = (0..self.levels[n].len())
            .filter(|j| self.levels[n][*j] >= lo)
            .collect();
        let below = &self.levels[n + 1];
        let d = self.complex.differential(n);
        let restricted: Vec<SparseVec> = cols
            .iter()
            .map(|j| {
                SparseVec::from_pairs(
                    d.column(*j)
                        .entries()
                        .iter()
                        .filter(|(i, _)| below[*i] < hi)
                        .cloned(),
                )
            })
            .collect();
        let z: Vec<SparseVec> = kernel_of_columns(&restricted)
            .into_iter()
            .map(|rel| {
                SparseVec::from_pairs(rel.into_entries().into_iter().map(|(k, c)| (cols[k], c)))
            })
            .collect();
        let z = Arc::new(z);
        memo.insert((n, lo, hi), z.clone());
        z
    }

    /// `d Z(n − 1, p, r)` inside `C^n`.
    fn boundary(&self, memo: &mut Memo, n: usize, p: i64, r: i64) -> Vec<SparseVec> {
        if n == 0 {
            return Vec::new();
        }
        let d = self.complex.differential(n - 1);
        self.z(memo, n - 1, p, r).iter().map(|x| d.apply(x)).collect()
    }
}

fn rank(parts: &[&[SparseVec]]) -> usize {
    let mut red = Reducer::new();
    for part in parts {
        for v in *part {
            red.insert(v);
        }
    }
    red.rank()
}

struct Level {
    pages: Vec<Vec<usize>>,
    kernels: Vec<Vec<usize>>,
    images: Vec<Vec<usize>>,
}

fn level(f: &Filtered, n: usize, last: usize) -> Level {
    let mut memo = Memo::new();
    let mut out = Level {
        pages: Vec::new(),
        kernels: Vec::new(),
        images: Vec::new(),
    };
    for r in 2..=last as i64 {
        let (mut e, mut k, mut im) = (Vec::new(), Vec::new(), Vec::new());
        for p in 0..=n as i64 {
            let z = f.z(&mut memo, n, p, r);
            let z_next = f.z(&mut memo, n, p, r + 1);
            let z_up = f.z(&mut memo, n, p + 1, r - 1);
            let b_prev = f.boundary(&mut memo, n, p - r + 1, r - 1);
            let b = f.boundary(&mut memo, n, p - r, r);
            let denom = rank(&[&z_up, &b_prev]);
            e.push(z.len() - denom);
            k.push(rank(&[&z_next, &z_up, &b_prev]) - denom);
            im.push(rank(&[&b, &z_up]) - denom);
        }
        out.pages.push(e);
        out.kernels.push(k);
        out.images.push(im);
    }
    out
}

fn levels_of(piece: &Piece, model: &RelativeModel) -> Result<Vec<u32>> {
    match piece {
        Piece::Full(b) => Ok(b.monomials().iter().map(|m| model.filtration_degree(m)).collect()),
        Piece::Span(_) => Err(Error::Invariant("filtration needs a monomial basis".into())),
    }
}

impl SpectralSequence {
    /// Pages `E_2, …, E_{cap+2}` in total degrees `0..=cap`. In total degree
    /// `n` the page `E_{n+2}` is already `E_∞`.
    pub fn new(model: &RelativeModel, cap: u32) -> Result<Self> {
        let complex = model.complex(cap)?;
        let levels = (0..=cap as usize + 1)
            .map(|n| levels_of(complex.piece(n), model))
            .collect::<Result<Vec<_>>>()?;
        let f = Filtered {
            complex: &complex,
            levels,
        };
        let last = cap as usize + 2;
        let per_n: Vec<Level> = (0..=cap as usize)
            .into_par_iter()
            .map(|n| level(&f, n, last))
            .collect();
        let reshape = |pick: fn(&Level) -> &Vec<Vec<usize>>| -> Vec<Vec<Vec<usize>>> {
            (0..=last - 2)
                .map(|r| per_n.iter().map(|l| pick(l)[r].clone()).collect())
                .collect()
        };
        let source_complex = model.source().complex(cap)?;
        let target_complex = model.target().complex(cap)?;
        let edge = induced_ranks(
            &source_complex,
            &target_complex,
            |x| model.one_tensor_g().apply(x),
            cap,
        )?;
        Ok(Self {
            cap,
            pages: reshape(|l| &l.pages),
            kernels: reshape(|l| &l.kernels),
            images: reshape(|l| &l.images),
            source: source_complex.cohomology().dims,
            fiber: model.fiber().cohomology_dims(cap)?,
            target: target_complex.cohomology().dims,
            edge,
        })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `page(r)[n][p] = dim E_r^{p, n−p}` for `r ≥ 2`.
    pub fn page(&self, r: usize) -> &[Vec<usize>] {
        &self.pages[(r.max(2) - 2).min(self.pages.len() - 1)]
    }

    pub fn e2(&self) -> &[Vec<usize>] {
        self.page(2)
    }

    pub fn infinity(&self) -> &[Vec<usize>] {
        self.pages.last().expect("at least one page")
    }

    /// `Σ_p dim E_r^{p, n−p}` per total degree `n`.
    pub fn totals(&self, r: usize) -> Vec<usize> {
        self.page(r).iter().map(|row| row.iter().sum()).collect()
    }

    pub fn source_dims(&self) -> &[usize] {
        &self.source
    }

    pub fn fiber_dims(&self) -> &[usize] {
        &self.fiber
    }

    pub fn target_dims(&self) -> &[usize] {
        &self.target
    }

    /// Rank of `1 ⊗ g` on `H^p` of the source, per `p`.
    pub fn edge_ranks(&self) -> &[usize] {
        &self.edge
    }

    /// `E_2^{p,q} = H^p(source) · H^q(fiber)` for `p + q ≤ cap`.
    pub fn e2_is_tensor_product(&self) -> bool {
        self.e2().iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(p, e)| *e == self.source[p] * self.fiber[n - p])
        })
    }

    /// `E_{r+1} = H(E_r, d_r)` dimensionwise, and the rank of `d_r` leaving
    /// `(p, q)` equals the rank arriving at `(p + r, q − r + 1)`.
    pub fn pages_are_cohomology_of_previous(&self) -> bool {
        let cap = self.cap as usize;
        for r in 0..self.pages.len() {
            for n in 0..=cap {
                for p in 0..=n {
                    let e = self.pages[r][n][p];
                    let (k, im) = (self.kernels[r][n][p], self.images[r][n][p]);
                    if r + 1 < self.pages.len() && self.pages[r + 1][n][p] != k - im {
                        return false;
                    }
                    let out = e - k;
                    let step = r + 2;
                    if n < cap {
                        let arriving = self.images[r][n + 1].get(p + step).copied().unwrap_or(0);
                        if out != arriving {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `Σ_p dim E_∞^{p, n−p} = dim H^n(target)`.
    pub fn converges_to_target(&self) -> bool {
        self.totals(usize::MAX) == self.target
    }

    /// `H^p(source) ≅ E_2^{p,0} ↠ E_∞^{p,0} ↪ H^p(target)` dimensionally:
    /// the rank of `1 ⊗ g` on `H^p` equals `dim E_∞^{p,0}`.
    pub fn edge_factorizes(&self) -> bool {
        (0..=self.cap as usize).all(|p| {
            self.e2()[p][p] == self.source[p]
                && self.infinity()[p][p] <= self.e2()[p][p]
                && self.infinity()[p][p] <= self.target[p]
                && self.edge[p] == self.infinity()[p][p]
        })
    }

    /// Collapse at `E_2`, detected as `Σ_p dim E_2^{p, n−p} = dim H^n(target)`.
    pub fn collapses_at_e2(&self) -> bool {
        self.totals(2) == self.target
    }

    /// Whether `E_2 = E_∞` in every bidegree.
    pub fn e2_is_e_infinity(&self) -> bool {
        self.e2() == self.infinity()
    }
}
