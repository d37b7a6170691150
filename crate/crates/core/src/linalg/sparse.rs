use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::Scalar;

/// Sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Scalar::one())],
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in pairs {
            *acc.entry(i).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(acc)
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        Self {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + c * y;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, dense: &[Scalar]) -> Scalar {
        self.entries
            .iter()
            .fold(Scalar::zero(), |acc, (i, c)| acc + c * &dense[*i])
    }

    /// Rescales so that the first nonzero coordinate is 1.
    pub fn normalize_leading(&mut self) {
        if let Some((_, c)) = self.entries.first() {
            let inv = c.recip();
            self.scale(&inv);
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// What happened when a vector was pushed into a [`Reducer`].
#[derive(Clone, Debug)]
pub enum Insertion {
    /// The vector was independent; its reduced form now owns this pivot column.
    Pivot(usize),
    /// The vector was dependent. The relation lists coefficients over the
    /// insertion ids (this vector has coefficient 1) summing to zero.
    Dependent(SparseVec),
}

impl Insertion {
    pub fn is_dependent(&self) -> bool {
        matches!(self, Insertion::Dependent(_))
    }
}

/// Incremental row echelon form over the rationals with deterministic
/// leftmost pivots. Optionally records, for every echelon row, the
/// combination of inserted vectors that produced it.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// A reducer that tracks combinations of inserted vectors.
    pub fn tracking() -> Self {
        Self {
            track: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the current rows. Returns the residual and,
    /// when tracking, the combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut acc: BTreeMap<usize, Scalar> = v.entries().iter().cloned().collect();
        let mut used: Vec<(usize, Scalar)> = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).next().map(|(k, _)| *k);
            let Some(k) = next else { break };
            cursor = k + 1;
            if let Some(&r) = self.pivot_row.get(&k) {
                let c = acc.remove(&k).unwrap();
                for (j, x) in &self.rows[r].entries()[1..] {
                    let e = acc.entry(*j).or_insert_with(Scalar::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
                if self.track {
                    used.push((r, c));
                }
            }
        }
        let residual = SparseVec::from_map(acc);
        let mut combo = SparseVec::new();
        for (r, c) in used {
            combo = combo.add_scaled(&c, &self.combos[r]);
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insertion {
        let id = self.inserted;
        self.inserted += 1;
        let (mut residual, combo) = self.reduce(v);
        let own = if self.track {
            SparseVec::unit(id).add_scaled(&-Scalar::one(), &combo)
        } else {
            SparseVec::new()
        };
        if residual.is_zero() {
            return Insertion::Dependent(own);
        }
        let lead = residual.leading().unwrap().1.clone();
        let inv = lead.recip();
        residual.scale(&inv);
        let col = residual.leading().unwrap().0;
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(residual);
        if self.track {
            self.combos.push(own.scaled(&inv));
        }
        Insertion::Pivot(col)
    }

    /// Expresses `v` as a combination of the inserted vectors, if possible.
    /// Requires a tracking reducer.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        debug_assert!(self.track);
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }
}

/// Basis of the kernel of the linear map whose `j`-th column is `images[j]`,
/// given as coordinate vectors over the domain.
pub fn kernel_of_columns(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut red = Reducer::tracking();
    let mut out = Vec::new();
    for img in images {
        if let Insertion::Dependent(rel) = red.insert(img) {
            out.push(rel);
        }
    }
    out
}

/// Canonical basis of `{x : A x = 0}` where `rows` are the rows of `A` over
/// `ncols` unknowns: one vector per free column, with a 1 there and the
/// negated reduced entries in the pivot columns.
pub fn null_space(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let rref = canonical_basis(rows);
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r.leading().unwrap().0] = true;
    }
    let mut out: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut slot = vec![usize::MAX; ncols];
    for f in (0..ncols).filter(|c| !is_pivot[*c]) {
        slot[f] = out.len();
        out.push(vec![(f, Scalar::one())]);
    }
    for r in &rref {
        let p = r.leading().unwrap().0;
        for (c, x) in &r.entries()[1..] {
            if slot[*c] != usize::MAX {
                out[slot[*c]].push((p, -x.clone()));
            }
        }
    }
    out.into_iter().map(SparseVec::from_pairs).collect()
}

/// Rows of the matrix whose columns are `cols`.
pub fn transpose_columns(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.entries() {
            rows[*i].push((j, x.clone()));
        }
    }
    rows.into_iter().map(SparseVec::from_pairs).collect()
}

/// Rank of the span of `vectors`.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut red = Reducer::new();
    for v in vectors {
        red.insert(v);
    }
    red.rank()
}

/// Canonical (reduced row echelon) basis of the span of `vectors`.
pub fn canonical_basis(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut red = Reducer::new();
    for v in vectors {
        red.insert(v);
    }
    let mut rows: Vec<SparseVec> = red.rows().to_vec();
    rows.sort_by_key(|r| r.leading().unwrap().0);
    // Back-substitute so each pivot column is zero in every other row.
    for i in (0..rows.len()).rev() {
        let (pc, _) = rows[i].leading().unwrap();
        let pivot_row = rows[i].clone();
        for r in rows.iter_mut().take(i) {
            let c = r.get(pc);
            if !c.is_zero() {
                *r = r.add_scaled(&-c, &pivot_row);
            }
        }
    }
    rows
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersection(a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    // x = sum s_i a_i = sum t_j b_j  <=>  (s, -t) in kernel of [A | B].
    let cols: Vec<SparseVec> = a.iter().chain(b.iter()).cloned().collect();
    let ker = kernel_of_columns(&cols);
    let out: Vec<SparseVec> = ker
        .iter()
        .map(|k| {
            let mut acc = SparseVec::new();
            for (i, c) in k.entries() {
                if *i < a.len() {
                    acc = acc.add_scaled(c, &a[*i]);
                }
            }
            acc
        })
        .filter(|v| !v.is_zero())
        .collect();
    canonical_basis(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|x| int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn null_space_is_canonical() {
        // x + y + z = 0, y - z = 0
        let rows = vec![sv(&[1, 1, 1]), sv(&[0, 1, -1])];
        assert_eq!(null_space(&rows, 3), vec![sv(&[-2, 1, 1])]);
        let cols = transpose_columns(&rows, 3);
        assert_eq!(cols, vec![sv(&[1, 0]), sv(&[1, 1]), sv(&[1, -1])]);
        assert_eq!(null_space(&[], 2).len(), 2);
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[1, 2, 0, 3]);
        let b = sv(&[0, 1, 1, 0]);
        let c = a.add_scaled(&int(-2), &b);
        assert_eq!(c, sv(&[1, 0, -2, 3]));
        assert!(a.add_scaled(&int(-1), &a).is_zero());
    }

    #[test]
    fn reducer_relations_and_solve() {
        let mut red = Reducer::tracking();
        assert!(matches!(red.insert(&sv(&[1, 1, 0])), Insertion::Pivot(0)));
        assert!(matches!(red.insert(&sv(&[0, 2, 2])), Insertion::Pivot(1)));
        match red.insert(&sv(&[1, 3, 2])) {
            Insertion::Dependent(rel) => assert_eq!(rel, sv(&[-1, -1, 1])),
            other => panic!("expected dependence, got {other:?}"),
        }
        let x = red.solve(&sv(&[2, 3, 1])).unwrap();
        assert_eq!(x, SparseVec::from_pairs([(0, int(2)), (1, frac(1, 2))]));
        assert!(red.solve(&sv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![sv(&[1, 0, 0]), sv(&[0, 1, 0])];
        let b = vec![sv(&[0, 1, 0]), sv(&[0, 0, 1])];
        assert_eq!(intersection(&a, &b), vec![sv(&[0, 1, 0])]);
    }
}
