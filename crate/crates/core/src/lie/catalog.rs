//! Built-in real forms presented by rational matrix bases, and the built-in
//! battery of pairs.

use num_traits::{One, Zero};

use super::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Reducer, Scalar, SparseVec};

/// `n × n` matrix with entries in `Q(i)`, stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CMat {
    re: Matrix,
    im: Matrix,
}

impl CMat {
    fn real(re: Matrix) -> Self {
        let n = re.rows();
        Self {
            re,
            im: Matrix::zeros(n, n),
        }
    }

    fn zero(n: usize) -> Self {
        Self::real(Matrix::zeros(n, n))
    }

    fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, Scalar::one());
        Self::real(m)
    }

    fn times_i(&self) -> Self {
        Self {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    fn plus(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn minus(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn scaled(&self, c: &Scalar) -> Self {
        Self {
            re: self.re.scaled(c),
            im: self.im.scaled(c),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn commutator(&self, o: &Self) -> Self {
        self.mul(o).minus(&o.mul(self))
    }

    fn transpose(&self) -> Self {
        Self {
            re: self.re.transpose(),
            im: self.im.transpose(),
        }
    }

    fn real_trace(&self) -> Scalar {
        (0..self.re.rows()).map(|i| self.re.get(i, i).clone()).sum()
    }

    fn flatten(&self) -> SparseVec {
        let n = self.re.rows();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                pairs.push((i * n + j, self.re.get(i, j).clone()));
                pairs.push((n * n + i * n + j, self.im.get(i, j).clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

/// Builds a Lie algebra from a basis of matrices closed under commutators.
/// `theta` is applied matrixwise; the invariant form is `Re tr(XY)`.
fn from_matrices(
    name: &str,
    names: Vec<String>,
    basis: &[CMat],
    theta: impl Fn(&CMat) -> CMat,
    rank: usize,
) -> Result<LieAlgebra> {
    let mut red = Reducer::tracking();
    for b in basis {
        if red.insert(&b.flatten()).is_dependent() {
            return Err(Error::Invariant(format!("{name}: dependent matrix basis")));
        }
    }
    let coords = |m: &CMat| {
        red.solve(&m.flatten())
            .ok_or_else(|| Error::Invariant(format!("{name}: matrix basis not closed")))
    };
    let n = basis.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = coords(&basis[i].commutator(&basis[j]))?;
            if !c.is_zero() {
                triples.push((i, j, c));
            }
        }
    }
    let theta_cols = basis
        .iter()
        .map(|b| coords(&theta(b)))
        .collect::<Result<Vec<_>>>()?;
    let mut form = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(i, j, basis[i].mul(&basis[j]).real_trace());
        }
    }
    LieAlgebra::from_brackets(name, names, &triples)?
        .with_rank(rank)
        .with_form(form)?
        .with_theta(Matrix::from_columns(n, &theta_cols))
}

fn neg_transpose(m: &CMat) -> CMat {
    m.transpose().scaled(&-Scalar::one())
}

/// `sl(n, R)`: basis `h_i = E_ii - E_{i+1,i+1}`, then `E_ij` (`i ≠ j`) in
/// lexicographic order; `θ(X) = -Xᵀ`. For `n = 2` the basis is `h, e, f`.
pub fn sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::Validation("sl(n) needs n >= 2".into()));
    }
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for i in 0..n - 1 {
        basis.push(CMat::unit(n, i, i).minus(&CMat::unit(n, i + 1, i + 1)));
        names.push(format!("h{}", i + 1));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(CMat::unit(n, i, j));
                names.push(format!("e{}{}", i + 1, j + 1));
            }
        }
    }
    if n == 2 {
        names = vec!["h".into(), "e".into(), "f".into()];
    }
    from_matrices(&format!("sl({n},R)"), names, &basis, neg_transpose, n - 1)
}

fn signature(p: usize, q: usize) -> CMat {
    let n = p + q;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, if i < p { int(1) } else { int(-1) });
    }
    CMat::real(m)
}

fn unitary_basis(p: usize, q: usize, with_center: bool) -> (Vec<CMat>, Vec<String>) {
    let n = p + q;
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for k in 0..n - 1 {
        basis.push(CMat::unit(n, k, k).minus(&CMat::unit(n, k + 1, k + 1)).times_i());
        names.push(format!("t{}", k + 1));
    }
    for j in 0..n {
        for k in j + 1..n {
            let e = CMat::unit(n, j, k);
            let f = CMat::unit(n, k, j);
            let same_block = (j < p) == (k < p);
            let tag = format!("{}{}", j + 1, k + 1);
            if same_block {
                basis.push(e.minus(&f));
                names.push(format!("a{tag}"));
                basis.push(e.plus(&f).times_i());
                names.push(format!("s{tag}"));
            } else {
                basis.push(e.plus(&f));
                names.push(format!("b{tag}"));
                basis.push(e.minus(&f).times_i());
                names.push(format!("c{tag}"));
            }
        }
    }
    if with_center {
        let mut id = CMat::zero(n);
        for k in 0..n {
            id = id.plus(&CMat::unit(n, k, k));
        }
        basis.push(id.times_i());
        names.push("z".into());
    }
    (basis, names)
}

/// `su(p, q)` with `θ(X) = I X I`, `I = diag(1_p, -1_q)`.
pub fn su(p: usize, q: usize) -> Result<LieAlgebra> {
    if p + q < 2 {
        return Err(Error::Validation("su(p,q) needs p + q >= 2".into()));
    }
    let (basis, names) = unitary_basis(p, q, false);
    let i = signature(p, q);
    from_matrices(&format!("su({p},{q})"), names, &basis, |m| i.mul(m).mul(&i), p + q - 1)
}

/// `u(p, q)`: `su(p, q)` plus the center `i·1`.
pub fn u(p: usize, q: usize) -> Result<LieAlgebra> {
    if p + q < 1 {
        return Err(Error::Validation("u(p,q) needs p + q >= 1".into()));
    }
    let (basis, names) = unitary_basis(p, q, true);
    let i = signature(p, q);
    from_matrices(&format!("u({p},{q})"), names, &basis, |m| i.mul(m).mul(&i), p + q)
}

/// `so(p, q)` with `θ(X) = I X I`.
pub fn so(p: usize, q: usize) -> Result<LieAlgebra> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Validation("so(p,q) needs p + q >= 2".into()));
    }
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            let e = CMat::unit(n, j, k);
            let f = CMat::unit(n, k, j);
            if (j < p) == (k < p) {
                basis.push(e.minus(&f));
                names.push(format!("a{}{}", j + 1, k + 1));
            } else {
                basis.push(e.plus(&f));
                names.push(format!("b{}{}", j + 1, k + 1));
            }
        }
    }
    let i = signature(p, q);
    from_matrices(&format!("so({p},{q})"), names, &basis, |m| i.mul(m).mul(&i), n / 2)
}

/// `sp(2n, R)` preserving `J = [[0, 1], [-1, 0]]`, with `θ(X) = -Xᵀ`.
pub fn sp(n: usize) -> Result<LieAlgebra> {
    if n < 1 {
        return Err(Error::Validation("sp(2n) needs n >= 1".into()));
    }
    let m = 2 * n;
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(CMat::unit(m, i, j).minus(&CMat::unit(m, n + j, n + i)));
            names.push(format!("a{}{}", i + 1, j + 1));
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut b = CMat::unit(m, i, n + j);
            let mut c = CMat::unit(m, n + i, j);
            if i != j {
                b = b.plus(&CMat::unit(m, j, n + i));
                c = c.plus(&CMat::unit(m, n + j, i));
            }
            basis.push(b);
            names.push(format!("b{}{}", i + 1, j + 1));
            basis.push(c);
            names.push(format!("c{}{}", i + 1, j + 1));
        }
    }
    from_matrices(&format!("sp({m},R)"), names, &basis, neg_transpose, n)
}

/// Abelian algebra of dimension `n`, rank `n`, with `θ = sign · 1`.
pub fn abelian(n: usize, theta_sign: i64) -> Result<LieAlgebra> {
    let theta = Matrix::identity(n).scaled(&int(theta_sign));
    LieAlgebra::abelian(format!("abelian({n})"), n, "t")
        .with_rank(n)
        .with_form(Matrix::identity(n))?
        .with_theta(theta)
}

/// `so(1,1)` modelled as the one-dimensional split torus: abelian with `θ = -1`.
pub fn split_torus() -> Result<LieAlgebra> {
    Ok(abelian(1, -1)?.with_name("so(1,1)"))
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra> {
    a.direct_sum(b, format!("{}+{}", a.name(), b.name()))
}

/// A named builtin algebra: `sl2`, `sl3`, `su2`, `sl2xsl2`, `so11`, ...
pub fn algebra(name: &str) -> Result<LieAlgebra> {
    match name {
        "sl2" => sl(2),
        "sl3" => sl(3),
        "su2" => su(2, 0),
        "sl2xsl2" => direct_sum(&sl(2)?, &sl(2)?),
        "so11" => split_torus(),
        _ => Err(Error::Validation(format!("unknown builtin algebra {name}"))),
    }
}

/// The algebras whose rank identities are checked by the acceptance suite.
pub fn algebra_names() -> &'static [&'static str] {
    &["sl2", "so11", "sl2xsl2", "sl3", "su2"]
}

/// A pair `(g, h)` with `h` given by basis vectors in `g`.
#[derive(Clone, Debug)]
pub struct Pair {
    pub name: String,
    pub family: String,
    pub g: LieAlgebra,
    pub h: Subalgebra,
}

impl Pair {
    pub fn new(
        name: impl Into<String>,
        family: impl Into<String>,
        g: LieAlgebra,
        h_vectors: &[Vec<Scalar>],
    ) -> Result<Self> {
        let name = name.into();
        let h = Subalgebra::new(&g, format!("h({name})"), h_vectors)?;
        Ok(Self {
            name,
            family: family.into(),
            g,
            h,
        })
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|x| int(*x)).collect()
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// The builtin battery, ordered by family then name.
pub fn pairs() -> Result<Vec<Pair>> {
    let sl2 = sl(2)?;
    let sl3 = sl(3)?;
    let su2 = su(2, 0)?;
    let sl2x2 = algebra("sl2xsl2")?;
    let e12 = sl3
        .basis_names()
        .iter()
        .position(|b| b == "e12")
        .expect("sl3 basis");
    let e21 = sl3
        .basis_names()
        .iter()
        .position(|b| b == "e21")
        .expect("sl3 basis");
    Ok(vec![
        Pair::new("sl2/so2", "sl2", sl2.clone(), &[ints(&[0, 1, -1])])?,
        Pair::new("sl2/so11", "sl2", sl2.clone(), &[ints(&[1, 0, 0])])?,
        Pair::new("sl2/0", "sl2", sl2, &[])?,
        Pair::new("su2/u1", "su2", su2, &[ints(&[1, 0, 0])])?,
        Pair::new(
            "sl2xsl2/diag",
            "sl2xsl2",
            sl2x2,
            &[
                ints(&[1, 0, 0, 1, 0, 0]),
                ints(&[0, 1, 0, 0, 1, 0]),
                ints(&[0, 0, 1, 0, 0, 1]),
            ],
        )?,
        Pair::new("sl3/so11", "sl3", sl3.clone(), &[unit(8, 0)])?,
        Pair::new(
            "sl3/sl2",
            "sl3",
            sl3,
            &[unit(8, 0), unit(8, e12), unit(8, e21)],
        )?,
    ])
}

pub fn families() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for p in pairs().expect("builtin pairs") {
        if !out.contains(&p.family) {
            out.push(p.family);
        }
    }
    out
}
