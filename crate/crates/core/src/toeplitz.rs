//! The Toeplitz (Jacobson) algebra and finitary infinite matrices.
//!
//! Over the Toeplitz graph `e: u → u`, `f: u → v`, the elements `X = e* + f*`
//! and `Y = e + f` satisfy `XY = 1`, `YX = u`, and
//! `F_ij = Y^{i-1} X^{j-1} − Y^i X^j` is a system of matrix units. Elements of
//! `I_∞ + M_∞(K)` are stored as a sparse perturbation of the identity and
//! have a global determinant.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Algebra, AlgebraElement, Mode};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, VertexId};
use crate::matrix::DenseMatrix;

/// A finitely supported `ℕ × ℕ` matrix, indices starting at 1.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitaryMatrix {
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl FinitaryMatrix {
    pub fn zero(field: &Field) -> Self {
        FinitaryMatrix { field: field.clone(), entries: BTreeMap::new() }
    }

    /// `c · E_ij`.
    pub fn unit(field: &Field, i: usize, j: usize, c: Scalar) -> Result<Self, Error> {
        let mut m = FinitaryMatrix::zero(field);
        m.set(i, j, c)?;
        Ok(m)
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), Scalar)>>(field: &Field, it: I) -> Result<Self, Error> {
        let mut m = FinitaryMatrix::zero(field);
        for ((i, j), c) in it {
            let s = field.add(&m.get(i, j), &c);
            m.set(i, j, s)?;
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) -> Result<(), Error> {
        if i == 0 || j == 0 {
            return Err(Error::DimensionMismatch("finitary matrix indices start at 1".into()));
        }
        if self.field.is_zero(&c) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), c);
        }
        Ok(())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index touched, 0 for the zero matrix.
    pub fn support_bound(&self) -> usize {
        self.entries.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
    }

    /// The leading `n × n` block.
    pub fn to_dense(&self, n: usize) -> DenseMatrix {
        let mut d = DenseMatrix::zero(&self.field, n, n);
        for (&(i, j), c) in &self.entries {
            if i <= n && j <= n {
                d.set(i - 1, j - 1, c.clone());
            }
        }
        d
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut out = FinitaryMatrix::zero(m.field());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let c = m.get(i, j);
                if !m.field().is_zero(c) {
                    out.entries.insert((i + 1, j + 1), c.clone());
                }
            }
        }
        out
    }

    fn check(&self, o: &Self) -> Result<(), Error> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = FinitaryMatrix::zero(&self.field);
        for (&ij, c) in &self.entries {
            let v = self.field.mul(c, k);
            if !self.field.is_zero(&v) {
                out.entries.insert(ij, v);
            }
        }
        out
    }
}

pub fn fin_add(a: &FinitaryMatrix, b: &FinitaryMatrix) -> Result<FinitaryMatrix, Error> {
    a.check(b)?;
    let mut out = a.clone();
    for (&(i, j), c) in &b.entries {
        let s = a.field.add(&out.get(i, j), c);
        out.set(i, j, s)?;
    }
    Ok(out)
}

pub fn fin_mul(a: &FinitaryMatrix, b: &FinitaryMatrix) -> Result<FinitaryMatrix, Error> {
    a.check(b)?;
    let f = &a.field;
    let mut rows: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
    for (&(k, j), c) in &b.entries {
        rows.entry(k).or_default().push((j, c));
    }
    let mut out = FinitaryMatrix::zero(f);
    for (&(i, k), x) in &a.entries {
        for &(j, y) in rows.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
            let s = f.add(&out.get(i, j), &f.mul(x, y));
            out.set(i, j, s)?;
        }
    }
    Ok(out)
}

/// `I_∞ + M` with `M` finitary.
#[derive(Clone, PartialEq, Eq)]
pub struct AugmentedMatrix {
    perturbation: FinitaryMatrix,
}

impl AugmentedMatrix {
    pub fn identity(field: &Field) -> Self {
        AugmentedMatrix { perturbation: FinitaryMatrix::zero(field) }
    }

    pub fn new(perturbation: FinitaryMatrix) -> Self {
        AugmentedMatrix { perturbation }
    }

    pub fn perturbation(&self) -> &FinitaryMatrix {
        &self.perturbation
    }

    pub fn field(&self) -> &Field {
        &self.perturbation.field
    }

    pub fn is_identity(&self) -> bool {
        self.perturbation.is_zero()
    }

    pub fn support_bound(&self) -> usize {
        self.perturbation.support_bound()
    }

    /// The leading `n × n` block of `I + M`.
    pub fn to_dense(&self, n: usize) -> DenseMatrix {
        let f = self.field();
        let mut d = self.perturbation.to_dense(n);
        for i in 0..n {
            d.set(i, i, f.add(d.get(i, i), &f.one()));
        }
        d
    }

    /// `det_n(I + M)`. Equal to [`global_det`] for every `n` at or above the
    /// support bound.
    pub fn det_at(&self, n: usize) -> Scalar {
        self.to_dense(n).det().expect("square")
    }
}

/// `(I + M)(I + N) = I + (M + N + MN)`.
pub fn aug_mul(a: &AugmentedMatrix, b: &AugmentedMatrix) -> Result<AugmentedMatrix, Error> {
    let mn = fin_mul(&a.perturbation, &b.perturbation)?;
    let s = fin_add(&fin_add(&a.perturbation, &b.perturbation)?, &mn)?;
    Ok(AugmentedMatrix { perturbation: s })
}

pub fn global_det(u: &AugmentedMatrix) -> Scalar {
    u.det_at(u.support_bound())
}

#[allow(non_snake_case)]
pub fn in_GL_inf(u: &AugmentedMatrix) -> bool {
    !u.field().is_zero(&global_det(u))
}

#[allow(non_snake_case)]
pub fn in_SL_inf(u: &AugmentedMatrix) -> bool {
    u.field().is_one(&global_det(u))
}

impl fmt::Debug for FinitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse triples `(i,j,value)`.
impl fmt::Display for FinitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({i},{j},{})", self.field.render(c))?;
        }
        Ok(())
    }
}

impl fmt::Debug for AugmentedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I + {}", self.perturbation)
    }
}

/// Names of the Toeplitz graph inside an algebra.
#[derive(Clone, Copy, Debug)]
struct ToeplitzShape {
    u: VertexId,
    e: EdgeId,
    f: EdgeId,
}

fn shape(alg: &Algebra) -> Result<ToeplitzShape, Error> {
    let g = alg.graph();
    let bad = || Error::InvalidGraph("expected the Toeplitz graph e: u -> u, f: u -> v".into());
    let (u, v, e, f) = (g.vertex("u").map_err(|_| bad())?, g.vertex("v").map_err(|_| bad())?, g.edge("e").map_err(|_| bad())?, g.edge("f").map_err(|_| bad())?);
    let ok = g.vertex_count() == 2
        && g.edge_count() == 2
        && g.bundles().is_empty()
        && (g.source(e), g.range(e), g.source(f), g.range(f)) == (u, u, u, v);
    if !ok {
        return Err(bad());
    }
    Ok(ToeplitzShape { u, e, f })
}

/// The Leavitt path algebra of the Toeplitz graph.
pub fn toeplitz_algebra(field: &Field) -> Algebra {
    Algebra::new(crate::corpus::toeplitz(), field.clone(), Mode::Leavitt)
}

/// `(X, Y) = (e* + f*, e + f)`.
pub fn jacobson_generators(alg: &Algebra) -> Result<(AlgebraElement, AlgebraElement), Error> {
    let s = shape(alg)?;
    Ok((&alg.ghost(s.e) + &alg.ghost(s.f), &alg.edge(s.e) + &alg.edge(s.f)))
}

/// `F_ij = Y^{i-1} X^{j-1} − Y^i X^j`, with `F_ij = 0` when `i` or `j` is 0.
pub fn toeplitz_matrix_units_in(alg: &Algebra, i: usize, j: usize) -> Result<AlgebraElement, Error> {
    let (x, y) = jacobson_generators(alg)?;
    if i == 0 || j == 0 {
        return Ok(alg.zero());
    }
    let (i, j) = (i as u32, j as u32);
    Ok(&(&y.pow(i - 1) * &x.pow(j - 1)) - &(&y.pow(i) * &x.pow(j)))
}

pub fn toeplitz_matrix_units(i: usize, j: usize, field: &Field) -> AlgebraElement {
    toeplitz_matrix_units_in(&toeplitz_algebra(field), i, j).expect("corpus Toeplitz graph")
}

/// The `N × N` truncation of the embedding `v ↦ E₁₁`, `f ↦ E₂₁`, `f* ↦ E₁₂`,
/// `u ↦ Σ_{i≥2} E_ii`, `e ↦ Σ_{i≥2} E_{i+1,i}`, `e* ↦ Σ_{i≥2} E_{i,i+1}`.
///
/// An element whose monomials have at most `k` edge letters is a product of
/// at most `k` shifts, so `embed(xy)` and `embed(x)·embed(y)` agree on the
/// leading `(N − k) × (N − k)` block.
pub fn toeplitz_embed(x: &AlgebraElement, n: usize) -> Result<DenseMatrix, Error> {
    if n < 2 {
        return Err(Error::DimensionMismatch("the Toeplitz embedding needs N >= 2".into()));
    }
    let alg = x.algebra();
    let s = shape(alg)?;
    let field = alg.field();
    let unit = |i: usize, j: usize| DenseMatrix::unit(field, n, i - 1, j - 1);
    let sum = |pairs: &mut dyn Iterator<Item = (usize, usize)>| {
        pairs.fold(DenseMatrix::zero(field, n, n), |acc, (i, j)| acc.add(&unit(i, j)).expect("same shape"))
    };
    let img_v = unit(1, 1);
    let img_u = sum(&mut (2..=n).map(|i| (i, i)));
    let img_f = unit(2, 1);
    let img_e = sum(&mut (2..n).map(|i| (i + 1, i)));
    let edge_img = |e: EdgeId, ghost: bool| {
        let m = if e == s.e { &img_e } else { &img_f };
        if ghost {
            transpose(m)
        } else {
            m.clone()
        }
    };
    let mut out = DenseMatrix::zero(field, n, n);
    for (mono, c) in x.terms() {
        let mut m = if mono.lambda.source == s.u { img_u.clone() } else { img_v.clone() };
        for &e in &mono.lambda.edges {
            m = m.mul(&edge_img(e, false))?;
        }
        // ν* = ν_k* ⋯ ν_1* has image (image of ν) transposed.
        let mut r = if mono.nu.source == s.u { img_u.clone() } else { img_v.clone() };
        for &e in &mono.nu.edges {
            r = r.mul(&edge_img(e, false))?;
        }
        m = m.mul(&transpose(&r))?;
        out = out.add(&m.scale(c))?;
    }
    Ok(out)
}

fn transpose(m: &DenseMatrix) -> DenseMatrix {
    let mut t = DenseMatrix::zero(m.field(), m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

/// Whether two matrices agree on their leading `k × k` block.
pub fn agree_on_block(a: &DenseMatrix, b: &DenseMatrix, k: usize) -> bool {
    (0..k).all(|i| (0..k).all(|j| a.get(i, j) == b.get(i, j)))
}

/// Largest number of edge letters in a monomial of `x`.
pub fn letter_length(x: &AlgebraElement) -> usize {
    x.terms().map(|(m, _)| m.length()).max().unwrap_or(0)
}
