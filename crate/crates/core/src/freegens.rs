//! Free subgroups of unit groups.
//!
//! Each witness (an edge into a sink, a sink of a quotient graph, a breaking
//! vertex, an edge into an eventually periodic infinite path, or a
//! subinterval of a line graph) yields two units built from `1 + αx` and
//! `1 + αy`. On a two-dimensional subspace `V` of a simple module the units
//! act as the Sanov matrices
//!
//! ```text
//! A = [[1, 0], [α, 1]]   B = [[1, α], [0, 1]]
//! C = [[β, 0], [α, 1/β]] D = [[β, α], [0, 1/β]]
//! ```
//!
//! which generate a free group when `α = 2` (or transcendental) in
//! characteristic zero, or when `α, β` are independent in characteristic `p`.
//! Freeness is certified up to a word-length bound.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{verify_inverse, Algebra, AlgebraElement, Letter};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::ideal::{quotient_graph, wh_element, IdealSpec, QuotientMap};
use crate::matrix::DenseMatrix;
use crate::modules::{canonicalize_rational, BasisVector, Module};

/// Characteristic regime of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharCase {
    Zero,
    Positive(u64),
}

impl fmt::Display for CharCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharCase::Zero => f.write_str("char 0"),
            CharCase::Positive(p) => write!(f, "char {p}"),
        }
    }
}

/// Checks `α` (and `β`) against what the field offers: in characteristic 0,
/// `α` is `2` or one of the field's independent generators and `β` is
/// absent; in characteristic `p`, `α` and `β` are two distinct independent
/// generators.
pub fn check_parameters(field: &Field, alpha: &Scalar, beta: Option<&Scalar>) -> Result<CharCase, Error> {
    let prof = field.profile();
    let gens: Vec<Scalar> = prof.independent_generators.iter().map(|n| field.variable(n)).collect::<Result<_, _>>()?;
    let is_gen = |s: &Scalar| gens.iter().position(|g| g == s);
    if prof.characteristic == 0 {
        if beta.is_some() {
            return Err(Error::InvalidParameter("β is only used in positive characteristic".into()));
        }
        if *alpha != field.from_i64(2) && is_gen(alpha).is_none() {
            return Err(Error::InvalidParameter(alloc::format!(
                "α = {} is neither 2 nor an independent generator of {field}",
                field.render(alpha)
            )));
        }
        Ok(CharCase::Zero)
    } else {
        let beta = beta.ok_or_else(|| Error::InvalidParameter("positive characteristic needs β".into()))?;
        match (is_gen(alpha), is_gen(beta)) {
            (Some(i), Some(j)) if i != j => Ok(CharCase::Positive(prof.characteristic)),
            _ => Err(Error::InvalidParameter(alloc::format!(
                "α and β must be two distinct independent generators of {field}"
            ))),
        }
    }
}

/// Sanov matrices with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SanovPair {
    pub case: CharCase,
    /// `A` or `C`.
    pub first: DenseMatrix,
    /// `B` or `D`.
    pub second: DenseMatrix,
    pub first_inv: DenseMatrix,
    pub second_inv: DenseMatrix,
}

pub fn sanov_pair(field: &Field, alpha: &Scalar, beta: Option<&Scalar>) -> Result<SanovPair, Error> {
    let case = check_parameters(field, alpha, beta)?;
    let (d1, d2) = match beta {
        Some(b) => (b.clone(), field.inv(b)?),
        None => (field.one(), field.one()),
    };
    let z = field.zero();
    let first = DenseMatrix::from_rows(field, alloc::vec![alloc::vec![d1.clone(), z.clone()], alloc::vec![alpha.clone(), d2.clone()]])?;
    let second = DenseMatrix::from_rows(field, alloc::vec![alloc::vec![d1, alpha.clone()], alloc::vec![z, d2]])?;
    let first_inv = first.inverse()?;
    let second_inv = second.inverse()?;
    Ok(SanovPair { case, first, second, first_inv, second_inv })
}

/// Where a free pair comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `r(f)` is a sink.
    SinkEdge { f: EdgeId },
    /// `w` is a sink of `E \ (H, S)` and `r(f) = w`.
    QuotientSink { spec: IdealSpec, f: EdgeId, w: VertexId },
    /// `w ∈ B_H \ S` and `r(f) = w`.
    BreakingVertex { spec: IdealSpec, w: VertexId, f: EdgeId },
    /// `s(f) ≠ r(f) = s(tail)` for an eventually periodic infinite path.
    RationalPathEdge { f: EdgeId, tail: BasisVector },
    /// The path from `v_i` to `v_j` in a line graph, `i < j` (1-based).
    LineGraph { i: usize, j: usize },
}

impl Witness {
    pub fn render(&self, g: &Graph) -> String {
        let set = |s: &BTreeSet<VertexId>| g.names_of(s).join(",");
        match self {
            Witness::SinkEdge { f } => alloc::format!("SinkEdge({})", g.edge_name(*f)),
            Witness::QuotientSink { spec, f, w } => {
                alloc::format!("QuotientSink(H={{{}}}, S={{{}}}, f={}, w={})", set(&spec.h), set(&spec.s), g.edge_name(*f), g.vertex_name(*w))
            }
            Witness::BreakingVertex { spec, w, f } => {
                alloc::format!("BreakingVertex(H={{{}}}, S={{{}}}, w={}, f={})", set(&spec.h), set(&spec.s), g.vertex_name(*w), g.edge_name(*f))
            }
            Witness::RationalPathEdge { f, tail } => alloc::format!("RationalPathEdge(f={}, p={})", g.edge_name(*f), tail.render(g)),
            Witness::LineGraph { i, j } => alloc::format!("LineGraph({i}, {j})"),
        }
    }

    /// Checks the structural conditions of the variant.
    pub fn validate(&self, g: &Graph) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidWitness(m));
        let edge_ok = |f: EdgeId| if f.0 < g.edge_count() { Ok(()) } else { Err(Error::InvalidWitness("unknown edge".into())) };
        match self {
            Witness::SinkEdge { f } => {
                edge_ok(*f)?;
                if !g.is_sink(g.range(*f)) {
                    return bad(alloc::format!("r({}) = {} is not a sink", g.edge_name(*f), g.vertex_name(g.range(*f))));
                }
            }
            Witness::QuotientSink { spec, f, w } => {
                edge_ok(*f)?;
                if g.range(*f) != *w {
                    return bad(alloc::format!("r({}) is not {}", g.edge_name(*f), g.vertex_name(*w)));
                }
                if spec.h.contains(w) || spec.primed(g).contains(w) {
                    return bad(alloc::format!("{} must lie outside H and B_H \\ S", g.vertex_name(*w)));
                }
                let q = quotient_graph(g, spec)?;
                if !q.graph.is_sink(q.vertex[w]) {
                    return bad(alloc::format!("{} is not a sink of the quotient graph", g.vertex_name(*w)));
                }
            }
            Witness::BreakingVertex { spec, w, f } => {
                edge_ok(*f)?;
                if !spec.primed(g).contains(w) {
                    return bad(alloc::format!("{} is not in B_H \\ S", g.vertex_name(*w)));
                }
                if g.range(*f) != *w {
                    return bad(alloc::format!("r({}) is not {}", g.edge_name(*f), g.vertex_name(*w)));
                }
            }
            Witness::RationalPathEdge { f, tail } => {
                edge_ok(*f)?;
                let BasisVector::RationalTail { prefix, cycle, phase } = tail else {
                    return bad("the tail must be an eventually periodic infinite path".into());
                };
                g.cycle(cycle.edges())?;
                if canonicalize_rational(g, prefix.clone(), cycle, *phase)? != *tail {
                    return bad("the tail is not in canonical form".into());
                }
                if g.range(*f) != tail.source() {
                    return bad(alloc::format!("r({}) is not the start of the tail", g.edge_name(*f)));
                }
                if g.source(*f) == g.range(*f) {
                    return bad(alloc::format!("{} is a loop", g.edge_name(*f)));
                }
            }
            Witness::LineGraph { i, j } => {
                let order = line_order(g)?;
                if !(1 <= *i && i < j && *j <= order.len()) {
                    return bad(alloc::format!("need 1 <= i < j <= {}", order.len()));
                }
            }
        }
        Ok(())
    }
}

/// Vertices of a line graph `v_1 -> v_2 -> ... -> v_n` in order.
fn line_order(g: &Graph) -> Result<Vec<VertexId>, Error> {
    let not_line = || Error::InvalidWitness(alloc::format!("{} is not an oriented line graph", g.name()));
    if !g.bundles().is_empty() {
        return Err(not_line());
    }
    let starts: Vec<VertexId> = g.vertex_ids().filter(|&v| g.in_edges(v).next().is_none()).collect();
    if starts.len() != 1 {
        return Err(not_line());
    }
    let mut order = alloc::vec![starts[0]];
    loop {
        let v = *order.last().unwrap();
        match g.out_edges(v) {
            [] => break,
            [e] => {
                let r = g.range(*e);
                if order.contains(&r) || g.in_edges(r).count() != 1 {
                    return Err(not_line());
                }
                order.push(r);
            }
            _ => return Err(not_line()),
        }
    }
    if order.len() != g.vertex_count() {
        return Err(not_line());
    }
    Ok(order)
}

/// Two units with closed-form inverses, and the data they were built from.
#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub witness: Witness,
    pub case: CharCase,
    pub alpha: Scalar,
    pub beta: Option<Scalar>,
    /// `("a", "b")` or `("c", "d")`.
    pub labels: [&'static str; 2],
    pub generators: [AlgebraElement; 2],
    pub inverses: [AlgebraElement; 2],
}

impl GeneratorPair {
    pub fn algebra(&self) -> &Algebra {
        self.generators[0].algebra()
    }

    /// `(element, inverse)` pairs in the shape [`crate::algebra::evaluate_word`] takes.
    pub fn word_generators(&self) -> [(AlgebraElement, Option<AlgebraElement>); 2] {
        [(self.generators[0].clone(), Some(self.inverses[0].clone())), (self.generators[1].clone(), Some(self.inverses[1].clone()))]
    }
}

/// Builds the pair for `witness`. The first unit is `1 + αx` and the second
/// `1 + αy`, with
///
/// - `x = f*`, `y = f` for sink, quotient-sink and infinite-path witnesses;
/// - `x = w^H f*`, `y = f w^H` for a breaking vertex `w`;
/// - `x = p`, `y = p*` for the path `p` from `v_i` to `v_j` in a line graph.
///
/// In characteristic `p` both get `(β−1)P + (β⁻¹−1)Q` added, where `P, Q`
/// are `s(f), r(f)` (or `s(f), w^H`, or `v_i, v_j`). When a breaking vertex
/// witness has `s(f) = w`, `P` is `s(f) − w^H` instead so that `P` and `Q`
/// stay orthogonal.
pub fn build_generators(alg: &Algebra, witness: &Witness, alpha: &Scalar, beta: Option<&Scalar>) -> Result<GeneratorPair, Error> {
    let g = alg.graph();
    let field = alg.field();
    witness.validate(g)?;
    let case = check_parameters(field, alpha, beta)?;
    let (x, y, p, q) = match witness {
        Witness::SinkEdge { f } | Witness::QuotientSink { f, .. } | Witness::RationalPathEdge { f, .. } => {
            (alg.ghost(*f), alg.edge(*f), alg.vertex(g.source(*f)), alg.vertex(g.range(*f)))
        }
        Witness::BreakingVertex { spec, w, f } => {
            let wh = wh_element(alg, *w, &spec.h)?;
            let sf = alg.vertex(g.source(*f));
            let p = if g.source(*f) == *w { &sf - &wh } else { sf };
            (&wh * &alg.ghost(*f), &alg.edge(*f) * &wh, p, wh)
        }
        Witness::LineGraph { i, j } => {
            let order = line_order(g)?;
            let edges: Vec<EdgeId> = (i - 1..j - 1).map(|k| g.out_edges(order[k])[0]).collect();
            let path = alg.path(&g.path(&edges)?);
            let star = path.star();
            (path, star, alg.vertex(order[i - 1]), alg.vertex(order[j - 1]))
        }
    };
    let one = alg.one();
    let mut gens = [&one + &x.scale(alpha), &one + &y.scale(alpha)];
    let minus = field.neg(alpha);
    let mut invs = [&one + &x.scale(&minus), &one + &y.scale(&minus)];
    if let Some(b) = beta {
        let bm1 = field.sub(b, &field.one());
        let binv = field.inv(b)?;
        let binvm1 = field.sub(&binv, &field.one());
        let dress = &p.scale(&bm1) + &q.scale(&binvm1);
        let undress = &p.scale(&binvm1) + &q.scale(&bm1);
        for k in 0..2 {
            gens[k] = &gens[k] + &dress;
            invs[k] = &invs[k] + &undress;
        }
    }
    let labels = if beta.is_some() { ["c", "d"] } else { ["a", "b"] };
    for k in 0..2 {
        if !verify_inverse(&gens[k], &invs[k])? {
            return Err(Error::VerificationFailed(alloc::format!("{}·{}⁻¹ ≠ 1 for {}", labels[k], labels[k], witness.render(g))));
        }
    }
    Ok(GeneratorPair { witness: witness.clone(), case, alpha: alpha.clone(), beta: beta.cloned(), labels, generators: gens, inverses: invs })
}

/// A representation of (a subring of) the algebra by matrices, through
/// which the free pair maps onto Sanov matrices.
#[derive(Clone, Debug)]
pub struct MatrixImage {
    field: Field,
    kind: ImageKind,
}

#[derive(Clone, Debug)]
enum ImageKind {
    /// Action on the span of two basis vectors of a simple module, after an
    /// optional quotient map.
    Module { phi: Option<QuotientMap>, module: Module, basis: [BasisVector; 2] },
    /// `L_K(A_n) ≅ M_n(K)`.
    Line(LineGraphIso),
}

impl MatrixImage {
    pub fn for_witness(alg: &Algebra, witness: &Witness) -> Result<Self, Error> {
        let g = alg.graph();
        let path = |gr: &Graph, e: EdgeId| gr.path(&[e]);
        let kind = match witness {
            Witness::SinkEdge { f } => {
                let w = g.range(*f);
                ImageKind::Module {
                    phi: None,
                    module: Module::sink(alg, w)?,
                    basis: [BasisVector::SinkPath(path(g, *f)?), BasisVector::SinkPath(Path::trivial(w))],
                }
            }
            Witness::QuotientSink { spec, f, w } => {
                let phi = QuotientMap::new(alg, spec)?;
                let (ff, wf) = (phi.quotient.edge[f], phi.quotient.vertex[w]);
                let module = Module::sink(&phi.target, wf)?;
                let basis = [BasisVector::SinkPath(path(&phi.quotient.graph, ff)?), BasisVector::SinkPath(Path::trivial(wf))];
                ImageKind::Module { phi: Some(phi), module, basis }
            }
            Witness::BreakingVertex { spec, w, f } => {
                let phi = QuotientMap::new(alg, spec)?;
                let (ff, wf) = (phi.quotient.primed_edge[f], phi.quotient.primed_vertex[w]);
                let module = Module::sink(&phi.target, wf)?;
                let basis = [BasisVector::SinkPath(path(&phi.quotient.graph, ff)?), BasisVector::SinkPath(Path::trivial(wf))];
                ImageKind::Module { phi: Some(phi), module, basis }
            }
            Witness::RationalPathEdge { f, tail } => {
                let BasisVector::RationalTail { cycle, .. } = tail else {
                    return Err(Error::InvalidWitness("the tail must be an infinite path".into()));
                };
                let module = Module::chen(alg, cycle.clone())?;
                let ftail = module
                    .act_generator(crate::algebra::Generator::Edge(*f), tail)
                    .ok_or_else(|| Error::InvalidWitness("f does not prepend to the tail".into()))?;
                ImageKind::Module { phi: None, module, basis: [ftail, tail.clone()] }
            }
            Witness::LineGraph { .. } => ImageKind::Line(LineGraphIso::new(alg)?),
        };
        Ok(MatrixImage { field: alg.field().clone(), kind })
    }

    pub fn dimension(&self) -> usize {
        match &self.kind {
            ImageKind::Module { .. } => 2,
            ImageKind::Line(l) => l.n(),
        }
    }

    /// The matrix of `x`. For a module image, fails if `x` does not map the
    /// two-dimensional subspace into itself.
    pub fn image(&self, x: &AlgebraElement) -> Result<DenseMatrix, Error> {
        match &self.kind {
            ImageKind::Line(l) => l.image(x),
            ImageKind::Module { phi, module, basis } => {
                let y = match phi {
                    Some(p) => p.apply(x)?,
                    None => x.clone(),
                };
                let mut m = DenseMatrix::zero(&self.field, 2, 2);
                for (j, b) in basis.iter().enumerate() {
                    let v = module.act(&y, &module.vector(b.clone())?)?;
                    for (c, k) in v.terms() {
                        let i = basis
                            .iter()
                            .position(|x| x == c)
                            .ok_or_else(|| Error::VerificationFailed("element does not preserve the two-dimensional subspace".into()))?;
                        m.set(i, j, k.clone());
                    }
                }
                Ok(m)
            }
        }
    }
}

/// The expected images of the two generators: the Sanov pair, placed at rows
/// and columns `i, j` for a line graph.
pub fn expected_images(pair: &GeneratorPair) -> Result<[DenseMatrix; 2], Error> {
    let field = pair.algebra().field();
    let s = sanov_pair(field, &pair.alpha, pair.beta.as_ref())?;
    match &pair.witness {
        Witness::LineGraph { i, j } => {
            let n = line_order(pair.algebra().graph())?.len();
            let embed = |m: &DenseMatrix| {
                let mut out = DenseMatrix::identity(field, n);
                let idx = [i - 1, j - 1];
                for a in 0..2 {
                    for b in 0..2 {
                        out.set(idx[a], idx[b], m.get(a, b).clone());
                    }
                }
                out
            };
            // `1 + α p` is upper triangular in the line picture.
            Ok([embed(&s.second), embed(&s.first)])
        }
        _ => Ok([s.first, s.second]),
    }
}

/// Images of the two generators in `M_2(K)`.
pub fn two_by_two_image(pair: &GeneratorPair) -> Result<[DenseMatrix; 2], Error> {
    if matches!(pair.witness, Witness::LineGraph { .. }) {
        return Err(Error::Unsupported("line-graph witnesses map to M_n; use the line graph isomorphism".into()));
    }
    let im = MatrixImage::for_witness(pair.algebra(), &pair.witness)?;
    Ok([im.image(&pair.generators[0])?, im.image(&pair.generators[1])?])
}

/// Outcome of [`verify_free_up_to`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// Every nonempty reduced word evaluates to an element other than 1.
    pub all_nontrivial: bool,
    /// Every word's matrix image is the product of the generator images and
    /// differs from the identity.
    pub matrix_crosscheck: bool,
    /// First word that failed either check, rendered.
    pub first_failure: Option<String>,
}

/// Number of nonempty reduced words of length at most `l` over two
/// generators and their inverses.
pub fn reduced_word_count(l: usize) -> usize {
    (1..=l).map(|k| 4 * 3usize.pow(k as u32 - 1)).sum()
}

pub fn render_word(word: &[Letter], labels: [&str; 2]) -> String {
    word.iter()
        .map(|&(i, inv)| if inv { alloc::format!("{}^-1", labels[i]) } else { labels[i].to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks every nonempty reduced word of length at most `max_len`: its value
/// in the algebra is not 1, its matrix image (computed from the module
/// action) equals the product of the generator matrices, and that product is
/// not the identity.
pub fn verify_free_up_to(pair: &GeneratorPair, max_len: usize) -> Result<FreenessReport, Error> {
    let alg = pair.algebra();
    let image = MatrixImage::for_witness(alg, &pair.witness)?;
    let exp = expected_images(pair)?;
    let mats = [[exp[0].clone(), exp[0].inverse()?], [exp[1].clone(), exp[1].inverse()?]];
    let elems = [[pair.generators[0].clone(), pair.inverses[0].clone()], [pair.generators[1].clone(), pair.inverses[1].clone()]];
    let mut report = FreenessReport { max_len, words_checked: 0, all_nontrivial: true, matrix_crosscheck: true, first_failure: None };
    let n = image.dimension();
    let mut stack: Vec<(Vec<Letter>, AlgebraElement, DenseMatrix)> = alloc::vec![(Vec::new(), alg.one(), DenseMatrix::identity(alg.field(), n))];
    while let Some((word, x, m)) = stack.pop() {
        if word.len() == max_len {
            continue;
        }
        for i in 0..2 {
            for inv in [false, true] {
                if let Some(&(li, linv)) = word.last() {
                    if li == i && linv != inv {
                        continue;
                    }
                }
                let k = inv as usize;
                let x2 = x.try_mul(&elems[i][k])?;
                let m2 = m.mul(&mats[i][k])?;
                let mut w2 = word.clone();
                w2.push((i, inv));
                report.words_checked += 1;
                let alg_ok = !x2.is_identity();
                let mat_ok = !m2.is_identity() && image.image(&x2)? == m2;
                if !alg_ok {
                    report.all_nontrivial = false;
                }
                if !mat_ok {
                    report.matrix_crosscheck = false;
                }
                if (!alg_ok || !mat_ok) && report.first_failure.is_none() {
                    report.first_failure = Some(render_word(&w2, pair.labels));
                }
                stack.push((w2, x2, m2));
            }
        }
    }
    Ok(report)
}

/// All witnesses available in `g`: edges into sinks, edges into the start of
/// a cycle tail from outside it, and, given `(H, S)`, quotient sinks and
/// breaking vertices.
pub fn find_witness(g: &Graph, spec: Option<&IdealSpec>) -> Result<Vec<Witness>, Error> {
    let mut out = Vec::new();
    for e in g.edge_ids() {
        if g.is_sink(g.range(e)) {
            out.push(Witness::SinkEdge { f: e });
        }
    }
    if let Some(spec) = spec {
        let q = quotient_graph(g, spec)?;
        let primed = spec.primed(g);
        for (&v, &vq) in &q.vertex {
            if !q.graph.is_sink(vq) || g.is_sink(v) || primed.contains(&v) {
                continue;
            }
            for e in g.in_edges(v) {
                out.push(Witness::QuotientSink { spec: spec.clone(), f: e, w: v });
            }
        }
        for &w in &primed {
            for e in g.in_edges(w) {
                out.push(Witness::BreakingVertex { spec: spec.clone(), w, f: e });
            }
        }
    }
    for c in g.simple_cycles() {
        for (phase, &ce) in c.edges().iter().enumerate() {
            let start = g.source(ce);
            for e in g.in_edges(start) {
                if g.source(e) == start {
                    continue;
                }
                let tail = canonicalize_rational(g, Path::trivial(start), &c, phase)?;
                out.push(Witness::RationalPathEdge { f: e, tail });
            }
        }
    }
    Ok(out)
}

/// One factor of a unit group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitFactor {
    /// `GL_n(K)`, one per sink.
    General { n: usize, sink: String },
    /// `GL_n(K[x, x⁻¹])`, one per cycle without exits.
    Laurent { n: usize, cycle: String },
}

impl fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitFactor::General { n, .. } => write!(f, "GL_{n}(K)"),
            UnitFactor::Laurent { n, .. } => write!(f, "GL_{n}(K[x,x^-1])"),
        }
    }
}

/// Structure of `L_K(E)^×` when the algebra is artinian or noetherian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitGroup {
    Product(Vec<UnitFactor>),
    NotArtinianOrNoetherian { diagnostics: Vec<String> },
}

impl UnitGroup {
    /// Abelian form `K^× × ... × K^×⟨x⟩` when every factor has size 1.
    pub fn abelian_form(&self) -> Option<String> {
        let UnitGroup::Product(fs) = self else { return None };
        fs.iter()
            .map(|f| match f {
                UnitFactor::General { n: 1, .. } => Some("K^×"),
                UnitFactor::Laurent { n: 1, .. } => Some("K^×⟨x⟩"),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| v.join(" × "))
    }
}

impl fmt::Display for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitGroup::Product(fs) if fs.is_empty() => f.write_str("trivial"),
            UnitGroup::Product(fs) => f.write_str(&fs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" × ")),
            UnitGroup::NotArtinianOrNoetherian { diagnostics } => write!(f, "not artinian or noetherian: {}", diagnostics.join("; ")),
        }
    }
}

/// Unit group of `L_K(E)` for a finite graph whose cycles have no exits:
/// `GL_{n_i}(K)` per sink, `n_i` the number of paths ending there, and
/// `GL_{m_j}(K[x,x⁻¹])` per cycle, `m_j` the number of paths ending at its
/// base that do not run through the whole cycle.
pub fn unit_group_structure(g: &Graph) -> UnitGroup {
    let mut diagnostics = Vec::new();
    for v in g.vertex_ids() {
        if g.is_infinite_emitter(v) {
            diagnostics.push(alloc::format!("vertex {} is an infinite emitter", g.vertex_name(v)));
        }
    }
    let cycles = g.simple_cycles();
    for c in &cycles {
        let (edges, bundles) = g.cycle_exits(c);
        if let Some(&e) = edges.first() {
            diagnostics.push(alloc::format!("cycle {} has exit {}", c.render(g), g.edge_name(e)));
        } else if let Some(b) = bundles.first() {
            diagnostics.push(alloc::format!("cycle {} has an exit into {}", c.render(g), g.vertex_name(b.range)));
        }
    }
    if !diagnostics.is_empty() {
        return UnitGroup::NotArtinianOrNoetherian { diagnostics };
    }
    // No exits: the cycles are disjoint and no path can re-enter a cycle
    // after leaving it, so paths avoiding a full turn have bounded length.
    let bound = g.vertex_count() + g.edge_count();
    let mut factors = Vec::new();
    for v in g.vertex_ids().filter(|&v| g.is_sink(v)) {
        let n = g.paths_ending_at(v, bound).len();
        factors.push(UnitFactor::General { n, sink: g.vertex_name(v).to_string() });
    }
    for c in &cycles {
        let base = c.base(g);
        let turn = c.edges();
        let n = g.paths_ending_at(base, bound).into_iter().filter(|p| !p.edges.windows(turn.len()).any(|w| w == turn)).count();
        factors.push(UnitFactor::Laurent { n, cycle: c.render(g) });
    }
    UnitGroup::Product(factors)
}

/// `L_K(A_n) ≅ M_n(K)` via `v_i ↦ E_ii`, `e_i ↦ E_{i,i+1}`, `e_i* ↦ E_{i+1,i}`.
#[derive(Clone, Debug)]
pub struct LineGraphIso {
    alg: Algebra,
    /// Position (0-based) of each vertex along the line.
    position: Vec<usize>,
}

impl LineGraphIso {
    pub fn new(alg: &Algebra) -> Result<Self, Error> {
        let order = line_order(alg.graph())?;
        let mut position = alloc::vec![0; order.len()];
        for (i, v) in order.iter().enumerate() {
            position[v.0] = i;
        }
        Ok(LineGraphIso { alg: alg.clone(), position })
    }

    pub fn n(&self) -> usize {
        self.position.len()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Generator images as `(generator, row, column)`, 1-based.
    pub fn table(&self) -> Vec<(String, usize, usize)> {
        let g = self.alg.graph();
        let mut out: Vec<(String, usize, usize)> = g.vertex_ids().map(|v| (g.vertex_name(v).to_string(), self.position[v.0] + 1, self.position[v.0] + 1)).collect();
        for e in g.edge_ids() {
            let (s, r) = (self.position[g.source(e).0] + 1, self.position[g.range(e).0] + 1);
            out.push((g.edge_name(e).to_string(), s, r));
            out.push((alloc::format!("{}*", g.edge_name(e)), r, s));
        }
        out.sort_by_key(|x| (x.1, x.2));
        out
    }

    /// `λν* ↦ E_{s(λ), s(ν)}`, extended linearly.
    pub fn image(&self, x: &AlgebraElement) -> Result<DenseMatrix, Error> {
        if x.algebra().graph() != self.alg.graph() || x.algebra().field() != self.alg.field() {
            return Err(Error::AlgebraMismatch);
        }
        let field = self.alg.field();
        let mut m = DenseMatrix::zero(field, self.n(), self.n());
        for (mono, c) in x.terms() {
            let (i, j) = (self.position[mono.lambda.source.0], self.position[mono.nu.source.0]);
            let s = field.add(m.get(i, j), c);
            m.set(i, j, s);
        }
        Ok(m)
    }
}

/// The isomorphism for the oriented line with `n` vertices.
pub fn line_graph_iso(n: usize, field: &Field) -> LineGraphIso {
    let alg = Algebra::new(crate::corpus::line(n), field.clone(), crate::algebra::Mode::Leavitt);
    LineGraphIso::new(&alg).expect("corpus line graph")
}

/// For a breaking-vertex pair, the sink-edge pair of the quotient graph that
/// `φ` should carry it to.
pub fn quotient_pair(pair: &GeneratorPair) -> Result<(QuotientMap, GeneratorPair), Error> {
    let Witness::BreakingVertex { spec, f, .. } = &pair.witness else {
        return Err(Error::InvalidWitness("only breaking-vertex pairs have a quotient pair".into()));
    };
    let phi = QuotientMap::new(pair.algebra(), spec)?;
    let fq = phi.quotient.primed_edge[f];
    let qp = build_generators(&phi.target, &Witness::SinkEdge { f: fq }, &pair.alpha, pair.beta.as_ref())?;
    Ok((phi, qp))
}
