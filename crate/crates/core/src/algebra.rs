//! Cohn and Leavitt path algebras over exact fields.
//!
//! Elements are finite combinations of monomials `λν*` with `r(λ) = r(ν)`,
//! always kept in normal form. In Cohn mode every such monomial is a basis
//! element. In Leavitt mode a monomial whose paths both end in the last
//! enumerated edge `e` of a regular vertex is rewritten using
//! `e e* = v - Σ_{i<m} e_i e_i*`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Cohn,
    Leavitt,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cohn => "cohn",
            Mode::Leavitt => "leavitt",
        })
    }
}

/// `λν*`. A vertex `v` is the monomial with both paths trivial at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub lambda: Path,
    pub nu: Path,
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.lambda
            .len()
            .cmp(&o.lambda.len())
            .then_with(|| self.nu.len().cmp(&o.nu.len()))
            .then_with(|| self.lambda.edges.cmp(&o.lambda.edges))
            .then_with(|| self.nu.edges.cmp(&o.nu.edges))
            .then_with(|| self.lambda.source.cmp(&o.lambda.source))
            .then_with(|| self.nu.source.cmp(&o.nu.source))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial {
    pub fn vertex(v: VertexId) -> Self {
        Monomial { lambda: Path::trivial(v), nu: Path::trivial(v) }
    }

    /// `λν*`; fails unless `r(λ) = r(ν)`.
    pub fn new(lambda: Path, nu: Path) -> Result<Self, Error> {
        if lambda.range != nu.range {
            return Err(Error::NotAPath("r(λ) differs from r(ν)".into()));
        }
        Ok(Monomial { lambda, nu })
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        Monomial { lambda: Path { source: g.source(e), range: g.range(e), edges: vec![e] }, nu: Path::trivial(g.range(e)) }
    }

    pub fn ghost(g: &Graph, e: EdgeId) -> Self {
        Monomial::edge(g, e).star()
    }

    pub fn star(&self) -> Self {
        Monomial { lambda: self.nu.clone(), nu: self.lambda.clone() }
    }

    /// `|λ| - |ν|`.
    pub fn degree(&self) -> i64 {
        self.lambda.len() as i64 - self.nu.len() as i64
    }

    /// Total number of edge letters.
    pub fn length(&self) -> usize {
        self.lambda.len() + self.nu.len()
    }

    /// Left endpoint `s(λ)` and right endpoint `s(ν)`.
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.lambda.source, self.nu.source)
    }

    /// Excluded from the Leavitt basis: both paths nonempty and ending in the
    /// same enumeration-maximal edge of a regular vertex.
    pub fn is_forbidden(&self, g: &Graph) -> bool {
        match (self.lambda.edges.last(), self.nu.edges.last()) {
            (Some(&a), Some(&b)) => a == b && g.is_max_edge(a),
            _ => false,
        }
    }

    /// Raw product `(λν*)(μρ*)` using only the vertex, edge and (CK1)
    /// relations.
    pub fn mul(&self, o: &Monomial) -> Option<Monomial> {
        if let Some(kappa) = o.lambda.strip_prefix(&self.nu) {
            Some(Monomial { lambda: self.lambda.concat(&kappa), nu: o.nu.clone() })
        } else {
            self.nu.strip_prefix(&o.lambda).map(|kappa| Monomial { lambda: self.lambda.clone(), nu: o.nu.concat(&kappa) })
        }
    }

    /// Leavitt rewriting of a single monomial: `(monomial, negate)` pairs
    /// whose signed sum equals `self` and which are all basis elements.
    pub fn leavitt_expand(&self, g: &Graph) -> Vec<(Monomial, bool)> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while cur.is_forbidden(g) {
            let e = cur.lambda.edges.pop().unwrap();
            cur.nu.edges.pop();
            let v = g.source(e);
            cur.lambda.range = v;
            cur.nu.range = v;
            for &ei in g.out_edges(v) {
                if ei == e {
                    break;
                }
                let mut l = cur.lambda.clone();
                let mut n = cur.nu.clone();
                l.edges.push(ei);
                n.edges.push(ei);
                l.range = g.range(ei);
                n.range = g.range(ei);
                out.push((Monomial { lambda: l, nu: n }, true));
            }
        }
        out.push((cur, false));
        out
    }

    pub fn render(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.lambda.is_trivial() && self.nu.is_trivial() {
            return g.vertex_name(self.lambda.source).to_string();
        }
        parts.extend(self.lambda.edges.iter().map(|&e| g.edge_name(e).to_string()));
        parts.extend(self.nu.edges.iter().rev().map(|&e| alloc::format!("{}*", g.edge_name(e))));
        parts.join(" ")
    }
}

struct AlgebraInner {
    graph: Graph,
    field: Field,
    mode: Mode,
}

/// Shared handle to `C_K(E)` or `L_K(E)`.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({} over {}, {})", self.0.graph.name(), self.0.field, self.0.mode)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.mode == o.0.mode && self.0.field == o.0.field && self.0.graph == o.0.graph)
    }
}

impl Eq for Algebra {}

/// Letters of the free algebra on `E^0 ∪ E^1 ∪ (E^1)*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Generator {
    pub fn render(&self, g: &Graph) -> String {
        match self {
            Generator::Vertex(v) => g.vertex_name(*v).to_string(),
            Generator::Edge(e) => g.edge_name(*e).to_string(),
            Generator::Ghost(e) => alloc::format!("{}*", g.edge_name(*e)),
        }
    }
}

/// A defining relation, as an integer combination of generator words that
/// must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(i64, Vec<Generator>)>,
}

/// All defining relations of the algebra's mode: (V), (E1), (E2), (CK1) and,
/// in Leavitt mode, (CK2) at every regular vertex.
pub fn relations(g: &Graph, mode: Mode) -> Vec<Relation> {
    use Generator::*;
    let mut out = Vec::new();
    let vn = |v: VertexId| g.vertex_name(v).to_string();
    let en = |e: EdgeId| g.edge_name(e).to_string();
    for v in g.vertex_ids() {
        for w in g.vertex_ids() {
            let mut terms = vec![(1, vec![Vertex(v), Vertex(w)])];
            if v == w {
                terms.push((-1, vec![Vertex(v)]));
            }
            out.push(Relation { name: alloc::format!("V {} {}", vn(v), vn(w)), terms });
        }
    }
    for e in g.edge_ids() {
        let (s, r) = (g.source(e), g.range(e));
        out.push(Relation { name: alloc::format!("E1 s({0}){0}", en(e)), terms: vec![(1, vec![Vertex(s), Edge(e)]), (-1, vec![Edge(e)])] });
        out.push(Relation { name: alloc::format!("E1 {0}r({0})", en(e)), terms: vec![(1, vec![Edge(e), Vertex(r)]), (-1, vec![Edge(e)])] });
        out.push(Relation { name: alloc::format!("E2 r({0}){0}*", en(e)), terms: vec![(1, vec![Vertex(r), Ghost(e)]), (-1, vec![Ghost(e)])] });
        out.push(Relation { name: alloc::format!("E2 {0}*s({0})", en(e)), terms: vec![(1, vec![Ghost(e), Vertex(s)]), (-1, vec![Ghost(e)])] });
    }
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            let mut terms = vec![(1, vec![Ghost(e), Edge(f)])];
            if e == f {
                terms.push((-1, vec![Vertex(g.range(e))]));
            }
            out.push(Relation { name: alloc::format!("CK1 {}* {}", en(e), en(f)), terms });
        }
    }
    if mode == Mode::Leavitt {
        for v in g.vertex_ids().filter(|&v| g.is_regular(v)) {
            let mut terms = vec![(1, vec![Vertex(v)])];
            terms.extend(g.out_edges(v).iter().map(|&e| (-1, vec![Edge(e), Ghost(e)])));
            out.push(Relation { name: alloc::format!("CK2 {}", vn(v)), terms });
        }
    }
    out
}

impl Algebra {
    pub fn new(graph: Graph, field: Field, mode: Mode) -> Self {
        Algebra(Arc::new(AlgebraInner { graph, field, mode }))
    }

    pub fn graph(&self) -> &Graph {
        &self.0.graph
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn mode(&self) -> Mode {
        self.0.mode
    }

    /// Same graph and field in another mode.
    pub fn with_mode(&self, mode: Mode) -> Algebra {
        if mode == self.mode() {
            return self.clone();
        }
        Algebra::new(self.graph().clone(), self.field().clone(), mode)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    /// `Σ_{v ∈ E^0} v`.
    pub fn one(&self) -> AlgebraElement {
        let one = self.field().one();
        let terms = self.graph().vertex_ids().map(|v| (Monomial::vertex(v), one.clone())).collect();
        AlgebraElement { alg: self.clone(), terms }
    }

    pub fn scalar(&self, s: Scalar) -> AlgebraElement {
        self.one().scale(&s)
    }

    pub fn from_i64(&self, n: i64) -> AlgebraElement {
        self.scalar(self.field().from_i64(n))
    }

    pub fn vertex(&self, v: VertexId) -> AlgebraElement {
        self.monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> AlgebraElement {
        self.monomial(Monomial::edge(self.graph(), e))
    }

    pub fn ghost(&self, e: EdgeId) -> AlgebraElement {
        self.monomial(Monomial::ghost(self.graph(), e))
    }

    pub fn generator(&self, x: Generator) -> AlgebraElement {
        match x {
            Generator::Vertex(v) => self.vertex(v),
            Generator::Edge(e) => self.edge(e),
            Generator::Ghost(e) => self.ghost(e),
        }
    }

    /// Vertex or edge by name; a trailing `*` selects the ghost edge.
    pub fn named(&self, name: &str) -> Result<AlgebraElement, Error> {
        let g = self.graph();
        if let Some(e) = name.strip_suffix('*') {
            return Ok(self.ghost(g.edge(e)?));
        }
        if let Ok(v) = g.vertex(name) {
            return Ok(self.vertex(v));
        }
        Ok(self.edge(g.edge(name)?))
    }

    /// The path `p` as an element (a vertex if trivial).
    pub fn path(&self, p: &Path) -> AlgebraElement {
        self.monomial(Monomial { lambda: p.clone(), nu: Path::trivial(p.range) })
    }

    /// A single monomial with coefficient 1, reduced to normal form.
    pub fn monomial(&self, m: Monomial) -> AlgebraElement {
        self.combination([(m, self.field().one())])
    }

    /// Normal form of a raw linear combination.
    pub fn combination<I: IntoIterator<Item = (Monomial, Scalar)>>(&self, terms: I) -> AlgebraElement {
        let mut x = self.zero();
        for (m, c) in terms {
            x.accumulate(m, &c);
        }
        x
    }

    /// Evaluate an integer combination of generator words in this algebra.
    pub fn evaluate_relation(&self, r: &Relation) -> AlgebraElement {
        self.evaluate_with(r, &|x| self.generator(x))
    }

    /// Evaluate `r` after substituting each generator by `image(gen)`.
    pub fn evaluate_with(&self, r: &Relation, image: &dyn Fn(Generator) -> AlgebraElement) -> AlgebraElement {
        let mut total = self.zero();
        for (k, word) in &r.terms {
            let mut p = self.one();
            for &x in word {
                p = &p * &image(x);
            }
            total = &total + &p.scale(&self.field().from_i64(*k));
        }
        total
    }

    /// Every normal-form monomial with `|λ|, |ν| <= max_len`, in monomial
    /// order.
    pub fn basis_monomials(&self, max_len: usize) -> Vec<Monomial> {
        let g = self.graph();
        let mut out = Vec::new();
        for v in g.vertex_ids() {
            let ending = g.paths_ending_at(v, max_len);
            for l in &ending {
                for n in &ending {
                    let m = Monomial { lambda: l.clone(), nu: n.clone() };
                    if self.mode() == Mode::Cohn || !m.is_forbidden(g) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// An element of a path algebra, in normal form with no zero coefficients.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Algebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg && self.terms == o.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.alg.field().zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == self.alg.one()
    }

    /// `c · m` added in place, with `m` first reduced to the basis.
    fn accumulate(&mut self, m: Monomial, c: &Scalar) {
        let field = self.alg.field().clone();
        if field.is_zero(c) {
            return;
        }
        if self.alg.mode() == Mode::Leavitt && m.is_forbidden(self.alg.graph()) {
            let neg = field.neg(c);
            for (b, minus) in m.leavitt_expand(self.alg.graph()) {
                self.add_raw(b, if minus { &neg } else { c }, &field);
            }
        } else {
            self.add_raw(m, c, &field);
        }
    }

    fn add_raw(&mut self, m: Monomial, c: &Scalar, field: &Field) {
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = field.add(old, c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), Error> {
        if self.alg == o.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, Error> {
        self.check(o)?;
        let field = self.alg.field().clone();
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_raw(m.clone(), c, &field);
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, Error> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, Error> {
        self.check(o)?;
        let field = self.alg.field();
        let mut r = self.alg.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some(m) = m1.mul(m2) {
                    r.accumulate(m, &field.mul(c1, c2));
                }
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        let field = self.alg.field();
        AlgebraElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let field = self.alg.field();
        if field.is_zero(k) {
            return self.alg.zero();
        }
        AlgebraElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.mul(c, k))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The involution: `(c λν*)* = c νλ*`.
    pub fn star(&self) -> Self {
        let mut r = self.alg.zero();
        for (m, c) in &self.terms {
            r.accumulate(m.star(), c);
        }
        r
    }

    /// Split by degree `|λ| - |ν|`.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, AlgebraElement> {
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| self.alg.zero()).terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// `Some(c)` if this element is `c · 1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.alg.field().zero());
        }
        let v0 = self.alg.graph().vertex_ids().next()?;
        let c = self.terms.get(&Monomial::vertex(v0))?.clone();
        (*self == self.alg.scalar(c.clone())).then_some(c)
    }

    /// Re-reduce into the Leavitt algebra on the same graph and field,
    /// killing `v - Σ e e*` at every regular `v`.
    pub fn cohn_to_leavitt(&self) -> AlgebraElement {
        let target = self.alg.with_mode(Mode::Leavitt);
        target.combination(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Largest number of edge letters in a monomial.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Monomial::length).max().unwrap_or(0)
    }

    /// Whether any stored monomial lies outside the Leavitt basis.
    pub fn has_forbidden_monomial(&self) -> bool {
        self.alg.mode() == Mode::Leavitt && self.terms.keys().any(|m| m.is_forbidden(self.alg.graph()))
    }
}

/// `xy = yx = 1`.
pub fn verify_inverse(x: &AlgebraElement, y: &AlgebraElement) -> Result<bool, Error> {
    Ok(x.try_mul(y)?.is_identity() && y.try_mul(x)?.is_identity())
}

/// A letter of a group word: generator index and whether it is inverted.
pub type Letter = (usize, bool);

/// Normal form of the product of a word in `gens`; each generator carries
/// an optional inverse, required whenever the word uses it inverted.
pub fn evaluate_word(alg: &Algebra, word: &[Letter], gens: &[(AlgebraElement, Option<AlgebraElement>)]) -> Result<AlgebraElement, Error> {
    let mut acc = alg.one();
    for &(i, inv) in word {
        let (x, xi) = gens.get(i).ok_or_else(|| Error::MissingInverse(alloc::format!("generator {i}")))?;
        let factor = if inv {
            xi.as_ref().ok_or_else(|| Error::MissingInverse(x.to_string()))?
        } else {
            x
        };
        acc = acc.try_mul(factor)?;
    }
    Ok(acc)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: &AlgebraElement) -> AlgebraElement {
                self.$try(o).expect("operands from different algebras")
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: AlgebraElement) -> AlgebraElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: &AlgebraElement) -> AlgebraElement {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(&self)
    }
}

/// Whether a rendered scalar must be parenthesised in front of a monomial.
fn needs_parens(s: &str) -> bool {
    s.contains([' ', '/', '^', '('])
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.alg.field();
        let g = self.alg.graph();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !field.is_one(&mag) {
                let s = field.render(&mag);
                if needs_parens(&s) {
                    write!(f, "({s}) ")?;
                } else {
                    write!(f, "{s} ")?;
                }
            }
            f.write_str(&m.render(g))?;
        }
        Ok(())
    }
}
