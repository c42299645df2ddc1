//! Simple modules with explicit path bases.
//!
//! Three families are supported: Chen's module `V_[c^∞]` spanned by the
//! infinite paths tail-equivalent to a cycle power, Chen's `N_w` spanned by
//! the finite paths ending at a sink `w`, and Rangaswamy's `S_v∞` spanned by
//! the finite paths ending at an infinite emitter `v`. Edges prepend, ghost
//! edges strip the first letter and vertices project.
//!
//! Only eventually periodic infinite paths are representable.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Algebra, AlgebraElement, Generator, Monomial, Relation};
use crate::error::Error;
use crate::field::{Field, FieldKind, Scalar, EXTENSION_GENERATOR};
use crate::graph::{Cycle, EdgeId, Graph, Path, VertexId};

/// A basis vector of one of the supported modules.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisVector {
    /// `prefix · (cycle read from phase)^∞`, with the prefix minimal.
    RationalTail { prefix: Path, cycle: Cycle, phase: usize },
    /// A finite path ending at a sink.
    SinkPath(Path),
    /// A finite path ending at an infinite emitter.
    EmitterPath(Path),
}

impl BasisVector {
    pub fn source(&self) -> VertexId {
        match self {
            BasisVector::RationalTail { prefix, .. } => prefix.source,
            BasisVector::SinkPath(p) | BasisVector::EmitterPath(p) => p.source,
        }
    }

    /// Finite part: the prefix of a tail, or the whole path.
    pub fn finite_part(&self) -> &Path {
        match self {
            BasisVector::RationalTail { prefix, .. } => prefix,
            BasisVector::SinkPath(p) | BasisVector::EmitterPath(p) => p,
        }
    }

    /// The first `n` edges. For a finite path this may be shorter than `n`.
    pub fn truncation(&self, n: usize) -> Vec<EdgeId> {
        match self {
            BasisVector::RationalTail { prefix, cycle, phase } => {
                let mut out: Vec<EdgeId> = prefix.edges.iter().copied().take(n).collect();
                let mut k = *phase;
                while out.len() < n {
                    out.push(cycle.edges()[k]);
                    k = (k + 1) % cycle.len();
                }
                out
            }
            BasisVector::SinkPath(p) | BasisVector::EmitterPath(p) => p.edges.iter().copied().take(n).collect(),
        }
    }

    /// Text form: edges joined by `.`, and for a tail `@e` where `e` is the
    /// cycle edge the periodic part starts with. A trivial path prints as its
    /// vertex.
    pub fn render(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = self.finite_part().edges.iter().map(|&e| g.edge_name(e).to_string()).collect();
        match self {
            BasisVector::RationalTail { cycle, phase, .. } => {
                parts.push(alloc::format!("@{}", g.edge_name(cycle.edges()[*phase])));
            }
            BasisVector::SinkPath(p) | BasisVector::EmitterPath(p) => {
                if parts.is_empty() {
                    parts.push(g.vertex_name(p.source).to_string());
                }
            }
        }
        parts.join(".")
    }
}

/// Minimal-prefix form of `prefix · (cycle from phase)^∞`.
pub fn canonicalize_rational(g: &Graph, prefix: Path, cycle: &Cycle, phase: usize) -> Result<BasisVector, Error> {
    if cycle.is_empty() {
        return Err(Error::NotAPath("empty cycle".into()));
    }
    let mut phase = phase % cycle.len();
    if prefix.range != g.source(cycle.edges()[phase]) {
        return Err(Error::NotAPath(alloc::format!(
            "{} does not end where the tail starts",
            prefix.render(g)
        )));
    }
    let mut prefix = prefix;
    let n = cycle.len();
    while let Some(&last) = prefix.edges.last() {
        let entering = cycle.edges()[(phase + n - 1) % n];
        if last != entering {
            break;
        }
        prefix.edges.pop();
        prefix.range = g.source(last);
        phase = (phase + n - 1) % n;
    }
    if prefix.edges.is_empty() {
        prefix.source = prefix.range;
    }
    Ok(BasisVector::RationalTail { prefix, cycle: cycle.clone(), phase })
}

/// Result of [`align_tail_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailAlignment {
    Equal,
    NotEquivalent,
    /// Infinite paths `p` and `f p`, both tail-equivalent to the inputs.
    Aligned { f: EdgeId, p: BasisVector },
}

/// Finds `p` and `f` with `p`, `fp` tail-equivalent to the two inputs.
/// Searches for the pair `(m, n)` with `τ_{>m}(p') = τ_{>n}(q')` of least
/// sum, preferring `n ≥ 1`; `f` is the last edge dropped from the side with
/// a positive count and `p` is the common tail.
pub fn align_tail_equivalent(g: &Graph, p: &BasisVector, q: &BasisVector) -> Result<TailAlignment, Error> {
    let (BasisVector::RationalTail { prefix: pp, cycle: pc, .. }, BasisVector::RationalTail { prefix: qp, cycle: qc, .. }) = (p, q) else {
        return Err(Error::InvalidModule("tail alignment needs two rational tails".into()));
    };
    if p == q {
        return Ok(TailAlignment::Equal);
    }
    if pc != qc {
        // Simple cycles in canonical rotation are equal iff their periodic
        // parts agree.
        return Ok(TailAlignment::NotEquivalent);
    }
    let l = pc.len();
    let drops = |b: &BasisVector, k: usize| -> Vec<(BasisVector, Option<EdgeId>)> {
        let mut out = alloc::vec![(b.clone(), None)];
        let mut cur = b.clone();
        for _ in 0..k {
            let (next, e) = drop_first_edge(g, &cur);
            out.push((next.clone(), Some(e)));
            cur = next;
        }
        out
    };
    let ps = drops(p, pp.len() + l);
    let qs = drops(q, qp.len() + l);
    for total in 1..ps.len() + qs.len() {
        for n in (0..=total.min(qs.len() - 1)).rev() {
            let m = total - n;
            if m >= ps.len() {
                continue;
            }
            if ps[m].0 == qs[n].0 {
                let f = if n >= 1 { qs[n].1 } else { ps[m].1 }.expect("positive count");
                return Ok(TailAlignment::Aligned { f, p: ps[m].0.clone() });
            }
        }
    }
    Ok(TailAlignment::NotEquivalent)
}

/// `τ_{>1}` of a rational tail, with the dropped edge.
fn drop_first_edge(g: &Graph, b: &BasisVector) -> (BasisVector, EdgeId) {
    match b {
        BasisVector::RationalTail { prefix, cycle, phase } => {
            if let Some(&e) = prefix.edges.first() {
                let rest = Path { source: g.range(e), range: prefix.range, edges: prefix.edges[1..].to_vec() };
                (BasisVector::RationalTail { prefix: rest, cycle: cycle.clone(), phase: *phase }, e)
            } else {
                let e = cycle.edges()[*phase];
                (BasisVector::RationalTail { prefix: Path::trivial(g.range(e)), cycle: cycle.clone(), phase: (phase + 1) % cycle.len() }, e)
            }
        }
        _ => unreachable!("only rational tails are infinite"),
    }
}

/// Which simple module, with its defining datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `V_[c^∞]`.
    Chen { cycle: Cycle },
    /// `N_w` for a sink `w`.
    Sink { w: VertexId },
    /// `S_v∞` for an infinite emitter `v`.
    Emitter { v: VertexId },
}

/// A simple module over a Leavitt path algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    alg: Algebra,
    kind: ModuleKind,
}

impl Module {
    pub fn new(alg: &Algebra, kind: ModuleKind) -> Result<Self, Error> {
        let g = alg.graph();
        match &kind {
            ModuleKind::Chen { cycle } => {
                g.cycle(cycle.edges())?;
            }
            ModuleKind::Sink { w } => {
                if !g.is_sink(*w) {
                    return Err(Error::InvalidModule(alloc::format!("{} is not a sink", g.vertex_name(*w))));
                }
            }
            ModuleKind::Emitter { v } => {
                if !g.is_infinite_emitter(*v) {
                    return Err(Error::InvalidModule(alloc::format!("{} is not an infinite emitter", g.vertex_name(*v))));
                }
            }
        }
        Ok(Module { alg: alg.clone(), kind })
    }

    pub fn chen(alg: &Algebra, cycle: Cycle) -> Result<Self, Error> {
        Module::new(alg, ModuleKind::Chen { cycle })
    }

    pub fn sink(alg: &Algebra, w: VertexId) -> Result<Self, Error> {
        Module::new(alg, ModuleKind::Sink { w })
    }

    pub fn emitter(alg: &Algebra, v: VertexId) -> Result<Self, Error> {
        Module::new(alg, ModuleKind::Emitter { v })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn describe(&self) -> String {
        let g = self.alg.graph();
        match &self.kind {
            ModuleKind::Chen { cycle } => alloc::format!("V[({})^inf]", cycle.render(g)),
            ModuleKind::Sink { w } => alloc::format!("N_{}", g.vertex_name(*w)),
            ModuleKind::Emitter { v } => alloc::format!("S_{}inf", g.vertex_name(*v)),
        }
    }

    /// Whether `b` is a basis vector of this module.
    pub fn contains(&self, b: &BasisVector) -> bool {
        let g = self.alg.graph();
        let path_ok = |p: &Path| {
            if p.edges.is_empty() {
                p.source == p.range && p.source.0 < g.vertex_count()
            } else {
                g.path(&p.edges).map_or(false, |q| q == *p)
            }
        };
        match (&self.kind, b) {
            (ModuleKind::Chen { cycle }, BasisVector::RationalTail { prefix, cycle: c, phase }) => {
                c == cycle
                    && *phase < c.len()
                    && path_ok(prefix)
                    && canonicalize_rational(g, prefix.clone(), c, *phase).map_or(false, |x| x == *b)
            }
            (ModuleKind::Sink { w }, BasisVector::SinkPath(p)) | (ModuleKind::Emitter { v: w }, BasisVector::EmitterPath(p)) => {
                p.range == *w && path_ok(p)
            }
            _ => false,
        }
    }

    /// The generating vector: `c^∞`, `w` or `v`.
    pub fn base_vector(&self) -> BasisVector {
        let g = self.alg.graph();
        match &self.kind {
            ModuleKind::Chen { cycle } => BasisVector::RationalTail { prefix: Path::trivial(cycle.base(g)), cycle: cycle.clone(), phase: 0 },
            ModuleKind::Sink { w } => BasisVector::SinkPath(Path::trivial(*w)),
            ModuleKind::Emitter { v } => BasisVector::EmitterPath(Path::trivial(*v)),
        }
    }

    /// Basis vectors whose finite part has at most `max_len` edges, sorted.
    pub fn basis_up_to(&self, max_len: usize) -> Vec<BasisVector> {
        let g = self.alg.graph();
        let mut out = Vec::new();
        match &self.kind {
            ModuleKind::Chen { cycle } => {
                let n = cycle.len();
                for phase in 0..n {
                    let start = g.source(cycle.edges()[phase]);
                    let entering = cycle.edges()[(phase + n - 1) % n];
                    for p in g.paths_ending_at(start, max_len) {
                        if p.edges.last() != Some(&entering) {
                            out.push(BasisVector::RationalTail { prefix: p, cycle: cycle.clone(), phase });
                        }
                    }
                }
            }
            ModuleKind::Sink { w } => out.extend(g.paths_ending_at(*w, max_len).into_iter().map(BasisVector::SinkPath)),
            ModuleKind::Emitter { v } => out.extend(g.paths_ending_at(*v, max_len).into_iter().map(BasisVector::EmitterPath)),
        }
        out.sort();
        out
    }

    /// The first `n` basis vectors in length order (fewer if the basis is
    /// finite and smaller).
    pub fn sample_basis(&self, n: usize) -> Vec<BasisVector> {
        let mut len = 0;
        let mut prev = 0;
        loop {
            let b = self.basis_up_to(len);
            if b.len() >= n || (len > 0 && b.len() == prev && len > self.alg.graph().vertex_count() + 1) {
                return b.into_iter().take(n).collect();
            }
            prev = b.len();
            len += 1;
        }
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector { module: self.clone(), terms: BTreeMap::new() }
    }

    pub fn vector(&self, b: BasisVector) -> Result<ModuleVector, Error> {
        if !self.contains(&b) {
            return Err(Error::InvalidModule(alloc::format!("{} is not a basis vector of {}", b.render(self.alg.graph()), self.describe())));
        }
        let mut terms = BTreeMap::new();
        terms.insert(b, self.alg.field().one());
        Ok(ModuleVector { module: self.clone(), terms })
    }

    /// A combination of basis vectors; zero coefficients are dropped.
    pub fn combination<I: IntoIterator<Item = (BasisVector, Scalar)>>(&self, terms: I) -> Result<ModuleVector, Error> {
        let mut v = self.zero();
        for (b, c) in terms {
            if !self.contains(&b) {
                return Err(Error::InvalidModule(alloc::format!("{} is not a basis vector of {}", b.render(self.alg.graph()), self.describe())));
            }
            v.accumulate(b, &c);
        }
        Ok(v)
    }

    fn prepend(&self, e: EdgeId, b: &BasisVector) -> Option<BasisVector> {
        let g = self.alg.graph();
        if g.range(e) != b.source() {
            return None;
        }
        let glue = |p: &Path| {
            let mut edges = alloc::vec![e];
            edges.extend_from_slice(&p.edges);
            Path { source: g.source(e), range: p.range, edges }
        };
        Some(match b {
            BasisVector::RationalTail { prefix, cycle, phase } => {
                canonicalize_rational(g, glue(prefix), cycle, *phase).expect("prepending keeps the tail composable")
            }
            BasisVector::SinkPath(p) => BasisVector::SinkPath(glue(p)),
            BasisVector::EmitterPath(p) => BasisVector::EmitterPath(glue(p)),
        })
    }

    fn strip(&self, e: EdgeId, b: &BasisVector) -> Option<BasisVector> {
        let g = self.alg.graph();
        let drop_first = |p: &Path| -> Option<Path> {
            (p.edges.first() == Some(&e)).then(|| {
                let edges = p.edges[1..].to_vec();
                Path { source: g.range(e), range: p.range, edges }
            })
        };
        match b {
            BasisVector::RationalTail { prefix, cycle, phase } => {
                if prefix.edges.is_empty() {
                    (cycle.edges()[*phase] == e).then(|| BasisVector::RationalTail {
                        prefix: Path::trivial(g.range(e)),
                        cycle: cycle.clone(),
                        phase: (phase + 1) % cycle.len(),
                    })
                } else {
                    drop_first(prefix).map(|p| BasisVector::RationalTail { prefix: p, cycle: cycle.clone(), phase: *phase })
                }
            }
            BasisVector::SinkPath(p) => drop_first(p).map(BasisVector::SinkPath),
            BasisVector::EmitterPath(p) => drop_first(p).map(BasisVector::EmitterPath),
        }
    }

    /// A single generator acting on a basis vector.
    pub fn act_generator(&self, x: Generator, b: &BasisVector) -> Option<BasisVector> {
        match x {
            Generator::Vertex(v) => (b.source() == v).then(|| b.clone()),
            Generator::Edge(e) => self.prepend(e, b),
            Generator::Ghost(e) => self.strip(e, b),
        }
    }

    /// `λν*` acting on a basis vector: strip `ν`, then prepend `λ`.
    pub fn act_monomial(&self, m: &Monomial, b: &BasisVector) -> Option<BasisVector> {
        if b.source() != m.nu.source {
            return None;
        }
        let mut cur = b.clone();
        for &e in &m.nu.edges {
            cur = self.strip(e, &cur)?;
        }
        for &e in m.lambda.edges.iter().rev() {
            cur = self.prepend(e, &cur)?;
        }
        if m.lambda.edges.is_empty() && cur.source() != m.lambda.source {
            return None;
        }
        Some(cur)
    }

    fn check_element(&self, x: &AlgebraElement) -> Result<(), Error> {
        if x.algebra().graph() != self.alg.graph() || x.algebra().field() != self.alg.field() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn check_vector(&self, m: &ModuleVector) -> Result<(), Error> {
        if m.module != *self {
            return Err(Error::InvalidModule("vector belongs to another module".into()));
        }
        Ok(())
    }

    /// `x · m`.
    pub fn act(&self, x: &AlgebraElement, m: &ModuleVector) -> Result<ModuleVector, Error> {
        self.act_scaled(x, m, None)
    }

    /// `σ(x) · m` for the automorphism described by `twist`.
    pub fn twisted_act(&self, twist: &Twist, x: &AlgebraElement, m: &ModuleVector) -> Result<ModuleVector, Error> {
        twist.check(self)?;
        self.act_scaled(x, m, Some(twist))
    }

    fn act_scaled(&self, x: &AlgebraElement, m: &ModuleVector, twist: Option<&Twist>) -> Result<ModuleVector, Error> {
        self.check_element(x)?;
        self.check_vector(m)?;
        let field = self.alg.field();
        let mut out = self.zero();
        for (mono, c) in x.terms() {
            let c = match twist {
                Some(t) => field.mul(c, &t.monomial_factor(mono)),
                None => c.clone(),
            };
            for (b, d) in &m.terms {
                if let Some(nb) = self.act_monomial(mono, b) {
                    out.accumulate(nb, &field.mul(&c, d));
                }
            }
        }
        Ok(out)
    }

    /// A generator word acting letter by letter from the right, bypassing the
    /// algebra's normal form.
    pub fn act_word(&self, word: &[Generator], b: &BasisVector, twist: Option<&Twist>) -> Option<(BasisVector, Scalar)> {
        let field = self.alg.field();
        let mut cur = b.clone();
        let mut k = field.one();
        for &x in word.iter().rev() {
            cur = self.act_generator(x, &cur)?;
            if let Some(t) = twist {
                k = field.mul(&k, &t.generator_factor(x));
            }
        }
        Some((cur, k))
    }

    /// `ρ · b` for a defining relation, evaluated word by word.
    pub fn act_relation(&self, r: &Relation, b: &BasisVector, twist: Option<&Twist>) -> ModuleVector {
        let field = self.alg.field();
        let mut out = self.zero();
        for (k, word) in &r.terms {
            if let Some((nb, s)) = self.act_word(word, b, twist) {
                out.accumulate(nb, &field.mul(&field.from_i64(*k), &s));
            }
        }
        out
    }

    /// Relations (by name) and basis vectors on which a defining relation of
    /// the Leavitt algebra does not act as zero.
    pub fn relation_failures(&self, samples: &[BasisVector], twist: Option<&Twist>) -> Result<Vec<(String, BasisVector)>, Error> {
        if let Some(t) = twist {
            t.check(self)?;
        }
        let mut out = Vec::new();
        for r in crate::algebra::relations(self.alg.graph(), crate::algebra::Mode::Leavitt) {
            for b in samples {
                if !self.act_relation(&r, b, twist).is_zero() {
                    out.push((r.name.clone(), b.clone()));
                }
            }
        }
        Ok(out)
    }
}

/// The automorphism `e₁ ↦ x̄e₁`, `e₁* ↦ x̄⁻¹e₁*` of `L_{K'}(E)`, where
/// `K' = K[x]/(f)` and `e₁` lies on an exclusive cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    edge: EdgeId,
    cycle: Cycle,
    field: Field,
    xbar: Scalar,
    xbar_inv: Scalar,
}

impl Twist {
    pub fn new(alg: &Algebra, cycle: &Cycle, edge: EdgeId) -> Result<Self, Error> {
        let g = alg.graph();
        let field = alg.field();
        if !matches!(field.kind(), FieldKind::Extension { .. }) {
            return Err(Error::InvalidField(alloc::format!("twisting needs an extension field, got {field}")));
        }
        if !cycle.contains_edge(edge) {
            return Err(Error::InvalidModule(alloc::format!("{} is not on the cycle {}", g.edge_name(edge), cycle.render(g))));
        }
        if !g.is_exclusive_cycle(cycle) {
            return Err(Error::InvalidModule(alloc::format!("cycle {} is not exclusive", cycle.render(g))));
        }
        let xbar = field.variable(EXTENSION_GENERATOR)?;
        let xbar_inv = field.inv(&xbar)?;
        Ok(Twist { edge, cycle: cycle.clone(), field: field.clone(), xbar, xbar_inv })
    }

    pub fn edge(&self) -> EdgeId {
        self.edge
    }

    fn check(&self, m: &Module) -> Result<(), Error> {
        match m.kind() {
            ModuleKind::Chen { cycle } if *cycle == self.cycle => Ok(()),
            _ => Err(Error::InvalidModule("twist is defined for the Chen module of its cycle".into())),
        }
    }

    /// Scalar by which `σ` multiplies a generator.
    pub fn generator_factor(&self, x: Generator) -> Scalar {
        match x {
            Generator::Edge(e) if e == self.edge => self.xbar.clone(),
            Generator::Ghost(e) if e == self.edge => self.xbar_inv.clone(),
            _ => self.field.one(),
        }
    }

    /// `x̄^(#e₁ in λ − #e₁ in ν)`.
    pub fn monomial_factor(&self, m: &Monomial) -> Scalar {
        let count = |p: &Path| p.edges.iter().filter(|&&e| e == self.edge).count() as i64;
        self.field.pow(&self.xbar, count(&m.lambda) - count(&m.nu)).expect("x̄ is invertible")
    }

    /// `σ` applied to an element.
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        x.algebra().combination(x.terms().map(|(m, c)| (m.clone(), self.field.mul(c, &self.monomial_factor(m)))))
    }
}

/// A finite combination of basis vectors of one module.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector {
    module: Module,
    terms: BTreeMap<BasisVector, Scalar>,
}

impl ModuleVector {
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, &Scalar)> {
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

    pub fn coefficient(&self, b: &BasisVector) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(|| self.module.alg.field().zero())
    }

    fn accumulate(&mut self, b: BasisVector, c: &Scalar) {
        let field = self.module.alg.field().clone();
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(old) => {
                let s = field.add(old, c);
                if field.is_zero(&s) {
                    self.terms.remove(&b);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, Error> {
        if self.module != o.module {
            return Err(Error::InvalidModule("vectors belong to different modules".into()));
        }
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.accumulate(b.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let field = self.module.alg.field().clone();
        let mut out = self.module.zero();
        for (b, c) in &self.terms {
            out.accumulate(b.clone(), &field.mul(c, k));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let field = self.module.alg.field().clone();
        self.scale(&field.from_i64(-1))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, Error> {
        self.try_add(&o.neg())
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.module.alg.field();
        let g = self.module.alg.graph();
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !field.is_one(&mag) {
                let s = field.render(&mag);
                if s.contains([' ', '/', '^', '(']) {
                    write!(f, "({s})*")?;
                } else {
                    write!(f, "{s}*")?;
                }
            }
            f.write_str(&b.render(g))?;
        }
        Ok(())
    }
}

/// Outcome of [`annihilation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub checked: usize,
    /// `(generator index, basis vector)` pairs with a nonzero result.
    pub failures: Vec<(usize, BasisVector)>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that each element of `gens` kills the first `samples` basis
/// vectors of `module`.
pub fn annihilation_check(gens: &[AlgebraElement], module: &Module, samples: usize) -> Result<AnnihilationReport, Error> {
    let basis = module.sample_basis(samples);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, x) in gens.iter().enumerate() {
        for b in &basis {
            checked += 1;
            let m = module.vector(b.clone())?;
            if !module.act(x, &m)?.is_zero() {
                failures.push((i, b.clone()));
            }
        }
    }
    Ok(AnnihilationReport { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Mode;
    use crate::corpus;
    use crate::field::{BaseField, Field};
    use crate::field::UPoly;

    fn toeplitz_q() -> Algebra {
        Algebra::new(corpus::toeplitz(), Field::rationals(), Mode::Leavitt)
    }

    fn e_loop(g: &Graph) -> Cycle {
        g.cycle(&[g.edge("e").unwrap()]).unwrap()
    }

    #[test]
    fn prefix_absorbed_into_tail() {
        let g = corpus::toeplitz();
        let c = e_loop(&g);
        let e = g.path_named(&["e"]).unwrap();
        let a = canonicalize_rational(&g, e, &c, 0).unwrap();
        let b = canonicalize_rational(&g, Path::trivial(g.vertex("u").unwrap()), &c, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render(&g), "@e");
        let f = g.path_named(&["f"]).unwrap();
        assert!(canonicalize_rational(&g, f, &c, 0).is_err());
    }

    #[test]
    fn strip_and_prepend_on_chen_module() {
        let alg = toeplitz_q();
        let g = alg.graph();
        let m = Module::chen(&alg, e_loop(g)).unwrap();
        let einf = m.vector(m.base_vector()).unwrap();
        assert_eq!(m.act(&alg.named("e*").unwrap(), &einf).unwrap(), einf);
        // r(f) = v but e^∞ starts at u.
        assert!(m.act(&alg.named("f").unwrap(), &einf).unwrap().is_zero());
        assert!(m.act(&alg.named("f*").unwrap(), &einf).unwrap().is_zero());

        let alg = Algebra::new(corpus::linked_loops(), Field::rationals(), Mode::Leavitt);
        let g = alg.graph();
        let m = Module::chen(&alg, g.cycle(&[g.edge("e").unwrap()]).unwrap()).unwrap();
        let einf = m.vector(m.base_vector()).unwrap();
        let geinf = m.act(&alg.named("g").unwrap(), &einf).unwrap();
        assert_eq!(geinf.to_string(), "g.@e");
        assert_eq!(m.act(&alg.named("g*").unwrap(), &geinf).unwrap(), einf);
        assert!(m.act(&alg.named("g*").unwrap(), &einf).unwrap().is_zero());
        let eg = m.act(&(alg.named("e'").unwrap() * alg.named("g").unwrap()), &einf).unwrap();
        assert_eq!(eg.to_string(), "e'.g.@e");
    }

    #[test]
    fn toeplitz_f_into_tail() {
        // In the Toeplitz graph f enters the sink, so the only tail vectors
        // start with e or are e^∞ itself.
        let alg = toeplitz_q();
        let m = Module::chen(&alg, e_loop(alg.graph())).unwrap();
        assert!(m.basis_up_to(3).iter().all(|b| b.finite_part().is_empty()));
    }

    #[test]
    fn sink_and_emitter_kill_ghosts_at_bare_vertex() {
        let alg = toeplitz_q();
        let g = alg.graph();
        let n = Module::sink(&alg, g.vertex("v").unwrap()).unwrap();
        let v = n.vector(n.base_vector()).unwrap();
        assert!(n.act(&alg.named("f*").unwrap(), &v).unwrap().is_zero());
        let fv = n.act(&alg.named("f").unwrap(), &v).unwrap();
        assert_eq!(n.act(&alg.named("f*").unwrap(), &fv).unwrap(), v);
        assert!(Module::sink(&alg, g.vertex("u").unwrap()).is_err());

        let alg = Algebra::new(corpus::emitters(), Field::rationals(), Mode::Leavitt);
        let g = alg.graph();
        let s = Module::emitter(&alg, g.vertex("v").unwrap()).unwrap();
        assert_eq!(s.basis_up_to(5).len(), 1);
        let base = s.vector(s.base_vector()).unwrap();
        assert!(s.act(&alg.named("g*").unwrap(), &base).unwrap().is_zero());
    }

    #[test]
    fn relations_annihilate() {
        let alg = toeplitz_q();
        let g = alg.graph();
        for m in [Module::chen(&alg, e_loop(g)).unwrap(), Module::sink(&alg, g.vertex("v").unwrap()).unwrap()] {
            let samples = m.sample_basis(20);
            assert!(!samples.is_empty());
            assert!(m.relation_failures(&samples, None).unwrap().is_empty());
        }
    }

    #[test]
    fn twisted_action() {
        let b = BaseField::Rationals;
        let field = Field::extension(b.clone(), "x", UPoly::from_i64s(&[1, 0, 1], &b)).unwrap();
        let alg = Algebra::new(corpus::toeplitz(), field.clone(), Mode::Leavitt);
        let g = alg.graph();
        let c = e_loop(g);
        let m = Module::chen(&alg, c.clone()).unwrap();
        let t = Twist::new(&alg, &c, g.edge("e").unwrap()).unwrap();
        let einf = m.vector(m.base_vector()).unwrap();
        let e = alg.named("e").unwrap();
        let xbar = field.variable("xbar").unwrap();
        assert_eq!(m.twisted_act(&t, &e, &einf).unwrap(), einf.scale(&xbar));
        let ee = alg.named("e*").unwrap() * e;
        assert_eq!(m.twisted_act(&t, &ee, &einf).unwrap(), einf);
        assert!(m.relation_failures(&m.sample_basis(10), Some(&t)).unwrap().is_empty());
        assert!(Twist::new(&toeplitz_q(), &c, g.edge("e").unwrap()).is_err());
    }

    #[test]
    fn alignment() {
        let g = corpus::toeplitz();
        let c = e_loop(&g);
        let u = g.vertex("u").unwrap();
        let einf = canonicalize_rational(&g, Path::trivial(u), &c, 0).unwrap();
        assert_eq!(align_tail_equivalent(&g, &einf, &einf).unwrap(), TailAlignment::Equal);

        let g = corpus::linked_loops();
        let ce = g.cycle(&[g.edge("e").unwrap()]).unwrap();
        let ce2 = g.cycle(&[g.edge("e'").unwrap()]).unwrap();
        let einf = canonicalize_rational(&g, Path::trivial(g.vertex("u").unwrap()), &ce, 0).unwrap();
        let geinf = canonicalize_rational(&g, g.path_named(&["g"]).unwrap(), &ce, 0).unwrap();
        assert_eq!(
            align_tail_equivalent(&g, &einf, &geinf).unwrap(),
            TailAlignment::Aligned { f: g.edge("g").unwrap(), p: einf.clone() }
        );
        let e2inf = canonicalize_rational(&g, Path::trivial(g.vertex("u'").unwrap()), &ce2, 0).unwrap();
        assert_eq!(align_tail_equivalent(&g, &einf, &e2inf).unwrap(), TailAlignment::NotEquivalent);
    }

    #[test]
    fn annihilation() {
        let alg = Algebra::new(corpus::forked_loop(), Field::rationals(), Mode::Leavitt);
        let g = alg.graph();
        let m = Module::chen(&alg, g.cycle(&[g.edge("e").unwrap()]).unwrap()).unwrap();
        let h = [alg.named("v").unwrap(), alg.named("w").unwrap()];
        assert!(annihilation_check(&h, &m, 10).unwrap().passed());
        let r = annihilation_check(&[alg.one()], &m, 10).unwrap();
        assert_eq!(r.failures.len(), r.checked);
    }
}
