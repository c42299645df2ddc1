//! Breaking vertices, admissible pairs `(H, S)`, quotient graphs
//! `E \ (H, S)`, the quotient epimorphism `φ`, and the primitive-ideal
//! witness classifier.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{relations, Algebra, AlgebraElement, Generator, Mode, Monomial};
use crate::error::Error;
use crate::graph::{Cycle, EdgeId, Graph, GraphBuilder, VertexId, VertexSet};

/// Suffix marking the primed copies `v'`, `e'` in a quotient graph.
pub const PRIME_SUFFIX: &str = "_q";

fn check_hs(g: &Graph, h: &VertexSet) -> Result<(), Error> {
    if !g.is_hereditary(h) {
        return Err(Error::InvalidIdeal(format!("{{{}}} is not hereditary", g.names_of(h).join(","))));
    }
    if !g.is_saturated(h) {
        return Err(Error::InvalidIdeal(format!("{{{}}} is not saturated", g.names_of(h).join(","))));
    }
    Ok(())
}

/// `B_H`: infinite emitters outside `H` emitting at least one and finitely
/// many edges into `E^0 \ H`. A bundle into `E^0 \ H` makes that count
/// infinite.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet, Error> {
    check_hs(g, h)?;
    Ok(g.vertex_ids()
        .filter(|&w| {
            !h.contains(&w)
                && g.is_infinite_emitter(w)
                && g.bundles_from(w).all(|b| h.contains(&b.range))
                && g.out_edges(w).iter().any(|&e| !h.contains(&g.range(e)))
        })
        .collect())
}

/// `w^H = w - Σ e e*` over named edges from `w` into `E^0 \ H`.
pub fn wh_element(alg: &Algebra, w: VertexId, h: &VertexSet) -> Result<AlgebraElement, Error> {
    let g = alg.graph();
    if !breaking_vertices(g, h)?.contains(&w) {
        return Err(Error::InvalidIdeal(format!("{} is not a breaking vertex of H", g.vertex_name(w))));
    }
    let mut x = alg.vertex(w);
    for &e in g.out_edges(w) {
        if !h.contains(&g.range(e)) {
            x = &x - &(alg.edge(e) * alg.ghost(e));
        }
    }
    Ok(x)
}

/// An admissible pair: `H` hereditary and saturated, `S ⊆ B_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub h: VertexSet,
    pub s: VertexSet,
}

impl IdealSpec {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<Self, Error> {
        let bh = breaking_vertices(g, &h)?;
        if let Some(&bad) = s.iter().find(|v| !bh.contains(v)) {
            return Err(Error::InvalidIdeal(format!("{} is not in B_H", g.vertex_name(bad))));
        }
        Ok(IdealSpec { h, s })
    }

    pub fn named<S: AsRef<str>>(g: &Graph, h: &[S], s: &[S]) -> Result<Self, Error> {
        IdealSpec::new(g, g.vertices_named(h)?, g.vertices_named(s)?)
    }

    pub fn breaking(&self, g: &Graph) -> VertexSet {
        breaking_vertices(g, &self.h).expect("validated at construction")
    }

    /// `B_H \ S`, the vertices that acquire a primed copy.
    pub fn primed(&self, g: &Graph) -> VertexSet {
        self.breaking(g).difference(&self.s).copied().collect()
    }
}

/// `E \ (H, S)` together with the correspondence to `E`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub graph: Graph,
    /// Image of each vertex of `E` outside `H`.
    pub vertex: BTreeMap<VertexId, VertexId>,
    /// `v'` for `v ∈ B_H \ S`.
    pub primed_vertex: BTreeMap<VertexId, VertexId>,
    /// Image of each edge with range outside `H`.
    pub edge: BTreeMap<EdgeId, EdgeId>,
    /// `e'` for edges with range in `B_H \ S`.
    pub primed_edge: BTreeMap<EdgeId, EdgeId>,
}

fn fresh(g: &Graph, taken: &[String], base: &str) -> String {
    let mut name = format!("{base}{PRIME_SUFFIX}");
    while g.vertex(&name).is_ok() || g.edge(&name).is_ok() || taken.iter().any(|t| *t == name) {
        name.push_str(PRIME_SUFFIX);
    }
    name
}

pub fn quotient_graph(g: &Graph, spec: &IdealSpec) -> Result<QuotientGraph, Error> {
    let primed = spec.primed(g);
    for b in g.bundles() {
        if !spec.h.contains(&b.source) && primed.contains(&b.range) {
            return Err(Error::Unsupported(format!(
                "bundle {} -> {} targets a vertex that gets a primed copy; the quotient would need infinitely many primed edges",
                g.vertex_name(b.source),
                g.vertex_name(b.range)
            )));
        }
    }
    let mut taken: Vec<String> = Vec::new();
    let mut gb = GraphBuilder::new(&format!("{}_quot", g.name()));
    let mut vnames: BTreeMap<VertexId, String> = BTreeMap::new();
    let mut pvnames: BTreeMap<VertexId, String> = BTreeMap::new();
    for v in g.vertex_ids().filter(|v| !spec.h.contains(v)) {
        gb.add_vertex(g.vertex_name(v));
        vnames.insert(v, g.vertex_name(v).to_string());
    }
    for &v in &primed {
        let n = fresh(g, &taken, g.vertex_name(v));
        taken.push(n.clone());
        gb.add_vertex(&n);
        pvnames.insert(v, n);
    }
    let mut enames: BTreeMap<EdgeId, String> = BTreeMap::new();
    let mut penames: BTreeMap<EdgeId, String> = BTreeMap::new();
    for e in g.edge_ids().filter(|&e| !spec.h.contains(&g.range(e))) {
        gb.add_edge(g.edge_name(e), &vnames[&g.source(e)], &vnames[&g.range(e)]);
        enames.insert(e, g.edge_name(e).to_string());
    }
    for e in g.edge_ids().filter(|&e| primed.contains(&g.range(e))) {
        let n = fresh(g, &taken, g.edge_name(e));
        taken.push(n.clone());
        gb.add_edge(&n, &vnames[&g.source(e)], &pvnames[&g.range(e)]);
        penames.insert(e, n);
    }
    for b in g.bundles() {
        if !spec.h.contains(&b.source) && !spec.h.contains(&b.range) {
            gb.add_bundle(&vnames[&b.source], &vnames[&b.range]);
        }
    }
    // Keep the source enumeration, primed copies after the originals.
    for (&v, vn) in &vnames {
        let kept: Vec<EdgeId> = g.out_edges(v).iter().copied().filter(|e| enames.contains_key(e)).collect();
        let mut order: Vec<String> = kept.iter().map(|e| enames[e].clone()).collect();
        order.extend(g.out_edges(v).iter().filter_map(|e| penames.get(e).cloned()));
        if g.has_custom_order(v) {
            gb.add_order(vn, order);
        }
    }
    let graph = gb.build()?;
    let lookup_v = |m: &BTreeMap<VertexId, String>| m.iter().map(|(&k, n)| (k, graph.vertex(n).unwrap())).collect();
    let lookup_e = |m: &BTreeMap<EdgeId, String>| m.iter().map(|(&k, n)| (k, graph.edge(n).unwrap())).collect();
    Ok(QuotientGraph {
        vertex: lookup_v(&vnames),
        primed_vertex: lookup_v(&pvnames),
        edge: lookup_e(&enames),
        primed_edge: lookup_e(&penames),
        graph,
    })
}

/// The epimorphism `φ: L_K(E) -> L_K(E \ (H, S))` with kernel `I(H, S)`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub source: Algebra,
    pub target: Algebra,
    pub spec: IdealSpec,
    pub quotient: QuotientGraph,
    vertex_image: Vec<AlgebraElement>,
    edge_image: Vec<AlgebraElement>,
    ghost_image: Vec<AlgebraElement>,
}

impl QuotientMap {
    pub fn new(source: &Algebra, spec: &IdealSpec) -> Result<Self, Error> {
        if source.mode() != Mode::Leavitt {
            return Err(Error::Unsupported("the quotient map is defined on Leavitt path algebras".into()));
        }
        let g = source.graph();
        let q = quotient_graph(g, spec)?;
        let target = Algebra::new(q.graph.clone(), source.field().clone(), Mode::Leavitt);
        let vertex_image = g
            .vertex_ids()
            .map(|v| match (q.vertex.get(&v), q.primed_vertex.get(&v)) {
                (Some(&a), Some(&b)) => target.vertex(a) + target.vertex(b),
                (Some(&a), None) => target.vertex(a),
                _ => target.zero(),
            })
            .collect();
        let edge_image: Vec<AlgebraElement> = g
            .edge_ids()
            .map(|e| match (q.edge.get(&e), q.primed_edge.get(&e)) {
                (Some(&a), Some(&b)) => target.edge(a) + target.edge(b),
                (Some(&a), None) => target.edge(a),
                _ => target.zero(),
            })
            .collect();
        let ghost_image = edge_image.iter().map(AlgebraElement::star).collect();
        Ok(QuotientMap { source: source.clone(), target, spec: spec.clone(), quotient: q, vertex_image, edge_image, ghost_image })
    }

    pub fn generator_image(&self, x: Generator) -> &AlgebraElement {
        match x {
            Generator::Vertex(v) => &self.vertex_image[v.0],
            Generator::Edge(e) => &self.edge_image[e.0],
            Generator::Ghost(e) => &self.ghost_image[e.0],
        }
    }

    fn monomial_image(&self, m: &Monomial) -> AlgebraElement {
        if m.lambda.is_trivial() && m.nu.is_trivial() {
            return self.vertex_image[m.lambda.source.0].clone();
        }
        let mut acc: Option<AlgebraElement> = None;
        let factors = m
            .lambda
            .edges
            .iter()
            .map(|e| &self.edge_image[e.0])
            .chain(m.nu.edges.iter().rev().map(|e| &self.ghost_image[e.0]));
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => &a * f,
            });
            if acc.as_ref().is_some_and(AlgebraElement::is_zero) {
                break;
            }
        }
        acc.unwrap_or_else(|| self.target.zero())
    }

    /// `φ(x)`, in normal form in the quotient algebra.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        if *x.algebra() != self.source {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.target.zero();
        for (m, c) in x.terms() {
            out = &out + &self.monomial_image(m).scale(c);
        }
        Ok(out)
    }

    /// Names of relations of the source whose image fails to vanish; empty
    /// when `φ` is well defined on generators.
    pub fn relation_failures(&self) -> Vec<String> {
        relations(self.source.graph(), Mode::Leavitt)
            .into_iter()
            .filter(|r| !self.target.evaluate_with(r, &|x| self.generator_image(x).clone()).is_zero())
            .map(|r| r.name)
            .collect()
    }
}

/// Generators of `I(H, S)`: the vertices of `H`, then `v^H` for `v ∈ S`.
pub fn kernel_generators(alg: &Algebra, spec: &IdealSpec) -> Result<Vec<AlgebraElement>, Error> {
    let mut out: Vec<AlgebraElement> = spec.h.iter().map(|&v| alg.vertex(v)).collect();
    for &v in &spec.s {
        out.push(wh_element(alg, v, &spec.h)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessType {
    TypeI(VertexId),
    TypeII,
    TypeIII(Cycle),
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: WitnessType,
    pub breaking: VertexSet,
    /// Conditions that failed, in plain words.
    pub failing_conditions: Vec<String>,
    /// Interpretive notes that always accompany the verdict.
    pub notes: Vec<String>,
}

/// Decide which primitive-ideal family `(H, S)` witnesses.
///
/// Type I: `B_H \ S = {w}` with `M(w) = E^0 \ H`. Type II: `S = B_H` and the
/// quotient is downward directed with Condition (L). Type III: `S = B_H` and
/// an exclusive cycle based at `u` with `M(u) = E^0 \ H`, taken from `cycle`
/// or searched for.
pub fn classify_primitive_witness(g: &Graph, spec: &IdealSpec, cycle: Option<&Cycle>) -> Result<Classification, Error> {
    let bh = spec.breaking(g);
    let rest: VertexSet = g.vertex_ids().filter(|v| !spec.h.contains(v)).collect();
    let names = |s: &VertexSet| format!("{{{}}}", g.names_of(s).join(","));
    let mut failing = Vec::new();
    let notes = alloc::vec![
        "downward directed: any two vertices reach a common vertex".to_string(),
        "countable separation holds vacuously for a finite vertex set".to_string(),
    ];
    let done = |kind, failing_conditions| Ok(Classification { kind, breaking: bh.clone(), failing_conditions, notes: notes.clone() });
    if rest.is_empty() {
        failing.push("H is the whole vertex set".to_string());
        return done(WitnessType::NotApplicable, failing);
    }
    let missing: VertexSet = bh.difference(&spec.s).copied().collect();
    if missing.len() == 1 {
        let w = *missing.iter().next().unwrap();
        let m = g.m_of_vertex(w);
        if m == rest {
            return done(WitnessType::TypeI(w), failing);
        }
        failing.push(format!("M({}) = {} differs from E^0 \\ H = {}", g.vertex_name(w), names(&m), names(&rest)));
        return done(WitnessType::NotApplicable, failing);
    }
    if !missing.is_empty() {
        failing.push(format!("B_H \\ S = {} has more than one vertex", names(&missing)));
        return done(WitnessType::NotApplicable, failing);
    }
    let q = quotient_graph(g, spec)?;
    let dd = q.graph.is_downward_directed();
    let cl = q.graph.condition_l();
    if dd && cl {
        return done(WitnessType::TypeII, failing);
    }
    if !dd {
        failing.push("E \\ (H, B_H) is not downward directed".to_string());
    }
    if !cl {
        failing.push("E \\ (H, B_H) violates Condition (L)".to_string());
    }
    let candidates: Vec<Cycle> = match cycle {
        Some(c) => alloc::vec![c.clone()],
        None => g.simple_cycles(),
    };
    for c in &candidates {
        let on = c.vertices(g);
        if on.iter().any(|v| spec.h.contains(v)) {
            if cycle.is_some() {
                failing.push(format!("cycle {} meets H", c.render(g)));
            }
            continue;
        }
        if !g.is_exclusive_cycle(c) {
            if cycle.is_some() {
                failing.push(format!("cycle {} is not exclusive", c.render(g)));
            }
            continue;
        }
        let m = g.m_of_vertex(c.base(g));
        if m == rest {
            return done(WitnessType::TypeIII(c.clone()), Vec::new());
        }
        if cycle.is_some() {
            failing.push(format!("M({}) = {} differs from E^0 \\ H = {}", g.vertex_name(c.base(g)), names(&m), names(&rest)));
        }
    }
    if cycle.is_none() {
        failing.push("no exclusive cycle c based at u with M(u) = E^0 \\ H".to_string());
    }
    done(WitnessType::NotApplicable, failing)
}
