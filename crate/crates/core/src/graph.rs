//! Finite directed graphs with named edges, infinite-emitter bundles and a
//! per-vertex edge enumeration, plus the combinatorial predicates the algebra
//! constructions consume.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Sink,
    InfiniteEmitter,
    Regular,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Sink => "sink",
            VertexKind::InfiniteEmitter => "infinite emitter",
            VertexKind::Regular => "regular",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

/// Countably many anonymous parallel edges `source -> range`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    bundles: Vec<Bundle>,
    /// Named out-edges of each vertex in enumeration order.
    order: Vec<Vec<EdgeId>>,
    /// Whether `order[v]` was set explicitly and differs from declaration order.
    custom_order: Vec<bool>,
    rank: Vec<usize>,
    reach: Vec<Vec<bool>>,
    vertex_index: BTreeMap<String, VertexId>,
    edge_index: BTreeMap<String, EdgeId>,
}

/// Accumulates declarations and validates them in [`GraphBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    name: String,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    bundles: Vec<(String, String)>,
    orders: Vec<(String, Vec<String>)>,
}

/// Identifier syntax shared by graph files and expressions.
pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl GraphBuilder {
    pub fn new(name: &str) -> Self {
        GraphBuilder { name: name.to_string(), ..Default::default() }
    }

    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn vertices(mut self, ids: &[&str]) -> Self {
        self.vertices.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn edge(mut self, id: &str, src: &str, dst: &str) -> Self {
        self.edges.push((id.to_string(), src.to_string(), dst.to_string()));
        self
    }

    pub fn bundle(mut self, src: &str, dst: &str) -> Self {
        self.bundles.push((src.to_string(), dst.to_string()));
        self
    }

    pub fn order(mut self, v: &str, edges: &[&str]) -> Self {
        self.orders.push((v.to_string(), edges.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn add_vertex(&mut self, id: &str) {
        self.vertices.push(id.to_string());
    }

    pub fn add_edge(&mut self, id: &str, src: &str, dst: &str) {
        self.edges.push((id.to_string(), src.to_string(), dst.to_string()));
    }

    pub fn add_bundle(&mut self, src: &str, dst: &str) {
        self.bundles.push((src.to_string(), dst.to_string()));
    }

    pub fn add_order(&mut self, v: &str, edges: Vec<String>) {
        self.orders.push((v.to_string(), edges));
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn build(self) -> Result<Graph, Error> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        if self.vertices.is_empty() {
            return bad("the vertex set is empty".into());
        }
        let mut vertex_index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !is_identifier(v) {
                return bad(alloc::format!("invalid vertex name {v:?}"));
            }
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return bad(alloc::format!("duplicate vertex {v}"));
            }
        }
        let lookup = |v: &str| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(alloc::format!("undeclared vertex {v}")))
        };
        let mut edges = Vec::new();
        let mut edge_index = BTreeMap::new();
        for (i, (e, s, r)) in self.edges.iter().enumerate() {
            if !is_identifier(e) {
                return bad(alloc::format!("invalid edge name {e:?}"));
            }
            if vertex_index.contains_key(e) {
                return bad(alloc::format!("edge {e} reuses a vertex name"));
            }
            if edge_index.insert(e.clone(), EdgeId(i)).is_some() {
                return bad(alloc::format!("duplicate edge {e}"));
            }
            edges.push(Edge { name: e.clone(), source: lookup(s)?, range: lookup(r)? });
        }
        let bundles = self
            .bundles
            .iter()
            .map(|(s, r)| Ok(Bundle { source: lookup(s)?, range: lookup(r)? }))
            .collect::<Result<Vec<_>, Error>>()?;
        let n = self.vertices.len();
        let mut order: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            order[e.source.0].push(EdgeId(i));
        }
        let mut custom_order = vec![false; n];
        for (v, names) in &self.orders {
            let vid = lookup(v)?;
            if custom_order[vid.0] {
                return bad(alloc::format!("order for {v} given twice"));
            }
            let mut ids = Vec::new();
            for name in names {
                let id = *edge_index
                    .get(name)
                    .ok_or_else(|| Error::InvalidGraph(alloc::format!("order for {v}: unknown edge {name}")))?;
                ids.push(id);
            }
            let mut sorted = ids.clone();
            sorted.sort();
            sorted.dedup();
            if sorted != order[vid.0] || ids.len() != sorted.len() {
                return bad(alloc::format!("order for {v} is not a permutation of its out-edges"));
            }
            custom_order[vid.0] = ids != order[vid.0];
            order[vid.0] = ids;
        }
        let mut rank = vec![0; edges.len()];
        for list in &order {
            for (k, e) in list.iter().enumerate() {
                rank[e.0] = k;
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &edges {
            adj[e.source.0].push(e.range.0);
        }
        for b in &bundles {
            adj[b.source.0].push(b.range.0);
        }
        let reach = (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(x) = stack.pop() {
                    for &y in &adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect();
        Ok(Graph {
            name: self.name,
            vertices: self.vertices,
            edges,
            bundles,
            order,
            custom_order,
            rank,
            reach,
            vertex_index,
            edge_index,
        })
    }
}

impl Graph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, Error> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId, Error> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertices_named<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, Error> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    /// Named out-edges of `v` in enumeration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.order[v.0]
    }

    pub fn has_custom_order(&self, v: VertexId) -> bool {
        self.custom_order[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(move |&e| self.range(e) == v)
    }

    pub fn bundles_from(&self, v: VertexId) -> impl Iterator<Item = &Bundle> + '_ {
        self.bundles.iter().filter(move |b| b.source == v)
    }

    /// Position of `e` in the enumeration of `s(e)`'s out-edges.
    pub fn rank(&self, e: EdgeId) -> usize {
        self.rank[e.0]
    }

    pub fn classify(&self, v: VertexId) -> VertexKind {
        if self.bundles_from(v).next().is_some() {
            VertexKind::InfiniteEmitter
        } else if self.order[v.0].is_empty() {
            VertexKind::Sink
        } else {
            VertexKind::Regular
        }
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.classify(v) == VertexKind::Regular
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.classify(v) == VertexKind::Sink
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.classify(v) == VertexKind::InfiniteEmitter
    }

    /// The last edge in the enumeration at a regular vertex; the Leavitt
    /// normal form rewrites `e e*` for exactly these edges.
    pub fn max_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.order[v.0].last().copied()
        } else {
            None
        }
    }

    pub fn is_max_edge(&self, e: EdgeId) -> bool {
        self.max_edge(self.source(e)) == Some(e)
    }

    /// `u >= v`: there is a path (possibly trivial, possibly through bundles)
    /// from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.reach[u.0][v.0]
    }

    /// `M(v)`, the vertices that reach `v`.
    pub fn m_of_vertex(&self, v: VertexId) -> VertexSet {
        self.vertex_ids().filter(|&w| self.reaches(w, v)).collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertex_ids().collect()
    }

    /// Every simple cycle through named edges, once per rotation class, each
    /// starting at its smallest edge id. Cycles through bundle edges are not
    /// listed; they always have an exit.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for e0 in self.edge_ids() {
            let start = self.source(e0);
            let mut path = vec![e0];
            let mut used = vec![false; self.vertex_count()];
            used[start.0] = true;
            self.extend_cycles(start, &mut path, &mut used, &mut out);
        }
        out
    }

    fn extend_cycles(&self, start: VertexId, path: &mut Vec<EdgeId>, used: &mut [bool], out: &mut Vec<Cycle>) {
        let last = *path.last().unwrap();
        let at = self.range(last);
        if at == start {
            out.push(Cycle { edges: path.clone() });
            return;
        }
        if used[at.0] {
            return;
        }
        used[at.0] = true;
        for &e in self.out_edges(at) {
            if e > path[0] {
                path.push(e);
                self.extend_cycles(start, path, used, out);
                path.pop();
            }
        }
        used[at.0] = false;
    }

    /// Parse an edge list into a cycle in canonical rotation.
    pub fn cycle(&self, edges: &[EdgeId]) -> Result<Cycle, Error> {
        let describe = || edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(" ");
        if edges.is_empty() {
            return Err(Error::NotAPath("empty cycle".into()));
        }
        let mut sources = BTreeSet::new();
        for (i, &e) in edges.iter().enumerate() {
            let next = edges[(i + 1) % edges.len()];
            if self.range(e) != self.source(next) {
                return Err(Error::NotAPath(alloc::format!("{} is not a closed path", describe())));
            }
            if !sources.insert(self.source(e)) {
                return Err(Error::NotAPath(alloc::format!("{} repeats a vertex", describe())));
            }
        }
        let k = (0..edges.len()).min_by_key(|&i| edges[i]).unwrap();
        let mut rot = edges[k..].to_vec();
        rot.extend_from_slice(&edges[..k]);
        Ok(Cycle { edges: rot })
    }

    /// The edge leaving `v` along `c`, if `v` lies on `c`.
    fn cycle_edge_at(&self, c: &Cycle, v: VertexId) -> Option<EdgeId> {
        c.edges.iter().copied().find(|&e| self.source(e) == v)
    }

    /// Exits of `c`: named edges leaving the cycle's vertices off the cycle,
    /// and bundles from those vertices.
    pub fn cycle_exits(&self, c: &Cycle) -> (Vec<EdgeId>, Vec<Bundle>) {
        let mut named = Vec::new();
        let mut bundles = Vec::new();
        for &ce in &c.edges {
            let v = self.source(ce);
            named.extend(self.out_edges(v).iter().copied().filter(|&e| e != ce));
            bundles.extend(self.bundles_from(v).copied());
        }
        (named, bundles)
    }

    pub fn cycle_has_exit(&self, c: &Cycle) -> bool {
        let (n, b) = self.cycle_exits(c);
        !n.is_empty() || !b.is_empty()
    }

    pub fn condition_l(&self) -> bool {
        self.simple_cycles().iter().all(|c| self.cycle_has_exit(c))
    }

    /// No vertex of `c` lies on a different simple cycle. Equivalently, no
    /// exit of `c` leads back to `c`.
    pub fn is_exclusive_cycle(&self, c: &Cycle) -> bool {
        let on: Vec<VertexId> = c.vertices(self);
        let back = |r: VertexId| on.iter().any(|&x| self.reaches(r, x));
        let (named, bundles) = self.cycle_exits(c);
        !named.iter().any(|&e| back(self.range(e))) && !bundles.iter().any(|b| back(b.range))
    }

    /// Every two vertices reach a common vertex.
    pub fn is_downward_directed(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|u| (u + 1..n).all(|v| (0..n).any(|w| self.reach[u][w] && self.reach[v][w])))
    }

    pub fn is_hereditary(&self, h: &VertexSet) -> bool {
        h.iter().all(|&v| self.vertex_ids().all(|w| !self.reaches(v, w) || h.contains(&w)))
    }

    pub fn is_saturated(&self, h: &VertexSet) -> bool {
        self.vertex_ids().all(|v| h.contains(&v) || !self.saturates(h, v))
    }

    fn saturates(&self, h: &VertexSet, v: VertexId) -> bool {
        self.is_regular(v) && self.out_edges(v).iter().all(|&e| h.contains(&self.range(e)))
    }

    pub fn hereditary_closure(&self, x: &VertexSet) -> VertexSet {
        self.vertex_ids().filter(|&w| x.iter().any(|&v| self.reaches(v, w))).collect()
    }

    /// Least hereditary saturated superset.
    pub fn hs_closure(&self, x: &VertexSet) -> VertexSet {
        let mut h = self.hereditary_closure(x);
        loop {
            let add: Vec<VertexId> = self.vertex_ids().filter(|&v| !h.contains(&v) && self.saturates(&h, v)).collect();
            if add.is_empty() {
                return h;
            }
            h.extend(add);
        }
    }

    /// Every edge is a loop, no vertex has two edges, and there are no
    /// bundles: each component is a bare vertex or a single loop.
    pub fn commutativity_shape(&self) -> bool {
        self.bundles.is_empty()
            && self.edges.iter().all(|e| e.source == e.range)
            && self.vertex_ids().all(|v| self.out_edges(v).len() <= 1)
    }

    pub fn path(&self, edges: &[EdgeId]) -> Result<Path, Error> {
        match edges.first() {
            None => Err(Error::NotAPath("empty edge list; use a trivial path".into())),
            Some(&e0) => {
                for w in edges.windows(2) {
                    if self.range(w[0]) != self.source(w[1]) {
                        return Err(Error::NotAPath(alloc::format!(
                            "{} then {}: r({}) != s({})",
                            self.edge_name(w[0]),
                            self.edge_name(w[1]),
                            self.edge_name(w[0]),
                            self.edge_name(w[1])
                        )));
                    }
                }
                Ok(Path { source: self.source(e0), range: self.range(*edges.last().unwrap()), edges: edges.to_vec() })
            }
        }
    }

    pub fn path_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, Error> {
        let ids = names.iter().map(|n| self.edge(n.as_ref())).collect::<Result<Vec<_>, _>>()?;
        self.path(&ids)
    }

    /// Paths of length at most `max_len` ending at `v`, trivial path included,
    /// sorted by length then edge ids.
    pub fn paths_ending_at(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for e in self.in_edges(p.source) {
                    let mut edges = vec![e];
                    edges.extend_from_slice(&p.edges);
                    next.push(Path { source: self.source(e), range: v, edges });
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Paths of length at most `max_len` starting at `v`, trivial included.
    pub fn paths_from(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range) {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(Path { source: v, range: self.range(e), edges });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn names_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.vertex_name(v).to_string()).collect()
    }
}

/// A finite path. A trivial path is a vertex; it has no edges and
/// `source == range`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub range: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { source: v, range: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` followed by `o`; caller guarantees `r(self) = s(o)`.
    pub fn concat(&self, o: &Path) -> Path {
        debug_assert_eq!(self.range, o.source);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&o.edges);
        Path { source: self.source, range: o.range, edges }
    }

    /// If `self = prefix . k`, return `k`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.source != self.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path { source: prefix.range, range: self.range, edges: self.edges[prefix.edges.len()..].to_vec() })
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.is_trivial() {
            g.vertex_name(self.source).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ")
        }
    }
}

impl Ord for Path {
    fn cmp(&self, o: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&o.edges.len())
            .then_with(|| self.edges.cmp(&o.edges))
            .then_with(|| self.source.cmp(&o.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A simple cycle in canonical rotation (smallest edge id first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn base(&self, g: &Graph) -> VertexId {
        g.source(self.edges[0])
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// The cycle read starting at position `phase`.
    pub fn rotation(&self, phase: usize) -> Vec<EdgeId> {
        let k = phase % self.edges.len();
        let mut r = self.edges[k..].to_vec();
        r.extend_from_slice(&self.edges[..k]);
        r
    }

    pub fn render(&self, g: &Graph) -> String {
        self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ")
    }
}

impl Graph {
    /// Position of the cycle edge leaving `v`, if `v` lies on `c`.
    pub fn phase_of(&self, c: &Cycle, v: VertexId) -> Option<usize> {
        let e = self.cycle_edge_at(c, v)?;
        c.edges.iter().position(|&x| x == e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        g.vertices_named(names).unwrap()
    }

    #[test]
    fn toeplitz_classification() {
        let g = corpus::toeplitz();
        assert_eq!(g.classify(g.vertex("v").unwrap()), VertexKind::Sink);
        assert_eq!(g.classify(g.vertex("u").unwrap()), VertexKind::Regular);
        assert_eq!(g.m_of_vertex(g.vertex("v").unwrap()), set(&g, &["u", "v"]));
        assert!(g.condition_l());
        assert!(g.is_downward_directed());
        assert!(!g.commutativity_shape());
        let cycles = g.simple_cycles();
        assert_eq!(cycles.len(), 1);
        assert!(g.is_exclusive_cycle(&cycles[0]));
    }

    #[test]
    fn emitters_and_reachability() {
        let g = corpus::emitters();
        for v in ["v", "w"] {
            assert_eq!(g.classify(g.vertex(v).unwrap()), VertexKind::InfiniteEmitter);
        }
        assert_eq!(g.m_of_vertex(g.vertex("w").unwrap()), set(&g, &["v", "v3", "w"]));
        let h = set(&g, &["v1", "v2"]);
        assert!(g.is_hereditary(&h) && g.is_saturated(&h));
    }

    #[test]
    fn line_graph_closure_and_direction() {
        let g = corpus::line(3);
        assert_eq!(g.m_of_vertex(g.vertex("v1").unwrap()), set(&g, &["v1"]));
        assert_eq!(g.hs_closure(&set(&g, &["v3"])), g.all_vertices());
        assert_eq!(g.hs_closure(&VertexSet::new()), VertexSet::new());
        assert!(g.is_downward_directed());
        assert!(corpus::line(4).condition_l());
    }

    #[test]
    fn rose_shapes() {
        assert!(!corpus::rose(1).condition_l());
        assert!(corpus::rose(1).commutativity_shape());
        let r2 = corpus::rose(2);
        assert!(!r2.commutativity_shape());
        assert_eq!(r2.simple_cycles().len(), 2);
        assert!(r2.simple_cycles().iter().all(|c| !r2.is_exclusive_cycle(c)));
    }

    #[test]
    fn exclusive_loops_in_two_loop_graph() {
        let g = corpus::linked_loops();
        let e = g.cycle(&[g.edge("e").unwrap()]).unwrap();
        assert!(g.is_exclusive_cycle(&e));
    }

    #[test]
    fn disconnected_shapes() {
        let g = GraphBuilder::new("iso").vertices(&["a", "b"]).build().unwrap();
        assert!(!g.is_downward_directed());
        let g = GraphBuilder::new("mix").vertices(&["a", "b", "c"]).edge("l", "c", "c").build().unwrap();
        assert!(g.commutativity_shape());
    }

    #[test]
    fn builder_errors() {
        assert!(GraphBuilder::new("e").build().is_err());
        assert!(GraphBuilder::new("d").vertex("a").vertex("a").build().is_err());
        assert!(GraphBuilder::new("x").vertex("a").edge("e", "a", "b").build().is_err());
        assert!(GraphBuilder::new("o").vertex("a").edge("e", "a", "a").edge("f", "a", "a").order("a", &["e"]).build().is_err());
    }

    #[test]
    fn custom_order_changes_max_edge() {
        let g = GraphBuilder::new("t")
            .vertices(&["u", "v"])
            .edge("e", "u", "u")
            .edge("f", "u", "v")
            .order("u", &["f", "e"])
            .build()
            .unwrap();
        assert_eq!(g.max_edge(g.vertex("u").unwrap()), Some(g.edge("e").unwrap()));
        assert!(g.has_custom_order(g.vertex("u").unwrap()));
    }

    #[test]
    fn path_composability() {
        let g = corpus::toeplitz();
        assert!(g.path_named(&["e", "f"]).is_ok());
        assert!(g.path_named(&["f", "e"]).is_err());
        assert_eq!(g.paths_ending_at(g.vertex("v").unwrap(), 2).len(), 3);
    }
}
