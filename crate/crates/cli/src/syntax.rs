//! Small textual forms used by command-line flags.
//!
//! - vertex lists: `v1,v2` (or `v1+v2` inside witnesses)
//! - cycles: edge names joined by `.`, e.g. `e1.e2`
//! - modules: `chen-cycle:<cycle>[:<prefix>]`, `sink:<w>`, `emitter:<v>`
//! - vectors: sums of `coef*path` with `path = e1.e2.@e`, a vertex, or `e1.e2`
//! - witnesses: `sink:<f>`, `qsink:<H>,<S>:<f>`, `breaking:<H>:<w>:<f>`,
//!   `tail:<cycle>:<f>`, `line:<i>:<j>`

use std::collections::BTreeSet;

use lpa_core::freegens::Witness;
use lpa_core::graph::{Cycle, EdgeId, Path, VertexId};
use lpa_core::ideal::IdealSpec;
use lpa_core::modules::{canonicalize_rational, BasisVector, Module, ModuleKind, ModuleVector};
use lpa_core::{Algebra, Error, Graph, Scalar};

use crate::error::CliError;
use crate::expr::parse_scalar;

pub type VertexSet = BTreeSet<VertexId>;

fn split_list(s: &str, sep: char) -> Vec<&str> {
    s.split(sep).map(str::trim).filter(|x| !x.is_empty()).collect()
}

pub fn parse_vertex_list(g: &Graph, s: &str) -> Result<VertexSet, CliError> {
    let names = split_list(s, ',');
    Ok(g.vertices_named(&names)?)
}

fn edges_named(g: &Graph, s: &str) -> Result<Vec<EdgeId>, CliError> {
    split_list(s, '.').into_iter().map(|e| g.edge(e).map_err(CliError::from)).collect()
}

pub fn parse_cycle(g: &Graph, s: &str) -> Result<Cycle, CliError> {
    let edges = edges_named(g, s)?;
    if edges.is_empty() {
        return Err(CliError::syntax("a cycle needs at least one edge"));
    }
    Ok(g.cycle(&edges)?)
}

/// A module and the vector its spec points at, if any.
pub fn parse_module(alg: &Algebra, spec: &str) -> Result<(Module, Option<BasisVector>), CliError> {
    let g = alg.graph();
    let (kind, rest) = spec.split_once(':').ok_or_else(|| CliError::syntax(format!("module spec {spec:?} needs a `kind:` prefix")))?;
    match kind {
        "chen-cycle" => {
            let (cyc, prefix) = match rest.split_once(':') {
                Some((c, p)) => (c, Some(p)),
                None => (rest, None),
            };
            let cycle = parse_cycle(g, cyc)?;
            let m = Module::chen(alg, cycle.clone())?;
            let v = match prefix {
                Some(p) => {
                    let edges = edges_named(g, p)?;
                    let path = g.path(&edges)?;
                    let phase = cycle
                        .edges()
                        .iter()
                        .position(|&e| g.source(e) == path.range)
                        .ok_or_else(|| Error::NotAPath(format!("prefix {p} does not end on the cycle")))?;
                    Some(canonicalize_rational(g, path, &cycle, phase)?)
                }
                None => None,
            };
            Ok((m, v))
        }
        "sink" => Ok((Module::sink(alg, g.vertex(rest.trim())?)?, None)),
        "emitter" => Ok((Module::emitter(alg, g.vertex(rest.trim())?)?, None)),
        other => Err(CliError::syntax(format!("unknown module kind {other:?}; expected chen-cycle, sink or emitter"))),
    }
}

/// Reads one basis vector of `module`.
pub fn parse_basis_vector(module: &Module, text: &str) -> Result<BasisVector, CliError> {
    let g = module.algebra().graph();
    let parts = split_list(text, '.');
    if parts.is_empty() {
        return Err(CliError::syntax("empty path"));
    }
    let (finite, tail) = match parts.last().and_then(|p| p.strip_prefix('@')) {
        Some(t) => (&parts[..parts.len() - 1], Some(t)),
        None => (&parts[..], None),
    };
    let b = match (module.kind(), tail) {
        (ModuleKind::Chen { cycle }, Some(t)) => {
            let e = g.edge(t)?;
            let phase = cycle
                .edges()
                .iter()
                .position(|&c| c == e)
                .ok_or_else(|| Error::InvalidModule(format!("{t} is not an edge of the module's cycle")))?;
            let start = g.source(e);
            let prefix = if finite.is_empty() { Path::trivial(start) } else { g.path(&finite.iter().map(|x| g.edge(x)).collect::<Result<Vec<_>, _>>()?)? };
            canonicalize_rational(g, prefix, cycle, phase)?
        }
        (ModuleKind::Chen { .. }, None) => {
            return Err(CliError::syntax(format!("{text:?}: vectors of a Chen module end in a tail marker `@<edge>`")));
        }
        (_, Some(_)) => return Err(CliError::syntax(format!("{text:?}: tail markers only apply to Chen modules"))),
        (kind, None) => {
            let path = if finite.len() == 1 && g.vertex(finite[0]).is_ok() {
                Path::trivial(g.vertex(finite[0])?)
            } else {
                g.path(&finite.iter().map(|x| g.edge(x)).collect::<Result<Vec<_>, _>>()?)?
            };
            match kind {
                ModuleKind::Sink { .. } => BasisVector::SinkPath(path),
                _ => BasisVector::EmitterPath(path),
            }
        }
    };
    if !module.contains(&b) {
        return Err(Error::InvalidModule(format!("{} is not a basis vector of {}", b.render(g), module.describe())).into());
    }
    Ok(b)
}

/// Splits at top-level `+` and `-`, keeping the sign with each term.
fn signed_terms(text: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((neg, std::mem::take(&mut cur)));
                    neg = c == '-';
                } else {
                    neg ^= c == '-';
                    cur.clear();
                }
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push((neg, cur));
    out
}

pub fn parse_vector(module: &Module, text: &str) -> Result<ModuleVector, CliError> {
    let field = module.algebra().field();
    let mut terms: Vec<(BasisVector, Scalar)> = Vec::new();
    for (neg, raw) in signed_terms(text) {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(CliError::syntax(format!("empty term in vector {text:?}")));
        }
        let (coef, path) = match raw.rfind('*') {
            Some(i) => (parse_scalar(&raw[..i], field)?, raw[i + 1..].trim()),
            None => (field.one(), raw),
        };
        let coef = if neg { field.neg(&coef) } else { coef };
        terms.push((parse_basis_vector(module, path)?, coef));
    }
    Ok(module.combination(terms)?)
}

pub fn parse_witness(g: &Graph, text: &str, s_flag: Option<&VertexSet>) -> Result<Witness, CliError> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let vset = |s: &str| -> Result<VertexSet, CliError> { Ok(g.vertices_named(&split_list(s, '+'))?) };
    let shape = || CliError::syntax(format!("malformed witness {text:?}"));
    let w = match parts.as_slice() {
        ["sink", f] => Witness::SinkEdge { f: g.edge(f)? },
        ["qsink", hs, f] => {
            let (h, s) = hs.split_once(',').ok_or_else(shape)?;
            let f = g.edge(f)?;
            Witness::QuotientSink { spec: IdealSpec::new(g, vset(h)?, vset(s)?)?, f, w: g.range(f) }
        }
        ["breaking", h, w, f] => {
            let s = s_flag.cloned().unwrap_or_default();
            Witness::BreakingVertex { spec: IdealSpec::new(g, vset(h)?, s)?, w: g.vertex(w)?, f: g.edge(f)? }
        }
        ["tail", cyc, f] => {
            let cycle = parse_cycle(g, cyc)?;
            let f = g.edge(f)?;
            let start = g.range(f);
            let phase = cycle
                .edges()
                .iter()
                .position(|&e| g.source(e) == start)
                .ok_or_else(|| Error::InvalidWitness(format!("r({}) is not on the cycle", g.edge_name(f))))?;
            Witness::RationalPathEdge { f, tail: canonicalize_rational(g, Path::trivial(start), &cycle, phase)? }
        }
        ["line", i, j] => {
            let n = |s: &str| s.parse::<usize>().map_err(|_| CliError::syntax(format!("{s:?} is not an index")));
            Witness::LineGraph { i: n(i)?, j: n(j)? }
        }
        _ => return Err(shape()),
    };
    w.validate(g)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lpa_core::{corpus, Field, Mode};

    fn alg(g: Graph) -> Algebra {
        Algebra::new(g, Field::rationals(), Mode::Leavitt)
    }

    #[test]
    fn chen_vectors() {
        let a = alg(corpus::linked_loops());
        let (m, v) = parse_module(&a, "chen-cycle:e:g").unwrap();
        assert_eq!(v.unwrap().render(a.graph()), "g.@e");
        let x = parse_vector(&m, "2*g.@e - @e + (1/2)*e.@e").unwrap();
        assert_eq!(x.to_string(), "-(1/2)*@e + 2*g.@e");
        assert_eq!(parse_vector(&m, &x.to_string()).unwrap(), x);
        assert!(parse_vector(&m, "f.@e").is_err());
        assert!(parse_vector(&m, "g").is_err());
    }

    #[test]
    fn sink_vectors() {
        let a = alg(corpus::toeplitz());
        let (m, _) = parse_module(&a, "sink:v").unwrap();
        assert_eq!(parse_vector(&m, "e.f - v").unwrap().to_string(), "-v + e.f");
        assert!(parse_module(&a, "sink:u").is_err());
        assert!(parse_module(&a, "torus:u").is_err());
    }

    #[test]
    fn witnesses() {
        let g = corpus::emitters();
        let w = parse_witness(&g, "breaking:v1+v2:w:f", Some(&parse_vertex_list(&g, "v").unwrap())).unwrap();
        assert!(matches!(w, Witness::BreakingVertex { .. }));
        let t = corpus::toeplitz();
        assert_eq!(parse_witness(&t, "sink:f", None).unwrap(), Witness::SinkEdge { f: t.edge("f").unwrap() });
        assert!(matches!(parse_witness(&t, "sink:e", None), Err(CliError::Domain(_))));
        let e = corpus::forked_loop();
        assert!(matches!(parse_witness(&e, "qsink:w,:f", None).unwrap(), Witness::QuotientSink { .. }));
        let six = corpus::linked_loops();
        let w = parse_witness(&six, "tail:e:g", None).unwrap();
        assert_eq!(w.render(&six), "RationalPathEdge(f=g, p=@e)");
        assert!(parse_witness(&corpus::line(3), "line:1:3", None).is_ok());
        assert!(parse_witness(&corpus::line(3), "line:3:1", None).is_err());
        assert!(matches!(parse_witness(&t, "sink", None), Err(CliError::Syntax { .. })));
    }
}
