//! Line-oriented graph files.
//!
//! ```text
//! # Toeplitz graph
//! graph toeplitz
//! vertex u
//! vertex v
//! edge e u u
//! edge f u v
//! bundle v v1
//! order u: f e
//! ```

use std::fmt::Write as _;

use lpa_core::graph::is_identifier;
use lpa_core::{Graph, GraphBuilder};

use crate::error::CliError;

pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    let mut b = GraphBuilder::new("graph");
    let mut named = false;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Syntax { flag: None, line: Some(line_no), column: None, message: msg };
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let args: Vec<&str> = rest.split_whitespace().collect();
        let ident = |s: &str| if is_identifier(s) { Ok(()) } else { Err(err(format!("invalid identifier {s:?}"))) };
        match kw {
            "graph" => {
                if named || args.len() != 1 {
                    return Err(err("expected exactly one `graph <name>` line".into()));
                }
                b.set_name(args[0]);
                named = true;
            }
            "vertex" => {
                if args.len() != 1 {
                    return Err(err("expected `vertex <id>`".into()));
                }
                ident(args[0])?;
                b.add_vertex(args[0]);
            }
            "edge" => {
                if args.len() != 3 {
                    return Err(err("expected `edge <id> <src> <dst>`".into()));
                }
                for a in &args {
                    ident(a)?;
                }
                b.add_edge(args[0], args[1], args[2]);
            }
            "bundle" => {
                if args.len() != 2 {
                    return Err(err("expected `bundle <src> <dst>`".into()));
                }
                b.add_bundle(args[0], args[1]);
            }
            "order" => {
                let (v, edges) = rest.split_once(':').ok_or_else(|| err("expected `order <v>: <e1> <e2> ...`".into()))?;
                let v = v.trim();
                ident(v)?;
                b.add_order(v, edges.split_whitespace().map(String::from).collect());
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    b.build().map_err(CliError::Domain)
}

/// Canonical text: `graph`, then vertices, edges, bundles and custom orders,
/// each in declaration order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", g.name());
    for v in g.vertex_ids() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.name, g.vertex_name(e.source), g.vertex_name(e.range));
    }
    for bd in g.bundles() {
        let _ = writeln!(out, "bundle {} {}", g.vertex_name(bd.source), g.vertex_name(bd.range));
    }
    for v in g.vertex_ids() {
        if g.has_custom_order(v) {
            let names: Vec<&str> = g.out_edges(v).iter().map(|&e| g.edge_name(e)).collect();
            let _ = writeln!(out, "order {}: {}", g.vertex_name(v), names.join(" "));
        }
    }
    out
}
