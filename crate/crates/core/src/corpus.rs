//! The reference graphs used throughout the tests and shipped with the CLI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphBuilder};

/// Toeplitz graph: a loop `e` at `u` and an edge `f: u -> v` into a sink.
pub fn toeplitz() -> Graph {
    GraphBuilder::new("toeplitz")
        .vertices(&["u", "v"])
        .edge("e", "u", "u")
        .edge("f", "u", "v")
        .build()
        .expect("valid graph")
}

/// Rose with `n` petals: one vertex `v`. `R_1` has the single loop `e`;
/// larger roses use `e1 .. en`.
pub fn rose(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new(&format!("R{n}")).vertex("v");
    if n == 1 {
        b = b.edge("e", "v", "v");
    } else {
        for i in 1..=n {
            b = b.edge(&format!("e{i}"), "v", "v");
        }
    }
    b.build().expect("valid graph")
}

/// Oriented line `v1 -e1-> v2 -> ... -> vn`.
pub fn line(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new(&format!("A{n}"));
    for i in 1..=n {
        b = b.vertex(&format!("v{i}"));
    }
    for i in 1..n {
        b = b.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{}", i + 1));
    }
    b.build().expect("valid graph")
}

/// Two infinite emitters `v`, `w` with bundles into `v1`; `k` and `d` name
/// the edges drawn without labels.
pub fn emitters() -> Graph {
    GraphBuilder::new("emitters")
        .vertices(&["v", "v1", "v2", "v3", "w"])
        .edge("g", "v", "w")
        .edge("k", "v", "v3")
        .edge("h", "v3", "w")
        .edge("f", "w", "w")
        .edge("d", "v1", "v2")
        .bundle("v", "v1")
        .bundle("w", "v1")
        .build()
        .expect("valid graph")
}

/// Loop `e` at `u` with edges `f: u -> v` and `g: u -> w`.
pub fn forked_loop() -> Graph {
    GraphBuilder::new("forked_loop")
        .vertices(&["u", "v", "w"])
        .edge("e", "u", "u")
        .edge("f", "u", "v")
        .edge("g", "u", "w")
        .build()
        .expect("valid graph")
}

/// Two looped vertices `u'`, `u` joined by `g: u' -> u`, with `f: u -> v`
/// and `f': v' -> u'`.
pub fn linked_loops() -> Graph {
    GraphBuilder::new("linked_loops")
        .vertices(&["u", "u'", "v", "v'"])
        .edge("e", "u", "u")
        .edge("e'", "u'", "u'")
        .edge("g", "u'", "u")
        .edge("f", "u", "v")
        .edge("f'", "v'", "u'")
        .build()
        .expect("valid graph")
}

/// Disjoint union of two graphs; names of the second get `suffix` if they
/// clash with the first.
pub fn disjoint_union(a: &Graph, b: &Graph, name: &str) -> Graph {
    let mut gb = GraphBuilder::new(name);
    let rename = |s: &str| -> String {
        if a.vertex(s).is_ok() || a.edge(s).is_ok() {
            format!("{s}_2")
        } else {
            String::from(s)
        }
    };
    for g in [a, b] {
        let is_b = core::ptr::eq(g, b);
        let nm = |s: &str| if is_b { rename(s) } else { String::from(s) };
        for v in g.vertex_ids() {
            gb.add_vertex(&nm(g.vertex_name(v)));
        }
        for e in g.edges() {
            gb.add_edge(&nm(&e.name), &nm(g.vertex_name(e.source)), &nm(g.vertex_name(e.range)));
        }
        for bd in g.bundles() {
            gb.add_bundle(&nm(g.vertex_name(bd.source)), &nm(g.vertex_name(bd.range)));
        }
        for v in g.vertex_ids() {
            if g.has_custom_order(v) {
                let names: Vec<String> = g.out_edges(v).iter().map(|&e| nm(g.edge_name(e))).collect();
                gb.add_order(&nm(g.vertex_name(v)), names);
            }
        }
    }
    gb.build().expect("union of valid graphs")
}

/// The eleven reference graphs: Toeplitz, `R_1..R_3`, `A_2..A_5` and the
/// three worked examples.
pub fn all() -> Vec<Graph> {
    let mut v = alloc::vec![toeplitz()];
    v.extend((1..=3).map(rose));
    v.extend((2..=5).map(line));
    v.extend([emitters(), forked_loop(), linked_loops()]);
    v
}
