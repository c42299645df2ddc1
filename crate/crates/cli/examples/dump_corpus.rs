//! Writes the built-in graphs as `.lpa` files into the given directory.

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    for g in lpa::lpa_core::corpus::all() {
        let path = format!("{dir}/{}.lpa", g.name());
        std::fs::write(&path, lpa::serialize_graph(&g)).expect("write corpus file");
        println!("{path}");
    }
}
