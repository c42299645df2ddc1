use std::path::PathBuf;

use lpa::lpa_core::{corpus, Algebra, Field, Mode};
use lpa::{parse_expr, parse_graph, run, serialize_graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn lpa(args: &[&str]) -> lpa::Outcome {
    let mut v = vec!["lpa"];
    v.extend_from_slice(args);
    run(v)
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn shipped_corpus_matches_library() {
    for g in corpus::all() {
        let path = corpus_dir().join(format!("{}.lpa", g.name()));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, serialize_graph(&g), "{}", g.name());
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}

#[test]
fn normal_form_of_jacobson_product() {
    let file = corpus_dir().join("toeplitz.lpa");
    let out = lpa(&["nf", "--graph", file.to_str().unwrap(), "--expr", "(e + f) (e* + f*)"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "u");
    let out = lpa(&["nf", "--graph", "corpus:toeplitz", "--expr", "(e* + f*) (e + f)"]);
    assert_eq!(out.stdout.trim(), "u + v");
}

#[test]
fn classify_first_example() {
    let out = lpa(&["classify", "--graph", "corpus:emitters", "--H", "v1,v2", "--S", "v"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("TypeI(w)"), "{}", out.stdout);
}

#[test]
fn quotient_image() {
    let out = lpa(&["quotient", "--graph", "corpus:emitters", "--H", "v1,v2", "--S", "v", "--expr", "(w - f f*) f*"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("f_q*"), "{}", out.stdout);
}

#[test]
fn unknown_generator_is_a_parse_error() {
    let out = lpa(&["nf", "--graph", "corpus:toeplitz", "--expr", "zz"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("error[parse]"), "{}", out.stderr);
    assert!(out.stderr.contains("column 1"), "{}", out.stderr);
}

#[test]
fn exit_codes() {
    assert_eq!(lpa(&["nf", "--graph", "corpus:toeplitz", "--expr", "u + (e"]).code, 2);
    assert_eq!(lpa(&["nf", "--graph", "/nonexistent/g.lpa", "--expr", "u"]).code, 2);
    assert_eq!(lpa(&["frobnicate"]).code, 2);
    assert_eq!(lpa(&["nf", "--graph", "corpus:toeplitz", "--field", "F4", "--expr", "u"]).code, 1);
    assert_eq!(lpa(&["classify", "--graph", "corpus:emitters", "--H", "nowhere", "--S", ""]).code, 1);
    assert_eq!(lpa(&["free-gens", "--graph", "corpus:toeplitz", "--witness", "sink:e"]).code, 1);
    assert_eq!(lpa(&["unit-group", "--graph", "corpus:A3"]).code, 0);
    assert_eq!(lpa(&["--help"]).code, 0);
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--json", "free-gens", "--graph", "corpus:toeplitz", "--witness", "sink:f", "--verify-len", "3"];
    let a = lpa(&args);
    let b = lpa(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema"], "lpa-report/1");
    assert_eq!(v["command"], "free-gens");
    assert!(v["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["error"].is_null());
    assert!(v.get("timing_ms").is_none());

    let c = lpa(&["--json", "free-gens", "--graph", "corpus:toeplitz", "--witness", "sink:f", "--verify-len", "2"]);
    let w: Value = serde_json::from_str(&c.stdout).unwrap();
    assert_ne!(v["inputs_digest"], w["inputs_digest"]);
}

#[test]
fn json_errors_carry_location() {
    let out = lpa(&["--json", "nf", "--graph", "corpus:toeplitz", "--expr", "u + (e"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["flag"], "--expr");
    assert_eq!(v["error"]["column"], 7);
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["analyze", "--graph", "corpus:emitters"],
        &["star", "--graph", "corpus:toeplitz", "--expr", "2 e f*"],
        &["mul", "--graph", "corpus:toeplitz", "--expr", "e", "--expr", "e*"],
        &["free-gens", "--graph", "corpus:emitters", "--list"],
        &["unit-group", "--graph", "corpus:A2+R1"],
        &["act", "--graph", "corpus:linked_loops", "--module", "chen-cycle:e:g", "--expr", "e'", "--check-relations", "3"],
        &["toeplitz", "--expr", "1 + 2 f*", "--size", "6", "--det"],
    ];
    for args in cases {
        let out = lpa(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(!out.stdout.is_empty(), "{args:?}");
    }
}

fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng) -> lpa::lpa_core::AlgebraElement {
    let g = alg.graph();
    let mut gens = Vec::new();
    for v in g.vertex_ids() {
        gens.push(alg.vertex(v));
    }
    for e in g.edge_ids() {
        gens.push(alg.edge(e));
        gens.push(alg.ghost(e));
    }
    let mut x = alg.zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut t = alg.from_i64(rng.gen_range(-3..4));
        for _ in 0..rng.gen_range(0..4) {
            t = &t * &gens[rng.gen_range(0..gens.len())];
        }
        let d = rng.gen_range(1..4);
        t = t.scale(&alg.field().inv(&alg.field().from_i64(d)).unwrap());
        x = &x + &t;
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn printed_expressions_parse_back(seed in any::<u64>(), which in 0usize..11) {
        let g = corpus::all().swap_remove(which);
        let alg = Algebra::new(g, Field::rationals(), Mode::Leavitt);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&alg, &mut rng);
        let back = parse_expr(&x.to_string(), &alg).unwrap();
        prop_assert_eq!(back, x);
    }
}
