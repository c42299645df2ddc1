//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lpa_core::algebra::Generator;
use lpa_core::graph::Path;
use lpa_core::matrix::DenseMatrix;
use lpa_core::toeplitz::{AugmentedMatrix, FinitaryMatrix};
use lpa_core::{Algebra, AlgebraElement, Field, Graph, Mode, Monomial, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Word = Vec<Generator>;

pub fn generators(g: &Graph) -> Vec<Generator> {
    let mut out: Vec<Generator> = g.vertex_ids().map(Generator::Vertex).collect();
    for e in g.edge_ids() {
        out.push(Generator::Edge(e));
        out.push(Generator::Ghost(e));
    }
    out
}

fn ends(g: &Graph, x: Generator) -> (lpa_core::graph::VertexId, lpa_core::graph::VertexId) {
    match x {
        Generator::Vertex(v) => (v, v),
        Generator::Edge(e) => (g.source(e), g.range(e)),
        Generator::Ghost(e) => (g.range(e), g.source(e)),
    }
}

/// A random word; most letters continue from where the previous one ends, so
/// the product is usually nonzero.
pub fn random_word(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let gens = generators(g);
    let n = rng.gen_range(1..=max_len);
    let mut w: Word = vec![*gens.choose(rng).unwrap()];
    while w.len() < n {
        let at = ends(g, *w.last().unwrap()).1;
        let next: Vec<Generator> = gens.iter().copied().filter(|&x| ends(g, x).0 == at).collect();
        let x = if rng.gen_bool(0.85) { *next.choose(rng).unwrap() } else { *gens.choose(rng).unwrap() };
        w.push(x);
    }
    w
}

/// Integer combination of generator words.
pub fn random_combination(g: &Graph, rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> Vec<(i64, Word)> {
    let n = rng.gen_range(1..=max_terms);
    (0..n).map(|_| (rng.gen_range(-4..=4), random_word(g, rng, max_len))).collect()
}

/// The library's value of an integer combination of words, multiplying
/// generator by generator.
pub fn evaluate(alg: &Algebra, combo: &[(i64, Word)]) -> AlgebraElement {
    let mut total = alg.zero();
    for (k, w) in combo {
        let mut p = alg.one();
        for &x in w {
            p = &p * &alg.generator(x);
        }
        total = &total + &p.scale(&alg.field().from_i64(*k));
    }
    total
}

/// A random element with small rational coefficients.
pub fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> AlgebraElement {
    let f = alg.field();
    let mut x = alg.zero();
    for (k, w) in random_combination(alg.graph(), rng, max_terms, max_len) {
        let d = f.from_i64(rng.gen_range(1..=3));
        let term = evaluate(alg, &[(k, w)]).scale(&f.inv(&d).unwrap());
        x = &x + &term;
    }
    x
}

enum Step {
    Zero,
    Replace(Vec<(i64, Word)>),
}

/// What the pair `x y` rewrites to, if it is a redex.
fn redex(g: &Graph, mode: Mode, x: Generator, y: Generator) -> Option<Step> {
    use Generator::*;
    let keep = |z: Generator| Some(Step::Replace(vec![(1, vec![z])]));
    match (x, y) {
        (Vertex(a), Vertex(b)) => if a == b { keep(x) } else { Some(Step::Zero) },
        (Vertex(a), Edge(e)) => if g.source(e) == a { keep(y) } else { Some(Step::Zero) },
        (Vertex(a), Ghost(e)) => if g.range(e) == a { keep(y) } else { Some(Step::Zero) },
        (Edge(e), Vertex(a)) => if g.range(e) == a { keep(x) } else { Some(Step::Zero) },
        (Ghost(e), Vertex(a)) => if g.source(e) == a { keep(x) } else { Some(Step::Zero) },
        (Edge(e), Edge(f)) => (g.range(e) != g.source(f)).then_some(Step::Zero),
        (Ghost(e), Ghost(f)) => (g.source(e) != g.range(f)).then_some(Step::Zero),
        (Ghost(e), Edge(f)) => if e == f { keep(Vertex(g.range(e))) } else { Some(Step::Zero) },
        (Edge(e), Ghost(f)) => {
            if g.range(e) != g.range(f) {
                Some(Step::Zero)
            } else if mode == Mode::Leavitt && e == f && g.is_max_edge(e) {
                let v = g.source(e);
                let mut out = vec![(1, vec![Vertex(v)])];
                out.extend(g.out_edges(v).iter().filter(|&&h| h != e).map(|&h| (-1, vec![Edge(h), Ghost(h)])));
                Some(Step::Replace(out))
            } else {
                None
            }
        }
    }
}

fn redexes(g: &Graph, mode: Mode, w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| redex(g, mode, w[i], w[i + 1]).is_some()).collect()
}

fn to_monomial(g: &Graph, w: &Word) -> Monomial {
    if let [Generator::Vertex(v)] = w.as_slice() {
        return Monomial::vertex(*v);
    }
    let split = w.iter().position(|x| matches!(x, Generator::Ghost(_))).unwrap_or(w.len());
    let edges = |part: &[Generator]| -> Vec<_> {
        part.iter()
            .map(|x| match x {
                Generator::Edge(e) | Generator::Ghost(e) => *e,
                Generator::Vertex(_) => panic!("vertex left inside an irreducible word"),
            })
            .collect()
    };
    let lam = edges(&w[..split]);
    let mut nu = edges(&w[split..]);
    nu.reverse();
    let path = |es: &[lpa_core::graph::EdgeId], at: lpa_core::graph::VertexId| if es.is_empty() { Path::trivial(at) } else { g.path(es).unwrap() };
    let end = match (lam.last(), nu.last()) {
        (Some(&e), _) | (None, Some(&e)) => g.range(e),
        (None, None) => unreachable!(),
    };
    Monomial::new(path(&lam, end), path(&nu, end)).unwrap()
}

/// Rewrites an integer combination of words to normal form, choosing the
/// next term and redex at random.
pub fn rewrite_randomly(alg: &Algebra, combo: &[(i64, Word)], rng: &mut ChaCha8Rng) -> AlgebraElement {
    let g = alg.graph();
    let mode = alg.mode();
    let mut terms: BTreeMap<Word, i64> = BTreeMap::new();
    let add = |terms: &mut BTreeMap<Word, i64>, w: Word, k: i64| {
        let c = terms.entry(w.clone()).or_insert(0);
        *c += k;
        if *c == 0 {
            terms.remove(&w);
        }
    };
    for (k, w) in combo {
        add(&mut terms, w.clone(), *k);
    }
    loop {
        let open: Vec<(Word, Vec<usize>)> =
            terms.keys().map(|w| (w.clone(), redexes(g, mode, w))).filter(|(_, r)| !r.is_empty()).collect();
        let Some((w, spots)) = open.choose(rng) else { break };
        let i = *spots.choose(rng).unwrap();
        let k = terms.remove(w).unwrap();
        if let Some(Step::Replace(rep)) = redex(g, mode, w[i], w[i + 1]) {
            for (s, mid) in rep {
                let mut nw = w[..i].to_vec();
                nw.extend(mid);
                nw.extend_from_slice(&w[i + 2..]);
                add(&mut terms, nw, k * s);
            }
        }
    }
    let f = alg.field();
    let monos: Vec<_> = terms.iter().map(|(w, k)| (to_monomial(g, w), f.from_i64(*k))).collect();
    assert!(mode == Mode::Cohn || monos.iter().all(|(m, _)| !m.is_forbidden(g)), "oracle left a forbidden monomial");
    alg.combination(monos)
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &DenseMatrix) -> Scalar {
    let f = m.field().clone();
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    permute(&mut perm, 0, &mut |p| {
        let mut sign = 1i64;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        let mut prod = f.from_i64(sign);
        for (i, &j) in p.iter().enumerate() {
            prod = f.mul(&prod, m.get(i, j));
        }
        total = f.add(&total, &prod);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// `I + M` with `M` supported in the leading `support × support` block and
/// entries in `-2..=2`.
pub fn random_augmented(field: &Field, rng: &mut ChaCha8Rng, support: usize) -> AugmentedMatrix {
    let mut m = FinitaryMatrix::zero(field);
    let fill = rng.gen_range(1..=support * support);
    for _ in 0..fill {
        let (i, j) = (rng.gen_range(1..=support), rng.gen_range(1..=support));
        m.set(i, j, field.from_i64(rng.gen_range(-2..=2))).unwrap();
    }
    AugmentedMatrix::new(m)
}

/// `I + M` with `M` strictly upper triangular.
pub fn random_unitriangular(field: &Field, rng: &mut ChaCha8Rng, support: usize) -> AugmentedMatrix {
    let mut m = FinitaryMatrix::zero(field);
    for i in 1..=support {
        for j in i + 1..=support {
            m.set(i, j, field.from_i64(rng.gen_range(-3..=3))).unwrap();
        }
    }
    AugmentedMatrix::new(m)
}
