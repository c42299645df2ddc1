//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lpa_core::freegens::{self, find_witness, two_by_two_image, unit_group_structure, verify_free_up_to, UnitFactor, UnitGroup};
use lpa_core::ideal::{classify_primitive_witness, kernel_generators, IdealSpec, QuotientMap, WitnessType};
use lpa_core::matrix::DenseMatrix;
use lpa_core::modules::Twist;
use lpa_core::toeplitz::{letter_length, toeplitz_embed, AugmentedMatrix, FinitaryMatrix};
use lpa_core::{corpus, Algebra, AlgebraElement, Graph, Mode};

use crate::error::CliError;
use crate::expr::{parse_expr, parse_scalar};
use crate::fieldspec::parse_field;
use crate::graphfile::{parse_graph, serialize_graph};
use crate::report::{inputs_digest, Report};
use crate::syntax::{parse_cycle, parse_module, parse_vector, parse_vertex_list, parse_witness, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "lpa", version, about = "Exact computations in Leavitt and Cohn path algebras")]
struct Cli {
    /// Graph file, or `corpus:<name>` for a built-in graph.
    #[arg(long, global = true)]
    graph: Option<String>,
    /// Field descriptor: Q, F<p>, Q(s,t), F<p>(s,t), Q[x]/(<poly>).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, value_parser = ["leavitt", "cohn"], default_value = "leavitt")]
    mode: String,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Recorded in the report; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timing in the JSON report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex kinds, cycles, exits and graph-level properties.
    Analyze {
        /// Also test this vertex set for being hereditary and saturated.
        #[arg(long = "H")]
        h: Option<String>,
    },
    /// Normal form of an expression.
    Nf(ExprArg),
    /// Product of two or more expressions, left to right.
    Mul {
        #[arg(long, required = true, num_args = 1, action = clap::ArgAction::Append)]
        expr: Vec<String>,
    },
    /// The involution of an expression.
    Star(ExprArg),
    /// The quotient graph of an admissible pair and the map onto its algebra.
    Quotient {
        #[command(flatten)]
        pair: PairArgs,
        /// Also map this expression.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Which primitive graded ideal family an admissible pair witnesses.
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// Cycle for type III, as edge names joined by `.`.
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Build a free pair of units and verify it on reduced words.
    FreeGens(FreeGensArgs),
    /// Structure of the unit group for artinian or noetherian algebras.
    UnitGroup,
    /// Act on a vector of a simple module.
    Act(ActArgs),
    /// Truncated matrix of an element of the Toeplitz algebra.
    Toeplitz {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        size: usize,
        /// Global determinant, when the truncation determines it.
        #[arg(long)]
        det: bool,
    },
}

#[derive(Args, Debug)]
struct ExprArg {
    #[arg(long)]
    expr: String,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Hereditary saturated set, comma separated.
    #[arg(long = "H", default_value = "")]
    h: String,
    /// Subset of the breaking vertices, comma separated.
    #[arg(long = "S", default_value = "")]
    s: String,
}

#[derive(Args, Debug)]
struct FreeGensArgs {
    /// sink:<f> | qsink:<H>,<S>:<f> | breaking:<H>:<w>:<f> | tail:<cycle>:<f> | line:<i>:<j>
    #[arg(long)]
    witness: Option<String>,
    /// List the witnesses found in the graph instead.
    #[arg(long, conflicts_with = "witness")]
    list: bool,
    /// With --list, also look for quotient sinks and breaking vertices of (H, S).
    #[arg(long = "H")]
    h: Option<String>,
    /// S for breaking-vertex witnesses and --list.
    #[arg(long = "S")]
    s: Option<String>,
    #[arg(long, default_value = "2")]
    alpha: String,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long = "verify-len", default_value_t = 4)]
    verify_len: usize,
}

#[derive(Args, Debug)]
struct ActArgs {
    /// chen-cycle:<cycle>[:<prefix>] | sink:<w> | emitter:<v>
    #[arg(long)]
    module: String,
    /// Vector, e.g. `2*f.@e - @e`; defaults to the module's base vector.
    #[arg(long)]
    vector: Option<String>,
    #[arg(long)]
    expr: Option<String>,
    /// Twist edge e1 on the cycle: e1 ↦ xbar·e1 (needs an extension field).
    #[arg(long)]
    twist: Option<String>,
    /// Check that the defining relations kill this many basis vectors.
    #[arg(long = "check-relations")]
    check_relations: Option<usize>,
}

/// Exit status and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    text: String,
    result: Value,
    diagnostics: Vec<String>,
    /// Exit status for a completed run whose checks failed.
    failed: Option<CliError>,
}

impl Output {
    fn new(text: String, result: Value) -> Self {
        Output { text, result, diagnostics: Vec::new(), failed: None }
    }
}

struct Ctx {
    graph: Graph,
    alg: Algebra,
}

fn load_graph(spec: Option<&str>, default: Option<Graph>) -> Result<Graph, CliError> {
    match spec {
        None => default.ok_or_else(|| CliError::Usage("--graph is required for this command".into())),
        Some(s) => {
            if let Some(name) = s.strip_prefix("corpus:") {
                return corpus_graph(name).ok_or_else(|| CliError::Usage(format!("no built-in graph named {name:?}")));
            }
            let text = std::fs::read_to_string(s).map_err(|e| CliError::Io(format!("{s}: {e}")))?;
            parse_graph(&text)
        }
    }
}

/// Built-in graphs by name: the corpus plus the disjoint union `A2+R1`.
pub fn corpus_graph(name: &str) -> Option<Graph> {
    if name == "A2+R1" {
        return Some(corpus::disjoint_union(&corpus::line(2), &corpus::rose(1), "A2+R1"));
    }
    corpus::all().into_iter().find(|g| g.name() == name)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Nf(_) => "nf",
        Command::Mul { .. } => "mul",
        Command::Star(_) => "star",
        Command::Quotient { .. } => "quotient",
        Command::Classify { .. } => "classify",
        Command::FreeGens(_) => "free-gens",
        Command::UnitGroup => "unit-group",
        Command::Act(_) => "act",
        Command::Toeplitz { .. } => "toeplitz",
    }
}

/// Flags of the subcommand as a JSON object, for the report echo.
fn command_inputs(c: &Command) -> Value {
    match c {
        Command::Analyze { h } => json!({ "H": h }),
        Command::Nf(e) | Command::Star(e) => json!({ "expr": e.expr }),
        Command::Mul { expr } => json!({ "expr": expr }),
        Command::Quotient { pair, expr } => json!({ "H": pair.h, "S": pair.s, "expr": expr }),
        Command::Classify { pair, cycle } => json!({ "H": pair.h, "S": pair.s, "cycle": cycle }),
        Command::FreeGens(a) => json!({
            "witness": a.witness, "list": a.list, "H": a.h, "S": a.s,
            "alpha": a.alpha, "beta": a.beta, "verify_len": a.verify_len,
        }),
        Command::UnitGroup => json!({}),
        Command::Act(a) => json!({
            "module": a.module, "vector": a.vector, "expr": a.expr,
            "twist": a.twist, "check_relations": a.check_relations,
        }),
        Command::Toeplitz { expr, size, det } => json!({ "expr": expr, "size": size, "det": det }),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    let default_graph = matches!(cli.command, Command::Toeplitz { .. }).then(corpus::toeplitz);
    let mut inputs = json!({
        "graph": cli.graph,
        "field": cli.field,
        "mode": cli.mode,
        "seed": cli.seed,
    });
    inputs["args"] = command_inputs(&cli.command);

    let prepared = load_graph(cli.graph.as_deref(), default_graph).and_then(|g| {
        let field = parse_field(&cli.field).map_err(|e| e.in_flag("--field"))?;
        let mode = if cli.mode == "cohn" { Mode::Cohn } else { Mode::Leavitt };
        Ok(Ctx { alg: Algebra::new(g.clone(), field, mode), graph: g })
    });
    let graph_text = prepared.as_ref().map(|c| serialize_graph(&c.graph)).unwrap_or_default();
    let outcome = prepared.and_then(|ctx| dispatch(&ctx, &cli.command));
    let digest = inputs_digest(&graph_text, &inputs);

    let (output, error) = match outcome {
        Ok(o) => {
            let failed = o.failed.clone();
            (Some(o), failed)
        }
        Err(e) => (None, Some(e)),
    };
    let code = error.as_ref().map_or(0, CliError::exit_code);
    let report = Report {
        command: name.into(),
        inputs,
        digest,
        result: output.as_ref().map_or(Value::Null, |o| o.result.clone()),
        diagnostics: output.as_ref().map_or_else(Vec::new, |o| o.diagnostics.clone()),
        error: error.clone(),
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    if cli.json {
        return Outcome { code, stdout: report.render_json(), stderr: String::new() };
    }
    let mut stdout = String::new();
    if let Some(o) = &output {
        stdout.push_str(&o.text);
        if !o.text.ends_with('\n') {
            stdout.push('\n');
        }
        for d in &o.diagnostics {
            stdout.push_str(&format!("note: {d}\n"));
        }
    }
    let stderr = error.map(|e| format!("error[{}]: {e}\n", e.kind())).unwrap_or_default();
    Outcome { code, stdout, stderr }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Output, CliError> {
    let flag = |f: &'static str| move |e: CliError| e.in_flag(f);
    match cmd {
        Command::Analyze { h } => analyze(ctx, h.as_deref()),
        Command::Nf(e) => {
            let x = parse_expr(&e.expr, &ctx.alg).map_err(flag("--expr"))?;
            Ok(Output::new(x.to_string(), element_json(&x)))
        }
        Command::Mul { expr } => {
            let mut acc = ctx.alg.one();
            for e in expr {
                acc = acc.try_mul(&parse_expr(e, &ctx.alg).map_err(flag("--expr"))?)?;
            }
            Ok(Output::new(acc.to_string(), element_json(&acc)))
        }
        Command::Star(e) => {
            let x = parse_expr(&e.expr, &ctx.alg).map_err(flag("--expr"))?.star();
            Ok(Output::new(x.to_string(), element_json(&x)))
        }
        Command::Quotient { pair, expr } => quotient(ctx, pair, expr.as_deref()),
        Command::Classify { pair, cycle } => classify(ctx, pair, cycle.as_deref()),
        Command::FreeGens(a) => free_gens(ctx, a),
        Command::UnitGroup => Ok(unit_group(&ctx.graph)),
        Command::Act(a) => act(ctx, a),
        Command::Toeplitz { expr, size, det } => toeplitz(ctx, expr, *size, *det),
    }
}

fn element_json(x: &AlgebraElement) -> Value {
    let g = x.algebra().graph();
    let f = x.algebra().field();
    let terms: Vec<Value> = x.terms().map(|(m, c)| json!({ "monomial": m.render(g), "coefficient": f.render(c) })).collect();
    json!({ "normal_form": x.to_string(), "terms": terms })
}

fn names(g: &Graph, s: &VertexSet) -> Vec<String> {
    g.names_of(s)
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

fn analyze(ctx: &Ctx, h: Option<&str>) -> Result<Output, CliError> {
    let g = &ctx.graph;
    let mut text = format!("graph {}: {} vertices, {} edges, {} bundles\n", g.name(), g.vertex_count(), g.edge_count(), g.bundles().len());
    let mut vertices = Vec::new();
    for v in g.vertex_ids() {
        let kind = g.classify(v);
        text.push_str(&format!("  {}: {kind}\n", g.vertex_name(v)));
        vertices.push(json!({ "name": g.vertex_name(v), "kind": kind.to_string() }));
    }
    let mut cycles = Vec::new();
    for c in g.simple_cycles() {
        let (exits, bundles) = g.cycle_exits(&c);
        let exit_names: Vec<String> = exits
            .iter()
            .map(|&e| g.edge_name(e).to_string())
            .chain(bundles.iter().map(|b| format!("bundle {}->{}", g.vertex_name(b.source), g.vertex_name(b.range))))
            .collect();
        let exclusive = g.is_exclusive_cycle(&c);
        text.push_str(&format!("  cycle {}: exits {}, {}\n", c.render(g), braces(&exit_names), if exclusive { "exclusive" } else { "not exclusive" }));
        cycles.push(json!({ "cycle": c.render(g), "exits": exit_names, "exclusive": exclusive }));
    }
    let props = json!({
        "condition_L": g.condition_l(),
        "downward_directed": g.is_downward_directed(),
        "commutative": g.commutativity_shape(),
    });
    text.push_str(&format!(
        "condition (L): {}\ndownward directed: {}\ncommutative: {}\n",
        g.condition_l(),
        g.is_downward_directed(),
        g.commutativity_shape()
    ));
    let mut result = json!({
        "name": g.name(),
        "vertices": vertices,
        "edges": g.edges().iter().map(|e| json!({ "name": e.name, "source": g.vertex_name(e.source), "range": g.vertex_name(e.range) })).collect::<Vec<_>>(),
        "bundles": g.bundles().iter().map(|b| json!({ "source": g.vertex_name(b.source), "range": g.vertex_name(b.range) })).collect::<Vec<_>>(),
        "cycles": cycles,
        "properties": props,
    });
    if let Some(h) = h {
        let hs = parse_vertex_list(g, h)?;
        let closure = g.hs_closure(&hs);
        let bh = lpa_core::ideal::breaking_vertices(g, &closure)?;
        text.push_str(&format!(
            "H = {}: hereditary {}, saturated {}, hereditary saturated closure {}, B_H of closure {}\n",
            braces(&names(g, &hs)),
            g.is_hereditary(&hs),
            g.is_saturated(&hs),
            braces(&names(g, &closure)),
            braces(&names(g, &bh))
        ));
        result["H"] = json!({
            "set": names(g, &hs),
            "hereditary": g.is_hereditary(&hs),
            "saturated": g.is_saturated(&hs),
            "hs_closure": names(g, &closure),
            "breaking_vertices_of_closure": names(g, &bh),
        });
    }
    Ok(Output::new(text, result))
}

fn pair_spec(g: &Graph, pair: &PairArgs) -> Result<IdealSpec, CliError> {
    let h = parse_vertex_list(g, &pair.h)?;
    let s = parse_vertex_list(g, &pair.s)?;
    Ok(IdealSpec::new(g, h, s)?)
}

fn quotient(ctx: &Ctx, pair: &PairArgs, expr: Option<&str>) -> Result<Output, CliError> {
    let g = &ctx.graph;
    let spec = pair_spec(g, pair)?;
    let phi = QuotientMap::new(&ctx.alg, &spec)?;
    let q = &phi.quotient.graph;
    let bh = spec.breaking(g);
    let mut images = serde_json::Map::new();
    let mut text = format!("H = {}, S = {}, B_H = {}\nquotient graph:\n", braces(&names(g, &spec.h)), braces(&names(g, &spec.s)), braces(&names(g, &bh)));
    for line in serialize_graph(q).lines() {
        text.push_str(&format!("  {line}\n"));
    }
    text.push_str("images:\n");
    for v in g.vertex_ids() {
        let x = phi.apply(&ctx.alg.vertex(v))?;
        text.push_str(&format!("  {} -> {x}\n", g.vertex_name(v)));
        images.insert(g.vertex_name(v).into(), json!(x.to_string()));
    }
    for e in g.edge_ids() {
        for (label, x) in [(g.edge_name(e).to_string(), ctx.alg.edge(e)), (format!("{}*", g.edge_name(e)), ctx.alg.ghost(e))] {
            let y = phi.apply(&x)?;
            text.push_str(&format!("  {label} -> {y}\n"));
            images.insert(label, json!(y.to_string()));
        }
    }
    let kernel: Vec<String> = kernel_generators(&ctx.alg, &spec)?.iter().map(|x| x.to_string()).collect();
    let failures = phi.relation_failures();
    let mut result = json!({
        "H": names(g, &spec.h),
        "S": names(g, &spec.s),
        "B_H": names(g, &bh),
        "quotient_graph": serialize_graph(q),
        "images": images,
        "kernel_generators": kernel,
        "relation_failures": failures,
    });
    if let Some(e) = expr {
        let x = parse_expr(e, &ctx.alg).map_err(|e| e.in_flag("--expr"))?;
        let y = phi.apply(&x)?;
        text.push_str(&format!("phi({x}) = {y}\n"));
        result["image"] = json!(y.to_string());
    }
    let mut out = Output::new(text, result);
    if !failures.is_empty() {
        out.failed = Some(lpa_core::Error::VerificationFailed(format!("relations not preserved: {}", failures.join("; "))).into());
    }
    Ok(out)
}

fn classify(ctx: &Ctx, pair: &PairArgs, cycle: Option<&str>) -> Result<Output, CliError> {
    let g = &ctx.graph;
    let spec = pair_spec(g, pair)?;
    let c = cycle.map(|c| parse_cycle(g, c)).transpose()?;
    let r = classify_primitive_witness(g, &spec, c.as_ref())?;
    let kind = match &r.kind {
        WitnessType::TypeI(w) => format!("TypeI({})", g.vertex_name(*w)),
        WitnessType::TypeII => "TypeII".into(),
        WitnessType::TypeIII(c) => format!("TypeIII({})", c.render(g)),
        WitnessType::NotApplicable => "NotApplicable".into(),
    };
    let mut text = format!("{kind}\nB_H = {}\n", braces(&names(g, &r.breaking)));
    for f in &r.failing_conditions {
        text.push_str(&format!("failing: {f}\n"));
    }
    let mut out = Output::new(
        text,
        json!({
            "H": names(g, &spec.h),
            "S": names(g, &spec.s),
            "B_H": names(g, &r.breaking),
            "type": kind,
            "failing_conditions": r.failing_conditions,
        }),
    );
    out.diagnostics = r.notes.clone();
    Ok(out)
}

fn matrix_json(m: &DenseMatrix) -> Value {
    json!(m.render_rows())
}

fn free_gens(ctx: &Ctx, a: &FreeGensArgs) -> Result<Output, CliError> {
    let g = &ctx.graph;
    let s_set = a.s.as_deref().map(|s| parse_vertex_list(g, s)).transpose()?;
    if a.list {
        let spec = match &a.h {
            Some(h) => Some(IdealSpec::new(g, parse_vertex_list(g, h)?, s_set.unwrap_or_default())?),
            None => None,
        };
        let ws = find_witness(g, spec.as_ref())?;
        let rendered: Vec<String> = ws.iter().map(|w| w.render(g)).collect();
        let text = if rendered.is_empty() { "no witnesses".to_string() } else { rendered.join("\n") };
        return Ok(Output::new(text, json!({ "witnesses": rendered })));
    }
    let wtext = a.witness.as_deref().ok_or_else(|| CliError::Usage("free-gens needs --witness or --list".into()))?;
    let witness = parse_witness(g, wtext, s_set.as_ref()).map_err(|e| e.in_flag("--witness"))?;
    let field = ctx.alg.field();
    let alpha = parse_scalar(&a.alpha, field).map_err(|e| e.in_flag("--alpha"))?;
    let beta = a.beta.as_deref().map(|b| parse_scalar(b, field).map_err(|e| e.in_flag("--beta"))).transpose()?;
    let pair = freegens::build_generators(&ctx.alg, &witness, &alpha, beta.as_ref())?;
    let report = verify_free_up_to(&pair, a.verify_len)?;
    let [l1, l2] = pair.labels;
    let mut text = format!("witness: {} ({})\n", witness.render(g), pair.case);
    for k in 0..2 {
        text.push_str(&format!("{} = {}\n{}^-1 = {}\n", pair.labels[k], pair.generators[k], pair.labels[k], pair.inverses[k]));
    }
    let images = match two_by_two_image(&pair) {
        Ok(m) => {
            text.push_str(&format!("image of {l1}: {}\nimage of {l2}: {}\n", m[0], m[1]));
            json!({ l1: matrix_json(&m[0]), l2: matrix_json(&m[1]) })
        }
        Err(_) => {
            let m = freegens::expected_images(&pair)?;
            text.push_str(&format!("image of {l1} in M_{}: {}\nimage of {l2}: {}\n", m[0].rows(), m[0], m[1]));
            json!({ l1: matrix_json(&m[0]), l2: matrix_json(&m[1]) })
        }
    };
    text.push_str(&format!(
        "reduced words of length <= {}: {} checked, all nontrivial: {}, matrix cross-check: {}\n",
        a.verify_len, report.words_checked, report.all_nontrivial, report.matrix_crosscheck
    ));
    let mut out = Output::new(
        text,
        json!({
            "witness": witness.render(g),
            "case": pair.case.to_string(),
            "generators": pair.generators.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "inverses": pair.inverses.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "labels": pair.labels,
            "images": images,
            "verify_len": a.verify_len,
            "words_checked": report.words_checked,
            "all_nontrivial": report.all_nontrivial,
            "matrix_crosscheck": report.matrix_crosscheck,
            "first_failure": report.first_failure,
        }),
    );
    out.diagnostics.push(format!("freeness is certified for words of length <= {} only", a.verify_len));
    if let Some(w) = report.first_failure {
        out.failed = Some(lpa_core::Error::VerificationFailed(format!("word {w} failed")).into());
    }
    Ok(out)
}

fn unit_group(g: &Graph) -> Output {
    let u = unit_group_structure(g);
    let mut text = u.to_string();
    let result = match &u {
        UnitGroup::Product(fs) => {
            let factors: Vec<Value> = fs
                .iter()
                .map(|f| match f {
                    UnitFactor::General { n, sink } => json!({ "group": f.to_string(), "n": n, "sink": sink }),
                    UnitFactor::Laurent { n, cycle } => json!({ "group": f.to_string(), "n": n, "cycle": cycle }),
                })
                .collect();
            if let Some(ab) = u.abelian_form() {
                text.push_str(&format!("\nabelian form: {ab}"));
            }
            json!({ "descriptor": u.to_string(), "abelian_form": u.abelian_form(), "factors": factors })
        }
        UnitGroup::NotArtinianOrNoetherian { diagnostics } => {
            json!({ "descriptor": "NotArtinianOrNoetherian", "diagnostics": diagnostics })
        }
    };
    Output::new(text, result)
}

fn act(ctx: &Ctx, a: &ActArgs) -> Result<Output, CliError> {
    let g = &ctx.graph;
    let (module, pointed) = parse_module(&ctx.alg, &a.module).map_err(|e| e.in_flag("--module"))?;
    let vector = match &a.vector {
        Some(v) => parse_vector(&module, v).map_err(|e| e.in_flag("--vector"))?,
        None => module.vector(pointed.unwrap_or_else(|| module.base_vector()))?,
    };
    let twist = match &a.twist {
        Some(e) => {
            let lpa_core::modules::ModuleKind::Chen { cycle } = module.kind() else {
                return Err(lpa_core::Error::InvalidModule("twists apply to Chen modules".into()).into());
            };
            Some(Twist::new(&ctx.alg, cycle, g.edge(e)?)?)
        }
        None => None,
    };
    let mut text = format!("module: {}\nvector: {vector}\n", module.describe());
    let mut result = json!({ "module": module.describe(), "vector": vector.to_string() });
    if let Some(e) = &a.expr {
        let x = parse_expr(e, &ctx.alg).map_err(|e| e.in_flag("--expr"))?;
        let y = match &twist {
            Some(t) => module.twisted_act(t, &x, &vector)?,
            None => module.act(&x, &vector)?,
        };
        text.push_str(&format!("({x}) . ({vector}) = {y}\n"));
        result["expr"] = json!(x.to_string());
        result["result"] = json!(y.to_string());
    }
    let mut failed = None;
    if let Some(n) = a.check_relations {
        let samples = module.sample_basis(n);
        let fails = module.relation_failures(&samples, twist.as_ref())?;
        text.push_str(&format!("relations checked on {} basis vectors: {} failures\n", samples.len(), fails.len()));
        let rendered: Vec<String> = fails.iter().map(|(r, b)| format!("{r} on {}", b.render(g))).collect();
        result["relations"] = json!({ "samples": samples.len(), "failures": rendered });
        if !fails.is_empty() {
            failed = Some(lpa_core::Error::VerificationFailed(format!("{} relation failures", fails.len())).into());
        }
    }
    let mut out = Output::new(text, result);
    out.failed = failed;
    Ok(out)
}

fn toeplitz(ctx: &Ctx, expr: &str, size: usize, det: bool) -> Result<Output, CliError> {
    let x = parse_expr(expr, &ctx.alg).map_err(|e| e.in_flag("--expr"))?;
    let m = toeplitz_embed(&x, size)?;
    let k = letter_length(&x);
    let exact = size.saturating_sub(k);
    let fin = FinitaryMatrix::from_dense(&m);
    let triples: Vec<Value> = fin.entries().map(|(i, j, c)| json!([i, j, ctx.alg.field().render(c)])).collect();
    let mut text = format!("{x} at N = {size}:\n{fin}\n");
    let mut out_json = json!({ "element": x.to_string(), "size": size, "entries": triples, "exact_block": exact });
    let mut diagnostics = vec![format!("the truncation is exact on the leading {exact}x{exact} block")];
    if det {
        let id = DenseMatrix::identity(ctx.alg.field(), size);
        let pert = FinitaryMatrix::from_dense(&m.sub(&id)?);
        if pert.support_bound() <= exact && exact > 0 {
            let aug = AugmentedMatrix::new(pert);
            let d = lpa_core::toeplitz::global_det(&aug);
            let s = ctx.alg.field().render(&d);
            text.push_str(&format!("global determinant: {s}\n"));
            out_json["det"] = json!(s);
        } else {
            diagnostics.push("the element is not of the form I + finitary inside the exact block; no determinant".into());
            out_json["det"] = Value::Null;
        }
    }
    let mut out = Output::new(text, out_json);
    out.diagnostics = diagnostics;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("lpa").chain(args.iter().copied()))
    }

    #[test]
    fn nf_of_yx() {
        let o = run_args(&["nf", "--graph", "corpus:toeplitz", "--expr", "(e + f)(e* + f*)"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "u\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["nf", "--graph", "corpus:toeplitz", "--expr", "zz"]).code, 2);
        assert_eq!(run_args(&["nf", "--graph", "corpus:toeplitz", "--bogus"]).code, 2);
        assert_eq!(run_args(&["classify", "--graph", "corpus:emitters", "--H", "v1"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
    }
}
