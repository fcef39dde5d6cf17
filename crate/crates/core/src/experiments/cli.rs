//! The `ucir` command line.
//!
//! Exit codes: 0 when the run completed with no counterexample, 1 when a
//! counterexample or violation was found, 2 on usage and guard errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{
    chi_f_vertex_transitive, classify_a, spectral_lambda, tardif_quarter_check, theorem3_equivalence_check,
};
use crate::error::{Error, Result};
use crate::graph::{disjoint_union, io, is_vertex_transitive, tensor_product, Family, Graph, Transitivity, VertexSet};
use crate::independence::{a_star_of, chromatic_number, clique_number, expansion_max, max_independent_set};
use crate::limits::Limits;
use crate::matching::has_fpm;
use crate::powers::{union_power_decomposition, witness_first_coordinate, witness_majority};
use crate::ratio;

use super::audit::full_copy_audit;
use super::corpus::{corpus_connected_graphs, random_graphs, RNG_ALGORITHM};
use super::random::{process_hitting_time, random_regular_experiment};
use super::report::{Counterexample, ExperimentReport, Format, Record, Severity};
use super::search::{search_question_1prime, sweep_question_2};

#[derive(Debug, Parser)]
#[command(name = "ucir", version, about = "Independence ratios of tensor graph products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Graph file (graph6 corpus or edge list); repeatable.
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Named family such as cycle:5, kneser:5:2 or circular:5:2; `+`
    /// joins parts into a disjoint union. Repeatable.
    #[arg(long, global = true)]
    family: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Worker threads; reports do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Vertex limit for product and power construction.
    #[arg(long = "guard-vertices", global = true)]
    guard_vertices: Option<usize>,
    /// Include wall-clock runtime in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructionArg {
    FirstCoordinate,
    Majority,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// α, i, a, a*, ω, χ and related values of each graph.
    Invariants,
    /// Exact value or certified interval for the ultimate ratio A(G).
    Classify,
    /// Tensor product of the first two graphs.
    Product,
    /// Certified independent set in the k-th tensor power.
    PowerWitness {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ConstructionArg::FirstCoordinate)]
        construction: ConstructionArg,
        /// Comma-separated independent set; defaults to an a(G) maximizer.
        #[arg(long)]
        set: Option<String>,
    },
    /// Both sides of the decomposition of α((G+H)^k).
    UnionPower {
        #[arg(long)]
        k: usize,
    },
    /// Search for graphs with a(G^2) != a(G).
    SearchQ1 {
        /// Use the built-in corpus of connected graphs up to this order.
        #[arg(long)]
        corpus: Option<usize>,
    },
    /// Sweep i(G x H) <= max{a*(G), a*(H)}.
    SweepQ2 {
        /// Second factors; defaults to cycles 3..5 and K2, K3.
        #[arg(long = "with")]
        with: Vec<String>,
        /// Add this many seeded random graphs as first factors.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Hitting times of δ >= 1 and of a fractional perfect matching.
    ProcessHitting {
        #[arg(long)]
        n: usize,
    },
    /// Λ, i and a of random regular graphs.
    RandomRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        attempts: usize,
    },
    /// Full-copy audit of maximum independent sets of G x H.
    FullCopyAudit,
    /// The four equivalent statements for two vertex-transitive graphs.
    Theorem3Check,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::ParameterDomain(msg.into())
}

fn parse_family(spec: &str) -> Result<Graph> {
    let mut parts = spec.split('+').map(|p| {
        let family: Family = p.trim().parse().map_err(|e: Error| e)?;
        crate::graph::generate(&family)
    });
    let first = parts.next().ok_or_else(|| usage("empty family"))??;
    parts.try_fold(first, |acc, p| Ok(disjoint_union(&acc, &p?)))
}

struct Inputs {
    graphs: Vec<(String, Graph)>,
}

fn load_inputs(g: &Global, report: &mut ExperimentReport) -> Result<Inputs> {
    let mut graphs = Vec::new();
    for (k, spec) in g.family.iter().enumerate() {
        graphs.push((spec.clone(), parse_family(spec)?));
        report.param(&format!("family.{k}"), spec);
    }
    for (k, path) in g.input.iter().enumerate() {
        report.param(&format!("input.{k}"), path.display());
        for (j, graph) in io::read_graphs(path)?.into_iter().enumerate() {
            graphs.push((format!("{}#{j}", path.display()), graph));
        }
    }
    Ok(Inputs { graphs })
}

fn need(inputs: &Inputs, count: usize, command: &str) -> Result<()> {
    if inputs.graphs.len() < count {
        return Err(usage(format!(
            "{command} needs {count} graph(s) from --family or --input, got {}",
            inputs.graphs.len()
        )));
    }
    Ok(())
}

fn transitivity_name(t: Transitivity) -> &'static str {
    match t {
        Transitivity::Transitive => "true",
        Transitivity::NotTransitive => "false",
        Transitivity::Unknown => "unknown (too large)",
    }
}

fn invariants(inputs: &Inputs, limits: &Limits) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("invariants");
    need(inputs, 1, "invariants")?;
    for (id, g) in &inputs.graphs {
        let mut values: Vec<Record> = Vec::new();
        values.push(Record::text(id, g, "n", g.n().to_string()));
        values.push(Record::text(id, g, "edges", g.edge_count().to_string()));
        let mis = max_independent_set(g, limits)?;
        values.push(Record::text(id, g, "alpha", mis.size.to_string()).with_certificate(&mis.witness));
        if g.n() > 0 {
            values.push(Record::rational(id, g, "i", &ratio::ratio(mis.size, g.n())));
            let a = expansion_max(g, limits)?;
            values.push(Record::rational(id, g, "a", &a.ratio).with_certificate(&a));
            values.push(Record::rational(id, g, "a_star", &a_star_of(&a.ratio)));
        }
        values.push(Record::text(id, g, "omega", clique_number(g, limits)?.to_string()));
        if g.n() <= limits.chromatic_vertices {
            values.push(Record::text(id, g, "chi", chromatic_number(g, limits)?.to_string()));
        }
        values.push(Record::text(id, g, "has_fpm", has_fpm(g).to_string()));
        let vt = is_vertex_transitive(g, limits.transitivity_vertices);
        values.push(Record::text(id, g, "vertex_transitive", transitivity_name(vt)));
        if vt.is_transitive() && g.n() > 0 && mis.size > 0 {
            values.push(Record::rational(id, g, "chi_f", &chi_f_vertex_transitive(g, limits)?));
        }
        if let Some(d) = g.regular_degree().filter(|&d| d > 0) {
            values.push(Record::text(id, g, "regular_degree", d.to_string()));
            if let Ok(b) = spectral_lambda(g, limits) {
                values.push(Record::text(id, g, "lambda", format!("{:.12}", b.value)));
            }
        }
        if inputs.graphs.len() == 1 {
            for r in &values {
                rep.summarize(&r.invariant, &r.value);
            }
        }
        rep.results.extend(values);
    }
    Ok(rep)
}

fn classify(inputs: &Inputs, limits: &Limits) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("classify");
    need(inputs, 1, "classify")?;
    for (id, g) in &inputs.graphs {
        let c = classify_a(g, limits)?;
        c.verify(g)?;
        if c.exact {
            rep.results.push(Record::rational(id, g, "A", &c.lower).with_certificate(&c));
        } else {
            rep.results.push(Record::rational(id, g, "A_lower", &c.lower).with_certificate(&c));
            rep.results.push(Record::rational(id, g, "A_upper", &c.upper));
        }
        if inputs.graphs.len() == 1 {
            if c.exact {
                rep.summarize("A", ratio::to_string(&c.lower));
            } else {
                rep.summarize(
                    "A",
                    format!("[{}, {}]", ratio::to_string(&c.lower), ratio::to_string(&c.upper)),
                );
            }
            rep.summarize("exact", c.exact);
            rep.summarize("provenance", c.provenance.join(","));
            for ev in &c.evidence {
                if let crate::bounds::Evidence::HallViolator { violator } = ev {
                    rep.summarize("hall_violator", format!("{:?}", violator.independent_set.to_vec()));
                }
            }
        }
    }
    Ok(rep)
}

fn product(inputs: &Inputs, limits: &Limits) -> Result<ExperimentReport> {
    need(inputs, 2, "product")?;
    let (gid, g) = &inputs.graphs[0];
    let (hid, h) = &inputs.graphs[1];
    let p = tensor_product(g, h, limits.product_vertices)?;
    let id = format!("{gid} x {hid}");
    let mut rep = ExperimentReport::new("product");
    rep.results.push(Record::text(&id, &p, "n", p.n().to_string()));
    rep.results.push(Record::text(&id, &p, "edges", p.edge_count().to_string()));
    if p.n() <= limits.bnb_vertices {
        let (i_g, i_h) = (
            ratio::ratio(max_independent_set(g, limits)?.size, g.n()),
            ratio::ratio(max_independent_set(h, limits)?.size, h.n()),
        );
        let mis = max_independent_set(&p, limits)?;
        let i_p = ratio::ratio(mis.size, p.n());
        rep.results.push(Record::text(&id, &p, "alpha", mis.size.to_string()).with_certificate(&mis.witness));
        rep.results.push(Record::rational(&id, &p, "i", &i_p));
        let floor = i_g.max(i_h);
        if i_p < floor {
            rep.counterexamples.push(Counterexample {
                severity: Severity::Violation,
                statement: "i(G x H) >= max{i(G), i(H)}".into(),
                graph: id.clone(),
                graph6: io::emit_graph6(&p),
                detail: format!("i = {} < {}", ratio::to_string(&i_p), ratio::to_string(&floor)),
                certificate: json!({ "witness": mis.witness }),
            });
        }
    }
    rep.summarize("graph6", io::emit_graph6(&p));
    Ok(rep)
}

fn parse_set(n: usize, text: &str) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = t.parse().map_err(|_| usage(format!("not a vertex index: {t:?}")))?;
        if v >= n {
            return Err(usage(format!("vertex {v} out of range for {n} vertices")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn power_witness(
    inputs: &Inputs,
    k: usize,
    construction: ConstructionArg,
    set: Option<&str>,
    limits: &Limits,
    rep: &mut ExperimentReport,
) -> Result<()> {
    need(inputs, 1, "power-witness")?;
    let (id, g) = &inputs.graphs[0];
    let i = match set {
        Some(s) => parse_set(g.n(), s)?,
        None => expansion_max(g, limits)?.independent_set,
    };
    let w = match construction {
        ConstructionArg::FirstCoordinate => witness_first_coordinate(g, &i, k, limits)?,
        ConstructionArg::Majority => witness_majority(g, &i, k, limits)?,
    };
    w.verify()?;
    rep.results.push(Record::text(id, g, "set_size", w.set_size.to_str_radix(10)).with_certificate(&w));
    rep.results.push(Record::rational(id, g, "ratio", &w.ratio));
    rep.summarize("set_size", w.set_size.to_str_radix(10))
        .summarize("ratio", ratio::to_string(&w.ratio))
        .summarize("check", format!("{:?}", w.check).to_lowercase());
    Ok(())
}

fn union_power(inputs: &Inputs, k: usize, limits: &Limits) -> Result<ExperimentReport> {
    need(inputs, 2, "union-power")?;
    let (gid, g) = &inputs.graphs[0];
    let (hid, h) = &inputs.graphs[1];
    let r = union_power_decomposition(g, h, k, limits)?;
    let id = format!("{gid} + {hid}");
    let u = disjoint_union(g, h);
    let mut rep = ExperimentReport::new("union-power");
    rep.results.push(Record::text(&id, &u, "alpha_direct", r.direct.to_string()).with_certificate(&r));
    rep.results.push(Record::text(&id, &u, "alpha_decomposed", r.decomposed.to_str_radix(10)));
    rep.summarize("direct", r.direct)
        .summarize("decomposed", r.decomposed.to_str_radix(10))
        .summarize("holds", r.holds);
    if !r.holds {
        rep.counterexamples.push(Counterexample {
            severity: Severity::Violation,
            statement: "alpha((G+H)^k) = sum_j C(k,j) alpha(G^j x H^(k-j))".into(),
            graph: id,
            graph6: io::emit_graph6(&u),
            detail: format!("direct {} vs decomposed {}", r.direct, r.decomposed),
            certificate: json!(r),
        });
    }
    Ok(rep)
}

fn two_graph_report(inputs: &Inputs, command: &str) -> Result<(String, Graph, Graph)> {
    need(inputs, 2, command)?;
    let (gid, g) = &inputs.graphs[0];
    let (hid, h) = &inputs.graphs[1];
    Ok((format!("{gid} , {hid}"), g.clone(), h.clone()))
}

fn theorem3(inputs: &Inputs, limits: &Limits) -> Result<ExperimentReport> {
    let (id, g, h) = two_graph_report(inputs, "theorem3-check")?;
    let r = theorem3_equivalence_check(&g, &h, limits)?;
    let tardif = tardif_quarter_check(&g, &h, limits)?;
    let mut rep = ExperimentReport::new("theorem3-check");
    let keys = ["i_product_bound", "a_star_product_bound", "chi_f_product", "A_union"];
    for (key, st) in keys.iter().zip(&r.statements) {
        rep.results.push(Record::text(&id, &g, key, st.holds.to_string()).with_certificate(st));
    }
    rep.summarize("all_or_none", r.all_or_none)
        .summarize("all_hold", r.statements.iter().all(|s| s.holds))
        .summarize("tardif_quarter", tardif)
        .summarize("a_star_product_route", &r.a_star_product_route);
    let graph6 = format!("{} {}", io::emit_graph6(&g), io::emit_graph6(&h));
    if !r.all_or_none {
        rep.counterexamples.push(Counterexample {
            severity: Severity::Violation,
            statement: "statements are all true or all false".into(),
            graph: id.clone(),
            graph6: graph6.clone(),
            detail: "mixed truth values".into(),
            certificate: json!(r),
        });
    }
    if !tardif {
        rep.counterexamples.push(Counterexample {
            severity: Severity::Violation,
            statement: "chi_f(G x H) >= min chi_f / 4".into(),
            graph: id,
            graph6,
            detail: "quarter bound failed".into(),
            certificate: json!(null),
        });
    }
    Ok(rep)
}

fn execute(cli: &Cli, limits: &Limits) -> Result<ExperimentReport> {
    let mut params = ExperimentReport::default();
    let inputs = load_inputs(&cli.global, &mut params)?;
    let mut rep = match &cli.command {
        Command::Invariants => invariants(&inputs, limits)?,
        Command::Classify => classify(&inputs, limits)?,
        Command::Product => product(&inputs, limits)?,
        Command::PowerWitness { k, construction, set } => {
            let mut rep = ExperimentReport::new("power-witness");
            rep.param("k", k).param("construction", format!("{construction:?}"));
            if let Some(s) = set {
                rep.param("set", s);
            }
            power_witness(&inputs, *k, *construction, set.as_deref(), limits, &mut rep)?;
            rep
        }
        Command::UnionPower { k } => {
            let mut rep = union_power(&inputs, *k, limits)?;
            rep.param("k", k);
            rep
        }
        Command::SearchQ1 { corpus } => {
            let mut graphs = inputs.graphs.clone();
            if let Some(max_n) = corpus {
                graphs.extend(
                    corpus_connected_graphs(*max_n)?
                        .into_iter()
                        .enumerate()
                        .map(|(k, g)| (format!("corpus{k}"), g)),
                );
            }
            if graphs.is_empty() {
                return Err(usage("search-q1 needs --corpus, --family or --input"));
            }
            let mut rep = search_question_1prime(&graphs, limits)?;
            if let Some(max_n) = corpus {
                rep.param("corpus", max_n);
            }
            rep
        }
        Command::SweepQ2 {
            with,
            random,
            min_n,
            max_n,
        } => {
            let mut firsts = inputs.graphs.clone();
            let seed = cli.global.seed.unwrap_or(0);
            if let Some(count) = random {
                firsts.extend(
                    random_graphs(*count, *min_n, *max_n, seed)?
                        .into_iter()
                        .enumerate()
                        .map(|(k, g)| (format!("random{k}"), g)),
                );
            }
            if firsts.is_empty() {
                return Err(usage("sweep-q2 needs --random, --family or --input"));
            }
            let specs: Vec<String> = if with.is_empty() {
                ["cycle:3", "cycle:4", "cycle:5", "complete:2", "complete:3"]
                    .map(String::from)
                    .to_vec()
            } else {
                with.clone()
            };
            let seconds = specs
                .iter()
                .map(|s| Ok((s.clone(), parse_family(s)?)))
                .collect::<Result<Vec<_>>>()?;
            let pairs: Vec<(String, Graph, Graph)> = firsts
                .iter()
                .flat_map(|(gid, g)| {
                    seconds
                        .iter()
                        .map(move |(hid, h)| (format!("{gid} x {hid}"), g.clone(), h.clone()))
                })
                .collect();
            let mut rep = sweep_question_2(&pairs, limits)?;
            rep.param("with", specs.join(","));
            if let Some(count) = random {
                rep.param("random", count).param("min_n", min_n).param("max_n", max_n);
                rep.seed = Some(seed);
                rep.rng = Some(RNG_ALGORITHM.into());
            }
            rep
        }
        Command::ProcessHitting { n } => {
            process_hitting_time(*n, cli.global.trials.unwrap_or(200), cli.global.seed.unwrap_or(0), limits)?
        }
        Command::RandomRegular { n, d, attempts } => random_regular_experiment(
            *n,
            *d,
            cli.global.trials.unwrap_or(20),
            cli.global.seed.unwrap_or(0),
            *attempts,
            limits,
        )?,
        Command::FullCopyAudit => {
            let (_, g, h) = two_graph_report(&inputs, "full-copy-audit")?;
            full_copy_audit(&g, &h, limits)?
        }
        Command::Theorem3Check => theorem3(&inputs, limits)?,
    };
    rep.params.extend(params.params);
    if let Some(guard) = cli.global.guard_vertices {
        rep.param("guard_vertices", guard);
    }
    Ok(rep)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Certificate(_) => 1,
        _ => 2,
    }
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_cli_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut limits = Limits::default();
    if let Some(guard) = cli.global.guard_vertices {
        limits.product_vertices = guard;
    }
    let started = Instant::now();
    let result = match cli.global.jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(&cli, &limits)),
            Err(e) => Err(usage(format!("thread pool: {e}"))),
        },
        None => execute(&cli, &limits),
    };
    let mut rep = match result {
        Ok(rep) => rep,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, Error::Certificate(_)) {
                let _ = writeln!(stderr, "a certificate failed to verify: this is a bug in the implementation");
            }
            return exit_code(&e);
        }
    };
    if cli.global.timing {
        rep.runtime_ms = Some(started.elapsed().as_millis() as u64);
    }
    let text = match rep.render(cli.global.format.into()) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    for c in &rep.counterexamples {
        let kind = match c.severity {
            Severity::Finding => "counterexample",
            Severity::Violation => "violation of a proven statement (implementation bug)",
        };
        let _ = writeln!(stderr, "{kind}: {} on {} [{}]: {}", c.statement, c.graph, c.graph6, c.detail);
    }
    if rep.counterexamples.is_empty() {
        0
    } else {
        1
    }
}

/// Runs the CLI on the process streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
