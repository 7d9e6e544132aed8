use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chordal_locc::criteria::{decide, decision_frame, DecisionOptions, Direction, Status, Verdict};
use chordal_locc::decomposition::{chordal_decompose, feasibility_search, FeasibilityOptions, FeasibilityOutcome, SupportPattern};
use chordal_locc::families::{generate_seeded, FamilySpec};
use chordal_locc::graph::{
    chordal_sandwich, eta_plus_bounds, graph_parameters, is_chordal, maximal_cliques, simplicial_vertices, Chordality,
    Graph, GraphParameters, SearchBudget,
};
use chordal_locc::linalg::Tolerance;
use chordal_locc::locc::{simulate, OneWayProtocol, ProtocolReport};
use chordal_locc::states::{build_graphs, validate_orthonormal, ProductStateSet};

const EXIT_INDISTINGUISHABLE: u8 = 10;
const EXIT_UNKNOWN: u8 = 20;

#[derive(Parser, Debug)]
#[command(name = "chordal-locc", version, about = "One-way LOCC distinguishability of bipartite product states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input JSON (state set, or graph for analyze/export-dot). Reads stdin when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Output file. Writes stdout when omitted.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "alice-first", global = true)]
    direction: DirectionArg,
    #[arg(long, default_value_t = 1e-9, global = true)]
    zero_tol: f64,
    #[arg(long, default_value_t = 1e-8, global = true)]
    psd_tol: f64,
    #[arg(long, default_value_t = 1e-7, global = true)]
    rank_tol: f64,
    /// Iteration cap of the numerical feasibility search.
    #[arg(long, default_value_t = 50_000, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    max_iter: u64,
    /// Largest number of free edges explored by the chordal sandwich search.
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    sandwich_budget: u64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirectionArg {
    AliceFirst,
    BobFirst,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::AliceFirst => Direction::AliceFirst,
            DirectionArg::BobFirst => Direction::BobFirst,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graphs, chordality and graph parameters.
    Analyze,
    /// Verdict with certificate; exit 0 distinguishable, 10 indistinguishable, 20 unknown.
    Decide,
    /// Clique-supported rank-one decomposition of the Alice Gram matrix.
    Decompose,
    /// Protocol and its simulation report, or replay a saved protocol.
    Protocol {
        /// Simulate this protocol JSON instead of synthesizing one.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// State-set JSON of a family, e.g. `bennett`, `bullseye:5`, `bennett-subset:2,4,6,8,9`.
    Generate { family: String },
    /// Alice graph, Bob graph and Bob complement in DOT.
    ExportDot,
}

impl Common {
    fn options(&self) -> Result<DecisionOptions> {
        let tol = Tolerance {
            zero_tol: self.zero_tol,
            psd_tol: self.psd_tol,
            rank_tol: self.rank_tol,
        };
        tol.validate()?;
        let budget = SearchBudget {
            sandwich_free_edges: self.sandwich_budget as usize,
            ..SearchBudget::default()
        };
        let feasibility = FeasibilityOptions {
            max_iter: self.max_iter as usize,
            tol,
            ..FeasibilityOptions::default()
        };
        Ok(DecisionOptions { tol, budget, feasibility })
    }

    fn read_input(&self) -> Result<String> {
        match &self.input {
            Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).context("reading stdin")?;
                Ok(s)
            }
        }
    }

    fn states(&self, tol: &Tolerance) -> Result<ProductStateSet> {
        let text = self.read_input()?;
        Ok(ProductStateSet::from_json(&text, tol)?)
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    fn write_json(&self, v: &Value) -> Result<()> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.write(&s)
    }
}

enum Input {
    States(ProductStateSet),
    Graph(Graph),
}

fn read_states_or_graph(common: &Common, tol: &Tolerance) -> Result<Input> {
    let text = common.read_input()?;
    let value: Value = serde_json::from_str(&text).context("input is not JSON")?;
    if value.get("states").is_some() {
        Ok(Input::States(ProductStateSet::from_json(&text, tol)?))
    } else if value.get("edges").is_some() {
        Ok(Input::Graph(serde_json::from_value(value).context("malformed graph JSON")?))
    } else {
        bail!("input is neither a state set (\"states\") nor a graph (\"edges\")")
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn chordality_json(g: &Graph) -> Value {
    match is_chordal(g) {
        Chordality::Chordal(o) => json!({ "chordal": true, "elimination_ordering": one_based(&o.order) }),
        Chordality::NotChordal { cycle } => json!({ "chordal": false, "chordless_cycle": one_based(&cycle) }),
    }
}

fn parameters_json(p: &GraphParameters) -> Value {
    json!({
        "alpha": p.alpha,
        "independent_set": one_based(&p.alpha_witness),
        "chi": p.chi,
        "coloring": one_based(&p.coloring.colors),
        "edge_clique_cover_number": p.cc_edge,
        "clique_cover": p.cover.cliques.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
        "eta_plus": { "lower": p.eta_plus_lower, "upper": p.eta_plus_upper },
    })
}

fn graph_report(g: &Graph, budget: &SearchBudget) -> Value {
    let params = match graph_parameters(g, budget) {
        Ok(p) => parameters_json(&p),
        Err(e) => {
            log::warn!("graph parameters: {e}");
            json!({ "error": e.to_string() })
        }
    };
    json!({
        "graph": g,
        "chordality": chordality_json(g),
        "simplicial_vertices": one_based(&simplicial_vertices(g)),
        "maximal_cliques": maximal_cliques(g).iter().map(|c| one_based(c)).collect::<Vec<_>>(),
        "parameters": params,
    })
}

fn analyze(common: &Common) -> Result<u8> {
    let opts = common.options()?;
    let out = match read_states_or_graph(common, &opts.tol)? {
        Input::Graph(g) => json!({ "graph": graph_report(&g, &opts.budget) }),
        Input::States(set) => {
            let set = decision_frame(&set, common.direction.into());
            let graphs = build_graphs(&set, &opts.tol);
            let ortho = validate_orthonormal(&set, &graphs, &opts.tol)?;
            for (i, j, z) in &ortho.near_threshold {
                log::warn!("overlap of states {} and {} is {z:.3e}, close to the zero threshold", i + 1, j + 1);
            }
            let gbc = graphs.g_bob.complement();
            let eta = eta_plus_bounds(&gbc, &opts.budget).map_err(|e| e.to_string());
            let sandwich = chordal_sandwich(&graphs.g_alice, &gbc, &opts.budget)
                .map(|g| g.map(|g| serde_json::to_value(&g).unwrap_or(Value::Null)))
                .map_err(|e| e.to_string());
            json!({
                "dA": set.d_a(),
                "dB": set.d_b(),
                "n": set.len(),
                "labels": set.labels(),
                "max_overlap": ortho.max_overlap,
                "alice": graph_report(&graphs.g_alice, &opts.budget),
                "bob": graph_report(&graphs.g_bob, &opts.budget),
                "bob_complement": graph_report(&gbc, &opts.budget),
                "eta_plus_bob_complement": match eta {
                    Ok(e) => json!({ "lower": e.lower, "upper": e.upper, "certified": e.certified }),
                    Err(e) => json!({ "error": e }),
                },
                "chordal_sandwich": match sandwich {
                    Ok(g) => json!(g),
                    Err(e) => json!({ "error": e }),
                },
            })
        }
    };
    common.write_json(&out)?;
    Ok(0)
}

fn exit_code(v: &Verdict) -> u8 {
    match v.status {
        Status::Distinguishable => 0,
        Status::Indistinguishable => EXIT_INDISTINGUISHABLE,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn run_decide(common: &Common) -> Result<u8> {
    let opts = common.options()?;
    let set = common.states(&opts.tol)?;
    let v = decide(&set, common.direction.into(), &opts)?;
    match v.kind() {
        Some(k) => log::info!("{:?} via {}", v.status, k.as_str()),
        None => log::info!("{:?}", v.status),
    }
    for d in &v.diagnostics {
        log::info!("{d}");
    }
    common.write_json(&v.to_json())?;
    Ok(exit_code(&v))
}

fn run_decompose(common: &Common) -> Result<u8> {
    let opts = common.options()?;
    let set = decision_frame(&common.states(&opts.tol)?, common.direction.into());
    let graphs = build_graphs(&set, &opts.tol);
    validate_orthonormal(&set, &graphs, &opts.tol)?;
    let gbc = graphs.g_bob.complement();
    let mut candidates = vec![("alice", graphs.g_alice.clone()), ("bob-complement", gbc.clone())];
    match chordal_sandwich(&graphs.g_alice, &gbc, &opts.budget) {
        Ok(Some(g)) => candidates.push(("sandwich", g)),
        Ok(None) => {}
        Err(e) => log::warn!("chordal sandwich: {e}"),
    }
    for (name, g) in candidates {
        if let Chordality::Chordal(peo) = is_chordal(&g) {
            let d = chordal_decompose(&graphs.alice_gram, &SupportPattern::new(g.clone()), &peo, &opts.tol)?;
            log::info!("chordal peeling over the {name} pattern: {} terms", d.terms.len());
            common.write_json(&json!({ "method": "chordal", "pattern": name, "graph": g, "decomposition": d }))?;
            return Ok(0);
        }
    }
    let cliques = maximal_cliques(&gbc);
    match feasibility_search(&graphs.alice_gram, &cliques, &opts.feasibility) {
        FeasibilityOutcome::Found(d) => {
            log::info!("feasibility search found {} terms", d.terms.len());
            common.write_json(&json!({ "method": "feasibility", "pattern": "bob-complement", "decomposition": d }))?;
            Ok(0)
        }
        FeasibilityOutcome::Unknown(diag) => {
            log::warn!("no decomposition found: {}", diag.reason);
            common.write_json(&json!({ "method": "feasibility", "decomposition": null, "diagnostics": diag }))?;
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn report_json(r: &ProtocolReport) -> Value {
    json!({
        "min_success": r.min_success,
        "per_state_success": r.per_state_success,
        "support_violations": r.support_violations,
        "perfect": r.perfect,
    })
}

fn run_protocol(common: &Common, replay: Option<&PathBuf>) -> Result<u8> {
    let opts = common.options()?;
    let set = common.states(&opts.tol)?;
    if let Some(path) = replay {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: Value = serde_json::from_str(&text)?;
        let body = value.get("protocol").cloned().unwrap_or(value);
        let protocol: OneWayProtocol = serde_json::from_value(body).context("malformed protocol JSON")?;
        let frame = decision_frame(&set, common.direction.into());
        let r = simulate(&protocol, &frame, &opts.tol);
        log::info!("replayed protocol: min success {:.12}", r.min_success);
        common.write_json(&json!({ "simulation": report_json(&r) }))?;
        return Ok(if r.perfect { 0 } else { EXIT_UNKNOWN });
    }
    let v = decide(&set, common.direction.into(), &opts)?;
    match (&v.protocol, &v.simulation) {
        (Some(p), Some(r)) => {
            log::info!("protocol with {} Alice outcomes, min success {:.12}", p.alice.num_outcomes(), r.min_success);
            common.write_json(&json!({ "protocol": p.to_json_value(set.labels()), "simulation": report_json(r) }))?;
            Ok(0)
        }
        _ => {
            log::warn!("no protocol: verdict is {:?}", v.status);
            common.write_json(&v.to_json())?;
            Ok(exit_code(&v))
        }
    }
}

fn run_generate(common: &Common, family: &str) -> Result<u8> {
    let spec: FamilySpec = family.parse()?;
    let set = generate_seeded(&spec, common.seed)?;
    log::info!("{spec}: {} states in C^{} x C^{}", set.len(), set.d_a(), set.d_b());
    common.write_json(&serde_json::to_value(&set)?)?;
    Ok(0)
}

fn run_export_dot(common: &Common) -> Result<u8> {
    let opts = common.options()?;
    let text = match read_states_or_graph(common, &opts.tol)? {
        Input::Graph(g) => g.to_dot("G", None),
        Input::States(set) => {
            let set = decision_frame(&set, common.direction.into());
            let graphs = build_graphs(&set, &opts.tol);
            let labels = Some(set.labels());
            [
                graphs.g_alice.to_dot("G_A", labels),
                graphs.g_bob.to_dot("G_B", labels),
                graphs.g_bob.complement().to_dot("complement_G_B", labels),
            ]
            .join("\n")
        }
    };
    common.write(&text)?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze => analyze(&cli.common),
        Command::Decide => run_decide(&cli.common),
        Command::Decompose => run_decompose(&cli.common),
        Command::Protocol { replay } => run_protocol(&cli.common, replay.as_ref()),
        Command::Generate { family } => run_generate(&cli.common, family),
        Command::ExportDot => run_export_dot(&cli.common),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::from(1)
        }
    }
}
