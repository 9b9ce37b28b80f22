use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use edgereg::betti::{graded_betti, hochster_oracle, EngineConfig};
use edgereg::even::{colon_graph, EdgeMultiset};
use edgereg::graph::{EdgeListJson, Graph};
use edgereg::graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
use edgereg::homology::FieldSpec;
use edgereg::invariants::InvariantRecord;
use edgereg::monomial::{edge_ideal, symbolic_square, IdealJson, Monomial, MonomialIdeal};
use edgereg::verify::{
    default_bands, summary_tsv, GraphSource, Mutation, PowerBand, Runner, SuiteId, SuiteSpec,
};
use edgereg::Edge;

/// Directory for the persisted regularity cache of `verify`.
const CACHE_ENV: &str = "EDGEREG_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "edgereg",
    version,
    about = "Regularity of powers of edge ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matching numbers, class predicates and local regularity of a graph.
    Invariants {
        /// graph6 string or `{"n":..,"edges":[[u,v],..]}`
        graph: String,
        #[arg(long = "char", default_value = "2")]
        field: FieldSpec,
    },
    /// Monomial ideal operations; prints `{"vars":[..],"gens":[..]}`.
    Ideal {
        #[command(flatten)]
        input: IdealInput,
        #[arg(value_enum)]
        op: IdealOp,
        /// Exponent for `power` (default 2); `colon` divides `I^s` (default 1).
        #[arg(long)]
        s: Option<u32>,
        /// Monomial for `colon`, e.g. `x0*x1^2`.
        #[arg(long)]
        by: Option<String>,
    },
    /// The colon graph of `(I^{s+1} : e_1 ... e_s)`: graph6 line, then the
    /// certified new pairs as JSON.
    ColonGraph {
        graph: String,
        /// Edge multiset, e.g. `1-2,1-2,3-4`.
        #[arg(long)]
        edges: String,
    },
    /// Regularity (or the Betti table) of `I(G)^s`.
    Reg {
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long = "char", default_value = "2")]
        field: FieldSpec,
        /// Use the polarization plus Hochster route.
        #[arg(long)]
        oracle: bool,
        /// Print the whole Betti table as JSON.
        #[arg(long)]
        betti: bool,
    },
    /// Run verification suites; exit 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Suite id, or `all` for every theorem suite.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Enumerate all graphs with at most this many vertices.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Check powers up to this exponent on every graph.
    #[arg(long)]
    s: Option<u32>,
    /// Power band `VERTICES:S`, repeatable; overrides `--s`.
    #[arg(long = "band", value_parser = parse_band)]
    bands: Vec<PowerBand>,
    #[arg(long = "char", default_value = "2")]
    field: FieldSpec,
    /// Read graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    graphs: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the full reports as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true, default_value = "none")]
    inject_fault: Mutation,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct IdealInput {
    /// Edge ideal of this graph.
    #[arg(long)]
    graph: Option<String>,
    /// Ideal JSON, inline or a file path.
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealOp {
    Show,
    Power,
    Colon,
    Polarize,
    SymbolicSquare,
}

fn parse_band(s: &str) -> Result<PowerBand, String> {
    let (n, k) = s.split_once(':').ok_or("expected VERTICES:S")?;
    Ok(PowerBand {
        max_vertices: n.trim().parse().map_err(|e| format!("{e}"))?,
        s_max: k.trim().parse().map_err(|e| format!("{e}"))?,
    })
}

fn read_graph(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: EdgeListJson = serde_json::from_str(t).context("edge-list JSON")?;
        Ok(Graph::try_from(j)?)
    } else {
        Ok(parse_graph6(t)?)
    }
}

fn read_ideal(text: &str) -> Result<MonomialIdeal> {
    let raw = if Path::new(text).is_file() {
        fs::read_to_string(text)?
    } else {
        text.to_string()
    };
    let j: IdealJson = serde_json::from_str(&raw).context("ideal JSON")?;
    MonomialIdeal::try_from(j).map_err(|e| anyhow!(e))
}

fn parse_monomial(text: &str, ideal: &MonomialIdeal) -> Result<Monomial> {
    let mut exps = vec![0u8; ideal.nvars()];
    for factor in text.split('*').map(str::trim).filter(|f| !f.is_empty()) {
        let (name, power) = match factor.split_once('^') {
            Some((a, b)) => (a, b.parse::<u8>()?),
            None => (factor, 1),
        };
        let idx = ideal
            .vars()
            .iter()
            .position(|v| v.to_string() == name)
            .ok_or_else(|| anyhow!("unknown variable `{name}`"))?;
        exps[idx] += power;
    }
    Ok(Monomial::from_exponents(exps))
}

fn parse_edges(text: &str) -> Result<Vec<Edge>> {
    text.split(',')
        .map(|p| {
            let (a, b) = p
                .trim()
                .split_once('-')
                .ok_or_else(|| anyhow!("edge `{p}` is not of the form u-v"))?;
            Ok(Edge::new(a.trim().parse()?, b.trim().parse()?)?)
        })
        .collect()
}

fn cache_file(field: FieldSpec) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("regularity-char{}.json", field.characteristic())))
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let VerifyArgs {
        suite,
        n,
        s,
        bands,
        field,
        graphs,
        jobs,
        out,
        inject_fault: mutation,
    } = args;
    let ids = if suite == "all" {
        SuiteId::theorem_suites()
    } else {
        vec![suite.parse::<SuiteId>()?]
    };
    let source = match &graphs {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            GraphSource::Explicit(parse_graph6_lines(&text)?)
        }
        None => GraphSource::Enumerate { max_vertices: n },
    };
    let bands = if !bands.is_empty() {
        bands
    } else if let Some(s) = s {
        vec![PowerBand {
            max_vertices: if graphs.is_some() { usize::MAX } else { n },
            s_max: s,
        }]
    } else {
        default_bands()
    };
    let specs: Vec<SuiteSpec> = ids
        .into_iter()
        .map(|id| SuiteSpec {
            suite: id,
            graphs: source.clone(),
            bands: bands.clone(),
            field,
            jobs,
            mutation,
        })
        .collect();

    let mut runner = Runner::default();
    let cache = cache_file(field).filter(|_| mutation == Mutation::None);
    if let Some(p) = cache.as_ref().filter(|p| p.is_file()) {
        let rows: Vec<(String, u32, u32)> = serde_json::from_str(&fs::read_to_string(p)?)
            .with_context(|| format!("reading {}", p.display()))?;
        runner.context(field, mutation).import_regularities(&rows);
    }
    let outcome = runner.run(&specs)?;
    if let Some(p) = &cache {
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir)?;
        }
        let rows = runner.context(field, mutation).export_regularities();
        fs::write(p, serde_json::to_string(&rows)?)
            .with_context(|| format!("writing {}", p.display()))?;
    }

    print!("{}", summary_tsv(&outcome.reports));
    for r in outcome.reports.iter().filter(|r| !r.pass) {
        for v in &r.violations {
            eprintln!(
                "{}\t{}\ts={}\t{} vs {}\t{}",
                r.suite,
                v.graph6,
                v.s.map_or("-".into(), |s| s.to_string()),
                v.lhs,
                v.rhs,
                v.context
            );
        }
    }
    if let Some(path) = out {
        fs::write(&path, serde_json::to_string_pretty(&outcome)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if outcome.exit_code == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariants { graph, field } => {
            let g = read_graph(&graph)?;
            let rec = InvariantRecord::compute(&g, &EngineConfig::with_field(field))?;
            println!("{}", serde_json::to_string_pretty(&rec)?);
        }
        Command::Ideal { input, op, s, by } => {
            let ideal = match (&input.graph, &input.ideal) {
                (Some(g), _) => {
                    let g = read_graph(g)?;
                    if let IdealOp::SymbolicSquare = op {
                        symbolic_square(&g)
                    } else {
                        edge_ideal(&g)
                    }
                }
                (_, Some(text)) => read_ideal(text)?,
                _ => unreachable!("clap enforces one input"),
            };
            let result = match op {
                IdealOp::Show => ideal,
                IdealOp::Power => ideal.power(s.unwrap_or(2))?,
                IdealOp::Colon => {
                    let by = by.ok_or_else(|| anyhow!("colon needs --by"))?;
                    let m = parse_monomial(&by, &ideal)?;
                    ideal.power(s.unwrap_or(1))?.colon(&m)
                }
                IdealOp::Polarize => ideal.polarize().0,
                IdealOp::SymbolicSquare => {
                    if input.graph.is_none() {
                        bail!("symbolic-square needs --graph");
                    }
                    ideal
                }
            };
            println!("{}", serde_json::to_string(&IdealJson::from(&result))?);
        }
        Command::ColonGraph { graph, edges } => {
            let g = read_graph(&graph)?;
            let m = EdgeMultiset::new(&g, &parse_edges(&edges)?)?;
            let r = colon_graph(&g, &m);
            println!("{}", emit_graph6(&r.graph));
            let pairs: Vec<_> = r
                .new_pairs
                .iter()
                .map(|(u, v, cert)| {
                    json!({
                        "u": u,
                        "v": v,
                        "path": cert.path,
                        "edge_assignment": cert.edge_assignment.iter().map(|e| [e.u, e.v]).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string(&pairs)?);
        }
        Command::Reg {
            graph,
            power,
            field,
            oracle,
            betti,
        } => {
            let g = read_graph(&graph)?;
            if !g.has_edges() {
                bail!("the graph has no edges, so I(G) is the zero ideal");
            }
            let ideal = edge_ideal(&g).power(power)?;
            let cfg = EngineConfig::with_field(field);
            let table = if oracle {
                hochster_oracle(&ideal, &cfg)?
            } else {
                graded_betti(&ideal, &cfg)?
            };
            if betti {
                println!("{}", serde_json::to_string(&table)?);
            } else {
                println!("{}", table.regularity().expect("nonzero ideal"));
            }
        }
        Command::Verify(args) => return verify(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
