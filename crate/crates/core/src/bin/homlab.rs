use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use homlab::families::FamilySpec;
use homlab::harness::{self, Cache, ReportFormat, Session};
use homlab::homology::{self, Field};
use homlab::{graph, Error, Graph, Guards, Result, SimplicialComplex};

#[derive(Parser)]
#[command(name = "homlab", version, about = "Hom complexes, test graphs and exact homology")]
struct Cli {
    /// Limit on the number of Hom poset elements.
    #[arg(long, global = true)]
    guard_elements: Option<usize>,
    /// Coefficients for homology.
    #[arg(long, global = true, default_value = "z")]
    field: Field,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Cache directory; defaults to $HOMLAB_CACHE_DIR when set.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Accepted for scripts. Every algorithm here is deterministic.
    #[arg(long, global = true)]
    seedless: bool,
    /// JSON file with guard values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a family name such as T(1,3) or a JSON file.
    Construct { graph: String },
    /// Enumerate Hom(G, H).
    Hom { source: String, target: String },
    /// Homology of Hom(G, H), of a complex file, or of a built-in complex.
    Homology {
        source: Option<String>,
        target: Option<String>,
        #[arg(long, conflicts_with_all = ["source", "fixture"])]
        complex: Option<PathBuf>,
        /// klein, s2, cone, square or octahedron.
        #[arg(long, conflicts_with = "source")]
        fixture: Option<String>,
    },
    /// Exact chromatic number.
    Chromatic { graph: String },
    /// Run experiments (all when none are named); fails if any fail.
    Verify {
        ids: Vec<String>,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
    /// Run experiments and render a report.
    Report {
        ids: Vec<String>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
    ListExperiments,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn load_graph(arg: &str, guards: &Guards) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        return Graph::from_json(&std::fs::read_to_string(path)?);
    }
    arg.parse::<FamilySpec>()?.build(guards)
}

fn session(cli: &Cli) -> Result<Session> {
    let mut guards = match &cli.config {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
        None => Guards::default(),
    };
    if let Some(n) = cli.guard_elements {
        guards.hom_elements = n;
    }
    Ok(Session { guards, cache: Cache::from_env_or(cli.cache_dir.as_deref())? })
}

fn fixture_complex(name: &str, guards: &Guards) -> Result<SimplicialComplex> {
    match name {
        "klein" => Ok(homology::klein_bottle()),
        "s2" => Ok(homology::sphere2()),
        "cone" => Ok(homology::cone()),
        other => Ok(homlab::families::fixture(other, guards)?.0),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let s = session(cli)?;
    let g = &s.guards;
    match &cli.command {
        Command::Construct { graph: spec } => {
            let gr = load_graph(spec, g)?;
            if cli.json {
                println!("{}", gr.to_json());
            } else {
                let st = graph::graph_stats(&gr);
                println!(
                    "vertices {}  edges {}  loops {}  max degree {}  connected {}",
                    gr.n(),
                    gr.edge_count(),
                    gr.loop_count(),
                    st.max_degree,
                    st.connected
                );
            }
        }
        Command::Hom { source, target } => {
            let (a, b) = (load_graph(source, g)?, load_graph(target, g)?);
            let ctx = harness::Ctx::new(&s);
            let hp = ctx.hom(&a, &b)?;
            if cli.json {
                print!("{}", hp.to_json_lines());
            } else {
                let top = (0..hp.len()).map(|i| hp.rank(i)).max();
                println!("elements {}  atoms {}  top rank {}", hp.len(), hp.atoms().len(), top.map_or("-".into(), |r| r.to_string()));
            }
        }
        Command::Homology { source, target, complex, fixture } => {
            let h = match (source, target, complex, fixture) {
                (Some(a), Some(b), None, None) => {
                    let ctx = harness::Ctx::new(&s);
                    ctx.hom_homology(&load_graph(a, g)?, &load_graph(b, g)?, cli.field)?
                }
                (None, None, Some(path), None) => {
                    let x = SimplicialComplex::from_json(&std::fs::read_to_string(path)?)?;
                    homology::complex_homology(&x, cli.field, g)?
                }
                (None, None, None, Some(name)) => homology::complex_homology(&fixture_complex(name, g)?, cli.field, g)?,
                _ => return Err(Error::InvalidInput("give SOURCE TARGET, --complex FILE or --fixture NAME".into())),
            };
            if cli.json {
                println!("{}", h.to_json());
            } else {
                println!("{}", harness::describe(&h));
                println!("homological connectivity {:?}", homology::homology_connectivity(&h));
            }
        }
        Command::Chromatic { graph: spec } => {
            let chi = graph::chromatic_number(&load_graph(spec, g)?);
            if cli.json {
                println!("{}", serde_json::json!({ "chromatic_number": chi.finite() }));
            } else {
                println!("{chi}");
            }
        }
        Command::Verify { ids, workers } => {
            let reports = run_ids(ids, &s, *workers)?;
            let format = if cli.json { ReportFormat::Json } else { ReportFormat::Text };
            print!("{}", harness::render(&reports, format));
            return Ok(reports.iter().all(|r| r.pass));
        }
        Command::Report { ids, format, workers } => {
            let reports = run_ids(ids, &s, *workers)?;
            print!("{}", harness::render(&reports, *format));
        }
        Command::ListExperiments => {
            for e in harness::registry() {
                let c = e.criterion.map_or("-".into(), |c| c.to_string());
                println!("{:<24} {:>2}  {}", e.id, c, e.description);
            }
        }
    }
    Ok(true)
}

fn run_ids(ids: &[String], s: &Session, workers: usize) -> Result<Vec<harness::RunReport>> {
    let all: Vec<&str>;
    let chosen: Vec<&str> = if ids.is_empty() {
        all = harness::registry().iter().map(|e| e.id).collect();
        all
    } else {
        ids.iter().map(String::as_str).collect()
    };
    harness::run_all(&chosen, s, workers)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("homlab: {e}");
            ExitCode::from(2)
        }
    }
}
