use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use clique_spectra::bounds::{equality_case, evaluate_bounds, BoundSuite, Tolerances};
use clique_spectra::graph::{complete_multipartite, gnp_random, parse_dimacs, parse_edge_list, turan_graph};
use clique_spectra::spectral::{spectral_radius_of_catalog, DEFAULT_MAX_ITER, DEFAULT_TOL};
use clique_spectra::verify::{emit_report, equality_census, render_census, run_suite, ReportFormat, SuiteConfig};
use clique_spectra::{build_catalog, Error, Graph, SpectralOptions};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NONCONVERGED: u8 = 3;

#[derive(Parser)]
#[command(name = "clique-spectra", version, about = "Clique-tensor spectral radii and localized Turán-type bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral radius of the t-clique tensor with its certified enclosure.
    Spectral {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
    /// Every applicable bound at order t, with equality flags.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        eq_tol: f64,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// t-clique counts, clique number and local clique orders.
    Cliques {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Cliques listed individually.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive verification over all labeled graphs.
    Verify(VerifyArgs),
    /// Write a generated graph.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist, global = true)]
        format: Format,
        #[arg(long, global = true)]
        json: bool,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, or "-" for standard input.
    graph: String,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dimacs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n_max: usize,
    /// Smallest vertex count swept; defaults to --n-max.
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    t: Vec<usize>,
    /// Include the bounds that need the spectral radius.
    #[arg(long)]
    spectral: bool,
    /// Skip the weighted-sum test vectors.
    #[arg(long)]
    no_battery: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Random graphs compared against the variational oracle.
    #[arg(long, default_value_t = 0)]
    random_trials: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    eq_tol: f64,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV export, one row per evaluated bound.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print the equality census table.
    #[arg(long)]
    census: bool,
    /// Print the report as JSON on standard output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Turán graph T(n, r).
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Complete multipartite graph from comma-separated part sizes.
    Multipartite {
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Erdős–Rényi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CLIQUE_SPECTRA_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Exit(code)) => ExitCode::from(code),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectral {
            input,
            t,
            tol,
            max_iter,
            json,
        } => cmd_spectral(&read_graph(&input)?, t, SpectralOptions { tol, max_iter }, json),
        Command::Bounds {
            input,
            t,
            tol,
            eq_tol,
            json,
            csv,
        } => cmd_bounds(&read_graph(&input)?, t, tol, eq_tol, json, csv),
        Command::Cliques { input, t, limit, json } => cmd_cliques(&read_graph(&input)?, t, limit, json),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate { kind, out, format, json } => cmd_generate(kind, out.as_deref(), format, json),
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = if input.graph == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.graph).map_err(|e| Failure::Usage(format!("{}: {e}", input.graph)))?
    };
    let parsed = match input.format {
        Format::Edgelist => parse_edge_list(&text),
        Format::Dimacs => parse_dimacs(&text),
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", input.graph)))
}

fn require_order(t: usize) -> Result<(), Failure> {
    if t < 2 {
        return Err(Failure::Usage(format!("--t must be at least 2, got {t}")));
    }
    Ok(())
}

fn cmd_spectral(g: &Graph, t: usize, opts: SpectralOptions, json: bool) -> Result<(), Failure> {
    require_order(t)?;
    let catalog = build_catalog(g, t)?;
    let r = spectral_radius_of_catalog(&catalog, opts)?;
    if json {
        println!("{}", r.to_json());
    } else {
        println!("rho_{t} = {:.10} [{:.10}, {:.10}]", r.rho, r.lower, r.upper);
        if catalog.is_empty() {
            println!("note: no {t}-cliques");
        } else {
            println!("iterations = {}, converged = {}", r.iterations, r.converged);
            println!("component = {:?}", r.component);
        }
    }
    if !r.converged {
        eprintln!("power iteration did not converge: enclosure width {:.3e}", r.width());
        return Err(Failure::Exit(EXIT_NONCONVERGED));
    }
    Ok(())
}

fn fmt_flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn bounds_table(suite: &BoundSuite) -> String {
    let mut s = format!(
        "{:<34} {:>2} {:<12} {:>16} {:>16} {:>12} {:>5} {:>8} {:>10}\n",
        "bound", "t", "label", "lhs", "rhs", "gap", "holds", "equality", "structural"
    );
    for b in &suite.bounds {
        s.push_str(&format!(
            "{:<34} {:>2} {:<12} {:>16.10} {:>16.10} {:>12.3e} {:>5} {:>8} {:>10}\n",
            b.name.as_str(),
            b.t.map_or("-".to_string(), |t| t.to_string()),
            b.label.as_deref().unwrap_or("-"),
            b.lhs,
            b.rhs,
            b.gap,
            b.holds,
            b.equality_numeric,
            fmt_flag(b.equality_structural)
        ));
    }
    s
}

fn cmd_bounds(g: &Graph, t: usize, tol: f64, eq_tol: f64, json: bool, csv: bool) -> Result<(), Failure> {
    require_order(t)?;
    let tolerances = Tolerances { slack: 1e-9, eq_tol };
    let suite = evaluate_bounds(
        g,
        t,
        SpectralOptions {
            tol,
            ..SpectralOptions::default()
        },
        &tolerances,
    )?;
    if json {
        println!("{}", suite.to_json());
    } else if csv {
        print!("{}", suite.to_csv());
    } else {
        print!("{}", bounds_table(&suite));
        if t > suite.omega {
            println!("note: t = {t} exceeds omega = {}; only graph-level rows apply", suite.omega);
        }
        println!("kind = {} (t = {t}, omega = {})", suite.kind, suite.omega);
    }
    if suite.violations().next().is_some() {
        return Err(Failure::Exit(EXIT_VIOLATION));
    }
    Ok(())
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_cliques(g: &Graph, t: usize, limit: usize, json: bool) -> Result<(), Failure> {
    if t < 1 {
        return Err(Failure::Usage("--t must be at least 1".into()));
    }
    let catalog = build_catalog(g, t)?;
    if json {
        println!("{}", catalog.to_json());
        return Ok(());
    }
    println!("|C_{t}|={}, omega={}", catalog.len(), catalog.omega);
    println!("c_{t}: {}", join(&catalog.per_vertex_count));
    println!("alpha: {}", join(&catalog.per_vertex_alpha));
    if t >= 2 {
        println!("kind: {}", equality_case(&catalog).kind);
    }
    for (c, a) in catalog.cliques.iter().zip(&catalog.per_clique_alpha).take(limit) {
        println!("  {{{}}} alpha={a}", c.vertices().iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    }
    if catalog.len() > limit {
        println!("  ... {} more", catalog.len() - limit);
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = SuiteConfig {
        n_min: args.n_min.unwrap_or(args.n_max),
        n_max: args.n_max,
        t_values: args.t,
        spectral: args.spectral,
        weighted_battery: !args.no_battery,
        tol: args.tol,
        eq_tol: args.eq_tol,
        seed: args.seed,
        random_trials: args.random_trials,
        parallelism: args.jobs,
        keep_rows: args.csv.is_some(),
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    if let Some(path) = &args.out {
        emit_report(&report, ReportFormat::Json, path)?;
    }
    if let Some(path) = &args.csv {
        emit_report(&report, ReportFormat::Csv, path)?;
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary());
        for v in report.violations.iter().take(20) {
            println!("violation: {} {} t={:?} lhs={} rhs={}", v.graph, v.bound, v.t, v.lhs, v.rhs);
        }
        if args.census {
            print!("{}", render_census(&equality_census(&report)));
        }
        log::info!("verification took {:.2?}", report.runtime.0);
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Exit(EXIT_VIOLATION))
    }
}

fn cmd_generate(kind: GenerateKind, out: Option<&Path>, format: Format, json: bool) -> Result<(), Failure> {
    let g = match kind {
        GenerateKind::Turan { n, r } => turan_graph(n, r)?,
        GenerateKind::Multipartite { sizes } => complete_multipartite(&sizes)?,
        GenerateKind::Gnp { n, p, seed } => gnp_random(n, p, seed)?,
    };
    let text = if json {
        let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
        serde_json::to_string_pretty(&json!({ "n": g.n(), "m": g.edge_count(), "edges": edges })).expect("graph serializes") + "\n"
    } else {
        match format {
            Format::Edgelist => g.to_edge_list(),
            Format::Dimacs => g.to_dimacs(),
        }
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
