use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use specgraph::constructions::{
    build_clarifying_example, catalog_by_name, method2_exchange, CatalogId, ClarifyingBlocks, Composition, Slot,
};
use specgraph::discrete_spectrum::{ln_charpoly, proposition_check};
use specgraph::graph::{format, MetricGraph};
use specgraph::mfunction::{detectable_spectrum, m_function, steklov_equivalent, steklov_sweep, DEFAULT_SAMPLES};
use specgraph::numfmt::format_sig;
use specgraph::search::{classify, enumerate_connected_multi, enumerate_connected_simple, family_report, ClassifyKey};
use specgraph::secular::{secular_poly, spectrum_report};

const DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "specgraph", version, about = "Spectral computations and isospectrality certificates for metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the secular polynomial of an equilateral (or integer-length) graph.
    Secular { file: PathBuf },
    /// Print fundamental roots `k multiplicity` and the multiplicity of λ = 0.
    Spectrum {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Compare two graphs; exit 0 when they match, 1 when they do not.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Metric)]
        mode: Mode,
        /// Comparison tolerance for `--mode steklov`.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print the M-function at one spectral parameter, row by row.
    Mfun {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Tabulate Steklov eigenvalues over a λ grid as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lmin: f64,
        #[arg(long, allow_hyphen_values = true)]
        lmax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// List detectable eigenvalues `k multiplicity` up to `--kmax`.
    Detect {
        file: PathBuf,
        #[arg(long, default_value_t = 10.0)]
        kmax: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Enumerate small graphs and group them into isospectral families.
    Search {
        #[arg(long)]
        vertices: usize,
        /// Allow loops and parallel edges.
        #[arg(long)]
        multi: bool,
        #[arg(long, default_value_t = 4, requires = "multi")]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = Key::Secular)]
        key: Key,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Emit a named graph in the text format.
    Catalog {
        /// Catalog id such as K5, S4, C3, path3, Gamma1, fig6_eight.
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        list: bool,
    },
    /// Build graphs by surgery and the exchange constructions.
    Construct {
        #[command(subcommand)]
        op: Construct,
    },
    /// Check a graph file; exit 0 when valid.
    Validate { file: PathBuf },
}

#[derive(Args)]
struct Jobs {
    /// Worker threads.
    #[arg(long, env = "SPECGRAPH_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Construct {
    /// Split a vertex; parts are endpoint ids (2e, 2e+1 for edge e in file order).
    Chop {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        /// Semicolon-separated groups, e.g. `0,2;4,6`.
        #[arg(long)]
        parts: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge contacts of two graphs; pairs are contact positions, e.g. `0:0,1:1`.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach slot graphs to a frame and swap two of them.
    Exchange {
        #[arg(long)]
        frame: PathBuf,
        /// `file@v,v,...`: slot graph and the frame vertices its contacts attach to.
        #[arg(long = "slot", required = true)]
        slots: Vec<String>,
        /// Two slot indices, e.g. `0,1`.
        #[arg(long)]
        swap: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The clarifying pair built from unit blocks.
    Clarify {
        #[arg(long, default_value = "1,4")]
        split1: String,
        #[arg(long, default_value = "2,3")]
        split2: String,
        /// Which member of the pair to emit.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Metric,
    Discrete,
    Proposition,
    Steklov,
}

#[derive(Clone, Copy, ValueEnum)]
enum Key {
    Secular,
    Ln,
}

type CliResult = Result<ExitCode, String>;

fn load(path: &Path) -> Result<MetricGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("not an index: `{t}`")))
        .collect()
}

fn pair(s: &str) -> Result<(usize, usize), String> {
    match usizes(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two comma-separated numbers, got `{s}`")),
    }
}

fn with_pool<T: Send>(jobs: &Jobs, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs.jobs {
        if n == 0 {
            return Err("--jobs must be at least 1".into());
        }
        builder = builder.num_threads(n);
    }
    Ok(builder.build().map_err(|e| e.to_string())?.install(f))
}

fn run(cli: Cli) -> CliResult {
    let err = |e: specgraph::error::Error| e.to_string();
    match cli.command {
        Command::Secular { file } => {
            println!("{}", secular_poly(&load(&file)?).map_err(err)?);
        }
        Command::Spectrum { file, tol } => {
            let r = spectrum_report(&load(&file)?, tol).map_err(err)?;
            for (k, m) in &r.fundamental_roots {
                println!("{} {m}", format_sig(*k, DIGITS));
            }
            println!("lambda0_multiplicity {}", r.components);
        }
        Command::Compare { first, second, mode, tol } => {
            let (g1, g2) = (load(&first)?, load(&second)?);
            return compare(&g1, &g2, mode, tol);
        }
        Command::Mfun { file, lambda } => {
            let m = m_function(&load(&file)?, lambda).map_err(err)?;
            if !m.regular {
                println!("singular");
                return Ok(ExitCode::from(1));
            }
            for row in m.matrix.row_iter() {
                let cells: Vec<String> = row.iter().map(|x| format_sig(*x, DIGITS)).collect();
                println!("{}", cells.join(" "));
            }
        }
        Command::Sweep { file, lmin, lmax, steps, out, jobs } => {
            let g = load(&file)?;
            let curve = with_pool(&jobs, || steklov_sweep(&g, lmin, lmax, steps))?.map_err(err)?;
            emit(&curve.to_csv(), out.as_deref())?;
        }
        Command::Detect { file, kmax, step, tol } => {
            let spec = detectable_spectrum(&load(&file)?, kmax, step, tol).map_err(err)?;
            for w in &spec.warnings {
                eprintln!("warning: {w}");
            }
            for (k, m) in &spec.roots {
                println!("{} {m}", format_sig(*k, DIGITS));
            }
        }
        Command::Search { vertices, multi, max_edges, key, out, jobs } => {
            let key = match key {
                Key::Secular => ClassifyKey::Secular,
                Key::Ln => ClassifyKey::Ln,
            };
            let report = with_pool(&jobs, || {
                let graphs = if multi {
                    enumerate_connected_multi(vertices, max_edges)?
                } else {
                    enumerate_connected_simple(vertices)?
                };
                classify(&graphs, key).map(|f| family_report(&f))
            })?
            .map_err(err)?;
            emit(&report, out.as_deref())?;
        }
        Command::Catalog { id, list } => {
            if list {
                for id in CatalogId::all() {
                    println!("{id}");
                }
            } else {
                let id = id.ok_or("catalog needs an id or --list")?;
                print!("{}", format::write(&catalog_by_name(&id).map_err(err)?));
            }
        }
        Command::Construct { op } => construct(op)?,
        Command::Validate { file } => {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let g = format::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let violations = g.validate();
            if violations.is_empty() {
                println!(
                    "valid: {} vertices, {} edges, {} contacts",
                    g.vertex_count(),
                    g.edge_count(),
                    g.contacts().len()
                );
            } else {
                for v in violations {
                    println!("{v}");
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(g1: &MetricGraph, g2: &MetricGraph, mode: Mode, tol: f64) -> CliResult {
    let err = |e: specgraph::error::Error| e.to_string();
    match mode {
        Mode::Metric => {
            let (p1, p2) = (secular_poly(g1).map_err(err)?, secular_poly(g2).map_err(err)?);
            let (c1, c2) = (g1.components(), g2.components());
            if p1 == p2 && c1 == c2 {
                println!("isospectral\n{p1}");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not isospectral\n{p1}\n{p2}");
                if c1 != c2 {
                    println!("components: {c1} vs {c2}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Mode::Discrete => {
            let c1 = ln_charpoly(&g1.to_discrete()).map_err(err)?;
            let c2 = ln_charpoly(&g2.to_discrete()).map_err(err)?;
            if c1 == c2 {
                println!("isospectral\n{c1}");
            } else {
                println!("not isospectral\n{c1}\n{c2}");
            }
            Ok(verdict(c1 == c2))
        }
        Mode::Proposition => {
            let v = proposition_check(g1, g2).map_err(err)?;
            println!("{}", if v.isospectral { "isospectral" } else { "not isospectral" });
            println!("{}\n{}", v.charpolys.0, v.charpolys.1);
            println!("betti: {} {}", v.betti.0, v.betti.1);
            Ok(verdict(v.isospectral))
        }
        Mode::Steklov => {
            let pairing: Vec<usize> = (0..g1.contacts().len()).collect();
            let eq = steklov_equivalent(g1, g2, &pairing, &DEFAULT_SAMPLES, tol).map_err(err)?;
            println!("{}", if eq.equivalent { "equivalent" } else { "not equivalent" });
            println!("max_residual {}", format_sig(eq.max_residual, DIGITS));
            Ok(verdict(eq.equivalent))
        }
    }
}

fn construct(op: Construct) -> Result<(), String> {
    let err = |e: specgraph::error::Error| e.to_string();
    let (g, out) = match op {
        Construct::Chop { file, vertex, parts, out } => {
            let parts: Vec<Vec<usize>> = parts.split(';').map(usizes).collect::<Result<_, _>>()?;
            (load(&file)?.chop_vertex(vertex, &parts).map_err(err)?, out)
        }
        Construct::Glue { first, second, pairs, out } => {
            let pairing: Vec<(usize, usize)> = pairs
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    let (a, b) = t.split_once(':').ok_or_else(|| format!("expected i:j, got `{t}`"))?;
                    Ok((
                        a.trim().parse().map_err(|_| format!("not an index: `{a}`"))?,
                        b.trim().parse().map_err(|_| format!("not an index: `{b}`"))?,
                    ))
                })
                .collect::<Result<_, String>>()?;
            (load(&first)?.glue(&load(&second)?, &pairing).map_err(err)?, out)
        }
        Construct::Exchange { frame, slots, swap, out } => {
            let slots: Vec<Slot> = slots
                .iter()
                .map(|s| {
                    let (file, attach) = s.rsplit_once('@').ok_or_else(|| format!("expected file@v,v,..., got `{s}`"))?;
                    Ok(Slot { graph: load(Path::new(file))?, attach: usizes(attach)? })
                })
                .collect::<Result<_, String>>()?;
            let host = Composition::new(load(&frame)?, slots).map_err(err)?;
            let (i, j) = pair(&swap)?;
            (method2_exchange(&host, i, j).map_err(err)?, out)
        }
        Construct::Clarify { split1, split2, which, out } => {
            let (g1, g2) =
                build_clarifying_example(&ClarifyingBlocks::unit(), pair(&split1)?, pair(&split2)?).map_err(err)?;
            (if which == 1 { g1 } else { g2 }.with_name(format!("clarifying_{which}")), out)
        }
    };
    emit(&format::write(&g), out.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
