use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vintegrity::cvd::vi_cvd;
use vintegrity::cw::{wvi_cw_graph, wvi_cw_ordered};
use vintegrity::format::{parse_graph, parse_vertex_set, write_graph};
use vintegrity::mw::wvi_mw;
use vintegrity::natural::wvi_optimize_branching;
use vintegrity::oracle::wvi_exact;
use vintegrity::params::{
    cluster_vertex_deletion, minimum_cluster_vertex_deletion, minimum_twin_cover,
    modular_decomposition, neighborhood_diversity, twin_cover, CExpression, ModularDecomposition,
};
use vintegrity::quotient::{wvi_nd, wvi_tc};
use vintegrity::reductions::{
    gen_binpacking_to_line_integrity, gen_binpacking_to_unary_wvi, gen_coc_to_vi,
    gen_partition_to_subdivided_star, gen_vc_to_planar_bipartite, ReductionInstance,
};
use vintegrity::{connected_components, evaluate, Error, Limits, Solution, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "vintegrity",
    version,
    about = "Exact vertex integrity solvers and reduction generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the (weighted) vertex integrity of a graph.
    Solve(SolveArgs),
    /// Check whether a vertex set is a wvi(k)-set.
    Verify(VerifyArgs),
    /// Compute structural parameters and decompositions.
    Params(ParamsArgs),
    /// Generate a reduction instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Oracle,
    Branch,
    Nd,
    Tc,
    Mw,
    Cvd,
    Cw,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    alg: Alg,
    /// Vertex list of a twin cover (tc).
    #[arg(long)]
    twin_cover: Option<PathBuf>,
    /// Vertex list of a cluster vertex deletion set (cvd).
    #[arg(long)]
    cvd_set: Option<PathBuf>,
    /// c-expression whose leaf i is vertex i (cw).
    #[arg(long)]
    expr: Option<PathBuf>,
    /// Modular decomposition tree (mw).
    #[arg(long)]
    mdtree: Option<PathBuf>,
    /// Worker threads for the solvers that parallelize.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: u64,
    graph: PathBuf,
    certificate: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).multiple(true)))]
struct ParamsArgs {
    /// Neighborhood diversity and the twin classes.
    #[arg(long, group = "what")]
    nd: bool,
    /// A cluster vertex deletion set of at most this size.
    #[arg(long, group = "what", value_name = "K")]
    cvd_budget: Option<usize>,
    /// A twin cover of at most this size.
    #[arg(long, group = "what", value_name = "K")]
    twin_cover_budget: Option<usize>,
    /// The modular decomposition tree.
    #[arg(long, group = "what")]
    md: bool,
    graph: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Graph output file; the sidecar goes next to it with extension `.json`.
    /// Without it the graph goes to stdout with the sidecar as a leading comment.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Component order connectivity to vertex integrity.
    Coc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        p: u64,
    },
    /// Unary bin packing to weighted vertex integrity.
    Binpacking {
        #[arg(long)]
        bins: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<u64>,
        /// Make each v_i^1..v_i^t an independent set instead of a clique.
        #[arg(long)]
        independent: bool,
        /// Skip the universal vertex.
        #[arg(long)]
        disconnected: bool,
    },
    /// Partition to weighted vertex integrity on a subdivided star.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<u64>,
    },
    /// Vertex cover on cubic graphs to vertex integrity on bipartite graphs.
    Planar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Unary bin packing to line integrity.
    LineIntegrity {
        #[arg(long)]
        bins: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<u64>,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(..) => 2,
            Failure::Lib(Error::Parse { .. } | Error::InvalidGraph(_)) => 2,
            Failure::Lib(Error::Precondition(_)) => 3,
            Failure::Lib(Error::TooLarge { .. }) | Failure::Cap(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Lib(e) => e.to_string(),
            Failure::Cap(m) => m.clone(),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `key v1 v2 ...`, or just `key` for an empty list.
fn keyed(key: &str, vs: &[usize]) -> String {
    if vs.is_empty() {
        key.to_string()
    } else {
        format!("{key} {}", join(vs))
    }
}

fn report(g: &WeightedGraph, alg: &str, sol: &Solution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm {alg}");
    let _ = writeln!(out, "objective {}", sol.objective);
    let _ = writeln!(out, "{}", keyed("deleted", &sol.deleted));
    let _ = writeln!(out, "deleted_weight {}", sol.deleted_weight);
    let _ = writeln!(out, "max_component_weight {}", sol.max_component_weight);
    let comps = connected_components(g, &sol.deleted);
    let _ = writeln!(out, "components {}", comps.len());
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(out, "component {i} weight {}: {}", g.weight_of(c), join(c));
    }
    out
}

fn solve(alg: Alg, args: &SolveArgs, g: &WeightedGraph) -> Result<Solution, Failure> {
    let limits = Limits::default();
    Ok(match alg {
        Alg::Oracle => wvi_exact(g)?,
        Alg::Branch => wvi_optimize_branching(g),
        Alg::Nd => wvi_nd(g)?,
        Alg::Tc => {
            let cover = match &args.twin_cover {
                Some(p) => parse_vertex_set(&read(p)?, g.vertex_count())?,
                None => minimum_twin_cover(g, g.vertex_count())
                    .expect("the whole vertex set is a twin cover"),
            };
            wvi_tc(g, &cover)?
        }
        Alg::Mw => {
            let md = match &args.mdtree {
                Some(p) => ModularDecomposition::parse(&read(p)?)?,
                None => modular_decomposition(g)?,
            };
            wvi_mw(g, &md)?
        }
        Alg::Cvd => {
            if !g.is_unit_weight() {
                return Err(Error::Precondition(
                    "the cvd solver handles unweighted graphs only".into(),
                )
                .into());
            }
            let d = match &args.cvd_set {
                Some(p) => parse_vertex_set(&read(p)?, g.vertex_count())?,
                None => minimum_cluster_vertex_deletion(g, limits.cvd_size).ok_or_else(|| {
                    Failure::Cap(format!(
                        "no cluster vertex deletion set of size at most {} exists",
                        limits.cvd_size
                    ))
                })?,
            };
            vi_cvd(g, &d)?
        }
        Alg::Cw => match &args.expr {
            Some(p) => wvi_cw_graph(g, &CExpression::parse(&read(p)?)?)?,
            None => {
                let md = modular_decomposition(g)?;
                let (expr, order) = CExpression::cograph(&md).ok_or_else(|| {
                    Failure::Lib(Error::Precondition(
                        "no expression given and the graph is not a cograph".into(),
                    ))
                })?;
                wvi_cw_ordered(g, &expr, &order)?
            }
        },
    })
}

fn cmd_solve(args: SolveArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .expect("thread pool");
    let start = Instant::now();
    let sol = pool.install(|| solve(args.alg, &args, &g))?;
    let elapsed = start.elapsed();
    let name = args
        .alg
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    print!("{}", report(&g, &name, &sol));
    eprintln!("time {:.3}s", elapsed.as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let s = parse_vertex_set(&read(&args.certificate)?, g.vertex_count())?;
    let sol = evaluate(&g, &s);
    let ok = sol.objective <= args.k;
    println!("objective {}", sol.objective);
    println!("wvi({})-set {}", args.k, if ok { "yes" } else { "no" });
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_params(args: ParamsArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    if args.nd {
        let (nd, classes) = neighborhood_diversity(&g);
        println!("nd {nd}");
        for (i, c) in classes.classes.iter().enumerate() {
            println!("class {i}: {}", join(c));
        }
    }
    if let Some(k) = args.cvd_budget {
        match cluster_vertex_deletion(&g, k) {
            Some(d) => println!("{}", keyed("cvd-set", &d)),
            None => println!("cvd-set none"),
        }
    }
    if let Some(k) = args.twin_cover_budget {
        match twin_cover(&g, k) {
            Some(c) => println!("{}", keyed("twin-cover", &c)),
            None => println!("twin-cover none"),
        }
    }
    if args.md {
        let md = modular_decomposition(&g)?;
        println!("md-width {}", md.width());
        println!("md {}", md.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Outcome {
    let inst: ReductionInstance = match args.kind {
        GenKind::Coc { graph, ell, p } => gen_coc_to_vi(&load_graph(&graph)?, ell, p)?,
        GenKind::Binpacking {
            bins,
            items,
            independent,
            disconnected,
        } => gen_binpacking_to_unary_wvi(bins, &items, !independent, !disconnected)?,
        GenKind::Partition { items } => gen_partition_to_subdivided_star(&items)?,
        GenKind::Planar { graph, p } => gen_vc_to_planar_bipartite(&load_graph(&graph)?, p)?,
        GenKind::LineIntegrity { bins, items } => gen_binpacking_to_line_integrity(bins, &items)?,
    };
    let sidecar = inst.to_json().to_string();
    let graph = write_graph(&inst.graph);
    match args.out {
        Some(path) => {
            write(&path, &graph)?;
            write(&path.with_extension("json"), &format!("{sidecar}\n"))?;
            eprintln!(
                "wrote {} ({} vertices, k = {})",
                path.display(),
                inst.graph.vertex_count(),
                inst.budget
            );
        }
        None => print!("# {sidecar}\n{graph}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Params(a) => cmd_params(a),
        Command::Gen(a) => cmd_gen(a),
    };
    outcome.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message());
        ExitCode::from(f.code())
    })
}
