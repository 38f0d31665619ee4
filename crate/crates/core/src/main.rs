//! Command-line front end: file ingestion, every analysis as a subcommand,
//! instance generation, and batch verification.
//!
//! Exit codes: 0 success, 1 a theorem violation was found (reproducer on
//! stdout), 2 input/parse error, 3 resource cap exceeded. Analysis results
//! go to stdout, diagnostics to stderr. File formats use 1-based indices;
//! JSON output uses 0-based indices.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use permrank::error::{Error, Result};
use permrank::gen::{example_matrix, generate, GenConfig, GenKind, Generated};
use permrank::graph::Balance;
use permrank::io::{
    format_dense_matrix, format_graph, parse_graph_or_matrix, parse_matrix_or_graph,
};
use permrank::permanent::permanent;
use permrank::poly::perm_poly;
use permrank::rank::perm_rank_exact;
use permrank::sachs::ek_ok;
use permrank::scalar::{format_exact, parse_exact};
use permrank::verify::{batch_verify, search_counterexamples, verify};

#[derive(Parser)]
#[command(
    name = "permrank",
    about = "Exact permanents, permanental polynomials, and permanental rank/nullity",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GenArgs {
    /// Instance class: pm1_symmetric, nonneg_symmetric, gram_psd,
    /// balanced_signed, unbalanced_signed, uniform_odd_parity
    #[arg(long)]
    kind: String,
    /// Matrix order / vertex count
    #[arg(long)]
    n: usize,
    /// Base seed
    #[arg(long)]
    seed: u64,
    /// Edge/entry density as an exact rational in [0,1]
    #[arg(long, default_value = "1/2")]
    density: String,
    /// Entry bound for nonneg_symmetric and gram_psd
    #[arg(long, default_value_t = 2)]
    bound: u64,
    /// Inner dimension r for gram_psd (defaults to n)
    #[arg(long)]
    inner_dim: Option<usize>,
}

impl GenArgs {
    fn to_config(&self) -> Result<GenConfig> {
        let kind: GenKind = self.kind.parse()?;
        let mut cfg = GenConfig::new(kind, self.n, self.seed);
        cfg.density = parse_exact(&self.density)?;
        cfg.entry_bound = self.bound;
        cfg.inner_dim = self.inner_dim;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Permanent of a square matrix, as an exact value
    Per { matrix: PathBuf },
    /// Permanental polynomial (monic convention per(xI - A))
    Poly {
        matrix: PathBuf,
        /// Emit the raw convention per(A - xI) instead
        #[arg(long)]
        raw_sign: bool,
    },
    /// Permanental rank
    Rank {
        matrix: PathBuf,
        /// Restrict the search to principal submatrices (square input)
        #[arg(long)]
        principal_only: bool,
        /// Also print the witness submatrix as JSON (0-based)
        #[arg(long)]
        witness: bool,
    },
    /// Permanental nullity
    Nullity { matrix: PathBuf },
    /// Balance of a signed graph (graph file or adjacency matrix)
    Balance { input: PathBuf },
    /// Cycle parity class of a signed graph
    Parity { graph: PathBuf },
    /// Sachs coefficient s_k, optionally split into E_k and O_k
    Sachs {
        graph: PathBuf,
        /// Subgraph order k
        #[arg(long)]
        order: usize,
        /// Print E_k and O_k separately
        #[arg(long)]
        split: bool,
    },
    /// Full verification report for one matrix
    Verify {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verify a batch of generated instances
    Batch {
        #[command(flatten)]
        gen: GenArgs,
        /// Number of instances (seeds seed, seed+1, ...)
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: bool,
        /// Worker threads; results are independent of this
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Collect identity counterexamples among generated instances
    Search {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write a generated instance to a file
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Output path
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print a built-in example matrix (example_gen or matrix_B)
    Example { name: String },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Input(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("reading {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<permrank::ExactMatrix> {
    parse_matrix_or_graph(&read_input(path)?)
}

fn load_graph(path: &Path) -> Result<permrank::SignedGraph> {
    parse_graph_or_matrix(&read_input(path)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Per { matrix } => {
            let m = load_matrix(&matrix)?;
            println!("{}", format_exact(&permanent(&m)?));
        }
        Command::Poly { matrix, raw_sign } => {
            let m = load_matrix(&matrix)?;
            let mut poly = perm_poly(&m)?;
            if raw_sign {
                poly = poly.with_raw_sign();
            }
            println!("{poly}");
            println!("coefficients: {}", poly.coefficient_list());
        }
        Command::Rank {
            matrix,
            principal_only,
            witness,
        } => {
            let m = load_matrix(&matrix)?;
            let r = perm_rank_exact(&m, principal_only)?;
            println!("{}", r.rank);
            if witness {
                let w = serde_json::json!({
                    "rows": r.witness_rows.as_slice(),
                    "cols": r.witness_cols.as_slice(),
                    "permanent": format_exact(&r.witness_permanent),
                });
                println!("{w}");
            }
        }
        Command::Nullity { matrix } => {
            let m = load_matrix(&matrix)?;
            println!("{}", permrank::poly::perm_nullity(&m)?);
        }
        Command::Balance { input } => {
            let g = load_graph(&input)?;
            match g.balance() {
                Balance::Balanced(d) => {
                    println!("balanced");
                    let signs: Vec<String> = d.signs().iter().map(|s| s.to_string()).collect();
                    println!("switching: {}", signs.join(" "));
                }
                Balance::Unbalanced(cycle) => {
                    println!("unbalanced");
                    let verts: Vec<String> =
                        cycle.iter().map(|v| (v + 1).to_string()).collect();
                    println!("negative cycle (1-based): {}", verts.join(" "));
                }
            }
        }
        Command::Parity { graph } => {
            let g = load_graph(&graph)?;
            println!("{}", g.cycle_parity_class()?.as_str());
        }
        Command::Sachs { graph, order, split } => {
            let g = load_graph(&graph)?;
            let r = ek_ok(&g, order)?;
            if split {
                println!("E_{} = {}", order, format_exact(&r.even_sum));
                println!("O_{} = {}", order, format_exact(&r.odd_sum));
            }
            println!("s_{} = {}", order, format_exact(&r.coefficient));
        }
        Command::Verify { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let report = verify(&m)?;
            if json {
                println!("{}", report.to_json_pretty());
            } else {
                print_report_text(&report);
            }
            permrank::verify::require_no_violation(None, &m, &report)?;
        }
        Command::Batch {
            gen,
            count,
            json,
            threads,
        } => {
            let cfg = gen.to_config()?;
            let summary = batch_verify(&cfg, count, threads)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("serializes"));
            } else {
                println!("instances:        {}", summary.count);
                println!("identity holds:   {}", summary.identity_holds);
                println!("identity fails:   {}", summary.identity_fails);
                println!("inequality holds: {}", summary.inequality_holds);
                println!("yu bound holds:   {}", summary.yu_bound_holds);
                println!(
                    "criterion: defined on {}, agreed on {}",
                    summary.criterion_defined, summary.criterion_agrees
                );
            }
        }
        Command::Search {
            gen,
            count,
            json,
            threads,
        } => {
            let cfg = gen.to_config()?;
            let hits = search_counterexamples(&cfg, count, threads)?;
            if json {
                let items: Vec<serde_json::Value> = hits
                    .iter()
                    .map(|(seed, matrix, report)| {
                        serde_json::json!({
                            "seed": seed,
                            "matrix": format_dense_matrix(matrix),
                            "report": serde_json::from_str::<serde_json::Value>(&report.to_json())
                                .expect("report json"),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&items).expect("serializes"));
            } else if hits.is_empty() {
                println!("no identity failures among {count} instances");
            } else {
                println!("{} identity failure(s) among {count} instances", hits.len());
                for (seed, matrix, report) in &hits {
                    println!("--- seed {seed}: rho {} eta {} n {}", report.rho, report.eta, report.n);
                    print!("{}", format_dense_matrix(matrix));
                }
            }
        }
        Command::Gen { gen, output } => {
            let cfg = gen.to_config()?;
            let text = match generate(&cfg)? {
                Generated::Matrix(m) => format_dense_matrix(&m),
                Generated::Graph(g) => format_graph(&g),
            };
            fs::write(&output, text)
                .map_err(|e| Error::Input(format!("writing {}: {e}", output.display())))?;
            eprintln!("wrote {}", output.display());
        }
        Command::Example { name } => {
            print!("{}", format_dense_matrix(&example_matrix(&name)?));
        }
    }
    Ok(())
}

fn print_report_text(report: &permrank::VerifyReport) {
    println!("n:          {}", report.n);
    println!("rho_per:    {}", report.rho);
    println!("eta_per:    {}", report.eta);
    println!(
        "rho + eta:  {} ({} n = {})",
        report.sum,
        if report.sum == report.n {
            "="
        } else if report.sum > report.n {
            ">"
        } else {
            "<"
        },
        report.n
    );
    println!("identity:   {}", report.identity);
    println!("inequality: {}", report.inequality);
    println!("yu bound:   {}", report.yu_bound);
    let c = &report.classes;
    let mut classes = Vec::new();
    for (flag, name) in [
        (c.nonnegative, "nonnegative"),
        (c.symmetric, "symmetric"),
        (c.psd, "psd"),
        (c.zero_pm1, "zero_pm1"),
        (c.balanced, "balanced"),
    ] {
        if flag {
            classes.push(name.to_string());
        }
    }
    if let Some(p) = &c.uniform_parity_class {
        classes.push(format!("parity:{p}"));
    }
    println!("classes:    {}", classes.join(" "));
    if let (Some(ek), Some(ok)) = (&report.ek, &report.ok) {
        println!(
            "criterion:  E_{} = {}, O_{} = {} ({})",
            report.rho,
            ek,
            report.rho,
            ok,
            if ek != ok { "E_k != O_k" } else { "E_k = O_k" }
        );
    }
    println!(
        "witness:    rows {:?} cols {:?} permanent {}",
        report.witness.rows, report.witness.cols, report.witness.permanent
    );
    for t in &report.theorems {
        let status = if !t.applicable {
            "n/a "
        } else if t.holds {
            "pass"
        } else {
            "FAIL"
        };
        println!("  [{status}] {}", t.name);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Error::TheoremViolation(v) = &e {
                // The reproducer is analysis output and belongs on stdout.
                println!("{v}");
                eprintln!("error: theorem violation (see reproducer above)");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
