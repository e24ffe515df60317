use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lossy_cvc::exact::{cvc_oracle_limited, cvc_treewidth_dp, ORACLE_GUARD};
use lossy_cvc::harness::{gen_instance, run_named, GenSpec};
use lossy_cvc::io::{
    instance_from_edge_list, parse_vertex_list, read_edge_list, read_instance_json, read_kernel, read_td,
    write_instance_edge_list, write_instance_json, write_kernel, write_vertex_list,
};
use lossy_cvc::kernel::kernelize;
use lossy_cvc::lift::{certify, lift, ratio_str, Factor};
use lossy_cvc::{Epsilon, Error, Graph, Mode, ModulatorInstance, VertexSet};

#[derive(Parser)]
#[command(name = "lossy-cvc", version, about = "Lossy kernels for connected vertex cover")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Instance file: edge list (`p edge`) or structured JSON.
    #[arg(long = "in")]
    input: PathBuf,
    /// Modulator file, one label per line. Overrides the instance's own.
    #[arg(long)]
    modulator: Option<PathBuf>,
    /// Rational epsilon in (0, 1], e.g. 1/2.
    #[arg(long)]
    eps: Option<Epsilon>,
    /// tw(<eta>), chordal, split-cograph or unified(<eta>).
    #[arg(long)]
    mode: Option<Mode>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    EdgeList,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce an instance; writes the kernel document and its transcript.
    Kernelize {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        out_kernel: Option<PathBuf>,
        #[arg(long)]
        out_transcript: Option<PathBuf>,
    },
    /// Minimum connected vertex cover of a graph.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Comma-separated labels that must be in the cover.
        #[arg(long, value_delimiter = ',')]
        require: Vec<u64>,
        /// Comma-separated labels that must stay out.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<u64>,
        /// PACE .td decomposition to run the dynamic program on.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Raise the oracle's vertex limit (default 16, at most 30).
        #[arg(long, default_value_t = ORACLE_GUARD)]
        oracle_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a kernel solution back to the original instance.
    Lift {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Approximation factor of the kernel solution.
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a cover and, on small graphs, its ratio to the optimum.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, default_value = "1")]
        bound: String,
    },
    /// Generate an instance from a JSON spec.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the seed given in the --spec file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: Format,
    },
    /// Run the property suite.
    Bench {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// JSON report destination; the table always goes to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        return Ok(read_instance_json(&text)?.graph);
    }
    Ok(read_edge_list(&text)?.graph)
}

fn load_instance(a: &InstanceArgs) -> Result<ModulatorInstance, Error> {
    let text = read(&a.input)?;
    let modulator = a.modulator.as_deref().map(|p| read(p).and_then(|t| parse_vertex_list(&t))).transpose()?;
    if text.trim_start().starts_with('{') {
        let mut inst = read_instance_json(&text)?;
        if let Some(s) = modulator {
            inst.k = s.len();
            inst.modulator = s;
        }
        inst.epsilon = a.eps.unwrap_or(inst.epsilon);
        inst.mode = a.mode.unwrap_or(inst.mode);
        inst.validate()?;
        return Ok(inst);
    }
    instance_from_edge_list(&read_edge_list(&text)?, modulator, a.eps, a.mode)
}

fn labels(v: &[u64]) -> VertexSet {
    v.iter().map(|&x| lossy_cvc::VertexId(x)).collect()
}

fn parse_ratio(s: &str) -> Result<Factor, Error> {
    ratio_str::parse(s).ok_or_else(|| Error::Invalid(format!("{s:?} is not a rational \"num/den\"")))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Kernelize { inst, out_kernel, out_transcript } => {
            let inst = load_instance(&inst)?;
            let k = kernelize(&inst)?;
            emit(out_kernel.as_deref(), &write_kernel(&k))?;
            match out_transcript {
                Some(p) => emit(Some(&p), &k.transcript.to_jsonl())?,
                None => eprintln!("{} transcript events (pass --out-transcript to save them)", k.transcript.events.len()),
            }
        }
        Cmd::Solve { input, method, require, forbid, decomposition, oracle_limit, out } => {
            let g = load_graph(&input)?;
            let (req, forb) = (labels(&require), labels(&forbid));
            let sol = match (method, decomposition) {
                (Method::Oracle, None) => cvc_oracle_limited(&g, &req, &forb, oracle_limit)?,
                (Method::Oracle, Some(_)) => {
                    return Err(Error::Invalid("--decomposition only applies to --method auto".into()))
                }
                (Method::Auto, td) => {
                    let td = match td {
                        Some(p) => read_td(&read(&p)?)?,
                        None => lossy_cvc::classes::min_fill_decomposition(&g),
                    };
                    td.verify(&g).map_err(|v| Error::Invalid(format!("decomposition: {v}")))?;
                    cvc_treewidth_dp(&g, &td.to_nice(), &req, &forb)?
                }
            };
            if !sol.feasible {
                return Err(Error::Invalid("no connected vertex cover satisfies the constraints".into()));
            }
            eprintln!("size {}", sol.size);
            emit(out.as_deref(), &write_vertex_list(&sol.cover))?;
        }
        Cmd::Lift { inst, kernel, transcript, solution, c, out } => {
            let inst = load_instance(&inst)?;
            let k = read_kernel(&read(&kernel)?, &read(&transcript)?)?;
            let q = parse_vertex_list(&read(&solution)?)?;
            let cert = lift(&inst, &k, &q, parse_ratio(&c)?)?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&cert)? + "\n"))?;
            if !cert.passed() {
                return Err(Error::Assertion(format!("lifted cover failed: {}", cert.failed_checks().join(", "))));
            }
        }
        Cmd::Verify { input, cover, bound } => {
            let g = load_graph(&input)?;
            let cover = parse_vertex_list(&read(&cover)?)?;
            if let Some(v) = cover.iter().find(|v| !g.contains(**v)) {
                return Err(Error::UnknownVertex(*v));
            }
            let cert = certify(&g, &cover, parse_ratio(&bound)?);
            println!("{}", serde_json::to_string_pretty(&cert)?);
            if let Some((u, v)) = g.uncovered_edge(&cover) {
                return Err(Error::Invalid(format!("not a vertex cover: edge {u} {v} is uncovered")));
            }
            if !g.is_connected_vertex_cover(&cover) {
                return Err(Error::Invalid("cover does not induce a connected subgraph".into()));
            }
            if !cert.passed() {
                return Err(Error::Invalid(format!("check failed: {}", cert.failed_checks().join(", "))));
            }
        }
        Cmd::Gen { spec, seed, out, format } => {
            let mut spec: GenSpec = serde_json::from_str(&read(&spec)?)?;
            if let Some(s) = seed {
                spec.seed = s;
            }
            let inst = gen_instance(&spec)?;
            let text = match format {
                Format::EdgeList => write_instance_edge_list(&inst),
                Format::Json => write_instance_json(&inst),
            };
            emit(out.as_deref(), &text)?;
        }
        Cmd::Bench { suite, trials, seed, report } => {
            let r = run_named(&suite, trials, seed)?;
            print!("{}", r.to_table());
            for row in &r.rows {
                for note in &row.notes {
                    println!("[{}] {note}", row.id);
                }
            }
            if let Some(p) = report {
                emit(Some(&p), &(serde_json::to_string_pretty(&r)? + "\n"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Assertion(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
