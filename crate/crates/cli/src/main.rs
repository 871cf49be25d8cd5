use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ibg::generators::{
    gen_biclique, gen_chain_exobiclique, gen_cycle, gen_exobiclique, gen_from_intervals, gen_path,
    gen_random_bipartite, obstruction_family,
};
use ibg::pair_digraph::condensation_dot;
use ibg::witness::{persist_counterexample, ORACLE_DEFAULT_LIMIT};
use ibg::{
    build_pair_digraph, oracle_recognize, recognize_with, strong_components, verify_certificate, Bigraph, Certificate,
    Error, Exec, Options, Recognition,
};
use serde_json::json;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

const TRACE_ENV: &str = "IBG_TRACE_DIR";

#[derive(Parser)]
#[command(name = "ibg", version, about = "Interval bigraph recognition with checkable certificates")]
struct Cli {
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a graph file, or every `*.ibg` file in a directory.
    Recognize(RecognizeArgs),
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Decide by exhaustive search (small graphs only).
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = ORACLE_DEFAULT_LIMIT)]
        max_n: usize,
    },
    /// Write a generated graph in the text format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Output file; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Time recognition over a generated family and print a TSV table.
    Bench {
        #[arg(long, value_enum)]
        family: BenchFamily,
        /// Comma-separated vertex counts; empty for an empty report.
        #[arg(long, default_value = "", value_parser = parse_sizes)]
        sizes: Sizes,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct RecognizeArgs {
    /// Graph file.
    #[arg(required_unless_present = "dir", conflicts_with = "dir")]
    path: Option<PathBuf>,
    /// Process every `*.ibg` file in this directory.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Print the certificate as JSON.
    #[arg(long)]
    json: bool,
    /// Print counters, timings and the insertion log to stderr.
    #[arg(long)]
    trace: bool,
    /// Write the certificate JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the condensation of the pair digraph as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Bigraph of random intervals (always an interval bigraph).
    Interval {
        #[arg(long)]
        black: usize,
        #[arg(long)]
        white: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Each black/white pair is an edge with probability `p`.
    Random {
        #[arg(long)]
        black: usize,
        #[arg(long)]
        white: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The cycle on `2k` vertices.
    Cycle {
        #[arg(long)]
        k: usize,
    },
    /// The path on `n` vertices.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Complete bipartite graph.
    Biclique {
        #[arg(long)]
        black: usize,
        #[arg(long)]
        white: usize,
    },
    /// Biclique with three external vertices per side.
    Exobiclique {
        #[arg(long, default_value_t = 3)]
        black: usize,
        #[arg(long, default_value_t = 3)]
        white: usize,
    },
    /// Exobiclique whose external neighborhoods form a chain of four groups.
    ChainExobiclique {
        #[arg(long, default_value_t = 4)]
        black: usize,
        #[arg(long, default_value_t = 4)]
        white: usize,
    },
    /// Obstruction ladder with the given number of rungs.
    Obstruction {
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Attach the dual gadget as well.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Clone, Debug)]
struct Sizes(Vec<usize>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Sizes)
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Interval,
    Random,
    Cycle,
    Obstruction,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let code = match cli.command {
        Command::Recognize(args) => cmd_recognize(&args, exec),
        Command::Verify { graph, certificate } => cmd_verify(&graph, &certificate),
        Command::Oracle { path, max_n } => cmd_oracle(&path, max_n),
        Command::Gen { family, out } => cmd_gen(family, out.as_deref()),
        Command::Bench { family, sizes, seed } => cmd_bench(family, &sizes.0, seed, exec),
    };
    ExitCode::from(code)
}

fn read_graph(path: &Path) -> Result<Bigraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Bigraph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn trace_dir() -> Option<PathBuf> {
    std::env::var_os(TRACE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "graph".into())
}

/// Buffered result of one file so batch output never interleaves.
struct Report {
    code: u8,
    stdout: String,
    stderr: String,
}

fn cmd_recognize(args: &RecognizeArgs, exec: Exec) -> u8 {
    let Some(dir) = &args.dir else {
        let path = args.path.as_deref().expect("clap requires a path");
        let r = recognize_file(path, args, exec, false);
        print!("{}", r.stdout);
        eprint!("{}", r.stderr);
        return r.code;
    };
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "ibg"))
            .collect(),
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    files.sort();
    // One recognition per task; each runs its own loops sequentially.
    let reports = ibg::par::map(exec, &files, |p| recognize_file(p, args, Exec::Sequential, true));
    let mut code = EXIT_YES;
    for r in reports {
        print!("{}", r.stdout);
        eprint!("{}", r.stderr);
        code = code.max(r.code);
    }
    code
}

fn recognize_file(path: &Path, args: &RecognizeArgs, exec: Exec, batch: bool) -> Report {
    let mut out = String::new();
    let mut err = String::new();
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => {
            if batch && args.json {
                let _ = writeln!(out, "{}", json!({ "file": path, "error": e }));
            }
            let _ = writeln!(err, "error: {e}");
            return Report {
                code: EXIT_INPUT,
                stdout: out,
                stderr: err,
            };
        }
    };
    let opts = Options { exec, log: args.trace };
    let result = recognize_with(&g, &opts);
    let name = stem(path);

    if let Some(dot) = &args.dot {
        let pd = build_pair_digraph(&g);
        let cs = strong_components(&pd);
        let target = if batch { dot.join(format!("{name}.dot")) } else { dot.clone() };
        if let Err(e) = write_file(&target, &condensation_dot(&pd, &cs)) {
            let _ = writeln!(err, "error: {e}");
        }
    }

    let code = match result {
        Ok(rec) => {
            let code = if rec.certificate.is_yes() { EXIT_YES } else { EXIT_NO };
            emit_recognition(&mut out, &mut err, path, &g, &rec, args, batch);
            if let Some(dir) = trace_dir() {
                let body = json!({ "file": path, "certificate": rec.certificate, "trace": rec.trace });
                if let Err(e) = write_json(&dir.join(format!("{name}.trace.json")), &body) {
                    let _ = writeln!(err, "error: {e}");
                }
            }
            code
        }
        Err(e) => {
            let code = if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT };
            if batch && args.json {
                let _ = writeln!(out, "{}", json!({ "file": path, "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {}: {e}", path.display());
            if let Error::InternalInconsistency { reason, trace } = &e {
                if args.trace {
                    let _ = writeln!(err, "{}", serde_json::to_string_pretty(trace).unwrap_or_default());
                }
                if let Some(dir) = trace_dir() {
                    let oracle = match oracle_recognize(&g, ORACLE_DEFAULT_LIMIT) {
                        Ok(o) => format!("{}\n", o.is_interval_bigraph),
                        Err(e) => format!("{e}\n"),
                    };
                    let detail = format!("{reason}\n{}\n", serde_json::to_string_pretty(trace).unwrap_or_default());
                    match persist_counterexample(&dir, &name, &g, &detail, &oracle) {
                        Ok(p) => {
                            let _ = writeln!(err, "counterexample written to {}", p.display());
                        }
                        Err(e) => {
                            let _ = writeln!(err, "error: {e}");
                        }
                    }
                }
            }
            code
        }
    };
    Report {
        code,
        stdout: out,
        stderr: err,
    }
}

fn emit_recognition(
    out: &mut String,
    err: &mut String,
    path: &Path,
    g: &Bigraph,
    rec: &Recognition,
    args: &RecognizeArgs,
    batch: bool,
) {
    let cert = &rec.certificate;
    if args.json {
        if batch {
            let _ = writeln!(out, "{}", json!({ "file": path, "certificate": cert }));
        } else {
            let _ = writeln!(out, "{}", cert.to_json_pretty());
        }
    } else {
        let prefix = if batch { format!("{}: ", path.display()) } else { String::new() };
        match cert {
            Certificate::Yes { ordering, .. } => {
                let seq: Vec<String> = ordering.sequence().iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{prefix}yes n={} m={} ordering {}", g.n(), g.m(), seq.join(" "));
            }
            Certificate::No { witness } => {
                let _ = writeln!(out, "{prefix}no n={} m={} witness {}", g.n(), g.m(), witness.kind());
            }
        }
    }
    if let Some(target) = &args.out {
        let target = if batch { target.join(format!("{}.cert.json", stem(path))) } else { target.clone() };
        if let Err(e) = write_file(&target, &cert.to_json_pretty()) {
            let _ = writeln!(err, "error: {e}");
        }
    }
    if args.trace {
        let _ = writeln!(err, "{}", serde_json::to_string_pretty(&rec.trace).unwrap_or_default());
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), String> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
    }
    std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_json(path: &Path, body: &serde_json::Value) -> Result<(), String> {
    write_file(path, &serde_json::to_string_pretty(body).map_err(|e| e.to_string())?)
}

fn cmd_verify(graph: &Path, certificate: &Path) -> u8 {
    let g = match read_graph(graph) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let cert = match std::fs::read_to_string(certificate)
        .map_err(Error::from)
        .and_then(|t| Certificate::from_json(&t))
    {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", certificate.display());
            return EXIT_INPUT;
        }
    };
    if verify_certificate(&g, &cert) {
        println!("valid");
        EXIT_YES
    } else {
        println!("invalid");
        EXIT_NO
    }
}

fn cmd_oracle(path: &Path, max_n: usize) -> u8 {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match oracle_recognize(&g, max_n) {
        Ok(r) => match r.ordering {
            Some(ord) if r.is_interval_bigraph => {
                let seq: Vec<String> = ord.sequence().iter().map(|v| v.to_string()).collect();
                println!("yes ordering {}", seq.join(" "));
                EXIT_YES
            }
            _ => {
                println!("no");
                EXIT_NO
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn cmd_gen(family: GenFamily, out: Option<&Path>) -> u8 {
    let g = match generate(family) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match out {
        Some(p) => match write_file(p, &g.to_text()) {
            Ok(()) => EXIT_YES,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        None => {
            print!("{}", g.to_text());
            EXIT_YES
        }
    }
}

fn generate(family: GenFamily) -> Result<Bigraph, String> {
    let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
    Ok(match family {
        GenFamily::Interval { black, white, seed } => {
            need(black >= 1 && white >= 1, "interval needs at least one vertex per side")?;
            gen_from_intervals(black, white, seed).0
        }
        GenFamily::Random { black, white, p, seed } => {
            need((0.0..=1.0).contains(&p), "p must lie in [0, 1]")?;
            gen_random_bipartite(black, white, p, seed)
        }
        GenFamily::Cycle { k } => {
            need(k >= 2, "cycle needs k >= 2")?;
            gen_cycle(k)
        }
        GenFamily::Path { n } => {
            need(n >= 2, "path needs n >= 2")?;
            gen_path(n)
        }
        GenFamily::Biclique { black, white } => {
            need(black >= 1 && white >= 1, "biclique needs at least one vertex per side")?;
            gen_biclique(black, white)
        }
        GenFamily::Exobiclique { black, white } => {
            need(black >= 3 && white >= 3, "exobiclique needs at least 3 per side")?;
            gen_exobiclique(black, white)
        }
        GenFamily::ChainExobiclique { black, white } => {
            need(black >= 4 && white >= 4, "chain exobiclique needs at least 4 per side")?;
            gen_chain_exobiclique(black, white)
        }
        GenFamily::Obstruction { steps, dual } => {
            need(steps >= 1, "obstruction needs at least one rung")?;
            obstruction_family(steps, dual).0
        }
    })
}

/// Instance of roughly `n` vertices for the bench table.
fn bench_instance(family: BenchFamily, n: usize, seed: u64) -> Bigraph {
    let n = n.max(2);
    match family {
        BenchFamily::Interval => gen_from_intervals(n / 2, n - n / 2, seed).0,
        BenchFamily::Random => gen_random_bipartite(n / 2, n - n / 2, 0.3, seed),
        BenchFamily::Cycle => gen_cycle((n / 2).max(2)),
        BenchFamily::Obstruction => {
            // Pick the rung count whose instance is closest to `n` from below.
            let mut steps = 1;
            while obstruction_family(steps + 1, false).0.n() <= n {
                steps += 1;
            }
            obstruction_family(steps, false).0
        }
    }
}

fn cmd_bench(family: BenchFamily, sizes: &[usize], seed: u64, exec: Exec) -> u8 {
    println!("n\tm\tbuild\tscc\tenvelope\ttotal\tpeak_pairs\tarcs\tinsertions\tverdict");
    let mut code = EXIT_YES;
    for &size in sizes {
        let g = bench_instance(family, size, seed);
        match recognize_with(&g, &Options { exec, log: false }) {
            Ok(rec) => {
                let t = &rec.trace;
                let s = &t.timings;
                println!(
                    "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}\t{}\t{}",
                    g.n(),
                    g.m(),
                    s.build,
                    s.scc,
                    s.step3 + s.step5,
                    s.total(),
                    t.peak_pairs,
                    t.arcs,
                    t.step3_insertions + t.step5_insertions + t.step6_insertions,
                    if rec.certificate.is_yes() { "yes" } else { "no" },
                );
            }
            Err(e) => {
                eprintln!("error: n={}: {e}", g.n());
                code = code.max(if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT });
            }
        }
    }
    code
}
