use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ntsp_core::oracle::{OracleError, OracleInstance};
use ntsp_core::solver::{linear_stages, Instance};
use ntsp_core::sssp::DistLabels;
use ntsp_core::{parse_graph, random_graph, Graph, NtspResult, PathKind, Query, Status};

/// Next-to-shortest s–t paths in undirected graphs with nonnegative weights.
#[derive(Debug, Parser)]
#[command(name = "ntsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance.
    Solve {
        file: PathBuf,
        #[arg(short = 's', long = "source")]
        source: usize,
        #[arg(short = 't', long = "target")]
        target: usize,
        /// Print the witness path.
        #[arg(long)]
        path: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Brute-force answer by enumerating simple paths.
    Oracle {
        file: PathBuf,
        #[arg(short = 's', long = "source")]
        source: usize,
        #[arg(short = 't', long = "target")]
        target: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random connected graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long, default_value_t = 0.0)]
        zero_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time pipeline stages on generated graphs with m = 4n.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1024, 4096, 16384])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Largest size at which `bench` also times the quadratic zigzag search.
const BENCH_ZIGZAG_LIMIT: usize = 8192;

enum Failure {
    Input(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

#[derive(Serialize)]
struct JsonResult<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    shortest: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a [usize]>,
}

fn kind_name(kind: PathKind) -> &'static str {
    match kind {
        PathKind::Zigzag => "zigzag",
        PathKind::Detour => "detour",
    }
}

fn load(file: &PathBuf, s: usize, t: usize) -> Result<(Graph, Query), Failure> {
    let bytes = fs::read(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let g = parse_graph(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let q = Query::new(s, t);
    q.validate(&g).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((g, q))
}

fn render(r: &NtspResult, json: bool, with_path: bool) -> String {
    if json {
        let out = JsonResult {
            status: if r.status == Status::Found { "found" } else { "none" },
            kind: r.kind.map(kind_name),
            shortest: r.shortest,
            length: r.length,
            path: r.path.as_deref(),
        };
        return serde_json::to_string(&out).expect("plain struct serializes");
    }
    let mut s = match (r.status, r.kind, r.length) {
        (Status::Found, Some(kind), Some(len)) => {
            format!("found {} shortest={} length={len}", kind_name(kind), r.shortest)
        }
        _ => format!("none shortest={}", r.shortest),
    };
    if with_path {
        if let Some(p) = &r.path {
            let verts: Vec<String> = p.iter().map(ToString::to_string).collect();
            s.push_str(&format!("\npath {}", verts.join(" ")));
        }
    }
    s
}

fn oracle_for(g: &Graph, q: Query) -> Result<OracleInstance, Failure> {
    OracleInstance::new(g, q).map_err(|e: OracleError| Failure::Input(e.to_string()))
}

fn solve(file: &PathBuf, s: usize, t: usize, path: bool, json: bool, check: bool) -> Result<String, Failure> {
    let (g, q) = load(file, s, t)?;
    let r = Instance::build(&g, q)
        .and_then(|inst| inst.solve())
        .map_err(|e| Failure::Input(e.to_string()))?;
    let text = render(&r, json, path);
    if check {
        let o = oracle_for(&g, q)?;
        let want = o.next_to_shortest();
        if r.length != want || r.shortest != o.shortest {
            return Err(Failure::Mismatch(format!(
                "{text}\noracle disagrees: shortest={} next={want:?}",
                o.shortest
            )));
        }
    }
    Ok(text)
}

fn oracle(file: &PathBuf, s: usize, t: usize, json: bool) -> Result<String, Failure> {
    let (g, q) = load(file, s, t)?;
    let o = oracle_for(&g, q)?;
    let next = o.next_to_shortest();
    Ok(if json {
        let v = serde_json::json!({ "shortest": o.shortest, "next": next, "paths": o.paths.len() });
        v.to_string()
    } else {
        match next {
            Some(l) => format!("shortest={} next={l} paths={}", o.shortest, o.paths.len()),
            None => format!("shortest={} next=none paths={}", o.shortest, o.paths.len()),
        }
    })
}

fn gen(
    n: usize,
    m: usize,
    max_weight: u32,
    zero_prob: f64,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<String, Failure> {
    let g = random_graph(n, m, max_weight, zero_prob, seed).map_err(|e| Failure::Input(e.to_string()))?;
    let text = g.to_text();
    match out {
        Some(p) => {
            fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn bench(sizes: &[usize], seed: u64) -> Result<String, Failure> {
    let mut rows = vec![format!("{:<10} {:>9} {:>12}", "stage", "n", "ms")];
    for &n in sizes {
        let g = random_graph(n, 4 * n, 8, 0.2, seed).map_err(|e| Failure::Input(e.to_string()))?;
        let q = Query::new(0, n - 1);
        let t0 = Instant::now();
        let labels = DistLabels::compute(&g, q);
        rows.push(format!("{:<10} {n:>9} {:>12.2}", "sssp", ms(t0)));
        let t0 = Instant::now();
        linear_stages(&g, q, &labels).map_err(|e| Failure::Input(e.to_string()))?;
        rows.push(format!("{:<10} {n:>9} {:>12.2}", "linear", ms(t0)));
        if n <= BENCH_ZIGZAG_LIMIT {
            let t0 = Instant::now();
            Instance::build(&g, q)
                .and_then(|inst| inst.solve())
                .map_err(|e| Failure::Input(e.to_string()))?;
            rows.push(format!("{:<10} {n:>9} {:>12.2}", "full", ms(t0)));
        }
    }
    Ok(rows.join("\n"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve {
            file,
            source,
            target,
            path,
            json,
            check,
        } => solve(file, *source, *target, *path, *json, *check),
        Command::Oracle {
            file,
            source,
            target,
            json,
        } => oracle(file, *source, *target, *json),
        Command::Gen {
            n,
            m,
            max_weight,
            zero_prob,
            seed,
            out,
        } => gen(*n, *m, *max_weight, *zero_prob, *seed, out.as_ref()),
        Command::Bench { sizes, seed } => bench(sizes, *seed),
    };
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if !text.is_empty() {
                let _ = writeln!(out, "{}", text.trim_end_matches('\n'));
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::Mismatch(m) => eprintln!("ntsp: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
