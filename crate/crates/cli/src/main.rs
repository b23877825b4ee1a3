//! `sandpile`: sandpile groups of de Bruijn and Kautz digraphs, Smith normal
//! forms, and unit groups of circulant rings, emitted as JSON.

mod matrix_file;
mod report;
mod verify;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sandpile_core::arith::{gcd, prime_power};
use sandpile_core::circulant::*;
use sandpile_core::closed_form::{sand_dune_group, sandpile_group, sigma_relation_matrix};
use sandpile_core::{smith_group, smith_normal_form, Digraph};

use report::{group, Report};

#[derive(Parser)]
#[command(name = "sandpile", version, about)]
struct Cli {
    /// Include elapsed milliseconds in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sandpile and sand dune groups of DB(n, d), by closed form and SNF.
    Db(FamilyArgs),
    /// Sandpile and sand dune groups of Ktz(n, d), by closed form and SNF.
    Kautz(FamilyArgs),
    /// Sandpile group of the consecutive-d digraph G(d, n, q, r) by SNF.
    Consecutive {
        d: u64,
        n: u64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Smith normal form of a matrix file ("-" reads standard input).
    Snf { file: String },
    /// Unit group of F_q[x]/(x^n - 1).
    Circulant(CirculantArgs),
    /// Cross-check every closed form against its oracle over a range.
    Verify {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        d_max: u64,
        /// Largest field order for the circulant checks (defaults to d-max).
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    n: u64,
    d: u64,
    #[arg(long, default_value_t = 0)]
    root: usize,
}

#[derive(Args)]
struct CirculantArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: u64,
    /// Restrict to C'(n, q), the units with c(1) = 1.
    #[arg(long)]
    restricted: bool,
    /// Quotient by the subgroup generated by x.
    #[arg(long)]
    mod_x: bool,
    /// Enumerate the ring instead of using the closed form.
    #[arg(long, conflicts_with = "closed")]
    brute: bool,
    #[arg(long)]
    closed: bool,
    /// Enumeration cap on q^n (overrides SANDPILE_BRUTE_CAP).
    #[arg(long)]
    cap: Option<u64>,
}

/// Malformed input or parameters outside a function's domain.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn brute_cap(flag: Option<u64>) -> Result<u64, Usage> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("SANDPILE_BRUTE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| Usage(format!("SANDPILE_BRUTE_CAP={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

fn family(kautz: bool, a: &FamilyArgs) -> Result<Report, Usage> {
    let (name, command, d) = if kautz {
        ("kautz", "kautz", -(a.d as i64))
    } else {
        ("de_bruijn", "db", a.d as i64)
    };
    let graph = if kautz {
        Digraph::kautz(a.n, a.d)?
    } else {
        Digraph::de_bruijn(a.n, a.d)?
    };
    let mut r = Report::new(command, "closed_form", json!({ "n": a.n, "d": a.d, "root": a.root }));
    r.set("family", name);
    r.set("n", a.n);
    r.set("d", a.d);
    let s = sandpile_group(a.n, d)?;
    let sigma = sand_dune_group(a.n, d)?;
    let s_snf = graph.sandpile_group_snf(a.root)?;
    let rel = smith_group(&sigma_relation_matrix(a.n, d)?);
    let trees = graph.spanning_tree_count(a.root)?;
    r.agrees = s == s_snf && rel.free_rank == 0 && sigma == rel.torsion && trees == s.order();
    r.set("sandpile", group(&s));
    r.set("sand_dune", group(&sigma));
    r.set("sandpile_snf", group(&s_snf));
    r.set("sand_dune_snf", group(&rel.torsion));
    r.set("spanning_trees", trees.to_string());
    r.set("agrees", r.agrees);
    Ok(r)
}

fn consecutive(d: u64, n: u64, q: i64, r: i64, root: usize) -> Result<Report, Usage> {
    let g = Digraph::consecutive_d(d, n, q, r)?;
    let mut rep = Report::new("consecutive", "snf", json!({ "d": d, "n": n, "q": q, "r": r, "root": root }));
    rep.set("sandpile", group(&g.sandpile_group_snf(root)?));
    rep.set("spanning_trees", g.spanning_tree_count(root)?.to_string());
    rep.set("eulerian", g.is_eulerian());
    Ok(rep)
}

fn snf(file: &str) -> Result<Report, Usage> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Usage(format!("{file}: {e}")))?
    };
    let m = matrix_file::parse(&text).map_err(Usage)?;
    let res = smith_normal_form(&m, false);
    let mut r = Report::new("snf", "snf", json!({ "file": file, "rows": m.rows(), "cols": m.cols() }));
    let factors: Vec<String> = res.invariant_factors.iter().map(|s| s.to_string()).collect();
    r.set("invariant_factors", factors);
    r.set("rank", res.rank);
    Ok(r)
}

fn circulant(a: &CirculantArgs) -> Result<Report, Usage> {
    let (p, _) = prime_power(a.q)?;
    let params = json!({
        "n": a.n, "q": a.q, "restricted": a.restricted, "mod_x": a.mod_x,
    });
    let (method, g) = if a.brute {
        let cap = brute_cap(a.cap)?;
        ("brute", unit_group_brute(a.n, a.q, a.restricted, a.mod_x, cap)?)
    } else {
        let method = if gcd(a.n, p) == 1 { "closed_form" } else { "torsion_counts" };
        let mut g = if a.mod_x {
            circulant_quotient(a.n, a.q)?
        } else {
            circulant_star_group(a.n, a.q)?
        };
        if !a.restricted {
            g.push_cyclic((a.q - 1).into())?;
        }
        (method, g)
    };
    let mut r = Report::new("circulant", method, params);
    r.set("group", group(&g));
    Ok(r)
}

fn verify(n_max: u64, d_max: u64, q_max: Option<u64>, cap: Option<u64>) -> Result<Report, Usage> {
    let sweep = verify::Sweep {
        n_max,
        d_max,
        q_max: q_max.unwrap_or(d_max),
        cap: brute_cap(cap)?,
    };
    let params = json!({ "n_max": n_max, "d_max": d_max, "q_max": sweep.q_max, "cap": sweep.cap });
    let summary = sweep.run(true);
    let mut r = Report::new("verify", "closed_form", params);
    r.agrees = summary.failures.is_empty();
    r.set("tasks", summary.tasks);
    r.set("checks", summary.checks);
    r.set("failure_count", summary.failures.len());
    r.set("first_failure", summary.failures.first().cloned().unwrap_or(Value::Null));
    r.set("agrees", r.agrees);
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Db(a) => family(false, a),
        Command::Kautz(a) => family(true, a),
        Command::Consecutive { d, n, q, r, root } => consecutive(*d, *n, *q, *r, *root),
        Command::Snf { file } => snf(file),
        Command::Circulant(a) => circulant(a),
        Command::Verify {
            n_max,
            d_max,
            q_max,
            cap,
        } => verify(*n_max, *d_max, *q_max, *cap),
    };
    match outcome {
        Ok(mut r) => {
            if cli.timing {
                r.set("elapsed_ms", start.elapsed().as_millis() as u64);
            }
            println!("{}", Value::Object(r.fields));
            if r.agrees {
                ExitCode::SUCCESS
            } else {
                eprintln!("disagreement between closed form and oracle");
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
