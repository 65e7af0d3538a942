use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use certcanon_checker::{verify_proof, Backend};
use certcanon_core::emitter::{emit_during, emit_post, ProofSize};
use certcanon_core::search::{canonical_form, SearchOptions, SearchResult};
use certcanon_core::{dimacs, Coloring, Graph, Permutation};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "certcanon", version, about = "Certified canonical labelling of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a DIMACS graph, optionally with a proof.
    Canon {
        input: PathBuf,
        /// Emit a proof with the given strategy.
        #[arg(long, value_enum)]
        prove: Option<Strategy>,
        /// Proof file path (default: INPUT.proof).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print timings and proof size.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify a proof against a DIMACS graph.
    Check {
        graph: PathBuf,
        proof: PathBuf,
        #[arg(long, value_enum, default_value_t = Db::Flat)]
        db: Db,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two DIMACS graphs are isomorphic.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Prove and check both canonical forms, writing the proofs here.
        #[arg(long)]
        certify: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    During,
    Post,
}

#[derive(Clone, Copy, ValueEnum)]
enum Db {
    Flat,
    Trie,
}

impl From<Db> for Backend {
    fn from(d: Db) -> Backend {
        match d {
            Db::Flat => Backend::Flat,
            Db::Trie => Backend::Trie,
        }
    }
}

#[derive(Default, Serialize)]
struct Times {
    #[serde(skip_serializing_if = "Option::is_none")]
    solve: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prove: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    n: usize,
    m: usize,
    canonical_edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labelling: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proof_bytes: Option<u64>,
    times_ms: Times,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

fn io_fail(path: &Path, e: impl std::fmt::Display) -> Fail {
    Fail(2, format!("{}: {}", path.display(), e))
}

fn load(path: &Path) -> Result<Graph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    dimacs::parse_str(&text).map_err(|e| io_fail(path, e))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn one_based(edges: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    edges.into_iter().map(|(u, v)| (u + 1, v + 1)).collect()
}

fn print_edges(edges: &[(u32, u32)]) {
    for (u, v) in edges {
        println!("e {u} {v}");
    }
}

fn emit(
    g: &Graph,
    pi0: &Coloring,
    strategy: Strategy,
) -> Result<(SearchResult, ProofSize, Vec<u8>, f64, f64), Fail> {
    let fail = |e: certcanon_core::emitter::EmitError| Fail(2, format!("proof emission failed: {e}"));
    match strategy {
        Strategy::During => {
            let t = Instant::now();
            let (result, size, bytes) = emit_during(g, pi0, Vec::new()).map_err(fail)?;
            Ok((result, size, bytes, 0.0, ms(t)))
        }
        Strategy::Post => {
            let t = Instant::now();
            let result = canonical_form(g, pi0, SearchOptions::default());
            let solve = ms(t);
            let t = Instant::now();
            let (size, bytes) = emit_post(g, pi0, &result, Vec::new()).map_err(fail)?;
            Ok((result, size, bytes, solve, ms(t)))
        }
    }
}

fn canon(input: &Path, prove: Option<Strategy>, output: Option<PathBuf>, stats: bool, json: bool) -> Result<(), Fail> {
    let g = load(input)?;
    let pi0 = Coloring::unit(g.n());
    let mut times = Times::default();
    let (result, proof_bytes) = match prove {
        None => {
            let t = Instant::now();
            let r = canonical_form(&g, &pi0, SearchOptions::default());
            times.solve = Some(ms(t));
            (r, None)
        }
        Some(strategy) => {
            let (r, size, bytes, solve, prove_ms) = emit(&g, &pi0, strategy)?;
            let path = output.unwrap_or_else(|| {
                let mut p = input.as_os_str().to_owned();
                p.push(".proof");
                PathBuf::from(p)
            });
            fs::write(&path, &bytes).map_err(|e| io_fail(&path, e))?;
            if let Strategy::Post = strategy {
                times.solve = Some(solve);
            }
            times.prove = Some(prove_ms);
            if !json {
                eprintln!("proof written to {} ({} rules)", path.display(), size.rules);
            }
            (r, Some(size.bytes))
        }
    };
    let edges = one_based(result.canonical.graph().edges());
    let labelling: Vec<u32> = result.labelling.images().iter().map(|v| v + 1).collect();
    if json {
        let report = Report {
            n: g.n(),
            m: g.edge_count(),
            canonical_edges: edges,
            labelling: Some(labelling),
            proof_bytes,
            times_ms: times,
            verdict: "canonical".into(),
            detail: None,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("p edge {} {}", g.n(), edges.len());
        print_edges(&edges);
        let words: Vec<String> = labelling.iter().map(u32::to_string).collect();
        println!("c labelling {}", words.join(" "));
        if stats {
            let fmt = |t: Option<f64>| t.map_or("-".to_string(), |t| format!("{t:.3}"));
            println!(
                "c solve_ms {} prove_ms {} proof_bytes {} nodes {} leaves {}",
                fmt(times.solve),
                fmt(times.prove),
                proof_bytes.map_or("-".to_string(), |b| b.to_string()),
                result.stats.nodes,
                result.stats.leaves
            );
        }
    }
    Ok(())
}

fn check(graph: &Path, proof: &Path, db: Db, json: bool) -> Result<(), Fail> {
    let g = load(graph)?;
    let bytes = fs::read(proof).map_err(|e| io_fail(proof, e))?;
    let t = Instant::now();
    let v = verify_proof(&g, &Coloring::unit(g.n()), &bytes, db.into());
    let check_ms = ms(t);
    let edges = v.canonical.as_ref().map(|c| one_based(c.graph().edges())).unwrap_or_default();
    let detail = v.failure.as_ref().map(|f| f.to_string());
    if json {
        let report = Report {
            n: g.n(),
            m: g.edge_count(),
            canonical_edges: edges,
            labelling: None,
            proof_bytes: Some(bytes.len() as u64),
            times_ms: Times { check: Some(check_ms), ..Times::default() },
            verdict: if v.accepted { "accepted" } else { "rejected" }.into(),
            detail: detail.clone(),
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else if v.accepted {
        println!("c accepted ({} rules, {check_ms:.3} ms)", v.rules_checked);
        println!("p edge {} {}", g.n(), edges.len());
        print_edges(&edges);
    }
    match detail {
        Some(d) if !v.accepted => Err(Fail(1, format!("rejected: {d}"))),
        _ => Ok(()),
    }
}

/// Canonical form, proved and independently checked when `certify` is set.
fn certified(g: &Graph, certify: Option<(&Path, &str)>) -> Result<(SearchResult, Times), Fail> {
    let pi0 = Coloring::unit(g.n());
    let Some((dir, name)) = certify else {
        let t = Instant::now();
        let r = canonical_form(g, &pi0, SearchOptions::default());
        return Ok((r, Times { solve: Some(ms(t)), ..Times::default() }));
    };
    let (r, _, bytes, solve, prove) = emit(g, &pi0, Strategy::Post)?;
    let path = dir.join(format!("{name}.proof"));
    fs::write(&path, &bytes).map_err(|e| io_fail(&path, e))?;
    let t = Instant::now();
    let v = verify_proof(g, &pi0, &bytes, Backend::Flat);
    let check = ms(t);
    if v.canonical.as_ref() != Some(&r.canonical) {
        let why = v.failure.map_or("checker disagrees with solver".to_string(), |f| f.to_string());
        return Err(Fail(1, format!("{name}: proof rejected: {why}")));
    }
    Ok((r, Times { solve: Some(solve), prove: Some(prove), check: Some(check) }))
}

fn iso(first: &Path, second: &Path, certify: Option<PathBuf>, json: bool) -> Result<(), Fail> {
    let (g1, g2) = (load(first)?, load(second)?);
    if let Some(dir) = &certify {
        fs::create_dir_all(dir).map_err(|e| io_fail(dir, e))?;
    }
    let dir = certify.as_deref();
    let (a, b) = std::thread::scope(|s| {
        let h = s.spawn(|| certified(&g1, dir.map(|d| (d, "first"))));
        let b = certified(&g2, dir.map(|d| (d, "second")));
        (h.join().expect("worker panicked"), b)
    });
    let ((r1, t1), (r2, _)) = (a?, b?);
    let mapping: Option<Permutation> = if g1.n() == g2.n() && r1.canonical == r2.canonical {
        let sigma = r1.labelling.compose(&r2.labelling.inverse()).expect("equal sizes");
        // never report an isomorphism that fails the edge check
        if g1.relabel(&sigma).expect("equal sizes") != g2 {
            return Err(Fail(2, "canonical forms agree but the composed map is not an isomorphism".into()));
        }
        Some(sigma)
    } else {
        None
    };
    let verdict = if mapping.is_some() { "isomorphic" } else { "non-isomorphic" };
    if json {
        let report = Report {
            n: g1.n(),
            m: g1.edge_count(),
            canonical_edges: one_based(r1.canonical.graph().edges()),
            labelling: mapping.as_ref().map(|s| s.images().iter().map(|v| v + 1).collect()),
            proof_bytes: None,
            times_ms: t1,
            verdict: verdict.into(),
            detail: None,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{verdict}");
        if let Some(sigma) = &mapping {
            let pairs: Vec<String> =
                sigma.images().iter().enumerate().map(|(v, &w)| format!("{}->{}", v + 1, w + 1)).collect();
            println!("c map {}", pairs.join(" "));
        }
    }
    if mapping.is_some() {
        Ok(())
    } else {
        Err(Fail(1, String::new()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Canon { input, prove, output, stats, json } => canon(&input, prove, output, stats, json),
        Command::Check { graph, proof, db, json } => check(&graph, &proof, db, json),
        Command::Iso { first, second, certify, json } => iso(&first, &second, certify, json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("certcanon: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
