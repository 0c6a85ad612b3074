use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use metallift::harness::{
    build_report, run_suites, sample_points, Manifest, ParamSpec, PlanSummary, SuiteId,
};
use metallift::verify::{Mode, Plan};

#[derive(Parser)]
#[command(name = "metallift", version, about = "Verify metallic structures on the tangent bundle of a P-Sasakian manifold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a manifest.
    Validate { manifest: PathBuf },
    /// Run the proposition suites on a manifest.
    Verify {
        manifest: PathBuf,
        /// Comma-separated suite ids (default: all).
        #[arg(long, value_delimiter = ',')]
        suites: Vec<SuiteId>,
        /// Number of sample points (default: from the manifest).
        #[arg(long)]
        points: Option<usize>,
        /// Sampling seed (default: from the manifest).
        #[arg(long)]
        seed: Option<u64>,
        /// Arithmetic mode (default: from the manifest).
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Comma-separated `p:q` or `p:q:eps1:eps2` entries (default: from the manifest).
        #[arg(long, value_delimiter = ',', value_parser = parse_pq)]
        pq: Vec<ParamSpec>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "exact" => Ok(Mode::Exact),
        "float" => Ok(Mode::Float),
        _ => Err(format!("expected `exact` or `float`, got `{s}`")),
    }
}

fn parse_pq(s: &str) -> Result<ParamSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("`{t}` is not an integer in `{s}`"));
    let (p, q, eps1, eps2) = match parts.as_slice() {
        [p, q] => (int(p)?, int(q)?, 1, 1),
        [p, q, e1, e2] => (int(p)?, int(q)?, int(e1)?, int(e2)?),
        _ => return Err(format!("expected p:q or p:q:eps1:eps2, got `{s}`")),
    };
    let spec = ParamSpec {
        p: u32::try_from(p).map_err(|_| format!("p out of range in `{s}`"))?,
        q: u32::try_from(q).map_err(|_| format!("q out of range in `{s}`"))?,
        eps1: i8::try_from(eps1).map_err(|_| format!("eps1 out of range in `{s}`"))?,
        eps2: i8::try_from(eps2).map_err(|_| format!("eps2 out of range in `{s}`"))?,
    };
    spec.params().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Validate { manifest } => {
            let m = Manifest::load(&manifest).map_err(|e| e.to_string())?;
            m.validate().map_err(|e| e.to_string())?;
            println!("ok: {} (dimension {}, {} parameter sets)", m.name, m.dimension, m.metallic.len());
            Ok(true)
        }
        Command::Verify {
            manifest,
            suites,
            points,
            seed,
            mode,
            pq,
            report,
        } => {
            let mut m = Manifest::load(&manifest).map_err(|e| e.to_string())?;
            if let Some(n) = points {
                m.sample.count = n;
            }
            if let Some(s) = seed {
                m.sample.seed = s;
            }
            if let Some(mode) = mode {
                m.sample.mode = mode;
            }
            if !pq.is_empty() {
                m.metallic = pq;
            }
            let parsed = m.validate().map_err(|e| e.to_string())?;
            let pts = sample_points(&parsed, m.sample.count, m.sample.seed).map_err(|e| e.to_string())?;
            let plan = Plan::new(pts.clone(), m.sample.mode);
            let run = run_suites(&parsed.structure, &parsed.params, &suites, &plan);
            let summary = PlanSummary {
                points: m.sample.count,
                seed: m.sample.seed,
                mode: m.sample.mode,
                pq: m.metallic.clone(),
                sample: pts.iter().map(|p| p.labels()).collect(),
            };
            let rep = build_report(&m, summary, run);
            for s in &rep.suites {
                let status = format!("{:?}", s.status).to_uppercase();
                println!("{status:<8}{:<28}max residual {}", s.id.name(), s.max_residual.exact);
            }
            println!("dPhi' sign: {}", rep.conventions.dphi_prime_sign);
            if let Some(path) = report {
                std::fs::write(&path, rep.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(rep.passed())
        }
    }
}
