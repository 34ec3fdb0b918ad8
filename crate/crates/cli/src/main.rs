use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use gkcli::{execute, exit, exit_code, parse_bytes, render_report, Flags};
use gradedkernel::FieldSpec;

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s.eq_ignore_ascii_case("QQ") {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| format!("expected QQ or a prime, found '{s}'"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, found '{s}'"))?;
    let lo: i32 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: i32 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Run a session script and print its results.
#[derive(Parser, Debug)]
#[command(name = "gradedkernel", version)]
struct Cli {
    /// Script file; standard input when absent or "-".
    script: Option<PathBuf>,
    /// Coefficient field for every ring: QQ or a prime p.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Seed for the generated corpus used by `verify`.
    #[arg(long, env = "GRADEDKERNEL_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of formal tower stages used by `verify`.
    #[arg(long, default_value_t = 6)]
    tmax: u32,
    /// Degree window LO:HI for cohomology tables.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i32, i32)>,
    /// Resolution length cap.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Per-command time limit in seconds.
    #[arg(long)]
    timeout: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bytes = match &cli.script {
        Some(p) if p.as_os_str() != "-" => std::fs::read(p),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map(|_| buf)
        }
    };
    let bytes = match bytes {
        Ok(b) => b,
        Err(e) => {
            eprintln!("cannot read script: {e}");
            return ExitCode::from(exit::ENGINE as u8);
        }
    };
    let script = match parse_bytes(&bytes) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(exit::PARSE as u8);
        }
    };
    let flags = Flags {
        field: cli.field,
        seed: cli.seed,
        t_max: cli.tmax,
        window: cli.window,
        max_steps: cli.max_steps,
        timeout: cli.timeout.map(Duration::from_secs),
    };
    let doc = execute(&script, &flags);
    print!("{}", render_report(&doc));
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, doc.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(exit::ENGINE as u8);
        }
    }
    if let Some(e) = &doc.error {
        eprintln!("error at {} in '{}': {}", e.location, e.statement, e.message);
    }
    ExitCode::from(exit_code(&doc) as u8)
}
