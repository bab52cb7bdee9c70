//! CLI for the symplectic-fermion verification suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sympfer::commands;
use sympfer::config::{parse_half_doubled, RunConfig};

#[derive(Parser)]
#[command(name = "sympfer", about = "Exact fusion-rule verification for even symplectic fermions", version)]
struct Cli {
    /// Optional key=value config file; flags override its settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Number of symplectic-fermion pairs.
    #[arg(long, global = true)]
    d: Option<u8>,
    /// Weight cutoff; integers or half-integers like "13/2".
    #[arg(long, global = true)]
    cutoff: Option<String>,
    /// Largest matrix size for the determinant identities.
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Truncation order for the correction series.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Cache directory (also settable via SYMPFER_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Output format: json or text.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant and telescope identities for the A^k matrices.
    VerifyAppendix,
    /// Vertex-algebra axioms, central charge, twisted ground energy.
    VerifyVoa,
    /// O-space bases, generator certificates, reduction congruences.
    Zhu,
    /// Fusion table, Klein-four algebra, rank-d reduction.
    Fusion,
    /// All checks in dependency order.
    ReportAll,
    /// Exact coefficients of the twisting correction series.
    CoeffsDelta,
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    if let Some(d) = cli.d {
        cfg.d = d;
    }
    if let Some(c) = &cli.cutoff {
        cfg.w_doubled = parse_half_doubled(c)?;
    }
    if let Some(k) = cli.kmax {
        cfg.k_max = k;
    }
    if let Some(o) = cli.order {
        cfg.series_order = o;
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = dir.clone();
    }
    if let Some(f) = &cli.format {
        cfg.set("format", f)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match cli.command {
        Command::VerifyAppendix => commands::cmd_verify_appendix(&cfg),
        Command::VerifyVoa => commands::cmd_verify_voa(&cfg),
        Command::Zhu => commands::cmd_zhu(&cfg),
        Command::Fusion => commands::cmd_fusion(&cfg),
        Command::ReportAll => commands::cmd_report_all(&cfg),
        Command::CoeffsDelta => commands::cmd_coeffs_delta(&cfg),
    };
    println!("{}", report.render(cfg.format));
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
