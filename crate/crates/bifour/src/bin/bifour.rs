//! Command-line surface for the bifour toolkit.

use bifour::config::RunConfig;
use bifour::format;
use bifour::symspec;
use bifour::verify;
use bifour::{HarnessError, Result};
use bifour_core::bilinear::{ApplyPath, apply_bilinear_with, hardy_window};
use bifour_core::norms::{NormFlavor, SmoothnessParams, bmo_norm, hardy1_norm, lp_norm, symbol_norm};
use bifour_core::symbols::{WindowFamily, dyadic_piece};
use bifour_core::Lattice;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "bifour", about = "Discrete spectral toolkit for bilinear Fourier multipliers")]
struct Cli {
    /// Flat key=value configuration file; CLI flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra key=value overrides applied after the config file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeArgs {
    /// Lattice dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Points per axis.
    #[arg(long)]
    size: Option<usize>,
    /// Spatial period L.
    #[arg(long)]
    period: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a norm of a symbol's dyadic piece or of a field file.
    Norm {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Symbol spec, e.g. "coifman-meyer(alpha=1)".
        #[arg(long, conflicts_with = "field")]
        symbol: Option<String>,
        /// Field file (text format).
        #[arg(long)]
        field: Option<PathBuf>,
        /// product | mixed-1 | mixed-2 | besov-1 | besov-2 (symbols);
        /// l2 | bmo | h1 (fields).
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        s1: Option<f64>,
        #[arg(long)]
        s2: Option<f64>,
        /// Dyadic level of the symbol piece.
        #[arg(long, default_value_t = 0)]
        j: i32,
    },
    /// Apply T_m to two field files and write the result.
    Apply {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        f1: PathBuf,
        #[arg(long)]
        f2: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// auto | naive | fast
        #[arg(long, default_value = "auto")]
        path: String,
    },
    /// Decompose a field file into vanishing-mass dyadic pieces.
    Decompose {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, default_value_t = 0.8)]
        smoothness: f64,
        #[arg(long, default_value_t = 8)]
        max_level: i32,
        /// Pieces are written to PREFIX-<k>.txt.
        #[arg(long)]
        out_prefix: String,
    },
    /// Run the check catalog and write JSON-lines reports plus a CSV summary.
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Run every catalog entry.
        #[arg(long)]
        all: bool,
        /// Run specific checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the symbol catalog and the check catalog.
    Symbols,
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_text(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    for s in &cli.sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| HarnessError::Parse(format!("expected KEY=VALUE, got {s:?}")))?;
        cfg.set(k, v)?;
    }
    Ok(cfg)
}

fn apply_lattice_args(cfg: &mut RunConfig, args: &LatticeArgs) {
    if let Some(d) = args.dim {
        cfg.dim = d;
    }
    if let Some(n) = args.size {
        cfg.size = n;
    }
    if let Some(l) = args.period {
        cfg.period = l;
    }
}

/// Output directory: `BIFOUR_OUT` wins over the config value.
fn outdir(cfg: &RunConfig) -> PathBuf {
    std::env::var_os("BIFOUR_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(&cfg.outdir))
}

fn append_jsonl(path: &Path, line: &str) -> Result<()> {
    use std::io::Write;
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{line}")?;
    Ok(())
}

fn parse_symbol_flavor(name: &str) -> Option<NormFlavor> {
    match name {
        "product" => Some(NormFlavor::Product),
        "mixed-1" => Some(NormFlavor::Mixed1),
        "mixed-2" => Some(NormFlavor::Mixed2),
        "besov-1" => Some(NormFlavor::Besov1),
        "besov-2" => Some(NormFlavor::Besov2),
        _ => None,
    }
}

fn cmd_norm(
    cfg: &RunConfig,
    symbol: Option<&str>,
    field: Option<&Path>,
    flavor: &str,
    s1: f64,
    s2: f64,
    j: i32,
) -> Result<()> {
    let value = match (symbol, field) {
        (Some(spec), None) => {
            let flav = parse_symbol_flavor(flavor).ok_or_else(|| {
                HarnessError::Parse(format!("flavor {flavor:?} is not a symbol norm"))
            })?;
            let lat = Lattice::new(cfg.dim, cfg.size, cfg.period)?;
            let m = symspec::resolve_symbol(spec, &lat)?;
            let w = WindowFamily::new(cfg.taper_profile()?);
            let piece = dyadic_piece(&m, j, &w, &lat)?;
            symbol_norm(&piece, &SmoothnessParams::new(s1, s2, flav), &w)?
        }
        (None, Some(path)) => {
            let f = format::read_field_path(path)?;
            match flavor {
                "l2" => lp_norm(&f, 2.0)?,
                "bmo" => bmo_norm(&f),
                "h1" => hardy1_norm(&f, &hardy_window(f.lattice()))?,
                other => {
                    return Err(HarnessError::Parse(format!(
                        "flavor {other:?} is not a field norm (use l2, bmo, or h1)"
                    )))
                }
            }
        }
        _ => {
            return Err(HarnessError::Parse(
                "exactly one of --symbol and --field is required".to_string(),
            ))
        }
    };
    println!("{value}");
    let record = serde_json::json!({
        "check": "norm",
        "norm": flavor,
        "params": {"s1": s1, "s2": s2, "j": j},
        "value": value,
        "lattice": {"dim": cfg.dim, "size": cfg.size, "period": cfg.period},
        "source": symbol.map(str::to_string).unwrap_or_else(|| field.unwrap().display().to_string()),
    });
    append_jsonl(&outdir(cfg).join("norm.jsonl"), &record.to_string())
}

fn cmd_apply(spec: &str, f1: &Path, f2: &Path, out: &Path, path: &str) -> Result<()> {
    let mode = match path {
        "auto" => ApplyPath::Auto,
        "naive" => ApplyPath::Naive,
        "fast" => ApplyPath::Separable,
        other => return Err(HarnessError::Parse(format!("unknown apply path: {other}"))),
    };
    let a = format::read_field_path(f1)?;
    let b = format::read_field_path(f2)?;
    let m = symspec::resolve_symbol(spec, a.lattice())?;
    let t = apply_bilinear_with(&m, &a, &b, mode)?;
    format::write_field_path(out, &t)?;
    Ok(())
}

fn cmd_decompose(field: &Path, smoothness: f64, max_level: i32, prefix: &str) -> Result<()> {
    let f = format::read_field_path(field)?;
    let d = bifour_core::decomp::vanishing_decompose(&f, smoothness, max_level)?;
    for (k, g) in d.pieces.iter().enumerate() {
        format::write_field_path(Path::new(&format!("{prefix}-{k}.txt")), g)?;
    }
    for (k, c) in d.decay.iter().enumerate() {
        println!("level {k}: decay {c}");
    }
    Ok(())
}

fn cmd_verify(cfg: &mut RunConfig, all: bool, checks: &[String], seed: Option<u64>) -> Result<bool> {
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if all {
        cfg.checks.clear();
    } else if !checks.is_empty() {
        cfg.checks = checks.to_vec();
    }
    let reports = verify::run_suite(cfg)?;
    let dir = outdir(cfg);
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("reports.jsonl"), verify::json_lines(&reports))?;
    std::fs::write(dir.join("summary.csv"), verify::summary_csv(&reports))?;
    for r in &reports {
        println!(
            "{}: constant {:.6e} drift {:.4} {}",
            r.id,
            r.constant,
            r.drift,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn run(cli: Cli) -> Result<bool> {
    let mut cfg = load_config(&cli)?;
    match &cli.command {
        Command::Norm { lattice, symbol, field, flavor, s1, s2, j } => {
            apply_lattice_args(&mut cfg, lattice);
            let s1 = s1.unwrap_or(cfg.s1);
            let s2 = s2.unwrap_or(cfg.s2);
            cmd_norm(&cfg, symbol.as_deref(), field.as_deref(), flavor, s1, s2, *j)?;
            Ok(true)
        }
        Command::Apply { symbol, f1, f2, out, path } => {
            cmd_apply(symbol, f1, f2, out, path)?;
            Ok(true)
        }
        Command::Decompose { field, smoothness, max_level, out_prefix } => {
            cmd_decompose(field, *smoothness, *max_level, out_prefix)?;
            Ok(true)
        }
        Command::Verify { lattice, all, checks, seed } => {
            apply_lattice_args(&mut cfg, lattice);
            cmd_verify(&mut cfg, *all, checks, *seed)
        }
        Command::Symbols => {
            println!("symbol catalog:");
            for s in symspec::SYMBOL_NAMES {
                println!("  {s}");
            }
            println!("check catalog:");
            for c in verify::CATALOG {
                println!("  {c}");
            }
            Ok(true)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
