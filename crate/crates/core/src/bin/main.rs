use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fh_spectra::io::calibrate::{
    candidate_grid, cmd_calibrate, default_conventions, CalibrationTarget,
};
use fh_spectra::io::figures::{cmd_figure_data, FigureKind};
use fh_spectra::io::reference::{self, calibration_target};
use fh_spectra::io::table::{self, cmd_table, compare};
use fh_spectra::io::verify::cmd_verify;
use fh_spectra::io::{OutputFormat, RunConfig};
use fh_spectra::molecule::{self, Molecule};
use fh_spectra::spectrum::momentum_eigenvalue;
use fh_spectra::wavefn::{normalize, psi, support, WavefunctionSpec, SUPPORT_NATS};
use fh_spectra::{Error, Result};

const EXIT_USAGE: u8 = 2;
const EXIT_BREACH: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "fh-spectra",
    version,
    about = "Quantized momentum spectra for Kratzer plus screened Coulomb potentials"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Run configuration (flat `key = value` file).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Screening parameter; repeat for several values.
    #[arg(long = "alpha")]
    alphas: Vec<f64>,
    /// Highest level index.
    #[arg(long)]
    nmax: Option<u32>,
    /// Restrict to these molecules; repeatable.
    #[arg(long = "molecule")]
    molecules: Vec<String>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Momentum tables, one per alpha.
    Table(Common),
    /// Plot data for one figure, one file per molecule.
    FigureData {
        /// potential_vs_t, potential_vs_t_alpha, pn_vs_alpha, pn_vs_de,
        /// kratzer_pn_vs_de or coulomb_pn_vs_alpha.
        figure: String,
        #[command(flatten)]
        common: Common,
    },
    /// Closed form against the finite-difference oracle, plus eigenfunction checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Coarsest oracle grid size.
        #[arg(long)]
        grid_points: Option<usize>,
        /// Skip Richardson extrapolation.
        #[arg(long)]
        no_extrapolation: bool,
        /// Skip the eigenfunction checks.
        #[arg(long)]
        no_wavefunctions: bool,
    },
    /// Search the mapping grid against the reference CO column.
    Calibrate(Common),
    /// Per-level spectrum records.
    Spectrum(Common),
    /// Sampled normalized eigenfunction.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        level: u32,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
}

struct Context {
    cfg: RunConfig,
    molecules: Vec<Molecule>,
    /// Set when `--out` was given explicitly.
    explicit_out: bool,
}

fn context(common: &Common) -> Result<Context> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if !common.alphas.is_empty() {
        cfg.alphas = common.alphas.clone();
    }
    if let Some(n) = common.nmax {
        cfg.n_max = n;
    }
    if let Some(f) = &common.format {
        cfg.output_format = f.parse()?;
    }
    if let Some(out) = &common.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    let all = match &cfg.molecules_csv {
        Some(path) => molecule::load_csv(path)?,
        None => molecule::builtin(),
    };
    let molecules = if common.molecules.is_empty() {
        all
    } else {
        common
            .molecules
            .iter()
            .map(|name| {
                molecule::find(&all, name)
                    .cloned()
                    .ok_or_else(|| Error::Usage(format!("unknown molecule `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(Context {
        cfg,
        molecules,
        explicit_out: common.out.is_some(),
    })
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn ext(cfg: &RunConfig) -> &'static str {
    cfg.output_format.as_str()
}

fn run_table(ctx: &Context) -> Result<u8> {
    let cfg = &ctx.cfg;
    for t in cmd_table(cfg, &ctx.molecules)? {
        let body = match cfg.output_format {
            OutputFormat::Csv => t.to_csv(cfg),
            OutputFormat::Json => t.to_json(cfg)?,
        };
        write(
            &cfg.output_dir,
            &format!("table_alpha_{}.{}", t.alpha, ext(cfg)),
            &body,
        )?;
    }
    Ok(0)
}

fn run_figure(ctx: &Context, figure: &str) -> Result<u8> {
    let kind: FigureKind = figure.parse()?;
    for data in cmd_figure_data(kind, &ctx.cfg, &ctx.molecules)? {
        write(
            &ctx.cfg.output_dir,
            &format!("{}.csv", data.file_stem),
            &data.to_csv(&ctx.cfg),
        )?;
    }
    Ok(0)
}

fn run_verify(
    ctx: &mut Context,
    grid_points: Option<usize>,
    no_extrapolation: bool,
    no_wf: bool,
) -> Result<u8> {
    if let Some(g) = grid_points {
        ctx.cfg.grid_points = g;
    }
    if no_extrapolation {
        ctx.cfg.oracle_extrapolate = false;
    }
    let report = cmd_verify(&ctx.cfg, &ctx.molecules, !no_wf)?;
    write(&ctx.cfg.output_dir, "verification.json", &report.to_json()?)?;
    let worst = report
        .entries
        .iter()
        .filter_map(|e| e.rel_err)
        .fold(0.0, f64::max);
    println!(
        "{} entries, {} eigenfunction checks, worst oracle rel_err {worst:.3e}",
        report.entries.len(),
        report.wavefunctions.len()
    );
    for b in &report.breaches {
        eprintln!("breach: {b}");
    }
    Ok(if report.passed() { 0 } else { EXIT_BREACH })
}

fn run_calibrate(ctx: &Context) -> Result<u8> {
    let cfg = &ctx.cfg;
    let co = molecule::find(&ctx.molecules, "CO")
        .cloned()
        .or_else(|| molecule::builtin_molecule("CO"))
        .ok_or_else(|| Error::Usage("calibration needs a CO record".into()))?;
    let (alpha, values) = calibration_target();
    let candidates = candidate_grid(&default_conventions(&cfg.constants));
    let report = cmd_calibrate(
        &candidates,
        CalibrationTarget {
            molecule: co,
            alpha,
            values,
        },
    );
    write(
        &cfg.output_dir,
        "calibration_report.json",
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )?;
    let status = serde_json::to_value(report.status)?;
    println!(
        "calibration status: {}",
        status.as_str().unwrap_or_default()
    );
    if let Some(calibrated) = report.calibrated_config(cfg) {
        write(&cfg.output_dir, "calibrated.conf", &calibrated.to_text())?;
        // Residuals of the chosen mapping against every reference entry.
        let mut csv = String::new();
        for line in calibrated.header_lines() {
            let _ = writeln!(csv, "# {line}");
        }
        let _ = writeln!(csv, "# status: {}", status.as_str().unwrap_or_default());
        let _ = writeln!(csv, "alpha,molecule,n,emitted,reference,residual");
        let builtin = molecule::builtin();
        for reftable in reference::tables() {
            let t = table::build(&calibrated, &builtin, reftable.alpha)?;
            for r in compare(&t, &reftable) {
                let _ = writeln!(
                    csv,
                    "{},{},{},{:.9},{:.9},{:.9}",
                    r.alpha, r.molecule, r.n, r.emitted, r.reference, r.residual
                );
            }
        }
        write(&cfg.output_dir, "table_residuals.csv", &csv)?;
    }
    Ok(0)
}

fn emit(ctx: &Context, name: &str, body: &str) -> Result<()> {
    if ctx.explicit_out {
        write(&ctx.cfg.output_dir, name, body)
    } else {
        print!("{body}");
        Ok(())
    }
}

fn run_spectrum(ctx: &Context) -> Result<u8> {
    let cfg = &ctx.cfg;
    let mut records = Vec::new();
    for m in &ctx.molecules {
        for &alpha in &cfg.alphas {
            let p = cfg.mapping.params(m, alpha, &cfg.constants)?;
            for n in 0..=cfg.n_max {
                records.push((
                    m.name.clone(),
                    momentum_eigenvalue(n, &p, &cfg.constants, m.mu)?,
                ));
            }
        }
    }
    let body = match cfg.output_format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = records
                .iter()
                .map(|(name, r)| {
                    let mut v = serde_json::to_value(r)?;
                    v["molecule"] = name.clone().into();
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            serde_json::to_string_pretty(&serde_json::json!({
                "header": cfg.header_lines(),
                "levels": rows,
            }))? + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            for line in cfg.header_lines() {
                let _ = writeln!(s, "# {line}");
            }
            let _ = writeln!(
                s,
                "molecule,alpha,n,Pn,eps1,eps2,eps3,inv_q,lambda_n,lambda_residual,normalizable"
            );
            for (name, r) in &records {
                let _ = writeln!(
                    s,
                    "{name},{},{},{:.9},{:e},{:e},{:e},{:e},{:e},{:e},{}",
                    r.alpha,
                    r.n,
                    r.pn,
                    r.eps1,
                    r.eps2,
                    r.eps3,
                    r.inv_q,
                    r.lambda_n,
                    r.lambda_residual,
                    r.normalizable
                );
            }
            s
        }
    };
    emit(ctx, &format!("spectrum.{}", ext(cfg)), &body)?;
    Ok(0)
}

fn run_wavefunction(ctx: &Context, level: u32, points: usize) -> Result<u8> {
    let cfg = &ctx.cfg;
    if points < 2 {
        return Err(Error::Usage("--points must be at least 2".into()));
    }
    let m = ctx
        .molecules
        .first()
        .ok_or_else(|| Error::Usage("no molecule selected".into()))?;
    let alpha = cfg.alphas[0];
    let p = cfg.mapping.params(m, alpha, &cfg.constants)?;
    let res = momentum_eigenvalue(level, &p, &cfg.constants, m.mu)?;
    let spec = normalize(&WavefunctionSpec::from_level(
        &res,
        &p,
        &cfg.constants,
        m.mu,
    )?)?;
    let (lo, hi) = support(&spec, SUPPORT_NATS);
    let mut s = String::new();
    for line in cfg.header_lines() {
        let _ = writeln!(s, "# {line}");
    }
    let _ = writeln!(s, "# molecule = {}", m.name);
    let _ = writeln!(s, "# n = {level}");
    let _ = writeln!(s, "# alpha = {alpha}");
    let _ = writeln!(s, "# Bn = {:e}", spec.bn());
    let _ = writeln!(s, "# ln_Bn = {}", spec.log_bn);
    let _ = writeln!(s, "# eps1 = {}", spec.eps1);
    let _ = writeln!(s, "# invQ = {}", spec.inv_q);
    let _ = writeln!(s, "t,psi_{level}");
    for i in 0..points {
        let t = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let _ = writeln!(s, "{t:.9e},{:.9e}", psi(t, &spec));
    }
    emit(ctx, &format!("wavefunction_{}_n{level}.csv", m.name), &s)?;
    Ok(0)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Usage(_)
        | Error::Config(_)
        | Error::Domain(_)
        | Error::Parameter(_)
        | Error::UnsupportedQc { .. }
        | Error::NonNormalizable { .. }
        | Error::JacobiIndex { .. }
        | Error::Csv(_) => EXIT_USAGE,
        _ => EXIT_SOLVER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = (|| -> Result<u8> {
        match &cli.verb {
            Verb::Table(c) => run_table(&context(c)?),
            Verb::FigureData { figure, common } => run_figure(&context(common)?, figure),
            Verb::Verify {
                common,
                grid_points,
                no_extrapolation,
                no_wavefunctions,
            } => run_verify(
                &mut context(common)?,
                *grid_points,
                *no_extrapolation,
                *no_wavefunctions,
            ),
            Verb::Calibrate(c) => run_calibrate(&context(c)?),
            Verb::Spectrum(c) => run_spectrum(&context(c)?),
            Verb::Wavefunction {
                common,
                level,
                points,
            } => run_wavefunction(&context(common)?, *level, *points),
        }
    })();
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
