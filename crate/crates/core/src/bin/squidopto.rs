use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use squid_optomech::circuit::{self, FluxBias};
use squid_optomech::config::{self, DeviceConfig};
use squid_optomech::coupling::{self, GeometryKind, ValidityPolicy};
use squid_optomech::hamiltonian::{MultimodeSpec, TwoModeParams};
use squid_optomech::spectrum::{self, HamiltonianSource, SpectrumForm, SpectrumRequest};
use squid_optomech::sweep::{self, GridRange, Metadata, SweepConfig, SweepQuantity, Table};
use squid_optomech::{diag, Error, Result};

#[derive(Parser)]
#[command(name = "squidopto", version, about = "SQUID-coupled resonator optomechanics calculator")]
struct Cli {
    /// Device description (JSON, SI units)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameter sweeps over the flux bias
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
    /// Lowest eigenvalues of a Hamiltonian
    Spectrum(SpectrumArgs),
    /// Adiabatic validity report for the configured device
    Validate {
        /// Override the configured bias
        #[arg(long, allow_hyphen_values = true)]
        bias: Option<f64>,
    },
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[arg(long, default_value = "0:0.45:46")]
    bias: GridRange,
    #[arg(long, default_value = "galvanic")]
    geometry: GeometryKind,
    /// Keep rows failing the validity checks, with warnings
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(Subcommand)]
enum SweepKind {
    /// Flux factor F against bias
    FluxFactor(SweepArgs),
    /// g0/omega_A for both loop designs
    G0(SweepArgs),
    /// g0/omega_B over (omega_B/omega_A, bias)
    G0Contour {
        #[command(flatten)]
        common: SweepArgs,
        #[arg(long, default_value = "0.02:0.2:10")]
        ratio: GridRange,
    },
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, default_value = "optomech")]
    form: SpectrumForm,
    /// Comma-separated Fock dimensions
    #[arg(long, value_delimiter = ',', default_value = "4,40")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long)]
    compare_polaron: bool,
    #[arg(long)]
    allow_invalid: bool,
    /// Coupling design used with --config
    #[arg(long)]
    geometry: Option<GeometryKind>,
    #[arg(long, default_value_t = 5.0)]
    omega_a: f64,
    #[arg(long, default_value_t = 1.0)]
    omega_b: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    g0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    drive_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    drive_im: f64,
    #[arg(long)]
    drive_freq: Option<f64>,
    /// Linearization amplitude; derived from the drive when omitted
    #[arg(long, allow_hyphen_values = true)]
    alpha_re: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_im: f64,
    /// Number of A and B modes for the multimode form
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    modes: Vec<usize>,
    /// Also write the operator as JSON
    #[arg(long)]
    export_operator: Option<PathBuf>,
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn require_config(cli: &Cli) -> Result<DeviceConfig> {
    match &cli.config {
        Some(p) => config::load_config(p),
        None => Err(Error::Validation("--config <path> is required".into())),
    }
}

fn policy(allow_invalid: bool) -> ValidityPolicy {
    if allow_invalid {
        ValidityPolicy::Allow
    } else {
        ValidityPolicy::Enforce
    }
}

fn emit(out: &Option<PathBuf>, table: &Table, meta: &Metadata) -> Result<()> {
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    match out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            table.write_csv(meta, &mut f)?;
            f.flush()?;
        }
        None => table.write_csv(meta, &mut io::stdout().lock())?,
    }
    Ok(())
}

fn run_sweep(cli: &Cli, kind: &SweepKind) -> Result<()> {
    let cfg = require_config(cli)?;
    let (quantity, args, ratio) = match kind {
        SweepKind::FluxFactor(a) => (SweepQuantity::FluxFactor, a, None),
        SweepKind::G0(a) => (SweepQuantity::G0OverOmegaA, a, None),
        SweepKind::G0Contour { common, ratio } => (SweepQuantity::G0OverOmegaB, common, Some(*ratio)),
    };
    let mut sc = SweepConfig::new(quantity, args.bias)
        .with_geometry(args.geometry)
        .with_policy(policy(args.allow_invalid));
    if let Some(r) = ratio {
        sc = sc.with_ratio(r);
    }
    let table = sweep::run_sweep(&cfg, &sc)?;
    emit(&cli.out, &table, &Metadata::new(Some(&cfg), command_line()))
}

fn two_mode_from_flags(a: &SpectrumArgs) -> Result<TwoModeParams> {
    let dims = dims_pair(&a.dims)?;
    let mut p = TwoModeParams::new(a.omega_a, a.omega_b, a.g0, dims);
    if a.drive_re != 0.0 || a.drive_im != 0.0 || a.drive_freq.is_some() {
        p = p.with_drive(Complex64::new(a.drive_re, a.drive_im), a.drive_freq.unwrap_or(0.0));
    }
    p.validate()?;
    Ok(p)
}

fn dims_pair(dims: &[usize]) -> Result<(usize, usize)> {
    match dims {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::DimensionMismatch(format!(
            "--dims needs two entries for this form, got {}",
            dims.len()
        ))),
    }
}

fn run_spectrum(cli: &Cli, a: &SpectrumArgs) -> Result<()> {
    let cfg = cli.config.as_ref().map(config::load_config).transpose()?;
    let pol = policy(a.allow_invalid);
    let source = match a.form {
        SpectrumForm::Array => {
            let cfg = cfg.as_ref().ok_or_else(|| Error::Validation("the array form needs --config".into()))?;
            let spec = cfg
                .array
                .clone()
                .ok_or_else(|| Error::Validation("config has no array section".into()))?;
            HamiltonianSource::Array(spec)
        }
        SpectrumForm::Multimode => {
            let cfg = cfg.as_ref().ok_or_else(|| Error::Validation("the multimode form needs --config".into()))?;
            let geom = geometry_of(cfg, a.geometry)?;
            let [ma, mb] = a.modes[..] else {
                return Err(Error::DimensionMismatch("--modes takes two counts".into()));
            };
            let spec = MultimodeSpec::from_device(cfg, &geom, cfg.bias, ma, mb)?;
            let unit = spec.freqs_b.first().copied().unwrap_or(1.0);
            let dims = if a.dims.len() == 1 { vec![a.dims[0]; ma + mb] } else { a.dims.clone() };
            HamiltonianSource::Multimode {
                spec: spec.rescaled(unit),
                dims,
            }
        }
        _ => {
            let mut params = match &cfg {
                Some(cfg) => {
                    let geom = geometry_of(cfg, a.geometry)?;
                    spectrum::two_mode_from_device(cfg, &geom, pol, dims_pair(&a.dims)?)?
                }
                None => two_mode_from_flags(a)?,
            };
            if cfg.is_some() && (a.drive_re != 0.0 || a.drive_im != 0.0 || a.drive_freq.is_some()) {
                params = params.with_drive(Complex64::new(a.drive_re, a.drive_im), a.drive_freq.unwrap_or(0.0));
            }
            HamiltonianSource::TwoMode {
                params,
                alpha: a.alpha_re.map(|re| Complex64::new(re, a.alpha_im)),
            }
        }
    };
    let req = SpectrumRequest {
        form: a.form,
        source,
        k: a.k,
        compare_polaron: a.compare_polaron,
        dimension_cap: diag::DEFAULT_DIMENSION_CAP,
    };
    if let Some(path) = &a.export_operator {
        let h = spectrum::build_hamiltonian(&req)?;
        let json = serde_json::to_string(&h).map_err(|e| Error::Validation(e.to_string()))?;
        std::fs::write(path, json)?;
    }
    let table = spectrum::spectrum_command(&req)?;
    emit(&cli.out, &table, &Metadata::new(cfg.as_ref(), command_line()))
}

fn geometry_of(cfg: &DeviceConfig, kind: Option<GeometryKind>) -> Result<coupling::CouplingGeometry> {
    cfg.coupling.geometry_as(kind.unwrap_or(cfg.coupling.variant))
}

fn run_validate(cli: &Cli, bias: Option<f64>) -> Result<bool> {
    let cfg = require_config(cli)?;
    let bias = match bias {
        Some(b) => FluxBias::new(b)?,
        None => cfg.bias,
    };
    let report = circuit::validate_adiabatic(&cfg, bias);
    let mut text = String::new();
    text.push_str(&format!("bias_phi0={bias}\n"));
    for check in &report.checks {
        text.push_str(&format!("{check}\n"));
    }
    if let Ok(geom) = cfg.coupling.geometry() {
        if let Ok(c) = coupling::coupling_g0(&cfg, &geom, bias, ValidityPolicy::Allow) {
            let ghz = |w: f64| w / (2.0 * std::f64::consts::PI * 1e9);
            text.push_str(&format!("omega_A_GHz={:.6}\n", ghz(c.omega_a)));
            text.push_str(&format!("omega_B_GHz={:.6}\n", ghz(c.omega_b)));
            text.push_str(&format!("g0_over_omegaA={}\n", sweep::format_number(c.over_omega_a())));
        }
    }
    text.push_str(if report.all_passed() { "result=PASS\n" } else { "result=FAIL\n" });
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sweep { kind } => run_sweep(&cli, kind).map(|_| true),
        Command::Spectrum(a) => run_spectrum(&cli, a).map(|_| true),
        Command::Validate { bias } => run_validate(&cli, *bias),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
