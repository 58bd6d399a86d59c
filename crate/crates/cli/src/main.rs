use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confnum::demos::{self, Harmonic, HarmonicSetup, MoebiusMap};
use confnum::lie::{self, VerificationReport};
use confnum::moebius;
use confnum::tensors::{render_table, TableFormat};
use confnum::{verify, AlgebraLevel, Error, Vocabulary};
use serde::Serialize;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "confnum",
    version,
    about = "Conformal compactification tower: tables, exact verification and demos"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Tower level (base level for conformal and reduced suites)
    #[arg(long, global = true, default_value_t = 2)]
    level: usize,

    /// Largest accepted level
    #[arg(long, global = true, default_value_t = 4)]
    max_level: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Float tolerance for rotor and Möbius checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximal word length for symbolic decomposition
    #[arg(long, global = true, default_value_t = 4)]
    word_cap: usize,

    /// Decomposition vocabulary: generators, lifted or unrolled
    #[arg(long, global = true)]
    vocab: Option<Vocabulary>,

    /// Report elapsed time as 0 for byte-stable output
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print metadata of a tower level
    Tower,
    /// Run exact verification suites
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print the metric and the symbolic spin tensor
    Table,
    /// Run a numeric demonstration
    Demo {
        #[command(subcommand)]
        kind: Demo,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Metric,
    Spin,
    Lorentz,
    Conformal,
    Reduced,
    Involutions,
    All,
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Laplacian of a harmonic sample pulled back by a Möbius map
    Harmonic(HarmonicArgs),
    /// The mass-ratio identity
    Massratio,
    /// Rotor and Vahlen-matrix sample checks
    Moebius {
        /// Number of random samples
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct HarmonicArgs {
    /// Harmonic sample: re-z2, re-z3, re-z4 or log-abs
    #[arg(long, default_value = "re-z2")]
    sample: Harmonic,

    #[arg(long, value_enum, default_value_t = MapKind::Inversion)]
    map: MapKind,

    /// Grid spacing
    #[arg(long, default_value_t = 0.01)]
    h: f64,

    /// Lower-left corner x
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    x0: f64,

    /// Lower-left corner y
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    y0: f64,

    /// Side length of the square grid
    #[arg(long, default_value_t = 1.0)]
    side: f64,

    /// Minimal distance between the grid and a pole of the map
    #[arg(long, default_value_t = 0.1)]
    margin: f64,

    /// Write the Laplacian of the pullback as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Identity,
    Inversion,
}

/// Either a usage problem (exit 2) or a failed computation (exit 1).
enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Run(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cfg = &cli.config;
    if cfg.level > cfg.max_level {
        return Err(Failure::Usage(format!(
            "level {} exceeds the maximum {} (raise --max-level to allow it)",
            cfg.level, cfg.max_level
        )));
    }
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        return Err(Failure::Usage(format!(
            "tolerance {} must be positive",
            cfg.tolerance
        )));
    }
    if cfg.word_cap == 0 {
        return Err(Failure::Usage("word cap must be at least 1".into()));
    }
    let level = AlgebraLevel::at(cfg.level);
    match &cli.command {
        Command::Tower => tower(cfg, &level),
        Command::Verify { suite } => run_verify(cfg, &level, *suite),
        Command::Table => table(cfg, &level),
        Command::Demo { kind } => demo(cfg, &level, kind),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TowerInfo {
    level: usize,
    n: usize,
    matrix_dim: usize,
    signature: (usize, usize),
    clifford: (usize, usize),
    generator_squares: Vec<i8>,
    note: Option<&'static str>,
}

fn tower(cfg: &RunConfig, level: &AlgebraLevel) -> Result<Output, Failure> {
    let info = TowerInfo {
        level: level.index(),
        n: level.n(),
        matrix_dim: level.dim(),
        signature: level.signature(),
        clifford: level.clifford_label(),
        generator_squares: level.generator_squares()?,
        note: match level.index() {
            0 => Some("complex plane"),
            1 => Some("Pauli algebra"),
            2 => Some("Dirac algebra"),
            _ => None,
        },
    };
    let text = match cfg.format {
        Format::Json => to_json(&info),
        Format::Text => {
            let squares: Vec<&str> = info
                .generator_squares
                .iter()
                .map(|s| if *s > 0 { "+" } else { "-" })
                .collect();
            let mut t = String::new();
            let _ = writeln!(t, "level {}", info.level);
            let _ = writeln!(t, "  paravector dimension n = {}", info.n);
            let _ = writeln!(
                t,
                "  matrix dimension {}x{}",
                info.matrix_dim, info.matrix_dim
            );
            let _ = writeln!(
                t,
                "  signature ({}, {})",
                info.signature.0, info.signature.1
            );
            let _ = writeln!(
                t,
                "  clifford algebra R_{{{},{}}}",
                info.clifford.0, info.clifford.1
            );
            let _ = writeln!(t, "  generator squares ({})", squares.join(", "));
            if let Some(note) = info.note {
                let _ = writeln!(t, "  note: {note}");
            }
            t
        }
    };
    Ok(Output { text, passed: true })
}

fn suite_reports(
    level: &AlgebraLevel,
    suite: Suite,
    seed: u64,
) -> confnum::Result<Vec<VerificationReport>> {
    Ok(match suite {
        Suite::Metric => vec![verify::verify_metric(level)?],
        Suite::Spin => vec![verify::verify_spin(level)?],
        Suite::Lorentz => vec![lie::verify_lorentz(level)?],
        Suite::Conformal => vec![
            lie::verify_closed_forms(level)?,
            lie::verify_conformal(level)?,
        ],
        Suite::Reduced => vec![lie::reduced_spin(level)?],
        Suite::Involutions => vec![verify::verify_involutions(level, seed, 8)?],
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Metric,
                Suite::Spin,
                Suite::Involutions,
                Suite::Lorentz,
                Suite::Conformal,
                Suite::Reduced,
            ] {
                all.extend(suite_reports(level, s, seed)?);
            }
            all
        }
    })
}

fn run_verify(cfg: &RunConfig, level: &AlgebraLevel, suite: Suite) -> Result<Output, Failure> {
    let mut reports = suite_reports(level, suite, cfg.seed)?;
    if cfg.no_timing {
        reports = reports
            .into_iter()
            .map(VerificationReport::without_timing)
            .collect();
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let text = match cfg.format {
        Format::Json => to_json(&reports),
        Format::Text => {
            let mut t = String::new();
            for r in &reports {
                let _ = writeln!(
                    t,
                    "{} {}: {} checks, {} failures, {:.1} ms",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.suite,
                    r.checks,
                    r.failures.len(),
                    r.ms
                );
                for f in &r.failures {
                    let _ = writeln!(
                        t,
                        "  {} at {:?}: expected {}, got {}; difference {}",
                        f.relation,
                        f.indices,
                        f.expected.as_deref().unwrap_or("?"),
                        f.actual.as_deref().unwrap_or("?"),
                        f.difference.join("; ")
                    );
                }
            }
            t
        }
    };
    Ok(Output { text, passed })
}

fn table(cfg: &RunConfig, level: &AlgebraLevel) -> Result<Output, Failure> {
    let vocab = cfg
        .vocab
        .unwrap_or_else(|| Vocabulary::default_for(level.index()));
    let format = match cfg.format {
        Format::Text => TableFormat::Text,
        Format::Json => TableFormat::Json,
    };
    let mut text = render_table(level, format, vocab, cfg.word_cap)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Output { text, passed: true })
}

fn demo(cfg: &RunConfig, level: &AlgebraLevel, kind: &Demo) -> Result<Output, Failure> {
    match kind {
        Demo::Massratio => {
            let m = demos::mass_ratio_deviation();
            let text = match cfg.format {
                Format::Json => to_json(&m),
                Format::Text => format!(
                    "predicted sqrt(4 pi exp(4 pi)) = {:.4}\nexperimental proton/electron = {}\ndeviation = {:.3} %\n",
                    m.predicted, m.experimental, m.deviation_percent
                ),
            };
            Ok(Output { text, passed: true })
        }
        Demo::Harmonic(args) => harmonic(cfg, args),
        Demo::Moebius { samples } => {
            let r = moebius::transform_checks(level, cfg.seed, *samples, cfg.tolerance)?;
            let text = match cfg.format {
                Format::Json => to_json(&r),
                Format::Text => {
                    let mut t = String::new();
                    let _ = writeln!(
                        t,
                        "{} moebius(level {}): {} samples, seed {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.level,
                        r.samples,
                        r.seed
                    );
                    let _ = writeln!(t, "  rotor norm drift       {:.3e}", r.rotor_norm_error);
                    let _ = writeln!(t, "  composition error      {:.3e}", r.composition_error);
                    let _ = writeln!(t, "  inversion involution   {:.3e}", r.involution_error);
                    let _ = writeln!(t, "  translation additivity {:.3e}", r.translation_error);
                    let _ = writeln!(
                        t,
                        "  null point maps to infinity: {}",
                        r.null_maps_to_infinity
                    );
                    t
                }
            };
            Ok(Output {
                text,
                passed: r.passed,
            })
        }
    }
}

fn harmonic(cfg: &RunConfig, args: &HarmonicArgs) -> Result<Output, Failure> {
    let setup = HarmonicSetup {
        sample: args.sample,
        map: match args.map {
            MapKind::Identity => MoebiusMap::identity(),
            MapKind::Inversion => MoebiusMap::inversion(),
        },
        x0: args.x0,
        y0: args.y0,
        side: args.side,
        h: args.h,
        margin: args.margin,
        ..HarmonicSetup::default()
    };
    let r = demos::harmonic_demo(&setup)?;
    if let Some(path) = &args.csv {
        let field =
            demos::moebius_pullback(&setup.map, |z| setup.sample.eval(z), r.grid, setup.margin)?;
        let lap = demos::fd_laplacian(&field)?;
        std::fs::write(path, lap.to_csv())
            .map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
    }
    let text = match cfg.format {
        Format::Json => to_json(&r),
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(
                t,
                "{} harmonic({}, {}): {}x{} grid, h = {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.sample.name(),
                match args.map {
                    MapKind::Identity => "identity",
                    MapKind::Inversion => "inversion",
                },
                r.grid.nx,
                r.grid.ny,
                r.grid.h
            );
            let _ = writeln!(t, "  identity-map residual  {:.3e}", r.baseline_max);
            let _ = writeln!(t, "  pullback residual      {:.3e}", r.pullback_max);
            let _ = writeln!(
                t,
                "  within {}x identity    {}",
                r.bound_factor, r.within_bound
            );
            let _ = writeln!(
                t,
                "  h / (h/2) ratio        {:.4} (expected in [{}, {}]: {})",
                r.convergence_ratio, r.ratio_range.0, r.ratio_range.1, r.ratio_in_range
            );
            t
        }
    };
    Ok(Output {
        text,
        passed: r.passed,
    })
}
