use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use ptheta::spectrum::export::{track_rows, write_csv, SPECTRUM_HEADER, TRACK_HEADER};
use ptheta::spectrum::{
    circle_path, laurent_coefficients, negative_scan_notes, negative_spectrum_scan, radial_path, real_spectrum_scan,
    track_zero, ScanDocument, SpectrumRow, TrackDocument,
};
use ptheta::theta::{theta_jet_planned, Partial};
use ptheta::{BallComplex, SpectrumError, ThetaError};
use ptheta_cli::{reproduce, run_suite, to_json, Suite, ThresholdTable, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "ptheta", version, about = "Certified numerics for the partial theta function")]
struct Cli {
    /// Target accuracy for evaluations and solvers.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Recorded working precision; only 53 (double) is implemented.
    #[arg(long, global = true, env = "THETA_SPECTRUM_PRECISION", default_value_t = 53)]
    precision_bits: u32,
    /// Worker threads.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Segments,
    Disk,
    Lemmas,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Published,
    Corrected,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanArg {
    Positive,
    Negative,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified value of a partial derivative of θ(q, x).
    Eval {
        /// Complex literal, e.g. 0.3, -7.5 or 0.2+0.1i.
        #[arg(long, allow_hyphen_values = true)]
        q: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        x: Complex64,
        #[arg(long, default_value_t = 0)]
        dx: u8,
        #[arg(long, default_value_t = 0)]
        dq: u8,
    },
    /// Runs a certificate suite; exits 1 naming any certificate that fails.
    Certify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Lower thresholds are multiplied and upper thresholds divided by this factor.
        #[arg(long, default_value_t = 1.0)]
        threshold_scale: f64,
        #[arg(long, value_enum, default_value_t = TableArg::Published)]
        thresholds: TableArg,
    },
    /// Real spectral numbers in (0, 1) or (-1, 0).
    Spectrum {
        #[arg(long, value_enum)]
        scan: ScanArg,
        #[arg(long)]
        max: u32,
    },
    /// Continues the zero ξ_j(q) ~ -q^{-j} from small |q| to --to.
    Track {
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        to: Complex64,
        /// Modulus where the path starts (at most 0.05).
        #[arg(long, default_value_t = 0.01)]
        start: f64,
        #[arg(long, default_value_t = 60)]
        steps: usize,
        /// Then go once around |q| = |to| in this many steps.
        #[arg(long)]
        around: Option<usize>,
    },
    /// Laurent coefficients of ξ_j at q^{-j}, q^{-j+1}, ...
    Laurent {
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0.08)]
        radius: f64,
    },
    /// Recomputes every published constant and runs every certificate.
    Reproduce {
        #[arg(long, value_enum, default_value_t = TableArg::Published)]
        thresholds: TableArg,
        /// Positive spectral numbers to include.
        #[arg(long, default_value_t = 5)]
        spectrum_max: u32,
    },
}

/// What went wrong, mapped to an exit code.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn spectrum_failure(e: SpectrumError) -> Failure {
    match e {
        SpectrumError::InvalidArgument(_) | SpectrumError::Theta(ThetaError::NonConvergent { .. } | ThetaError::DomainError(_)) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Verification(other.to_string()),
    }
}

fn table(t: TableArg) -> ThresholdTable {
    match t {
        TableArg::Published => ThresholdTable::Published,
        TableArg::Corrected => ThresholdTable::Corrected,
    }
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.path {
            Some(p) => Box::new(File::create(p).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", p.display())))?),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn json<T: Serialize>(&self, v: &T) -> Result<(), Failure> {
        self.writer()?.write_all(to_json(v).as_bytes())?;
        Ok(())
    }
}

fn json_only(format: Format, cmd: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::Usage(format!("{cmd} writes JSON only"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if !(cli.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    if cli.precision_bits < 53 {
        return Err(Failure::Usage(format!("--precision-bits must be at least 53, got {}", cli.precision_bits)));
    }
    if let Some(n) = cli.parallelism {
        if n == 0 {
            return Err(Failure::Usage("--parallelism must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    let out = Output { path: cli.out.clone() };
    match cli.command {
        Command::Eval { q, x, dx, dq } => {
            json_only(cli.format, "eval")?;
            let want = Partial::from_orders(dx, dq).map_err(|e| Failure::Usage(e.to_string()))?;
            let (jet, plan) =
                theta_jet_planned(BallComplex::point(q), BallComplex::point(x), want, cli.tol).map_err(|e| Failure::Usage(e.to_string()))?;
            let v = jet.c[want.index()];
            out.json(&json!({
                "schema_version": SCHEMA_VERSION,
                "q": q,
                "x": x,
                "dx": dx,
                "dq": dq,
                "tol": cli.tol,
                "precision_bits": cli.precision_bits,
                "center": v.center,
                "radius": v.radius,
                "modulus_upper": v.abs_upper(),
                "route": plan.route,
                "terms": plan.terms,
            }))
        }
        Command::Certify { suite, threshold_scale, thresholds } => {
            json_only(cli.format, "certify")?;
            if !(threshold_scale > 0.0) {
                return Err(Failure::Usage(format!("--threshold-scale must be positive, got {threshold_scale}")));
            }
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Segments => Suite::Segments,
                SuiteArg::Disk => Suite::Disk,
                SuiteArg::Lemmas => Suite::Lemmas,
            };
            let report = run_suite(suite, table(thresholds), threshold_scale);
            out.json(&report)?;
            if report.valid {
                Ok(())
            } else {
                let names: Vec<String> = report
                    .failures()
                    .iter()
                    .map(|f| format!("{} {}{}", f.kind, f.name, f.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()))
                    .collect();
                Err(Failure::Verification(format!("failed certificates: {}", names.join("; "))))
            }
        }
        Command::Spectrum { scan, max } => match scan {
            ScanArg::Positive => {
                let pts = real_spectrum_scan(max, cli.tol).map_err(spectrum_failure)?;
                match cli.format {
                    Format::Json => out.json(&ScanDocument::positive(&pts, max, cli.tol)),
                    Format::Csv => {
                        let rows: Vec<SpectrumRow> = pts.iter().map(SpectrumRow::from).collect();
                        Ok(write_csv(&rows, &SPECTRUM_HEADER, out.writer()?)?)
                    }
                }
            }
            ScanArg::Negative => {
                let pts = negative_spectrum_scan(max, cli.tol).map_err(spectrum_failure)?;
                match cli.format {
                    Format::Json => out.json(&ScanDocument::negative(&pts, max, cli.tol, negative_scan_notes())),
                    Format::Csv => {
                        let rows: Vec<SpectrumRow> = pts.iter().map(SpectrumRow::from).collect();
                        Ok(write_csv(&rows, &SPECTRUM_HEADER, out.writer()?)?)
                    }
                }
            }
        },
        Command::Track { j, to, start, steps, around } => {
            let mut path = radial_path(to, start, steps);
            if let Some(n) = around {
                if n < 8 {
                    return Err(Failure::Usage("--around needs at least 8 steps".into()));
                }
                path.extend(circle_path(to.norm(), to.arg(), n).into_iter().skip(1));
            }
            let track = track_zero(j, &path, cli.tol).map_err(spectrum_failure)?;
            match cli.format {
                Format::Json => out.json(&TrackDocument::new(track)),
                Format::Csv => Ok(write_csv(&track_rows(&track), &TRACK_HEADER, out.writer()?)?),
            }
        }
        Command::Laurent { j, n, radius } => {
            let c = laurent_coefficients(j, n, radius).map_err(spectrum_failure)?;
            #[derive(Serialize)]
            struct Row {
                power: i64,
                re: f64,
                im: f64,
            }
            let rows: Vec<Row> = c.iter().enumerate().map(|(m, z)| Row { power: m as i64 - i64::from(j), re: z.re, im: z.im }).collect();
            match cli.format {
                Format::Json => out.json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "j": j,
                    "fit_radius": radius,
                    "coefficients": rows,
                })),
                Format::Csv => Ok(write_csv(&rows, &["power", "re", "im"], out.writer()?)?),
            }
        }
        Command::Reproduce { thresholds, spectrum_max } => {
            json_only(cli.format, "reproduce")?;
            let report = reproduce(table(thresholds), spectrum_max);
            out.json(&report)?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} mismatches:\n  {}", report.mismatches.len(), report.mismatches.join("\n  "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("ptheta: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ptheta: {msg}");
            ExitCode::from(2)
        }
    }
}
