//! Command-line front end.
//!
//! Exit codes: 0 when the command succeeds and every selected check passes, 1 when a
//! check fails or a computation does not converge, 2 for usage errors and domain
//! violations.

pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::families::{self, CsLabel, Family, PhaseSign, TruncatedState, Truncation};
use crate::isotonic::{self, BasisIndex, OscillatorParams};
use crate::verify::{self, Selection, Tolerances, VerifyConfig};
pub use output::{Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(name = "isocs", version, about = "Isotonic-oscillator coherent states: evaluation and identity checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled label pairs (overlap and kernel checks).
    #[arg(long, default_value_t = VerifyConfig::default().seed, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize, Clone, Copy)]
pub struct Oscillator {
    /// γ = 1 + ½√(1 + 4A); at least 3/2.
    #[arg(long, conflicts_with = "coupling")]
    pub gamma: Option<f64>,
    /// Coupling A >= 0, as an alternative to --gamma.
    #[arg(long)]
    pub coupling: Option<f64>,
}

impl Oscillator {
    fn params(&self) -> Result<OscillatorParams<f64>, CliError> {
        match (self.gamma, self.coupling) {
            (Some(g), _) => Ok(OscillatorParams::from_gamma(g)?),
            (None, Some(a)) => Ok(OscillatorParams::from_coupling(a)?),
            (None, None) => Err(CliError::Usage("one of --gamma or --coupling is required".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Class1,
    Class2,
    Gk,
    GkShifted,
    General,
    MittagLeffler,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Class1 => Family::ClassI,
            FamilyArg::Class2 => Family::ClassII,
            FamilyArg::Gk => Family::GkIsotonic,
            FamilyArg::GkShifted => Family::GkShifted,
            FamilyArg::General => Family::GeneralSpectrum,
            FamilyArg::MittagLeffler => Family::MittagLeffler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseArg {
    Printed,
    Conjugate,
}

/// Label of a coherent state. Which flags are needed depends on the family:
/// class1/class2 use --x, --theta, --gamma; gk/gk-shifted use --J, --alpha, --gamma;
/// general uses --J, --alpha, --c, --d, --phase; mittag-leffler uses --z-re, --z-im,
/// --a, --b.
#[derive(Debug, Args, Serialize, Clone, Copy)]
pub struct LabelArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long = "J")]
    pub j: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, value_enum, default_value_t = PhaseArg::Printed)]
    pub phase: PhaseArg,
    #[arg(long, allow_hyphen_values = true)]
    pub z_re: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z_im: f64,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Fixed truncation order M; adaptive when omitted.
    #[arg(long)]
    pub m_max: Option<usize>,
    /// Cap on the adaptive truncation.
    #[arg(long, default_value_t = 100_000)]
    pub max_terms: usize,
}

/// The second label of a pair; unset fields fall back to the first label's values.
#[derive(Debug, Args, Serialize, Clone, Copy)]
pub struct SecondLabel {
    #[arg(long)]
    pub x2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<f64>,
    #[arg(long = "J2")]
    pub j2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z2_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z2_im: Option<f64>,
}

fn need(v: Option<f64>, flag: &str, family: FamilyArg) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --family {}", family_name(family))))
}

fn family_name(f: FamilyArg) -> &'static str {
    Family::from(f).name()
}

impl LabelArgs {
    fn truncation(&self) -> Truncation {
        match self.m_max {
            Some(m) => Truncation::Fixed { m },
            None => Truncation::Adaptive { max: self.max_terms },
        }
    }

    fn label(&self) -> Result<CsLabel<f64>, CliError> {
        let f = self.family;
        Ok(match f {
            FamilyArg::Class1 | FamilyArg::Class2 => {
                CsLabel::Point { x: need(self.x, "x", f)?, theta: self.theta, gamma: need(self.gamma, "gamma", f)? }
            }
            FamilyArg::Gk | FamilyArg::GkShifted => {
                CsLabel::ActionAngle { j: need(self.j, "J", f)?, alpha: self.alpha, gamma: need(self.gamma, "gamma", f)? }
            }
            FamilyArg::General => {
                let phase = match self.phase {
                    PhaseArg::Printed => PhaseSign::Printed,
                    PhaseArg::Conjugate => PhaseSign::Conjugate,
                };
                CsLabel::general(need(self.j, "J", f)?, self.alpha, need(self.c, "c", f)?, need(self.d, "d", f)?, phase)?
            }
            FamilyArg::MittagLeffler => CsLabel::MittagLeffler {
                z: Complex64::new(need(self.z_re, "z-re", f)?, self.z_im),
                a: need(self.a, "a", f)?,
                b: need(self.b, "b", f)?,
            },
        })
    }

    fn second(&self, s: &SecondLabel) -> Result<CsLabel<f64>, CliError> {
        let first = self.label()?;
        Ok(match first {
            CsLabel::Point { x, theta, gamma } => {
                CsLabel::Point { x: s.x2.unwrap_or(x), theta: s.theta2.unwrap_or(theta), gamma }
            }
            CsLabel::ActionAngle { j, alpha, gamma } => {
                CsLabel::ActionAngle { j: s.j2.unwrap_or(j), alpha: s.alpha2.unwrap_or(alpha), gamma }
            }
            CsLabel::GeneralSpectrum { j, alpha, c, d, omega, phase } => {
                CsLabel::GeneralSpectrum { j: s.j2.unwrap_or(j), alpha: s.alpha2.unwrap_or(alpha), c, d, omega, phase }
            }
            CsLabel::MittagLeffler { z, a, b } => {
                CsLabel::MittagLeffler { z: Complex64::new(s.z2_re.unwrap_or(z.re), s.z2_im.unwrap_or(z.im)), a, b }
            }
        })
    }

    fn state(&self) -> Result<TruncatedState<f64>, CliError> {
        Ok(families::build_state(self.family.into(), self.label()?, self.truncation())?)
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// ψ_m(x). Columns: m, x, value.
    EvalPsi {
        #[command(flatten)]
        osc: Oscillator,
        /// Quantum numbers, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        m: Vec<usize>,
        /// Explicit abscissae, comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
        /// Uniform grid from --x-min to --x-max with --points points, used when --x is absent.
        #[arg(long, default_value_t = 0.1)]
        x_min: f64,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// e_m = 2(2m + γ). Columns: m, energy.
    Eigenvalues {
        #[command(flatten)]
        osc: Oscillator,
        #[arg(long, default_value_t = 5)]
        m_max: usize,
    },
    /// Gram matrix by exact Laguerre quadrature. Columns: m, n, value.
    Gram {
        #[command(flatten)]
        osc: Oscillator,
        #[arg(long, default_value_t = 15)]
        m_max: usize,
    },
    /// Normalized coefficients. Columns: m, re, im, probability.
    CsBuild {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Photon-number distribution. Columns: m, probability.
    CsProb {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Overlap <first|second>. Columns: re, im, modulus, truncation.
    CsOverlap {
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        second: SecondLabel,
    },
    /// e^{-iHt} applied to the state. Columns: m, re, im, probability.
    CsEvolve {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Mean energy. Columns: quantity, value.
    CsEnergy {
        #[command(flatten)]
        label: LabelArgs,
        /// Terms of the smoothed Class-II energy and normalization sums.
        #[arg(long, default_value_t = 1_000_000)]
        terms: usize,
    },
    /// Reproducing kernel K(first, second) with unnormalized coefficients. Columns: re, im, truncation.
    Kernel {
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        second: SecondLabel,
    },
    /// Run the identity checks.
    Verify {
        #[arg(value_enum, default_value_t = Selection::All)]
        selection: Selection,
        /// Additional γ for grids whose domain admits it.
        #[arg(long)]
        gamma: Option<f64>,
        /// Fixed truncation for the fast-converging families.
        #[arg(long)]
        truncation: Option<usize>,
        /// Tolerance override NAME=VALUE; repeatable. Names as in `isocs tolerances`.
        #[arg(long = "tol", value_parser = parse_override)]
        tol: Vec<(String, f64)>,
    },
    /// The tolerance table. Columns: name, value, description.
    Tolerances,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let v: f64 = v.parse().map_err(|e| format!("bad tolerance value '{v}': {e}"))?;
    Ok((k.to_string(), v))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lib(Error::Domain { .. } | Error::Unsupported(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit
/// code. Output goes to `stdout` or the `--output` file; diagnostics to `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let r = execute(&cli, &mut w, stderr);
                r.and_then(|c| w.flush().map(|_| c).map_err(CliError::from))
            }
            Err(e) => Err(CliError::Io(e)),
        },
        None => execute(&cli, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// `run_with` on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn coefficient_table(s: &TruncatedState<f64>) -> Table {
    let mut t = Table::new(&["m", "re", "im", "probability"]);
    for (m, c) in s.coeffs.iter().enumerate() {
        t.push(vec![m.into(), c.re.into(), c.im.into(), c.norm_sqr().into()]);
    }
    t
}

fn warn(stderr: &mut dyn Write, s: &TruncatedState<f64>) {
    for w in &s.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let config = serde_json::to_value(cli).expect("config serializes");
    let table = match &cli.command {
        Command::EvalPsi { osc, m, x, x_min, x_max, points } => {
            let p = osc.params()?;
            let xs: Vec<f64> = if !x.is_empty() {
                x.clone()
            } else {
                if *points < 2 {
                    return Err(CliError::Usage("--points must be at least 2".into()));
                }
                (0..*points).map(|i| x_min + (x_max - x_min) * i as f64 / (*points - 1) as f64).collect()
            };
            let mut t = Table::new(&["m", "x", "value"]);
            for &mi in m {
                for &xv in &xs {
                    t.push(vec![mi.into(), xv.into(), isotonic::wavefunction(BasisIndex(mi), &p, xv)?.into()]);
                }
            }
            t
        }
        Command::Eigenvalues { osc, m_max } => {
            let p = osc.params()?;
            let mut t = Table::new(&["m", "energy"]);
            for m in 0..=*m_max {
                t.push(vec![m.into(), isotonic::eigenvalue(BasisIndex(m), &p).into()]);
            }
            t
        }
        Command::Gram { osc, m_max } => {
            let p = osc.params()?;
            let rule = isotonic::gram_rule(&p, *m_max)?;
            let g = isotonic::gram_matrix(&p, *m_max, &rule)?;
            let _ = writeln!(stderr, "max |G - I| = {:e}", isotonic::max_deviation_from_identity(&g));
            let mut t = Table::new(&["m", "n", "value"]);
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    t.push(vec![i.into(), j.into(), (*v).into()]);
                }
            }
            t
        }
        Command::CsBuild { label } => {
            let s = label.state()?;
            warn(stderr, &s);
            coefficient_table(&s)
        }
        Command::CsProb { label } => {
            let s = label.state()?;
            warn(stderr, &s);
            let mut t = Table::new(&["m", "probability"]);
            for m in 0..=s.m {
                t.push(vec![m.into(), families::probability(&s, m).into()]);
            }
            t
        }
        Command::CsOverlap { label, second } => {
            let family: Family = label.family.into();
            let l1 = label.label()?;
            let l2 = label.second(second)?;
            let trunc = match label.m_max {
                Some(m) => m,
                None => {
                    let a = families::build_state(family, l1, label.truncation())?.m;
                    let b = families::build_state(family, l2, label.truncation())?.m;
                    a.max(b)
                }
            };
            let s1 = families::build_state(family, l1, Truncation::Fixed { m: trunc })?;
            let s2 = families::build_state(family, l2, Truncation::Fixed { m: trunc })?;
            warn(stderr, &s1);
            warn(stderr, &s2);
            let o = families::overlap(&s1, &s2);
            let mut t = Table::new(&["re", "im", "modulus", "truncation"]);
            t.push(vec![o.re.into(), o.im.into(), o.norm().into(), trunc.into()]);
            t
        }
        Command::CsEvolve { label, t } => {
            let s = label.state()?;
            warn(stderr, &s);
            let e = families::evolve(&s, *t)?;
            if let Some(l) = families::relabel_after(s.family, &s.label, *t) {
                let _ = writeln!(stderr, "relabeled: {}", serde_json::to_string(&l).unwrap_or_default());
            }
            coefficient_table(&e)
        }
        Command::CsEnergy { label, terms } => {
            let mut t = Table::new(&["quantity", "value"]);
            if label.family == FamilyArg::Class2 {
                let (x, gamma) = (need(label.x, "x", label.family)?, need(label.gamma, "gamma", label.family)?);
                let e = families::class2_energy(x, gamma, families::Class2Argument::Squared, *terms)?;
                t.push(vec!["series".into(), e.series.into()]);
                t.push(vec!["closed".into(), e.closed_as_printed.into()]);
            } else {
                let s = label.state()?;
                warn(stderr, &s);
                let e = families::expected_energy(&s)?;
                t.push(vec!["series".into(), e.into()]);
                if matches!(s.family, Family::GkShifted) {
                    if let CsLabel::ActionAngle { j, .. } = s.label {
                        t.push(vec!["action".into(), j.into()]);
                    }
                }
            }
            t
        }
        Command::Kernel { label, second } => {
            let m = label
                .m_max
                .ok_or_else(|| CliError::Usage("--m-max is required for kernel".into()))?;
            let k = families::reproducing_kernel(label.family.into(), &label.label()?, &label.second(second)?, m)?;
            let mut t = Table::new(&["re", "im", "truncation"]);
            t.push(vec![k.re.into(), k.im.into(), m.into()]);
            t
        }
        Command::Verify { selection, gamma, truncation, tol } => {
            let overrides: BTreeMap<String, f64> = tol.iter().cloned().collect();
            let tolerances = Tolerances::with_overrides(overrides).map_err(CliError::Usage)?;
            let cfg = VerifyConfig { gamma: *gamma, truncation: truncation.map(|m| Truncation::Fixed { m }), seed: cli.seed };
            let records = verify::run(*selection, &cfg, &tolerances);
            output::write_reports(out, cli.format, &config, &records)?;
            let failed = records.iter().any(|r| !r.pass);
            return Ok(if failed { EXIT_FAILURE } else { EXIT_OK });
        }
        Command::Tolerances => {
            let mut t = Table::new(&["name", "value", "description"]);
            for tol in verify::TABLE {
                t.push(vec![tol.name.into(), tol.value.into(), tol.description.into()]);
            }
            t
        }
    };
    output::write(out, cli.format, &config, &table)?;
    Ok(EXIT_OK)
}
