//! Run configuration: flag and JSON-file schemas, merging, and validation.
//! Every rejection names the offending field and maps to exit status 2.

use std::path::{Path, PathBuf};

use afm_core::calibration::{ConstraintSet, NLevelModel};
use afm_core::potentials::{Family, Formulation, QuantumNumbers, Sign};
use clap::Args;
use serde::Deserialize;

#[derive(Debug)]
pub struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

pub type ConfigResult<T> = Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Afm,
    Compare,
    Fit,
    Tables,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Afm => "afm",
            Command::Compare => "compare",
            Command::Fit => "fit",
            Command::Tables => "tables",
        }
    }

    fn parse(name: &str) -> ConfigResult<Command> {
        match name {
            "spectrum" => Ok(Command::Spectrum),
            "afm" => Ok(Command::Afm),
            "compare" => Ok(Command::Compare),
            "fit" => Ok(Command::Fit),
            "tables" => Ok(Command::Tables),
            other => Err(bad(format!(
                "`command` must be one of spectrum, afm, compare, fit, tables; got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Problem statement: a dimensionless control parameter or physical
/// coefficients (mass, first-term strength, optional second-term strength).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemInput {
    Beta(f64),
    Physical { m: f64, a: f64, b: Option<f64> },
}

#[derive(Debug, Clone)]
pub enum ModelChoice {
    Named(String),
    Explicit(NLevelModel),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub family: Option<Family>,
    pub problem: Option<ProblemInput>,
    pub formulation: Formulation,
    pub sign: Sign,
    pub level: Option<QuantumNumbers>,
    pub window: (u32, u32),
    pub nmodel: Option<ModelChoice>,
    pub constraints: ConstraintSet,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub digits: usize,
    pub numeric_csv: Option<PathBuf>,
    pub mesh_size: usize,
}

/// Flags shared by every subcommand. All optional; a `--config` file fills
/// whatever the command line leaves unset.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Potential family: kratzer, quad-centrifugal, anharmonic, quad-coulomb, funnel
    #[arg(long)]
    pub family: Option<String>,
    /// Dimensionless control parameter of the reduced problem
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Particle mass (physical input; pairs with --a and usually --b)
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Strength of the family's first potential term (physical input)
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Strength of the family's second potential term (physical input)
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Which term carries the control parameter: epsilon (default) or eta
    #[arg(long)]
    pub formulation: Option<String>,
    /// Sign of the r^-2 term for quad-centrifugal: plus (default) or minus
    #[arg(long)]
    pub sign: Option<String>,
    /// Radial quantum number of a single level (needs --l)
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Orbital quantum number of a single level (needs --n)
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<i64>,
    /// Largest radial quantum number of the level window (default 3)
    #[arg(long = "n-max", allow_negative_numbers = true)]
    pub n_max: Option<i64>,
    /// Largest orbital quantum number of the level window (default 3)
    #[arg(long = "l-max", allow_negative_numbers = true)]
    pub l_max: Option<i64>,
    /// Level-count model: nho, nc, set1, set2
    #[arg(long)]
    pub nmodel: Option<String>,
    /// Refit constraint recipe: set1 (default) or set2
    #[arg(long)]
    pub constraints: Option<String>,
    /// Output format: text (default), csv, json
    #[arg(long)]
    pub format: Option<String>,
    /// Write the artifact to this path instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Significant digits in text output (default 6)
    #[arg(long, allow_negative_numbers = true)]
    pub digits: Option<i64>,
    /// Reuse a numeric table saved by `spectrum --format csv` (compare only)
    #[arg(long = "numeric-csv")]
    pub numeric_csv: Option<PathBuf>,
    /// Base mesh size of the eigensolver ladder (default 512)
    #[arg(long = "mesh-size", allow_negative_numbers = true)]
    pub mesh_size: Option<i64>,
}

/// JSON config file schema; field names are kebab-case to match the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    command: Option<String>,
    family: Option<String>,
    beta: Option<f64>,
    physical: Option<PhysicalInput>,
    formulation: Option<String>,
    sign: Option<String>,
    n: Option<i64>,
    l: Option<i64>,
    n_max: Option<i64>,
    l_max: Option<i64>,
    nmodel: Option<NModelField>,
    constraints: Option<String>,
    format: Option<String>,
    output: Option<PathBuf>,
    digits: Option<i64>,
    numeric_csv: Option<PathBuf>,
    mesh_size: Option<i64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhysicalInput {
    m: f64,
    a: f64,
    b: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum NModelField {
    Named(String),
    Explicit(NLevelModel),
}

pub fn load_file(path: &Path) -> ConfigResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read `config` file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("`config` file {}: {e}", path.display())))
}

fn parse_index(name: &str, value: Option<i64>) -> ConfigResult<Option<u32>> {
    match value {
        None => Ok(None),
        Some(v) if v < 0 => Err(bad(format!("`{name}` must be ≥ 0, got {v}"))),
        Some(v) => {
            u32::try_from(v).map(Some).map_err(|_| bad(format!("`{name}` is too large: {v}")))
        }
    }
}

/// Merge the subcommand, flags, and config file into a validated RunConfig.
/// Flags override file fields; if any of beta/mass/a/b appears on the command
/// line, the command line alone defines the problem statement.
pub fn assemble(
    command: Option<Command>,
    flags: &CommonArgs,
    file: FileConfig,
) -> ConfigResult<RunConfig> {
    let command = match (command, file.command.as_deref()) {
        (Some(c), None) => c,
        (None, Some(name)) => Command::parse(name)?,
        (Some(c), Some(name)) => {
            let from_file = Command::parse(name)?;
            if from_file != c {
                return Err(bad(format!(
                    "`command` {name:?} in the config file conflicts with the {} subcommand",
                    c.name()
                )));
            }
            c
        }
        (None, None) => {
            return Err(bad("a subcommand (spectrum, afm, compare, fit, tables) is required, \
                 on the command line or as `command` in the config file"))
        }
    };

    let family = match flags.family.as_deref().or(file.family.as_deref()) {
        Some(name) => {
            let fam: Family = name.parse().map_err(|_| {
                bad(format!(
                    "`family` must be one of kratzer, quad-centrifugal, anharmonic, \
                     quad-coulomb, funnel; got {name:?}"
                ))
            })?;
            if matches!(fam, Family::PurePower | Family::TwoPower) {
                return Err(bad(format!(
                    "`family` {name} has no single-parameter form; use one of kratzer, \
                     quad-centrifugal, anharmonic, quad-coulomb, funnel"
                )));
            }
            Some(fam)
        }
        None => None,
    };

    let flags_define_problem =
        flags.beta.is_some() || flags.mass.is_some() || flags.a.is_some() || flags.b.is_some();
    let problem = if flags_define_problem {
        match (flags.beta, flags.mass, flags.a, flags.b) {
            (Some(beta), None, None, None) => Some(ProblemInput::Beta(beta)),
            (Some(_), _, _, _) => {
                return Err(bad("`beta` and the physical parameters `mass`/`a`/`b` are mutually \
                     exclusive; give exactly one problem description"))
            }
            (None, m, a, b) => {
                let m = m.ok_or_else(|| bad("physical input needs `mass`"))?;
                let a = a.ok_or_else(|| bad("physical input needs `a`"))?;
                Some(ProblemInput::Physical { m, a, b })
            }
        }
    } else {
        match (file.beta, file.physical) {
            (Some(_), Some(_)) => {
                return Err(bad("`beta` and `physical` are mutually exclusive; give exactly one"))
            }
            (Some(beta), None) => Some(ProblemInput::Beta(beta)),
            (None, Some(p)) => Some(ProblemInput::Physical { m: p.m, a: p.a, b: p.b }),
            (None, None) => None,
        }
    };
    match problem {
        Some(ProblemInput::Beta(beta)) if !(beta.is_finite() && beta >= 0.0) => {
            return Err(bad(format!("`beta` must be a finite number ≥ 0, got {beta}")));
        }
        Some(ProblemInput::Physical { m, a, b }) => {
            if !(m.is_finite() && m > 0.0) {
                return Err(bad(format!("`mass` must be > 0, got {m}")));
            }
            if !(a.is_finite() && a > 0.0) {
                return Err(bad(format!("`a` must be > 0, got {a}")));
            }
            if let Some(b) = b {
                if !(b.is_finite() && b > 0.0) {
                    return Err(bad(format!(
                        "`b` must be > 0 (the sign of the term is fixed by the family), got {b}"
                    )));
                }
            }
        }
        _ => {}
    }

    let formulation_given = flags.formulation.is_some() || file.formulation.is_some();
    let formulation = match flags.formulation.as_deref().or(file.formulation.as_deref()) {
        Some(name) => name
            .parse::<Formulation>()
            .map_err(|_| bad(format!("`formulation` must be epsilon or eta, got {name:?}")))?,
        None => Formulation::Epsilon,
    };

    let sign_given = flags.sign.is_some() || file.sign.is_some();
    let sign = match flags.sign.as_deref().or(file.sign.as_deref()) {
        Some("plus") | None => Sign::Plus,
        Some("minus") => Sign::Minus,
        Some(other) => return Err(bad(format!("`sign` must be plus or minus, got {other:?}"))),
    };

    let n = parse_index("n", flags.n.or(file.n))?;
    let l = parse_index("l", flags.l.or(file.l))?;
    let level = match (n, l) {
        (Some(n), Some(l)) => Some(QuantumNumbers::new(n, l)),
        (None, None) => None,
        _ => return Err(bad("`n` and `l` must be given together")),
    };
    let n_max = parse_index("n-max", flags.n_max.or(file.n_max))?;
    let l_max = parse_index("l-max", flags.l_max.or(file.l_max))?;
    let window_given = n_max.is_some() || l_max.is_some();
    if level.is_some() && window_given {
        return Err(bad(
            "`n`/`l` select a single level and are mutually exclusive with `n-max`/`l-max`",
        ));
    }
    let window = (n_max.unwrap_or(3), l_max.unwrap_or(3));

    let nmodel = match (flags.nmodel.as_deref(), file.nmodel) {
        (Some(name), _) => Some(ModelChoice::Named(parse_model_name(name)?)),
        (None, Some(NModelField::Named(name))) => {
            Some(ModelChoice::Named(parse_model_name(&name)?))
        }
        (None, Some(NModelField::Explicit(m))) => {
            NLevelModel::new(m.b_kind, m.b_params, m.c_kind, m.c_params)
                .map_err(|e| bad(format!("`nmodel`: {e}")))?;
            Some(ModelChoice::Explicit(m))
        }
        (None, None) => None,
    };

    let constraints_given = flags.constraints.is_some() || file.constraints.is_some();
    let constraints = match flags.constraints.as_deref().or(file.constraints.as_deref()) {
        Some(name) => name
            .parse::<ConstraintSet>()
            .map_err(|_| bad(format!("`constraints` must be set1 or set2, got {name:?}")))?,
        None => ConstraintSet::Set1,
    };

    let format = match flags.format.as_deref().or(file.format.as_deref()) {
        Some("text") | None => OutputFormat::Text,
        Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(bad(format!("`format` must be one of text, csv, json; got {other:?}")))
        }
    };

    let digits = match flags.digits.or(file.digits) {
        None => 6,
        Some(d @ 1..=17) => d as usize,
        Some(d) => return Err(bad(format!("`digits` must be between 1 and 17, got {d}"))),
    };

    let mesh_size = match flags.mesh_size.or(file.mesh_size) {
        None => 512,
        Some(m @ 64..) => m as usize,
        Some(m) => return Err(bad(format!("`mesh-size` must be ≥ 64, got {m}"))),
    };

    let output = flags.output.clone().or(file.output);
    let numeric_csv = flags.numeric_csv.clone().or(file.numeric_csv);

    // Cross-field compatibility.
    if formulation == Formulation::Eta
        && !matches!(family, Some(Family::QuadCoulomb | Family::Funnel))
    {
        return Err(bad("`formulation` eta is only available for quad-coulomb and funnel"));
    }
    if sign_given && family != Some(Family::QuadCentrifugal) {
        return Err(bad("`sign` applies only to family quad-centrifugal"));
    }
    if let (Some(fam), Some(ProblemInput::Physical { b, .. })) = (family, problem) {
        match (fam, b) {
            (Family::Kratzer, Some(_)) => {
                return Err(bad("`b` is not used by family kratzer; its shape is fixed by `a`"))
            }
            (Family::Kratzer, None) => {}
            (_, None) => return Err(bad(format!("`b` is required for family {fam}"))),
            _ => {}
        }
    }

    // Per-command requirements.
    let needs_problem = matches!(command, Command::Spectrum | Command::Afm | Command::Compare);
    if matches!(command, Command::Spectrum | Command::Afm | Command::Compare | Command::Fit)
        && family.is_none()
    {
        return Err(bad(format!("`family` is required for the {} command", command.name())));
    }
    if needs_problem && problem.is_none() {
        return Err(bad(format!(
            "one of `beta` or the physical parameters (`mass`, `a`, `b`) is required \
             for the {} command",
            command.name()
        )));
    }
    let reject = |given: bool, field: &str| -> ConfigResult<()> {
        if given {
            Err(bad(format!("`{field}` is not used by the {} command", command.name())))
        } else {
            Ok(())
        }
    };
    match command {
        Command::Spectrum => {
            reject(nmodel.is_some(), "nmodel")?;
            reject(constraints_given, "constraints")?;
            reject(numeric_csv.is_some(), "numeric-csv")?;
        }
        Command::Afm => {
            reject(constraints_given, "constraints")?;
            reject(numeric_csv.is_some(), "numeric-csv")?;
        }
        Command::Compare => {
            reject(constraints_given, "constraints")?;
        }
        Command::Fit | Command::Tables => {
            reject(problem.is_some(), "beta/physical parameters")?;
            reject(formulation_given, "formulation")?;
            reject(sign_given, "sign")?;
            reject(level.is_some(), "n/l")?;
            reject(window_given, "n-max/l-max")?;
            reject(nmodel.is_some(), "nmodel")?;
            reject(numeric_csv.is_some(), "numeric-csv")?;
            if command == Command::Tables {
                reject(constraints_given, "constraints")?;
            }
        }
    }

    Ok(RunConfig {
        command,
        family,
        problem,
        formulation,
        sign,
        level,
        window,
        nmodel,
        constraints,
        format,
        output,
        digits,
        numeric_csv,
        mesh_size,
    })
}

fn parse_model_name(name: &str) -> ConfigResult<String> {
    match name {
        "nho" | "nc" | "set1" | "set2" => Ok(name.to_string()),
        other => Err(bad(format!(
            "`nmodel` must be one of nho, nc, set1, set2 \
             (or an explicit model object in the config file); got {other:?}"
        ))),
    }
}
