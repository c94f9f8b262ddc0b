//! Command-line flags, the TOML config file, and their merge into one job.

use std::path::PathBuf;

use bisector_core::field::FieldSpec;
use bisector_core::oracle::{Fault, Profile};
use bisector_core::quad::Quadrilateral;
use clap::{Parser, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Bisector,
    Partner,
    Pencil,
    Verify,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Record,
    Svg,
}

/// Bisectors, bisector fields and nine-point conics of quadrilaterals,
/// computed exactly over Q or GF(p).
#[derive(Debug, Parser)]
#[command(name = "bisector", version)]
pub struct Cli {
    /// Q or GFp:<p>
    #[arg(long)]
    pub field: Option<String>,
    /// Four sides "A;B;A';B'", each as "Y=mX+b", "X=c" or "t u v"
    #[arg(long)]
    pub quad: Option<String>,
    #[arg(long, value_enum)]
    pub cmd: Option<Command>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with the same keys; a key may not also be given as a flag
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// fixture or exhaustive (verify)
    #[arg(long)]
    pub profile: Option<String>,
    /// Number of random instances (verify)
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
    /// Command arguments: a point, a line, "alpha beta", or a plot view.
    /// Put them after `--` when one starts with a minus sign.
    #[arg(allow_negative_numbers = true)]
    pub args: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum QuadSpec {
    Joined(String),
    Lines([String; 4]),
}

impl QuadSpec {
    fn joined(self) -> String {
        match self {
            QuadSpec::Joined(s) => s,
            QuadSpec::Lines(l) => l.join(";"),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    field: Option<String>,
    quad: Option<QuadSpec>,
    cmd: Option<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<String>,
    profile: Option<String>,
    instances: Option<usize>,
    args: Option<Vec<String>>,
}

/// A validated job.
#[derive(Debug)]
pub struct JobConfig {
    pub field: FieldSpec,
    pub quad: Option<Quadrilateral>,
    pub command: Command,
    pub args: Vec<String>,
    pub format: Option<Format>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub profile: Option<Profile>,
    pub instances: Option<usize>,
    pub fault: Option<Fault>,
}

fn pick<T>(key: &str, flag: Option<T>, file: Option<T>) -> Result<Option<T>, CliError> {
    match (flag, file) {
        (Some(_), Some(_)) => Err(invalid(format!("ConfigConflict: {key} is set both as a flag and in the config file"))),
        (a, b) => Ok(a.or(b)),
    }
}

fn value_enum<T: ValueEnum>(key: &str, s: &str) -> Result<T, CliError> {
    T::from_str(s, true).map_err(|_| invalid(format!("ParseError: bad {key} {s:?}")))
}

impl JobConfig {
    pub fn resolve(cli: Cli) -> Result<JobConfig, CliError> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| invalid(format!("ConfigError: {e}")))?
            }
            None => FileConfig::default(),
        };
        let field = match pick("field", cli.field, file.field)? {
            Some(s) => s.parse::<FieldSpec>().map_err(invalid)?,
            None => FieldSpec::Rationals,
        };
        let quad = pick("quad", cli.quad, file.quad.map(QuadSpec::joined))?
            .map(|s| Quadrilateral::parse(field, &s).map_err(invalid))
            .transpose()?;
        let file_cmd = file.cmd.map(|s| value_enum::<Command>("cmd", &s)).transpose()?;
        let command = pick("cmd", cli.cmd, file_cmd)?.unwrap_or(Command::Analyze);
        let file_format = file.format.map(|s| value_enum::<Format>("format", &s)).transpose()?;
        let format = pick("format", cli.format, file_format)?;
        let profile = pick("profile", cli.profile, file.profile)?
            .map(|s| s.parse::<Profile>().map_err(invalid))
            .transpose()?;
        let flag_args = (!cli.args.is_empty()).then_some(cli.args);
        let args = pick("args", flag_args, file.args)?.unwrap_or_default();
        let fault = cli.inject_fault.map(|s| s.parse::<Fault>().map_err(invalid)).transpose()?;
        Ok(JobConfig {
            field,
            quad,
            command,
            args,
            format,
            seed: pick("seed", cli.seed, file.seed)?.unwrap_or(1),
            out: pick("out", cli.out, file.out)?,
            profile,
            instances: pick("instances", cli.instances, file.instances)?,
            fault,
        })
    }

    pub fn quad(&self) -> Result<&Quadrilateral, CliError> {
        self.quad.as_ref().ok_or_else(|| invalid("MissingQuad: this command needs --quad"))
    }

    pub fn arg(&self, i: usize, what: &str) -> Result<&str, CliError> {
        self.args
            .get(i)
            .map(String::as_str)
            .ok_or_else(|| invalid(format!("MissingArgument: expected {what}")))
    }
}
