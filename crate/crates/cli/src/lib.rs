//! Front end for `relent-core`: figure sweeps, the verification report and
//! single-point queries.

pub mod args;
pub mod fig;
pub mod format;
pub mod point;
pub mod table;
pub mod verify;

use std::path::Path;

use relent_core::states::{BellWeights, SpinOneWeights};
use relent_core::witness::SeparableSearch;
use thiserror::Error;

use crate::args::{Command, FamilyArg, Format};
use crate::fig::{Fig1Config, Fig2Config};
use crate::format::{parse_fixed, parse_list, parse_real};
use crate::point::{PointConfig, PointState};
use crate::verify::VerifyConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] relent_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// Exit code when the verification report has non-whitelisted mismatches.
pub const EXIT_UNEXPECTED_MISMATCH: i32 = 2;

/// Rendered output and the process exit code. `text` is empty when the
/// output went to a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

fn usage<T>(r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(CliError::Usage)
}

/// Weight errors from the core are input mistakes, reported as usage errors.
fn weights<T>(r: relent_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    let mut exit_code = 0;
    let (text, out) = match command {
        Command::Fig1(a) => {
            let thetas = usage(parse_list(&a.theta))?;
            let table = fig::fig1(&Fig1Config {
                grid: a.grid,
                thetas,
            })?;
            let text = match a.output.format.unwrap_or(Format::Csv) {
                Format::Csv => table.to_csv()?,
                Format::Json => json_text(&table.to_json()),
            };
            (text, a.output.out)
        }
        Command::Fig2(a) => {
            let w = weights(BellWeights::from_array(usage(parse_fixed::<4>(
                &a.weights, "weights",
            ))?))?;
            let cfg = Fig2Config {
                grid: a.grid,
                omega_max: usage(parse_real(&a.omega_max))?,
                weights: w,
                axes: a.spin_half_axes.into(),
            };
            let table = fig::fig2(&cfg)?;
            let text = match a.output.format.unwrap_or(Format::Csv) {
                Format::Csv => table.to_csv()?,
                Format::Json => json_text(&table.to_json()),
            };
            (text, a.output.out)
        }
        Command::Verify(a) => {
            let report = verify::verify(&VerifyConfig {
                seed: a.seed,
                samples: a.samples,
                grid: a.grid,
            })?;
            if !report.unexpected().is_empty() {
                exit_code = EXIT_UNEXPECTED_MISMATCH;
            }
            let text = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => json_text(&report.to_json()),
                Format::Csv => report.to_csv()?,
            };
            (text, a.output.out)
        }
        Command::Point(a) => {
            if a.output.format == Some(Format::Csv) {
                return Err(CliError::Usage("point emits JSON only".into()));
            }
            let state = match a.family {
                FamilyArg::Bd => PointState::Bell(weights(BellWeights::from_array(usage(
                    parse_fixed::<4>(&a.weights, "weights"),
                )?))?),
                FamilyArg::Spin1 => {
                    let [x, y] = usage(parse_fixed::<2>(&a.xy, "xy"))?;
                    PointState::SpinOne(weights(SpinOneWeights::new(x, y))?)
                }
            };
            let cfg = PointConfig {
                state,
                angle: usage(parse_real(&a.angle))?,
                frame: a.witness_frame.into(),
                axes: a.spin_half_axes.into(),
                search: SeparableSearch {
                    samples: a.samples,
                    seed: a.seed,
                    ..SeparableSearch::default()
                },
            };
            (json_text(&point::point(&cfg)?), a.output.out)
        }
    };
    Ok(Outcome {
        text: emit(text, out.as_deref())?,
        exit_code,
    })
}
