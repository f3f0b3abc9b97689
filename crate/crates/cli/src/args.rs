//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relent_core::states::SpinHalfAxes;
use relent_core::witness::WitnessFrame;

#[derive(Debug, Parser)]
#[command(
    name = "relent",
    version,
    about = "Nonlinear entanglement witnesses for boosted spin-momentum states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Separability map of the spin-1 family over the (x, y) plane.
    Fig1(Fig1Args),
    /// Bell-diagonal witness trace against the Wigner angle.
    Fig2(Fig2Args),
    /// Closed forms against numeric oracles, as a JSON report.
    Verify(VerifyArgs),
    /// Every quantity for a single state.
    Point(PointArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Rest,
    Boosted,
}

impl From<FrameArg> for WitnessFrame {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::Rest => WitnessFrame::Rest,
            FrameArg::Boosted => WitnessFrame::Boosted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxesArg {
    Opposite,
    Shared,
}

impl From<AxesArg> for SpinHalfAxes {
    fn from(a: AxesArg) -> Self {
        match a {
            AxesArg::Opposite => SpinHalfAxes::Opposite,
            AxesArg::Shared => SpinHalfAxes::Shared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Bd,
    Spin1,
}

#[derive(Debug, Clone, Args)]
pub struct Fig1Args {
    /// Points per axis over the box [-1/4, 1]².
    #[arg(long, default_value_t = 60)]
    pub grid: usize,
    /// Boost angles, e.g. `0,pi/4,pi/2`.
    #[arg(long, default_value = "0,pi/4,pi/2")]
    pub theta: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Fig2Args {
    /// Number of Wigner angles from 0 to `--omega-max`.
    #[arg(long, default_value_t = 181)]
    pub grid: usize,
    #[arg(long, default_value = "pi/2")]
    pub omega_max: String,
    /// Bell weights `P1,P2,P3,P4`.
    #[arg(long, default_value = "2/3,0,1/8,5/24")]
    pub weights: String,
    #[arg(long, value_enum, default_value_t = AxesArg::Opposite)]
    pub spin_half_axes: AxesArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Seed for the product-state sampler.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Product states sampled per witness-validity check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Points per axis for the (x, y) sweeps.
    #[arg(long, default_value_t = 60)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Bell weights for `--family bd`.
    #[arg(long, default_value = "1/4,1/4,1/4,1/4")]
    pub weights: String,
    /// `x,y` for `--family spin1`.
    #[arg(long, default_value = "0,1")]
    pub xy: String,
    /// Wigner angle Ω (bd) or boost angle θ (spin1).
    #[arg(long, default_value = "0")]
    pub angle: String,
    #[arg(long, value_enum, default_value_t = FrameArg::Boosted)]
    pub witness_frame: FrameArg,
    #[arg(long, value_enum, default_value_t = AxesArg::Opposite)]
    pub spin_half_axes: AxesArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
