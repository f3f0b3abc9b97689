//! Every quantity for one Bell-diagonal or spin-1 state.

use serde_json::{json, Value};

use relent_core::measures::{concurrence, ppt_report, PptReport};
use relent_core::states::{
    boost_spin_half, boost_spin_one, rho_bd, rho_spin1, BellWeights, DensityMatrix, SpinHalfAxes,
    SpinOneWeights,
};
use relent_core::witness::{
    build_witness, expectation, min_over_separable, trace_bd_boosted, trace_bd_boosted_reconciled,
    trace_bd_rest, trace_pure_theta, trace_spin1_boosted_printed, trace_spin1_rest,
    BasisConvention, SeparableSearch, WitnessFrame,
};

use crate::format::{num, nums};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointState {
    Bell(BellWeights),
    SpinOne(SpinOneWeights),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointConfig {
    pub state: PointState,
    /// Wigner angle for Bell states, boost angle for spin-1.
    pub angle: f64,
    pub frame: WitnessFrame,
    pub axes: SpinHalfAxes,
    pub search: SeparableSearch,
}

fn ppt_json(r: &PptReport) -> Value {
    json!({
        "eigenvalues": nums(&r.eigenvalues),
        "is_ppt": r.is_ppt,
        "min_eigenvalue": num(r.min_eigenvalue),
    })
}

fn closed_json(v: relent_core::Result<f64>) -> Value {
    match v {
        Ok(x) => num(x),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn frame_name(f: WitnessFrame) -> &'static str {
    match f {
        WitnessFrame::Rest => "rest",
        WitnessFrame::Boosted => "boosted",
    }
}

/// Witness trace with the witness taken from `rest` or `boosted` per
/// `frame`, plus the separable-minimum estimate of that witness.
fn witness_part(
    rest: &DensityMatrix,
    boosted: &DensityMatrix,
    cfg: &PointConfig,
) -> Result<(f64, Value), CliError> {
    let source = match cfg.frame {
        WitnessFrame::Rest => rest,
        WitnessFrame::Boosted => boosted,
    };
    let w = build_witness(source, BasisConvention::Hermitian)?;
    let trace = expectation(&w, boosted)?;
    let min = min_over_separable(w.mat(), w.dims(), &cfg.search)?;
    let sep = json!({
        "evaluations": min.evaluations,
        "samples": cfg.search.samples,
        "seed": cfg.search.seed,
        "value": num(min.value),
    });
    Ok((trace, sep))
}

pub fn point(cfg: &PointConfig) -> Result<Value, CliError> {
    if !cfg.angle.is_finite() {
        return Err(CliError::Usage("angle must be finite".into()));
    }
    if cfg.search.samples == 0 {
        return Err(CliError::Usage("samples must be positive".into()));
    }
    match cfg.state {
        PointState::Bell(w) => {
            let rest = rho_bd(&w);
            let boosted = boost_spin_half(&rest, cfg.angle, cfg.axes)?;
            let (oracle, sep) = witness_part(&rest, &boosted, cfg)?;
            Ok(json!({
                "family": "bd",
                "weights": nums(&w.as_array()),
                "angle": num(cfg.angle),
                "spin_half_axes": match cfg.axes {
                    SpinHalfAxes::Opposite => "opposite",
                    SpinHalfAxes::Shared => "shared",
                },
                "witness_frame": frame_name(cfg.frame),
                "eigenvalues": nums(&boosted.eigenvalues()?),
                "ppt": ppt_json(&ppt_report(&boosted)?),
                "concurrence": num(concurrence(&boosted)?),
                "traces": {
                    "rest_closed": num(trace_bd_rest(&w)),
                    "boosted_closed": closed_json(trace_bd_boosted(&w, cfg.angle)),
                    "boosted_reconciled": closed_json(trace_bd_boosted_reconciled(&w, cfg.angle)),
                    "oracle": num(oracle),
                },
                "separable_minimum": sep,
            }))
        }
        PointState::SpinOne(w) => {
            let rest = rho_spin1(&w)?;
            let boosted = boost_spin_one(&rest, cfg.angle)?;
            let (oracle, sep) = witness_part(&rest, &boosted, cfg)?;
            let corner = w.x == 0.0 && w.y == 1.0;
            Ok(json!({
                "family": "spin1",
                "xy": nums(&[w.x, w.y]),
                "angle": num(cfg.angle),
                "witness_frame": frame_name(cfg.frame),
                "eigenvalues": nums(&boosted.eigenvalues()?),
                "ppt": ppt_json(&ppt_report(&boosted)?),
                "traces": {
                    "rest_closed": num(trace_spin1_rest(&w)),
                    "quarter_turn_closed": closed_json(trace_spin1_boosted_printed(&w)),
                    "pure_corner_closed": if corner { num(trace_pure_theta(cfg.angle)) } else { Value::Null },
                    "oracle": num(oracle),
                },
                "separable_minimum": sep,
            }))
        }
    }
}
