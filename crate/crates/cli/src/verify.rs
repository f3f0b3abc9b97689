//! Closed forms against numeric oracles, one report entry per check.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use serde_json::{json, Value};

use relent_core::kinematics::lorentz::composition_wigner_rotation;
use relent_core::kinematics::{
    d_half, pauli_lubanski_eigenvalues, wigner_angle, BoostContext, Projection, Vec3,
};
use relent_core::matcore::hs_distance_sq;
use relent_core::measures::{
    concurrence, expand_multiset, nearest_separable, ppt_report, spin1_positivity_eigs,
    spin1_ppt_eigs_boosted_quarter, spin1_ppt_eigs_rest, SeparableFamily,
};
use relent_core::states::{
    boost_spin_one, rho_bd, rho_spin1, rho_spin1_matrix, BellWeights, SpinHalfAxes, SpinOneWeights,
};
use relent_core::witness::{
    bd_coefficients, bd_witness, build_witness, expectation, min_over_separable, spin1_coeffs,
    spin1_witness, trace_bd_boosted, trace_bd_boosted_oracle, trace_bd_boosted_reconciled,
    trace_bd_rest, trace_pure_theta, trace_spin1_boosted_oracle, trace_spin1_boosted_printed,
    trace_spin1_rest, BasisConvention, SeparableSearch, WitnessFrame,
};

use crate::fig::{fig1, linspace, Fig1Config, FIG2_WEIGHTS};
use crate::format::{num, nums};
use crate::CliError;

/// Checks whose failure reflects a printed expression rather than the
/// implementation. They are reported but never fail the suite.
pub const WHITELIST: &[&str] = &[
    "bd-boosted-printed-vs-oracle",
    "bd-boost-ordering-printed",
    "printed-basis-rest-trace",
    "spin1-off-diagonal-sign",
    "spin1-printed-witness",
    "spin1-boosted-trace-quoted",
    "hs-distance-quoted",
    "nearest-separable-quoted-point",
];

/// Lattice step for Bell weights: every `(i, j, k, l)/8` on the simplex.
const BELL_LATTICE: usize = 8;
const OMEGA_STEPS: usize = 24;
const ORDER_SLACK: f64 = 1e-12;
const QUARTER_TURN_GRID: usize = 12;
const VALIDITY_STATES: usize = 6;
const NEAREST_BUDGET: usize = 50_000;
/// Both closed-form square roots vanish on parts of the simplex boundary,
/// where rounding in the radicand is amplified to about `sqrt(eps)`.
const BOUNDARY_SQRT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    KnownPaperDiscrepancy,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::KnownPaperDiscrepancy => "known-paper-discrepancy",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub values: Value,
}

impl Check {
    fn classify(id: &'static str, residual: f64, tolerance: f64) -> Status {
        if residual <= tolerance {
            Status::Match
        } else if WHITELIST.contains(&id) {
            Status::KnownPaperDiscrepancy
        } else {
            Status::Mismatch
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "description": self.description,
            "status": self.status.as_str(),
            "residual": num(self.residual),
            "tolerance": num(self.tolerance),
            "values": self.values,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub grid: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            grid: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Ids of mismatches outside [`WHITELIST`].
    pub fn unexpected(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Mismatch)
            .map(|c| c.id)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": {
                "grid": self.config.grid,
                "samples": self.config.samples,
                "seed": self.config.seed,
            },
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "summary": {
                "total": self.checks.len(),
                "match": self.count(Status::Match),
                "mismatch": self.count(Status::Mismatch),
                "known_paper_discrepancy": self.count(Status::KnownPaperDiscrepancy),
                "unexpected": self.unexpected(),
            },
        })
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "status", "residual", "tolerance"])?;
        for c in &self.checks {
            w.write_record([
                c.id,
                c.status.as_str(),
                &crate::format::fmt_g(c.residual),
                &crate::format::fmt_g(c.tolerance),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
    }
}

type Outcome = relent_core::Result<(f64, Value)>;

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    /// A check that errors is recorded as a mismatch carrying the message.
    fn run(
        &mut self,
        id: &'static str,
        description: &'static str,
        tolerance: f64,
        f: impl FnOnce() -> Outcome,
    ) {
        let (residual, values) = match f() {
            Ok(r) => r,
            Err(e) => (f64::NAN, json!({ "error": e.to_string() })),
        };
        let status = if residual.is_nan() {
            Status::Mismatch
        } else {
            Check::classify(id, residual, tolerance)
        };
        self.checks.push(Check {
            id,
            description,
            status,
            residual,
            tolerance,
            values,
        });
    }
}

fn bell_lattice() -> Vec<BellWeights> {
    let n = BELL_LATTICE;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let l = n - i - j - k;
                let p = [i, j, k, l].map(|v| v as f64 / n as f64);
                out.push(BellWeights::from_array(p).expect("lattice weights are valid"));
            }
        }
    }
    out
}

fn omega_grid() -> Vec<f64> {
    linspace(0.0, FRAC_PI_2, OMEGA_STEPS + 1)
}

/// Physical `(x, y)` points of an `n x n` grid over `[-1/4, 1]²`.
fn spin1_grid(n: usize) -> Vec<SpinOneWeights> {
    let axis = linspace(crate::fig::XY_MIN, crate::fig::XY_MAX, n);
    let mut out = Vec::new();
    for &x in &axis {
        for &y in &axis {
            let w = SpinOneWeights::raw(x, y);
            if w.is_physical() {
                out.push(w);
            }
        }
    }
    out
}

fn spectrum_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn spin1_pipeline_coeffs(
    w: &SpinOneWeights,
) -> relent_core::Result<relent_core::matcore::RectMatrix> {
    Ok(build_witness(&rho_spin1(w)?, BasisConvention::Hermitian)?
        .coeffs()
        .clone())
}

fn corner() -> SpinOneWeights {
    SpinOneWeights::raw(0.0, 1.0)
}

fn bell_checks(s: &mut Suite) {
    let lattice = bell_lattice();

    s.run(
        "bd-coefficients",
        "Bell-diagonal coefficients: closed form vs polar-factor pipeline",
        1e-9,
        || {
            let mut worst: f64 = 0.0;
            let mut compared = 0;
            for w in &lattice {
                let closed = bd_coefficients(w);
                if closed.degenerate {
                    continue;
                }
                let pipeline = build_witness(&rho_bd(w), BasisConvention::Hermitian)?;
                worst = worst.max(pipeline.coeffs().max_abs_diff(&closed.coeffs));
                compared += 1;
            }
            Ok((worst, json!({ "states": compared })))
        },
    );

    s.run(
        "bd-rest-trace",
        "Bell-diagonal rest trace: closed form vs Tr(W rho)",
        1e-10,
        || {
            let mut worst: f64 = 0.0;
            for w in &lattice {
                let rho = rho_bd(w);
                let t = expectation(&build_witness(&rho, BasisConvention::Hermitian)?, &rho)?;
                worst = worst.max((t - trace_bd_rest(w)).abs());
            }
            Ok((worst, json!({ "states": lattice.len() })))
        },
    );

    s.run(
        "concurrence-identity",
        "Concurrence equals minus the rest trace when entangled, zero otherwise",
        1e-9,
        || {
            let mut worst: f64 = 0.0;
            for w in &lattice {
                let c = concurrence(&rho_bd(w))?;
                let t = trace_bd_rest(w);
                let r = if w.max() > 0.5 {
                    (c + t).abs()
                } else {
                    c.abs() + (-t).max(0.0)
                };
                worst = worst.max(r);
            }
            Ok((worst, json!({ "states": lattice.len() })))
        },
    );

    s.run(
        "bd-boosted-zero-angle",
        "Boosted closed forms reduce to the rest trace at zero angle",
        1e-10,
        || {
            let mut worst: f64 = 0.0;
            for w in &lattice {
                let rest = trace_bd_rest(w);
                worst = worst.max((trace_bd_boosted(w, 0.0)? - rest).abs());
                worst = worst.max((trace_bd_boosted_reconciled(w, 0.0)? - rest).abs());
            }
            Ok((worst, json!({ "states": lattice.len() })))
        },
    );

    let [a, b, c, d] = FIG2_WEIGHTS;
    let anchor = BellWeights::new(a, b, c, d).expect("valid anchor weights");

    s.run(
        "bd-boosted-anchor",
        "Anchor weights give -1/3 at zero angle",
        1e-12,
        || {
            let v = trace_bd_boosted(&anchor, 0.0)?;
            Ok((
                (v + 1.0 / 3.0).abs(),
                json!({ "closed_form": num(v), "expected": num(-1.0 / 3.0) }),
            ))
        },
    );

    s.run(
        "bd-boosted-monotone",
        "Anchor closed-form curve is nondecreasing on 181 angles",
        0.0,
        || {
            let values: Vec<f64> = linspace(0.0, FRAC_PI_2, 181)
                .into_iter()
                .map(|o| trace_bd_boosted(&anchor, o))
                .collect::<Result<_, _>>()?;
            let steps = values
                .windows(2)
                .filter(|p| p[1] < p[0] - ORDER_SLACK)
                .count();
            let below = values
                .iter()
                .filter(|&&v| v < values[0] - ORDER_SLACK)
                .count();
            let end = values[values.len() - 1];
            Ok((
                (steps + below) as f64,
                json!({ "decreasing_steps": steps, "below_start": below, "end_value": num(end) }),
            ))
        },
    );

    s.run(
        "bd-boosted-reconciled-vs-oracle",
        "Reconciled boosted closed form vs rebuilt-witness oracle",
        BOUNDARY_SQRT_TOL,
        || {
            let mut worst: f64 = 0.0;
            for w in &lattice {
                for omega in omega_grid() {
                    let oracle = trace_bd_boosted_oracle(w, omega, SpinHalfAxes::Opposite)?;
                    worst = worst.max((trace_bd_boosted_reconciled(w, omega)? - oracle).abs());
                }
            }
            Ok((
                worst,
                json!({ "states": lattice.len(), "angles": OMEGA_STEPS + 1 }),
            ))
        },
    );

    s.run(
        "bd-boosted-printed-vs-oracle",
        "Verbatim boosted closed form vs rebuilt-witness oracle",
        BOUNDARY_SQRT_TOL,
        || {
            let mut worst: f64 = 0.0;
            let mut at = Value::Null;
            let mut radicand_failures = 0;
            for w in &lattice {
                for omega in omega_grid() {
                    let oracle = trace_bd_boosted_oracle(w, omega, SpinHalfAxes::Opposite)?;
                    match trace_bd_boosted(w, omega) {
                        Ok(v) if (v - oracle).abs() > worst => {
                            worst = (v - oracle).abs();
                            at = json!({
                                "weights": nums(&w.as_array()),
                                "omega": num(omega),
                                "closed_form": num(v),
                                "oracle": num(oracle),
                            });
                        }
                        Ok(_) => {}
                        Err(_) => radicand_failures += 1,
                    }
                }
            }
            Ok((
                worst,
                json!({ "worst": at, "radicand_failures": radicand_failures }),
            ))
        },
    );

    s.run(
        "bd-boost-ordering-oracle",
        "Boosting never lowers the oracle trace below the rest trace",
        0.0,
        || {
            let mut violations = 0;
            for w in &lattice {
                let rest = trace_bd_rest(w);
                for omega in omega_grid() {
                    if trace_bd_boosted_oracle(w, omega, SpinHalfAxes::Opposite)?
                        < rest - ORDER_SLACK
                    {
                        violations += 1;
                    }
                }
            }
            Ok((violations as f64, json!({ "violations": violations })))
        },
    );

    s.run("bd-boost-ordering-printed", "Verbatim closed form is defined and never below the rest trace", 0.0, || {
        let mut violations = 0;
        let mut radicand_failures = 0;
        let mut example = Value::Null;
        for w in &lattice {
            let rest = trace_bd_rest(w);
            for omega in omega_grid() {
                let Ok(v) = trace_bd_boosted(w, omega) else {
                    radicand_failures += 1;
                    continue;
                };
                if v < rest - ORDER_SLACK {
                    if violations == 0 {
                        example = json!({
                            "weights": nums(&w.as_array()),
                            "omega": num(omega),
                            "closed_form": num(v),
                            "rest": num(rest),
                            "oracle": num(trace_bd_boosted_oracle(w, omega, SpinHalfAxes::Opposite)?),
                        });
                    }
                    violations += 1;
                }
            }
        }
        Ok((
            (violations + radicand_failures) as f64,
            json!({ "violations": violations, "radicand_failures": radicand_failures, "first": example }),
        ))
    });

    s.run(
        "printed-basis-rest-trace",
        "Diagonal printed qubit basis reproduces the rest trace",
        1e-10,
        || {
            let w = BellWeights::new(0.7, 0.1, 0.1, 0.1)?;
            let rho = rho_bd(&w);
            let expected = trace_bd_rest(&w);
            let v = expectation(&bd_witness(&w, BasisConvention::Printed)?, &rho)?;
            Ok((
                (v - expected).abs(),
                json!({ "printed_basis": num(v), "expected": num(expected) }),
            ))
        },
    );
}

fn spin1_checks(s: &mut Suite, cfg: &VerifyConfig) {
    let grid = spin1_grid(cfg.grid);

    s.run(
        "spin1-ppt-spectrum",
        "Closed partial-transpose eigenvalues vs numeric spectrum",
        1e-12,
        || {
            let mut worst: f64 = 0.0;
            for w in &grid {
                let numeric = ppt_report(&rho_spin1(w)?)?.eigenvalues;
                worst = worst.max(spectrum_gap(
                    &numeric,
                    &expand_multiset(&spin1_ppt_eigs_rest(w)),
                ));
            }
            Ok((worst, json!({ "points": grid.len() })))
        },
    );

    s.run(
        "spin1-positivity-spectrum",
        "Closed state eigenvalues vs numeric spectrum",
        1e-12,
        || {
            let mut worst: f64 = 0.0;
            for w in &grid {
                let numeric = rho_spin1(w)?.eigenvalues()?;
                worst = worst.max(spectrum_gap(
                    &numeric,
                    &expand_multiset(&spin1_positivity_eigs(w)),
                ));
            }
            Ok((worst, json!({ "points": grid.len() })))
        },
    );

    s.run(
        "spin1-coefficients",
        "Closed spin-1 coefficients vs pipeline where x > y and x + y > 0",
        1e-9,
        || {
            let mut worst: f64 = 0.0;
            let mut compared = 0;
            for w in grid.iter().filter(|w| w.x > w.y + 1e-3 && w.x + w.y > 1e-3) {
                worst = worst.max(spin1_pipeline_coeffs(w)?.max_abs_diff(&spin1_coeffs(w)));
                compared += 1;
            }
            Ok((worst, json!({ "points": compared })))
        },
    );

    s.run(
        "spin1-off-diagonal-sign",
        "Closed off-diagonal coefficients at the pure corner (0, 1)",
        1e-9,
        || {
            let pipeline = spin1_pipeline_coeffs(&corner())?;
            let closed = spin1_coeffs(&corner());
            Ok((
                pipeline.max_abs_diff(&closed),
                json!({
                    "pipeline_3_5": num(pipeline.get(2, 4).re),
                    "pipeline_4_8": num(pipeline.get(3, 7).re),
                    "closed_3_5": num(closed.get(2, 4).re),
                    "closed_4_8": num(closed.get(3, 7).re),
                }),
            ))
        },
    );

    s.run(
        "spin1-rest-trace",
        "Closed spin-1 rest trace vs Tr(W rho)",
        1e-10,
        || {
            let mut worst: f64 = 0.0;
            for w in &grid {
                let rho = rho_spin1(w)?;
                let t = expectation(&build_witness(&rho, BasisConvention::Hermitian)?, &rho)?;
                worst = worst.max((t - trace_spin1_rest(w)).abs());
            }
            Ok((worst, json!({ "points": grid.len() })))
        },
    );

    s.run(
        "spin1-corner-trace",
        "Rest trace at the pure corner (0, 1) is -1",
        1e-12,
        || {
            let rho = rho_spin1(&corner())?;
            let t = expectation(&build_witness(&rho, BasisConvention::Hermitian)?, &rho)?;
            let closed = trace_spin1_rest(&corner());
            Ok((
                (t + 1.0).abs().max((closed + 1.0).abs()),
                json!({ "pipeline": num(t), "closed_form": num(closed) }),
            ))
        },
    );

    s.run(
        "spin1-printed-witness",
        "Closed spin-1 witness evaluated on the pure corner gives -1",
        1e-12,
        || {
            let rho = rho_spin1(&corner())?;
            let v = expectation(&spin1_witness(&corner(), BasisConvention::Hermitian)?, &rho)?;
            Ok((
                (v + 1.0).abs(),
                json!({ "closed_witness": num(v), "expected": -1 }),
            ))
        },
    );

    s.run(
        "spin1-quarter-turn-spectrum",
        "Closed quarter-turn partial-transpose eigenvalues vs numeric",
        1e-12,
        || {
            let mut worst: f64 = 0.0;
            let points = spin1_grid(QUARTER_TURN_GRID.min(cfg.grid));
            for w in &points {
                worst = worst.max(spin1_ppt_eigs_boosted_quarter(w)?.max_residual);
            }
            Ok((worst, json!({ "points": points.len() })))
        },
    );

    s.run("spin1-boosted-trace-quoted", "Verbatim quarter-turn trace at (0, 1) vs quoted -sqrt(3)/2", 1e-10, || {
        let quoted = -(3f64.sqrt()) / 2.0;
        let printed = trace_spin1_boosted_printed(&corner())?;
        let w = SpinOneWeights::new(0.0, 1.0)?;
        Ok((
            (printed - quoted).abs(),
            json!({
                "closed_form": num(printed),
                "quoted": num(quoted),
                "oracle_boosted_witness": num(trace_spin1_boosted_oracle(&w, FRAC_PI_4, WitnessFrame::Boosted)?),
                "oracle_rest_witness": num(trace_spin1_boosted_oracle(&w, FRAC_PI_4, WitnessFrame::Rest)?),
                "pure_corner_closed": num(trace_pure_theta(FRAC_PI_4)),
            }),
        ))
    });

    s.run(
        "pure-corner-endpoints",
        "Pure-corner boosted trace at 0, pi/4, pi/2",
        1e-12,
        || {
            let got = [0.0, FRAC_PI_4, FRAC_PI_2].map(trace_pure_theta);
            let want = [-1.0, -(3f64.sqrt()) / 2.0, 0.0];
            Ok((
                spectrum_gap(&got, &want),
                json!({ "values": nums(&got), "expected": nums(&want) }),
            ))
        },
    );

    s.run(
        "pure-corner-oracle",
        "Pure-corner closed form vs rebuilt-witness oracle over the boost angle",
        1e-10,
        || {
            let w = SpinOneWeights::new(0.0, 1.0)?;
            let mut worst: f64 = 0.0;
            for theta in omega_grid() {
                let oracle = trace_spin1_boosted_oracle(&w, theta, WitnessFrame::Boosted)?;
                worst = worst.max((oracle - trace_pure_theta(theta)).abs());
            }
            Ok((worst, json!({ "angles": OMEGA_STEPS + 1 })))
        },
    );

    s.run(
        "pure-corner-half-turn-ppt",
        "Pure corner boosted by pi/2 has a positive partial transpose",
        1e-10,
        || {
            let rho = boost_spin_one(&rho_spin1(&corner())?, FRAC_PI_2)?;
            let m = ppt_report(&rho)?.min_eigenvalue;
            Ok(((-m).max(0.0), json!({ "min_eigenvalue": num(m) })))
        },
    );

    s.run(
        "region-shrinkage",
        "Separable region grows with the boost and fills the triangle at pi/2",
        0.0,
        || {
            let thetas = vec![
                ("0".to_string(), 0.0),
                ("pi/4".to_string(), FRAC_PI_4),
                ("pi/2".to_string(), FRAC_PI_2),
            ];
            let table = fig1(&Fig1Config {
                grid: cfg.grid,
                thetas,
            })
            .map_err(|e| match e {
                CliError::Core(c) => c,
                other => relent_core::Error::InvalidInput(other.to_string()),
            })?;
            let col = |name: &str| table.column(name).expect("known column");
            let (phys, s0, s4, s2) = (
                col("physical"),
                col("separable[theta=0]"),
                col("separable[theta=pi/4]"),
                col("separable[theta=pi/2]"),
            );
            let on = |v: Option<f64>| v == Some(1.0);
            let mut not_nested = 0;
            let mut not_full = 0;
            let mut counts = [0usize; 3];
            for row in table.rows.iter().filter(|r| on(r[phys])) {
                if on(row[s0]) && !on(row[s4]) {
                    not_nested += 1;
                }
                if !on(row[s2]) {
                    not_full += 1;
                }
                for (k, &c) in [s0, s4, s2].iter().enumerate() {
                    counts[k] += usize::from(on(row[c]));
                }
            }
            let physical = table.rows.iter().filter(|r| on(r[phys])).count();
            Ok((
                (not_nested + not_full) as f64,
                json!({
                    "physical_points": physical,
                    "separable_counts": counts,
                    "not_nested": not_nested,
                    "not_full_at_half_turn": not_full,
                }),
            ))
        },
    );

    s.run(
        "hs-distance-quoted",
        "Hilbert-Schmidt distance from (0, 1) to (1/2, 1/2) vs quoted cos^2(theta)/sqrt(2)",
        1e-10,
        || {
            let mut worst: f64 = 0.0;
            let mut rows = Vec::new();
            let (a, b) = (
                rho_spin1(&corner())?,
                rho_spin1(&SpinOneWeights::new(0.5, 0.5)?)?,
            );
            for theta in [0.0, FRAC_PI_4, FRAC_PI_2] {
                let d = hs_distance_sq(
                    boost_spin_one(&a, theta)?.mat(),
                    boost_spin_one(&b, theta)?.mat(),
                )?;
                let quoted = theta.cos().powi(2) * FRAC_1_SQRT_2;
                worst = worst.max((d - quoted).abs());
                rows.push(
                    json!({ "theta": num(theta), "computed": num(d), "quoted": num(quoted) }),
                );
            }
            Ok((worst, Value::Array(rows)))
        },
    );

    s.run(
        "nearest-separable-quoted-point",
        "Quoted nearest separable point (1/2, 1/2) vs triangle optimum",
        1e-9,
        || {
            let rho = rho_spin1(&corner())?;
            let best = nearest_separable(
                &rho,
                SeparableFamily::XyTriangle { theta: 0.0 },
                NEAREST_BUDGET,
            )?;
            let quoted = hs_distance_sq(rho.mat(), &rho_spin1_matrix(0.5, 0.5))?;
            let (x, y) = best.xy.unwrap_or((f64::NAN, f64::NAN));
            Ok((
                quoted - best.distance_sq,
                json!({
                    "optimum_xy": nums(&[x, y]),
                    "optimum_distance_sq": num(best.distance_sq),
                    "quoted_distance_sq": num(quoted),
                }),
            ))
        },
    );
}

fn general_checks(s: &mut Suite, cfg: &VerifyConfig) {
    s.run(
        "witness-validity",
        "Witnesses are nonnegative on sampled and refined product states",
        1e-7,
        || {
            let search = SeparableSearch {
                samples: cfg.samples,
                seed: cfg.seed,
                ..SeparableSearch::default()
            };
            let lattice = bell_lattice();
            let grid = spin1_grid(cfg.grid);
            let stride = |n: usize| (n / VALIDITY_STATES).max(1);
            let mut states = Vec::new();
            for w in lattice.iter().step_by(stride(lattice.len())) {
                states.push(rho_bd(w));
            }
            for w in grid.iter().step_by(stride(grid.len())) {
                states.push(rho_spin1(w)?);
            }
            let mut worst = f64::INFINITY;
            for rho in &states {
                let w = build_witness(rho, BasisConvention::Hermitian)?;
                worst = worst.min(min_over_separable(w.mat(), w.dims(), &search)?.value);
            }
            Ok((
                (-worst).max(0.0),
                json!({ "witnesses": states.len(), "minimum": num(worst) }),
            ))
        },
    );

    s.run(
        "wigner-angle-composition",
        "Closed Wigner rotation vs composed Lorentz boosts",
        1e-9,
        || {
            let s2 = FRAC_1_SQRT_2;
            let geometries: [(Vec3, Vec3); 3] = [
                ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
                ([1.0, 0.0, 0.0], [s2, 0.0, s2]),
                ([0.0, 1.0, 0.0], [0.6, 0.0, 0.8]),
            ];
            let mut worst: f64 = 0.0;
            for beta in [0.1, 0.5, 0.9, 0.99] {
                for ratio in [1.1, 2.0, 10.0] {
                    for (e, p) in geometries {
                        let ctx = BoostContext::from_energy_ratio(beta, 1.0, ratio, e, p)?;
                        let closed = d_half(&wigner_angle(&ctx)?);
                        worst = worst
                            .max(closed.max_abs_diff(&d_half(&composition_wigner_rotation(&ctx))));
                    }
                }
            }
            Ok((worst, json!({ "cases": 36 })))
        },
    );

    s.run(
        "pauli-lubanski-helicity",
        "Projection on the momentum direction gives +-E/2",
        1e-12,
        || {
            let mut worst: f64 = 0.0;
            for ratio in [1.0, 1.5, 4.0] {
                let ctx = BoostContext::from_energy_ratio(
                    0.0,
                    1.0,
                    ratio,
                    [1.0, 0.0, 0.0],
                    [0.0, 0.0, 1.0],
                )?;
                let p = ctx.four_momentum();
                let (hi, lo) =
                    pauli_lubanski_eigenvalues(p, [0.0, 0.0, 0.0, 1.0], 1.0, Projection::Spatial)?;
                worst = worst
                    .max((hi - 0.5 * p[0]).abs())
                    .max((lo + 0.5 * p[0]).abs());
            }
            Ok((worst, json!({ "cases": 3 })))
        },
    );
}

pub fn verify(cfg: &VerifyConfig) -> Result<Report, CliError> {
    crate::fig::check_grid(cfg.grid)?;
    if cfg.samples == 0 {
        return Err(CliError::Usage("samples must be positive".into()));
    }
    let mut suite = Suite { checks: Vec::new() };
    bell_checks(&mut suite);
    spin1_checks(&mut suite, cfg);
    general_checks(&mut suite, cfg);
    Ok(Report {
        config: *cfg,
        checks: suite.checks,
    })
}
