//! Sweeps behind the two figures.

use relent_core::measures::{
    expand_multiset, ppt_report, spin1_positivity_eigs, spin1_ppt_eigs_rest, PPT_TOL,
};
use relent_core::states::{boost_spin_one, rho_spin1, BellWeights, SpinHalfAxes, SpinOneWeights};
use relent_core::witness::{
    trace_bd_boosted, trace_bd_boosted_oracle, trace_bd_boosted_reconciled,
};

use crate::table::{flag, Table};
use crate::CliError;

/// Lower edge of the square that contains the physical `(x, y)` triangle.
pub const XY_MIN: f64 = -0.25;
pub const XY_MAX: f64 = 1.0;

pub const FIG2_WEIGHTS: [f64; 4] = [2.0 / 3.0, 0.0, 0.125, 5.0 / 24.0];

#[derive(Clone, Debug, PartialEq)]
pub struct Fig1Config {
    pub grid: usize,
    /// `(label, θ)`; the label is used verbatim in column names.
    pub thetas: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Config {
    pub grid: usize,
    pub omega_max: f64,
    pub weights: BellWeights,
    pub axes: SpinHalfAxes,
}

impl Default for Fig2Config {
    fn default() -> Self {
        let [a, b, c, d] = FIG2_WEIGHTS;
        Self {
            grid: 181,
            omega_max: std::f64::consts::FRAC_PI_2,
            weights: BellWeights::new(a, b, c, d).expect("valid default weights"),
            axes: SpinHalfAxes::Opposite,
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

pub(crate) fn check_grid(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!(
            "grid resolution must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn min_of(pairs: &[(f64, usize)]) -> f64 {
    expand_multiset(pairs)[0]
}

/// One row per `(x, y)` on an `n x n` grid over `[-1/4, 1]²`, `x` outer.
/// Columns: `x, y, physical, positivity_min, ppt_rest_min`, then
/// `ppt_min[theta=L]` and `separable[theta=L]` per requested angle.
/// Numeric cells are empty off the physical triangle.
pub fn fig1(cfg: &Fig1Config) -> Result<Table, CliError> {
    check_grid(cfg.grid)?;
    let mut columns: Vec<String> = ["x", "y", "physical", "positivity_min", "ppt_rest_min"]
        .into_iter()
        .map(String::from)
        .collect();
    for (label, _) in &cfg.thetas {
        columns.push(format!("ppt_min[theta={label}]"));
        columns.push(format!("separable[theta={label}]"));
    }
    let mut table = Table::new(columns);
    let axis = linspace(XY_MIN, XY_MAX, cfg.grid);
    for &x in &axis {
        for &y in &axis {
            let w = SpinOneWeights::raw(x, y);
            let physical = w.is_physical();
            let mut row = vec![
                Some(x),
                Some(y),
                flag(physical),
                Some(min_of(&spin1_positivity_eigs(&w))),
                Some(min_of(&spin1_ppt_eigs_rest(&w))),
            ];
            if physical {
                let rho = rho_spin1(&w)?;
                for &(_, theta) in &cfg.thetas {
                    let m = ppt_report(&boost_spin_one(&rho, theta)?)?.min_eigenvalue;
                    row.push(Some(m));
                    row.push(flag(m >= -PPT_TOL));
                }
            } else {
                row.extend(std::iter::repeat_n(None, 2 * cfg.thetas.len()));
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// Columns: `omega, closed_form, oracle, reconciled, radicand_flag`.
/// `closed_form` is the verbatim expression; when one of its square roots
/// fails the cell is empty and `radicand_flag` is 1.
pub fn fig2(cfg: &Fig2Config) -> Result<Table, CliError> {
    check_grid(cfg.grid)?;
    if !cfg.omega_max.is_finite() {
        return Err(CliError::Usage("omega-max must be finite".into()));
    }
    let columns = [
        "omega",
        "closed_form",
        "oracle",
        "reconciled",
        "radicand_flag",
    ];
    let mut table = Table::new(columns.into_iter().map(String::from).collect());
    for omega in linspace(0.0, cfg.omega_max, cfg.grid) {
        let closed = trace_bd_boosted(&cfg.weights, omega).ok();
        let reconciled = trace_bd_boosted_reconciled(&cfg.weights, omega).ok();
        let oracle = trace_bd_boosted_oracle(&cfg.weights, omega, cfg.axes)?;
        table.push(vec![
            Some(omega),
            closed,
            Some(oracle),
            reconciled,
            flag(closed.is_none()),
        ]);
    }
    Ok(table)
}
