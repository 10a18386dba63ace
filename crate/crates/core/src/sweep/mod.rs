//! Decoherence sweeps driven by a JSON configuration.

mod csv;
mod figures;
mod plot;
mod verify;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{analytic_evolved_bloch, apply_memory_channel, ChannelKind, MemoryChannel};
use crate::error::Error;
use crate::states::{bloch_from_density, density_from_bloch, BlochSpec, DensityMatrix};
use crate::uncertainty::{Observable, UncertaintyRecord};

pub use self::csv::{format_significant, to_csv_string, write_csv, CSV_HEADER};
pub use self::figures::{figure_configs, run_figures, FigureSpec, DEFAULT_D_STEPS};
pub use self::plot::{emit_plot_script, plot_script};
pub use self::verify::{pearson, verify_channel, CptpSummary, VerifyReport};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("at mu={memory}, D={decoherence}: {source}")]
    Point {
        memory: f64,
        decoherence: f64,
        #[source]
        source: Error,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl SweepError {
    fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        SweepError::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl DGrid {
    pub fn unit(steps: usize) -> Self {
        Self {
            start: 0.0,
            stop: 1.0,
            steps,
        }
    }

    /// Inclusive of both endpoints.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (k as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    BellDiagonal([f64; 3]),
    Bloch(BlochSpec),
}

impl InitialState {
    pub fn bloch(&self) -> BlochSpec {
        match *self {
            InitialState::BellDiagonal([c1, c2, c3]) => BlochSpec::bell_diagonal(c1, c2, c3),
            InitialState::Bloch(s) => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservablePair {
    #[default]
    SigmaXSigmaZ,
    SigmaXSigmaY,
    SigmaYSigmaZ,
}

impl ObservablePair {
    pub fn observables(self) -> (Observable, Observable) {
        match self {
            ObservablePair::SigmaXSigmaZ => (Observable::sigma_x(), Observable::sigma_z()),
            ObservablePair::SigmaXSigmaY => (Observable::sigma_x(), Observable::sigma_y()),
            ObservablePair::SigmaYSigmaZ => (Observable::sigma_y(), Observable::sigma_z()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub mu_values: Vec<f64>,
    pub d_grid: DGrid,
    pub initial_state: InitialState,
    #[serde(default)]
    pub observables: ObservablePair,
    pub output_path: String,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, SweepError> {
        let cfg: SweepConfig = serde_json::from_str(text)
            .map_err(|e| SweepError::config(json_error_field(&e), e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.mu_values.is_empty() {
            return Err(SweepError::config("mu_values", "must not be empty"));
        }
        for (i, &mu) in self.mu_values.iter().enumerate() {
            if !(0.0..=1.0).contains(&mu) {
                return Err(SweepError::config(
                    format!("mu_values[{i}]"),
                    format!("{mu} is outside [0, 1]"),
                ));
            }
        }
        let g = &self.d_grid;
        for (name, v) in [("d_grid.start", g.start), ("d_grid.stop", g.stop)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SweepError::config(name, format!("{v} is outside [0, 1]")));
            }
        }
        if g.start >= g.stop {
            return Err(SweepError::config(
                "d_grid",
                format!("start ({}) must be below stop ({})", g.start, g.stop),
            ));
        }
        if g.steps < 2 {
            return Err(SweepError::config(
                "d_grid.steps",
                format!("{} must be at least 2", g.steps),
            ));
        }
        if let Err(e) = density_from_bloch(&self.initial_state.bloch()) {
            return Err(SweepError::config("initial_state", e.to_string()));
        }
        if self.output_path.trim().is_empty() {
            return Err(SweepError::config("output_path", "must not be empty"));
        }
        Ok(())
    }

    /// Memory coefficients in ascending order.
    pub fn sorted_mu_values(&self) -> Vec<f64> {
        let mut mus = self.mu_values.clone();
        mus.sort_by(f64::total_cmp);
        mus
    }
}

/// Best-effort field name for a serde error, for diagnostics.
fn json_error_field(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    for marker in ["unknown field `", "missing field `"] {
        if let Some(rest) = msg.split(marker).nth(1) {
            if let Some(name) = rest.split('`').next() {
                return name.to_string();
            }
        }
    }
    "<document>".to_string()
}

/// One sweep point plus provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub channel: ChannelKind,
    #[serde(flatten)]
    pub values: UncertaintyRecord,
    /// Max gap between the closed-form table and the Kraus evolution; `None`
    /// when the initial state has off-diagonal correlations.
    pub table2_maxdev: Option<f64>,
}

fn evaluate_point(
    cfg: &SweepConfig,
    initial: &DensityMatrix,
    initial_bloch: &BlochSpec,
    memory: f64,
    decoherence: f64,
) -> Result<SweepRecord, SweepError> {
    let at = |source: Error| SweepError::Point {
        memory,
        decoherence,
        source,
    };
    let ch = MemoryChannel::new(cfg.channel, decoherence, memory).map_err(at)?;
    let evolved = apply_memory_channel(initial, &ch).map_err(at)?;
    let (r, q) = cfg.observables.observables();
    let values = UncertaintyRecord::evaluate(&evolved, &r, &q, decoherence, memory).map_err(at)?;
    let table2_maxdev = if initial_bloch.has_diagonal_correlations() {
        let table = analytic_evolved_bloch(initial_bloch, &ch).map_err(at)?;
        let kraus = bloch_from_density(&evolved).map_err(at)?;
        Some(table.max_abs_diff(&kraus))
    } else {
        None
    };
    let record = SweepRecord {
        channel: cfg.channel,
        values,
        table2_maxdev,
    };
    if !values.is_consistent() {
        return Err(SweepError::Invariant(format!(
            "mu={memory}, D={decoherence}: lhs={} rhs={} purity={} mu_lhs={} mu_rhs={}",
            values.lhs, values.rhs, values.purity, values.mu_lhs, values.mu_rhs
        )));
    }
    Ok(record)
}

/// Evaluates every `(mu, D)` grid point. Records are ordered by ascending
/// `mu`, then ascending `D`, independent of how the work was scheduled.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    cfg.validate()?;
    let initial_bloch = cfg.initial_state.bloch();
    let initial = density_from_bloch(&initial_bloch)?;
    let d_points = cfg.d_grid.points();
    let grid: Vec<(f64, f64)> = cfg
        .sorted_mu_values()
        .into_iter()
        .flat_map(|mu| d_points.iter().map(move |&d| (mu, d)))
        .collect();
    grid.par_iter()
        .map(|&(mu, d)| evaluate_point(cfg, &initial, &initial_bloch, mu, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> SweepConfig {
        SweepConfig {
            channel: ChannelKind::PhaseDamping,
            mu_values: vec![1.0, 0.0],
            d_grid: DGrid::unit(11),
            initial_state: InitialState::BellDiagonal([0.5, -0.5, 0.5]),
            observables: ObservablePair::default(),
            output_path: "out.csv".into(),
        }
    }

    #[test]
    fn grid_is_inclusive_and_refinement_stable() {
        let coarse = DGrid::unit(11).points();
        assert_eq!(coarse.first(), Some(&0.0));
        assert_eq!(coarse.last(), Some(&1.0));
        let fine = DGrid::unit(21).points();
        for (k, d) in coarse.iter().enumerate() {
            assert_eq!(*d, fine[2 * k]);
        }
    }

    #[test]
    fn config_parses_with_default_observables() {
        let cfg = SweepConfig::from_json(
            r#"{"channel":"depolarizing","mu_values":[0,0.5],"d_grid":{"start":0,"stop":1,"steps":5},
                "initial_state":{"bell_diagonal":[0.5,-0.5,0.5]},"output_path":"x.csv"}"#,
        )
        .unwrap();
        assert_eq!(cfg.observables, ObservablePair::SigmaXSigmaZ);
        assert_eq!(cfg.channel, ChannelKind::Depolarizing);
    }

    #[test]
    fn config_errors_name_the_field() {
        let bad_mu = r#"{"channel":"phase-damping","mu_values":[0,1.5],"d_grid":{"start":0,"stop":1,"steps":5},
            "initial_state":{"bell_diagonal":[0.5,-0.5,0.5]},"output_path":"x.csv"}"#;
        match SweepConfig::from_json(bad_mu) {
            Err(SweepError::Config { field, .. }) => assert_eq!(field, "mu_values[1]"),
            other => panic!("{other:?}"),
        }

        let typo = r#"{"channel":"phase-damping","mus":[0],"mu_values":[0],"d_grid":{"start":0,"stop":1,"steps":5},
            "initial_state":{"bell_diagonal":[0.5,-0.5,0.5]},"output_path":"x.csv"}"#;
        match SweepConfig::from_json(typo) {
            Err(SweepError::Config { field, .. }) => assert_eq!(field, "mus"),
            other => panic!("{other:?}"),
        }

        let mut cfg = base_config();
        cfg.d_grid.steps = 1;
        assert!(
            matches!(cfg.validate(), Err(SweepError::Config { field, .. }) if field == "d_grid.steps")
        );
        let mut cfg = base_config();
        cfg.initial_state = InitialState::BellDiagonal([1.0, 1.0, 1.0]);
        assert!(
            matches!(cfg.validate(), Err(SweepError::Config { field, .. }) if field == "initial_state")
        );
    }

    #[test]
    fn records_are_ordered_by_mu_then_d() {
        let recs = run_sweep(&base_config()).unwrap();
        assert_eq!(recs.len(), 22);
        for w in recs.windows(2) {
            let (a, b) = (&w[0].values, &w[1].values);
            assert!(a.memory < b.memory || (a.memory == b.memory && a.decoherence < b.decoherence));
        }
    }

    #[test]
    fn non_diagonal_initial_state_has_no_table_deviation() {
        let mut s = BlochSpec::bell_diagonal(0.3, -0.3, 0.3);
        s.t[0][1] = 0.1;
        let mut cfg = base_config();
        cfg.initial_state = InitialState::Bloch(s);
        let recs = run_sweep(&cfg).unwrap();
        assert!(recs.iter().all(|r| r.table2_maxdev.is_none()));
    }
}
