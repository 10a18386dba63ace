use std::fs;
use std::path::{Path, PathBuf};

use super::{
    emit_plot_script, run_sweep, write_csv, DGrid, InitialState, ObservablePair, SweepConfig,
    SweepError,
};
use crate::channels::ChannelKind;

/// Resolution of the built-in D grids.
pub const DEFAULT_D_STEPS: usize = 201;

/// A built-in figure: a file stem and its sweep.
#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub stem: &'static str,
    pub config: SweepConfig,
}

/// The three reference sweeps: one per channel, `mu ∈ {0, 0.5, 1}`, Bell-diagonal
/// input with correlations `(1/2, -1/2, 1/2)`, observables σx and σz.
pub fn figure_configs() -> Vec<FigureSpec> {
    [
        ("fig1_amplitude_damping", ChannelKind::AmplitudeDamping),
        ("fig2_phase_damping", ChannelKind::PhaseDamping),
        ("fig3_depolarizing", ChannelKind::Depolarizing),
    ]
    .into_iter()
    .map(|(stem, channel)| FigureSpec {
        stem,
        config: SweepConfig {
            channel,
            mu_values: vec![0.0, 0.5, 1.0],
            d_grid: DGrid::unit(DEFAULT_D_STEPS),
            initial_state: InitialState::BellDiagonal([0.5, -0.5, 0.5]),
            observables: ObservablePair::SigmaXSigmaZ,
            output_path: format!("{stem}.csv"),
        },
    })
    .collect()
}

/// Runs every built-in figure into `out_dir`, returning the files written.
pub fn run_figures(out_dir: &Path) -> Result<Vec<PathBuf>, SweepError> {
    fs::create_dir_all(out_dir).map_err(|source| SweepError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for fig in figure_configs() {
        let records = run_sweep(&fig.config)?;
        let csv_path = out_dir.join(&fig.config.output_path);
        let script_path = out_dir.join(format!("{}.py", fig.stem));
        write_csv(&records, &csv_path)?;
        emit_plot_script(&records, &csv_path, &script_path)?;
        written.push(csv_path);
        written.push(script_path);
    }
    Ok(written)
}
