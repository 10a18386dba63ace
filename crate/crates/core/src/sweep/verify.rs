//! Channel property checks and the closed-form discrepancy report, as a
//! printable summary.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{figure_configs, run_sweep, SweepError};
use crate::channels::{
    kraus_completeness, kraus_correlated, kraus_uncorrelated, table_discrepancy_report,
    ChannelKind, Correlation, DiscrepancyReport, KrausSet,
};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::sampling::random_density_matrix;
use crate::states::{DensityMatrix, PSD_TOL};

pub const COMPLETENESS_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const UNITAL_TOL: f64 = 1e-12;

const FLAT_SERIES_TOL: f64 = 1e-12;

/// Results for one Kraus set at one value of D.
#[derive(Debug, Clone)]
pub struct CptpSummary {
    pub correlation: Correlation,
    pub decoherence: f64,
    pub completeness: f64,
    pub max_trace_error: f64,
    pub min_eigenvalue: f64,
    /// Max-norm of `ε(I/4) - I/4`.
    pub unital_residual: f64,
}

impl CptpSummary {
    pub fn is_cptp(&self) -> bool {
        self.completeness <= COMPLETENESS_TOL
            && self.max_trace_error <= TRACE_TOL
            && self.min_eigenvalue >= -PSD_TOL
    }
}

/// Checks one Kraus set on a batch of input states.
pub fn check_kraus_set(
    set: &KrausSet,
    decoherence: f64,
    inputs: &[DensityMatrix],
) -> Result<CptpSummary> {
    let mut max_trace_error: f64 = 0.0;
    let mut min_eigenvalue = f64::INFINITY;
    for rho in inputs {
        let out = set.apply(rho.matrix());
        max_trace_error = max_trace_error.max((out.trace().re - 1.0).abs());
        let spectrum = hermitian_eigenvalues(&out)?;
        min_eigenvalue = min_eigenvalue.min(*spectrum.last().expect("non-empty"));
    }
    let mixed = ComplexMatrix::identity(4).scale_real(0.25);
    Ok(CptpSummary {
        correlation: set.correlation,
        decoherence,
        completeness: kraus_completeness(set),
        max_trace_error,
        min_eigenvalue,
        unital_residual: set.apply(&mixed).max_abs_diff(&mixed),
    })
}

/// Pearson correlation coefficient; NaN when either series is flat (spread
/// below round-off).
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    let flat = |ss: f64, mean: f64| ss.sqrt() <= FLAT_SERIES_TOL * (n.sqrt() * mean.abs()).max(1.0);
    if flat(sxx, mx) || flat(syy, my) {
        return f64::NAN;
    }
    sxy / (sxx * syy).sqrt()
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub kind: ChannelKind,
    pub input_states: usize,
    pub cptp: Vec<CptpSummary>,
    pub table: DiscrepancyReport,
    /// `(mu, pearson(lhs, purity))` over the reference sweep for this channel.
    pub purity_correlation: Vec<(f64, f64)>,
}

impl VerifyReport {
    /// Unital channels must fix `I/4`; amplitude damping must not for `D > 0`.
    pub fn unital_behaviour_ok(&self) -> bool {
        self.cptp.iter().all(|s| {
            if self.kind.is_unital() || s.decoherence == 0.0 {
                s.unital_residual <= UNITAL_TOL
            } else {
                s.unital_residual > UNITAL_TOL
            }
        })
    }

    /// Property checks pass. Closed-form mismatches are reported, not fatal.
    pub fn passed(&self) -> bool {
        self.cptp.iter().all(CptpSummary::is_cptp) && self.unital_behaviour_ok()
    }
}

/// Runs the property suite for `kind` on `input_states` random states per
/// D value and the closed-form comparison on `table_samples` inputs.
pub fn verify_channel(
    kind: ChannelKind,
    input_states: usize,
    table_samples: usize,
    seed: u64,
) -> std::result::Result<VerifyReport, SweepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<DensityMatrix> = (0..input_states)
        .map(|_| random_density_matrix(&mut rng))
        .collect();
    let mut cptp = Vec::new();
    for step in 0..=10 {
        let d = step as f64 / 10.0;
        for set in [kraus_uncorrelated(kind, d)?, kraus_correlated(kind, d)?] {
            cptp.push(check_kraus_set(&set, d, &inputs)?);
        }
    }
    let table = table_discrepancy_report(kind, table_samples, seed ^ 0x9e37_79b9)?;

    let fig = figure_configs()
        .into_iter()
        .find(|f| f.config.channel == kind)
        .expect("one reference figure per channel");
    let records = run_sweep(&fig.config)?;
    let purity_correlation = fig
        .config
        .sorted_mu_values()
        .into_iter()
        .map(|mu| {
            let series: Vec<_> = records.iter().filter(|r| r.values.memory == mu).collect();
            let lhs: Vec<f64> = series.iter().map(|r| r.values.lhs).collect();
            let purity: Vec<f64> = series.iter().map(|r| r.values.purity).collect();
            (mu, pearson(&lhs, &purity))
        })
        .collect();

    Ok(VerifyReport {
        kind,
        input_states,
        cptp,
        table,
        purity_correlation,
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== channel: {} ==", self.kind)?;
        writeln!(
            f,
            "-- Kraus sets ({} random input states per D) --",
            self.input_states
        )?;
        writeln!(
            f,
            "{:>12} {:>5} {:>13} {:>13} {:>13} {:>13}",
            "set", "D", "completeness", "trace err", "min eig", "unital res"
        )?;
        for s in &self.cptp {
            let set = match s.correlation {
                Correlation::Uncorrelated => "uncorrelated",
                Correlation::Correlated => "correlated",
            };
            writeln!(
                f,
                "{:>12} {:>5.2} {:>13.3e} {:>13.3e} {:>13.3e} {:>13.3e}",
                set,
                s.decoherence,
                s.completeness,
                s.max_trace_error,
                s.min_eigenvalue,
                s.unital_residual
            )?;
        }
        let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "completeness <= {COMPLETENESS_TOL:e}, trace error <= {TRACE_TOL:e}, min eigenvalue >= {:e}: {}",
            -PSD_TOL,
            status(self.cptp.iter().all(CptpSummary::is_cptp))
        )?;
        writeln!(
            f,
            "unital check ({}): {}",
            if self.kind.is_unital() {
                "expects ε(I/4) = I/4"
            } else {
                "expects ε(I/4) ≠ I/4 for D > 0"
            },
            status(self.unital_behaviour_ok())
        )?;
        writeln!(f, "-- closed-form table --")?;
        write!(f, "{}", self.table)?;
        writeln!(f, "-- purity vs uncertainty (reference sweep) --")?;
        for (mu, r) in &self.purity_correlation {
            if r.is_nan() {
                writeln!(f, "mu={mu:<4} pearson(lhs, purity) = n/a (flat series)")?;
            } else {
                writeln!(f, "mu={mu:<4} pearson(lhs, purity) = {r:.6}")?;
            }
        }
        writeln!(f, "overall: {}", status(self.passed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_basics() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&x, &[2.0, 4.0, 6.0, 8.0]) - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[8.0, 6.0, 4.0, 2.0]) + 1.0).abs() < 1e-15);
        assert!(pearson(&x, &[1.0; 4]).is_nan());
    }

    #[test]
    fn amplitude_damping_report_passes_property_checks() {
        let report = verify_channel(ChannelKind::AmplitudeDamping, 10, 50, 1).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.cptp.len(), 22);
    }
}
