//! Closed-form evolved Bloch parameters, transcribed row by row from the
//! published table, and a report comparing them against the Kraus result.
//!
//! These formulas are claims to be checked. Nothing downstream uses them in
//! place of [`super::apply_memory_channel`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_memory_channel, ChannelKind, MemoryChannel};
use crate::error::{Error, Result};
use crate::sampling::random_diagonal_bloch;
use crate::states::{bloch_from_density, density_from_bloch, BlochSpec, BLOCH_LABELS};

/// Per-entry agreement threshold between the table and the Kraus path.
pub const TABLE_MATCH_TOL: f64 = 1e-9;

/// Evolved Bloch parameters as printed in the closed-form table.
///
/// Only inputs with a diagonal correlation matrix are covered.
pub fn analytic_evolved_bloch(s: &BlochSpec, ch: &MemoryChannel) -> Result<BlochSpec> {
    if !s.has_diagonal_correlations() {
        return Err(Error::UnsupportedInput(
            "closed-form evolution requires a diagonal correlation matrix".into(),
        ));
    }
    let d = ch.decoherence();
    let mu = ch.memory();
    let [a1, a2, a3] = s.a;
    let [b1, b2, b3] = s.b;
    let (c1, c2, c3) = (s.t[0][0], s.t[1][1], s.t[2][2]);
    let mut out = BlochSpec::zero();

    match ch.kind() {
        ChannelKind::AmplitudeDamping => {
            let r = (1.0 - d).sqrt();
            let local = 0.5 * (2.0 * r + mu - r * mu);
            out.a = [
                local * a1,
                local * a2,
                0.5 * (1.0 + a3 - b3 - c3) * d * mu - d + (1.0 - d) * a3,
            ];
            out.b = [
                local * b1,
                local * b2,
                0.5 * (1.0 - a3 + b3 - c3) * d * mu - d + (1.0 - d) * b3,
            ];
            out.t[0][0] = c1 / 2.0 * (1.0 - r) * mu * (c2 - c1) + (1.0 - d - d * mu);
            out.t[1][1] = c2 / 2.0 * (1.0 - r) * mu * (c1 - c2) + (1.0 - d - d * mu);
            out.t[2][2] = d * (1.0 - mu) * (1.0 - d) * (c3 - a3 - b3) + d * d * (1.0 - mu) + c3;
            let cross = 0.5 * mu * (r - 1.0) - d * r * (1.0 - mu);
            out.t[0][2] = cross * a1;
            out.t[1][2] = cross * a2;
            out.t[2][0] = cross * b1;
            out.t[2][1] = cross * b2;
        }
        ChannelKind::PhaseDamping => {
            out.a = [(1.0 - d) * a1, (1.0 - d) * a2, a3];
            out.b = [(1.0 - d) * b1, (1.0 - d) * b2, b3];
            let f = 1.0 - (1.0 - d) * d * (1.0 - mu);
            out.t[0][0] = c1 * f;
            out.t[1][1] = c2 * f;
            out.t[2][2] = c3;
        }
        ChannelKind::Depolarizing => {
            let local = 1.0 - 4.0 * d / 3.0;
            out.a = s.a.map(|x| local * x);
            out.b = s.b.map(|x| local * x);
            let f = (9.0 - 8.0 * d * (3.0 - 2.0 * d) * (1.0 - mu)) / 9.0;
            out.t[0][0] = c1 * f;
            out.t[1][1] = c2 * f;
            out.t[2][2] = c3 * f;
        }
    }
    Ok(out)
}

/// Largest entrywise gap between the closed form and the Kraus evolution of
/// `s`, or `None` when the closed form does not cover the input.
pub fn table_deviation(s: &BlochSpec, ch: &MemoryChannel) -> Result<Option<f64>> {
    if !s.has_diagonal_correlations() {
        return Ok(None);
    }
    let table = analytic_evolved_bloch(s, ch)?;
    let kraus = bloch_from_density(&apply_memory_channel(&density_from_bloch(s)?, ch)?)?;
    Ok(Some(table.max_abs_diff(&kraus)))
}

/// One random input used by the discrepancy report.
#[derive(Debug, Clone)]
pub struct TableSample {
    pub state: BlochSpec,
    pub decoherence: f64,
    pub memory: f64,
}

#[derive(Debug, Clone)]
pub struct EntryMismatch {
    pub sample: usize,
    pub entry: &'static str,
    pub table: f64,
    pub kraus: f64,
}

impl EntryMismatch {
    pub fn deviation(&self) -> f64 {
        (self.table - self.kraus).abs()
    }
}

/// Closed form vs. Kraus comparison over random inputs for one channel.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    pub kind: ChannelKind,
    pub tolerance: f64,
    pub samples: Vec<TableSample>,
    /// Largest deviation per Bloch entry, indexed like [`BLOCH_LABELS`].
    pub entry_max: [f64; 15],
    pub mismatches: Vec<EntryMismatch>,
}

impl DiscrepancyReport {
    pub fn max_deviation(&self) -> f64 {
        self.entry_max.iter().copied().fold(0.0, f64::max)
    }

    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Labels of entries that disagree on at least one sample.
    pub fn mismatching_entries(&self) -> Vec<&'static str> {
        BLOCH_LABELS
            .iter()
            .zip(self.entry_max)
            .filter(|(_, m)| *m > self.tolerance)
            .map(|(l, _)| *l)
            .collect()
    }
}

/// Compares the closed form with the Kraus path on `samples` random
/// diagonal-correlation states and random `(D, mu)`.
pub fn table_discrepancy_report(
    kind: ChannelKind,
    samples: usize,
    seed: u64,
) -> Result<DiscrepancyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DiscrepancyReport {
        kind,
        tolerance: TABLE_MATCH_TOL,
        samples: Vec::with_capacity(samples),
        entry_max: [0.0; 15],
        mismatches: Vec::new(),
    };
    for index in 0..samples {
        let state = random_diagonal_bloch(&mut rng);
        let decoherence: f64 = rng.gen_range(0.0..=1.0);
        let memory: f64 = rng.gen_range(0.0..=1.0);
        let ch = MemoryChannel::new(kind, decoherence, memory)?;
        let table = analytic_evolved_bloch(&state, &ch)?.components();
        let kraus = bloch_from_density(&apply_memory_channel(&density_from_bloch(&state)?, &ch)?)?
            .components();
        for (k, label) in BLOCH_LABELS.iter().enumerate() {
            let dev = (table[k] - kraus[k]).abs();
            report.entry_max[k] = report.entry_max[k].max(dev);
            if dev > TABLE_MATCH_TOL {
                report.mismatches.push(EntryMismatch {
                    sample: index,
                    entry: label,
                    table: table[k],
                    kraus: kraus[k],
                });
            }
        }
        report.samples.push(TableSample {
            state,
            decoherence,
            memory,
        });
    }
    Ok(report)
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "closed-form table vs Kraus evolution: channel={} samples={} tolerance={:e}",
            self.kind,
            self.samples.len(),
            self.tolerance
        )?;
        writeln!(f, "{:>6} {:>14} {:>6}", "entry", "max |dev|", "status")?;
        for (label, dev) in BLOCH_LABELS.iter().zip(self.entry_max) {
            let status = if dev > self.tolerance { "DIFF" } else { "ok" };
            writeln!(f, "{label:>6} {dev:>14.6e} {status:>6}")?;
        }
        if self.matches() {
            writeln!(f, "result: MATCH (all entries within tolerance)")?;
            return Ok(());
        }
        writeln!(
            f,
            "result: MISMATCH ({} entries over {} samples)",
            self.mismatches.len(),
            self.samples.len()
        )?;
        writeln!(
            f,
            "{:>6} {:>6} {:>16} {:>16} {:>12}  inputs",
            "sample", "entry", "table", "kraus", "|dev|"
        )?;
        for m in &self.mismatches {
            let s = &self.samples[m.sample];
            writeln!(
                f,
                "{:>6} {:>6} {:>16.10} {:>16.10} {:>12.4e}  D={:.6} mu={:.6} a={:?} b={:?} c=[{:.6}, {:.6}, {:.6}]",
                m.sample,
                m.entry,
                m.table,
                m.kraus,
                m.deviation(),
                s.decoherence,
                s.memory,
                s.state.a.map(|x| (x * 1e6).round() / 1e6),
                s.state.b.map(|x| (x * 1e6).round() / 1e6),
                s.state.t[0][0],
                s.state.t[1][1],
                s.state.t[2][2],
            )?;
        }
        Ok(())
    }
}
