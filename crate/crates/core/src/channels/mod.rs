//! Amplitude-damping, phase-damping and depolarizing channels with memory.
//!
//! Two consecutive uses of a channel act on qubits A and B. With probability
//! `1 - mu` the noise is independent on each use (the uncorrelated Kraus set
//! `E_ij = K_i ⊗ K_j`); with probability `mu` the same error hits both
//! qubits (the correlated Kraus set).

mod analytic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pauli, ComplexMatrix};
use crate::states::DensityMatrix;

pub use analytic::{
    analytic_evolved_bloch, table_deviation, table_discrepancy_report, DiscrepancyReport,
    EntryMismatch, TableSample, TABLE_MATCH_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::PhaseDamping => "phase-damping",
            ChannelKind::Depolarizing => "depolarizing",
        }
    }

    pub fn is_unital(self) -> bool {
        !matches!(self, ChannelKind::AmplitudeDamping)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "amplitude-damping" | "ad" => Ok(ChannelKind::AmplitudeDamping),
            "phase-damping" | "pd" => Ok(ChannelKind::PhaseDamping),
            "depolarizing" | "de" => Ok(ChannelKind::Depolarizing),
            other => Err(format!(
                "unknown channel `{other}` (expected amplitude-damping, phase-damping or depolarizing)"
            )),
        }
    }
}

/// A two-use channel: kind, decoherence `D` and memory coefficient `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryChannel {
    kind: ChannelKind,
    decoherence: f64,
    memory: f64,
}

impl MemoryChannel {
    pub fn new(kind: ChannelKind, decoherence: f64, memory: f64) -> Result<Self> {
        check_unit("D", decoherence)?;
        check_unit("mu", memory)?;
        Ok(Self {
            kind,
            decoherence,
            memory,
        })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn decoherence(&self) -> f64 {
        self.decoherence
    }

    pub fn memory(&self) -> f64 {
        self.memory
    }
}

/// `D = 1 - exp(-gamma t)`.
pub fn decoherence_from_rate(gamma: f64, t: f64) -> f64 {
    1.0 - (-gamma * t).exp()
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::BadParameter {
            name,
            value,
            domain: "[0, 1]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correlation {
    Uncorrelated,
    Correlated,
}

/// A trace-preserving set of 4x4 Kraus operators with weights absorbed.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub correlation: Correlation,
    pub operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// `Σ E m E†`, for any 4x4 operator `m`.
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
        for e in &self.operators {
            out = &out + &e.sandwich(m);
        }
        out
    }
}

fn amplitude_damping_factors(d: f64) -> [ComplexMatrix; 2] {
    [
        ComplexMatrix::from_real_rows(&[[(1.0 - d).sqrt(), 0.0], [0.0, 1.0]]),
        ComplexMatrix::from_real_rows(&[[0.0, 0.0], [d.sqrt(), 0.0]]),
    ]
}

/// Pauli indices and probabilities of the single-use Pauli channels.
fn pauli_weights(kind: ChannelKind, d: f64) -> Vec<(usize, f64)> {
    match kind {
        ChannelKind::PhaseDamping => vec![(0, 1.0 - d), (3, d)],
        ChannelKind::Depolarizing => vec![(0, 1.0 - d), (1, d / 3.0), (2, d / 3.0), (3, d / 3.0)],
        ChannelKind::AmplitudeDamping => unreachable!("amplitude damping is not a Pauli channel"),
    }
}

/// Independent noise on each use.
pub fn kraus_uncorrelated(kind: ChannelKind, d: f64) -> Result<KrausSet> {
    check_unit("D", d)?;
    let operators = match kind {
        ChannelKind::AmplitudeDamping => {
            let k = amplitude_damping_factors(d);
            k.iter()
                .flat_map(|ki| k.iter().map(move |kj| ki.kron(kj)))
                .collect()
        }
        _ => {
            let w = pauli_weights(kind, d);
            w.iter()
                .flat_map(|&(i, pi)| {
                    w.iter()
                        .map(move |&(j, pj)| pauli(i).kron(&pauli(j)).scale_real((pi * pj).sqrt()))
                })
                .collect()
        }
    };
    Ok(KrausSet {
        correlation: Correlation::Uncorrelated,
        operators,
    })
}

/// The same error on both uses.
pub fn kraus_correlated(kind: ChannelKind, d: f64) -> Result<KrausSet> {
    check_unit("D", d)?;
    let operators = match kind {
        ChannelKind::AmplitudeDamping => {
            let e00 = ComplexMatrix::from_real_diagonal(&[(1.0 - d).sqrt(), 1.0, 1.0, 1.0]);
            let mut e11 = ComplexMatrix::zeros(4, 4);
            // |00> -> |11>
            e11[(3, 0)] = num_complex::Complex64::new(d.sqrt(), 0.0);
            vec![e00, e11]
        }
        _ => pauli_weights(kind, d)
            .into_iter()
            .map(|(k, pk)| pauli(k).kron(&pauli(k)).scale_real(pk.sqrt()))
            .collect(),
    };
    Ok(KrausSet {
        correlation: Correlation::Correlated,
        operators,
    })
}

/// Max-norm of `Σ E†E - I`.
pub fn kraus_completeness(set: &KrausSet) -> f64 {
    let n = set.operators.first().map(|e| e.cols()).unwrap_or(4);
    let mut acc = ComplexMatrix::zeros(n, n);
    for e in &set.operators {
        acc = &acc + &(&e.dagger() * e);
    }
    acc.max_abs_diff(&ComplexMatrix::identity(n))
}

/// `(1 - mu) Σ E^u m E^u† + mu Σ E^c m E^c†` without validation.
pub fn evolve_operator(m: &ComplexMatrix, ch: &MemoryChannel) -> Result<ComplexMatrix> {
    let unc = kraus_uncorrelated(ch.kind, ch.decoherence)?.apply(m);
    let cor = kraus_correlated(ch.kind, ch.decoherence)?.apply(m);
    Ok(&unc.scale_real(1.0 - ch.memory) + &cor.scale_real(ch.memory))
}

/// Applies the memory channel to a two-qubit state.
pub fn apply_memory_channel(rho: &DensityMatrix, ch: &MemoryChannel) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(crate::error::bad_dim("4x4", rho.dim(), rho.dim()));
    }
    DensityMatrix::new(evolve_operator(rho.matrix(), ch)?)
}
