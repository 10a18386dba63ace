//! Generates a standalone matplotlib script that renders a sweep CSV.

use std::fs;
use std::path::Path;

use super::{format_significant, SweepError, SweepRecord};
use crate::channels::ChannelKind;

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn panel_titles(channel: ChannelKind) -> &'static [&'static str] {
    match channel {
        // Uncertainties and bounds get separate panels for the nonunital case.
        ChannelKind::AmplitudeDamping => &["uncertainty (LH)", "lower bound (RH)", "purity"],
        _ => &["uncertainty (solid) and lower bound (dashed)", "purity"],
    }
}

/// Script text for `records` reading data from `csv_file`. The figure is
/// written next to the script as `<image_name>`.
pub fn plot_script(
    records: &[SweepRecord],
    csv_file: &str,
    image_name: &str,
) -> Result<String, SweepError> {
    let first = records
        .first()
        .ok_or_else(|| SweepError::Invariant("cannot plot an empty sweep".into()))?;
    let channel = first.channel;
    let mut mus: Vec<f64> = records.iter().map(|r| r.values.memory).collect();
    mus.sort_by(f64::total_cmp);
    mus.dedup();
    let mu_list = mus
        .iter()
        .map(|m| format_significant(*m, 12))
        .collect::<Vec<_>>()
        .join(", ");
    let titles = panel_titles(channel);
    let title_list = titles
        .iter()
        .map(|t| format!("{t:?}"))
        .collect::<Vec<_>>()
        .join(", ");
    let colors = COLORS
        .iter()
        .map(|c| format!("{c:?}"))
        .collect::<Vec<_>>()
        .join(", ");

    let draw = if titles.len() == 3 {
        "        axes[0].plot(d, s['lhs'], '-', color=color, label=label)\n\
         \x20       axes[1].plot(d, s['rhs'], '--', color=color, label=label)\n\
         \x20       axes[2].plot(d, s['purity'], '-', color=color, label=label)\n"
    } else {
        "        axes[0].plot(d, s['lhs'], '-', color=color, label=label + ' LH')\n\
         \x20       axes[0].plot(d, s['rhs'], '--', color=color, label=label + ' RH')\n\
         \x20       axes[1].plot(d, s['purity'], '-', color=color, label=label)\n"
    };

    Ok(format!(
        r#"#!/usr/bin/env python3
# Entropic uncertainty sweep: {channel}
# Usage: python3 <this script>  (reads the CSV from the script's directory)
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
CSV_FILE = os.path.join(HERE, {csv_file:?})
IMAGE_FILE = os.path.join(HERE, {image_name:?})
MU_VALUES = [{mu_list}]
TITLES = [{title_list}]
COLORS = [{colors}]


def load(path):
    series = {{}}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            mu = float(row["mu"])
            s = series.setdefault(mu, {{"D": [], "lhs": [], "rhs": [], "purity": []}})
            for key in s:
                s[key].append(float(row[key]))
    return series


def main():
    series = load(CSV_FILE)
    fig, axes = plt.subplots(1, len(TITLES), figsize=(4.5 * len(TITLES), 3.6))
    for i, mu in enumerate(MU_VALUES):
        s = series.get(mu)
        if s is None:
            continue
        color = COLORS[i % len(COLORS)]
        label = "mu=%g" % mu
        d = s["D"]
{draw}    for ax, title in zip(axes, TITLES):
        ax.set_xlabel("D")
        ax.set_title(title)
        ax.set_xlim(0.0, 1.0)
        ax.legend(fontsize="small")
    fig.suptitle({channel_str:?})
    fig.tight_layout()
    fig.savefig(IMAGE_FILE, dpi=150)


if __name__ == "__main__":
    main()
"#,
        channel_str = channel.as_str(),
    ))
}

/// Writes the plot script for `records` to `script_path`; the script reads
/// `csv_path` (by file name, relative to the script).
pub fn emit_plot_script(
    records: &[SweepRecord],
    csv_path: &Path,
    script_path: &Path,
) -> Result<(), SweepError> {
    let csv_file = csv_path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("sweep.csv");
    let image = script_path
        .with_extension("png")
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("sweep.png")
        .to_string();
    let text = plot_script(records, csv_file, &image)?;
    fs::write(script_path, text).map_err(|source| SweepError::Io {
        path: script_path.to_path_buf(),
        source,
    })
}
