use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{SweepError, SweepRecord};

pub const CSV_HEADER: &str = "channel,mu,D,lhs,rhs,s_xB,s_zB,purity,mu_lhs,mu_rhs,table2_maxdev";

const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with `digits` significant digits, like C's `%.{digits}g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{:.*e}", precision, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (precision as i32 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

pub fn to_csv_string(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 + records.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let v = &r.values;
        let dev = r.table2_maxdev.map(num).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.channel,
            num(v.memory),
            num(v.decoherence),
            num(v.lhs),
            num(v.rhs),
            num(v.s_r_b),
            num(v.s_q_b),
            num(v.purity),
            num(v.mu_lhs),
            num(v.mu_rhs),
            dev
        )
        .expect("writing to a String");
    }
    out
}

pub fn write_csv(records: &[SweepRecord], path: &Path) -> Result<(), SweepError> {
    fs::write(path, to_csv_string(records)).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })
}
