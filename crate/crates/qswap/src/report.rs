use std::io::Write;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::sweep::SweepReport;

/// Significant digits used for every printed number.
pub const SIG_DIGITS: usize = 12;

/// `x` with 12 significant digits, trailing zeros trimmed, like C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format_sig(x).parse().expect("formatted float parses");
            if let Some(r) = Number::from_f64(rounded) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut tree = serde_json::to_value(value)?;
    round_floats(&mut tree);
    serde_json::to_string_pretty(&tree)
}

pub fn write_json<W: Write>(report: &SweepReport, mut out: W) -> std::io::Result<()> {
    let text = to_json(report)?;
    writeln!(out, "{text}")
}

pub const CSV_HEADER: [&str; 13] = [
    "family",
    "d",
    "n",
    "slot",
    "pair",
    "outcome_u",
    "outcome_v",
    "probability_oracle",
    "probability_expected",
    "fidelity",
    "status",
    "reason",
    "pass",
];

/// One row per case, in case order.
pub fn write_csv<W: Write>(report: &SweepReport, out: W) -> csv::Result<()> {
    use qswap_core::verify::CaseStatus;

    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for case in &report.cases {
        let desc = &case.descriptor;
        let (status, reason) = match &case.status {
            CaseStatus::Pass => ("pass", ""),
            CaseStatus::Fail => ("fail", ""),
            CaseStatus::Skipped(r) => ("skipped", r.as_str()),
            CaseStatus::Invalid(r) => ("invalid", r.as_str()),
        };
        writer.write_record([
            desc.family.kind().name().to_string(),
            desc.d.to_string(),
            desc.n.to_string(),
            desc.slot.to_string(),
            desc.pair.name(),
            desc.outcome.0.to_string(),
            desc.outcome.1.to_string(),
            format_sig(case.probability_oracle),
            format_sig(case.probability_expected),
            format_sig(case.fidelity),
            status.to_string(),
            reason.to_string(),
            case.pass.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
