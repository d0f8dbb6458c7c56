//! CSV and JSON export of a `DiscrepancyReport`.
//!
//! Floats are printed with 12 significant digits and rows come in a fixed
//! order, so equal reports serialize to identical bytes. Column and
//! statistic names are frozen; see `docs/formats.md`.

use std::io::Write;

use serde_json::Value;

use crate::discrepancy::{DiscrepancyReport, ScaleRow};
use crate::error::Result;

pub const CSV_HEADER: &str = "i,statistic,value";

/// Statistic names in output order.
pub const CSV_STATISTICS: [&str; 30] = [
    "side",
    "K",
    "D",
    "ratio_gap",
    "gap_max",
    "prop22_bound",
    "prop22_holds",
    "squares",
    "skipped_no_darts",
    "e_min",
    "e_mean",
    "E",
    "e_minus_1",
    "prop23_bound",
    "prop23_holds",
    "product",
    "log_sum",
    "region_m",
    "region_a",
    "region_V",
    "region_W",
    "region_frame_area",
    "region_frame_bound",
    "region_v_lower_applies",
    "region_v_lower_holds",
    "region_frame_holds",
    "region_dart_fit_holds",
    "region_kite_fit_holds",
    "region_d1_lower_holds",
    "ratio_sandwich_holds",
];

/// `x` with 12 significant digits; plain decimal for moderate magnitudes,
/// scientific otherwise, trailing zeros removed. Non-finite values print as
/// `nan`, `inf` or `-inf`.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // round first so the exponent reflects the rounded value
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn row_values(r: &ScaleRow, product: f64, log_sum: f64) -> [f64; 30] {
    let g = &r.region;
    [
        r.side as f64,
        r.k as f64,
        r.d as f64,
        r.ratio_gap,
        r.scan.gap_max,
        r.prop22.bound,
        flag(r.prop22.holds),
        r.scan.squares as f64,
        r.scan.skipped_no_darts as f64,
        r.scan.e_min,
        r.scan.e_mean,
        r.scan.e_max,
        r.e_minus_1,
        r.prop23_bound,
        flag(r.prop23_holds),
        product,
        log_sum,
        g.m as f64,
        g.a,
        g.contained_area,
        g.intersecting_area,
        g.frame.lhs,
        g.frame.rhs,
        flag(g.v_lower.applies),
        flag(g.v_lower.holds),
        flag(g.frame.holds),
        flag(g.dart_fit.holds),
        flag(g.kite_fit.holds),
        flag(g.d1_lower.holds),
        flag(r.ratio_sandwich),
    ]
}

/// Long-format CSV: one row per `(i, statistic)`, grouped by statistic.
pub fn write_csv<W: Write>(report: &DiscrepancyReport, mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let values: Vec<(u32, [f64; 30])> = report
        .rows
        .iter()
        .zip(&report.product.prefix)
        .map(|(r, &(_, p, s))| (r.i, row_values(r, p, s)))
        .collect();
    for (k, name) in CSV_STATISTICS.iter().enumerate() {
        for (i, v) in &values {
            writeln!(w, "{i},{name},{}", fmt_sig(v[k]))?;
        }
    }
    Ok(())
}

pub fn csv_string(report: &DiscrepancyReport) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(report, &mut buf)?;
    Ok(String::from_utf8(buf).expect("ascii csv"))
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.11e}").parse().expect("float");
            *v = serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON of the whole report, floats rounded to 12 significant
/// digits; non-finite floats become `null`.
pub fn json_string(report: &DiscrepancyReport) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
