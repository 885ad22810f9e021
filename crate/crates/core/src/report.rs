//! Number formatting shared by every machine-readable output.

use serde::Serializer;

/// Significant digits carried by JSON and CSV output.
pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let text = format!("{:.*e}", digits.saturating_sub(1), x);
    text.parse().unwrap_or(x)
}

/// Shortest decimal form of `x` after rounding to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x, SIG_DIGITS);
    if r == 0.0 {
        // Avoid printing `-0`.
        return "0".to_string();
    }
    format!("{r}")
}

pub(crate) fn ser_sig<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, SIG_DIGITS))
}

pub(crate) fn ser_sig_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig(x, SIG_DIGITS)))
}

pub(crate) fn ser_sig_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v, SIG_DIGITS)),
        None => s.serialize_none(),
    }
}

/// CSV with header `s,value`.
pub fn curve_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("s,value\n");
    for &(s, v) in points {
        out.push_str(&fmt_num(s));
        out.push(',');
        out.push_str(&fmt_num(v));
        out.push('\n');
    }
    out
}
