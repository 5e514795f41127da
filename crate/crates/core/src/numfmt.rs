//! Deterministic decimal rendering for CSV and export text.

/// Renders `x` with `digits` significant digits, trailing zeros removed.
///
/// Plain notation is used for magnitudes in `[1e-5, 1e15)`, scientific
/// otherwise. Negative zero prints as `0`.
pub fn significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exponent) {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = trim_zeros(&format!("{:.*}", decimals, x)).to_string();
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// Fixed number of decimals.
pub fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals, x);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
