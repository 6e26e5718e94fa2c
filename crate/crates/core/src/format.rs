//! Fixed 12-significant-digit rendering shared by the JSON and CSV writers.

use serde::Serializer;

pub const SIG_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn round_sig(value: f64) -> f64 {
    if value == 0.0 || !value.is_finite() {
        return value;
    }
    format!("{:.*e}", SIG_DIGITS - 1, value)
        .parse()
        .expect("formatted float parses")
}

/// `%.12g`-style text: fixed notation for decimal exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros removed.
pub fn fmt_sig(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, value))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// serde helper: writes a float rounded to 12 significant digits.
pub fn serialize_sig<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*value))
}
