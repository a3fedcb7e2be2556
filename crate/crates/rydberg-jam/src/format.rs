//! Number formatting for CSV output.

/// Significant digits of every floating-point field.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// `%.15g`-style rendering: fixed notation for decimal exponents in
/// `[-5, 15)`, scientific otherwise, trailing zeros removed.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// [`sig`], or the empty string for `None`.
pub fn sig_opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig(0.4 * std::f64::consts::LN_2), "0.277258872223978");
        assert_eq!(sig(0.5), "0.5");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-2.0), "-2");
        assert_eq!(sig(96.0), "96");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333333");
    }

    #[test]
    fn scientific_range() {
        assert_eq!(sig(1.5e-7), "1.5e-7");
        assert_eq!(sig(2.0e20), "2e20");
        assert_eq!(sig(1.0e-5), "0.00001");
        assert_eq!(sig(f64::NAN), "nan");
    }
}
