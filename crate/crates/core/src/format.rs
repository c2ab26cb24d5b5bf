//! Fixed-precision number formatting for tables and CSV.

/// Significant digits used for printed floats.
pub const SIG_DIGITS: usize = 12;

/// `x` with [`SIG_DIGITS`] significant digits, in the style of C's `%.12g`.
pub fn sig(x: f64) -> String {
    sig_digits(x, SIG_DIGITS)
}

/// `%.{digits}g`: fixed notation for moderate exponents, scientific
/// otherwise, trailing zeros dropped.
pub fn sig_digits(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-2.0), "-2");
        assert_eq!(sig(0.4), "0.4");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig(-0.6000000000001), "-0.6");
        assert_eq!(sig(123456789012345.0), "1.23456789012e+14");
        assert_eq!(sig(1.5e-7), "1.5e-07");
        assert_eq!(sig(0.0001234), "0.0001234");
        assert_eq!(sig(999999999999.9), "1e+12");
        assert_eq!(sig_digits(2.0 / 3.0, 3), "0.667");
    }
}
