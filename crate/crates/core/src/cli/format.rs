/// `v` rounded to `digits` significant digits, `%g` style: fixed notation
/// for exponents in `[-5, digits)`, scientific otherwise, trailing zeros
/// removed.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.139864858277105, 12), "0.139864858277");
        assert_eq!(format_sig(1.5, 12), "1.5");
        assert_eq!(format_sig(-2.0, 12), "-2");
        assert_eq!(format_sig(1.234e-7, 12), "1.234e-7");
        assert_eq!(format_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_sig(0.0, 12), "0");
    }

    #[test]
    fn round_trip_precision() {
        for &v in &[0.049922895918787, 3.7318, 1e-9 / 3.0, 0.999999999999999] {
            let back: f64 = format_sig(v, 12).parse().unwrap();
            assert!(((back - v) / v).abs() <= 5e-12);
        }
    }
}
