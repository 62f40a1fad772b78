//! printf-style `%.15g` formatting used by every emitted CSV and JSON file.

/// Formats like C's `%.15g`.
pub fn g15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    const P: i32 = 15;
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::g15;

    #[test]
    fn matches_c_output() {
        assert_eq!(g15(0.0), "0");
        assert_eq!(g15(1.0), "1");
        assert_eq!(g15(-2.5), "-2.5");
        assert_eq!(g15(0.1), "0.1");
        assert_eq!(g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(g15(1e-5), "1e-05");
        assert_eq!(g15(123456789012345.0), "123456789012345");
        assert_eq!(g15(1234567890123456.0), "1.23456789012346e+15");
        assert_eq!(g15(std::f64::consts::PI * 1e-7), "3.14159265358979e-07");
        assert_eq!(g15(0.0001), "0.0001");
        assert_eq!(g15(f64::INFINITY), "inf");
    }

    #[test]
    fn round_trip_within_print_precision() {
        for &x in &[0.7873, -1.2e-9, 3.0e12, std::f64::consts::E] {
            let y: f64 = g15(x).parse().unwrap();
            assert!((x - y).abs() <= 1e-14 * x.abs());
        }
    }
}
