//! Number parsing and fixed-precision formatting shared by all commands.

use std::f64::consts::PI;

use serde_json::Value;

/// Significant digits in every emitted number.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting: fixed notation for exponents in `[-4, 12)`,
/// scientific otherwise, trailing zeros removed.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Round to [`SIG_DIGITS`] so JSON output matches the CSV precision.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_g(x).parse().unwrap_or(x)
    } else {
        x
    }
}

/// JSON number rounded to [`SIG_DIGITS`]; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Parse a real number written as a decimal, a fraction `a/b`, or a
/// multiple of `pi` such as `pi/4`, `3pi/4`, `-pi`, `0.5*pi`.
pub fn parse_real(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = t.rsplit_once('/') {
        let d = parse_real(den)?;
        if d == 0.0 {
            return Err(format!("division by zero in '{text}'"));
        }
        return Ok(parse_real(num)? / d);
    }
    if let Some(prefix) = t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        let prefix = prefix.trim().trim_end_matches('*').trim();
        let factor = match prefix {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p
                .parse::<f64>()
                .map_err(|_| format!("cannot parse '{text}'"))?,
        };
        return Ok(factor * PI);
    }
    let v: f64 = t.parse().map_err(|_| format!("cannot parse '{text}'"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{text}' is not finite"))
    }
}

/// Comma-separated list of [`parse_real`] values, keeping the original
/// tokens for column labels.
pub fn parse_list(text: &str) -> Result<Vec<(String, f64)>, String> {
    text.split(',')
        .map(|tok| parse_real(tok).map(|v| (tok.trim().to_string(), v)))
        .collect()
}

pub fn parse_fixed<const N: usize>(text: &str, what: &str) -> Result<[f64; N], String> {
    let values: Vec<f64> = parse_list(text)?.into_iter().map(|(_, v)| v).collect();
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("{what} needs {N} comma-separated values, got {}", v.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c_conventions() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_g(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_g(1e-7), "1e-07");
        assert_eq!(fmt_g(1.5e-5), "1.5e-05");
        assert_eq!(fmt_g(123456.0), "123456");
        assert_eq!(fmt_g(1e15), "1e+15");
        assert_eq!(fmt_g(PI), "3.14159265359");
        assert_eq!(fmt_g(f64::NAN), "nan");
    }

    #[test]
    fn parses_angles_and_fractions() {
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_real("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_real("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_real("0.5*pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_real("2/3").unwrap(), 2.0 / 3.0);
        assert_eq!(parse_real(" 0.25 ").unwrap(), 0.25);
        assert!(parse_real("abc").is_err());
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("inf").is_err());
    }

    #[test]
    fn fixed_lists() {
        let w: [f64; 4] = parse_fixed("2/3,0,1/8,5/24", "weights").unwrap();
        assert_eq!(w[3], 5.0 / 24.0);
        assert!(parse_fixed::<2>("1,2,3", "xy").is_err());
        let labels = parse_list("0, pi/4").unwrap();
        assert_eq!(labels[1].0, "pi/4");
    }
}
