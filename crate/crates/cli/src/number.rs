//! Exact numbers in files: integers, decimal text and `num/den` strings.

use bodycad_core::geometry::Scalar;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

/// Parse `"-12"`, `"3/4"`, `"0.125"`, `"1.5e-3"` exactly.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Scalar::new(num, den));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Scalar> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Scalar::from_integer(all * num_traits::pow(ten, shift as usize))
    } else {
        Scalar::new(all, num_traits::pow(ten, (-shift) as usize))
    };
    Some(if negative { -value } else { value })
}

/// A JSON number or string as an exact rational. Floats go through their
/// shortest round-trip decimal text, never through the binary expansion.
pub fn from_json(value: &Value) -> Option<Scalar> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(Scalar::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Some(Scalar::from_integer(u.into()))
            } else {
                parse_decimal(&n.to_string())
            }
        }
        Value::String(s) => parse_rational(s),
        _ => None,
    }
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// JSON integer when it fits in an i64, `"n/d"` string otherwise.
pub fn to_json(x: &Scalar) -> Value {
    if x.denom().is_one() {
        if let Ok(i) = i64::try_from(x.numer()) {
            return Value::from(i);
        }
    }
    Value::String(format_rational(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bodycad_core::geometry::{int, ratio};
    use serde_json::json;

    #[test]
    fn text_forms() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("0.1"), Some(ratio(1, 10)));
        assert_eq!(parse_rational("-2.50"), Some(ratio(-5, 2)));
        assert_eq!(parse_rational("1.5e-3"), Some(ratio(3, 2000)));
        assert_eq!(parse_rational("2E2"), Some(int(200)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("1.2.3"), None);
    }

    #[test]
    fn json_forms() {
        assert_eq!(from_json(&json!(7)), Some(int(7)));
        assert_eq!(from_json(&json!(0.1)), Some(ratio(1, 10)));
        assert_eq!(from_json(&json!(-0.375)), Some(ratio(-3, 8)));
        assert_eq!(from_json(&json!("22/7")), Some(ratio(22, 7)));
        assert_eq!(from_json(&json!(null)), None);
    }

    #[test]
    fn formatting_round_trips() {
        for x in [int(0), int(-5), ratio(7, 3), ratio(-1, 9)] {
            assert_eq!(parse_rational(&format_rational(&x)), Some(x.clone()));
            assert_eq!(from_json(&to_json(&x)), Some(x));
        }
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
    }
}
