//! Exact parsing and printing of rational parameters. Accepts "3/25",
//! integers, and finite decimals; everything is converted to a reduced
//! `Rational` with no floating point involved.

use anagram_core::Rational;

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad(text))?;
        let den: i64 = den.trim().parse().map_err(|_| bad(text))?;
        if den == 0 {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits == 0 || digits > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(text));
        }
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad(text))?
        };
        let frac: i64 = frac.parse().map_err(|_| bad(text))?;
        let scale = 10i64.pow(digits);
        let num = int.abs() * scale + frac;
        let num = if negative || int < 0 { -num } else { num };
        return Ok(Rational::new(num, scale));
    }
    let num: i64 = text.parse().map_err(|_| bad(text))?;
    Ok(Rational::new(num, 1))
}

pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn bad(text: &str) -> String {
    format!("cannot parse {text:?} as a rational (use a/b, an integer, or a finite decimal)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("2").unwrap(), Rational::new(2, 1));
        assert_eq!(parse_rational("3/25").unwrap(), Rational::new(3, 25));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new(-1, 4));
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn round_trip() {
        assert_eq!(format_rational(Rational::new(3, 25)), "3/25");
        assert_eq!(parse_rational(&format_rational(Rational::new(7, 3))).unwrap(), Rational::new(7, 3));
    }
}
