use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow::Pow, Zero};

/// Parse a canonical numeric answer as an exact rational.
///
/// Accepts integers (`-12`), decimals (`4.0`, `0.5`), and fractions
/// (`1/2`). Anything else returns `None`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let signed = |r: BigRational| if sign < 0 { -r } else { r };

    if let Some((num, den)) = body.split_once('/') {
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(signed(BigRational::new(num, den)));
    }
    if let Some((int_part, frac_part)) = body.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let int: BigInt = int_part.parse().ok()?;
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Some(signed(BigRational::from(int) + BigRational::new(frac, scale)));
    }
    let int: BigInt = body.parse().ok()?;
    Some(signed(BigRational::from(int)))
}

/// Answer equivalence: exact rational comparison when both sides parse as
/// numbers, otherwise case-insensitive comparison of the trimmed strings.
pub fn answers_equal(a: &str, b: &str) -> bool {
    match (parse_rational(a), parse_rational(b)) {
        (Some(ra), Some(rb)) => ra == rb,
        _ => a.trim().eq_ignore_ascii_case(b.trim()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_forms_canonicalize() {
        assert!(answers_equal("4", "4.0"));
        assert!(answers_equal("1/2", "0.5"));
        assert!(answers_equal("-3", " -3 "));
        assert!(answers_equal("2/4", "1/2"));
    }

    #[test]
    fn distinct_numbers_differ() {
        assert!(!answers_equal("19", "18"));
        assert!(!answers_equal("0.1", "1/100"));
    }

    #[test]
    fn non_numeric_falls_back_to_string_equality() {
        assert!(answers_equal("Undefined", "undefined"));
        assert!(!answers_equal("undefined", "10"));
    }

    #[test]
    fn division_by_zero_does_not_parse() {
        assert!(parse_rational("1/0").is_none());
        // falls back to string equality
        assert!(answers_equal("1/0", "1/0"));
        assert!(!answers_equal("1/0", "0"));
    }
}
