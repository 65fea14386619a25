//! Lexical utilities shared by the similarity, featurization, and embedding
//! layers: tokenization with numeral canonicalization, extraction of
//! calculation results, and arithmetic consistency checks.

use std::sync::OnceLock;

use num_rational::BigRational;
use regex::Regex;

use crate::parse_rational;

/// Canonical display form for a parsed numeral: reduced fraction, or the
/// integer itself when the denominator is one.
pub fn canonical_number(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lowercased alphanumeric tokens with punctuation stripped and numerals
/// canonicalized, so `"40"` and `"40.0"` produce the same token.
pub fn tokenize(text: &str) -> Vec<String> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r"[+-]?\d+(?:\.\d+)?(?:/\d+)?|[a-zA-Z]+").expect("static regex")
    });
    re.find_iter(text)
        .map(|m| {
            let tok = m.as_str();
            match parse_rational(tok) {
                Some(r) => canonical_number(&r),
                None => tok.to_ascii_lowercase(),
            }
        })
        .collect()
}

/// The right-hand values of every `= value` occurrence in a step, as exact
/// rationals. Unparseable values are skipped.
pub fn equation_results(text: &str) -> Vec<BigRational> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r"=\s*\$?\s*([+-]?\d+(?:\.\d+)?(?:/\d+)?)").expect("static regex")
    });
    re.captures_iter(text)
        .filter_map(|c| parse_rational(&c[1]))
        .collect()
}

/// A binary calculation `a op b = c` found in a step.
#[derive(Debug, Clone, PartialEq)]
pub struct Calculation {
    pub lhs: i64,
    pub op: char,
    pub rhs: i64,
    pub result: i64,
}

impl Calculation {
    pub fn holds(&self) -> bool {
        let expected = match self.op {
            '+' => self.lhs.checked_add(self.rhs),
            '-' => self.lhs.checked_sub(self.rhs),
            '*' | 'x' | '×' | '·' => self.lhs.checked_mul(self.rhs),
            _ => None,
        };
        expected == Some(self.result)
    }
}

/// Parse every integer calculation of the form `a op b = c` in a step.
pub fn extract_calculations(text: &str) -> Vec<Calculation> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r"(-?\d+)\s*([+\-*x×·])\s*(-?\d+)\s*=\s*(-?\d+)").expect("static regex")
    });
    re.captures_iter(text)
        .filter_map(|c| {
            Some(Calculation {
                lhs: c[1].parse().ok()?,
                op: c[2].chars().next()?,
                rhs: c[3].parse().ok()?,
                result: c[4].parse().ok()?,
            })
        })
        .collect()
}

/// `Some(true)` when every parsed calculation in the step holds,
/// `Some(false)` when at least one is wrong, `None` when the step contains
/// no parseable calculation.
pub fn arithmetic_consistency(text: &str) -> Option<bool> {
    let calcs = extract_calculations(text);
    if calcs.is_empty() {
        None
    } else {
        Some(calcs.iter().all(Calculation::holds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_canonicalize_numerals() {
        assert_eq!(tokenize("Max attended 40.0 courses"), ["max", "attended", "40", "courses"]);
        assert_eq!(tokenize("40"), tokenize("40.0"));
    }

    #[test]
    fn equation_results_extracts_rhs_values() {
        let vals = equation_results("24 - 6 = 18");
        assert_eq!(vals.len(), 1);
        assert_eq!(canonical_number(&vals[0]), "18");
        let vals = equation_results("a=2, b=3, a·b = 6");
        assert_eq!(
            vals.iter().map(canonical_number).collect::<Vec<_>>(),
            ["2", "3", "6"]
        );
        assert!(equation_results("no math here").is_empty());
    }

    #[test]
    fn consistency_flags_wrong_arithmetic() {
        assert_eq!(arithmetic_consistency("apply: 24 - 6 = 18"), Some(true));
        assert_eq!(arithmetic_consistency("apply: 24 - 6 = 16"), Some(false));
        assert_eq!(arithmetic_consistency("just words"), None);
    }
}
