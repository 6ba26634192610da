//! Digit text encodings.
//!
//! Bases up to 36 accept a compact form, one character per digit (`0-9`
//! then `a-z`, case-insensitive). Any base accepts comma-separated decimal
//! symbol values, e.g. `2,3` or `40,0,17`. Input containing a comma, or any
//! input for a base above 36, is read as the decimal form. The empty string
//! is the empty digit string.

use divdfa_core::DigitString;

use crate::error::CliError;

pub fn parse_digits(text: &str, base: u64) -> Result<DigitString, CliError> {
    let text = text.trim();
    let digits = if text.is_empty() {
        Vec::new()
    } else if base > 36 || text.contains(',') {
        text.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("invalid digit {part:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(36)
                    .map(u64::from)
                    .ok_or_else(|| CliError::Usage(format!("invalid digit character {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(DigitString::new(digits, base)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_and_decimal_forms() {
        assert_eq!(parse_digits("110", 2).unwrap().digits(), &[1, 1, 0]);
        assert_eq!(parse_digits("fF", 16).unwrap().digits(), &[15, 15]);
        assert_eq!(parse_digits("2,3", 6).unwrap().digits(), &[2, 3]);
        assert_eq!(parse_digits("12", 40).unwrap().digits(), &[12]);
        assert_eq!(parse_digits("39, 0", 40).unwrap().digits(), &[39, 0]);
        assert!(parse_digits("", 2).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(matches!(parse_digits("12", 2), Err(CliError::Core(_))));
        assert!(matches!(parse_digits("1x!", 36), Err(CliError::Usage(_))));
        assert!(matches!(parse_digits("1,,2", 5), Err(CliError::Usage(_))));
    }
}
