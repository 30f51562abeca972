use core::fmt;
use core::iter::Sum;
use core::ops::{Add, Neg};
use core::str::FromStr;

const SCALE: i64 = 1_000_000_000;
const FRACTION_DIGITS: usize = 9;

/// Signed decimal sentiment score with nine fractional digits.
///
/// Scores are kept in fixed point so that parsing, summing and printing are
/// exact: `"0.1"` parsed three times and summed prints as `"0.3"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valence(i64);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseValenceError {
    #[error("empty score")]
    Empty,
    #[error("invalid character in score")]
    InvalidDigit,
    #[error("more than {FRACTION_DIGITS} fractional digits")]
    TooPrecise,
    #[error("score out of range")]
    Overflow,
}

impl Valence {
    pub const ZERO: Valence = Valence(0);

    pub const fn from_int(value: i32) -> Self {
        Valence(value as i64 * SCALE)
    }

    /// The value as an integer, if it has no fractional part.
    pub fn as_int(self) -> Option<i64> {
        (self.0 % SCALE == 0).then_some(self.0 / SCALE)
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl Add for Valence {
    type Output = Valence;

    fn add(self, rhs: Valence) -> Valence {
        Valence(self.0.saturating_add(rhs.0))
    }
}

impl Neg for Valence {
    type Output = Valence;

    fn neg(self) -> Valence {
        Valence(-self.0)
    }
}

impl Sum for Valence {
    fn sum<I: Iterator<Item = Valence>>(iter: I) -> Valence {
        iter.fold(Valence::ZERO, Add::add)
    }
}

impl FromStr for Valence {
    type Err = ParseValenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            Some(_) => (false, s),
            None => return Err(ParseValenceError::Empty),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        if int_part.is_empty() || frac_part.is_some_and(str::is_empty) {
            return Err(if body.is_empty() {
                ParseValenceError::Empty
            } else {
                ParseValenceError::InvalidDigit
            });
        }
        let frac = frac_part.unwrap_or("");
        if !int_part
            .bytes()
            .chain(frac.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(ParseValenceError::InvalidDigit);
        }
        if frac.len() > FRACTION_DIGITS {
            return Err(ParseValenceError::TooPrecise);
        }

        let mut units: i64 = 0;
        for b in int_part.bytes() {
            units = units
                .checked_mul(10)
                .and_then(|u| u.checked_add(i64::from(b - b'0')))
                .ok_or(ParseValenceError::Overflow)?;
        }
        units = units
            .checked_mul(SCALE)
            .ok_or(ParseValenceError::Overflow)?;
        let mut place = SCALE / 10;
        for b in frac.bytes() {
            units += i64::from(b - b'0') * place;
            place /= 10;
        }
        Ok(Valence(if negative { -units } else { units }))
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let magnitude = self.0.unsigned_abs();
        let scale = SCALE as u64;
        if self.0 < 0 {
            f.write_str("-")?;
        }
        write!(f, "{}", magnitude / scale)?;
        let mut frac = magnitude % scale;
        if frac != 0 {
            let mut digits = FRACTION_DIGITS;
            while frac.is_multiple_of(10) {
                frac /= 10;
                digits -= 1;
            }
            write!(f, ".{frac:0digits$}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints() {
        for (input, shown) in [
            ("3", "3"),
            ("-2", "-2"),
            ("+4", "4"),
            ("1.20", "1.2"),
            ("-0.5", "-0.5"),
            ("0.000000001", "0.000000001"),
            ("-0", "0"),
        ] {
            assert_eq!(
                input.parse::<Valence>().unwrap().to_string(),
                shown,
                "{input}"
            );
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", "1.", ".5", "1e3", "abc", "1.0000000001", "1 "] {
            assert!(bad.parse::<Valence>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn sums_exactly() {
        let tenth: Valence = "0.1".parse().unwrap();
        let total: Valence = [tenth, tenth, tenth].into_iter().sum();
        assert_eq!(total.to_string(), "0.3");
        assert_eq!(
            Valence::from_int(3) + Valence::from_int(-5),
            Valence::from_int(-2)
        );
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(units in -1_000_000_000_000_000i64..1_000_000_000_000_000) {
            let v = Valence(units);
            prop_assert_eq!(v.to_string().parse::<Valence>().unwrap(), v);
        }
    }
}
