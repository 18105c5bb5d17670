use std::fmt;
use std::iter::Product;
use std::ops::{Mul, MulAssign, Neg};
use std::str::FromStr;

/// An element of the sign group `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `+1` for non-negative input, `-1` otherwise.
    pub fn of(value: i64) -> Sign {
        if value < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl<'a> Product<&'a Sign> for Sign {
    fn product<I: Iterator<Item = &'a Sign>>(iter: I) -> Sign {
        iter.copied().product()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected `+` or `-`, found `{0}`")]
pub struct ParseSignError(pub String);

impl FromStr for Sign {
    type Err = ParseSignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "+1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(ParseSignError(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        for a in [Sign::Plus, Sign::Minus] {
            assert_eq!(a * Sign::Plus, a);
            assert_eq!(a * a, Sign::Plus);
            for b in [Sign::Plus, Sign::Minus] {
                assert_eq!((a * b).to_i8(), a.to_i8() * b.to_i8());
            }
        }
        assert_eq!(-Sign::Plus, Sign::Minus);
    }

    #[test]
    fn product_of_empty_is_plus() {
        let empty: [Sign; 0] = [];
        assert_eq!(empty.iter().product::<Sign>(), Sign::Plus);
        assert_eq!(
            [Sign::Minus, Sign::Minus, Sign::Minus].iter().product::<Sign>(),
            Sign::Minus
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("+".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("x".parse::<Sign>().is_err());
        assert_eq!(Sign::Minus.to_string(), "-");
    }
}
