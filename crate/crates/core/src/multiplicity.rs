//! Edge counts over the extended naturals `{0, 1, 2, ..., ω}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Number of parallel edges between two vertices.
///
/// `Omega` stands for countably many edges and absorbs every positive
/// count under addition and multiplication. The derived order puts every
/// finite count below `Omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

pub use Multiplicity::{Finite, Omega};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid multiplicity token `{0}` (expected a nonnegative integer, `*` or `inf`)")]
pub struct ParseMultiplicityError(pub String);

impl Multiplicity {
    pub const ZERO: Multiplicity = Finite(0);
    pub const ONE: Multiplicity = Finite(1);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_positive(self) -> bool {
        !self.is_zero()
    }

    pub fn is_omega(self) -> bool {
        self == Omega
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(k) => Some(k),
            Omega => None,
        }
    }

    /// `self - k` for a finite `k <= self`; `ω - k = ω`.
    pub fn checked_sub_finite(self, k: u64) -> Option<Multiplicity> {
        match self {
            Omega => Some(Omega),
            Finite(m) => m.checked_sub(k).map(Finite),
        }
    }

    /// Collapses every positive count to `ω`.
    pub fn amplified(self) -> Multiplicity {
        if self.is_zero() {
            Self::ZERO
        } else {
            Omega
        }
    }
}

impl Default for Multiplicity {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<u64> for Multiplicity {
    fn from(k: u64) -> Self {
        Finite(k)
    }
}

/// Finite overflow panics, as with primitive integer arithmetic.
impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a.checked_add(b).expect("multiplicity overflow")),
            _ => Omega,
        }
    }
}

impl Mul for Multiplicity {
    type Output = Multiplicity;

    fn mul(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Finite(0), _) | (_, Finite(0)) => Self::ZERO,
            (Finite(a), Finite(b)) => Finite(a.checked_mul(b).expect("multiplicity overflow")),
            _ => Omega,
        }
    }
}

impl std::iter::Sum for Multiplicity {
    fn sum<I: Iterator<Item = Multiplicity>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl PartialEq<u64> for Multiplicity {
    fn eq(&self, other: &u64) -> bool {
        *self == Finite(*other)
    }
}

impl PartialOrd<u64> for Multiplicity {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        self.partial_cmp(&Finite(*other))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(k) => write!(f, "{k}"),
            Omega => f.write_str("*"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = ParseMultiplicityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "*" | "inf" | "ω" => Ok(Omega),
            _ if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => s
                .parse::<u64>()
                .map(Finite)
                .map_err(|_| ParseMultiplicityError(s.to_owned())),
            _ => Err(ParseMultiplicityError(s.to_owned())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_total_with_omega_on_top() {
        let mut v = vec![Omega, Finite(3), Finite(0), Finite(1), Omega];
        v.sort();
        assert_eq!(v, vec![Finite(0), Finite(1), Finite(3), Omega, Omega]);
        assert!(Finite(u64::MAX) < Omega);
    }

    #[test]
    fn saturating_arithmetic() {
        assert_eq!(Omega + Finite(0), Omega);
        assert_eq!(Finite(2) + Omega, Omega);
        assert_eq!(Omega * Finite(5), Omega);
        assert_eq!(Omega * Finite(0), Finite(0));
        assert_eq!(Finite(0) * Omega, Finite(0));
        assert_eq!(Finite(3) * Finite(4), Finite(12));
        assert_eq!(Omega.checked_sub_finite(7), Some(Omega));
        assert_eq!(Finite(2).checked_sub_finite(3), None);
        assert_eq!(Finite(2).checked_sub_finite(2), Some(Finite(0)));
    }

    #[test]
    fn tokens() {
        assert_eq!("*".parse::<Multiplicity>().unwrap(), Omega);
        assert_eq!("inf".parse::<Multiplicity>().unwrap(), Omega);
        assert_eq!("12".parse::<Multiplicity>().unwrap(), Finite(12));
        assert!("-1".parse::<Multiplicity>().is_err());
        assert!("".parse::<Multiplicity>().is_err());
        assert!("1.5".parse::<Multiplicity>().is_err());
        assert_eq!(Omega.to_string(), "*");
        assert_eq!(Finite(7).to_string(), "7");
    }
}
