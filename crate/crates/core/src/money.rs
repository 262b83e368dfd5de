//! Exact money arithmetic in integer minor units.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An amount of money in minor units (cents): `Money(1250)` is 12.50.
///
/// Every value in the engine — rider values, trip and exit costs, prices,
/// potentials and welfare — is a `Money`, so equilibrium and incentive checks
/// are exact integer comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Money(pub i64);

impl Money {
    /// Zero.
    pub const ZERO: Money = Money(0);
    /// Number of minor units per whole unit.
    pub const SCALE: i64 = 100;

    /// Builds an amount from minor units.
    pub const fn from_minor(minor: i64) -> Self {
        Money(minor)
    }

    /// Builds an amount from whole units (`from_units(3)` is 3.00).
    pub const fn from_units(units: i64) -> Self {
        Money(units * Self::SCALE)
    }

    /// The amount in minor units.
    pub const fn minor(self) -> i64 {
        self.0
    }

    /// The amount in whole units as a float, for reporting only.
    pub fn as_units_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    /// `max(self, 0)`.
    pub fn clamp_nonneg(self) -> Self {
        Money(self.0.max(0))
    }

    /// Rounds a non-negative or negative real amount of whole units half-up to cents.
    pub fn from_units_f64_round(units: f64) -> Self {
        Money((units * Self::SCALE as f64 + 0.5).floor() as i64)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let scale = Self::SCALE as u64;
        write!(f, "{sign}{}.{:02}", abs / scale, abs % scale)
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Neg for Money {
    type Output = Money;
    fn neg(self) -> Money {
        Money(-self.0)
    }
}

impl Mul<i64> for Money {
    type Output = Money;
    fn mul(self, rhs: i64) -> Money {
        Money(self.0 * rhs)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Money {
    fn sub_assign(&mut self, rhs: Money) {
        self.0 -= rhs.0;
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        Money(iter.map(|m| m.0).sum())
    }
}

impl<'a> Sum<&'a Money> for Money {
    fn sum<I: Iterator<Item = &'a Money>>(iter: I) -> Money {
        Money(iter.map(|m| m.0).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_formats_cents() {
        assert_eq!(Money(1250).to_string(), "12.50");
        assert_eq!(Money(-5).to_string(), "-0.05");
        assert_eq!(Money::from_units(7).to_string(), "7.00");
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(Money::from_units_f64_round(1.005_000_1), Money(101));
        assert_eq!(Money::from_units_f64_round(2.344), Money(234));
        assert_eq!(Money::from_units_f64_round(2.345_000_1), Money(235));
    }

    #[test]
    fn arithmetic() {
        let a = Money::from_units(3);
        let b = Money::from_units(5);
        assert_eq!(a - b, Money::from_units(-2));
        assert_eq!((a - b).clamp_nonneg(), Money::ZERO);
        assert_eq!([a, b].iter().sum::<Money>(), Money::from_units(8));
        assert_eq!(a * 4, Money::from_units(12));
    }
}
