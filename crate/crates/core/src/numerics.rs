//! Digital-root algebra and `6m`-sided wheel residues.
//!
//! A digital root is the iterated digit sum of a positive integer. It only
//! depends on `n mod 9`, which is what every function here uses; the digit
//! summing form lives in the tests as the independent check.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Iterated digit sum of a positive integer, always in `1..=9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitalRoot(u8);

impl DigitalRoot {
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain(
                "digital root is defined for positive integers only".into(),
            ));
        }
        Ok(DigitalRoot(1 + ((n - 1) % 9) as u8))
    }

    /// Wraps a value already known to lie in `1..=9`.
    pub fn from_value(v: u8) -> Result<Self> {
        if (1..=9).contains(&v) {
            Ok(DigitalRoot(v))
        } else {
            Err(Error::Domain(format!("{v} is not a digital root (1..=9)")))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn triplet(self) -> TripletClass {
        match self.0 % 3 {
            0 => TripletClass::T369,
            1 => TripletClass::T147,
            _ => TripletClass::T258,
        }
    }

    /// True for 3, 6 and 9, the roots of multiples of three.
    pub fn is_369(self) -> bool {
        self.0.is_multiple_of(3)
    }
}

impl fmt::Display for DigitalRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for DigitalRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

/// The three digital-root families `[3,6,9]`, `[1,4,7]`, `[2,5,8]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TripletClass {
    T369,
    T147,
    T258,
}

pub fn digital_root(n: u64) -> Result<DigitalRoot> {
    DigitalRoot::of(n)
}

pub fn triplet_class(n: u64) -> Result<TripletClass> {
    Ok(digital_root(n)?.triplet())
}

/// Digital root of `a + b`, computed from the roots of the operands.
pub fn dr_add(a: u64, b: u64) -> Result<DigitalRoot> {
    let (da, db) = (digital_root(a)?, digital_root(b)?);
    digital_root(u64::from(da.0) + u64::from(db.0))
}

/// Digital root of `a * b`, computed from the roots of the operands.
pub fn dr_mul(a: u64, b: u64) -> Result<DigitalRoot> {
    let (da, db) = (digital_root(a)?, digital_root(b)?);
    digital_root(u64::from(da.0) * u64::from(db.0))
}

/// Digital roots of the Fibonacci sequence over one full period.
///
/// Runs the recurrence on digital roots directly and stops at the first
/// repeat of the starting state `(1, 1)`.
pub fn fibonacci_dr_cycle() -> Vec<DigitalRoot> {
    let start = (DigitalRoot(1), DigitalRoot(1));
    let mut state = start;
    let mut cycle = Vec::new();
    loop {
        cycle.push(state.0);
        let next = DigitalRoot(1 + ((state.0 .0 + state.1 .0 - 1) % 9));
        state = (state.1, next);
        if state == start {
            return cycle;
        }
    }
}

/// An `s`-sided wheel (`s = 6m`) with a number of concentric rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WheelConfig {
    sides: u64,
    rings: u64,
}

impl WheelConfig {
    pub fn new(sides: u64, rings: u64) -> Result<Self> {
        check_sides(sides)?;
        if rings == 0 {
            return Err(Error::Config("a wheel needs at least one ring".into()));
        }
        Ok(WheelConfig { sides, rings })
    }

    /// Smallest wheel holding `1..=limit`, i.e. `ceil(limit / sides)` rings.
    pub fn covering(sides: u64, limit: u64) -> Result<Self> {
        check_sides(sides)?;
        WheelConfig::new(sides, limit.div_ceil(sides).max(1))
    }

    pub fn sides(&self) -> u64 {
        self.sides
    }

    pub fn rings(&self) -> u64 {
        self.rings
    }

    pub fn modulus_of(&self, n: u64) -> Result<u64> {
        modulus_of(n, self)
    }

    pub fn position(&self, n: u64) -> Result<WheelPosition> {
        Ok(WheelPosition {
            n,
            modulus: modulus_of(n, self)?,
            ring: (n - 1) / self.sides + 1,
        })
    }

    pub fn prime_moduli(&self) -> Vec<u64> {
        moduli_6k_pm1(self.sides)
    }

    pub fn admissible_moduli(&self) -> Vec<u64> {
        (1..=self.sides)
            .filter(|&r| gcd(r, self.sides) == 1)
            .collect()
    }

    pub fn is_prime_modulus(&self, modulus: u64) -> bool {
        matches!(modulus % 6, 1 | 5) && modulus <= self.sides
    }
}

/// Placement of `n` on a wheel: spoke (`modulus`) and ring, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WheelPosition {
    pub n: u64,
    pub modulus: u64,
    pub ring: u64,
}

fn check_sides(sides: u64) -> Result<()> {
    if sides == 0 || !sides.is_multiple_of(6) {
        return Err(Error::Config(format!(
            "wheel sides must be a positive multiple of 6, got {sides}"
        )));
    }
    Ok(())
}

/// Spoke of `n`: `((n - 1) mod sides) + 1`, so `sides` itself sits on the last spoke.
pub fn modulus_of(n: u64, wheel: &WheelConfig) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("wheel positions start at 1".into()));
    }
    Ok((n - 1) % wheel.sides + 1)
}

/// Spokes `r` in `1..=sides` with `r = 6k +- 1`.
pub fn prime_moduli(sides: u64) -> Result<Vec<u64>> {
    check_sides(sides)?;
    Ok(moduli_6k_pm1(sides))
}

/// Spokes coprime to `sides`; a subset of [`prime_moduli`], equal to it for 6, 12 and 24.
pub fn admissible_moduli(sides: u64) -> Result<Vec<u64>> {
    check_sides(sides)?;
    Ok((1..=sides).filter(|&r| gcd(r, sides) == 1).collect())
}

fn moduli_6k_pm1(sides: u64) -> Vec<u64> {
    (1..=sides).filter(|r| matches!(r % 6, 1 | 5)).collect()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
