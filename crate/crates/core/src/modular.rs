//! Arithmetic over `Z_d`.

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest qudit dimension accepted by [`Dimension::new`].
pub const DEFAULT_MAX_DIMENSION: usize = 16;

/// The level count `d` of every qudit in a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "usize", into = "usize"))]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        Self::with_max(d, DEFAULT_MAX_DIMENSION)
    }

    pub fn with_max(d: usize, max: usize) -> Result<Self> {
        if d < 2 || d > max {
            return Err(Error::InvalidDimension { d, max });
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// `d^n`, or `None` on overflow.
    pub fn pow(self, n: usize) -> Option<usize> {
        let mut acc = 1usize;
        for _ in 0..n {
            acc = acc.checked_mul(self.0)?;
        }
        Some(acc)
    }

    /// All residues `0..d` in order.
    pub fn residues(self) -> impl Iterator<Item = ModInt> + Clone {
        (0..self.0).map(move |value| ModInt { value, dim: self })
    }

    pub fn zero(self) -> ModInt {
        ModInt { value: 0, dim: self }
    }

    /// Reduces an arbitrary integer into `[0, d)`.
    pub fn wrap(self, value: i64) -> ModInt {
        let d = self.0 as i64;
        ModInt {
            value: value.rem_euclid(d) as usize,
            dim: self,
        }
    }

    pub(crate) fn check(self, other: Dimension) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: usize,
    dim: Dimension,
}

impl ModInt {
    pub fn new(value: usize, dim: Dimension) -> Result<Self> {
        if value >= dim.get() {
            return Err(Error::OutOfRange {
                value,
                d: dim.get(),
            });
        }
        Ok(ModInt { value, dim })
    }

    #[inline]
    pub fn value(self) -> usize {
        self.value
    }

    #[inline]
    pub fn dim(self) -> Dimension {
        self.dim
    }

    pub fn checked_add(self, rhs: ModInt) -> Result<ModInt> {
        self.dim.check(rhs.dim)?;
        Ok(ModInt {
            value: (self.value + rhs.value) % self.dim.get(),
            dim: self.dim,
        })
    }

    pub fn checked_sub(self, rhs: ModInt) -> Result<ModInt> {
        self.dim.check(rhs.dim)?;
        let d = self.dim.get();
        Ok(ModInt {
            value: (self.value + d - rhs.value) % d,
            dim: self.dim,
        })
    }

    /// `k·self` for a plain integer `k`.
    pub fn scale(self, k: usize) -> ModInt {
        let d = self.dim.get();
        ModInt {
            value: ((k % d) * self.value) % d,
            dim: self.dim,
        }
    }
}

/// `a ⊕ b`.
pub fn mod_add(a: ModInt, b: ModInt) -> Result<ModInt> {
    a.checked_add(b)
}

/// `a ⊖ b`.
pub fn mod_sub(a: ModInt, b: ModInt) -> Result<ModInt> {
    a.checked_sub(b)
}

// The operator forms panic on mismatched dimensions; use `checked_*` where operands come from
// different sources.
impl Add for ModInt {
    type Output = ModInt;

    fn add(self, rhs: ModInt) -> ModInt {
        self.checked_add(rhs).expect("ModInt dimensions differ")
    }
}

impl Sub for ModInt {
    type Output = ModInt;

    fn sub(self, rhs: ModInt) -> ModInt {
        self.checked_sub(rhs).expect("ModInt dimensions differ")
    }
}

impl Neg for ModInt {
    type Output = ModInt;

    fn neg(self) -> ModInt {
        self.dim.zero() - self
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ModInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value as u64)
    }
}

/// `e^{2πik/d}`. The exponent is reduced mod `d` first so large `k` stays exact.
pub fn root_of_unity(d: Dimension, k: i64) -> Complex64 {
    let d = d.get() as i64;
    let k = k.rem_euclid(d);
    match (4 * k).checked_rem(d) {
        // Quarter turns are returned exactly.
        Some(0) => match (4 * k) / d {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        _ => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64),
    }
}

/// Precomputed powers `ζ^0, …, ζ^{d-1}`.
#[derive(Debug, Clone)]
pub(crate) struct RootTable {
    powers: alloc::vec::Vec<Complex64>,
}

impl RootTable {
    pub(crate) fn new(d: Dimension) -> Self {
        RootTable {
            powers: (0..d.get() as i64).map(|k| root_of_unity(d, k)).collect(),
        }
    }

    /// `ζ^k` for any integer `k`.
    #[inline]
    pub(crate) fn pow(&self, k: i64) -> Complex64 {
        self.powers[k.rem_euclid(self.powers.len() as i64) as usize]
    }
}
