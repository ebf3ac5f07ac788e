//! Radix-generic arbitrary-precision naturals.
//!
//! A [`PackedNat`] stores its digits least-significant first, so the digit
//! at position `k` weighs `radix^k` and shifting by `d` digits moves slot `i`
//! of width `w` to slot `i + d / w` whenever `w` divides `d`. The value zero
//! is the empty digit sequence.

mod counter;
mod digits;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use counter::OpCounter;

/// Digit count below which [`PackedNat::mul`] uses schoolbook multiplication.
pub const DEFAULT_KARATSUBA_THRESHOLD: usize = 32;

/// A positional base in `2..=2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Radix(u64);

impl Radix {
    pub const MAX: u64 = 1 << 32;
    pub const DECIMAL: Radix = Radix(10);
    pub const POW2_16: Radix = Radix(1 << 16);
    pub const POW2_32: Radix = Radix(1 << 32);

    pub fn new(value: u64) -> Result<Self> {
        if (2..=Self::MAX).contains(&value) {
            Ok(Radix(value))
        } else {
            Err(Error::InvalidRadix(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `(t / radix, t % radix)`.
    pub(crate) fn divrem(self, t: u128) -> (u128, u32) {
        let r = self.0;
        if r.is_power_of_two() {
            let bits = r.trailing_zeros();
            (t >> bits, (t as u64 & (r - 1)) as u32)
        } else if t <= u64::MAX as u128 {
            let t = t as u64;
            ((t / r) as u128, (t % r) as u32)
        } else {
            (t / r as u128, (t % r as u128) as u32)
        }
    }
}

impl TryFrom<u64> for Radix {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Radix::new(value)
    }
}

impl From<Radix> for u64 {
    fn from(r: Radix) -> u64 {
        r.0
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An arbitrary-precision natural in a fixed radix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedNat {
    radix: Radix,
    digits: Vec<u32>,
}

#[allow(clippy::len_without_is_empty)]
impl PackedNat {
    pub fn zero(radix: Radix) -> Self {
        PackedNat { radix, digits: Vec::new() }
    }

    pub fn from_natural(value: u128, radix: Radix) -> Self {
        let mut digits = Vec::new();
        let mut v = value;
        while v != 0 {
            let (q, d) = radix.divrem(v);
            digits.push(d);
            v = q;
        }
        PackedNat { radix, digits }
    }

    /// Builds a value from least-significant-first digits, normalizing away
    /// high zero digits.
    pub fn from_digits(radix: Radix, mut digits: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d as u64 >= radix.get()) {
            return Err(Error::InvalidDigit { digit: bad as u64, radix: radix.get() });
        }
        digits::trim(&mut digits);
        Ok(PackedNat { radix, digits })
    }

    pub(crate) fn from_raw(radix: Radix, mut digits: Vec<u32>) -> Self {
        debug_assert!(digits.iter().all(|&d| (d as u64) < radix.get()));
        digits::trim(&mut digits);
        PackedNat { radix, digits }
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    /// Least-significant-first digits with no high zeros.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Number of significant digits; zero has none.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn to_u128(&self) -> Option<u128> {
        let r = self.radix.get() as u128;
        self.digits.iter().rev().try_fold(0u128, |acc, &d| acc.checked_mul(r)?.checked_add(d as u128))
    }

    fn check_radix(&self, other: &PackedNat) -> Result<()> {
        if self.radix == other.radix {
            Ok(())
        } else {
            Err(Error::RadixMismatch { left: self.radix.get(), right: other.radix.get() })
        }
    }

    /// Counted addition: one `big_add`.
    pub fn add(&self, other: &PackedNat, ctr: &mut OpCounter) -> Result<PackedNat> {
        self.check_radix(other)?;
        ctr.big_add += 1;
        Ok(PackedNat::from_raw(self.radix, digits::add(&self.digits, &other.digits, self.radix)))
    }

    /// Counted multiplication: one `big_mul`, whatever the internal recursion.
    pub fn mul(&self, other: &PackedNat, ctr: &mut OpCounter) -> Result<PackedNat> {
        self.mul_with_threshold(other, DEFAULT_KARATSUBA_THRESHOLD, ctr)
    }

    pub fn mul_with_threshold(&self, other: &PackedNat, threshold: usize, ctr: &mut OpCounter) -> Result<PackedNat> {
        self.check_radix(other)?;
        ctr.big_mul += 1;
        Ok(PackedNat::from_raw(self.radix, digits::karatsuba(&self.digits, &other.digits, self.radix, threshold)))
    }

    /// `self * radix^d`: `d` zero digits at the low end. Counts one `shift`.
    pub fn shift_digits(&self, d: usize, ctr: &mut OpCounter) -> PackedNat {
        ctr.shift += 1;
        if self.is_zero() {
            return self.clone();
        }
        let mut digits = Vec::with_capacity(self.digits.len() + d);
        digits.resize(d, 0);
        digits.extend_from_slice(&self.digits);
        PackedNat { radix: self.radix, digits }
    }

    /// Value of digits `[index * width, (index + 1) * width)`; digits past
    /// the stored length read as zero.
    pub fn slot(&self, index: usize, width: usize) -> PackedNat {
        let start = index.saturating_mul(width).min(self.digits.len());
        let end = index.saturating_add(1).saturating_mul(width).min(self.digits.len());
        PackedNat::from_raw(self.radix, self.digits[start..end].to_vec())
    }

    /// Most-significant-first rendering, zero-padded to `min_digits` digits.
    ///
    /// In radix 10 this is the ordinary decimal string. Other radices render
    /// each digit in decimal, separated by `:`.
    pub fn to_digit_string(&self, min_digits: usize) -> String {
        let pad = min_digits.saturating_sub(self.digits.len());
        let ms_first = std::iter::repeat_n(0u32, pad).chain(self.digits.iter().rev().copied());
        if self.radix == Radix::DECIMAL {
            ms_first.map(|d| char::from(b'0' + d as u8)).collect()
        } else {
            ms_first.map(|d| d.to_string()).collect::<Vec<_>>().join(":")
        }
    }

    /// Value comparison; only defined within one radix.
    pub fn compare(&self, other: &PackedNat) -> Result<Ordering> {
        self.check_radix(other)?;
        Ok(digits::cmp(&self.digits, &other.digits))
    }
}

impl PartialOrd for PackedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Display for PackedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string(1))
    }
}

/// Uncounted schoolbook product; the reference the Karatsuba path is checked against.
pub fn schoolbook_mul(a: &PackedNat, b: &PackedNat) -> Result<PackedNat> {
    a.check_radix(b)?;
    Ok(PackedNat::from_raw(a.radix, digits::schoolbook(&a.digits, &b.digits, a.radix)))
}

/// Uncounted Karatsuba product with an explicit schoolbook cutoff.
pub fn karatsuba_mul(a: &PackedNat, b: &PackedNat, threshold: usize) -> Result<PackedNat> {
    a.check_radix(b)?;
    Ok(PackedNat::from_raw(a.radix, digits::karatsuba(&a.digits, &b.digits, a.radix, threshold)))
}
