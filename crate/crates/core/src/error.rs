use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The bound a slot layout failed to satisfy, kept in its factored form so
/// that the message can name it even when the product does not fit a `u128`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotBound {
    pub terms: u128,
    pub lhs_max: u128,
    pub rhs_max: u128,
}

impl SlotBound {
    pub fn product(&self) -> Option<u128> {
        self.terms.checked_mul(self.lhs_max)?.checked_mul(self.rhs_max)
    }
}

impl fmt::Display for SlotBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}*{}", self.terms, self.lhs_max, self.rhs_max)?;
        if let Some(v) = self.product() {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix {0} out of range (must be 2..=2^32)")]
    InvalidRadix(u64),

    #[error("digit {digit} is not below radix {radix}")]
    InvalidDigit { digit: u64, radix: u64 },

    #[error("radix mismatch: {left} vs {right}")]
    RadixMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "slot overflow: radix {radix}^{width} does not exceed {bound}; \
         packing would carry between slots (minimum width is {required})"
    )]
    SlotOverflow { radix: u64, width: usize, required: usize, bound: SlotBound },

    #[error("entry {value} does not fit a {width}-digit slot in radix {radix}")]
    EntryTooWide { value: u128, width: usize, radix: u64 },

    #[error("slot width must be at least 1")]
    ZeroSlotWidth,

    #[error("decoded value does not fit in 128 bits")]
    EntryOverflow,

    #[error("arithmetic overflow in reference computation")]
    ArithmeticOverflow,

    #[error("n = {n} exceeds the desk-scale limit of {max_n}")]
    DimensionCapExceeded { n: usize, max_n: usize },

    #[error("n = {n} needs about {digits} operand digits, above the cap of {cap}")]
    MemoryCapExceeded { n: usize, digits: u128, cap: u128 },

    #[error("oracle mismatch in case {case} (n = {n}, radix {radix}): {detail}")]
    OracleMismatch { case: usize, n: usize, radix: u64, detail: String },
}
