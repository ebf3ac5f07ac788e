use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// Per-kind operation tallies for one run.
///
/// `big_mul` and `big_add` are the arithmetic gates; the other three count
/// the single-step data movements (shifts, per-entry encodes and decodes)
/// that an algebraic circuit would not model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounter {
    pub big_mul: u64,
    pub big_add: u64,
    pub shift: u64,
    pub encode_entry: u64,
    pub decode_entry: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.big_mul + self.big_add + self.shift + self.encode_entry + self.decode_entry
    }

    /// Multiplications plus additions only.
    pub fn arithmetic(&self) -> u64 {
        self.big_mul + self.big_add
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.big_mul += rhs.big_mul;
        self.big_add += rhs.big_add;
        self.shift += rhs.shift;
        self.encode_entry += rhs.encode_entry;
        self.decode_entry += rhs.decode_entry;
    }
}

impl Add for OpCounter {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}
