//! Slot geometry for packing an `n x n` product.
//!
//! The left operand is packed with one entry every `n^2 * p` digits, the
//! right one with one entry every `p` digits, and the folded sum uses shifts
//! of `p * (n^2 + 1)` digits. Every slot of every intermediate stays below
//! `radix^p` as long as `radix^p > n * max(A) * max(B)`.

use serde::Serialize;

use crate::error::{Error, Result, SlotBound};
use crate::kronmul::MatrixNat;
use crate::packint::{schoolbook_mul, PackedNat, Radix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlotLayout {
    n: usize,
    p: usize,
    radix: Radix,
}

impl SlotLayout {
    pub fn new(n: usize, p: usize, radix: Radix) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix dimension must be at least 1".into()));
        }
        if p == 0 {
            return Err(Error::ZeroSlotWidth);
        }
        Ok(SlotLayout { n, p, radix })
    }

    /// The narrowest carry-free layout for this pair of matrices.
    pub fn for_instance(a: &MatrixNat, b: &MatrixNat, radix: Radix) -> Result<Self> {
        check_dimensions(a, b)?;
        let p = compute_slot_width(a.n(), a.max_entry(), b.max_entry(), radix);
        SlotLayout::new(a.n(), p, radix)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Slot width in digits.
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn lhs_stride(&self) -> usize {
        self.n * self.n * self.p
    }

    pub fn rhs_stride(&self) -> usize {
        self.p
    }

    pub fn shift_stride(&self) -> usize {
        self.p * (self.n * self.n + 1)
    }

    pub fn product_slot_count(&self) -> usize {
        self.n.pow(4)
    }

    /// Width of the padded left encoding: `n^2` fields of `n^2 * p` digits.
    pub fn lhs_field_digits(&self) -> usize {
        self.product_slot_count() * self.p
    }

    /// Width of the padded right encoding: `n^2` fields of `p` digits.
    pub fn rhs_field_digits(&self) -> usize {
        self.n * self.n * self.p
    }

    /// Slot (width `p`, least-significant first) of `C[row][col]` in the
    /// shifted sum: `row * n^3 + col * n + (n - 1) * (n^2 + 1)`.
    pub fn result_slot_index(&self, row: usize, col: usize) -> usize {
        let n = self.n;
        debug_assert!(row < n && col < n);
        row * n * n * n + col * n + (n - 1) * (n * n + 1)
    }

    /// Checks that `A` and `B` are `n x n` for this layout and that no slot
    /// can carry into its neighbour.
    pub fn validate(&self, a: &MatrixNat, b: &MatrixNat) -> Result<()> {
        check_dimensions(a, b)?;
        if a.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "layout is for n = {} but the matrices are {}x{}",
                self.n,
                a.n(),
                a.n()
            )));
        }
        let required = compute_slot_width(self.n, a.max_entry(), b.max_entry(), self.radix);
        if self.p < required {
            return Err(Error::SlotOverflow {
                radix: self.radix.get(),
                width: self.p,
                required,
                bound: SlotBound { terms: self.n as u128, lhs_max: a.max_entry(), rhs_max: b.max_entry() },
            });
        }
        Ok(())
    }
}

pub fn validate_layout(layout: &SlotLayout, a: &MatrixNat, b: &MatrixNat) -> Result<()> {
    layout.validate(a, b)
}

pub(crate) fn check_dimensions(a: &MatrixNat, b: &MatrixNat) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "left operand is {}x{}, right operand is {}x{}",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    Ok(())
}

/// `terms * lhs_max * rhs_max` as an exact natural in `radix`.
pub(crate) fn slot_bound(terms: u128, lhs_max: u128, rhs_max: u128, radix: Radix) -> PackedNat {
    let ab = schoolbook_mul(&PackedNat::from_natural(lhs_max, radix), &PackedNat::from_natural(rhs_max, radix))
        .expect("same radix");
    schoolbook_mul(&ab, &PackedNat::from_natural(terms, radix)).expect("same radix")
}

/// Smallest `p >= 1` with `radix^p > terms * lhs_max * rhs_max`.
///
/// That is the digit count of the bound itself, so no power of the radix is
/// ever formed.
pub fn compute_slot_width(terms: usize, lhs_max: u128, rhs_max: u128, radix: Radix) -> usize {
    slot_bound(terms as u128, lhs_max, rhs_max, radix).len().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[u128]]) -> MatrixNat {
        MatrixNat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn slot_width_examples() {
        assert_eq!(compute_slot_width(2, 4, 8, Radix::DECIMAL), 2);
        assert_eq!(compute_slot_width(1, 1, 1, Radix::DECIMAL), 1);
        assert_eq!(compute_slot_width(3, 99, 99, Radix::DECIMAL), 5);
        assert_eq!(compute_slot_width(3, 0, 99, Radix::DECIMAL), 1);
        assert_eq!(compute_slot_width(8, 1_000_000, 1_000_000, Radix::POW2_32), 2);
        // 2^128 - 1 squared does not fit any machine word.
        assert_eq!(compute_slot_width(1, u128::MAX, u128::MAX, Radix::POW2_32), 8);
    }

    #[test]
    fn strides() {
        let l = SlotLayout::new(3, 4, Radix::DECIMAL).unwrap();
        assert_eq!(l.lhs_stride(), 36);
        assert_eq!(l.rhs_stride(), 4);
        assert_eq!(l.shift_stride(), 40);
        assert_eq!(l.product_slot_count(), 81);
        assert_eq!(l.lhs_stride(), 9 * l.rhs_stride());
        assert_eq!(l.shift_stride(), l.rhs_stride() * 10);
        assert_eq!(l.lhs_field_digits(), 324);
        assert_eq!(l.rhs_field_digits(), 36);
    }

    #[test]
    fn degenerate_layouts_rejected() {
        assert_eq!(SlotLayout::new(2, 0, Radix::DECIMAL), Err(Error::ZeroSlotWidth));
        assert!(matches!(SlotLayout::new(0, 1, Radix::DECIMAL), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn validate_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[5, 6], &[7, 8]]);
        assert_eq!(SlotLayout::for_instance(&a, &b, Radix::DECIMAL).unwrap().p(), 2);
        SlotLayout::new(2, 2, Radix::DECIMAL).unwrap().validate(&a, &b).unwrap();
        let err = SlotLayout::new(2, 1, Radix::DECIMAL).unwrap().validate(&a, &b).unwrap_err();
        match &err {
            Error::SlotOverflow { width: 1, required: 2, bound, .. } => assert_eq!(bound.product(), Some(64)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("2*4*8 = 64"), "{err}");

        let z = m(&[&[0]]);
        SlotLayout::new(1, 1, Radix::DECIMAL).unwrap().validate(&z, &z).unwrap();
    }

    #[test]
    fn validate_dimension_errors() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let c = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let l2 = SlotLayout::new(2, 3, Radix::DECIMAL).unwrap();
        assert!(matches!(l2.validate(&a, &c), Err(Error::DimensionMismatch(_))));
        assert!(matches!(l2.validate(&c, &c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn result_slot_examples() {
        let l = SlotLayout::new(2, 2, Radix::DECIMAL).unwrap();
        assert_eq!(l.result_slot_index(0, 0), 5);
        assert_eq!(l.result_slot_index(1, 1), 15);
        assert_eq!(SlotLayout::new(1, 1, Radix::DECIMAL).unwrap().result_slot_index(0, 0), 0);
    }

    /// Start digit of `C_ij` as written with 1-based `i, j`:
    /// `(i*n*p - p) * n^2 + j*n*p - p`.
    fn one_based_start(n: usize, p: usize, i: usize, j: usize) -> usize {
        (i * n * p - p) * n * n + j * n * p - p
    }

    #[test]
    fn result_slot_matches_one_based_digit_positions() {
        for n in 1..=8 {
            for p in 1..=4 {
                let l = SlotLayout::new(n, p, Radix::DECIMAL).unwrap();
                for r in 0..n {
                    for c in 0..n {
                        assert_eq!(l.result_slot_index(r, c) * p, one_based_start(n, p, r + 1, c + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn result_slots_injective_and_in_range() {
        for n in 1..=8 {
            let l = SlotLayout::new(n, 1, Radix::DECIMAL).unwrap();
            let mut seen = std::collections::HashSet::new();
            let limit = n.pow(4) + (n - 1) * (n * n + 1);
            for r in 0..n {
                for c in 0..n {
                    let s = l.result_slot_index(r, c);
                    assert!(s < limit);
                    assert!(seen.insert(s));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn slot_width_is_minimal(n in 1usize..20, a in 1u128..1_000_000_000, b in 1u128..1_000_000_000,
                                 r in prop_oneof![Just(2u64), Just(10), Just(1 << 16), Just(1 << 32)]) {
            let radix = Radix::new(r).unwrap();
            let p = compute_slot_width(n, a, b, radix) as u32;
            let bound = n as u128 * a * b;
            let rr = r as u128;
            prop_assert!(rr.pow(p - 1) <= bound);
            prop_assert!(rr.checked_pow(p).is_none_or(|v| v > bound));
        }
    }
}
