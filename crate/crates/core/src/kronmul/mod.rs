//! Packed matrix multiplication.
//!
//! `A` is vectorized row-major and packed one entry every `n^2 * p` digits;
//! `B` is vectorized column-major and packed one entry every `p` digits. In
//! the single product, `A_vec[i] * B_vec[j]` lands alone in slot `i * n^2 + j`.
//! Adding the product to copies of itself shifted by `k * (n^2 + 1)` slots,
//! `k = 1..n`, lines the `n` terms of each inner product up in one slot,
//! which [`decode`] then reads out.

mod matrix;
mod trace;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::SlotLayout;
use crate::packint::{OpCounter, PackedNat, Radix, DEFAULT_KARATSUBA_THRESHOLD};

pub use matrix::MatrixNat;
pub use trace::{trace_illustration, TraceReport, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MmmConfig {
    pub radix: Radix,
    /// Fixed slot width. It is still checked against the carry-free minimum.
    pub slot_width: Option<usize>,
    pub karatsuba_threshold: usize,
}

impl Default for MmmConfig {
    fn default() -> Self {
        MmmConfig { radix: Radix::DECIMAL, slot_width: None, karatsuba_threshold: DEFAULT_KARATSUBA_THRESHOLD }
    }
}

impl MmmConfig {
    pub fn with_radix(radix: Radix) -> Self {
        MmmConfig { radix, ..Default::default() }
    }

    /// Resolves and validates the layout for `a * b`.
    pub fn layout_for(&self, a: &MatrixNat, b: &MatrixNat) -> Result<SlotLayout> {
        match self.slot_width {
            None => SlotLayout::for_instance(a, b, self.radix),
            Some(p) => {
                crate::layout::check_dimensions(a, b)?;
                let layout = SlotLayout::new(a.n(), p, self.radix)?;
                layout.validate(a, b)?;
                Ok(layout)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MmmOutput {
    pub product: MatrixNat,
    pub counter: OpCounter,
    pub layout: SlotLayout,
}

fn pack_at_stride(
    values: impl ExactSizeIterator<Item = u128>,
    stride: usize,
    layout: &SlotLayout,
    ctr: &mut OpCounter,
) -> Result<PackedNat> {
    let (p, radix) = (layout.p(), layout.radix());
    let count = values.len();
    let mut digits = vec![0u32; count.saturating_sub(1) * stride + p];
    for (i, v) in values.enumerate() {
        ctr.encode_entry += 1;
        let entry = PackedNat::from_natural(v, radix);
        if entry.len() > p {
            return Err(Error::EntryTooWide { value: v, width: p, radix: radix.get() });
        }
        let at = i * stride;
        digits[at..at + entry.len()].copy_from_slice(entry.digits());
    }
    PackedNat::from_digits(radix, digits)
}

/// `sum_i A_vec[i] * radix^(i * n^2 * p)` over the row-major vectorization.
pub fn encode_lhs(a: &MatrixNat, layout: &SlotLayout, ctr: &mut OpCounter) -> Result<PackedNat> {
    pack_at_stride(a.row_major().collect::<Vec<_>>().into_iter(), layout.lhs_stride(), layout, ctr)
}

/// `sum_j B_vec[j] * radix^(j * p)` over the column-major vectorization.
pub fn encode_rhs(b: &MatrixNat, layout: &SlotLayout, ctr: &mut OpCounter) -> Result<PackedNat> {
    pack_at_stride(b.col_major().collect::<Vec<_>>().into_iter(), layout.rhs_stride(), layout, ctr)
}

/// The one big multiplication.
pub fn packed_product(lhs: &PackedNat, rhs: &PackedNat, ctr: &mut OpCounter) -> Result<PackedNat> {
    packed_product_with(lhs, rhs, DEFAULT_KARATSUBA_THRESHOLD, ctr)
}

pub fn packed_product_with(
    lhs: &PackedNat,
    rhs: &PackedNat,
    karatsuba_threshold: usize,
    ctr: &mut OpCounter,
) -> Result<PackedNat> {
    lhs.mul_with_threshold(rhs, karatsuba_threshold, ctr)
}

/// `y = sum_{k=0}^{n-1} x * radix^(k * p * (n^2 + 1))`, using `n - 1` shifts
/// and `n - 1` additions. Every term is a shift of the original product.
pub fn shifted_sum(x: &PackedNat, layout: &SlotLayout, ctr: &mut OpCounter) -> Result<PackedNat> {
    let mut acc = x.clone();
    for k in 1..layout.n() {
        let shifted = x.shift_digits(k * layout.shift_stride(), ctr);
        acc = acc.add(&shifted, ctr)?;
    }
    Ok(acc)
}

/// Reads `C[r][c]` from slot [`SlotLayout::result_slot_index`].
pub fn decode(y: &PackedNat, layout: &SlotLayout, ctr: &mut OpCounter) -> Result<MatrixNat> {
    let n = layout.n();
    let mut out = MatrixNat::zeros(n);
    for r in 0..n {
        for c in 0..n {
            ctr.decode_entry += 1;
            let v = y.slot(layout.result_slot_index(r, c), layout.p()).to_u128().ok_or(Error::EntryOverflow)?;
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// `A * B` with one big multiplication and `n - 1` big additions.
///
/// The layout is validated before anything is encoded, so an undersized
/// slot width is reported as an error instead of producing a wrong matrix.
pub fn mmm(a: &MatrixNat, b: &MatrixNat, config: &MmmConfig) -> Result<MmmOutput> {
    let layout = config.layout_for(a, b)?;
    let mut ctr = OpCounter::new();
    let lhs = encode_lhs(a, &layout, &mut ctr)?;
    let rhs = encode_rhs(b, &layout, &mut ctr)?;
    let x = packed_product_with(&lhs, &rhs, config.karatsuba_threshold, &mut ctr)?;
    let y = shifted_sum(&x, &layout, &mut ctr)?;
    let product = decode(&y, &layout, &mut ctr)?;
    Ok(MmmOutput { product, counter: ctr, layout })
}

/// The folding loop taken literally: `for k = n-1 down to 1: x = x + shift_k(x)`.
///
/// Rebinding `x` each round makes the applied offsets every subset sum of
/// `{1, ..., n-1}` (in units of `n^2 + 1` slots) instead of `{0, ..., n-1}`.
/// That agrees with [`mmm`] for `n <= 2` and is wrong from `n = 3` on. Kept
/// as a regression reference only.
pub fn mmm_cascade_literal(a: &MatrixNat, b: &MatrixNat, config: &MmmConfig) -> Result<MmmOutput> {
    let layout = config.layout_for(a, b)?;
    let mut ctr = OpCounter::new();
    let lhs = encode_lhs(a, &layout, &mut ctr)?;
    let rhs = encode_rhs(b, &layout, &mut ctr)?;
    let mut x = packed_product_with(&lhs, &rhs, config.karatsuba_threshold, &mut ctr)?;
    for k in (1..layout.n()).rev() {
        let shifted = x.shift_digits(k * layout.shift_stride(), &mut ctr);
        x = x.add(&shifted, &mut ctr)?;
    }
    let product = decode(&x, &layout, &mut ctr)?;
    Ok(MmmOutput { product, counter: ctr, layout })
}
