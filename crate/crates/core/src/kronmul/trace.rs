//! Decimal walk-through of a packed product, string by string.
//!
//! This is the compact teaching layout, not the general template: both
//! operands are spread over `n^3` slots indexed by `(r, c, k)` in
//! lexicographic order (most significant first), holding `A[r][k]` and
//! `B[k][c]` respectively. Their slot-wise product holds every term of every
//! inner product; `n - 1` additions of one-slot shifts collapse each run of
//! `n` terms onto its last slot. The product step is slot-wise on purpose:
//! a true integer product of the two strings would mix cross terms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{check_dimensions, compute_slot_width, slot_bound};
use crate::packint::{OpCounter, PackedNat, Radix};

use super::MatrixNat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub augend: String,
    pub addend: String,
    pub sum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub n: usize,
    pub p: usize,
    pub lhs: String,
    pub rhs: String,
    pub product: String,
    pub additions: Vec<TraceStep>,
    pub final_string: String,
    /// `final_string` with every result slot wrapped in brackets.
    pub marked_final: String,
    pub decoded: MatrixNat,
    pub counter: OpCounter,
}

/// Runs the decimal walk-through. `slot_width` defaults to the carry-free minimum.
pub fn trace_illustration(a: &MatrixNat, b: &MatrixNat, slot_width: Option<usize>) -> Result<TraceReport> {
    check_dimensions(a, b)?;
    let radix = Radix::DECIMAL;
    let n = a.n();
    let required = compute_slot_width(n, a.max_entry(), b.max_entry(), radix);
    let p = slot_width.unwrap_or(required);
    if p == 0 {
        return Err(Error::ZeroSlotWidth);
    }
    if p < required {
        return Err(Error::SlotOverflow {
            radix: radix.get(),
            width: p,
            required,
            bound: crate::error::SlotBound { terms: n as u128, lhs_max: a.max_entry(), rhs_max: b.max_entry() },
        });
    }
    debug_assert!(slot_bound(n as u128, a.max_entry(), b.max_entry(), radix).len() <= p);

    let slots = n * n * n;
    let mut lhs = Vec::with_capacity(slots);
    let mut rhs = Vec::with_capacity(slots);
    for r in 0..n {
        for c in 0..n {
            for k in 0..n {
                lhs.push(a.get(r, k));
                rhs.push(b.get(k, c));
            }
        }
    }
    let products: Vec<u128> = lhs.iter().zip(&rhs).map(|(x, y)| x * y).collect();

    let mut ctr = OpCounter::new();
    let lhs = pack_ms_first(&lhs, p, &mut ctr)?;
    let rhs = pack_ms_first(&rhs, p, &mut ctr)?;
    let product = pack_ms_first(&products, p, &mut OpCounter::new())?;

    let width = slots * p;
    let mut acc = product.clone();
    let mut additions = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let addend = product.shift_digits(k * p, &mut ctr);
        let augend = acc.to_digit_string(width + (k - 1) * p);
        acc = acc.add(&addend, &mut ctr)?;
        additions.push(TraceStep {
            augend,
            addend: addend.to_digit_string(width + k * p),
            sum: acc.to_digit_string(width + k * p),
        });
    }

    // Result slot of C[r][c], counted from the most significant end of the
    // (n^3 + n - 1)-slot sum, is r*n^2 + c*n + n - 1.
    let total_slots = slots + n - 1;
    let ms_slot = |r: usize, c: usize| r * n * n + c * n + n - 1;
    let mut decoded = MatrixNat::zeros(n);
    for r in 0..n {
        for c in 0..n {
            ctr.decode_entry += 1;
            let ls_slot = total_slots - 1 - ms_slot(r, c);
            decoded.set(r, c, acc.slot(ls_slot, p).to_u128().ok_or(Error::EntryOverflow)?);
        }
    }

    let full = acc.to_digit_string(total_slots * p);
    let mut marked = String::with_capacity(full.len() + 2 * n * n);
    for (i, chunk) in full.as_bytes().chunks(p).enumerate() {
        let chunk = std::str::from_utf8(chunk).expect("ascii digits");
        if (0..n).any(|r| (0..n).any(|c| ms_slot(r, c) == i)) {
            marked.push('[');
            marked.push_str(chunk);
            marked.push(']');
        } else {
            marked.push_str(chunk);
        }
    }
    let marked_final = marked.trim_start_matches('0').to_string();

    Ok(TraceReport {
        n,
        p,
        lhs: lhs.to_digit_string(width),
        rhs: rhs.to_digit_string(width),
        product: product.to_digit_string(width),
        additions,
        final_string: acc.to_digit_string(1),
        marked_final,
        decoded,
        counter: ctr,
    })
}

/// Packs `values` with `values[0]` in the most significant slot.
fn pack_ms_first(values: &[u128], p: usize, ctr: &mut OpCounter) -> Result<PackedNat> {
    let radix = Radix::DECIMAL;
    let mut digits = vec![0u32; values.len() * p];
    for (m, &v) in values.iter().enumerate() {
        ctr.encode_entry += 1;
        let entry = PackedNat::from_natural(v, radix);
        if entry.len() > p {
            return Err(Error::EntryTooWide { value: v, width: p, radix: radix.get() });
        }
        let at = (values.len() - 1 - m) * p;
        digits[at..at + entry.len()].copy_from_slice(entry.digits());
    }
    PackedNat::from_digits(radix, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u128]]) -> MatrixNat {
        MatrixNat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_by_two_walkthrough() {
        let t = trace_illustration(&m(&[&[1, 2], &[3, 4]]), &m(&[&[5, 6], &[7, 8]]), None).unwrap();
        assert_eq!(t.p, 2);
        assert_eq!(t.lhs, "0102010203040304");
        assert_eq!(t.rhs, "0507060805070608");
        assert_eq!(t.product, "0514061615281832");
        assert_eq!(
            t.additions,
            vec![TraceStep {
                augend: "0514061615281832".into(),
                addend: "051406161528183200".into(),
                sum: "051920223143465032".into(),
            }]
        );
        assert_eq!(t.final_string, "51920223143465032");
        assert_eq!(t.marked_final, "5[19]20[22]31[43]46[50]32");
        assert_eq!(t.decoded, m(&[&[19, 22], &[43, 50]]));
    }

    #[test]
    fn zero_matrices() {
        let z = MatrixNat::zeros(2);
        let t = trace_illustration(&z, &z, None).unwrap();
        assert_eq!(t.p, 1);
        for s in [&t.lhs, &t.rhs, &t.product, &t.final_string] {
            assert!(s.chars().all(|ch| ch == '0'), "{s}");
        }
        assert_eq!(t.decoded, z);
    }

    #[test]
    fn single_entry() {
        let t = trace_illustration(&m(&[&[7]]), &m(&[&[9]]), None).unwrap();
        assert_eq!((t.product.as_str(), t.final_string.as_str()), ("63", "63"));
        assert!(t.additions.is_empty());
        assert_eq!(t.marked_final, "[63]");
    }

    #[test]
    fn undersized_slots_rejected() {
        let r = trace_illustration(&m(&[&[1, 2], &[3, 4]]), &m(&[&[5, 6], &[7, 8]]), Some(1));
        assert!(matches!(r, Err(Error::SlotOverflow { required: 2, .. })));
        let r = trace_illustration(&m(&[&[1000]]), &m(&[&[0]]), Some(1));
        assert!(matches!(r, Err(Error::EntryTooWide { .. })));
    }

    #[test]
    fn three_by_three_decodes_correctly() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let b = m(&[&[2, 7, 1], &[8, 2, 8], &[1, 8, 2]]);
        let t = trace_illustration(&a, &b, None).unwrap();
        let expected = m(&[&[18, 55, 19], &[51, 89, 59], &[57, 66, 60]]);
        assert_eq!(t.decoded, expected);
        assert_eq!(t.additions.len(), 2);
    }
}
