//! Polynomial multiplication by Kronecker substitution.
//!
//! Both polynomials are evaluated at `radix^q`, i.e. their coefficients are
//! packed `q` digits apart, multiplied once, and the coefficients of the
//! product read back slot by slot. `q` is chosen so that no convolution sum
//! reaches `radix^q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::compute_slot_width;
use crate::packint::{OpCounter, PackedNat, Radix};

/// A polynomial with natural coefficients; `coeffs[k]` multiplies `z^k`.
/// Canonical form has no trailing zero coefficients, so zero is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PolyNat {
    coeffs: Vec<u128>,
}

#[allow(clippy::len_without_is_empty)]
impl PolyNat {
    pub fn new(mut coeffs: Vec<u128>) -> Self {
        let len = coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        coeffs.truncate(len);
        PolyNat { coeffs }
    }

    pub fn zero() -> Self {
        PolyNat::default()
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    /// Number of stored coefficients (degree + 1; zero for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn max_coeff(&self) -> u128 {
        self.coeffs.iter().copied().max().unwrap_or(0)
    }
}

/// Intermediate values of one Kronecker product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KronProduct {
    pub poly: PolyNat,
    pub slot_width: usize,
    pub lhs: PackedNat,
    pub rhs: PackedNat,
    pub packed: PackedNat,
}

pub fn kron_poly_mul(f: &PolyNat, g: &PolyNat, radix: Radix, ctr: &mut OpCounter) -> Result<PolyNat> {
    kron_poly_mul_traced(f, g, radix, ctr).map(|k| k.poly)
}

/// Like [`kron_poly_mul`] but keeps the packed operands and product.
///
/// Always performs exactly one big multiplication, even when an operand is
/// zero.
pub fn kron_poly_mul_traced(f: &PolyNat, g: &PolyNat, radix: Radix, ctr: &mut OpCounter) -> Result<KronProduct> {
    let terms = f.len().min(g.len());
    // With one operand zero the bound is zero, but the other operand must
    // still fit its slots.
    let widest = PackedNat::from_natural(f.max_coeff().max(g.max_coeff()), radix).len();
    let q = compute_slot_width(terms, f.max_coeff(), g.max_coeff(), radix).max(widest);

    let lhs = pack(f, q, radix, ctr);
    let rhs = pack(g, q, radix, ctr);
    let packed = lhs.mul(&rhs, ctr)?;

    let out_len = (f.len() + g.len()).saturating_sub(1);
    let mut coeffs = Vec::with_capacity(out_len);
    for k in 0..out_len {
        ctr.decode_entry += 1;
        coeffs.push(packed.slot(k, q).to_u128().ok_or(Error::EntryOverflow)?);
    }
    Ok(KronProduct { poly: PolyNat::new(coeffs), slot_width: q, lhs, rhs, packed })
}

fn pack(f: &PolyNat, q: usize, radix: Radix, ctr: &mut OpCounter) -> PackedNat {
    let mut digits = vec![0u32; f.len() * q];
    for (k, &c) in f.coeffs().iter().enumerate() {
        ctr.encode_entry += 1;
        let entry = PackedNat::from_natural(c, radix);
        debug_assert!(entry.len() <= q);
        digits[k * q..k * q + entry.len()].copy_from_slice(entry.digits());
    }
    PackedNat::from_digits(radix, digits).expect("digits come from radix conversion")
}

/// Direct convolution, `coeffs[k] = sum_{i+j=k} f[i] * g[j]`.
pub fn naive_convolution(f: &PolyNat, g: &PolyNat) -> Result<PolyNat> {
    if f.is_zero() || g.is_zero() {
        return Ok(PolyNat::zero());
    }
    let mut out = vec![0u128; f.len() + g.len() - 1];
    for (i, &x) in f.coeffs().iter().enumerate() {
        for (j, &y) in g.coeffs().iter().enumerate() {
            let term = x.checked_mul(y).ok_or(Error::ArithmeticOverflow)?;
            out[i + j] = out[i + j].checked_add(term).ok_or(Error::ArithmeticOverflow)?;
        }
    }
    Ok(PolyNat::new(out))
}
