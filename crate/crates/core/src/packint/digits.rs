//! Digit-slice kernels shared by [`super::PackedNat`].
//!
//! All slices are least-significant digit first. Every digit is below the
//! radix, which is at most 2^32, so a single digit product plus two digits of
//! carry fits in a `u64`.

use super::Radix;

pub(crate) fn trimmed(d: &[u32]) -> &[u32] {
    let len = d.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &d[..len]
}

pub(crate) fn trim(d: &mut Vec<u32>) {
    let len = trimmed(d).len();
    d.truncate(len);
}

pub(crate) fn add(a: &[u32], b: &[u32], radix: Radix) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = Vec::with_capacity(long.len() + 1);
    out.extend_from_slice(long);
    add_at(&mut out, short, 0, radix);
    out
}

/// `acc += b * radix^offset`, growing `acc` as needed.
pub(crate) fn add_at(acc: &mut Vec<u32>, b: &[u32], offset: usize, radix: Radix) {
    let r = radix.get();
    if acc.len() < offset + b.len() {
        acc.resize(offset + b.len(), 0);
    }
    let mut carry = 0u64;
    let mut k = offset;
    for &y in b {
        let t = acc[k] as u64 + y as u64 + carry;
        if t >= r {
            acc[k] = (t - r) as u32;
            carry = 1;
        } else {
            acc[k] = t as u32;
            carry = 0;
        }
        k += 1;
    }
    while carry != 0 {
        if k == acc.len() {
            acc.push(carry as u32);
            break;
        }
        let t = acc[k] as u64 + carry;
        if t >= r {
            acc[k] = (t - r) as u32;
        } else {
            acc[k] = t as u32;
            carry = 0;
        }
        k += 1;
    }
}

/// `a -= b`; requires `a >= b` as values.
pub(crate) fn sub_in_place(a: &mut Vec<u32>, b: &[u32], radix: Radix) {
    let r = radix.get();
    let b = trimmed(b);
    debug_assert!(a.len() >= b.len());
    let mut borrow = 0u64;
    for (k, x) in a.iter_mut().enumerate() {
        let y = b.get(k).copied().unwrap_or(0) as u64 + borrow;
        if y == 0 && k >= b.len() {
            break;
        }
        let cur = *x as u64;
        if cur >= y {
            *x = (cur - y) as u32;
            borrow = 0;
        } else {
            *x = (cur + r - y) as u32;
            borrow = 1;
        }
    }
    debug_assert_eq!(borrow, 0, "subtraction underflow");
    trim(a);
}

pub(crate) fn cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let (a, b) = (trimmed(a), trimmed(b));
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Quadratic product. Column sums are accumulated in `u128` and carried once
/// at the end; zero digits of `a` are skipped.
pub(crate) fn schoolbook(a: &[u32], b: &[u32], radix: Radix) -> Vec<u32> {
    let (a, b) = (trimmed(a), trimmed(b));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols = vec![0u128; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (col, &y) in cols[i..].iter_mut().zip(b) {
            *col += (x * y as u64) as u128;
        }
    }
    let mut out = Vec::with_capacity(cols.len() + 1);
    let mut carry = 0u128;
    for c in cols {
        let (q, d) = radix.divrem(c + carry);
        out.push(d);
        carry = q;
    }
    while carry != 0 {
        let (q, d) = radix.divrem(carry);
        out.push(d);
        carry = q;
    }
    trim(&mut out);
    out
}

/// Karatsuba product, falling back to [`schoolbook`] once the shorter operand
/// has fewer than `threshold` digits. Unbalanced operands are cut into
/// pieces the length of the shorter one.
pub(crate) fn karatsuba(a: &[u32], b: &[u32], radix: Radix, threshold: usize) -> Vec<u32> {
    let (a, b) = (trimmed(a), trimmed(b));
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return Vec::new();
    }
    if short.len() < threshold.max(2) {
        return schoolbook(long, short, radix);
    }
    if 2 * short.len() <= long.len() {
        let step = short.len();
        let mut out = vec![0u32; long.len() + step];
        for (idx, chunk) in long.chunks(step).enumerate() {
            let part = karatsuba(chunk, short, radix, threshold);
            add_at(&mut out, &part, idx * step, radix);
        }
        trim(&mut out);
        return out;
    }

    // Balanced: short.len() > long.len() / 2 >= m, so both high halves are non-empty.
    let m = long.len() / 2;
    let (a0, a1) = long.split_at(m);
    let (b0, b1) = short.split_at(m);
    let z0 = karatsuba(a0, b0, radix, threshold);
    let z2 = karatsuba(a1, b1, radix, threshold);
    let mut z1 = karatsuba(&add(a0, a1, radix), &add(b0, b1, radix), radix, threshold);
    sub_in_place(&mut z1, &z0, radix);
    sub_in_place(&mut z1, &z2, radix);

    let mut out = vec![0u32; long.len() + short.len() + 1];
    add_at(&mut out, &z0, 0, radix);
    add_at(&mut out, &z1, m, radix);
    add_at(&mut out, &z2, 2 * m, radix);
    trim(&mut out);
    out
}
