use crate::error::{Error, Result};
use crate::kronmul::MatrixNat;

/// Triple-loop product with checked `u128` arithmetic per entry.
///
/// Shares no code with the packed path, which is what makes it an oracle.
pub fn schoolbook_matmul(a: &MatrixNat, b: &MatrixNat) -> Result<MatrixNat> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", a.n(), a.n(), b.n(), b.n())));
    }
    let n = a.n();
    let mut c = MatrixNat::zeros(n);
    for r in 0..n {
        for col in 0..n {
            let mut acc = 0u128;
            for k in 0..n {
                let t = a.get(r, k).checked_mul(b.get(k, col)).ok_or(Error::ArithmeticOverflow)?;
                acc = acc.checked_add(t).ok_or(Error::ArithmeticOverflow)?;
            }
            c.set(r, col, acc);
        }
    }
    Ok(c)
}
