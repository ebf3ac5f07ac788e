//! Exact matrix multiplication over the naturals by integer packing.
//!
//! Both operands are packed into one large natural each, multiplied once,
//! and the product is folded onto itself with `n - 1` shifted additions so
//! that every entry of the result lands in its own fixed-width digit slot.
//! With carry-free slot widths the whole `n x n` product costs one big
//! multiplication and `n - 1` big additions.
//!
//! Module map:
//!
//! - [`packint`]: radix-generic arbitrary-precision naturals with digit-slot
//!   access and operation counting.
//! - [`layout`]: slot geometry and the carry-freedom check.
//! - [`kronmul`]: the encode / multiply / shifted-sum / decode pipeline and
//!   the step-by-step decimal trace.
//! - [`polymul`]: Kronecker-substitution polynomial multiplication.
//! - [`harness`]: schoolbook oracles, seeded instance generation,
//!   equivalence suites and the benchmark runner.

pub mod error;
pub mod harness;
pub mod kronmul;
pub mod layout;
pub mod packint;
pub mod polymul;

pub use error::{Error, Result};
pub use kronmul::{mmm, mmm_cascade_literal, trace_illustration, MatrixNat, MmmConfig, MmmOutput, TraceReport};
pub use layout::{compute_slot_width, SlotLayout};
pub use packint::{OpCounter, PackedNat, Radix};
pub use polymul::{kron_poly_mul, naive_convolution, PolyNat};
