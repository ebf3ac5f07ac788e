//! Stage-by-stage timing of the packed pipeline.
//!
//! Operand sizes grow as `n^4 * p` digits, so runs are refused above a
//! dimension limit and an operand-digit cap unless forced.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kronmul::{decode, encode_lhs, encode_rhs, packed_product, shifted_sum};
use crate::layout::{compute_slot_width, SlotLayout};
use crate::packint::{OpCounter, PackedNat, Radix};

use super::rng::{random_matrix, RngState};
use super::schoolbook::schoolbook_matmul;

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_MAX_N: usize = 16;
pub const DEFAULT_MAX_OPERAND_DIGITS: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub radices: Vec<Radix>,
    pub max_entry: u128,
    pub seed: u64,
    pub max_n: usize,
    /// Cap on the padded left-operand width `n^4 * p`.
    pub max_operand_digits: u128,
    #[serde(skip)]
    pub force: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![2, 4, 8],
            radices: vec![Radix::POW2_32],
            max_entry: 1_000_000,
            seed: 0x5EED,
            max_n: DEFAULT_MAX_N,
            max_operand_digits: DEFAULT_MAX_OPERAND_DIGITS,
            force: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageTimings {
    pub encode_ns: u64,
    pub multiply_ns: u64,
    pub sum_ns: u64,
    pub decode_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchCase {
    pub n: usize,
    pub radix: Radix,
    pub p: usize,
    /// Significant digits of the left operand.
    pub lhs_digits: usize,
    /// Left operand length rounded up to whole `n^2 * p`-digit fields.
    pub lhs_field_digits: usize,
    pub rhs_digits: usize,
    /// Right operand length rounded up to whole `p`-digit fields.
    pub rhs_field_digits: usize,
    pub product_digits: usize,
    pub sum_digits: usize,
    pub last_lhs_entry_nonzero: bool,
    pub ops: OpCounter,
    pub oracle_match: bool,
    pub timings: StageTimings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub version: u32,
    pub config: BenchConfig,
    pub cases: Vec<BenchCase>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn field_aligned(x: &PackedNat, field: usize) -> usize {
    x.len().div_ceil(field) * field
}

fn elapsed_ns(t: Instant) -> u64 {
    t.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

/// Checks the size guards for every requested case before running any.
pub fn check_limits(config: &BenchConfig) -> Result<()> {
    if config.force {
        return Ok(());
    }
    for &n in &config.sizes {
        if n > config.max_n {
            return Err(Error::DimensionCapExceeded { n, max_n: config.max_n });
        }
        for &radix in &config.radices {
            let p = compute_slot_width(n, config.max_entry, config.max_entry, radix);
            let digits = (n as u128).pow(4) * p as u128;
            if digits > config.max_operand_digits {
                return Err(Error::MemoryCapExceeded { n, digits, cap: config.max_operand_digits });
            }
        }
    }
    Ok(())
}

pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    check_limits(config)?;
    let mut master = RngState::new(config.seed);
    let mut cases = Vec::with_capacity(config.sizes.len() * config.radices.len());
    for &n in &config.sizes {
        for &radix in &config.radices {
            let mut rng = master.fork();
            let a = random_matrix(n, config.max_entry, &mut rng);
            let b = random_matrix(n, config.max_entry, &mut rng);
            let case = cases.len();
            cases.push(run_case(case, n, radix, &a, &b)?);
        }
    }
    Ok(BenchReport { version: REPORT_VERSION, config: config.clone(), cases })
}

fn run_case(
    case: usize,
    n: usize,
    radix: Radix,
    a: &crate::kronmul::MatrixNat,
    b: &crate::kronmul::MatrixNat,
) -> Result<BenchCase> {
    let layout = SlotLayout::for_instance(a, b, radix)?;
    let mut ctr = OpCounter::new();
    let mut timings = StageTimings::default();

    let t = Instant::now();
    let lhs = encode_lhs(a, &layout, &mut ctr)?;
    let rhs = encode_rhs(b, &layout, &mut ctr)?;
    timings.encode_ns = elapsed_ns(t);

    let t = Instant::now();
    let x = packed_product(&lhs, &rhs, &mut ctr)?;
    timings.multiply_ns = elapsed_ns(t);

    let t = Instant::now();
    let y = shifted_sum(&x, &layout, &mut ctr)?;
    timings.sum_ns = elapsed_ns(t);

    let t = Instant::now();
    let c = decode(&y, &layout, &mut ctr)?;
    timings.decode_ns = elapsed_ns(t);

    let mismatch = |detail: String| Error::OracleMismatch { case, n, radix: radix.get(), detail };
    let oracle = schoolbook_matmul(a, b)?;
    if c != oracle {
        return Err(mismatch("packed product differs from schoolbook product".into()));
    }

    let last_lhs_entry_nonzero = a.get(n - 1, n - 1) != 0;
    let lhs_field_digits = field_aligned(&lhs, layout.lhs_stride());
    if last_lhs_entry_nonzero != (lhs_field_digits == layout.lhs_field_digits()) {
        return Err(mismatch(format!(
            "left operand spans {lhs_field_digits} field digits, expected {} (last entry nonzero: {last_lhs_entry_nonzero})",
            layout.lhs_field_digits()
        )));
    }

    Ok(BenchCase {
        n,
        radix,
        p: layout.p(),
        lhs_digits: lhs.len(),
        lhs_field_digits,
        rhs_digits: rhs.len(),
        rhs_field_digits: field_aligned(&rhs, layout.rhs_stride()),
        product_digits: x.len(),
        sum_digits: y.len(),
        last_lhs_entry_nonzero,
        ops: ctr,
        oracle_match: true,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_decimal_lengths() {
        let cfg = BenchConfig { sizes: vec![2], radices: vec![Radix::DECIMAL], max_entry: 4, ..Default::default() };
        let r = run_benchmark(&cfg).unwrap();
        let c = &r.cases[0];
        assert!(c.oracle_match);
        if c.last_lhs_entry_nonzero {
            assert_eq!(c.lhs_field_digits, 2usize.pow(4) * c.p);
        }
        assert!(c.lhs_digits <= 16 * c.p && c.rhs_digits <= 4 * c.p);
    }

    #[test]
    fn empty_sizes_empty_report() {
        let r = run_benchmark(&BenchConfig { sizes: vec![], ..Default::default() }).unwrap();
        assert!(r.cases.is_empty());
        assert_eq!(r.version, REPORT_VERSION);
    }

    #[test]
    fn guards() {
        let cfg = BenchConfig { sizes: vec![64], ..Default::default() };
        assert_eq!(run_benchmark(&cfg), Err(Error::DimensionCapExceeded { n: 64, max_n: 16 }));
        let cfg = BenchConfig { sizes: vec![8], max_operand_digits: 1000, ..Default::default() };
        assert_eq!(run_benchmark(&cfg), Err(Error::MemoryCapExceeded { n: 8, digits: 4096 * 2, cap: 1000 }));
        let cfg = BenchConfig { sizes: vec![8], max_operand_digits: 1000, force: true, ..Default::default() };
        assert!(run_benchmark(&cfg).is_ok());
    }

    #[test]
    fn n8_radix_2_32() {
        let r = run_benchmark(&BenchConfig { sizes: vec![8], ..Default::default() }).unwrap();
        let c = &r.cases[0];
        assert!(c.oracle_match);
        assert_eq!(c.ops.total(), 3 * 64 + 16 - 1);
        assert_eq!(c.rhs_field_digits, 64 * c.p);
    }

    #[test]
    fn json_is_deterministic_apart_from_timings() {
        let cfg =
            BenchConfig { sizes: vec![1, 3], radices: vec![Radix::DECIMAL, Radix::POW2_32], ..Default::default() };
        let strip = |r: BenchReport| {
            let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
            for c in v["cases"].as_array_mut().unwrap() {
                c.as_object_mut().unwrap().remove("timings");
            }
            v.to_string()
        };
        let a = strip(run_benchmark(&cfg).unwrap());
        assert_eq!(a, strip(run_benchmark(&cfg).unwrap()));
        assert!(a.contains("\"version\":1"));
    }
}
