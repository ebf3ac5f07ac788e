mod matrix_file;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use packmm_core::harness::bench::{BenchConfig, DEFAULT_MAX_N, DEFAULT_MAX_OPERAND_DIGITS};
use packmm_core::harness::suite::expected_total_ops;
use packmm_core::harness::{run_benchmark, run_equivalence_suite, SuiteConfig};
use packmm_core::layout::SlotLayout;
use packmm_core::polymul::kron_poly_mul;
use packmm_core::{mmm, mmm_cascade_literal, trace_illustration, MatrixNat, MmmConfig, OpCounter, PolyNat, Radix};

const JSON_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "packmm", version, about = "Matrix multiplication by integer packing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two matrix files.
    Multiply {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, default_value = "10", value_parser = parse_radix)]
        radix: Radix,
        /// Slot width in digits; rejected if it could carry.
        #[arg(long)]
        slot_width: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        count_ops: bool,
        #[arg(long, value_enum, default_value_t = Mode::Template)]
        mode: Mode,
    },
    /// Print the decimal encode / multiply / shift / decode walk-through.
    Trace {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long)]
        slot_width: Option<usize>,
        /// Only radix 10 is accepted.
        #[arg(long, default_value = "10", value_parser = parse_radix)]
        radix: Radix,
        #[arg(long)]
        json: bool,
    },
    /// Compare packed products against the schoolbook product on random cases.
    Verify {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_entry: u128,
        #[arg(long, default_value = "10,65536,4294967296", value_parser = parse_radix_list)]
        radix: RadixList,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
        /// Use slots one digit narrower than safe; every case must be rejected.
        #[arg(long)]
        undersize_slots: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time each pipeline stage and write a JSON report.
    Bench {
        /// Comma-separated matrix dimensions.
        #[arg(long, default_value = "2,4,8")]
        sizes: String,
        #[arg(long, default_value = "4294967296", value_parser = parse_radix_list)]
        radix: RadixList,
        #[arg(long, default_value_t = 1_000_000)]
        max_entry: u128,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Run sizes beyond the dimension and operand-size guards.
        #[arg(long)]
        force: bool,
    },
    /// Multiply two polynomials given as comma-separated coefficients, constant term first.
    Polymul {
        lhs: String,
        rhs: String,
        #[arg(long, default_value = "10", value_parser = parse_radix)]
        radix: Radix,
        #[arg(long)]
        count_ops: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Template,
    CascadeLiteral,
}

#[derive(Clone)]
struct RadixList(Vec<Radix>);

fn parse_radix(s: &str) -> Result<Radix, String> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: u64 = base.trim().parse().map_err(|_| format!("bad radix {s:?}"))?;
            let exp: u32 = exp.trim().parse().map_err(|_| format!("bad radix {s:?}"))?;
            base.checked_pow(exp).ok_or_else(|| format!("radix {s:?} is too large"))?
        }
        None => s.parse().map_err(|_| format!("bad radix {s:?}"))?,
    };
    Radix::new(value).map_err(|e| e.to_string())
}

fn parse_radix_list(s: &str) -> Result<RadixList, String> {
    let radices = s.split(',').map(parse_radix).collect::<Result<Vec<_>, _>>()?;
    Ok(RadixList(radices))
}

enum Failure {
    /// Bad input, unreadable file, bad flag: exit 2.
    Input(String),
    /// The computation was refused or did not verify: exit 1.
    Rejected(String),
}

impl From<packmm_core::Error> for Failure {
    fn from(e: packmm_core::Error) -> Self {
        Failure::Rejected(e.to_string())
    }
}

fn read_matrix(path: &Path) -> Result<MatrixNat, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    matrix_file::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_coeffs(s: &str) -> Result<PolyNat, Failure> {
    let coeffs = s
        .split(',')
        .map(|t| matrix_file::parse_natural(t.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(format!("coefficients {s:?}: {e}")))?;
    Ok(PolyNat::new(coeffs))
}

fn ops_table(ctr: &OpCounter, n: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mul     {}", ctr.big_mul);
    let _ = writeln!(s, "add     {}", ctr.big_add);
    let _ = writeln!(s, "shift   {}", ctr.shift);
    let _ = writeln!(s, "encode  {}", ctr.encode_entry);
    let _ = writeln!(s, "decode  {}", ctr.decode_entry);
    let _ = writeln!(s, "total   {}  (3n^2+2n-1 = {})", ctr.total(), expected_total_ops(n));
    let _ = writeln!(s, "arithmetic {}  (n = {n})", ctr.arithmetic());
    s
}

#[derive(Serialize)]
struct MultiplyJson<'a> {
    version: u32,
    mode: &'static str,
    layout: &'a SlotLayout,
    result: &'a MatrixNat,
    #[serde(skip_serializing_if = "Option::is_none")]
    ops: Option<&'a OpCounter>,
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Multiply { lhs, rhs, radix, slot_width, json, count_ops, mode } => {
            let (a, b) = (read_matrix(&lhs)?, read_matrix(&rhs)?);
            let config = MmmConfig { radix, slot_width, ..Default::default() };
            let out = match mode {
                Mode::Template => mmm(&a, &b, &config)?,
                Mode::CascadeLiteral => {
                    eprintln!(
                        "warning: cascade-literal mode rebinds the accumulator every round and is \
                         wrong for n >= 3; use it only for comparison"
                    );
                    mmm_cascade_literal(&a, &b, &config)?
                }
            };
            if json {
                let doc = MultiplyJson {
                    version: JSON_VERSION,
                    mode: if mode == Mode::Template { "template" } else { "cascade-literal" },
                    layout: &out.layout,
                    result: &out.product,
                    ops: count_ops.then_some(&out.counter),
                };
                return Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n");
            }
            let mut s = matrix_file::render(&out.product);
            if count_ops {
                s.push_str(&ops_table(&out.counter, a.n()));
            }
            Ok(s)
        }

        Command::Trace { lhs, rhs, slot_width, radix, json } => {
            if radix != Radix::DECIMAL {
                return Err(Failure::Input(format!("trace works in radix 10 only, got --radix {radix}")));
            }
            let (a, b) = (read_matrix(&lhs)?, read_matrix(&rhs)?);
            let t = trace_illustration(&a, &b, slot_width)?;
            if json {
                return Ok(serde_json::to_string_pretty(&t).expect("serializable") + "\n");
            }
            let mut s = String::new();
            let _ = writeln!(s, "n = {}, slot width p = {}", t.n, t.p);
            let _ = writeln!(s, "lhs      {}", t.lhs);
            let _ = writeln!(s, "rhs      {}", t.rhs);
            let _ = writeln!(s, "product  {}", t.product);
            for step in &t.additions {
                let _ = writeln!(s, "add      {} + {}", step.augend, step.addend);
                let _ = writeln!(s, "       = {}", step.sum);
            }
            let _ = writeln!(s, "final    {}", t.final_string);
            let _ = writeln!(s, "marked   {}", t.marked_final);
            s.push_str("result\n");
            s.push_str(&matrix_file::render(&t.decoded));
            Ok(s)
        }

        Command::Verify { cases, min_n, max_n, max_entry, radix, seed, undersize_slots, inject_fault } => {
            if min_n == 0 || min_n > max_n {
                return Err(Failure::Input(format!("need 1 <= --min-n <= --max-n, got {min_n}..{max_n}")));
            }
            let config = SuiteConfig {
                n_min: min_n,
                n_max: max_n,
                max_entry,
                radices: radix.0,
                cases,
                seed,
                undersize_slots,
                inject_fault,
            };
            let summary = run_equivalence_suite(&config);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "cases {}, passed {}, expected failures {}, failures {}",
                summary.cases,
                summary.passed,
                summary.expected_failures,
                summary.failures.len()
            );
            for (n, ops) in &summary.ops_by_n {
                let _ = writeln!(
                    s,
                    "n = {n}: {} ops/case (3n^2+2n-1 = {}), arithmetic {}",
                    ops.total(),
                    expected_total_ops(*n),
                    ops.arithmetic()
                );
            }
            if summary.all_passed() {
                Ok(s)
            } else {
                print!("{s}");
                let detail: Vec<String> = summary.failures.iter().map(ToString::to_string).collect();
                Err(Failure::Rejected(format!("verification failed\n{}", detail.join("\n"))))
            }
        }

        Command::Bench { sizes, radix, max_entry, seed, json_out, force } => {
            let sizes = sizes
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok().filter(|&n| n >= 1).ok_or(t))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|t| Failure::Input(format!("bad size {t:?} in --sizes")))?;
            let config = BenchConfig {
                sizes,
                radices: radix.0,
                max_entry,
                seed,
                max_n: DEFAULT_MAX_N,
                max_operand_digits: DEFAULT_MAX_OPERAND_DIGITS,
                force,
            };
            let report = run_benchmark(&config).map_err(|e| match e {
                e
                @ (packmm_core::Error::DimensionCapExceeded { .. } | packmm_core::Error::MemoryCapExceeded { .. }) => {
                    Failure::Rejected(format!("{e} (use --force to override)"))
                }
                e => e.into(),
            })?;
            let json = report.to_json() + "\n";
            match json_out {
                Some(path) => {
                    fs::write(&path, json).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    Ok(format!("wrote {} cases to {}\n", report.cases.len(), path.display()))
                }
                None => Ok(json),
            }
        }

        Command::Polymul { lhs, rhs, radix, count_ops } => {
            let (f, g) = (parse_coeffs(&lhs)?, parse_coeffs(&rhs)?);
            let mut ctr = OpCounter::new();
            let h = kron_poly_mul(&f, &g, radix, &mut ctr)?;
            let mut s = if h.is_zero() {
                "0".to_string()
            } else {
                h.coeffs().iter().map(u128::to_string).collect::<Vec<_>>().join(",")
            };
            s.push('\n');
            if count_ops {
                let _ = writeln!(s, "mul     {}", ctr.big_mul);
                let _ = writeln!(s, "add     {}", ctr.big_add);
                let _ = writeln!(s, "encode  {}", ctr.encode_entry);
                let _ = writeln!(s, "decode  {}", ctr.decode_entry);
                let _ = writeln!(s, "total   {}", ctr.total());
            }
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
