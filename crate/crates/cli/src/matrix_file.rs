//! The plain-text matrix format: a line holding `n`, then `n` lines of `n`
//! whitespace-separated decimal naturals.

use std::fmt::Write;

use packmm_core::MatrixNat;

pub fn parse(text: &str) -> Result<MatrixNat, String> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or("empty matrix file")?;
    let n: usize =
        header.trim().parse().map_err(|_| format!("line 1: expected the dimension n, found {:?}", header.trim()))?;
    if n == 0 {
        return Err("line 1: dimension must be at least 1".into());
    }

    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        let (idx, line) = lines.next().ok_or_else(|| format!("expected {n} rows, found {row}"))?;
        let before = entries.len();
        for tok in line.split_whitespace() {
            entries.push(parse_natural(tok).map_err(|e| format!("line {}: {e}", idx + 1))?);
        }
        let found = entries.len() - before;
        if found != n {
            return Err(format!("line {}: row has {found} entries, expected {n}", idx + 1));
        }
    }
    if let Some((idx, _)) = lines.next() {
        return Err(format!("line {}: unexpected content after {n} rows", idx + 1));
    }
    MatrixNat::new(n, entries).map_err(|e| e.to_string())
}

pub fn parse_natural(tok: &str) -> Result<u128, String> {
    if tok.starts_with('-') {
        return Err(format!("negative entry {tok:?}"));
    }
    if !tok.bytes().all(|b| b.is_ascii_digit()) || tok.is_empty() {
        return Err(format!("not a natural number: {tok:?}"));
    }
    tok.parse().map_err(|_| format!("{tok:?} does not fit in 128 bits"))
}

pub fn render(m: &MatrixNat) -> String {
    let mut out = format!("{}\n", m.n());
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(u128::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
