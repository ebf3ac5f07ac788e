use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense square matrix of naturals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRows", into = "MatrixRows")]
pub struct MatrixNat {
    n: usize,
    entries: Vec<u128>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRows {
    n: usize,
    rows: Vec<Vec<u128>>,
}

impl MatrixNat {
    pub fn new(n: usize, entries: Vec<u128>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries do not form a {n}x{n} matrix", entries.len())));
        }
        Ok(MatrixNat { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<u128>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {n} for a square matrix",
                row.len()
            )));
        }
        MatrixNat::new(n, rows.into_iter().flatten().collect())
    }

    pub fn zeros(n: usize) -> Self {
        MatrixNat { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixNat::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u128 {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u128) {
        self.entries[row * self.n + col] = value;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u128] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u128]> {
        self.entries.chunks(self.n)
    }

    pub fn row_major(&self) -> impl Iterator<Item = u128> + '_ {
        self.entries.iter().copied()
    }

    pub fn col_major(&self) -> impl Iterator<Item = u128> + '_ {
        let n = self.n;
        (0..n).flat_map(move |c| (0..n).map(move |r| self.get(r, c)))
    }

    pub fn max_entry(&self) -> u128 {
        self.entries.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<MatrixRows> for MatrixNat {
    type Error = Error;

    fn try_from(m: MatrixRows) -> Result<Self> {
        let out = MatrixNat::from_rows(m.rows)?;
        if out.n != m.n {
            return Err(Error::DimensionMismatch(format!("declared n = {} but found {} rows", m.n, out.n)));
        }
        Ok(out)
    }
}

impl From<MatrixNat> for MatrixRows {
    fn from(m: MatrixNat) -> Self {
        MatrixRows { n: m.n, rows: m.rows().map(<[u128]>::to_vec).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectorizations() {
        let m = MatrixNat::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.row_major().collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert_eq!(m.col_major().collect::<Vec<_>>(), [1, 3, 2, 4]);
        assert_eq!(m.max_entry(), 4);
    }

    #[test]
    fn shape_errors() {
        assert!(MatrixNat::from_rows(vec![vec![1, 2], vec![3]]).is_err());
        assert!(MatrixNat::from_rows(vec![vec![1, 2]]).is_err());
        assert!(MatrixNat::from_rows(vec![]).is_err());
        assert!(MatrixNat::new(2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn json_shape() {
        let m = MatrixNat::identity(2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":2,"rows":[[1,0],[0,1]]}"#);
        assert_eq!(serde_json::from_str::<MatrixNat>(&s).unwrap(), m);
        assert!(serde_json::from_str::<MatrixNat>(r#"{"n":3,"rows":[[1,0],[0,1]]}"#).is_err());
    }
}
