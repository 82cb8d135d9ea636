//! Resource budget, read from a plain `key=value` file.
//!
//! ```text
//! # defaults
//! max_raw_candidates=50000000
//! max_basis_size=2000000
//! max_matrix_nnz=50000000
//! modular_threshold_nnz=5000
//! ```

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on (shape pair, hair map) candidates examined per bidegree.
    pub max_raw_candidates: u64,
    /// Upper bound on the number of classes in one slice.
    pub max_basis_size: usize,
    /// Upper bound on stored nonzeros of one assembled matrix.
    pub max_matrix_nnz: usize,
    /// Matrices with more nonzeros than this are ranked modulo primes.
    pub modular_threshold_nnz: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_raw_candidates: 50_000_000,
            max_basis_size: 2_000_000,
            max_matrix_nnz: 50_000_000,
            modular_threshold_nnz: 5000,
        }
    }
}

impl Budget {
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Budget::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            let v = v.trim();
            let num = || {
                v.replace('_', "")
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("config line {}: bad number {v:?}", n + 1)))
            };
            match k.trim() {
                "max_raw_candidates" => b.max_raw_candidates = num()?,
                "max_basis_size" => b.max_basis_size = num()? as usize,
                "max_matrix_nnz" => b.max_matrix_nnz = num()? as usize,
                "modular_threshold_nnz" => b.modular_threshold_nnz = num()? as usize,
                other => return Err(Error::Parse(format!("config line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(b)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Budget::parse(&std::fs::read_to_string(path)?)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max_raw_candidates={}", self.max_raw_candidates)?;
        writeln!(f, "max_basis_size={}", self.max_basis_size)?;
        writeln!(f, "max_matrix_nnz={}", self.max_matrix_nnz)?;
        writeln!(f, "modular_threshold_nnz={}", self.modular_threshold_nnz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_comments() {
        let b = Budget {
            max_basis_size: 7,
            ..Budget::default()
        };
        assert_eq!(Budget::parse(&b.to_string()).unwrap(), b);
        let c = Budget::parse("# tight\nmax_raw_candidates = 1_000 # inline\n").unwrap();
        assert_eq!(c.max_raw_candidates, 1000);
        assert!(Budget::parse("bogus=1").is_err());
    }
}
