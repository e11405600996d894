//! OEIS b-files: one `index value` pair per line.

use std::str::FromStr;

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum BFileError {
    #[error("line {line}: expected \"index value\", got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: index {index} does not follow {previous}")]
    NotIncreasing {
        line: usize,
        index: i64,
        previous: i64,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(i64, BigInt)>,
}

impl FromStr for BFile {
    type Err = BFileError;

    fn from_str(text: &str) -> Result<Self, BFileError> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || BFileError::Malformed {
                line: i + 1,
                text: raw.to_string(),
            };
            let mut fields = line.split_whitespace();
            let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(malformed());
            };
            let n: i64 = n.parse().map_err(|_| malformed())?;
            let v: BigInt = v.parse().map_err(|_| malformed())?;
            if let Some(&(previous, _)) = entries.last() {
                if n <= previous {
                    return Err(BFileError::NotIncreasing {
                        line: i + 1,
                        index: n,
                        previous,
                    });
                }
            }
            entries.push((n, v));
        }
        Ok(Self { entries })
    }
}

impl BFile {
    pub fn max_index(&self) -> Option<i64> {
        self.entries.last().map(|e| e.0)
    }
}
