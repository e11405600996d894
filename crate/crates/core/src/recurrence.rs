//! Weighted sparse recurrences `s_n = v_1 s_{n-m_1} + ... + v_q s_{n-m_q} + δ_{n,0}`
//! and the integer tables that hold their values.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `v · s_{n-m}` of a recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub offset: usize,
    pub weight: u64,
}

/// A recurrence with strictly increasing positive offsets and positive weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    terms: Vec<Term>,
}

impl RecurrenceSpec {
    /// Builds a recurrence from `(offset, weight)` pairs.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|(offset, weight)| Term { offset, weight })
            .collect();
        if terms.is_empty() {
            return Err(Error::InvalidRecurrence(
                "at least one term is required".into(),
            ));
        }
        for t in &terms {
            if t.offset == 0 {
                return Err(Error::InvalidRecurrence("offsets must be positive".into()));
            }
            if t.weight == 0 {
                return Err(Error::InvalidRecurrence("weights must be positive".into()));
            }
        }
        if terms.windows(2).any(|w| w[0].offset >= w[1].offset) {
            return Err(Error::InvalidRecurrence(
                "offsets must be strictly increasing".into(),
            ));
        }
        Ok(Self { terms })
    }

    /// `s^{(a,b)}`: unit weights at offsets `a < b`.
    pub fn two_term(a: usize, b: usize) -> Result<Self> {
        Self::new([(a, 1), (b, 1)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms `q`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_offset(&self) -> usize {
        self.terms[0].offset
    }

    /// Same offsets, weights transformed by `f`. Used for perturbation checks.
    pub fn map_weights(&self, mut f: impl FnMut(usize, u64) -> u64) -> Result<Self> {
        Self::new(
            self.terms
                .iter()
                .enumerate()
                .map(|(i, t)| (t.offset, f(i, t.weight))),
        )
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", t.offset, t.weight)?;
        }
        Ok(())
    }
}

/// Integer sequence values indexed from `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceTable {
    start: i64,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(start: i64, values: Vec<BigInt>) -> Self {
        Self { start, values }
    }

    pub fn from_zero(values: Vec<BigInt>) -> Self {
        Self::new(0, values)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last covered index, or `start - 1` for an empty table.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        if n < self.start {
            return None;
        }
        self.values.get((n - self.start) as usize)
    }

    pub fn try_get(&self, n: i64) -> Result<&BigInt> {
        self.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            start: self.start,
            end: self.end(),
        })
    }

    /// Value at `n`, with every index below the table read as zero.
    ///
    /// Panics when `n` lies past the end of the table; callers size their
    /// tables before summing.
    pub fn term(&self, n: i64) -> BigInt {
        if n < self.start {
            return BigInt::zero();
        }
        match self.get(n) {
            Some(v) => v.clone(),
            None => panic!(
                "sequence index {n} past end of table ({}..={})",
                self.start,
                self.end()
            ),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.start + i as i64, v))
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self::new(self.start, self.values.iter().map(f).collect())
    }
}

/// `s_0..=s_N` for `spec`.
pub fn eval_sequence(spec: &RecurrenceSpec, n_max: usize) -> SequenceTable {
    let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        for t in spec.terms() {
            if t.offset <= n {
                acc += &values[n - t.offset] * t.weight;
            }
        }
        values.push(acc);
    }
    SequenceTable::from_zero(values)
}

/// `s_n^{p-r} · s_{n+1}^r`.
pub fn power_product(table: &SequenceTable, p: u32, r: u32, n: i64) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    if r >= p {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must be below p = {p}"
        )));
    }
    let here = table.try_get(n)?;
    let next = table.try_get(n + 1)?;
    Ok(num_traits::pow(here.clone(), (p - r) as usize) * num_traits::pow(next.clone(), r as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(t: &SequenceTable) -> Vec<i64> {
        t.values().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn fibonacci() {
        let spec = RecurrenceSpec::two_term(1, 2).unwrap();
        assert_eq!(ints(&eval_sequence(&spec, 5)), vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn narayana_cows() {
        let spec = RecurrenceSpec::two_term(1, 3).unwrap();
        assert_eq!(
            ints(&eval_sequence(&spec, 8)),
            vec![1, 1, 1, 2, 3, 4, 6, 9, 13]
        );
    }

    #[test]
    fn starts_at_one() {
        for spec in [
            RecurrenceSpec::new([(3, 1)]).unwrap(),
            RecurrenceSpec::new([(1, 5), (7, 2)]).unwrap(),
        ] {
            assert_eq!(eval_sequence(&spec, 0).values(), &[BigInt::one()]);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(RecurrenceSpec::new(Vec::<(usize, u64)>::new()).is_err());
        assert!(RecurrenceSpec::new([(0, 1)]).is_err());
        assert!(RecurrenceSpec::new([(1, 0)]).is_err());
        assert!(RecurrenceSpec::new([(2, 1), (2, 1)]).is_err());
        assert!(RecurrenceSpec::new([(3, 1), (2, 1)]).is_err());
    }

    #[test]
    fn power_products() {
        let fib = eval_sequence(&RecurrenceSpec::two_term(1, 2).unwrap(), 10);
        assert_eq!(power_product(&fib, 2, 0, 3).unwrap(), BigInt::from(9));
        assert_eq!(power_product(&fib, 2, 1, 1).unwrap(), BigInt::from(2));
        for n in 0..10 {
            assert_eq!(&power_product(&fib, 1, 0, n).unwrap(), fib.get(n).unwrap());
        }
        assert!(matches!(
            power_product(&fib, 2, 0, 10),
            Err(Error::IndexOutOfRange { index: 11, .. })
        ));
        assert!(power_product(&fib, 2, 2, 1).is_err());
    }

    #[test]
    fn term_reads_negative_indices_as_zero() {
        let fib = eval_sequence(&RecurrenceSpec::two_term(1, 2).unwrap(), 3);
        assert_eq!(fib.term(-4), BigInt::zero());
        assert_eq!(fib.term(3), BigInt::from(3));
    }
}
