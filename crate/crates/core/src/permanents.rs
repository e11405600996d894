//! Strongly restricted permutations: `P_n^W` counts permutations `π` of
//! `{1..n}` with every `π(i) - i` in `W`. It is also the permanent of the
//! (0,1) Toeplitz matrix whose diagonal `w` is nonzero iff `w ∈ W`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrence::{eval_sequence, RecurrenceSpec, SequenceTable};

pub const DEFAULT_SPAN_CAP: u32 = 20;
/// Hard ceiling on the span; the counting window is a `u128`.
pub const MAX_SPAN: u32 = 120;
/// Largest order accepted by [`permanent_ryser`].
pub const RYSER_MAX_ORDER: usize = 12;

/// Allowed displacements `π(i) - i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetSet {
    values: BTreeSet<i64>,
}

impl OffsetSet {
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        Self::with_span_cap(values, DEFAULT_SPAN_CAP)
    }

    pub fn with_span_cap<I: IntoIterator<Item = i64>>(values: I, cap: u32) -> Result<Self> {
        let values: BTreeSet<i64> = values.into_iter().collect();
        let (Some(&lo), Some(&hi)) = (values.first(), values.last()) else {
            return Err(Error::InvalidOffsetSet("W must not be empty".into()));
        };
        let span = u32::try_from(hi - lo).unwrap_or(u32::MAX);
        let cap = cap.min(MAX_SPAN);
        if span > cap {
            return Err(Error::SpanCapExceeded { span, cap });
        }
        Ok(Self { values })
    }

    pub fn min(&self) -> i64 {
        *self.values.first().unwrap()
    }

    pub fn max(&self) -> i64 {
        *self.values.last().unwrap()
    }

    pub fn span(&self) -> u32 {
        (self.max() - self.min()) as u32
    }

    pub fn contains(&self, w: i64) -> bool {
        self.values.contains(&w)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied()
    }

    /// `W^{(-1)} = { -x : x ∈ W }`.
    pub fn mirror(&self) -> Self {
        Self {
            values: self.values.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for OffsetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for OffsetSet {
    type Err = Error;

    /// Parses `-2,-1,2`, optionally wrapped in braces.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let values = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim().replace('\u{2212}', "-");
                tok.parse::<i64>()
                    .map_err(|_| Error::InvalidOffsetSet(format!("bad element {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

pub fn mirror(w: &OffsetSet) -> OffsetSet {
    w.mirror()
}

/// Dense square (0,1) matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    order: usize,
    entries: Vec<bool>,
}

impl ZeroOneMatrix {
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        Self { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| i == j)
    }

    pub fn ones(order: usize) -> Self {
        Self::from_fn(order, |_, _| true)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries[row * self.order + col]
    }

    /// Whether every diagonal is constant.
    pub fn is_toeplitz(&self) -> bool {
        (1..self.order).all(|i| (1..self.order).all(|j| self.get(i, j) == self.get(i - 1, j - 1)))
    }

    /// Offsets `j - i` of the diagonals holding at least one 1.
    pub fn nonzero_diagonals(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for i in 0..self.order {
            for j in 0..self.order {
                if self.get(i, j) {
                    out.insert(j as i64 - i as i64);
                }
            }
        }
        out
    }
}

/// Entry `(i, j)` is 1 iff `j - i ∈ W`.
pub fn toeplitz_from_w(n: usize, w: &OffsetSet) -> ZeroOneMatrix {
    ZeroOneMatrix::from_fn(n, |i, j| w.contains(j as i64 - i as i64))
}

/// Permanent by Ryser's inclusion–exclusion over column subsets.
pub fn permanent_ryser(m: &ZeroOneMatrix) -> Result<BigInt> {
    let n = m.order();
    if n > RYSER_MAX_ORDER {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: RYSER_MAX_ORDER,
        });
    }
    let row_masks: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| m.get(i, j))
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    // perm(A) = (-1)^n Σ_S (-1)^{|S|} Π_i Σ_{j∈S} a_ij
    let mut total: i128 = 0;
    for subset in 0u32..(1u32 << n) {
        let mut prod: i128 = 1;
        for &row in &row_masks {
            prod *= (row & subset).count_ones() as i128;
            if prod == 0 {
                break;
            }
        }
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(BigInt::from(total))
}

/// `P_n^W` by a transfer-matrix sweep over positions `1..=n`.
///
/// Before position `i` is assigned, bit `k` of the window records whether
/// value `i + min(W) + k` is unavailable (already taken, or below 1).
pub fn count_restricted_perms(n: usize, w: &OffsetSet) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let lo = w.min();
    let n_i = n as i64;
    let offsets: Vec<(i64, u32)> = w.iter().map(|d| (d, (d - lo) as u32)).collect();

    let mut start: u128 = 0;
    for k in 0..=w.span() {
        if 1 + lo + k as i64 <= 0 {
            start |= 1 << k;
        }
    }
    let mut states: HashMap<u128, BigInt> = HashMap::from([(start, BigInt::one())]);
    for i in 1..=n_i {
        let mut next: HashMap<u128, BigInt> = HashMap::with_capacity(states.len());
        let leaving = i + lo;
        let must_be_taken = (1..=n_i).contains(&leaving);
        for (mask, count) in &states {
            for &(d, bit) in &offsets {
                let v = i + d;
                if v < 1 || v > n_i || mask & (1 << bit) != 0 {
                    continue;
                }
                let taken = mask | (1 << bit);
                if must_be_taken && taken & 1 == 0 {
                    continue;
                }
                *next.entry(taken >> 1).or_default() += count;
            }
        }
        states = next;
    }
    states.into_values().sum()
}

/// `P_0^W..=P_N^W` in one unbounded sweep.
///
/// After `n` positions have been assigned, `P_n^W` is the weight of the
/// single window in which exactly the values `<= n` are taken.
pub fn restricted_perm_table(w: &OffsetSet, n_max: usize) -> SequenceTable {
    let lo = w.min();
    let offsets: Vec<(i64, u32)> = w.iter().map(|d| (d, (d - lo) as u32)).collect();
    // Bits k with value n + 1 + lo + k <= n, i.e. k < -lo.
    let below = (-lo).clamp(0, w.span() as i64 + 1) as u32;
    let settled: u128 = (1u128 << below) - 1;

    let mut start: u128 = 0;
    for k in 0..=w.span() {
        if 1 + lo + k as i64 <= 0 {
            start |= 1 << k;
        }
    }
    let mut values = vec![BigInt::one()];
    if lo > 0 {
        // Value 1 has no preimage and never enters the window.
        values.resize(n_max + 1, BigInt::zero());
        return SequenceTable::from_zero(values);
    }
    let mut states: HashMap<u128, BigInt> = HashMap::from([(start, BigInt::one())]);
    for i in 1..=n_max as i64 {
        let mut next: HashMap<u128, BigInt> = HashMap::with_capacity(states.len());
        let must_be_taken = i + lo >= 1;
        for (mask, count) in &states {
            for &(d, bit) in &offsets {
                if i + d < 1 || mask & (1 << bit) != 0 {
                    continue;
                }
                let taken = mask | (1 << bit);
                if must_be_taken && taken & 1 == 0 {
                    continue;
                }
                *next.entry(taken >> 1).or_default() += count;
            }
        }
        states = next;
        values.push(states.get(&settled).cloned().unwrap_or_default());
    }
    SequenceTable::from_zero(values)
}

/// `P_n^W` from `P_n = Σ_k P_{n-d_k-1} + δ_{n,0}`, valid when `-1` is the
/// only negative element of `W = {-1, d_1, ..., d_r}` and `d_r > 0`.
pub fn theorem1_sequence(w: &OffsetSet, n_max: usize) -> Result<SequenceTable> {
    if !w.contains(-1) {
        return Err(Error::InvalidOffsetSet(format!("{w} does not contain -1")));
    }
    if w.min() < -1 {
        return Err(Error::InvalidOffsetSet(format!(
            "{w} has a negative element other than -1"
        )));
    }
    if w.max() <= 0 {
        return Err(Error::InvalidOffsetSet(format!(
            "{w} needs a positive element"
        )));
    }
    let spec = RecurrenceSpec::new(w.iter().filter(|&d| d >= 0).map(|d| (d as usize + 1, 1)))?;
    Ok(eval_sequence(&spec, n_max))
}

/// `P_n = P_{n-2} + P_{n-3} + P_{n-4} - P_{n-6} + δ_{n,0} - δ_{n,2}`.
pub fn a080013_sequence(n_max: usize) -> SequenceTable {
    let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let at = |k: usize| -> BigInt {
            n.checked_sub(k)
                .map(|i| values[i].clone())
                .unwrap_or_else(BigInt::zero)
        };
        let mut v = at(2) + at(3) + at(4) - at(6);
        if n == 0 {
            v += 1;
        }
        if n == 2 {
            v -= 1;
        }
        values.push(v);
    }
    SequenceTable::from_zero(values)
}
