//! Side-by-side evaluation of the convolution identities relating squared
//! generalized Fibonacci numbers to permanents.
//!
//! Each identity is written out once as an explicit summation. Empty sums are
//! zero, and sequence values at negative indices are zero.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metatile::{census, comb_pair};
use crate::permanents::{restricted_perm_table, OffsetSet};
use crate::recurrence::{eval_sequence, RecurrenceSpec, SequenceTable};
use crate::tiling::{tiling_counts, TileShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "gen1")]
    Gen1,
    #[serde(rename = "sum")]
    Sum,
    #[serde(rename = "block")]
    Block,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "gen2")]
    Gen2,
    #[serde(rename = "mixed2")]
    Mixed2,
    #[serde(rename = "genc")]
    NarayanaGen,
    #[serde(rename = "genp")]
    PadovanGen,
    #[serde(rename = "cn+3")]
    NarayanaShift,
    #[serde(rename = "c3n+j")]
    NarayanaBlock,
    #[serde(rename = "c2-c")]
    NarayanaMixed,
    #[serde(rename = "p2-p")]
    PadovanMixed,
    #[serde(rename = "theorem2")]
    InterleavedCombs,
    #[serde(rename = "corollary3")]
    CombPowers,
    #[serde(rename = "mu-h")]
    MuHalfSquares,
    #[serde(rename = "mu-cc")]
    MuCombPair,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Gen1 => "gen1",
            IdentityId::Sum => "sum",
            IdentityId::Block => "block",
            IdentityId::Mixed => "mixed",
            IdentityId::Gen2 => "gen2",
            IdentityId::Mixed2 => "mixed2",
            IdentityId::NarayanaGen => "genc",
            IdentityId::PadovanGen => "genp",
            IdentityId::NarayanaShift => "cn+3",
            IdentityId::NarayanaBlock => "c3n+j",
            IdentityId::NarayanaMixed => "c2-c",
            IdentityId::PadovanMixed => "p2-p",
            IdentityId::InterleavedCombs => "theorem2",
            IdentityId::CombPowers => "corollary3",
            IdentityId::MuHalfSquares => "mu-h",
            IdentityId::MuCombPair => "mu-cc",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<String>,
    pub n_min: i64,
    pub n_max: i64,
}

impl Params {
    fn range(n_min: i64, n_max: i64) -> Self {
        Self {
            n_min,
            n_max,
            ..Default::default()
        }
    }

    fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    fn with_p(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }

    fn with_terms(mut self, spec: &RecurrenceSpec) -> Self {
        self.terms = Some(spec.to_string());
        self
    }

    /// Compact `m=1 j=0 n=0..30` form for tables.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(t) = &self.terms {
            parts.push(format!("terms={t}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(j) = self.j {
            parts.push(format!("j={j}"));
        }
        parts.push(format!("n={}..{}", self.n_min, self.n_max));
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed {
        n: i64,
        lhs: BigInt,
        rhs: BigInt,
        note: Option<String>,
    },
}

/// Both sides of an identity at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub n: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: Params,
    pub status: Status,
    pub elapsed: Duration,
}

impl IdentityReport {
    fn from_sides(identity: IdentityId, params: Params, sides: &[Sides], started: Instant) -> Self {
        let status = match sides.iter().find(|s| s.lhs != s.rhs) {
            None => Status::Verified,
            Some(s) => Status::Failed {
                n: s.n,
                lhs: s.lhs.clone(),
                rhs: s.rhs.clone(),
                note: None,
            },
        };
        Self {
            identity,
            params,
            status,
            elapsed: started.elapsed(),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// The report as a JSON object. Timings are left out unless asked for,
    /// so repeated runs serialize identically.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = json!({
            "identity": self.identity.name(),
            "params": self.params,
        });
        match &self.status {
            Status::Verified => {
                v["status"] = json!("verified");
            }
            Status::Failed { n, lhs, rhs, note } => {
                v["status"] = json!("failed");
                v["n"] = json!(n);
                v["lhs"] = json!(lhs.to_string());
                v["rhs"] = json!(rhs.to_string());
                if let Some(note) = note {
                    v["note"] = json!(note);
                }
            }
        }
        if with_timing {
            v["elapsed_ms"] = json!(self.elapsed.as_secs_f64() * 1e3);
        }
        v
    }

    pub fn status_text(&self) -> String {
        match &self.status {
            Status::Verified => "verified".to_string(),
            Status::Failed { n, lhs, rhs, note } => {
                let mut s = format!("failed at n={n}: lhs={lhs} rhs={rhs}");
                if let Some(note) = note {
                    s.push_str(&format!(" ({note})"));
                }
                s
            }
        }
    }
}

fn sq(t: &SequenceTable, i: i64) -> BigInt {
    let v = t.term(i);
    &v * &v
}

fn delta(a: i64, b: i64) -> BigInt {
    if a == b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn offsets(values: &[i64]) -> OffsetSet {
    OffsetSet::new(values.iter().copied()).expect("small fixed offset sets are valid")
}

/// `s^{(1,m+2)}` together with `P^{{-2,-1,m}}`.
#[derive(Debug, Clone)]
pub struct HalfSquareFamily {
    pub m: usize,
    pub s: SequenceTable,
    pub perm: SequenceTable,
}

impl HalfSquareFamily {
    pub fn new(m: usize, max_index: usize) -> Self {
        let spec = RecurrenceSpec::two_term(1, m + 2).expect("1 < m + 2");
        Self {
            m,
            s: eval_sequence(&spec, max_index),
            perm: restricted_perm_table(&offsets(&[-2, -1, m as i64]), max_index),
        }
    }
}

/// `s^{(m+1,m+2)}` together with `P^{{-2,m-1,m}}`, for `m >= 1`.
#[derive(Debug, Clone)]
pub struct CombPairFamily {
    pub m: usize,
    pub s: SequenceTable,
    pub perm: SequenceTable,
}

impl CombPairFamily {
    pub fn new(m: usize, max_index: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "the comb-pair family needs m >= 1".into(),
            ));
        }
        let spec = RecurrenceSpec::two_term(m + 1, m + 2)?;
        Ok(Self {
            m,
            s: eval_sequence(&spec, max_index),
            perm: restricted_perm_table(&offsets(&[-2, m as i64 - 1, m as i64]), max_index),
        })
    }
}

/// `s_n² = δ_{n,0} + s_{n-1}² + s_{n-m-2}² + 2 Σ_{l=m+2}^{n} P_{l-1} s_{n-l}²`
pub fn gen1_sides(m: usize, s: &SequenceTable, perm: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let m = m as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = delta(n, 0) + sq(s, n - 1) + sq(s, n - m - 2);
            let mut acc = BigInt::zero();
            for l in m + 2..=n {
                acc += perm.term(l - 1) * sq(s, n - l);
            }
            rhs += acc * 2;
            Sides {
                n,
                lhs: sq(s, n),
                rhs,
            }
        })
        .collect()
}

/// `s_{n+m+2}² - 1 = Σ_{k=0}^{n} { s_k² + 2 Σ_{i=0}^{k} P_{k+m+1-i} s_i² }`
pub fn sum_sides(m: usize, s: &SequenceTable, perm: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let m = m as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = BigInt::zero();
            for k in 0..=n {
                let mut inner = BigInt::zero();
                for i in 0..=k {
                    inner += perm.term(k + m + 1 - i) * sq(s, i);
                }
                rhs += sq(s, k) + inner * 2;
            }
            Sides {
                n,
                lhs: sq(s, n + m + 2) - 1,
                rhs,
            }
        })
        .collect()
}

/// `s_{n(m+2)+j}² = δ_{j,0} + (1-δ_{j,0}) s_{j-1}²
///   + Σ_{k=1}^{n} { s_{k(m+2)+j-1}² + 2 Σ_{i=0}^{(k-1)(m+2)+j} P_{k(m+2)+j-1-i} s_i² }`
///
/// The reported `n` is the block count.
pub fn block_sides(
    m: usize,
    j: usize,
    s: &SequenceTable,
    perm: &SequenceTable,
    n_max: usize,
) -> Vec<Sides> {
    let (m, j) = (m as i64, j as i64);
    let period = m + 2;
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = delta(j, 0);
            if j != 0 {
                rhs += sq(s, j - 1);
            }
            for k in 1..=n {
                let mut inner = BigInt::zero();
                for i in 0..=(k - 1) * period + j {
                    inner += perm.term(k * period + j - 1 - i) * sq(s, i);
                }
                rhs += sq(s, k * period + j - 1) + inner * 2;
            }
            Sides {
                n,
                lhs: sq(s, n * period + j),
                rhs,
            }
        })
        .collect()
}

/// `s_n² = s_n + 2 Σ_{k=0}^{n-m-2} Σ_{r=m+2}^{n-k} P_{r-1} s_k s_{n-k-r}²`
pub fn mixed_sides(m: usize, s: &SequenceTable, perm: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let m = m as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for k in 0..=n - m - 2 {
                for r in m + 2..=n - k {
                    acc += perm.term(r - 1) * s.term(k) * sq(s, n - k - r);
                }
            }
            Sides {
                n,
                lhs: sq(s, n),
                rhs: s.term(n) + acc * 2,
            }
        })
        .collect()
}

/// `s_n² = δ_{n,0} + s_{n-m-1}² + s_{n-m-2}² + 2 Σ_{l=2m+3}^{n} P_{l-2m-3} s_{n-l}²`
pub fn gen2_sides(m: usize, s: &SequenceTable, perm: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let m = m as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = delta(n, 0) + sq(s, n - m - 1) + sq(s, n - m - 2);
            let mut acc = BigInt::zero();
            for l in 2 * m + 3..=n {
                acc += perm.term(l - 2 * m - 3) * sq(s, n - l);
            }
            rhs += acc * 2;
            Sides {
                n,
                lhs: sq(s, n),
                rhs,
            }
        })
        .collect()
}

/// `s_n² = s_n + 2 Σ_{k=0}^{n-2m-3} Σ_{r=2m+3}^{n-k} P_{r-2m-3} s_k s_{n-k-r}²`
pub fn mixed2_sides(m: usize, s: &SequenceTable, perm: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let m = m as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for k in 0..=n - 2 * m - 3 {
                for r in 2 * m + 3..=n - k {
                    acc += perm.term(r - 2 * m - 3) * s.term(k) * sq(s, n - k - r);
                }
            }
            Sides {
                n,
                lhs: sq(s, n),
                rhs: s.term(n) + acc * 2,
            }
        })
        .collect()
}

pub fn verify_identity_gen1(m: usize, n_max: usize) -> IdentityReport {
    let t = Instant::now();
    let fam = HalfSquareFamily::new(m, n_max);
    let sides = gen1_sides(m, &fam.s, &fam.perm, n_max);
    IdentityReport::from_sides(
        IdentityId::Gen1,
        Params::range(0, n_max as i64).with_m(m),
        &sides,
        t,
    )
}

pub fn verify_identity_sum(m: usize, n_max: usize) -> IdentityReport {
    let t = Instant::now();
    let fam = HalfSquareFamily::new(m, n_max + m + 2);
    let sides = sum_sides(m, &fam.s, &fam.perm, n_max);
    IdentityReport::from_sides(
        IdentityId::Sum,
        Params::range(0, n_max as i64).with_m(m),
        &sides,
        t,
    )
}

pub fn verify_identity_block(m: usize, j: usize, n_max: usize) -> Result<IdentityReport> {
    if j > m + 1 {
        return Err(Error::InvalidArgument(format!(
            "j = {j} must lie in 0..={}",
            m + 1
        )));
    }
    let t = Instant::now();
    let fam = HalfSquareFamily::new(m, n_max * (m + 2) + j);
    let sides = block_sides(m, j, &fam.s, &fam.perm, n_max);
    Ok(IdentityReport::from_sides(
        IdentityId::Block,
        Params::range(0, n_max as i64).with_m(m).with_j(j),
        &sides,
        t,
    ))
}

pub fn verify_identity_mixed(m: usize, n_max: usize) -> IdentityReport {
    let t = Instant::now();
    let fam = HalfSquareFamily::new(m, n_max);
    let sides = mixed_sides(m, &fam.s, &fam.perm, n_max);
    IdentityReport::from_sides(
        IdentityId::Mixed,
        Params::range(0, n_max as i64).with_m(m),
        &sides,
        t,
    )
}

pub fn verify_identity_gen2(m: usize, n_max: usize) -> Result<IdentityReport> {
    let t = Instant::now();
    let fam = CombPairFamily::new(m, n_max)?;
    let sides = gen2_sides(m, &fam.s, &fam.perm, n_max);
    Ok(IdentityReport::from_sides(
        IdentityId::Gen2,
        Params::range(0, n_max as i64).with_m(m),
        &sides,
        t,
    ))
}

pub fn verify_identity_mixed2(m: usize, n_max: usize) -> Result<IdentityReport> {
    let t = Instant::now();
    let fam = CombPairFamily::new(m, n_max)?;
    let sides = mixed2_sides(m, &fam.s, &fam.perm, n_max);
    Ok(IdentityReport::from_sides(
        IdentityId::Mixed2,
        Params::range(0, n_max as i64).with_m(m),
        &sides,
        t,
    ))
}

/// Narayana's cows `c_n` (lags 1, 3) and Padovan `p_n` (lags 2, 3).
pub fn narayana_padovan_tables(max_index: usize) -> (SequenceTable, SequenceTable) {
    let c = eval_sequence(&RecurrenceSpec::two_term(1, 3).unwrap(), max_index);
    let p = eval_sequence(&RecurrenceSpec::two_term(2, 3).unwrap(), max_index);
    (c, p)
}

/// `c_n² = δ_{n,0} + c_{n-1}² + c_{n-3}² + 2 Σ_{l=3}^{n} p_{l-1} c_{n-l}²`
pub fn genc_sides(c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for l in 3..=n {
                acc += p.term(l - 1) * sq(c, n - l);
            }
            Sides {
                n,
                lhs: sq(c, n),
                rhs: delta(n, 0) + sq(c, n - 1) + sq(c, n - 3) + acc * 2,
            }
        })
        .collect()
}

/// `p_n² = δ_{n,0} + p_{n-2}² + p_{n-3}² + 2 Σ_{l=5}^{n} c_{l-5} p_{n-l}²`
pub fn genp_sides(c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for l in 5..=n {
                acc += c.term(l - 5) * sq(p, n - l);
            }
            Sides {
                n,
                lhs: sq(p, n),
                rhs: delta(n, 0) + sq(p, n - 2) + sq(p, n - 3) + acc * 2,
            }
        })
        .collect()
}

/// `c_{n+3}² - 1 = Σ_{k=0}^{n} { c_k² + 2 Σ_{i=0}^{k} p_{k+2-i} c_i² }`
pub fn cn3_sides(c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = BigInt::zero();
            for k in 0..=n {
                let mut inner = BigInt::zero();
                for i in 0..=k {
                    inner += p.term(k + 2 - i) * sq(c, i);
                }
                rhs += sq(c, k) + inner * 2;
            }
            Sides {
                n,
                lhs: sq(c, n + 3) - 1,
                rhs,
            }
        })
        .collect()
}

/// `c_{3n+j}² = δ_{j,0} + (1-δ_{j,0}) c_{j-1}² + Σ_{k=1}^{n} { c_{3k+j-1}² + 2 Σ_{i=0}^{3(k-1)+j} p_{3k+j-1-i} c_i² }`
pub fn c3nj_sides(j: usize, c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    let j = j as i64;
    (0..=n_max as i64)
        .map(|n| {
            let mut rhs = if j == 0 { BigInt::one() } else { sq(c, j - 1) };
            for k in 1..=n {
                let mut inner = BigInt::zero();
                for i in 0..=3 * (k - 1) + j {
                    inner += p.term(3 * k + j - 1 - i) * sq(c, i);
                }
                rhs += sq(c, 3 * k + j - 1) + inner * 2;
            }
            Sides {
                n,
                lhs: sq(c, 3 * n + j),
                rhs,
            }
        })
        .collect()
}

/// `c_n² = c_n + 2 Σ_{k=0}^{n-3} Σ_{r=3}^{n-k} p_{r-1} c_k c_{n-k-r}²`
pub fn c2c_sides(c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for k in 0..=n - 3 {
                for r in 3..=n - k {
                    acc += p.term(r - 1) * c.term(k) * sq(c, n - k - r);
                }
            }
            Sides {
                n,
                lhs: sq(c, n),
                rhs: c.term(n) + acc * 2,
            }
        })
        .collect()
}

/// `p_n² = p_n + 2 Σ_{k=0}^{n-5} Σ_{r=5}^{n-k} c_{r-5} p_k p_{n-k-r}²`
pub fn p2p_sides(c: &SequenceTable, p: &SequenceTable, n_max: usize) -> Vec<Sides> {
    (0..=n_max as i64)
        .map(|n| {
            let mut acc = BigInt::zero();
            for k in 0..=n - 5 {
                for r in 5..=n - k {
                    acc += c.term(r - 5) * p.term(k) * sq(p, n - k - r);
                }
            }
            Sides {
                n,
                lhs: sq(p, n),
                rhs: p.term(n) + acc * 2,
            }
        })
        .collect()
}

/// The six `m = 1` identities for `c_n` and `p_n`, evaluated from their own
/// tables and compared value by value with the general-`m` evaluators at
/// `m = 1`. A report fails if either its identity fails or any side value
/// differs from the general form.
pub fn verify_narayana_padovan(n_max: usize) -> Vec<IdentityReport> {
    let (c, p) = narayana_padovan_tables(3 * n_max + 3);
    let first = HalfSquareFamily::new(1, 3 * n_max + 3);
    let second = CombPairFamily::new(1, n_max).expect("m = 1");

    type Job<'a> = (
        IdentityId,
        Option<usize>,
        Box<dyn Fn() -> (Vec<Sides>, Vec<Sides>) + Sync + 'a>,
    );
    let jobs: Vec<Job> = vec![
        (
            IdentityId::NarayanaGen,
            None,
            Box::new(|| {
                (
                    genc_sides(&c, &p, n_max),
                    gen1_sides(1, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::PadovanGen,
            None,
            Box::new(|| {
                (
                    genp_sides(&c, &p, n_max),
                    gen2_sides(1, &second.s, &second.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::NarayanaShift,
            None,
            Box::new(|| {
                (
                    cn3_sides(&c, &p, n_max),
                    sum_sides(1, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::NarayanaBlock,
            Some(0),
            Box::new(|| {
                (
                    c3nj_sides(0, &c, &p, n_max),
                    block_sides(1, 0, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::NarayanaBlock,
            Some(1),
            Box::new(|| {
                (
                    c3nj_sides(1, &c, &p, n_max),
                    block_sides(1, 1, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::NarayanaBlock,
            Some(2),
            Box::new(|| {
                (
                    c3nj_sides(2, &c, &p, n_max),
                    block_sides(1, 2, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::NarayanaMixed,
            None,
            Box::new(|| {
                (
                    c2c_sides(&c, &p, n_max),
                    mixed_sides(1, &first.s, &first.perm, n_max),
                )
            }),
        ),
        (
            IdentityId::PadovanMixed,
            None,
            Box::new(|| {
                (
                    p2p_sides(&c, &p, n_max),
                    mixed2_sides(1, &second.s, &second.perm, n_max),
                )
            }),
        ),
    ];
    jobs.into_iter()
        .map(|(id, j, job)| {
            let t = Instant::now();
            let (own, general) = job();
            let mut params = Params::range(0, n_max as i64);
            if let Some(j) = j {
                params = params.with_j(j);
            }
            let mut report = IdentityReport::from_sides(id, params, &own, t);
            if report.is_verified() {
                if let Some((a, b)) = own.iter().zip(&general).find(|(a, b)| a != b) {
                    report.status = Status::Failed {
                        n: a.n,
                        lhs: a.lhs.clone(),
                        rhs: b.lhs.clone(),
                        note: Some(format!(
                            "general form at m=1 gives lhs={} rhs={}, standalone gives lhs={} rhs={}",
                            b.lhs, b.rhs, a.lhs, a.rhs
                        )),
                    };
                }
            }
            report
        })
        .collect()
}

/// `(1, p-1; m_i)`-combs on a one-slot board, `v_i` colours each.
pub fn unit_combs(spec: &RecurrenceSpec, p: usize) -> Result<Vec<TileShape>> {
    spec.terms()
        .iter()
        .map(|t| {
            Ok(TileShape::comb(1, 1, p - 1, t.offset)?
                .with_colors(t.weight as u32)?
                .with_label(format!("m{}", t.offset)))
        })
        .collect()
}

/// `(1/p, 1-1/p; m_i)`-combs at resolution `p`, `v_i` colours each.
pub fn slot_combs(spec: &RecurrenceSpec, p: usize) -> Result<Vec<TileShape>> {
    spec.terms()
        .iter()
        .map(|t| {
            Ok(TileShape::comb(p, 1, p - 1, t.offset)?
                .with_colors(t.weight as u32)?
                .with_label(format!("m{}", t.offset)))
        })
        .collect()
}

fn check_weights(spec: &RecurrenceSpec) -> Result<()> {
    if spec.terms().iter().any(|t| t.weight > u32::MAX as u64) {
        return Err(Error::InvalidArgument(
            "colour counts must fit in 32 bits".into(),
        ));
    }
    Ok(())
}

/// Tilings of a `(pn+r)`-board by `(1,p-1;m_i)`-combs against
/// `s_n^{p-r} s_{n+1}^r`, for `0 <= n <= n_max` and every `r < p`. The
/// reported `n` of a failure is the board length `pn+r`.
pub fn verify_theorem2(spec: &RecurrenceSpec, p: usize, n_max: usize) -> Result<IdentityReport> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    check_weights(spec)?;
    let t = Instant::now();
    let tiles = unit_combs(spec, p)?;
    let counts = tiling_counts(p * (n_max + 1) - 1, &tiles, 1)?;
    let s = eval_sequence(spec, n_max + 1);
    let mut sides = Vec::new();
    for n in 0..=n_max {
        for r in 0..p {
            let len = p * n + r;
            let rhs =
                num_traits::pow(s.term(n as i64), p - r) * num_traits::pow(s.term(n as i64 + 1), r);
            sides.push(Sides {
                n: len as i64,
                lhs: counts[len].clone(),
                rhs,
            });
        }
    }
    Ok(IdentityReport::from_sides(
        IdentityId::InterleavedCombs,
        Params::range(0, n_max as i64).with_p(p).with_terms(spec),
        &sides,
        t,
    ))
}

/// Tilings of an `n`-board by `(1/p,1-1/p;m_i)`-combs against `s_n^p`.
pub fn verify_corollary3(spec: &RecurrenceSpec, p: usize, n_max: usize) -> Result<IdentityReport> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    check_weights(spec)?;
    let t = Instant::now();
    let tiles = slot_combs(spec, p)?;
    let counts = tiling_counts(n_max, &tiles, p)?;
    let s = eval_sequence(spec, n_max);
    let sides: Vec<Sides> = (0..=n_max)
        .map(|n| Sides {
            n: n as i64,
            lhs: counts[n].clone(),
            rhs: num_traits::pow(s.term(n as i64), p),
        })
        .collect();
    Ok(IdentityReport::from_sides(
        IdentityId::CombPowers,
        Params::range(0, n_max as i64).with_p(p).with_terms(spec),
        &sides,
        t,
    ))
}

/// Mixed metatiles of half-squares and `(1/2,1/2;m+2)`-combs against
/// `2 P_{l-1}^{{-2,-1,m}}` for `2 <= l <= l_max`.
pub fn verify_mu_half_squares(m: usize, l_max: usize) -> Result<IdentityReport> {
    let t = Instant::now();
    let c = census(&comb_pair(1, m + 2)?, 2, l_max)?;
    let perm = restricted_perm_table(&offsets(&[-2, -1, m as i64]), l_max);
    let sides: Vec<Sides> = (2..=l_max)
        .map(|l| Sides {
            n: l as i64,
            lhs: c.mixed(l),
            rhs: perm.term(l as i64 - 1) * 2,
        })
        .collect();
    Ok(IdentityReport::from_sides(
        IdentityId::MuHalfSquares,
        Params::range(2, l_max as i64).with_m(m),
        &sides,
        t,
    ))
}

/// Mixed metatiles of `(1/2,1/2;m+1)`- and `(1/2,1/2;m+2)`-combs against
/// `2 P_{l-2m-3}^{{-2,m-1,m}}` for `2m+3 <= l <= l_max`.
pub fn verify_mu_comb_pair(m: usize, l_max: usize) -> Result<IdentityReport> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "the comb-pair family needs m >= 1".into(),
        ));
    }
    let t = Instant::now();
    let c = census(&comb_pair(m + 1, m + 2)?, 2, l_max)?;
    let perm = restricted_perm_table(&offsets(&[-2, m as i64 - 1, m as i64]), l_max);
    let lo = 2 * m + 3;
    let sides: Vec<Sides> = (lo..=l_max)
        .map(|l| Sides {
            n: l as i64,
            lhs: c.mixed(l),
            rhs: perm.term((l - lo) as i64) * 2,
        })
        .collect();
    Ok(IdentityReport::from_sides(
        IdentityId::MuCombPair,
        Params::range(lo as i64, l_max as i64).with_m(m),
        &sides,
        t,
    ))
}

/// Both metatile counting laws. The half-square family is checked for
/// `m = 0..=m_max` and `2 <= l <= l_max`; the comb-pair family for
/// `m = 1..=m_max` and `2m+3 <= l <= 2m + l_max`, so each covers the same
/// number of lengths past its first mixed metatile.
pub fn verify_mu_theorems(m_max: usize, l_max: usize) -> Result<Vec<IdentityReport>> {
    let mut jobs: Vec<(bool, usize)> = (0..=m_max).map(|m| (true, m)).collect();
    jobs.extend((1..=m_max).map(|m| (false, m)));
    jobs.par_iter()
        .map(|&(half, m)| {
            if half {
                verify_mu_half_squares(m, l_max)
            } else {
                verify_mu_comb_pair(m, 2 * m + l_max)
            }
        })
        .collect()
}

/// Parameter ranges for [`verify_all`].
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub m_max: usize,
    pub narayana_padovan_n_max: usize,
    pub mu_m_max: usize,
    pub l_max: usize,
    pub tiling_n_max: usize,
    pub interleaved_n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 30,
            m_max: 4,
            narayana_padovan_n_max: 40,
            mu_m_max: 3,
            l_max: 15,
            tiling_n_max: 10,
            interleaved_n_max: 6,
        }
    }
}

/// Recurrences used for the comb-tiling checks.
pub fn default_specs() -> Vec<RecurrenceSpec> {
    [
        [(1, 1), (2, 1)],
        [(1, 1), (3, 1)],
        [(2, 1), (3, 1)],
        [(1, 2), (2, 1)],
    ]
    .into_iter()
    .map(|t| RecurrenceSpec::new(t).expect("fixed specs are valid"))
    .collect()
}

/// Every check, in a fixed order regardless of how the work is scheduled.
pub fn verify_all(cfg: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    type Job = Box<dyn Fn() -> Result<Vec<IdentityReport>> + Send + Sync>;
    let mut jobs: Vec<Job> = Vec::new();
    let n = cfg.n_max;
    for m in 0..=cfg.m_max {
        jobs.push(Box::new(move || Ok(vec![verify_identity_gen1(m, n)])));
        jobs.push(Box::new(move || Ok(vec![verify_identity_sum(m, n)])));
        for j in 0..=m + 1 {
            jobs.push(Box::new(move || Ok(vec![verify_identity_block(m, j, n)?])));
        }
        jobs.push(Box::new(move || Ok(vec![verify_identity_mixed(m, n)])));
    }
    for m in 1..=cfg.m_max.max(1) {
        jobs.push(Box::new(move || Ok(vec![verify_identity_gen2(m, n)?])));
        jobs.push(Box::new(move || Ok(vec![verify_identity_mixed2(m, n)?])));
    }
    let np = cfg.narayana_padovan_n_max;
    jobs.push(Box::new(move || Ok(verify_narayana_padovan(np))));
    let (tn, inn) = (cfg.tiling_n_max, cfg.interleaved_n_max);
    for spec in default_specs() {
        let s2 = spec.clone();
        jobs.push(Box::new(move || Ok(vec![verify_corollary3(&s2, 2, tn)?])));
        jobs.push(Box::new(move || Ok(vec![verify_theorem2(&spec, 2, inn)?])));
    }
    jobs.push(Box::new(|| {
        Ok(vec![verify_corollary3(
            &RecurrenceSpec::two_term(1, 2)?,
            3,
            7,
        )?])
    }));
    let (mm, lm) = (cfg.mu_m_max, cfg.l_max);
    jobs.push(Box::new(move || verify_mu_theorems(mm, lm)));

    let batches: Vec<Result<Vec<IdentityReport>>> = jobs.par_iter().map(|job| job()).collect();
    let mut out = Vec::new();
    for b in batches {
        out.extend(b?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(sides: &[Sides], n: i64) -> (i64, i64) {
        let s = sides.iter().find(|s| s.n == n).unwrap();
        ((&s.lhs).try_into().unwrap(), (&s.rhs).try_into().unwrap())
    }

    #[test]
    fn worked_values_first_family() {
        let fam = HalfSquareFamily::new(1, 20);
        assert_eq!(at(&gen1_sides(1, &fam.s, &fam.perm, 5), 3), (4, 4));
        assert_eq!(at(&sum_sides(1, &fam.s, &fam.perm, 3), 0), (3, 3));
        assert_eq!(at(&block_sides(1, 1, &fam.s, &fam.perm, 2), 1), (9, 9));
        assert_eq!(at(&block_sides(1, 0, &fam.s, &fam.perm, 2), 0), (1, 1));
        assert_eq!(at(&mixed_sides(1, &fam.s, &fam.perm, 5), 3), (4, 4));
        for m in 0..4 {
            let fam = HalfSquareFamily::new(m, 4);
            assert_eq!(at(&gen1_sides(m, &fam.s, &fam.perm, 0), 0), (1, 1));
            assert_eq!(at(&mixed_sides(m, &fam.s, &fam.perm, 0), 0), (1, 1));
        }
    }

    #[test]
    fn worked_values_second_family() {
        let fam = CombPairFamily::new(1, 10).unwrap();
        assert_eq!(at(&gen2_sides(1, &fam.s, &fam.perm, 6), 5), (4, 4));
        assert_eq!(at(&mixed2_sides(1, &fam.s, &fam.perm, 6), 5), (4, 4));
        assert_eq!(at(&gen2_sides(1, &fam.s, &fam.perm, 6), 0), (1, 1));
        assert!(CombPairFamily::new(0, 5).is_err());
    }

    #[test]
    fn degenerate_range_of_mixed_identities() {
        // Before the first mixed metatile fits, s_n² = s_n forces s_n ∈ {0, 1}.
        for m in 1..=4 {
            let fam = CombPairFamily::new(m, 2 * m + 3).unwrap();
            for s in mixed2_sides(m, &fam.s, &fam.perm, 2 * m + 2) {
                assert_eq!(s.lhs, s.rhs);
                assert!(s.lhs <= BigInt::one());
            }
        }
        for m in 0..=4 {
            let fam = HalfSquareFamily::new(m, m + 2);
            for s in mixed_sides(m, &fam.s, &fam.perm, m + 1) {
                assert_eq!(s.lhs, BigInt::one());
                assert_eq!(s.rhs, BigInt::one());
            }
        }
    }

    #[test]
    fn narayana_padovan_worked_values() {
        let (c, p) = narayana_padovan_tables(20);
        assert_eq!(at(&genc_sides(&c, &p, 5), 3), (4, 4));
        assert_eq!(at(&genp_sides(&c, &p, 5), 0), (1, 1));
        assert_eq!(at(&c3nj_sides(0, &c, &p, 3), 1), (4, 4));
    }

    #[test]
    fn perturbed_recurrence_is_caught() {
        let m = 1;
        let good = HalfSquareFamily::new(m, 20);
        let bumped = RecurrenceSpec::two_term(1, m + 2)
            .unwrap()
            .map_weights(|i, w| if i == 0 { w + 1 } else { w })
            .unwrap();
        let s = eval_sequence(&bumped, 20);
        let sides = gen1_sides(m, &s, &good.perm, 20);
        let first_bad = sides.iter().find(|s| s.lhs != s.rhs).unwrap();
        assert_eq!(first_bad.n, 1);
        let report = IdentityReport::from_sides(
            IdentityId::Gen1,
            Params::range(0, 20),
            &sides,
            Instant::now(),
        );
        assert!(matches!(report.status, Status::Failed { n: 1, .. }));
    }

    #[test]
    fn block_rejects_bad_j() {
        assert!(verify_identity_block(1, 3, 5).is_err());
        assert!(verify_identity_block(1, 2, 5).unwrap().is_verified());
    }

    #[test]
    fn json_shape() {
        let r = verify_identity_gen1(1, 5);
        let v = r.to_json(false);
        assert_eq!(v["identity"], "gen1");
        assert_eq!(v["status"], "verified");
        assert_eq!(v["params"]["m"], 1);
        assert!(v.get("elapsed_ms").is_none());
        assert!(r.to_json(true).get("elapsed_ms").is_some());
    }
}
