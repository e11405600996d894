//! Metatiles: minimal groupings of tiles that exactly cover a whole number of
//! cells. The census walks the slot frontier from an empty board until it is
//! flush again at a cell boundary.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrence::SequenceTable;
use crate::tiling::TileShape;

/// Metatile counts by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetatileCensus {
    pub tiles: String,
    pub l_max: usize,
    /// Length → (all metatiles, mixed metatiles). Every length in `1..=l_max` is present.
    pub counts: BTreeMap<usize, (BigInt, BigInt)>,
}

impl MetatileCensus {
    pub fn total(&self, l: usize) -> BigInt {
        self.counts.get(&l).map(|c| c.0.clone()).unwrap_or_default()
    }

    pub fn mixed(&self, l: usize) -> BigInt {
        self.counts.get(&l).map(|c| c.1.clone()).unwrap_or_default()
    }

    /// `A_0..=A_n` rebuilt by appending metatiles: `A_n = Σ_l total(l) A_{n-l}`.
    pub fn convolve(&self, n_max: usize) -> Vec<BigInt> {
        let mut a: Vec<BigInt> = vec![BigInt::one()];
        for n in 1..=n_max {
            let v = (1..=n.min(self.l_max))
                .map(|l| self.total(l) * &a[n - l])
                .sum();
            a.push(v);
        }
        a
    }
}

fn describe(tiles: &[TileShape]) -> String {
    let parts: Vec<&str> = tiles.iter().map(TileShape::label).collect();
    parts.join(",")
}

fn check_tiles(tiles: &[TileShape], p: usize) -> Result<()> {
    for t in tiles {
        if t.resolution() != p {
            return Err(Error::MixedResolution {
                expected: p,
                found: t.resolution(),
            });
        }
    }
    Ok(())
}

/// Counts metatiles of each length up to `l_max`, and how many of them use
/// at least two distinct tile labels.
pub fn census(tiles: &[TileShape], p: usize, l_max: usize) -> Result<MetatileCensus> {
    if p == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    check_tiles(tiles, p)?;
    let mut label_ids: BTreeMap<&str, u32> = BTreeMap::new();
    for t in tiles {
        let next = label_ids.len() as u32;
        label_ids.entry(t.label()).or_insert(next);
    }
    if label_ids.len() > 64 {
        return Err(Error::InvalidArgument(
            "at most 64 distinct tile labels".into(),
        ));
    }
    let label_bits: Vec<u64> = tiles.iter().map(|t| 1u64 << label_ids[t.label()]).collect();
    let footprints: Vec<u128> = tiles.iter().map(TileShape::footprint).collect();

    let mut counts: BTreeMap<usize, (BigInt, BigInt)> =
        (1..=l_max).map(|l| (l, Default::default())).collect();
    // (occupancy from the current slot on, labels used so far) → weight
    let mut frontier: HashMap<(u128, u64), BigInt> = HashMap::from([((0, 0), BigInt::one())]);
    for pos in 0..l_max * p {
        let mut next: HashMap<(u128, u64), BigInt> = HashMap::with_capacity(frontier.len());
        for ((mask, used), weight) in frontier {
            if mask & 1 == 1 {
                *next.entry((mask >> 1, used)).or_default() += weight;
                continue;
            }
            for (k, tile) in tiles.iter().enumerate() {
                let fp = footprints[k];
                if !tile.fits_residue(pos % p) || mask & fp != 0 {
                    continue;
                }
                *next
                    .entry(((mask | fp) >> 1, used | label_bits[k]))
                    .or_default() += &weight * tile.colors();
            }
        }
        let reached = pos + 1;
        if reached % p == 0 {
            let l = reached / p;
            let flush: Vec<(u128, u64)> = next.keys().filter(|k| k.0 == 0).copied().collect();
            for key in flush {
                let weight = next.remove(&key).unwrap();
                let entry = counts.get_mut(&l).unwrap();
                if key.1.count_ones() >= 2 {
                    entry.1 += &weight;
                }
                entry.0 += weight;
            }
        }
        frontier = next;
    }
    Ok(MetatileCensus {
        tiles: describe(tiles),
        l_max,
        counts,
    })
}

/// The `(1/2,1/2;m1)`- and `(1/2,1/2;m2)`-combs, labelled `h`/`c` and `C`.
pub fn comb_pair(m1: usize, m2: usize) -> Result<Vec<TileShape>> {
    if m1 == 0 || m1 >= m2 {
        return Err(Error::InvalidArgument(format!(
            "comb sizes must satisfy 1 <= m1 < m2 (got {m1}, {m2})"
        )));
    }
    let small = if m1 == 1 { "h" } else { "c" };
    Ok(vec![
        TileShape::half_comb(m1)?.with_label(small),
        TileShape::half_comb(m2)?.with_label("C"),
    ])
}

/// `μ_0..=μ_{l_max}`: mixed metatiles by length for a comb pair.
pub fn mu(m1: usize, m2: usize, l_max: usize) -> Result<SequenceTable> {
    let c = census(&comb_pair(m1, m2)?, 2, l_max)?;
    Ok(SequenceTable::from_zero(
        (0..=l_max).map(|l| c.mixed(l)).collect(),
    ))
}

/// Partially filled slots from the first empty one on. Bit 0 of `mask` is
/// that empty slot; `residue` is its position within the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotState {
    pub residue: usize,
    pub mask: u128,
}

impl SlotState {
    /// The flush state at a cell boundary.
    pub const EMPTY: SlotState = SlotState {
        residue: 0,
        mask: 0,
    };

    /// Parses the binary-string notation: `0̄` (or `~0`) marks a first empty
    /// slot in the right half of a cell, e.g. `0101`, `0̄1`, `~001`.
    pub fn parse(s: &str) -> Result<Self> {
        let (residue, rest) = if let Some(r) = s.strip_prefix("0\u{304}") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("~0") {
            (1, r)
        } else if let Some(r) = s.strip_prefix('0') {
            (0, r)
        } else {
            return Err(Error::InvalidArgument(format!(
                "slot state {s:?} must start with 0"
            )));
        };
        let mut mask = 0u128;
        for (k, ch) in rest.chars().enumerate() {
            match ch {
                '1' => mask |= 1 << (k + 1),
                '0' => {}
                _ => return Err(Error::InvalidArgument(format!("bad slot state {s:?}"))),
            }
        }
        Ok(Self { residue, mask })
    }

    /// Binary string from the first empty slot to the last filled one. On a
    /// two-slot board a leading `0̄` marks a right-hand first empty slot; at
    /// other resolutions a nonzero residue is written as a `r:` prefix.
    pub fn label(&self, p: usize) -> String {
        let mut s = String::new();
        match (p, self.residue) {
            (_, 0) => s.push('0'),
            (2, _) => s.push_str("0\u{304}"),
            (_, r) => {
                let _ = write!(s, "{r}:0");
            }
        }
        let top = 128 - self.mask.leading_zeros() as usize;
        for k in 1..top {
            s.push(if self.mask >> k & 1 == 1 { '1' } else { '0' });
        }
        s
    }

    fn after(&self, tile: &TileShape, fp: u128, p: usize) -> Option<SlotState> {
        if !tile.fits_residue(self.residue) || self.mask & fp != 0 {
            return None;
        }
        let filled = self.mask | fp;
        let shift = filled.trailing_ones() as usize;
        Some(SlotState {
            residue: (self.residue + shift) % p,
            mask: filled >> shift,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphArc {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// Reachable slot states and the tile placements between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotStateGraph {
    pub resolution: usize,
    pub nodes: Vec<SlotState>,
    pub arcs: Vec<DigraphArc>,
    /// Index of the start node in `nodes`.
    pub start: usize,
}

#[derive(Debug, Clone)]
pub struct DigraphOptions {
    pub node_cap: usize,
    pub start: SlotState,
    /// States that may not appear; arcs into them are dropped.
    pub excluded: Vec<SlotState>,
    /// Merge pass-through nodes (one arc in, one arc out) into their arcs.
    pub contract: bool,
}

impl Default for DigraphOptions {
    fn default() -> Self {
        Self {
            node_cap: 10_000,
            start: SlotState::EMPTY,
            excluded: Vec::new(),
            contract: false,
        }
    }
}

/// Breadth-first exploration of slot states, one arc per tile placed at the
/// first empty slot.
pub fn export_digraph(
    tiles: &[TileShape],
    p: usize,
    opts: &DigraphOptions,
) -> Result<SlotStateGraph> {
    if p == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    check_tiles(tiles, p)?;
    let footprints: Vec<u128> = tiles.iter().map(TileShape::footprint).collect();
    let mut index: HashMap<SlotState, usize> = HashMap::from([(opts.start, 0)]);
    let mut nodes = vec![opts.start];
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(from) = queue.pop_front() {
        let state = nodes[from];
        for (tile, &fp) in tiles.iter().zip(&footprints) {
            let Some(next) = state.after(tile, fp, p) else {
                continue;
            };
            if opts.excluded.contains(&next) {
                continue;
            }
            let to = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if nodes.len() == opts.node_cap {
                        return Err(Error::NodeCapExceeded { cap: opts.node_cap });
                    }
                    nodes.push(next);
                    index.insert(next, nodes.len() - 1);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            arcs.push(DigraphArc {
                from,
                to,
                label: tile.label().to_string(),
            });
        }
    }
    let graph = SlotStateGraph {
        resolution: p,
        nodes,
        arcs,
        start: 0,
    };
    Ok(if opts.contract {
        graph.contract_forced()
    } else {
        graph
    })
}

impl SlotStateGraph {
    pub fn node_label(&self, i: usize) -> String {
        self.nodes[i].label(self.resolution)
    }

    pub fn find(&self, state: &SlotState) -> Option<usize> {
        self.nodes.iter().position(|s| s == state)
    }

    pub fn contains(&self, state: &SlotState) -> bool {
        self.find(state).is_some()
    }

    /// Outgoing arcs of node `i` as `(label, target)`.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = (&str, usize)> {
        self.arcs
            .iter()
            .filter(move |a| a.from == i)
            .map(|a| (a.label.as_str(), a.to))
    }

    /// Merges every non-start node with exactly one incoming and one outgoing
    /// arc (and no self-loop) into a single arc whose label joins the two.
    pub fn contract_forced(&self) -> SlotStateGraph {
        let mut alive = vec![true; self.nodes.len()];
        let mut arcs = self.arcs.clone();
        loop {
            let candidate = (0..self.nodes.len()).find(|&v| {
                if !alive[v] || v == self.start {
                    return false;
                }
                let ins = arcs.iter().filter(|a| a.to == v).count();
                let outs = arcs.iter().filter(|a| a.from == v).count();
                ins == 1 && outs == 1 && !arcs.iter().any(|a| a.from == v && a.to == v)
            });
            let Some(v) = candidate else { break };
            let i_in = arcs.iter().position(|a| a.to == v).unwrap();
            let i_out = arcs.iter().position(|a| a.from == v).unwrap();
            let merged = DigraphArc {
                from: arcs[i_in].from,
                to: arcs[i_out].to,
                label: format!("{} {}", arcs[i_in].label, arcs[i_out].label),
            };
            arcs[i_in] = merged;
            arcs.remove(i_out);
            alive[v] = false;
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, s) in self.nodes.iter().enumerate() {
            if alive[i] {
                remap[i] = nodes.len();
                nodes.push(*s);
            }
        }
        SlotStateGraph {
            resolution: self.resolution,
            start: remap[self.start],
            nodes,
            arcs: arcs
                .into_iter()
                .map(|a| DigraphArc {
                    from: remap[a.from],
                    to: remap[a.to],
                    label: a.label,
                })
                .collect(),
        }
    }

    /// Graphviz DOT text. Nodes are quoted slot-state strings; the start node
    /// is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph slot_states {{");
        let _ = writeln!(out, "    rankdir=LR;");
        for i in 0..self.nodes.len() {
            let name = escape(&self.node_label(i));
            if i == self.start {
                let _ = writeln!(out, "    \"{name}\" [shape=doublecircle];");
            } else {
                let _ = writeln!(out, "    \"{name}\" [shape=circle];");
            }
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "    \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.node_label(a.from)),
                escape(&self.node_label(a.to)),
                escape(&a.label)
            );
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SlotStateGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dot())
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
