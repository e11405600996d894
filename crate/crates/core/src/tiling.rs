//! Tilings of an `n`-board whose cells are split into `p` slots.
//!
//! Every length is an integer number of slots. A `(w,g;m)`-comb with
//! `w = a/p` and `g = b/p` is stored as `tooth_len = a`, `gap_len = b`,
//! `teeth = m`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permanents::OffsetSet;

/// Widest footprint (in slots) any single tile may have.
pub const MAX_TILE_SPAN: usize = 128;

/// Where the first tooth of a tile may start, as residues of the slot index mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alignment {
    Any,
    Residues(BTreeSet<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TileShape {
    resolution: usize,
    tooth_len: usize,
    gap_len: usize,
    teeth: usize,
    alignment: Alignment,
    colors: u32,
    label: String,
}

impl TileShape {
    /// A comb of `teeth` teeth, each `tooth_len` slots wide, separated by
    /// `gap_len` empty slots. Unaligned, one colour.
    pub fn comb(resolution: usize, tooth_len: usize, gap_len: usize, teeth: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidTile("resolution must be positive".into()));
        }
        if tooth_len == 0 {
            return Err(Error::InvalidTile("tooth length must be positive".into()));
        }
        if teeth == 0 {
            return Err(Error::InvalidTile("a tile needs at least one tooth".into()));
        }
        // The gap of a single tooth never matters.
        let gap_len = if teeth == 1 { 0 } else { gap_len };
        let span = (teeth - 1) * (tooth_len + gap_len) + tooth_len;
        if span > MAX_TILE_SPAN {
            return Err(Error::InvalidTile(format!(
                "footprint of {span} slots exceeds {MAX_TILE_SPAN}"
            )));
        }
        Ok(Self {
            resolution,
            tooth_len,
            gap_len,
            teeth,
            alignment: Alignment::Any,
            colors: 1,
            label: format!("t{tooth_len}g{gap_len}x{teeth}"),
        })
    }

    /// A `(1/2,1/2;teeth)`-comb on a two-slot board.
    pub fn half_comb(teeth: usize) -> Result<Self> {
        Self::comb(2, 1, 1, teeth)
    }

    pub fn with_alignment<I: IntoIterator<Item = usize>>(mut self, residues: I) -> Result<Self> {
        let residues: BTreeSet<usize> = residues.into_iter().collect();
        if residues.is_empty() {
            return Err(Error::InvalidTile(
                "alignment needs at least one residue".into(),
            ));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= self.resolution) {
            return Err(Error::InvalidTile(format!(
                "residue {r} is not below the resolution {}",
                self.resolution
            )));
        }
        self.alignment = if residues.len() == self.resolution {
            Alignment::Any
        } else {
            Alignment::Residues(residues)
        };
        Ok(self)
    }

    pub fn with_colors(mut self, colors: u32) -> Result<Self> {
        if colors == 0 {
            return Err(Error::InvalidTile(
                "colour multiplicity must be positive".into(),
            ));
        }
        self.colors = colors;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn tooth_len(&self) -> usize {
        self.tooth_len
    }

    pub fn gap_len(&self) -> usize {
        self.gap_len
    }

    pub fn teeth(&self) -> usize {
        self.teeth
    }

    pub fn alignment(&self) -> &Alignment {
        &self.alignment
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Distance between the starts of consecutive teeth.
    pub fn stride(&self) -> usize {
        self.tooth_len + self.gap_len
    }

    /// Slots from the first covered slot to the last, inclusive.
    pub fn span(&self) -> usize {
        (self.teeth - 1) * self.stride() + self.tooth_len
    }

    /// Slots actually covered; this is what counts toward board length.
    pub fn covered_len(&self) -> usize {
        self.teeth * self.tooth_len
    }

    /// Covered slots relative to the first one, as a bit mask.
    pub fn footprint(&self) -> u128 {
        let tooth: u128 = if self.tooth_len == 128 {
            u128::MAX
        } else {
            (1u128 << self.tooth_len) - 1
        };
        (0..self.teeth).fold(0, |acc, k| acc | (tooth << (k * self.stride())))
    }

    /// Covered slot indices when the first tooth starts at `start`, with the
    /// tooth number of each.
    pub fn covered_slots(&self, start: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.teeth).flat_map(move |k| {
            let base = start + k * self.stride();
            (base..base + self.tooth_len).map(move |s| (s, k))
        })
    }

    /// Whether the first tooth may start at slot residue `residue`.
    pub fn fits_residue(&self, residue: usize) -> bool {
        match &self.alignment {
            Alignment::Any => true,
            Alignment::Residues(set) => set.contains(&(residue % self.resolution)),
        }
    }
}

fn check_resolution(tiles: &[TileShape], p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    for t in tiles {
        if t.resolution != p {
            return Err(Error::MixedResolution {
                expected: p,
                found: t.resolution,
            });
        }
    }
    Ok(())
}

/// `A_0..=A_{n_max}`: weighted counts of complete tilings of every board
/// length up to `n_max`, in one sweep of the slot frontier.
pub fn tiling_counts(n_max: usize, tiles: &[TileShape], p: usize) -> Result<Vec<BigInt>> {
    check_resolution(tiles, p)?;
    let total = n_max * p;
    let footprints: Vec<u128> = tiles.iter().map(TileShape::footprint).collect();

    let mut counts = Vec::with_capacity(n_max + 1);
    // Frontier: occupancy of slots pos, pos+1, ... (bit 0 is slot pos).
    let mut frontier: HashMap<u128, BigInt> = HashMap::from([(0, BigInt::one())]);
    for pos in 0..=total {
        if pos % p == 0 {
            counts.push(frontier.get(&0).cloned().unwrap_or_default());
        }
        if pos == total {
            break;
        }
        let mut next: HashMap<u128, BigInt> = HashMap::with_capacity(frontier.len());
        for (mask, weight) in frontier {
            if mask & 1 == 1 {
                *next.entry(mask >> 1).or_default() += weight;
                continue;
            }
            for (tile, &fp) in tiles.iter().zip(&footprints) {
                if !tile.fits_residue(pos % p) || pos + tile.span() > total || mask & fp != 0 {
                    continue;
                }
                *next.entry((mask | fp) >> 1).or_default() += &weight * tile.colors;
            }
        }
        frontier = next;
    }
    Ok(counts)
}

/// Weighted number of complete tilings of an `n`-board.
pub fn count_tilings(n: usize, tiles: &[TileShape], p: usize) -> Result<BigInt> {
    Ok(tiling_counts(n, tiles, p)?
        .pop()
        .unwrap_or_else(BigInt::zero))
}

/// One tile on a board: which shape, which colour, and its first slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub start: usize,
    pub shape: usize,
    pub color: u32,
}

/// What sits in one slot: the tile instance (index into the board's
/// placements) and which of its teeth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotContent {
    pub instance: usize,
    pub tooth: usize,
}

/// A (possibly partial) tiling. Placements are kept sorted by first slot, so
/// two boards compare equal exactly when their slot contents agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Board {
    cells: usize,
    resolution: usize,
    tiles: Arc<[TileShape]>,
    placements: Vec<Placement>,
    slots: Vec<Option<SlotContent>>,
}

impl Board {
    pub fn new(
        cells: usize,
        resolution: usize,
        tiles: Arc<[TileShape]>,
        mut placements: Vec<Placement>,
    ) -> Result<Self> {
        check_resolution(&tiles, resolution)?;
        let total = cells * resolution;
        placements.sort();
        let mut slots = vec![None; total];
        for (instance, pl) in placements.iter().enumerate() {
            let tile = tiles
                .get(pl.shape)
                .ok_or_else(|| Error::InvalidBoard(format!("no tile shape #{}", pl.shape)))?;
            if pl.color >= tile.colors {
                return Err(Error::InvalidBoard(format!(
                    "colour {} of {} only has {} colours",
                    pl.color, tile.label, tile.colors
                )));
            }
            if !tile.fits_residue(pl.start % resolution) {
                return Err(Error::InvalidBoard(format!(
                    "{} may not start at slot {}",
                    tile.label, pl.start
                )));
            }
            if pl.start + tile.span() > total {
                return Err(Error::InvalidBoard(format!(
                    "{} at slot {} runs off the board",
                    tile.label, pl.start
                )));
            }
            for (s, tooth) in tile.covered_slots(pl.start) {
                if slots[s].is_some() {
                    return Err(Error::InvalidBoard(format!("slot {s} is covered twice")));
                }
                slots[s] = Some(SlotContent { instance, tooth });
            }
        }
        Ok(Self {
            cells,
            resolution,
            tiles,
            placements,
            slots,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn tiles(&self) -> &[TileShape] {
        &self.tiles
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn slots(&self) -> &[Option<SlotContent>] {
        &self.slots
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn tile_of(&self, pl: &Placement) -> &TileShape {
        &self.tiles[pl.shape]
    }

    /// Distinct tile labels on the board.
    pub fn labels(&self) -> BTreeSet<&str> {
        self.placements
            .iter()
            .map(|pl| self.tiles[pl.shape].label())
            .collect()
    }

    /// Tile labels in order of first slot, e.g. `C h h h`.
    pub fn symbolic(&self) -> String {
        let parts: Vec<&str> = self
            .placements
            .iter()
            .map(|pl| self.tiles[pl.shape].label())
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Board {
    /// Cells separated by `|`, each slot shown as its tile instance number.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, content) in self.slots.iter().enumerate() {
            if s > 0 {
                f.write_str(if s % self.resolution == 0 { "|" } else { " " })?;
            }
            match content {
                Some(c) => write!(f, "{}", c.instance)?,
                None => f.write_str(".")?,
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    tiles: &'a [TileShape],
    shared: Arc<[TileShape]>,
    p: usize,
    cells: usize,
    occupied: Vec<bool>,
    stack: Vec<Placement>,
    out: Vec<Board>,
    cap: usize,
    single_metatile: bool,
}

impl Search<'_> {
    fn run(&mut self, from: usize) -> Result<()> {
        let Some(slot) = (from..self.occupied.len()).find(|&s| !self.occupied[s]) else {
            if self.out.len() == self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            let board = Board::new(self.cells, self.p, self.shared.clone(), self.stack.clone())?;
            self.out.push(board);
            return Ok(());
        };
        if self.single_metatile
            && slot > 0
            && slot % self.p == 0
            && !self.occupied[slot..].iter().any(|&o| o)
        {
            return Ok(());
        }
        for (shape, tile) in self.tiles.iter().enumerate() {
            if !tile.fits_residue(slot % self.p) || slot + tile.span() > self.occupied.len() {
                continue;
            }
            if tile.covered_slots(slot).any(|(s, _)| self.occupied[s]) {
                continue;
            }
            for (s, _) in tile.covered_slots(slot) {
                self.occupied[s] = true;
            }
            for color in 0..tile.colors {
                self.stack.push(Placement {
                    start: slot,
                    shape,
                    color,
                });
                let res = self.run(slot + 1);
                self.stack.pop();
                res?;
            }
            for (s, _) in tile.covered_slots(slot) {
                self.occupied[s] = false;
            }
        }
        Ok(())
    }
}

fn search(
    n: usize,
    tiles: &[TileShape],
    p: usize,
    cap: usize,
    single_metatile: bool,
) -> Result<Vec<Board>> {
    check_resolution(tiles, p)?;
    let mut s = Search {
        tiles,
        shared: tiles.to_vec().into(),
        p,
        cells: n,
        occupied: vec![false; n * p],
        stack: Vec::new(),
        out: Vec::new(),
        cap,
        single_metatile,
    };
    s.run(0)?;
    Ok(s.out)
}

/// Every complete tiling of an `n`-board, each colour of a tile listed as a
/// separate placement. Tiles are always placed so that their first tooth
/// covers the lowest empty slot, which produces each tiling exactly once.
pub fn enumerate_tilings(
    n: usize,
    tiles: &[TileShape],
    p: usize,
    cap: usize,
) -> Result<Vec<Board>> {
    search(n, tiles, p, cap, false)
}

/// Complete tilings of an `n`-board that are a single metatile (no interior
/// cell boundary is left uncrossed).
pub fn enumerate_metatiles(
    n: usize,
    tiles: &[TileShape],
    p: usize,
    cap: usize,
) -> Result<Vec<Board>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    search(n, tiles, p, cap, true)
}

/// Exchanges the contents of the two slots of every cell.
pub fn slot_swap(board: &Board) -> Result<Board> {
    if board.resolution != 2 {
        return Err(Error::UnsupportedResolution {
            expected: 2,
            found: board.resolution,
        });
    }
    if !board.is_complete() {
        return Err(Error::InvalidBoard(
            "slot swap needs a complete tiling".into(),
        ));
    }
    let mut swapped = Vec::with_capacity(board.placements.len());
    for pl in &board.placements {
        let tile = &board.tiles[pl.shape];
        let image: BTreeSet<usize> = tile.covered_slots(pl.start).map(|(s, _)| s ^ 1).collect();
        let start = *image.first().expect("tiles cover at least one slot");
        let same_shape = tile
            .covered_slots(start)
            .map(|(s, _)| s)
            .eq(image.iter().copied());
        if !same_shape || !tile.fits_residue(start % 2) {
            return Err(Error::SwapInvalid(format!(
                "{} at slot {} has no swapped counterpart",
                tile.label, pl.start
            )));
        }
        swapped.push(Placement { start, ..*pl });
    }
    Board::new(board.cells, board.resolution, board.tiles.clone(), swapped)
}

/// Cell boundaries `1..=n` that no tile straddles. Consecutive cut points
/// delimit the metatiles of the tiling; the last cut is always `n`.
pub fn decompose_metatiles(board: &Board) -> Vec<usize> {
    let p = board.resolution;
    // crossings[c] > 0 when some tile has slots on both sides of boundary c.
    let mut crossings = vec![0i64; board.cells + 2];
    for pl in &board.placements {
        let tile = &board.tiles[pl.shape];
        let first = pl.start;
        let last = pl.start + tile.span() - 1;
        // Boundaries c with first < c*p <= last.
        let lo = first / p + 1;
        let hi = last / p;
        if lo <= hi {
            crossings[lo] += 1;
            crossings[hi + 1] -= 1;
        }
    }
    let mut cuts = Vec::new();
    let mut running = 0;
    for (c, delta) in crossings.iter().enumerate().take(board.cells + 1).skip(1) {
        running += delta;
        if running == 0 {
            cuts.push(c);
        }
    }
    cuts
}

/// Fence tiles whose tilings of an `n`-board are in bijection with the
/// permutations counted by `P_n^W`.
///
/// A negative `-g` gives `F̄_{g-1}`: two one-slot teeth `2(g-1)` slots apart,
/// first tooth in a right slot. A non-negative `g` gives `F_g`: teeth `2g`
/// slots apart, first tooth in a left slot.
pub fn fence_tiles_from_w(w: &OffsetSet) -> Result<Vec<TileShape>> {
    w.iter()
        .map(|d| {
            if d < 0 {
                let g = (-d - 1) as usize;
                TileShape::comb(2, 1, 2 * g, 2)?
                    .with_alignment([1])
                    .map(|t| t.with_label(format!("Fbar{g}")))
            } else {
                let g = d as usize;
                TileShape::comb(2, 1, 2 * g, 2)?
                    .with_alignment([0])
                    .map(|t| t.with_label(format!("F{g}")))
            }
        })
        .collect()
}
