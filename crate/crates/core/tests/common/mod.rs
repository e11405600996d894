//! Slow, obviously correct counters used as oracles by the integration tests.
#![allow(dead_code)]

use comb_tilings::{Alignment, TileShape};

/// Permutations of `0..n` with `π(i) - i` in `w`, by backtracking.
pub fn brute_perms(n: usize, w: &[i64]) -> u64 {
    fn go(i: usize, n: usize, w: &[i64], used: &mut Vec<bool>) -> u64 {
        if i == n {
            return 1;
        }
        let mut total = 0;
        for &d in w {
            let j = i as i64 + d;
            if j < 0 || j >= n as i64 || used[j as usize] {
                continue;
            }
            used[j as usize] = true;
            total += go(i + 1, n, w, used);
            used[j as usize] = false;
        }
        total
    }
    go(0, n, w, &mut vec![false; n])
}

fn slots_of(tile: &TileShape, start: usize) -> Vec<usize> {
    let stride = tile.tooth_len() + tile.gap_len();
    (0..tile.teeth())
        .flat_map(|t| (0..tile.tooth_len()).map(move |k| start + t * stride + k))
        .collect()
}

fn allowed(tile: &TileShape, residue: usize) -> bool {
    match tile.alignment() {
        Alignment::Any => true,
        Alignment::Residues(r) => r.contains(&residue),
    }
}

/// Weighted tilings of an `n`-board: fill the lowest empty slot with the
/// first tooth of some tile, in every possible way.
pub fn brute_tilings(n: usize, tiles: &[TileShape], p: usize) -> u64 {
    fn go(board: &mut Vec<bool>, tiles: &[TileShape], p: usize) -> u64 {
        let Some(first) = board.iter().position(|&b| !b) else {
            return 1;
        };
        let mut total = 0;
        for tile in tiles {
            if !allowed(tile, first % p) {
                continue;
            }
            let slots = slots_of(tile, first);
            if slots.iter().any(|&s| s >= board.len() || board[s]) {
                continue;
            }
            for &s in &slots {
                board[s] = true;
            }
            total += tile.colors() as u64 * go(board, tiles, p);
            for &s in &slots {
                board[s] = false;
            }
        }
        total
    }
    go(&mut vec![false; n * p], tiles, p)
}
