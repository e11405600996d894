//! Exact enumerative machinery for tilings of `n`-boards with combs and
//! fences, their metatiles, and permanents of banded (0,1) Toeplitz matrices.
//!
//! All arithmetic is carried out with arbitrary-precision integers; nothing
//! here ever rounds.
//!
//! * [`recurrence`] evaluates weighted sparse recurrences `s_n`.
//! * [`tiling`] counts and enumerates tilings at slot resolution `p`.
//! * [`metatile`] runs the metatile census and exports slot-state digraphs.
//! * [`permanents`] counts strongly restricted permutations `P_n^W`.
//! * [`identities`] checks the convolution identities side by side.

pub mod error;
pub mod identities;
pub mod metatile;
pub mod permanents;
pub mod recurrence;
pub mod tiling;

pub use error::{Error, Result};
pub use identities::{IdentityId, IdentityReport, Status};
pub use metatile::{
    census, export_digraph, mu, DigraphOptions, MetatileCensus, SlotState, SlotStateGraph,
};
pub use permanents::{
    a080013_sequence, count_restricted_perms, mirror, permanent_ryser, theorem1_sequence,
    toeplitz_from_w, OffsetSet, ZeroOneMatrix,
};
pub use recurrence::{eval_sequence, power_product, RecurrenceSpec, SequenceTable};
pub use tiling::{
    count_tilings, decompose_metatiles, enumerate_tilings, fence_tiles_from_w, slot_swap,
    tiling_counts, Alignment, Board, Placement, TileShape,
};
