//! `combtile`: sequences, tiling counts, metatile censuses, permanents and
//! identity checks from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification or b-file comparison
//! fails, 2 on a usage or input error.

pub mod bfile;
pub mod output;
pub mod tilespec;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use comb_tilings::identities::{self, SuiteConfig};
use comb_tilings::metatile::comb_pair;
use comb_tilings::permanents::restricted_perm_table;
use comb_tilings::tiling::enumerate_metatiles;
use comb_tilings::{
    a080013_sequence, census, count_restricted_perms, enumerate_tilings, eval_sequence,
    export_digraph, fence_tiles_from_w, permanent_ryser, theorem1_sequence, tiling_counts,
    toeplitz_from_w, DigraphOptions, IdentityReport, OffsetSet, RecurrenceSpec, SequenceTable,
    SlotState, TileShape,
};

use crate::bfile::BFile;
use crate::output::{Format, Rows};

const TILE_SPEC_HELP: &str = "\
Tile SPEC: comma-separated list of [name=]t<len>g<gap>x<teeth>[@r+r...][*colors],
all lengths in slots of width 1/p. `@` restricts the slot residues a tile may
start on, `*` gives it that many colours.

  h=t1g0x1                 half-square
  C=t1g1x3                 three-tooth comb with unit gaps
  F1=t1g2x2@0,Fb1=t1g2x2@1 fences starting on a left / right slot";

#[derive(Debug, Parser)]
#[command(
    name = "combtile",
    version,
    about = "Comb tilings, metatiles and banded permanents"
)]
#[command(after_help = TILE_SPEC_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values s_0..=s_N of s_n = Σ v_k s_{n-m_k} + δ_{n,0}.
    Seq {
        /// Recurrence terms as offset:weight pairs, e.g. 1:1,2:1.
        #[arg(long)]
        terms: String,
        #[arg(long)]
        n: usize,
    },
    /// Count or list tilings of an n-board.
    Tilings {
        #[arg(value_enum)]
        action: TilingAction,
        #[command(flatten)]
        board: BoardArgs,
        /// Print A_0..=A_n instead of A_n alone (count only).
        #[arg(long)]
        table: bool,
        /// Largest number of tilings to list (enum only).
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// List only tilings that are a single metatile (enum only).
        #[arg(long)]
        metatiles: bool,
    },
    /// Metatile census and slot-state digraphs.
    #[command(subcommand)]
    Metatiles(MetatileCommand),
    /// Permanents P_n^W of (0,1) Toeplitz matrices.
    Perm {
        #[arg(value_enum)]
        method: PermMethod,
        /// Offset set W, e.g. "-2,-1,2" (not used by a080013).
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long)]
        n: usize,
        /// Print P_0..=P_n instead of P_n alone.
        #[arg(long)]
        table: bool,
    },
    /// Check identities by evaluating both sides exactly.
    Verify(VerifyArgs),
    /// Compare P_n^W against an OEIS b-file over the shared indices.
    OeisCheck {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        bfile: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TilingAction {
    Count,
    Enum,
}

#[derive(Debug, Args)]
struct BoardArgs {
    /// Board length n in cells.
    #[arg(long)]
    cells: usize,
    /// Tile SPEC list (see --help).
    #[arg(long)]
    tiles: String,
    /// Slots per cell.
    #[arg(long, default_value_t = 1)]
    p: usize,
}

#[derive(Debug, Subcommand)]
enum MetatileCommand {
    /// Metatile and mixed-metatile counts by length.
    Census {
        /// Teeth of the first comb (1 means half-squares).
        #[arg(long, requires = "m2", conflicts_with = "tiles")]
        m1: Option<usize>,
        /// Teeth of the second comb.
        #[arg(long, requires = "m1")]
        m2: Option<usize>,
        /// Arbitrary tile SPEC list instead of a comb pair.
        #[arg(long)]
        tiles: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        lmax: usize,
    },
    /// Slot-state digraph in Graphviz DOT.
    Digraph {
        /// Tile SPEC list.
        #[arg(long, conflicts_with = "w", required_unless_present = "w")]
        tiles: Option<String>,
        /// Build the fence tiles of this offset set instead.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Write the DOT text here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Merge nodes with one arc in and one arc out.
        #[arg(long)]
        contract: bool,
        #[arg(long, default_value_t = 10_000)]
        node_cap: usize,
        /// Start state, e.g. 0 or ~0 (a right-hand first empty slot).
        #[arg(long)]
        start: Option<String>,
        /// States left out of the graph; may be repeated.
        #[arg(long)]
        exclude: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PermMethod {
    /// Transfer-matrix count.
    Count,
    /// Ryser's formula on the Toeplitz matrix (order at most 12).
    Ryser,
    /// The recurrence for W = {-1, d_1, ..., d_r}.
    Theorem1,
    /// The signed recurrence of OEIS A080013.
    A080013,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    All,
    Gen1,
    Gen2,
    Sum,
    Block,
    Mixed,
    Mixed2,
    NarayanaPadovan,
    Theorem2,
    Corollary3,
    Mu,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long)]
    m: Option<usize>,
    /// Block offset; all of 0..=m+1 when omitted.
    #[arg(long)]
    j: Option<usize>,
    /// Largest n checked.
    #[arg(long = "N")]
    n_max: Option<usize>,
    /// Largest metatile length checked.
    #[arg(long)]
    lmax: Option<usize>,
    /// Slots per cell for theorem2 / corollary3.
    #[arg(long)]
    p: Option<usize>,
    /// Recurrence for theorem2 / corollary3; the built-in list when omitted.
    #[arg(long)]
    terms: Option<String>,
    /// Include elapsed time per report (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] comb_tilings::Error),
    #[error(transparent)]
    TileSpec(#[from] tilespec::TileSpecError),
    #[error("{path}: {source}")]
    BFile {
        path: String,
        source: bfile::BFileError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Failed,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Seq { terms, n } => {
            let spec = parse_terms(&terms)?;
            write_table(&eval_sequence(&spec, n), format, out)?;
        }
        Command::Tilings {
            action,
            board,
            table,
            cap,
            metatiles,
        } => {
            let tiles = tilespec::parse_tiles(&board.tiles, board.p)?;
            match action {
                TilingAction::Count => {
                    let counts = tiling_counts(board.cells, &tiles, board.p)?;
                    let t = SequenceTable::from_zero(counts);
                    write_values(&t, table, format, out)?;
                }
                TilingAction::Enum => {
                    let boards = if metatiles {
                        enumerate_metatiles(board.cells, &tiles, board.p, cap)?
                    } else {
                        enumerate_tilings(board.cells, &tiles, board.p, cap)?
                    };
                    let mut rows = Rows::new(&["index", "tiles", "slots"]);
                    for (i, b) in boards.iter().enumerate() {
                        rows.push(vec![json!(i), json!(b.symbolic()), json!(b.to_string())]);
                    }
                    rows.write(format, out)?;
                }
            }
        }
        Command::Metatiles(cmd) => metatiles(cmd, format, out)?,
        Command::Perm {
            method,
            w,
            n,
            table,
        } => {
            let t = match method {
                PermMethod::A080013 => a080013_sequence(n),
                _ => {
                    let w = w.ok_or_else(|| CliError::Usage("--w is required".into()))?;
                    let w = parse_w(&w)?;
                    match method {
                        PermMethod::Count if table => restricted_perm_table(&w, n),
                        PermMethod::Count => {
                            SequenceTable::new(n as i64, vec![count_restricted_perms(n, &w)])
                        }
                        PermMethod::Ryser => {
                            let lo = if table { 0 } else { n };
                            let values = (lo..=n)
                                .map(|k| permanent_ryser(&toeplitz_from_w(k, &w)))
                                .collect::<Result<Vec<_>, _>>()?;
                            SequenceTable::new(lo as i64, values)
                        }
                        PermMethod::Theorem1 => theorem1_sequence(&w, n)?,
                        PermMethod::A080013 => unreachable!(),
                    }
                }
            };
            write_values(&t, table, format, out)?;
        }
        Command::Verify(args) => return verify(args, format, out),
        Command::OeisCheck { w, bfile } => return oeis_check(&w, &bfile, format, out),
    }
    Ok(Outcome::Ok)
}

fn parse_terms(s: &str) -> Result<RecurrenceSpec, CliError> {
    let pairs = s
        .split(',')
        .map(|pair| {
            let (m, v) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("term {pair:?} is not offset:weight")))?;
            let m = m.trim().parse::<usize>();
            let v = v.trim().parse::<u64>();
            match (m, v) {
                (Ok(m), Ok(v)) => Ok((m, v)),
                _ => Err(CliError::Usage(format!(
                    "term {pair:?} is not offset:weight"
                ))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RecurrenceSpec::new(pairs)?)
}

fn parse_w(s: &str) -> Result<OffsetSet, CliError> {
    Ok(s.parse::<OffsetSet>()?)
}

fn big(v: &BigInt) -> Value {
    json!(v.to_string())
}

fn write_table(t: &SequenceTable, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let mut rows = Rows::new(&["n", "value"]);
    for (n, v) in t.iter() {
        rows.push(vec![json!(n), big(v)]);
    }
    rows.write(format, out)
}

/// The whole table, or only its last value. A lone value in table format is
/// printed bare.
fn write_values(
    t: &SequenceTable,
    table: bool,
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    if table {
        return write_table(t, format, out);
    }
    let n = t.end();
    let v = t.term(n);
    if format == Format::Table {
        return writeln!(out, "{v}");
    }
    write_table(&SequenceTable::new(n, vec![v]), format, out)
}

fn metatiles(cmd: MetatileCommand, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        MetatileCommand::Census {
            m1,
            m2,
            tiles,
            p,
            lmax,
        } => {
            let (tiles, p) = match (m1, m2, tiles) {
                (Some(a), Some(b), None) => (comb_pair(a, b)?, 2),
                (None, None, Some(spec)) => (tilespec::parse_tiles(&spec, p)?, p),
                _ => {
                    return Err(CliError::Usage(
                        "give either --m1 and --m2, or --tiles".into(),
                    ))
                }
            };
            let c = census(&tiles, p, lmax)?;
            let mut rows = Rows::new(&["l", "metatiles", "mixed"]);
            for (l, (total, mixed)) in &c.counts {
                rows.push(vec![json!(l), big(total), big(mixed)]);
            }
            rows.write(format, out)?;
        }
        MetatileCommand::Digraph {
            tiles,
            w,
            p,
            out: path,
            contract,
            node_cap,
            start,
            exclude,
        } => {
            let tiles: Vec<TileShape> = match (tiles, w) {
                (Some(spec), _) => tilespec::parse_tiles(&spec, p)?,
                (None, Some(w)) => {
                    if p != 2 {
                        return Err(CliError::Usage("fence tiles live at --p 2".into()));
                    }
                    fence_tiles_from_w(&parse_w(&w)?)?
                }
                (None, None) => return Err(CliError::Usage("--tiles or --w is required".into())),
            };
            let mut opts = DigraphOptions {
                node_cap,
                contract,
                ..Default::default()
            };
            if let Some(s) = start {
                opts.start = SlotState::parse(&s)?;
            }
            opts.excluded = exclude
                .iter()
                .map(|s| SlotState::parse(s))
                .collect::<Result<_, _>>()?;
            let g = export_digraph(&tiles, p, &opts)?;
            match path {
                None => out.write_all(g.to_dot().as_bytes())?,
                Some(path) => {
                    fs::write(&path, g.to_dot())?;
                    let mut rows = Rows::new(&["node", "arcs"]);
                    for i in 0..g.nodes.len() {
                        let arcs: Vec<String> = g
                            .successors(i)
                            .map(|(label, to)| format!("{label} -> {}", g.node_label(to)))
                            .collect();
                        rows.push(vec![json!(g.node_label(i)), json!(arcs.join("; "))]);
                    }
                    rows.write(format, out)?;
                }
            }
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let m = args.m.unwrap_or(1);
    let default_n = match args.check {
        Check::NarayanaPadovan => 40,
        Check::Corollary3 => 10,
        Check::Theorem2 => 6,
        _ => 30,
    };
    let n = args.n_max.unwrap_or(default_n);
    let lmax = args.lmax.unwrap_or(15);
    let specs = match &args.terms {
        Some(t) => vec![parse_terms(t)?],
        None => identities::default_specs(),
    };
    let p = args.p.unwrap_or(2);

    let reports: Vec<IdentityReport> = match args.check {
        Check::All => {
            let mut cfg = SuiteConfig::default();
            if let Some(n) = args.n_max {
                cfg.n_max = n;
            }
            cfg.l_max = lmax;
            identities::verify_all(&cfg)?
        }
        Check::Gen1 => vec![identities::verify_identity_gen1(m, n)],
        Check::Sum => vec![identities::verify_identity_sum(m, n)],
        Check::Block => match args.j {
            Some(j) => vec![identities::verify_identity_block(m, j, n)?],
            None => (0..=m + 1)
                .map(|j| identities::verify_identity_block(m, j, n))
                .collect::<Result<_, _>>()?,
        },
        Check::Mixed => vec![identities::verify_identity_mixed(m, n)],
        Check::Gen2 => vec![identities::verify_identity_gen2(m, n)?],
        Check::Mixed2 => vec![identities::verify_identity_mixed2(m, n)?],
        Check::NarayanaPadovan => identities::verify_narayana_padovan(n),
        Check::Theorem2 => specs
            .iter()
            .map(|s| identities::verify_theorem2(s, p, n))
            .collect::<Result<_, _>>()?,
        Check::Corollary3 => specs
            .iter()
            .map(|s| identities::verify_corollary3(s, p, n))
            .collect::<Result<_, _>>()?,
        Check::Mu => match args.m {
            None => identities::verify_mu_theorems(3, lmax)?,
            Some(m) => {
                let mut r = vec![identities::verify_mu_half_squares(m, lmax)?];
                if m >= 1 {
                    r.push(identities::verify_mu_comb_pair(m, 2 * m + lmax)?);
                }
                r
            }
        },
    };
    write_reports(&reports, format, args.timings, out)?;
    Ok(if reports.iter().all(IdentityReport::is_verified) {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn write_reports(
    reports: &[IdentityReport],
    format: Format,
    timings: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    if format == Format::Json {
        for r in reports {
            writeln!(out, "{}", r.to_json(timings))?;
        }
        return Ok(());
    }
    let columns: &[&'static str] = if timings {
        &["identity", "params", "status", "elapsed_ms"]
    } else {
        &["identity", "params", "status"]
    };
    let mut rows = Rows::new(columns);
    for r in reports {
        let mut row = vec![
            json!(r.identity.name()),
            json!(r.params.summary()),
            json!(r.status_text()),
        ];
        if timings {
            row.push(json!(format!("{:.3}", r.elapsed.as_secs_f64() * 1e3)));
        }
        rows.push(row);
    }
    rows.write(format, out)?;
    if format == Format::Table {
        let ok = reports.iter().filter(|r| r.is_verified()).count();
        writeln!(out, "{ok}/{} verified", reports.len())?;
    }
    Ok(())
}

fn oeis_check(
    w: &str,
    path: &PathBuf,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let w = parse_w(w)?;
    let text = fs::read_to_string(path)?;
    let file: BFile = text.parse().map_err(|source| CliError::BFile {
        path: path.display().to_string(),
        source,
    })?;
    let shared: Vec<&(i64, BigInt)> = file.entries.iter().filter(|(n, _)| *n >= 0).collect();
    let Some(&&(last, _)) = shared.last() else {
        return Err(CliError::Usage(format!(
            "{} has no entries at index 0 or above",
            path.display()
        )));
    };
    let table = restricted_perm_table(&w, last as usize);
    let mismatch = shared.iter().find(|(n, v)| table.term(*n) != *v);

    let mut rows = Rows::new(&["w", "compared", "first", "last", "status"]);
    let status = match mismatch {
        None => "match".to_string(),
        Some((n, v)) => format!("mismatch at n={n}: file={v} computed={}", table.term(*n)),
    };
    rows.push(vec![
        json!(w.to_string()),
        json!(shared.len()),
        json!(shared[0].0),
        json!(last),
        json!(status),
    ]);
    rows.write(format, out)?;
    Ok(if mismatch.is_none() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}
