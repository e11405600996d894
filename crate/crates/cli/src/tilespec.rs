//! Tile lists written as `[name=]t<len>g<gap>x<teeth>[@r+r...][*colors]`,
//! comma-separated, in slot units.

use comb_tilings::TileShape;

#[derive(Debug, thiserror::Error)]
#[error("bad tile spec {spec:?}: {reason}")]
pub struct TileSpecError {
    pub spec: String,
    pub reason: String,
}

fn fail(spec: &str, reason: impl Into<String>) -> TileSpecError {
    TileSpecError {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn number(spec: &str, s: &str, what: &str) -> Result<usize, TileSpecError> {
    s.parse()
        .map_err(|_| fail(spec, format!("expected a number for {what}, got {s:?}")))
}

/// Splits `s` at the first occurrence of any of `stops`.
fn take_until<'a>(s: &'a str, stops: &[char]) -> (&'a str, &'a str) {
    match s.find(stops) {
        Some(i) => s.split_at(i),
        None => (s, ""),
    }
}

pub fn parse_tile(spec: &str, p: usize) -> Result<TileShape, TileSpecError> {
    let spec = spec.trim();
    let (name, body) = match spec.split_once('=') {
        Some((n, b)) if !n.is_empty() => (Some(n.trim()), b.trim()),
        Some(_) => return Err(fail(spec, "empty tile name")),
        None => (None, spec),
    };
    let rest = body
        .strip_prefix('t')
        .ok_or_else(|| fail(spec, "must start with t<len>"))?;
    let (len, rest) = take_until(rest, &['g']);
    let rest = rest
        .strip_prefix('g')
        .ok_or_else(|| fail(spec, "missing g<gap>"))?;
    let (gap, rest) = take_until(rest, &['x']);
    let rest = rest
        .strip_prefix('x')
        .ok_or_else(|| fail(spec, "missing x<teeth>"))?;
    let (teeth, mut rest) = take_until(rest, &['@', '*']);
    let (len, gap, teeth) = (
        number(spec, len, "tooth length")?,
        number(spec, gap, "gap")?,
        number(spec, teeth, "teeth")?,
    );
    let mut tile = TileShape::comb(p, len, gap, teeth).map_err(|e| fail(spec, e.to_string()))?;

    if let Some(r) = rest.strip_prefix('@') {
        let (res, tail) = take_until(r, &['*']);
        let residues = res
            .split('+')
            .map(|t| number(spec, t, "residue"))
            .collect::<Result<Vec<_>, _>>()?;
        tile = tile
            .with_alignment(residues)
            .map_err(|e| fail(spec, e.to_string()))?;
        rest = tail;
    }
    if let Some(c) = rest.strip_prefix('*') {
        let colors = number(spec, c, "colors")?;
        let colors = u32::try_from(colors).map_err(|_| fail(spec, "too many colors"))?;
        tile = tile
            .with_colors(colors)
            .map_err(|e| fail(spec, e.to_string()))?;
        rest = "";
    }
    if !rest.is_empty() {
        return Err(fail(spec, format!("unexpected trailing {rest:?}")));
    }
    if let Some(name) = name {
        tile = tile.with_label(name);
    }
    Ok(tile)
}

pub fn parse_tiles(list: &str, p: usize) -> Result<Vec<TileShape>, TileSpecError> {
    if list.trim().is_empty() {
        return Err(fail(list, "no tiles given"));
    }
    list.split(',').map(|s| parse_tile(s, p)).collect()
}
