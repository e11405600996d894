//! Acceptance suite. Every check is exact integer equality; each criterion
//! prints one PASS or FAIL line and the process exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use comb_tilings::identities::{self, slot_combs, unit_combs, IdentityReport};
use comb_tilings::metatile::comb_pair;
use comb_tilings::permanents::restricted_perm_table;
use comb_tilings::tiling::enumerate_metatiles;
use comb_tilings::{
    a080013_sequence, census, count_restricted_perms, enumerate_tilings, eval_sequence,
    fence_tiles_from_w, mirror, mu, permanent_ryser, slot_swap, theorem1_sequence, tiling_counts,
    toeplitz_from_w, OffsetSet, RecurrenceSpec, TileShape,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn w(values: &[i64]) -> OffsetSet {
    OffsetSet::new(values.iter().copied()).unwrap()
}

fn all_verified(reports: &[IdentityReport]) -> Check {
    match reports.iter().find(|r| !r.is_verified()) {
        None => Ok(format!("{} reports verified", reports.len())),
        Some(r) => Err(format!(
            "{} {}: {}",
            r.identity.name(),
            r.params.summary(),
            r.status_text()
        )),
    }
}

fn within(limit: Duration, started: Instant) -> Check {
    let t = started.elapsed();
    if t < limit {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.1}s, limit {}s",
            t.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

/// Number of boards, each colour counted separately, found by exhaustive search.
fn brute_count(n: usize, tiles: &[TileShape], p: usize) -> BigInt {
    BigInt::from(enumerate_tilings(n, tiles, p, usize::MAX).unwrap().len())
}

fn slot_comb_powers() -> Check {
    let t = Instant::now();
    let mut reports = Vec::new();
    let mut cases = vec![];
    for spec in identities::default_specs() {
        cases.push((spec, 2, 10));
    }
    cases.push((RecurrenceSpec::two_term(1, 2).unwrap(), 3, 7));
    for (spec, p, n_max) in &cases {
        reports.push(identities::verify_corollary3(spec, *p, *n_max).map_err(|e| e.to_string())?);
        // Exhaustive enumeration as a second witness on the smaller boards.
        let tiles = slot_combs(spec, *p).unwrap();
        let s = eval_sequence(spec, *n_max);
        for n in 0..=5 {
            let expect = num_traits::pow(s.term(n as i64), *p);
            let got = brute_count(n, &tiles, *p);
            if got != expect {
                return Err(format!(
                    "spec {spec} p={p} n={n}: enumerated {got}, s_n^p = {expect}"
                ));
            }
        }
    }
    let ok = all_verified(&reports)?;
    Ok(format!(
        "{ok}, enumeration agrees for n<=5, {}",
        within(Duration::from_secs(60), t)?
    ))
}

fn interleaved_unit_combs() -> Check {
    let mut reports = Vec::new();
    for spec in identities::default_specs() {
        reports.push(identities::verify_theorem2(&spec, 2, 6).map_err(|e| e.to_string())?);
        let tiles = unit_combs(&spec, 2).unwrap();
        let counts = tiling_counts(13, &tiles, 1).unwrap();
        let s = eval_sequence(&spec, 7);
        for n in 0..=6i64 {
            for r in 0..2u32 {
                let len = (2 * n + r as i64) as usize;
                let rhs = num_traits::pow(s.term(n), 2 - r as usize)
                    * num_traits::pow(s.term(n + 1), r as usize);
                if counts[len] != rhs {
                    return Err(format!(
                        "spec {spec} n={n} r={r}: A={} rhs={rhs}",
                        counts[len]
                    ));
                }
            }
        }
    }
    all_verified(&reports)
}

fn mu_half_squares() -> Check {
    let reports: Vec<_> = (0..=3)
        .map(|m| identities::verify_mu_half_squares(m, 15))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let ok = all_verified(&reports)?;
    let mu3 = mu(1, 3, 15).unwrap().term(3);
    if mu3 != BigInt::from(2) {
        return Err(format!("mu_3^(1,3) = {mu3}, expected 2"));
    }
    Ok(format!("{ok}, mu_3^(1,3) = 2"))
}

fn mu_comb_pairs() -> Check {
    let reports: Vec<_> = (1..=3)
        .map(|m| identities::verify_mu_comb_pair(m, 2 * m + 15))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let ok = all_verified(&reports)?;
    let mu5 = mu(2, 3, 5).unwrap().term(5);
    if mu5 != BigInt::from(2) {
        return Err(format!("mu_5^(2,3) = {mu5}, expected 2"));
    }
    let mixed: BTreeSet<String> = enumerate_metatiles(5, &comb_pair(2, 3).unwrap(), 2, usize::MAX)
        .unwrap()
        .iter()
        .filter(|b| b.labels().len() > 1)
        .map(|b| b.symbolic())
        .collect();
    let expected: BTreeSet<String> = ["C c C c", "c C C c"].map(String::from).into();
    if mixed != expected {
        return Err(format!("length-5 mixed metatiles {mixed:?}"));
    }
    Ok(format!("{ok}, mu_5^(2,3) = 2 from {{C c C c, c C C c}}"))
}

fn a080013_links() -> Check {
    let a = a080013_sequence(15);
    let mu14 = mu(1, 4, 16).unwrap();
    let mu34 = mu(3, 4, 22).unwrap();
    let target = w(&[-2, -1, 2]);
    let mut failures = Vec::new();
    for n in 0..=15i64 {
        let an = a.term(n);
        let dp = count_restricted_perms(n as usize, &target);
        if an != dp {
            failures.push(format!("n={n}: a080013={an} DP={dp}"));
        }
        let twice = &an * 2;
        let (m14, m34) = (mu14.term(n + 1), mu34.term(n + 7));
        if m14 != twice {
            failures.push(format!(
                "n={n}: mu^(1,4)_{}={m14} but 2*a080013={twice}",
                n + 1
            ));
        }
        if m34 != twice {
            failures.push(format!(
                "n={n}: mu^(3,4)_{}={m34} but 2*a080013={twice}",
                n + 7
            ));
        }
    }
    if failures.is_empty() {
        Ok("0<=n<=15".into())
    } else {
        Err(format!(
            "{} ({} of 48 comparisons hold)",
            failures.join("; "),
            48 - failures.len()
        ))
    }
}

fn general_identities() -> Check {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in 0..=4 {
        reports.push(identities::verify_identity_gen1(m, 30));
        reports.push(identities::verify_identity_sum(m, 30));
        for j in 0..=m + 1 {
            reports.push(identities::verify_identity_block(m, j, 30).map_err(|e| e.to_string())?);
        }
        reports.push(identities::verify_identity_mixed(m, 30));
        if m >= 1 {
            reports.push(identities::verify_identity_gen2(m, 30).map_err(|e| e.to_string())?);
            reports.push(identities::verify_identity_mixed2(m, 30).map_err(|e| e.to_string())?);
        }
    }
    let ok = all_verified(&reports)?;
    Ok(format!("{ok}, {}", within(Duration::from_secs(60), t)?))
}

fn narayana_padovan() -> Check {
    let own = identities::verify_narayana_padovan(40);
    let ok = all_verified(&own)?;
    let general = [
        identities::verify_identity_gen1(1, 40),
        identities::verify_identity_gen2(1, 40).unwrap(),
        identities::verify_identity_sum(1, 40),
        identities::verify_identity_block(1, 0, 40).unwrap(),
        identities::verify_identity_block(1, 1, 40).unwrap(),
        identities::verify_identity_block(1, 2, 40).unwrap(),
        identities::verify_identity_mixed(1, 40),
        identities::verify_identity_mixed2(1, 40).unwrap(),
    ];
    for (a, b) in own.iter().zip(&general) {
        if a.is_verified() != b.is_verified() {
            return Err(format!(
                "{} is {} but {} at m=1 is {}",
                a.identity.name(),
                a.status_text(),
                b.identity.name(),
                b.status_text()
            ));
        }
    }
    Ok(format!("{ok}, verdicts match the general forms at m=1"))
}

fn permanents() -> Check {
    let mut subsets = 0;
    for bits in 1u32..(1 << 7) {
        if bits.count_ones() > 4 {
            continue;
        }
        let set =
            OffsetSet::new((0..7).filter(|i| bits >> i & 1 == 1).map(|i| i as i64 - 3)).unwrap();
        subsets += 1;
        for n in 0..=7 {
            let dp = count_restricted_perms(n, &set);
            let ryser = permanent_ryser(&toeplitz_from_w(n, &set)).unwrap();
            if dp != ryser {
                return Err(format!("W={set} n={n}: DP={dp} Ryser={ryser}"));
            }
        }
    }
    for set in [w(&[-1, 1, 2]), w(&[-1, 0, 2]), w(&[-1, 2, 3])] {
        let rec = theorem1_sequence(&set, 20).unwrap();
        for n in 0..=20 {
            let dp = count_restricted_perms(n, &set);
            if dp != rec.term(n as i64) {
                return Err(format!(
                    "W={set} n={n}: DP={dp} recurrence={}",
                    rec.term(n as i64)
                ));
            }
        }
        let image = mirror(&set);
        for n in 0..=12 {
            let (a, b) = (
                count_restricted_perms(n, &set),
                count_restricted_perms(n, &image),
            );
            if a != b {
                return Err(format!("W={set} n={n}: {a} but mirror {image} gives {b}"));
            }
        }
    }
    Ok(format!(
        "DP = Ryser on {subsets} sets, recurrence n<=20, mirror n<=12"
    ))
}

fn fence_bijection() -> Check {
    let mut sets: Vec<OffsetSet> = (0..=3).map(|m| w(&[-2, -1, m])).collect();
    sets.extend((1..=3).map(|m| w(&[-2, m - 1, m])));
    for set in &sets {
        let tiles = fence_tiles_from_w(set).unwrap();
        let counts = tiling_counts(12, &tiles, 2).unwrap();
        let perms = restricted_perm_table(set, 12);
        for (n, fences) in counts.iter().enumerate() {
            let direct = count_restricted_perms(n, set);
            if *fences != direct || perms.term(n as i64) != direct {
                return Err(format!(
                    "W={set} n={n}: fences {fences} permanents {direct}"
                ));
            }
        }
    }
    Ok(format!("{} offset sets, n<=12", sets.len()))
}

fn swap_pairs() -> Check {
    let mut families: Vec<(Vec<TileShape>, usize)> = (0..=3)
        .map(|m| (comb_pair(1, m + 2).unwrap(), 15))
        .collect();
    families.extend((1..=3).map(|m| (comb_pair(m + 1, m + 2).unwrap(), 2 * m + 15)));
    let mut swapped = 0usize;
    for (tiles, l_max) in &families {
        let c = census(tiles, 2, *l_max).map_err(|e| e.to_string())?;
        for l in 1..=*l_max {
            let count = c.mixed(l);
            if (&count % 2u32) != BigInt::zero() {
                return Err(format!("{} l={l}: mu = {count} is odd", c.tiles));
            }
            let mixed: Vec<_> = enumerate_metatiles(l, tiles, 2, usize::MAX)
                .unwrap()
                .into_iter()
                .filter(|b| b.labels().len() > 1)
                .collect();
            if BigInt::from(mixed.len()) != count {
                return Err(format!(
                    "{} l={l}: census {count}, enumerated {}",
                    c.tiles,
                    mixed.len()
                ));
            }
            let seen: BTreeSet<_> = mixed.iter().map(|b| b.placements().to_vec()).collect();
            for b in &mixed {
                let image = slot_swap(b).map_err(|e| e.to_string())?;
                if image.placements() == b.placements() {
                    return Err(format!(
                        "{} l={l}: {} is fixed by the swap",
                        c.tiles,
                        b.symbolic()
                    ));
                }
                if !seen.contains(image.placements()) {
                    return Err(format!(
                        "{} l={l}: image of {} is not a mixed metatile",
                        c.tiles,
                        b.symbolic()
                    ));
                }
                swapped += 1;
            }
        }
    }
    Ok(format!(
        "all counts even, {swapped} mixed metatiles swapped without fixed points"
    ))
}

fn anchors() -> Check {
    let trivial = w(&[-2, -1, 0]);
    let table = restricted_perm_table(&trivial, 20);
    for n in 0..=20 {
        if count_restricted_perms(n, &trivial) != BigInt::one()
            || table.term(n as i64) != BigInt::one()
        {
            return Err(format!("P_{n}^{{-2,-1,0}} is not 1"));
        }
    }
    let s = eval_sequence(&RecurrenceSpec::two_term(1, 2).unwrap(), 20);
    let (mut f0, mut f1) = (0u64, 1u64);
    for n in 0..=20 {
        if s.term(n) != BigInt::from(f1) {
            return Err(format!(
                "s_{n}^(1,2) = {} but F_{} = {f1}",
                s.term(n),
                n + 1
            ));
        }
        (f0, f1) = (f1, f0 + f1);
    }
    let mut boards: Vec<(Vec<TileShape>, usize)> = Vec::new();
    for spec in identities::default_specs() {
        boards.push((slot_combs(&spec, 2).unwrap(), 2));
        boards.push((slot_combs(&spec, 3).unwrap(), 3));
        boards.push((unit_combs(&spec, 2).unwrap(), 1));
    }
    for m in 0..=3 {
        boards.push((fence_tiles_from_w(&w(&[-2, -1, m])).unwrap(), 2));
        boards.push((comb_pair(1, m as usize + 2).unwrap(), 2));
    }
    for (tiles, p) in &boards {
        if tiling_counts(0, tiles, *p).unwrap()[0] != BigInt::one() {
            return Err("A_0 != 1".into());
        }
        if census(tiles, *p, 4).unwrap().convolve(0)[0] != BigInt::one() {
            return Err("A_0 != 1 from the census".into());
        }
    }
    Ok(format!(
        "P^{{-2,-1,0}} = 1 and s^(1,2) = F_(n+1) for n<=20, A_0 = 1 on {} tile sets",
        boards.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("tilings by slot combs count s_n^p", slot_comb_powers),
        (
            "interleaved unit combs count s_n^(2-r) s_(n+1)^r",
            interleaved_unit_combs,
        ),
        ("mixed metatiles of half-squares and combs", mu_half_squares),
        ("mixed metatiles of two combs", mu_comb_pairs),
        ("A080013 links", a080013_links),
        ("identities for general m", general_identities),
        ("Narayana and Padovan identities", narayana_padovan),
        ("permanent agreement", permanents),
        ("fence tilings equal permanents", fence_bijection),
        ("mixed metatiles pair up under the slot swap", swap_pairs),
        ("degenerate anchors", anchors),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
