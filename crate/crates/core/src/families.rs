//! Exhaustive enumeration of rule families at small sizes, plus seeded
//! sampling of outcome tables. Every enumeration is deterministic.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::checked_pow;
use crate::domain::Alternative;
use crate::rules::{BallotFamily, Coalition, Committee, MedianScheme, QuotaFamily};

/// All nondecreasing `alpha` vectors of length `n - 1` over `0..m`.
pub fn median_schemes(n: usize, m: usize) -> Vec<MedianScheme> {
    (0..m)
        .combinations_with_replacement(n - 1)
        .map(MedianScheme::new)
        .collect()
}

/// All monotonic ballot families over `n` agents and `m` alternatives with
/// `p_N = 0` and `p_∅ = m - 1`.
pub fn ballot_families(n: usize, m: usize) -> Vec<BallotFamily> {
    let size = 1usize << n;
    // Larger coalitions first, so every strict superset is fixed before S.
    let order: Vec<usize> = (0..size)
        .sorted_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s))
        .collect();
    let mut ballots = vec![0; size];
    let mut out = Vec::new();
    fill_ballots(n, m, &order, 0, &mut ballots, &mut out);
    out
}

fn fill_ballots(
    n: usize,
    m: usize,
    order: &[usize],
    depth: usize,
    ballots: &mut Vec<Alternative>,
    out: &mut Vec<BallotFamily>,
) {
    let Some(&s) = order.get(depth) else {
        out.push(BallotFamily::new(ballots.clone()));
        return;
    };
    let full = (1usize << n) - 1;
    let floor = (0..n)
        .filter(|&i| s >> i & 1 == 0)
        .map(|i| ballots[s | 1 << i])
        .max()
        .unwrap_or(0);
    let range = if s == full {
        0..=0
    } else if s == 0 {
        m - 1..=m - 1
    } else {
        floor..=m - 1
    };
    for value in range {
        if value < floor {
            continue;
        }
        ballots[s] = value;
        fill_ballots(n, m, order, depth + 1, ballots, out);
    }
}

/// Every committee over `n` agents: nonempty antichains of nonempty coalitions.
pub fn committees(n: usize) -> Vec<Committee> {
    let coalitions: Vec<Coalition> = (1u32..1 << n).map(Coalition).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_antichain(&coalitions, 0, &mut chosen, &mut out);
    out.sort();
    out
}

fn extend_antichain(
    coalitions: &[Coalition],
    from: usize,
    chosen: &mut Vec<Coalition>,
    out: &mut Vec<Committee>,
) {
    if !chosen.is_empty() {
        out.push(Committee::new(chosen.clone()));
    }
    for (idx, &c) in coalitions.iter().enumerate().skip(from) {
        if chosen
            .iter()
            .all(|&d| !c.is_subset_of(d) && !d.is_subset_of(c))
        {
            chosen.push(c);
            extend_antichain(coalitions, idx + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Every committee family with one committee per object.
pub fn committee_families(n: usize, objects: usize) -> Vec<Vec<Committee>> {
    let single = committees(n);
    std::iter::repeat_n(single, objects)
        .multi_cartesian_product()
        .collect()
}

/// Every quota vector `q_k ∈ 1..=n`, one entry per object.
pub fn quota_families(n: usize, objects: usize) -> Vec<QuotaFamily> {
    std::iter::repeat_n(1..=n, objects)
        .multi_cartesian_product()
        .map(QuotaFamily::new)
        .collect()
}

/// Every outcome table over `n` agents and `m` alternatives (`m^(m^n)` of them).
pub fn all_tables(n: usize, m: usize) -> impl Iterator<Item = Vec<Alternative>> {
    let len = m.pow(n as u32);
    std::iter::repeat_n(0..m, len)
        .multi_cartesian_product()
}

/// Number of outcome tables, if it fits in `u64`.
pub fn table_count(n: usize, m: usize) -> Option<u64> {
    let len = checked_pow(m, n)?;
    checked_pow(m, usize::try_from(len).ok()?)
}

/// Uniformly random onto tables: each table is drawn uniformly and redrawn
/// until every alternative appears. Returns the tables and how many non-onto
/// draws were rejected.
pub fn sample_onto_tables(
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
) -> (Vec<Vec<Alternative>>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = m.pow(n as u32);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let table: Vec<Alternative> = (0..len).map(|_| rng.gen_range(0..m)).collect();
        let mut hit = vec![false; m];
        table.iter().for_each(|&x| hit[x] = true);
        if hit.iter().all(|&h| h) {
            out.push(table);
        } else {
            rejected += 1;
        }
    }
    (out, rejected)
}

/// Uniformly random tables without the onto filter.
pub fn sample_tables(n: usize, m: usize, count: usize, seed: u64) -> Vec<Vec<Alternative>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = m.pow(n as u32);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(0..m)).collect())
        .collect()
}
