//! Standalone combinatorial algorithms on ordered sets: monotone
//! subsequences, the interval-splitting greedy, sorted-by-layers detection,
//! monochromatic subset search and near-disjoint tuple packing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{for_each_subset, next_subset};
use crate::order::VertexOrder;
use crate::rat::binomial_u128;
use crate::seeding::{rng_from_seed, sample_distinct_sorted};
use rand::seq::SliceRandom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Certifies that a product set is (inversely) sorted by one coordinate.
/// Axes are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSortWitness {
    pub axis: usize,
    pub direction: Direction,
}

// ---------------------------------------------------------------------------
// Monotone subsequences (patience sorting)
// ---------------------------------------------------------------------------

/// Longest strictly increasing subsequence via patience sorting; returns the
/// element indices.
fn lis_indices(seq: &[i64]) -> Vec<usize> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    // tops[p] = index of the current top of pile p; preds link each element to
    // the top of the pile to its left at insertion time.
    let mut tops: Vec<usize> = Vec::new();
    let mut preds: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let p = tops.partition_point(|&t| seq[t] < seq[i]);
        if p > 0 {
            preds[i] = Some(tops[p - 1]);
        }
        if p == tops.len() {
            tops.push(i);
        } else {
            tops[p] = i;
        }
    }
    let mut out = Vec::with_capacity(tops.len());
    let mut cur = Some(*tops.last().unwrap());
    while let Some(i) = cur {
        out.push(i);
        cur = preds[i];
    }
    out.reverse();
    out
}

/// An increasing or decreasing subsequence with exactly `t` terms, if one
/// exists. O(n log n); guaranteed non-`None` when `seq.len() >= (t-1)^2 + 1`.
pub fn monotone_subsequence(seq: &[i64], t: usize) -> Option<Vec<i64>> {
    if t == 0 {
        return Some(Vec::new());
    }
    let inc = lis_indices(seq);
    if inc.len() >= t {
        return Some(inc[..t].iter().map(|&i| seq[i]).collect());
    }
    let negated: Vec<i64> = seq.iter().map(|&x| -x).collect();
    let dec = lis_indices(&negated);
    if dec.len() >= t {
        return Some(dec[..t].iter().map(|&i| seq[i]).collect());
    }
    None
}

// ---------------------------------------------------------------------------
// Interval splitting greedy
// ---------------------------------------------------------------------------

/// Splits disjoint sets `A_1 … A_k` into subsets `B_i ⊆ A_i` with
/// `|B_i| >= |A_i| / k` such that no element of one `B_j` lies strictly
/// between two elements of another `B_i` under `ord`.
///
/// This is the greedy from the inductive proof: grow a set `C` from the
/// smallest element upward until the first set reaches `|A_i ∩ C| >= |A_i|/k`
/// (compared exactly as `|A_i ∩ C| * k >= |A_i|`), freeze that `B_i`, strip
/// `C` everywhere, and recurse on the remaining sets. Empty input sets get an
/// empty `B_i` and do not count towards `k`.
pub fn imo_split(sets: &[Vec<usize>], ord: &VertexOrder) -> Result<Vec<Vec<usize>>> {
    let mut seen = std::collections::HashSet::new();
    for set in sets {
        for &x in set {
            if !seen.insert(x) {
                return Err(Error::invalid(format!("sets are not disjoint: {x} repeats")));
            }
            if x >= ord.len() {
                return Err(Error::invalid(format!("element {x} outside the order's domain")));
            }
        }
    }
    let mut result: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    let active: Vec<(usize, Vec<usize>)> = sets
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(i, s)| (i, s.clone()))
        .collect();
    split_rec(active, ord, &mut result);
    Ok(result)
}

fn split_rec(sets: Vec<(usize, Vec<usize>)>, ord: &VertexOrder, result: &mut [Vec<usize>]) {
    let k = sets.len();
    if k == 0 {
        return;
    }
    if k == 1 {
        let (orig, elems) = &sets[0];
        result[*orig] = elems.clone();
        return;
    }
    let original_sizes: Vec<usize> = sets.iter().map(|(_, s)| s.len()).collect();
    // Union, smallest-first under ord.
    let mut union: Vec<(usize, usize)> = Vec::new(); // (element, owner position)
    for (pos, (_, elems)) in sets.iter().enumerate() {
        for &x in elems {
            union.push((x, pos));
        }
    }
    union.sort_by_key(|&(x, _)| ord.rank(x));

    let mut counts = vec![0usize; k];
    let mut cut = 0usize;
    let mut saturated = usize::MAX;
    for (step, &(_, owner)) in union.iter().enumerate() {
        counts[owner] += 1;
        // Exact comparison of |A_i ∩ C| >= |A_i| / k.
        if counts[owner] * k >= original_sizes[owner] {
            // Only the owner's count changed, so it is the unique (and thus
            // lowest-index) newly saturated set.
            saturated = owner;
            cut = step + 1;
            break;
        }
    }
    debug_assert!(saturated != usize::MAX, "some set must saturate before C = A");

    let in_c: std::collections::HashSet<usize> = union[..cut].iter().map(|&(x, _)| x).collect();
    let (orig, elems) = &sets[saturated];
    result[*orig] = elems.iter().copied().filter(|x| in_c.contains(x)).collect();

    let rest: Vec<(usize, Vec<usize>)> = sets
        .iter()
        .enumerate()
        .filter(|&(pos, _)| pos != saturated)
        .map(|(_, (orig, elems))| {
            (*orig, elems.iter().copied().filter(|x| !in_c.contains(x)).collect())
        })
        .collect();
    split_rec(rest, ord, result);
}

/// Independent O(n^2) checker of the no-interleaving property: no element of
/// `B_j` lies strictly between two elements of `B_i`.
pub fn interleaving_violation(
    bs: &[Vec<usize>],
    ord: &VertexOrder,
) -> Option<(usize, usize, usize)> {
    for (i, bi) in bs.iter().enumerate() {
        if bi.len() < 2 {
            continue;
        }
        let lo = bi.iter().map(|&x| ord.rank(x)).min().unwrap();
        let hi = bi.iter().map(|&x| ord.rank(x)).max().unwrap();
        for (j, bj) in bs.iter().enumerate() {
            if i == j {
                continue;
            }
            for &y in bj {
                if lo < ord.rank(y) && ord.rank(y) < hi {
                    return Some((i, j, y));
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Sorted by layers
// ---------------------------------------------------------------------------

/// Whether the order on `points` (given as a rank per point) is sorted or
/// inversely sorted by some coordinate. `points` must form a full product of
/// distinct per-axis coordinate sets.
pub fn sorted_by_layers_check(
    points: &[Vec<i64>],
    ranks: &[usize],
) -> Result<Option<LayerSortWitness>> {
    if points.is_empty() {
        return Err(Error::invalid("empty point set"));
    }
    if points.len() != ranks.len() {
        return Err(Error::invalid("one rank per point required"));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::invalid("points have mixed dimensions"));
    }
    // Validate the full-product precondition.
    let mut axes: Vec<Vec<i64>> = vec![Vec::new(); d];
    for p in points {
        for (i, &c) in p.iter().enumerate() {
            axes[i].push(c);
        }
    }
    for axis in &mut axes {
        axis.sort_unstable();
        axis.dedup();
    }
    let product: usize = axes.iter().map(|a| a.len()).product();
    let mut dedup_points = points.to_vec();
    dedup_points.sort_unstable();
    dedup_points.dedup();
    if product != points.len() || dedup_points.len() != points.len() {
        return Err(Error::invalid("points do not form a full product of coordinate sets"));
    }

    for axis in 0..d {
        let mut ascending = true;
        let mut descending = true;
        'pairs: for a in 0..points.len() {
            for b in 0..points.len() {
                if points[a][axis] < points[b][axis] {
                    if ranks[a] > ranks[b] {
                        ascending = false;
                    }
                    if ranks[a] < ranks[b] {
                        descending = false;
                    }
                    if !ascending && !descending {
                        break 'pairs;
                    }
                }
            }
        }
        if ascending {
            return Ok(Some(LayerSortWitness { axis, direction: Direction::Ascending }));
        }
        if descending {
            return Ok(Some(LayerSortWitness { axis, direction: Direction::Descending }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Layer-sorted sub-grid search
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct FisgraCaps {
    pub max_n: usize,
    pub max_d: usize,
    pub max_k: usize,
}

impl Default for FisgraCaps {
    fn default() -> Self {
        FisgraCaps { max_n: 8, max_d: 3, max_k: 3 }
    }
}

/// Searches a linear order on the grid `{0..n-1}^d` (row-major vertex
/// numbering, axis 0 slowest) for coordinate subsets `S_1 … S_d`, each of
/// size `k`, whose product is sorted by layers. A finder on the given order,
/// not a computation of the guarantee threshold.
pub fn fisgra_search(
    ranks: &[usize],
    n: usize,
    d: usize,
    k: usize,
    caps: &FisgraCaps,
) -> Result<Option<(Vec<Vec<usize>>, LayerSortWitness)>> {
    if n == 0 || d == 0 || k == 0 {
        return Err(Error::invalid("n, d, k must be positive"));
    }
    if n > caps.max_n || d > caps.max_d || k > caps.max_k {
        return Err(Error::cap(format!(
            "grid search capped at n <= {}, d <= {}, k <= {}",
            caps.max_n, caps.max_d, caps.max_k
        )));
    }
    let total = n.pow(d as u32);
    if ranks.len() != total {
        return Err(Error::invalid(format!("expected {total} ranks, got {}", ranks.len())));
    }
    if k > n {
        return Ok(None);
    }

    let vertex_of = |coords: &[usize]| -> usize { coords.iter().fold(0usize, |acc, &c| acc * n + c) };

    // Choose one k-subset per axis, then test the product.
    let mut subsets: Vec<Vec<usize>> = vec![(0..k).collect(); d];
    loop {
        let mut points: Vec<Vec<i64>> = Vec::new();
        let mut point_ranks: Vec<usize> = Vec::new();
        let mut idx = vec![0usize; d];
        'product: loop {
            let coords: Vec<usize> = (0..d).map(|i| subsets[i][idx[i]]).collect();
            points.push(coords.iter().map(|&c| c as i64).collect());
            point_ranks.push(ranks[vertex_of(&coords)]);
            let mut axis = d;
            while axis > 0 {
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < k {
                    continue 'product;
                }
                idx[axis] = 0;
            }
            break;
        }
        if let Some(witness) = sorted_by_layers_check(&points, &point_ranks)? {
            return Ok(Some((subsets, witness)));
        }

        // Advance the tuple of subsets lexicographically.
        let mut axis = d;
        loop {
            if axis == 0 {
                return Ok(None);
            }
            axis -= 1;
            if next_subset(&mut subsets[axis], n) {
                break;
            }
            subsets[axis] = (0..k).collect();
        }
    }
}

// ---------------------------------------------------------------------------
// Monochromatic subsets
// ---------------------------------------------------------------------------

/// Finds an m-subset of `{0..n-1}` all of whose r-subsets receive the same
/// color, on the GIVEN coloring; backtracking, lexicographically least
/// witness. Subsets smaller than r are vacuously monochromatic.
pub fn monochromatic_subset<F>(n: usize, r: usize, m: usize, coloring: &F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> u64,
{
    if m > n {
        return None;
    }
    if m < r {
        return Some((0..m).collect());
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    let mut color: Option<u64> = None;
    fn extend<F: Fn(&[usize]) -> u64>(
        n: usize,
        r: usize,
        m: usize,
        coloring: &F,
        chosen: &mut Vec<usize>,
        color: &mut Option<u64>,
        start: usize,
    ) -> bool {
        if chosen.len() == m {
            return true;
        }
        if n - start < m - chosen.len() {
            return false;
        }
        'next: for v in start..n {
            let prior_color = *color;
            if chosen.len() + 1 >= r {
                // Every new r-subset contains v and r-1 previous picks.
                let mut sub: Vec<usize> = (0..r - 1).collect();
                loop {
                    let mut tuple: Vec<usize> = sub.iter().map(|&i| chosen[i]).collect();
                    tuple.push(v);
                    let c = coloring(&tuple);
                    match *color {
                        None => *color = Some(c),
                        Some(expected) if expected != c => {
                            *color = prior_color;
                            continue 'next;
                        }
                        _ => {}
                    }
                    if r == 1 || !next_subset(&mut sub, chosen.len()) {
                        break;
                    }
                }
            }
            chosen.push(v);
            if extend(n, r, m, coloring, chosen, color, v + 1) {
                return true;
            }
            chosen.pop();
            *color = prior_color;
        }
        false
    }
    if extend(n, r, m, coloring, &mut chosen, &mut color, 0) {
        Some(chosen)
    } else {
        None
    }
}

/// Oracle-style exhaustive scan over all m-subsets; used to cross-check the
/// backtracking finder.
pub fn monochromatic_subset_exhaustive<F>(
    n: usize,
    r: usize,
    m: usize,
    coloring: &F,
) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> u64,
{
    if m > n {
        return None;
    }
    if m < r {
        return Some((0..m).collect());
    }
    let mut found = None;
    for_each_subset(n, m, |s| {
        if found.is_some() {
            return;
        }
        let mut color = None;
        let mut ok = true;
        for_each_subset(m, r, |idx| {
            if !ok {
                return;
            }
            let tuple: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
            let c = coloring(&tuple);
            match color {
                None => color = Some(c),
                Some(expected) if expected != c => ok = false,
                _ => {}
            }
        });
        if ok {
            found = Some(s.to_vec());
        }
    });
    found
}

// ---------------------------------------------------------------------------
// Near-disjoint tuple packing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PackingReport {
    pub family: Vec<Vec<usize>>,
    /// `floor(|S|^2 / (2 r^2))`, the size the construction aims for.
    pub target: usize,
    pub reached_target: bool,
    pub restarts_used: usize,
}

/// Packs r-subsets of `{0..size-1}` with pairwise intersections of size at
/// most 1, by randomized greedy with restarts; keeps the best family found.
pub fn linear_packing(size: usize, r: usize, seed: u64, restarts: usize) -> Result<PackingReport> {
    if r < 2 || size < r {
        return Err(Error::invalid("packing needs size >= r >= 2"));
    }
    let target = size * size / (2 * r * r);
    let mut rng = rng_from_seed(seed);
    let enumerable = binomial_u128(size as u64, r as u64) <= 200_000;
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut restarts_used = 0;
    for _ in 0..restarts.max(1) {
        restarts_used += 1;
        let family = if enumerable {
            let mut candidates: Vec<Vec<usize>> = Vec::new();
            for_each_subset(size, r, |s| candidates.push(s.to_vec()));
            candidates.shuffle(&mut rng);
            greedy_pack(size, &candidates)
        } else {
            // Rejection-sampled greedy for large ground sets.
            let attempts = size * size;
            let mut candidates = Vec::with_capacity(attempts);
            for _ in 0..attempts {
                candidates.push(sample_distinct_sorted(&mut rng, size, r));
            }
            greedy_pack(size, &candidates)
        };
        if family.len() > best.len() {
            best = family;
        }
        if best.len() >= target {
            break;
        }
    }
    let reached_target = best.len() >= target;
    Ok(PackingReport { family: best, target, reached_target, restarts_used })
}

fn greedy_pack(size: usize, candidates: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pair_used = vec![false; size * size];
    let mut family = Vec::new();
    'cand: for c in candidates {
        for a in 0..c.len() {
            for b in (a + 1)..c.len() {
                if pair_used[c[a] * size + c[b]] {
                    continue 'cand;
                }
            }
        }
        for a in 0..c.len() {
            for b in (a + 1)..c.len() {
                pair_used[c[a] * size + c[b]] = true;
            }
        }
        family.push(c.clone());
    }
    family
}

/// Checks the packing property directly.
pub fn is_near_disjoint(family: &[Vec<usize>]) -> bool {
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let shared = family[i].iter().filter(|v| family[j].contains(v)).count();
            if shared > 1 {
                return false;
            }
        }
    }
    true
}
