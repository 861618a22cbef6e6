//! Explicit hypergraph constructions: sparse random linear graphs, the
//! nowhere-emptiness verifier, and the two edge-splitting constructions that
//! turn a linear (2r-2)-graph into a quasi-linear r-graph.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::descriptive::{DescriptiveSequence, Letter};
use crate::error::{Error, Result};
use crate::hypergraph::RGraph;
use crate::rat::{binomial_u128, rat_int, rational_from_f64, Rational};
use crate::seeding::{rng_from_seed, sample_distinct_sorted};

// ---------------------------------------------------------------------------
// Random linear candidates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LinearCandidateReport {
    pub graph: RGraph,
    /// |T|: edges removed for meeting another edge in two or more vertices.
    pub removed_count: usize,
    /// Exact rational value of the edge probability actually used (the f64
    /// closest to n^(-r+3/2)).
    pub p: Rational,
    pub p_float: f64,
    pub seed: u64,
}

/// Samples G(n, p) with p = n^(-r+3/2), removes every edge that intersects
/// another in at least two vertices, and returns the (linear) remainder.
///
/// Edges are drawn by geometric skipping through the lexicographic
/// enumeration of r-subsets, so the cost is proportional to the number of
/// edges rather than C(n, r).
pub fn random_linear_candidate(n: usize, r: usize, seed: u64) -> Result<LinearCandidateReport> {
    if r < 3 || n < r {
        return Err(Error::invalid("need n >= r >= 3"));
    }
    let p = (n as f64).powf(1.5 - r as f64);
    let mut rng = rng_from_seed(seed);
    let total = binomial_u128(n as u64, r as u64);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    if p >= 1.0 {
        // Degenerate; unreachable for n >= r >= 3 but kept total.
        let mut sub: Vec<usize> = (0..r).collect();
        loop {
            edges.push(sub.clone());
            if !crate::hypergraph::next_subset(&mut sub, n) {
                break;
            }
        }
    } else if p > 0.0 {
        let ln_q = (1.0 - p).ln();
        let mut pos: u128 = 0;
        loop {
            let u: f64 = rng.gen::<f64>();
            // Geometric number of misses before the next success.
            let skip = ((1.0 - u).ln() / ln_q).floor();
            if !skip.is_finite() || skip >= (total as f64) {
                break;
            }
            pos = match pos.checked_add(skip as u128) {
                Some(p) if p < total => p,
                _ => break,
            };
            edges.push(unrank_subset(pos, n as u64, r as u64));
            pos += 1;
            if pos >= total {
                break;
            }
        }
    }

    // T: all edges meeting another edge in >= 2 vertices.
    let mut in_t = vec![false; edges.len()];
    let mut buckets: std::collections::HashMap<(usize, usize), Vec<usize>> =
        std::collections::HashMap::new();
    for (idx, e) in edges.iter().enumerate() {
        for a in 0..e.len() {
            for b in (a + 1)..e.len() {
                buckets.entry((e[a], e[b])).or_default().push(idx);
            }
        }
    }
    for bucket in buckets.values() {
        if bucket.len() >= 2 {
            for &idx in bucket {
                in_t[idx] = true;
            }
        }
    }
    let removed_count = in_t.iter().filter(|&&x| x).count();
    let kept: Vec<Vec<usize>> =
        edges.into_iter().zip(&in_t).filter(|(_, &t)| !t).map(|(e, _)| e).collect();
    let graph = RGraph::new(r, n, kept)?;
    debug_assert!(graph.is_linear());
    Ok(LinearCandidateReport {
        graph,
        removed_count,
        p: rational_from_f64(p).unwrap_or_else(|| rat_int(0)),
        p_float: p,
        seed,
    })
}

/// The rank-th r-subset of {0..n-1} in lexicographic order.
fn unrank_subset(mut rank: u128, n: u64, r: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(r as usize);
    let mut v = 0u64;
    for i in 0..r {
        loop {
            let c = binomial_u128(n - 1 - v, r - 1 - i);
            if rank < c {
                out.push(v as usize);
                v += 1;
                break;
            }
            rank -= c;
            v += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Nowhere-emptiness
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NowhereEmptyReport {
    /// Tuples of disjoint sets met by no edge.
    pub failures: u64,
    pub tuples_examined: u64,
    pub set_size: usize,
    pub exhaustive: bool,
    /// Up to ten failing tuples, for diagnosis.
    pub examples: Vec<Vec<Vec<usize>>>,
}

/// Tests whether every family of r disjoint vertex sets of size
/// `ceil(c * n)` is met by some edge (one vertex in each set).
///
/// Exhaustive over all such families when n <= 12, sampled otherwise.
pub fn verify_nowhere_empty(
    h: &RGraph,
    c: &Rational,
    trials: u64,
    seed: u64,
) -> Result<NowhereEmptyReport> {
    let n = h.n();
    let r = h.r();
    if *c <= rat_int(0) || c.clone() * rat_int(r as u64) > rat_int(1) {
        return Err(Error::invalid("need 0 < c <= 1/r"));
    }
    let size_rat = c.clone() * rat_int(n as u64);
    let s = num_traits::ToPrimitive::to_usize(&size_rat.ceil().to_integer())
        .ok_or_else(|| Error::invalid("set size overflow"))?;
    let s = s.max(1);
    if r * s > n {
        return Err(Error::invalid(format!(
            "cannot fit {r} disjoint sets of size {s} into {n} vertices"
        )));
    }

    let mut failures = 0u64;
    let mut examined = 0u64;
    let mut examples = Vec::new();

    let mut check_tuple = |sets: &[Vec<usize>]| {
        examined += 1;
        let mut owner = vec![usize::MAX; n];
        for (i, set) in sets.iter().enumerate() {
            for &v in set {
                owner[v] = i;
            }
        }
        let hit = h.edges().iter().any(|e| {
            let mut mask: u64 = 0;
            for &v in e {
                if owner[v] != usize::MAX {
                    mask |= 1 << owner[v];
                }
            }
            mask.count_ones() as usize == r
        });
        if !hit {
            failures += 1;
            if examples.len() < 10 {
                examples.push(sets.to_vec());
            }
        }
    };

    let exhaustive = n <= 12;
    if exhaustive {
        // Canonical families: sets ordered by their minimum element.
        let mut sets: Vec<Vec<usize>> = Vec::new();
        enumerate_disjoint_families(n, r, s, 0, &mut sets, &mut check_tuple);
    } else {
        let mut rng = rng_from_seed(seed);
        for _ in 0..trials {
            let flat = sample_distinct_sorted(&mut rng, n, r * s);
            let sets: Vec<Vec<usize>> = flat.chunks(s).map(|c| c.to_vec()).collect();
            check_tuple(&sets);
        }
    }
    Ok(NowhereEmptyReport {
        failures,
        tuples_examined: examined,
        set_size: s,
        exhaustive,
        examples,
    })
}

fn enumerate_disjoint_families<F: FnMut(&[Vec<usize>])>(
    n: usize,
    r: usize,
    s: usize,
    min_start: usize,
    sets: &mut Vec<Vec<usize>>,
    visit: &mut F,
) {
    if sets.len() == r {
        visit(sets);
        return;
    }
    let used: std::collections::HashSet<usize> = sets.iter().flatten().copied().collect();
    // The next set's minimum element anchors the canonical ordering.
    for first in min_start..n {
        if used.contains(&first) {
            continue;
        }
        let avail: Vec<usize> =
            ((first + 1)..n).filter(|v| !used.contains(v)).collect();
        if avail.len() + 1 < s {
            continue;
        }
        let mut idx: Vec<usize> = (0..s - 1).collect();
        loop {
            let mut set = vec![first];
            set.extend(idx.iter().map(|&i| avail[i]));
            sets.push(set);
            enumerate_disjoint_families(n, r, s, first + 1, sets, visit);
            sets.pop();
            if s == 1 || !crate::hypergraph::next_subset(&mut idx, avail.len()) {
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Edge splitting
// ---------------------------------------------------------------------------

/// A split construction's output: the r-graph plus, per output edge, the
/// index of the input edge it came from. Twin pairs are exactly the output
/// edges sharing a source.
#[derive(Clone, Debug)]
pub struct SplitOutput {
    pub graph: RGraph,
    pub provenance: Vec<usize>,
    /// Input edges discarded for a repeated coordinate on some axis (grid
    /// construction only).
    pub discarded_repeat_coordinate: usize,
    /// Input edges discarded because no letter labeling matched all axes.
    pub discarded_no_labeling: usize,
}

impl SplitOutput {
    /// Twin pairs as (output edge index, output edge index), via provenance.
    pub fn twin_pairs(&self) -> Vec<(usize, usize)> {
        let mut by_source: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for (out_idx, &src) in self.provenance.iter().enumerate() {
            by_source.entry(src).or_default().push(out_idx);
        }
        let mut pairs: Vec<(usize, usize)> = by_source
            .values()
            .map(|v| {
                debug_assert_eq!(v.len(), 2);
                (v[0].min(v[1]), v[0].max(v[1]))
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

fn assemble_split(
    r: usize,
    n: usize,
    mut tagged: Vec<(Vec<usize>, usize)>,
    discarded_repeat_coordinate: usize,
    discarded_no_labeling: usize,
) -> Result<SplitOutput> {
    tagged.sort();
    for w in tagged.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::structure(
                "two input edges produced the same output edge; input is not linear",
            ));
        }
    }
    let provenance: Vec<usize> = tagged.iter().map(|(_, src)| *src).collect();
    let edges: Vec<Vec<usize>> = tagged.into_iter().map(|(e, _)| e).collect();
    let graph = RGraph::new_strict(r, n, edges)?;
    Ok(SplitOutput { graph, provenance, discarded_repeat_coordinate, discarded_no_labeling })
}

/// Splits every edge of a linear (2r-2)-graph, sorted in the natural vertex
/// order, into its first r and last r vertices. The two parts share exactly
/// the middle pair, so the output is quasi-linear and admits XX…XZZYY…Y under
/// the natural order.
pub fn split_construction_14(hp: &RGraph) -> Result<SplitOutput> {
    let t = hp.r();
    if !t.is_multiple_of(2) || t < 4 {
        return Err(Error::invalid(format!(
            "input uniformity {t} must be even and at least 4"
        )));
    }
    if !hp.is_linear() {
        return Err(Error::structure("input graph is not linear"));
    }
    let r = (t + 2) / 2;
    let mut tagged = Vec::with_capacity(2 * hp.edge_count());
    for (src, e) in hp.edges().iter().enumerate() {
        tagged.push((e[..r].to_vec(), src));
        tagged.push((e[t - r..].to_vec(), src));
    }
    assemble_split(r, hp.n(), tagged, 0, 0)
}

// ---------------------------------------------------------------------------
// Grid-labeled splitting
// ---------------------------------------------------------------------------

/// Row-major bijection between `{0..m^d-1}` and the 0-based grid `[m]^d`;
/// axis 0 varies slowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridVertexMap {
    pub m: usize,
    pub d: usize,
}

impl GridVertexMap {
    pub fn new(m: usize, d: usize) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::invalid("grid needs m >= 1 and d >= 1"));
        }
        let mut size: usize = 1;
        for _ in 0..d {
            size = size
                .checked_mul(m)
                .ok_or_else(|| Error::invalid("grid size overflows usize"))?;
        }
        Ok(GridVertexMap { m, d })
    }

    pub fn vertex_count(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        debug_assert!(v < self.vertex_count());
        let mut out = vec![0; self.d];
        let mut rest = v;
        for i in (0..self.d).rev() {
            out[i] = rest % self.m;
            rest /= self.m;
        }
        out
    }

    pub fn coordinate(&self, v: usize, axis: usize) -> usize {
        (v / self.m.pow((self.d - 1 - axis) as u32)) % self.m
    }

    pub fn vertex(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.d);
        coords.iter().fold(0, |acc, &c| acc * self.m + c)
    }
}

/// Searches for a labeling of the 2r-2 vertices of `e` by r-2 X's, r-2 Y's
/// and two Z's such that sorting by the i-th coordinate spells `sigmas[i]`,
/// for every axis i. Exhaustive over the distinct letter arrangements in
/// lexicographic order (X < Y < Z); the result is aligned with `e`.
pub fn labeling_search(
    e: &[usize],
    grid: &GridVertexMap,
    sigmas: &[DescriptiveSequence],
) -> Result<Option<Vec<Letter>>> {
    if sigmas.len() != grid.d {
        return Err(Error::invalid("one descriptive sequence per axis required"));
    }
    let r = sigmas[0].order();
    if sigmas.iter().any(|s| s.order() != r) {
        return Err(Error::invalid("descriptive sequences have mixed orders"));
    }
    let t = 2 * r - 2;
    if e.len() != t {
        return Err(Error::invalid(format!("edge has {} vertices, expected {t}", e.len())));
    }
    // Precompute, per axis, the positions of e sorted by that coordinate.
    let mut axis_orders: Vec<Vec<usize>> = Vec::with_capacity(grid.d);
    for axis in 0..grid.d {
        let mut idx: Vec<usize> = (0..t).collect();
        idx.sort_by_key(|&i| grid.coordinate(e[i], axis));
        for w in idx.windows(2) {
            if grid.coordinate(e[w[0]], axis) == grid.coordinate(e[w[1]], axis) {
                return Err(Error::invalid(format!(
                    "two vertices share their axis-{axis} coordinate"
                )));
            }
        }
        axis_orders.push(idx);
    }

    let mut labeling: Vec<Option<Letter>> = vec![None; t];
    let mut counts = [r - 2, r - 2, 2usize];
    fn rec(
        pos: usize,
        labeling: &mut Vec<Option<Letter>>,
        counts: &mut [usize; 3],
        axis_orders: &[Vec<usize>],
        sigmas: &[DescriptiveSequence],
    ) -> bool {
        let t = labeling.len();
        if pos == t {
            return axis_orders.iter().zip(sigmas).all(|(order, sigma)| {
                order
                    .iter()
                    .zip(sigma.letters())
                    .all(|(&i, &want)| labeling[i] == Some(want))
            });
        }
        for (ci, letter) in [Letter::X, Letter::Y, Letter::Z].into_iter().enumerate() {
            if counts[ci] == 0 {
                continue;
            }
            counts[ci] -= 1;
            labeling[pos] = Some(letter);
            if rec(pos + 1, labeling, counts, axis_orders, sigmas) {
                return true;
            }
            labeling[pos] = None;
            counts[ci] += 1;
        }
        false
    }
    if rec(0, &mut labeling, &mut counts, &axis_orders, sigmas) {
        Ok(Some(labeling.into_iter().map(|l| l.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

/// Grid-labeled splitting: identifies V(H') with the grid, discards edges
/// with a repeated coordinate on any axis, labels the rest so that sorting by
/// axis i spells `sigmas[i]`, and splits labelable edges into their {X,Z} and
/// {Y,Z} parts.
pub fn split_construction_pi(
    hp: &RGraph,
    grid: &GridVertexMap,
    sigmas: &[DescriptiveSequence],
) -> Result<SplitOutput> {
    if sigmas.is_empty() || sigmas.len() != grid.d {
        return Err(Error::invalid("one descriptive sequence per grid axis required"));
    }
    let r = sigmas[0].order();
    if sigmas.iter().any(|s| s.order() != r) {
        return Err(Error::invalid("descriptive sequences have mixed orders"));
    }
    if hp.r() != 2 * r - 2 {
        return Err(Error::invalid(format!(
            "input uniformity {} does not match 2r-2 = {}",
            hp.r(),
            2 * r - 2
        )));
    }
    if hp.n() != grid.vertex_count() {
        return Err(Error::invalid(format!(
            "input has {} vertices but the grid has {}",
            hp.n(),
            grid.vertex_count()
        )));
    }
    if !hp.is_linear() {
        return Err(Error::structure("input graph is not linear"));
    }

    let mut tagged = Vec::new();
    let mut discarded_repeat = 0usize;
    let mut discarded_unlabeled = 0usize;
    'edges: for (src, e) in hp.edges().iter().enumerate() {
        for axis in 0..grid.d {
            let mut coords: Vec<usize> =
                e.iter().map(|&v| grid.coordinate(v, axis)).collect();
            coords.sort_unstable();
            if coords.windows(2).any(|w| w[0] == w[1]) {
                discarded_repeat += 1;
                continue 'edges;
            }
        }
        match labeling_search(e, grid, sigmas)? {
            None => discarded_unlabeled += 1,
            Some(labeling) => {
                let take = |keep: Letter| -> Vec<usize> {
                    e.iter()
                        .zip(&labeling)
                        .filter(|&(_, &l)| l == keep || l == Letter::Z)
                        .map(|(&v, _)| v)
                        .collect()
                };
                tagged.push((take(Letter::X), src));
                tagged.push((take(Letter::Y), src));
            }
        }
    }
    assemble_split(r, hp.n(), tagged, discarded_repeat, discarded_unlabeled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasilinear::twin_structure;
    use crate::rat::rat;

    #[test]
    fn unrank_enumerates_lexicographically() {
        let total = binomial_u128(5, 3);
        let mut subs = Vec::new();
        for rank in 0..total {
            subs.push(unrank_subset(rank, 5, 3));
        }
        let mut expected = Vec::new();
        crate::hypergraph::for_each_subset(5, 3, |s| expected.push(s.to_vec()));
        assert_eq!(subs, expected);
    }

    #[test]
    fn linear_candidate_is_linear() {
        for seed in 0..5 {
            let rep = random_linear_candidate(40, 3, seed).unwrap();
            assert!(rep.graph.max_pairwise_intersection() <= 1);
        }
    }

    #[test]
    fn linear_candidate_single_edge_case() {
        // n = r: only one candidate edge, never a removal.
        for seed in 0..20 {
            let rep = random_linear_candidate(3, 3, seed).unwrap();
            assert_eq!(rep.removed_count, 0);
            assert!(rep.graph.edge_count() <= 1);
        }
    }

    #[test]
    fn linear_candidate_deterministic() {
        let a = random_linear_candidate(60, 3, 9).unwrap();
        let b = random_linear_candidate(60, 3, 9).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.removed_count, b.removed_count);
    }

    #[test]
    fn nowhere_empty_complete_and_empty() {
        let complete = RGraph::complete(3, 9).unwrap();
        let rep = verify_nowhere_empty(&complete, &rat(1, 4), 100, 1).unwrap();
        assert_eq!(rep.failures, 0);
        assert!(rep.exhaustive);

        let empty = RGraph::empty(3, 9);
        let rep = verify_nowhere_empty(&empty, &rat(1, 4), 100, 1).unwrap();
        assert_eq!(rep.failures, rep.tuples_examined);
        assert!(!rep.examples.is_empty());
    }

    #[test]
    fn nowhere_empty_infeasible() {
        let h = RGraph::complete(3, 4).unwrap();
        // ceil(n/3) = 2 per set, 3 sets do not fit in 4 vertices.
        assert!(verify_nowhere_empty(&h, &rat(1, 3), 10, 1).is_err());
        assert!(verify_nowhere_empty(&h, &rat(1, 2), 10, 1).is_err());
    }

    #[test]
    fn split14_single_edges() {
        let h = RGraph::new(4, 5, vec![vec![1, 2, 3, 4]]).unwrap();
        let out = split_construction_14(&h).unwrap();
        assert_eq!(out.graph.edges(), &[vec![1, 2, 3], vec![2, 3, 4]]);
        assert_eq!(out.twin_pairs(), vec![(0, 1)]);

        let h = RGraph::new(6, 11, vec![vec![0, 2, 4, 6, 8, 10]]).unwrap();
        let out = split_construction_14(&h).unwrap();
        assert_eq!(out.graph.edges(), &[vec![0, 2, 4, 6], vec![4, 6, 8, 10]]);
    }

    #[test]
    fn split14_structure() {
        // Pairwise intersections <= 1, several edges.
        let h = RGraph::new(
            4,
            10,
            vec![vec![0, 1, 2, 3], vec![0, 4, 5, 6], vec![1, 4, 7, 8], vec![2, 5, 7, 9]],
        )
        .unwrap();
        let out = split_construction_14(&h).unwrap();
        assert_eq!(out.graph.edge_count(), 2 * h.edge_count());
        let ts = twin_structure(&out.graph).unwrap();
        assert_eq!(ts.pairs().len(), h.edge_count());
        // Twin intersections are the middle pairs {v_{r-1}, v_r}.
        for &(i, j) in ts.pairs() {
            let inter = ts.intersection(&out.graph, (i, j));
            let src = out.provenance[i];
            assert_eq!(inter.to_vec(), h.edges()[src][1..3].to_vec());
        }
    }

    #[test]
    fn split14_rejects_bad_inputs() {
        let odd = RGraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(split_construction_14(&odd), Err(Error::InvalidQuery(_))));
        let nonlinear =
            RGraph::new(4, 6, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        assert!(matches!(split_construction_14(&nonlinear), Err(Error::StructureError(_))));
    }

    #[test]
    fn grid_roundtrip() {
        let grid = GridVertexMap::new(4, 2).unwrap();
        for v in 0..grid.vertex_count() {
            let c = grid.coords(v);
            assert_eq!(grid.vertex(&c), v);
            assert_eq!(grid.coordinate(v, 0), c[0]);
            assert_eq!(grid.coordinate(v, 1), c[1]);
        }
    }

    #[test]
    fn labeling_dimension_one_is_transcription() {
        let grid = GridVertexMap::new(8, 1).unwrap();
        let sigma = DescriptiveSequence::parse("XZZY").unwrap();
        let labeling = labeling_search(&[1, 3, 5, 7], &grid, &[sigma]).unwrap().unwrap();
        assert_eq!(labeling, vec![Letter::X, Letter::Z, Letter::Z, Letter::Y]);
    }

    #[test]
    fn labeling_reversed_axes() {
        let grid = GridVertexMap::new(4, 2).unwrap();
        // Points (0,3), (1,2), (2,1), (3,0): axis-1 order reverses axis-0 order.
        let e = vec![
            grid.vertex(&[0, 3]),
            grid.vertex(&[1, 2]),
            grid.vertex(&[2, 1]),
            grid.vertex(&[3, 0]),
        ];
        let xzzy = DescriptiveSequence::parse("XZZY").unwrap();
        let yzzx = DescriptiveSequence::parse("YZZX").unwrap();
        let labeling =
            labeling_search(&e, &grid, &[xzzy.clone(), yzzx]).unwrap().unwrap();
        assert_eq!(labeling, vec![Letter::X, Letter::Z, Letter::Z, Letter::Y]);
        // Same sigma on both axes cannot be satisfied when the orders reverse.
        assert!(labeling_search(&e, &grid, &[xzzy.clone(), xzzy]).unwrap().is_none());
    }

    #[test]
    fn labeling_rejects_repeated_coordinates() {
        let grid = GridVertexMap::new(4, 2).unwrap();
        let e = vec![
            grid.vertex(&[0, 0]),
            grid.vertex(&[0, 1]),
            grid.vertex(&[1, 2]),
            grid.vertex(&[2, 3]),
        ];
        let sigma = DescriptiveSequence::parse("XZZY").unwrap();
        assert!(labeling_search(&e, &grid, &[sigma.clone(), sigma]).is_err());
    }

    #[test]
    fn split_pi_dimension_one_matches_split14() {
        // With sigma = XX…XZZYY…Y and d = 1 the labeling is the sorted split.
        let h = RGraph::new(
            4,
            10,
            vec![vec![0, 1, 2, 3], vec![0, 4, 5, 6], vec![1, 4, 7, 8], vec![2, 5, 7, 9]],
        )
        .unwrap();
        let grid = GridVertexMap::new(10, 1).unwrap();
        let sigma = DescriptiveSequence::head_tail(3).unwrap();
        let out = split_construction_pi(&h, &grid, &[sigma]).unwrap();
        let out14 = split_construction_14(&h).unwrap();
        assert_eq!(out.graph, out14.graph);
        assert_eq!(out.discarded_repeat_coordinate, 0);
        assert_eq!(out.discarded_no_labeling, 0);
    }

    #[test]
    fn split_pi_discards_repeat_coordinates() {
        let grid = GridVertexMap::new(4, 2).unwrap();
        // The diagonal sorts identically on both axes; the other edge repeats
        // an axis-0 value.
        let good = vec![
            grid.vertex(&[0, 0]),
            grid.vertex(&[1, 1]),
            grid.vertex(&[2, 2]),
            grid.vertex(&[3, 3]),
        ];
        let bad = vec![
            grid.vertex(&[0, 1]),
            grid.vertex(&[0, 2]),
            grid.vertex(&[1, 3]),
            grid.vertex(&[2, 1]),
        ];
        let h = RGraph::new(4, grid.vertex_count(), vec![good, bad]).unwrap();
        assert!(h.is_linear());
        let sigma = DescriptiveSequence::head_tail(3).unwrap();
        let out = split_construction_pi(&h, &grid, &[sigma.clone(), sigma]).unwrap();
        assert_eq!(out.discarded_repeat_coordinate, 1);
        // The diagonal's axis orders agree, so XZZY transcribes on both axes.
        assert_eq!(out.graph.edge_count(), 2);
        assert_eq!(out.twin_pairs().len(), 1);
    }
}
