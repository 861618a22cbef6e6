//! r-uniform hypergraphs with exact densities, local-density checks and
//! subgraph containment.

use std::collections::{BTreeMap, HashSet};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{binomial, rat_int, Rational};
use crate::seeding::{rng_from_seed, sample_distinct_sorted};

/// Default cap on exhaustive subset scans (2^20 subsets).
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// An r-uniform hypergraph on vertices `{0, …, n-1}`.
///
/// Edges are stored canonically: each edge sorted ascending, the edge list
/// sorted lexicographically, no duplicates. A per-vertex incidence index is
/// kept alongside so containment searches only walk candidate edges.
/// Values are immutable after construction and safe to share across workers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    /// Bitmask per edge when `n <= 64`; the hot paths use these.
    masks: Option<Vec<u64>>,
}

impl RGraph {
    pub fn new(r: usize, n: usize, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::invalid(format!("uniformity r={r} must be at least 2")));
        }
        for e in &mut edges {
            if e.len() != r {
                return Err(Error::invalid(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("edge {e:?} has repeated vertices")));
            }
            if *e.last().unwrap() >= n {
                return Err(Error::invalid(format!("edge {e:?} has a vertex >= n={n}")));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(r, n, edges))
    }

    /// Like [`RGraph::new`] but rejects duplicate edges instead of merging.
    pub fn new_strict(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let count = edges.len();
        let g = Self::new(r, n, edges)?;
        if g.edge_count() != count {
            return Err(Error::invalid("duplicate edges"));
        }
        Ok(g)
    }

    fn from_canonical(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        let masks = if n <= 64 {
            Some(edges.iter().map(|e| edge_mask(e)).collect())
        } else {
            None
        };
        RGraph { r, n, edges, incidence, masks }
    }

    pub fn empty(r: usize, n: usize) -> Self {
        Self::from_canonical(r, n, Vec::new())
    }

    /// The complete r-graph on n vertices.
    pub fn complete(r: usize, n: usize) -> Result<Self> {
        if n < r {
            return Err(Error::invalid("complete graph needs n >= r"));
        }
        let mut edges = Vec::new();
        let mut sub: Vec<usize> = (0..r).collect();
        loop {
            edges.push(sub.clone());
            if !next_subset(&mut sub, n) {
                break;
            }
        }
        Ok(Self::from_canonical(r, n, edges))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Membership test for a sorted candidate edge.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
        self.edges.binary_search_by(|probe| probe.as_slice().cmp(e)).is_ok()
    }

    pub fn edge_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// Counts edges fully contained in `S` (given as a sorted vertex list).
    pub fn edges_inside(&self, s: &[usize]) -> usize {
        if let Some(masks) = &self.masks {
            let sm = edge_mask(s);
            return masks.iter().filter(|&&m| m & !sm == 0).count();
        }
        let set: HashSet<usize> = s.iter().copied().collect();
        self.edges.iter().filter(|e| e.iter().all(|v| set.contains(v))).count()
    }

    /// Maximum of |e ∩ f| over distinct edge pairs; 0 with fewer than 2 edges.
    pub fn max_pairwise_intersection(&self) -> usize {
        if self.edges.len() < 2 {
            return 0;
        }
        // Pair buckets find any intersection >= 2 in near-linear time.
        let mut buckets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (idx, e) in self.edges.iter().enumerate() {
            for a in 0..e.len() {
                for b in (a + 1)..e.len() {
                    buckets.entry((e[a], e[b])).or_default().push(idx);
                }
            }
        }
        let mut best = 0usize;
        for bucket in buckets.values() {
            for i in 0..bucket.len() {
                for j in (i + 1)..bucket.len() {
                    let inter = self.intersection_size(bucket[i], bucket[j]);
                    best = best.max(inter);
                }
            }
        }
        if best >= 2 {
            return best;
        }
        // No shared pair: the maximum is 1 iff some vertex lies in two edges.
        if self.incidence.iter().any(|inc| inc.len() >= 2) {
            1
        } else {
            0
        }
    }

    fn intersection_size(&self, i: usize, j: usize) -> usize {
        if let Some(masks) = &self.masks {
            return (masks[i] & masks[j]).count_ones() as usize;
        }
        let (a, b) = (&self.edges[i], &self.edges[j]);
        let mut count = 0;
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        count
    }

    /// A hypergraph is linear when pairwise edge intersections have size <= 1.
    pub fn is_linear(&self) -> bool {
        self.max_pairwise_intersection() <= 1
    }

    /// Exact edge density of the sub-hypergraph induced on `S`:
    /// `e(S) / C(|S|, r)`.
    pub fn edge_density(&self, s: &[usize]) -> Result<Rational> {
        let mut s = s.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("subset has repeated vertices"));
        }
        if s.iter().any(|&v| v >= self.n) {
            return Err(Error::invalid("subset contains a vertex outside V(H)"));
        }
        if s.len() < self.r {
            return Err(Error::invalid(format!(
                "subset of size {} is smaller than r={}",
                s.len(),
                self.r
            )));
        }
        let inside = self.edges_inside(&s);
        Ok(Rational::new(inside.into(), binomial(s.len(), self.r)))
    }

    /// Global edge density `|E| / C(n, r)`.
    pub fn global_density(&self) -> Rational {
        if self.n < self.r {
            return rat_int(0);
        }
        Rational::new(self.edge_count().into(), binomial(self.n, self.r))
    }
}

fn edge_mask(e: &[usize]) -> u64 {
    e.iter().fold(0u64, |acc, &v| acc | (1u64 << v))
}

/// Advances a sorted k-subset of `{0..n-1}` to its lexicographic successor.
pub fn next_subset(sub: &mut [usize], n: usize) -> bool {
    let k = sub.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sub[i] < n - k + i {
            sub[i] += 1;
            for j in (i + 1)..k {
                sub[j] = sub[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits every sorted k-subset of `{0..n-1}`.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut sub: Vec<usize> = (0..k).collect();
    loop {
        f(&sub);
        if !next_subset(&mut sub, n) {
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Local density
// ---------------------------------------------------------------------------

/// How a local-density check explores subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityMode {
    /// Every subset of qualifying size; only allowed up to a vertex cap.
    Exhaustive,
    /// `trials` random subsets of each qualifying size.
    Sampled { trials: usize, seed: u64 },
}

/// Target density `d`, slack `eps` and exploration mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityQuery {
    pub d: Rational,
    pub eps: Rational,
    pub mode: DensityMode,
}

impl DensityQuery {
    pub fn validate(&self) -> Result<()> {
        if self.d < rat_int(0) || self.d > rat_int(1) {
            return Err(Error::invalid("d must lie in [0, 1]"));
        }
        if self.eps <= rat_int(0) || self.eps > rat_int(1) {
            return Err(Error::invalid("eps must lie in (0, 1]"));
        }
        if let DensityMode::Sampled { trials, .. } = self.mode {
            if trials == 0 {
                return Err(Error::invalid("sampled mode needs trials >= 1"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalDensityReport {
    pub holds: bool,
    pub worst_set: Option<Vec<usize>>,
    pub worst_density: Option<Rational>,
    /// Number of subsets whose density was evaluated.
    pub examined: u64,
    pub exhaustive: bool,
}

/// Checks whether every subset `S` with `|S| >= eps * n` has edge density at
/// least `d - eps`.
///
/// The size bound is the weak inequality, evaluated in exact rational
/// arithmetic. Subsets smaller than `r` satisfy the defining inequality
/// vacuously and are skipped. The worst set reported is the first one
/// attaining the minimum density in (size-ascending, lexicographic) scan
/// order; in sampled mode it is the worst among the sampled subsets only.
pub fn check_locally_dense(h: &RGraph, q: &DensityQuery) -> Result<LocalDensityReport> {
    check_locally_dense_with_cap(h, q, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn check_locally_dense_with_cap(
    h: &RGraph,
    q: &DensityQuery,
    cap: usize,
) -> Result<LocalDensityReport> {
    q.validate()?;
    let n = h.n();
    // Smallest integer size satisfying |S| >= eps * n.
    let min_size_rat = q.eps.clone() * rat_int(n as u64);
    let min_size = min_size_rat.ceil().to_integer().to_usize().unwrap_or(usize::MAX);
    let lo = min_size.max(h.r());
    let threshold = q.d.clone() - q.eps.clone();

    let mut worst: Option<(Rational, Vec<usize>)> = None;
    let mut examined = 0u64;
    let exhaustive = match q.mode {
        DensityMode::Exhaustive => {
            if n > cap {
                return Err(Error::cap(format!(
                    "exhaustive scan needs n <= {cap}, got {n}; use sampled mode"
                )));
            }
            for size in lo..=n {
                for_each_subset(n, size, |s| {
                    examined += 1;
                    let inside = h.edges_inside(s);
                    let dens = Rational::new(inside.into(), binomial(size, h.r()));
                    if worst.as_ref().is_none_or(|(w, _)| dens < *w) {
                        worst = Some((dens, s.to_vec()));
                    }
                });
            }
            true
        }
        DensityMode::Sampled { trials, seed } => {
            let mut rng = rng_from_seed(seed);
            for size in lo..=n {
                for _ in 0..trials {
                    let s = sample_distinct_sorted(&mut rng, n, size);
                    examined += 1;
                    let inside = h.edges_inside(&s);
                    let dens = Rational::new(inside.into(), binomial(size, h.r()));
                    if worst.as_ref().is_none_or(|(w, _)| dens < *w) {
                        worst = Some((dens, s));
                    }
                }
            }
            false
        }
    };

    let holds = worst.as_ref().is_none_or(|(w, _)| *w >= threshold);
    let (worst_density, worst_set) = match worst {
        Some((w, s)) => (Some(w), Some(s)),
        None => (None, None),
    };
    Ok(LocalDensityReport { holds, worst_set, worst_density, examined, exhaustive })
}

// ---------------------------------------------------------------------------
// Subgraph containment
// ---------------------------------------------------------------------------

/// An injective vertex map `V(F) -> V(H)` sending edges to edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks injectivity and edge preservation against concrete graphs.
    pub fn verify(&self, f: &RGraph, h: &RGraph) -> bool {
        if self.map.len() != f.n() {
            return false;
        }
        let mut seen = HashSet::new();
        if !self.map.iter().all(|&v| v < h.n() && seen.insert(v)) {
            return false;
        }
        f.edges().iter().all(|e| {
            let mut img: Vec<usize> = e.iter().map(|&v| self.map[v]).collect();
            img.sort_unstable();
            h.has_edge(&img)
        })
    }
}

/// Searches for an embedding of `F` into `H` by backtracking over vertex
/// assignments, pruning on degrees, pair co-occurrence and fully-mapped edges.
pub fn contains_subgraph(h: &RGraph, f: &RGraph) -> Result<Option<Embedding>> {
    if f.r() != h.r() {
        return Err(Error::invalid(format!(
            "uniformity mismatch: F has r={}, H has r={}",
            f.r(),
            h.r()
        )));
    }
    if f.n() > h.n() || f.edge_count() > h.edge_count() {
        return Ok(None);
    }

    // Static order: highest degree first, isolated vertices last.
    let mut order: Vec<usize> = (0..f.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));

    // Pair co-occurrence index of H: pairs of vertices sharing an edge.
    let mut h_pairs: HashSet<(usize, usize)> = HashSet::new();
    for e in h.edges() {
        for a in 0..e.len() {
            for b in (a + 1)..e.len() {
                h_pairs.insert((e[a], e[b]));
            }
        }
    }
    let mut map = vec![usize::MAX; f.n()];
    let mut used = vec![false; h.n()];

    struct Ctx<'a> {
        f: &'a RGraph,
        h: &'a RGraph,
        order: &'a [usize],
        h_pairs: &'a HashSet<(usize, usize)>,
    }

    fn assign_ok(ctx: &Ctx, map: &[usize], v: usize, img: usize) -> bool {
        if ctx.f.degree(v) > ctx.h.degree(img) {
            return false;
        }
        for &eidx in ctx.f.incident_edges(v) {
            let e = &ctx.f.edges()[eidx];
            // Pair pruning: mapped co-vertices must share some H edge with img.
            for &w in e {
                if w == v || map[w] == usize::MAX {
                    continue;
                }
                let key = if map[w] < img { (map[w], img) } else { (img, map[w]) };
                if !ctx.h_pairs.contains(&key) {
                    return false;
                }
            }
            // Fully-mapped edges must land on edges of H.
            if e.iter().all(|&w| w == v || map[w] != usize::MAX) {
                let mut image: Vec<usize> =
                    e.iter().map(|&w| if w == v { img } else { map[w] }).collect();
                image.sort_unstable();
                if !ctx.h.has_edge(&image) {
                    return false;
                }
            }
        }
        true
    }

    fn search(ctx: &Ctx, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == ctx.order.len() {
            return true;
        }
        let v = ctx.order[depth];
        for img in 0..ctx.h.n() {
            if used[img] || !assign_ok(ctx, map, v, img) {
                continue;
            }
            map[v] = img;
            used[img] = true;
            if search(ctx, depth + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[img] = false;
        }
        false
    }

    let ctx = Ctx { f, h, order: &order, h_pairs: &h_pairs };
    if search(&ctx, 0, &mut map, &mut used) {
        let emb = Embedding { map };
        debug_assert!(emb.verify(f, h));
        Ok(Some(emb))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// JSON format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

/// Parses the hypergraph JSON format. In strict mode each edge must be sorted
/// ascending and the edge list itself sorted and duplicate-free; lenient mode
/// normalizes instead of rejecting.
pub fn rgraph_from_json(text: &str, lenient: bool) -> Result<RGraph> {
    let file: HypergraphFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if !lenient {
        for e in &file.edges {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!(
                    "edge {e:?} is not sorted strictly ascending (use --lenient to normalize)"
                )));
            }
        }
        if file.edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format(
                "edge list is not sorted strictly ascending (use --lenient to normalize)".into(),
            ));
        }
    }
    RGraph::new(file.r, file.n, file.edges)
}

pub fn rgraph_to_json(h: &RGraph, meta: Option<serde_json::Value>) -> String {
    let file = HypergraphFile {
        r: h.r(),
        n: h.n(),
        edges: h.edges().to_vec(),
        meta,
    };
    serde_json::to_string_pretty(&file).expect("hypergraph serialization")
}
