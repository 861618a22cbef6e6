//! (k, r)-reduced hypergraphs: constituents and their exact densities,
//! descriptive-sequence admission by index tuples, signatures and profiles,
//! palette blowups, homomorphism search, and the power-set counterexample.
//!
//! Index sets, parts and grid vertices are all 0-based here; the literature's
//! \[k\] = {1,…,k} maps to {0,…,k-1}.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::descriptive::{enumerate_sequences, DescriptiveSequence, Letter, SequenceFilter};
use crate::error::{Error, Result};
use crate::hypergraph::for_each_subset;
use crate::palettes::{pair_rank, pairs_lex, Palette};
use crate::rat::Rational;

/// One edge of a reduced graph: the r-subset of indices whose constituent it
/// belongs to, plus one vertex per induced part, in lexicographic order of
/// the within-tuple position pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct REdge {
    pub tuple: Vec<usize>,
    pub verts: Vec<usize>,
}

#[derive(Clone)]
enum EdgeStore {
    Materialized(BTreeMap<Vec<usize>, Vec<Vec<usize>>>),
    /// The r = 4 construction whose parts are copies of the power set of
    /// {0..k-1}: a transversal is an edge iff its V_{t1,t2}-vertex S contains
    /// t3 and not t4. Edges are counted analytically and never materialized.
    PowerSetCounterexample { k: usize },
}

/// An (r choose 2)-graph on parts V_{i,j}, 0 <= i < j < k, whose edges are
/// transversals of the parts induced by some r-subset of indices. Edge sets
/// are either materialized or predicate-backed behind the same interface.
#[derive(Clone)]
pub struct ReducedGraph {
    k: usize,
    r: usize,
    part_sizes: Vec<usize>,
    part_labels: Option<Vec<Vec<String>>>,
    store: EdgeStore,
}

impl ReducedGraph {
    /// Builds a materialized reduced graph. Part sizes are indexed by the
    /// lexicographic rank of (i, j).
    pub fn materialized(
        k: usize,
        r: usize,
        part_sizes: Vec<usize>,
        part_labels: Option<Vec<Vec<String>>>,
        edges: Vec<REdge>,
    ) -> Result<Self> {
        if r < 2 || k < r {
            return Err(Error::invalid("need k >= r >= 2"));
        }
        if part_sizes.len() != k * (k - 1) / 2 {
            return Err(Error::invalid("one part per index pair required"));
        }
        if let Some(labels) = &part_labels {
            if labels.len() != part_sizes.len()
                || labels.iter().zip(&part_sizes).any(|(l, &s)| l.len() != s)
            {
                return Err(Error::invalid("part labels do not match part sizes"));
            }
        }
        let width = r * (r - 1) / 2;
        let mut constituents: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for e in edges {
            if e.tuple.len() != r
                || e.tuple.windows(2).any(|w| w[0] >= w[1])
                || e.tuple.iter().any(|&t| t >= k)
            {
                return Err(Error::invalid(format!(
                    "edge tuple {:?} is not a sorted r-subset of 0..{k}",
                    e.tuple
                )));
            }
            if e.verts.len() != width {
                return Err(Error::invalid(format!(
                    "edge carries {} vertices, expected {width}",
                    e.verts.len()
                )));
            }
            for (pos, &(a, b)) in pairs_lex(r).iter().enumerate() {
                let part = pair_rank(e.tuple[a], e.tuple[b], k);
                if e.verts[pos] >= part_sizes[part] {
                    return Err(Error::invalid(format!(
                        "vertex {} outside part ({}, {})",
                        e.verts[pos], e.tuple[a], e.tuple[b]
                    )));
                }
            }
            constituents.entry(e.tuple).or_default().push(e.verts);
        }
        for list in constituents.values_mut() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::invalid("duplicate edges"));
            }
        }
        Ok(ReducedGraph {
            k,
            r,
            part_sizes,
            part_labels,
            store: EdgeStore::Materialized(constituents),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.store, EdgeStore::Materialized(_))
    }

    pub fn pattern_width(&self) -> usize {
        self.r * (self.r - 1) / 2
    }

    pub fn part_size(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.part_sizes[pair_rank(a, b, self.k)]
    }

    pub fn part_label(&self, i: usize, j: usize, v: usize) -> Option<&str> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.part_labels
            .as_ref()
            .map(|l| l[pair_rank(a, b, self.k)][v].as_str())
    }

    fn validate_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.r
            || tuple.windows(2).any(|w| w[0] >= w[1])
            || tuple.iter().any(|&t| t >= self.k)
        {
            return Err(Error::invalid(format!(
                "{tuple:?} is not a sorted {}-subset of 0..{}",
                self.r, self.k
            )));
        }
        Ok(())
    }

    pub fn contains_edge(&self, tuple: &[usize], verts: &[usize]) -> bool {
        match &self.store {
            EdgeStore::Materialized(cs) => cs
                .get(tuple)
                .is_some_and(|list| list.iter().any(|e| e.as_slice() == verts)),
            EdgeStore::PowerSetCounterexample { .. } => {
                let s = verts[0];
                (s >> tuple[2]) & 1 == 1 && (s >> tuple[3]) & 1 == 0
            }
        }
    }

    /// Whether some edge of the constituent matches every fixed coordinate of
    /// a partial transversal. Monotone: false means no completion is an edge.
    pub fn partial_edge_feasible(&self, tuple: &[usize], partial: &[Option<usize>]) -> bool {
        match &self.store {
            EdgeStore::Materialized(cs) => cs.get(tuple).is_some_and(|list| {
                list.iter().any(|e| {
                    partial.iter().zip(e).all(|(p, &v)| p.is_none_or(|x| x == v))
                })
            }),
            EdgeStore::PowerSetCounterexample { .. } => match partial[0] {
                Some(s) => (s >> tuple[2]) & 1 == 1 && (s >> tuple[3]) & 1 == 0,
                None => true,
            },
        }
    }

    /// Coordinate positions that [`Self::partial_edge_feasible`] actually
    /// inspects; useful for ordering search variables.
    pub fn prunable_positions(&self, _tuple: &[usize]) -> Vec<usize> {
        match &self.store {
            EdgeStore::Materialized(_) => (0..self.pattern_width()).collect(),
            EdgeStore::PowerSetCounterexample { .. } => vec![0],
        }
    }

    /// Number of edges in a constituent, exact.
    pub fn count_edges(&self, tuple: &[usize]) -> Result<BigInt> {
        self.validate_tuple(tuple)?;
        match &self.store {
            EdgeStore::Materialized(cs) => {
                Ok(BigInt::from(cs.get(tuple).map_or(0, |l| l.len())))
            }
            EdgeStore::PowerSetCounterexample { k } => {
                // Count admissible S in the (t1,t2) part, then multiply by the
                // free choices in the other five parts.
                let mut s_count = 0u64;
                for s in 0..(1u64 << k) {
                    if (s >> tuple[2]) & 1 == 1 && (s >> tuple[3]) & 1 == 0 {
                        s_count += 1;
                    }
                }
                let mut total = BigInt::from(s_count);
                let part = BigInt::from(1u64 << k);
                for _ in 1..self.pattern_width() {
                    total *= &part;
                }
                Ok(total)
            }
        }
    }

    /// Edges of one constituent, sorted; only materialized stores enumerate.
    pub fn constituent_edges(&self, tuple: &[usize]) -> Result<Vec<REdge>> {
        self.validate_tuple(tuple)?;
        match &self.store {
            EdgeStore::Materialized(cs) => Ok(cs
                .get(tuple)
                .map(|list| {
                    list.iter()
                        .map(|verts| REdge { tuple: tuple.to_vec(), verts: verts.clone() })
                        .collect()
                })
                .unwrap_or_default()),
            EdgeStore::PowerSetCounterexample { .. } => Err(Error::cap(
                "implicit reduced graphs do not enumerate constituent edges",
            )),
        }
    }

    /// All edges, materialized stores only.
    pub fn all_edges(&self) -> Result<Vec<REdge>> {
        match &self.store {
            EdgeStore::Materialized(cs) => Ok(cs
                .iter()
                .flat_map(|(tuple, list)| {
                    list.iter().map(|verts| REdge {
                        tuple: tuple.clone(),
                        verts: verts.clone(),
                    })
                })
                .collect()),
            EdgeStore::PowerSetCounterexample { .. } => Err(Error::cap(
                "implicit reduced graphs do not enumerate edges",
            )),
        }
    }

    /// Vertices of one induced part incident to at least one constituent
    /// edge. `pair_pos` indexes the within-tuple position pairs.
    pub fn incident_vertices(&self, tuple: &[usize], pair_pos: usize) -> Result<Vec<usize>> {
        self.validate_tuple(tuple)?;
        let (a, b) = pairs_lex(self.r)[pair_pos];
        let size = self.part_size(tuple[a], tuple[b]);
        match &self.store {
            EdgeStore::Materialized(cs) => {
                let mut seen = vec![false; size];
                if let Some(list) = cs.get(tuple) {
                    for verts in list {
                        seen[verts[pair_pos]] = true;
                    }
                }
                Ok((0..size).filter(|&v| seen[v]).collect())
            }
            EdgeStore::PowerSetCounterexample { .. } => {
                if pair_pos == 0 {
                    Ok((0..size)
                        .filter(|&s| (s >> tuple[2]) & 1 == 1 && (s >> tuple[3]) & 1 == 0)
                        .collect())
                } else {
                    // Every vertex extends to an edge as soon as the
                    // constituent is non-empty, which it always is here.
                    Ok((0..size).collect())
                }
            }
        }
    }

    /// Exact density |A_tuple| / prod of induced part sizes.
    pub fn constituent_density(&self, tuple: &[usize]) -> Result<Rational> {
        self.validate_tuple(tuple)?;
        let mut denom = BigInt::one();
        for &(a, b) in &pairs_lex(self.r) {
            let size = self.part_size(tuple[a], tuple[b]);
            if size == 0 {
                return Err(Error::invalid(format!(
                    "part ({}, {}) is empty",
                    tuple[a], tuple[b]
                )));
            }
            denom *= BigInt::from(size);
        }
        Ok(Rational::new(self.count_edges(tuple)?, denom))
    }

    /// Minimum constituent density over all r-subsets of the index set.
    pub fn min_density(&self) -> Result<Rational> {
        let mut min: Option<Rational> = None;
        let mut tuples = Vec::new();
        for_each_subset(self.k, self.r, |t| tuples.push(t.to_vec()));
        for t in tuples {
            let d = self.constituent_density(&t)?;
            if min.as_ref().is_none_or(|m| d < *m) {
                min = Some(d);
            }
        }
        min.ok_or_else(|| Error::invalid("no constituents"))
    }
}

// ---------------------------------------------------------------------------
// Tuple admission
// ---------------------------------------------------------------------------

/// Splits a sorted (2r-2)-tuple of indices by the letters of `sigma` and
/// searches the two induced constituents for edges sharing the vertex in the
/// part indexed by the Z pair. The two constituents share exactly that part,
/// so a shared vertex there is exactly an intersection of size one.
pub fn tuple_admits(
    rg: &ReducedGraph,
    t: &[usize],
    sigma: &DescriptiveSequence,
) -> Result<Option<(REdge, REdge)>> {
    let r = rg.r();
    if sigma.order() != r {
        return Err(Error::invalid(format!(
            "sequence order {} does not match the reduced graph's r = {r}",
            sigma.order()
        )));
    }
    if t.len() != 2 * r - 2
        || t.windows(2).any(|w| w[0] >= w[1])
        || t.iter().any(|&x| x >= rg.k())
    {
        return Err(Error::invalid(format!(
            "{t:?} is not a sorted (2r-2)-subset of 0..{}",
            rg.k()
        )));
    }
    let mut x_indices = Vec::with_capacity(r);
    let mut y_indices = Vec::with_capacity(r);
    let mut z_indices = Vec::with_capacity(2);
    for (i, &letter) in sigma.letters().iter().enumerate() {
        match letter {
            Letter::X => x_indices.push(t[i]),
            Letter::Y => y_indices.push(t[i]),
            Letter::Z => {
                x_indices.push(t[i]);
                y_indices.push(t[i]);
                z_indices.push(t[i]);
            }
        }
    }
    let shared_pos_x = {
        let a = x_indices.iter().position(|&v| v == z_indices[0]).unwrap();
        let b = x_indices.iter().position(|&v| v == z_indices[1]).unwrap();
        pair_rank(a.min(b), a.max(b), r)
    };
    let shared_pos_y = {
        let a = y_indices.iter().position(|&v| v == z_indices[0]).unwrap();
        let b = y_indices.iter().position(|&v| v == z_indices[1]).unwrap();
        pair_rank(a.min(b), a.max(b), r)
    };

    let x_edges = rg.constituent_edges(&x_indices)?;
    if x_edges.is_empty() {
        return Ok(None);
    }
    let y_edges = rg.constituent_edges(&y_indices)?;
    let mut by_shared: HashMap<usize, &REdge> = HashMap::new();
    for e in &x_edges {
        // Keep the first (canonically smallest) edge per shared vertex.
        by_shared.entry(e.verts[shared_pos_x]).or_insert(e);
    }
    for e in &y_edges {
        if let Some(&ex) = by_shared.get(&e.verts[shared_pos_y]) {
            return Ok(Some((ex.clone(), e.clone())));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub enum UniformSearchMode {
    Fixed(DescriptiveSequence),
    AnyInconsistent,
}

/// Backtracking search for an m-subset S of the index set such that every
/// (2r-2)-tuple inside S admits one fixed descriptive sequence. In
/// `AnyInconsistent` mode the inconsistent sequences of order r are tried in
/// lexicographic order. A finder on the concrete instance; no Ramsey-type
/// guarantee is involved.
pub fn find_uniform_subset(
    rg: &ReducedGraph,
    m: usize,
    mode: &UniformSearchMode,
) -> Result<Option<(Vec<usize>, DescriptiveSequence)>> {
    if m > rg.k() {
        return Err(Error::invalid("m must be at most k"));
    }
    match mode {
        UniformSearchMode::Fixed(sigma) => {
            Ok(find_uniform_fixed(rg, m, sigma)?.map(|s| (s, sigma.clone())))
        }
        UniformSearchMode::AnyInconsistent => {
            for sigma in enumerate_sequences(rg.r(), SequenceFilter::Inconsistent)? {
                if let Some(s) = find_uniform_fixed(rg, m, &sigma)? {
                    return Ok(Some((s, sigma)));
                }
            }
            Ok(None)
        }
    }
}

fn find_uniform_fixed(
    rg: &ReducedGraph,
    m: usize,
    sigma: &DescriptiveSequence,
) -> Result<Option<Vec<usize>>> {
    let t = 2 * rg.r() - 2;
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);

    fn admits_memo(
        rg: &ReducedGraph,
        sigma: &DescriptiveSequence,
        tuple: &[usize],
        memo: &mut HashMap<Vec<usize>, bool>,
    ) -> Result<bool> {
        if let Some(&v) = memo.get(tuple) {
            return Ok(v);
        }
        let v = tuple_admits(rg, tuple, sigma)?.is_some();
        memo.insert(tuple.to_vec(), v);
        Ok(v)
    }

    fn extend(
        rg: &ReducedGraph,
        sigma: &DescriptiveSequence,
        m: usize,
        t: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        memo: &mut HashMap<Vec<usize>, bool>,
    ) -> Result<bool> {
        if chosen.len() == m {
            return Ok(true);
        }
        if rg.k() - start < m - chosen.len() {
            return Ok(false);
        }
        'next: for c in start..rg.k() {
            if chosen.len() + 1 >= t {
                // Every new complete tuple contains c and t-1 prior picks.
                let mut ok = true;
                let mut err = None;
                for_each_subset(chosen.len(), t - 1, |idx| {
                    if !ok || err.is_some() {
                        return;
                    }
                    let mut tuple: Vec<usize> = idx.iter().map(|&i| chosen[i]).collect();
                    tuple.push(c);
                    match admits_memo(rg, sigma, &tuple, memo) {
                        Ok(true) => {}
                        Ok(false) => ok = false,
                        Err(e) => err = Some(e),
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if !ok {
                    continue 'next;
                }
            }
            chosen.push(c);
            if extend(rg, sigma, m, t, c + 1, chosen, memo)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    if extend(rg, sigma, m, t, 0, &mut chosen, &mut memo)? {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Signatures and profiles
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub q: usize,
    /// Incidence-set size per induced part, in pair-position order.
    pub w_sizes: Vec<usize>,
    /// Two entries for a signature, (r choose 2) for a profile.
    pub entries: Vec<usize>,
}

fn incidence_ratios(rg: &ReducedGraph, tuple: &[usize], q: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if q == 0 {
        return Err(Error::invalid("q must be at least 1"));
    }
    let mut w_sizes = Vec::with_capacity(rg.pattern_width());
    let mut scaled = Vec::with_capacity(rg.pattern_width());
    for (pos, &(a, b)) in pairs_lex(rg.r()).iter().enumerate() {
        let size = rg.part_size(tuple[a], tuple[b]);
        if size == 0 {
            return Err(Error::invalid(format!("part ({}, {}) is empty", tuple[a], tuple[b])));
        }
        let w = rg.incident_vertices(tuple, pos)?.len();
        w_sizes.push(w);
        scaled.push(q * w / size);
    }
    Ok((w_sizes, scaled))
}

/// The pair (floor(q |V_{t1,t2} ∩ W| / |V_{t1,t2}|), floor(q |V_{t_{r-1},t_r} ∩ W| / |V_{t_{r-1},t_r}|))
/// where W is the set of vertices incident to the constituent.
pub fn signature(rg: &ReducedGraph, tuple: &[usize], q: usize) -> Result<SignatureReport> {
    rg.validate_tuple(tuple)?;
    let (w_sizes, scaled) = incidence_ratios(rg, tuple, q)?;
    let first = 0;
    let last = rg.pattern_width() - 1;
    Ok(SignatureReport { q, entries: vec![scaled[first], scaled[last]], w_sizes })
}

/// Like [`signature`] but with one entry per induced part.
pub fn profile(rg: &ReducedGraph, tuple: &[usize], q: usize) -> Result<SignatureReport> {
    rg.validate_tuple(tuple)?;
    let (w_sizes, scaled) = incidence_ratios(rg, tuple, q)?;
    Ok(SignatureReport { q, entries: scaled, w_sizes })
}

// ---------------------------------------------------------------------------
// Blowups
// ---------------------------------------------------------------------------

/// The k-blowup P\[k\]: every part a copy of the color set, every constituent a
/// copy of the admissible set.
pub fn blowup(p: &Palette, k: usize) -> Result<ReducedGraph> {
    let r = p.r();
    if k < r {
        return Err(Error::invalid("blowup needs k >= r"));
    }
    let part_count = k * (k - 1) / 2;
    let part_sizes = vec![p.colors().len(); part_count];
    let part_labels = Some(vec![p.colors().to_vec(); part_count]);
    let mut edges = Vec::new();
    for_each_subset(k, r, |tuple| {
        for vector in p.admissible() {
            edges.push(REdge { tuple: tuple.to_vec(), verts: vector.clone() });
        }
    });
    ReducedGraph::materialized(k, r, part_sizes, part_labels, edges)
}

/// The 1/4-dense (k, 4)-reduced graph on power-set parts: a transversal is an
/// edge iff its V_{t1,t2} vertex, read as a subset of {0..k-1}, contains t3
/// and omits t4. Implicit store; 5 <= k <= 10.
pub fn counterexample_k4(k: usize) -> Result<ReducedGraph> {
    if !(5..=10).contains(&k) {
        return Err(Error::cap(format!("counterexample supports 5 <= k <= 10, got {k}")));
    }
    let part_count = k * (k - 1) / 2;
    Ok(ReducedGraph {
        k,
        r: 4,
        part_sizes: vec![1usize << k; part_count],
        part_labels: None,
        store: EdgeStore::PowerSetCounterexample { k },
    })
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

/// A homomorphism (phi, f): f maps indices injectively, phi maps each part
/// V_{i,j} into W_{f(i),f(j)} and sends edges to edges. `vertex_map` is
/// defined on the vertices that the search had to pin; vertices on no edge
/// stay unconstrained (`None`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Homomorphism {
    pub index_map: Vec<usize>,
    pub vertex_map: Vec<Vec<Option<usize>>>,
}

impl Homomorphism {
    /// Maps a source edge through (phi, f).
    pub fn map_edge(&self, src: &ReducedGraph, edge: &REdge) -> Option<REdge> {
        let r = src.r();
        let image_tuple_unsorted: Vec<usize> =
            edge.tuple.iter().map(|&t| self.index_map[t]).collect();
        let mut image_tuple = image_tuple_unsorted.clone();
        image_tuple.sort_unstable();
        let mut verts = vec![None; edge.verts.len()];
        for (pos, &(a, b)) in pairs_lex(r).iter().enumerate() {
            let src_part = pair_rank(
                edge.tuple[a].min(edge.tuple[b]),
                edge.tuple[a].max(edge.tuple[b]),
                src.k(),
            );
            let image = self.vertex_map[src_part][edge.verts[pos]]?;
            // Position of the image pair within the sorted image tuple.
            let ia = image_tuple
                .iter()
                .position(|&u| u == image_tuple_unsorted[a])
                .unwrap();
            let ib = image_tuple
                .iter()
                .position(|&u| u == image_tuple_unsorted[b])
                .unwrap();
            verts[pair_rank(ia.min(ib), ia.max(ib), r)] = Some(image);
        }
        let verts: Option<Vec<usize>> = verts.into_iter().collect();
        Some(REdge { tuple: image_tuple, verts: verts? })
    }

    /// Re-checks injectivity of f and edge preservation.
    pub fn verify(&self, src: &ReducedGraph, dst: &ReducedGraph) -> Result<bool> {
        let mut seen = HashSet::new();
        if !self.index_map.iter().all(|&v| v < dst.k() && seen.insert(v)) {
            return Ok(false);
        }
        for edge in src.all_edges()? {
            match self.map_edge(src, &edge) {
                Some(image) => {
                    if !dst.contains_edge(&image.tuple, &image.verts) {
                        return Ok(false);
                    }
                }
                None => return Ok(false),
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HomOptions {
    /// Exhaustive search is allowed while the source has at most this many
    /// indices…
    pub cap_k: usize,
    /// …and at most this many vertices per part.
    pub cap_part: usize,
    /// When set, instances above the caps are probed by trying at most this
    /// many index maps; the result is declared non-exhaustive.
    pub heuristic_budget: Option<u64>,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions { cap_k: 6, cap_part: 8, heuristic_budget: None }
    }
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub found: Option<Homomorphism>,
    /// False when the index-map enumeration was cut short by the heuristic
    /// budget, in which case `found = None` is not a certificate.
    pub exhaustive: bool,
}

/// Complete backtracking search for a homomorphism from `src` to `dst`.
///
/// Index maps are enumerated as ordered injections. For each, the vertex
/// images are assigned one at a time, pinning first the variables that sit in
/// coordinates the destination store can prune on, and checking the partial
/// feasibility of every touched source edge after each assignment.
pub fn homomorphism_exists(
    src: &ReducedGraph,
    dst: &ReducedGraph,
    opts: &HomOptions,
) -> Result<HomReport> {
    if src.r() != dst.r() {
        return Err(Error::invalid("source and destination must share r"));
    }
    let within_caps =
        src.k() <= opts.cap_k && src.part_sizes.iter().all(|&s| s <= opts.cap_part);
    let budget = if within_caps {
        None
    } else {
        let Some(b) = opts.heuristic_budget else {
            return Err(Error::cap(format!(
                "homomorphism search is exhaustive only for source k <= {} and parts <= {}; \
                 set a heuristic budget to probe incompletely",
                opts.cap_k, opts.cap_part
            )));
        };
        Some(b)
    };

    let src_edges = src.all_edges()?;
    if src_edges.is_empty() {
        // Any injection works; map every index to the smallest choices.
        if dst.k() < src.k() {
            return Ok(HomReport { found: None, exhaustive: true });
        }
        let hom = Homomorphism {
            index_map: (0..src.k()).collect(),
            vertex_map: src.part_sizes.iter().map(|&s| vec![None; s]).collect(),
        };
        return Ok(HomReport { found: Some(hom), exhaustive: true });
    }
    if dst.k() < src.k() {
        return Ok(HomReport { found: None, exhaustive: true });
    }

    let mut tried = 0u64;
    let mut exhausted = true;
    let mut index_map: Vec<usize> = Vec::with_capacity(src.k());
    let mut used = vec![false; dst.k()];
    let mut found: Option<Homomorphism> = None;

    #[allow(clippy::too_many_arguments)]
    fn enumerate_injections(
        src: &ReducedGraph,
        dst: &ReducedGraph,
        src_edges: &[REdge],
        index_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        tried: &mut u64,
        budget: Option<u64>,
        exhausted: &mut bool,
        found: &mut Option<Homomorphism>,
    ) -> Result<()> {
        if found.is_some() {
            return Ok(());
        }
        if index_map.len() == src.k() {
            if let Some(b) = budget {
                if *tried >= b {
                    *exhausted = false;
                    return Ok(());
                }
            }
            *tried += 1;
            if let Some(vm) = solve_vertex_map(src, dst, src_edges, index_map)? {
                *found = Some(Homomorphism { index_map: index_map.clone(), vertex_map: vm });
            }
            return Ok(());
        }
        for v in 0..dst.k() {
            if used[v] {
                continue;
            }
            used[v] = true;
            index_map.push(v);
            enumerate_injections(
                src, dst, src_edges, index_map, used, tried, budget, exhausted, found,
            )?;
            index_map.pop();
            used[v] = false;
            if found.is_some() || !*exhausted {
                return Ok(());
            }
        }
        Ok(())
    }

    enumerate_injections(
        src,
        dst,
        &src_edges,
        &mut index_map,
        &mut used,
        &mut tried,
        budget,
        &mut exhausted,
        &mut found,
    )?;
    if let Some(h) = &found {
        debug_assert!(h.verify(src, dst)?);
    }
    Ok(HomReport { found, exhaustive: exhausted })
}

/// Searches for a homomorphism with a FIXED injective index map.
pub fn homomorphism_with_index_map(
    src: &ReducedGraph,
    dst: &ReducedGraph,
    index_map: &[usize],
) -> Result<Option<Homomorphism>> {
    if src.r() != dst.r() {
        return Err(Error::invalid("source and destination must share r"));
    }
    if index_map.len() != src.k() {
        return Err(Error::invalid("index map must cover every source index"));
    }
    let mut seen = HashSet::new();
    if !index_map.iter().all(|&v| v < dst.k() && seen.insert(v)) {
        return Err(Error::invalid("index map must be injective into the destination"));
    }
    let src_edges = src.all_edges()?;
    Ok(solve_vertex_map(src, dst, &src_edges, index_map)?.map(|vertex_map| Homomorphism {
        index_map: index_map.to_vec(),
        vertex_map,
    }))
}

/// One vertex-assignment variable: a concrete vertex of a source part.
type Var = (usize, usize); // (source part rank, vertex index)

fn solve_vertex_map(
    src: &ReducedGraph,
    dst: &ReducedGraph,
    src_edges: &[REdge],
    index_map: &[usize],
) -> Result<Option<Vec<Vec<Option<usize>>>>> {
    let r = src.r();
    let pairs = pairs_lex(r);

    // Describe each source edge in image terms: image tuple, and for each
    // image coordinate the variable that has to fill it.
    struct EdgeImage {
        tuple: Vec<usize>,
        coord_vars: Vec<Var>,
    }
    let mut images = Vec::with_capacity(src_edges.len());
    let mut var_target: HashMap<Var, usize> = HashMap::new(); // -> dst part rank
    let mut var_positions: HashMap<Var, Vec<(usize, usize)>> = HashMap::new(); // (edge, coord)
    for (eidx, edge) in src_edges.iter().enumerate() {
        let image_unsorted: Vec<usize> = edge.tuple.iter().map(|&t| index_map[t]).collect();
        let mut image_tuple = image_unsorted.clone();
        image_tuple.sort_unstable();
        let mut coord_vars: Vec<Option<Var>> = vec![None; edge.verts.len()];
        for (pos, &(a, b)) in pairs.iter().enumerate() {
            let src_part = pair_rank(
                edge.tuple[a].min(edge.tuple[b]),
                edge.tuple[a].max(edge.tuple[b]),
                src.k(),
            );
            let var: Var = (src_part, edge.verts[pos]);
            let dst_part = pair_rank(
                image_unsorted[a].min(image_unsorted[b]),
                image_unsorted[a].max(image_unsorted[b]),
                dst.k(),
            );
            if let Some(&prev) = var_target.get(&var) {
                debug_assert_eq!(prev, dst_part, "index map fixes each part's target");
            }
            var_target.insert(var, dst_part);
            let ia = image_tuple.iter().position(|&u| u == image_unsorted[a]).unwrap();
            let ib = image_tuple.iter().position(|&u| u == image_unsorted[b]).unwrap();
            let coord = pair_rank(ia.min(ib), ia.max(ib), r);
            coord_vars[coord] = Some(var);
            var_positions.entry(var).or_default().push((eidx, coord));
        }
        images.push(EdgeImage {
            tuple: image_tuple,
            coord_vars: coord_vars.into_iter().map(|v| v.unwrap()).collect(),
        });
    }

    // Quick reject: every image constituent must be non-empty.
    for img in &images {
        if !dst.partial_edge_feasible(&img.tuple, &vec![None; img.coord_vars.len()]) {
            return Ok(None);
        }
    }

    // Variable order: prunable coordinates first, then the rest.
    let mut vars: Vec<Var> = var_target.keys().copied().collect();
    let prunable: HashSet<Var> = images
        .iter()
        .flat_map(|img| {
            dst.prunable_positions(&img.tuple)
                .into_iter()
                .map(|pos| img.coord_vars[pos])
        })
        .collect();
    vars.sort_by_key(|v| (!prunable.contains(v), *v));

    let mut assignment: HashMap<Var, usize> = HashMap::new();

    fn feasible(
        dst: &ReducedGraph,
        images: &[EdgeImage],
        assignment: &HashMap<Var, usize>,
        touched: Option<Var>,
    ) -> bool {
        for img in images {
            if let Some(var) = touched {
                if !img.coord_vars.contains(&var) {
                    continue;
                }
            }
            let partial: Vec<Option<usize>> =
                img.coord_vars.iter().map(|v| assignment.get(v).copied()).collect();
            if !dst.partial_edge_feasible(&img.tuple, &partial) {
                return false;
            }
        }
        true
    }

    fn assign(
        dst: &ReducedGraph,
        images: &[EdgeImage],
        vars: &[Var],
        var_target: &HashMap<Var, usize>,
        assignment: &mut HashMap<Var, usize>,
        depth: usize,
    ) -> bool {
        if depth == vars.len() {
            return true;
        }
        let var = vars[depth];
        let domain = dst.part_sizes[var_target[&var]];
        for value in 0..domain {
            assignment.insert(var, value);
            if feasible(dst, images, assignment, Some(var))
                && assign(dst, images, vars, var_target, assignment, depth + 1)
            {
                return true;
            }
            assignment.remove(&var);
        }
        false
    }

    if !assign(dst, &images, &vars, &var_target, &mut assignment, 0) {
        return Ok(None);
    }

    // Final full check.
    for img in &images {
        let verts: Vec<usize> = img.coord_vars.iter().map(|v| assignment[v]).collect();
        if !dst.contains_edge(&img.tuple, &verts) {
            return Ok(None);
        }
    }

    let mut vertex_map: Vec<Vec<Option<usize>>> =
        src.part_sizes.iter().map(|&s| vec![None; s]).collect();
    for (&(part, vertex), &value) in &assignment {
        vertex_map[part][vertex] = Some(value);
    }
    Ok(Some(vertex_map))
}

// ---------------------------------------------------------------------------
// JSON format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ReducedFile {
    schema_version: u32,
    k: usize,
    r: usize,
    /// Part vertex labels keyed by "i,j" with i < j, 0-based.
    parts: BTreeMap<String, Vec<String>>,
    edges: Vec<REdge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

/// Serializes a materialized reduced graph; implicit instances are
/// constructed only through their builders and refuse serialization.
pub fn reduced_to_json(rg: &ReducedGraph, meta: Option<serde_json::Value>) -> Result<String> {
    let EdgeStore::Materialized(_) = &rg.store else {
        return Err(Error::Format("implicit reduced graphs are not serializable".into()));
    };
    let mut parts = BTreeMap::new();
    for &(i, j) in &pairs_lex(rg.k()) {
        let rank = pair_rank(i, j, rg.k());
        let labels = match &rg.part_labels {
            Some(l) => l[rank].clone(),
            None => (0..rg.part_sizes[rank]).map(|v| v.to_string()).collect(),
        };
        parts.insert(format!("{i},{j}"), labels);
    }
    let file = ReducedFile {
        schema_version: 1,
        k: rg.k(),
        r: rg.r(),
        parts,
        edges: rg.all_edges()?,
        meta,
    };
    Ok(serde_json::to_string_pretty(&file).expect("reduced graph serialization"))
}

pub fn reduced_from_json(text: &str) -> Result<ReducedGraph> {
    let file: ReducedFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if file.schema_version != 1 {
        return Err(Error::Format(format!(
            "unsupported reduced-graph schema version {}",
            file.schema_version
        )));
    }
    let pair_count = file.k * (file.k - 1) / 2;
    let mut part_sizes = vec![0usize; pair_count];
    let mut part_labels = vec![Vec::new(); pair_count];
    for (key, labels) in &file.parts {
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
            .ok_or_else(|| Error::Format(format!("malformed part key {key:?}")))?;
        if i >= j || j >= file.k {
            return Err(Error::Format(format!("part key {key:?} out of range")));
        }
        let rank = pair_rank(i, j, file.k);
        part_sizes[rank] = labels.len();
        part_labels[rank] = labels.clone();
    }
    if part_sizes.contains(&0) {
        return Err(Error::Format("every part must be present and non-empty".into()));
    }
    ReducedGraph::materialized(file.k, file.r, part_sizes, Some(part_labels), file.edges)
}
