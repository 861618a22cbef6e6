//! Twin-pair structure of quasi-linear hypergraphs and consistency of vertex
//! orders.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::descriptive::{role_of_pair, OrderSearchOptions};
use crate::error::{Error, Result};
use crate::hypergraph::RGraph;
use crate::order::VertexOrder;
use crate::seeding::rng_from_seed;
use rand::seq::SliceRandom;

/// Perfect matching on E(H) pairing each edge with its unique twin
/// (intersection of size exactly 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinStructure {
    pairs: Vec<(usize, usize)>,
    partner: Vec<usize>,
}

impl TwinStructure {
    /// Matched edge-index pairs, each with the smaller index first.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn partner(&self, edge_idx: usize) -> usize {
        self.partner[edge_idx]
    }

    /// The two shared vertices of a twin pair.
    pub fn intersection(&self, h: &RGraph, pair: (usize, usize)) -> [usize; 2] {
        let e = &h.edges()[pair.0];
        let f = &h.edges()[pair.1];
        let mut it = e.iter().copied().filter(|v| f.contains(v));
        [it.next().expect("twin intersection"), it.next().expect("twin intersection")]
    }
}

/// Why a hypergraph fails to be quasi-linear. Reported for the first
/// offending edge (edges scanned in canonical order), with oversized
/// intersections taking precedence over twin counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuasiLinearViolation {
    /// The definition quantifies over edges, so we reject the edgeless graph
    /// rather than accept it vacuously.
    NoEdges,
    NoTwin { edge: usize },
    MultipleTwins { edge: usize, partners: Vec<usize> },
    LargeIntersection { edge: usize, other: usize, size: usize },
}

impl fmt::Display for QuasiLinearViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiLinearViolation::NoEdges => write!(f, "graph has no edges"),
            QuasiLinearViolation::NoTwin { edge } => {
                write!(f, "edge #{edge} has no twin")
            }
            QuasiLinearViolation::MultipleTwins { edge, partners } => {
                write!(f, "edge #{edge} has {} twins {partners:?}", partners.len())
            }
            QuasiLinearViolation::LargeIntersection { edge, other, size } => {
                write!(f, "edges #{edge} and #{other} intersect in {size} vertices")
            }
        }
    }
}

/// Computes the twin matching, or the first violation if `h` is not
/// quasi-linear. Absence is a value, not an error.
pub fn twin_structure(h: &RGraph) -> std::result::Result<TwinStructure, QuasiLinearViolation> {
    let m = h.edge_count();
    if m == 0 {
        return Err(QuasiLinearViolation::NoEdges);
    }
    // Every pair of edges sharing >= 2 vertices shares some vertex pair, so
    // bucketing by vertex pairs finds them all.
    let mut twins: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut oversized: Vec<Option<(usize, usize)>> = vec![None; m];
    let mut buckets: std::collections::HashMap<(usize, usize), Vec<usize>> =
        std::collections::HashMap::new();
    for (idx, e) in h.edges().iter().enumerate() {
        for a in 0..e.len() {
            for b in (a + 1)..e.len() {
                buckets.entry((e[a], e[b])).or_default().push(idx);
            }
        }
    }
    let mut flagged: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for bucket in buckets.values() {
        for x in 0..bucket.len() {
            for y in (x + 1)..bucket.len() {
                let (i, j) = (bucket[x].min(bucket[y]), bucket[x].max(bucket[y]));
                if !flagged.insert((i, j)) {
                    continue;
                }
                let size = h.edges()[i].iter().filter(|v| h.edges()[j].contains(v)).count();
                if size == 2 {
                    twins[i].push(j);
                    twins[j].push(i);
                } else if size > 2 {
                    let record = |slot: &mut Option<(usize, usize)>, other: usize| {
                        if slot.is_none_or(|(o, _)| other < o) {
                            *slot = Some((other, size));
                        }
                    };
                    record(&mut oversized[i], j);
                    record(&mut oversized[j], i);
                }
            }
        }
    }
    for i in 0..m {
        if let Some((other, size)) = oversized[i] {
            return Err(QuasiLinearViolation::LargeIntersection { edge: i, other, size });
        }
        if twins[i].is_empty() {
            return Err(QuasiLinearViolation::NoTwin { edge: i });
        }
        if twins[i].len() > 1 {
            let mut partners = twins[i].clone();
            partners.sort_unstable();
            return Err(QuasiLinearViolation::MultipleTwins { edge: i, partners });
        }
    }
    let partner: Vec<usize> = (0..m).map(|i| twins[i][0]).collect();
    let pairs: Vec<(usize, usize)> =
        (0..m).filter(|&i| i < partner[i]).map(|i| (i, partner[i])).collect();
    Ok(TwinStructure { pairs, partner })
}

/// True iff for every twin pair the shared pair of vertices plays the same
/// role in both edges under `ord`.
pub fn is_consistently_ordered(h: &RGraph, ord: &VertexOrder) -> Result<bool> {
    let ts = twin_structure(h)
        .map_err(|v| Error::structure(format!("graph is not quasi-linear: {v}")))?;
    is_consistently_ordered_with_twins(h, &ts, ord)
}

pub fn is_consistently_ordered_with_twins(
    h: &RGraph,
    ts: &TwinStructure,
    ord: &VertexOrder,
) -> Result<bool> {
    for &(i, j) in ts.pairs() {
        let [a, b] = ts.intersection(h, (i, j));
        let in_e = role_of_pair(&h.edges()[i], a, b, ord)?;
        let in_f = role_of_pair(&h.edges()[j], a, b, ord)?;
        if in_e != in_f {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub witness: Option<VertexOrder>,
    /// False when the verdict comes from a randomized, incomplete search; a
    /// `consistent = false` is certified only when this is true.
    pub exhaustive: bool,
}

/// Decides whether some vertex order makes `h` consistently ordered.
///
/// The search commits vertices to positions smallest-first. Placing a vertex
/// fixes its rank within every edge containing it, so for a shared vertex of
/// a twin pair the two ranks can be compared immediately and mismatching
/// branches die early; exhausting the search certifies inconsistency.
pub fn is_consistent_graph(h: &RGraph, opts: &OrderSearchOptions) -> Result<ConsistencyReport> {
    let ts = twin_structure(h)
        .map_err(|v| Error::structure(format!("graph is not quasi-linear: {v}")))?;
    let n = h.n();
    if n <= opts.cap {
        let witness = consistent_order_search(h, &ts);
        Ok(ConsistencyReport {
            consistent: witness.is_some(),
            witness,
            exhaustive: true,
        })
    } else {
        let Some(rnd) = opts.randomized else {
            return Err(Error::cap(format!(
                "consistency search is exhaustive only up to n = {}; got n = {n} \
                 (enable randomized search to probe incompletely)",
                opts.cap
            )));
        };
        let mut rng = rng_from_seed(rnd.seed);
        let mut labels: Vec<usize> = (0..n).collect();
        for _ in 0..rnd.samples {
            labels.shuffle(&mut rng);
            let ord = VertexOrder::from_sorted_labels(&labels)?;
            if is_consistently_ordered_with_twins(h, &ts, &ord)? {
                return Ok(ConsistencyReport {
                    consistent: true,
                    witness: Some(ord),
                    exhaustive: false,
                });
            }
        }
        Ok(ConsistencyReport { consistent: false, witness: None, exhaustive: false })
    }
}

fn consistent_order_search(h: &RGraph, ts: &TwinStructure) -> Option<VertexOrder> {
    let n = h.n();
    let m = h.edge_count();
    // For each twin pair and each shared vertex, the two edges to compare.
    let mut constraints_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(i, j) in ts.pairs() {
        for v in ts.intersection(h, (i, j)) {
            constraints_of[v].push((i, j));
        }
    }
    let mut placed_in_edge = vec![0usize; m];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn search(
        h: &RGraph,
        constraints_of: &[Vec<(usize, usize)>],
        placed_in_edge: &mut [usize],
        placed: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = h.n();
        if placed.len() == n {
            return true;
        }
        'candidates: for v in 0..n {
            if used[v] {
                continue;
            }
            // Rank of v inside each constrained edge pair must agree.
            for &(i, j) in &constraints_of[v] {
                if placed_in_edge[i] != placed_in_edge[j] {
                    continue 'candidates;
                }
            }
            for &e in h.incident_edges(v) {
                placed_in_edge[e] += 1;
            }
            used[v] = true;
            placed.push(v);
            if search(h, constraints_of, placed_in_edge, placed, used) {
                return true;
            }
            placed.pop();
            used[v] = false;
            for &e in h.incident_edges(v) {
                placed_in_edge[e] -= 1;
            }
        }
        false
    }

    if search(h, &constraints_of, &mut placed_in_edge, &mut placed, &mut used) {
        Some(VertexOrder::from_sorted_labels(&placed).expect("permutation"))
    } else {
        None
    }
}
