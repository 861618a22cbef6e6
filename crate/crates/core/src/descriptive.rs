//! Descriptive sequences of order r, roles of pairs in ordered sets, pair
//! description, admission search, heads/tails and head-tail-mixing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::RGraph;
use crate::order::{next_permutation, VertexOrder};
use crate::quasilinear::{twin_structure, TwinStructure};
use crate::seeding::rng_from_seed;
use rand::seq::SliceRandom;

pub const DEFAULT_ORDER_SEARCH_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X => write!(f, "X"),
            Letter::Y => write!(f, "Y"),
            Letter::Z => write!(f, "Z"),
        }
    }
}

/// A word of length 2r-2 over {X, Y, Z} with r-2 X's, r-2 Y's and two Z's,
/// recording the merged order of a twin pair of edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DescriptiveSequence {
    letters: Vec<Letter>,
}

impl DescriptiveSequence {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let len = letters.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "descriptive sequence length {len} is not 2r-2 for some r >= 3"
            )));
        }
        let r = (len + 2) / 2;
        let count = |l: Letter| letters.iter().filter(|&&x| x == l).count();
        if count(Letter::X) != r - 2 || count(Letter::Y) != r - 2 || count(Letter::Z) != 2 {
            return Err(Error::invalid(format!(
                "descriptive sequence of order {r} needs {} X's, {} Y's and 2 Z's",
                r - 2,
                r - 2
            )));
        }
        Ok(DescriptiveSequence { letters })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Letter::X),
                'Y' | 'y' => Ok(Letter::Y),
                'Z' | 'z' => Ok(Letter::Z),
                other => Err(Error::invalid(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    /// The order r; the word has length 2r-2.
    pub fn order(&self) -> usize {
        (self.letters.len() + 2) / 2
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The sequence XX…XZZYY…Y of a given order.
    pub fn head_tail(r: usize) -> Result<Self> {
        if r < 3 {
            return Err(Error::invalid("order must be at least 3"));
        }
        let mut letters = vec![Letter::X; r - 2];
        letters.extend([Letter::Z, Letter::Z]);
        letters.extend(vec![Letter::Y; r - 2]);
        Self::new(letters)
    }

    /// Reverses the word and swaps X with Y.
    pub fn reversed_dual(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                Letter::X => Letter::Y,
                Letter::Y => Letter::X,
                Letter::Z => Letter::Z,
            })
            .collect();
        DescriptiveSequence { letters }
    }
}

impl fmt::Display for DescriptiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The positions {i, j}, 1-based with i < j, that a pair occupies in a sorted
/// set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Role(pub usize, pub usize);

impl Role {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::invalid("a role consists of two distinct positions"));
        }
        Ok(if a < b { Role(a, b) } else { Role(b, a) })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Positions (1-based) of `u` and `v` when `set` is sorted by `ord`.
pub fn role_of_pair(set: &[usize], u: usize, v: usize, ord: &VertexOrder) -> Result<Role> {
    if u == v {
        return Err(Error::invalid("pair must consist of two distinct elements"));
    }
    let sorted = ord.sort(set);
    let pos = |x: usize| sorted.iter().position(|&w| w == x);
    match (pos(u), pos(v)) {
        (Some(a), Some(b)) => Role::new(a + 1, b + 1),
        _ => Err(Error::invalid("pair element not in the set")),
    }
}

/// Role of the Z pair among the entries carrying `side` or Z.
pub fn z_role_among(sigma: &DescriptiveSequence, side: Letter) -> Role {
    debug_assert!(side != Letter::Z);
    let mut pos = 0;
    let mut z_positions = Vec::with_capacity(2);
    for &l in sigma.letters() {
        if l == side || l == Letter::Z {
            pos += 1;
            if l == Letter::Z {
                z_positions.push(pos);
            }
        }
    }
    Role(z_positions[0], z_positions[1])
}

/// A sequence is consistent when the Z pair plays the same role among the
/// {X,Z} entries as among the {Y,Z} entries.
pub fn is_consistent(sigma: &DescriptiveSequence) -> bool {
    z_role_among(sigma, Letter::X) == z_role_among(sigma, Letter::Y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceFilter {
    All,
    Consistent,
    Inconsistent,
}

/// All descriptive sequences of order r matching the filter, lexicographic
/// with X < Y < Z.
pub fn enumerate_sequences(r: usize, filter: SequenceFilter) -> Result<Vec<DescriptiveSequence>> {
    if r < 3 {
        return Err(Error::invalid("order must be at least 3"));
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * r - 2);
    let mut counts = [r - 2, r - 2, 2];
    fn rec(
        word: &mut Vec<Letter>,
        counts: &mut [usize; 3],
        target: usize,
        out: &mut Vec<DescriptiveSequence>,
        filter: SequenceFilter,
    ) {
        if word.len() == target {
            let sigma = DescriptiveSequence { letters: word.clone() };
            let keep = match filter {
                SequenceFilter::All => true,
                SequenceFilter::Consistent => is_consistent(&sigma),
                SequenceFilter::Inconsistent => !is_consistent(&sigma),
            };
            if keep {
                out.push(sigma);
            }
            return;
        }
        for (idx, letter) in [Letter::X, Letter::Y, Letter::Z].into_iter().enumerate() {
            if counts[idx] > 0 {
                counts[idx] -= 1;
                word.push(letter);
                rec(word, counts, target, out, filter);
                word.pop();
                counts[idx] += 1;
            }
        }
    }
    rec(&mut word, &mut counts, 2 * r - 2, &mut out, filter);
    Ok(out)
}

/// The two letter words a twin pair can produce: one per assignment of X to
/// `e` or to `f`.
fn pair_words(e: &[usize], f: &[usize], ord: &VertexOrder) -> Result<(Vec<Letter>, Vec<Letter>)> {
    let e_set: Vec<usize> = e.to_vec();
    let f_set: Vec<usize> = f.to_vec();
    let mut union: Vec<usize> = e_set.iter().chain(f_set.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    let shared: Vec<usize> =
        e_set.iter().copied().filter(|v| f_set.contains(v)).collect();
    if shared.len() != 2 {
        return Err(Error::invalid(format!(
            "edges intersect in {} vertices, expected 2",
            shared.len()
        )));
    }
    let sorted = ord.sort(&union);
    let word_a: Vec<Letter> = sorted
        .iter()
        .map(|v| match (e_set.contains(v), f_set.contains(v)) {
            (true, true) => Letter::Z,
            (true, false) => Letter::X,
            (false, true) => Letter::Y,
            (false, false) => unreachable!(),
        })
        .collect();
    let word_b: Vec<Letter> = word_a
        .iter()
        .map(|l| match l {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
            Letter::Z => Letter::Z,
        })
        .collect();
    Ok((word_a, word_b))
}

/// Whether `sigma` describes the pair {e, f} under `ord`: sorting e ∪ f and
/// labeling positions by membership yields `sigma` under either assignment of
/// X to e or to f.
pub fn describes(
    sigma: &DescriptiveSequence,
    e: &[usize],
    f: &[usize],
    ord: &VertexOrder,
) -> Result<bool> {
    if e.len() != f.len() {
        return Err(Error::invalid("edges must have equal size"));
    }
    let (word_a, word_b) = pair_words(e, f, ord)?;
    if word_a.len() != sigma.letters().len() {
        return Ok(false);
    }
    Ok(word_a == sigma.letters() || word_b == sigma.letters())
}

/// Head and tail of an edge under an order: the two smallest and the two
/// largest vertices, each listed smallest-first. For r = 3 they overlap.
pub fn head_tail(e: &[usize], ord: &VertexOrder) -> ((usize, usize), (usize, usize)) {
    assert!(e.len() >= 3, "head/tail need an edge with at least 3 vertices");
    let sorted = ord.sort(e);
    let k = sorted.len();
    ((sorted[0], sorted[1]), (sorted[k - 2], sorted[k - 1]))
}

// ---------------------------------------------------------------------------
// Admission search
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairClass {
    EOnly,
    FOnly,
    Both,
}

struct AdmissionPair {
    /// Per vertex of the union, its membership class.
    class_of: Vec<(usize, PairClass)>,
}

struct AdmissionState {
    placed: usize,
    ok_xe: bool,
    ok_xf: bool,
}

/// Searches for a vertex order of `H` under which every twin pair is
/// described by `sigma`.
///
/// Vertices are committed to global positions smallest-first; each placement
/// appends one letter to every twin pair containing the vertex, and a branch
/// dies as soon as neither assignment of X to e nor to f matches. Candidate
/// vertices are tried in increasing label order, so the returned witness is
/// the lexicographically least one (unconstrained vertices end up as early as
/// possible).
pub fn graph_admits(h: &RGraph, sigma: &DescriptiveSequence) -> Result<Option<VertexOrder>> {
    let ts = twin_structure(h)
        .map_err(|v| Error::structure(format!("graph is not quasi-linear: {v}")))?;
    graph_admits_with_twins(h, &ts, sigma)
}

/// Same as [`graph_admits`], reusing an already-computed twin structure.
pub fn graph_admits_with_twins(
    h: &RGraph,
    ts: &TwinStructure,
    sigma: &DescriptiveSequence,
) -> Result<Option<VertexOrder>> {
    if sigma.order() != h.r() {
        return Err(Error::invalid(format!(
            "sequence order {} does not match uniformity {}",
            sigma.order(),
            h.r()
        )));
    }
    let n = h.n();
    let mut pairs = Vec::new();
    let mut pairs_of_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in ts.pairs() {
        let e = &h.edges()[i];
        let f = &h.edges()[j];
        let mut class_of = Vec::new();
        for &v in e {
            let class = if f.contains(&v) { PairClass::Both } else { PairClass::EOnly };
            class_of.push((v, class));
        }
        for &v in f {
            if !e.contains(&v) {
                class_of.push((v, PairClass::FOnly));
            }
        }
        let pair_idx = pairs.len();
        for &(v, _) in &class_of {
            pairs_of_vertex[v].push(pair_idx);
        }
        pairs.push(AdmissionPair { class_of });
    }

    let mut states: Vec<AdmissionState> = pairs
        .iter()
        .map(|_| AdmissionState { placed: 0, ok_xe: true, ok_xf: true })
        .collect();
    let mut placed_labels: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn letter_matches(class: PairClass, letter: Letter, x_is_e: bool) -> bool {
        match (class, letter) {
            (PairClass::Both, Letter::Z) => true,
            (PairClass::Both, _) => false,
            (_, Letter::Z) => false,
            (PairClass::EOnly, l) => (l == Letter::X) == x_is_e,
            (PairClass::FOnly, l) => (l == Letter::Y) == x_is_e,
        }
    }

    struct Ctx<'a> {
        sigma: &'a DescriptiveSequence,
        pairs: &'a [AdmissionPair],
        pairs_of_vertex: &'a [Vec<usize>],
    }

    fn place(
        ctx: &Ctx,
        v: usize,
        states: &mut [AdmissionState],
    ) -> std::result::Result<Vec<(usize, bool, bool)>, ()> {
        let mut undo = Vec::new();
        for &p in &ctx.pairs_of_vertex[v] {
            let class = ctx.pairs[p]
                .class_of
                .iter()
                .find(|&&(w, _)| w == v)
                .map(|&(_, c)| c)
                .unwrap();
            let st = &mut states[p];
            let letter = ctx.sigma.letters()[st.placed];
            undo.push((p, st.ok_xe, st.ok_xf));
            st.ok_xe &= letter_matches(class, letter, true);
            st.ok_xf &= letter_matches(class, letter, false);
            st.placed += 1;
            if !st.ok_xe && !st.ok_xf {
                // Roll back everything touched so far, including this pair.
                for &(q, xe, xf) in undo.iter().rev() {
                    states[q].placed -= 1;
                    states[q].ok_xe = xe;
                    states[q].ok_xf = xf;
                }
                return Err(());
            }
        }
        Ok(undo)
    }

    fn unplace(undo: &[(usize, bool, bool)], states: &mut [AdmissionState]) {
        for &(q, xe, xf) in undo.iter().rev() {
            states[q].placed -= 1;
            states[q].ok_xe = xe;
            states[q].ok_xf = xf;
        }
    }

    fn search(
        ctx: &Ctx,
        n: usize,
        states: &mut Vec<AdmissionState>,
        placed_labels: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if placed_labels.len() == n {
            return true;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            if let Ok(undo) = place(ctx, v, states) {
                used[v] = true;
                placed_labels.push(v);
                if search(ctx, n, states, placed_labels, used) {
                    return true;
                }
                placed_labels.pop();
                used[v] = false;
                unplace(&undo, states);
            }
        }
        false
    }

    let ctx = Ctx { sigma, pairs: &pairs, pairs_of_vertex: &pairs_of_vertex };
    if search(&ctx, n, &mut states, &mut placed_labels, &mut used) {
        let ord = VertexOrder::from_sorted_labels(&placed_labels)?;
        debug_assert!(ts
            .pairs()
            .iter()
            .all(|&(i, j)| describes(sigma, &h.edges()[i], &h.edges()[j], &ord).unwrap()));
        Ok(Some(ord))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Head-tail-mixing
// ---------------------------------------------------------------------------

/// Options for searches that range over all vertex orders.
#[derive(Clone, Copy, Debug)]
pub struct OrderSearchOptions {
    /// Largest n for which exhaustive enumeration of n! orders is attempted.
    pub cap: usize,
    /// When set, instances above the cap are probed with this many random
    /// orders instead of failing; the result is declared non-exhaustive.
    pub randomized: Option<RandomizedSearch>,
}

#[derive(Clone, Copy, Debug)]
pub struct RandomizedSearch {
    pub samples: u64,
    pub seed: u64,
}

impl Default for OrderSearchOptions {
    fn default() -> Self {
        OrderSearchOptions { cap: DEFAULT_ORDER_SEARCH_CAP, randomized: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MixingReport {
    pub mixing: bool,
    pub witness_ordering: Option<VertexOrder>,
    /// False when the verdict comes from a randomized, incomplete search.
    pub exhaustive: bool,
    pub orderings_checked: u64,
}

/// Whether under some order no edge's head equals another edge's tail.
fn order_avoids_head_tail(h: &RGraph, ord: &VertexOrder) -> bool {
    let m = h.edge_count();
    let mut heads = Vec::with_capacity(m);
    let mut tails = Vec::with_capacity(m);
    for e in h.edges() {
        let (head, tail) = head_tail(e, ord);
        let norm = |(a, b): (usize, usize)| if a < b { (a, b) } else { (b, a) };
        heads.push(norm(head));
        tails.push(norm(tail));
    }
    for &head in &heads {
        if tails.contains(&head) {
            return false;
        }
    }
    true
}

/// Decides head-tail-mixing: `mixing` is true iff under EVERY vertex order
/// some edge's head is another edge's tail. A witness order (one with no such
/// pair) certifies `mixing = false`.
///
/// Exhaustive up to `opts.cap` vertices; above the cap a randomized search
/// runs when requested, and a `mixing = true` verdict from it is marked
/// non-exhaustive since only sampled orders were ruled out.
pub fn is_head_tail_mixing(h: &RGraph, opts: &OrderSearchOptions) -> Result<MixingReport> {
    let n = h.n();
    if h.edge_count() == 0 {
        // Vacuously non-mixing: any order is a witness.
        return Ok(MixingReport {
            mixing: false,
            witness_ordering: Some(VertexOrder::natural(n)),
            exhaustive: true,
            orderings_checked: 0,
        });
    }
    if n <= opts.cap {
        let mut labels: Vec<usize> = (0..n).collect();
        let mut checked = 0u64;
        loop {
            checked += 1;
            let ord = VertexOrder::from_sorted_labels(&labels)?;
            if order_avoids_head_tail(h, &ord) {
                return Ok(MixingReport {
                    mixing: false,
                    witness_ordering: Some(ord),
                    exhaustive: true,
                    orderings_checked: checked,
                });
            }
            if !next_permutation(&mut labels) {
                break;
            }
        }
        Ok(MixingReport {
            mixing: true,
            witness_ordering: None,
            exhaustive: true,
            orderings_checked: checked,
        })
    } else {
        let Some(rnd) = opts.randomized else {
            return Err(Error::cap(format!(
                "head-tail-mixing is exhaustive only up to n = {}; got n = {n} \
                 (enable randomized search to probe incompletely)",
                opts.cap
            )));
        };
        let mut rng = rng_from_seed(rnd.seed);
        let mut labels: Vec<usize> = (0..n).collect();
        for checked in 0..rnd.samples {
            labels.shuffle(&mut rng);
            let ord = VertexOrder::from_sorted_labels(&labels)?;
            if order_avoids_head_tail(h, &ord) {
                return Ok(MixingReport {
                    mixing: false,
                    witness_ordering: Some(ord),
                    exhaustive: false,
                    orderings_checked: checked + 1,
                });
            }
        }
        Ok(MixingReport {
            mixing: true,
            witness_ordering: None,
            exhaustive: false,
            orderings_checked: rnd.samples,
        })
    }
}
