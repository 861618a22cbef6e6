//! Pair-coloring palettes: density, the two named constructions, seeded
//! generation of locally dense r-graphs, structural soundness checks,
//! F-freeness trials and the zero-density predicate.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptive::Role;
use crate::error::{Error, Result};
use crate::hypergraph::{contains_subgraph, for_each_subset, RGraph};
use crate::order::VertexOrder;
use crate::rat::Rational;
use crate::seeding::{derive_seed, rng_from_seed};

/// Rank of the pair (i, j), 0-based i < j < k, in the lexicographic order
/// (0,1), (0,2), …, (k-2, k-1).
pub fn pair_rank(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// All pairs 0 <= i < j < k in lexicographic order.
pub fn pairs_lex(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            out.push((i, j));
        }
    }
    out
}

/// A palette: a color set C and admissible pattern vectors A ⊆ C^(r choose 2),
/// coordinates indexed by vertex-position pairs (1,2), (1,3), …, (r-1,r).
///
/// Colors are stored by name; admissible vectors hold color indices. The
/// `version` field is reserved so the file format can later extend to
/// palettes coloring larger tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    version: u32,
    r: usize,
    colors: Vec<String>,
    admissible: Vec<Vec<usize>>,
}

impl Palette {
    pub fn new(r: usize, colors: Vec<String>, admissible: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::invalid("palette uniformity must be at least 2"));
        }
        if colors.is_empty() {
            return Err(Error::invalid("palette needs at least one color"));
        }
        let mut names = HashSet::new();
        for c in &colors {
            if !names.insert(c.as_str()) {
                return Err(Error::invalid(format!("duplicate color {c:?}")));
            }
        }
        let width = r * (r - 1) / 2;
        let mut seen = HashSet::new();
        for v in &admissible {
            if v.len() != width {
                return Err(Error::invalid(format!(
                    "admissible vector {v:?} has {} coordinates, expected {width}",
                    v.len()
                )));
            }
            if v.iter().any(|&c| c >= colors.len()) {
                return Err(Error::invalid("admissible vector uses an unknown color"));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::invalid("duplicate admissible vector"));
            }
        }
        Ok(Palette { version: 1, r, colors, admissible })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn admissible(&self) -> &[Vec<usize>] {
        &self.admissible
    }

    pub fn pattern_width(&self) -> usize {
        self.r * (self.r - 1) / 2
    }

    /// d(P) = |A| / |C|^(r choose 2), exact.
    pub fn density(&self) -> Rational {
        let denom = BigInt::from(self.colors.len()).pow(self.pattern_width() as u32);
        Rational::new(BigInt::from(self.admissible.len()), denom)
    }
}

/// Colors C = {red, blue}; admissible vectors are those whose (1,2)-coordinate
/// is red and whose (r-1,r)-coordinate is blue. Density 1/4 for every r.
pub fn head_tail_palette(r: usize) -> Result<Palette> {
    if r < 3 {
        return Err(Error::invalid("head-tail palette needs r >= 3"));
    }
    let colors = vec!["red".to_string(), "blue".to_string()];
    let width = r * (r - 1) / 2;
    let free = width - 2;
    let mut admissible = Vec::with_capacity(1 << free);
    for bits in 0..(1u64 << free) {
        let mut v = Vec::with_capacity(width);
        v.push(0); // head pair red
        for b in 0..free {
            v.push(((bits >> b) & 1) as usize);
        }
        v.push(1); // tail pair blue
        admissible.push(v);
    }
    Palette::new(r, colors, admissible)
}

/// Colors are the 2-subsets of \[r\]; the single admissible vector assigns the
/// pair in position (i, j) the color {i, j}. Density (r choose 2)^-(r choose 2).
pub fn roles_palette(r: usize) -> Result<Palette> {
    if r < 3 {
        return Err(Error::invalid("roles palette needs r >= 3"));
    }
    let colors: Vec<String> =
        pairs_lex(r).iter().map(|&(i, j)| format!("{},{}", i + 1, j + 1)).collect();
    let identity: Vec<usize> = (0..colors.len()).collect();
    Palette::new(r, colors, vec![identity])
}

/// A total coloring of the vertex pairs of {0..n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairColoring {
    n: usize,
    /// Color index per pair, in lexicographic pair order.
    colors: Vec<usize>,
    pub seed: Option<u64>,
}

impl PairColoring {
    pub fn new(n: usize, colors: Vec<usize>, seed: Option<u64>) -> Result<Self> {
        if colors.len() != n * (n - 1) / 2 {
            return Err(Error::invalid("one color per vertex pair required"));
        }
        Ok(PairColoring { n, colors, seed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_rank(a, b, self.n)]
    }
}

/// Samples a uniform pair coloring and keeps the r-subsets whose pattern
/// vector is admissible. Deterministic in (palette, n, seed).
pub fn generate(p: &Palette, n: usize, seed: u64) -> Result<(RGraph, PairColoring)> {
    if n < p.r() {
        return Err(Error::invalid("need n >= r"));
    }
    let mut rng = rng_from_seed(seed);
    let colors: Vec<usize> =
        (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..p.colors.len())).collect();
    let phi = PairColoring::new(n, colors, Some(seed))?;
    let g = generate_from_coloring(p, &phi)?;
    Ok((g, phi))
}

/// The deterministic part of [`generate`]: edge membership given a coloring.
pub fn generate_from_coloring(p: &Palette, phi: &PairColoring) -> Result<RGraph> {
    let n = phi.n();
    if n < p.r() {
        return Err(Error::invalid("need n >= r"));
    }
    let admissible: HashSet<&[usize]> = p.admissible.iter().map(|v| v.as_slice()).collect();
    let mut edges = Vec::new();
    let mut pattern = vec![0usize; p.pattern_width()];
    for_each_subset(n, p.r(), |s| {
        let mut idx = 0;
        for a in 0..s.len() {
            for b in (a + 1)..s.len() {
                pattern[idx] = phi.color(s[a], s[b]);
                idx += 1;
            }
        }
        if admissible.contains(pattern.as_slice()) {
            edges.push(s.to_vec());
        }
    });
    RGraph::new(p.r(), n, edges)
}

/// What [`verify_generation`] checked and found. Any violation is returned as
/// a `GeneratorBug` error instead, so a report always describes a sound run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub edge_count: usize,
    pub roundtrip_checked: bool,
    /// Set when the palette is the head-tail construction: no vertex pair is
    /// both the head of one edge and the tail of another (natural order).
    pub head_tail_disjoint: Option<bool>,
    /// Set when the palette is the roles construction: every vertex pair
    /// plays one constant role across all edges containing it.
    pub constant_roles: Option<bool>,
}

/// Verifies that `(g, phi)` is exactly what the palette generates: membership
/// of every r-subset matches the admissible set, and the structural
/// guarantees of the named palettes hold. Violations are hard failures.
pub fn verify_generation(p: &Palette, g: &RGraph, phi: &PairColoring) -> Result<GenerationReport> {
    let regenerated = generate_from_coloring(p, phi)?;
    if regenerated != *g {
        return Err(Error::GeneratorBug(
            "edge set does not match the admissible patterns of the coloring".into(),
        ));
    }

    let mut head_tail_disjoint = None;
    if *p == head_tail_palette(p.r())? {
        let mut heads = HashSet::new();
        let mut tails = HashSet::new();
        for e in g.edges() {
            heads.insert((e[0], e[1]));
            tails.insert((e[e.len() - 2], e[e.len() - 1]));
        }
        if heads.intersection(&tails).next().is_some() {
            return Err(Error::GeneratorBug("a vertex pair is both a head and a tail".into()));
        }
        head_tail_disjoint = Some(true);
    }

    let mut constant_roles = None;
    if *p == roles_palette(p.r())? {
        let mut role_of_pair: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for e in g.edges() {
            for a in 0..e.len() {
                for b in (a + 1)..e.len() {
                    // Edges are sorted, so (a+1, b+1) is the 1-based role.
                    let role = (a + 1, b + 1);
                    match role_of_pair.entry((e[a], e[b])) {
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            slot.insert(role);
                        }
                        std::collections::hash_map::Entry::Occupied(slot) => {
                            if *slot.get() != role {
                                return Err(Error::GeneratorBug(format!(
                                    "pair ({}, {}) plays roles {:?} and {role:?}",
                                    e[a],
                                    e[b],
                                    slot.get()
                                )));
                            }
                        }
                    }
                }
            }
        }
        constant_roles = Some(true);
    }

    Ok(GenerationReport {
        edge_count: g.edge_count(),
        roundtrip_checked: true,
        head_tail_disjoint,
        constant_roles,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeTrialsReport {
    pub trials: u64,
    /// Trials in which F embedded into the generated graph.
    pub embeddings_found: u64,
}

/// Generates `trials` graphs with derived seeds and counts how many contain
/// `F`. Trials are independent and run in parallel.
pub fn f_free_trials(
    p: &Palette,
    f: &RGraph,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<FreeTrialsReport> {
    if f.r() != p.r() {
        return Err(Error::invalid("F must have the palette's uniformity"));
    }
    let found = (0..trials)
        .into_par_iter()
        .map(|k| {
            let (g, _) = generate(p, n, derive_seed(seed, k))?;
            Ok(u64::from(contains_subgraph(&g, f)?.is_some()))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(FreeTrialsReport { trials, embeddings_found: found })
}

// ---------------------------------------------------------------------------
// Zero-density predicate
// ---------------------------------------------------------------------------

pub const DEFAULT_PREDICATE_CAP: usize = 10;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureZeroReport {
    pub holds: bool,
    pub witness: Option<ConjectureZeroWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureZeroWitness {
    pub ordering: VertexOrder,
    /// The role each co-occurring vertex pair plays in every edge containing
    /// it, read off the witness ordering.
    pub pair_roles: Vec<((usize, usize), Role)>,
}

/// Decides whether some vertex order makes every vertex pair play one
/// constant role across all edges containing it.
///
/// Vertices are committed to positions smallest-first; placing a vertex fixes
/// its rank inside every incident edge, so each pair's role in an edge is
/// known as soon as both endpoints are placed and conflicting branches are
/// cut immediately.
pub fn conjecture_zero_predicate(f: &RGraph, cap: usize) -> Result<ConjectureZeroReport> {
    let n = f.n();
    if n > cap {
        return Err(Error::cap(format!(
            "predicate search is exhaustive only up to {cap} vertices; got {n}"
        )));
    }

    struct State<'a> {
        f: &'a RGraph,
        rank_in_edge: Vec<Vec<Option<usize>>>,
        placed_in_edge: Vec<usize>,
        claimed: HashMap<(usize, usize), (usize, usize)>,
        placed: Vec<usize>,
        used: Vec<bool>,
    }

    fn place(st: &mut State, v: usize) -> Option<Vec<(usize, usize)>> {
        let mut new_claims = Vec::new();
        let incident: Vec<usize> = st.f.incident_edges(v).to_vec();
        for &eidx in &incident {
            let e = &st.f.edges()[eidx];
            let rank_v = st.placed_in_edge[eidx] + 1;
            for (pos_w, &w) in e.iter().enumerate() {
                if w == v {
                    continue;
                }
                let Some(rank_w) = st.rank_in_edge[eidx][pos_w] else {
                    continue;
                };
                let key = if w < v { (w, v) } else { (v, w) };
                let role = (rank_w.min(rank_v), rank_w.max(rank_v));
                match st.claimed.entry(key) {
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(role);
                        new_claims.push(key);
                    }
                    std::collections::hash_map::Entry::Occupied(slot) => {
                        if *slot.get() != role {
                            for k in new_claims {
                                st.claimed.remove(&k);
                            }
                            return None;
                        }
                    }
                }
            }
        }
        // All conflict checks passed: commit the ranks.
        for &eidx in &incident {
            let e = &st.f.edges()[eidx];
            let pos_v = e.iter().position(|&w| w == v).unwrap();
            st.rank_in_edge[eidx][pos_v] = Some(st.placed_in_edge[eidx] + 1);
            st.placed_in_edge[eidx] += 1;
        }
        Some(new_claims)
    }

    fn unplace(st: &mut State, v: usize, claims: Vec<(usize, usize)>) {
        for k in claims {
            st.claimed.remove(&k);
        }
        let incident: Vec<usize> = st.f.incident_edges(v).to_vec();
        for &eidx in &incident {
            let e = &st.f.edges()[eidx];
            let pos_v = e.iter().position(|&w| w == v).unwrap();
            st.rank_in_edge[eidx][pos_v] = None;
            st.placed_in_edge[eidx] -= 1;
        }
    }

    fn search(st: &mut State) -> bool {
        let n = st.f.n();
        if st.placed.len() == n {
            return true;
        }
        for v in 0..n {
            if st.used[v] {
                continue;
            }
            if let Some(claims) = place(st, v) {
                st.used[v] = true;
                st.placed.push(v);
                if search(st) {
                    return true;
                }
                st.placed.pop();
                st.used[v] = false;
                unplace(st, v, claims);
            }
        }
        false
    }

    let mut st = State {
        f,
        rank_in_edge: f.edges().iter().map(|e| vec![None; e.len()]).collect(),
        placed_in_edge: vec![0; f.edge_count()],
        claimed: HashMap::new(),
        placed: Vec::with_capacity(n),
        used: vec![false; n],
    };
    if search(&mut st) {
        let ordering = VertexOrder::from_sorted_labels(&st.placed)?;
        let mut pair_roles: Vec<((usize, usize), Role)> =
            st.claimed.iter().map(|(&pair, &(a, b))| (pair, Role(a, b))).collect();
        pair_roles.sort_by_key(|&(pair, _)| pair);
        Ok(ConjectureZeroReport {
            holds: true,
            witness: Some(ConjectureZeroWitness { ordering, pair_roles }),
        })
    } else {
        Ok(ConjectureZeroReport { holds: false, witness: None })
    }
}

// ---------------------------------------------------------------------------
// JSON format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PaletteFile {
    #[serde(default = "default_version")]
    version: u32,
    r: usize,
    colors: Vec<String>,
    admissible: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

fn default_version() -> u32 {
    1
}

pub fn palette_from_json(text: &str) -> Result<Palette> {
    let file: PaletteFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if file.version != 1 {
        return Err(Error::Format(format!("unsupported palette version {}", file.version)));
    }
    let index: HashMap<&str, usize> =
        file.colors.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
    let admissible = file
        .admissible
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| {
                    index
                        .get(c.as_str())
                        .copied()
                        .ok_or_else(|| Error::Format(format!("unknown color {c:?}")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Palette::new(file.r, file.colors, admissible)
}

pub fn palette_to_json(p: &Palette, meta: Option<serde_json::Value>) -> String {
    let file = PaletteFile {
        version: p.version,
        r: p.r,
        colors: p.colors.clone(),
        admissible: p
            .admissible
            .iter()
            .map(|v| v.iter().map(|&c| p.colors[c].clone()).collect())
            .collect(),
        meta,
    };
    serde_json::to_string_pretty(&file).expect("palette serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_u};

    #[test]
    fn pair_rank_lexicographic() {
        let pairs = pairs_lex(5);
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            assert_eq!(pair_rank(i, j, 5), idx);
        }
    }

    #[test]
    fn named_palette_densities() {
        assert_eq!(head_tail_palette(3).unwrap().density(), rat(1, 4));
        assert_eq!(head_tail_palette(4).unwrap().density(), rat(1, 4));
        assert_eq!(head_tail_palette(4).unwrap().admissible().len(), 16);
        assert_eq!(roles_palette(3).unwrap().density(), rat(1, 27));
        assert_eq!(roles_palette(4).unwrap().density(), rat_u(1, 46656));
    }

    #[test]
    fn roles_palette_r3_vectors() {
        let p = roles_palette(3).unwrap();
        assert_eq!(p.colors(), &["1,2", "1,3", "2,3"]);
        assert_eq!(p.admissible(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn generate_forced_colorings() {
        // roles palette, n = 3: the identity coloring makes {0,1,2} an edge.
        let p = roles_palette(3).unwrap();
        let phi = PairColoring::new(3, vec![0, 1, 2], None).unwrap();
        let g = generate_from_coloring(&p, &phi).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1, 2]]);

        // head-tail palette: head red, tail blue, middle pair free.
        let p = head_tail_palette(3).unwrap();
        for mid in 0..2 {
            let phi = PairColoring::new(3, vec![0, mid, 1], None).unwrap();
            let g = generate_from_coloring(&p, &phi).unwrap();
            assert_eq!(g.edge_count(), 1);
        }

        // Empty admissible set: no edges for any coloring.
        let p = Palette::new(3, vec!["c".into()], vec![]).unwrap();
        let (g, _) = generate(&p, 8, 5).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn generate_deterministic() {
        let p = head_tail_palette(3).unwrap();
        let (g1, phi1) = generate(&p, 20, 99).unwrap();
        let (g2, phi2) = generate(&p, 20, 99).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(phi1, phi2);
    }

    #[test]
    fn verify_generation_structural() {
        let p = head_tail_palette(3).unwrap();
        let (g, phi) = generate(&p, 40, 7).unwrap();
        let rep = verify_generation(&p, &g, &phi).unwrap();
        assert_eq!(rep.head_tail_disjoint, Some(true));

        let p = roles_palette(4).unwrap();
        let (g, phi) = generate(&p, 30, 7).unwrap();
        let rep = verify_generation(&p, &g, &phi).unwrap();
        assert_eq!(rep.constant_roles, Some(true));
    }

    #[test]
    fn verify_generation_catches_tampering() {
        let p = roles_palette(3).unwrap();
        let (g, phi) = generate(&p, 12, 3).unwrap();
        let mut edges = g.edges().to_vec();
        edges.push(vec![0, 1, 2]);
        let tampered = RGraph::new(3, 12, edges).unwrap();
        if tampered != g {
            assert!(matches!(
                verify_generation(&p, &tampered, &phi),
                Err(Error::GeneratorBug(_))
            ));
        }
    }

    #[test]
    fn f_free_roles_never_contains_role_conflicted_graph() {
        // In a roles graph every vertex pair plays one constant role, so an
        // embedded F would inherit an ordering with constant pair roles.
        // K4- fails the zero-density predicate, hence can never embed.
        let f =
            RGraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(!conjecture_zero_predicate(&f, 10).unwrap().holds);
        let p = roles_palette(3).unwrap();
        let rep = f_free_trials(&p, &f, 25, 10, 17).unwrap();
        assert_eq!(rep.embeddings_found, 0);
    }

    #[test]
    fn single_edge_embeds_often() {
        let f = RGraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let p = head_tail_palette(3).unwrap();
        let rep = f_free_trials(&p, &f, 30, 20, 3).unwrap();
        assert!(rep.embeddings_found >= 1);
    }

    #[test]
    fn predicate_examples() {
        let single = RGraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(conjecture_zero_predicate(&single, 10).unwrap().holds);

        let two = RGraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let rep = conjecture_zero_predicate(&two, 10).unwrap();
        assert!(rep.holds);
        let witness = rep.witness.unwrap();
        // Pair {0,1} must play one constant role under the witness.
        assert!(witness.pair_roles.iter().any(|&(pair, _)| pair == (0, 1)));

        let k4_minus =
            RGraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(!conjecture_zero_predicate(&k4_minus, 10).unwrap().holds);
    }

    #[test]
    fn predicate_cap() {
        let big = RGraph::empty(3, 12);
        assert!(matches!(conjecture_zero_predicate(&big, 10), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn palette_json_roundtrip() {
        let p = head_tail_palette(3).unwrap();
        let text = palette_to_json(&p, None);
        assert_eq!(palette_from_json(&text).unwrap(), p);

        let custom = r#"{"r":3,"colors":["red","blue"],
            "admissible":[["red","red","blue"],["red","blue","blue"]]}"#;
        let p = palette_from_json(custom).unwrap();
        assert_eq!(p.admissible().len(), 2);
        assert_eq!(p.density(), rat(2, 8));

        let bad = r#"{"r":3,"colors":["red"],"admissible":[["green","red","red"]]}"#;
        assert!(palette_from_json(bad).is_err());
    }
}
