//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its elapsed time (run with `--nocapture` to see the lines for
//! passing criteria). Expected values are exact rationals or independently
//! recomputed oracles; time budgets are asserted as stated.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use turan_core::comb::{
    imo_split, interleaving_violation, linear_packing, monochromatic_subset,
    monochromatic_subset_exhaustive, monotone_subsequence,
};
use turan_core::constructions::{
    random_linear_candidate, split_construction_14, split_construction_pi, GridVertexMap,
};
use turan_core::descriptive::{
    describes, enumerate_sequences, graph_admits, is_consistent, z_role_among,
    DescriptiveSequence, Letter, Role, SequenceFilter,
};
use turan_core::hypergraph::{
    check_locally_dense, contains_subgraph, for_each_subset, DensityMode, DensityQuery, RGraph,
};
use turan_core::order::{next_permutation, VertexOrder};
use turan_core::palettes::{
    conjecture_zero_predicate, generate, head_tail_palette, roles_palette, verify_generation,
    Palette,
};
use turan_core::quasilinear::twin_structure;
use turan_core::rat::{rat, rat_u};
use turan_core::reduced::{
    blowup, counterexample_k4, homomorphism_exists, homomorphism_with_index_map, HomOptions,
};
use turan_core::seeding::{derive_seed, rng_from_seed};
use rand::Rng;

fn finish(number: u32, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!(
        "[acceptance] criterion {number:2} ({name}): PASS in {elapsed:?} (budget {budget:?})"
    );
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its time budget: {elapsed:?} > {budget:?}"
    );
}

#[test]
fn criterion_01_sequence_classification() {
    // Warm-up excludes one-time setup costs from the timed run.
    let _ = DescriptiveSequence::parse("XYYXZZYX").unwrap();
    let start = Instant::now();
    let s = DescriptiveSequence::parse("XYYXZZYX").unwrap();
    assert!(is_consistent(&s));
    assert_eq!(z_role_among(&s, Letter::X), Role(3, 4));
    assert_eq!(z_role_among(&s, Letter::Y), Role(3, 4));
    let s = DescriptiveSequence::parse("YXZXYXZY").unwrap();
    assert!(!is_consistent(&s));
    assert_eq!(z_role_among(&s, Letter::X), Role(2, 5));
    assert_eq!(z_role_among(&s, Letter::Y), Role(2, 4));
    finish(1, "descriptive sequence worked examples", start, Duration::from_millis(1));
}

#[test]
fn criterion_02_palette_densities() {
    // Setup outside the timed window: the budget covers the exact density
    // computations and equality checks.
    let head_tails: Vec<(usize, Palette)> =
        [3, 4, 5, 6].into_iter().map(|r| (r, head_tail_palette(r).unwrap())).collect();
    let roles3 = roles_palette(3).unwrap();
    let roles4 = roles_palette(4).unwrap();
    let _ = head_tails[0].1.density();
    let start = Instant::now();
    for (r, p) in &head_tails {
        assert_eq!(p.density(), rat(1, 4), "head-tail r={r}");
    }
    assert_eq!(roles3.density(), rat(1, 27));
    assert_eq!(roles4.density(), rat_u(1, 46656));
    finish(2, "exact palette densities", start, Duration::from_millis(1));
}

#[test]
fn criterion_03_counterexample_quarter_density() {
    let start = Instant::now();
    for k in [5, 6, 7] {
        let rg = counterexample_k4(k).unwrap();
        let mut tuples = Vec::new();
        for_each_subset(k, 4, |t| tuples.push(t.to_vec()));
        for t in &tuples {
            assert_eq!(
                rg.constituent_density(t).unwrap(),
                rat(1, 4),
                "k={k} tuple={t:?}"
            );
        }
        assert_eq!(rg.min_density().unwrap(), rat(1, 4));
    }
    finish(3, "power-set counterexample density 1/4", start, Duration::from_secs(10));
}

#[test]
fn criterion_04_generator_soundness() {
    let start = Instant::now();
    let n = 50;
    let configs: Vec<(Palette, &str)> = vec![
        (head_tail_palette(3).unwrap(), "head-tail r=3"),
        (head_tail_palette(4).unwrap(), "head-tail r=4"),
        (roles_palette(3).unwrap(), "roles r=3"),
        (roles_palette(4).unwrap(), "roles r=4"),
    ];
    for (palette, label) in &configs {
        let violations: Vec<String> = (0..50u64)
            .into_par_iter()
            .filter_map(|trial| {
                let seed = derive_seed(0xACCE97, trial);
                let (g, phi) = generate(palette, n, seed).unwrap();
                match verify_generation(palette, &g, &phi) {
                    Ok(report) => {
                        // The named palettes must have had their structural
                        // check actually performed.
                        if report.head_tail_disjoint == Some(true)
                            || report.constant_roles == Some(true)
                        {
                            None
                        } else {
                            Some(format!("{label} seed {seed}: structural check skipped"))
                        }
                    }
                    Err(e) => Some(format!("{label} seed {seed}: {e}")),
                }
            })
            .collect();
        assert!(violations.is_empty(), "{violations:?}");
    }
    finish(4, "generator structural soundness, 50 seeds", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_empirical_local_density() {
    let start = Instant::now();
    for (palette, d, label) in [
        (roles_palette(3).unwrap(), rat(1, 27), "roles"),
        (head_tail_palette(3).unwrap(), rat(1, 4), "head-tail"),
    ] {
        let holds_count: u64 = (0..50u64)
            .into_par_iter()
            .map(|trial| {
                let seed = derive_seed(0xDE95, trial);
                let (g, _) = generate(&palette, 60, seed).unwrap();
                let q = DensityQuery {
                    d: d.clone(),
                    eps: rat(1, 4),
                    mode: DensityMode::Sampled { trials: 2000, seed: derive_seed(seed, 1) },
                };
                u64::from(check_locally_dense(&g, &q).unwrap().holds)
            })
            .sum();
        assert!(
            holds_count * 100 >= 95 * 50,
            "{label}: locally dense in only {holds_count}/50 seeds"
        );
    }
    finish(5, "sampled local density, 2x50 seeds", start, Duration::from_secs(300));
}

#[test]
fn criterion_06_construction_correctness() {
    let start = Instant::now();
    let mut splits_pi_produced = 0usize;
    for r in [3usize, 4] {
        let t = 2 * r - 2;
        let head_tail_sigma = DescriptiveSequence::head_tail(r).unwrap();
        let sigmas = enumerate_sequences(r, SequenceFilter::All).unwrap();
        // Grid side m: large enough that 2r-2 distinct coordinates per axis
        // occur at a useful rate.
        let m = if r == 3 { 9 } else { 12 };
        let grid = GridVertexMap::new(m, 2).unwrap();
        for case in 0..50u64 {
            // split14 on a packed linear t-graph.
            let packing = linear_packing(30, t, derive_seed(0x514, case), 5).unwrap();
            assert!(!packing.family.is_empty());
            let hp = RGraph::new(t, 30, packing.family).unwrap();
            assert!(hp.is_linear());
            let out = split_construction_14(&hp).unwrap();
            let ts = twin_structure(&out.graph).expect("split14 output is quasi-linear");
            assert_eq!(ts.pairs().len(), hp.edge_count());
            let ord = graph_admits(&out.graph, &head_tail_sigma)
                .unwrap()
                .expect("split14 output admits XX..XZZYY..Y");
            for &(i, j) in ts.pairs() {
                assert!(describes(
                    &head_tail_sigma,
                    &out.graph.edges()[i],
                    &out.graph.edges()[j],
                    &ord
                )
                .unwrap());
            }

            // split_pi with a cycling pair of descriptive sequences.
            let s1 = &sigmas[(case as usize * 7) % sigmas.len()];
            let s2 = &sigmas[(case as usize * 13 + 5) % sigmas.len()];
            let packing =
                linear_packing(m * m, t, derive_seed(0x9_1, case), 5).unwrap();
            let hp = RGraph::new(t, m * m, packing.family).unwrap();
            let out =
                split_construction_pi(&hp, &grid, &[s1.clone(), s2.clone()]).unwrap();
            assert!(out.graph.edge_count() <= 2 * hp.edge_count());
            if out.graph.edge_count() == 0 {
                continue;
            }
            splits_pi_produced += 1;
            let ts = twin_structure(&out.graph).expect("split_pi output is quasi-linear");
            assert_eq!(2 * ts.pairs().len(), out.graph.edge_count());
            for (axis, sigma) in [s1, s2].into_iter().enumerate() {
                let mut labels: Vec<usize> = (0..m * m).collect();
                labels.sort_by_key(|&v| (grid.coordinate(v, axis), v));
                let ord = VertexOrder::from_sorted_labels(&labels).unwrap();
                for &(i, j) in ts.pairs() {
                    assert!(
                        describes(sigma, &out.graph.edges()[i], &out.graph.edges()[j], &ord)
                            .unwrap(),
                        "axis {axis} sigma {sigma}"
                    );
                }
            }
        }
    }
    assert!(splits_pi_produced >= 10, "grid splits produced only {splits_pi_produced} outputs");
    finish(6, "split constructions, 100 linear inputs", start, Duration::from_secs(120));
}

fn contains_by_enumeration(h: &RGraph, f: &RGraph) -> bool {
    fn rec(h: &RGraph, f: &RGraph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if v == f.n() {
            return f.edges().iter().all(|e| {
                let mut img: Vec<usize> = e.iter().map(|&x| map[x]).collect();
                img.sort_unstable();
                h.has_edge(&img)
            });
        }
        for img in 0..h.n() {
            if used[img] {
                continue;
            }
            map[v] = img;
            used[img] = true;
            if rec(h, f, v + 1, map, used) {
                return true;
            }
            used[img] = false;
        }
        false
    }
    if f.n() > h.n() {
        return false;
    }
    rec(h, f, 0, &mut vec![usize::MAX; f.n()], &mut vec![false; h.n()])
}

#[test]
fn criterion_07_algorithm_property_suites() {
    let start = Instant::now();

    // imo_split: 1000 random instances, postconditions via independent
    // checkers (exact size bound, subset-ness, O(n^2) interleaving scan).
    let mut rng = rng_from_seed(0x1310);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=6);
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut next = 0usize;
        for _ in 0..k {
            let size = rng.gen_range(1..=30);
            sets.push((next..next + size).collect());
            next += size;
        }
        let total = next.max(1);
        let mut labels: Vec<usize> = (0..total).collect();
        for i in (1..total).rev() {
            let j = rng.gen_range(0..=i);
            labels.swap(i, j);
        }
        let ord = VertexOrder::from_sorted_labels(&labels).unwrap();
        let bs = imo_split(&sets, &ord).unwrap();
        for (a, b) in sets.iter().zip(&bs) {
            assert!(b.iter().all(|x| a.contains(x)));
            assert!(b.len() * k >= a.len(), "|B|={} |A|={} k={k}", b.len(), a.len());
        }
        assert!(interleaving_violation(&bs, &ord).is_none());
    }

    // monotone_subsequence: never none on the 120 permutations of length 5.
    let mut labels: Vec<usize> = (0..5).collect();
    let mut perms = 0;
    loop {
        let seq: Vec<i64> = labels.iter().map(|&x| x as i64).collect();
        let out = monotone_subsequence(&seq, 3).expect("Erdős–Szekeres guarantee");
        assert_eq!(out.len(), 3);
        perms += 1;
        if !next_permutation(&mut labels) {
            break;
        }
    }
    assert_eq!(perms, 120);

    // monochromatic_subset against the exhaustive scan, n <= 10.
    for case in 0..150u64 {
        let n = 6 + (case as usize % 5);
        let colors = 2 + (case as usize % 2) as u64;
        let key = derive_seed(0xC0109, case);
        let coloring = move |e: &[usize]| -> u64 {
            let mut h = key;
            for &v in e {
                h = h.wrapping_mul(0x100000001b3).wrapping_add(v as u64 + 1);
            }
            h % colors
        };
        for m in [3, 4] {
            let fast = monochromatic_subset(n, 2, m, &coloring);
            let slow = monochromatic_subset_exhaustive(n, 2, m, &coloring);
            assert_eq!(fast.is_some(), slow.is_some(), "n={n} m={m} case={case}");
        }
    }

    // contains_subgraph against full injection enumeration.
    let mut rng = rng_from_seed(0xC0A7);
    for case in 0..80 {
        let nf = 3 + case % 3;
        let mut h_edges = Vec::new();
        for_each_subset(8, 3, |s| {
            if rng.gen::<f64>() < 0.25 {
                h_edges.push(s.to_vec());
            }
        });
        let h = RGraph::new(3, 8, h_edges).unwrap();
        let mut f_edges = Vec::new();
        for_each_subset(nf, 3, |s| {
            if rng.gen::<f64>() < 0.5 {
                f_edges.push(s.to_vec());
            }
        });
        let f = RGraph::new(3, nf, f_edges).unwrap();
        let fast = contains_subgraph(&h, &f).unwrap();
        assert_eq!(fast.is_some(), contains_by_enumeration(&h, &f));
        if let Some(emb) = fast {
            assert!(emb.verify(&f, &h));
        }
    }

    finish(7, "algorithm suites vs independent oracles", start, Duration::from_secs(180));
}

#[test]
fn criterion_08_blowup_and_homomorphisms() {
    let start = Instant::now();

    // min_density(blowup(P, k)) = density(P) exactly, 20 random palettes.
    let mut rng = rng_from_seed(0xB10);
    for case in 0..20 {
        let ncolors = 2 + case % 2;
        let nadm = 1 + (case * 3) % 6;
        let colors: Vec<String> = (0..ncolors).map(|i| format!("c{i}")).collect();
        let mut admissible = Vec::new();
        let mut guard = 0;
        while admissible.len() < nadm && guard < 100 {
            guard += 1;
            let v: Vec<usize> = (0..3).map(|_| rng.gen_range(0..ncolors)).collect();
            if !admissible.contains(&v) {
                admissible.push(v);
            }
        }
        let p = Palette::new(3, colors, admissible).unwrap();
        let k = 3 + case % 4; // up to 6
        let rg = blowup(&p, k).unwrap();
        assert_eq!(rg.min_density().unwrap(), p.density(), "case {case}");
    }

    // Identity and monotone-injection homomorphisms are found and verify.
    let p = roles_palette(3).unwrap();
    let small = blowup(&p, 4).unwrap();
    let identity = homomorphism_exists(&small, &small, &HomOptions::default())
        .unwrap()
        .found
        .expect("identity homomorphism");
    assert!(identity.verify(&small, &small).unwrap());

    let large = blowup(&p, 6).unwrap();
    let increasing: Vec<usize> = vec![0, 2, 3, 5];
    let monotone = homomorphism_with_index_map(&small, &large, &increasing)
        .unwrap()
        .expect("monotone-injection homomorphism");
    assert!(monotone.verify(&small, &large).unwrap());

    finish(8, "blowup densities and homomorphisms", start, Duration::from_secs(600));
}

/// Asserts that blowup(P, 5) admits NO homomorphism into
/// counterexample_k4(5) for any palette with |C| = 2 and non-empty A. The
/// claim this miniaturizes holds for 17-blowups, where any injection of
/// indices is monotone on 5 of them; at k = 5 an index map can avoid a
/// monotone run of 5, and the search finds genuine homomorphisms (verified
/// independently) for every singleton pattern except the monochromatic ones.
/// The assertion is kept as stated and fails honestly; the mechanism behind
/// the 17-index claim is pinned by `obstruction_mechanism_monotone_index_maps`.
#[test]
fn criterion_08_counterexample_obstruction() {
    let start = Instant::now();
    let dst = counterexample_k4(5).unwrap();
    // Monotonicity reduction: a homomorphism for (C, A) restricts to one for
    // (C, {a}) for each a in A, so "none for every singleton A" covers every
    // non-empty A over the same colors.
    let mut found: Vec<String> = Vec::new();
    for bits in 0..64u32 {
        let v: Vec<usize> = (0..6).map(|i| ((bits >> i) & 1) as usize).collect();
        let p = Palette::new(4, vec!["a".into(), "b".into()], vec![v]).unwrap();
        let src = blowup(&p, 5).unwrap();
        let rep = homomorphism_exists(&src, &dst, &HomOptions::default()).unwrap();
        assert!(rep.exhaustive);
        if let Some(h) = rep.found {
            assert!(h.verify(&src, &dst).unwrap(), "search returned an invalid witness");
            found.push(format!("{bits:06b} via f={:?}", h.index_map));
        }
    }
    let ok = found.is_empty();
    let elapsed = start.elapsed();
    if ok {
        println!(
            "[acceptance] criterion  8 (counterexample obstruction at k=5): PASS in {elapsed:?}"
        );
    } else {
        println!(
            "[acceptance] criterion  8 (counterexample obstruction at k=5): FAIL in {elapsed:?} \
             — verified homomorphisms exist for {} of 64 singleton palettes \
             (e.g. {}); the obstruction needs 17-blowup scale",
            found.len(),
            found[0]
        );
    }
    assert!(
        ok,
        "blowup(P,5) -> counterexample_k4(5) homomorphisms exist for {}/64 singleton \
         palettes with |C| = 2 (each witness re-verified independently); the \
         obstruction argument applies to 17-blowups, where every index injection is \
         monotone on 5 indices, and does not descend to 5-blowups",
        found.len()
    );
}

/// The actual mechanism of the obstruction, at desk scale: under a MONOTONE
/// index map the three tuples through one part impose contradictory
/// contain/omit constraints on a single vertex image, so no singleton palette
/// maps into the counterexample. Both monotone injections of [5] into [5]
/// are checked for all 65 singleton palettes (|C| = 1 and |C| = 2).
#[test]
fn obstruction_mechanism_monotone_index_maps() {
    let dst = counterexample_k4(5).unwrap();
    let identity: Vec<usize> = (0..5).collect();
    let reversal: Vec<usize> = (0..5).rev().collect();
    let mono = Palette::new(4, vec!["c".into()], vec![vec![0; 6]]).unwrap();
    let mut sources = vec![blowup(&mono, 5).unwrap()];
    for bits in 0..64u32 {
        let v: Vec<usize> = (0..6).map(|i| ((bits >> i) & 1) as usize).collect();
        let p = Palette::new(4, vec!["a".into(), "b".into()], vec![v]).unwrap();
        sources.push(blowup(&p, 5).unwrap());
    }
    for src in &sources {
        for f in [&identity, &reversal] {
            assert!(
                homomorphism_with_index_map(src, &dst, f).unwrap().is_none(),
                "monotone index map admitted a homomorphism"
            );
        }
    }
}

#[test]
fn criterion_09_conjecture_predicate() {
    let start = Instant::now();
    let two_edges = RGraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
    assert!(conjecture_zero_predicate(&two_edges, 10).unwrap().holds);

    let k4_minus =
        RGraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
    assert!(!conjecture_zero_predicate(&k4_minus, 10).unwrap().holds);

    // Independent oracle: scan all 24 orderings of K4- directly.
    let mut labels: Vec<usize> = (0..4).collect();
    let mut any = false;
    loop {
        let ord = VertexOrder::from_sorted_labels(&labels).unwrap();
        let mut roles: std::collections::HashMap<(usize, usize), (usize, usize)> =
            std::collections::HashMap::new();
        let mut ok = true;
        for e in k4_minus.edges() {
            let sorted = ord.sort(e);
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let (u, v) = (sorted[a].min(sorted[b]), sorted[a].max(sorted[b]));
                    if let Some(&prev) = roles.get(&(u, v)) {
                        if prev != (a + 1, b + 1) {
                            ok = false;
                        }
                    } else {
                        roles.insert((u, v), (a + 1, b + 1));
                    }
                }
            }
        }
        if ok {
            any = true;
        }
        if !next_permutation(&mut labels) {
            break;
        }
    }
    assert!(!any, "24-ordering scan must confirm the predicate failure");
    finish(9, "zero-density predicate spot checks", start, Duration::from_secs(1));
}

#[test]
fn criterion_10_removal_count_bound() {
    let start = Instant::now();
    let n = 2000usize;
    let bound = (n as f64).powf(1.25);
    let within: u64 = (0..30u64)
        .into_par_iter()
        .map(|trial| {
            let rep = random_linear_candidate(n, 4, derive_seed(0x7EE, trial)).unwrap();
            assert!(rep.graph.max_pairwise_intersection() <= 1);
            u64::from((rep.removed_count as f64) <= bound)
        })
        .sum();
    assert!(within * 10 >= 9 * 30, "removal bound held in only {within}/30 seeds");
    finish(10, "random linear candidate |T| bound", start, Duration::from_secs(120));
}
