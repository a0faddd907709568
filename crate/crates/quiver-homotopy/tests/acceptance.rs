//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p quiver-homotopy --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use quiver_homotopy::cluster::{explore_laurent, g_vector, separation_check, PathSelection, Seed};
use quiver_homotopy::covering::named::{hexagon_cover, klein_cover};
use quiver_homotopy::covering::{
    check_global_bounded, check_orbit_compatibility, check_orbit_compatibility_sequence,
    is_k_mutable, orbit_mutate,
};
use quiver_homotopy::io::arrow_set;
use quiver_homotopy::mutation::{
    explore_pattern, init_tracked, maximal_homotopy_fz_equivalence, pi1_rank_monotonicity_check,
    TrackedQuiverWithHomotopy,
};
use quiver_homotopy::oracle::{verify, HomotopyOracle, Verdict};
use quiver_homotopy::quiver::named::{
    markov, oriented_triangle, path, three_double_cycles, two_cycle,
};
use quiver_homotopy::quiver::{quiver_equal_fixed_vertices, Quiver};
use quiver_homotopy::surface::named::{
    punctured_digon, punctured_torus, thrice_punctured_sphere, twice_punctured_monogon,
};
use quiver_homotopy::surface::{
    build_x, flip_graph, pi1_report, surface_quiver, verify_flip_mutation, BoundaryMode, Color,
    ColoredSurface, Triangulation,
};
use quiver_homotopy::walk::{closed_reduced_walks, reduced_walks_from, Walk};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || {
        format!("took {elapsed:.2?}, budget {budget:.2?}")
    })
}

fn tracked(q: &Quiver, words: &[&str]) -> TrackedQuiverWithHomotopy {
    let gens: Vec<Walk> = words
        .iter()
        .map(|w| Walk::right_to_left(q, w).unwrap())
        .collect();
    let oracle = if gens.is_empty() {
        HomotopyOracle::trivial(q)
    } else {
        HomotopyOracle::generated(q, gens).unwrap()
    };
    init_tracked(q, oracle).unwrap()
}

fn klein_tracked() -> TrackedQuiverWithHomotopy {
    init_tracked(
        &three_double_cycles(),
        HomotopyOracle::cover(klein_cover()).unwrap(),
    )
    .unwrap()
}

fn kronecker() -> Quiver {
    Quiver::from_pairs(2, &[(0, 1), (0, 1)]).unwrap()
}

/// Every vertex sequence of length at most `depth` without immediate repeats.
fn addresses(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for a in &layer {
            for k in 0..n {
                if a.last() != Some(&k) {
                    let mut b: Vec<usize> = a.clone();
                    b.push(k);
                    next.push(b);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn triangle_replay() -> Outcome {
    let q = oriented_triangle();
    let trivial = tracked(&q, &[]);
    let cycle = tracked(&q, &["a b c"]);
    let own = |v: &[(&str, usize, usize)]| -> Vec<(String, usize, usize)> {
        let mut v: Vec<_> = v.iter().map(|&(l, s, t)| (l.to_string(), s, t)).collect();
        v.sort();
        v
    };
    let expect_trivial = own(&[("c*", 1, 0), ("b*", 2, 1), ("a", 2, 0), ("[bc]", 0, 2)]);
    let expect_cycle = own(&[("c*", 1, 0), ("b*", 2, 1)]);
    let runs = 100u32;
    let start = Instant::now();
    let mut results = None;
    for _ in 0..runs {
        let a = trivial.mutate(1).map_err(|e| e.to_string())?;
        let b = cycle.mutate(1).map_err(|e| e.to_string())?;
        results = Some((a, b));
    }
    let per_run = start.elapsed() / runs;
    let (a, b) = results.unwrap();
    ensure(arrow_set(a.current()) == expect_trivial, || {
        format!("trivial homotopy gave {:?}", arrow_set(a.current()))
    })?;
    ensure(arrow_set(b.current()) == expect_cycle, || {
        format!("cycle homotopy gave {:?}", arrow_set(b.current()))
    })?;
    within(per_run, Duration::from_millis(1))?;
    Ok(format!(
        "both arrow sets exact, {per_run:.2?} per pair of mutations"
    ))
}

fn markov_table() -> Outcome {
    let q = markov();
    let cases: [(&[&str], [usize; 3]); 4] = [
        (&[], [0, 0, 0]),
        (&["γ1 β1 α1", "γ2 β1 α1"], [1, 1, 1]),
        (&["γ1 β1 α1", "γ2 β1 α2"], [1, 2, 2]),
        (&["γ1 β1 α1", "γ2 β2 α2"], [2, 2, 2]),
    ];
    let start = Instant::now();
    let mut table = Vec::new();
    for (gens, _) in &cases {
        let t = tracked(&q, gens);
        let mut row = [0; 3];
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = t.mutate_with_log(k).map_err(|e| e.to_string())?.1.len();
        }
        table.push(row);
    }
    let elapsed = start.elapsed();
    let expected: Vec<[usize; 3]> = cases.iter().map(|c| c.1).collect();
    ensure(table == expected, || format!("table {table:?}"))?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!("{table:?} in {elapsed:.2?}"))
}

/// Every 2-acyclic quiver on `n` vertices with at most two parallel arrows,
/// as arrow lists.
fn small_quivers(n: usize) -> Vec<Quiver> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let total = 5usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut arrows = Vec::new();
        for &(i, j) in &pairs {
            let choice = c % 5;
            c /= 5;
            let (s, t, m) = match choice {
                0 => continue,
                1 | 2 => (i, j, choice),
                _ => (j, i, choice - 2),
            };
            arrows.extend(std::iter::repeat_n((s, t), m));
        }
        out.push(Quiver::from_pairs(n, &arrows).unwrap());
    }
    out
}

fn involutions() -> Outcome {
    let start = Instant::now();
    let q = markov();
    let four_gamma = Quiver::from_labelled(
        3,
        &[
            ("α1", 0, 1),
            ("α2", 0, 1),
            ("β1", 1, 2),
            ("β2", 1, 2),
            ("γ1", 2, 0),
            ("γ2", 2, 0),
            ("γ3", 2, 0),
            ("γ4", 2, 0),
        ],
    )
    .unwrap();
    let double_path =
        Quiver::from_labelled(3, &[("a", 0, 1), ("d", 1, 0), ("b", 1, 2), ("c", 2, 1)]).unwrap();
    let examples = vec![
        tracked(&oriented_triangle(), &[]),
        tracked(&oriented_triangle(), &["a b c"]),
        tracked(&q, &[]),
        tracked(&q, &["γ1 β1 α1", "γ2 β1 α1"]),
        tracked(&q, &["γ1 β1 α1", "γ2 β1 α2"]),
        tracked(&q, &["γ1 β1 α1", "γ2 β2 α2"]),
        tracked(&four_gamma, &["γ1 β1 α1", "γ2 β1 α1", "γ3 β2 α2"]),
        tracked(&double_path, &[]),
        tracked(&two_cycle(), &["b a b a"]),
        klein_tracked(),
    ];
    let mut checks = 0;
    for t in &examples {
        for k in 0..t.current().vertex_count() {
            checks += 1;
            let ok = t.check_involution(k).map_err(|e| e.to_string())?;
            ensure(ok, || format!("example {:?} at {k}", arrow_set(t.base())))?;
        }
    }
    let mut swept = 0;
    for n in 1..=4 {
        for q in small_quivers(n) {
            swept += 1;
            let t = init_tracked(&q, HomotopyOracle::full(&q)).map_err(|e| e.to_string())?;
            for k in 0..n {
                checks += 1;
                let ok = t.check_involution(k).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{:?} at {k}", arrow_set(&q)))?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{} examples and {swept} swept quivers, {checks} checks in {elapsed:.2?}",
        examples.len()
    ))
}

fn all_sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..n).map(move |k| {
                    let mut t = s.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

fn matrix_rule() -> Outcome {
    let mut sequences = 0;
    for q in [path(2), path(3), markov()] {
        for seq in all_sequences(q.vertex_count(), 5) {
            sequences += 1;
            let ok = maximal_homotopy_fz_equivalence(&q, &seq).map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!("full homotopy on {:?} along {seq:?}", arrow_set(&q))
            })?;
        }
    }
    let mut nodes = 0;
    for q in [path(3), kronecker()] {
        let t = init_tracked(&q, HomotopyOracle::trivial(&q)).unwrap();
        let full = init_tracked(&q, HomotopyOracle::full(&q)).unwrap();
        for node in explore_pattern(&t, 5, false).map_err(|e| e.to_string())? {
            nodes += 1;
            let mut b = q.exchange_matrix();
            for &k in &node.address {
                b = b.mutate(k);
            }
            let via_full = full
                .mutation_sequence(&node.address)
                .map_err(|e| e.to_string())?;
            ensure(
                node.quiver.is_two_acyclic() && node.quiver.exchange_matrix() == b,
                || format!("trivial homotopy at {:?}", node.address),
            )?;
            ensure(
                quiver_equal_fixed_vertices(&node.quiver, via_full.current()),
                || format!("trivial and full differ at {:?}", node.address),
            )?;
        }
    }
    Ok(format!(
        "{sequences} full-homotopy sequences, {nodes} trivial-homotopy nodes"
    ))
}

fn rank_monotonicity() -> Outcome {
    let seeds = [
        path(3),
        kronecker(),
        Quiver::from_pairs(4, &[(0, 1), (2, 1), (2, 3)]).unwrap(),
    ];
    for q in &seeds {
        let ok = pi1_rank_monotonicity_check(q, 5).map_err(|e| e.to_string())?;
        ensure(ok, || format!("rank drops from {:?}", arrow_set(q)))?;
    }
    Ok(format!("{} acyclic seeds to depth 5", seeds.len()))
}

fn orbit_compatibility() -> Outcome {
    let start = Instant::now();
    let c = klein_cover();
    let t = init_tracked(c.base(), HomotopyOracle::cover(c.clone()).unwrap()).unwrap();
    for k in 0..3 {
        let ok = check_orbit_compatibility(&c, k, &t).map_err(|e| e.to_string())?;
        ensure(ok, || format!("direction {k}"))?;
    }
    let mut count = 0;
    for len in 1..=3 {
        for seq in all_sequences(3, len) {
            count += 1;
            let ok = check_orbit_compatibility_sequence(&c, &seq, &t).map_err(|e| e.to_string())?;
            ensure(ok, || format!("sequence {seq:?}"))?;
        }
    }
    let h = hexagon_cover();
    let mutable = is_k_mutable(&h, 0).map_err(|e| e.to_string())?;
    ensure(!mutable, || "hexagon cover accepted".into())?;
    let m = orbit_mutate(&h, 0).map_err(|e| e.to_string())?;
    let loops: Vec<usize> = m
        .base()
        .arrows()
        .iter()
        .filter(|a| a.src == a.tgt)
        .map(|a| a.src)
        .collect();
    ensure(loops == vec![1], || format!("loops at {loops:?}"))?;
    let g = check_global_bounded(&h, 1).map_err(|e| e.to_string())?;
    ensure(!g.ok, || "hexagon cover globally admissible".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "3 directions and {count} sequences compatible; hexagon loop at the second vertex; {elapsed:.2?}"
    ))
}

fn surfaces() -> Vec<(&'static str, Triangulation)> {
    vec![
        ("digon I", punctured_digon(Color::I)),
        ("digon II", punctured_digon(Color::II)),
        ("torus I", punctured_torus(Color::I)),
        ("torus II", punctured_torus(Color::II)),
        ("sphere II II II", thrice_punctured_sphere()),
        ("monogon I I", twice_punctured_monogon(Color::I, Color::I)),
    ]
}

fn expected_arc_count(s: &ColoredSurface) -> usize {
    let s_points: usize = s.boundaries.iter().sum();
    6 * s.genus + 3 * s.boundaries.len() + 3 * s.punctures.len() + s_points - 6
}

fn surface_suite() -> Outcome {
    let start = Instant::now();
    for (name, t) in surfaces() {
        let n = expected_arc_count(t.surface());
        ensure(
            t.arc_labels().len() == n && t.surface().arc_count() == n,
            || format!("{name}: {} arcs, expected {n}", t.arc_labels().len()),
        )?;
    }
    for color in [Color::I, Color::II] {
        let sq = surface_quiver(&punctured_torus(color), BoundaryMode::Omit)
            .map_err(|e| e.to_string())?;
        ensure(quiver_equal_fixed_vertices(&sq.quiver, &markov()), || {
            format!("torus {color:?} quiver {:?}", arrow_set(&sq.quiver))
        })?;
    }
    for (color, size) in [(Color::II, 6), (Color::I, 4)] {
        let g = flip_graph(&punctured_digon(color), 100).map_err(|e| e.to_string())?;
        ensure(g.complete && g.nodes.len() == size && g.is_cycle(), || {
            format!("digon {color:?} flip graph has {} nodes", g.nodes.len())
        })?;
    }
    let mut flips = 0;
    for t in [
        punctured_digon(Color::II),
        punctured_digon(Color::I),
        thrice_punctured_sphere(),
    ] {
        let g = flip_graph(&t, 500).map_err(|e| e.to_string())?;
        ensure(g.complete, || "flip graph truncated".into())?;
        for node in &g.nodes {
            for k in 0..node.arc_labels().len() {
                flips += 1;
                let c = verify_flip_mutation(node, k).map_err(|e| e.to_string())?;
                ensure(c.ok(), || format!("flip of arc {k} at {node}"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{flips} flips agree with mutation; {elapsed:.2?}"))
}

fn topology() -> Outcome {
    let mut complexes = 0;
    for (name, t) in surfaces() {
        let s = t.surface();
        let colour_ii = s.punctures.iter().filter(|p| p.color == Color::II).count() as i64;
        let chi = 2 - 2 * s.genus as i64 - s.boundaries.len() as i64 - colour_ii;
        let g = flip_graph(&t, 500).map_err(|e| e.to_string())?;
        for node in &g.nodes {
            complexes += 1;
            let x = build_x(node).map_err(|e| e.to_string())?;
            ensure(x.euler_characteristic() == chi, || {
                format!(
                    "{name}: {} instead of {chi} at {node}",
                    x.euler_characteristic()
                )
            })?;
        }
    }
    let x = build_x(&punctured_torus(Color::II)).map_err(|e| e.to_string())?;
    let rank = pi1_report(&x).rank_if_free;
    ensure(rank == Some(2), || format!("torus II rank {rank:?}"))?;
    Ok(format!(
        "{complexes} complexes; colour II torus has free rank 2"
    ))
}

fn cluster_suite() -> Outcome {
    let start = Instant::now();
    let a2 = init_tracked(&path(2), HomotopyOracle::full(&path(2))).unwrap();
    let s0 = Seed::trivial(a2.clone());
    let s5 = s0
        .mutate_along(&[0, 1, 0, 1, 0])
        .map_err(|e| e.to_string())?;
    let swapped = s5.cluster()[0] == s0.cluster()[1] && s5.cluster()[1] == s0.cluster()[0];
    let arrow_reversed = s5.tracked().current().arrows_between(1, 0).len() == 1
        && s5.tracked().current().arrow_count() == 1;
    ensure(swapped && arrow_reversed, || {
        "five mutations do not return the seed up to swapping".into()
    })?;
    let s10 = s5
        .mutate_along(&[1, 0, 1, 0, 1])
        .map_err(|e| e.to_string())?;
    ensure(s10.cluster() == s0.cluster(), || {
        "ten mutations differ".into()
    })?;

    let seeds = [
        ("A2", Seed::principal(a2)),
        (
            "2-cycle",
            Seed::principal(tracked(&two_cycle(), &["b a b a"])),
        ),
        ("covering seed", Seed::principal(klein_tracked())),
    ];
    let mut checked = 0;
    for (name, s) in &seeds {
        for addr in addresses(s.rank(), 4) {
            for i in 0..s.rank() {
                checked += 1;
                let ok = separation_check(s, &addr, i).map_err(|e| format!("{name}: {e}"))?;
                ensure(ok, || format!("{name}: separation at {addr:?}, {i}"))?;
                g_vector(s, &addr, i).map_err(|e| format!("{name} at {addr:?}, {i}: {e}"))?;
            }
        }
    }
    let report = explore_laurent(
        &Seed::principal(klein_tracked()),
        6,
        &PathSelection::Exhaustive,
    )
    .map_err(|e| e.to_string())?;
    ensure(report.findings.is_empty(), || {
        format!(
            "{} findings, first {:?}",
            report.findings.len(),
            report.findings[0]
        )
    })?;
    ensure(report.all_positive_laurent(), || {
        "not positive Laurent".into()
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "pentagon; {checked} separation and g-vector checks; {} nodes to depth 6 positive Laurent; {elapsed:.2?}",
        report.nodes.len()
    ))
}

/// Random closed walks at `v`: products of short closed walks and of
/// conjugates of `relators`, so both verdicts occur.
struct WalkSampler {
    closed: Vec<Vec<Walk>>,
    paths: Vec<Vec<Walk>>,
    relators: Vec<Walk>,
}

impl WalkSampler {
    fn new(q: &Quiver, relators: Vec<Walk>) -> WalkSampler {
        let n = q.vertex_count();
        WalkSampler {
            closed: (0..n)
                .map(|v| {
                    closed_reduced_walks(q, v, 4)
                        .into_iter()
                        .filter(|w| !w.is_empty())
                        .collect()
                })
                .collect(),
            paths: (0..n).map(|v| reduced_walks_from(q, v, 3)).collect(),
            relators,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Walk {
        let v = rng.gen_range(0..self.closed.len());
        let mut w = Walk::trivial(v);
        for _ in 0..rng.gen_range(1..=3) {
            let piece = if !self.relators.is_empty() && rng.gen_bool(0.5) {
                let r = self.relators.choose(rng).unwrap();
                let r = if rng.gen_bool(0.5) {
                    r.inverse()
                } else {
                    r.clone()
                };
                let to: Vec<&Walk> = self.paths[v]
                    .iter()
                    .filter(|p| p.end() == r.start())
                    .collect();
                match to.choose(rng) {
                    Some(p) => p.concat(&r).unwrap().concat(&p.inverse()).unwrap(),
                    None => continue,
                }
            } else {
                match self.closed[v].choose(rng) {
                    Some(c) => c.clone(),
                    None => continue,
                }
            };
            w = w.concat(&piece).unwrap().reduced();
        }
        w
    }
}

fn oracle_soundness() -> Outcome {
    const QUERIES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_018);
    let m = markov();
    let klein = three_double_cycles();
    let rtl = |q: &Quiver, s: &str| Walk::right_to_left(q, s).unwrap();
    let markov_gens = vec![rtl(&m, "γ1 β1 α1"), rtl(&m, "γ2 β2 α2")];
    let klein_gens: Vec<Walk> = ["b a b a", "d c d c", "f e f e", "f c a", "e b d"]
        .iter()
        .map(|s| rtl(&klein, s))
        .collect();
    let square = vec![rtl(&two_cycle(), "b a b a")];
    let backends: Vec<(&str, HomotopyOracle, Vec<Walk>)> = vec![
        ("trivial", HomotopyOracle::trivial(&m), markov_gens.clone()),
        (
            "generated",
            HomotopyOracle::generated(&m, markov_gens.clone()).unwrap(),
            markov_gens.clone(),
        ),
        (
            "generated (covering relators)",
            HomotopyOracle::generated(&klein, klein_gens.clone()).unwrap(),
            klein_gens.clone(),
        ),
        ("full", HomotopyOracle::full(&m), markov_gens.clone()),
        (
            "abelian",
            HomotopyOracle::abelian(&two_cycle(), square.clone()).unwrap(),
            square,
        ),
        (
            "cover",
            HomotopyOracle::cover(klein_cover()).unwrap(),
            klein_gens,
        ),
    ];
    let mut summary = Vec::new();
    for (name, oracle, relators) in &backends {
        let sampler = WalkSampler::new(oracle.quiver(), relators.clone());
        let (mut yes, mut no, mut unknown) = (0, 0, 0);
        for _ in 0..QUERIES {
            let w = sampler.sample(&mut rng);
            let answer = oracle.membership(&w).map_err(|e| format!("{name}: {e}"))?;
            ensure(verify(oracle, &w, &answer), || {
                format!("{name}: unsound answer for {}", w.display(oracle.quiver()))
            })?;
            match answer.verdict() {
                Verdict::In => yes += 1,
                Verdict::NotIn => no += 1,
                Verdict::Unknown => unknown += 1,
            }
        }
        summary.push(format!("{name} {yes}/{no}/{unknown}"));
    }
    // The covering and its relators present the same homotopy.
    let (generated, cover) = (&backends[2].1, &backends[5].1);
    let sampler = WalkSampler::new(&klein, backends[2].2.clone());
    for _ in 0..QUERIES {
        let w = sampler.sample(&mut rng);
        let a = generated.verdict(&w).map_err(|e| e.to_string())?;
        let b = cover.verdict(&w).map_err(|e| e.to_string())?;
        ensure(a == Verdict::Unknown || a == b, || {
            format!("relators and covering disagree on {}", w.display(&klein))
        })?;
    }
    Ok(format!(
        "{QUERIES} queries per backend, all verified (in/not in/unknown: {}); relators agree with the covering",
        summary.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("mutation of the oriented triangle", triangle_replay),
        ("Markov deletion table", markov_table),
        ("mutation is an involution", involutions),
        (
            "full and trivial homotopies follow the matrix rule",
            matrix_rule,
        ),
        ("fundamental group rank never drops", rank_monotonicity),
        ("orbit mutation compatibility", orbit_compatibility),
        (
            "surfaces: arcs, Markov torus, flip graphs, flips",
            surface_suite,
        ),
        ("2-complex topology", topology),
        ("cluster algebra suite", cluster_suite),
        ("membership oracle soundness", oracle_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
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
