//! Worked examples recomputed from scratch and compared with golden files.
//!
//! Each example produces a JSON value in which quivers appear as sorted
//! `[label, source, target]` lists, so the comparison with the golden file
//! does not depend on arrow ids or arrow order.

use std::path::Path;

use quiver_homotopy::cluster::{f_polynomial, g_vector, Seed};
use quiver_homotopy::covering::named::{hexagon_cover, klein_cover};
use quiver_homotopy::covering::{check_orbit_compatibility_sequence, is_k_mutable, orbit_mutate};
use quiver_homotopy::error::Result;
use quiver_homotopy::io::arrow_set;
use quiver_homotopy::mutation::{init_tracked, TrackedQuiverWithHomotopy};
use quiver_homotopy::oracle::HomotopyOracle;
use quiver_homotopy::quiver::named::{
    markov, oriented_triangle, path, three_double_cycles, two_cycle,
};
use quiver_homotopy::quiver::{quiver_equal_fixed_vertices, Quiver};
use quiver_homotopy::surface::named::{punctured_digon, punctured_torus, thrice_punctured_sphere};
use quiver_homotopy::surface::{
    build_x, flip_graph, pi1_report, surface_quiver, verify_flip_mutation, BoundaryMode, Color,
    Triangulation,
};
use quiver_homotopy::walk::Walk;
use serde_json::{json, Value};

use crate::{emit, failure, write, CliResult};

type Example = fn() -> Result<Value>;

const EXAMPLES: &[(&str, Example, &str)] = &[
    ("fig1", fig1, include_str!("../golden/fig1.json")),
    (
        "markov-homotopies",
        markov_homotopies,
        include_str!("../golden/markov-homotopies.json"),
    ),
    (
        "klein-cover",
        klein,
        include_str!("../golden/klein-cover.json"),
    ),
    (
        "hexagon-cover",
        hexagon,
        include_str!("../golden/hexagon-cover.json"),
    ),
    (
        "torus-markov",
        torus_markov,
        include_str!("../golden/torus-markov.json"),
    ),
    (
        "digon-flip-graphs",
        digon_flip_graphs,
        include_str!("../golden/digon-flip-graphs.json"),
    ),
    (
        "surface-flips",
        surface_flips,
        include_str!("../golden/surface-flips.json"),
    ),
    (
        "surface-topology",
        surface_topology,
        include_str!("../golden/surface-topology.json"),
    ),
    (
        "cluster-rank-two",
        cluster_rank_two,
        include_str!("../golden/cluster-rank-two.json"),
    ),
];

pub fn names_with_all() -> Vec<&'static str> {
    let mut v: Vec<&str> = EXAMPLES.iter().map(|e| e.0).collect();
    v.push("all");
    v
}

pub fn run(target: &str, bless: Option<&Path>) -> CliResult {
    let mut mismatches = Vec::new();
    for (name, example, golden) in EXAMPLES {
        if target != "all" && target != *name {
            continue;
        }
        let value = example()?;
        let text = serde_json::to_string_pretty(&value).expect("values serialize") + "\n";
        if let Some(dir) = bless {
            write(&dir.join(format!("{name}.json")), &text)?;
            continue;
        }
        let expected: Value = serde_json::from_str(golden)
            .map_err(|e| failure("Golden", format!("golden file for {name}: {e}")))?;
        let matches = expected == value;
        emit(
            None,
            &serde_json::to_string_pretty(&json!({
                "example": name,
                "matches_golden": matches,
                "result": value,
            }))
            .expect("values serialize"),
        )?;
        if !matches {
            mismatches.push(*name);
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(failure(
            "GoldenMismatch",
            format!(
                "results differ from the golden files: {}",
                mismatches.join(", ")
            ),
        ))
    }
}

fn arrows(q: &Quiver) -> Value {
    json!(arrow_set(q))
}

fn generated(q: &Quiver, words: &[&str]) -> Result<TrackedQuiverWithHomotopy> {
    let gens = words
        .iter()
        .map(|w| Walk::right_to_left(q, w))
        .collect::<Result<Vec<_>>>()?;
    init_tracked(q, HomotopyOracle::generated(q, gens)?)
}

/// The oriented triangle mutated at its middle vertex, with the trivial
/// homotopy and with the homotopy generated by the triangle.
fn fig1() -> Result<Value> {
    let q = oriented_triangle();
    let trivial = init_tracked(&q, HomotopyOracle::trivial(&q))?.mutate(1)?;
    let with_cycle = generated(&q, &["a b c"])?.mutate(1)?;
    Ok(json!({
        "trivial": arrows(trivial.current()),
        "cycle": arrows(with_cycle.current()),
    }))
}

/// Deleted 2-cycles per mutation direction of the Markov quiver, for four
/// homotopies.
fn markov_homotopies() -> Result<Value> {
    let q = markov();
    let cases: [(&str, &[&str]); 4] = [
        ("H1", &[]),
        ("H2", &["γ1 β1 α1", "γ2 β1 α1"]),
        ("H3", &["γ1 β1 α1", "γ2 β1 α2"]),
        ("H4", &["γ1 β1 α1", "γ2 β2 α2"]),
    ];
    let mut rows = serde_json::Map::new();
    for (name, gens) in cases {
        let t = generated(&q, gens)?;
        let mut counts = Vec::new();
        for k in 0..3 {
            counts.push(t.mutate_with_log(k)?.1.len());
        }
        rows.insert(name.into(), json!(counts));
    }
    Ok(Value::Object(rows))
}

/// Orbit mutations of the Klein four-group cover of three 2-cycles agree
/// with mutation of the induced homotopy along all sequences of length at
/// most three.
fn klein() -> Result<Value> {
    let c = klein_cover();
    let t = init_tracked(c.base(), HomotopyOracle::cover(c.clone())?)?;
    let mut sequences = 0;
    let mut agree = 0;
    let mut frontier = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for s in &frontier {
            for k in 0..3 {
                let mut s2: Vec<usize> = s.clone();
                s2.push(k);
                sequences += 1;
                if check_orbit_compatibility_sequence(&c, &s2, &t)? {
                    agree += 1;
                }
                next.push(s2);
            }
        }
        frontier = next;
    }
    let mutable: Vec<bool> = (0..3).map(|k| is_k_mutable(&c, k)).collect::<Result<_>>()?;
    Ok(json!({
        "total_vertices": c.total().vertex_count(),
        "total_arrows": c.total().arrow_count(),
        "mutable": mutable,
        "sequences": sequences,
        "compatible": agree,
    }))
}

/// The hexagon over the 2-cycle is not mutable: orbit mutation creates a loop.
fn hexagon() -> Result<Value> {
    let c = hexagon_cover();
    let mutable: Vec<bool> = (0..2).map(|k| is_k_mutable(&c, k)).collect::<Result<_>>()?;
    let m = orbit_mutate(&c, 0)?;
    let loops: Vec<usize> = m
        .base()
        .arrows()
        .iter()
        .filter(|a| a.src == a.tgt)
        .map(|a| a.src)
        .collect();
    Ok(json!({
        "mutable": mutable,
        "weakly_admissible_after_mutation": m.is_weakly_admissible(),
        "loops_at": loops,
    }))
}

/// The quiver of the once-punctured torus is the Markov quiver.
fn torus_markov() -> Result<Value> {
    let mut out = serde_json::Map::new();
    for color in [Color::I, Color::II] {
        let sq = surface_quiver(&punctured_torus(color), BoundaryMode::Omit)?;
        out.insert(
            format!("colour {color}"),
            json!({
                "adjacency": sq.quiver.adjacency_matrix().0,
                "is_markov": quiver_equal_fixed_vertices(&sq.quiver, &markov()),
                "generator_lengths": sq.generators.iter().map(Walk::len).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(Value::Object(out))
}

fn graph_summary(t: &Triangulation) -> Result<Value> {
    let g = flip_graph(t, 200)?;
    Ok(json!({
        "nodes": g.nodes.len(),
        "edges": g.neighbour_pairs().len(),
        "is_cycle": g.is_cycle(),
        "complete": g.complete,
    }))
}

/// Flip graphs of the once-punctured digon for both colours.
fn digon_flip_graphs() -> Result<Value> {
    Ok(json!({
        "colour I": graph_summary(&punctured_digon(Color::I))?,
        "colour II": graph_summary(&punctured_digon(Color::II))?,
    }))
}

fn required_surfaces() -> Vec<(&'static str, Triangulation)> {
    vec![
        ("digon I", punctured_digon(Color::I)),
        ("digon II", punctured_digon(Color::II)),
        ("torus I", punctured_torus(Color::I)),
        ("torus II", punctured_torus(Color::II)),
        ("sphere II II II", thrice_punctured_sphere()),
    ]
}

/// Flips compared with mutations at every arc of every triangulation.
fn surface_flips() -> Result<Value> {
    let mut out = serde_json::Map::new();
    for (name, t) in required_surfaces() {
        let g = flip_graph(&t, 200)?;
        let (mut flips, mut ok) = (0, 0);
        for node in &g.nodes {
            for k in 0..node.arc_labels().len() {
                flips += 1;
                if verify_flip_mutation(node, k)?.ok() {
                    ok += 1;
                }
            }
        }
        out.insert(name.into(), json!({"flips": flips, "ok": ok}));
    }
    Ok(Value::Object(out))
}

/// Euler characteristic of the 2-complex over each flip graph and the
/// rank of its fundamental group where it is free.
fn surface_topology() -> Result<Value> {
    let mut out = serde_json::Map::new();
    for (name, t) in required_surfaces() {
        let g = flip_graph(&t, 200)?;
        let mut chis = std::collections::BTreeSet::new();
        let mut ranks = std::collections::BTreeSet::new();
        for node in &g.nodes {
            let x = build_x(node)?;
            chis.insert(x.euler_characteristic());
            ranks.insert(pi1_report(&x).rank_if_free);
        }
        out.insert(
            name.into(),
            json!({
                "expected_euler_characteristic": t.surface().euler_characteristic_without_ii(),
                "euler_characteristics": chis,
                "free_ranks": ranks,
            }),
        );
    }
    Ok(Value::Object(out))
}

/// Rank-two cluster variables: A2 with trivial and principal coefficients,
/// and the 2-cycle with the homotopy generated by `(ab)²`.
fn cluster_rank_two() -> Result<Value> {
    let a2 = path(2);
    let a2_full = || init_tracked(&a2, HomotopyOracle::full(&a2));
    let trivial = Seed::trivial(a2_full()?);
    let mut pentagon = Vec::new();
    let mut s = trivial.clone();
    for k in [0, 1, 0, 1, 0] {
        s = s.mutate(k)?;
        pentagon.push(s.cluster()[k].display(&s.names()));
    }
    let principal = Seed::principal(a2_full()?);
    let q = two_cycle();
    let cycle = || -> Result<TrackedQuiverWithHomotopy> {
        let w = Walk::right_to_left(&q, "b a b a")?;
        init_tracked(&q, HomotopyOracle::generated(&q, vec![w])?)
    };
    let two_trivial = Seed::trivial(cycle()?).mutate(0)?;
    let two_principal = Seed::principal(cycle()?);
    let show = |s: &Seed, i: usize| s.cluster()[i].display(&s.names());
    let names = principal.names();
    let klein = Seed::trivial(init_tracked(
        &three_double_cycles(),
        HomotopyOracle::cover(klein_cover())?,
    )?);
    let klein_first = (0..3)
        .map(|k| Ok(show(&klein.mutate(k)?, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "a2 pentagon": pentagon,
        "a2 principal": show(&principal.mutate(0)?, 0),
        "a2 g-vector": g_vector(&principal, &[0], 0)?,
        "a2 F-polynomial": f_polynomial(&principal, &[0], 0)?.display(&names),
        "2-cycle trivial": show(&two_trivial, 0),
        "2-cycle principal": show(&two_principal.mutate(0)?, 0),
        "2-cycle g-vector": g_vector(&two_principal, &[0], 0)?,
        "2-cycle F-polynomial": f_polynomial(&two_principal, &[0], 0)?.display(&names),
        "three 2-cycles trivial": klein_first,
    }))
}
