//! Documents survive serialization, and library objects survive a trip
//! through their documents.

use quiver_homotopy::cluster::{parse_monomial, Seed, Semifield};
use quiver_homotopy::covering::named::{double_cover, klein_cover};
use quiver_homotopy::error::Error;
use quiver_homotopy::io::{
    arrow_set, parse, quiver_to_dot, quiver_to_graphml, to_json_string, CoveringJson, HomotopyJson,
    QuiverJson, SeedJson,
};
use quiver_homotopy::mutation::init_tracked;
use quiver_homotopy::oracle::{Homotopy, HomotopyOracle};
use quiver_homotopy::quiver::named::{markov, three_double_cycles, two_cycle};
use quiver_homotopy::surface::named::{
    polygon_spec, punctured_digon_spec, punctured_torus_spec, thrice_punctured_sphere_spec,
    twice_punctured_monogon_spec,
};
use quiver_homotopy::surface::{Color, Triangulation, TriangulationSpec};
use quiver_homotopy::walk::Walk;

fn round_trip<T>(doc: &T) -> T
where
    T: serde::Serialize + serde::de::DeserializeOwned,
{
    parse(&to_json_string(doc)).unwrap()
}

#[test]
fn quivers() {
    for q in [
        two_cycle(),
        markov(),
        three_double_cycles(),
        klein_cover().total().clone(),
    ] {
        let doc = QuiverJson::from_quiver(&q);
        assert_eq!(round_trip(&doc), doc);
        assert_eq!(doc.to_quiver().unwrap(), q);
    }
}

#[test]
fn homotopies() {
    let q = two_cycle();
    let w = Walk::right_to_left(&q, "b a b a").unwrap();
    let homotopies = [
        Homotopy::Trivial,
        Homotopy::Full,
        Homotopy::generated(vec![w.clone()]),
        Homotopy::Generated {
            generators: vec![w.clone()],
            search_bound: 7,
        },
        Homotopy::AbelianQuotient {
            generators: vec![w],
        },
        Homotopy::FiniteCover {
            covering: double_cover(),
        },
    ];
    for h in homotopies {
        let doc = HomotopyJson::from_homotopy(&h);
        assert_eq!(round_trip(&doc), doc);
        let back = doc.to_homotopy_at(&q, "").unwrap();
        assert_eq!(HomotopyJson::from_homotopy(&back), doc);
        assert_eq!(back.kind(), h.kind());
    }
}

#[test]
fn generators_are_checked_with_pointers() {
    let q = two_cycle();
    let doc: HomotopyJson = parse(
        r#"{"type": "generated", "generators": [[{"arrow": 0, "sign": 1}, {"arrow": 9, "sign": 1}]]}"#,
    )
    .unwrap();
    let e = doc.to_homotopy_at(&q, "/homotopy").unwrap_err();
    assert!(
        matches!(e, Error::Schema { ref pointer, .. } if pointer == "/homotopy/generators/0/1/arrow"),
        "{e:?}"
    );
    let e = parse::<HomotopyJson>(r#"{"type": "free"}"#).unwrap_err();
    assert!(
        matches!(e, Error::Schema { ref pointer, .. } if pointer == "/type"),
        "{e:?}"
    );
}

#[test]
fn coverings() {
    for c in [klein_cover(), double_cover()] {
        let doc = CoveringJson::from_covering(&c);
        assert_eq!(round_trip(&doc), doc);
        let back = doc.to_covering().unwrap();
        assert_eq!(back.total(), c.total());
        assert_eq!(back.base(), c.base());
        assert_eq!(back.vertex_map(), c.vertex_map());
        assert_eq!(back.arrow_map(), c.arrow_map());
        assert!(back.is_regular());
    }
}

#[test]
fn triangulations() {
    let specs = [
        punctured_digon_spec(Color::I),
        punctured_digon_spec(Color::II),
        punctured_torus_spec(Color::II),
        thrice_punctured_sphere_spec(),
        twice_punctured_monogon_spec(Color::I, Color::II),
        polygon_spec(6),
    ];
    for spec in specs {
        assert_eq!(round_trip(&spec), spec);
        let t = Triangulation::from_spec(&spec).unwrap();
        let back: TriangulationSpec = round_trip(&t.to_spec());
        assert!(Triangulation::from_spec(&back).unwrap().same_labelled(&t));
    }
}

#[test]
fn seeds() {
    let q = three_double_cycles();
    let tq = || init_tracked(&q, HomotopyOracle::cover(klein_cover()).unwrap()).unwrap();
    let gens = vec!["u".to_string(), "v".to_string()];
    let coeffs = ["u^2*v^-1", "1", "v"]
        .iter()
        .map(|c| parse_monomial(c, &gens).unwrap())
        .collect();
    let seeds = [
        Seed::principal(tq()),
        Seed::trivial(tq()),
        Seed::new(tq(), Semifield::Tropical { gens }, coeffs).unwrap(),
    ];
    for s in seeds {
        let doc = SeedJson::from_initial_seed(&s);
        assert_eq!(round_trip(&doc), doc);
        let back = doc.to_seed().unwrap();
        assert_eq!(back.cluster(), s.cluster());
        assert_eq!(back.coeffs(), s.coeffs());
        assert_eq!(back.semifield(), s.semifield());
        assert_eq!(SeedJson::from_initial_seed(&back), doc);
    }
}

#[test]
fn bad_seed_coefficients() {
    let doc = r#"{
        "quiver": {"vertices": 2, "arrows": [{"id": 0, "src": 0, "tgt": 1}]},
        "homotopy": {"type": "full"},
        "semifield": {"type": "tropical", "gens": ["u"]},
        "coeffs": ["u", "w^2"]
    }"#;
    let e = parse::<SeedJson>(doc).unwrap().to_seed().unwrap_err();
    assert!(
        matches!(e, Error::Schema { ref pointer, .. } if pointer == "/coeffs/1"),
        "{e:?}"
    );
}

#[test]
fn graph_exports() {
    let q = markov();
    let dot = quiver_to_dot(&q, "markov");
    assert!(dot.starts_with("digraph \"markov\" {\n"));
    assert_eq!(dot.matches(" -> ").count(), q.arrow_count());
    assert!(dot.contains("0 -> 1 [label=\"α1\"];"));
    let graphml = quiver_to_graphml(&q);
    assert_eq!(graphml.matches("<edge ").count(), 6);
    assert_eq!(arrow_set(&q).len(), 6);
}
