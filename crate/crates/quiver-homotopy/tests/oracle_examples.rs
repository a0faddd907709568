//! Membership oracles on small quivers, checked against independent answers.

use num_bigint::BigInt;
use quiver_homotopy::covering::build_regular_cover;
use quiver_homotopy::error::Error;
use quiver_homotopy::oracle::{
    abelianize, build_complex, exponent_two_quotient_check, fundamental_group_rank, spanning_tree,
    verify, Certificate, HomotopyOracle, Membership, Verdict, Witness,
};
use quiver_homotopy::quiver::named::{markov, oriented_triangle, path, two_cycle};
use quiver_homotopy::quiver::Quiver;
use quiver_homotopy::walk::{closed_reduced_walks, Step, Walk};

fn rtl(q: &Quiver, s: &str) -> Walk {
    Walk::right_to_left(q, s).unwrap()
}

/// `a: 1→2`, `b: 2→1`, `c: 2→3`, `d: 3→2`, `e: 1→3`, `f: 3→1`.
fn three_double_cycles() -> Quiver {
    Quiver::from_labelled(
        3,
        &[
            ("a", 0, 1),
            ("b", 1, 0),
            ("c", 1, 2),
            ("d", 2, 1),
            ("e", 0, 2),
            ("f", 2, 0),
        ],
    )
    .unwrap()
}

const KLEIN_RELATORS: [&str; 5] = ["b a b a", "d c d c", "f e f e", "f c a", "e b d"];

#[test]
fn spanning_forest_and_rank() {
    assert_eq!(spanning_tree(&path(4)).len(), 3);
    assert_eq!(fundamental_group_rank(&path(4)), vec![0]);
    assert_eq!(spanning_tree(&two_cycle()), vec![0]);
    assert_eq!(fundamental_group_rank(&two_cycle()), vec![1]);
    assert_eq!(spanning_tree(&markov()).len(), 2);
    assert_eq!(fundamental_group_rank(&markov()), vec![4]);
    let two_pieces = Quiver::from_pairs(4, &[(0, 1), (1, 0), (2, 3)]).unwrap();
    assert_eq!(fundamental_group_rank(&two_pieces), vec![1, 0]);
}

#[test]
fn trivial_oracle_rejects_a_triangle() {
    let q = oriented_triangle();
    let o = HomotopyOracle::trivial(&q);
    let w = rtl(&q, "a b c");
    let m = o.membership(&w).unwrap();
    assert!(matches!(
        m,
        Membership::NotIn(Certificate::NonEmptyReducedWord { .. })
    ));
    assert!(verify(&o, &w, &m));
    let back = w.concat(&w.inverse()).unwrap();
    assert_eq!(o.verdict(&back).unwrap(), Verdict::In);
}

#[test]
fn full_oracle_accepts_everything() {
    let q = markov();
    let o = HomotopyOracle::full(&q);
    for w in closed_reduced_walks(&q, 0, 4) {
        assert_eq!(o.membership(&w).unwrap(), Membership::In(Witness::Full));
    }
}

#[test]
fn open_walks_are_refused() {
    let q = path(2);
    let o = HomotopyOracle::trivial(&q);
    let w = Walk::path_ids(&q, &[0]).unwrap();
    assert!(matches!(o.membership(&w), Err(Error::NotClosed)));
}

#[test]
fn markov_generated_homotopy() {
    let q = markov();
    let gens = vec![rtl(&q, "γ1 β1 α1"), rtl(&q, "γ2 β1 α1")];
    let o = HomotopyOracle::generated(&q, gens).unwrap();

    let outside = rtl(&q, "γ2 β2 α2");
    let m = o.membership(&outside).unwrap();
    assert_eq!(m.verdict(), Verdict::NotIn);
    assert!(verify(&o, &outside, &m));

    let inside = rtl(&q, "γ1 β1 α1");
    let m = o.membership(&inside).unwrap();
    assert!(matches!(m, Membership::In(Witness::Decomposition(_))));
    assert!(verify(&o, &inside, &m));

    // γ2γ1⁻¹ lies in the homotopy, so γ1β1α2 and γ2β1α2 are equivalent.
    let diff = rtl(&q, "γ2 β1 α2")
        .concat(&rtl(&q, "γ1 β1 α2").inverse())
        .unwrap()
        .reduced();
    let m = o.membership(&diff).unwrap();
    assert_eq!(m.verdict(), Verdict::In);
    assert!(verify(&o, &diff, &m));
}

#[test]
fn abelian_obstruction_matches_exact_check() {
    let cases: Vec<(Quiver, Vec<&str>, &str)> = vec![
        (two_cycle(), vec!["b a b a"], "b a"),
        (three_double_cycles(), KLEIN_RELATORS.to_vec(), "b a"),
        (three_double_cycles(), KLEIN_RELATORS.to_vec(), "d c"),
    ];
    for (q, rels, query) in cases {
        let gens: Vec<Walk> = rels.iter().map(|r| rtl(&q, r)).collect();
        let o = HomotopyOracle::generated(&q, gens.clone()).unwrap();
        let outside = rtl(&q, query);
        let Membership::NotIn(Certificate::AbelianObstruction {
            functional,
            modulus,
        }) = o.membership(&outside).unwrap()
        else {
            panic!("expected an abelian obstruction for {query}");
        };
        let dot = |v: &[BigInt]| -> BigInt { v.iter().zip(&functional).map(|(x, y)| x * y).sum() };
        let zero = BigInt::from(0);
        for g in &gens {
            let r = dot(&abelianize(&q, g));
            assert!(if modulus == zero {
                r == zero
            } else {
                &r % &modulus == zero
            });
        }
        let r = dot(&abelianize(&q, &outside));
        assert!(if modulus == zero {
            r != zero
        } else {
            &r % &modulus != zero
        });
    }
}

#[test]
fn double_cover_of_the_two_cycle() {
    let q = two_cycle();
    let cover = build_regular_cover(&q, &[vec![1, 0]]).unwrap();
    assert_eq!(cover.total().vertex_count(), 4);
    let o = HomotopyOracle::cover(cover).unwrap();
    let ab = rtl(&q, "b a");
    let m = o.membership(&ab).unwrap();
    assert!(matches!(
        m,
        Membership::NotIn(Certificate::NonClosedLift { .. })
    ));
    assert!(verify(&o, &ab, &m));
    let sq = ab.power(2).unwrap();
    let m = o.membership(&sq).unwrap();
    assert!(matches!(m, Membership::In(Witness::ClosedLift { .. })));
    assert!(verify(&o, &sq, &m));
}

#[test]
fn abelian_oracle() {
    let q = two_cycle();
    let ab = rtl(&q, "b a");
    let o = HomotopyOracle::abelian(&q, vec![ab.power(2).unwrap()]).unwrap();
    for n in 0..6 {
        let w = ab.power(n).unwrap();
        let m = o.membership(&w).unwrap();
        let expected = if n % 2 == 0 {
            Verdict::In
        } else {
            Verdict::NotIn
        };
        assert_eq!(m.verdict(), expected, "power {n}");
        assert!(verify(&o, &w, &m));
    }
}

#[test]
fn cover_and_generated_oracles_agree_on_short_cycles() {
    let cases: Vec<(Quiver, Vec<&str>, Vec<Vec<usize>>)> = vec![
        (two_cycle(), vec!["b a b a"], vec![vec![1, 0]]),
        (
            three_double_cycles(),
            KLEIN_RELATORS.to_vec(),
            vec![
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
            ],
        ),
    ];
    for (q, rels, perms) in cases {
        let gens: Vec<Walk> = rels.iter().map(|r| rtl(&q, r)).collect();
        let generated = HomotopyOracle::generated(&q, gens.clone()).unwrap();
        let cover = HomotopyOracle::cover(build_regular_cover(&q, &perms).unwrap()).unwrap();
        for g in &gens {
            assert_eq!(cover.verdict(g).unwrap(), Verdict::In);
        }
        let mut decided = 0;
        let mut total = 0;
        for v in 0..q.vertex_count() {
            for w in closed_reduced_walks(&q, v, 6) {
                total += 1;
                let c = cover.membership(&w).unwrap();
                assert!(verify(&cover, &w, &c));
                let g = generated.membership(&w).unwrap();
                assert!(verify(&generated, &w, &g));
                if g.verdict() != Verdict::Unknown {
                    decided += 1;
                    assert_eq!(g.verdict(), c.verdict(), "{}", w.display(&q));
                }
            }
        }
        assert_eq!(decided, total);
    }
}

#[test]
fn exponent_two_quotients() {
    let q = two_cycle();
    assert_eq!(
        exponent_two_quotient_check(&HomotopyOracle::full(&q)),
        Some(true)
    );
    assert_eq!(
        exponent_two_quotient_check(&HomotopyOracle::trivial(&q)),
        Some(false)
    );
    let double = HomotopyOracle::cover(build_regular_cover(&q, &[vec![1, 0]]).unwrap()).unwrap();
    assert_eq!(exponent_two_quotient_check(&double), Some(true));
    let triple = HomotopyOracle::cover(build_regular_cover(&q, &[vec![1, 2, 0]]).unwrap()).unwrap();
    assert_eq!(exponent_two_quotient_check(&triple), Some(false));
    assert_eq!(
        exponent_two_quotient_check(&HomotopyOracle::trivial(&path(3))),
        Some(true)
    );
}

#[test]
fn two_complexes_of_the_two_cycle() {
    let q = two_cycle();
    let ab = rtl(&q, "b a");

    let graph = build_complex(&q, &[]).unwrap();
    assert_eq!(graph.euler_characteristic(), 0);
    assert_eq!(graph.fundamental_group()[0].free_rank(), Some(1));

    let disk = build_complex(&q, std::slice::from_ref(&ab)).unwrap();
    assert_eq!(disk.euler_characteristic(), 1);
    let pi = &disk.fundamental_group()[0];
    assert_eq!(pi.free_rank(), Some(0));
    assert!(pi.torsion.is_empty());

    let projective = build_complex(&q, &[ab.power(2).unwrap()]).unwrap();
    assert_eq!(projective.euler_characteristic(), 1);
    let pi = &projective.fundamental_group()[0];
    assert_eq!(pi.generators, 1);
    assert_eq!(pi.torsion, vec![BigInt::from(2)]);
    assert_eq!(pi.betti_1, 0);
}

#[test]
fn complexes_reject_open_faces() {
    let q = path(2);
    let w = Walk::new(&q, 0, vec![Step::forward(0)]).unwrap();
    assert!(build_complex(&q, &[w]).is_err());
}

#[test]
fn torus_complex() {
    // One vertex is impossible without loops, so take the square grid
    // quotient with two vertices and four arrows glued along two squares.
    let q =
        Quiver::from_labelled(2, &[("x", 0, 1), ("y", 1, 0), ("u", 0, 1), ("v", 1, 0)]).unwrap();
    let faces = vec![rtl(&q, "v u y x"), rtl(&q, "y u v x")];
    let c = build_complex(&q, &faces).unwrap();
    assert_eq!(c.euler_characteristic(), 0);
    let pi = &c.fundamental_group()[0];
    assert_eq!(pi.betti_1, 2);
    assert!(pi.torsion.is_empty());
}
