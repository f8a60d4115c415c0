//! Property tests. Oracles are independent of the code under test: shoelace
//! sums for integrals, matrix products for Smith forms, and re-derivation of
//! invariants from transformed polytopes.

mod common;

use std::sync::OnceLock;

use common::{polygon_with_interior_origin, positive_rat, shoelace_area, small_rat};
use proptest::prelude::*;
use sphfano::catalog::{build_catalog, Catalog, EmbeddingRecord};
use sphfano::enumerate::{canonical_form, EnumConfig};
use sphfano::geometry::integrate::{coordinate, one};
use sphfano::geometry::rat::rat;
use sphfano::geometry::{convex_hull, integrate, snf, MatZ, Rat};
use sphfano::invariants::compute;
use sphfano::registry::{build, Params, SymmetryGroup};
use sphfano::spherical::{identity, mat_mul};

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| build_catalog(&[1, 2, 3, 4], &[1, 2], &EnumConfig::default(), None).unwrap())
}

fn polytope_records() -> Vec<&'static EmbeddingRecord> {
    catalog().records.iter().filter(|r| r.polytope.is_some()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn dual_is_an_involution(p in polygon_with_interior_origin()) {
        let d = p.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn interval_dual_is_an_involution(a in positive_rat(), b in positive_rat()) {
        let p = convex_hull(&[vec![-a], vec![b]], 1).unwrap();
        prop_assert_eq!(p.dual().unwrap().dual().unwrap(), p);
    }

    #[test]
    fn area_matches_shoelace(p in polygon_with_interior_origin()) {
        prop_assert_eq!(integrate(&p, &one(2)), shoelace_area(&p));
    }

    #[test]
    fn first_moments_match_shoelace(p in polygon_with_interior_origin()) {
        // int x dA = (1/6) sum (x_i + x_{i+1}) (x_i y_{i+1} - x_{i+1} y_i), likewise for y
        let v = p.vertices();
        let n = v.len();
        let mut mx = rat(0, 1);
        let mut my = rat(0, 1);
        for i in 0..n {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            let c = &a[0] * &b[1] - &a[1] * &b[0];
            mx += (&a[0] + &b[0]) * &c;
            my += (&a[1] + &b[1]) * &c;
        }
        prop_assert_eq!(integrate(&p, &coordinate(2, 0)), mx / rat(6, 1));
        prop_assert_eq!(integrate(&p, &coordinate(2, 1)), my / rat(6, 1));
    }

    #[test]
    fn integral_is_translation_covariant(p in polygon_with_interior_origin(), tx in small_rat(3), ty in small_rat(3)) {
        // int_{P+t} 1 = int_P 1 and int_{P+t} x = int_P x + t_x area(P)
        let q = p.translate(&[tx.clone(), ty]).unwrap();
        let area = integrate(&p, &one(2));
        prop_assert_eq!(integrate(&q, &one(2)), area.clone());
        prop_assert_eq!(integrate(&q, &coordinate(2, 0)), integrate(&p, &coordinate(2, 0)) + tx * area);
    }

    #[test]
    fn smith_form_is_a_diagonal_factorisation(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-6i128..=6, 16)) {
        let data: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
        let a = MatZ::from_rows(&data);
        let (u, s, v) = snf(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), s.clone());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(s.get(i, j), 0);
                }
            }
        }
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 { prop_assert_eq!(w[1], 0); } else { prop_assert_eq!(w[1] % w[0], 0); }
        }
        // unimodularity: the Smith form of U and V is the identity
        prop_assert!(snf(&u).1.diagonal().iter().all(|&x| x == 1));
        prop_assert!(snf(&v).1.diagonal().iter().all(|&x| x == 1));
    }

    #[test]
    fn params_text_round_trips(kv in prop::collection::btree_map("[a-z][a-z0-9]{0,3}", -50i64..50, 0..4)) {
        let p = Params(kv);
        prop_assert_eq!(Params::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn invariants_and_canonical_form_are_symmetry_invariant(
        pick in any::<prop::sample::Index>(),
        word in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
    ) {
        let recs = polytope_records();
        let r = recs[pick.index(recs.len())];
        let data = build(&r.family, &r.params).unwrap();
        let group = SymmetryGroup::of(&data);
        let gens = group.generators(data.rank);
        let t = word.iter().fold(identity(data.rank), |acc, i| mat_mul(&gens[i.index(gens.len())], &acc));
        let canon = &r.polytope.as_ref().unwrap().polytope;
        let img = canon.transform(&t).unwrap();
        prop_assert!(data.check_reflexive(&img).unwrap().ok);
        let a = compute(&data, canon).unwrap();
        let b = compute(&data, &img).unwrap();
        prop_assert_eq!((a.pic, a.degree, a.fano_index, a.k_verdict.value), (b.pic, b.degree, b.fano_index, b.k_verdict.value));
        prop_assert_eq!(&canonical_form(&group, &img).unwrap().polytope, canon);
    }

    #[test]
    fn degree_is_a_positive_integer_everywhere(pick in any::<prop::sample::Index>()) {
        let recs = polytope_records();
        let r = recs[pick.index(recs.len())];
        let data = build(&r.family, &r.params).unwrap();
        let inv = compute(&data, &r.polytope.as_ref().unwrap().polytope).unwrap();
        let dim_fact: u64 = (1..=data.dim as u64).product();
        prop_assert!(inv.degree > 0);
        prop_assert_eq!(Rat::from_integer(inv.degree.into()), inv.volume * Rat::from_integer(dim_fact.into()));
        prop_assert!(inv.pic >= 1 && inv.fano_index >= 1);
    }
}

#[test]
fn catalog_records_are_distinct() {
    let recs = polytope_records();
    let keys: std::collections::BTreeSet<_> =
        recs.iter().map(|r| (r.dim, r.rank, &r.family, &r.params, &r.polytope)).collect();
    assert_eq!(keys.len(), recs.len());
    assert_eq!(recs.len(), 319);
}
