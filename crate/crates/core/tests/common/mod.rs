#![allow(dead_code)]

use proptest::prelude::*;
use sphfano::geometry::rat::rat;
use sphfano::geometry::{convex_hull, Rat, RationalPolytope};

pub fn small_rat(max_num: i64) -> impl Strategy<Value = Rat> {
    (-max_num..=max_num, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=12, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Polygons with the origin strictly inside: a point on each half-axis plus
/// up to four arbitrary points.
pub fn polygon_with_interior_origin() -> impl Strategy<Value = RationalPolytope> {
    (
        [positive_rat(), positive_rat(), positive_rat(), positive_rat()],
        prop::collection::vec((small_rat(8), small_rat(8)), 0..=4),
    )
        .prop_map(|([a, b, c, d], extra)| {
            let z = rat(0, 1);
            let mut pts = vec![vec![a, z.clone()], vec![z.clone(), b], vec![-c, z.clone()], vec![z, -d]];
            pts.extend(extra.into_iter().map(|(x, y)| vec![x, y]));
            convex_hull(&pts, 2).expect("hull of a full-dimensional point set")
        })
}

/// Shoelace area, an oracle for integration of the constant polynomial.
pub fn shoelace_area(p: &RationalPolytope) -> Rat {
    let v = p.vertices();
    let n = v.len();
    let mut s = rat(0, 1);
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s / rat(2, 1)
}
