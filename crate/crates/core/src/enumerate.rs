//! Enumeration of locally factorial reflexive polytopes of a fixed spherical
//! space, up to its symmetry group.
//!
//! Rank 1 checks every pair of candidate endpoints. Rank 2 runs a depth-first
//! search over convex polygons whose vertices are candidate points (integer
//! points of the closed valuation cone and the color points `rho/m`), pruning
//! edge by edge with the local conditions. The search runs on integer
//! coordinates scaled by the lcm of the color multiplicities, so every test in
//! the inner loop is a sign of an `i64` cross product. Every accepted polygon
//! is re-checked with the exact rational checker.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rat::{int, is_integral_vec, primitive_on_ray, sub_q, to_int_vec};
use crate::geometry::{convex_hull, is_lattice_basis, Rat, RationalPolytope, VecQ};
use crate::registry::{build, Params, SymmetryGroup};
use crate::spherical::{mat_mul, CombinatorialData, ConePosition};

/// Search limits. Every accepted polytope must sit strictly inside them, or
/// the enumeration is reported as possibly truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    /// Integer candidates are taken from `[-box_bound, box_bound]^r`.
    pub box_bound: i64,
    pub max_vertices: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { box_bound: 5, max_vertices: 10 }
    }
}

impl EnumConfig {
    /// The default, with `box_bound` overridden by `SPHFANO_BOX` when set.
    pub fn from_env() -> Result<Self> {
        let mut c = Self::default();
        if let Ok(v) = std::env::var("SPHFANO_BOX") {
            c.box_bound = v
                .trim()
                .parse()
                .ok()
                .filter(|b: &i64| *b >= 1)
                .ok_or_else(|| Error::Parse(format!("SPHFANO_BOX must be a positive integer, got `{v}`")))?;
        }
        Ok(c)
    }
}

/// A representative in canonical form together with the order of its
/// stabilizer in the symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalPolytope {
    pub polytope: RationalPolytope,
    pub stabilizer_order: usize,
}

/// Builds the family member and enumerates it under its computed group.
pub fn enumerate_family(id: &str, params: &Params, cfg: &EnumConfig) -> Result<Vec<CanonicalPolytope>> {
    let data = build(id, params)?;
    let group = SymmetryGroup::of(&data);
    enumerate(&data, &group, cfg)
}

/// All reflexive locally factorial polytopes up to `group`, sorted.
pub fn enumerate(data: &CombinatorialData, group: &SymmetryGroup, cfg: &EnumConfig) -> Result<Vec<CanonicalPolytope>> {
    let raw = enumerate_raw(data, cfg)?;
    let reps: Vec<CanonicalPolytope> = raw.par_iter().map(|p| canonical_form(group, p)).collect::<Result<Vec<_>>>()?;
    let mut seen: BTreeMap<RationalPolytope, usize> = BTreeMap::new();
    for c in reps {
        seen.entry(c.polytope).or_insert(c.stabilizer_order);
    }
    let out: Vec<CanonicalPolytope> =
        seen.into_iter().map(|(polytope, stabilizer_order)| CanonicalPolytope { polytope, stabilizer_order }).collect();
    certify(&out, cfg)?;
    Ok(out)
}

/// Fails with `BoundTooTight` when an accepted representative touches the
/// limits, since then a larger box might reveal more classes.
fn certify(reps: &[CanonicalPolytope], cfg: &EnumConfig) -> Result<()> {
    let limit = int(cfg.box_bound - 1);
    for c in reps {
        let p = &c.polytope;
        if p.max_abs_coord() > limit || (p.rank() == 2 && p.len() >= cfg.max_vertices) {
            return Err(Error::BoundTooTight(format!(
                "representative {} reaches box {} or {} vertices",
                p.to_literal(),
                cfg.box_bound,
                cfg.max_vertices
            )));
        }
    }
    Ok(())
}

/// Every reflexive locally factorial polytope with vertices among the
/// candidates of the box, without any identification; sorted.
pub fn enumerate_raw(data: &CombinatorialData, cfg: &EnumConfig) -> Result<Vec<RationalPolytope>> {
    let mut out = match data.rank {
        1 => rank1_raw(data, cfg)?,
        2 => Search::new(data, cfg).run()?,
        r => return Err(Error::RankMismatch { expected: 2, got: r }),
    };
    out.sort();
    Ok(out)
}

/// Candidate vertices: nonzero integer points of the box in the closed
/// valuation cone, then the nonzero color points; deduplicated and sorted.
pub fn candidates(data: &CombinatorialData, cfg: &EnumConfig) -> Vec<VecQ> {
    let b = cfg.box_bound;
    let r = data.rank;
    let mut pts: Vec<VecQ> = Vec::new();
    let mut idx = vec![-b; r];
    loop {
        if idx.iter().any(|&x| x != 0) {
            let v: VecQ = idx.iter().map(|&x| int(x)).collect();
            if data.valuation_cone_position(&v) != ConePosition::Outside {
                pts.push(v);
            }
        }
        let mut k = 0;
        while k < r && idx[k] == b {
            idx[k] = -b;
            k += 1;
        }
        if k == r {
            break;
        }
        idx[k] += 1;
    }
    for c in data.color_points() {
        if c.iter().any(|x| !x.is_zero()) {
            pts.push(c);
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

fn rank1_raw(data: &CombinatorialData, cfg: &EnumConfig) -> Result<Vec<RationalPolytope>> {
    let cands = candidates(data, cfg);
    let (neg, pos): (Vec<&VecQ>, Vec<&VecQ>) = cands.iter().partition(|v| v[0].is_negative());
    let mut out = Vec::new();
    for lo in &neg {
        for hi in &pos {
            let p = RationalPolytope::from_vertices(1, vec![(*lo).clone(), (*hi).clone()])?;
            if data.check_reflexive(&p)?.ok {
                out.push(p);
            }
        }
    }
    Ok(out)
}

type Pt = [i64; 2];

fn cross(a: Pt, b: Pt) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1]]
}

/// `scale * v` as integers; `v` must have denominators dividing `scale`.
fn scaled(v: &[Rat], scale: i64) -> Pt {
    let f = |x: &Rat| (x * int(scale)).to_integer().to_i64().expect("candidate coordinate overflows i64");
    [f(&v[0]), f(&v[1])]
}

struct Search<'a> {
    data: &'a CombinatorialData,
    max_vertices: usize,
    cands: Vec<VecQ>,
    pts: Vec<Pt>,
    /// `edge_ok[i][j]`: the directed edge `i -> j` can be a facet.
    edge_ok: Vec<Vec<bool>>,
}

impl<'a> Search<'a> {
    fn new(data: &'a CombinatorialData, cfg: &EnumConfig) -> Self {
        let scale = data.colors.iter().fold(1i64, |acc, c| acc.lcm(&(c.m as i64)));
        let cands = candidates(data, cfg);
        let pts: Vec<Pt> = cands.iter().map(|v| scaled(v, scale)).collect();
        let color_pts: Vec<Pt> = data.color_points().iter().map(|v| scaled(v, scale)).collect();
        let n = cands.len();
        let edge_ok: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| i != j && edge_admissible(data, &cands, &pts, &color_pts, i, j)).collect())
            .collect();
        Search { data, max_vertices: cfg.max_vertices, cands, pts, edge_ok }
    }

    fn run(&self) -> Result<Vec<RationalPolytope>> {
        let found: Vec<Vec<Vec<usize>>> = (0..self.pts.len())
            .into_par_iter()
            .map(|s| {
                let mut acc = Vec::new();
                let mut path = vec![s];
                self.extend(&mut path, &mut acc);
                acc
            })
            .collect();
        let mut out = Vec::new();
        for path in found.into_iter().flatten() {
            let verts: Vec<VecQ> = path.iter().map(|&i| self.cands[i].clone()).collect();
            let p = convex_hull(&verts, 2)?;
            debug_assert_eq!(p.len(), path.len(), "search produced a non-convex vertex list");
            if p.len() == path.len() && self.data.check_reflexive(&p)?.ok {
                out.push(p);
            }
        }
        Ok(out)
    }

    fn extend(&self, path: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let cur = *path.last().unwrap();
        let (ps, pc) = (self.pts[s], self.pts[cur]);
        let prev = (path.len() >= 2).then(|| self.pts[path[path.len() - 2]]);
        if let Some(pp) = prev.filter(|_| path.len() >= 3) {
            let p1 = self.pts[path[1]];
            if self.edge_ok[cur][s] && cross(sub(pc, pp), sub(ps, pc)) > 0 && cross(sub(ps, pc), sub(p1, ps)) > 0 {
                acc.push(path.clone());
            }
        }
        if path.len() == self.max_vertices {
            return;
        }
        for w in s + 1..self.pts.len() {
            if !self.edge_ok[cur][w] {
                continue;
            }
            let pw = self.pts[w];
            if let Some(pp) = prev {
                // left turn at cur, increasing angle around s, s left of cur->w
                if cross(sub(pc, pp), sub(pw, pc)) <= 0
                    || cross(sub(pc, ps), sub(pw, ps)) <= 0
                    || cross(sub(pw, pc), sub(ps, pc)) <= 0
                {
                    continue;
                }
            }
            path.push(w);
            self.extend(path, acc);
            path.pop();
        }
    }
}

/// Local test for the directed edge `i -> j` as a facet of a counterclockwise
/// polygon: the origin strictly on the inner side, every color point weakly on
/// it, and when the cone over the edge meets the interior of the valuation
/// cone, the color and basis conditions for that facet.
fn edge_admissible(data: &CombinatorialData, cands: &[VecQ], pts: &[Pt], color_pts: &[Pt], i: usize, j: usize) -> bool {
    let (a, b) = (pts[i], pts[j]);
    if cross(a, b) <= 0 {
        return false;
    }
    let d = sub(b, a);
    if color_pts.iter().any(|&c| cross(d, sub(c, a)) < 0) {
        return false;
    }
    if !data.cone_meets_interior(&cands[i], Some(&cands[j])) {
        return true;
    }
    // colors on the closed segment
    let on_edge: Vec<usize> = (0..color_pts.len())
        .filter(|&k| {
            let c = color_pts[k];
            cross(d, sub(c, a)) == 0 && {
                let t = (c[0] - a[0]) * d[0] + (c[1] - a[1]) * d[1];
                t >= 0 && t <= d[0] * d[0] + d[1] * d[1]
            }
        })
        .collect();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for (x, &k) in on_edge.iter().enumerate() {
        let c = color_pts[k];
        if c != a && c != b {
            return false;
        }
        if on_edge[x + 1..].iter().any(|&l| data.colors[l].rho == data.colors[k].rho) {
            return false;
        }
        gens.push(data.colors[k].rho.clone());
    }
    for (v, p) in [(&cands[i], a), (&cands[j], b)] {
        if color_pts.contains(&p) {
            continue;
        }
        if !is_integral_vec(v) {
            return false;
        }
        gens.push(to_int_vec(v));
    }
    is_lattice_basis(&gens)
}

// ---------------------------------------------------------------------------
// canonical forms

/// The lexicographically least image of `p` under the group, with the number
/// of group elements realizing it (the stabilizer order).
pub fn canonical_form(group: &SymmetryGroup, p: &RationalPolytope) -> Result<CanonicalPolytope> {
    let images: Vec<RationalPolytope> = match group {
        SymmetryGroup::Trivial => vec![p.clone()],
        SymmetryGroup::FiniteList { elements } => {
            elements.iter().map(|e| p.transform(&e.matrix)).collect::<Result<_>>()?
        }
        SymmetryGroup::FullUnimodular if p.rank() == 1 => vec![p.clone(), p.transform(&[vec![-1]])?],
        SymmetryGroup::FullUnimodular => full_unimodular_images(p)?,
        SymmetryGroup::ShearClass { reflection, .. } => shear_images(p, *reflection)?,
    };
    let best = images.iter().min().expect("group has an element").clone();
    let stabilizer_order = images.iter().filter(|q| **q == best).count();
    Ok(CanonicalPolytope { polytope: best, stabilizer_order })
}

fn floor_i64(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("shear parameter overflows i64")
}

fn shear(k: i64) -> Vec<Vec<i64>> {
    vec![vec![1, k], vec![0, 1]]
}

/// One normalized image per choice of signs `diag(e, d)`: the top vertex
/// (largest `y`, then smallest `x`) is sheared into `0 <= x < y`.
fn shear_images(p: &RationalPolytope, reflection: bool) -> Result<Vec<RationalPolytope>> {
    let es: &[i64] = if reflection { &[1, -1] } else { &[1] };
    let mut out = Vec::new();
    for &e in es {
        for d in [1, -1] {
            let t = vec![vec![e, 0], vec![0, d]];
            let q = p.transform(&t)?;
            let top =
                q.vertices().iter().max_by(|u, v| u[1].cmp(&v[1]).then(v[0].cmp(&u[0]))).expect("nonempty polygon");
            let k = -floor_i64(&(&top[0] / &top[1]));
            out.push(p.transform(&mat_mul(&shear(k), &t))?);
        }
    }
    Ok(out)
}

/// One normalized image per (edge, orientation): the edge is sent to a
/// horizontal segment below the origin, directed along `+x`, and its first
/// vertex is sheared into `0 <= x < |c|` where `y = c` is the edge line.
fn full_unimodular_images(p: &RationalPolytope) -> Result<Vec<RationalPolytope>> {
    let mut out = Vec::new();
    for r in [vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]] {
        let q = p.transform(&r)?;
        let vs = q.vertices();
        let n = vs.len();
        for i in 0..n {
            let dir = primitive_on_ray(&sub_q(&vs[(i + 1) % n], &vs[i]))?;
            let g = dir[0].extended_gcd(&dir[1]);
            let (u, v) = if g.gcd == 1 { (g.x, g.y) } else { (-g.x, -g.y) };
            let t = vec![vec![u, v], vec![-dir[1], dir[0]]];
            let x0 = int(u) * &vs[i][0] + int(v) * &vs[i][1];
            let c = int(-dir[1]) * &vs[i][0] + int(dir[0]) * &vs[i][1];
            debug_assert!(c.is_negative());
            let k = floor_i64(&(x0 / c.abs()));
            out.push(p.transform(&mat_mul(&mat_mul(&shear(k), &t), &r))?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// brute-force oracle

/// Independent generate-and-test enumeration for small boxes: every subset of
/// candidates in convex position (at most `max_vertices` points) is hulled and
/// handed to the checker. Exponential; meant for tests only.
pub fn brute_force_raw(data: &CombinatorialData, cfg: &EnumConfig) -> Result<Vec<RationalPolytope>> {
    if data.rank == 1 {
        let cands = candidates(data, cfg);
        let mut out = Vec::new();
        for (x, a) in cands.iter().enumerate() {
            for b in &cands[x + 1..] {
                let p = convex_hull(&[a.clone(), b.clone()], 1)?;
                if data.check_reflexive(&p)?.ok {
                    out.push(p);
                }
            }
        }
        out.sort();
        return Ok(out);
    }
    let cands = candidates(data, cfg);
    let n = cands.len();
    let mut out = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        data: &CombinatorialData,
        cands: &[VecQ],
        max: usize,
        start: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<RationalPolytope>,
    ) -> Result<()> {
        if subset.len() >= 3 {
            let pts: Vec<VecQ> = subset.iter().map(|&i| cands[i].clone()).collect();
            if let Ok(p) = convex_hull(&pts, 2) {
                if p.len() == subset.len() && data.check_reflexive(&p)?.ok {
                    out.push(p);
                }
            }
        }
        if subset.len() == max {
            return Ok(());
        }
        for i in start..cands.len() {
            subset.push(i);
            rec(data, cands, max, i + 1, subset, out)?;
            subset.pop();
        }
        Ok(())
    }
    rec(data, &cands, cfg.max_vertices.min(n), 0, &mut subset, &mut out)?;
    out.sort();
    Ok(out)
}

/// Brute force followed by orbit identification, for comparison with
/// [`enumerate`] (no box certification).
pub fn brute_force(
    data: &CombinatorialData,
    group: &SymmetryGroup,
    cfg: &EnumConfig,
) -> Result<Vec<CanonicalPolytope>> {
    let mut seen: BTreeMap<RationalPolytope, usize> = BTreeMap::new();
    for p in brute_force_raw(data, cfg)? {
        let c = canonical_form(group, &p)?;
        seen.entry(c.polytope).or_insert(c.stabilizer_order);
    }
    Ok(seen.into_iter().map(|(polytope, stabilizer_order)| CanonicalPolytope { polytope, stabilizer_order }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat::parse_vec_list;

    fn poly(s: &str) -> RationalPolytope {
        let vs = parse_vec_list(s).unwrap();
        convex_hull(&vs, vs[0].len()).unwrap()
    }

    fn count(id: &str, params: &str) -> usize {
        enumerate_family(id, &Params::parse(params).unwrap(), &EnumConfig::default()).unwrap().len()
    }

    #[test]
    fn toric_counts() {
        assert_eq!(count("toric", "n=1"), 1);
        assert_eq!(count("toric", "n=2"), 5);
    }

    #[test]
    fn rank_one_surfaces() {
        assert_eq!(count("SL2xGm.T", "n=0"), 1);
        assert_eq!(count("SL2xGm.N.product", "n=0"), 1);
        assert_eq!(count("SL2xGm.horo", "n=1,a1=0"), 1);
        assert_eq!(count("SL2xGm.horo", "n=1,a1=1"), 2);
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let hex = poly("(1,0);(1,1);(0,1);(-1,0);(-1,-1);(0,-1)");
        let c = canonical_form(&SymmetryGroup::FullUnimodular, &hex).unwrap();
        assert_eq!(c.stabilizer_order, 12);
        let moved = hex.transform(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(canonical_form(&SymmetryGroup::FullUnimodular, &moved).unwrap(), c);

        let g = SymmetryGroup::ShearClass { fixed: vec![1, 0], reflection: false };
        let p = poly("(1/2,0);(0,1);(-1,0);(0,-1)");
        let c = canonical_form(&g, &p).unwrap();
        let moved = p.transform(&[vec![1, 3], vec![0, -1]]).unwrap();
        assert_eq!(canonical_form(&g, &moved).unwrap(), c);
    }

    #[test]
    fn tight_box_is_reported() {
        let data = build("SL2xGm.horo", &Params::parse("n=2,a1=1").unwrap()).unwrap();
        let g = SymmetryGroup::of(&data);
        let cfg = EnumConfig { box_bound: 1, max_vertices: 10 };
        assert!(matches!(enumerate(&data, &g, &cfg), Err(Error::BoundTooTight(_))));
    }

    #[test]
    fn search_matches_brute_force_in_small_box() {
        let cfg = EnumConfig { box_bound: 2, max_vertices: 6 };
        for (id, params) in
            [("toric", "n=2"), ("SL2xGm.T", "n=1,a1=1"), ("SL2xGm.horo", "n=2,a1=1"), ("SL2sq.diagB", "")]
        {
            let data = build(id, &Params::parse(params).unwrap()).unwrap();
            assert_eq!(enumerate_raw(&data, &cfg).unwrap(), brute_force_raw(&data, &cfg).unwrap(), "{id} {params}");
        }
    }
}
