use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{cross, dot_zq, fmt_vec, int, primitive_on_ray, sub_q, Rat, VecQ};
use crate::error::{Error, Result};

/// A vertex-represented polytope of rank 1 or 2.
///
/// Rank 2 vertices run strictly counterclockwise from the lexicographically
/// smallest one; rank 1 is `[low, high]`. With this storage, equality of
/// polytopes is equality of vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPolytope {
    rank: usize,
    vertices: Vec<VecQ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub outward_normal: Vec<i64>,
    pub support: Rat,
    pub incident_vertices: Vec<usize>,
}

fn orient(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    cross(&sub_q(a, o), &sub_q(b, o))
}

pub fn convex_hull(points: &[VecQ], rank: usize) -> Result<RationalPolytope> {
    if points.iter().any(|p| p.len() != rank) {
        let got = points.iter().map(Vec::len).find(|&l| l != rank).unwrap_or(rank);
        return Err(Error::RankMismatch { expected: rank, got });
    }
    let mut pts: Vec<VecQ> = points.to_vec();
    pts.sort();
    pts.dedup();
    match rank {
        1 => {
            if pts.len() < 2 {
                return Err(Error::DegenerateInput("rank-1 hull needs two distinct points".into()));
            }
            let lo = pts.first().unwrap().clone();
            let hi = pts.last().unwrap().clone();
            Ok(RationalPolytope { rank, vertices: vec![lo, hi] })
        }
        2 => {
            if pts.len() < 3 {
                return Err(Error::DegenerateInput("rank-2 hull needs three points".into()));
            }
            // Andrew's monotone chain; strict turns drop collinear points.
            let mut lower: Vec<VecQ> = Vec::new();
            for p in &pts {
                while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                    lower.pop();
                }
                lower.push(p.clone());
            }
            let mut upper: Vec<VecQ> = Vec::new();
            for p in pts.iter().rev() {
                while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                    upper.pop();
                }
                upper.push(p.clone());
            }
            lower.pop();
            upper.pop();
            lower.extend(upper);
            if lower.len() < 3 {
                return Err(Error::DegenerateInput("all points are collinear".into()));
            }
            Ok(RationalPolytope { rank, vertices: lower })
        }
        r => Err(Error::DegenerateInput(format!("rank {r} is not supported"))),
    }
}

impl RationalPolytope {
    /// Builds from a vertex list already in canonical order, checking it.
    pub fn from_vertices(rank: usize, vertices: Vec<VecQ>) -> Result<Self> {
        let p = convex_hull(&vertices, rank)?;
        if p.vertices != vertices {
            return Err(Error::DegenerateInput(format!(
                "vertex list is not in canonical order or has non-extreme points: {}",
                vertices.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(";")
            )));
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[VecQ] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn facets(&self) -> Vec<Facet> {
        if self.rank == 1 {
            return vec![
                Facet { outward_normal: vec![-1], support: -&self.vertices[0][0], incident_vertices: vec![0] },
                Facet { outward_normal: vec![1], support: self.vertices[1][0].clone(), incident_vertices: vec![1] },
            ];
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let d = sub_q(&self.vertices[j], &self.vertices[i]);
                let normal = primitive_on_ray(&[d[1].clone(), -&d[0]]).expect("distinct vertices");
                let support = dot_zq(&normal, &self.vertices[i]);
                Facet { outward_normal: normal, support, incident_vertices: vec![i, j] }
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rat], strict: bool) -> bool {
        self.facets().iter().all(|f| {
            let v = dot_zq(&f.outward_normal, x);
            if strict {
                v < f.support
            } else {
                v <= f.support
            }
        })
    }

    /// `{y : <x,y> >= -1 for x in P}`.
    pub fn dual(&self) -> Result<RationalPolytope> {
        let zero = vec![Rat::zero(); self.rank];
        if !self.contains(&zero, true) {
            return Err(Error::OriginNotInterior);
        }
        // Facet <n,x> = h with h > 0 dualizes to the vertex -n/h.
        let pts: Vec<VecQ> =
            self.facets().iter().map(|f| f.outward_normal.iter().map(|&c| -int(c) / &f.support).collect()).collect();
        convex_hull(&pts, self.rank)
    }

    /// Image under an integer matrix acting on column vectors.
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<RationalPolytope> {
        let pts: Vec<VecQ> = self.vertices.iter().map(|v| super::rat::apply_mat(m, v)).collect();
        convex_hull(&pts, self.rank)
    }

    pub fn translate(&self, t: &[Rat]) -> Result<RationalPolytope> {
        let pts: Vec<VecQ> = self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        convex_hull(&pts, self.rank)
    }

    /// All integer points, boundary included, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let mut lo = vec![i64::MAX; self.rank];
        let mut hi = vec![i64::MIN; self.rank];
        for v in &self.vertices {
            for k in 0..self.rank {
                lo[k] = lo[k].min(v[k].floor().to_integer().to_i64().unwrap());
                hi[k] = hi[k].max(v[k].ceil().to_integer().to_i64().unwrap());
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x: VecQ = cur.iter().map(|&c| int(c)).collect();
            if self.contains(&x, false) {
                out.push(cur.clone());
            }
            // odometer, last coordinate fastest
            let mut k = self.rank;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    for (kk, c) in cur.iter_mut().enumerate().skip(k + 1) {
                        *c = lo[kk];
                    }
                    break;
                }
            }
        }
    }

    /// Largest absolute coordinate over all vertices.
    pub fn max_abs_coord(&self) -> Rat {
        self.vertices.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
    }

    pub fn vertex_strings(&self) -> Vec<Vec<String>> {
        self.vertices.iter().map(|v| v.iter().map(super::rat::fmt_rat).collect()).collect()
    }

    /// `"(a,b);(c,d);..."`, or `"a;b"` in rank 1.
    pub fn to_literal(&self) -> String {
        let one = |v: &VecQ| if self.rank == 1 { super::rat::fmt_rat(&v[0]) } else { fmt_vec(v) };
        self.vertices.iter().map(one).collect::<Vec<_>>().join(";")
    }
}

/// Serialized as a list of vertices, each a list of `"p/q"` strings.
impl Serialize for RationalPolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertex_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        let verts = raw
            .iter()
            .map(|v| v.iter().map(|s| super::rat::parse_rat(s)).collect::<Result<VecQ>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let rank = verts.first().map(Vec::len).unwrap_or(0);
        RationalPolytope::from_vertices(rank, verts).map_err(serde::de::Error::custom)
    }
}
