//! Combinatorial data of a spherical homogeneous space and the
//! locally factorial reflexivity checker.
//!
//! Conventions: `N` vectors (polytope points, `rho`, linear parts of DH
//! factors) are columns; spherical roots live in the dual lattice `M` and
//! pair with `N` by the dot product. A lattice map `x -> T x` on `N` acts on
//! `M` by the inverse transpose.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rat::{dot_zq, from_int_vec, int, is_integral_vec, to_int_vec};
use crate::geometry::{is_lattice_basis, Polynomial, Rat, RationalPolytope, VecQ};

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rat_string {
    use super::Rat;
    use crate::geometry::rat::{fmt_rat, parse_rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Color {
    pub label: String,
    pub rho: Vec<i64>,
    pub m: u32,
    #[serde(default)]
    pub zeta: Vec<String>,
}

impl Color {
    pub fn new(label: &str, rho: &[i64], m: u32, zeta: &[&str]) -> Self {
        Color { label: label.into(), rho: rho.to_vec(), m, zeta: zeta.iter().map(|s| s.to_string()).collect() }
    }

    pub fn point(&self) -> VecQ {
        self.rho.iter().map(|&c| Rat::new(c.into(), (self.m as i64).into())).collect()
    }
}

/// One factor `(c + <a, x>)^mult` of a Duistermaat-Heckman polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhFactor {
    #[serde(with = "rat_string")]
    pub c: Rat,
    pub a: Vec<i64>,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhPolynomial {
    #[serde(with = "rat_string")]
    pub prefactor: Rat,
    pub factors: Vec<DhFactor>,
}

impl DhPolynomial {
    pub fn new(prefactor: Rat, factors: Vec<(Rat, Vec<i64>, u32)>) -> Self {
        DhPolynomial { prefactor, factors: factors.into_iter().map(|(c, a, mult)| DhFactor { c, a, mult }).collect() }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.mult).sum()
    }

    pub fn expand(&self, rank: usize) -> Polynomial {
        let mut p = Polynomial::constant(rank, self.prefactor.clone());
        for f in &self.factors {
            let a: VecQ = f.a.iter().map(|&x| int(x)).collect();
            p = p.mul(&Polynomial::affine(f.c.clone(), &a).pow(f.mult));
        }
        p
    }

    pub fn at_origin(&self) -> Rat {
        self.factors.iter().fold(self.prefactor.clone(), |acc, f| acc * num_traits::pow(f.c.clone(), f.mult as usize))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceType {
    #[serde(rename = "horospherical")]
    Horospherical,
    #[serde(rename = "symmetric")]
    Symmetric,
    #[serde(rename = "typeT")]
    TypeT,
    #[serde(rename = "typeN")]
    TypeN,
    #[serde(rename = "horosymmetric")]
    Horosymmetric,
    #[serde(rename = "diag-Borel")]
    DiagBorel,
    #[serde(rename = "group-compactification")]
    GroupCompactification,
    #[serde(rename = "toric")]
    Toric,
    #[serde(rename = "rank0")]
    Rank0,
}

impl fmt::Display for SpaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialData {
    pub rank: usize,
    pub dim: usize,
    pub sigma: Vec<Vec<i64>>,
    pub colors: Vec<Color>,
    pub f: DhPolynomial,
    pub kappa: String,
    pub basis: Vec<String>,
    pub group: String,
    #[serde(rename = "type")]
    pub space_type: SpaceType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4a,
    C4b,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<(Condition, String)>,
}

impl Verdict {
    fn from_violations(violations: Vec<(Condition, String)>) -> Self {
        Verdict { ok: violations.is_empty(), violations }
    }

    pub fn has(&self, c: Condition) -> bool {
        self.violations.iter().any(|(k, _)| *k == c)
    }
}

impl CombinatorialData {
    /// Structural sanity checks used by the registry tests.
    pub fn validate(&self) -> Result<()> {
        let bad = |d: String| Err(Error::DegenerateInput(d));
        if self.sigma.iter().any(|s| s.len() != self.rank) || self.colors.iter().any(|c| c.rho.len() != self.rank) {
            return bad("vector length differs from rank".into());
        }
        for s in &self.sigma {
            if crate::geometry::primitive(s)? != *s {
                return bad(format!("spherical root {s:?} is not primitive"));
            }
        }
        if self.f.degree() as usize != self.dim - self.rank {
            return bad(format!("DH degree {} but dim - rank = {}", self.f.degree(), self.dim - self.rank));
        }
        if !self.f.at_origin().is_positive() {
            return bad("DH polynomial is not positive at the origin".into());
        }
        if self.f.factors.iter().any(|f| f.a.len() != self.rank) {
            return bad("DH factor length differs from rank".into());
        }
        Ok(())
    }

    pub fn valuation_cone_position(&self, x: &[Rat]) -> ConePosition {
        let mut boundary = false;
        for s in &self.sigma {
            let v = dot_zq(s, x);
            if v.is_positive() {
                return ConePosition::Outside;
            }
            if v.is_zero() {
                boundary = true;
            }
        }
        if boundary {
            ConePosition::Boundary
        } else {
            ConePosition::Interior
        }
    }

    pub fn color_points(&self) -> Vec<VecQ> {
        self.colors.iter().map(Color::point).collect()
    }

    /// Whether the cone over the segment `[a, b]` (or the ray through `a`
    /// when `b` is `None`) meets the interior of the valuation cone.
    ///
    /// Each root cuts an open sub-interval of the parameter range `[0,1]`;
    /// the cone meets `Int V` iff their intersection is nonempty.
    pub fn cone_meets_interior(&self, a: &[Rat], b: Option<&[Rat]>) -> bool {
        let Some(b) = b else {
            return self.sigma.iter().all(|s| dot_zq(s, a).is_negative());
        };
        // interval endpoints with closedness flags
        let (mut lo, mut lo_closed) = (Rat::zero(), true);
        let (mut hi, mut hi_closed) = (Rat::one(), true);
        for s in &self.sigma {
            let sa = dot_zq(s, a);
            let sb = dot_zq(s, b);
            match (sa.is_negative(), sb.is_negative()) {
                (true, true) => {}
                (false, false) => return false,
                (true, false) => {
                    // g(l) = sa + l (sb - sa) < 0  iff  l < sa / (sa - sb)
                    let t = &sa / (&sa - &sb);
                    if t < hi || (t == hi && hi_closed) {
                        hi = t;
                        hi_closed = false;
                    }
                }
                (false, true) => {
                    let t = &sa / (&sa - &sb);
                    if t > lo || (t == lo && lo_closed) {
                        lo = t;
                        lo_closed = false;
                    }
                }
            }
        }
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }

    pub fn check_reflexive(&self, p: &RationalPolytope) -> Result<Verdict> {
        if p.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: p.rank() });
        }
        let mut out: Vec<(Condition, String)> = Vec::new();
        let zero = vec![Rat::zero(); self.rank];
        if !p.contains(&zero, true) {
            out.push((Condition::C1, "origin is not an interior point".into()));
        }
        let cps = self.color_points();
        for (c, pt) in self.colors.iter().zip(&cps) {
            if !p.contains(pt, false) {
                out.push((Condition::C2, format!("color {} point lies outside", c.label)));
            }
        }
        let is_color_point = |v: &VecQ| cps.iter().any(|c| c == v);
        for v in p.vertices() {
            if is_color_point(v) {
                continue;
            }
            if !is_integral_vec(v) {
                out.push((Condition::C3, format!("vertex {} is neither integral nor a color point", lit(v))));
            } else if self.valuation_cone_position(v) == ConePosition::Outside {
                out.push((Condition::C3, format!("vertex {} lies outside the valuation cone", lit(v))));
            }
        }
        for f in p.facets() {
            let verts: Vec<&VecQ> = f.incident_vertices.iter().map(|&i| &p.vertices()[i]).collect();
            let meets = self.cone_meets_interior(verts[0], verts.get(1).map(|v| v.as_slice()));
            if !meets {
                continue;
            }
            let on_facet: Vec<usize> = (0..self.colors.len())
                .filter(|&i| dot_zq(&f.outward_normal, &cps[i]) == f.support && p.contains(&cps[i], false))
                .collect();
            let flit = verts.iter().map(|v| lit(v)).collect::<Vec<_>>().join("-");
            for (x, &i) in on_facet.iter().enumerate() {
                for &j in &on_facet[x + 1..] {
                    if self.colors[i].rho == self.colors[j].rho {
                        out.push((
                            Condition::C4a,
                            format!(
                                "colors {} and {} share rho on facet {flit}",
                                self.colors[i].label, self.colors[j].label
                            ),
                        ));
                    }
                }
            }
            let mut gens: Vec<Vec<i64>> = Vec::new();
            for &i in &on_facet {
                if !verts.iter().any(|v| **v == cps[i]) {
                    out.push((
                        Condition::C4b,
                        format!("color {} lies on facet {flit} but is not a vertex", self.colors[i].label),
                    ));
                }
                gens.push(self.colors[i].rho.clone());
            }
            let mut integral = true;
            for v in &verts {
                if is_color_point(v) {
                    continue;
                }
                if is_integral_vec(v) {
                    gens.push(to_int_vec(v));
                } else {
                    integral = false;
                }
            }
            if !integral || !is_lattice_basis(&gens) {
                out.push((Condition::C4b, format!("generators of facet {flit} are not a lattice basis")));
            }
        }
        Ok(Verdict::from_violations(out))
    }

    /// Data transported along the lattice automorphism `x -> T x` of `N`.
    /// `t_inv_tr` is the inverse transpose, which acts on `M`.
    pub fn transform(&self, t: &[Vec<i64>]) -> CombinatorialData {
        let t_inv_tr = inverse_transpose(t);
        let mut d = self.clone();
        d.sigma = self.sigma.iter().map(|s| mat_vec(&t_inv_tr, s)).collect();
        for c in &mut d.colors {
            c.rho = mat_vec(t, &c.rho);
        }
        for f in &mut d.f.factors {
            f.a = mat_vec(t, &f.a);
        }
        d
    }

    /// If `T` is a combinatorial automorphism (preserves the root set, the
    /// colors as a multiset of `(rho, m)`, and the DH polynomial), returns the
    /// induced permutation of color indices. `zeta` plays no role.
    pub fn automorphism_permutation(&self, t: &[Vec<i64>]) -> Option<Vec<usize>> {
        let d = self.transform(t);
        let mut s1 = self.sigma.clone();
        let mut s2 = d.sigma.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return None;
        }
        if d.f.expand(self.rank) != self.f.expand(self.rank) {
            return None;
        }
        let mut used = vec![false; self.colors.len()];
        let mut perm = Vec::with_capacity(self.colors.len());
        for c in &d.colors {
            let j =
                (0..self.colors.len()).find(|&j| !used[j] && self.colors[j].rho == c.rho && self.colors[j].m == c.m)?;
            used[j] = true;
            perm.push(j);
        }
        Some(perm)
    }
}

fn lit(v: &[Rat]) -> String {
    crate::geometry::rat::fmt_vec(v)
}

pub fn mat_vec(t: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    t.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map(Vec::len).unwrap_or(0);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub fn det(t: &[Vec<i64>]) -> i64 {
    match t.len() {
        1 => t[0][0],
        2 => t[0][0] * t[1][1] - t[0][1] * t[1][0],
        n => panic!("determinant of a {n}x{n} matrix is not supported"),
    }
}

/// Inverse transpose of a unimodular 1x1 or 2x2 matrix.
pub fn inverse_transpose(t: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = det(t);
    assert!(d == 1 || d == -1, "matrix is not unimodular");
    match t.len() {
        1 => vec![vec![d]],
        _ => vec![vec![d * t[1][1], -d * t[1][0]], vec![-d * t[0][1], d * t[0][0]]],
    }
}

pub fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

/// Integer vector as a rational point.
pub fn point(v: &[i64]) -> VecQ {
    from_int_vec(v)
}
