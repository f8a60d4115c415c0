//! Families of spherical homogeneous spaces of rank at most two and
//! dimension at most four, with their combinatorial data, parameter bounds and
//! admissible symmetry groups, plus the static table of rank-0 spaces.
//!
//! Every table is written in a fixed basis of the weight lattice `M`; the
//! basis itself is kept as formal strings (`w` fundamental weights, `a` simple
//! roots, `x` characters of the central torus).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rat::{int, rat};
use crate::geometry::Rat;
use crate::spherical::{det, identity, Color, CombinatorialData, DhPolynomial, SpaceType};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, i64>);

impl Params {
    pub fn new(kv: &[(&str, i64)]) -> Self {
        Params(kv.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    /// Parses `"k=v,k=v"`; the empty string is the empty vector.
    pub fn parse(s: &str) -> Result<Self> {
        let mut m = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("parameter `{part}` is not of the form k=v")))?;
            let v: i64 =
                v.trim().parse().map_err(|_| Error::Parse(format!("parameter value `{v}` is not an integer")))?;
            m.insert(k.trim().to_string(), v);
        }
        Ok(Params(m))
    }

    pub fn get(&self, k: &str) -> Option<i64> {
        self.0.get(k).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// symmetry groups

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub matrix: Vec<Vec<i64>>,
    /// `color_images[i]` is the label of the color that color `i` is sent to.
    pub color_images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SymmetryGroup {
    Trivial,
    FiniteList {
        elements: Vec<GroupElement>,
    },
    /// All of `GL_r(Z)`.
    FullUnimodular,
    /// Matrices `[[e, k], [0, d]]` with `d = +-1`, `k` any integer, and
    /// `e = -1` allowed only when `reflection` is set. They fix the line
    /// through `fixed` and stabilize the sublattice it spans.
    ShearClass {
        fixed: Vec<i64>,
        reflection: bool,
    },
}

impl SymmetryGroup {
    /// The group of lattice automorphisms preserving the combinatorial data
    /// (roots, colors as `(rho, m)` up to relabeling, and the DH polynomial).
    pub fn of(data: &CombinatorialData) -> SymmetryGroup {
        let r = data.rank;
        let elem = |t: Vec<Vec<i64>>| {
            data.automorphism_permutation(&t).map(|perm| GroupElement {
                matrix: t,
                color_images: perm.iter().map(|&j| data.colors[j].label.clone()).collect(),
            })
        };
        if r == 1 {
            return match elem(vec![vec![-1]]) {
                Some(neg) => SymmetryGroup::FiniteList { elements: vec![elem(identity(1)).unwrap(), neg] },
                None => SymmetryGroup::Trivial,
            };
        }
        let linear_parts = || data.f.factors.iter().map(|f| &f.a).chain(data.colors.iter().map(|c| &c.rho));
        if data.sigma.is_empty() && linear_parts().all(|v| v.iter().all(|&x| x == 0)) {
            return SymmetryGroup::FullUnimodular;
        }
        if data.sigma.is_empty() && linear_parts().all(|v| v[1] == 0) {
            let reflection = elem(vec![vec![-1, 0], vec![0, 1]]).is_some();
            return SymmetryGroup::ShearClass { fixed: vec![1, 0], reflection };
        }
        let mut elements = Vec::new();
        for a in -4..=4 {
            for b in -4..=4 {
                for c in -4..=4 {
                    for d in -4..=4 {
                        let t = vec![vec![a, b], vec![c, d]];
                        if det(&t).abs() != 1 {
                            continue;
                        }
                        if let Some(e) = elem(t) {
                            elements.push(e);
                        }
                    }
                }
            }
        }
        // identity first, the rest in search order
        elements.sort_by_key(|e| e.matrix != identity(2));
        if elements.len() == 1 {
            SymmetryGroup::Trivial
        } else {
            SymmetryGroup::FiniteList { elements }
        }
    }

    /// A generating set (finite groups: all elements).
    pub fn generators(&self, rank: usize) -> Vec<Vec<Vec<i64>>> {
        match self {
            SymmetryGroup::Trivial => vec![identity(rank)],
            SymmetryGroup::FiniteList { elements } => elements.iter().map(|e| e.matrix.clone()).collect(),
            SymmetryGroup::FullUnimodular => {
                if rank == 1 {
                    vec![vec![vec![-1]]]
                } else {
                    vec![vec![vec![0, -1], vec![1, 0]], vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]]
                }
            }
            SymmetryGroup::ShearClass { reflection, .. } => {
                let mut g = vec![vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]];
                if *reflection {
                    g.push(vec![vec![-1, 0], vec![0, 1]]);
                }
                g
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SymmetryGroup::Trivial => "Trivial",
            SymmetryGroup::FiniteList { .. } => "FiniteList",
            SymmetryGroup::FullUnimodular => "FullUnimodular",
            SymmetryGroup::ShearClass { .. } => "ShearClass",
        }
    }
}

// ---------------------------------------------------------------------------
// family specifications

#[derive(Clone, Debug, Serialize)]
pub struct FamilySpec {
    pub id: &'static str,
    pub dim: usize,
    pub rank: usize,
    pub param_domain: &'static str,
    /// Every parameter vector that can yield an embedding.
    pub param_bound: Vec<Params>,
    /// First parameter vectors past the bound; enumerating them must give nothing.
    pub beyond_bound: Vec<Params>,
    pub bound_reason: &'static str,
    pub product_note: Option<&'static str>,
    /// `"computed"` (automorphisms of the data) or `"count-calibrated"`.
    pub symmetry_source: &'static str,
}

impl FamilySpec {
    pub fn build(&self, params: &Params) -> Result<CombinatorialData> {
        let d = build(self.id, params)?;
        if d.dim != self.dim || d.rank != self.rank {
            return Err(Error::ParamsOutOfDomain {
                family: self.id.into(),
                detail: format!("params {params} give dimension {} rank {}", d.dim, d.rank),
            });
        }
        Ok(d)
    }

    pub fn symmetry(&self, params: &Params) -> Result<SymmetryGroup> {
        symmetry_group(self.id, params)
    }
}

fn p(kv: &[(&str, i64)]) -> Params {
    Params::new(kv)
}

fn all_specs() -> Vec<FamilySpec> {
    let spec = |id, dim, rank, dom, bound: Vec<Params>, beyond: Vec<Params>, why, prod| FamilySpec {
        id,
        dim,
        rank,
        param_domain: dom,
        param_bound: bound,
        beyond_bound: beyond,
        bound_reason: why,
        product_note: prod,
        symmetry_source: "computed",
    };
    let one = |n| vec![p(&[("n", n)])];
    vec![
        spec("toric", 1, 1, "n=1", one(1), vec![], "dimension equals rank", None),
        spec("toric", 2, 2, "n=2", one(2), vec![], "dimension equals rank", None),
        spec("SL2xGm.T", 2, 1, "n=0", one(0), vec![], "no parameter", None),
        spec(
            "SL2xGm.T",
            3,
            2,
            "n=1, a1>=0",
            (0..=2).map(|a| p(&[("n", 1), ("a1", a)])).collect(),
            vec![p(&[("n", 1), ("a1", 3)])],
            "no locally factorial reflexive polytope once a1>=3",
            None,
        ),
        spec("SL2xGm.N.product", 2, 1, "n=0", one(0), vec![], "no parameter", None),
        spec("SL2xGm.N.product", 3, 2, "n=1", one(1), vec![], "no parameter", None),
        spec("SL2xGm.N.diag", 3, 2, "n=1", one(1), vec![], "no parameter", None),
        spec(
            "SL2xGm.horo",
            2,
            1,
            "n=1, a1>=0",
            (0..=1).map(|a| p(&[("n", 1), ("a1", a)])).collect(),
            vec![p(&[("n", 1), ("a1", 2)])],
            "the color vertex rho/2 forces a1<=1",
            Some("a1=0 is P^1 times a toric embedding"),
        ),
        spec(
            "SL2xGm.horo",
            3,
            2,
            "n=2, a1>=0",
            (0..=1).map(|a| p(&[("n", 2), ("a1", a)])).collect(),
            vec![p(&[("n", 2), ("a1", 2)])],
            "the color point rho/2 forces a1<=1",
            Some("a1=0 is P^1 times a toric surface"),
        ),
        spec("SL2sq.diagSL2", 3, 1, "n=0", one(0), vec![], "no parameter", None),
        spec("SL2sq.NdiagSL2", 3, 1, "n=0", one(0), vec![], "no parameter", None),
        spec(
            "SL2sq.horo1",
            3,
            1,
            "a1>=|a2|",
            vec![
                p(&[("a1", 0), ("a2", 0)]),
                p(&[("a1", 1), ("a2", 0)]),
                p(&[("a1", 1), ("a2", 1)]),
                p(&[("a1", 1), ("a2", -1)]),
            ],
            vec![p(&[("a1", 2), ("a2", 0)])],
            "color points rho/2 force a_i in {-1,0,1}",
            Some("a2=0 is P^1 times a surface"),
        ),
        spec(
            "SL3.horo.Q",
            3,
            1,
            "a1>=0",
            (0..=2).map(|a| p(&[("a1", a)])).collect(),
            vec![p(&[("a1", 3)])],
            "color vertex rho/3 forces a1<=2",
            Some("a1=0 is P^2 times P^1"),
        ),
        spec("SL2sq.diagSL2", 4, 2, "n=1", one(1), vec![], "no parameter", None),
        spec("SL2sq.NdiagSL2", 4, 2, "n=1", one(1), vec![], "no parameter", None),
        spec("SL2sq.GL2", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.diagB", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.NdiagB", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.TxT", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.NTxT", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.NTxNT", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL2sq.diagNT", 4, 2, "none", vec![Params::default()], vec![], "no parameter", None),
        spec(
            "SL2sq.PI-T",
            4,
            2,
            "a1>=0, a2>=0",
            (0..=2).flat_map(|a1| (0..=1).map(move |a2| p(&[("a1", a1), ("a2", a2)]))).collect(),
            vec![p(&[("a1", 3), ("a2", 0)]), p(&[("a1", 0), ("a2", 2)])],
            "a1<=2 as for the type T base; a2 in {0,1} from the point rho/2 of the induced color",
            Some("a2=0 is P^1 times a type T threefold"),
        ),
        spec(
            "SL2sq.PI-N.product",
            4,
            2,
            "a2>=0",
            (0..=1).map(|a| p(&[("a2", a)])).collect(),
            vec![p(&[("a2", 2)])],
            "a2 in {0,1} from the point rho/2 of the induced color",
            Some("a2=0 is P^1 times a threefold"),
        ),
        spec(
            "SL2sq.PI-N.diag",
            4,
            2,
            "a2>=0",
            (0..=1).map(|a| p(&[("a2", a)])).collect(),
            vec![p(&[("a2", 2)])],
            "a2 in {0,1} from the point rho/2 of the induced color",
            Some("a2=0 is P^1 times a threefold"),
        ),
        spec(
            "SL2sq.horo2",
            4,
            2,
            "a2=b2=0 and a1 in {0,1}; or a1=1, 0<=a2<b2 coprime",
            vec![
                p(&[("a1", 0), ("a2", 0), ("b2", 0)]),
                p(&[("a1", 1), ("a2", 0), ("b2", 0)]),
                p(&[("a1", 1), ("a2", 0), ("b2", 1)]),
                p(&[("a1", 1), ("a2", 1), ("b2", 2)]),
                p(&[("a1", 1), ("a2", 1), ("b2", 3)]),
                p(&[("a1", 1), ("a2", 2), ("b2", 3)]),
            ],
            vec![
                p(&[("a1", 2), ("a2", 0), ("b2", 0)]),
                p(&[("a1", 1), ("a2", 1), ("b2", 4)]),
                p(&[("a1", 1), ("a2", 3), ("b2", 4)]),
                p(&[("a1", 1), ("a2", 3), ("b2", 5)]),
            ],
            "integral points other than vertices and the origin are excluded, leaving these (a2,b2)",
            Some("a2=b2=0 is P^1 times a horospherical threefold"),
        ),
        spec("SL3.sym", 4, 1, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL3.horosym", 4, 1, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL3.Nhorosym", 4, 1, "none", vec![Params::default()], vec![], "no parameter (no embedding)", None),
        spec(
            "SL3.horo.B",
            4,
            1,
            "a1>=|a2|",
            vec![
                p(&[("a1", 0), ("a2", 0)]),
                p(&[("a1", 1), ("a2", 0)]),
                p(&[("a1", 1), ("a2", 1)]),
                p(&[("a1", 1), ("a2", -1)]),
            ],
            vec![p(&[("a1", 2), ("a2", 0)])],
            "color points rho/2 force a_i in {-1,0,1}",
            None,
        ),
        spec(
            "SL3.horo2",
            4,
            2,
            "a1>=0",
            (0..=2).map(|a| p(&[("a1", a)])).collect(),
            vec![p(&[("a1", 3)])],
            "color point rho/3 forces a1<=2",
            Some("a1=0 is P^2 times a toric surface"),
        ),
        spec("Sp4.Nsym", 4, 1, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("Sp4.sym", 4, 1, "none", vec![Params::default()], vec![], "no parameter", None),
        spec("SL3xSL2.Q1xT", 4, 1, "none", vec![Params::default()], vec![], "no parameter", Some("P^2 times SL2/T")),
        spec(
            "SL3xSL2.Q1xNT",
            4,
            1,
            "none",
            vec![Params::default()],
            vec![],
            "no parameter",
            Some("P^2 times SL2/N(T)"),
        ),
        spec(
            "SL2cube.B1xdiagSL2",
            4,
            1,
            "none",
            vec![Params::default()],
            vec![],
            "no parameter",
            Some("P^1 times Q^3"),
        ),
        spec(
            "SL2cube.B1xNdiagSL2",
            4,
            1,
            "none",
            vec![Params::default()],
            vec![],
            "no parameter",
            Some("P^1 times P^3"),
        ),
        spec(
            "SL2cube.BxBxT",
            4,
            1,
            "none",
            vec![Params::default()],
            vec![],
            "no parameter",
            Some("P^1 x P^1 times SL2/T"),
        ),
        spec(
            "SL2cube.BxBxNT",
            4,
            1,
            "none",
            vec![Params::default()],
            vec![],
            "no parameter",
            Some("P^1 x P^1 times SL2/N(T)"),
        ),
        spec(
            "SL2cube.horo",
            4,
            1,
            "a1>=|a2|>=|a3|",
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, -1, 0), (1, 1, 1), (1, 1, -1)]
                .iter()
                .map(|&(a, b, c)| p(&[("a1", a), ("a2", b), ("a3", c)]))
                .collect(),
            vec![p(&[("a1", 2), ("a2", 0), ("a3", 0)])],
            "color points rho/2 force a_i in {-1,0,1}",
            Some("a3=0 is P^1 times a threefold"),
        ),
        spec(
            "SL3xSL2.horo",
            4,
            1,
            "a1>=0",
            [(0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (1, -1), (2, 1), (2, -1)]
                .iter()
                .map(|&(a, c)| p(&[("a1", a), ("a3", c)]))
                .collect(),
            vec![p(&[("a1", 3), ("a3", 0)]), p(&[("a1", 0), ("a3", 2)])],
            "color points force a1<=2 and |a3|<=1; (0,-1) is (0,1) up to sign",
            Some("a1=0 or a3=0 is a product"),
        ),
        spec(
            "Sp4.horo.short",
            4,
            1,
            "a1>=0",
            (0..=3).map(|a| p(&[("a1", a)])).collect(),
            vec![p(&[("a1", 4)])],
            "color vertex rho/4 forces a1<=3",
            None,
        ),
        spec(
            "Sp4.horo.long",
            4,
            1,
            "a2>=0",
            (0..=2).map(|a| p(&[("a2", a)])).collect(),
            vec![p(&[("a2", 3)])],
            "color vertex rho/3 forces a2<=2",
            None,
        ),
        spec(
            "SL4.horo",
            4,
            1,
            "a1>=0",
            (0..=3).map(|a| p(&[("a1", a)])).collect(),
            vec![p(&[("a1", 4)])],
            "color vertex rho/4 forces a1<=3",
            None,
        ),
    ]
}

pub fn registry() -> &'static [FamilySpec] {
    static REG: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    REG.get_or_init(all_specs)
}

/// Families whose `(dim, rank)` pass the filters (`None` accepts all).
pub fn families(dim: Option<usize>, rank: Option<usize>) -> Vec<&'static FamilySpec> {
    registry().iter().filter(|s| dim.is_none_or(|d| s.dim == d) && rank.is_none_or(|r| s.rank == r)).collect()
}

pub fn family_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
    ids.dedup();
    ids
}

/// The family specification of `id` whose bound contains `params`, or failing that the
/// first one whose domain accepts them.
pub fn find_spec(id: &str, params: &Params) -> Result<&'static FamilySpec> {
    let specs: Vec<&FamilySpec> = registry().iter().filter(|s| s.id == id).collect();
    if specs.is_empty() {
        return Err(Error::UnknownFamily(id.into()));
    }
    if let Some(s) = specs.iter().find(|s| s.param_bound.contains(params)) {
        return Ok(s);
    }
    let d = build(id, params)?;
    specs
        .into_iter()
        .find(|s| s.dim == d.dim && s.rank == d.rank)
        .ok_or_else(|| Error::ParamsOutOfDomain { family: id.into(), detail: params.to_string() })
}

pub fn symmetry_group(id: &str, params: &Params) -> Result<SymmetryGroup> {
    Ok(SymmetryGroup::of(&build(id, params)?))
}

// ---------------------------------------------------------------------------
// constructors

struct Builder<'a> {
    id: &'a str,
    params: &'a Params,
}

impl Builder<'_> {
    fn bad(&self, detail: impl Into<String>) -> Error {
        Error::ParamsOutOfDomain { family: self.id.into(), detail: detail.into() }
    }

    /// Checks that exactly `names` are present and returns their values.
    fn take(&self, names: &[&str]) -> Result<Vec<i64>> {
        if self.params.0.len() != names.len() || names.iter().any(|n| !self.params.0.contains_key(*n)) {
            return Err(self.bad(format!("expected parameters {names:?}, got `{}`", self.params)));
        }
        Ok(names.iter().map(|n| self.params.0[*n]).collect())
    }

    fn n(&self) -> Result<i64> {
        self.params.get("n").ok_or_else(|| self.bad("missing n"))
    }
}

fn col(label: &str, rho: &[i64], m: u32, zeta: &[&str]) -> Color {
    Color::new(label, rho, m, zeta)
}

fn dh(prefactor: Rat, factors: &[(Rat, &[i64], u32)]) -> DhPolynomial {
    DhPolynomial::new(prefactor, factors.iter().map(|(c, a, k)| (c.clone(), a.to_vec(), *k)).collect())
}

#[allow(clippy::too_many_arguments)]
fn cd(
    rank: usize,
    dim: usize,
    sigma: &[&[i64]],
    colors: Vec<Color>,
    f: DhPolynomial,
    kappa: &str,
    basis: &[String],
    group: &str,
    t: SpaceType,
) -> CombinatorialData {
    CombinatorialData {
        rank,
        dim,
        sigma: sigma.iter().map(|s| s.to_vec()).collect(),
        colors,
        f,
        kappa: kappa.into(),
        basis: basis.to_vec(),
        group: group.into(),
        space_type: t,
    }
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `k*w` rendered compactly for the formal basis strings.
fn term(k: i64, sym: &str) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        -1 => format!("-{sym}"),
        _ => format!("{k}{sym}"),
    }
}

fn join_terms(parts: &[String]) -> String {
    let mut s = String::new();
    for t in parts.iter().filter(|t| !t.is_empty()) {
        if !s.is_empty() && !t.starts_with('-') {
            s.push('+');
        }
        s.push_str(t);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

const CL: &str = "clubs";
const HE: &str = "hearts";
const SP: &str = "spades";
const DI: &str = "diamonds";

pub fn build(id: &str, params: &Params) -> Result<CombinatorialData> {
    use SpaceType::*;
    let b = Builder { id, params };
    let one = int(1);
    let two = int(2);
    let d = match id {
        "toric" => {
            let n = b.take(&["n"])?[0];
            match n {
                1 => cd(1, 1, &[], vec![], dh(one, &[]), "0", &strs(&["x1"]), "Gm", Toric),
                2 => cd(2, 2, &[], vec![], dh(one, &[]), "0", &strs(&["x1", "x2"]), "Gm^2", Toric),
                _ => return Err(b.bad("n must be 1 or 2")),
            }
        }
        "SL2xGm.T" => match b.n()? {
            0 => {
                b.take(&["n"])?;
                cd(
                    1,
                    2,
                    &[&[1]],
                    vec![col(CL, &[1], 1, &["a1"]), col(HE, &[1], 1, &["a1"])],
                    dh(two, &[(one, &[1], 1)]),
                    "a1",
                    &strs(&["a1"]),
                    "SL2",
                    Symmetric,
                )
            }
            1 => {
                let a1 = b.take(&["n", "a1"])?[1];
                if a1 < 0 {
                    return Err(b.bad("a1 must be nonnegative"));
                }
                let t = if a1 == 0 { Symmetric } else { TypeT };
                if a1 % 2 == 0 {
                    cd(
                        2,
                        3,
                        &[&[1, 0]],
                        vec![col(CL, &[1, a1 / 2], 1, &["a1"]), col(HE, &[1, -a1 / 2], 1, &["a1"])],
                        dh(two, &[(one, &[1, 0], 1)]),
                        "a1",
                        &strs(&["a1", "x1"]),
                        "SL2xGm",
                        t,
                    )
                } else {
                    let (u, v) = ((a1 + 1) / 2, (1 - a1) / 2);
                    cd(
                        2,
                        3,
                        &[&[1, 1]],
                        vec![col(CL, &[u, v], 1, &["a1"]), col(HE, &[v, u], 1, &["a1"])],
                        dh(one, &[(two, &[1, 1], 1)]),
                        "a1",
                        &strs(&["w1+x1", "w1-x1"]),
                        "SL2xGm",
                        t,
                    )
                }
            }
            _ => return Err(b.bad("n must be 0 or 1")),
        },
        "SL2xGm.N.product" => match b.take(&["n"])?[0] {
            0 => cd(
                1,
                2,
                &[&[1]],
                vec![col(CL, &[2], 1, &["a1"])],
                dh(two, &[(one, &[2], 1)]),
                "a1",
                &strs(&["2a1"]),
                "SL2",
                Symmetric,
            ),
            1 => cd(
                2,
                3,
                &[&[1, 0]],
                vec![col(CL, &[2, 0], 1, &["a1"])],
                dh(two, &[(one, &[2, 0], 1)]),
                "a1",
                &strs(&["2a1", "x1"]),
                "SL2xGm",
                Symmetric,
            ),
            _ => return Err(b.bad("n must be 0 or 1")),
        },
        "SL2xGm.N.diag" => {
            if b.take(&["n"])?[0] != 1 {
                return Err(b.bad("n must be 1"));
            }
            cd(
                2,
                3,
                &[&[1, 1]],
                vec![col(CL, &[1, 1], 1, &["a1"])],
                dh(two, &[(one, &[1, 1], 1)]),
                "a1",
                &strs(&["a1+x1", "a1-x1"]),
                "SL2xGm",
                Symmetric,
            )
        }
        "SL2xGm.horo" => {
            let v = b.take(&["n", "a1"])?;
            let (n, a1) = (v[0], v[1]);
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            let lead = join_terms(&[term(a1, "w1"), "x1".into()]);
            match n {
                1 => cd(
                    1,
                    2,
                    &[],
                    vec![col(CL, &[a1], 2, &["a1"])],
                    dh(one, &[(two, &[a1], 1)]),
                    "a1",
                    &[lead],
                    "SL2xGm",
                    Horospherical,
                ),
                2 => cd(
                    2,
                    3,
                    &[],
                    vec![col(CL, &[a1, 0], 2, &["a1"])],
                    dh(one, &[(two, &[a1, 0], 1)]),
                    "a1",
                    &[lead, "x2".into()],
                    "SL2xGm^2",
                    Horospherical,
                ),
                _ => return Err(b.bad("n must be 1 or 2")),
            }
        }
        "SL2sq.diagSL2" => match b.take(&["n"])?[0] {
            0 => cd(
                1,
                3,
                &[&[1]],
                vec![col(CL, &[1], 2, &["a1", "a2"])],
                dh(one, &[(two, &[1], 2)]),
                "a1+a2",
                &strs(&["w1+w2"]),
                "(SL2)^2",
                Symmetric,
            ),
            1 => cd(
                2,
                4,
                &[&[1, 0]],
                vec![col(CL, &[1, 0], 2, &["a1", "a2"])],
                dh(one, &[(two, &[1, 0], 2)]),
                "a1+a2",
                &strs(&["w1+w2", "x1"]),
                "(SL2)^2xGm",
                Symmetric,
            ),
            _ => return Err(b.bad("n must be 0 or 1")),
        },
        "SL2sq.NdiagSL2" => match b.take(&["n"])?[0] {
            0 => cd(
                1,
                3,
                &[&[1]],
                vec![col(CL, &[2], 2, &["a1", "a2"])],
                dh(int(4), &[(one, &[1], 2)]),
                "a1+a2",
                &strs(&["a1+a2"]),
                "(SL2)^2",
                Symmetric,
            ),
            1 => cd(
                2,
                4,
                &[&[1, 0]],
                vec![col(CL, &[2, 0], 2, &["a1", "a2"])],
                dh(int(4), &[(one, &[1, 0], 2)]),
                "a1+a2",
                &strs(&["a1+a2", "x1"]),
                "(SL2)^2xGm",
                Symmetric,
            ),
            _ => return Err(b.bad("n must be 0 or 1")),
        },
        "SL2sq.GL2" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 1]],
                vec![col(CL, &[1, 1], 2, &["a1", "a2"])],
                dh(one, &[(two, &[1, 1], 2)]),
                "a1+a2",
                &strs(&["w1+w2+x1", "w1+w2-x1"]),
                "(SL2)^2xGm",
                GroupCompactification,
            )
        }
        "SL2sq.diagB" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 1], &[1, -1]],
                vec![col(CL, &[0, 1], 1, &["a1"]), col(HE, &[1, 0], 1, &["a1", "a2"]), col(DI, &[0, -1], 1, &["a2"])],
                dh(one, &[(two.clone(), &[1, 1], 1), (two, &[1, -1], 1)]),
                "a1+a2",
                &strs(&["w1+w2", "w1-w2"]),
                "(SL2)^2",
                DiagBorel,
            )
        }
        "SL2sq.NdiagB" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 0], &[0, 1]],
                vec![col(CL, &[1, -1], 1, &["a1"]), col(HE, &[1, 1], 1, &["a1", "a2"]), col(DI, &[-1, 1], 1, &["a2"])],
                dh(int(4), &[(one.clone(), &[1, 0], 1), (one, &[0, 1], 1)]),
                "a1+a2",
                &strs(&["a1", "a2"]),
                "(SL2)^2",
                DiagBorel,
            )
        }
        "SL2sq.TxT" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 0], &[0, 1]],
                vec![
                    col(CL, &[1, 0], 1, &["a1"]),
                    col(HE, &[1, 0], 1, &["a1"]),
                    col(SP, &[0, 1], 1, &["a2"]),
                    col(DI, &[0, 1], 1, &["a2"]),
                ],
                dh(int(4), &[(one.clone(), &[1, 0], 1), (one, &[0, 1], 1)]),
                "a1+a2",
                &strs(&["a1", "a2"]),
                "(SL2)^2",
                Symmetric,
            )
        }
        "SL2sq.NTxT" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 0], &[0, 1]],
                vec![col(CL, &[2, 0], 1, &["a1"]), col(SP, &[0, 1], 1, &["a2"]), col(DI, &[0, 1], 1, &["a2"])],
                dh(int(4), &[(one.clone(), &[2, 0], 1), (one, &[0, 1], 1)]),
                "a1+a2",
                &strs(&["2a1", "a2"]),
                "(SL2)^2",
                Symmetric,
            )
        }
        "SL2sq.NTxNT" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 0], &[0, 1]],
                vec![col(CL, &[2, 0], 1, &["a1"]), col(SP, &[0, 2], 1, &["a2"])],
                dh(int(4), &[(one.clone(), &[2, 0], 1), (one, &[0, 2], 1)]),
                "a1+a2",
                &strs(&["2a1", "2a2"]),
                "(SL2)^2",
                Symmetric,
            )
        }
        "SL2sq.diagNT" => {
            b.take(&[])?;
            cd(
                2,
                4,
                &[&[1, 1], &[1, -1]],
                vec![col(CL, &[1, 1], 1, &["a1"]), col(SP, &[1, -1], 1, &["a2"])],
                dh(int(4), &[(one.clone(), &[1, 1], 1), (one, &[1, -1], 1)]),
                "a1+a2",
                &strs(&["a1+a2", "a1-a2"]),
                "(SL2)^2",
                Symmetric,
            )
        }
        "SL2sq.PI-T" => {
            let v = b.take(&["a1", "a2"])?;
            let (a1, a2) = (v[0], v[1]);
            if a1 < 0 || a2 < 0 {
                return Err(b.bad("a1 and a2 must be nonnegative"));
            }
            let t = if a1 == 0 { Symmetric } else { TypeT };
            if a1 % 2 == 0 {
                cd(
                    2,
                    4,
                    &[&[1, 0]],
                    vec![
                        col(CL, &[1, a1 / 2], 1, &["a1"]),
                        col(HE, &[1, -a1 / 2], 1, &["a1"]),
                        col(DI, &[0, a2], 2, &["a2"]),
                    ],
                    dh(two.clone(), &[(one, &[1, 0], 1), (two, &[0, a2], 1)]),
                    "a1+a2",
                    &["a1".into(), join_terms(&[term(a2, "w2"), "x1".into()])],
                    "(SL2)^2xGm",
                    t,
                )
            } else {
                let (u, w) = ((a1 + 1) / 2, (1 - a1) / 2);
                cd(
                    2,
                    4,
                    &[&[1, 1]],
                    vec![col(CL, &[u, w], 1, &["a1"]), col(HE, &[w, u], 1, &["a1"]), col(DI, &[a2, -a2], 2, &["a2"])],
                    dh(one, &[(two.clone(), &[1, 1], 1), (two, &[a2, -a2], 1)]),
                    "a1+a2",
                    &[
                        join_terms(&["w1".into(), term(a2, "w2"), "x1".into()]),
                        join_terms(&["w1".into(), term(-a2, "w2"), "-x1".into()]),
                    ],
                    "(SL2)^2xGm",
                    t,
                )
            }
        }
        "SL2sq.PI-N.product" => {
            let a2 = b.take(&["a2"])?[0];
            if a2 < 0 {
                return Err(b.bad("a2 must be nonnegative"));
            }
            cd(
                2,
                4,
                &[&[1, 0]],
                vec![col(CL, &[2, 0], 1, &["a1"]), col(DI, &[0, a2], 2, &["a2"])],
                dh(two.clone(), &[(one, &[2, 0], 1), (two, &[0, a2], 1)]),
                "a1+a2",
                &["2a1".into(), join_terms(&[term(a2, "w2"), "x1".into()])],
                "(SL2)^2xGm",
                Symmetric,
            )
        }
        "SL2sq.PI-N.diag" => {
            let a2 = b.take(&["a2"])?[0];
            if a2 < 0 {
                return Err(b.bad("a2 must be nonnegative"));
            }
            cd(
                2,
                4,
                &[&[1, 1]],
                vec![col(CL, &[1, 1], 1, &["a1"]), col(DI, &[a2, -a2], 2, &["a2"])],
                dh(two.clone(), &[(one, &[1, 1], 1), (two, &[a2, -a2], 1)]),
                "a1+a2",
                &[
                    join_terms(&["a1".into(), term(a2, "w2"), "x1".into()]),
                    join_terms(&["a1".into(), term(-a2, "w2"), "-x1".into()]),
                ],
                "(SL2)^2xGm",
                Symmetric,
            )
        }
        "SL2sq.horo1" => {
            let v = b.take(&["a1", "a2"])?;
            let (a1, a2) = (v[0], v[1]);
            if a1 < a2.abs() {
                return Err(b.bad("need a1 >= |a2|"));
            }
            cd(
                1,
                3,
                &[],
                vec![col(CL, &[a1], 2, &["a1"]), col(HE, &[a2], 2, &["a2"])],
                dh(one, &[(two.clone(), &[a1], 1), (two, &[a2], 1)]),
                "a1+a2",
                &[join_terms(&[term(a1, "w1"), term(a2, "w2"), "x1".into()])],
                "(SL2)^2xGm",
                Horospherical,
            )
        }
        "SL2sq.horo2" => {
            let v = b.take(&["a1", "a2", "b2"])?;
            let (a1, a2, b2) = (v[0], v[1], v[2]);
            let product_line = a2 == 0 && b2 == 0 && a1 >= 0;
            let general = a1 >= 1 && 0 <= a2 && a2 < b2 && num_integer::gcd(a2, b2) == 1;
            if !(product_line || general) {
                return Err(b.bad("need a2=b2=0, or a1>=1 and 0<=a2<b2 coprime"));
            }
            cd(
                2,
                4,
                &[],
                vec![col(CL, &[a1, 0], 2, &["a1"]), col(HE, &[a2, b2], 2, &["a2"])],
                dh(one, &[(two.clone(), &[a1, 0], 1), (two, &[a2, b2], 1)]),
                "a1+a2",
                &[
                    join_terms(&[term(a1, "w1"), term(a2, "w2"), "x1".into()]),
                    join_terms(&[term(b2, "w2"), "x2".into()]),
                ],
                "(SL2)^2xGm^2",
                Horospherical,
            )
        }
        "SL3.sym" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[1], 2, &["a1"]), col(HE, &[1], 2, &["a2"])],
                dh(one, &[(two, &[1], 3)]),
                "2a1+2a2",
                &strs(&["a1+a2"]),
                "SL3",
                Symmetric,
            )
        }
        "SL3.horosym" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[-1], 2, &["a1"]), col(HE, &[1], 1, &["a2"]), col(DI, &[1], 1, &["a2"])],
                dh(one.clone(), &[(two, &[-1], 1), (one, &[1], 1), (int(4), &[1], 1)]),
                "2a1+2a2",
                &strs(&["a2"]),
                "SL3",
                Horosymmetric,
            )
        }
        "SL3.Nhorosym" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[-2], 2, &["a1"]), col(HE, &[2], 1, &["a2"])],
                dh(int(4), &[(one.clone(), &[-1], 1), (one, &[2], 1), (two, &[1], 1)]),
                "2a1+2a2",
                &strs(&["2a2"]),
                "SL3",
                Horosymmetric,
            )
        }
        "SL3.horo.Q" => {
            let a1 = b.take(&["a1"])?[0];
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            cd(
                1,
                3,
                &[],
                vec![col(CL, &[a1], 3, &["a1"])],
                dh(rat(1, 2), &[(int(3), &[a1], 2)]),
                "2a1+a2",
                &[join_terms(&[term(a1, "w1"), "x1".into()])],
                "SL3xGm",
                Horospherical,
            )
        }
        "SL3.horo.B" => {
            let v = b.take(&["a1", "a2"])?;
            let (a1, a2) = (v[0], v[1]);
            if a1 < a2.abs() {
                return Err(b.bad("need a1 >= |a2|"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a1], 2, &["a1"]), col(HE, &[a2], 2, &["a2"])],
                dh(rat(1, 2), &[(two.clone(), &[a1], 1), (two, &[a2], 1), (int(4), &[a1 + a2], 1)]),
                "2a1+2a2",
                &[join_terms(&[term(a1, "w1"), term(a2, "w2"), "x1".into()])],
                "SL3xGm",
                Horospherical,
            )
        }
        "SL3.horo2" => {
            let a1 = b.take(&["a1"])?[0];
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            cd(
                2,
                4,
                &[],
                vec![col(CL, &[a1, 0], 3, &["a1"])],
                dh(rat(1, 2), &[(int(3), &[a1, 0], 2)]),
                "2a1+a2",
                &[join_terms(&[term(a1, "w1"), "x1".into()]), "x2".into()],
                "SL3xGm^2",
                Horospherical,
            )
        }
        "Sp4.Nsym" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[2], 3, &["a2"])],
                dh(rat(1, 3), &[(int(3), &[2], 3)]),
                "3a1+3a2",
                &strs(&["2a1+2a2"]),
                "Sp4",
                Symmetric,
            )
        }
        "Sp4.sym" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[1], 3, &["a2"])],
                dh(rat(1, 3), &[(int(3), &[1], 3)]),
                "3a1+3a2",
                &strs(&["a1+a2"]),
                "Sp4",
                Symmetric,
            )
        }
        // Products with a rank-0 factor: that factor contributes colors sent
        // to the origin and a constant DH factor.
        "SL3xSL2.Q1xT" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[1], 1, &["a3"]), col(HE, &[1], 1, &["a3"]), col(SP, &[0], 3, &["a1"])],
                dh(one.clone(), &[(one, &[1], 1), (int(3), &[0], 2)]),
                "2a1+a2+a3",
                &strs(&["a3"]),
                "SL3xSL2",
                Symmetric,
            )
        }
        "SL3xSL2.Q1xNT" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[2], 1, &["a3"]), col(SP, &[0], 3, &["a1"])],
                dh(one.clone(), &[(one, &[2], 1), (int(3), &[0], 2)]),
                "2a1+a2+a3",
                &strs(&["2a3"]),
                "SL3xSL2",
                Symmetric,
            )
        }
        "SL2cube.B1xdiagSL2" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[1], 2, &["a2", "a3"]), col(SP, &[0], 2, &["a1"])],
                dh(one, &[(two.clone(), &[1], 2), (two, &[0], 1)]),
                "a1+a2+a3",
                &strs(&["w2+w3"]),
                "(SL2)^3",
                Symmetric,
            )
        }
        "SL2cube.B1xNdiagSL2" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[2], 2, &["a2", "a3"]), col(SP, &[0], 2, &["a1"])],
                dh(int(4), &[(one, &[1], 2), (two, &[0], 1)]),
                "a1+a2+a3",
                &strs(&["a2+a3"]),
                "(SL2)^3",
                Symmetric,
            )
        }
        "SL2cube.BxBxT" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![
                    col(CL, &[1], 1, &["a3"]),
                    col(HE, &[1], 1, &["a3"]),
                    col(SP, &[0], 2, &["a1"]),
                    col(DI, &[0], 2, &["a2"]),
                ],
                dh(two.clone(), &[(one, &[1], 1), (two.clone(), &[0], 1), (two, &[0], 1)]),
                "a1+a2+a3",
                &strs(&["a3"]),
                "(SL2)^3",
                Symmetric,
            )
        }
        "SL2cube.BxBxNT" => {
            b.take(&[])?;
            cd(
                1,
                4,
                &[&[1]],
                vec![col(CL, &[2], 1, &["a3"]), col(SP, &[0], 2, &["a1"]), col(DI, &[0], 2, &["a2"])],
                dh(two.clone(), &[(one, &[2], 1), (two.clone(), &[0], 1), (two, &[0], 1)]),
                "a1+a2+a3",
                &strs(&["2a3"]),
                "(SL2)^3",
                Symmetric,
            )
        }
        "SL2cube.horo" => {
            let v = b.take(&["a1", "a2", "a3"])?;
            let (a1, a2, a3) = (v[0], v[1], v[2]);
            if !(a1 >= a2.abs() && a2.abs() >= a3.abs()) {
                return Err(b.bad("need a1 >= |a2| >= |a3|"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a1], 2, &["a1"]), col(HE, &[a2], 2, &["a2"]), col(SP, &[a3], 2, &["a3"])],
                dh(one, &[(two.clone(), &[a1], 1), (two.clone(), &[a2], 1), (two, &[a3], 1)]),
                "a1+a2+a3",
                &[join_terms(&[term(a1, "w1"), term(a2, "w2"), term(a3, "w3"), "x1".into()])],
                "(SL2)^3xGm",
                Horospherical,
            )
        }
        "SL3xSL2.horo" => {
            let v = b.take(&["a1", "a3"])?;
            let (a1, a3) = (v[0], v[1]);
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a1], 3, &["a1"]), col(HE, &[a3], 2, &["a3"])],
                dh(rat(1, 2), &[(int(3), &[a1], 2), (two, &[a3], 1)]),
                "2a1+a2+a3",
                &[join_terms(&[term(a1, "w1"), term(a3, "w3"), "x1".into()])],
                "SL3xSL2xGm",
                Horospherical,
            )
        }
        "Sp4.horo.short" => {
            let a1 = b.take(&["a1"])?[0];
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a1], 4, &["a1"])],
                dh(rat(1, 6), &[(int(4), &[a1], 3)]),
                "4a1+2a2",
                &[join_terms(&[term(a1, "w1"), "x1".into()])],
                "Sp4xGm",
                Horospherical,
            )
        }
        "Sp4.horo.long" => {
            let a2 = b.take(&["a2"])?[0];
            if a2 < 0 {
                return Err(b.bad("a2 must be nonnegative"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a2], 3, &["a2"])],
                dh(rat(1, 3), &[(int(3), &[a2], 3)]),
                "3a1+3a2",
                &[join_terms(&[term(a2, "w2"), "x1".into()])],
                "Sp4xGm",
                Horospherical,
            )
        }
        "SL4.horo" => {
            let a1 = b.take(&["a1"])?[0];
            if a1 < 0 {
                return Err(b.bad("a1 must be nonnegative"));
            }
            cd(
                1,
                4,
                &[],
                vec![col(CL, &[a1], 4, &["a1"])],
                dh(rat(1, 6), &[(int(4), &[a1], 3)]),
                "3a1+2a2+a3",
                &[join_terms(&[term(a1, "w1"), "x1".into()])],
                "SL4xGm",
                Horospherical,
            )
        }
        _ => return Err(Error::UnknownFamily(id.into())),
    };
    d.validate()?;
    Ok(d)
}

// ---------------------------------------------------------------------------
// rank 0

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank0Entry {
    pub group: &'static str,
    pub space: &'static str,
    pub dim: usize,
    pub pic: u32,
    pub degree: u64,
    /// Not part of the source table: the classical index of `G/P`.
    pub fano_index: u32,
}

/// The 18 projective homogeneous spaces of dimension at most four.
pub fn rank0_entries() -> Vec<Rank0Entry> {
    let e = |group, space, dim, pic, degree, fano_index| Rank0Entry { group, space, dim, pic, degree, fano_index };
    vec![
        e("SL2", "P^1", 1, 1, 2, 2),
        e("SL3", "P^2", 2, 1, 9, 3),
        e("SL2^2", "P^1xP^1", 2, 2, 8, 2),
        e("SL3", "W", 3, 2, 48, 2),
        e("Sp4", "Q^3", 3, 1, 54, 3),
        e("Sp4", "P^3", 3, 1, 64, 4),
        e("SL2^3", "P^1xP^1xP^1", 3, 3, 48, 2),
        e("SL3xSL2", "P^2xP^1", 3, 2, 54, 1),
        e("SL4", "P^3", 3, 1, 64, 4),
        e("SL3xSL2", "WxP^1", 4, 3, 384, 2),
        e("Sp4xSL2", "Q^3xP^1", 4, 2, 432, 1),
        e("Sp4xSL2", "P^3xP^1", 4, 2, 512, 2),
        e("SL4", "Q^4", 4, 1, 512, 4),
        e("SL2^4", "P^1xP^1xP^1xP^1", 4, 4, 384, 2),
        e("SL3xSL2^2", "P^2xP^1xP^1", 4, 3, 432, 1),
        e("SL3^2", "P^2xP^2", 4, 2, 486, 3),
        e("SL4xSL2", "P^3xP^1", 4, 2, 512, 2),
        e("SL5", "P^4", 4, 1, 625, 5),
    ]
}

// ---------------------------------------------------------------------------
// serialized registry

#[derive(Serialize)]
struct ParamEntry {
    params: Params,
    data: CombinatorialData,
    symmetry: SymmetryGroup,
}

#[derive(Serialize)]
struct FamilyEntry<'a> {
    #[serde(flatten)]
    spec: &'a FamilySpec,
    instances: Vec<ParamEntry>,
}

#[derive(Serialize)]
struct RegistryDump<'a> {
    families: Vec<FamilyEntry<'a>>,
    rank0: Vec<Rank0Entry>,
}

/// The whole registry as pretty JSON; the shipped `data/families.json` is
/// exactly this string.
pub fn registry_json() -> Result<String> {
    let mut families = Vec::new();
    for spec in registry() {
        let mut instances = Vec::new();
        for params in &spec.param_bound {
            let data = spec.build(params)?;
            let symmetry = SymmetryGroup::of(&data);
            instances.push(ParamEntry { params: params.clone(), data, symmetry });
        }
        families.push(FamilyEntry { spec, instances });
    }
    let mut s = serde_json::to_string_pretty(&RegistryDump { families, rank0: rank0_entries() })?;
    s.push('\n');
    Ok(s)
}

pub const SHIPPED_FAMILIES_JSON: &str = include_str!("../data/families.json");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat::vecq;
    use num_traits::Signed;

    #[test]
    fn params_text_round_trip() {
        let p = Params::parse("a2=-1, a1=1").unwrap();
        assert_eq!(p.to_string(), "a1=1,a2=-1");
        assert!(Params::parse("").unwrap().is_empty());
        assert!(Params::parse("a1").is_err());
        assert!(Params::parse("a1=x").is_err());
    }

    #[test]
    fn every_bound_instance_is_well_formed() {
        for s in registry() {
            for params in s.param_bound.iter().chain(&s.beyond_bound) {
                let d = s.build(params).unwrap_or_else(|e| panic!("{} {params}: {e}", s.id));
                assert!(d.f.at_origin().is_positive());
                assert_eq!(d.f.degree() as usize, d.dim - d.rank);
                // every generator maps the data to itself
                let g = SymmetryGroup::of(&d);
                for t in g.generators(d.rank) {
                    assert!(d.automorphism_permutation(&t).is_some(), "{} {params}: {t:?}", s.id);
                }
            }
        }
    }

    #[test]
    fn registry_examples() {
        let d = build("SL2xGm.T", &Params::parse("n=1,a1=1").unwrap()).unwrap();
        assert_eq!(d.sigma, vec![vec![1, 1]]);
        assert_eq!((d.colors[0].rho.clone(), d.colors[1].rho.clone()), (vec![1, 0], vec![0, 1]));
        assert_eq!(d.f.expand(2).eval(&vecq(&[1, 1])), int(4));

        let d = build("SL2sq.diagSL2", &Params::parse("n=0").unwrap()).unwrap();
        assert_eq!((d.rank, d.colors[0].rho.clone(), d.colors[0].m), (1, vec![1], 2));
        assert_eq!(d.f.expand(1).eval(&vecq(&[1])), int(9));

        let d = build("Sp4.Nsym", &Params::default()).unwrap();
        assert_eq!((d.colors[0].rho.clone(), d.colors[0].m), (vec![2], 3));
        assert_eq!(d.f.expand(1).eval(&vecq(&[0])), int(9));

        let d = build("toric", &Params::parse("n=2").unwrap()).unwrap();
        assert!(d.sigma.is_empty() && d.colors.is_empty());

        assert!(matches!(build("nope", &Params::default()), Err(Error::UnknownFamily(_))));
        assert!(matches!(
            build("SL2sq.horo1", &Params::parse("a1=0,a2=1").unwrap()),
            Err(Error::ParamsOutOfDomain { .. })
        ));
    }

    #[test]
    fn family_filters() {
        let f = families(Some(2), Some(2));
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].id, "toric");
        let ids: Vec<&str> = families(Some(3), Some(1)).iter().map(|s| s.id).collect();
        assert_eq!(ids, vec!["SL2sq.diagSL2", "SL2sq.NdiagSL2", "SL2sq.horo1", "SL3.horo.Q"]);
        assert_eq!(rank0_entries().iter().filter(|e| e.dim == 4).count(), 9);
        assert_eq!(rank0_entries().iter().filter(|e| e.dim == 3).count(), 6);
        let p4 = rank0_entries().into_iter().find(|e| e.group == "SL5").unwrap();
        assert_eq!((p4.pic, p4.degree), (1, 625));
    }

    #[test]
    fn symmetry_examples() {
        let g = symmetry_group("toric", &Params::parse("n=2").unwrap()).unwrap();
        assert_eq!(g, SymmetryGroup::FullUnimodular);
        let g = symmetry_group("SL2xGm.horo", &Params::parse("n=2,a1=1").unwrap()).unwrap();
        assert_eq!(g, SymmetryGroup::ShearClass { fixed: vec![1, 0], reflection: false });
        let g = symmetry_group("SL2xGm.T", &Params::parse("n=1,a1=1").unwrap()).unwrap();
        let SymmetryGroup::FiniteList { elements } = g else { panic!("expected a finite group") };
        assert_eq!(elements.len(), 2);
        assert_eq!(elements[1].matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(elements[1].color_images, vec!["hearts".to_string(), "clubs".to_string()]);
    }

    #[test]
    fn shipped_registry_is_current() {
        assert_eq!(SHIPPED_FAMILIES_JSON, registry_json().unwrap(), "regenerate data/families.json");
    }
}
