//! Invariants of a locally factorial Fano embedding read off its reflexive
//! polytope: boundary divisors, Picard group, Fano index, moment polytope,
//! anticanonical degree and the K-stability verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::integrate::{coordinate, Polynomial};
use crate::geometry::rat::{cross, dot_zq, fmt_rat, fmt_vec, is_integral, is_integral_vec, to_int_vec};
use crate::geometry::{integrate, snf, MatZ, Rat, RationalPolytope, VecQ};
use crate::spherical::{rat_string, CombinatorialData, ConePosition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorBasis {
    /// Color labels, in data order.
    pub colors: Vec<String>,
    /// Vertices giving `G`-stable prime divisors, in polytope order.
    pub g_stable: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardPresentation {
    /// Rows `rho(D)` for every color, then `v` for every `G`-stable divisor.
    pub relation_matrix: MatZ,
    pub snf: (MatZ, MatZ, MatZ),
    pub free_rank: usize,
    /// `m_D` per color, then 1 per `G`-stable divisor.
    pub anticanonical: Vec<i128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stability {
    Stable,
    SemistableNotStable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVerdict {
    pub value: Stability,
    /// `int x f` over the dual polytope, not divided by the volume.
    #[serde(with = "vec_string")]
    pub barycenter: VecQ,
}

impl KVerdict {
    /// Kähler-Einstein exactly when K-stable.
    pub fn is_ke(&self) -> bool {
        self.value == Stability::Stable
    }
}

mod vec_string {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::geometry::rat::{fmt_rat, parse_rat};
    use crate::geometry::VecQ;

    pub fn serialize<S: Serializer>(v: &VecQ, s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<VecQ, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|x| parse_rat(x).map_err(serde::de::Error::custom)).collect()
    }
}

/// All invariants of one embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub divisors: DivisorBasis,
    pub pic: u32,
    pub fano_index: u64,
    pub degree: u64,
    #[serde(with = "rat_string")]
    pub volume: Rat,
    pub moment_polytope: RationalPolytope,
    pub kappa: String,
    pub k_verdict: KVerdict,
}

fn require_reflexive(data: &CombinatorialData, p: &RationalPolytope) -> Result<()> {
    let v = data.check_reflexive(p)?;
    if v.ok {
        Ok(())
    } else {
        let msg: Vec<String> = v.violations.iter().map(|(c, s)| format!("{c:?}: {s}")).collect();
        Err(Error::NotReflexive(msg.join("; ")))
    }
}

pub fn divisor_basis(data: &CombinatorialData, p: &RationalPolytope) -> Result<DivisorBasis> {
    require_reflexive(data, p)?;
    Ok(divisor_basis_unchecked(data, p))
}

fn divisor_basis_unchecked(data: &CombinatorialData, p: &RationalPolytope) -> DivisorBasis {
    let cps = data.color_points();
    let g_stable = p
        .vertices()
        .iter()
        .filter(|v| is_integral_vec(v) && !cps.contains(v) && data.valuation_cone_position(v) != ConePosition::Outside)
        .map(|v| to_int_vec(v))
        .collect();
    DivisorBasis { colors: data.colors.iter().map(|c| c.label.clone()).collect(), g_stable }
}

pub fn picard_presentation(data: &CombinatorialData, p: &RationalPolytope) -> Result<PicardPresentation> {
    let basis = divisor_basis(data, p)?;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut b: Vec<i128> = Vec::new();
    for c in &data.colors {
        rows.push(c.rho.iter().map(|&x| x as i128).collect());
        b.push(c.m as i128);
    }
    for v in &basis.g_stable {
        rows.push(v.iter().map(|&x| x as i128).collect());
        b.push(1);
    }
    let a = MatZ::from_rows(&rows);
    let r = data.rank;
    let (u, s, v) = snf(&a);
    let diag = s.diagonal();
    let got = diag.iter().filter(|&&d| d != 0).count();
    if got != r {
        return Err(Error::RelationRankDeficit { expected: r, got });
    }
    if diag.iter().any(|&d| d != 1) {
        return Err(Error::PicardTorsion(diag));
    }
    Ok(PicardPresentation { free_rank: rows.len() - r, relation_matrix: a, snf: (u, s, v), anticanonical: b })
}

pub fn picard_rank(data: &CombinatorialData, p: &RationalPolytope) -> Result<u32> {
    Ok(picard_presentation(data, p)?.free_rank as u32)
}

/// Largest `k` with `-K_X` divisible by `k` in `Pic X`.
pub fn fano_index(data: &CombinatorialData, p: &RationalPolytope) -> Result<u64> {
    let pres = picard_presentation(data, p)?;
    let c = pres.snf.0.mul_vec(&pres.anticanonical);
    let g = c[data.rank..].iter().fold(0i128, |acc, x| acc.gcd(x));
    Ok(g as u64)
}

/// The moment polytope up to the translation by `kappa`, which is returned
/// as its formal expression.
pub fn moment_polytope(data: &CombinatorialData, p: &RationalPolytope) -> Result<(RationalPolytope, String)> {
    require_reflexive(data, p)?;
    Ok((p.dual()?, data.kappa.clone()))
}

fn dh_integral(data: &CombinatorialData, dual: &RationalPolytope, weight: &Polynomial) -> Rat {
    integrate(dual, &data.f.expand(data.rank).mul(weight))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Anticanonical degree `dim! * int f` over the dual polytope.
pub fn degree(data: &CombinatorialData, p: &RationalPolytope) -> Result<u64> {
    let (dual, _) = moment_polytope(data, p)?;
    let vol = dh_integral(data, &dual, &crate::geometry::integrate::one(data.rank));
    degree_from_volume(data, &vol)
}

fn degree_from_volume(data: &CombinatorialData, vol: &Rat) -> Result<u64> {
    let d = vol * Rat::from_integer(factorial(data.dim));
    if !is_integral(&d) || !d.is_positive() {
        return Err(Error::NonIntegerDegree(fmt_rat(&d)));
    }
    d.to_integer().to_u64().ok_or_else(|| Error::NonIntegerDegree(fmt_rat(&d)))
}

/// `(int x_i f)_i` over the dual polytope.
pub fn dh_barycenter(data: &CombinatorialData, p: &RationalPolytope) -> Result<VecQ> {
    let (dual, _) = moment_polytope(data, p)?;
    Ok(barycenter_of_dual(data, &dual))
}

fn barycenter_of_dual(data: &CombinatorialData, dual: &RationalPolytope) -> VecQ {
    (0..data.rank).map(|i| dh_integral(data, dual, &coordinate(data.rank, i))).collect()
}

pub fn k_verdict(data: &CombinatorialData, p: &RationalPolytope) -> Result<KVerdict> {
    let b = dh_barycenter(data, p)?;
    Ok(KVerdict { value: classify(&data.sigma, &b), barycenter: b })
}

/// Position of `b` relative to the cone spanned by `sigma`.
pub fn classify(sigma: &[Vec<i64>], b: &[Rat]) -> Stability {
    use Stability::*;
    let is_zero = b.iter().all(Zero::is_zero);
    match sigma {
        [] => {
            if is_zero {
                Stable
            } else {
                Unstable
            }
        }
        [s] => {
            if is_zero {
                return SemistableNotStable;
            }
            // b = t s with t > 0: colinear and positively oriented
            let colinear = match b.len() {
                1 => true,
                _ => cross(&crate::geometry::rat::from_int_vec(s), b).is_zero(),
            };
            if colinear && dot_zq(s, b).is_positive() {
                Stable
            } else {
                Unstable
            }
        }
        [s1, s2] => {
            // solve b = t1 s1 + t2 s2 by Cramer's rule
            let d = Rat::from_integer((s1[0] * s2[1] - s1[1] * s2[0]).into());
            assert!(!d.is_zero(), "spherical roots are not independent");
            let t1 = (&b[0] * Rat::from_integer(s2[1].into()) - &b[1] * Rat::from_integer(s2[0].into())) / &d;
            let t2 = (&b[1] * Rat::from_integer(s1[0].into()) - &b[0] * Rat::from_integer(s1[1].into())) / &d;
            if t1.is_positive() && t2.is_positive() {
                Stable
            } else if !t1.is_negative() && !t2.is_negative() {
                SemistableNotStable
            } else {
                Unstable
            }
        }
        _ => panic!("more spherical roots than rank two allows"),
    }
}

/// Everything at once; checks reflexivity a single time.
pub fn compute(data: &CombinatorialData, p: &RationalPolytope) -> Result<Invariants> {
    let pres = picard_presentation(data, p)?;
    let c = pres.snf.0.mul_vec(&pres.anticanonical);
    let fano_index = c[data.rank..].iter().fold(0i128, |acc, x| acc.gcd(x)) as u64;
    let dual = p.dual()?;
    let volume = dh_integral(data, &dual, &crate::geometry::integrate::one(data.rank));
    let degree = degree_from_volume(data, &volume)?;
    let b = barycenter_of_dual(data, &dual);
    Ok(Invariants {
        divisors: divisor_basis_unchecked(data, p),
        pic: pres.free_rank as u32,
        fano_index,
        degree,
        volume,
        moment_polytope: dual,
        kappa: data.kappa.clone(),
        k_verdict: KVerdict { value: classify(&data.sigma, &b), barycenter: b },
    })
}

/// Readable one-line summary used by the command-line `check`.
pub fn summary(inv: &Invariants) -> String {
    format!(
        "pic={} index={} degree={} k={:?} barycenter={}",
        inv.pic,
        inv.fano_index,
        inv.degree,
        inv.k_verdict.value,
        fmt_vec(&inv.k_verdict.barycenter)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::geometry::rat::{int, parse_vec_list, rat, vecq};
    use crate::registry::{build, Params};

    fn poly(s: &str) -> RationalPolytope {
        let vs = parse_vec_list(s).unwrap();
        convex_hull(&vs, vs[0].len()).unwrap()
    }

    fn data(id: &str, params: &str) -> CombinatorialData {
        build(id, &Params::parse(params).unwrap()).unwrap()
    }

    #[test]
    fn divisor_bases() {
        let d = data("SL2sq.diagSL2", "n=0");
        let b = divisor_basis(&d, &poly("-1;1/2")).unwrap();
        assert_eq!((b.colors, b.g_stable), (vec!["clubs".to_string()], vec![vec![-1]]));
        let d = data("SL2xGm.horo", "n=1,a1=1");
        assert_eq!(divisor_basis(&d, &poly("-1;1")).unwrap().g_stable, vec![vec![-1], vec![1]]);
        let d = data("toric", "n=2");
        assert_eq!(divisor_basis(&d, &poly("(1,0);(0,1);(-1,0);(0,-1)")).unwrap().g_stable.len(), 4);
        assert!(matches!(divisor_basis(&d, &poly("(2,0);(0,1);(-1,0);(0,-1)")), Err(Error::NotReflexive(_))));
    }

    #[test]
    fn picard_and_index() {
        let d = data("SL2sq.diagSL2", "n=0");
        assert_eq!(picard_rank(&d, &poly("-1;1/2")).unwrap(), 1);
        let d = data("SL2xGm.horo", "n=1,a1=1");
        assert_eq!(picard_rank(&d, &poly("-1;1")).unwrap(), 2);
        let t = data("toric", "n=2");
        let hex = poly("(1,0);(1,1);(0,1);(-1,0);(-1,-1);(0,-1)");
        assert_eq!(picard_rank(&t, &hex).unwrap(), 4);
        assert_eq!(fano_index(&t, &poly("(1,0);(0,1);(-1,-1)")).unwrap(), 3);
        let d = data("SL2xGm.T", "n=0");
        assert_eq!(fano_index(&d, &poly("-1;1")).unwrap(), 2);
        let d = data("SL2sq.NdiagSL2", "n=0");
        assert_eq!(fano_index(&d, &poly("-1;1")).unwrap(), 4);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&data("SL2sq.diagSL2", "n=0"), &poly("-1;1/2")).unwrap(), 54);
        assert_eq!(degree(&data("SL2sq.NdiagSL2", "n=0"), &poly("-1;1")).unwrap(), 64);
        let sp4 = data("Sp4.Nsym", "");
        let seg = poly("-1;2/3");
        assert_eq!(degree(&sp4, &seg).unwrap(), 625);
        assert_eq!(fano_index(&sp4, &seg).unwrap(), 5);
        let hex = poly("(1,0);(1,1);(0,1);(-1,0);(-1,-1);(0,-1)");
        assert_eq!(degree(&data("toric", "n=2"), &hex).unwrap(), 6);
    }

    #[test]
    fn moment_polytopes() {
        let (q, k) = moment_polytope(&data("SL2sq.diagSL2", "n=0"), &poly("-1;1/2")).unwrap();
        assert_eq!((q.to_literal(), k.as_str()), ("-2;1".to_string(), "a1+a2"));
        let (q, _) = moment_polytope(&data("toric", "n=2"), &poly("(1,0);(0,1);(-1,0);(0,-1)")).unwrap();
        assert_eq!(q, poly("(1,1);(-1,1);(-1,-1);(1,-1)"));
    }

    #[test]
    fn barycenters_and_verdicts() {
        let d = data("SL2xGm.horo", "n=1,a1=1");
        let k = k_verdict(&d, &poly("-1;1")).unwrap();
        assert_eq!((k.value, k.barycenter.clone()), (Stability::Unstable, vec![rat(2, 3)]));
        let k = k_verdict(&d, &poly("-1;1/2")).unwrap();
        assert_eq!((k.value, k.barycenter.clone()), (Stability::Stable, vec![int(0)]));
        let d = data("SL2xGm.T", "n=0");
        let k = k_verdict(&d, &poly("-1;1")).unwrap();
        assert_eq!((k.value, k.barycenter.clone()), (Stability::Stable, vec![rat(4, 3)]));
        let d = data("SL2xGm.T", "n=1,a1=0");
        let k = k_verdict(&d, &poly("(1,0);(0,1);(-1,0);(0,-1)")).unwrap();
        assert_eq!((k.value, k.barycenter.clone()), (Stability::Stable, vec![rat(8, 3), int(0)]));
        assert!(k_verdict(&data("Sp4.Nsym", ""), &poly("-1;2/3")).unwrap().is_ke());
    }

    #[test]
    fn cone_classification() {
        use Stability::*;
        let two = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(classify(&two, &vecq(&[1, 2])), Stable);
        assert_eq!(classify(&two, &vecq(&[1, 0])), SemistableNotStable);
        assert_eq!(classify(&two, &vecq(&[0, 0])), SemistableNotStable);
        assert_eq!(classify(&two, &vecq(&[-1, 2])), Unstable);
        let one = vec![vec![1, 1]];
        assert_eq!(classify(&one, &vecq(&[2, 2])), Stable);
        assert_eq!(classify(&one, &vecq(&[-2, -2])), Unstable);
        assert_eq!(classify(&one, &vecq(&[2, 1])), Unstable);
        assert_eq!(classify(&[], &vecq(&[0, 0])), Stable);
    }
}
