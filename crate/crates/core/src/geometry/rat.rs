//! Rational scalars and short rational vectors.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps values reduced
//! with a positive denominator. This module adds the text formats used by
//! every file the crate reads or writes: `"p/q"` (or `"p"`) for scalars and
//! `"(p/q,r/s)"` for vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type VecQ = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn vecq(xs: &[i64]) -> VecQ {
    xs.iter().map(|&x| int(x)).collect()
}

/// Integer vector embedded into rationals.
pub fn from_int_vec(v: &[i64]) -> VecQ {
    vecq(v)
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn parse_vec(s: &str) -> Result<VecQ> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("not a vector literal: `{s}`")))?;
    inner.split(',').map(parse_rat).collect()
}

/// Parses `"(a,b);(c,d);..."` or `"a;b"` (rank 1 shorthand without parens).
pub fn parse_vec_list(s: &str) -> Result<Vec<VecQ>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let p = p.trim();
            if p.starts_with('(') {
                parse_vec(p)
            } else {
                Ok(vec![parse_rat(p)?])
            }
        })
        .collect()
}

pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn is_integral_vec(v: &[Rat]) -> bool {
    v.iter().all(is_integral)
}

/// Integer vector of an integral rational vector. Panics on non-integral or
/// out-of-range input; callers check integrality first.
pub fn to_int_vec(v: &[Rat]) -> Vec<i64> {
    v.iter()
        .map(|x| {
            assert!(is_integral(x), "non-integral coordinate {x}");
            x.numer().to_i64().expect("coordinate out of i64 range")
        })
        .collect()
}

pub fn dot_q(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer covector with a rational vector.
pub fn dot_zq(a: &[i64], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(&x, y)| int(x) * y).sum()
}

pub fn sub_q(a: &[Rat], b: &[Rat]) -> VecQ {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_q(a: &[Rat]) -> VecQ {
    a.iter().map(|x| -x).collect()
}

/// Determinant of two plane vectors.
pub fn cross(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Applies an integer matrix (row-major, r x r) to a rational vector.
pub fn apply_mat(m: &[Vec<i64>], v: &[Rat]) -> VecQ {
    m.iter().map(|row| dot_zq(row, v)).collect()
}

/// Least common multiple of the denominators of `v`.
pub fn denom_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Primitive integer vector on the ray through a nonzero rational vector.
pub fn primitive_on_ray(v: &[Rat]) -> Result<Vec<i64>> {
    let l = denom_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(ints.iter().map(|x| (x / &g).to_i64().expect("coordinate out of i64 range")).collect())
}

pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}
