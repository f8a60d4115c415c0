use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::polytope::RationalPolytope;
use super::rat::{cross, int, sub_q, Rat};

/// Sparse polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    /// `c + sum_i a_i x_i`.
    pub fn affine(c: Rat, a: &[Rat]) -> Self {
        let n = a.len();
        let mut p = Self::constant(n, c);
        for (i, ai) in a.iter().enumerate() {
            p = p.add(&Self::var(n, i).scale(ai));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rat::one()), |acc, _| acc.mul(self))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize))
            })
            .sum()
    }

    /// Substitutes `x_i = offset_i + sum_j lin[i][j] u_j`, giving a polynomial
    /// in `u` with `lin[0].len()` variables.
    pub fn compose_affine(&self, offset: &[Rat], lin: &[Vec<Rat>]) -> Self {
        let m = lin.first().map(Vec::len).unwrap_or(0);
        let images: Vec<Self> = (0..self.nvars).map(|i| Self::affine(offset[i].clone(), &lin[i])).collect();
        let mut r = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Integral over the standard simplex `{u >= 0, sum u <= 1}`:
    /// the monomial `u^a` integrates to `a! / (|a| + n)!`.
    pub fn integrate_standard_simplex(&self) -> Rat {
        let n = self.nvars as u32;
        self.terms
            .iter()
            .map(|(e, c)| {
                let num: BigInt = e.iter().map(|&k| factorial(k)).product();
                let tot: u32 = e.iter().sum::<u32>() + n;
                c * Rat::new(num, factorial(tot))
            })
            .sum()
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact integral of `f` over `P` with respect to Lebesgue measure.
pub fn integrate(p: &RationalPolytope, f: &Polynomial) -> Rat {
    assert_eq!(p.rank(), f.nvars(), "polynomial and polytope rank differ");
    let vs = p.vertices();
    match p.rank() {
        1 => {
            let len = &vs[1][0] - &vs[0][0];
            let g = f.compose_affine(&vs[0], &[vec![len.clone()]]);
            len * g.integrate_standard_simplex()
        }
        2 => {
            let v0 = &vs[0];
            let mut total = Rat::zero();
            for w in 1..vs.len() - 1 {
                total += integrate_triangle(v0, &vs[w], &vs[w + 1], f);
            }
            total
        }
        r => panic!("unsupported rank {r}"),
    }
}

/// Integral over the triangle with the given corners (any orientation).
pub fn integrate_triangle(a: &[Rat], b: &[Rat], c: &[Rat], f: &Polynomial) -> Rat {
    let e1 = sub_q(b, a);
    let e2 = sub_q(c, a);
    let det = cross(&e1, &e2).abs();
    let lin = vec![vec![e1[0].clone(), e2[0].clone()], vec![e1[1].clone(), e2[1].clone()]];
    det * f.compose_affine(a, &lin).integrate_standard_simplex()
}

/// `(x_1, ..., x_r)` as polynomials, handy for barycenters.
pub fn coordinate(nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(nvars, i)
}

pub fn one(nvars: usize) -> Polynomial {
    Polynomial::constant(nvars, int(1))
}
