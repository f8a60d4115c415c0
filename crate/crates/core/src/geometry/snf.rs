use num_integer::Integer;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatZ {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl MatZ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatZ { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        MatZ { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &MatZ) -> MatZ {
        assert_eq!(self.cols, o.rows);
        let mut r = MatZ::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    r.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            self.data[dst * self.cols + j] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        for i in 0..self.rows {
            let v = self.get(i, src);
            self.data[i * self.cols + dst] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// Rank via the Smith form.
    pub fn rank(&self) -> usize {
        snf(self).1.diagonal().iter().filter(|&&d| d != 0).count()
    }
}

/// Smith normal form: returns `(U, S, V)` with `U * A * V = S`, `U` and `V`
/// unimodular, `S` diagonal with nonnegative `d_i | d_{i+1}`.
pub fn snf(a: &MatZ) -> (MatZ, MatZ, MatZ) {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = MatZ::identity(m);
    let mut v = MatZ::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (u, s, v);
            };
            if pi != t {
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            let p = s.get(t, t);
            let mut clean = true;
            for i in t + 1..m {
                let q = Integer::div_floor(&s.get(i, t), &p);
                if q != 0 {
                    s.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                clean &= s.get(i, t) == 0;
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&s.get(t, j), &p);
                if q != 0 {
                    s.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                clean &= s.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| s.get(i, j) % p != 0));
            match bad_row {
                Some(i) => {
                    s.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, s, v)
}

/// True iff the vectors form a basis of `Z^r` (exactly `r` of them, `|det| = 1`).
pub fn is_lattice_basis(vs: &[Vec<i64>]) -> bool {
    let Some(r) = vs.first().map(Vec::len) else {
        return false;
    };
    if vs.len() != r || vs.iter().any(|v| v.len() != r) {
        return false;
    }
    let m = MatZ::from_rows(&vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
    snf(&m).1.diagonal().iter().all(|&d| d == 1)
}

pub fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> MatZ {
        MatZ::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn check(a: &MatZ) -> Vec<i128> {
        let (u, s, v) = snf(a);
        assert_eq!(u.mul(a).mul(&v), s);
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    assert_eq!(s.get(i, j), 0);
                }
            }
        }
        let d = s.diagonal();
        for w in d.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0);
            } else {
                assert_eq!(w[1], 0);
            }
        }
        d
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&MatZ::identity(2)), vec![1, 1]);
        assert_eq!(check(&m(&[&[2, 0], &[0, 2]])), vec![2, 2]);
        assert_eq!(check(&m(&[&[2, 4], &[6, 8]])), vec![2, 4]);
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(check(&m(&[&[1, 1], &[1, 2], &[-1, -1]])), vec![1, 1]);
        assert_eq!(check(&MatZ::zeros(2, 3)), vec![0, 0]);
    }

    #[test]
    fn lattice_bases() {
        assert!(is_lattice_basis(&[vec![1, 0], vec![0, 1]]));
        assert!(!is_lattice_basis(&[vec![2, 0], vec![0, 1]]));
        assert!(is_lattice_basis(&[vec![1, 1], vec![1, 2]]));
        assert!(!is_lattice_basis(&[vec![1, 0]]));
        assert!(is_lattice_basis(&[vec![-1]]));
    }

    #[test]
    fn primitives() {
        assert_eq!(primitive(&[2, 0]).unwrap(), vec![1, 0]);
        assert_eq!(primitive(&[-4, -6]).unwrap(), vec![-2, -3]);
        assert_eq!(primitive(&[3, 5]).unwrap(), vec![3, 5]);
        assert!(primitive(&[0, 0]).is_err());
    }
}
