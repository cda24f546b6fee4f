//! Exact linear algebra over a prime field. Subspaces are given by row
//! generators; every routine returns a reduced row echelon basis.

use crate::error::{Error, Result};

pub type Row = Vec<u32>;

/// The prime field `GF(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    q: u32,
}

impl Fp {
    pub fn new(q: u32) -> Result<Fp> {
        let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0);
        if !prime {
            return Err(Error::InvalidConfig(format!("field modulus {q} is not prime")));
        }
        Ok(Fp { q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a % self.q) % self.q
    }

    /// Multiplicative inverse by Fermat; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.q != 0, "inverse of zero");
        let (mut base, mut exp, mut acc) = (a as u64 % self.q as u64, self.q - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.q as u64;
            }
            base = base * base % self.q as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// Reduced row echelon form, zero rows dropped.
    pub fn echelon(&self, rows: &[Row]) -> Vec<Row> {
        let mut m: Vec<Row> = rows.iter().map(|r| r.iter().map(|&x| x % self.q).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
        }
        m.truncate(rank);
        m
    }

    pub fn rank(&self, rows: &[Row]) -> usize {
        self.echelon(rows).len()
    }

    pub fn sum(&self, a: &[Row], b: &[Row]) -> Vec<Row> {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        self.echelon(&all)
    }

    /// Basis of `{v : M v = 0}` for an `r × c` matrix given by rows.
    pub fn kernel(&self, m: &[Row], cols: usize) -> Vec<Row> {
        let e = self.echelon(m);
        let pivots: Vec<usize> = e.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in e.iter().zip(&pivots) {
                v[pc] = self.neg(row[free]);
            }
            out.push(v);
        }
        out
    }

    pub fn transpose(&self, m: &[Row], cols: usize) -> Vec<Row> {
        (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
    }

    /// Basis of the intersection of the row spaces of `a` and `b` in `K^n`.
    pub fn intersect(&self, a: &[Row], b: &[Row], n: usize) -> Vec<Row> {
        let a = self.echelon(a);
        let b = self.echelon(b);
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut stacked = a.clone();
        stacked.extend(b.iter().cloned());
        // (x, y) with x A + y B = 0 gives x A in both spaces
        let relations = self.kernel(&self.transpose(&stacked, n), stacked.len());
        let vectors: Vec<Row> = relations.iter().map(|rel| self.combine(&rel[..a.len()], &a, n)).collect();
        self.echelon(&vectors)
    }

    /// `Σ coeffs[t] · rows[t]`.
    pub fn combine(&self, coeffs: &[u32], rows: &[Row], n: usize) -> Row {
        let mut out = vec![0; n];
        for (&c, row) in coeffs.iter().zip(rows) {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(row) {
                    *o = self.add(*o, self.mul(c, x));
                }
            }
        }
        out
    }

    /// Matrix product of row-major `a` (r × k) and `b` (k × c).
    pub fn mul_mat(&self, a: &[Row], b: &[Row], c: usize) -> Vec<Row> {
        a.iter().map(|row| self.combine(row, b, c)).collect()
    }

    pub fn inverse(&self, m: &[Row]) -> Option<Vec<Row>> {
        let n = m.len();
        let aug: Vec<Row> = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = row.clone();
                v.extend((0..n).map(|c| u32::from(c == r)));
                v
            })
            .collect();
        let e = self.echelon(&aug);
        if e.len() < n || (0..n).any(|r| e[r][r] != 1) {
            return None;
        }
        Some(e.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Span of the first `d` coordinate vectors of `K^n`.
    pub fn coordinate_span(&self, n: usize, d: usize) -> Vec<Row> {
        (0..d).map(|r| (0..n).map(|c| u32::from(c == r)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        let f = Fp::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 4);
        assert_eq!(f.neg(0), 0);
    }

    #[test]
    fn rank_and_intersection() {
        let f = Fp::new(2).unwrap();
        let u = vec![vec![0, 1]];
        let w = vec![vec![1, 1]];
        assert_eq!(f.rank(&f.sum(&u, &w)), 2);
        assert!(f.intersect(&u, &w, 2).is_empty());
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 1], vec![0, 0, 1]];
        assert_eq!(f.intersect(&a, &b, 3), vec![vec![0, 1, 0]]);
        assert_eq!(f.rank(&[vec![1, 1], vec![1, 1]]), 1);
    }

    #[test]
    fn kernel_and_inverse() {
        let f = Fp::new(5).unwrap();
        let m = vec![vec![1, 2, 3], vec![0, 1, 4]];
        let k = f.kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert_eq!(dot, 0);
        }
        let g = vec![vec![1, 2], vec![3, 4]];
        let inv = f.inverse(&g).unwrap();
        assert_eq!(f.mul_mat(&g, &inv, 2), f.coordinate_span(2, 2));
        assert!(f.inverse(&[vec![1, 2], vec![2, 4]]).is_none());
    }
}
