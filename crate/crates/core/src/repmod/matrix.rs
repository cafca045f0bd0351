//! Dense matrices over `Q(v)` and exact row reduction.

use std::fmt;

use crate::qfield::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    /// `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &RatFunc)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = self.get(i, j);
                (!v.is_zero()).then_some((i, j, v))
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    fn zip(&self, rhs: &Matrix, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &RatFunc) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(RatFunc::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect()
    }

    /// `[[a, 0], [0, b]]`
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzero_entries().iter().all(|(i, j, _)| i == j)
    }

    /// Nonzero entries only at `(i, i + offset)`.
    pub fn is_band(&self, offset: isize) -> bool {
        self.nonzero_entries()
            .iter()
            .all(|&(i, j, _)| j as isize - i as isize == offset)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert((0..self.cols).map(|j| self.get(i, j).clone()).collect());
        }
        ech.len()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_strings()).finish()
    }
}

/// An incrementally built row-echelon basis of a subspace of `Q(v)^n`.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    /// `(pivot column, row)` with the row normalized to 1 at its pivot.
    rows: Vec<(usize, Vec<RatFunc>)>,
    originals: Vec<Vec<RatFunc>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// The vectors that were accepted, in insertion order.
    pub fn basis(&self) -> &[Vec<RatFunc>] {
        &self.originals
    }

    pub fn reduce(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        self.reduce(v).iter().all(RatFunc::is_zero)
    }

    /// Add `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: Vec<RatFunc>) -> bool {
        let mut red = self.reduce(&v);
        let Some(p) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = red[p].inv().expect("pivot is nonzero");
        for x in red.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Keep earlier rows reduced against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&red) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        self.rows.push((p, red));
        self.originals.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let q = RatFunc::q();
        let m = Matrix::from_rows(vec![
            vec![r(1), q.clone(), r(0)],
            vec![r(2), &q * &r(2), r(0)],
            vec![r(0), r(1), q.clone()],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn product_with_identity() {
        let m = Matrix::from_rows(vec![vec![r(1), RatFunc::v()], vec![r(3), r(0)]]).unwrap();
        assert_eq!(m.mul(&Matrix::identity(2)), m);
        assert_eq!(m.apply(&[r(1), r(1)]), vec![&r(1) + &RatFunc::v(), r(3)]);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![r(1), r(1), r(0)]));
        assert!(!e.insert(vec![r(2), r(2), r(0)]));
        assert!(e.insert(vec![r(0), r(1), r(0)]));
        assert!(e.contains(&[r(5), r(7), r(0)]));
        assert!(!e.contains(&[r(0), r(0), r(1)]));
        assert!(!e.is_full());
    }

    #[test]
    fn block_diag_shape() {
        let a = Matrix::identity(2);
        let b = Matrix::zeros(1, 1);
        let m = Matrix::block_diag(&a, &b);
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.rank(), 2);
        assert!(m.is_diagonal());
    }
}
