use std::collections::HashMap;
use std::fmt;

use super::poly::Poly;
use super::ring::RingRef;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Dense matrix of polynomials over a common ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<C: Scalar = Rational> {
    ring: RingRef,
    nrows: usize,
    ncols: usize,
    data: Vec<Poly<C>>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(ring: &RingRef, nrows: usize, ncols: usize) -> Self {
        Matrix { ring: ring.clone(), nrows, ncols, data: vec![Poly::zero(ring); nrows * ncols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Poly<C>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Matrix("ragged rows".into()));
        }
        Ok(Matrix { ring: ring.clone(), nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(ring: &RingRef, nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> Poly<C>) -> Self {
        let data = (0..nrows * ncols).map(|k| f(k / ncols, k % ncols)).collect();
        Matrix { ring: ring.clone(), nrows, ncols, data }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<C> {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<C>) {
        self.data[i * self.ncols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly<C>] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly<C>> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Poly<C>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::Matrix(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(Self::from_fn(&self.ring, self.nrows, other.ncols, |i, j| {
            (0..self.ncols).fold(Poly::zero(&self.ring), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        }))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&Poly<C>) -> Poly<D>) -> Matrix<D> {
        let data: Vec<Poly<D>> = self.data.iter().map(f).collect();
        let ring = data.first().map_or(self.ring.clone(), |p| p.ring().clone());
        Matrix { ring, nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| (i + 1..self.ncols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.ncols).all(|j| *self.get(i, j) == self.get(j, i).neg())
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Determinant by cofactor expansion, memoised over column subsets.
    pub fn det(&self) -> Result<Poly<C>> {
        if !self.is_square() {
            return Err(Error::Matrix("determinant of a non-square matrix".into()));
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        if n > 24 {
            return Err(Error::Matrix("matrix too large for cofactor expansion".into()));
        }
        let mut memo: HashMap<u32, Poly<C>> = HashMap::new();
        Ok(self.det_rec((1u32 << n) - 1, &mut memo))
    }

    fn det_rec(&self, cols: u32, memo: &mut HashMap<u32, Poly<C>>) -> Poly<C> {
        let k = cols.count_ones() as usize;
        if k == 0 {
            return Poly::one(&self.ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let row = self.nrows - k;
        let mut acc = Poly::zero(&self.ring);
        let mut pos = 0;
        for j in 0..self.ncols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let minor = self.det_rec(cols & !(1 << j), memo);
                let t = a.mul(&minor);
                acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Pfaffian of an even-sized skew matrix.
    pub fn pfaffian(&self) -> Result<Poly<C>> {
        let n = self.nrows;
        let all: Vec<usize> = (0..n).collect();
        let mut memo = PfaffianMemo::new(self)?;
        memo.pfaffian_of(&all)
    }

    /// Adjugate: `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Matrix("adjugate of a non-square matrix".into()));
        }
        let n = self.nrows;
        let mut out = Self::zeros(&self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { minor } else { minor.neg() });
            }
        }
        Ok(out)
    }

    /// Substitute values for variables in every entry.
    pub fn evaluate(&self, assignment: &[(usize, C)]) -> Self {
        self.map(|p| p.evaluate(assignment))
    }

    /// Entries as constants, if every entry is constant.
    pub fn as_constants(&self) -> Option<Vec<Vec<C>>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).as_constant()).collect())
            .collect()
    }

    /// Row-major canonical strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl Matrix<Rational> {
    /// `Some(lambda)` with `self == lambda * other`.
    pub fn proportional_to(&self, other: &Self) -> Option<Rational> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return None;
        }
        let mut lambda: Option<Rational> = None;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                _ => {}
            }
            let l = a.proportional_to(b)?;
            match &lambda {
                None => lambda = Some(l),
                Some(x) if *x == l => {}
                Some(_) => return None,
            }
        }
        lambda
    }

    /// Rank of a matrix of rational constants; `None` if an entry is not constant.
    pub fn constant_rank(&self) -> Option<usize> {
        self.as_constants().map(|rows| rational_rank(rows))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det_bareiss(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Matrix("determinant of a non-square matrix".into()));
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Poly::one(&self.ring);
        let mut sign = false;
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(Poly::zero(&self.ring));
                };
                a.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .ok_or_else(|| Error::Matrix("inexact Bareiss division".into()))?;
                }
                a[i][k] = Poly::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }
}

/// Rank over Q by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] * &inv;
                for c in col..ncols {
                    let t = &f * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Shared memo for Pfaffians of principal submatrices of one skew matrix.
pub struct PfaffianMemo<'a, C: Scalar> {
    matrix: &'a Matrix<C>,
    memo: HashMap<u64, Poly<C>>,
}

impl<'a, C: Scalar> PfaffianMemo<'a, C> {
    pub fn new(matrix: &'a Matrix<C>) -> Result<Self> {
        if !matrix.is_skew() {
            return Err(Error::Matrix("Pfaffian of a non-skew matrix".into()));
        }
        if matrix.nrows() > 64 {
            return Err(Error::Matrix("matrix too large".into()));
        }
        Ok(PfaffianMemo { matrix, memo: HashMap::new() })
    }

    /// Pfaffian of the principal submatrix on the sorted index set `idx`.
    pub fn pfaffian_of(&mut self, idx: &[usize]) -> Result<Poly<C>> {
        if idx.len() % 2 == 1 {
            return Err(Error::Matrix("Pfaffian of an odd-sized matrix".into()));
        }
        let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        Ok(self.rec(mask))
    }

    fn rec(&mut self, mask: u64) -> Poly<C> {
        if mask == 0 {
            return Poly::one(self.matrix.ring());
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = Poly::zero(self.matrix.ring());
        // sign (-1)^k for the k-th element (1-based) of the index set, k >= 2
        let mut k = 1;
        for j in i + 1..self.matrix.nrows() {
            if rest & (1 << j) == 0 {
                continue;
            }
            k += 1;
            let a = self.matrix.get(i, j);
            if a.is_zero() {
                continue;
            }
            let sub = self.rec(rest & !(1 << j));
            let t = a.mul(&sub);
            acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

/// All k-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl<C: Scalar> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.nrows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
