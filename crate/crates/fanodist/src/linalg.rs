//! Exact linear algebra over ℚ.
//!
//! [`Matrix`] is a small dense matrix used for skew matrices, changes of
//! basis and Jacobians. [`SparseEchelon`] is an incremental row-echelon basis
//! over an arbitrary ordered key set; it decides span membership and can
//! return the combination that certifies it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let nrows = rows.len();
        Ok(Matrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let v = &m[(r, j)] * &factor;
                            m[(i, j)] -= v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self·x = 0}`, one vector per free column, with a 1
    /// in that free position.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] / &pivot;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let v = &m[(c, j)] * &factor;
                        m[(i, j)] -= v;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Some solution of `self·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone())))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Sparse vector keyed by an ordered basis.
pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `dst += factor · src`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, factor: &Rational, src: &SparseVec<K>) {
    for (k, v) in src {
        let add = factor * v;
        match dst.get_mut(k) {
            Some(x) => {
                *x += add;
                if x.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), add);
            }
        }
    }
}

struct EchelonRow<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incremental echelon basis. Each stored row has leading coefficient 1 at
/// its smallest key, and remembers how it was built from the inserted
/// vectors (labelled `0, 1, …` in insertion order) when tracking is on.
pub struct SparseEchelon<K> {
    rows: Vec<EchelonRow<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
    track: bool,
}

/// Outcome of reducing a vector against the basis.
pub struct Reduction<K> {
    pub residual: SparseVec<K>,
    /// `v − residual = Σ combo[i] · inserted[i]` (empty unless tracking).
    pub combo: SparseVec<usize>,
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new(track: bool) -> Self {
        SparseEchelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let mut residual = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &Rational)>> = match &cursor {
                    None => Box::new(residual.iter()),
                    Some(c) => Box::new(
                        residual.range((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded)),
                    ),
                };
                it.find(|(k, _)| self.pivots.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((key, coef)) = next else { break };
            let row = &self.rows[self.pivots[&key]];
            let factor = -coef.clone();
            axpy(&mut residual, &factor, &row.vec);
            if self.track {
                axpy(&mut combo, &coef, &row.combo);
            }
            cursor = Some(key);
        }
        Reduction { residual, combo }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).residual.is_empty()
    }

    /// Adds `v` to the spanning set; returns whether it increased the rank.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let label = self.inserted;
        self.inserted += 1;
        let Reduction {
            mut residual,
            combo,
        } = self.reduce(&v);
        let Some((lead, lead_coef)) = residual.iter().next().map(|(k, c)| (k.clone(), c.clone()))
        else {
            return false;
        };
        let mut row_combo = SparseVec::new();
        if self.track {
            // residual = v − Σ combo·inserted
            row_combo.insert(label, Rational::one());
            axpy(&mut row_combo, &-Rational::one(), &combo);
        }
        let inv = lead_coef.recip();
        for c in residual.values_mut() {
            *c *= &inv;
        }
        for c in row_combo.values_mut() {
            *c *= &inv;
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(EchelonRow {
            vec: residual,
            combo: row_combo,
        });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant().unwrap(), int(1));
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().unwrap().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[int(3), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[int(1), int(3)]).unwrap().is_none());
        let c = m(&[&[2, 0], &[0, 0]]);
        assert_eq!(
            c.solve(&[int(1), int(0)]).unwrap().unwrap(),
            vec![frac(1, 2), int(0)]
        );
    }

    #[test]
    fn echelon_membership_with_certificate() {
        let vec =
            |e: &[(u8, i64)]| -> SparseVec<u8> { e.iter().map(|&(k, v)| (k, int(v))).collect() };
        let gens = [
            vec(&[(0, 1), (1, 1)]),
            vec(&[(1, 1), (2, 1)]),
            vec(&[(0, 1), (2, -1)]),
        ];
        let mut e = SparseEchelon::new(true);
        let independent: Vec<bool> = gens.iter().map(|g| e.insert(g.clone())).collect();
        assert_eq!(independent, vec![true, true, false]);
        assert_eq!(e.rank(), 2);

        let target = vec(&[(0, 2), (1, 5), (2, 3)]);
        let red = e.reduce(&target);
        assert!(red.residual.is_empty());
        let mut rebuilt = SparseVec::new();
        for (i, c) in &red.combo {
            axpy(&mut rebuilt, c, &gens[*i]);
        }
        assert_eq!(rebuilt, target);
        assert!(!e.contains(&vec(&[(2, 1)])));
    }
}
