//! Skew-symmetric matrices: Pfaffians, sub-Pfaffians, rank and the
//! symplectic normal form.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::json::{self, JsonRational};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// An `(n+1)×(n+1)` skew-symmetric rational matrix, a point of `∧²ℚⁿ⁺¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewMatrix(Matrix);

impl SkewMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                if m[(i, j)] != -m[(j, i)].clone() {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix(m))
    }

    pub fn zero(size: usize) -> Self {
        SkewMatrix(Matrix::zeros(size, size))
    }

    /// Builds the matrix from its strictly upper triangle, read row by row.
    pub fn from_upper(size: usize, upper: &[Rational]) -> Result<Self> {
        let expected = size * size.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::Dimension(format!(
                "{} upper entries for size {size}, expected {expected}",
                upper.len()
            )));
        }
        let mut m = Matrix::zeros(size, size);
        let mut it = upper.iter();
        for i in 0..size {
            for j in i + 1..size {
                let v = it.next().expect("length checked").clone();
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        Ok(SkewMatrix(m))
    }

    /// `x yᵀ − y xᵀ`, the Plücker point of `x ∧ y`.
    pub fn wedge_of(x: &[Rational], y: &[Rational]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}",
                x.len(),
                y.len()
            )));
        }
        let n = x.len();
        Ok(SkewMatrix(Matrix::from_fn(n, n, |i, j| {
            &x[i] * &y[j] - &y[i] * &x[j]
        })))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Parses a JSON array of arrays of rationals.
    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<JsonRational>> = json::from_str(text)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(
            (0..self.size())
                .map(|i| json::rationals(self.0.row(i)))
                .collect::<Vec<_>>(),
        )
        .expect("serializable")
    }

    /// Number of rows, `n + 1`.
    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    /// Projective dimension `n` of the space the matrix acts on.
    pub fn n(&self) -> usize {
        self.size().saturating_sub(1)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.size() != other.size() {
            return Err(Error::Dimension(format!(
                "sizes {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(SkewMatrix(Matrix::from_fn(
            self.size(),
            self.size(),
            |i, j| self.entry(i, j) + other.entry(i, j),
        )))
    }

    pub fn scale(&self, c: &Rational) -> SkewMatrix {
        SkewMatrix(Matrix::from_fn(self.size(), self.size(), |i, j| {
            self.entry(i, j) * c
        }))
    }

    /// `Pᵀ M P`.
    pub fn congruence(&self, p: &Matrix) -> Result<SkewMatrix> {
        let m = p.transpose().mul(&self.0)?.mul(p)?;
        Ok(SkewMatrix(m))
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// A basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.0.nullspace()
    }

    pub fn pfaffian(&self) -> Result<Rational> {
        let n = self.size();
        if n % 2 == 1 {
            return Err(Error::OddSize(n));
        }
        let all: Vec<usize> = (0..n).collect();
        Ok(Pfaffians::new(|i, j| self.entry(i, j).clone(), Rational::zero()).get(&all))
    }

    /// Every principal sub-Pfaffian of the given even size, keyed by its
    /// increasing index set.
    pub fn sub_pfaffians(&self, size: usize) -> Result<BTreeMap<Vec<usize>, Rational>> {
        if size % 2 == 1 {
            return Err(Error::OddSize(size));
        }
        if size > self.size() {
            return Err(Error::Dimension(format!(
                "sub-Pfaffians of size {size} in a {0}x{0} matrix",
                self.size()
            )));
        }
        let mut pf = Pfaffians::new(|i, j| self.entry(i, j).clone(), Rational::zero());
        Ok(subsets(self.size(), size)
            .into_iter()
            .map(|s| {
                let v = pf.get(&s);
                (s, v)
            })
            .collect())
    }

    /// The smallest even size at which every principal sub-Pfaffian
    /// vanishes, or `size + 1` (rounded up to even) if none does.
    pub fn smallest_vanishing_pfaffian_size(&self) -> usize {
        let mut pf = Pfaffians::new(|i, j| self.entry(i, j).clone(), Rational::zero());
        let mut s = 2;
        while s <= self.size() {
            if subsets(self.size(), s)
                .iter()
                .all(|set| pf.get(set).is_zero())
            {
                return s;
            }
            s += 2;
        }
        s
    }

    /// Symplectic Gram–Schmidt. Returns `P` with `Pᵀ M P` equal to
    /// `diag(J, …, J, 0, …, 0)` where `J = [[0, 1], [-1, 0]]` appears `k + 1`
    /// times, together with `k`.
    pub fn normal_form(&self) -> Result<(Matrix, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let n = self.size();
        let form = |x: &[Rational], y: &[Rational]| -> Rational {
            let mut acc = Rational::zero();
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    let m = self.entry(i, j);
                    if !yj.is_zero() && !m.is_zero() {
                        acc += xi * m * yj;
                    }
                }
            }
            acc
        };
        let mut pending: Vec<Vec<Rational>> = Matrix::identity(n).to_rows();
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut pairs = 0;
        loop {
            let mut pivot = None;
            'search: for a in 0..pending.len() {
                for b in a + 1..pending.len() {
                    let v = form(&pending[a], &pending[b]);
                    if !v.is_zero() {
                        pivot = Some((a, b, v));
                        break 'search;
                    }
                }
            }
            let Some((a, b, v)) = pivot else { break };
            let f_raw = pending.remove(b);
            let e = pending.remove(a);
            let inv = v.recip();
            let f: Vec<Rational> = f_raw.iter().map(|x| x * &inv).collect();
            for w in pending.iter_mut() {
                let bwf = form(w, &f);
                let bwe = form(w, &e);
                for i in 0..n {
                    let delta = &bwe * &f[i] - &bwf * &e[i];
                    if !delta.is_zero() {
                        w[i] += delta;
                    }
                }
            }
            columns.push(e);
            columns.push(f);
            pairs += 1;
        }
        columns.extend(pending);
        let p = Matrix::from_fn(n, n, |i, j| columns[j][i].clone());
        Ok((p, pairs - 1))
    }

    /// `diag(J, …, J, 0, …)` with `blocks` copies of `J`.
    pub fn canonical(size: usize, blocks: usize) -> SkewMatrix {
        let mut m = Matrix::zeros(size, size);
        for b in 0..blocks {
            m[(2 * b, 2 * b + 1)] = Rational::one();
            m[(2 * b + 1, 2 * b)] = -Rational::one();
        }
        SkewMatrix(m)
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Ring operations needed by the Pfaffian expansion.
pub trait PfaffianScalar: Clone {
    /// The unit of the ring that `zero` belongs to.
    fn one_like(zero: &Self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
}

impl PfaffianScalar for Rational {
    fn one_like(_: &Self) -> Self {
        Rational::one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

impl PfaffianScalar for Polynomial {
    fn one_like(zero: &Self) -> Self {
        Polynomial::one(zero.nvars())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Pfaffians of principal submatrices, by first-row expansion memoized on
/// index subsets (bitmasks). The memo lives as long as the value, so one
/// instance shares work across many queries.
pub struct Pfaffians<T, F> {
    entry: F,
    zero: T,
    memo: HashMap<u128, T>,
}

impl<T: PfaffianScalar, F: Fn(usize, usize) -> T> Pfaffians<T, F> {
    pub fn new(entry: F, zero: T) -> Self {
        Pfaffians {
            entry,
            zero,
            memo: HashMap::new(),
        }
    }

    /// Pfaffian of the principal submatrix on `indices` (increasing, even
    /// length, all `< 128`).
    pub fn get(&mut self, indices: &[usize]) -> T {
        let mask = indices.iter().fold(0u128, |m, &i| m | (1u128 << i));
        self.by_mask(mask)
    }

    fn by_mask(&mut self, mask: u128) -> T {
        if mask == 0 {
            return self.one_like();
        }
        if mask.count_ones() % 2 == 1 {
            return self.zero.clone();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u128 << first);
        let mut acc = self.zero.clone();
        let mut bits = rest;
        let mut pos = 0usize;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = (self.entry)(first, j);
            if !a.is_zero_value() {
                let sub = self.by_mask(rest & !(1u128 << j));
                if !sub.is_zero_value() {
                    let term = a.mul_ref(&sub);
                    acc = if pos % 2 == 0 {
                        acc.add_ref(&term)
                    } else {
                        acc.sub_ref(&term)
                    };
                }
            }
            pos += 1;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }

    fn one_like(&self) -> T {
        T::one_like(&self.zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn skew(rows: &[&[i64]]) -> SkewMatrix {
        SkewMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_skew() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(SkewMatrix::new(m), Err(Error::NotSkew { row: 0, col: 1 }));
        let d = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(SkewMatrix::new(d), Err(Error::NotSkew { row: 0, col: 0 }));
    }

    #[test]
    fn small_pfaffians() {
        assert_eq!(skew(&[&[0, 1], &[-1, 0]]).pfaffian().unwrap(), int(1));
        assert_eq!(SkewMatrix::canonical(4, 2).pfaffian().unwrap(), int(1));
        // Pf = a01 a23 − a02 a13 + a03 a12
        let m =
            SkewMatrix::from_upper(4, &[int(2), int(3), int(5), int(7), int(11), int(13)]).unwrap();
        assert_eq!(m.pfaffian().unwrap(), int(2 * 13 - 3 * 11 + 5 * 7));
        assert_eq!(SkewMatrix::zero(3).pfaffian(), Err(Error::OddSize(3)));
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let upper: Vec<Rational> = (0..15)
            .map(|k| frac((k * 7 + 3) % 11 - 5, (k % 3) + 1))
            .collect();
        let m = SkewMatrix::from_upper(6, &upper).unwrap();
        let pf = m.pfaffian().unwrap();
        assert_eq!(&pf * &pf, m.matrix().determinant().unwrap());
    }

    #[test]
    fn sub_pfaffians_of_block_matrix() {
        let m = SkewMatrix::canonical(6, 2);
        let subs = m.sub_pfaffians(4).unwrap();
        assert_eq!(subs.len(), 15);
        let nonzero: Vec<_> = subs.iter().filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(nonzero, vec![(&vec![0, 1, 2, 3], &int(1))]);
        let two = m.sub_pfaffians(2).unwrap();
        assert_eq!(two[&vec![0, 1]], int(1));
        assert_eq!(two[&vec![0, 2]], int(0));
        assert_eq!(m.smallest_vanishing_pfaffian_size(), 6);
    }

    #[test]
    fn rank_two_points_are_plucker() {
        let x: Vec<Rational> = [1, 2, -1, 3, 0].iter().map(|&v| int(v)).collect();
        let y: Vec<Rational> = [0, 1, 4, -2, 5].iter().map(|&v| int(v)).collect();
        let m = SkewMatrix::wedge_of(&x, &y).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.sub_pfaffians(4).unwrap().values().all(Zero::is_zero));
        assert_eq!(m.smallest_vanishing_pfaffian_size(), 4);
    }

    #[test]
    fn normal_form_examples() {
        let j = skew(&[&[0, 1], &[-1, 0]]);
        assert_eq!(j.normal_form().unwrap(), (Matrix::identity(2), 0));
        let (p, k) = skew(&[&[0, 2], &[-2, 0]]).normal_form().unwrap();
        assert_eq!(k, 0);
        assert_eq!(
            p,
            Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), frac(1, 2)]]).unwrap()
        );
        assert_eq!(SkewMatrix::zero(3).normal_form(), Err(Error::ZeroMatrix));
    }

    #[test]
    fn normal_form_is_certified() {
        let upper: Vec<Rational> = (0..21).map(|k| int((k * 5 + 1) % 7 - 3)).collect();
        let m = SkewMatrix::from_upper(7, &upper).unwrap();
        let (p, k) = m.normal_form().unwrap();
        assert_eq!(m.congruence(&p).unwrap(), SkewMatrix::canonical(7, k + 1));
        assert_eq!(2 * (k + 1), m.rank());
        assert!(!p.determinant().unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let m = SkewMatrix::from_json(r#"[["0","3/7"],["-3/7",0]]"#).unwrap();
        assert_eq!(m.entry(0, 1), &frac(3, 7));
        let back = SkewMatrix::from_json(&m.to_json_value().to_string()).unwrap();
        assert_eq!(back, m);
        assert!(matches!(
            SkewMatrix::from_json("[[0,1],[1,0]]"),
            Err(Error::NotSkew { .. })
        ));
        assert!(matches!(
            SkewMatrix::from_json("[[0,\"1/0\"]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn subsets_enumerate_in_order() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(4, 2)[0], vec![0, 1]);
        assert_eq!(subsets(4, 2)[5], vec![2, 3]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
