//! Dimension formulas for sheaf cohomology on projective spaces, weighted
//! projective spaces and weighted complete intersections.
//!
//! Every calculator is total over the integers: binomials with negative or
//! out-of-range arguments are zero, and empty ranges contribute nothing.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::skew::subsets;

/// `C(n, k)`, zero unless `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// A value together with the case of the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluated<T> {
    pub value: T,
    pub branch: String,
}

impl<T> Evaluated<T> {
    fn new(value: T, branch: &str) -> Self {
        Evaluated {
            value,
            branch: branch.to_string(),
        }
    }
}

/// `(p, q, t)` for `h^p(Ω^q(t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyQuery {
    pub p: i64,
    pub q: i64,
    pub t: i64,
}

impl CohomologyQuery {
    pub fn new(p: i64, q: i64, t: i64) -> Result<Self> {
        if p < 0 || q < 0 {
            return Err(Error::InvalidArgument(format!(
                "p and q must be non-negative, got p={p}, q={q}"
            )));
        }
        Ok(CohomologyQuery { p, q, t })
    }
}

/// `P(a₀,…,a_N)` with positive, well-formed weights, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSpace {
    weights: Vec<u32>,
}

impl WeightedSpace {
    /// Validates positivity and well-formedness: every `N` of the weights
    /// are coprime.
    pub fn new(mut weights: Vec<u32>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        for i in 0..weights.len() {
            let g = weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0u32, |g, (_, &w)| g.gcd(&w));
            if g != 1 {
                return Err(Error::InvalidWeights(format!(
                    "weights {weights:?} are not well-formed: dropping index {i} leaves gcd {g}"
                )));
            }
        }
        weights.sort_unstable();
        Ok(WeightedSpace { weights })
    }

    /// Ordinary projective space `Pᴺ`.
    pub fn projective(n: usize) -> Self {
        WeightedSpace {
            weights: vec![1; n + 1],
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `N`, one less than the number of weights.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&a| i64::from(a)).sum()
    }
}

/// A weighted complete intersection of the given degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WciSpec {
    space: WeightedSpace,
    degrees: Vec<u32>,
}

impl WciSpec {
    pub fn new(space: WeightedSpace, mut degrees: Vec<u32>) -> Result<Self> {
        if degrees.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument("degrees must be at least 2".into()));
        }
        if degrees.len() >= space.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} equations in a {}-dimensional space leave no positive-dimensional intersection",
                degrees.len(),
                space.dim()
            )));
        }
        degrees.sort_unstable();
        Ok(WciSpec { space, degrees })
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `n = N − c`.
    pub fn dim(&self) -> usize {
        self.space.dim() - self.degrees.len()
    }

    fn require_dim_at_least_three(&self) -> Result<()> {
        if self.dim() < 3 {
            return Err(Error::Hypothesis(format!(
                "needs dimension n ≥ 3, got n = {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// `h^p(Pᴺ, Ω^q(t))` by Bott's formulas.
pub fn bott(n: i64, query: CohomologyQuery) -> Result<Evaluated<BigUint>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "N must be at least 1, got {n}"
        )));
    }
    let CohomologyQuery { p, q, t } = query;
    let in_range = q <= n;
    Ok(if p == 0 && in_range && t > q {
        Evaluated::new(
            binomial(t + n - q, t) * binomial(t - 1, q),
            "p=0, t>q: C(t+N-q,t)*C(t-1,q)",
        )
    } else if t == 0 && p == q && in_range {
        Evaluated::new(BigUint::one(), "t=0, p=q: 1")
    } else if p == n && in_range && t < q - n {
        Evaluated::new(
            binomial(-t + q, -t) * binomial(-t - 1, n - q),
            "p=N, t<q-N: C(-t+q,-t)*C(-t-1,N-q)",
        )
    } else {
        Evaluated::new(BigUint::zero(), "otherwise: 0")
    })
}

/// Number of monomials of weighted degree `t`.
pub fn graded_dim(weights: &[u32], t: i64) -> BigUint {
    if t < 0 {
        return BigUint::zero();
    }
    graded_dims_upto(weights, t as usize)
        .pop()
        .expect("nonempty")
}

/// `dim S_0, …, dim S_t` by coin-change dynamic programming.
fn graded_dims_upto(weights: &[u32], t: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); t + 1];
    table[0] = BigUint::one();
    for &a in weights {
        let a = a as usize;
        for k in a..=t {
            let prev = table[k - a].clone();
            table[k] += prev;
        }
    }
    table
}

/// `h⁰(P(a), Ω̄^q(t))` by the alternating sum over index sets.
pub fn dolgachev_h0(space: &WeightedSpace, q: i64, t: i64) -> Result<Evaluated<BigUint>> {
    if q < 0 {
        return Err(Error::InvalidArgument(format!(
            "q must be non-negative, got {q}"
        )));
    }
    let w = space.weights();
    let q_us = q as usize;
    if q_us > w.len() {
        return Ok(Evaluated::new(BigUint::zero(), "q>N+1: no q-forms"));
    }
    // weights are sorted, so the minimal a_J over #J = q is the prefix sum
    let min_weight: i64 = w[..q_us].iter().map(|&a| i64::from(a)).sum();
    if t < min_weight {
        return Ok(Evaluated::new(BigUint::zero(), "t<min a_J: 0"));
    }
    let mut total = BigInt::zero();
    for i in 0..=q_us {
        let mut inner = BigInt::zero();
        for j in subsets(w.len(), i) {
            let a_j: i64 = j.iter().map(|&k| i64::from(w[k])).sum();
            inner += BigInt::from(graded_dim(w, t - a_j));
        }
        if (i + q_us) % 2 == 0 {
            total += inner;
        } else {
            total -= inner;
        }
    }
    let value = total
        .to_biguint()
        .ok_or_else(|| Error::Degenerate(format!("alternating sum is negative ({total})")))?;
    Ok(Evaluated::new(value, "alternating sum over J"))
}

/// Verdict of a vanishing theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vanishing {
    Zero,
    One,
    PossiblyNonzero,
}

/// Vanishing of `h^p(P(a), Ω̄^q(t))` for `p > 0`.
pub fn dolgachev_vanishing(space: &WeightedSpace, query: CohomologyQuery) -> Evaluated<Vanishing> {
    let n = space.dim() as i64;
    let CohomologyQuery { p, q, t } = query;
    if p != 0 && p != q && p != n {
        Evaluated::new(Vanishing::Zero, "p not in {0,q,N}")
    } else if p == q && t != 0 && p != 0 && p != n {
        Evaluated::new(Vanishing::Zero, "p=q, t!=0, p not in {0,N}")
    } else {
        Evaluated::new(Vanishing::PossiblyNonzero, "no rule applies")
    }
}

/// Hodge numbers and vanishing for `h^p(X, Ω^q_X(t))`, `X` a smooth
/// weighted complete intersection of dimension `n ≥ 3`.
pub fn flenner_vanishing(x: &WciSpec, query: CohomologyQuery) -> Result<Evaluated<Vanishing>> {
    x.require_dim_at_least_three()?;
    let n = x.dim() as i64;
    let CohomologyQuery { p, q, t } = query;
    Ok(if p > n || q > n {
        Evaluated::new(Vanishing::Zero, "p>n or q>n")
    } else if p == q && t == 0 && 2 * q != n {
        Evaluated::new(Vanishing::One, "h^q(Omega^q)=1, q!=n/2")
    } else if 0 < p && p < n && p + q != n && (p != q || t != 0) {
        Evaluated::new(Vanishing::Zero, "0<p<n, p+q!=n, (p!=q or t!=0)")
    } else if p + q > n && t > q - p {
        Evaluated::new(Vanishing::Zero, "p+q>n, t>q-p")
    } else if p + q < n && t < q - p {
        Evaluated::new(Vanishing::Zero, "p+q<n, t<q-p")
    } else {
        Evaluated::new(Vanishing::PossiblyNonzero, "no rule applies")
    })
}

/// Fano index `Σaᵢ − Σdⱼ`.
pub fn wci_index(x: &WciSpec) -> i64 {
    x.space.weight_sum() - x.degrees.iter().map(|&d| i64::from(d)).sum::<i64>()
}

/// `dim (S/(f₁,…,f_c))_t`, the coefficient of `xᵗ` in
/// `∏(1 − x^{dⱼ}) / ∏(1 − x^{aᵢ})`. Assumes the `fⱼ` form a regular
/// sequence.
pub fn wci_hilbert(x: &WciSpec, t: i64) -> BigUint {
    if t < 0 {
        return BigUint::zero();
    }
    let t = t as usize;
    let mut series: Vec<BigInt> = graded_dims_upto(x.space.weights(), t)
        .into_iter()
        .map(BigInt::from)
        .collect();
    for &d in &x.degrees {
        let d = d as usize;
        for k in (d..=t).rev() {
            let lower = series[k - d].clone();
            series[k] -= lower;
        }
    }
    series[t]
        .to_biguint()
        .expect("Hilbert function of a complete intersection is non-negative")
}

/// `h^i(X, O_X(t))`: the graded piece for `i = 0`, zero in between, and by
/// Serre duality `dim S_{−t−ι}` for `i = n`.
pub fn wci_o_cohomology(x: &WciSpec, i: i64, t: i64) -> Result<Evaluated<BigUint>> {
    let n = x.dim() as i64;
    if i < 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "cohomological degree {i} outside [0, {n}]"
        )));
    }
    Ok(if i == 0 {
        Evaluated::new(wci_hilbert(x, t), "i=0: S_t")
    } else if i < n {
        Evaluated::new(BigUint::zero(), "1<=i<=n-1: 0")
    } else {
        Evaluated::new(wci_hilbert(x, -t - wci_index(x)), "i=n: S_{-t-index}")
    })
}

/// Infinitesimal deformation numbers of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDims {
    pub h0_t: BigUint,
    pub h1_t: BigInt,
    pub h2_t: BigUint,
    /// `dim Aut P(a) = Σᵢ dim S_{aᵢ} − 1`.
    pub aut_dim: BigUint,
    /// `Σⱼ h⁰(O_X(dⱼ))`.
    pub sections: BigUint,
}

/// `h⁰(T_X) = 0`, `h¹(T_X) = Σⱼ h⁰(O_X(dⱼ)) − dim Aut P(a)`, `h²(T_X) = 0`,
/// valid when `Σaᵢ − Σdⱼ ≤ n − 1`.
pub fn deformation_dims(x: &WciSpec) -> Result<DeformationDims> {
    x.require_dim_at_least_three()?;
    let index = wci_index(x);
    let n = x.dim() as i64;
    if index > n - 1 {
        return Err(Error::Hypothesis(format!(
            "index {index} exceeds n - 1 = {}; automorphisms need not be finite (e.g. quadrics)",
            n - 1
        )));
    }
    let w = x.space.weights();
    let aut: BigUint = w
        .iter()
        .map(|&a| graded_dim(w, i64::from(a)))
        .sum::<BigUint>()
        - BigUint::one();
    let sections: BigUint = x
        .degrees
        .iter()
        .map(|&d| wci_hilbert(x, i64::from(d)))
        .sum();
    Ok(DeformationDims {
        h0_t: BigUint::zero(),
        h1_t: BigInt::from(sections.clone()) - BigInt::from(aut.clone()),
        h2_t: BigUint::zero(),
        aut_dim: aut,
        sections,
    })
}

/// Upper bound on the number of monomials [`h0_oracle`] will enumerate.
pub const ORACLE_MONOMIAL_LIMIT: usize = 2_000_000;

/// `dim {ω : q-form with coefficients of weighted degree t − a_J, ι_R ω = 0}`
/// by exact null-space computation.
///
/// `ι_R` preserves the total multidegree `β = m · z_J`, so the kernel splits
/// into blocks indexed by monomials `β` of degree `t`. The block for `β`
/// only depends on the support of `β`; each distinct support is solved once
/// by contracting the basis forms and taking the rank.
pub fn h0_oracle(weights: &[u32], q: usize, t: i64) -> Result<BigUint> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    let dim = weights.len();
    if q > dim || t < 0 {
        return Ok(BigUint::zero());
    }
    let count = graded_dim(weights, t);
    if count > BigUint::from(ORACLE_MONOMIAL_LIMIT) {
        return Err(Error::SizeLimit(format!(
            "{count} monomials of degree {t}; limit is {ORACLE_MONOMIAL_LIMIT}"
        )));
    }
    let mut cache: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut total = BigUint::zero();
    for beta in Monomial::of_weighted_degree(weights, t) {
        let support: Vec<usize> = (0..dim).filter(|&i| beta.exponents()[i] > 0).collect();
        let kernel = match cache.get(&support) {
            Some(&k) => k,
            None => {
                let k = euler_block_kernel(weights, &beta, &support, q)?;
                cache.insert(support, k);
                k
            }
        };
        total += BigUint::from(kernel);
    }
    Ok(total)
}

fn euler_block_kernel(
    weights: &[u32],
    beta: &Monomial,
    support: &[usize],
    q: usize,
) -> Result<usize> {
    let dim = weights.len();
    let columns: Vec<Vec<usize>> = subsets(support.len(), q)
        .into_iter()
        .map(|s| s.into_iter().map(|i| support[i]).collect())
        .collect();
    if columns.is_empty() {
        return Ok(0);
    }
    if q == 0 {
        return Ok(1);
    }
    let rows: Vec<Vec<usize>> = subsets(support.len(), q - 1)
        .into_iter()
        .map(|s| s.into_iter().map(|i| support[i]).collect())
        .collect();
    let mut m = Matrix::zeros(rows.len(), columns.len());
    for (c, j) in columns.iter().enumerate() {
        let mut exps = beta.exponents().to_vec();
        for &i in j {
            exps[i] -= 1;
        }
        let coef = Polynomial::monomial(Monomial::from_exponents(exps), Rational::one());
        let basis = Form::from_terms(q, dim, dim, [(j.clone(), coef)])?;
        for (mi, f) in basis.contract_euler(weights)?.terms() {
            let r = rows
                .iter()
                .position(|row| row.as_slice() == mi.indices())
                .expect("contraction stays inside the support");
            let (_, value) = f.terms().next().expect("single term");
            m[(r, c)] = value.clone();
        }
    }
    Ok(columns.len() - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn q(p: i64, q: i64, t: i64) -> CohomologyQuery {
        CohomologyQuery::new(p, q, t).unwrap()
    }

    fn wci(weights: &[u32], degrees: &[u32]) -> WciSpec {
        WciSpec::new(
            WeightedSpace::new(weights.to_vec()).unwrap(),
            degrees.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn bott_values() {
        assert_eq!(bott(3, q(0, 1, 2)).unwrap().value, big(6));
        assert_eq!(bott(9, q(0, 1, 2)).unwrap().value, big(45));
        assert_eq!(bott(5, q(2, 2, 0)).unwrap().value, big(1));
        assert_eq!(bott(4, q(0, 2, 3)).unwrap().value, big(10));
        assert_eq!(bott(3, q(1, 2, 0)).unwrap().value, big(0));
        // h³(P³, O(−4)) = 1, the canonical bundle's dual
        assert_eq!(bott(3, q(3, 0, -4)).unwrap().value, big(1));
    }

    #[test]
    fn graded_dims() {
        assert_eq!(graded_dim(&[1, 1, 1], 2), big(6));
        assert_eq!(graded_dim(&[1, 1, 2], 2), big(4));
        // z3², z3·(degree 3 in 1,1,2) and degree 6 in 1,1,2: 1 + 6 + 16
        assert_eq!(graded_dim(&[1, 1, 2, 3], 6), big(23));
        assert_eq!(graded_dim(&[1, 1], -1), big(0));
        let brute = (0..=6u64)
            .flat_map(|a| {
                (0..=6u64).flat_map(move |b| {
                    (0..=3u64).flat_map(move |c| (0..=2u64).map(move |d| (a, b, c, d)))
                })
            })
            .filter(|&(a, b, c, d)| a + b + 2 * c + 3 * d == 6)
            .count();
        assert_eq!(big(brute as u64), graded_dim(&[1, 1, 2, 3], 6));
        assert_eq!(Monomial::of_weighted_degree(&[1, 1, 2, 3], 6).len(), brute);
    }

    #[test]
    fn dolgachev_values() {
        let p3 = WeightedSpace::projective(3);
        assert_eq!(dolgachev_h0(&p3, 1, 2).unwrap().value, big(6));
        let w = WeightedSpace::new(vec![1, 1, 2]).unwrap();
        assert_eq!(dolgachev_h0(&w, 1, 2).unwrap().value, big(1));
        assert_eq!(h0_oracle(&[1, 1, 2], 1, 2).unwrap(), big(1));
        assert_eq!(dolgachev_h0(&p3, 1, 1).unwrap().value, big(0));
    }

    #[test]
    fn well_formedness() {
        assert!(WeightedSpace::new(vec![1, 2]).is_err());
        assert!(WeightedSpace::new(vec![2, 2, 1]).is_err());
        assert!(WeightedSpace::new(vec![0, 1]).is_err());
        assert_eq!(
            WeightedSpace::new(vec![3, 1, 2]).unwrap().weights(),
            &[1, 2, 3]
        );
    }

    #[test]
    fn vanishing_rules() {
        let p6 = WeightedSpace::projective(6);
        assert_eq!(dolgachev_vanishing(&p6, q(1, 3, 5)).value, Vanishing::Zero);
        assert_eq!(dolgachev_vanishing(&p6, q(2, 2, 1)).value, Vanishing::Zero);
        assert_eq!(
            dolgachev_vanishing(&p6, q(0, 2, 1)).value,
            Vanishing::PossiblyNonzero
        );

        let x4 = wci(&[1; 6], &[3]);
        assert_eq!(
            flenner_vanishing(&x4, q(1, 1, 0)).unwrap().value,
            Vanishing::One
        );
        let x5 = wci(&[1; 7], &[3]);
        assert_eq!(
            flenner_vanishing(&x5, q(1, 2, 0)).unwrap().value,
            Vanishing::Zero
        );
        assert_eq!(
            flenner_vanishing(&x5, q(0, 1, 2)).unwrap().value,
            Vanishing::PossiblyNonzero
        );
        let middle = flenner_vanishing(&x4, q(2, 2, 0)).unwrap();
        assert_eq!(middle.value, Vanishing::PossiblyNonzero);
        assert!(flenner_vanishing(&wci(&[1; 4], &[2]), q(0, 0, 0)).is_err());
    }

    #[test]
    fn del_pezzo_indices() {
        for n in 3..8usize {
            assert_eq!(wci_index(&wci(&vec![1; n + 2], &[3])), n as i64 - 1);
            assert_eq!(wci_index(&wci(&vec![1; n + 3], &[2, 2])), n as i64 - 1);
            let mut w = vec![1; n];
            w.extend([2, 3]);
            assert_eq!(wci_index(&wci(&w, &[6])), n as i64 - 1);
        }
    }

    #[test]
    fn hilbert_values() {
        let cubic = wci(&[1; 5], &[3]);
        assert_eq!(wci_hilbert(&cubic, 3), big(34));
        assert_eq!(wci_hilbert(&cubic, 0), big(1));
        assert_eq!(wci_hilbert(&cubic, 2), big(15));
        assert_eq!(wci_hilbert(&wci(&[1; 6], &[2, 2]), 1), big(6));
    }

    #[test]
    fn structure_sheaf_cohomology() {
        let cubic = wci(&[1; 5], &[3]);
        assert_eq!(wci_o_cohomology(&cubic, 1, 7).unwrap().value, big(0));
        assert_eq!(wci_o_cohomology(&cubic, 0, 3).unwrap().value, big(34));
        // Serre duality: h³(O(t)) = h⁰(O(−t−2))
        assert_eq!(wci_o_cohomology(&cubic, 3, 0).unwrap().value, big(0));
        assert_eq!(wci_o_cohomology(&cubic, 3, -4).unwrap().value, big(15));
        assert!(wci_o_cohomology(&cubic, 4, 0).is_err());
    }

    #[test]
    fn deformations() {
        let cubic = wci(&[1; 5], &[3]);
        let d = deformation_dims(&cubic).unwrap();
        assert_eq!(d.h1_t, BigInt::from(10));
        assert_eq!(d.aut_dim, big(24));
        let quadric = wci(&[1; 5], &[2]);
        assert!(matches!(
            deformation_dims(&quadric),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn oracle_matches_bott_on_small_cases() {
        assert_eq!(h0_oracle(&[1; 4], 1, 2).unwrap(), big(6));
        assert_eq!(h0_oracle(&[1; 5], 2, 3).unwrap(), big(10));
        assert_eq!(h0_oracle(&[1; 4], 1, 1).unwrap(), big(0));
        assert!(matches!(
            h0_oracle(&[1; 30], 1, 12),
            Err(Error::SizeLimit(_))
        ));
    }
}
