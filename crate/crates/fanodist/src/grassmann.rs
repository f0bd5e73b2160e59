//! The Grassmannian of lines `G(1,n) ⊂ Pᴺ` and computations on `G(1,4) ⊂ P⁹`.
//!
//! Plücker coordinates on `P⁹` are ordered
//! `(p01, p02, p03, p04, p12, p13, p14, p23, p24, p34)` and named `z0 … z9`.
//! The dense chart `z0 = p01 = 1` is parametrized by the line through
//! `(1, 0, u0, u1, u2)` and `(0, 1, v0, v1, v2)`:
//!
//! ```text
//! (z1, …, z9) = (v0, v1, v2, −u0, −u1, −u2, u0v1 − u1v0, u0v2 − u2v0, u1v2 − u2v1)
//! ```
//!
//! with chart variables ordered `(u0, u1, u2, v0, v1, v2)`. One dense chart
//! suffices for class computations: class is a generic-rank invariant and
//! `G(1,4)` is irreducible.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{binomial, bott, CohomologyQuery};
use crate::distribution::{class_symbolic, form_from_skew, ClassResult};
use crate::error::{Error, Result};
use crate::form::{Form, MultiIndex};
use crate::linalg::{axpy, Matrix, SparseEchelon, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::skew::{subsets, Pfaffians, SkewMatrix};

/// Number of chart variables on `G(1,4)`.
pub const CHART_DIM: usize = 6;
/// Number of Plücker coordinates of `G(1,4)`.
pub const PLUCKER_DIM: usize = 10;
/// Number of independent entries of a `10×10` skew matrix.
pub const PARAMS: usize = 45;

/// `N = C(n+1, 2) − 1`.
pub fn plucker_ambient_dim(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "G(1,n) needs n ≥ 3, got {n}"
        )));
    }
    let n = u64::from(n);
    Ok((n + 1) * n / 2 - 1)
}

/// `h⁰(G(1,n), Ω¹(2)) = 3·C(n+2, 4)`, checked against `h⁰(Pᴺ, Ω¹(2))`.
pub fn grass_form_space_dim(n: u32) -> Result<BigUint> {
    let big_n = plucker_ambient_dim(n)? as i64;
    let value = BigUint::from(3u32) * binomial(i64::from(n) + 2, 4);
    let ambient = bott(big_n, CohomologyQuery::new(0, 1, 2)?)?.value;
    if value != ambient {
        return Err(Error::Degenerate(format!(
            "3*C(n+2,4) = {value} differs from h0(P^N, Omega^1(2)) = {ambient}"
        )));
    }
    Ok(value)
}

/// Kernel dimensions of the restriction to a codimension-`i` linear section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionKernel {
    pub n: u32,
    pub i: u32,
    pub ambient_dim: u64,
    /// `i(N+1) − i(i+1)/2`.
    pub kernel_dim: u64,
    /// `h⁰(X_k, O(1)) = N − k + 1` for `k = 1..=i`.
    pub steps: Vec<u64>,
}

pub fn section_kernel_dim(n: u32, i: u32) -> Result<SectionKernel> {
    let big_n = plucker_ambient_dim(n)?;
    let max = 2 * (i64::from(n) - 1) - 4;
    if i64::from(i) > max {
        return Err(Error::Hypothesis(format!(
            "codimension {i} outside the range 0 ≤ i ≤ 2(n−1)−4 = {max}"
        )));
    }
    let i64_ = u64::from(i);
    let kernel_dim = i64_ * (big_n + 1) - i64_ * (i64_ + 1) / 2;
    let steps = (1..=i64_).map(|k| big_n - k + 1).collect();
    Ok(SectionKernel {
        n,
        i,
        ambient_dim: big_n,
        kernel_dim,
        steps,
    })
}

/// `h⁰(X_i, Ω¹(2)) = 3·C(n+2,4) − i(N+1) + i(i+1)/2`.
pub fn section_form_space_dim(n: u32, i: u32) -> Result<BigUint> {
    let total = grass_form_space_dim(n)?;
    let kernel = section_kernel_dim(n, i)?.kernel_dim;
    Ok(total - BigUint::from(kernel))
}

/// Index of `(i, j)`, `i < j < size`, in row-major upper-triangular order.
pub fn pair_index(size: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < size);
    i * size - i * (i + 1) / 2 + (j - i - 1)
}

/// Plücker pairs in coordinate order.
pub fn plucker_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(PLUCKER_DIM);
    for a in 0..5 {
        for b in a + 1..5 {
            out.push((a, b));
        }
    }
    out
}

/// The chart map `z ↦ φ(u, v)` as polynomials in `6 + nparams` variables;
/// the trailing variables are parameters that the pullback passes through.
pub fn chart_map(nparams: usize) -> Vec<Polynomial> {
    let nv = CHART_DIM + nparams;
    let u = |i: usize| Polynomial::var(nv, i);
    let v = |i: usize| Polynomial::var(nv, 3 + i);
    let minor = |a: usize, b: usize| &(&u(a) * &v(b)) - &(&u(b) * &v(a));
    vec![
        Polynomial::one(nv),
        v(0),
        v(1),
        v(2),
        -u(0),
        -u(1),
        -u(2),
        minor(0, 1),
        minor(0, 2),
        minor(1, 2),
    ]
}

/// `φ*ω` for `ω = form_from_skew(M)`.
pub fn plucker_chart_pullback(m: &SkewMatrix) -> Result<Form> {
    if m.size() != PLUCKER_DIM {
        return Err(Error::Dimension(format!(
            "expected a 10x10 skew matrix, got {0}x{0}",
            m.size()
        )));
    }
    form_from_skew(m).pullback(&chart_map(0))
}

/// `ω = Σ a_ij (z_i dz_j − z_j dz_i)` on `P⁹` with the 45 entries `a_ij` as
/// parameter variables `z10 … z54`.
pub fn generic_form() -> Form {
    let nv = PLUCKER_DIM + PARAMS;
    let mut terms = Vec::new();
    for i in 0..PLUCKER_DIM {
        for j in i + 1..PLUCKER_DIM {
            let a = PLUCKER_DIM + pair_index(PLUCKER_DIM, i, j);
            let mut zi = vec![0; nv];
            zi[i] = 1;
            zi[a] = 1;
            let mut zj = vec![0; nv];
            zj[j] = 1;
            zj[a] = 1;
            terms.push((
                vec![j],
                Polynomial::monomial(Monomial::from_exponents(zi), Rational::one()),
            ));
            terms.push((
                vec![i],
                Polynomial::monomial(Monomial::from_exponents(zj), -Rational::one()),
            ));
        }
    }
    Form::from_terms(1, PLUCKER_DIM, nv, terms)
        .expect("well-formed")
        .with_twist(2)
}

/// `φ*ω` for the generic form, with the 45 parameters trailing the chart
/// variables.
pub fn generic_chart_form() -> Result<Form> {
    generic_form().pullback(&chart_map(PARAMS))
}

/// Generic `10×10` skew matrix over `ℚ[a_ij]`.
fn generic_entry(i: usize, j: usize) -> Polynomial {
    use std::cmp::Ordering;
    match i.cmp(&j) {
        Ordering::Equal => Polynomial::zero(PARAMS),
        Ordering::Less => Polynomial::var(PARAMS, pair_index(PLUCKER_DIM, i, j)),
        Ordering::Greater => -Polynomial::var(PARAMS, pair_index(PLUCKER_DIM, j, i)),
    }
}

/// Principal sub-Pfaffians of the generic `10×10` skew matrix.
pub fn generic_sub_pfaffians(size: usize) -> Vec<(Vec<usize>, Polynomial)> {
    let mut pf = Pfaffians::new(generic_entry, Polynomial::zero(PARAMS));
    subsets(PLUCKER_DIM, size)
        .into_iter()
        .map(|s| {
            let p = pf.get(&s);
            (s, p)
        })
        .collect()
}

/// A coefficient slot of `Θ`: a multi-index and a chart monomial.
pub type Slot = (MultiIndex, Vec<u32>);

/// Splits the coefficients of a form whose trailing variables are the
/// parameters into one parameter polynomial per slot.
pub fn slot_coefficients(theta: &Form) -> BTreeMap<Slot, Polynomial> {
    let dim = theta.dim();
    let np = theta.nparams();
    let mut slots: BTreeMap<Slot, Polynomial> = BTreeMap::new();
    for (mi, f) in theta.terms() {
        for (m, c) in f.terms() {
            let (chart, params) = m.exponents().split_at(dim);
            let key = (mi.clone(), chart.to_vec());
            let poly = slots.entry(key).or_insert_with(|| Polynomial::zero(np));
            let mono = Polynomial::monomial(Monomial::from_exponents(params.to_vec()), c.clone());
            *poly = &*poly + &mono;
        }
    }
    slots.retain(|_, p| !p.is_zero());
    slots
}

/// Torus weight of a parameter monomial: `a_kl` has the weight of
/// `z_k · z_l`, where `p_ij` has weight `e_i + e_j` in `ℤ⁵`.
fn torus_weight(m: &Monomial) -> [u32; 5] {
    let pairs = plucker_pairs();
    let mut w = [0u32; 5];
    for k in 0..PLUCKER_DIM {
        for l in k + 1..PLUCKER_DIM {
            let e = m.exponents()[pair_index(PLUCKER_DIM, k, l)];
            if e == 0 {
                continue;
            }
            for (a, b) in [pairs[k], pairs[l]] {
                w[a] += e;
                w[b] += e;
            }
        }
    }
    w
}

fn homogeneous_weight(p: &Polynomial) -> Option<[u32; 5]> {
    let mut it = p.terms().map(|(m, _)| torus_weight(m));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

fn poly_vector(p: &Polynomial) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// One term `λ · a_kl · c_s` of a membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub coefficient: Rational,
    pub pair: (usize, usize),
    pub slot: usize,
}

/// Membership of one size-8 sub-Pfaffian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianMembership {
    pub indices: Vec<usize>,
    pub candidates: usize,
    pub member: bool,
    /// `Pf_I = Σ λ · a_kl · c_s`, empty when not a member.
    pub certificate: Vec<CertificateTerm>,
    /// The certificate was re-expanded and compared exactly.
    pub verified: bool,
}

/// Outcome of the `G(1,4)` chart computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartIdealReport {
    pub slots: usize,
    pub span_dim: usize,
    pub max_coefficient_degree: u64,
    /// Size-8 sub-Pfaffians in the plain ℚ-span of the slot coefficients.
    pub linear_span_members: usize,
    /// Size-6 sub-Pfaffians equal to a scalar multiple of some slot
    /// coefficient.
    pub scalar_matches_size6: usize,
    /// Size-6 sub-Pfaffians in the ℚ-span of the slot coefficients.
    pub span_members_size6: usize,
    /// All slot coefficients are homogeneous for the torus grading, so
    /// candidate products could be filtered by weight.
    pub torus_homogeneous: bool,
    pub memberships: Vec<PfaffianMembership>,
}

impl ChartIdealReport {
    pub fn all_members(&self) -> bool {
        self.memberships.len() == 45 && self.memberships.iter().all(|m| m.member && m.verified)
    }
}

/// `Θ = φ*ω ∧ (dφ*ω)²` for the generic form.
pub fn generic_theta() -> Result<Form> {
    let w = generic_chart_form()?;
    let dw = w.exterior_d();
    let dw2 = dw.wedge(&dw)?;
    w.wedge(&dw2)
}

/// Reproduces the chart computation showing that the coefficients of
/// `φ*ω ∧ (dφ*ω)²` cut out `sec₃(G(1,9))`.
///
/// The coefficients `c_s` are cubic in the `a_ij` while the size-8
/// sub-Pfaffians are quartic, so membership is decided in degree four:
/// `Pf_I ∈ span{a_kl · c_s}`, i.e. in the ideal generated by the
/// coefficients. Each certificate is re-expanded and checked exactly.
pub fn maple_verification() -> Result<ChartIdealReport> {
    let theta = generic_theta()?;
    let slots = slot_coefficients(&theta);
    let coeffs: Vec<Polynomial> = slots.into_values().collect();
    let max_coefficient_degree = coeffs
        .iter()
        .filter_map(Polynomial::total_degree)
        .max()
        .unwrap_or(0);

    let mut span = SparseEchelon::new(false);
    for c in &coeffs {
        span.insert(poly_vector(c));
    }
    let pf8 = generic_sub_pfaffians(8);
    let pf6 = generic_sub_pfaffians(6);
    let linear_span_members = pf8
        .iter()
        .filter(|(_, p)| span.contains(&poly_vector(p)))
        .count();
    let span_members_size6 = pf6
        .iter()
        .filter(|(_, p)| span.contains(&poly_vector(p)))
        .count();
    let scalar_matches_size6 = pf6
        .iter()
        .filter(|(_, p)| coeffs.iter().any(|c| is_scalar_multiple(c, p)))
        .count();

    let weights: Vec<Option<[u32; 5]>> = coeffs.iter().map(homogeneous_weight).collect();
    let torus_homogeneous = weights.iter().all(Option::is_some);
    let pairs: Vec<(usize, usize)> = (0..PLUCKER_DIM)
        .flat_map(|k| (k + 1..PLUCKER_DIM).map(move |l| (k, l)))
        .collect();

    let memberships = pf8
        .par_iter()
        .map(|(indices, target)| {
            let target_weight = homogeneous_weight(target);
            let mut candidates = Vec::new();
            for &(k, l) in &pairs {
                let a = Monomial::var(PARAMS, pair_index(PLUCKER_DIM, k, l));
                let aw = torus_weight(&a);
                for (s, w) in weights.iter().enumerate() {
                    let keep = match (torus_homogeneous, w, target_weight) {
                        (true, Some(w), Some(t)) => (0..5).all(|i| aw[i] + w[i] == t[i]),
                        _ => true,
                    };
                    if keep {
                        candidates.push(((k, l), s));
                    }
                }
            }
            prove_membership(indices.clone(), target, &candidates, &coeffs)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ChartIdealReport {
        slots: coeffs.len(),
        span_dim: span.rank(),
        max_coefficient_degree,
        linear_span_members,
        scalar_matches_size6,
        span_members_size6,
        torus_homogeneous,
        memberships,
    })
}

fn is_scalar_multiple(c: &Polynomial, p: &Polynomial) -> bool {
    if c.len() != p.len() || p.is_zero() {
        return false;
    }
    let mut ratio: Option<Rational> = None;
    for ((mc, vc), (mp, vp)) in c.terms().zip(p.terms()) {
        if mc != mp {
            return false;
        }
        let r = vc / vp;
        match &ratio {
            None => ratio = Some(r),
            Some(x) if *x != r => return false,
            _ => {}
        }
    }
    true
}

fn product(pair: (usize, usize), c: &Polynomial) -> Polynomial {
    let a = Polynomial::var(PARAMS, pair_index(PLUCKER_DIM, pair.0, pair.1));
    &a * c
}

fn prove_membership(
    indices: Vec<usize>,
    target: &Polynomial,
    candidates: &[((usize, usize), usize)],
    coeffs: &[Polynomial],
) -> Result<PfaffianMembership> {
    let mut basis = SparseEchelon::new(true);
    for &(pair, s) in candidates {
        basis.insert(poly_vector(&product(pair, &coeffs[s])));
    }
    let reduction = basis.reduce(&poly_vector(target));
    if !reduction.residual.is_empty() {
        return Ok(PfaffianMembership {
            indices,
            candidates: candidates.len(),
            member: false,
            certificate: Vec::new(),
            verified: false,
        });
    }
    let certificate: Vec<CertificateTerm> = reduction
        .combo
        .iter()
        .map(|(&i, c)| CertificateTerm {
            coefficient: c.clone(),
            pair: candidates[i].0,
            slot: candidates[i].1,
        })
        .collect();
    let mut rebuilt = SparseVec::new();
    for term in &certificate {
        axpy(
            &mut rebuilt,
            &term.coefficient,
            &poly_vector(&product(term.pair, &coeffs[term.slot])),
        );
    }
    let verified = rebuilt == poly_vector(target);
    Ok(PfaffianMembership {
        indices,
        candidates: candidates.len(),
        member: true,
        certificate,
        verified,
    })
}

/// Lighter variant of the chart computation: the `a_ij` are specialized to
/// the first 45 primes, giving a skew matrix of full rank. Some size-8
/// sub-Pfaffian is then nonzero, so the chart form must have class 2.
pub fn maple_verification_sparsified() -> Result<SparsifiedReport> {
    let primes = first_primes(PARAMS);
    let upper: Vec<Rational> = primes
        .iter()
        .map(|&p| Rational::from_integer(p.into()))
        .collect();
    let m = SkewMatrix::from_upper(PLUCKER_DIM, &upper)?;
    let nonzero_pf8 = m
        .sub_pfaffians(8)?
        .values()
        .filter(|v| !v.is_zero())
        .count();
    let w = plucker_chart_pullback(&m)?;
    let dw = w.exterior_d();
    let theta = w.wedge(&dw.wedge(&dw)?)?;
    Ok(SparsifiedReport {
        rank: m.rank(),
        nonzero_pf8,
        theta_terms: theta.len(),
        chart_class: class_symbolic(&w)?.class(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsifiedReport {
    pub rank: usize,
    pub nonzero_pf8: usize,
    pub theta_terms: usize,
    pub chart_class: Option<usize>,
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Class of `ω|_{G(1,4)}` computed on the dense chart.
pub fn class_on_g14(m: &SkewMatrix) -> Result<ClassResult> {
    class_symbolic(&plucker_chart_pullback(m)?)
}

/// `p ∧ q` as a Plücker vector.
pub fn plucker_vector(p: &[Rational], q: &[Rational]) -> Result<Vec<Rational>> {
    if p.len() != 5 || q.len() != 5 {
        return Err(Error::Dimension("points of P⁴ have 5 coordinates".into()));
    }
    Ok(plucker_pairs()
        .into_iter()
        .map(|(a, b)| &p[a] * &q[b] - &p[b] * &q[a])
        .collect())
}

/// The `5×5` skew matrix of a Plücker vector.
pub fn skew_of_plucker(v: &[Rational]) -> Result<SkewMatrix> {
    if v.len() != PLUCKER_DIM {
        return Err(Error::Dimension(format!(
            "Plücker vectors have 10 entries, got {}",
            v.len()
        )));
    }
    SkewMatrix::from_upper(5, v)
}

/// Independent rows among `vectors`, kept in order.
fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if Matrix::from_rows(trial).expect("equal lengths").rank() > kept.len() {
            kept.push(v.clone());
        }
    }
    kept
}

/// A linear `P³ ⊂ P⁹`, given by four independent spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePlane {
    basis: Vec<Vec<Rational>>,
}

impl ThreePlane {
    pub fn new(span: Vec<Vec<Rational>>) -> Result<Self> {
        if span.iter().any(|v| v.len() != PLUCKER_DIM) {
            return Err(Error::Dimension(
                "spanning vectors must have 10 entries".into(),
            ));
        }
        let basis = independent_subset(&span);
        if basis.len() != 4 || span.len() != 4 {
            return Err(Error::Degenerate(format!(
                "{} vectors spanning a {}-dimensional space; need 4 independent vectors",
                span.len(),
                basis.len()
            )));
        }
        Ok(ThreePlane { basis })
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Whether every point of the plane is a Plücker point: all size-4
    /// sub-Pfaffians vanish on the basis and on pairwise sums, which by
    /// polarization of the quadrics covers the whole span.
    pub fn inside_grassmannian(&self) -> Result<bool> {
        let mut points = self.basis.clone();
        for i in 0..4 {
            for j in i + 1..4 {
                points.push(
                    self.basis[i]
                        .iter()
                        .zip(&self.basis[j])
                        .map(|(a, b)| a + b)
                        .collect(),
                );
            }
        }
        for p in &points {
            if skew_of_plucker(p)?
                .sub_pfaffians(4)?
                .values()
                .any(|v| !v.is_zero())
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Linear functionals vanishing on the plane (a basis of six).
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        Matrix::from_rows(self.basis.clone())
            .expect("rectangular")
            .nullspace()
    }
}

/// `H_p`: the lines through `p`, spanned by `p ∧ e_i`.
pub fn lines_through_point(p: &[Rational]) -> Result<ThreePlane> {
    if p.len() != 5 {
        return Err(Error::Dimension(format!(
            "points of P⁴ have 5 coordinates, got {}",
            p.len()
        )));
    }
    if p.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("p is the zero vector".into()));
    }
    let span: Vec<Vec<Rational>> = (0..5)
        .map(|i| {
            let mut e = vec![Rational::zero(); 5];
            e[i] = Rational::one();
            plucker_vector(p, &e)
        })
        .collect::<Result<_>>()?;
    let basis = independent_subset(&span);
    let plane = ThreePlane::new(basis)?;
    if !plane.inside_grassmannian()? {
        return Err(Error::Degenerate("H_p is not contained in G(1,4)".into()));
    }
    Ok(plane)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    Dominant,
    NotDominant,
}

/// Result of the Jacobian test, with the ranks seen at each trial point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub verdict: Dominance,
    pub image_dims: Vec<usize>,
}

/// Half-width of the box random chart points are drawn from.
pub const DOMINANCE_BOX: i64 = 1_000_000;

/// Decides whether the projection from `H` restricted to `G(1,4)` is
/// dominant onto `P⁵`.
///
/// On the chart, `F(x) = L·(1, φ(x))` for the six functionals `L` of the
/// annihilator. The image has dimension `rank [F(x) | ∂F/∂x] − 1` at a
/// general point; the verdict is dominant when that is 5. A second random
/// point is tried before answering not-dominant.
pub fn dominance_test<R: Rng>(h: &ThreePlane, rng: &mut R) -> Result<DominanceReport> {
    let ann = h.annihilator();
    let map = chart_map(0);
    let f: Vec<Polynomial> = ann
        .iter()
        .map(|l| {
            let mut acc = Polynomial::zero(CHART_DIM);
            for (c, z) in l.iter().zip(&map) {
                if !c.is_zero() {
                    acc = &acc + &z.scale(c);
                }
            }
            acc
        })
        .collect();
    let jac: Vec<Vec<Polynomial>> = f
        .iter()
        .map(|fi| (0..CHART_DIM).map(|j| fi.derivative(j)).collect())
        .collect();
    let mut image_dims = Vec::new();
    for _ in 0..2 {
        let x: Vec<Rational> = (0..CHART_DIM)
            .map(|_| Rational::from_integer(rng.gen_range(-DOMINANCE_BOX..=DOMINANCE_BOX).into()))
            .collect();
        let rows = f
            .iter()
            .zip(&jac)
            .map(|(fi, ji)| {
                let mut row = vec![fi.evaluate(&x)?];
                for g in ji {
                    row.push(g.evaluate(&x)?);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = Matrix::from_rows(rows)?.rank().saturating_sub(1);
        image_dims.push(dim);
        if dim == 5 {
            return Ok(DominanceReport {
                verdict: Dominance::Dominant,
                image_dims,
            });
        }
    }
    Ok(DominanceReport {
        verdict: Dominance::NotDominant,
        image_dims,
    })
}

/// A rank-6 `10×10` skew matrix whose kernel is `H_p`, so that its
/// characteristic foliation is the projection from `H_p ⊂ G(1,4)`. The
/// nondegenerate part is `block` (a `6×6` skew matrix of full rank) placed
/// on a complement of `H_p`.
pub fn class_drop_witness(p: &[Rational], block: &SkewMatrix) -> Result<SkewMatrix> {
    if block.size() != 6 || block.rank() != 6 {
        return Err(Error::InvalidArgument(
            "block must be a full-rank 6x6 skew matrix".into(),
        ));
    }
    let hp = lines_through_point(p)?;
    // complete the basis of H_p by coordinate vectors
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut probe = hp.basis().to_vec();
    for i in 0..PLUCKER_DIM {
        let mut e = vec![Rational::zero(); PLUCKER_DIM];
        e[i] = Rational::one();
        probe.push(e.clone());
        if Matrix::from_rows(probe.clone())?.rank() == probe.len() {
            columns.push(e);
        } else {
            probe.pop();
        }
    }
    columns.extend(hp.basis().iter().cloned());
    let c = Matrix::from_fn(PLUCKER_DIM, PLUCKER_DIM, |i, j| columns[j][i].clone());
    let c_inv = c
        .inverse()?
        .ok_or_else(|| Error::Degenerate("basis completion failed".into()))?;
    let padded = Matrix::from_fn(PLUCKER_DIM, PLUCKER_DIM, |i, j| {
        if i < 6 && j < 6 {
            block.entry(i, j).clone()
        } else {
            Rational::zero()
        }
    });
    // M = C^{-T} B C^{-1}
    SkewMatrix::new(c_inv.transpose().mul(&padded)?.mul(&c_inv)?)
}
