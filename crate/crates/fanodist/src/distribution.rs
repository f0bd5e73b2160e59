//! Degree-zero codimension-one distributions on `Pⁿ` and the class of a
//! twisted 1-form.
//!
//! A skew matrix `M = (a_ij)` corresponds to
//! `ω = Σ_{i<j} a_ij (z_i dz_j − z_j dz_i)`, a section of `Ω¹(2)`. The class
//! of `ω` is the largest `k` with `ω ∧ (dω)^k ≠ 0`; it equals `rank M / 2 − 1`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Form, MultiIndex};
use crate::linalg::{Matrix, SparseEchelon, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::skew::{subsets, Pfaffians, SkewMatrix};

/// Outcome of a class computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassResult {
    /// The form vanishes identically, so it has no class.
    ZeroForm,
    /// Class `k`, certified by the nonzero form `ω ∧ (dω)^k`.
    Class { k: usize, certificate: Form },
}

impl ClassResult {
    pub fn class(&self) -> Option<usize> {
        match self {
            ClassResult::ZeroForm => None,
            ClassResult::Class { k, .. } => Some(*k),
        }
    }
}

/// Position of a skew matrix in the secant stratification of `G(1,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub rank: usize,
    #[serde(rename = "class")]
    pub class_k: usize,
    /// `s` with `M ∈ sec_s \ sec_{s−1}`.
    pub stratum: usize,
    /// Smallest even size at which all principal sub-Pfaffians vanish.
    pub vanished_pfaffian_size: usize,
}

/// `ω = Σ_{i<j} a_ij (z_i dz_j − z_j dz_i)`, twist 2.
pub fn form_from_skew(m: &SkewMatrix) -> Form {
    let dim = m.size();
    let mut terms = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let a = m.entry(i, j);
            if a.is_zero() {
                continue;
            }
            let zi = Polynomial::monomial(Monomial::var(dim, i), a.clone());
            let zj = Polynomial::monomial(Monomial::var(dim, j), -a.clone());
            terms.push((vec![j], zi));
            terms.push((vec![i], zj));
        }
    }
    Form::from_terms(1, dim, dim, terms)
        .expect("well-formed terms")
        .with_twist(2)
}

/// Inverse of [`form_from_skew`] on its image.
pub fn skew_from_form(w: &Form) -> Result<SkewMatrix> {
    if w.degree() != 1 || w.nparams() > 0 {
        return Err(Error::InvalidArgument(
            "expected a 1-form without parameters".into(),
        ));
    }
    let dim = w.dim();
    let mut m = Matrix::zeros(dim, dim);
    for (mi, f) in w.terms() {
        let j = mi.indices()[0];
        for (mono, c) in f.terms() {
            let Some(i) = (mono.degree() == 1)
                .then(|| mono.exponents().iter().position(|&e| e == 1))
                .flatten()
            else {
                return Err(Error::InvalidArgument(format!(
                    "coefficient of dz{j} is not linear; not a degree-zero distribution"
                )));
            };
            m[(i, j)] = c.clone();
        }
    }
    let skew = SkewMatrix::new(m).map_err(|_| {
        Error::InvalidArgument("form does not satisfy the Euler condition for a skew matrix".into())
    })?;
    if &form_from_skew(&skew).with_twist(w.twist()) != w {
        return Err(Error::InvalidArgument(
            "form is not of the shape Σ a_ij (z_i dz_j − z_j dz_i)".into(),
        ));
    }
    Ok(skew)
}

/// Class by iterated wedge with `dω` until the product vanishes.
pub fn class_symbolic(w: &Form) -> Result<ClassResult> {
    if w.degree() != 1 {
        return Err(Error::InvalidArgument(format!(
            "class needs a 1-form, got a {}-form",
            w.degree()
        )));
    }
    if w.is_zero() {
        return Ok(ClassResult::ZeroForm);
    }
    let dw = w.exterior_d();
    let mut power = w.clone();
    let mut k = 0;
    loop {
        let next = power.wedge(&dw)?;
        if next.is_zero() {
            return Ok(ClassResult::Class {
                k,
                certificate: power,
            });
        }
        power = next;
        k += 1;
    }
}

/// `ω ∧ (dω)^{k+1}` for `ω = form_from_skew(M)`, assembled directly from the
/// sub-Pfaffians of size `2k+4`:
///
/// `2^{k+1} (k+1)! Σ_I Pf(M_I) Σ_j (−1)^j z_{i_j} dz_{I∖i_j}`.
///
/// `k = −1` gives `ω` itself. No wedge products are formed.
pub fn wedge_power_via_pfaffians(m: &SkewMatrix, k: i64) -> Result<Form> {
    if k < -1 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least -1, got {k}"
        )));
    }
    let dim = m.size();
    let size = (2 * k + 4) as usize;
    let degree = size - 1;
    let twist = 2 * (k + 2);
    if size > dim {
        return Ok(Form::zero(degree, dim).with_twist(twist));
    }
    let mut scale = Rational::one();
    for i in 1..=(k + 1) {
        scale *= Rational::from_integer((2 * i).into());
    }
    let mut pf = Pfaffians::new(|i, j| m.entry(i, j).clone(), Rational::zero());
    let mut terms = Vec::new();
    for set in subsets(dim, size) {
        let p = pf.get(&set);
        if p.is_zero() {
            continue;
        }
        let c = &p * &scale;
        for (pos, &i) in set.iter().enumerate() {
            let coef = if pos % 2 == 0 { c.clone() } else { -c.clone() };
            let mut rest = set.clone();
            rest.remove(pos);
            terms.push((rest, Polynomial::monomial(Monomial::var(dim, i), coef)));
        }
    }
    Ok(Form::from_terms(degree, dim, dim, terms)?.with_twist(twist))
}

/// Class through the rank of `M`, cross-checked against the Pfaffian
/// vanishing threshold.
pub fn class_via_rank(m: &SkewMatrix) -> Result<StratumReport> {
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let rank = m.rank();
    Ok(StratumReport {
        rank,
        class_k: rank / 2 - 1,
        stratum: rank / 2,
        vanished_pfaffian_size: m.smallest_vanishing_pfaffian_size(),
    })
}

/// Change of basis `P` with `Pᵀ M P = diag(J, …, J, 0, …)` and the class.
pub fn skew_normal_form(m: &SkewMatrix) -> Result<(Matrix, usize)> {
    m.normal_form()
}

/// The characteristic form `θ = ω ∧ (dω)^k` of a class-`k` form.
pub fn characteristic_form(w: &Form) -> Result<Form> {
    match class_symbolic(w)? {
        ClassResult::ZeroForm => Err(Error::ZeroForm),
        ClassResult::Class { certificate, .. } => Ok(certificate),
    }
}

/// Projective dimension of the singular locus `P(ker M)`; −1 when empty.
pub fn singular_locus_dim(m: &SkewMatrix) -> Result<i64> {
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok((m.size() - m.rank()) as i64 - 1)
}

type Key = (MultiIndex, Monomial);

fn form_vector(w: &Form) -> SparseVec<Key> {
    let mut v = SparseVec::new();
    for (mi, f) in w.terms() {
        for (m, c) in f.terms() {
            v.insert((mi.clone(), m.clone()), c.clone());
        }
    }
    v
}

/// Weighted twist of a homogeneous form: the common value of
/// `deg f_J + a_J`. `None` for the zero form.
fn form_twist(w: &Form, weights: &[u32]) -> Result<Option<i64>> {
    let mut twist = None;
    for (mi, f) in w.terms() {
        let Some(d) = f.weighted_degree(weights) else {
            return Err(Error::Hypothesis(format!(
                "coefficient of {mi} is not weighted-homogeneous"
            )));
        };
        let t = (d + mi.weight(weights)) as i64;
        match twist {
            None => twist = Some(t),
            Some(s) if s != t => {
                return Err(Error::Hypothesis("form is not weighted-homogeneous".into()));
            }
            _ => {}
        }
    }
    Ok(twist)
}

/// Decides whether the restriction of `eta` to `{f = 0}` vanishes, i.e.
/// whether `eta ∈ f·Ω^q + df∧Ω^{q−1}` in the graded piece of `eta`.
fn vanishes_on_hypersurface(
    eta: &Form,
    f: &Polynomial,
    df: &Form,
    weights: &[u32],
    d: i64,
) -> Result<bool> {
    let Some(twist) = form_twist(eta, weights)? else {
        return Ok(true);
    };
    let dim = weights.len();
    let q = eta.degree();
    let mut basis = SparseEchelon::new(false);
    for mi in subsets(dim, q) {
        let mi = MultiIndex::new(mi)?;
        for m in Monomial::of_weighted_degree(weights, twist - d - mi.weight(weights) as i64) {
            let g = f * &Polynomial::monomial(m, Rational::one());
            let gen = Form::from_terms(q, dim, dim, [(mi.indices().to_vec(), g)])?;
            basis.insert(form_vector(&gen));
        }
    }
    if q >= 1 {
        for mi in subsets(dim, q - 1) {
            let mi = MultiIndex::new(mi)?;
            for m in Monomial::of_weighted_degree(weights, twist - d - mi.weight(weights) as i64) {
                let b = Form::from_terms(
                    q - 1,
                    dim,
                    dim,
                    [(
                        mi.indices().to_vec(),
                        Polynomial::monomial(m, Rational::one()),
                    )],
                )?;
                basis.insert(form_vector(&df.wedge(&b)?));
            }
        }
    }
    Ok(basis.contains(&form_vector(eta)))
}

/// Class of `ω|_X` for the hypersurface `X = {f = 0} ⊂ P(weights)`,
/// assumed smooth.
///
/// `ω∧(dω)^{k+1}` restricts to zero exactly when it lies in
/// `f·Ω + df∧Ω` on the affine cone, which is decided by exact linear
/// algebra in the relevant graded piece. Forms of degree above `dim X`
/// vanish on `X` without a test.
pub fn restrict_class(w: &Form, f: &Polynomial, weights: &[u32]) -> Result<ClassResult> {
    let dim = weights.len();
    if weights.contains(&0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    if w.degree() != 1 || w.dim() != dim || w.nparams() > 0 {
        return Err(Error::Dimension(format!(
            "expected a 1-form on {dim} coordinates, got a {}-form on {}",
            w.degree(),
            w.dim()
        )));
    }
    if f.nvars() != dim {
        return Err(Error::VarcountMismatch {
            left: dim,
            right: f.nvars(),
        });
    }
    if f.is_zero() {
        return Err(Error::Degenerate("hypersurface equation is zero".into()));
    }
    if dim < 3 {
        return Err(Error::Dimension(
            "hypersurface must have positive dimension".into(),
        ));
    }
    let Some(d) = f.weighted_degree(weights) else {
        return Err(Error::Hypothesis(
            "hypersurface equation is not weighted-homogeneous".into(),
        ));
    };
    let d = d as i64;
    if !w.contract_euler(weights)?.is_zero() {
        return Err(Error::Hypothesis(
            "form does not satisfy the Euler condition".into(),
        ));
    }
    form_twist(w, weights)?;
    let dim_x = dim - 2;
    let df = Form::function(f.clone(), dim)?.exterior_d();

    if vanishes_on_hypersurface(w, f, &df, weights, d)? {
        return Ok(ClassResult::ZeroForm);
    }
    let dw = w.exterior_d();
    let mut power = w.clone();
    let mut k = 0;
    loop {
        if 2 * k + 3 > dim_x {
            return Ok(ClassResult::Class {
                k,
                certificate: power,
            });
        }
        let next = power.wedge(&dw)?;
        if vanishes_on_hypersurface(&next, f, &df, weights, d)? {
            return Ok(ClassResult::Class {
                k,
                certificate: power,
            });
        }
        power = next;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::text::{parse_form, parse_polynomial};

    fn skew_upper(size: usize, vals: &[i64]) -> SkewMatrix {
        SkewMatrix::from_upper(size, &vals.iter().map(|&v| int(v)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn skew_form_correspondence() {
        let j = SkewMatrix::canonical(2, 1);
        assert_eq!(
            form_from_skew(&j),
            parse_form("z0 dz1 - z1 dz0", 2).unwrap().with_twist(2)
        );
        assert!(form_from_skew(&SkewMatrix::zero(4)).is_zero());
        let m = skew_upper(4, &[1, -2, 3, 5, -7, 11]);
        let w = form_from_skew(&m);
        assert!(w.contract_euler(&[1, 1, 1, 1]).unwrap().is_zero());
        assert!(w.is_valid_on(&[1, 1, 1, 1]));
        assert_eq!(skew_from_form(&w).unwrap(), m);
        assert!(skew_from_form(&parse_form("z0 dz1", 2).unwrap()).is_err());
    }

    #[test]
    fn class_of_normal_forms() {
        let w0 = parse_form("z0 dz1 - z1 dz0", 4).unwrap();
        assert_eq!(class_symbolic(&w0).unwrap().class(), Some(0));
        let w1 = parse_form("z0 dz1 - z1 dz0 + z2 dz3 - z3 dz2", 4).unwrap();
        assert_eq!(class_symbolic(&w1).unwrap().class(), Some(1));
        let w1p5 = parse_form("z0 dz1 - z1 dz0 + z2 dz3 - z3 dz2", 6).unwrap();
        match class_symbolic(&w1p5).unwrap() {
            ClassResult::Class { k: 1, certificate } => {
                assert_eq!(certificate.degree(), 3);
                assert!(!certificate.is_zero());
                assert!(certificate
                    .terms()
                    .all(|(mi, _)| mi.indices().iter().all(|&i| i < 4)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            class_symbolic(&Form::zero(1, 3)).unwrap(),
            ClassResult::ZeroForm
        );
    }

    #[test]
    fn contact_certificate_is_volume_multiple() {
        let w = form_from_skew(&SkewMatrix::canonical(6, 3));
        let theta = characteristic_form(&w).unwrap();
        assert_eq!(theta.degree(), 5);
        // ι_R of 3!·2³·dz0..dz5: every 5-subset appears with a linear coefficient
        assert_eq!(theta.len(), 6);
        assert_eq!(
            theta,
            wedge_power_via_pfaffians(&SkewMatrix::canonical(6, 3), 1).unwrap()
        );
    }

    #[test]
    fn pfaffian_expansion_matches_wedge() {
        let m = skew_upper(6, &[1, 2, 0, -1, 3, 4, -2, 1, 0, 5, 1, -3, 2, 2, 7]);
        let w = form_from_skew(&m);
        let dw = w.exterior_d();
        let mut power = w.clone();
        for k in -1..=2i64 {
            if k >= 0 {
                power = power.wedge(&dw).unwrap();
            }
            assert_eq!(wedge_power_via_pfaffians(&m, k).unwrap(), power, "k = {k}");
        }
    }

    #[test]
    fn expansion_of_low_rank_vanishes() {
        let m = SkewMatrix::canonical(6, 2);
        assert!(wedge_power_via_pfaffians(&m, 1).unwrap().is_zero());
        assert_eq!(
            wedge_power_via_pfaffians(&m, -1).unwrap(),
            form_from_skew(&m)
        );
        assert!(wedge_power_via_pfaffians(&m, 2).unwrap().is_zero());
    }

    #[test]
    fn stratum_reports() {
        let r = class_via_rank(&SkewMatrix::canonical(5, 1)).unwrap();
        assert_eq!(
            (r.rank, r.class_k, r.stratum, r.vanished_pfaffian_size),
            (2, 0, 1, 4)
        );
        let r = class_via_rank(&SkewMatrix::canonical(4, 2)).unwrap();
        assert_eq!((r.class_k, r.stratum), (1, 2));
        let r = class_via_rank(&SkewMatrix::canonical(10, 3)).unwrap();
        assert_eq!((r.class_k, r.stratum, r.vanished_pfaffian_size), (2, 3, 8));
        let sym = class_symbolic(&form_from_skew(&SkewMatrix::canonical(10, 3))).unwrap();
        assert_eq!(sym.class(), Some(2));
        assert_eq!(class_via_rank(&SkewMatrix::zero(3)), Err(Error::ZeroMatrix));
    }

    #[test]
    fn singular_loci() {
        assert_eq!(
            singular_locus_dim(&SkewMatrix::canonical(4, 2)).unwrap(),
            -1
        );
        assert_eq!(singular_locus_dim(&SkewMatrix::canonical(5, 2)).unwrap(), 0);
        assert_eq!(singular_locus_dim(&SkewMatrix::canonical(7, 1)).unwrap(), 4);
    }

    #[test]
    fn restriction_to_quadrics() {
        let q4 = parse_polynomial("z0^2 + z1^2 + z2^2 + z3^2 + z4^2 + z5^2", 6).unwrap();
        let ones = [1u32; 6];
        let contact = form_from_skew(&SkewMatrix::canonical(6, 3));
        assert_eq!(
            restrict_class(&contact, &q4, &ones).unwrap().class(),
            Some(1)
        );
        let k1 = form_from_skew(&SkewMatrix::canonical(6, 2));
        assert_eq!(restrict_class(&k1, &q4, &ones).unwrap().class(), Some(1));
        let k0 = form_from_skew(&SkewMatrix::canonical(6, 1));
        assert_eq!(restrict_class(&k0, &q4, &ones).unwrap().class(), Some(0));

        let q3 = parse_polynomial("z0*z3 + z1*z4 + z2^2", 5).unwrap();
        let k1p4 = form_from_skew(&SkewMatrix::canonical(5, 2));
        assert_eq!(
            restrict_class(&k1p4, &q3, &[1; 5]).unwrap().class(),
            Some(1)
        );
    }

    #[test]
    fn restriction_to_hyperplanes() {
        let w = form_from_skew(&SkewMatrix::canonical(4, 1));
        let transverse = parse_polynomial("z2", 4).unwrap();
        assert_eq!(
            restrict_class(&w, &transverse, &[1; 4]).unwrap().class(),
            Some(0)
        );
        // z0 dz1 − z1 dz0 vanishes identically on {z0 = 0}
        let through = parse_polynomial("z0", 4).unwrap();
        assert_eq!(
            restrict_class(&w, &through, &[1; 4]).unwrap(),
            ClassResult::ZeroForm
        );
    }
}
