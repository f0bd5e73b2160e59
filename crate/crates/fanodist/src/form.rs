//! Polynomial-coefficient differential forms on affine space.
//!
//! A [`Form`] is an affine representative: a sum of `f_J dz_J` over strictly
//! increasing multi-indices `J`, together with a twist that records which
//! line bundle the form is meant to be a section of. Whether the
//! representative actually descends to a (weighted) projective space is a
//! separate predicate, [`Form::is_valid_on`].
//!
//! Coefficient polynomials may carry extra *parameter* variables after the
//! `dim` coordinate variables. Parameters have no differentials: `d` ignores
//! them and pullback passes them through unchanged.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Strictly increasing list of coordinate indices, `dz_{i₀}∧…∧dz_{i_q}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "multi-index {indices:?} is not strictly increasing"
            )));
        }
        Ok(MultiIndex(indices))
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sorts an arbitrary index list, returning the sign of the sorting
    /// permutation, or `None` if an index repeats (the wedge vanishes).
    pub fn sorted(mut indices: Vec<usize>) -> Option<(MultiIndex, bool)> {
        let mut negative = false;
        // insertion sort: counts transpositions directly
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(indices), negative))
    }

    /// `dz_I ∧ dz_J = ± dz_K`. Returns `(K, negative)` or `None` when the
    /// index sets overlap.
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, bool)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut inversions = 0usize;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over the a[i..] still pending
                    inversions += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((MultiIndex(out), inversions % 2 == 1))
    }

    /// The index with position `pos` removed.
    pub fn without(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    pub fn weight(&self, weights: &[u32]) -> u64 {
        self.0.iter().map(|&i| u64::from(weights[i])).sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("^")?;
            }
            write!(f, "dz{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    degree: usize,
    twist: i64,
    dim: usize,
    nvars: usize,
    coeffs: BTreeMap<MultiIndex, Polynomial>,
}

impl Form {
    /// The zero `degree`-form on `dim`-dimensional affine space.
    pub fn zero(degree: usize, dim: usize) -> Self {
        Self::zero_with_params(degree, dim, 0)
    }

    pub fn zero_with_params(degree: usize, dim: usize, nparams: usize) -> Self {
        Form {
            degree,
            twist: 0,
            dim,
            nvars: dim + nparams,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: Polynomial, dim: usize) -> Result<Self> {
        let mut form = Self::zero_with_params(0, dim, f.nvars().saturating_sub(dim));
        form.check_poly(&f)?;
        if !f.is_zero() {
            form.coeffs.insert(MultiIndex::empty(), f);
        }
        Ok(form)
    }

    /// `dz_i` with constant coefficient 1.
    pub fn differential(i: usize, dim: usize) -> Self {
        assert!(i < dim);
        let mut form = Self::zero(1, dim);
        form.coeffs
            .insert(MultiIndex(vec![i]), Polynomial::one(dim));
        form
    }

    /// Builds `Σ f_J dz_J`. Index lists need not be sorted; repeated
    /// multi-indices are summed.
    pub fn from_terms<I>(degree: usize, dim: usize, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        if nvars < dim {
            return Err(Error::Dimension(format!(
                "{nvars} variables cannot carry {dim} coordinates"
            )));
        }
        let mut form = Self::zero_with_params(degree, dim, nvars - dim);
        for (idx, f) in terms {
            if idx.len() != degree {
                return Err(Error::Dimension(format!(
                    "multi-index {idx:?} has length {} in a {degree}-form",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::Dimension(format!(
                    "dz{bad} out of range for dimension {dim}"
                )));
            }
            form.check_poly(&f)?;
            if let Some((mi, negative)) = MultiIndex::sorted(idx) {
                let f = if negative { -f } else { f };
                form.accumulate(mi, &f, &Rational::one());
            }
        }
        Ok(form)
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::VarcountMismatch {
                left: self.nvars,
                right: f.nvars(),
            });
        }
        Ok(())
    }

    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Number of coordinate variables (those with a differential).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total variables in the coefficient ring, coordinates plus parameters.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nparams(&self) -> usize {
        self.nvars - self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in ascending multi-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Option<&Polynomial> {
        self.coeffs.get(&MultiIndex(indices.to_vec()))
    }

    fn accumulate(&mut self, mi: MultiIndex, f: &Polynomial, factor: &Rational) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(mi) {
            Entry::Vacant(v) => {
                let g = f.scale(factor);
                if !g.is_zero() {
                    v.insert(g);
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(f, factor);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "forms live on {} and {} coordinates",
                self.dim, other.dim
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::VarcountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Sum of two forms of the same degree. The twist of `self` is kept.
    pub fn add(&self, other: &Form) -> Result<Form> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &Form, factor: &Rational) -> Result<Form> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !other.is_zero() && !self.is_zero() {
            return Err(Error::Dimension(format!(
                "cannot add a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() && !other.is_zero() {
            Form {
                degree: other.degree,
                twist: other.twist,
                ..self.clone()
            }
        } else {
            self.clone()
        };
        for (mi, f) in &other.coeffs {
            out.accumulate(mi.clone(), f, factor);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Form {
        let mut out = Form {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        if c.is_zero() {
            return out;
        }
        for (mi, f) in &self.coeffs {
            out.coeffs.insert(mi.clone(), f.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by `g`.
    pub fn mul_poly(&self, g: &Polynomial) -> Result<Form> {
        self.check_poly(g)?;
        let mut out = Form {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (mi, f) in &self.coeffs {
            let h = f * g;
            if !h.is_zero() {
                out.coeffs.insert(mi.clone(), h);
            }
        }
        Ok(out)
    }

    /// `a ∧ b`. Degrees and twists add; the result is the zero form when the
    /// degree exceeds the dimension.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        let mut out = Form {
            degree: self.degree + other.degree,
            twist: self.twist + other.twist,
            dim: self.dim,
            nvars: self.nvars,
            coeffs: BTreeMap::new(),
        };
        if out.degree > self.dim {
            return Ok(out);
        }
        let minus_one = -Rational::one();
        let plus_one = Rational::one();
        for (i, f) in &self.coeffs {
            for (j, g) in &other.coeffs {
                if let Some((k, negative)) = i.merge(j) {
                    let fg = f * g;
                    out.accumulate(k, &fg, if negative { &minus_one } else { &plus_one });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative with respect to the coordinate variables.
    pub fn exterior_d(&self) -> Form {
        let mut out = Form {
            degree: self.degree + 1,
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        if out.degree > self.dim {
            return out;
        }
        let one = Rational::one();
        let minus_one = -Rational::one();
        for (mi, f) in &self.coeffs {
            for var in 0..self.dim {
                let df = f.derivative(var);
                if df.is_zero() {
                    continue;
                }
                let single = MultiIndex(vec![var]);
                if let Some((k, negative)) = single.merge(mi) {
                    out.accumulate(k, &df, if negative { &minus_one } else { &one });
                }
            }
        }
        out
    }

    /// Contraction with the weighted radial field `Σ aᵢ zᵢ ∂/∂zᵢ`.
    pub fn contract_euler(&self, weights: &[u32]) -> Result<Form> {
        if weights.len() != self.dim {
            return Err(Error::Dimension(format!(
                "{} weights for {} coordinates",
                weights.len(),
                self.dim
            )));
        }
        let mut out = Form {
            degree: self.degree.saturating_sub(1),
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        if self.degree == 0 {
            return Ok(out);
        }
        for (mi, f) in &self.coeffs {
            for (pos, &i) in mi.indices().iter().enumerate() {
                let zf = mul_var(f, i);
                let mut c = Rational::from_integer(weights[i].into());
                if pos % 2 == 1 {
                    c = -c;
                }
                out.accumulate(mi.without(pos), &zf, &c);
            }
        }
        Ok(out)
    }

    /// Pulls the form back along `zᵢ ↦ map[i]` for the coordinate variables.
    ///
    /// Every entry of `map` lives in a ring whose trailing variables are the
    /// same parameters as `self`; the target dimension is the entries'
    /// variable count minus the parameter count.
    pub fn pullback(&self, map: &[Polynomial]) -> Result<Form> {
        if map.len() != self.dim {
            return Err(Error::Dimension(format!(
                "pullback map has {} entries for {} coordinates",
                map.len(),
                self.dim
            )));
        }
        let target_vars = match map.first() {
            Some(p) => p.nvars(),
            None => self.nvars,
        };
        if let Some(bad) = map.iter().find(|p| p.nvars() != target_vars) {
            return Err(Error::VarcountMismatch {
                left: target_vars,
                right: bad.nvars(),
            });
        }
        let nparams = self.nparams();
        if target_vars < nparams {
            return Err(Error::Dimension(
                "pullback target has fewer variables than parameters".into(),
            ));
        }
        let target_dim = target_vars - nparams;

        let mut subst: Vec<Polynomial> = map.to_vec();
        for j in 0..nparams {
            subst.push(Polynomial::var(target_vars, target_dim + j));
        }
        let differentials: Vec<Form> = map
            .iter()
            .map(|p| {
                let terms = (0..target_dim).map(|j| (vec![j], p.derivative(j)));
                Form::from_terms(1, target_dim, target_vars, terms)
            })
            .collect::<Result<_>>()?;

        let mut out =
            Form::zero_with_params(self.degree, target_dim, nparams).with_twist(self.twist);
        for (mi, f) in &self.coeffs {
            let g = f.substitute(&subst)?;
            if g.is_zero() {
                continue;
            }
            let mut term = Form::function(g, target_dim)?;
            for &i in mi.indices() {
                term = term.wedge(&differentials[i])?;
                if term.is_zero() {
                    break;
                }
            }
            for (k, h) in term.coeffs {
                out.accumulate(k, &h, &Rational::one());
            }
        }
        Ok(out)
    }

    /// True when every coefficient is weighted-homogeneous of degree
    /// `twist − a_J` and the Euler contraction vanishes, i.e. the form
    /// descends to `P(weights)`.
    pub fn is_valid_on(&self, weights: &[u32]) -> bool {
        if weights.len() != self.dim || self.nparams() > 0 {
            return false;
        }
        let homogeneous = self.coeffs.iter().all(|(mi, f)| {
            let target = self.twist - mi.weight(weights) as i64;
            f.is_weighted_homogeneous(weights, target)
        });
        homogeneous
            && self
                .contract_euler(weights)
                .map(|c| c.is_zero())
                .unwrap_or(false)
    }

    /// Replaces every coefficient by `f(point)` in the parameters only;
    /// `values` has one entry per parameter.
    pub fn specialize_params(&self, values: &[Rational]) -> Result<Form> {
        if values.len() != self.nparams() {
            return Err(Error::Dimension(format!(
                "{} parameter values for {} parameters",
                values.len(),
                self.nparams()
            )));
        }
        let mut subst: Vec<Polynomial> = (0..self.dim)
            .map(|i| Polynomial::var(self.dim, i))
            .collect();
        subst.extend(
            values
                .iter()
                .map(|v| Polynomial::constant(self.dim, v.clone())),
        );
        let terms = self
            .coeffs
            .iter()
            .map(|(mi, f)| Ok((mi.indices().to_vec(), f.substitute(&subst)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Form::from_terms(self.degree, self.dim, self.dim, terms)?.with_twist(self.twist))
    }
}

fn mul_var(f: &Polynomial, i: usize) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for (m, c) in f.terms() {
        out.add_term(m.mul_var(i), c.clone());
    }
    out
}

/// Free-function forms of the core operations.
pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.wedge(b)
}

pub fn exterior_d(a: &Form) -> Form {
    a.exterior_d()
}

pub fn contract_euler(a: &Form, weights: &[u32]) -> Result<Form> {
    a.contract_euler(weights)
}

pub fn pullback(a: &Form, map: &[Polynomial]) -> Result<Form> {
    a.pullback(map)
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_form(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_form, parse_polynomial};

    #[test]
    fn wedge_of_differentials_anticommutes() {
        let dz0 = Form::differential(0, 2);
        let dz1 = Form::differential(1, 2);
        let a = dz1.wedge(&dz0).unwrap();
        let b = dz0.wedge(&dz1).unwrap();
        assert_eq!(a, b.scale(&-Rational::one()));
        assert!(dz0.wedge(&dz0).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_rotation_form() {
        let w = parse_form("z0 dz1 - z1 dz0", 2).unwrap();
        assert_eq!(w.exterior_d(), parse_form("2 dz0^dz1", 2).unwrap());
    }

    #[test]
    fn euler_contraction() {
        let w = parse_form("z2 dz0^dz1", 3).unwrap();
        let expected = parse_form("z0*z2 dz1 - z1*z2 dz0", 3).unwrap();
        assert_eq!(w.contract_euler(&[1, 1, 1]).unwrap(), expected);
        let weighted = w.contract_euler(&[2, 3, 1]).unwrap();
        assert_eq!(
            weighted,
            parse_form("2*z0*z2 dz1 - 3*z1*z2 dz0", 3).unwrap()
        );
    }

    #[test]
    fn pullback_along_parabola() {
        let w = parse_form("z0 dz1 - z1 dz0", 2).unwrap();
        let map = [
            parse_polynomial("z0", 1).unwrap(),
            parse_polynomial("z0^2", 1).unwrap(),
        ];
        let pulled = w.pullback(&map).unwrap();
        assert_eq!(pulled, parse_form("z0^2 dz0", 1).unwrap());
    }

    #[test]
    fn parameters_survive_pullback_and_have_no_differential() {
        // a·z0 dz1 with a parameter a = z2
        let w = crate::text::parse_form_with_vars("z0*z2 dz1", 2, 3).unwrap();
        assert_eq!(w.nparams(), 1);
        assert_eq!(
            w.exterior_d(),
            crate::text::parse_form_with_vars("z2 dz0^dz1", 2, 3).unwrap()
        );
        let map = [
            parse_polynomial("z0", 2).unwrap(),
            parse_polynomial("z0", 2).unwrap(),
        ];
        let pulled = w.pullback(&map).unwrap();
        assert_eq!(
            pulled,
            crate::text::parse_form_with_vars("z0*z1 dz0", 1, 2).unwrap()
        );
        let special = w.specialize_params(&[crate::rational::int(3)]).unwrap();
        assert_eq!(special, parse_form("3*z0 dz1", 2).unwrap());
    }

    #[test]
    fn validity_on_projective_space() {
        let w = parse_form("z0 dz1 - z1 dz0", 2).unwrap().with_twist(2);
        assert!(w.is_valid_on(&[1, 1]));
        let bad = parse_form("z0 dz1", 2).unwrap().with_twist(2);
        assert!(!bad.is_valid_on(&[1, 1]));
        assert!(!w.clone().with_twist(3).is_valid_on(&[1, 1]));
    }

    #[test]
    fn mixed_shapes_are_rejected() {
        let a = Form::differential(0, 2);
        let b = Form::differential(0, 3);
        assert!(matches!(a.wedge(&b), Err(Error::Dimension(_))));
        let c = Form::differential(0, 2)
            .wedge(&Form::differential(1, 2))
            .unwrap();
        assert!(a.add(&c).is_err());
        assert!(MultiIndex::new(vec![2, 1]).is_err());
    }
}
