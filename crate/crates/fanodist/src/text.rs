//! Canonical text form of polynomials and differential forms.
//!
//! ```text
//! form     := ws ( fterm ( ws sign ws fterm )* ) ws
//! fterm    := [sign ws] ( coeff [ws ['*' ws] diff] | diff )
//! coeff    := '(' poly ')' | product
//! poly     := ws [sign ws] product ( ws sign ws product )* ws
//! product  := factor ( ws '*' ws factor )*
//! factor   := rational | var
//! var      := 'z' digits [ '^' digits ]
//! rational := digits [ '/' digits ]
//! diff     := 'dz' digits ( ws '^' ws 'dz' digits )*
//! sign     := '+' | '-'
//! ```
//!
//! All terms of a form must have the same number of differentials; a term
//! with none is a 0-form. `dz` indices may appear in any order and are
//! sorted with the matching sign. Output is canonical: polynomial terms in
//! descending lexicographic order of exponent vectors, form terms in
//! ascending multi-index order, e.g. `3/2*z0^2*z1 dz0^dz2 - z1 dz3`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "z{i}")?;
        } else {
            write!(f, "z{i}^{e}")?;
        }
    }
    Ok(())
}

/// Writes `|c|·m` without sign.
fn write_unsigned_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational) -> fmt::Result {
    let abs = c.abs();
    if m.is_one() {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    write_monomial(f, m)
}

pub(crate) fn write_polynomial(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        write_unsigned_term(f, m, c)?;
    }
    Ok(())
}

pub(crate) fn write_form(f: &mut fmt::Formatter<'_>, form: &Form) -> fmt::Result {
    if form.is_zero() {
        return f.write_str("0");
    }
    for (k, (mi, p)) in form.terms().enumerate() {
        let single = (p.len() == 1).then(|| p.terms().next().unwrap());
        let neg = single.is_some_and(|(_, c)| c.is_negative());
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        match single {
            Some((m, c)) if mi.is_empty() => write_unsigned_term(f, m, c)?,
            Some((m, c)) if m.is_one() && c.abs().is_one() => {}
            Some((m, c)) => {
                write_unsigned_term(f, m, c)?;
                f.write_str(" ")?;
            }
            None => {
                write!(f, "({p})")?;
                if !mi.is_empty() {
                    f.write_str(" ")?;
                }
            }
        }
        write!(f, "{mi}")?;
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            nvars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_number(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse()
            .map_err(|_| Error::parse(start, format!("{what} too large")))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let num = self.digits()?;
        let mut den = "1";
        if self.peek() == Some(b'/') {
            self.pos += 1;
            den = self.digits()?;
        }
        let n: num_bigint::BigInt = num.parse().expect("digits");
        let d: num_bigint::BigInt = den.parse().expect("digits");
        if d.is_zero() {
            return Err(Error::parse(start, "zero denominator"));
        }
        Ok(Rational::new(n, d))
    }

    fn var(&mut self, exps: &mut [u32]) -> Result<()> {
        debug_assert_eq!(self.peek(), Some(b'z'));
        self.pos += 1;
        let idx_pos = self.pos;
        let i = self.small_number("variable index")?;
        if i >= self.nvars {
            return Err(Error::parse(
                idx_pos,
                format!("variable z{i} out of range for {} variables", self.nvars),
            ));
        }
        let mut e = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let epos = self.pos;
            e = self
                .small_number("exponent")?
                .try_into()
                .map_err(|_| Error::parse(epos, "exponent too large"))?;
        }
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| Error::parse(idx_pos, "exponent overflow"))?;
        Ok(())
    }

    fn starts_diff(&self) -> bool {
        self.peek() == Some(b'd') && self.peek_at(1) == Some(b'z')
    }

    /// A product of rationals and variables. Stops before a `*dz` so the
    /// caller can read the differential.
    fn product(&mut self) -> Result<Polynomial> {
        let mut coef = Rational::one();
        let mut exps = vec![0u32; self.nvars];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'z') => self.var(&mut exps)?,
                Some(b) if b.is_ascii_digit() => coef *= self.rational()?,
                _ => return self.err("expected a number or a variable"),
            }
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.starts_diff() {
                    self.pos = save;
                    break;
                }
                continue;
            }
            self.pos = save;
            break;
        }
        Ok(Polynomial::monomial(Monomial::from_exponents(exps), coef))
    }

    fn poly_until(&mut self, stop: Option<u8>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.nvars);
        self.skip_ws();
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let term = self.product()?;
            acc = &acc + &if neg { -term } else { term };
            self.skip_ws();
            if self.peek() == stop {
                return Ok(acc);
            }
            match self.sign() {
                Some(n) => neg = n,
                None if stop.is_none() && self.at_end() => return Ok(acc),
                None => return self.err("expected '+' or '-'"),
            }
        }
    }

    fn diff(&mut self) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        loop {
            if !self.starts_diff() {
                return self.err("expected 'dz'");
            }
            self.pos += 2;
            idx.push(self.small_number("differential index")?);
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                continue;
            }
            self.pos = save;
            return Ok(idx);
        }
    }

    fn form(&mut self, dim: usize) -> Result<Form> {
        let mut terms: Vec<(Vec<usize>, Polynomial)> = Vec::new();
        let mut degree: Option<usize> = None;
        self.skip_ws();
        if self.at_end() {
            return self.err("empty input");
        }
        let mut neg = self.sign().unwrap_or(false);
        loop {
            self.skip_ws();
            let term_start = self.pos;
            let coef = if self.starts_diff() {
                Polynomial::one(self.nvars)
            } else if self.peek() == Some(b'(') {
                self.pos += 1;
                let p = self.poly_until(Some(b')'))?;
                self.pos += 1;
                p
            } else {
                self.product()?
            };
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            let idx = if self.starts_diff() {
                self.diff()?
            } else {
                self.pos = save;
                Vec::new()
            };
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::parse(
                    term_start,
                    format!("dz{bad} out of range for dimension {dim}"),
                ));
            }
            match degree {
                None => degree = Some(idx.len()),
                Some(d) if d != idx.len() => {
                    return Err(Error::parse(
                        term_start,
                        format!("term has {} differentials, expected {d}", idx.len()),
                    ))
                }
                _ => {}
            }
            terms.push((idx, if neg { -coef } else { coef }));
            self.skip_ws();
            if self.at_end() {
                break;
            }
            match self.sign() {
                Some(n) => neg = n,
                None => return self.err("expected '+' or '-' between terms"),
            }
        }
        Form::from_terms(degree.unwrap_or(0), dim, self.nvars, terms)
    }
}

/// Parses a polynomial in `nvars` variables named `z0, z1, …`.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    let mut p = Parser::new(text, nvars);
    p.skip_ws();
    if p.at_end() {
        return p.err("empty input");
    }
    let poly = p.poly_until(None)?;
    p.skip_ws();
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses a form on `dim` coordinates with no parameters.
pub fn parse_form(text: &str, dim: usize) -> Result<Form> {
    parse_form_with_vars(text, dim, dim)
}

/// Parses a form whose coefficients may use `nvars ≥ dim` variables; the
/// ones past `dim` are parameters.
pub fn parse_form_with_vars(text: &str, dim: usize, nvars: usize) -> Result<Form> {
    if nvars < dim {
        return Err(Error::Dimension(format!(
            "{nvars} variables cannot carry {dim} coordinates"
        )));
    }
    Parser::new(text, nvars).form(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn prints_canonical_polynomial() {
        let p = parse_polynomial("z1 + 3/2*z0^2*z1 - 4", 2).unwrap();
        assert_eq!(p.to_string(), "3/2*z0^2*z1 + z1 - 4");
        let q = parse_polynomial("-z0*z0", 1).unwrap();
        assert_eq!(q.to_string(), "-z0^2");
    }

    #[test]
    fn prints_canonical_form() {
        let w = parse_form("z0 dz1 - z1 dz0", 2).unwrap();
        assert_eq!(w.to_string(), "-z1 dz0 + z0 dz1");
        let v = parse_form("3/2*z0^2*z1 dz0^dz2", 3).unwrap();
        assert_eq!(v.to_string(), "3/2*z0^2*z1 dz0^dz2");
        let u = parse_form("(z0 + z1) dz2 - dz0", 3).unwrap();
        assert_eq!(u.to_string(), "-dz0 + (z0 + z1) dz2");
    }

    #[test]
    fn unsorted_differentials_pick_up_a_sign() {
        let w = parse_form("dz1^dz0", 2).unwrap();
        assert_eq!(
            w.coefficient(&[0, 1]).unwrap().as_constant(),
            Some(frac(-1, 1))
        );
        let zero = parse_form("dz1^dz1", 2).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("z0 + * z1", 2).unwrap_err();
        assert_eq!(e, Error::parse(5, "expected a number or a variable"));
        let e = parse_form("z0 dz1 + dz0^dz1", 2).unwrap_err();
        assert!(matches!(e, Error::Parse { position: 9, .. }), "{e:?}");
        let e = parse_polynomial("z7", 3).unwrap_err();
        assert!(matches!(e, Error::Parse { position: 1, .. }));
        let e = parse_form("z0 dz5", 3).unwrap_err();
        assert!(matches!(e, Error::Parse { position: 0, .. }));
        assert!(parse_polynomial("1/0", 1).is_err());
        assert!(parse_polynomial("z0 z1", 2).is_err());
    }

    #[test]
    fn zero_round_trips() {
        assert!(parse_form("0", 3).unwrap().is_zero());
        assert_eq!(Form::zero(2, 3).to_string(), "0");
        assert_eq!(parse_polynomial("0", 2).unwrap().to_string(), "0");
    }

    #[test]
    fn star_before_differential_is_accepted() {
        let a = parse_form("3*dz0 + 2*z1*dz1", 2).unwrap();
        let b = parse_form("3 dz0 + 2*z1 dz1", 2).unwrap();
        assert_eq!(a, b);
    }
}
