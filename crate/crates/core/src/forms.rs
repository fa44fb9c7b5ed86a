//! Exterior algebra of the oriented euclidean space R^6.
//!
//! Basis monomials are subsets of `{1..6}` stored as bitmasks; increasing
//! monomials are orthonormal in every degree.

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub const DIM: usize = 6;
const FULL: u8 = (1 << DIM) - 1;

/// Increasing index monomial `e_I`, bit `k` standing for `e_{k+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(u8);

impl Monomial {
    pub fn from_mask(mask: u8) -> Self {
        Monomial(mask & FULL)
    }

    /// Monomial from 1-based indices; `None` unless strictly increasing in `1..=6`.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        let mut last = 0;
        for &i in indices {
            if i <= last || i > DIM {
                return None;
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Some(Monomial(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..DIM).filter(|k| self.0 & (1 << k) != 0).map(|k| k + 1).collect()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << (index - 1)) != 0
    }

    pub fn complement(self) -> Monomial {
        Monomial(!self.0 & FULL)
    }

    /// All monomials of degree `k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> =
            (0..=FULL).filter(|m| m.count_ones() as usize == k).map(Monomial).collect();
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`, zero when they overlap.
pub fn wedge_sign(a: u8, b: u8) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    for i in 0..DIM {
        if a & (1 << i) != 0 {
            // elements of b below i
            inversions += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Homogeneous form of fixed degree with sparse coefficients.
#[derive(Clone)]
pub struct Form<S> {
    degree: usize,
    coeffs: BTreeMap<Monomial, S>,
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.degree, self)
    }
}

impl<S: Scalar> Form<S> {
    pub fn zero(degree: usize) -> Self {
        Form { degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(value: S) -> Self {
        let mut f = Form::zero(0);
        f.add_term(Monomial(0), value);
        f
    }

    pub fn monomial(m: Monomial, value: S) -> Self {
        let mut f = Form::zero(m.degree());
        f.add_term(m, value);
        f
    }

    /// Unit monomial written as decimal digits, `Form::e(135)` is `e135`.
    ///
    /// Panics on digits that are not strictly increasing in `1..=6`.
    pub fn e(digits: u32) -> Self {
        let indices: Vec<usize> =
            digits.to_string().chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let m = Monomial::from_indices(&indices).expect("strictly increasing digits 1..6");
        Form::monomial(m, S::one())
    }

    /// 1-form with the given components.
    pub fn from_vector(v: &[S]) -> Self {
        let mut f = Form::zero(1);
        for (i, x) in v.iter().enumerate() {
            f.add_term(Monomial(1 << i), x.clone());
        }
        f
    }

    /// Components of a 1-form.
    pub fn to_vector(&self) -> Vec<S> {
        (0..DIM).map(|i| self.coefficient(Monomial(1 << i))).collect()
    }

    /// Form of degree `k` with coordinates in the order of [`Monomial::all`].
    pub fn from_coords(k: usize, coords: &[S]) -> Self {
        let mut f = Form::zero(k);
        for (m, x) in Monomial::all(k).into_iter().zip(coords) {
            f.add_term(m, x.clone());
        }
        f
    }

    pub fn to_coords(&self) -> Vec<S> {
        Monomial::all(self.degree).into_iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, m: Monomial) -> S {
        self.coeffs.get(&m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the monomial written as digits.
    pub fn coeff(&self, digits: u32) -> S {
        let indices: Vec<usize> =
            digits.to_string().chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        Monomial::from_indices(&indices).map_or_else(S::zero, |m| self.coefficient(m))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn add_term(&mut self, m: Monomial, value: S) {
        assert_eq!(m.degree(), self.degree, "monomial degree does not match form degree");
        if value.is_zero() {
            return;
        }
        let updated = match self.coeffs.remove(&m) {
            Some(old) => old + value,
            None => value,
        };
        if !updated.is_zero() {
            self.coeffs.insert(m, updated);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Form::zero(self.degree);
        for (m, x) in &self.coeffs {
            out.add_term(*m, x.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.degree);
        for (m, x) in &self.coeffs {
            out.add_term(*m, f(x));
        }
        out
    }

    fn combine(mut self, other: &Form<S>, sign: bool) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        for (m, x) in &other.coeffs {
            self.add_term(*m, if sign { x.clone() } else { -x.clone() });
        }
        self
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form<S>) -> Form<S> {
        let degree = self.degree + other.degree;
        let mut out = Form::zero(degree);
        if degree > DIM {
            return Form::zero(DIM);
        }
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let s = wedge_sign(a.0, b.0);
                if s == 0 {
                    continue;
                }
                let v = x.clone() * y.clone();
                out.add_term(Monomial(a.0 | b.0), if s > 0 { v } else { -v });
            }
        }
        out
    }

    /// Interior product with the basis vector `e_index` (1-based).
    pub fn contract_basis(&self, index: usize) -> Form<S> {
        if self.degree == 0 {
            return Form::zero(0);
        }
        let bit = 1u8 << (index - 1);
        let mut out = Form::zero(self.degree - 1);
        for (m, x) in &self.coeffs {
            if m.0 & bit == 0 {
                continue;
            }
            let below = (m.0 & (bit - 1)).count_ones();
            let v = if below % 2 == 0 { x.clone() } else { -x.clone() };
            out.add_term(Monomial(m.0 & !bit), v);
        }
        out
    }

    /// Interior product `v ⨼ self`.
    pub fn contract(&self, v: &[S]) -> Form<S> {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out = out + self.contract_basis(i + 1).scale(x);
        }
        out
    }

    /// Hodge star, normalized by `a ∧ ⋆a = ⟨a,a⟩ e123456`.
    pub fn hodge(&self) -> Form<S> {
        let mut out = Form::zero(DIM - self.degree);
        for (m, x) in &self.coeffs {
            let c = m.complement();
            let s = wedge_sign(m.0, c.0);
            out.add_term(c, if s > 0 { x.clone() } else { -x.clone() });
        }
        out
    }

    pub fn inner(&self, other: &Form<S>) -> Result<S> {
        if self.degree != other.degree {
            return Err(Error::Degree { expected: self.degree, found: other.degree });
        }
        let mut acc = S::zero();
        for (m, x) in &self.coeffs {
            if let Some(y) = other.coeffs.get(m) {
                acc = acc + x.clone() * y.clone();
            }
        }
        Ok(acc)
    }

    pub fn norm2(&self) -> S {
        self.coeffs.values().fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Value on `degree` vectors: the sum of coefficients times minors.
    pub fn eval(&self, vectors: &[Vec<S>]) -> S {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let mut acc = S::zero();
        for (m, x) in &self.coeffs {
            let idx: Vec<usize> = m.indices().iter().map(|i| i - 1).collect();
            let minor = crate::linalg::Mat::from_fn(self.degree, self.degree, |r, c| {
                vectors[c][idx[r]].clone()
            });
            acc = acc + x.clone() * minor.determinant();
        }
        acc
    }

    pub fn approx_eq(&self, other: &Form<S>) -> bool {
        self.degree == other.degree && (self.clone() - other.clone()).is_zero()
    }

    pub fn to_f64(&self) -> Form<crate::scalar::Real> {
        self.map_coeffs(|x| crate::scalar::Real::new(x.to_f64()))
    }

    pub fn require_degree(&self, degree: usize) -> Result<()> {
        if self.degree == degree {
            Ok(())
        } else {
            Err(Error::Degree { expected: degree, found: self.degree })
        }
    }

    /// Parses a literal such as `3e135 + e146 - 1/2*e236`.
    pub fn parse(text: &str) -> Result<Form<S>> {
        parse_form(text)
    }
}

impl<S: Scalar> PartialEq for Form<S> {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;
    fn add(self, other: Form<S>) -> Form<S> {
        self.combine(&other, true)
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(self, other: Form<S>) -> Form<S> {
        self.combine(&other, false)
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, x) in &self.coeffs {
            let negative = x.signum() < 0;
            let magnitude = if negative { -x.clone() } else { x.clone() };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}")?;
            let text = magnitude.to_string();
            if m.degree() == 0 {
                write!(f, "{text}")?;
            } else if text == "1" {
                write!(f, "{m}")?;
            } else if text.chars().all(|c| c.is_ascii_digit()) {
                write!(f, "{text}{m}")?;
            } else {
                write!(f, "{text}*{m}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Standard Kähler form `e12 + e34 + e56`.
pub fn kaehler_form<S: Scalar>() -> Form<S> {
    Form::e(12) + Form::e(34) + Form::e(56)
}

/// Volume form `e123456`.
pub fn volume_form<S: Scalar>() -> Form<S> {
    Form::e(123456)
}

/// Unit basis vector `e_index` (1-based) of R^6.
pub fn basis_vector<S: Scalar>(index: usize) -> Vec<S> {
    (1..=DIM).map(|i| if i == index { S::one() } else { S::zero() }).collect()
}

fn parse_form<S: Scalar>(text: &str) -> Result<Form<S>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty form literal".into()));
    }
    if chars.len() == 1 && chars[0] == '0' {
        return Ok(Form::zero(0));
    }
    let mut terms: Vec<(Monomial, S)> = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !terms.is_empty() {
            return Err(Error::Parse(format!("expected '+' or '-' at position {pos}")));
        }
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.' || chars[pos] == '/')
        {
            pos += 1;
        }
        let coeff_text: String = chars[start..pos].iter().collect();
        let coeff = if coeff_text.is_empty() {
            S::one()
        } else {
            let q = parse_rational(&coeff_text)
                .ok_or_else(|| Error::Parse(format!("bad coefficient '{coeff_text}'")))?;
            S::from_rational(&q)
        };
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
        let mono = if pos < chars.len() && chars[pos] == 'e' {
            pos += 1;
            let dstart = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let indices: Vec<usize> =
                chars[dstart..pos].iter().map(|c| c.to_digit(10).unwrap() as usize).collect();
            if indices.is_empty() {
                return Err(Error::Parse("monomial 'e' without indices".into()));
            }
            Monomial::from_indices(&indices).ok_or_else(|| {
                let digits: String = chars[dstart..pos].iter().collect();
                Error::Parse(format!("indices of e{digits} must be strictly increasing in 1..6"))
            })?
        } else if coeff_text.is_empty() {
            return Err(Error::Parse(format!("expected a term at position {pos}")));
        } else {
            Monomial(0)
        };
        terms.push((mono, if negative { -coeff } else { coeff }));
    }
    let degree = terms[0].0.degree();
    let mut form = Form::zero(degree);
    for (m, c) in terms {
        if m.degree() != degree {
            return Err(Error::Parse(format!(
                "mixed degrees in literal: {} and {}",
                degree,
                m.degree()
            )));
        }
        form.add_term(m, c);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type F = Form<Rational>;

    #[test]
    fn wedge_examples() {
        assert_eq!(F::e(1).wedge(&F::e(2)), F::e(12));
        assert!(F::e(12).wedge(&F::e(12)).is_zero());
        let lhs = (F::e(12) + F::e(34)).wedge(&F::e(56));
        assert_eq!(lhs, F::e(1256) + F::e(3456));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(F::e(123).contract_basis(1), F::e(23));
        assert!(F::e(13).contract_basis(2).is_zero());
        assert_eq!(kaehler_form::<Rational>().contract_basis(5), F::e(6));
        assert!(F::constant(rat(1, 1)).contract_basis(1).is_zero());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(F::constant(rat(1, 1)).hodge(), F::e(123456));
        assert_eq!(F::e(12).hodge(), F::e(3456));
        assert_eq!(F::e(135).hodge(), -F::e(246));
    }

    #[test]
    fn inner_examples() {
        assert_eq!(F::e(12).inner(&F::e(12)).unwrap(), rat(1, 1));
        let a = F::e(145) + F::e(235);
        assert_eq!(a.inner(&a).unwrap(), rat(2, 1));
        assert_eq!(F::e(12).inner(&F::e(34)).unwrap(), rat(0, 1));
        assert!(F::e(12).inner(&F::e(123)).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let f = F::parse("3e135 + e146 - 1/2*e236").unwrap();
        assert_eq!(f.to_string(), "3e135 + e146 - 1/2*e236");
        assert_eq!(F::parse(&f.to_string()).unwrap(), f);
        assert_eq!(F::parse("0.5e12").unwrap(), F::e(12).scale(&rat(1, 2)));
        assert!(F::parse("e999").is_err());
        assert!(F::parse("e12 + e123").is_err());
        assert!(F::parse("e21").is_err());
        assert_eq!(F::parse("-e12").unwrap(), -F::e(12));
    }

    #[test]
    fn orientation() {
        let omega = kaehler_form::<Rational>();
        let cube = omega.wedge(&omega).wedge(&omega);
        assert_eq!(cube, F::e(123456).scale(&rat(6, 1)));
    }
}
