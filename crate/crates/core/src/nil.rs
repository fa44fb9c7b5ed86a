//! Left-invariant geometry from structure equations `de_i ∈ Λ²`: Chevalley–Eilenberg
//! cohomology, the Nijenhuis tensor, torsion extraction from `dΩ`, and parallelism checks.

use crate::endo::{complex_structure, SkewEndo};
use crate::error::{Error, Result};
use crate::forms::{kaehler_form, Form, Monomial, DIM};
use crate::lie::{characteristic_connection, LieAlgebraData, ReductiveModel};
use crate::linalg::Mat;
use crate::orbits::{d_parallel, sigma};
use crate::scalar::Scalar;
use crate::unitary::{project_part, torsion_type, L3Part, StrictType};
use serde::Serialize;
use std::collections::HashMap;

/// Differentials `de_1..de_6` of a left-invariant coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEquations<S: Scalar> {
    de: Vec<Form<S>>,
}

impl<S: Scalar> StructureEquations<S> {
    /// Validates degrees and `d² = 0`.
    pub fn new(de: Vec<Form<S>>) -> Result<Self> {
        if de.len() != DIM {
            return Err(Error::Invalid(format!("expected {DIM} differentials, found {}", de.len())));
        }
        let de = de
            .into_iter()
            .map(|f| if f.is_zero() { Ok(Form::zero(2)) } else { f.require_degree(2).map(|_| f) })
            .collect::<Result<Vec<_>>>()?;
        let eq = StructureEquations { de };
        for (i, f) in eq.de.iter().enumerate() {
            if !eq.d(f).is_zero() {
                return Err(Error::Invalid(format!("d² ≠ 0 on e{}", i + 1)));
            }
        }
        Ok(eq)
    }

    pub fn differentials(&self) -> &[Form<S>] {
        &self.de
    }

    /// Exterior derivative of an invariant form.
    pub fn d(&self, w: &Form<S>) -> Form<S> {
        let mut out = Form::zero((w.degree() + 1).min(DIM));
        if w.degree() >= DIM {
            return Form::zero(DIM);
        }
        for (m, c) in w.terms() {
            let idx = m.indices();
            for (p, &i) in idx.iter().enumerate() {
                let before = idx[..p].iter().fold(Form::constant(S::one()), |acc, &j| acc.wedge(&Form::e(j as u32)));
                let after = idx[p + 1..].iter().fold(Form::constant(S::one()), |acc, &j| acc.wedge(&Form::e(j as u32)));
                let term = before.wedge(&self.de[i - 1]).wedge(&after);
                let sign = if p % 2 == 0 { c.clone() } else { -c.clone() };
                out = out + term.scale(&sign);
            }
        }
        out
    }

    /// `de_i ∈ Λ²(e_1..e_{i-1})` for every `i`.
    pub fn has_nilpotent_filtration(&self) -> bool {
        self.de.iter().enumerate().all(|(i, f)| {
            f.terms().all(|(m, c)| c.is_zero() || m.indices().iter().all(|&j| j <= i))
        })
    }

    /// Dual Lie algebra: `c^k_ij = -de_k(e_i, e_j)`.
    pub fn to_lie_algebra(&self) -> LieAlgebraData<S> {
        let mut alg = LieAlgebraData::abelian(DIM);
        alg.labels = (1..=DIM).map(|i| format!("e{i}")).collect();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let m = Monomial::from_indices(&[i + 1, j + 1]).expect("pair");
                let v: Vec<S> = self.de.iter().map(|f| -f.coefficient(m)).collect();
                alg.set_bracket(i, j, &v);
            }
        }
        alg
    }

    pub fn from_lie_algebra(alg: &LieAlgebraData<S>) -> Result<Self> {
        if alg.dim() != DIM {
            return Err(Error::Invalid(format!("algebra must have dimension {DIM}")));
        }
        let de = (0..DIM)
            .map(|k| {
                let mut f = Form::zero(2);
                for i in 0..DIM {
                    for j in i + 1..DIM {
                        f.add_term(Monomial::from_indices(&[i + 1, j + 1]).expect("pair"), -alg.structure(i, j, k));
                    }
                }
                f
            })
            .collect();
        Self::new(de)
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` on monomial bases.
    fn d_matrix(&self, k: usize) -> Mat<S> {
        let cols: Vec<Vec<S>> =
            Monomial::all(k).iter().map(|m| self.d(&Form::monomial(*m, S::one())).to_coords()).collect();
        Mat::from_columns(&cols, Monomial::all(k + 1).len())
    }

    /// `dim ker d_k - rank d_{k-1}` on `Λ^k`.
    pub fn betti(&self, k: usize) -> Result<usize> {
        if k > DIM {
            return Err(Error::Invalid(format!("degree {k} exceeds {DIM}")));
        }
        let dim = Monomial::all(k).len();
        let rank_out = if k == DIM { 0 } else { self.d_matrix(k).rank() };
        let rank_in = if k == 0 { 0 } else { self.d_matrix(k - 1).rank() };
        Ok(dim - rank_out - rank_in)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=DIM).map(|k| self.betti(k).expect("degree in range")).collect()
    }

    /// Short-hand such as `(0,0,0,0,12,34)`.
    pub fn parse_short(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("short form must be parenthesised".into()))?;
        let entries: Vec<&str> = inner.split(',').map(str::trim).collect();
        if entries.len() != DIM {
            return Err(Error::Parse(format!("expected {DIM} entries, found {}", entries.len())));
        }
        let de = entries.iter().map(|e| parse_short_entry(e)).collect::<Result<Vec<_>>>()?;
        Self::new(de)
    }

    /// Short-hand with unit coefficients where possible.
    pub fn to_short(&self) -> String {
        let entries: Vec<String> = self
            .de
            .iter()
            .map(|f| {
                if f.is_zero() {
                    return "0".to_string();
                }
                let mut s = String::new();
                for (m, c) in f.terms() {
                    let digits: String = m.indices().iter().map(|i| i.to_string()).collect();
                    let neg = c.signum() < 0;
                    let mag = if neg { -c.clone() } else { c.clone() };
                    s.push_str(if neg { "-" } else if s.is_empty() { "" } else { "+" });
                    if !(mag.clone() - S::one()).is_zero() {
                        s.push_str(&format!("{mag}*"));
                    }
                    s.push_str(&digits);
                }
                s
            })
            .collect();
        format!("({})", entries.join(","))
    }

    /// Long form, one line per nonzero differential, e.g.
    /// `de5 = a3*(e12-e34) + a5*(e12+e34)`; names are bound by `params`.
    pub fn parse_long(text: &str, params: &HashMap<String, S>) -> Result<Self> {
        let mut de = vec![Form::zero(2); DIM];
        for line in text.lines().flat_map(|l| l.split(';')) {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `deI = ...`: {line}")))?;
            let i: usize = lhs
                .trim()
                .strip_prefix("de")
                .and_then(|s| s.parse().ok())
                .filter(|i| (1..=DIM).contains(i))
                .ok_or_else(|| Error::Parse(format!("bad left-hand side: {lhs}")))?;
            let value = ExprParser::new(rhs, params).parse()?;
            de[i - 1] = match value {
                Value::Form(f) => f,
                Value::Scalar(s) if s.is_zero() => Form::zero(2),
                Value::Scalar(_) => return Err(Error::Parse(format!("de{i} must be a 2-form"))),
            };
        }
        Self::new(de)
    }

    /// Either notation: parenthesised short-hand or long form.
    pub fn parse(text: &str, params: &HashMap<String, S>) -> Result<Self> {
        if text.trim_start().starts_with('(') {
            Self::parse_short(text)
        } else {
            Self::parse_long(text, params)
        }
    }

    fn group(&self) -> ReductiveModel<S> {
        ReductiveModel::lie_group(self.to_lie_algebra()).expect("frame of a Lie group is a basis")
    }

    /// Nijenhuis tensor of the invariant almost complex structure `j`.
    pub fn nijenhuis(&self, j: &SkewEndo<S>) -> NijenhuisReport<S> {
        nijenhuis_model(&self.group(), j)
    }

    /// `dΩ`, `δΩ` and the characteristic torsion for the standard structure.
    pub fn torsion_from_kaehler(&self) -> Result<KaehlerTorsion<S>> {
        let n = self.nijenhuis(&complex_structure());
        if !n.totally_skew {
            return Err(Error::Condition("characteristic connection does not exist".into()));
        }
        let omega = kaehler_form::<S>();
        let d_omega = self.d(&omega);
        let delta_omega = -self.d(&omega.hodge()).hodge();
        let star = d_omega.hodge();
        let third = S::ratio(1, 3);
        let t2 = -project_part(&star, L3Part::Two)?.scale(&third);
        let t12 = project_part(&star, L3Part::Twelve)?;
        let t6 = -project_part(&star, L3Part::Six)?;
        let torsion = t2.clone() + t12.clone() + t6.clone();
        let strict_type = torsion_type(&torsion, crate::unitary::presence_tol::<S>())?;
        let delta_matches_t6 = delta_omega.wedge(&omega) == t6.scale(&S::from_i64(2));
        Ok(KaehlerTorsion {
            d_omega,
            delta_omega,
            t2,
            t12,
            t6,
            torsion,
            strict_type,
            delta_matches_t6,
            kaehler: n.is_zero && omega_closed(self),
        })
    }

    /// Builds `∇^c = ∇^g + ½T` and checks `∇^c T = 0`, `∇^c Ω_J = 0` and `dT = 2σ_T`.
    pub fn verify_parallel(&self, j: &SkewEndo<S>, t: &Form<S>) -> Result<ParallelReport<S>> {
        let model = self.group();
        let conn = characteristic_connection(&model, t)?;
        let torsion_parallel = conn.parallel(t)?;
        let structure_parallel = conn.parallel(&j.to_form())?;
        let dt = self.d(t);
        let two_sigma = sigma(t)?.scale(&S::from_i64(2));
        Ok(ParallelReport {
            parallel: torsion_parallel && structure_parallel,
            torsion_parallel,
            structure_parallel,
            dt_equals_two_sigma: dt == two_sigma,
            dt_matches_parallel_formula: dt == d_parallel(t, t),
            dt,
            two_sigma,
        })
    }

    /// `de12 = de34 = 0` and parallelism of `e12 ± e34` for the characteristic connection.
    pub fn parallel_2form_checks(&self) -> Result<TwoFormChecks> {
        let e12 = Form::<S>::e(12);
        let e34 = Form::<S>::e(34);
        let d12_closed = self.d(&e12).is_zero();
        let d34_closed = self.d(&e34).is_zero();
        let (plus_parallel, minus_parallel) = match self.torsion_from_kaehler() {
            Ok(k) => {
                let conn = characteristic_connection(&self.group(), &k.torsion)?;
                (conn.parallel(&(e12.clone() + e34.clone()))?, conn.parallel(&(e12 - e34))?)
            }
            Err(_) => (false, false),
        };
        Ok(TwoFormChecks {
            d12_closed,
            d34_closed,
            selfdual_parallel: plus_parallel,
            antiselfdual_parallel: minus_parallel,
            all_pass: d12_closed && d34_closed && plus_parallel && minus_parallel,
        })
    }

    /// Normal form tag for algebras that are abelian or 2-step nilpotent with
    /// derived algebra of dimension at most 2 inside the center.
    pub fn normal_form(&self) -> Option<String> {
        let alg = self.to_lie_algebra();
        let derived = *alg.derived_series().get(1).unwrap_or(&0);
        let lcs = alg.lower_central_series();
        let two_step = lcs.len() <= 3 && lcs.last() == Some(&0);
        if !two_step {
            return None;
        }
        let span: Vec<Form<S>> = independent_forms(&self.de);
        match (derived, span.len()) {
            (0, _) => Some("(0,0,0,0,0,0)".into()),
            (1, 1) => {
                let w = &span[0];
                let rank = if w.wedge(w).is_zero() { 2 } else if w.wedge(w).wedge(w).is_zero() { 4 } else { 6 };
                match rank {
                    2 => Some("(0,0,0,0,0,12)".into()),
                    4 => Some("(0,0,0,0,0,12+34)".into()),
                    _ => Some("(0,0,0,0,0,12+34+56)".into()),
                }
            }
            (2, 2) => {
                let gram = pencil_discriminant(&span[0], &span[1])?;
                let tag = match gram {
                    Pencil::Degenerate => "(0,0,0,0,12,13)",
                    Pencil::Split => "(0,0,0,0,12,34)",
                    Pencil::Complex => "(0,0,0,0,13+42,14+23)",
                    Pencil::Mixed => "(0,0,0,0,12,14+23)",
                };
                Some(tag.into())
            }
            _ => None,
        }
    }
}

fn omega_closed<S: Scalar>(eq: &StructureEquations<S>) -> bool {
    eq.d(&kaehler_form()).is_zero()
}

/// Maximal linearly independent subfamily of nonzero 2-forms.
fn independent_forms<S: Scalar>(forms: &[Form<S>]) -> Vec<Form<S>> {
    let mut coords: Vec<Vec<S>> = Vec::new();
    let mut out = Vec::new();
    for f in forms {
        if f.is_zero() {
            continue;
        }
        coords.push(f.to_coords());
        if crate::linalg::rank_of(&coords) < coords.len() {
            coords.pop();
        } else {
            out.push(f.clone());
        }
    }
    out
}

enum Pencil {
    Degenerate,
    Split,
    Complex,
    Mixed,
}

/// Classifies the pencil `span(a, b)` of 2-forms on a 4-dimensional space by the
/// binary quadratic form `q(x a + y b) = (x a + y b)²`.
fn pencil_discriminant<S: Scalar>(a: &Form<S>, b: &Form<S>) -> Option<Pencil> {
    let support = a.terms().chain(b.terms()).fold(0u8, |acc, (m, c)| if c.is_zero() { acc } else { acc | m.mask() });
    if support.count_ones() > 4 {
        return None;
    }
    let top = |w: Form<S>| w.terms().map(|(_, c)| c.clone()).fold(S::zero(), |x, c| x + c);
    let aa = top(a.wedge(a));
    let ab = top(a.wedge(b));
    let bb = top(b.wedge(b));
    let disc = ab.clone() * ab - aa.clone() * bb.clone();
    Some(if aa.is_zero() && bb.is_zero() && disc.is_zero() {
        Pencil::Degenerate
    } else if disc.is_zero() {
        Pencil::Mixed
    } else if disc.signum() > 0 {
        Pencil::Split
    } else {
        Pencil::Complex
    })
}

fn parse_short_entry<S: Scalar>(entry: &str) -> Result<Form<S>> {
    let entry: String = entry.chars().filter(|c| !c.is_whitespace()).collect();
    if entry == "0" || entry.is_empty() {
        return Ok(Form::zero(2));
    }
    let mut out = Form::zero(2);
    let mut rest = entry.as_str();
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        let end = rest[1..].find(['+', '-']).map(|p| p + 1).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coeff, digits) = match term.split_once('*') {
            Some((c, d)) => {
                let q = crate::scalar::parse_rational(c).ok_or_else(|| Error::Parse(format!("bad coefficient: {c}")))?;
                (S::from_rational(&q), d)
            }
            None => (S::one(), term),
        };
        let idx: Vec<usize> = digits.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad term: {term}")))?;
        if idx.len() != 2 || idx[0] == idx[1] || idx.iter().any(|&i| i == 0 || i > DIM) {
            return Err(Error::Parse(format!("terms must be two distinct indices in 1..6: {term}")));
        }
        let sign = if idx[0] < idx[1] { negative } else { !negative };
        let m = Monomial::from_indices(&[idx[0].min(idx[1]), idx[0].max(idx[1])]).expect("pair");
        out.add_term(m, if sign { -coeff } else { coeff });
    }
    Ok(out)
}

enum Value<S: Scalar> {
    Scalar(S),
    Form(Form<S>),
}

impl<S: Scalar> Value<S> {
    fn mul(self, other: Value<S>) -> Result<Value<S>> {
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
            (Value::Scalar(a), Value::Form(f)) | (Value::Form(f), Value::Scalar(a)) => Value::Form(f.scale(&a)),
            (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b)),
        })
    }

    fn add(self, other: Value<S>, negate: bool) -> Result<Value<S>> {
        let other = if negate { other.mul(Value::Scalar(-S::one()))? } else { other };
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
            (Value::Form(a), Value::Form(b)) if a.degree() == b.degree() || a.is_zero() || b.is_zero() => {
                if a.is_zero() {
                    Value::Form(b)
                } else if b.is_zero() {
                    Value::Form(a)
                } else {
                    Value::Form(a + b)
                }
            }
            (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) if s.is_zero() => Value::Form(f),
            _ => return Err(Error::Parse("cannot add terms of different degree".into())),
        })
    }
}

/// Recursive-descent parser for differentials: sums of products of numbers,
/// parameter names, monomials `eIJ` and parenthesised groups.
struct ExprParser<'a, S: Scalar> {
    chars: Vec<char>,
    pos: usize,
    params: &'a HashMap<String, S>,
}

impl<'a, S: Scalar> ExprParser<'a, S> {
    fn new(text: &str, params: &'a HashMap<String, S>) -> Self {
        ExprParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, params }
    }

    fn parse(mut self) -> Result<Value<S>> {
        let v = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(Error::Parse(format!("unexpected input at position {}", self.pos)));
        }
        Ok(v)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Value<S>> {
        let mut v = self.term()?;
        while let Some(c) = self.peek() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            v = v.add(rhs, c == '-')?;
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Value<S>> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    v = v.mul(rhs)?;
                }
                Some('/') => {
                    self.pos += 1;
                    match self.factor()? {
                        Value::Scalar(d) if !d.is_zero() => v = v.mul(Value::Scalar(S::one() / d))?,
                        _ => return Err(Error::Parse("division by a non-scalar or zero".into())),
                    }
                }
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {
                    let rhs = self.factor()?;
                    v = v.mul(rhs)?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<Value<S>> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.factor()?.mul(Value::Scalar(-S::one()))
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let q = crate::scalar::parse_rational(&text)
                    .map(|q| S::from_rational(&q))
                    .or_else(|| text.parse::<f64>().ok().map(S::from_f64))
                    .ok_or_else(|| Error::Parse(format!("bad number: {text}")))?;
                Ok(Value::Scalar(q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(v) = self.params.get(&name) {
                    return Ok(Value::Scalar(v.clone()));
                }
                if let Some(digits) = name.strip_prefix('e') {
                    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                        return Form::parse(&name).map(Value::Form);
                    }
                }
                Err(Error::Parse(format!("unknown name: {name}")))
            }
            _ => Err(Error::Parse(format!("expected a term at position {}", self.pos))),
        }
    }
}

/// Nijenhuis tensor stored as `N(e_i, e_j, e_k) = g(N(e_i, e_j), e_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisReport<S: Scalar> {
    pub tensor: Vec<S>,
    pub is_zero: bool,
    pub totally_skew: bool,
}

impl<S: Scalar> NijenhuisReport<S> {
    pub fn at(&self, i: usize, j: usize, k: usize) -> S {
        self.tensor[(i * DIM + j) * DIM + k].clone()
    }

    /// The tensor as a 3-form when totally skew.
    pub fn to_form(&self) -> Option<Form<S>> {
        self.totally_skew.then(|| {
            let mut f = Form::zero(3);
            for m in Monomial::all(3) {
                let x = m.indices();
                f.add_term(m, self.at(x[0] - 1, x[1] - 1, x[2] - 1));
            }
            f
        })
    }
}

/// `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]` on `m`, using `[·,·]_m`.
pub fn nijenhuis_model<S: Scalar>(model: &ReductiveModel<S>, j: &SkewEndo<S>) -> NijenhuisReport<S> {
    let jm = j.matrix();
    let bracket = |x: &[S], y: &[S]| -> Vec<S> {
        let mut out = vec![S::zero(); DIM];
        for a in 0..DIM {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..DIM {
                if y[b].is_zero() {
                    continue;
                }
                let c = x[a].clone() * y[b].clone();
                for (k, v) in model.bracket_m(a, b).into_iter().enumerate() {
                    out[k] = out[k].clone() + c.clone() * v;
                }
            }
        }
        out
    };
    let mut tensor = vec![S::zero(); DIM * DIM * DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            let x = crate::lie::unit::<S>(DIM, a);
            let y = crate::lie::unit::<S>(DIM, b);
            let jx = jm.mul_vec(&x);
            let jy = jm.mul_vec(&y);
            let t1 = bracket(&jx, &jy);
            let t2 = jm.mul_vec(&bracket(&jx, &y));
            let t3 = jm.mul_vec(&bracket(&x, &jy));
            let t4 = bracket(&x, &y);
            for k in 0..DIM {
                tensor[(a * DIM + b) * DIM + k] =
                    t1[k].clone() - t2[k].clone() - t3[k].clone() - t4[k].clone();
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| tensor[(i * DIM + j) * DIM + k].clone();
    let is_zero = tensor.iter().all(|x| x.is_zero());
    let totally_skew = (0..DIM).all(|i| {
        (0..DIM).all(|j| (0..DIM).all(|k| (at(i, j, k) + at(i, k, j)).is_zero() && (at(i, j, k) + at(j, i, k)).is_zero()))
    });
    NijenhuisReport { tensor, is_zero, totally_skew }
}

/// Output of the torsion extraction.
#[derive(Clone, Debug)]
pub struct KaehlerTorsion<S: Scalar> {
    pub d_omega: Form<S>,
    pub delta_omega: Form<S>,
    pub t2: Form<S>,
    pub t12: Form<S>,
    pub t6: Form<S>,
    pub torsion: Form<S>,
    pub strict_type: StrictType,
    /// `δΩ ∧ Ω = 2 T₆`.
    pub delta_matches_t6: bool,
    /// True at the degenerate point where the structure is Kähler.
    pub kaehler: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParallelReport<S: Scalar> {
    pub parallel: bool,
    pub torsion_parallel: bool,
    pub structure_parallel: bool,
    pub dt_equals_two_sigma: bool,
    pub dt_matches_parallel_formula: bool,
    pub dt: Form<S>,
    pub two_sigma: Form<S>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoFormChecks {
    pub d12_closed: bool,
    pub d34_closed: bool,
    pub selfdual_parallel: bool,
    pub antiselfdual_parallel: bool,
    pub all_pass: bool,
}

/// Parameter regimes of the 2-step nilpotent family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NilFamily {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl NilFamily {
    pub const ALL: [NilFamily; 6] =
        [NilFamily::I, NilFamily::II, NilFamily::III, NilFamily::IV, NilFamily::V, NilFamily::VI];

    pub fn label(self) -> &'static str {
        match self {
            NilFamily::I => "i",
            NilFamily::II => "ii",
            NilFamily::III => "iii",
            NilFamily::IV => "iv",
            NilFamily::V => "v",
            NilFamily::VI => "vi",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        NilFamily::ALL.into_iter().find(|f| f.label() == label.trim().to_ascii_lowercase())
    }

    /// Regime of `(α3, α4, α5)`, or `None` outside all of them.
    pub fn classify<S: Scalar>(a3: &S, a4: &S, a5: &S) -> Option<Self> {
        let pos5 = a5.signum() > 0;
        let plus_minus = (a3.clone() - a5.clone()).is_zero() || (a3.clone() + a5.clone()).is_zero();
        match (a3.is_zero(), a4.is_zero(), a5.is_zero()) {
            (false, true, false) if pos5 && plus_minus => Some(NilFamily::I),
            (false, true, false) if pos5 => Some(NilFamily::II),
            (false, false, false) if pos5 => Some(NilFamily::III),
            (true, false, false) if pos5 => Some(NilFamily::IV),
            (true, true, false) if pos5 => Some(NilFamily::V),
            (false, true, true) if a3.signum() > 0 => Some(NilFamily::VI),
            _ => None,
        }
    }

    /// Tabulated strict type, `(b1, b2)` and normal-form tag.
    pub fn table_row(self) -> (&'static str, usize, usize, &'static str) {
        match self {
            NilFamily::I => ("W3+W4", 5, 11, "(0,0,0,0,0,12)"),
            NilFamily::II | NilFamily::III => ("W3+W4", 4, 8, "(0,0,0,0,12,34)"),
            NilFamily::IV => ("W3+W4", 5, 9, "(0,0,0,0,0,12+34)"),
            NilFamily::V => ("W4", 5, 9, "(0,0,0,0,0,12+34)"),
            NilFamily::VI => ("W3", 5, 9, "(0,0,0,0,0,12+34)"),
        }
    }
}

/// `de5 = α3(e12 - e34) + α5(e12 + e34)`, `de6 = α4(e12 - e34)`.
pub fn nil_family_equations<S: Scalar>(a3: &S, a4: &S, a5: &S) -> StructureEquations<S> {
    let minus = Form::<S>::e(12) - Form::e(34);
    let plus = Form::<S>::e(12) + Form::e(34);
    let mut de = vec![Form::zero(2); DIM];
    de[4] = minus.scale(a3) + plus.scale(a5);
    de[5] = minus.scale(a4);
    StructureEquations::new(de).expect("closed structure equations")
}

/// `(e12 - e34) ∧ (α3 e5 + α4 e6) + α5 (e12 + e34) ∧ e5`.
pub fn nil_family_torsion<S: Scalar>(a3: &S, a4: &S, a5: &S) -> Form<S> {
    let minus = Form::<S>::e(12) - Form::e(34);
    let plus = Form::<S>::e(12) + Form::e(34);
    minus.wedge(&(Form::e(5).scale(a3) + Form::e(6).scale(a4))) + plus.wedge(&Form::e(5)).scale(a5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn short_form_round_trip() {
        let s = StructureEquations::<Q>::parse_short("(0,0,0,0,12,34)").unwrap();
        assert_eq!(s.to_short(), "(0,0,0,0,12,34)");
        let t = StructureEquations::<Q>::parse_short("(0,0,0,0,13+42,14+23)").unwrap();
        assert_eq!(t.differentials()[4], Form::e(13) - Form::e(24));
    }

    #[test]
    fn d_squared_is_enforced() {
        assert!(StructureEquations::<Q>::parse_short("(0,0,0,12,14,0)").is_ok());
        assert!(StructureEquations::<Q>::parse_short("(0,0,12,13,0,34)").is_err());
    }

    #[test]
    fn long_form_with_parameters() {
        let params: HashMap<String, Q> =
            [("a3", Q::from_i64(1)), ("a4", Q::from_i64(2)), ("a5", Q::from_i64(3))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
        let text = "de5 = a3*(e12-e34) + a5*(e12+e34)\nde6 = a4*(e12-e34)";
        let s = StructureEquations::parse_long(text, &params).unwrap();
        let (a3, a4, a5) = (Q::from_i64(1), Q::from_i64(2), Q::from_i64(3));
        assert_eq!(s, nil_family_equations(&a3, &a4, &a5));
    }
}
