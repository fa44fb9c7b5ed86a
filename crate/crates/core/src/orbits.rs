//! Normal forms of torsion orbits, quadratic torsion expressions, realizability
//! filters and a classifier built on them.

use crate::curvature::CurvatureRecord;
use crate::endo::SkewEndo;
use crate::error::{Error, Result};
use crate::forms::{Form, DIM};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::unitary::{
    identify_algebra, isotropy_algebra, presence_tol, project_l3, type_of_components, AlgebraTag,
    StrictType, TorsionClass,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Rows I–XI of the normal-form table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
}

impl Case {
    pub const ALL: [Case; 11] = [
        Case::I,
        Case::II,
        Case::III,
        Case::IV,
        Case::V,
        Case::VI,
        Case::VII,
        Case::VIII,
        Case::IX,
        Case::X,
        Case::XI,
    ];

    /// True for rows I–VI, whose forms have a nonzero divergence or a `(e12-e34)∧e6` slot.
    pub fn first_family(self) -> bool {
        matches!(self, Case::I | Case::II | Case::III | Case::IV | Case::V | Case::VI)
    }

    pub fn strict_type(self) -> StrictType {
        use TorsionClass::*;
        StrictType::of(match self {
            Case::I => &[W4],
            Case::II | Case::III => &[W1, W3],
            Case::IV => &[W3, W4],
            Case::V | Case::VI => &[W1, W3, W4],
            Case::VII => &[W1],
            Case::VIII | Case::IX | Case::X => &[W3],
            Case::XI => &[W1, W3],
        })
    }

    pub fn isotropy(self) -> AlgebraTag {
        match self {
            Case::I => AlgebraTag::U2(0),
            Case::II | Case::V => AlgebraTag::Su2,
            Case::III | Case::VI => AlgebraTag::T1,
            Case::IV | Case::IX => AlgebraTag::T2,
            Case::VII => AlgebraTag::Su3,
            Case::VIII => AlgebraTag::U2(1),
            Case::X | Case::XI => AlgebraTag::So3,
        }
    }

    /// Names of the parameters that may be nonzero.
    pub fn parameter_names(self) -> &'static [Param] {
        use Param::*;
        if self.first_family() {
            &[Alpha1, Alpha3, Alpha4, Alpha5]
        } else {
            &[Alpha1, Alpha2, Beta1, Beta2]
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown case tag '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Alpha1,
    Alpha2,
    Alpha3,
    Alpha4,
    Alpha5,
    Beta1,
    Beta2,
}

impl Param {
    pub const ALL: [Param; 7] = [
        Param::Alpha1,
        Param::Alpha2,
        Param::Alpha3,
        Param::Alpha4,
        Param::Alpha5,
        Param::Beta1,
        Param::Beta2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha1 => "alpha1",
            Param::Alpha2 => "alpha2",
            Param::Alpha3 => "alpha3",
            Param::Alpha4 => "alpha4",
            Param::Alpha5 => "alpha5",
            Param::Beta1 => "beta1",
            Param::Beta2 => "beta2",
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.replace('α', "alpha").replace('β', "beta");
        let key = match key.as_str() {
            "a1" => "alpha1",
            "a2" => "alpha2",
            "a3" => "alpha3",
            "a4" => "alpha4",
            "a5" => "alpha5",
            "b1" => "beta1",
            "b2" => "beta2",
            other => other,
        }
        .to_string();
        Param::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown parameter '{s}'")))
    }
}

/// Parameter values; unspecified entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<S: Scalar>(pub BTreeMap<Param, S>);

impl<S: Scalar> Default for Params<S> {
    fn default() -> Self {
        Params(BTreeMap::new())
    }
}

impl<S: Scalar> Params<S> {
    pub fn get(&self, p: Param) -> S {
        self.0.get(&p).cloned().unwrap_or_else(S::zero)
    }

    pub fn with(mut self, p: Param, value: S) -> Self {
        self.0.insert(p, value);
        self
    }

    /// Parses `alpha1=1, alpha5=1/2`; keys may be abbreviated to `a1`, `b2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Params::default();
        for item in text.split([',', ';', ' ']).filter(|s| !s.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found '{item}'")))?;
            let q = crate::scalar::parse_rational(v.trim())
                .ok_or_else(|| Error::Parse(format!("bad number '{v}'")))?;
            out.0.insert(k.parse()?, S::from_rational(&q));
        }
        Ok(out)
    }
}

/// A validated row of the normal-form table.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionFamily<S: Scalar> {
    pub case: Case,
    pub params: Params<S>,
}

#[derive(Clone, Copy)]
enum Rel {
    Zero,
    Positive,
    NonZero,
}

impl<S: Scalar> TorsionFamily<S> {
    /// Validates the row conditions, exactly on exact backends and up to `tol` on floats.
    pub fn new(case: Case, params: Params<S>, tol: f64) -> Result<Self> {
        let fam = TorsionFamily { case, params };
        fam.validate(tol)?;
        Ok(fam)
    }

    fn validate(&self, tol: f64) -> Result<()> {
        use Param::*;
        let v = |p: Param| self.params.get(p);
        let zero = |x: &S| x.is_negligible(tol);
        let check = |p: Param, rel: Rel| -> Result<()> {
            let x = v(p);
            let ok = match rel {
                Rel::Zero => zero(&x),
                Rel::Positive => x.is_positive() && !zero(&x),
                Rel::NonZero => !zero(&x),
            };
            if ok {
                Ok(())
            } else {
                let rel = match rel {
                    Rel::Zero => "= 0",
                    Rel::Positive => "> 0",
                    Rel::NonZero => "≠ 0",
                };
                Err(Error::Condition(format!("case {} requires {} {rel}", self.case, p.name())))
            }
        };
        for p in Param::ALL {
            if !self.case.parameter_names().contains(&p) {
                check(p, Rel::Zero)?;
            }
        }
        // α3 > 0, or α3 = 0 and α4 > 0
        let phase = || -> Result<()> {
            if zero(&v(Alpha3)) {
                check(Alpha4, Rel::Positive)
                    .map_err(|_| Error::Condition(format!("case {} requires alpha3 > 0, or alpha3 = 0 and alpha4 > 0", self.case)))
            } else {
                check(Alpha3, Rel::Positive)
            }
        };
        let beta_so3 = || -> Result<()> {
            check(Beta1, Rel::NonZero)?;
            if !(v(Beta1) - S::from_i64(2) * v(Beta2)).is_negligible(tol) {
                return Err(Error::Condition(format!("case {} requires beta1 = 2 beta2", self.case)));
            }
            Ok(())
        };
        match self.case {
            Case::I => {
                check(Alpha1, Rel::Zero)?;
                check(Alpha3, Rel::Zero)?;
                check(Alpha4, Rel::Zero)?;
                check(Alpha5, Rel::Positive)
            }
            Case::II => {
                check(Alpha1, Rel::Positive)?;
                check(Alpha3, Rel::Zero)?;
                check(Alpha4, Rel::Zero)?;
                check(Alpha5, Rel::Zero)
            }
            Case::III => {
                check(Alpha1, Rel::Positive)?;
                check(Alpha5, Rel::Zero)?;
                phase()
            }
            Case::IV => {
                check(Alpha1, Rel::Zero)?;
                check(Alpha5, Rel::Positive)?;
                phase()
            }
            Case::V => {
                check(Alpha1, Rel::Positive)?;
                check(Alpha3, Rel::Zero)?;
                check(Alpha4, Rel::Zero)?;
                check(Alpha5, Rel::Positive)
            }
            Case::VI => {
                check(Alpha1, Rel::Positive)?;
                check(Alpha5, Rel::Positive)?;
                phase()
            }
            Case::VII => {
                check(Alpha1, Rel::Positive)?;
                check(Alpha2, Rel::Zero)?;
                check(Beta1, Rel::Zero)?;
                check(Beta2, Rel::Zero)
            }
            Case::VIII => {
                check(Alpha1, Rel::Zero)?;
                check(Alpha2, Rel::Zero)?;
                check(Beta1, Rel::Zero)?;
                check(Beta2, Rel::NonZero)
            }
            Case::IX => {
                check(Alpha1, Rel::Zero)?;
                check(Alpha2, Rel::Zero)?;
                check(Beta1, Rel::NonZero)?;
                check(Beta2, Rel::Zero)
            }
            Case::X => {
                check(Alpha1, Rel::Zero)?;
                check(Alpha2, Rel::Zero)?;
                beta_so3()
            }
            Case::XI => {
                if zero(&v(Alpha1)) && zero(&v(Alpha2)) {
                    return Err(Error::Condition(
                        "case XI requires (alpha1, alpha2) ≠ (0, 0)".into(),
                    ));
                }
                beta_so3()
            }
        }
    }

    /// Closed-form squared norms `(‖T2‖², ‖T12‖², ‖T6‖²)`.
    pub fn expected_norms(&self) -> [S; 3] {
        use Param::*;
        let v = |p: Param| self.params.get(p);
        let two = S::from_i64(2);
        let four = S::from_i64(4);
        if self.case.first_family() {
            [
                v(Alpha1).square(),
                v(Alpha1).square() + two.clone() * (v(Alpha3).square() + v(Alpha4).square()),
                two * v(Alpha5).square(),
            ]
        } else {
            [
                four.clone() * (v(Alpha1).square() + v(Alpha2).square()),
                two * v(Beta1).square() + four * v(Beta2).square(),
                S::zero(),
            ]
        }
    }
}

fn lit<S: Scalar>(text: &str) -> Form<S> {
    Form::parse(text).expect("valid literal")
}

/// Generators of the first family: `α1, α3, α4, α5` slots.
pub fn first_family_generators<S: Scalar>() -> [Form<S>; 4] {
    [lit("e145+e235"), lit("e125-e345"), lit("e126-e346"), lit("e125+e345")]
}

/// Generators of the second family: `α1, α2, β1, β2` slots.
pub fn second_family_generators<S: Scalar>() -> [Form<S>; 4] {
    [
        lit("e145+e235+e136-e246"),
        lit("-e135+e245+e146+e236"),
        lit("e125-e345"),
        lit("e135-e245+e146+e236"),
    ]
}

pub fn make_torsion<S: Scalar>(f: &TorsionFamily<S>) -> Form<S> {
    let names = f.case.parameter_names();
    let gens = if f.case.first_family() {
        first_family_generators()
    } else {
        second_family_generators()
    };
    gens.iter()
        .zip(names)
        .fold(Form::zero(3), |acc, (g, p)| acc + g.scale(&f.params.get(*p)))
}

/// First-family form with the extra `γ (e13+e24)∧e6` slot that the Bianchi identity excludes.
pub fn first_family_with_gamma<S: Scalar>(alpha: [S; 4], gamma: S) -> Form<S> {
    let gens = first_family_generators::<S>();
    let base = gens.iter().zip(&alpha).fold(Form::zero(3), |acc, (g, a)| acc + g.scale(a));
    base + lit::<S>("e136+e246").scale(&gamma)
}

/// Reads the parameters of a form already written in one of the two normal shapes.
pub fn read_normal_form<S: Scalar>(t: &Form<S>) -> Option<(bool, Params<S>)> {
    let half = S::ratio(1, 2);
    let mut found = None;
    for first in [true, false] {
        let (names, gens) = if first {
            (Case::I.parameter_names(), first_family_generators::<S>())
        } else {
            (Case::VII.parameter_names(), second_family_generators::<S>())
        };
        let coeffs: Vec<S> = if first {
            let a5 = (t.coeff(125) + t.coeff(345)) * half.clone();
            let a3 = (t.coeff(125) - t.coeff(345)) * half.clone();
            vec![t.coeff(145), a3, t.coeff(126), a5]
        } else {
            let a2 = (t.coeff(146) - t.coeff(135)) * half.clone();
            let b2 = (t.coeff(146) + t.coeff(135)) * half.clone();
            vec![t.coeff(145), a2, t.coeff(125), b2]
        };
        let rebuilt = gens.iter().zip(&coeffs).fold(Form::zero(3), |acc, (g, c)| acc + g.scale(c));
        if rebuilt.approx_eq(t) {
            let params =
                Params(names.iter().copied().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect());
            found.get_or_insert((first, params));
        }
    }
    found
}

/// `σ_T = ½ Σ (e_i ⨼ T) ∧ (e_i ⨼ T)`.
pub fn sigma<S: Scalar>(t: &Form<S>) -> Result<Form<S>> {
    t.require_degree(3)?;
    Ok(d_parallel(t, t).scale(&S::ratio(1, 2)))
}

/// `dα = Σ (e_i ⨼ α) ∧ (e_i ⨼ T)` for an α parallel with respect to the characteristic connection.
pub fn d_parallel<S: Scalar>(a: &Form<S>, t: &Form<S>) -> Form<S> {
    let mut out = Form::zero((a.degree() + 1).min(DIM));
    if a.degree() == 0 {
        return out;
    }
    for i in 1..=DIM {
        out = out + a.contract_basis(i).wedge(&t.contract_basis(i));
    }
    out
}

/// `(δ^g - δ^c) w = ½ Σ_{i,j} (e_ij ⨼ T) ∧ (e_ij ⨼ w)`.
pub fn codiff_gap<S: Scalar>(t: &Form<S>, w: &Form<S>) -> Result<Form<S>> {
    t.require_degree(3)?;
    if w.degree() < 2 {
        return Err(Error::Invalid("codifferential gap needs a form of degree at least 2".into()));
    }
    let mut out = Form::zero(w.degree() - 1);
    for i in 1..=DIM {
        for j in 1..=DIM {
            if i == j {
                continue;
            }
            let tij = t.contract_basis(i).contract_basis(j);
            let wij = w.contract_basis(i).contract_basis(j);
            out = out + tij.wedge(&wij);
        }
    }
    Ok(out.scale(&S::ratio(1, 2)))
}

/// Normal form `(λ, μ1, μ2)` of the SO(3)-orbit of a pair of vectors in `R^3`.
pub fn so3_pair_reduce<S: Scalar>(v: &[S; 3], w: &[S; 3]) -> Result<(S, S, S)> {
    let dot = |a: &[S; 3], b: &[S; 3]| {
        a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };
    let sqrt = |x: S| {
        x.try_sqrt().ok_or_else(|| Error::Irrational(format!("square root of {x}")))
    };
    let lambda = sqrt(dot(v, v))?;
    if lambda.is_zero() {
        return Ok((S::zero(), sqrt(dot(w, w))?, S::zero()));
    }
    let mu1 = dot(v, w) / lambda.clone();
    let k = mu1.clone() / lambda.clone();
    let rest: [S; 3] = std::array::from_fn(|i| w[i].clone() - k.clone() * v[i].clone());
    let mu2 = sqrt(dot(&rest, &rest))?;
    Ok((lambda, mu1, mu2))
}

/// `3‖T2‖² - ‖T12‖² + ‖T6‖²` and whether it vanishes within `tol`.
pub fn lie_group_criterion<S: Scalar>(t: &Form<S>, tol: f64) -> Result<(S, bool)> {
    let c = project_l3(t)?;
    let value = S::from_i64(3) * c.norm2_t2 - c.norm2_t12 + c.norm2_t6;
    let holds = value.is_negligible(tol);
    Ok((value, holds))
}

/// Outcome of the curvature search in `S²(hol)`.
#[derive(Clone, Debug)]
pub struct BianchiOutcome<S: Scalar> {
    pub feasible: bool,
    pub witness: Option<CurvatureRecord<S>>,
    /// Dimension of the solution space when feasible.
    pub freedom: usize,
}

/// Searches for `R = Σ r_ab h_a ⊗ h_b` (r symmetric) with cyclic sum `σ_T`.
pub fn bianchi_feasible<S: Scalar>(
    t: &Form<S>,
    hol: Option<&[SkewEndo<S>]>,
) -> Result<BianchiOutcome<S>> {
    t.require_degree(3)?;
    let hol: Vec<SkewEndo<S>> = match hol {
        Some(h) => {
            if h.iter().any(|a| !a.act(t).is_zero()) {
                return Err(Error::Subspace("holonomy algebra does not fix the torsion".into()));
            }
            h.to_vec()
        }
        None => isotropy_algebra(t)?,
    };
    let target = sigma(t)?;
    let n = hol.len();
    let forms: Vec<Form<S>> = hol.iter().map(|h| h.to_form()).collect();
    // the cyclic sum of h_a ⊗ h_b + h_b ⊗ h_a is h_a ∧ h_b
    let mut unknowns = Vec::new();
    let mut columns = Vec::new();
    for a in 0..n {
        for b in a..n {
            let w = forms[a].wedge(&forms[b]);
            let w = if a == b { w.scale(&S::ratio(1, 2)) } else { w };
            columns.push(w.to_coords());
            unknowns.push((a, b));
        }
    }
    let rhs = target.to_coords();
    let solution = if columns.is_empty() {
        if target.is_zero() {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        Mat::from_columns(&columns, rhs.len()).solve(&rhs)
    };
    let Some(sol) = solution else {
        return Ok(BianchiOutcome { feasible: false, witness: None, freedom: 0 });
    };
    let mut r = Mat::zeros(n, n);
    for ((a, b), x) in unknowns.iter().zip(sol) {
        r[(*a, *b)] = x.clone();
        r[(*b, *a)] = x;
    }
    let freedom = if columns.is_empty() {
        0
    } else {
        columns.len() - Mat::from_columns(&columns, rhs.len()).rank()
    };
    let witness = CurvatureRecord::from_algebra(&hol, &r);
    if !witness.bianchi_sum().approx_eq(&target) {
        return Err(Error::Inconsistent("Bianchi witness does not reproduce σ_T".into()));
    }
    Ok(BianchiOutcome { feasible: true, witness: Some(witness), freedom })
}

/// Orbit invariants used for matching: squared norms and quartic norms of σ.
pub fn orbit_invariants<S: Scalar>(t: &Form<S>) -> Result<BTreeMap<&'static str, S>> {
    let c = project_l3(t)?;
    let omega2 = crate::forms::kaehler_form::<S>().wedge(&crate::forms::kaehler_form());
    let s = sigma(t)?;
    let mut out = BTreeMap::new();
    out.insert("norm2T2", c.norm2_t2.clone());
    out.insert("norm2T12", c.norm2_t12.clone());
    out.insert("norm2T6", c.norm2_t6.clone());
    out.insert("sigmaOmega2", s.inner(&omega2)?);
    out.insert("sigmaNorm2", s.norm2());
    out.insert("sigma12Norm2", sigma(&c.t12)?.norm2());
    out.insert("sigma2x12Norm2", d_parallel(&c.t2, &c.t12).norm2());
    Ok(out)
}

/// Candidate parameter set for an orbit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub case: Option<Case>,
    pub params: BTreeMap<Param, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Norms {
    pub t2: f64,
    pub t12: f64,
    pub t6: f64,
    pub exact: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieCriterion {
    pub value: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Criteria {
    pub lie_group: LieCriterion,
    pub bianchi_feasible: bool,
    pub clifford_scalar_square: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    /// Squared norms of the three components.
    pub norms: Norms,
    pub strict_type: String,
    pub iso_label: String,
    pub iso_dim: usize,
    pub iso_basis: Vec<String>,
    /// Matched row of the table, when unique.
    pub case_tag: Option<String>,
    pub ambiguous: bool,
    pub candidates: Vec<Candidate>,
    pub verdict: String,
    pub criteria: Criteria,
    pub invariants: BTreeMap<String, f64>,
}

fn sqrt_f(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

pub fn classify_form<S: Scalar>(t: &Form<S>) -> Result<ClassificationReport> {
    let tol = presence_tol::<S>();
    let comps = project_l3(t)?;
    let strict = type_of_components(&comps, tol);
    let iso = isotropy_algebra(t)?;
    let label = identify_algebra(&iso)?;
    let (lie_value, lie_holds) = lie_group_criterion(t, tol)?;
    let bianchi = bianchi_feasible(t, Some(&iso))?;
    let clifford = crate::clifford::is_scalar_square(t, tol)?.0;
    let invariants = orbit_invariants(t)?;
    let inv_f: BTreeMap<String, f64> =
        invariants.iter().map(|(k, v)| (k.to_string(), v.to_f64())).collect();
    let [n2, n12, n6] = [
        comps.norm2_t2.to_f64(),
        comps.norm2_t12.to_f64(),
        comps.norm2_t6.to_f64(),
    ];

    let mut candidates = Vec::new();
    let mut ambiguous = false;
    let mut verdict: String;
    if let Some(case) = normal_form_case(t, tol) {
        let (_, params) = read_normal_form(t).expect("normal form");
        candidates.push(Candidate {
            case: Some(case),
            params: params.0.iter().map(|(k, v)| (*k, v.to_f64())).collect(),
        });
        verdict = format!("normal form of case {case}");
    } else {
        let matched = Case::ALL
            .into_iter()
            .filter(|c| c.strict_type() == strict && c.isotropy() == label.tag)
            .collect::<Vec<_>>();
        for case in matched {
            candidates.push(Candidate { case: Some(case), params: params_from_norms(case, n2, n12, n6) });
        }
        if candidates.is_empty() {
            let t1_singular = label.tag == AlgebraTag::T1
                && strict.contains(TorsionClass::W3)
                && !strict.contains(TorsionClass::W4);
            if t1_singular {
                // β1, β2 of the T12 part from ‖T12‖² and ‖σ(T12)‖²
                let s12 = inv_f["sigma12Norm2"];
                for (b1, b2) in beta_candidates(n12, s12) {
                    let mut params = BTreeMap::new();
                    params.insert(Param::Beta1, b1);
                    params.insert(Param::Beta2, b2);
                    if strict.contains(TorsionClass::W1) {
                        params.insert(Param::Alpha1, sqrt_f(n2) / 2.0);
                    }
                    candidates.push(Candidate { case: None, params });
                }
                ambiguous = candidates.len() > 1;
                verdict = "singular orbit with one-dimensional isotropy; excluded by the Bianchi identity"
                    .into();
            } else if label.dim == 0 {
                verdict = "not a parallel-torsion orbit candidate (trivial isotropy)".into();
            } else {
                verdict = "non-singular or unrealizable orbit".into();
            }
        } else {
            verdict = "matched by strict type and isotropy".into();
        }
    }
    if !bianchi.feasible && !verdict.contains("excluded") {
        verdict.push_str("; Bianchi identity infeasible in S²(iso)");
    }
    let case_tag = match candidates.as_slice() {
        [single] => single.case.map(|c| c.to_string()),
        _ => None,
    };
    Ok(ClassificationReport {
        norms: Norms {
            t2: n2,
            t12: n12,
            t6: n6,
            exact: [
                comps.norm2_t2.to_string(),
                comps.norm2_t12.to_string(),
                comps.norm2_t6.to_string(),
            ],
        },
        strict_type: strict.to_string(),
        iso_label: label.tag.to_string(),
        iso_dim: label.dim,
        iso_basis: iso.iter().map(|a| a.to_form().to_string()).collect(),
        case_tag,
        ambiguous,
        candidates,
        verdict,
        criteria: Criteria {
            lie_group: LieCriterion { value: lie_value.to_f64(), holds: lie_holds },
            bianchi_feasible: bianchi.feasible,
            clifford_scalar_square: clifford,
        },
        invariants: inv_f,
    })
}

/// Case of a form written in normal shape with valid row conditions.
pub fn normal_form_case<S: Scalar>(t: &Form<S>, tol: f64) -> Option<Case> {
    let (first, params) = read_normal_form(t)?;
    Case::ALL
        .into_iter()
        .filter(|c| c.first_family() == first)
        .find(|c| TorsionFamily::new(*c, params.clone(), tol).is_ok())
}

fn params_from_norms(case: Case, n2: f64, n12: f64, n6: f64) -> BTreeMap<Param, f64> {
    use Param::*;
    let mut p = BTreeMap::new();
    match case {
        Case::I => {
            p.insert(Alpha5, sqrt_f(n6 / 2.0));
        }
        Case::II => {
            p.insert(Alpha1, sqrt_f(n2));
        }
        Case::V => {
            p.insert(Alpha1, sqrt_f(n2));
            p.insert(Alpha5, sqrt_f(n6 / 2.0));
        }
        Case::VII => {
            p.insert(Alpha1, sqrt_f(n2) / 2.0);
        }
        Case::VIII => {
            p.insert(Beta2, sqrt_f(n12 / 4.0));
        }
        Case::IX => {
            p.insert(Beta1, sqrt_f(n12 / 2.0));
        }
        Case::X | Case::XI => {
            let b2 = sqrt_f(n12 / 12.0);
            p.insert(Beta1, 2.0 * b2);
            p.insert(Beta2, b2);
        }
        // phases of (α3, α4) and (α1, α2) are not fixed by the norms
        Case::III | Case::IV | Case::VI => {}
    }
    p
}

/// Solutions `(β1, β2)`, both positive, of `2β1² + 4β2² = n12` and
/// `(2β2² - β1²)² + 8β2⁴ = s12`.
pub fn beta_candidates(n12: f64, s12: f64) -> Vec<(f64, f64)> {
    // with u = β1², v = β2², u = n12/2 - 2v gives 24v² - 4 n12 v + n12²/4 - s12 = 0
    let (a, b, c) = (24.0, -4.0 * n12, n12 * n12 / 4.0 - s12);
    let disc = b * b - 4.0 * a * c;
    let scale = 1e-9 * (1.0 + n12 * n12);
    if disc < -scale {
        return Vec::new();
    }
    let root = sqrt_f(disc);
    let mut roots = vec![(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)];
    if root <= scale {
        roots.truncate(1);
    }
    roots
        .into_iter()
        .filter_map(|v| {
            let u = n12 / 2.0 - 2.0 * v;
            (u > scale && v > scale).then(|| (u.sqrt(), v.sqrt()))
        })
        .collect()
}

impl<S: Scalar> TorsionFamily<S> {
    /// Sample of the row with the given free parameters, filling fixed ones.
    pub fn sample(case: Case, a: S, b: S, c: S) -> Result<Self> {
        use Param::*;
        let p = Params::default();
        let p = match case {
            Case::I => p.with(Alpha5, a),
            Case::II => p.with(Alpha1, a),
            Case::III => p.with(Alpha1, a).with(Alpha3, b).with(Alpha4, c),
            Case::IV => p.with(Alpha5, a).with(Alpha3, b).with(Alpha4, c),
            Case::V => p.with(Alpha1, a).with(Alpha5, b),
            Case::VI => p.with(Alpha1, a.clone()).with(Alpha3, b).with(Alpha4, c).with(Alpha5, a),
            Case::VII => p.with(Alpha1, a),
            Case::VIII => p.with(Beta2, a),
            Case::IX => p.with(Beta1, a),
            Case::X => p.with(Beta1, S::from_i64(2) * a.clone()).with(Beta2, a),
            Case::XI => p
                .with(Alpha1, b)
                .with(Alpha2, c)
                .with(Beta1, S::from_i64(2) * a.clone())
                .with(Beta2, a),
        };
        TorsionFamily::new(case, p, presence_tol::<S>())
    }
}
