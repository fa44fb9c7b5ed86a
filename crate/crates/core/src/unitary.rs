//! The hermitian model `(R^6, g, J, Ω)`: splittings of so(6) and of 3-forms,
//! intrinsic torsion typing, the U(2) splitting, tori and isotropy algebras.

use crate::endo::{complex_structure, torus_generator, SkewEndo};
use crate::error::{Error, Result};
use crate::forms::{basis_vector, kaehler_form, Form, Monomial, DIM};
use crate::linalg::{coordinates, independent_subset, rank_of, Mat};
use crate::scalar::Scalar;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Parts of a skew endomorphism under `so(6) = u(3) ⊕ m6 = R ⊕ su(3) ⊕ m6`.
#[derive(Clone, Debug)]
pub struct So6Split<S: Scalar> {
    pub u3: SkewEndo<S>,
    pub m6: SkewEndo<S>,
    pub su3: SkewEndo<S>,
    pub center: SkewEndo<S>,
}

pub fn split_so6<S: Scalar>(a: &SkewEndo<S>) -> So6Split<S> {
    let j = complex_structure::<S>();
    let jaj = j.matrix().mul(a.matrix()).mul(j.matrix());
    let half = S::ratio(1, 2);
    let u3 = SkewEndo::new(a.matrix().sub(&jaj).scale(&half)).expect("skew");
    let m6 = SkewEndo::new(a.matrix().add(&jaj).scale(&half)).expect("skew");
    // orthogonal projection onto J; <J, J> = 6 in the trace form
    let c = -(u3.matrix().mul(j.matrix()).trace()) / S::from_i64(6);
    let center = j.scale(&c);
    let su3 = u3.sub(&center);
    So6Split { u3, m6, su3, center }
}

pub fn project_u3<S: Scalar>(a: &SkewEndo<S>) -> SkewEndo<S> {
    split_so6(a).u3
}

pub fn project_m6<S: Scalar>(a: &SkewEndo<S>) -> SkewEndo<S> {
    split_so6(a).m6
}

fn endo_basis<S: Scalar>(literals: &[&str]) -> Vec<SkewEndo<S>> {
    literals
        .iter()
        .map(|s| SkewEndo::from_form(&Form::parse(s).expect("valid literal")).expect("2-form"))
        .collect()
}

/// Basis of u(3) as J-invariant 2-forms.
pub fn u3_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    endo_basis(&[
        "e12", "e34", "e56", "e13+e24", "e14-e23", "e15+e26", "e16-e25", "e35+e46", "e36-e45",
    ])
}

/// Basis of su(3).
pub fn su3_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    endo_basis(&[
        "e12-e34", "e34-e56", "e13+e24", "e14-e23", "e15+e26", "e16-e25", "e35+e46", "e36-e45",
    ])
}

/// Basis of m6 as J-anti-invariant 2-forms.
pub fn m6_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    endo_basis(&["e13-e24", "e14+e23", "e15-e26", "e16+e25", "e35-e46", "e36+e45"])
}

/// su(2) acting on the first two complex coordinates.
pub fn su2_block_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    endo_basis(&["e12-e34", "e13+e24", "e14-e23"])
}

/// so(3) acting diagonally on `C^3 = R^3 ⊗ C`.
pub fn so3_diagonal_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    endo_basis(&["e13+e24", "e15+e26", "e35+e46"])
}

/// `τ(T) = Σ (e_i ⨼ Ω) ∧ (e_i ⨼ T)`.
pub fn tau<S: Scalar>(t: &Form<S>) -> Result<Form<S>> {
    t.require_degree(3)?;
    Ok(tau_unchecked(t))
}

fn tau_unchecked<S: Scalar>(t: &Form<S>) -> Form<S> {
    let omega = kaehler_form::<S>();
    let mut out = Form::zero(3);
    for i in 1..=DIM {
        out = out + omega.contract_basis(i).wedge(&t.contract_basis(i));
    }
    out
}

/// Matrix of an operator on 3-forms in the monomial basis.
pub fn operator_matrix<S: Scalar>(op: impl Fn(&Form<S>) -> Form<S>) -> Mat<S> {
    let basis = Monomial::all(3);
    let columns: Vec<Vec<S>> =
        basis.iter().map(|m| op(&Form::monomial(*m, S::one())).to_coords()).collect();
    Mat::from_columns(&columns, basis.len())
}

pub fn tau_matrix<S: Scalar>() -> Mat<S> {
    operator_matrix(tau_unchecked)
}

/// The three summands of `Λ^3 = Λ^3_2 ⊕ Λ^3_12 ⊕ Λ^3_6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum L3Part {
    Two,
    Twelve,
    Six,
}

impl L3Part {
    pub const ALL: [L3Part; 3] = [L3Part::Two, L3Part::Twelve, L3Part::Six];

    pub fn tau_squared_eigenvalue(self) -> i64 {
        match self {
            L3Part::Two => -9,
            L3Part::Twelve | L3Part::Six => -1,
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            L3Part::Two => 2,
            L3Part::Twelve => 12,
            L3Part::Six => 6,
        }
    }
}

/// Projector onto one summand.
///
/// τ² is `-9` on `Λ^3_2` and `-1` on `Λ^3_12 ⊕ Λ^3_6`, so `Λ^3_2` is cut out by
/// `(τ^4 - 1)/80` and the remaining eigenspace is split by the Lefschetz map
/// `X ↦ Ω ∧ X`, whose image is `Λ^3_6`.
pub fn project_part<S: Scalar>(t: &Form<S>, part: L3Part) -> Result<Form<S>> {
    t.require_degree(3)?;
    let two = || {
        let t2 = tau_unchecked(&tau_unchecked(t));
        let t4 = tau_unchecked(&tau_unchecked(&t2));
        (t4 - t.clone()).scale(&S::ratio(1, 80))
    };
    Ok(match part {
        L3Part::Two => two(),
        L3Part::Six => kaehler_form::<S>().wedge(&Form::from_vector(&lefschetz_adjoint(t))),
        L3Part::Twelve => {
            t.clone() - two() - kaehler_form::<S>().wedge(&Form::from_vector(&lefschetz_adjoint(t)))
        }
    })
}

/// `X` with `Ω ∧ X` the orthogonal projection of `t` onto `Ω ∧ R^6`; `|Ω ∧ e_i|² = 2`.
fn lefschetz_adjoint<S: Scalar>(t: &Form<S>) -> Vec<S> {
    let omega = kaehler_form::<S>();
    let half = S::ratio(1, 2);
    (1..=DIM)
        .map(|i| {
            let image = omega.wedge(&Form::from_vector(&basis_vector(i)));
            t.inner(&image).expect("degree 3") * half.clone()
        })
        .collect()
}

/// Basis of one summand: independent columns of its projector.
pub fn part_basis<S: Scalar>(part: L3Part) -> Vec<Form<S>> {
    let images: Vec<Form<S>> = Monomial::all(3)
        .into_iter()
        .map(|m| project_part(&Form::monomial(m, S::one()), part).expect("degree 3"))
        .collect();
    let coords: Vec<Vec<S>> = images.iter().map(|f| f.to_coords()).collect();
    independent_subset(&coords).into_iter().map(|i| images[i].clone()).collect()
}

/// Components of a 3-form with the divergence vector `x` of `t6 = Ω ∧ x`.
#[derive(Clone, Debug)]
pub struct TorsionComponents<S: Scalar> {
    pub t2: Form<S>,
    pub t12: Form<S>,
    pub t6: Form<S>,
    pub x: Vec<S>,
    pub norm2_t2: S,
    pub norm2_t12: S,
    pub norm2_t6: S,
}

impl<S: Scalar> TorsionComponents<S> {
    pub fn norms2(&self) -> [S; 3] {
        [self.norm2_t2.clone(), self.norm2_t12.clone(), self.norm2_t6.clone()]
    }

    pub fn part(&self, part: L3Part) -> &Form<S> {
        match part {
            L3Part::Two => &self.t2,
            L3Part::Twelve => &self.t12,
            L3Part::Six => &self.t6,
        }
    }
}

/// Inverts `X ↦ Ω ∧ X` on `Λ^3_6`.
pub fn vector_of_six_part<S: Scalar>(t6: &Form<S>) -> Result<Vec<S>> {
    let omega = kaehler_form::<S>();
    let columns: Vec<Vec<S>> =
        (1..=DIM).map(|i| omega.wedge(&Form::from_vector(&basis_vector(i))).to_coords()).collect();
    coordinates(&columns, &t6.to_coords())
        .ok_or_else(|| Error::Subspace("form is not of the shape Ω ∧ X".into()))
}

pub fn project_l3<S: Scalar>(t: &Form<S>) -> Result<TorsionComponents<S>> {
    t.require_degree(3)?;
    let t2 = project_part(t, L3Part::Two)?;
    let t12 = project_part(t, L3Part::Twelve)?;
    let t6 = project_part(t, L3Part::Six)?;
    let x = vector_of_six_part(&t6)
        .map_err(|_| Error::Inconsistent("Λ^3_6 projection not of the form Ω∧X".into()))?;
    Ok(TorsionComponents {
        norm2_t2: t2.norm2(),
        norm2_t12: t12.norm2(),
        norm2_t6: t6.norm2(),
        t2,
        t12,
        t6,
        x,
    })
}

/// Intrinsic torsion as one m6-valued endomorphism per frame vector.
#[derive(Clone, Debug)]
pub struct IntrinsicTorsion<S: Scalar> {
    pub gamma: Vec<SkewEndo<S>>,
}

impl<S: Scalar> IntrinsicTorsion<S> {
    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|g| g.is_zero())
    }

    /// Coordinates in `R^6 ⊗ m6` with the basis of [`m6_basis`]: 36 entries.
    pub fn coords(&self) -> Vec<S> {
        let basis: Vec<Vec<S>> = m6_basis::<S>().iter().map(|b| b.coords()).collect();
        self.gamma
            .iter()
            .flat_map(|g| coordinates(&basis, &g.coords()).expect("component lies in m6"))
            .collect()
    }
}

/// `θ(T) = -½ Σ e_i ⊗ pr_m6(e_i ⨼ T)`.
pub fn theta<S: Scalar>(t: &Form<S>) -> Result<IntrinsicTorsion<S>> {
    t.require_degree(3)?;
    let half = S::ratio(-1, 2);
    let gamma = (1..=DIM)
        .map(|i| {
            let a = SkewEndo::from_form(&t.contract_basis(i)).expect("2-form");
            project_m6(&a).scale(&half)
        })
        .collect();
    Ok(IntrinsicTorsion { gamma })
}

/// The 20x36 matrix of θ in monomial and `R^6 ⊗ m6` coordinates.
pub fn theta_matrix<S: Scalar>() -> Mat<S> {
    let rows: Vec<Vec<S>> = Monomial::all(3)
        .into_iter()
        .map(|m| theta(&Form::monomial(m, S::one())).expect("degree 3").coords())
        .collect();
    Mat::from_rows(&rows)
}

/// Gray–Hervella classes that can carry skew torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TorsionClass {
    W1,
    W3,
    W4,
}

impl TorsionClass {
    pub fn part(self) -> L3Part {
        match self {
            TorsionClass::W1 => L3Part::Two,
            TorsionClass::W3 => L3Part::Twelve,
            TorsionClass::W4 => L3Part::Six,
        }
    }
}

/// Set of classes in which the torsion has a nonzero component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StrictType(pub BTreeSet<TorsionClass>);

impl StrictType {
    pub fn of(classes: &[TorsionClass]) -> Self {
        StrictType(classes.iter().copied().collect())
    }

    pub fn contains(&self, c: TorsionClass) -> bool {
        self.0.contains(&c)
    }

    pub fn is_kaehler(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("kaehler") {
            return Some(StrictType(BTreeSet::new()));
        }
        let mut set = BTreeSet::new();
        for part in text.split(['+', '⊕']) {
            set.insert(match part.trim() {
                "W1" => TorsionClass::W1,
                "W3" => TorsionClass::W3,
                "W4" => TorsionClass::W4,
                _ => return None,
            });
        }
        Some(StrictType(set))
    }
}

impl fmt::Display for StrictType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Kaehler");
        }
        let parts: Vec<String> = self.0.iter().map(|c| format!("{c:?}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Default threshold on squared norms: exact zero on exact backends, 1e-12 on floats.
pub fn presence_tol<S: Scalar>() -> f64 {
    if S::is_exact() {
        0.0
    } else {
        1e-12
    }
}

pub fn torsion_type<S: Scalar>(t: &Form<S>, tol: f64) -> Result<StrictType> {
    let comps = project_l3(t)?;
    Ok(type_of_components(&comps, tol))
}

pub fn type_of_components<S: Scalar>(comps: &TorsionComponents<S>, tol: f64) -> StrictType {
    let mut set = BTreeSet::new();
    for (class, n) in [
        (TorsionClass::W1, &comps.norm2_t2),
        (TorsionClass::W3, &comps.norm2_t12),
        (TorsionClass::W4, &comps.norm2_t6),
    ] {
        if !n.is_negligible(tol) {
            set.insert(class);
        }
    }
    StrictType(set)
}

/// Coordinates of the U(2) splitting of `Λ^3_2 ⊕ Λ^3_12` in the frame with `X = e5`.
#[derive(Clone, Debug)]
pub struct U2Split<S: Scalar> {
    pub omega1: Form<S>,
    pub omega2: Form<S>,
    pub omega3: Form<S>,
    pub omega4: Form<S>,
    pub y: Vec<S>,
}

/// Selfdual J_H-anti-invariant 2-forms on `span(e1..e4)`.
pub fn m2_basis<S: Scalar>() -> Vec<Form<S>> {
    vec![Form::e(13) - Form::e(24), Form::e(14) + Form::e(23)]
}

/// Anti-selfdual 2-forms on `span(e1..e4)`.
pub fn asd_basis<S: Scalar>() -> Vec<Form<S>> {
    vec![Form::e(12) - Form::e(34), Form::e(13) + Form::e(24), Form::e(14) - Form::e(23)]
}

fn horizontal_kaehler<S: Scalar>() -> Form<S> {
    Form::e(12) + Form::e(34)
}

/// `F(ω) = ½ [Ω_H, ω]` with both sides read as endomorphisms.
pub fn f_map<S: Scalar>(w: &Form<S>) -> Form<S> {
    let jh = SkewEndo::from_form(&horizontal_kaehler()).expect("2-form");
    let a = SkewEndo::from_form(w).expect("2-form");
    jh.bracket(&a).scale(&S::ratio(1, 2)).to_form()
}

/// `i1(ω) = ω ∧ e5 - F(ω) ∧ e6`.
pub fn i1<S: Scalar>(w: &Form<S>) -> Form<S> {
    w.wedge(&Form::e(5)) - f_map(w).wedge(&Form::e(6))
}

/// `i2(ω) = ω ∧ e5 + F(ω) ∧ e6`.
pub fn i2<S: Scalar>(w: &Form<S>) -> Form<S> {
    w.wedge(&Form::e(5)) + f_map(w).wedge(&Form::e(6))
}

/// `i3(ω1 + iω2) = ω1 ∧ e5 + ω2 ∧ e6`.
pub fn i3<S: Scalar>(re: &Form<S>, im: &Form<S>) -> Form<S> {
    re.wedge(&Form::e(5)) + im.wedge(&Form::e(6))
}

/// `i5(V) = (Ω_H - Ω_V) ∧ V` for `V` in `span(e1..e4)`.
pub fn i5<S: Scalar>(v: &[S]) -> Form<S> {
    (horizontal_kaehler::<S>() - Form::e(56)).wedge(&Form::from_vector(v))
}

fn combo<S: Scalar>(basis: &[Form<S>], coeffs: &[S]) -> Form<S> {
    basis.iter().zip(coeffs).fold(Form::zero(basis[0].degree()), |acc, (b, c)| acc + b.scale(c))
}

fn require_part<S: Scalar>(t: &Form<S>, part: L3Part, name: &str) -> Result<()> {
    if !project_part(t, part)?.approx_eq(t) {
        return Err(Error::Subspace(format!("{name} is not in Λ^3_{}", part.dimension())));
    }
    Ok(())
}

pub fn u2_split<S: Scalar>(t2: &Form<S>, t12: &Form<S>) -> Result<U2Split<S>> {
    require_part(t2, L3Part::Two, "first argument")?;
    require_part(t12, L3Part::Twelve, "second argument")?;
    let m2 = m2_basis::<S>();
    let asd = asd_basis::<S>();
    let first: Vec<Vec<S>> = m2.iter().map(|w| i1(w).to_coords()).collect();
    let c1 = coordinates(&first, &t2.to_coords())
        .ok_or_else(|| Error::Inconsistent("i1 does not reach the Λ^3_2 input".into()))?;

    let zero2 = Form::<S>::zero(2);
    let mut columns: Vec<Vec<S>> = m2.iter().map(|w| i2(w).to_coords()).collect();
    columns.extend(asd.iter().map(|w| i3(w, &zero2).to_coords()));
    columns.extend(asd.iter().map(|w| i3(&zero2, w).to_coords()));
    columns.extend((1..=4).map(|k| i5(&basis_vector::<S>(k)).to_coords()));
    let c = coordinates(&columns, &t12.to_coords())
        .ok_or_else(|| Error::Inconsistent("i2, i3, i5 do not reach the Λ^3_12 input".into()))?;
    let mut y = c[8..12].to_vec();
    y.extend([S::zero(), S::zero()]);
    Ok(U2Split {
        omega1: combo(&m2, &c1),
        omega2: combo(&m2, &c[0..2]),
        omega3: combo(&asd, &c[2..5]),
        omega4: combo(&asd, &c[5..8]),
        y,
    })
}

impl<S: Scalar> U2Split<S> {
    pub fn reconstruct(&self) -> (Form<S>, Form<S>) {
        let t2 = i1(&self.omega1);
        let t12 = i2(&self.omega2) + i3(&self.omega3, &self.omega4) + i5(&self.y);
        (t2, t12)
    }
}

/// Dimensions of the subspaces of `Λ^3_2`, `Λ^3_12`, `Λ^3_6` fixed by the torus with the given weights.
pub fn torus_fixed_dims(weights: [i64; 3]) -> Result<(usize, usize, usize)> {
    if weights == [0, 0, 0] {
        return Err(Error::Invalid("torus weights must not all vanish".into()));
    }
    type Q = crate::scalar::Rational;
    let xi = torus_generator::<Q>(weights);
    let dims: Vec<usize> = L3Part::ALL
        .iter()
        .map(|&part| {
            let basis = part_basis::<Q>(part);
            let images: Vec<Vec<Q>> = basis.iter().map(|b| xi.act(b).to_coords()).collect();
            basis.len() - rank_of(&images)
        })
        .collect();
    Ok((dims[0], dims[1], dims[2]))
}

/// Conjugacy class of a one-dimensional torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaClass {
    /// Index `1..=8`.
    pub index: u8,
    /// Representative chosen by the canonical ordering and gcd rule.
    pub canonical: [i64; 3],
    /// True when the input differed from its canonical representative.
    pub canonicalized: bool,
    /// True for `(2,1,1)`, which the defining inequalities leave uncovered; it is
    /// assigned to Δ6 by its fixed-space dimensions.
    pub boundary: bool,
}

/// Canonical representative of a torus modulo permutations and integer scaling.
pub fn canonical_weights(weights: [i64; 3]) -> Result<[i64; 3]> {
    if weights == [0, 0, 0] {
        return Err(Error::Invalid("torus weights must not all vanish".into()));
    }
    let g = weights.iter().fold(0i64, |acc, &k| crate::scalar::gcd_i64(acc, k));
    let mut w: Vec<i64> = weights.iter().map(|k| k / g).collect();
    let zeros = w.iter().filter(|&&k| k == 0).count();
    let mut nonzero: Vec<i64> = w.iter().copied().filter(|&k| k != 0).collect();
    match zeros {
        2 => Ok([nonzero[0].abs(), 0, 0]),
        1 => {
            nonzero.sort_by(|a, b| b.abs().cmp(&a.abs()).then(b.cmp(a)));
            if nonzero[0] < 0 {
                nonzero.iter_mut().for_each(|k| *k = -*k);
            }
            if nonzero[0].abs() == nonzero[1].abs() && nonzero[0] < nonzero[1] {
                nonzero.swap(0, 1);
            }
            Ok([nonzero[0], nonzero[1], 0])
        }
        _ => {
            if w.iter().filter(|&&k| k > 0).count() < 2 {
                w.iter_mut().for_each(|k| *k = -*k);
            }
            w.sort_by(|a, b| b.cmp(a));
            Ok([w[0], w[1], w[2]])
        }
    }
}

pub fn delta_class(weights: [i64; 3]) -> Result<DeltaClass> {
    let c = canonical_weights(weights)?;
    let [k1, k2, k3] = c;
    let mut boundary = false;
    let index = if k2 == 0 && k3 == 0 {
        1
    } else if k3 == 0 {
        if k2 == k1 {
            2
        } else if k2 == -k1 {
            3
        } else {
            4
        }
    } else if k1 > k2 && k2 > k3 && k3 == -(k1 - k2) {
        5
    } else if k1 > k2 && k2 > k3 && k3 == k1 - k2 {
        6
    } else if k3 != k1 - k2 && k3 != -(k1 - k2) {
        if k3 == -(k1 + k2) {
            7
        } else {
            8
        }
    } else {
        // only (2,1,1) reaches this branch
        boundary = true;
        6
    };
    Ok(DeltaClass { index, canonical: c, canonicalized: c != weights, boundary })
}

/// Basis of `iso(T) = {A ∈ u(3) : A·T = 0}`.
pub fn isotropy_algebra<S: Scalar>(t: &Form<S>) -> Result<Vec<SkewEndo<S>>> {
    t.require_degree(3)?;
    Ok(annihilator_in(&u3_basis::<S>(), &[t.clone()]))
}

/// Elements of `span(basis)` annihilating every given form.
pub fn annihilator_in<S: Scalar>(basis: &[SkewEndo<S>], forms: &[Form<S>]) -> Vec<SkewEndo<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut columns: Vec<Vec<S>> = vec![Vec::new(); basis.len()];
    for f in forms {
        for (k, b) in basis.iter().enumerate() {
            columns[k].extend(b.act(f).to_coords());
        }
    }
    let rows = columns[0].len();
    if rows == 0 {
        return basis.to_vec();
    }
    Mat::from_columns(&columns, rows)
        .nullspace()
        .into_iter()
        .map(|c| combine_endos(basis, &c))
        .collect()
}

pub fn combine_endos<S: Scalar>(basis: &[SkewEndo<S>], coeffs: &[S]) -> SkewEndo<S> {
    basis.iter().zip(coeffs).fold(SkewEndo::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraTag {
    U3,
    Su3,
    U2(i8),
    Su2,
    So3,
    T2,
    T1,
    Trivial,
    Unknown,
}

impl AlgebraTag {
    pub fn expected_dim(self) -> Option<usize> {
        match self {
            AlgebraTag::U3 => Some(9),
            AlgebraTag::Su3 => Some(8),
            AlgebraTag::U2(_) => Some(4),
            AlgebraTag::Su2 | AlgebraTag::So3 => Some(3),
            AlgebraTag::T2 => Some(2),
            AlgebraTag::T1 => Some(1),
            AlgebraTag::Trivial => Some(0),
            AlgebraTag::Unknown => None,
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Some(match text {
            "u3" => AlgebraTag::U3,
            "su3" => AlgebraTag::Su3,
            "u2_0" => AlgebraTag::U2(0),
            "u2_1" => AlgebraTag::U2(1),
            "u2_-1" => AlgebraTag::U2(-1),
            "su2" => AlgebraTag::Su2,
            "so3" => AlgebraTag::So3,
            "t2" => AlgebraTag::T2,
            "t1" => AlgebraTag::T1,
            "trivial" => AlgebraTag::Trivial,
            "unknown" => AlgebraTag::Unknown,
            _ => return None,
        })
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::U3 => write!(f, "u3"),
            AlgebraTag::Su3 => write!(f, "su3"),
            AlgebraTag::U2(k) => write!(f, "u2_{k}"),
            AlgebraTag::Su2 => write!(f, "su2"),
            AlgebraTag::So3 => write!(f, "so3"),
            AlgebraTag::T2 => write!(f, "t2"),
            AlgebraTag::T1 => write!(f, "t1"),
            AlgebraTag::Trivial => write!(f, "trivial"),
            AlgebraTag::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraEvidence {
    pub derived_dim: usize,
    pub center_dim: usize,
    pub trivial_subspace_dim: usize,
    /// Weights on `C^3` of a center generator, when the center is one-dimensional.
    pub center_weights: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraLabel {
    pub tag: AlgebraTag,
    pub dim: usize,
    pub evidence: AlgebraEvidence,
}

fn span_coords<S: Scalar>(basis: &[SkewEndo<S>]) -> Vec<Vec<S>> {
    basis.iter().map(|b| b.coords()).collect()
}

/// Names a subalgebra of u(3) from structural diagnostics.
pub fn identify_algebra<S: Scalar>(basis: &[SkewEndo<S>]) -> Result<AlgebraLabel> {
    let coords = span_coords(basis);
    let independent = independent_subset(&coords);
    let basis: Vec<SkewEndo<S>> = independent.iter().map(|&i| basis[i].clone()).collect();
    let coords = span_coords(&basis);
    let dim = basis.len();
    let mut brackets = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let br = basis[a].bracket(&basis[b]);
            if coordinates(&coords, &br.coords()).is_none() {
                return Err(Error::NotClosed);
            }
            brackets.push(br.coords());
        }
    }
    let derived_dim = rank_of(&brackets);
    let center = center_of(&basis);
    let center_dim = center.len();
    let trivial_subspace_dim = common_kernel_dim(&basis);
    let mut center_weights = None;
    let mut tag = match (dim, derived_dim) {
        (0, _) => AlgebraTag::Trivial,
        (1, _) => AlgebraTag::T1,
        (2, 0) => AlgebraTag::T2,
        (3, 3) => match trivial_subspace_dim {
            2 => AlgebraTag::Su2,
            0 => AlgebraTag::So3,
            _ => AlgebraTag::Unknown,
        },
        (8, 8) => AlgebraTag::Su3,
        (9, 8) => AlgebraTag::U3,
        _ => AlgebraTag::Unknown,
    };
    if dim == 4 && derived_dim == 3 && center_dim == 1 {
        let z = &center[0];
        center_weights = Some(weights_on_c3(z));
        tag = match u2_level(z) {
            Some(k) => AlgebraTag::U2(k),
            None => AlgebraTag::Unknown,
        };
    }
    if center_dim == 1 && center_weights.is_none() {
        center_weights = Some(weights_on_c3(&center[0]));
    }
    Ok(AlgebraLabel {
        tag,
        dim,
        evidence: AlgebraEvidence { derived_dim, center_dim, trivial_subspace_dim, center_weights },
    })
}

fn center_of<S: Scalar>(basis: &[SkewEndo<S>]) -> Vec<SkewEndo<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let columns: Vec<Vec<S>> = basis
        .iter()
        .map(|a| basis.iter().flat_map(|b| a.bracket(b).coords()).collect())
        .collect();
    let rows = columns[0].len();
    Mat::from_columns(&columns, rows)
        .nullspace()
        .into_iter()
        .map(|c| combine_endos(basis, &c))
        .collect()
}

fn common_kernel_dim<S: Scalar>(basis: &[SkewEndo<S>]) -> usize {
    if basis.is_empty() {
        return DIM;
    }
    let rows: Vec<Vec<S>> = basis.iter().flat_map(|b| (0..DIM).map(|i| b.matrix().row(i))).collect();
    DIM - rank_of(&rows)
}

/// Power sums `Σ w_j^k` of the weights of a J-commuting generator on `C^3`.
fn weight_power_sums<S: Scalar>(z: &SkewEndo<S>) -> [S; 3] {
    let j = complex_structure::<S>();
    let jz = j.matrix().mul(z.matrix());
    let jz2 = jz.mul(&jz);
    let jz3 = jz2.mul(&jz);
    let half = S::ratio(1, 2);
    [-(jz.trace()) * half.clone(), jz2.trace() * half.clone(), -(jz3.trace()) * half]
}

/// Level `k` of `U(2)_k` from the weight pattern `(a, a, 2ka)` of the center generator.
fn u2_level<S: Scalar>(z: &SkewEndo<S>) -> Option<i8> {
    let [p1, p2, p3] = weight_power_sums(z);
    let e1 = p1.clone();
    let e2 = (p1.clone() * p1.clone() - p2.clone()) * S::ratio(1, 2);
    let e3 = (p1.clone() * p1.clone() * p1.clone() - S::from_i64(3) * p1 * p2 + S::from_i64(2) * p3)
        * S::ratio(1, 6);
    let cube = e1.clone() * e1.clone() * e1.clone();
    // k = 0: (a,a,0); k = 1: (a,a,2a); k = -1: (a,a,-2a)
    if e3.is_zero() && (e1.clone() * e1.clone() - S::from_i64(4) * e2.clone()).is_zero() {
        return Some(0);
    }
    if (S::from_i64(16) * e2.clone() - S::from_i64(5) * e1.clone() * e1.clone()).is_zero()
        && (S::from_i64(32) * e3.clone() - cube).is_zero()
        && !e1.is_zero()
    {
        return Some(1);
    }
    if e1.is_zero()
        && (S::from_i64(27) * e3.clone() * e3.clone() + S::from_i64(4) * e2.clone() * e2.clone() * e2)
            .is_zero()
        && !e3.is_zero()
    {
        return Some(-1);
    }
    None
}

/// Weights on `C^3` (sorted) of a J-commuting skew endomorphism, numerically.
pub fn weights_on_c3<S: Scalar>(z: &SkewEndo<S>) -> Vec<f64> {
    let j = complex_structure::<S>();
    let jz = j.matrix().mul(z.matrix()).to_f64();
    let m = nalgebra::DMatrix::from_fn(DIM, DIM, |i, k| -jz[i][k]);
    let mut eig: Vec<f64> = nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    eig.into_iter().step_by(2).collect()
}

/// Result of replacing J by a member of the S^2-family of parallel complex structures.
#[derive(Clone, Debug)]
pub struct Su2Twist<S: Scalar> {
    pub new_j: SkewEndo<S>,
    /// Columns are the adapted frame of the new structure.
    pub frame: Mat<S>,
    /// Torsion expressed in the new adapted frame.
    pub torsion: Form<S>,
    pub alpha1: S,
    pub alpha5: S,
    pub strict_type: StrictType,
}

/// Reads `(α1, α5)` from `α1 (e14+e23)∧e5 + α5 (e12+e34)∧e5`.
pub fn su2_family_params<S: Scalar>(t: &Form<S>) -> Result<(S, S)> {
    let alpha1 = t.coeff(145);
    let alpha5 = t.coeff(125);
    let rebuilt = (Form::e(145) + Form::e(235)).scale(&alpha1)
        + (Form::e(125) + Form::e(345)).scale(&alpha5);
    if !rebuilt.approx_eq(t) {
        return Err(Error::Subspace("form is not in the SU(2) family".into()));
    }
    Ok((alpha1, alpha5))
}

/// Pullback of a 3-form to the frame given by the columns of `frame`.
pub fn form_in_frame<S: Scalar>(t: &Form<S>, frame: &Mat<S>) -> Form<S> {
    let columns: Vec<Vec<S>> = (0..DIM).map(|j| frame.column(j)).collect();
    let mut out = Form::zero(t.degree());
    for m in Monomial::all(t.degree()) {
        let args: Vec<Vec<S>> = m.indices().iter().map(|&i| columns[i - 1].clone()).collect();
        out.add_term(m, t.eval(&args));
    }
    out
}

pub fn su2_twist<S: Scalar>(t: &Form<S>, q: [S; 3], tol: f64) -> Result<Su2Twist<S>> {
    su2_family_params(t)?;
    let norm = q.iter().fold(S::zero(), |acc, x| acc + x.square());
    if !(norm - S::one()).is_negligible(tol) {
        return Err(Error::Invalid("twist parameter is not a unit vector".into()));
    }
    let omega1 = Form::e(14) + Form::e(23);
    let omega2 = Form::e(13) - Form::e(24);
    let omega_h = horizontal_kaehler::<S>();
    let new_omega = omega1.scale(&q[0]) + omega2.scale(&q[1]) + omega_h.scale(&q[2]) + Form::e(56);
    let new_j = SkewEndo::from_form(&new_omega)?;
    let frame = adapted_frame(&new_j)?;
    let torsion = form_in_frame(t, &frame);
    let (alpha1, alpha5) = su2_family_params(&torsion)
        .map_err(|_| Error::Inconsistent("twisted torsion left the SU(2) family".into()))?;
    let strict_type = torsion_type(&torsion, presence_tol::<S>())?;
    Ok(Su2Twist { new_j, frame, torsion, alpha1, alpha5, strict_type })
}

/// Frame `(-J'e2, e2, -J'v, v, e5, e6)` adapted to a complex structure preserving `span(e1..e4)`.
fn adapted_frame<S: Scalar>(new_j: &SkewEndo<S>) -> Result<Mat<S>> {
    let e2 = basis_vector::<S>(2);
    let f1: Vec<S> = new_j.apply(&e2).into_iter().map(|x| -x).collect();
    let mut v = None;
    for candidate in [4usize, 3, 1] {
        let c = basis_vector::<S>(candidate);
        let proj1 = crate::linalg::dot(&c, &f1);
        let proj2 = crate::linalg::dot(&c, &e2);
        let w: Vec<S> = (0..DIM)
            .map(|i| c[i].clone() - proj1.clone() * f1[i].clone() - proj2.clone() * e2[i].clone())
            .collect();
        let n2 = crate::linalg::dot(&w, &w);
        if !n2.is_zero() {
            let n = n2
                .try_sqrt()
                .ok_or_else(|| Error::Irrational("normalizing the adapted frame".into()))?;
            v = Some(w.into_iter().map(|x| x / n.clone()).collect::<Vec<S>>());
            break;
        }
    }
    let e4 = v.ok_or_else(|| Error::Inconsistent("no complement in the horizontal space".into()))?;
    let f3: Vec<S> = new_j.apply(&e4).into_iter().map(|x| -x).collect();
    let columns = vec![f1, e2, f3, e4, basis_vector(5), basis_vector(6)];
    Ok(Mat::from_columns(&columns, DIM))
}
