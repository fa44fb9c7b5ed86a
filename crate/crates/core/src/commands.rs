//! Serializable reports behind each command-line subcommand.

use crate::clifford::{cluster, is_scalar_square, parallel_spinors, torsion_spinor_spectrum};
use crate::endo::SkewEndo;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::nil::StructureEquations;
use crate::orbits::{
    d_parallel, lie_group_criterion, make_torsion, sigma, Case, Param, Params, TorsionFamily,
};
use crate::scalar::{Backend, Scalar};
use crate::unitary::{identify_algebra, isotropy_algebra, so3_diagonal_basis, su2_block_basis};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Parses a degree-three form literal.
pub fn parse_three_form<S: Scalar>(text: &str) -> Result<Form<S>> {
    let t = Form::parse(text)?;
    t.require_degree(3)?;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub case: String,
    pub params: BTreeMap<String, String>,
    pub torsion: String,
    pub strict_type: String,
    /// Closed-form squared norms of the three components.
    pub expected_norms: [String; 3],
}

/// Validated normal form of a table row. Rows X and XI tie `β1 = 2β2`, so an omitted
/// `β1` is filled in from `β2`.
pub fn family<S: Scalar>(case: &str, params: &str, tol: f64) -> Result<(Form<S>, FamilyReport)> {
    let case: Case = case.parse()?;
    let mut params = Params::<S>::parse(params)?;
    if matches!(case, Case::X | Case::XI) && !params.0.contains_key(&Param::Beta1) {
        if let Some(b2) = params.0.get(&Param::Beta2).cloned() {
            params = params.with(Param::Beta1, S::from_i64(2) * b2);
        }
    }
    let family = TorsionFamily::new(case, params, tol)?;
    let t = make_torsion(&family);
    let report = FamilyReport {
        case: case.to_string(),
        params: family.params.0.iter().map(|(k, v)| (k.name().to_string(), v.to_string())).collect(),
        torsion: t.to_string(),
        strict_type: case.strict_type().to_string(),
        expected_norms: family.expected_norms().map(|x| x.to_string()),
    };
    Ok((t, report))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IsotropyReport {
    pub torsion: String,
    pub dim: usize,
    pub label: String,
    pub basis: Vec<String>,
}

pub fn isotropy<S: Scalar>(t: &Form<S>) -> Result<IsotropyReport> {
    let iso = isotropy_algebra(t)?;
    let label = identify_algebra(&iso)?;
    Ok(IsotropyReport {
        torsion: t.to_string(),
        dim: label.dim,
        label: label.tag.to_string(),
        basis: iso.iter().map(|a| a.to_form().to_string()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SigmaReport {
    pub torsion: String,
    pub sigma: String,
    /// `dT` of a parallel torsion form.
    pub d_torsion: String,
    pub closed: bool,
}

pub fn sigma_report<S: Scalar>(t: &Form<S>) -> Result<SigmaReport> {
    let s = sigma(t)?;
    let dt = d_parallel(t, t);
    Ok(SigmaReport { torsion: t.to_string(), sigma: s.to_string(), closed: dt.is_zero(), d_torsion: dt.to_string() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CliffordReport {
    pub torsion: String,
    pub scalar_square: bool,
    pub square: Option<String>,
    /// `3‖T2‖² − ‖T12‖² + ‖T6‖²`.
    pub lie_value: String,
    pub lie_holds: bool,
    pub closed: bool,
}

pub fn clifford<S: Scalar>(t: &Form<S>, tol: f64) -> Result<CliffordReport> {
    let (scalar_square, square) = is_scalar_square(t, tol)?;
    let (value, holds) = lie_group_criterion(t, tol)?;
    Ok(CliffordReport {
        torsion: t.to_string(),
        scalar_square,
        square: square.map(|s| s.to_string()),
        lie_value: value.to_string(),
        lie_holds: holds,
        closed: d_parallel(t, t).is_zero(),
    })
}

/// Holonomy algebra used for parallel spinors.
#[derive(Clone, Debug, PartialEq)]
pub enum Holonomy<S: Scalar> {
    /// The isotropy algebra of the torsion.
    Isotropy,
    Trivial,
    Su2,
    So3,
    /// Span of explicit two-forms.
    Forms(Vec<Form<S>>),
}

impl<S: Scalar> Holonomy<S> {
    /// `iso`, `trivial`, `su2`, `so3`, or two-forms separated by `;`.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text.trim() {
            "iso" => Holonomy::Isotropy,
            "trivial" => Holonomy::Trivial,
            "su2" => Holonomy::Su2,
            "so3" => Holonomy::So3,
            list => Holonomy::Forms(
                list.split(';')
                    .map(|w| {
                        let w = Form::parse(w)?;
                        w.require_degree(2)?;
                        Ok(w)
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn basis(&self, t: &Form<S>) -> Result<Vec<SkewEndo<S>>> {
        match self {
            Holonomy::Isotropy => isotropy_algebra(t),
            Holonomy::Trivial => Ok(Vec::new()),
            Holonomy::Su2 => Ok(su2_block_basis()),
            Holonomy::So3 => Ok(so3_diagonal_basis()),
            Holonomy::Forms(forms) => forms.iter().map(SkewEndo::from_form).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpinorReport {
    pub torsion: String,
    pub holonomy: String,
    pub parallel_spinors: usize,
    pub eigenvalues: Vec<f64>,
    /// Distinct eigenvalues with multiplicities.
    pub clusters: Vec<(f64, usize)>,
}

pub fn spinors<S: Scalar>(t: &Form<S>, hol: &Holonomy<S>) -> Result<SpinorReport> {
    t.require_degree(3)?;
    let basis = hol.basis(t)?;
    let holonomy = identify_algebra(&basis).map(|l| l.tag.to_string()).unwrap_or_else(|_| "unknown".into());
    let (count, _) = parallel_spinors(&basis);
    let eigenvalues: Vec<f64> =
        torsion_spinor_spectrum(t, &basis)?.into_iter().map(|v| v + 0.0).collect();
    let clusters = cluster(&eigenvalues);
    Ok(SpinorReport { torsion: t.to_string(), holonomy, parallel_spinors: count, eigenvalues, clusters })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BettiReport {
    pub equations: String,
    pub betti: Vec<usize>,
    pub nilpotent: bool,
    pub normal_form: Option<String>,
}

/// Betti numbers of the Lie algebra with the given structure equations.
pub fn betti<S: Scalar>(text: &str, params: &str) -> Result<BettiReport> {
    let values: HashMap<String, S> = crate::catalog::parse_params::<S>(params)?.into_iter().collect();
    let eqs = StructureEquations::<S>::parse(text, &values)?;
    Ok(BettiReport {
        equations: eqs.to_short(),
        betti: eqs.betti_numbers(),
        nilpotent: eqs.has_nilpotent_filtration(),
        normal_form: eqs.normal_form(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsReport {
    /// `(degree, dimension)` pairs.
    pub dims: Vec<(usize, usize)>,
    pub total: usize,
}

pub fn invariants(max_degree: usize, allow_large: bool) -> Result<InvariantsReport> {
    if max_degree == 0 {
        return Err(Error::Invalid("maximal degree must be positive".into()));
    }
    let dims = crate::invariants::invariant_poly_dims(max_degree, allow_large)?;
    let total = dims.iter().map(|(_, d)| d).sum();
    Ok(InvariantsReport { dims, total })
}

/// Lower-case backend name.
pub fn backend_name(backend: Backend) -> &'static str {
    match backend {
        Backend::Rational => "rational",
        Backend::Surd => "surd",
        Backend::Float => "float",
    }
}
