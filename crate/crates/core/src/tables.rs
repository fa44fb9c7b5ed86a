//! Regeneration of the classification tables from first principles, diffed against
//! stored rows.

use crate::catalog::{t2_nomizu_algebra, LocalModel};
use crate::clifford::{cluster, torsion_spinor_spectrum};
use crate::endo::SkewEndo;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::nil::{nil_family_equations, nil_family_torsion, NilFamily};
use crate::orbits::{make_torsion, Case, TorsionFamily};
use crate::scalar::{Rational, Scalar};
use crate::unitary::{
    delta_class, identify_algebra, isotropy_algebra, project_l3, su2_block_basis, torsion_type,
    torus_fixed_dims,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

type Q = Rational;

/// Eigenvalue tolerance for spinor spectra.
pub const SPECTRUM_TOL: f64 = 1e-7;

/// Selectable table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TableId {
    /// Strict types and their connected isotropy groups.
    Types,
    /// Normal-form rows I–XI.
    Cases,
    /// Torus fixed dimensions per conjugacy class.
    TorusFixed,
    /// Parallel spinors for SU(2), T¹ and SO(3) holonomy.
    Spinors,
    /// Local models of the two-torus family with holonomy T¹.
    LocalModels,
    /// Nilmanifold Betti numbers and normal forms.
    Nil,
    /// Parallel spinors of the two-torus family.
    TorusSpinors,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::Types,
        TableId::Cases,
        TableId::TorusFixed,
        TableId::Spinors,
        TableId::LocalModels,
        TableId::Nil,
        TableId::TorusSpinors,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TableId::Types => "1",
            TableId::Cases => "2",
            TableId::TorusFixed => "3",
            TableId::Spinors => "4",
            TableId::LocalModels => "5-local",
            TableId::Nil => "5-nil",
            TableId::TorusSpinors => "6",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TableId::Types => "strict types and connected isotropy",
            TableId::Cases => "normal forms I-XI: type, isotropy, norms",
            TableId::TorusFixed => "torus fixed dimensions on the three torsion modules",
            TableId::Spinors => "parallel spinors for SU(2), T1 and SO(3) torsion",
            TableId::LocalModels => "local models of two-torus structures with holonomy T1",
            TableId::Nil => "nilmanifold types, Betti numbers and normal forms",
            TableId::TorusSpinors => "parallel spinors for two-torus torsion",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.tag() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown table '{s}'")))
    }
}

/// Parses a comma-separated selection such as `1,3,5-nil`; `5` selects both parts of table 5
/// and `all` selects everything.
pub fn parse_selection(text: &str) -> Result<Vec<TableId>> {
    let mut out = BTreeSet::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token {
            "all" => out.extend(TableId::ALL),
            "5" => out.extend([TableId::LocalModels, TableId::Nil]),
            other => {
                out.insert(other.parse()?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Match,
    Mismatch,
    /// Stored row disagrees with computation for a documented reason.
    Unattainable,
    /// Shown for reference, not asserted.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TableRow {
    fn compare(key: impl Into<String>, expected: String, computed: String) -> Self {
        let status = if expected == computed { RowStatus::Match } else { RowStatus::Mismatch };
        TableRow { key: key.into(), expected, computed, status, note: None }
    }

    fn judged(key: impl Into<String>, expected: String, computed: String, ok: bool) -> Self {
        let status = if ok { RowStatus::Match } else { RowStatus::Mismatch };
        TableRow { key: key.into(), expected, computed, status, note: None }
    }

    /// Downgrades a mismatch to a documented conflict.
    fn known_conflict(mut self, reason: &str) -> Self {
        if self.status == RowStatus::Mismatch {
            self.status = RowStatus::Unattainable;
            self.note = Some(reason.into());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    pub table: String,
    pub title: String,
    pub rows: Vec<TableRow>,
    /// No row mismatches.
    pub passed: bool,
    pub unattainable: usize,
}

impl TableReport {
    fn new(id: TableId, rows: Vec<TableRow>) -> Self {
        let passed = rows.iter().all(|r| r.status != RowStatus::Mismatch);
        let unattainable = rows.iter().filter(|r| r.status == RowStatus::Unattainable).count();
        TableReport { table: id.tag().into(), title: id.title().into(), rows, passed, unattainable }
    }
}

/// Regenerates the selected tables in order.
pub fn reproduce(which: &[TableId]) -> Result<Vec<TableReport>> {
    which.iter().map(|&id| reproduce_one(id)).collect()
}

pub fn reproduce_one(id: TableId) -> Result<TableReport> {
    let rows = match id {
        TableId::Types => types_rows()?,
        TableId::Cases => case_rows()?,
        TableId::TorusFixed => torus_rows()?,
        TableId::Spinors => spinor_rows()?,
        TableId::LocalModels => local_model_rows()?,
        TableId::Nil => nil_rows()?,
        TableId::TorusSpinors => torus_spinor_rows()?,
    };
    Ok(TableReport::new(id, rows))
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Three valid parameter samples `(a, b, c)` per normal-form row.
pub fn case_samples() -> [(Q, Q, Q); 3] {
    [(q(3, 2), q(1, 3), q(-2, 5)), (q(1, 1), q(2, 1), q(1, 1)), (q(2, 3), q(1, 5), q(3, 1))]
}

fn case_torsions() -> Result<Vec<(Case, (Q, Q, Q), Form<Q>)>> {
    let mut out = Vec::new();
    for case in Case::ALL {
        for (a, b, c) in case_samples() {
            let family = TorsionFamily::sample(case, a.clone(), b.clone(), c.clone())?;
            out.push((case, (a, b, c), make_torsion(&family)));
        }
    }
    Ok(out)
}

fn iso_tag<S: Scalar>(t: &Form<S>) -> Result<(String, usize)> {
    let label = identify_algebra(&isotropy_algebra(t)?)?;
    Ok((label.tag.to_string(), label.dim))
}

fn types_rows() -> Result<Vec<TableRow>> {
    let stored: [(&str, &[&str]); 6] = [
        ("W1", &["su3"]),
        ("W3", &["so3", "t2", "u2_1"]),
        ("W4", &["u2_0"]),
        ("W1+W3", &["so3", "su2", "t1"]),
        ("W3+W4", &["t2"]),
        ("W1+W3+W4", &["su2", "t1"]),
    ];
    let mut seen: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (_, _, t) in case_torsions()? {
        let strict = torsion_type(&t, 0.0)?.to_string();
        seen.entry(strict).or_default().insert(iso_tag(&t)?.0);
    }
    let mut rows: Vec<TableRow> = stored
        .iter()
        .map(|(ty, isos)| {
            let computed = seen.remove(*ty).map(|s| join(&s)).unwrap_or_default();
            TableRow::compare(*ty, isos.join(","), computed)
        })
        .collect();
    for (ty, isos) in seen {
        rows.push(TableRow::compare(ty, String::new(), join(&isos)));
    }
    Ok(rows)
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(",")
}

fn case_rows() -> Result<Vec<TableRow>> {
    case_torsions()?
        .into_iter()
        .map(|(case, (a, b, c), t)| {
            let family = TorsionFamily::sample(case, a.clone(), b.clone(), c.clone())?;
            let norms = |n: &[Q; 3]| format!("({}, {}, {})", n[0], n[1], n[2]);
            let expected = format!(
                "{} {}({}) norms {}",
                case.strict_type(),
                case.isotropy(),
                case.isotropy().expected_dim().unwrap_or(0),
                norms(&family.expected_norms())
            );
            let (tag, dim) = iso_tag(&t)?;
            let computed = format!(
                "{} {tag}({dim}) norms {}",
                torsion_type(&t, 0.0)?,
                norms(&project_l3(&t)?.norms2())
            );
            Ok(TableRow::compare(format!("{case} at ({a}, {b}, {c})"), expected, computed))
        })
        .collect()
}

/// Fixed dimensions on `(Λ³₂, Λ³₁₂, Λ³₆)` for classes Δ1..Δ8.
pub const TORUS_FIXED: [(usize, usize, usize); 8] =
    [(0, 4, 4), (0, 6, 2), (2, 4, 2), (0, 2, 2), (0, 2, 0), (0, 2, 0), (2, 0, 0), (0, 0, 0)];

/// Two weight tuples per class; the second is an independent representative.
pub const TORUS_TUPLES: [[[i64; 3]; 2]; 8] = [
    [[1, 0, 0], [0, 0, -3]],
    [[1, 1, 0], [0, -2, -2]],
    [[1, -1, 0], [0, 3, -3]],
    [[2, 1, 0], [3, -1, 0]],
    [[2, 1, -1], [3, 1, -2]],
    [[3, 2, 1], [5, 3, 2]],
    [[2, 1, -3], [3, 1, -4]],
    [[3, 2, 2], [5, 2, 1]],
];

fn torus_rows() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (k, tuples) in TORUS_TUPLES.iter().enumerate() {
        for w in tuples {
            let (a, b, c) = TORUS_FIXED[k];
            let class = delta_class(*w)?;
            let (x, y, z) = torus_fixed_dims(*w)?;
            rows.push(TableRow::compare(
                format!("{w:?}"),
                format!("D{} ({a}, {b}, {c})", k + 1),
                format!("D{} ({x}, {y}, {z})", class.index),
            ));
        }
    }
    Ok(rows)
}

/// Spectrum row: parallel-spinor count and the set of distinct eigenvalues.
fn spectrum_row<S: Scalar>(
    key: &str,
    t: &Form<S>,
    hol: &[SkewEndo<S>],
    count: usize,
    allowed: &[f64],
    subset: bool,
) -> Result<TableRow> {
    let values = torsion_spinor_spectrum(t, hol)?;
    let mut expected_set: Vec<f64> = allowed.iter().flat_map(|&v| [v, -v]).collect();
    expected_set.sort_by(|a, b| a.total_cmp(b));
    expected_set.dedup_by(|a, b| (*a - *b).abs() <= SPECTRUM_TOL);
    let clusters: Vec<f64> = cluster(&values).into_iter().map(|(v, _)| v).collect();
    let close = |a: f64, b: f64| (a - b).abs() <= SPECTRUM_TOL * (1.0 + a.abs());
    let ok = values.len() == count
        && if subset {
            clusters.iter().all(|a| expected_set.iter().any(|b| close(*a, *b)))
        } else {
            clusters.len() == expected_set.len()
                && clusters.iter().zip(&expected_set).all(|(a, b)| close(*a, *b))
        };
    let relation = if subset { " within" } else { "" };
    Ok(TableRow::judged(
        key,
        format!("{count} spinors{relation} {}", render_values(&expected_set)),
        format!("{} spinors {}", values.len(), render_values(&clusters)),
        ok,
    ))
}

fn render_values(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{:.6}", v + 0.0)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn norm<S: Scalar>(norm2: &S) -> f64 {
    norm2.to_f64().max(0.0).sqrt()
}

fn spinor_rows() -> Result<Vec<TableRow>> {
    let root2 = 2f64.sqrt();
    let mut rows = Vec::new();
    for case in [Case::II, Case::V] {
        let t = make_torsion(&TorsionFamily::sample(case, q(1, 1), q(1, 2), q(0, 1))?);
        let v = root2 * norm(&t.norm2());
        rows.push(spectrum_row(&format!("hol su2, case {case}"), &t, &su2_block_basis(), 4, &[v], false)?);
    }
    for case in [Case::II, Case::V] {
        let t = make_torsion(&TorsionFamily::sample(case, q(2, 1), q(1, 3), q(0, 1))?);
        let circle = su2_block_basis::<Q>()[0].clone();
        let v = root2 * norm(&t.norm2());
        rows.push(spectrum_row(&format!("hol t1, case {case}"), &t, &[circle], 4, &[v], false)?);
    }
    for case in [Case::X, Case::XI] {
        let t = make_torsion(&TorsionFamily::sample(case, q(1, 1), q(1, 2), q(1, 3))?);
        let iso = isotropy_algebra(&t)?;
        let c = project_l3(&t)?;
        let v2 = 2.0 * norm(&c.norm2_t2);
        let v12 = 2.0 / 3f64.sqrt() * norm(&c.norm2_t12);
        rows.push(spectrum_row(&format!("hol so3, case {case}"), &t, &iso, 2, &[v2], false)?);
        rows.push(spectrum_row(&format!("hol trivial, case {case}"), &t, &[], 8, &[v2, v12], false)?);
    }
    Ok(rows)
}

fn torus_spinor_rows() -> Result<Vec<TableRow>> {
    let root2 = 2f64.sqrt();
    let mut rows = Vec::new();
    let curvature_form = SkewEndo::from_form(&(Form::<Q>::e(12) - Form::e(34)))?;
    for (a3, a4, a5) in [(q(1, 1), q(2, 1), q(1, 1)), (q(-3, 1), q(1, 2), q(2, 1))] {
        let t = nil_family_torsion(&a3, &a4, &a5);
        let c = project_l3(&t)?;
        let v6 = root2 * norm(&c.norm2_t6);
        let v12 = root2 * norm(&c.norm2_t12);
        let at = format!("({a3}, {a4}, {a5})");
        rows.push(spectrum_row(
            &format!("hol t1 at {at}"),
            &t,
            std::slice::from_ref(&curvature_form),
            4,
            &[v6],
            false,
        )?);
        rows.push(spectrum_row(&format!("hol trivial at {at}"), &t, &[], 8, &[0.0, v6, v12], true)?);
    }
    let t = nil_family_torsion(&Q::from_i64(0), &Q::from_i64(0), &Q::from_i64(1));
    let v6 = root2 * norm(&project_l3(&t)?.norm2_t6);
    let mut row = spectrum_row("hol su2 at (0, 0, 1)", &t, &su2_block_basis(), 4, &[v6], false)?;
    row.status = RowStatus::Reported;
    row.note = Some("anomalous row, shown without assertion".into());
    rows.push(row);
    Ok(rows)
}

/// Sample `(α3, α4, α5)` inside each local-model regime.
pub fn local_model_sample(row: LocalModel) -> (Q, Q, Q) {
    match row {
        LocalModel::SphereSl2r => (q(3, 1), q(1, 1), q(1, 1)),
        LocalModel::SphereSphere => (q(0, 1), q(1, 1), q(1, 1)),
        LocalModel::SphereN11 => (q(1, 1), q(1, 1), q(1, 1)),
        LocalModel::TorusN11 => (q(1, 1), q(1, 1), q(0, 1)),
    }
}

fn identified_name(row: LocalModel) -> &'static str {
    match row {
        LocalModel::SphereN11 => "su2+(R|heis3)",
        LocalModel::TorusN11 => "R+(R|heis5)",
        other => other.group(),
    }
}

fn local_model_rows() -> Result<Vec<TableRow>> {
    LocalModel::ALL
        .into_iter()
        .map(|row| {
            let (a3, a4, a5) = local_model_sample(row);
            let alg = t2_nomizu_algebra(&a3, &a4, &a5)?;
            if !alg.jacobi_check().ok {
                return Err(Error::Inconsistent("local model fails the Jacobi identity".into()));
            }
            let found = alg.invariants();
            let computed = if found == row.tabulated_algebra::<Q>().invariants() {
                row.group().to_string()
            } else if found == row.identified_algebra::<Q>().invariants() {
                identified_name(row).to_string()
            } else {
                format!("unidentified {:?}", found.derived_series)
            };
            let key = format!("{:?} at ({a3}, {a4}, {a5})", LocalModel::of(&a3, &a5));
            let out = TableRow::compare(key, row.group().into(), computed);
            Ok(if row.tabulated_matches() {
                out
            } else {
                out.known_conflict("tabulated group has a different Lie algebra than the computed model")
            })
        })
        .collect()
}

/// Sample `(α3, α4, α5)` inside each nilmanifold regime.
pub fn nil_sample(family: NilFamily) -> (Q, Q, Q) {
    match family {
        NilFamily::I => (q(1, 1), q(0, 1), q(1, 1)),
        NilFamily::II => (q(2, 1), q(0, 1), q(1, 1)),
        NilFamily::III => (q(1, 1), q(1, 1), q(1, 1)),
        NilFamily::IV => (q(0, 1), q(1, 1), q(1, 1)),
        NilFamily::V => (q(0, 1), q(0, 1), q(1, 1)),
        NilFamily::VI => (q(1, 1), q(0, 1), q(0, 1)),
    }
}

fn nil_rows() -> Result<Vec<TableRow>> {
    NilFamily::ALL
        .into_iter()
        .map(|family| {
            let (a3, a4, a5) = nil_sample(family);
            let eqs = nil_family_equations(&a3, &a4, &a5);
            let betti = eqs.betti_numbers();
            let strict = torsion_type(&nil_family_torsion(&a3, &a4, &a5), 0.0)?;
            let shape = eqs.normal_form().unwrap_or_else(|| "untagged".into());
            let (ty, b1, b2, tag) = family.table_row();
            let row = TableRow::compare(
                format!("({}) at ({a3}, {a4}, {a5})", family.label()),
                format!("{ty} b1={b1} b2={b2} {tag}"),
                format!("{strict} b1={} b2={} {shape}", betti[1], betti[2]),
            );
            Ok(if matches!(family, NilFamily::II | NilFamily::IV) {
                row.known_conflict("stored rows (ii) and (iv) are interchanged relative to their regimes")
            } else {
                row
            })
        })
        .collect()
}

/// Aligned plain-text rendering.
pub fn render_text(reports: &[TableReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("table {}: {} [{verdict}]\n", r.table, r.title));
        let width = r.rows.iter().map(|row| row.key.len()).max().unwrap_or(0);
        for row in &r.rows {
            let status = match row.status {
                RowStatus::Match => "ok",
                RowStatus::Mismatch => "DIFF",
                RowStatus::Unattainable => "unattainable",
                RowStatus::Reported => "reported",
            };
            out.push_str(&format!(
                "  {:<width$}  expected {}  computed {}  {status}",
                row.key, row.expected, row.computed
            ));
            if let Some(note) = &row.note {
                out.push_str(&format!(" ({note})"));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert_eq!(parse_selection("").unwrap(), vec![]);
        assert_eq!(parse_selection("5").unwrap(), vec![TableId::LocalModels, TableId::Nil]);
        assert_eq!(parse_selection("3,1,3").unwrap(), vec![TableId::Types, TableId::TorusFixed]);
        assert_eq!(parse_selection("all").unwrap().len(), 7);
        assert!(parse_selection("9").is_err());
    }

    #[test]
    fn torus_classes_of_stored_tuples() {
        for (k, tuples) in TORUS_TUPLES.iter().enumerate() {
            for w in tuples {
                assert_eq!(delta_class(*w).unwrap().index as usize, k + 1, "{w:?}");
            }
        }
    }
}
