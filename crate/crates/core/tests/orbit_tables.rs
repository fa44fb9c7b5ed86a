use skewtorsion::clifford::{cluster, is_scalar_square, torsion_spinor_spectrum};
use skewtorsion::curvature::CurvatureRecord;
use skewtorsion::forms::kaehler_form;
use skewtorsion::orbits::*;
use skewtorsion::unitary::*;
use skewtorsion::{Form, Rational, Scalar};

type Q = Rational;
type F = Form<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

fn sample(case: Case) -> Form<Q> {
    let f = TorsionFamily::sample(case, q(3, 2), q(1, 3), q(-2, 5)).unwrap();
    make_torsion(&f)
}

#[test]
fn isotropy_and_type_of_every_row() {
    for case in Case::ALL {
        let t = sample(case);
        let label = identify_algebra(&isotropy_algebra(&t).unwrap()).unwrap();
        let strict = torsion_type(&t, 0.0).unwrap();
        assert_eq!(strict, case.strict_type(), "case {case}");
        assert_eq!(label.tag, case.isotropy(), "case {case}");
    }
}

#[test]
fn closed_form_norms() {
    for case in Case::ALL {
        let f = TorsionFamily::sample(case, q(3, 2), q(1, 3), q(-2, 5)).unwrap();
        let c = project_l3(&make_torsion(&f)).unwrap();
        assert_eq!(c.norms2().to_vec(), f.expected_norms().to_vec(), "case {case}");
    }
}

fn f(text: &str) -> F {
    F::parse(text).unwrap()
}

fn close(values: &[f64], expected: &[f64]) -> bool {
    values.len() == expected.len() && values.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-9)
}

#[test]
fn sigma_of_second_family_singular_row() {
    let row = TorsionFamily::new(Case::IX, Params::default().with(Param::Beta1, q(3, 2)), 0.0).unwrap();
    assert_eq!(sigma(&make_torsion(&row)).unwrap(), f("e1234").scale(&q(-9, 4)));
}

#[test]
fn sigma_of_reduced_family_matches_closed_form() {
    let (a1, b1, a3, a4) = (q(2, 1), q(1, 1), q(1, 2), q(1, 3));
    let t = f("e145+e235+e136-e246").scale(&a1)
        + f("e145+e235-e136+e246").scale(&b1)
        + f("e125-e345").scale(&a3)
        + f("e126-e346").scale(&a4);
    let c1234 = q(2, 1) * a1.square() + q(2, 1) * b1.square() - a3.square() - a4.square();
    let c56 = q(2, 1) * (a1.square() - b1.square());
    let expected = f("e1234").scale(&c1234) + (f("e1256") + f("e3456")).scale(&c56);
    assert_eq!(sigma(&t).unwrap(), expected);
}

#[test]
fn so3_orbit_with_kaehler_part_has_projection_curvature() {
    let so3 = f("3e135+e146+e236+e245");
    let t = so3.scale(&q(1, 2)) + f("e145+e235+e136-e246");
    let c = project_l3(&t).unwrap();
    let lambda = c.norm2_t2.clone() - c.norm2_t12.clone() * q(1, 3);
    assert_eq!(lambda, q(3, 1));
    let hol = so3_diagonal_basis::<Q>();
    let outcome = bianchi_feasible(&t, Some(&hol)).unwrap();
    assert!(outcome.feasible);
    assert_eq!(outcome.freedom, 0);
    let expected = CurvatureRecord::scaled_projection(&hol, &lambda);
    assert_eq!(outcome.witness.unwrap().matrix, expected.matrix);
    assert_eq!(d_parallel(&t, &t), kaehler_form::<Q>().hodge().scale(&lambda));
}

#[test]
fn perturbed_singular_row_fails_bianchi() {
    let mut params = Params::default().with(Param::Beta1, q(1, 1));
    params = params.with(Param::Beta2, q(1, 7));
    let t = second_family_generators::<Q>()
        .iter()
        .zip([Param::Alpha1, Param::Alpha2, Param::Beta1, Param::Beta2])
        .fold(F::zero(3), |acc, (g, p)| acc + g.scale(&params.get(p)));
    let outcome = bianchi_feasible(&t, None).unwrap();
    assert!(!outcome.feasible);
    assert!(outcome.witness.is_none());
}

#[test]
fn rows_with_so3_isotropy_need_the_full_algebra() {
    let t = sample(Case::XI);
    let iso = isotropy_algebra(&t).unwrap();
    assert_eq!(iso.len(), 3);
    assert!(bianchi_feasible(&t, Some(&iso)).unwrap().feasible);
    assert!(!bianchi_feasible(&t, Some(&iso[..1])).unwrap().feasible);
}

#[test]
fn holonomy_must_fix_the_torsion() {
    let t = f("e125+e345");
    assert!(bianchi_feasible(&t, Some(&su3_basis::<Q>())).is_err());
}

#[test]
fn codifferential_gap_vanishes_on_the_compatible_two_form() {
    let t = sample(Case::VI);
    let c = project_l3(&t).unwrap();
    let w = c.t2.clone() - c.t12.clone();
    assert!(codiff_gap(&t, &w).unwrap().is_zero());
    let perturbed = c.t2.scale(&q(2, 1)) - c.t12.clone();
    assert!(!codiff_gap(&t, &perturbed).unwrap().is_zero());
    assert!(codiff_gap(&t, &f("e1")).is_err());
}

#[test]
fn so3_pair_normal_forms() {
    let (l, m1, m2) = so3_pair_reduce(&[q(3, 1), q(0, 1), q(4, 1)], &[q(0, 1), q(5, 1), q(0, 1)]).unwrap();
    assert_eq!((l, m1, m2), (q(5, 1), q(0, 1), q(5, 1)));
    let (l, m1, m2) = so3_pair_reduce(&[q(1, 1), q(0, 1), q(0, 1)], &[q(1, 1), q(1, 1), q(0, 1)]).unwrap();
    assert_eq!((l, m1, m2), (q(1, 1), q(1, 1), q(1, 1)));
    assert!(so3_pair_reduce(&[q(1, 1), q(1, 1), q(0, 1)], &[q(0, 1), q(0, 1), q(0, 1)]).is_err());
}

#[test]
fn lie_group_criterion_examples() {
    let t = TorsionFamily::new(Case::IX, Params::default().with(Param::Beta1, q(1, 1)), 0.0).unwrap();
    assert_eq!(lie_group_criterion(&make_torsion(&t), 0.0).unwrap(), (q(-2, 1), false));
    let product = f("-e125-e346");
    assert_eq!(lie_group_criterion(&product, 0.0).unwrap(), (q(0, 1), true));
    assert_eq!(is_scalar_square(&product, 0.0).unwrap().0, true);
    assert!(d_parallel(&product, &product).is_zero());
}

#[test]
fn lie_criterion_matches_clifford_square_on_so3_orbit() {
    let t = f("3e135+e146+e236+e245") + f("e145+e235+e136-e246");
    assert_eq!(project_l3(&t).unwrap().norms2(), [q(4, 1), q(12, 1), q(0, 1)]);
    assert!(lie_group_criterion(&t, 0.0).unwrap().1);
    assert!(is_scalar_square(&t, 0.0).unwrap().0);
    assert!(sigma(&t).unwrap().is_zero());
}

#[test]
fn classification_reports() {
    let report = classify_form(&f("3e135+e146+e236+e245")).unwrap();
    assert_eq!(report.strict_type, "W3");
    assert_eq!(report.iso_label, "so3");
    assert_eq!(report.case_tag.as_deref(), Some("X"));
    assert_eq!(report.candidates[0].params[&Param::Beta2], 1.0);
    assert!(report.criteria.bianchi_feasible);

    let report = classify_form(&sample(Case::X)).unwrap();
    assert_eq!(report.case_tag.as_deref(), Some("X"));
    assert!(report.verdict.starts_with("normal form"));

    let generic = f("e123+2e145-e246+3e356+e126");
    let report = classify_form(&generic).unwrap();
    assert_eq!(report.iso_dim, 0);
    assert!(report.case_tag.is_none());
    assert!(report.verdict.contains("trivial isotropy"));
}

#[test]
fn spinor_spectra_of_sample_rows() {
    let t = f("e145+e235");
    let values = torsion_spinor_spectrum(&t, &su2_block_basis::<Q>()).unwrap();
    assert_eq!(cluster(&values).len(), 2);
    assert!(close(&values, &[-2.0, -2.0, 2.0, 2.0]));

    let t = f("e145+e235+e136-e246");
    let values = torsion_spinor_spectrum(&t, &so3_diagonal_basis::<Q>()).unwrap();
    assert!(close(&values, &[-4.0, 4.0]));

    let t = f("e125-e345");
    let values = torsion_spinor_spectrum(&t, &[]).unwrap();
    assert!(close(&values, &[-2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 2.0, 2.0]));

    let t = f("e125+e345");
    assert!(torsion_spinor_spectrum(&t, &isotropy_algebra(&t).unwrap()).unwrap().is_empty());
}

#[test]
fn u2_split_of_a_mixed_row() {
    let t = sample(Case::VI);
    let c = project_l3(&t).unwrap();
    let split = u2_split(&c.t2, &c.t12).unwrap();
    assert_eq!(split.omega1, split.omega2);
    assert!(split.y.iter().all(|x| x.is_zero()));
    assert_eq!(split.reconstruct(), (c.t2.clone(), c.t12.clone()));
}

#[test]
fn su2_twist_preserves_the_family() {
    let t = f("e145+e235").scale(&q(2, 1)) + f("e125+e345");
    let same = su2_twist(&t, [q(0, 1), q(0, 1), q(1, 1)], 0.0).unwrap();
    assert_eq!(same.torsion, t);
    let twisted = su2_twist(&t, [q(3, 5), q(0, 1), q(4, 5)], 0.0).unwrap();
    assert_eq!(twisted.torsion.norm2(), t.norm2());
    assert_eq!(
        twisted.alpha1.square() + twisted.alpha5.square(),
        q(5, 1)
    );
    assert!(su2_twist(&t, [q(1, 1), q(1, 1), q(0, 1)], 0.0).is_err());
}
