//! Reductive models, invariant connections and the Nomizu construction.

use skewtorsion::curvature::CurvatureRecord;
use skewtorsion::lie::*;
use skewtorsion::orbits::bianchi_feasible;
use skewtorsion::unitary::{isotropy_algebra, so3_diagonal_basis};
use skewtorsion::{Form, Rational, Scalar};

type Q = Rational;
type F = Form<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

fn f(text: &str) -> F {
    F::parse(text).unwrap()
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

/// su(2) ⊕ su(2) with `[X_a, X_b] = X_c` cyclically in each factor.
fn su2_pair() -> LieAlgebraData<Q> {
    let mut g = LieAlgebraData::abelian(6);
    for off in [0, 3] {
        for a in 0..3 {
            g.set_bracket(off + a, off + (a + 1) % 3, &unit(6, off + (a + 2) % 3));
        }
    }
    g
}

/// Frame `(sX0, sX1, tX0', tX1', sX2, tX2')` of `S³ × S³`.
fn product_of_spheres(s: &Q, t: &Q) -> ReductiveModel<Q> {
    let scaled = |i: usize, c: &Q| unit(6, i).iter().map(|x| x.clone() * c.clone()).collect();
    let frame = vec![
        scaled(0, s),
        scaled(1, s),
        scaled(3, t),
        scaled(4, t),
        scaled(2, s),
        scaled(5, t),
    ];
    ReductiveModel::new(su2_pair(), Vec::new(), frame).unwrap()
}

fn so3_model_data() -> (F, CurvatureRecord<Q>, Vec<skewtorsion::endo::SkewEndo<Q>>) {
    let t = f("3e135+e146+e236+e245").scale(&q(1, 2)) + f("e145+e235+e136-e246");
    let hol = so3_diagonal_basis::<Q>();
    let r = CurvatureRecord::scaled_projection(&hol, &q(3, 1));
    (t, r, hol)
}

#[test]
fn product_of_spheres_torsion() {
    for (s, t) in [(q(1, 1), q(1, 1)), (q(2, 1), q(1, 3)), (q(-1, 2), q(5, 2))] {
        let model = product_of_spheres(&s, &t);
        let data = canonical_data(&model);
        assert!(data.naturally_reductive);
        let expected = F::e(125).scale(&-s.clone()) - F::e(346).scale(&t);
        assert_eq!(data.torsion, expected);
        assert!(data.curvature.is_zero());
    }
}

#[test]
fn characteristic_connection_of_a_group_is_the_flat_one() {
    let model = product_of_spheres(&q(2, 1), &q(1, 3));
    let t = canonical_data(&model).torsion;
    let c = characteristic_connection(&model, &t).unwrap();
    assert_eq!(c, NomizuMap::zero());
    assert_eq!(torsion_of(&model, &c).unwrap(), t);
    assert!(c.parallel(&t).unwrap());
}

#[test]
fn levi_civita_is_metric_and_torsion_free() {
    let model = product_of_spheres(&q(3, 2), &q(1, 1));
    let lc = levi_civita(&model);
    assert!(lc.is_metric());
    assert!(torsion_of(&model, &lc).unwrap().is_zero());
    // bi-invariant metric: ∇_X Y = ½ [X, Y]
    for i in 0..6 {
        for j in 0..6 {
            let half: Vec<Q> = model.bracket_m(i, j).into_iter().map(|x| x * q(1, 2)).collect();
            assert_eq!(lc.apply(i, j), half);
        }
    }
}

#[test]
fn levi_civita_agrees_with_the_koszul_formula() {
    let model = product_of_spheres(&q(1, 1), &q(1, 1));
    let gamma = levi_civita_metric(model.adapted(), &skewtorsion::linalg::Mat::identity(6)).unwrap();
    assert_eq!(gamma, levi_civita(&model).maps);
    let degenerate = skewtorsion::linalg::Mat::<Q>::zeros(6, 6);
    assert!(levi_civita_metric(model.adapted(), &degenerate).is_err());
}

#[test]
fn einstein_only_for_equal_radii() {
    let equal = product_of_spheres(&q(2, 1), &q(2, 1));
    let ric = curvature_of(&equal, &levi_civita(&equal)).ricci();
    assert_eq!(einstein_constant(&ric, 0.0), Some(q(2, 1)));
    let unequal = product_of_spheres(&q(2, 1), &q(1, 1));
    let ric = curvature_of(&unequal, &levi_civita(&unequal)).ricci();
    assert_eq!(einstein_constant(&ric, 0.0), None);
}

#[test]
fn nomizu_of_product_of_spheres() {
    let model = product_of_spheres(&q(1, 1), &q(1, 1));
    let t = canonical_data(&model).torsion;
    let alg = nomizu(&t, &CurvatureRecord::zero(), Some(&[])).unwrap();
    assert_eq!(alg.dim(), 6);
    assert_eq!(compare_algebras(&alg, model.adapted()), IsoVerdict::Isomorphic);
    assert_eq!(alg.invariants().killing_signature, (0, 6, 0));
}

#[test]
fn nomizu_rejects_non_jacobi_data() {
    let err = nomizu(&f("e125+e345"), &CurvatureRecord::zero(), Some(&[])).unwrap_err();
    assert!(err.to_string().contains("not an infinitesimal model"));
    assert!(!torsion_bracket_algebra(&f("e125+e345")).jacobi_check().ok);
}

#[test]
fn nomizu_of_so3_orbit_round_trips() {
    let (t, r, hol) = so3_model_data();
    assert!(bianchi_feasible(&t, Some(&hol)).unwrap().feasible);
    let alg = nomizu(&t, &r, Some(&hol)).unwrap();
    assert_eq!(alg.dim(), 9);
    let h: Vec<Vec<Q>> = (0..3).map(|a| unit(9, a)).collect();
    let frame: Vec<Vec<Q>> = (3..9).map(|i| unit(9, i)).collect();
    let model = ReductiveModel::new(alg, h, frame).unwrap();
    let data = canonical_data(&model);
    assert!(data.naturally_reductive);
    assert_eq!(data.torsion, t);
    assert_eq!(data.curvature.matrix, r.matrix);
    let holonomy = holonomy_algebra(&t, &data.curvature).unwrap();
    assert_eq!(holonomy.len(), 3);
    // the characteristic connection is the canonical one
    let c = characteristic_connection(&model, &t).unwrap();
    assert_eq!(c, NomizuMap::zero());
    assert!(c.parallel(&t).unwrap());
}

#[test]
fn default_nomizu_isotropy_is_the_stabilizer() {
    let (t, r, _) = so3_model_data();
    let stab = model_stabilizer(&t, &r);
    assert_eq!(stab.len(), isotropy_algebra(&t).unwrap().len());
    assert_eq!(nomizu(&t, &r, None).unwrap().dim(), 6 + stab.len());
}

#[test]
fn holonomy_must_fix_torsion() {
    let (_, r, _) = so3_model_data();
    assert!(holonomy_algebra(&f("e125+e346"), &r).is_err());
}

#[test]
fn curvature_gap_between_characteristic_and_levi_civita() {
    let (t, r, hol) = so3_model_data();
    let alg = nomizu(&t, &r, Some(&hol)).unwrap();
    let h: Vec<Vec<Q>> = (0..3).map(|a| unit(9, a)).collect();
    let frame: Vec<Vec<Q>> = (3..9).map(|i| unit(9, i)).collect();
    let so3_model = ReductiveModel::new(alg, h, frame).unwrap();
    for model in [so3_model, product_of_spheres(&q(2, 1), &q(1, 3))] {
        let t = canonical_data(&model).torsion;
        let rc = curvature_of(&model, &characteristic_connection(&model, &t).unwrap());
        let rg = curvature_of(&model, &levi_civita(&model));
        let gap = curvature_gap(&t).unwrap();
        assert_eq!(rc.matrix.sub(&rg.matrix), gap.matrix);
    }
}
