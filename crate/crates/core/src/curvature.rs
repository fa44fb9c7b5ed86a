//! Algebraic curvature operators `Λ²(R^6) → Λ²(R^6)`.

use crate::endo::SkewEndo;
use crate::forms::{Form, Monomial};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Curvature tensor stored as a 15x15 matrix on the monomial basis of 2-forms,
/// with `R(e_i, e_j, e_k, e_l) = matrix[(ij), (kl)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureRecord<S: Scalar> {
    pub matrix: Mat<S>,
    /// Subalgebra of so(6) the values are claimed to lie in.
    pub algebra: Vec<SkewEndo<S>>,
}

/// Position of `e_ij` in the monomial basis and whether the indices were swapped.
fn pair_index(i: usize, j: usize) -> (usize, bool) {
    let (a, b) = (i.min(j), i.max(j));
    let m = Monomial::from_indices(&[a, b]).expect("distinct indices");
    let pos = Monomial::all(2).iter().position(|x| *x == m).expect("2-form monomial");
    (pos, i > j)
}

impl<S: Scalar> CurvatureRecord<S> {
    pub fn zero() -> Self {
        CurvatureRecord { matrix: Mat::zeros(15, 15), algebra: Vec::new() }
    }

    /// `R = Σ r_ab h_a ⊗ h_b` for a symmetric coefficient matrix `r`.
    pub fn from_algebra(algebra: &[SkewEndo<S>], r: &Mat<S>) -> Self {
        let coords: Vec<Vec<S>> = algebra.iter().map(|h| h.to_form().to_coords()).collect();
        let matrix = Mat::from_fn(15, 15, |p, q| {
            let mut acc = S::zero();
            for a in 0..algebra.len() {
                for b in 0..algebra.len() {
                    acc = acc + r[(a, b)].clone() * coords[a][p].clone() * coords[b][q].clone();
                }
            }
            acc
        });
        CurvatureRecord { matrix, algebra: algebra.to_vec() }
    }

    /// `-λ` times the orthogonal projection onto the span of `algebra`.
    pub fn scaled_projection(algebra: &[SkewEndo<S>], lambda: &S) -> Self {
        let orth = orthogonalize(algebra);
        let n = orth.len();
        let r = Mat::from_fn(n, n, |a, b| {
            if a == b {
                -(lambda.clone()) / orth[a].to_form().norm2()
            } else {
                S::zero()
            }
        });
        let mut out = Self::from_algebra(&orth, &r);
        out.algebra = algebra.to_vec();
        out
    }

    /// Value `R(e_i, e_j, e_k, e_l)` on 1-based indices.
    pub fn eval(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        if i == j || k == l {
            return S::zero();
        }
        let (p, s1) = pair_index(i, j);
        let (q, s2) = pair_index(k, l);
        let v = self.matrix[(p, q)].clone();
        if s1 == s2 {
            v
        } else {
            -v
        }
    }

    /// `R(X, Y)` as a 2-form in the last two slots.
    pub fn apply_pair(&self, i: usize, j: usize) -> Form<S> {
        let mut out = Form::zero(2);
        for m in Monomial::all(2) {
            let idx = m.indices();
            out.add_term(m, self.eval(i, j, idx[0], idx[1]));
        }
        out
    }

    pub fn is_pair_symmetric(&self) -> bool {
        self.matrix.approx_eq(&self.matrix.transpose())
    }

    /// Cyclic sum over the first three slots, as a 4-form.
    pub fn bianchi_sum(&self) -> Form<S> {
        let mut out = Form::zero(4);
        for m in Monomial::all(4) {
            let [x, y, z, u]: [usize; 4] = m.indices().try_into().expect("degree 4");
            let v = self.eval(x, y, z, u) + self.eval(y, z, x, u) + self.eval(z, x, y, u);
            out.add_term(m, v);
        }
        out
    }

    /// True when every `R(X, Y)` lies in the span of the given endomorphisms.
    pub fn values_in(&self, algebra: &[SkewEndo<S>]) -> bool {
        let basis: Vec<Vec<S>> = algebra.iter().map(|h| h.to_form().to_coords()).collect();
        (0..15).all(|p| {
            let row = self.matrix.row(p);
            row.iter().all(|x| x.is_zero())
                || crate::linalg::coordinates(&basis, &row).is_some()
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        CurvatureRecord { matrix: self.matrix.scale(c), algebra: self.algebra.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Ricci tensor `Ric(X, Y) = Σ_i R(X, e_i, e_i, Y)` as a 6x6 matrix.
    pub fn ricci(&self) -> Mat<S> {
        Mat::from_fn(6, 6, |x, y| {
            (1..=6).fold(S::zero(), |acc, i| acc + self.eval(x + 1, i, i, y + 1))
        })
    }
}

/// Exact Gram–Schmidt without normalization; dependent elements are dropped.
pub fn orthogonalize<S: Scalar>(family: &[SkewEndo<S>]) -> Vec<SkewEndo<S>> {
    let mut out: Vec<SkewEndo<S>> = Vec::new();
    for h in family {
        let mut v = h.clone();
        for o in &out {
            let f = o.to_form();
            let c = v.to_form().inner(&f).expect("2-forms") / f.norm2();
            v = v.sub(&o.scale(&c));
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}
