//! Skew-symmetric endomorphisms of R^6 and their action on forms.

use crate::error::{Error, Result};
use crate::forms::{Form, Monomial, DIM};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Skew-symmetric 6x6 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewEndo<S: Scalar> {
    matrix: Mat<S>,
}

impl<S: Scalar> SkewEndo<S> {
    pub fn new(matrix: Mat<S>) -> Result<Self> {
        if matrix.rows() != DIM || matrix.cols() != DIM {
            return Err(Error::Invalid("skew endomorphism must be 6x6".into()));
        }
        if !matrix.add(&matrix.transpose()).is_zero() {
            return Err(Error::Invalid("matrix is not skew-symmetric".into()));
        }
        Ok(SkewEndo { matrix })
    }

    pub fn zero() -> Self {
        SkewEndo { matrix: Mat::zeros(DIM, DIM) }
    }

    /// Endomorphism `A` with `w(X, Y) = g(AX, Y)`.
    pub fn from_form(w: &Form<S>) -> Result<Self> {
        w.require_degree(2)?;
        let mut m = Mat::zeros(DIM, DIM);
        for (mono, c) in w.terms() {
            let idx = mono.indices();
            let (i, j) = (idx[0] - 1, idx[1] - 1);
            m[(j, i)] = c.clone();
            m[(i, j)] = -c.clone();
        }
        Ok(SkewEndo { matrix: m })
    }

    /// Inverse of [`SkewEndo::from_form`].
    pub fn to_form(&self) -> Form<S> {
        let mut w = Form::zero(2);
        for i in 0..DIM {
            for j in i + 1..DIM {
                let m = Monomial::from_mask((1 << i) | (1 << j));
                w.add_term(m, self.matrix[(j, i)].clone());
            }
        }
        w
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.mul_vec(v)
    }

    pub fn bracket(&self, other: &SkewEndo<S>) -> SkewEndo<S> {
        SkewEndo { matrix: self.matrix.commutator(&other.matrix) }
    }

    pub fn compose(&self, other: &SkewEndo<S>) -> Mat<S> {
        self.matrix.mul(&other.matrix)
    }

    pub fn add(&self, other: &SkewEndo<S>) -> SkewEndo<S> {
        SkewEndo { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &SkewEndo<S>) -> SkewEndo<S> {
        SkewEndo { matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, c: &S) -> SkewEndo<S> {
        SkewEndo { matrix: self.matrix.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Coordinates in the basis of [`so6_basis`]: the 15 entries below the diagonal.
    pub fn coords(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(15);
        for i in 0..DIM {
            for j in i + 1..DIM {
                out.push(self.matrix[(j, i)].clone());
            }
        }
        out
    }

    pub fn from_coords(coords: &[S]) -> Self {
        let mut m = Mat::zeros(DIM, DIM);
        let mut k = 0;
        for i in 0..DIM {
            for j in i + 1..DIM {
                m[(j, i)] = coords[k].clone();
                m[(i, j)] = -coords[k].clone();
                k += 1;
            }
        }
        SkewEndo { matrix: m }
    }

    /// Derivation action `(A·a)(X1..Xk) = -Σ a(.., A Xi, ..)`.
    pub fn act(&self, a: &Form<S>) -> Form<S> {
        let mut out = Form::zero(a.degree());
        for (mono, c) in a.terms() {
            for i in mono.indices() {
                let rest = mono.mask() & !(1 << (i - 1));
                for j in 1..=DIM {
                    let entry = &self.matrix[(j - 1, i - 1)];
                    if entry.is_zero() || rest & (1 << (j - 1)) != 0 {
                        continue;
                    }
                    // replace e_i by e_j in place, then sort e_j into position
                    let lo = i.min(j);
                    let hi = i.max(j);
                    let between = (rest >> lo) & ((1u8 << (hi - lo - 1)) - 1);
                    let v = c.clone() * entry.clone();
                    let v = if between.count_ones() % 2 == 0 { v } else { -v };
                    out.add_term(Monomial::from_mask(rest | (1 << (j - 1))), v);
                }
            }
        }
        out
    }
}

/// Standard complex structure `J e_{2i-1} = e_{2i}`.
pub fn complex_structure<S: Scalar>() -> SkewEndo<S> {
    SkewEndo::from_form(&crate::forms::kaehler_form()).expect("degree 2")
}

/// Basis of so(6): `endo(e_ij)` for `i < j` in lexicographic order.
pub fn so6_basis<S: Scalar>() -> Vec<SkewEndo<S>> {
    Monomial::all(2)
        .into_iter()
        .map(|m| SkewEndo::from_form(&Form::monomial(m, S::one())).expect("degree 2"))
        .collect()
}

/// Block-diagonal generator `diag(k1 J2, k2 J2, k3 J2)`.
pub fn torus_generator<S: Scalar>(weights: [i64; 3]) -> SkewEndo<S> {
    let w = Form::e(12).scale(&S::from_i64(weights[0]))
        + Form::e(34).scale(&S::from_i64(weights[1]))
        + Form::e(56).scale(&S::from_i64(weights[2]));
    SkewEndo::from_form(&w).expect("degree 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::kaehler_form;
    use crate::scalar::Rational;

    type F = Form<Rational>;

    #[test]
    fn endo_of_e12() {
        let a = SkewEndo::from_form(&F::e(12)).unwrap();
        let e1 = crate::forms::basis_vector::<Rational>(1);
        let e2 = crate::forms::basis_vector::<Rational>(2);
        assert_eq!(a.apply(&e1), e2);
        let minus_e1: Vec<Rational> = e1.iter().map(|x| -x.clone()).collect();
        assert_eq!(a.apply(&e2), minus_e1);
        assert_eq!(a.to_form(), F::e(12));
    }

    #[test]
    fn complex_structure_action() {
        let j = complex_structure::<Rational>();
        for k in 0..3 {
            let x = crate::forms::basis_vector::<Rational>(2 * k + 1);
            let y = crate::forms::basis_vector::<Rational>(2 * k + 2);
            assert_eq!(j.apply(&x), y);
        }
        assert!(j.act(&kaehler_form()).is_zero());
    }

    #[test]
    fn plane_rotation_fixes_plane() {
        let a = SkewEndo::from_form(&F::e(12)).unwrap();
        assert!(a.act(&F::e(12)).is_zero());
        // e1 -> e2 turns e13 into e23
        assert_eq!(a.act(&F::e(13)), F::e(23));
    }
}
