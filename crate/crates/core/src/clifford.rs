//! The Clifford algebra of `R^6` with `e_i² = -1`, its complex spinor module of
//! dimension 8, spin lifts of so(6) and torsion spectra on parallel spinors.

use crate::endo::SkewEndo;
use crate::error::{Error, Result};
use crate::forms::{Form, DIM};
use crate::scalar::Scalar;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Element of `Cl(R^6)` keyed by bitmask monomials `e_I`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement<S: Scalar> {
    coeffs: BTreeMap<u8, S>,
}

/// Sign of `e_I e_J = ± e_{I Δ J}` under `e_i² = -1`.
fn product_sign(a: u8, b: u8) -> i32 {
    let mut swaps = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<S: Scalar> CliffordElement<S> {
    pub fn zero() -> Self {
        CliffordElement { coeffs: BTreeMap::new() }
    }

    pub fn scalar(value: S) -> Self {
        let mut out = Self::zero();
        out.add_term(0, value);
        out
    }

    /// Generator `e_index`, 1-based.
    pub fn generator(index: usize) -> Self {
        let mut out = Self::zero();
        out.add_term(1 << (index - 1), S::one());
        out
    }

    fn add_term(&mut self, mask: u8, value: S) {
        let entry = self.coeffs.entry(mask).or_insert_with(S::zero);
        *entry = entry.clone() + value;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn coefficient(&self, mask: u8) -> S {
        self.coeffs.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u8, &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scalar_part(&self) -> S {
        self.coefficient(0)
    }

    /// True when every non-scalar coefficient is negligible.
    pub fn is_scalar(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|(m, c)| *m == 0 || c.is_negligible(tol))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let v = x.clone() * y.clone();
                out.add_term(a ^ b, if product_sign(*a, *b) > 0 { v } else { -v });
            }
        }
        out
    }
}

pub fn cl_mul<S: Scalar>(a: &CliffordElement<S>, b: &CliffordElement<S>) -> CliffordElement<S> {
    a.mul(b)
}

/// `e_{i1..ik} ↦ e_{i1} ⋯ e_{ik}`.
pub fn embed_form<S: Scalar>(a: &Form<S>) -> CliffordElement<S> {
    let mut out = CliffordElement::zero();
    for (m, c) in a.terms() {
        out.add_term(m.mask(), c.clone());
    }
    out
}

/// Whether `T²` is a scalar in the Clifford algebra, and its value if so.
pub fn is_scalar_square<S: Scalar>(t: &Form<S>, tol: f64) -> Result<(bool, Option<S>)> {
    t.require_degree(3)?;
    let c = embed_form(t);
    let sq = c.mul(&c);
    if sq.is_scalar(tol) {
        Ok((true, Some(sq.scalar_part())))
    } else {
        Ok((false, None))
    }
}

pub type SpinorOperator = DMatrix<Complex64>;

pub const SPINOR_DIM: usize = 8;

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

fn pauli() -> [DMatrix<Complex64>; 4] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}

/// Skew-hermitian `γ_1..γ_6` with `γ_i γ_j + γ_j γ_i = -2 δ_ij`.
pub fn gamma_matrices() -> Vec<SpinorOperator> {
    let [id, sx, sy, sz] = pauli();
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity(DIM);
    for k in 0..3 {
        for s in [&sx, &sy] {
            let factors: Vec<&DMatrix<Complex64>> =
                (0..3).map(|p| if p < k { &sz } else if p == k { s } else { &id }).collect();
            let m = kron(&kron(factors[0], factors[1]), factors[2]);
            out.push(m * i);
        }
    }
    out
}

/// Clifford action of a form on spinors.
pub fn form_operator<S: Scalar>(a: &Form<S>) -> SpinorOperator {
    let gammas = gamma_matrices();
    let mut out = DMatrix::zeros(SPINOR_DIM, SPINOR_DIM);
    for (m, c) in a.terms() {
        let mut prod = DMatrix::identity(SPINOR_DIM, SPINOR_DIM);
        for i in m.indices() {
            prod *= &gammas[i - 1];
        }
        out += prod * Complex64::new(c.to_f64(), 0.0);
    }
    out
}

/// `λ(A) = ½ Σ_{i<j} w_ij γ_i γ_j` with `w` the 2-form of `A`; a Lie algebra homomorphism.
pub fn spin_lift<S: Scalar>(a: &SkewEndo<S>) -> SpinorOperator {
    form_operator(&a.to_form()) * Complex64::new(0.5, 0.0)
}

fn joint_kernel(ops: &[SpinorOperator], tol: f64) -> DMatrix<Complex64> {
    if ops.is_empty() {
        return DMatrix::identity(SPINOR_DIM, SPINOR_DIM);
    }
    let mut stacked = DMatrix::zeros(SPINOR_DIM * ops.len(), SPINOR_DIM);
    for (k, op) in ops.iter().enumerate() {
        stacked.view_mut((k * SPINOR_DIM, 0), (SPINOR_DIM, SPINOR_DIM)).copy_from(op);
    }
    // kernel of A equals the kernel of the hermitian A*A
    let gram = stacked.adjoint() * &stacked;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let cols: Vec<DVector<Complex64>> = (0..SPINOR_DIM)
        .filter(|&i| eig.eigenvalues[i].abs() <= tol)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(SPINOR_DIM, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

const KERNEL_TOL: f64 = 1e-9;
/// Eigenvalues closer than this are reported as one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Spinors annihilated by the lift of every element of `hol`: complex dimension and orthonormal basis.
pub fn parallel_spinors<S: Scalar>(hol: &[SkewEndo<S>]) -> (usize, DMatrix<Complex64>) {
    let ops: Vec<SpinorOperator> = hol.iter().map(spin_lift).collect();
    let basis = joint_kernel(&ops, KERNEL_TOL);
    (basis.ncols(), basis)
}

/// Eigenvalues of the Clifford action of `T` on the parallel spinors, sorted.
pub fn torsion_spinor_spectrum<S: Scalar>(t: &Form<S>, hol: &[SkewEndo<S>]) -> Result<Vec<f64>> {
    t.require_degree(3)?;
    let (dim, basis) = parallel_spinors(hol);
    if dim == 0 {
        return Ok(Vec::new());
    }
    let op = form_operator(t);
    let image = &op * &basis;
    let restricted = basis.adjoint() * &image;
    let residual = (&image - &basis * &restricted).norm();
    if residual > 1e-7 * (1.0 + op.norm()) {
        return Err(Error::Inconsistent(
            "torsion does not preserve the parallel spinors".into(),
        ));
    }
    let herm = (&restricted + restricted.adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = nalgebra::SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.total_cmp(b));
    Ok(values)
}

/// Groups sorted eigenvalues into `(value, multiplicity)` clusters.
pub fn cluster(values: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((c, n)) if (v - *c).abs() <= CLUSTER_TOL * (1.0 + v.abs()) => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type F = Form<Rational>;
    type C = CliffordElement<Rational>;

    #[test]
    fn generator_relations() {
        let e1 = C::generator(1);
        let e2 = C::generator(2);
        assert_eq!(e1.mul(&e1), C::scalar(Rational::from_i64(-1)));
        let e12 = embed_form(&F::e(12));
        assert_eq!(e1.mul(&e2), e12);
        assert_eq!(e2.mul(&e1), embed_form(&(-F::e(12))));
        let e123 = embed_form(&F::e(123));
        assert_eq!(e123.mul(&e123), C::scalar(Rational::from_i64(1)));
    }

    #[test]
    fn scalar_squares() {
        let t = F::parse("-e125-e346").unwrap();
        assert_eq!(is_scalar_square(&t, 0.0).unwrap(), (true, Some(Rational::from_i64(2))));
        let t = F::parse("e125+e345").unwrap();
        assert_eq!(is_scalar_square(&t, 0.0).unwrap().0, false);
    }

    #[test]
    fn gammas_satisfy_relations() {
        let g = gamma_matrices();
        for i in 0..DIM {
            assert!((g[i].adjoint() + &g[i]).norm() < 1e-12);
            for j in 0..DIM {
                let anti = &g[i] * &g[j] + &g[j] * &g[i];
                let expected = if i == j { -2.0 } else { 0.0 };
                let target = DMatrix::<Complex64>::identity(8, 8) * Complex64::new(expected, 0.0);
                assert!((anti - target).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_lift_is_homomorphism() {
        let basis = crate::endo::so6_basis::<Rational>();
        for a in &basis {
            for b in &basis {
                let lhs = spin_lift(&a.bracket(b));
                let la = spin_lift(a);
                let lb = spin_lift(b);
                let rhs = &la * &lb - &lb * &la;
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn parallel_spinor_counts() {
        use crate::unitary::*;
        assert_eq!(parallel_spinors::<Rational>(&[]).0, 8);
        assert_eq!(parallel_spinors(&su2_block_basis::<Rational>()).0, 4);
        assert_eq!(parallel_spinors(&so3_diagonal_basis::<Rational>()).0, 2);
        assert_eq!(parallel_spinors(&su3_basis::<Rational>()).0, 2);
    }
}
