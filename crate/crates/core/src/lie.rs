//! Lie algebras by structure constants, reductive homogeneous models, invariant
//! connections given by Nomizu maps, and the Nomizu construction.

use crate::curvature::CurvatureRecord;
use crate::endo::SkewEndo;
use crate::error::{Error, Result};
use crate::forms::{Form, Monomial, DIM};
use crate::linalg::{coordinates, rank_of, Mat};
use crate::scalar::Scalar;
use crate::unitary::u3_basis;
use serde::Serialize;

/// Real Lie algebra with structure constants `[x_i, x_j] = Σ_k c^k_ij x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData<S: Scalar> {
    dim: usize,
    consts: Vec<S>,
    pub labels: Vec<String>,
}

/// Outcome of a Jacobi check.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JacobiReport {
    pub ok: bool,
    pub worst_residual: f64,
}

/// Isomorphism-invariant data used for structural comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructuralInvariants {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub center_dim: usize,
    /// Killing form signature `(positive, negative, zero)`.
    pub killing_signature: (usize, usize, usize),
}

/// Verdict of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "verdict", content = "detail")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic(String),
    Undetermined,
}

impl<S: Scalar> LieAlgebraData<S> {
    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData {
            dim,
            consts: vec![S::zero(); dim * dim * dim],
            labels: (1..=dim).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// `c^k_ij`, 0-based.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> S {
        self.consts[self.idx(i, j, k)].clone()
    }

    /// Sets `[x_i, x_j] = v` and `[x_j, x_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[S]) {
        for k in 0..self.dim {
            let a = self.idx(i, j, k);
            let b = self.idx(j, i, k);
            self.consts[a] = v[k].clone();
            self.consts[b] = -v[k].clone();
        }
    }

    /// Sets a single constant `c^k_ij` without touching `c^k_ji`.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: S) {
        let a = self.idx(i, j, k);
        self.consts[a] = value;
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<S> {
        (0..self.dim).map(|k| self.structure(i, j, k)).collect()
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let s = &self.consts[self.idx(i, j, k)];
                    if !s.is_zero() {
                        *o = o.clone() + c.clone() * s.clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| (self.structure(i, j, k) + self.structure(j, i, k)).is_zero())
            })
        })
    }

    /// Largest coefficient of `[x_i,[x_j,x_k]] + cyclic` over all basis triples.
    pub fn jacobi_check(&self) -> JacobiReport {
        let mut worst = 0.0f64;
        let mut exact_ok = true;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let e = |n: usize| unit::<S>(self.dim, n);
                    let a = self.bracket(&e(i), &self.basis_bracket(j, k));
                    let b = self.bracket(&e(j), &self.basis_bracket(k, i));
                    let c = self.bracket(&e(k), &self.basis_bracket(i, j));
                    for n in 0..self.dim {
                        let r = a[n].clone() + b[n].clone() + c[n].clone();
                        exact_ok &= r.is_zero();
                        worst = worst.max(r.to_f64().abs());
                    }
                }
            }
        }
        let ok = if S::is_exact() { exact_ok } else { worst <= 1e-9 };
        JacobiReport { ok, worst_residual: worst }
    }

    /// Matrix of `ad x` with columns the images of basis vectors.
    pub fn ad(&self, x: &[S]) -> Mat<S> {
        let cols: Vec<Vec<S>> =
            (0..self.dim).map(|j| self.bracket(x, &unit(self.dim, j))).collect();
        Mat::from_columns(&cols, self.dim)
    }

    pub fn killing_form(&self) -> Mat<S> {
        let ads: Vec<Mat<S>> = (0..self.dim).map(|i| self.ad(&unit(self.dim, i))).collect();
        Mat::from_fn(self.dim, self.dim, |i, j| ads[i].mul(&ads[j]).trace())
    }

    /// Span of all brackets `[a, b]` with `a` in `left` and `b` in `right`.
    fn bracket_span(&self, left: &[Vec<S>], right: &[Vec<S>]) -> Vec<Vec<S>> {
        let mut out: Vec<Vec<S>> = Vec::new();
        for a in left {
            for b in right {
                let v = self.bracket(a, b);
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                out.push(v);
                if rank_of(&out) < out.len() {
                    out.pop();
                }
            }
        }
        out
    }

    fn full_basis(&self) -> Vec<Vec<S>> {
        (0..self.dim).map(|i| unit(self.dim, i)).collect()
    }

    pub fn derived_series(&self) -> Vec<usize> {
        let mut current = self.full_basis();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&current, &current);
            if next.len() == current.len() || next.is_empty() {
                if next.is_empty() && !current.is_empty() {
                    dims.push(0);
                }
                break;
            }
            dims.push(next.len());
            current = next;
        }
        dims
    }

    pub fn lower_central_series(&self) -> Vec<usize> {
        let all = self.full_basis();
        let mut current = all.clone();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&all, &current);
            if next.len() == current.len() || next.is_empty() {
                if next.is_empty() && !current.is_empty() {
                    dims.push(0);
                }
                break;
            }
            dims.push(next.len());
            current = next;
        }
        dims
    }

    pub fn center_dim(&self) -> usize {
        // x is central iff Σ_i x_i c^k_ij = 0 for all j, k
        let rows: Vec<Vec<S>> = (0..self.dim)
            .flat_map(|j| {
                (0..self.dim)
                    .map(move |k| (j, k))
                    .collect::<Vec<_>>()
            })
            .map(|(j, k)| (0..self.dim).map(|i| self.structure(i, j, k)).collect())
            .collect();
        if rows.is_empty() {
            return self.dim;
        }
        self.dim - Mat::from_rows(&rows).rank()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0) || self.dim == 0
    }

    pub fn invariants(&self) -> StructuralInvariants {
        let k = self.killing_form().to_f64();
        let m = nalgebra::DMatrix::from_fn(self.dim, self.dim, |i, j| k[i][j]);
        let eig = nalgebra::SymmetricEigen::new(m);
        let scale = 1e-9 * (1.0 + eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs())));
        let pos = eig.eigenvalues.iter().filter(|v| **v > scale).count();
        let neg = eig.eigenvalues.iter().filter(|v| **v < -scale).count();
        StructuralInvariants {
            dim: self.dim,
            derived_series: self.derived_series(),
            lower_central_series: self.lower_central_series(),
            center_dim: self.center_dim(),
            killing_signature: (pos, neg, self.dim - pos - neg),
        }
    }

    /// Structure constants in a new basis given by the rows of `basis`.
    pub fn change_basis(&self, basis: &[Vec<S>]) -> Result<Self> {
        if basis.len() != self.dim || rank_of(basis) != self.dim {
            return Err(Error::Invalid("change of basis is not invertible".into()));
        }
        let mut out = LieAlgebraData::abelian(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket(&basis[i], &basis[j]);
                let c = coordinates(basis, &v).ok_or_else(|| {
                    Error::Inconsistent("bracket outside the span of the new basis".into())
                })?;
                out.set_bracket(i, j, &c);
            }
        }
        Ok(out)
    }

    /// Same constants in another backend.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebraData<T> {
        LieAlgebraData { dim: self.dim, consts: self.consts.iter().map(f).collect(), labels: self.labels.clone() }
    }

    /// Direct sum, with the basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebraData<S>) -> LieAlgebraData<S> {
        let n = self.dim + other.dim;
        let mut out = LieAlgebraData::abelian(n);
        for (alg, off) in [(self, 0), (other, self.dim)] {
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for k in 0..alg.dim {
                        out.set_constant(off + i, off + j, off + k, alg.structure(i, j, k));
                    }
                }
            }
        }
        out.labels = self.labels.iter().chain(&other.labels).cloned().collect();
        out
    }

    /// Parses lines `c[i,j,k] = value` (1-based); `[x_j,x_i]` is filled by antisymmetry.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut dim = 0usize;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("dim") {
                let n = rest.trim_start_matches([' ', '=']).trim();
                dim = dim.max(n.parse().map_err(|_| Error::Parse(format!("bad dimension: {line}")))?);
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `c[i,j,k] = value`: {line}")))?;
            let inner = lhs
                .trim()
                .strip_prefix("c[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected `c[i,j,k]`: {lhs}")))?;
            let idx: Vec<usize> = inner
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad indices: {inner}")))?;
            if idx.len() != 3 || idx.iter().any(|&i| i == 0) {
                return Err(Error::Parse(format!("indices must be three 1-based integers: {inner}")));
            }
            let value = parse_scalar::<S>(rhs.trim())?;
            dim = dim.max(*idx.iter().max().unwrap_or(&0));
            entries.push((idx[0] - 1, idx[1] - 1, idx[2] - 1, value));
        }
        let mut out = LieAlgebraData::abelian(dim);
        for (i, j, k, v) in entries {
            if i == j {
                return Err(Error::Invalid(format!("[x{0},x{0}] must vanish", i + 1)));
            }
            out.set_constant(i, j, k, v.clone());
            out.set_constant(j, i, k, -v);
        }
        Ok(out)
    }

    /// Inverse of [`LieAlgebraData::parse`], listing `i < j` only.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim = {}\n", self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let c = self.structure(i, j, k);
                    if !c.is_zero() {
                        out.push_str(&format!("c[{},{},{}] = {}\n", i + 1, j + 1, k + 1, c));
                    }
                }
            }
        }
        out
    }
}

fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    if let Some(q) = crate::scalar::parse_rational(text) {
        return Ok(S::from_rational(&q));
    }
    text.parse::<f64>()
        .map(S::from_f64)
        .map_err(|_| Error::Parse(format!("bad value: {text}")))
}

/// Structural comparison; identical constants prove isomorphism, differing
/// invariants disprove it, anything else is left undetermined.
pub fn compare_algebras<S: Scalar>(a: &LieAlgebraData<S>, b: &LieAlgebraData<S>) -> IsoVerdict {
    if a.dim != b.dim {
        return IsoVerdict::NotIsomorphic("dimensions differ".into());
    }
    let (ia, ib) = (a.invariants(), b.invariants());
    if ia != ib {
        return IsoVerdict::NotIsomorphic(format!("invariants differ: {ia:?} vs {ib:?}"));
    }
    let same = a.consts.iter().zip(&b.consts).all(|(x, y)| (x.clone() - y.clone()).is_negligible(1e-9));
    if same {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::Undetermined
    }
}

pub(crate) fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Reductive decomposition `g = h ⊕ m` with a frame of `m` declared orthonormal,
/// adapted so that `Ω = e12 + e34 + e56`.
#[derive(Clone, Debug)]
pub struct ReductiveModel<S: Scalar> {
    pub algebra: LieAlgebraData<S>,
    /// Basis of `h` in algebra coordinates.
    pub h: Vec<Vec<S>>,
    /// Frame `e1..e6` of `m` in algebra coordinates.
    pub frame: Vec<Vec<S>>,
    /// Structure constants in the basis `(h, e1..e6)`.
    adapted: LieAlgebraData<S>,
}

impl<S: Scalar> ReductiveModel<S> {
    pub fn new(algebra: LieAlgebraData<S>, h: Vec<Vec<S>>, frame: Vec<Vec<S>>) -> Result<Self> {
        if frame.len() != DIM {
            return Err(Error::Invalid(format!("frame must have {DIM} vectors")));
        }
        let mut basis = h.clone();
        basis.extend(frame.iter().cloned());
        if basis.len() != algebra.dim() || rank_of(&basis) != algebra.dim() {
            return Err(Error::Invalid("h and the frame do not form a basis of g".into()));
        }
        let adapted = algebra.change_basis(&basis)?;
        let k = h.len();
        for a in 0..k {
            for b in 0..k {
                if (k..k + DIM).any(|n| !adapted.structure(a, b, n).is_zero()) {
                    return Err(Error::Invalid("h is not a subalgebra".into()));
                }
            }
            for i in k..k + DIM {
                if (0..k).any(|n| !adapted.structure(a, i, n).is_zero()) {
                    return Err(Error::Invalid("decomposition is not reductive: [h, m] ⊄ m".into()));
                }
            }
        }
        let model = ReductiveModel { algebra, h, frame, adapted };
        for a in 0..k {
            SkewEndo::new(model.isotropy_matrix(a)).map_err(|_| {
                Error::Invalid("isotropy representation is not orthogonal for the frame metric".into())
            })?;
        }
        Ok(model)
    }

    /// Lie group with its basis as orthonormal frame.
    pub fn lie_group(algebra: LieAlgebraData<S>) -> Result<Self> {
        let frame = (0..algebra.dim()).map(|i| unit(algebra.dim(), i)).collect();
        Self::new(algebra, Vec::new(), frame)
    }

    pub fn h_dim(&self) -> usize {
        self.h.len()
    }

    /// Structure constants in the adapted basis `(h, e1..e6)`.
    pub fn adapted(&self) -> &LieAlgebraData<S> {
        &self.adapted
    }

    /// `[e_i, e_j]_m` in frame coordinates, 0-based.
    pub fn bracket_m(&self, i: usize, j: usize) -> Vec<S> {
        let k = self.h_dim();
        (0..DIM).map(|n| self.adapted.structure(k + i, k + j, k + n)).collect()
    }

    /// `[e_i, e_j]_h` in h coordinates, 0-based.
    pub fn bracket_h(&self, i: usize, j: usize) -> Vec<S> {
        let k = self.h_dim();
        (0..k).map(|n| self.adapted.structure(k + i, k + j, n)).collect()
    }

    /// Matrix of `ad(h_a)` restricted to `m`.
    pub fn isotropy_matrix(&self, a: usize) -> Mat<S> {
        let k = self.h.len();
        Mat::from_fn(DIM, DIM, |row, col| self.adapted.structure(a, k + col, k + row))
    }

    pub fn isotropy_algebra(&self) -> Vec<SkewEndo<S>> {
        (0..self.h_dim())
            .map(|a| SkewEndo::new(self.isotropy_matrix(a)).expect("checked on construction"))
            .collect()
    }

    /// `ad(Σ c_a h_a)` on `m`.
    fn isotropy_combination(&self, coeffs: &[S]) -> Mat<S> {
        let mut out = Mat::zeros(DIM, DIM);
        for (a, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.isotropy_matrix(a).scale(c));
            }
        }
        out
    }

    /// `g([X,Y]_m, Z) + g(Y, [X,Z]_m) = 0` on the frame.
    pub fn is_naturally_reductive(&self) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| {
                (0..DIM).all(|l| (self.bracket_m(i, j)[l].clone() + self.bracket_m(i, l)[j].clone()).is_zero())
            })
        })
    }
}

/// Invariant connection given by its Nomizu map: `∇_{e_i} e_j = Σ_k maps[i][(k, j)] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NomizuMap<S: Scalar> {
    pub maps: Vec<Mat<S>>,
}

impl<S: Scalar> NomizuMap<S> {
    pub fn zero() -> Self {
        NomizuMap { maps: vec![Mat::zeros(DIM, DIM); DIM] }
    }

    /// `∇_{e_i} e_j` in frame coordinates.
    pub fn apply(&self, i: usize, j: usize) -> Vec<S> {
        self.maps[i].column(j)
    }

    pub fn is_metric(&self) -> bool {
        self.maps.iter().all(|m| m.add(&m.transpose()).is_zero())
    }

    /// `∇_{e_i} ω` for an invariant form.
    pub fn derivative(&self, i: usize, w: &Form<S>) -> Result<Form<S>> {
        Ok(SkewEndo::new(self.maps[i].clone())?.act(w))
    }

    /// True when `∇ω = 0` in every direction.
    pub fn parallel(&self, w: &Form<S>) -> Result<bool> {
        for i in 0..DIM {
            if !self.derivative(i, w)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Values `T(e_i, e_j, e_k)` of a 3-form, 0-based.
pub fn three_tensor<S: Scalar>(t: &Form<S>) -> Vec<S> {
    let mut out = vec![S::zero(); DIM * DIM * DIM];
    for (m, c) in t.terms() {
        let idx = m.indices();
        let (a, b, cc) = (idx[0] - 1, idx[1] - 1, idx[2] - 1);
        for (p, sign) in [
            ([a, b, cc], 1),
            ([b, cc, a], 1),
            ([cc, a, b], 1),
            ([b, a, cc], -1),
            ([a, cc, b], -1),
            ([cc, b, a], -1),
        ] {
            let v = if sign > 0 { c.clone() } else { -c.clone() };
            out[(p[0] * DIM + p[1]) * DIM + p[2]] = v;
        }
    }
    out
}

fn tensor_to_form<S: Scalar>(tensor: &[S]) -> Form<S> {
    let mut out = Form::zero(3);
    for m in Monomial::all(3) {
        let idx = m.indices();
        out.add_term(m, tensor[((idx[0] - 1) * DIM + idx[1] - 1) * DIM + idx[2] - 1].clone());
    }
    out
}

fn is_totally_skew<S: Scalar>(tensor: &[S]) -> bool {
    let at = |i: usize, j: usize, k: usize| tensor[(i * DIM + j) * DIM + k].clone();
    (0..DIM).all(|i| {
        (0..DIM).all(|j| {
            (0..DIM).all(|k| (at(i, j, k) + at(j, i, k)).is_zero() && (at(i, j, k) + at(i, k, j)).is_zero())
        })
    })
}

/// Canonical connection data of a reductive model.
#[derive(Clone, Debug)]
pub struct CanonicalData<S: Scalar> {
    /// `T(X,Y,Z) = -g([X,Y]_m, Z)`; meaningful as a 3-form when naturally reductive.
    pub torsion: Form<S>,
    /// `R(X,Y) = -ad([X,Y]_h)` on `m`.
    pub curvature: CurvatureRecord<S>,
    pub naturally_reductive: bool,
}

pub fn canonical_data<S: Scalar>(model: &ReductiveModel<S>) -> CanonicalData<S> {
    let mut tensor = vec![S::zero(); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let b = model.bracket_m(i, j);
            for k in 0..DIM {
                tensor[(i * DIM + j) * DIM + k] = -b[k].clone();
            }
        }
    }
    let naturally_reductive = is_totally_skew(&tensor);
    let mut curvature = curvature_of(model, &NomizuMap::zero());
    curvature.algebra = model.isotropy_algebra();
    CanonicalData { torsion: tensor_to_form(&tensor), curvature, naturally_reductive }
}

/// Levi-Civita connection: `Λ(X)Y = ½[X,Y]_m + U(X,Y)` with
/// `g(U(X,Y), Z) = ½(g([Z,X]_m, Y) + g(X, [Z,Y]_m))`.
pub fn levi_civita<S: Scalar>(model: &ReductiveModel<S>) -> NomizuMap<S> {
    let half = S::ratio(1, 2);
    let maps = (0..DIM)
        .map(|i| {
            Mat::from_fn(DIM, DIM, |k, j| {
                let main = model.bracket_m(i, j)[k].clone();
                let u = model.bracket_m(k, i)[j].clone() + model.bracket_m(k, j)[i].clone();
                half.clone() * (main + u)
            })
        })
        .collect();
    NomizuMap { maps }
}

/// `∇^g + ½ T` for a totally skew 3-form `T`.
pub fn characteristic_connection<S: Scalar>(model: &ReductiveModel<S>, t: &Form<S>) -> Result<NomizuMap<S>> {
    t.require_degree(3)?;
    let lc = levi_civita(model);
    let tensor = three_tensor(t);
    let half = S::ratio(1, 2);
    let maps = (0..DIM)
        .map(|i| {
            lc.maps[i].add(&Mat::from_fn(DIM, DIM, |k, j| {
                half.clone() * tensor[(i * DIM + j) * DIM + k].clone()
            }))
        })
        .collect();
    Ok(NomizuMap { maps })
}

/// Torsion `Λ(X)Y - Λ(Y)X - [X,Y]_m` lowered to a 3-form; errors when not totally skew.
pub fn torsion_of<S: Scalar>(model: &ReductiveModel<S>, conn: &NomizuMap<S>) -> Result<Form<S>> {
    let mut tensor = vec![S::zero(); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let a = conn.apply(i, j);
            let b = conn.apply(j, i);
            let c = model.bracket_m(i, j);
            for k in 0..DIM {
                tensor[(i * DIM + j) * DIM + k] = a[k].clone() - b[k].clone() - c[k].clone();
            }
        }
    }
    if !is_totally_skew(&tensor) {
        return Err(Error::Invalid("torsion is not totally skew-symmetric".into()));
    }
    Ok(tensor_to_form(&tensor))
}

/// `R(X,Y) = [Λ(X),Λ(Y)] - Λ([X,Y]_m) - ad([X,Y]_h)` stored as `g(R(X,Y)Z, U)`.
pub fn curvature_of<S: Scalar>(model: &ReductiveModel<S>, conn: &NomizuMap<S>) -> CurvatureRecord<S> {
    let pairs = Monomial::all(2);
    let mut matrix = Mat::zeros(pairs.len(), pairs.len());
    for (p, mp) in pairs.iter().enumerate() {
        let idx = mp.indices();
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        let mut r = conn.maps[i].commutator(&conn.maps[j]);
        let bm = model.bracket_m(i, j);
        for (n, c) in bm.iter().enumerate() {
            if !c.is_zero() {
                r = r.sub(&conn.maps[n].scale(c));
            }
        }
        r = r.sub(&model.isotropy_combination(&model.bracket_h(i, j)));
        for (q, mq) in pairs.iter().enumerate() {
            let kl = mq.indices();
            // g(R e_k, e_l)
            matrix[(p, q)] = r[(kl[1] - 1, kl[0] - 1)].clone();
        }
    }
    CurvatureRecord { matrix, algebra: Vec::new() }
}

/// `¼ g(T(X,Y), T(Z,U)) + ¼ σ_T(X,Y,Z,U)`, the difference `R^c - R^g` for parallel `T`.
pub fn curvature_gap<S: Scalar>(t: &Form<S>) -> Result<CurvatureRecord<S>> {
    let sigma = crate::orbits::sigma(t)?;
    let tensor = three_tensor(t);
    let quarter = S::ratio(1, 4);
    let pairs = Monomial::all(2);
    let matrix = Mat::from_fn(pairs.len(), pairs.len(), |p, q| {
        let a = pairs[p].indices();
        let b = pairs[q].indices();
        let (x, y, z, u) = (a[0] - 1, a[1] - 1, b[0] - 1, b[1] - 1);
        let mut acc = S::zero();
        for n in 0..DIM {
            acc = acc + tensor[(x * DIM + y) * DIM + n].clone() * tensor[(z * DIM + u) * DIM + n].clone();
        }
        let s = if pairs[p] == pairs[q] || (pairs[p].mask() & pairs[q].mask()) != 0 {
            S::zero()
        } else {
            let m = Monomial::from_mask(pairs[p].mask() | pairs[q].mask());
            let sign = crate::forms::wedge_sign(pairs[p].mask(), pairs[q].mask());
            let v = sigma.coefficient(m);
            if sign > 0 {
                v
            } else {
                -v
            }
        };
        quarter.clone() * (acc + s)
    });
    Ok(CurvatureRecord { matrix, algebra: Vec::new() })
}

/// Einstein constant when `Ric = c g`.
pub fn einstein_constant<S: Scalar>(ric: &Mat<S>, tol: f64) -> Option<S> {
    let c = ric[(0, 0)].clone();
    let ok = (0..DIM).all(|i| {
        (0..DIM).all(|j| {
            let target = if i == j { c.clone() } else { S::zero() };
            (ric[(i, j)].clone() - target).is_negligible(tol)
        })
    });
    ok.then_some(c)
}

/// Algebra generated by the curvature images; must annihilate `T`.
pub fn holonomy_algebra<S: Scalar>(t: &Form<S>, r: &CurvatureRecord<S>) -> Result<Vec<SkewEndo<S>>> {
    let mut basis: Vec<SkewEndo<S>> = Vec::new();
    let mut coords: Vec<Vec<S>> = Vec::new();
    let push = |e: SkewEndo<S>, basis: &mut Vec<SkewEndo<S>>, coords: &mut Vec<Vec<S>>| {
        if e.is_zero() {
            return false;
        }
        coords.push(e.coords());
        if rank_of(coords) < coords.len() {
            coords.pop();
            false
        } else {
            basis.push(e);
            true
        }
    };
    for m in Monomial::all(2) {
        let idx = m.indices();
        let e = SkewEndo::from_form(&r.apply_pair(idx[0], idx[1]))?;
        push(e, &mut basis, &mut coords);
    }
    let mut start = 0;
    while start < basis.len() {
        let end = basis.len();
        for a in 0..end {
            for b in start.max(a + 1)..end {
                let c = basis[a].bracket(&basis[b]);
                push(c, &mut basis, &mut coords);
            }
        }
        start = end;
    }
    if basis.iter().any(|h| !h.act(t).is_zero()) {
        return Err(Error::Subspace("holonomy algebra does not fix the torsion".into()));
    }
    Ok(basis)
}

/// Matrix of the derivation action of `a` on 2-forms in the monomial basis.
fn two_form_action<S: Scalar>(a: &SkewEndo<S>) -> Mat<S> {
    let pairs = Monomial::all(2);
    let cols: Vec<Vec<S>> = pairs.iter().map(|m| a.act(&Form::monomial(*m, S::one())).to_coords()).collect();
    Mat::from_columns(&cols, pairs.len())
}

/// `{A ∈ u(3) : A·T = 0, A·R = 0}`.
pub fn model_stabilizer<S: Scalar>(t: &Form<S>, r: &CurvatureRecord<S>) -> Vec<SkewEndo<S>> {
    let basis = u3_basis::<S>();
    let mut rows: Vec<Vec<S>> = Vec::new();
    let images_t: Vec<Vec<S>> = basis.iter().map(|a| a.act(t).to_coords()).collect();
    for n in 0..images_t[0].len() {
        rows.push(images_t.iter().map(|v| v[n].clone()).collect());
    }
    let images_r: Vec<Mat<S>> = basis
        .iter()
        .map(|a| two_form_action(a).commutator(&r.matrix))
        .collect();
    for p in 0..15 {
        for q in 0..15 {
            rows.push(images_r.iter().map(|m| m[(p, q)].clone()).collect());
        }
    }
    Mat::from_rows(&rows)
        .nullspace()
        .iter()
        .map(|c| crate::unitary::combine_endos(&basis, c))
        .collect()
}

/// Nomizu algebra on `h ⊕ R^6`; `h` defaults to the stabilizer of `(T, R)` in u(3).
/// Basis order: `h` first, then `e1..e6`.
pub fn nomizu<S: Scalar>(
    t: &Form<S>,
    r: &CurvatureRecord<S>,
    h: Option<&[SkewEndo<S>]>,
) -> Result<LieAlgebraData<S>> {
    t.require_degree(3)?;
    if !r.is_pair_symmetric() {
        return Err(Error::Invalid("curvature is not pair symmetric".into()));
    }
    let h: Vec<SkewEndo<S>> = match h {
        Some(h) => h.to_vec(),
        None => model_stabilizer(t, r),
    };
    let hc: Vec<Vec<S>> = h.iter().map(|a| a.coords()).collect();
    let k = h.len();
    let n = k + DIM;
    let in_h = |e: &SkewEndo<S>| -> Result<Vec<S>> {
        if e.is_zero() {
            return Ok(vec![S::zero(); k]);
        }
        coordinates(&hc, &e.coords())
            .ok_or_else(|| Error::Subspace("curvature or bracket leaves h".into()))
    };
    let mut alg = LieAlgebraData::abelian(n);
    alg.labels = (0..k).map(|a| format!("h{}", a + 1)).chain((1..=DIM).map(|i| format!("e{i}"))).collect();
    for a in 0..k {
        for b in a + 1..k {
            let mut v = in_h(&h[a].bracket(&h[b]))?;
            v.extend(vec![S::zero(); DIM]);
            alg.set_bracket(a, b, &v);
        }
        for i in 0..DIM {
            let mut v = vec![S::zero(); k];
            v.extend(h[a].apply(&unit(DIM, i)));
            alg.set_bracket(a, k + i, &v);
        }
    }
    let tensor = three_tensor(t);
    for i in 0..DIM {
        for j in i + 1..DIM {
            let rij = SkewEndo::from_form(&r.apply_pair(i + 1, j + 1))?;
            let mut v: Vec<S> = in_h(&rij)?.into_iter().map(|x| -x).collect();
            v.extend((0..DIM).map(|l| -tensor[(i * DIM + j) * DIM + l].clone()));
            alg.set_bracket(k + i, k + j, &v);
        }
    }
    if !alg.jacobi_check().ok {
        return Err(Error::Invalid("not an infinitesimal model: Jacobi identity fails".into()));
    }
    Ok(alg)
}

/// Algebra on `R^6` with `[X, Y] = -T(X, Y)`, without Jacobi enforcement.
pub fn torsion_bracket_algebra<S: Scalar>(t: &Form<S>) -> LieAlgebraData<S> {
    let tensor = three_tensor(t);
    let mut alg = LieAlgebraData::abelian(DIM);
    alg.labels = (1..=DIM).map(|i| format!("e{i}")).collect();
    for i in 0..DIM {
        for j in i + 1..DIM {
            let v: Vec<S> = (0..DIM).map(|l| -tensor[(i * DIM + j) * DIM + l].clone()).collect();
            alg.set_bracket(i, j, &v);
        }
    }
    alg
}

/// Levi-Civita Christoffel symbols of a left-invariant metric `g` on a Lie algebra,
/// `∇_{x_i} x_j = Σ_k gamma[i][(k, j)] x_k`, from the Koszul formula.
pub fn levi_civita_metric<S: Scalar>(alg: &LieAlgebraData<S>, g: &Mat<S>) -> Result<Vec<Mat<S>>> {
    let n = alg.dim();
    if g.rows() != n || g.cols() != n || !g.approx_eq(&g.transpose()) {
        return Err(Error::Invalid("metric must be a symmetric matrix of the algebra's size".into()));
    }
    let ginv = g.inverse().ok_or_else(|| Error::Invalid("metric is degenerate".into()))?;
    let lower = |v: &[S], z: usize| (0..n).fold(S::zero(), |acc, a| acc + v[a].clone() * g[(a, z)].clone());
    let half = S::ratio(1, 2);
    Ok((0..n)
        .map(|i| {
            let lowered = Mat::from_fn(n, n, |z, j| {
                half.clone()
                    * (lower(&alg.basis_bracket(i, j), z) - lower(&alg.basis_bracket(j, z), i)
                        + lower(&alg.basis_bracket(z, i), j))
            });
            ginv.mul(&lowered)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn su2() -> LieAlgebraData<Q> {
        let mut a = LieAlgebraData::abelian(3);
        for i in 0..3 {
            a.set_bracket(i, (i + 1) % 3, &unit(3, (i + 2) % 3));
        }
        a
    }

    #[test]
    fn jacobi_examples() {
        assert!(su2().jacobi_check().ok);
        assert!(LieAlgebraData::<Q>::abelian(4).jacobi_check().ok);
        let t = Form::<Q>::parse("e125+e345").unwrap();
        assert!(!torsion_bracket_algebra(&t).jacobi_check().ok);
    }

    #[test]
    fn structural_invariants_of_su2() {
        let inv = su2().invariants();
        assert_eq!(inv.derived_series, vec![3]);
        assert_eq!(inv.center_dim, 0);
        assert_eq!(inv.killing_signature, (0, 3, 0));
    }

    #[test]
    fn text_round_trip() {
        let a = su2();
        assert_eq!(LieAlgebraData::<Q>::parse(&a.to_text()).unwrap().consts, a.consts);
    }

    #[test]
    fn derivation_action_matches_vectors() {
        let j = crate::endo::complex_structure::<Q>();
        assert_eq!(j.act(&Form::e(1)), Form::e(2));
    }
}
