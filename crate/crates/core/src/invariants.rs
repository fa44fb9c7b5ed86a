//! Dimensions of U(3)-invariant polynomials on `Λ^3_2 ⊕ Λ^3_12`.
//!
//! After complexification the module is `det ⊕ det⁻¹ ⊕ det⊗S²(C³)* ⊕ det⁻¹⊗S²(C³)`
//! under gl(3). Invariants of degree `d` are the weight-zero elements of `S^d`
//! annihilated by the raising operators `E12` and `E23`.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Rational, Scalar};
use std::collections::HashMap;

/// Largest degree computed without an explicit override.
pub const MAX_DEGREE: usize = 4;

type Weight = [i64; 3];

/// Basis vector of the complexified module.
#[derive(Clone, Debug)]
struct Generator {
    weight: Weight,
    /// Images under `E12` and `E23` as (generator index, coefficient).
    raise: [Vec<(usize, i64)>; 2],
}

/// Symmetric-square basis index `(i, j)` with `i ≤ j`.
fn sym_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            out.push((i, j));
        }
    }
    out
}

fn module() -> Vec<Generator> {
    let mut gens = vec![
        Generator { weight: [1, 1, 1], raise: [Vec::new(), Vec::new()] },
        Generator { weight: [-1, -1, -1], raise: [Vec::new(), Vec::new()] },
    ];
    let pairs = sym_pairs();
    let index_of = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pairs.iter().position(|p| *p == key).expect("pair")
    };
    // E_ab with (a, b) = (0, 1) and (1, 2)
    let raisers = [(0usize, 1usize), (1, 2)];
    // det ⊗ S²(C³)*, dual basis f_k with E_ab f_k = -δ_ak f_b
    let offset = gens.len();
    for &(i, j) in &pairs {
        let mut weight = [1, 1, 1];
        weight[i] -= 1;
        weight[j] -= 1;
        let raise = raisers.map(|(a, b)| {
            let mut img = Vec::new();
            for (k, other) in [(i, j), (j, i)] {
                if k == a {
                    img.push((offset + index_of(b, other), -1));
                }
            }
            img
        });
        gens.push(Generator { weight, raise });
    }
    // det⁻¹ ⊗ S²(C³), basis v_k with E_ab v_k = δ_bk v_a
    let offset = gens.len();
    for &(i, j) in &pairs {
        let mut weight = [-1, -1, -1];
        weight[i] += 1;
        weight[j] += 1;
        let raise = raisers.map(|(a, b)| {
            let mut img = Vec::new();
            for (k, other) in [(i, j), (j, i)] {
                if k == b {
                    img.push((offset + index_of(a, other), 1));
                }
            }
            img
        });
        gens.push(Generator { weight, raise });
    }
    gens
}

/// Multisets of generator indices (sorted) of size `d` and total weight zero.
fn weight_zero_monomials(gens: &[Generator], d: usize) -> Vec<Vec<usize>> {
    fn rec(
        gens: &[Generator],
        start: usize,
        left: usize,
        acc: &mut Vec<usize>,
        w: Weight,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            if w == [0, 0, 0] {
                out.push(acc.clone());
            }
            return;
        }
        for g in start..gens.len() {
            let gw = gens[g].weight;
            acc.push(g);
            rec(gens, g, left - 1, acc, [w[0] + gw[0], w[1] + gw[1], w[2] + gw[2]], out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, &mut Vec::new(), [0, 0, 0], &mut out);
    out
}

/// Dimension of invariant polynomials of homogeneous degree `d`, exact.
pub fn invariant_dim(d: usize) -> usize {
    invariant_dim_in::<Rational>(d)
}

/// Same count with the linear algebra done in the backend `S`.
pub fn invariant_dim_in<S: Scalar>(d: usize) -> usize {
    if d == 0 {
        return 1;
    }
    let gens = module();
    let sources = weight_zero_monomials(&gens, d);
    if sources.is_empty() {
        return 0;
    }
    let mut rows: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for (col, mono) in sources.iter().enumerate() {
        for r in 0..2 {
            // derivation: replace one factor by its image
            for pos in 0..mono.len() {
                if pos > 0 && mono[pos] == mono[pos - 1] {
                    continue;
                }
                let mult = mono.iter().filter(|&&g| g == mono[pos]).count() as i64;
                for &(img, c) in &gens[mono[pos]].raise[r] {
                    let mut target = mono.clone();
                    target[pos] = img;
                    target.sort_unstable();
                    let n = rows.len();
                    let row = *rows.entry((r, target)).or_insert(n);
                    entries.push((row, col, c * mult));
                }
            }
        }
    }
    if rows.is_empty() {
        return sources.len();
    }
    let mut m: Mat<S> = Mat::zeros(rows.len(), sources.len());
    for (r, c, v) in entries {
        m[(r, c)] = m[(r, c)].clone() + S::from_i64(v);
    }
    sources.len() - m.rank()
}

/// Per-degree dimensions for degrees `1..=max_deg`.
pub fn invariant_poly_dims(max_deg: usize, allow_large: bool) -> Result<Vec<(usize, usize)>> {
    if max_deg > MAX_DEGREE && !allow_large {
        return Err(Error::Invalid(format!(
            "degree {max_deg} exceeds {MAX_DEGREE}; pass the override to compute it"
        )));
    }
    Ok((1..=max_deg).map(|d| (d, invariant_dim(d))).collect())
}
