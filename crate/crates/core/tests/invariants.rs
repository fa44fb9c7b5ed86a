//! Independent checks of the invariant-polynomial dimensions.

use skewtorsion::invariants::{invariant_dim, invariant_dim_in, invariant_poly_dims};
use skewtorsion::linalg::{coordinates, Mat};
use skewtorsion::unitary::{part_basis, u3_basis, L3Part};
use skewtorsion::{Rational, Real, Scalar, Surd};
use std::collections::{BTreeMap, HashMap};

type W = [i64; 3];

/// Weights of the complexified module: three-element subsets of `{±ε_i}`
/// with the weights of the vector part `{±ε_i}` removed once each.
fn module_weights() -> Vec<W> {
    let mut basic: Vec<W> = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut w = [0; 3];
            w[i] = s;
            basic.push(w);
        }
    }
    let mut all = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                all.push([0, 1, 2].map(|k| basic[a][k] + basic[b][k] + basic[c][k]));
            }
        }
    }
    for w in &basic {
        let pos = all.iter().position(|x| x == w).expect("vector weight present");
        all.remove(pos);
    }
    all
}

/// Weight multiplicities of the degree-`d` symmetric power.
fn symmetric_power_weights(weights: &[W], d: usize) -> BTreeMap<W, i64> {
    let mut table: Vec<BTreeMap<W, i64>> = vec![BTreeMap::new(); d + 1];
    table[0].insert([0, 0, 0], 1);
    // generating function Π_w 1/(1 - t e^w), truncated at degree d
    for w in weights {
        for deg in 1..=d {
            let prev: Vec<(W, i64)> = table[deg - 1].iter().map(|(k, v)| (*k, *v)).collect();
            for (k, v) in prev {
                *table[deg].entry([k[0] + w[0], k[1] + w[1], k[2] + w[2]]).or_insert(0) += v;
            }
        }
    }
    table.swap_remove(d)
}

/// Trivial multiplicity as `Σ_{w ∈ S3} sign(w) m(ρ - wρ)` with `ρ = (1, 0, -1)`.
fn weyl_trivial_multiplicity(d: usize) -> i64 {
    let m = symmetric_power_weights(&module_weights(), d);
    let rho = [1, 0, -1];
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
    ];
    perms
        .iter()
        .map(|(p, sign)| {
            let wr = [rho[p[0]], rho[p[1]], rho[p[2]]];
            let key = [rho[0] - wr[0], rho[1] - wr[1], rho[2] - wr[2]];
            sign * m.get(&key).copied().unwrap_or(0)
        })
        .sum()
}

/// Kernel of the real u(3) action on degree-`d` polynomials over the 14 forms.
fn real_kernel_dim(d: usize) -> usize {
    type Q = Rational;
    let mut basis = part_basis::<Q>(L3Part::Two);
    basis.extend(part_basis::<Q>(L3Part::Twelve));
    let coords: Vec<Vec<Q>> = basis.iter().map(|f| f.to_coords()).collect();
    let n = basis.len();
    let reps: Vec<Vec<Vec<Q>>> = u3_basis::<Q>()
        .iter()
        .map(|h| {
            basis
                .iter()
                .map(|f| coordinates(&coords, &h.act(f).to_coords()).expect("invariant module"))
                .collect()
        })
        .collect();
    let mut monos: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &monos {
            let start = m.last().copied().unwrap_or(0);
            for k in start..n {
                let mut x = m.clone();
                x.push(k);
                next.push(x);
            }
        }
        monos = next;
    }
    let index: HashMap<Vec<usize>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut mat: Mat<Q> = Mat::zeros(reps.len() * monos.len(), monos.len());
    for (g, rep) in reps.iter().enumerate() {
        for (col, m) in monos.iter().enumerate() {
            for pos in 0..m.len() {
                for (l, c) in rep[m[pos]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = m.clone();
                    t[pos] = l;
                    t.sort_unstable();
                    let row = g * monos.len() + index[&t];
                    mat[(row, col)] = mat[(row, col)].clone() + c.clone();
                }
            }
        }
    }
    monos.len() - mat.rank()
}

#[test]
fn module_weights_have_expected_size() {
    let w = module_weights();
    assert_eq!(w.len(), 14);
    assert_eq!(w.iter().filter(|x| **x == [1, 1, 1]).count(), 1);
    assert_eq!(w.iter().filter(|x| **x == [-1, -1, -1]).count(), 1);
}

#[test]
fn dimensions_agree_with_weyl_alternation() {
    for d in 1..=6 {
        assert_eq!(invariant_dim(d) as i64, weyl_trivial_multiplicity(d), "degree {d}");
    }
}

#[test]
fn dimensions_agree_with_real_kernel() {
    for d in 1..=2 {
        assert_eq!(invariant_dim(d), real_kernel_dim(d), "degree {d}");
    }
}

#[test]
fn total_up_to_degree_four() {
    let dims = invariant_poly_dims(4, false).unwrap();
    assert_eq!(dims, vec![(1, 0), (2, 2), (3, 0), (4, 6)]);
    assert_eq!(dims.iter().map(|(_, n)| n).sum::<usize>(), 8);
}

#[test]
fn override_allows_higher_degree() {
    assert!(invariant_poly_dims(5, false).is_err());
    assert_eq!(invariant_poly_dims(5, true).unwrap().len(), 5);
}

#[test]
fn dimensions_are_stable_across_backends_and_reruns() {
    for d in 1..=4 {
        let exact = invariant_dim(d);
        assert_eq!(invariant_dim(d), exact);
        assert_eq!(invariant_dim_in::<Real>(d), exact, "degree {d}");
        assert_eq!(invariant_dim_in::<Surd>(d), exact, "degree {d}");
    }
}
