//! Characteristic matrices over the product of two simplices: the canonical
//! form, vertex non-singularity, pair enumeration, the free two-torus action
//! weights, and equivalence search (row GL transforms, column sign changes,
//! facet relabelings).

use itertools::Itertools;
use num_traits::{One, Signed};

use crate::error::{QtError, Result};
use crate::intmat::{big, IMat};
use crate::ring::QuasitoricPair;

/// Validity of raw vectors: every product a[j]*b[i] is 0 or 2, and both
/// vectors are nonempty.
pub fn validate(a: &[i64], b: &[i64]) -> bool {
    QuasitoricPair::new(a.to_vec(), b.to_vec()).is_ok()
}

/// Characteristic matrix with the facet column order
/// `F_1..F_n, F'_1..F'_m, F_{n+1}, F'_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix {
    pub n: usize,
    pub m: usize,
    pub mat: IMat,
}

impl CharMatrix {
    /// Column indices of the facets of the first simplex factor.
    fn first_factor_cols(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = (0..self.n).collect();
        cols.push(self.n + self.m);
        cols
    }

    fn second_factor_cols(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = (self.n..self.n + self.m).collect();
        cols.push(self.n + self.m + 1);
        cols
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.mat.rows)
            .map(|i| (0..self.mat.cols).map(|j| self.mat.at(i, j).to_string()).collect())
            .collect();
        let rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                serde_json::Value::Array(
                    r.iter()
                        .map(|s| serde_json::Value::Number(s.parse().unwrap()))
                        .collect(),
                )
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// The canonical characteristic matrix `[I | c | c']` with
/// `c = (-1,..,-1, -a_1,..,-a_m)^T` and `c' = (-b_1,..,-b_n, -1,..,-1)^T`.
pub fn canonical_char_matrix(pair: &QuasitoricPair) -> CharMatrix {
    let (n, m) = (pair.n(), pair.m());
    let l = n + m;
    let mut mat = IMat::zeros(l, l + 2);
    for i in 0..l {
        mat.set(i, i, big(1));
    }
    for i in 0..n {
        mat.set(i, l, big(-1));
        mat.set(i, l + 1, big(-pair.b()[i]));
    }
    for j in 0..m {
        mat.set(n + j, l, big(-pair.a()[j]));
        mat.set(n + j, l + 1, big(-1));
    }
    CharMatrix { n, m, mat }
}

/// Vertex non-singularity: at each of the (n+1)(m+1) vertices (one omitted
/// facet per simplex factor) the incident facet columns have determinant ±1.
pub fn check_nonsingularity(mat: &IMat, n: usize, m: usize) -> Result<bool> {
    let l = n + m;
    if mat.rows != l || mat.cols != l + 2 {
        return Err(QtError::Shape(format!(
            "characteristic matrix must be {}x{}, got {}x{}",
            l,
            l + 2,
            mat.rows,
            mat.cols
        )));
    }
    let f_cols: Vec<usize> = (0..n).chain([l]).collect();
    let fp_cols: Vec<usize> = (n..l).chain([l + 1]).collect();
    for omit_f in 0..=n {
        for omit_fp in 0..=m {
            let cols: Vec<usize> = f_cols
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit_f)
                .map(|(_, &c)| c)
                .chain(
                    fp_cols
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != omit_fp)
                        .map(|(_, &c)| c),
                )
                .collect();
            if !mat.select_cols(&cols).det().abs().is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All valid pairs with entries in [-bound, bound], ordered lexicographically
/// by (a, b). No symmetry reduction: the output is closed under entry
/// permutations and the valid sign flips.
pub fn enumerate_pairs(n: usize, m: usize, bound: i64) -> Vec<QuasitoricPair> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut out = Vec::new();
    for a in (0..m).map(|_| range.iter().copied()).multi_cartesian_product() {
        for b in (0..n).map(|_| range.iter().copied()).multi_cartesian_product() {
            if let Ok(pair) = QuasitoricPair::new(a.clone(), b) {
                out.push(pair);
            }
        }
    }
    out
}

/// Exponent rows of the free two-torus action on the product of spheres:
/// coordinates are (w_1..w_{n+1}, z_1..z_{m+1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KActionWeights {
    pub n: usize,
    pub m: usize,
    pub t1: Vec<i64>,
    pub t2: Vec<i64>,
}

pub fn k_action_weights(pair: &QuasitoricPair) -> KActionWeights {
    weights_from_raw(pair.a(), pair.b())
}

fn weights_from_raw(a: &[i64], b: &[i64]) -> KActionWeights {
    let (n, m) = (b.len(), a.len());
    let mut t1 = vec![1i64; n + 1];
    t1.extend_from_slice(a);
    t1.push(0);
    let mut t2 = b.to_vec();
    t2.push(0);
    t2.extend(vec![1i64; m + 1]);
    KActionWeights { n, m, t1, t2 }
}

/// Freeness of the weight data: for each pair (one w-coordinate, one
/// z-coordinate) — the minimal simultaneously-nonzero supports on the sphere
/// product — the 2x2 exponent minor is ±1.
pub fn weights_free(w: &KActionWeights) -> bool {
    for i in 0..=w.n {
        for j in 0..=w.m {
            let zi = w.n + 1 + j;
            let det = w.t1[i] as i128 * w.t2[zi] as i128 - w.t1[zi] as i128 * w.t2[i] as i128;
            if det.abs() != 1 {
                return false;
            }
        }
    }
    true
}

/// Witness for `M2 = G * M1 * S * P`: a row transform G in GL(l, Z), a column
/// sign vector, and a facet relabeling (including the factor swap when the
/// simplex dimensions allow it).
#[derive(Clone, Debug)]
pub struct CharEquivWitness {
    pub g: IMat,
    pub signs: Vec<i64>,
    /// output column c is the signed input column perm[c]
    pub perm: Vec<usize>,
    pub swapped: bool,
}

pub fn char_equiv(m1: &CharMatrix, m2: &CharMatrix) -> Option<CharEquivWitness> {
    if m1.n + m1.m != m2.n + m2.m {
        return None;
    }
    let l = m1.n + m1.m;
    let cols = l + 2;

    let mut branches: Vec<(bool, Vec<usize>, Vec<usize>)> = Vec::new();
    if (m1.n, m1.m) == (m2.n, m2.m) {
        branches.push((false, m1.first_factor_cols(), m1.second_factor_cols()));
    }
    if (m1.n, m1.m) == (m2.m, m2.n) {
        branches.push((true, m1.second_factor_cols(), m1.first_factor_cols()));
    }

    for (swapped, group_f, group_s) in branches {
        // positions in M2's column order that each group must fill
        let slots_f = m2.first_factor_cols();
        let slots_s = m2.second_factor_cols();
        for pf in group_f.iter().copied().permutations(group_f.len()) {
            for ps in group_s.iter().copied().permutations(group_s.len()) {
                let mut perm = vec![0usize; cols];
                for (slot, src) in slots_f.iter().zip(&pf) {
                    perm[*slot] = *src;
                }
                for (slot, src) in slots_s.iter().zip(&ps) {
                    perm[*slot] = *src;
                }
                if let Some(w) = solve_transform(m1, m2, &perm, swapped) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Given the facet relabeling, find column signs and a unimodular G making
/// the equation exact.
fn solve_transform(
    m1: &CharMatrix,
    m2: &CharMatrix,
    perm: &[usize],
    swapped: bool,
) -> Option<CharEquivWitness> {
    let l = m1.n + m1.m;
    let cols = l + 2;
    // G is pinned (up to the sign choices on the pivot columns) by an
    // invertible l-column subset; take the first unimodular one
    let permuted = m1.mat.select_cols(perm);
    let pivot: Vec<usize> = (0..cols).collect();
    let pivot = pivot
        .iter()
        .copied()
        .combinations(l)
        .find(|c| permuted.select_cols(c).det().abs().is_one())?;
    let base = permuted.select_cols(&pivot);
    // signs on the pivot columns, then G, then the remaining signs read off
    for sign_bits in 0..(1u32 << l) {
        let mut signed = base.clone();
        for (k, _) in pivot.iter().enumerate() {
            if sign_bits >> k & 1 == 1 {
                for r in 0..l {
                    let v = -signed.at(r, k);
                    signed.set(r, k, v);
                }
            }
        }
        let target = m2.mat.select_cols(&pivot);
        // G * signed = target  =>  G = target * signed^{-1}
        let signed_inv = match signed.inverse_unimodular() {
            Some(inv) => inv,
            None => continue,
        };
        let g = target.mul(&signed_inv);
        if !g.det().abs().is_one() {
            continue;
        }
        // fix signs of the remaining columns so that G * (±col) matches
        let mut signs = vec![0i64; cols];
        for (k, &c) in pivot.iter().enumerate() {
            signs[perm[c]] = if sign_bits >> k & 1 == 1 { -1 } else { 1 };
        }
        let mut ok = true;
        for c in 0..cols {
            if pivot.contains(&c) {
                continue;
            }
            let image = g.mul_vec(&permuted.col(c));
            let want: Vec<_> = (0..l).map(|r| m2.mat.at(r, c).clone()).collect();
            if image == want {
                signs[perm[c]] = 1;
            } else if image.iter().map(|x| -x).eq(want.iter().cloned()) {
                signs[perm[c]] = -1;
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        return Some(CharEquivWitness { g, signs, perm: perm.to_vec(), swapped });
    }
    None
}

/// Check a witness: `M2 = G * M1 * S * P` entry for entry.
pub fn verify_char_equiv(m1: &CharMatrix, m2: &CharMatrix, w: &CharEquivWitness) -> bool {
    let l = m1.n + m1.m;
    let cols = l + 2;
    if w.perm.len() != cols || w.signs.len() != cols {
        return false;
    }
    if !w.g.det().abs().is_one() {
        return false;
    }
    for c in 0..cols {
        let src = w.perm[c];
        let mut col = m1.mat.col(src);
        if w.signs[src] < 0 {
            for v in &mut col {
                *v = -v.clone();
            }
        }
        let image = w.g.mul_vec(&col);
        for r in 0..l {
            if image[r] != *m2.mat.at(r, c) {
                return false;
            }
        }
    }
    true
}
