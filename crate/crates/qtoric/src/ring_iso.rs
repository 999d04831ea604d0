//! Graded ring homomorphisms and isomorphisms between two presentations,
//! automorphism group enumeration, and isomorphism search.
//!
//! A degree-1 map is a 2x2 integer matrix G with `(φ(x1); φ(x2)) = G (x1; x2)`.
//! G induces a well-defined homomorphism iff it sends both source relations
//! into the target relation ideal; it is an isomorphism iff additionally
//! `det G = ±1` and the inverse matrix is a homomorphism back. That pair of
//! membership checks is a complete criterion: mutually inverse degree-1
//! matrices that both respect the relations compose to the identity on the
//! generators in both directions.
//!
//! The search runs three candidate generators and keeps whatever survives the
//! isomorphism check:
//!   1. factor matching — both relations split into linear factors, and most
//!      isomorphisms send factors to signed factors;
//!   2. a triangular family `x1 -> ±x1, x2 -> A x1 ± x2` (and its mirror)
//!      with A pinned by comparing x1 x2^m coefficients — this catches maps
//!      whose image of a generator is not a factor at all;
//!   3. an exhaustive box `|g_kl| <= B`, the completeness oracle at small
//!      scale.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::ring::{linear_power, poly_mul, RingElement, RingPresentation};

/// 2x2 integer matrix `[[g11, g12], [g21, g22]]`; row k holds the
/// coefficients of the image of x_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingMap(pub [[i64; 2]; 2]);

impl RingMap {
    pub fn identity() -> Self {
        RingMap([[1, 0], [0, 1]])
    }

    pub fn neg_identity() -> Self {
        RingMap([[-1, 0], [0, -1]])
    }

    pub fn det(&self) -> i128 {
        let [[a, b], [c, d]] = self.0;
        a as i128 * d as i128 - b as i128 * c as i128
    }

    pub fn neg(&self) -> RingMap {
        let [[a, b], [c, d]] = self.0;
        RingMap([[-a, -b], [-c, -d]])
    }

    /// Inverse, defined when det = ±1.
    pub fn inverse(&self) -> Option<RingMap> {
        let det = self.det();
        if det != 1 && det != -1 {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        let s = det as i64;
        Some(RingMap([[s * d, s * -b], [s * -c, s * a]]))
    }

    /// Matrix of `self` followed by `next` (composition of the induced maps).
    pub fn then(&self, next: &RingMap) -> RingMap {
        let x = &self.0;
        let y = &next.0;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        RingMap(out)
    }

    /// Substitute the images of x1, x2 into a polynomial.
    pub fn apply(&self, e: &RingElement) -> RingElement {
        let [[a, b], [c, d]] = self.0;
        let (a, b, c, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
        let mut acc = RingElement::zero(e.degree);
        for (&(i, j), coeff) in e.terms() {
            let part = poly_mul(&linear_power(&a, &b, i), &linear_power(&c, &d, j));
            acc = acc.add(&part.scale(coeff));
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([[self.0[0][0], self.0[0][1]], [self.0[1][0], self.0[1][1]]])
    }

    pub fn from_json(v: &serde_json::Value) -> Option<RingMap> {
        let rows = v.as_array()?;
        if rows.len() != 2 {
            return None;
        }
        let mut out = [[0i64; 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cells = row.as_array()?;
            if cells.len() != 2 {
                return None;
            }
            for (j, cell) in cells.iter().enumerate() {
                out[i][j] = cell.as_i64()?;
            }
        }
        Some(RingMap(out))
    }
}

impl std::fmt::Display for RingMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]
        )
    }
}

/// True iff G sends both source relations into the target relation ideal.
pub fn is_homomorphism(g: &RingMap, source: &RingPresentation, target: &RingPresentation) -> bool {
    target.is_zero_class(&g.apply(source.relation1()))
        && target.is_zero_class(&g.apply(source.relation2()))
}

/// True iff G induces a graded ring isomorphism: unimodular, a homomorphism
/// forward, and its matrix inverse a homomorphism backward.
pub fn is_isomorphism(g: &RingMap, source: &RingPresentation, target: &RingPresentation) -> bool {
    if source.top_degree() != target.top_degree() {
        return false;
    }
    let Some(ginv) = g.inverse() else {
        return false;
    };
    is_homomorphism(g, source, target) && is_homomorphism(&ginv, target, source)
}

/// The multiset of linear factors of both relations, as primitive coefficient
/// pairs (c1, c2) of c1*x1 + c2*x2, first nonzero entry positive, sorted.
pub fn linear_factors(r: &RingPresentation) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0), (0, 1)];
    out.extend(r.pair().b().iter().map(|&bi| normalize_form(1, bi)));
    out.extend(r.pair().a().iter().map(|&aj| normalize_form(aj, 1)));
    out.sort_unstable();
    out
}

fn normalize_form(c1: i64, c2: i64) -> (i64, i64) {
    let g = gcd_i64(c1.unsigned_abs(), c2.unsigned_abs()) as i64;
    let (mut c1, mut c2) = if g > 1 { (c1 / g, c2 / g) } else { (c1, c2) };
    let lead = if c1 != 0 { c1 } else { c2 };
    if lead < 0 {
        c1 = -c1;
        c2 = -c2;
    }
    (c1, c2)
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_i64(b, a % b)
    }
}

/// Box bound used both as the default search radius and as the completeness
/// oracle: twice the largest entry magnitude (at least 1), plus 2.
pub fn box_bound(pairs: &[&RingPresentation]) -> i64 {
    let max_entry = pairs
        .iter()
        .flat_map(|r| r.pair().a().iter().chain(r.pair().b().iter()))
        .map(|x| x.abs())
        .max()
        .unwrap_or(0);
    2 * max_entry.max(1) + 2
}

/// Factor-matching and triangular candidates (unimodular ones only).
fn structured_candidates(
    source: &RingPresentation,
    target: &RingPresentation,
) -> BTreeSet<RingMap> {
    let mut set = BTreeSet::new();
    set.insert(RingMap::identity());
    set.insert(RingMap::neg_identity());
    // send x1 and x2 to signed factors of the target
    let factors = linear_factors(target);
    for &(p1, p2) in &factors {
        for &(q1, q2) in &factors {
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    let g = RingMap([[s1 * p1, s1 * p2], [s2 * q1, s2 * q2]]);
                    if g.det().abs() == 1 {
                        set.insert(g);
                    }
                }
            }
        }
    }
    // triangular family: x1 -> s*x1, x2 -> A*x1 + e*x2; comparing the
    // x1*x2^m coefficients of the second relations forces
    // (m+1)*A = e*sum(a_target) - s*sum(a_source)
    if source.pair().m() == target.pair().m() {
        let m = source.pair().m() as i64;
        let sa_src: i64 = source.pair().a().iter().sum();
        let sa_tgt: i64 = target.pair().a().iter().sum();
        for s in [1i64, -1] {
            for e in [1i64, -1] {
                let num = e * sa_tgt - s * sa_src;
                if num % (m + 1) == 0 {
                    set.insert(RingMap([[s, 0], [num / (m + 1), e]]));
                }
            }
        }
    }
    // mirror family: x1 -> e*x1 + B*x2, x2 -> s*x2
    if source.pair().n() == target.pair().n() {
        let n = source.pair().n() as i64;
        let sb_src: i64 = source.pair().b().iter().sum();
        let sb_tgt: i64 = target.pair().b().iter().sum();
        for s in [1i64, -1] {
            for e in [1i64, -1] {
                let num = e * sb_tgt - s * sb_src;
                if num % (n + 1) == 0 {
                    set.insert(RingMap([[e, num / (n + 1)], [0, s]]));
                }
            }
        }
    }
    set
}

fn box_candidates(bound: i64) -> Vec<RingMap> {
    let mut out = Vec::new();
    for g11 in -bound..=bound {
        for g12 in -bound..=bound {
            for g21 in -bound..=bound {
                for g22 in -bound..=bound {
                    if (g11 as i128 * g22 as i128 - g12 as i128 * g21 as i128).abs() == 1 {
                        out.push(RingMap([[g11, g12], [g21, g22]]));
                    }
                }
            }
        }
    }
    out
}

fn filter_isomorphisms(
    candidates: Vec<RingMap>,
    source: &RingPresentation,
    target: &RingPresentation,
) -> Vec<RingMap> {
    let mut found: Vec<RingMap> = candidates
        .into_par_iter()
        .filter(|g| is_isomorphism(g, source, target))
        .collect();
    found.sort_unstable();
    found.dedup();
    found
}

/// All isomorphisms found by the structured candidates together with the
/// default box; sorted and deduplicated.
pub fn find_isomorphisms(source: &RingPresentation, target: &RingPresentation) -> Vec<RingMap> {
    find_isomorphisms_within(source, target, box_bound(&[source, target]))
}

/// Like [`find_isomorphisms`] with an explicit box radius.
pub fn find_isomorphisms_within(
    source: &RingPresentation,
    target: &RingPresentation,
    bound: i64,
) -> Vec<RingMap> {
    if source.top_degree() != target.top_degree() {
        return Vec::new();
    }
    let mut candidates: Vec<RingMap> =
        structured_candidates(source, target).into_iter().collect();
    candidates.extend(box_candidates(bound));
    filter_isomorphisms(candidates, source, target)
}

/// Isomorphisms from the structured candidate families only (no box). Used to
/// cross-check search-strategy completeness against the box oracle.
pub fn isomorphisms_structured_only(
    source: &RingPresentation,
    target: &RingPresentation,
) -> Vec<RingMap> {
    if source.top_degree() != target.top_degree() {
        return Vec::new();
    }
    filter_isomorphisms(structured_candidates(source, target).into_iter().collect(), source, target)
}

/// Isomorphisms from the exhaustive box only. The completeness oracle.
pub fn isomorphisms_box_only(
    source: &RingPresentation,
    target: &RingPresentation,
    bound: i64,
) -> Vec<RingMap> {
    if source.top_degree() != target.top_degree() {
        return Vec::new();
    }
    filter_isomorphisms(box_candidates(bound), source, target)
}

/// Cheap decision for "is there any isomorphism at all": structured
/// candidates first, then a mod-p emptiness certificate, then the box.
pub fn exists_isomorphism(source: &RingPresentation, target: &RingPresentation) -> bool {
    if source.top_degree() != target.top_degree()
        || source.rank_vector() != target.rank_vector()
    {
        return false;
    }
    for g in structured_candidates(source, target) {
        if is_isomorphism(&g, source, target) {
            return true;
        }
    }
    if [2, 3, 5, 7].iter().any(|&p| no_isomorphism_mod_p(source, target, p)) {
        return false;
    }
    let bound = box_bound(&[source, target]);
    box_candidates(bound)
        .into_par_iter()
        .any(|g| is_isomorphism(&g, source, target))
}

/// The automorphism group of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub elements: Vec<RingMap>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &RingMap) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

pub fn enumerate_automorphisms(r: &RingPresentation) -> AutGroup {
    AutGroup { elements: find_isomorphisms(r, r) }
}

// ---- mod-p certificate ----------------------------------------------------

/// Sound one-sided test: `true` certifies that no isomorphism exists over Z,
/// because any such map would reduce to an invertible mod-p solution. `false`
/// says nothing.
pub fn no_isomorphism_mod_p(source: &RingPresentation, target: &RingPresentation, p: i64) -> bool {
    debug_assert!(p >= 2);
    for g11 in 0..p {
        for g12 in 0..p {
            for g21 in 0..p {
                for g22 in 0..p {
                    let det = (g11 * g22 - g12 * g21).rem_euclid(p);
                    if det != 1 && det != p - 1 {
                        continue;
                    }
                    let g = RingMap([[g11, g12], [g21, g22]]);
                    // inverse mod p: det * adjugate, since det = ±1 mod p
                    let ginv = RingMap([
                        [(det * g22).rem_euclid(p), (det * -g12).rem_euclid(p)],
                        [(det * -g21).rem_euclid(p), (det * g11).rem_euclid(p)],
                    ]);
                    if is_homomorphism_mod_p(&g, source, target, p)
                        && is_homomorphism_mod_p(&ginv, target, source, p)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_homomorphism_mod_p(
    g: &RingMap,
    source: &RingPresentation,
    target: &RingPresentation,
    p: i64,
) -> bool {
    vanishes_mod_p(target, &g.apply(source.relation1()), p)
        && vanishes_mod_p(target, &g.apply(source.relation2()), p)
}

fn vanishes_mod_p(pres: &RingPresentation, e: &RingElement, p: i64) -> bool {
    if e.is_zero() || e.degree > pres.top_degree() {
        return true;
    }
    let d = e.degree;
    let rel = pres.relation_matrix(d).expect("degree within range");
    let pb = BigInt::from(p);
    let to_fp = |x: &BigInt| -> i64 {
        use num_integer::Integer;
        let r = x.mod_floor(&pb);
        i64::try_from(&r).expect("residue fits")
    };
    let mut cols: Vec<Vec<i64>> = (0..rel.cols)
        .map(|c| (0..rel.rows).map(|r| to_fp(rel.at(r, c))).collect())
        .collect();
    let mut target = vec![0i64; d + 1];
    for (&(i, _), c) in e.terms() {
        target[i] = to_fp(c);
    }
    // solvability over F_p: eliminate and see whether the target is spanned
    let rows = d + 1;
    let mut pivot_row = 0;
    for col in 0..cols.len() {
        let Some(pr) = (pivot_row..rows).find(|&r| cols[col][r] % p != 0) else {
            continue;
        };
        for v in cols.iter_mut().chain(std::iter::once(&mut target)) {
            v.swap(pr, pivot_row);
        }
        let inv = mod_inverse(cols[col][pivot_row], p);
        for r in 0..rows {
            if r == pivot_row || cols[col][r] == 0 {
                continue;
            }
            let factor = (cols[col][r] * inv).rem_euclid(p);
            for ci in col..cols.len() {
                cols[ci][r] = (cols[ci][r] - factor * cols[ci][pivot_row]).rem_euclid(p);
            }
            target[r] = (target[r] - factor * target[pivot_row]).rem_euclid(p);
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // after elimination the rows without pivots must have zero target entries
    let mut reachable = vec![false; rows];
    let mut pr = 0;
    for col in 0..cols.len() {
        if pr < rows && cols[col][pr] % p != 0 {
            reachable[pr] = true;
            pr += 1;
        }
    }
    target.iter().zip(&reachable).all(|(t, ok)| *ok || t % p == 0)
}

fn mod_inverse(x: i64, p: i64) -> i64 {
    // p is a small prime here; Fermat
    let mut acc = 1i64;
    let mut base = x.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
