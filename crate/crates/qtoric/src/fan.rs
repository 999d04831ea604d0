//! Fans of weighted projective spaces and of projective line-bundle
//! compactifications, star subdivision (blow-up), smoothness tests,
//! recognition of weighted projective spaces from rational characteristic
//! matrices, connected-sum characteristic matrices, and the cohomology
//! of lens spaces.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::charmat::CharMatrix;
use crate::error::{QtError, Result};
use crate::intmat::{big, IMat};

/// Simplicial fan given by primitive rays and its maximal cones
/// (faces are implicit).
#[derive(Clone, Debug)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(QtError::Shape("zero vector cannot be a ray".into()));
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

/// Solve v = Σ λ_i r_i with λ_i ≥ 0 (or > 0 when `strict`) over the
/// rationals, via the Gram matrix of the (independent) rays. Exact:
/// positivity is read off Cramer determinants and the combination is
/// re-verified integrally.
fn in_cone(rays: &[&[i64]], v: &[i64], strict: bool) -> bool {
    let k = rays.len();
    if k == 0 {
        return v.iter().all(|&x| x == 0) && !strict;
    }
    let dim = rays[0].len();
    let dot = |x: &[i64], y: &[i64]| -> BigInt {
        x.iter()
            .zip(y)
            .map(|(&p, &q)| (p as i128) * (q as i128))
            .fold(BigInt::zero(), |acc, t| acc + BigInt::from(t))
    };
    let mut gram = IMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, dot(rays[i], rays[j]));
        }
    }
    let det_g = gram.det();
    if det_g.is_zero() {
        return false; // dependent rays: not a simplicial cone
    }
    let rhs: Vec<BigInt> = (0..k).map(|i| dot(rays[i], v)).collect();
    let mut lambdas = Vec::with_capacity(k);
    for i in 0..k {
        let mut gi = gram.clone();
        for r in 0..k {
            gi.set(r, i, rhs[r].clone());
        }
        let di = gi.det();
        if di.is_negative() || (strict && di.is_zero()) {
            return false;
        }
        lambdas.push(di);
    }
    // verify det(G)·v = Σ det(G_i)·r_i exactly (also rules out v outside the span)
    for c in 0..dim {
        let mut acc = BigInt::zero();
        for i in 0..k {
            acc += &lambdas[i] * big(rays[i][c]);
        }
        if acc != &det_g * big(v[c]) {
            return false;
        }
    }
    true
}

impl Fan {
    /// Validate and normalize: primitive rays, simplicial cones, and the
    /// desk-level face check that a ray lying inside another cone must be
    /// one of its rays.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for r in &rays {
            if r.len() != rank {
                return Err(QtError::Shape(format!(
                    "ray {:?} does not have {} coordinates",
                    r, rank
                )));
            }
            if primitive(r)? != *r {
                return Err(QtError::Shape(format!("ray {:?} is not primitive", r)));
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(QtError::Shape(format!("duplicate ray {:?}", rays[i])));
                }
            }
        }
        let mut cones: Vec<Vec<usize>> = Vec::new();
        for c in &max_cones {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(QtError::Shape("cone references a missing ray".into()));
            }
            let mat = IMat::from_rows_i64(&c.iter().map(|&i| rays[i].clone()).collect_vec());
            if crate::intmat::snf(&mat).rank != c.len() {
                return Err(QtError::Shape(format!(
                    "cone {:?} is not simplicial: dependent rays",
                    c
                )));
            }
            cones.push(c);
        }
        cones.sort();
        cones.dedup();
        let fan = Fan {
            rank,
            rays,
            max_cones: cones,
        };
        // rays interior to foreign cones signal overlapping (non-face) intersections
        for c in &fan.max_cones {
            let cone_rays: Vec<&[i64]> = c.iter().map(|&i| fan.rays[i].as_slice()).collect();
            for (i, r) in fan.rays.iter().enumerate() {
                if !c.contains(&i) && in_cone(&cone_rays, r, false) {
                    return Err(QtError::Shape(format!(
                        "ray {:?} lies inside cone {:?} without being one of its rays",
                        r, c
                    )));
                }
            }
        }
        Ok(fan)
    }

    fn ray_index(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// Maximal cones as sets of ray vectors, for order-independent equality.
    fn cone_ray_sets(&self) -> std::collections::BTreeSet<Vec<Vec<i64>>> {
        self.max_cones
            .iter()
            .map(|c| {
                let mut rs: Vec<Vec<i64>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                rs.sort();
                rs
            })
            .collect()
    }

    /// Whether v lies in the union of the maximal cones.
    pub fn contains_point(&self, v: &[i64]) -> bool {
        self.max_cones.iter().any(|c| {
            let cone_rays: Vec<&[i64]> = c.iter().map(|&i| self.rays[i].as_slice()).collect();
            in_cone(&cone_rays, v, false)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "rays": self.rays,
            "max_cones": self.max_cones,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Fan> {
        let bad = || QtError::Shape("fan JSON needs rank, rays, max_cones".into());
        let rank = v["rank"].as_u64().ok_or_else(bad)? as usize;
        let parse_vec_i64 = |x: &serde_json::Value| -> Result<Vec<i64>> {
            x.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_i64().ok_or_else(bad))
                .collect()
        };
        let rays = v["rays"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(parse_vec_i64)
            .collect::<Result<Vec<_>>>()?;
        let cones = v["max_cones"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|c| {
                c.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|e| e.as_u64().map(|u| u as usize).ok_or_else(bad))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::new(rank, rays, cones)
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.cone_ray_sets() == other.cone_ray_sets()
    }
}

impl Eq for Fan {}

/// Fan of the weighted projective space with weights (1,…,1,a) on Δ^{n+1}:
/// rays −e_1−⋯−e_n−a·e_{n+1}, e_1, …, e_{n+1}; maximal cones are all
/// (n+1)-subsets.
pub fn wps_fan(n: usize, a: i64) -> Result<Fan> {
    if a <= 0 {
        return Err(QtError::Unsupported(format!(
            "weighted projective space needs a positive weight, got a = {a}"
        )));
    }
    if n == 0 {
        return Err(QtError::Shape("base dimension must be at least 1".into()));
    }
    let rank = n + 1;
    let mut rays = Vec::with_capacity(n + 2);
    let mut r0 = vec![-1i64; rank];
    r0[n] = -a;
    rays.push(r0);
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        rays.push(e);
    }
    let max_cones = (0..n + 2).combinations(n + 1).collect_vec();
    Fan::new(rank, rays, max_cones)
}

/// Fan of the projectivization P(C ⊕ γ^a) over CP^n: the base fan of CP^n
/// (lifted with the twist) times the two fiber rays ±e_{n+1}.
pub fn gb_fan(n: usize, a: i64) -> Result<Fan> {
    if n == 0 {
        return Err(QtError::Shape("base dimension must be at least 1".into()));
    }
    let rank = n + 1;
    let mut rays = Vec::with_capacity(n + 3);
    let mut r0 = vec![-1i64; rank];
    r0[n] = -a;
    rays.push(r0); // 0: twisted lift of the base ray
    let mut down = vec![0i64; rank];
    down[n] = -1;
    rays.push(down); // 1: -e_{n+1}
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        rays.push(e); // 2..n+2: e_1, …, e_{n+1}
    }
    let base: Vec<usize> = std::iter::once(0).chain(2..n + 2).collect();
    let mut max_cones = Vec::new();
    for drop in 0..base.len() {
        let base_cone: Vec<usize> = base
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != drop)
            .map(|(_, &i)| i)
            .collect();
        for fiber in [n + 2, 1] {
            let mut c = base_cone.clone();
            c.push(fiber);
            max_cones.push(c);
        }
    }
    Fan::new(rank, rays, max_cones)
}

/// Star subdivision: insert `new_ray` (stored primitively) inside the cone
/// spanned by `cone_rays`; every maximal cone containing that cone is
/// replaced by its joins with the new ray.
pub fn star_subdivide(fan: &Fan, cone_rays: &[Vec<i64>], new_ray: &[i64]) -> Result<Fan> {
    if new_ray.len() != fan.rank {
        return Err(QtError::Shape("new ray has the wrong dimension".into()));
    }
    let mut sigma = Vec::with_capacity(cone_rays.len());
    for r in cone_rays {
        sigma.push(fan.ray_index(r).ok_or_else(|| {
            QtError::Shape(format!("{:?} is not a ray of the fan", r))
        })?);
    }
    sigma.sort_unstable();
    sigma.dedup();
    if sigma.is_empty() {
        return Err(QtError::Shape("cannot subdivide the empty cone".into()));
    }
    if !fan
        .max_cones
        .iter()
        .any(|c| sigma.iter().all(|i| c.contains(i)))
    {
        return Err(QtError::Shape("the given rays do not span a cone of the fan".into()));
    }
    let srays: Vec<&[i64]> = sigma.iter().map(|&i| fan.rays[i].as_slice()).collect();
    if !in_cone(&srays, new_ray, true) {
        return Err(QtError::Shape(format!(
            "{:?} is not in the relative interior of the cone",
            new_ray
        )));
    }
    let prim = primitive(new_ray)?;
    if fan.ray_index(&prim).is_some() {
        return Err(QtError::Shape(format!(
            "{:?} is already a ray of the fan",
            prim
        )));
    }
    let mut rays = fan.rays.clone();
    rays.push(prim);
    let t = rays.len() - 1;
    let mut max_cones = Vec::new();
    for c in &fan.max_cones {
        if sigma.iter().all(|i| c.contains(i)) {
            for &w in &sigma {
                let mut nc: Vec<usize> = c.iter().copied().filter(|&i| i != w).collect();
                nc.push(t);
                max_cones.push(nc);
            }
        } else {
            max_cones.push(c.clone());
        }
    }
    Fan::new(fan.rank, rays, max_cones)
}

/// Smoothness report: a fan is smooth iff every maximal cone's rays form a
/// lattice basis. `offending` holds the first failing cone's rays and the
/// absolute determinant of its ray matrix.
#[derive(Clone, Debug)]
pub struct SmoothReport {
    pub smooth: bool,
    pub offending: Option<(Vec<Vec<i64>>, BigInt)>,
}

pub fn is_smooth(fan: &Fan) -> Result<SmoothReport> {
    for c in &fan.max_cones {
        if c.len() != fan.rank {
            return Err(QtError::Shape(format!(
                "cone {:?} is not full-dimensional; smoothness needs square ray matrices",
                c
            )));
        }
        let mat = IMat::from_rows_i64(&c.iter().map(|&i| fan.rays[i].clone()).collect_vec());
        let d = mat.det().abs();
        if d != big(1) {
            return Ok(SmoothReport {
                smooth: false,
                offending: Some((c.iter().map(|&i| fan.rays[i].clone()).collect(), d)),
            });
        }
    }
    Ok(SmoothReport {
        smooth: true,
        offending: None,
    })
}

/// Rational characteristic matrix of the weighted projective space with
/// weights (1,…,1,a): the column of −1s ending in −a, followed by the
/// identity.
pub fn wps_char_matrix(n: usize, a: i64) -> IMat {
    let rank = n + 1;
    let mut m = IMat::zeros(rank, rank + 1);
    for r in 0..rank {
        m.set(r, 0, big(-1));
        m.set(r, r + 1, big(1));
    }
    m.set(rank - 1, 0, big(-a));
    m
}

/// Recognize a rational characteristic matrix on Δ^{n+1} as a weighted
/// projective space with weights (1,…,1,a): the kernel circle's weight
/// vector is read off the maximal minors (row operations rescale all of
/// them together and column signs flip individual entries, so the multiset
/// of absolute values is a complete invariant).
pub fn recognize_wps(m: &IMat) -> Option<i64> {
    if m.cols != m.rows + 1 || m.rows == 0 {
        return None;
    }
    let mut weights = Vec::with_capacity(m.cols);
    for j in 0..m.cols {
        let keep: Vec<usize> = (0..m.cols).filter(|&c| c != j).collect();
        let d = m.select_cols(&keep).det().abs();
        if d.is_zero() {
            return None; // fails vertex independence: not rational characteristic
        }
        weights.push(d);
    }
    let g = weights
        .iter()
        .fold(BigInt::zero(), |acc, w| acc.gcd(w));
    let reduced: Vec<BigInt> = weights.iter().map(|w| w / &g).collect();
    let ones = reduced.iter().filter(|w| **w == big(1)).count();
    if ones == m.cols {
        return Some(1);
    }
    if ones == m.cols - 1 {
        let a = reduced.iter().find(|w| **w != big(1)).unwrap();
        return i64::try_from(a).ok();
    }
    None
}

/// The re-ordered characteristic matrix of the second summand in the
/// connected-sum presentation, with r twisted rows.
pub fn twisted_wps_char_matrix(n: usize, r: usize) -> IMat {
    assert!(r <= n, "twist count exceeds base dimension");
    let rank = n + 1;
    let mut m = IMat::zeros(rank, rank + 1);
    for i in 0..rank {
        m.set(i, 0, big(-1));
    }
    m.set(rank - 1, 0, big(-2));
    for i in 0..n {
        m.set(i, i + 1, big(1));
    }
    for i in 0..r {
        m.set(i, rank, big(-1));
    }
    m.set(rank - 1, rank, big(-1));
    m
}

/// Unimodular row operation exhibiting the twisted matrix as a weighted
/// projective matrix: returns (U, Λ″) with U·Λ″ equal to
/// `twisted_wps_char_matrix(n, r)` entry for entry.
pub fn twisted_wps_factorization(n: usize, r: usize) -> (IMat, IMat) {
    assert!(r <= n, "twist count exceeds base dimension");
    let rank = n + 1;
    let mut u = IMat::identity(rank);
    for i in 0..r {
        u.set(i, rank - 1, big(1));
    }
    let mut l = IMat::zeros(rank, rank + 1);
    for i in 0..r {
        l.set(i, 0, big(1));
    }
    for i in r..n {
        l.set(i, 0, big(-1));
    }
    l.set(rank - 1, 0, big(-2));
    for i in 0..n {
        l.set(i, i + 1, big(1));
    }
    l.set(rank - 1, rank, big(-1));
    (u, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumOrientation {
    /// Glue with reversed orientation on the second summand.
    Opposite,
    /// Glue with matching orientations.
    Same,
}

/// Characteristic matrix over Δ^n × Δ^1 of the connected sum of two
/// weighted projective spaces along their singular points.
pub fn connected_sum_char_matrix(
    n: usize,
    a: i64,
    orientation: SumOrientation,
) -> Result<CharMatrix> {
    if a < 1 {
        return Err(QtError::Unsupported(format!(
            "connected sum needs a positive weight, got a = {a}"
        )));
    }
    let rank = n + 1;
    let mut m = IMat::zeros(rank, rank + 2);
    for i in 0..rank {
        m.set(i, i, big(1));
        m.set(i, rank, big(-1));
    }
    m.set(rank - 1, rank, big(-a));
    match orientation {
        SumOrientation::Opposite => {
            m.set(rank - 1, rank + 1, big(1));
        }
        SumOrientation::Same => {
            if a != 1 && a != 2 {
                return Err(QtError::Unsupported(format!(
                    "same-orientation connected sum is smooth only for a in {{1, 2}}, got a = {a}"
                )));
            }
            m.set(0, rank + 1, big(-(2 / a)));
            m.set(rank - 1, rank + 1, big(-1));
        }
    }
    Ok(CharMatrix { n, m: 1, mat: m })
}

/// Cohomology groups of the lens space S^{2n+1}/μ_a, degree by degree:
/// Z at 0 and 2n+1, Z_a at even degrees in between, 0 elsewhere.
pub fn lens_cohomology(n: usize, a: i64) -> Result<Vec<String>> {
    if a < 1 {
        return Err(QtError::Unsupported(format!(
            "lens space needs a positive order, got a = {a}"
        )));
    }
    let mut groups = Vec::with_capacity(2 * n + 2);
    for i in 0..=2 * n + 1 {
        let g = if i == 0 || i == 2 * n + 1 {
            "Z".to_string()
        } else if i % 2 == 0 && a > 1 {
            format!("Z_{a}")
        } else {
            "0".to_string()
        };
        groups.push(g);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmat::{canonical_char_matrix, char_equiv, check_nonsingularity};
    use crate::ring::{QuasitoricPair, RingPresentation};

    fn ray_set(f: &Fan) -> std::collections::BTreeSet<Vec<i64>> {
        f.rays.iter().cloned().collect()
    }

    #[test]
    fn wps_fan_goldens() {
        let f = wps_fan(1, 2).unwrap();
        assert_eq!(f.rank, 2);
        assert_eq!(
            ray_set(&f),
            [vec![1, 0], vec![0, 1], vec![-1, -2]].into_iter().collect()
        );
        assert_eq!(f.max_cones.len(), 3);

        let p2 = wps_fan(1, 1).unwrap();
        assert_eq!(
            ray_set(&p2),
            [vec![1, 0], vec![0, 1], vec![-1, -1]].into_iter().collect()
        );
        assert_eq!(p2.max_cones.len(), 3);

        let f23 = wps_fan(2, 3).unwrap();
        assert_eq!(
            ray_set(&f23),
            [
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -3]
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(f23.max_cones.len(), 4);

        assert!(wps_fan(1, 0).is_err());
        assert!(wps_fan(2, -1).is_err());
    }

    #[test]
    fn gb_fan_goldens() {
        let f = gb_fan(1, 2).unwrap();
        assert_eq!(
            ray_set(&f),
            [vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, -2]]
                .into_iter()
                .collect()
        );
        let expected: std::collections::BTreeSet<Vec<Vec<i64>>> = [
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![-1, -2], vec![0, -1]],
            vec![vec![-1, -2], vec![0, 1]],
        ]
        .into_iter()
        .collect();
        assert_eq!(f.cone_ray_sets(), expected);

        let h1 = gb_fan(1, 1).unwrap();
        assert_eq!(
            ray_set(&h1),
            [vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, -1]]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn bundle_fans_are_smooth() {
        for n in 1..=3 {
            for a in 1..=5 {
                let rep = is_smooth(&gb_fan(n, a).unwrap()).unwrap();
                assert!(rep.smooth, "gb fan n={n} a={a} not smooth");
            }
        }
    }

    #[test]
    fn wps_fan_has_one_singular_cone() {
        let rep = is_smooth(&wps_fan(1, 2).unwrap()).unwrap();
        assert!(!rep.smooth);
        let (cone, det) = rep.offending.unwrap();
        let cone: std::collections::BTreeSet<Vec<i64>> = cone.into_iter().collect();
        assert_eq!(cone, [vec![1, 0], vec![-1, -2]].into_iter().collect());
        assert_eq!(det, big(2));

        for n in 1..=3usize {
            assert!(is_smooth(&wps_fan(n, 1).unwrap()).unwrap().smooth);
            for a in 2..=5 {
                let f = wps_fan(n, a).unwrap();
                let mut bad = 0;
                for c in &f.max_cones {
                    let mat = IMat::from_rows_i64(
                        &c.iter().map(|&i| f.rays[i].clone()).collect_vec(),
                    );
                    if mat.det().abs() != big(1) {
                        bad += 1;
                        assert_eq!(mat.det().abs(), big(a));
                        // the singular cone misses the last basis vector
                        assert!(!c.contains(&(n + 1)));
                    }
                }
                assert_eq!(bad, 1, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn star_subdivision_performs_the_blowup() {
        let f = wps_fan(1, 2).unwrap();
        let blown = star_subdivide(&f, &[vec![1, 0], vec![-1, -2]], &[0, -1]).unwrap();
        assert_eq!(blown, gb_fan(1, 2).unwrap());

        let f23 = wps_fan(2, 3).unwrap();
        let blown23 = star_subdivide(
            &f23,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, -3]],
            &[0, 0, -1],
        )
        .unwrap();
        assert_eq!(blown23, gb_fan(2, 3).unwrap());

        // the new ray scaled still lands on the primitive generator
        let scaled = star_subdivide(&f, &[vec![1, 0], vec![-1, -2]], &[0, -2]).unwrap();
        assert_eq!(scaled, gb_fan(1, 2).unwrap());
    }

    #[test]
    fn star_subdivision_rejects_bad_rays() {
        let f = wps_fan(1, 2).unwrap();
        // an existing ray is never interior
        assert!(star_subdivide(&f, &[vec![1, 0], vec![-1, -2]], &[1, 0]).is_err());
        // outside the chosen cone
        assert!(star_subdivide(&f, &[vec![1, 0], vec![-1, -2]], &[0, 1]).is_err());
        // not a cone of the fan
        assert!(star_subdivide(&f, &[vec![1, 0], vec![0, 2]], &[1, 1]).is_err());
    }

    #[test]
    fn blowup_identity_across_the_desk_range() {
        for n in 1..=3usize {
            for a in 1..=5i64 {
                let f = wps_fan(n, a).unwrap();
                // lattice identity: r0 + e_1 + … + e_n = -a·e_{n+1}
                let mut acc = f.rays[0].clone(); // r0 comes first by construction
                for i in 0..n {
                    let mut e = vec![0i64; n + 1];
                    e[i] = 1;
                    for (s, t) in acc.iter_mut().zip(&e) {
                        *s += t;
                    }
                }
                let mut target = vec![0i64; n + 1];
                target[n] = -a;
                assert_eq!(acc, target);
                if a > 1 {
                    let mut sing = vec![f.rays[0].clone()];
                    for i in 0..n {
                        let mut e = vec![0i64; n + 1];
                        e[i] = 1;
                        sing.push(e);
                    }
                    let blown = star_subdivide(&f, &sing, &target).unwrap();
                    assert_eq!(blown, gb_fan(n, a).unwrap(), "n={n} a={a}");
                }
            }
        }
    }

    #[test]
    fn star_subdivision_preserves_support() {
        let f = wps_fan(1, 3).unwrap();
        let blown = star_subdivide(&f, &[vec![1, 0], vec![-1, -3]], &[0, -1]).unwrap();
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                assert_eq!(
                    f.contains_point(&[x, y]),
                    blown.contains_point(&[x, y]),
                    "support changed at ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn recognize_wps_goldens() {
        for n in 1..=4usize {
            for a in 1..=5i64 {
                assert_eq!(recognize_wps(&wps_char_matrix(n, a)), Some(a));
            }
        }
        // mixed signs in the patterned matrix do not change the answer
        let mut m = wps_char_matrix(2, 3);
        m.set(0, 0, big(1));
        m.set(1, 2, big(-1));
        assert_eq!(recognize_wps(&m), Some(3));
        // a degenerate column kills vertex independence
        let mut z = wps_char_matrix(1, 2);
        z.set(0, 1, big(0));
        z.set(1, 1, big(0));
        assert_eq!(recognize_wps(&z), None);
        // generic non-wps characteristic data
        let hirz = IMat::from_rows_i64(&[vec![1, 0, -1], vec![0, 1, -3]]);
        assert_eq!(recognize_wps(&hirz), Some(3));
        let not_wps = IMat::from_rows_i64(&[vec![2, 0, -3], vec![0, 3, -2]]);
        assert_eq!(recognize_wps(&not_wps), None);
    }

    #[test]
    fn twisted_matrix_factors_and_recognizes() {
        for n in 1..=4usize {
            for r in 0..=n {
                let (u, l) = twisted_wps_factorization(n, r);
                assert_eq!(u.det().abs(), big(1));
                assert_eq!(u.mul(&l), twisted_wps_char_matrix(n, r), "n={n} r={r}");
                assert_eq!(recognize_wps(&twisted_wps_char_matrix(n, r)), Some(2));
            }
        }
    }

    #[test]
    fn connected_sum_matrices_match_the_pairs() {
        let opp = connected_sum_char_matrix(1, 2, SumOrientation::Opposite).unwrap();
        assert!(check_nonsingularity(&opp.mat, 1, 1).unwrap());
        let m20 = canonical_char_matrix(&QuasitoricPair::new(vec![2], vec![0]).unwrap());
        assert!(char_equiv(&opp, &m20).is_some());

        let opp1 = connected_sum_char_matrix(1, 1, SumOrientation::Opposite).unwrap();
        let m10 = canonical_char_matrix(&QuasitoricPair::new(vec![1], vec![0]).unwrap());
        assert!(char_equiv(&opp1, &m10).is_some());

        let same = connected_sum_char_matrix(3, 2, SumOrientation::Same).unwrap();
        assert!(check_nonsingularity(&same.mat, 3, 1).unwrap());
        let m21 = canonical_char_matrix(&QuasitoricPair::new(vec![2], vec![1, 0, 0]).unwrap());
        assert!(char_equiv(&same, &m21).is_some());

        let same1 = connected_sum_char_matrix(1, 1, SumOrientation::Same).unwrap();
        let m12 = canonical_char_matrix(&QuasitoricPair::new(vec![1], vec![2]).unwrap());
        assert!(char_equiv(&same1, &m12).is_some());

        assert!(connected_sum_char_matrix(2, 3, SumOrientation::Same).is_err());
        assert!(connected_sum_char_matrix(2, 0, SumOrientation::Opposite).is_err());
    }

    #[test]
    fn lens_cohomology_goldens() {
        assert_eq!(
            lens_cohomology(1, 2).unwrap(),
            vec!["Z", "0", "Z_2", "Z"]
        );
        assert_eq!(
            lens_cohomology(2, 3).unwrap(),
            vec!["Z", "0", "Z_3", "0", "Z_3", "Z"]
        );
        assert_eq!(
            lens_cohomology(2, 1).unwrap(),
            vec!["Z", "0", "0", "0", "0", "Z"]
        );
        assert!(lens_cohomology(1, 0).is_err());
    }

    #[test]
    fn connected_sum_betti_ranks() {
        // the sum presentations have rank 2 in middle even degrees, rank 1 at the ends
        for (a, b) in [(3i64, vec![0, 0, 0]), (2, vec![1, 0, 0])] {
            let ring = RingPresentation::new(QuasitoricPair::new(vec![a], b).unwrap());
            let n = 3;
            assert_eq!(ring.rank_of_degree(0).0, 1);
            assert_eq!(ring.rank_of_degree(n + 1).0, 1);
            for j in 1..=n {
                assert_eq!(ring.rank_of_degree(j).0, 2, "degree {j}");
            }
        }
    }

    #[test]
    fn fan_json_round_trip() {
        let f = gb_fan(2, 3).unwrap();
        let v = f.to_json();
        assert_eq!(Fan::from_json(&v).unwrap(), f);
        assert!(Fan::from_json(&serde_json::json!({"rank": 2})).is_err());
    }

    #[test]
    fn fan_validation_catches_bad_input() {
        // non-primitive ray
        assert!(Fan::new(2, vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]).is_err());
        // dependent rays in a cone
        assert!(Fan::new(2, vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]).is_err());
        // overlapping cones: (1,1) interior to the first quadrant cone
        assert!(Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![2, 3]]
        )
        .is_err());
    }
}
