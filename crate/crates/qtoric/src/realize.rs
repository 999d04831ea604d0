//! Witness maps on the sphere product realizing cohomology automorphisms:
//! coordinate permutations with conjugation flags, torus-automorphism
//! verification of orbit preservation, induced generator matrices, and a
//! planner that composes a classification homeomorphism with an
//! automorphism word.

use crate::charmat::{k_action_weights, KActionWeights};
use crate::classify::{normal_form, NormalForm};
use crate::error::{QtError, Result};
use crate::ring::{QuasitoricPair, RingPresentation};
use crate::ring_iso::{find_isomorphisms, is_isomorphism, RingMap};

/// Self-map of S^{2n+1} x S^{2m+1} built from coordinate permutations and
/// per-coordinate complex conjugation. Output slot c carries
/// conj^{flag(c)}(input_{perm(c)}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereMap {
    pub perm_w: Vec<usize>,
    pub perm_z: Vec<usize>,
    pub conj_w: Vec<bool>,
    pub conj_z: Vec<bool>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl SphereMap {
    pub fn new(
        perm_w: Vec<usize>,
        perm_z: Vec<usize>,
        conj_w: Vec<bool>,
        conj_z: Vec<bool>,
    ) -> Result<SphereMap> {
        if perm_w.len() != conj_w.len() || perm_z.len() != conj_z.len() {
            return Err(QtError::Shape(
                "permutation and conjugation data must have equal lengths".into(),
            ));
        }
        if !is_permutation(&perm_w) || !is_permutation(&perm_z) {
            return Err(QtError::Shape("coordinate maps must be bijections".into()));
        }
        Ok(SphereMap {
            perm_w,
            perm_z,
            conj_w,
            conj_z,
        })
    }

    pub fn identity(n: usize, m: usize) -> SphereMap {
        SphereMap {
            perm_w: (0..n + 1).collect(),
            perm_z: (0..m + 1).collect(),
            conj_w: vec![false; n + 1],
            conj_z: vec![false; m + 1],
        }
    }

    /// self ∘ other: `other` acts on the point first.
    pub fn compose(&self, other: &SphereMap) -> SphereMap {
        let perm = |mine: &[usize], theirs: &[usize]| -> Vec<usize> {
            (0..mine.len()).map(|c| theirs[mine[c]]).collect()
        };
        let flags = |mine_f: &[bool], mine_p: &[usize], theirs_f: &[bool]| -> Vec<bool> {
            (0..mine_f.len())
                .map(|c| mine_f[c] ^ theirs_f[mine_p[c]])
                .collect()
        };
        SphereMap {
            perm_w: perm(&self.perm_w, &other.perm_w),
            perm_z: perm(&self.perm_z, &other.perm_z),
            conj_w: flags(&self.conj_w, &self.perm_w, &other.conj_w),
            conj_z: flags(&self.conj_z, &self.perm_z, &other.conj_z),
        }
    }
}

/// Torus automorphism certifying orbit preservation, together with the
/// induced action on the degree-two generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedWitness {
    pub theta: [[i64; 2]; 2],
    pub induced: RingMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardMapKind {
    F,
    G,
    H,
}

/// Block shape (s, r): all nonzero entries of a equal 2 and come in any
/// positions (the ring only sees the multiset), likewise the 1s of b.
fn block_shape(pair: &QuasitoricPair) -> Option<(usize, usize)> {
    let s = pair.a().iter().filter(|&&x| x == 2).count();
    let r = pair.b().iter().filter(|&&x| x == 1).count();
    let a_ok = pair.a().iter().all(|&x| x == 0 || x == 2);
    let b_ok = pair.b().iter().all(|&x| x == 0 || x == 1);
    if a_ok && b_ok && s >= 1 && r >= 1 {
        Some((s, r))
    } else {
        None
    }
}

/// Same block pattern with the roles of the two factors exchanged: twists of
/// 2 on the b-side against twists of 1 on the a-side.
fn swapped_block_shape(pair: &QuasitoricPair) -> Option<(usize, usize)> {
    let s = pair.b().iter().filter(|&&x| x == 2).count();
    let r = pair.a().iter().filter(|&&x| x == 1).count();
    let a_ok = pair.a().iter().all(|&x| x == 0 || x == 1);
    let b_ok = pair.b().iter().all(|&x| x == 0 || x == 2);
    if a_ok && b_ok && s >= 1 && r >= 1 {
        Some((s, r))
    } else {
        None
    }
}

/// The displayed maps: f conjugates everything; g fixes w_1..w_r, conjugates
/// the rest, and cyclically shifts z by s; h shifts w by r and conjugates
/// z_{s+1}..z_{m+1}.
pub fn standard_map(kind: StandardMapKind, pair: &QuasitoricPair) -> Result<SphereMap> {
    let (n, m) = (pair.n(), pair.m());
    if kind == StandardMapKind::F {
        return Ok(SphereMap {
            perm_w: (0..n + 1).collect(),
            perm_z: (0..m + 1).collect(),
            conj_w: vec![true; n + 1],
            conj_z: vec![true; m + 1],
        });
    }
    let Some((s, r)) = block_shape(pair) else {
        return Err(QtError::Unsupported(format!(
            "{} needs a pair with entries 2 against 1, got {}",
            if kind == StandardMapKind::G { "g" } else { "h" },
            pair
        )));
    };
    match kind {
        StandardMapKind::G => {
            if 2 * s != m + 1 {
                return Err(QtError::Unsupported(format!(
                    "g needs s = (m+1)/2; got s = {s} with m = {m}"
                )));
            }
            let mut conj_w = vec![true; n + 1];
            for f in conj_w.iter_mut().take(r) {
                *f = false;
            }
            Ok(SphereMap {
                perm_w: (0..n + 1).collect(),
                perm_z: (0..m + 1).map(|c| (c + s) % (m + 1)).collect(),
                conj_w,
                conj_z: vec![false; m + 1],
            })
        }
        StandardMapKind::H => {
            if 2 * r != n + 1 {
                return Err(QtError::Unsupported(format!(
                    "h needs r = (n+1)/2; got r = {r} with n = {n}"
                )));
            }
            let mut conj_z = vec![true; m + 1];
            for f in conj_z.iter_mut().take(s) {
                *f = false;
            }
            Ok(SphereMap {
                perm_w: (0..n + 1).map(|c| (c + r) % (n + 1)).collect(),
                perm_z: (0..m + 1).collect(),
                conj_w: vec![false; n + 1],
                conj_z,
            })
        }
        StandardMapKind::F => unreachable!(),
    }
}

/// Solve for a torus automorphism θ with det ±1 such that pulling each
/// coordinate weight through the map (permute, negate where conjugated)
/// equals θ applied to it. The last w and z coordinates carry the unit
/// weights, so θ is pinned by those two slots and then checked everywhere.
pub fn preserves_orbits(map: &SphereMap, weights: &KActionWeights) -> Option<InducedWitness> {
    let (n, m) = (weights.n, weights.m);
    if map.perm_w.len() != n + 1 || map.perm_z.len() != m + 1 {
        return None;
    }
    let weight = |global: usize| (weights.t1[global], weights.t2[global]);
    let sign = |c: bool| if c { -1i64 } else { 1 };
    // columns of θᵀ = rows of θ
    let (w_in, w_sig) = (map.perm_w[n], sign(map.conj_w[n]));
    let (z_in, z_sig) = (map.perm_z[m], sign(map.conj_z[m]));
    let (p, q) = weight(w_in);
    let row1 = [w_sig * p, w_sig * q];
    let (p, q) = weight(n + 1 + z_in);
    let row2 = [z_sig * p, z_sig * q];
    let theta = [row1, row2];
    let det = theta[0][0] * theta[1][1] - theta[0][1] * theta[1][0];
    if det.abs() != 1 {
        return None;
    }
    let ok = |slot: usize, image: usize, conj: bool| -> bool {
        let (w1, w2) = weight(slot);
        let (u1, u2) = weight(image);
        let s = sign(conj);
        theta[0][0] * w1 + theta[1][0] * w2 == s * u1
            && theta[0][1] * w1 + theta[1][1] * w2 == s * u2
    };
    for c in 0..=n {
        if !ok(c, map.perm_w[c], map.conj_w[c]) {
            return None;
        }
    }
    for c in 0..=m {
        if !ok(n + 1 + c, n + 1 + map.perm_z[c], map.conj_z[c]) {
            return None;
        }
    }
    Some(InducedWitness {
        theta,
        induced: RingMap(theta),
    })
}

/// Induced action on (x1, x2), checked to be an automorphism of the ring.
pub fn induced_matrix(map: &SphereMap, pair: &QuasitoricPair) -> Result<RingMap> {
    let witness = preserves_orbits(map, &k_action_weights(pair)).ok_or_else(|| {
        QtError::Unsupported(format!("the map does not preserve the torus orbits on {pair}"))
    })?;
    let ring = RingPresentation::new(pair.clone());
    if !is_isomorphism(&witness.induced, &ring, &ring) {
        return Err(QtError::Unsupported(format!(
            "induced matrix {:?} is not a ring automorphism of {pair}",
            witness.induced
        )));
    }
    Ok(witness.induced)
}

/// Reflection-sum generator tags with their generator matrices: the
/// conjugation sum, the half-twist involution, and the summand swap.
pub const TAG_TYPE1: &str = "Type1";
pub const TAG_TYPE2: &str = "Type2";
pub const TAG_TYPE3: &str = "Type3";

fn swap_conj(m: &RingMap) -> RingMap {
    let [[a, b], [c, d]] = m.0;
    RingMap([[d, c], [b, a]])
}

/// Entries all zero or equal to val (any multiplicity, zeros allowed).
fn only_entries(v: &[i64], val: i64) -> bool {
    v.iter().all(|&x| x == 0 || x == val)
}

/// Connected-sum shape: one factor is a segment carrying the weight 1 or 2,
/// and the other vector holds only zeros and complementary twists. Returns
/// the generator tags with matrices, already oriented to the pair's own
/// (x1, x2) basis.
fn sum_generators(pair: &QuasitoricPair) -> Option<Vec<(String, RingMap)>> {
    let (oriented_a, swapped) = if pair.m() == 1 && matches!(pair.a()[0], 1 | 2) {
        let a = pair.a()[0];
        if !only_entries(pair.b(), 2 / a) {
            return None;
        }
        (a, false)
    } else if pair.n() == 1 && matches!(pair.b()[0], 1 | 2) {
        let a = pair.b()[0];
        if !only_entries(pair.a(), 2 / a) {
            return None;
        }
        (a, true)
    } else {
        return None;
    };
    let a = oriented_a;
    let mats = [
        (TAG_TYPE1, RingMap([[-1, 0], [0, -1]])),
        (TAG_TYPE2, RingMap([[-1, -(2 / a)], [0, 1]])),
        (TAG_TYPE3, RingMap([[-1, 0], [a, 1]])),
    ];
    Some(
        mats.into_iter()
            .map(|(t, m)| (t.to_string(), if swapped { swap_conj(&m) } else { m }))
            .collect(),
    )
}

/// The sphere-map generators applicable to the pair, by the block parities.
/// For the swapped orientation the maps act on the factor-exchanged twin;
/// the swap x1 <-> x2 is a ring isomorphism carrying their induced matrices
/// onto this pair's basis.
fn sphere_generators(pair: &QuasitoricPair) -> Result<Vec<(String, RingMap)>> {
    let mut gens = vec![(
        "f".to_string(),
        induced_matrix(&standard_map(StandardMapKind::F, pair)?, pair)?,
    )];
    if let Some((s, r)) = block_shape(pair) {
        // maps are built on the packed representative; the ring only sees
        // elementary symmetric functions, so the matrices transfer verbatim
        let mut a = vec![2i64; s];
        a.resize(pair.m(), 0);
        let mut b = vec![1i64; r];
        b.resize(pair.n(), 0);
        let packed = QuasitoricPair::new(a, b)?;
        if 2 * s == pair.m() + 1 {
            gens.push((
                "g".to_string(),
                induced_matrix(&standard_map(StandardMapKind::G, &packed)?, &packed)?,
            ));
        }
        if 2 * r == pair.n() + 1 {
            gens.push((
                "h".to_string(),
                induced_matrix(&standard_map(StandardMapKind::H, &packed)?, &packed)?,
            ));
        }
    } else if let Some((s, r)) = swapped_block_shape(pair) {
        let mut a = vec![2i64; s];
        a.resize(pair.n(), 0);
        let mut b = vec![1i64; r];
        b.resize(pair.m(), 0);
        let twin = QuasitoricPair::new(a, b)?;
        if 2 * s == pair.n() + 1 {
            gens.push((
                "g".to_string(),
                swap_conj(&induced_matrix(&standard_map(StandardMapKind::G, &twin)?, &twin)?),
            ));
        }
        if 2 * r == pair.m() + 1 {
            gens.push((
                "h".to_string(),
                swap_conj(&induced_matrix(&standard_map(StandardMapKind::H, &twin)?, &twin)?),
            ));
        }
    }
    Ok(gens)
}

/// Every generator applicable to the pair — reflection-sum involutions where
/// the shape admits them, sphere maps by block parity — kept only when its
/// matrix actually is an automorphism of the pair's own ring.
fn generator_table(pair: &QuasitoricPair) -> Result<Vec<(String, RingMap)>> {
    let mut gens = sum_generators(pair).unwrap_or_default();
    gens.extend(sphere_generators(pair)?);
    let ring = RingPresentation::new(pair.clone());
    gens.retain(|(_, m)| is_isomorphism(m, &ring, &ring));
    Ok(gens)
}

/// Resolve a generator word back to its induced-matrix product, using the
/// same generator table the search draws from. Unknown names error.
pub fn word_product(pair: &QuasitoricPair, word: &[String]) -> Result<RingMap> {
    let gens = generator_table(pair)?;
    let mut product = RingMap::identity();
    for name in word {
        let mat = gens
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| {
                QtError::Unsupported(format!("no generator named {name} applies to {pair}"))
            })?;
        product = product.then(mat);
    }
    Ok(product)
}

/// Search words of length ≤ 4 over the applicable generators whose
/// induced-matrix product (left to right) equals the target.
pub fn realize_automorphism(
    pair: &QuasitoricPair,
    target: &RingMap,
) -> Result<Option<Vec<String>>> {
    let ring = RingPresentation::new(pair.clone());
    if !is_isomorphism(target, &ring, &ring) {
        return Err(QtError::Unsupported(format!(
            "target {:?} is not a ring automorphism of {pair}",
            target
        )));
    }
    let gens = generator_table(pair)?;
    let mut frontier: Vec<(Vec<String>, RingMap)> = vec![(Vec::new(), RingMap::identity())];
    for _ in 0..=4usize {
        for (word, product) in &frontier {
            if product == target {
                return Ok(Some(word.clone()));
            }
        }
        let mut next = Vec::with_capacity(frontier.len() * gens.len());
        for (word, product) in &frontier {
            if word.len() == 4 {
                continue;
            }
            for (name, mat) in &gens {
                let mut w = word.clone();
                w.push(name.clone());
                next.push((w, product.then(mat)));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// A classification homeomorphism composed with an automorphism word:
/// the word's product, right-multiplied by the reference isomorphism's
/// inverse, recovers the requested isomorphism.
#[derive(Clone, Debug)]
pub struct RealizationPlan {
    pub target_form: NormalForm,
    pub reference: RingMap,
    pub word: Vec<String>,
    pub product: RingMap,
}

pub fn plan_realization(
    p1: &QuasitoricPair,
    p2: &QuasitoricPair,
    iso: &RingMap,
) -> Result<RealizationPlan> {
    let r1 = RingPresentation::new(p1.clone());
    let r2 = RingPresentation::new(p2.clone());
    if !is_isomorphism(iso, &r1, &r2) {
        return Err(QtError::Unsupported(format!(
            "{:?} is not a ring isomorphism from {p1} to {p2}",
            iso
        )));
    }
    let form = normal_form(p1);
    let mut references = Vec::new();
    if p1.a() == p2.a() && p1.b() == p2.b() {
        references.push(RingMap::identity());
    }
    references.extend(find_isomorphisms(&r2, &r1));
    for reference in references {
        if !is_isomorphism(&reference, &r2, &r1) {
            continue;
        }
        let composed = iso.then(&reference);
        if let Some(word) = realize_automorphism(p1, &composed)? {
            return Ok(RealizationPlan {
                target_form: form,
                reference,
                word,
                product: composed,
            });
        }
    }
    Err(QtError::Unsupported(format!(
        "no generator word composes with a classification isomorphism to reach {:?}",
        iso
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_iso::enumerate_automorphisms;

    fn pair(a: &[i64], b: &[i64]) -> QuasitoricPair {
        QuasitoricPair::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn standard_map_goldens() {
        let p = pair(&[2, 2, 0], &[1, 0]); // n=2, m=3, s=2, r=1
        let f = standard_map(StandardMapKind::F, &p).unwrap();
        assert_eq!(f.perm_w, vec![0, 1, 2]);
        assert_eq!(f.perm_z, vec![0, 1, 2, 3]);
        assert!(f.conj_w.iter().all(|&c| c) && f.conj_z.iter().all(|&c| c));

        let g = standard_map(StandardMapKind::G, &p).unwrap();
        assert_eq!(g.conj_w, vec![false, true, true]);
        assert_eq!(g.perm_z, vec![2, 3, 0, 1]);
        assert_eq!(g.perm_w, vec![0, 1, 2]);
        assert!(g.conj_z.iter().all(|&c| !c));

        let q = pair(&[2, 0], &[1, 1, 0]); // n=3, m=2, s=1, r=2
        let h = standard_map(StandardMapKind::H, &q).unwrap();
        assert_eq!(h.perm_w, vec![2, 3, 0, 1]);
        assert_eq!(h.conj_z, vec![false, true, true]);
    }

    #[test]
    fn standard_map_parity_errors() {
        let p = pair(&[2, 0, 0], &[1, 0]); // s=1, m=3: 2s != m+1
        let err = standard_map(StandardMapKind::G, &p).unwrap_err();
        assert!(err.to_string().contains("s = (m+1)/2"));
        let err = standard_map(StandardMapKind::H, &p).unwrap_err();
        assert!(err.to_string().contains("r = (n+1)/2"));
        // not a 2-against-1 pair at all
        let gb = pair(&[3], &[0, 0]);
        assert!(standard_map(StandardMapKind::G, &gb).is_err());
        assert!(standard_map(StandardMapKind::F, &gb).is_ok());
    }

    #[test]
    fn orbit_preservation_goldens() {
        let p = pair(&[2, 2, 0], &[1, 0]);
        let w = k_action_weights(&p);
        let id = SphereMap::identity(p.n(), p.m());
        let wit = preserves_orbits(&id, &w).unwrap();
        assert_eq!(wit.theta, [[1, 0], [0, 1]]);

        let f = standard_map(StandardMapKind::F, &p).unwrap();
        let wit = preserves_orbits(&f, &w).unwrap();
        assert_eq!(wit.theta, [[-1, 0], [0, -1]]);

        let g = standard_map(StandardMapKind::G, &p).unwrap();
        let wit = preserves_orbits(&g, &w).unwrap();
        assert_eq!(wit.induced, RingMap([[-1, 0], [2, 1]]));

        // conjugating a single twisted coordinate breaks the orbits
        let bad = SphereMap::new(
            vec![0, 1, 2],
            vec![0, 1, 2, 3],
            vec![true, false, false],
            vec![false; 4],
        )
        .unwrap();
        assert!(preserves_orbits(&bad, &w).is_none());
    }

    #[test]
    fn conjugation_gives_negative_identity_on_every_pair() {
        for n in 1..=2usize {
            for m in 1..=2usize {
                for p in crate::charmat::enumerate_pairs(n, m, 2) {
                    let f = standard_map(StandardMapKind::F, &p).unwrap();
                    let wit = preserves_orbits(&f, &k_action_weights(&p)).unwrap();
                    assert_eq!(wit.theta, [[-1, 0], [0, -1]], "pair {p}");
                }
            }
        }
    }

    #[test]
    fn induced_matrix_goldens() {
        let p = pair(&[2, 2, 0], &[1, 0]);
        let f = standard_map(StandardMapKind::F, &p).unwrap();
        assert_eq!(induced_matrix(&f, &p).unwrap(), RingMap([[-1, 0], [0, -1]]));
        let g = standard_map(StandardMapKind::G, &p).unwrap();
        assert_eq!(induced_matrix(&g, &p).unwrap(), RingMap([[-1, 0], [2, 1]]));

        let q = pair(&[2, 0], &[1, 1, 0]);
        let h = standard_map(StandardMapKind::H, &q).unwrap();
        assert_eq!(induced_matrix(&h, &q).unwrap(), RingMap([[1, 1], [0, -1]]));
    }

    #[test]
    fn induced_respects_composition() {
        let p = pair(&[2], &[1]); // n=m=1: every generator applies
        let maps = [
            standard_map(StandardMapKind::F, &p).unwrap(),
            standard_map(StandardMapKind::G, &p).unwrap(),
            standard_map(StandardMapKind::H, &p).unwrap(),
        ];
        for u in &maps {
            for v in &maps {
                let comp = u.compose(v);
                let lhs = induced_matrix(&comp, &p).unwrap();
                let rhs = induced_matrix(u, &p)
                    .unwrap()
                    .then(&induced_matrix(v, &p).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn realize_words_on_block_pairs() {
        let p = pair(&[2, 2, 0], &[1, 0]); // case II shape
        assert_eq!(
            realize_automorphism(&p, &RingMap::identity()).unwrap(),
            Some(vec![])
        );
        assert_eq!(
            realize_automorphism(&p, &RingMap([[-1, 0], [2, 1]])).unwrap(),
            Some(vec!["g".to_string()])
        );
        assert_eq!(
            realize_automorphism(&p, &RingMap([[1, 0], [-2, -1]])).unwrap(),
            Some(vec!["f".to_string(), "g".to_string()])
        );
        assert!(realize_automorphism(&p, &RingMap([[3, 0], [0, 1]])).is_err());
    }

    #[test]
    fn realize_words_on_sum_pairs() {
        let even = pair(&[2], &[0, 0]); // n=2: four automorphisms
        assert_eq!(
            realize_automorphism(&even, &RingMap([[-1, 0], [2, 1]])).unwrap(),
            Some(vec![TAG_TYPE3.to_string()])
        );
        assert_eq!(
            realize_automorphism(&even, &RingMap([[1, 0], [-2, -1]])).unwrap(),
            Some(vec![TAG_TYPE1.to_string(), TAG_TYPE3.to_string()])
        );

        let odd = pair(&[2], &[1, 0, 0]); // n=3: order-eight group
        assert_eq!(
            realize_automorphism(&odd, &RingMap([[1, 1], [0, -1]])).unwrap(),
            Some(vec![TAG_TYPE1.to_string(), TAG_TYPE2.to_string()])
        );
        assert_eq!(
            realize_automorphism(&odd, &RingMap([[-1, -1], [0, 1]])).unwrap(),
            Some(vec![TAG_TYPE2.to_string()])
        );
    }

    #[test]
    fn realize_words_on_swapped_sum_pairs() {
        // segment as the first factor: same sums in the transposed basis
        let p = pair(&[2, 0, 0], &[1]); // n=1, m=3
        let auts = enumerate_automorphisms(&RingPresentation::new(p.clone()));
        for target in &auts.elements {
            let word = realize_automorphism(&p, target).unwrap();
            assert!(word.is_some(), "unreached automorphism {:?}", target);
        }
    }

    #[test]
    fn words_cover_the_enumerated_groups() {
        // every enumerated automorphism of the packed block pairs is a word
        for p in [
            pair(&[2, 0], &[1, 0]),       // case I
            pair(&[2, 2, 0], &[1, 0]),    // case II
            pair(&[2, 0], &[1, 1, 0]),    // case III
            pair(&[2, 2, 0], &[1, 1, 0]), // case IV
            pair(&[2], &[0, 0]),          // even sum
            pair(&[2], &[1, 0, 0]),       // odd sum
        ] {
            let ring = RingPresentation::new(p.clone());
            for target in &enumerate_automorphisms(&ring).elements {
                let word = realize_automorphism(&p, target).unwrap();
                let Some(word) = word else {
                    panic!("no word for {:?} on {p}", target);
                };
                assert!(word.len() <= 4);
            }
        }
    }

    #[test]
    fn plans_compose_with_classification() {
        let p = pair(&[2, 2, 0], &[1, 0]);
        let plan = plan_realization(&p, &p, &RingMap::identity()).unwrap();
        assert!(plan.word.is_empty());
        assert_eq!(plan.reference, RingMap::identity());

        let plan = plan_realization(&p, &p, &RingMap([[-1, 0], [2, 1]])).unwrap();
        assert_eq!(plan.word, vec!["g".to_string()]);
        assert_eq!(
            plan.product,
            RingMap([[-1, 0], [2, 1]]).then(&plan.reference)
        );

        // across distinct twists of the same bundle class
        let h1 = pair(&[1], &[0]);
        let h3 = pair(&[3], &[0]);
        let iso = RingMap([[1, 0], [1, 1]]);
        let plan = plan_realization(&h1, &h3, &iso).unwrap();
        assert_eq!(plan.product, iso.then(&plan.reference));
        assert_eq!(plan.target_form, normal_form(&h3));

        // a non-isomorphism is rejected up front
        assert!(plan_realization(&h1, &h3, &RingMap([[1, 0], [0, 1]])).is_err());
    }
}
