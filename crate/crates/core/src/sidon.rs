//! Sidon-set verification and related structure.
//!
//! Everything goes through one difference tally: a flat array over the group
//! counting ordered pairs `(x, y)`, `x != y`, by `x - y`. A set is Sidon iff no
//! nonzero difference is hit twice. The tally also gives the additive energy
//! and the T-set `G \ (S - S) ∪ {0}`.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianGroup, GroupElement};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SidonReport {
    #[serde(rename = "sidon")]
    pub is_sidon: bool,
    pub size: usize,
    /// A nontrivial additive quadruple `x + y = z + w`, as `[x, y, z, w]`.
    pub witness: Option<Vec<GroupElement>>,
    pub t_set: Vec<GroupElement>,
    pub energy: u64,
    pub density_ratio: f64,
}

/// Result of the difference tally on element indices.
#[derive(Debug, Clone)]
pub struct Tally {
    pub is_sidon: bool,
    pub witness: Option<[usize; 4]>,
    pub t_set: Vec<usize>,
    pub energy: u64,
    pub size: usize,
}

/// Sorts and removes duplicates.
pub fn normalize_set(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

fn canonical_quadruple(x: usize, y: usize, z: usize, w: usize) -> [usize; 4] {
    let a = (x.min(y), x.max(y));
    let b = (z.min(w), z.max(w));
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    [first.0, first.1, second.0, second.1]
}

/// Full tally on element indices. `set` must be sorted and duplicate-free.
pub fn tally(group: &AbelianGroup, set: &[usize]) -> Tally {
    let n = group.len();
    let mut count = vec![0u32; n];
    let mut first = vec![(u32::MAX, u32::MAX); n];
    let mut witness = None;
    for &x in set {
        for &y in set {
            if x == y {
                continue;
            }
            let d = group.sub(x, y);
            if count[d] == 0 {
                first[d] = (x as u32, y as u32);
            } else if witness.is_none() {
                let (a, b) = (first[d].0 as usize, first[d].1 as usize);
                // a - b = x - y  =>  a + y = x + b
                witness = Some(canonical_quadruple(a, y, x, b));
            }
            count[d] += 1;
        }
    }
    let s = set.len() as u64;
    let energy = s * s + count.iter().map(|&c| c as u64 * c as u64).sum::<u64>();
    let t_set = (0..n).filter(|&g| g == 0 || count[g] == 0).collect();
    Tally { is_sidon: witness.is_none(), witness, t_set, energy, size: set.len() }
}

/// Early-exit Sidon test on element indices.
pub fn check_sidon(group: &AbelianGroup, set: &[usize]) -> bool {
    let n = group.len();
    let mut used = vec![false; n];
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[..i] {
            if x == y {
                return false;
            }
            let d = group.sub(x, y);
            let e = group.neg(d);
            if used[d] || used[e] || d == e {
                return false;
            }
            used[d] = true;
            used[e] = true;
        }
    }
    true
}

/// Verifies `set` (element indices; duplicates are ignored).
pub fn is_sidon(group: &AbelianGroup, set: &[usize]) -> SidonReport {
    let set = normalize_set(set);
    let t = tally(group, &set);
    report_from_tally(group, &t)
}

pub fn report_from_tally(group: &AbelianGroup, t: &Tally) -> SidonReport {
    SidonReport {
        is_sidon: t.is_sidon,
        size: t.size,
        witness: t.witness.map(|w| w.iter().map(|&x| group.element(x)).collect()),
        t_set: t.t_set.iter().map(|&x| group.element(x)).collect(),
        energy: t.energy,
        density_ratio: t.size as f64 / (group.order() as f64).sqrt(),
    }
}

/// Same as [`is_sidon`] for coordinate vectors.
pub fn is_sidon_elements(group: &AbelianGroup, set: &[GroupElement]) -> Result<SidonReport> {
    let idx = set.iter().map(|e| group.index_of(e)).collect::<Result<Vec<_>>>()?;
    Ok(is_sidon(group, &idx))
}

/// Largest `s` with `s (s - 1) <= n - 1`.
pub fn counting_bound(n: u64) -> u64 {
    assert!(n >= 1, "group order must be positive");
    let mut s = ((n as f64).sqrt() as u64).max(1);
    while s > 1 && s * (s - 1) > n - 1 {
        s -= 1;
    }
    while (s + 1) * s <= n - 1 {
        s += 1;
    }
    s
}

pub fn is_perfect_difference_set(group: &AbelianGroup, set: &[usize]) -> bool {
    let t = tally(group, &normalize_set(set));
    t.is_sidon && t.t_set == [0]
}

/// Nonzero elements of `G \ (S - S)` together with `0`.
pub fn t_set(group: &AbelianGroup, set: &[usize]) -> Vec<usize> {
    tally(group, &normalize_set(set)).t_set
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "subgroups", rename_all = "snake_case")]
pub enum Cover {
    Found(Vec<Vec<usize>>),
    /// No cover with at most `k_max` subgroups exists.
    Impossible,
    /// Greedy search failed on a large `T`; nothing is claimed.
    Inconclusive,
}

const EXHAUSTIVE_COVER_LIMIT: usize = 64;

/// Looks for at most `k_max` subgroups of `G`, each contained in `T`, whose
/// union is `T`.
pub fn subgroup_union_cover(group: &AbelianGroup, t: &[usize], k_max: usize) -> Result<Cover> {
    let t = normalize_set(t);
    if t.first() != Some(&0) {
        return Err(Error::precondition("T must contain 0"));
    }
    if k_max == 0 {
        return Err(Error::precondition("k_max must be at least 1"));
    }
    let mut in_t = vec![false; group.len()];
    for &x in &t {
        in_t[x] = true;
    }
    let inside = |h: &[usize]| h.iter().all(|&x| in_t[x]);
    for &x in &t {
        if !inside(&group.subgroup_generated(&[x])) {
            return Ok(Cover::Impossible);
        }
    }
    if t.len() <= EXHAUSTIVE_COVER_LIMIT {
        return Ok(exhaustive_cover(group, &t, k_max, &inside));
    }
    // greedy: grow a maximal subgroup around each uncovered element
    let mut covered = vec![false; group.len()];
    let mut parts = Vec::new();
    while let Some(&seed) = t.iter().find(|&&x| !covered[x]) {
        if parts.len() == k_max {
            return Ok(Cover::Inconclusive);
        }
        let mut gens = vec![seed];
        let mut h = group.subgroup_generated(&gens);
        for &x in &t {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            gens.push(x);
            let h2 = group.subgroup_generated(&gens);
            if inside(&h2) {
                h = h2;
            } else {
                gens.pop();
            }
        }
        for &x in &h {
            covered[x] = true;
        }
        parts.push(h);
    }
    Ok(Cover::Found(parts))
}

fn exhaustive_cover(
    group: &AbelianGroup,
    t: &[usize],
    k_max: usize,
    inside: &dyn Fn(&[usize]) -> bool,
) -> Cover {
    let pos = |x: usize| t.binary_search(&x).unwrap();
    let mask_of = |h: &[usize]| h.iter().fold(0u64, |m, &x| m | 1u64 << pos(x));
    // all subgroups contained in T, as bitmasks over positions in T
    let mut family: Vec<(u64, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for &x in t {
        let h = group.subgroup_generated(&[x]);
        let m = mask_of(&h);
        if seen.insert(m) {
            family.push((m, vec![x]));
        }
    }
    let mut i = 0;
    while i < family.len() {
        let (m, gens) = family[i].clone();
        for (j, &x) in t.iter().enumerate() {
            if m >> j & 1 == 1 {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let h = group.subgroup_generated(&g2);
            if !inside(&h) {
                continue;
            }
            let m2 = mask_of(&h);
            if seen.insert(m2) {
                family.push((m2, g2));
            }
        }
        i += 1;
    }
    let maximal: Vec<u64> = family
        .iter()
        .map(|(m, _)| *m)
        .filter(|&m| !family.iter().any(|(o, _)| *o != m && o & m == m))
        .collect();
    let full = if t.len() == 64 { u64::MAX } else { (1u64 << t.len()) - 1 };
    let mut best: Option<Vec<u64>> = None;
    let mut chosen = Vec::new();
    fn dfs(covered: u64, full: u64, maximal: &[u64], k_max: usize, chosen: &mut Vec<u64>, best: &mut Option<Vec<u64>>) {
        if covered == full {
            if best.as_ref().map_or(true, |b| chosen.len() < b.len()) {
                *best = Some(chosen.clone());
            }
            return;
        }
        let limit = best.as_ref().map_or(k_max, |b| b.len() - 1);
        if chosen.len() >= limit {
            return;
        }
        let missing = (!covered & full).trailing_zeros();
        for &m in maximal {
            if m >> missing & 1 == 1 {
                chosen.push(m);
                dfs(covered | m, full, maximal, k_max, chosen, best);
                chosen.pop();
            }
        }
    }
    dfs(0, full, &maximal, k_max, &mut chosen, &mut best);
    match best {
        Some(masks) => Cover::Found(
            masks
                .into_iter()
                .map(|m| (0..t.len()).filter(|&j| m >> j & 1 == 1).map(|j| t[j]).collect())
                .collect(),
        ),
        None => Cover::Impossible,
    }
}

/// `x -> φ(x) + c`, with `φ` given by the images of the canonical
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub generator_images: Vec<usize>,
    pub translation: usize,
}

impl AffineMap {
    pub fn identity(group: &AbelianGroup) -> Self {
        AffineMap { generator_images: (0..group.rank()).map(|i| group.basis_element(i)).collect(), translation: 0 }
    }

    pub fn linear(&self, group: &AbelianGroup, x: usize) -> usize {
        group
            .decode(x)
            .iter()
            .zip(&self.generator_images)
            .fold(0, |acc, (&c, &img)| group.add(acc, group.scale(img, c)))
    }

    pub fn apply(&self, group: &AbelianGroup, x: usize) -> usize {
        group.add(self.linear(group, x), self.translation)
    }

    pub fn is_automorphism(&self, group: &AbelianGroup) -> bool {
        let mut hit = vec![false; group.len()];
        for x in 0..group.len() {
            let y = self.linear(group, x);
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSearch {
    pub witness: Option<AffineMap>,
    /// True when every automorphism was examined, so an absent witness means
    /// the sets are not equivalent.
    pub exhaustive: bool,
}

/// Candidate automorphisms examined exhaustively below this count.
pub const AFFINE_EXHAUSTIVE_LIMIT: u128 = 1 << 22;
const AFFINE_RANDOM_TRIALS: usize = 200_000;

/// Searches for an automorphism `φ` and translation `c` with
/// `φ(S1) + c = S2`.
pub fn affine_equivalent(group: &AbelianGroup, s1: &[usize], s2: &[usize]) -> Result<AffineSearch> {
    let s1 = normalize_set(s1);
    let s2 = normalize_set(s2);
    if s1.len() != s2.len() {
        return Err(Error::precondition("sets have different sizes"));
    }
    if s1.is_empty() {
        return Ok(AffineSearch { witness: Some(AffineMap::identity(group)), exhaustive: true });
    }
    let mut in_s2 = vec![false; group.len()];
    for &x in &s2 {
        in_s2[x] = true;
    }
    let candidates: Vec<Vec<usize>> = group.factors().iter().map(|&n| group.torsion(n)).collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    let coords: Vec<Vec<u64>> = s1.iter().map(|&x| group.decode(x)).collect();

    let try_map = |images: &[usize]| -> Option<AffineMap> {
        let image: Vec<usize> = coords
            .iter()
            .map(|c| c.iter().zip(images).fold(0, |acc, (&k, &img)| group.add(acc, group.scale(img, k))))
            .collect();
        for &target in &s2 {
            let c = group.sub(target, image[0]);
            if image.iter().all(|&y| in_s2[group.add(y, c)]) {
                let map = AffineMap { generator_images: images.to_vec(), translation: c };
                if map.is_automorphism(group) {
                    return Some(map);
                }
                return None;
            }
        }
        None
    };

    if total <= AFFINE_EXHAUSTIVE_LIMIT {
        let mut images = vec![0usize; group.rank()];
        fn rec(
            i: usize,
            images: &mut Vec<usize>,
            cands: &[Vec<usize>],
            f: &dyn Fn(&[usize]) -> Option<AffineMap>,
        ) -> Option<AffineMap> {
            if i == cands.len() {
                return f(images);
            }
            for &c in &cands[i] {
                images[i] = c;
                if let Some(m) = rec(i + 1, images, cands, f) {
                    return Some(m);
                }
            }
            None
        }
        let witness = rec(0, &mut images, &candidates, &try_map);
        return Ok(AffineSearch { witness, exhaustive: true });
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..AFFINE_RANDOM_TRIALS {
        let images: Vec<usize> = candidates.iter().map(|c| c[rng.gen_range(0..c.len())]).collect();
        if let Some(m) = try_map(&images) {
            return Ok(AffineSearch { witness: Some(m), exhaustive: false });
        }
    }
    Ok(AffineSearch { witness: None, exhaustive: false })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerSidonReport {
    pub sidon: bool,
    pub witness: Option<[i64; 4]>,
}

/// Sidon test for a set of integers, via the cyclic group of order
/// `2 * diameter + 1`, where no sum of two elements wraps around.
pub fn is_sidon_integers(set: &[i64]) -> IntegerSidonReport {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let (Some(&lo), Some(&hi)) = (s.first(), s.last()) else {
        return IntegerSidonReport { sidon: true, witness: None };
    };
    let modulus = 2 * (hi - lo) as u64 + 1;
    let g = AbelianGroup::cyclic(modulus);
    let idx: Vec<usize> = s.iter().map(|&x| (x - lo) as usize).collect();
    let t = tally(&g, &idx);
    IntegerSidonReport { sidon: t.is_sidon, witness: t.witness.map(|w| w.map(|x| x as i64 + lo)) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_sidon(g: &AbelianGroup, s: &[usize]) -> bool {
        for &x in s {
            for &y in s {
                for &z in s {
                    for &w in s {
                        if g.add(x, y) == g.add(z, w) {
                            let mut a = [x, y];
                            let mut b = [z, w];
                            a.sort();
                            b.sort();
                            if a != b {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn small_cyclic_examples() {
        let z7 = AbelianGroup::cyclic(7);
        let r = is_sidon(&z7, &[1, 2, 4]);
        assert!(r.is_sidon);
        assert_eq!(r.energy, 2 * 9 - 3);
        let r = is_sidon(&z7, &[0, 1, 2]);
        assert!(!r.is_sidon);
        let w: Vec<u64> = r.witness.unwrap().into_iter().map(|e| e.0[0]).collect();
        assert_eq!(w, vec![0, 2, 1, 1]);
        let r = is_sidon(&AbelianGroup::cyclic(5), &[]);
        assert!(r.is_sidon);
        assert_eq!(r.energy, 0);
    }

    #[test]
    fn counting_bound_values() {
        assert_eq!(counting_bound(7), 3);
        assert_eq!(counting_bound(2), 1);
        assert_eq!(counting_bound(13), 4);
        assert_eq!(counting_bound(1), 1);
        for n in 1..500u64 {
            let s = counting_bound(n);
            assert!(s * (s - 1) <= n - 1 && (s + 1) * s > n - 1);
        }
    }

    #[test]
    fn perfect_difference_sets() {
        let z7 = AbelianGroup::cyclic(7);
        assert!(is_perfect_difference_set(&z7, &[1, 2, 4]));
        assert!(!is_perfect_difference_set(&z7, &[1, 2]));
        assert!(is_perfect_difference_set(&AbelianGroup::cyclic(13), &[0, 1, 3, 9]));
    }

    #[test]
    fn two_torsion_collisions_are_caught() {
        // a + a = b + b in (Z/2)^2
        let g = AbelianGroup::elementary(2, 2);
        let r = is_sidon(&g, &[0, 3]);
        assert!(!r.is_sidon);
        assert!(!check_sidon(&g, &[0, 3]));
    }

    #[test]
    fn tally_agrees_with_quadruple_loop() {
        let mut rng = StdRng::seed_from_u64(7);
        let groups = [vec![13], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![21], vec![4, 8]];
        for f in groups {
            let g = AbelianGroup::new(f).unwrap();
            for _ in 0..300 {
                let k = rng.gen_range(0..=6.min(g.len()));
                let set: Vec<usize> = normalize_set(&(0..k).map(|_| rng.gen_range(0..g.len())).collect::<Vec<_>>());
                let t = tally(&g, &set);
                assert_eq!(t.is_sidon, brute_force_sidon(&g, &set), "{set:?} in {g:?}");
                assert_eq!(t.is_sidon, check_sidon(&g, &set));
                let n = set.len() as u64;
                assert!(t.energy >= 2 * n * n - n || n == 0);
                assert_eq!(t.is_sidon, t.energy == (2 * n * n).saturating_sub(n));
                if let Some([x, y, z, w]) = t.witness {
                    assert_eq!(g.add(x, y), g.add(z, w));
                }
            }
        }
    }

    #[test]
    fn cover_examples() {
        let z7 = AbelianGroup::cyclic(7);
        assert_eq!(subgroup_union_cover(&z7, &[0], 1).unwrap(), Cover::Found(vec![vec![0]]));
        let z15 = AbelianGroup::cyclic(15);
        assert_eq!(subgroup_union_cover(&z15, &[0, 5, 10], 1).unwrap(), Cover::Found(vec![vec![0, 5, 10]]));
        assert_eq!(subgroup_union_cover(&z15, &[0, 5], 3).unwrap(), Cover::Impossible);
        let g = AbelianGroup::elementary(3, 2);
        // two lines through the origin
        let t: Vec<usize> = vec![0, 1, 2, 3, 6];
        assert_eq!(subgroup_union_cover(&g, &t, 1).unwrap(), Cover::Impossible);
        assert!(matches!(subgroup_union_cover(&g, &t, 2).unwrap(), Cover::Found(v) if v.len() == 2));
    }

    #[test]
    fn affine_equivalence_in_z7() {
        let z7 = AbelianGroup::cyclic(7);
        let r = affine_equivalent(&z7, &[1, 2, 4], &[3, 6, 5]).unwrap();
        let m = r.witness.unwrap();
        assert!(r.exhaustive);
        let image: Vec<usize> = normalize_set(&[1, 2, 4].map(|x| m.apply(&z7, x)));
        assert_eq!(image, vec![3, 5, 6]);
        let same = affine_equivalent(&z7, &[1, 2, 4], &[1, 2, 4]).unwrap();
        assert!(same.witness.is_some());
        let none = affine_equivalent(&z7, &[0, 1, 3], &[0, 1, 2]).unwrap();
        assert!(none.witness.is_none() && none.exhaustive);
    }

    #[test]
    fn integer_sidon() {
        assert!(is_sidon_integers(&[1, 2, 5, 11]).sidon);
        let r = is_sidon_integers(&[1, 2, 3]);
        assert!(!r.sidon);
        assert_eq!(r.witness, Some([1, 3, 2, 2]));
        assert!(is_sidon_integers(&[]).sidon);
        assert!(is_sidon_integers(&[-4, -3, 0]).sidon);
    }
}
