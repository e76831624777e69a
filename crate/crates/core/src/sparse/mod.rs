//! Sparser Sidon sets built from primes, plus two elementary variants.

pub mod classgroup;
pub mod framework;
pub mod hiprec;
pub mod realquad;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{gcd, is_prime, isqrt, primes_up_to};
use crate::algebra::group::Presentation;
use crate::algebra::{AbelianGroup, FieldElement, FiniteField, GroupElement, IsoNote};
use crate::sidon::{is_sidon, is_sidon_integers, normalize_set};
use crate::{Error, Result};

pub use classgroup::{class_group_primes, ClassGroupPrimes, QuadraticClassGroup};
pub use framework::{framework_build, FrameworkResult, FrameworkSpec};
pub use realquad::{real_quadratic, RealQuadratic};

/// A Sidon set of integers with per-element provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegerConstruction {
    pub primes: Vec<u64>,
    pub elements: Vec<i64>,
    pub sidon: bool,
    /// Smallest distance of a rounded quantity to an integer boundary.
    pub min_margin: Option<f64>,
}

/// `⌊3X² ln p⌋` for every prime `p <= X`.
pub fn log_primes(x: u64) -> Result<IntegerConstruction> {
    if x < 2 {
        return Err(Error::precondition("X must be at least 2"));
    }
    let scale = BigInt::from(3u64 * x * x);
    let mut primes = Vec::new();
    let mut elements = Vec::new();
    let mut min_margin = f64::INFINITY;
    for p in primes_up_to(x) {
        let g = hiprec::guarded_floor(|prec| hiprec::ln_int(&BigInt::from(p), prec + 64) * &scale >> 64u32);
        primes.push(p);
        elements.push(g.floor.to_i64().expect("fits"));
        min_margin = min_margin.min(g.margin);
    }
    let sidon = is_sidon_integers(&elements).sidon;
    Ok(IntegerConstruction { primes, elements, sidon, min_margin: Some(min_margin) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupConstruction {
    pub group: AbelianGroup,
    #[serde(skip)]
    pub set: Vec<usize>,
    pub elements: Vec<GroupElement>,
    pub labels: Vec<u64>,
    pub iso_note: Option<IsoNote>,
    pub sidon: bool,
}

impl GroupConstruction {
    fn new(group: AbelianGroup, set: Vec<usize>, labels: Vec<u64>, iso_note: Option<IsoNote>) -> Self {
        let sidon = is_sidon(&group, &set).is_sidon;
        let elements = set.iter().map(|&x| group.element(x)).collect();
        GroupConstruction { group, set, elements, labels, iso_note, sidon }
    }
}

/// `(Z/m)^×` in invariant-factor form, with the index of every residue
/// (or `usize::MAX` for non-units).
pub fn unit_group(m: u64) -> (Presentation, Vec<usize>) {
    let units: Vec<u64> = (0..m).filter(|&a| gcd(a, m) == 1).collect();
    let mut pos = vec![usize::MAX; m as usize];
    for (i, &u) in units.iter().enumerate() {
        pos[u as usize] = i;
    }
    let one = pos[(1 % m) as usize];
    let (pres, map) =
        Presentation::from_operation(units.len(), one, |a, b| pos[((units[a] as u128 * units[b] as u128) % m as u128) as usize]);
    let mut index = vec![usize::MAX; m as usize];
    for (i, &u) in units.iter().enumerate() {
        index[u as usize] = map[i];
    }
    (pres, index)
}

/// Primes `p <= sqrt(m)` coprime to `m`, as elements of `(Z/m)^×`.
pub fn quotient_ring_primes(m: u64) -> Result<GroupConstruction> {
    if m < 4 {
        return Err(Error::precondition("m must be at least 4"));
    }
    let (pres, index) = unit_group(m);
    let primes: Vec<u64> = primes_up_to(isqrt(m)).into_iter().filter(|&p| m % p != 0).collect();
    let set: Vec<usize> = primes.iter().map(|&p| index[p as usize]).collect();
    let note = pres.note(format!("(Z/{m})^x; raw coordinates are exponents of successive generators"));
    Ok(GroupConstruction::new(pres.group().clone(), set, primes, Some(note)))
}

/// `p = a² + b²` with `0 < b < a`, for a prime `p ≡ 1 (mod 4)`.
pub fn two_squares(p: u64) -> Option<(u64, u64)> {
    (1..=isqrt(p / 2)).find_map(|b| {
        let r = p - b * b;
        let a = isqrt(r);
        (a * a == r && b < a).then_some((a, b))
    })
}

/// `(a + bi)^4` exactly.
pub fn gaussian_fourth_power(a: i64, b: i64) -> (i128, i128) {
    let (a, b) = (a as i128, b as i128);
    let (re2, im2) = (a * a - b * b, 2 * a * b);
    (re2 * re2 - im2 * im2, 2 * re2 * im2)
}

/// `⌊n arg(ρ⁴) / 2π⌋` for the normalized Gaussian prime `ρ` above `p`,
/// with the distance of the scaled angle to an integer.
pub fn gaussian_angle_element(p: u64, n: u64) -> Result<(i64, f64)> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not a prime congruent to 1 mod 4")));
    }
    let (a, b) = two_squares(p).expect("Fermat");
    let (re, im) = gaussian_fourth_power(a as i64, b as i64);
    let g = hiprec::guarded_floor(|prec| {
        let w = prec + 64;
        let mut angle = hiprec::atan2(&BigInt::from(im), &BigInt::from(re), w);
        if angle < BigInt::from(0) {
            angle += hiprec::pi(w) << 1u32;
        }
        ((angle * BigInt::from(n)) << prec) / (hiprec::pi(w) << 1u32)
    });
    Ok((g.floor.to_i64().expect("fits"), g.margin))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianAngles {
    pub n: u64,
    pub primes: Vec<u64>,
    pub elements: Vec<i64>,
    /// Sidon as a set of integers.
    pub sidon: bool,
    /// Sidon in `Z/n`; reported only.
    pub sidon_mod_n: bool,
    pub min_margin: Option<f64>,
}

/// Angles of Gaussian primes above `p ≡ 1 (mod 4)` with `16 p² <= n`.
pub fn gaussian_angles(n: u64) -> Result<GaussianAngles> {
    if n < 16 {
        return Err(Error::precondition("n must be at least 16"));
    }
    let bound = isqrt(n) / 4;
    let mut primes = Vec::new();
    let mut elements = Vec::new();
    let mut margin: Option<f64> = None;
    for p in primes_up_to(bound).into_iter().filter(|p| p % 4 == 1 && 16 * p * p <= n) {
        let (e, m) = gaussian_angle_element(p, n)?;
        primes.push(p);
        elements.push(e);
        margin = Some(margin.map_or(m, |x: f64| x.min(m)));
    }
    let sidon = is_sidon_integers(&elements).sidon;
    let zn = AbelianGroup::cyclic(n);
    let set: Vec<usize> = elements.iter().map(|&e| e.rem_euclid(n as i64) as usize).collect();
    let sidon_mod_n = set.len() == normalize_set(&set).len() && is_sidon(&zn, &set).is_sidon;
    Ok(GaussianAngles { n, primes, elements, sidon, sidon_mod_n, min_margin: margin })
}

/// Unordered pairs `{x, y}` in `U` with `x + y = 0`, including `{0, 0}`.
pub fn zero_sum_pairs(field: &FiniteField, u: &[FieldElement]) -> Vec<(FieldElement, FieldElement)> {
    let mut u = u.to_vec();
    u.sort();
    u.dedup();
    let mut out = Vec::new();
    for (i, &x) in u.iter().enumerate() {
        for &y in &u[i..] {
            if field.add(x, y).is_zero() {
                out.push((x, y));
            }
        }
    }
    out
}

/// The graph `{(x, x³) : x ∈ U}` in `K²`.
pub fn cubic_graph(field: &FiniteField, u: &[FieldElement]) -> Result<(AbelianGroup, Vec<usize>)> {
    if field.p() <= 3 {
        return Err(Error::Characteristic(field.p(), "cubic graphs need characteristic above 3"));
    }
    let pairs = zero_sum_pairs(field, u);
    if pairs.len() > 1 {
        let list: Vec<String> = pairs.iter().map(|(x, y)| format!("{{{}, {}}}", x.0, y.0)).collect();
        return Err(Error::precondition(format!("U has several zero-sum pairs: {}", list.join(", "))));
    }
    let d = field.degree();
    let g = AbelianGroup::elementary(field.p(), 2 * d);
    let digits = |x: FieldElement| {
        let mut c = field.coeffs(x);
        c.resize(d, 0);
        c
    };
    let set = u
        .iter()
        .map(|&x| {
            let mut c = digits(x);
            c.extend(digits(field.pow(x, 3)));
            g.encode(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((g, normalize_set(&set)))
}

/// A largest admissible `U`: zero and the first of each pair `{x, -x}`.
pub fn max_cubic_subset(field: &FiniteField) -> Vec<FieldElement> {
    field.elements().filter(|&x| x.is_zero() || x < field.neg(x)).collect()
}

/// `{5s + ε(s)}` for a Sidon set of integers.
pub fn perturb(set: &[i64], eps: &[i8]) -> Result<Vec<i64>> {
    if set.len() != eps.len() {
        return Err(Error::precondition("one perturbation per element is required"));
    }
    if let Some(e) = eps.iter().find(|e| !(-1..=1).contains(*e)) {
        return Err(Error::precondition(format!("perturbation {e} is not in {{-1, 0, 1}}")));
    }
    if !is_sidon_integers(set).sidon {
        return Err(Error::precondition("input is not a Sidon set"));
    }
    Ok(set.iter().zip(eps).map(|(&s, &e)| 5 * s + e as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_primes_small() {
        let c = log_primes(10).unwrap();
        assert_eq!(c.elements, vec![207, 329, 482, 583]);
        assert!(c.sidon);
        for (p, e) in c.primes.iter().zip(&c.elements) {
            assert_eq!(*e, (300.0 * (*p as f64).ln()).floor() as i64);
        }
        assert_eq!(log_primes(2).unwrap().elements.len(), 1);
        let big = log_primes(100).unwrap();
        assert_eq!(big.elements.len(), 25);
        assert!(big.sidon);
        assert!(log_primes(1).is_err());
    }

    #[test]
    fn quotient_ring_examples() {
        let c = quotient_ring_primes(101).unwrap();
        assert_eq!(c.labels, vec![2, 3, 5, 7]);
        assert!(c.sidon);
        assert_eq!(c.group.factors(), &[100]);
        assert!(quotient_ring_primes(30).unwrap().labels.is_empty());
        assert_eq!(quotient_ring_primes(100).unwrap().labels, vec![3, 7]);
        let (pres, idx) = unit_group(15);
        assert_eq!(pres.group().factors(), &[2, 4]);
        // the index map is a homomorphism
        let g = pres.group();
        for a in [1u64, 2, 4, 7, 8, 11, 13, 14] {
            for b in [1u64, 2, 4, 7, 8, 11, 13, 14] {
                assert_eq!(g.add(idx[a as usize], idx[b as usize]), idx[(a * b % 15) as usize]);
            }
        }
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_fourth_power(2, 1), (-7, 24));
        assert_eq!(gaussian_fourth_power(3, 2), (-119, 120));
        assert_eq!(gaussian_angle_element(5, 100).unwrap().0, 29);
        assert_eq!(gaussian_angle_element(13, 100).unwrap().0, 37);
        assert!(gaussian_angles(16).unwrap().elements.is_empty());
        let c = gaussian_angles(10_000).unwrap();
        assert!(c.sidon);
        for (&p, &e) in c.primes.iter().zip(&c.elements) {
            let (a, b) = two_squares(p).unwrap();
            let (re, im) = gaussian_fourth_power(a as i64, b as i64);
            let phi = (im as f64).atan2(re as f64) / std::f64::consts::TAU;
            assert!(phi > 0.0 && phi < 0.5);
            assert_eq!(e, (phi * 10_000.0).floor() as i64);
        }
    }

    #[test]
    fn cubic_graph_examples() {
        let f = FiniteField::of_order(7).unwrap();
        let el = |v: &[u32]| v.iter().map(|&x| FieldElement(x)).collect::<Vec<_>>();
        let (g, s) = cubic_graph(&f, &el(&[1, 2, 3])).unwrap();
        let want: Vec<usize> = [[1, 1], [2, 1], [3, 6]].iter().map(|c| g.encode(c).unwrap()).collect();
        assert_eq!(s, normalize_set(&want));
        assert!(is_sidon(&g, &s).is_sidon);
        let (g, s) = cubic_graph(&f, &el(&[1, 6])).unwrap();
        assert!(is_sidon(&g, &s).is_sidon);
        let err = cubic_graph(&f, &el(&[1, 6, 2, 5])).unwrap_err();
        assert!(err.to_string().contains("{1, 6}") && err.to_string().contains("{2, 5}"));
        for q in [5u64, 7, 11, 13, 25] {
            let f = FiniteField::of_order(q).unwrap();
            let u = max_cubic_subset(&f);
            assert_eq!(u.len() as u64, (q + 1) / 2);
            let (g, s) = cubic_graph(&f, &u).unwrap();
            assert!(is_sidon(&g, &s).is_sidon, "q={q}");
        }
        assert!(cubic_graph(&FiniteField::of_order(9).unwrap(), &[]).is_err());
    }

    #[test]
    fn cubic_graph_pair_condition_is_sharp() {
        // over F_7 every U with two zero-sum pairs fails, every U with at most one passes
        let f = FiniteField::of_order(7).unwrap();
        for mask in 0u32..128 {
            let u: Vec<FieldElement> = (0..7).filter(|i| mask >> i & 1 == 1).map(FieldElement).collect();
            let pairs = zero_sum_pairs(&f, &u).len();
            let g = AbelianGroup::elementary(7, 2);
            let s: Vec<usize> = u.iter().map(|&x| g.encode(&[x.0 as u64, f.pow(x, 3).0 as u64]).unwrap()).collect();
            assert_eq!(is_sidon(&g, &s).is_sidon, pairs <= 1, "{mask:b}");
        }
    }

    #[test]
    fn perturbation() {
        assert_eq!(perturb(&[1, 2, 5, 11], &[0; 4]).unwrap(), vec![5, 10, 25, 55]);
        let p = perturb(&[1, 2, 5, 11], &[1, -1, 1, -1]).unwrap();
        assert!(is_sidon_integers(&p).sidon);
        assert_eq!(perturb(&[4], &[1]).unwrap(), vec![21]);
        assert!(perturb(&[1, 2, 3], &[0; 3]).is_err());
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(5);
        let base = log_primes(30).unwrap().elements;
        for _ in 0..50 {
            let eps: Vec<i8> = base.iter().map(|_| rand::Rng::gen_range(&mut rng, -1..=1)).collect();
            assert!(is_sidon_integers(&perturb(&base, &eps).unwrap()).sidon);
        }
    }
}
