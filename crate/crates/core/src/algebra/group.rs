//! Finite abelian groups in invariant-factor form.
//!
//! Elements are coordinate vectors `c` with `c[i] < n_i`; internally they are
//! packed into a mixed-radix index with `c[0]` most significant, so index
//! order is the lexicographic order of coordinates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, Matrix};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct AbelianGroup {
    factors: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

#[derive(Serialize, Deserialize)]
struct GroupSpec {
    factors: Vec<u64>,
}

impl TryFrom<GroupSpec> for AbelianGroup {
    type Error = Error;
    fn try_from(s: GroupSpec) -> Result<Self> {
        AbelianGroup::new(s.factors)
    }
}

impl From<AbelianGroup> for GroupSpec {
    fn from(g: AbelianGroup) -> Self {
        GroupSpec { factors: g.factors }
    }
}

impl std::fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Coordinates of one element, serialized as a plain array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl AbelianGroup {
    /// Checks the divisibility chain `n_1 | n_2 | ...` with every `n_i >= 2`.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("factor {n} < 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        let mut strides = vec![1u64; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(AbelianGroup { factors, strides, order })
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).unwrap()
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self::new(vec![n]).unwrap()
        }
    }

    /// `(Z/p)^k`.
    pub fn elementary(p: u64, k: usize) -> Self {
        Self::new(vec![p; k]).unwrap()
    }

    /// Normal form of an arbitrary product of cyclic groups, with the
    /// isomorphism from the given coordinates.
    pub fn from_cyclic_factors(orders: &[u64]) -> (Self, Presentation) {
        let p = Presentation::from_orders(orders);
        (p.group().clone(), p)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn encode(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.factors.len() || coords.iter().zip(&self.factors).any(|(c, n)| c >= n) {
            return Err(Error::NotAnElement(coords.to_vec()));
        }
        Ok(coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum::<u64>() as usize)
    }

    /// Reduces arbitrary integer coordinates modulo the factors first.
    pub fn encode_reduced(&self, coords: &[i128]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &n), &s)| c.rem_euclid(n as i128) as u64 * s)
            .sum::<u64>() as usize
    }

    pub fn decode(&self, index: usize) -> Vec<u64> {
        let idx = index as u64;
        self.factors.iter().zip(&self.strides).map(|(&n, &s)| (idx / s) % n).collect()
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement(self.decode(index))
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        self.encode(&e.0)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.factors.len() == 1 {
            let n = self.order as usize;
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut stride = 1u64;
        for &n in self.factors.iter().rev() {
            let s = (a % n + b % n) % n;
            out += s * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.factors.len() == 1 {
            return if a == 0 { 0 } else { self.order as usize - a };
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut stride = 1u64;
        for &n in self.factors.iter().rev() {
            out += ((n - a % n) % n) * stride;
            stride *= n;
            a /= n;
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a`.
    pub fn scale(&self, a: usize, k: u64) -> usize {
        let c: Vec<i128> = self.decode(a).into_iter().map(|x| x as i128 * k as i128).collect();
        self.encode_reduced(&c)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / num_integer::gcd(n, c))
            .fold(1, num_integer::lcm)
    }

    /// Subgroup generated by `gens`, as a sorted list of indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Index of the `i`-th canonical generator (coordinate vector `e_i`).
    pub fn basis_element(&self, i: usize) -> usize {
        self.strides[i] as usize
    }

    /// Elements `x` with `k x = 0`.
    pub fn torsion(&self, k: u64) -> Vec<usize> {
        (0..self.len()).filter(|&x| k % self.element_order(x) == 0).collect()
    }
}

/// An isomorphism from a group given by generators and relations onto its
/// invariant-factor normal form.
///
/// Raw coordinates `x` (exponents of the raw generators) map to
/// `P x mod s` where `P` is the left Smith transform.
#[derive(Debug, Clone)]
pub struct Presentation {
    raw_orders: Vec<u64>,
    group: AbelianGroup,
    to_group: Matrix,
    to_raw: Matrix,
}

/// Serializable record of a [`Presentation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoNote {
    pub description: String,
    pub raw_orders: Vec<u64>,
    pub factors: Vec<u64>,
    /// Rows map raw exponent vectors to normal-form coordinates.
    pub to_group: Vec<Vec<i64>>,
}

impl Presentation {
    /// `Z/n_1 x ... x Z/n_k` for arbitrary positive `n_i`.
    pub fn from_orders(orders: &[u64]) -> Self {
        let k = orders.len();
        let rel: Matrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { orders[i] as i128 } else { 0 }).collect())
            .collect();
        Self::from_relations(orders.to_vec(), &rel)
    }

    /// `relations` has one row per raw generator and one column per relation.
    /// `raw_orders[i]` must be a multiple of the order of generator `i`.
    pub fn from_relations(raw_orders: Vec<u64>, relations: &Matrix) -> Self {
        let k = raw_orders.len();
        if k == 0 {
            return Presentation {
                raw_orders,
                group: AbelianGroup::trivial(),
                to_group: Vec::new(),
                to_raw: Vec::new(),
            };
        }
        let s = smith_normal_form(relations);
        let kept: Vec<usize> = (0..k).filter(|&i| s.diagonal[i] != 1).collect();
        let factors: Vec<u64> = kept
            .iter()
            .map(|&i| {
                assert!(s.diagonal[i] > 0, "relations do not define a finite group");
                s.diagonal[i] as u64
            })
            .collect();
        let group = AbelianGroup::new(factors).expect("Smith diagonal is a divisibility chain");
        let to_group = kept.iter().map(|&i| s.left[i].clone()).collect();
        let to_raw = (0..k).map(|r| kept.iter().map(|&i| s.left_inverse[r][i]).collect()).collect();
        Presentation { raw_orders, group, to_group, to_raw }
    }

    /// Presents a finite abelian group given by its operation on indices
    /// `0..n`. Returns the presentation and the normal-form index of every
    /// input element.
    pub fn from_operation(n: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> (Self, Vec<usize>) {
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; n];
        coords[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut orders: Vec<u64> = Vec::new();
        for cand in 0..n {
            if coords[cand].is_some() {
                continue;
            }
            let k = gens.len();
            // relative order of cand modulo the current subgroup
            let mut x = cand;
            let mut m = 1i64;
            while coords[x].is_none() {
                x = op(x, cand);
                m += 1;
            }
            let mut rel = coords[x].clone().unwrap();
            rel.resize(k + 1, 0);
            for r in rel.iter_mut() {
                *r = -*r;
            }
            rel[k] = m;
            relations.push(rel);
            // absolute order
            let mut ord = 1u64;
            let mut y = cand;
            while y != identity {
                y = op(y, cand);
                ord += 1;
            }
            orders.push(ord);
            gens.push(cand);
            let base = members.clone();
            let mut shift = cand;
            for t in 1..m {
                for &h in &base {
                    let z = op(shift, h);
                    let mut c = coords[h].clone().unwrap();
                    c.resize(k + 1, 0);
                    c[k] = t;
                    debug_assert!(coords[z].is_none());
                    coords[z] = Some(c);
                    members.push(z);
                }
                shift = op(shift, cand);
            }
        }
        let k = gens.len();
        let rel: Matrix = (0..k)
            .map(|i| (0..k).map(|j| relations[j].get(i).copied().unwrap_or(0) as i128).collect())
            .collect();
        let pres = Self::from_relations(orders, &rel);
        let map = coords
            .into_iter()
            .map(|c| {
                let mut c = c.expect("every element reached");
                c.resize(k, 0);
                pres.raw_to_index(&c)
            })
            .collect();
        (pres, map)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn raw_orders(&self) -> &[u64] {
        &self.raw_orders
    }

    pub fn raw_to_index(&self, raw: &[i64]) -> usize {
        let c: Vec<i128> = self
            .to_group
            .iter()
            .map(|row| row.iter().zip(raw).map(|(&a, &x)| a * x as i128).sum())
            .collect();
        self.group.encode_reduced(&c)
    }

    /// Raw exponents (reduced modulo the raw orders) of a normal-form element.
    pub fn index_to_raw(&self, index: usize) -> Vec<u64> {
        let y = self.group.decode(index);
        self.to_raw
            .iter()
            .zip(&self.raw_orders)
            .map(|(row, &n)| {
                let v: i128 = row.iter().zip(&y).map(|(&a, &c)| a * c as i128).sum();
                v.rem_euclid(n.max(1) as i128) as u64
            })
            .collect()
    }

    pub fn note(&self, description: impl Into<String>) -> IsoNote {
        IsoNote {
            description: description.into(),
            raw_orders: self.raw_orders.clone(),
            factors: self.group.factors().to_vec(),
            to_group: self.to_group.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_checks() {
        assert!(AbelianGroup::new(vec![2, 3]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(AbelianGroup::trivial().order(), 1);
    }

    #[test]
    fn subgroups_generated() {
        let z6 = AbelianGroup::cyclic(6);
        assert_eq!(z6.subgroup_generated(&[2]), vec![0, 2, 4]);
        let g = AbelianGroup::elementary(5, 2);
        let h = g.subgroup_generated(&[g.encode(&[1, 0]).unwrap()]);
        assert_eq!(h, (0..5).map(|k| g.encode(&[k, 0]).unwrap()).collect::<Vec<_>>());
        let g = AbelianGroup::new(vec![4, 4]).unwrap();
        let h = g.subgroup_generated(&[g.encode(&[1, 1]).unwrap(), g.encode(&[2, 0]).unwrap()]);
        assert_eq!(h.len(), 8);
    }

    #[test]
    fn normal_form_of_cyclic_products() {
        let (g, p) = AbelianGroup::from_cyclic_factors(&[4, 6]);
        assert_eq!(g.factors(), &[2, 12]);
        // the map is a bijective homomorphism
        let mut seen = vec![false; 24];
        for a in 0..4i64 {
            for b in 0..6i64 {
                let i = p.raw_to_index(&[a, b]);
                assert!(!seen[i]);
                seen[i] = true;
                let back = p.index_to_raw(i);
                assert_eq!(back, vec![a as u64, b as u64]);
                let s = p.raw_to_index(&[a + 1, b + 5]);
                assert_eq!(s, g.add(i, p.raw_to_index(&[1, 5])));
            }
        }
        let (g, _) = AbelianGroup::from_cyclic_factors(&[4, 1, 5]);
        assert_eq!(g.factors(), &[20]);
        let (g, _) = AbelianGroup::from_cyclic_factors(&[1, 1]);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn presentation_from_operation_units_mod_15() {
        let units: Vec<u64> = (1..15).filter(|&x| num_integer::gcd(x, 15) == 1).collect();
        let pos = |x: u64| units.iter().position(|&u| u == x).unwrap();
        let (pres, map) =
            Presentation::from_operation(units.len(), pos(1), |a, b| pos(units[a] * units[b] % 15));
        assert_eq!(pres.group().factors(), &[2, 4]);
        let g = pres.group();
        for a in 0..units.len() {
            for b in 0..units.len() {
                let ab = pos(units[a] * units[b] % 15);
                assert_eq!(map[ab], g.add(map[a], map[b]));
            }
        }
    }

    #[test]
    fn group_serializes_as_factor_list() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"factors":[3,3]}"#);
        let back: AbelianGroup = serde_json::from_str(r#"{"factors":[2,4]}"#).unwrap();
        assert_eq!(back.order(), 8);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"factors":[2,3]}"#).is_err());
    }
}
