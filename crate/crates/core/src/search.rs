//! Exhaustive search for Sidon sets: maximum sizes, enumeration up to
//! translation and negation, and testers for conjectured structure of
//! extremal sets.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{isqrt, prime_power};
use crate::algebra::{AbelianGroup, GroupElement};
use crate::sidon::{counting_bound, is_perfect_difference_set, is_sidon, t_set};
use crate::{Error, Result};

/// Node budget used when none is given.
pub const DEFAULT_BUDGET: u64 = 1 << 34;
/// Number of extremal sets listed by [`max_sidon`].
pub const DEFAULT_SET_CAP: usize = 16;
const SUB_TABLE_LIMIT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub group: AbelianGroup,
    pub sigma: u64,
    /// Canonical under translation and negation, in search order.
    pub extremal_sets: Vec<Vec<GroupElement>>,
    pub nodes_visited: u64,
    pub exhaustive: bool,
}

/// Group operations used by the search, with a subtraction table for small
/// groups.
struct Ops<'a> {
    group: &'a AbelianGroup,
    n: usize,
    neg: Vec<usize>,
    sub: Option<Vec<u32>>,
}

impl<'a> Ops<'a> {
    fn new(group: &'a AbelianGroup) -> Self {
        let n = group.len();
        let neg = (0..n).map(|x| group.neg(x)).collect::<Vec<_>>();
        let sub = (n <= SUB_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = group.add(a, neg[b]) as u32;
                }
            }
            t
        });
        Ops { group, n, neg, sub }
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        match &self.sub {
            Some(t) => t[a * self.n + b] as usize,
            None => self.group.add(a, self.neg[b]),
        }
    }

    /// Lexicographically least sorted image of `set` under `x ↦ ±(x - s)`.
    fn canonical(&self, set: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for &s in set {
            for sign in [false, true] {
                let mut img: Vec<usize> = set
                    .iter()
                    .map(|&x| {
                        let d = self.sub(x, s);
                        if sign {
                            self.neg[d]
                        } else {
                            d
                        }
                    })
                    .collect();
                img.sort_unstable();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        best.unwrap_or_default()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Stop at the first set of the target size.
    First,
    /// Collect canonical sets of the target size up to a cap.
    Enumerate(usize),
}

struct Dfs<'a, 'b> {
    ops: &'b Ops<'a>,
    k: usize,
    budget: u64,
    nodes: u64,
    mode: Mode,
    used: Vec<bool>,
    set: Vec<usize>,
    /// Every difference must have index at least this.
    floor: usize,
    found: Vec<Vec<usize>>,
    exhausted: bool,
}

impl Dfs<'_, '_> {
    fn try_add(&mut self, e: usize) -> bool {
        let mut marked = Vec::with_capacity(2 * self.set.len());
        for i in 0..self.set.len() {
            let d = self.ops.sub(e, self.set[i]);
            for x in [d, self.ops.neg[d]] {
                if x < self.floor || self.used[x] {
                    for &m in &marked {
                        self.used[m] = false;
                    }
                    return false;
                }
                self.used[x] = true;
                marked.push(x);
            }
        }
        self.set.push(e);
        true
    }

    fn remove_last(&mut self) {
        let e = self.set.pop().expect("nonempty");
        for &s in &self.set {
            let d = self.ops.sub(e, s);
            self.used[d] = false;
            self.used[self.ops.neg[d]] = false;
        }
    }

    /// Returns `true` when the search should stop.
    fn go(&mut self, start: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return true;
        }
        if self.set.len() == self.k {
            return match self.mode {
                Mode::First => {
                    self.found.push(self.set.clone());
                    true
                }
                Mode::Enumerate(cap) => {
                    if self.ops.canonical(&self.set) == self.set {
                        self.found.push(self.set.clone());
                    }
                    self.found.len() >= cap
                }
            };
        }
        let need = self.k - self.set.len();
        if self.ops.n - start < need {
            return false;
        }
        for e in start..=self.ops.n - need {
            if self.try_add(e) {
                let stop = self.go(e + 1);
                self.remove_last();
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

struct Outcome {
    sets: Vec<Vec<usize>>,
    nodes: u64,
    exhaustive: bool,
}

/// Searches for Sidon sets of size `k` containing `0`, in canonical order,
/// splitting the tree over the second element. Each subtree gets the full
/// budget; results are merged in subtree order.
fn search(ops: &Ops<'_>, k: usize, budget: u64, mode: Mode) -> Outcome {
    let n = ops.n;
    if k == 0 {
        return Outcome { sets: vec![vec![]], nodes: 1, exhaustive: true };
    }
    if k == 1 {
        return Outcome { sets: vec![vec![0]], nodes: 1, exhaustive: true };
    }
    if k as u64 > counting_bound(n as u64) {
        return Outcome { sets: vec![], nodes: 1, exhaustive: true };
    }
    let seconds: Vec<usize> = (1..n).filter(|&a| ops.neg[a] > a).collect();
    let results: Vec<(Vec<Vec<usize>>, u64, bool)> = seconds
        .par_iter()
        .map(|&a| {
            let mut dfs = Dfs {
                ops,
                k,
                budget,
                nodes: 0,
                mode,
                used: vec![false; n],
                set: vec![0],
                floor: a,
                found: Vec::new(),
                exhausted: false,
            };
            let ok = dfs.try_add(a);
            debug_assert!(ok);
            dfs.go(a + 1);
            (dfs.found, dfs.nodes, dfs.exhausted)
        })
        .collect();
    let mut out = Outcome { sets: Vec::new(), nodes: 1, exhaustive: true };
    for (sets, nodes, exhausted) in results {
        out.nodes += nodes;
        out.exhaustive &= !exhausted;
        out.sets.extend(sets);
    }
    if let Mode::Enumerate(cap) = mode {
        out.sets.truncate(cap);
    }
    out
}

/// Largest Sidon set in `group`, with up to [`DEFAULT_SET_CAP`] canonical
/// extremal sets.
pub fn max_sidon(group: &AbelianGroup, budget: u64) -> SearchResult {
    max_sidon_capped(group, budget, DEFAULT_SET_CAP)
}

pub fn max_sidon_capped(group: &AbelianGroup, budget: u64, cap: usize) -> SearchResult {
    let ops = Ops::new(group);
    let mut nodes = 0;
    let mut exhaustive = true;
    let mut sigma = 1usize;
    for k in (2..=counting_bound(group.order()) as usize).rev() {
        let o = search(&ops, k, budget, Mode::First);
        nodes += o.nodes;
        if !o.sets.is_empty() {
            sigma = k;
            break;
        }
        exhaustive &= o.exhaustive;
    }
    let sets = if cap > 0 {
        let o = search(&ops, sigma, budget, Mode::Enumerate(cap));
        nodes += o.nodes;
        o.sets
    } else {
        Vec::new()
    };
    log::debug!("sigma = {sigma} after {nodes} nodes");
    SearchResult {
        group: group.clone(),
        sigma: sigma as u64,
        extremal_sets: sets.iter().map(|s| s.iter().map(|&x| group.element(x)).collect()).collect(),
        nodes_visited: nodes,
        exhaustive,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub sets: Vec<Vec<usize>>,
    pub nodes_visited: u64,
    pub exhaustive: bool,
}

/// All Sidon sets of size `k` that are lexicographically least among their
/// images under translation and negation.
pub fn enumerate_sidon(group: &AbelianGroup, k: usize, budget: u64) -> Enumeration {
    let ops = Ops::new(group);
    let o = search(&ops, k, budget, Mode::Enumerate(usize::MAX));
    Enumeration { sets: o.sets, nodes_visited: o.nodes, exhaustive: o.exhaustive }
}

/// Canonical form of a set under translation and negation.
pub fn canonical_form(group: &AbelianGroup, set: &[usize]) -> Vec<usize> {
    Ops::new(group).canonical(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineClass {
    pub representative: Vec<GroupElement>,
    pub t_set_size: usize,
    pub t_is_subgroup: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TSubgroupReport {
    pub p: u64,
    pub verdict: Verdict,
    pub counterexample: Option<Vec<GroupElement>>,
    /// Sets of size `p` up to translation and negation.
    pub sets_enumerated: usize,
    pub affine_classes: Vec<AffineClass>,
    pub nodes_visited: u64,
}

/// `true` when a set containing `0` is closed under addition.
pub fn is_subgroup(group: &AbelianGroup, set: &[usize]) -> bool {
    let mut member = vec![false; group.len()];
    for &x in set {
        member[x] = true;
    }
    member[0] && set.iter().all(|&a| set.iter().all(|&b| member[group.add(a, b)]))
}

/// Invertible 2×2 matrices over `Z/p`.
fn gl2(p: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p != 0 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Canonical form of a subset of `(Z/p)²` under the affine group.
fn affine_canonical(group: &AbelianGroup, p: u64, mats: &[[u64; 4]], set: &[usize]) -> Vec<usize> {
    let coords: Vec<Vec<u64>> = set.iter().map(|&x| group.decode(x)).collect();
    let mut best: Option<Vec<usize>> = None;
    for s in &coords {
        let shifted: Vec<[u64; 2]> = coords.iter().map(|c| [(c[0] + p - s[0]) % p, (c[1] + p - s[1]) % p]).collect();
        for m in mats {
            let mut img: Vec<usize> = shifted
                .iter()
                .map(|v| {
                    let x = (m[0] * v[0] + m[1] * v[1]) % p;
                    let y = (m[2] * v[0] + m[3] * v[1]) % p;
                    group.encode(&[x, y]).expect("in range")
                })
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// Checks on `(Z/p)²` that every Sidon set of size `p` has a T-set that is a
/// subgroup, with a census of affine classes.
pub fn test_t_subgroup(p: u64, budget: u64) -> Result<TSubgroupReport> {
    if !crate::algebra::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = AbelianGroup::elementary(p, 2);
    let e = enumerate_sidon(&group, p as usize, budget);
    let mats = gl2(p);
    let classes: BTreeSet<Vec<usize>> =
        e.sets.par_iter().map(|s| affine_canonical(&group, p, &mats, s)).collect::<Vec<_>>().into_iter().collect();
    let mut affine_classes = Vec::with_capacity(classes.len());
    let mut counterexample = None;
    for rep in &classes {
        let t = t_set(&group, rep);
        let ok = is_subgroup(&group, &t);
        if !ok && counterexample.is_none() {
            counterexample = Some(rep.iter().map(|&x| group.element(x)).collect());
        }
        affine_classes.push(AffineClass {
            representative: rep.iter().map(|&x| group.element(x)).collect(),
            t_set_size: t.len(),
            t_is_subgroup: ok,
        });
    }
    let verdict = match (&counterexample, e.exhaustive) {
        (Some(_), _) => Verdict::Fails,
        (None, true) => Verdict::Holds,
        (None, false) => Verdict::Inconclusive,
    };
    Ok(TSubgroupReport {
        p,
        verdict,
        counterexample,
        sets_enumerated: e.sets.len(),
        affine_classes,
        nodes_visited: e.nodes_visited,
    })
}

/// An element completing `set` to a perfect difference set, if any.
pub fn completes_to_perfect_difference_set(group: &AbelianGroup, set: &[usize]) -> Option<usize> {
    (0..group.len()).filter(|x| !set.contains(x)).find(|&x| {
        let mut s = set.to_vec();
        s.push(x);
        is_perfect_difference_set(group, &s)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendableReport {
    pub group: AbelianGroup,
    pub verdict: Verdict,
    pub counterexample: Option<Vec<GroupElement>>,
    pub sets_tested: usize,
    pub extendable: usize,
    pub nodes_visited: u64,
}

/// Tests each set for a completion to a perfect difference set.
pub fn check_extendable(group: &AbelianGroup, sets: &[Vec<usize>], exhaustive: bool, nodes: u64) -> ExtendableReport {
    let completions: Vec<Option<usize>> =
        sets.par_iter().map(|s| completes_to_perfect_difference_set(group, s)).collect();
    let extendable = completions.iter().filter(|c| c.is_some()).count();
    let counterexample = sets
        .iter()
        .zip(&completions)
        .find(|(_, c)| c.is_none())
        .map(|(s, _)| s.iter().map(|&x| group.element(x)).collect());
    let verdict = match (&counterexample, exhaustive) {
        (Some(_), _) => Verdict::Fails,
        (None, true) => Verdict::Holds,
        (None, false) => Verdict::Inconclusive,
    };
    ExtendableReport {
        group: group.clone(),
        verdict,
        counterexample,
        sets_tested: sets.len(),
        extendable,
        nodes_visited: nodes,
    }
}

/// Checks on `Z/(p²+p+1)` whether every Sidon set of size `p` extends to a
/// perfect difference set of size `p + 1`. Failures at small `p` are
/// reported, not read as refutations.
pub fn test_extendable(p: u64, budget: u64) -> Result<ExtendableReport> {
    if !crate::algebra::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = AbelianGroup::cyclic(p * p + p + 1);
    let e = enumerate_sidon(&group, p as usize, budget);
    debug_assert!(e.sets.iter().all(|s| is_sidon(&group, s).is_sidon));
    Ok(check_extendable(&group, &e.sets, e.exhaustive, e.nodes_visited))
}

/// Group orders of the six shapes a group carrying a dense Sidon set may
/// have, for prime powers `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrderForm {
    #[serde(rename = "q^2+q+1")]
    Singer,
    #[serde(rename = "q^2")]
    Square,
    #[serde(rename = "q^2-1")]
    SquareMinusOne,
    #[serde(rename = "q^2-sqrt(q)")]
    SquareMinusRoot,
    #[serde(rename = "q(q-1)")]
    Pronic,
    #[serde(rename = "(q-1)^2")]
    ShiftedSquare,
}

impl OrderForm {
    pub const ALL: [OrderForm; 6] = [
        OrderForm::Singer,
        OrderForm::Square,
        OrderForm::SquareMinusOne,
        OrderForm::SquareMinusRoot,
        OrderForm::Pronic,
        OrderForm::ShiftedSquare,
    ];

    /// Value at `q`, or `None` when the form needs a square `q` and `q` is not.
    pub fn eval(self, q: u64) -> Option<u64> {
        Some(match self {
            OrderForm::Singer => q * q + q + 1,
            OrderForm::Square => q * q,
            OrderForm::SquareMinusOne => q * q - 1,
            OrderForm::SquareMinusRoot => {
                let r = isqrt(q);
                if r * r != q {
                    return None;
                }
                q * q - r
            }
            OrderForm::Pronic => q * (q - 1),
            OrderForm::ShiftedSquare => (q - 1) * (q - 1),
        })
    }
}

impl std::fmt::Display for OrderForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderMatch {
    pub form: OrderForm,
    pub q: u64,
}

/// Every prime power `q > 1` and form with value `n`.
pub fn admissible_orders(n: u64) -> Vec<OrderMatch> {
    let mut out = Vec::new();
    for form in OrderForm::ALL {
        // every form is increasing in q and at least (q-1)², so q <= sqrt(n) + 1
        let r = isqrt(n);
        for q in (r.saturating_sub(1)).max(2)..=r + 2 {
            if prime_power(q).is_some() && form.eval(q) == Some(n) {
                out.push(OrderMatch { form, q });
            }
        }
    }
    out
}
