//! Rounded log-ratios of prime generators in real quadratic fields.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::hiprec;
use crate::algebra::arith::{is_squarefree, isqrt, kronecker, primes_up_to};
use crate::algebra::AbelianGroup;
use crate::sidon::is_sidon;
use crate::{Error, Result};

/// `(X + Y√D) / 2`, kept as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfInteger {
    pub x: String,
    pub y: String,
}

impl HalfInteger {
    fn new(x: &BigInt, y: &BigInt) -> Self {
        HalfInteger { x: x.to_string(), y: y.to_string() }
    }

    /// `(a, b)` with the element equal to `a + b√D`, when both are integers.
    pub fn integral(&self) -> Option<(BigInt, BigInt)> {
        let x: BigInt = self.x.parse().ok()?;
        let y: BigInt = self.y.parse().ok()?;
        let two = BigInt::from(2);
        (x.clone() % &two == BigInt::zero() && y.clone() % &two == BigInt::zero()).then(|| (x / &two, y / &two))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeGenerator {
    pub p: u64,
    /// Generator of a prime above `p`, the larger of the two conjugates.
    pub generator: HalfInteger,
    pub norm_sign: i32,
    pub element: u64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealQuadratic {
    pub d: u64,
    pub asserted_class_number_one: bool,
    pub discriminant: u64,
    /// Fundamental unit of the ring of integers, greater than one.
    pub unit: HalfInteger,
    pub unit_norm: i32,
    pub period: usize,
    /// Natural log of the fundamental unit.
    pub regulator: f64,
    pub modulus: u64,
    pub split_primes: Vec<u64>,
    /// Split primes without a principal generator of small norm.
    pub skipped: Vec<u64>,
    pub generators: Vec<PrimeGenerator>,
    /// Primes whose element was kept.
    pub primes: Vec<u64>,
    pub elements: Vec<u64>,
    pub sidon: bool,
    pub min_margin: Option<f64>,
}

pub(super) struct Expansion {
    /// `X, Y` of the unit, with `X² - D Y² = ±4`.
    pub unit: (BigInt, BigInt, i32),
    pub period: usize,
    pub found: Vec<(u64, BigInt, BigInt, i32)>,
}

/// Walks the continued fraction of the ring-of-integers generator
/// `ω = (P₀ + √D) / Q₀` up to the first unit. Each convergent `h/k` gives
/// `h - kω` of norm `(-1)^(i+1) Q_{i+1} / Q₀`; its conjugate is returned in
/// `(X + Y√D) / 2` form.
pub(super) fn expand(d: u64, wanted: &[u64]) -> Expansion {
    let (p0, q0): (i64, i64) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let s = isqrt(d) as i64;
    let di = d as i64;
    let (mut p, mut q) = (p0, q0);
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut found = Vec::new();
    let mut i = 0usize;
    loop {
        let a = (p + s).div_euclid(q);
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        p = a * q - p;
        q = (di - p * p) / q;
        let sign = if i % 2 == 0 { -1 } else { 1 };
        let conj = if q0 == 1 { (&h << 1u32, &k << 1u32) } else { ((&h << 1u32) - &k, k.clone()) };
        if q % q0 == 0 {
            let norm = (q / q0) as u64;
            if norm == 1 {
                return Expansion { unit: (conj.0, conj.1, sign), period: i + 1, found };
            }
            if wanted.contains(&norm) && !found.iter().any(|f: &(u64, BigInt, BigInt, i32)| f.0 == norm) {
                found.push((norm, conj.0, conj.1, sign));
            }
        }
        i += 1;
    }
}

/// `ln((X + Y√D) / 2)` as a fixed-point value at `prec` bits.
pub(super) fn ln_half(x: &BigInt, y: &BigInt, d: u64, prec: u32) -> BigInt {
    let w = prec + 64;
    let root = (BigInt::from(d) << (2 * w)).sqrt();
    let v = ((x << w) + y * root) >> 1u32;
    hiprec::ln(&v, w) >> 64u32
}

/// Sidon set in `Z/M` with `M = ⌈r⌉` for the regulator `r`: one element
/// `⌊(M/r) log|𝔭/𝔭̄|⌋ mod M` per split prime `p` with `10⁴ p⁴ <= D`
/// whose prime ideals are principal.
pub fn real_quadratic(d: u64, asserted_class_number_one: bool) -> Result<RealQuadratic> {
    if d < 2 {
        return Err(Error::precondition("D must be at least 2"));
    }
    let s = isqrt(d);
    if s * s == d {
        return Err(Error::precondition(format!("{d} is a perfect square")));
    }
    if !is_squarefree(d) {
        return Err(Error::precondition(format!("{d} is not squarefree")));
    }
    let disc = if d % 4 == 1 { d } else { 4 * d };
    let mut bound = 1u64;
    while 10_000 * (bound + 1).pow(4) <= d {
        bound += 1;
    }
    let split_primes: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|&p| 10_000 * p.pow(4) <= d && kronecker(disc as i64, p) == 1)
        .collect();
    let ex = expand(d, &split_primes);
    let (ux, uy, unorm) = ex.unit.clone();
    debug_assert_eq!(&ux * &ux - BigInt::from(d) * &uy * &uy, BigInt::from(4 * unorm));

    let r_floor = hiprec::guarded_floor(|prec| ln_half(&ux, &uy, d, prec));
    let modulus = r_floor.floor.to_u64().expect("regulator fits") + 1;
    let regulator = hiprec::to_f64(&ln_half(&ux, &uy, d, 64), 64);

    let mut generators = Vec::new();
    let mut skipped = Vec::new();
    for &p in &split_primes {
        let Some((_, x, y, sign)) = ex.found.iter().find(|f| f.0 == p) else {
            skipped.push(p);
            continue;
        };
        debug_assert_eq!((x * x - BigInt::from(d) * y * y).abs(), BigInt::from(4 * p));
        // log|β/β̄| = ln p - 2 ln|β̄| for the small conjugate β.
        let g = hiprec::guarded_floor(|prec| {
            let w = prec + 64;
            let lr = ln_half(&ux, &uy, d, w);
            let ratio = hiprec::ln_int(&BigInt::from(p), w) - (ln_half(x, y, d, w) << 1u32);
            ((ratio * BigInt::from(modulus)) << prec) / lr
        });
        let element = g.floor.mod_floor_u64(modulus);
        generators.push(PrimeGenerator {
            p,
            generator: HalfInteger::new(x, y),
            norm_sign: *sign,
            element,
            margin: g.margin,
        });
    }
    if !skipped.is_empty() && asserted_class_number_one {
        log::warn!("class number one was asserted but primes {skipped:?} have no generator");
    }

    let mut primes = Vec::new();
    let mut elements: Vec<u64> = Vec::new();
    for g in &generators {
        let neg = (modulus - g.element) % modulus;
        if elements.contains(&g.element) || elements.contains(&neg) {
            continue;
        }
        primes.push(g.p);
        elements.push(g.element);
    }
    let group = AbelianGroup::cyclic(modulus);
    let set: Vec<usize> = elements.iter().map(|&e| e as usize).collect();
    let sidon = is_sidon(&group, &set).is_sidon;
    let min_margin = generators.iter().map(|g| g.margin).reduce(f64::min);
    Ok(RealQuadratic {
        d,
        asserted_class_number_one,
        discriminant: disc,
        unit: HalfInteger::new(&ux, &uy),
        unit_norm: unorm,
        period: ex.period,
        regulator,
        modulus,
        split_primes,
        skipped,
        generators,
        primes,
        elements,
        sidon,
        min_margin,
    })
}

trait ModFloor {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        let m = BigInt::from(m);
        (((self % &m) + &m) % &m).to_u64().expect("reduced")
    }
}
