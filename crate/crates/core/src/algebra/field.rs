//! Finite fields `GF(p^d)` in polynomial representation.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coefficients over the canonical basis `1, t, ..., t^{d-1}`. Products go
//! through exp/log tables built from a verified generator; the plain
//! polynomial route ([`FiniteField::mul_poly`]) is kept as an independent
//! check and is what the discrete logarithm uses.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::arith::{factorize, is_prime};
use super::poly::{self, Poly};
use crate::{Error, Result};

/// Largest field order built unless a cap is passed explicitly.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Inner {
    p: u64,
    d: usize,
    q: u64,
    modulus: Poly,
    generator: FieldElement,
    weights: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p(), self.degree(), self.modulus())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.modulus() == other.modulus()
    }
}

impl Eq for FiniteField {}

/// JSON form of a field: `{"p":…, "d":…, "modulus":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub d: usize,
    pub modulus: Vec<u64>,
}

impl FiniteField {
    /// `GF(p^d)` with the canonical modulus.
    pub fn new(p: u64, d: usize) -> Result<Self> {
        Self::create(p, d, None, DEFAULT_FIELD_CAP)
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, d) = super::arith::prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::new(p, d)
    }

    pub fn with_modulus(p: u64, d: usize, modulus: &[u64]) -> Result<Self> {
        Self::create(p, d, Some(modulus), DEFAULT_FIELD_CAP)
    }

    /// Full constructor. When `modulus` is `None` the canonical one is used:
    /// the monic irreducible of degree `d` whose lower coefficients, read as
    /// base-`p` digits, form the smallest integer.
    pub fn create(p: u64, d: usize, modulus: Option<&[u64]>, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let order = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if order > cap as u128 || order > u32::MAX as u128 {
            return Err(Error::FieldTooLarge { order, cap });
        }
        let q = order as u64;
        let modulus = match modulus {
            Some(m) => {
                let m = poly::trim(m.iter().map(|c| c % p).collect());
                let found = poly::degree(&m).unwrap_or(0);
                if found != d {
                    return Err(Error::DegreeMismatch { expected: d, found });
                }
                if m[d] != 1 {
                    return Err(Error::NotMonic);
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(Error::Reducible(p));
                }
                m
            }
            None => (0..q)
                .map(|i| poly::monic_from_index(i, d, p))
                .find(|f| poly::is_irreducible(f, p))
                .expect("an irreducible polynomial exists in every degree"),
        };
        let mut weights = Vec::with_capacity(d);
        let mut w = 1u64;
        for _ in 0..d {
            weights.push(w as u32);
            w *= p;
        }
        let mut inner = Inner {
            p,
            d,
            q,
            modulus,
            generator: FieldElement::ONE,
            weights,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let generator = find_generator(&inner);
        inner.generator = generator;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let gpoly = to_poly(&inner, generator);
        let mut cur: Poly = vec![1];
        for k in 0..(q - 1) {
            let idx = from_poly(&inner, &cur);
            exp.push(idx.0);
            log[idx.0 as usize] = k as u32;
            cur = poly::mul_mod(&cur, &gpoly, &inner.modulus, p);
        }
        inner.exp = exp;
        inner.log = log;
        Ok(FiniteField { inner: Arc::new(inner) })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::with_modulus(spec.p, spec.d, &spec.modulus)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p(), d: self.degree(), modulus: self.modulus().to_vec() }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.d
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.inner.generator
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q as u32).map(FieldElement)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.order() {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::InvalidParameter(format!("index {index} outside GF({})", self.order())))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidParameter(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(from_poly(&self.inner, coeffs))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut k = a.0 as u64;
        (0..self.degree())
            .map(|_| {
                let c = k % self.p();
                k /= self.p();
                c
            })
            .collect()
    }

    /// The class of `t` (the root of the modulus); equals `p` in index form
    /// unless `d = 1`.
    pub fn t(&self) -> FieldElement {
        from_poly(&self.inner, &[0, 1])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.inner.d == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.0, b.0);
        let p32 = p as u32;
        let mut out = 0u32;
        for &w in &self.inner.weights {
            let s = (x % p32 + y % p32) % p32;
            out += s * w;
            x /= p32;
            y /= p32;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p as u32;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        for &w in &self.inner.weights {
            let c = x % p;
            out += ((p - c) % p) * w;
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.inner.q - 1;
        let k = (self.inner.log[a.0 as usize] as u64 + self.inner.log[b.0 as usize] as u64) % n;
        FieldElement(self.inner.exp[k as usize])
    }

    /// Product computed by polynomial multiplication and reduction, without
    /// the exp/log tables.
    pub fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let pa = to_poly(&self.inner, a);
        let pb = to_poly(&self.inner, b);
        from_poly(&self.inner, &poly::mul_mod(&pa, &pb, &self.inner.modulus, self.inner.p))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.inner.q - 1;
        let k = (n - self.inner.log[a.0 as usize] as u64) % n;
        Ok(FieldElement(self.inner.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.inner.q - 1;
        let k = (self.inner.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as usize;
        FieldElement(self.inner.exp[k])
    }

    /// `g^k` for the fixed generator `g`.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.inner.exp[(k % (self.inner.q - 1)) as usize])
    }

    /// Table lookup of the logarithm to the fixed generator.
    pub fn log(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.inner.log[a.0 as usize] as u64)
    }

    pub fn frobenius(&self, a: FieldElement, times: usize) -> FieldElement {
        let mut x = a;
        for _ in 0..times {
            x = self.pow(x, self.inner.p);
        }
        x
    }

    fn check_subfield(&self, e: usize) -> Result<()> {
        if e == 0 || self.degree() % e != 0 {
            return Err(Error::NotASubfield { sub: e, degree: self.degree() });
        }
        Ok(())
    }

    /// Trace to the subfield `GF(p^e)`: the sum of `a^{p^{e i}}` for
    /// `i < d/e`. The result lies in the subfield.
    pub fn trace_to_subfield(&self, a: FieldElement, e: usize) -> Result<FieldElement> {
        self.check_subfield(e)?;
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.degree() / e {
            acc = self.add(acc, x);
            x = self.frobenius(x, e);
        }
        Ok(acc)
    }

    /// Norm to the subfield `GF(p^e)`.
    pub fn norm_to_subfield(&self, a: FieldElement, e: usize) -> Result<FieldElement> {
        self.check_subfield(e)?;
        let mut acc = FieldElement::ONE;
        let mut x = a;
        for _ in 0..self.degree() / e {
            acc = self.mul(acc, x);
            x = self.frobenius(x, e);
        }
        Ok(acc)
    }

    pub fn in_subfield(&self, a: FieldElement, e: usize) -> bool {
        self.frobenius(a, e) == a
    }

    /// Discrete logarithm to the fixed generator by baby-step giant-step,
    /// using only polynomial arithmetic.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        let n = self.inner.q - 1;
        let m = (n as f64).sqrt().ceil() as u64 + 1;
        let mut baby: HashMap<u32, u64> = HashMap::with_capacity(m as usize);
        let mut cur = FieldElement::ONE;
        let g = self.generator();
        for j in 0..m {
            baby.entry(cur.0).or_insert(j);
            cur = self.mul_poly(cur, g);
        }
        // factor g^{-m}
        let gm = from_poly(
            &self.inner,
            &poly::pow_mod(&to_poly(&self.inner, g), (n - (m % n)) as u128, &self.inner.modulus, self.inner.p),
        );
        let mut gamma = x;
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma.0) {
                return Ok((i * m + j) % n);
            }
            gamma = self.mul_poly(gamma, gm);
        }
        unreachable!("generator has full order")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        let k = self.log(a)?;
        let n = self.order() - 1;
        Ok(n / super::arith::gcd(n, k))
    }
}

fn to_poly(inner: &Inner, a: FieldElement) -> Poly {
    let mut k = a.0 as u64;
    let mut c = Vec::with_capacity(inner.d);
    for _ in 0..inner.d {
        c.push(k % inner.p);
        k /= inner.p;
    }
    poly::trim(c)
}

fn from_poly(inner: &Inner, c: &[u64]) -> FieldElement {
    let r = if c.len() > inner.d { poly::rem(c, &inner.modulus, inner.p) } else { c.to_vec() };
    let mut idx = 0u32;
    for (i, &ci) in r.iter().enumerate() {
        idx += (ci % inner.p) as u32 * inner.weights[i];
    }
    FieldElement(idx)
}

/// First element (in index order) whose order is `q - 1`, tested by
/// checking `g^{(q-1)/r} != 1` for every prime `r | q - 1`.
fn find_generator(inner: &Inner) -> FieldElement {
    let n = inner.q - 1;
    let primes: Vec<u64> = factorize(n).into_iter().map(|(r, _)| r).collect();
    for idx in 1..inner.q as u32 {
        let g = to_poly(inner, FieldElement(idx));
        let ok = primes.iter().all(|&r| {
            let h = poly::pow_mod(&g, (n / r) as u128, &inner.modulus, inner.p);
            h != vec![1]
        });
        if ok {
            return FieldElement(idx);
        }
    }
    unreachable!("every finite field has a primitive element")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_generator() {
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(f.generator(), FieldElement(2));
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.generator(), FieldElement(3));
        assert_eq!(f7.discrete_log(FieldElement(1)).unwrap(), 0);
        assert_eq!(f7.discrete_log(FieldElement(3)).unwrap(), 1);
        assert_eq!(f7.discrete_log(FieldElement(6)).unwrap(), 3);
    }

    #[test]
    fn gf9_canonical_modulus_and_products() {
        // t^2 + 1 has no root mod 3
        assert!((0..3u64).all(|x| (x * x + 1) % 3 != 0));
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let t = f.t();
        assert_eq!(f.mul(t, t), FieldElement(2));
        assert_eq!(f.trace_to_subfield(t, 1).unwrap(), FieldElement::ZERO);
    }

    #[test]
    fn modulus_errors() {
        assert_eq!(
            FiniteField::with_modulus(2, 1, &[0, 0, 1]).unwrap_err(),
            Error::DegreeMismatch { expected: 1, found: 2 }
        );
        assert_eq!(FiniteField::with_modulus(2, 2, &[1, 0, 1]).unwrap_err(), Error::Reducible(2));
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(FiniteField::create(2, 30, None, DEFAULT_FIELD_CAP), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FiniteField::new(5, 2).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.discrete_log(FieldElement::ZERO), Err(Error::LogOfZero));
        assert!(matches!(f.trace_to_subfield(FieldElement::ONE, 3), Err(Error::NotASubfield { .. })));
    }

    #[test]
    fn table_and_polynomial_products_agree() {
        for (p, d) in [(2, 4), (3, 3), (5, 2), (7, 1), (2, 6)] {
            let f = FiniteField::new(p, d).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b));
                }
            }
        }
    }
}
