//! Fixed-point arithmetic on big integers: a value `x` at precision `p` is
//! the integer `round(x * 2^p)` (up to a few units of error).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extra bits carried internally by the series evaluations.
const GUARD: u32 = 32;

pub fn one(prec: u32) -> BigInt {
    BigInt::one() << prec
}

pub fn from_int(n: impl Into<BigInt>, prec: u32) -> BigInt {
    n.into() << prec
}

pub fn mul(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    (a * b) >> prec
}

pub fn div(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    (a << prec).div_floor(b)
}

/// `num / den` at the given precision.
pub fn ratio(num: &BigInt, den: &BigInt, prec: u32) -> BigInt {
    (num << prec).div_floor(den)
}

pub fn sqrt(a: &BigInt, prec: u32) -> BigInt {
    assert!(!a.is_negative(), "square root of a negative value");
    (a << prec).sqrt()
}

pub fn to_f64(a: &BigInt, prec: u32) -> f64 {
    let shift = prec.saturating_sub(60);
    let top: BigInt = a >> shift;
    let v: f64 = top.to_string().parse().unwrap_or(f64::NAN);
    v / 2f64.powi((prec - shift) as i32)
}

/// `sum_{k >= 0} x^{2k+1} / (2k+1)` for a fixed-point `|x| < 1`.
fn atanh_series(x: &BigInt, prec: u32) -> BigInt {
    if x.is_negative() {
        return -atanh_series(&-x, prec);
    }
    let x2 = mul(x, x, prec);
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / k;
        term = mul(&term, &x2, prec);
        k += 2;
    }
    sum
}

/// `sum_{k >= 0} (-1)^k x^{2k+1} / (2k+1)` for a fixed-point `|x| < 1`.
fn atan_series(x: &BigInt, prec: u32) -> BigInt {
    if x.is_negative() {
        return -atan_series(&-x, prec);
    }
    let x2 = mul(x, x, prec);
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    let mut sign = true;
    while !term.is_zero() {
        if sign {
            sum += &term / k;
        } else {
            sum -= &term / k;
        }
        sign = !sign;
        term = mul(&term, &x2, prec);
        k += 2;
    }
    sum
}

pub fn ln2(prec: u32) -> BigInt {
    let w = prec + GUARD;
    let third = ratio(&BigInt::one(), &BigInt::from(3), w);
    (atanh_series(&third, w) << 1u32) >> GUARD
}

pub fn pi(prec: u32) -> BigInt {
    let w = prec + GUARD;
    let a = atan_series(&ratio(&BigInt::one(), &BigInt::from(5), w), w);
    let b = atan_series(&ratio(&BigInt::one(), &BigInt::from(239), w), w);
    ((a << 4u32) - (b << 2u32)) >> GUARD
}

/// Natural log of a positive fixed-point value.
pub fn ln(x: &BigInt, prec: u32) -> BigInt {
    assert!(x.is_positive(), "logarithm of a nonpositive value");
    let w = prec + GUARD;
    let x = x << GUARD;
    // x = m * 2^e with m in [1, 2)
    let e = x.bits() as i64 - 1 - w as i64;
    let m = if e >= 0 { &x >> (e as u64) } else { &x << ((-e) as u64) };
    let one = one(w);
    let y = ratio(&(&m - &one), &(&m + &one), w);
    let ln_m = atanh_series(&y, w) << 1u32;
    (ln_m + ln2(w) * e) >> GUARD
}

pub fn ln_int(n: &BigInt, prec: u32) -> BigInt {
    ln(&(n << prec), prec)
}

/// Arctangent of a fixed-point value with `|x| <= 1`.
fn atan_small(x: &BigInt, prec: u32) -> BigInt {
    let w = prec + GUARD;
    let mut y = x << GUARD;
    let one = one(w);
    // two halvings: atan(y) = 2 atan(y / (1 + sqrt(1 + y^2)))
    for _ in 0..2 {
        let r = sqrt(&(&one + mul(&y, &y, w)), w);
        y = div(&y, &(&one + r), w);
    }
    (atan_series(&y, w) << 2u32) >> GUARD
}

/// The argument of `x + iy` in `(-π, π]`, for integers not both zero.
pub fn atan2(y: &BigInt, x: &BigInt, prec: u32) -> BigInt {
    assert!(!(x.is_zero() && y.is_zero()), "argument of zero");
    let w = prec + 4;
    let p = pi(w);
    let half_pi = &p >> 1u32;
    let r = if y.abs() <= x.abs() {
        let base = atan_small(&ratio(y, x, w), w);
        match (x.sign(), y.sign()) {
            (Sign::Plus, _) => base,
            (_, Sign::Minus) => base - &p,
            _ => base + &p,
        }
    } else {
        let base = atan_small(&ratio(x, y, w), w);
        if y.is_positive() {
            half_pi - base
        } else {
            -half_pi - base
        }
    };
    r >> 4u32
}

/// `floor(x)` of a fixed-point value and its distance to the nearest
/// integer, as a fixed-point value.
pub fn floor_and_margin(x: &BigInt, prec: u32) -> (BigInt, BigInt) {
    let unit = one(prec);
    let (q, r) = x.div_mod_floor(&unit);
    let margin = std::cmp::min(r.clone(), &unit - &r);
    (q, margin)
}

/// Outcome of a guarded floor.
#[derive(Debug, Clone, PartialEq)]
pub struct Guarded {
    pub floor: BigInt,
    /// Distance of the value to the nearest integer.
    pub margin: f64,
    pub precision: u32,
}

/// Starting working precision for guarded evaluations.
pub const BASE_PRECISION: u32 = 128;
const BOUNDARY_BITS: u32 = 20;
const MAX_PRECISION: u32 = 1 << 14;

/// Floors a real value given by `eval(prec)`. If the value is within
/// `2^-20` of an integer the evaluation is repeated with doubled
/// precision until the distance exceeds the error of the computation.
pub fn guarded_floor(eval: impl Fn(u32) -> BigInt) -> Guarded {
    let mut prec = BASE_PRECISION;
    let mut threshold = prec - BOUNDARY_BITS;
    loop {
        let v = eval(prec);
        let (floor, margin) = floor_and_margin(&v, prec);
        let safe = margin.bits() > threshold as u64;
        if safe || prec >= MAX_PRECISION {
            if !safe {
                log::warn!("value within 2^-{} of an integer; floor may be off by one", prec / 2);
            }
            return Guarded { floor, margin: to_f64(&margin, prec), precision: prec };
        }
        log::debug!("value near an integer boundary, recomputing at {} bits", prec * 2);
        prec *= 2;
        threshold = prec / 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &BigInt, b: f64, tol: f64) -> bool {
        (to_f64(a, P) - b).abs() < tol
    }

    #[test]
    fn constants() {
        assert!(close(&ln2(P), std::f64::consts::LN_2, 1e-15));
        assert!(close(&pi(P), std::f64::consts::PI, 1e-15));
        // ln 2 to 40 digits
        let digits = (ln2(P) * BigInt::from(10).pow(40)) >> P;
        assert_eq!(digits.to_string(), "6931471805599453094172321214581765680755");
    }

    #[test]
    fn logs_are_additive() {
        for (a, b) in [(2u64, 3u64), (5, 7), (97, 1009), (1, 13)] {
            let la = ln_int(&a.into(), P);
            let lb = ln_int(&b.into(), P);
            let lab = ln_int(&(a * b).into(), P);
            let diff: BigInt = (la + lb - lab).abs();
            assert!(diff.bits() < 8, "{a} {b}");
        }
        assert!(close(&ln_int(&BigInt::from(10), P), 10f64.ln(), 1e-14));
        let half = ratio(&1.into(), &2.into(), P);
        assert!(close(&ln(&half, P), -std::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn arguments_in_all_quadrants() {
        for (y, x) in [(1i64, 1i64), (24, -7), (-3, -4), (-5, 12), (0, -1), (7, 0), (-7, 0), (120, -119)] {
            let a = atan2(&y.into(), &x.into(), P);
            assert!(close(&a, (y as f64).atan2(x as f64), 1e-14), "{y} {x}");
        }
    }

    #[test]
    fn guard_floors_correctly() {
        let g = guarded_floor(|p| ln_int(&BigInt::from(2), p) * 300);
        assert_eq!(g.floor, BigInt::from(207));
        assert!(g.margin > 0.05);
        // an exact integer value forces the escalation path and still floors
        let g = guarded_floor(|p| BigInt::from(5) << p);
        assert_eq!(g.floor, BigInt::from(5));
        assert_eq!(g.margin, 0.0);
    }
}
