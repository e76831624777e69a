//! Rounded homomorphisms from prime ideals into a metric group, with the two
//! exhaustive quadruple checks under which the rounded image is Sidon.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::classgroup::{fundamental_discriminant, prime_form, QuadraticClassGroup};
use super::realquad::{expand, ln_half};
use super::{hiprec, two_squares, unit_group};
use crate::algebra::arith::{gcd, is_squarefree, isqrt, kronecker, primes_up_to};
use crate::algebra::group::Presentation;
use crate::algebra::AbelianGroup;
use crate::sidon::is_sidon;
use crate::{Error, Result};

pub const DEFAULT_PRIME_CAP: usize = 3000;
const APPROX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumberField {
    Rationals,
    Gaussian,
    ImaginaryQuadratic { d: u64 },
    RealQuadratic { d: u64 },
}

/// One factor of the target group together with its lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TargetFactor {
    /// `log N𝔭` in `R`, lattice `(num/den) Z`.
    Real { num: u64, den: u64 },
    /// An angle in `R/Z`, lattice `(1/steps) Z / Z`. Gaussian integers use
    /// `arg(z⁴)/2π`; real quadratic fields use `log|z/z̄| / r`, with the
    /// ceiling of the regulator as the default number of steps.
    Circle {
        #[serde(default)]
        steps: Option<u64>,
    },
    /// `(Z/m)^×` over the rationals, the class group for imaginary
    /// quadratic fields.
    Finite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    Floor,
    /// Nearest lattice point; ties go to the smaller one.
    #[default]
    Nearest,
}

fn default_modulus() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkSpec {
    pub field: NumberField,
    #[serde(default = "default_modulus")]
    pub modulus: u64,
    /// Norm cap `R`.
    pub bound: u64,
    pub target: Vec<TargetFactor>,
    #[serde(default)]
    pub rounding: Rounding,
    /// Use split primes only.
    #[serde(default)]
    pub split_only: bool,
}

impl FrameworkSpec {
    /// The spec whose output equals [`super::log_primes`].
    pub fn log_primes(x: u64) -> Self {
        FrameworkSpec {
            field: NumberField::Rationals,
            modulus: 1,
            bound: x,
            target: vec![TargetFactor::Real { num: 1, den: 3 * x * x }],
            rounding: Rounding::Floor,
            split_only: false,
        }
    }

    /// The spec whose output equals [`super::quotient_ring_primes`].
    pub fn quotient_ring(m: u64) -> Self {
        FrameworkSpec {
            field: NumberField::Rationals,
            modulus: m,
            bound: isqrt(m),
            target: vec![TargetFactor::Finite],
            rounding: Rounding::Floor,
            split_only: false,
        }
    }

    /// The spec whose output equals [`super::gaussian_angles`].
    pub fn gaussian_angles(n: u64) -> Self {
        FrameworkSpec {
            field: NumberField::Gaussian,
            modulus: 1,
            bound: isqrt(n) / 4,
            target: vec![TargetFactor::Circle { steps: Some(n) }],
            rounding: Rounding::Floor,
            split_only: true,
        }
    }

    /// Logs and residues together: `R × (Z/m)^×` with lattice step `m/(5R²)`.
    pub fn hybrid(m: u64, bound: u64) -> Self {
        FrameworkSpec {
            field: NumberField::Rationals,
            modulus: m,
            bound,
            target: vec![TargetFactor::Real { num: m, den: 5 * bound * bound }, TargetFactor::Finite],
            rounding: Rounding::Nearest,
            split_only: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.bound < 2 {
            return Err(Error::precondition("the norm bound must be at least 2"));
        }
        if self.modulus == 0 {
            return Err(Error::precondition("the modulus must be positive"));
        }
        if self.target.is_empty() {
            return Err(Error::precondition("the target group has no factors"));
        }
        for t in &self.target {
            match *t {
                TargetFactor::Real { num, den } if num == 0 || den == 0 => {
                    return Err(Error::precondition("lattice steps must be positive"))
                }
                TargetFactor::Circle { steps: Some(0) } => {
                    return Err(Error::precondition("circle lattices need at least one step"))
                }
                _ => {}
            }
        }
        if self.modulus > 1 && self.field != NumberField::Rationals {
            return Err(Error::Unsupported("a modulus other than 1 is only supported over the rationals".into()));
        }
        let supported = |t: &TargetFactor| match (self.field, t) {
            (_, TargetFactor::Real { .. }) => true,
            (NumberField::Gaussian | NumberField::RealQuadratic { .. }, TargetFactor::Circle { .. }) => true,
            (NumberField::Rationals | NumberField::ImaginaryQuadratic { .. }, TargetFactor::Finite) => true,
            _ => false,
        };
        if let Some(t) = self.target.iter().find(|t| !supported(t)) {
            return Err(Error::Unsupported(format!("target factor {t:?} is not available for {:?}", self.field)));
        }
        if let NumberField::Gaussian = self.field {
            if self.target.iter().any(|t| matches!(t, TargetFactor::Circle { steps: None })) {
                return Err(Error::precondition("circle factors over the Gaussian integers need explicit steps"));
            }
        }
        if let NumberField::RealQuadratic { .. } = self.field {
            if self.target.iter().filter(|t| matches!(t, TargetFactor::Circle { .. })).count() > 1 {
                return Err(Error::Unsupported("at most one circle factor for real quadratic fields".into()));
            }
        }
        match self.field {
            NumberField::ImaginaryQuadratic { d } | NumberField::RealQuadratic { d } => {
                if d < 2 && matches!(self.field, NumberField::RealQuadratic { .. }) || d == 0 || !is_squarefree(d) {
                    return Err(Error::precondition(format!("D = {d} must be squarefree (and at least 2 if real)")));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Generator {
    Rational(u64),
    Gaussian(i64, i64),
    /// Group index in the class group.
    Class(usize),
    /// Ideal generated by the small conjugate of `(X + Y√D) / 2`.
    RealQuad(BigInt, BigInt),
    /// An ideal equal to its conjugate; its log-ratio is zero modulo `r`.
    SelfConjugate,
}

#[derive(Debug, Clone)]
struct Ideal {
    label: String,
    norm: u64,
    generator: Generator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameworkPrime {
    pub label: String,
    pub norm: u64,
    /// Lattice coordinates, one per target factor.
    pub point: Vec<i64>,
    pub kept: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameworkResult {
    pub spec: FrameworkSpec,
    /// Candidate primes, one per conjugate pair, by ascending norm.
    pub primes: Vec<FrameworkPrime>,
    pub conjugates_discarded: usize,
    /// Rational primes whose ideals have no generator of small norm.
    pub skipped: Vec<u64>,
    pub elements: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub check_i: bool,
    pub check_ii: bool,
    /// Indices into `primes` of a pair-of-pairs violating the check.
    pub violation_i: Option<[usize; 4]>,
    pub violation_ii: Option<[usize; 4]>,
    /// Finite group the elements are verified in.
    pub group: AbelianGroup,
    #[serde(skip)]
    pub set: Vec<usize>,
    pub sidon: bool,
    pub min_margin: Option<f64>,
    pub rounding_note: String,
}

struct Context {
    spec: FrameworkSpec,
    /// Group for the finite factor and the index of every candidate in it.
    finite: Option<AbelianGroup>,
    unit_index: Vec<usize>,
    d: u64,
    /// Fundamental unit and regulator ceiling for real quadratic fields.
    unit: Option<(BigInt, BigInt)>,
    circle_steps: u64,
}

enum Exact {
    Int(i128),
    Pair(i128, i128),
}

fn ideals(spec: &FrameworkSpec, ctx: &mut Context) -> Result<(Vec<Ideal>, usize, Vec<u64>)> {
    let r = spec.bound;
    let mut out: Vec<Ideal> = Vec::new();
    let mut conj = 0usize;
    let mut skipped = Vec::new();
    let inert_ok = |p: u64| !spec.split_only && p.checked_mul(p).is_some_and(|n| n <= r);
    match spec.field {
        NumberField::Rationals => {
            for p in primes_up_to(r).into_iter().filter(|&p| gcd(p, spec.modulus) == 1) {
                out.push(Ideal { label: p.to_string(), norm: p, generator: Generator::Rational(p) });
            }
        }
        NumberField::Gaussian => {
            for p in primes_up_to(r) {
                match p % 4 {
                    2 if !spec.split_only => {
                        out.push(Ideal { label: "1+1i".into(), norm: 2, generator: Generator::Gaussian(1, 1) })
                    }
                    1 => {
                        let (a, b) = two_squares(p).expect("Fermat");
                        out.push(Ideal {
                            label: format!("{a}+{b}i"),
                            norm: p,
                            generator: Generator::Gaussian(a as i64, b as i64),
                        });
                        conj += 1;
                    }
                    3 if inert_ok(p) => out.push(Ideal {
                        label: p.to_string(),
                        norm: p * p,
                        generator: Generator::Gaussian(p as i64, 0),
                    }),
                    _ => {}
                }
            }
        }
        NumberField::ImaginaryQuadratic { d } => {
            let disc = fundamental_discriminant(d);
            let cg = QuadraticClassGroup::new(disc)?;
            for p in primes_up_to(r) {
                let k = kronecker(disc, p);
                match k {
                    1 | 0 if k == 1 || !spec.split_only => {
                        let f = prime_form(disc, p).expect("split or ramified");
                        out.push(Ideal {
                            label: format!("({}, {}, {})", f.0, f.1, f.2),
                            norm: p,
                            generator: Generator::Class(cg.class_of(f)?),
                        });
                        if k == 1 {
                            conj += 1;
                        }
                    }
                    -1 if inert_ok(p) => {
                        out.push(Ideal { label: format!("({p})"), norm: p * p, generator: Generator::Class(0) })
                    }
                    _ => {}
                }
            }
            ctx.finite = Some(cg.group().clone());
        }
        NumberField::RealQuadratic { d } => {
            let disc = if d % 4 == 1 { d } else { 4 * d } as i64;
            let wanted: Vec<u64> = primes_up_to(r)
                .into_iter()
                .filter(|&p| kronecker(disc, p) == 1 || (kronecker(disc, p) == 0 && !spec.split_only))
                .collect();
            let ex = expand(d, &wanted);
            for p in primes_up_to(r) {
                let k = kronecker(disc, p);
                if k == -1 {
                    if inert_ok(p) {
                        out.push(Ideal { label: format!("({p})"), norm: p * p, generator: Generator::SelfConjugate });
                    }
                    continue;
                }
                if !wanted.contains(&p) {
                    continue;
                }
                match ex.found.iter().find(|f| f.0 == p) {
                    Some((_, x, y, _)) => {
                        let generator = if k == 0 { Generator::SelfConjugate } else { Generator::RealQuad(x.clone(), y.clone()) };
                        out.push(Ideal { label: format!("({x} - {y}√{d})/2"), norm: p, generator });
                        if k == 1 {
                            conj += 1;
                        }
                    }
                    None => skipped.push(p),
                }
            }
            let (ux, uy, _) = ex.unit;
            let g = hiprec::guarded_floor(|prec| ln_half(&ux, &uy, d, prec));
            ctx.circle_steps = g.floor.to_u64().expect("regulator fits") + 1;
            ctx.unit = Some((ux, uy));
        }
    }
    out.sort_by_key(|i| i.norm);
    Ok((out, conj, skipped))
}

/// A value to be rounded onto a lattice: exact rationals or fixed-point
/// evaluations at any requested precision.
enum Value<'a> {
    Rational(i128, i128),
    Real(Box<dyn Fn(u32) -> BigInt + 'a>),
}

/// Rounds, returning the lattice coordinate and the distance to the nearest
/// rounding boundary for irrational values.
fn round(v: Value<'_>, rounding: Rounding) -> (i64, Option<f64>) {
    match v {
        Value::Rational(num, den) => {
            let r = match rounding {
                Rounding::Floor => num.div_euclid(den),
                // ceil(v - 1/2), so that ties go down
                Rounding::Nearest => -((-(2 * num - den)).div_euclid(2 * den)),
            };
            (r as i64, None)
        }
        Value::Real(eval) => match rounding {
            Rounding::Floor => {
                let g = hiprec::guarded_floor(eval);
                (g.floor.to_i64().expect("fits"), Some(g.margin))
            }
            Rounding::Nearest => {
                let g = hiprec::guarded_floor(|prec| eval(prec) - (BigInt::one() << (prec - 1)));
                ((g.floor + BigInt::one()).to_i64().expect("fits"), Some(g.margin))
            }
        },
    }
}

fn primitive_direction(a: i128, b: i128) -> (i128, i128) {
    let g = a.gcd(&b);
    if g == 0 {
        (0, 0)
    } else {
        (a / g, b / g)
    }
}

fn gauss_mul(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn fourth(z: (i128, i128)) -> (i128, i128) {
    let s = gauss_mul(z, z);
    gauss_mul(s, s)
}

impl Context {
    fn coordinate(&self, t: &TargetFactor, ideal: &Ideal) -> (i64, Option<f64>) {
        let rounding = self.spec.rounding;
        match *t {
            TargetFactor::Real { num, den } => {
                let n = BigInt::from(ideal.norm);
                let v = Value::Real(Box::new(move |prec| {
                    (hiprec::ln_int(&n, prec + 64) * BigInt::from(den) / BigInt::from(num)) >> 64u32
                }));
                round(v, rounding)
            }
            TargetFactor::Circle { steps } => {
                let steps = steps.unwrap_or(self.circle_steps);
                let (c, m) = match &ideal.generator {
                    Generator::Gaussian(a, b) => {
                        let (re, im) = fourth((*a as i128, *b as i128));
                        if im == 0 {
                            let half = if re > 0 { 0 } else { 1 };
                            round(Value::Rational(half * steps as i128, 2), rounding)
                        } else {
                            let (re, im) = (BigInt::from(re), BigInt::from(im));
                            round(
                                Value::Real(Box::new(move |prec| {
                                    let w = prec + 64;
                                    let two_pi = hiprec::pi(w) << 1u32;
                                    let angle = hiprec::atan2(&im, &re, w).mod_floor(&two_pi);
                                    ((angle * BigInt::from(steps)) << prec) / two_pi
                                })),
                                rounding,
                            )
                        }
                    }
                    Generator::RealQuad(x, y) => {
                        let (ux, uy) = self.unit.clone().expect("real quadratic unit");
                        let (x, y, d, p) = (x.clone(), y.clone(), self.d, ideal.norm);
                        round(
                            Value::Real(Box::new(move |prec| {
                                let w = prec + 64;
                                let r = ln_half(&ux, &uy, d, w);
                                let phi = hiprec::ln_int(&BigInt::from(p), w) - (ln_half(&x, &y, d, w) << 1u32);
                                (((phi * BigInt::from(steps)) << prec) / r).mod_floor(&(BigInt::from(steps) << prec))
                            })),
                            rounding,
                        )
                    }
                    _ => (0, None),
                };
                (c.rem_euclid(steps as i64), m)
            }
            TargetFactor::Finite => match ideal.generator {
                Generator::Rational(p) => (self.unit_index[(p % self.spec.modulus) as usize] as i64, None),
                Generator::Class(c) => (c as i64, None),
                _ => unreachable!("validated"),
            },
        }
    }

    /// `φ(𝔭) / r mod 1` for real quadratic ideals, as a float.
    fn approx_angle(&self, ideal: &Ideal) -> f64 {
        match &ideal.generator {
            Generator::RealQuad(x, y) => {
                let (ux, uy) = self.unit.clone().expect("real quadratic unit");
                let w = 128;
                let r = ln_half(&ux, &uy, self.d, w);
                let phi = hiprec::ln_int(&BigInt::from(ideal.norm), w) - (ln_half(x, y, self.d, w) << 1u32);
                let t = ((phi << w) / r).mod_floor(&hiprec::one(w));
                hiprec::to_f64(&t, w)
            }
            _ => 0.0,
        }
    }

    fn exact(&self, t: &TargetFactor, a: &Ideal, b: &Ideal) -> Option<Exact> {
        Some(match (t, &a.generator, &b.generator) {
            (TargetFactor::Real { .. }, _, _) => Exact::Int(a.norm as i128 * b.norm as i128),
            (TargetFactor::Finite, Generator::Rational(p), Generator::Rational(q)) => {
                Exact::Int((*p as i128 * *q as i128) % self.spec.modulus as i128)
            }
            (TargetFactor::Finite, Generator::Class(x), Generator::Class(y)) => {
                Exact::Int(self.finite.as_ref().expect("class group").add(*x, *y) as i128)
            }
            (TargetFactor::Circle { .. }, Generator::Gaussian(a0, a1), Generator::Gaussian(b0, b1)) => {
                let (re, im) = fourth(gauss_mul((*a0 as i128, *a1 as i128), (*b0 as i128, *b1 as i128)));
                let (x, y) = primitive_direction(re, im);
                Exact::Pair(x, y)
            }
            _ => return None,
        })
    }

    fn add(&self, t: &TargetFactor, a: i64, b: i64) -> i64 {
        match *t {
            TargetFactor::Real { .. } => a + b,
            TargetFactor::Circle { steps } => (a + b).rem_euclid(steps.unwrap_or(self.circle_steps) as i64),
            TargetFactor::Finite => self.finite.as_ref().expect("finite factor").add(a as usize, b as usize) as i64,
        }
    }

    fn neg(&self, t: &TargetFactor, a: i64) -> i64 {
        match *t {
            TargetFactor::Real { .. } => -a,
            TargetFactor::Circle { steps } => (-a).rem_euclid(steps.unwrap_or(self.circle_steps) as i64),
            TargetFactor::Finite => self.finite.as_ref().expect("finite factor").neg(a as usize) as i64,
        }
    }
}

fn circular_close(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d) < APPROX_TOLERANCE
}

/// Exact key of a pair: integer parts plus at most one angle in `[0, 1)`.
type PairKey = (Vec<(i128, i128)>, Option<f64>);

/// Builds the rounded image of the primes of norm at most `R`, keeping one
/// prime of each conjugate pair and dropping `x` when `x` or `-x` is
/// already present, and runs both quadruple checks over the candidates.
pub fn framework_build(spec: &FrameworkSpec) -> Result<FrameworkResult> {
    framework_build_capped(spec, DEFAULT_PRIME_CAP)
}

pub fn framework_build_capped(spec: &FrameworkSpec, cap: usize) -> Result<FrameworkResult> {
    spec.validate()?;
    let d = match spec.field {
        NumberField::ImaginaryQuadratic { d } | NumberField::RealQuadratic { d } => d,
        _ => 0,
    };
    if let NumberField::RealQuadratic { d } = spec.field {
        if isqrt(d) * isqrt(d) == d {
            return Err(Error::precondition(format!("{d} is a perfect square")));
        }
    }
    let mut ctx = Context {
        spec: spec.clone(),
        finite: None,
        unit_index: Vec::new(),
        d,
        unit: None,
        circle_steps: 0,
    };
    if spec.field == NumberField::Rationals && spec.target.contains(&TargetFactor::Finite) {
        let (pres, index) = unit_group(spec.modulus.max(1));
        ctx.finite = Some(pres.group().clone());
        ctx.unit_index = index;
    }
    let (cands, conjugates_discarded, skipped) = ideals(spec, &mut ctx)?;
    if cands.len() > cap {
        return Err(Error::precondition(format!(
            "{} primes exceed the quadruple scan cap of {cap}",
            cands.len()
        )));
    }

    let mut points = Vec::with_capacity(cands.len());
    let mut min_margin: Option<f64> = None;
    for ideal in &cands {
        let mut pt = Vec::with_capacity(spec.target.len());
        for t in &spec.target {
            let (c, m) = ctx.coordinate(t, ideal);
            pt.push(c);
            if let Some(m) = m {
                min_margin = Some(min_margin.map_or(m, |x: f64| x.min(m)));
            }
        }
        points.push(pt);
    }
    let angles: Option<Vec<f64>> = matches!(spec.field, NumberField::RealQuadratic { .. })
        .then(|| cands.iter().map(|c| ctx.approx_angle(c)).collect());
    let has_angle = angles.is_some() && spec.target.iter().any(|t| matches!(t, TargetFactor::Circle { .. }));

    let pair_key = |i: usize, j: usize| -> PairKey {
        let mut parts = Vec::new();
        for t in &spec.target {
            match ctx.exact(t, &cands[i], &cands[j]) {
                Some(Exact::Int(x)) => parts.push((x, 0)),
                Some(Exact::Pair(x, y)) => parts.push((x, y)),
                None => {}
            }
        }
        let angle = has_angle.then(|| {
            let a = angles.as_ref().expect("angles");
            (a[i] + a[j]).rem_euclid(1.0)
        });
        (parts, angle)
    };
    let same = |a: &PairKey, b: &PairKey| {
        a.0 == b.0
            && match (a.1, b.1) {
                (Some(x), Some(y)) => circular_close(x, y),
                _ => true,
            }
    };

    let n = cands.len();
    let mut violation_i = None;
    let mut by_rounded: HashMap<Vec<i64>, (usize, usize, PairKey)> = HashMap::new();
    let mut by_exact: HashMap<Vec<(i128, i128)>, Vec<(f64, usize, usize)>> = HashMap::new();
    for i in 0..n {
        for j in i..n {
            let sum: Vec<i64> =
                spec.target.iter().enumerate().map(|(c, t)| ctx.add(t, points[i][c], points[j][c])).collect();
            let key = pair_key(i, j);
            match by_rounded.get(&sum) {
                Some((a, b, k)) => {
                    if violation_i.is_none() && !same(k, &key) {
                        violation_i = Some([*a, *b, i, j]);
                    }
                }
                None => {
                    by_rounded.insert(sum, (i, j, key.clone()));
                }
            }
            by_exact.entry(key.0).or_default().push((key.1.unwrap_or(0.0), i, j));
        }
    }
    let mut violation_ii = None;
    for group in by_exact.values_mut() {
        if group.len() < 2 || violation_ii.is_some() {
            continue;
        }
        if !has_angle {
            violation_ii = Some([group[0].1, group[0].2, group[1].1, group[1].2]);
            continue;
        }
        group.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in 0..group.len() {
            let (a, b) = (&group[w], &group[(w + 1) % group.len()]);
            if circular_close(a.0, b.0) {
                violation_ii = Some([a.1, a.2, b.1, b.2]);
                break;
            }
        }
    }

    let mut primes = Vec::with_capacity(n);
    let mut elements: Vec<Vec<i64>> = Vec::new();
    let mut labels = Vec::new();
    for (ideal, pt) in cands.iter().zip(&points) {
        let neg: Vec<i64> = spec.target.iter().zip(pt).map(|(t, &x)| ctx.neg(t, x)).collect();
        let kept = !elements.contains(pt) && !elements.contains(&neg);
        if kept {
            elements.push(pt.clone());
            labels.push(ideal.label.clone());
        }
        primes.push(FrameworkPrime { label: ideal.label.clone(), norm: ideal.norm, point: pt.clone(), kept });
    }

    let (group, set) = embed(&ctx, &elements);
    let sidon = is_sidon(&group, &set).is_sidon;
    let check_i = violation_i.is_none();
    let check_ii = violation_ii.is_none();
    if check_i && check_ii && !sidon {
        log::error!("both checks passed but the rounded set is not Sidon");
    }
    Ok(FrameworkResult {
        spec: spec.clone(),
        primes,
        conjugates_discarded,
        skipped,
        elements,
        labels,
        check_i,
        check_ii,
        violation_i,
        violation_ii,
        group,
        set,
        sidon,
        min_margin,
        rounding_note: match spec.rounding {
            Rounding::Floor => "floor".into(),
            Rounding::Nearest => "nearest, ties toward the smaller lattice point".into(),
        },
    })
}

/// Places lattice points in a finite group where additive relations among
/// them are the same: real coordinates go to a cyclic group of modulus
/// `2·diameter + 1`.
fn embed(ctx: &Context, elements: &[Vec<i64>]) -> (AbelianGroup, Vec<usize>) {
    let mut orders = Vec::new();
    let mut shifts = Vec::new();
    for (c, t) in ctx.spec.target.iter().enumerate() {
        match *t {
            TargetFactor::Real { .. } => {
                let lo = elements.iter().map(|e| e[c]).min().unwrap_or(0);
                let hi = elements.iter().map(|e| e[c]).max().unwrap_or(0);
                orders.push((2 * (hi - lo) + 1) as u64);
                shifts.push(lo);
            }
            TargetFactor::Circle { steps } => {
                orders.push(steps.unwrap_or(ctx.circle_steps));
                shifts.push(0);
            }
            TargetFactor::Finite => {
                orders.extend_from_slice(ctx.finite.as_ref().expect("finite factor").factors());
                shifts.push(0);
            }
        }
    }
    let pres = Presentation::from_orders(&orders);
    let set = elements
        .iter()
        .map(|e| {
            let mut raw = Vec::with_capacity(orders.len());
            for (c, t) in ctx.spec.target.iter().enumerate() {
                match t {
                    TargetFactor::Finite => {
                        let g = ctx.finite.as_ref().expect("finite factor");
                        raw.extend(g.decode(e[c] as usize).into_iter().map(|x| x as i64));
                    }
                    _ => raw.push(e[c] - shifts[c]),
                }
            }
            pres.raw_to_index(&raw)
        })
        .collect();
    (pres.group().clone(), set)
}

impl FrameworkResult {
    /// Elements of a single-factor result as plain integers.
    pub fn flat(&self) -> Vec<i64> {
        self.elements.iter().map(|e| e[0]).collect()
    }
}
