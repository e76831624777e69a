//! Class groups of imaginary quadratic fields via reduced binary quadratic
//! forms, and the prime-ideal Sidon sets inside them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{is_squarefree, kronecker, primes_up_to};
use crate::algebra::group::Presentation;
use crate::algebra::{AbelianGroup, GroupElement, IsoNote};
use crate::sidon::is_sidon;
use crate::{Error, Result};

/// `(a, b, c)` standing for `a x² + b x y + c y²`.
pub type Form = (i64, i64, i64);

/// Discriminant of the maximal order of `Q(sqrt(-D))`.
pub fn fundamental_discriminant(d: u64) -> i64 {
    let d = d as i64;
    if d % 4 == 3 {
        -d
    } else {
        -4 * d
    }
}

fn normalize(f: Form) -> Form {
    let (a, b, c) = f;
    if -a < b && b <= a {
        return f;
    }
    let r = (a - b).div_euclid(2 * a);
    let b2 = b + 2 * r * a;
    let c2 = a * r * r + b * r + c;
    (a, b2, c2)
}

/// Reduction of a positive definite form.
pub fn reduce(f: Form) -> Form {
    let mut f = normalize(f);
    while f.0 > f.2 {
        f = normalize((f.2, -f.1, f.0));
    }
    if f.0 == f.2 && f.1 < 0 {
        f.1 = -f.1;
    }
    f
}

pub fn is_reduced(f: Form) -> bool {
    let (a, b, c) = f;
    b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Composition of primitive forms of the same discriminant, reduced.
pub fn compose(f1: Form, f2: Form, disc: i64) -> Form {
    let (a1, b1, _) = (f1.0 as i128, f1.1 as i128, f1.2 as i128);
    let (a2, b2, _) = (f2.0 as i128, f2.1 as i128, f2.2 as i128);
    let disc = disc as i128;
    let beta = (b1 + b2) / 2;
    let (g1, x1, y1) = ext_gcd(a1, a2);
    let (e, x2, y2) = ext_gcd(g1, beta);
    let (u, v, w) = (x2 * x1, x2 * y1, y2);
    let a3 = a1 * a2 / (e * e);
    let b3 = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + disc) / 2) / e;
    let b3 = b3.rem_euclid(2 * a3);
    let c3 = (b3 * b3 - disc) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, disc);
    reduce_wide((a3, b3, c3))
}

fn reduce_wide(f: (i128, i128, i128)) -> Form {
    let (mut a, mut b, mut c) = f;
    loop {
        if !(-a < b && b <= a) {
            let r = (a - b).div_euclid(2 * a);
            let b2 = b + 2 * r * a;
            c += r * (a * r + b);
            b = b2;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else {
            break;
        }
    }
    if a == c && b < 0 {
        b = -b;
    }
    (a as i64, b as i64, c as i64)
}

#[derive(Debug, Clone)]
pub struct QuadraticClassGroup {
    discriminant: i64,
    forms: Vec<Form>,
    index: HashMap<Form, usize>,
    pres: Presentation,
    /// Group index of each reduced form.
    to_group: Vec<usize>,
}

impl QuadraticClassGroup {
    /// All reduced primitive forms of a negative discriminant.
    pub fn new(discriminant: i64) -> Result<Self> {
        if discriminant >= 0 || discriminant.rem_euclid(4) > 1 {
            return Err(Error::InvalidParameter(format!("{discriminant} is not a negative discriminant")));
        }
        let dabs = -discriminant;
        let mut forms = Vec::new();
        let mut a = 1i64;
        while 3 * a * a <= dabs {
            for b in -a + 1..=a {
                if (b - discriminant).rem_euclid(2) != 0 {
                    continue;
                }
                let num = b * b - discriminant;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                let f = (a, b, c);
                if is_reduced(f) && num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                    forms.push(f);
                }
            }
            a += 1;
        }
        let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let h = forms.len();
        let (pres, to_group) =
            Presentation::from_operation(h, 0, |i, j| index[&compose(forms[i], forms[j], discriminant)]);
        Ok(QuadraticClassGroup { discriminant, forms, index, pres, to_group })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn group(&self) -> &AbelianGroup {
        self.pres.group()
    }

    pub fn iso_note(&self) -> IsoNote {
        self.pres.note(format!("class group of discriminant {}", self.discriminant))
    }

    /// Position of the reduction of `f` in [`Self::forms`].
    pub fn form_index(&self, f: Form) -> Result<usize> {
        self.index
            .get(&reduce(f))
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{f:?} is not a form of this discriminant")))
    }

    /// Group element of a form.
    pub fn class_of(&self, f: Form) -> Result<usize> {
        Ok(self.to_group[self.form_index(f)?])
    }

    pub fn compose(&self, f: Form, g: Form) -> Form {
        compose(f, g, self.discriminant)
    }
}

/// The form `(p, b, c)` with the smallest `b >= 0` satisfying
/// `b² ≡ Δ (mod 4p)`, representing a prime ideal above a split `p`.
pub fn prime_form(disc: i64, p: u64) -> Option<Form> {
    let p = p as i64;
    (0..=p).find_map(|b| {
        let num = b * b - disc;
        (num % (4 * p) == 0).then(|| (p, b, num / (4 * p)))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGroupPrimes {
    pub d: u64,
    pub discriminant: i64,
    pub class_number: usize,
    pub group: AbelianGroup,
    pub split_primes: Vec<u64>,
    /// Primes whose class was kept.
    pub primes: Vec<u64>,
    #[serde(skip)]
    pub set: Vec<usize>,
    pub elements: Vec<GroupElement>,
    pub forms: Vec<Form>,
    /// Distinct split primes gave distinct classes.
    pub injective: bool,
    pub sidon: bool,
    pub iso_note: IsoNote,
}

/// Classes of prime ideals of norm `p` with `16 p⁴ < D`, chosen greedily by
/// ascending `p`, skipping a class whose inverse is already present.
pub fn class_group_primes(d: u64) -> Result<ClassGroupPrimes> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::precondition(format!("D = {d} must be a positive squarefree integer")));
    }
    let disc = fundamental_discriminant(d);
    let cg = QuadraticClassGroup::new(disc)?;
    let g = cg.group().clone();
    let mut bound = 1u64;
    while 16 * (bound + 1).pow(4) < d {
        bound += 1;
    }
    let split_primes: Vec<u64> =
        primes_up_to(bound).into_iter().filter(|&p| 16 * p.pow(4) < d && kronecker(disc, p) == 1).collect();
    let mut classes = Vec::new();
    let mut set = Vec::new();
    let mut primes = Vec::new();
    let mut forms = Vec::new();
    for &p in &split_primes {
        let f = prime_form(disc, p).expect("split primes have a prime form");
        let c = cg.class_of(f)?;
        classes.push(c);
        if set.contains(&g.neg(c)) || set.contains(&c) {
            continue;
        }
        set.push(c);
        primes.push(p);
        forms.push(reduce(f));
    }
    let mut distinct = classes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let sidon = is_sidon(&g, &set).is_sidon;
    Ok(ClassGroupPrimes {
        d,
        discriminant: disc,
        class_number: cg.class_number(),
        elements: set.iter().map(|&x| g.element(x)).collect(),
        group: g,
        injective: distinct.len() == classes.len(),
        split_primes,
        primes,
        set,
        forms,
        sidon,
        iso_note: cg.iso_note(),
    })
}
