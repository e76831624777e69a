//! Algebraic Sidon sets of size close to the square root of the group order:
//! the five classical constructions and graphs of planar functions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::gcd;
use crate::algebra::group::Presentation;
use crate::algebra::{AbelianGroup, FieldElement, FiniteField, GroupElement, IsoNote};
use crate::sidon::{is_sidon, normalize_set};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseName {
    ErdosTuran,
    Singer,
    Bose,
    Spence,
    Hughes,
}

impl DenseName {
    pub const ALL: [DenseName; 5] =
        [DenseName::ErdosTuran, DenseName::Singer, DenseName::Bose, DenseName::Spence, DenseName::Hughes];

    pub fn as_str(self) -> &'static str {
        match self {
            DenseName::ErdosTuran => "erdos_turan",
            DenseName::Singer => "singer",
            DenseName::Bose => "bose",
            DenseName::Spence => "spence",
            DenseName::Hughes => "hughes",
        }
    }

    /// `(|G|, |S|)` for a field of order `q`.
    pub fn parameters(self, q: u64) -> (u64, u64) {
        match self {
            DenseName::ErdosTuran => (q * q, q),
            DenseName::Singer => (q * q + q + 1, q + 1),
            DenseName::Bose => (q * q - 1, q),
            DenseName::Spence => (q * (q - 1), q - 1),
            DenseName::Hughes => ((q - 1) * (q - 1), q.saturating_sub(2)),
        }
    }
}

impl fmt::Display for DenseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DenseName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        DenseName::ALL
            .into_iter()
            .find(|n| n.as_str() == norm)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseConstruction {
    pub name: DenseName,
    pub q: u64,
    pub group: AbelianGroup,
    #[serde(skip)]
    pub set: Vec<usize>,
    pub elements: Vec<GroupElement>,
    /// Field element indices of each member before encoding into the group.
    pub field_points: Vec<Vec<u32>>,
    pub iso_note: IsoNote,
    pub parameters_ok: bool,
    /// Set when the construction is too small to be interesting.
    pub degenerate: bool,
}

fn digits(f: &FiniteField, x: FieldElement) -> Vec<i64> {
    let mut c: Vec<i64> = f.coeffs(x).into_iter().map(|v| v as i64).collect();
    c.resize(f.degree(), 0);
    c
}

struct Builder {
    pres: Presentation,
    set: Vec<usize>,
    points: Vec<Vec<u32>>,
}

impl Builder {
    fn new(orders: &[u64]) -> Self {
        Builder { pres: Presentation::from_orders(orders), set: Vec::new(), points: Vec::new() }
    }

    fn push(&mut self, raw: &[i64], point: Vec<u32>) {
        let idx = self.pres.raw_to_index(raw);
        if !self.set.contains(&idx) {
            self.set.push(idx);
            self.points.push(point);
        }
    }

    fn finish(self, name: DenseName, q: u64, description: &str) -> DenseConstruction {
        let group = self.pres.group().clone();
        let mut order: Vec<usize> = (0..self.set.len()).collect();
        order.sort_by_key(|&i| self.set[i]);
        let set: Vec<usize> = order.iter().map(|&i| self.set[i]).collect();
        let field_points = order.iter().map(|&i| self.points[i].clone()).collect();
        let (n, s) = name.parameters(q);
        let parameters_ok = group.order() == n && set.len() as u64 == s;
        DenseConstruction {
            name,
            q,
            elements: set.iter().map(|&x| group.element(x)).collect(),
            group,
            set,
            field_points,
            iso_note: self.pres.note(description),
            parameters_ok,
            degenerate: s <= 1,
        }
    }
}

/// Builds one of the five classical dense Sidon sets over `field`.
pub fn construct_dense(name: DenseName, field: &FiniteField) -> Result<DenseConstruction> {
    let (p, d, q) = (field.p(), field.degree(), field.order());
    Ok(match name {
        DenseName::ErdosTuran => {
            if p == 2 {
                return Err(Error::Characteristic(2, "the parabola is not Sidon in characteristic 2"));
            }
            let mut b = Builder::new(&vec![p; 2 * d]);
            for x in field.elements() {
                let y = field.mul(x, x);
                let mut raw = digits(field, x);
                raw.extend(digits(field, y));
                b.push(&raw, vec![x.0, y.0]);
            }
            b.finish(name, q, "K x K, coordinates are base-p digits of (x, y)")
        }
        DenseName::Singer => {
            let big = FiniteField::new(p, 3 * d)?;
            let n = q * q + q + 1;
            let mut b = Builder::new(&[n]);
            for x in big.elements().filter(|x| !x.is_zero()) {
                if big.trace_to_subfield(x, d)?.is_zero() {
                    b.push(&[(big.log(x)? % n) as i64], vec![x.0]);
                }
            }
            b.finish(name, q, "GF(q^3)^x / GF(q)^x, coordinate is the discrete log mod q^2+q+1")
        }
        DenseName::Bose => {
            let big = FiniteField::new(p, 2 * d)?;
            let theta = big.t();
            let mut b = Builder::new(&[q * q - 1]);
            for k in big.elements().filter(|&k| big.in_subfield(k, d)) {
                let x = big.add(theta, k);
                b.push(&[big.log(x)? as i64], vec![x.0]);
            }
            b.finish(name, q, "GF(q^2)^x, coordinate is the discrete log; set is t + GF(q)")
        }
        DenseName::Spence => {
            let mut orders = vec![q - 1];
            orders.extend(std::iter::repeat(p).take(d));
            let mut b = Builder::new(&orders);
            for x in field.elements().filter(|x| !x.is_zero()) {
                let mut raw = vec![field.log(x)? as i64];
                raw.extend(digits(field, x));
                b.push(&raw, vec![x.0, x.0]);
            }
            b.finish(name, q, "K^x x K, coordinates are (log x, base-p digits of y)")
        }
        DenseName::Hughes => {
            let mut b = Builder::new(&[q - 1, q - 1]);
            for x in field.elements().filter(|x| !x.is_zero() && *x != FieldElement::ONE) {
                let y = field.sub(FieldElement::ONE, x);
                b.push(&[field.log(x)? as i64, field.log(y)? as i64], vec![x.0, y.0]);
            }
            b.finish(name, q, "K^x x K^x, coordinates are discrete logs")
        }
    })
}

/// The shape of a candidate planar function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanarForm {
    Monomial(u64),
    /// `a[i][j]` (for `i <= j`) is the coefficient of `x^(p^i + p^j)`.
    Quadratic(Vec<Vec<FieldElement>>),
    Table(Vec<FieldElement>),
}

#[derive(Debug, Clone)]
pub struct PlanarCandidate {
    pub field: FiniteField,
    pub form: PlanarForm,
}

impl PlanarCandidate {
    pub fn new(field: &FiniteField, form: PlanarForm) -> Result<Self> {
        let q = field.order() as usize;
        let d = field.degree();
        match &form {
            PlanarForm::Table(t) if t.len() != q || t.iter().any(|x| x.0 as usize >= q) => {
                return Err(Error::InvalidParameter("function table must list one field element per input".into()))
            }
            PlanarForm::Quadratic(a) if a.len() > d || a.iter().any(|r| r.len() > d) => {
                return Err(Error::InvalidParameter(format!("coefficient indices must be below {d}")))
            }
            _ => {}
        }
        Ok(PlanarCandidate { field: field.clone(), form })
    }

    pub fn monomial(field: &FiniteField, e: u64) -> Self {
        PlanarCandidate { field: field.clone(), form: PlanarForm::Monomial(e) }
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        match &self.form {
            PlanarForm::Monomial(e) => f.pow(x, *e),
            PlanarForm::Table(t) => t[x.0 as usize],
            PlanarForm::Quadratic(a) => {
                let frob: Vec<FieldElement> = (0..f.degree()).map(|i| f.frobenius(x, i)).collect();
                let mut acc = FieldElement::ZERO;
                for (i, row) in a.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate().skip(i) {
                        if !c.is_zero() {
                            acc = f.add(acc, f.mul(c, f.mul(frob[i], frob[j])));
                        }
                    }
                }
                acc
            }
        }
    }

    pub fn table(&self) -> Vec<FieldElement> {
        self.field.elements().map(|x| self.eval(x)).collect()
    }
}

/// Exhaustive planarity test. On failure returns the smallest `h != 0`
/// whose difference map is not a bijection.
pub fn is_planar(c: &PlanarCandidate) -> std::result::Result<(), FieldElement> {
    let f = &c.field;
    let q = f.order() as u32;
    let table = c.table();
    let bad = (1..q).into_par_iter().find_first(|&h| {
        let h = FieldElement(h);
        let mut hit = vec![false; q as usize];
        f.elements().any(|x| {
            let v = f.sub(table[f.add(x, h).0 as usize], table[x.0 as usize]);
            std::mem::replace(&mut hit[v.0 as usize], true)
        })
    });
    match bad {
        Some(h) => Err(FieldElement(h)),
        None => Ok(()),
    }
}

/// The graph `{(x, φ(x))}` in `K²` for a planar `φ`.
pub fn planar_graph(c: &PlanarCandidate) -> Result<(AbelianGroup, Vec<usize>)> {
    is_planar(c).map_err(|h| Error::NotPlanar(h.0))?;
    let f = &c.field;
    let g = AbelianGroup::elementary(f.p(), 2 * f.degree());
    let set = f
        .elements()
        .map(|x| {
            let mut coords: Vec<u64> = digits(f, x).into_iter().map(|v| v as u64).collect();
            coords.extend(digits(f, c.eval(x)).into_iter().map(|v| v as u64));
            g.encode(&coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((g, normalize_set(&set)))
}

/// `β(x, y)` as a table indexed by `x * q + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinear {
    pub q: usize,
    pub table: Vec<FieldElement>,
}

impl Bilinear {
    pub fn get(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.table[x.0 as usize * self.q + y.0 as usize]
    }
}

/// Polarization of a generalized quadratic form computed from its
/// coefficients: `sum a_ij (x^(p^i) y^(p^j) + x^(p^j) y^(p^i))`.
pub fn polarization(c: &PlanarCandidate) -> Result<Bilinear> {
    let PlanarForm::Quadratic(a) = &c.form else {
        return Err(Error::Unsupported("symbolic polarization needs a quadratic form".into()));
    };
    let f = &c.field;
    let q = f.order() as usize;
    let frob: Vec<Vec<FieldElement>> = f.elements().map(|x| (0..f.degree()).map(|i| f.frobenius(x, i)).collect()).collect();
    let mut table = vec![FieldElement::ZERO; q * q];
    for x in 0..q {
        for y in 0..q {
            let (fx, fy) = (&frob[x], &frob[y]);
            let mut acc = FieldElement::ZERO;
            for (i, row) in a.iter().enumerate() {
                for (j, &cij) in row.iter().enumerate().skip(i) {
                    if !cij.is_zero() {
                        let s = f.add(f.mul(fx[i], fy[j]), f.mul(fx[j], fy[i]));
                        acc = f.add(acc, f.mul(cij, s));
                    }
                }
            }
            table[x * q + y] = acc;
        }
    }
    Ok(Bilinear { q, table })
}

/// `φ(x + y) - φ(x) - φ(y)` for any candidate.
pub fn polarization_numeric(c: &PlanarCandidate) -> Bilinear {
    let f = &c.field;
    let q = f.order() as usize;
    let t = c.table();
    let mut table = Vec::with_capacity(q * q);
    for x in f.elements() {
        for y in f.elements() {
            table.push(f.sub(f.sub(t[f.add(x, y).0 as usize], t[x.0 as usize]), t[y.0 as usize]));
        }
    }
    Bilinear { q, table }
}

/// Returns a pair of nonzero arguments with `β = 0`, if any.
pub fn is_nondegenerate(b: &Bilinear) -> std::result::Result<(), (FieldElement, FieldElement)> {
    for x in 1..b.q {
        for y in 1..b.q {
            if b.table[x * b.q + y].is_zero() {
                return Err((FieldElement(x as u32), FieldElement(y as u32)));
            }
        }
    }
    Ok(())
}

/// Whether `x^(p^α + 1)` is planar over `GF(p^d)`: `p` odd and
/// `d / gcd(α, d)` odd.
pub fn monomial_planar_condition(p: u64, d: u64, alpha: u64) -> bool {
    p % 2 == 1 && (d / gcd(alpha, d)) % 2 == 1
}

/// `x^((3^α + 1) / 2)` over `GF(3^d)`, requiring `gcd(α, 2d) = 1`.
pub fn coulter_matthews(d: usize, alpha: u32) -> Result<PlanarCandidate> {
    if gcd(alpha as u64, 2 * d as u64) != 1 {
        return Err(Error::precondition(format!("gcd({alpha}, {}) must be 1", 2 * d)));
    }
    let f = FiniteField::new(3, d)?;
    Ok(PlanarCandidate::monomial(&f, (3u64.pow(alpha) + 1) / 2))
}

/// `x^10 + sign * x^6 - x^2` over `GF(3^d)` as a quadratic form.
pub fn x10_form(d: usize, sign: i64) -> Result<PlanarCandidate> {
    if d < 3 {
        return Err(Error::precondition("the form needs d >= 3"));
    }
    let f = FiniteField::new(3, d)?;
    let mut a = vec![vec![FieldElement::ZERO; d]; d];
    a[0][0] = f.from_int(-1);
    a[1][1] = f.from_int(sign.signum());
    a[0][2] = FieldElement::ONE;
    PlanarCandidate::new(&f, PlanarForm::Quadratic(a))
}

/// Reports for a constructed set: Sidon verdict and sizes.
pub fn verify(c: &DenseConstruction) -> bool {
    c.parameters_ok && is_sidon(&c.group, &c.set).is_sidon
}
