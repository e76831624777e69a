//! A finite field `L` viewed as a vector space over a subfield `K`.
//!
//! Both fields carry their own canonical moduli, so `K` is embedded into `L`
//! by sending `t` to the first root (in index order) of `K`'s modulus. The
//! `K`-basis of `L` is `1, θ, θ², ...` with `θ` the class of `t` in `L`.

use super::field::{FieldElement, FiniteField};
use crate::{Error, Result};

pub type KMatrix = Vec<Vec<FieldElement>>;

pub struct Extension {
    base: FiniteField,
    big: FiniteField,
    degree: usize,
    embed: Vec<FieldElement>,
    restrict: Vec<u32>,
    basis: Vec<FieldElement>,
    coords: Vec<FieldElement>,
}

impl Extension {
    /// `L = GF(q^degree)` over `K = base`.
    pub fn new(base: &FiniteField, degree: usize) -> Result<Self> {
        let big = FiniteField::new(base.p(), base.degree() * degree)?;
        Self::with_fields(base, &big)
    }

    pub fn with_fields(base: &FiniteField, big: &FiniteField) -> Result<Self> {
        if base.p() != big.p() || big.degree() % base.degree() != 0 {
            return Err(Error::NotASubfield { sub: base.degree(), degree: big.degree() });
        }
        let degree = big.degree() / base.degree();
        let modulus = base.modulus();
        let eval = |x: FieldElement| {
            modulus.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                big.add(big.mul(acc, x), big.from_int(c as i64))
            })
        };
        let alpha = if base.degree() == 1 {
            FieldElement::ZERO
        } else {
            big.elements().find(|&x| eval(x).is_zero()).expect("subfield modulus splits in L")
        };
        let mut embed = Vec::with_capacity(base.order() as usize);
        let mut restrict = vec![u32::MAX; big.order() as usize];
        for k in base.elements() {
            let c = base.coeffs(k);
            let mut acc = FieldElement::ZERO;
            let mut pw = FieldElement::ONE;
            for &ci in &c {
                acc = big.add(acc, big.mul(big.from_int(ci as i64), pw));
                pw = big.mul(pw, alpha);
            }
            restrict[acc.0 as usize] = k.0;
            embed.push(acc);
        }
        let theta = big.t();
        let basis: Vec<FieldElement> = (0..degree).map(|i| big.pow(theta, i as u64)).collect();
        let n = big.order() as usize;
        let mut coords = vec![FieldElement(u32::MAX); n * degree];
        let q = base.order() as usize;
        let total = q.pow(degree as u32);
        for code in 0..total {
            let mut rest = code;
            let mut y = FieldElement::ZERO;
            let mut cs = Vec::with_capacity(degree);
            for b in &basis {
                let c = FieldElement((rest % q) as u32);
                rest /= q;
                y = big.add(y, big.mul(embed[c.0 as usize], *b));
                cs.push(c);
            }
            let slot = &mut coords[y.0 as usize * degree..(y.0 as usize + 1) * degree];
            if slot[0].0 != u32::MAX {
                return Err(Error::InvalidParameter("basis is not K-independent".into()));
            }
            slot.copy_from_slice(&cs);
        }
        Ok(Extension { base: base.clone(), big: big.clone(), degree, embed, restrict, basis, coords })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn big(&self) -> &FiniteField {
        &self.big
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn embed(&self, k: FieldElement) -> FieldElement {
        self.embed[k.0 as usize]
    }

    /// Inverse of [`Extension::embed`] on its image.
    pub fn restrict(&self, x: FieldElement) -> Option<FieldElement> {
        match self.restrict[x.0 as usize] {
            u32::MAX => None,
            k => Some(FieldElement(k)),
        }
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// `K`-coordinates of `x` in the basis `1, θ, ...`.
    pub fn coords(&self, x: FieldElement) -> &[FieldElement] {
        let i = x.0 as usize * self.degree;
        &self.coords[i..i + self.degree]
    }

    pub fn from_coords(&self, c: &[FieldElement]) -> FieldElement {
        c.iter()
            .zip(&self.basis)
            .fold(FieldElement::ZERO, |acc, (&ci, &b)| self.big.add(acc, self.big.mul(self.embed(ci), b)))
    }

    /// Matrix (over `K`, acting on column vectors) of a `K`-linear map of `L`.
    pub fn linear_matrix(&self, f: impl Fn(FieldElement) -> FieldElement) -> KMatrix {
        let n = self.degree;
        let cols: Vec<Vec<FieldElement>> = self.basis.iter().map(|&b| self.coords(f(b)).to_vec()).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    pub fn multiplication_matrix(&self, x: FieldElement) -> KMatrix {
        self.linear_matrix(|y| self.big.mul(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_field_homomorphism() {
        for q in [2u64, 3, 4, 5] {
            let k = FiniteField::of_order(q).unwrap();
            let ext = Extension::new(&k, 3).unwrap();
            let l = ext.big();
            for a in k.elements() {
                for b in k.elements() {
                    assert_eq!(ext.embed(k.add(a, b)), l.add(ext.embed(a), ext.embed(b)));
                    assert_eq!(ext.embed(k.mul(a, b)), l.mul(ext.embed(a), ext.embed(b)));
                }
                assert_eq!(ext.restrict(ext.embed(a)), Some(a));
            }
            for x in l.elements() {
                assert_eq!(ext.from_coords(ext.coords(x)), x);
            }
        }
    }

    #[test]
    fn multiplication_matrix_composes() {
        let k = FiniteField::of_order(3).unwrap();
        let ext = Extension::new(&k, 2).unwrap();
        let l = ext.big();
        let x = l.generator();
        let m = ext.multiplication_matrix(x);
        let y = l.t();
        let c = ext.coords(y);
        let image: Vec<FieldElement> = (0..2)
            .map(|i| (0..2).fold(FieldElement::ZERO, |acc, j| k.add(acc, k.mul(m[i][j], c[j]))))
            .collect();
        assert_eq!(ext.from_coords(&image), l.mul(x, y));
    }
}
