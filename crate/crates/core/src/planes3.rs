//! The desarguesian plane over a finite field and the maximal abelian
//! subgroups of its projective linear group acting on it.
//!
//! Points are nonzero column vectors and lines nonzero row vectors, both
//! normalized so that the last nonzero coordinate is 1. A matrix `M` sends the
//! point `v` to `Mv` and the line `w` to `w M^{-1}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::ext::{Extension, KMatrix};
use crate::algebra::group::Presentation;
use crate::algebra::{AbelianGroup, FieldElement, FiniteField, GroupElement, IsoNote};
use crate::incidence::IncidenceStructure;
use crate::dense::{construct_dense, DenseName};
use crate::sidon::{affine_equivalent, is_sidon, AffineMap};
use crate::{Error, Result};

pub const DEFAULT_PLANE_CAP: u64 = 64;

pub type Triple = [FieldElement; 3];
pub type Mat3 = [[FieldElement; 3]; 3];

/// `P²(K)` with points and lines indexed by their normalized triples in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: FiniteField,
    triples: Vec<Triple>,
    lookup: Vec<u32>,
}

impl ProjectivePlane {
    pub fn new(field: &FiniteField) -> Result<Self> {
        Self::with_cap(field, DEFAULT_PLANE_CAP)
    }

    pub fn with_cap(field: &FiniteField, cap: u64) -> Result<Self> {
        let q = field.order();
        if q > cap {
            return Err(Error::FieldTooLarge { order: q as u128, cap });
        }
        let qs = q as usize;
        let mut triples = Vec::with_capacity(qs * qs + qs + 1);
        for a in 0..qs {
            for b in 0..qs {
                for c in 0..qs {
                    let t = [FieldElement(a as u32), FieldElement(b as u32), FieldElement(c as u32)];
                    let last = t.iter().rev().find(|x| !x.is_zero());
                    if last == Some(&FieldElement::ONE) {
                        triples.push(t);
                    }
                }
            }
        }
        let mut lookup = vec![u32::MAX; qs * qs * qs];
        for (i, t) in triples.iter().enumerate() {
            lookup[(t[0].0 as usize * qs + t[1].0 as usize) * qs + t[2].0 as usize] = i as u32;
        }
        Ok(ProjectivePlane { field: field.clone(), triples, lookup })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triple(&self, i: usize) -> Triple {
        self.triples[i]
    }

    /// Index of the normalization of a nonzero vector.
    pub fn index_of(&self, v: Triple) -> Result<usize> {
        let f = &self.field;
        let last = v
            .iter()
            .rev()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidParameter("zero vector is not a projective point".into()))?;
        let inv = f.inv(*last)?;
        let n = v.map(|x| f.mul(x, inv));
        let qs = f.order() as usize;
        Ok(self.lookup[(n[0].0 as usize * qs + n[1].0 as usize) * qs + n[2].0 as usize] as usize)
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        let f = &self.field;
        let (p, l) = (self.triples[point], self.triples[line]);
        (0..3).fold(FieldElement::ZERO, |acc, i| f.add(acc, f.mul(p[i], l[i]))).is_zero()
    }

    pub fn incidence_structure(&self) -> IncidenceStructure {
        let n = self.len();
        let mut inc = Vec::new();
        for l in 0..n {
            for p in 0..n {
                if self.incident(p, l) {
                    inc.push((p, l));
                }
            }
        }
        IncidenceStructure::new(n, n, inc).expect("indices in range")
    }

    pub fn apply_point(&self, m: &Mat3, point: usize) -> usize {
        let f = &self.field;
        let v = self.triples[point];
        let w: Triple =
            std::array::from_fn(|i| (0..3).fold(FieldElement::ZERO, |acc, j| f.add(acc, f.mul(m[i][j], v[j]))));
        self.index_of(w).expect("invertible matrix")
    }

    /// Image of a line under the matrix whose inverse is `m_inv`.
    pub fn apply_line(&self, m_inv: &Mat3, line: usize) -> usize {
        let f = &self.field;
        let w = self.triples[line];
        let u: Triple =
            std::array::from_fn(|j| (0..3).fold(FieldElement::ZERO, |acc, i| f.add(acc, f.mul(w[i], m_inv[i][j]))));
        self.index_of(u).expect("invertible matrix")
    }
}

/// `P²(K)` as an incidence structure.
pub fn plane_build(field: &FiniteField) -> Result<IncidenceStructure> {
    Ok(ProjectivePlane::new(field)?.incidence_structure())
}

fn mat_mul(f: &FiniteField, a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(FieldElement::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j]))))
    })
}

fn det(f: &FiniteField, m: &Mat3) -> FieldElement {
    let minor = |r: usize, c: usize| {
        let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        f.sub(f.mul(m[rs[0]][cs[0]], m[rs[1]][cs[1]]), f.mul(m[rs[0]][cs[1]], m[rs[1]][cs[0]]))
    };
    let t0 = f.mul(m[0][0], minor(0, 0));
    let t1 = f.mul(m[0][1], minor(0, 1));
    let t2 = f.mul(m[0][2], minor(0, 2));
    f.add(f.sub(t0, t1), t2)
}

/// Scales so the first nonzero entry in row-major order is 1.
pub fn normalize_matrix(f: &FiniteField, m: &Mat3) -> Mat3 {
    let lead = m.iter().flatten().find(|x| !x.is_zero()).copied().expect("nonzero matrix");
    let inv = f.inv(lead).expect("nonzero");
    m.map(|row| row.map(|x| f.mul(x, inv)))
}

fn identity(f: &FiniteField) -> Mat3 {
    let _ = f;
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }))
}

fn from_kmatrix(m: &KMatrix) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j]))
}

/// `[[1, x, z], [0, 1, y], [0, 0, 1]]`.
pub fn unipotent(x: FieldElement, y: FieldElement, z: FieldElement) -> Mat3 {
    let (o, n) = (FieldElement::ONE, FieldElement::ZERO);
    [[o, x, z], [n, o, y], [n, n, o]]
}

fn diagonal(a: FieldElement, b: FieldElement, c: FieldElement) -> Mat3 {
    let n = FieldElement::ZERO;
    [[a, n, n], [n, b, n], [n, n, c]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::I,
        Family::Ii,
        Family::Iii,
        Family::Iv,
        Family::V,
        Family::Vi,
        Family::Vii,
        Family::Viii,
        Family::Ix,
    ];

    pub fn tag(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"][self as usize]
    }

    /// Order of the subgroup for a field of order `q`.
    pub fn expected_order(self, q: u64) -> u64 {
        match self {
            Family::I => q * q + q + 1,
            Family::Ii => q * q - 1,
            Family::Iii => (q - 1) * (q - 1),
            Family::Iv => q * (q - 1),
            Family::V | Family::Vi | Family::Vii => q * q,
            Family::Viii | Family::Ix => 9,
        }
    }

    fn description(self) -> &'static str {
        match self {
            Family::I => "multiplication by L^x on L = GF(q^3), modulo K^x",
            Family::Ii => "multiplication by L^x on L = GF(q^2) in the first two coordinates",
            Family::Iii => "diagonal matrices diag(a, b, 1)",
            Family::Iv => "[[r, r a, 0], [0, r, 0], [0, 0, 1]]",
            Family::V => "unipotent U(a, a, b)",
            Family::Vi => "unipotent U(0, a, b)",
            Family::Vii => "unipotent U(a, 0, b)",
            Family::Viii => "<diag(1, w, w^2), cyclic coordinate shift>",
            Family::Ix => "<multiplication by a cube root of K^x, Frobenius> on GF(q^3)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family tag {s:?}")))
    }
}

/// An abelian group of projectivities, presented in invariant-factor form,
/// together with its action on `P²(K)`.
#[derive(Debug, Clone)]
pub struct PlaneAction {
    family: Family,
    plane: ProjectivePlane,
    group: AbelianGroup,
    note: IsoNote,
    /// Normalized matrix of every group element, by group index.
    matrices: Vec<Mat3>,
    point_gens: Vec<Vec<u32>>,
    line_gens: Vec<Vec<u32>>,
}

fn additive_basis(f: &FiniteField) -> Vec<FieldElement> {
    (0..f.degree())
        .map(|k| {
            let mut c = vec![0u64; f.degree()];
            c[k] = 1;
            f.from_coeffs(&c).expect("unit vector")
        })
        .collect()
}

fn family_generators(f: &FiniteField, family: Family) -> Result<Vec<Mat3>> {
    let q = f.order();
    let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
    let g = f.generator();
    let basis = additive_basis(f);
    if matches!(family, Family::Viii | Family::Ix) && q % 3 != 1 {
        return Err(Error::precondition(format!("family {family} needs q = 1 mod 3, got q = {q}")));
    }
    Ok(match family {
        Family::I => {
            let ext = Extension::new(f, 3)?;
            vec![from_kmatrix(&ext.multiplication_matrix(ext.big().generator()))]
        }
        Family::Ii => {
            let ext = Extension::new(f, 2)?;
            let m = ext.multiplication_matrix(ext.big().generator());
            vec![[[m[0][0], m[0][1], z], [m[1][0], m[1][1], z], [z, z, o]]]
        }
        Family::Iii => vec![diagonal(g, o, o), diagonal(o, g, o)],
        Family::Iv => {
            let mut v = vec![[[g, z, z], [z, g, z], [z, z, o]]];
            v.extend(basis.iter().map(|&a| [[o, a, z], [z, o, z], [z, z, o]]));
            v
        }
        Family::V => {
            let mut v: Vec<Mat3> = basis.iter().map(|&a| unipotent(a, a, z)).collect();
            v.extend(basis.iter().map(|&b| unipotent(z, z, b)));
            v
        }
        Family::Vi => {
            let mut v: Vec<Mat3> = basis.iter().map(|&a| unipotent(z, a, z)).collect();
            v.extend(basis.iter().map(|&b| unipotent(z, z, b)));
            v
        }
        Family::Vii => {
            let mut v: Vec<Mat3> = basis.iter().map(|&a| unipotent(a, z, z)).collect();
            v.extend(basis.iter().map(|&b| unipotent(z, z, b)));
            v
        }
        Family::Viii => {
            let w = f.exp((q - 1) / 3);
            vec![diagonal(o, w, f.mul(w, w)), [[z, z, o], [o, z, z], [z, o, z]]]
        }
        Family::Ix => {
            let ext = Extension::new(f, 3)?;
            let big = ext.big();
            let gamma = big.exp((big.order() - 1) / (3 * (q - 1)));
            let d = f.degree();
            vec![
                from_kmatrix(&ext.multiplication_matrix(gamma)),
                from_kmatrix(&ext.linear_matrix(|x| big.frobenius(x, d))),
            ]
        }
    })
}

/// Closes the generators under multiplication modulo scalars, identity first.
fn closure(f: &FiniteField, gens: &[Mat3]) -> (Vec<Mat3>, HashMap<Mat3, usize>) {
    let id = identity(f);
    let mut elems = vec![id];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let m = normalize_matrix(f, &mat_mul(f, &elems[i], g));
            if !index.contains_key(&m) {
                index.insert(m, elems.len());
                elems.push(m);
            }
        }
        i += 1;
    }
    (elems, index)
}

impl PlaneAction {
    pub fn new(field: &FiniteField, family: Family) -> Result<Self> {
        let plane = ProjectivePlane::new(field)?;
        let gens = family_generators(field, family)?;
        for g in &gens {
            if det(field, g).is_zero() {
                return Err(Error::InvalidGroup("singular generator".into()));
            }
        }
        let (elems, index) = closure(field, &gens);
        let (pres, map) = Presentation::from_operation(elems.len(), 0, |a, b| {
            index[&normalize_matrix(field, &mat_mul(field, &elems[a], &elems[b]))]
        });
        let group = pres.group().clone();
        let mut matrices = vec![elems[0]; elems.len()];
        for (i, &gi) in map.iter().enumerate() {
            matrices[gi] = elems[i];
        }
        let note = pres.note(family.description());
        let mut action = PlaneAction {
            family,
            plane,
            group,
            note,
            matrices,
            point_gens: Vec::new(),
            line_gens: Vec::new(),
        };
        let n = action.plane.len();
        for i in 0..action.group.rank() {
            let b = action.group.basis_element(i);
            action.point_gens.push((0..n).map(|p| action.point_image(b, p) as u32).collect());
            action.line_gens.push((0..n).map(|l| action.line_image(b, l) as u32).collect());
        }
        Ok(action)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn plane(&self) -> &ProjectivePlane {
        &self.plane
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn iso_note(&self) -> &IsoNote {
        &self.note
    }

    pub fn matrix(&self, g: usize) -> &Mat3 {
        &self.matrices[g]
    }

    pub fn point_image(&self, g: usize, p: usize) -> usize {
        self.plane.apply_point(&self.matrices[g], p)
    }

    pub fn line_image(&self, g: usize, l: usize) -> usize {
        self.plane.apply_line(&self.matrices[self.group.neg(g)], l)
    }

    /// Point permutations of the invariant-factor generators.
    pub fn generator_point_perms(&self) -> &[Vec<u32>] {
        &self.point_gens
    }

    pub fn generator_line_perms(&self) -> &[Vec<u32>] {
        &self.line_gens
    }

    /// Checks the action axioms on the given pairs of group elements:
    /// the identity acts trivially, `g + h` acts as `h` after `g`, and
    /// incidence is preserved. With `exhaustive`, every pair is checked.
    pub fn check_action(&self, exhaustive: bool) -> Result<()> {
        let n = self.plane.len();
        let order = self.group.len();
        let fail = |m: String| Err(Error::InvalidGroup(m));
        for x in 0..n {
            if self.point_image(0, x) != x || self.line_image(0, x) != x {
                return fail(format!("identity moves {x}"));
            }
        }
        let step = if exhaustive { 1 } else { (order / 24).max(1) };
        let sample: Vec<usize> = (0..order).step_by(step).collect();
        let inc = self.plane.incidence_structure();
        for &g in &sample {
            for &(p, l) in inc.incidences() {
                if !self.plane.incident(self.point_image(g, p), self.line_image(g, l)) {
                    return fail(format!("element {g} breaks incidence ({p}, {l})"));
                }
            }
            for &h in &sample {
                let gh = self.group.add(g, h);
                for x in 0..n {
                    if self.point_image(gh, x) != self.point_image(h, self.point_image(g, x))
                        || self.line_image(gh, x) != self.line_image(h, self.line_image(g, x))
                    {
                        return fail(format!("elements {g}, {h} do not compose at {x}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn orbits(&self, gens: &[Vec<u32>]) -> Vec<Vec<usize>> {
        let n = self.plane.len();
        let mut label = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            label[start] = id;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for perm in gens {
                    let y = perm[x] as usize;
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_analysis(&self) -> Result<OrbitReport> {
        let point_orbits = self.orbits(&self.point_gens);
        let line_orbits = self.orbits(&self.line_gens);
        if point_orbits.len() != line_orbits.len() {
            return Err(Error::InvalidGroup("point and line orbit counts differ".into()));
        }
        let fixed = |o: &[Vec<usize>]| o.iter().filter(|x| x.len() == 1).map(|x| x[0]).collect();
        Ok(OrbitReport {
            t: point_orbits.len(),
            fixed_points: fixed(&point_orbits),
            fixed_lines: fixed(&line_orbits),
            point_orbit_sizes: point_orbits.iter().map(Vec::len).collect(),
            line_orbit_sizes: line_orbits.iter().map(Vec::len).collect(),
            point_orbits,
            line_orbits,
        })
    }

    /// `S = {g : p^g ∈ ℓ}` for a point and line with trivial stabilizers.
    pub fn extract_sidon(&self, point: usize, line: usize) -> Result<Extraction> {
        let order = self.group.len();
        let n = self.plane.len();
        if point >= n || line >= n {
            return Err(Error::InvalidParameter("point or line index out of range".into()));
        }
        let orbit: Vec<usize> = (0..order).map(|g| self.point_image(g, point)).collect();
        if orbit.iter().filter(|&&x| x == point).count() > 1 {
            return Err(Error::NontrivialStabilizer("point"));
        }
        if (1..order).any(|g| self.line_image(g, line) == line) {
            return Err(Error::NontrivialStabilizer("line"));
        }
        let set: Vec<usize> = (0..order).filter(|&g| self.plane.incident(orbit[g], line)).collect();
        let q = self.plane.field().order();
        let d = (q + 1) as i64 - set.len() as i64;
        let mut in_orbit = vec![false; n];
        for &x in &orbit {
            in_orbit[x] = true;
        }
        let outside = (0..n).filter(|&x| self.plane.incident(x, line) && !in_orbit[x]).count() as i64;
        let g = order as i64;
        let plane_size = (q * q + q + 1) as i64;
        let bound_ok = d * g <= (q as i64 + 1) * (plane_size - g);
        let report = is_sidon(&self.group, &set);
        Ok(Extraction {
            point: self.plane.triple(point).map(|x| x.0),
            line: self.plane.triple(line).map(|x| x.0),
            elements: set.iter().map(|&x| self.group.element(x)).collect(),
            set,
            d,
            outside_orbit: outside,
            bound_ok,
            sidon: report.is_sidon,
        })
    }

    /// First point and first line whose orbits are regular.
    pub fn default_pair(&self) -> Result<(usize, usize)> {
        let orbits = self.orbit_analysis()?;
        let order = self.group.len();
        let first = |o: &[Vec<usize>]| o.iter().filter(|x| x.len() == order).map(|x| x[0]).min();
        let p = first(&orbits.point_orbits).ok_or(Error::NontrivialStabilizer("point"))?;
        let l = first(&orbits.line_orbits).ok_or(Error::NontrivialStabilizer("line"))?;
        Ok((p, l))
    }

    pub fn extract_default(&self) -> Result<Extraction> {
        let (p, l) = self.default_pair()?;
        self.extract_sidon(p, l)
    }

    pub fn summary(&self) -> ActionSummary {
        ActionSummary {
            family: self.family,
            q: self.plane.field().order(),
            group: self.group.clone(),
            iso_note: self.note.clone(),
            generators: (0..self.group.rank())
                .map(|i| {
                    let b = self.group.basis_element(i);
                    GeneratorRecord {
                        element: self.group.element(b),
                        matrix: self.matrices[b].map(|r| r.map(|x| x.0)),
                    }
                })
                .collect(),
        }
    }
}

/// Builds the subgroup of the given family acting on `P²(field)`.
pub fn family_build(field: &FiniteField, family: Family) -> Result<PlaneAction> {
    PlaneAction::new(field, family)
}

/// The classical construction each productive family corresponds to.
pub fn matching_construction(family: Family) -> Option<DenseName> {
    match family {
        Family::I => Some(DenseName::Singer),
        Family::Ii => Some(DenseName::Bose),
        Family::Iii => Some(DenseName::Hughes),
        Family::Iv => Some(DenseName::Spence),
        Family::V => Some(DenseName::ErdosTuran),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recovery {
    pub family: Family,
    pub construction: Option<DenseName>,
    pub group: AbelianGroup,
    pub extraction: Option<Extraction>,
    pub equivalence: Option<AffineMap>,
    /// False when the automorphism search was sampled rather than complete.
    pub exhaustive: bool,
    pub note: Option<String>,
}

/// Extracts a Sidon set from each of families (i)-(v) and looks for an
/// affine map onto the matching direct construction.
pub fn recover_constructions(field: &FiniteField) -> Result<Vec<Recovery>> {
    let mut out = Vec::new();
    for family in [Family::I, Family::Ii, Family::Iii, Family::Iv, Family::V] {
        let action = PlaneAction::new(field, family)?;
        let name = matching_construction(family);
        let mut rec = Recovery {
            family,
            construction: name,
            group: action.group().clone(),
            extraction: None,
            equivalence: None,
            exhaustive: false,
            note: None,
        };
        let extraction = match action.extract_default() {
            Ok(e) => e,
            Err(e) => {
                rec.note = Some(e.to_string());
                out.push(rec);
                continue;
            }
        };
        let direct = match name.map(|n| construct_dense(n, field)) {
            Some(Ok(c)) => c,
            Some(Err(e)) => {
                rec.note = Some(format!("no direct construction: {e}"));
                rec.extraction = Some(extraction);
                out.push(rec);
                continue;
            }
            None => unreachable!("families (i)-(v) all match a construction"),
        };
        if direct.group != *action.group() {
            rec.note = Some("groups differ".into());
        } else {
            let search = affine_equivalent(action.group(), &extraction.set, &direct.set)?;
            rec.equivalence = search.witness;
            rec.exhaustive = search.exhaustive;
        }
        rec.extraction = Some(extraction);
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub element: GroupElement,
    /// Field element indices, row-major.
    pub matrix: [[u32; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSummary {
    pub family: Family,
    pub q: u64,
    pub group: AbelianGroup,
    pub iso_note: IsoNote,
    pub generators: Vec<GeneratorRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub t: usize,
    pub point_orbit_sizes: Vec<usize>,
    pub line_orbit_sizes: Vec<usize>,
    pub fixed_points: Vec<usize>,
    pub fixed_lines: Vec<usize>,
    #[serde(skip)]
    pub point_orbits: Vec<Vec<usize>>,
    #[serde(skip)]
    pub line_orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub point: [u32; 3],
    pub line: [u32; 3],
    #[serde(skip)]
    pub set: Vec<usize>,
    #[serde(rename = "S")]
    pub elements: Vec<GroupElement>,
    pub d: i64,
    pub outside_orbit: i64,
    pub bound_ok: bool,
    pub sidon: bool,
}
