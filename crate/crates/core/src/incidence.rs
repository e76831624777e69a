//! Finite incidence structures: developments of subsets of abelian groups,
//! axiom checks for partial linear spaces and projective planes, duality.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::AbelianGroup;
use crate::sidon::normalize_set;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct IncidenceStructure {
    n_points: usize,
    n_lines: usize,
    incidences: Vec<(usize, usize)>,
    point_lines: Vec<Vec<usize>>,
    line_points: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    points: usize,
    lines: usize,
    incidences: Vec<(usize, usize)>,
}

impl TryFrom<RawStructure> for IncidenceStructure {
    type Error = Error;
    fn try_from(r: RawStructure) -> Result<Self> {
        IncidenceStructure::new(r.points, r.lines, r.incidences)
    }
}

impl From<IncidenceStructure> for RawStructure {
    fn from(s: IncidenceStructure) -> Self {
        RawStructure { points: s.n_points, lines: s.n_lines, incidences: s.incidences }
    }
}

/// Two points and two lines, all four incidences present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadrilateral {
    pub points: [usize; 2],
    pub lines: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum PlaneViolation {
    TooSmall,
    PointsNotJoined { points: [usize; 2], common_lines: usize },
    LinesNotMeeting { lines: [usize; 2], common_points: usize },
    Degenerate,
    Irregular,
}

impl std::fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlaneViolation::TooSmall => write!(f, "fewer than four points"),
            PlaneViolation::PointsNotJoined { points, common_lines } => {
                write!(f, "points {} and {} lie on {} common lines", points[0], points[1], common_lines)
            }
            PlaneViolation::LinesNotMeeting { lines, common_points } => {
                write!(f, "lines {} and {} share {} points", lines[0], lines[1], common_points)
            }
            PlaneViolation::Degenerate => write!(f, "no four points with no three collinear"),
            PlaneViolation::Irregular => write!(f, "point and line counts do not match the line size"),
        }
    }
}

/// How far `dev(S)` is from a projective plane of order `|S| - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deficiency {
    pub order: u64,
    pub plane_size: u64,
    pub missing_points: i64,
    pub missing_lines: i64,
    pub unjoined_point_pairs: u64,
}

impl IncidenceStructure {
    pub fn new(n_points: usize, n_lines: usize, mut incidences: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(p, l)) = incidences.iter().find(|&&(p, l)| p >= n_points || l >= n_lines) {
            return Err(Error::InvalidParameter(format!("incidence ({p}, {l}) out of range")));
        }
        incidences.sort_unstable();
        incidences.dedup();
        let mut point_lines = vec![Vec::new(); n_points];
        let mut line_points = vec![Vec::new(); n_lines];
        for &(p, l) in &incidences {
            point_lines[p].push(l);
            line_points[l].push(p);
        }
        Ok(IncidenceStructure { n_points, n_lines, incidences, point_lines, line_points })
    }

    /// `dev(S)`: points and lines are the elements of `G`, and `p` lies on
    /// `l` iff `p - l ∈ S`.
    pub fn develop(group: &AbelianGroup, set: &[usize]) -> Self {
        let set = normalize_set(set);
        let n = group.len();
        let mut inc = Vec::with_capacity(n * set.len());
        for l in 0..n {
            for &s in &set {
                inc.push((group.add(l, s), l));
            }
        }
        Self::new(n, n, inc).expect("indices are group elements")
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn incidences(&self) -> &[(usize, usize)] {
        &self.incidences
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.line_points[l]
    }

    pub fn is_incident(&self, p: usize, l: usize) -> bool {
        self.point_lines[p].binary_search(&l).is_ok()
    }

    pub fn dualize(&self) -> Self {
        let inc = self.incidences.iter().map(|&(p, l)| (l, p)).collect();
        Self::new(self.n_lines, self.n_points, inc).expect("transposed indices are in range")
    }

    /// Checks that the incidence graph has no 4-cycle, i.e. two points share
    /// at most one line. Returns a 4-cycle on failure.
    pub fn is_partial_linear_space(&self) -> std::result::Result<(), Quadrilateral> {
        let mut via = vec![usize::MAX; self.n_points];
        for p in 0..self.n_points {
            for &l in &self.point_lines[p] {
                for &r in &self.line_points[l] {
                    if r <= p {
                        continue;
                    }
                    if via[r] != usize::MAX && via[r] != l {
                        return Err(Quadrilateral { points: [p, r], lines: [via[r], l] });
                    }
                    via[r] = l;
                }
            }
            for &l in &self.point_lines[p] {
                for &r in &self.line_points[l] {
                    via[r] = usize::MAX;
                }
            }
        }
        Ok(())
    }

    fn pair_counts(adj: &[Vec<usize>], rev: &[Vec<usize>]) -> std::result::Result<(), ([usize; 2], usize)> {
        let n = adj.len();
        let mut count = vec![0usize; n];
        for a in 0..n {
            for &l in &adj[a] {
                for &b in &rev[l] {
                    count[b] += 1;
                }
            }
            for (b, &c) in count.iter().enumerate() {
                if b != a && c != 1 {
                    return Err(([a.min(b), a.max(b)], c));
                }
            }
            count.iter_mut().for_each(|c| *c = 0);
        }
        Ok(())
    }

    /// Returns the order on success, otherwise the first violated axiom.
    pub fn is_projective_plane(&self) -> std::result::Result<u64, PlaneViolation> {
        if self.n_points < 4 || self.n_lines < 4 {
            return Err(PlaneViolation::TooSmall);
        }
        Self::pair_counts(&self.point_lines, &self.line_points)
            .map_err(|(points, common_lines)| PlaneViolation::PointsNotJoined { points, common_lines })?;
        Self::pair_counts(&self.line_points, &self.point_lines)
            .map_err(|(lines, common_points)| PlaneViolation::LinesNotMeeting { lines, common_points })?;
        // In a linear space whose lines pairwise meet, a quadrangle exists iff
        // one exists through any two given points.
        let l01 = self.join(0, 1).ok_or(PlaneViolation::Degenerate)?;
        let p2 = (0..self.n_points).find(|&r| !self.is_incident(r, l01)).ok_or(PlaneViolation::Degenerate)?;
        let l02 = self.join(0, p2).ok_or(PlaneViolation::Degenerate)?;
        let l12 = self.join(1, p2).ok_or(PlaneViolation::Degenerate)?;
        (0..self.n_points)
            .find(|&r| !self.is_incident(r, l01) && !self.is_incident(r, l02) && !self.is_incident(r, l12))
            .ok_or(PlaneViolation::Degenerate)?;
        let k = self.line_points[0].len() as u64;
        let q = k - 1;
        let n = (q * q + q + 1) as usize;
        let regular = self.line_points.iter().all(|l| l.len() as u64 == k)
            && self.point_lines.iter().all(|p| p.len() as u64 == k);
        if self.n_points != n || self.n_lines != n || !regular {
            return Err(PlaneViolation::Irregular);
        }
        Ok(q)
    }

    /// The first line through both points, if any.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let (la, lb) = (&self.point_lines[a], &self.point_lines[b]);
        la.iter().copied().find(|l| lb.binary_search(l).is_ok())
    }

    /// True when the given maps form an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Self, point_map: &[usize], line_map: &[usize]) -> bool {
        if self.n_points != other.n_points
            || self.n_lines != other.n_lines
            || self.incidences.len() != other.incidences.len()
            || point_map.len() != self.n_points
            || line_map.len() != self.n_lines
        {
            return false;
        }
        let bijective = |m: &[usize], n: usize| {
            let mut hit = vec![false; n];
            m.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
        };
        bijective(point_map, self.n_points)
            && bijective(line_map, self.n_lines)
            && self.incidences.iter().all(|&(p, l)| other.is_incident(point_map[p], line_map[l]))
    }

    /// Deficiency of `dev(S)` relative to a plane of order `|S| - 1`.
    pub fn deficiency(&self, set_size: usize) -> Deficiency {
        let order = set_size.saturating_sub(1) as u64;
        let plane_size = order * order + order + 1;
        let mut joined = 0u64;
        let mut seen = vec![usize::MAX; self.n_points];
        for p in 0..self.n_points {
            for &l in &self.point_lines[p] {
                for &r in &self.line_points[l] {
                    if r > p && seen[r] != p {
                        seen[r] = p;
                        joined += 1;
                    }
                }
            }
        }
        let n = self.n_points as u64;
        Deficiency {
            order,
            plane_size,
            missing_points: plane_size as i64 - self.n_points as i64,
            missing_lines: plane_size as i64 - self.n_lines as i64,
            unjoined_point_pairs: n * n.saturating_sub(1) / 2 - joined,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph incidence {\n");
        for p in 0..self.n_points {
            let _ = writeln!(out, "  p{p} [shape=circle];");
        }
        for l in 0..self.n_lines {
            let _ = writeln!(out, "  l{l} [shape=box];");
        }
        for &(p, l) in &self.incidences {
            let _ = writeln!(out, "  p{p} -- l{l};");
        }
        out.push_str("}\n");
        out
    }
}

/// Checks that `x -> -x` maps `dev(S)` onto its dual.
pub fn self_dual_via_negation(group: &AbelianGroup, set: &[usize]) -> bool {
    let dev = IncidenceStructure::develop(group, set);
    let dual = dev.dualize();
    let neg: Vec<usize> = (0..group.len()).map(|x| group.neg(x)).collect();
    dev.is_isomorphism(&dual, &neg, &neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidon::is_sidon;
    use rand::{Rng, SeedableRng};

    #[test]
    fn develop_counts() {
        let z7 = AbelianGroup::cyclic(7);
        let d = IncidenceStructure::develop(&z7, &[1, 2, 4]);
        assert_eq!((d.n_points(), d.n_lines(), d.incidences().len()), (7, 7, 21));
        assert!(IncidenceStructure::develop(&AbelianGroup::cyclic(5), &[]).incidences().is_empty());
        let id = IncidenceStructure::develop(&AbelianGroup::cyclic(3), &[0]);
        assert_eq!(id.incidences(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn fano_and_order_three() {
        let d = IncidenceStructure::develop(&AbelianGroup::cyclic(7), &[1, 2, 4]);
        assert_eq!(d.is_partial_linear_space(), Ok(()));
        assert_eq!(d.is_projective_plane(), Ok(2));
        let d = IncidenceStructure::develop(&AbelianGroup::cyclic(13), &[0, 1, 3, 9]);
        assert_eq!(d.is_projective_plane(), Ok(3));
    }

    #[test]
    fn parabola_is_not_a_plane() {
        let g = AbelianGroup::elementary(5, 2);
        let s: Vec<usize> = (0..5u64).map(|x| g.encode(&[x, x * x % 5]).unwrap()).collect();
        let d = IncidenceStructure::develop(&g, &s);
        assert!(d.is_partial_linear_space().is_ok());
        assert!(d.is_projective_plane().is_err());
    }

    #[test]
    fn four_cycle_witness() {
        let d = IncidenceStructure::develop(&AbelianGroup::cyclic(7), &[0, 1, 2]);
        let c = d.is_partial_linear_space().unwrap_err();
        for p in c.points {
            for l in c.lines {
                assert!(d.is_incident(p, l));
            }
        }
        assert_ne!(c.points[0], c.points[1]);
        assert_ne!(c.lines[0], c.lines[1]);
        let empty = IncidenceStructure::new(0, 0, vec![]).unwrap();
        assert!(empty.is_partial_linear_space().is_ok());
    }

    #[test]
    fn degenerate_near_pencil_rejected() {
        // one long line with points 0..3 plus point 4 joined to each by a line
        let mut inc = vec![(0, 0), (1, 0), (2, 0), (3, 0)];
        for i in 0..4 {
            inc.push((i, i + 1));
            inc.push((4, i + 1));
        }
        let s = IncidenceStructure::new(5, 5, inc).unwrap();
        assert_eq!(s.is_projective_plane(), Err(PlaneViolation::Degenerate));
    }

    #[test]
    fn duality() {
        let d = IncidenceStructure::develop(&AbelianGroup::cyclic(6), &[0, 1, 3]);
        assert_eq!(d.dualize().dualize(), d);
        assert!(self_dual_via_negation(&AbelianGroup::cyclic(7), &[1, 2, 4]));
        assert!(self_dual_via_negation(&AbelianGroup::cyclic(6), &[0, 1, 3]));
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<IncidenceStructure>(&json).unwrap(), d);
        assert!(d.to_dot().contains("p0 -- l0"));
    }

    #[test]
    fn deficiency_of_planes_and_nonplanes() {
        let d = IncidenceStructure::develop(&AbelianGroup::cyclic(7), &[1, 2, 4]);
        let r = d.deficiency(3);
        assert_eq!((r.missing_points, r.unjoined_point_pairs), (0, 0));
        let g = AbelianGroup::elementary(3, 2);
        let s: Vec<usize> = (0..3u64).map(|x| g.encode(&[x, x * x % 3]).unwrap()).collect();
        let r = IncidenceStructure::develop(&g, &s).deficiency(3);
        assert_eq!(r.missing_points, 7 - 9);
        assert_eq!(r.unjoined_point_pairs, 36 - 9 * 3);
    }

    #[test]
    fn sidon_iff_partial_linear_space_exhaustive_small() {
        for factors in [vec![5], vec![2, 2], vec![6], vec![2, 4], vec![8], vec![3, 3]] {
            let g = AbelianGroup::new(factors).unwrap();
            let n = g.len();
            for mask in 0u32..(1 << n) {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let d = IncidenceStructure::develop(&g, &s);
                assert_eq!(is_sidon(&g, &s).is_sidon, d.is_partial_linear_space().is_ok(), "{s:?}");
            }
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(10..200);
            let g = AbelianGroup::cyclic(n);
            let k = rng.gen_range(0..8);
            let s: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n as usize)).collect();
            let d = IncidenceStructure::develop(&g, &s);
            assert_eq!(is_sidon(&g, &s).is_sidon, d.is_partial_linear_space().is_ok());
        }
    }
}
