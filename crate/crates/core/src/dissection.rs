//! Dissections of a convex polygon with labeled vertices `1..m`, diagonals
//! possibly crossing. Everything here is purely combinatorial on the circular
//! vertex order; no geometry is ever computed.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Maximum polygon size for the exhaustive subset scan (20 diagonals, 2^20
/// subsets).
pub const SUBSET_SCAN_CAP: usize = 8;

/// A chord `(a, b)` with `a < b`, excluding the outer edges `(i, i+1)` and
/// `(1, m)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: u32,
    b: u32,
}

impl Diagonal {
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a < b, "diagonal endpoints must be ordered");
        Diagonal { a, b }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

impl std::fmt::Display for Diagonal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagonal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, b) = <(u32, u32)>::deserialize(deserializer)?;
        if a >= b {
            return Err(D::Error::custom(format!("bad diagonal ({a},{b})")));
        }
        Ok(Diagonal { a, b })
    }
}

/// True iff the two chords intersect at an interior point: writing them as
/// `(a,c)` and `(b,d)`, either `a<b<c<d` or `b<a<d<c`. Chords sharing an
/// endpoint never cross.
pub fn crosses(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, c) = (d1.a, d1.b);
    let (b, d) = (d2.a, d2.b);
    (a < b && b < c && c < d) || (b < a && a < d && d < c)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DissectionError {
    #[error("({a},{b}) is not a diagonal of the {m}-gon")]
    InvalidDiagonal { m: usize, a: u32, b: u32 },
    #[error("polygon must have at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("{m}-gon exceeds the cap of {cap} for this enumerator")]
    TooLarge { m: usize, cap: usize },
    #[error("dissection has crossing diagonals")]
    HasCrossings,
}

/// A convex `m`-gon together with a set of diagonals. The outer edges
/// `(i, i+1)` and the closing edge `(1, m)` are implicit and always present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dissection {
    m: usize,
    diagonals: BTreeSet<Diagonal>,
}

impl Dissection {
    pub fn new(
        m: usize,
        diagonals: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, DissectionError> {
        if m < 2 {
            return Err(DissectionError::TooSmall(m));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let bad = a == 0
                || b as usize > m
                || a >= b
                || b - a < 2
                || (a == 1 && b as usize == m);
            if bad {
                return Err(DissectionError::InvalidDiagonal { m, a, b });
            }
            set.insert(Diagonal { a, b });
        }
        Ok(Dissection { m, diagonals: set })
    }

    pub fn empty(m: usize) -> Self {
        assert!(m >= 2);
        Dissection {
            m,
            diagonals: BTreeSet::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    /// True iff `(i, j)` is an outer edge or a diagonal of the dissection.
    pub fn edge_present(&self, i: u32, j: u32) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || j as usize > self.m || i == j {
            return false;
        }
        j == i + 1 || (i == 1 && j as usize == self.m) || self.diagonals.contains(&Diagonal { a: i, b: j })
    }

    pub fn is_noncrossing(&self) -> bool {
        let ds: Vec<Diagonal> = self.diagonals.iter().copied().collect();
        for (i, &d1) in ds.iter().enumerate() {
            for &d2 in &ds[i + 1..] {
                if crosses(d1, d2) {
                    return false;
                }
            }
        }
        true
    }

    /// Diagonally framed: every crossing pair `(a,c) x (b,d)` with
    /// `a<b<c<d` has all four frame edges `(a,b),(b,c),(c,d),(a,d)` present.
    pub fn is_diagonally_framed(&self) -> bool {
        let ds: Vec<Diagonal> = self.diagonals.iter().copied().collect();
        for (i, &d1) in ds.iter().enumerate() {
            for &d2 in &ds[i + 1..] {
                if !crosses(d1, d2) {
                    continue;
                }
                let (a, c) = (d1.a.min(d2.a), d1.b.min(d2.b));
                let (b, d) = (d1.a.max(d2.a), d1.b.max(d2.b));
                // now a < b < c < d
                if !(self.edge_present(a, b)
                    && self.edge_present(b, c)
                    && self.edge_present(c, d)
                    && self.edge_present(a, d))
                {
                    return false;
                }
            }
        }
        true
    }

    /// An empty quadrilateral: four vertices `a<b<c<d` whose four sides are
    /// edges, with neither inner diagonal present and no diagonal of the
    /// dissection crossing any of the four sides.
    pub fn has_quadrilateral(&self) -> bool {
        self.find_quadrilateral().is_some()
    }

    pub(crate) fn find_quadrilateral(&self) -> Option<[u32; 4]> {
        let m = self.m as u32;
        for a in 1..=m {
            for b in a + 1..=m {
                if !self.edge_present(a, b) {
                    continue;
                }
                for c in b + 1..=m {
                    if !self.edge_present(b, c) {
                        continue;
                    }
                    for d in c + 1..=m {
                        if !self.edge_present(c, d) || !self.edge_present(a, d) {
                            continue;
                        }
                        if self.diagonals.contains(&Diagonal { a, b: c })
                            || self.diagonals.contains(&Diagonal { a: b, b: d })
                        {
                            continue;
                        }
                        let sides = [(a, b), (b, c), (c, d), (a, d)];
                        let pierced = self.diagonals.iter().any(|&g| {
                            sides
                                .iter()
                                .any(|&(x, y)| crosses(g, Diagonal { a: x, b: y }))
                        });
                        if !pierced {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Presence-only triangle test: three pairwise connected vertices.
    pub fn has_triangle(&self) -> bool {
        let m = self.m as u32;
        for a in 1..=m {
            for b in a + 1..=m {
                if !self.edge_present(a, b) {
                    continue;
                }
                for c in b + 1..=m {
                    if self.edge_present(b, c) && self.edge_present(a, c) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Partitions the diagonals into equivalence classes under the transitive
    /// closure of crossing, each carrying its support (sorted endpoint set).
    pub fn intersectional_components(&self) -> Vec<IntersectionalComponent> {
        let ds: Vec<Diagonal> = self.diagonals.iter().copied().collect();
        let k = ds.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for i in 0..k {
            for j in i + 1..k {
                if crosses(ds[i], ds[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, BTreeSet<Diagonal>> =
            std::collections::BTreeMap::new();
        for (i, &d) in ds.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert(d);
        }
        let mut comps: Vec<IntersectionalComponent> = groups
            .into_values()
            .map(|diagonals| {
                let support: BTreeSet<u32> = diagonals
                    .iter()
                    .flat_map(|d| [d.a, d.b])
                    .collect();
                IntersectionalComponent {
                    diagonals,
                    support: support.into_iter().collect(),
                }
            })
            .collect();
        comps.sort_by_key(|c| *c.diagonals.iter().next().unwrap());
        comps
    }

    /// True iff every pair of support vertices of `comp` is connected.
    pub fn component_support_complete(&self, comp: &IntersectionalComponent) -> bool {
        let s = &comp.support;
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if !self.edge_present(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Boundary walk of the face containing the edge `(a, b)` inside the
    /// subpolygon `{a..b}`: starting at `a`, repeatedly step to the farthest
    /// reachable vertex (at `u`, the largest `w <= b` with `(u,w)` present),
    /// never taking `(a, b)` itself.
    pub(crate) fn face_walk(&self, a: u32, b: u32) -> Vec<u32> {
        debug_assert!(a < b && self.edge_present(a, b));
        let mut verts = vec![a];
        let mut u = a;
        loop {
            let mut next = None;
            for w in (u + 1..=b).rev() {
                if u == a && w == b {
                    continue; // the root edge does not bound its own face
                }
                if self.edge_present(u, w) {
                    next = Some(w);
                    break;
                }
            }
            let w = next.expect("outer edges guarantee progress");
            verts.push(w);
            if w == b {
                return verts;
            }
            u = w;
        }
    }

    /// Faces of the planar subdivision of a non-crossing dissection, each as a
    /// sorted vertex list, in lexicographic order.
    pub fn faces(&self) -> Result<Vec<Vec<u32>>, DissectionError> {
        if !self.is_noncrossing() {
            return Err(DissectionError::HasCrossings);
        }
        let mut out = Vec::new();
        let mut stack = vec![(1u32, self.m as u32)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            let face = self.face_walk(a, b);
            for w in face.windows(2) {
                if w[1] - w[0] >= 2 {
                    stack.push((w[0], w[1]));
                }
            }
            out.push(face);
        }
        out.sort();
        Ok(out)
    }
}

impl std::fmt::Debug for Dissection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dissection(m={}, {:?})", self.m, self.diagonals)
    }
}

/// An equivalence class of diagonals under transitive crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionalComponent {
    pub diagonals: BTreeSet<Diagonal>,
    pub support: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DissectionJson {
    m: usize,
    diagonals: Vec<Diagonal>,
}

impl Serialize for Dissection {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DissectionJson {
            m: self.m,
            diagonals: self.diagonals.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dissection {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DissectionJson::deserialize(deserializer)?;
        Dissection::new(raw.m, raw.diagonals.into_iter().map(|d| (d.a, d.b)))
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// All diagonals of the `m`-gon in lexicographic order.
pub fn all_diagonals(m: usize) -> Vec<Diagonal> {
    let m_u = m as u32;
    let mut out = Vec::new();
    for a in 1..=m_u {
        for b in a + 2..=m_u {
            if a == 1 && b == m_u {
                continue;
            }
            out.push(Diagonal { a, b });
        }
    }
    out
}

/// Precomputed tables for the exhaustive scan over every subset of diagonals
/// of the `m`-gon. Subsets are bitmasks over [`all_diagonals`]; all predicates
/// are pure bit operations, so scanning all `2^(m(m-3)/2)` subsets stays fast.
pub struct SubsetScan {
    m: usize,
    diagonals: Vec<Diagonal>,
    /// crossing partners of each diagonal
    cross: Vec<u32>,
    /// for each crossing pair (i, j), i < j: the frame edges that are
    /// diagonals, as a required mask
    frame_need: Vec<Vec<(usize, u32)>>,
    /// per vertex quadruple: (sides that are diagonals, inner diagonals,
    /// diagonals crossing a side)
    quads: Vec<(u32, u32, u32)>,
    /// per vertex triple: the sides that are diagonals (all-outer triples
    /// only exist for m = 3)
    triangles: Vec<u32>,
}

impl SubsetScan {
    pub fn new(m: usize) -> Result<Self, DissectionError> {
        if m < 2 {
            return Err(DissectionError::TooSmall(m));
        }
        if m > SUBSET_SCAN_CAP {
            return Err(DissectionError::TooLarge {
                m,
                cap: SUBSET_SCAN_CAP,
            });
        }
        let diagonals = all_diagonals(m);
        let k = diagonals.len();
        let index = |a: u32, b: u32| -> Option<usize> {
            diagonals.iter().position(|d| d.a == a && d.b == b)
        };
        let is_outer =
            |a: u32, b: u32| -> bool { b == a + 1 || (a == 1 && b as usize == m) };

        let mut cross = vec![0u32; k];
        for i in 0..k {
            for j in 0..k {
                if crosses(diagonals[i], diagonals[j]) {
                    cross[i] |= 1 << j;
                }
            }
        }

        let mut frame_need = vec![Vec::new(); k];
        for i in 0..k {
            for j in i + 1..k {
                if !crosses(diagonals[i], diagonals[j]) {
                    continue;
                }
                let (d1, d2) = (diagonals[i], diagonals[j]);
                let (a, c) = (d1.a.min(d2.a), d1.b.min(d2.b));
                let (b, d) = (d1.a.max(d2.a), d1.b.max(d2.b));
                let mut need = 0u32;
                for (x, y) in [(a, b), (b, c), (c, d), (a, d)] {
                    if !is_outer(x, y) {
                        need |= 1 << index(x, y).expect("frame edge is a diagonal");
                    }
                }
                frame_need[i].push((j, need));
            }
        }

        let m_u = m as u32;
        let mut quads = Vec::new();
        for a in 1..=m_u {
            for b in a + 1..=m_u {
                for c in b + 1..=m_u {
                    for d in c + 1..=m_u {
                        let mut sides = 0u32;
                        let mut cross_sides = 0u32;
                        for (x, y) in [(a, b), (b, c), (c, d), (a, d)] {
                            if !is_outer(x, y) {
                                sides |= 1 << index(x, y).expect("side is a diagonal");
                            }
                            let side = Diagonal { a: x, b: y };
                            for (g, dg) in diagonals.iter().enumerate() {
                                if crosses(*dg, side) {
                                    cross_sides |= 1 << g;
                                }
                            }
                        }
                        let mut inner = 0u32;
                        for (x, y) in [(a, c), (b, d)] {
                            if let Some(ix) = index(x, y) {
                                inner |= 1 << ix;
                            }
                        }
                        quads.push((sides, inner, cross_sides));
                    }
                }
            }
        }

        let mut triangles = Vec::new();
        for a in 1..=m_u {
            for b in a + 1..=m_u {
                for c in b + 1..=m_u {
                    let mut sides = 0u32;
                    for (x, y) in [(a, b), (b, c), (a, c)] {
                        if !is_outer(x, y) {
                            sides |= 1 << index(x, y).expect("side is a diagonal");
                        }
                    }
                    triangles.push(sides);
                }
            }
        }

        Ok(SubsetScan {
            m,
            diagonals,
            cross,
            frame_need,
            quads,
            triangles,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of subsets, `2^(m(m-3)/2)`.
    pub fn total(&self) -> u64 {
        1u64 << self.diagonals.len()
    }

    pub fn dissection(&self, mask: u32) -> Dissection {
        let diagonals = self
            .diagonals
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, d)| *d)
            .collect();
        Dissection {
            m: self.m,
            diagonals,
        }
    }

    pub fn is_noncrossing(&self, mask: u32) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.cross[i] & mask != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_framed(&self, mask: u32) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for &(j, need) in &self.frame_need[i] {
                if mask >> j & 1 == 1 && need & !mask != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn has_quadrilateral(&self, mask: u32) -> bool {
        self.quads
            .iter()
            .any(|&(sides, inner, cross_sides)| {
                sides & !mask == 0 && inner & mask == 0 && cross_sides & mask == 0
            })
    }

    pub fn has_triangle(&self, mask: u32) -> bool {
        self.triangles.iter().any(|&sides| sides & !mask == 0)
    }

    /// Counts masks satisfying `pred`, split over rank chunks in parallel.
    /// The chunking is fixed, so the result does not depend on the worker
    /// count.
    pub fn count_matching<F>(&self, pred: F) -> u64
    where
        F: Fn(&SubsetScan, u32) -> bool + Sync,
    {
        use rayon::prelude::*;
        let total = self.total();
        let chunks: u64 = 64.min(total);
        let per = total.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * per;
                let hi = ((c + 1) * per).min(total);
                (lo..hi)
                    .filter(|&mask| pred(self, mask as u32))
                    .count() as u64
            })
            .sum()
    }

    /// All masks, for sequential filtering.
    pub fn masks(&self) -> impl Iterator<Item = u32> {
        0..self.total() as u32
    }
}

/// Iterator over every dissection of the `m`-gon (all diagonal subsets).
/// Capped at `m = 8`; use a filter on the result for family scans.
pub fn all_dissections(m: usize) -> Result<impl Iterator<Item = Dissection>, DissectionError> {
    let scan = SubsetScan::new(m)?;
    Ok((0..scan.total() as u32).map(move |mask| scan.dissection(mask)))
}

/// Visits every non-crossing dissection of the `m`-gon whose faces all have
/// an allowed vertex count, by recursive face-splitting on the root edge
/// `(1, m)`. No subset scan is involved, so this is practical well beyond the
/// subset-scan cap.
pub fn for_each_noncrossing<P, F>(m: usize, allowed_face: P, mut visit: F)
where
    P: Fn(usize) -> bool + Copy,
    F: FnMut(&Dissection),
{
    assert!(m >= 2);
    if m == 2 {
        // degenerate 2-gon: only the empty dissection
        visit(&Dissection::empty(2));
        return;
    }
    let mut diagonals: BTreeSet<Diagonal> = BTreeSet::new();
    // regions are (a, b) root edges still to be filled, LIFO
    fn rec<P, F>(
        m: usize,
        regions: &mut Vec<(u32, u32)>,
        diagonals: &mut BTreeSet<Diagonal>,
        allowed_face: P,
        visit: &mut F,
    ) where
        P: Fn(usize) -> bool + Copy,
        F: FnMut(&Dissection),
    {
        let Some((a, b)) = regions.pop() else {
            let d = Dissection {
                m,
                diagonals: diagonals.clone(),
            };
            visit(&d);
            return;
        };
        debug_assert!(b - a >= 2, "span-1 regions are never queued");
        // choose the face containing (a, b): any nonempty subset of the
        // interior vertices
        let interior: Vec<u32> = (a + 1..b).collect();
        let t = interior.len();
        for pick in 1u32..(1 << t) {
            let mut face = vec![a];
            face.extend(
                interior
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &v)| v),
            );
            face.push(b);
            if !allowed_face(face.len()) {
                continue;
            }
            let is_outer = |x: u32, y: u32| y == x + 1 || (x == 1 && y as usize == m);
            let mut added = Vec::new();
            for w in face.windows(2) {
                if !is_outer(w[0], w[1]) {
                    let d = Diagonal { a: w[0], b: w[1] };
                    if diagonals.insert(d) {
                        added.push(d);
                    }
                }
            }
            let mut pushed = 0;
            for w in face.windows(2) {
                if w[1] - w[0] >= 2 {
                    regions.push((w[0], w[1]));
                    pushed += 1;
                }
            }
            rec(m, regions, diagonals, allowed_face, visit);
            for _ in 0..pushed {
                regions.pop();
            }
            for d in added {
                diagonals.remove(&d);
            }
        }
        regions.push((a, b));
    }
    let mut regions = vec![(1u32, m as u32)];
    rec(m, &mut regions, &mut diagonals, allowed_face, &mut visit);
}

/// Materializes [`for_each_noncrossing`] without a face filter. Capped at
/// `m = 12` to keep memory bounded; counting paths use the visitor directly.
pub fn noncrossing_dissections(m: usize) -> Result<Vec<Dissection>, DissectionError> {
    if m > 12 {
        return Err(DissectionError::TooLarge { m, cap: 12 });
    }
    let mut out = Vec::new();
    for_each_noncrossing(m, |_| true, |d| out.push(d.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: usize, ds: &[(u32, u32)]) -> Dissection {
        Dissection::new(m, ds.iter().copied()).unwrap()
    }

    #[test]
    fn crossing_predicate() {
        assert!(crosses(Diagonal::new(1, 3), Diagonal::new(2, 4)));
        assert!(crosses(Diagonal::new(1, 7), Diagonal::new(6, 8)));
        assert!(!crosses(Diagonal::new(1, 5), Diagonal::new(1, 3)));
        assert!(!crosses(Diagonal::new(1, 5), Diagonal::new(2, 4))); // nested
    }

    #[test]
    fn construction_rejects_non_diagonals() {
        assert!(Dissection::new(10, [(9, 10)]).is_err()); // outer
        assert!(Dissection::new(10, [(1, 10)]).is_err()); // closing edge
        assert!(Dissection::new(10, [(5, 3)]).is_err()); // unordered
        assert!(Dissection::new(10, [(0, 3)]).is_err());
        assert!(Dissection::new(10, [(3, 11)]).is_err());
        assert!(Dissection::new(10, [(1, 5)]).is_ok());
    }

    #[test]
    fn edge_presence() {
        let diss = d(10, &[(1, 5)]);
        assert!(diss.edge_present(1, 5));
        assert!(diss.edge_present(9, 10));
        assert!(diss.edge_present(1, 10));
        assert!(!diss.edge_present(2, 6));
    }

    #[test]
    fn framing() {
        assert!(!d(8, &[(1, 5), (3, 7)]).is_diagonally_framed());
        assert!(d(8, &[(1, 5), (3, 7), (1, 3), (3, 5), (5, 7), (1, 7)]).is_diagonally_framed());
        assert!(d(8, &[(1, 4), (4, 7)]).is_diagonally_framed()); // vacuous
    }

    #[test]
    fn quadrilaterals() {
        assert!(d(4, &[]).has_quadrilateral());
        assert!(!d(4, &[(1, 3)]).has_quadrilateral());
        assert!(!d(4, &[(1, 3), (2, 4)]).has_quadrilateral());
        let tengon = d(10, &[(1, 5), (1, 7), (1, 9), (5, 7), (5, 9), (7, 9)]);
        assert!(!tengon.has_quadrilateral());
        // empty 5-gon has no quadrilateral but a framed empty 4-gon does
        assert!(!d(5, &[]).has_quadrilateral());
    }

    #[test]
    fn quadrilateral_side_crossing_exclusion() {
        // with (3,6) alone, {1,2,3,6} is an empty quadrilateral; adding (2,5)
        // sends a diagonal across its side (3,6), so nothing qualifies anymore
        assert!(d(6, &[(3, 6)]).has_quadrilateral());
        assert!(!d(6, &[(3, 6), (2, 5)]).has_quadrilateral());
    }

    #[test]
    fn triangles() {
        assert!(d(5, &[(1, 3)]).has_triangle());
        assert!(!d(8, &[]).has_triangle());
        assert!(!d(8, &[(2, 6)]).has_triangle());
        assert!(d(3, &[]).has_triangle()); // the 3-gon itself
    }

    #[test]
    fn components_running_example() {
        let diss = d(8, &[(1, 7), (6, 8), (1, 5), (1, 3), (2, 4), (3, 5)]);
        let comps = diss.intersectional_components();
        assert_eq!(comps.len(), 3);
        let sets: Vec<Vec<(u32, u32)>> = comps
            .iter()
            .map(|c| c.diagonals.iter().map(|d| (d.a(), d.b())).collect())
            .collect();
        assert!(sets.contains(&vec![(1, 7), (6, 8)]));
        assert!(sets.contains(&vec![(1, 5)]));
        assert!(sets.contains(&vec![(1, 3), (2, 4), (3, 5)]));
        let purple = comps
            .iter()
            .find(|c| c.diagonals.contains(&Diagonal::new(1, 7)))
            .unwrap();
        assert_eq!(purple.support, vec![1, 6, 7, 8]);
    }

    #[test]
    fn support_completeness() {
        let framed = d(8, &[(1, 5), (3, 7), (1, 3), (3, 5), (5, 7), (1, 7)]);
        for c in framed.intersectional_components() {
            assert!(framed.component_support_complete(&c));
        }
        let bare = d(8, &[(1, 7), (6, 8)]);
        let c = &bare.intersectional_components()[0];
        assert!(!bare.component_support_complete(c)); // (1,6) missing
        let single = d(8, &[(2, 6)]);
        let c = &single.intersectional_components()[0];
        assert!(single.component_support_complete(c));
        assert!(d(8, &[]).intersectional_components().is_empty());
    }

    #[test]
    fn framed_quad_free_squares_are_exactly_three() {
        let scan = SubsetScan::new(4).unwrap();
        let mut found: Vec<Vec<(u32, u32)>> = scan
            .masks()
            .filter(|&k| scan.is_framed(k) && !scan.has_quadrilateral(k))
            .map(|k| {
                scan.dissection(k)
                    .diagonals()
                    .iter()
                    .map(|d| (d.a(), d.b()))
                    .collect()
            })
            .collect();
        found.sort();
        assert_eq!(
            found,
            vec![vec![(1, 3)], vec![(1, 3), (2, 4)], vec![(2, 4)]]
        );
    }

    #[test]
    fn subset_scan_counts() {
        let scan = SubsetScan::new(4).unwrap();
        assert_eq!(scan.total(), 4);
        let framed_quad_free = scan.count_matching(|s, m| s.is_framed(m) && !s.has_quadrilateral(m));
        assert_eq!(framed_quad_free, 3);
        assert!(SubsetScan::new(9).is_err());
    }

    #[test]
    fn subset_scan_agrees_with_dissection_predicates() {
        for m in 3..=6 {
            let scan = SubsetScan::new(m).unwrap();
            for mask in scan.masks() {
                let diss = scan.dissection(mask);
                assert_eq!(scan.is_noncrossing(mask), diss.is_noncrossing());
                assert_eq!(scan.is_framed(mask), diss.is_diagonally_framed());
                assert_eq!(scan.has_quadrilateral(mask), diss.has_quadrilateral());
                assert_eq!(scan.has_triangle(mask), diss.has_triangle());
            }
        }
    }

    #[test]
    fn noncrossing_enumeration_small() {
        let sq = noncrossing_dissections(4).unwrap();
        assert_eq!(sq.len(), 3);
        let sets: Vec<&Dissection> = sq.iter().collect();
        assert!(sets.iter().any(|d| d.diagonals().is_empty()));
        assert_eq!(noncrossing_dissections(3).unwrap().len(), 1);
        assert_eq!(noncrossing_dissections(5).unwrap().len(), 11);
        assert_eq!(noncrossing_dissections(6).unwrap().len(), 45);
    }

    #[test]
    fn noncrossing_matches_subset_scan() {
        for m in 3..=8 {
            let scan = SubsetScan::new(m).unwrap();
            let brute = scan.count_matching(|s, mask| s.is_noncrossing(mask));
            assert_eq!(noncrossing_dissections(m).unwrap().len() as u64, brute);
        }
    }

    #[test]
    fn noncrossing_yields_distinct_noncrossing_dissections() {
        let all = noncrossing_dissections(7).unwrap();
        let set: std::collections::HashSet<&Dissection> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|d| d.is_noncrossing()));
    }

    #[test]
    fn faces_examples() {
        let split = d(4, &[(1, 3)]);
        assert_eq!(split.faces().unwrap(), vec![vec![1, 2, 3], vec![1, 3, 4]]);
        assert_eq!(d(5, &[]).faces().unwrap(), vec![vec![1, 2, 3, 4, 5]]);
        assert!(d(4, &[(1, 3), (2, 4)]).faces().is_err());
    }

    #[test]
    fn faces_of_separable_example() {
        // the 12-gon with the face memberships stated for the separable walk
        let diss = d(12, &[(1, 4), (4, 6), (6, 8), (1, 8), (1, 10)]);
        let faces = diss.faces().unwrap();
        assert!(faces.contains(&vec![1, 10, 11, 12]));
        assert!(faces.contains(&vec![1, 8, 9, 10]));
        assert!(faces.contains(&vec![1, 4, 6, 8]));
    }

    #[test]
    fn faces_cover_every_edge_count() {
        // interior edge count: each diagonal borders two faces, outer edges one
        for dset in noncrossing_dissections(7).unwrap() {
            let faces = dset.faces().unwrap();
            let mut edge_uses: std::collections::HashMap<(u32, u32), usize> =
                std::collections::HashMap::new();
            for f in &faces {
                let k = f.len();
                for i in 0..k {
                    let (x, y) = (f[i], f[(i + 1) % k]);
                    let key = (x.min(y), x.max(y));
                    *edge_uses.entry(key).or_default() += 1;
                }
            }
            for dg in dset.diagonals() {
                assert_eq!(edge_uses.get(&(dg.a(), dg.b())), Some(&2), "{dset:?}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let diss = d(10, &[(1, 5), (5, 7), (1, 7)]);
        let json = serde_json::to_string(&diss).unwrap();
        assert_eq!(json, r#"{"m":10,"diagonals":[[1,5],[1,7],[5,7]]}"#);
        let back: Dissection = serde_json::from_str(&json).unwrap();
        assert_eq!(back, diss);
        assert!(serde_json::from_str::<Dissection>(r#"{"m":4,"diagonals":[[1,4]]}"#).is_err());
    }
}
