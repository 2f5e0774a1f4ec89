//! The maps between interval posets and polygon dissections.
//!
//! An interval `[a, b]` corresponds to the chord `(a, b+1)` of the
//! `(n+1)`-gon; singletons become outer edges and `[1, n]` becomes the
//! closing edge, so only the proper non-singleton intervals contribute
//! diagonals. The image of a poset is always diagonally framed and free of
//! empty quadrilaterals, and those two properties characterize the image.
//!
//! The separable family has its own pair of maps: a binary poset drops all
//! interior argyle structure and keeps one diagonal per non-root argyle
//! maximum, which lands in the non-crossing dissections; the inverse
//! rebuilds the poset face by face.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dissection::Dissection;
use crate::permutation::Interval;
use crate::poset::{IntervalPoset, PosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("dissection is not diagonally framed")]
    NotFramed,
    #[error("dissection contains an empty quadrilateral at {0:?}")]
    HasQuadrilateral([u32; 4]),
    #[error("cut vertices {0:?} do not induce a complete graph")]
    CutsNotComplete(Vec<u32>),
    #[error("boundary walk closed a quadrilateral face {0:?}")]
    QuadrilateralFace([u32; 4]),
    #[error("poset is not binary")]
    NotBinary,
    #[error("dissection has crossing diagonals")]
    HasCrossings,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Singleton,
    DualClaw,
    Argyle { order: usize },
}

/// One node of the recursive decomposition of a framed, quadrilateral-free
/// dissection: the subpolygon `{a..b}` maps to the interval `[a, b-1]`, which
/// is either a singleton, the root of a dual claw, or the root of an argyle
/// over the cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub interval: Interval,
    pub kind: NodeKind,
    /// boundary vertices delimiting the children, increasing, including both
    /// region endpoints; empty for singletons
    pub cuts: Vec<u32>,
    pub children: Vec<DecompositionNode>,
}

impl DecompositionNode {
    /// Every interval produced by the subtree.
    pub fn intervals(&self) -> BTreeSet<Interval> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Interval>) {
        match self.kind {
            NodeKind::Singleton => {
                out.insert(self.interval);
            }
            NodeKind::DualClaw => {
                out.insert(self.interval);
            }
            NodeKind::Argyle { .. } => {
                for (i, &ci) in self.cuts.iter().enumerate() {
                    for &cj in &self.cuts[i + 1..] {
                        out.insert(Interval::new(ci, cj - 1));
                    }
                }
            }
        }
        for child in &self.children {
            child.collect(out);
        }
    }
}

/// Maps a poset to its dissection: `m = n + 1`, one diagonal `(a, b+1)` per
/// proper non-singleton interval `[a, b]`. The one-element poset maps to the
/// degenerate 2-gon with no diagonals.
pub fn dissection_of(p: &IntervalPoset) -> Dissection {
    let n = p.n();
    let diagonals = p
        .intervals()
        .iter()
        .filter(|iv| !iv.is_trivial(n))
        .map(|iv| (iv.lo(), iv.hi() + 1));
    Dissection::new(n + 1, diagonals).expect("proper intervals map to legal diagonals")
}

/// Inverse of [`dissection_of`] on its image: every edge `(a, b)` of a
/// diagonally framed, quadrilateral-free dissection becomes the interval
/// `[a, b-1]`.
pub fn poset_of(d: &Dissection) -> Result<IntervalPoset, BijectionError> {
    if !d.is_diagonally_framed() {
        return Err(BijectionError::NotFramed);
    }
    if let Some(q) = d.find_quadrilateral() {
        return Err(BijectionError::HasQuadrilateral(q));
    }
    Ok(poset_of_unchecked(d))
}

fn poset_of_unchecked(d: &Dissection) -> IntervalPoset {
    let m = d.m() as u32;
    let n = (m - 1) as usize;
    let mut intervals: BTreeSet<Interval> = (1..m).map(Interval::singleton).collect();
    intervals.insert(Interval::new(1, m - 1));
    for dg in d.diagonals() {
        intervals.insert(Interval::new(dg.a(), dg.b() - 1));
    }
    IntervalPoset::new(n, intervals).expect("edges are in bounds")
}

/// Recursive decomposition of a framed, quadrilateral-free dissection,
/// starting from the closing edge `(1, m)`.
///
/// At the edge `(a, b)` the cut set is `{a, b}` plus every `v` strictly
/// between with both `(a, v)` and `(v, b)` present. Three or more cuts must
/// induce a complete graph and give an argyle over them; exactly two cuts
/// mean the region is claw-shaped and the minimal subpolygon containing
/// `(a, b)` is found by the farthest-step boundary walk.
pub fn decompose(d: &Dissection) -> Result<DecompositionNode, BijectionError> {
    decompose_edge(d, 1, d.m() as u32)
}

fn decompose_edge(d: &Dissection, a: u32, b: u32) -> Result<DecompositionNode, BijectionError> {
    debug_assert!(d.edge_present(a, b));
    if b - a == 1 {
        return Ok(DecompositionNode {
            interval: Interval::singleton(a),
            kind: NodeKind::Singleton,
            cuts: Vec::new(),
            children: Vec::new(),
        });
    }
    let mut cuts = vec![a];
    cuts.extend((a + 1..b).filter(|&v| d.edge_present(a, v) && d.edge_present(v, b)));
    cuts.push(b);

    if cuts.len() >= 3 {
        for (i, &ci) in cuts.iter().enumerate() {
            for &cj in &cuts[i + 1..] {
                if !d.edge_present(ci, cj) {
                    return Err(BijectionError::CutsNotComplete(cuts));
                }
            }
        }
        let children = cuts
            .windows(2)
            .map(|w| decompose_edge(d, w[0], w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        let order = cuts.len() - 1;
        Ok(DecompositionNode {
            interval: Interval::new(a, b - 1),
            kind: NodeKind::Argyle { order },
            cuts,
            children,
        })
    } else {
        let walk = d.face_walk(a, b);
        debug_assert!(walk.len() != 3, "a 3-walk would have produced a cut");
        if walk.len() == 4 {
            return Err(BijectionError::QuadrilateralFace([
                walk[0], walk[1], walk[2], walk[3],
            ]));
        }
        let children = walk
            .windows(2)
            .map(|w| decompose_edge(d, w[0], w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DecompositionNode {
            interval: Interval::new(a, b - 1),
            kind: NodeKind::DualClaw,
            cuts: walk,
            children,
        })
    }
}

/// The separable-family forward map: one diagonal `(a, b+1)` per non-root
/// argyle maximum of a binary poset. The image is always non-crossing.
pub fn noncrossing_dissection_of(p: &IntervalPoset) -> Result<Dissection, BijectionError> {
    let maxes = p.argyle_max_elements().map_err(|e| match e {
        PosetError::NotBinary => BijectionError::NotBinary,
        other => unreachable!("unexpected error from argyle_max_elements: {other}"),
    })?;
    let d = Dissection::new(p.n() + 1, maxes.iter().map(|iv| (iv.lo(), iv.hi() + 1)))
        .expect("argyle maxima map to legal diagonals");
    debug_assert!(d.is_noncrossing());
    Ok(d)
}

/// The separable-family inverse: rebuilds the binary poset of a non-crossing
/// dissection by splitting on the face containing each region's root edge. A
/// triangular face contributes a plain binary node, a larger face an argyle
/// over its boundary.
pub fn poset_of_noncrossing(d: &Dissection) -> Result<IntervalPoset, BijectionError> {
    if !d.is_noncrossing() {
        return Err(BijectionError::HasCrossings);
    }
    let m = d.m() as u32;
    let mut intervals = BTreeSet::new();
    let mut stack = vec![(1u32, m)];
    while let Some((a, b)) = stack.pop() {
        if b - a == 1 {
            intervals.insert(Interval::singleton(a));
            continue;
        }
        let face = d.face_walk(a, b);
        for (i, &vi) in face.iter().enumerate() {
            for &vj in &face[i + 1..] {
                intervals.insert(Interval::new(vi, vj - 1));
            }
        }
        for w in face.windows(2) {
            stack.push((w[0], w[1]));
        }
    }
    Ok(IntervalPoset::new((m - 1) as usize, intervals).expect("faces stay in bounds"))
}
