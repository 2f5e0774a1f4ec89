//! Interval posets represented by their interval sets. The order is set
//! inclusion, so the set determines the poset; equality of posets is set
//! equality, with no isomorphism quotient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bijection::{self, NodeKind};
use crate::permutation::{
    interval_set_has_sum_split, smallest_simple, Interval, Permutation,
};

#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum InvalidPosetReason {
    #[error("a trivial interval (singleton or [1,n]) is missing")]
    MissingTrivial,
    #[error("the dissection image is not diagonally framed")]
    NotFramed,
    #[error("the dissection image contains an empty quadrilateral")]
    HasQuadrilateral,
    #[error("the recursive decomposition does not reproduce the interval set")]
    BadDecomposition,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("interval {0} is out of bounds for n={1}")]
    OutOfBounds(Interval, usize),
    #[error("poset is not binary")]
    NotBinary,
    #[error("invalid interval poset: {0}")]
    InvalidPoset(InvalidPosetReason),
}

/// Classification flags for an interval poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetShape {
    /// Hasse diagram is a tree: every non-maximal element has exactly one
    /// cover.
    pub is_tree: bool,
    /// No element covers more than two elements.
    pub is_binary: bool,
    /// `{[1,n]}` plus singletons, with at least four minimal elements.
    pub is_dual_claw: bool,
    /// All intervals of `{1..n}`.
    pub is_argyle: bool,
}

/// The set of all intervals of a permutation, ordered by inclusion.
///
/// [`IntervalPoset::new`] accepts any in-bounds candidate set so that
/// validation can diagnose corrupt inputs; every other constructor in this
/// crate produces genuinely valid posets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalPoset {
    n: usize,
    intervals: BTreeSet<Interval>,
}

impl IntervalPoset {
    pub fn of(p: &Permutation) -> Self {
        IntervalPoset {
            n: p.n(),
            intervals: p.intervals(),
        }
    }

    pub fn new(n: usize, intervals: BTreeSet<Interval>) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::OutOfBounds(Interval::new(1, 1), 0));
        }
        for iv in &intervals {
            if iv.hi() as usize > n {
                return Err(PosetError::OutOfBounds(*iv, n));
            }
        }
        Ok(IntervalPoset { n, intervals })
    }

    /// The dual claw shape: `[1,n]` plus all singletons.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        let mut intervals: BTreeSet<Interval> =
            (1..=n as u32).map(Interval::singleton).collect();
        intervals.insert(Interval::new(1, n as u32));
        IntervalPoset { n, intervals }
    }

    /// All intervals of `{1..n}`: the poset of the identity permutation.
    pub fn argyle(n: usize) -> Self {
        assert!(n >= 1);
        let mut intervals = BTreeSet::new();
        for lo in 1..=n as u32 {
            for hi in lo..=n as u32 {
                intervals.insert(Interval::new(lo, hi));
            }
        }
        IntervalPoset { n, intervals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &BTreeSet<Interval> {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.intervals.contains(iv)
    }

    pub fn root(&self) -> Interval {
        Interval::new(1, self.n as u32)
    }

    fn has_all_trivial(&self) -> bool {
        self.intervals.contains(&self.root())
            && (1..=self.n as u32).all(|v| self.intervals.contains(&Interval::singleton(v)))
    }

    /// Cover pairs `(parent, child)`: `child ⊂ parent` with nothing strictly
    /// between, sorted by `(parent, child)`.
    pub fn hasse_covers(&self) -> Vec<(Interval, Interval)> {
        let elems: Vec<Interval> = self.intervals.iter().copied().collect();
        let mut covers = Vec::new();
        for &parent in &elems {
            // candidates inside `parent`, largest first; a candidate is a
            // cover unless it sits inside an already-found cover
            let mut inside: Vec<Interval> = elems
                .iter()
                .copied()
                .filter(|j| *j != parent && parent.contains(j))
                .collect();
            inside.sort_by_key(|j| std::cmp::Reverse(j.len()));
            let mut children: Vec<Interval> = Vec::new();
            for j in inside {
                if !children.iter().any(|c| c.contains(&j)) {
                    children.push(j);
                }
            }
            for c in children {
                covers.push((parent, c));
            }
        }
        covers.sort();
        covers
    }

    fn cover_child_counts(&self) -> BTreeMap<Interval, usize> {
        let mut counts: BTreeMap<Interval, usize> =
            self.intervals.iter().map(|&i| (i, 0)).collect();
        for (parent, _) in self.hasse_covers() {
            *counts.get_mut(&parent).unwrap() += 1;
        }
        counts
    }

    pub fn classify(&self) -> PosetShape {
        let covers = self.hasse_covers();
        let mut child_count: BTreeMap<Interval, usize> = BTreeMap::new();
        let mut parent_count: BTreeMap<Interval, usize> = BTreeMap::new();
        for (p, c) in &covers {
            *child_count.entry(*p).or_default() += 1;
            *parent_count.entry(*c).or_default() += 1;
        }
        let root = self.root();
        let is_tree = self
            .intervals
            .iter()
            .filter(|&&iv| iv != root)
            .all(|iv| parent_count.get(iv).copied().unwrap_or(0) == 1);
        let is_binary = child_count.values().all(|&c| c <= 2);
        let is_dual_claw = self.n >= 4 && self.intervals == IntervalPoset::trivial(self.n).intervals;
        let is_argyle = self.intervals == IntervalPoset::argyle(self.n).intervals;
        PosetShape {
            is_tree,
            is_binary,
            is_dual_claw,
            is_argyle,
        }
    }

    /// True iff some interval of the set is the disjoint union of two smaller
    /// intervals of the set. Interval posets of block-wise simple
    /// permutations are exactly the ones without such a split.
    pub fn has_sum_split(&self) -> bool {
        interval_set_has_sum_split(&self.intervals)
    }

    /// Decides whether this interval set is the interval poset of some
    /// permutation, with a reason code on rejection.
    ///
    /// Two independent routes must agree: the dissection image has to be
    /// diagonally framed and quadrilateral-free, and the recursive
    /// decomposition has to reproduce the interval set exactly.
    pub fn validate(&self) -> Result<(), InvalidPosetReason> {
        if !self.has_all_trivial() {
            return Err(InvalidPosetReason::MissingTrivial);
        }
        let d = bijection::dissection_of(self);
        if !d.is_diagonally_framed() {
            return Err(InvalidPosetReason::NotFramed);
        }
        if d.has_quadrilateral() {
            return Err(InvalidPosetReason::HasQuadrilateral);
        }
        if self.n == 1 {
            return Ok(());
        }
        let node = bijection::decompose(&d).map_err(|_| InvalidPosetReason::BadDecomposition)?;
        if node.intervals() != self.intervals {
            return Err(InvalidPosetReason::BadDecomposition);
        }
        Ok(())
    }

    /// A canonical permutation whose interval poset is exactly this poset.
    ///
    /// The decomposition tree is realized bottom-up: dual claws inflate the
    /// lexicographically smallest simple permutation of the right arity,
    /// argyles become monotone chains whose direction alternates with
    /// nesting depth (two aligned chains would merge and create intervals
    /// that are not in the poset).
    pub fn realize(&self) -> Result<Permutation, PosetError> {
        self.validate().map_err(PosetError::InvalidPoset)?;
        if self.n == 1 {
            return Ok(Permutation::identity(1));
        }
        let d = bijection::dissection_of(self);
        let node = bijection::decompose(&d)
            .map_err(|_| PosetError::InvalidPoset(InvalidPosetReason::BadDecomposition))?;

        #[derive(Clone, Copy, PartialEq)]
        enum Chain {
            Rising,
            Falling,
        }

        fn realize_node(node: &bijection::DecompositionNode, parent: Option<Chain>) -> Permutation {
            match &node.kind {
                NodeKind::Singleton => Permutation::identity(1),
                NodeKind::DualClaw => {
                    let k = node.children.len();
                    let skeleton = smallest_simple(k).expect("claw arity is at least 4");
                    // block at skeleton position i realizes the child whose
                    // value rank is the skeleton's value there
                    let blocks: Vec<Permutation> = skeleton
                        .word()
                        .iter()
                        .map(|&v| realize_node(&node.children[v as usize - 1], None))
                        .collect();
                    skeleton.inflate(&blocks).expect("arity matches")
                }
                NodeKind::Argyle { .. } => {
                    let dir = match parent {
                        Some(Chain::Rising) => Chain::Falling,
                        _ => Chain::Rising,
                    };
                    let k = node.children.len();
                    let blocks: Vec<Permutation> = match dir {
                        Chain::Rising => node
                            .children
                            .iter()
                            .map(|c| realize_node(c, Some(Chain::Rising)))
                            .collect(),
                        Chain::Falling => node
                            .children
                            .iter()
                            .rev()
                            .map(|c| realize_node(c, Some(Chain::Falling)))
                            .collect(),
                    };
                    let skeleton = match dir {
                        Chain::Rising => Permutation::identity(k),
                        Chain::Falling => {
                            Permutation::new((1..=k as u32).rev().collect()).unwrap()
                        }
                    };
                    skeleton.inflate(&blocks).expect("arity matches")
                }
            }
        }

        Ok(realize_node(&node, None))
    }

    /// The maximal elements of the maximal argyles in the composition, except
    /// the root: exactly the non-singleton, non-root intervals that properly
    /// overlap no element of the poset. Requires a binary poset.
    pub fn argyle_max_elements(&self) -> Result<BTreeSet<Interval>, PosetError> {
        if !self.classify().is_binary {
            return Err(PosetError::NotBinary);
        }
        let root = self.root();
        Ok(self
            .intervals
            .iter()
            .filter(|iv| !iv.is_singleton() && **iv != root)
            .filter(|iv| !self.intervals.iter().any(|j| iv.properly_overlaps(j)))
            .copied()
            .collect())
    }

    /// Deterministic DOT rendering of the Hasse diagram. Nodes are listed in
    /// `(lo, hi)` order, children left to right by `lo`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph interval_poset {\n  node [shape=box];\n");
        for iv in &self.intervals {
            let _ = writeln!(out, "  \"{iv}\";");
        }
        for (parent, child) in self.hasse_covers() {
            let _ = writeln!(out, "  \"{parent}\" -> \"{child}\";");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for IntervalPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntervalPoset(n={}, {:?})", self.n, self.intervals)
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    intervals: Vec<Interval>,
}

impl Serialize for IntervalPoset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PosetJson {
            n: self.n,
            intervals: self.intervals.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalPoset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PosetJson::deserialize(deserializer)?;
        IntervalPoset::new(raw.n, raw.intervals.into_iter().collect())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Cover-count histogram, used by the no-three-cover checks.
pub fn cover_counts(p: &IntervalPoset) -> BTreeMap<Interval, usize> {
    p.cover_child_counts()
}
