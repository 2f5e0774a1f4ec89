//! Permutations in one-line notation, their intervals, and the structural
//! predicates (simple, separable, block-wise simple) together with the
//! composition operators (direct sum, skew sum, inflation).
//!
//! Values and positions are both 1-based. An *interval* of a permutation is a
//! range of consecutive values that occupies consecutive positions; the
//! singletons and the whole range `[1,n]` are the trivial intervals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A range `[lo, hi]` of consecutive values, both endpoints inclusive.
///
/// Ordered by `(lo, hi)`, which is also the order used for every serialized
/// artifact (JSON, DOT).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: u32,
    hi: u32,
}

impl Interval {
    /// Panics if `lo < 1` or `lo > hi`; use [`Interval::try_new`] for
    /// untrusted input.
    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(1 <= lo && lo <= hi, "bad interval [{lo},{hi}]");
        Interval { lo, hi }
    }

    pub fn try_new(lo: u32, hi: u32) -> Option<Self> {
        (1 <= lo && lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn singleton(v: u32) -> Self {
        Interval::new(v, v)
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    // an interval is never empty, so there is no is_empty counterpart
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    /// Trivial means a singleton or the whole ground set `[1, n]`.
    pub fn is_trivial(&self, n: usize) -> bool {
        self.is_singleton() || (self.lo == 1 && self.hi as usize == n)
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Proper overlap: the two ranges intersect and neither contains the other.
    pub fn properly_overlaps(&self, other: &Interval) -> bool {
        let (a, b) = if self.lo <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        a.lo < b.lo && b.lo <= a.hi && a.hi < b.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.lo, self.hi).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lo, hi) = <(u32, u32)>::deserialize(deserializer)?;
        Interval::try_new(lo, hi)
            .ok_or_else(|| D::Error::custom(format!("bad interval [{lo},{hi}]")))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("not an integer token: `{0}`")]
    MalformedInput(String),
    #[error("word is not a permutation of 1..n")]
    NotAPermutation,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("expected {expected} blocks, got {got}")]
pub struct ArityMismatch {
    pub expected: usize,
    pub got: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no simple permutation of size {0}")]
pub struct NoSimpleOfThatSize(pub usize);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("rank {rank} out of range for n={n}")]
pub struct RankOutOfRange {
    pub n: usize,
    pub rank: u64,
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, rejecting non-bijective
    /// words.
    pub fn new(word: Vec<u32>) -> Result<Self, ParseError> {
        let n = word.len();
        if n == 0 {
            return Err(ParseError::NotAPermutation);
        }
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(ParseError::NotAPermutation);
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// `positions()[v-1]` is the 1-based position of value `v`.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = vec![0u32; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v as usize - 1] = i as u32 + 1;
        }
        pos
    }

    /// All intervals of the permutation, trivial ones included.
    ///
    /// Value-window sweep: for each `a`, grow `b` upward while maintaining the
    /// min/max position of the values `a..=b`; `[a,b]` is an interval exactly
    /// when the positions span `b - a`. O(n^2).
    pub fn intervals(&self) -> BTreeSet<Interval> {
        let n = self.n() as u32;
        let pos = self.positions();
        let mut out = BTreeSet::new();
        for a in 1..=n {
            let mut min_p = pos[a as usize - 1];
            let mut max_p = min_p;
            for b in a..=n {
                let p = pos[b as usize - 1];
                min_p = min_p.min(p);
                max_p = max_p.max(p);
                if max_p - min_p == b - a {
                    out.insert(Interval::new(a, b));
                }
            }
        }
        out
    }

    fn has_proper_interval(&self) -> bool {
        let n = self.n() as u32;
        let pos = self.positions();
        for a in 1..=n {
            let mut min_p = pos[a as usize - 1];
            let mut max_p = min_p;
            for b in a + 1..=n {
                let p = pos[b as usize - 1];
                min_p = min_p.min(p);
                max_p = max_p.max(p);
                if max_p - min_p == b - a && !(a == 1 && b == n) {
                    return true;
                }
            }
        }
        false
    }

    /// Simple means no proper interval. Sizes 2 and 3 are not simple under the
    /// convention used throughout this crate; size 1 is.
    pub fn is_simple(&self) -> bool {
        match self.n() {
            1 => true,
            2 | 3 => false,
            _ => !self.has_proper_interval(),
        }
    }

    /// Separable means reachable from the singleton by direct and skew sums.
    pub fn is_separable(&self) -> bool {
        fn rec(word: &[u32]) -> bool {
            let n = word.len();
            if n == 1 {
                return true;
            }
            let vmin = *word.iter().min().unwrap();
            let vmax = *word.iter().max().unwrap();
            let mut run_min = u32::MAX;
            let mut run_max = 0;
            for k in 1..n {
                run_min = run_min.min(word[k - 1]);
                run_max = run_max.max(word[k - 1]);
                // prefix holds the k lowest values -> direct sum split
                if run_max - vmin + 1 == k as u32 {
                    return rec(&word[..k]) && rec(&word[k..]);
                }
                // prefix holds the k highest values -> skew sum split
                if vmax - run_min + 1 == k as u32 {
                    return rec(&word[..k]) && rec(&word[k..]);
                }
            }
            false
        }
        rec(&self.word)
    }

    /// Block-wise simple means no interval splits as a direct or skew sum of
    /// two blocks (singleton blocks count).
    pub fn is_block_wise_simple(&self) -> bool {
        !interval_set_has_sum_split(&self.intervals())
    }

    /// `p ⊕ q`: `p` followed by `q` shifted up by `|p|`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.n() as u32;
        let word = self
            .word
            .iter()
            .copied()
            .chain(other.word.iter().map(|&v| v + shift))
            .collect();
        Permutation { word }
    }

    /// `p ⊖ q`: `p` shifted up by `|q|`, followed by `q`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let shift = other.n() as u32;
        let word = self
            .word
            .iter()
            .map(|&v| v + shift)
            .chain(other.word.iter().copied())
            .collect();
        Permutation { word }
    }

    /// Inflation `self[blocks]`: the value at position `i` of the skeleton is
    /// replaced by a block order-isomorphic to `blocks[i]`. Blocks occupy
    /// consecutive positions, and consecutive value ranges ordered by the
    /// skeleton's values.
    pub fn inflate(&self, blocks: &[Permutation]) -> Result<Permutation, ArityMismatch> {
        let k = self.n();
        if blocks.len() != k {
            return Err(ArityMismatch {
                expected: k,
                got: blocks.len(),
            });
        }
        // value offset of the block holding skeleton value v: total size of
        // blocks holding smaller skeleton values
        let mut size_by_value = vec![0u32; k];
        for (i, &v) in self.word.iter().enumerate() {
            size_by_value[v as usize - 1] = blocks[i].n() as u32;
        }
        let mut offset_by_value = vec![0u32; k];
        let mut acc = 0;
        for v in 0..k {
            offset_by_value[v] = acc;
            acc += size_by_value[v];
        }
        let mut word = Vec::with_capacity(acc as usize);
        for (i, &v) in self.word.iter().enumerate() {
            let off = offset_by_value[v as usize - 1];
            word.extend(blocks[i].word.iter().map(|&x| x + off));
        }
        Ok(Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", strs.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts either a digit string (sizes up to 9) or comma/space-separated
/// integers.
impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::MalformedInput(s.to_string()));
        }
        let word: Vec<u32> = if s.contains(',') || s.contains(char::is_whitespace) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| ParseError::MalformedInput(t.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            if s.len() > 9 {
                // digit-string shorthand is unambiguous only up to n = 9
                return Err(ParseError::MalformedInput(s.to_string()));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| ParseError::MalformedInput(c.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(word)
    }
}

/// Shared with the poset module: does any interval of the set split as a
/// union of two smaller intervals of the set?
pub(crate) fn interval_set_has_sum_split(intervals: &BTreeSet<Interval>) -> bool {
    for iv in intervals {
        if iv.is_singleton() {
            continue;
        }
        for m in iv.lo()..iv.hi() {
            if intervals.contains(&Interval::new(iv.lo(), m))
                && intervals.contains(&Interval::new(m + 1, iv.hi()))
            {
                return true;
            }
        }
    }
    false
}

/// Lexicographically smallest simple permutation of size `k`, found by a
/// pruned depth-first scan (a prefix is abandoned as soon as it completes a
/// proper value interval). Results are cached per size.
pub fn smallest_simple(k: usize) -> Result<Permutation, NoSimpleOfThatSize> {
    match k {
        0 | 2 | 3 => return Err(NoSimpleOfThatSize(k)),
        1 => return Ok(Permutation::identity(1)),
        _ => {}
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Permutation>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return Ok(p.clone());
    }

    fn prefix_closes_interval(prefix: &[u32], k: usize) -> bool {
        // any position window [s, t] ending at the last placed position that
        // holds a contiguous value range of width 2..=k-1
        let t = prefix.len();
        let mut min_v = prefix[t - 1];
        let mut max_v = prefix[t - 1];
        for s in (1..t).rev() {
            if t - s + 1 > k - 1 {
                break;
            }
            min_v = min_v.min(prefix[s - 1]);
            max_v = max_v.max(prefix[s - 1]);
            if (max_v - min_v) as usize == t - s {
                return true;
            }
        }
        false
    }

    fn dfs(k: usize, prefix: &mut Vec<u32>, used: &mut [bool]) -> bool {
        if prefix.len() == k {
            return true;
        }
        for v in 1..=k as u32 {
            if used[v as usize - 1] {
                continue;
            }
            prefix.push(v);
            used[v as usize - 1] = true;
            if !prefix_closes_interval(prefix, k) && dfs(k, prefix, used) {
                return true;
            }
            prefix.pop();
            used[v as usize - 1] = false;
        }
        false
    }

    let mut prefix = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let found = dfs(k, &mut prefix, &mut used);
    assert!(found, "simple permutations exist for every size >= 4");
    let p = Permutation { word: prefix };
    cache.lock().unwrap().entry(k).or_insert_with(|| p.clone());
    Ok(p)
}

pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial overflows u64 beyond 20");
    (1..=n as u64).product()
}

/// Advances `word` to its lexicographic successor; false once at the last one.
pub fn next_permutation(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Lehmer-code rank of `p` in lexicographic order, in `0..n!`.
pub fn rank(p: &Permutation) -> u64 {
    let n = p.n();
    let word = p.word();
    let mut r = 0u64;
    for i in 0..n {
        let smaller = word[i + 1..].iter().filter(|&&v| v < word[i]).count() as u64;
        r += smaller * factorial(n - 1 - i);
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, rank: u64) -> Result<Permutation, RankOutOfRange> {
    if n == 0 || rank >= factorial(n) {
        return Err(RankOutOfRange { n, rank });
    }
    let mut remaining: Vec<u32> = (1..=n as u32).collect();
    let mut word = Vec::with_capacity(n);
    let mut r = rank;
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let idx = (r / f) as usize;
        r %= f;
        word.push(remaining.remove(idx));
    }
    Ok(Permutation { word })
}

/// Iterates all permutations of size `n` in lexicographic order. Use
/// [`Permutations::range`] to traverse a rank range, which is how exhaustive
/// scans are partitioned across workers.
pub struct Permutations {
    current: Option<Vec<u32>>,
    remaining: u64,
}

pub fn permutations(n: usize) -> Permutations {
    Permutations {
        current: Some(Permutation::identity(n).word),
        remaining: factorial(n),
    }
}

impl Permutations {
    pub fn range(n: usize, start: u64, end: u64) -> Result<Permutations, RankOutOfRange> {
        let total = factorial(n);
        let end = end.min(total);
        if start >= end {
            return Ok(Permutations {
                current: None,
                remaining: 0,
            });
        }
        Ok(Permutations {
            current: Some(unrank(n, start)?.word),
            remaining: end - start,
        })
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let word = self.current.as_mut()?;
        let item = Permutation { word: word.clone() };
        self.remaining -= 1;
        if !next_permutation(word) {
            self.current = None;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn iv(lo: u32, hi: u32) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn parse_digit_string() {
        assert_eq!(p("314297856").word(), &[3, 1, 4, 2, 9, 7, 8, 5, 6]);
        assert_eq!(p("1").word(), &[1]);
    }

    #[test]
    fn parse_comma_separated() {
        assert_eq!(p("2,4,1,3").word(), &[2, 4, 1, 3]);
        assert_eq!(p("10, 2, 3, 4, 5, 6, 7, 8, 9, 1").n(), 10);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            "3x1".parse::<Permutation>(),
            Err(ParseError::MalformedInput("x".to_string()))
        );
        assert_eq!("1123".parse::<Permutation>(), Err(ParseError::NotAPermutation));
        assert_eq!("1,2,4".parse::<Permutation>(), Err(ParseError::NotAPermutation));
        // '0' is not a value; digit strings beyond 9 symbols are ambiguous
        assert!("102".parse::<Permutation>().is_err());
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["314297856", "1", "2413"] {
            assert_eq!(p(s).to_string(), s);
        }
        let big = Permutation::identity(11);
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn intervals_of_running_example() {
        let proper: BTreeSet<Interval> = p("314297856")
            .intervals()
            .into_iter()
            .filter(|i| !i.is_trivial(9))
            .collect();
        let expected: BTreeSet<Interval> =
            [iv(5, 9), iv(1, 4), iv(5, 6), iv(7, 8), iv(7, 9), iv(5, 8)]
                .into_iter()
                .collect();
        assert_eq!(proper, expected);
    }

    #[test]
    fn intervals_of_simple_permutation_are_trivial() {
        let ivs = p("3517246").intervals();
        assert_eq!(ivs.len(), 8); // 7 singletons + [1,7]
        assert!(ivs.iter().all(|i| i.is_trivial(7)));
    }

    #[test]
    fn intervals_of_singleton() {
        assert_eq!(p("1").intervals().len(), 1);
    }

    #[test]
    fn simplicity() {
        assert!(p("3517246").is_simple());
        assert!(p("2413").is_simple());
        assert!(p("1").is_simple());
        assert!(!p("12").is_simple());
        assert!(!p("21").is_simple());
        assert!(!p("231").is_simple());
        assert!(!p("1234").is_simple());
    }

    #[test]
    fn sums() {
        assert_eq!(p("45213").direct_sum(&p("312")), p("45213867"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert_eq!(p("1").skew_sum(&p("12")), p("312"));
    }

    #[test]
    fn inflation() {
        assert_eq!(p("21").inflate(&[p("1"), p("12")]).unwrap(), p("312"));
        assert_eq!(p("12").inflate(&[p("21"), p("1")]).unwrap(), p("213"));
        let id_blocks = vec![p("1"), p("1"), p("1"), p("1")];
        assert_eq!(p("2413").inflate(&id_blocks).unwrap(), p("2413"));
        assert_eq!(
            p("12").inflate(&[p("1")]),
            Err(ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn inflation_matches_sums() {
        let a = p("2413");
        let b = p("132");
        assert_eq!(a.direct_sum(&b), p("12").inflate(&[a.clone(), b.clone()]).unwrap());
        assert_eq!(a.skew_sum(&b), p("21").inflate(&[a, b]).unwrap());
    }

    #[test]
    fn separability() {
        assert!(p("45213867").is_separable());
        assert!(!p("2413").is_separable());
        assert!(!p("3142").is_separable());
        assert!(p("1").is_separable());
        assert!(p("1234").is_separable());
    }

    /// Independent oracle: separable <=> avoids 2413 and 3142.
    fn contains_pattern(word: &[u32], pat: &[u32; 4]) -> bool {
        let n = word.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vals = [word[a], word[b], word[c], word[d]];
                        let mut order = [0usize; 4];
                        for (i, v) in vals.iter().enumerate() {
                            order[i] = vals.iter().filter(|&&x| x < *v).count() + 1;
                        }
                        if order.iter().zip(pat.iter()).all(|(&o, &q)| o as u32 == q) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn separable_iff_avoids_2413_and_3142() {
        for n in 1..=8 {
            for q in permutations(n) {
                let avoids = !contains_pattern(q.word(), &[2, 4, 1, 3])
                    && !contains_pattern(q.word(), &[3, 1, 4, 2]);
                assert_eq!(q.is_separable(), avoids, "mismatch at {q}");
            }
        }
    }

    #[test]
    fn block_wise_simplicity() {
        assert!(p("4253716").is_block_wise_simple());
        assert!(!p("4253716").is_simple());
        assert!(p("2413").is_block_wise_simple());
        for n in 2..=3 {
            for q in permutations(n) {
                assert!(!q.is_block_wise_simple(), "{q} should not be block-wise simple");
            }
        }
        for n in 4..=6 {
            for q in permutations(n) {
                assert_eq!(q.is_block_wise_simple(), q.is_simple(), "mismatch at {q}");
            }
        }
    }

    #[test]
    fn smallest_simple_known_values() {
        assert_eq!(smallest_simple(1).unwrap(), p("1"));
        assert_eq!(smallest_simple(4).unwrap(), p("2413"));
        assert_eq!(smallest_simple(2), Err(NoSimpleOfThatSize(2)));
        assert_eq!(smallest_simple(3), Err(NoSimpleOfThatSize(3)));
    }

    #[test]
    fn smallest_simple_matches_exhaustive_scan() {
        for k in 4..=7 {
            let oracle = permutations(k).find(|q| q.is_simple()).unwrap();
            assert_eq!(smallest_simple(k).unwrap(), oracle, "size {k}");
        }
        // frozen from the scan above
        assert_eq!(smallest_simple(5).unwrap(), p("24153"));
        assert_eq!(smallest_simple(6).unwrap(), p("241635"));
        assert_eq!(smallest_simple(7).unwrap(), p("2415736"));
    }

    #[test]
    fn smallest_simple_memo_is_concurrency_safe() {
        let found: Vec<Permutation> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..8)
                .map(|_| scope.spawn(|| smallest_simple(8).unwrap()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for w in &found {
            assert_eq!(w, &p("24157386"));
        }
    }

    #[test]
    fn permutation_iteration_and_ranking() {
        let all: Vec<Permutation> = permutations(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], p("123"));
        assert_eq!(all[5], p("321"));
        assert_eq!(unrank(3, 0).unwrap(), p("123"));
        for (i, q) in all.iter().enumerate() {
            assert_eq!(rank(q), i as u64);
            assert_eq!(&unrank(3, i as u64).unwrap(), q);
        }
        assert_eq!(rank(&unrank(9, 12345).unwrap()), 12345);
        assert!(unrank(3, 6).is_err());
    }

    #[test]
    fn rank_range_partitions_cover_everything() {
        let whole: Vec<Permutation> = permutations(5).collect();
        let mut pieced = Vec::new();
        for chunk in 0..6 {
            let lo = chunk * 20;
            pieced.extend(Permutations::range(5, lo, lo + 20).unwrap());
        }
        assert_eq!(whole, pieced);
    }

    #[test]
    fn interval_algebra_closure_exhaustive() {
        // unions, intersections and differences of properly overlapping
        // intervals are again intervals
        for n in 1..=6 {
            for q in permutations(n) {
                let ivs = q.intervals();
                for i in &ivs {
                    for j in &ivs {
                        if i.properly_overlaps(j) {
                            let (a, b) = (i.lo().min(j.lo()), i.hi().max(j.hi()));
                            let (c, d) = (i.lo().max(j.lo()), i.hi().min(j.hi()));
                            assert!(ivs.contains(&iv(a, b)), "{q}: union of {i} {j}");
                            assert!(ivs.contains(&iv(c, d)), "{q}: intersection of {i} {j}");
                            assert!(ivs.contains(&iv(a, c - 1)), "{q}: difference of {i} {j}");
                            assert!(ivs.contains(&iv(d + 1, b)), "{q}: difference of {j} {i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_intervals_always_present() {
        for n in 1..=6 {
            for q in permutations(n) {
                let ivs = q.intervals();
                assert!(ivs.contains(&iv(1, n as u32)));
                for v in 1..=n as u32 {
                    assert!(ivs.contains(&Interval::singleton(v)));
                }
            }
        }
    }
}
