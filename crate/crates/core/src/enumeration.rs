//! Exact counting: closed formulas, classical sequences, and brute-force
//! counters over permutations and dissections. Nothing here is trusted in
//! isolation; every number is meant to be cross-checked against at least one
//! independent route.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::dissection::{for_each_noncrossing, SubsetScan, SUBSET_SCAN_CAP};
use crate::permutation::{factorial, next_permutation, unrank, Interval};
use crate::poset::IntervalPoset;

/// Hard cap for the permutation-side brute force; `10! = 3628800` interval
/// sets is the most a desk run should ever chew through.
pub const BRUTE_PERM_CAP: usize = 10;

/// Default cap without an explicit opt-in (the CLI's `--big`).
pub const BRUTE_PERM_DEFAULT_CAP: usize = 9;

/// Cap for the structured non-crossing enumerator.
pub const NONCROSSING_CAP: usize = 15;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("{what} is capped at {cap}, got {value}")]
    TooLarge {
        what: &'static str,
        cap: usize,
        value: usize,
    },
    #[error("{what} is undefined for {value}")]
    OutOfDomain { what: &'static str, value: usize },
}

/// `C(n, k)` with exact arithmetic; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from((n - i) as u64);
        den *= BigUint::from((i + 1) as u64);
    }
    let q = &num / &den;
    debug_assert!((num % den).is_zero());
    q
}

fn exact_div(numerator: BigUint, divisor: u64) -> BigUint {
    let d = BigUint::from(divisor);
    let q = &numerator / &d;
    assert!((numerator % d).is_zero(), "formula division must be exact");
    q
}

/// Number of interval posets with `n > 1` minimal elements:
/// `(1/n) * sum_{i=1}^{n-1} sum_{k=0}^{min(i, floor((n-1-i)/2))}
///  C(n-1+i, i) C(i, k) C(n-2k-2, i-1)`.
pub fn count_interval_posets(n: usize) -> Result<BigUint, EnumerationError> {
    if n < 2 {
        return Err(EnumerationError::OutOfDomain {
            what: "count_interval_posets",
            value: n,
        });
    }
    let n_i = n as i64;
    let mut total = BigUint::zero();
    for i in 1..=n_i - 1 {
        let k_max = i.min((n_i - 1 - i) / 2);
        for k in 0..=k_max {
            total += binomial(n_i - 1 + i, i) * binomial(i, k) * binomial(n_i - 2 * k - 2, i - 1);
        }
    }
    Ok(exact_div(total, n as u64))
}

/// Number of interval posets of block-wise simple permutations of size
/// `n >= 4`: `(1/n) * sum_{i=1}^{floor((n-1)/3)} C(n+i-1, i) C(n-2i-2, i-1)`.
pub fn count_blockwise_posets(n: usize) -> Result<BigUint, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::OutOfDomain {
            what: "count_blockwise_posets",
            value: n,
        });
    }
    let n_i = n as i64;
    let mut total = BigUint::zero();
    for i in 1..=(n_i - 1) / 3 {
        total += binomial(n_i + i - 1, i) * binomial(n_i - 2 * i - 2, i - 1);
    }
    Ok(exact_div(total, n as u64))
}

/// `C_0, C_1, ... = 1, 1, 2, 5, 14, ...`
pub fn catalan(k: usize) -> BigUint {
    exact_div(binomial(2 * k as i64, k as i64), k as u64 + 1)
}

/// `S_0, S_1, ... = 1, 2, 6, 22, 90, ...` via the Schröder-path convolution
/// `S_n = S_{n-1} + sum S_k S_{n-1-k}`.
pub fn large_schroeder(k: usize) -> BigUint {
    let mut s: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=k {
        let mut v = s[n - 1].clone();
        for j in 0..n {
            v += &s[j] * &s[n - 1 - j];
        }
        s.push(v);
    }
    s[k].clone()
}

/// `s_0, s_1, ... = 1, 1, 3, 11, 45, ...`; half the large Schröder number for
/// `k >= 1`. The index is anchored to enumerated dissections: `s_{m-2}`
/// counts the non-crossing dissections of the `m`-gon.
pub fn small_schroeder(k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let large = large_schroeder(k);
    let q = &large / 2u32;
    assert!((large % 2u32).is_zero());
    q
}

/// The poset families the counters understand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PosetFamily {
    All,
    Tree,
    Blockwise,
    Binary,
    BinaryTree,
}

impl PosetFamily {
    pub const ALL: [PosetFamily; 5] = [
        PosetFamily::All,
        PosetFamily::Tree,
        PosetFamily::Blockwise,
        PosetFamily::Binary,
        PosetFamily::BinaryTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PosetFamily::All => "all",
            PosetFamily::Tree => "tree",
            PosetFamily::Blockwise => "blockwise",
            PosetFamily::Binary => "binary",
            PosetFamily::BinaryTree => "binary_tree",
        }
    }

    pub fn parse(s: &str) -> Option<PosetFamily> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    fn admits(self, p: &IntervalPoset) -> bool {
        match self {
            PosetFamily::All => true,
            PosetFamily::Tree => p.classify().is_tree,
            PosetFamily::Blockwise => !p.has_sum_split(),
            PosetFamily::Binary => p.classify().is_binary,
            PosetFamily::BinaryTree => {
                let shape = p.classify();
                shape.is_binary && shape.is_tree
            }
        }
    }
}

impl fmt::Display for PosetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the brute force counts distinct interval posets or permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Posets,
    Permutations,
}

/// The dissection families with dedicated counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DissectionFamily {
    FramedQuadFree,
    NonCrossing,
    NonCrossingQuadFree,
    NonCrossingTriangleFreeQuadFree,
}

// -- permutation-side brute force ------------------------------------------

/// Compact key of an interval set: bit `t(lo) + hi - lo` where `t` is the
/// triangular offset. Only valid for `n <= 10` (55 intervals).
fn interval_bit(n: usize, lo: u32, hi: u32) -> u64 {
    let l = (lo - 1) as usize;
    let offset = l * n - l * (l + 1) / 2 + l; // sum of row widths above `lo`
    1u64 << (offset + (hi - lo) as usize)
}

fn interval_set_key(n: usize, pos: &[u32]) -> u64 {
    let n_u = n as u32;
    let mut key = 0u64;
    for a in 1..=n_u {
        let mut min_p = pos[a as usize - 1];
        let mut max_p = min_p;
        for b in a..=n_u {
            let p = pos[b as usize - 1];
            min_p = min_p.min(p);
            max_p = max_p.max(p);
            if max_p - min_p == b - a {
                key |= interval_bit(n, a, b);
            }
        }
    }
    key
}

fn poset_from_key(n: usize, key: u64) -> IntervalPoset {
    let mut intervals = std::collections::BTreeSet::new();
    let mut bit = 0usize;
    for lo in 1..=n as u32 {
        for hi in lo..=n as u32 {
            if key >> bit & 1 == 1 {
                intervals.insert(Interval::new(lo, hi));
            }
            bit += 1;
        }
    }
    IntervalPoset::new(n, intervals).expect("keys decode in bounds")
}

fn check_perm_cap(n: usize) -> Result<(), EnumerationError> {
    if n == 0 || n > BRUTE_PERM_CAP {
        return Err(EnumerationError::TooLarge {
            what: "permutation scan",
            cap: BRUTE_PERM_CAP,
            value: n,
        });
    }
    Ok(())
}

/// Interval-set keys of all of `S_n` with multiplicities, scanned over fixed
/// rank chunks in parallel; the merge is a plain map union, so the result is
/// independent of the worker count.
fn poset_key_multiplicities(n: usize) -> Result<HashMap<u64, u64>, EnumerationError> {
    check_perm_cap(n)?;
    let total = factorial(n);
    let chunks = 64u64.min(total);
    let per = total.div_ceil(chunks);
    let merged = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * per;
            let hi = ((c + 1) * per).min(total);
            if lo >= hi {
                return HashMap::new();
            }
            let mut word = unrank(n, lo).expect("chunk start in range").word().to_vec();
            let mut pos = vec![0u32; n];
            let mut local: HashMap<u64, u64> = HashMap::new();
            for _ in lo..hi {
                for (i, &v) in word.iter().enumerate() {
                    pos[v as usize - 1] = i as u32 + 1;
                }
                *local.entry(interval_set_key(n, &pos)).or_insert(0) += 1;
                if !next_permutation(&mut word) {
                    break;
                }
            }
            local
        })
        .reduce(HashMap::new, |mut acc, local| {
            for (k, v) in local {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });
    Ok(merged)
}

/// All distinct interval posets arising from `S_n`, in deterministic order.
pub fn distinct_interval_posets(n: usize) -> Result<Vec<IntervalPoset>, EnumerationError> {
    let mut keys: Vec<u64> = poset_key_multiplicities(n)?.into_keys().collect();
    keys.sort_unstable();
    Ok(keys.into_iter().map(|k| poset_from_key(n, k)).collect())
}

/// Exhaustive permutation-side count of a family, either as distinct posets
/// or as permutations.
pub fn brute_count(
    family: PosetFamily,
    mode: CountMode,
    n: usize,
) -> Result<u64, EnumerationError> {
    let multiplicities = poset_key_multiplicities(n)?;
    let mut keys: Vec<(u64, u64)> = multiplicities.into_iter().collect();
    keys.sort_unstable();
    let count = keys
        .into_par_iter()
        .map(|(key, mult)| {
            if family.admits(&poset_from_key(n, key)) {
                match mode {
                    CountMode::Posets => 1,
                    CountMode::Permutations => mult,
                }
            } else {
                0
            }
        })
        .sum();
    Ok(count)
}

/// Number of separable permutations of size `n` (counted as permutations).
pub fn separable_permutation_count(n: usize) -> Result<u64, EnumerationError> {
    brute_count(PosetFamily::Binary, CountMode::Permutations, n)
}

// -- dissection-side counters ----------------------------------------------

/// Counts dissections of the `m`-gon in one of the four families. The framed
/// family runs the exhaustive subset scan (`m <= 8`); the non-crossing
/// families run the recursive face enumerator (`m <= 15`), where
/// quadrilateral- and triangle-freeness turn into face-size constraints.
pub fn dissection_count(m: usize, family: DissectionFamily) -> Result<u64, EnumerationError> {
    match family {
        DissectionFamily::FramedQuadFree => {
            let scan = SubsetScan::new(m).map_err(|_| EnumerationError::TooLarge {
                what: "subset scan",
                cap: SUBSET_SCAN_CAP,
                value: m,
            })?;
            Ok(scan.count_matching(|s, mask| s.is_framed(mask) && !s.has_quadrilateral(mask)))
        }
        DissectionFamily::NonCrossing
        | DissectionFamily::NonCrossingQuadFree
        | DissectionFamily::NonCrossingTriangleFreeQuadFree => {
            if !(2..=NONCROSSING_CAP).contains(&m) {
                return Err(EnumerationError::TooLarge {
                    what: "non-crossing enumerator",
                    cap: NONCROSSING_CAP,
                    value: m,
                });
            }
            let allowed = move |k: usize| match family {
                DissectionFamily::NonCrossing => true,
                DissectionFamily::NonCrossingQuadFree => k != 4,
                DissectionFamily::NonCrossingTriangleFreeQuadFree => k != 3 && k != 4,
                DissectionFamily::FramedQuadFree => unreachable!(),
            };
            let mut count = 0u64;
            for_each_noncrossing(m, allowed, |_| count += 1);
            Ok(count)
        }
    }
}

/// Same families, counted by the exhaustive subset scan instead (`m <= 8`).
/// An independent route for the non-crossing families, the only route for
/// the framed one.
pub fn brute_dissection_count(
    m: usize,
    family: DissectionFamily,
) -> Result<u64, EnumerationError> {
    let scan = SubsetScan::new(m).map_err(|_| EnumerationError::TooLarge {
        what: "subset scan",
        cap: SUBSET_SCAN_CAP,
        value: m,
    })?;
    Ok(match family {
        DissectionFamily::FramedQuadFree => {
            scan.count_matching(|s, k| s.is_framed(k) && !s.has_quadrilateral(k))
        }
        DissectionFamily::NonCrossing => scan.count_matching(|s, k| s.is_noncrossing(k)),
        DissectionFamily::NonCrossingQuadFree => {
            scan.count_matching(|s, k| s.is_noncrossing(k) && !s.has_quadrilateral(k))
        }
        DissectionFamily::NonCrossingTriangleFreeQuadFree => scan.count_matching(|s, k| {
            s.is_noncrossing(k) && !s.has_quadrilateral(k) && !s.has_triangle(k)
        }),
    })
}

// -- report carrier ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CountMethod {
    Formula,
    BrutePerm,
    BruteDissection,
    StructuredDissection,
}

impl CountMethod {
    pub const ALL: [CountMethod; 4] = [
        CountMethod::Formula,
        CountMethod::BrutePerm,
        CountMethod::BruteDissection,
        CountMethod::StructuredDissection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Formula => "formula",
            CountMethod::BrutePerm => "brute_perm",
            CountMethod::BruteDissection => "brute_dissection",
            CountMethod::StructuredDissection => "structured_dissection",
        }
    }

    pub fn parse(s: &str) -> Option<CountMethod> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub family: PosetFamily,
    pub n: usize,
    pub count: BigUint,
    pub method: CountMethod,
}

/// Rows of exact counts, kept in byte-stable `(family, n, method)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    rows: Vec<CountRow>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    pub fn push(&mut self, family: PosetFamily, n: usize, count: BigUint, method: CountMethod) {
        self.rows.push(CountRow {
            family,
            n,
            count,
            method,
        });
        self.rows
            .sort_by_key(|r| (r.family, r.n, r.method));
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }

    /// `(family, n)` groups whose methods disagree.
    pub fn disagreements(&self) -> Vec<(PosetFamily, usize)> {
        let mut bad = Vec::new();
        let mut i = 0;
        while i < self.rows.len() {
            let (fam, n) = (self.rows[i].family, self.rows[i].n);
            let mut j = i;
            let mut mismatch = false;
            while j < self.rows.len() && self.rows[j].family == fam && self.rows[j].n == n {
                mismatch |= self.rows[j].count != self.rows[i].count;
                j += 1;
            }
            if mismatch {
                bad.push((fam, n));
            }
            i = j;
        }
        bad
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,n,count,method\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.family, r.n, r.count, r.method));
        }
        out
    }

    pub fn to_json(&self) -> String {
        // counts as decimal strings so arbitrary precision survives JSON
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "family": r.family.name(),
                    "n": r.n,
                    "count": r.count.to_string(),
                    "method": r.method.name(),
                })
            })
            .collect();
        serde_json::json!({ "rows": rows }).to_string()
    }
}
