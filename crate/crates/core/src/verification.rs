//! Structural oracle suites: each one checks a family of invariants
//! exhaustively at desk scale and reports how many objects it checked plus a
//! minimal counterexample dump for every failure. The CLI's `verify`
//! subcommand and the acceptance tests both drive these.

use rayon::prelude::*;

use crate::bijection;
use crate::dissection::{Dissection, SubsetScan};
use crate::enumeration::distinct_interval_posets;
use crate::permutation::{factorial, next_permutation, unrank, Permutation};
use crate::poset::{cover_counts, IntervalPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    IntervalAlgebra,
    NoThreeCover,
    FramedImage,
    RoundtripPhi,
    RoundtripPsi,
    TreeRestriction,
    BlockwiseRestriction,
    BinaryRestriction,
    RealizeRoundtrip,
    ComponentCompleteness,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::IntervalAlgebra,
        Suite::NoThreeCover,
        Suite::FramedImage,
        Suite::RoundtripPhi,
        Suite::RoundtripPsi,
        Suite::TreeRestriction,
        Suite::BlockwiseRestriction,
        Suite::BinaryRestriction,
        Suite::RealizeRoundtrip,
        Suite::ComponentCompleteness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::IntervalAlgebra => "interval_algebra",
            Suite::NoThreeCover => "no_three_cover",
            Suite::FramedImage => "framed_image",
            Suite::RoundtripPhi => "roundtrip_phi",
            Suite::RoundtripPsi => "roundtrip_psi",
            Suite::TreeRestriction => "tree_restriction",
            Suite::BlockwiseRestriction => "blockwise_restriction",
            Suite::BinaryRestriction => "binary_restriction",
            Suite::RealizeRoundtrip => "realize_roundtrip",
            Suite::ComponentCompleteness => "component_completeness",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one suite with permutation sizes capped at `max_n` (each suite also
/// clamps to its own exhaustive-regime cap).
pub fn run_suite(suite: Suite, max_n: usize) -> SuiteReport {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    match suite {
        Suite::IntervalAlgebra => {
            for n in 1..=max_n.min(8) {
                for p in posets(n) {
                    checked += 1;
                    let ivs = p.intervals();
                    for i in ivs {
                        for j in ivs {
                            if !i.properly_overlaps(j) {
                                continue;
                            }
                            let need = [
                                (i.lo().min(j.lo()), i.hi().max(j.hi())),
                                (i.lo().max(j.lo()), i.hi().min(j.hi())),
                                (i.lo().min(j.lo()), i.lo().max(j.lo()) - 1),
                                (i.hi().min(j.hi()) + 1, i.hi().max(j.hi())),
                            ];
                            for (lo, hi) in need {
                                if !p.contains(&crate::permutation::Interval::new(lo, hi)) {
                                    failures.push(format!(
                                        "algebra gap [{lo},{hi}] for {i} x {j} in {}",
                                        dump_poset(&p)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Suite::NoThreeCover => {
            for n in 1..=max_n.min(9) {
                let results: Vec<Option<String>> = posets(n)
                    .into_par_iter()
                    .map(|p| {
                        for (iv, count) in cover_counts(&p) {
                            if count == 3 {
                                return Some(format!("{iv} covers 3 in {}", dump_poset(&p)));
                            }
                        }
                        None
                    })
                    .collect();
                checked += results.len() as u64;
                failures.extend(results.into_iter().flatten());
            }
        }
        Suite::FramedImage => {
            for n in 1..=max_n.min(9) {
                let results: Vec<Option<String>> = posets(n)
                    .into_par_iter()
                    .map(|p| {
                        let d = bijection::dissection_of(&p);
                        if !d.is_diagonally_framed() {
                            return Some(format!("image not framed for {}", dump_poset(&p)));
                        }
                        if d.has_quadrilateral() {
                            return Some(format!("image has quadrilateral for {}", dump_poset(&p)));
                        }
                        None
                    })
                    .collect();
                checked += results.len() as u64;
                failures.extend(results.into_iter().flatten());
            }
        }
        Suite::RoundtripPhi => {
            for n in 1..=max_n.min(8) {
                for p in posets(n) {
                    checked += 1;
                    let d = bijection::dissection_of(&p);
                    match bijection::poset_of(&d) {
                        Ok(back) if back == p => {}
                        Ok(_) => failures.push(format!("poset round trip broke {}", dump_poset(&p))),
                        Err(e) => failures.push(format!("{e} on image of {}", dump_poset(&p))),
                    }
                    match bijection::decompose(&d) {
                        Ok(node) if &node.intervals() == p.intervals() => {}
                        Ok(_) => failures.push(format!(
                            "decomposition disagrees with edge reading for {}",
                            dump_poset(&p)
                        )),
                        Err(e) => failures.push(format!("{e} decomposing image of {}", dump_poset(&p))),
                    }
                }
            }
            for m in 2..=(max_n + 1).min(8) {
                for d in framed_quad_free(m) {
                    checked += 1;
                    let p = bijection::poset_of(&d).expect("scan filtered the domain");
                    if bijection::dissection_of(&p) != d {
                        failures.push(format!("dissection round trip broke {}", dump_dissection(&d)));
                    }
                }
            }
        }
        Suite::RoundtripPsi => {
            for n in 1..=max_n.min(8) {
                for p in posets(n) {
                    if !p.classify().is_binary {
                        continue;
                    }
                    checked += 1;
                    match bijection::noncrossing_dissection_of(&p) {
                        Ok(d) => match bijection::poset_of_noncrossing(&d) {
                            Ok(back) if back == p => {}
                            Ok(_) => {
                                failures.push(format!("binary round trip broke {}", dump_poset(&p)))
                            }
                            Err(e) => failures.push(format!("{e} on image of {}", dump_poset(&p))),
                        },
                        Err(e) => failures.push(format!("{e} for {}", dump_poset(&p))),
                    }
                }
            }
            for m in 2..=(max_n + 1).min(9) {
                let all = crate::dissection::noncrossing_dissections(m)
                    .expect("cap is within the enumerator range");
                for d in all {
                    checked += 1;
                    match bijection::poset_of_noncrossing(&d) {
                        Ok(p) => {
                            if !p.classify().is_binary {
                                failures.push(format!(
                                    "non-binary poset from {}",
                                    dump_dissection(&d)
                                ));
                            }
                            match bijection::noncrossing_dissection_of(&p) {
                                Ok(back) if back == d => {}
                                Ok(_) => failures.push(format!(
                                    "noncrossing round trip broke {}",
                                    dump_dissection(&d)
                                )),
                                Err(e) => {
                                    failures.push(format!("{e} for {}", dump_dissection(&d)))
                                }
                            }
                        }
                        Err(e) => failures.push(format!("{e} for {}", dump_dissection(&d))),
                    }
                }
            }
        }
        Suite::TreeRestriction => {
            for n in 1..=max_n.min(8) {
                for p in posets(n) {
                    checked += 1;
                    let image_noncrossing = bijection::dissection_of(&p).is_noncrossing();
                    if p.classify().is_tree != image_noncrossing {
                        failures.push(format!(
                            "tree/noncrossing mismatch for {}",
                            dump_poset(&p)
                        ));
                    }
                }
            }
        }
        Suite::BlockwiseRestriction => {
            for n in 1..=max_n.min(8) {
                for p in posets(n) {
                    checked += 1;
                    let d = bijection::dissection_of(&p);
                    let image_ok =
                        d.is_noncrossing() && !d.has_triangle() && !d.has_quadrilateral();
                    if !p.has_sum_split() != image_ok {
                        failures.push(format!(
                            "blockwise/image mismatch for {}",
                            dump_poset(&p)
                        ));
                    }
                }
            }
        }
        Suite::BinaryRestriction => {
            for n in 1..=max_n.min(8) {
                // binarity is a poset property; separability is checked per
                // permutation against the cached poset verdict
                let binary_keys: std::collections::HashMap<_, _> = posets(n)
                    .into_iter()
                    .map(|p| (p.intervals().clone(), p.classify().is_binary))
                    .collect();
                let total = factorial(n);
                let chunks = 16u64.min(total);
                let per = total.div_ceil(chunks);
                let results: Vec<(u64, Vec<String>)> = (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let lo = c * per;
                        let hi = ((c + 1) * per).min(total);
                        if lo >= hi {
                            return (0, Vec::new());
                        }
                        let mut word = unrank(n, lo).expect("in range").word().to_vec();
                        let mut local = (0u64, Vec::new());
                        for _ in lo..hi {
                            let q = Permutation::new(word.clone()).unwrap();
                            let is_binary = binary_keys[&q.intervals()];
                            local.0 += 1;
                            if q.is_separable() != is_binary {
                                local.1.push(format!("separable/binary mismatch at {q}"));
                            }
                            if !next_permutation(&mut word) {
                                break;
                            }
                        }
                        local
                    })
                    .collect();
                for (c, fails) in results {
                    checked += c;
                    failures.extend(fails);
                }
                // on binary posets the two maps agree exactly on trees
                for p in posets(n) {
                    let shape = p.classify();
                    if !shape.is_binary {
                        continue;
                    }
                    checked += 1;
                    let phi = bijection::dissection_of(&p);
                    let psi = bijection::noncrossing_dissection_of(&p).expect("binary");
                    if (phi == psi) != shape.is_tree {
                        failures.push(format!("phi/psi divergence wrong for {}", dump_poset(&p)));
                    }
                }
            }
        }
        Suite::RealizeRoundtrip => {
            for n in 1..=max_n.min(7) {
                for p in posets(n) {
                    checked += 1;
                    match p.realize() {
                        Ok(w) => {
                            if IntervalPoset::of(&w) != p {
                                failures.push(format!(
                                    "realize({}) = {w} has the wrong poset",
                                    dump_poset(&p)
                                ));
                            }
                        }
                        Err(e) => failures.push(format!("{e} for {}", dump_poset(&p))),
                    }
                }
            }
            // dual claws of every arity in range, explicitly
            for k in 4..=max_n.min(7) {
                checked += 1;
                let claw = IntervalPoset::trivial(k);
                match claw.realize() {
                    Ok(w) => {
                        if !w.is_simple() || IntervalPoset::of(&w) != claw {
                            failures.push(format!("claw realization broken at arity {k}"));
                        }
                    }
                    Err(e) => failures.push(format!("{e} for claw arity {k}")),
                }
            }
        }
        Suite::ComponentCompleteness => {
            for m in 3..=(max_n + 1).min(8) {
                let scan = SubsetScan::new(m).expect("within cap");
                for mask in scan.masks() {
                    if !scan.is_framed(mask) {
                        continue;
                    }
                    checked += 1;
                    let d = scan.dissection(mask);
                    for comp in d.intersectional_components() {
                        if !d.component_support_complete(&comp) {
                            failures.push(format!(
                                "support {:?} not complete in {}",
                                comp.support,
                                dump_dissection(&d)
                            ));
                        }
                    }
                }
            }
            // crossing a complete subgraph absorbs the crossing diagonal's
            // endpoints into it
            for m in 4..=(max_n + 1).min(7) {
                let scan = SubsetScan::new(m).expect("within cap");
                for mask in scan.masks() {
                    if !scan.is_framed(mask) {
                        continue;
                    }
                    let d = scan.dissection(mask);
                    checked += 1;
                    if let Some(msg) = complete_absorption_gap(&d) {
                        failures.push(msg);
                    }
                }
            }
        }
    }
    SuiteReport {
        suite,
        checked,
        failures,
    }
}

/// Distinct interval posets of S_n, the shared substrate of most suites.
fn posets(n: usize) -> Vec<IntervalPoset> {
    distinct_interval_posets(n).expect("suite caps stay within the scan cap")
}

fn framed_quad_free(m: usize) -> Vec<Dissection> {
    let scan = SubsetScan::new(m).expect("within cap");
    scan.masks()
        .filter(|&mask| scan.is_framed(mask) && !scan.has_quadrilateral(mask))
        .map(|mask| scan.dissection(mask))
        .collect()
}

/// For every complete vertex set K of the graph and every diagonal crossing
/// one of K's edges, K plus the diagonal's endpoints must be complete.
fn complete_absorption_gap(d: &Dissection) -> Option<String> {
    let m = d.m() as u32;
    let verts: Vec<u32> = (1..=m).collect();
    let total = 1u32 << verts.len();
    for subset in 0..total {
        if subset.count_ones() < 3 {
            continue;
        }
        let k: Vec<u32> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let complete = k
            .iter()
            .enumerate()
            .all(|(i, &u)| k[i + 1..].iter().all(|&v| d.edge_present(u, v)));
        if !complete {
            continue;
        }
        for g in d.diagonals() {
            let crosses_k = k.iter().enumerate().any(|(i, &u)| {
                k[i + 1..].iter().any(|&v| {
                    crate::dissection::crosses(*g, crate::dissection::Diagonal::new(u, v))
                })
            });
            if !crosses_k {
                continue;
            }
            let mut extended = k.clone();
            for e in [g.a(), g.b()] {
                if !extended.contains(&e) {
                    extended.push(e);
                }
            }
            extended.sort_unstable();
            let ext_complete = extended
                .iter()
                .enumerate()
                .all(|(i, &u)| extended[i + 1..].iter().all(|&v| d.edge_present(u, v)));
            if !ext_complete {
                return Some(format!(
                    "absorbing {g} into {k:?} is not complete in {}",
                    dump_dissection(d)
                ));
            }
        }
    }
    None
}

fn dump_poset(p: &IntervalPoset) -> String {
    serde_json::to_string(p).expect("poset serializes")
}

fn dump_dissection(d: &Dissection) -> String {
    serde_json::to_string(d).expect("dissection serializes")
}
