//! Brute force: exhaustive cycle enumeration and lemma sweeps at small rank.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curveclass::{classify, compose_chain, genus_defect, heads_lemma_holds, CurveKind};
use crate::cycle::{betti_check, validate_cycle, BettiVerdict, CycleConfig};
use crate::error::{Error, Result};
use crate::lattice::{self, e_sum, ClassVector, IndexSet};

pub const DEFAULT_CAP: usize = 5;
pub const CAP_ENV: &str = "DONLAT_CAP";
/// Witnesses kept per sweep.
const MAX_WITNESSES: usize = 8;

/// `DONLAT_CAP` if set to an integer, else [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

fn subsets(items: &[usize]) -> impl Iterator<Item = IndexSet> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect()
    })
}

fn with_head(n: usize, head: usize, lead: i64, tail: &IndexSet) -> ClassVector {
    let mut v = vec![0i64; n];
    v[head] = lead;
    for &i in tail {
        v[i] = -1;
    }
    ClassVector::new(v).expect("n >= 1")
}

/// Every `e_i - e_I` in rank `n`, sorted.
pub fn type_a_classes(n: usize) -> Vec<ClassVector> {
    let mut out = Vec::new();
    for head in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&k| k != head).collect();
        out.extend(subsets(&rest).map(|t| with_head(n, head, 1, &t)));
    }
    out.sort();
    out
}

/// Every `-2e_i - e_I` in rank `n`, sorted.
pub fn type_b_classes(n: usize) -> Vec<ClassVector> {
    let mut out = Vec::new();
    for head in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&k| k != head).collect();
        out.extend(subsets(&rest).map(|t| with_head(n, head, -2, &t)));
    }
    out.sort();
    out
}

/// All smooth rational curve classes in rank `n`, sorted.
pub fn curve_classes(n: usize) -> Vec<ClassVector> {
    let mut out = type_a_classes(n);
    out.extend(type_b_classes(n));
    out.sort();
    out
}

/// All `-e_I`, the empty set included.
pub fn nodal_classes(n: usize) -> Vec<ClassVector> {
    let all: Vec<usize> = (0..n).collect();
    let mut out: Vec<ClassVector> = subsets(&all)
        .map(|s| e_sum(&s, n).and_then(|x| x.negate()).expect("n >= 1"))
        .collect();
    out.sort();
    out
}

fn check_bounds(n: usize, s: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::RankTooSmall { rank: n });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if s == 0 || s > n {
        return Err(Error::LengthExceedsRank { s, n });
    }
    Ok(())
}

fn expected(s: usize, i: usize, j: usize) -> i64 {
    match s {
        2 => 2,
        _ if (i + 1) % s == j || (j + 1) % s == i => 1,
        _ => 0,
    }
}

/// Extend `prefix` to full cycles of length `s`.
fn extend(
    s: usize,
    candidates: &[ClassVector],
    prefix: &mut Vec<ClassVector>,
    type_b_used: bool,
    out: &mut Vec<Vec<ClassVector>>,
) {
    let k = prefix.len();
    if k == s {
        out.push(prefix.clone());
        return;
    }
    for c in candidates {
        let is_b = classify(c).is_type_b();
        if is_b && type_b_used {
            continue;
        }
        let fits = prefix
            .iter()
            .enumerate()
            .all(|(i, p)| matches!(p.intersect(c), Ok(x) if x == expected(s, i, k)));
        if fits {
            prefix.push(c.clone());
            extend(s, candidates, prefix, type_b_used || is_b, out);
            prefix.pop();
        }
    }
}

/// Deduplication key: the least `(D² sequence, coefficient matrix)` over
/// rotations and reflections of the cycle and all relabellings of the basis.
///
/// For a fixed curve order, the row-major least matrix under column
/// permutations is the one with its columns sorted, so no explicit `n!`
/// loop is needed.
pub fn canonical_form(cycle: &[ClassVector]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let s = cycle.len();
    let n = cycle[0].rank();
    let mut best: Option<(Vec<i64>, Vec<Vec<i64>>)> = None;
    for reflect in [false, true] {
        for r in 0..s {
            let order: Vec<&ClassVector> = (0..s)
                .map(|j| {
                    let idx = if reflect { (r + s - j) % s } else { (r + j) % s };
                    &cycle[idx]
                })
                .collect();
            let d2: Vec<i64> = order
                .iter()
                .map(|c| c.self_intersection().unwrap_or(i64::MIN))
                .collect();
            let mut columns: Vec<Vec<i64>> = (0..n)
                .map(|k| order.iter().map(|c| c.coeff(k)).collect())
                .collect();
            columns.sort();
            let rows: Vec<Vec<i64>> = (0..s)
                .map(|j| columns.iter().map(|col| col[j]).collect())
                .collect();
            let key = (d2, rows);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.expect("cycle is non-empty")
}

fn from_rows(rows: &[Vec<i64>]) -> CycleConfig {
    let curves: Vec<ClassVector> = rows
        .iter()
        .map(|r| ClassVector::new(r.clone()).expect("n >= 1"))
        .collect();
    CycleConfig::new(rows[0].len(), curves).expect("rows share a rank")
}

/// Every cycle of `s` curves in rank `n` accepted by the cycle validator.
///
/// With `symmetry` each class of cycles equivalent under rotation,
/// reflection and basis relabelling appears once, in its canonical form.
/// Output is sorted either way.
pub fn enumerate_cycles(n: usize, s: usize, symmetry: bool, cap: usize) -> Result<Vec<CycleConfig>> {
    check_bounds(n, s, cap)?;
    let candidates = if s == 1 { nodal_classes(n) } else { curve_classes(n) };

    let raw: Vec<Vec<ClassVector>> = candidates
        .par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            if s == 1 {
                out.push(vec![first.clone()]);
            } else {
                let mut prefix = vec![first.clone()];
                extend(s, &candidates, &mut prefix, classify(first).is_type_b(), &mut out);
            }
            out
        })
        .collect();

    let valid = raw.into_par_iter().filter(|curves| {
        CycleConfig::new(n, curves.clone())
            .map(|c| validate_cycle(&c).is_valid())
            .unwrap_or(false)
    });

    if symmetry {
        let keys: BTreeSet<(Vec<i64>, Vec<Vec<i64>>)> =
            valid.map(|c| canonical_form(&c)).collect::<Vec<_>>().into_iter().collect();
        Ok(keys.into_iter().map(|(_, rows)| from_rows(&rows)).collect())
    } else {
        let mut all: Vec<Vec<ClassVector>> = valid.collect();
        all.sort();
        Ok(all
            .into_iter()
            .map(|c| CycleConfig::new(n, c).expect("rank checked"))
            .collect())
    }
}

/// Outcome of an exhaustive sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub holds: bool,
    pub checked: u64,
    /// Up to a few counterexamples, each as the classes involved.
    pub witnesses: Vec<Vec<ClassVector>>,
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            holds: true,
            ..Sweep::default()
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<ClassVector>) {
        self.checked += 1;
        if !ok {
            self.holds = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.holds &= other.holds;
        self.checked += other.checked;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self
    }
}

fn box_vectors(n: usize, bound: i64) -> impl Iterator<Item = ClassVector> {
    let width = (2 * bound + 1) as u64;
    let total = width.pow(n as u32);
    (0..total).map(move |mut code| {
        let coeffs = (0..n)
            .map(|_| {
                let a = (code % width) as i64 - bound;
                code /= width;
                a
            })
            .collect();
        ClassVector::new(coeffs).expect("n >= 1")
    })
}

/// One coefficient in `{1, -2}`, all others in `{0, -1}`.
pub fn rational_pattern(x: &ClassVector) -> bool {
    let leads = x.coeffs().iter().filter(|&&a| a == 1 || a == -2).count();
    let rest_ok = x.coeffs().iter().all(|&a| matches!(a, 1 | -2 | 0 | -1));
    leads == 1 && rest_ok
}

/// Over `[-bound, bound]^n`: a vector has zero genus defect and the rational
/// pattern exactly when `classifier` calls it a curve.
pub fn verify_rational_pattern_with<F>(n: usize, bound: i64, classifier: F) -> Sweep
where
    F: Fn(&ClassVector) -> CurveKind,
{
    let mut sweep = Sweep::new();
    for x in box_vectors(n, bound) {
        let lhs = genus_defect(&x) == 0 && rational_pattern(&x);
        let rhs = classifier(&x).is_curve();
        sweep.record(lhs == rhs, || vec![x.clone()]);
    }
    sweep
}

pub fn verify_rational_pattern(n: usize, bound: i64) -> bool {
    verify_rational_pattern_with(n, bound, classify).holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSweep {
    pub sweep: Sweep,
    /// Largest `B·B'` over distinct type b classes.
    pub max_type_b_pairing: Option<i64>,
}

/// Adjacent curve pairs compose to curves, and distinct type b classes never
/// pair positively.
pub fn verify_chain_dichotomy_report(n: usize) -> ChainSweep {
    let curves = curve_classes(n);
    let sweep = curves
        .par_iter()
        .map(|a| {
            let mut sw = Sweep::new();
            for b in &curves {
                if a.intersect(b) != Ok(1) {
                    continue;
                }
                if classify(a).is_type_b() && classify(b).is_type_b() {
                    sw.record(false, || vec![a.clone(), b.clone()]);
                    continue;
                }
                let ok = matches!(compose_chain(a, b), Ok(k) if k.is_curve());
                sw.record(ok, || vec![a.clone(), b.clone()]);
            }
            sw
        })
        .reduce(Sweep::new, Sweep::merge);

    let bs = type_b_classes(n);
    let max_type_b_pairing = bs
        .iter()
        .enumerate()
        .flat_map(|(i, a)| bs[i + 1..].iter().map(move |b| a.intersect(b).unwrap_or(i64::MAX)))
        .max();
    let mut sweep = sweep;
    if max_type_b_pairing.is_some_and(|m| m > 0) {
        sweep.holds = false;
    }
    ChainSweep {
        sweep,
        max_type_b_pairing,
    }
}

pub fn verify_chain_dichotomy(n: usize) -> bool {
    verify_chain_dichotomy_report(n).sweep.holds
}

/// Two type a classes pairing non-negatively have distinct heads.
pub fn verify_distinct_heads(n: usize) -> Sweep {
    let a = type_a_classes(n);
    let mut sweep = Sweep::new();
    for (i, x) in a.iter().enumerate() {
        for y in &a[i + 1..] {
            if x.intersect(y).is_ok_and(|v| v >= 0) {
                sweep.record(heads_lemma_holds(x, y).unwrap_or(false), || {
                    vec![x.clone(), y.clone()]
                });
            }
        }
    }
    sweep
}

/// Chains of `j` type a curves: consecutive curves meet once, others not at
/// all. With `oriented`, the head of each curve lies in the tail of the one
/// before it.
pub fn type_a_chains(n: usize, j: usize, oriented: bool) -> Vec<Vec<ClassVector>> {
    fn go(
        j: usize,
        oriented: bool,
        pool: &[(ClassVector, usize, IndexSet)],
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<ClassVector>>,
    ) {
        if chain.len() == j {
            out.push(chain.iter().map(|&i| pool[i].0.clone()).collect());
            return;
        }
        let k = chain.len();
        for (c, (x, head, _)) in pool.iter().enumerate() {
            if chain.contains(&c) {
                continue;
            }
            if oriented && k > 0 && !pool[chain[k - 1]].2.contains(head) {
                continue;
            }
            let fits = chain.iter().enumerate().all(|(p, &q)| {
                let want = i64::from(p + 1 == k);
                pool[q].0.intersect(x) == Ok(want)
            });
            if fits {
                chain.push(c);
                go(j, oriented, pool, chain, out);
                chain.pop();
            }
        }
    }
    let pool: Vec<(ClassVector, usize, IndexSet)> = type_a_classes(n)
        .into_iter()
        .map(|x| match classify(&x) {
            CurveKind::TypeA { head, tail } => (x, head, tail),
            _ => unreachable!("type a by construction"),
        })
        .collect();
    let mut out = Vec::new();
    go(j, oriented, &pool, &mut Vec::new(), &mut out);
    out
}

fn parts(c: &ClassVector) -> (usize, IndexSet) {
    match classify(c) {
        CurveKind::TypeA { head, tail } => (head, tail),
        _ => unreachable!("type a by construction"),
    }
}

/// The sum is of type b and every strictly shorter contiguous sub-chain is of type a.
fn sum_condition(chain: &[ClassVector]) -> bool {
    let j = chain.len();
    let total = lattice::sum(chain).map(|x| classify(&x));
    if !matches!(total, Ok(CurveKind::TypeB { .. })) {
        return false;
    }
    (0..j).all(|a| {
        (a + 1..=j)
            .filter(|&b| b - a < j)
            .all(|b| matches!(lattice::sum(&chain[a..b]).map(|x| classify(&x)), Ok(CurveKind::TypeA { .. })))
    })
}

/// `I_0 ∩ I_{j-1} = {k}` with `k` not a head of the chain, and all other
/// pairs of tails disjoint.
fn overlap_condition(chain: &[ClassVector]) -> bool {
    let j = chain.len();
    let ps: Vec<(usize, IndexSet)> = chain.iter().map(parts).collect();
    let heads: BTreeSet<usize> = ps.iter().map(|p| p.0).collect();
    let ends: Vec<usize> = ps[0].1.intersection(&ps[j - 1].1).copied().collect();
    let ends_ok = matches!(ends.as_slice(), [k] if !heads.contains(k));
    let rest_ok = (0..j).all(|p| {
        (p + 1..j)
            .filter(|&q| (p, q) != (0, j - 1))
            .all(|q| ps[p].1.is_disjoint(&ps[q].1))
    });
    ends_ok && rest_ok
}

pub fn verify_internonvide_report(n: usize, j: usize, oriented: bool) -> Sweep {
    let mut sweep = Sweep::new();
    if j < 2 || j > n {
        return sweep;
    }
    for chain in type_a_chains(n, j, oriented) {
        let ok = sum_condition(&chain) == overlap_condition(&chain);
        sweep.record(ok, || chain.clone());
    }
    sweep
}

/// Sum-of-type-b versus single-overlap, over oriented chains of length `j`.
pub fn verify_internonvide(n: usize, j: usize) -> bool {
    verify_internonvide_report(n, j, true).holds
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub s: usize,
    pub verdict: BettiVerdict,
    pub count: usize,
}

/// Counts of enumerated cycles (up to symmetry) per length and verdict.
pub fn census(n: usize, cap: usize) -> Result<Vec<CensusRow>> {
    check_bounds(n, 1, cap)?;
    let mut rows = Vec::new();
    for s in 1..=n {
        let mut counts: BTreeMap<BettiVerdict, usize> = BTreeMap::new();
        for c in enumerate_cycles(n, s, true, cap)? {
            *counts.entry(betti_check(&c)?.verdict).or_default() += 1;
        }
        rows.extend(counts.into_iter().map(|(verdict, count)| CensusRow { n, s, verdict, count }));
    }
    Ok(rows)
}

pub fn census_tsv(rows: &[CensusRow]) -> String {
    let mut out = String::from("n\ts\tverdict\tcount\n");
    for r in rows {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.n, r.s, r.verdict, r.count);
    }
    out
}
