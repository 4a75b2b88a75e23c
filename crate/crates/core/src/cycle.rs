//! Cycles of rational curves.
//!
//! A cycle of `s` curves is stored as an ordered list of classes with cyclic
//! adjacency. For `s = 1` it is a single curve with a node, for `s = 2` two
//! curves meeting twice, and for `s ≥ 3` consecutive curves meet once and all
//! other pairs are disjoint. Either orientation of the list is accepted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curveclass::{classify, minus_e_support, CurveKind};
use crate::error::{Error, Result};
use crate::lattice::{self, ClassVector, IndexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycleWire", into = "CycleWire")]
pub struct CycleConfig {
    n: usize,
    curves: Vec<ClassVector>,
    alphas: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CycleWire {
    n: usize,
    curves: Vec<ClassVector>,
    #[serde(default)]
    alphas: Option<Vec<usize>>,
}

impl TryFrom<CycleWire> for CycleConfig {
    type Error = Error;

    fn try_from(w: CycleWire) -> Result<Self> {
        let cfg = CycleConfig::new(w.n, w.curves)?;
        match w.alphas {
            Some(a) => Ok(cfg.with_alphas(a)),
            None => Ok(cfg),
        }
    }
}

impl From<CycleConfig> for CycleWire {
    fn from(c: CycleConfig) -> Self {
        CycleWire {
            n: c.n,
            curves: c.curves,
            alphas: c.alphas,
        }
    }
}

impl CycleConfig {
    /// A cycle in rank `n`. Every curve must have rank `n`; adjacency is
    /// checked separately by [`validate_cycle`].
    pub fn new(n: usize, curves: Vec<ClassVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyClass);
        }
        if curves.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        if let Some(c) = curves.iter().find(|c| c.rank() != n) {
            return Err(Error::RankMismatch {
                left: n,
                right: c.rank(),
            });
        }
        Ok(Self {
            n,
            curves,
            alphas: None,
        })
    }

    pub fn with_alphas(mut self, alphas: Vec<usize>) -> Self {
        self.alphas = Some(alphas);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of curves `s`.
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[ClassVector] {
        &self.curves
    }

    pub fn alphas(&self) -> Option<&[usize]> {
        self.alphas.as_deref()
    }

    pub fn kinds(&self) -> Vec<CurveKind> {
        self.curves.iter().map(classify).collect()
    }

    /// `D_i²` for every curve, in cycle order.
    pub fn self_intersections(&self) -> Result<Vec<i64>> {
        self.curves.iter().map(|c| c.self_intersection()).collect()
    }

    /// `-D_i²` in cycle order, the sequence written `(k_0 k_1 …)`.
    pub fn weights(&self) -> Result<Vec<i64>> {
        Ok(self.self_intersections()?.into_iter().map(|d| -d).collect())
    }

    /// Same cycle with the curve list rotated to start at `start`.
    pub fn rotated(&self, start: usize) -> Self {
        let s = self.len();
        let curves = (0..s).map(|j| self.curves[(start + j) % s].clone()).collect();
        Self {
            n: self.n,
            curves,
            alphas: None,
        }
    }

    /// Same cycle traversed in the opposite direction, keeping curve 0.
    pub fn reversed(&self) -> Self {
        let s = self.len();
        let curves = (0..s).map(|j| self.curves[(s - j) % s].clone()).collect();
        Self {
            n: self.n,
            curves,
            alphas: None,
        }
    }

    /// Apply a basis relabelling to every curve.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            curves: self.curves.iter().map(|c| c.relabel(perm)).collect(),
            alphas: None,
        }
    }

    pub fn intersection_matrix(&self) -> Result<Vec<Vec<i64>>> {
        self.curves
            .iter()
            .map(|a| self.curves.iter().map(|b| a.intersect(b)).collect())
            .collect()
    }
}

/// Render a weight sequence the way periodic sequences are written, e.g. `(522332)`.
pub fn notation(weights: &[i64]) -> String {
    let sep = if weights.iter().any(|&k| !(0..10).contains(&k)) { "," } else { "" };
    let body: Vec<String> = weights.iter().map(|k| k.to_string()).collect();
    format!("({})", body.join(sep))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum CycleViolation {
    /// The single curve of a one-curve cycle is not of the form `-e_I`.
    NotNodal { class: ClassVector },
    NotACurve { curve: usize, defect: i64 },
    TooManyTypeB { curves: Vec<usize> },
    WrongIntersection {
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    BadAlphas { reason: String },
    Arithmetic { message: String },
}

impl fmt::Display for CycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleViolation::NotNodal { class } => {
                write!(f, "single curve {class} is not a nodal class -e_I")
            }
            CycleViolation::NotACurve { curve, defect } => {
                write!(f, "curve {curve} is not a rational curve class (defect {defect})")
            }
            CycleViolation::TooManyTypeB { curves } => {
                write!(f, "more than one type b curve: {curves:?}")
            }
            CycleViolation::WrongIntersection { i, j, expected, found } => {
                write!(f, "D_{i}.D_{j} = {found}, expected {expected}")
            }
            CycleViolation::BadAlphas { reason } => write!(f, "bad numbering: {reason}"),
            CycleViolation::Arithmetic { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub violations: Vec<CycleViolation>,
}

impl CycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn expected_intersection(s: usize, i: usize, j: usize) -> i64 {
    match s {
        2 => 2,
        _ if (i + 1) % s == j || (j + 1) % s == i => 1,
        _ => 0,
    }
}

/// Check the shape invariants of a cycle and list every violation.
pub fn validate_cycle(cfg: &CycleConfig) -> CycleReport {
    let mut violations = Vec::new();
    let s = cfg.len();

    if s == 1 {
        // The node of a single curve: class -e_I, where I = ∅ is the C² = 0 case.
        let c = &cfg.curves[0];
        if minus_e_support(c).is_none() {
            violations.push(CycleViolation::NotNodal { class: c.clone() });
        }
    } else {
        let kinds = cfg.kinds();
        for (i, k) in kinds.iter().enumerate() {
            if let CurveKind::NonCurve { defect } = k {
                violations.push(CycleViolation::NotACurve {
                    curve: i,
                    defect: *defect,
                });
            }
        }
        let bs: Vec<usize> = (0..s).filter(|&i| kinds[i].is_type_b()).collect();
        if bs.len() > 1 {
            violations.push(CycleViolation::TooManyTypeB { curves: bs });
        }
        for i in 0..s {
            for j in i + 1..s {
                let expected = expected_intersection(s, i, j);
                match cfg.curves[i].intersect(&cfg.curves[j]) {
                    Ok(found) if found == expected => {}
                    Ok(found) => violations.push(CycleViolation::WrongIntersection {
                        i,
                        j,
                        expected,
                        found,
                    }),
                    Err(e) => violations.push(CycleViolation::Arithmetic {
                        message: e.to_string(),
                    }),
                }
            }
        }
    }

    if let Some(alphas) = &cfg.alphas {
        if let Some(reason) = alpha_problem(cfg, alphas) {
            violations.push(CycleViolation::BadAlphas { reason });
        }
    }
    CycleReport { violations }
}

fn alpha_problem(cfg: &CycleConfig, alphas: &[usize]) -> Option<String> {
    if alphas.len() != cfg.len() {
        return Some(format!("{} indices for {} curves", alphas.len(), cfg.len()));
    }
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Some("indices are not strictly increasing".into());
    }
    if alphas.iter().any(|&a| a >= cfg.n) {
        return Some("index out of range".into());
    }
    if cfg.len() >= 2 {
        for (j, (c, &a)) in cfg.curves.iter().zip(alphas).enumerate() {
            if classify(c).head() != Some(a) {
                return Some(format!("curve {j} does not have head e_{a}"));
            }
        }
    }
    None
}

fn require_valid(cfg: &CycleConfig) -> Result<()> {
    let report = validate_cycle(cfg);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidCycle(report.summary()))
    }
}

/// `C = Σ D_i` together with `I_C` where `C = -e_{I_C}`.
pub fn cycle_class(cfg: &CycleConfig) -> Result<(ClassVector, IndexSet)> {
    require_valid(cfg)?;
    let c = lattice::sum(&cfg.curves)?;
    let support = minus_e_support(&c).ok_or(Error::NotNodalForm)?;
    Ok((c, support))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BettiVerdict {
    /// `#C - C² = b₂`, all curves of type a, tails partition the basis.
    PartitionCase,
    /// `#C - C² = 2 b₂`.
    OddIH,
    Inadmissible,
}

impl fmt::Display for BettiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BettiVerdict::PartitionCase => "PartitionCase",
            BettiVerdict::OddIH => "OddIH",
            BettiVerdict::Inadmissible => "Inadmissible",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub verdict: BettiVerdict,
    /// `#C - C²`.
    pub value: i64,
}

/// Whether the tails `I_i` of an all-type-a cycle partition `[0, n-1]`.
pub fn tails_partition(cfg: &CycleConfig) -> bool {
    let mut seen = vec![false; cfg.n];
    for k in cfg.kinds() {
        let CurveKind::TypeA { tail, .. } = k else {
            return false;
        };
        for i in tail {
            if std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Compute `#C - C²` and compare it with `b₂ = n`.
///
/// The partition property is verified, not inferred from the value. For a
/// single nodal curve `-e_I` it reduces to `|I| = n - 1`, which is what
/// `value == n` already says.
pub fn betti_check(cfg: &CycleConfig) -> Result<BettiReport> {
    require_valid(cfg)?;
    let c = lattice::sum(&cfg.curves)?;
    let s = i64::try_from(cfg.len()).map_err(|_| Error::Overflow)?;
    let value = s.checked_sub(c.self_intersection()?).ok_or(Error::Overflow)?;
    let n = i64::try_from(cfg.n).map_err(|_| Error::Overflow)?;
    let partition = cfg.len() == 1 || tails_partition(cfg);
    let verdict = if value == n && partition {
        BettiVerdict::PartitionCase
    } else if value == 2 * n {
        BettiVerdict::OddIH
    } else {
        BettiVerdict::Inadmissible
    };
    Ok(BettiReport { verdict, value })
}

/// Build the cycle whose curves have self-intersections `-k_0, …, -k_{s-1}`
/// in canonical form:
/// `D_{α_i} = e_{α_i} - (e_{α_i + 1} + … + e_{α_{i+1}})`, the last one
/// wrapping around to `e_0`.
pub fn from_selfintersections(weights: &[i64]) -> Result<CycleConfig> {
    match weights.len() {
        0 => return Err(Error::EmptyConfiguration),
        1 => return Err(Error::SingleCurve),
        _ => {}
    }
    let mut alphas = Vec::with_capacity(weights.len());
    let mut n = 0usize;
    for (position, &k) in weights.iter().enumerate() {
        if k < 2 {
            return Err(Error::BadSelfIntersection { position, value: k });
        }
        alphas.push(n);
        let step = usize::try_from(k - 1).map_err(|_| Error::Overflow)?;
        n = n.checked_add(step).ok_or(Error::Overflow)?;
    }
    let s = weights.len();
    let curves = (0..s)
        .map(|i| {
            let start = alphas[i];
            let end = if i + 1 < s { alphas[i + 1] } else { n };
            let mut coeffs = vec![0i64; n];
            coeffs[start] = 1;
            for k in start + 1..=end {
                coeffs[k % n] -= 1;
            }
            ClassVector::new(coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleConfig::new(n, curves)?.with_alphas(alphas))
}

/// The cycle carrying the unique type b curve:
/// `D_0 = -2e_1 - e_{[2,n-1]}`, `D_k = e_k - e_{k+1}` for `1 ≤ k ≤ n-1`
/// with indices mod `n`.
pub fn odd_ih_cycle(n: usize) -> Result<CycleConfig> {
    if n < 2 {
        return Err(Error::RankTooSmall { rank: n });
    }
    let mut curves = Vec::with_capacity(n);
    let mut d0 = vec![-1i64; n];
    d0[0] = 0;
    d0[1] = -2;
    curves.push(ClassVector::new(d0)?);
    for k in 1..n {
        let mut d = vec![0i64; n];
        d[k] = 1;
        d[(k + 1) % n] = -1;
        curves.push(ClassVector::new(d)?);
    }
    CycleConfig::new(n, curves)
}

/// Result of [`canonical_numbering_with_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renumbering {
    pub cycle: CycleConfig,
    /// `order[j]` is the input position of output curve `j`.
    pub order: Vec<usize>,
    /// Basis relabelling: input index `i` becomes `basis[i]`.
    pub basis: Vec<usize>,
}

/// Renumber curves and basis so the cycle takes the canonical form produced
/// by [`from_selfintersections`].
pub fn canonical_numbering(cfg: &CycleConfig) -> Result<CycleConfig> {
    canonical_numbering_with_map(cfg).map(|r| r.cycle)
}

pub fn canonical_numbering_with_map(cfg: &CycleConfig) -> Result<Renumbering> {
    let verdict = betti_check(cfg)?.verdict;
    if verdict != BettiVerdict::PartitionCase {
        return Err(Error::NotPartitionCase(verdict));
    }
    let n = cfg.n;
    let s = cfg.len();

    if s == 1 {
        let support = cfg.curves[0].support_of(-1);
        let missing = (0..n).find(|i| !support.contains(i));
        let mut basis = vec![0; n];
        let mut next = 1;
        for i in 0..n {
            if Some(i) == missing {
                basis[i] = 0;
            } else {
                basis[i] = next;
                next += 1;
            }
        }
        let cycle = cfg.relabel(&basis).with_alphas(vec![0]);
        return Ok(Renumbering {
            cycle,
            order: vec![0],
            basis,
        });
    }

    let kinds = cfg.kinds();
    let head = |j: usize| kinds[j].head().expect("partition case curves are type a");
    let tail = |j: usize| kinds[j].tail().expect("partition case curves are type a");

    // Orientation: the head of the successor lies in the tail of each curve.
    let forward: Vec<usize> = (0..s).collect();
    let backward: Vec<usize> = (0..s).map(|j| (s - j) % s).collect();
    let oriented = [forward, backward]
        .into_iter()
        .find(|ord| (0..s).all(|j| tail(ord[j]).contains(&head(ord[(j + 1) % s]))))
        .ok_or_else(|| Error::InvalidCycle("no consistent orientation".into()))?;

    let weights: Vec<i64> = oriented.iter().map(|&j| tail(j).len() as i64 + 1).collect();
    // Smallest sequence of self-intersections -k, i.e. largest weights first.
    let start = (0..s)
        .min_by_key(|&r| (0..s).map(|j| -weights[(r + j) % s]).collect::<Vec<_>>())
        .unwrap_or(0);
    let order: Vec<usize> = (0..s).map(|j| oriented[(start + j) % s]).collect();

    let mut basis = vec![usize::MAX; n];
    let mut alpha = 0usize;
    let mut alphas = Vec::with_capacity(s);
    for j in 0..s {
        let cur = order[j];
        let succ_head = head(order[(j + 1) % s]);
        alphas.push(alpha);
        basis[head(cur)] = alpha;
        let mut slot = alpha + 1;
        for &i in tail(cur) {
            if i != succ_head {
                basis[i] = slot;
                slot += 1;
            }
        }
        alpha = slot;
    }
    if basis.contains(&usize::MAX) || alpha != n {
        return Err(Error::InvalidCycle("tails do not cover the basis".into()));
    }

    let reordered = CycleConfig::new(n, order.iter().map(|&j| cfg.curves[j].clone()).collect())?;
    let cycle = reordered.relabel(&basis).with_alphas(alphas);
    let rotated_weights: Vec<i64> = (0..s).map(|j| weights[(start + j) % s]).collect();
    debug_assert_eq!(
        from_selfintersections(&rotated_weights).map(|c| c.curves),
        Ok(cycle.curves.clone())
    );
    Ok(Renumbering {
        cycle,
        order,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cv(v: &[i64]) -> ClassVector {
        ClassVector::new(v.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    fn ex333() -> CycleConfig {
        fixtures::ex333()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_cycle(&fixtures::kato522332_cycle()).is_valid());
        assert!(validate_cycle(&odd_ih_cycle(3).unwrap()).is_valid());
        let pair = CycleConfig::new(2, vec![cv(&[1, -1]), cv(&[-1, 1])]).unwrap();
        assert!(validate_cycle(&pair).is_valid());
        let bad = CycleConfig::new(3, vec![cv(&[1, -1, 0]), cv(&[0, 1, -1])]).unwrap();
        let report = validate_cycle(&bad);
        assert_eq!(
            report.violations,
            vec![CycleViolation::WrongIntersection {
                i: 0,
                j: 1,
                expected: 2,
                found: 1
            }]
        );
    }

    #[test]
    fn validate_flags_two_type_b() {
        let cfg = CycleConfig::new(2, vec![cv(&[-2, 0]), cv(&[0, -2])]).unwrap();
        let report = validate_cycle(&cfg);
        assert!(report
            .violations
            .contains(&CycleViolation::TooManyTypeB { curves: vec![0, 1] }));
    }

    #[test]
    fn validate_single_curve() {
        let nodal = CycleConfig::new(3, vec![cv(&[0, -1, -1])]).unwrap();
        assert!(validate_cycle(&nodal).is_valid());
        let smooth = CycleConfig::new(3, vec![cv(&[1, -1, -1])]).unwrap();
        assert!(!validate_cycle(&smooth).is_valid());
    }

    #[test]
    fn cycle_class_examples() {
        let (c, i) = cycle_class(&ex333()).unwrap();
        assert_eq!(c, cv(&[-1, -1, -1]));
        assert_eq!(i, set(&[0, 1, 2]));
        let (_, i) = cycle_class(&fixtures::kato522332_cycle()).unwrap();
        assert_eq!(i, set(&[1, 2, 3, 5]));
        for n in 2..9 {
            let (c, i) = cycle_class(&odd_ih_cycle(n).unwrap()).unwrap();
            assert_eq!(i, (0..n).collect::<IndexSet>());
            assert_eq!(c, lattice::e_sum(&i, n).unwrap().negate().unwrap());
        }
    }

    #[test]
    fn betti_examples() {
        let r = betti_check(&fixtures::kato522332_cycle()).unwrap();
        assert_eq!(r, BettiReport { verdict: BettiVerdict::PartitionCase, value: 6 });
        let r = betti_check(&ex333()).unwrap();
        assert_eq!(r, BettiReport { verdict: BettiVerdict::OddIH, value: 6 });
        let nodal = CycleConfig::new(2, vec![cv(&[0, -1])]).unwrap();
        let r = betti_check(&nodal).unwrap();
        assert_eq!(r, BettiReport { verdict: BettiVerdict::PartitionCase, value: 2 });
        let full = CycleConfig::new(2, vec![cv(&[-1, -1])]).unwrap();
        assert_eq!(betti_check(&full).unwrap().verdict, BettiVerdict::Inadmissible);
    }

    #[test]
    fn from_selfintersections_examples() {
        let c = from_selfintersections(&[5, 3]).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.curves()[0], cv(&[1, -1, -1, -1, -1, 0]));
        assert_eq!(c.curves()[1], cv(&[-1, 0, 0, 0, 1, -1]));
        assert_eq!(c.alphas(), Some(&[0, 4][..]));

        let c = from_selfintersections(&[3, 3, 3]).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.self_intersections().unwrap(), vec![-3, -3, -3]);
        assert!(validate_cycle(&c).is_valid());
        assert_eq!(betti_check(&c).unwrap().verdict, BettiVerdict::PartitionCase);

        let c = from_selfintersections(&[2, 2]).unwrap();
        assert_eq!(c.curves(), &[cv(&[1, -1]), cv(&[-1, 1])]);
        assert!(validate_cycle(&c).is_valid());
        let (class, support) = cycle_class(&c).unwrap();
        assert!(class.is_zero() && support.is_empty());

        assert_eq!(
            from_selfintersections(&[3, 1]),
            Err(Error::BadSelfIntersection { position: 1, value: 1 })
        );
        assert_eq!(from_selfintersections(&[4]), Err(Error::SingleCurve));
    }

    #[test]
    fn odd_ih_examples() {
        let c = odd_ih_cycle(3).unwrap();
        assert_eq!(c.self_intersections().unwrap(), vec![-5, -2, -2]);
        let c = odd_ih_cycle(2).unwrap();
        assert_eq!(c.curves(), &[cv(&[0, -2]), cv(&[-1, 1])]);
        assert_eq!(betti_check(&c).unwrap().value, 4);
        assert_eq!(odd_ih_cycle(1), Err(Error::RankTooSmall { rank: 1 }));
        for n in 2..=8 {
            let c = odd_ih_cycle(n).unwrap();
            let kinds = c.kinds();
            assert_eq!(kinds.iter().filter(|k| k.is_type_b()).count(), 1);
            assert_eq!(c.curves()[0].self_intersection().unwrap(), -(n as i64 + 2));
        }
    }

    #[test]
    fn canonical_numbering_examples() {
        let kato = fixtures::kato522332_cycle();
        let canon = canonical_numbering(&kato).unwrap();
        assert_eq!(canon.alphas(), Some(&[0, 4][..]));
        assert_eq!(canon.curves(), kato.curves());

        let built = from_selfintersections(&[3, 3, 3]).unwrap();
        let rotated = built.rotated(1);
        let canon = canonical_numbering(&rotated).unwrap();
        assert_eq!(canon.alphas(), Some(&[0, 2, 4][..]));
        assert_eq!(canon.curves(), built.curves());

        let pair = from_selfintersections(&[2, 2]).unwrap();
        assert_eq!(canonical_numbering(&pair).unwrap().alphas(), Some(&[0, 1][..]));

        assert_eq!(
            canonical_numbering(&ex333()),
            Err(Error::NotPartitionCase(BettiVerdict::OddIH))
        );
    }

    #[test]
    fn canonical_numbering_of_reversed_and_relabelled_cycle() {
        let built = from_selfintersections(&[4, 2, 3, 2]).unwrap();
        let n = built.n();
        let perm: Vec<usize> = (0..n).map(|i| (3 * i + 2) % n).collect();
        let scrambled = built.reversed().rotated(2).relabel(&perm);
        let r = canonical_numbering_with_map(&scrambled).unwrap();
        assert_eq!(r.cycle.curves(), built.curves());
        let before = scrambled.intersection_matrix().unwrap();
        let after = r.cycle.intersection_matrix().unwrap();
        for i in 0..built.len() {
            for j in 0..built.len() {
                assert_eq!(after[i][j], before[r.order[i]][r.order[j]]);
            }
        }
    }

    #[test]
    fn canonical_numbering_single_curve() {
        let nodal = CycleConfig::new(4, vec![cv(&[-1, 0, -1, -1])]).unwrap();
        let canon = canonical_numbering(&nodal).unwrap();
        assert_eq!(canon.curves(), &[cv(&[0, -1, -1, -1])]);
    }

    #[test]
    fn notation_examples() {
        assert_eq!(notation(&[5, 2, 2, 3, 3, 2]), "(522332)");
        assert_eq!(notation(&[12, 2]), "(12,2)");
    }

    #[test]
    fn json_shape() {
        let c = from_selfintersections(&[2, 2]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"n":2,"curves":[[1,-1],[-1,1]],"alphas":[0,1]}"#);
        let back: CycleConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let plain: CycleConfig =
            serde_json::from_str(r#"{"n":2,"curves":[[1,-1],[-1,1]],"alphas":null}"#).unwrap();
        assert_eq!(plain.alphas(), None);
        assert!(serde_json::from_str::<CycleConfig>(r#"{"n":3,"curves":[[1,-1]]}"#).is_err());
    }

    proptest::proptest! {
        #[test]
        fn weights_round_trip(ws in proptest::collection::vec(2i64..7, 2..6)) {
            let c = from_selfintersections(&ws).unwrap();
            proptest::prop_assert_eq!(c.weights().unwrap(), ws.clone());
            proptest::prop_assert!(validate_cycle(&c).is_valid());
            let r = betti_check(&c).unwrap();
            proptest::prop_assert_eq!(r.verdict, BettiVerdict::PartitionCase);
            proptest::prop_assert_eq!(r.value, c.n() as i64);
        }

        #[test]
        fn canonical_numbering_is_idempotent(ws in proptest::collection::vec(2i64..6, 2..5), rot in 0usize..5, rev in proptest::bool::ANY) {
            let c = from_selfintersections(&ws).unwrap();
            let mut moved = c.rotated(rot % ws.len());
            if rev { moved = moved.reversed(); }
            let once = canonical_numbering(&moved).unwrap();
            let twice = canonical_numbering(&once).unwrap();
            proptest::prop_assert_eq!(&once, &twice);
            proptest::prop_assert!(validate_cycle(&once).is_valid());
        }
    }
}
