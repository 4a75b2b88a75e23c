//! Maximal divisors `D = C + A`: a cycle `C` with chains of rational curves
//! (trees) attached to it.
//!
//! Validation grows the divisor one tree curve at a time, always adding a
//! curve that meets what is already there. With `𝔇_0 = I_C` and a new curve
//! `e_h - e_T`, the step is admissible when `h ∈ 𝔇_{k-1}` and
//! `T ∩ 𝔇_{k-1} = ∅`, and then
//!
//! ```text
//! 𝔇_k = (𝔇_{k-1} \ {h}) ∪ T,        C + A_{≤k} = -e_{𝔇_k}.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curveclass::{classify, minus_e_support, CurveKind};
use crate::cycle::{cycle_class, validate_cycle, CycleConfig, CycleViolation};
use crate::error::{Error, Result};
use crate::lattice::{self, e_sum, ClassVector, IndexSet};

/// A chain of curves whose first member meets cycle curve `attach`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeConfig {
    pub chain: Vec<ClassVector>,
    pub attach: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DivisorWire", into = "DivisorWire")]
pub struct MaximalDivisorConfig {
    pub cycle: CycleConfig,
    pub trees: Vec<TreeConfig>,
}

#[derive(Serialize, Deserialize)]
struct DivisorWire {
    cycle: CycleConfig,
    #[serde(default)]
    trees: Vec<TreeConfig>,
}

impl TryFrom<DivisorWire> for MaximalDivisorConfig {
    type Error = Error;

    fn try_from(w: DivisorWire) -> Result<Self> {
        MaximalDivisorConfig::new(w.cycle, w.trees)
    }
}

impl From<MaximalDivisorConfig> for DivisorWire {
    fn from(d: MaximalDivisorConfig) -> Self {
        DivisorWire {
            cycle: d.cycle,
            trees: d.trees,
        }
    }
}

impl MaximalDivisorConfig {
    pub fn new(cycle: CycleConfig, trees: Vec<TreeConfig>) -> Result<Self> {
        let n = cycle.n();
        for t in &trees {
            if t.chain.is_empty() {
                return Err(Error::EmptyConfiguration);
            }
            if let Some(c) = t.chain.iter().find(|c| c.rank() != n) {
                return Err(Error::RankMismatch {
                    left: n,
                    right: c.rank(),
                });
            }
        }
        Ok(Self { cycle, trees })
    }

    pub fn n(&self) -> usize {
        self.cycle.n()
    }

    /// Cycle curves followed by tree curves, tree by tree.
    pub fn all_curves(&self) -> Vec<ClassVector> {
        let mut out = self.cycle.curves().to_vec();
        for t in &self.trees {
            out.extend(t.chain.iter().cloned());
        }
        out
    }
}

/// Position of a tree curve: `(tree, position in its chain)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreeCurve {
    pub tree: usize,
    pub position: usize,
}

impl fmt::Display for TreeCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tree {} curve {}", self.tree, self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum DivisorViolation {
    InvalidCycle { violations: Vec<CycleViolation> },
    CycleClassNotNodal,
    AttachOutOfRange { tree: usize, attach: usize },
    /// Two trees meet the same cycle curve.
    SharedAttachment { cycle_curve: usize, trees: Vec<usize> },
    TreeCurveNotTypeA { curve: TreeCurve, kind: CurveKind },
    /// A tree curve meets three or more curves.
    BranchingTree { curve: TreeCurve, degree: i64 },
    NotAChain {
        tree: usize,
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    AttachmentMismatch {
        curve: TreeCurve,
        cycle_curve: usize,
        expected: i64,
        found: i64,
    },
    TreesMeet { a: TreeCurve, b: TreeCurve, found: i64 },
    /// Never meets the growing divisor.
    Disconnected { curve: TreeCurve },
    /// Meets the growing divisor in more than one point.
    MultipleContacts { step: usize, curve: TreeCurve, contacts: usize, total: i64 },
    HeadNotInSet { step: usize, curve: TreeCurve, head: usize },
    TailOverlap { step: usize, curve: TreeCurve, overlap: Vec<usize> },
    TotalClassMismatch { expected: ClassVector, found: ClassVector },
    Arithmetic { message: String },
}

impl DivisorViolation {
    pub fn name(&self) -> &'static str {
        match self {
            DivisorViolation::InvalidCycle { .. } => "invalid_cycle",
            DivisorViolation::CycleClassNotNodal => "cycle_class_not_nodal",
            DivisorViolation::AttachOutOfRange { .. } => "attach_out_of_range",
            DivisorViolation::SharedAttachment { .. } => "shared_attachment",
            DivisorViolation::TreeCurveNotTypeA { .. } => "tree_curve_not_type_a",
            DivisorViolation::BranchingTree { .. } => "branching_tree",
            DivisorViolation::NotAChain { .. } => "not_a_chain",
            DivisorViolation::AttachmentMismatch { .. } => "attachment_mismatch",
            DivisorViolation::TreesMeet { .. } => "trees_meet",
            DivisorViolation::Disconnected { .. } => "disconnected",
            DivisorViolation::MultipleContacts { .. } => "multiple_contacts",
            DivisorViolation::HeadNotInSet { .. } => "head_not_in_set",
            DivisorViolation::TailOverlap { .. } => "tail_overlap",
            DivisorViolation::TotalClassMismatch { .. } => "total_class_mismatch",
            DivisorViolation::Arithmetic { .. } => "arithmetic",
        }
    }
}

impl fmt::Display for DivisorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DivisorViolation::*;
        match self {
            InvalidCycle { violations } => {
                let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                write!(f, "invalid cycle: {}", parts.join("; "))
            }
            CycleClassNotNodal => write!(f, "cycle class is not of the form -e_I"),
            AttachOutOfRange { tree, attach } => {
                write!(f, "tree {tree} attaches to missing cycle curve {attach}")
            }
            SharedAttachment { cycle_curve, trees } => {
                write!(f, "trees {trees:?} meet the same cycle curve {cycle_curve}")
            }
            TreeCurveNotTypeA { curve, kind } => write!(f, "{curve} is not of type a ({kind:?})"),
            BranchingTree { curve, degree } => write!(f, "{curve} meets {degree} curves, tree branches"),
            NotAChain { tree, i, j, expected, found } => {
                write!(f, "tree {tree}: curves {i} and {j} meet in {found}, expected {expected}")
            }
            AttachmentMismatch { curve, cycle_curve, expected, found } => write!(
                f,
                "{curve} meets cycle curve {cycle_curve} in {found}, expected {expected}"
            ),
            TreesMeet { a, b, found } => write!(f, "{a} and {b} meet in {found}"),
            Disconnected { curve } => write!(f, "{curve} never meets the divisor"),
            MultipleContacts { step, curve, contacts, total } => write!(
                f,
                "step {step}: {curve} meets {contacts} curves with total intersection {total}"
            ),
            HeadNotInSet { step, curve, head } => {
                write!(f, "step {step}: head e_{head} of {curve} is not in the running set")
            }
            TailOverlap { step, curve, overlap } => {
                write!(f, "step {step}: tail of {curve} meets the running set in {overlap:?}")
            }
            TotalClassMismatch { expected, found } => {
                write!(f, "total class {found} differs from -e of the running set {expected}")
            }
            Arithmetic { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub violations: Vec<DivisorViolation>,
    /// `𝔇_0 = I_C, 𝔇_1, …, 𝔇_q`.
    pub trace: Vec<IndexSet>,
    /// Tree curves in the order they were attached.
    pub order: Vec<TreeCurve>,
}

impl DivisorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, name: &str) -> bool {
        self.violations.iter().any(|v| v.name() == name)
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn arith(e: Error) -> DivisorViolation {
    DivisorViolation::Arithmetic {
        message: e.to_string(),
    }
}

/// Check a cycle-plus-trees configuration and record the running index sets.
pub fn validate_maximal_divisor(cfg: &MaximalDivisorConfig) -> DivisorReport {
    let mut report = DivisorReport::default();
    let v = &mut report.violations;

    let cycle_report = validate_cycle(&cfg.cycle);
    if !cycle_report.is_valid() {
        v.push(DivisorViolation::InvalidCycle {
            violations: cycle_report.violations,
        });
        return report;
    }
    let (_, cycle_set) = match cycle_class(&cfg.cycle) {
        Ok(x) => x,
        Err(Error::NotNodalForm) => {
            v.push(DivisorViolation::CycleClassNotNodal);
            return report;
        }
        Err(e) => {
            v.push(arith(e));
            return report;
        }
    };

    let cycle = cfg.cycle.curves();
    let s = cycle.len();

    let mut by_attach: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (t, tree) in cfg.trees.iter().enumerate() {
        if tree.attach >= s {
            v.push(DivisorViolation::AttachOutOfRange {
                tree: t,
                attach: tree.attach,
            });
        } else {
            by_attach.entry(tree.attach).or_default().push(t);
        }
    }
    for (cycle_curve, trees) in by_attach {
        if trees.len() > 1 {
            v.push(DivisorViolation::SharedAttachment { cycle_curve, trees });
        }
    }

    let curves: Vec<(TreeCurve, &ClassVector)> = cfg
        .trees
        .iter()
        .enumerate()
        .flat_map(|(t, tree)| {
            tree.chain
                .iter()
                .enumerate()
                .map(move |(p, c)| (TreeCurve { tree: t, position: p }, c))
        })
        .collect();

    for (id, c) in &curves {
        let kind = classify(c);
        if !kind.is_type_a() {
            v.push(DivisorViolation::TreeCurveNotTypeA { curve: *id, kind });
        }
    }

    for (t, tree) in cfg.trees.iter().enumerate() {
        check_chain(t, tree, cycle, v);
    }

    for (a, (ida, ca)) in curves.iter().enumerate() {
        for (idb, cb) in &curves[a + 1..] {
            if ida.tree == idb.tree {
                continue;
            }
            match ca.intersect(cb) {
                Ok(0) => {}
                Ok(found) => v.push(DivisorViolation::TreesMeet {
                    a: *ida,
                    b: *idb,
                    found,
                }),
                Err(e) => v.push(arith(e)),
            }
        }
    }

    grow(cycle, &curves, cycle_set, &mut report);
    report
}

fn check_chain(t: usize, tree: &TreeConfig, cycle: &[ClassVector], v: &mut Vec<DivisorViolation>) {
    let m = tree.chain.len();
    let mut degree = vec![0i64; m];
    degree[0] += 1;
    for i in 0..m {
        for j in i + 1..m {
            let found = match tree.chain[i].intersect(&tree.chain[j]) {
                Ok(x) => x,
                Err(e) => {
                    v.push(arith(e));
                    continue;
                }
            };
            if found > 0 {
                degree[i] += found;
                degree[j] += found;
            }
            let expected = i64::from(j == i + 1);
            if found != expected {
                v.push(DivisorViolation::NotAChain {
                    tree: t,
                    i,
                    j,
                    expected,
                    found,
                });
            }
        }
    }
    for (p, &d) in degree.iter().enumerate() {
        if d >= 3 {
            v.push(DivisorViolation::BranchingTree {
                curve: TreeCurve { tree: t, position: p },
                degree: d,
            });
        }
    }
    for (p, c) in tree.chain.iter().enumerate() {
        for (k, d) in cycle.iter().enumerate() {
            let expected = i64::from(p == 0 && k == tree.attach);
            match c.intersect(d) {
                Ok(found) if found == expected => {}
                Ok(found) => v.push(DivisorViolation::AttachmentMismatch {
                    curve: TreeCurve { tree: t, position: p },
                    cycle_curve: k,
                    expected,
                    found,
                }),
                Err(e) => v.push(arith(e)),
            }
        }
    }
}

/// Add tree curves one at a time, each meeting the union built so far.
fn grow(
    cycle: &[ClassVector],
    curves: &[(TreeCurve, &ClassVector)],
    cycle_set: IndexSet,
    report: &mut DivisorReport,
) {
    let n = cycle[0].rank();
    let mut placed: Vec<&ClassVector> = cycle.iter().collect();
    let mut pending: Vec<(TreeCurve, &ClassVector)> = curves.to_vec();
    let mut running = cycle_set;
    report.trace.push(running.clone());

    let mut step = 0;
    while !pending.is_empty() {
        let meets = |c: &ClassVector| placed.iter().any(|p| matches!(c.intersect(p), Ok(x) if x > 0));
        let Some(idx) = pending.iter().position(|(_, c)| meets(c)) else {
            for (id, _) in pending.drain(..) {
                report
                    .violations
                    .push(DivisorViolation::Disconnected { curve: id });
            }
            break;
        };
        let (id, c) = pending.remove(idx);
        step += 1;

        let mut contacts = 0;
        let mut total = 0i64;
        for p in &placed {
            if let Ok(x) = c.intersect(p) {
                if x > 0 {
                    contacts += 1;
                    total += x;
                }
            }
        }
        if contacts != 1 || total != 1 {
            report.violations.push(DivisorViolation::MultipleContacts {
                step,
                curve: id,
                contacts,
                total,
            });
        }

        if let CurveKind::TypeA { head, tail } = classify(c) {
            if !running.contains(&head) {
                report
                    .violations
                    .push(DivisorViolation::HeadNotInSet { step, curve: id, head });
            }
            let overlap: Vec<usize> = tail.intersection(&running).copied().collect();
            if !overlap.is_empty() {
                report
                    .violations
                    .push(DivisorViolation::TailOverlap { step, curve: id, overlap });
            }
            running.remove(&head);
            running.extend(tail);
        }
        report.trace.push(running.clone());
        report.order.push(id);
        placed.push(c);
    }

    let found = match lattice::sum(placed.iter().copied()) {
        Ok(x) => x,
        Err(e) => {
            report.violations.push(arith(e));
            return;
        }
    };
    match e_sum(&running, n).and_then(|x| x.negate()) {
        Ok(expected) if expected == found => {}
        Ok(expected) => report
            .violations
            .push(DivisorViolation::TotalClassMismatch { expected, found }),
        Err(e) => report.violations.push(arith(e)),
    }
}

/// `D = C + A = -e_𝔇` for a valid maximal divisor.
pub fn total_class(cfg: &MaximalDivisorConfig) -> Result<(ClassVector, IndexSet)> {
    let report = validate_maximal_divisor(cfg);
    if !report.is_valid() {
        return Err(Error::InvalidDivisor(report.summary()));
    }
    let total = lattice::sum(&cfg.all_curves())?;
    let set = report.trace.last().cloned().unwrap_or_default();
    Ok((total, set))
}

/// `K·D` for a single component: `-D² - 2` for a smooth rational curve,
/// `-D²` for a rational curve with one node (class `-e_I`).
fn canonical_degree(index: usize, c: &ClassVector) -> Result<i64> {
    let d2 = c.self_intersection()?;
    let kind = classify(c);
    if kind.is_curve() {
        d2.checked_neg()
            .and_then(|x| x.checked_sub(2))
            .ok_or(Error::Overflow)
    } else if minus_e_support(c).is_some() {
        d2.checked_neg().ok_or(Error::Overflow)
    } else {
        Err(Error::NonCurveComponent { index })
    }
}

/// `p_a(Δ) = 1 + (K·Δ + Δ²)/2` for a reduced divisor with the given
/// components. `K` is only ever paired with components, through adjunction.
pub fn arithmetic_genus(curves: &[ClassVector]) -> Result<i64> {
    let total = lattice::sum(curves)?;
    let mut k_dot = 0i64;
    for (i, c) in curves.iter().enumerate() {
        k_dot = k_dot
            .checked_add(canonical_degree(i, c)?)
            .ok_or(Error::Overflow)?;
    }
    let twice = k_dot
        .checked_add(total.self_intersection()?)
        .ok_or(Error::Overflow)?;
    debug_assert_eq!(twice % 2, 0, "K.D + D^2 is even");
    Ok(1 + twice / 2)
}

/// Positive intersections as an undirected multigraph; returns
/// `(components, edge count with multiplicity)` plus the component of each curve.
fn dual_graph_shape(curves: &[ClassVector]) -> Result<(usize, i64, Vec<usize>)> {
    let m = curves.len();
    let mut comp: Vec<usize> = (0..m).collect();
    fn find(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    let mut edges = 0i64;
    for i in 0..m {
        for j in i + 1..m {
            let x = curves[i].intersect(&curves[j])?;
            if x > 0 {
                edges += x;
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..m).map(|i| find(&mut comp, i)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    Ok((distinct.len(), edges, roots))
}

/// Split a configuration into connected components (by positive intersection).
pub fn connected_components(curves: &[ClassVector]) -> Result<Vec<Vec<ClassVector>>> {
    let (_, _, roots) = dual_graph_shape(curves)?;
    let mut groups: BTreeMap<usize, Vec<ClassVector>> = BTreeMap::new();
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, r) in roots.iter().enumerate() {
        let key = *first_seen.entry(*r).or_insert(i);
        groups.entry(key).or_default().push(curves[i].clone());
    }
    Ok(groups.into_values().collect())
}

/// Whether the dual graph has a cycle, counting a nodal component as a loop.
pub fn contains_cycle(curves: &[ClassVector]) -> Result<bool> {
    if curves
        .iter()
        .any(|c| !classify(c).is_curve() && minus_e_support(c).is_some())
    {
        return Ok(true);
    }
    let (components, edges, _) = dual_graph_shape(curves)?;
    Ok(edges > curves.len() as i64 - components as i64)
}

/// For a connected, simply connected configuration `H`, write
/// `H = e_k - e_K` with `k ∉ K`.
pub fn simply_connected_class(curves: &[ClassVector]) -> Result<(usize, IndexSet)> {
    if curves.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    for (index, c) in curves.iter().enumerate() {
        if !classify(c).is_curve() {
            if minus_e_support(c).is_some() {
                return Err(Error::NotTreeShaped);
            }
            return Err(Error::NonCurveComponent { index });
        }
    }
    let (components, edges, _) = dual_graph_shape(curves)?;
    if components != 1 {
        return Err(Error::NotConnected);
    }
    if edges != curves.len() as i64 - 1 {
        return Err(Error::NotTreeShaped);
    }
    match classify(&lattice::sum(curves)?) {
        CurveKind::TypeA { head, tail } => Ok((head, tail)),
        _ => Err(Error::NotLemmaForm),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ContradictionReason {
    /// A simply connected component is not of the form `e_k - e_K`.
    NotLemmaForm { component: usize },
    HeadOutsideCycleSet { component: usize, head: usize },
    /// `|K ∩ I_C| ≠ 1`.
    TailMeetsCycleSet { component: usize, count: usize },
    TreeHeadOutsideCycleSet { tree: usize, head: usize },
    TreeTailMeetsCycleSet { tree: usize, overlap: Vec<usize> },
    TreeTailsOverlap { a: usize, b: usize },
    TreeNotLemmaForm { tree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SecondComponentVerdict {
    NoSecondComponent,
    /// The second component contains a cycle. Trees on `D` are then a
    /// violation: two cycles leave no room for trees.
    TwoCycles { trees_present: bool },
    Contradiction { reasons: Vec<ContradictionReason> },
    /// Every combinatorial constraint holds; each component is `e_k - e_K`.
    Unrefuted { components: Vec<(usize, IndexSet)> },
}

impl SecondComponentVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            SecondComponentVerdict::TwoCycles { trees_present: true }
                | SecondComponentVerdict::Contradiction { .. }
        )
    }
}

/// Check a second connected component `C'` (disjoint from `D`) against the
/// constraints a surface with one cycle imposes on it.
pub fn second_component_check(
    d: &MaximalDivisorConfig,
    second: &[ClassVector],
) -> Result<SecondComponentVerdict> {
    if second.is_empty() {
        return Ok(SecondComponentVerdict::NoSecondComponent);
    }
    let (total, _) = total_class(d)?;
    for (curve, c) in second.iter().enumerate() {
        if total.intersect(c)? != 0 {
            return Err(Error::NotDisjoint { curve });
        }
    }
    if contains_cycle(second)? {
        return Ok(SecondComponentVerdict::TwoCycles {
            trees_present: !d.trees.is_empty(),
        });
    }

    let (_, cycle_set) = cycle_class(&d.cycle)?;
    let mut reasons = Vec::new();

    let mut tree_tails: Vec<(usize, IndexSet)> = Vec::new();
    for (t, tree) in d.trees.iter().enumerate() {
        match simply_connected_class(&tree.chain) {
            Ok((head, tail)) => {
                if !cycle_set.contains(&head) {
                    reasons.push(ContradictionReason::TreeHeadOutsideCycleSet { tree: t, head });
                }
                let overlap: Vec<usize> = tail.intersection(&cycle_set).copied().collect();
                if !overlap.is_empty() {
                    reasons.push(ContradictionReason::TreeTailMeetsCycleSet { tree: t, overlap });
                }
                tree_tails.push((t, tail));
            }
            Err(_) => reasons.push(ContradictionReason::TreeNotLemmaForm { tree: t }),
        }
    }
    for (i, (a, ta)) in tree_tails.iter().enumerate() {
        for (b, tb) in &tree_tails[i + 1..] {
            if !ta.is_disjoint(tb) {
                reasons.push(ContradictionReason::TreeTailsOverlap { a: *a, b: *b });
            }
        }
    }

    let mut found = Vec::new();
    for (component, part) in connected_components(second)?.iter().enumerate() {
        match simply_connected_class(part) {
            Ok((head, tail)) => {
                if !cycle_set.contains(&head) {
                    reasons.push(ContradictionReason::HeadOutsideCycleSet { component, head });
                }
                let count = tail.intersection(&cycle_set).count();
                if count != 1 {
                    reasons.push(ContradictionReason::TailMeetsCycleSet { component, count });
                }
                found.push((head, tail));
            }
            Err(_) => reasons.push(ContradictionReason::NotLemmaForm { component }),
        }
    }

    if reasons.is_empty() {
        Ok(SecondComponentVerdict::Unrefuted { components: found })
    } else {
        Ok(SecondComponentVerdict::Contradiction { reasons })
    }
}
