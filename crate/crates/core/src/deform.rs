//! Smoothing one node of a cycle.
//!
//! Smoothing the point `D_i ∩ D_{i+1}` replaces the two curves by
//! `D' = D_i + D_{i+1}` and ejects an exceptional curve of class `e_h`.
//! In the orientation where each head lies in the tail of the curve before
//! it, `h` is the head of the absorbed curve `D_{i+1}`; against that
//! orientation the roles of the two curves swap. The cycle class is
//! unchanged and `#C - C²` drops by one. A single nodal curve smooths to an
//! elliptic curve.

use serde::{Deserialize, Serialize};

use crate::curveclass::classify;
use crate::cycle::{validate_cycle, CycleConfig, CycleViolation};
use crate::error::{Error, Result};
use crate::lattice::ClassVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothed {
    Cycle(CycleConfig),
    /// Terminal: the node of a single rational curve was smoothed.
    Elliptic { class: ClassVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingOutcome {
    pub result: Smoothed,
    pub exceptional: Option<ClassVector>,
}

impl SmoothingOutcome {
    pub fn cycle(&self) -> Option<&CycleConfig> {
        match &self.result {
            Smoothed::Cycle(c) => Some(c),
            Smoothed::Elliptic { .. } => None,
        }
    }
}

/// The head that cancels in `a + b`: the head of `b` when it lies in the
/// tail of `a`, else the head of `a` when it lies in the tail of `b`, else
/// the head of `b`.
fn ejected_index(a: &ClassVector, b: &ClassVector) -> Option<usize> {
    let (ka, kb) = (classify(a), classify(b));
    let (ha, hb) = (ka.head()?, kb.head()?);
    if ka.tail().is_some_and(|t| t.contains(&hb)) {
        Some(hb)
    } else if kb.tail().is_some_and(|t| t.contains(&ha)) {
        Some(ha)
    } else {
        Some(hb)
    }
}

/// Smooth the node between positions `i` and `i + 1 (mod s)`.
///
/// The merged curve takes position `i` (position 0 when `i = s - 1`).
/// Alphas are carried over when they still describe the new cycle.
pub fn smooth_node(cfg: &CycleConfig, i: usize) -> Result<SmoothingOutcome> {
    let report = validate_cycle(cfg);
    if !report.is_valid() {
        return Err(Error::InvalidCycle(report.summary()));
    }
    let s = cfg.len();
    if i >= s {
        return Err(Error::PositionOutOfRange { position: i, len: s });
    }
    let curves = cfg.curves();
    if s == 1 {
        return Ok(SmoothingOutcome {
            result: Smoothed::Elliptic {
                class: curves[0].clone(),
            },
            exceptional: None,
        });
    }

    let j = (i + 1) % s;
    let head = ejected_index(&curves[i], &curves[j])
        .ok_or_else(|| Error::InvalidCycle(format!("curves {i} and {j} have no head")))?;
    let merged = curves[i].add(&curves[j])?;

    let mut next: Vec<ClassVector> = Vec::with_capacity(s - 1);
    let mut alphas: Option<Vec<usize>> = cfg.alphas().map(|_| Vec::with_capacity(s - 1));
    for (k, c) in curves.iter().enumerate() {
        if k == j {
            continue;
        }
        next.push(if k == i { merged.clone() } else { c.clone() });
        if let (Some(out), Some(src)) = (alphas.as_mut(), cfg.alphas()) {
            out.push(src[k]);
        }
    }
    if j == 0 {
        // the merged curve wraps around to the front
        next.rotate_right(1);
        if let Some(a) = alphas.as_mut() {
            a.rotate_right(1);
        }
    }

    let mut out = CycleConfig::new(cfg.n(), next)?;
    if let Some(a) = alphas {
        let candidate = out.clone().with_alphas(a);
        let bad = validate_cycle(&candidate)
            .violations
            .iter()
            .any(|v| matches!(v, CycleViolation::BadAlphas { .. }));
        if !bad {
            out = candidate;
        }
    }
    Ok(SmoothingOutcome {
        result: Smoothed::Cycle(out),
        exceptional: Some(ClassVector::basis(head, cfg.n())?),
    })
}

/// Smooth at position 0 until a single nodal curve remains. Returns every
/// intermediate outcome, the last one holding a one-curve cycle.
pub fn smooth_to_nodal(cfg: &CycleConfig) -> Result<Vec<SmoothingOutcome>> {
    let report = validate_cycle(cfg);
    if !report.is_valid() {
        return Err(Error::InvalidCycle(report.summary()));
    }
    let mut steps = Vec::with_capacity(cfg.len() - 1);
    let mut current = cfg.clone();
    while current.len() > 1 {
        let step = smooth_node(&current, 0)?;
        current = step
            .cycle()
            .cloned()
            .ok_or_else(|| Error::InvalidCycle("smoothing ended early".into()))?;
        steps.push(step);
    }
    Ok(steps)
}
