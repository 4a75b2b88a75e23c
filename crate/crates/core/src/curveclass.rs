//! Classes of smooth rational curves and chains of them.
//!
//! A smooth rational curve `D = Σ a_k e_k` satisfies `K·D + D² + 2 = 0`,
//! which in the Donaldson basis reads `2 - Σ_k (a_k² + a_k) = 0`. Since
//! `a² + a` is `0` exactly for `a ∈ {0, -1}` and at least `2` otherwise, one
//! coefficient is `1` or `-2` and all others are `0` or `-1`:
//!
//! * type **a**: `e_i - e_I`,
//! * type **b**: `-2e_i - e_I`,
//!
//! with `i ∉ I` in both cases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{e_sum, ClassVector, IndexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CurveKindWire", into = "CurveKindWire")]
pub enum CurveKind {
    /// `e_head - e_tail`.
    TypeA { head: usize, tail: IndexSet },
    /// `-2 e_head - e_tail`.
    TypeB { head: usize, tail: IndexSet },
    /// Anything else; `defect = 2 - Σ(a_k² + a_k)` is nonzero.
    NonCurve { defect: i64 },
}

impl CurveKind {
    pub fn is_curve(&self) -> bool {
        !matches!(self, CurveKind::NonCurve { .. })
    }

    pub fn is_type_a(&self) -> bool {
        matches!(self, CurveKind::TypeA { .. })
    }

    pub fn is_type_b(&self) -> bool {
        matches!(self, CurveKind::TypeB { .. })
    }

    pub fn head(&self) -> Option<usize> {
        match self {
            CurveKind::TypeA { head, .. } | CurveKind::TypeB { head, .. } => Some(*head),
            CurveKind::NonCurve { .. } => None,
        }
    }

    pub fn tail(&self) -> Option<&IndexSet> {
        match self {
            CurveKind::TypeA { tail, .. } | CurveKind::TypeB { tail, .. } => Some(tail),
            CurveKind::NonCurve { .. } => None,
        }
    }

    /// Rebuild the class vector in rank `n`. `NonCurve` has no class.
    pub fn reconstruct(&self, n: usize) -> Result<ClassVector> {
        let (head, tail, lead) = match self {
            CurveKind::TypeA { head, tail } => (*head, tail, 1),
            CurveKind::TypeB { head, tail } => (*head, tail, -2),
            CurveKind::NonCurve { defect } => return Err(Error::NotACurve { defect: *defect }),
        };
        if tail.contains(&head) {
            return Err(Error::NotACurve { defect: 0 });
        }
        let mut coeffs = e_sum(tail, n)?.negate()?.coeffs().to_vec();
        if head >= n {
            return Err(Error::IndexOutOfRange { index: head, rank: n });
        }
        coeffs[head] = lead;
        ClassVector::new(coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct CurveKindWire {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(default, rename = "I", skip_serializing_if = "Option::is_none")]
    tail: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    defect: Option<i64>,
}

impl From<CurveKind> for CurveKindWire {
    fn from(k: CurveKind) -> Self {
        match k {
            CurveKind::TypeA { head, tail } => CurveKindWire {
                kind: "A".into(),
                i: Some(head),
                tail: Some(tail.into_iter().collect()),
                defect: None,
            },
            CurveKind::TypeB { head, tail } => CurveKindWire {
                kind: "B".into(),
                i: Some(head),
                tail: Some(tail.into_iter().collect()),
                defect: None,
            },
            CurveKind::NonCurve { defect } => CurveKindWire {
                kind: "none".into(),
                i: None,
                tail: None,
                defect: Some(defect),
            },
        }
    }
}

impl TryFrom<CurveKindWire> for CurveKind {
    type Error = String;

    fn try_from(w: CurveKindWire) -> std::result::Result<Self, String> {
        let typed = |w: &CurveKindWire| -> std::result::Result<(usize, IndexSet), String> {
            let head = w.i.ok_or("missing field `i`")?;
            let tail: IndexSet = w.tail.iter().flatten().copied().collect();
            if tail.contains(&head) {
                return Err(format!("head {head} lies in its own tail"));
            }
            Ok((head, tail))
        };
        match w.kind.as_str() {
            "A" => typed(&w).map(|(head, tail)| CurveKind::TypeA { head, tail }),
            "B" => typed(&w).map(|(head, tail)| CurveKind::TypeB { head, tail }),
            "none" => Ok(CurveKind::NonCurve {
                defect: w.defect.ok_or("missing field `defect`")?,
            }),
            other => Err(format!("unknown curve kind `{other}`")),
        }
    }
}

/// `2 - Σ_k (a_k² + a_k)`: zero exactly for classes of smooth rational curves.
///
/// Evaluated in `i128` and saturated into `i64`, so the function is total.
pub fn genus_defect(x: &ClassVector) -> i64 {
    let s = x.coeffs().iter().fold(0i128, |acc, &a| {
        let a = a as i128;
        acc.saturating_add(a.saturating_mul(a).saturating_add(a))
    });
    let d = 2i128.saturating_sub(s);
    d.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

/// Sort a class into type **a**, type **b** or neither.
pub fn classify(x: &ClassVector) -> CurveKind {
    let mut lead = None;
    for (k, &a) in x.coeffs().iter().enumerate() {
        if a == 0 || a == -1 {
            continue;
        }
        if lead.is_some() {
            return CurveKind::NonCurve { defect: genus_defect(x) };
        }
        lead = Some((k, a));
    }
    match lead {
        Some((head, 1)) => CurveKind::TypeA { head, tail: x.support_of(-1) },
        Some((head, -2)) => CurveKind::TypeB { head, tail: x.support_of(-1) },
        _ => CurveKind::NonCurve { defect: genus_defect(x) },
    }
}

/// If `x = -e_I` with `I` non-empty, return `I`.
pub fn is_nodal_cycle_class(x: &ClassVector) -> Option<IndexSet> {
    if x.is_zero() || x.coeffs().iter().any(|&a| a != 0 && a != -1) {
        return None;
    }
    Some(x.support_of(-1))
}

/// `-e_I` for a possibly empty `I`: the shape of every cycle and maximal
/// divisor class.
pub(crate) fn minus_e_support(x: &ClassVector) -> Option<IndexSet> {
    if x.coeffs().iter().all(|&a| a == 0 || a == -1) {
        Some(x.support_of(-1))
    } else {
        None
    }
}

/// Classify the chain `a + b` of two adjacent rational curves.
///
/// Hypotheses are checked, not assumed: both inputs must be curves, not
/// both of type **b**, and meet with `a·b = 1`.
pub fn compose_chain(a: &ClassVector, b: &ClassVector) -> Result<CurveKind> {
    let (ka, kb) = (classify(a), classify(b));
    for k in [&ka, &kb] {
        if let CurveKind::NonCurve { defect } = k {
            return Err(Error::NotACurve { defect: *defect });
        }
    }
    if ka.is_type_b() && kb.is_type_b() {
        return Err(Error::TwoTypeB);
    }
    let found = a.intersect(b)?;
    if found != 1 {
        return Err(Error::NotAdjacent { found });
    }
    Ok(classify(&a.add(b)?))
}

fn type_a_head(x: &ClassVector) -> Result<usize> {
    match classify(x) {
        CurveKind::TypeA { head, .. } => Ok(head),
        _ => Err(Error::NotTypeA),
    }
}

/// Whether two type **a** classes have different heads.
pub fn distinct_heads(a: &ClassVector, b: &ClassVector) -> Result<bool> {
    Ok(type_a_head(a)? != type_a_head(b)?)
}

/// Two type **a** classes sharing a head pair negatively, so any pair of
/// distinct curves (pairing `≥ 0`) must have distinct heads. Returns whether
/// the pair is consistent with that.
pub fn heads_lemma_holds(a: &ClassVector, b: &ClassVector) -> Result<bool> {
    let distinct = distinct_heads(a, b)?;
    Ok(distinct || a.intersect(b)? < 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(v: &[i64]) -> ClassVector {
        ClassVector::new(v.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&cv(&[1, -1, -1])),
            CurveKind::TypeA { head: 0, tail: set(&[1, 2]) }
        );
        assert_eq!(
            classify(&cv(&[0, -2, -1, -1])),
            CurveKind::TypeB { head: 1, tail: set(&[2, 3]) }
        );
        assert_eq!(classify(&cv(&[1, 1, 0])), CurveKind::NonCurve { defect: -2 });
        assert_eq!(classify(&cv(&[0, 0])), CurveKind::NonCurve { defect: 2 });
        assert_eq!(classify(&cv(&[-2])), CurveKind::TypeB { head: 0, tail: set(&[]) });
    }

    #[test]
    fn genus_defect_examples() {
        assert_eq!(genus_defect(&cv(&[1, -1, -1])), 0);
        assert_eq!(genus_defect(&cv(&[0, -2, -1, -1])), 0);
        assert_eq!(genus_defect(&cv(&[0, 0, 0, 0])), 2);
        assert_eq!(genus_defect(&cv(&[-1, 0, -1, -1])), 2);
        // saturates instead of wrapping
        assert_eq!(genus_defect(&cv(&[i64::MAX, i64::MAX, i64::MAX])), i64::MIN);
        assert!(!classify(&cv(&[i64::MIN])).is_curve());
    }

    #[test]
    fn nodal_cycle_class_examples() {
        assert_eq!(is_nodal_cycle_class(&cv(&[-1, -1, -1])), Some(set(&[0, 1, 2])));
        assert_eq!(
            is_nodal_cycle_class(&cv(&[0, -1, -1, -1, 0, -1])),
            Some(set(&[1, 2, 3, 5]))
        );
        assert_eq!(is_nodal_cycle_class(&cv(&[1, -1])), None);
        assert_eq!(is_nodal_cycle_class(&cv(&[0, 0])), None);
    }

    #[test]
    fn compose_chain_examples() {
        assert_eq!(
            compose_chain(&cv(&[1, -1, -1]), &cv(&[-1, 1, -1])).unwrap(),
            CurveKind::TypeB { head: 2, tail: set(&[]) }
        );
        assert_eq!(
            compose_chain(&cv(&[0, 1, -1, 0, 0, 0]), &cv(&[0, 0, 1, -1, 0, 0])).unwrap(),
            CurveKind::TypeA { head: 1, tail: set(&[3]) }
        );
        assert_eq!(
            compose_chain(&cv(&[-2, 0, 0]), &cv(&[0, -2, 0])),
            Err(Error::TwoTypeB)
        );
        assert_eq!(
            compose_chain(&cv(&[1, 1, 0]), &cv(&[1, -1, 0])),
            Err(Error::NotACurve { defect: -2 })
        );
        assert_eq!(
            compose_chain(&cv(&[1, -1, 0]), &cv(&[0, 0, 1])),
            Err(Error::NotAdjacent { found: 0 })
        );
    }

    #[test]
    fn distinct_heads_examples() {
        assert!(distinct_heads(&cv(&[1, -1, -1]), &cv(&[-1, 1, -1])).unwrap());
        let (a, b) = (cv(&[1, -1, 0]), cv(&[1, 0, -1]));
        assert_eq!(a.intersect(&b).unwrap(), -1);
        assert!(!distinct_heads(&a, &b).unwrap());
        assert!(heads_lemma_holds(&a, &b).unwrap());
        let x = cv(&[1, -1, -1]);
        assert!(!distinct_heads(&x, &x).unwrap());
        assert!(x.self_intersection().unwrap() <= -2);
        assert_eq!(distinct_heads(&cv(&[-2, 0, 0]), &x), Err(Error::NotTypeA));
    }

    #[test]
    fn wire_format() {
        let a = classify(&cv(&[1, -1, -1]));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"kind":"A","i":0,"I":[1,2]}"#);
        let b = classify(&cv(&[0, -2, -1, -1]));
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"kind":"B","i":1,"I":[2,3]}"#);
        let none = classify(&cv(&[1, 1, 0]));
        assert_eq!(serde_json::to_string(&none).unwrap(), r#"{"kind":"none","defect":-2}"#);
        for k in [a, b, none] {
            let back: CurveKind = serde_json::from_str(&serde_json::to_string(&k).unwrap()).unwrap();
            assert_eq!(back, k);
        }
        assert!(serde_json::from_str::<CurveKind>(r#"{"kind":"A","i":1,"I":[1]}"#).is_err());
    }

    proptest::proptest! {
        #[test]
        fn reconstruct_then_classify_is_identity(
            n in 1usize..8, head_seed in 0usize..64, mask in 0u32..256, b in proptest::bool::ANY,
        ) {
            let head = head_seed % n;
            let tail: IndexSet = (0..n).filter(|&i| i != head && mask >> i & 1 == 1).collect();
            let kind = if b {
                CurveKind::TypeB { head, tail }
            } else {
                CurveKind::TypeA { head, tail }
            };
            let x = kind.reconstruct(n).unwrap();
            proptest::prop_assert_eq!(genus_defect(&x), 0);
            proptest::prop_assert_eq!(classify(&x), kind);
        }
    }
}
