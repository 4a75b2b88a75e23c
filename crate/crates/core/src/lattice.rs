//! The rank-`n` lattice `H₂(S, ℤ) ≅ ℤⁿ` with the form `e_i·e_j = -δ_ij`.
//!
//! Every binary operation checks ranks, and all arithmetic is checked so a
//! class never wraps silently.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered set of Donaldson basis indices.
pub type IndexSet = BTreeSet<usize>;

/// Integer coefficient vector of a class in the Donaldson basis.
///
/// Serialises as a bare JSON array; the rank is the array length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ClassVector {
    coeffs: Vec<i64>,
}

impl TryFrom<Vec<i64>> for ClassVector {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<ClassVector> for Vec<i64> {
    fn from(x: ClassVector) -> Self {
        x.coeffs
    }
}

impl ClassVector {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyClass);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// The basis class `e_i`.
    pub fn basis(i: usize, n: usize) -> Result<Self> {
        e_sum(&IndexSet::from([i]), n)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    /// Indices whose coefficient equals `value`.
    pub fn support_of(&self, value: i64) -> IndexSet {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == value)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    /// `x·y = -Σ_k x_k y_k`.
    pub fn intersect(&self, other: &Self) -> Result<i64> {
        self.check_rank(other)?;
        let mut acc: i64 = 0;
        for (&a, &b) in self.coeffs.iter().zip(&other.coeffs) {
            let p = a.checked_mul(b).ok_or(Error::Overflow)?;
            acc = acc.checked_sub(p).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> Result<i64> {
        self.intersect(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }

    pub fn negate(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate()?)
    }

    /// Pull back along an unramified double cover: `p*e_k = e'_k + e'_{n+k}`.
    pub fn pullback_double_cover(&self) -> Self {
        let mut coeffs = Vec::with_capacity(2 * self.rank());
        coeffs.extend_from_slice(&self.coeffs);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Relabel the basis: the coefficient of `e_i` moves to `e_{perm[i]}`.
    ///
    /// `perm` must be a permutation of `0..rank`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.rank());
        let mut coeffs = vec![0; self.rank()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[perm[i]] = a;
        }
        Self { coeffs }
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `e_I = Σ_{i∈I} e_i` in rank `n`.
pub fn e_sum(indices: &IndexSet, n: usize) -> Result<ClassVector> {
    let mut x = ClassVector::zero(n)?;
    for &i in indices {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        x.coeffs[i] = 1;
    }
    Ok(x)
}

/// Sum of a non-empty sequence of classes of equal rank.
pub fn sum<'a, I>(classes: I) -> Result<ClassVector>
where
    I: IntoIterator<Item = &'a ClassVector>,
{
    let mut iter = classes.into_iter();
    let first = iter.next().ok_or(Error::EmptyConfiguration)?.clone();
    iter.try_fold(first, |acc, x| acc.add(x))
}

/// Free-function form of [`ClassVector::intersect`].
pub fn intersect(x: &ClassVector, y: &ClassVector) -> Result<i64> {
    x.intersect(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(v: &[i64]) -> ClassVector {
        ClassVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basis_squares_to_minus_one() {
        let e0 = ClassVector::basis(0, 3).unwrap();
        assert_eq!(e0.intersect(&e0).unwrap(), -1);
    }

    #[test]
    fn adjacent_curves_of_the_333_cycle() {
        assert_eq!(cv(&[1, -1, -1]).intersect(&cv(&[-1, 1, -1])).unwrap(), 1);
    }

    #[test]
    fn zero_pairs_to_zero() {
        let z = ClassVector::zero(4).unwrap();
        assert_eq!(z.intersect(&cv(&[3, -2, 7, 1])).unwrap(), 0);
    }

    #[test]
    fn rank_mismatch_is_reported() {
        assert_eq!(
            cv(&[1, 0]).intersect(&cv(&[1, 0, 0])),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
        assert!(cv(&[1, 0]).add(&cv(&[1])).is_err());
    }

    #[test]
    fn e_sum_examples() {
        assert_eq!(e_sum(&IndexSet::from([1, 2]), 3).unwrap(), cv(&[0, 1, 1]));
        assert_eq!(e_sum(&IndexSet::new(), 3).unwrap(), cv(&[0, 0, 0]));
        assert_eq!(e_sum(&(2..5).collect(), 5).unwrap(), cv(&[0, 0, 1, 1, 1]));
        assert_eq!(
            e_sum(&IndexSet::from([3]), 3),
            Err(Error::IndexOutOfRange { index: 3, rank: 3 })
        );
    }

    #[test]
    fn add_and_negate() {
        assert_eq!(cv(&[1, -1, -1]).add(&cv(&[-1, 1, -1])).unwrap(), cv(&[0, 0, -2]));
        let x = cv(&[4, -1, 0]);
        assert!(x.add(&x.negate().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_detected() {
        let big = cv(&[i64::MAX]);
        assert_eq!(big.add(&cv(&[1])), Err(Error::Overflow));
        assert_eq!(big.intersect(&big), Err(Error::Overflow));
        assert_eq!(cv(&[i64::MIN]).negate(), Err(Error::Overflow));
    }

    #[test]
    fn pullback_examples() {
        let e0 = ClassVector::basis(0, 2).unwrap();
        assert_eq!(e0.pullback_double_cover(), cv(&[1, 0, 1, 0]));
        assert_eq!(
            ClassVector::zero(3).unwrap().pullback_double_cover(),
            ClassVector::zero(6).unwrap()
        );
    }

    #[test]
    fn empty_vectors_are_rejected() {
        assert_eq!(ClassVector::new(vec![]), Err(Error::EmptyClass));
        assert!(serde_json::from_str::<ClassVector>("[]").is_err());
        let x: ClassVector = serde_json::from_str("[1,-1,-1]").unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,-1,-1]");
    }

    fn pair(max_n: usize) -> impl Strategy<Value = (ClassVector, ClassVector)> {
        (1..=max_n).prop_flat_map(|n| {
            (
                prop::collection::vec(-50i64..50, n),
                prop::collection::vec(-50i64..50, n),
            )
                .prop_map(|(a, b)| (cv(&a), cv(&b)))
        })
    }

    proptest! {
        #[test]
        fn form_is_symmetric((x, y) in pair(8)) {
            prop_assert_eq!(x.intersect(&y).unwrap(), y.intersect(&x).unwrap());
        }

        #[test]
        fn form_is_negative_definite(v in prop::collection::vec(-20i64..20, 1..8)) {
            let x = cv(&v);
            if !x.is_zero() {
                prop_assert!(x.self_intersection().unwrap() <= -1);
            }
        }

        #[test]
        fn pullback_doubles_the_form((x, y) in pair(8)) {
            let lhs = x.pullback_double_cover().intersect(&y.pullback_double_cover()).unwrap();
            prop_assert_eq!(lhs, 2 * x.intersect(&y).unwrap());
        }

        #[test]
        fn form_distributes_over_add((x, y) in pair(6), w in prop::collection::vec(-9i64..9, 6)) {
            let z = cv(&w[..x.rank()]);
            let lhs = x.add(&y).unwrap().intersect(&z).unwrap();
            prop_assert_eq!(lhs, x.intersect(&z).unwrap() + y.intersect(&z).unwrap());
        }

        #[test]
        fn e_sum_of_disjoint_union(mask in 0u32..(1 << 8), split in 0u32..(1 << 8)) {
            let n = 8;
            let set: IndexSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let (a, b): (IndexSet, IndexSet) = set.iter().partition(|&&i| split >> i & 1 == 1);
            let whole = e_sum(&set, n).unwrap();
            prop_assert_eq!(whole, e_sum(&a, n).unwrap().add(&e_sum(&b, n).unwrap()).unwrap());
        }
    }
}
