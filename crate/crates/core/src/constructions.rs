//! Extremal tensor families and the exponent set they realize.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use crate::digraph::{matrix_gamma, wielandt_matrix, PatternMatrix};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::pattern::{wielandt_bound, PatternTensor};

/// Largest `k` accepted by [`a_k`]: `n^2 - 3n + 2`.
pub fn max_k(n: usize) -> usize {
    n * n - 3 * n + 2
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

/// The tensor whose only positive entries are `a[u, v, v, ..., v]` for
/// positive `(u, v)` of `matrix`.
pub fn monomial_lift(matrix: &PatternMatrix, order: usize) -> Result<PatternTensor> {
    let mut t = PatternTensor::new(order, matrix.dim())?;
    for u in 1..=matrix.dim() {
        for v in matrix.row(u) {
            t.insert_support(u, IndexSet::singleton(matrix.dim(), v)?)?;
        }
    }
    Ok(t)
}

/// Monomial lift of the Wielandt matrix. Primitive degree `(n - 1)^2 + 1`.
pub fn a0(order: usize, n: usize) -> Result<PatternTensor> {
    require(order >= 2, || format!("A0 needs m >= 2, got m = {order}"))?;
    require(n >= 3, || format!("A0 needs n >= 3, got n = {n}"))?;
    monomial_lift(&wielandt_matrix(n)?, order)
}

/// `A0` with the set `S_k(A0, n - 1)` added as a support of every row.
/// Primitive degree `n + k`.
pub fn a_k(order: usize, n: usize, k: usize) -> Result<PatternTensor> {
    require(n >= 3, || format!("A_k needs n >= 3, got n = {n}"))?;
    require(order >= n, || format!("A_k needs m >= n, got m = {order}, n = {n}"))?;
    require((1..=max_k(n)).contains(&k), || {
        format!("A_k needs 1 <= k <= n^2 - 3n + 2 = {}, got k = {k}", max_k(n))
    })?;
    let mut t = a0(order, n)?;
    let extra = t.iterate_column(n - 1, k)?[k - 1];
    for u in 1..=n {
        t.insert_support(u, extra)?;
    }
    Ok(t)
}

/// A primitive `n x n` matrix with exponent exactly `t`, for `1 <= t <= n`:
/// columns `1` and `t + 1..=n` all-positive plus the superdiagonal entries
/// `(i, i + 1)` for `i < t`. Column `j <= t` then needs exactly `j` steps.
pub fn small_exponent_matrix(n: usize, t: usize) -> Result<PatternMatrix> {
    require(n >= 3, || format!("small-exponent matrix needs n >= 3, got n = {n}"))?;
    require((1..=n).contains(&t), || format!("small-exponent matrix needs 1 <= t <= n, got t = {t}"))?;
    let full_columns = std::iter::once(1).chain(t + 1..=n);
    let entries = full_columns
        .flat_map(|j| (1..=n).map(move |i| (i, j)))
        .chain((1..t).map(|i| (i, i + 1)));
    let m = PatternMatrix::from_entries(n, entries)?;
    match matrix_gamma(&m) {
        Some(g) if g == t => Ok(m),
        got => Err(Error::Verification(format!(
            "small-exponent matrix n = {n}, t = {t} has exponent {got:?}"
        ))),
    }
}

/// Which family a tensor comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Monomial(PatternMatrix),
    A0,
    Ak(usize),
    Bt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub order: usize,
    pub dim: usize,
}

impl FamilySpec {
    pub fn build(&self) -> Result<PatternTensor> {
        match &self.kind {
            FamilyKind::Monomial(m) => {
                if m.dim() != self.dim {
                    return Err(Error::DimMismatch { left: self.dim, right: m.dim() });
                }
                monomial_lift(m, self.order)
            }
            FamilyKind::A0 => a0(self.order, self.dim),
            FamilyKind::Ak(k) => a_k(self.order, self.dim, *k),
            FamilyKind::Bt(t) => b_t(self.order, self.dim, *t),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = (self.order, self.dim);
        match &self.kind {
            FamilyKind::Monomial(_) => write!(f, "monomial(m={m},n={n})"),
            FamilyKind::A0 => write!(f, "A0(m={m},n={n})"),
            FamilyKind::Ak(k) => write!(f, "A_{k}(m={m},n={n})"),
            FamilyKind::Bt(t) => write!(f, "B_{t}(m={m},n={n})"),
        }
    }
}

fn check_exponent_range(order: usize, n: usize) -> Result<()> {
    require(n >= 3, || format!("needs n >= 3, got n = {n}"))?;
    require(order >= n, || format!("needs m >= n, got m = {order}, n = {n}"))
}

/// The concrete family behind `B_t`: a monomial lift for `t <= n`, otherwise
/// `A_{t - n}`.
pub fn b_t_family(order: usize, n: usize, t: usize) -> Result<FamilySpec> {
    check_exponent_range(order, n)?;
    require((1..=wielandt_bound(n)).contains(&t), || {
        format!("B_t needs 1 <= t <= (n-1)^2+1 = {}, got t = {t}", wielandt_bound(n))
    })?;
    let kind = if t <= n {
        FamilyKind::Monomial(small_exponent_matrix(n, t)?)
    } else {
        FamilyKind::Ak(t - n)
    };
    Ok(FamilySpec { kind, order, dim: n })
}

/// A primitive tensor of order `m` and dimension `n` with degree exactly `t`.
/// The degree is re-verified before returning.
pub fn b_t(order: usize, n: usize, t: usize) -> Result<PatternTensor> {
    let spec = b_t_family(order, n, t)?;
    let tensor = spec.build()?;
    match tensor.analyze().gamma {
        Some(g) if g == t => Ok(tensor),
        got => Err(Error::Verification(format!("{spec} has degree {got:?}, expected {t}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub family: FamilySpec,
    pub tensor: PatternTensor,
    /// Degree measured by `analyze`, `None` if not primitive.
    pub gamma: Option<usize>,
}

/// The degrees realized by `B_1, ..., B_w` at a given `(m, n)`.
#[derive(Clone, Debug)]
pub struct ExponentSetResult {
    pub order: usize,
    pub dim: usize,
    /// Keyed by target degree `t`.
    pub witnesses: BTreeMap<usize, Witness>,
}

impl ExponentSetResult {
    pub fn expected(&self) -> RangeInclusive<usize> {
        1..=wielandt_bound(self.dim)
    }

    /// Target degrees whose witness measured exactly that degree.
    pub fn achieved(&self) -> BTreeSet<usize> {
        self.witnesses
            .iter()
            .filter(|(t, w)| w.gamma == Some(**t))
            .map(|(t, _)| *t)
            .collect()
    }

    /// Target degrees whose witness failed verification.
    pub fn failures(&self) -> Vec<usize> {
        self.expected().filter(|t| !self.achieved().contains(t)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.achieved().into_iter().eq(self.expected())
    }
}

/// Builds and analyzes `B_t` for every `t` in `[1, (n-1)^2 + 1]`.
pub fn exponent_set(order: usize, n: usize) -> Result<ExponentSetResult> {
    check_exponent_range(order, n)?;
    let mut witnesses = BTreeMap::new();
    for t in 1..=wielandt_bound(n) {
        let family = b_t_family(order, n, t)?;
        let tensor = family.build()?;
        let gamma = tensor.analyze().gamma;
        witnesses.insert(t, Witness { family, tensor, gamma });
    }
    Ok(ExponentSetResult { order, dim: n, witnesses })
}

/// Largest `n` accepted by [`brute_force_matrix_exponent_set`].
pub const BRUTE_FORCE_MAX_DIM: usize = 4;

/// Exponents of all primitive `n x n` 0/1 matrices, by enumerating all
/// `2^(n^2)` patterns.
pub fn brute_force_matrix_exponent_set(n: usize) -> Result<BTreeSet<usize>> {
    Ok(brute_force_matrix_exponent_histogram(n)?.into_keys().collect())
}

/// Like [`brute_force_matrix_exponent_set`] but counts the matrices per exponent.
pub fn brute_force_matrix_exponent_histogram(n: usize) -> Result<BTreeMap<usize, u64>> {
    require((1..=BRUTE_FORCE_MAX_DIM).contains(&n), || {
        format!("brute force needs 1 <= n <= {BRUTE_FORCE_MAX_DIM}, got n = {n}")
    })?;
    let mut counts = BTreeMap::new();
    for bits in 0u128..(1u128 << (n * n)) {
        let m = PatternMatrix::from_row_major_bits(n, bits)?;
        if let Some(g) = matrix_gamma(&m) {
            *counts.entry(g).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, xs: &[usize]) -> IndexSet {
        IndexSet::from_indices(dim, xs.iter().copied()).unwrap()
    }

    #[test]
    fn monomial_lift_examples() {
        let lifted = monomial_lift(&wielandt_matrix(4).unwrap(), 6).unwrap();
        assert_eq!(lifted, a0(6, 4).unwrap());
        assert_eq!(lifted.majorization_pattern(), wielandt_matrix(4).unwrap());

        let id = monomial_lift(&PatternMatrix::identity(3).unwrap(), 3).unwrap();
        for u in 1..=3 {
            assert_eq!(id.row(u).iter().copied().collect::<Vec<_>>(), vec![set(3, &[u])]);
        }
        assert!(!id.analyze().primitive);

        let ones = monomial_lift(&PatternMatrix::all_ones(3).unwrap(), 3).unwrap();
        assert_eq!(ones.analyze().gamma, Some(1));
        assert!(monomial_lift(&PatternMatrix::identity(3).unwrap(), 1).is_err());
    }

    #[test]
    fn a0_examples() {
        assert_eq!(a0(5, 5).unwrap().analyze().gamma, Some(17));
        assert_eq!(a0(9, 5).unwrap().analyze().gamma, Some(17));
        assert_eq!(a0(3, 3).unwrap().analyze().gamma, Some(5));
        assert!(a0(3, 2).is_err());
        assert!(a0(1, 4).is_err());
    }

    #[test]
    fn a_k_examples() {
        let t = a_k(5, 5, 1).unwrap();
        assert!(t.row(3).contains(&set(5, &[1, 5])));
        // Row 2 already holds {1}, which dominates {1, 5}.
        assert!(!t.row(2).contains(&set(5, &[1, 5])));
        assert_eq!(a_k(5, 5, 12).unwrap().analyze().gamma, Some(17));

        let report = a_k(5, 5, 3).unwrap().analyze();
        // k + (n - j) for j < n, and n + k for column n.
        assert_eq!(
            report.gamma_by_column,
            vec![Some(7), Some(6), Some(5), Some(4), Some(8)]
        );
    }

    #[test]
    fn a_k_ranges() {
        assert!(a_k(4, 5, 1).is_err());
        assert!(a_k(5, 5, 0).is_err());
        assert!(a_k(5, 5, 13).is_err());
        assert!(a_k(3, 2, 1).is_err());
    }

    #[test]
    fn small_exponent_examples() {
        assert_eq!(matrix_gamma(&small_exponent_matrix(6, 1).unwrap()), Some(1));
        assert_eq!(matrix_gamma(&small_exponent_matrix(4, 4).unwrap()), Some(4));
        assert_eq!(matrix_gamma(&small_exponent_matrix(5, 3).unwrap()), Some(3));
        assert!(small_exponent_matrix(4, 5).is_err());
        assert!(small_exponent_matrix(4, 0).is_err());
        assert!(small_exponent_matrix(2, 1).is_err());
    }

    #[test]
    fn b_t_examples() {
        assert_eq!(b_t(5, 5, 17).unwrap(), a_k(5, 5, 12).unwrap());
        assert_eq!(b_t(5, 5, 2).unwrap().analyze().gamma, Some(2));
        assert_eq!(b_t(4, 3, 5).unwrap(), a_k(4, 3, 2).unwrap());
        assert!(b_t(4, 3, 6).is_err());
        assert!(b_t(3, 4, 2).is_err());
    }

    #[test]
    fn exponent_set_small() {
        let r = exponent_set(3, 3).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.achieved(), (1..=5).collect());
        assert!(r.failures().is_empty());
        assert!(exponent_set(3, 4).is_err());
    }

    #[test]
    fn brute_force_n2() {
        let set = brute_force_matrix_exponent_set(2).unwrap();
        assert!(set.iter().all(|g| (1..=2).contains(g)));
        assert!(brute_force_matrix_exponent_set(5).is_err());
    }
}
