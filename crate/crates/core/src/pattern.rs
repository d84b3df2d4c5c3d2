//! Zero patterns of nonnegative tensors and the column iteration that decides
//! primitivity.
//!
//! Only positivity matters for primitivity, and a positive entry
//! `a[u, i2, ..., im]` can fire at step `k + 1` exactly when every trailing
//! index lies in `S_k`. So each row is stored as the antichain of
//! inclusion-minimal index *sets* `{i2, ..., im}`; multiplicities and order of
//! the trailing indices are irrelevant.

use std::collections::HashMap;
use std::fmt;

use crate::analysis::{ColumnTrace, PrimitivityReport, TraceOutcome};
use crate::digraph::PatternMatrix;
use crate::error::{Error, Result};
use crate::index_set::{check_dim, IndexSet, SupportFamily};

/// `(n - 1)^2 + 1`, the largest primitive degree at dimension `n`.
pub fn wielandt_bound(n: usize) -> usize {
    let d = n.saturating_sub(1);
    d * d + 1
}

/// The zero pattern of an order-`m`, dimension-`n` nonnegative tensor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PatternTensor {
    order: usize,
    dim: usize,
    rows: Vec<SupportFamily>,
}

impl PatternTensor {
    /// The all-zero pattern.
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall { min: 2, got: order });
        }
        check_dim(dim)?;
        let rows = (0..dim).map(|_| SupportFamily::new(dim)).collect::<Result<_>>()?;
        Ok(Self { order, dim, rows })
    }

    /// Builds a pattern from positive entries given as `(row, [i2, ..., im])`.
    pub fn from_entries<I, R>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, R)>,
        R: AsRef<[usize]>,
    {
        let mut t = Self::new(order, dim)?;
        for (row, indices) in entries {
            t.insert_entry(row, indices.as_ref())?;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, u: usize) -> &SupportFamily {
        &self.rows[u - 1]
    }

    pub fn rows(&self) -> &[SupportFamily] {
        &self.rows
    }

    fn check_row(&self, row: usize) -> Result<()> {
        if row == 0 || row > self.dim {
            return Err(Error::IndexOutOfRange { index: row, dim: self.dim });
        }
        Ok(())
    }

    /// Marks `a[row, indices...]` positive. Returns whether the stored
    /// antichain changed.
    pub fn insert_entry(&mut self, row: usize, indices: &[usize]) -> Result<bool> {
        self.check_row(row)?;
        if indices.len() != self.order - 1 {
            return Err(Error::Arity { expected: self.order - 1, got: indices.len() });
        }
        let set = IndexSet::from_indices(self.dim, indices.iter().copied())?;
        self.rows[row - 1].insert(set)
    }

    /// Adds a support set directly. Its size must be realizable as an
    /// `(m - 1)`-tuple.
    pub fn insert_support(&mut self, row: usize, set: IndexSet) -> Result<bool> {
        self.check_row(row)?;
        if set.dim() != self.dim {
            return Err(Error::DimMismatch { left: self.dim, right: set.dim() });
        }
        if set.is_empty() || set.len() > self.order - 1 {
            return Err(Error::SupportSize { size: set.len(), order: self.order });
        }
        self.rows[row - 1].insert(set)
    }

    /// Number of stored support sets over all rows.
    pub fn support_count(&self) -> usize {
        self.rows.iter().map(SupportFamily::len).sum()
    }

    /// `{u | some support set of row u is contained in s}`.
    pub fn step(&self, s: &IndexSet) -> Result<IndexSet> {
        if s.dim() != self.dim {
            return Err(Error::DimMismatch { left: self.dim, right: s.dim() });
        }
        Ok(self.step_unchecked(s))
    }

    #[inline]
    fn step_unchecked(&self, s: &IndexSet) -> IndexSet {
        let mut bits = 0u128;
        for (u, row) in self.rows.iter().enumerate() {
            if row.has_subset_of(s) {
                bits |= 1u128 << u;
            }
        }
        IndexSet::from_bits(self.dim, bits).expect("rows are within dim")
    }

    fn check_column(&self, j: usize) -> Result<IndexSet> {
        IndexSet::singleton(self.dim, j)
    }

    /// `S_1, ..., S_steps` for column `j` with no early termination.
    pub fn iterate_column(&self, j: usize, steps: usize) -> Result<Vec<IndexSet>> {
        let mut current = self.check_column(j)?;
        let mut states = Vec::with_capacity(steps);
        for _ in 0..steps {
            current = self.step_unchecked(&current);
            states.push(current);
        }
        Ok(states)
    }

    /// Iterates column `j` from `S_0 = {j}` until `[n]` is reached, a state
    /// repeats, or `max_steps` states have been produced. `None` uses the
    /// Wielandt bound, which makes the answer complete.
    pub fn column_trace(&self, j: usize, max_steps: Option<usize>) -> Result<ColumnTrace> {
        let max_steps = max_steps.unwrap_or_else(|| wielandt_bound(self.dim));
        if max_steps == 0 {
            return Err(Error::Precondition("max steps must be at least 1".into()));
        }
        let mut current = self.check_column(j)?;
        let mut states = Vec::new();
        let mut seen: HashMap<u128, usize> = HashMap::new();
        for k in 1..=max_steps {
            current = self.step_unchecked(&current);
            states.push(current);
            if current.is_full() {
                return Ok(ColumnTrace { column: j, states, outcome: TraceOutcome::Reached(k) });
            }
            if let Some(&earlier) = seen.get(&current.bits()) {
                let outcome = TraceOutcome::Cycled { first_repeat_at: k, period: k - earlier };
                return Ok(ColumnTrace { column: j, states, outcome });
            }
            seen.insert(current.bits(), k);
        }
        Ok(ColumnTrace { column: j, states, outcome: TraceOutcome::Exhausted(max_steps) })
    }

    /// The `j`-primitive degree: least `k` with `S_k = [n]`.
    pub fn gamma_j(&self, j: usize) -> Result<Option<usize>> {
        Ok(self.column_trace(j, None)?.gamma())
    }

    pub fn analyze(&self) -> PrimitivityReport {
        self.analyze_with(wielandt_bound(self.dim))
    }

    /// Like [`analyze`](Self::analyze) with an explicit per-column step
    /// budget. Budgets below the Wielandt bound may leave the report
    /// inconclusive.
    pub fn analyze_with(&self, max_steps: usize) -> PrimitivityReport {
        let max_steps = max_steps.max(1);
        let traces = (1..=self.dim)
            .map(|j| self.column_trace(j, Some(max_steps)).expect("column in range"))
            .collect();
        PrimitivityReport::from_traces(traces, wielandt_bound(self.dim), max_steps)
    }

    /// `M(A)`: entry `(u, j)` is positive iff row `u` holds the singleton `{j}`.
    pub fn majorization_pattern(&self) -> PatternMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut r = IndexSet::empty(self.dim).expect("dim checked");
                for s in row.iter().filter(|s| s.len() == 1) {
                    r.union_in_place(s);
                }
                r
            })
            .collect();
        PatternMatrix::from_rows(rows).expect("square by construction")
    }

    /// Out-degree conditions on the reversed digraph of `M(A)` that every
    /// primitive tensor satisfies. A nonempty result proves non-primitivity;
    /// an empty one proves nothing. At `n = 1` the conditions do not apply.
    pub fn necessary_condition_violations(&self) -> Vec<Violation> {
        if self.dim == 1 {
            return Vec::new();
        }
        let reversed = self.majorization_pattern().reversed_digraph();
        let mut violations = Vec::new();
        let mut branching = false;
        for j in 1..=self.dim {
            let out = reversed.out_neighbors(j);
            if out.is_empty() {
                violations.push(Violation::NoOutNeighbor(j));
            } else if out.len() == 1 && out.contains(j) {
                violations.push(Violation::OnlyLoop(j));
            }
            branching |= out.len() >= 2;
        }
        if !branching {
            violations.push(Violation::NoBranchingVertex);
        }
        violations
    }
}

/// A failed necessary condition for primitivity, stated on the reversed
/// digraph of the majorization matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    NoOutNeighbor(usize),
    OnlyLoop(usize),
    NoBranchingVertex,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoOutNeighbor(j) => write!(f, "d⁺({j})=0"),
            Violation::OnlyLoop(j) => write!(f, "N⁺({j})={{{j}}}"),
            Violation::NoBranchingVertex => f.write_str("no vertex with out-degree ≥ 2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{a0, a_k, monomial_lift};
    use crate::digraph::wielandt_matrix;

    fn set(dim: usize, xs: &[usize]) -> IndexSet {
        IndexSet::from_indices(dim, xs.iter().copied()).unwrap()
    }

    #[test]
    fn make_pattern_minimizes() {
        let t = PatternTensor::from_entries(3, 3, [(1, [2, 2]), (1, [2, 3])]).unwrap();
        assert_eq!(t.row(1).iter().copied().collect::<Vec<_>>(), vec![set(3, &[2])]);

        let t = PatternTensor::from_entries(3, 3, [(2, [1, 3])]).unwrap();
        assert_eq!(t.row(2).iter().copied().collect::<Vec<_>>(), vec![set(3, &[1, 3])]);
        assert!(t.row(1).is_empty() && t.row(3).is_empty());
    }

    #[test]
    fn make_pattern_errors() {
        assert!(matches!(PatternTensor::new(1, 3), Err(Error::OrderTooSmall { .. })));
        assert!(matches!(
            PatternTensor::from_entries(3, 3, [(1, vec![2])]),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
        assert!(matches!(
            PatternTensor::from_entries(3, 3, [(1, [2, 4])]),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
        assert!(matches!(
            PatternTensor::from_entries(3, 3, [(0, [1, 1])]),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        let mut t = PatternTensor::new(3, 4).unwrap();
        assert!(matches!(
            t.insert_support(1, set(4, &[1, 2, 3])),
            Err(Error::SupportSize { size: 3, order: 3 })
        ));
    }

    #[test]
    fn a0_rows_are_wielandt_singletons() {
        let t = a0(5, 4).unwrap();
        let m1 = wielandt_matrix(4).unwrap();
        for u in 1..=4 {
            let expected: Vec<_> = m1.row(u).iter().map(|v| set(4, &[v])).collect();
            assert_eq!(t.row(u).iter().copied().collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn step_examples() {
        let t = a0(5, 5).unwrap();
        assert_eq!(t.step(&set(5, &[4])).unwrap(), set(5, &[1, 5]));
        assert_eq!(t.step(&IndexSet::full(5).unwrap()).unwrap(), IndexSet::full(5).unwrap());

        let t = PatternTensor::from_entries(3, 3, [(2, [1, 3])]).unwrap();
        assert!(!t.step(&set(3, &[1])).unwrap().contains(2));
        assert!(t.step(&set(3, &[1, 3])).unwrap().contains(2));
        assert!(t.step(&set(4, &[1])).is_err());
    }

    #[test]
    fn trace_examples() {
        let t = a0(5, 5).unwrap();
        let trace = t.column_trace(4, None).unwrap();
        assert_eq!(trace.outcome, TraceOutcome::Reached(13));
        assert_eq!(trace.state(12), Some(&set(5, &[1, 2, 3, 4])));
        assert_eq!(trace.state(1), Some(&set(5, &[1, 5])));
        assert!(t.column_trace(6, None).is_err());
        assert!(t.column_trace(1, Some(0)).is_err());

        let cyc = monomial_lift(&PatternMatrix::cycle(5).unwrap(), 3).unwrap();
        for j in 1..=5 {
            let trace = cyc.column_trace(j, None).unwrap();
            assert_eq!(trace.outcome, TraceOutcome::Cycled { first_repeat_at: 6, period: 5 });
        }

        let short = t.column_trace(4, Some(5)).unwrap();
        assert_eq!(short.outcome, TraceOutcome::Exhausted(5));
        assert_eq!(short.states.len(), 5);
    }

    #[test]
    fn gamma_j_examples() {
        assert_eq!(a0(5, 5).unwrap().gamma_j(4).unwrap(), Some(13));
        let mut t = PatternTensor::new(3, 4).unwrap();
        for u in 1..=4 {
            t.insert_entry(u, &[2, 2]).unwrap();
        }
        assert_eq!(t.gamma_j(2).unwrap(), Some(1));
        assert_eq!(a_k(5, 5, 2).unwrap().gamma_j(4).unwrap(), Some(3));
        assert!(t.gamma_j(5).is_err());
    }

    #[test]
    fn analyze_examples() {
        let n = 4;
        let mut t = PatternTensor::new(3, n).unwrap();
        for u in 1..=n {
            for v in 1..=n {
                t.insert_entry(u, &[v, v]).unwrap();
            }
        }
        let report = t.analyze();
        assert!(report.primitive);
        assert_eq!(report.gamma, Some(1));

        let report = a0(5, 5).unwrap().analyze();
        assert!(report.primitive);
        assert_eq!(report.gamma, Some(17));
        assert_eq!(report.bound, 17);

        let report = a_k(5, 5, 3).unwrap().analyze();
        assert_eq!(report.gamma, Some(8));
        assert_eq!(report.gamma_by_column[4], Some(8));
    }

    #[test]
    fn inconclusive_budget() {
        let report = a0(5, 5).unwrap().analyze_with(5);
        assert!(!report.primitive);
        assert!(!report.is_conclusive());
        let report = PatternTensor::new(3, 3).unwrap().analyze();
        assert!(!report.primitive && report.is_conclusive());
    }

    #[test]
    fn dims_one_and_two() {
        let t = PatternTensor::from_entries(3, 1, [(1, [1, 1])]).unwrap();
        assert_eq!(t.analyze().gamma, Some(1));
        assert!(t.necessary_condition_violations().is_empty());
        assert!(!PatternTensor::new(2, 1).unwrap().analyze().primitive);

        let t = PatternTensor::from_entries(2, 2, [(1, [1]), (1, [2]), (2, [1])]).unwrap();
        assert_eq!(t.analyze().gamma, Some(2));
    }

    #[test]
    fn necessary_conditions() {
        for n in 3..=7 {
            assert!(a0(n, n).unwrap().necessary_condition_violations().is_empty());
        }
        let id = monomial_lift(&PatternMatrix::identity(4).unwrap(), 3).unwrap();
        let v = id.necessary_condition_violations();
        assert_eq!(v.iter().filter(|v| matches!(v, Violation::OnlyLoop(_))).count(), 4);
        assert_eq!(Violation::OnlyLoop(2).to_string(), "N⁺(2)={2}");

        let cyc = monomial_lift(&PatternMatrix::cycle(4).unwrap(), 3).unwrap();
        assert_eq!(cyc.necessary_condition_violations(), vec![Violation::NoBranchingVertex]);

        let empty = PatternTensor::new(3, 2).unwrap();
        assert!(empty.necessary_condition_violations().contains(&Violation::NoOutNeighbor(1)));
    }

    #[test]
    fn majorization_pattern_examples() {
        assert_eq!(a0(5, 6).unwrap().majorization_pattern(), wielandt_matrix(6).unwrap());
        for k in 1..=12 {
            assert_eq!(a_k(5, 5, k).unwrap().majorization_pattern(), wielandt_matrix(5).unwrap());
        }
        let t = PatternTensor::from_entries(3, 2, [(1, [1, 2]), (2, [2, 1])]).unwrap();
        assert_eq!(t.majorization_pattern(), PatternMatrix::zeros(2).unwrap());
    }
}
