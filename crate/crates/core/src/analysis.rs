use std::fmt;

use crate::index_set::IndexSet;

/// Why a column iteration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceOutcome {
    /// `S_k = [n]` for the first time at step `k`.
    Reached(usize),
    /// The state at step `first_repeat_at` equals the state `period` steps
    /// earlier, so `[n]` is never reached.
    Cycled { first_repeat_at: usize, period: usize },
    /// Neither of the above within the step budget.
    Exhausted(usize),
}

impl TraceOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            TraceOutcome::Reached(_) => "reached",
            TraceOutcome::Cycled { .. } => "cycled",
            TraceOutcome::Exhausted(_) => "exhausted",
        }
    }
}

impl fmt::Display for TraceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOutcome::Reached(k) => write!(f, "reached [n] at k={k}"),
            TraceOutcome::Cycled { first_repeat_at, period } => {
                write!(f, "cycled at k={first_repeat_at} with period {period}")
            }
            TraceOutcome::Exhausted(bound) => write!(f, "exhausted after {bound} steps"),
        }
    }
}

/// The states `S_1, S_2, ...` of one column together with how the iteration ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTrace {
    pub column: usize,
    /// `states[k - 1]` is `S_k`.
    pub states: Vec<IndexSet>,
    pub outcome: TraceOutcome,
}

impl ColumnTrace {
    /// `S_k` for `k >= 1`, if the trace got that far.
    pub fn state(&self, k: usize) -> Option<&IndexSet> {
        k.checked_sub(1).and_then(|i| self.states.get(i))
    }

    pub fn gamma(&self) -> Option<usize> {
        match self.outcome {
            TraceOutcome::Reached(k) => Some(k),
            _ => None,
        }
    }
}

/// Result of deciding primitivity of a pattern tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub primitive: bool,
    pub gamma: Option<usize>,
    pub gamma_by_column: Vec<Option<usize>>,
    pub traces: Vec<ColumnTrace>,
    /// `(n - 1)^2 + 1`.
    pub bound: usize,
    pub max_steps: usize,
}

impl PrimitivityReport {
    pub(crate) fn from_traces(traces: Vec<ColumnTrace>, bound: usize, max_steps: usize) -> Self {
        let gamma_by_column: Vec<Option<usize>> = traces.iter().map(ColumnTrace::gamma).collect();
        let primitive = gamma_by_column.iter().all(Option::is_some);
        let gamma = if primitive { gamma_by_column.iter().flatten().max().copied() } else { None };
        Self { primitive, gamma, gamma_by_column, traces, bound, max_steps }
    }

    /// False only when a step budget below the Wielandt bound left the
    /// question open: no column cycled, and some column ran out of steps.
    pub fn is_conclusive(&self) -> bool {
        self.primitive
            || self.max_steps >= self.bound
            || self.traces.iter().any(|t| matches!(t.outcome, TraceOutcome::Cycled { .. }))
    }
}
