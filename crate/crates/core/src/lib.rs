//! Primitivity and primitive degrees of nonnegative tensors.
//!
//! A nonnegative tensor is handled through its zero pattern
//! ([`PatternTensor`]). For every column `j` the sets
//! `S_k(j) = {u | M(A^k)_{uj} > 0}` evolve by a single existential step, so
//! primitivity and all degrees `γ_j` and `γ = max_j γ_j` fall out of iterating
//! that step until `[n]` is reached or a state repeats.
//!
//! * [`pattern`] holds the pattern representation and the iteration.
//! * [`dense`] is a brute-force reference: full tensor products, the
//!   majorization recursion and vector iterates on tiny instances.
//! * [`digraph`] covers the matrix side: reversed digraphs, exact-length
//!   walks, matrix exponents and the Wielandt matrix.
//! * [`constructions`] builds the extremal families and the exponent set
//!   `[1, (n-1)^2 + 1]` for `m >= n >= 3`.

pub mod analysis;
pub mod constructions;
pub mod dense;
pub mod digraph;
pub mod error;
pub mod index_set;
pub mod pattern;
pub mod random;

pub use analysis::{ColumnTrace, PrimitivityReport, TraceOutcome};
pub use dense::DenseTensor;
pub use digraph::{Digraph, PatternMatrix};
pub use error::{Error, Result};
pub use index_set::{IndexSet, SupportFamily, MAX_DIM};
pub use pattern::{wielandt_bound, PatternTensor, Violation};
