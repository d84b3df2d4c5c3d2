//! 0/1 matrices, their digraphs, exact-length reachability, and the
//! walk-length arithmetic behind the Wielandt matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::index_set::{check_dim, IndexSet};
use crate::pattern::PatternTensor;

/// An `n x n` zero pattern. Row `i` holds the columns `j` with a positive
/// `(i, j)` entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    dim: usize,
    rows: Vec<IndexSet>,
}

impl PatternMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, rows: vec![IndexSet::empty(dim)?; dim] })
    }

    pub fn all_ones(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, rows: vec![IndexSet::full(dim)?; dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_entries(dim, (1..=dim).map(|i| (i, i)))
    }

    /// Permutation matrix of the cycle `1 -> 2 -> ... -> n -> 1`, i.e. entries
    /// `(i, i + 1)` and `(n, 1)`.
    pub fn cycle(dim: usize) -> Result<Self> {
        Self::from_entries(dim, (1..=dim).map(|i| (i, i % dim + 1)))
    }

    pub fn from_rows(rows: Vec<IndexSet>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        for row in &rows {
            if row.dim() != dim {
                return Err(Error::DimMismatch { left: dim, right: row.dim() });
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(dim)?;
        for (i, j) in entries {
            m.set(i, j)?;
        }
        Ok(m)
    }

    /// Decodes a row-major bit pattern: bit `(i - 1) * n + (j - 1)` is entry `(i, j)`.
    pub fn from_row_major_bits(dim: usize, bits: u128) -> Result<Self> {
        if dim * dim > 128 {
            return Err(Error::Precondition(format!("{dim}x{dim} does not fit in 128 bits")));
        }
        let mask = (1u128 << dim) - 1;
        let rows = (0..dim)
            .map(|i| IndexSet::from_bits(dim, (bits >> (i * dim)) & mask))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.dim {
            return Err(Error::IndexOutOfRange { index, dim: self.dim });
        }
        Ok(())
    }

    pub fn set(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.rows[i - 1].insert(j)?;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.dim && self.rows[i - 1].contains(j)
    }

    pub fn row(&self, i: usize) -> &IndexSet {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[IndexSet] {
        &self.rows
    }

    /// `{i | (i, j) positive}`.
    pub fn column(&self, j: usize) -> IndexSet {
        let mut col = IndexSet::empty(self.dim).expect("dim checked at construction");
        for (i, row) in self.rows.iter().enumerate() {
            if row.contains(j) {
                col.insert(i + 1).expect("row index in range");
            }
        }
        col
    }

    pub fn count_positive(&self) -> usize {
        self.rows.iter().map(IndexSet::len).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.rows.iter().all(IndexSet::is_full)
    }

    pub fn transpose(&self) -> Self {
        let rows = (1..=self.dim).map(|j| self.column(j)).collect();
        Self { dim: self.dim, rows }
    }

    /// `D(M)`: arc `i -> j` iff `(i, j)` is positive.
    pub fn digraph(&self) -> Digraph {
        Digraph { dim: self.dim, out: self.rows.clone() }
    }

    /// The reversed digraph: arc `j -> i` iff `(i, j)` is positive.
    pub fn reversed_digraph(&self) -> Digraph {
        Digraph { dim: self.dim, out: self.transpose().rows }
    }

    /// The order-2 pattern tensor with the same zero pattern.
    pub fn to_pattern_tensor(&self) -> PatternTensor {
        let mut t = PatternTensor::new(2, self.dim).expect("order 2 and a checked dim");
        for (i, row) in self.rows.iter().enumerate() {
            for j in row {
                t.insert_entry(i + 1, &[j]).expect("indices in range");
            }
        }
        t
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<&str> =
                (1..=self.dim).map(|j| if row.contains(j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// A digraph on `{1, ..., n}` with loops allowed and no multiple arcs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Digraph {
    dim: usize,
    out: Vec<IndexSet>,
}

impl Digraph {
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, out: vec![IndexSet::empty(dim)?; dim] })
    }

    pub fn from_arcs<I>(dim: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Self::empty(dim)?;
        for (from, to) in arcs {
            if from == 0 || from > dim {
                return Err(Error::IndexOutOfRange { index: from, dim });
            }
            d.out[from - 1].insert(to)?;
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn out_neighbors(&self, v: usize) -> &IndexSet {
        &self.out[v - 1]
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        from >= 1 && from <= self.dim && self.out[from - 1].contains(to)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(IndexSet::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |j| (i + 1, j)))
    }

    pub fn reverse(&self) -> Self {
        let mut rev = Self::empty(self.dim).expect("dim checked at construction");
        for (from, to) in self.arcs() {
            rev.out[to - 1].insert(from).expect("vertex in range");
        }
        rev
    }

    /// Vertices reachable from `start` by a walk of exactly `length` arcs.
    pub fn exact_length_frontier(&self, start: usize, length: usize) -> Result<IndexSet> {
        let mut frontier = IndexSet::singleton(self.dim, start)?;
        for _ in 0..length {
            let mut next = IndexSet::empty(self.dim)?;
            for v in &frontier {
                next.union_in_place(&self.out[v - 1]);
            }
            if next.is_empty() {
                return Ok(next);
            }
            frontier = next;
        }
        Ok(frontier)
    }
}

/// Primitive exponent of a 0/1 matrix: the least `k` with `M^k > 0`, or `None`
/// when `M` is not primitive.
pub fn matrix_gamma(m: &PatternMatrix) -> Option<usize> {
    m.to_pattern_tensor().analyze().gamma
}

/// The Wielandt matrix: entries `(1, n-1)`, `(1, n)` and the subdiagonal
/// `(i + 1, i)`. Its exponent is `(n - 1)^2 + 1`.
pub fn wielandt_matrix(n: usize) -> Result<PatternMatrix> {
    if n < 3 {
        return Err(Error::Precondition(format!("Wielandt matrix needs n >= 3, got {n}")));
    }
    let subdiagonal = (1..n).map(|i| (i + 1, i));
    PatternMatrix::from_entries(n, [(1, n - 1), (1, n)].into_iter().chain(subdiagonal))
}

/// Whether `t = a x + b y` has a solution in nonnegative integers.
pub fn frobenius_representable(a: u64, b: u64, t: u64) -> bool {
    assert!(a >= 1 && b >= 1, "generators must be positive");
    (0..=t / a).any(|x| (t - a * x).is_multiple_of(b))
}

/// A walk from `n - 1` to `u` in the reversed Wielandt digraph, written as the
/// path length plus counts of the `(n-1)`-cycle and the `n`-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkDecomposition {
    pub path_len: usize,
    pub short_cycles: usize,
    pub long_cycles: usize,
}

impl WalkDecomposition {
    pub fn length(&self, n: usize) -> usize {
        self.path_len + self.short_cycles * (n - 1) + self.long_cycles * n
    }
}

/// Path lengths from `n - 1` to `u` in the reversed Wielandt digraph.
fn wielandt_path_lengths(n: usize, u: usize) -> Vec<usize> {
    if u == n - 1 {
        vec![0]
    } else if u == n {
        vec![1]
    } else {
        vec![u, u + 1]
    }
}

/// Decomposes a walk of length `total` from `n - 1` to `u` in the reversed
/// Wielandt digraph into a path plus cycles. Path lengths are tried in table
/// order, then the fewest `(n-1)`-cycles.
pub fn walk_decomposition(n: usize, u: usize, total: usize) -> Result<Option<WalkDecomposition>> {
    if n < 3 {
        return Err(Error::Precondition(format!("walk decomposition needs n >= 3, got {n}")));
    }
    if u == 0 || u > n {
        return Err(Error::IndexOutOfRange { index: u, dim: n });
    }
    for path_len in wielandt_path_lengths(n, u) {
        let Some(rest) = total.checked_sub(path_len) else { continue };
        for short_cycles in 0..=rest / (n - 1) {
            let left = rest - short_cycles * (n - 1);
            if left.is_multiple_of(n) {
                return Ok(Some(WalkDecomposition { path_len, short_cycles, long_cycles: left / n }));
            }
        }
    }
    Ok(None)
}
