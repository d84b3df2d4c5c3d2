//! Full dense tensors for tiny instances: the general tensor product, the
//! majorization recursion, and vector iterates. These are the brute-force
//! references that the pattern iteration is checked against.

use std::fmt::Debug;

use crate::digraph::PatternMatrix;
use crate::error::{Error, Result};
use crate::index_set::{check_dim, IndexSet};
use crate::pattern::PatternTensor;

/// Default limit on `n^order` cells.
pub const DEFAULT_CELL_CAP: usize = 1 << 20;

/// Entry type for dense tensors. Arithmetic is checked: `None` means the
/// result is not representable (overflow, or for floats also underflow of a
/// positive product to zero).
pub trait Semiring: Copy + PartialEq + Debug {
    const ZERO: Self;
    const ONE: Self;
    fn checked_add(self, other: Self) -> Option<Self>;
    fn checked_mul(self, other: Self) -> Option<Self>;
    fn is_positive(self) -> bool;
    /// Nonnegative and not NaN.
    fn is_admissible(self) -> bool {
        true
    }
    fn to_f64(self) -> f64;
}

impl Semiring for bool {
    const ZERO: Self = false;
    const ONE: Self = true;
    fn checked_add(self, other: Self) -> Option<Self> {
        Some(self | other)
    }
    fn checked_mul(self, other: Self) -> Option<Self> {
        Some(self & other)
    }
    fn is_positive(self) -> bool {
        self
    }
    fn to_f64(self) -> f64 {
        f64::from(u8::from(self))
    }
}

impl Semiring for u64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn checked_add(self, other: Self) -> Option<Self> {
        u64::checked_add(self, other)
    }
    fn checked_mul(self, other: Self) -> Option<Self> {
        u64::checked_mul(self, other)
    }
    fn is_positive(self) -> bool {
        self > 0
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Semiring for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    fn checked_add(self, other: Self) -> Option<Self> {
        let s = self + other;
        s.is_finite().then_some(s)
    }
    fn checked_mul(self, other: Self) -> Option<Self> {
        let p = self * other;
        let underflow = p == 0.0 && self != 0.0 && other != 0.0;
        (p.is_finite() && !underflow).then_some(p)
    }
    fn is_positive(self) -> bool {
        self > 0.0
    }
    fn is_admissible(self) -> bool {
        self >= 0.0
    }
    fn to_f64(self) -> f64 {
        self
    }
}

/// A dense order-`m`, dimension-`n` tensor stored row-major in the 1-based
/// index tuple `(i1, ..., im)`. Order 1 holds vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<T = f64> {
    order: usize,
    dim: usize,
    values: Vec<T>,
}

fn cell_count(order: usize, dim: usize, cap: usize) -> Result<usize> {
    let cells = (dim as u128).checked_pow(order as u32).unwrap_or(u128::MAX);
    if cells > cap as u128 {
        return Err(Error::CapExceeded { cells, cap });
    }
    Ok(cells as usize)
}

impl<T: Semiring> DenseTensor<T> {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::zeros_with_cap(order, dim, DEFAULT_CELL_CAP)
    }

    pub fn zeros_with_cap(order: usize, dim: usize, cap: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::OrderTooSmall { min: 1, got: order });
        }
        check_dim(dim)?;
        let cells = cell_count(order, dim, cap)?;
        Ok(Self { order, dim, values: vec![T::ZERO; cells] })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    fn offset(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.order {
            return Err(Error::Arity { expected: self.order, got: index.len() });
        }
        let mut off = 0;
        for &i in index {
            if i == 0 || i > self.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
            }
            off = off * self.dim + (i - 1);
        }
        Ok(off)
    }

    pub fn get(&self, index: &[usize]) -> Result<T> {
        Ok(self.values[self.offset(index)?])
    }

    /// Sets one entry; rejects negatives and NaN.
    pub fn set(&mut self, index: &[usize], value: T) -> Result<()> {
        if !value.is_admissible() {
            return Err(Error::NegativeValue(value.to_f64()));
        }
        let off = self.offset(index)?;
        self.values[off] = value;
        Ok(())
    }

    /// 1-based multi-index of a flat offset.
    fn unravel(&self, mut offset: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = offset % self.dim + 1;
            offset /= self.dim;
        }
    }

    /// Iterates `(index, value)` over positive cells.
    pub fn positive_entries(&self) -> impl Iterator<Item = (Vec<usize>, T)> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| v.is_positive()).map(|(off, v)| {
            let mut idx = vec![0; self.order];
            self.unravel(off, &mut idx);
            (idx, *v)
        })
    }

    /// Positivity pattern as a boolean tensor.
    pub fn support(&self) -> DenseTensor<bool> {
        DenseTensor {
            order: self.order,
            dim: self.dim,
            values: self.values.iter().map(|v| v.is_positive()).collect(),
        }
    }

    /// For a vector: the set of positive coordinates.
    pub fn support_set(&self) -> Result<IndexSet> {
        if self.order != 1 {
            return Err(Error::Precondition(format!(
                "support set needs an order-1 tensor, got order {}",
                self.order
            )));
        }
        let positive = self.values.iter().enumerate().filter(|(_, v)| v.is_positive());
        IndexSet::from_indices(self.dim, positive.map(|(i, _)| i + 1))
    }

    /// `(M(A))_{ij} = a[i, j, ..., j]`, as a zero pattern.
    pub fn majorization_pattern(&self) -> Result<PatternMatrix> {
        if self.order < 2 {
            return Err(Error::OrderTooSmall { min: 2, got: self.order });
        }
        let n = self.dim;
        let mut m = PatternMatrix::zeros(n)?;
        let mut idx = vec![0; self.order];
        for i in 1..=n {
            for j in 1..=n {
                idx[0] = i;
                idx[1..].fill(j);
                if self.get(&idx)?.is_positive() {
                    m.set(i, j)?;
                }
            }
        }
        Ok(m)
    }

    /// The general tensor product `A B`, of order `(m - 1)(k - 1) + 1`:
    /// `d[i, α1, ..., α_{m-1}] = Σ a[i, i2, ..., im] b[i2, α1] ... b[im, α_{m-1}]`
    /// with each `α_t` ranging over `[n]^(k-1)`.
    pub fn shao_product(&self, other: &Self) -> Result<Self> {
        self.shao_product_with_cap(other, DEFAULT_CELL_CAP)
    }

    pub fn shao_product_with_cap(&self, other: &Self, cap: usize) -> Result<Self> {
        if self.order < 2 {
            return Err(Error::OrderTooSmall { min: 2, got: self.order });
        }
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let m = self.order;
        let k = other.order;
        let order = (m - 1) * (k - 1) + 1;
        let mut out = Self::zeros_with_cap(order, n, cap)?;
        // Each block α_t spans k - 1 positions; a row of B is the n^(k-1)
        // contiguous values b[i_t, ·].
        let block = n.pow((k - 1) as u32);
        let mut a_idx = vec![0; m];
        for a_off in 0..self.values.len() {
            let a = self.values[a_off];
            if !a.is_positive() {
                continue;
            }
            self.unravel(a_off, &mut a_idx);
            let i = a_idx[0] - 1;
            // Walk every choice of (α_1, ..., α_{m-1}) as a mixed-radix counter.
            let mut alphas = vec![0usize; m - 1];
            'choices: loop {
                let mut term = a;
                let mut out_off = i;
                for (t, &alpha) in alphas.iter().enumerate() {
                    let b = other.values[(a_idx[t + 1] - 1) * block + alpha];
                    term = term.checked_mul(b).ok_or(Error::Overflow("tensor product"))?;
                    out_off = out_off * block + alpha;
                }
                let cell = &mut out.values[out_off];
                *cell = cell.checked_add(term).ok_or(Error::Overflow("tensor product"))?;

                for digit in alphas.iter_mut().rev() {
                    *digit += 1;
                    if *digit < block {
                        continue 'choices;
                    }
                    *digit = 0;
                }
                break;
            }
        }
        Ok(out)
    }

    /// `A^r` as a product of `r` copies of `A`, grouped as `A (A (... A))`.
    pub fn power(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Precondition("tensor power needs r >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..r {
            acc = self.shao_product(&acc)?;
        }
        Ok(acc)
    }

    /// `A x` for an order-1 `x`.
    pub fn apply(&self, x: &Self) -> Result<Self> {
        if x.order != 1 {
            return Err(Error::Precondition(format!("expected a vector, got order {}", x.order)));
        }
        self.shao_product(x)
    }

    pub fn basis_vector(dim: usize, j: usize) -> Result<Self> {
        let mut e = Self::zeros(1, dim)?;
        e.set(&[j], T::ONE)?;
        Ok(e)
    }

    /// `x^(1), ..., x^(steps)` with `x^(0) = e_j` and `x^(t+1) = A x^(t)`.
    /// Arithmetic is checked; use a `bool` tensor for pure positivity.
    pub fn apply_to_basis(&self, j: usize, steps: usize) -> Result<Vec<Self>> {
        let mut x = Self::basis_vector(self.dim, j)?;
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            x = self.apply(&x)?;
            out.push(x.clone());
        }
        Ok(out)
    }

    /// Positivity patterns of `M(A^1), ..., M(A^steps)`, by the recursion
    /// `M(A^{k+1})_{uj} = Σ a[u, j2, ..., jm] M(A^k)_{j2 j} ... M(A^k)_{jm j}`
    /// in the boolean semiring, never forming `A^k`.
    pub fn majorization_recursion(&self, steps: usize) -> Result<Vec<PatternMatrix>> {
        let mut current = self.majorization_pattern()?;
        let entries: Vec<Vec<usize>> = self.positive_entries().map(|(idx, _)| idx).collect();
        let n = self.dim;
        let mut out = Vec::with_capacity(steps);
        for step in 0..steps {
            if step > 0 {
                let columns: Vec<IndexSet> = (1..=n).map(|j| current.column(j)).collect();
                let mut next = PatternMatrix::zeros(n)?;
                for idx in &entries {
                    for (j, col) in columns.iter().enumerate() {
                        if idx[1..].iter().all(|&t| col.contains(t)) {
                            next.set(idx[0], j + 1)?;
                        }
                    }
                }
                current = next;
            }
            out.push(current.clone());
        }
        Ok(out)
    }
}

impl DenseTensor<f64> {
    /// Builds a real tensor from row-major values; rejects negatives and NaN.
    pub fn from_values(order: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        if values.len() != t.values.len() {
            return Err(Error::Arity { expected: t.values.len(), got: values.len() });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_admissible()) {
            return Err(Error::NegativeValue(bad));
        }
        t.values = values;
        Ok(t)
    }

    /// `T_A(x) = (A x)^[1/(m-1)]`, componentwise.
    pub fn t_map(&self, x: &Self) -> Result<Self> {
        if self.order < 2 {
            return Err(Error::OrderTooSmall { min: 2, got: self.order });
        }
        if let Some(&bad) = x.values.iter().find(|v| !v.is_admissible()) {
            return Err(Error::NegativeValue(bad));
        }
        if x.values.iter().all(|v| *v == 0.0) {
            return Err(Error::Precondition("T_A needs a nonzero vector".into()));
        }
        let mut y = self.apply(x)?;
        let root = 1.0 / (self.order - 1) as f64;
        for v in &mut y.values {
            *v = v.powf(root);
        }
        Ok(y)
    }
}

/// Canonical `(m - 1)`-tuple with underlying set `s`: its members in
/// increasing order, padded by repeating the largest.
pub fn canonical_tuple(s: &IndexSet, len: usize) -> Vec<usize> {
    let mut tuple = s.to_vec();
    let last = *tuple.last().expect("support sets are nonempty");
    tuple.resize(len, last);
    tuple
}

/// Dense 0/1 realization of a pattern: one canonical tuple per support set.
pub fn densify(t: &PatternTensor) -> Result<DenseTensor<f64>> {
    densify_with_cap(t, DEFAULT_CELL_CAP)
}

pub fn densify_with_cap(t: &PatternTensor, cap: usize) -> Result<DenseTensor<f64>> {
    let mut d = DenseTensor::zeros_with_cap(t.order(), t.dim(), cap)?;
    let mut idx = vec![0; t.order()];
    for u in 1..=t.dim() {
        for s in t.row(u).iter() {
            idx[0] = u;
            idx[1..].copy_from_slice(&canonical_tuple(s, t.order() - 1));
            d.set(&idx, 1.0)?;
        }
    }
    Ok(d)
}

/// The zero pattern of a dense tensor of order at least 2.
pub fn to_pattern<T: Semiring>(a: &DenseTensor<T>) -> Result<PatternTensor> {
    let mut t = PatternTensor::new(a.order(), a.dim())?;
    for (idx, _) in a.positive_entries() {
        t.insert_entry(idx[0], &idx[1..])?;
    }
    Ok(t)
}
