//! Triple systems given by structure constants over a multiplicative basis.

use std::collections::BTreeMap;

use crate::error::{ExactError, SystemError};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Ordered triple of 1-based basis indices.
pub type Triple = (usize, usize, usize);

/// `{e_i, e_j, e_k} = coeff * e_target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Product<F> {
    pub coeff: F,
    pub target: usize,
}

/// One row of a structure table, as accepted by [`TripleSystem::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<F> {
    pub key: Triple,
    pub coeff: F,
    pub target: usize,
}

impl<F: Scalar> Entry<F> {
    pub fn new(i: usize, j: usize, k: usize, coeff: F, target: usize) -> Self {
        Entry { key: (i, j, k), coeff, target }
    }

    /// Convenience for integer coefficients.
    pub fn int(i: usize, j: usize, k: usize, coeff: i64, target: usize) -> Self {
        Self::new(i, j, k, F::from_i64(coeff), target)
    }
}

/// Which argument of `{·,·,·}` a vector occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    First,
    Second,
    Third,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::First, Slot::Second, Slot::Third];
}

/// A finite-dimensional triple system whose basis is multiplicative: every
/// product of three basis vectors is zero or a nonzero multiple of a single
/// basis vector. Zero products are absent from the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem<F> {
    dim: usize,
    labels: BTreeMap<usize, String>,
    table: BTreeMap<Triple, Product<F>>,
}

impl<F: Scalar> TripleSystem<F> {
    pub fn new(dim: usize, entries: impl IntoIterator<Item = Entry<F>>) -> Result<Self, SystemError> {
        if dim == 0 {
            return Err(SystemError::ZeroDimension);
        }
        let check = |index: usize| {
            if (1..=dim).contains(&index) {
                Ok(())
            } else {
                Err(SystemError::IndexError { index, dim })
            }
        };
        let mut table = BTreeMap::new();
        for Entry { key, coeff, target } in entries {
            let (i, j, k) = key;
            for index in [i, j, k, target] {
                check(index)?;
            }
            if coeff.is_zero() {
                return Err(SystemError::ZeroCoefficient(vec![i, j, k]));
            }
            if table.insert(key, Product { coeff, target }).is_some() {
                return Err(SystemError::DuplicateEntry(vec![i, j, k]));
            }
        }
        Ok(TripleSystem { dim, labels: BTreeMap::new(), table })
    }

    /// The system with identically zero product.
    pub fn zero(dim: usize) -> Result<Self, SystemError> {
        Self::new(dim, std::iter::empty())
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self, SystemError> {
        if let Some(&index) = labels.keys().find(|&&k| k == 0 || k > self.dim) {
            return Err(SystemError::IndexError { index, dim: self.dim });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Triple, &Product<F>)> + '_ {
        self.table.iter()
    }

    pub fn entry_count(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero_product(&self) -> bool {
        self.table.is_empty()
    }

    pub fn product(&self, i: usize, j: usize, k: usize) -> Option<&Product<F>> {
        self.table.get(&(i, j, k))
    }

    /// Trilinear extension of the table: `Σ x_i y_j z_k {e_i, e_j, e_k}`.
    pub fn evaluate_product(&self, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Result<Vector<F>, ExactError> {
        for v in [x, y, z] {
            if v.dim() != self.dim {
                return Err(ExactError::DimensionError { expected: self.dim, found: v.dim() });
            }
        }
        let mut out = Vector::zero(self.dim);
        for (&(i, j, k), p) in &self.table {
            let (a, b, c) = (x.coord(i), y.coord(j), z.coord(k));
            if a.is_zero() || b.is_zero() || c.is_zero() {
                continue;
            }
            out.add_scaled_unit(p.target, a.clone() * b.clone() * c.clone() * p.coeff.clone());
        }
        Ok(out)
    }

    /// All nonzero products with `v` placed in `slot` and basis vectors in the
    /// two remaining slots, keyed by those two basis indices in order.
    pub fn slot_products(&self, v: &Vector<F>, slot: Slot) -> BTreeMap<(usize, usize), Vector<F>> {
        let mut acc: BTreeMap<(usize, usize), Vector<F>> = BTreeMap::new();
        for (&(i, j, k), p) in &self.table {
            let (own, rest) = match slot {
                Slot::First => (i, (j, k)),
                Slot::Second => (j, (i, k)),
                Slot::Third => (k, (i, j)),
            };
            let c = v.coord(own);
            if c.is_zero() {
                continue;
            }
            acc.entry(rest)
                .or_insert_with(|| Vector::zero(self.dim))
                .add_scaled_unit(p.target, c.clone() * p.coeff.clone());
        }
        acc.retain(|_, w| !w.is_zero());
        acc
    }

    /// Block direct sum: the basis of `other` is appended after this one.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.dim;
        let mut table = self.table.clone();
        for (&(i, j, k), p) in &other.table {
            table.insert(
                (i + shift, j + shift, k + shift),
                Product { coeff: p.coeff.clone(), target: p.target + shift },
            );
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|(k, v)| (k + shift, v.clone())));
        TripleSystem { dim: self.dim + other.dim, labels, table }
    }
}
