//! Coordinate vectors and canonical row spaces.
//!
//! Basis indices are 1-based throughout the public API (`e1 .. en`);
//! [`Vector::coords`] exposes the underlying 0-based storage.

use std::fmt;

use num_traits::Zero;

use crate::error::ExactError;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<F> {
    coords: Vec<F>,
}

impl<F: Scalar> Vector<F> {
    pub fn zero(dim: usize) -> Self {
        Vector { coords: vec![F::zero(); dim] }
    }

    /// The basis vector `e_k` (1-based `k`).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[k - 1] = F::one();
        v
    }

    pub fn from_coords(coords: Vec<F>) -> Self {
        Vector { coords }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Vector { coords: values.iter().map(|&x| F::from_i64(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Coordinate along `e_k` (1-based).
    pub fn coord(&self, k: usize) -> &F {
        &self.coords[k - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// 1-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i + 1).collect()
    }

    /// `self += scale * e_k`.
    pub fn add_scaled_unit(&mut self, k: usize, scale: F) {
        let slot = &mut self.coords[k - 1];
        *slot = slot.clone() + scale;
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Vector { coords: self.coords.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    fn sub_scaled(&mut self, other: &Self, s: &F) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = a.clone() - b.clone() * s.clone();
            }
        }
    }

    fn leading(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    fn check_dim(&self, expected: usize) -> Result<(), ExactError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(ExactError::DimensionError { expected, found: self.dim() })
        }
    }
}

impl<F: fmt::Display> fmt::Display for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<F: fmt::Debug> fmt::Debug for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Vector").field(&self.coords).finish()
    }
}

/// A subspace held as its reduced row-echelon basis.
///
/// Rows are nonzero with strictly increasing pivot columns, unit pivots and
/// zeros above and below every pivot, so two spaces are equal exactly when
/// their row lists are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RowSpace<F> {
    dim: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> RowSpace<F> {
    pub fn zero(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::spanned_by_units(dim, 1..=dim)
    }

    /// Span of `e_k` for the given 1-based indices.
    pub fn spanned_by_units(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut space = Self::zero(dim);
        for k in indices {
            space.insert(&Vector::unit(dim, k)).expect("unit vector has the ambient dimension");
        }
        space
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Vector<F>>) -> Result<Self, ExactError> {
        let mut space = Self::zero(dim);
        for v in vectors {
            space.insert(v)?;
        }
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &Vector<F>) -> Vector<F> {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r.coords[p].is_zero() {
                let s = r.coords[p].clone();
                r.sub_scaled(row, &s);
            }
        }
        r
    }

    /// Adds `v` to the spanning set in place; returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector<F>) -> Result<bool, ExactError> {
        v.check_dim(self.dim)?;
        let mut r = self.reduce(v);
        let Some(p) = r.leading() else {
            return Ok(false);
        };
        let inv = F::one() / r.coords[p].clone();
        r = r.scale(&inv);
        for row in &mut self.rows {
            if !row.coords[p].is_zero() {
                let s = row.coords[p].clone();
                row.sub_scaled(&r, &s);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }

    /// Canonical row space of `span(self ∪ {v})`.
    pub fn span_insert(&self, v: &Vector<F>) -> Result<Self, ExactError> {
        let mut next = self.clone();
        next.insert(v)?;
        Ok(next)
    }

    pub fn contains(&self, v: &Vector<F>) -> Result<bool, ExactError> {
        v.check_dim(self.dim)?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn contains_space(&self, other: &Self) -> Result<bool, ExactError> {
        for row in &other.rows {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// 1-based pivot columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p + 1).collect()
    }

    /// When every row is a unit vector, the (1-based) indices they select;
    /// otherwise the first row that is not.
    pub fn unit_support(&self) -> Result<Vec<usize>, &Vector<F>> {
        for row in &self.rows {
            if row.support().len() != 1 {
                return Err(row);
            }
        }
        Ok(self.pivot_columns())
    }
}
