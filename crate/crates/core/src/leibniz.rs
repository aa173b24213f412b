//! Leibniz algebras and their associated triple systems `{x,y,z} = [[x,y],z]`.

use std::collections::BTreeMap;

use crate::error::SystemError;
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::system::{Entry, TripleSystem};

/// A bilinear bracket given by `[e_i, e_j] = Σ coeff * e_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearTable<F> {
    dim: usize,
    table: BTreeMap<(usize, usize), Vec<(F, usize)>>,
}

impl<F: Scalar> BilinearTable<F> {
    /// Terms for the same `(i, j)` may be given separately; a repeated
    /// `(i, j, target)` is rejected.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (usize, usize, F, usize)>) -> Result<Self, SystemError> {
        if dim == 0 {
            return Err(SystemError::ZeroDimension);
        }
        let mut table: BTreeMap<(usize, usize), Vec<(F, usize)>> = BTreeMap::new();
        for (i, j, coeff, target) in terms {
            for index in [i, j, target] {
                if !(1..=dim).contains(&index) {
                    return Err(SystemError::IndexError { index, dim });
                }
            }
            if coeff.is_zero() {
                return Err(SystemError::ZeroCoefficient(vec![i, j]));
            }
            let row = table.entry((i, j)).or_default();
            if row.iter().any(|(_, t)| *t == target) {
                return Err(SystemError::DuplicateEntry(vec![i, j, target]));
            }
            row.push((coeff, target));
            row.sort_by_key(|(_, t)| *t);
        }
        Ok(BilinearTable { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F, usize)> + '_ {
        self.table.iter().flat_map(|(&(i, j), row)| row.iter().map(move |(c, t)| (i, j, c, *t)))
    }

    pub fn bracket(&self, x: &Vector<F>, y: &Vector<F>) -> Vector<F> {
        let mut out = Vector::zero(self.dim);
        for (&(i, j), row) in &self.table {
            let (a, b) = (x.coord(i), y.coord(j));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a.clone() * b.clone();
            for (c, t) in row {
                out.add_scaled_unit(*t, ab.clone() * c.clone());
            }
        }
        out
    }

    /// First basis triple violating `[[x,y],z] = [[x,z],y] + [x,[y,z]]`.
    pub fn right_leibniz_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let e = |k| Vector::unit(n, k);
        for i in 1..=n {
            for j in 1..=n {
                let xy = self.bracket(&e(i), &e(j));
                for k in 1..=n {
                    let lhs = self.bracket(&xy, &e(k));
                    let xz = self.bracket(&e(i), &e(k));
                    let yz = self.bracket(&e(j), &e(k));
                    let rhs = self.bracket(&xz, &e(j)).add(&self.bracket(&e(i), &yz));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Triple system `{x,y,z} = [[x,y],z]` of a right Leibniz algebra, provided
/// every lifted product of basis vectors is a multiple of one basis vector.
pub fn lift_from_leibniz<F: Scalar>(bracket: &BilinearTable<F>) -> Result<TripleSystem<F>, SystemError> {
    if let Some((i, j, k)) = bracket.right_leibniz_violation() {
        return Err(SystemError::NotLeibniz(i, j, k));
    }
    let n = bracket.dim();
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let xy = bracket.bracket(&Vector::unit(n, i), &Vector::unit(n, j));
            if xy.is_zero() {
                continue;
            }
            for k in 1..=n {
                let v = bracket.bracket(&xy, &Vector::unit(n, k));
                match v.support().as_slice() {
                    [] => {}
                    &[t] => entries.push(Entry::new(i, j, k, v.coord(t).clone(), t)),
                    _ => return Err(SystemError::NotMultiplicative(i, j, k)),
                }
            }
        }
    }
    TripleSystem::new(n, entries)
}
