//! Small named systems used as golden references.

use crate::leibniz::{lift_from_leibniz, BilinearTable};
use crate::scalar::Scalar;
use crate::system::{Entry, TripleSystem};

/// Jacobson's 2-dimensional Lie triple system `{x,y,x} = y`, `{y,x,x} = -y`.
pub fn jts2a<F: Scalar>() -> TripleSystem<F> {
    TripleSystem::new(2, [Entry::int(1, 2, 1, 1, 2), Entry::int(2, 1, 1, -1, 2)]).expect("valid table")
}

/// Jacobson's 2-dimensional Lie triple system
/// `{x,y,x} = 2x`, `{y,x,x} = -2x`, `{x,y,y} = -2y`, `{y,x,y} = 2y`.
pub fn jts2b<F: Scalar>() -> TripleSystem<F> {
    TripleSystem::new(
        2,
        [Entry::int(1, 2, 1, 2, 1), Entry::int(2, 1, 1, -2, 1), Entry::int(1, 2, 2, -2, 2), Entry::int(2, 1, 2, 2, 2)],
    )
    .expect("valid table")
}

/// Null-filiform Leibniz algebra `NF_n`: `[e_i, e_1] = e_{i+1}`.
pub fn nf_bracket<F: Scalar>(n: usize) -> BilinearTable<F> {
    BilinearTable::new(n, (1..n).map(|i| (i, 1, F::one(), i + 1))).expect("valid bracket")
}

/// Triple system of `NF_n`; its only products are `{e_i, e1, e1} = e_{i+2}`.
pub fn nf_lift<F: Scalar>(n: usize) -> TripleSystem<F> {
    lift_from_leibniz(&nf_bracket(n)).expect("NF_n is a Leibniz algebra with multiplicative lift")
}

/// `{e1, e1, e1} = e3` in dimension 3.
pub fn nf3t<F: Scalar>() -> TripleSystem<F> {
    TripleSystem::new(3, [Entry::int(1, 1, 1, 1, 3)]).expect("valid table")
}
