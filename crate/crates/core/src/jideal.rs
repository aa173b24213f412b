//! The ideal generated by `{x,y,z} - {x,z,y} + {y,z,x}`, ideal closures and
//! the basis split into that ideal and its complement.

use std::collections::BTreeSet;

use crate::error::SplitError;
use crate::linalg::{RowSpace, Vector};
use crate::scalar::Scalar;
use crate::system::{Slot, Triple, TripleSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealWitness<F> {
    pub subspace: RowSpace<F>,
    /// Basis triples whose generator was nonzero (empty for a plain closure).
    pub generators: Vec<Triple>,
    pub closure_rounds: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitMode {
    /// The ideal is computed from the Lie-deviation generators.
    Leibniz,
    /// The ideal is declared by the caller and only has to be an
    /// annihilating ideal; no identities are assumed.
    Generic,
}

/// A system together with the index sets `I` (spanning the annihilating
/// ideal) and `J` (spanning its complement).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSystem<F> {
    sys: TripleSystem<F>,
    iset: Vec<usize>,
    jset: Vec<usize>,
    in_i: Vec<bool>,
    mode: SplitMode,
}

impl<F: Scalar> SplitSystem<F> {
    /// Computes the ideal and splits on it.
    pub fn leibniz(sys: &TripleSystem<F>) -> Result<Self, SplitError> {
        let ideal = compute_jideal(sys);
        split_basis(sys, &ideal.subspace, SplitMode::Leibniz)
    }

    /// Splits on a caller-declared set of basis indices.
    pub fn generic(sys: &TripleSystem<F>, iset: &[usize]) -> Result<Self, SplitError> {
        for &k in iset {
            if !(1..=sys.dim()).contains(&k) {
                return Err(SplitError::NotAdmissible(format!("index {k} out of range 1..={}", sys.dim())));
            }
        }
        let space = RowSpace::spanned_by_units(sys.dim(), iset.iter().copied());
        split_basis(sys, &space, SplitMode::Generic)
    }

    pub fn sys(&self) -> &TripleSystem<F> {
        &self.sys
    }

    pub fn dim(&self) -> usize {
        self.sys.dim()
    }

    pub fn iset(&self) -> &[usize] {
        &self.iset
    }

    pub fn jset(&self) -> &[usize] {
        &self.jset
    }

    pub fn mode(&self) -> SplitMode {
        self.mode
    }

    pub fn in_i(&self, k: usize) -> bool {
        self.in_i[k - 1]
    }

    pub fn in_j(&self, k: usize) -> bool {
        !self.in_i[k - 1]
    }

    pub fn ideal_space(&self) -> RowSpace<F> {
        RowSpace::spanned_by_units(self.dim(), self.iset.iter().copied())
    }
}

/// `g(i,j,k) = {e_i,e_j,e_k} - {e_i,e_k,e_j} + {e_j,e_k,e_i}` for every basis
/// triple, nonzero ones only, in lexicographic order of `(i,j,k)`.
pub fn generator_vectors<F: Scalar>(sys: &TripleSystem<F>) -> Vec<(Triple, Vector<F>)> {
    let n = sys.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let mut g = Vector::zero(n);
                if let Some(p) = sys.product(i, j, k) {
                    g.add_scaled_unit(p.target, p.coeff.clone());
                }
                if let Some(p) = sys.product(i, k, j) {
                    g.add_scaled_unit(p.target, -p.coeff.clone());
                }
                if let Some(p) = sys.product(j, k, i) {
                    g.add_scaled_unit(p.target, p.coeff.clone());
                }
                if !g.is_zero() {
                    out.push(((i, j, k), g));
                }
            }
        }
    }
    out
}

/// Least ideal containing `seed`.
///
/// Each round multiplies every current spanning vector by all basis pairs in
/// all three slot placements; the loop ends after the first round that leaves
/// the rank unchanged.
pub fn ideal_closure<F: Scalar>(sys: &TripleSystem<F>, seed: &RowSpace<F>) -> IdealWitness<F> {
    assert_eq!(seed.dim(), sys.dim(), "seed lives in a different ambient space");
    let mut space = seed.clone();
    let mut rounds = 0;
    if space.is_zero() {
        return IdealWitness { subspace: space, generators: Vec::new(), closure_rounds: 0 };
    }
    loop {
        rounds += 1;
        let before = space.rank();
        let rows = space.rows().to_vec();
        for row in &rows {
            for slot in Slot::ALL {
                for product in sys.slot_products(row, slot).into_values() {
                    space.insert(&product).expect("same ambient dimension");
                }
            }
        }
        if space.rank() == before {
            break;
        }
    }
    IdealWitness { subspace: space, generators: Vec::new(), closure_rounds: rounds }
}

pub fn compute_jideal<F: Scalar>(sys: &TripleSystem<F>) -> IdealWitness<F> {
    let gens = generator_vectors(sys);
    let seed = RowSpace::from_vectors(sys.dim(), gens.iter().map(|(_, v)| v)).expect("same ambient dimension");
    let mut witness = ideal_closure(sys, &seed);
    witness.generators = gens.into_iter().map(|(t, _)| t).collect();
    witness
}

/// `{T, S, T} = {T, T, S} = 0`.
pub fn check_annihilation<F: Scalar>(sys: &TripleSystem<F>, space: &RowSpace<F>) -> bool {
    space
        .rows()
        .iter()
        .all(|row| sys.slot_products(row, Slot::Second).is_empty() && sys.slot_products(row, Slot::Third).is_empty())
}

pub fn is_ideal<F: Scalar>(sys: &TripleSystem<F>, space: &RowSpace<F>) -> bool {
    ideal_closure(sys, space).subspace == *space
}

/// Splits the basis along `ideal`, which must be spanned by basis vectors.
///
/// In [`SplitMode::Leibniz`] the ideal has to coincide with
/// [`compute_jideal`]; in both modes it has to be an ideal annihilated from
/// the second and third slots.
pub fn split_basis<F: Scalar>(
    sys: &TripleSystem<F>,
    ideal: &RowSpace<F>,
    mode: SplitMode,
) -> Result<SplitSystem<F>, SplitError> {
    if ideal.dim() != sys.dim() {
        return Err(crate::error::ExactError::DimensionError { expected: sys.dim(), found: ideal.dim() }.into());
    }
    let iset = ideal.unit_support().map_err(|row| SplitError::NotAdapted { row: row.to_string() })?;
    match mode {
        SplitMode::Leibniz => {
            if compute_jideal(sys).subspace != *ideal {
                return Err(SplitError::NotAdmissible("subspace differs from the computed ideal".into()));
            }
        }
        SplitMode::Generic => {
            if !is_ideal(sys, ideal) {
                return Err(SplitError::NotAdmissible("subspace is not an ideal".into()));
            }
        }
    }
    if !check_annihilation(sys, ideal) {
        return Err(SplitError::NotAdmissible("ideal is not annihilated in the second and third slots".into()));
    }
    let i_members: BTreeSet<usize> = iset.iter().copied().collect();
    let n = sys.dim();
    let jset = (1..=n).filter(|k| !i_members.contains(k)).collect();
    let in_i = (1..=n).map(|k| i_members.contains(&k)).collect();
    Ok(SplitSystem { sys: sys.clone(), iset, jset, in_i, mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::system::Entry;
    use crate::Rational;

    type V = Vector<Rational>;
    type S = RowSpace<Rational>;

    fn units(n: usize, ks: &[usize]) -> S {
        S::spanned_by_units(n, ks.iter().copied())
    }

    /// 𝔍 = span{e1 + e2}: the two products live on e3, e4 only.
    pub(crate) fn not_adapted_system() -> TripleSystem<Rational> {
        TripleSystem::new(4, [Entry::int(3, 4, 3, 1, 1), Entry::int(4, 3, 3, 1, 2)]).unwrap()
    }

    #[test]
    fn generators() {
        assert!(generator_vectors(&catalog::jts2a::<Rational>()).is_empty());
        assert!(generator_vectors(&catalog::jts2b::<Rational>()).is_empty());
        assert!(generator_vectors(&TripleSystem::<Rational>::zero(3).unwrap()).is_empty());
        let nf = generator_vectors(&catalog::nf3t::<Rational>());
        assert!(nf.contains(&((1, 1, 1), V::unit(3, 3))));
    }

    #[test]
    fn closures() {
        let nf = catalog::nf3t::<Rational>();
        let w = ideal_closure(&nf, &units(3, &[3]));
        assert_eq!(w.subspace, units(3, &[3]));
        assert_eq!(w.closure_rounds, 1);
        let w = ideal_closure(&nf, &units(3, &[1]));
        assert_eq!(w.subspace, units(3, &[1, 3]));
        assert_eq!(w.closure_rounds, 2);
        assert!(ideal_closure(&nf, &S::zero(3)).subspace.is_zero());
    }

    #[test]
    fn jideal_examples() {
        assert!(compute_jideal(&catalog::jts2a::<Rational>()).subspace.is_zero());
        assert!(compute_jideal(&catalog::jts2b::<Rational>()).subspace.is_zero());
        let nf = compute_jideal(&catalog::nf3t::<Rational>());
        assert_eq!(nf.subspace, units(3, &[3]));
        assert_eq!(nf.generators, vec![(1, 1, 1)]);
    }

    #[test]
    fn annihilation_examples() {
        let nf = catalog::nf3t::<Rational>();
        assert!(check_annihilation(&nf, &units(3, &[3])));
        assert!(check_annihilation(&nf, &S::zero(3)));
        assert!(!check_annihilation(&nf, &units(3, &[1])));
    }

    #[test]
    fn ideal_examples() {
        let nf = catalog::nf3t::<Rational>();
        assert!(is_ideal(&nf, &units(3, &[2])));
        assert!(!is_ideal(&nf, &units(3, &[1])));
        for t in [catalog::jts2a::<Rational>(), catalog::jts2b()] {
            assert!(is_ideal(&t, &S::full(2)));
        }
    }

    #[test]
    fn split_examples() {
        let s = SplitSystem::leibniz(&catalog::nf3t::<Rational>()).unwrap();
        assert_eq!((s.iset(), s.jset()), (&[3][..], &[1, 2][..]));
        let s = SplitSystem::leibniz(&catalog::jts2a::<Rational>()).unwrap();
        assert_eq!((s.iset(), s.jset()), (&[][..], &[1, 2][..]));

        let t = not_adapted_system();
        let j = compute_jideal(&t);
        assert_eq!(j.subspace.rows(), &[V::from_i64s(&[1, 1, 0, 0])]);
        assert_eq!(
            split_basis(&t, &j.subspace, SplitMode::Leibniz),
            Err(SplitError::NotAdapted { row: "(1,1,0,0)".into() })
        );
    }

    #[test]
    fn generic_mode_checks_admissibility() {
        let nf = catalog::nf3t::<Rational>();
        // span{e2} is an ideal and trivially annihilated
        let s = SplitSystem::generic(&nf, &[2]).unwrap();
        assert_eq!(s.jset(), &[1, 3]);
        assert!(matches!(SplitSystem::generic(&nf, &[1]), Err(SplitError::NotAdmissible(_))));
        // span{e1, e3} is an ideal but e1 occurs in the second slot
        assert!(matches!(SplitSystem::generic(&nf, &[1, 3]), Err(SplitError::NotAdmissible(_))));
        assert!(matches!(SplitSystem::generic(&nf, &[4]), Err(SplitError::NotAdmissible(_))));
        // leibniz mode insists on the computed ideal
        assert!(matches!(split_basis(&nf, &units(3, &[2, 3]), SplitMode::Leibniz), Err(SplitError::NotAdmissible(_))));
    }
}
