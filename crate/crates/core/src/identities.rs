//! Verification of the Leibniz triple system identities.
//!
//! Every term of every identity is multilinear in the five free variables
//! `a, b, c, d, f`, so checking all basis 5-tuples is both necessary and
//! sufficient. On a multiplicative basis each nested product of basis vectors
//! is a single scaled basis vector, which keeps the per-tuple work tiny; the
//! `n^5` tuple count is what the dimension cap guards.

use std::fmt;

use crate::error::SystemError;
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::system::TripleSystem;

pub const DEFAULT_IDENTITY_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// The four-identity form.
    Four,
    /// The equivalent two-identity form.
    Two,
    Both,
}

impl Family {
    fn includes(self, other: Family) -> bool {
        self == Family::Both || self == other
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Four => "four",
            Family::Two => "two",
            Family::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityId {
    pub family_two: bool,
    pub number: u8,
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = if self.family_two { "two" } else { "four" };
        write!(f, "{family}.{}", self.number)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<F> {
    pub identity: IdentityId,
    /// Basis indices substituted for `(a, b, c, d, f)`.
    pub tuple: [usize; 5],
    pub residual: Vector<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport<F> {
    pub family: Family,
    pub violations: Vec<Violation<F>>,
}

impl<F> IdentityReport<F> {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy)]
enum Shape {
    /// `{x1, {x2, x3, x4}, x5}`
    Mid,
    /// `{x1, x2, {x3, x4, x5}}`
    Last,
    /// `{{x1, x2, x3}, x4, x5}`
    First,
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const F_: usize = 4;

type Term = (i8, Shape, [usize; 5]);

struct Identity {
    id: IdentityId,
    terms: &'static [Term],
}

use Shape::{First, Last, Mid};

const FOUR: [Identity; 4] = [
    Identity {
        id: IdentityId { family_two: false, number: 1 },
        terms: &[(1, Mid, [A, B, C, D, F_]), (1, Mid, [A, C, B, D, F_])],
    },
    Identity {
        id: IdentityId { family_two: false, number: 2 },
        terms: &[(1, Mid, [A, B, C, D, F_]), (1, Mid, [A, C, D, B, F_]), (1, Mid, [A, D, B, C, F_])],
    },
    Identity {
        id: IdentityId { family_two: false, number: 3 },
        terms: &[
            (1, Last, [A, B, C, D, F_]),
            (-1, First, [A, B, C, D, F_]),
            (1, First, [A, B, D, C, F_]),
            (-1, First, [A, B, F_, D, C]),
            (1, First, [A, B, F_, C, D]),
        ],
    },
    Identity {
        id: IdentityId { family_two: false, number: 4 },
        terms: &[
            (1, First, [C, D, F_, B, A]),
            (-1, First, [C, D, F_, A, B]),
            (-1, First, [C, B, A, D, F_]),
            (1, First, [C, A, B, D, F_]),
            (-1, Mid, [C, A, B, D, F_]),
            (-1, Last, [C, D, A, B, F_]),
        ],
    },
];

// Written as `lhs - rhs = 0`.
const TWO: [Identity; 2] = [
    Identity {
        id: IdentityId { family_two: true, number: 1 },
        terms: &[
            (1, Mid, [A, B, C, D, F_]),
            (-1, First, [A, B, C, D, F_]),
            (1, First, [A, C, B, D, F_]),
            (1, First, [A, D, B, C, F_]),
            (-1, First, [A, D, C, B, F_]),
        ],
    },
    Identity {
        id: IdentityId { family_two: true, number: 2 },
        terms: &[
            (1, Last, [A, B, C, D, F_]),
            (-1, First, [A, B, C, D, F_]),
            (1, First, [A, B, D, C, F_]),
            (1, First, [A, B, F_, C, D]),
            (-1, First, [A, B, F_, D, C]),
        ],
    },
];

/// Dense lookup over basis triples, 0-based.
struct Lookup<'a, F> {
    n: usize,
    cells: Vec<Option<(&'a F, usize)>>,
}

impl<'a, F: Scalar> Lookup<'a, F> {
    fn new(sys: &'a TripleSystem<F>) -> Self {
        let n = sys.dim();
        let mut cells = vec![None; n * n * n];
        for (&(i, j, k), p) in sys.entries() {
            cells[((i - 1) * n + (j - 1)) * n + (k - 1)] = Some((&p.coeff, p.target - 1));
        }
        Lookup { n, cells }
    }

    #[inline]
    fn get(&self, i: usize, j: usize, k: usize) -> Option<(&'a F, usize)> {
        self.cells[(i * self.n + j) * self.n + k]
    }

    fn term(&self, shape: Shape, x: [usize; 5]) -> Option<(F, usize)> {
        let (c1, t1) = match shape {
            Mid => self.get(x[1], x[2], x[3])?,
            Last => self.get(x[2], x[3], x[4])?,
            First => self.get(x[0], x[1], x[2])?,
        };
        let (c2, t2) = match shape {
            Mid => self.get(x[0], t1, x[4])?,
            Last => self.get(x[0], x[1], t1)?,
            First => self.get(t1, x[3], x[4])?,
        };
        Some((c1.clone() * c2.clone(), t2))
    }

    /// Residual of one identity at one tuple, as sparse (0-based index, coeff).
    fn residual(&self, identity: &Identity, tuple: [usize; 5]) -> Vec<(usize, F)> {
        let mut acc: Vec<(usize, F)> = Vec::new();
        for &(sign, shape, perm) in identity.terms {
            let args = perm.map(|p| tuple[p]);
            if let Some((c, t)) = self.term(shape, args) {
                let c = if sign < 0 { -c } else { c };
                match acc.iter_mut().find(|(idx, _)| *idx == t) {
                    Some((_, v)) => *v = v.clone() + c,
                    None => acc.push((t, c)),
                }
            }
        }
        acc.retain(|(_, v)| !v.is_zero());
        acc
    }
}

fn selected(family: Family) -> impl Iterator<Item = &'static Identity> {
    let four = family.includes(Family::Four).then_some(FOUR.iter());
    let two = family.includes(Family::Two).then_some(TWO.iter());
    four.into_iter().flatten().chain(two.into_iter().flatten())
}

fn tuples(n: usize) -> impl Iterator<Item = [usize; 5]> {
    (0..n.pow(5)).map(move |mut code| {
        let mut t = [0usize; 5];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

fn guard<F: Scalar>(sys: &TripleSystem<F>, cap: usize) -> Result<(), SystemError> {
    if sys.dim() > cap {
        Err(SystemError::CapExceeded { dim: sys.dim(), cap })
    } else {
        Ok(())
    }
}

/// Lists every violated identity instance over all basis 5-tuples.
pub fn check_identities<F: Scalar>(
    sys: &TripleSystem<F>,
    family: Family,
    cap: usize,
) -> Result<IdentityReport<F>, SystemError> {
    guard(sys, cap)?;
    let lookup = Lookup::new(sys);
    let n = sys.dim();
    let mut violations = Vec::new();
    for tuple in tuples(n) {
        for identity in selected(family) {
            let res = lookup.residual(identity, tuple);
            if !res.is_empty() {
                let mut residual = Vector::zero(n);
                for (t, c) in res {
                    residual.add_scaled_unit(t + 1, c);
                }
                violations.push(Violation { identity: identity.id, tuple: tuple.map(|x| x + 1), residual });
            }
        }
    }
    Ok(IdentityReport { family, violations })
}

/// Like [`check_identities`] but stops at the first violation.
pub fn satisfies_identities<F: Scalar>(sys: &TripleSystem<F>, family: Family, cap: usize) -> Result<bool, SystemError> {
    guard(sys, cap)?;
    let lookup = Lookup::new(sys);
    Ok(tuples(sys.dim()).all(|tuple| selected(family).all(|identity| lookup.residual(identity, tuple).is_empty())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::system::Entry;
    use crate::Rational;

    type V = Vector<Rational>;

    /// Direct evaluation of the identities through the trilinear product,
    /// with no reliance on the multiplicative shortcut.
    fn naive_violations(t: &TripleSystem<Rational>) -> (bool, bool) {
        let n = t.dim();
        let p = |x: &V, y: &V, z: &V| t.evaluate_product(x, y, z).unwrap();
        let mut four_ok = true;
        let mut two_ok = true;
        for tuple in tuples(n) {
            let [a, b, c, d, f] = tuple.map(|k| V::unit(n, k + 1));
            let sum = |terms: Vec<(i64, V)>| {
                terms.into_iter().fold(V::zero(n), |acc, (s, v)| acc.add(&v.scale(&Rational::from_i64(s))))
            };
            let i1 = sum(vec![(1, p(&a, &p(&b, &c, &d), &f)), (1, p(&a, &p(&c, &b, &d), &f))]);
            let i2 = sum(vec![
                (1, p(&a, &p(&b, &c, &d), &f)),
                (1, p(&a, &p(&c, &d, &b), &f)),
                (1, p(&a, &p(&d, &b, &c), &f)),
            ]);
            let i3 = sum(vec![
                (1, p(&a, &b, &p(&c, &d, &f))),
                (-1, p(&p(&a, &b, &c), &d, &f)),
                (1, p(&p(&a, &b, &d), &c, &f)),
                (-1, p(&p(&a, &b, &f), &d, &c)),
                (1, p(&p(&a, &b, &f), &c, &d)),
            ]);
            let i4 = sum(vec![
                (1, p(&p(&c, &d, &f), &b, &a)),
                (-1, p(&p(&c, &d, &f), &a, &b)),
                (-1, p(&p(&c, &b, &a), &d, &f)),
                (1, p(&p(&c, &a, &b), &d, &f)),
                (-1, p(&c, &p(&a, &b, &d), &f)),
                (-1, p(&c, &d, &p(&a, &b, &f))),
            ]);
            let j1 = sum(vec![
                (1, p(&a, &p(&b, &c, &d), &f)),
                (-1, p(&p(&a, &b, &c), &d, &f)),
                (1, p(&p(&a, &c, &b), &d, &f)),
                (1, p(&p(&a, &d, &b), &c, &f)),
                (-1, p(&p(&a, &d, &c), &b, &f)),
            ]);
            let j2 = sum(vec![
                (1, p(&a, &b, &p(&c, &d, &f))),
                (-1, p(&p(&a, &b, &c), &d, &f)),
                (1, p(&p(&a, &b, &d), &c, &f)),
                (1, p(&p(&a, &b, &f), &c, &d)),
                (-1, p(&p(&a, &b, &f), &d, &c)),
            ]);
            four_ok &= [i1, i2, i3, i4].iter().all(V::is_zero);
            two_ok &= [j1, j2].iter().all(V::is_zero);
        }
        (four_ok, two_ok)
    }

    #[test]
    fn golden_systems_satisfy_both_families() {
        for t in [catalog::jts2a::<Rational>(), catalog::jts2b(), catalog::nf3t()] {
            let report = check_identities(&t, Family::Both, DEFAULT_IDENTITY_CAP).unwrap();
            assert!(report.is_satisfied(), "{:?}", report.violations.first());
            assert_eq!(naive_violations(&t), (true, true));
        }
    }

    #[test]
    fn one_dimensional_idempotent_fails() {
        let t = TripleSystem::new(1, [Entry::<Rational>::int(1, 1, 1, 1, 1)]).unwrap();
        let report = check_identities(&t, Family::Four, DEFAULT_IDENTITY_CAP).unwrap();
        let first = &report.violations[0];
        assert_eq!(first.identity.to_string(), "four.1");
        assert_eq!(first.tuple, [1; 5]);
        assert_eq!(first.residual, V::from_i64s(&[2]));
        assert!(!satisfies_identities(&t, Family::Two, DEFAULT_IDENTITY_CAP).unwrap());
        assert_eq!(naive_violations(&t), (false, false));
    }

    #[test]
    fn zero_table_is_always_fine() {
        for n in 1..=4 {
            let t = TripleSystem::<Rational>::zero(n).unwrap();
            assert!(check_identities(&t, Family::Both, DEFAULT_IDENTITY_CAP).unwrap().is_satisfied());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = TripleSystem::<Rational>::zero(4).unwrap();
        assert_eq!(check_identities(&t, Family::Both, 3).unwrap_err(), SystemError::CapExceeded { dim: 4, cap: 3 });
        assert!(satisfies_identities(&t, Family::Both, 4).unwrap());
    }

    #[test]
    fn shortcut_agrees_with_naive_evaluation_on_small_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=3);
            let mut entries = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        if rng.gen_bool(0.2) {
                            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
                            entries.push(Entry::<Rational>::int(i, j, k, c, rng.gen_range(1..=n)));
                        }
                    }
                }
            }
            let t = TripleSystem::new(n, entries).unwrap();
            let four = satisfies_identities(&t, Family::Four, 12).unwrap();
            let two = satisfies_identities(&t, Family::Two, 12).unwrap();
            assert_eq!(naive_violations(&t), (four, two));
        }
    }
}
