//! Component ideals of the connection partition, the orthogonal direct sum
//! they form, μ-multiplicativity and minimality.

use std::fmt;

use crate::connect::{mu, partition, ConnectionMode, MarkedIndex, Partition};
use crate::error::{ConnectError, DecomposeError};
use crate::jideal::{is_ideal, SplitSystem};
use crate::linalg::RowSpace;
use crate::scalar::Scalar;
use crate::system::{Entry, Triple, TripleSystem};

pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Subset enumeration works on a 64-bit mask.
const HARD_ORACLE_LIMIT: usize = 63;

/// One connection class `[k]` with the inherited subsystem on it.
///
/// The subsystem is re-indexed: its basis index `l` is the parent index
/// `indices[l - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component<F> {
    pub indices: Vec<usize>,
    pub subsystem: TripleSystem<F>,
    pub iset_part: Vec<usize>,
    pub jset_part: Vec<usize>,
}

impl<F> Component<F> {
    pub fn id(&self) -> usize {
        self.indices[0]
    }

    pub fn parent_index(&self, local: usize) -> usize {
        self.indices[local - 1]
    }

    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.indices.binary_search(&parent).ok().map(|p| p + 1)
    }
}

/// A table entry whose factors and target do not share one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leak {
    pub entry: Triple,
    pub class_id: usize,
}

fn build_components<F: Scalar>(s: &SplitSystem<F>, part: &Partition) -> (Vec<Component<F>>, Vec<Leak>) {
    let sys = s.sys();
    let mut entries: Vec<Vec<Entry<F>>> = vec![Vec::new(); part.classes().len()];
    let position = |id: usize| part.classes().iter().position(|c| c[0] == id).expect("class id");
    let mut leaks = Vec::new();
    for (&(i, j, k), p) in sys.entries() {
        let id = part.class_id(i);
        if [j, k, p.target].iter().all(|&x| part.class_id(x) == id) {
            let local = |x: usize| part.classes()[position(id)].binary_search(&x).expect("member") + 1;
            entries[position(id)].push(Entry::new(local(i), local(j), local(k), p.coeff.clone(), local(p.target)));
        } else {
            leaks.push(Leak { entry: (i, j, k), class_id: id });
        }
    }
    let components = part
        .classes()
        .iter()
        .zip(entries)
        .map(|(class, entries)| {
            let subsystem = TripleSystem::new(class.len(), entries).expect("restriction of a valid table");
            let labels = class
                .iter()
                .enumerate()
                .filter_map(|(l, k)| sys.labels().get(k).map(|name| (l + 1, name.clone())))
                .collect();
            Component {
                indices: class.clone(),
                subsystem: subsystem.with_labels(labels).expect("labels in range"),
                iset_part: class.iter().copied().filter(|&k| s.in_i(k)).collect(),
                jset_part: class.iter().copied().filter(|&k| s.in_j(k)).collect(),
            }
        })
        .collect();
    (components, leaks)
}

/// One component per connection class, ordered by class id.
pub fn components<F: Scalar>(s: &SplitSystem<F>, mode: ConnectionMode) -> Result<Vec<Component<F>>, DecomposeError> {
    let part = partition(s, mode)?;
    let (components, leaks) = build_components(s, &part);
    match leaks.first() {
        Some(Leak { entry: (i, j, k), class_id }) => Err(DecomposeError::ConfinementError(*i, *j, *k, *class_id)),
        None => Ok(components),
    }
}

/// True when no table entry takes factors from both components.
pub fn check_orthogonal<F: Scalar>(s: &SplitSystem<F>, c1: &Component<F>, c2: &Component<F>) -> bool {
    let touches = |c: &Component<F>, (i, j, k): Triple| [i, j, k].iter().any(|x| c.indices.binary_search(x).is_ok());
    s.sys().entries().all(|(&key, _)| !(touches(c1, key) && touches(c2, key)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport<F> {
    pub mode: ConnectionMode,
    pub components: Vec<Component<F>>,
    /// Pairwise orthogonality; the diagonal is `true` by convention.
    pub orthogonality: Vec<Vec<bool>>,
    pub ideal_flags: Vec<bool>,
    /// The component spans form a direct sum equal to the whole space.
    pub covers: bool,
    /// Entries escaping their class (always empty in literal mode).
    pub leaks: Vec<Leak>,
}

impl<F> DecompositionReport<F> {
    pub fn all_hold(&self) -> bool {
        self.covers
            && self.leaks.is_empty()
            && self.ideal_flags.iter().all(|&f| f)
            && self.orthogonality.iter().flatten().all(|&f| f)
    }
}

/// Builds the components and re-verifies that they are ideals, pairwise
/// orthogonal and jointly cover the space. In literal mode any failure is a
/// [`DecomposeError::TheoremViolation`]; in restricted mode it is reported.
pub fn check_decomposition<F: Scalar>(
    s: &SplitSystem<F>,
    mode: ConnectionMode,
) -> Result<DecompositionReport<F>, DecomposeError> {
    let part = partition(s, mode)?;
    let (components, leaks) = build_components(s, &part);
    let n = s.dim();
    let ideal_flags = components
        .iter()
        .map(|c| is_ideal(s.sys(), &RowSpace::spanned_by_units(n, c.indices.iter().copied())))
        .collect();
    let orthogonality = components
        .iter()
        .enumerate()
        .map(|(a, ca)| components.iter().enumerate().map(|(b, cb)| a == b || check_orthogonal(s, ca, cb)).collect())
        .collect();
    let mut all: Vec<usize> = components.iter().flat_map(|c| c.indices.iter().copied()).collect();
    all.sort_unstable();
    let covers = all == (1..=n).collect::<Vec<_>>();
    let report = DecompositionReport { mode, components, orthogonality, ideal_flags, covers, leaks };
    if mode == ConnectionMode::Literal && !report.all_hold() {
        return Err(DecomposeError::TheoremViolation(format!(
            "ideal flags {:?}, orthogonality {:?}, covers {}, leaks {:?}",
            report.ideal_flags, report.orthogonality, report.covers, report.leaks
        )));
    }
    Ok(report)
}

/// A membership `t2 ∈ mu(t1, s1, s2)` not realized by a product
/// `{v_t1, u_s, u_s'}` landing on `v_t2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuCounterexample {
    pub t1: usize,
    pub s1: MarkedIndex,
    pub s2: MarkedIndex,
    pub t2: usize,
}

impl fmt::Display for MuCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.t1, self.s1, self.s2, self.t2)
    }
}

/// `Ok(None)` when the basis is μ-multiplicative, otherwise the first
/// failing tuple in the order `t1`, then plain pairs before barred ones,
/// then `(s1, s2)`, then `t2`.
pub fn mu_multiplicativity_check<F: Scalar>(s: &SplitSystem<F>) -> Result<Option<MuCounterexample>, ConnectError> {
    let sys = s.sys();
    let lands = |t1: usize, a: usize, b: usize, t2: usize| sys.product(t1, a, b).is_some_and(|p| p.target == t2);
    for t1 in 1..=s.dim() {
        for barred in [false, true] {
            for &a in s.jset() {
                for &b in s.jset() {
                    let (m1, m2) = if barred {
                        (MarkedIndex::barred(a), MarkedIndex::barred(b))
                    } else {
                        (MarkedIndex::plain(a), MarkedIndex::plain(b))
                    };
                    for t2 in mu(s, t1, m1, m2)? {
                        if !(lands(t1, a, b, t2) || lands(t1, b, a, t2)) {
                            return Ok(Some(MuCounterexample { t1, s1: m1, s2: m2, t2 }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Minimal,
    NotMinimal,
    CriterionInapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Minimal => "minimal",
            Verdict::NotMinimal => "not_minimal",
            Verdict::CriterionInapplicable => "criterion_inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub verdict: Verdict,
    pub mode: ConnectionMode,
    pub mu_multiplicative: bool,
    pub mu_counterexample: Option<MuCounterexample>,
    pub i_connected: bool,
    pub j_connected: bool,
    pub oracle_used: bool,
    /// A nonzero inherited ideal other than the annihilating ideal and the
    /// whole space, when one was identified.
    pub counterexample_ideal: Option<Vec<usize>>,
}

/// Minimality via the connectivity criterion when the basis is
/// μ-multiplicative, otherwise via exhaustive enumeration if the dimension
/// is at most `oracle_cap`.
pub fn is_minimal<F: Scalar>(
    s: &SplitSystem<F>,
    mode: ConnectionMode,
    oracle_cap: usize,
) -> Result<MinimalityVerdict, DecomposeError> {
    let mu_counterexample = mu_multiplicativity_check(s)?;
    let part = partition(s, mode)?;
    let i_connected = part.all_connected(s.iset());
    let j_connected = part.all_connected(s.jset());
    let mut verdict = MinimalityVerdict {
        verdict: Verdict::CriterionInapplicable,
        mode,
        mu_multiplicative: mu_counterexample.is_none(),
        mu_counterexample,
        i_connected,
        j_connected,
        oracle_used: false,
        counterexample_ideal: None,
    };
    if verdict.mu_multiplicative {
        if i_connected && j_connected {
            verdict.verdict = Verdict::Minimal;
        } else {
            verdict.verdict = Verdict::NotMinimal;
            if mode == ConnectionMode::Literal {
                // literal classes are ideals; one of them is neither the
                // annihilating ideal nor everything
                verdict.counterexample_ideal =
                    part.classes().iter().find(|c| c.as_slice() != s.iset() && c.len() != s.dim()).cloned();
            }
        }
    } else if s.dim() <= oracle_cap {
        verdict.oracle_used = true;
        verdict.counterexample_ideal = oracle_counterexample(s, oracle_cap)?;
        verdict.verdict = if verdict.counterexample_ideal.is_none() { Verdict::Minimal } else { Verdict::NotMinimal };
    }
    Ok(verdict)
}

fn check_cap(dim: usize, cap: usize) -> Result<(), DecomposeError> {
    if dim > cap || dim > HARD_ORACLE_LIMIT {
        Err(DecomposeError::CapExceeded { dim, cap: cap.min(HARD_ORACLE_LIMIT) })
    } else {
        Ok(())
    }
}

fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |m, k| m | 1 << (k - 1))
}

fn indices_of(mask: u64, n: usize) -> Vec<usize> {
    (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect()
}

fn inherited_ideal_masks<F: Scalar>(sys: &TripleSystem<F>) -> Vec<u64> {
    let n = sys.dim();
    let rules: Vec<(u64, u64)> =
        sys.entries().map(|(&(i, j, k), p)| (mask_of([i, j, k]), mask_of([p.target]))).collect();
    let mut out: Vec<u64> = (0u64..(1u64 << n))
        .filter(|&x| rules.iter().all(|&(factors, target)| factors & x == 0 || target & x != 0))
        .collect();
    out.sort_by_key(|&x| (x.count_ones(), indices_of(x, n)));
    out
}

/// Every basis subset whose span is an ideal, the empty set included, sorted
/// by size and then lexicographically.
pub fn enumerate_inherited_ideals<F: Scalar>(
    s: &SplitSystem<F>,
    cap: usize,
) -> Result<Vec<Vec<usize>>, DecomposeError> {
    check_cap(s.dim(), cap)?;
    Ok(inherited_ideal_masks(s.sys()).into_iter().map(|m| indices_of(m, s.dim())).collect())
}

/// First nonzero inherited ideal that is neither the annihilating ideal nor
/// the whole space.
pub fn oracle_counterexample<F: Scalar>(s: &SplitSystem<F>, cap: usize) -> Result<Option<Vec<usize>>, DecomposeError> {
    check_cap(s.dim(), cap)?;
    let n = s.dim();
    let ideal = mask_of(s.iset().iter().copied());
    let full = (1u64 << n) - 1;
    Ok(inherited_ideal_masks(s.sys())
        .into_iter()
        .find(|&x| x != 0 && x != ideal && x != full)
        .map(|x| indices_of(x, n)))
}

/// Minimality decided directly from the definition by subset enumeration.
pub fn minimality_oracle<F: Scalar>(s: &SplitSystem<F>, cap: usize) -> Result<bool, DecomposeError> {
    Ok(oracle_counterexample(s, cap)?.is_none())
}
