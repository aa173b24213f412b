//! Connections in the index set of a split multiplicative basis.
//!
//! Every basis index `k` has a barred twin `k'`. The maps [`map_a`], [`map_b`]
//! and [`mu`] record which index a product of basis vectors lands on (plain
//! arguments) or which factor produced a given target (barred arguments);
//! [`phi`] lifts `mu` to sets. Iterating `phi` along a sequence of argument
//! pairs is a connection, and connectedness partitions the basis.
//!
//! Two readings of the admissible argument pairs are offered by
//! [`ConnectionMode`]: `Literal` allows any plain or barred index, while
//! `Restricted` only allows indices of `J` and their bars.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::ConnectError;
use crate::jideal::SplitSystem;
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

pub type IndexSet = BTreeSet<usize>;

/// A basis index, possibly carrying the assistant bar. Serialized as `3` or `3'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedIndex {
    pub index: usize,
    pub barred: bool,
}

impl MarkedIndex {
    pub fn plain(index: usize) -> Self {
        MarkedIndex { index, barred: false }
    }

    pub fn barred(index: usize) -> Self {
        MarkedIndex { index, barred: true }
    }

    pub fn bar(self) -> Self {
        MarkedIndex { index: self.index, barred: !self.barred }
    }
}

impl fmt::Display for MarkedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.barred { "'" } else { "" })
    }
}

impl FromStr for MarkedIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (digits, barred) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        match digits.parse::<usize>() {
            Ok(index) if index > 0 && digits.bytes().all(|b| b.is_ascii_digit()) => Ok(MarkedIndex { index, barred }),
            _ => Err(format!("malformed marked index {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ConnectionMode {
    /// Argument pairs range over all plain and barred indices.
    #[default]
    Literal,
    /// Argument pairs range over `J` and its barred copy only.
    Restricted,
}

impl fmt::Display for ConnectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectionMode::Literal => "literal",
            ConnectionMode::Restricted => "restricted",
        })
    }
}

/// A connection `(k1, k2, ..., k_{2n+1})` from `k1` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionWitness {
    pub elements: Vec<MarkedIndex>,
    pub target: usize,
}

impl ConnectionWitness {
    pub fn trivial(k: usize) -> Self {
        ConnectionWitness { elements: vec![MarkedIndex::plain(k)], target: k }
    }

    pub fn source(&self) -> usize {
        self.elements[0].index
    }

    pub fn pairs(&self) -> impl Iterator<Item = (MarkedIndex, MarkedIndex)> + '_ {
        self.elements[1..].chunks(2).map(|c| (c[0], c[1]))
    }
}

impl fmt::Display for ConnectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "({}) -> {}", parts.join(","), self.target)
    }
}

/// The map `a` on plain indices.
///
/// A nonzero product is only expected in the patterns `(I, J, J)` landing in
/// `I` and `(J, J, J)`; anything else means the split is not annihilating.
pub fn map_a<F: Scalar>(s: &SplitSystem<F>, k1: usize, k2: usize, k3: usize) -> Result<IndexSet, ConnectError> {
    let Some(p) = s.sys().product(k1, k2, k3) else {
        return Ok(IndexSet::new());
    };
    let inconsistent = || ConnectError::InconsistentSplit(k1, k2, k3);
    if s.in_i(k2) || s.in_i(k3) {
        return Err(inconsistent());
    }
    if s.in_i(k1) && !s.in_i(p.target) {
        return Err(inconsistent());
    }
    Ok(IndexSet::from([p.target]))
}

/// The map `b`: which factors, together with `r1, r2`, produce `k`.
/// Empty unless both markers are barred indices of `J`.
pub fn map_b<F: Scalar>(s: &SplitSystem<F>, k: usize, m1: MarkedIndex, m2: MarkedIndex) -> IndexSet {
    let mut out = IndexSet::new();
    if !(m1.barred && m2.barred && s.in_j(m1.index) && s.in_j(m2.index)) {
        return out;
    }
    let (r1, r2) = (m1.index, m2.index);
    let sys = s.sys();
    let hits = |i, j, l| sys.product(i, j, l).is_some_and(|p| p.target == k);
    if s.in_i(k) {
        out.extend(s.iset().iter().copied().filter(|&m| hits(m, r1, r2)));
    }
    for &x in s.jset() {
        if hits(x, r1, r2) || hits(r1, x, r2) || hits(r1, r2, x) {
            out.insert(x);
        }
    }
    out
}

pub fn mu<F: Scalar>(s: &SplitSystem<F>, k: usize, m1: MarkedIndex, m2: MarkedIndex) -> Result<IndexSet, ConnectError> {
    let mut out = IndexSet::new();
    match (m1.barred, m2.barred) {
        (false, false) => {
            let (x, y, z) = (k, m1.index, m2.index);
            for (a, b, c) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                out.extend(map_a(s, a, b, c)?);
            }
        }
        (true, true) => {
            out.extend(map_b(s, k, m1, m2));
            out.extend(map_b(s, k, m2, m1));
        }
        _ => {}
    }
    Ok(out)
}

pub fn phi<F: Scalar>(
    s: &SplitSystem<F>,
    set: &IndexSet,
    p: MarkedIndex,
    q: MarkedIndex,
) -> Result<IndexSet, ConnectError> {
    let mut out = IndexSet::new();
    for &k in set {
        out.extend(mu(s, k, p, q)?);
    }
    Ok(out)
}

/// Argument pairs that can make `mu` nonempty under `mode`, in ascending
/// order. Mixed pairs and barred `I` indices always give the empty set and
/// are skipped.
fn candidate_pairs<F: Scalar>(s: &SplitSystem<F>, mode: ConnectionMode) -> Vec<(MarkedIndex, MarkedIndex)> {
    let plain: Vec<usize> = match mode {
        ConnectionMode::Literal => (1..=s.dim()).collect(),
        ConnectionMode::Restricted => s.jset().to_vec(),
    };
    let mut pairs = Vec::new();
    for &p in &plain {
        for &q in &plain {
            pairs.push((MarkedIndex::plain(p), MarkedIndex::plain(q)));
        }
    }
    for &p in s.jset() {
        for &q in s.jset() {
            pairs.push((MarkedIndex::barred(p), MarkedIndex::barred(q)));
        }
    }
    pairs.sort();
    pairs
}

/// Replays a witness: each stage must be nonempty and the last must contain
/// the target. A one-element witness is the trivial connection `k = k'`.
pub fn replay<F: Scalar>(s: &SplitSystem<F>, w: &ConnectionWitness) -> Result<bool, ConnectError> {
    let Some(first) = w.elements.first() else {
        return Ok(false);
    };
    if first.barred || w.elements.len().is_multiple_of(2) {
        return Ok(false);
    }
    if w.elements.len() == 1 {
        return Ok(first.index == w.target);
    }
    let mut current = IndexSet::from([first.index]);
    for (p, q) in w.pairs() {
        current = phi(s, &current, p, q)?;
        if current.is_empty() {
            return Ok(false);
        }
    }
    Ok(current.contains(&w.target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    pub source: usize,
    pub witnesses: BTreeMap<usize, ConnectionWitness>,
}

impl Reachability {
    pub fn reached(&self) -> IndexSet {
        self.witnesses.keys().copied().collect()
    }
}

/// Breadth-first closure of one-step reachability from `k`, with a replayable
/// witness for every index reached. Ties are broken by argument pair, then
/// by the reached index.
pub fn reachable<F: Scalar>(s: &SplitSystem<F>, k: usize, mode: ConnectionMode) -> Result<Reachability, ConnectError> {
    let pairs = candidate_pairs(s, mode);
    let mut witnesses = BTreeMap::from([(k, ConnectionWitness::trivial(k))]);
    let mut queue = VecDeque::from([k]);
    while let Some(x) = queue.pop_front() {
        for &(p, q) in &pairs {
            for y in mu(s, x, p, q)? {
                if witnesses.contains_key(&y) {
                    continue;
                }
                let mut elements = witnesses[&x].elements.clone();
                elements.extend([p, q]);
                witnesses.insert(y, ConnectionWitness { elements, target: y });
                queue.push_back(y);
            }
        }
    }
    Ok(Reachability { source: k, witnesses })
}

/// Connection classes of the basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    mode: ConnectionMode,
}

impl Partition {
    fn from_groups(groups: Vec<Vec<usize>>, n: usize, mode: ConnectionMode) -> Self {
        let classes: Vec<Vec<usize>> = groups.into_iter().map(|g| g.into_iter().map(|x| x + 1).collect()).collect();
        let mut class_of = vec![0; n];
        for class in &classes {
            for &k in class {
                class_of[k - 1] = class[0];
            }
        }
        Partition { classes, class_of, mode }
    }

    /// Classes ordered by id; each class sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Id of the class of `k`, which is its minimum member.
    pub fn class_id(&self, k: usize) -> usize {
        self.class_of[k - 1]
    }

    pub fn mode(&self) -> ConnectionMode {
        self.mode
    }

    /// Whether all of `indices` fall in a single class (vacuously true when empty).
    pub fn all_connected(&self, indices: &[usize]) -> bool {
        indices.windows(2).all(|w| self.class_id(w[0]) == self.class_id(w[1]))
    }
}

/// Components of the hypergraph with one hyperedge `{i, j, k, target}` per
/// nonzero table entry.
pub fn hyperedge_partition<F: Scalar>(s: &SplitSystem<F>) -> Partition {
    let n = s.dim();
    let mut uf = UnionFind::new(n);
    for (&(i, j, k), p) in s.sys().entries() {
        for x in [j, k, p.target] {
            uf.union(i - 1, x - 1);
        }
    }
    Partition::from_groups(uf.groups(), n, ConnectionMode::Literal)
}

/// The finest equivalence containing one-step reachability (and hence its
/// reverse). In literal mode the result is cross-checked against
/// [`hyperedge_partition`].
pub fn partition<F: Scalar>(s: &SplitSystem<F>, mode: ConnectionMode) -> Result<Partition, ConnectError> {
    let n = s.dim();
    let pairs = candidate_pairs(s, mode);
    let mut uf = UnionFind::new(n);
    for x in 1..=n {
        for &(p, q) in &pairs {
            for y in mu(s, x, p, q)? {
                uf.union(x - 1, y - 1);
            }
        }
    }
    let result = Partition::from_groups(uf.groups(), n, mode);
    if mode == ConnectionMode::Literal {
        let hyper = hyperedge_partition(s);
        if hyper.classes != result.classes {
            return Err(ConnectError::Internal(format!(
                "reachability classes {:?} differ from hyperedge components {:?}",
                result.classes, hyper.classes
            )));
        }
    }
    Ok(result)
}

/// Reverses a connection from `k` to `k'` whose pairs lie in `J` and its
/// barred copy: `(k', bar k_{2n+1}, bar k_{2n}, ..., bar k_2)` reaches `k`.
pub fn reverse_connection<F: Scalar>(
    s: &SplitSystem<F>,
    w: &ConnectionWitness,
) -> Result<ConnectionWitness, ConnectError> {
    if !replay(s, w)? {
        return Err(ConnectError::InvalidWitness(w.to_string()));
    }
    if let Some(&bad) = w.elements[1..].iter().find(|m| !s.in_j(m.index)) {
        return Err(ConnectError::NotReversible(bad));
    }
    if w.elements.len() == 1 {
        return Ok(w.clone());
    }
    let mut elements = vec![MarkedIndex::plain(w.target)];
    elements.extend(w.elements[1..].iter().rev().map(|m| m.bar()));
    let reversed = ConnectionWitness { elements, target: w.source() };
    if !replay(s, &reversed)? {
        return Err(ConnectError::Internal(format!("reversal {reversed} of {w} does not replay")));
    }
    Ok(reversed)
}
