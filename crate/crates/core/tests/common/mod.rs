//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use trisys::catalog;
use trisys::identities::{satisfies_identities, Family};
use trisys::jideal::SplitSystem;
use trisys::leibniz::{lift_from_leibniz, BilinearTable};
use trisys::{Entry, Rational, TripleSystem};

pub use rand::seq::SliceRandom;
pub use rand::{Rng, SeedableRng};

pub type Rng8 = ChaCha8Rng;
pub type Sys = TripleSystem<Rational>;

pub const COEFFS: [i64; 4] = [-2, -1, 1, 2];

pub fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

pub fn coeff(rng: &mut Rng8) -> Rational {
    Rational::from_integer((*COEFFS.choose(rng).unwrap()).into())
}

/// Every basis triple independently carries an entry with probability
/// `density`, with a random coefficient and target. No identities assumed.
pub fn raw_table(rng: &mut Rng8, dim: usize, density: f64) -> Sys {
    let mut entries = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                if rng.gen_bool(density) {
                    entries.push(Entry::new(i, j, k, coeff(rng), rng.gen_range(1..=dim)));
                }
            }
        }
    }
    TripleSystem::new(dim, entries).unwrap()
}

/// Products among the "low" indices landing on "top" indices that multiply
/// to zero: all nested products vanish, so every identity holds.
pub fn two_step(rng: &mut Rng8, dim: usize, density: f64) -> Sys {
    let top = rng.gen_range(1..dim.max(2)).min(dim);
    let low = dim - top;
    let mut entries = Vec::new();
    for i in 1..=low {
        for j in 1..=low {
            for k in 1..=low {
                if rng.gen_bool(density) {
                    entries.push(Entry::new(i, j, k, coeff(rng), rng.gen_range(low + 1..=dim)));
                }
            }
        }
    }
    TripleSystem::new(dim, entries).unwrap()
}

/// A random sparse bracket; brackets mostly raise the index so that the
/// right Leibniz identity has a fair chance to hold.
pub fn random_bracket(rng: &mut Rng8, dim: usize, density: f64) -> BilinearTable<Rational> {
    let mut terms = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            if rng.gen_bool(density) {
                let lo = if rng.gen_bool(0.8) { i.max(j) + 1 } else { 1 };
                if lo <= dim {
                    terms.push((i, j, coeff(rng), rng.gen_range(lo..=dim)));
                }
            }
        }
    }
    BilinearTable::new(dim, terms).unwrap()
}

/// Lift of a random bracket that passes the Leibniz precheck and has a
/// multiplicative lift.
pub fn random_lift(rng: &mut Rng8, dim: usize) -> (BilinearTable<Rational>, Sys) {
    loop {
        let density = rng.gen_range(0.1..0.5);
        let b = random_bracket(rng, dim, density);
        if let Ok(t) = lift_from_leibniz(&b) {
            return (b, t);
        }
    }
}

/// Relabels the basis by a random permutation and rescales basis vectors
/// by random nonzero integers; both preserve every identity.
pub fn scramble(rng: &mut Rng8, t: &Sys) -> Sys {
    let n = t.dim();
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let scale: Vec<Rational> = (0..n).map(|_| coeff(rng)).collect();
    // e_k -> s_k e_{perm k}: {e'_i,e'_j,e'_k} = s_i s_j s_k c / s_m e'_m
    let entries = t.entries().map(|(&(i, j, k), p)| {
        let c = p.coeff.clone() * scale[i - 1].clone() * scale[j - 1].clone() * scale[k - 1].clone()
            / scale[p.target - 1].clone();
        Entry::new(perm[i - 1], perm[j - 1], perm[k - 1], c, perm[p.target - 1])
    });
    TripleSystem::new(n, entries.collect::<Vec<_>>()).unwrap()
}

/// Small building blocks known to satisfy the identities.
pub fn blocks() -> Vec<Sys> {
    vec![
        catalog::jts2a(),
        catalog::jts2b(),
        catalog::nf3t(),
        catalog::nf_lift(4),
        TripleSystem::zero(1).unwrap(),
        TripleSystem::new(1, [Entry::int(1, 1, 1, 1, 1)]).unwrap(),
    ]
}

/// One identity-verified system of dimension at most `max_dim`, mixing
/// lifts, two-step systems, direct sums of blocks and filtered raw tables.
pub fn verified_system(rng: &mut Rng8, max_dim: usize, density: f64) -> Sys {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let t = match rng.gen_range(0..4) {
            0 => random_lift(rng, dim).1,
            1 => two_step(rng, dim, density),
            2 => {
                let bs = blocks();
                let mut t = bs.choose(rng).unwrap().clone();
                while t.dim() < max_dim && rng.gen_bool(0.6) {
                    let b = bs.choose(rng).unwrap();
                    if t.dim() + b.dim() <= max_dim {
                        t = t.direct_sum(b);
                    }
                }
                t
            }
            _ => raw_table(rng, dim, density * 0.3),
        };
        let t = scramble(rng, &t);
        if satisfies_identities(&t, Family::Both, 12).unwrap() {
            return t;
        }
    }
}

/// Same as [`verified_system`] but also requires an adapted split.
pub fn verified_split(rng: &mut Rng8, max_dim: usize, density: f64) -> (Sys, SplitSystem<Rational>) {
    loop {
        let t = verified_system(rng, max_dim, density);
        if let Ok(s) = SplitSystem::leibniz(&t) {
            return (t, s);
        }
    }
}

/// Any system with a random admissible split: the ideal is generated by a
/// random index set, kept only when it is spanned by basis vectors and
/// annihilated in the second and third slots.
pub fn raw_split(rng: &mut Rng8, max_dim: usize, density: f64) -> SplitSystem<Rational> {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let t = raw_table(rng, dim, density);
        let seed: BTreeSet<usize> = (1..=dim).filter(|_| rng.gen_bool(0.3)).collect();
        let closed = brute_closure_indices(&t, &seed);
        if let Ok(s) = SplitSystem::generic(&t, &closed.into_iter().collect::<Vec<_>>()) {
            return s;
        }
    }
}

/// Least set of basis indices containing `seed` and closed under taking
/// targets of products with a factor in the set.
pub fn brute_closure_indices(t: &Sys, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    loop {
        let before = set.len();
        for (&(i, j, k), p) in t.entries() {
            if set.contains(&i) || set.contains(&j) || set.contains(&k) {
                set.insert(p.target);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Dense rational matrix rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        r += 1;
    }
    r
}

pub fn unit(n: usize, k: usize) -> Vec<Rational> {
    (1..=n).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
}

/// `{x, y, z}` on dense coordinate vectors straight from the table.
pub fn dense_product(t: &Sys, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); t.dim()];
    for (&(i, j, k), p) in t.entries() {
        let c = x[i - 1].clone() * y[j - 1].clone() * z[k - 1].clone();
        if !c.is_zero() {
            out[p.target - 1] = out[p.target - 1].clone() + c * p.coeff.clone();
        }
    }
    out
}

/// Independent closure: repeatedly multiplies a spanning list in every slot
/// against all basis pairs and keeps vectors that raise the rank. Returns a
/// spanning list of the ideal.
pub fn brute_ideal_closure(t: &Sys, seed: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = t.dim();
    let mut span: Vec<Vec<Rational>> = Vec::new();
    let mut queue = seed;
    while let Some(v) = queue.pop() {
        let mut trial = span.clone();
        trial.push(v.clone());
        if rank(&trial) == span.len() {
            continue;
        }
        span.push(v.clone());
        for a in 1..=n {
            for b in 1..=n {
                let (ea, eb) = (unit(n, a), unit(n, b));
                queue.push(dense_product(t, &v, &ea, &eb));
                queue.push(dense_product(t, &ea, &v, &eb));
                queue.push(dense_product(t, &ea, &eb, &v));
            }
        }
    }
    span
}

/// The Lie-deviation generators evaluated densely on basis triples.
pub fn brute_generators(t: &Sys) -> Vec<Vec<Rational>> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                let a = dense_product(t, &ei, &ej, &ek);
                let b = dense_product(t, &ei, &ek, &ej);
                let c = dense_product(t, &ej, &ek, &ei);
                out.push(a.iter().zip(&b).zip(&c).map(|((a, b), c)| a.clone() - b.clone() + c.clone()).collect());
            }
        }
    }
    out
}

/// Connected components of the hypergraph `{i, j, k, target}` by BFS.
pub fn bfs_components(t: &Sys) -> Vec<Vec<usize>> {
    let n = t.dim();
    let mut adj = vec![BTreeSet::new(); n + 1];
    for (&(i, j, k), p) in t.entries() {
        let edge = [i, j, k, p.target];
        for &a in &edge {
            for &b in &edge {
                adj[a].insert(b);
            }
        }
    }
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A table built from products `{v_t, u_a, u_b} -> v_t2` together with a
/// reciprocal `{v_t2, u_a, u_b} -> v_t` (or with `a, b` swapped), where `a, b`
/// come from a random index set `J`. Such tables are often μ-multiplicative.
/// Returns the table and the complement of `J`.
pub fn paired_table(rng: &mut Rng8, dim: usize) -> (Sys, Vec<usize>) {
    let ni = rng.gen_range(0..dim);
    let mut idx: Vec<usize> = (1..=dim).collect();
    idx.shuffle(rng);
    let mut iset = idx[..ni].to_vec();
    let mut jset = idx[ni..].to_vec();
    iset.sort_unstable();
    jset.sort_unstable();
    let mut table = std::collections::BTreeMap::new();
    for _ in 0..rng.gen_range(1..=3) {
        let t = rng.gen_range(1..=dim);
        let (a, b) = (*jset.choose(rng).unwrap(), *jset.choose(rng).unwrap());
        let t2 = if iset.contains(&t) || (!iset.is_empty() && rng.gen_bool(0.3)) {
            *iset.choose(rng).unwrap()
        } else {
            *jset.choose(rng).unwrap()
        };
        table.entry((t, a, b)).or_insert((coeff(rng), t2));
        let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        table.entry((t2, x, y)).or_insert((coeff(rng), t));
    }
    let entries: Vec<_> = table.into_iter().map(|((i, j, k), (c, m))| Entry::new(i, j, k, c, m)).collect();
    (TripleSystem::new(dim, entries).unwrap(), iset)
}

/// `{x, y, z} = [[x, y], z]` evaluated straight from a bracket table.
pub fn dense_lift_product(b: &BilinearTable<Rational>, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let n = b.dim();
    let bracket = |x: &[Rational], y: &[Rational]| {
        let mut out = vec![Rational::zero(); n];
        for (p, q, c, m) in b.terms() {
            out[m - 1] = out[m - 1].clone() + x[p - 1].clone() * y[q - 1].clone() * c.clone();
        }
        out
    };
    bracket(&bracket(&unit(n, i), &unit(n, j)), &unit(n, k))
}
