//! Decorated cycles indexing the torus-fixed loci that do not come from the
//! `n = 1` space.
//!
//! A graph is an `m`-cycle with vertex labels `nu` (torus-fixed points of
//! `ℙⁿ⁻¹`), vertex torsion `s` and edge degrees `delta`, edge `i` joining
//! vertex `i` to vertex `i+1 mod m`. Adjacent labels differ and
//! `Σ s + Σ delta = d`.
//!
//! Graphs are stored in canonical form: the lexicographically least word of
//! triples `(nu_i, s_i, delta_i)` over the `2m` symmetries of the cycle.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex and edge sequences have different lengths ({nu}, {s}, {delta})")]
    LengthMismatch { nu: usize, s: usize, delta: usize },
    #[error("a cycle needs at least two vertices")]
    TooShort,
    #[error("adjacent vertices {i} and {j} share label {label}")]
    AdjacentLabels { i: usize, j: usize, label: u32 },
    #[error("edge {edge} has degree 0")]
    ZeroEdgeDegree { edge: usize },
    #[error("label {label} is out of range for n = {n}")]
    LabelOutOfRange { label: u32, n: u32 },
    #[error("total degree {actual} does not match d = {expected}")]
    DegreeMismatch { expected: u32, actual: u32 },
    #[error("n and d must be positive")]
    InvalidParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationParams {
    pub n: u32,
    pub d: u32,
}

impl EnumerationParams {
    pub fn new(n: u32, d: u32) -> Result<Self, GraphError> {
        if n == 0 || d == 0 {
            return Err(GraphError::InvalidParams);
        }
        Ok(Self { n, d })
    }
}

type Triple = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct DecoratedGraph {
    m: usize,
    nu: Vec<u32>,
    s: Vec<u32>,
    delta: Vec<u32>,
}

impl DecoratedGraph {
    /// Validate a raw decorated cycle and bring it to canonical form.
    pub fn canonicalize(nu: Vec<u32>, s: Vec<u32>, delta: Vec<u32>) -> Result<Self, GraphError> {
        validate(&nu, &s, &delta)?;
        let word: Vec<Triple> = (0..nu.len()).map(|i| (nu[i], s[i], delta[i])).collect();
        Ok(Self::from_word(&canonical_word(&word)))
    }

    /// Canonicalize and check labels and total degree against `params`.
    pub fn canonicalize_for(
        params: &EnumerationParams,
        nu: Vec<u32>,
        s: Vec<u32>,
        delta: Vec<u32>,
    ) -> Result<Self, GraphError> {
        let g = Self::canonicalize(nu, s, delta)?;
        g.check_params(params)?;
        Ok(g)
    }

    fn from_word(word: &[Triple]) -> Self {
        Self {
            m: word.len(),
            nu: word.iter().map(|t| t.0).collect(),
            s: word.iter().map(|t| t.1).collect(),
            delta: word.iter().map(|t| t.2).collect(),
        }
    }

    pub fn check_params(&self, params: &EnumerationParams) -> Result<(), GraphError> {
        if let Some(&label) = self.nu.iter().find(|&&l| l >= params.n) {
            return Err(GraphError::LabelOutOfRange { label, n: params.n });
        }
        let actual = self.degree();
        if actual != params.d {
            return Err(GraphError::DegreeMismatch {
                expected: params.d,
                actual,
            });
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn delta(&self) -> &[u32] {
        &self.delta
    }

    /// `Σ s + Σ delta`.
    pub fn degree(&self) -> u32 {
        self.s.iter().sum::<u32>() + self.delta.iter().sum::<u32>()
    }

    /// Number of vertices carrying torsion.
    pub fn mu(&self) -> usize {
        self.s.iter().filter(|&&x| x > 0).count()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.m
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.m - 1) % self.m
    }

    fn word(&self) -> impl Iterator<Item = Triple> + '_ {
        (0..self.m).map(|i| (self.nu[i], self.s[i], self.delta[i]))
    }
}

#[derive(Deserialize)]
struct RawGraph {
    m: usize,
    nu: Vec<u32>,
    s: Vec<u32>,
    delta: Vec<u32>,
}

impl TryFrom<RawGraph> for DecoratedGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        if raw.m != raw.nu.len() {
            return Err(GraphError::LengthMismatch {
                nu: raw.nu.len(),
                s: raw.m,
                delta: raw.m,
            });
        }
        Self::canonicalize(raw.nu, raw.s, raw.delta)
    }
}

impl Ord for DecoratedGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for DecoratedGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn validate(nu: &[u32], s: &[u32], delta: &[u32]) -> Result<(), GraphError> {
    if nu.len() != s.len() || nu.len() != delta.len() {
        return Err(GraphError::LengthMismatch {
            nu: nu.len(),
            s: s.len(),
            delta: delta.len(),
        });
    }
    let m = nu.len();
    if m < 2 {
        return Err(GraphError::TooShort);
    }
    for i in 0..m {
        let j = (i + 1) % m;
        if nu[i] == nu[j] {
            return Err(GraphError::AdjacentLabels { i, j, label: nu[i] });
        }
    }
    if let Some(edge) = delta.iter().position(|&x| x == 0) {
        return Err(GraphError::ZeroEdgeDegree { edge });
    }
    Ok(())
}

/// Mirror image keeping each edge between its endpoints:
/// `(ν₁,s₁,δ_m), (ν_m,s_m,δ_{m-1}), …, (ν₂,s₂,δ₁)`.
fn reflect(word: &[Triple]) -> Vec<Triple> {
    let m = word.len();
    (0..m)
        .map(|k| {
            let v = (m - k) % m;
            let e = (2 * m - k - 1) % m;
            (word[v].0, word[v].1, word[e].2)
        })
        .collect()
}

fn canonical_word(word: &[Triple]) -> Vec<Triple> {
    let m = word.len();
    let mirrored = reflect(word);
    let mut best: Option<Vec<Triple>> = None;
    for base in [word, mirrored.as_slice()] {
        for r in 0..m {
            let better = match &best {
                None => true,
                Some(b) => base[r..].iter().chain(&base[..r]).lt(b.iter()),
            };
            if better {
                best = Some(base[r..].iter().chain(&base[..r]).copied().collect());
            }
        }
    }
    best.expect("nonempty word")
}

/// Proper colourings of an `m`-cycle with `n` colours whose first vertex
/// carries the smallest label (every rotation class contains one).
fn cyclic_colorings(n: u32, m: usize) -> Vec<Vec<u32>> {
    fn extend(n: u32, m: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            if cur[m - 1] != cur[0] {
                out.push(cur.clone());
            }
            return;
        }
        let first = cur[0];
        let last = *cur.last().expect("seeded");
        for c in first..n {
            if c != last {
                cur.push(c);
                extend(n, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for first in 0..n {
        extend(n, m, &mut vec![first], &mut out);
    }
    out
}

/// Weak compositions of `total` into `cells` parts.
fn compositions(total: u32, cells: usize) -> Vec<Vec<u32>> {
    fn extend(rest: u32, cells: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == cells {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            extend(rest - x, cells, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(total, cells, &mut Vec::with_capacity(cells), &mut out);
    out
}

fn enumerate_cycle_length(params: &EnumerationParams, m: usize) -> HashSet<DecoratedGraph> {
    let excess = params.d - m as u32;
    let spreads = compositions(excess, 2 * m);
    let mut found = HashSet::new();
    for nu in cyclic_colorings(params.n, m) {
        for spread in &spreads {
            let s = spread[..m].to_vec();
            let delta = spread[m..].iter().map(|x| x + 1).collect();
            let g = DecoratedGraph::canonicalize(nu.clone(), s, delta)
                .expect("generated tuples satisfy the cycle constraints");
            found.insert(g);
        }
    }
    found
}

/// One canonical graph per isomorphism class, sorted.
pub fn enumerate(params: &EnumerationParams) -> BTreeSet<DecoratedGraph> {
    let lengths: Vec<usize> = (2..=params.d as usize).collect();
    lengths
        .into_par_iter()
        .map(|m| enumerate_cycle_length(params, m))
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect()
}

/// Oracle for [`enumerate`]: walk every raw tuple, expand its orbit under
/// the dihedral group explicitly (vertex permutations `i ↦ ±i + r`, edges
/// following their endpoints) and keep the least element of each orbit.
pub fn brute_force_enumerate(params: &EnumerationParams) -> BTreeSet<DecoratedGraph> {
    let n = params.n;
    let d = params.d;
    let mut seen: HashSet<Vec<Triple>> = HashSet::new();
    let mut reps = BTreeSet::new();
    for m in 1..=d as usize {
        let labels = product(m, 0, n - 1);
        let torsions = product(m, 0, d);
        let degrees = product(m, 1, d);
        for nu in &labels {
            if (0..m).any(|i| nu[i] == nu[(i + 1) % m]) {
                continue;
            }
            for s in &torsions {
                let ssum: u32 = s.iter().sum();
                if ssum + m as u32 > d {
                    continue;
                }
                for delta in &degrees {
                    if ssum + delta.iter().sum::<u32>() != d {
                        continue;
                    }
                    let word: Vec<Triple> = (0..m).map(|i| (nu[i], s[i], delta[i])).collect();
                    if seen.contains(&word) {
                        continue;
                    }
                    let orbit = dihedral_orbit(&word);
                    let least = orbit.iter().min().expect("orbit contains the word").clone();
                    seen.extend(orbit);
                    reps.insert(DecoratedGraph::from_word(&least));
                }
            }
        }
    }
    reps
}

/// All sequences of length `len` with entries in `lo..=hi`.
fn product(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn dihedral_orbit(word: &[Triple]) -> Vec<Vec<Triple>> {
    let m = word.len() as i64;
    let idx = |x: i64| x.rem_euclid(m) as usize;
    let mut orbit = Vec::with_capacity(2 * word.len());
    for r in 0..m {
        for sign in [1i64, -1] {
            // new vertex k sits where old vertex sign·k + r was; new edge k
            // (new k to new k+1) is old edge k + r, or r - k - 1 when reversed
            let image: Vec<Triple> = (0..m)
                .map(|k| {
                    let v = idx(sign * k + r);
                    let e = if sign == 1 { idx(k + r) } else { idx(r - k - 1) };
                    (word[v].0, word[v].1, word[e].2)
                })
                .collect();
            orbit.push(image);
        }
    }
    orbit
}
