//! Torus weights on the normal bundles of the fixed loci, and the
//! Białynicki-Birula sum
//!
//! ```text
//! P(t) = Σ_loci P_locus(t) · t^{2 · #positive weights}
//! ```
//!
//! A one-parameter subgroup acts on `ℂⁿ` with strictly increasing integer
//! weights `w_0 < … < w_{n-1}`. There are two kinds of fixed loci:
//!
//! - type A: `n` copies of the `n = 1` space, the `ℓ`-th with `d·ℓ` positive
//!   normal weights;
//! - type B: one point-like locus per decorated cycle (see [`crate::graph_enum`]),
//!   with Poincaré polynomial `∏_{s_i>0} (1+t²)^{s_i-1}` and normal weights
//!   from three families (edge deformations, node smoothings, torsion).
//!
//! All weights are exact rationals; signs are decided exactly.

use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::genus1::{self, Genus1Error};
use crate::graph_enum::{enumerate, DecoratedGraph, EnumerationParams, GraphError};
use crate::polynomial::IntPolynomial;

pub type Weight = BigRational;

/// Doublings of the base `K` tried before giving up on a zero-free vector.
const MAX_ESCALATIONS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("weights must be strictly increasing, got {0:?}")]
    NotIncreasing(Vec<String>),
    #[error("weight vector has {actual} entries, expected n = {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("weight base K must be at least 2, got {0}")]
    InvalidSeed(u64),
    #[error("zero weight at position {position} of graph {graph:?}")]
    ZeroWeight { graph: DecoratedGraph, position: usize },
    #[error("graph {graph:?} has {actual} normal weights, expected {expected}")]
    CardinalityMismatch {
        graph: DecoratedGraph,
        expected: usize,
        actual: usize,
    },
    #[error("no zero-free weight vector found up to K = {last_k}")]
    EscalationExhausted { last_k: BigInt },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Genus1(#[from] Genus1Error),
}

/// Which label the second family of edge weights skips besides `ν_i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ExclusionRule {
    /// Skip `ν_{i+1}`: the fibre at the far end of the edge is subtracted.
    #[default]
    Successor,
    /// Skip `ν_{i-1}`.
    Predecessor,
}

/// How node-smoothing weights are formed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NodeSmoothing {
    /// Sum of the branch tangent weights, `(w_b - w_a)/δ` on each edge.
    #[default]
    Tangent,
    /// Undivided differences `w_b - w_a`. Agrees in sign with `Tangent`
    /// whenever the two edges at a node have equal degree.
    Printed,
}

impl fmt::Display for ExclusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionRule::Successor => "successor",
            ExclusionRule::Predecessor => "predecessor",
        })
    }
}

impl fmt::Display for NodeSmoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeSmoothing::Tangent => "tangent",
            NodeSmoothing::Printed => "printed",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalizationConfig {
    pub exclusion: ExclusionRule,
    pub smoothing: NodeSmoothing,
    /// Starting base for [`choose_generic_weights`]; `d + 2` when unset.
    pub weight_seed_k: Option<u64>,
}

/// Strictly increasing integer weights without a common factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigInt>);

impl WeightVector {
    pub fn new(weights: Vec<BigInt>) -> Result<Self, LocalizationError> {
        if weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LocalizationError::NotIncreasing(
                weights.iter().map(ToString::to_string).collect(),
            ));
        }
        let g = weights.iter().fold(BigInt::zero(), |acc, w| acc.gcd(w));
        let weights = if g > BigInt::one() {
            weights.into_iter().map(|w| w / &g).collect()
        } else {
            weights
        };
        Ok(Self(weights))
    }

    pub fn from_i64s(weights: &[i64]) -> Result<Self, LocalizationError> {
        Self::new(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    /// `(1, K, K², …, K^{n-1})`.
    pub fn geometric(n: usize, k: &BigInt) -> Result<Self, LocalizationError> {
        let mut w = Vec::with_capacity(n);
        let mut cur = BigInt::one();
        for _ in 0..n {
            w.push(cur.clone());
            cur *= k;
        }
        Self::new(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    fn at(&self, label: u32) -> Weight {
        BigRational::from_integer(self.0[label as usize].clone())
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

fn ratio(num: i64, den: u32) -> Weight {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Weights of the deformations of edge `i`: `2δ_i - 1` tangent-line weights
/// and `(n-2)·δ_i` weights pointing out of the line.
pub fn weights_n1(g: &DecoratedGraph, i: usize, w: &WeightVector, rule: ExclusionRule) -> Vec<Weight> {
    let a = g.nu()[i];
    let b = g.nu()[g.next(i)];
    let delta = g.delta()[i];
    let (wa, wb) = (w.at(a), w.at(b));
    let mut out = Vec::new();

    let along = &wa - &wb;
    let d = i64::from(delta);
    for c in (-d..=-1).chain(1..d) {
        out.push(ratio(c, delta) * &along);
    }

    let skipped = match rule {
        ExclusionRule::Successor => b,
        ExclusionRule::Predecessor => g.nu()[g.prev(i)],
    };
    for j in (0..w.len() as u32).filter(|&j| j != a && j != skipped) {
        let wj = w.at(j);
        for c in 0..d {
            let point = ratio(d - c, delta) * &wa + ratio(c, delta) * &wb;
            out.push(&wj - point);
        }
    }
    out
}

/// Weights of smoothing the node(s) at vertex `i`: one when `s_i = 0`, two
/// (one per node on the contracted component) otherwise.
pub fn weights_n2(g: &DecoratedGraph, i: usize, w: &WeightVector, smoothing: NodeSmoothing) -> Vec<Weight> {
    let here = w.at(g.nu()[i]);
    let out_edge = i;
    let in_edge = g.prev(i);
    let toward_next = w.at(g.nu()[g.next(i)]) - &here;
    let toward_prev = w.at(g.nu()[g.prev(i)]) - &here;
    let (t_next, t_prev) = match smoothing {
        NodeSmoothing::Tangent => (
            toward_next / BigInt::from(g.delta()[out_edge]),
            toward_prev / BigInt::from(g.delta()[in_edge]),
        ),
        NodeSmoothing::Printed => (toward_next, toward_prev),
    };
    if g.s()[i] == 0 {
        vec![t_next + t_prev]
    } else {
        vec![t_next, t_prev]
    }
}

/// Torsion weights: `w_j - w_{ν_i}` for every `j ≠ ν_i`, each `s_i` times.
pub fn weights_n3(g: &DecoratedGraph, i: usize, w: &WeightVector) -> Vec<Weight> {
    let label = g.nu()[i];
    let here = w.at(label);
    let mult = g.s()[i] as usize;
    (0..w.len() as u32)
        .filter(|&j| j != label)
        .flat_map(|j| std::iter::repeat_n(w.at(j) - &here, mult))
        .collect()
}

/// All normal weights of the locus, vertex by vertex: edge `i`, node `i`,
/// torsion at `i`.
pub fn normal_weights(g: &DecoratedGraph, w: &WeightVector, cfg: &LocalizationConfig) -> Vec<Weight> {
    (0..g.m())
        .flat_map(|i| {
            let mut v = weights_n1(g, i, w, cfg.exclusion);
            v.extend(weights_n2(g, i, w, cfg.smoothing));
            v.extend(weights_n3(g, i, w));
            v
        })
        .collect()
}

/// Codimension of a type B locus: `n·d - Σ_{s_i>0} (s_i - 1)`.
pub fn expected_weight_count(g: &DecoratedGraph, n: usize) -> usize {
    let correction: u32 = g.s().iter().filter(|&&s| s > 0).map(|s| s - 1).sum();
    n * g.degree() as usize - correction as usize
}

/// `∏_{s_i>0} (1+t²)^{s_i-1}`.
pub fn type_b_poincare(g: &DecoratedGraph) -> IntPolynomial {
    let exp: u32 = g.s().iter().filter(|&&s| s > 0).map(|s| s - 1).sum();
    IntPolynomial::one_plus_power(2).pow(exp)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LocusKind {
    TypeA { ell: u32 },
    TypeB { graph: DecoratedGraph },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocusRecord {
    pub kind: LocusKind,
    pub poincare: IntPolynomial,
    pub positive_weight_count: usize,
    /// Type B only.
    pub weights: Option<Vec<Weight>>,
}

impl FixedLocusRecord {
    /// Degree shift `2 · #positive weights` of this locus' cell.
    pub fn shift(&self) -> usize {
        2 * self.positive_weight_count
    }

    pub fn contribution(&self) -> IntPolynomial {
        self.poincare.shift(self.shift())
    }

    pub fn graph(&self) -> Option<&DecoratedGraph> {
        match &self.kind {
            LocusKind::TypeB { graph } => Some(graph),
            LocusKind::TypeA { .. } => None,
        }
    }
}

impl Serialize for FixedLocusRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.kind {
            LocusKind::TypeA { ell } => {
                let mut st = serializer.serialize_struct("FixedLocus", 4)?;
                st.serialize_field("kind", "A")?;
                st.serialize_field("ell", ell)?;
                st.serialize_field("shift", &self.shift())?;
                st.serialize_field("poincare", &self.poincare)?;
                st.end()
            }
            LocusKind::TypeB { graph } => {
                let mut st = serializer.serialize_struct("FixedLocus", 5)?;
                st.serialize_field("kind", "B")?;
                st.serialize_field("graph", graph)?;
                st.serialize_field("shift", &self.shift())?;
                st.serialize_field("poincare", &self.poincare)?;
                let weights: Vec<String> = self.weights.iter().flatten().map(ToString::to_string).collect();
                st.serialize_field("weights", &weights)?;
                st.end()
            }
        }
    }
}

pub fn type_b_record(
    g: &DecoratedGraph,
    w: &WeightVector,
    cfg: &LocalizationConfig,
) -> Result<FixedLocusRecord, LocalizationError> {
    let weights = normal_weights(g, w, cfg);
    if let Some(position) = weights.iter().position(Zero::is_zero) {
        return Err(LocalizationError::ZeroWeight {
            graph: g.clone(),
            position,
        });
    }
    let expected = expected_weight_count(g, w.len());
    if weights.len() != expected {
        return Err(LocalizationError::CardinalityMismatch {
            graph: g.clone(),
            expected,
            actual: weights.len(),
        });
    }
    let positive_weight_count = weights.iter().filter(|x| x.is_positive()).count();
    Ok(FixedLocusRecord {
        kind: LocusKind::TypeB { graph: g.clone() },
        poincare: type_b_poincare(g),
        positive_weight_count,
        weights: Some(weights),
    })
}

pub fn type_a_records(n: u32, d: u32) -> Result<Vec<FixedLocusRecord>, LocalizationError> {
    let poincare = genus1::fixed_locus_polynomial(u64::from(d))?;
    Ok((0..n)
        .map(|ell| FixedLocusRecord {
            kind: LocusKind::TypeA { ell },
            poincare: poincare.clone(),
            positive_weight_count: (d * ell) as usize,
            weights: None,
        })
        .collect())
}

pub fn verify_no_zero_weights(
    graphs: &[DecoratedGraph],
    w: &WeightVector,
    cfg: &LocalizationConfig,
) -> Result<(), LocalizationError> {
    graphs.par_iter().try_for_each(
        |g| match normal_weights(g, w, cfg).iter().position(Zero::is_zero) {
            Some(position) => Err(LocalizationError::ZeroWeight {
                graph: g.clone(),
                position,
            }),
            None => Ok(()),
        },
    )
}

/// Try `w_j = K^j` starting from `K = weight_seed_k.unwrap_or(d + 2)`,
/// doubling `K` until no weight of any graph vanishes.
pub fn choose_generic_weights(
    n: u32,
    d: u32,
    graphs: &[DecoratedGraph],
    cfg: &LocalizationConfig,
) -> Result<WeightVector, LocalizationError> {
    let seed = cfg.weight_seed_k.unwrap_or(u64::from(d) + 2);
    if seed < 2 {
        return Err(LocalizationError::InvalidSeed(seed));
    }
    let mut k = BigInt::from(seed);
    for _ in 0..MAX_ESCALATIONS {
        let w = WeightVector::geometric(n as usize, &k)?;
        match verify_no_zero_weights(graphs, &w, cfg) {
            Ok(()) => return Ok(w),
            Err(LocalizationError::ZeroWeight { .. }) => k *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(LocalizationError::EscalationExhausted { last_k: k / 2 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub n: u32,
    pub d: u32,
    pub config: LocalizationConfig,
    pub weights: WeightVector,
    pub poincare: IntPolynomial,
    /// Type A by `ℓ`, then type B in canonical graph order.
    pub records: Vec<FixedLocusRecord>,
}

impl Serialize for Assembly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Assembly", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("exclusion", &self.config.exclusion)?;
        st.serialize_field("smoothing", &self.config.smoothing)?;
        st.serialize_field("weights", &self.weights)?;
        st.serialize_field("poincare", &self.poincare)?;
        st.serialize_field("loci", &self.records)?;
        st.end()
    }
}

impl Assembly {
    pub fn type_b_records(&self) -> impl Iterator<Item = &FixedLocusRecord> {
        self.records.iter().filter(|r| r.graph().is_some())
    }

    /// Betti numbers `h^0, h^1, …, h^{2nd}`.
    pub fn betti_numbers(&self) -> Vec<BigInt> {
        let top = 2 * (self.n * self.d) as usize;
        (0..=top).map(|k| self.poincare.coeff(k)).collect()
    }
}

/// Assemble with an explicit weight vector (which must be zero-free for
/// every graph).
pub fn assemble_with_weights(
    n: u32,
    d: u32,
    graphs: &[DecoratedGraph],
    weights: WeightVector,
    cfg: &LocalizationConfig,
) -> Result<Assembly, LocalizationError> {
    if weights.len() != n as usize {
        return Err(LocalizationError::WrongLength {
            expected: n as usize,
            actual: weights.len(),
        });
    }
    let mut records = type_a_records(n, d)?;
    let type_b: Vec<FixedLocusRecord> = graphs
        .par_iter()
        .map(|g| type_b_record(g, &weights, cfg))
        .collect::<Result<_, _>>()?;
    records.extend(type_b);
    let poincare = records.iter().map(FixedLocusRecord::contribution).sum();
    Ok(Assembly {
        n,
        d,
        config: *cfg,
        weights,
        poincare,
        records,
    })
}

pub fn assemble_poincare(n: u32, d: u32, cfg: &LocalizationConfig) -> Result<Assembly, LocalizationError> {
    let params = EnumerationParams::new(n, d)?;
    let graphs: Vec<DecoratedGraph> = enumerate(&params).into_iter().collect();
    let weights = choose_generic_weights(n, d, &graphs, cfg)?;
    assemble_with_weights(n, d, &graphs, weights, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl InvariantCheck {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Structural checks on an assembled space: odd vanishing, `h² = 2`,
/// endpoints, duality, Euler bookkeeping, and per-locus weight sanity.
pub fn check_invariants(a: &Assembly) -> Vec<InvariantCheck> {
    let p = &a.poincare;
    let top = 2 * (a.n * a.d) as usize;
    let one = BigInt::one();
    let mut checks = vec![
        InvariantCheck::new("odd-vanishing", p.odd_coefficients_vanish(), p.to_string()),
        InvariantCheck::new(
            "degree",
            p.degree() == Some(top),
            format!("expected {top}, got {:?}", p.degree()),
        ),
        InvariantCheck::new("constant-term", p.coeff(0) == one, p.coeff(0).to_string()),
        InvariantCheck::new("top-coefficient", p.coeff(top) == one, p.coeff(top).to_string()),
        InvariantCheck::new("palindrome", p.is_palindromic(top), format!("window {top}")),
    ];
    if a.n >= 2 || a.d >= 2 {
        checks.push(InvariantCheck::new(
            "h2",
            p.coeff(2) == BigInt::from(2),
            p.coeff(2).to_string(),
        ));
    }

    let record_sum: BigInt = a.records.iter().map(|r| r.poincare.eval_at_one()).sum();
    checks.push(InvariantCheck::new(
        "euler",
        p.eval_at_one() == record_sum,
        format!("{} vs {}", p.eval_at_one(), record_sum),
    ));

    let few_positive: Vec<&DecoratedGraph> = a
        .type_b_records()
        .filter(|r| r.positive_weight_count < 2)
        .filter_map(FixedLocusRecord::graph)
        .collect();
    checks.push(InvariantCheck::new(
        "type-b-positive-weights",
        few_positive.is_empty(),
        format!("{few_positive:?}"),
    ));

    let wrong_size: Vec<&DecoratedGraph> = a
        .type_b_records()
        .filter(|r| {
            let g = r.graph().expect("type B");
            r.weights.as_ref().map(Vec::len) != Some(expected_weight_count(g, a.n as usize))
        })
        .filter_map(FixedLocusRecord::graph)
        .collect();
    checks.push(InvariantCheck::new(
        "cardinality",
        wrong_size.is_empty(),
        format!("{wrong_size:?}"),
    ));
    checks
}
