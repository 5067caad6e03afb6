//! Classical characters of KR modules, their tensor products `KR(lambda, i)`,
//! and the verification routines built on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{self, Error, Result};
use crate::liealg::{
    decompose, irreducible_shared, tensor_character, tensor_product_all, weyl_dimension,
    CartanData, CartanType, ClassicalCharacter, Decomposition, Weight,
};
use crate::partitions::{cover_edges, partitions_of, reverse_dominance_leq, Partition};
use crate::qchar::QCharCache;

type ClassicalKey = (CartanType, usize, u32);

static KR_CLASSICAL: Lazy<RwLock<HashMap<ClassicalKey, Arc<ClassicalCharacter>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Character of `KR(m omega_i)`: the classical restriction of the FM q-character.
pub fn kr_character(cd: &CartanData, i: usize, m: u32) -> Result<Arc<ClassicalCharacter>> {
    cd.check_node(i)?;
    let key = (cd.cartan_type(), i, m);
    if let Some(c) = KR_CLASSICAL.read().get(&key) {
        return Ok(c.clone());
    }
    let qc = QCharCache::global().kr_base(cd.cartan_type(), i, m)?;
    let c = Arc::new(qc.restrict_classical()?);
    KR_CLASSICAL.write().insert(key, c.clone());
    Ok(c)
}

/// `KR(m_1 omega_i) (x) ... (x) KR(m_k omega_i)`.
#[derive(Debug, Clone)]
pub struct KRTensor {
    pub algebra: Arc<CartanData>,
    pub node: usize,
    pub partition: Partition,
}

impl KRTensor {
    pub fn new(algebra: Arc<CartanData>, node: usize, partition: Partition) -> Result<Self> {
        algebra.check_node(node)?;
        Ok(KRTensor {
            algebra,
            node,
            partition,
        })
    }

    pub fn highest_weight(&self) -> Weight {
        Weight::fundamental_multiple(
            self.algebra.rank(),
            self.node,
            self.partition.total() as i64,
        )
    }

    pub fn character(&self) -> Result<ClassicalCharacter> {
        let factors = self
            .partition
            .parts()
            .iter()
            .map(|&m| kr_character(&self.algebra, self.node, m))
            .collect::<Result<Vec<_>>>()?;
        tensor_product_all(
            self.algebra.cartan_type(),
            factors.iter().map(|c| c.as_ref()),
        )
    }

    pub fn dimension(&self) -> Result<i64> {
        self.partition.parts().iter().try_fold(1i64, |acc, &m| {
            error::mul(acc, kr_character(&self.algebra, self.node, m)?.dimension()?)
        })
    }
}

/// `tau -> dim Hom(KR(lambda, i), V(tau))`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MultiplicityVector(pub BTreeMap<Weight, i64>);

impl MultiplicityVector {
    pub fn get(&self, tau: &Weight) -> i64 {
        self.0.get(tau).copied().unwrap_or(0)
    }

    /// `sum_tau mult(tau) dim V(tau)`.
    pub fn dimension(&self, cd: &CartanData) -> Result<i64> {
        self.0.iter().try_fold(0i64, |acc, (tau, &k)| {
            error::add(acc, error::mul(k, weyl_dimension(cd, tau)?)?)
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("tau\tmult\n");
        for (tau, k) in &self.0 {
            let _ = writeln!(s, "{tau}\t{k}");
        }
        s
    }
}

pub fn kr_tensor_multiplicities(t: &KRTensor) -> Result<MultiplicityVector> {
    let d = decompose(&t.character()?)?;
    if !d.is_genuine() {
        return Err(Error::Violation(format!(
            "tensor product for {} has negative components",
            t.partition
        )));
    }
    let top = t.highest_weight();
    let k = d.mult(&top);
    if k != 1 {
        return Err(Error::Violation(format!(
            "weight {top} has multiplicity {k} in KR({}, {})",
            t.partition, t.node
        )));
    }
    Ok(MultiplicityVector(d.components))
}

/// Which pairs of `P(m)` the main-theorem check walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairMode {
    /// Cover relations only; enough by transitivity.
    #[default]
    Covers,
    AllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainTheoremViolation {
    pub lambda: Partition,
    pub mu: Partition,
    pub tau: Weight,
    pub lambda_mult: i64,
    pub mu_mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub algebra: String,
    pub node: usize,
    pub m: u32,
    pub pairs: usize,
    pub violations: Vec<MainTheoremViolation>,
}

impl MainTheoremReport {
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("algebra\tnode\tm\tlambda\tmu\ttau\tlambda_mult\tmu_mult\n");
        for v in &self.violations {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                self.algebra, self.node, self.m, v.lambda, v.mu, v.tau, v.lambda_mult, v.mu_mult
            );
        }
        s
    }
}

/// Multiplicity vectors of `KR(lambda, i)` for every `lambda` in `P(m)`, in enumeration order.
pub fn multiplicity_table(
    cd: &Arc<CartanData>,
    i: usize,
    m: u32,
) -> Result<Vec<(Partition, MultiplicityVector)>> {
    cd.check_node(i)?;
    // fill the shared caches first so the parallel tasks only read
    for level in 0..=m {
        kr_character(cd, i, level)?;
    }
    partitions_of(m, None)
        .into_par_iter()
        .map(|p| {
            let t = KRTensor::new(cd.clone(), i, p.clone())?;
            Ok((p, kr_tensor_multiplicities(&t)?))
        })
        .collect()
}

/// Checks `mult_lambda(tau) <= mult_mu(tau)` for every comparable `lambda <= mu` in `P(m)`.
pub fn verify_main_theorem(
    cd: &Arc<CartanData>,
    i: usize,
    m: u32,
    mode: PairMode,
) -> Result<MainTheoremReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let table = multiplicity_table(cd, i, m)?;
    let by_partition: HashMap<&Partition, &MultiplicityVector> =
        table.iter().map(|(p, v)| (p, v)).collect();
    let pairs: Vec<(Partition, Partition)> = match mode {
        PairMode::Covers => cover_edges(m),
        PairMode::AllPairs => {
            let all = partitions_of(m, None);
            let mut out = Vec::new();
            for a in &all {
                for b in &all {
                    if a != b && reverse_dominance_leq(a, b)? {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
            out
        }
    };
    let mut violations = Vec::new();
    for (lambda, mu) in &pairs {
        let (lo, hi) = (by_partition[lambda], by_partition[mu]);
        let mut taus: Vec<&Weight> = lo.0.keys().chain(hi.0.keys()).collect();
        taus.sort();
        taus.dedup();
        for tau in taus {
            let (a, b) = (lo.get(tau), hi.get(tau));
            if a > b {
                violations.push(MainTheoremViolation {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    tau: tau.clone(),
                    lambda_mult: a,
                    mu_mult: b,
                });
            }
        }
    }
    Ok(MainTheoremReport {
        algebra: cd.cartan_type().to_string(),
        node: i,
        m,
        pairs: pairs.len(),
        violations,
    })
}

/// `char KR(m omega_i)^2 - char KR((m+1) omega_i) char KR((m-1) omega_i)`.
pub fn qsystem_difference(cd: &CartanData, i: usize, m: u32) -> Result<ClassicalCharacter> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let w = kr_character(cd, i, m)?;
    let up = kr_character(cd, i, m + 1)?;
    let down = kr_character(cd, i, m - 1)?;
    let diff = tensor_character(&w, &w)?.difference(&tensor_character(&up, &down)?)?;
    if let Some((tau, _)) = decompose(&diff)?.negative_components().next() {
        return Err(Error::QSystemViolation {
            algebra: cd.cartan_type().to_string(),
            node: i,
            level: m,
            weight: tau.to_string(),
        });
    }
    Ok(diff)
}

/// `char KR(mu, i) - char KR(lambda, i)` for `lambda <= mu`.
pub fn kernel_character(
    cd: &Arc<CartanData>,
    i: usize,
    mu: &Partition,
    lambda: &Partition,
) -> Result<ClassicalCharacter> {
    if !reverse_dominance_leq(lambda, mu)? {
        return Err(Error::Incomparable {
            lower: lambda.to_string(),
            upper: mu.to_string(),
        });
    }
    let upper = KRTensor::new(cd.clone(), i, mu.clone())?.character()?;
    let lower = KRTensor::new(cd.clone(), i, lambda.clone())?.character()?;
    let diff = upper.difference(&lower)?;
    if let Some((tau, k)) = decompose(&diff)?.negative_components().next() {
        return Err(Error::Violation(format!(
            "kernel of KR({mu}, {i}) -> KR({lambda}, {i}) has V({tau}) with multiplicity {k}"
        )));
    }
    Ok(diff)
}

pub const FACTOR_LIMIT: usize = 6;
pub const CANDIDATE_LIMIT: usize = 100_000;

/// The dominant weight above every weight of `c`, if there is one.
fn unique_top(cd: &CartanData, c: &ClassicalCharacter) -> Option<Weight> {
    let top = c
        .terms()
        .keys()
        .filter(|w| w.is_dominant())
        .max_by(|a, b| {
            cd.height_key(a)
                .cmp(&cd.height_key(b))
                .then_with(|| a.cmp(b))
        })?
        .clone();
    c.terms()
        .keys()
        .all(|w| cd.weight_leq(w, &top))
        .then_some(top)
}

/// Searches for `c = char KR(m_1 omega_{i_1}) ... char KR(m_s omega_{i_s})`.
///
/// Candidates have highest weights summing to the top weight of `c` and are
/// tried by number of factors, then lexicographically. Returns
/// `Error::SearchTruncated` when nothing matched but some candidates were
/// skipped by the size or count limits.
pub fn is_kr_tensor_factorizable(
    cd: &CartanData,
    c: &ClassicalCharacter,
) -> Result<Option<Vec<(usize, u32)>>> {
    if c.algebra() != cd.cartan_type() {
        return Err(Error::AlgebraMismatch {
            left: c.algebra().to_string(),
            right: cd.cartan_type().to_string(),
        });
    }
    if c.is_zero() || !decompose(c)?.is_genuine() {
        return Err(Error::InvalidArgument(
            "factorization needs a nonzero genuine character".into(),
        ));
    }
    let top = unique_top(cd, c)
        .ok_or_else(|| Error::InvalidArgument("character has no unique maximal weight".into()))?;

    // per node, the partitions of the top coordinate
    let per_node: Vec<Vec<Vec<u32>>> = (1..=cd.rank())
        .map(|j| match top[j - 1] {
            0 => vec![Vec::new()],
            t => partitions_of(t as u32, None)
                .into_iter()
                .map(|p| p.parts().to_vec())
                .collect(),
        })
        .collect();
    let mut candidates: Vec<Vec<(usize, u32)>> = vec![Vec::new()];
    let mut truncated = false;
    for (j, options) in per_node.iter().enumerate() {
        let mut next = Vec::new();
        for base in &candidates {
            for p in options {
                if base.len() + p.len() > FACTOR_LIMIT {
                    truncated = true;
                    continue;
                }
                if next.len() >= CANDIDATE_LIMIT {
                    truncated = true;
                    break;
                }
                let mut cand = base.clone();
                cand.extend(p.iter().map(|&m| (j + 1, m)));
                next.push(cand);
            }
        }
        candidates = next;
    }
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let dim = c.dimension()?;
    for cand in candidates {
        let mut d = 1i64;
        for &(j, m) in &cand {
            d = error::mul(d, kr_character(cd, j, m)?.dimension()?)?;
        }
        if d != dim {
            continue;
        }
        let factors = cand
            .iter()
            .map(|&(j, m)| kr_character(cd, j, m))
            .collect::<Result<Vec<_>>>()?;
        let product = tensor_product_all(cd.cartan_type(), factors.iter().map(|f| f.as_ref()))?;
        if &product == c {
            return Ok(Some(cand));
        }
    }
    if truncated {
        Err(Error::SearchTruncated(CANDIDATE_LIMIT))
    } else {
        Ok(None)
    }
}

/// Signed decomposition of `V(mu_1) V(mu_2) - V(lambda_1) V(lambda_2)`.
pub fn schur_difference(
    cd: &CartanData,
    mu: (&Weight, &Weight),
    lambda: (&Weight, &Weight),
) -> Result<Decomposition> {
    if mu.0 + mu.1 != lambda.0 + lambda.1 {
        return Err(Error::InvalidArgument(format!(
            "pair sums differ: {} vs {}",
            mu.0 + mu.1,
            lambda.0 + lambda.1
        )));
    }
    let product = |a: &Weight, b: &Weight| -> Result<ClassicalCharacter> {
        let (x, y) = (irreducible_shared(cd, a)?, irreducible_shared(cd, b)?);
        tensor_character(&x, &y)
    };
    decompose(&product(mu.0, mu.1)?.difference(&product(lambda.0, lambda.1)?)?)
}
