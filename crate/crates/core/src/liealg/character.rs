use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};

use super::{cartan_for, CartanData, CartanType, Weight};

/// Finite integer combination of weights. Zero multiplicities are never stored.
///
/// Multiplicities may be negative: differences of characters live in the
/// same type, and "is a genuine character" is checked, not enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCharacter {
    algebra: CartanType,
    terms: HashMap<Weight, i64>,
}

impl ClassicalCharacter {
    pub fn zero(algebra: CartanType) -> Self {
        ClassicalCharacter {
            algebra,
            terms: HashMap::new(),
        }
    }

    /// The character of the trivial module.
    pub fn trivial(algebra: CartanType) -> Self {
        let mut c = Self::zero(algebra);
        c.terms.insert(Weight::zero(algebra.rank), 1);
        c
    }

    pub fn from_terms<I>(algebra: CartanType, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, i64)>,
    {
        let mut c = Self::zero(algebra);
        for (w, k) in terms {
            if w.len() != algebra.rank {
                return Err(Error::WeightRank {
                    weight: w.to_string(),
                    len: w.len(),
                    rank: algebra.rank,
                });
            }
            c.add_term(w, k)?;
        }
        Ok(c)
    }

    pub fn algebra(&self) -> CartanType {
        self.algebra
    }

    pub fn terms(&self) -> &HashMap<Weight, i64> {
        &self.terms
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by weight vector.
    pub fn sorted_terms(&self) -> Vec<(&Weight, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, &k)| (w, k)).collect();
        v.sort();
        v
    }

    pub fn add_term(&mut self, w: Weight, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry = error::add(*entry, k)?;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> Result<i64> {
        self.terms
            .values()
            .try_fold(0i64, |acc, &k| error::add(acc, k))
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.to_string(),
                right: other.algebra.to_string(),
            })
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Self, k: i64) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            let e = out.terms.entry(w.clone()).or_insert(0);
            *e = error::add(*e, error::mul(m, k)?)?;
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -1)
    }

    pub fn has_nonnegative_multiplicities(&self) -> bool {
        self.terms.values().all(|&k| k > 0)
    }

    /// Invariance under every simple reflection.
    pub fn is_weyl_symmetric(&self, cd: &CartanData) -> bool {
        (1..=cd.rank()).all(|i| {
            self.terms
                .iter()
                .all(|(w, &k)| self.mult(&cd.reflect(i, w)) == k)
        })
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            algebra: self.algebra,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, k)| TermJson {
                    weight: w.clone(),
                    mult: k,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CharacterJson) -> Result<Self> {
        Self::from_terms(
            json.algebra,
            json.terms.iter().map(|t| (t.weight.clone(), t.mult)),
        )
    }
}

/// Serialized character: `{"algebra":"B2","terms":[{"weight":[1,0],"mult":1},...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub algebra: CartanType,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub weight: Weight,
    pub mult: i64,
}

/// `prod_{alpha > 0} (hw + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(cd: &CartanData, hw: &Weight) -> Result<i64> {
    cd.check_weight(hw)?;
    hw.require_dominant()?;
    let shifted: Weight = hw.iter().map(|x| x + 1).collect();
    let rho = Weight::from(vec![1; cd.rank()]);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in cd.positive_roots() {
        num *= cd.pair_with_root(&shifted, alpha);
        den *= cd.pair_with_root(&rho, alpha);
    }
    if !(&num % &den).is_zero() {
        return Err(Error::NotACharacter(format!(
            "Weyl dimension of {hw} is not an integer"
        )));
    }
    (num / den).to_i64().ok_or(Error::Overflow)
}

type IrrKey = (CartanType, Weight);

static IRREDUCIBLES: Lazy<RwLock<HashMap<IrrKey, Arc<ClassicalCharacter>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Character of the simple module `V(hw)` via Freudenthal's recursion.
pub fn irreducible_character(cd: &CartanData, hw: &Weight) -> Result<ClassicalCharacter> {
    irreducible_shared(cd, hw).map(|c| (*c).clone())
}

pub(crate) fn irreducible_shared(cd: &CartanData, hw: &Weight) -> Result<Arc<ClassicalCharacter>> {
    cd.check_weight(hw)?;
    hw.require_dominant()?;
    let key = (cd.cartan_type(), hw.clone());
    if let Some(c) = IRREDUCIBLES.read().get(&key) {
        return Ok(c.clone());
    }
    let c = Arc::new(freudenthal(cd, hw)?);
    IRREDUCIBLES.write().insert(key, c.clone());
    Ok(c)
}

/// Weights are generated level by level below `hw`; for a weight
/// `mu = hw - sum d_j alpha_j`
///
/// ```text
/// mult(mu) * (hw - mu, hw + mu + 2 rho) = 2 sum_{alpha>0} sum_{k>=1} mult(mu + k alpha) (mu + k alpha, alpha)
/// ```
///
/// where both pairings are integral because `(lambda, alpha_j) = r_j lambda_j`.
fn freudenthal(cd: &CartanData, hw: &Weight) -> Result<ClassicalCharacter> {
    let n = cd.rank();
    let roots: Vec<(Vec<i64>, Weight)> = cd
        .positive_roots()
        .iter()
        .map(|a| (a.clone(), cd.root_to_weight(a)))
        .collect();
    let simple: Vec<Weight> = (1..=n).map(|j| cd.simple_root(j)).collect();
    let r = cd.root_lengths();

    let mut mults: HashMap<Weight, i64> = HashMap::new();
    mults.insert(hw.clone(), 1);
    let mut level: Vec<(Weight, Vec<i64>)> = vec![(hw.clone(), vec![0; n])];
    while !level.is_empty() {
        let mut seen = HashSet::new();
        let mut candidates = Vec::new();
        for (mu, d) in &level {
            for j in 0..n {
                let next = mu - &simple[j];
                if seen.insert(next.clone()) {
                    let mut dn = d.clone();
                    dn[j] += 1;
                    candidates.push((next, dn));
                }
            }
        }
        let mut next_level = Vec::new();
        for (mu, d) in candidates {
            let denom: i64 = (0..n).map(|j| d[j] * r[j] * (hw[j] + mu[j] + 2)).sum();
            let mut num = 0i64;
            for (alpha, alpha_w) in &roots {
                let mut up = &mu + alpha_w;
                while let Some(&m) = mults.get(&up) {
                    let pairing = cd.pair_with_root(&up, alpha);
                    num = error::add(num, error::mul(2, error::mul(m, pairing)?)?)?;
                    up = &up + alpha_w;
                }
            }
            if num == 0 {
                continue;
            }
            if denom <= 0 || num % denom != 0 {
                return Err(Error::NotACharacter(format!(
                    "Freudenthal recursion for {hw} is not integral at {mu}"
                )));
            }
            mults.insert(mu.clone(), num / denom);
            next_level.push((mu, d));
        }
        level = next_level;
    }
    ClassicalCharacter::from_terms(cd.cartan_type(), mults)
}

/// Product in the character ring: pointwise convolution of multiplicities.
pub fn tensor_character(
    a: &ClassicalCharacter,
    b: &ClassicalCharacter,
) -> Result<ClassicalCharacter> {
    a.same_algebra(b)?;
    let mut terms: HashMap<Weight, i64> = HashMap::with_capacity(a.len() * 2);
    for (wa, &ka) in &a.terms {
        for (wb, &kb) in &b.terms {
            let e = terms.entry(wa + wb).or_insert(0);
            *e = error::add(*e, error::mul(ka, kb)?)?;
        }
    }
    terms.retain(|_, v| *v != 0);
    Ok(ClassicalCharacter {
        algebra: a.algebra,
        terms,
    })
}

/// Product of a list of characters; the empty product is the trivial character.
pub fn tensor_product_all<'a, I>(algebra: CartanType, factors: I) -> Result<ClassicalCharacter>
where
    I: IntoIterator<Item = &'a ClassicalCharacter>,
{
    let mut acc = ClassicalCharacter::trivial(algebra);
    for f in factors {
        acc = tensor_character(&acc, f)?;
    }
    Ok(acc)
}

/// Expansion of a (possibly virtual) character in irreducible characters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub components: BTreeMap<Weight, i64>,
}

impl Decomposition {
    pub fn mult(&self, tau: &Weight) -> i64 {
        self.components.get(tau).copied().unwrap_or(0)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_genuine(&self) -> bool {
        self.components.values().all(|&k| k >= 0)
    }

    pub fn negative_components(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.components
            .iter()
            .filter(|(_, &k)| k < 0)
            .map(|(w, &k)| (w, k))
    }

    /// `sum_tau mult(tau) * dim V(tau)`.
    pub fn dimension(&self, cd: &CartanData) -> Result<i64> {
        self.components.iter().try_fold(0i64, |acc, (tau, &k)| {
            error::add(acc, error::mul(k, weyl_dimension(cd, tau)?)?)
        })
    }

    /// `sum_tau mult(tau) * char V(tau)`.
    pub fn recompose(&self, cd: &CartanData) -> Result<ClassicalCharacter> {
        let mut acc = ClassicalCharacter::zero(cd.cartan_type());
        for (tau, &k) in &self.components {
            let irr = irreducible_shared(cd, tau)?;
            acc = acc.add_scaled(&irr, k)?;
        }
        Ok(acc)
    }
}

const DECOMPOSE_ITERATION_CAP: usize = 1_000_000;

/// Strips irreducible characters off the top until nothing is left.
///
/// The next component is the dominant weight of largest height; ties go to
/// the lexicographically largest coordinate vector.
pub fn decompose(c: &ClassicalCharacter) -> Result<Decomposition> {
    let cd = cartan_for(c.algebra)?;
    let mut rem = c.terms.clone();
    let mut out = Decomposition::default();
    let mut iterations = 0usize;
    while !rem.is_empty() {
        iterations += 1;
        if iterations > DECOMPOSE_ITERATION_CAP {
            return Err(Error::NotACharacter(format!(
                "decomposition did not terminate after {DECOMPOSE_ITERATION_CAP} strips"
            )));
        }
        let top = rem
            .keys()
            .filter(|w| w.is_dominant())
            .max_by(|a, b| {
                cd.height_key(a)
                    .cmp(&cd.height_key(b))
                    .then_with(|| a.cmp(b))
            })
            .cloned();
        let Some(tau) = top else {
            let sample = rem.keys().min().map(|w| w.to_string()).unwrap_or_default();
            return Err(Error::NotACharacter(format!(
                "{} non-dominant weights remain with no dominant weight to strip (e.g. {sample})",
                rem.len()
            )));
        };
        let k = rem[&tau];
        let irr = irreducible_shared(&cd, &tau)?;
        for (w, &m) in &irr.terms {
            let e = rem.entry(w.clone()).or_insert(0);
            *e = error::add(*e, -error::mul(k, m)?)?;
            if *e == 0 {
                rem.remove(w);
            }
        }
        out.components.insert(tau, k);
    }
    Ok(out)
}
