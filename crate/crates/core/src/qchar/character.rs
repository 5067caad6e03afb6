use std::collections::{BTreeMap, HashMap};

use crate::error::{self, Error, Result};
use crate::liealg::{CartanData, CartanType, ClassicalCharacter, Weight};

use super::monomial::{a_pattern, YMonomial};
use super::sl2;

/// A q-character: a finite multiset of Y-monomials with a distinguished
/// highest monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    algebra: CartanType,
    highest: YMonomial,
    terms: HashMap<YMonomial, i64>,
}

impl QCharacter {
    pub fn new(
        algebra: CartanType,
        highest: YMonomial,
        terms: HashMap<YMonomial, i64>,
    ) -> Result<Self> {
        if terms.get(&highest) != Some(&1) {
            return Err(Error::InvalidArgument(format!(
                "highest monomial {highest} must occur with multiplicity 1"
            )));
        }
        if let Some((m, k)) = terms.iter().find(|(_, &k)| k <= 0) {
            return Err(Error::InvalidArgument(format!(
                "q-character term {m} has nonpositive multiplicity {k}"
            )));
        }
        Ok(QCharacter {
            algebra,
            highest,
            terms,
        })
    }

    /// The q-character of the trivial module: the empty monomial.
    pub fn trivial(algebra: CartanType) -> Self {
        QCharacter {
            algebra,
            highest: YMonomial::one(),
            terms: HashMap::from([(YMonomial::one(), 1)]),
        }
    }

    pub fn algebra(&self) -> CartanType {
        self.algebra
    }

    pub fn highest(&self) -> &YMonomial {
        &self.highest
    }

    pub fn terms(&self) -> &HashMap<YMonomial, i64> {
        &self.terms
    }

    pub fn mult(&self, m: &YMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> Result<i64> {
        self.terms.values().try_fold(0i64, |a, &k| error::add(a, k))
    }

    /// Terms sorted by monomial.
    pub fn sorted_terms(&self) -> Vec<(&YMonomial, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &k)| (m, k)).collect();
        v.sort();
        v
    }

    /// The same q-character with every spectral parameter multiplied by `q^by`.
    pub fn shifted(&self, by: i32) -> Result<Self> {
        if by == 0 {
            return Ok(self.clone());
        }
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, &k) in &self.terms {
            terms.insert(m.shifted(by)?, k);
        }
        Ok(QCharacter {
            algebra: self.algebra,
            highest: self.highest.shifted(by)?,
            terms,
        })
    }

    pub fn dominant_monomials(&self) -> BTreeMap<YMonomial, i64> {
        dominant_monomials(&self.terms)
    }

    /// `Y_{i,c} -> omega_i`; multiplicities add.
    pub fn restrict_classical(&self) -> Result<ClassicalCharacter> {
        restrict_terms(self.algebra, &self.terms)
    }
}

/// Dominant part of a monomial multiset.
pub fn dominant_monomials(terms: &HashMap<YMonomial, i64>) -> BTreeMap<YMonomial, i64> {
    terms
        .iter()
        .filter(|(m, _)| m.is_dominant())
        .map(|(m, &k)| (m.clone(), k))
        .collect()
}

pub(crate) fn restrict_terms(
    algebra: CartanType,
    terms: &HashMap<YMonomial, i64>,
) -> Result<ClassicalCharacter> {
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (m, &k) in terms {
        let e = acc.entry(m.classical_weight(algebra.rank)).or_insert(0);
        *e = error::add(*e, k)?;
    }
    ClassicalCharacter::from_terms(algebra, acc)
}

/// Product in the Grothendieck ring, at the level of monomial multisets.
pub fn qchar_product(a: &QCharacter, b: &QCharacter) -> Result<QCharacter> {
    if a.algebra != b.algebra {
        return Err(Error::AlgebraMismatch {
            left: a.algebra.to_string(),
            right: b.algebra.to_string(),
        });
    }
    let mut terms: HashMap<YMonomial, i64> = HashMap::with_capacity(a.len() * b.len());
    for (ma, &ka) in &a.terms {
        for (mb, &kb) in &b.terms {
            let e = terms.entry(ma.mul(mb)?).or_insert(0);
            *e = error::add(*e, error::mul(ka, kb)?)?;
        }
    }
    Ok(QCharacter {
        algebra: a.algebra,
        highest: a.highest.mul(&b.highest)?,
        terms,
    })
}

/// Representative of the coset `m * <A_{i,c} : c>` whose `Y_i` factors
/// all sit at the lowest position `>= floor` of their residue class mod `2 r_i`.
fn node_coset_representative(
    cd: &CartanData,
    m: &YMonomial,
    i: usize,
    floor: i32,
) -> Result<YMonomial> {
    let r = cd.root_length(i) as i32;
    let step = 2 * r;
    let base = |p: i32| floor + (p - floor).rem_euclid(step);
    let pattern = a_pattern(cd, i);
    let mut rep = m.clone();
    loop {
        let top = rep
            .node_part(i)
            .filter(|&(p, _)| p != base(p))
            .max_by_key(|&(p, _)| p);
        let Some((p, e)) = top else { break };
        // multiply by A_{i,p-r}^{-e}: moves the exponent from p down to p - 2r
        let a =
            YMonomial::from_factors(pattern.iter().map(|&(j, off, x)| (j, p - r + off, -x * e)))?;
        rep = rep.mul(&a)?;
    }
    Ok(rep)
}

/// Checks the rank-one closure property in direction `i`: grouping the
/// terms into cosets modulo the `A_{i,*}`, the `Y_i` parts of every group
/// form a nonnegative sum of simple `U_{q_i}(sl_2^)` q-characters.
pub fn node_string_closure(cd: &CartanData, qc: &QCharacter, i: usize) -> Result<bool> {
    cd.check_node(i)?;
    let floor = qc
        .terms
        .keys()
        .flat_map(|m| m.node_part(i).map(|(p, _)| p))
        .min()
        .unwrap_or(0)
        - 2 * cd.root_length(i) as i32;
    let mut groups: HashMap<YMonomial, HashMap<BTreeMap<i32, i32>, i64>> = HashMap::new();
    for (m, &k) in &qc.terms {
        let rep = node_coset_representative(cd, m, i, floor)?;
        let part: BTreeMap<i32, i32> = m.node_part(i).collect();
        *groups.entry(rep).or_default().entry(part).or_insert(0) += k;
    }
    let r = cd.root_length(i) as i32;
    Ok(groups
        .values()
        .all(|g| sl2::is_sum_of_simple_characters(g, r)))
}
