use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{self, Error, Result};
use crate::liealg::{CartanData, ClassicalCharacter, Weight};

use super::cache::QCharCache;
use super::character::QCharacter;
use super::monomial::{a_exponents, a_monomial, YMonomial};
use super::sl2::string_decomposition;

/// Products are compared bucket by bucket (bucket = monomial fingerprint
/// modulo the bucket count) so that no pass holds more than about this
/// many distinct monomials.
const BUCKET_TARGET: usize = 8_000_000;

/// One factor `W^{(node)}_{level, q^shift}` of a tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KrFactor {
    pub node: usize,
    pub level: u32,
    pub shift: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonomialCount {
    pub monomial: YMonomial,
    pub mult: i64,
}

fn counts(map: BTreeMap<YMonomial, i64>) -> Vec<MonomialCount> {
    map.into_iter()
        .map(|(monomial, mult)| MonomialCount { monomial, mult })
        .collect()
}

/// Outcome of checking
/// `[W_{m,a} (x) W_{m,aq_i^2}] = [W_{m+1,a} (x) W_{m-1,aq_i^2}] + [S_{m,a}]`.
#[derive(Debug, Clone, Serialize)]
pub struct TSystemReport {
    pub algebra: String,
    pub node: usize,
    pub m: u32,
    pub shift: i32,
    pub lhs_dominants: Vec<MonomialCount>,
    pub rhs_product_highest: YMonomial,
    /// `lhs` highest monomial times the `m` lowering steps in direction `node`.
    pub s_term_highest: YMonomial,
    /// Tensor factors read off the q-strings of `s_term_highest`.
    pub s_term_factors: Vec<KrFactor>,
    pub s_term_dominants: Vec<MonomialCount>,
    /// Distinct monomials of `lhs - rhs`.
    pub s_term_monomials: usize,
    pub s_term_dimension: i64,
    /// `lhs - rhs` had a negative coefficient.
    pub negative_residual: bool,
    /// Monomials where `lhs - rhs` differs from the product of the S factors.
    pub mismatches: usize,
    pub holds: bool,
    #[serde(skip)]
    pub s_term_classical: ClassicalCharacter,
}

/// Splits the Y-content of a dominant monomial into KR highest monomials.
pub fn kr_factors_of(cd: &CartanData, m: &YMonomial) -> Result<Vec<KrFactor>> {
    if !m.is_dominant() {
        return Err(Error::InvalidArgument(format!("{m} is not dominant")));
    }
    let mut out = Vec::new();
    for j in 1..=cd.rank() {
        let positions: BTreeMap<i32, u32> = m.node_part(j).map(|(p, e)| (p, e as u32)).collect();
        let step = 2 * cd.root_length(j) as i32;
        for s in string_decomposition(&positions, step) {
            out.push(KrFactor {
                node: j,
                level: s.len,
                shift: s.start,
            });
        }
    }
    Ok(out)
}

fn factor_chars(
    cache: &QCharCache,
    cd: &CartanData,
    factors: &[KrFactor],
) -> Result<Vec<QCharacter>> {
    factors
        .iter()
        .map(|f| cache.kr_qcharacter(cd.cartan_type(), f.node, f.level, f.shift))
        .collect()
}

/// Calls `f` on every term of the product of `chars` whose monomial lands in `bucket`.
fn for_each_product_term<F>(
    chars: &[&QCharacter],
    buckets: u64,
    bucket: u64,
    f: &mut F,
) -> Result<()>
where
    F: FnMut(YMonomial, i64),
{
    fn rec<F: FnMut(YMonomial, i64)>(
        chars: &[&QCharacter],
        acc: &YMonomial,
        k: i64,
        buckets: u64,
        bucket: u64,
        f: &mut F,
    ) -> Result<()> {
        match chars.split_first() {
            None => {
                if acc.fingerprint() % buckets == bucket {
                    f(acc.clone(), k);
                }
                Ok(())
            }
            Some((first, rest)) => {
                for (m, &km) in first.terms() {
                    rec(rest, &acc.mul(m)?, error::mul(k, km)?, buckets, bucket, f)?;
                }
                Ok(())
            }
        }
    }
    rec(chars, &YMonomial::one(), 1, buckets, bucket, f)
}

fn product_size(chars: &[&QCharacter]) -> usize {
    chars.iter().map(|c| c.len()).product()
}

pub fn tsystem_verify(cd: &CartanData, i: usize, m: u32, c: i32) -> Result<TSystemReport> {
    tsystem_verify_with(QCharCache::global(), cd, i, m, c)
}

pub fn tsystem_verify_with(
    cache: &QCharCache,
    cd: &CartanData,
    i: usize,
    m: u32,
    c: i32,
) -> Result<TSystemReport> {
    cd.check_node(i)?;
    if m == 0 {
        return Err(Error::InvalidArgument("T-system needs m >= 1".into()));
    }
    let ty = cd.cartan_type();
    let r = cd.root_length(i) as i32;
    let left = [
        cache.kr_qcharacter(ty, i, m, c)?,
        cache.kr_qcharacter(ty, i, m, c + 2 * r)?,
    ];
    let right = [
        cache.kr_qcharacter(ty, i, m + 1, c)?,
        cache.kr_qcharacter(ty, i, m - 1, c + 2 * r)?,
    ];
    let lhs_highest = left[0].highest().mul(left[1].highest())?;
    let rhs_highest = right[0].highest().mul(right[1].highest())?;

    let mut s_highest = lhs_highest.clone();
    for l in 1..=m as i32 {
        let a = a_monomial(cd, i, c + r * (2 * (m as i32) - 2 * l + 1))?;
        s_highest = s_highest.mul(&a.inverse()?)?;
    }
    let s_factors = kr_factors_of(cd, &s_highest)?;
    let s_chars = factor_chars(cache, cd, &s_factors)?;

    let left_refs: Vec<&QCharacter> = left.iter().collect();
    let right_refs: Vec<&QCharacter> = right.iter().collect();
    let s_refs: Vec<&QCharacter> = s_chars.iter().collect();
    let largest = product_size(&left_refs)
        .max(product_size(&right_refs))
        .max(product_size(&s_refs));
    let buckets = largest.div_ceil(BUCKET_TARGET).max(1) as u64;

    let mut lhs_dominants = BTreeMap::new();
    let mut s_dominants = BTreeMap::new();
    let mut s_classical: HashMap<Weight, i64> = HashMap::new();
    let (mut s_monomials, mut s_dimension) = (0usize, 0i64);
    let (mut negative, mut mismatches) = (false, 0usize);

    for bucket in 0..buckets {
        // (lhs, rhs, expected S)
        let mut table: HashMap<YMonomial, [i64; 3]> = HashMap::new();
        for (slot, refs) in [(0, &left_refs), (1, &right_refs), (2, &s_refs)] {
            let mut err = None;
            for_each_product_term(refs, buckets, bucket, &mut |mono, k| {
                let e = table.entry(mono).or_insert([0; 3]);
                match error::add(e[slot], k) {
                    Ok(v) => e[slot] = v,
                    Err(x) => err = Some(x),
                }
            })?;
            if let Some(x) = err {
                return Err(x);
            }
        }
        for (mono, [l, rh, expected]) in table {
            if l > 0 && mono.is_dominant() {
                lhs_dominants.insert(mono.clone(), l);
            }
            let s = l - rh;
            if s < 0 {
                negative = true;
            }
            if s != expected {
                mismatches += 1;
            }
            if s != 0 {
                s_monomials += 1;
                s_dimension = error::add(s_dimension, s)?;
                let w = s_classical
                    .entry(mono.classical_weight(cd.rank()))
                    .or_insert(0);
                *w = error::add(*w, s)?;
                if mono.is_dominant() {
                    s_dominants.insert(mono, s);
                }
            }
        }
    }

    let single_dominant = s_dominants.len() == 1 && s_dominants.get(&s_highest) == Some(&1);
    let holds = !negative && mismatches == 0 && single_dominant;
    Ok(TSystemReport {
        algebra: ty.to_string(),
        node: i,
        m,
        shift: c,
        lhs_dominants: counts(lhs_dominants),
        rhs_product_highest: rhs_highest,
        s_term_highest: s_highest,
        s_term_factors: s_factors,
        s_term_dominants: counts(s_dominants),
        s_term_monomials: s_monomials,
        s_term_dimension: s_dimension,
        negative_residual: negative,
        mismatches,
        holds,
        s_term_classical: ClassicalCharacter::from_terms(ty, s_classical)?,
    })
}

/// Dominant monomials of `W^{(i)}_{m1, q_i^{-2(m1-m2-1)}} (x) W^{(i)}_{m2, 1}`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoFactorReport {
    pub algebra: String,
    pub node: usize,
    pub m1: u32,
    pub m2: u32,
    /// Highest monomial of the product.
    pub highest: YMonomial,
    /// `M` assembled directly from its closed form.
    pub displayed_highest: YMonomial,
    /// Dominant monomials, highest first.
    pub dominants: Vec<MonomialCount>,
    /// `M, M A^{-1}_{i,q_i^{2m2-1}}, M A^{-1}_{i,q_i^{2m2-1}} A^{-1}_{i,q_i^{2m2-3}}, ...`
    pub expected: Vec<YMonomial>,
    pub matches: bool,
}

/// The closed form
/// `M = Y_{i,q_i^{2m2}} (Y_{i,q_i^{2(m2-1)}} ... Y_{i,1})^2 (Y_{i,q_i^-2} ... Y_{i,q_i^{-2(m1-m2-1)}})`.
pub fn two_factor_highest(cd: &CartanData, i: usize, m1: u32, m2: u32) -> Result<YMonomial> {
    let step = 2 * cd.root_length(i) as i32;
    let (m1, m2) = (m1 as i32, m2 as i32);
    let mut factors = vec![(i, step * m2, 1)];
    factors.extend((0..m2).map(|k| (i, step * k, 2)));
    factors.extend((1..m1 - m2).map(|k| (i, -step * k, 1)));
    YMonomial::from_factors(factors)
}

pub fn two_factor_dominant_list(
    cd: &CartanData,
    i: usize,
    m1: u32,
    m2: u32,
) -> Result<TwoFactorReport> {
    two_factor_dominant_list_with(QCharCache::global(), cd, i, m1, m2)
}

pub fn two_factor_dominant_list_with(
    cache: &QCharCache,
    cd: &CartanData,
    i: usize,
    m1: u32,
    m2: u32,
) -> Result<TwoFactorReport> {
    cd.check_node(i)?;
    if m1 <= m2 + 1 {
        return Err(Error::InvalidArgument(format!(
            "need m1 > m2 + 1, got m1={m1}, m2={m2}"
        )));
    }
    let ty = cd.cartan_type();
    let r = cd.root_length(i) as i32;
    let first = cache.kr_qcharacter(ty, i, m1, -2 * r * (m1 - m2 - 1) as i32)?;
    let second = cache.kr_qcharacter(ty, i, m2, 0)?;
    let product = super::character::qchar_product(&first, &second)?;
    let highest = product.highest().clone();
    let displayed = two_factor_highest(cd, i, m1, m2)?;

    let mut expected = vec![displayed.clone()];
    for l in 1..=m2 as i32 {
        let a = a_monomial(cd, i, r * (2 * m2 as i32 - 2 * l + 1))?;
        let next = expected.last().expect("nonempty").mul(&a.inverse()?)?;
        expected.push(next);
    }

    // order the dominant monomials by their depth below the highest one
    let mut dominants: Vec<(usize, YMonomial, i64)> = Vec::new();
    for (mono, k) in product.dominant_monomials() {
        let ratio = highest.mul(&mono.inverse()?)?;
        let depth = a_exponents(cd, &ratio)?
            .map(|v| v.values().map(|&e| e.max(0) as usize).sum())
            .unwrap_or(usize::MAX);
        dominants.push((depth, mono, k));
    }
    dominants.sort();
    let matches = highest == displayed
        && dominants.len() == expected.len()
        && dominants
            .iter()
            .zip(&expected)
            .all(|((_, mono, k), e)| mono == e && *k == 1);
    Ok(TwoFactorReport {
        algebra: ty.to_string(),
        node: i,
        m1,
        m2,
        highest,
        displayed_highest: displayed,
        dominants: dominants
            .into_iter()
            .map(|(_, monomial, mult)| MonomialCount { monomial, mult })
            .collect(),
        expected,
        matches,
    })
}
