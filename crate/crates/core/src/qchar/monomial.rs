use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::liealg::{CartanData, Weight};

const EXP_BITS: u32 = 12;
const SHIFT_BITS: u32 = 16;
const EXP_BIAS: i32 = 1 << (EXP_BITS - 1);
const SHIFT_BIAS: i32 = 1 << (SHIFT_BITS - 1);
const MAX_NODE: usize = (1 << (32 - EXP_BITS - SHIFT_BITS)) - 1;

/// `Y_{node, q^shift}^exp` packed as node:4 | shift:16 | exp:12, so that the
/// integer order sorts factors by `(node, shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Factor(u32);

impl Factor {
    fn new(node: usize, shift: i32, exp: i32) -> Result<Self> {
        if node == 0 || node > MAX_NODE {
            return Err(Error::InvalidArgument(format!(
                "node {node} out of range for monomials"
            )));
        }
        if !(-SHIFT_BIAS..SHIFT_BIAS).contains(&shift) || !(-EXP_BIAS..EXP_BIAS).contains(&exp) {
            return Err(Error::Overflow);
        }
        Ok(Factor(
            ((node as u32) << (EXP_BITS + SHIFT_BITS))
                | (((shift + SHIFT_BIAS) as u32) << EXP_BITS)
                | (exp + EXP_BIAS) as u32,
        ))
    }

    fn key(self) -> u32 {
        self.0 >> EXP_BITS
    }

    fn node(self) -> usize {
        (self.0 >> (EXP_BITS + SHIFT_BITS)) as usize
    }

    fn shift(self) -> i32 {
        ((self.0 >> EXP_BITS) & ((1 << SHIFT_BITS) - 1)) as i32 - SHIFT_BIAS
    }

    fn exp(self) -> i32 {
        (self.0 & ((1 << EXP_BITS) - 1)) as i32 - EXP_BIAS
    }
}

/// Laurent monomial in the variables `Y_{i,q^c}`, kept in canonical form:
/// factors sorted by `(i, c)`, no zero exponents. Nodes are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YMonomial(SmallVec<[Factor; 6]>);

impl YMonomial {
    pub fn one() -> Self {
        YMonomial(SmallVec::new())
    }

    /// `Y_{node, q^shift}`.
    pub fn y(node: usize, shift: i32) -> Result<Self> {
        Self::from_factors([(node, shift, 1)])
    }

    /// Builds a monomial from `(node, shift, exponent)` triples; repeated
    /// variables are multiplied together.
    pub fn from_factors<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i32, i32)>,
    {
        let mut acc: BTreeMap<(usize, i32), i32> = BTreeMap::new();
        for (node, shift, exp) in factors {
            *acc.entry((node, shift)).or_insert(0) += exp;
        }
        let mut v = SmallVec::new();
        for ((node, shift), exp) in acc {
            if exp != 0 {
                v.push(Factor::new(node, shift, exp)?);
            }
        }
        Ok(YMonomial(v))
    }

    /// `(node, shift, exponent)` triples in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, i32, i32)> + '_ {
        self.0.iter().map(|f| (f.node(), f.shift(), f.exp()))
    }

    /// Number of distinct variables.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, node: usize, shift: i32) -> i32 {
        self.factors()
            .find(|&(n, s, _)| n == node && s == shift)
            .map_or(0, |(_, _, e)| e)
    }

    pub fn mul(&self, other: &YMonomial) -> Result<YMonomial> {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (fa, fb) = (a[i], b[j]);
            match fa.key().cmp(&fb.key()) {
                std::cmp::Ordering::Less => {
                    out.push(fa);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(fb);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = fa.exp() + fb.exp();
                    if e != 0 {
                        out.push(Factor::new(fa.node(), fa.shift(), e)?);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(YMonomial(out))
    }

    pub fn pow(&self, k: i32) -> Result<YMonomial> {
        if k == 0 {
            return Ok(YMonomial::one());
        }
        let mut v = SmallVec::with_capacity(self.0.len());
        for f in &self.0 {
            let e = f.exp().checked_mul(k).ok_or(Error::Overflow)?;
            v.push(Factor::new(f.node(), f.shift(), e)?);
        }
        Ok(YMonomial(v))
    }

    pub fn inverse(&self) -> Result<YMonomial> {
        self.pow(-1)
    }

    /// Multiplies every spectral parameter by `q^by`.
    pub fn shifted(&self, by: i32) -> Result<YMonomial> {
        let mut v = SmallVec::with_capacity(self.0.len());
        for f in &self.0 {
            v.push(Factor::new(f.node(), f.shift() + by, f.exp())?);
        }
        Ok(YMonomial(v))
    }

    /// All exponents nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|f| f.exp() > 0)
    }

    /// All exponents of `Y_{node, *}` nonnegative.
    pub fn is_node_dominant(&self, node: usize) -> bool {
        self.0
            .iter()
            .filter(|f| f.node() == node)
            .all(|f| f.exp() > 0)
    }

    /// The `Y_{node,*}` factors as `(shift, exponent)` pairs.
    pub fn node_part(&self, node: usize) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.0
            .iter()
            .filter(move |f| f.node() == node)
            .map(|f| (f.shift(), f.exp()))
    }

    /// The monomial with every `Y_{node,*}` factor removed.
    pub fn without_node(&self, node: usize) -> YMonomial {
        YMonomial(
            self.0
                .iter()
                .copied()
                .filter(|f| f.node() != node)
                .collect(),
        )
    }

    /// `sum u_{i,c} omega_i`.
    pub fn classical_weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for f in &self.0 {
            w[f.node() - 1] += f.exp() as i64;
        }
        w
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        // FNV-1a over the packed factors; stable across runs
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for f in &self.0 {
            for b in f.0.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }

    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.factors()
            .map(|(n, s, e)| [n as i64, s as i64, e as i64])
            .collect()
    }

    pub fn from_triples(triples: &[[i64; 3]]) -> Result<Self> {
        let conv = |x: i64| i32::try_from(x).map_err(|_| Error::Overflow);
        let factors = triples
            .iter()
            .map(|t| {
                if t[0] < 1 {
                    return Err(Error::InvalidArgument(format!("node {} in monomial", t[0])));
                }
                Ok((t[0] as usize, conv(t[1])?, conv(t[2])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_factors(factors)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (n, s, e)) in self.factors().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Y{n},{s}")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for YMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for YMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = Vec::<[i64; 3]>::deserialize(d)?;
        YMonomial::from_triples(&t).map_err(serde::de::Error::custom)
    }
}

/// `A_{i,q^c}` as a product of Y-variables:
///
/// ```text
/// A_{i,a} = Y_{i,a q_i^-1} Y_{i,a q_i}  prod_{C_ji=-1} Y_{j,a}^-1
///           prod_{C_ji=-2} Y_{j,aq^-1}^-1 Y_{j,aq}^-1
///           prod_{C_ji=-3} Y_{j,aq^-2}^-1 Y_{j,a}^-1 Y_{j,aq^2}^-1
/// ```
pub fn a_monomial(cd: &CartanData, i: usize, c: i32) -> Result<YMonomial> {
    cd.check_node(i)?;
    YMonomial::from_factors(
        a_pattern(cd, i)
            .into_iter()
            .map(|(j, off, e)| (j, c + off, e)),
    )
}

/// `(node, offset, exponent)` triples of `A_{i,q^0}`.
pub(crate) fn a_pattern(cd: &CartanData, i: usize) -> Vec<(usize, i32, i32)> {
    let r = cd.root_length(i) as i32;
    let mut v = vec![(i, -r, 1), (i, r, 1)];
    for j in 1..=cd.rank() {
        if j == i {
            continue;
        }
        let offsets: &[i32] = match cd.entry(j, i) {
            -1 => &[0],
            -2 => &[-1, 1],
            -3 => &[-2, 0, 2],
            _ => &[],
        };
        v.extend(offsets.iter().map(|&o| (j, o, -1)));
    }
    v
}

/// Highest monomial `Y_{i,q^c} Y_{i,q^{c+2r_i}} ... Y_{i,q^{c+2r_i(m-1)}}` of `W^{(i)}_{m,q^c}`.
pub fn kr_highest_monomial(cd: &CartanData, i: usize, m: u32, c: i32) -> Result<YMonomial> {
    cd.check_node(i)?;
    let step = 2 * cd.root_length(i) as i32;
    YMonomial::from_factors((0..m as i32).map(|k| (i, c + step * k, 1)))
}

/// Exponents `v_{i,c}` with `prod A_{i,c}^{v_{i,c}} = ratio`, if any.
///
/// Peels from the lowest spectral position: the variables sitting at the
/// lowest position of a product of A-monomials can only come from the
/// `Y_{i, c - r_i}` factor of some `A_{i,c}`, because every neighbour factor
/// of `A_{j,c'}` sits strictly above `c' - r_j`.
pub fn a_exponents(
    cd: &CartanData,
    ratio: &YMonomial,
) -> Result<Option<BTreeMap<(usize, i32), i32>>> {
    let Some(max_pos) = ratio.factors().map(|(_, s, _)| s).max() else {
        return Ok(Some(BTreeMap::new()));
    };
    let mut rest = ratio.clone();
    let mut out = BTreeMap::new();
    while let Some(p) = rest.factors().map(|(_, s, _)| s).min() {
        if p > max_pos {
            return Ok(None);
        }
        let bottom: Vec<(usize, i32)> = rest
            .factors()
            .filter(|&(_, s, _)| s == p)
            .map(|(n, _, e)| (n, e))
            .collect();
        for (node, e) in bottom {
            if node > cd.rank() {
                return Ok(None);
            }
            let c = p + cd.root_length(node) as i32;
            *out.entry((node, c)).or_insert(0) += e;
            rest = rest.mul(&a_monomial(cd, node, c)?.pow(-e)?)?;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(Some(out))
}

/// `m1 <= m2` iff `m2 / m1` is a product of A-monomials with nonnegative exponents.
pub fn monomial_leq(cd: &CartanData, m1: &YMonomial, m2: &YMonomial) -> Result<bool> {
    let ratio = m2.mul(&m1.inverse()?)?;
    Ok(a_exponents(cd, &ratio)?.is_some_and(|v| v.values().all(|&e| e >= 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{cartan_data, Series};

    fn mono(t: &[(usize, i32, i32)]) -> YMonomial {
        YMonomial::from_factors(t.iter().copied()).unwrap()
    }

    #[test]
    fn packing_roundtrip() {
        let m = mono(&[(2, -5, 3), (1, 7, -2), (1, -300, 1)]);
        let f: Vec<_> = m.factors().collect();
        assert_eq!(f, vec![(1, -300, 1), (1, 7, -2), (2, -5, 3)]);
        assert_eq!(m.to_string(), "Y1,-300 Y1,7^-2 Y2,-5^3");
        assert!(YMonomial::from_factors([(1, 0, 5000)]).is_err());
    }

    #[test]
    fn multiplication_cancels() {
        let a = mono(&[(1, 0, 1), (1, 2, 1)]);
        let b = a.inverse().unwrap();
        assert!(a.mul(&b).unwrap().is_one());
        assert_eq!(a.mul(&a).unwrap(), mono(&[(1, 0, 2), (1, 2, 2)]));
    }

    #[test]
    fn a_monomial_examples() {
        let a1 = cartan_data(Series::A, 1).unwrap();
        assert_eq!(
            a_monomial(&a1, 1, 1).unwrap(),
            mono(&[(1, 0, 1), (1, 2, 1)])
        );
        let a2 = cartan_data(Series::A, 2).unwrap();
        assert_eq!(
            a_monomial(&a2, 1, 1).unwrap(),
            mono(&[(1, 0, 1), (1, 2, 1), (2, 1, -1)])
        );
        // B2: node 1 long (r=2), C_21 = -2
        let b2 = cartan_data(Series::B, 2).unwrap();
        assert_eq!(b2.entry(2, 1), -2);
        assert_eq!(
            a_monomial(&b2, 1, 5).unwrap(),
            mono(&[(1, 3, 1), (1, 7, 1), (2, 4, -1), (2, 6, -1)])
        );
        assert_eq!(
            a_monomial(&b2, 2, 5).unwrap(),
            mono(&[(2, 4, 1), (2, 6, 1), (1, 5, -1)])
        );
        // G2: node 2 long (r=3), C_12 = -3
        let g2 = cartan_data(Series::G, 2).unwrap();
        assert_eq!(
            a_monomial(&g2, 2, 0).unwrap(),
            mono(&[(2, -3, 1), (2, 3, 1), (1, -2, -1), (1, 0, -1), (1, 2, -1)])
        );
    }

    #[test]
    fn a_monomials_project_to_simple_roots() {
        for name in ["A3", "B3", "C3", "G2", "D4", "F4"] {
            let cd = CartanData::new(name.parse().unwrap()).unwrap();
            for i in 1..=cd.rank() {
                let a = a_monomial(&cd, i, 3).unwrap();
                assert_eq!(
                    a.classical_weight(cd.rank()),
                    cd.simple_root(i),
                    "{name} {i}"
                );
            }
        }
    }

    #[test]
    fn highest_monomials() {
        let a1 = cartan_data(Series::A, 1).unwrap();
        assert!(kr_highest_monomial(&a1, 1, 0, 0).unwrap().is_one());
        assert_eq!(
            kr_highest_monomial(&a1, 1, 3, 0).unwrap(),
            mono(&[(1, 0, 1), (1, 2, 1), (1, 4, 1)])
        );
        let g2 = cartan_data(Series::G, 2).unwrap();
        assert_eq!(
            kr_highest_monomial(&g2, 2, 2, 1).unwrap(),
            mono(&[(2, 1, 1), (2, 7, 1)])
        );
    }

    #[test]
    fn order_examples() {
        let a2 = cartan_data(Series::A, 2).unwrap();
        let m = mono(&[(1, 0, 1), (2, 3, 2)]);
        assert!(monomial_leq(&a2, &m, &m).unwrap());
        let lower = m
            .mul(&a_monomial(&a2, 2, 4).unwrap().inverse().unwrap())
            .unwrap();
        assert!(monomial_leq(&a2, &lower, &m).unwrap());
        assert!(!monomial_leq(&a2, &m, &lower).unwrap());
        let y1 = mono(&[(1, 0, 1)]);
        let y2 = mono(&[(2, 0, 1)]);
        assert!(!monomial_leq(&a2, &y1, &y2).unwrap());
        assert!(!monomial_leq(&a2, &y2, &y1).unwrap());
    }

    #[test]
    fn a_exponent_solver_recovers_products() {
        for name in ["A2", "B2", "C3", "G2"] {
            let cd = CartanData::new(name.parse().unwrap()).unwrap();
            let picks = [(1, 0, 2), (cd.rank(), 3, 1), (1, 5, -1), (2, -4, 3)];
            let mut prod = YMonomial::one();
            let mut expect = BTreeMap::new();
            for &(i, c, e) in &picks {
                prod = prod
                    .mul(&a_monomial(&cd, i, c).unwrap().pow(e).unwrap())
                    .unwrap();
                *expect.entry((i, c)).or_insert(0) += e;
            }
            assert_eq!(a_exponents(&cd, &prod).unwrap(), Some(expect), "{name}");
        }
    }
}
