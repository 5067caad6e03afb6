//! Partitions of an integer under the reverse dominance order, and the
//! comparison predicate on partitions of a dominant weight.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{CartanData, Weight};

/// Weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn prefix_sums(&self, len: usize) -> Vec<u32> {
        let mut acc = 0;
        (0..len)
            .map(|j| {
                acc += self.0.get(j).copied().unwrap_or(0);
                acc
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `m` (optionally of exactly `k` parts), in reverse
/// lexicographic order: `(m)` first.
pub fn partitions_of(m: u32, k: Option<usize>) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, k: Option<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            if k.is_none_or(|k| cur.len() == k) {
                out.push(Partition(cur.clone()));
            }
            return;
        }
        if let Some(k) = k {
            // remaining slots must be able to absorb `rem`
            let slots = k.saturating_sub(cur.len()) as u32;
            if slots == 0 || slots * max < rem {
                return;
            }
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    rec(m, m, &mut Vec::new(), k, &mut out);
    out
}

fn same_total(a: &Partition, b: &Partition) -> Result<()> {
    if a.total() == b.total() {
        Ok(())
    } else {
        Err(Error::TotalMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// `lambda <= mu` iff every prefix sum of `lambda` is at least the
/// corresponding prefix sum of `mu`. `(m)` is the minimum, `(1,...,1)` the maximum.
pub fn reverse_dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    same_total(lambda, mu)?;
    let len = lambda.len().min(mu.len());
    Ok(lambda
        .prefix_sums(len)
        .iter()
        .zip(mu.prefix_sums(len))
        .all(|(a, b)| *a >= b))
}

/// Single unit moves `(i, j)`, `i < j`, on `lambda` padded with one zero:
/// part `i` loses one, part `j` gains one. Only moves that keep the parts
/// weakly decreasing are returned, in lexicographic `(i, j)` order.
fn unit_moves(lambda: &Partition) -> Vec<((usize, usize), Partition)> {
    let mut padded = lambda.0.clone();
    padded.push(0);
    let k = padded.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut p = padded.clone();
            if p[i] == 0 {
                continue;
            }
            p[i] -= 1;
            p[j] += 1;
            if p.windows(2).all(|w| w[0] >= w[1]) {
                while p.last() == Some(&0) {
                    p.pop();
                }
                out.push(((i, j), Partition(p)));
            }
        }
    }
    out
}

/// The partitions covering `lambda`.
///
/// Every cover is a unit move, so the covers are exactly the unit moves
/// that are minimal among all unit moves of `lambda`.
pub fn covers(lambda: &Partition) -> Vec<Partition> {
    let moves: Vec<Partition> = unit_moves(lambda).into_iter().map(|(_, p)| p).collect();
    moves
        .iter()
        .filter(|mu| {
            !moves
                .iter()
                .any(|nu| nu != *mu && reverse_dominance_leq(nu, mu).unwrap_or(false))
        })
        .cloned()
        .collect()
}

/// A saturated chain from `lambda` up to `mu`: at each step take the cover
/// reached by the lexicographically smallest move `(i, j)` that stays below `mu`.
pub fn cover_chain(lambda: &Partition, mu: &Partition) -> Result<Vec<Partition>> {
    if !reverse_dominance_leq(lambda, mu)? {
        return Err(Error::Incomparable {
            lower: lambda.to_string(),
            upper: mu.to_string(),
        });
    }
    let mut chain = vec![lambda.clone()];
    let mut cur = lambda.clone();
    while &cur != mu {
        let cov = covers(&cur);
        let next = unit_moves(&cur)
            .into_iter()
            .map(|(_, p)| p)
            .find(|p| cov.contains(p) && reverse_dominance_leq(p, mu).unwrap_or(false))
            .ok_or_else(|| Error::Incomparable {
                lower: cur.to_string(),
                upper: mu.to_string(),
            })?;
        chain.push(next.clone());
        cur = next;
    }
    Ok(chain)
}

/// `(minimum, maximum)` of `P(m)`, or of `P(m, k)` when `k` is given.
pub fn extremal(m: u32, k: Option<usize>) -> Result<(Partition, Partition)> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    match k {
        None => Ok((Partition(vec![m]), Partition(vec![1; m as usize]))),
        Some(k) => {
            if k == 0 || k > m as usize {
                return Err(Error::InvalidArgument(format!(
                    "no partitions of {m} with {k} parts"
                )));
            }
            let k32 = k as u32;
            let mut min = vec![1; k];
            min[0] = m - k32 + 1;
            let (ell, p) = (m / k32, (m % k32) as usize);
            let max: Vec<u32> = (0..k).map(|j| if j < p { ell + 1 } else { ell }).collect();
            Ok((Partition(min), Partition(max)))
        }
    }
}

/// Cover edges of `P(m)` as `(lower, upper)` pairs in enumeration order.
pub fn cover_edges(m: u32) -> Vec<(Partition, Partition)> {
    partitions_of(m, None)
        .into_iter()
        .flat_map(|p| covers(&p).into_iter().map(move |q| (p.clone(), q)))
        .collect()
}

/// Hasse diagram of `P(m)` in DOT form (edges are covers).
pub fn poset_dot(m: u32) -> String {
    let mut s = format!("digraph P{m} {{\n  rankdir=BT;\n");
    for p in partitions_of(m, None) {
        s.push_str(&format!("  \"{p}\";\n"));
    }
    for (a, b) in cover_edges(m) {
        s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    s.push_str("}\n");
    s
}

/// JSON adjacency form of the Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub m: u32,
    pub nodes: Vec<Partition>,
    pub covers: Vec<(Partition, Partition)>,
}

pub fn poset_json(m: u32) -> PosetJson {
    PosetJson {
        m,
        nodes: partitions_of(m, None),
        covers: cover_edges(m),
    }
}

/// A list of dominant weights (zeros allowed) summing to a fixed weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPartition(Vec<Weight>);

impl WeightedPartition {
    pub fn new(parts: Vec<Weight>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let rank = parts[0].len();
        for p in &parts {
            p.require_dominant()?;
            if p.len() != rank {
                return Err(Error::WeightRank {
                    weight: p.to_string(),
                    len: p.len(),
                    rank,
                });
            }
        }
        Ok(WeightedPartition(parts))
    }

    /// Parts `m_j * omega_i` for an integer partition.
    pub fn rectangular(rank: usize, node: usize, p: &Partition) -> Self {
        WeightedPartition(
            p.parts()
                .iter()
                .map(|&m| Weight::fundamental_multiple(rank, node, m as i64))
                .collect(),
        )
    }

    pub fn parts(&self) -> &[Weight] {
        &self.0
    }

    pub fn total(&self) -> Weight {
        let mut acc = Weight::zero(self.0[0].len());
        for p in &self.0 {
            acc = &acc + p;
        }
        acc
    }
}

/// For every positive root `alpha` and every `l`, the minimum over
/// `l`-subsets of the parts of `sum lambda_i(h_alpha)` must not exceed the
/// same minimum for `mu`. Parts are zero-padded to a common length and `l`
/// runs up to that length.
pub fn cfs_leq(
    cd: &CartanData,
    lambda: &WeightedPartition,
    mu: &WeightedPartition,
) -> Result<bool> {
    for p in lambda.parts().iter().chain(mu.parts()) {
        cd.check_weight(p)?;
    }
    let (lt, mt) = (lambda.total(), mu.total());
    if lt != mt {
        return Err(Error::TotalMismatch {
            left: lt.to_string(),
            right: mt.to_string(),
        });
    }
    let len = lambda.parts().len().max(mu.parts().len());
    let sorted_values = |wp: &WeightedPartition, alpha: &[i64]| {
        let mut v: Vec<i64> = wp
            .parts()
            .iter()
            .map(|p| cd.coroot_eval(p, alpha))
            .collect();
        v.resize(len, 0);
        v.sort_unstable();
        v
    };
    for alpha in cd.positive_roots() {
        let a = sorted_values(lambda, alpha);
        let b = sorted_values(mu, alpha);
        // the minimum over l-subsets is the sum of the l smallest values
        let (mut sa, mut sb) = (0, 0);
        for l in 0..len {
            sa += a[l];
            sb += b[l];
            if sa > sb {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{cartan_data, Series};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_of(4, None).len(), 5);
        assert_eq!(partitions_of(4, Some(2)), vec![p("3,1"), p("2,2")]);
        assert_eq!(partitions_of(1, None), vec![p("1")]);
        assert_eq!(partitions_of(4, None)[0], p("4"));
        assert_eq!(partitions_of(4, None)[4], p("1,1,1,1"));
    }

    #[test]
    fn leq_examples() {
        assert!(reverse_dominance_leq(&p("5"), &p("3,2")).unwrap());
        assert!(reverse_dominance_leq(&p("4,2"), &p("3,3")).unwrap());
        assert!(!reverse_dominance_leq(&p("3,3"), &p("4,2")).unwrap());
        assert!(matches!(
            reverse_dominance_leq(&p("3"), &p("2,2")),
            Err(Error::TotalMismatch { .. })
        ));
    }

    #[test]
    fn cover_examples() {
        assert!(covers(&p("5,1")).contains(&p("4,2")));
        assert_eq!(covers(&p("5,1")), vec![p("4,2")]);
        assert!(covers(&p("1,1,1")).is_empty());
        assert_eq!(covers(&p("2,2")), vec![p("2,1,1")]);
    }

    #[test]
    fn chain_examples() {
        assert_eq!(cover_chain(&p("3,1"), &p("3,1")).unwrap(), vec![p("3,1")]);
        assert_eq!(
            cover_chain(&p("4,2"), &p("3,3")).unwrap(),
            vec![p("4,2"), p("3,3")]
        );
        let chain = cover_chain(&p("6"), &p("2,2,2")).unwrap();
        assert_eq!(chain.first(), Some(&p("6")));
        assert_eq!(chain.last(), Some(&p("2,2,2")));
        for w in chain.windows(2) {
            assert!(covers(&w[0]).contains(&w[1]));
        }
        assert!(matches!(
            cover_chain(&p("3,3"), &p("4,2")),
            Err(Error::Incomparable { .. })
        ));
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal(7, Some(3)).unwrap().1, p("3,2,2"));
        assert_eq!(extremal(7, Some(3)).unwrap().0, p("5,1,1"));
        assert_eq!(extremal(5, None).unwrap(), (p("5"), p("1,1,1,1,1")));
        assert_eq!(extremal(4, Some(4)).unwrap(), (p("1,1,1,1"), p("1,1,1,1")));
        assert!(extremal(3, Some(4)).is_err());
    }

    #[test]
    fn extremal_matches_poset() {
        for m in 1..=9u32 {
            for k in 1..=m as usize {
                let (lo, hi) = extremal(m, Some(k)).unwrap();
                for q in partitions_of(m, Some(k)) {
                    assert!(reverse_dominance_leq(&lo, &q).unwrap());
                    assert!(reverse_dominance_leq(&q, &hi).unwrap());
                }
            }
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert_eq!(p("5,1").to_string(), "5,1");
    }

    #[test]
    fn cfs_examples() {
        let a2 = cartan_data(Series::A, 2).unwrap();
        let w = |v: &[i64]| Weight::from_slice(v);
        let l = WeightedPartition::new(vec![w(&[2, 0]), w(&[0, 0])]).unwrap();
        let m = WeightedPartition::new(vec![w(&[1, 0]), w(&[1, 0])]).unwrap();
        assert!(cfs_leq(&a2, &l, &l).unwrap());
        assert!(cfs_leq(&a2, &l, &m).unwrap());
        assert!(!cfs_leq(&a2, &m, &l).unwrap());
        let other = WeightedPartition::new(vec![w(&[1, 1])]).unwrap();
        assert!(matches!(
            cfs_leq(&a2, &l, &other),
            Err(Error::TotalMismatch { .. })
        ));
    }

    #[test]
    fn poset_exports() {
        let j = poset_json(4);
        assert_eq!(j.covers.len(), 4);
        let dot = poset_dot(4);
        assert_eq!(dot.matches("->").count(), 4);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.starts_with(r#"{"m":4,"nodes":["4","3,1","2,2","2,1,1","1,1,1,1"]"#));
    }
}
