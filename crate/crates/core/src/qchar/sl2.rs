//! The rank-one building block: q-characters of simple modules of
//! `U_{q_i}(sl_2^)`, written as lists of `A^{-1}` steps.

use std::collections::{BTreeMap, HashMap};

/// A q-string `Y_s Y_{s+step} ... Y_{s+step(len-1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QString {
    pub start: i32,
    pub len: u32,
}

/// Splits a multiset of spectral positions (with positive counts) into
/// q-strings in general position: repeatedly remove a longest string,
/// smallest start first.
pub fn string_decomposition(positions: &BTreeMap<i32, u32>, step: i32) -> Vec<QString> {
    let mut counts: BTreeMap<i32, u32> = positions
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|(&p, &k)| (p, k))
        .collect();
    let mut out = Vec::new();
    while !counts.is_empty() {
        let mut best = QString { start: 0, len: 0 };
        for &p in counts.keys() {
            if counts.contains_key(&(p - step)) {
                continue;
            }
            let mut len = 1;
            while counts.contains_key(&(p + step * len as i32)) {
                len += 1;
            }
            if len > best.len {
                best = QString { start: p, len };
            }
        }
        for k in 0..best.len as i32 {
            let pos = best.start + step * k;
            let c = counts.get_mut(&pos).expect("string position present");
            *c -= 1;
            if *c == 0 {
                counts.remove(&pos);
            }
        }
        out.push(best);
    }
    out.sort();
    out
}

/// Terms of the q-character of the string module as lists of spectral
/// parameters `c` of the `A_{c}^{-1}` factors applied to the highest
/// monomial. Term `j` lowers the top `j` variables, for `j = 0..=len`.
///
/// `r` is the root length, so `A_c` contains `Y_{c-r} Y_{c+r}` and
/// `step = 2r`.
pub fn string_terms(s: QString, r: i32) -> Vec<Vec<i32>> {
    let top = s.start + 2 * r * (s.len as i32 - 1);
    (0..=s.len as i32)
        .map(|j| (0..j).map(|l| top + r - 2 * r * l).collect())
        .collect()
}

/// The q-character of the simple `U_{q_r}(sl_2^)`-module with highest
/// monomial `prod Y_c^{positions[c]}`: a map from sorted `A^{-1}` shift
/// lists to coefficients (the empty list is the highest monomial).
pub fn sl2_character(positions: &BTreeMap<i32, u32>, r: i32) -> HashMap<Vec<i32>, i64> {
    let strings = string_decomposition(positions, 2 * r);
    let mut acc: HashMap<Vec<i32>, i64> = HashMap::from([(Vec::new(), 1)]);
    for s in strings {
        let terms = string_terms(s, r);
        let mut next = HashMap::with_capacity(acc.len() * terms.len());
        for (shifts, k) in &acc {
            for t in &terms {
                let mut v = shifts.clone();
                v.extend_from_slice(t);
                v.sort_unstable();
                *next.entry(v).or_insert(0) += k;
            }
        }
        acc = next;
    }
    acc
}

/// Tests whether a multiset of sl_2 monomials (each a map position ->
/// exponent, step `2r`) is a nonnegative sum of simple q-characters, by
/// peeling off the q-character of a highest dominant term until nothing is
/// left.
pub fn is_sum_of_simple_characters(terms: &HashMap<BTreeMap<i32, i32>, i64>, r: i32) -> bool {
    let mut rest: HashMap<BTreeMap<i32, i32>, i64> = terms
        .iter()
        .filter(|(_, &k)| k != 0)
        .map(|(m, &k)| (m.clone(), k))
        .collect();
    let degree = |m: &BTreeMap<i32, i32>| m.values().map(|&e| e as i64).sum::<i64>();
    while !rest.is_empty() {
        if rest.values().any(|&k| k < 0) {
            return false;
        }
        // a term of maximal degree (sl_2 weight) must be dominant
        let top = rest
            .keys()
            .max_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)))
            .cloned()
            .expect("nonempty");
        if top.values().any(|&e| e < 0) {
            return false;
        }
        let k = rest[&top];
        let positions: BTreeMap<i32, u32> = top.iter().map(|(&p, &e)| (p, e as u32)).collect();
        for (shifts, coeff) in sl2_character(&positions, r) {
            let mut m = top.clone();
            for c in shifts {
                for p in [c - r, c + r] {
                    let e = m.entry(p).or_insert(0);
                    *e -= 1;
                    if *e == 0 {
                        m.remove(&p);
                    }
                }
            }
            let e = rest.entry(m.clone()).or_insert(0);
            *e -= k * coeff;
            if *e == 0 {
                rest.remove(&m);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(v: &[i32]) -> BTreeMap<i32, u32> {
        let mut m = BTreeMap::new();
        for &p in v {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn strings_general_position() {
        assert_eq!(
            string_decomposition(&pos(&[0, 2, 2, 4]), 2),
            vec![QString { start: 0, len: 3 }, QString { start: 2, len: 1 }]
        );
        assert_eq!(
            string_decomposition(&pos(&[0, 4]), 2),
            vec![QString { start: 0, len: 1 }, QString { start: 4, len: 1 }]
        );
        // step 6: residues mod 6 never join
        assert_eq!(
            string_decomposition(&pos(&[1, 3, 5, 7, 9]), 6),
            vec![
                QString { start: 1, len: 2 },
                QString { start: 3, len: 2 },
                QString { start: 5, len: 1 }
            ]
        );
    }

    #[test]
    fn kr_string_terms() {
        // W_2 at 0: Y0 Y2 + Y0 Y4^-1 + Y2^-1 Y4^-1
        let t = string_terms(QString { start: 0, len: 2 }, 1);
        assert_eq!(t, vec![vec![], vec![3], vec![3, 1]]);
    }

    #[test]
    fn product_of_two_points() {
        let ch = sl2_character(&pos(&[0, 4]), 1);
        assert_eq!(ch.len(), 4);
        assert!(ch.values().all(|&k| k == 1));
        let ch = sl2_character(&pos(&[0, 0]), 1);
        // Y0^2 + 2 Y0 Y2^-1 + Y2^-2
        assert_eq!(ch[&vec![1]], 2);
        assert_eq!(ch[&vec![1, 1]], 1);
    }

    #[test]
    fn peeling_check() {
        let mut terms = HashMap::new();
        terms.insert(BTreeMap::from([(0, 1)]), 1);
        terms.insert(BTreeMap::from([(2, -1)]), 1);
        assert!(is_sum_of_simple_characters(&terms, 1));
        terms.insert(BTreeMap::from([(5, -1)]), 1);
        assert!(!is_sum_of_simple_characters(&terms, 1));
    }
}
