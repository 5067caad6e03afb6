use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use crate::error::{self, Error, Result};
use crate::liealg::CartanData;

use super::character::QCharacter;
use super::monomial::{a_pattern, YMonomial};
use super::sl2;

/// Default cap on the number of distinct monomials in one q-character.
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

struct Pending {
    depth: usize,
    colors: SmallVec<[i64; 4]>,
}

/// Frenkel-Mukhin algorithm.
///
/// Monomials are processed by depth (number of `A^{-1}` factors below the
/// highest monomial). A monomial's multiplicity is the largest of its
/// colours `s_i`; for every node `i` with `s_i` below that multiplicity the
/// monomial must be `i`-dominant, and the missing copies of its rank-one
/// q-character in direction `i` are added below it, colouring the new
/// monomials by `i`.
///
/// Only valid when the q-character has a single dominant monomial, as for
/// Kirillov-Reshetikhin modules.
pub fn fm_qcharacter(cd: &CartanData, highest: &YMonomial, budget: usize) -> Result<QCharacter> {
    if !highest.is_dominant() {
        return Err(Error::InvalidArgument(format!(
            "highest monomial {highest} is not dominant"
        )));
    }
    let rank = cd.rank();
    let patterns: Vec<Vec<(usize, i32, i32)>> = (1..=rank).map(|i| a_pattern(cd, i)).collect();

    let mut pending: HashMap<YMonomial, Pending> = HashMap::new();
    pending.insert(
        highest.clone(),
        Pending {
            depth: 0,
            colors: SmallVec::from_elem(0, rank),
        },
    );
    let mut levels: Vec<Vec<YMonomial>> = vec![vec![highest.clone()]];
    let mut terms: HashMap<YMonomial, i64> = HashMap::new();

    let mut depth = 0;
    while depth < levels.len() {
        let level = std::mem::take(&mut levels[depth]);
        for m in level {
            let Pending { colors, .. } = pending.remove(&m).expect("queued monomial is pending");
            let mult = if depth == 0 {
                1
            } else {
                colors.iter().copied().max().unwrap_or(0)
            };
            for i in 1..=rank {
                let missing = mult - colors[i - 1];
                if missing <= 0 {
                    continue;
                }
                if !m.is_node_dominant(i) {
                    return Err(Error::FmInconsistency {
                        monomial: m.to_string(),
                        node: i,
                    });
                }
                let r = cd.root_length(i) as i32;
                let positions: BTreeMap<i32, u32> =
                    m.node_part(i).map(|(p, e)| (p, e as u32)).collect();
                for (shifts, coeff) in sl2::sl2_character(&positions, r) {
                    if shifts.is_empty() {
                        continue;
                    }
                    let lowering = YMonomial::from_factors(shifts.iter().flat_map(|&c| {
                        patterns[i - 1]
                            .iter()
                            .map(move |&(j, off, e)| (j, c + off, -e))
                    }))?;
                    let lower = m.mul(&lowering)?;
                    let target = depth + shifts.len();
                    let entry = match pending.get_mut(&lower) {
                        Some(e) => e,
                        None => {
                            if terms.contains_key(&lower) {
                                return Err(Error::FmInconsistency {
                                    monomial: lower.to_string(),
                                    node: i,
                                });
                            }
                            if terms.len() + pending.len() >= budget {
                                return Err(Error::BudgetExceeded { budget });
                            }
                            if levels.len() <= target {
                                levels.resize_with(target + 1, Vec::new);
                            }
                            levels[target].push(lower.clone());
                            pending.entry(lower).or_insert(Pending {
                                depth: target,
                                colors: SmallVec::from_elem(0, rank),
                            })
                        }
                    };
                    if entry.depth != target {
                        return Err(Error::FmInconsistency {
                            monomial: m.to_string(),
                            node: i,
                        });
                    }
                    entry.colors[i - 1] =
                        error::add(entry.colors[i - 1], error::mul(missing, coeff)?)?;
                }
            }
            terms.insert(m, mult);
        }
        depth += 1;
    }
    QCharacter::new(cd.cartan_type(), highest.clone(), terms)
}
