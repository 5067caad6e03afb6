use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Weight;

/// Dynkin series of a simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A Cartan type such as `B2`. Cheap to copy; used to tag characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::UnsupportedAlgebra(format!(
                "{}{}",
                series.letter(),
                rank
            )))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unsupported = || Error::UnsupportedAlgebra(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        CartanType::new(series, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Root-system data of a simple Lie algebra.
///
/// Convention: `matrix[i][j] = <alpha_i^vee, alpha_j>`, so the simple root
/// `alpha_j` has fundamental-weight coordinates given by column `j`, and
/// `diag(root_lengths) * matrix` is symmetric with `(alpha_i, alpha_j) =
/// root_lengths[i] * matrix[i][j]` (short roots have squared length 2).
///
/// Node labels in the public API are 1-based, as in Bourbaki.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    ty: CartanType,
    matrix: Vec<Vec<i64>>,
    root_lengths: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    positive_roots: Vec<Vec<i64>>,
    det: i64,
    adjugate: Vec<Vec<i64>>,
}

/// Cartan matrix and root lengths for a supported `(series, rank)`.
pub fn cartan_data(series: Series, rank: usize) -> Result<CartanData> {
    CartanData::new(CartanType::new(series, rank)?)
}

impl CartanData {
    pub fn new(ty: CartanType) -> Result<Self> {
        let n = ty.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i - 1][j - 1] = -1;
            c[j - 1][i - 1] = -1;
        };
        let mut r = vec![1i64; n];
        match ty.series {
            Series::A | Series::B | Series::C => {
                for i in 1..n {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 1..n - 1 {
                    link(i, i + 1);
                }
                link(n - 2, n);
            }
            Series::E => {
                link(1, 3);
                link(3, 4);
                link(2, 4);
                for i in 4..n {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(1, 2);
                link(2, 3);
                link(3, 4);
            }
            Series::G => link(1, 2),
        }
        match ty.series {
            Series::B => {
                c[n - 1][n - 2] = -2;
                r = vec![2; n];
                r[n - 1] = 1;
            }
            Series::C => {
                c[n - 2][n - 1] = -2;
                r[n - 1] = 2;
            }
            Series::F => {
                c[2][1] = -2;
                r = vec![2, 2, 1, 1];
            }
            Series::G => {
                c[0][1] = -3;
                r = vec![1, 3];
            }
            _ => {}
        }
        let det = determinant(&c);
        let adjugate = adjugate(&c);
        let mut cd = CartanData {
            ty,
            matrix: c,
            root_lengths: r,
            positive_roots: Vec::new(),
            det,
            adjugate,
        };
        cd.positive_roots = cd.enumerate_positive_roots()?;
        Ok(cd)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Entry `C_{ij}` for 1-based nodes.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn root_lengths(&self) -> &[i64] {
        &self.root_lengths
    }

    /// `r_i` for a 1-based node.
    pub fn root_length(&self, i: usize) -> i64 {
        self.root_lengths[i - 1]
    }

    pub fn determinant(&self) -> i64 {
        self.det
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                node: i,
                rank: self.rank(),
            })
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::WeightRank {
                weight: w.to_string(),
                len: w.len(),
                rank: self.rank(),
            })
        }
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank());
        w[i - 1] = 1;
        w
    }

    /// `alpha_j` in the fundamental-weight basis (column `j` of the matrix).
    pub fn simple_root(&self, j: usize) -> Weight {
        self.matrix.iter().map(|row| row[j - 1]).collect()
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, coeffs: &[i64]) -> Weight {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(coeffs).map(|(a, n)| a * n).sum())
            .collect()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `(lambda, alpha)` for `alpha` given in simple-root coordinates.
    pub fn pair_with_root(&self, lambda: &Weight, alpha: &[i64]) -> i64 {
        alpha
            .iter()
            .zip(&self.root_lengths)
            .zip(lambda.iter())
            .map(|((n, r), l)| n * r * l)
            .sum()
    }

    /// `(alpha, alpha)` for a root in simple-root coordinates.
    pub fn root_norm(&self, alpha: &[i64]) -> i64 {
        let w = self.root_to_weight(alpha);
        self.pair_with_root(&w, alpha)
    }

    /// `lambda(h_alpha) = <lambda, alpha^vee>`.
    pub fn coroot_eval(&self, lambda: &Weight, alpha: &[i64]) -> i64 {
        2 * self.pair_with_root(lambda, alpha) / self.root_norm(alpha)
    }

    /// Simple reflection `s_i` (1-based) acting on a weight.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w[i - 1];
        w.iter()
            .zip(&self.matrix)
            .map(|(x, row)| x - k * row[i - 1])
            .collect()
    }

    /// `det(C)` times the simple-root coordinates of `w`.
    pub fn scaled_root_coords(&self, w: &Weight) -> Vec<i64> {
        self.adjugate
            .iter()
            .map(|row| row.iter().zip(w.iter()).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Integer height key: strictly increases when a simple root is added.
    pub fn height_key(&self, w: &Weight) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    /// True iff `hi - lo` is a nonnegative integer combination of simple roots.
    pub fn weight_leq(&self, lo: &Weight, hi: &Weight) -> bool {
        let diff: Weight = hi.iter().zip(lo.iter()).map(|(a, b)| a - b).collect();
        self.scaled_root_coords(&diff)
            .iter()
            .all(|&x| x >= 0 && x % self.det == 0)
    }

    fn enumerate_positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut frontier = roots.clone();
        // |R^+| <= n^2 + n for every simple type (E8: 120 < 72)
        let cap = 2 * (n * n + n).max(120);
        let mut iterations = 0;
        while !frontier.is_empty() {
            iterations += 1;
            if iterations > cap {
                return Err(Error::UnsupportedAlgebra(format!(
                    "root closure for {} did not terminate",
                    self.ty
                )));
            }
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| self.matrix[i][j] * beta[j]).sum();
                    if pairing == 0 {
                        continue;
                    }
                    let mut image = beta.clone();
                    image[i] -= pairing;
                    if image.iter().all(|&x| x >= 0) && seen.insert(image.clone()) {
                        next.push(image);
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        Ok(roots)
    }
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * determinant(&minor);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_supported() -> Vec<CartanData> {
        let mut v = Vec::new();
        for n in 1..=5 {
            v.push(cartan_data(Series::A, n).unwrap());
        }
        for n in 2..=4 {
            v.push(cartan_data(Series::B, n).unwrap());
            v.push(cartan_data(Series::C, n).unwrap());
        }
        v.push(cartan_data(Series::D, 4).unwrap());
        v.push(cartan_data(Series::D, 5).unwrap());
        for n in 6..=8 {
            v.push(cartan_data(Series::E, n).unwrap());
        }
        v.push(cartan_data(Series::F, 4).unwrap());
        v.push(cartan_data(Series::G, 2).unwrap());
        v
    }

    #[test]
    fn small_matrices() {
        let a1 = cartan_data(Series::A, 1).unwrap();
        assert_eq!(a1.matrix(), &[vec![2]]);
        assert_eq!(a1.root_lengths(), &[1]);
        let a2 = cartan_data(Series::A, 2).unwrap();
        assert_eq!(a2.matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.root_lengths(), &[1, 1]);
    }

    #[test]
    fn g2_has_triple_bond() {
        let g2 = cartan_data(Series::G, 2).unwrap();
        assert!(g2.matrix().iter().flatten().any(|&x| x == -3));
        let mut r = g2.root_lengths().to_vec();
        r.sort();
        assert_eq!(r, vec![1, 3]);
        assert_eq!(g2.determinant(), 1);
    }

    #[test]
    fn structural_invariants() {
        for cd in all_supported() {
            let n = cd.rank();
            let r = cd.root_lengths();
            for i in 0..n {
                assert_eq!(cd.matrix()[i][i], 2);
                for j in 0..n {
                    let cij = cd.matrix()[i][j];
                    if i != j {
                        assert!((-3..=0).contains(&cij), "{}", cd.cartan_type());
                        assert_eq!(cij == 0, cd.matrix()[j][i] == 0);
                    }
                    assert_eq!(r[i] * cij, r[j] * cd.matrix()[j][i], "{}", cd.cartan_type());
                }
            }
            assert!(cd.determinant() > 0);
        }
    }

    #[test]
    fn positive_root_counts() {
        let expected = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (name, count) in expected {
            let cd = CartanData::new(name.parse().unwrap()).unwrap();
            assert_eq!(cd.positive_roots().len(), count, "{name}");
        }
    }

    #[test]
    fn parse_and_display() {
        let t: CartanType = "b3".parse().unwrap();
        assert_eq!(t.to_string(), "B3");
        assert!("G3".parse::<CartanType>().is_err());
        assert!("X2".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
        assert!(matches!(
            cartan_data(Series::D, 3),
            Err(Error::UnsupportedAlgebra(_))
        ));
    }

    #[test]
    fn simple_roots_are_columns() {
        let b2 = cartan_data(Series::B, 2).unwrap();
        // alpha_1 long, alpha_2 short
        assert_eq!(b2.simple_root(1).as_slice(), &[2, -2]);
        assert_eq!(b2.simple_root(2).as_slice(), &[-1, 2]);
        for alpha in b2.positive_roots() {
            let norm = b2.root_norm(alpha);
            assert!(norm == 2 || norm == 4);
        }
    }
}
