//! Root systems of the simple Lie algebras, Bourbaki numbering.
//!
//! Cartan matrices use the convention `cartan[i][j] = <alpha_j, alpha_i^vee>`,
//! i.e. row `i` pairs every simple root against the `i`-th coroot. All
//! pairings go through [`coroot_pairing`] (or [`RootDatum::pairing`]) so the
//! convention lives in exactly one place. Positive roots are generated from
//! Cartan integers alone via root strings; no Euclidean model is used.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default rank bound for enumerations.
pub const DEFAULT_MAX_RANK: usize = 8;
/// No type above this rank is ever constructed.
pub const RANK_HARD_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("{family}{rank} is not a simple type: {constraint}")]
    InvalidRank {
        family: Family,
        rank: usize,
        constraint: &'static str,
    },
    #[error("rank {rank} exceeds the hard cap {cap}")]
    RankAboveCap { rank: usize, cap: usize },
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("root has {got} coordinates, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("cannot parse type token {0:?} (expected e.g. A4, E8)")]
    BadToken(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    /// Whether `rank` is allowed, and if not, the constraint it violates.
    fn check_rank(self, rank: usize) -> Result<(), &'static str> {
        let ok = match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            Family::A => "A requires rank >= 1",
            Family::B => "B requires rank >= 2",
            Family::C => "C requires rank >= 3",
            Family::D => "D requires rank >= 4",
            Family::E => "E requires rank 6, 7 or 8",
            Family::F => "F requires rank 4",
            Family::G => "G requires rank 2",
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple Lie type such as `E8` or `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        if rank > RANK_HARD_CAP {
            return Err(RootSystemError::RankAboveCap {
                rank,
                cap: RANK_HARD_CAP,
            });
        }
        family
            .check_rank(rank)
            .map_err(|constraint| RootSystemError::InvalidRank {
                family,
                rank,
                constraint,
            })?;
        Ok(SimpleType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid type of rank at most `max_rank`, in (family, rank) order.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank.min(RANK_HARD_CAP) {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn check_node(&self, node: usize) -> Result<(), RootSystemError> {
        if node == 0 || node > self.rank {
            Err(RootSystemError::NodeOutOfRange {
                node,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootSystemError::BadToken(s.to_string());
        let mut chars = s.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

impl TryFrom<String> for SimpleType {
    type Error = RootSystemError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SimpleType> for String {
    fn from(t: SimpleType) -> String {
        t.to_string()
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, node: usize) -> Root {
        let mut c = vec![0; rank];
        c[node - 1] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Coefficient at a 1-based node.
    pub fn coeff(&self, node: usize) -> i64 {
        self.0[node - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A simple type with its Cartan matrix and positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
}

impl RootDatum {
    pub fn new(ty: SimpleType) -> RootDatum {
        let cartan = cartan_matrix(ty);
        let positive_roots = enumerate_positive_roots(&cartan);
        RootDatum {
            ty,
            cartan,
            positive_roots,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Cartan entry for 1-based nodes: `<alpha_j, alpha_i^vee>`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// `<root, alpha_i^vee>` for a 1-based node `i`.
    pub fn pairing(&self, root: &Root, i: usize) -> Result<i64, RootSystemError> {
        self.ty.check_node(i)?;
        if root.0.len() != self.rank() {
            return Err(RootSystemError::LengthMismatch {
                got: root.0.len(),
                expected: self.rank(),
            });
        }
        Ok(pair_row(&self.cartan[i - 1], &root.0))
    }

    pub fn lie_algebra_dim(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }
}

fn pair_row(row: &[i64], coeffs: &[i64]) -> i64 {
    row.iter().zip(coeffs).map(|(a, c)| a * c).sum()
}

/// Cartan matrix of a simple type, Bourbaki numbering.
pub fn cartan_matrix(ty: SimpleType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    // Bonds use 1-based nodes. For a multiple bond between a long node `l`
    // and a short node `s`: <alpha_s, alpha_l^vee> = -1 and
    // <alpha_l, alpha_s^vee> = -multiplicity.
    let mut simple = |a: usize, b: usize| {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
    };
    match ty.family {
        Family::A => (1..n).for_each(|i| simple(i, i + 1)),
        Family::B | Family::C => (1..n - 1).for_each(|i| simple(i, i + 1)),
        Family::D => {
            (1..n - 1).for_each(|i| simple(i, i + 1));
            simple(n - 2, n);
        }
        Family::E => {
            simple(1, 3);
            simple(2, 4);
            (3..n).for_each(|i| simple(i, i + 1));
        }
        Family::F => {
            simple(1, 2);
            simple(3, 4);
        }
        Family::G => {}
    }
    let mut multiple = |long: usize, short: usize, mult: i64| {
        m[long - 1][short - 1] = -1;
        m[short - 1][long - 1] = -mult;
    };
    match ty.family {
        // alpha_n short
        Family::B => multiple(n - 1, n, 2),
        // alpha_n long
        Family::C => multiple(n, n - 1, 2),
        // alpha_1, alpha_2 long
        Family::F => multiple(2, 3, 2),
        // alpha_1 short, alpha_2 long
        Family::G => multiple(2, 1, 3),
        _ => {}
    }
    m
}

/// Positive roots of the root system with the given Cartan matrix.
///
/// Works for any (possibly reducible) finite-type Cartan matrix. Output is
/// sorted by height, then lexicographically by coefficients.
pub fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (1..=n).map(|i| Root::simple(n, i).0).collect();
    known.extend(layer.iter().cloned());
    let mut all = layer.clone();

    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // alpha_i itself: 2 alpha_i is never a root.
                if beta.iter().enumerate().all(|(k, &c)| (k == i) == (c != 0)) {
                    continue;
                }
                // p = length of the alpha_i-string below beta.
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] < 0 || !known.contains(&probe) {
                        break;
                    }
                    p += 1;
                }
                let q = p - pair_row(&cartan[i], beta);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        known.extend(layer.iter().cloned());
        all.extend(layer.iter().cloned());
    }

    let mut roots: Vec<Root> = all.into_iter().map(Root).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));
    roots
}

pub fn positive_roots(ty: SimpleType) -> Vec<Root> {
    enumerate_positive_roots(&cartan_matrix(ty))
}

/// `<root, alpha_i^vee>` with `i` 1-based.
pub fn coroot_pairing(root: &Root, i: usize, datum: &RootDatum) -> Result<i64, RootSystemError> {
    datum.pairing(root, i)
}

/// `rank + 2 |positive roots|`.
pub fn lie_algebra_dim(ty: SimpleType) -> usize {
    ty.rank + 2 * positive_roots(ty).len()
}

/// Closed-form dimension of the simple Lie algebra of the given family and
/// rank. Accepts small ranks outside the [`SimpleType`] constraints (e.g.
/// `D3`) since coincident types are used when remapping automorphism groups.
pub fn lie_algebra_dim_closed_form(family: Family, rank: usize) -> usize {
    let l = rank;
    match family {
        Family::A => l * l + 2 * l,
        Family::B | Family::C => 2 * l * l + l,
        Family::D => 2 * l * l - l,
        Family::E => match l {
            6 => 78,
            7 => 133,
            _ => 248,
        },
        Family::F => 52,
        Family::G => 14,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn rank_constraints() {
        assert!(SimpleType::new(Family::A, 1).is_ok());
        assert!(SimpleType::new(Family::A, 0).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
        assert!(SimpleType::new(Family::C, 2).is_err());
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!(SimpleType::new(Family::E, 9).is_err());
        assert!(SimpleType::new(Family::F, 5).is_err());
        assert!(SimpleType::new(Family::G, 3).is_err());
        let err = SimpleType::new(Family::D, 3).unwrap_err().to_string();
        assert!(err.contains("D requires rank >= 4"), "{err}");
        assert!(matches!(
            SimpleType::new(Family::A, 17),
            Err(RootSystemError::RankAboveCap { .. })
        ));
    }

    #[test]
    fn parse_tokens() {
        assert_eq!("E8".parse::<SimpleType>().unwrap(), t(Family::E, 8));
        assert_eq!("a4".parse::<SimpleType>().unwrap(), t(Family::A, 4));
        assert!("X4".parse::<SimpleType>().is_err());
        assert!("A".parse::<SimpleType>().is_err());
        assert!("E5".parse::<SimpleType>().is_err());
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(
            cartan_matrix(t(Family::A, 2)),
            vec![vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(
            cartan_matrix(t(Family::B, 2)),
            vec![vec![2, -1], vec![-2, 2]]
        );
        // alpha_1 short: <alpha_2, alpha_1^vee> = -3 sits at row 1, column 2.
        assert_eq!(
            cartan_matrix(t(Family::G, 2)),
            vec![vec![2, -3], vec![-1, 2]]
        );
    }

    #[test]
    fn cartan_shape() {
        for ty in SimpleType::all_up_to(RANK_HARD_CAP) {
            let c = cartan_matrix(ty);
            for (i, row) in c.iter().enumerate() {
                assert_eq!(row[i], 2);
                for (j, &x) in row.iter().enumerate() {
                    if i != j {
                        assert!(x <= 0);
                        assert_eq!(x == 0, c[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn a2_roots() {
        let roots = positive_roots(t(Family::A, 2));
        assert_eq!(
            roots,
            vec![Root(vec![0, 1]), Root(vec![1, 0]), Root(vec![1, 1])]
        );
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(t(Family::B, 3)).len(), 9);
        assert_eq!(positive_roots(t(Family::E, 8)).len(), 120);
        assert_eq!(positive_roots(t(Family::G, 2)).len(), 6);
        assert_eq!(positive_roots(t(Family::F, 4)).len(), 24);
    }

    #[test]
    fn g2_highest_root() {
        // alpha_1 short, so the highest root is 3 alpha_1 + 2 alpha_2.
        let roots = positive_roots(t(Family::G, 2));
        assert_eq!(roots.last().unwrap(), &Root(vec![3, 2]));
    }

    #[test]
    fn pairings() {
        let d = RootDatum::new(t(Family::A, 2));
        assert_eq!(coroot_pairing(&Root(vec![1, 0]), 1, &d), Ok(2));
        assert_eq!(coroot_pairing(&Root(vec![1, 1]), 1, &d), Ok(1));
        assert!(matches!(
            coroot_pairing(&Root(vec![1, 1]), 3, &d),
            Err(RootSystemError::NodeOutOfRange { .. })
        ));
        assert!(matches!(
            coroot_pairing(&Root(vec![1]), 1, &d),
            Err(RootSystemError::LengthMismatch { .. })
        ));
    }

    /// Invariant form on simple roots, symmetrized from the Cartan matrix:
    /// `(alpha_i, alpha_j) = cartan[i][j] * |alpha_i|^2 / 2`.
    fn gram(cartan: &[Vec<i64>]) -> Vec<Vec<num_rational::Ratio<i64>>> {
        use num_rational::Ratio;
        let n = cartan.len();
        let mut norm: Vec<Option<Ratio<i64>>> = vec![None; n];
        norm[0] = Some(Ratio::from_integer(2));
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if let (Some(ni), None) = (norm[i], norm[j]) {
                        if cartan[i][j] != 0 {
                            norm[j] = Some(ni * cartan[i][j] / cartan[j][i]);
                            changed = true;
                        }
                    }
                }
            }
        }
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Ratio::from_integer(cartan[i][j]) * norm[i].unwrap() / 2)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn weyl_dimension_of_highest_root_is_lie_dim() {
        use num_rational::Ratio;
        // Weyl dimension formula for the adjoint representation, highest
        // weight theta: prod over positive alpha of (theta+rho, alpha)/(rho, alpha).
        for ty in [
            t(Family::G, 2),
            t(Family::B, 3),
            t(Family::C, 3),
            t(Family::F, 4),
            t(Family::E, 6),
            t(Family::D, 5),
        ] {
            let d = RootDatum::new(ty);
            let g = gram(d.cartan());
            let form = |x: &[Ratio<i64>], y: &[Ratio<i64>]| -> Ratio<i64> {
                let mut s = Ratio::from_integer(0);
                for i in 0..x.len() {
                    for j in 0..y.len() {
                        s += x[i] * y[j] * g[i][j];
                    }
                }
                s
            };
            let as_q = |r: &Root| -> Vec<Ratio<i64>> {
                r.coeffs().iter().map(|&c| Ratio::from_integer(c)).collect()
            };
            let rank = d.rank();
            let mut rho = vec![Ratio::from_integer(0); rank];
            for r in d.positive_roots() {
                for (k, c) in r.coeffs().iter().enumerate() {
                    rho[k] += Ratio::new(*c, 2);
                }
            }
            let theta = as_q(d.positive_roots().last().unwrap());
            let shifted: Vec<_> = theta.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let mut dim = Ratio::from_integer(1);
            for r in d.positive_roots() {
                let a = as_q(r);
                dim *= form(&shifted, &a) / form(&rho, &a);
            }
            assert_eq!(dim, Ratio::from_integer(d.lie_algebra_dim() as i64), "{ty}");
        }
    }

    #[test]
    fn g2_highest_root_pairings() {
        let d = RootDatum::new(t(Family::G, 2));
        let theta = d.positive_roots().last().unwrap().clone();
        assert_eq!(d.pairing(&theta, 1), Ok(0));
        assert_eq!(d.pairing(&theta, 2), Ok(1));
        // <2 rho, alpha_i^vee> = 2 at every node.
        for i in 1..=2 {
            let two_rho: i64 = d
                .positive_roots()
                .iter()
                .map(|r| d.pairing(r, i).unwrap())
                .sum();
            assert_eq!(two_rho, 2);
        }
        assert_eq!(d.lie_algebra_dim(), 14);
    }

    #[test]
    fn lie_dims() {
        assert_eq!(lie_algebra_dim(t(Family::E, 8)), 248);
        assert_eq!(lie_algebra_dim(t(Family::A, 4)), 24);
        for ty in SimpleType::all_up_to(RANK_HARD_CAP) {
            assert_eq!(
                lie_algebra_dim(ty),
                lie_algebra_dim_closed_form(ty.family(), ty.rank()),
                "{ty}"
            );
        }
    }
}
