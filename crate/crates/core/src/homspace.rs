//! Rational homogeneous spaces `G/P(Sigma)`.
//!
//! A space is a product of marked simple factors. Every invariant is computed
//! factor by factor from the root engine: the tangent directions of a factor
//! are the positive roots touching a marked node, and the anticanonical
//! coefficient at a marked node `i` is `<c_Sigma, alpha_i^vee>` where
//! `c_Sigma` is the sum of those roots.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys::{
    lie_algebra_dim_closed_form, Family, Root, RootDatum, RootSystemError, SimpleType,
};

/// Default cap on the number of simple factors in a product.
pub const DEFAULT_MAX_COMPONENTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomSpaceError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("{got} factors exceeds the limit of {max}")]
    TooManyFactors { got: usize, max: usize },
    #[error("space has no factors")]
    Empty,
    #[error("anticanonical coefficient j_{node} = {value} on factor {factor} is not positive")]
    NonPositiveAnticanonical {
        factor: usize,
        node: usize,
        value: i64,
    },
    #[error("operation requires Picard rank one on a simple factor, got {0}")]
    NotPicardOne(String),
}

/// Marked Dynkin nodes of one simple factor (1-based).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(BTreeSet<usize>);

impl Marking {
    pub fn new(nodes: impl IntoIterator<Item = usize>) -> Marking {
        Marking(nodes.into_iter().collect())
    }

    pub fn single(node: usize) -> Marking {
        Marking::new([node])
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.contains(&node)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Marking) -> bool {
        self.0.is_subset(&other.0)
    }

    fn validate(&self, ty: SimpleType) -> Result<(), RootSystemError> {
        self.nodes().try_for_each(|n| ty.check_node(n))
    }

    /// All nonempty markings of a rank-`rank` diagram, ordered by bitmask.
    pub fn all_nonempty(rank: usize) -> Vec<Marking> {
        (1u32..(1 << rank))
            .map(|mask| Marking::new((1..=rank).filter(|i| mask & (1 << (i - 1)) != 0)))
            .collect()
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One marked simple factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    #[serde(rename = "type")]
    pub ty: SimpleType,
    pub marking: Marking,
}

impl Factor {
    pub fn new(ty: SimpleType, marking: Marking) -> Result<Factor, HomSpaceError> {
        marking.validate(ty)?;
        Ok(Factor { ty, marking })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/P{}", self.ty, self.marking)
    }
}

/// A product of marked simple factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomSpace {
    factors: Vec<Factor>,
}

impl HomSpace {
    pub fn new(factors: Vec<Factor>) -> Result<HomSpace, HomSpaceError> {
        HomSpace::with_limit(factors, DEFAULT_MAX_COMPONENTS)
    }

    pub fn with_limit(
        factors: Vec<Factor>,
        max_components: usize,
    ) -> Result<HomSpace, HomSpaceError> {
        if factors.is_empty() {
            return Err(HomSpaceError::Empty);
        }
        if factors.len() > max_components {
            return Err(HomSpaceError::TooManyFactors {
                got: factors.len(),
                max: max_components,
            });
        }
        Ok(HomSpace { factors })
    }

    /// `G/P` for a single simple factor.
    pub fn simple(ty: SimpleType, marking: Marking) -> Result<HomSpace, HomSpaceError> {
        HomSpace::new(vec![Factor::new(ty, marking)?])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn picard_rank(&self) -> usize {
        self.factors.iter().map(|f| f.marking.len()).sum()
    }

    /// The single (type, node) of a Picard-rank-one space on one factor.
    pub fn as_picard_one(&self) -> Option<(SimpleType, usize)> {
        match self.factors.as_slice() {
            [f] if f.marking.len() == 1 => Some((f.ty, f.marking.nodes().next()?)),
            _ => None,
        }
    }
}

impl fmt::Display for HomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Positive roots supported away from every marked node.
pub fn phi_plus_sigma(datum: &RootDatum, marking: &Marking) -> Vec<Root> {
    datum
        .positive_roots()
        .iter()
        .filter(|r| marking.nodes().all(|i| r.coeff(i) == 0))
        .cloned()
        .collect()
}

/// Per-factor invariants; products are assembled from these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorInvariants {
    pub dimension: usize,
    /// `(node, j)` for each marked node, ascending.
    pub j: Vec<(usize, i64)>,
}

impl FactorInvariants {
    pub fn compute(datum: &RootDatum, marking: &Marking) -> FactorInvariants {
        let rank = datum.rank();
        let mut c_sigma = vec![0i64; rank];
        let mut dimension = 0;
        for root in datum.positive_roots() {
            if marking.nodes().any(|i| root.coeff(i) != 0) {
                dimension += 1;
                for (acc, c) in c_sigma.iter_mut().zip(root.coeffs()) {
                    *acc += c;
                }
            }
        }
        let c_sigma = Root(c_sigma);
        let j = marking
            .nodes()
            .map(|i| (i, datum.pairing(&c_sigma, i).expect("marking validated")))
            .collect();
        FactorInvariants { dimension, j }
    }
}

/// Anticanonical coefficient attached to one marked node of one factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeCoefficient {
    /// 0-based factor index.
    pub factor: usize,
    /// 1-based node within the factor.
    pub node: usize,
    pub j: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceInvariants {
    pub dimension: usize,
    pub picard_rank: usize,
    pub j: Vec<NodeCoefficient>,
    /// Only defined for Picard rank one.
    pub aut_dim: Option<usize>,
}

impl SpaceInvariants {
    /// Assembles invariants of a product from per-factor data, in factor order.
    pub fn from_factors(
        space: &HomSpace,
        parts: &[FactorInvariants],
    ) -> Result<SpaceInvariants, HomSpaceError> {
        let mut j = Vec::new();
        for (factor, part) in parts.iter().enumerate() {
            for &(node, value) in &part.j {
                if value <= 0 {
                    return Err(HomSpaceError::NonPositiveAnticanonical {
                        factor,
                        node,
                        value,
                    });
                }
                j.push(NodeCoefficient {
                    factor,
                    node,
                    j: value,
                });
            }
        }
        Ok(SpaceInvariants {
            dimension: parts.iter().map(|p| p.dimension).sum(),
            picard_rank: space.picard_rank(),
            j,
            aut_dim: aut_dim(space).ok(),
        })
    }

    pub fn compute(space: &HomSpace) -> Result<SpaceInvariants, HomSpaceError> {
        let parts: Vec<FactorInvariants> = space
            .factors()
            .iter()
            .map(|f| FactorInvariants::compute(&RootDatum::new(f.ty), &f.marking))
            .collect();
        SpaceInvariants::from_factors(space, &parts)
    }

    pub fn max_j(&self) -> Option<i64> {
        self.j.iter().map(|c| c.j).max()
    }

    pub fn j_values(&self) -> Vec<i64> {
        self.j.iter().map(|c| c.j).collect()
    }
}

/// Sum over factors of `|Phi+| - |Phi+(Sigma)|`.
pub fn dimension(space: &HomSpace) -> usize {
    space
        .factors()
        .iter()
        .map(|f| {
            let datum = RootDatum::new(f.ty);
            datum.positive_roots().len() - phi_plus_sigma(&datum, &f.marking).len()
        })
        .sum()
}

/// `j_i` for every marked node, in (factor, node) order.
pub fn anticanonical_coefficients(space: &HomSpace) -> Result<Vec<NodeCoefficient>, HomSpaceError> {
    SpaceInvariants::compute(space).map(|inv| inv.j)
}

/// Row formulas of the classical families and value grids of the exceptional
/// ones, exactly as tabulated for Picard-rank-one quotients.
pub fn table1_printed_dimension(ty: SimpleType, node: usize) -> Result<usize, HomSpaceError> {
    ty.check_node(node)?;
    let (l, r) = (ty.rank() as i64, node as i64);
    let n = match ty.family() {
        Family::A => r * (l + 1 - r),
        Family::B | Family::C => r * (4 * l + 1 - 3 * r) / 2,
        Family::D => r * (4 * l - 1 - 3 * r) / 2,
        Family::E => {
            let grid: &[i64] = match l {
                6 => &[16, 21, 25, 29, 25, 16],
                7 => &[33, 42, 47, 53, 50, 42, 27],
                _ => &[78, 92, 98, 106, 104, 97, 83, 57],
            };
            grid[node - 1]
        }
        Family::F => [15, 20, 20, 15][node - 1],
        Family::G => [5, 5][node - 1],
    };
    Ok(n as usize)
}

/// Closed-form dimension of `G/P_node`.
///
/// Identical to [`table1_printed_dimension`] except at the spinor node
/// `l - 1` of `D_l`, where the printed row formula does not apply; that node
/// is exchanged with node `l` by the diagram automorphism, so both share the
/// value `l(l-1)/2`.
pub fn table1_dimension(ty: SimpleType, node: usize) -> Result<usize, HomSpaceError> {
    if ty.family() == Family::D && node + 1 == ty.rank() {
        return table1_printed_dimension(ty, ty.rank());
    }
    table1_printed_dimension(ty, node)
}

/// Whether the printed row formula is known not to apply at this cell.
pub fn table1_printed_formula_differs(ty: SimpleType, node: usize) -> bool {
    ty.family() == Family::D && node + 1 == ty.rank()
}

/// Dimension of the automorphism group of a Picard-rank-one `G/P`.
///
/// Equals `dim g` except for the three exceptional pairs, which are remapped
/// to the larger group acting on the same variety:
/// `(C_l, P_1) -> A_{2l-1}`, `(B_l, P_l) -> D_{l+1}`, `(G_2, P_1) -> B_3`.
pub fn aut_dim(space: &HomSpace) -> Result<usize, HomSpaceError> {
    let (ty, node) = space
        .as_picard_one()
        .ok_or_else(|| HomSpaceError::NotPicardOne(space.to_string()))?;
    let l = ty.rank();
    let (family, rank) = match (ty.family(), node) {
        (Family::C, 1) => (Family::A, 2 * l - 1),
        (Family::B, n) if n == l => (Family::D, l + 1),
        (Family::G, 1) => (Family::B, 3),
        (f, _) => (f, l),
    };
    Ok(lie_algebra_dim_closed_form(family, rank))
}

/// Degree of the ample generator of Pic in its minimal embedding, for the
/// spaces where the verifier needs it.
pub fn plucker_degree(model: Model) -> Option<u64> {
    match model {
        Model::Gr25 => Some(5),
        _ => None,
    }
}

/// Recognized special models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "model", content = "param")]
pub enum Model {
    ProjSpace(usize),
    Quadric(usize),
    Gr25,
    P1xPl(usize),
    Other,
}

impl Model {
    pub fn is_anticanonical_exception(self) -> bool {
        matches!(
            self,
            Model::ProjSpace(_) | Model::Quadric(_) | Model::P1xPl(_)
        )
    }

    pub fn is_large_automorphism_model(self) -> bool {
        matches!(self, Model::ProjSpace(_) | Model::Quadric(_) | Model::Gr25)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::ProjSpace(n) => write!(f, "P^{n}"),
            Model::Quadric(n) => write!(f, "Q^{n}"),
            Model::Gr25 => write!(f, "Gr(2,5)"),
            Model::P1xPl(l) => write!(f, "P^1 x P^{l}"),
            Model::Other => write!(f, "other"),
        }
    }
}

fn picard_one_model(ty: SimpleType, node: usize) -> Model {
    let l = ty.rank();
    match (ty.family(), l, node) {
        (Family::A, _, n) if n == 1 || n == l => Model::ProjSpace(l),
        (Family::A, 3, 2) => Model::Quadric(4),
        (Family::A, 4, 2 | 3) => Model::Gr25,
        (Family::B, 2, 2) => Model::ProjSpace(3),
        (Family::B, _, 1) => Model::Quadric(2 * l - 1),
        // spinor variety S_3 = B3/P3 = D4/P4
        (Family::B, 3, 3) => Model::Quadric(6),
        (Family::C, _, 1) => Model::ProjSpace(2 * l - 1),
        (Family::D, _, 1) => Model::Quadric(2 * l - 2),
        (Family::D, 4, 3 | 4) => Model::Quadric(6),
        (Family::G, _, 1) => Model::Quadric(5),
        _ => Model::Other,
    }
}

/// Curated isomorphism table; anything unrecognized is [`Model::Other`].
pub fn identify_model(space: &HomSpace) -> Model {
    if let Some((ty, node)) = space.as_picard_one() {
        return picard_one_model(ty, node);
    }
    if let [a, b] = space.factors() {
        let proj = |f: &Factor| match f.marking.len() {
            1 => match picard_one_model(f.ty, f.marking.nodes().next().unwrap()) {
                Model::ProjSpace(n) => Some(n),
                _ => None,
            },
            _ => None,
        };
        if let (Some(x), Some(y)) = (proj(a), proj(b)) {
            if x == 1 {
                return Model::P1xPl(y);
            }
            if y == 1 {
                return Model::P1xPl(x);
            }
        }
    }
    Model::Other
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn space(s: &str, nodes: &[usize]) -> HomSpace {
        HomSpace::simple(t(s), Marking::new(nodes.iter().copied())).unwrap()
    }

    fn j(space: &HomSpace) -> Vec<i64> {
        anticanonical_coefficients(space)
            .unwrap()
            .into_iter()
            .map(|c| c.j)
            .collect()
    }

    #[test]
    fn phi_plus_sigma_examples() {
        let a2 = RootDatum::new(t("A2"));
        assert!(phi_plus_sigma(&a2, &Marking::new([1, 2])).is_empty());
        assert_eq!(
            phi_plus_sigma(&a2, &Marking::single(1)),
            vec![Root(vec![0, 1])]
        );
        let g2 = RootDatum::new(t("G2"));
        assert_eq!(phi_plus_sigma(&g2, &Marking::single(1)).len(), 1);
        assert_eq!(dimension(&space("G2", &[1])), 5);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&space("E8", &[4])), 106);
        assert_eq!(dimension(&space("A4", &[2])), 6);
        assert_eq!(dimension(&space("A2", &[1, 2])), 3);
    }

    #[test]
    fn table1_examples() {
        assert_eq!(table1_dimension(t("B3"), 2), Ok(7));
        assert_eq!(table1_dimension(t("E6"), 2), Ok(21));
        assert_eq!(table1_dimension(t("D4"), 1), Ok(6));
        assert!(table1_dimension(t("D4"), 5).is_err());
    }

    #[test]
    fn printed_d_row_misses_node_l_minus_1() {
        // D4/P3 is a six-dimensional quadric; the printed row formula gives 9.
        assert_eq!(table1_printed_dimension(t("D4"), 3), Ok(9));
        assert_eq!(dimension(&space("D4", &[3])), 6);
        assert_eq!(table1_dimension(t("D4"), 3), Ok(6));
    }

    #[test]
    fn anticanonical_examples() {
        assert_eq!(j(&space("A2", &[1, 2])), vec![2, 2]);
        assert_eq!(j(&space("B2", &[1])), vec![3]);
        for n in 1..=8 {
            assert_eq!(j(&space(&format!("A{n}"), &[1])), vec![n as i64 + 1]);
        }
        assert_eq!(j(&space("G2", &[1])), vec![5]);
        assert_eq!(j(&space("G2", &[2])), vec![3]);
        assert_eq!(j(&space("A4", &[2])), vec![5]);
    }

    #[test]
    fn exceptional_fano_indices() {
        // Adjoint and coadjoint varieties and the Cayley plane.
        assert_eq!(j(&space("E6", &[1])), vec![12]);
        assert_eq!(j(&space("E7", &[7])), vec![18]);
        assert_eq!(j(&space("F4", &[1])), vec![8]);
        assert_eq!(j(&space("F4", &[4])), vec![11]);
        assert_eq!(j(&space("E8", &[8])), vec![29]);
    }

    #[test]
    fn aut_dim_examples() {
        assert_eq!(aut_dim(&space("A4", &[2])), Ok(24));
        assert_eq!(aut_dim(&space("C3", &[1])), Ok(35));
        assert_eq!(aut_dim(&space("G2", &[1])), Ok(21));
        assert_eq!(aut_dim(&space("B2", &[2])), Ok(15));
        assert_eq!(aut_dim(&space("B3", &[3])), Ok(28));
        assert_eq!(aut_dim(&space("E6", &[1])), Ok(78));
        assert!(matches!(
            aut_dim(&space("A2", &[1, 2])),
            Err(HomSpaceError::NotPicardOne(_))
        ));
    }

    #[test]
    fn model_examples() {
        assert_eq!(identify_model(&space("B3", &[1])), Model::Quadric(5));
        assert_eq!(identify_model(&space("A3", &[2])), Model::Quadric(4));
        assert_eq!(identify_model(&space("D4", &[4])), Model::Quadric(6));
        assert_eq!(identify_model(&space("A4", &[3])), Model::Gr25);
        assert_eq!(identify_model(&space("C4", &[1])), Model::ProjSpace(7));
        assert_eq!(identify_model(&space("E6", &[1])), Model::Other);
        let p1xp3 = HomSpace::new(vec![
            Factor::new(t("A1"), Marking::single(1)).unwrap(),
            Factor::new(t("A3"), Marking::single(3)).unwrap(),
        ])
        .unwrap();
        assert_eq!(identify_model(&p1xp3), Model::P1xPl(3));
    }

    #[test]
    fn products_and_limits() {
        let f = Factor::new(t("A1"), Marking::single(1)).unwrap();
        assert!(matches!(
            HomSpace::new(vec![f.clone(); 4]),
            Err(HomSpaceError::TooManyFactors { got: 4, max: 3 })
        ));
        assert_eq!(HomSpace::new(vec![]), Err(HomSpaceError::Empty));
        assert!(Factor::new(t("A2"), Marking::single(3)).is_err());
        // An empty marking is a point.
        let point = Factor::new(t("E8"), Marking::default()).unwrap();
        let s = HomSpace::new(vec![f, point]).unwrap();
        assert_eq!(dimension(&s), 1);
        assert_eq!(s.picard_rank(), 1);
        assert_eq!(j(&s), vec![2]);
    }

    #[test]
    fn marking_enumeration() {
        let all = Marking::all_nonempty(3);
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], Marking::single(1));
        assert_eq!(all[6], Marking::new([1, 2, 3]));
    }
}
