//! Dimension, anticanonical coefficients, automorphisms and models of a few
//! `G/P`, including a product.

use ulrich_tangent::homspace::{identify_model, Factor, HomSpace, Marking, SpaceInvariants};
use ulrich_tangent::rootsys::SimpleType;

fn factor(ty: &str, nodes: &[usize]) -> Factor {
    let ty: SimpleType = ty.parse().expect("valid type");
    Factor::new(ty, Marking::new(nodes.iter().copied())).expect("valid nodes")
}

fn main() {
    let spaces = [
        HomSpace::new(vec![factor("A4", &[2])]),
        HomSpace::new(vec![factor("B2", &[2])]),
        HomSpace::new(vec![factor("E6", &[1])]),
        HomSpace::new(vec![factor("A2", &[1, 2])]),
        HomSpace::new(vec![factor("A1", &[1]), factor("A3", &[1])]),
    ];
    for space in spaces {
        let space = space.expect("valid space");
        let inv = SpaceInvariants::compute(&space).expect("invariants");
        let aut = inv.aut_dim.map_or("-".to_string(), |a| a.to_string());
        println!(
            "{:<22} n={:<3} picard={} j={:?} aut={:<3} model={}",
            space.to_string(),
            inv.dimension,
            inv.picard_rank,
            inv.j_values(),
            aut,
            identify_model(&space)
        );
    }
}
