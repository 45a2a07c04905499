//! Cartan matrices, positive roots and Lie algebra dimensions.

use ulrich_tangent::rootsys::{
    cartan_matrix, lie_algebra_dim, positive_roots, RootDatum, SimpleType,
};

fn main() {
    for token in ["A2", "B3", "G2", "F4"] {
        let ty: SimpleType = token.parse().expect("valid type");
        println!("{ty}: cartan {:?}", cartan_matrix(ty));
        let roots = positive_roots(ty);
        println!(
            "  {} positive roots, dim g = {}",
            roots.len(),
            lie_algebra_dim(ty)
        );
        if let Some(highest) = roots.last() {
            println!("  highest root {highest} (height {})", highest.height());
        }
    }

    let e8 = RootDatum::new("E8".parse().expect("valid type"));
    println!(
        "E8: {} positive roots, dim g = {}",
        e8.positive_roots().len(),
        e8.lie_algebra_dim()
    );
}
