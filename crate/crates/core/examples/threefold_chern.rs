//! Threefold identities, Euler characteristics and twists.

use ulrich_tangent::exact::render;
use ulrich_tangent::ulrichcheck::{
    fano_index_two, projective_threefold, threefold_chi, threefold_delta, threefold_identities,
    threefold_twist,
};

fn main() {
    for d in 3..=7 {
        let check = threefold_identities(&fano_index_two(d, d + 2, 0));
        println!(
            "index two, degree {d}, c2.H = {}: pass={} chi(E(-jH)) = {}",
            d + 2,
            check.result.pass,
            check.twisted_chi.join(", ")
        );
    }

    let tangent = projective_threefold(3, 4, 6, 4);
    println!("chi(T_P3) = {}", render(&threefold_chi(&tangent)));
    for j in -2..=2 {
        let twisted = threefold_twist(&tangent, j).expect("fits in i64");
        println!(
            "  j={j:>2}: chi(T_P3(-jH)) = {:>4}  = chi + Delta_j = {}",
            render(&threefold_chi(&twisted)),
            render(&(threefold_chi(&tangent) + threefold_delta(&tangent, j)))
        );
    }
    let check = threefold_identities(&tangent);
    for r in &check.result.residuals {
        println!("  T_P3 residual {} = {}", r.identity, render(&r.value));
    }
}
