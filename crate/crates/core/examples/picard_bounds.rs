//! Arithmetic obstructions: degree divisibility, `d^n = n + 2`, the
//! coefficient margin on flag varieties and `P^1 x P^l`.

use ulrich_tangent::exact::render;
use ulrich_tangent::homspace::Model;
use ulrich_tangent::ulrichcheck::{
    degree_divisor, p1_times_pl_c1_defect, p1_times_pl_residual, pn_tangent_equation,
};
use ulrich_tangent::verify::{picard_one_obstructions, verify_picard_ge2, DEFAULT_ORACLE_DIM_CAP};

fn main() {
    for n in 1..=8 {
        println!(
            "n={n}: degree divisor {}, d^n = n+2 -> {:?}",
            degree_divisor(n),
            pn_tangent_equation(n as u32)
        );
    }
    for (name, n, aut, model) in [
        ("Gr(2,5)", 6, 24, Model::Gr25),
        ("Q^6", 6, 28, Model::Quadric(6)),
        ("P^5", 5, 35, Model::ProjSpace(5)),
    ] {
        println!("{name}: {:?}", picard_one_obstructions(n, aut, model));
    }
    for (l, a, b) in [(2, 1, 1), (3, 2, 5), (1, 1, 2)] {
        println!(
            "P^1 x P^{l}, O({a},{b}): displayed {} c1 defect {}",
            render(&p1_times_pl_residual(l, a, b)),
            render(&p1_times_pl_c1_defect(l, a, b))
        );
    }
    let report = verify_picard_ge2(3, 2, DEFAULT_ORACLE_DIM_CAP).expect("valid bounds");
    print!("{}", report.render_text(false));
}
