//! Tangent bundles of embedded curves, with cohomology certificates.

use ulrich_tangent::ulrichcheck::{curve_cotangent_ulrich, curve_tangent_ulrich, p1_cohomology};

fn main() {
    for (g, d) in [(0, 2), (0, 3), (0, 4), (1, 3), (2, 5)] {
        let v = curve_tangent_ulrich(g, d);
        println!("g={g} d={d}: T_C Ulrich = {}", v.ulrich);
        for w in &v.certificate {
            println!("    {} = {} [{}]", w.group, w.value, w.relation);
        }
        let co = curve_cotangent_ulrich(g, d);
        println!(
            "    Omega_C: {} = {}",
            co.certificate[0].group, co.certificate[0].value
        );
    }
    println!("h(O_P1(-3)) = {:?}", p1_cohomology(-3));
}
