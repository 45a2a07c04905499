//! Surface identities for the Veronese tangent bundle and for `P^1 x P^1`,
//! plus the constraint chain that pins down `(P^2, O(2))`.

use ulrich_tangent::exact::render;
use ulrich_tangent::ulrichcheck::{
    surface_classification_constraints, surface_identities, ulrich_dual_surface, veronese_tangent,
    SurfaceChernData,
};

fn show(name: &str, d: &SurfaceChernData) {
    let check = surface_identities(d);
    let residuals: Vec<String> = check
        .residuals
        .iter()
        .map(|r| format!("{}={}", r.identity, render(&r.value)))
        .collect();
    println!("{name}: pass={} {}", check.pass, residuals.join(" "));
}

fn main() {
    let veronese = veronese_tangent();
    show("T_P2, O(2)", &veronese);
    show(
        "Ulrich dual of T_P2, O(2)",
        &ulrich_dual_surface(&veronese, 9),
    );

    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/p1xp1_tangent.json"
    );
    let quadric: SurfaceChernData =
        serde_json::from_str(&std::fs::read_to_string(path).expect("sample file"))
            .expect("valid data");
    show("T_P1xP1, O(1,1)", &quadric);

    let c = surface_classification_constraints();
    for step in &c.steps {
        println!("  {step}");
    }
}
