//! Dimensions of every Picard-one `G/P` of rank <= 8 and the exceptional
//! types, compared with the closed forms.

use ulrich_tangent::verify::verify_table1;

fn main() {
    let report = verify_table1(8);
    print!("{}", report.render_text(true));
}
