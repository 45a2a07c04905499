//! Full verification run at the default bounds.
//!
//! `cargo run --release --example verify_all [max_rank] [max_components]`

use ulrich_tangent::homspace::DEFAULT_MAX_COMPONENTS;
use ulrich_tangent::rootsys::DEFAULT_MAX_RANK;
use ulrich_tangent::verify::run_all;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer bound"));
    let max_rank = args.next().unwrap_or(DEFAULT_MAX_RANK);
    let max_components = args.next().unwrap_or(DEFAULT_MAX_COMPONENTS);
    let start = std::time::Instant::now();
    let report = run_all(max_rank, max_components).expect("valid bounds");
    print!("{}", report.render_text(false));
    eprintln!("elapsed: {:?}", start.elapsed());
    std::process::exit(if report.pass { 0 } else { 1 });
}
