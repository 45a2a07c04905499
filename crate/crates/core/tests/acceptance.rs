//! One PASS/FAIL line per acceptance criterion, exact arithmetic throughout.
//!
//! Runs as a plain binary so the lines always reach stdout; exits nonzero if
//! any criterion fails.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ulrich_tangent::cli;
use ulrich_tangent::exact::{frac, q};
use ulrich_tangent::homspace::{identify_model, HomSpace, Model};
use ulrich_tangent::ulrichcheck::{
    bott_dims, curve_cotangent_ulrich, curve_tangent_ulrich, fano_index_two, p1_times_pl_residual,
    surface_classification_constraints, surface_identities, threefold_chi, threefold_delta,
    threefold_identities, threefold_twist, veronese_tangent, ThreefoldChernData,
};
use ulrich_tangent::verify::{
    enumerate_with_invariants, verify_aut_lemma, verify_picard_one, verify_table1,
    weak_composition_max, VerificationReport,
};

const MAX_RANK: usize = 8;
const MAX_COMPONENTS: usize = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn record<'a>(r: &'a VerificationReport, subject: &str) -> Option<&'a str> {
    r.records
        .iter()
        .find(|x| x.subject == subject)
        .map(|x| x.actual.as_str())
}

fn table1() -> Outcome {
    let r = verify_table1(MAX_RANK);
    let spot = [
        ("E7/P{4}", "n=53 dim g=133"),
        ("F4/P{2}", "n=20 dim g=52"),
        ("E8/P{4}", "n=106 dim g=248"),
        ("E6/P{1}", "n=16 dim g=78"),
        ("G2/P{1}", "n=5 dim g=14"),
    ];
    let spots_ok = spot.iter().all(|(s, v)| record(&r, s) == Some(v));
    outcome(
        r.pass && spots_ok,
        format!(
            "{}/{} cells match, spot values ok: {spots_ok}",
            r.summary.passed, r.summary.total
        ),
    )
}

fn aut_lemma() -> Outcome {
    let r = verify_aut_lemma(MAX_RANK).expect("valid bound");
    let mismatches = r
        .records
        .iter()
        .filter(|rec| {
            let inv = rec
                .invariants
                .as_ref()
                .expect("invariants on Picard-one records");
            let (n, aut) = (inv.dimension, inv.aut_dim.expect("aut"));
            let holds = 2 * aut >= n * (n + 2);
            let large = ["model=P^", "model=Q^", "model=Gr(2,5)"]
                .iter()
                .any(|m| rec.actual.contains(m));
            holds != large
        })
        .count();
    outcome(
        r.pass && mismatches == 0,
        format!(
            "{} Picard-one spaces, {mismatches} mismatches",
            r.summary.total
        ),
    )
}

fn exception_sets(universe: &[(HomSpace, ulrich_tangent::homspace::SpaceInvariants)]) -> Outcome {
    let by_j: BTreeSet<&HomSpace> = universe
        .iter()
        .filter(|(_, inv)| inv.max_j().expect("marked") >= inv.dimension as i64)
        .map(|(s, _)| s)
        .collect();
    let by_model: BTreeSet<&HomSpace> = universe
        .iter()
        .filter(|(s, _)| identify_model(s).is_anticanonical_exception())
        .map(|(s, _)| s)
        .collect();
    outcome(
        by_j == by_model,
        format!(
            "{} spaces, {} with max j >= n, {} recognized P^n/Q^n/P^1xP^l, sets equal: {}",
            universe.len(),
            by_j.len(),
            by_model.len(),
            by_j == by_model
        ),
    )
}

fn coefficient_bound(
    universe: &[(HomSpace, ulrich_tangent::homspace::SpaceInvariants)],
) -> Outcome {
    let (mut checked, mut oracle_runs, mut family, mut bad) = (0usize, 0usize, 0usize, Vec::new());
    for (space, inv) in universe.iter().filter(|(s, _)| s.picard_rank() >= 2) {
        if let Model::P1xPl(_) = identify_model(space) {
            family += 1;
            continue;
        }
        checked += 1;
        let n = inv.dimension as i64;
        let j = inv.j_values();
        let max_j = *j.iter().max().expect("marked");
        let vertex = frac(n * (n + 1), n + 2) - q(max_j);
        if vertex < frac(2, n + 2) {
            bad.push(space.to_string());
        }
        if n <= 12 {
            oracle_runs += 1;
            let oracle = frac(n * (n + 1), n + 2) - frac(weak_composition_max(n as usize, &j), n);
            if oracle != vertex {
                bad.push(format!("{space} (oracle)"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} spaces with margin >= 2/(n+2), oracle agreed on {oracle_runs}, {family} P^1 x P^l spaces left to the grid, failures {bad:?}"
        ),
    )
}

fn p1_times_pl() -> Outcome {
    let mut non_positive = Vec::new();
    for l in 2..=20 {
        for a in 1..=20 {
            for b in 1..=20 {
                if p1_times_pl_residual(l, a, b) <= q(0) {
                    non_positive.push((l, a, b));
                }
            }
        }
    }
    let at = p1_times_pl_residual(2, 1, 1);
    outcome(
        non_positive.is_empty() && at == frac(11, 5),
        format!("7600 grid points, non-positive at {non_positive:?}, value at (2,1,1) = {at}"),
    )
}

fn curves() -> Outcome {
    let mut hits = Vec::new();
    let mut cotangent_bad = 0;
    for g in 0..=10 {
        for d in 1..=30 {
            if curve_tangent_ulrich(g, d).ulrich {
                hits.push((g, d));
            }
            let co = curve_cotangent_ulrich(g, d);
            if co.ulrich || co.certificate.iter().all(|w| w.value <= 0) {
                cotangent_bad += 1;
            }
        }
    }
    outcome(
        hits == vec![(0, 3)] && cotangent_bad == 0,
        format!("tangent Ulrich at {hits:?}, cotangent counterexamples {cotangent_bad}"),
    )
}

fn surfaces() -> Outcome {
    let c = surface_classification_constraints();
    let chain = (c.h_sq, c.k_h, c.k_sq, c.chi_o, c.irregularity);
    let veronese = surface_identities(&veronese_tangent()).pass;
    let bott = bott_dims(2, 1, 1);
    let bott_ok = bott.len() == 3 && bott.iter().all(|x| x == &0.into());
    outcome(
        chain == (4, -6, 9, 1, 0) && veronese && bott_ok,
        format!("(H^2, K.H, K^2, chi, q) = {chain:?}, Veronese passes: {veronese}, h^q(P^2, Omega^1(1)) all zero: {bott_ok}"),
    )
}

fn random_data(rng: &mut ChaCha8Rng) -> ThreefoldChernData {
    let mut v = || rng.gen_range(-50i64..=50);
    ThreefoldChernData {
        r: 0,
        c1_hsq: v(),
        c1sq_h: v(),
        c1cube: v(),
        c2_h: v(),
        c1c2: v(),
        c3: v(),
        k_hsq: v(),
        ksq_h: v(),
        c1sq_k: v(),
        c2_k: v(),
        c1_ksq: v(),
        c1_c2x: v(),
        c2x_h: v(),
        h_cube: 0,
        chi_o: v(),
        c1_hk: v(),
    }
}

fn threefolds() -> Outcome {
    let mut wrong = Vec::new();
    for d in 3..=7 {
        for c2_h in -20..=40 {
            for c3 in -5..=5 {
                let pass = threefold_identities(&fano_index_two(d, c2_h, c3))
                    .result
                    .pass;
                if pass != (c2_h == d + 2 && c3 == 0) {
                    wrong.push((d, c2_h, c3));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut delta_failures = 0;
    for _ in 0..1000 {
        let mut data = random_data(&mut rng);
        data.r = rng.gen_range(1..=6);
        data.h_cube = rng.gen_range(1..=20);
        let chi = threefold_chi(&data);
        for j in -3..=3 {
            let twisted = threefold_twist(&data, j).expect("small data");
            if threefold_chi(&twisted) != chi.clone() + threefold_delta(&data, j) {
                delta_failures += 1;
            }
        }
    }
    outcome(
        wrong.is_empty() && delta_failures == 0,
        format!("iff-condition violations {wrong:?}, Delta_j mismatches {delta_failures}/7000"),
    )
}

fn picard_one() -> Outcome {
    let r = verify_picard_one(MAX_RANK).expect("valid bound");
    let gr = record(&r, "A4/P{2}").unwrap_or("");
    let q6 = record(&r, "D4/P{1}").unwrap_or("");
    let gr_ok = gr.contains("6d = 24") && gr.contains("not a multiple of 5");
    let q6_ok = q6.contains("24k = 28");
    outcome(
        r.pass && gr_ok && q6_ok,
        format!(
            "{}/{} spaces with n >= 4 excluded, Gr(2,5): {gr_ok}, Q^6: {q6_ok}",
            r.summary.passed, r.summary.total
        ),
    )
}

fn end_to_end(json: &str, code: i32) -> Outcome {
    let report: VerificationReport = match serde_json::from_str(json) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("unparsable report: {e}")),
    };
    let survivors: Vec<String> = report.survivors.iter().map(|c| c.to_string()).collect();
    let expected = vec!["(P^1, O(3))".to_string(), "(P^2, O(2))".to_string()];
    outcome(
        code == cli::EXIT_PASS && report.pass && survivors == expected,
        format!("exit {code}, survivors {survivors:?}"),
    )
}

fn main() {
    let max_jobs = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .max(2);
    let universe = enumerate_with_invariants(MAX_RANK, MAX_COMPONENTS).expect("valid bounds");
    let parallel = cli::run([
        "ulrich-verify".to_string(),
        "verify-all".into(),
        "--json".into(),
        "--jobs".into(),
        max_jobs.to_string(),
    ]);
    let serial = cli::run(["ulrich-verify", "verify-all", "--json", "--jobs", "1"]);

    let results = [
        ("Table 1 dimensions and dim g", table1()),
        (
            "automorphism bound exactly on P^n, Q^n, Gr(2,5)",
            aut_lemma(),
        ),
        (
            "max j >= n exactly on P^n, Q^n, P^1 x P^l",
            exception_sets(&universe),
        ),
        (
            "Picard >= 2 coefficient margin and composition oracle",
            coefficient_bound(&universe),
        ),
        ("P^1 x P^l displayed expression positive", p1_times_pl()),
        ("curves: twisted cubic only", curves()),
        ("surfaces: constraint chain, Veronese, Bott", surfaces()),
        ("threefolds: index-two data and Delta_j", threefolds()),
        ("Picard one, n >= 4: arithmetic exclusion", picard_one()),
        (
            "end to end: exit 0, survivors",
            end_to_end(&parallel.stdout, parallel.code),
        ),
        (
            "determinism across --jobs",
            outcome(
                parallel.stdout == serial.stdout
                    && parallel.code == serial.code
                    && !serial.stdout.is_empty(),
                format!(
                    "jobs=1 vs jobs={max_jobs}: {} bytes, identical: {}",
                    serial.stdout.len(),
                    parallel.stdout == serial.stdout
                ),
            ),
        ),
    ];

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2}: {status}  {name}: {}", i + 1, o.detail);
    }
    println!(
        "acceptance: {}/{} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
