use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{
    enumerate_with_invariants, picard_one_types, picard_one_universe, universe_label, Record,
    VerificationReport, VerifyError,
};
use crate::exact::{frac, render, Q};
use crate::homspace::{identify_model, plucker_degree, HomSpace, Model, SpaceInvariants};
use crate::ulrichcheck::{
    degree_divisor, p1_times_pl_c1_defect, p1_times_pl_residual, pn_tangent_equation,
    surface_identities, SurfaceChernData,
};

/// Composition oracle runs for spaces of at most this dimension.
pub const DEFAULT_ORACLE_DIM_CAP: usize = 12;

/// Polarizations `O(a, b)` with `1 <= a, b <= P1XPL_GRID` checked for `P^1 x P^l`.
pub(crate) const P1XPL_GRID: i64 = 20;

type Entry = (HomSpace, SpaceInvariants);

fn picard_one_label(max_rank: usize) -> String {
    format!("Picard-one quotients of simple types of rank <= {max_rank} plus E6, E7, E8, F4, G2")
}

pub(crate) fn aut_lemma_over(entries: &[Entry], max_rank: usize) -> VerificationReport {
    let records = entries
        .par_iter()
        .map(|(space, inv)| {
            let n = inv.dimension;
            let aut = inv.aut_dim.expect("Picard one");
            let model = identify_model(space);
            let holds = 2 * aut >= n * (n + 2);
            let expected = model.is_large_automorphism_model();
            let threshold = render(&frac((n * (n + 2)) as i64, 2));
            Record::new(
                space.to_string(),
                Some("bound holds iff model in {P^n, Q^n, Gr(2,5)}".to_string()),
                format!(
                    "n={n} aut={aut} n(n+2)/2={threshold} {} model={model}",
                    if holds { "holds" } else { "fails" }
                ),
                holds == expected,
            )
            .with_invariants(inv.clone())
        })
        .collect();
    VerificationReport::new("aut-lower-bound", picard_one_label(max_rank), records)
}

/// Checks `dim Aut >= n(n+2)/2` exactly on `P^n`, `Q^n` and `Gr(2,5)`.
pub fn verify_aut_lemma(max_rank: usize) -> Result<VerificationReport, VerifyError> {
    super::check_bounds(max_rank, 1)?;
    let entries = picard_one_universe(&picard_one_types(max_rank));
    Ok(aut_lemma_over(&entries, max_rank))
}

pub(crate) fn j_bound_over(
    entries: &[Entry],
    max_rank: usize,
    max_components: usize,
) -> VerificationReport {
    let records: Vec<Record> = entries
        .par_iter()
        .map(|(space, inv)| {
            let n = inv.dimension as i64;
            let max_j = inv.max_j().expect("nonempty marking");
            let exception = max_j >= n;
            let model = identify_model(space);
            let expected = model.is_anticanonical_exception();
            let record = Record::new(
                space.to_string(),
                Some(if expected { "max j >= n" } else { "max j < n" }.to_string()),
                format!("n={n} max j={max_j} model={model}"),
                exception == expected,
            );
            if space.picard_rank() == 1 {
                record.with_invariants(inv.clone())
            } else {
                record
            }
        })
        .collect();
    let exceptions = records
        .iter()
        .zip(entries)
        .filter(|(_, (_, inv))| inv.max_j().unwrap_or(0) >= inv.dimension as i64)
        .count();
    VerificationReport::new("anticanonical-bound", universe_label(max_rank, max_components), records)
        .with_notes(vec![format!(
            "{exceptions} spaces with max j >= n; the exception set must equal the P^n, Q^n, P^1 x P^l models"
        )])
}

/// `max_i j_i < n` away from `P^n`, `Q^n`, `P^1 x P^l`, and exactly there.
pub fn verify_j_bound(
    max_rank: usize,
    max_components: usize,
) -> Result<VerificationReport, VerifyError> {
    let entries = enumerate_with_invariants(max_rank, max_components)?;
    Ok(j_bound_over(&entries, max_rank, max_components))
}

/// `max sum_i l_i j_i` over all `l_i >= 0` with `sum_i l_i = n`, by brute
/// force.
pub fn weak_composition_max(n: usize, j: &[i64]) -> i64 {
    fn go(rest: usize, j: &[i64], acc: i64, best: &mut i64) {
        match j {
            [] => {}
            [last] => *best = (*best).max(acc + rest as i64 * last),
            [first, tail @ ..] => {
                for take in 0..=rest {
                    go(rest - take, tail, acc + take as i64 * first, best);
                }
            }
        }
    }
    let mut best = i64::MIN;
    go(n, j, 0, &mut best);
    best
}

/// Whether `P^1 x P^l` is excluded for every `O(a, b)` on the grid.
fn p1xpl_excluded(l: i64) -> (bool, String) {
    let grid = 1..=P1XPL_GRID;
    if l == 1 {
        // surface data of T_{P^1 x P^1} with H = O(a, b)
        let all_fail = grid.clone().all(|a| {
            grid.clone().all(|b| {
                let d = SurfaceChernData {
                    r: 2,
                    c1_h: 2 * a + 2 * b,
                    c1sq: 8,
                    c1_k: -8,
                    c2: 4,
                    k_h: -2 * a - 2 * b,
                    h_sq: 2 * a * b,
                    chi_o: 1,
                };
                !surface_identities(&d).pass
            })
        });
        (
            all_fail,
            format!("surface identities fail for all O(a,b), a,b <= {P1XPL_GRID}"),
        )
    } else {
        let all = grid.clone().all(|a| {
            grid.clone().all(|b| {
                p1_times_pl_residual(l, a, b) > Q::from_integer(0.into())
                    && p1_times_pl_c1_defect(l, a, b) != Q::from_integer(0.into())
            })
        });
        (
            all,
            format!(
                "displayed expression > 0 and c1 defect != 0 for all O(a,b), a,b <= {P1XPL_GRID}"
            ),
        )
    }
}

pub(crate) fn picard_ge2_over(
    entries: &[Entry],
    max_rank: usize,
    max_components: usize,
    oracle_dim_cap: usize,
) -> VerificationReport {
    let ls: BTreeSet<usize> = entries
        .iter()
        .filter_map(|(space, _)| match identify_model(space) {
            Model::P1xPl(l) => Some(l),
            _ => None,
        })
        .collect();
    let p1xpl: BTreeMap<usize, (bool, String)> = ls
        .into_par_iter()
        .map(|l| (l, p1xpl_excluded(l as i64)))
        .collect();
    let records: Vec<Record> = entries
        .par_iter()
        .filter(|(space, _)| space.picard_rank() >= 2)
        .map(|(space, inv)| {
            if let Model::P1xPl(l) = identify_model(space) {
                let (ok, how) = p1xpl[&l].clone();
                return Record::new(
                    space.to_string(),
                    Some("excluded by the P^1 x P^l grid".into()),
                    how,
                    ok,
                );
            }
            let n = inv.dimension;
            let ni = n as i64;
            let j = inv.j_values();
            let max_j = *j.iter().max().expect("nonempty");
            let margin = frac(ni * (ni + 1) - max_j * (ni + 2), ni + 2);
            let bound = frac(2, ni + 2);
            // each term -l_i j_i/(n a_i) is nondecreasing in a_i iff l_i j_i >= 0
            let monotone = j.iter().all(|&x| x > 0);
            let mut pass = monotone && margin >= bound;
            let mut actual = format!("n={n} margin={}", render(&margin));
            if n <= oracle_dim_cap {
                let oracle = frac(ni * (ni + 1), ni + 2) - frac(weak_composition_max(n, &j), ni);
                pass &= oracle == margin;
                actual.push_str(&format!(" oracle min={}", render(&oracle)));
            }
            Record::new(
                space.to_string(),
                Some(format!("margin >= {}", render(&bound))),
                actual,
                pass,
            )
        })
        .collect();
    VerificationReport::new(
        "picard-ge2-coefficient",
        format!(
            "Picard rank >= 2 in: {}; composition oracle for n <= {oracle_dim_cap}",
            universe_label(max_rank, max_components)
        ),
        records,
    )
    .with_notes(vec![
        "coefficient n(n+1)/(n+2) - sum l_i j_i/(n a_i) minimized at a_i = 1 and a vertex l = n e_i".into(),
        "positivity of L_1^l_1 ... L_k^l_k is a hypothesis".into(),
    ])
}

/// Coefficient positivity for every enumerated space of Picard rank >= 2,
/// with the composition oracle up to `oracle_dim_cap`.
pub fn verify_picard_ge2(
    max_rank: usize,
    max_components: usize,
    oracle_dim_cap: usize,
) -> Result<VerificationReport, VerifyError> {
    let entries = enumerate_with_invariants(max_rank, max_components)?;
    Ok(picard_ge2_over(
        &entries,
        max_rank,
        max_components,
        oracle_dim_cap,
    ))
}

/// Arithmetic contradictions for a Picard-one space of dimension `n`.
///
/// `T_X` Ulrich forces `h^0(T_X) = n d` with `d = deg X` a positive multiple
/// of `degree_divisor(n)`; `h^0(T_X) = dim Aut(X)` for `G/P`.
pub fn picard_one_obstructions(n: usize, aut: usize, model: Model) -> Vec<String> {
    let mut out = Vec::new();
    let (n64, aut64) = (n as u64, aut as u64);
    let ell = degree_divisor(n64);
    if aut64 % (n64 * ell) != 0 {
        out.push(format!(
            "h0(T) = {aut} is not a positive multiple of n*{ell} = {}",
            n64 * ell
        ));
    }
    if n % 2 == 1 && aut64 < n64 * n64 + 2 * n64 {
        out.push(format!(
            "n odd forces d >= n+2, so h0(T) >= {} > {aut}",
            n * n + 2 * n
        ));
    }
    if 2 * aut < n * (n + 2) {
        out.push(format!("dim Aut = {aut} < n(n+2)/2"));
    }
    match model {
        Model::ProjSpace(m) => {
            if pn_tangent_equation(m as u32).is_none() {
                out.push(format!("d^{m} = {} has no integer solution", m + 2));
            }
        }
        Model::Quadric(q) if q % 2 == 0 => {
            let m = (q / 2) as u64;
            let (lhs, rhs) = (2 * m * (m + 1), (2 * m + 1) * (m + 1));
            if rhs % lhs != 0 {
                out.push(format!("{lhs}k = {rhs} has no integer k"));
            }
        }
        Model::Gr25 => {
            let p = plucker_degree(model).expect("Gr(2,5) degree");
            if aut64 % n64 == 0 && (aut64 / n64) % p != 0 {
                out.push(format!(
                    "{n}d = {aut} gives d = {}, not a multiple of {p}",
                    aut64 / n64
                ));
            }
        }
        _ => {}
    }
    out
}

fn obstruction_record(space: &HomSpace, inv: &SpaceInvariants) -> Record {
    let n = inv.dimension;
    let aut = inv.aut_dim.expect("Picard one");
    let model = identify_model(space);
    let obstructions = picard_one_obstructions(n, aut, model);
    let actual = if obstructions.is_empty() {
        format!("n={n} aut={aut} model={model}: no contradiction")
    } else {
        format!("n={n} model={model}: {}", obstructions.join("; "))
    };
    Record::new(
        space.to_string(),
        Some("excluded".into()),
        actual,
        !obstructions.is_empty(),
    )
    .with_invariants(inv.clone())
}

pub(crate) fn picard_one_over(entries: &[Entry], max_rank: usize) -> VerificationReport {
    let records = entries
        .par_iter()
        .filter(|(_, inv)| inv.dimension >= 4)
        .map(|(space, inv)| obstruction_record(space, inv))
        .collect();
    VerificationReport::new(
        "picard-one-arithmetic",
        format!("dimension >= 4 among {}", picard_one_label(max_rank)),
        records,
    )
}

/// Every Picard-one space of dimension >= 4 carries an arithmetic
/// contradiction.
pub fn verify_picard_one(max_rank: usize) -> Result<VerificationReport, VerifyError> {
    super::check_bounds(max_rank, 1)?;
    let entries = picard_one_universe(&picard_one_types(max_rank));
    Ok(picard_one_over(&entries, max_rank))
}

pub(crate) fn threefold_bound_over(entries: &[Entry], max_rank: usize) -> VerificationReport {
    let records = entries
        .par_iter()
        .filter(|(_, inv)| inv.dimension == 3)
        .map(|(space, inv)| obstruction_record(space, inv))
        .collect();
    VerificationReport::new(
        "threefold-bound",
        format!("dimension 3 among {}", picard_one_label(max_rank)),
        records,
    )
    .with_notes(vec![format!(
        "deg X is a positive multiple of {}, so h0(T) = 3 deg X >= 15",
        degree_divisor(3)
    )])
}

/// Same arithmetic for Picard-one threefolds (`P^3`, `Q^3`).
pub fn verify_threefold_bound(max_rank: usize) -> Result<VerificationReport, VerifyError> {
    super::check_bounds(max_rank, 1)?;
    let entries = picard_one_universe(&picard_one_types(max_rank));
    Ok(threefold_bound_over(&entries, max_rank))
}
