use rayon::prelude::*;

use super::{picard_one_types, Record, VerificationReport};
use crate::exact::{frac, q, render};
use crate::homspace::{
    dimension, table1_dimension, table1_printed_dimension, table1_printed_formula_differs,
    HomSpace, Marking,
};
use crate::rootsys::{lie_algebra_dim_closed_form, RootDatum};
use crate::ulrichcheck::{
    bott_dims, cotangent_surface_residual, curve_cotangent_ulrich, curve_tangent_ulrich,
    fano_index_two, p1_times_pl_c1_defect, p1_times_pl_residual, pn_tangent_equation,
    surface_classification_constraints, surface_identities, threefold_identities,
    ulrich_dual_surface, veronese_tangent,
};

pub(crate) const CURVE_MAX_GENUS: i64 = 10;
pub(crate) const CURVE_MAX_DEGREE: i64 = 30;
pub(crate) const PN_MAX: u32 = 64;
pub(crate) const SURFACES_CLAIM: &str = "surfaces";
const P1XPL_MAX_L: i64 = 20;
const P1XPL_MAX_AB: i64 = 20;

/// Dimension of every Picard-one quotient against the tabulated closed
/// forms, and `dim g` against the closed forms per family.
pub fn verify_table1(max_rank: usize) -> VerificationReport {
    let types = picard_one_types(max_rank);
    let mut notes = Vec::new();
    let records: Vec<Vec<Record>> = types
        .par_iter()
        .map(|&ty| {
            let datum = RootDatum::new(ty);
            let lie = datum.lie_algebra_dim();
            let lie_expected = lie_algebra_dim_closed_form(ty.family(), ty.rank());
            (1..=ty.rank())
                .map(|node| {
                    let space = HomSpace::simple(ty, Marking::single(node)).expect("valid node");
                    let n = dimension(&space);
                    let expected = table1_dimension(ty, node).expect("valid node");
                    Record::new(
                        space.to_string(),
                        Some(format!("n={expected} dim g={lie_expected}")),
                        format!("n={n} dim g={lie}"),
                        n == expected && lie == lie_expected,
                    )
                })
                .collect()
        })
        .collect();
    for &ty in &types {
        for node in 1..=ty.rank() {
            if table1_printed_formula_differs(ty, node) {
                notes.push(format!(
                    "{ty} node {node}: row formula gives {}, symmetric node {} gives {}",
                    table1_printed_dimension(ty, node).expect("valid node"),
                    ty.rank(),
                    table1_dimension(ty, node).expect("valid node")
                ));
            }
        }
    }
    VerificationReport::new(
        "table1",
        format!("simple types of rank <= {max_rank} plus E6, E7, E8, F4, G2; every single node"),
        records.into_iter().flatten().collect(),
    )
    .with_notes(notes)
}

/// `P^1 x P^l` with `O(a, b)`: the displayed expression is positive and the
/// direct `c1` defect never vanishes, for `2 <= l <= 20`, `1 <= a, b <= 20`.
pub fn verify_p1_times_pl() -> VerificationReport {
    let mut records: Vec<Record> = (2..=P1XPL_MAX_L)
        .into_par_iter()
        .map(|l| {
            let mut min_display = None;
            let mut defect_zero = Vec::new();
            for a in 1..=P1XPL_MAX_AB {
                for b in 1..=P1XPL_MAX_AB {
                    let v = p1_times_pl_residual(l, a, b);
                    if min_display.as_ref().is_none_or(|m| &v < m) {
                        min_display = Some(v);
                    }
                    if p1_times_pl_c1_defect(l, a, b) == q(0) {
                        defect_zero.push((a, b));
                    }
                }
            }
            let min_display = min_display.expect("nonempty grid");
            let pass = min_display > q(0) && defect_zero.is_empty();
            Record::new(
                format!("P^1 x P^{l}"),
                Some("min > 0, no zero defect".into()),
                format!(
                    "min over a,b <= {P1XPL_MAX_AB} = {}, zero defects at {defect_zero:?}",
                    render(&min_display)
                ),
                pass,
            )
        })
        .collect();
    let v = p1_times_pl_residual(2, 1, 1);
    records.push(Record::new(
        "P^1 x P^2, O(1,1)",
        Some("11/5".into()),
        render(&v),
        v == frac(11, 5),
    ));
    VerificationReport::new(
        "p1-times-pl",
        format!("2 <= l <= {P1XPL_MAX_L}, 1 <= a, b <= {P1XPL_MAX_AB}"),
        records,
    )
    .with_notes(vec![
        "the displayed expression drops a factor l in its last term; the c1 defect is recomputed from H1.H2^l = 1, H2^(l+1) = 0 and checked nonzero as well".into(),
    ])
}

/// Tangent bundles of curves: Ulrich exactly for the twisted cubic; cotangent
/// never.
pub fn verify_curves() -> VerificationReport {
    let records = (0..=CURVE_MAX_GENUS)
        .map(|g| {
            let hits: Vec<i64> = (1..=CURVE_MAX_DEGREE)
                .filter(|&d| curve_tangent_ulrich(g, d).ulrich)
                .collect();
            let cotangent_hits: Vec<i64> = (1..=CURVE_MAX_DEGREE)
                .filter(|&d| {
                    let v = curve_cotangent_ulrich(g, d);
                    v.ulrich || v.certificate.iter().all(|w| w.value == 0)
                })
                .collect();
            let expected: Vec<i64> = if g == 0 { vec![3] } else { vec![] };
            Record::new(
                format!("genus {g}"),
                Some(format!(
                    "tangent Ulrich at d in {expected:?}, cotangent nowhere"
                )),
                format!("tangent Ulrich at d in {hits:?}, cotangent at {cotangent_hits:?}"),
                hits == expected && cotangent_hits.is_empty(),
            )
        })
        .collect();
    VerificationReport::new(
        "curves",
        format!("genus <= {CURVE_MAX_GENUS}, degree <= {CURVE_MAX_DEGREE}"),
        records,
    )
}

/// `d^n = n + 2` is solvable only for `n = 1, 2`.
pub fn verify_pn_equation() -> VerificationReport {
    let records = (1..=PN_MAX)
        .map(|n| {
            let got = pn_tangent_equation(n);
            let expected = match n {
                1 => Some(3),
                2 => Some(2),
                _ => None,
            };
            let show = |x: Option<u64>| x.map_or("none".to_string(), |d| format!("d={d}"));
            Record::new(
                format!("P^{n}"),
                Some(show(expected)),
                show(got),
                got == expected,
            )
        })
        .collect();
    VerificationReport::new(
        "projective-space-degree",
        format!("1 <= n <= {PN_MAX}"),
        records,
    )
}

/// The surface constraint chain, the Veronese data, Bott vanishing on `P^2`
/// and the cotangent residual.
pub fn verify_surfaces() -> VerificationReport {
    let c = surface_classification_constraints();
    let mut records = vec![
        Record::new(
            "H^2",
            Some("4".into()),
            format!("{} (from {:?})", c.h_sq, c.h_sq_candidates),
            c.h_sq == 4 && c.h_sq_candidates == vec![4],
        ),
        Record::new("K.H", Some("-6".into()), c.k_h.to_string(), c.k_h == -6),
        Record::new(
            "K^2",
            Some("9".into()),
            format!(
                "{} (after integrality {:?})",
                c.k_sq, c.k_sq_after_integrality
            ),
            c.k_sq == 9 && c.k_sq_after_integrality == vec![9],
        ),
        Record::new(
            "chi(O)",
            Some("1".into()),
            c.chi_o.to_string(),
            c.chi_o == 1,
        ),
        Record::new(
            "q",
            Some("0".into()),
            c.irregularity.to_string(),
            c.irregularity == 0,
        ),
        Record::new(
            "g(K+3H)",
            Some("1".into()),
            c.adjoint_genus.to_string(),
            c.adjoint_genus == 1,
        ),
        Record::new(
            "O(H) on P^2",
            Some("O(2)".into()),
            format!("O({})", c.veronese_degree),
            c.veronese_degree == 2,
        ),
    ];

    let v = veronese_tangent();
    let check = surface_identities(&v);
    records.push(Record::new(
        "T_P2 with O(2)",
        Some("identities hold".into()),
        residual_text(&check.residuals),
        check.pass,
    ));
    let dual = ulrich_dual_surface(&v, 9);
    records.push(Record::new(
        "Ulrich dual of T_P2 with O(2)",
        Some("T_P2 itself".into()),
        if dual == v {
            "T_P2 itself".into()
        } else {
            format!("{dual:?}")
        },
        dual == v,
    ));
    let bott = bott_dims(2, 1, 1);
    records.push(Record::new(
        "h^q(P^2, Omega^1(1))",
        Some("[0, 0, 0]".into()),
        format!(
            "{:?}",
            bott.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
        bott.iter().all(|x| x == &0.into()),
    ));
    let cot = cotangent_surface_residual(-6, 4);
    records.push(Record::new(
        "Omega_P2 with O(2)",
        Some("first identity fails".into()),
        format!("residual {}", render(&cot)),
        cot != q(0),
    ));
    VerificationReport::new(
        SURFACES_CLAIM,
        "smooth surfaces with Ulrich tangent bundle",
        records,
    )
    .with_notes(c.steps)
}

fn residual_text(residuals: &[crate::ulrichcheck::Residual]) -> String {
    residuals
        .iter()
        .map(|r| format!("{}={}", r.identity, render(&r.value)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Rank-2 bundles with `c1 = 2H` on index-two Fano threefolds of degree
/// `3..=7`: the identities hold iff `c2.H = d + 2` and `c3 = 0`.
pub fn verify_index_two_threefolds() -> VerificationReport {
    let records = (3..=7i64)
        .map(|d| {
            let mut hits = Vec::new();
            let mut routes = true;
            for c2_h in -20..=40 {
                for c3 in -3..=3 {
                    let check = threefold_identities(&fano_index_two(d, c2_h, c3));
                    routes &= check.routes_agree;
                    if check.result.pass {
                        hits.push((c2_h, c3));
                    }
                }
            }
            Record::new(
                format!("degree {d}"),
                Some(format!(
                    "identities hold only at (c2.H, c3) = ({}, 0)",
                    d + 2
                )),
                format!("hold at {hits:?}, routes agree: {routes}"),
                hits == vec![(d + 2, 0)] && routes,
            )
        })
        .collect();
    VerificationReport::new(
        "index-two-threefolds",
        "degree 3..=7, c2.H in -20..=40, c3 in -3..=3",
        records,
    )
}
