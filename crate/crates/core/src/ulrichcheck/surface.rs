use serde::{Deserialize, Serialize};

use super::{lemma_c1_residual, CheckResult, ChernError};
use crate::exact::{frac, q, Q};

/// Intersection numbers of a rank-`r` bundle `E` on a polarized surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceChernData {
    pub r: i64,
    #[serde(rename = "c1H")]
    pub c1_h: i64,
    pub c1sq: i64,
    #[serde(rename = "c1K")]
    pub c1_k: i64,
    pub c2: i64,
    #[serde(rename = "KH")]
    pub k_h: i64,
    #[serde(rename = "Hsq")]
    pub h_sq: i64,
    #[serde(rename = "chiO")]
    pub chi_o: i64,
}

impl SurfaceChernData {
    pub fn validate(&self) -> Result<(), ChernError> {
        if self.r < 1 {
            return Err(ChernError::OutOfRange {
                field: "r",
                value: self.r,
                min: 1,
            });
        }
        if self.h_sq < 1 {
            return Err(ChernError::OutOfRange {
                field: "Hsq",
                value: self.h_sq,
                min: 1,
            });
        }
        Ok(())
    }
}

/// `T_{P^2}` polarized by `O(2)`: the Veronese surface.
pub fn veronese_tangent() -> SurfaceChernData {
    SurfaceChernData {
        r: 2,
        c1_h: 6,
        c1sq: 9,
        c1_k: -9,
        c2: 3,
        k_h: -6,
        h_sq: 4,
        chi_o: 1,
    }
}

/// Both surface identities: the first-Chern-class identity and the `c2`
/// identity.
pub fn surface_identities(d: &SurfaceChernData) -> CheckResult {
    let first = lemma_c1_residual(2, d.r, d.c1_h, d.k_h, d.h_sq);
    let second = q(d.c2) - (frac(d.c1sq - d.c1_k, 2) - q(d.r * (d.h_sq - d.chi_o)));
    CheckResult::from_residuals(vec![("c1.H", first), ("c2", second)])
}

/// First surface identity for `Omega^1` (`r = 2`, `c1 = K`): always `-3 H^2`.
pub fn cotangent_surface_residual(k_h: i64, h_sq: i64) -> Q {
    lemma_c1_residual(2, 2, k_h, k_h, h_sq)
}

/// Chern data of the Ulrich dual `E^vee (K + 3H)`.
///
/// The stored pairings of the dual involve `K^2`, which is not part of the
/// data of `E`, so it is passed separately. Applying the map twice with the
/// same `K^2` returns the input.
pub fn ulrich_dual_surface(d: &SurfaceChernData, k_sq: i64) -> SurfaceChernData {
    let r = d.r;
    // D = K + 3H
    let d_h = d.k_h + 3 * d.h_sq;
    let d_k = k_sq + 3 * d.k_h;
    let d_sq = k_sq + 6 * d.k_h + 9 * d.h_sq;
    let c1_d = d.c1_k + 3 * d.c1_h;
    SurfaceChernData {
        r,
        c1_h: -d.c1_h + r * d_h,
        c1sq: d.c1sq - 2 * r * c1_d + r * r * d_sq,
        c1_k: -d.c1_k + r * d_k,
        c2: d.c2 - (r - 1) * c1_d + r * (r - 1) / 2 * d_sq,
        k_h: d.k_h,
        h_sq: d.h_sq,
        chi_o: d.chi_o,
    }
}

/// Numerical constraints on a surface whose tangent bundle is Ulrich.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConstraints {
    /// `H^2` values surviving `g(H-curve) = 1 - H^2/4 >= 0` integral.
    pub h_sq_candidates: Vec<i64>,
    pub h_sq: i64,
    pub k_h: i64,
    pub hyperplane_genus: i64,
    /// `K^2` after `g(K+3H-curve) = K^2 - 8 >= 0`.
    pub k_sq_after_adjoint_genus: Vec<i64>,
    /// ... then `q = (9 - K^2)/5 >= 0`.
    pub k_sq_after_irregularity: Vec<i64>,
    /// ... then `chi(O) = (K^2 - 4)/5` integral.
    pub k_sq_after_integrality: Vec<i64>,
    pub k_sq: i64,
    pub chi_o: i64,
    pub irregularity: i64,
    pub adjoint_genus: i64,
    /// `e` with `O_S(H) = O_{P^2}(e)`, from `e^2 = H^2`.
    pub veronese_degree: i64,
    pub steps: Vec<String>,
}

/// `chi(O_S)` forced by the `c2` identity for `T_S` together with Noether's
/// formula, as an exact rational.
fn forced_chi(k_sq: i64, h_sq: i64) -> Q {
    // c2(T) = chi_top = (K^2 + K^2)/2 - 2(H^2 - chi)  and  12 chi = K^2 + chi_top
    //   =>  10 chi = 2 K^2 - 2 H^2
    frac(2 * k_sq - 2 * h_sq, 10)
}

/// Derives `H^2 = 4`, `K.H = -6`, `K^2 = 9`, `chi(O) = 1`, `q = 0` by
/// filtering finite candidate ranges through each constraint in turn.
pub fn surface_classification_constraints() -> SurfaceConstraints {
    let mut steps = Vec::new();

    // c1(T).H = -K.H = (r/2)(K+3H).H with r = 2  =>  2 K.H = -3 H^2.
    // The H-curve has genus 1 + (H^2 + K.H)/2 = 1 - H^2/4.
    let h_sq_candidates: Vec<i64> = (1..=64)
        .filter(|h| (3 * h) % 2 == 0)
        .filter(|h| {
            let g = q(1) - frac(*h, 4);
            g.is_integer() && g >= q(0)
        })
        .collect();
    let h_sq = h_sq_candidates[0];
    let k_h = -3 * h_sq / 2;
    let hyperplane_genus = 1 + (h_sq + k_h) / 2;
    steps.push(format!(
        "2K.H = -3H^2 and g(H) = 1 - H^2/4 in Z>=0 leave H^2 in {h_sq_candidates:?}, so K.H = {k_h}"
    ));

    let adjoint_genus = |k_sq: i64| 1 + (2 * k_sq + 9 * k_h + 9 * h_sq) / 2;
    let k_range = -64..=64;
    let after_genus: Vec<i64> = k_range.filter(|&k| adjoint_genus(k) >= 0).collect();
    steps.push(format!(
        "g(K+3H) = K^2 - 8 >= 0 leaves K^2 in {}..={}",
        after_genus[0],
        after_genus[after_genus.len() - 1]
    ));
    let after_q: Vec<i64> = after_genus
        .iter()
        .copied()
        .filter(|&k| q(1) - forced_chi(k, h_sq) >= q(0))
        .collect();
    steps.push(format!(
        "q = 1 - chi(O) = (9 - K^2)/5 >= 0 leaves K^2 in {after_q:?}"
    ));
    let after_int: Vec<i64> = after_q
        .iter()
        .copied()
        .filter(|&k| forced_chi(k, h_sq).is_integer())
        .collect();
    steps.push(format!(
        "chi(O) = (K^2 - 4)/5 integral leaves K^2 in {after_int:?}"
    ));

    let k_sq = after_int[0];
    let chi = forced_chi(k_sq, h_sq);
    let chi_o = crate::exact::to_i64(&chi).expect("integral by construction");
    let veronese_degree = (1..=h_sq).find(|e| e * e == h_sq).unwrap_or(0);
    steps.push(format!(
        "K^2 = {k_sq}, q = 0: minimal rational surface with K^2 = 9 is P^2, and H^2 = {h_sq} gives O(H) = O({veronese_degree})"
    ));

    SurfaceConstraints {
        h_sq_candidates,
        h_sq,
        k_h,
        hyperplane_genus,
        k_sq_after_adjoint_genus: after_genus.clone(),
        k_sq_after_irregularity: after_q,
        k_sq_after_integrality: after_int,
        k_sq,
        chi_o,
        irregularity: 1 - chi_o,
        adjoint_genus: adjoint_genus(k_sq),
        veronese_degree,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn veronese_passes() {
        let res = surface_identities(&veronese_tangent());
        assert!(res.pass, "{res:?}");
    }

    #[test]
    fn p1xp1_tangent_fails() {
        let d = SurfaceChernData {
            r: 2,
            c1_h: 4,
            c1sq: 8,
            c1_k: -8,
            c2: 4,
            k_h: -4,
            h_sq: 2,
            chi_o: 1,
        };
        let res = surface_identities(&d);
        assert!(!res.pass);
        assert_eq!(res.residual("c1.H"), Some(&q(2)));
    }

    #[test]
    fn cotangent_forces_h_sq_zero() {
        for h in 1..=20 {
            for kh in -30..=30 {
                assert_eq!(cotangent_surface_residual(kh, h), q(-3 * h));
            }
        }
        // Omega on the Veronese surface: c1 = K.
        let omega = SurfaceChernData {
            r: 2,
            c1_h: -6,
            c1sq: 9,
            c1_k: 9,
            c2: 3,
            k_h: -6,
            h_sq: 4,
            chi_o: 1,
        };
        assert_eq!(surface_identities(&omega).residual("c1.H"), Some(&q(-12)));
    }

    #[test]
    fn veronese_is_self_dual() {
        assert_eq!(
            ulrich_dual_surface(&veronese_tangent(), 9),
            veronese_tangent()
        );
    }

    #[test]
    fn rank_one_dual() {
        let d = SurfaceChernData {
            r: 1,
            c1_h: 5,
            c1sq: 3,
            c1_k: -2,
            c2: 0,
            k_h: -3,
            h_sq: 2,
            chi_o: 1,
        };
        let dual = ulrich_dual_surface(&d, 7);
        assert_eq!(dual.c1_h, (-3 + 6) - 5);
        assert_eq!(dual.c2, 0);
    }

    #[test]
    fn constraint_chain() {
        let c = surface_classification_constraints();
        assert_eq!(c.h_sq_candidates, vec![4]);
        assert_eq!((c.h_sq, c.k_h, c.hyperplane_genus), (4, -6, 0));
        assert_eq!(c.k_sq_after_irregularity, vec![8, 9]);
        assert_eq!(c.k_sq_after_integrality, vec![9]);
        assert_eq!(
            (c.k_sq, c.chi_o, c.irregularity, c.adjoint_genus),
            (9, 1, 0, 1)
        );
        assert_eq!(c.veronese_degree, 2);
        assert_eq!(forced_chi(9, 4), q(1));
        assert_eq!(forced_chi(8, 4), frac(4, 5));
    }

    fn surface_data() -> impl Strategy<Value = SurfaceChernData> {
        (
            1i64..=4,
            -12i64..=12,
            -12i64..=12,
            -12i64..=12,
            -12i64..=12,
            -12i64..=12,
            1i64..=8,
            -3i64..=3,
        )
            .prop_map(
                |(r, c1_h, c1sq, c1_k, c2, k_h, h_sq, chi_o)| SurfaceChernData {
                    r,
                    c1_h,
                    c1sq,
                    c1_k,
                    c2,
                    k_h,
                    h_sq,
                    chi_o,
                },
            )
    }

    proptest! {
        #[test]
        fn dual_is_involution(d in surface_data(), k_sq in -20i64..=20) {
            prop_assert_eq!(ulrich_dual_surface(&ulrich_dual_surface(&d, k_sq), k_sq), d);
        }

        #[test]
        fn dual_preserves_identities(d in surface_data(), k_sq in -20i64..=20) {
            let dual = ulrich_dual_surface(&d, k_sq);
            prop_assert_eq!(surface_identities(&d).pass, surface_identities(&dual).pass);
        }

        #[test]
        fn first_identity_is_lemma_c1(d in surface_data()) {
            let res = surface_identities(&d);
            prop_assert_eq!(
                res.residual("c1.H").unwrap(),
                &lemma_c1_residual(2, d.r, d.c1_h, d.k_h, d.h_sq)
            );
        }
    }

    #[test]
    fn dual_preserves_identities_on_exhaustive_grid() {
        // Solutions of both identities are rare in random data; build them.
        let mut passing = 0;
        for r in 1..=3 {
            for h_sq in 1..=4 {
                for k_h in -8..=4 {
                    for c1sq in -6..=6 {
                        for c1_k in -6..=6 {
                            for chi_o in -1..=2 {
                                let two_c1h = r * (k_h + 3 * h_sq);
                                let c2_twice = c1sq - c1_k - 2 * r * (h_sq - chi_o);
                                if two_c1h % 2 != 0 || c2_twice % 2 != 0 {
                                    continue;
                                }
                                let d = SurfaceChernData {
                                    r,
                                    c1_h: two_c1h / 2,
                                    c1sq,
                                    c1_k,
                                    c2: c2_twice / 2,
                                    k_h,
                                    h_sq,
                                    chi_o,
                                };
                                assert!(surface_identities(&d).pass);
                                for k_sq in [-1, 0, 5, 9] {
                                    assert!(
                                        surface_identities(&ulrich_dual_surface(&d, k_sq)).pass
                                    );
                                }
                                passing += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(passing > 1000);
    }
}
