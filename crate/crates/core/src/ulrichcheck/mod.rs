//! Numerical Ulrich conditions on intersection numbers.
//!
//! Chern data are plain integers (`c1.H`, `c1^2`, ...) rather than elements of
//! a cohomology ring: every identity checked here is polynomial in those
//! pairings. Residuals are exact rationals and a check passes only when every
//! residual is exactly zero.

mod arithmetic;
mod surface;
mod threefold;

pub use arithmetic::{
    bott_dims, curve_cotangent_ulrich, curve_tangent_ulrich, degree_divisor, p1_cohomology,
    p1_times_pl_c1_defect, p1_times_pl_residual, pn_tangent_equation, CohomologyWitness,
    CurveVerdict,
};
pub use surface::{
    cotangent_surface_residual, surface_classification_constraints, surface_identities,
    ulrich_dual_surface, veronese_tangent, SurfaceChernData, SurfaceConstraints,
};
pub use threefold::{
    corollary_k0_residual, fano_index_two, projective_threefold, threefold_chi, threefold_delta,
    threefold_identities, threefold_twist, CorollaryK0, ThreefoldCheck, ThreefoldChernData,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, frac, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("field {field} must be >= {min}, got {value}")]
    OutOfRange {
        field: &'static str,
        value: i64,
        min: i64,
    },
    #[error("intersection number {0} does not fit in 64 bits")]
    Overflow(&'static str),
    #[error("requires K_X = 0 pairings, but {field} = {value}")]
    NonzeroCanonical { field: &'static str, value: i64 },
}

/// One named identity and its exact residual (lhs - rhs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub identity: String,
    #[serde(with = "crate::exact::serde_q")]
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub pass: bool,
    pub residuals: Vec<Residual>,
}

impl CheckResult {
    pub fn from_residuals(residuals: Vec<(&str, Q)>) -> CheckResult {
        let residuals: Vec<Residual> = residuals
            .into_iter()
            .map(|(identity, value)| Residual {
                identity: identity.to_string(),
                value,
            })
            .collect();
        CheckResult {
            pass: residuals.iter().all(|r| exact::is_zero(&r.value)),
            residuals,
        }
    }

    pub fn residual(&self, identity: &str) -> Option<&Q> {
        self.residuals
            .iter()
            .find(|r| r.identity == identity)
            .map(|r| &r.value)
    }
}

/// `c1(E).H^{n-1} - r/2 (K + (n+1)H).H^{n-1}`; zero for every Ulrich bundle.
pub fn lemma_c1_residual(n: i64, r: i64, c1_hpow: i64, k_hpow: i64, h_n: i64) -> Q {
    q(c1_hpow) - frac(r, 2) * q(k_hpow + (n + 1) * h_n)
}
