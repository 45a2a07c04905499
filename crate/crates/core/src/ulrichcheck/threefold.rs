use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{lemma_c1_residual, CheckResult, ChernError};
use crate::exact::{self, frac, Q};

/// Intersection numbers of a rank-`r` bundle `E` on a polarized threefold.
///
/// `c2X` is `c2(X)`; `K` is `K_X`. `c1HK` (`c1(E).H.K_X`) is needed by every
/// twist and by the `c2` identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreefoldChernData {
    pub r: i64,
    #[serde(rename = "c1Hsq")]
    pub c1_hsq: i64,
    #[serde(rename = "c1sqH")]
    pub c1sq_h: i64,
    pub c1cube: i64,
    #[serde(rename = "c2H")]
    pub c2_h: i64,
    pub c1c2: i64,
    pub c3: i64,
    #[serde(rename = "KHsq")]
    pub k_hsq: i64,
    #[serde(rename = "KsqH")]
    pub ksq_h: i64,
    #[serde(rename = "c1sqK")]
    pub c1sq_k: i64,
    #[serde(rename = "c2K")]
    pub c2_k: i64,
    #[serde(rename = "c1Ksq")]
    pub c1_ksq: i64,
    #[serde(rename = "c1c2X")]
    pub c1_c2x: i64,
    #[serde(rename = "c2XH")]
    pub c2x_h: i64,
    #[serde(rename = "Hcube")]
    pub h_cube: i64,
    #[serde(rename = "chiO")]
    pub chi_o: i64,
    #[serde(rename = "c1HK")]
    pub c1_hk: i64,
}

impl ThreefoldChernData {
    pub fn validate(&self) -> Result<(), ChernError> {
        if self.r < 1 {
            return Err(ChernError::OutOfRange {
                field: "r",
                value: self.r,
                min: 1,
            });
        }
        if self.h_cube < 1 {
            return Err(ChernError::OutOfRange {
                field: "Hcube",
                value: self.h_cube,
                min: 1,
            });
        }
        Ok(())
    }
}

/// Same pairings in arbitrary precision, so twisting never overflows.
#[derive(Debug, Clone, PartialEq)]
struct Pairings {
    r: i64,
    c1_hsq: BigInt,
    c1sq_h: BigInt,
    c1cube: BigInt,
    c2_h: BigInt,
    c1c2: BigInt,
    c3: BigInt,
    k_hsq: BigInt,
    ksq_h: BigInt,
    c1sq_k: BigInt,
    c2_k: BigInt,
    c1_ksq: BigInt,
    c1_c2x: BigInt,
    c2x_h: BigInt,
    h_cube: BigInt,
    chi_o: BigInt,
    c1_hk: BigInt,
}

impl From<&ThreefoldChernData> for Pairings {
    fn from(d: &ThreefoldChernData) -> Pairings {
        let b = BigInt::from;
        Pairings {
            r: d.r,
            c1_hsq: b(d.c1_hsq),
            c1sq_h: b(d.c1sq_h),
            c1cube: b(d.c1cube),
            c2_h: b(d.c2_h),
            c1c2: b(d.c1c2),
            c3: b(d.c3),
            k_hsq: b(d.k_hsq),
            ksq_h: b(d.ksq_h),
            c1sq_k: b(d.c1sq_k),
            c2_k: b(d.c2_k),
            c1_ksq: b(d.c1_ksq),
            c1_c2x: b(d.c1_c2x),
            c2x_h: b(d.c2x_h),
            h_cube: b(d.h_cube),
            chi_o: b(d.chi_o),
            c1_hk: b(d.c1_hk),
        }
    }
}

impl Pairings {
    fn to_data(&self) -> Result<ThreefoldChernData, ChernError> {
        let n = |x: &BigInt, name: &'static str| x.to_i64().ok_or(ChernError::Overflow(name));
        Ok(ThreefoldChernData {
            r: self.r,
            c1_hsq: n(&self.c1_hsq, "c1Hsq")?,
            c1sq_h: n(&self.c1sq_h, "c1sqH")?,
            c1cube: n(&self.c1cube, "c1cube")?,
            c2_h: n(&self.c2_h, "c2H")?,
            c1c2: n(&self.c1c2, "c1c2")?,
            c3: n(&self.c3, "c3")?,
            k_hsq: n(&self.k_hsq, "KHsq")?,
            ksq_h: n(&self.ksq_h, "KsqH")?,
            c1sq_k: n(&self.c1sq_k, "c1sqK")?,
            c2_k: n(&self.c2_k, "c2K")?,
            c1_ksq: n(&self.c1_ksq, "c1Ksq")?,
            c1_c2x: n(&self.c1_c2x, "c1c2X")?,
            c2x_h: n(&self.c2x_h, "c2XH")?,
            h_cube: n(&self.h_cube, "Hcube")?,
            chi_o: n(&self.chi_o, "chiO")?,
            c1_hk: n(&self.c1_hk, "c1HK")?,
        })
    }

    /// Pairings of `E(-jH)`, expanding
    /// `c1' = c1 - jrH`,
    /// `c2' = c2 - j(r-1) c1 H + j^2 r(r-1)/2 H^2`,
    /// `c3' = c3 - j(r-2) c2 H + j^2 (r-1)(r-2)/2 c1 H^2 - j^3 r(r-1)(r-2)/6 H^3`
    /// against `H`, `K` and `c2(X)`.
    fn twist(&self, j: i64) -> Pairings {
        let r = self.r;
        let b = BigInt::from;
        let (jr, j2, j3) = (b(j * r), b(j * j), b(j * j * j));
        let c_2 = b(r * (r - 1) / 2);
        let c_3a = b((r - 1) * (r - 2) / 2);
        let c_3b = b(r * (r - 1) * (r - 2) / 6);
        let jr1 = b(j * (r - 1));
        let jr2 = b(j * (r - 2));
        let r_big = b(r);
        let p = self;

        let c1_hsq = &p.c1_hsq - &jr * &p.h_cube;
        let c1sq_h = &p.c1sq_h - b(2) * &jr * &p.c1_hsq + &jr * &jr * &p.h_cube;
        let c1cube = &p.c1cube - b(3) * &jr * &p.c1sq_h + b(3) * &jr * &jr * &p.c1_hsq
            - &jr * &jr * &jr * &p.h_cube;
        let c2_h = &p.c2_h - &jr1 * &p.c1_hsq + &j2 * &c_2 * &p.h_cube;
        let c1c2 = &p.c1c2 - &jr1 * &p.c1sq_h + &j2 * &c_2 * &p.c1_hsq - &jr * &p.c2_h
            + &j2 * b(r * (r - 1)) * &p.c1_hsq
            - &j3 * &r_big * &c_2 * &p.h_cube;
        let c3 = &p.c3 - &jr2 * &p.c2_h + &j2 * &c_3a * &p.c1_hsq - &j3 * &c_3b * &p.h_cube;
        let c1sq_k = &p.c1sq_k - b(2) * &jr * &p.c1_hk + &jr * &jr * &p.k_hsq;
        let c2_k = &p.c2_k - &jr1 * &p.c1_hk + &j2 * &c_2 * &p.k_hsq;
        let c1_ksq = &p.c1_ksq - &jr * &p.ksq_h;
        let c1_c2x = &p.c1_c2x - &jr * &p.c2x_h;
        let c1_hk = &p.c1_hk - &jr * &p.k_hsq;

        Pairings {
            r,
            c1_hsq,
            c1sq_h,
            c1cube,
            c2_h,
            c1c2,
            c3,
            c1sq_k,
            c2_k,
            c1_ksq,
            c1_c2x,
            c1_hk,
            ..p.clone()
        }
    }

    /// Hirzebruch-Riemann-Roch on a threefold.
    fn chi(&self) -> Q {
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let r = BigRational::from_integer(BigInt::from(self.r));
        r * q(&self.chi_o)
            + frac(1, 12) * (q(&self.c1_ksq) + q(&self.c1_c2x))
            + frac(1, 4) * (q(&self.c2_k) * BigInt::from(2) - q(&self.c1sq_k))
            + frac(1, 6)
                * (q(&self.c1cube) - q(&self.c1c2) * BigInt::from(3)
                    + q(&self.c3) * BigInt::from(3))
    }
}

/// Pairings of `E(-jH)`.
pub fn threefold_twist(d: &ThreefoldChernData, j: i64) -> Result<ThreefoldChernData, ChernError> {
    Pairings::from(d).twist(j).to_data()
}

/// `chi(X, E)` by Hirzebruch-Riemann-Roch. Not necessarily integral for
/// synthetic data.
pub fn threefold_chi(d: &ThreefoldChernData) -> Q {
    Pairings::from(d).chi()
}

/// `chi(E(-jH)) - chi(E)` as a polynomial in `j`, written out independently
/// of [`threefold_twist`].
pub fn threefold_delta(d: &ThreefoldChernData, j: i64) -> Q {
    let q = exact::q;
    let r = d.r;
    let linear = 12 * d.c2_h + 6 * d.c1_hk - 6 * d.c1sq_h - r * d.ksq_h - r * d.c2x_h;
    let quadratic = 2 * d.c1_hsq - r * d.k_hsq;
    let cubic = r * d.h_cube;
    frac(j, 12) * q(linear) + frac(j * j, 4) * q(quadratic) - frac(j * j * j, 6) * q(cubic)
}

/// Threefold identities together with the twisted Euler characteristics
/// they are equivalent to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldCheck {
    pub result: CheckResult,
    #[serde(with = "crate::exact::serde_q")]
    pub chi: Q,
    pub chi_integral: bool,
    /// `chi(E(-jH))` for `j = 1, 2, 3`.
    pub twisted_chi: Vec<String>,
    /// The identities hold exactly when the three twisted Euler
    /// characteristics vanish.
    pub routes_agree: bool,
}

pub fn threefold_identities(d: &ThreefoldChernData) -> ThreefoldCheck {
    let q = exact::q;
    let r = d.r;
    let first = lemma_c1_residual(3, r, d.c1_hsq, d.k_hsq, d.h_cube);
    let second = q(d.c2_h)
        - (frac(r, 12) * q(d.ksq_h + d.c2x_h - 22 * d.h_cube) + frac(d.c1sq_h - d.c1_hk, 2));
    let third = q(d.c3)
        - (q(d.c1c2) - frac(d.c1cube, 3) + frac(d.c1sq_k - 2 * d.c2_k, 2)
            - frac(d.c1_ksq + d.c1_c2x, 6)
            + q(2 * r * (d.h_cube - d.chi_o)));
    let result =
        CheckResult::from_residuals(vec![("c1.H^2", first), ("c2.H", second), ("c3", third)]);

    let base = Pairings::from(d);
    let twisted: Vec<Q> = (1..=3).map(|j| base.twist(j).chi()).collect();
    let chi = base.chi();
    ThreefoldCheck {
        routes_agree: result.pass == twisted.iter().all(exact::is_zero),
        twisted_chi: twisted.iter().map(exact::render).collect(),
        chi_integral: chi.is_integer(),
        chi,
        result,
    }
}

/// Data for a rank-2 bundle with `c1(E) = 2H` on a Fano threefold with
/// `-K = 2H`, `H^3 = d` and `c2(X).H = 12`.
pub fn fano_index_two(d: i64, c2_h: i64, c3: i64) -> ThreefoldChernData {
    ThreefoldChernData {
        r: 2,
        c1_hsq: 2 * d,
        c1sq_h: 4 * d,
        c1cube: 8 * d,
        c2_h,
        c1c2: 2 * c2_h,
        c3,
        k_hsq: -2 * d,
        ksq_h: 4 * d,
        c1sq_k: -8 * d,
        c2_k: -2 * c2_h,
        c1_ksq: 8 * d,
        c1_c2x: 24,
        c2x_h: 12,
        h_cube: d,
        chi_o: 1,
        c1_hk: -4 * d,
    }
}

/// Bundle on `P^3` polarized by `O(1)`, given by its Chern numbers
/// `c1 = a L`, `c2 = b L^2`, `c3 = c L^3`.
pub fn projective_threefold(r: i64, a: i64, b: i64, c: i64) -> ThreefoldChernData {
    ThreefoldChernData {
        r,
        c1_hsq: a,
        c1sq_h: a * a,
        c1cube: a * a * a,
        c2_h: b,
        c1c2: a * b,
        c3: c,
        k_hsq: -4,
        ksq_h: 16,
        c1sq_k: -4 * a * a,
        c2_k: -4 * b,
        c1_ksq: 16 * a,
        c1_c2x: 6 * a,
        c2x_h: 6,
        h_cube: 1,
        chi_o: 1,
        c1_hk: -4 * a,
    }
}

/// Result of the `c1(X) = 0` special-Ulrich identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryK0 {
    /// `12 c2(E).H - 13 c1(E).H^2 - 2 c2(X).H`
    pub residual: i64,
    /// `2 c2(E).H + 1` when `c2(X).H = 0` (abelian threefolds).
    pub genus: Option<i64>,
}

pub fn corollary_k0_residual(d: &ThreefoldChernData) -> Result<CorollaryK0, ChernError> {
    for (field, value) in [
        ("KHsq", d.k_hsq),
        ("KsqH", d.ksq_h),
        ("c1sqK", d.c1sq_k),
        ("c2K", d.c2_k),
        ("c1Ksq", d.c1_ksq),
        ("c1HK", d.c1_hk),
    ] {
        if value != 0 {
            return Err(ChernError::NonzeroCanonical { field, value });
        }
    }
    Ok(CorollaryK0 {
        residual: 12 * d.c2_h - 13 * d.c1_hsq - 2 * d.c2x_h,
        genus: (d.c2x_h == 0).then_some(2 * d.c2_h + 1),
    })
}
