use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{frac, Q};

/// `(h^0, h^1)` of `O_{P^1}(k)`.
pub fn p1_cohomology(k: i64) -> (i64, i64) {
    ((k + 1).max(0), (-k - 1).max(0))
}

fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `h^q(P^n, Omega^p(k))` for `q = 0..=n`, by Bott's formula.
///
/// Panics if `p > n`.
pub fn bott_dims(n: usize, p: usize, k: i64) -> Vec<BigInt> {
    assert!(p <= n, "bott_dims: p = {p} exceeds n = {n}");
    let (ni, pi) = (n as i64, p as i64);
    let mut h = vec![BigInt::zero(); n + 1];
    if k == 0 {
        h[p] = BigInt::from(1);
    } else if k > pi {
        h[0] = binom(k + ni - pi, k) * binom(k - 1, pi);
    } else if k < pi - ni {
        h[n] = binom(-k + pi, -k) * binom(-k - 1, ni - pi);
    }
    h
}

/// One cohomology dimension quoted in a curve verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyWitness {
    pub group: String,
    pub value: i64,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVerdict {
    pub genus: i64,
    pub degree: i64,
    pub ulrich: bool,
    pub certificate: Vec<CohomologyWitness>,
}

fn witness(group: &str, value: i64, relation: &str) -> CohomologyWitness {
    CohomologyWitness {
        group: group.to_string(),
        value,
        relation: relation.to_string(),
    }
}

/// Whether `T_C` is Ulrich for a smooth curve of genus `g` embedded by a
/// line bundle of degree `d`: both `h^0` and `h^1` of `T_C(-H)` must vanish.
///
/// Panics if `g < 0` or `d < 1`.
pub fn curve_tangent_ulrich(g: i64, d: i64) -> CurveVerdict {
    assert!(
        g >= 0 && d >= 1,
        "curve_tangent_ulrich: need g >= 0, d >= 1"
    );
    let certificate = if g == 0 {
        let (h0, h1) = p1_cohomology(2 - d);
        vec![
            witness("h0(T(-H))", h0, "h0(O_P1(2-d))"),
            witness("h1(T(-H))", h1, "h0(O_P1(d-4)) by Serre duality"),
        ]
    } else {
        vec![witness(
            "h1(T(-H))",
            3 * g - 3 + d,
            "h0(omega^2(H)) = 3g-3+d by Riemann-Roch",
        )]
    };
    CurveVerdict {
        genus: g,
        degree: d,
        ulrich: certificate.iter().all(|w| w.value == 0),
        certificate,
    }
}

/// Same for `Omega_C`, which is never Ulrich: `h^1(Omega_C(-H)) = h^0(O_C(H))`.
pub fn curve_cotangent_ulrich(g: i64, d: i64) -> CurveVerdict {
    assert!(
        g >= 0 && d >= 1,
        "curve_cotangent_ulrich: need g >= 0, d >= 1"
    );
    let certificate = if g == 0 {
        vec![witness("h1(Omega(-H))", d + 1, "h0(O_P1(d))")]
    } else {
        vec![witness(
            "h1(Omega(-H))",
            2.max(d - g + 1),
            "lower bound for h0(O_C(H)) of a very ample H",
        )]
    };
    CurveVerdict {
        genus: g,
        degree: d,
        ulrich: false,
        certificate,
    }
}

/// The positive integer `d` with `d^n = n + 2`, if any.
pub fn pn_tangent_equation(n: u32) -> Option<u64> {
    assert!(n >= 1, "pn_tangent_equation: n must be positive");
    let target = n as u64 + 2;
    (1..=target).find(|d| d.checked_pow(n) == Some(target))
}

/// `(n+2) / gcd(n^2+n, n+2)`.
pub fn degree_divisor(n: u64) -> u64 {
    assert!(n >= 1, "degree_divisor: n must be positive");
    (n + 2) / (n * n + n).gcd(&(n + 2))
}

fn p1xpl_leading_coefficient(l: i64) -> Q {
    frac((l + 1) * (l + 1) * (l + 2), l + 3)
}

fn big_pow(b: i64, e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(b).pow(e as u32))
}

/// `a b^l ((l+1)^2 (l+2)/(l+3) - (a(l+1) + 2b)/(ab))` for `P^1 x P^l`
/// polarized by `O(a, b)`.
pub fn p1_times_pl_residual(l: i64, a: i64, b: i64) -> Q {
    assert!(
        l >= 1 && a >= 1 && b >= 1,
        "p1_times_pl_residual: need l, a, b >= 1"
    );
    let abl = big_pow(b, l) * BigInt::from(a);
    let tail = frac(a * (l + 1) + 2 * b, a * b);
    abl * (p1xpl_leading_coefficient(l) - tail)
}

/// `c1(T).H^l - (l+1)/2 (K + (l+2)H).H^l` on `P^1 x P^l` with
/// `H = O(a, b)`, computed from `H1 H2^l = 1`, `H2^{l+1} = 0`.
///
/// Equals `-(l+3)/2` times `(l+1)^2(l+2)/(l+3) a b^l - 2 b^l - l(l+1) a b^{l-1}`.
pub fn p1_times_pl_c1_defect(l: i64, a: i64, b: i64) -> Q {
    assert!(
        l >= 1 && a >= 1 && b >= 1,
        "p1_times_pl_c1_defect: need l, a, b >= 1"
    );
    let bl = big_pow(b, l);
    let bl1 = big_pow(b, l - 1);
    let a_big = BigInt::from(a);
    let c1_h = &bl * BigInt::from(2) + &bl1 * &a_big * BigInt::from(l * (l + 1));
    let h_top = bl * a_big * BigInt::from(l + 1);
    frac(l + 3, 2) * c1_h - frac((l + 1) * (l + 2), 2) * h_top
}
