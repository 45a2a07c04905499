//! Exhaustive drivers over bounded universes of homogeneous spaces, plus the
//! finite sweeps over curves, surfaces and threefolds.
//!
//! Every driver returns a [`VerificationReport`] whose records are sorted
//! deterministically, so serial and parallel runs serialize identically.

mod homogeneous;
mod sweeps;

pub use homogeneous::{
    picard_one_obstructions, verify_aut_lemma, verify_j_bound, verify_picard_ge2,
    verify_picard_one, verify_threefold_bound, weak_composition_max, DEFAULT_ORACLE_DIM_CAP,
};
pub use sweeps::{
    verify_curves, verify_index_two_threefolds, verify_p1_times_pl, verify_pn_equation,
    verify_surfaces, verify_table1,
};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homspace::{
    Factor, FactorInvariants, HomSpace, HomSpaceError, Marking, SpaceInvariants,
};
use crate::rootsys::{Family, RootDatum, SimpleType, RANK_HARD_CAP};

/// Factors of a product are restricted to this rank.
pub const PRODUCT_FACTOR_RANK_CAP: usize = 4;
/// Hard cap on the number of factors.
pub const MAX_COMPONENTS_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("max_rank must be in 1..={RANK_HARD_CAP}, got {0}")]
    MaxRank(usize),
    #[error("max_components must be in 1..={MAX_COMPONENTS_CAP}, got {0}")]
    MaxComponents(usize),
    #[error("jobs must be positive")]
    Jobs,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    HomSpace(#[from] HomSpaceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<SpaceInvariants>,
    pub expected: Option<String>,
    pub actual: String,
    pub pass: bool,
}

impl Record {
    pub fn new(
        subject: impl Into<String>,
        expected: Option<String>,
        actual: String,
        pass: bool,
    ) -> Record {
        Record {
            subject: subject.into(),
            invariants: None,
            expected,
            actual,
            pass,
        }
    }

    pub fn with_invariants(mut self, inv: SpaceInvariants) -> Record {
        self.invariants = Some(inv);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A variety with polarization that no check excluded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate {
    pub variety: String,
    pub polarization: String,
}

impl std::fmt::Display for Candidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.variety, self.polarization)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub universe: String,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub survivors: Vec<Candidate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subreports: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn new(
        claim: &str,
        universe: impl Into<String>,
        records: Vec<Record>,
    ) -> VerificationReport {
        let passed = records.iter().filter(|r| r.pass).count();
        VerificationReport {
            claim: claim.to_string(),
            universe: universe.into(),
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            pass: passed == records.len(),
            records,
            notes: Vec::new(),
            survivors: Vec::new(),
            subreports: Vec::new(),
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> VerificationReport {
        self.notes = notes;
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn subreport(&self, claim: &str) -> Option<&VerificationReport> {
        self.subreports.iter().find(|s| s.claim == claim)
    }

    /// Compact JSON; full-universe reports run to tens of megabytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain text: one summary line per report, then failing records
    /// and notes. With `all_records`, every record is listed.
    pub fn render_text(&self, all_records: bool) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0, all_records);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize, all_records: bool) {
        let pad = "  ".repeat(depth);
        let status = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{pad}[{status}] {:<24} {:>7}/{:<7} {}",
            self.claim, self.summary.passed, self.summary.total, self.universe
        );
        for note in &self.notes {
            let _ = writeln!(out, "{pad}  note: {note}");
        }
        if !self.survivors.is_empty() {
            let list: Vec<String> = self.survivors.iter().map(Candidate::to_string).collect();
            let _ = writeln!(out, "{pad}  survivors: {}", list.join(", "));
        }
        for sub in &self.subreports {
            sub.render_into(out, depth + 1, all_records);
        }
        for r in &self.records {
            if all_records || !r.pass {
                let mark = if r.pass { "ok  " } else { "FAIL" };
                let expected = r.expected.as_deref().unwrap_or("-");
                let _ = writeln!(
                    out,
                    "{pad}  {mark} {:<36} expected: {:<28} actual: {}",
                    r.subject, expected, r.actual
                );
            }
        }
    }
}

pub(crate) fn check_bounds(max_rank: usize, max_components: usize) -> Result<(), VerifyError> {
    if !(1..=RANK_HARD_CAP).contains(&max_rank) {
        return Err(VerifyError::MaxRank(max_rank));
    }
    if !(1..=MAX_COMPONENTS_CAP).contains(&max_components) {
        return Err(VerifyError::MaxComponents(max_components));
    }
    Ok(())
}

/// Simple types up to `max_rank`, plus all exceptional types.
pub fn picard_one_types(max_rank: usize) -> Vec<SimpleType> {
    let mut types: BTreeSet<SimpleType> = SimpleType::all_up_to(max_rank).into_iter().collect();
    for (family, rank) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        types.insert(SimpleType::new(family, rank).expect("valid exceptional type"));
    }
    types.into_iter().collect()
}

/// Every Picard-rank-one space on the given types, with invariants.
pub(crate) fn picard_one_universe(types: &[SimpleType]) -> Vec<(HomSpace, SpaceInvariants)> {
    types
        .par_iter()
        .flat_map_iter(|&ty| {
            let datum = RootDatum::new(ty);
            (1..=ty.rank())
                .map(|node| {
                    let marking = Marking::single(node);
                    let part = FactorInvariants::compute(&datum, &marking);
                    let space = HomSpace::simple(ty, marking).expect("valid node");
                    let inv = SpaceInvariants::from_factors(&space, &[part]).expect("positive j");
                    (space, inv)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Universe of [`enumerate_spaces`], with invariants assembled from cached
/// per-factor data.
pub fn enumerate_with_invariants(
    max_rank: usize,
    max_components: usize,
) -> Result<Vec<(HomSpace, SpaceInvariants)>, VerifyError> {
    check_bounds(max_rank, max_components)?;
    let factors: Vec<(Factor, FactorInvariants)> = SimpleType::all_up_to(max_rank)
        .par_iter()
        .flat_map_iter(|&ty| {
            let datum = RootDatum::new(ty);
            Marking::all_nonempty(ty.rank())
                .into_iter()
                .map(|m| {
                    let inv = FactorInvariants::compute(&datum, &m);
                    (Factor { ty, marking: m }, inv)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut combos: Vec<Vec<usize>> = (0..factors.len()).map(|i| vec![i]).collect();
    if max_components >= 2 {
        let cap = max_rank.min(PRODUCT_FACTOR_RANK_CAP);
        let mut small: Vec<usize> = (0..factors.len())
            .filter(|&i| factors[i].0.ty.rank() <= cap)
            .collect();
        small.sort_by(|&a, &b| factors[a].0.cmp(&factors[b].0));
        for (x, &a) in small.iter().enumerate() {
            for (y, &b) in small.iter().enumerate().skip(x) {
                combos.push(vec![a, b]);
                if max_components >= 3 {
                    for &c in &small[y..] {
                        combos.push(vec![a, b, c]);
                    }
                }
            }
        }
    }

    let mut out: Vec<(HomSpace, SpaceInvariants)> = combos
        .par_iter()
        .map(|idx| {
            let parts: Vec<FactorInvariants> = idx.iter().map(|&i| factors[i].1.clone()).collect();
            let space = HomSpace::with_limit(
                idx.iter().map(|&i| factors[i].0.clone()).collect(),
                max_components,
            )?;
            let inv = SpaceInvariants::from_factors(&space, &parts)?;
            Ok((space, inv))
        })
        .collect::<Result<_, HomSpaceError>>()?;
    out.par_sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// All simple types of rank at most `max_rank` with every nonempty marking,
/// and all unordered products of up to `max_components` marked factors of
/// rank at most `min(max_rank, 4)`. Sorted, without duplicates.
pub fn enumerate_spaces(
    max_rank: usize,
    max_components: usize,
) -> Result<Vec<HomSpace>, VerifyError> {
    Ok(enumerate_with_invariants(max_rank, max_components)?
        .into_iter()
        .map(|(s, _)| s)
        .collect())
}

pub(crate) fn universe_label(max_rank: usize, max_components: usize) -> String {
    if max_components == 1 {
        format!("simple types of rank <= {max_rank}, all nonempty markings")
    } else {
        format!(
            "simple types of rank <= {max_rank}, all nonempty markings, and products of up to {max_components} factors of rank <= {}",
            max_rank.min(PRODUCT_FACTOR_RANK_CAP)
        )
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool.
pub fn with_jobs<R: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, VerifyError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(VerifyError::Jobs),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| VerifyError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn expected_survivors() -> Vec<Candidate> {
    vec![
        Candidate {
            variety: "P^1".into(),
            polarization: "O(3)".into(),
        },
        Candidate {
            variety: "P^2".into(),
            polarization: "O(2)".into(),
        },
    ]
}

const HYPOTHESES: [&str; 3] = [
    "the universe starts at G/P: splitting off an abelian factor and excluding it is analytic and not checked here",
    "positivity of the intersection numbers L_1^l_1 ... L_k^l_k is assumed, not computed",
    "curves, P^n and surfaces are handled by the finite sweeps; homogeneous spaces of dimension >= 3 by the drivers",
];

/// Every driver and sweep at the given bounds, aggregated.
pub fn run_all(max_rank: usize, max_components: usize) -> Result<VerificationReport, VerifyError> {
    check_bounds(max_rank, max_components)?;
    let universe = enumerate_with_invariants(max_rank, max_components)?;
    let types = picard_one_types(max_rank);
    let picard_one = picard_one_universe(&types);

    let subreports = vec![
        verify_table1(max_rank),
        homogeneous::aut_lemma_over(&picard_one, max_rank),
        homogeneous::j_bound_over(&universe, max_rank, max_components),
        homogeneous::picard_ge2_over(&universe, max_rank, max_components, DEFAULT_ORACLE_DIM_CAP),
        homogeneous::picard_one_over(&picard_one, max_rank),
        homogeneous::threefold_bound_over(&picard_one, max_rank),
        verify_p1_times_pl(),
        verify_curves(),
        verify_pn_equation(),
        verify_surfaces(),
        verify_index_two_threefolds(),
    ];

    let survivors = survivors(&subreports);
    let mut records: Vec<Record> = subreports
        .iter()
        .map(|s| {
            Record::new(
                s.claim.clone(),
                Some(format!(
                    "{}/{} records pass",
                    s.summary.total, s.summary.total
                )),
                format!("{}/{} records pass", s.summary.passed, s.summary.total),
                s.pass,
            )
        })
        .collect();
    let render = |v: &[Candidate]| {
        let items: Vec<String> = v.iter().map(Candidate::to_string).collect();
        format!("{{{}}}", items.join(", "))
    };
    let expected = expected_survivors();
    records.push(Record::new(
        "surviving candidates",
        Some(render(&expected)),
        render(&survivors),
        survivors == expected,
    ));

    let mut report = VerificationReport::new(
        "main",
        format!(
            "{}; Picard-one tables over rank <= {max_rank} plus E6, E7, E8, F4, G2",
            universe_label(max_rank, max_components)
        ),
        records,
    )
    .with_notes(HYPOTHESES.iter().map(|s| s.to_string()).collect());
    report.survivors = survivors;
    report.subreports = subreports;
    Ok(report)
}

/// `run_all` on a pool of `jobs` threads.
pub fn run_all_with_jobs(
    max_rank: usize,
    max_components: usize,
    jobs: Option<usize>,
) -> Result<VerificationReport, VerifyError> {
    with_jobs(jobs, || run_all(max_rank, max_components))?
}

/// Candidates not excluded by any sweep: curves with Ulrich tangent bundle,
/// and `(P^n, O(d))` with `d^n = n + 2` whose surface or curve data passes.
fn survivors(subreports: &[VerificationReport]) -> Vec<Candidate> {
    let mut out = BTreeSet::new();
    for g in 0..=sweeps::CURVE_MAX_GENUS {
        for d in 1..=sweeps::CURVE_MAX_DEGREE {
            if crate::ulrichcheck::curve_tangent_ulrich(g, d).ulrich {
                let variety = if g == 0 {
                    "P^1".to_string()
                } else {
                    format!("genus {g} curve")
                };
                out.insert(Candidate {
                    variety,
                    polarization: format!("O({d})"),
                });
            }
        }
    }
    let surfaces_ok = subreports
        .iter()
        .find(|s| s.claim == sweeps::SURFACES_CLAIM)
        .is_some_and(|s| s.pass);
    for n in 2..=sweeps::PN_MAX {
        if let Some(d) = crate::ulrichcheck::pn_tangent_equation(n) {
            // n = 2 needs the surface sweep; n >= 3 would need a check that
            // does not exist, so such a hit is reported as a survivor.
            if n != 2 || surfaces_ok {
                out.insert(Candidate {
                    variety: format!("P^{n}"),
                    polarization: format!("O({d})"),
                });
            }
        }
    }
    // a homogeneous space that no driver excludes stays a candidate
    for claim in [
        "picard-ge2-coefficient",
        "picard-one-arithmetic",
        "threefold-bound",
    ] {
        if let Some(s) = subreports.iter().find(|s| s.claim == claim) {
            for r in s.failures() {
                out.insert(Candidate {
                    variety: r.subject.clone(),
                    polarization: "any".into(),
                });
            }
        }
    }
    out.into_iter().collect()
}
