//! Command-line driver behind the `ulrich-verify` binary.
//!
//! Exit status: 0 when every check passes, 1 when any fails, 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgAction, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::exact::{frac, render};
use crate::homspace::{
    identify_model, Factor, HomSpace, Marking, Model, SpaceInvariants, DEFAULT_MAX_COMPONENTS,
};
use crate::rootsys::{SimpleType, DEFAULT_MAX_RANK};
use crate::ulrichcheck::{
    curve_tangent_ulrich, p1_times_pl_residual, surface_identities, threefold_identities,
    CheckResult, CurveVerdict, SurfaceChernData, ThreefoldCheck, ThreefoldChernData,
};
use crate::verify::{
    run_all_with_jobs, verify_table1, weak_composition_max, DEFAULT_ORACLE_DIM_CAP,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ulrich-verify",
    version,
    about = "Ulrich tangent bundle checks on homogeneous spaces and Chern data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants and obstructions for one space, e.g. `A4 --nodes 2` or
    /// `A1xA3 --nodes 1 --nodes 1`.
    Report {
        /// Simple type token, or `x`-joined tokens for a product.
        #[arg(value_name = "TYPE")]
        ty: String,
        /// Marked nodes of one factor; repeat once per factor, in order.
        #[arg(long, num_args = 1.., value_name = "NODE", action = ArgAction::Append)]
        nodes: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Every driver and sweep; exit 0 iff all pass.
    VerifyAll {
        /// Largest rank of a simple type.
        #[arg(long, env = "ULRICH_MAX_RANK", default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
        /// Largest number of factors in a product (at most 3).
        #[arg(long, default_value_t = DEFAULT_MAX_COMPONENTS)]
        max_components: usize,
        #[arg(long)]
        json: bool,
        /// Worker threads; output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        /// List passing records too (text output).
        #[arg(long)]
        all_records: bool,
    },
    /// Dimensions of Picard-one quotients against the closed forms.
    Table1 {
        #[arg(long, env = "ULRICH_MAX_RANK", default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// Surface identities for Chern data read from a JSON file.
    ChernSurface {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Threefold identities for Chern data read from a JSON file.
    ChernThreefold {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Whether `T_C` is Ulrich for a curve of genus `g` and degree `d`;
    /// exit 0 iff it is.
    Curve {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Outcome {
        Outcome {
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Outcome {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = Cli::command()
        .try_get_matches_from(args)
        .and_then(|m| Cli::from_arg_matches(&m).map(|cli| (cli, m)));
    match parsed {
        Ok((cli, matches)) => match cli.command {
            // one --nodes occurrence per factor
            Command::Report { ty, json, .. } => {
                let groups: Vec<Vec<String>> = matches
                    .subcommand_matches("report")
                    .and_then(|m| m.get_occurrences::<String>("nodes"))
                    .map(|occ| occ.map(|o| o.cloned().collect()).collect())
                    .unwrap_or_default();
                cmd_report(&ty, &groups, json)
            }
            other => execute(other),
        },
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text, true)
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Report { ty, nodes, json } => cmd_report(&ty, &[nodes], json),
        Command::VerifyAll {
            max_rank,
            max_components,
            json,
            jobs,
            all_records,
        } => match run_all_with_jobs(max_rank, max_components, jobs) {
            Ok(report) => {
                let text = if json {
                    report.to_json() + "\n"
                } else {
                    report.render_text(all_records)
                };
                Outcome::ok(text, report.pass)
            }
            Err(e) => Outcome::usage(format!("error: {e}")),
        },
        Command::Table1 { max_rank, json } => {
            if !(1..=crate::rootsys::RANK_HARD_CAP).contains(&max_rank) {
                return Outcome::usage(format!(
                    "error: max-rank must be in 1..={}",
                    crate::rootsys::RANK_HARD_CAP
                ));
            }
            let report = verify_table1(max_rank);
            let text = if json {
                report.to_json_pretty() + "\n"
            } else {
                report.render_text(true)
            };
            Outcome::ok(text, report.pass)
        }
        Command::ChernSurface { path, json } => cmd_chern_surface(&path, json),
        Command::ChernThreefold { path, json } => cmd_chern_threefold(&path, json),
        Command::Curve {
            genus,
            degree,
            json,
        } => {
            if genus < 0 || degree < 1 {
                return Outcome::usage("error: need --genus >= 0 and --degree >= 1");
            }
            let verdict = curve_tangent_ulrich(genus, degree);
            let text = if json {
                to_json(&verdict)
            } else {
                render_curve(&verdict)
            };
            Outcome::ok(text, verdict.ulrich)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Parses `A1xA3` with node lists `[["1"], ["1"]]` into a space.
pub fn parse_space(ty: &str, nodes: &[Vec<String>]) -> Result<HomSpace, String> {
    let tokens: Vec<&str> = ty.split(['x', 'X']).collect();
    let types = tokens
        .iter()
        .map(|t| {
            t.parse::<SimpleType>()
                .map_err(|e| format!("type token `{t}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if nodes.len() != types.len() {
        return Err(format!(
            "{} factor(s) in `{ty}` but {} --nodes list(s)",
            types.len(),
            nodes.len()
        ));
    }
    let mut factors = Vec::new();
    for (t, list) in types.into_iter().zip(nodes) {
        let parsed = list
            .iter()
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| format!("node `{s}` is not a positive integer"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let factor =
            Factor::new(t, Marking::new(parsed)).map_err(|e| format!("nodes for {t}: {e}"))?;
        factors.push(factor);
    }
    factors.sort();
    HomSpace::new(factors).map_err(|e| e.to_string())
}

/// Per-space summary printed by `report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub space: String,
    pub invariants: SpaceInvariants,
    pub model: Model,
    /// Whether `max j >= n`, which happens only on `P^n`, `Q^n`, `P^1 x P^l`.
    pub anticanonical_exception: bool,
    /// `n(n+1)/(n+2) - max j` for Picard rank >= 2.
    pub coefficient_margin: Option<String>,
    pub obstructions: Vec<String>,
    /// Ulrich tangent bundle not excluded.
    pub candidate: bool,
}

pub fn space_report(space: &HomSpace) -> Result<SpaceReport, String> {
    let inv = SpaceInvariants::compute(space).map_err(|e| e.to_string())?;
    let model = identify_model(space);
    let n = inv.dimension;
    let ni = n as i64;
    let max_j = inv.max_j().unwrap_or(0);
    let mut obstructions = Vec::new();
    let mut margin = None;
    if inv.picard_rank >= 2 {
        if let Model::P1xPl(l) = model {
            if l == 1 {
                obstructions.push("surface with Ulrich tangent bundle must be P^2".to_string());
            } else {
                let v = p1_times_pl_residual(l as i64, 1, 1);
                obstructions.push(format!(
                    "P^1 x P^{l}: first Chern identity fails on the O(a,b) grid (displayed expression at O(1,1): {})",
                    render(&v)
                ));
            }
        } else {
            let m = frac(ni * (ni + 1) - max_j * (ni + 2), ni + 2);
            let bound = frac(2, ni + 2);
            if m >= bound {
                obstructions.push(format!(
                    "coefficient margin {} >= {} > 0",
                    render(&m),
                    render(&bound)
                ));
            }
            if n <= DEFAULT_ORACLE_DIM_CAP {
                let oracle = frac(ni * (ni + 1), ni + 2)
                    - frac(weak_composition_max(n, &inv.j_values()), ni);
                if oracle != m {
                    obstructions.push(format!("composition oracle disagrees: {}", render(&oracle)));
                }
            }
            margin = Some(render(&m));
        }
    } else {
        let aut = inv.aut_dim.expect("Picard one");
        if n >= 3 {
            obstructions.extend(crate::verify::picard_one_obstructions(n, aut, model));
        } else if n == 1 {
            obstructions.push("curve: T_C Ulrich only for (P^1, O(3))".into());
        } else {
            obstructions.push("surface: T_S Ulrich only for (P^2, O(2))".into());
        }
    }
    let candidate = n <= 2 && matches!(model, Model::ProjSpace(_));
    Ok(SpaceReport {
        space: space.to_string(),
        anticanonical_exception: max_j >= ni,
        coefficient_margin: margin,
        obstructions,
        candidate,
        invariants: inv,
        model,
    })
}

fn render_space_report(r: &SpaceReport) -> String {
    let mut out = String::new();
    let inv = &r.invariants;
    let j: Vec<String> = inv.j.iter().map(|c| c.j.to_string()).collect();
    let _ = writeln!(out, "space:         {}", r.space);
    let _ = writeln!(out, "n:             {}", inv.dimension);
    let _ = writeln!(out, "picard rank:   {}", inv.picard_rank);
    let _ = writeln!(out, "j:             ({})", j.join(","));
    if let Some(a) = inv.aut_dim {
        let _ = writeln!(out, "aut_dim:       {a}");
    }
    let _ = writeln!(out, "model:         {}", r.model);
    let _ = writeln!(
        out,
        "max j vs n:    {}",
        if r.anticanonical_exception {
            "max j >= n (exceptional model)"
        } else {
            "max j < n"
        }
    );
    if let Some(m) = &r.coefficient_margin {
        let _ = writeln!(out, "margin:        {m}");
    }
    for o in &r.obstructions {
        let _ = writeln!(out, "obstruction:   {o}");
    }
    let _ = writeln!(
        out,
        "verdict:       {}",
        if r.candidate {
            "candidate for an Ulrich tangent bundle"
        } else {
            "tangent bundle not Ulrich"
        }
    );
    out
}

fn cmd_report(ty: &str, nodes: &[Vec<String>], json: bool) -> Outcome {
    let space = match parse_space(ty, nodes) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    match space_report(&space) {
        Ok(r) => Outcome::ok(
            if json {
                to_json(&r)
            } else {
                render_space_report(&r)
            },
            true,
        ),
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("error: {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("error: {}: {e}", path.display()))
}

fn render_check(result: &CheckResult) -> String {
    let mut out = String::new();
    for r in &result.residuals {
        let _ = writeln!(out, "residual {:<8} {}", r.identity, render(&r.value));
    }
    let _ = writeln!(out, "result: {}", if result.pass { "PASS" } else { "FAIL" });
    out
}

#[derive(Serialize)]
struct SurfaceOutput<'a> {
    input: &'a SurfaceChernData,
    #[serde(flatten)]
    result: CheckResult,
}

fn cmd_chern_surface(path: &Path, json: bool) -> Outcome {
    let data: SurfaceChernData = match read_json(path) {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    if let Err(e) = data.validate() {
        return Outcome::usage(format!("error: {e}"));
    }
    let result = surface_identities(&data);
    let pass = result.pass;
    let text = if json {
        to_json(&SurfaceOutput {
            input: &data,
            result,
        })
    } else {
        render_check(&result)
    };
    Outcome::ok(text, pass)
}

#[derive(Serialize)]
struct ThreefoldOutput<'a> {
    input: &'a ThreefoldChernData,
    #[serde(flatten)]
    check: ThreefoldCheck,
}

fn cmd_chern_threefold(path: &Path, json: bool) -> Outcome {
    let data: ThreefoldChernData = match read_json(path) {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    if let Err(e) = data.validate() {
        return Outcome::usage(format!("error: {e}"));
    }
    let check = threefold_identities(&data);
    let pass = check.result.pass;
    let text = if json {
        to_json(&ThreefoldOutput {
            input: &data,
            check,
        })
    } else {
        let mut out = format!("r={} c2H={} c3={}\n", data.r, data.c2_h, data.c3);
        let _ = writeln!(
            out,
            "chi(E)        {}{}",
            render(&check.chi),
            if check.chi_integral {
                ""
            } else {
                " (not integral)"
            }
        );
        let _ = writeln!(
            out,
            "chi(E(-jH))   {} (j = 1, 2, 3)",
            check.twisted_chi.join(", ")
        );
        let _ = writeln!(out, "routes agree  {}", check.routes_agree);
        out + &render_check(&check.result)
    };
    Outcome::ok(text, pass)
}

fn render_curve(v: &CurveVerdict) -> String {
    let mut out = format!(
        "genus {} degree {}: tangent bundle {}\n",
        v.genus,
        v.degree,
        if v.ulrich {
            "is Ulrich"
        } else {
            "is not Ulrich"
        }
    );
    for w in &v.certificate {
        let _ = writeln!(out, "  {} = {}  [{}]", w.group, w.value, w.relation);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn parse_products() {
        let space = parse_space("A1xA3", &[s(&["1"]), s(&["1"])]).unwrap();
        assert_eq!(space.to_string(), "A1/P{1} x A3/P{1}");
        let swapped = parse_space("A3xA1", &[s(&["1"]), s(&["1"])]).unwrap();
        assert_eq!(space, swapped);
        assert!(parse_space("A2", &[]).unwrap_err().contains("--nodes"));
        assert!(parse_space("Q7", &[s(&["1"])])
            .unwrap_err()
            .contains("`Q7`"));
        assert!(parse_space("A2", &[s(&["z"])]).unwrap_err().contains("`z`"));
        assert!(parse_space("A2", &[s(&["3"])]).is_err());
    }

    #[test]
    fn report_examples() {
        let gr = space_report(&parse_space("A4", &[s(&["2"])]).unwrap()).unwrap();
        assert_eq!(gr.invariants.dimension, 6);
        assert_eq!(gr.invariants.j_values(), vec![5]);
        assert_eq!(gr.model, Model::Gr25);
        assert!(gr
            .obstructions
            .iter()
            .any(|o| o.contains("not a multiple of 5")));
        let e8 = space_report(&parse_space("E8", &[s(&["4"])]).unwrap()).unwrap();
        assert_eq!(e8.invariants.dimension, 106);
        let flag = space_report(&parse_space("A2", &[s(&["1", "2"])]).unwrap()).unwrap();
        assert_eq!(flag.coefficient_margin.as_deref(), Some("2/5"));
        assert!(
            space_report(&parse_space("A2", &[s(&["1"])]).unwrap())
                .unwrap()
                .candidate
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["ulrich-verify"]).code, EXIT_USAGE);
        assert_eq!(
            run(["ulrich-verify", "report", "Z3", "--nodes", "1"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(["ulrich-verify", "verify-all", "--max-rank", "17"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(["ulrich-verify", "verify-all", "--max-components", "4"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(["ulrich-verify", "curve", "--genus", "0", "--degree", "0"]).code,
            EXIT_USAGE
        );
        assert_eq!(run(["ulrich-verify", "--help"]).code, EXIT_PASS);
    }

    #[test]
    fn curve_exit_codes() {
        assert_eq!(
            run(["u", "curve", "--genus", "0", "--degree", "3"]).code,
            EXIT_PASS
        );
        let out = run(["u", "curve", "--genus", "2", "--degree", "5"]);
        assert_eq!(out.code, EXIT_FAIL);
        assert!(out.stdout.contains("= 8"));
    }
}
