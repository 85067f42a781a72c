use std::collections::BTreeMap;
use std::fmt::Write as _;

use lenkrull_core::length::{
    analyze, CyclicPiece, LengthReport, ModuleBody, ModuleDescriptor, RingDescriptor,
};
use lenkrull_core::monomial::write_monomial;
use lenkrull_core::oracles::{
    abelian_groups_of_order, check_additivity_z, check_caractl_memo, check_monomial_additivity,
    check_oracle_equivalence, check_sigmaprime_artinian_kernel, TrialReport,
};
use lenkrull_core::zmodule::{smith_normal_form, FactorBound, ZNormalForm};
use lenkrull_core::{cb_rank_local_pid, CbResult};
use rayon::prelude::*;

use crate::error::CliError;
use crate::parse::{
    local_pid_module, parse_ideal, parse_matrix, parse_module, parse_presentation_json, parse_ring,
    parse_torsion,
};
use crate::report::{error_json, error_text, report_json, report_text, Analysis, Report};
use crate::request::{Command, Output, Request, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

pub fn piece_string(ring: &RingDescriptor, p: &CyclicPiece) -> String {
    let mut gens = Vec::new();
    if p.integer_part != 0u32.into() {
        gens.push(p.integer_part.to_string());
    }
    for g in p.monomial_part.generators() {
        let mut s = String::new();
        write_monomial(&mut s, g, Some(ring.vars())).unwrap();
        gens.push(s);
    }
    if gens.is_empty() {
        gens.push("0".to_string());
    }
    format!("({})", gens.join(", "))
}

pub fn module_string(m: &ModuleDescriptor) -> String {
    match m.body() {
        ModuleBody::Pieces(pieces) => pieces
            .iter()
            .map(|p| piece_string(m.ring(), p))
            .collect::<Vec<_>>()
            .join(" (+) "),
        ModuleBody::Presentation(p) => normal_form_string(&smith_normal_form(p)),
    }
}

/// `Z^r ⊕ ⊕ Z/d_i` written as pieces over `Z`.
pub fn normal_form_string(nf: &ZNormalForm) -> String {
    let mut parts: Vec<String> = vec!["(0)".to_string(); nf.free_rank];
    parts.extend(nf.invariant_factors.iter().map(|d| format!("({d})")));
    if parts.is_empty() {
        parts.push("(1)".to_string());
    }
    parts.join(" (+) ")
}

fn describe(m: &ModuleDescriptor, r: LengthReport) -> Analysis {
    Analysis::new(m.ring().to_string(), module_string(m), r)
}

pub fn run(req: &Request, bound: FactorBound) -> Result<Report, CliError> {
    let analysis = match &req.command {
        Command::Ring { ring, ideal } => {
            let ring = parse_ring(ring, bound)?;
            let piece = match ideal {
                Some(i) => parse_ideal(&ring, i, bound)?,
                None => CyclicPiece::free(ring.n_vars()),
            };
            let m = ModuleDescriptor::quotient_ring(ring, piece, bound)?;
            describe(&m, analyze(&m, bound)?)
        }
        Command::Module { ring, module } => {
            let ring = parse_ring(ring, bound)?;
            let m = parse_module(&ring, module, bound)?;
            describe(&m, analyze(&m, bound)?)
        }
        Command::Zmodule {
            matrix,
            presentation,
        } => {
            let p = match (matrix, presentation) {
                (Some(m), _) => parse_matrix(m)?,
                (None, Some(j)) => parse_presentation_json(j)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let m = ModuleDescriptor::new(
                RingDescriptor::integers(),
                ModuleBody::Presentation(p),
                bound,
            )?;
            describe(&m, analyze(&m, bound)?)
        }
        Command::Localpid { free, torsion } => {
            let t = parse_torsion(torsion)?;
            let m = local_pid_module(*free, &t);
            let v = m.length_vector();
            let mut module = String::new();
            if m.free_rank > 0 || m.torsion.is_empty() {
                write!(module, "A^{}", m.free_rank).unwrap();
            }
            for (i, n) in &m.torsion {
                if !module.is_empty() {
                    module.push_str(" (+) ");
                }
                write!(module, "M_{i}^{n}").unwrap();
            }
            Analysis {
                ring: "local PID".to_string(),
                module,
                length: v.length(),
                reduced_length: v.reduced_length(),
                cb_rank: CbResult::Exact(cb_rank_local_pid(&m)),
                dimension: v.krull_dimension().ok(),
                length_vector: v,
            }
        }
        Command::Verify {
            suite,
            trials,
            seed,
        } => return Ok(Report::Verification(verify(*suite, *trials, *seed))),
    };
    Ok(Report::Analysis(analysis))
}

/// Every abelian group of order ≤ 100 and every group of order `p^a`, `p ∈ {2, 3}`, `a ≤ 4`.
pub fn caractl_suite() -> TrialReport {
    let mut report = TrialReport {
        suite: "caractl",
        ..Default::default()
    };
    let mut memo = BTreeMap::new();
    let orders = (1..=100u64).chain(
        [2u64, 3]
            .into_iter()
            .flat_map(|p| (0..=4).map(move |a| p.pow(a))),
    );
    for n in orders {
        for g in abelian_groups_of_order(n) {
            report.trials += 1;
            report.checks += 1;
            match check_caractl_memo(&g, &mut memo) {
                Ok(true) => {}
                Ok(false) => report.failures.push(format!("caractl fails for {g}")),
                Err(e) => report.failures.push(format!("{g}: {e}")),
            }
        }
    }
    report
}

pub fn verify(suite: Suite, trials: u64, seed: u64) -> Vec<TrialReport> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Caractl,
            Suite::Additivity,
            Suite::Sigmaprime,
            Suite::OracleEquivalence,
            Suite::MonomialAdditivity,
        ],
        one => vec![one],
    };
    suites
        .into_par_iter()
        .map(|s| match s {
            Suite::Caractl => caractl_suite(),
            Suite::Additivity => check_additivity_z(trials, seed),
            Suite::Sigmaprime => check_sigmaprime_artinian_kernel(trials, seed),
            Suite::OracleEquivalence => check_oracle_equivalence(trials, seed),
            Suite::MonomialAdditivity => check_monomial_additivity(trials, seed),
            Suite::All => unreachable!(),
        })
        .collect()
}

/// Rendered output of one request and its exit code.
pub fn render(req: &Request, bound: FactorBound) -> (String, i32) {
    match run(req, bound) {
        Ok(report) => {
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            };
            let text = match req.output {
                Output::Json => format!("{}\n", report_json(&report)),
                Output::Text => report_text(&report),
            };
            (text, code)
        }
        Err(e) => (render_error(&e, Some(req), req.output), EXIT_INPUT),
    }
}

pub fn render_error(e: &CliError, req: Option<&Request>, output: Output) -> String {
    match output {
        Output::Json => format!("{}\n", error_json(e)),
        Output::Text => error_text(e, req),
    }
}

/// Evaluates the non-comment lines of a batch file concurrently. Results come back in input
/// order; `output` applies to lines that do not choose a format themselves.
pub fn run_batch(contents: &str, output: Output, bound: FactorBound) -> (Vec<String>, i32) {
    let lines: Vec<(usize, &str)> = contents
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(String, i32)> = lines
        .par_iter()
        .map(|&(number, line)| {
            let line_has_output = shlex::split(line).is_some_and(|w| {
                w.iter()
                    .any(|a| a == "--output" || a.starts_with("--output="))
            });
            match Request::from_line(line) {
                Ok(mut req) => {
                    if !line_has_output {
                        req.output = output;
                    }
                    render(&req, bound)
                }
                Err(mut e) => {
                    e.message = format!("line {number}: {}", e.message);
                    (render_error(&e, None, output), EXIT_INPUT)
                }
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(EXIT_OK);
    (results.into_iter().map(|r| r.0).collect(), code)
}

/// `LENKRULL_FACTOR_BOUND`, when set, replaces the default trial-division bound.
pub fn factor_bound_from_env(value: Option<&str>) -> Result<FactorBound, CliError> {
    match value {
        None => Ok(FactorBound::default()),
        Some(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b >= 2)
            .map(FactorBound)
            .ok_or_else(|| {
                CliError::new(
                    crate::error::ErrorCode::Syntax,
                    format!("LENKRULL_FACTOR_BOUND must be an integer ≥ 2, got `{v}`"),
                )
            }),
    }
}
