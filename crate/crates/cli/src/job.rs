//! Engine routing, the parallel race runner, and the verification harness.
//!
//! A [`JobSpec`] is one signature computation: a suspension exponent and
//! exactly one description of the curve. [`race_signature`] launches every
//! applicable engine on worker threads and returns the first result,
//! cancelling the rest through a shared token. [`verify_signature`] runs
//! them all to completion and demands consensus.

use std::fmt;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use serde::Serialize;
use sigsurf_core::{
    branch_expansion, brieskorn_curve_spectral_pairs, brieskorn_signature_cancellable,
    combine_eta, eta_spectral_cancellable, signature_puiseux_cancellable, BivariatePoly,
    BrieskornExponents, CancelToken, PuiseuxPairs, Rational, ResolutionGraph, SpectralPairs,
};

use crate::error::CliError;

/// One curve description, ready to route to engines.
#[derive(Clone, Debug)]
pub enum JobInput {
    Pairs(PuiseuxPairs),
    Graph(ResolutionGraph),
    Spectral(SpectralPairs),
    Brieskorn(BrieskornExponents),
    Poly(BivariatePoly),
}

/// The engine that produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Puiseux,
    Resolution,
    Spectral,
    Brieskorn,
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Approach::Puiseux => "puiseux",
            Approach::Resolution => "resolution",
            Approach::Spectral => "spectral",
            Approach::Brieskorn => "brieskorn",
        };
        f.write_str(name)
    }
}

/// One signature computation.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub input: JobInput,
    pub n: u64,
}

impl JobSpec {
    /// Pairs an input with its suspension exponent. For a Brieskorn triple
    /// the exponent is `c3`; an explicit `n` must agree with it. Every
    /// other input requires an explicit `n >= 2`.
    pub fn new(input: JobInput, n: Option<u64>) -> Result<Self, CliError> {
        let n = match (&input, n) {
            (JobInput::Brieskorn(c), None) => c.c3(),
            (JobInput::Brieskorn(c), Some(n)) if n != c.c3() => {
                return Err(CliError::Input(format!(
                    "-N {n} disagrees with the z exponent C3 = {}",
                    c.c3()
                )));
            }
            (_, Some(n)) => n,
            (_, None) => {
                return Err(CliError::Input("-N is required for this input".into()));
            }
        };
        if n < 2 {
            return Err(CliError::Core(sigsurf_core::Error::SuspensionTooSmall(n)));
        }
        Ok(JobSpec { input, n })
    }
}

/// A job with polynomial input replaced by the expanded Puiseux pairs,
/// plus provenance notes collected along the way.
#[derive(Clone, Debug)]
pub struct ResolvedJob {
    pub input: JobInput,
    pub n: u64,
    pub notes: Vec<String>,
}

/// Preprocesses a job: expands polynomial input into Puiseux pairs and
/// attaches provenance notes. Engine routing happens on the result.
pub fn resolve(spec: &JobSpec) -> Result<ResolvedJob, CliError> {
    let mut notes = Vec::new();
    let input = match &spec.input {
        JobInput::Poly(g) => {
            let expansion = branch_expansion(g)?;
            if expansion.pairs().is_empty() {
                return Err(CliError::Core(sigsurf_core::Error::SmoothBranch));
            }
            notes.push(format!(
                "polynomial expanded to Puiseux pairs {} with x order {}",
                expansion.pairs(),
                expansion.x_order()
            ));
            if !expansion.is_exact() {
                notes.push("parametrization truncated past the last characteristic term".into());
            }
            JobInput::Pairs(expansion.pairs().clone())
        }
        other => other.clone(),
    };
    if let JobInput::Spectral(sp) = &input {
        if sp.has_weight_two() {
            notes.push("unverified orientation for weight-2 term".into());
        }
    }
    Ok(ResolvedJob {
        input,
        n: spec.n,
        notes,
    })
}

/// When a Brieskorn triple describes a suspension of a plane branch, the
/// curve part `x^c1 + y^c2` as a Puiseux pair.
fn brieskorn_curve_pair(c: &BrieskornExponents) -> Option<(u64, u64)> {
    let (lo, hi) = (c.c1().min(c.c2()), c.c1().max(c.c2()));
    if lo >= 2 && hi > lo && sigsurf_core::algebra::gcd(lo, hi).ok()? == 1 {
        Some((hi, lo))
    } else {
        None
    }
}

/// Engines able to handle a resolved input, in canonical order.
pub fn applicable_engines(input: &JobInput) -> Vec<Approach> {
    match input {
        JobInput::Pairs(pairs) => {
            let mut engines = vec![Approach::Puiseux, Approach::Resolution];
            if pairs.len() == 1 {
                engines.push(Approach::Spectral);
            }
            engines
        }
        JobInput::Graph(_) => vec![Approach::Resolution],
        JobInput::Spectral(_) => vec![Approach::Spectral],
        JobInput::Brieskorn(c) => {
            let mut engines = vec![Approach::Brieskorn];
            if brieskorn_curve_pair(c).is_some() {
                engines.push(Approach::Puiseux);
                engines.push(Approach::Spectral);
            }
            engines
        }
        JobInput::Poly(_) => Vec::new(),
    }
}

struct EngineOutput {
    value: i64,
    eta_n: Option<Rational>,
    eta_1: Option<Rational>,
}

fn pairs_for(input: &JobInput) -> Result<PuiseuxPairs, sigsurf_core::Error> {
    match input {
        JobInput::Pairs(p) => Ok(p.clone()),
        JobInput::Brieskorn(c) => {
            let (m, n) = brieskorn_curve_pair(c).expect("routing checked applicability");
            Ok(PuiseuxPairs::new(vec![(m, n)])?)
        }
        _ => unreachable!("routing never sends this input to the Puiseux engine"),
    }
}

fn spectral_for(input: &JobInput) -> Result<SpectralPairs, sigsurf_core::Error> {
    match input {
        JobInput::Spectral(sp) => Ok(sp.clone()),
        JobInput::Pairs(p) => {
            let &(m, n) = p.pairs().first().expect("routing requires one pair");
            brieskorn_curve_spectral_pairs(m, n)
        }
        JobInput::Brieskorn(c) => {
            let (m, n) = brieskorn_curve_pair(c).expect("routing checked applicability");
            brieskorn_curve_spectral_pairs(m, n)
        }
        _ => unreachable!("routing never sends this input to the spectral engine"),
    }
}

fn run_engine(
    approach: Approach,
    input: &JobInput,
    n: u64,
    token: &CancelToken,
) -> Result<EngineOutput, sigsurf_core::Error> {
    match approach {
        Approach::Puiseux => {
            let pairs = pairs_for(input)?;
            let value = signature_puiseux_cancellable(&pairs, n, token)?;
            Ok(EngineOutput {
                value,
                eta_n: None,
                eta_1: None,
            })
        }
        Approach::Resolution => {
            let graph = match input {
                JobInput::Graph(g) => g.clone(),
                JobInput::Pairs(p) => sigsurf_core::curve::pairs_to_resolution_graph(p)?,
                _ => unreachable!("routing never sends this input to the resolution engine"),
            };
            let (eta_n, eta_1) = sigsurf_core::resolution::eta_pair_cancellable(&graph, n, token)?;
            let value = combine_eta(n, &eta_n, &eta_1)?;
            Ok(EngineOutput {
                value,
                eta_n: Some(eta_n),
                eta_1: Some(eta_1),
            })
        }
        Approach::Spectral => {
            let sp = spectral_for(input)?;
            let eta_n = eta_spectral_cancellable(&sp, n, token)?;
            let eta_1 = eta_spectral_cancellable(&sp, 1, token)?;
            let value = combine_eta(n, &eta_n, &eta_1)?;
            Ok(EngineOutput {
                value,
                eta_n: Some(eta_n),
                eta_1: Some(eta_1),
            })
        }
        Approach::Brieskorn => {
            let JobInput::Brieskorn(c) = input else {
                unreachable!("routing never sends this input to the Brieskorn engine");
            };
            let value = brieskorn_signature_cancellable(c, token)?;
            Ok(EngineOutput {
                value,
                eta_n: None,
                eta_1: None,
            })
        }
    }
}

/// The outcome of one signature computation.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureResult {
    pub value: i64,
    pub approach: Approach,
    pub n: u64,
    pub eta_n: Option<String>,
    pub eta_1: Option<String>,
    pub wall_time_seconds: f64,
    pub notes: Vec<String>,
}

impl SignatureResult {
    fn from_output(
        approach: Approach,
        n: u64,
        output: EngineOutput,
        wall: Duration,
        notes: Vec<String>,
    ) -> Self {
        SignatureResult {
            value: output.value,
            approach,
            n,
            eta_n: output.eta_n.map(|r| r.to_string()),
            eta_1: output.eta_1.map(|r| r.to_string()),
            wall_time_seconds: wall.as_secs_f64(),
            notes,
        }
    }
}

/// Timing diagnostics of one race.
#[derive(Clone, Debug)]
pub struct RaceDiag {
    pub engines: Vec<Approach>,
    pub winner: Approach,
    /// Time from the cancellation signal until every losing engine had
    /// terminated.
    pub cancel_to_drain: Duration,
}

/// Runs one engine, chosen by `approach`, with timing and provenance.
pub fn single_signature(spec: &JobSpec, approach: Approach) -> Result<SignatureResult, CliError> {
    let resolved = resolve(spec)?;
    if !applicable_engines(&resolved.input).contains(&approach) {
        return Err(CliError::NoApplicableEngine);
    }
    let started = Instant::now();
    let output = run_engine(approach, &resolved.input, resolved.n, &CancelToken::new())?;
    Ok(SignatureResult::from_output(
        approach,
        resolved.n,
        output,
        started.elapsed(),
        resolved.notes,
    ))
}

/// Races every applicable engine; the first success wins and the rest are
/// cancelled cooperatively.
pub fn race_signature(spec: &JobSpec) -> Result<SignatureResult, CliError> {
    race_signature_with_diag(spec).map(|(result, _)| result)
}

pub fn race_signature_with_diag(
    spec: &JobSpec,
) -> Result<(SignatureResult, RaceDiag), CliError> {
    let resolved = resolve(spec)?;
    let engines = applicable_engines(&resolved.input);
    if engines.is_empty() {
        return Err(CliError::NoApplicableEngine);
    }

    let token = CancelToken::new();
    let (tx, rx) = mpsc::channel();
    let mut winner: Option<(Approach, EngineOutput, Duration)> = None;
    let mut failures: Vec<(Approach, sigsurf_core::Error)> = Vec::new();
    let mut cancelled_at: Option<Instant> = None;

    std::thread::scope(|scope| {
        for &approach in &engines {
            let tx = tx.clone();
            let token = &token;
            let input = &resolved.input;
            let n = resolved.n;
            scope.spawn(move || {
                let started = Instant::now();
                let outcome = run_engine(approach, input, n, token);
                let _ = tx.send((approach, outcome, started.elapsed()));
            });
        }
        drop(tx);

        while let Ok((approach, outcome, wall)) = rx.recv() {
            match outcome {
                Ok(output) if winner.is_none() => {
                    token.cancel();
                    cancelled_at = Some(Instant::now());
                    winner = Some((approach, output, wall));
                }
                Ok(_) => {}
                Err(error) => failures.push((approach, error)),
            }
        }
    });
    let drained_at = Instant::now();

    match winner {
        Some((approach, output, wall)) => {
            let diag = RaceDiag {
                engines,
                winner: approach,
                cancel_to_drain: cancelled_at
                    .map(|t| drained_at.duration_since(t))
                    .unwrap_or_default(),
            };
            let result =
                SignatureResult::from_output(approach, resolved.n, output, wall, resolved.notes);
            Ok((result, diag))
        }
        None => Err(CliError::AllEnginesFailed(
            failures
                .iter()
                .map(|(approach, error)| format!("{approach}: {error}"))
                .collect::<Vec<_>>()
                .join("; "),
        )),
    }
}

/// One engine's row in a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct EngineReport {
    pub approach: Approach,
    pub value: i64,
    pub eta_n: Option<String>,
    pub eta_1: Option<String>,
    pub seconds: f64,
}

/// The full verification report: every engine, the consensus value, and
/// any engine failures.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub value: i64,
    pub n: u64,
    pub consensus: bool,
    pub engines: Vec<EngineReport>,
    pub failures: Vec<(Approach, String)>,
    pub notes: Vec<String>,
}

/// Checks that every engine reported the same value.
pub fn consensus_value(results: &[(Approach, i64)]) -> Result<i64, CliError> {
    let mut iter = results.iter();
    let &(_, first) = iter
        .next()
        .ok_or_else(|| CliError::AllEnginesFailed("no engine produced a value".into()))?;
    if results.iter().any(|&(_, value)| value != first) {
        let detail = results
            .iter()
            .map(|(approach, value)| format!("{approach} = {value}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(CliError::Consensus(detail));
    }
    Ok(first)
}

/// Runs every applicable engine to completion and requires agreement on
/// the signature.
pub fn verify_signature(spec: &JobSpec) -> Result<VerifyReport, CliError> {
    let resolved = resolve(spec)?;
    let engines = applicable_engines(&resolved.input);
    if engines.is_empty() {
        return Err(CliError::NoApplicableEngine);
    }

    let token = CancelToken::new();
    let (tx, rx) = mpsc::channel();
    let mut reports: Vec<EngineReport> = Vec::new();
    let mut failures: Vec<(Approach, String)> = Vec::new();

    std::thread::scope(|scope| {
        for &approach in &engines {
            let tx = tx.clone();
            let token = &token;
            let input = &resolved.input;
            let n = resolved.n;
            scope.spawn(move || {
                let started = Instant::now();
                let outcome = run_engine(approach, input, n, token);
                let _ = tx.send((approach, outcome, started.elapsed()));
            });
        }
        drop(tx);

        while let Ok((approach, outcome, wall)) = rx.recv() {
            match outcome {
                Ok(output) => reports.push(EngineReport {
                    approach,
                    value: output.value,
                    eta_n: output.eta_n.map(|r| r.to_string()),
                    eta_1: output.eta_1.map(|r| r.to_string()),
                    seconds: wall.as_secs_f64(),
                }),
                Err(error) => failures.push((approach, error.to_string())),
            }
        }
    });

    reports.sort_by_key(|r| r.approach);
    let values: Vec<(Approach, i64)> = reports.iter().map(|r| (r.approach, r.value)).collect();
    if values.is_empty() {
        return Err(CliError::AllEnginesFailed(
            failures
                .iter()
                .map(|(approach, error)| format!("{approach}: {error}"))
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let value = consensus_value(&values)?;

    let mut notes = resolved.notes;
    for (approach, error) in &failures {
        notes.push(format!("engine {approach} failed: {error}"));
    }
    Ok(VerifyReport {
        value,
        n: resolved.n,
        consensus: true,
        engines: reports,
        failures,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs_input(v: &[(u64, u64)]) -> JobInput {
        JobInput::Pairs(PuiseuxPairs::new(v.to_vec()).unwrap())
    }

    #[test]
    fn routing_matches_the_input_shape() {
        assert_eq!(
            applicable_engines(&pairs_input(&[(3, 2), (7, 2)])),
            vec![Approach::Puiseux, Approach::Resolution]
        );
        assert_eq!(
            applicable_engines(&pairs_input(&[(3, 2)])),
            vec![Approach::Puiseux, Approach::Resolution, Approach::Spectral]
        );
        let cusp_suspension = JobInput::Brieskorn(BrieskornExponents::new(2, 3, 5).unwrap());
        assert_eq!(
            applicable_engines(&cusp_suspension),
            vec![Approach::Brieskorn, Approach::Puiseux, Approach::Spectral]
        );
        let incoherent = JobInput::Brieskorn(BrieskornExponents::new(4, 6, 5).unwrap());
        assert_eq!(applicable_engines(&incoherent), vec![Approach::Brieskorn]);
    }

    #[test]
    fn job_spec_reconciles_brieskorn_exponents() {
        let input = JobInput::Brieskorn(BrieskornExponents::new(2, 3, 5).unwrap());
        assert_eq!(JobSpec::new(input.clone(), None).unwrap().n, 5);
        assert_eq!(JobSpec::new(input.clone(), Some(5)).unwrap().n, 5);
        assert!(matches!(
            JobSpec::new(input, Some(4)),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            JobSpec::new(pairs_input(&[(3, 2)]), None),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            JobSpec::new(pairs_input(&[(3, 2)]), Some(1)),
            Err(CliError::Core(sigsurf_core::Error::SuspensionTooSmall(1)))
        ));
    }

    #[test]
    fn race_and_verify_agree_on_the_cusp() {
        let spec = JobSpec::new(pairs_input(&[(3, 2)]), Some(2)).unwrap();
        let raced = race_signature(&spec).unwrap();
        assert_eq!(raced.value, -2);
        let report = verify_signature(&spec).unwrap();
        assert_eq!(report.value, -2);
        assert!(report.consensus);
        assert_eq!(report.engines.len(), 3);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn verify_brieskorn_runs_three_engines() {
        let input = JobInput::Brieskorn(BrieskornExponents::new(2, 3, 5).unwrap());
        let spec = JobSpec::new(input, None).unwrap();
        let report = verify_signature(&spec).unwrap();
        assert_eq!(report.value, -8);
        assert_eq!(report.engines.len(), 3);
    }

    #[test]
    fn consensus_failure_names_the_engines() {
        let err = consensus_value(&[(Approach::Puiseux, -168), (Approach::Resolution, -167)])
            .unwrap_err();
        let CliError::Consensus(detail) = err else {
            panic!("expected a consensus failure");
        };
        assert!(detail.contains("puiseux = -168"));
        assert!(detail.contains("resolution = -167"));
    }

    #[test]
    fn polynomial_input_resolves_to_pairs() {
        let g = sigsurf_core::parse_polynomial("y^2 - x^3").unwrap();
        let spec = JobSpec::new(JobInput::Poly(g), Some(2)).unwrap();
        let resolved = resolve(&spec).unwrap();
        assert!(matches!(&resolved.input, JobInput::Pairs(p) if p.pairs() == [(3, 2)]));
        assert!(!resolved.notes.is_empty());
        assert_eq!(race_signature(&spec).unwrap().value, -2);
    }

    #[test]
    fn weight_two_spectral_input_is_labeled() {
        let entries = vec![
            sigsurf_core::SpectralEntry {
                alpha: "-1/2".parse().unwrap(),
                w: 2,
                h: 1,
            },
            sigsurf_core::SpectralEntry {
                alpha: "1/2".parse().unwrap(),
                w: 2,
                h: 1,
            },
        ];
        let input = JobInput::Spectral(SpectralPairs::new(entries).unwrap());
        let spec = JobSpec::new(input, Some(2)).unwrap();
        let report = verify_signature(&spec).unwrap();
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("unverified orientation")));
    }

    #[test]
    fn smooth_polynomial_is_rejected_before_routing() {
        let g = sigsurf_core::parse_polynomial("y - x^2").unwrap();
        let spec = JobSpec::new(JobInput::Poly(g), Some(3)).unwrap();
        assert!(matches!(
            race_signature(&spec),
            Err(CliError::Core(sigsurf_core::Error::SmoothBranch))
        ));
    }
}
