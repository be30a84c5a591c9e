//! Timing harness: runs every applicable engine on each suite fixture and
//! reports wall times. Values must agree across engines; times carry no
//! assertions.

use std::time::Instant;

use serde::Serialize;

use crate::error::CliError;
use crate::files::SuiteFile;
use crate::job::{
    applicable_engines, consensus_value, resolve, single_signature, Approach, JobSpec,
};

#[derive(Clone, Debug, Serialize)]
pub struct BenchEntry {
    pub approach: Approach,
    pub value: i64,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub n: u64,
    pub value: i64,
    pub engines: Vec<BenchEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Runs the whole suite. Every fixture must reach consensus across its
/// applicable engines; a disagreement or an engine failure aborts the run.
pub fn run_suite(suite: &SuiteFile) -> Result<BenchReport, CliError> {
    let mut rows = Vec::with_capacity(suite.fixtures.len());
    for fixture in &suite.fixtures {
        let spec = JobSpec::new(fixture.input()?, Some(fixture.n))?;
        let resolved = resolve(&spec)?;
        let mut engines = Vec::new();
        for approach in applicable_engines(&resolved.input) {
            let started = Instant::now();
            let result = single_signature(&spec, approach).map_err(|error| {
                CliError::Input(format!(
                    "fixture '{}', engine {approach}: {error}",
                    fixture.name
                ))
            })?;
            engines.push(BenchEntry {
                approach,
                value: result.value,
                seconds: started.elapsed().as_secs_f64(),
            });
        }
        let values: Vec<(Approach, i64)> =
            engines.iter().map(|e| (e.approach, e.value)).collect();
        let value = consensus_value(&values)?;
        rows.push(BenchRow {
            name: fixture.name.clone(),
            n: spec.n,
            value,
            engines,
        });
    }
    Ok(BenchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::files::SuiteFixture;

    #[test]
    fn empty_suite_gives_empty_report() {
        let report = run_suite(&SuiteFile { fixtures: vec![] }).unwrap();
        assert!(report.rows.is_empty());
    }

    #[test]
    fn pairs_fixture_times_two_engines() {
        let suite = SuiteFile {
            fixtures: vec![SuiteFixture {
                name: "cusp".into(),
                n: 2,
                pairs: Some(vec![(3, 2)]),
                graph: None,
                sppairs: None,
                brieskorn: None,
                poly: None,
            }],
        };
        let report = run_suite(&suite).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.value, -2);
        assert_eq!(row.engines.len(), 3);
        assert!(row.engines.iter().all(|e| e.value == -2));
    }

    #[test]
    fn fixture_errors_name_the_fixture() {
        let suite = SuiteFile {
            fixtures: vec![SuiteFixture {
                name: "broken".into(),
                n: 2,
                pairs: Some(vec![(2, 4)]),
                graph: None,
                sppairs: None,
                brieskorn: None,
                poly: None,
            }],
        };
        assert!(run_suite(&suite).is_err());
    }
}
