//! Suite execution and the JSON report file.

use std::fmt;
use std::io::Write;
use std::path::Path;

use psmod_core::report::VerificationReport;
use psmod_core::suites::{plan, Job, PlanError, Suite};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::exit;

pub const SCHEMA_VERSION: u32 = 1;

/// Names accepted by `verify`.
pub const SUITE_NAMES: [&str; 5] = ["coxeter", "kl", "chevalley", "modules", "all"];

#[derive(Debug)]
pub enum RunError {
    UnknownSuite(String),
    Plan(PlanError),
    Pool(String),
    Io(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::UnknownSuite(s) => write!(f, "unknown suite {s:?}; expected one of {}", SUITE_NAMES.join(", ")),
            RunError::Plan(e) => write!(f, "{e}"),
            RunError::Pool(e) => write!(f, "worker pool: {e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) | RunError::Pool(_) => exit::CHECK_FAILED,
            _ => exit::CONFIG_ERROR,
        }
    }
}

/// The run parameters as written into the report. Thread count and output path are left
/// out so that reports do not depend on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub types: Vec<String>,
    pub q: Vec<u32>,
    pub char: Vec<u64>,
    pub seed: u64,
    pub allow_defining_char: bool,
    pub verification_mode: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub jobs: Vec<String>,
    pub checks: usize,
    pub failed: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub timestamp: String,
    pub config: ConfigEcho,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl ReportFile {
    pub fn exit_code(&self) -> i32 {
        if self.summary.passed {
            exit::PASS
        } else {
            exit::CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Taken from `SOURCE_DATE_EPOCH` when set, otherwise the epoch itself, so that a report
/// is a function of its configuration.
pub fn report_timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse::<i64>().ok()).unwrap_or(0);
    chrono::DateTime::from_timestamp(secs, 0).unwrap_or_default().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

pub fn suites_for(name: &str) -> Result<Vec<Suite>, RunError> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::parse(name).map(|s| vec![s]).ok_or_else(|| RunError::UnknownSuite(name.to_string()))
}

/// All jobs of the named suite, validated before anything runs.
pub fn plan_jobs(name: &str, cfg: &RunConfig) -> Result<Vec<Job>, RunError> {
    let mut jobs = Vec::new();
    for suite in suites_for(name)? {
        jobs.extend(plan(suite, &cfg.suite).map_err(RunError::Plan)?);
    }
    Ok(jobs)
}

/// Run every job on a bounded pool; `progress` sees each finished report in job order.
pub fn run_suite(
    name: &str,
    cfg: &RunConfig,
    progress: &(dyn Fn(&Job, &VerificationReport) + Sync),
) -> Result<ReportFile, RunError> {
    let jobs = plan_jobs(name, cfg)?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build().map_err(|e| RunError::Pool(e.to_string()))?;
    let reports: Vec<VerificationReport> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let r = job.run(&cfg.suite);
                progress(job, &r);
                r
            })
            .collect()
    });
    let checks = reports.iter().map(|r| r.checks.len()).sum();
    let failed = reports.iter().map(|r| r.failures().count()).sum();
    let s = &cfg.suite;
    Ok(ReportFile {
        schema_version: SCHEMA_VERSION,
        timestamp: report_timestamp(),
        config: ConfigEcho {
            suite: name.to_string(),
            types: s.types.iter().map(|t| t.to_string()).collect(),
            q: s.qs.clone(),
            char: s.chars.clone(),
            seed: s.seed,
            allow_defining_char: s.allow_defining_char,
            verification_mode: s.verification_mode,
        },
        summary: Summary { jobs: jobs.iter().map(|j| j.label()).collect(), checks, failed, passed: failed == 0 },
        reports,
    })
}

/// Write through a temporary file in the target directory, then rename over the target.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), RunError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let io = |e: std::io::Error| RunError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use psmod_core::rootsys::CartanType;

    fn small() -> RunConfig {
        let mut cfg = RunConfig::default();
        cfg.suite.types = vec![CartanType::A(2)];
        cfg
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        let e = run_suite("nope", &small(), &|_, _| {}).unwrap_err();
        assert_eq!(e.exit_code(), exit::CONFIG_ERROR);
    }

    #[test]
    fn out_of_bounds_parameters_are_rejected() {
        let mut cfg = small();
        cfg.suite.qs = vec![6];
        assert!(matches!(plan_jobs("chevalley", &cfg), Err(RunError::Plan(PlanError::NotPrimePower(6)))));
        cfg.suite.qs = vec![64];
        assert!(plan_jobs("modules", &cfg).is_err());
        cfg.suite.qs = vec![2];
        cfg.suite.chars = vec![2];
        assert!(plan_jobs("modules", &cfg).is_err());
        cfg.suite.allow_defining_char = true;
        assert!(plan_jobs("modules", &cfg).is_ok());
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let mut a = small();
        a.threads = 1;
        let mut b = small();
        b.threads = 3;
        let ra = run_suite("kl", &a, &|_, _| {}).unwrap();
        let rb = run_suite("kl", &b, &|_, _| {}).unwrap();
        assert_eq!(ra.to_json(), rb.to_json());
        assert_eq!(ra.exit_code(), exit::PASS);
        let back: ReportFile = serde_json::from_str(&ra.to_json()).unwrap();
        assert_eq!(back, ra);
    }

    #[test]
    fn atomic_write_replaces_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
