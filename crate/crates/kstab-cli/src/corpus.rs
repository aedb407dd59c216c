//! The bundled regression corpus: problem files with frozen reports.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::compute::{compute, settings, Overrides};
use crate::problem::{parse_problem, ProblemSpec};
use crate::report::Report;

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub spec: ProblemSpec,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub report: Report,
    pub matches: Option<bool>,
}

/// Fixtures under `dir/problems`, sorted by file name.
pub fn load(dir: &Path) -> anyhow::Result<Vec<Fixture>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir.join("problems"))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let spec = parse_problem(&fs::read_to_string(&p)?).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?;
            Ok(Fixture { name, spec })
        })
        .collect()
}

pub fn expected_path(dir: &Path, name: &str) -> PathBuf {
    dir.join("expected").join(format!("{name}.json"))
}

/// Runs every fixture in parallel and compares against the frozen report.
/// With `update`, frozen reports are rewritten instead.
pub fn run(dir: &Path, k_cap: u64, update: bool) -> anyhow::Result<Vec<Outcome>> {
    let fixtures = load(dir)?;
    let outcomes: Vec<Outcome> = fixtures
        .par_iter()
        .map(|f| {
            let report = compute(&f.spec, &settings(&f.spec, &Overrides::default(), k_cap));
            let expected = fs::read_to_string(expected_path(dir, &f.name)).ok();
            let matches = expected.map(|e| e == report.canonical_json());
            Outcome { name: f.name.clone(), report, matches }
        })
        .collect();
    if update {
        fs::create_dir_all(dir.join("expected"))?;
        for o in &outcomes {
            fs::write(expected_path(dir, &o.name), o.report.canonical_json())?;
        }
    }
    Ok(outcomes)
}
