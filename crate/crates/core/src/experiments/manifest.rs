use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

use super::config::ExperimentConfig;

#[derive(Clone, Debug, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Everything needed to regenerate a run directory.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub experiment: String,
    pub tool_version: String,
    pub master_seed: u64,
    pub config: ExperimentConfig,
    /// Replication seeds keyed by the label they were derived under.
    pub seeds: BTreeMap<String, Vec<u64>>,
    pub stages: Vec<StageTiming>,
    /// Paths relative to the run directory.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        Self {
            experiment: experiment.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            master_seed: config.master_seed,
            config: config.clone(),
            seeds: BTreeMap::new(),
            stages: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn record_seeds(&mut self, label: impl Into<String>, seeds: &[u64]) {
        self.seeds.insert(label.into(), seeds.to_vec());
    }

    /// Runs `work` and records its wall-clock time under `stage`.
    pub fn stage<R>(&mut self, stage: &str, work: impl FnOnce(&mut Self) -> Result<R>) -> Result<R> {
        let start = Instant::now();
        let out = work(self)?;
        self.stages.push(StageTiming {
            stage: stage.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(out)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(dir.join("manifest.json"), text + "\n")?;
        Ok(())
    }
}
