//! Config-driven experiment runners writing CSV tables, SVG figures and a
//! run manifest into one directory.

mod bounds_table;
pub mod config;
mod diagnostics_suite;
mod fig1;
mod fig2;
pub mod manifest;
mod sinr_scan;
pub mod svg;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::error::Result;

pub use config::{Experiment, ExperimentConfig, GeneratorSpec};
pub use manifest::{RunManifest, StageTiming};

/// Files and console lines produced by one run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub dir: PathBuf,
    pub outputs: Vec<String>,
    /// One human-readable line per headline result.
    pub summary: Vec<String>,
}

/// Output directory plus the manifest being assembled.
pub struct RunContext {
    pub root: PathBuf,
    pub config: ExperimentConfig,
    pub manifest: RunManifest,
    summary: Vec<String>,
}

impl RunContext {
    pub fn create(root: &Path, experiment: Experiment, config: ExperimentConfig) -> Result<Self> {
        for sub in ["patterns", "figures", "tables"] {
            fs::create_dir_all(root.join(sub))?;
        }
        Ok(Self {
            root: root.to_path_buf(),
            manifest: RunManifest::new(experiment.name(), &config),
            config,
            summary: Vec::new(),
        })
    }

    /// Writes `rel` through a buffered writer and records it as an output.
    pub fn write_file(&mut self, rel: &str, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        let path = self.root.join(rel);
        let mut out = BufWriter::new(fs::File::create(&path)?);
        fill(&mut out)?;
        out.flush()?;
        self.manifest.outputs.push(rel.to_string());
        Ok(())
    }

    pub fn write_text(&mut self, rel: &str, text: &str) -> Result<()> {
        self.write_file(rel, |w| Ok(w.write_all(text.as_bytes())?))
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn timed<R>(&mut self, stage: &str, work: impl FnOnce(&mut Self) -> Result<R>) -> Result<R> {
        let start = Instant::now();
        let out = work(self)?;
        self.manifest.stages.push(StageTiming {
            stage: stage.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(out)
    }

    fn finish(self) -> Result<RunReport> {
        self.manifest.write(&self.root)?;
        let mut outputs = self.manifest.outputs.clone();
        outputs.push("manifest.json".into());
        Ok(RunReport {
            dir: self.root,
            outputs,
            summary: self.summary,
        })
    }
}

/// Runs one experiment into `out_dir`.
pub fn run(experiment: Experiment, config: ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    let mut ctx = RunContext::create(out_dir, experiment, config)?;
    match experiment {
        Experiment::Fig1Patterns => fig1::run(&mut ctx)?,
        Experiment::Fig2GilbertScan => fig2::run(&mut ctx)?,
        Experiment::SinrGammaScan => sinr_scan::run(&mut ctx)?,
        Experiment::DiagnosticsSuite => diagnostics_suite::run(&mut ctx)?,
        Experiment::BoundsTable => bounds_table::run(&mut ctx)?,
    }
    ctx.finish()
}

pub use fig2::reference_rho;
