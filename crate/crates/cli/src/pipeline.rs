//! Manifest runner: each non-blank, non-`#` line is one `ckks` invocation
//! without the program name. Steps inherit the pipeline's `--params` unless
//! they set their own. A step without `--seed` runs with the pipeline seed
//! plus its step number minus one, so no two steps share a random stream.
//! Relative paths resolve against the manifest's directory.

use std::collections::HashSet;
use std::env;
use std::io;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{read, run, CliResult};
use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct PipelineStep {
    pub number: usize,
    pub op: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub seed: u64,
    cli: Cli,
}

#[derive(Debug, Clone)]
pub struct PipelineManifest {
    pub steps: Vec<PipelineStep>,
}

fn step_error(number: usize, op: &str, source: CliError) -> CliError {
    CliError::Step {
        step: number,
        op: op.to_string(),
        source: Box::new(source),
    }
}

fn missing(path: &Path) -> CliError {
    CliError::io(
        path,
        io::Error::new(io::ErrorKind::NotFound, "input does not exist"),
    )
}

impl PipelineManifest {
    pub fn parse(text: &str, seed: Option<u64>, params: Option<&PathBuf>) -> CliResult<Self> {
        let mut steps = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let number = steps.len() + 1;
            let mut cli =
                Cli::try_parse_from(std::iter::once("ckks").chain(line.split_whitespace()))
                    .map_err(|e| {
                        let msg = e.to_string();
                        let first = msg.lines().next().unwrap_or_default().to_string();
                        step_error(number, line, CliError::Usage(first))
                    })?;
            if matches!(cli.command, Command::Pipeline { .. }) {
                return Err(step_error(
                    number,
                    "pipeline",
                    CliError::Usage("pipelines cannot be nested".into()),
                ));
            }
            cli.seed = Some(
                cli.seed
                    .unwrap_or(seed.unwrap_or(0).wrapping_add(number as u64 - 1)),
            );
            if cli.params.is_none() {
                cli.params = params.cloned();
            }
            let mut inputs = cli.command.inputs();
            inputs.extend(cli.params.iter().cloned());
            steps.push(PipelineStep {
                number,
                op: cli.command.name().to_string(),
                inputs,
                outputs: cli.command.outputs(),
                seed: cli.seed.unwrap_or_default(),
                cli,
            });
        }
        Ok(Self { steps })
    }

    /// Every input must exist already or be written by an earlier step.
    /// Paths are checked relative to `base`.
    pub fn check(&self, base: &Path) -> CliResult {
        let mut produced: HashSet<PathBuf> = HashSet::new();
        for step in &self.steps {
            for input in &step.inputs {
                if !produced.contains(input) && !base.join(input).exists() {
                    return Err(step_error(step.number, &step.op, missing(input)));
                }
            }
            produced.extend(step.outputs.iter().cloned());
        }
        Ok(())
    }

    pub fn execute(&self) -> CliResult {
        for step in &self.steps {
            if let Some(input) = step.inputs.iter().find(|p| !p.exists()) {
                return Err(step_error(step.number, &step.op, missing(input)));
            }
            run(step.cli.clone()).map_err(|e| step_error(step.number, &step.op, e))?;
            println!("step {}: {} seed={} ok", step.number, step.op, step.seed);
        }
        Ok(())
    }
}

pub fn run_manifest(manifest: &Path, seed: Option<u64>, params: Option<PathBuf>) -> CliResult {
    let text = read(manifest)?;
    let cwd = env::current_dir().map_err(|e| CliError::io(".", e))?;
    let params = params.map(|p| if p.is_absolute() { p } else { cwd.join(p) });
    let plan = PipelineManifest::parse(&text, seed, params.as_ref())?;
    let base = manifest
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map_or_else(|| cwd.clone(), |p| cwd.join(p));
    plan.check(&base)?;
    env::set_current_dir(&base).map_err(|e| CliError::io(&base, e))?;
    let result = plan.execute();
    env::set_current_dir(&cwd).map_err(|e| CliError::io(&cwd, e))?;
    result
}
