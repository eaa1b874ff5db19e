//! The `dialup` command-line pipeline.

pub mod args;
pub mod commands;
pub mod config;

use std::fmt;
use std::path::Path;

use anyhow::Context;

pub use args::Cli;
pub use config::PipelineConfig;

/// Bad configuration, flags or missing inputs, detected before any work is done.
#[derive(Debug)]
pub struct ValidationError(pub String);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationError {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    ValidationError(msg.into()).into()
}

/// Wraps a library error, classing bad parameters as validation errors.
pub fn lib_err(e: dialup::Error) -> anyhow::Error {
    match e {
        dialup::Error::InvalidParameter(msg) => invalid(msg),
        e => e.into(),
    }
}

pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.is::<ValidationError>()) {
        EXIT_VALIDATION
    } else {
        EXIT_RUNTIME
    }
}

/// Fails with a validation error unless `path` is an existing file.
pub fn require_file(path: &Path, what: &str) -> anyhow::Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(invalid(format!("{what} {} does not exist", path.display())))
    }
}

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_lines(path: &Path) -> anyhow::Result<Vec<String>> {
    Ok(read_text(path)?.lines().map(|l| l.trim_end_matches('\r').to_string()).collect())
}

pub fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// One JSON object per line on stderr.
pub fn log_event(event: &str, fields: serde_json::Value) {
    let mut obj = serde_json::Map::new();
    obj.insert("event".into(), event.into());
    if let serde_json::Value::Object(map) = fields {
        obj.extend(map);
    }
    eprintln!("{}", serde_json::Value::Object(obj));
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(invalid("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("starting thread pool")?;
    }
    commands::dispatch(cli.command, &cfg)
}
