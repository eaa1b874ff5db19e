//! Declarative pipeline configuration. Every field is optional in the file; command-line
//! flags take precedence over the file, and the file over the built-in defaults.

use std::path::{Path, PathBuf};

use anyhow::Context;
use dialup::dtm::SwapMode;
use dialup::langgen::DEFAULT_CLOUD_RADII;
use dialup::noisers::{NoiseDials, RandaugDials};
use dialup::resources::{SuffixParams, DEFAULT_CLOSED_POS};
use serde::Deserialize;

use crate::invalid;

/// Seed used when neither the config nor the command line sets one.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub threads: Option<usize>,
    pub resources: ResourceConfig,
    pub noise: NoiseConfig,
    pub lexicon: LexiconConfig,
    pub dtm: DtmConfig,
    pub chrf: ChrfConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResourceConfig {
    /// Directory holding the built resource files.
    pub dir: Option<PathBuf>,
    /// Name of a shipped grapheme table; ignored when `g2p` is set.
    pub script: String,
    pub g2p: Option<PathBuf>,
    pub inventory: Option<PathBuf>,
    pub conllu: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub closed_pos: Vec<String>,
    pub ngram_order: usize,
    pub suffix_max_len: usize,
    pub suffix_min_type_freq: u64,
    pub suffix_top_k: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    pub dials: [f64; 4],
    pub cloud_max: [f64; 4],
    pub radii: usize,
    pub langs_per_radius: usize,
    pub randaug: [f64; 2],
    pub randaug_max: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LexiconConfig {
    pub iterations: usize,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DtmConfig {
    pub lexicon: Option<PathBuf>,
    pub crl_funcs: Option<PathBuf>,
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChrfConfig {
    pub max_n: usize,
    pub beta: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: DEFAULT_SEED,
            threads: None,
            resources: ResourceConfig::default(),
            noise: NoiseConfig::default(),
            lexicon: LexiconConfig::default(),
            dtm: DtmConfig::default(),
            chrf: ChrfConfig::default(),
        }
    }
}

impl Default for ResourceConfig {
    fn default() -> Self {
        let suffix = SuffixParams::default();
        ResourceConfig {
            dir: None,
            script: "latin".into(),
            g2p: None,
            inventory: None,
            conllu: None,
            corpus: None,
            closed_pos: DEFAULT_CLOSED_POS.iter().map(|s| s.to_string()).collect(),
            ngram_order: 3,
            suffix_max_len: suffix.max_len,
            suffix_min_type_freq: suffix.min_type_freq,
            suffix_top_k: suffix.top_k,
        }
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        let (shell, max) = (RandaugDials::SHELL_DEFAULT, RandaugDials::CLOUD_MAX_DEFAULT);
        NoiseConfig {
            dials: NoiseDials::SHELL_DEFAULT.as_array(),
            cloud_max: NoiseDials::CLOUD_MAX_DEFAULT.as_array(),
            radii: DEFAULT_CLOUD_RADII,
            langs_per_radius: 1,
            randaug: [shell.char_rate, shell.word_rate],
            randaug_max: [max.char_rate, max.word_rate],
        }
    }
}

impl Default for LexiconConfig {
    fn default() -> Self {
        LexiconConfig { iterations: 5, threshold: 0.1 }
    }
}

impl Default for DtmConfig {
    fn default() -> Self {
        DtmConfig { lexicon: None, crl_funcs: None, mode: "func".into() }
    }
}

impl Default for ChrfConfig {
    fn default() -> Self {
        ChrfConfig { max_n: 6, beta: 2.0 }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        if !path.is_file() {
            return Err(invalid(format!("config file {} does not exist", path.display())));
        }
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: PipelineConfig =
            toml::from_str(&text).map_err(|e| invalid(format!("config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.shell_dials()?;
        self.cloud_max()?;
        self.randaug_shell()?;
        self.randaug_max()?;
        self.swap_mode()?;
        if self.noise.radii == 0 || self.noise.langs_per_radius == 0 {
            return Err(invalid("noise.radii and noise.langs_per_radius must be at least 1"));
        }
        if self.resources.ngram_order < 2 {
            return Err(invalid("resources.ngram_order must be at least 2"));
        }
        Ok(())
    }

    pub fn shell_dials(&self) -> anyhow::Result<NoiseDials> {
        NoiseDials::from_array(self.noise.dials).map_err(|e| invalid(format!("noise.dials: {e}")))
    }

    pub fn cloud_max(&self) -> anyhow::Result<NoiseDials> {
        NoiseDials::from_array(self.noise.cloud_max).map_err(|e| invalid(format!("noise.cloud_max: {e}")))
    }

    pub fn randaug_shell(&self) -> anyhow::Result<RandaugDials> {
        let [c, w] = self.noise.randaug;
        RandaugDials::new(c, w).map_err(|e| invalid(format!("noise.randaug: {e}")))
    }

    pub fn randaug_max(&self) -> anyhow::Result<RandaugDials> {
        let [c, w] = self.noise.randaug_max;
        RandaugDials::new(c, w).map_err(|e| invalid(format!("noise.randaug_max: {e}")))
    }

    pub fn swap_mode(&self) -> anyhow::Result<SwapMode> {
        self.dtm.mode.parse().map_err(|e| invalid(format!("dtm.mode: {e}")))
    }

    pub fn suffix_params(&self) -> SuffixParams {
        SuffixParams {
            max_len: self.resources.suffix_max_len,
            min_type_freq: self.resources.suffix_min_type_freq,
            top_k: self.resources.suffix_top_k,
        }
    }
}
