use std::fmt::Write as _;
use std::path::Path;

use dialup::langgen::{make_cloud_corpus, make_randaug_corpus, make_shell_corpus, run_theta_sweep, Bitext, NoisedBitext, RadiusSchedule};
use dialup::metrics::{char_edit_distance, corpus_chrf, noise_rate_report, ChrfParams};
use dialup::noisers::{sample_language, Dimension, Randaug, Resources};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{load_resources, parse_dials, parse_floats, parse_randaug};
use crate::args::{NoiseArgs, NoiseCmd, SampleArgs, SweepArgs};
use crate::config::PipelineConfig;
use crate::{invalid, lib_err, log_event, read_text, require_file, write_text};

pub const CORPUS_FILE: &str = "corpus.tsv";
pub const METADATA_FILE: &str = "metadata.json";
pub const REPORT_FILE: &str = "noise_report.tsv";

/// Sidecar describing how a noised corpus was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseMetadata {
    pub mode: String,
    pub seed: u64,
    pub lines: usize,
    pub chunks: Vec<ChunkMetadata>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChunkMetadata {
    pub radius: usize,
    /// Language index within the radius.
    pub index: usize,
    pub start: usize,
    pub end: usize,
    /// `[p, m, f, c]` for languages, `[char, word]` for randaug.
    pub dials: Vec<f64>,
    /// Language file relative to the output directory.
    pub language: Option<String>,
}

pub fn sample(a: SampleArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let dials = match &a.dials {
        Some(s) => parse_dials(s, "--dials")?,
        None => cfg.shell_dials()?,
    };
    let res = load_resources(&a.res, cfg)?;
    let lang = sample_language(dials, &res, cfg.seed).map_err(lib_err)?;
    write_text(&a.out, &lang.to_text())?;
    log_event(
        "lang.sample",
        json!({
            "seed": cfg.seed,
            "phonemes": lang.phoneme_map().len(),
            "suffixes": lang.suffix_map().len(),
            "function_words": lang.function_word_map().len(),
        }),
    );
    Ok(())
}

fn load_bitext(path: &Path) -> anyhow::Result<Bitext> {
    require_file(path, "bitext")?;
    let bitext = Bitext::parse_tsv(&read_text(path)?).map_err(|e| anyhow::Error::from(e).context(path.display().to_string()))?;
    if bitext.is_empty() {
        return Err(anyhow::Error::from(dialup::Error::EmptyBitext).context(path.display().to_string()));
    }
    Ok(bitext)
}

pub fn run(cmd: NoiseCmd, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (mode, a) = match cmd {
        NoiseCmd::Shell(a) => ("shell", a),
        NoiseCmd::Cloud(a) => ("cloud", a),
        NoiseCmd::RandaugShell(a) => ("randaug-shell", a),
        NoiseCmd::RandaugCloud(a) => ("randaug-cloud", a),
    };
    let radii = a.radii.unwrap_or(cfg.noise.radii);
    let langs_per_radius = a.langs_per_radius.unwrap_or(cfg.noise.langs_per_radius);
    if radii == 0 || langs_per_radius == 0 {
        return Err(invalid("--radii and --langs-per-radius must be at least 1"));
    }
    // validate every input before loading anything large
    let bitext = load_bitext(&a.bitext)?;
    let res = load_resources(&a.res, cfg)?;
    match mode {
        "shell" | "cloud" => noise_languages(mode, &a, &bitext, &res, radii, langs_per_radius, cfg),
        _ => noise_randaug(mode, &a, &bitext, &res, radii, cfg),
    }
}

fn noise_languages(
    mode: &str,
    a: &NoiseArgs,
    bitext: &Bitext,
    res: &Resources,
    radii: usize,
    langs_per_radius: usize,
    cfg: &PipelineConfig,
) -> anyhow::Result<()> {
    let noised = if mode == "shell" {
        let dials = match &a.dials {
            Some(s) => parse_dials(s, "--dials")?,
            None => cfg.shell_dials()?,
        };
        make_shell_corpus(bitext, dials, res, cfg.seed).map_err(lib_err)?
    } else {
        let max = match &a.max {
            Some(s) => parse_dials(s, "--max")?,
            None => cfg.cloud_max()?,
        };
        let sched = RadiusSchedule::Cloud { radii, max, langs_per_radius };
        make_cloud_corpus(bitext, &sched, res, cfg.seed).map_err(lib_err)?
    };

    let mut chunks = Vec::new();
    let mut index = 0;
    for (i, chunk) in noised.chunks.iter().enumerate() {
        index = if i > 0 && noised.chunks[i - 1].radius == chunk.radius { index + 1 } else { 0 };
        let name = format!("languages/r{:02}-{}.lang", chunk.radius, index);
        write_text(&a.out.join(&name), &chunk.language.to_text())?;
        chunks.push(ChunkMetadata {
            radius: chunk.radius,
            index,
            start: chunk.lines.start,
            end: chunk.lines.end,
            dials: chunk.dials.as_array().to_vec(),
            language: Some(name),
        });
    }
    let meta = NoiseMetadata { mode: mode.to_string(), seed: cfg.seed, lines: bitext.len(), chunks };
    let report = chunked_noise_report(bitext, &noised, &meta, res)?;
    write_outputs(&a.out, &noised.bitext, &meta)?;
    write_text(&a.out.join(REPORT_FILE), &report)?;
    log_event("noise", json!({ "mode": mode, "seed": cfg.seed, "lines": bitext.len(), "languages": meta.chunks.len() }));
    Ok(())
}

fn noise_randaug(mode: &str, a: &NoiseArgs, bitext: &Bitext, res: &Resources, radii: usize, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (dials, radii) = match (mode, &a.randaug) {
        (_, Some(s)) => (parse_randaug(s, "--randaug")?, if mode == "randaug-shell" { 1 } else { radii }),
        ("randaug-shell", None) => (cfg.randaug_shell()?, 1),
        _ => (cfg.randaug_max()?, radii),
    };
    let noiser = Randaug::new(dials, res.vocab.alphabet(), &res.vocab).map_err(lib_err)?;
    let noised = make_randaug_corpus(bitext, &noiser, dials, radii, cfg.seed).map_err(lib_err)?;
    let chunks = noised
        .chunks
        .iter()
        .map(|c| ChunkMetadata {
            radius: c.radius,
            index: 0,
            start: c.lines.start,
            end: c.lines.end,
            dials: vec![c.dials.char_rate, c.dials.word_rate],
            language: None,
        })
        .collect();
    let meta = NoiseMetadata { mode: mode.to_string(), seed: cfg.seed, lines: bitext.len(), chunks };
    write_outputs(&a.out, &noised.bitext, &meta)?;
    log_event("noise", json!({ "mode": mode, "seed": cfg.seed, "lines": bitext.len() }));
    Ok(())
}

fn write_outputs(out: &Path, bitext: &Bitext, meta: &NoiseMetadata) -> anyhow::Result<()> {
    write_text(&out.join(CORPUS_FILE), &bitext.to_tsv())?;
    write_text(&out.join(METADATA_FILE), &(serde_json::to_string_pretty(meta)? + "\n"))
}

fn chunked_noise_report(original: &Bitext, noised: &NoisedBitext, meta: &NoiseMetadata, res: &Resources) -> anyhow::Result<String> {
    let orig: Vec<&str> = original.sources().collect();
    let new: Vec<&str> = noised.bitext.sources().collect();
    let langs: Vec<_> = noised.chunks.iter().map(|c| &c.language).collect();
    report_rows(&orig, &new, meta, |i| Ok(langs[i].clone()), res)
}

/// Noise report with one block of rows per chunk, prefixed by radius and language index.
pub(crate) fn report_rows(
    original: &[&str],
    noised: &[&str],
    meta: &NoiseMetadata,
    mut language: impl FnMut(usize) -> anyhow::Result<dialup::noisers::ArtificialLanguage>,
    res: &Resources,
) -> anyhow::Result<String> {
    if original.len() != noised.len() || original.len() != meta.lines {
        return Err(dialup::Error::LengthMismatch { left: original.len(), right: noised.len().max(meta.lines) }.into());
    }
    let mut s = String::from("radius\tindex\tdimension\tuniverse\tchanged\tobserved\tconfigured\n");
    for (i, chunk) in meta.chunks.iter().enumerate() {
        if chunk.start > chunk.end || chunk.end > original.len() {
            return Err(anyhow::anyhow!("chunk {i} covers lines {}..{} of {}", chunk.start, chunk.end, original.len()));
        }
        let lang = language(i)?;
        let range = chunk.start..chunk.end;
        let report = noise_rate_report(&original[range.clone()], &noised[range], &lang, res)?;
        for line in report.to_tsv().lines().skip(1) {
            let _ = writeln!(s, "{}\t{}\t{line}", chunk.radius, chunk.index);
        }
    }
    Ok(s)
}

pub fn sweep(a: SweepArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let dim: Dimension = a.dim.parse().map_err(|_| invalid(format!("--dim must be p, m or f, got {:?}", a.dim)))?;
    if dim == Dimension::ContentWord {
        return Err(invalid("--dim must be p, m or f"));
    }
    let grid = parse_floats(&a.grid, "--grid")?;
    if grid.is_empty() || grid.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(invalid("--grid values must lie in [0, 1]"));
    }
    let bitext = load_bitext(&a.bitext)?;
    let res = load_resources(&a.res, cfg)?;
    let runs = run_theta_sweep(&bitext, dim, &grid, &res, cfg.seed).map_err(lib_err)?;
    let original: Vec<&str> = bitext.sources().collect();
    let mut summary = String::from("theta\tmean_edit_distance\tchrf\n");
    for (theta, run) in &runs {
        let noised: Vec<&str> = run.bitext.sources().collect();
        let dist: usize = original.iter().zip(&noised).map(|(a, b)| char_edit_distance(a, b)).sum();
        let chrf = corpus_chrf(&noised, &original, ChrfParams::default()).unwrap_or(0.0);
        let _ = writeln!(summary, "{theta:.4}\t{:.4}\t{chrf:.2}", dist as f64 / original.len() as f64);
        write_text(&a.out.join(format!("{}-{theta:.4}.tsv", dim.short())), &run.bitext.to_tsv())?;
        write_text(&a.out.join(format!("{}-{theta:.4}.lang", dim.short())), &run.chunks[0].language.to_text())?;
    }
    write_text(&a.out.join("sweep.tsv"), &summary)?;
    print!("{summary}");
    log_event("sweep", json!({ "dim": dim.short(), "points": grid.len(), "seed": cfg.seed }));
    Ok(())
}
