use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use dialup::metrics::{chrf, corpus_chrf, function_word_share, noise_rate_report, ChrfParams};
use dialup::noisers::ArtificialLanguage;

use super::noise::{report_rows, NoiseMetadata, CORPUS_FILE, METADATA_FILE};
use super::{load_resources, source_column};
use crate::args::{ChrfArgs, FuncShareArgs, MetricsCmd, NoiseReportArgs};
use crate::config::PipelineConfig;
use crate::{invalid, lib_err, read_lines, read_text, require_file};

pub fn run(cmd: MetricsCmd, cfg: &PipelineConfig) -> anyhow::Result<()> {
    match cmd {
        MetricsCmd::Chrf(a) => chrf_cmd(a, cfg),
        MetricsCmd::NoiseReport(a) => noise_report(a, cfg),
        MetricsCmd::FuncShare(a) => func_share(a),
    }
}

fn chrf_cmd(a: ChrfArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let params = ChrfParams { max_n: a.max_n.unwrap_or(cfg.chrf.max_n), beta: a.beta.unwrap_or(cfg.chrf.beta) };
    params.validate().map_err(lib_err)?;
    require_file(&a.hyp, "hypothesis file")?;
    require_file(&a.reference, "reference file")?;
    let hyp = read_lines(&a.hyp)?;
    let reference = read_lines(&a.reference)?;
    if a.sentence {
        if hyp.len() != reference.len() {
            return Err(dialup::Error::LengthMismatch { left: hyp.len(), right: reference.len() }.into());
        }
        for (i, (h, r)) in hyp.iter().zip(&reference).enumerate() {
            let score = chrf(h, r, params).map_err(|e| anyhow::Error::from(e).context(format!("line {}", i + 1)))?;
            println!("{score:.2}");
        }
    } else {
        println!("{:.2}", corpus_chrf(&hyp, &reference, params)?);
    }
    Ok(())
}

fn load_language(path: &Path) -> anyhow::Result<ArtificialLanguage> {
    require_file(path, "language file")?;
    ArtificialLanguage::parse(&read_text(path)?).map_err(|e| anyhow::Error::from(e).context(path.display().to_string()))
}

fn noise_report(a: NoiseReportArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    require_file(&a.original, "original corpus")?;
    let noised_path: PathBuf = match (&a.noised, &a.noise_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => dir.join(CORPUS_FILE),
        (None, None) => return Err(invalid("pass --noised or --noise-dir")),
    };
    require_file(&noised_path, "noised corpus")?;
    if a.noise_dir.is_none() && a.language.is_none() {
        return Err(invalid("pass --language or --noise-dir"));
    }
    let original = source_column(&read_lines(&a.original)?);
    let noised = source_column(&read_lines(&noised_path)?);
    let res = load_resources(&a.res, cfg)?;

    if let Some(path) = &a.language {
        let lang = load_language(path)?;
        print!("{}", noise_rate_report(&original, &noised, &lang, &res)?.to_tsv());
        return Ok(());
    }
    let dir = a.noise_dir.expect("checked above");
    let meta_path = dir.join(METADATA_FILE);
    require_file(&meta_path, "metadata file")?;
    let meta: NoiseMetadata = serde_json::from_str(&read_text(&meta_path)?)
        .map_err(|e| anyhow::anyhow!("{}: {e}", meta_path.display()))?;
    if meta.chunks.iter().any(|c| c.language.is_none()) {
        return Err(invalid(format!("{} describes a randaug corpus, which has no languages", meta_path.display())));
    }
    let orig: Vec<&str> = original.iter().map(String::as_str).collect();
    let new: Vec<&str> = noised.iter().map(String::as_str).collect();
    let report = report_rows(
        &orig,
        &new,
        &meta,
        |i| load_language(&dir.join(meta.chunks[i].language.as_deref().expect("checked above"))),
        &res,
    )?;
    print!("{report}");
    Ok(())
}

fn func_share(a: FuncShareArgs) -> anyhow::Result<()> {
    require_file(&a.corpus, "corpus")?;
    require_file(&a.funcs, "function-word list")?;
    let funcs: BTreeSet<String> = dialup::resources::FunctionWordList::parse(&read_text(&a.funcs)?).words;
    if funcs.is_empty() {
        return Err(invalid(format!("{} lists no function words", a.funcs.display())));
    }
    let lines = read_lines(&a.corpus)?;
    println!("{:.6}", function_word_share(&lines, &funcs)?);
    Ok(())
}
