use std::io::Write as _;

use anyhow::Context;
use dialup::dtm::{swap_corpus, SwapMode};
use dialup::lexicon::CrlFunctionWordSet;
use serde_json::json;

use super::lexicon::read_lexicon;
use crate::args::SwapArgs;
use crate::config::PipelineConfig;
use crate::{invalid, log_event, read_lines, read_text, require_file, write_text};

pub fn swap(a: SwapArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let mode: SwapMode = match &a.mode {
        Some(m) => m.parse().map_err(|e| invalid(format!("--mode: {e}")))?,
        None => cfg.swap_mode()?,
    };
    let lexicon = a.lexicon.or_else(|| cfg.dtm.lexicon.clone()).ok_or_else(|| invalid("no lexicon: pass --lexicon or set dtm.lexicon"))?;
    let funcs = a
        .crl_funcs
        .or_else(|| cfg.dtm.crl_funcs.clone())
        .ok_or_else(|| invalid("no CRL function words: pass --crl-funcs or set dtm.crl_funcs"))?;
    require_file(&a.input, "input")?;
    require_file(&funcs, "CRL function-word list")?;
    let lex = read_lexicon(&lexicon)?;
    let crl_funcs = CrlFunctionWordSet::parse(&read_text(&funcs)?);
    let lines = read_lines(&a.input)?;

    let (out, report) = swap_corpus(&lines, &lex, &crl_funcs, mode);
    let mut text = out.join("\n");
    if !out.is_empty() {
        text.push('\n');
    }
    match &a.output {
        Some(p) => write_text(p, &text)?,
        None => std::io::stdout().write_all(text.as_bytes()).context("writing swapped text")?,
    }
    let summary = report.summary_tsv(mode);
    match &a.report {
        Some(p) => write_text(p, &summary)?,
        None => eprint!("{summary}"),
    }
    if let Some(p) = &a.trace {
        write_text(p, &report.trace_tsv())?;
    }
    log_event("dtm.swap", json!({ "mode": mode.to_string(), "total": report.total, "swapped": report.swapped() }));
    Ok(())
}
