use std::fmt::Write as _;
use std::path::Path;

use dialup::lexicon::{induce_lexicon_ibm1, load_lexicon, merge_lexicons, project_function_words, BilingualLexicon};
use dialup::resources::FunctionWordList;
use serde_json::json;

use crate::args::{InduceArgs, LexiconCmd, LoadArgs, MergeArgs, ProjectArgs};
use crate::config::PipelineConfig;
use crate::{invalid, lib_err, log_event, read_text, require_file, write_text};

pub fn run(cmd: LexiconCmd, cfg: &PipelineConfig) -> anyhow::Result<()> {
    match cmd {
        LexiconCmd::Load(a) => load(a),
        LexiconCmd::Merge(a) => merge(a),
        LexiconCmd::Induce(a) => induce(a, cfg),
        LexiconCmd::Project(a) => project(a),
    }
}

pub(crate) fn read_lexicon(path: &Path) -> anyhow::Result<BilingualLexicon> {
    require_file(path, "lexicon")?;
    BilingualLexicon::from_tsv(&read_text(path)?).map_err(|e| anyhow::Error::from(e).context(path.display().to_string()))
}

fn load(a: LoadArgs) -> anyhow::Result<()> {
    require_file(&a.input, "lexicon")?;
    if a.source.is_empty() || a.source.contains(char::is_whitespace) {
        return Err(invalid("--source must be a nonempty tag without whitespace"));
    }
    let loaded = load_lexicon(&read_text(&a.input)?, &a.source).map_err(|e| anyhow::Error::from(e).context(a.input.display().to_string()))?;
    write_text(&a.out, &loaded.lexicon.to_tsv())?;
    println!("entries\t{}", loaded.lexicon.len());
    println!("skipped_multiword\t{}", loaded.skipped_multiword);
    log_event("lexicon.load", json!({ "source": a.source, "entries": loaded.lexicon.len() }));
    Ok(())
}

fn merge(a: MergeArgs) -> anyhow::Result<()> {
    for p in &a.inputs {
        require_file(p, "lexicon")?;
    }
    let lexicons = a.inputs.iter().map(|p| read_lexicon(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let merged = merge_lexicons(&lexicons);
    write_text(&a.out, &merged.to_tsv())?;
    println!("entries\t{}", merged.len());
    log_event("lexicon.merge", json!({ "inputs": a.inputs.len(), "priority": merged.priority() }));
    Ok(())
}

fn induce(a: InduceArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    require_file(&a.bitext, "bitext")?;
    let iterations = a.iterations.unwrap_or(cfg.lexicon.iterations);
    let threshold = a.threshold.unwrap_or(cfg.lexicon.threshold);
    let bitext = dialup::langgen::Bitext::parse_tsv(&read_text(&a.bitext)?)
        .map_err(|e| anyhow::Error::from(e).context(a.bitext.display().to_string()))?;
    let (lex, model) = induce_lexicon_ibm1(&bitext.pairs, iterations, threshold, &a.source).map_err(lib_err)?;
    write_text(&a.out, &lex.to_tsv())?;
    if let Some(trace) = &a.trace {
        let mut s = String::from("iteration\tlog_likelihood\n");
        for (i, ll) in model.log_likelihood.iter().enumerate() {
            let _ = writeln!(s, "{i}\t{ll:.6}");
        }
        write_text(trace, &s)?;
    }
    println!("entries\t{}", lex.len());
    log_event(
        "lexicon.induce",
        json!({ "iterations": iterations, "threshold": threshold, "log_likelihood": model.log_likelihood.last() }),
    );
    Ok(())
}

fn project(a: ProjectArgs) -> anyhow::Result<()> {
    require_file(&a.hrl_funcs, "function-word list")?;
    let lex = read_lexicon(&a.lexicon)?;
    let funcs = FunctionWordList::parse(&read_text(&a.hrl_funcs)?);
    let projected = project_function_words(&lex, &funcs);
    write_text(&a.out, &projected.to_text())?;
    println!("crl_function_words\t{}", projected.len());
    Ok(())
}
