use std::io::BufReader;

use anyhow::Context;
use dialup::resources::{extract_function_words, extract_suffixes, parse_conllu, train_char_ngram, ParseMode, Vocabulary};
use serde_json::json;

use super::{CHARLM_FILE, FUNCTION_WORDS_FILE, SUFFIXES_FILE, VOCAB_FILE};
use crate::args::BuildArgs;
use crate::config::PipelineConfig;
use crate::{invalid, lib_err, log_event, read_lines, require_file, write_text};

pub fn build(a: BuildArgs, cfg: &PipelineConfig) -> anyhow::Result<()> {
    let conllu = a.conllu.or_else(|| cfg.resources.conllu.clone()).ok_or_else(|| invalid("no CoNLL-U file: pass --conllu or set resources.conllu"))?;
    let corpus = a.corpus.or_else(|| cfg.resources.corpus.clone()).ok_or_else(|| invalid("no corpus: pass --corpus or set resources.corpus"))?;
    let out = a.out.or_else(|| cfg.resources.dir.clone()).ok_or_else(|| invalid("no output directory: pass --out or set resources.dir"))?;
    require_file(&conllu, "CoNLL-U file")?;
    require_file(&corpus, "corpus")?;
    let mut params = cfg.suffix_params();
    params.max_len = a.suffix_max_len.unwrap_or(params.max_len);
    params.min_type_freq = a.suffix_min_type_freq.unwrap_or(params.min_type_freq);
    params.top_k = a.suffix_top_k.unwrap_or(params.top_k);
    let order = a.ngram_order.unwrap_or(cfg.resources.ngram_order);
    if order < 2 {
        return Err(invalid("--ngram-order must be at least 2"));
    }
    let closed: Vec<&str> = cfg.resources.closed_pos.iter().map(String::as_str).collect();

    let file = std::fs::File::open(&conllu).with_context(|| format!("opening {}", conllu.display()))?;
    let mode = if a.lenient { ParseMode::Lenient } else { ParseMode::Strict };
    let parsed = parse_conllu(BufReader::new(file), mode).with_context(|| conllu.display().to_string())?;
    let function_words = extract_function_words(&parsed.corpus, &closed).map_err(lib_err)?;

    let lines = read_lines(&corpus)?;
    let vocab = Vocabulary::from_lines(&lines);
    if vocab.is_empty() {
        return Err(anyhow::Error::from(dialup::Error::EmptyCorpus).context(corpus.display().to_string()));
    }
    let suffixes = extract_suffixes(&vocab, params).map_err(lib_err)?;
    let charlm = train_char_ngram(&vocab, order).map_err(lib_err)?;

    write_text(&out.join(FUNCTION_WORDS_FILE), &function_words.to_text())?;
    write_text(&out.join(SUFFIXES_FILE), &suffixes.to_text())?;
    write_text(&out.join(CHARLM_FILE), &charlm.to_text())?;
    write_text(&out.join(VOCAB_FILE), &vocab.to_text())?;

    println!("tagged_tokens\t{}", parsed.corpus.token_count());
    println!("function_words\t{}", function_words.len());
    println!("suffixes\t{}", suffixes.len());
    println!("vocabulary\t{}", vocab.len());
    println!("alphabet\t{}", charlm.alphabet().len());
    log_event(
        "resources.build",
        json!({ "out": out.display().to_string(), "skipped_conllu_lines": parsed.skipped_lines }),
    );
    Ok(())
}
