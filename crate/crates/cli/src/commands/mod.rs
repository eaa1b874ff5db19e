mod dtm;
mod lexicon;
mod metrics;
mod noise;
mod resources;

use std::path::{Path, PathBuf};

use dialup::noisers::{NoiseDials, RandaugDials, Resources};
use dialup::phonology::{GraphemePhonemeTable, PhonemeInventory};
use dialup::resources::{CharNgramModel, FunctionWordList, SuffixInventory, Vocabulary};

use crate::args::{Command, DtmCmd, LangCmd, ResourceArgs, ResourcesCmd};
use crate::config::PipelineConfig;
use crate::{invalid, lib_err, read_text, require_file};

pub use noise::NoiseMetadata;

pub const FUNCTION_WORDS_FILE: &str = "function_words.txt";
pub const SUFFIXES_FILE: &str = "suffixes.tsv";
pub const CHARLM_FILE: &str = "charlm.tsv";
pub const VOCAB_FILE: &str = "vocab.tsv";

pub fn dispatch(command: Command, cfg: &PipelineConfig) -> anyhow::Result<()> {
    match command {
        Command::Resources(ResourcesCmd::Build(a)) => resources::build(a, cfg),
        Command::Lang(LangCmd::Sample(a)) => noise::sample(a, cfg),
        Command::Noise(c) => noise::run(c, cfg),
        Command::Lexicon(c) => lexicon::run(c, cfg),
        Command::Dtm(DtmCmd::Swap(a)) => dtm::swap(a, cfg),
        Command::Metrics(c) => metrics::run(c, cfg),
        Command::Sweep(a) => noise::sweep(a, cfg),
    }
}

pub(crate) fn parse_dials(s: &str, what: &str) -> anyhow::Result<NoiseDials> {
    let values = parse_floats(s, what)?;
    let arr: [f64; 4] =
        values.try_into().map_err(|_| invalid(format!("{what}: expected four values p,m,f,c, got {s:?}")))?;
    NoiseDials::from_array(arr).map_err(|e| invalid(format!("{what}: {e}")))
}

pub(crate) fn parse_randaug(s: &str, what: &str) -> anyhow::Result<RandaugDials> {
    match parse_floats(s, what)?.as_slice() {
        [c, w] => RandaugDials::new(*c, *w).map_err(|e| invalid(format!("{what}: {e}"))),
        _ => Err(invalid(format!("{what}: expected two values char,word, got {s:?}"))),
    }
}

pub(crate) fn parse_floats(s: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| invalid(format!("{what}: {v:?} is not a number"))))
        .collect()
}

/// Resolves and validates every resource path, then loads them.
pub(crate) fn load_resources(args: &ResourceArgs, cfg: &PipelineConfig) -> anyhow::Result<Resources> {
    let dir: PathBuf = args
        .resources
        .clone()
        .or_else(|| cfg.resources.dir.clone())
        .ok_or_else(|| invalid("no resource directory: pass --resources or set resources.dir"))?;
    let files = [FUNCTION_WORDS_FILE, SUFFIXES_FILE, CHARLM_FILE, VOCAB_FILE].map(|f| dir.join(f));
    for f in &files {
        require_file(f, "resource file")?;
    }
    let inventory_path = args.inventory.clone().or_else(|| cfg.resources.inventory.clone());
    let g2p_path = args.g2p.clone().or_else(|| cfg.resources.g2p.clone());
    for p in inventory_path.iter().chain(&g2p_path) {
        require_file(p, "table file")?;
    }
    let inventory = match &inventory_path {
        Some(p) => PhonemeInventory::parse(&read_text(p)?).map_err(|e| anyhow::Error::from(e).context(p.display().to_string()))?,
        None => PhonemeInventory::builtin(),
    };
    let g2p = match &g2p_path {
        Some(p) => {
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            GraphemePhonemeTable::parse(&id, &read_text(p)?).map_err(|e| anyhow::Error::from(e).context(p.display().to_string()))?
        }
        None => {
            let script = args.script.as_deref().unwrap_or(&cfg.resources.script);
            GraphemePhonemeTable::builtin(script).ok_or_else(|| {
                invalid(format!("unknown script {script:?}; shipped tables: {}", dialup::phonology::BUILTIN_SCRIPTS.join(", ")))
            })?
        }
    };
    let [fw, sfx, lm, voc] = files;
    let ctx = |p: &Path| p.display().to_string();
    let function_words = FunctionWordList::parse(&read_text(&fw)?);
    let suffixes = SuffixInventory::parse(&read_text(&sfx)?).map_err(|e| anyhow::Error::from(e).context(ctx(&sfx)))?;
    let charlm = CharNgramModel::parse(&read_text(&lm)?).map_err(|e| anyhow::Error::from(e).context(ctx(&lm)))?;
    let vocab = Vocabulary::parse(&read_text(&voc)?).map_err(|e| anyhow::Error::from(e).context(ctx(&voc)))?;
    Resources::new(inventory, g2p, suffixes, function_words, charlm, vocab).map_err(lib_err)
}

/// First tab-separated column of each line, so both plain text and bitext files work.
pub(crate) fn source_column(lines: &[String]) -> Vec<String> {
    lines.iter().map(|l| l.split_once('\t').map_or(l.as_str(), |(s, _)| s).to_string()).collect()
}
