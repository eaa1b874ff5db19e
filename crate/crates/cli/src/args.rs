use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "dialup", version, about = "Synthetic dialect corpora (M->D) and lexicon word swapping (D->M)")]
pub struct Cli {
    /// TOML pipeline configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every random decision.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (defaults to the number of CPUs). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build HRL resources from a tagged treebank and a raw corpus.
    #[command(subcommand)]
    Resources(ResourcesCmd),
    /// Sample and serialize an artificial language.
    #[command(subcommand)]
    Lang(LangCmd),
    /// Noise the source side of a bitext.
    #[command(subcommand)]
    Noise(NoiseCmd),
    /// Load, merge, induce and project bilingual lexicons.
    #[command(subcommand)]
    Lexicon(LexiconCmd),
    /// Swap CRL words for HRL translations.
    #[command(subcommand)]
    Dtm(DtmCmd),
    /// chrF, noise-rate and function-word diagnostics.
    #[command(subcommand)]
    Metrics(MetricsCmd),
    /// Shell corpora along one dial, all other dials at zero.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum ResourcesCmd {
    Build(BuildArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// CoNLL-U treebank for function-word extraction.
    #[arg(long)]
    pub conllu: Option<PathBuf>,
    /// Raw HRL text, one sentence per line.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Output directory (resources.dir).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub ngram_order: Option<usize>,
    #[arg(long)]
    pub suffix_max_len: Option<usize>,
    #[arg(long)]
    pub suffix_min_type_freq: Option<u64>,
    #[arg(long)]
    pub suffix_top_k: Option<usize>,
    /// Skip malformed CoNLL-U lines instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args, Clone)]
pub struct ResourceArgs {
    /// Directory written by `resources build`.
    #[arg(long)]
    pub resources: Option<PathBuf>,
    /// Shipped grapheme table (arabic, cyrillic, devanagari, latin).
    #[arg(long)]
    pub script: Option<String>,
    /// Grapheme table file, instead of a shipped one.
    #[arg(long)]
    pub g2p: Option<PathBuf>,
    /// Phoneme inventory file, instead of the shipped one.
    #[arg(long)]
    pub inventory: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LangCmd {
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub res: ResourceArgs,
    /// Dials as `p,m,f,c`.
    #[arg(long)]
    pub dials: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum NoiseCmd {
    /// One language at the shell dials.
    Shell(NoiseArgs),
    /// K radii of fresh languages up to the cloud maximum.
    Cloud(NoiseArgs),
    /// Random character/word substitution at the shell rates.
    RandaugShell(NoiseArgs),
    /// Random substitution over K radii up to the maximum rates.
    RandaugCloud(NoiseArgs),
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[command(flatten)]
    pub res: ResourceArgs,
    /// `source <TAB> target` lines.
    #[arg(long)]
    pub bitext: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Shell dials `p,m,f,c`.
    #[arg(long)]
    pub dials: Option<String>,
    /// Cloud maximum `p,m,f,c`.
    #[arg(long)]
    pub max: Option<String>,
    #[arg(long)]
    pub radii: Option<usize>,
    #[arg(long)]
    pub langs_per_radius: Option<usize>,
    /// Randaug rates `char,word` (the maximum for randaug-cloud).
    #[arg(long)]
    pub randaug: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum LexiconCmd {
    /// Normalize a `crl <TAB> hrl [<TAB> weight]` file into a tagged lexicon.
    Load(LoadArgs),
    /// Merge tagged lexicons; earlier inputs take priority.
    Merge(MergeArgs),
    /// Induce a lexicon from `crl <TAB> hrl` sentence pairs with IBM Model 1.
    Induce(InduceArgs),
    /// CRL words whose top translation is an HRL function word.
    Project(ProjectArgs),
}

#[derive(Debug, Args)]
pub struct LoadArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Source tag recorded on every entry.
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    #[arg(long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    #[arg(long)]
    pub bitext: PathBuf,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, default_value = "ibm1")]
    pub source: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Log-likelihood per iteration.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub lexicon: PathBuf,
    /// HRL function-word list.
    #[arg(long)]
    pub hrl_funcs: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum DtmCmd {
    Swap(SwapArgs),
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    /// func, cont or all.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub crl_funcs: Option<PathBuf>,
    #[arg(long)]
    pub input: PathBuf,
    /// Swapped text; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Summary TSV; stderr when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Per-swap TSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum MetricsCmd {
    /// Corpus-level chrF (sentence-level with --sentence).
    Chrf(ChrfArgs),
    /// Type-level noise rates of the languages behind a noised corpus.
    NoiseReport(NoiseReportArgs),
    /// Share of tokens that are function words.
    FuncShare(FuncShareArgs),
}

#[derive(Debug, Args)]
pub struct ChrfArgs {
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// One score per line instead of a pooled corpus score.
    #[arg(long)]
    pub sentence: bool,
}

#[derive(Debug, Args)]
pub struct NoiseReportArgs {
    #[command(flatten)]
    pub res: ResourceArgs,
    /// Original text or bitext (the first column is used).
    #[arg(long)]
    pub original: PathBuf,
    /// Noised text or bitext; defaults to `corpus.tsv` in --noise-dir.
    #[arg(long)]
    pub noised: Option<PathBuf>,
    /// Output directory of `noise shell|cloud`: reports every chunk's language.
    #[arg(long, conflicts_with = "language")]
    pub noise_dir: Option<PathBuf>,
    /// A single language file covering the whole corpus.
    #[arg(long)]
    pub language: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FuncShareArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// One function word per line.
    #[arg(long)]
    pub funcs: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub res: ResourceArgs,
    /// p, m or f.
    #[arg(long)]
    pub dim: String,
    /// Comma-separated dial values.
    #[arg(long)]
    pub grid: String,
    #[arg(long)]
    pub bitext: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}
