//! Bilingual CRL→HRL lexicons: ingestion, priority merging, IBM Model 1 induction and
//! function-word projection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::resources::FunctionWordList;
use crate::text;

#[derive(Debug, Clone, PartialEq)]
pub struct Translation {
    pub hrl: String,
    pub weight: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub crl: String,
    /// Ordered by source priority, then weight (descending), then HRL word.
    pub translations: Vec<Translation>,
}

impl LexiconEntry {
    pub fn top(&self) -> &Translation {
        &self.translations[0]
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BilingualLexicon {
    entries: BTreeMap<String, LexiconEntry>,
    priority: Vec<String>,
}

impl BilingualLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn priority(&self) -> &[String] {
        &self.priority
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }

    pub fn get(&self, crl: &str) -> Option<&LexiconEntry> {
        self.entries.get(crl)
    }

    /// Resolved translation of a case-folded CRL word.
    pub fn lookup(&self, crl: &str) -> Option<&Translation> {
        self.entries.get(crl).map(LexiconEntry::top)
    }

    fn rank(&self, source: &str) -> usize {
        self.priority.iter().position(|s| s == source).unwrap_or(usize::MAX)
    }

    /// Adds one translation; a repeated `(crl, hrl, source)` keeps the larger weight. Sources
    /// not yet known are appended at the lowest priority.
    pub fn insert(&mut self, crl: &str, hrl: &str, weight: f64, source: &str) {
        if !self.priority.iter().any(|s| s == source) {
            self.priority.push(source.to_string());
        }
        let entry = self
            .entries
            .entry(crl.to_string())
            .or_insert_with(|| LexiconEntry { crl: crl.to_string(), translations: Vec::new() });
        match entry.translations.iter_mut().find(|t| t.hrl == hrl && t.source == source) {
            Some(t) => t.weight = t.weight.max(weight),
            None => entry.translations.push(Translation { hrl: hrl.to_string(), weight, source: source.to_string() }),
        }
        let rank: HashMap<&str, usize> = self.priority.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        entry.translations.sort_by(|a, b| {
            rank[a.source.as_str()]
                .cmp(&rank[b.source.as_str()])
                .then_with(|| b.weight.total_cmp(&a.weight))
                .then_with(|| a.hrl.cmp(&b.hrl))
        });
    }

    /// `crl <TAB> hrl <TAB> weight <TAB> source` lines, preceded by a `#priority` header.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("#priority");
        for p in &self.priority {
            s.push('\t');
            s.push_str(p);
        }
        s.push('\n');
        for e in self.entries.values() {
            for t in &e.translations {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", e.crl, t.hrl, t.weight, t.source);
            }
        }
        s
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lex = BilingualLexicon::new();
        for (no, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix("#priority") {
                for p in rest.split('\t').filter(|p| !p.is_empty()) {
                    if lex.rank(p) == usize::MAX {
                        lex.priority.push(p.to_string());
                    }
                }
                continue;
            }
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [crl, hrl, weight, source] = cols.as_slice() else {
                return Err(Error::malformed(no + 1, "expected crl<TAB>hrl<TAB>weight<TAB>source"));
            };
            let weight = parse_weight(weight, no + 1)?;
            lex.insert(&text::fold(crl.trim()), &text::fold(hrl.trim()), weight, source.trim());
        }
        Ok(lex)
    }
}

fn parse_weight(s: &str, line: usize) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(w) if w.is_finite() && w >= 0.0 => Ok(w),
        _ => Err(Error::malformed(line, format!("bad weight {s:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedLexicon {
    pub lexicon: BilingualLexicon,
    /// Entries with a space on either side; only single-token entries are kept.
    pub skipped_multiword: usize,
}

/// Reads `crl <TAB> hrl [<TAB> weight]` lines (missing weight = 1.0) tagged with `source`.
pub fn load_lexicon(text: &str, source: &str) -> Result<LoadedLexicon> {
    let mut lexicon = BilingualLexicon::new();
    lexicon.priority.push(source.to_string());
    let mut skipped_multiword = 0;
    for (no, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let (crl, hrl, weight) = match cols.as_slice() {
            [c, h] => (*c, *h, 1.0),
            [c, h, w] => (*c, *h, parse_weight(w, no + 1)?),
            _ => return Err(Error::malformed(no + 1, format!("expected 2 or 3 columns, got {}", cols.len()))),
        };
        if crl.is_empty() || hrl.is_empty() {
            return Err(Error::malformed(no + 1, "empty word"));
        }
        if crl.contains(char::is_whitespace) || hrl.contains(char::is_whitespace) {
            skipped_multiword += 1;
            continue;
        }
        lexicon.insert(&text::fold(crl), &text::fold(hrl), weight, source);
    }
    Ok(LoadedLexicon { lexicon, skipped_multiword })
}

/// Union of `lexicons`, earlier ones taking priority.
pub fn merge_lexicons(lexicons: &[BilingualLexicon]) -> BilingualLexicon {
    let mut merged = BilingualLexicon::new();
    for lex in lexicons {
        for p in &lex.priority {
            if merged.rank(p) == usize::MAX {
                merged.priority.push(p.clone());
            }
        }
    }
    for lex in lexicons {
        for e in lex.entries.values() {
            for t in &e.translations {
                merged.insert(&e.crl, &t.hrl, t.weight, &t.source);
            }
        }
    }
    merged
}

pub const NULL_TOKEN: &str = "<null>";

/// Translation table `t(hrl | crl)` from IBM Model 1, with the log-likelihood trace.
#[derive(Debug, Clone)]
pub struct Ibm1Model {
    /// Index 0 is the null token.
    pub crl_vocab: Vec<String>,
    pub hrl_vocab: Vec<String>,
    /// Per CRL index, nonzero `t(hrl | crl)` over co-occurring HRL indices.
    pub table: Vec<BTreeMap<usize, f64>>,
    /// Corpus log-likelihood under the initial table and after every iteration.
    pub log_likelihood: Vec<f64>,
}

impl Ibm1Model {
    pub fn prob(&self, crl: &str, hrl: &str) -> f64 {
        let (Some(c), Some(h)) =
            (self.crl_vocab.iter().position(|w| w == crl), self.hrl_vocab.iter().position(|w| w == hrl))
        else {
            return 0.0;
        };
        self.table[c].get(&h).copied().unwrap_or(0.0)
    }
}

fn index_of(vocab: &mut Vec<String>, index: &mut HashMap<String, usize>, w: String) -> usize {
    *index.entry(w).or_insert_with_key(|k| {
        vocab.push(k.clone());
        vocab.len() - 1
    })
}

/// Runs `iterations` EM rounds of IBM Model 1 generating HRL words from CRL words plus a
/// null token.
pub fn train_ibm1(pairs: &[(String, String)], iterations: usize) -> Result<Ibm1Model> {
    if iterations == 0 {
        return Err(Error::InvalidParameter("IBM Model 1 needs at least one iteration".into()));
    }
    let mut crl_vocab = vec![NULL_TOKEN.to_string()];
    let mut crl_index = HashMap::from([(NULL_TOKEN.to_string(), 0)]);
    let mut hrl_vocab = Vec::new();
    let mut hrl_index = HashMap::new();
    let mut corpus: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (crl, hrl) in pairs {
        let c: Vec<usize> = std::iter::once(0)
            .chain(text::word_cores(crl).map(|w| index_of(&mut crl_vocab, &mut crl_index, w)))
            .collect();
        let h: Vec<usize> = text::word_cores(hrl).map(|w| index_of(&mut hrl_vocab, &mut hrl_index, w)).collect();
        if c.len() > 1 && !h.is_empty() {
            corpus.push((c, h));
        }
    }
    if corpus.is_empty() {
        return Err(Error::EmptyBitext);
    }

    let uniform = 1.0 / hrl_vocab.len() as f64;
    let mut table: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); crl_vocab.len()];
    for (c, h) in &corpus {
        for &ci in c {
            for &hj in h {
                table[ci].insert(hj, uniform);
            }
        }
    }

    let log_likelihood_of = |table: &[BTreeMap<usize, f64>]| -> f64 {
        corpus
            .iter()
            .map(|(c, h)| {
                h.iter().map(|hj| (c.iter().map(|&ci| table[ci][hj]).sum::<f64>() / c.len() as f64).ln()).sum::<f64>()
            })
            .sum()
    };

    let mut log_likelihood = vec![log_likelihood_of(&table)];
    for _ in 0..iterations {
        let mut counts: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); crl_vocab.len()];
        let mut totals = vec![0.0; crl_vocab.len()];
        for (c, h) in &corpus {
            for &hj in h {
                let denom: f64 = c.iter().map(|&ci| table[ci][&hj]).sum();
                for &ci in c {
                    let delta = table[ci][&hj] / denom;
                    *counts[ci].entry(hj).or_default() += delta;
                    totals[ci] += delta;
                }
            }
        }
        for (ci, row) in counts.iter_mut().enumerate() {
            for v in row.values_mut() {
                *v /= totals[ci];
            }
        }
        table = counts;
        log_likelihood.push(log_likelihood_of(&table));
    }
    Ok(Ibm1Model { crl_vocab, hrl_vocab, table, log_likelihood })
}

/// Induces a lexicon from `(crl, hrl)` sentence pairs: every HRL word with
/// `t(hrl | crl) >= threshold` becomes a translation weighted by that probability.
pub fn induce_lexicon_ibm1(
    pairs: &[(String, String)],
    iterations: usize,
    threshold: f64,
    source: &str,
) -> Result<(BilingualLexicon, Ibm1Model)> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter(format!("threshold {threshold} is outside (0, 1]")));
    }
    let model = train_ibm1(pairs, iterations)?;
    let mut lex = BilingualLexicon::new();
    lex.priority.push(source.to_string());
    for (ci, row) in model.table.iter().enumerate().skip(1) {
        for (&hj, &p) in row {
            if p >= threshold {
                lex.insert(&model.crl_vocab[ci], &model.hrl_vocab[hj], p, source);
            }
        }
    }
    Ok((lex, model))
}

/// CRL words whose resolved translation is an HRL function word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrlFunctionWordSet {
    pub words: BTreeSet<String>,
}

impl CrlFunctionWordSet {
    pub fn contains(&self, folded: &str) -> bool {
        self.words.contains(folded)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn parse(text: &str) -> Self {
        CrlFunctionWordSet {
            words: text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(text::fold).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        self.words.iter().fold(String::new(), |mut s, w| {
            s.push_str(w);
            s.push('\n');
            s
        })
    }
}

pub fn project_function_words(lex: &BilingualLexicon, hrl_funcs: &FunctionWordList) -> CrlFunctionWordSet {
    CrlFunctionWordSet {
        words: lex.entries().filter(|e| hrl_funcs.contains(&e.top().hrl)).map(|e| e.crl.clone()).collect(),
    }
}
