//! HRL-side resources consumed by the noisers: tagged corpora, function-word lists, suffix
//! inventories, character n-gram models and vocabularies.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::io::BufRead;

use rand::Rng;

use crate::error::{Error, Result};
use crate::text;

pub const UPOS_TAGS: &[&str] = &[
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN", "PUNCT", "SCONJ",
    "SYM", "VERB", "X",
];

/// Closed-class tags: determiners, pronouns, adpositions, auxiliaries and conjunctions.
pub const DEFAULT_CLOSED_POS: &[&str] = &["DET", "PRON", "ADP", "AUX", "CCONJ", "SCONJ"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub form: String,
    pub upos: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedCorpus {
    pub sentences: Vec<Vec<TaggedToken>>,
}

impl TaggedCorpus {
    pub fn tokens(&self) -> impl Iterator<Item = &TaggedToken> {
        self.sentences.iter().flatten()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    /// Malformed lines are skipped and counted instead of failing the parse.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedConllu {
    pub corpus: TaggedCorpus,
    pub skipped_lines: usize,
}

/// Reads (FORM, UPOS) pairs from CoNLL-U. Multiword-token ranges and empty nodes are skipped.
pub fn parse_conllu<R: BufRead>(reader: R, mode: ParseMode) -> Result<ParsedConllu> {
    let mut corpus = TaggedCorpus::default();
    let mut sentence = Vec::new();
    let mut skipped_lines = 0;
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !sentence.is_empty() {
                corpus.sentences.push(std::mem::take(&mut sentence));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        match parse_token_line(line, no + 1) {
            Ok(Some(token)) => sentence.push(token),
            Ok(None) => {}
            Err(e) => match mode {
                ParseMode::Strict => return Err(e),
                ParseMode::Lenient => skipped_lines += 1,
            },
        }
    }
    if !sentence.is_empty() {
        corpus.sentences.push(sentence);
    }
    Ok(ParsedConllu { corpus, skipped_lines })
}

fn parse_token_line(line: &str, no: usize) -> Result<Option<TaggedToken>> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(Error::malformed(no, format!("expected 10 columns, got {}", cols.len())));
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    if id.parse::<u32>().is_err() {
        return Err(Error::malformed(no, format!("bad token id {id:?}")));
    }
    let (form, upos) = (cols[1], cols[3]);
    if form.is_empty() {
        return Err(Error::malformed(no, "empty FORM"));
    }
    if !UPOS_TAGS.contains(&upos) {
        return Err(Error::malformed(no, format!("unknown UPOS {upos:?}")));
    }
    Ok(Some(TaggedToken { form: form.to_string(), upos: upos.to_string() }))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctionWordList {
    pub words: BTreeSet<String>,
    pub pos: BTreeSet<String>,
}

impl FunctionWordList {
    pub fn contains(&self, folded: &str) -> bool {
        self.words.contains(folded)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        FunctionWordList { words: words.into_iter().map(|w| text::fold(w.as_ref())).collect(), pos: BTreeSet::new() }
    }

    /// One word per line.
    pub fn parse(text: &str) -> Self {
        Self::from_words(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')))
    }

    pub fn to_text(&self) -> String {
        self.words.iter().fold(String::new(), |mut s, w| {
            s.push_str(w);
            s.push('\n');
            s
        })
    }
}

/// Words whose most frequent tag is closed-class. Ties go to inclusion.
pub fn extract_function_words(corpus: &TaggedCorpus, closed_pos: &[&str]) -> Result<FunctionWordList> {
    if corpus.token_count() == 0 {
        return Err(Error::EmptyCorpus);
    }
    let mut tags: HashMap<String, HashMap<&str, usize>> = HashMap::new();
    for tok in corpus.tokens() {
        *tags.entry(text::fold(&tok.form)).or_default().entry(tok.upos.as_str()).or_default() += 1;
    }
    let words = tags
        .into_iter()
        .filter(|(_, counts)| {
            let top = counts.values().copied().max().unwrap_or(0);
            counts.iter().any(|(tag, &c)| c == top && closed_pos.contains(tag))
        })
        .map(|(w, _)| w)
        .collect();
    Ok(FunctionWordList { words, pos: closed_pos.iter().map(|s| s.to_string()).collect() })
}

/// Case-folded word frequencies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    freq: BTreeMap<String, u64>,
}

impl Vocabulary {
    pub fn from_lines<I, S>(lines: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vocab = Vocabulary::default();
        for line in lines {
            for w in text::word_cores(line.as_ref()) {
                vocab.add(&w, 1);
            }
        }
        vocab
    }

    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut vocab = Vocabulary::default();
        for (w, c) in counts {
            vocab.add(w.as_ref(), c);
        }
        vocab
    }

    pub fn add(&mut self, word: &str, count: u64) {
        if count > 0 && !word.is_empty() {
            *self.freq.entry(text::fold(word)).or_default() += count;
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.freq.contains_key(&text::fold(word))
    }

    pub fn frequency(&self, word: &str) -> u64 {
        self.freq.get(&text::fold(word)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.freq.iter().map(|(w, &c)| (w.as_str(), c))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.freq.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    /// Alphabetic characters occurring in the vocabulary.
    pub fn alphabet(&self) -> BTreeSet<char> {
        self.freq.keys().flat_map(|w| w.chars()).filter(|c| c.is_alphabetic()).collect()
    }

    /// `word <TAB> freq` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vocab = Vocabulary::default();
        for (no, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (w, f) = line.split_once('\t').ok_or_else(|| Error::malformed(no + 1, "expected word<TAB>freq"))?;
            let f: u64 = f.trim().parse().map_err(|_| Error::malformed(no + 1, format!("bad frequency {f:?}")))?;
            if f == 0 {
                return Err(Error::malformed(no + 1, "frequency must be at least 1"));
            }
            vocab.add(w, f);
        }
        Ok(vocab)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.freq {
            let _ = writeln!(s, "{w}\t{c}");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixParams {
    pub max_len: usize,
    pub min_type_freq: u64,
    pub top_k: usize,
}

impl Default for SuffixParams {
    fn default() -> Self {
        SuffixParams { max_len: 4, min_type_freq: 5, top_k: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixInventory {
    pub suffixes: Vec<(String, u64)>,
    pub params: SuffixParams,
}

impl SuffixInventory {
    /// Builds an inventory from explicit entries, sorting them into canonical order.
    pub fn from_entries(mut suffixes: Vec<(String, u64)>, params: SuffixParams) -> Self {
        sort_suffixes(&mut suffixes);
        SuffixInventory { suffixes, params }
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.suffixes.iter().map(|(s, _)| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.suffixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty()
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = format!("# max_len={} min_type_freq={} top_k={}\n", p.max_len, p.min_type_freq, p.top_k);
        for (suf, f) in &self.suffixes {
            let _ = writeln!(s, "{suf}\t{f}");
        }
        s
    }

    /// `suffix <TAB> freq` lines; the parameter header is optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut params = SuffixParams::default();
        let mut suffixes = Vec::new();
        for (no, line) in text.lines().enumerate() {
            if let Some(header) = line.strip_prefix('#') {
                for kv in header.split_whitespace() {
                    match kv.split_once('=') {
                        Some(("max_len", v)) => params.max_len = v.parse().unwrap_or(params.max_len),
                        Some(("min_type_freq", v)) => params.min_type_freq = v.parse().unwrap_or(params.min_type_freq),
                        Some(("top_k", v)) => params.top_k = v.parse().unwrap_or(params.top_k),
                        _ => {}
                    }
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let (suf, f) = line.split_once('\t').ok_or_else(|| Error::malformed(no + 1, "expected suffix<TAB>freq"))?;
            let f = f.trim().parse().map_err(|_| Error::malformed(no + 1, format!("bad frequency {f:?}")))?;
            suffixes.push((text::fold(suf), f));
        }
        Ok(Self::from_entries(suffixes, params))
    }
}

fn sort_suffixes(suffixes: &mut [(String, u64)]) {
    suffixes.sort_by(|(a, fa), (b, fb)| {
        fb.cmp(fa).then_with(|| b.chars().count().cmp(&a.chars().count())).then_with(|| a.cmp(b))
    });
}

/// Word-final character n-grams counted over distinct word types whose stem would keep at
/// least two characters.
pub fn extract_suffixes(vocab: &Vocabulary, params: SuffixParams) -> Result<SuffixInventory> {
    if params.max_len < 1 || params.min_type_freq < 2 || params.top_k < 1 {
        return Err(Error::InvalidParameter(format!("suffix parameters out of range: {params:?}")));
    }
    let mut counts: HashMap<String, u64> = HashMap::new();
    for word in vocab.words() {
        let chars: Vec<char> = word.chars().collect();
        for len in 1..=params.max_len {
            if chars.len() < len + 2 {
                break;
            }
            let tail = &chars[chars.len() - len..];
            if !tail.iter().all(|c| c.is_alphabetic() || text::is_word_char(*c) && !c.is_numeric()) {
                break;
            }
            *counts.entry(tail.iter().collect()).or_default() += 1;
        }
    }
    let mut suffixes: Vec<(String, u64)> = counts.into_iter().filter(|&(_, f)| f >= params.min_type_freq).collect();
    sort_suffixes(&mut suffixes);
    suffixes.truncate(params.top_k);
    Ok(SuffixInventory { suffixes, params })
}

pub const START: char = '\u{2}';
pub const END: char = '\u{3}';
pub const DEFAULT_SMOOTHING: f64 = 0.01;

/// Character n-gram model with add-k smoothing. Counts are kept for every history length
/// `0..order`, so an unseen history backs off to its longest observed suffix.
#[derive(Debug, Clone, PartialEq)]
pub struct CharNgramModel {
    order: usize,
    k: f64,
    counts: BTreeMap<String, BTreeMap<char, u64>>,
    alphabet: BTreeSet<char>,
}

pub fn train_char_ngram(vocab: &Vocabulary, order: usize) -> Result<CharNgramModel> {
    if order < 2 {
        return Err(Error::InvalidParameter("n-gram order must be at least 2".into()));
    }
    if vocab.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let mut counts: BTreeMap<String, BTreeMap<char, u64>> = BTreeMap::new();
    let mut alphabet = BTreeSet::new();
    for (word, freq) in vocab.iter() {
        let mut padded: Vec<char> = std::iter::repeat_n(START, order - 1).collect();
        for next in word.chars().chain(std::iter::once(END)) {
            let full = &padded[padded.len() - (order - 1)..];
            for len in 0..order {
                let history: String = full[full.len() - len..].iter().collect();
                *counts.entry(history).or_default().entry(next).or_default() += freq;
            }
            if next != END {
                alphabet.insert(next);
                padded.push(next);
            }
        }
    }
    Ok(CharNgramModel { order, k: DEFAULT_SMOOTHING, counts, alphabet })
}

impl CharNgramModel {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn smoothing(&self) -> f64 {
        self.k
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    /// Observed histories (including the empty one).
    pub fn histories(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    fn resolve_history<'a>(&'a self, history: &str) -> (&'a str, &'a BTreeMap<char, u64>) {
        let chars: Vec<char> = history.chars().collect();
        let keep = chars.len().min(self.order - 1);
        for len in (0..=keep).rev() {
            let h: String = chars[chars.len() - len..].iter().collect();
            if let Some((k, v)) = self.counts.get_key_value(&h) {
                return (k, v);
            }
        }
        unreachable!("the empty history is always observed")
    }

    /// `P(next | history)` where `None` is the end-of-word event.
    pub fn prob(&self, history: &str, next: Option<char>) -> f64 {
        let (_, row) = self.resolve_history(history);
        let total: u64 = row.values().sum();
        let c = row.get(&next.unwrap_or(END)).copied().unwrap_or(0);
        let outcomes = (self.alphabet.len() + 1) as f64;
        (c as f64 + self.k) / (total as f64 + self.k * outcomes)
    }

    /// Full conditional distribution over the alphabet followed by end-of-word.
    pub fn distribution(&self, history: &str) -> Vec<(Option<char>, f64)> {
        self.alphabet
            .iter()
            .map(|&c| Some(c))
            .chain(std::iter::once(None))
            .map(|o| (o, self.prob(history, o)))
            .collect()
    }

    /// Samples one string, stopping at end-of-word or after `max_len` characters.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> String {
        let mut history: String = std::iter::repeat_n(START, self.order - 1).collect();
        let mut out = String::new();
        let mut produced = 0;
        while produced < max_len {
            let dist = self.distribution(&history);
            let mut draw: f64 = rng.gen();
            let mut choice = None;
            for (o, p) in &dist {
                if draw < *p {
                    choice = *o;
                    break;
                }
                draw -= p;
                choice = *o;
            }
            match choice {
                None => break,
                Some(c) => {
                    out.push(c);
                    history.push(c);
                    produced += 1;
                }
            }
        }
        out
    }

    /// Training character frequencies (from the unigram row).
    pub fn char_frequencies(&self) -> BTreeMap<char, u64> {
        self.counts.get("").map(|row| row.iter().filter(|(&c, _)| c != END).map(|(&c, &n)| (c, n)).collect()).unwrap_or_default()
    }

    /// Header `#order=n #k=0.01` then `history <TAB> char <TAB> count` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("#order={} #k={}\n", self.order, self.k);
        for (h, row) in &self.counts {
            for (c, n) in row {
                let _ = writeln!(s, "{h}\t{c}\t{n}");
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::malformed(1, "missing header"))?;
        let mut order = None;
        let mut k = None;
        for field in header.split_whitespace() {
            if let Some(v) = field.strip_prefix("#order=") {
                order = v.parse::<usize>().ok();
            } else if let Some(v) = field.strip_prefix("#k=") {
                k = v.parse::<f64>().ok();
            }
        }
        let (order, k) = match (order, k) {
            (Some(o), Some(k)) if o >= 2 && k > 0.0 => (o, k),
            _ => return Err(Error::malformed(1, "header must be `#order=<n> #k=<k>`")),
        };
        let mut counts: BTreeMap<String, BTreeMap<char, u64>> = BTreeMap::new();
        let mut alphabet = BTreeSet::new();
        for (no, line) in lines {
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let mut next = cols.get(1).map(|c| c.chars());
            let (c, n) = match (cols.len(), next.as_mut().and_then(Iterator::next), next.as_mut().and_then(Iterator::next)) {
                (3, Some(c), None) => (c, cols[2].parse::<u64>().map_err(|_| Error::malformed(no + 1, "bad count"))?),
                _ => return Err(Error::malformed(no + 1, "expected history<TAB>char<TAB>count")),
            };
            if c != END {
                alphabet.insert(c);
            }
            *counts.entry(cols[0].to_string()).or_default().entry(c).or_default() += n;
        }
        if !counts.contains_key("") {
            return Err(Error::EmptyVocabulary);
        }
        Ok(CharNgramModel { order, k, counts, alphabet })
    }
}

const NONWORD_ATTEMPTS: usize = 50;

/// Mints a string of roughly `target_len` characters that is not a vocabulary word.
pub fn generate_nonword<R: Rng + ?Sized>(
    model: &CharNgramModel,
    target_len: usize,
    vocab: &Vocabulary,
    rng: &mut R,
) -> String {
    let target_len = target_len.max(1);
    let min_len = target_len.saturating_sub(2).max(1);
    let max_len = target_len + 2;
    let mut last = String::new();
    for _ in 0..NONWORD_ATTEMPTS {
        let candidate = model.sample(rng, max_len);
        let n = candidate.chars().count();
        if n >= min_len && !vocab.contains(&candidate) {
            return candidate;
        }
        if n > 0 {
            last = candidate;
        }
    }
    // rarest characters first
    let freq = model.char_frequencies();
    let mut rare: Vec<char> = model.alphabet().iter().copied().collect();
    rare.sort_by_key(|c| (freq.get(c).copied().unwrap_or(0), *c));
    let mut base: String = last.chars().take(target_len + 1).collect();
    while base.chars().count() + 1 < min_len {
        base.push(rare[0]);
    }
    loop {
        for &c in &rare {
            let mut candidate = base.clone();
            candidate.push(c);
            if !vocab.contains(&candidate) {
                return candidate;
            }
        }
        base.push(rare[0]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conllu_line(id: &str, form: &str, upos: &str) -> String {
        format!("{id}\t{form}\t_\t{upos}\t_\t_\t0\t_\t_\t_")
    }

    #[test]
    fn parses_two_token_sentence() {
        let text = format!("# sent_id = 1\n{}\n{}\n\n", conllu_line("1", "The", "DET"), conllu_line("2", "cat", "NOUN"));
        let parsed = parse_conllu(text.as_bytes(), ParseMode::Strict).unwrap();
        assert_eq!(parsed.corpus.token_count(), 2);
        assert_eq!(parsed.corpus.sentences[0][1], TaggedToken { form: "cat".into(), upos: "NOUN".into() });
    }

    #[test]
    fn skips_multiword_ranges_and_empty_nodes() {
        let text = [
            conllu_line("1-2", "del", "_"),
            conllu_line("1", "de", "ADP"),
            conllu_line("2", "el", "DET"),
            conllu_line("2.1", "x", "NOUN"),
        ]
        .join("\n");
        let parsed = parse_conllu(text.as_bytes(), ParseMode::Strict).unwrap();
        let forms: Vec<&str> = parsed.corpus.tokens().map(|t| t.form.as_str()).collect();
        assert_eq!(forms, ["de", "el"]);
    }

    #[test]
    fn wrong_column_count() {
        let text = "1\tThe\t_\tDET\t_\t_\t0\t_\t_\n2\tcat\t_\tNOUN\t_\t_\t0\t_\t_\t_\n";
        assert!(matches!(parse_conllu(text.as_bytes(), ParseMode::Strict), Err(Error::MalformedLine { line: 1, .. })));
        let parsed = parse_conllu(text.as_bytes(), ParseMode::Lenient).unwrap();
        assert_eq!(parsed.skipped_lines, 1);
        assert_eq!(parsed.corpus.token_count(), 1);
    }

    fn corpus(tagged: &[(&str, &str, usize)]) -> TaggedCorpus {
        let sentence = tagged
            .iter()
            .flat_map(|&(f, t, n)| std::iter::repeat_n(TaggedToken { form: f.into(), upos: t.into() }, n))
            .collect();
        TaggedCorpus { sentences: vec![sentence] }
    }

    #[test]
    fn modal_tag_decides_membership() {
        let c = corpus(&[("the", "DET", 3), ("the", "NOUN", 1), ("run", "NOUN", 5), ("run", "ADP", 1), ("up", "ADP", 2), ("up", "NOUN", 2)]);
        let fw = extract_function_words(&c, DEFAULT_CLOSED_POS).unwrap();
        assert!(fw.contains("the"));
        assert!(!fw.contains("run"));
        // a two-way tie goes to inclusion
        assert!(fw.contains("up"));
    }

    #[test]
    fn function_words_are_case_folded() {
        let c = corpus(&[("The", "DET", 1), ("the", "DET", 1)]);
        let fw = extract_function_words(&c, DEFAULT_CLOSED_POS).unwrap();
        assert_eq!(fw.words.iter().collect::<Vec<_>>(), ["the"]);
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(extract_function_words(&TaggedCorpus::default(), DEFAULT_CLOSED_POS), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn ed_suffix_count() {
        let vocab = Vocabulary::from_counts([("walked", 1), ("talked", 1), ("jumped", 1), ("cat", 1)]);
        let inv = extract_suffixes(&vocab, SuffixParams { max_len: 4, min_type_freq: 2, top_k: 100 }).unwrap();
        assert!(inv.suffixes.contains(&("ed".to_string(), 3)));
        // "cat" would leave a one-character stem
        assert!(inv.suffixes.iter().all(|(s, _)| s != "at"));
    }

    #[test]
    fn single_char_words_yield_nothing() {
        let vocab = Vocabulary::from_counts(["a", "b", "c", "d", "e", "f"].map(|w| (w, 3)));
        let inv = extract_suffixes(&vocab, SuffixParams { max_len: 4, min_type_freq: 2, top_k: 10 }).unwrap();
        assert!(inv.is_empty());
    }

    #[test]
    fn ngram_single_path_probability() {
        let vocab = Vocabulary::from_counts([("ab", 1)]);
        let m = train_char_ngram(&vocab, 2).unwrap();
        let k = m.smoothing();
        let expected = (1.0 + k) / (1.0 + k * 3.0);
        assert!((m.prob("a", Some('b')) - expected).abs() < 1e-12);
        assert!(matches!(train_char_ngram(&Vocabulary::default(), 3), Err(Error::EmptyVocabulary)));
        assert!(train_char_ngram(&vocab, 1).is_err());
    }

    #[test]
    fn ngram_text_round_trip() {
        let vocab = Vocabulary::from_counts([("kitab", 4), ("kalem", 2), ("ev", 9)]);
        let m = train_char_ngram(&vocab, 3).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("#order=3 #k=0.01\n"));
        assert_eq!(CharNgramModel::parse(&text).unwrap(), m);
    }

    #[test]
    fn nonword_fallback_when_model_only_emits_vocabulary() {
        // the model can essentially only produce "ab", which is in the vocabulary
        let vocab = Vocabulary::from_counts([("ab", 1000)]);
        let m = train_char_ngram(&vocab, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let w = generate_nonword(&m, 2, &vocab, &mut rng);
            assert!(!vocab.contains(&w));
            assert!(w.chars().all(|c| m.alphabet().contains(&c)));
        }
    }

    #[test]
    fn suffix_inventory_text_round_trip() {
        let inv = SuffixInventory::from_entries(vec![("ed".into(), 3), ("ing".into(), 3), ("s".into(), 9)], SuffixParams::default());
        assert_eq!(inv.iter().collect::<Vec<_>>(), ["s", "ing", "ed"]);
        assert_eq!(SuffixInventory::parse(&inv.to_text()).unwrap(), inv);
    }

    proptest! {
        #[test]
        fn ngram_rows_normalize(words in proptest::collection::vec(("[a-e]{1,6}", 1u64..5), 1..12), order in 2usize..5) {
            let vocab = Vocabulary::from_counts(words);
            let m = train_char_ngram(&vocab, order).unwrap();
            for h in m.histories() {
                let total: f64 = m.distribution(h).iter().map(|(_, p)| p).sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn suffixes_are_real_word_endings(words in proptest::collection::vec("[a-d]{1,7}", 1..60)) {
            let vocab = Vocabulary::from_counts(words.iter().map(|w| (w.as_str(), 1)));
            let params = SuffixParams { max_len: 3, min_type_freq: 2, top_k: 50 };
            let inv = extract_suffixes(&vocab, params).unwrap();
            prop_assert!(inv.len() <= params.top_k);
            for (s, f) in &inv.suffixes {
                let n = s.chars().count();
                prop_assert!(n >= 1 && n <= params.max_len);
                let support = vocab.words().filter(|w| w.ends_with(s.as_str()) && w.chars().count() >= n + 2).count() as u64;
                prop_assert_eq!(support, *f);
                prop_assert!(*f >= params.min_type_freq);
            }
        }

        #[test]
        fn function_words_ignore_sentence_order(seed in 0u64..1000) {
            use rand::seq::SliceRandom;
            let tags = ["DET", "NOUN", "ADP", "VERB", "PRON"];
            let forms = ["a", "b", "c", "d", "e", "f"];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sentences: Vec<Vec<TaggedToken>> = (0..8).map(|_| (0..5).map(|_| TaggedToken {
                form: forms.choose(&mut rng).unwrap().to_string(),
                upos: tags.choose(&mut rng).unwrap().to_string(),
            }).collect()).collect();
            let a = extract_function_words(&TaggedCorpus { sentences: sentences.clone() }, DEFAULT_CLOSED_POS).unwrap();
            sentences.shuffle(&mut rng);
            let b = extract_function_words(&TaggedCorpus { sentences }, DEFAULT_CLOSED_POS).unwrap();
            prop_assert_eq!(&a, &b);
        }

        #[test]
        fn nonwords_are_novel_in_alphabet_and_deterministic(seed in 0u64..500, target in 1usize..8) {
            let vocab = Vocabulary::from_counts([("kitap", 3), ("kalem", 2), ("ev", 9), ("el", 4), ("at", 5), ("ata", 1)]);
            let m = train_char_ngram(&vocab, 3).unwrap();
            let a = generate_nonword(&m, target, &vocab, &mut ChaCha8Rng::seed_from_u64(seed));
            let b = generate_nonword(&m, target, &vocab, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(&a, &b);
            prop_assert!(!vocab.contains(&a));
            prop_assert!(a.chars().all(|c| m.alphabet().contains(&c)));
            let n = a.chars().count();
            prop_assert!(n >= target.saturating_sub(2).max(1) && n <= target + 2);
        }
    }
}
