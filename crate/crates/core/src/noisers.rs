//! Artificial-language sampling and application (M→D), plus the random-augmentation
//! baseline.
//!
//! An [`ArtificialLanguage`] is a frozen map of changes from the HRL: phoneme types, suffixes
//! and function words are each selected with their dial's probability when the language is
//! sampled; content words are decided lazily, per word type, from a coin derived from the
//! language seed and the word itself. Every decision depends only on `(seed, unit)`, so the
//! same unit maps to the same target everywhere and in any evaluation order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::sync::RwLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phonology::{phonetic_neighbors, GraphemePhonemeTable, PhonemeInventory, Segment, Variant};
use crate::resources::{generate_nonword, CharNgramModel, FunctionWordList, SuffixInventory, Vocabulary};
use crate::seed;
use crate::text::{self, Detached};

/// Phonological noise applied when minting suffix and function-word targets.
pub const INTERNAL_DIAL: f64 = 0.8;

/// Minimum stem length (in characters) left in front of a replaced suffix.
pub const MIN_STEM_CHARS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    Phonological,
    Morphological,
    FunctionWord,
    ContentWord,
}

impl Dimension {
    pub const ALL: [Dimension; 4] =
        [Dimension::Phonological, Dimension::Morphological, Dimension::FunctionWord, Dimension::ContentWord];

    pub fn short(self) -> &'static str {
        match self {
            Dimension::Phonological => "p",
            Dimension::Morphological => "m",
            Dimension::FunctionWord => "f",
            Dimension::ContentWord => "c",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl std::str::FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Dimension::Phonological),
            "m" => Ok(Dimension::Morphological),
            "f" => Ok(Dimension::FunctionWord),
            "c" => Ok(Dimension::ContentWord),
            _ => Err(Error::InvalidParameter(format!("unknown dimension {s:?} (expected p, m, f or c)"))),
        }
    }
}

/// Per-unit noising probabilities for the phonological, morphological, function-word and
/// content-word dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseDials {
    pub phonological: f64,
    pub morphological: f64,
    pub function: f64,
    pub content: f64,
}

impl NoiseDials {
    pub const ZERO: NoiseDials = NoiseDials { phonological: 0.0, morphological: 0.0, function: 0.0, content: 0.0 };
    /// Single-radius default.
    pub const SHELL_DEFAULT: NoiseDials =
        NoiseDials { phonological: 0.05, morphological: 0.3, function: 0.5, content: 0.001 };
    /// Outermost radius of the default cloud.
    pub const CLOUD_MAX_DEFAULT: NoiseDials =
        NoiseDials { phonological: 0.07, morphological: 0.5, function: 0.8, content: 0.001 };

    pub fn new(phonological: f64, morphological: f64, function: f64, content: f64) -> Result<Self> {
        let d = NoiseDials { phonological, morphological, function, content };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        for (dim, v) in Dimension::ALL.iter().zip(self.as_array()) {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!("dial θ{dim} = {v} is outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.phonological, self.morphological, self.function, self.content]
    }

    pub fn from_array([p, m, f, c]: [f64; 4]) -> Result<Self> {
        Self::new(p, m, f, c)
    }

    pub fn get(&self, dim: Dimension) -> f64 {
        match dim {
            Dimension::Phonological => self.phonological,
            Dimension::Morphological => self.morphological,
            Dimension::FunctionWord => self.function,
            Dimension::ContentWord => self.content,
        }
    }

    /// Only `dim` set to `value`, everything else zero.
    pub fn only(dim: Dimension, value: f64) -> Result<Self> {
        let mut a = [0.0; 4];
        a[Dimension::ALL.iter().position(|&d| d == dim).unwrap()] = value;
        Self::from_array(a)
    }

    pub fn scaled(&self, factor: f64) -> NoiseDials {
        NoiseDials {
            phonological: tidy(self.phonological * factor),
            morphological: tidy(self.morphological * factor),
            function: tidy(self.function * factor),
            content: tidy(self.content * factor),
        }
    }
}

impl fmt::Display for NoiseDials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.phonological, self.morphological, self.function, self.content)
    }
}

/// Character and word replacement rates for the random baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandaugDials {
    pub char_rate: f64,
    pub word_rate: f64,
}

impl RandaugDials {
    pub const SHELL_DEFAULT: RandaugDials = RandaugDials { char_rate: 0.05, word_rate: 0.001 };
    pub const CLOUD_MAX_DEFAULT: RandaugDials = RandaugDials { char_rate: 0.07, word_rate: 0.001 };

    pub fn new(char_rate: f64, word_rate: f64) -> Result<Self> {
        for v in [char_rate, word_rate] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!("randaug rate {v} is outside [0, 1]")));
            }
        }
        Ok(RandaugDials { char_rate, word_rate })
    }

    pub fn scaled(&self, factor: f64) -> RandaugDials {
        RandaugDials { char_rate: tidy(self.char_rate * factor), word_rate: tidy(self.word_rate * factor) }
    }
}

/// Drops float noise below 1e-12 so that e.g. `0.07 · 0.1` is stored as `0.007`.
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// The phoneme inventory and table, with precomputed admissible sound-change targets.
///
/// A target is admissible for a source phoneme when it is a radius-1 neighbor and the table
/// can write it back in every form the source is written in.
#[derive(Debug, Clone)]
pub struct PhonemeSpace {
    inventory: PhonemeInventory,
    g2p: GraphemePhonemeTable,
    targets: HashMap<String, Vec<String>>,
}

impl PhonemeSpace {
    pub fn new(inventory: PhonemeInventory, g2p: GraphemePhonemeTable) -> Result<Self> {
        g2p.check_against(&inventory)?;
        let mut targets = HashMap::new();
        for sym in g2p.phoneme_symbols() {
            let mut required = g2p.inverse_variants(sym);
            if required.is_empty() {
                required.push(Variant::Default);
            }
            let p = inventory.get(sym).expect("checked against inventory");
            let cands: Vec<String> = phonetic_neighbors(p, &inventory, 1)?
                .into_iter()
                .filter(|q| {
                    let have = g2p.inverse_variants(&q.symbol);
                    required.iter().all(|v| have.contains(v))
                })
                .map(|q| q.symbol.clone())
                .collect();
            targets.insert(sym.to_string(), cands);
        }
        Ok(PhonemeSpace { inventory, g2p, targets })
    }

    pub fn inventory(&self) -> &PhonemeInventory {
        &self.inventory
    }

    pub fn g2p(&self) -> &GraphemePhonemeTable {
        &self.g2p
    }

    /// Admissible targets for `symbol`, ordered by symbol. Empty for unknown symbols.
    pub fn targets(&self, symbol: &str) -> &[String] {
        self.targets.get(symbol).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Writes segments back to text. Segments whose symbol was not replaced keep their source
    /// text; replaced ones go through the inverse table in their original form.
    fn render(&self, segments: &[Segment], replaced: &[Option<&str>]) -> String {
        let mut out = String::new();
        for (seg, rep) in segments.iter().zip(replaced) {
            match (seg, rep) {
                (Segment::Phoneme { variant, .. }, Some(target)) => out.push_str(
                    self.g2p.grapheme_for(target, *variant).expect("targets are writable in the source form"),
                ),
                _ => out.push_str(seg.source()),
            }
        }
        out
    }
}

/// Everything the noisers read from the HRL side.
#[derive(Debug, Clone)]
pub struct Resources {
    pub space: PhonemeSpace,
    pub suffixes: SuffixInventory,
    pub function_words: FunctionWordList,
    pub charlm: CharNgramModel,
    pub vocab: Vocabulary,
}

impl Resources {
    pub fn new(
        inventory: PhonemeInventory,
        g2p: GraphemePhonemeTable,
        suffixes: SuffixInventory,
        function_words: FunctionWordList,
        charlm: CharNgramModel,
        vocab: Vocabulary,
    ) -> Result<Self> {
        Ok(Resources { space: PhonemeSpace::new(inventory, g2p)?, suffixes, function_words, charlm, vocab })
    }

    pub fn g2p(&self) -> &GraphemePhonemeTable {
        self.space.g2p()
    }
}

/// Replaces each phoneme of `unit` with probability `dial` by a uniformly chosen admissible
/// neighbor. Residues are never touched; the result may equal the input.
pub fn noise_unit_phonologically<R: Rng + ?Sized>(
    unit: &str,
    dial: f64,
    space: &PhonemeSpace,
    rng: &mut R,
) -> String {
    let segments = space.g2p().to_phonemes(unit);
    let mut replaced: Vec<Option<&str>> = vec![None; segments.len()];
    let mut any = false;
    for (seg, slot) in segments.iter().zip(replaced.iter_mut()) {
        if let Segment::Phoneme { symbol, .. } = seg {
            let hit = rng.gen::<f64>() < dial;
            let cands = space.targets(symbol);
            if hit && !cands.is_empty() {
                *slot = Some(cands[rng.gen_range(0..cands.len())].as_str());
                any = true;
            }
        }
    }
    if any {
        space.render(&segments, &replaced)
    } else {
        unit.to_string()
    }
}

/// One synthetic dialect: the frozen map of changes from the HRL.
#[derive(Debug)]
pub struct ArtificialLanguage {
    dials: NoiseDials,
    seed: u64,
    phoneme_map: BTreeMap<String, String>,
    suffix_map: BTreeMap<String, String>,
    /// `suffix_map` keys, longest first.
    suffix_order: Vec<String>,
    function_word_map: BTreeMap<String, String>,
    /// Lazily filled: `Some(non-word)` or `None` for words that stay unchanged.
    content_words: RwLock<BTreeMap<String, Option<String>>>,
}

impl Clone for ArtificialLanguage {
    fn clone(&self) -> Self {
        ArtificialLanguage {
            dials: self.dials,
            seed: self.seed,
            phoneme_map: self.phoneme_map.clone(),
            suffix_map: self.suffix_map.clone(),
            suffix_order: self.suffix_order.clone(),
            function_word_map: self.function_word_map.clone(),
            content_words: RwLock::new(self.content_words.read().unwrap().clone()),
        }
    }
}

impl PartialEq for ArtificialLanguage {
    fn eq(&self, other: &Self) -> bool {
        self.dials == other.dials
            && self.seed == other.seed
            && self.phoneme_map == other.phoneme_map
            && self.suffix_map == other.suffix_map
            && self.function_word_map == other.function_word_map
            && self.content_changes() == other.content_changes()
    }
}

fn suffix_order(map: &BTreeMap<String, String>) -> Vec<String> {
    let mut keys: Vec<String> = map.keys().cloned().collect();
    keys.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then_with(|| a.cmp(b)));
    keys
}

/// Samples an artificial language at `dials`.
pub fn sample_language(dials: NoiseDials, resources: &Resources, seed: u64) -> Result<ArtificialLanguage> {
    dials.validate()?;
    let space = &resources.space;

    let mut phoneme_map = BTreeMap::new();
    for sym in space.g2p().phoneme_symbols() {
        let mut rng = seed::rng_for(seed, &["phoneme", sym]);
        if rng.gen::<f64>() < dials.phonological {
            let cands = space.targets(sym);
            if !cands.is_empty() {
                phoneme_map.insert(sym.to_string(), cands[rng.gen_range(0..cands.len())].clone());
            }
        }
    }

    let mut suffix_map = BTreeMap::new();
    for suffix in resources.suffixes.iter() {
        let mut rng = seed::rng_for(seed, &["suffix", suffix]);
        if rng.gen::<f64>() < dials.morphological {
            let target = noise_unit_phonologically(suffix, INTERNAL_DIAL, space, &mut rng);
            if target != suffix {
                suffix_map.insert(suffix.to_string(), target);
            }
        }
    }

    let mut function_word_map = BTreeMap::new();
    for word in &resources.function_words.words {
        let mut rng = seed::rng_for(seed, &["function", word]);
        if rng.gen::<f64>() < dials.function {
            let target = noise_unit_phonologically(word, INTERNAL_DIAL, space, &mut rng);
            if target != *word {
                function_word_map.insert(word.clone(), target);
            }
        }
    }

    Ok(ArtificialLanguage {
        dials,
        seed,
        suffix_order: suffix_order(&suffix_map),
        phoneme_map,
        suffix_map,
        function_word_map,
        content_words: RwLock::new(BTreeMap::new()),
    })
}

impl ArtificialLanguage {
    pub fn dials(&self) -> NoiseDials {
        self.dials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn phoneme_map(&self) -> &BTreeMap<String, String> {
        &self.phoneme_map
    }

    pub fn suffix_map(&self) -> &BTreeMap<String, String> {
        &self.suffix_map
    }

    pub fn function_word_map(&self) -> &BTreeMap<String, String> {
        &self.function_word_map
    }

    /// Recorded content-word replacements (identity decisions omitted).
    pub fn content_changes(&self) -> BTreeMap<String, String> {
        self.content_words
            .read()
            .unwrap()
            .iter()
            .filter_map(|(w, d)| d.as_ref().map(|nw| (w.clone(), nw.clone())))
            .collect()
    }

    /// Whether the content coin for `word` (case-folded) comes up.
    pub fn content_selected(&self, word: &str) -> bool {
        seed::unit_coin(self.seed, &["content-coin", word]) < self.dials.content
    }

    /// The content-word decision for `word`, recorded on first use. Concurrent first uses
    /// agree because the decision depends only on `(seed, word)`.
    pub fn content_decision(&self, word: &str, resources: &Resources) -> Option<String> {
        if let Some(d) = self.content_words.read().unwrap().get(word) {
            return d.clone();
        }
        let decision = self.content_selected(word).then(|| {
            let mut rng = seed::rng_for(self.seed, &["content", word]);
            generate_nonword(&resources.charlm, word.chars().count(), &resources.vocab, &mut rng)
        });
        self.content_words.write().unwrap().entry(word.to_string()).or_insert(decision).clone()
    }

    /// Longest suffix in the map that leaves a stem of at least two characters.
    pub fn match_suffix(&self, word: &str) -> Option<(&str, &str)> {
        let n = word.chars().count();
        self.suffix_order
            .iter()
            .find(|s| word.ends_with(s.as_str()) && n >= s.chars().count() + MIN_STEM_CHARS)
            .map(|s| (s.as_str(), self.suffix_map[s].as_str()))
    }

    /// Maps every phoneme of `s` through the phoneme map. `None` when nothing changes.
    pub fn map_phonemes(&self, s: &str, space: &PhonemeSpace) -> Option<String> {
        if self.phoneme_map.is_empty() {
            return None;
        }
        let segments = space.g2p().to_phonemes(s);
        let replaced: Vec<Option<&str>> =
            segments.iter().map(|seg| seg.symbol().and_then(|sym| self.phoneme_map.get(sym)).map(String::as_str)).collect();
        replaced.iter().any(Option::is_some).then(|| space.render(&segments, &replaced))
    }

    /// Noises one case-folded word core. `None` means the word is left alone.
    fn noise_core(&self, folded: &str, resources: &Resources) -> Option<String> {
        if resources.function_words.contains(folded) {
            if let Some(target) = self.function_word_map.get(folded) {
                return Some(target.clone());
            }
        } else if let Some(nonword) = self.content_decision(folded, resources) {
            return Some(nonword);
        }
        if let Some((suffix, replacement)) = self.match_suffix(folded) {
            let stem = &folded[..folded.len() - suffix.len()];
            let stem = self.map_phonemes(stem, &resources.space).unwrap_or_else(|| stem.to_string());
            return Some(stem + replacement);
        }
        self.map_phonemes(folded, &resources.space)
    }

    pub fn apply_token(&self, token: &str, resources: &Resources) -> String {
        let d = Detached::new(token);
        if !d.is_word() {
            return token.to_string();
        }
        match self.noise_core(&text::fold(d.core), resources) {
            Some(new) => d.rejoin(&text::restore_case(d.core, &new)),
            None => token.to_string(),
        }
    }

    /// Serializes the language: header, then `[phonemes]`, `[suffixes]`, `[function_words]`
    /// and `[content_words]` sections of `source <TAB> target` lines.
    pub fn to_text(&self) -> String {
        let d = &self.dials;
        let mut s = String::from("# artificial language\n");
        let _ = writeln!(s, "seed\t{}", self.seed);
        let _ = writeln!(s, "dials\t{}\t{}\t{}\t{}", d.phonological, d.morphological, d.function, d.content);
        let sections: [(&str, &BTreeMap<String, String>); 3] = [
            ("phonemes", &self.phoneme_map),
            ("suffixes", &self.suffix_map),
            ("function_words", &self.function_word_map),
        ];
        for (name, map) in sections {
            let _ = writeln!(s, "[{name}]");
            for (k, v) in map {
                let _ = writeln!(s, "{k}\t{v}");
            }
        }
        s.push_str("[content_words]\n");
        for (k, v) in self.content_changes() {
            let _ = writeln!(s, "{k}\t{v}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |no: usize, why: &str| Error::InvalidLanguageFile(format!("line {}: {why}", no + 1));
        let mut seed = None;
        let mut dials = None;
        let mut section: Option<&str> = None;
        let mut maps: [BTreeMap<String, String>; 4] = Default::default();
        for (no, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if !["phonemes", "suffixes", "function_words", "content_words"].contains(&name) {
                    return Err(bad(no, "unknown section"));
                }
                section = Some(name);
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            match section {
                None => match cols.as_slice() {
                    ["seed", v] => seed = Some(v.parse::<u64>().map_err(|_| bad(no, "bad seed"))?),
                    ["dials", p, m, f, c] => {
                        let parse = |v: &str| v.parse::<f64>().map_err(|_| bad(no, "bad dial"));
                        dials = Some(NoiseDials::new(parse(p)?, parse(m)?, parse(f)?, parse(c)?)?);
                    }
                    _ => return Err(bad(no, "unexpected header line")),
                },
                Some(name) => {
                    let [k, v] = cols.as_slice() else {
                        return Err(bad(no, "expected source<TAB>target"));
                    };
                    let idx = ["phonemes", "suffixes", "function_words", "content_words"].iter().position(|n| *n == name).unwrap();
                    maps[idx].insert(k.to_string(), v.to_string());
                }
            }
        }
        let (Some(seed), Some(dials)) = (seed, dials) else {
            return Err(Error::InvalidLanguageFile("missing seed or dials header".into()));
        };
        let [phoneme_map, suffix_map, function_word_map, content] = maps;
        Ok(ArtificialLanguage {
            dials,
            seed,
            suffix_order: suffix_order(&suffix_map),
            phoneme_map,
            suffix_map,
            function_word_map,
            content_words: RwLock::new(content.into_iter().map(|(k, v)| (k, Some(v))).collect()),
        })
    }
}

/// Applies `lang` to one sentence. Whitespace and detached punctuation are preserved.
pub fn apply_language(sentence: &str, lang: &ArtificialLanguage, resources: &Resources) -> String {
    text::map_tokens(sentence, |_, tok| lang.apply_token(tok, resources))
}

/// The random-augmentation baseline: uniform same-script character swaps and uniform word
/// swaps from the source vocabulary.
#[derive(Debug, Clone)]
pub struct Randaug {
    pub dials: RandaugDials,
    alphabet: Vec<char>,
    words: Vec<String>,
}

impl Randaug {
    pub fn new(dials: RandaugDials, alphabet: impl IntoIterator<Item = char>, vocab: &Vocabulary) -> Result<Self> {
        let mut alphabet: Vec<char> = alphabet.into_iter().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(Error::InvalidParameter("randaug needs a nonempty script alphabet".into()));
        }
        Ok(Randaug { dials, alphabet, words: vocab.words().map(str::to_string).collect() })
    }

    pub fn with_dials(&self, dials: RandaugDials) -> Self {
        Randaug { dials, ..self.clone() }
    }

    fn other_word<R: Rng + ?Sized>(&self, folded: &str, rng: &mut R) -> Option<&str> {
        match self.words.binary_search_by(|w| w.as_str().cmp(folded)) {
            Ok(i) if self.words.len() > 1 => {
                let mut j = rng.gen_range(0..self.words.len() - 1);
                if j >= i {
                    j += 1;
                }
                Some(&self.words[j])
            }
            Ok(_) => None,
            Err(_) if !self.words.is_empty() => Some(&self.words[rng.gen_range(0..self.words.len())]),
            Err(_) => None,
        }
    }

    pub fn apply<R: Rng + ?Sized>(&self, sentence: &str, rng: &mut R) -> String {
        text::map_tokens(sentence, |_, tok| {
            let d = Detached::new(tok);
            if !d.is_word() {
                return tok.to_string();
            }
            if rng.gen::<f64>() < self.dials.word_rate {
                if let Some(w) = self.other_word(&text::fold(d.core), rng) {
                    return d.rejoin(&text::restore_case(d.core, w));
                }
            }
            let core: String = d
                .core
                .chars()
                .map(|c| {
                    if c.is_alphabetic() && rng.gen::<f64>() < self.dials.char_rate {
                        self.alphabet[rng.gen_range(0..self.alphabet.len())]
                    } else {
                        c
                    }
                })
                .collect();
            d.rejoin(&core)
        })
    }
}

pub fn apply_randaug<R: Rng + ?Sized>(
    sentence: &str,
    dials: RandaugDials,
    script_alphabet: &[char],
    vocab: &Vocabulary,
    rng: &mut R,
) -> Result<String> {
    Ok(Randaug::new(dials, script_alphabet.iter().copied(), vocab)?.apply(sentence, rng))
}
