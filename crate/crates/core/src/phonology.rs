//! Script↔IPA transduction and the phonetic feature space used to pick plausible sound
//! changes.
//!
//! Tables map orthographic units, not true phonology. A table line is
//! `grapheme <TAB> ipa [<TAB> flag]` where `flag` is `oneway` (used only when reading text)
//! or `standalone` (the inverse used for segments that were read from that grapheme form,
//! e.g. independent vowel letters in an abugida). Matching is greedy longest-grapheme-first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhonemeClass {
    Consonant,
    Vowel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Features {
    Consonant { voiced: bool, place: String, manner: String },
    Vowel { height: String, backness: String, rounded: bool },
}

impl Features {
    pub fn class(&self) -> PhonemeClass {
        match self {
            Features::Consonant { .. } => PhonemeClass::Consonant,
            Features::Vowel { .. } => PhonemeClass::Vowel,
        }
    }

    /// Hamming distance over the three features, or `None` across classes.
    pub fn distance(&self, other: &Features) -> Option<usize> {
        match (self, other) {
            (
                Features::Consonant { voiced: v1, place: p1, manner: m1 },
                Features::Consonant { voiced: v2, place: p2, manner: m2 },
            ) => Some((v1 != v2) as usize + (p1 != p2) as usize + (m1 != m2) as usize),
            (
                Features::Vowel { height: h1, backness: b1, rounded: r1 },
                Features::Vowel { height: h2, backness: b2, rounded: r2 },
            ) => Some((h1 != h2) as usize + (b1 != b2) as usize + (r1 != r2) as usize),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phoneme {
    pub symbol: String,
    pub features: Features,
}

impl Phoneme {
    pub fn consonant(symbol: &str, voiced: bool, place: &str, manner: &str) -> Self {
        Phoneme {
            symbol: symbol.to_string(),
            features: Features::Consonant {
                voiced,
                place: place.to_string(),
                manner: manner.to_string(),
            },
        }
    }

    pub fn vowel(symbol: &str, height: &str, backness: &str, rounded: bool) -> Self {
        Phoneme {
            symbol: symbol.to_string(),
            features: Features::Vowel {
                height: height.to_string(),
                backness: backness.to_string(),
                rounded,
            },
        }
    }

    pub fn class(&self) -> PhonemeClass {
        self.features.class()
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "/{}/", self.symbol)
    }
}

#[derive(Debug, Clone)]
pub struct PhonemeInventory {
    phonemes: Vec<Phoneme>,
    index: HashMap<String, usize>,
}

impl PhonemeInventory {
    pub fn new(mut phonemes: Vec<Phoneme>) -> Result<Self> {
        phonemes.sort_by(|a, b| a.symbol.cmp(&b.symbol));
        let mut index = HashMap::with_capacity(phonemes.len());
        for (i, p) in phonemes.iter().enumerate() {
            if p.symbol.is_empty() {
                return Err(Error::InvalidInventory("empty phoneme symbol".into()));
            }
            if index.insert(p.symbol.clone(), i).is_some() {
                return Err(Error::InvalidInventory(format!("duplicate symbol /{}/", p.symbol)));
            }
        }
        for class in [PhonemeClass::Consonant, PhonemeClass::Vowel] {
            if !phonemes.iter().any(|p| p.class() == class) {
                return Err(Error::InvalidInventory(format!("no {class:?} phonemes")));
            }
        }
        Ok(PhonemeInventory { phonemes, index })
    }

    /// Parses `symbol <TAB> class <TAB> f1 <TAB> f2 <TAB> f3` lines. Consonant features are
    /// voicing, place, manner; vowel features are height, backness, rounding.
    pub fn parse(text: &str) -> Result<Self> {
        let mut phonemes = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 5 {
                return Err(Error::malformed(no + 1, format!("expected 5 columns, got {}", cols.len())));
            }
            let p = match cols[1] {
                "consonant" => {
                    let voiced = match cols[2] {
                        "voiced" => true,
                        "voiceless" => false,
                        v => return Err(Error::malformed(no + 1, format!("bad voicing {v:?}"))),
                    };
                    Phoneme::consonant(cols[0], voiced, cols[3], cols[4])
                }
                "vowel" => {
                    let rounded = match cols[4] {
                        "rounded" => true,
                        "unrounded" => false,
                        r => return Err(Error::malformed(no + 1, format!("bad rounding {r:?}"))),
                    };
                    Phoneme::vowel(cols[0], cols[2], cols[3], rounded)
                }
                c => return Err(Error::malformed(no + 1, format!("bad class {c:?}"))),
            };
            phonemes.push(p);
        }
        Self::new(phonemes)
    }

    /// The shipped inventory covering every shipped table.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../data/phonemes.tsv")).expect("shipped inventory is valid")
    }

    pub fn get(&self, symbol: &str) -> Option<&Phoneme> {
        self.index.get(symbol).map(|&i| &self.phonemes[i])
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index.contains_key(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Phoneme> {
        self.phonemes.iter()
    }

    pub fn len(&self) -> usize {
        self.phonemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phonemes.is_empty()
    }
}

/// Same-class phonemes within Hamming distance `radius` of `p`, excluding `p`, ordered by
/// symbol.
pub fn phonetic_neighbors<'a>(
    p: &Phoneme,
    inv: &'a PhonemeInventory,
    radius: usize,
) -> Result<Vec<&'a Phoneme>> {
    if !inv.contains(&p.symbol) {
        return Err(Error::PhonemeNotInInventory(p.symbol.clone()));
    }
    if radius == 0 {
        return Err(Error::InvalidParameter("neighbor radius must be at least 1".into()));
    }
    Ok(inv
        .iter()
        .filter(|q| q.symbol != p.symbol)
        .filter(|q| p.features.distance(&q.features).is_some_and(|d| d <= radius))
        .collect())
}

/// Which inverse a phoneme segment should use when written back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Default,
    Standalone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairKind {
    Bijective,
    Standalone,
    OneWay,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphemePair {
    pub grapheme: String,
    pub phoneme: String,
    pub kind: PairKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Phoneme { symbol: String, source: String, variant: Variant },
    Residue(String),
}

impl Segment {
    pub fn phoneme(symbol: &str) -> Self {
        Segment::Phoneme { symbol: symbol.to_string(), source: String::new(), variant: Variant::Default }
    }

    /// The input text this segment was read from (empty for constructed segments).
    pub fn source(&self) -> &str {
        match self {
            Segment::Phoneme { source, .. } => source,
            Segment::Residue(s) => s,
        }
    }

    pub fn symbol(&self) -> Option<&str> {
        match self {
            Segment::Phoneme { symbol, .. } => Some(symbol),
            Segment::Residue(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphemePhonemeTable {
    script_id: String,
    pairs: Vec<GraphemePair>,
    forward: HashMap<String, usize>,
    inverse: HashMap<(String, Variant), usize>,
    max_grapheme_chars: usize,
}

pub const BUILTIN_SCRIPTS: &[&str] = &["arabic", "cyrillic", "devanagari", "latin"];

impl GraphemePhonemeTable {
    pub fn new(script_id: &str, mut pairs: Vec<GraphemePair>) -> Result<Self> {
        // longest grapheme first; ties by grapheme so the order is total
        pairs.sort_by(|a, b| {
            b.grapheme.chars().count().cmp(&a.grapheme.chars().count()).then_with(|| a.grapheme.cmp(&b.grapheme))
        });
        let mut forward = HashMap::new();
        let mut inverse = HashMap::new();
        for (i, pair) in pairs.iter().enumerate() {
            if pair.grapheme.is_empty() || pair.phoneme.is_empty() {
                return Err(Error::InvalidTable("empty grapheme or phoneme".into()));
            }
            if forward.insert(pair.grapheme.clone(), i).is_some() {
                return Err(Error::InvalidTable(format!("duplicate grapheme {:?}", pair.grapheme)));
            }
            let variant = match pair.kind {
                PairKind::Bijective => Variant::Default,
                PairKind::Standalone => Variant::Standalone,
                PairKind::OneWay => continue,
            };
            if inverse.insert((pair.phoneme.clone(), variant), i).is_some() {
                return Err(Error::InvalidTable(format!(
                    "phoneme /{}/ has two {variant:?} graphemes",
                    pair.phoneme
                )));
            }
        }
        let max_grapheme_chars = pairs.iter().map(|p| p.grapheme.chars().count()).max().unwrap_or(0);
        Ok(GraphemePhonemeTable { script_id: script_id.to_string(), pairs, forward, inverse, max_grapheme_chars })
    }

    pub fn parse(script_id: &str, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let kind = match cols.as_slice() {
                [_, _] => PairKind::Bijective,
                [_, _, "oneway"] => PairKind::OneWay,
                [_, _, "standalone"] => PairKind::Standalone,
                [_, _, flag] => return Err(Error::malformed(no + 1, format!("unknown flag {flag:?}"))),
                _ => return Err(Error::malformed(no + 1, format!("expected 2 or 3 columns, got {}", cols.len()))),
            };
            pairs.push(GraphemePair { grapheme: cols[0].to_string(), phoneme: cols[1].to_string(), kind });
        }
        Self::new(script_id, pairs)
    }

    pub fn builtin(script: &str) -> Option<Self> {
        let text = match script {
            "arabic" => include_str!("../data/arabic.tsv"),
            "cyrillic" => include_str!("../data/cyrillic.tsv"),
            "devanagari" => include_str!("../data/devanagari.tsv"),
            "latin" => include_str!("../data/latin.tsv"),
            _ => return None,
        };
        Some(Self::parse(script, text).expect("shipped table is valid"))
    }

    /// Round-trip test vocabulary shipped with each builtin table.
    pub fn builtin_test_words(script: &str) -> Option<&'static str> {
        match script {
            "arabic" => Some(include_str!("../data/arabic.words")),
            "cyrillic" => Some(include_str!("../data/cyrillic.words")),
            "devanagari" => Some(include_str!("../data/devanagari.words")),
            "latin" => Some(include_str!("../data/latin.words")),
            _ => None,
        }
    }

    pub fn script_id(&self) -> &str {
        &self.script_id
    }

    pub fn pairs(&self) -> &[GraphemePair] {
        &self.pairs
    }

    /// Every phoneme symbol the table can produce.
    pub fn phoneme_symbols(&self) -> BTreeSet<&str> {
        self.pairs.iter().map(|p| p.phoneme.as_str()).collect()
    }

    /// Fails with `ResourceMismatch` if the table produces a phoneme the inventory lacks.
    pub fn check_against(&self, inv: &PhonemeInventory) -> Result<()> {
        let missing: Vec<&str> = self.phoneme_symbols().into_iter().filter(|s| !inv.contains(s)).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::ResourceMismatch(format!(
                "table {:?} produces phonemes missing from the inventory: {}",
                self.script_id,
                missing.join(" ")
            )))
        }
    }

    pub fn grapheme_for(&self, symbol: &str, variant: Variant) -> Option<&str> {
        let lookup = |v: Variant| self.inverse.get(&(symbol.to_string(), v)).map(|&i| self.pairs[i].grapheme.as_str());
        match variant {
            Variant::Default => lookup(Variant::Default),
            Variant::Standalone => lookup(Variant::Standalone).or_else(|| lookup(Variant::Default)),
        }
    }

    /// Variants for which `symbol` has its own inverse grapheme (no fallback).
    pub fn inverse_variants(&self, symbol: &str) -> Vec<Variant> {
        [Variant::Default, Variant::Standalone]
            .into_iter()
            .filter(|&v| self.inverse.contains_key(&(symbol.to_string(), v)))
            .collect()
    }

    /// Greedy longest-match transduction. Characters no grapheme covers become residue.
    pub fn to_phonemes(&self, text: &str) -> Vec<Segment> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let byte_at = |ci: usize| chars.get(ci).map(|&(b, _)| b).unwrap_or(text.len());
        let mut segments = Vec::new();
        let mut residue = String::new();
        let mut i = 0;
        while i < chars.len() {
            let longest = self.max_grapheme_chars.min(chars.len() - i);
            let matched = (1..=longest).rev().find_map(|len| {
                let candidate = &text[byte_at(i)..byte_at(i + len)];
                self.forward.get(candidate).map(|&pi| (len, pi))
            });
            match matched {
                Some((len, pi)) => {
                    if !residue.is_empty() {
                        segments.push(Segment::Residue(std::mem::take(&mut residue)));
                    }
                    let pair = &self.pairs[pi];
                    let variant = match pair.kind {
                        PairKind::Standalone => Variant::Standalone,
                        _ => Variant::Default,
                    };
                    segments.push(Segment::Phoneme {
                        symbol: pair.phoneme.clone(),
                        source: pair.grapheme.clone(),
                        variant,
                    });
                    i += len;
                }
                None => {
                    residue.push(chars[i].1);
                    i += 1;
                }
            }
        }
        if !residue.is_empty() {
            segments.push(Segment::Residue(residue));
        }
        segments
    }

    /// Writes segments back through the inverse table. Residues are copied verbatim.
    pub fn from_phonemes(&self, segments: &[Segment]) -> Result<String> {
        let mut out = String::new();
        for seg in segments {
            match seg {
                Segment::Residue(s) => out.push_str(s),
                Segment::Phoneme { symbol, variant, .. } => out.push_str(
                    self.grapheme_for(symbol, *variant).ok_or_else(|| Error::UnmappedPhoneme(symbol.clone()))?,
                ),
            }
        }
        Ok(out)
    }
}
