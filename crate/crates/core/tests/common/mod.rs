#![allow(dead_code)]

use dialup::langgen::Bitext;
use dialup::noisers::Resources;
use dialup::phonology::{GraphemePhonemeTable, PhonemeInventory};
use dialup::resources::{extract_suffixes, train_char_ngram, FunctionWordList, SuffixParams, Vocabulary};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FUNCTION_WORDS: &[&str] = &[
    "the", "a", "of", "to", "in", "and", "that", "is", "was", "by", "for", "with", "on", "at", "he", "she", "they",
    "it", "we", "but", "or",
];

const STEMS: &[&str] = &[
    "walk", "talk", "farm", "market", "river", "stone", "light", "play", "build", "teach", "read", "paint", "garden",
    "wonder", "help", "open", "clean", "jump", "climb", "visit", "plant", "call", "answer", "travel", "cook", "listen",
    "remember", "follow", "order", "kind", "slow", "quick", "bright", "soft", "warm", "green", "winter",
    "summer", "teacher", "village", "morning", "evening", "bread", "water", "letter", "window", "forest", "mountain",
];

const SUFFIXES: &[&str] = &["", "", "ed", "ing", "er", "s", "ly", "ness"];

/// Deterministic English-like sentences with capitals and punctuation.
pub fn sentences(n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(4..12);
            let mut words: Vec<String> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        FUNCTION_WORDS.choose(&mut rng).unwrap().to_string()
                    } else {
                        format!("{}{}", STEMS.choose(&mut rng).unwrap(), SUFFIXES.choose(&mut rng).unwrap())
                    }
                })
                .collect();
            words[0] = dialup::text::capitalize_first(&words[0]);
            if rng.gen_bool(0.3) {
                let i = rng.gen_range(0..len - 1);
                words[i].push(',');
            }
            let mut s = words.join(" ");
            s.push(if rng.gen_bool(0.8) { '.' } else { '?' });
            s
        })
        .collect()
}

pub fn bitext(n: usize, seed: u64) -> Bitext {
    let src = sentences(n, seed);
    let tgt = (0..n).map(|i| format!("target {i}")).collect();
    Bitext::from_parallel(src, tgt).unwrap()
}

pub fn latin_resources(corpus: &[String]) -> Resources {
    let vocab = Vocabulary::from_lines(corpus);
    Resources::new(
        PhonemeInventory::builtin(),
        GraphemePhonemeTable::builtin("latin").unwrap(),
        extract_suffixes(&vocab, SuffixParams::default()).unwrap(),
        FunctionWordList::from_words(FUNCTION_WORDS),
        train_char_ngram(&vocab, 3).unwrap(),
        vocab,
    )
    .unwrap()
}
