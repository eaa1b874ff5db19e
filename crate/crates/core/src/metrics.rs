//! chrF proximity, noise-rate reports and function-word shares.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::noisers::{ArtificialLanguage, Dimension, Resources, MIN_STEM_CHARS};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChrfParams {
    pub max_n: usize,
    pub beta: f64,
}

impl Default for ChrfParams {
    fn default() -> Self {
        ChrfParams { max_n: 6, beta: 2.0 }
    }
}

impl ChrfParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(Error::InvalidParameter("chrF order must be at least 1".into()));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("chrF beta must be positive, got {}", self.beta)));
        }
        Ok(())
    }
}

/// Clipped match count and n-gram totals for one order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct NgramStats {
    matched: usize,
    hyp: usize,
    reference: usize,
}

fn ngram_counts(chars: &[char], n: usize) -> HashMap<&[char], usize> {
    let mut counts = HashMap::new();
    if chars.len() >= n {
        for w in chars.windows(n) {
            *counts.entry(w).or_default() += 1;
        }
    }
    counts
}

fn sentence_stats(hyp: &str, reference: &str, max_n: usize) -> Vec<NgramStats> {
    let h: Vec<char> = hyp.chars().filter(|c| !c.is_whitespace()).collect();
    let r: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
    (1..=max_n)
        .map(|n| {
            let hc = ngram_counts(&h, n);
            let rc = ngram_counts(&r, n);
            let matched = hc.iter().map(|(g, &c)| c.min(rc.get(g).copied().unwrap_or(0))).sum();
            NgramStats { matched, hyp: h.len().saturating_sub(n - 1), reference: r.len().saturating_sub(n - 1) }
        })
        .collect()
}

fn score(stats: &[NgramStats], beta: f64) -> Result<f64> {
    let b2 = beta * beta;
    let fs: Vec<f64> = stats
        .iter()
        .filter(|s| s.hyp > 0 || s.reference > 0)
        .map(|s| {
            if s.matched == 0 {
                return 0.0;
            }
            let p = s.matched as f64 / s.hyp as f64;
            let r = s.matched as f64 / s.reference as f64;
            (1.0 + b2) * p * r / (b2 * p + r)
        })
        .collect();
    if fs.is_empty() {
        return Err(Error::BothEmpty);
    }
    Ok(100.0 * fs.iter().sum::<f64>() / fs.len() as f64)
}

/// Character n-gram F-score in [0, 100], whitespace ignored.
pub fn chrf(hypothesis: &str, reference: &str, params: ChrfParams) -> Result<f64> {
    params.validate()?;
    score(&sentence_stats(hypothesis, reference, params.max_n), params.beta)
}

/// Corpus-level chrF: n-gram statistics are pooled over all lines before scoring.
pub fn corpus_chrf<S: AsRef<str>, T: AsRef<str>>(hyps: &[S], refs: &[T], params: ChrfParams) -> Result<f64> {
    params.validate()?;
    if hyps.len() != refs.len() {
        return Err(Error::LengthMismatch { left: hyps.len(), right: refs.len() });
    }
    let mut pooled = vec![NgramStats::default(); params.max_n];
    for (h, r) in hyps.iter().zip(refs) {
        for (acc, s) in pooled.iter_mut().zip(sentence_stats(h.as_ref(), r.as_ref(), params.max_n)) {
            acc.matched += s.matched;
            acc.hyp += s.hyp;
            acc.reference += s.reference;
        }
    }
    score(&pooled, params.beta)
}

/// Levenshtein distance over Unicode scalar values.
pub fn char_edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionRate {
    pub dimension: Dimension,
    pub universe: usize,
    pub changed: usize,
    pub configured: f64,
}

impl DimensionRate {
    pub fn observed(&self) -> f64 {
        if self.universe == 0 {
            0.0
        } else {
            self.changed as f64 / self.universe as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseRateReport {
    pub rows: Vec<DimensionRate>,
}

impl NoiseRateReport {
    pub fn get(&self, dim: Dimension) -> &DimensionRate {
        self.rows.iter().find(|r| r.dimension == dim).expect("all dimensions are reported")
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("dimension\tuniverse\tchanged\tobserved\tconfigured\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{:.6}\t{:.6}",
                r.dimension.short(),
                r.universe,
                r.changed,
                r.observed(),
                r.configured
            );
        }
        s
    }
}

/// Type-level noise rates of `lang` over the units found in `original`.
///
/// Universes: phoneme types with at least one admissible target; inventory suffixes ending
/// some word with a stem of at least two characters; listed function words; all other word
/// types. A unit counts as changed when the language maps it to something else.
pub fn noise_rate_report<S: AsRef<str>, T: AsRef<str>>(
    original: &[S],
    noised: &[T],
    lang: &ArtificialLanguage,
    resources: &Resources,
) -> Result<NoiseRateReport> {
    if original.len() != noised.len() {
        return Err(Error::LengthMismatch { left: original.len(), right: noised.len() });
    }
    let words: BTreeSet<String> = original.iter().flat_map(|l| text::word_cores(l.as_ref()).collect::<Vec<_>>()).collect();

    let space = &resources.space;
    let mut phonemes = BTreeSet::new();
    for w in &words {
        for seg in space.g2p().to_phonemes(w) {
            if let Some(sym) = seg.symbol() {
                if !space.targets(sym).is_empty() {
                    phonemes.insert(sym.to_string());
                }
            }
        }
    }
    let suffixes: BTreeSet<&str> = resources
        .suffixes
        .iter()
        .filter(|s| {
            let len = s.chars().count();
            words.iter().any(|w| w.ends_with(*s) && w.chars().count() >= len + MIN_STEM_CHARS)
        })
        .collect();
    let (function, content): (Vec<&String>, Vec<&String>) =
        words.iter().partition(|w| resources.function_words.contains(w));

    let dials = lang.dials();
    let row = |dimension, universe: usize, changed: usize| DimensionRate {
        dimension,
        universe,
        changed,
        configured: dials.get(dimension),
    };
    Ok(NoiseRateReport {
        rows: vec![
            row(
                Dimension::Phonological,
                phonemes.len(),
                phonemes.iter().filter(|p| lang.phoneme_map().contains_key(*p)).count(),
            ),
            row(
                Dimension::Morphological,
                suffixes.len(),
                suffixes.iter().filter(|s| lang.suffix_map().contains_key(**s)).count(),
            ),
            row(
                Dimension::FunctionWord,
                function.len(),
                function.iter().filter(|w| lang.function_word_map().contains_key(**w)).count(),
            ),
            row(Dimension::ContentWord, content.len(), content.iter().filter(|w| lang.content_selected(w)).count()),
        ],
    })
}

/// Fraction of word tokens whose case-folded core is in `funcset`.
pub fn function_word_share<S: AsRef<str>>(lines: &[S], funcset: &BTreeSet<String>) -> Result<f64> {
    if funcset.is_empty() {
        return Err(Error::InvalidParameter("function-word set is empty".into()));
    }
    let (mut total, mut hits) = (0usize, 0usize);
    for line in lines {
        for w in text::word_cores(line.as_ref()) {
            total += 1;
            hits += usize::from(funcset.contains(&w));
        }
    }
    if total == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(hits as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct transcription of the chrF definition: multiset intersection via sorting.
    fn oracle_chrf(h: &str, r: &str, max_n: usize, beta: f64) -> Option<f64> {
        let grams = |s: &str, n: usize| -> Vec<String> {
            let c: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
            let mut v: Vec<String> = if c.len() >= n { c.windows(n).map(|w| w.iter().collect()).collect() } else { vec![] };
            v.sort();
            v
        };
        let mut fs = vec![];
        for n in 1..=max_n {
            let (hg, mut rg) = (grams(h, n), grams(r, n));
            if hg.is_empty() && rg.is_empty() {
                continue;
            }
            let mut m = 0;
            for g in &hg {
                if let Some(i) = rg.iter().position(|x| x == g) {
                    rg.remove(i);
                    m += 1;
                }
            }
            let (p, rc) = (m as f64 / hg.len().max(1) as f64, m as f64 / grams(r, n).len().max(1) as f64);
            let b2 = beta * beta;
            fs.push(if p + rc == 0.0 { 0.0 } else { (1.0 + b2) * p * rc / (b2 * p + rc) });
        }
        (!fs.is_empty()).then(|| 100.0 * fs.iter().sum::<f64>() / fs.len() as f64)
    }

    fn oracle_lev(a: &[char], b: &[char]) -> usize {
        match (a.split_first(), b.split_first()) {
            (None, _) => b.len(),
            (_, None) => a.len(),
            (Some((x, ar)), Some((y, br))) => {
                let sub = oracle_lev(ar, br) + usize::from(x != y);
                sub.min(oracle_lev(ar, b) + 1).min(oracle_lev(a, br) + 1)
            }
        }
    }

    #[test]
    fn chrf_hand_values() {
        let p = ChrfParams { max_n: 2, beta: 2.0 };
        // unigrams 3/4 both ways, bigrams 2/3 both ways
        let expected = 100.0 * (0.75 + 2.0 / 3.0) / 2.0;
        assert!((chrf("abcd", "abce", p).unwrap() - expected).abs() < 1e-9);
        assert_eq!(format!("{:.2}", chrf("abcd", "abce", p).unwrap()), "70.83");
        assert_eq!(chrf("abc", "xyz", ChrfParams::default()).unwrap(), 0.0);
        assert_eq!(chrf("a b c", "abc", ChrfParams::default()).unwrap(), 100.0);
    }

    #[test]
    fn chrf_errors() {
        assert!(matches!(chrf(" ", "", ChrfParams::default()), Err(Error::BothEmpty)));
        assert_eq!(chrf("", "abc", ChrfParams::default()).unwrap(), 0.0);
        assert!(chrf("a", "a", ChrfParams { max_n: 0, beta: 2.0 }).is_err());
        assert!(chrf("a", "a", ChrfParams { max_n: 2, beta: 0.0 }).is_err());
        assert!(matches!(corpus_chrf(&["a"], &["a", "b"], ChrfParams::default()), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn corpus_chrf_pools_counts() {
        let p = ChrfParams { max_n: 1, beta: 1.0 };
        // line 1: hyp "ab" vs ref "ab" -> 2 matches; line 2: hyp "cdef" vs ref "cx" -> 1 match
        // pooled: P = 3/6, R = 3/4, F1 = 2PR/(P+R) = 0.6
        let s = corpus_chrf(&["ab", "cdef"], &["ab", "cx"], p).unwrap();
        assert!((s - 60.0).abs() < 1e-9, "{s}");
        assert_eq!(corpus_chrf(&["abc", "de"], &["abc", "de"], ChrfParams::default()).unwrap(), 100.0);
        let single = corpus_chrf(&["abcd"], &["abce"], ChrfParams::default()).unwrap();
        assert_eq!(single, chrf("abcd", "abce", ChrfParams::default()).unwrap());
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(char_edit_distance("kitten", "sitting"), 3);
        assert_eq!(char_edit_distance("", "abc"), 3);
        assert_eq!(char_edit_distance("नमस्ते", "नमस्ते"), 0);
    }

    #[test]
    fn function_share() {
        let f: BTreeSet<String> = ["the", "of"].iter().map(|s| s.to_string()).collect();
        assert_eq!(function_word_share(&["The of, the"], &f).unwrap(), 1.0);
        assert_eq!(function_word_share(&["cat dog"], &f).unwrap(), 0.0);
        let mut line = "the ".repeat(40);
        line.push_str(&"cat ".repeat(60));
        assert!((function_word_share(&[line], &f).unwrap() - 0.4).abs() < 1e-12);
        assert!(matches!(function_word_share(&["", "!!"], &f), Err(Error::EmptyCorpus)));
        assert!(function_word_share(&["a"], &BTreeSet::new()).is_err());
    }

    proptest! {
        #[test]
        fn chrf_matches_oracle(h in "[abc ]{0,8}", r in "[abc ]{0,8}", n in 1usize..5, beta in 0.5f64..3.0) {
            let p = ChrfParams { max_n: n, beta };
            match (chrf(&h, &r, p), oracle_chrf(&h, &r, n, beta)) {
                (Ok(a), Some(b)) => prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b),
                (Err(Error::BothEmpty), None) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn chrf_bounds_and_identity(h in "[a-d ]{1,12}", r in "[a-d ]{1,12}") {
            if let Ok(s) = chrf(&h, &r, ChrfParams::default()) {
                prop_assert!((0.0..=100.0).contains(&s));
            }
            if h.chars().any(|c| !c.is_whitespace()) {
                prop_assert_eq!(chrf(&h, &h, ChrfParams::default()).unwrap(), 100.0);
                let spaced: String = h.chars().flat_map(|c| [c, ' ']).collect();
                prop_assert_eq!(chrf(&spaced, &h, ChrfParams::default()).unwrap(), 100.0);
            }
        }

        #[test]
        fn edit_distance_matches_oracle(a in "[ab]{0,6}", b in "[ab]{0,6}") {
            let (ac, bc): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
            prop_assert_eq!(char_edit_distance(&a, &b), oracle_lev(&ac, &bc));
        }
    }
}
