//! D→M adaptation: swap CRL words for their HRL translations.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::Error;
use crate::lexicon::{BilingualLexicon, CrlFunctionWordSet};
use crate::text::{self, Detached};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapMode {
    Func,
    Cont,
    All,
}

impl SwapMode {
    pub const ALL: [SwapMode; 3] = [SwapMode::Func, SwapMode::Cont, SwapMode::All];

    pub fn admits(self, class: WordClass) -> bool {
        match self {
            SwapMode::Func => class == WordClass::Function,
            SwapMode::Cont => class == WordClass::Content,
            SwapMode::All => true,
        }
    }
}

impl fmt::Display for SwapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SwapMode::Func => "func",
            SwapMode::Cont => "cont",
            SwapMode::All => "all",
        })
    }
}

impl FromStr for SwapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "func" => Ok(SwapMode::Func),
            "cont" => Ok(SwapMode::Cont),
            "all" => Ok(SwapMode::All),
            _ => Err(Error::InvalidParameter(format!("unknown swap mode {s:?} (expected func, cont or all)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordClass {
    Function,
    Content,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordClass::Function => "function",
            WordClass::Content => "content",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapRecord {
    /// Line number within the corpus (0 for a single sentence).
    pub line: usize,
    /// Index of the whitespace token within its line.
    pub token: usize,
    pub original: String,
    pub replacement: String,
    pub class: WordClass,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapReport {
    /// Word tokens seen (tokens that are pure punctuation or digits are not words).
    pub total: usize,
    pub swaps: Vec<SwapRecord>,
    /// Mode-eligible word tokens with no lexicon entry.
    pub skipped_unknown: usize,
}

impl SwapReport {
    pub fn swapped(&self) -> usize {
        self.swaps.len()
    }

    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.swapped() as f64 / self.total as f64
        }
    }

    /// `mode total swapped rate skipped_unknown`, header line included.
    pub fn summary_tsv(&self, mode: SwapMode) -> String {
        format!(
            "mode\ttotal\tswapped\trate\tskipped_unknown\n{mode}\t{}\t{}\t{:.6}\t{}\n",
            self.total,
            self.swapped(),
            self.rate(),
            self.skipped_unknown
        )
    }

    /// One line per swap: `line token original replacement class`.
    pub fn trace_tsv(&self) -> String {
        let mut s = String::from("line\ttoken\toriginal\treplacement\tclass\n");
        for r in &self.swaps {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", r.line, r.token, r.original, r.replacement, r.class);
        }
        s
    }
}

pub fn classify(folded: &str, crl_funcs: &CrlFunctionWordSet) -> WordClass {
    if crl_funcs.contains(folded) {
        WordClass::Function
    } else {
        WordClass::Content
    }
}

fn swap_line(
    line_no: usize,
    sentence: &str,
    lex: &BilingualLexicon,
    crl_funcs: &CrlFunctionWordSet,
    mode: SwapMode,
    report: &mut SwapReport,
) -> String {
    text::map_tokens(sentence, |index, token| {
        let d = Detached::new(token);
        if !d.is_word() {
            return token.to_string();
        }
        report.total += 1;
        let folded = text::fold(d.core);
        let class = classify(&folded, crl_funcs);
        if !mode.admits(class) {
            return token.to_string();
        }
        let Some(translation) = lex.lookup(&folded) else {
            report.skipped_unknown += 1;
            return token.to_string();
        };
        let swapped = if translation.hrl == folded {
            token.to_string()
        } else {
            d.rejoin(&text::restore_case(d.core, &translation.hrl))
        };
        report.swaps.push(SwapRecord {
            line: line_no,
            token: index,
            original: d.core.to_string(),
            replacement: translation.hrl.clone(),
            class,
        });
        swapped
    })
}

pub fn swap_sentence(
    sentence: &str,
    lex: &BilingualLexicon,
    crl_funcs: &CrlFunctionWordSet,
    mode: SwapMode,
) -> (String, SwapReport) {
    let mut report = SwapReport::default();
    let out = swap_line(0, sentence, lex, crl_funcs, mode, &mut report);
    (out, report)
}

/// Swaps every line in parallel; the aggregate report lists swaps in line order.
pub fn swap_corpus<S: AsRef<str> + Sync>(
    lines: &[S],
    lex: &BilingualLexicon,
    crl_funcs: &CrlFunctionWordSet,
    mode: SwapMode,
) -> (Vec<String>, SwapReport) {
    let per_line: Vec<(String, SwapReport)> = lines
        .par_iter()
        .enumerate()
        .map(|(i, line)| {
            let mut report = SwapReport::default();
            let out = swap_line(i, line.as_ref(), lex, crl_funcs, mode, &mut report);
            (out, report)
        })
        .collect();
    let mut total = SwapReport::default();
    let mut out = Vec::with_capacity(per_line.len());
    for (line, report) in per_line {
        out.push(line);
        total.total += report.total;
        total.skipped_unknown += report.skipped_unknown;
        total.swaps.extend(report.swaps);
    }
    (out, total)
}
