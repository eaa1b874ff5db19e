//! Whitespace tokenization with punctuation detachment and case handling shared by the
//! noisers, the swapper and the metrics.

/// A run of the input line: either whitespace or a whitespace-free token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece<'a> {
    Space(&'a str),
    Token(&'a str),
}

/// Splits `line` into alternating whitespace and token pieces. Concatenating the pieces
/// reproduces `line` exactly.
pub fn pieces(line: &str) -> Vec<Piece<'_>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut in_space: Option<bool> = None;
    for (i, c) in line.char_indices() {
        let space = c.is_whitespace();
        match in_space {
            Some(prev) if prev != space => {
                out.push(make_piece(&line[start..i], prev));
                start = i;
            }
            _ => {}
        }
        in_space = Some(space);
    }
    if let Some(prev) = in_space {
        out.push(make_piece(&line[start..], prev));
    }
    out
}

fn make_piece(s: &str, space: bool) -> Piece<'_> {
    if space {
        Piece::Space(s)
    } else {
        Piece::Token(s)
    }
}

/// Applies `f` to every token of `line`, leaving whitespace untouched.
pub fn map_tokens(line: &str, mut f: impl FnMut(usize, &str) -> String) -> String {
    let mut out = String::with_capacity(line.len());
    let mut index = 0;
    for piece in pieces(line) {
        match piece {
            Piece::Space(s) => out.push_str(s),
            Piece::Token(t) => {
                out.push_str(&f(index, t));
                index += 1;
            }
        }
    }
    out
}

/// A token split into leading punctuation, word core and trailing punctuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Detached<'a> {
    pub lead: &'a str,
    pub core: &'a str,
    pub trail: &'a str,
}

impl<'a> Detached<'a> {
    pub fn new(token: &'a str) -> Self {
        let start = token
            .char_indices()
            .find(|&(_, c)| is_word_char(c))
            .map(|(i, _)| i)
            .unwrap_or(token.len());
        let end = token
            .char_indices()
            .rev()
            .find(|&(_, c)| is_word_char(c))
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(start);
        Detached { lead: &token[..start], core: &token[start..end], trail: &token[end..] }
    }

    /// True when the core carries at least one alphabetic character.
    pub fn is_word(&self) -> bool {
        self.core.chars().any(char::is_alphabetic)
    }

    pub fn rejoin(&self, core: &str) -> String {
        let mut s = String::with_capacity(self.lead.len() + core.len() + self.trail.len());
        s.push_str(self.lead);
        s.push_str(core);
        s.push_str(self.trail);
        s
    }
}

/// Letters, digits and combining marks of the scripts we ship tables for.
pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
        || matches!(c as u32,
            0x0300..=0x036F   // combining diacritics
            | 0x0483..=0x0489 // Cyrillic combining
            | 0x0610..=0x061A | 0x064B..=0x065F | 0x0670 // Arabic marks
            | 0x0900..=0x0903 | 0x093A..=0x094F | 0x0951..=0x0957 | 0x0962..=0x0963 // Devanagari signs
        )
}

pub fn fold(s: &str) -> String {
    s.to_lowercase()
}

pub fn starts_uppercase(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

pub fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Carries the initial-capital pattern of `original` over to `replacement`.
pub fn restore_case(original: &str, replacement: &str) -> String {
    if starts_uppercase(original) {
        capitalize_first(replacement)
    } else {
        replacement.to_string()
    }
}

/// Case-folded word cores of a line, in order. Pure punctuation tokens are dropped.
pub fn word_cores(line: &str) -> impl Iterator<Item = String> + '_ {
    line.split_whitespace().filter_map(|t| {
        let d = Detached::new(t);
        d.is_word().then(|| fold(d.core))
    })
}
