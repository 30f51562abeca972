//! Normalization, tokenization and n-gram extraction.
//!
//! Igbo orthography uses dot-below vowels (ọ, ụ, ị) and ṅ, which appear in
//! the wild both precomposed and as base letter plus combining mark. All
//! lexicon terms and document tokens go through [`normalize`] so the two
//! encodings compare equal.

use alloc::string::String;
use alloc::vec::Vec;

use icu_casemap::CaseMapper;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::lexicon::Term;

/// NFC-normalizes and fully case-folds `text`.
///
/// Folding runs on the canonical decomposition so that a precomposed
/// uppercase letter and its decomposed spelling fold identically; the result
/// is recomposed to NFC. Combining marks survive folding untouched.
pub fn normalize(text: &str) -> String {
    let decomposed: String = text.nfd().collect();
    let folded = CaseMapper::new().fold_string(&decomposed);
    folded.nfc().collect()
}

/// One normalized token with its codepoint span in the original text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenStream {
    pub document_id: String,
    pub tokens: Vec<Token>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.text.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("n-gram arity must be 1 or 2, got {0}")]
    UnsupportedArity(usize),
}

fn is_dash(c: char) -> bool {
    matches!(c, '\u{2013}' | '\u{2014}' | '\u{2015}')
}

/// Splits `text` into normalized tokens.
///
/// Tokens are separated by whitespace, by en/em dashes, and by runs of two or
/// more ASCII hyphens. Within each chunk, everything before the first
/// alphanumeric character and after the last one (plus the combining marks
/// attached to it) is stripped, so interior hyphens and apostrophes stay.
/// Offsets are codepoint indices into `text`, end-exclusive.
pub fn tokenize(text: &str, document_id: &str) -> TokenStream {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut chunk_start = 0;
    let mut i = 0;
    while i <= chars.len() {
        let sep_len = match chars.get(i) {
            None => 1,
            Some(&c) if c.is_whitespace() || is_dash(c) => 1,
            Some('-') => {
                let run = chars[i..].iter().take_while(|&&c| c == '-').count();
                if run >= 2 {
                    run
                } else {
                    0
                }
            }
            Some(_) => 0,
        };
        if sep_len == 0 {
            i += 1;
            continue;
        }
        if let Some(token) = trim_chunk(&chars, chunk_start, i) {
            tokens.push(token);
        }
        i += sep_len;
        chunk_start = i;
    }
    TokenStream {
        document_id: String::from(document_id),
        tokens,
    }
}

fn trim_chunk(chars: &[char], start: usize, end: usize) -> Option<Token> {
    let chunk = &chars[start..end];
    let first = chunk.iter().position(|c| c.is_alphanumeric())?;
    let last = chunk.iter().rposition(|c| c.is_alphanumeric())?;
    let marks = chunk[last + 1..]
        .iter()
        .take_while(|&&c| is_combining_mark(c))
        .count();
    let (s, e) = (start + first, start + last + 1 + marks);
    let raw: String = chars[s..e].iter().collect();
    Some(Token {
        text: normalize(&raw),
        start: s,
        end: e,
    })
}

/// Unigrams, adjacent bigrams and skip-bigrams of `stream`, ordered by the
/// position of their first token.
///
/// At each position the unigram comes first, then the adjacent bigram (when
/// `max_arity` is 2), then skip-bigrams with 1..=`skip_window` tokens between
/// the two members, nearest first. Skip-bigrams are only produced when
/// `max_arity` is 2.
pub fn extract_ngrams(
    stream: &TokenStream,
    max_arity: usize,
    skip_window: usize,
) -> Result<Vec<Term>, TextError> {
    if !(1..=2).contains(&max_arity) {
        return Err(TextError::UnsupportedArity(max_arity));
    }
    let toks = &stream.tokens;
    let mut out = Vec::new();
    for (i, tok) in toks.iter().enumerate() {
        out.push(Term::from_normalized(alloc::vec![tok.text.clone()], false));
        if max_arity < 2 {
            continue;
        }
        if let Some(next) = toks.get(i + 1) {
            out.push(Term::from_normalized(
                alloc::vec![tok.text.clone(), next.text.clone()],
                false,
            ));
        }
        for gap in 1..=skip_window {
            let Some(other) = toks.get(i + 1 + gap) else {
                break;
            };
            out.push(Term::from_normalized(
                alloc::vec![tok.text.clone(), other.text.clone()],
                true,
            ));
        }
    }
    Ok(out)
}
