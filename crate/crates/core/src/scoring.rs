//! Lexicon-based document polarity.
//!
//! Matching walks the token stream left to right. At each unconsumed
//! position the longest contiguous lexicon term (arity 2 to 5) starting there
//! wins; failing that, a skip-bigram whose second member lies within the skip
//! window; failing that, a unigram. Matched tokens are consumed, so a phrase
//! never also counts as its individual words.
//!
//! The decision value is the sum of match contributions: `+1`/`-1` for
//! categorical entries, the stored score otherwise. Its sign is the polarity;
//! zero (including no matches at all) is `Neutral`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::lexicon::{Lexicon, Polarity, Term};
use crate::text::{tokenize, TokenStream};
use crate::valence::Valence;

pub const DEFAULT_SKIP_WINDOW: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermMatch {
    pub term: Term,
    /// Index of the first matched token.
    pub token_index: usize,
    /// Codepoint offset of the first matched token in the document.
    pub offset: usize,
    pub contribution: Valence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreResult {
    pub document_id: String,
    pub lexicon_name: String,
    pub positive_count: usize,
    pub negative_count: usize,
    pub valence_sum: Valence,
    pub matches: Vec<TermMatch>,
    pub polarity: Polarity,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("duplicate document id {0:?}")]
    DuplicateDocument(String),
}

/// Matching and scoring with a fixed skip-bigram window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scorer {
    skip_window: usize,
}

impl Default for Scorer {
    fn default() -> Self {
        Scorer {
            skip_window: DEFAULT_SKIP_WINDOW,
        }
    }
}

impl Scorer {
    /// `skip_window` is the largest number of tokens allowed between the two
    /// members of a skip-bigram.
    pub fn new(skip_window: usize) -> Self {
        Scorer { skip_window }
    }

    pub fn skip_window(&self) -> usize {
        self.skip_window
    }

    pub fn match_terms(&self, stream: &TokenStream, lexicon: &Lexicon) -> Vec<TermMatch> {
        let tokens = &stream.tokens;
        let n = tokens.len();
        let longest = lexicon.longest_contiguous_arity();
        let mut consumed = alloc::vec![false; n];
        let mut matches = Vec::new();

        for i in 0..n {
            if consumed[i] {
                continue;
            }
            let free_run = consumed[i..].iter().take_while(|&&c| !c).count();
            let contiguous = (2..=longest.min(free_run)).rev().find_map(|arity| {
                let term = Term::from_normalized(
                    tokens[i..i + arity]
                        .iter()
                        .map(|t| t.text.clone())
                        .collect(),
                    false,
                );
                lexicon.lookup(&term).map(|e| (alloc::vec![i], arity, e))
            });
            let skip = || {
                if !lexicon.has_skip_terms() {
                    return None;
                }
                let last = (i + 1 + self.skip_window).min(n.saturating_sub(1));
                (i + 2..=last).filter(|&j| !consumed[j]).find_map(|j| {
                    let term = Term::from_normalized(
                        alloc::vec![tokens[i].text.clone(), tokens[j].text.clone()],
                        true,
                    );
                    lexicon.lookup(&term).map(|e| (alloc::vec![i, j], 1, e))
                })
            };
            let unigram = || {
                let term = Term::from_normalized(alloc::vec![tokens[i].text.clone()], false);
                lexicon.lookup(&term).map(|e| (alloc::vec![i], 1, e))
            };
            let Some((starts, width, entry)) = contiguous.or_else(skip).or_else(unigram) else {
                continue;
            };
            for s in starts {
                consumed[s..s + width].iter_mut().for_each(|c| *c = true);
            }
            matches.push(TermMatch {
                term: entry.term.clone(),
                token_index: i,
                offset: tokens[i].start,
                contribution: entry.contribution(),
            });
        }
        matches
    }

    pub fn score_stream(&self, stream: &TokenStream, lexicon: &Lexicon) -> ScoreResult {
        let matches = self.match_terms(stream, lexicon);
        let positive_count = matches
            .iter()
            .filter(|m| m.contribution.is_positive())
            .count();
        let negative_count = matches
            .iter()
            .filter(|m| m.contribution.is_negative())
            .count();
        let valence_sum: Valence = matches.iter().map(|m| m.contribution).sum();
        ScoreResult {
            document_id: stream.document_id.clone(),
            lexicon_name: lexicon.name().to_string(),
            positive_count,
            negative_count,
            valence_sum,
            matches,
            polarity: Polarity::from_sign(valence_sum.signum()),
        }
    }

    pub fn score_document(
        &self,
        document: &str,
        document_id: &str,
        lexicon: &Lexicon,
    ) -> ScoreResult {
        self.score_stream(&tokenize(document, document_id), lexicon)
    }

    /// Scores every document, preserving input order. Ids must be distinct.
    pub fn score_corpus(
        &self,
        documents: &[Document],
        lexicon: &Lexicon,
    ) -> Result<Vec<ScoreResult>, ScoreError> {
        ensure_distinct(documents)?;
        Ok(documents
            .iter()
            .map(|d| self.score_document(&d.text, &d.id, lexicon))
            .collect())
    }
}

pub(crate) fn ensure_distinct(documents: &[Document]) -> Result<(), ScoreError> {
    let mut seen = BTreeSet::new();
    for d in documents {
        if !seen.insert(d.id.as_str()) {
            return Err(ScoreError::DuplicateDocument(d.id.clone()));
        }
    }
    Ok(())
}

pub fn score_document(document: &str, document_id: &str, lexicon: &Lexicon) -> ScoreResult {
    Scorer::default().score_document(document, document_id, lexicon)
}

pub fn score_corpus(
    documents: &[Document],
    lexicon: &Lexicon,
) -> Result<Vec<ScoreResult>, ScoreError> {
    Scorer::default().score_corpus(documents, lexicon)
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::lexicon::{parse_categorical, parse_ngram_scored, parse_valenced};
    use alloc::vec;
    use proptest::prelude::*;

    fn matched(result: &ScoreResult) -> Vec<std::string::String> {
        result.matches.iter().map(|m| m.term.to_string()).collect()
    }

    #[test]
    fn longest_match_wins() {
        let lex = parse_categorical("ọma\nọma mma", "", "x", "ig").unwrap();
        let r = score_document("Ọma mma", "d", &lex);
        assert_eq!(matched(&r), ["ọma mma"]);
        assert_eq!(r.positive_count, 1);
    }

    #[test]
    fn repeated_unigram() {
        let lex = parse_categorical("ọma", "", "x", "ig").unwrap();
        let r = score_document("ọma ọma", "d", &lex);
        assert_eq!(matched(&r), ["ọma", "ọma"]);
        assert_eq!(r.matches[1].offset, 4);
        assert_eq!(r.matches[1].token_index, 1);
    }

    #[test]
    fn count_rule_and_ties() {
        let lex = parse_categorical("good\nhappy", "bad", "x", "en").unwrap();
        let r = score_document("good news, happy people, bad weather", "d", &lex);
        assert_eq!((r.positive_count, r.negative_count), (2, 1));
        assert_eq!(r.valence_sum, Valence::from_int(1));
        assert_eq!(r.polarity, Polarity::Positive);

        let r = score_document("nothing to see", "d", &lex);
        assert_eq!(
            (r.positive_count, r.negative_count, r.polarity),
            (0, 0, Polarity::Neutral)
        );
        assert!(r.matches.is_empty());

        let r = score_document("good but bad", "d", &lex);
        assert_eq!(r.polarity, Polarity::Neutral);
    }

    #[test]
    fn valenced_sums_scores() {
        let lex = parse_valenced("happy\t3\nsad\t-2\nterrible\t-3", "afinn", "en").unwrap();
        let r = score_document("happy but sad and terrible", "d", &lex);
        assert_eq!(r.valence_sum, Valence::from_int(-2));
        assert_eq!(r.polarity, Polarity::Negative);
        assert_eq!((r.positive_count, r.negative_count), (1, 2));
    }

    #[test]
    fn skip_bigrams_within_window() {
        let lex =
            parse_ngram_scored("good\t0.9\ngood---news\t-0.5\nnews\t0.1", "nrc", "en").unwrap();
        let near = score_document("good and hopeful news", "d", &lex);
        assert_eq!(matched(&near), ["good---news"]);
        assert_eq!(near.valence_sum, "-0.5".parse().unwrap());

        let far = Scorer::new(1).score_document("good and hopeful news", "d", &lex);
        assert_eq!(matched(&far), ["good", "news"]);

        let none = Scorer::new(0).score_document("good x news", "d", &lex);
        assert_eq!(matched(&none), ["good", "news"]);
    }

    #[test]
    fn contiguous_beats_skip() {
        let lex = parse_ngram_scored("a b\t1\na---c\t5", "nrc", "en").unwrap();
        let r = score_document("a b c", "d", &lex);
        assert_eq!(matched(&r), ["a b"]);
    }

    #[test]
    fn skip_member_not_reused() {
        let lex = parse_ngram_scored("a---c\t1\nb c\t1\nc\t1", "nrc", "en").unwrap();
        // a consumes c via the skip-bigram, so `b c` cannot match afterwards
        let r = score_document("a b c", "d", &lex);
        assert_eq!(matched(&r), ["a---c"]);
    }

    #[test]
    fn corpus_order_and_duplicates() {
        let lex = parse_categorical("good", "bad", "x", "en").unwrap();
        let docs = [Document::new("b", "bad"), Document::new("a", "good")];
        let results = score_corpus(&docs, &lex).unwrap();
        assert_eq!(
            results
                .iter()
                .map(|r| r.document_id.as_str())
                .collect::<Vec<_>>(),
            ["b", "a"]
        );
        assert!(score_corpus(&[], &lex).unwrap().is_empty());

        let dup = [Document::new("a", "x"), Document::new("a", "y")];
        assert_eq!(
            score_corpus(&dup, &lex),
            Err(ScoreError::DuplicateDocument("a".into()))
        );
    }

    fn word() -> impl Strategy<Value = &'static str> {
        prop::sample::select(vec!["ọma", "mma", "njọ", "udo", "agha"])
    }

    proptest! {
        #[test]
        fn appending_positive_never_decreases(
            words in prop::collection::vec(word(), 0..10),
        ) {
            let lex = parse_categorical("ọma\nudo\nọma mma", "njọ\nagha\nmma njọ", "x", "ig").unwrap();
            let base = score_document(&words.join(" "), "d", &lex);
            let extended = score_document(&std::format!("{} udo", words.join(" ")), "d", &lex);
            prop_assert!(extended.valence_sum >= base.valence_sum);
        }

        #[test]
        fn polarity_follows_sign(words in prop::collection::vec(word(), 0..12)) {
            let lex = parse_categorical("ọma\nudo", "njọ\nagha", "x", "ig").unwrap();
            let r = score_document(&words.join(" "), "d", &lex);
            prop_assert_eq!(r.polarity, Polarity::from_sign(r.valence_sum.signum()));
            prop_assert_eq!(r.valence_sum, Valence::from_int(r.positive_count as i32 - r.negative_count as i32));
        }
    }
}
