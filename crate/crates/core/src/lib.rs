//! Sentiment lexicon toolkit for low-resource languages.
//!
//! The crate covers the whole pipeline without touching the filesystem:
//!
//! - [`lexicon`]: lexicon data types, the three source-lexicon text formats
//!   (categorical word lists, integer valence TSV, scored n-gram TSV) and the
//!   canonical target-lexicon TSV.
//! - [`text`]: Unicode normalization (NFC + full case folding), tokenization
//!   with codepoint offsets, n-gram extraction.
//! - [`builder`]: projection of a source lexicon through a bilingual mapping,
//!   and merging of manually curated native entries.
//! - [`scoring`]: leftmost-longest term matching and document polarity.
//! - [`agreement`]: per-document majority agreement and corpus averages.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod agreement;
pub mod builder;
pub mod lexicon;
pub mod scoring;
pub mod text;
mod valence;

pub use agreement::{
    average_agreement, build_report, per_document_agreement, AgreementError, AgreementReport,
    AveragePercent,
};
pub use builder::{
    build_target_lexicon, merge_manual, translate_lexicon, BuildError, BuildReport,
    TranslationMapping,
};
pub use lexicon::{
    parse_canonical, parse_categorical, parse_ngram_scored, parse_valenced, serialize_canonical,
    EntrySource, EntryValue, Lexicon, LexiconEntry, LexiconError, LexiconKind, Polarity, Term,
};
pub use scoring::{
    score_corpus, score_document, Document, ScoreError, ScoreResult, Scorer, TermMatch,
};
pub use text::{extract_ngrams, normalize, tokenize, TextError, Token, TokenStream};
pub use valence::{ParseValenceError, Valence};
