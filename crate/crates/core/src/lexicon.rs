//! Lexicon data model and text formats.
//!
//! Three source formats are understood:
//!
//! - categorical word lists, one term per line, `;` comments
//!   ([`parse_categorical`]);
//! - integer valence TSV, `term<TAB>score` with scores in `-5..=5`
//!   ([`parse_valenced`]);
//! - scored n-gram TSV, `term<TAB>score[<TAB>...]` where bigrams contain one
//!   space and skip-bigrams use `---` between their members
//!   ([`parse_ngram_scored`]).
//!
//! The canonical format written by [`serialize_canonical`] is a metadata line
//! followed by a column header and one entry per line, sorted by term:
//!
//! ```text
//! #sentilex name=igbosentilex language=ig kind=categorical
//! term	polarity	source	provenance
//! mma	positive	auto-translated	good
//! ```

#![allow(clippy::tabs_in_doc_comments)]

use alloc::boxed::Box;
use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::text::normalize;
use crate::valence::{ParseValenceError, Valence};

/// Longest categorical or valenced term, in tokens.
pub const MAX_TERM_ARITY: usize = 5;
/// Longest term in an n-gram scored lexicon.
pub const MAX_NGRAM_ARITY: usize = 2;
/// Separator between the two members of a skip-bigram.
pub const SKIP_MARKER: &str = "---";
/// Bounds of an integer valence.
pub const VALENCE_RANGE: core::ops::RangeInclusive<i64> = -5..=5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
        }
    }

    /// Sign of a decision value.
    pub fn from_sign(sign: i64) -> Polarity {
        match sign.signum() {
            1 => Polarity::Positive,
            -1 => Polarity::Negative,
            _ => Polarity::Neutral,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            "neutral" => Ok(Polarity::Neutral),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("term has no tokens")]
    Empty,
    #[error("term has {0} tokens, at most {MAX_TERM_ARITY} allowed")]
    TooLong(usize),
    #[error("empty token")]
    EmptyToken,
    #[error("token {0:?} contains whitespace")]
    Whitespace(String),
    #[error("token {0:?} contains the skip marker `---`")]
    ReservedMarker(String),
    #[error("skip-bigram must have exactly two members, got {0}")]
    SkipArity(usize),
}

/// A normalized sequence of 1 to 5 tokens; skip-bigrams carry `skip = true`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    tokens: Vec<String>,
    skip: bool,
}

impl Term {
    /// Builds a contiguous term, normalizing every token.
    pub fn new<I, S>(tokens: I) -> Result<Term, TermError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let tokens = tokens
            .into_iter()
            .map(|t| normalize_token(t.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        match tokens.len() {
            0 => Err(TermError::Empty),
            n if n > MAX_TERM_ARITY => Err(TermError::TooLong(n)),
            _ => Ok(Term {
                tokens,
                skip: false,
            }),
        }
    }

    /// Builds a skip-bigram. Members may not start or end with `-`, which
    /// would make the `---` rendering ambiguous.
    pub fn skip_bigram(first: &str, second: &str) -> Result<Term, TermError> {
        let mut term = Term::new([first, second])?;
        if let Some(t) = term
            .tokens
            .iter()
            .find(|t| t.starts_with('-') || t.ends_with('-'))
        {
            return Err(TermError::ReservedMarker(t.clone()));
        }
        term.skip = true;
        Ok(term)
    }

    /// Normalizes `text` and splits it on whitespace.
    pub fn phrase(text: &str) -> Result<Term, TermError> {
        Term::new(normalize(text).split_whitespace())
    }

    /// Parses the rendered form produced by `Display`: a phrase, or two
    /// tokens joined by `---` for a skip-bigram.
    pub fn parse(text: &str) -> Result<Term, TermError> {
        if !text.contains(SKIP_MARKER) {
            return Term::phrase(text);
        }
        let parts: Vec<&str> = text.split(SKIP_MARKER).collect();
        let members: Vec<Vec<&str>> = parts
            .iter()
            .map(|p| p.split_whitespace().collect())
            .collect();
        let arity: usize = members.iter().map(Vec::len).sum();
        if parts.len() != 2 || arity != 2 || members.iter().any(|m| m.len() != 1) {
            return Err(TermError::SkipArity(arity.max(parts.len())));
        }
        Term::skip_bigram(members[0][0], members[1][0])
    }

    /// Tokens must already be normalized, non-empty and free of whitespace.
    pub(crate) fn from_normalized(tokens: Vec<String>, skip: bool) -> Term {
        debug_assert!(tokens
            .iter()
            .all(|t| normalize_token(t).as_deref() == Ok(t.as_str())));
        Term { tokens, skip }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn arity(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_skip(&self) -> bool {
        self.skip
    }
}

fn normalize_token(raw: &str) -> Result<String, TermError> {
    let token = normalize(raw);
    if token.is_empty() {
        Err(TermError::EmptyToken)
    } else if token.chars().any(char::is_whitespace) {
        Err(TermError::Whitespace(token))
    } else if token.contains(SKIP_MARKER) {
        Err(TermError::ReservedMarker(token))
    } else {
        Ok(token)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.skip { SKIP_MARKER } else { " " };
        for (i, tok) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(tok)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntrySource {
    Imported,
    AutoTranslated,
    ManualNative,
}

impl EntrySource {
    pub fn as_str(self) -> &'static str {
        match self {
            EntrySource::Imported => "imported",
            EntrySource::AutoTranslated => "auto-translated",
            EntrySource::ManualNative => "manual-native",
        }
    }
}

impl FromStr for EntrySource {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "imported" => Ok(EntrySource::Imported),
            "auto-translated" => Ok(EntrySource::AutoTranslated),
            "manual-native" => Ok(EntrySource::ManualNative),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryValue {
    Polarity(Polarity),
    Valence(Valence),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub term: Term,
    pub value: EntryValue,
    pub source: EntrySource,
    /// Source-language word this entry was translated from.
    pub provenance: Option<Term>,
}

impl LexiconEntry {
    pub fn imported(term: Term, value: EntryValue) -> Self {
        LexiconEntry {
            term,
            value,
            source: EntrySource::Imported,
            provenance: None,
        }
    }

    pub fn polarity(&self) -> Option<Polarity> {
        match self.value {
            EntryValue::Polarity(p) => Some(p),
            EntryValue::Valence(_) => None,
        }
    }

    /// Signed contribution of one match: `±1` for polar entries, the valence
    /// otherwise.
    pub fn contribution(&self) -> Valence {
        match self.value {
            EntryValue::Polarity(p) => Valence::from_int(match p {
                Polarity::Positive => 1,
                Polarity::Negative => -1,
                Polarity::Neutral => 0,
            }),
            EntryValue::Valence(v) => v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LexiconKind {
    Categorical,
    Valenced,
    NgramScored,
}

impl LexiconKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LexiconKind::Categorical => "categorical",
            LexiconKind::Valenced => "valenced",
            LexiconKind::NgramScored => "ngram-scored",
        }
    }

    pub fn max_arity(self) -> usize {
        match self {
            LexiconKind::NgramScored => MAX_NGRAM_ARITY,
            _ => MAX_TERM_ARITY,
        }
    }

    fn value_column(self) -> &'static str {
        match self {
            LexiconKind::Categorical => "polarity",
            LexiconKind::Valenced => "valence",
            LexiconKind::NgramScored => "score",
        }
    }
}

impl fmt::Display for LexiconKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LexiconKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "categorical" => Ok(LexiconKind::Categorical),
            "valenced" => Ok(LexiconKind::Valenced),
            "ngram-scored" => Ok(LexiconKind::NgramScored),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("invalid lexicon name {0:?}")]
    InvalidName(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguage(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("term {term:?} listed as both positive and negative (line {line})")]
    OpposingDuplicate { term: String, line: usize },
    #[error("duplicate term {0:?}")]
    DuplicateTerm(String),
    #[error("missing TAB separator")]
    MissingTab,
    #[error("expected {expected} TAB-separated fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("invalid score {text:?}: {reason}")]
    InvalidScore {
        text: String,
        reason: ParseValenceError,
    },
    #[error("valence {0} outside [-5, 5]")]
    ValenceOutOfRange(String),
    #[error("term {term:?} has {arity} tokens, {kind} lexicons allow at most {max}")]
    ArityExceeded {
        term: String,
        arity: usize,
        kind: LexiconKind,
        max: usize,
    },
    #[error("skip-bigram {0:?} is only allowed in ngram-scored lexicons")]
    SkipNotAllowed(String),
    #[error("entry {term:?} does not match {kind} lexicon")]
    KindMismatch { term: String, kind: LexiconKind },
    #[error("neutral polarity cannot be stored for {0:?}")]
    NeutralEntry(String),
    #[error("auto-translated entry {0:?} has no provenance")]
    MissingProvenance(String),
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("unknown source tag {0:?}")]
    UnknownSource(String),
    #[error("unknown polarity {0:?}")]
    UnknownPolarity(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<LexiconError>,
    },
    #[error("{polarity} list: {source}")]
    InList {
        polarity: Polarity,
        #[source]
        source: Box<LexiconError>,
    },
}

impl LexiconError {
    fn at_line(self, line: usize) -> LexiconError {
        LexiconError::AtLine {
            line,
            source: Box::new(self),
        }
    }

    /// 1-based line the error was reported at, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::AtLine { line, .. } | LexiconError::OpposingDuplicate { line, .. } => {
                Some(*line)
            }
            LexiconError::InList { source, .. } => source.line(),
            _ => None,
        }
    }

    /// The innermost error, with line and list context stripped.
    pub fn root(&self) -> &LexiconError {
        match self {
            LexiconError::AtLine { source, .. } | LexiconError::InList { source, .. } => {
                source.root()
            }
            other => other,
        }
    }
}

/// A named, language-tagged set of entries keyed by normalized term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    language: String,
    kind: LexiconKind,
    entries: BTreeMap<Term, LexiconEntry>,
    contiguous_arity: [usize; MAX_TERM_ARITY + 1],
    skip_count: usize,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c.is_control())
}

impl Lexicon {
    pub fn new(name: &str, language: &str, kind: LexiconKind) -> Result<Lexicon, LexiconError> {
        if !valid_name(name) {
            return Err(LexiconError::InvalidName(name.to_string()));
        }
        if language.is_empty()
            || !language
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'-')
        {
            return Err(LexiconError::InvalidLanguage(language.to_string()));
        }
        Ok(Lexicon {
            name: name.to_string(),
            language: language.to_string(),
            kind,
            entries: BTreeMap::new(),
            contiguous_arity: [0; MAX_TERM_ARITY + 1],
            skip_count: 0,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn kind(&self) -> LexiconKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rename(&mut self, name: &str) -> Result<(), LexiconError> {
        if !valid_name(name) {
            return Err(LexiconError::InvalidName(name.to_string()));
        }
        self.name = name.to_string();
        Ok(())
    }

    pub fn lookup(&self, term: &Term) -> Option<&LexiconEntry> {
        self.entries.get(term)
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.entries.contains_key(term)
    }

    /// Entries in term order.
    pub fn entries(&self) -> btree_map::Values<'_, Term, LexiconEntry> {
        self.entries.values()
    }

    /// Longest contiguous (non-skip) term present, 0 when empty.
    pub fn longest_contiguous_arity(&self) -> usize {
        (1..=MAX_TERM_ARITY)
            .rev()
            .find(|&a| self.contiguous_arity[a] > 0)
            .unwrap_or(0)
    }

    pub fn has_skip_terms(&self) -> bool {
        self.skip_count > 0
    }

    fn check(&self, entry: &LexiconEntry) -> Result<(), LexiconError> {
        let term = || entry.term.to_string();
        let arity = entry.term.arity();
        if arity > self.kind.max_arity() {
            return Err(LexiconError::ArityExceeded {
                term: term(),
                arity,
                kind: self.kind,
                max: self.kind.max_arity(),
            });
        }
        if entry.term.is_skip() && self.kind != LexiconKind::NgramScored {
            return Err(LexiconError::SkipNotAllowed(term()));
        }
        match (self.kind, entry.value) {
            (LexiconKind::Categorical, EntryValue::Polarity(Polarity::Neutral)) => {
                return Err(LexiconError::NeutralEntry(term()))
            }
            (LexiconKind::Categorical, EntryValue::Polarity(_)) => {}
            (LexiconKind::Valenced, EntryValue::Valence(v)) => match v.as_int() {
                Some(i) if VALENCE_RANGE.contains(&i) => {}
                _ => return Err(LexiconError::ValenceOutOfRange(v.to_string())),
            },
            (LexiconKind::NgramScored, EntryValue::Valence(_)) => {}
            _ => {
                return Err(LexiconError::KindMismatch {
                    term: term(),
                    kind: self.kind,
                })
            }
        }
        if entry.source == EntrySource::AutoTranslated && entry.provenance.is_none() {
            return Err(LexiconError::MissingProvenance(term()));
        }
        Ok(())
    }

    /// Adds a new entry; fails if the term is already present.
    pub fn insert(&mut self, entry: LexiconEntry) -> Result<(), LexiconError> {
        if self.entries.contains_key(&entry.term) {
            return Err(LexiconError::DuplicateTerm(entry.term.to_string()));
        }
        self.upsert(entry).map(|_| ())
    }

    /// Adds or replaces an entry, returning the replaced one.
    pub fn upsert(&mut self, entry: LexiconEntry) -> Result<Option<LexiconEntry>, LexiconError> {
        self.check(&entry)?;
        let term = entry.term.clone();
        let previous = self.entries.insert(term.clone(), entry);
        if previous.is_none() {
            self.count(&term, true);
        }
        Ok(previous)
    }

    pub fn remove(&mut self, term: &Term) -> Option<LexiconEntry> {
        let removed = self.entries.remove(term);
        if removed.is_some() {
            self.count(term, false);
        }
        removed
    }

    fn count(&mut self, term: &Term, added: bool) {
        let slot = if term.is_skip() {
            &mut self.skip_count
        } else {
            &mut self.contiguous_arity[term.arity()]
        };
        if added {
            *slot += 1;
        } else {
            *slot -= 1;
        }
    }
}

fn decode(bytes: &[u8]) -> Result<&str, LexiconError> {
    let text = core::str::from_utf8(bytes).map_err(|e| LexiconError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(text.strip_prefix('\u{FEFF}').unwrap_or(text))
}

/// Numbered lines, skipping blank ones.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Parses a pair of positive/negative word lists.
///
/// Blank lines and lines starting with `;` are skipped. Repeating a term in
/// the same list is harmless; listing it in both lists is an error.
pub fn parse_categorical(
    positive: impl AsRef<[u8]>,
    negative: impl AsRef<[u8]>,
    name: &str,
    language: &str,
) -> Result<Lexicon, LexiconError> {
    let mut lexicon = Lexicon::new(name, language, LexiconKind::Categorical)?;
    for (polarity, bytes) in [
        (Polarity::Positive, positive.as_ref()),
        (Polarity::Negative, negative.as_ref()),
    ] {
        let in_list = |source: LexiconError| LexiconError::InList {
            polarity,
            source: Box::new(source),
        };
        let text = decode(bytes).map_err(in_list)?;
        for (line, raw) in content_lines(text) {
            let content = raw.trim();
            if content.starts_with(';') {
                continue;
            }
            let term =
                Term::phrase(content).map_err(|e| in_list(LexiconError::from(e).at_line(line)))?;
            if let Some(existing) = lexicon.lookup(&term) {
                if existing.polarity() == Some(polarity) {
                    continue;
                }
                return Err(LexiconError::OpposingDuplicate {
                    term: term.to_string(),
                    line,
                });
            }
            let entry = LexiconEntry::imported(term, EntryValue::Polarity(polarity));
            lexicon
                .insert(entry)
                .map_err(|e| in_list(e.at_line(line)))?;
        }
    }
    Ok(lexicon)
}

/// Parses `term<TAB>integer` lines with integers in `-5..=5`.
pub fn parse_valenced(
    tsv: impl AsRef<[u8]>,
    name: &str,
    language: &str,
) -> Result<Lexicon, LexiconError> {
    let mut lexicon = Lexicon::new(name, language, LexiconKind::Valenced)?;
    for (line, raw) in content_lines(decode(tsv.as_ref())?) {
        let parsed = (|| -> Result<LexiconEntry, LexiconError> {
            let (term, score) = raw.split_once('\t').ok_or(LexiconError::MissingTab)?;
            let score = score.trim();
            let value: Valence = score.parse().map_err(|reason| LexiconError::InvalidScore {
                text: score.to_string(),
                reason,
            })?;
            if value.as_int().is_none() {
                return Err(LexiconError::InvalidScore {
                    text: score.to_string(),
                    reason: ParseValenceError::InvalidDigit,
                });
            }
            Ok(LexiconEntry::imported(
                Term::phrase(term)?,
                EntryValue::Valence(value),
            ))
        })();
        insert_dedup(&mut lexicon, parsed.map_err(|e| e.at_line(line))?, line)?;
    }
    Ok(lexicon)
}

/// Parses `term<TAB>score` lines of an n-gram lexicon. Extra TAB-separated
/// columns (such as occurrence counts) are ignored.
pub fn parse_ngram_scored(
    tsv: impl AsRef<[u8]>,
    name: &str,
    language: &str,
) -> Result<Lexicon, LexiconError> {
    let mut lexicon = Lexicon::new(name, language, LexiconKind::NgramScored)?;
    for (line, raw) in content_lines(decode(tsv.as_ref())?) {
        let parsed = (|| -> Result<LexiconEntry, LexiconError> {
            let mut fields = raw.split('\t');
            let term = fields.next().unwrap_or_default();
            let score = fields.next().ok_or(LexiconError::MissingTab)?.trim();
            let value: Valence = score.parse().map_err(|reason| LexiconError::InvalidScore {
                text: score.to_string(),
                reason,
            })?;
            Ok(LexiconEntry::imported(
                Term::parse(term)?,
                EntryValue::Valence(value),
            ))
        })();
        insert_dedup(&mut lexicon, parsed.map_err(|e| e.at_line(line))?, line)?;
    }
    Ok(lexicon)
}

fn insert_dedup(
    lexicon: &mut Lexicon,
    entry: LexiconEntry,
    line: usize,
) -> Result<(), LexiconError> {
    if let Some(existing) = lexicon.lookup(&entry.term) {
        if existing.value == entry.value {
            return Ok(());
        }
    }
    lexicon.insert(entry).map_err(|e| e.at_line(line))
}

const META_PREFIX: &str = "#sentilex";

fn render_value(value: EntryValue) -> String {
    match value {
        EntryValue::Polarity(p) => p.as_str().to_string(),
        EntryValue::Valence(v) => v.to_string(),
    }
}

/// Writes the canonical TSV form; entries are sorted by rendered term in
/// codepoint order so the output is byte-stable.
pub fn serialize_canonical(lexicon: &Lexicon) -> String {
    let mut out = alloc::format!(
        "{META_PREFIX} name={} language={} kind={}\nterm\t{}\tsource\tprovenance\n",
        lexicon.name,
        lexicon.language,
        lexicon.kind,
        lexicon.kind.value_column(),
    );
    let mut rows: Vec<(String, &LexiconEntry)> =
        lexicon.entries().map(|e| (e.term.to_string(), e)).collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    for (term, entry) in rows {
        out.push_str(&term);
        out.push('\t');
        out.push_str(&render_value(entry.value));
        out.push('\t');
        out.push_str(entry.source.as_str());
        out.push('\t');
        if let Some(p) = &entry.provenance {
            out.push_str(&p.to_string());
        }
        out.push('\n');
    }
    out
}

fn parse_meta(line: &str) -> Result<(String, String, LexiconKind), LexiconError> {
    let bad = |msg: &str| LexiconError::BadHeader(msg.to_string());
    let rest = line
        .strip_prefix(META_PREFIX)
        .ok_or_else(|| bad("expected `#sentilex name=... language=... kind=...`"))?;
    let (mut name, mut language, mut kind) = (None, None, None);
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad("expected key=value"))?;
        let slot = match key {
            "name" => &mut name,
            "language" => &mut language,
            "kind" => &mut kind,
            _ => return Err(bad("unknown metadata key")),
        };
        if slot.replace(value).is_some() {
            return Err(bad("repeated metadata key"));
        }
    }
    let kind = kind
        .ok_or_else(|| bad("missing kind"))?
        .parse()
        .map_err(|_| bad("unknown kind"))?;
    Ok((
        name.ok_or_else(|| bad("missing name"))?.to_string(),
        language.ok_or_else(|| bad("missing language"))?.to_string(),
        kind,
    ))
}

/// Inverse of [`serialize_canonical`]. Blank lines are ignored.
pub fn parse_canonical(text: impl AsRef<[u8]>) -> Result<Lexicon, LexiconError> {
    let text = decode(text.as_ref())?;
    let mut lines = content_lines(text);
    let (meta_line, meta) = lines
        .next()
        .ok_or_else(|| LexiconError::BadHeader("empty input".to_string()).at_line(1))?;
    let (name, language, kind) = parse_meta(meta).map_err(|e| e.at_line(meta_line))?;
    let mut lexicon = Lexicon::new(&name, &language, kind).map_err(|e| e.at_line(meta_line))?;

    let expected = alloc::format!("term\t{}\tsource\tprovenance", kind.value_column());
    match lines.next() {
        Some((_, header)) if header == expected => {}
        Some((line, _)) => {
            return Err(
                LexiconError::BadHeader(alloc::format!("expected {expected:?}")).at_line(line),
            )
        }
        None => {
            return Err(
                LexiconError::BadHeader("missing column header".to_string()).at_line(meta_line + 1)
            )
        }
    }

    for (line, raw) in lines {
        let entry = parse_canonical_row(raw, kind).map_err(|e| e.at_line(line))?;
        lexicon.insert(entry).map_err(|e| e.at_line(line))?;
    }
    Ok(lexicon)
}

fn parse_canonical_row(raw: &str, kind: LexiconKind) -> Result<LexiconEntry, LexiconError> {
    let fields: Vec<&str> = raw.split('\t').collect();
    let [term, value, source, provenance] = fields[..] else {
        return Err(LexiconError::FieldCount {
            expected: 4,
            found: fields.len(),
        });
    };
    let value = match kind {
        LexiconKind::Categorical => EntryValue::Polarity(
            value
                .parse()
                .map_err(|_| LexiconError::UnknownPolarity(value.to_string()))?,
        ),
        _ => EntryValue::Valence(value.parse().map_err(|reason| LexiconError::InvalidScore {
            text: value.to_string(),
            reason,
        })?),
    };
    let source = source
        .parse()
        .map_err(|_| LexiconError::UnknownSource(source.to_string()))?;
    let provenance = if provenance.is_empty() {
        None
    } else {
        Some(Term::parse(provenance)?)
    };
    Ok(LexiconEntry {
        term: Term::parse(term)?,
        value,
        source,
        provenance,
    })
}
