//! Target-language lexicon construction.
//!
//! A categorical source lexicon is projected through a bilingual
//! [`TranslationMapping`]: every target phrase inherits the polarity of the
//! source term it translates and remembers that term as provenance. Target
//! phrases reached from source terms of opposite polarity are dropped and
//! reported. Manually curated native entries are merged on top and take
//! precedence over translated ones.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::lexicon::{
    EntrySource, EntryValue, Lexicon, LexiconEntry, LexiconError, LexiconKind, Polarity, Term,
    TermError,
};

const MAP_HEADER: &str = "#map";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error(
        "source lexicon language {lexicon:?} does not match mapping source language {mapping:?}"
    )]
    LanguageMismatch { lexicon: String, mapping: String },
    #[error("{operation} requires a categorical lexicon, got {kind}")]
    NotCategorical {
        operation: &'static str,
        kind: LexiconKind,
    },
    #[error("manual entry {0:?} is not tagged manual-native")]
    NotManual(String),
    #[error("manual entry {0:?} must carry a positive or negative polarity")]
    ManualValue(String),
    #[error("manual entries give {0:?} both positive and negative polarity")]
    ManualContradiction(String),
    #[error("invalid UTF-8 in mapping at byte offset {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("mapping line {line}: {reason}")]
    Mapping { line: usize, reason: String },
    #[error("mapping line {line}: {source}")]
    MappingTerm {
        line: usize,
        #[source]
        source: TermError,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// Source term to target phrases, between two language tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationMapping {
    source_language: String,
    target_language: String,
    pairs: BTreeMap<Term, Vec<Term>>,
}

impl TranslationMapping {
    pub fn new(source_language: &str, target_language: &str) -> Self {
        TranslationMapping {
            source_language: source_language.to_string(),
            target_language: target_language.to_string(),
            pairs: BTreeMap::new(),
        }
    }

    pub fn source_language(&self) -> &str {
        &self.source_language
    }

    pub fn target_language(&self) -> &str {
        &self.target_language
    }

    /// Adds one translation; repeated pairs are ignored.
    pub fn insert(&mut self, source: Term, target: Term) {
        let targets = self.pairs.entry(source).or_default();
        if !targets.contains(&target) {
            targets.push(target);
        }
    }

    pub fn targets(&self, source: &Term) -> Option<&[Term]> {
        self.pairs.get(source).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Parses the mapping file format: a `#map <src> <tgt>` header, then
    /// `source_term<TAB>target_phrase` per line. Fan-out is expressed by
    /// repeating the source term. Blank lines are skipped.
    pub fn parse(text: impl AsRef<[u8]>) -> Result<Self, BuildError> {
        let text = core::str::from_utf8(text.as_ref()).map_err(|e| BuildError::InvalidUtf8 {
            offset: e.valid_up_to(),
        })?;
        let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());

        let bad = |line: usize, reason: &str| BuildError::Mapping {
            line,
            reason: reason.to_string(),
        };
        let (line, header) = lines
            .next()
            .ok_or_else(|| bad(1, "missing `#map <src> <tgt>` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [MAP_HEADER, src, tgt] = fields[..] else {
            return Err(bad(line, "expected `#map <src> <tgt>` header"));
        };
        let mut mapping = TranslationMapping::new(src, tgt);

        for (line, raw) in lines {
            let (source, target) = raw
                .split_once('\t')
                .ok_or_else(|| bad(line, "missing TAB separator"))?;
            let term = |s: &str| {
                Term::phrase(s).map_err(|source| BuildError::MappingTerm { line, source })
            };
            mapping.insert(term(source)?, term(target)?);
        }
        Ok(mapping)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    /// Auto-translated entries in the resulting lexicon.
    pub translated_count: usize,
    pub unmapped_source_terms: Vec<Term>,
    pub conflicts_dropped: Vec<(Term, BTreeSet<Polarity>)>,
    pub manual_overrides: Vec<Term>,
}

fn require_categorical(lexicon: &Lexicon, operation: &'static str) -> Result<(), BuildError> {
    match lexicon.kind() {
        LexiconKind::Categorical => Ok(()),
        kind => Err(BuildError::NotCategorical { operation, kind }),
    }
}

fn auto_count(lexicon: &Lexicon) -> usize {
    lexicon
        .entries()
        .filter(|e| e.source == EntrySource::AutoTranslated)
        .count()
}

/// Projects `source` into the mapping's target language.
///
/// The result keeps the source lexicon's name; [`build_target_lexicon`]
/// assigns the final one.
pub fn translate_lexicon(
    source: &Lexicon,
    mapping: &TranslationMapping,
) -> Result<(Lexicon, BuildReport), BuildError> {
    require_categorical(source, "translation")?;
    if source.language() != mapping.source_language() {
        return Err(BuildError::LanguageMismatch {
            lexicon: source.language().to_string(),
            mapping: mapping.source_language().to_string(),
        });
    }

    let mut report = BuildReport::default();
    // target phrase -> (polarities seen, source terms in codepoint order)
    let mut candidates: BTreeMap<&Term, (BTreeSet<Polarity>, BTreeMap<String, &Term>)> =
        BTreeMap::new();
    for entry in source.entries() {
        let Some(targets) = mapping.targets(&entry.term) else {
            report.unmapped_source_terms.push(entry.term.clone());
            continue;
        };
        let polarity = entry
            .polarity()
            .expect("categorical lexicon entries carry a polarity");
        for target in targets {
            let (polarities, roots) = candidates.entry(target).or_default();
            polarities.insert(polarity);
            roots.insert(entry.term.to_string(), &entry.term);
        }
    }

    let mut lexicon = Lexicon::new(
        source.name(),
        mapping.target_language(),
        LexiconKind::Categorical,
    )?;
    for (target, (polarities, roots)) in candidates {
        if polarities.len() > 1 {
            report.conflicts_dropped.push((target.clone(), polarities));
            continue;
        }
        let polarity = *polarities.first().expect("non-empty");
        let (_, root) = roots.first_key_value().expect("non-empty");
        lexicon.insert(LexiconEntry {
            term: target.clone(),
            value: EntryValue::Polarity(polarity),
            source: EntrySource::AutoTranslated,
            provenance: Some((*root).clone()),
        })?;
    }
    report.translated_count = auto_count(&lexicon);
    report
        .unmapped_source_terms
        .sort_by_key(ToString::to_string);
    report.conflicts_dropped.sort_by_key(|(t, _)| t.to_string());
    Ok((lexicon, report))
}

/// Inserts manual native entries into `auto`, replacing colliding entries.
pub fn merge_manual(
    auto: &Lexicon,
    manual_entries: &[LexiconEntry],
) -> Result<(Lexicon, BuildReport), BuildError> {
    require_categorical(auto, "manual merge")?;

    let mut manual: BTreeMap<&Term, &LexiconEntry> = BTreeMap::new();
    for entry in manual_entries {
        if entry.source != EntrySource::ManualNative {
            return Err(BuildError::NotManual(entry.term.to_string()));
        }
        if !matches!(
            entry.value,
            EntryValue::Polarity(Polarity::Positive | Polarity::Negative)
        ) {
            return Err(BuildError::ManualValue(entry.term.to_string()));
        }
        if let Some(previous) = manual.insert(&entry.term, entry) {
            if previous.value != entry.value {
                return Err(BuildError::ManualContradiction(entry.term.to_string()));
            }
        }
    }

    let mut lexicon = auto.clone();
    let mut report = BuildReport::default();
    for (term, entry) in manual {
        match lexicon.lookup(term) {
            Some(existing) if existing.source == EntrySource::ManualNative => {
                if existing.value != entry.value {
                    return Err(BuildError::ManualContradiction(term.to_string()));
                }
            }
            Some(_) => report.manual_overrides.push(term.clone()),
            None => {}
        }
        lexicon.upsert(entry.clone())?;
    }
    report.translated_count = auto_count(&lexicon);
    report.manual_overrides.sort_by_key(ToString::to_string);
    Ok((lexicon, report))
}

/// Translation followed by the manual merge, under a new lexicon name.
pub fn build_target_lexicon(
    source: &Lexicon,
    mapping: &TranslationMapping,
    manual_entries: &[LexiconEntry],
    name: &str,
) -> Result<(Lexicon, BuildReport), BuildError> {
    let (translated, translate_report) = translate_lexicon(source, mapping)?;
    let (mut lexicon, merge_report) = merge_manual(&translated, manual_entries)?;
    lexicon.rename(name)?;
    let report = BuildReport {
        translated_count: merge_report.translated_count,
        unmapped_source_terms: translate_report.unmapped_source_terms,
        conflicts_dropped: translate_report.conflicts_dropped,
        manual_overrides: merge_report.manual_overrides,
    };
    Ok((lexicon, report))
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::lexicon::{parse_categorical, serialize_canonical};
    use alloc::vec;

    fn t(s: &str) -> Term {
        Term::phrase(s).unwrap()
    }

    fn mapping(pairs: &[(&str, &str)]) -> TranslationMapping {
        let mut m = TranslationMapping::new("en", "ig");
        for (s, tgt) in pairs {
            m.insert(t(s), t(tgt));
        }
        m
    }

    fn manual(term: &str, polarity: Polarity) -> LexiconEntry {
        LexiconEntry {
            term: t(term),
            value: EntryValue::Polarity(polarity),
            source: EntrySource::ManualNative,
            provenance: None,
        }
    }

    #[test]
    fn fan_out() {
        let source = parse_categorical("good", "", "liu", "en").unwrap();
        let (lex, report) =
            translate_lexicon(&source, &mapping(&[("good", "ọma"), ("good", "mma")])).unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.language(), "ig");
        for phrase in ["ọma", "mma"] {
            let e = lex.lookup(&t(phrase)).unwrap();
            assert_eq!(e.polarity(), Some(Polarity::Positive));
            assert_eq!(e.source, EntrySource::AutoTranslated);
            assert_eq!(e.provenance, Some(t("good")));
        }
        assert_eq!(report.translated_count, 2);
    }

    #[test]
    fn conflicting_roots_dropped() {
        let source = parse_categorical("good", "bad", "liu", "en").unwrap();
        let (lex, report) =
            translate_lexicon(&source, &mapping(&[("good", "x"), ("bad", "x")])).unwrap();
        assert!(lex.is_empty());
        assert_eq!(
            report.conflicts_dropped,
            vec![(
                t("x"),
                BTreeSet::from([Polarity::Positive, Polarity::Negative])
            )]
        );
        assert_eq!(report.translated_count, 0);
    }

    #[test]
    fn agreeing_roots_keep_first_provenance() {
        let source = parse_categorical("good\nfine", "", "liu", "en").unwrap();
        let (lex, _) =
            translate_lexicon(&source, &mapping(&[("good", "x"), ("fine", "x")])).unwrap();
        assert_eq!(lex.len(), 1);
        let e = lex.lookup(&t("x")).unwrap();
        assert_eq!(e.polarity(), Some(Polarity::Positive));
        assert_eq!(e.provenance, Some(t("fine")));
    }

    #[test]
    fn unmapped_terms_reported_sorted() {
        let source = parse_categorical("zeal\ngood\namazing", "", "liu", "en").unwrap();
        let (_, report) = translate_lexicon(&source, &mapping(&[("good", "mma")])).unwrap();
        assert_eq!(report.unmapped_source_terms, vec![t("amazing"), t("zeal")]);
    }

    #[test]
    fn language_mismatch() {
        let source = parse_categorical("good", "", "liu", "fr").unwrap();
        assert!(matches!(
            translate_lexicon(&source, &mapping(&[])),
            Err(BuildError::LanguageMismatch { .. })
        ));
    }

    #[test]
    fn manual_overrides_auto() {
        let source = parse_categorical("fine", "", "liu", "en").unwrap();
        let (auto, _) = translate_lexicon(&source, &mapping(&[("fine", "x")])).unwrap();
        let (lex, report) = merge_manual(&auto, &[manual("x", Polarity::Negative)]).unwrap();
        let e = lex.lookup(&t("x")).unwrap();
        assert_eq!(e.polarity(), Some(Polarity::Negative));
        assert_eq!(e.source, EntrySource::ManualNative);
        assert_eq!(report.manual_overrides, vec![t("x")]);
        assert_eq!(report.translated_count, 0);
    }

    #[test]
    fn manual_into_empty() {
        let auto = Lexicon::new("a", "ig", LexiconKind::Categorical).unwrap();
        let (lex, report) = merge_manual(&auto, &[manual("y", Polarity::Positive)]).unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(
            lex.lookup(&t("y")).unwrap().polarity(),
            Some(Polarity::Positive)
        );
        assert!(report.manual_overrides.is_empty());
    }

    #[test]
    fn manual_contradiction_names_term() {
        let auto = Lexicon::new("a", "ig", LexiconKind::Categorical).unwrap();
        let err = merge_manual(
            &auto,
            &[
                manual("z", Polarity::Positive),
                manual("z", Polarity::Negative),
            ],
        )
        .unwrap_err();
        assert_eq!(err, BuildError::ManualContradiction("z".into()));
        // same polarity twice is fine
        assert!(merge_manual(
            &auto,
            &[
                manual("z", Polarity::Positive),
                manual("z", Polarity::Positive)
            ]
        )
        .is_ok());
    }

    #[test]
    fn manual_entry_validation() {
        let auto = Lexicon::new("a", "ig", LexiconKind::Categorical).unwrap();
        let mut imported = manual("q", Polarity::Positive);
        imported.source = EntrySource::Imported;
        assert!(matches!(
            merge_manual(&auto, &[imported]),
            Err(BuildError::NotManual(_))
        ));
        assert!(matches!(
            merge_manual(&auto, &[manual("q", Polarity::Neutral)]),
            Err(BuildError::ManualValue(_))
        ));
    }

    #[test]
    fn build_composes_steps() {
        let source = parse_categorical("good\nfine\nhappy", "bad\nsick", "liu", "en").unwrap();
        let map = mapping(&[
            ("good", "mma"),
            ("good", "ọma"),
            ("fine", "mma"),
            ("bad", "ọjọọ"),
            ("sick", "ọrịa"),
            ("happy", "ọrịa"),
        ]);
        let manual_entries = [
            manual("ọjọọ", Polarity::Negative),
            manual("daalụ", Polarity::Positive),
        ];
        let (built, report) =
            build_target_lexicon(&source, &map, &manual_entries, "igbosentilex").unwrap();

        let (step1, r1) = translate_lexicon(&source, &map).unwrap();
        let (mut step2, r2) = merge_manual(&step1, &manual_entries).unwrap();
        step2.rename("igbosentilex").unwrap();
        assert_eq!(built, step2);
        assert_eq!(report.unmapped_source_terms, r1.unmapped_source_terms);
        assert_eq!(report.conflicts_dropped, r1.conflicts_dropped);
        assert_eq!(report.manual_overrides, r2.manual_overrides);
        assert_eq!(report.translated_count, 2);
        assert_eq!(built.name(), "igbosentilex");

        let again = build_target_lexicon(&source, &map, &manual_entries, "igbosentilex").unwrap();
        assert_eq!(serialize_canonical(&again.0), serialize_canonical(&built));
    }

    #[test]
    fn build_with_nothing() {
        let source = parse_categorical("good", "bad", "liu", "en").unwrap();
        let (lex, report) = build_target_lexicon(&source, &mapping(&[]), &[], "x").unwrap();
        assert!(lex.is_empty());
        assert_eq!(report.unmapped_source_terms, vec![t("bad"), t("good")]);
    }

    #[test]
    fn parses_mapping_file() {
        let m = TranslationMapping::parse(
            "#map en ig\ngood\tọma\ngood\tmma\ngood\tmma\n\nhappy\tobi ụtọ\n",
        )
        .unwrap();
        assert_eq!((m.source_language(), m.target_language()), ("en", "ig"));
        assert_eq!(m.targets(&t("good")).unwrap(), &[t("ọma"), t("mma")]);
        assert_eq!(m.targets(&t("happy")).unwrap()[0].arity(), 2);

        assert!(matches!(
            TranslationMapping::parse("good\tọma"),
            Err(BuildError::Mapping { line: 1, .. })
        ));
        assert!(matches!(
            TranslationMapping::parse("#map en ig\ngood ọma"),
            Err(BuildError::Mapping { line: 2, .. })
        ));
        assert!(matches!(
            TranslationMapping::parse("#map en ig\ngood\ta b c d e f"),
            Err(BuildError::MappingTerm { line: 2, .. })
        ));
    }
}
