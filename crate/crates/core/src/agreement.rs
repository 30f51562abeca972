//! Cross-lexicon polarity agreement.
//!
//! For one document, agreement is the size of the largest group of lexicons
//! that assigned the same polarity, as a percentage of all lexicons,
//! truncated to an integer. Three lexicons split two against one give 66.
//! The corpus figure is the exact mean of the per-document integers, shown
//! with two decimals rounded half-up.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lexicon::{Lexicon, Polarity};
use crate::scoring::{ensure_distinct, Document, ScoreError, Scorer};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AgreementError {
    #[error("no polarity labels to compare")]
    NoLabels,
    #[error("no per-document values to average")]
    NoDocuments,
    #[error("need at least two lexicons, got {0}")]
    TooFewLexicons(usize),
    #[error("duplicate lexicon name {0:?}")]
    DuplicateLexicon(String),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// A non-negative percentage with two decimals, stored in hundredths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AveragePercent(u64);

impl AveragePercent {
    pub fn from_hundredths(hundredths: u64) -> Self {
        AveragePercent(hundredths)
    }

    pub fn hundredths(self) -> u64 {
        self.0
    }
}

impl fmt::Display for AveragePercent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

/// `floor(100 * largest same-label group / number of labels)`.
pub fn per_document_agreement(labels: &[Polarity]) -> Result<u32, AgreementError> {
    if labels.is_empty() {
        return Err(AgreementError::NoLabels);
    }
    let largest = [Polarity::Positive, Polarity::Negative, Polarity::Neutral]
        .iter()
        .map(|p| labels.iter().filter(|l| *l == p).count())
        .max()
        .unwrap_or(0);
    Ok((100 * largest / labels.len()) as u32)
}

/// Exact mean of `percents`, rounded half-up to hundredths.
pub fn average_agreement(percents: &[u32]) -> Result<AveragePercent, AgreementError> {
    if percents.is_empty() {
        return Err(AgreementError::NoDocuments);
    }
    let total: u64 = percents.iter().map(|&p| u64::from(p)).sum();
    let n = percents.len() as u64;
    // round(total * 100 / n) with ties going up
    Ok(AveragePercent((total * 200 + n) / (2 * n)))
}

/// Polarity matrix and agreement figures for a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub lexicon_names: Vec<String>,
    pub document_ids: Vec<String>,
    /// `matrix[lexicon][document]`
    pub matrix: Vec<Vec<Polarity>>,
    pub per_document_percent: Vec<u32>,
    pub average_percent: AveragePercent,
}

impl AgreementReport {
    pub fn percent_total(&self) -> u64 {
        self.per_document_percent
            .iter()
            .map(|&p| u64::from(p))
            .sum()
    }

    pub fn labels_for_document(&self, index: usize) -> Vec<Polarity> {
        self.matrix.iter().map(|row| row[index]).collect()
    }

    /// Builds the report from an already-filled polarity matrix.
    pub fn from_matrix(
        lexicon_names: Vec<String>,
        document_ids: Vec<String>,
        matrix: Vec<Vec<Polarity>>,
    ) -> Result<Self, AgreementError> {
        if lexicon_names.len() < 2 {
            return Err(AgreementError::TooFewLexicons(lexicon_names.len()));
        }
        let mut seen = BTreeSet::new();
        for name in &lexicon_names {
            if !seen.insert(name.as_str()) {
                return Err(AgreementError::DuplicateLexicon(name.clone()));
            }
        }
        assert_eq!(
            matrix.len(),
            lexicon_names.len(),
            "one matrix row per lexicon"
        );
        assert!(
            matrix.iter().all(|row| row.len() == document_ids.len()),
            "one matrix column per document"
        );
        let per_document_percent = (0..document_ids.len())
            .map(|d| {
                let labels: Vec<Polarity> = matrix.iter().map(|row| row[d]).collect();
                per_document_agreement(&labels)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let average_percent = average_agreement(&per_document_percent)?;
        Ok(AgreementReport {
            lexicon_names,
            document_ids,
            matrix,
            per_document_percent,
            average_percent,
        })
    }
}

impl Scorer {
    /// Scores `corpus` with every lexicon and summarizes agreement.
    pub fn agreement_report(
        &self,
        corpus: &[Document],
        lexicons: &[Lexicon],
    ) -> Result<AgreementReport, AgreementError> {
        if lexicons.len() < 2 {
            return Err(AgreementError::TooFewLexicons(lexicons.len()));
        }
        if corpus.is_empty() {
            return Err(AgreementError::NoDocuments);
        }
        ensure_distinct(corpus)?;
        let matrix = lexicons
            .iter()
            .map(|lex| {
                self.score_corpus(corpus, lex)
                    .map(|results| results.into_iter().map(|r| r.polarity).collect())
            })
            .collect::<Result<Vec<Vec<Polarity>>, _>>()?;
        AgreementReport::from_matrix(
            lexicons.iter().map(|l| l.name().to_string()).collect(),
            corpus.iter().map(|d| d.id.clone()).collect(),
            matrix,
        )
    }
}

/// [`Scorer::agreement_report`] with the default skip window.
pub fn build_report(
    corpus: &[Document],
    lexicons: &[Lexicon],
) -> Result<AgreementReport, AgreementError> {
    Scorer::default().agreement_report(corpus, lexicons)
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::lexicon::parse_categorical;
    use alloc::vec;
    use Polarity::*;

    #[test]
    fn two_against_one_truncates() {
        assert_eq!(
            per_document_agreement(&[Positive, Positive, Negative]),
            Ok(66)
        );
        assert_eq!(
            per_document_agreement(&[Negative, Negative, Negative]),
            Ok(100)
        );
        assert_eq!(per_document_agreement(&[Positive]), Ok(100));
        assert_eq!(per_document_agreement(&[Positive, Negative]), Ok(50));
        assert_eq!(
            per_document_agreement(&[Positive, Negative, Neutral]),
            Ok(33)
        );
        assert_eq!(per_document_agreement(&[]), Err(AgreementError::NoLabels));
    }

    #[test]
    fn averages() {
        let table = [100, 100, 66, 100, 100, 100, 100, 100];
        assert_eq!(average_agreement(&table).unwrap().to_string(), "95.75");
        assert_eq!(
            average_agreement(&[100, 100]).unwrap().to_string(),
            "100.00"
        );
        assert_eq!(average_agreement(&[66, 67]).unwrap().to_string(), "66.50");
        // 200/3 = 66.666.. rounds up, 1/8 = 0.125 rounds half-up
        assert_eq!(
            average_agreement(&[66, 67, 67]).unwrap().to_string(),
            "66.67"
        );
        assert_eq!(
            average_agreement(&[1, 0, 0, 0, 0, 0, 0, 0])
                .unwrap()
                .to_string(),
            "0.13"
        );
        assert_eq!(average_agreement(&[]), Err(AgreementError::NoDocuments));
    }

    #[test]
    fn report_requires_two_distinct_lexicons() {
        let lex = parse_categorical("good", "bad", "liu", "en").unwrap();
        let docs = [Document::new("01", "good")];
        assert_eq!(
            build_report(&docs, core::slice::from_ref(&lex)),
            Err(AgreementError::TooFewLexicons(1))
        );
        assert_eq!(
            build_report(&docs, &[lex.clone(), lex.clone()]),
            Err(AgreementError::DuplicateLexicon("liu".into()))
        );
        let mut twin = lex.clone();
        twin.rename("twin").unwrap();
        assert_eq!(
            build_report(&[], &[lex.clone(), twin.clone()]),
            Err(AgreementError::NoDocuments)
        );
        let dup = [Document::new("a", "x"), Document::new("a", "y")];
        assert!(matches!(
            build_report(&dup, &[lex, twin]),
            Err(AgreementError::Score(_))
        ));
    }

    #[test]
    fn identical_lexicons_agree_fully() {
        let lex = parse_categorical("good", "bad", "liu", "en").unwrap();
        let mut twin = lex.clone();
        twin.rename("twin").unwrap();
        let docs = [
            Document::new("01", "good"),
            Document::new("02", "bad"),
            Document::new("03", "nothing"),
        ];
        let report = build_report(&docs, &[lex, twin]).unwrap();
        assert_eq!(report.per_document_percent, vec![100, 100, 100]);
        assert_eq!(report.average_percent.to_string(), "100.00");
        assert_eq!(report.matrix[0], vec![Positive, Negative, Neutral]);
    }
}
