use std::io;
use std::path::PathBuf;

use sentilex_core::{AgreementError, BuildError, LexiconError, ScoreError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration:\n{}", .0.iter().map(|p| format!("  - {p}")).collect::<Vec<_>>().join("\n"))]
    Config(Vec<String>),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Lexicon {
        path: PathBuf,
        #[source]
        source: LexiconError,
    },
    #[error("{}: {source}", path.display())]
    Mapping {
        path: PathBuf,
        #[source]
        source: BuildError,
    },
    #[error("{}: lexicon language {found:?} differs from configured {expected:?}", path.display())]
    LanguageMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("{}: {reason}", path.display())]
    ManualFile { path: PathBuf, reason: String },
    #[error("build failed: {0}")]
    Build(#[source] BuildError),
    #[error("cannot read document {}: {reason}", path.display())]
    Document { path: PathBuf, reason: String },
    #[error("{}: line {line}: {reason}", path.display())]
    CorpusRecord {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("empty corpus: {}", .0.display())]
    EmptyCorpus(PathBuf),
    #[error("duplicate document id {0:?} in corpus")]
    DuplicateDocument(String),
    #[error(transparent)]
    Agreement(#[from] AgreementError),
    #[error("failed to write report: {0}")]
    Render(String),
}

impl From<ScoreError> for Error {
    fn from(e: ScoreError) -> Self {
        match e {
            ScoreError::DuplicateDocument(id) => Error::DuplicateDocument(id),
        }
    }
}
