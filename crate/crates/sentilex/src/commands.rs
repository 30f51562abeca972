use std::fs;
use std::path::{Path, PathBuf};

use sentilex_core::{
    build_target_lexicon, parse_canonical, parse_categorical, parse_ngram_scored, parse_valenced,
    serialize_canonical, EntrySource, Lexicon, LexiconKind, Scorer, TranslationMapping,
};

use crate::config::{Command, LexiconFiles, LexiconSpec, ReportFormat, RunConfig};
use crate::corpus::load_corpus;
use crate::error::Error;
use crate::output::StagedOutput;
use crate::report;

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_lexicon(spec: &LexiconSpec) -> Result<Lexicon, Error> {
    let language = spec.language.as_deref().unwrap_or_default();
    let at = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Lexicon { path, source }
    };
    let lexicon = match &spec.files {
        LexiconFiles::Categorical { positive, negative } => {
            parse_categorical(read(positive)?, read(negative)?, &spec.name, language)
                .map_err(at(positive))?
        }
        LexiconFiles::Valenced(path) => {
            parse_valenced(read(path)?, &spec.name, language).map_err(at(path))?
        }
        LexiconFiles::NgramScored(path) => {
            parse_ngram_scored(read(path)?, &spec.name, language).map_err(at(path))?
        }
        LexiconFiles::Canonical(path) => {
            let mut lexicon = parse_canonical(read(path)?).map_err(at(path))?;
            if let Some(expected) = &spec.language {
                if lexicon.language() != expected {
                    return Err(Error::LanguageMismatch {
                        path: path.clone(),
                        expected: expected.clone(),
                        found: lexicon.language().to_string(),
                    });
                }
            }
            lexicon.rename(&spec.name).map_err(at(path))?;
            lexicon
        }
    };
    log::info!(
        "lexicon {}: {} {} entries",
        spec.name,
        lexicon.len(),
        lexicon.kind()
    );
    Ok(lexicon)
}

fn load_manual(path: &Path) -> Result<Vec<sentilex_core::LexiconEntry>, Error> {
    let bytes = read(path)?;
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Ok(Vec::new());
    }
    let lexicon = parse_canonical(&bytes).map_err(|source| Error::Lexicon {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |reason: String| Error::ManualFile {
        path: path.to_path_buf(),
        reason,
    };
    if lexicon.kind() != LexiconKind::Categorical {
        return Err(bad(format!(
            "manual entries must be categorical, not {}",
            lexicon.kind()
        )));
    }
    if let Some(e) = lexicon
        .entries()
        .find(|e| e.source != EntrySource::ManualNative)
    {
        return Err(bad(format!(
            "entry {:?} is not tagged manual-native",
            e.term.to_string()
        )));
    }
    Ok(lexicon.entries().cloned().collect())
}

/// Builds the target lexicon and writes `<name>.tsv` plus
/// `<name>.build.txt` to the output directory.
pub fn cmd_build(config: &RunConfig) -> Result<Vec<PathBuf>, Error> {
    config.validate(Command::Build)?;
    let build = config.build.as_ref().expect("validated");
    let source_spec = config.lexicon(&build.source).expect("validated");
    let source = load_lexicon(source_spec)?;
    let mapping =
        TranslationMapping::parse(read(&build.mapping)?).map_err(|source| Error::Mapping {
            path: build.mapping.clone(),
            source,
        })?;
    let manual = match &build.manual {
        Some(path) => load_manual(path)?,
        None => Vec::new(),
    };
    let (lexicon, build_report) =
        build_target_lexicon(&source, &mapping, &manual, &build.name).map_err(Error::Build)?;
    log::info!(
        "built {}: {} entries ({} translated, {} conflicts dropped, {} manual overrides)",
        lexicon.name(),
        lexicon.len(),
        build_report.translated_count,
        build_report.conflicts_dropped.len(),
        build_report.manual_overrides.len()
    );

    let mut out = StagedOutput::new(&config.output_dir)?;
    out.stage(
        &format!("{}.tsv", build.name),
        serialize_canonical(&lexicon).as_bytes(),
    )?;
    out.stage(
        &format!("{}.build.txt", build.name),
        report::render_build_report(&lexicon, &build_report).as_bytes(),
    )?;
    out.commit()
}

/// Scores every document with one lexicon into `scores-<lexicon>.tsv`.
pub fn cmd_score(config: &RunConfig) -> Result<Vec<PathBuf>, Error> {
    config.validate(Command::Score)?;
    let spec = config.score_target().expect("validated");
    let lexicon = load_lexicon(spec)?;
    let corpus = load_corpus(config.corpus.as_deref().expect("validated"))?;
    let results = Scorer::new(config.skip_window).score_corpus(&corpus, &lexicon)?;

    let mut out = StagedOutput::new(&config.output_dir)?;
    out.stage(
        &format!("scores-{}.tsv", spec.name),
        report::render_scores(&results)?.as_bytes(),
    )?;
    out.commit()
}

/// Compares polarity across lexicons and writes `agreement.{txt,json,csv}`
/// for the selected formats.
pub fn cmd_evaluate(config: &RunConfig) -> Result<Vec<PathBuf>, Error> {
    config.validate(Command::Evaluate)?;
    let lexicons = config
        .evaluate_targets()
        .expect("validated")
        .into_iter()
        .map(load_lexicon)
        .collect::<Result<Vec<_>, _>>()?;
    let corpus = load_corpus(config.corpus.as_deref().expect("validated"))?;
    let agreement = Scorer::new(config.skip_window).agreement_report(&corpus, &lexicons)?;
    log::info!(
        "agreement over {} documents: {}/{} = {}",
        agreement.document_ids.len(),
        agreement.percent_total(),
        agreement.document_ids.len(),
        agreement.average_percent
    );

    let mut out = StagedOutput::new(&config.output_dir)?;
    for format in &config.formats {
        match format {
            ReportFormat::Table => {
                out.stage("agreement.txt", report::render_table(&agreement).as_bytes())?
            }
            ReportFormat::Json => out.stage(
                "agreement.json",
                report::render_json(&agreement)?.as_bytes(),
            )?,
            ReportFormat::Csv => {
                out.stage("agreement.csv", report::render_csv(&agreement)?.as_bytes())?
            }
        }
    }
    out.commit()
}
